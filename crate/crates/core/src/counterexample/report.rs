//! The scripted run of the example: each claim is checked in turn and the
//! run stops at the first failing step.

use serde::Serialize;
use serde_json::{json, Value};

use super::{Classes, Setting};
use crate::aobjects::{deformations_equivalent, AObject, DeformationElement, Equivalence};
use crate::error::Result;
use crate::linalg::{Field, Matrix, Scalar, SearchConfig};
use crate::rep::{hom_space, IsoVerdict, RepMap};

#[derive(Clone, Debug, Serialize)]
pub struct Step {
    pub index: usize,
    pub name: String,
    /// Short identifier of the claim being checked.
    pub check: String,
    pub passed: bool,
    pub details: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct CounterexampleReport {
    pub field: String,
    pub passed: bool,
    pub steps: Vec<Step>,
    pub warnings: Vec<String>,
}

fn class_json(x: &[Scalar]) -> Vec<String> {
    x.iter().map(|c| c.to_string()).collect()
}

fn map_json(f: &RepMap) -> Value {
    Value::Array(f.blocks().iter().map(|b| json!(b.to_string_rows())).collect())
}

fn equivalence_json(e: &Equivalence) -> Value {
    match e {
        Equivalence::Equivalent(psi) => json!({"verdict": "equivalent", "witness": map_json(psi)}),
        Equivalence::NotEquivalent => json!({"verdict": "not_equivalent"}),
        Equivalence::ProbablyNot => json!({"verdict": "undecided"}),
    }
}

struct Run {
    steps: Vec<Step>,
    failed: bool,
}

impl Run {
    fn step(&mut self, name: &str, check: &str, body: impl FnOnce() -> Result<(bool, Value)>) -> Result<()> {
        if self.failed {
            return Ok(());
        }
        let (passed, details) = body()?;
        self.steps.push(Step {
            index: self.steps.len() + 1,
            name: name.to_string(),
            check: check.to_string(),
            passed,
            details,
        });
        self.failed = !passed;
        Ok(())
    }
}

fn end_of_n(s: &Setting) -> Result<(bool, Value)> {
    let basis = hom_space(&s.n, &s.n)?;
    let square = s.bac.after(&s.bac)?;
    let id = RepMap::identity(&s.n);
    let frame = Matrix::from_columns(s.field, id.flatten().len(), &[id.flatten(), s.bac.flatten()]);
    let spanned = basis.len() == 2 && frame.rank() == 2;
    let passed = spanned && !s.bac.is_zero() && square.is_zero();
    Ok((
        passed,
        json!({
            "dim_end_n": basis.len(),
            "bac": map_json(&s.bac),
            "bac_squared_is_zero": square.is_zero(),
            "spanned_by_id_and_bac": spanned,
        }),
    ))
}

fn ext_dims(s: &Setting, c: &Classes) -> Result<(bool, Value)> {
    let (n, l3, m) = (c.ext_l1_n.dim(), c.ext_l1_l3.dim(), c.ext_l1_m.dim());
    Ok((
        n == 2 && l3 == 1 && m == 1 && s.field == c.ext_l1_n.field(),
        json!({"ext1_l1_n": n, "ext1_l1_l3": l3, "ext1_l1_m": m}),
    ))
}

fn bac_action(s: &Setting, c: &Classes) -> Result<(bool, Value)> {
    let e = &c.ext_l1_n;
    let on_bu = e.pushforward(&s.bac, &c.bu, e)?;
    let on_vbar = e.pushforward(&s.bac, &c.vbar, e)?;
    let passed = e.is_zero_class(&on_bu) && on_vbar == c.bu && !e.is_zero_class(&c.bu);
    Ok((
        passed,
        json!({
            "bu": class_json(&c.bu),
            "vbar": class_json(&c.vbar),
            "bac_of_bu": class_json(&on_bu),
            "bac_of_vbar": class_json(&on_vbar),
        }),
    ))
}

fn algebras(s: &Setting) -> Result<(bool, Value)> {
    let violation = s.alpha.check();
    let beta_image = s.alpha.image_of_basis(s.algebra_b.arrow_index(0));
    let gamma_image = s.alpha.image_of_basis(s.algebra_b.arrow_index(1));
    let passed = violation.is_none()
        && beta_image.iter().all(|c| c.is_zero())
        && gamma_image == s.algebra_a.arrow(0);
    Ok((
        passed,
        json!({
            "dim_b": s.algebra_b.dim(),
            "dim_a": s.algebra_a.dim(),
            "alpha_is_hom": violation.is_none(),
            "alpha_kills_beta": beta_image.iter().all(|c| c.is_zero()),
        }),
    ))
}

fn flatness(s: &Setting, c: &Classes) -> Result<(bool, Value)> {
    let (theta_bu, _) = s.theta_of_class(c, &c.bu)?;
    let zero_sigma = RepMap::zero(&s.l3, &s.n);
    let zero_tau = RepMap::zero(&s.n, &s.l1);
    let cases: Vec<(&str, AObject, bool)> = vec![
        ("a_object_sigma_b", s.a_object(&s.b, &s.l1)?, s.b.is_mono()),
        ("a_object_sigma_zero", s.a_object(&zero_sigma, &s.l1)?, zero_sigma.is_mono()),
        ("b_object_theta_bu", theta_bu.clone(), theta_bu.arrow_map(0).is_mono() && theta_bu.arrow_map(1).is_mono()),
        ("b_object_tau_zero", s.b_object(&s.b, &zero_tau)?, zero_tau.is_mono() && s.b.is_mono()),
    ];
    let mut rows = Vec::new();
    let mut passed = true;
    for (name, obj, mono) in cases {
        let flat = obj.is_flat()?;
        passed &= flat == mono;
        rows.push(json!({"case": name, "flat": flat, "mono_criterion": mono}));
    }
    Ok((passed, Value::Array(rows)))
}

/// Over the A-object `(L_2 -> M, L_1)`, whose reductions are simple, distinct
/// classes of `Ext^1(L_1, M)` give inequivalent deformations.
fn theta_injective(s: &Setting, c: &Classes, cfg: &SearchConfig) -> Result<(bool, Value)> {
    let incl = hom_space(&s.l2, &s.m)?
        .into_iter()
        .find(|f| f.is_mono())
        .expect("L_2 is the socle of M");
    let end_m = hom_space(&s.m, &s.m)?.len();
    let e = &c.ext_l1_m;
    let samples: Vec<Vec<Scalar>> = match s.field.order() {
        Some(q) => (0..q).map(|t| vec![s.field.element(t)]).collect(),
        None => [0, 1, 2, -1].iter().map(|&t| vec![s.field.from_i64(t)]).collect(),
    };
    let sigma = vec![s.l1.clone(), s.l3.clone(), s.l2.clone()];
    let elements = samples
        .iter()
        .map(|x| {
            let ses = e.extension(x)?;
            let obj = s.theta(&incl, &ses)?;
            let maps = vec![ses.projection().clone(), s.a.clone(), RepMap::identity(&s.l2)];
            DeformationElement::from_component_maps(obj, sigma.clone(), maps)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut passed = end_m == 1 && e.dim() == 1;
    let mut pairs = Vec::new();
    for i in 0..elements.len() {
        for j in i + 1..elements.len() {
            let v = deformations_equivalent(&elements[i], &elements[j], cfg)?;
            let ok = matches!(v, Equivalence::NotEquivalent);
            passed &= ok;
            pairs.push(json!({
                "classes": [class_json(&samples[i]), class_json(&samples[j])],
                "verdict": equivalence_json(&v)["verdict"],
            }));
        }
    }
    Ok((passed, json!({"dim_end_m": end_m, "pairs": pairs})))
}

fn non_isomorphic(s: &Setting, c: &Classes, cfg: &SearchConfig) -> Result<(bool, Value)> {
    let (zu, _) = s.theta_of_class(c, &c.bu)?;
    let (zv, _) = s.theta_of_class(c, &c.vbar)?;
    let verdict = zu.isomorphic_to(&zv, cfg)?;
    let label = match verdict {
        IsoVerdict::Isomorphic(_) => "isomorphic",
        IsoVerdict::NotIsomorphic => "not_isomorphic",
        IsoVerdict::ProbablyNot => "undecided",
    };
    Ok((
        matches!(verdict, IsoVerdict::NotIsomorphic),
        json!({"theta_bu_vs_theta_vbar": label}),
    ))
}

fn equivalent(s: &Setting, c: &Classes, cfg: &SearchConfig) -> Result<(bool, Value)> {
    let (z1, ses1) = s.theta_of_class(c, &c.vbar)?;
    let (z2, ses2) = s.theta_of_class(c, &c.vbar_plus_bu())?;
    let d1 = s.b_element(&z1, &ses1)?;
    let d2 = s.b_element(&z2, &ses2)?;
    let verdict = deformations_equivalent(&d1, &d2, cfg)?;
    let mut details = equivalence_json(&verdict);
    let passed = match &verdict {
        Equivalence::Equivalent(psi) => {
            let on_n = z2.projection(1).after(psi)?.after(z1.inclusion(1))?;
            let expected = RepMap::identity(&s.n).add(&s.bac)?;
            let matches = on_n.blocks() == expected.blocks();
            details["witness_on_n"] = map_json(&on_n);
            details["witness_on_n_is_id_plus_bac"] = json!(matches);
            matches
        }
        _ => false,
    };
    Ok((passed, details))
}

fn conclusion(c: &Classes, steps: &[Step]) -> Result<(bool, Value)> {
    let distinct_classes = c.vbar != c.vbar_plus_bu();
    let distinct_objects = steps.iter().any(|s| s.check == "theta_not_isomorphic" && s.passed);
    let same_element = steps.iter().any(|s| s.check == "deformations_equivalent" && s.passed);
    Ok((
        distinct_classes && distinct_objects && same_element,
        json!({
            "distinct_ext_classes": distinct_classes,
            "distinct_b_objects": distinct_objects,
            "equal_deformation_elements": same_element,
        }),
    ))
}

pub fn run_counterexample(field: Field, cfg: &SearchConfig) -> Result<CounterexampleReport> {
    let s = Setting::new(field);
    let mut warnings = Vec::new();
    if let Some(q) = field.order() {
        if q <= 3 {
            warnings.push(format!(
                "over a field with {q} elements scalar arguments have few choices; results are exploratory"
            ));
        }
    }
    let c = s.classes()?;
    let mut run = Run {
        steps: Vec::new(),
        failed: false,
    };
    run.step("End(N) is spanned by Id and bac, with bac squared zero", "end_n", || end_of_n(&s))?;
    run.step("Dimensions of Ext^1 from L_1", "ext1_dims", || ext_dims(&s, &c))?;
    run.step("bac kills bu and sends vbar to bu", "bac_action", || bac_action(&s, &c))?;
    run.step("Algebras A, B and the hom alpha", "algebras", || algebras(&s))?;
    run.step("Flatness agrees with the mono criterion", "flatness", || flatness(&s, &c))?;
    run.step("theta is injective over a simple collection", "theta_injective", || {
        theta_injective(&s, &c, cfg)
    })?;
    run.step("theta(bu) and theta(vbar) are not isomorphic", "theta_not_isomorphic", || {
        non_isomorphic(&s, &c, cfg)
    })?;
    run.step("theta(vbar) and theta(vbar + bu) are equivalent deformations", "deformations_equivalent", || {
        equivalent(&s, &c, cfg)
    })?;
    let steps = run.steps.clone();
    run.step("Two classes, distinct B-objects, one deformation element", "conclusion", || {
        conclusion(&c, &steps)
    })?;
    Ok(CounterexampleReport {
        field: field.to_string(),
        passed: !run.failed && run.steps.len() == 9,
        steps: run.steps,
        warnings,
    })
}

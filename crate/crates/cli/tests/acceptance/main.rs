//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#[path = "../../../core/tests/oracle/mod.rs"]
mod oracle;
mod oracles;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use ncdef_core::algebra::{are_conjugate, BoundQuiver, Conjugacy, PathAlgebra, Quiver};
use ncdef_core::aobjects::{
    hom_module, pullback, tensor_apply, tensor_apply_with, AObject, Presentation,
};
use ncdef_core::counterexample::Setting;
use ncdef_core::deformation::{
    ex_membership, ff_criterion, gabriel_associativity_check, ncdef_enumerate, Collection, FfVerdict,
};
use ncdef_core::homology::{df_truncation_algebra, universal_extension, EndAlgebra};
use ncdef_core::linalg::SearchConfig;
use ncdef_core::random::{
    random_a_object, random_algebra, random_automorphism, random_collection, random_element_between,
    random_flat_object, random_map, random_module, random_rep, random_unit, AlgebraShape,
};
use ncdef_core::rep::{
    direct_sum, factor_through_mono, hom_dim, is_isomorphic, loewy_length_of, projective,
    radical_on_map, ModuleBase, Rep, RepMap,
};
use ncdef_core::{Field, Matrix, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

struct Verdict {
    passed: bool,
    detail: String,
}

fn verdict(passed: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        passed,
        detail: detail.into(),
    }
}

fn count(label: &str, good: usize, total: usize) -> Verdict {
    verdict(good == total, format!("{label} {good}/{total}"))
}

fn f5() -> Field {
    Field::prime(5).unwrap()
}

fn cfg() -> SearchConfig {
    SearchConfig::default()
}

fn simples(a: &Arc<PathAlgebra>) -> Vec<Rep> {
    (0..a.vertex_count())
        .map(|i| Rep::simple(ModuleBase::Algebra(a.clone()), i))
        .collect()
}

fn regular_module(a: &Arc<PathAlgebra>) -> Rep {
    let parts: Vec<Rep> = (0..a.vertex_count()).map(|i| projective(a, i)).collect();
    let refs: Vec<&Rep> = parts.iter().collect();
    direct_sum(&refs).unwrap().rep
}

fn one_loop(field: Field) -> ModuleBase {
    let q = Quiver::build(&["1"], &[("x", "1", "1")]).unwrap();
    ModuleBase::Quiver(Arc::new(BoundQuiver::free(q, field)))
}

fn verify_54_report() -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_ncdef"))
        .args(["verify-54", "--field", "Q", "--format", "json"])
        .output()
        .expect("the binary runs");
    let report = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap_or(-1), report)
}

fn step<'a>(report: &'a Value, check: &str) -> Option<&'a Value> {
    report["steps"].as_array()?.iter().find(|s| s["check"] == check)
}

/// Ext and End data of the worked example over Q, timed.
fn criterion_1() -> Verdict {
    let start = Instant::now();
    let s = Setting::new(Field::Rationals);
    let c = s.classes().unwrap();
    let end = EndAlgebra::of(&s.n).unwrap();
    // k[e]/(e^2): Id and bac span End(N), bac is nonzero and squares to zero.
    let id = RepMap::identity(&s.n);
    let frame = Matrix::from_columns(s.field, id.flatten().len(), &[id.flatten(), s.bac.flatten()]);
    let dual_numbers = end.dim() == 2
        && frame.rank() == 2
        && !s.bac.is_zero()
        && s.bac.after(&s.bac).unwrap().is_zero();
    let e = &c.ext_l1_n;
    let bac_bu = e.pushforward(&s.bac, &c.bu, e).unwrap();
    let bac_vbar = e.pushforward(&s.bac, &c.vbar, e).unwrap();
    let exact = e.dim() == 2
        && c.ext_l1_l3.dim() == 1
        && e.is_zero_class(&bac_bu)
        && bac_vbar == c.bu
        && !e.is_zero_class(&c.bu);
    let elapsed = start.elapsed();
    verdict(
        dual_numbers && exact && elapsed < Duration::from_secs(5),
        format!(
            "dim End(N) = {}, dim Ext1(L1,N) = {}, dim Ext1(L1,L3) = {}, bac(bu) = 0: {}, bac(vbar) = bu: {}, {:.2?}",
            end.dim(),
            e.dim(),
            c.ext_l1_l3.dim(),
            e.is_zero_class(&bac_bu),
            bac_vbar == c.bu,
            elapsed
        ),
    )
}

fn criterion_2() -> Verdict {
    let (code, report) = verify_54_report();
    let not_iso = step(&report, "theta_not_isomorphic")
        .map(|s| s["passed"] == true && s["details"]["theta_bu_vs_theta_vbar"] == "not_isomorphic")
        .unwrap_or(false);
    let equivalent = step(&report, "deformations_equivalent")
        .map(|s| {
            s["passed"] == true
                && s["details"]["verdict"] == "equivalent"
                && s["details"]["witness_on_n_is_id_plus_bac"] == true
        })
        .unwrap_or(false);
    let all = report["passed"] == true && report["steps"].as_array().map_or(0, |v| v.len()) == 9;
    verdict(
        code == 0 && not_iso && equivalent && all,
        format!("exit {code}, not isomorphic: {not_iso}, equivalent via Id + bac: {equivalent}, 9 steps pass: {all}"),
    )
}

fn criterion_3() -> Verdict {
    let (_, report) = verify_54_report();
    let Some(rows) = step(&report, "flatness").and_then(|s| s["details"].as_array().cloned()) else {
        return verdict(false, "no flatness step in the report");
    };
    let agree = rows.iter().filter(|r| r["flat"] == r["mono_criterion"]).count();
    let flat = rows.iter().filter(|r| r["flat"] == true).count();
    verdict(
        rows.len() == 4 && agree == 4 && flat == 2,
        format!("agreement {agree}/{}, flat {flat}, non-flat {}", rows.len(), rows.len() - flat),
    )
}

/// A nilpotent generator `x` of `end` with `1, x, ..., x^{n-1}` a basis, as
/// the structure constants in that basis.
fn power_basis_table(end: &EndAlgebra) -> Option<Vec<Vec<Vec<Scalar>>>> {
    let n = end.dim();
    let field = end.unit[0].field();
    for j in 0..n {
        for shift in 0..field.order().unwrap_or(n as u64 + 1).min(n as u64 + 1) {
            let mut x = vec![field.zero(); n];
            x[j] = field.one();
            let lambda = field.from_i64(shift as i64);
            let x: Vec<Scalar> = x.iter().zip(&end.unit).map(|(a, u)| a - &(&lambda * u)).collect();
            let mut powers = vec![end.unit.clone()];
            for _ in 1..=n {
                let next = end.mul(powers.last().unwrap(), &x);
                powers.push(next);
            }
            let frame = Matrix::from_columns(field, n, &powers[..n]);
            if frame.rank() != n || !powers[n].iter().all(|c| c.is_zero()) {
                continue;
            }
            let coords = |v: &[Scalar]| {
                frame
                    .solve(&Matrix::column_vector(field, v))
                    .unwrap()
                    .unwrap()
                    .particular
                    .column(0)
            };
            return Some(
                (0..n)
                    .map(|a| (0..n).map(|b| coords(&end.mul(&powers[a], &powers[b]))).collect())
                    .collect(),
            );
        }
    }
    None
}

fn criterion_4() -> Verdict {
    let field = Field::Rationals;
    let s = Rep::simple(one_loop(field), 0);
    let mut good = 0;
    let mut notes = Vec::new();
    for l in 0..=6 {
        let t = df_truncation_algebra(std::slice::from_ref(&s), l, 64).unwrap();
        let top = t.module();
        let x = top.map(0);
        let jordan_shape = top.dim() == l + 1 && x.rank() == l && x.pow(l + 1).is_zero();
        let expected = oracles::jordan_end_table(field, l + 1);
        let ok = t.end.dim() == l + 1 && jordan_shape && expected.is_some() && power_basis_table(&t.end) == expected;
        if ok {
            good += 1;
        } else {
            notes.push(format!("level {l}"));
        }
    }
    let mut v = count("levels l = 0..6 with dim l+1 and table of k[x]/(x^(l+1))", good, 7);
    if !notes.is_empty() {
        v.detail += &format!(", failing: {}", notes.join(", "));
    }
    v
}

fn criterion_5() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let shape = AlgebraShape {
        max_dim: 8,
        ..AlgebraShape::default()
    };
    let mut good = 0;
    for _ in 0..100 {
        let a = random_algebra(&mut rng, f5(), &shape);
        let p = random_module(&mut rng, &a, 8).unwrap();
        let u = universal_extension(&p, &simples(&a)).unwrap();
        let ok = u.is_universal()
            && (0..a.vertex_count()).all(|i| u.hom_dims[i] == u.ext_dims[i] && u.connecting_ranks[i] == u.ext_dims[i]);
        good += usize::from(ok);
    }
    count("universal extensions", good, 100)
}

fn criterion_6() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let shape = AlgebraShape {
        max_dim: 10,
        ..AlgebraShape::default()
    };
    let (mut good, mut monos, mut epis) = (0, 0, 0);
    for _ in 0..500 {
        let a = random_algebra(&mut rng, f5(), &shape);
        let x = random_module(&mut rng, &a, 6).unwrap();
        let y = random_module(&mut rng, &a, 6).unwrap();
        let f = random_map(&mut rng, &x, &y).unwrap();
        let incl = f.image();
        let onto = factor_through_mono(&incl, &f).unwrap();
        let mut ok = true;
        for g in [&f, &incl, &onto] {
            let rg = radical_on_map(g);
            if g.is_mono() {
                monos += 1;
                ok &= rg.is_mono();
            }
            if g.is_epi() {
                epis += 1;
                ok &= rg.is_epi();
            }
        }
        ok &= loewy_length_of(f.kernel().source()) <= loewy_length_of(&x);
        ok &= loewy_length_of(f.cokernel().target()) <= loewy_length_of(&y);
        good += usize::from(ok);
    }
    let mut v = count("maps", good, 500);
    v.detail += &format!(" ({monos} monos, {epis} epis checked)");
    v
}

fn small() -> AlgebraShape {
    AlgebraShape {
        max_vertices: 2,
        max_arrows: 2,
        max_dim: 6,
        loops: true,
    }
}

fn flat_instance(rng: &mut ChaCha8Rng) -> (Arc<PathAlgebra>, AObject) {
    loop {
        let a = random_algebra(rng, f5(), &small());
        let sigma = random_collection(rng, f5(), a.vertex_count(), 2).unwrap();
        if let Some(z) = random_flat_object(rng, &a, &sigma).unwrap() {
            return (a, z);
        }
    }
}

fn target_module(rng: &mut ChaCha8Rng, z: &AObject) -> Rep {
    let base = z.target_base().clone();
    loop {
        let dims: Vec<usize> = (0..base.vertex_count()).map(|_| rng.gen_range(0..=2)).collect();
        if let Some(w) = random_rep(rng, &base, &dims) {
            return w;
        }
    }
}

fn criterion_7() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut good = 0;
    for _ in 0..200 {
        let (a, z) = flat_instance(&mut rng);
        let m = random_module(&mut rng, &a, 5).unwrap();
        let minimal = Presentation::minimal(&m).unwrap();
        let gens = minimal.p0.summands().to_vec();
        let extra: Vec<_> = (0..rng.gen_range(1..=2))
            .map(|_| {
                let k = rng.gen_range(0..a.vertex_count());
                let y = gens.iter().map(|&i| random_element_between(&mut rng, &a, k, i)).collect();
                (k, y)
            })
            .collect();
        let padded = minimal.padded(&extra).unwrap();
        let t1 = tensor_apply_with(&z, minimal).unwrap();
        let t2 = tensor_apply_with(&z, padded).unwrap();
        let independent = is_isomorphic(t1.rep(), t2.rep(), &cfg()).unwrap().is_isomorphic();
        let w = target_module(&mut rng, &z);
        let h = hom_module(&z, &w).unwrap();
        let adjunction = hom_dim(t1.rep(), &w).unwrap() == hom_dim(&m, &h).unwrap();
        good += usize::from(independent && adjunction);
    }
    count("instances", good, 200)
}

fn criterion_8() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut conj = 0;
    for k in 0..100u64 {
        let a = random_algebra(&mut rng, f5(), &AlgebraShape::default());
        let alpha = random_automorphism(&mut rng, &a).unwrap();
        let beta = alpha.conjugate_by(&random_unit(&mut rng, &a)).unwrap();
        let ok = match are_conjugate(&alpha, &beta, &cfg().with_seed(k)).unwrap() {
            Conjugacy::Conjugate(u) => alpha.conjugate_by(&u).unwrap().images() == beta.images(),
            _ => false,
        };
        conj += usize::from(ok);
    }
    let mut pulled = 0;
    for _ in 0..50 {
        let a = random_algebra(&mut rng, f5(), &small());
        let sigma = random_collection(&mut rng, f5(), a.vertex_count(), 2).unwrap();
        let z = if rng.gen_bool(0.5) {
            random_a_object(&mut rng, &a, &sigma).unwrap()
        } else {
            match random_flat_object(&mut rng, &a, &sigma).unwrap() {
                Some(z) => z,
                None => random_a_object(&mut rng, &a, &sigma).unwrap(),
            }
        };
        let alpha = random_automorphism(&mut rng, &a).unwrap();
        let beta = alpha.conjugate_by(&random_unit(&mut rng, &a)).unwrap();
        let pa = pullback(&alpha, &z).unwrap();
        let pb = pullback(&beta, &z).unwrap();
        pulled += usize::from(pa.isomorphic_to(&pb, &cfg()).unwrap().is_isomorphic());
    }
    verdict(
        conj == 100 && pulled == 50,
        format!("conjugate {conj}/100, isomorphic pullbacks {pulled}/50"),
    )
}

fn loop_enumeration() -> (Arc<PathAlgebra>, Vec<Rep>) {
    let f = Field::prime(2).unwrap();
    let a = Arc::new(PathAlgebra::truncated_polynomial(f, 2).unwrap());
    (a, vec![Rep::simple(one_loop(f), 0)])
}

fn criterion_9() -> Verdict {
    let (a, sigma) = loop_enumeration();
    let fast = ncdef_enumerate(&a, &Collection::new(sigma.clone()).unwrap(), &cfg()).unwrap();
    let slow = oracle::brute_force_deformations(&a, &sigma);
    let mut fast_sizes: Vec<usize> = fast.orbits.iter().map(|o| o.size).collect();
    let mut slow_sizes = slow.orbit_sizes.clone();
    fast_sizes.sort_unstable();
    slow_sizes.sort_unstable();
    let sum = fast_sizes.iter().sum::<usize>();
    verdict(
        fast.orbits.len() == slow.orbit_count
            && fast.raw_count == slow.raw_count
            && fast_sizes == slow_sizes
            && sum == fast.raw_count,
        format!(
            "orbits {} (brute force {}), raw {} (brute force {}), orbit sizes sum to {sum}",
            fast.orbits.len(),
            slow.orbit_count,
            fast.raw_count,
            slow.raw_count
        ),
    )
}

fn criterion_10() -> Verdict {
    let s = Setting::new(f5());
    let cases = [loop_enumeration(), (s.algebra_b.clone(), s.collection())];
    let (mut good, mut total) = (0, 0);
    for (a, sigma) in &cases {
        let e = ncdef_enumerate(a, &Collection::new(sigma.clone()).unwrap(), &cfg()).unwrap();
        let free = regular_module(a);
        let k = a.loewy_length();
        for d in e.elements().unwrap() {
            total += 1;
            let t = tensor_apply(d.object(), &free).unwrap();
            if let Some(cert) = ex_membership(t.rep(), sigma, k, &cfg()).unwrap() {
                good += usize::from(cert.verify(sigma) && cert.level() <= k);
            }
        }
    }
    count("certificates", good, total)
}

fn criterion_11() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut good, mut total, mut ff) = (0, 0, 0);
    while total < 20 {
        let a = oracles::random_nakayama(&mut rng, f5());
        let sigma = if rng.gen_bool(0.5) {
            random_collection(&mut rng, f5(), a.vertex_count(), 2).unwrap()
        } else {
            let base = ModuleBase::Quiver(Arc::new(a.bound().clone()));
            Collection::new((0..a.vertex_count()).map(|i| Rep::simple(base.clone(), i)).collect()).unwrap()
        };
        let Some(z) = random_flat_object(&mut rng, &a, &sigma).unwrap() else {
            continue;
        };
        total += 1;
        let indecomposables = oracles::nakayama_indecomposables(&a);
        if indecomposables.iter().any(|m| m.dim() > 6) {
            continue;
        }
        let fast = ff_criterion(&z).unwrap() == FfVerdict::FullyFaithful;
        let slow = oracles::fully_faithful_by_brute_force(&z, &indecomposables);
        ff += usize::from(slow);
        good += usize::from(fast == slow);
    }
    let mut v = count("flat objects", good, total);
    v.detail += &format!(" ({ff} fully faithful)");
    v
}

fn criterion_12() -> Verdict {
    let f = Field::prime(2).unwrap();
    let q = Quiver::build(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")]).unwrap();
    let a = Arc::new(PathAlgebra::build(BoundQuiver::free(q, f)).unwrap());
    let s = simples(&a);
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let samples: Vec<Rep> = (0..50).map(|_| random_module(&mut rng, &a, 5).unwrap()).collect();
    let x = vec![s[2].clone()];
    let y = vec![s[1].clone()];
    let z = vec![s[0].clone(), s[2].clone()];
    let report = gabriel_associativity_check(&x, &y, &z, &samples, &cfg()).unwrap();
    let mut v = count("modules", report.agreements, 50);
    v.passed &= report.checked == 50;
    v.detail += &format!(" ({} in both products)", report.members);
    v
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 12] = [
        ("worked example data over Q", criterion_1),
        ("obstruction via verify-54", criterion_2),
        ("flatness against the mono criterion", criterion_3),
        ("universal-extension tower on the loop", criterion_4),
        ("universal property on random pairs", criterion_5),
        ("radical functor on random maps", criterion_6),
        ("tensor functor suite", criterion_7),
        ("conjugacy suite", criterion_8),
        ("deformation enumeration against brute force", criterion_9),
        ("membership certificates for deformations", criterion_10),
        ("full faithfulness against brute force", criterion_11),
        ("Gabriel product associativity", criterion_12),
    ];
    let mut failures = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            verdict(false, format!("panicked: {msg}"))
        });
        let tag = if v.passed { "PASS" } else { "FAIL" };
        failures += usize::from(!v.passed);
        println!(
            "criterion {:>2} {tag}  {name}: {} [{:.1?}]",
            k + 1,
            v.detail,
            start.elapsed()
        );
    }
    println!("acceptance: {}/12 criteria pass", 12 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

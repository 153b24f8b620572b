//! The subcommands. Each returns an [`Outcome`]: a JSON report and whether
//! the mathematical check passed.

use std::sync::Arc;

use clap::Subcommand;
use ncdef_core::algebra::{are_conjugate, Conjugacy, PathAlgebra};
use ncdef_core::aobjects::{tensor_apply, FlatVerdict};
use ncdef_core::counterexample::run_counterexample;
use ncdef_core::deformation::{
    ex_membership, ff_criterion, is_simple_collection, ncdef_enumerate, Collection, FfVerdict, SimpleVerdict,
};
use ncdef_core::homology::{df_truncation_algebra, ext1, universal_extension, ShortExact};
use ncdef_core::linalg::{Field, SearchConfig};
use ncdef_core::rep::{hom_space, loewy_length_of, projective, radical_series, ModuleBase, Rep};
use ncdef_core::Error;
use serde_json::{json, Value};

use crate::encode::{map_json, module_json, scalars_json};
use crate::error::{CliError, CliResult};
use crate::workspace::{parse_field, Workspace};

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Build an algebra and report its basis and radical layers.
    CheckAlgebra { algebra: String },
    /// Loewy length and radical series of a module or an algebra.
    Loewy { name: String },
    /// The simple modules of an algebra.
    Simples { algebra: String },
    /// The indecomposable projective modules of an algebra.
    Projectives { algebra: String },
    /// A basis of Hom(SRC, TGT).
    Hom { source: String, target: String },
    /// The dimension of Ext^1(SRC, TGT).
    Ext1 { source: String, target: String },
    /// The Ext^1 class of the sequence given by two module maps.
    ClassOfSes { inclusion: String, projection: String },
    /// The universal extension of a module by the simples (or a collection).
    UnivExt {
        module: String,
        #[arg(long)]
        collection: Option<String>,
    },
    /// The tower of universal extensions over a simple collection.
    DfTower {
        collection: String,
        #[arg(long)]
        levels: usize,
        #[arg(long, default_value_t = 400)]
        dim_cap: usize,
    },
    /// Whether two algebra homomorphisms are conjugate.
    Conjugate { first: String, second: String },
    /// Whether an A-object is flat.
    FlatCheck { a_object: String },
    /// The module M tensored with an A-object.
    Tensor { a_object: String, module: String },
    /// Whether a collection is simple: Hom(Z_i, Z_j) is the field on the diagonal and zero off it.
    SimpleCollection { collection: String },
    /// Membership of a module in the depth-K extension closure of a collection.
    ExMember {
        module: String,
        collection: String,
        #[arg(long)]
        depth: usize,
    },
    /// Deformations of a collection over an algebra, up to equivalence.
    Ncdef { algebra: String, collection: String },
    /// Whether tensoring with an A-object is fully faithful.
    FfCheck { a_object: String },
    /// Run the bundled obstruction example.
    #[command(name = "verify-54")]
    Verify54 {
        #[arg(long, default_value = "Q")]
        field: String,
    },
}

impl Command {
    pub fn needs_workspace(&self) -> bool {
        !matches!(self, Command::Verify54 { .. })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub passed: bool,
    pub report: Value,
}

fn pass(report: Value) -> CliResult<Outcome> {
    Ok(Outcome { passed: true, report })
}

fn fail(report: Value) -> CliResult<Outcome> {
    Ok(Outcome { passed: false, report })
}

fn core<T>(context: &str, r: ncdef_core::Result<T>) -> CliResult<T> {
    r.map_err(|e| CliError::core(context, e))
}

fn dims_json(m: &Rep) -> Value {
    json!(m.dims())
}

pub fn run(ws: Option<&Workspace>, cmd: &Command, cfg: &SearchConfig) -> CliResult<Outcome> {
    if let Command::Verify54 { field } = cmd {
        let field = parse_field(field).ok_or_else(|| CliError::input("--field", format!("unknown field {field:?}")))?;
        return verify_54(field, cfg);
    }
    let ws = ws.ok_or_else(|| CliError::input("--input", "this command needs a workspace file"))?;
    match cmd {
        Command::CheckAlgebra { algebra } => check_algebra(ws, algebra),
        Command::Loewy { name } => loewy(ws, name),
        Command::Simples { algebra } => simples(ws, algebra),
        Command::Projectives { algebra } => projectives(ws, algebra),
        Command::Hom { source, target } => {
            let m = ws.module(source, "SRC")?;
            let n = ws.module(target, "TGT")?;
            let basis = core("hom", hom_space(&m, &n))?;
            pass(json!({"dim": basis.len(), "basis": basis.iter().map(map_json).collect::<Vec<_>>()}))
        }
        Command::Ext1 { source, target } => {
            let m = ws.module(source, "SRC")?;
            let n = ws.module(target, "TGT")?;
            pass(json!({"dim": core("ext1", ext1(&m, &n))?.dim()}))
        }
        Command::ClassOfSes { inclusion, projection } => class_of_ses(ws, inclusion, projection),
        Command::UnivExt { module, collection } => univ_ext(ws, module, collection.as_deref()),
        Command::DfTower {
            collection,
            levels,
            dim_cap,
        } => df_tower(ws, collection, *levels, *dim_cap),
        Command::Conjugate { first, second } => {
            let a = ws.algebra_hom(first, "HOM1")?;
            let b = ws.algebra_hom(second, "HOM2")?;
            match core("conjugate", are_conjugate(&a, &b, cfg))? {
                Conjugacy::Conjugate(u) => {
                    pass(json!({"verdict": "conjugate", "unit": a.target().display_element(&u)}))
                }
                Conjugacy::NotConjugate => fail(json!({"verdict": "not_conjugate"})),
                Conjugacy::ProbablyNot => fail(json!({"verdict": "undecided"})),
            }
        }
        Command::FlatCheck { a_object } => {
            let z = ws.a_object(a_object, "AOBJ")?;
            let tor: Vec<usize> = (0..z.algebra().vertex_count())
                .map(|i| z.tor1_simple_dim(i))
                .collect::<ncdef_core::Result<_>>()
                .map_err(|e| CliError::core("flat-check", e))?;
            match core("flat-check", z.flatness())? {
                FlatVerdict::Flat => pass(json!({"flat": true, "tor1_simple_dims": tor})),
                FlatVerdict::NotFlat { simple, tor_dim } => fail(json!({
                    "flat": false,
                    "tor1_simple_dims": tor,
                    "witness": {"simple": z.algebra().quiver().vertices()[simple], "tor1_dim": tor_dim},
                })),
            }
        }
        Command::Tensor { a_object, module } => {
            let z = ws.a_object(a_object, "AOBJ")?;
            let m = ws.module(module, "MOD")?;
            let over = ws.module_over(&ws.raw().a_objects[a_object].components[0], "AOBJ")?;
            let t = core("tensor", tensor_apply(&z, &m))?;
            pass(json!({"module": module_json(t.rep(), &over)}))
        }
        Command::SimpleCollection { collection } => {
            let names = ws.collection_names(collection, "COLL")?;
            let sigma = core("simple-collection", Collection::new(ws.collection(collection, "COLL")?))?;
            let hom_dims = core("simple-collection", sigma.hom_dims())?;
            match core("simple-collection", is_simple_collection(&sigma))? {
                SimpleVerdict::Simple => pass(json!({"simple": true, "hom_dims": hom_dims})),
                SimpleVerdict::Fails { i, j, dim } => fail(json!({
                    "simple": false,
                    "hom_dims": hom_dims,
                    "witness": {"pair": [names[i], names[j]], "hom_dim": dim},
                })),
            }
        }
        Command::ExMember {
            module,
            collection,
            depth,
        } => ex_member(ws, module, collection, *depth, cfg),
        Command::Ncdef { algebra, collection } => {
            let a = ws.algebra(algebra, "ALG")?;
            let sigma = core("ncdef", Collection::new(ws.collection(collection, "COLL")?))?;
            let e = core("ncdef", ncdef_enumerate(&a, &sigma, cfg))?;
            let orbits: Vec<Value> = e
                .orbits
                .iter()
                .map(|o| json!({"representative": scalars_json(&o.representative), "size": o.size}))
                .collect();
            pass(json!({
                "params": e.space.param_count(),
                "raw_count": e.raw_count,
                "orbit_count": e.orbits.len(),
                "orbits": orbits,
            }))
        }
        Command::FfCheck { a_object } => {
            let z = ws.a_object(a_object, "AOBJ")?;
            let labels = z.algebra().quiver().vertices().to_vec();
            match ff_criterion(&z) {
                Ok(FfVerdict::FullyFaithful) => pass(json!({"verdict": "fully_faithful"})),
                Ok(FfVerdict::FailsHom { i, j, dim }) => fail(json!({
                    "verdict": "fails_hom",
                    "witness": {"simples": [labels[i], labels[j]], "hom_dim": dim},
                })),
                Ok(FfVerdict::FailsExtInjectivity { i, j, ext_dim, rank }) => fail(json!({
                    "verdict": "fails_ext_injectivity",
                    "witness": {"simples": [labels[i], labels[j]], "ext_dim": ext_dim, "rank": rank},
                })),
                Err(Error::NotFlat { simple }) => fail(json!({
                    "verdict": "not_flat",
                    "witness": {"simple": labels[simple]},
                })),
                Err(e) => Err(CliError::core("ff-check", e)),
            }
        }
        Command::Verify54 { .. } => unreachable!("handled above"),
    }
}

fn verify_54(field: Field, cfg: &SearchConfig) -> CliResult<Outcome> {
    let report = core("verify-54", run_counterexample(field, cfg))?;
    let passed = report.passed;
    let value = serde_json::to_value(&report).expect("reports serialize");
    Ok(Outcome { passed, report: value })
}

fn check_algebra(ws: &Workspace, name: &str) -> CliResult<Outcome> {
    let bound = ws.algebra_bound(name, "ALG")?;
    let a = match PathAlgebra::build(bound) {
        Ok(a) => a,
        Err(
            e @ (Error::NonAdmissible { .. }
            | Error::IllTypedRelation { .. }
            | Error::InfiniteDimensional { .. }
            | Error::TooManyPaths { .. }),
        ) => return fail(json!({"valid": false, "reason": e.to_string()})),
        Err(e) => return Err(CliError::core("check-algebra", e)),
    };
    let q = a.quiver();
    let basis: Vec<String> = a.basis().iter().map(|p| p.display(q).to_string()).collect();
    let layers: Vec<usize> = (0..=a.loewy_length()).map(|k| a.radical_power_basis(k).len()).collect();
    pass(json!({
        "valid": true,
        "vertices": q.vertex_count(),
        "arrows": q.arrow_count(),
        "dim": a.dim(),
        "basis": basis,
        "loewy_length": a.loewy_length(),
        "radical_power_dims": layers,
    }))
}

fn loewy(ws: &Workspace, name: &str) -> CliResult<Outcome> {
    if ws.is_algebra(name) {
        let a = ws.algebra(name, "NAME")?;
        let layers: Vec<usize> = (0..=a.loewy_length()).map(|k| a.radical_power_basis(k).len()).collect();
        return pass(json!({"loewy_length": a.loewy_length(), "radical_power_dims": layers}));
    }
    let m = ws.module(name, "NAME")?;
    let series: Vec<Vec<usize>> = radical_series(&m)
        .iter()
        .map(|layer| layer.iter().map(|b| b.cols()).collect())
        .collect();
    pass(json!({"loewy_length": loewy_length_of(&m), "radical_series": series}))
}

fn simples(ws: &Workspace, name: &str) -> CliResult<Outcome> {
    let a = ws.algebra(name, "ALG")?;
    let base = ModuleBase::Algebra(a.clone());
    let list: Vec<Value> = a
        .quiver()
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, label)| json!({"vertex": label, "dims": dims_json(&Rep::simple(base.clone(), i))}))
        .collect();
    pass(json!({"simples": list}))
}

fn projectives(ws: &Workspace, name: &str) -> CliResult<Outcome> {
    let a: Arc<PathAlgebra> = ws.algebra(name, "ALG")?;
    let list: Vec<Value> = a
        .quiver()
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, label)| json!({"vertex": label, "module": module_json(&projective(&a, i), name)}))
        .collect();
    pass(json!({"projectives": list}))
}

fn class_of_ses(ws: &Workspace, incl: &str, proj: &str) -> CliResult<Outcome> {
    let i = ws.module_map(incl, "INCL")?;
    let p = ws.module_map(proj, "PROJ")?;
    let ses = match ShortExact::new(i, p) {
        Ok(s) => s,
        Err(Error::NotExact(reason)) => return fail(json!({"exact": false, "reason": reason})),
        Err(e) => return Err(CliError::core("class-of-ses", e)),
    };
    let space = core("class-of-ses", ext1(ses.quotient(), ses.sub()))?;
    let class = core("class-of-ses", space.class_of(&ses))?;
    pass(json!({
        "exact": true,
        "ext_dim": space.dim(),
        "class": scalars_json(&class),
        "split": space.is_zero_class(&class),
    }))
}

fn univ_ext(ws: &Workspace, name: &str, collection: Option<&str>) -> CliResult<Outcome> {
    let m = ws.module(name, "MOD")?;
    let over = ws.module_over(name, "MOD")?;
    let sigma = match collection {
        Some(c) => ws.collection(c, "--collection")?,
        None => (0..m.dims().len()).map(|i| Rep::simple(m.base().clone(), i)).collect(),
    };
    let u = core("univ-ext", universal_extension(&m, &sigma))?;
    let report = json!({
        "universal": u.is_universal(),
        "ext_dims": u.ext_dims,
        "hom_dims": u.hom_dims,
        "connecting_ranks": u.connecting_ranks,
        "extended": module_json(u.extended(), &over),
    });
    if u.is_universal() {
        pass(report)
    } else {
        fail(report)
    }
}

fn df_tower(ws: &Workspace, name: &str, levels: usize, dim_cap: usize) -> CliResult<Outcome> {
    let sigma = ws.collection(name, "COLL")?;
    let mut rows = Vec::new();
    for l in 0..=levels {
        let t = core("df-tower", df_truncation_algebra(&sigma, l, dim_cap))?;
        rows.push(json!({
            "level": l,
            "module_dims": dims_json(t.module()),
            "end_dim": t.end.dim(),
        }));
    }
    pass(json!({"levels": rows}))
}

fn ex_member(ws: &Workspace, module: &str, collection: &str, depth: usize, cfg: &SearchConfig) -> CliResult<Outcome> {
    let m = ws.module(module, "MOD")?;
    let names = ws.collection_names(collection, "COLL")?;
    let sigma = ws.collection(collection, "COLL")?;
    match core("ex-member", ex_membership(&m, &sigma, depth, cfg))? {
        Some(cert) => {
            let layers: Vec<Vec<&str>> = cert
                .layers
                .iter()
                .map(|l| l.summands.iter().map(|&s| names[s].as_str()).collect())
                .collect();
            pass(json!({"member": true, "level": cert.level(), "layers": layers}))
        }
        None => fail(json!({"member": false, "depth": depth})),
    }
}

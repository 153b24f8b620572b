//! The JSON workspace format and its resolution into library values.
//!
//! ```json
//! {
//!   "field": "F:5",
//!   "quivers": {"Q": {"vertices": ["1", "2"], "arrows": [{"name": "a", "source": "1", "target": "2"}]}},
//!   "relations": {"R": {"quiver": "Q", "relations": [[{"coeff": "1", "path": ["a", "b"]}]]}},
//!   "algebras": {"A": {"quiver": "Q", "relations": "R"}},
//!   "modules": {"M": {"over": "A", "dims": [1, 1], "arrows": {"a": [["1"]]}}},
//!   "collections": {"C": ["M"]},
//!   "a-objects": {"Z": {"algebra": "A", "components": ["M", "M"], "arrows": {"a": [[["1"]], []]}}},
//!   "homs": {"f": {"kind": "module-map", "source": "M", "target": "M", "blocks": [[["1"]], [["1"]]]}}
//! }
//! ```
//!
//! Paths are arrow names listed from source to target. A module's `over`
//! names an algebra or a quiver; over a quiver, `relations` may name a
//! relation set. Arrow matrices absent from a module act by zero. An arrow
//! `u -> v` of a module acts by a `dims[u] x dims[v]` matrix; an arrow of an
//! A-object's algebra gives one block per target vertex, from the source
//! component to the target component.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::sync::Arc;

use ncdef_core::algebra::{AlgebraHom, BoundQuiver, Element, Path, PathAlgebra, Quiver, Relation};
use ncdef_core::aobjects::AObject;
use ncdef_core::linalg::{Field, Matrix, Scalar};
use ncdef_core::rep::{ModuleBase, Rep, RepMap};
use serde::{Deserialize, Serialize};

use crate::error::{AtPath, CliError, CliResult};

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(untagged)]
pub enum RawScalar {
    Text(String),
    Int(i64),
}

pub type RawMatrix = Vec<Vec<RawScalar>>;

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RawArrow {
    pub name: String,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RawQuiver {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub arrows: Vec<RawArrow>,
}

/// One term of an element or relation: `coeff` times a path. The trivial path
/// at a vertex is written with `vertex` and no `path`.
#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RawTerm {
    pub coeff: RawScalar,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub path: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex: Option<String>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RawRelations {
    pub quiver: String,
    pub relations: Vec<Vec<RawTerm>>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RawAlgebra {
    pub quiver: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relations: Option<String>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RawModule {
    pub over: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relations: Option<String>,
    pub dims: Vec<usize>,
    #[serde(default)]
    pub arrows: BTreeMap<String, RawMatrix>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RawAObject {
    pub algebra: String,
    pub components: Vec<String>,
    #[serde(default)]
    pub arrows: BTreeMap<String, Vec<RawMatrix>>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum RawHom {
    /// A homomorphism of modules, one block per vertex.
    ModuleMap {
        source: String,
        target: String,
        blocks: Vec<RawMatrix>,
    },
    /// An algebra homomorphism given on arrows; `vertex_map` lists the target
    /// vertex of every source vertex.
    AlgebraHom {
        source: String,
        target: String,
        vertex_map: Vec<String>,
        #[serde(default)]
        arrows: BTreeMap<String, Vec<RawTerm>>,
    },
}

#[derive(Clone, Debug, Default, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RawWorkspace {
    pub field: String,
    #[serde(default)]
    pub quivers: BTreeMap<String, RawQuiver>,
    #[serde(default)]
    pub relations: BTreeMap<String, RawRelations>,
    #[serde(default)]
    pub algebras: BTreeMap<String, RawAlgebra>,
    #[serde(default)]
    pub modules: BTreeMap<String, RawModule>,
    #[serde(default)]
    pub collections: BTreeMap<String, Vec<String>>,
    #[serde(default, rename = "a-objects")]
    pub a_objects: BTreeMap<String, RawAObject>,
    #[serde(default)]
    pub homs: BTreeMap<String, RawHom>,
}

pub fn parse_field(text: &str) -> Option<Field> {
    text.parse().ok()
}

/// A parsed workspace; named objects are built on first use and cached so
/// that modules over the same algebra share it.
pub struct Workspace {
    raw: RawWorkspace,
    field: Field,
    quivers: RefCell<BTreeMap<String, Quiver>>,
    bases: RefCell<BTreeMap<String, ModuleBase>>,
    algebras: RefCell<BTreeMap<String, Arc<PathAlgebra>>>,
    modules: RefCell<BTreeMap<String, Rep>>,
}

impl Workspace {
    pub fn parse(text: &str) -> CliResult<Workspace> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let raw: RawWorkspace = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            CliError::input(if path == "." { "$".to_string() } else { path }, e.inner().to_string())
        })?;
        Workspace::from_raw(raw)
    }

    pub fn from_raw(raw: RawWorkspace) -> CliResult<Workspace> {
        let field = parse_field(&raw.field)
            .ok_or_else(|| CliError::input("field", format!("expected \"Q\" or \"F:p\" with p prime, got {:?}", raw.field)))?;
        Ok(Workspace {
            raw,
            field,
            quivers: RefCell::new(BTreeMap::new()),
            bases: RefCell::new(BTreeMap::new()),
            algebras: RefCell::new(BTreeMap::new()),
            modules: RefCell::new(BTreeMap::new()),
        })
    }

    pub fn raw(&self) -> &RawWorkspace {
        &self.raw
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn scalar(&self, s: &RawScalar, path: &str) -> CliResult<Scalar> {
        match s {
            RawScalar::Text(t) => self.field.parse_scalar(t).at(path),
            RawScalar::Int(n) => Ok(self.field.from_i64(*n)),
        }
    }

    pub fn matrix(&self, m: &RawMatrix, rows: usize, cols: usize, path: &str) -> CliResult<Matrix> {
        let shape_error = || CliError::input(path, format!("expected a {rows}x{cols} matrix"));
        if m.len() != rows || m.iter().any(|r| r.len() != cols) {
            return Err(shape_error());
        }
        let mut out = Matrix::zeros(self.field, rows, cols);
        for (i, row) in m.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                out.set(i, j, self.scalar(x, &format!("{path}[{i}][{j}]"))?);
            }
        }
        Ok(out)
    }

    fn lookup<'a, T>(map: &'a BTreeMap<String, T>, section: &str, name: &str, from: &str) -> CliResult<&'a T> {
        map.get(name)
            .ok_or_else(|| CliError::input(from, format!("no entry {name:?} in {section}")))
    }

    pub fn quiver(&self, name: &str, from: &str) -> CliResult<Quiver> {
        if let Some(q) = self.quivers.borrow().get(name) {
            return Ok(q.clone());
        }
        let raw = Self::lookup(&self.raw.quivers, "quivers", name, from)?;
        let path = format!("quivers.{name}");
        let arrows: Vec<(&str, &str, &str)> = raw
            .arrows
            .iter()
            .map(|a| (a.name.as_str(), a.source.as_str(), a.target.as_str()))
            .collect();
        let labels: Vec<&str> = raw.vertices.iter().map(|s| s.as_str()).collect();
        let q = Quiver::build(&labels, &arrows).at(&path)?;
        self.quivers.borrow_mut().insert(name.to_string(), q.clone());
        Ok(q)
    }

    fn path(&self, q: &Quiver, term: &RawTerm, path: &str) -> CliResult<Path> {
        match (&term.vertex, term.path.is_empty()) {
            (Some(v), true) => {
                let i = q
                    .vertex_index(v)
                    .ok_or_else(|| CliError::input(format!("{path}.vertex"), format!("unknown vertex {v:?}")))?;
                Ok(Path::trivial(i))
            }
            (None, false) => {
                let names: Vec<&str> = term.path.iter().map(|s| s.as_str()).collect();
                Path::from_names(q, &names).at(&format!("{path}.path"))
            }
            _ => Err(CliError::input(path, "a term needs exactly one of a non-empty \"path\" or a \"vertex\"")),
        }
    }

    pub fn bound_quiver(&self, quiver: &str, relations: Option<&str>, from: &str) -> CliResult<BoundQuiver> {
        let q = self.quiver(quiver, from)?;
        let Some(rel_name) = relations else {
            return Ok(BoundQuiver::free(q, self.field));
        };
        let raw = Self::lookup(&self.raw.relations, "relations", rel_name, from)?;
        if raw.quiver != quiver {
            return Err(CliError::input(
                format!("relations.{rel_name}.quiver"),
                format!("relations are over {:?}, not {quiver:?}", raw.quiver),
            ));
        }
        let mut rels = Vec::new();
        for (k, terms) in raw.relations.iter().enumerate() {
            let mut list = Vec::new();
            for (t, term) in terms.iter().enumerate() {
                let path = format!("relations.{rel_name}.relations[{k}][{t}]");
                list.push((self.scalar(&term.coeff, &format!("{path}.coeff"))?, self.path(&q, term, &path)?));
            }
            rels.push(Relation::new(list));
        }
        BoundQuiver::new(q, rels, self.field).at(&format!("relations.{rel_name}"))
    }

    /// The bound quiver presenting a named algebra.
    pub fn algebra_bound(&self, name: &str, from: &str) -> CliResult<BoundQuiver> {
        let raw = Self::lookup(&self.raw.algebras, "algebras", name, from)?;
        self.bound_quiver(&raw.quiver, raw.relations.as_deref(), &format!("algebras.{name}"))
    }

    pub fn algebra(&self, name: &str, from: &str) -> CliResult<Arc<PathAlgebra>> {
        if let Some(a) = self.algebras.borrow().get(name) {
            return Ok(a.clone());
        }
        let bound = self.algebra_bound(name, from)?;
        let path = format!("algebras.{name}");
        let a = Arc::new(PathAlgebra::build(bound).at(&path)?);
        self.algebras.borrow_mut().insert(name.to_string(), a.clone());
        Ok(a)
    }

    /// The base named by a module's `over`: an algebra if one has that
    /// name, otherwise a quiver.
    pub fn base(&self, over: &str, relations: Option<&str>, from: &str) -> CliResult<ModuleBase> {
        let key = format!("{over}/{}", relations.unwrap_or(""));
        if let Some(b) = self.bases.borrow().get(&key) {
            return Ok(b.clone());
        }
        let base = if self.raw.algebras.contains_key(over) {
            if relations.is_some() {
                return Err(CliError::input(from, "relations can only be given for modules over a quiver"));
            }
            ModuleBase::Algebra(self.algebra(over, from)?)
        } else if self.raw.quivers.contains_key(over) {
            ModuleBase::Quiver(Arc::new(self.bound_quiver(over, relations, from)?))
        } else {
            return Err(CliError::input(from, format!("{over:?} is neither an algebra nor a quiver")));
        };
        self.bases.borrow_mut().insert(key, base.clone());
        Ok(base)
    }

    pub fn module(&self, name: &str, from: &str) -> CliResult<Rep> {
        if let Some(m) = self.modules.borrow().get(name) {
            return Ok(m.clone());
        }
        let raw = Self::lookup(&self.raw.modules, "modules", name, from)?;
        let path = format!("modules.{name}");
        let base = self.base(&raw.over, raw.relations.as_deref(), &format!("{path}.over"))?;
        let rep = self.decode_module(&base, raw, &path)?;
        self.modules.borrow_mut().insert(name.to_string(), rep.clone());
        Ok(rep)
    }

    /// The `over` entry of a named module.
    pub fn module_over(&self, name: &str, from: &str) -> CliResult<String> {
        Ok(Self::lookup(&self.raw.modules, "modules", name, from)?.over.clone())
    }

    /// Builds a module from its raw form over a known base.
    pub fn decode_module(&self, base: &ModuleBase, raw: &RawModule, path: &str) -> CliResult<Rep> {
        let q = base.quiver().clone();
        if raw.dims.len() != q.vertex_count() {
            return Err(CliError::input(
                format!("{path}.dims"),
                format!("expected {} entries, one per vertex", q.vertex_count()),
            ));
        }
        for key in raw.arrows.keys() {
            if q.arrow_index(key).is_none() {
                return Err(CliError::input(format!("{path}.arrows.{key}"), "no such arrow"));
            }
        }
        let mut maps = Vec::new();
        for arr in q.arrows() {
            let (r, c) = (raw.dims[arr.source], raw.dims[arr.target]);
            maps.push(match raw.arrows.get(&arr.name) {
                Some(m) => self.matrix(m, r, c, &format!("{path}.arrows.{}", arr.name))?,
                None => Matrix::zeros(self.field, r, c),
            });
        }
        Rep::new(base.clone(), raw.dims.clone(), maps).at(path)
    }

    pub fn collection(&self, name: &str, from: &str) -> CliResult<Vec<Rep>> {
        let raw = Self::lookup(&self.raw.collections, "collections", name, from)?;
        raw.iter()
            .enumerate()
            .map(|(i, m)| self.module(m, &format!("collections.{name}[{i}]")))
            .collect()
    }

    pub fn collection_names(&self, name: &str, from: &str) -> CliResult<Vec<String>> {
        Ok(Self::lookup(&self.raw.collections, "collections", name, from)?.clone())
    }

    fn blocks(&self, raw: &[RawMatrix], source: &Rep, target: &Rep, path: &str) -> CliResult<Vec<Matrix>> {
        let n = source.dims().len();
        if raw.len() != n {
            return Err(CliError::input(path, format!("expected {n} blocks, one per vertex")));
        }
        (0..n)
            .map(|v| self.matrix(&raw[v], target.dims()[v], source.dims()[v], &format!("{path}[{v}]")))
            .collect()
    }

    pub fn a_object(&self, name: &str, from: &str) -> CliResult<AObject> {
        let raw = Self::lookup(&self.raw.a_objects, "a-objects", name, from)?;
        let path = format!("a-objects.{name}");
        let a = self.algebra(&raw.algebra, &format!("{path}.algebra"))?;
        let q = a.quiver().clone();
        if raw.components.len() != q.vertex_count() {
            return Err(CliError::input(
                format!("{path}.components"),
                format!("expected {} modules, one per vertex of {}", q.vertex_count(), raw.algebra),
            ));
        }
        let comps = raw
            .components
            .iter()
            .enumerate()
            .map(|(i, m)| self.module(m, &format!("{path}.components[{i}]")))
            .collect::<CliResult<Vec<_>>>()?;
        for key in raw.arrows.keys() {
            if q.arrow_index(key).is_none() {
                return Err(CliError::input(format!("{path}.arrows.{key}"), "no such arrow"));
            }
        }
        let mut maps = Vec::new();
        for arr in q.arrows() {
            let (s, t) = (&comps[arr.source], &comps[arr.target]);
            maps.push(match raw.arrows.get(&arr.name) {
                Some(b) => {
                    let p = format!("{path}.arrows.{}", arr.name);
                    RepMap::new(s.clone(), t.clone(), self.blocks(b, s, t, &p)?).at(&p)?
                }
                None => RepMap::zero(s, t),
            });
        }
        AObject::from_components(a, comps, maps).at(&path)
    }

    pub fn module_map(&self, name: &str, from: &str) -> CliResult<RepMap> {
        let path = format!("homs.{name}");
        match Self::lookup(&self.raw.homs, "homs", name, from)? {
            RawHom::ModuleMap { source, target, blocks } => {
                let s = self.module(source, &format!("{path}.source"))?;
                let t = self.module(target, &format!("{path}.target"))?;
                let b = self.blocks(blocks, &s, &t, &format!("{path}.blocks"))?;
                RepMap::new(s, t, b).at(&path)
            }
            RawHom::AlgebraHom { .. } => Err(CliError::input(from, format!("{name:?} is not a module map"))),
        }
    }

    pub fn element(&self, a: &PathAlgebra, terms: &[RawTerm], path: &str) -> CliResult<Element> {
        let mut x = a.zero();
        for (t, term) in terms.iter().enumerate() {
            let p = format!("{path}[{t}]");
            let c = self.scalar(&term.coeff, &format!("{p}.coeff"))?;
            let route = self.path(a.quiver(), term, &p)?;
            let y = a.scale(&c, &a.path_element(&route));
            x = a.add(&x, &y);
        }
        Ok(x)
    }

    pub fn algebra_hom(&self, name: &str, from: &str) -> CliResult<AlgebraHom> {
        let path = format!("homs.{name}");
        match Self::lookup(&self.raw.homs, "homs", name, from)? {
            RawHom::AlgebraHom {
                source,
                target,
                vertex_map,
                arrows,
            } => {
                let a = self.algebra(source, &format!("{path}.source"))?;
                let b = self.algebra(target, &format!("{path}.target"))?;
                let map = vertex_map
                    .iter()
                    .enumerate()
                    .map(|(i, v)| {
                        b.quiver().vertex_index(v).ok_or_else(|| {
                            CliError::input(format!("{path}.vertex_map[{i}]"), format!("unknown vertex {v:?}"))
                        })
                    })
                    .collect::<CliResult<Vec<_>>>()?;
                for key in arrows.keys() {
                    if a.quiver().arrow_index(key).is_none() {
                        return Err(CliError::input(format!("{path}.arrows.{key}"), "no such arrow"));
                    }
                }
                let images = a
                    .quiver()
                    .arrows()
                    .iter()
                    .map(|arr| match arrows.get(&arr.name) {
                        Some(t) => self.element(&b, t, &format!("{path}.arrows.{}", arr.name)),
                        None => Ok(b.zero()),
                    })
                    .collect::<CliResult<Vec<_>>>()?;
                AlgebraHom::from_arrow_images(a, b, map, images).at(&path)
            }
            RawHom::ModuleMap { .. } => Err(CliError::input(from, format!("{name:?} is not an algebra hom"))),
        }
    }

    /// Whether `name` refers to an algebra rather than a module.
    pub fn is_algebra(&self, name: &str) -> bool {
        self.raw.algebras.contains_key(name)
    }
}

//! Finite-dimensional right modules as quiver representations.
//!
//! An arrow `a: u -> v` acts by a matrix `M_a` of shape `dims[u] x dims[v]`,
//! i.e. a map from the `v` component to the `u` component. A path
//! `a_1 ... a_k` (travel order) then acts by `M_{a_1} M_{a_2} ... M_{a_k}`.
//! With this convention the indecomposable projective `P_i = e_i A` has the
//! paths ending at `i` as its basis and top `S_i`.

mod hom;
mod iso;
mod ops;
mod projective;

use std::sync::Arc;

use crate::algebra::{BoundQuiver, Element, Path, PathAlgebra, Quiver};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar};

pub use hom::{hom_dim, hom_space, HomSystem};
pub use iso::{find_invertible_affine, find_invertible_in, is_isomorphic, IsoVerdict};
pub use ops::{
    direct_sum, direct_sum_in, factor_through_epi, factor_through_mono, loewy_length_of, map_between_sums, quotient, radical,
    radical_on_map, radical_series, socle, subrep, top, DirectSum,
};
pub use projective::{projective, projective_cover, ProjectiveModule};

/// What a module is a module over: a finite-dimensional algebra, or a bound
/// quiver whose path algebra may be infinite-dimensional.
#[derive(Clone, Debug)]
pub enum ModuleBase {
    Algebra(Arc<PathAlgebra>),
    Quiver(Arc<BoundQuiver>),
}

impl ModuleBase {
    pub fn bound(&self) -> &BoundQuiver {
        match self {
            ModuleBase::Algebra(a) => a.bound(),
            ModuleBase::Quiver(q) => q,
        }
    }

    pub fn quiver(&self) -> &Quiver {
        self.bound().quiver()
    }

    pub fn field(&self) -> Field {
        self.bound().field()
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver().vertex_count()
    }

    pub fn algebra(&self) -> Option<&Arc<PathAlgebra>> {
        match self {
            ModuleBase::Algebra(a) => Some(a),
            ModuleBase::Quiver(_) => None,
        }
    }

    pub fn require_algebra(&self, what: &str) -> Result<&Arc<PathAlgebra>> {
        self.algebra().ok_or_else(|| Error::NeedsAlgebra(what.to_string()))
    }
}

impl PartialEq for ModuleBase {
    fn eq(&self, other: &Self) -> bool {
        let same_ptr = match (self, other) {
            (ModuleBase::Algebra(a), ModuleBase::Algebra(b)) => Arc::ptr_eq(a, b),
            (ModuleBase::Quiver(a), ModuleBase::Quiver(b)) => Arc::ptr_eq(a, b),
            _ => false,
        };
        same_ptr || self.bound() == other.bound()
    }
}

impl From<Arc<PathAlgebra>> for ModuleBase {
    fn from(a: Arc<PathAlgebra>) -> Self {
        ModuleBase::Algebra(a)
    }
}

impl From<Arc<BoundQuiver>> for ModuleBase {
    fn from(q: Arc<BoundQuiver>) -> Self {
        ModuleBase::Quiver(q)
    }
}

/// A representation: one vector space per vertex, one matrix per arrow.
#[derive(Clone, Debug, PartialEq)]
pub struct Rep {
    base: ModuleBase,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl Rep {
    /// Checks shapes, fields and the relations.
    pub fn new(base: ModuleBase, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Rep> {
        let rep = Rep::new_unchecked(base, dims, maps)?;
        if let Some(index) = rep.violated_relation() {
            return Err(Error::InvalidRep(format!("relation {index} does not hold")));
        }
        Ok(rep)
    }

    /// Checks shapes only; for constructions where relations hold by design.
    pub(crate) fn new_unchecked(base: ModuleBase, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Rep> {
        let q = base.quiver();
        if dims.len() != q.vertex_count() || maps.len() != q.arrow_count() {
            return Err(Error::InvalidRep(format!(
                "expected {} dimensions and {} matrices",
                q.vertex_count(),
                q.arrow_count()
            )));
        }
        for (a, m) in maps.iter().enumerate() {
            let arr = q.arrow(a);
            if m.field() != base.field() {
                return Err(Error::FieldMismatch(m.field().to_string(), base.field().to_string()));
            }
            if m.rows() != dims[arr.source] || m.cols() != dims[arr.target] {
                return Err(Error::InvalidRep(format!(
                    "arrow {:?} needs a {}x{} matrix, got {}x{}",
                    arr.name,
                    dims[arr.source],
                    dims[arr.target],
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(Rep { base, dims, maps })
    }

    /// Named arrow matrices; arrows not mentioned act by zero.
    pub fn from_named(base: ModuleBase, dims: Vec<usize>, named: &[(&str, Matrix)]) -> Result<Rep> {
        let q = base.quiver().clone();
        if dims.len() != q.vertex_count() {
            return Err(Error::InvalidRep("wrong number of dimensions".into()));
        }
        let mut maps: Vec<Matrix> = q
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(base.field(), dims[a.source], dims[a.target]))
            .collect();
        for (name, m) in named {
            let a = q
                .arrow_index(name)
                .ok_or_else(|| Error::InvalidRep(format!("unknown arrow {name:?}")))?;
            maps[a] = m.clone();
        }
        Rep::new(base, dims, maps)
    }

    pub fn zero(base: ModuleBase) -> Rep {
        let n = base.vertex_count();
        Rep::with_zero_action(base, vec![0; n])
    }

    /// The semisimple module with the given dimension vector.
    pub fn with_zero_action(base: ModuleBase, dims: Vec<usize>) -> Rep {
        let maps = base
            .quiver()
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(base.field(), dims[a.source], dims[a.target]))
            .collect();
        Rep { base, dims, maps }
    }

    pub fn simple(base: ModuleBase, i: usize) -> Rep {
        let mut dims = vec![0; base.vertex_count()];
        dims[i] = 1;
        Rep::with_zero_action(base, dims)
    }

    pub fn base(&self) -> &ModuleBase {
        &self.base
    }

    pub fn field(&self) -> Field {
        self.base.field()
    }

    pub fn quiver(&self) -> &Quiver {
        self.base.quiver()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn map(&self, a: usize) -> &Matrix {
        &self.maps[a]
    }

    /// Action of a path, from the component at its target to the one at its source.
    pub fn path_matrix(&self, p: &Path) -> Matrix {
        if p.is_trivial() {
            return Matrix::identity(self.field(), self.dims[p.source()]);
        }
        let mut acc = self.maps[p.arrows()[0]].clone();
        for &a in &p.arrows()[1..] {
            acc = &acc * &self.maps[a];
        }
        acc
    }

    /// Action of an algebra element restricted to paths from `source` to `target`.
    pub fn element_matrix(&self, algebra: &PathAlgebra, x: &[Scalar], source: usize, target: usize) -> Matrix {
        let mut acc = Matrix::zeros(self.field(), self.dims[source], self.dims[target]);
        for (i, c) in x.iter().enumerate() {
            let p = &algebra.basis()[i];
            if c.is_zero() || p.source() != source || p.target() != target {
                continue;
            }
            acc = &acc + &self.path_matrix(p).scale(c);
        }
        acc
    }

    /// Index of the first relation not satisfied.
    pub fn violated_relation(&self) -> Option<usize> {
        self.base.bound().relations().iter().position(|r| {
            let Some((s, t)) = r.endpoints() else { return false };
            let mut acc = Matrix::zeros(self.field(), self.dims[s], self.dims[t]);
            for (c, p) in r.terms() {
                acc = &acc + &self.path_matrix(p).scale(c);
            }
            !acc.is_zero()
        })
    }

    /// Offset of each vertex in the concatenated coordinates of all components.
    pub fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.dims.len());
        let mut acc = 0;
        for &d in &self.dims {
            out.push(acc);
            acc += d;
        }
        out
    }

    /// Same module with each component's basis changed by `g_v` (new = g_v^{-1} old g).
    pub fn change_basis(&self, g: &[Matrix]) -> Result<Rep> {
        let inv: Vec<Matrix> = g
            .iter()
            .map(|m| m.inverse().ok_or_else(|| Error::InvalidRepMap("change of basis is singular".into())))
            .collect::<Result<_>>()?;
        let q = self.quiver();
        let maps = (0..q.arrow_count())
            .map(|a| {
                let arr = q.arrow(a);
                &(&inv[arr.source] * &self.maps[a]) * &g[arr.target]
            })
            .collect();
        Rep::new_unchecked(self.base.clone(), self.dims.clone(), maps)
    }
}

/// A morphism of representations: one block per vertex, `blocks[v]` of shape
/// `target.dims[v] x source.dims[v]`.
#[derive(Clone, Debug, PartialEq)]
pub struct RepMap {
    source: Rep,
    target: Rep,
    blocks: Vec<Matrix>,
}

impl RepMap {
    /// Checks shapes and that every arrow action is intertwined.
    pub fn new(source: Rep, target: Rep, blocks: Vec<Matrix>) -> Result<RepMap> {
        let f = RepMap::new_unchecked(source, target, blocks)?;
        if let Some(a) = f.failing_arrow() {
            return Err(Error::InvalidRepMap(format!(
                "does not commute with arrow {:?}",
                f.source.quiver().arrow(a).name
            )));
        }
        Ok(f)
    }

    pub(crate) fn new_unchecked(source: Rep, target: Rep, blocks: Vec<Matrix>) -> Result<RepMap> {
        if source.base != target.base {
            return Err(Error::BaseMismatch);
        }
        if blocks.len() != source.dims.len() {
            return Err(Error::InvalidRepMap("one block per vertex is required".into()));
        }
        for (v, b) in blocks.iter().enumerate() {
            if b.rows() != target.dims[v] || b.cols() != source.dims[v] {
                return Err(Error::InvalidRepMap(format!(
                    "block at vertex {v} is {}x{}, expected {}x{}",
                    b.rows(),
                    b.cols(),
                    target.dims[v],
                    source.dims[v]
                )));
            }
        }
        Ok(RepMap { source, target, blocks })
    }

    fn failing_arrow(&self) -> Option<usize> {
        let q = self.source.quiver();
        (0..q.arrow_count()).find(|&a| {
            let arr = q.arrow(a);
            let lhs = &self.target.maps[a] * &self.blocks[arr.target];
            let rhs = &self.blocks[arr.source] * &self.source.maps[a];
            lhs != rhs
        })
    }

    pub fn identity(m: &Rep) -> RepMap {
        let blocks = m.dims.iter().map(|&d| Matrix::identity(m.field(), d)).collect();
        RepMap {
            source: m.clone(),
            target: m.clone(),
            blocks,
        }
    }

    pub fn zero(source: &Rep, target: &Rep) -> RepMap {
        let blocks = source
            .dims
            .iter()
            .zip(&target.dims)
            .map(|(&s, &t)| Matrix::zeros(source.field(), t, s))
            .collect();
        RepMap {
            source: source.clone(),
            target: target.clone(),
            blocks,
        }
    }

    pub fn source(&self) -> &Rep {
        &self.source
    }

    pub fn target(&self) -> &Rep {
        &self.target
    }

    pub fn blocks(&self) -> &[Matrix] {
        &self.blocks
    }

    pub fn block(&self, v: usize) -> &Matrix {
        &self.blocks[v]
    }

    pub fn field(&self) -> Field {
        self.source.field()
    }

    /// `self` after `first`.
    pub fn after(&self, first: &RepMap) -> Result<RepMap> {
        if first.target != self.source {
            return Err(Error::InvalidRepMap("maps are not composable".into()));
        }
        let blocks = self
            .blocks
            .iter()
            .zip(&first.blocks)
            .map(|(g, f)| g * f)
            .collect();
        Ok(RepMap {
            source: first.source.clone(),
            target: self.target.clone(),
            blocks,
        })
    }

    fn check_parallel(&self, other: &RepMap) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::InvalidRepMap("maps are not parallel".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &RepMap) -> Result<RepMap> {
        self.check_parallel(other)?;
        Ok(self.with_blocks(self.blocks.iter().zip(&other.blocks).map(|(a, b)| a + b).collect()))
    }

    pub fn sub(&self, other: &RepMap) -> Result<RepMap> {
        self.check_parallel(other)?;
        Ok(self.with_blocks(self.blocks.iter().zip(&other.blocks).map(|(a, b)| a - b).collect()))
    }

    pub fn scale(&self, c: &Scalar) -> RepMap {
        self.with_blocks(self.blocks.iter().map(|b| b.scale(c)).collect())
    }

    fn with_blocks(&self, blocks: Vec<Matrix>) -> RepMap {
        RepMap {
            source: self.source.clone(),
            target: self.target.clone(),
            blocks,
        }
    }

    /// `sum_j coeffs[j] * maps[j]`; `maps` must be non-empty and parallel.
    pub fn combination(maps: &[RepMap], coeffs: &[Scalar]) -> RepMap {
        let mut acc = maps[0].scale(&coeffs[0]);
        for (m, c) in maps.iter().zip(coeffs).skip(1) {
            acc = acc.add(&m.scale(c)).expect("parallel maps");
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.is_zero())
    }

    pub fn is_mono(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.cols())
    }

    pub fn is_epi(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.rows())
    }

    pub fn is_iso(&self) -> bool {
        self.blocks.iter().all(|b| b.is_invertible())
    }

    pub fn inverse(&self) -> Option<RepMap> {
        let blocks = self.blocks.iter().map(|b| b.inverse()).collect::<Option<Vec<_>>>()?;
        Some(RepMap {
            source: self.target.clone(),
            target: self.source.clone(),
            blocks,
        })
    }

    /// All block entries, row-major, vertex by vertex.
    pub fn flatten(&self) -> Vec<Scalar> {
        self.blocks.iter().flat_map(|b| b.entries().iter().cloned()).collect()
    }

    /// Image of a vector of the source component at `v`.
    pub fn apply(&self, v: usize, x: &[Scalar]) -> Element {
        self.blocks[v].mul_vec(x)
    }
}

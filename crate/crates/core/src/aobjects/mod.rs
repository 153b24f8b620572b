//! A-objects: representations `Z` of the target quiver together with a left
//! action `rho: A -> End(Z)` of a finite-dimensional algebra `A`.
//!
//! The action is stored on the whole basis of `A`. `rho(e_i) Z = Z_i` are the
//! components; an arrow `a: u -> v` of `A` gives `rho(a): Z_u -> Z_v`, and a
//! path travelling `a_1, ..., a_k` acts by `rho(a_k) ... rho(a_1)`.

mod base_change;
mod element;
mod tensor;

use std::sync::Arc;

use crate::algebra::{Element, PathAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar, SearchConfig};
use crate::rep::{
    direct_sum_in, factor_through_mono, find_invertible_in, quotient, HomSystem, IsoVerdict, ModuleBase, Rep,
    RepMap,
};

pub use base_change::{bimodule_of_hom, hom_module, lambda_iso, pullback, pushforward};
pub use element::{deformations_equivalent, DeformationElement, Equivalence};
pub use tensor::{balanced_tensor, tensor_apply, tensor_apply_with, tensor_map, Presentation, Tensored};

#[derive(Clone, Debug)]
pub struct AObject {
    algebra: Arc<PathAlgebra>,
    carrier: Rep,
    rho: Vec<RepMap>,
    /// Inclusion `Z_i -> Z` per vertex of `A`.
    inclusions: Vec<RepMap>,
    /// Projection `Z -> Z_i` per vertex of `A`.
    projections: Vec<RepMap>,
}

/// Outcome of the flatness test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlatVerdict {
    Flat,
    /// `Tor_1(S_simple, Z)` has dimension `tor_dim > 0`.
    NotFlat { simple: usize, tor_dim: usize },
}

impl FlatVerdict {
    pub fn is_flat(&self) -> bool {
        matches!(self, FlatVerdict::Flat)
    }
}

impl AObject {
    /// Validates that `rho` is a unital algebra homomorphism into `End(carrier)`.
    pub fn new(algebra: Arc<PathAlgebra>, carrier: Rep, rho: Vec<RepMap>) -> Result<AObject> {
        if rho.len() != algebra.dim() {
            return Err(Error::InvalidAObject(format!(
                "expected {} action maps, got {}",
                algebra.dim(),
                rho.len()
            )));
        }
        if algebra.field() != carrier.field() {
            return Err(Error::FieldMismatch(algebra.field().to_string(), carrier.field().to_string()));
        }
        for (b, f) in rho.iter().enumerate() {
            if f.source() != &carrier || f.target() != &carrier {
                return Err(Error::InvalidAObject(format!("action of basis element {b} is not an endomorphism")));
            }
            RepMap::new(carrier.clone(), carrier.clone(), f.blocks().to_vec()).map_err(|_| {
                Error::InvalidAObject(format!("action of basis element {b} does not commute with the arrows"))
            })?;
        }
        let mut unit = RepMap::zero(&carrier, &carrier);
        for v in 0..algebra.vertex_count() {
            unit = unit.add(&rho[algebra.vertex_index(v)])?;
        }
        if unit != RepMap::identity(&carrier) {
            return Err(Error::InvalidAObject("the idempotents do not sum to the identity".into()));
        }
        let obj = AObject::assemble(algebra, carrier, rho)?;
        for i in 0..obj.algebra.dim() {
            for j in 0..obj.algebra.dim() {
                let lhs = obj.rho[i].after(&obj.rho[j])?;
                let rhs = obj.act(&obj.algebra.mul(&obj.algebra.basis_element(i), &obj.algebra.basis_element(j)));
                if lhs != rhs {
                    return Err(Error::InvalidAObject(format!(
                        "action is not multiplicative on basis elements {i} and {j}"
                    )));
                }
            }
        }
        Ok(obj)
    }

    fn assemble(algebra: Arc<PathAlgebra>, carrier: Rep, rho: Vec<RepMap>) -> Result<AObject> {
        let mut inclusions = Vec::new();
        let mut projections = Vec::new();
        for v in 0..algebra.vertex_count() {
            let e = &rho[algebra.vertex_index(v)];
            let incl = e.image();
            let proj = factor_through_mono(&incl, e)?;
            inclusions.push(incl);
            projections.push(proj);
        }
        Ok(AObject {
            algebra,
            carrier,
            rho,
            inclusions,
            projections,
        })
    }

    /// From components `Z_i` (one per vertex of `A`) and a map `Z_u -> Z_v`
    /// for every arrow `u -> v` of `A`. The relations of `A` are checked.
    pub fn from_components(algebra: Arc<PathAlgebra>, components: Vec<Rep>, arrows: Vec<RepMap>) -> Result<AObject> {
        let q = algebra.quiver().clone();
        if components.len() != q.vertex_count() || arrows.len() != q.arrow_count() {
            return Err(Error::InvalidAObject("one component per vertex and one map per arrow".into()));
        }
        let base = components[0].base().clone();
        for (a, f) in arrows.iter().enumerate() {
            let arr = q.arrow(a);
            if f.source() != &components[arr.source] || f.target() != &components[arr.target] {
                return Err(Error::InvalidAObject(format!(
                    "map for arrow {:?} must go from component {} to component {}",
                    arr.name, arr.source, arr.target
                )));
            }
        }
        let refs: Vec<&Rep> = components.iter().collect();
        let sum = direct_sum_in(&base, &refs)?;
        let path_map = |p: &crate::algebra::Path| -> Result<RepMap> {
            let mut acc = RepMap::identity(&components[p.source()]);
            for &a in p.arrows() {
                acc = arrows[a].after(&acc)?;
            }
            sum.injections[p.target()].after(&acc)?.after(&sum.projections[p.source()])
        };
        for (idx, rel) in algebra.bound().relations().iter().enumerate() {
            let mut acc = RepMap::zero(&sum.rep, &sum.rep);
            for (c, p) in rel.terms() {
                acc = acc.add(&path_map(p)?.scale(c))?;
            }
            if !acc.is_zero() {
                return Err(Error::InvalidAObject(format!("relation {idx} does not act by zero")));
            }
        }
        let rho = algebra.basis().iter().map(&path_map).collect::<Result<Vec<_>>>()?;
        AObject::new(algebra, sum.rep, rho)
    }

    pub fn algebra(&self) -> &Arc<PathAlgebra> {
        &self.algebra
    }

    pub fn carrier(&self) -> &Rep {
        &self.carrier
    }

    pub fn target_base(&self) -> &ModuleBase {
        self.carrier.base()
    }

    pub fn rho(&self) -> &[RepMap] {
        &self.rho
    }

    /// Action of an arbitrary element.
    pub fn act(&self, x: &[Scalar]) -> RepMap {
        let mut acc = RepMap::zero(&self.carrier, &self.carrier);
        for (c, f) in x.iter().zip(&self.rho) {
            if !c.is_zero() {
                acc = acc.add(&f.scale(c)).expect("endomorphisms");
            }
        }
        acc
    }

    pub fn component(&self, i: usize) -> &Rep {
        self.inclusions[i].source()
    }

    pub fn inclusion(&self, i: usize) -> &RepMap {
        &self.inclusions[i]
    }

    pub fn projection(&self, i: usize) -> &RepMap {
        &self.projections[i]
    }

    /// `rho(x)` restricted to `Z_j -> Z_i`.
    pub fn block(&self, x: &[Scalar], i: usize, j: usize) -> RepMap {
        self.projections[i]
            .after(&self.act(x))
            .and_then(|f| f.after(&self.inclusions[j]))
            .expect("composable")
    }

    /// The map `Z_u -> Z_v` of an arrow `a: u -> v` of `A`.
    pub fn arrow_map(&self, a: usize) -> RepMap {
        let arr = self.algebra.quiver().arrow(a);
        self.block(&self.algebra.arrow(a), arr.target, arr.source)
    }

    /// Projection `Z_i -> (q^* Z)_i = Z_i / e_i J Z`.
    pub fn reduction(&self, i: usize) -> RepMap {
        let field = self.carrier.field();
        let incl = &self.inclusions[i];
        let radical_paths: Vec<usize> = (0..self.algebra.dim())
            .filter(|&b| {
                let p = &self.algebra.basis()[b];
                !p.is_trivial() && p.target() == i
            })
            .collect();
        let bases: Vec<Matrix> = (0..self.carrier.dims().len())
            .map(|r| {
                let images: Vec<&Matrix> = radical_paths.iter().map(|&b| self.rho[b].block(r)).collect();
                let span = Matrix::hstack(field, self.carrier.dims()[r], &images).image_basis();
                let left = incl.block(r).left_inverse().expect("inclusion");
                &left * &span
            })
            .collect();
        quotient(incl.source(), &bases).expect("the radical part is a subrepresentation")
    }

    /// `q^* Z` as the list of reductions.
    pub fn reductions(&self) -> Vec<Rep> {
        (0..self.algebra.vertex_count())
            .map(|i| self.reduction(i).target().clone())
            .collect()
    }

    /// Flatness of `Z` as a left `A`-module, i.e. projectivity: the projective
    /// cover `sum (A e_i)^{t_i}` with `t_i = dim (q^* Z)_i` must not be bigger
    /// than `Z`. When it is, the first simple with `Tor_1(S_i, Z) != 0` is reported.
    pub fn flatness(&self) -> Result<FlatVerdict> {
        let tops: Vec<usize> = self.reductions().iter().map(|r| r.dim()).collect();
        let cover_dim: usize = (0..self.algebra.vertex_count())
            .map(|i| tops[i] * self.algebra.basis().iter().filter(|p| p.source() == i).count())
            .sum();
        if cover_dim == self.carrier.dim() {
            return Ok(FlatVerdict::Flat);
        }
        for i in 0..self.algebra.vertex_count() {
            let d = self.tor1_simple_dim(i)?;
            if d > 0 {
                return Ok(FlatVerdict::NotFlat { simple: i, tor_dim: d });
            }
        }
        Err(Error::Precondition(
            "dimension count and Tor computation disagree on flatness".into(),
        ))
    }

    pub fn is_flat(&self) -> Result<bool> {
        Ok(self.flatness()?.is_flat())
    }

    /// `dim Tor_1(S_i, Z)` from `0 -> Tor_1 -> T(rad P_i) -> T(P_i) -> T(S_i) -> 0`.
    pub fn tor1_simple_dim(&self, i: usize) -> Result<usize> {
        let p = crate::rep::projective(&self.algebra, i);
        let rad = crate::rep::radical(&p);
        let t_rad = tensor_apply(self, rad.source())?.rep().dim();
        let t_p = self.component(i).dim();
        let t_s = self.reduction(i).target().dim();
        Ok(t_rad + t_s - t_p)
    }

    /// Equations for maps `self.carrier -> other.carrier` commuting with the
    /// action of the generators (vertices and arrows) of `A`.
    pub(crate) fn bimodule_equations(&self, other: &AObject, sys: &HomSystem) -> Matrix {
        let field = self.carrier.field();
        let mut gens: Vec<Element> = (0..self.algebra.vertex_count()).map(|v| self.algebra.vertex(v)).collect();
        gens.extend((0..self.algebra.quiver().arrow_count()).map(|a| self.algebra.arrow(a)));
        let mut rows = Vec::new();
        for g in &gens {
            let mine = self.act(g);
            let theirs = other.act(g);
            for r in 0..self.carrier.dims().len() {
                let id_t = Matrix::identity(field, other.carrier.dims()[r]);
                let id_s = Matrix::identity(field, self.carrier.dims()[r]);
                rows.push(&sys.sandwich(r, theirs.block(r), &id_s) - &sys.sandwich(r, &id_t, mine.block(r)));
            }
        }
        let refs: Vec<&Matrix> = rows.iter().collect();
        Matrix::vstack(field, sys.vars(), &refs)
    }

    /// A basis of the `A`-linear `R`-module maps to `other`.
    pub fn bimodule_homs(&self, other: &AObject) -> Result<Vec<RepMap>> {
        if self.algebra != other.algebra || self.target_base() != other.target_base() {
            return Err(Error::BaseMismatch);
        }
        let sys = HomSystem::new(&self.carrier, &other.carrier);
        let extra = self.bimodule_equations(other, &sys);
        let rhs = vec![self.carrier.field().zero(); extra.rows()];
        let (_, kernel) = sys.solve_affine(&extra, &rhs).expect("homogeneous systems are consistent");
        Ok(kernel)
    }

    /// Isomorphism of A-objects.
    pub fn isomorphic_to(&self, other: &AObject, cfg: &SearchConfig) -> Result<IsoVerdict> {
        if self.carrier.dims() != other.carrier.dims() {
            return Ok(IsoVerdict::NotIsomorphic);
        }
        let homs = self.bimodule_homs(other)?;
        Ok(find_invertible_in(&self.carrier, &other.carrier, &homs, cfg))
    }
}

//! Pairs `(Z, phi)` of a flat A-object and an identification of its reduction
//! with a fixed collection, and their equivalence.

use super::AObject;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar, SearchConfig};
use crate::rep::{factor_through_epi, find_invertible_affine, HomSystem, IsoVerdict, Rep, RepMap};

#[derive(Clone, Debug)]
pub struct DeformationElement {
    obj: AObject,
    sigma: Vec<Rep>,
    /// `phi[i]: (q^* Z)_i -> sigma_i`, an isomorphism.
    phi: Vec<RepMap>,
}

impl DeformationElement {
    pub fn new(obj: AObject, sigma: Vec<Rep>, phi: Vec<RepMap>) -> Result<DeformationElement> {
        let n = obj.algebra().vertex_count();
        if sigma.len() != n || phi.len() != n {
            return Err(Error::InvalidDeformation(format!(
                "expected {n} modules and {n} identifications"
            )));
        }
        if let super::FlatVerdict::NotFlat { simple, .. } = obj.flatness()? {
            return Err(Error::NotFlat { simple });
        }
        for (i, f) in phi.iter().enumerate() {
            let reduced = obj.reduction(i);
            if f.source() != reduced.target() || f.target() != &sigma[i] {
                return Err(Error::InvalidDeformation(format!(
                    "identification {i} must map the reduction at {i} to sigma_{i}"
                )));
            }
            if !f.is_iso() {
                return Err(Error::InvalidDeformation(format!("identification {i} is not invertible")));
            }
        }
        Ok(DeformationElement { obj, sigma, phi })
    }

    /// Builds `phi` from maps `Z_i -> sigma_i` that kill the radical part.
    pub fn from_component_maps(obj: AObject, sigma: Vec<Rep>, maps: Vec<RepMap>) -> Result<DeformationElement> {
        let phi = maps
            .iter()
            .enumerate()
            .map(|(i, f)| {
                factor_through_epi(&obj.reduction(i), f).map_err(|_| {
                    Error::InvalidDeformation(format!("map {i} does not vanish on the radical part"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        DeformationElement::new(obj, sigma, phi)
    }

    pub fn object(&self) -> &AObject {
        &self.obj
    }

    pub fn sigma(&self) -> &[Rep] {
        &self.sigma
    }

    pub fn phi(&self) -> &[RepMap] {
        &self.phi
    }
}

#[derive(Clone, Debug)]
pub enum Equivalence {
    /// An A-linear isomorphism compatible with the identifications.
    Equivalent(RepMap),
    NotEquivalent,
    /// The search budget ran out before an invertible solution was found.
    ProbablyNot,
}

impl Equivalence {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Equivalence::Equivalent(_))
    }
}

/// Looks for `psi: Z -> Z'`, A-linear and invertible, with
/// `phi'_i o q^*(psi)_i = phi_i` for every vertex `i`.
pub fn deformations_equivalent(
    d1: &DeformationElement,
    d2: &DeformationElement,
    cfg: &SearchConfig,
) -> Result<Equivalence> {
    let (z1, z2) = (&d1.obj, &d2.obj);
    if z1.algebra() != z2.algebra() || z1.target_base() != z2.target_base() || d1.sigma != d2.sigma {
        return Err(Error::BaseMismatch);
    }
    if z1.carrier().dims() != z2.carrier().dims() {
        return Ok(Equivalence::NotEquivalent);
    }
    let field = z1.carrier().field();
    let sys = HomSystem::new(z1.carrier(), z2.carrier());
    let mut rows = vec![z1.bimodule_equations(z2, &sys)];
    let mut rhs: Vec<Scalar> = vec![field.zero(); rows[0].rows()];
    for i in 0..z1.algebra().vertex_count() {
        let red1 = z1.reduction(i);
        let red2 = z2.reduction(i);
        for r in 0..z1.carrier().dims().len() {
            let section = red1
                .block(r)
                .right_inverse()
                .ok_or_else(|| Error::InvalidDeformation("reduction is not surjective".into()))?;
            let right = &z1.inclusion(i).block(r).clone() * &section;
            let left = &(d2.phi[i].block(r) * red2.block(r)) * z2.projection(i).block(r);
            rows.push(sys.sandwich(r, &left, &right));
            rhs.extend(d1.phi[i].block(r).entries().iter().cloned());
        }
    }
    let refs: Vec<&Matrix> = rows.iter().collect();
    let extra = Matrix::vstack(field, sys.vars(), &refs);
    let Some((particular, kernel)) = sys.solve_affine(&extra, &rhs) else {
        return Ok(Equivalence::NotEquivalent);
    };
    Ok(match find_invertible_affine(&particular, &kernel, cfg) {
        IsoVerdict::Isomorphic(f) => Equivalence::Equivalent(f),
        IsoVerdict::NotIsomorphic => Equivalence::NotEquivalent,
        IsoVerdict::ProbablyNot => Equivalence::ProbablyNot,
    })
}

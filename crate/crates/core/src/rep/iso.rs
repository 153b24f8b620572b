//! Isomorphism tests: look for an invertible element in a space of maps.

use super::hom::hom_space;
use super::{Rep, RepMap};
use crate::error::Result;
use crate::linalg::{BlockFamily, InvertibleSearch, Matrix, SearchConfig};

#[derive(Clone, Debug, PartialEq)]
pub enum IsoVerdict {
    /// With an explicit isomorphism.
    Isomorphic(RepMap),
    NotIsomorphic,
    /// The search budget ran out; no isomorphism was found.
    ProbablyNot,
}

impl IsoVerdict {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoVerdict::Isomorphic(_))
    }
}

/// Looks for an invertible member of `span(maps)`, all maps `m -> n`.
pub fn find_invertible_in(m: &Rep, n: &Rep, maps: &[RepMap], cfg: &SearchConfig) -> IsoVerdict {
    find_invertible_affine(&RepMap::zero(m, n), maps, cfg)
}

/// Looks for an invertible member of `base + span(directions)`.
pub fn find_invertible_affine(base: &RepMap, directions: &[RepMap], cfg: &SearchConfig) -> IsoVerdict {
    if base.source().dims() != base.target().dims() {
        return IsoVerdict::NotIsomorphic;
    }
    let family = BlockFamily::affine(
        base.field(),
        base.blocks().to_vec(),
        directions.iter().map(|d| d.blocks().to_vec()).collect(),
    );
    match family.search(cfg) {
        InvertibleSearch::Found(c) => {
            let blocks: Vec<Matrix> = family.evaluate(&c);
            let f = RepMap::new_unchecked(base.source().clone(), base.target().clone(), blocks)
                .expect("same shapes as the family");
            IsoVerdict::Isomorphic(f)
        }
        InvertibleSearch::Absent => IsoVerdict::NotIsomorphic,
        InvertibleSearch::Undecided => IsoVerdict::ProbablyNot,
    }
}

pub fn is_isomorphic(m: &Rep, n: &Rep, cfg: &SearchConfig) -> Result<IsoVerdict> {
    if m.base() != n.base() {
        return Err(crate::Error::BaseMismatch);
    }
    if m.dims() != n.dims() {
        return Ok(IsoVerdict::NotIsomorphic);
    }
    let basis = hom_space(m, n)?;
    Ok(find_invertible_in(m, n, &basis, cfg))
}

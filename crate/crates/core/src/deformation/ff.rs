//! Whether `- (x)_A Z` is fully faithful on finite dimensional modules,
//! tested on the simples: it must preserve their Hom spaces and be injective
//! on `Ext^1` between them.

use serde::Serialize;

use crate::aobjects::{tensor_apply, tensor_map, AObject, FlatVerdict};
use crate::error::{Error, Result};
use crate::homology::{ext1, ShortExact};
use crate::linalg::Matrix;
use crate::rep::{hom_dim, ModuleBase, Rep};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum FfVerdict {
    FullyFaithful,
    /// `Hom(T S_i, T S_j)` has the wrong dimension.
    FailsHom { i: usize, j: usize, dim: usize },
    /// `Ext^1(S_i, S_j) -> Ext^1(T S_i, T S_j)` has a kernel.
    FailsExtInjectivity { i: usize, j: usize, ext_dim: usize, rank: usize },
}

impl FfVerdict {
    pub fn is_fully_faithful(&self) -> bool {
        matches!(self, FfVerdict::FullyFaithful)
    }
}

pub fn ff_criterion(z: &AObject) -> Result<FfVerdict> {
    if let FlatVerdict::NotFlat { simple, .. } = z.flatness()? {
        return Err(Error::NotFlat { simple });
    }
    let a = z.algebra();
    let base = ModuleBase::Algebra(a.clone());
    let n = a.vertex_count();
    let simples: Vec<Rep> = (0..n).map(|i| Rep::simple(base.clone(), i)).collect();
    let tensored = simples.iter().map(|s| tensor_apply(z, s)).collect::<Result<Vec<_>>>()?;
    for i in 0..n {
        for j in 0..n {
            let dim = hom_dim(tensored[i].rep(), tensored[j].rep())?;
            if dim != usize::from(i == j) {
                return Ok(FfVerdict::FailsHom { i, j, dim });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            let source = ext1(&simples[i], &simples[j])?;
            if source.dim() == 0 {
                continue;
            }
            let target = ext1(tensored[i].rep(), tensored[j].rep())?;
            let mut images = Vec::with_capacity(source.dim());
            for k in 0..source.dim() {
                let ses = source.extension(&source.basis_class(k))?;
                let middle = tensor_apply(z, ses.middle())?;
                let incl = tensor_map(z, ses.inclusion(), &tensored[j], &middle)?;
                let proj = tensor_map(z, ses.projection(), &middle, &tensored[i])?;
                let image = ShortExact::new(incl, proj)?;
                images.push(target.class_of(&image)?);
            }
            let rank = Matrix::from_columns(a.field(), target.dim(), &images).rank();
            if rank != source.dim() {
                return Ok(FfVerdict::FailsExtInjectivity {
                    i,
                    j,
                    ext_dim: source.dim(),
                    rank,
                });
            }
        }
    }
    Ok(FfVerdict::FullyFaithful)
}

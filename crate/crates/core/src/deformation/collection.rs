use crate::error::{Error, Result};
use crate::rep::{hom_dim, ModuleBase, Rep};

/// An ordered tuple `(Z_1, ..., Z_n)` of nonzero modules over one base.
#[derive(Clone, Debug, PartialEq)]
pub struct Collection {
    base: ModuleBase,
    objects: Vec<Rep>,
}

impl Collection {
    pub fn new(objects: Vec<Rep>) -> Result<Collection> {
        let first = objects
            .first()
            .ok_or_else(|| Error::InvalidCollection("a collection needs at least one object".into()))?;
        let base = first.base().clone();
        for (i, z) in objects.iter().enumerate() {
            if z.base() != &base {
                return Err(Error::InvalidCollection(format!("object {i} lives over a different base")));
            }
            if z.is_zero() {
                return Err(Error::InvalidCollection(format!("object {i} is zero")));
            }
        }
        Ok(Collection { base, objects })
    }

    pub fn base(&self) -> &ModuleBase {
        &self.base
    }

    pub fn objects(&self) -> &[Rep] {
        &self.objects
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    /// `dim Hom(Z_i, Z_j)` for all pairs.
    pub fn hom_dims(&self) -> Result<Vec<Vec<usize>>> {
        self.objects
            .iter()
            .map(|a| self.objects.iter().map(|b| hom_dim(a, b)).collect())
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimpleVerdict {
    Simple,
    /// The first pair (row-major) with `dim Hom(Z_i, Z_j) != delta_ij`.
    Fails { i: usize, j: usize, dim: usize },
}

impl SimpleVerdict {
    pub fn is_simple(&self) -> bool {
        matches!(self, SimpleVerdict::Simple)
    }
}

pub fn is_simple_collection(sigma: &Collection) -> Result<SimpleVerdict> {
    let dims = sigma.hom_dims()?;
    for (i, row) in dims.iter().enumerate() {
        for (j, &d) in row.iter().enumerate() {
            if d != usize::from(i == j) {
                return Ok(SimpleVerdict::Fails { i, j, dim: d });
            }
        }
    }
    Ok(SimpleVerdict::Simple)
}

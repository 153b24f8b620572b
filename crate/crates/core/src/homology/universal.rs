//! Universal extensions by simples and the tower they generate.

use super::ext::{ext1, Ext1Space};
use super::ses::ShortExact;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};
use crate::rep::{direct_sum, hom_dim, hom_space, Rep, RepMap};

/// `0 -> T -> p~ -> p -> 0` with `T = sum_i S_i^{dim Ext^1(p, S_i)}`.
#[derive(Clone, Debug)]
pub struct UniversalExtension {
    pub ses: ShortExact,
    /// For every summand of `T`: (index into the simples, basis class of `Ext^1(p, S_i)`).
    pub summands: Vec<(usize, usize)>,
    /// `dim Ext^1(p, S_i)` per simple.
    pub ext_dims: Vec<usize>,
    /// Rank of the connecting map `Hom(T, S_i) -> Ext^1(p, S_i)` per simple.
    pub connecting_ranks: Vec<usize>,
    /// `dim Hom(T, S_i)` per simple.
    pub hom_dims: Vec<usize>,
}

impl UniversalExtension {
    /// The connecting maps are isomorphisms for every simple.
    pub fn is_universal(&self) -> bool {
        (0..self.ext_dims.len())
            .all(|i| self.connecting_ranks[i] == self.ext_dims[i] && self.hom_dims[i] == self.ext_dims[i])
    }

    pub fn extended(&self) -> &Rep {
        self.ses.middle()
    }
}

pub fn universal_extension(p: &Rep, simples: &[Rep]) -> Result<UniversalExtension> {
    let spaces: Vec<Ext1Space> = simples.iter().map(|s| ext1(p, s)).collect::<Result<_>>()?;
    let ext_dims: Vec<usize> = spaces.iter().map(|e| e.dim()).collect();
    let mut summands = Vec::new();
    for (i, d) in ext_dims.iter().enumerate() {
        summands.extend((0..*d).map(|j| (i, j)));
    }
    if summands.is_empty() {
        let zero = Rep::zero(p.base().clone());
        return Ok(UniversalExtension {
            ses: ShortExact::split(p, &zero)?,
            summands,
            hom_dims: vec![0; simples.len()],
            connecting_ranks: vec![0; simples.len()],
            ext_dims,
        });
    }
    let parts: Vec<&Rep> = summands.iter().map(|&(i, _)| &simples[i]).collect();
    let t = direct_sum(&parts)?;
    let big = ext1(p, &t.rep)?;
    let mut class = big.zero_class();
    for (k, &(i, j)) in summands.iter().enumerate() {
        let piece = spaces[i].pushforward(&t.injections[k], &spaces[i].basis_class(j), &big)?;
        class = class.iter().zip(&piece).map(|(a, b)| a + b).collect();
    }
    let ses = big.extension(&class)?;
    let mut connecting_ranks = Vec::new();
    let mut hom_dims = Vec::new();
    for (i, s) in simples.iter().enumerate() {
        let homs = hom_space(&t.rep, s)?;
        hom_dims.push(homs.len());
        let images: Vec<Vec<Scalar>> = homs
            .iter()
            .map(|f| big.pushforward(f, &class, &spaces[i]))
            .collect::<Result<_>>()?;
        let rank = if images.is_empty() || ext_dims[i] == 0 {
            0
        } else {
            Matrix::from_columns(p.field(), ext_dims[i], &images).rank()
        };
        connecting_ranks.push(rank);
    }
    Ok(UniversalExtension {
        ses,
        summands,
        ext_dims,
        connecting_ranks,
        hom_dims,
    })
}

/// An endomorphism algebra with a basis of maps and structure constants.
#[derive(Clone, Debug)]
pub struct EndAlgebra {
    pub basis: Vec<RepMap>,
    /// `table[i][j]` are the coordinates of `basis[i] * basis[j]` (`basis[i]` after `basis[j]`).
    pub table: Vec<Vec<Vec<Scalar>>>,
    pub unit: Vec<Scalar>,
}

impl EndAlgebra {
    pub fn of(m: &Rep) -> Result<EndAlgebra> {
        let basis = hom_space(m, m)?;
        let columns: Vec<Vec<Scalar>> = basis.iter().map(|f| f.flatten()).collect();
        let ambient = columns.first().map_or(0, |c| c.len());
        let frame = Matrix::from_columns(m.field(), ambient, &columns);
        let coords = |f: &RepMap| -> Vec<Scalar> {
            frame
                .solve(&Matrix::column_vector(m.field(), &f.flatten()))
                .expect("shapes")
                .expect("endomorphisms lie in the span of a basis")
                .particular
                .column(0)
        };
        let table = basis
            .iter()
            .map(|f| {
                basis
                    .iter()
                    .map(|g| coords(&f.after(g).expect("endomorphisms compose")))
                    .collect()
            })
            .collect();
        let unit = coords(&RepMap::identity(m));
        Ok(EndAlgebra { basis, table, unit })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let field = self.unit.first().map(|c| c.field());
        let mut out: Vec<Scalar> = match field {
            Some(f) => vec![f.zero(); n],
            None => return Vec::new(),
        };
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.table[i][j].iter().enumerate() {
                    out[k] = &out[k] + &(&ab * c);
                }
            }
        }
        out
    }
}

/// A level of the tower `P_0 = sum sigma`, `P_{m+1}` = universal extension of `P_m`.
#[derive(Clone, Debug)]
pub struct DfTruncation {
    pub levels: Vec<Rep>,
    pub end: EndAlgebra,
}

impl DfTruncation {
    pub fn module(&self) -> &Rep {
        self.levels.last().expect("at least the base level")
    }
}

/// Builds the tower up to level `l` and the endomorphism algebra of its top.
pub fn df_truncation_algebra(sigma: &[Rep], l: usize, dim_cap: usize) -> Result<DfTruncation> {
    if sigma.is_empty() {
        return Err(Error::Precondition("empty collection".into()));
    }
    for (i, a) in sigma.iter().enumerate() {
        for (j, b) in sigma.iter().enumerate() {
            let d = hom_dim(a, b)?;
            if d != usize::from(i == j) {
                return Err(Error::Precondition(format!(
                    "dim Hom(sigma_{i}, sigma_{j}) = {d}; the collection must be simple"
                )));
            }
        }
    }
    let refs: Vec<&Rep> = sigma.iter().collect();
    let mut current = direct_sum(&refs)?.rep;
    let mut levels = vec![current.clone()];
    for _ in 0..l {
        let u = universal_extension(&current, sigma)?;
        current = u.extended().clone();
        if current.dim() > dim_cap {
            return Err(Error::BudgetExceeded(format!(
                "tower module has dimension {} above the cap {dim_cap}",
                current.dim()
            )));
        }
        levels.push(current.clone());
    }
    let end = EndAlgebra::of(&current)?;
    Ok(DfTruncation { levels, end })
}

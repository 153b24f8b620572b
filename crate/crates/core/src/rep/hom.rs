//! Hom spaces between representations, as kernels of the intertwiner equations.

use super::{Rep, RepMap};
use crate::error::Result;
use crate::linalg::{Matrix, Scalar};

/// The unknowns of a map `m -> n`: block `v` is `n.dims[v] x m.dims[v]`,
/// flattened row-major and concatenated vertex by vertex.
#[derive(Clone, Debug)]
pub struct HomSystem {
    source: Rep,
    target: Rep,
    offsets: Vec<usize>,
    vars: usize,
}

impl HomSystem {
    pub fn new(source: &Rep, target: &Rep) -> HomSystem {
        let mut offsets = Vec::new();
        let mut acc = 0;
        for (s, t) in source.dims().iter().zip(target.dims()) {
            offsets.push(acc);
            acc += s * t;
        }
        HomSystem {
            source: source.clone(),
            target: target.clone(),
            offsets,
            vars: acc,
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn source(&self) -> &Rep {
        &self.source
    }

    pub fn target(&self) -> &Rep {
        &self.target
    }

    /// Coefficient matrix of `f -> left * f_v * right`, vectorised row-major.
    pub fn sandwich(&self, v: usize, left: &Matrix, right: &Matrix) -> Matrix {
        let field = self.source.field();
        let (t, s) = (self.target.dims()[v], self.source.dims()[v]);
        debug_assert_eq!(left.cols(), t);
        debug_assert_eq!(right.rows(), s);
        let local = left.kronecker(&right.transpose());
        let mut out = Matrix::zeros(field, left.rows() * right.cols(), self.vars);
        out.set_block(0, self.offsets[v], &local);
        out
    }

    /// Rows expressing `N_a f_v - f_u M_a = 0` for every arrow `a: u -> v`.
    pub fn intertwining(&self) -> Matrix {
        let field = self.source.field();
        let q = self.source.quiver();
        let mut parts = Vec::new();
        for a in 0..q.arrow_count() {
            let arr = q.arrow(a);
            let (u, v) = (arr.source, arr.target);
            let lhs = self.sandwich(
                v,
                self.target.map(a),
                &Matrix::identity(field, self.source.dims()[v]),
            );
            let rhs = self.sandwich(
                u,
                &Matrix::identity(field, self.target.dims()[u]),
                self.source.map(a),
            );
            parts.push(&lhs - &rhs);
        }
        let refs: Vec<&Matrix> = parts.iter().collect();
        Matrix::vstack(field, self.vars, &refs)
    }

    pub fn decode(&self, x: &[Scalar]) -> RepMap {
        let field = self.source.field();
        let blocks = (0..self.offsets.len())
            .map(|v| {
                let (t, s) = (self.target.dims()[v], self.source.dims()[v]);
                let data = x[self.offsets[v]..self.offsets[v] + t * s].to_vec();
                Matrix::from_row_major(field, t, s, data).expect("block shape")
            })
            .collect();
        RepMap::new_unchecked(self.source.clone(), self.target.clone(), blocks).expect("block shapes")
    }

    pub fn encode(&self, f: &RepMap) -> Vec<Scalar> {
        f.flatten()
    }

    /// Decodes every column of a kernel basis.
    pub fn decode_columns(&self, basis: &Matrix) -> Vec<RepMap> {
        (0..basis.cols()).map(|j| self.decode(&basis.column(j))).collect()
    }
}

/// A basis of `Hom(m, n)`.
pub fn hom_space(m: &Rep, n: &Rep) -> Result<Vec<RepMap>> {
    if m.base() != n.base() {
        return Err(crate::Error::BaseMismatch);
    }
    let sys = HomSystem::new(m, n);
    let kernel = sys.intertwining().kernel_basis();
    Ok(sys.decode_columns(&kernel))
}

pub fn hom_dim(m: &Rep, n: &Rep) -> Result<usize> {
    if m.base() != n.base() {
        return Err(crate::Error::BaseMismatch);
    }
    let sys = HomSystem::new(m, n);
    Ok(sys.vars() - sys.intertwining().rank())
}

impl HomSystem {
    /// All maps satisfying the intertwining equations together with the affine
    /// constraints `extra * vec(f) = rhs`: a particular solution and a basis of
    /// the homogeneous solutions. `None` when inconsistent.
    pub fn solve_affine(&self, extra: &Matrix, rhs: &[Scalar]) -> Option<(RepMap, Vec<RepMap>)> {
        let field = self.source.field();
        let eq = self.intertwining();
        let a = Matrix::vstack(field, self.vars, &[&eq, extra]);
        let mut b = vec![field.zero(); eq.rows()];
        b.extend_from_slice(rhs);
        let sol = a
            .solve(&Matrix::column_vector(field, &b))
            .expect("consistent shapes")?;
        let particular = self.decode(&sol.particular.column(0));
        Some((particular, self.decode_columns(&sol.kernel)))
    }
}

//! Finitely generated projective modules `e_{i_1} A + ... + e_{i_r} A` with
//! an explicit path basis, and projective covers.

use std::sync::Arc;

use super::ops::radical;
use super::{ModuleBase, Rep, RepMap};
use crate::algebra::{Element, PathAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{complement_columns, Matrix, Scalar};

/// A direct sum of indecomposable projectives, one summand `e_i A` per entry
/// of `summands`. The component at `v` has one coordinate for every pair
/// (summand `s`, basis path from `v` to `summands[s]`).
#[derive(Clone, Debug)]
pub struct ProjectiveModule {
    algebra: Arc<PathAlgebra>,
    summands: Vec<usize>,
    rep: Rep,
    layout: Vec<Vec<(usize, usize)>>,
}

impl ProjectiveModule {
    pub fn new(algebra: &Arc<PathAlgebra>, summands: Vec<usize>) -> ProjectiveModule {
        let field = algebra.field();
        let q = algebra.quiver();
        let n = q.vertex_count();
        let mut layout: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (s, &i) in summands.iter().enumerate() {
            for (b, p) in algebra.basis().iter().enumerate() {
                if p.target() == i {
                    layout[p.source()].push((s, b));
                }
            }
        }
        let dims: Vec<usize> = layout.iter().map(|l| l.len()).collect();
        let maps = (0..q.arrow_count())
            .map(|a| {
                let arr = q.arrow(a);
                let (u, v) = (arr.source, arr.target);
                let arrow = algebra.arrow(a);
                let mut m = Matrix::zeros(field, dims[u], dims[v]);
                for (col, &(s, b)) in layout[v].iter().enumerate() {
                    let moved = algebra.mul(&algebra.basis_element(b), &arrow);
                    for (row, &(t, c)) in layout[u].iter().enumerate() {
                        if t == s {
                            m.set(row, col, moved[c].clone());
                        }
                    }
                }
                m
            })
            .collect();
        let rep = Rep::new_unchecked(ModuleBase::Algebra(algebra.clone()), dims, maps)
            .expect("projective shapes");
        ProjectiveModule {
            algebra: algebra.clone(),
            summands,
            rep,
            layout,
        }
    }

    pub fn algebra(&self) -> &Arc<PathAlgebra> {
        &self.algebra
    }

    pub fn rep(&self) -> &Rep {
        &self.rep
    }

    pub fn summands(&self) -> &[usize] {
        &self.summands
    }

    /// `(summand, basis path)` for each coordinate at `v`.
    pub fn layout(&self, v: usize) -> &[(usize, usize)] {
        &self.layout[v]
    }

    /// Vertex and coordinate of the generator `e_i` of summand `s`.
    pub fn generator(&self, s: usize) -> (usize, usize) {
        let i = self.summands[s];
        let e = self.algebra.vertex_index(i);
        let pos = self.layout[i]
            .iter()
            .position(|&(t, b)| t == s && b == e)
            .expect("generator is a basis path");
        (i, pos)
    }

    /// Splits a vector at `v` into one algebra element per summand.
    pub fn elements_of(&self, v: usize, coords: &[Scalar]) -> Vec<Element> {
        let mut out = vec![self.algebra.zero(); self.summands.len()];
        for (c, &(s, b)) in coords.iter().zip(&self.layout[v]) {
            out[s][b] = c.clone();
        }
        out
    }

    /// Inverse of `elements_of`; components outside `e_{i_s} A e_v` are dropped.
    pub fn coords_of(&self, v: usize, elements: &[Element]) -> Vec<Scalar> {
        self.layout[v].iter().map(|&(s, b)| elements[s][b].clone()).collect()
    }

    /// The unique map sending the generator of summand `s` to `images[s]`,
    /// a vector in `target`'s component at `summands[s]`.
    pub fn map_from_generators(&self, target: &Rep, images: &[Vec<Scalar>]) -> Result<RepMap> {
        if images.len() != self.summands.len() {
            return Err(Error::InvalidRepMap("one image per summand is required".into()));
        }
        let field = self.algebra.field();
        let basis = self.algebra.basis();
        let blocks = (0..self.layout.len())
            .map(|v| {
                let cols: Vec<Vec<Scalar>> = self.layout[v]
                    .iter()
                    .map(|&(s, b)| target.path_matrix(&basis[b]).mul_vec(&images[s]))
                    .collect();
                Matrix::from_columns(field, target.dims()[v], &cols)
            })
            .collect();
        RepMap::new(self.rep.clone(), target.clone(), blocks)
    }

    /// The map to another projective given by left multiplication:
    /// generator `s` goes to `(matrix[s][t])_t`, with `matrix[s][t]` in
    /// `e_{j_t} A e_{i_s}`.
    pub fn map_by_elements(&self, target: &ProjectiveModule, matrix: &[Vec<Element>]) -> Result<RepMap> {
        let images: Vec<Vec<Scalar>> = self
            .summands
            .iter()
            .zip(matrix)
            .map(|(&i, row)| target.coords_of(i, row))
            .collect();
        self.map_from_generators(&target.rep, &images)
    }
}

/// The indecomposable projective `e_i A`.
pub fn projective(algebra: &Arc<PathAlgebra>, i: usize) -> Rep {
    ProjectiveModule::new(algebra, vec![i]).rep
}

/// A projective cover `P -> m`, generated by lifts of a basis of the top.
pub fn projective_cover(m: &Rep) -> Result<(ProjectiveModule, RepMap)> {
    let algebra = m.base().require_algebra("projective cover")?.clone();
    let rad = radical(m);
    let mut summands = Vec::new();
    let mut images = Vec::new();
    for v in 0..m.dims().len() {
        let full = Matrix::identity(m.field(), m.dims()[v]);
        let gens = complement_columns(rad.block(v), &full);
        for j in 0..gens.cols() {
            summands.push(v);
            images.push(gens.column(j));
        }
    }
    let p = ProjectiveModule::new(&algebra, summands);
    let cover = p.map_from_generators(m, &images)?;
    Ok((p, cover))
}

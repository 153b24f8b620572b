//! Flat A-objects in normal form and the enumeration of deformation elements
//! over a finite field.
//!
//! A flat A-object reducing to `sigma` is, as a left A-module at every target
//! vertex `r`, the free module `X_r = sum_i A e_i (x) (Z_i)_r`. A target arrow
//! `t: r -> s` acts by an A-linear map `X_s -> X_r`, i.e. right multiplication
//! by a matrix of algebra elements: from the `i`-th to the `j`-th summand it is
//! `sum_y R_y (x) C_{t,y}` over basis paths `y` from `j` to `i`. The trivial
//! path term is pinned to the arrow matrix of `Z_i`, which fixes the
//! identification of the reduction with `sigma`. The free parameters are the
//! matrices `C_{t,y}` for nontrivial `y`.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use super::collection::Collection;
use crate::algebra::PathAlgebra;
use crate::aobjects::{AObject, DeformationElement};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar, SearchConfig};
use crate::rep::{Rep, RepMap};

/// A block of free parameters: `C_{t,y}` for a target arrow `t` and a
/// nontrivial basis path `y` from `j` to `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamBlock {
    pub arrow: usize,
    pub path: usize,
    /// Summand of the source `X_s`.
    pub i: usize,
    /// Summand of the target `X_r`.
    pub j: usize,
    pub rows: usize,
    pub cols: usize,
    pub offset: usize,
}

#[derive(Clone, Debug)]
pub struct LaudalSpace {
    algebra: Arc<PathAlgebra>,
    sigma: Collection,
    /// Basis indices of the paths starting at `i`, i.e. a basis of `A e_i`.
    left_bases: Vec<Vec<usize>>,
    /// `offsets[r][i]`: first coordinate of the `i`-th summand of `X_r`.
    offsets: Vec<Vec<usize>>,
    dims: Vec<usize>,
    blocks: Vec<ParamBlock>,
    param_count: usize,
}

impl LaudalSpace {
    pub fn new(algebra: Arc<PathAlgebra>, sigma: Collection) -> Result<LaudalSpace> {
        let n = algebra.vertex_count();
        if sigma.len() != n {
            return Err(Error::InvalidCollection(format!(
                "the algebra has {n} vertices but the collection has {} objects",
                sigma.len()
            )));
        }
        if algebra.field() != sigma.objects()[0].field() {
            return Err(Error::FieldMismatch(
                algebra.field().to_string(),
                sigma.objects()[0].field().to_string(),
            ));
        }
        let left_bases: Vec<Vec<usize>> = (0..n)
            .map(|i| (0..algebra.dim()).filter(|&b| algebra.basis()[b].source() == i).collect())
            .collect();
        let target_vertices = sigma.base().vertex_count();
        let mut offsets = Vec::new();
        let mut dims = Vec::new();
        for r in 0..target_vertices {
            let mut acc = 0;
            let mut row = Vec::new();
            for (i, z) in sigma.objects().iter().enumerate() {
                row.push(acc);
                acc += left_bases[i].len() * z.dims()[r];
            }
            offsets.push(row);
            dims.push(acc);
        }
        let mut blocks = Vec::new();
        let mut offset = 0;
        let tq = sigma.base().quiver().clone();
        for (t, arr) in tq.arrows().iter().enumerate() {
            let (r, s) = (arr.source, arr.target);
            for (y, path) in algebra.basis().iter().enumerate() {
                if path.is_trivial() {
                    continue;
                }
                let (j, i) = (path.source(), path.target());
                let rows = sigma.objects()[j].dims()[r];
                let cols = sigma.objects()[i].dims()[s];
                if rows * cols == 0 {
                    continue;
                }
                blocks.push(ParamBlock {
                    arrow: t,
                    path: y,
                    i,
                    j,
                    rows,
                    cols,
                    offset,
                });
                offset += rows * cols;
            }
        }
        Ok(LaudalSpace {
            algebra,
            sigma,
            left_bases,
            offsets,
            dims,
            blocks,
            param_count: offset,
        })
    }

    pub fn algebra(&self) -> &Arc<PathAlgebra> {
        &self.algebra
    }

    pub fn sigma(&self) -> &Collection {
        &self.sigma
    }

    pub fn param_count(&self) -> usize {
        self.param_count
    }

    pub fn blocks(&self) -> &[ParamBlock] {
        &self.blocks
    }

    /// Dimensions of the carrier at the target vertices.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    fn field(&self) -> Field {
        self.algebra.field()
    }

    /// Right multiplication by `y`, restricted to `A e_i -> A e_j`.
    fn right_block(&self, y: usize, i: usize, j: usize) -> Matrix {
        let full = self.algebra.right_matrix(&self.algebra.basis_element(y));
        Matrix::from_fn(self.field(), self.left_bases[j].len(), self.left_bases[i].len(), |a, b| {
            full.get(self.left_bases[j][a], self.left_bases[i][b]).clone()
        })
    }

    /// Left multiplication by the basis element `b`, restricted to `A e_i`.
    fn left_block(&self, b: usize, i: usize) -> Matrix {
        let full = self.algebra.left_matrix(&self.algebra.basis_element(b));
        let idx = &self.left_bases[i];
        Matrix::from_fn(self.field(), idx.len(), idx.len(), |a, c| full.get(idx[a], idx[c]).clone())
    }

    /// The arrow matrices of the carrier for a parameter vector.
    pub fn arrow_matrices(&self, params: &[Scalar]) -> Result<Vec<Matrix>> {
        if params.len() != self.param_count {
            return Err(Error::DimensionMismatch(format!(
                "expected {} parameters, got {}",
                self.param_count,
                params.len()
            )));
        }
        let field = self.field();
        let tq = self.sigma.base().quiver().clone();
        let mut out = Vec::with_capacity(tq.arrow_count());
        for (t, arr) in tq.arrows().iter().enumerate() {
            let (r, s) = (arr.source, arr.target);
            let mut f = Matrix::zeros(field, self.dims[r], self.dims[s]);
            for (i, z) in self.sigma.objects().iter().enumerate() {
                let e = self.algebra.vertex_index(i);
                let term = self.right_block(e, i, i).kronecker(z.map(t));
                add_block(&mut f, self.offsets[r][i], self.offsets[s][i], &term);
            }
            for blk in self.blocks.iter().filter(|b| b.arrow == t) {
                let c = Matrix::from_row_major(
                    field,
                    blk.rows,
                    blk.cols,
                    params[blk.offset..blk.offset + blk.rows * blk.cols].to_vec(),
                )?;
                let term = self.right_block(blk.path, blk.i, blk.j).kronecker(&c);
                add_block(&mut f, self.offsets[r][blk.j], self.offsets[s][blk.i], &term);
            }
            out.push(f);
        }
        Ok(out)
    }

    /// Reads the parameters back from A-linear arrow matrices.
    fn params_of(&self, maps: &[Matrix]) -> Vec<Scalar> {
        let mut out = vec![self.field().zero(); self.param_count];
        let tq = self.sigma.base().quiver();
        for blk in &self.blocks {
            let arr = tq.arrow(blk.arrow);
            let (r, s) = (arr.source, arr.target);
            let f = &maps[blk.arrow];
            // The image of e_i (x) v has its y-coordinate equal to C_{t,y} v.
            let zr = self.sigma.objects()[blk.j].dims()[r];
            let zs = self.sigma.objects()[blk.i].dims()[s];
            let e = self.algebra.vertex_index(blk.i);
            let col_pos = self.left_bases[blk.i].iter().position(|&b| b == e).expect("e_i lies in A e_i");
            let row_pos = self.left_bases[blk.j]
                .iter()
                .position(|&b| b == blk.path)
                .expect("y lies in A e_j");
            for a in 0..blk.rows {
                for c in 0..blk.cols {
                    let row = self.offsets[r][blk.j] + row_pos * zr + a;
                    let col = self.offsets[s][blk.i] + col_pos * zs + c;
                    out[blk.offset + a * blk.cols + c] = f.get(row, col).clone();
                }
            }
        }
        out
    }

    /// The carrier, or `None` when the relations of the target fail.
    pub fn carrier(&self, params: &[Scalar]) -> Result<Option<Rep>> {
        let maps = self.arrow_matrices(params)?;
        let rep = Rep::new_unchecked(self.sigma.base().clone(), self.dims.clone(), maps)?;
        Ok(if rep.violated_relation().is_some() { None } else { Some(rep) })
    }

    /// The A-object of a parameter vector satisfying the target relations.
    pub fn object(&self, params: &[Scalar]) -> Result<AObject> {
        let carrier = self
            .carrier(params)?
            .ok_or_else(|| Error::InvalidAObject("parameters violate a relation of the target".into()))?;
        let field = self.field();
        let rho = (0..self.algebra.dim())
            .map(|b| {
                let blocks = (0..self.dims.len())
                    .map(|r| {
                        let mut m = Matrix::zeros(field, self.dims[r], self.dims[r]);
                        for (i, z) in self.sigma.objects().iter().enumerate() {
                            let term = self.left_block(b, i).kronecker(&Matrix::identity(field, z.dims()[r]));
                            add_block(&mut m, self.offsets[r][i], self.offsets[r][i], &term);
                        }
                        m
                    })
                    .collect();
                RepMap::new_unchecked(carrier.clone(), carrier.clone(), blocks)
            })
            .collect::<Result<Vec<_>>>()?;
        AObject::new(self.algebra.clone(), carrier, rho)
    }

    /// The object with the canonical identification of its reduction.
    pub fn element(&self, params: &[Scalar]) -> Result<DeformationElement> {
        let obj = self.object(params)?;
        let field = self.field();
        let maps = (0..self.sigma.len())
            .map(|i| {
                let z = &self.sigma.objects()[i];
                let e = self.algebra.vertex_index(i);
                let pos = self.left_bases[i].iter().position(|&b| b == e).expect("e_i lies in A e_i");
                let incl = obj.inclusion(i);
                let blocks = (0..self.dims.len())
                    .map(|r| {
                        let d = z.dims()[r];
                        let start = self.offsets[r][i] + pos * d;
                        let select = Matrix::from_fn(field, d, self.dims[r], |a, c| {
                            if c == start + a {
                                field.one()
                            } else {
                                field.zero()
                            }
                        });
                        &select * incl.block(r)
                    })
                    .collect();
                RepMap::new(obj.component(i).clone(), z.clone(), blocks)
            })
            .collect::<Result<Vec<_>>>()?;
        DeformationElement::from_component_maps(obj, self.sigma.objects().to_vec(), maps)
    }

    /// Elementary gauge transformations `1 + R_y (x) E_{ab}` at each target
    /// vertex, as (vertex, matrix, inverse).
    fn generators(&self) -> Vec<(usize, Matrix, Matrix)> {
        let field = self.field();
        let mut out = Vec::new();
        for r in 0..self.dims.len() {
            for (y, path) in self.algebra.basis().iter().enumerate() {
                if path.is_trivial() {
                    continue;
                }
                let (j, i) = (path.source(), path.target());
                let rows = self.sigma.objects()[j].dims()[r];
                let cols = self.sigma.objects()[i].dims()[r];
                let ry = self.right_block(y, i, j);
                for a in 0..rows {
                    for c in 0..cols {
                        let mut unit = Matrix::zeros(field, rows, cols);
                        unit.set(a, c, field.one());
                        let mut g = Matrix::identity(field, self.dims[r]);
                        add_block(&mut g, self.offsets[r][j], self.offsets[r][i], &ry.kronecker(&unit));
                        let inv = g.inverse().expect("unipotent");
                        out.push((r, g, inv));
                    }
                }
            }
        }
        out
    }

    /// `F_t -> g_r F_t g_s^{-1}` for a generator living at vertex `v`.
    fn act(&self, gen: &(usize, Matrix, Matrix), maps: &[Matrix]) -> Vec<Matrix> {
        let (v, g, inv) = gen;
        let tq = self.sigma.base().quiver();
        maps.iter()
            .enumerate()
            .map(|(t, f)| {
                let arr = tq.arrow(t);
                let mut out = f.clone();
                if arr.source == *v {
                    out = g * &out;
                }
                if arr.target == *v {
                    out = &out * inv;
                }
                out
            })
            .collect()
    }
}

fn add_block(target: &mut Matrix, row: usize, col: usize, block: &Matrix) {
    for a in 0..block.rows() {
        for c in 0..block.cols() {
            let v = target.get(row + a, col + c) + block.get(a, c);
            target.set(row + a, col + c, v);
        }
    }
}

/// An equivalence class of deformations: a representative parameter vector
/// and the number of parameter vectors in its class.
#[derive(Clone, Debug)]
pub struct Orbit {
    pub representative: Vec<Scalar>,
    pub size: usize,
}

#[derive(Clone, Debug)]
pub struct NcDefEnumeration {
    pub space: LaudalSpace,
    /// Number of parameter vectors satisfying the target relations.
    pub raw_count: usize,
    pub orbits: Vec<Orbit>,
    /// Every parameter vector satisfying the relations.
    pub raw: Vec<Vec<Scalar>>,
    /// `orbit_of[k]`: the orbit containing `raw[k]`.
    pub orbit_of: Vec<usize>,
}

impl NcDefEnumeration {
    pub fn elements(&self) -> Result<Vec<DeformationElement>> {
        self.orbits.iter().map(|o| self.space.element(&o.representative)).collect()
    }
}

fn encode(params: &[Scalar]) -> Vec<u32> {
    params.iter().map(|c| c.residue().expect("finite field")).collect()
}

/// All deformations of `sigma` over `algebra` up to equivalence, over a finite field.
pub fn ncdef_enumerate(algebra: &Arc<PathAlgebra>, sigma: &Collection, cfg: &SearchConfig) -> Result<NcDefEnumeration> {
    let field = algebra.field();
    let q = field
        .order()
        .ok_or_else(|| Error::Precondition("enumeration needs a finite field".into()))?;
    let space = LaudalSpace::new(algebra.clone(), sigma.clone())?;
    let n = space.param_count();
    let total = (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if total > cfg.budget as u128 {
        return Err(Error::BudgetExceeded(format!("{q}^{n} parameter vectors")));
    }
    let mut raw: Vec<Vec<Scalar>> = Vec::new();
    for mut idx in 0..total as u64 {
        let params: Vec<Scalar> = (0..n)
            .map(|_| {
                let c = field.element(idx % q);
                idx /= q;
                c
            })
            .collect();
        if space.carrier(&params)?.is_some() {
            raw.push(params);
        }
    }
    let index: HashMap<Vec<u32>, usize> = raw.iter().enumerate().map(|(k, p)| (encode(p), k)).collect();
    let gens = space.generators();
    let mut orbit_of = vec![usize::MAX; raw.len()];
    let mut orbits = Vec::new();
    for start in 0..raw.len() {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        orbit_of[start] = id;
        let mut size = 1;
        let mut queue = VecDeque::from([start]);
        while let Some(k) = queue.pop_front() {
            let maps = space.arrow_matrices(&raw[k])?;
            for g in &gens {
                let moved = space.params_of(&space.act(g, &maps));
                let target = *index
                    .get(&encode(&moved))
                    .ok_or_else(|| Error::Precondition("gauge action left the solution set".into()))?;
                if orbit_of[target] == usize::MAX {
                    orbit_of[target] = id;
                    size += 1;
                    queue.push_back(target);
                }
            }
        }
        orbits.push(Orbit {
            representative: raw[start].clone(),
            size,
        });
    }
    Ok(NcDefEnumeration {
        space,
        raw_count: raw.len(),
        orbits,
        raw,
        orbit_of,
    })
}

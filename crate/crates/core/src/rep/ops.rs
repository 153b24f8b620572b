//! Subobjects, quotients, kernels and cokernels, radicals and socles.

use super::{ModuleBase, Rep, RepMap};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// The subrepresentation spanned by the columns of `bases[v]` (which must be
/// linearly independent), together with its inclusion into `m`.
pub fn subrep(m: &Rep, bases: &[Matrix]) -> Result<RepMap> {
    let q = m.quiver();
    let lefts: Vec<Matrix> = bases
        .iter()
        .map(|s| {
            s.left_inverse()
                .ok_or_else(|| Error::InvalidRep("subspace basis is not independent".into()))
        })
        .collect::<Result<_>>()?;
    let mut maps = Vec::with_capacity(q.arrow_count());
    for a in 0..q.arrow_count() {
        let arr = q.arrow(a);
        let moved = m.map(a) * &bases[arr.target];
        let restricted = &lefts[arr.source] * &moved;
        if &bases[arr.source] * &restricted != moved {
            return Err(Error::InvalidRep(format!(
                "subspace is not closed under arrow {:?}",
                arr.name
            )));
        }
        maps.push(restricted);
    }
    let dims = bases.iter().map(|b| b.cols()).collect();
    let sub = Rep::new_unchecked(m.base().clone(), dims, maps)?;
    RepMap::new_unchecked(sub, m.clone(), bases.to_vec())
}

/// The quotient of `m` by the subrepresentation spanned by `bases[v]`, with
/// the projection onto it.
pub fn quotient(m: &Rep, bases: &[Matrix]) -> Result<RepMap> {
    let q = m.quiver();
    let mut projections = Vec::with_capacity(bases.len());
    let mut sections = Vec::with_capacity(bases.len());
    for b in bases {
        let (p, _) = b.cokernel_projection();
        let s = p.right_inverse().expect("cokernel projection has full row rank");
        projections.push(p);
        sections.push(s);
    }
    let mut maps = Vec::with_capacity(q.arrow_count());
    for a in 0..q.arrow_count() {
        let arr = q.arrow(a);
        let moved = m.map(a) * &bases[arr.target];
        if !bases[arr.source].column_space_contains(&moved) {
            return Err(Error::InvalidRep(format!(
                "subspace is not closed under arrow {:?}",
                arr.name
            )));
        }
        maps.push(&(&projections[arr.source] * m.map(a)) * &sections[arr.target]);
    }
    let dims = projections.iter().map(|p| p.rows()).collect();
    let quot = Rep::new_unchecked(m.base().clone(), dims, maps)?;
    RepMap::new_unchecked(m.clone(), quot, projections)
}

impl RepMap {
    /// Inclusion of the kernel.
    pub fn kernel(&self) -> RepMap {
        let bases: Vec<Matrix> = self.blocks().iter().map(|b| b.kernel_basis()).collect();
        subrep(self.source(), &bases).expect("kernels are subrepresentations")
    }

    /// Inclusion of the image into the target.
    pub fn image(&self) -> RepMap {
        let bases: Vec<Matrix> = self.blocks().iter().map(|b| b.image_basis()).collect();
        subrep(self.target(), &bases).expect("images are subrepresentations")
    }

    /// Projection onto the cokernel.
    pub fn cokernel(&self) -> RepMap {
        let bases: Vec<Matrix> = self.blocks().iter().map(|b| b.image_basis()).collect();
        quotient(self.target(), &bases).expect("images are subrepresentations")
    }

    /// The map with source and target identified with isomorphic copies via
    /// `pre: source' -> source` and `post: target -> target'`.
    pub fn conjugated(&self, pre: &RepMap, post: &RepMap) -> Result<RepMap> {
        post.after(self)?.after(pre)
    }
}

/// Bases (in `m`'s coordinates) of `sum_a M_a(sub_v)` at every vertex.
fn radical_of_subspaces(m: &Rep, sub: &[Matrix]) -> Vec<Matrix> {
    let field = m.field();
    let q = m.quiver();
    (0..q.vertex_count())
        .map(|u| {
            let images: Vec<Matrix> = q.arrows_from(u).map(|a| m.map(a) * &sub[q.arrow(a).target]).collect();
            let refs: Vec<&Matrix> = images.iter().collect();
            Matrix::hstack(field, m.dims()[u], &refs).image_basis()
        })
        .collect()
}

fn identity_bases(m: &Rep) -> Vec<Matrix> {
    m.dims().iter().map(|&d| Matrix::identity(m.field(), d)).collect()
}

/// Inclusion of the radical `M J`.
pub fn radical(m: &Rep) -> RepMap {
    let bases = radical_of_subspaces(m, &identity_bases(m));
    subrep(m, &bases).expect("the radical is a subrepresentation")
}

/// Projection onto the top `M / M J`.
pub fn top(m: &Rep) -> RepMap {
    let bases = radical_of_subspaces(m, &identity_bases(m));
    quotient(m, &bases).expect("the radical is a subrepresentation")
}

/// Inclusion of the socle: vectors killed by every arrow.
pub fn socle(m: &Rep) -> RepMap {
    let field = m.field();
    let q = m.quiver();
    let bases: Vec<Matrix> = (0..q.vertex_count())
        .map(|v| {
            let maps: Vec<&Matrix> = q.arrows_into(v).map(|a| m.map(a)).collect();
            let rows: usize = maps.iter().map(|x| x.rows()).sum();
            if rows == 0 {
                return Matrix::identity(field, m.dims()[v]);
            }
            Matrix::vstack(field, m.dims()[v], &maps).kernel_basis()
        })
        .collect();
    subrep(m, &bases).expect("the socle is a subrepresentation")
}

/// `rad^0 M, rad^1 M, ...` down to zero, as subspace bases in `m`'s coordinates.
pub fn radical_series(m: &Rep) -> Vec<Vec<Matrix>> {
    let mut layers = vec![identity_bases(m)];
    loop {
        let last = layers.last().expect("non-empty");
        if last.iter().all(|b| b.cols() == 0) {
            break;
        }
        let next = radical_of_subspaces(m, last);
        layers.push(next);
    }
    layers
}

/// Smallest `l` with `rad^{l+1} M = 0` (zero for semisimple and zero modules).
pub fn loewy_length_of(m: &Rep) -> usize {
    radical_series(m).len().saturating_sub(2)
}

/// The restriction `rad f: rad M -> rad N`.
pub fn radical_on_map(f: &RepMap) -> RepMap {
    let rm = radical(f.source());
    let rn = radical(f.target());
    let blocks = (0..f.blocks().len())
        .map(|v| {
            let left = rn.block(v).left_inverse().expect("inclusion");
            &(&left * f.block(v)) * rm.block(v)
        })
        .collect();
    RepMap::new_unchecked(rm.source().clone(), rn.source().clone(), blocks).expect("shapes")
}

/// A direct sum with its structure maps.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub rep: Rep,
    pub injections: Vec<RepMap>,
    pub projections: Vec<RepMap>,
}

pub fn direct_sum(parts: &[&Rep]) -> Result<DirectSum> {
    let first = parts
        .first()
        .ok_or_else(|| Error::Precondition("direct sum of no modules".into()))?;
    direct_sum_in(first.base(), parts)
}

/// Direct sum over an explicit base; the empty sum is the zero module.
pub fn direct_sum_in(base: &ModuleBase, parts: &[&Rep]) -> Result<DirectSum> {
    let base = base.clone();
    if parts.iter().any(|p| p.base() != &base) {
        return Err(Error::BaseMismatch);
    }
    let field = base.field();
    let n = base.vertex_count();
    let dims: Vec<usize> = (0..n).map(|v| parts.iter().map(|p| p.dims()[v]).sum()).collect();
    let maps = (0..base.quiver().arrow_count())
        .map(|a| {
            let blocks: Vec<&Matrix> = parts.iter().map(|p| p.map(a)).collect();
            Matrix::block_diagonal(field, &blocks)
        })
        .collect();
    let rep = Rep::new_unchecked(base, dims.clone(), maps)?;
    let mut injections = Vec::new();
    let mut projections = Vec::new();
    let mut offsets = vec![0usize; n];
    for p in parts {
        let mut inj = Vec::with_capacity(n);
        let mut proj = Vec::with_capacity(n);
        for v in 0..n {
            let mut i = Matrix::zeros(field, dims[v], p.dims()[v]);
            i.set_block(offsets[v], 0, &Matrix::identity(field, p.dims()[v]));
            proj.push(i.transpose());
            inj.push(i);
            offsets[v] += p.dims()[v];
        }
        injections.push(RepMap::new_unchecked((*p).clone(), rep.clone(), inj)?);
        projections.push(RepMap::new_unchecked(rep.clone(), (*p).clone(), proj)?);
    }
    Ok(DirectSum {
        rep,
        injections,
        projections,
    })
}

/// `g: X -> D` factored through the mono `k: K -> D`; `g` must land in the image of `k`.
pub fn factor_through_mono(k: &RepMap, g: &RepMap) -> Result<RepMap> {
    if k.target() != g.target() {
        return Err(Error::InvalidRepMap("maps do not share a target".into()));
    }
    let mut blocks = Vec::with_capacity(k.blocks().len());
    for (kv, gv) in k.blocks().iter().zip(g.blocks()) {
        let left = kv
            .left_inverse()
            .ok_or_else(|| Error::InvalidRepMap("not a monomorphism".into()))?;
        let y = &left * gv;
        if &(kv * &y) != gv {
            return Err(Error::InvalidRepMap("map does not factor through the subobject".into()));
        }
        blocks.push(y);
    }
    RepMap::new_unchecked(g.source().clone(), k.source().clone(), blocks)
}

/// `h: D -> Y` factored through the epi `q: D -> Q`; `h` must kill the kernel of `q`.
pub fn factor_through_epi(q: &RepMap, h: &RepMap) -> Result<RepMap> {
    if q.source() != h.source() {
        return Err(Error::InvalidRepMap("maps do not share a source".into()));
    }
    let mut blocks = Vec::with_capacity(q.blocks().len());
    for (qv, hv) in q.blocks().iter().zip(h.blocks()) {
        let right = qv
            .right_inverse()
            .ok_or_else(|| Error::InvalidRepMap("not an epimorphism".into()))?;
        let y = hv * &right;
        if &(&y * qv) != hv {
            return Err(Error::InvalidRepMap("map does not factor through the quotient".into()));
        }
        blocks.push(y);
    }
    RepMap::new_unchecked(q.target().clone(), h.target().clone(), blocks)
}

/// The map between direct sums given by a matrix of maps:
/// `entries[r][c]: sources[c] -> targets[r]`.
pub fn map_between_sums(source: &DirectSum, target: &DirectSum, entries: &[Vec<RepMap>]) -> Result<RepMap> {
    let mut acc = RepMap::zero(&source.rep, &target.rep);
    for (r, row) in entries.iter().enumerate() {
        for (c, f) in row.iter().enumerate() {
            let piece = target.injections[r].after(f)?.after(&source.projections[c])?;
            acc = acc.add(&piece)?;
        }
    }
    Ok(acc)
}

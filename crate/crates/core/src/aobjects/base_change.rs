//! Change of base along algebra homomorphisms, and the right module `Hom_R(Z, W)`.

use super::tensor::{balanced_tensor, kron_map};
use super::AObject;
use crate::algebra::{AlgebraHom, Element};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};
use crate::rep::{factor_through_epi, hom_space, map_between_sums, DirectSum, ModuleBase, Rep, RepMap};

/// `B` as a right `A`-module through `alpha: A -> B`. The component at a vertex
/// `v` of `A` is `B alpha(e_v)`; the returned matrices hold its basis in the
/// coordinates of `B`.
pub fn bimodule_of_hom(alpha: &AlgebraHom) -> Result<(Rep, Vec<Matrix>)> {
    let a = alpha.source();
    let b = alpha.target();
    let q = a.quiver();
    let bases: Vec<Matrix> = (0..q.vertex_count())
        .map(|v| b.right_matrix(&alpha.apply(&a.vertex(v))).image_basis())
        .collect();
    let lefts: Vec<Matrix> = bases
        .iter()
        .map(|m| m.left_inverse().expect("independent columns"))
        .collect();
    let mut maps = Vec::with_capacity(q.arrow_count());
    for (k, arr) in q.arrows().iter().enumerate() {
        let moved = &b.right_matrix(&alpha.apply(&a.arrow(k))) * &bases[arr.target];
        let coords = &lefts[arr.source] * &moved;
        if &bases[arr.source] * &coords != moved {
            return Err(Error::InvalidHom("image of an arrow does not respect the idempotents".into()));
        }
        maps.push(coords);
    }
    let dims = bases.iter().map(|m| m.cols()).collect();
    let rep = Rep::new(ModuleBase::Algebra(a.clone()), dims, maps)?;
    Ok((rep, bases))
}

/// The block-diagonal map on `sum_v X_v (x) Z_v` given by `x -> op * x` on the
/// `B`-coordinates of each `X_v`.
fn act_on_sum(
    z: &AObject,
    op: &Matrix,
    from: &[Matrix],
    to: &[Matrix],
    sum_from: &DirectSum,
    sum_to: &DirectSum,
) -> Result<RepMap> {
    let n = from.len();
    let entries: Vec<Vec<RepMap>> = (0..n)
        .map(|v| {
            (0..n)
                .map(|w| {
                    let s = sum_from.injections[w].source();
                    let t = sum_to.injections[v].source();
                    if v != w {
                        return RepMap::zero(s, t);
                    }
                    let left = to[v].left_inverse().expect("independent columns");
                    let local = &(&left * op) * &from[v];
                    kron_map(&local, &RepMap::identity(z.component(v)), s, t)
                })
                .collect()
        })
        .collect();
    map_between_sums(sum_from, sum_to, &entries)
}

/// `alpha^* Z = B_alpha (x)_A Z` with `B` acting by left multiplication.
pub fn pullback(alpha: &AlgebraHom, z: &AObject) -> Result<AObject> {
    if alpha.source() != z.algebra() {
        return Err(Error::BaseMismatch);
    }
    let b = alpha.target();
    let (x, bases) = bimodule_of_hom(alpha)?;
    let (proj, sum) = balanced_tensor(&x, z)?;
    let rho = (0..b.dim())
        .map(|k| {
            let d = act_on_sum(z, &b.left_matrix(&b.basis_element(k)), &bases, &bases, &sum, &sum)?;
            factor_through_epi(&proj, &proj.after(&d)?)
        })
        .collect::<Result<Vec<_>>>()?;
    AObject::new(b.clone(), proj.target().clone(), rho)
}

/// `alpha_* Z = (Z, rho o alpha)` for `Z` over the target of `alpha`.
pub fn pushforward(alpha: &AlgebraHom, z: &AObject) -> Result<AObject> {
    if alpha.target() != z.algebra() {
        return Err(Error::BaseMismatch);
    }
    let a = alpha.source();
    let rho = (0..a.dim()).map(|k| z.act(&alpha.image_of_basis(k))).collect();
    AObject::new(a.clone(), z.carrier().clone(), rho)
}

/// For `beta = u alpha u^{-1}`, the isomorphism `alpha^* Z -> beta^* Z`
/// induced by `b (x) z -> b u^{-1} (x) z`. Returns both pullbacks and the map.
pub fn lambda_iso(
    alpha: &AlgebraHom,
    beta: &AlgebraHom,
    u: &[Scalar],
    z: &AObject,
) -> Result<(AObject, AObject, RepMap)> {
    let b = alpha.target();
    let u_inv: Element = b
        .inverse(u)
        .ok_or_else(|| Error::Precondition("conjugating element is not a unit".into()))?;
    let pa = pullback(alpha, z)?;
    let pb = pullback(beta, z)?;
    let (xa, bases_a) = bimodule_of_hom(alpha)?;
    let (xb, bases_b) = bimodule_of_hom(beta)?;
    let (proj_a, sum_a) = balanced_tensor(&xa, z)?;
    let (proj_b, sum_b) = balanced_tensor(&xb, z)?;
    let d = act_on_sum(z, &b.right_matrix(&u_inv), &bases_a, &bases_b, &sum_a, &sum_b)?;
    let map = factor_through_epi(&proj_a, &proj_b.after(&d)?)?;
    Ok((pa, pb, map))
}

/// `Hom_R(Z, W)` as a right `A`-module: the component at `v` is
/// `Hom_R(Z_v, W)` and an arrow `a: u -> v` sends `f` to `f o rho(a)`.
pub fn hom_module(z: &AObject, w: &Rep) -> Result<Rep> {
    let a = z.algebra();
    let q = a.quiver();
    let field = a.field();
    let bases: Vec<Vec<RepMap>> = (0..q.vertex_count())
        .map(|v| hom_space(z.component(v), w))
        .collect::<Result<_>>()?;
    let frames: Vec<Matrix> = bases
        .iter()
        .zip(0..)
        .map(|(b, v)| {
            let rows = z.component(v).dims().iter().zip(w.dims()).map(|(s, t)| s * t).sum();
            let cols: Vec<Vec<Scalar>> = b.iter().map(|f| f.flatten()).collect();
            Matrix::from_columns(field, rows, &cols)
        })
        .collect();
    let mut maps = Vec::with_capacity(q.arrow_count());
    for (k, arr) in q.arrows().iter().enumerate() {
        let (u, v) = (arr.source, arr.target);
        let rho_a = z.arrow_map(k);
        let moved: Vec<Vec<Scalar>> = bases[v]
            .iter()
            .map(|f| f.after(&rho_a).map(|g| g.flatten()))
            .collect::<Result<_>>()?;
        let moved = Matrix::from_columns(field, frames[u].rows(), &moved);
        let coords = frames[u]
            .solve(&moved)?
            .ok_or_else(|| Error::InvalidAObject("composite is not a homomorphism".into()))?;
        maps.push(coords.particular);
    }
    let dims = bases.iter().map(|b| b.len()).collect();
    Rep::new(ModuleBase::Algebra(a.clone()), dims, maps)
}

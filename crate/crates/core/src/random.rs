//! Random small algebras, modules, maps and A-objects for property tests.
//!
//! Every generator takes the random source explicitly so a seeded
//! `ChaCha8Rng` makes a whole suite reproducible.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::{AlgebraHom, BoundQuiver, Element, Path, PathAlgebra, Quiver, Relation};
use crate::aobjects::AObject;
use crate::deformation::{Collection, LaudalSpace};
use crate::error::Result;
use crate::linalg::{Field, Matrix, Scalar};
use crate::rep::{hom_space, ModuleBase, ProjectiveModule, Rep, RepMap};

/// Size limits for [`random_algebra`].
#[derive(Clone, Copy, Debug)]
pub struct AlgebraShape {
    pub max_vertices: usize,
    pub max_arrows: usize,
    pub max_dim: usize,
    pub loops: bool,
}

impl Default for AlgebraShape {
    fn default() -> Self {
        AlgebraShape {
            max_vertices: 3,
            max_arrows: 3,
            max_dim: 10,
            loops: true,
        }
    }
}

fn random_quiver<R: Rng + ?Sized>(rng: &mut R, vertices: usize, arrows: usize, loops: bool) -> Quiver {
    let labels: Vec<String> = (1..=vertices).map(|v| v.to_string()).collect();
    let mut list = Vec::new();
    for k in 0..arrows {
        let s = rng.gen_range(0..vertices);
        let mut t = rng.gen_range(0..vertices);
        if !loops && vertices > 1 {
            while t == s {
                t = rng.gen_range(0..vertices);
            }
        } else if !loops {
            break;
        }
        list.push((format!("a{k}"), labels[s].clone(), labels[t].clone()));
    }
    let label_refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
    let arrow_refs: Vec<(&str, &str, &str)> = list
        .iter()
        .map(|(n, s, t)| (n.as_str(), s.as_str(), t.as_str()))
        .collect();
    Quiver::build(&label_refs, &arrow_refs).expect("generated quiver is well formed")
}

/// All arrow sequences of length `len` that compose.
fn paths_of_length(q: &Quiver, len: usize) -> Vec<Vec<usize>> {
    let mut layer: Vec<Vec<usize>> = (0..q.arrow_count()).map(|a| vec![a]).collect();
    for _ in 1..len {
        let mut next = Vec::new();
        for p in &layer {
            let end = q.arrow(*p.last().expect("non-empty")).target;
            for a in q.arrows_from(end) {
                let mut longer = p.clone();
                longer.push(a);
                next.push(longer);
            }
        }
        layer = next;
    }
    layer
}

/// A finite-dimensional algebra given by a random quiver with monomial
/// relations: every path of a random length `l >= 2` is killed, together
/// with a few random shorter monomials.
pub fn random_algebra<R: Rng + ?Sized>(rng: &mut R, field: Field, shape: &AlgebraShape) -> Arc<PathAlgebra> {
    loop {
        let n = rng.gen_range(1..=shape.max_vertices.max(1));
        let arrows = if rng.gen_bool(0.1) { 0 } else { rng.gen_range(1..=shape.max_arrows.max(1)) };
        let q = random_quiver(rng, n, arrows, shape.loops);
        let cut = rng.gen_range(2..=4);
        let mut relations: Vec<Relation> = paths_of_length(&q, cut)
            .into_iter()
            .map(|p| Relation::monomial(Path::new(&q, p).expect("composable"), field))
            .collect();
        if cut > 2 {
            for p in paths_of_length(&q, 2) {
                if rng.gen_bool(0.3) {
                    relations.push(Relation::monomial(Path::new(&q, p).expect("composable"), field));
                }
            }
        }
        let Ok(bound) = BoundQuiver::new(q, relations, field) else { continue };
        let Ok(a) = PathAlgebra::build(bound) else { continue };
        if a.dim() <= shape.max_dim {
            return Arc::new(a);
        }
    }
}

/// A random combination of the paths from `source` to `target`.
pub fn random_element_between<R: Rng + ?Sized>(rng: &mut R, a: &PathAlgebra, source: usize, target: usize) -> Element {
    let mut x = a.zero();
    for b in a.paths_between(source, target) {
        x[b] = a.field().random(rng, 3);
    }
    x
}

/// A random element of the arrow ideal.
pub fn random_radical_element<R: Rng + ?Sized>(rng: &mut R, a: &PathAlgebra) -> Element {
    let mut x = a.zero();
    for (b, p) in a.basis().iter().enumerate() {
        if !p.is_trivial() {
            x[b] = a.field().random(rng, 3);
        }
    }
    x
}

fn nonzero<R: Rng + ?Sized>(rng: &mut R, field: Field) -> Scalar {
    loop {
        let c = field.random(rng, 3);
        if !c.is_zero() {
            return c;
        }
    }
}

/// A unit: non-zero multiples of the vertex idempotents plus a random radical part.
pub fn random_unit<R: Rng + ?Sized>(rng: &mut R, a: &PathAlgebra) -> Element {
    let mut u = random_radical_element(rng, a);
    for v in 0..a.vertex_count() {
        u[a.vertex_index(v)] = nonzero(rng, a.field());
    }
    u
}

/// An automorphism of `a` that rescales the arrows, conjugated by a random unit.
pub fn random_automorphism<R: Rng + ?Sized>(rng: &mut R, a: &Arc<PathAlgebra>) -> Result<AlgebraHom> {
    let images: Vec<Element> = (0..a.quiver().arrow_count())
        .map(|k| a.scale(&nonzero(rng, a.field()), &a.arrow(k)))
        .collect();
    let scaled = AlgebraHom::from_arrow_images(a.clone(), a.clone(), (0..a.vertex_count()).collect(), images)?;
    scaled.conjugate_by(&random_unit(rng, a))
}

pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, field: Field, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(field, rows, cols, |_, _| field.random(rng, 3))
}

pub fn random_invertible<R: Rng + ?Sized>(rng: &mut R, field: Field, n: usize) -> Matrix {
    loop {
        let m = random_matrix(rng, field, n, n);
        if m.is_invertible() {
            return m;
        }
    }
}

/// The cokernel of a random map between two small projectives, retried until
/// it is non-zero of dimension at most `max_dim`; falls back to a simple.
pub fn random_module<R: Rng + ?Sized>(rng: &mut R, a: &Arc<PathAlgebra>, max_dim: usize) -> Result<Rep> {
    let n = a.vertex_count();
    for _ in 0..64 {
        let gens: Vec<usize> = (0..rng.gen_range(1..=2)).map(|_| rng.gen_range(0..n)).collect();
        let rels: Vec<usize> = (0..rng.gen_range(0..=2)).map(|_| rng.gen_range(0..n)).collect();
        let p0 = ProjectiveModule::new(a, gens.clone());
        let p1 = ProjectiveModule::new(a, rels.clone());
        let matrix: Vec<Vec<Element>> = rels
            .iter()
            .map(|&i| {
                gens.iter()
                    .map(|&j| {
                        let x = random_element_between(rng, a, i, j);
                        if i == j {
                            // stay in the radical so the generator survives
                            let mut y = x;
                            y[a.vertex_index(i)] = a.field().zero();
                            y
                        } else {
                            x
                        }
                    })
                    .collect()
            })
            .collect();
        let d = p1.map_by_elements(&p0, &matrix)?;
        let m = d.cokernel().target().clone();
        if !m.is_zero() && m.dim() <= max_dim {
            return Ok(m);
        }
    }
    Ok(Rep::simple(ModuleBase::Algebra(a.clone()), rng.gen_range(0..n)))
}

/// A random linear combination of a basis of `Hom(m, n)`.
pub fn random_map<R: Rng + ?Sized>(rng: &mut R, m: &Rep, n: &Rep) -> Result<RepMap> {
    let basis = hom_space(m, n)?;
    let coeffs: Vec<Scalar> = basis.iter().map(|_| m.field().random(rng, 3)).collect();
    if basis.is_empty() {
        return Ok(RepMap::zero(m, n));
    }
    Ok(RepMap::combination(&basis, &coeffs))
}

/// An isomorphic copy of `m` in random coordinates, with the isomorphism
/// from the copy to `m`.
pub fn random_iso_copy<R: Rng + ?Sized>(rng: &mut R, m: &Rep) -> Result<(Rep, RepMap)> {
    let g: Vec<Matrix> = m.dims().iter().map(|&d| random_invertible(rng, m.field(), d)).collect();
    let copy = m.change_basis(&g)?;
    let iso = RepMap::new(copy.clone(), m.clone(), g)?;
    Ok((copy, iso))
}

/// A random representation of a bound quiver with relations, rejecting
/// samples that violate them.
pub fn random_rep<R: Rng + ?Sized>(rng: &mut R, base: &ModuleBase, dims: &[usize]) -> Option<Rep> {
    let q = base.quiver().clone();
    for _ in 0..64 {
        let maps = q
            .arrows()
            .iter()
            .map(|arr| random_matrix(rng, base.field(), dims[arr.source], dims[arr.target]))
            .collect();
        if let Ok(r) = Rep::new(base.clone(), dims.to_vec(), maps) {
            return Some(r);
        }
    }
    None
}

/// A random relation-free target quiver with `n` random non-zero modules of
/// dimension at most `max_dim` each.
pub fn random_collection<R: Rng + ?Sized>(rng: &mut R, field: Field, n: usize, max_dim: usize) -> Result<Collection> {
    let vertices = rng.gen_range(1..=2);
    let arrows = rng.gen_range(1..=2);
    let q = random_quiver(rng, vertices, arrows, true);
    let base = ModuleBase::Quiver(Arc::new(BoundQuiver::free(q, field)));
    let mut objects = Vec::new();
    while objects.len() < n {
        let mut dims: Vec<usize> = (0..vertices).map(|_| rng.gen_range(0..=max_dim)).collect();
        if dims.iter().sum::<usize>() == 0 {
            let v = *(0..vertices).collect::<Vec<_>>().choose(rng).expect("a vertex");
            dims[v] = 1;
        }
        while dims.iter().sum::<usize>() > max_dim {
            let v = dims.iter().position(|&d| d > 0).expect("positive entry");
            dims[v] -= 1;
        }
        if let Some(z) = random_rep(rng, &base, &dims) {
            objects.push(z);
        }
    }
    Collection::new(objects)
}

/// A flat A-object deforming `sigma`, with random structure parameters.
/// `None` if no sampled parameters satisfy the target relations.
pub fn random_flat_object<R: Rng + ?Sized>(rng: &mut R, a: &Arc<PathAlgebra>, sigma: &Collection) -> Result<Option<AObject>> {
    let space = LaudalSpace::new(a.clone(), sigma.clone())?;
    for _ in 0..32 {
        let params: Vec<Scalar> = (0..space.param_count()).map(|_| a.field().random(rng, 3)).collect();
        if space.carrier(&params)?.is_some() {
            return space.object(&params).map(Some);
        }
    }
    Ok(None)
}

/// The path algebra of a random acyclic quiver without relations; arrows
/// only go from lower to higher vertices.
pub fn random_acyclic_algebra<R: Rng + ?Sized>(rng: &mut R, field: Field, max_vertices: usize, max_dim: usize) -> Arc<PathAlgebra> {
    loop {
        let n = rng.gen_range(2..=max_vertices.max(2));
        let labels: Vec<String> = (1..=n).map(|v| v.to_string()).collect();
        let arrows: Vec<(String, String, String)> = (0..rng.gen_range(1..=n + 1))
            .map(|k| {
                let s = rng.gen_range(0..n - 1);
                let t = rng.gen_range(s + 1..n);
                (format!("a{k}"), labels[s].clone(), labels[t].clone())
            })
            .collect();
        let label_refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
        let arrow_refs: Vec<(&str, &str, &str)> = arrows
            .iter()
            .map(|(a, s, t)| (a.as_str(), s.as_str(), t.as_str()))
            .collect();
        let q = Quiver::build(&label_refs, &arrow_refs).expect("generated quiver is well formed");
        let a = PathAlgebra::build(BoundQuiver::free(q, field)).expect("acyclic quivers give finite algebras");
        if a.dim() <= max_dim {
            return Arc::new(a);
        }
    }
}

/// An A-object with the objects of `sigma` as components and random
/// homomorphisms for the arrows of `a`; usually not flat. Falls back to zero
/// arrow maps when the sampled maps violate the relations of `a`.
pub fn random_a_object<R: Rng + ?Sized>(rng: &mut R, a: &Arc<PathAlgebra>, sigma: &Collection) -> Result<AObject> {
    let q = a.quiver().clone();
    let comps = sigma.objects().to_vec();
    for _ in 0..16 {
        let arrows = q
            .arrows()
            .iter()
            .map(|arr| random_map(rng, &comps[arr.source], &comps[arr.target]))
            .collect::<Result<Vec<_>>>()?;
        if let Ok(z) = AObject::from_components(a.clone(), comps.clone(), arrows) {
            return Ok(z);
        }
    }
    let zeros = q
        .arrows()
        .iter()
        .map(|arr| RepMap::zero(&comps[arr.source], &comps[arr.target]))
        .collect();
    AObject::from_components(a.clone(), comps, zeros)
}

//! Brute-force reference computations used to check the fast algorithms.

#![allow(dead_code)]

use std::collections::HashMap;

use ncdef_core::algebra::PathAlgebra;
use ncdef_core::rep::Rep;
use ncdef_core::{Field, Matrix, Scalar};

/// All points of `k^n` over a finite field, in a fixed order.
pub fn all_vectors(field: Field, n: usize) -> Vec<Vec<Scalar>> {
    let q = field.order().expect("finite field");
    let total = q.pow(n as u32);
    (0..total)
        .map(|mut idx| {
            (0..n)
                .map(|_| {
                    let c = field.element(idx % q);
                    idx /= q;
                    c
                })
                .collect()
        })
        .collect()
}

/// Solutions of an affine system given as a function of the unknowns.
/// Small systems are enumerated literally, larger ones through their kernel.
fn affine_solutions(field: Field, n: usize, eqs: &dyn Fn(&[Scalar]) -> Vec<Scalar>) -> Vec<Vec<Scalar>> {
    let q = field.order().expect("finite field");
    if (q as f64).powi(n as i32) <= 70_000.0 {
        return all_vectors(field, n)
            .into_iter()
            .filter(|x| eqs(x).iter().all(|c| c.is_zero()))
            .collect();
    }
    let zero = vec![field.zero(); n];
    let constant = eqs(&zero);
    let columns: Vec<Vec<Scalar>> = (0..n)
        .map(|k| {
            let mut e = zero.clone();
            e[k] = field.one();
            eqs(&e).iter().zip(&constant).map(|(a, b)| a - b).collect()
        })
        .collect();
    let a = Matrix::from_columns(field, constant.len(), &columns);
    let rhs: Vec<Scalar> = constant.iter().map(|c| -c).collect();
    let Some(sol) = a.solve(&Matrix::column_vector(field, &rhs)).unwrap() else {
        return Vec::new();
    };
    let p = sol.particular.column(0);
    let dirs: Vec<Vec<Scalar>> = (0..sol.kernel.cols()).map(|c| sol.kernel.column(c)).collect();
    all_vectors(field, dirs.len())
        .into_iter()
        .map(|coeffs| {
            let mut x = p.clone();
            for (c, d) in coeffs.iter().zip(&dirs) {
                for (xi, di) in x.iter_mut().zip(d) {
                    *xi = &*xi + &(c * di);
                }
            }
            x
        })
        .collect()
}

struct Carrier {
    /// Coordinates at each target vertex: (summand, algebra basis index, vector index).
    coords: Vec<Vec<(usize, usize, usize)>>,
    /// Left action of every algebra basis element at every target vertex.
    action: Vec<Vec<Matrix>>,
}

fn carrier(a: &PathAlgebra, sigma: &[Rep]) -> Carrier {
    let field = a.field();
    let vertices = sigma[0].dims().len();
    let mut coords = Vec::new();
    let mut action = Vec::new();
    for r in 0..vertices {
        let mut cs = Vec::new();
        for (i, z) in sigma.iter().enumerate() {
            for b in 0..a.dim() {
                if a.basis()[b].source() != i {
                    continue;
                }
                for v in 0..z.dims()[r] {
                    cs.push((i, b, v));
                }
            }
        }
        let acts = (0..a.dim())
            .map(|x| {
                let lm = a.left_matrix(&a.basis_element(x));
                Matrix::from_fn(field, cs.len(), cs.len(), |p, c| {
                    let (i1, b1, v1) = cs[p];
                    let (i2, b2, v2) = cs[c];
                    if i1 == i2 && v1 == v2 {
                        lm.get(b1, b2).clone()
                    } else {
                        field.zero()
                    }
                })
            })
            .collect();
        coords.push(cs);
        action.push(acts);
    }
    Carrier { coords, action }
}

fn matrix_of(field: Field, rows: usize, cols: usize, x: &[Scalar]) -> Matrix {
    Matrix::from_row_major(field, rows, cols, x.to_vec()).unwrap()
}

/// Conditions for a map `X_s -> X_r` to be A-linear with top part `top(i, v_r, v_s)`.
fn linear_with_top(
    a: &PathAlgebra,
    c: &Carrier,
    r: usize,
    s: usize,
    f: &Matrix,
    top: &dyn Fn(usize, usize, usize) -> Scalar,
) -> Vec<Scalar> {
    let mut out = Vec::new();
    for x in 0..a.dim() {
        let d = &(&c.action[r][x] * f) - &(f * &c.action[s][x]);
        out.extend(d.entries().iter().cloned());
    }
    for (p, &(i1, b1, v1)) in c.coords[r].iter().enumerate() {
        if !a.basis()[b1].is_trivial() {
            continue;
        }
        for (q, &(i2, b2, v2)) in c.coords[s].iter().enumerate() {
            if !a.basis()[b2].is_trivial() {
                continue;
            }
            let want = if i1 == i2 { top(i1, v1, v2) } else { a.field().zero() };
            out.push(f.get(p, q) - &want);
        }
    }
    out
}

pub struct BruteForce {
    pub raw_count: usize,
    pub orbit_count: usize,
    pub orbit_sizes: Vec<usize>,
}

/// Flat A-objects lifting `sigma` with the fixed identification of the top,
/// up to automorphisms that are the identity on the top.
pub fn brute_force_deformations(a: &PathAlgebra, sigma: &[Rep]) -> BruteForce {
    let field = a.field();
    let c = carrier(a, sigma);
    let q = sigma[0].quiver().clone();
    let dims: Vec<usize> = c.coords.iter().map(|cs| cs.len()).collect();
    let shapes: Vec<(usize, usize)> = q.arrows().iter().map(|arr| (dims[arr.source], dims[arr.target])).collect();
    let n: usize = shapes.iter().map(|(r, c)| r * c).sum();
    let split = |x: &[Scalar]| -> Vec<Matrix> {
        let mut at = 0;
        shapes
            .iter()
            .map(|&(r, cc)| {
                let m = matrix_of(field, r, cc, &x[at..at + r * cc]);
                at += r * cc;
                m
            })
            .collect()
    };
    let eqs = |x: &[Scalar]| -> Vec<Scalar> {
        let maps = split(x);
        let mut out = Vec::new();
        for (t, arr) in q.arrows().iter().enumerate() {
            let top = |i: usize, v1: usize, v2: usize| sigma[i].map(t).get(v1, v2).clone();
            out.extend(linear_with_top(a, &c, arr.source, arr.target, &maps[t], &top));
        }
        out
    };
    let raw: Vec<Vec<Matrix>> = affine_solutions(field, n, &eqs)
        .iter()
        .map(|x| split(x))
        .filter(|maps| {
            Rep::new(sigma[0].base().clone(), dims.clone(), maps.clone()).is_ok()
        })
        .collect();
    // Gauge group, vertex by vertex.
    let groups: Vec<Vec<(Matrix, Matrix)>> = (0..dims.len())
        .map(|r| {
            let d = dims[r];
            let eqs = |x: &[Scalar]| {
                let g = matrix_of(field, d, d, x);
                let one = |_: usize, v1: usize, v2: usize| if v1 == v2 { field.one() } else { field.zero() };
                linear_with_top(a, &c, r, r, &g, &one)
            };
            affine_solutions(field, d * d, &eqs)
                .iter()
                .map(|x| {
                    let g = matrix_of(field, d, d, x);
                    let inv = g.inverse().expect("unipotent gauge");
                    (g, inv)
                })
                .collect()
        })
        .collect();
    let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
    for g in &groups {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                (0..g.len()).map(move |k| {
                    let mut t = t.clone();
                    t.push(k);
                    t
                })
            })
            .collect();
    }
    let index: HashMap<Vec<Matrix>, usize> = raw.iter().cloned().enumerate().map(|(k, m)| (m, k)).collect();
    let mut seen = vec![false; raw.len()];
    let mut orbit_sizes = Vec::new();
    for start in 0..raw.len() {
        if seen[start] {
            continue;
        }
        let mut size = 0;
        for t in &tuples {
            let moved: Vec<Matrix> = q
                .arrows()
                .iter()
                .enumerate()
                .map(|(k, arr)| &(&groups[arr.source][t[arr.source]].0 * &raw[start][k]) * &groups[arr.target][t[arr.target]].1)
                .collect();
            let j = index[&moved];
            if !seen[j] {
                seen[j] = true;
                size += 1;
            }
        }
        orbit_sizes.push(size);
    }
    BruteForce {
        raw_count: raw.len(),
        orbit_count: orbit_sizes.len(),
        orbit_sizes,
    }
}

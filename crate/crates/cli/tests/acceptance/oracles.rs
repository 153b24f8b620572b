//! Reference computations for the acceptance run, independent of the
//! library routines they are compared with.

use std::sync::Arc;

use ncdef_core::algebra::{BoundQuiver, Path, PathAlgebra, Quiver, Relation};
use ncdef_core::aobjects::{tensor_apply, tensor_map, AObject};
use ncdef_core::rep::{hom_space, projective, quotient, radical_series, Rep};
use ncdef_core::{Field, Matrix, Scalar};
use rand::Rng;

/// The nilpotent Jordan block of size `n` (ones on the superdiagonal).
pub fn jordan(field: Field, n: usize) -> Matrix {
    let mut j = Matrix::zeros(field, n, n);
    for i in 0..n.saturating_sub(1) {
        j.set(i, i + 1, field.one());
    }
    j
}

/// A basis of `{X : XJ = JX}`, by solving the n^2 linear equations entry by entry.
pub fn commutant(j: &Matrix) -> Vec<Matrix> {
    let n = j.rows();
    let field = j.field();
    let mut system = Matrix::zeros(field, n * n, n * n);
    // Row (r, c) of XJ - JX; unknown (a, b) is X[a][b].
    for r in 0..n {
        for c in 0..n {
            let row = r * n + c;
            for k in 0..n {
                // (XJ)[r][c] = sum_k X[r][k] J[k][c]
                let x = system.get(row, r * n + k) + j.get(k, c);
                system.set(row, r * n + k, x);
                // (JX)[r][c] = sum_k J[r][k] X[k][c]
                let y = system.get(row, k * n + c) - j.get(r, k);
                system.set(row, k * n + c, y);
            }
        }
    }
    let kernel = system.kernel_basis();
    (0..kernel.cols())
        .map(|col| {
            let v = kernel.column(col);
            let mut m = Matrix::zeros(field, n, n);
            for a in 0..n {
                for b in 0..n {
                    m.set(a, b, v[a * n + b].clone());
                }
            }
            m
        })
        .collect()
}

/// Structure constants `c[i][j]` of `End(J_n)` in the basis `J^0, ..., J^{n-1}`,
/// if that is a basis of the commutant; products are actual matrix products.
pub fn jordan_end_table(field: Field, n: usize) -> Option<Vec<Vec<Vec<Scalar>>>> {
    let j = jordan(field, n);
    let end = commutant(&j);
    let mut powers = vec![Matrix::identity(field, n)];
    for _ in 1..n {
        let next = powers.last().unwrap() * &j;
        powers.push(next);
    }
    let flat = |m: &Matrix| m.entries().to_vec();
    let frame = Matrix::from_columns(field, n * n, &powers.iter().map(flat).collect::<Vec<_>>());
    let all: Vec<Vec<Scalar>> = powers.iter().chain(&end).map(flat).collect();
    if end.len() != n || frame.rank() != n || Matrix::from_columns(field, n * n, &all).rank() != n {
        return None;
    }
    let coords = |m: &Matrix| -> Vec<Scalar> {
        frame
            .solve(&Matrix::column_vector(field, &flat(m)))
            .unwrap()
            .expect("products of powers are powers")
            .particular
            .column(0)
    };
    Some(
        powers
            .iter()
            .map(|a| powers.iter().map(|b| coords(&(a * b))).collect())
            .collect(),
    )
}

/// A random Nakayama algebra: a line or a cycle on at most three vertices,
/// with all paths of a fixed length killed (always on cycles, sometimes on lines).
pub fn random_nakayama<R: Rng + ?Sized>(rng: &mut R, field: Field) -> Arc<PathAlgebra> {
    let n = rng.gen_range(1..=3usize);
    let cyclic = rng.gen_bool(0.5);
    let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let mut arrows = Vec::new();
    for i in 0..n {
        if i + 1 < n || cyclic {
            arrows.push((format!("a{i}"), labels[i].clone(), labels[(i + 1) % n].clone()));
        }
    }
    let label_refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
    let arrow_refs: Vec<(&str, &str, &str)> = arrows
        .iter()
        .map(|(a, s, t)| (a.as_str(), s.as_str(), t.as_str()))
        .collect();
    let q = Quiver::build(&label_refs, &arrow_refs).unwrap();
    let cut = rng.gen_range(2..=4usize);
    let mut relations = Vec::new();
    if cyclic || rng.gen_bool(0.5) {
        for start in 0..n {
            // Walk `cut` arrows from `start`; every vertex has at most one arrow out.
            let mut walk = Vec::new();
            let mut v = start;
            while walk.len() < cut {
                match q.arrows_from(v).next() {
                    Some(a) => {
                        walk.push(a);
                        v = q.arrow(a).target;
                    }
                    None => break,
                }
            }
            if walk.len() == cut {
                relations.push(Relation::monomial(Path::new(&q, walk).unwrap(), field));
            }
        }
    }
    Arc::new(PathAlgebra::build(BoundQuiver::new(q, relations, field).unwrap()).unwrap())
}

/// Every indecomposable module of a Nakayama algebra: the quotients
/// `P_i / rad^k P_i` for `k >= 1`.
pub fn nakayama_indecomposables(a: &Arc<PathAlgebra>) -> Vec<Rep> {
    let mut out = Vec::new();
    for i in 0..a.vertex_count() {
        let p = projective(a, i);
        let series = radical_series(&p);
        for layer in series.iter().skip(1) {
            let q = quotient(&p, layer).unwrap();
            let m = q.target().clone();
            if !m.is_zero() && !out.contains(&m) {
                out.push(m);
            }
        }
    }
    out
}

/// Full faithfulness of `- (x)_A Z` checked pair by pair on indecomposables:
/// the induced map on Hom must be a bijection. By additivity this covers
/// every module that is a sum of the given ones.
pub fn fully_faithful_by_brute_force(z: &AObject, indecomposables: &[Rep]) -> bool {
    let field = z.algebra().field();
    let t: Vec<_> = indecomposables.iter().map(|m| tensor_apply(z, m).unwrap()).collect();
    for (x, tx) in indecomposables.iter().zip(&t) {
        for (y, ty) in indecomposables.iter().zip(&t) {
            let source = hom_space(x, y).unwrap();
            let target_dim = hom_space(tx.rep(), ty.rep()).unwrap().len();
            if source.len() != target_dim {
                return false;
            }
            if source.is_empty() {
                continue;
            }
            let images: Vec<Vec<Scalar>> = source
                .iter()
                .map(|f| tensor_map(z, f, tx, ty).unwrap().flatten())
                .collect();
            let ambient = images[0].len();
            if Matrix::from_columns(field, ambient, &images).rank() != source.len() {
                return false;
            }
        }
    }
    true
}

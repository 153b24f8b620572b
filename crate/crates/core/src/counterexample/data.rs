//! The modules, algebras and maps of the non-representable example.
//!
//! The target category is right modules over the quiver
//! `1 <-x- 3 -y-> 2`, `2 -z-> 3` with no relations. `L_i` are its simples,
//! `M` is the non-split extension of `L_3` by `L_2`, and `N` the non-split
//! extension of `M` by `L_3`.

use std::sync::Arc;

use crate::algebra::{AlgebraHom, BoundQuiver, PathAlgebra, Quiver};
use crate::linalg::{Field, Matrix};
use crate::rep::{ModuleBase, Rep, RepMap};

/// Everything the example is built from.
#[derive(Clone, Debug)]
pub struct Setting {
    pub field: Field,
    pub base: ModuleBase,
    pub l1: Rep,
    pub l2: Rep,
    pub l3: Rep,
    pub m: Rep,
    pub n: Rep,
    /// `a: M -> L_3`, the top of `M`.
    pub a: RepMap,
    /// `b: L_3 -> N`, the socle of `N`.
    pub b: RepMap,
    /// `c: N -> M`, the quotient by the socle.
    pub c: RepMap,
    /// The nilpotent endomorphism `b a c` of `N`.
    pub bac: RepMap,
    /// Path algebra of `1 <- 2 <- 3` (arrows `beta: 2 -> 1`, `gamma: 3 -> 2`).
    pub algebra_b: Arc<PathAlgebra>,
    /// Path algebra of `1`, `2 <- 3` (arrow `gamma: 3 -> 2`).
    pub algebra_a: Arc<PathAlgebra>,
    /// `B -> A`, killing `beta`.
    pub alpha: AlgebraHom,
}

pub fn quiver_z() -> Quiver {
    Quiver::build(
        &["1", "2", "3"],
        &[("x", "3", "1"), ("y", "3", "2"), ("z", "2", "3")],
    )
    .expect("valid quiver")
}

pub fn algebra_b(field: Field) -> Arc<PathAlgebra> {
    let q = Quiver::build(&["1", "2", "3"], &[("beta", "2", "1"), ("gamma", "3", "2")]).expect("valid quiver");
    Arc::new(PathAlgebra::build(BoundQuiver::free(q, field)).expect("finite-dimensional"))
}

pub fn algebra_a(field: Field) -> Arc<PathAlgebra> {
    let q = Quiver::build(&["1", "2", "3"], &[("gamma", "3", "2")]).expect("valid quiver");
    Arc::new(PathAlgebra::build(BoundQuiver::free(q, field)).expect("finite-dimensional"))
}

fn m(field: Field, rows: &[Vec<i64>]) -> Matrix {
    Matrix::from_i64(field, rows)
}

fn empty(field: Field, rows: usize, cols: usize) -> Matrix {
    Matrix::zeros(field, rows, cols)
}

impl Setting {
    pub fn new(field: Field) -> Setting {
        let base = ModuleBase::Quiver(Arc::new(BoundQuiver::free(quiver_z(), field)));
        let l1 = Rep::simple(base.clone(), 0);
        let l2 = Rep::simple(base.clone(), 1);
        let l3 = Rep::simple(base.clone(), 2);
        let mm = Rep::from_named(base.clone(), vec![0, 1, 1], &[("z", m(field, &[vec![1]]))]).expect("M");
        // N_3 has basis (n3, m3): z sends m3 to the generator of N_2, y sends
        // that generator to n3.
        let n = Rep::from_named(
            base.clone(),
            vec![0, 1, 2],
            &[("z", m(field, &[vec![0, 1]])), ("y", m(field, &[vec![1], vec![0]]))],
        )
        .expect("N");
        let a = RepMap::new(
            mm.clone(),
            l3.clone(),
            vec![empty(field, 0, 0), empty(field, 0, 1), m(field, &[vec![1]])],
        )
        .expect("a");
        let b = RepMap::new(
            l3.clone(),
            n.clone(),
            vec![empty(field, 0, 0), empty(field, 1, 0), m(field, &[vec![1], vec![0]])],
        )
        .expect("b");
        let c = RepMap::new(
            n.clone(),
            mm.clone(),
            vec![empty(field, 0, 0), m(field, &[vec![1]]), m(field, &[vec![0, 1]])],
        )
        .expect("c");
        let bac = b.after(&a).and_then(|ba| ba.after(&c)).expect("composable");

        let algebra_b = algebra_b(field);
        let algebra_a = algebra_a(field);
        let gamma = algebra_a.arrow(0);
        let alpha = AlgebraHom::from_arrow_images(
            algebra_b.clone(),
            algebra_a.clone(),
            vec![0, 1, 2],
            vec![algebra_a.zero(), gamma],
        )
        .expect("alpha");
        Setting {
            field,
            base,
            l1,
            l2,
            l3,
            m: mm,
            n,
            a,
            b,
            c,
            bac,
            algebra_b,
            algebra_a,
            alpha,
        }
    }
}

use std::sync::Arc;

use ncdef_core::algebra::{BoundQuiver, PathAlgebra, Quiver};
use ncdef_core::counterexample::Setting;
use ncdef_core::linalg::SearchConfig;
use ncdef_core::rep::{
    direct_sum, hom_dim, hom_space, is_isomorphic, loewy_length_of, projective, projective_cover, radical,
    radical_on_map, socle, top, IsoVerdict, ModuleBase, Rep, RepMap,
};
use ncdef_core::{Field, Matrix};

fn setting() -> Setting {
    Setting::new(Field::Rationals)
}

fn base_b(s: &Setting) -> ModuleBase {
    ModuleBase::Algebra(s.algebra_b.clone())
}

#[test]
fn projective_of_linear_quiver_has_full_support() {
    let s = setting();
    let p1 = projective(&s.algebra_b, 0);
    assert_eq!(p1.dims(), &[1, 1, 1]);
    let p1a = projective(&s.algebra_a, 0);
    assert_eq!(p1a.dims(), &[1, 0, 0]);
    let p2a = projective(&s.algebra_a, 1);
    assert_eq!(p2a.dims(), &[0, 1, 1]);
}

#[test]
fn projectives_of_semisimple_algebra_are_simple() {
    let k3 = Arc::new(PathAlgebra::semisimple(Field::Rationals, 3));
    for i in 0..3 {
        assert_eq!(projective(&k3, i), Rep::simple(ModuleBase::Algebra(k3.clone()), i));
    }
}

#[test]
fn top_of_projective_is_simple() {
    let s = setting();
    for i in 0..3 {
        let p = projective(&s.algebra_b, i);
        let t = top(&p);
        assert_eq!(t.target(), &Rep::simple(base_b(&s), i));
    }
}

#[test]
fn homs_between_simples() {
    let s = setting();
    let simples = [&s.l1, &s.l2, &s.l3];
    for (i, a) in simples.iter().enumerate() {
        for (j, b) in simples.iter().enumerate() {
            assert_eq!(hom_dim(a, b).unwrap(), usize::from(i == j));
        }
    }
}

#[test]
fn end_of_n_is_dual_numbers() {
    let s = setting();
    let end = hom_space(&s.n, &s.n).unwrap();
    assert_eq!(end.len(), 2);
    assert!(!s.bac.is_zero());
    assert!(s.bac.after(&s.bac).unwrap().is_zero());
    // identity and bac span End(N)
    let mut vectors: Vec<Vec<_>> = end.iter().map(|f| f.flatten()).collect();
    vectors.push(RepMap::identity(&s.n).flatten());
    vectors.push(s.bac.flatten());
    let cols = Matrix::from_columns(Field::Rationals, vectors[0].len(), &vectors);
    assert_eq!(cols.rank(), 2);
}

#[test]
fn hom_from_projective_is_component() {
    let s = setting();
    let m = projective(&s.algebra_b, 0);
    let quotient = top(&m).target().clone();
    for i in 0..3 {
        let p = projective(&s.algebra_b, i);
        assert_eq!(hom_dim(&p, &m).unwrap(), m.dims()[i]);
        assert_eq!(hom_dim(&p, &quotient).unwrap(), quotient.dims()[i]);
    }
}

#[test]
fn kernel_image_cokernel_of_trivial_maps() {
    let s = setting();
    let id = RepMap::identity(&s.n);
    assert!(id.kernel().source().is_zero());
    assert_eq!(id.image().source().dims(), s.n.dims());
    let zero = RepMap::zero(&s.n, &s.m);
    assert_eq!(zero.kernel().source().dims(), s.n.dims());
    assert_eq!(zero.cokernel().target().dims(), s.m.dims());
}

#[test]
fn kernel_of_cover_of_first_simple() {
    let s = setting();
    let base = base_b(&s);
    let s1 = Rep::simple(base, 0);
    let (p, cover) = projective_cover(&s1).unwrap();
    assert_eq!(p.summands(), &[0]);
    assert_eq!(p.rep(), &projective(&s.algebra_b, 0));
    let k = cover.kernel();
    let p2 = projective(&s.algebra_b, 1);
    let verdict = is_isomorphic(k.source(), &p2, &SearchConfig::default()).unwrap();
    assert!(verdict.is_isomorphic());
}

#[test]
fn radical_of_first_projective() {
    let s = setting();
    let p1 = projective(&s.algebra_b, 0);
    let rad = radical(&p1);
    let p2 = projective(&s.algebra_b, 1);
    assert!(is_isomorphic(rad.source(), &p2, &SearchConfig::default()).unwrap().is_isomorphic());
    let semisimple = Rep::with_zero_action(base_b(&s), vec![2, 1, 3]);
    assert!(radical(&semisimple).source().is_zero());
}

#[test]
fn radical_of_n() {
    let s = setting();
    // Images of z and y inside N: all of N_2 and the line n3.
    assert_eq!(radical(&s.n).source().dims(), &[0, 1, 1]);
    assert_eq!(socle(&s.n).source().dims(), &[0, 0, 1]);
}

#[test]
fn radical_on_maps() {
    let s = setting();
    let s1 = Rep::simple(base_b(&s), 0);
    let (_, cover) = projective_cover(&s1).unwrap();
    let r = radical_on_map(&cover);
    assert_eq!(r.source().dims(), &[0, 1, 1]);
    assert!(r.target().is_zero());
    let id = RepMap::identity(&s.n);
    assert!(radical_on_map(&id).is_iso());
}

#[test]
fn loewy_lengths() {
    let s = setting();
    assert_eq!(loewy_length_of(&projective(&s.algebra_b, 0)), 2);
    assert_eq!(loewy_length_of(&s.n), 2);
    assert_eq!(loewy_length_of(&s.m), 1);
    assert_eq!(loewy_length_of(&s.l1), 0);
    assert_eq!(loewy_length_of(&Rep::zero(s.base.clone())), 0);
}

#[test]
fn cover_of_projective_is_identity_up_to_iso() {
    let s = setting();
    let p = projective(&s.algebra_b, 1);
    let (q, cover) = projective_cover(&p).unwrap();
    assert_eq!(q.summands(), &[1]);
    assert!(cover.is_iso());
}

#[test]
fn cover_needs_an_algebra() {
    let s = setting();
    assert!(projective_cover(&s.n).is_err());
}

#[test]
fn isomorphisms_of_sums() {
    let s = setting();
    let a = direct_sum(&[&s.l1, &s.l2]).unwrap().rep;
    let b = direct_sum(&[&s.l2, &s.l1]).unwrap().rep;
    assert!(is_isomorphic(&a, &b, &SearchConfig::default()).unwrap().is_isomorphic());
    match is_isomorphic(&s.n, &s.n, &SearchConfig::default()).unwrap() {
        IsoVerdict::Isomorphic(f) => assert!(f.is_iso()),
        other => panic!("{other:?}"),
    }
    // L_2 + L_3 has the dimension vector of M but is not isomorphic to it.
    let split = direct_sum(&[&s.l2, &s.l3]).unwrap().rep;
    assert_eq!(
        is_isomorphic(&split, &s.m, &SearchConfig::default()).unwrap(),
        IsoVerdict::NotIsomorphic
    );
}

#[test]
fn arrow_convention() {
    // A single arrow a: 1 -> 2 acts from the component at 2 to the one at 1, so
    // e_1 A (paths ending at 1) is simple and e_2 A has dims (1, 1).
    let f = Field::Rationals;
    let q = Quiver::build(&["1", "2"], &[("a", "1", "2")]).unwrap();
    let alg = Arc::new(PathAlgebra::build(BoundQuiver::free(q, f)).unwrap());
    assert_eq!(projective(&alg, 0).dims(), &[1, 0]);
    let p2 = projective(&alg, 1);
    assert_eq!(p2.dims(), &[1, 1]);
    assert_eq!(p2.map(0).rows(), 1);
    assert!(!p2.map(0).is_zero());
}

use std::sync::Arc;

use ncdef_core::algebra::{AlgebraHom, BoundQuiver, PathAlgebra, Quiver};
use ncdef_core::aobjects::{
    deformations_equivalent, hom_module, lambda_iso, pullback, pushforward, tensor_apply, tensor_apply_with,
    AObject, DeformationElement, FlatVerdict, Presentation,
};
use ncdef_core::counterexample::Setting;
use ncdef_core::linalg::SearchConfig;
use ncdef_core::rep::{hom_dim, is_isomorphic, projective, ModuleBase, Rep, RepMap};
use ncdef_core::Field;

fn setting() -> Setting {
    Setting::new(Field::Rationals)
}

fn cfg() -> SearchConfig {
    SearchConfig::default()
}

fn algebra_as_module(a: &Arc<PathAlgebra>) -> Rep {
    let parts: Vec<Rep> = (0..a.vertex_count()).map(|i| projective(a, i)).collect();
    let refs: Vec<&Rep> = parts.iter().collect();
    ncdef_core::rep::direct_sum(&refs).unwrap().rep
}

#[test]
fn flatness_follows_the_mono_criterion() {
    let s = setting();
    let flat = s.a_object(&s.b, &s.l1).unwrap();
    assert_eq!(flat.flatness().unwrap(), FlatVerdict::Flat);
    let zero = RepMap::zero(&s.l3, &s.n);
    let not_flat = s.a_object(&zero, &s.l1).unwrap();
    match not_flat.flatness().unwrap() {
        // Tor_1(S_2, Z) picks up the kernel of sigma, which is L_3.
        FlatVerdict::NotFlat { simple, tor_dim } => {
            assert_eq!(simple, 1);
            assert_eq!(tor_dim, 1);
        }
        FlatVerdict::Flat => panic!("zero sigma must not be flat"),
    }
    let c = s.classes().unwrap();
    let (theta_bu, _) = s.theta_of_class(&c, &c.bu).unwrap();
    assert!(theta_bu.is_flat().unwrap());
    let zero_tau = RepMap::zero(&s.n, &s.l1);
    let b_not_flat = s.b_object(&s.b, &zero_tau).unwrap();
    assert!(!b_not_flat.is_flat().unwrap());
}

#[test]
fn tensoring_the_free_module_gives_back_the_carrier() {
    let s = setting();
    let z = s.a_object(&s.b, &s.l1).unwrap();
    let free = algebra_as_module(z.algebra());
    let t = tensor_apply(&z, &free).unwrap();
    assert!(is_isomorphic(t.rep(), z.carrier(), &cfg()).unwrap().is_isomorphic());
}

#[test]
fn tensoring_simples_gives_the_reductions() {
    let s = setting();
    let c = s.classes().unwrap();
    let (z, _) = s.theta_of_class(&c, &c.vbar).unwrap();
    let base = ModuleBase::Algebra(z.algebra().clone());
    for i in 0..3 {
        let t = tensor_apply(&z, &Rep::simple(base.clone(), i)).unwrap();
        let red = z.reduction(i);
        assert!(is_isomorphic(t.rep(), red.target(), &cfg()).unwrap().is_isomorphic());
    }
    // The reductions are the collection (L_1, M, L_3).
    let sigma = s.collection();
    for (i, r) in z.reductions().iter().enumerate() {
        assert!(is_isomorphic(r, &sigma[i], &cfg()).unwrap().is_isomorphic());
    }
}

#[test]
fn resolution_of_the_first_simple_maps_to_the_class() {
    // T applied to 0 -> P_2 -> P_1 -> S_1 -> 0 over theta(x) is the sequence of x.
    let s = setting();
    let c = s.classes().unwrap();
    for x in [&c.bu, &c.vbar] {
        let (z, ses) = s.theta_of_class(&c, x).unwrap();
        let base = ModuleBase::Algebra(z.algebra().clone());
        let t = tensor_apply(&z, &Rep::simple(base, 0)).unwrap();
        // T(S_1) = coker(N -> W) = L_1.
        assert!(is_isomorphic(t.rep(), &s.l1, &cfg()).unwrap().is_isomorphic());
        assert_eq!(&c.ext_l1_n.class_of(&ses).unwrap(), x);
    }
}

#[test]
fn padded_presentations_give_isomorphic_results() {
    let s = setting();
    let c = s.classes().unwrap();
    let (z, _) = s.theta_of_class(&c, &c.vbar).unwrap();
    let b = z.algebra().clone();
    let m = projective(&b, 0);
    let minimal = Presentation::minimal(&m).unwrap();
    let beta = b.arrow(0);
    // extra generator at vertex 2 mapped to the element beta of P_1.
    let padded = minimal.padded(&[(1, vec![beta])]).unwrap();
    let t1 = tensor_apply_with(&z, minimal).unwrap();
    let t2 = tensor_apply_with(&z, padded).unwrap();
    assert!(is_isomorphic(t1.rep(), t2.rep(), &cfg()).unwrap().is_isomorphic());
}

#[test]
fn theta_of_the_two_classes_are_not_isomorphic() {
    let s = setting();
    let c = s.classes().unwrap();
    let (zu, _) = s.theta_of_class(&c, &c.bu).unwrap();
    let (zv, _) = s.theta_of_class(&c, &c.vbar).unwrap();
    assert!(matches!(
        zu.isomorphic_to(&zv, &cfg()).unwrap(),
        ncdef_core::rep::IsoVerdict::NotIsomorphic
    ));
    assert!(zu.isomorphic_to(&zu, &cfg()).unwrap().is_isomorphic());
}

#[test]
fn vbar_and_vbar_plus_bu_are_equivalent_deformations() {
    let s = setting();
    let c = s.classes().unwrap();
    let (z1, ses1) = s.theta_of_class(&c, &c.vbar).unwrap();
    let (z2, ses2) = s.theta_of_class(&c, &c.vbar_plus_bu()).unwrap();
    let d1 = s.b_element(&z1, &ses1).unwrap();
    let d2 = s.b_element(&z2, &ses2).unwrap();
    let verdict = deformations_equivalent(&d1, &d2, &cfg()).unwrap();
    let psi = match verdict {
        ncdef_core::aobjects::Equivalence::Equivalent(psi) => psi,
        other => panic!("expected an equivalence, got {other:?}"),
    };
    // On the N summand the witness is Id + bac up to the component embedding.
    let on_n = z2.projection(1).after(&psi).unwrap().after(z1.inclusion(1)).unwrap();
    let id_plus = RepMap::identity(&s.n).add(&s.bac).unwrap();
    assert_eq!(on_n.blocks(), id_plus.blocks());
    assert!(deformations_equivalent(&d1, &d1, &cfg()).unwrap().is_equivalent());
}

#[test]
fn theta_bu_and_theta_vbar_are_distinct_deformations() {
    let s = setting();
    let c = s.classes().unwrap();
    let (z1, ses1) = s.theta_of_class(&c, &c.bu).unwrap();
    let (z2, ses2) = s.theta_of_class(&c, &c.vbar).unwrap();
    let d1 = s.b_element(&z1, &ses1).unwrap();
    let d2 = s.b_element(&z2, &ses2).unwrap();
    assert!(!deformations_equivalent(&d1, &d2, &cfg()).unwrap().is_equivalent());
}

#[test]
fn the_a_element_is_a_deformation() {
    let s = setting();
    let d = s.a_element().unwrap();
    assert_eq!(d.phi().len(), 3);
    // Restricting theta(x) along alpha gives back the A-object.
    let c = s.classes().unwrap();
    let (z, _) = s.theta_of_class(&c, &c.vbar).unwrap();
    let restricted = pullback(&s.alpha, &z).unwrap();
    assert!(restricted.isomorphic_to(d.object(), &cfg()).unwrap().is_isomorphic());
}

#[test]
fn non_flat_objects_are_rejected_as_deformations() {
    let s = setting();
    let zero = RepMap::zero(&s.l3, &s.n);
    let obj = s.a_object(&zero, &s.l1).unwrap();
    let maps = vec![RepMap::identity(&s.l1), s.c.clone(), RepMap::identity(&s.l3)];
    assert!(DeformationElement::from_component_maps(obj, s.collection(), maps).is_err());
}

#[test]
fn pushforward_along_the_identity_is_the_same_object() {
    let s = setting();
    let z = s.a_object(&s.b, &s.l1).unwrap();
    let id = AlgebraHom::identity(z.algebra().clone());
    let p = pushforward(&id, &z).unwrap();
    assert_eq!(p.rho(), z.rho());
    let q = pullback(&id, &z).unwrap();
    assert!(q.isomorphic_to(&z, &cfg()).unwrap().is_isomorphic());
}

#[test]
fn conjugate_homs_give_isomorphic_pullbacks() {
    let f = Field::Rationals;
    let quiver = Quiver::build(&["1", "2"], &[("a", "1", "2")]).unwrap();
    let a = Arc::new(PathAlgebra::build(BoundQuiver::free(quiver, f)).unwrap());
    let alpha = AlgebraHom::identity(a.clone());
    assert!(alpha.check().is_none());
    let u = a.add(&a.one(), &a.arrow(0));
    let beta = alpha.conjugate_by(&u).unwrap();
    assert!(beta.check().is_none());
    assert_ne!(beta.images(), alpha.images());
    // Z = (k --1--> k) in vector spaces.
    let target = ModuleBase::Quiver(Arc::new(BoundQuiver::free(Quiver::discrete(1), f)));
    let line = Rep::with_zero_action(target, vec![1]);
    let z = AObject::from_components(
        a.clone(),
        vec![line.clone(), line.clone()],
        vec![RepMap::identity(&line)],
    )
    .unwrap();
    let (pa, pb, lambda) = lambda_iso(&alpha, &beta, &u, &z).unwrap();
    assert!(lambda.is_iso());
    for k in 0..a.dim() {
        let lhs = lambda.after(&pa.rho()[k]).unwrap();
        let rhs = pb.rho()[k].after(&lambda).unwrap();
        assert_eq!(lhs, rhs);
    }
    assert!(pa.isomorphic_to(&z, &cfg()).unwrap().is_isomorphic());
}

#[test]
fn partial_adjunction_on_the_example() {
    let s = setting();
    let c = s.classes().unwrap();
    let (z, _) = s.theta_of_class(&c, &c.vbar).unwrap();
    let base = ModuleBase::Algebra(z.algebra().clone());
    let h = hom_module(&z, &s.n).unwrap();
    for i in 0..3 {
        for m in [Rep::simple(base.clone(), i), projective(z.algebra(), i)] {
            let t = tensor_apply(&z, &m).unwrap();
            assert_eq!(hom_dim(t.rep(), &s.n).unwrap(), hom_dim(&m, &h).unwrap());
        }
    }
}

use std::sync::Arc;

use ncdef_core::algebra::PathAlgebra;
use ncdef_core::aobjects::{
    hom_module, lambda_iso, pullback, pushforward, tensor_apply, tensor_apply_with, tensor_map, AObject,
    Presentation,
};
use ncdef_core::linalg::SearchConfig;
use ncdef_core::random::{
    random_a_object, random_algebra, random_automorphism, random_collection, random_element_between,
    random_flat_object, random_module, random_rep, random_unit, AlgebraShape,
};
use ncdef_core::rep::{hom_dim, is_isomorphic, projective_cover, ModuleBase, Rep};
use ncdef_core::Field;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn f5() -> Field {
    Field::prime(5).unwrap()
}

fn small() -> AlgebraShape {
    AlgebraShape {
        max_vertices: 2,
        max_arrows: 2,
        max_dim: 6,
        loops: true,
    }
}

/// A random algebra with a random flat object over a random target quiver.
fn flat_instance(seed: u64) -> (ChaCha8Rng, Arc<PathAlgebra>, AObject) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let a = random_algebra(&mut rng, f5(), &small());
        let sigma = random_collection(&mut rng, f5(), a.vertex_count(), 2).unwrap();
        if let Some(z) = random_flat_object(&mut rng, &a, &sigma).unwrap() {
            return (rng, a, z);
        }
    }
}

fn target_module(rng: &mut ChaCha8Rng, z: &AObject) -> Rep {
    let base = z.target_base().clone();
    loop {
        let dims: Vec<usize> = (0..base.vertex_count()).map(|_| rng.gen_range(0..=2)).collect();
        if let Some(w) = random_rep(rng, &base, &dims) {
            return w;
        }
    }
}

fn cfg() -> SearchConfig {
    SearchConfig::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn tensor_does_not_depend_on_the_presentation(seed in any::<u64>()) {
        let (mut rng, a, z) = flat_instance(seed);
        let m = random_module(&mut rng, &a, 5).unwrap();
        let minimal = Presentation::minimal(&m).unwrap();
        let gens = minimal.p0.summands().to_vec();
        let extra: Vec<_> = (0..rng.gen_range(1..=2))
            .map(|_| {
                let k = rng.gen_range(0..a.vertex_count());
                let y = gens.iter().map(|&i| random_element_between(&mut rng, &a, k, i)).collect();
                (k, y)
            })
            .collect();
        let padded = minimal.padded(&extra).unwrap();
        prop_assert_eq!(padded.cover.target(), &m);
        let t1 = tensor_apply_with(&z, minimal).unwrap();
        let t2 = tensor_apply_with(&z, padded).unwrap();
        prop_assert!(is_isomorphic(t1.rep(), t2.rep(), &cfg()).unwrap().is_isomorphic());
    }

    #[test]
    fn partial_adjunction_dimensions(seed in any::<u64>()) {
        let (mut rng, a, z) = flat_instance(seed);
        let m = random_module(&mut rng, &a, 5).unwrap();
        let w = target_module(&mut rng, &z);
        let t = tensor_apply(&z, &m).unwrap();
        let h = hom_module(&z, &w).unwrap();
        prop_assert_eq!(hom_dim(t.rep(), &w).unwrap(), hom_dim(&m, &h).unwrap());
    }

    #[test]
    fn flatness_is_exactness_on_simples(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_algebra(&mut rng, f5(), &small());
        let sigma = random_collection(&mut rng, f5(), a.vertex_count(), 3).unwrap();
        let z = if rng.gen_bool(0.5) {
            random_a_object(&mut rng, &a, &sigma).unwrap()
        } else {
            match random_flat_object(&mut rng, &a, &sigma).unwrap() {
                Some(z) => z,
                None => random_a_object(&mut rng, &a, &sigma).unwrap(),
            }
        };
        let mut exact = true;
        for i in 0..a.vertex_count() {
            let s = Rep::simple(ModuleBase::Algebra(a.clone()), i);
            let (_, cover) = projective_cover(&s).unwrap();
            let incl = cover.kernel();
            let t_omega = tensor_apply(&z, incl.source()).unwrap();
            let t_p = tensor_apply(&z, incl.target()).unwrap();
            exact &= tensor_map(&z, &incl, &t_omega, &t_p).unwrap().is_mono();
        }
        prop_assert_eq!(z.is_flat().unwrap(), exact);
    }

    #[test]
    fn flat_objects_are_free_on_the_left(seed in any::<u64>()) {
        let (_, a, z) = flat_instance(seed);
        prop_assert!(z.is_flat().unwrap());
        let total: usize = z
            .reductions()
            .iter()
            .enumerate()
            .map(|(i, r)| r.dim() * a.basis().iter().filter(|p| p.source() == i).count())
            .sum();
        prop_assert_eq!(z.carrier().dim(), total);
    }

    #[test]
    fn conjugate_homs_have_isomorphic_pullbacks(seed in any::<u64>()) {
        let (mut rng, a, z) = flat_instance(seed);
        let alpha = random_automorphism(&mut rng, &a).unwrap();
        let u = random_unit(&mut rng, &a);
        let beta = alpha.conjugate_by(&u).unwrap();
        let (pa, pb, lambda) = lambda_iso(&alpha, &beta, &u, &z).unwrap();
        prop_assert!(lambda.is_iso());
        for k in 0..a.dim() {
            prop_assert_eq!(lambda.after(&pa.rho()[k]).unwrap(), pb.rho()[k].after(&lambda).unwrap());
        }
        prop_assert!(pullback(&alpha, &z).unwrap().isomorphic_to(&pullback(&beta, &z).unwrap(), &cfg()).unwrap().is_isomorphic());
    }

    #[test]
    fn pullback_is_left_adjoint_to_pushforward(seed in any::<u64>()) {
        let (mut rng, a, z) = flat_instance(seed);
        let alpha = random_automorphism(&mut rng, &a).unwrap();
        let sigma = ncdef_core::deformation::Collection::new(z.reductions()).ok();
        let w = match sigma.and_then(|s| random_flat_object(&mut rng, &a, &s).ok().flatten()) {
            Some(w) => w,
            None => z.clone(),
        };
        let left = pullback(&alpha, &z).unwrap().bimodule_homs(&w).unwrap().len();
        let right = z.bimodule_homs(&pushforward(&alpha, &w).unwrap()).unwrap().len();
        prop_assert_eq!(left, right);
    }
}

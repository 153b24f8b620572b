use std::sync::Arc;

use ncdef_core::algebra::PathAlgebra;
use ncdef_core::random::{random_algebra, random_map, random_module, AlgebraShape};
use ncdef_core::rep::{
    direct_sum, factor_through_mono, hom_dim, hom_space, loewy_length_of, projective, projective_cover,
    radical_on_map, top, ModuleBase, Rep,
};
use ncdef_core::Field;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn setup(seed: u64) -> (ChaCha8Rng, Arc<PathAlgebra>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = random_algebra(&mut rng, Field::prime(5).unwrap(), &AlgebraShape::default());
    (rng, a)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn hom_dimensions_are_additive(seed in any::<u64>()) {
        let (mut rng, a) = setup(seed);
        let x = random_module(&mut rng, &a, 6).unwrap();
        let y = random_module(&mut rng, &a, 6).unwrap();
        let z = random_module(&mut rng, &a, 6).unwrap();
        let sum = direct_sum(&[&x, &y]).unwrap().rep;
        prop_assert_eq!(hom_dim(&sum, &z).unwrap(), hom_dim(&x, &z).unwrap() + hom_dim(&y, &z).unwrap());
        prop_assert_eq!(hom_dim(&z, &sum).unwrap(), hom_dim(&z, &x).unwrap() + hom_dim(&z, &y).unwrap());
    }

    #[test]
    fn homs_from_projectives_are_components(seed in any::<u64>()) {
        let (mut rng, a) = setup(seed);
        let m = random_module(&mut rng, &a, 8).unwrap();
        for i in 0..a.vertex_count() {
            prop_assert_eq!(hom_dim(&projective(&a, i), &m).unwrap(), m.dims()[i]);
        }
    }

    #[test]
    fn radical_preserves_monos_and_epis(seed in any::<u64>()) {
        let (mut rng, a) = setup(seed);
        let x = random_module(&mut rng, &a, 6).unwrap();
        let y = random_module(&mut rng, &a, 6).unwrap();
        let f = random_map(&mut rng, &x, &y).unwrap();
        let incl = f.image();
        let onto = factor_through_mono(&incl, &f).unwrap();
        for g in [&f, &incl, &onto] {
            let rg = radical_on_map(g);
            if g.is_mono() {
                prop_assert!(rg.is_mono());
            }
            if g.is_epi() {
                prop_assert!(rg.is_epi());
            }
        }
        prop_assert!(radical_on_map(&incl).is_mono());
        prop_assert!(radical_on_map(&onto).is_epi());
    }

    #[test]
    fn loewy_length_bounds_kernels_and_cokernels(seed in any::<u64>()) {
        let (mut rng, a) = setup(seed);
        let x = random_module(&mut rng, &a, 7).unwrap();
        let y = random_module(&mut rng, &a, 7).unwrap();
        let f = random_map(&mut rng, &x, &y).unwrap();
        prop_assert!(loewy_length_of(f.kernel().source()) <= loewy_length_of(&x));
        prop_assert!(loewy_length_of(f.cokernel().target()) <= loewy_length_of(&y));
        prop_assert!(loewy_length_of(&x) <= a.loewy_length());
    }

    #[test]
    fn covers_are_minimal(seed in any::<u64>()) {
        let (mut rng, a) = setup(seed);
        let m = random_module(&mut rng, &a, 8).unwrap();
        let (p, cover) = projective_cover(&m).unwrap();
        prop_assert!(cover.is_epi());
        let ker = cover.kernel();
        prop_assert!(top(p.rep()).after(&ker).unwrap().is_zero());
        let tm = top(&m).target().clone();
        for i in 0..a.vertex_count() {
            prop_assert_eq!(p.summands().iter().filter(|&&s| s == i).count(), tm.dims()[i]);
        }
    }

    #[test]
    fn rank_nullity_for_rep_maps(seed in any::<u64>()) {
        let (mut rng, a) = setup(seed);
        let x = random_module(&mut rng, &a, 7).unwrap();
        let y = random_module(&mut rng, &a, 7).unwrap();
        let f = random_map(&mut rng, &x, &y).unwrap();
        let (k, i, c) = (f.kernel(), f.image(), f.cokernel());
        prop_assert!(f.after(&k).unwrap().is_zero());
        prop_assert!(c.after(&f).unwrap().is_zero());
        for v in 0..a.vertex_count() {
            prop_assert_eq!(x.dims()[v], k.source().dims()[v] + i.source().dims()[v]);
            prop_assert_eq!(y.dims()[v], i.source().dims()[v] + c.target().dims()[v]);
        }
    }

    #[test]
    fn hom_space_elements_intertwine(seed in any::<u64>()) {
        let (mut rng, a) = setup(seed);
        let x = random_module(&mut rng, &a, 6).unwrap();
        let y = random_module(&mut rng, &a, 6).unwrap();
        let q = a.quiver();
        for f in hom_space(&x, &y).unwrap() {
            for (k, arr) in q.arrows().iter().enumerate() {
                prop_assert_eq!(&y.maps()[k] * f.block(arr.target), f.block(arr.source) * &x.maps()[k]);
            }
        }
    }
}

#[test]
fn simples_of_random_algebras_have_trivial_radical() {
    let (_, a) = setup(7);
    for i in 0..a.vertex_count() {
        let s = Rep::simple(ModuleBase::Algebra(a.clone()), i);
        assert_eq!(loewy_length_of(&s), 0);
        assert!(radical_on_map(&ncdef_core::rep::RepMap::identity(&s)).source().is_zero());
    }
}

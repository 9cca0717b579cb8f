use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use toric_core::cone::{builtin_fan, polygon_from_support, random_interior_support, Surface};
use toric_core::invariants::{virtual_action, virtual_action_cohomological};
use toric_core::numeric::{Rational, Vec2};
use toric_core::polygon::{apply_unimodular_affine, DelzantPolygon, UnimodularAffine};

fn polygon(surface_index: usize, seed: u64) -> DelzantPolygon {
    let fan = builtin_fan(Surface::ALL[surface_index]);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let support = random_interior_support(&fan, &mut rng).unwrap();
    polygon_from_support(&fan, &support).unwrap()
}

fn shear(a: i64, b: i64) -> [[i64; 2]; 2] {
    // [[1, a], [0, 1]] · [[1, 0], [b, 1]]
    [[1 + a * b, a], [b, 1]]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn routes_agree(s in 0usize..5, seed in any::<u64>()) {
        let p = polygon(s, seed);
        prop_assert_eq!(virtual_action(&p), virtual_action_cohomological(&p));
    }

    #[test]
    fn action_is_scale_invariant(s in 0usize..5, seed in any::<u64>(), num in 1i64..50, den in 1i64..50) {
        let p = polygon(s, seed);
        let c = Rational::new(num.into(), den.into());
        prop_assert_eq!(virtual_action(&p), virtual_action(&p.scaled(&c).unwrap()));
    }

    #[test]
    fn action_is_affine_invariant(
        s in 0usize..5,
        seed in any::<u64>(),
        a in -3i64..=3,
        b in -3i64..=3,
        tx in -20i64..20,
        ty in -20i64..20,
    ) {
        let p = polygon(s, seed);
        let map = UnimodularAffine::new(shear(a, b), Vec2::from_ints(tx, ty)).unwrap();
        let q = apply_unimodular_affine(&p, &map);
        prop_assert_eq!(virtual_action(&p), virtual_action(&q));
    }
}

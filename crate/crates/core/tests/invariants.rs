use proptest::prelude::*;
use workbench::batcher::{batcher_sort, bitonic_merge};
use workbench::cellular::{life_step, Boundary, LifeGrid};
use workbench::numtheory::{ext_gcd, modexp};

proptest! {
    #[test]
    fn ext_gcd_identity(x in 1u64..1 << 40, y in 0u64..1 << 40) {
        let (g, a, b) = ext_gcd(x, y).unwrap();
        prop_assert_eq!(a as i128 * x as i128 - b as i128 * y as i128, g as i128);
        prop_assert_eq!(x % g, 0);
        prop_assert_eq!(y % g, 0);
        prop_assert!(a >= 1 && a <= (y / g).max(1));
    }

    #[test]
    fn modexp_matches_repeated_product(x in 0u64..1 << 50, q in 0u64..200, p in 1u64..1 << 50) {
        let want = (0..q).fold(1 % p as u128, |acc, _| acc * (x % p) as u128 % p as u128);
        prop_assert_eq!(modexp(x, q, p) as u128, want);
    }

    #[test]
    fn batcher_sorts_any_power_of_two(k in 0u32..7, seed in any::<u64>()) {
        let v: Vec<u64> = (0..1u64 << k).map(|i| seed.wrapping_mul(i + 1).rotate_left(i as u32) % 50).collect();
        let mut want = v.clone();
        want.sort_unstable();
        prop_assert_eq!(batcher_sort(&v).unwrap().0, want);
    }

    #[test]
    fn merge_of_sorted_lists(mut a in prop::collection::vec(0u8..20, 0..20), mut b in prop::collection::vec(0u8..20, 0..20)) {
        a.sort_unstable();
        b.sort_unstable();
        let mut want = [a.clone(), b.clone()].concat();
        want.sort_unstable();
        prop_assert_eq!(bitonic_merge(&a, &b).unwrap(), want);
    }

    #[test]
    fn life_on_torus_commutes_with_translation(
        cells in prop::collection::vec(any::<bool>(), 48),
        dx in 0usize..8,
        dy in 0usize..6,
    ) {
        let mut g = LifeGrid::new(8, 6, Boundary::Torus).unwrap();
        for (i, &c) in cells.iter().enumerate() {
            g.set(i % 8, i / 8, c);
        }
        prop_assert_eq!(life_step(&g.translated(dx, dy)), life_step(&g).translated(dx, dy));
    }
}

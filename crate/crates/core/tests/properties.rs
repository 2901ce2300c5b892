use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cycle_ekr::compression::{compress_to_fixpoint, is_compressed, min_pairwise_fixed_intersection};
use cycle_ekr::counting::{binomial, f, factorial, m_theorem1, nu, perms_from_generators, s_closed, BigCount};
use cycle_ekr::oracle::brute_force_generated_count;
use cycle_ekr::perm::{common_cycle_count, is_t_intersecting_family, Permutation};
use cycle_ekr::sets::{h_family, SetFamily, SubsetMask};
use cycle_ekr::verify::random_intersecting_family;

fn set_family(max_n: usize, max_sets: usize) -> impl Strategy<Value = SetFamily> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(0..1u64 << n, 0..=max_sets)
            .prop_map(move |bits| SetFamily::from_masks(n, bits.into_iter().map(|b| SubsetMask::from_bits(n, b).unwrap())).unwrap())
    })
}

/// A t-intersecting family of k-subsets, built greedily from random masks.
fn intersecting_k_family(n: usize, k: usize, t: usize, picks: &[u64]) -> SetFamily {
    let candidates = SubsetMask::k_subsets(n, k);
    let mut family = SetFamily::new(n);
    for &p in picks {
        let c = candidates[(p as usize) % candidates.len()];
        if family.iter().all(|m| m.intersection_len(&c) >= t) {
            family.insert(c).unwrap();
        }
    }
    family
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<usize>>()).prop_shuffle().prop_map(|v| Permutation::from_one_line(&v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn upset_is_idempotent_and_monotone(g in set_family(6, 6)) {
        let up = g.upset();
        prop_assert!(up.is_upset());
        prop_assert_eq!(up.upset(), up.clone());
        for m in g.iter() {
            prop_assert!(up.contains(m));
        }
    }

    #[test]
    fn upset_of_minimal_elements_recovers_the_upset(g in set_family(6, 6)) {
        let up = g.upset();
        let min = up.minimal_elements();
        prop_assert!(min.is_antichain());
        prop_assert_eq!(min.upset(), up);
    }

    #[test]
    fn generated_count_matches_walking_sn(g in set_family(6, 5)) {
        let n = g.n();
        prop_assert_eq!(perms_from_generators(&g, n).unwrap(), BigCount::from(brute_force_generated_count(&g, n).unwrap()));
    }

    #[test]
    fn left_compression_preserves_size_and_intersection(
        (n, k, t) in (3usize..=8).prop_flat_map(|n| (Just(n), 1..=n)).prop_flat_map(|(n, k)| (Just(n), Just(k), 1..=k)),
        picks in prop::collection::vec(any::<u64>(), 1..30),
    ) {
        let family = intersecting_k_family(n, k, t, &picks);
        let compressed = family.left_compress();
        prop_assert_eq!(compressed.len(), family.len());
        prop_assert!(compressed.is_t_intersecting(t));
        prop_assert!(compressed.is_left_compressed());
    }

    #[test]
    fn compression_preserves_size_and_intersection(seed in any::<u64>(), n in 3usize..=5, t in 1usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let family = random_intersecting_family(n, t, &mut rng).unwrap();
        let (out, _) = compress_to_fixpoint(&family, t).unwrap();
        prop_assert_eq!(out.len(), family.len());
        prop_assert!(is_t_intersecting_family(&out, t));
        prop_assert!(is_compressed(&out));
        prop_assert!(min_pairwise_fixed_intersection(&out).is_none_or(|m| m >= t));
    }

    #[test]
    fn common_cycle_count_is_symmetric_and_reflexive(p in permutation(7), q in permutation(7)) {
        prop_assert_eq!(common_cycle_count(&p, &q).unwrap(), common_cycle_count(&q, &p).unwrap());
        prop_assert_eq!(common_cycle_count(&p, &p).unwrap(), p.cycle_count());
    }

    #[test]
    fn one_line_round_trips(p in permutation(8)) {
        prop_assert_eq!(Permutation::from_one_line(&p.one_line()).unwrap(), p);
    }
}

#[test]
fn h_families_are_nontrivially_t_intersecting() {
    for t in 1..=4 {
        for i in 2..=8 {
            let h = h_family(t, i).unwrap();
            assert!(h.is_t_intersecting(t), "t={t} i={i}");
            assert!(h.common_intersection().unwrap().len() < t, "t={t} i={i}");
        }
    }
}

#[test]
fn derangement_recurrence() {
    assert_eq!(f(0).unwrap(), BigCount::from(1u64));
    for m in 1..=40i64 {
        let prev = f(m - 1).unwrap().into_biguint() * (m as u64);
        let expected = if m % 2 == 0 { prev + 1u32 } else { prev - 1u32 };
        assert_eq!(f(m).unwrap().into_biguint(), expected);
    }
}

#[test]
fn partition_identity_beyond_the_grid() {
    for m in 0..=25usize {
        let total: num_bigint::BigUint =
            (0..=m).map(|j| binomial(m, j).into_biguint() * f((m - j) as i64).unwrap().into_biguint()).sum();
        assert_eq!(BigCount::from(total), factorial(m));
    }
}

#[test]
fn zero_radius_frontier_is_the_star() {
    for n in 1..=14 {
        for t in 1..=n {
            assert_eq!(m_theorem1(n, t, 0).unwrap(), factorial(n - t));
        }
    }
}

#[test]
fn closed_form_for_s_matches_nu() {
    for t in 1..=3 {
        for n in t + 2..=12 {
            for i in 2..=n - t {
                assert_eq!(s_closed(n, t, i).unwrap(), nu(n, t, i).unwrap(), "n={n} t={t} i={i}");
            }
        }
    }
}

#[test]
fn concurrent_derangement_calls_agree() {
    let expected: Vec<BigCount> = (0..60).map(|m| f(m).unwrap()).collect();
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..8).map(|k| s.spawn(move || (0..60).rev().map(|m| (m, f((m + k) % 60).unwrap())).collect::<Vec<_>>())).collect();
        for (k, h) in handles.into_iter().enumerate() {
            for (m, v) in h.join().unwrap() {
                assert_eq!(v, expected[((m + k as i64) % 60) as usize]);
            }
        }
    });
}

mod common;

use proptest::prelude::*;
use tropfw::matroid::{graphic_matroid, signature_leq, uniform_matroid, IndexSet, Matroid};
use tropfw::trop::d_tr;

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn complete_graph_circuit_counts() {
    // simple cycles of K_p: sum over lengths k of C(p,k)(k-1)!/2
    for p in 3..=6 {
        let expected: usize = (3..=p)
            .map(|k| binomial(p, k) * (1..k).product::<usize>() / 2)
            .sum();
        assert_eq!(
            graphic_matroid(p).unwrap().circuits().len(),
            expected,
            "K_{p}"
        );
    }
}

#[test]
fn uniform_matroid_circuits() {
    let m = uniform_matroid(2, 5).unwrap();
    assert_eq!(m.circuits().len(), binomial(5, 3));
    assert_eq!(m.rank(IndexSet::full(5)), 2);
}

fn k5() -> Matroid {
    graphic_matroid(5).unwrap()
}

proptest! {
    #[test]
    fn closure_is_idempotent_and_extensive(bits in 0u64..(1 << 10)) {
        let m = k5();
        let s = IndexSet::from_bits(bits);
        let c = m.closure(s);
        prop_assert!(s.is_subset(c));
        prop_assert_eq!(m.closure(c), c);
        prop_assert!(m.is_flat(c));
        prop_assert_eq!(m.rank(c), m.rank(s));
        prop_assert!(m.rank(s) <= s.len());
    }

    #[test]
    fn rank_is_submodular(a in 0u64..(1 << 10), b in 0u64..(1 << 10)) {
        let m = k5();
        let (a, b) = (IndexSet::from_bits(a), IndexSet::from_bits(b));
        prop_assert!(m.rank(a.union(b)) + m.rank(a.intersection(b)) <= m.rank(a) + m.rank(b));
    }

    #[test]
    fn random_ultrametrics_lie_in_maximal_cones(seed in any::<u64>(), p in 3usize..=6) {
        let mut rng = common::rng(seed);
        let (w, shortest) = common::random_ultrametric(&mut rng, p);
        let m = graphic_matroid(p).unwrap();
        prop_assert!(m.is_m_ultrametric(&w).unwrap());
        prop_assert!(m.in_maximal_cone(&w).unwrap());
        // circuit gaps of cophenetic vectors are twice the internal edges
        prop_assert!((m.w_min(&w).unwrap() - 2.0 * shortest).abs() < 1e-9);
    }

    #[test]
    fn boundary_witness_sits_at_distance_w_min(seed in any::<u64>(), p in 3usize..=6) {
        let mut rng = common::rng(seed);
        let (w, _) = common::random_ultrametric(&mut rng, p);
        let m = graphic_matroid(p).unwrap();
        let witness = m.boundary_witness(&w).unwrap();
        let wmin = m.w_min(&w).unwrap();
        prop_assert!((d_tr(&w, witness.coords()).unwrap() - wmin).abs() < 1e-9);
        prop_assert!(m.is_m_ultrametric(witness.coords()).unwrap());
        let sw = m.cone_signature(&w).unwrap();
        let sx = m.cone_signature(witness.coords()).unwrap();
        prop_assert!(signature_leq(&sx, &sw).unwrap());
        prop_assert!(sx != sw);
        prop_assert!(m.cone_dimension(&sx) < m.cone_dimension(&sw));
    }

    #[test]
    fn constant_shift_keeps_signature(seed in any::<u64>(), c in -10.0..10.0f64) {
        let mut rng = common::rng(seed);
        let (w, _) = common::random_ultrametric(&mut rng, 5);
        let m = k5();
        let shifted: Vec<f64> = w.iter().map(|v| v + c).collect();
        prop_assert_eq!(m.cone_signature(&w).unwrap(), m.cone_signature(&shifted).unwrap());
    }
}

#[test]
fn text_round_trip_preserves_circuits() {
    for m in [graphic_matroid(4).unwrap(), uniform_matroid(3, 5).unwrap()] {
        let back = Matroid::from_text(&m.to_text()).unwrap();
        assert_eq!(back.circuits(), m.circuits());
        assert_eq!(back.ground_size(), m.ground_size());
    }
}

#[test]
fn invalid_circuit_families_are_rejected() {
    // {0,1} and {1,2} without {0,2} violate circuit elimination
    assert!(Matroid::from_circuits(3, &[vec![0, 1], vec![1, 2]]).is_err());
    assert!(Matroid::from_circuits(3, &[vec![0, 1], vec![0, 1, 2]]).is_err());
    assert!(Matroid::from_circuits(2, &[vec![0, 5]]).is_err());
}

#[test]
fn maximal_flats_of_complete_graphs_are_two_block_partitions() {
    // K_p: maximal proper flats are the cuts into two nonempty vertex blocks
    for p in 3..=6usize {
        let m = graphic_matroid(p).unwrap();
        let expected = (1usize << (p - 1)) - 1;
        assert_eq!(m.maximal_proper_flats().unwrap().len(), expected, "K_{p}");
    }
}

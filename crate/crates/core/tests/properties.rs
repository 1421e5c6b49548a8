use lrbound::oracle::{
    build_power_law_ising, commutator_norm, decay_profile, front_scan, heisenberg_evolve,
    interaction_budget, op_norm, random_hamiltonian, Evolver, FrontMeta, ObservableSpec, Pauli,
    ShortRange,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn pauli() -> impl Strategy<Value = Pauli> {
    prop_oneof![Just(Pauli::X), Just(Pauli::Y), Just(Pauli::Z)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn evolution_preserves_norm_and_composes(
        seed in any::<u64>(),
        site in 0usize..5,
        op in pauli(),
        s in -2.0f64..2.0,
        t in -2.0f64..2.0,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_hamiltonian(5, 8, 3, &mut rng).unwrap();
        let a = ObservableSpec::single(site, op);
        let at = heisenberg_evolve(&h, &a, t).unwrap();
        prop_assert!((op_norm(&at) - 1.0).abs() < 1e-10);
        let ev = Evolver::new(&h).unwrap();
        let twice = ev.evolve(&at, s);
        let once = ev.evolve(&a.matrix(5), s + t);
        prop_assert!(op_norm(&(twice - once)) < 1e-9);
    }

    #[test]
    fn commutator_symmetric_under_time_reversal(
        seed in any::<u64>(),
        (sa, sb) in (0usize..5, 0usize..5),
        (oa, ob) in (pauli(), pauli()),
        t in 0.0f64..3.0,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_hamiltonian(5, 8, 3, &mut rng).unwrap();
        let a = ObservableSpec::single(sa, oa);
        let b = ObservableSpec::single(sb, ob);
        let forward = commutator_norm(&h, &a, &b, t).unwrap();
        let backward = commutator_norm(&h, &b, &a, -t).unwrap();
        prop_assert!((forward - backward).abs() < 1e-10, "{} vs {}", forward, backward);
        prop_assert!(forward <= 2.0 + 1e-12);
    }

    #[test]
    fn decay_profile_non_increasing(l in 3usize..9, alpha in 1.1f64..4.0) {
        let h = build_power_law_ising(l, alpha, 1, 1.0, ShortRange::None).unwrap();
        let mut last = f64::INFINITY;
        for k in 0..=2 * l {
            let f = decay_profile(&h, 0.5 * k as f64);
            prop_assert!(f <= last + 1e-15);
            last = f;
        }
        prop_assert!(interaction_budget(&h) >= decay_profile(&h, 0.0) - 1e-12);
    }
}

#[test]
fn front_decays_with_distance_at_early_times() {
    let h = build_power_law_ising(10, 3.0, 1, 1.0, ShortRange::default()).unwrap();
    let ev = Evolver::new(&h).unwrap();
    let times = [0.25, 0.5, 1.0];
    let meta = FrontMeta {
        sites: 10,
        alpha: 3.0,
        model: "power_law_ising".into(),
        seed: None,
    };
    let probes: Vec<usize> = (1..10).collect();
    let front = front_scan(&ev, &h.lattice, &ObservableSpec::single(0, Pauli::Z), &probes, Pauli::X, &times, meta).unwrap();
    for t in times {
        let values: Vec<f64> = front.rows.iter().filter(|r| r.t == t).map(|r| r.value).collect();
        assert_eq!(values.len(), 9);
        for pair in values.windows(2) {
            assert!(pair[1] <= pair[0], "t = {t}: {values:?}");
        }
    }
}

use numsemi::harness::{
    event_pipeline_trial, run_sweep, with_workers, write_sweep_csv, BoundSpec, EventWindow, SweepConfig, SweepMode,
};
use numsemi::prime::primes_in;
use numsemi::sampler::sample_unconstrained_with;
use numsemi::{
    invariants, k_distinct_sumset, k_fold_sumset, sample_bounded, sample_unconstrained, CyclicSubset, ErConfig,
    GeneratorSet,
};
use proptest::prelude::*;

/// Every residue reachable as a sum of exactly `k` elements of `a`, by
/// direct iteration over all `k`-tuples.
fn brute_fold(q: u64, a: &[u64], k: u64) -> Vec<u64> {
    let mut reach = vec![false; q as usize];
    reach[0] = true;
    for _ in 0..k {
        let mut next = vec![false; q as usize];
        for (r, &on) in reach.iter().enumerate() {
            if on {
                for &x in a {
                    next[(r as u64 + x) as usize % q as usize] = true;
                }
            }
        }
        reach = next;
    }
    (0..q).filter(|&r| reach[r as usize]).collect()
}

fn sampled_set(p: f64, seed: u64, trial: u64) -> GeneratorSet {
    sample_unconstrained(p, seed, trial).unwrap().gens
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn raising_p_only_adds_generators(seed: u64, trial in 0u64..1000, p1 in 0.01f64..0.9, dp in 0.0f64..0.09, m in 1u64..400) {
        let lo = sample_bounded(&ErConfig::new(p1, m, seed).unwrap(), trial);
        let hi = sample_bounded(&ErConfig::new(p1 + dp, m, seed).unwrap(), trial);
        prop_assert!(lo.elements().iter().all(|&a| hi.contains(a)));
    }

    #[test]
    fn unconstrained_sample_is_bounded_prefix(seed: u64, trial in 0u64..1000, p in 0.05f64..0.9, extra in 0u64..50) {
        let trace = sample_unconstrained(p, seed, trial).unwrap();
        let cfg = ErConfig::new(p, trace.stop_index, seed).unwrap();
        prop_assert_eq!(&sample_bounded(&cfg, trial), &trace.gens);
        let longer = sample_bounded(&ErConfig::new(p, trace.stop_index + extra, seed).unwrap(), trial);
        prop_assert_eq!(invariants(&longer).unwrap(), invariants(&trace.gens).unwrap());
    }

    #[test]
    fn generators_past_frobenius_change_nothing(seed: u64, trial in 0u64..1000, p in 0.05f64..0.9, offset in 1u64..500) {
        let trace = sample_unconstrained(p, seed, trial).unwrap();
        let before = invariants(&trace.gens).unwrap();
        let mut grown = trace.gens.clone();
        grown.insert((before.frobenius + 1) as u64 + offset - 1).unwrap();
        prop_assert_eq!(invariants(&grown).unwrap(), before.clone());
        prop_assert!(before.frobenius < trace.stop_index as i64);
    }

    #[test]
    fn events_are_nested(seed: u64, trial in 0u64..100_000, p in prop::sample::select(vec![0.3, 0.2, 0.1, 0.05])) {
        let o = event_pipeline_trial(p, seed, trial).unwrap();
        prop_assert!(!o.d2 || o.d1);
        prop_assert!(!o.d3 || o.d2);
        prop_assert_eq!(o.q.is_some(), o.d1);
        prop_assert_eq!(o.max_apery.is_some(), o.d2);
        prop_assert_eq!(o.frobenius.is_some(), o.d3);
    }

    #[test]
    fn fold_matches_brute_force(q in 1u64..=31, raw in prop::collection::vec(0u64..31, 1..6), k in 1u64..=6) {
        let a = CyclicSubset::new(q, raw).unwrap();
        let elems = a.to_vec();
        prop_assert_eq!(k_fold_sumset(&a, k).unwrap().to_vec(), brute_fold(q, &elems, k));
        let distinct = k_distinct_sumset(&a, k as usize);
        if let Ok(d) = distinct {
            prop_assert!(d.is_subset(&k_fold_sumset(&a, k).unwrap()));
        }
    }
}

#[test]
fn stopping_index_examples() {
    let only_one = sample_unconstrained_with(|n| n == 1, 1 << 20).unwrap();
    assert_eq!(only_one.stop_index, 2);
    let two_three = sample_unconstrained_with(|n| n == 2 || n == 3, 1 << 20).unwrap();
    assert_eq!(two_three.stop_index, 4);
    assert_eq!(two_three.gens.elements(), &[2, 3]);
}

#[test]
fn sampling_is_reproducible() {
    for trial in 0..20 {
        assert_eq!(sampled_set(0.05, 9, trial), sampled_set(0.05, 9, trial));
    }
    assert_ne!(
        (0..20).map(|t| sampled_set(0.05, 9, t)).collect::<Vec<_>>(),
        (0..20).map(|t| sampled_set(0.05, 10, t)).collect::<Vec<_>>()
    );
}

#[test]
fn sweep_output_ignores_worker_count() {
    for mode in [SweepMode::Unconstrained, SweepMode::Bounded(BoundSpec::Auto)] {
        let cfg = SweepConfig {
            p_list: vec![0.2, 0.1, 0.05],
            trials: 300,
            master_seed: 17,
            mode,
        };
        let csv = |workers| {
            let rows = with_workers(Some(workers), || run_sweep(&cfg)).unwrap();
            let mut buf = Vec::new();
            write_sweep_csv(&mut buf, &cfg, &rows).unwrap();
            buf
        };
        let one = csv(1);
        assert_eq!(one, csv(4));
        assert_eq!(one, csv(7));
    }
}

#[test]
fn no_prime_witness_rate_matches_exact_value() {
    // ¬D1 happens iff none of the primes in the window is selected.
    let p = 0.1;
    let w = EventWindow::new(p).unwrap();
    let primes = primes_in(w.prime_lo, w.prime_hi).count() as i32;
    let exact = (1.0 - p).powi(primes);
    let trials = 40_000;
    let misses = (0..trials)
        .filter(|&t| !event_pipeline_trial(p, 3, t).unwrap().d1)
        .count() as f64;
    let se = (exact * (1.0 - exact) / trials as f64).sqrt();
    assert!((misses / trials as f64 - exact).abs() < 5.0 * se, "{misses} vs {exact}");
}

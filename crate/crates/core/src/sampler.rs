//! Sampling generator sets from the bounded model `S(M, p)` and the
//! unconstrained model `S(p)`.
//!
//! Both models consume the same stream: integer `n` is selected iff the
//! `n`-th uniform draw of the trial's [`StreamTag::Generators`] substream is
//! below `p`. For a fixed seed and trial, raising `p` can only add
//! generators, and the bounded sample with `M` at least the unconstrained
//! stopping index contains the unconstrained one.

use crate::error::{check_probability, Error, Result};
use crate::semigroup::{frobenius, GeneratorSet};
use crate::stream::{StreamTag, TrialStream};

pub const ITERATION_CAP: u64 = 1 << 32;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ErConfig {
    pub p: f64,
    pub bound: u64,
    pub master_seed: u64,
}

impl ErConfig {
    pub fn new(p: f64, bound: u64, master_seed: u64) -> Result<Self> {
        check_probability(p)?;
        if bound == 0 {
            return Err(Error::InvalidArgument("bound M must be at least 1".into()));
        }
        Ok(Self {
            p,
            bound,
            master_seed,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleTrace {
    pub gens: GeneratorSet,
    /// Largest integer examined.
    pub stop_index: u64,
    pub uniform_draws_consumed: u64,
}

pub fn sample_bounded(config: &ErConfig, trial_index: u64) -> GeneratorSet {
    let mut stream = TrialStream::new(config.master_seed, trial_index, StreamTag::Generators);
    let p = config.p;
    let selected: Vec<u64> = (1..=config.bound).filter(|_| stream.uniform() < p).collect();
    GeneratorSet::new(selected).expect("selected integers are positive")
}

pub fn sample_unconstrained(p: f64, master_seed: u64, trial_index: u64) -> Result<SampleTrace> {
    check_probability(p)?;
    let mut stream = TrialStream::new(master_seed, trial_index, StreamTag::Generators);
    sample_unconstrained_with(|_| stream.uniform() < p, ITERATION_CAP)
}

/// Runs the unconstrained process against an arbitrary selection oracle.
///
/// Integers are examined in order `1, 2, 3, …`. Before `n` is examined, if
/// the generators selected among `1..n` already have gcd 1 and Frobenius
/// number below `n`, then `n` is the last integer examined: every later
/// integer already lies in the semigroup, so neither the semigroup nor its
/// minimal generators can change. `n` is still examined (and kept if
/// selected) so that the trace's generators match a bounded sample with
/// `M = stop_index`.
pub fn sample_unconstrained_with(
    mut select: impl FnMut(u64) -> bool,
    cap: u64,
) -> Result<SampleTrace> {
    let mut gens = GeneratorSet::empty();
    let mut current_frobenius: Option<i64> = None;
    let mut n = 1u64;
    loop {
        if n > cap {
            return Err(Error::IterationCap { examined: cap });
        }
        let last = matches!(current_frobenius, Some(f) if f < n as i64);
        if select(n) {
            gens.insert(n)?;
            if !last && gens.is_cofinite() {
                current_frobenius = Some(frobenius(&gens)?);
            }
        }
        if last {
            return Ok(SampleTrace {
                gens,
                stop_index: n,
                uniform_draws_consumed: n,
            });
        }
        n += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::invariants;

    #[test]
    fn near_certain_inclusion() {
        for seed in 0..10 {
            let cfg = ErConfig::new(0.999999, 5, seed).unwrap();
            assert_eq!(sample_bounded(&cfg, 0).elements(), &[1, 2, 3, 4, 5]);
        }
    }

    #[test]
    fn half_density_concentrates() {
        // Binomial(10⁴, 1/2) has sd 50; ±500 is 10σ.
        for seed in [1u64, 2, 3] {
            let cfg = ErConfig::new(0.5, 10_000, seed).unwrap();
            let n = sample_bounded(&cfg, 0).len() as i64;
            assert!((n - 5000).abs() <= 500, "{n}");
        }
    }

    #[test]
    fn bounded_is_deterministic() {
        let cfg = ErConfig::new(0.1, 1000, 99).unwrap();
        assert_eq!(sample_bounded(&cfg, 4), sample_bounded(&cfg, 4));
        assert_ne!(sample_bounded(&cfg, 4), sample_bounded(&cfg, 5));
    }

    #[test]
    fn stops_after_two_then_three() {
        let t = sample_unconstrained_with(|n| n == 2 || n == 3, ITERATION_CAP).unwrap();
        assert_eq!(t.gens.elements(), &[2, 3]);
        assert!(t.stop_index <= 4);
        assert_eq!(t.stop_index, 4);
        assert_eq!(frobenius(&t.gens).unwrap(), 1);
    }

    #[test]
    fn stops_right_after_one() {
        let t = sample_unconstrained_with(|n| n == 1, ITERATION_CAP).unwrap();
        assert_eq!(t.stop_index, 2);
        assert_eq!(t.gens.elements(), &[1]);
        assert_eq!(frobenius(&t.gens).unwrap(), -1);
    }

    #[test]
    fn never_cofinite_hits_cap() {
        let r = sample_unconstrained_with(|n| n % 2 == 0, 1000);
        assert_eq!(r, Err(Error::IterationCap { examined: 1000 }));
    }

    #[test]
    fn rejects_bad_probability() {
        assert!(sample_unconstrained(0.0, 1, 0).is_err());
        assert!(sample_unconstrained(1.0, 1, 0).is_err());
        assert!(ErConfig::new(f64::NAN, 10, 0).is_err());
        assert!(ErConfig::new(0.5, 0, 0).is_err());
    }

    #[test]
    fn stop_index_finite_at_p_02() {
        for trial in 0..10_000 {
            let t = sample_unconstrained(0.2, 3, trial).unwrap();
            assert!(t.stop_index < 1_000_000);
            assert!(t.gens.max().unwrap() <= t.stop_index);
            assert!(frobenius(&t.gens).unwrap() < t.stop_index as i64);
        }
    }

    #[test]
    fn coupling_and_bounded_agreement() {
        for trial in 0..200 {
            let lo = sample_unconstrained(0.05, 11, trial).unwrap();
            let hi = sample_unconstrained(0.1, 11, trial).unwrap();
            // Nested on the common examined prefix.
            let prefix = lo.stop_index.min(hi.stop_index);
            for &g in lo.gens.elements().iter().filter(|&&g| g <= prefix) {
                assert!(hi.gens.contains(g));
            }
            let bounded = sample_bounded(&ErConfig::new(0.05, lo.stop_index + 50, 11).unwrap(), trial);
            assert!(lo.gens.elements().iter().all(|&g| bounded.contains(g)));
            assert_eq!(invariants(&bounded).unwrap(), invariants(&lo.gens).unwrap());
        }
    }
}

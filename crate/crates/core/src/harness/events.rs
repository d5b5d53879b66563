//! The prime/Apéry event pipeline.
//!
//! Integers `1..=⌈6f(p)⌉` are selected independently with probability `p`,
//! with `f(p) = (1/p)·ln(1/p)²`.
//!
//! * `D1`: some prime `q` with `f(p) + 1 <= q <= 6f(p)` is selected; `q` is
//!   the largest one.
//! * `D2`: `D1`, and at least `⌈12·log₂ q⌉` integers in `[1, q − 1]` are
//!   selected.
//! * `D3`: `D2`, and for `S'` generated by `q` and a uniformly random
//!   `⌈12·log₂ q⌉`-subset of those, `max Ap(S', q) <= 6q·log₂ q`.
//!
//! When `D3` holds, `F(S) <= F(S') < 6q·log₂ q <= u(p)`.

use rayon::prelude::*;

use super::bounds::{f_of_p, frobenius_chain_bound};
use super::format_sig;
use super::stats::{MeanTally, Proportion};
use crate::error::{check_probability, Error, Result};
use crate::prime::is_prime;
use crate::semigroup::{apery_set, frobenius, GeneratorSet};
use crate::stream::{sample_distinct, StreamTag, TrialStream};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EventWindow {
    pub p: f64,
    pub f: f64,
    /// Smallest admissible witness prime, `⌈f + 1⌉`.
    pub prime_lo: u64,
    /// Largest admissible witness prime, `⌊6f⌋`.
    pub prime_hi: u64,
    /// Integers examined, `⌈6f⌉`.
    pub examined: u64,
}

impl EventWindow {
    /// Requires `f(p) >= 2`, which holds for `p <= 0.3`.
    pub fn new(p: f64) -> Result<Self> {
        check_probability(p)?;
        let f = f_of_p(p);
        if f < 2.0 {
            return Err(Error::InvalidArgument(format!(
                "event pipeline needs f(p) >= 2, got f({p}) = {f}"
            )));
        }
        Ok(Self {
            p,
            f,
            prime_lo: (f + 1.0).ceil() as u64,
            prime_hi: (6.0 * f).floor() as u64,
            examined: (6.0 * f).ceil() as u64,
        })
    }
}

/// Subset size `⌈12·log₂ q⌉` used for `D2`/`D3`.
pub fn small_generator_target(q: u64) -> u64 {
    (12.0 * (q as f64).log2()).ceil() as u64
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EventOutcome {
    pub d1: bool,
    pub d2: bool,
    pub d3: bool,
    pub q: Option<u64>,
    /// Selected integers in `[1, q − 1]`; 0 without `D1`.
    pub small_generator_count: u64,
    /// `max Ap(S', q)`, present iff `D2`.
    pub max_apery: Option<u64>,
    /// Frobenius number of the semigroup generated by every selected integer,
    /// present iff `D3`.
    pub frobenius: Option<i64>,
}

/// Evaluates the events for a given ascending list of selected integers.
/// `stream` supplies the random subset used for `S'`.
pub fn event_pipeline_with(window: &EventWindow, selected: &[u64], stream: &mut TrialStream) -> Result<EventOutcome> {
    let q = selected
        .iter()
        .rev()
        .copied()
        .filter(|&n| n >= window.prime_lo && n <= window.prime_hi)
        .find(|&n| is_prime(n));
    let Some(q) = q else {
        return Ok(EventOutcome {
            d1: false,
            d2: false,
            d3: false,
            q: None,
            small_generator_count: 0,
            max_apery: None,
            frobenius: None,
        });
    };
    let small: Vec<u64> = selected.iter().copied().take_while(|&n| n < q).collect();
    let target = small_generator_target(q);
    let d2 = small.len() as u64 >= target;
    let mut out = EventOutcome {
        d1: true,
        d2,
        d3: false,
        q: Some(q),
        small_generator_count: small.len() as u64,
        max_apery: None,
        frobenius: None,
    };
    if !d2 {
        return Ok(out);
    }
    let picks = sample_distinct(stream, small.len() as u64, target as usize);
    let sub = GeneratorSet::new(picks.iter().map(|&i| small[i as usize]).chain([q]))?;
    let max_apery = apery_set(&sub, q)?.max_entry();
    out.max_apery = Some(max_apery);
    let qf = q as f64;
    out.d3 = max_apery as f64 <= 6.0 * qf * qf.log2();
    if out.d3 {
        out.frobenius = Some(frobenius(&GeneratorSet::new(selected.iter().copied())?)?);
    }
    Ok(out)
}

pub fn event_pipeline_trial(p: f64, master_seed: u64, trial_index: u64) -> Result<EventOutcome> {
    let window = EventWindow::new(p)?;
    run_trial(&window, master_seed, trial_index)
}

fn run_trial(window: &EventWindow, master_seed: u64, trial_index: u64) -> Result<EventOutcome> {
    let mut stream = TrialStream::new(master_seed, trial_index, StreamTag::Events);
    let p = window.p;
    let selected: Vec<u64> = (1..=window.examined).filter(|_| stream.uniform() < p).collect();
    event_pipeline_with(window, &selected, &mut stream)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct EventTally {
    trials: u64,
    d1: u64,
    d2: u64,
    d3: u64,
    within_u: u64,
    within_apery: u64,
    small: MeanTally,
    q_minus_one: MeanTally,
    cross: u128,
}

impl EventTally {
    fn push(mut self, o: &EventOutcome, u: f64) -> Result<Self> {
        if (o.d3 && !o.d2) || (o.d2 && !o.d1) || (o.q.is_some() != o.d1) {
            return Err(Error::InvariantViolation(format!("event nesting broken: {o:?}")));
        }
        self.trials += 1;
        if let Some(q) = o.q {
            self.d1 += 1;
            self.small.push(o.small_generator_count as i64);
            self.q_minus_one.push(q as i64 - 1);
            self.cross += o.small_generator_count as u128 * (q as u128 - 1);
        }
        self.d2 += o.d2 as u64;
        if o.d3 {
            self.d3 += 1;
            let f = o.frobenius.expect("frobenius present under D3");
            let bound = o.max_apery.expect("apery present under D2") as i64 - o.q.expect("q under D1") as i64;
            self.within_u += (f as f64 <= u) as u64;
            self.within_apery += (f <= bound) as u64;
        }
        Ok(self)
    }

    fn merge(self, o: Self) -> Self {
        Self {
            trials: self.trials + o.trials,
            d1: self.d1 + o.d1,
            d2: self.d2 + o.d2,
            d3: self.d3 + o.d3,
            within_u: self.within_u + o.within_u,
            within_apery: self.within_apery + o.within_apery,
            small: self.small.merge(o.small),
            q_minus_one: self.q_minus_one.merge(o.q_minus_one),
            cross: self.cross + o.cross,
        }
    }
}

fn run_events(p: f64, trials: u64, master_seed: u64) -> Result<EventTally> {
    let window = EventWindow::new(p)?;
    let u = frobenius_chain_bound(p);
    (0..trials)
        .into_par_iter()
        .map(|t| run_trial(&window, master_seed, t))
        .try_fold(EventTally::default, |acc, o| acc.push(&o?, u))
        .try_reduce(EventTally::default, |a, b| Ok(a.merge(b)))
}

/// Conditional failure frequencies of the pipeline. Conditionals with no
/// conditioning trials are `None`, never zero.
#[derive(Clone, Debug, PartialEq)]
pub struct EventReport {
    pub p: f64,
    pub trials: u64,
    pub d1_count: u64,
    pub d2_count: u64,
    pub d3_count: u64,
    pub pr_not_d1: Option<Proportion>,
    pub pr_not_d2_given_d1: Option<Proportion>,
    pub pr_not_d3_given_d12: Option<Proportion>,
    /// Among `D3` trials, how often `F(S) <= u(p)`.
    pub frobenius_within_u: Option<Proportion>,
    /// Among `D3` trials, how often `F(S) <= max Ap(S', q) − q`.
    pub frobenius_within_apery: Option<Proportion>,
    pub u_of_p: f64,
}

pub fn estimate_event_failures(p: f64, trials: u64, master_seed: u64) -> Result<EventReport> {
    let t = run_events(p, trials, master_seed)?;
    Ok(EventReport {
        p,
        trials,
        d1_count: t.d1,
        d2_count: t.d2,
        d3_count: t.d3,
        pr_not_d1: Proportion::new(t.trials - t.d1, t.trials),
        pr_not_d2_given_d1: Proportion::new(t.d1 - t.d2, t.d1),
        pr_not_d3_given_d12: Proportion::new(t.d2 - t.d3, t.d2),
        frobenius_within_u: Proportion::new(t.within_u, t.d3),
        frobenius_within_apery: Proportion::new(t.within_apery, t.d3),
        u_of_p: frobenius_chain_bound(p),
    })
}

impl std::fmt::Display for EventReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let show = |x: &Option<Proportion>| x.map_or(String::new(), |v| v.to_string());
        writeln!(f, "p={} trials={}", format_sig(self.p), self.trials)?;
        writeln!(f, "d1={} d2={} d3={}", self.d1_count, self.d2_count, self.d3_count)?;
        writeln!(f, "pr_not_d1={}", show(&self.pr_not_d1))?;
        writeln!(f, "pr_not_d2_given_d1={}", show(&self.pr_not_d2_given_d1))?;
        writeln!(f, "pr_not_d3_given_d12={}", show(&self.pr_not_d3_given_d12))?;
        writeln!(f, "u_of_p={}", format_sig(self.u_of_p))?;
        writeln!(f, "frobenius_le_u_given_d3={}", show(&self.frobenius_within_u))?;
        write!(f, "frobenius_le_apery_bound_given_d3={}", show(&self.frobenius_within_apery))
    }
}

/// Compares the mean number of selected integers below the witness prime with
/// the mean of `(q − 1)·p`, over trials where `D1` holds.
#[derive(Clone, Debug, PartialEq)]
pub struct SmallGeneratorReport {
    pub p: f64,
    pub d1_trials: u64,
    pub mean_small: f64,
    pub mean_expected: f64,
    /// Standard error of the mean paired difference `G − (q − 1)·p`.
    pub standard_error: f64,
    /// `|mean_small − mean_expected| < 5·standard_error`.
    pub agrees: bool,
}

impl SmallGeneratorReport {
    pub fn z_score(&self) -> f64 {
        (self.mean_small - self.mean_expected) / self.standard_error
    }
}

impl std::fmt::Display for SmallGeneratorReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "d1_trials={} mean_G={} mean_(q-1)p={} se={} z={} agrees_within_5se={}",
            self.d1_trials,
            format_sig(self.mean_small),
            format_sig(self.mean_expected),
            format_sig(self.standard_error),
            format_sig(self.z_score()),
            self.agrees
        )
    }
}

/// `None` when no trial satisfies `D1`.
pub fn expected_small_generators_check(p: f64, trials: u64, master_seed: u64) -> Result<Option<SmallGeneratorReport>> {
    let t = run_events(p, trials, master_seed)?;
    let n = t.d1;
    if n == 0 {
        return Ok(None);
    }
    let mean_small = t.small.mean();
    let mean_expected = p * t.q_minus_one.mean();
    let standard_error = if n < 2 {
        f64::NAN
    } else {
        let nn = n as i128;
        let cov = (nn * t.cross as i128 - t.small.sum * t.q_minus_one.sum) as f64 / (nn * (nn - 1)) as f64;
        let var = t.small.variance() + p * p * t.q_minus_one.variance() - 2.0 * p * cov;
        (var.max(0.0) / n as f64).sqrt()
    };
    let agrees = (mean_small - mean_expected).abs() < 5.0 * standard_error;
    Ok(Some(SmallGeneratorReport {
        p,
        d1_trials: n,
        mean_small,
        mean_expected,
        standard_error,
        agrees,
    }))
}

/// Empirical `Pr[¬D1]` at each `p`, and whether it is non-increasing as `p`
/// decreases. A trend diagnostic only.
pub fn not_d1_trend(p_list: &[f64], trials: u64, master_seed: u64) -> Result<(Vec<(f64, Proportion)>, bool)> {
    let mut ps = p_list.to_vec();
    ps.sort_by(|a, b| b.total_cmp(a));
    let mut out = Vec::with_capacity(ps.len());
    for p in ps {
        let t = run_events(p, trials, master_seed)?;
        let prop = Proportion::new(t.trials - t.d1, t.trials)
            .ok_or_else(|| Error::InvalidArgument("trend needs at least one trial".into()))?;
        out.push((p, prop));
    }
    let monotone = out.windows(2).all(|w| w[1].1.estimate <= w[0].1.estimate);
    Ok((out, monotone))
}

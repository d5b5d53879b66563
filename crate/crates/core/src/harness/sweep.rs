//! Sweeps over `p`: sample many semigroups per point, aggregate invariants,
//! and write the fixed CSV schema.

use std::io::{self, Write};

use rayon::prelude::*;

use super::format_sig;
use super::stats::MeanTally;
use crate::error::{check_probability, Error, Result};
use crate::sampler::{sample_bounded, sample_unconstrained, ErConfig};
use crate::semigroup::{invariants, wilf_check, SemigroupInvariants};

pub const CSV_HEADER: &str =
    "p,trials,mean_F,ci95_F,mean_g,ci95_g,mean_e,ci95_e,mean_stop_index,wilf_violations,excluded_trials";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundSpec {
    Fixed(u64),
    /// `M = ⌈50/p⌉` at each point.
    Auto,
}

impl BoundSpec {
    pub fn resolve(self, p: f64) -> u64 {
        match self {
            BoundSpec::Fixed(m) => m,
            BoundSpec::Auto => (50.0 / p).ceil() as u64,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepMode {
    Unconstrained,
    Bounded(BoundSpec),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub p_list: Vec<f64>,
    pub trials: u64,
    pub master_seed: u64,
    pub mode: SweepMode,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub p: f64,
    pub trials: u64,
    pub mean_frobenius: f64,
    pub ci95_frobenius: f64,
    pub mean_genus: f64,
    pub ci95_genus: f64,
    pub mean_embedding: f64,
    pub ci95_embedding: f64,
    pub mean_stop_index: f64,
    pub wilf_violations: u64,
    /// Bounded-mode draws whose generators have gcd > 1 (or are empty).
    pub excluded_trials: u64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct Tally {
    frobenius: MeanTally,
    genus: MeanTally,
    embedding: MeanTally,
    stop_index: MeanTally,
    wilf_violations: u64,
    excluded: u64,
}

impl Tally {
    fn merge(self, o: Self) -> Self {
        Self {
            frobenius: self.frobenius.merge(o.frobenius),
            genus: self.genus.merge(o.genus),
            embedding: self.embedding.merge(o.embedding),
            stop_index: self.stop_index.merge(o.stop_index),
            wilf_violations: self.wilf_violations + o.wilf_violations,
            excluded: self.excluded + o.excluded,
        }
    }

    fn push(mut self, inv: &SemigroupInvariants, stop_index: u64) -> Self {
        self.frobenius.push(inv.frobenius);
        self.genus.push(inv.genus as i64);
        self.embedding.push(inv.embedding_dimension as i64);
        self.stop_index.push(stop_index as i64);
        if !wilf_check(inv).holds {
            self.wilf_violations += 1;
        }
        self
    }
}

fn check_invariants(inv: &SemigroupInvariants) -> Result<()> {
    let ok = if inv.frobenius == -1 {
        inv.genus == 0
    } else {
        inv.frobenius >= 0 && inv.genus >= 1 && inv.genus as i64 <= inv.frobenius + 1
    };
    if ok {
        Ok(())
    } else {
        Err(Error::InvariantViolation(format!(
            "F={} g={} violates gap counting",
            inv.frobenius, inv.genus
        )))
    }
}

fn run_point(p: f64, cfg: &SweepConfig) -> Result<SweepRow> {
    let mode = cfg.mode;
    let seed = cfg.master_seed;
    let tally = (0..cfg.trials)
        .into_par_iter()
        .map(|t| -> Result<Option<(SemigroupInvariants, u64)>> {
            match mode {
                SweepMode::Unconstrained => {
                    let trace = sample_unconstrained(p, seed, t)?;
                    Ok(Some((invariants(&trace.gens)?, trace.stop_index)))
                }
                SweepMode::Bounded(spec) => {
                    let m = spec.resolve(p);
                    let gens = sample_bounded(&ErConfig::new(p, m, seed)?, t);
                    if !gens.is_cofinite() {
                        return Ok(None);
                    }
                    Ok(Some((invariants(&gens)?, m)))
                }
            }
        })
        .try_fold(Tally::default, |acc, r| -> Result<Tally> {
            Ok(match r? {
                None => Tally {
                    excluded: acc.excluded + 1,
                    ..acc
                },
                Some((inv, stop)) => {
                    check_invariants(&inv)?;
                    acc.push(&inv, stop)
                }
            })
        })
        .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))?;

    Ok(SweepRow {
        p,
        trials: cfg.trials,
        mean_frobenius: tally.frobenius.mean(),
        ci95_frobenius: tally.frobenius.ci95(),
        mean_genus: tally.genus.mean(),
        ci95_genus: tally.genus.ci95(),
        mean_embedding: tally.embedding.mean(),
        ci95_embedding: tally.embedding.ci95(),
        mean_stop_index: tally.stop_index.mean(),
        wilf_violations: tally.wilf_violations,
        excluded_trials: tally.excluded,
    })
}

/// One row per `p`, in descending `p` order. Deterministic in the master
/// seed and independent of the rayon pool size.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    if cfg.trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    if cfg.p_list.is_empty() {
        return Err(Error::InvalidArgument("empty p list".into()));
    }
    for &p in &cfg.p_list {
        check_probability(p)?;
    }
    let mut ps = cfg.p_list.clone();
    ps.sort_by(|a, b| b.total_cmp(a));
    ps.dedup();
    ps.iter().map(|&p| run_point(p, cfg)).collect()
}

/// Bounded sweeps whose `M` is below `10/p` can see Frobenius numbers near
/// `M`, which biases the means.
pub fn sweep_warnings(cfg: &SweepConfig) -> Vec<String> {
    let SweepMode::Bounded(spec) = cfg.mode else {
        return Vec::new();
    };
    cfg.p_list
        .iter()
        .filter_map(|&p| {
            let m = spec.resolve(p);
            ((m as f64) < 10.0 / p).then(|| format!("warning: M={m} < 10/p at p={p}; means may be biased"))
        })
        .collect()
}

fn opt(x: f64) -> String {
    if x.is_finite() {
        format_sig(x)
    } else {
        String::new()
    }
}

/// Two `#` metadata lines, the header, then one row per point.
pub fn write_sweep_csv(out: &mut impl Write, cfg: &SweepConfig, rows: &[SweepRow]) -> io::Result<()> {
    let mode = match cfg.mode {
        SweepMode::Unconstrained => "unconstrained".to_string(),
        SweepMode::Bounded(BoundSpec::Auto) => "bounded M=ceil(50/p)".to_string(),
        SweepMode::Bounded(BoundSpec::Fixed(m)) => format!("bounded M={m}"),
    };
    writeln!(out, "# mode={mode} seed={} trials={}", cfg.master_seed, cfg.trials)?;
    writeln!(
        out,
        "# ci95 = 1.96*s/sqrt(n) (normal approximation, sample sd); event proportions use Wilson score intervals"
    )?;
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            format_sig(r.p),
            r.trials,
            opt(r.mean_frobenius),
            opt(r.ci95_frobenius),
            opt(r.mean_genus),
            opt(r.ci95_genus),
            opt(r.mean_embedding),
            opt(r.ci95_embedding),
            opt(r.mean_stop_index),
            r.wilf_violations,
            r.excluded_trials
        )?;
    }
    Ok(())
}

/// Scaling ratios against the conjectured orders `(1/p)·log₂(1/p)` for the
/// Frobenius number and `log₂(1/p)` for the embedding dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct ConjectureFit {
    /// `(p, mean_F·p / log₂(1/p))`
    pub ratio_frobenius: Vec<(f64, f64)>,
    /// `(p, mean_e / log₂(1/p))`
    pub ratio_embedding: Vec<(f64, f64)>,
    /// max/min of each ratio sequence.
    pub spread_frobenius: f64,
    pub spread_embedding: f64,
    /// Set when the rows span less than a factor 8 in `p`.
    pub narrow_span: bool,
}

pub fn conjecture_fit(rows: &[SweepRow]) -> Result<ConjectureFit> {
    if rows.len() < 3 {
        return Err(Error::InvalidArgument(format!(
            "conjecture fit needs at least 3 rows, got {}",
            rows.len()
        )));
    }
    let mut ratio_frobenius = Vec::with_capacity(rows.len());
    let mut ratio_embedding = Vec::with_capacity(rows.len());
    for r in rows {
        let l = (1.0 / r.p).log2();
        if !(r.mean_frobenius.is_finite() && r.mean_embedding.is_finite()) {
            return Err(Error::InvalidArgument(format!("row at p={} has no included trials", r.p)));
        }
        ratio_frobenius.push((r.p, r.mean_frobenius * r.p / l));
        ratio_embedding.push((r.p, r.mean_embedding / l));
    }
    let spread = |v: &[(f64, f64)]| {
        let max = v.iter().map(|x| x.1).fold(f64::NEG_INFINITY, f64::max);
        let min = v.iter().map(|x| x.1).fold(f64::INFINITY, f64::min);
        max / min
    };
    let pmax = rows.iter().map(|r| r.p).fold(f64::NEG_INFINITY, f64::max);
    let pmin = rows.iter().map(|r| r.p).fold(f64::INFINITY, f64::min);
    Ok(ConjectureFit {
        spread_frobenius: spread(&ratio_frobenius),
        spread_embedding: spread(&ratio_embedding),
        ratio_frobenius,
        ratio_embedding,
        narrow_span: pmax / pmin < 8.0,
    })
}

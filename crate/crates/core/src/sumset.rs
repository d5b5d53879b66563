//! Sumsets of subsets of the cyclic group `Z_q` and the random-coverage
//! experiment for `k`-fold sumsets of random `2k`-subsets.

use rayon::prelude::*;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::prime::is_prime;
use crate::stream::{sample_distinct, StreamTag, TrialStream};

/// Largest modulus the brute-force subset counter will enumerate.
pub const ENUMERATION_LIMIT: u128 = 10_000_000;

#[derive(Clone, PartialEq, Eq)]
pub struct CyclicSubset {
    q: u64,
    members: BitSet,
}

impl CyclicSubset {
    /// Members are reduced modulo `q`.
    pub fn new(q: u64, members: impl IntoIterator<Item = u64>) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidArgument("modulus must be positive".into()));
        }
        let bits = BitSet::from_indices(q as usize, members.into_iter().map(|x| (x % q) as usize));
        Ok(Self { q, members: bits })
    }

    pub fn full(q: u64) -> Self {
        Self {
            q,
            members: BitSet::full(q as usize),
        }
    }

    fn empty(q: u64) -> Self {
        Self {
            q,
            members: BitSet::new(q as usize),
        }
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.members.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.members.is_full()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.members.contains((x % self.q) as usize)
    }

    pub fn is_subset(&self, other: &CyclicSubset) -> bool {
        self.q == other.q && self.members.is_subset(&other.members)
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.members.iter_ones().map(|i| i as u64)
    }

    pub fn to_vec(&self) -> Vec<u64> {
        self.iter().collect()
    }
}

impl std::fmt::Debug for CyclicSubset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Z_{}{:?}", self.q, self.members)
    }
}

/// `{x + y mod q}`; shifts the larger operand by each member of the smaller.
pub fn add_sets(x: &CyclicSubset, y: &CyclicSubset) -> Result<CyclicSubset> {
    if x.q != y.q {
        return Err(Error::ModulusMismatch {
            left: x.q,
            right: y.q,
        });
    }
    let (small, large) = if x.len() <= y.len() { (x, y) } else { (y, x) };
    let mut out = CyclicSubset::empty(x.q);
    for s in small.members.iter_ones() {
        out.members.or_rotated(&large.members, s);
        if out.is_full() {
            break;
        }
    }
    Ok(out)
}

/// Sums of exactly `k` elements of `a`, repetition allowed, by binary
/// exponentiation on `(i + j)A = iA + jA`.
pub fn k_fold_sumset(a: &CyclicSubset, k: u64) -> Result<CyclicSubset> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    if k == 0 {
        return Err(Error::InvalidArgument("fold count must be positive".into()));
    }
    let mut acc: Option<CyclicSubset> = None;
    let mut power = a.clone();
    let mut k = k;
    loop {
        if k & 1 == 1 {
            acc = Some(match acc {
                None => power.clone(),
                Some(r) => add_sets(&r, &power)?,
            });
        }
        k >>= 1;
        if k == 0 {
            break;
        }
        // Once full, adding any nonempty set stays full.
        if acc.as_ref().is_some_and(CyclicSubset::is_full) {
            break;
        }
        power = add_sets(&power, &power)?;
    }
    Ok(acc.expect("k >= 1"))
}

/// Sums of `k`-element subsets of `a`.
pub fn k_distinct_sumset(a: &CyclicSubset, k: usize) -> Result<CyclicSubset> {
    let size = a.len();
    if k == 0 {
        return Err(Error::InvalidArgument("subset size must be positive".into()));
    }
    if k > size {
        return Err(Error::SubsetTooLarge { k, size });
    }
    let q = a.q as usize;
    // reach[c]: residues that are sums of c distinct processed elements.
    let mut reach = vec![BitSet::new(q); k + 1];
    reach[0].insert(0);
    for (i, x) in a.members.iter_ones().enumerate() {
        for c in (1..=k.min(i + 1)).rev() {
            let (lo, hi) = reach.split_at_mut(c);
            hi[0].or_rotated(&lo[c - 1], x);
        }
    }
    Ok(CyclicSubset {
        q: a.q,
        members: reach.swap_remove(k),
    })
}

pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step.
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountMethod {
    Enumerate,
    ClosedForm,
    /// Enumerate when feasible, otherwise closed form.
    Auto,
}

/// Number of `k`-element subsets of `Z_q` whose elements sum to `z`.
pub fn count_subsets_with_sum(q: u64, k: u64, z: u64, method: CountMethod) -> Result<u128> {
    if k == 0 || k >= q {
        return Err(Error::InvalidArgument(format!("need 1 <= k < q, got k={k}, q={q}")));
    }
    if z >= q {
        return Err(Error::InvalidArgument(format!("residue {z} out of range for q={q}")));
    }
    let total = binomial(q, k);
    let feasible = total.is_some_and(|t| t <= ENUMERATION_LIMIT);
    match method {
        CountMethod::Enumerate if !feasible => Err(Error::InfeasibleEnumeration { q, k }),
        CountMethod::Enumerate => Ok(enumerate_subset_sums(q, k, z)),
        CountMethod::Auto if feasible => Ok(enumerate_subset_sums(q, k, z)),
        CountMethod::ClosedForm | CountMethod::Auto => {
            if !is_prime(q) {
                return Err(Error::InvalidArgument(format!("closed form needs prime q, got {q}")));
            }
            let total = total.ok_or_else(|| Error::InvalidArgument(format!("C({q},{k}) overflows")))?;
            Ok(total / q as u128)
        }
    }
}

fn enumerate_subset_sums(q: u64, k: u64, z: u64) -> u128 {
    fn walk(next: u64, q: u64, left: u64, sum: u64, z: u64) -> u128 {
        if left == 0 {
            return u128::from(sum == z);
        }
        let mut count = 0;
        // Leave room for the remaining `left - 1` elements.
        for x in next..=q - left {
            count += walk(x + 1, q, left - 1, (sum + x) % q, z);
        }
        count
    }
    walk(0, q, k, 0, z)
}

/// Set size and fold count for one coverage experiment.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoverageParams {
    pub q: u64,
    pub b: f64,
    /// Fold count `⌈b·log₂ q⌉`.
    pub k: u64,
    /// Subset size `2k`.
    pub s: u64,
}

impl CoverageParams {
    pub fn new(q: u64, b: f64) -> Result<Self> {
        if !is_prime(q) {
            return Err(Error::InvalidArgument(format!("q = {q} is not prime")));
        }
        if !(b.is_finite() && b > 0.0) {
            return Err(Error::InvalidArgument(format!("b must be positive, got {b}")));
        }
        let k = (b * (q as f64).log2()).ceil() as u64;
        let s = 2 * k;
        if s > q {
            return Err(Error::InvalidArgument(format!("subset size {s} exceeds q = {q}")));
        }
        Ok(Self { q, b, k, s })
    }
}

/// `(2b·log₂ q + 3) / q^(b−2)`; at least 1 whenever `b <= 2`.
pub fn coverage_failure_bound(q: u64, b: f64) -> f64 {
    let q = q as f64;
    (2.0 * b * q.log2() + 3.0) / q.powf(b - 2.0)
}

/// Whether `kA = Z_q` for `A` a uniform random `s`-subset drawn from the
/// trial's substream.
pub fn coverage_trial(q: u64, b: f64, master_seed: u64, trial_index: u64) -> Result<bool> {
    let params = CoverageParams::new(q, b)?;
    Ok(coverage_trial_with(&params, master_seed, trial_index))
}

fn coverage_trial_with(params: &CoverageParams, master_seed: u64, trial_index: u64) -> bool {
    let mut stream = TrialStream::new(master_seed, trial_index, StreamTag::Sumset);
    let picks = sample_distinct(&mut stream, params.q, params.s as usize);
    let a = CyclicSubset::new(params.q, picks).expect("q > 0");
    k_fold_sumset(&a, params.k).expect("nonempty, k >= 1").is_full()
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoverageExperiment {
    pub q: u64,
    pub b: f64,
    pub s: u64,
    pub k: u64,
    pub trials: u64,
    pub failures: u64,
    pub bound: f64,
}

impl CoverageExperiment {
    pub fn empirical_rate(&self) -> f64 {
        if self.trials == 0 {
            return 0.0;
        }
        self.failures as f64 / self.trials as f64
    }

    /// Binomial standard error `sqrt(r(1−r)/n)` of the empirical rate.
    pub fn standard_error(&self) -> f64 {
        let r = self.empirical_rate();
        (r * (1.0 - r) / self.trials.max(1) as f64).sqrt()
    }
}

impl std::fmt::Display for CoverageExperiment {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "q={} b={} s={} k={} trials={} failures={} empirical_rate={} theorem_bound={}",
            self.q,
            self.b,
            self.s,
            self.k,
            self.trials,
            self.failures,
            crate::harness::format_sig(self.empirical_rate()),
            crate::harness::format_sig(self.bound)
        )
    }
}

/// Runs `trials` independent coverage trials in parallel on the current
/// rayon pool.
pub fn run_coverage_experiment(q: u64, b: f64, trials: u64, master_seed: u64) -> Result<CoverageExperiment> {
    let params = CoverageParams::new(q, b)?;
    let failures = (0..trials)
        .into_par_iter()
        .filter(|&t| !coverage_trial_with(&params, master_seed, t))
        .count() as u64;
    Ok(CoverageExperiment {
        q,
        b,
        s: params.s,
        k: params.k,
        trials,
        failures,
        bound: coverage_failure_bound(q, b),
    })
}

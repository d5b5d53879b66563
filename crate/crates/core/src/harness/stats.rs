//! Order-independent tallies and interval estimates.
//!
//! Tallies keep exact integer sums, so merging per-worker partial tallies in
//! any order gives bit-identical means.

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MeanTally {
    pub n: u64,
    pub sum: i128,
    pub sum_sq: u128,
}

impl MeanTally {
    pub fn push(&mut self, x: i64) {
        self.n += 1;
        self.sum += x as i128;
        self.sum_sq += (x as i128 * x as i128) as u128;
    }

    pub fn merge(self, other: Self) -> Self {
        Self {
            n: self.n + other.n,
            sum: self.sum + other.sum,
            sum_sq: self.sum_sq + other.sum_sq,
        }
    }

    /// NaN when empty.
    pub fn mean(&self) -> f64 {
        if self.n == 0 {
            return f64::NAN;
        }
        self.sum as f64 / self.n as f64
    }

    /// Unbiased sample variance, computed from exact integer moments.
    pub fn variance(&self) -> f64 {
        if self.n < 2 {
            return 0.0;
        }
        let n = self.n as i128;
        // n·Σx² − (Σx)², exact in i128 for the magnitudes used here.
        let num = n * self.sum_sq as i128 - self.sum * self.sum;
        num as f64 / (n * (n - 1)) as f64
    }

    pub fn standard_error(&self) -> f64 {
        if self.n == 0 {
            return f64::NAN;
        }
        (self.variance() / self.n as f64).sqrt()
    }

    /// Normal-approximation 95% half-width.
    pub fn ci95(&self) -> f64 {
        Z95 * self.standard_error()
    }
}

/// Wilson score interval for `successes / n` at normal quantile `z`.
pub fn wilson_interval(successes: u64, n: u64, z: f64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let n_f = n as f64;
    let phat = successes as f64 / n_f;
    let z2 = z * z;
    let denom = 1.0 + z2 / n_f;
    let centre = (phat + z2 / (2.0 * n_f)) / denom;
    let half = z * (phat * (1.0 - phat) / n_f + z2 / (4.0 * n_f * n_f)).sqrt() / denom;
    let lo = if successes == 0 { 0.0 } else { (centre - half).max(0.0) };
    let hi = if successes == n { 1.0 } else { (centre + half).min(1.0) };
    (lo, hi)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Proportion {
    pub count: u64,
    pub n: u64,
    pub estimate: f64,
    pub lo95: f64,
    pub hi95: f64,
}

impl Proportion {
    /// `None` when there is nothing to condition on.
    pub fn new(count: u64, n: u64) -> Option<Self> {
        if n == 0 {
            return None;
        }
        let (lo95, hi95) = wilson_interval(count, n, Z95);
        Some(Self {
            count,
            n,
            estimate: count as f64 / n as f64,
            lo95,
            hi95,
        })
    }
}

impl std::fmt::Display for Proportion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} ({}/{}; 95% Wilson [{}, {}])",
            super::format_sig(self.estimate),
            self.count,
            self.n,
            super::format_sig(self.lo95),
            super::format_sig(self.hi95)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tally_moments() {
        let mut t = MeanTally::default();
        for x in [2, 4, 4, 4, 5, 5, 7, 9] {
            t.push(x);
        }
        assert_eq!(t.mean(), 5.0);
        assert!((t.variance() - 32.0 / 7.0).abs() < 1e-12);
        let mut a = MeanTally::default();
        let mut b = MeanTally::default();
        for x in [2, 4, 4, 4] {
            a.push(x);
        }
        for x in [5, 5, 7, 9] {
            b.push(x);
        }
        assert_eq!(a.merge(b), t);
        assert_eq!(b.merge(a), t);
    }

    #[test]
    fn negative_values() {
        let mut t = MeanTally::default();
        t.push(-1);
        t.push(1);
        assert_eq!(t.mean(), 0.0);
        assert!((t.variance() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn wilson_known_value() {
        // 10/100 → [0.0552, 0.1744]
        let (lo, hi) = wilson_interval(10, 100, Z95);
        assert!((lo - 0.05523).abs() < 1e-4, "{lo}");
        assert!((hi - 0.17437).abs() < 1e-4, "{hi}");
        let (lo, hi) = wilson_interval(0, 50, Z95);
        assert_eq!(lo, 0.0);
        assert!(hi > 0.0 && hi < 0.1);
    }

    #[test]
    fn empty_proportion_is_absent() {
        assert!(Proportion::new(0, 0).is_none());
    }
}

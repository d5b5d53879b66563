//! Monte Carlo experiments over random numerical semigroups: closed-form
//! bounds, parameter sweeps with CSV output, and the prime/Apéry event
//! pipeline.

mod bounds;
mod events;
mod stats;
mod sweep;

pub use bounds::{frobenius_chain_bound, frobenius_square_bound, theoretical_bounds, u_with_constant, BoundsRecord};
pub use events::{
    estimate_event_failures, event_pipeline_trial, event_pipeline_with, expected_small_generators_check,
    not_d1_trend, EventOutcome, EventReport, EventWindow, SmallGeneratorReport,
};
pub use stats::{wilson_interval, MeanTally, Proportion, Z95};
pub use sweep::{
    conjecture_fit, run_sweep, sweep_warnings, write_sweep_csv, BoundSpec, ConjectureFit, SweepConfig, SweepMode,
    SweepRow, CSV_HEADER,
};

/// Environment variable that overrides the worker count.
pub const WORKERS_ENV: &str = "NUMSEMI_WORKERS";

/// Reads [`WORKERS_ENV`]; `None` means use all available cores.
pub fn workers_from_env() -> Option<usize> {
    std::env::var(WORKERS_ENV).ok()?.trim().parse().ok().filter(|&n| n > 0)
}

/// Runs `f` on a dedicated pool of `workers` threads, or on the global pool.
pub fn with_workers<R: Send>(workers: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    match workers {
        None => f(),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("thread pool")
            .install(f),
    }
}

/// Formats like C's `%.6g`: six significant digits, trailing zeros
/// removed, scientific notation outside `[1e-4, 1e6)`.
pub fn format_sig(x: f64) -> String {
    const SIG: i32 = 6;
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    // Exponent after rounding to SIG digits.
    let sci = format!("{:.*e}", (SIG - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent");
    if !(-4..SIG).contains(&exp) {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (SIG - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::format_sig;

    #[test]
    fn sig_formatting_matches_printf_g() {
        assert_eq!(format_sig(0.5), "0.5");
        assert_eq!(format_sig(1.0 / 3.0), "0.333333");
        assert_eq!(format_sig(1234.5678), "1234.57");
        assert_eq!(format_sig(999999.7), "1e+06");
        assert_eq!(format_sig(123456.0), "123456");
        assert_eq!(format_sig(0.00012345678), "0.000123457");
        assert_eq!(format_sig(0.000012345678), "1.23457e-05");
        assert_eq!(format_sig(-2.5), "-2.5");
        assert_eq!(format_sig(0.0), "0");
        assert_eq!(format_sig(100.0), "100");
        assert_eq!(format_sig(1.62e-10), "1.62e-10");
    }
}

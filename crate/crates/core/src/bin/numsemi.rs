use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use numsemi::harness::{
    conjecture_fit, estimate_event_failures, expected_small_generators_check, format_sig, run_sweep,
    sweep_warnings, theoretical_bounds, with_workers, workers_from_env, write_sweep_csv, BoundSpec, SweepConfig,
    SweepMode,
};
use numsemi::sumset::run_coverage_experiment;
use numsemi::{invariants, normalize_generators, sample_bounded, sample_unconstrained, wilf_check, ErConfig, Error};

const MAX_SUMSET_MODULUS: u64 = 1 << 24;

#[derive(Parser)]
#[command(name = "numsemi", version, about = "Random numerical semigroups: invariants, sampling, experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Frobenius number, genus, embedding dimension and Wilf check of ⟨gens⟩.
    Invariants {
        #[arg(long, value_delimiter = ',', required = true)]
        gens: Vec<u64>,
    },
    /// Draw one generator set; unconstrained unless --M is given.
    Sample {
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        trial: u64,
        #[arg(long = "M")]
        bound: Option<u64>,
    },
    /// Coverage of Z_q by the ⌈b·log₂q⌉-fold sumset of a random 2⌈b·log₂q⌉-subset.
    Sumset {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        b: f64,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Monte Carlo sweep over p, written as CSV.
    Sweep {
        #[arg(long = "p-list", value_delimiter = ',', required = true)]
        p_list: Vec<f64>,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// `auto` for ⌈50/p⌉ or a fixed bound; omit for the unconstrained model.
        #[arg(long = "M")]
        bound: Option<String>,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Event pipeline failure frequencies and the small-generator mean check.
    Events {
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Closed-form bounds at p.
    Bounds {
        #[arg(long)]
        p: f64,
    },
}

enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvariantViolation(_) | Error::IterationCap { .. } => Failure::Internal(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match with_workers(workers_from_env(), || run(cli.command)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match command {
        Command::Invariants { gens } => {
            let gens = normalize_generators(&gens)?;
            let inv = invariants(&gens)?;
            let wilf = if wilf_check(&inv).holds { "ok" } else { "VIOLATION" };
            writeln!(out, "gens={gens} {inv} wilf={wilf}")?;
        }
        Command::Sample { p, seed, trial, bound } => match bound {
            Some(m) => {
                let gens = sample_bounded(&ErConfig::new(p, m, seed)?, trial);
                writeln!(out, "gens={gens}")?;
            }
            None => {
                let trace = sample_unconstrained(p, seed, trial)?;
                writeln!(out, "gens={} stop_index={}", trace.gens, trace.stop_index)?;
            }
        },
        Command::Sumset { q, b, trials, seed } => {
            if q > MAX_SUMSET_MODULUS {
                return Err(Failure::Usage(format!("q = {q} exceeds the supported maximum {MAX_SUMSET_MODULUS}")));
            }
            writeln!(out, "{}", run_coverage_experiment(q, b, trials, seed)?)?;
        }
        Command::Sweep {
            p_list,
            trials,
            seed,
            bound,
            out: path,
        } => {
            let mode = match bound.as_deref() {
                None => SweepMode::Unconstrained,
                Some("auto") => SweepMode::Bounded(BoundSpec::Auto),
                Some(s) => SweepMode::Bounded(BoundSpec::Fixed(
                    s.parse().map_err(|_| Failure::Usage(format!("--M expects `auto` or an integer, got {s:?}")))?,
                )),
            };
            let cfg = SweepConfig {
                p_list,
                trials,
                master_seed: seed,
                mode,
            };
            for w in sweep_warnings(&cfg) {
                eprintln!("{w}");
            }
            let rows = run_sweep(&cfg)?;
            match path {
                Some(path) => {
                    let mut f = BufWriter::new(File::create(path)?);
                    write_sweep_csv(&mut f, &cfg, &rows)?;
                    f.flush()?;
                }
                None => write_sweep_csv(&mut out, &cfg, &rows)?,
            }
            if let Ok(fit) = conjecture_fit(&rows) {
                let fmt = |v: &[(f64, f64)]| {
                    v.iter()
                        .map(|(p, r)| format!("{}:{}", format_sig(*p), format_sig(*r)))
                        .collect::<Vec<_>>()
                        .join(" ")
                };
                eprintln!("ratio_F {} spread={}", fmt(&fit.ratio_frobenius), format_sig(fit.spread_frobenius));
                eprintln!("ratio_e {} spread={}", fmt(&fit.ratio_embedding), format_sig(fit.spread_embedding));
            }
        }
        Command::Events { p, trials, seed } => {
            let report = estimate_event_failures(p, trials, seed)?;
            writeln!(out, "{report}")?;
            match expected_small_generators_check(p, trials, seed)? {
                Some(r) => writeln!(out, "small_generators: {r}")?,
                None => writeln!(out, "small_generators: absent (no D1 trials)")?,
            }
            writeln!(
                out,
                "note: asymptotic decay rates are not checkable at this scale; these are trend diagnostics"
            )?;
        }
        Command::Bounds { p } => {
            let b = theoretical_bounds(p)?;
            let fields = [
                ("p", b.p),
                ("e_lower", b.e_lower),
                ("e_upper", b.e_upper),
                ("g_lower", b.g_lower),
                ("g_upper", b.g_upper),
                ("F_lower", b.frobenius_lower),
                ("F_upper", b.frobenius_upper),
                ("f_of_p", b.f_of_p),
                ("u_of_p", b.u_of_p),
                ("frobenius_square_bound", b.frobenius_square_bound),
            ];
            for (k, v) in fields {
                writeln!(out, "{k}={}", format_sig(v))?;
            }
        }
    }
    Ok(())
}

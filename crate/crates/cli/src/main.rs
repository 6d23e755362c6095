use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use maninlab::{envelope, parse_q_list, parse_selector, RunConfig, DEFAULT_SEED};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

mod commands;

#[derive(Parser, Debug)]
#[command(name = "maninlab", version, about = "Exact checks and counts for morphisms from P^1 to toric intrinsic quadrics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for every randomized check.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Args, Debug)]
struct VarietyArg {
    /// `xn:<n>`, `dp6a2`, a built-in name or a descriptor file.
    #[arg(long)]
    variety: String,
}

#[derive(Args, Debug)]
struct QArg {
    /// Comma-separated prime powers.
    #[arg(long)]
    q: String,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FanCheck {
    All,
    Simplicial,
    Smooth,
    Complete,
    Separated,
    Projective,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum PointMethod {
    Auto,
    Brute,
    Strata,
    /// Brute force and strata side by side.
    Compare,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Certificates for the fans of the X_n family.
    Fan {
        #[arg(long, value_delimiter = ',', default_values_t = [3usize, 4, 5, 6])]
        n: Vec<usize>,
        #[arg(long, value_enum, default_value = "all")]
        check: FanCheck,
        /// Sampled vectors for the completeness check.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
    /// Moebius table on vanishing patterns and its checks.
    Mu {
        #[command(flatten)]
        variety: VarietyArg,
        /// Random divisor tuples for the multiplicativity check.
        #[arg(long, default_value_t = 200)]
        tuples: usize,
    },
    /// Truncated generating series for one vanishing pattern.
    Series {
        #[command(flatten)]
        variety: VarietyArg,
        /// Comma-separated exponents, one per coordinate (default all zero).
        #[arg(long)]
        pattern: Option<String>,
        #[arg(long = "box", default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
        bound: u32,
        /// Check a previously written series dump instead of expanding.
        #[arg(long)]
        dump: Option<PathBuf>,
        /// Include every nonzero coefficient in the report.
        #[arg(long)]
        coeffs: bool,
    },
    /// Point counts over finite fields.
    Points {
        #[command(flatten)]
        variety: VarietyArg,
        #[command(flatten)]
        q: QArg,
        #[arg(long, value_enum, default_value = "auto")]
        method: PointMethod,
        /// Also interpolate the counting polynomial.
        #[arg(long)]
        polynomial: bool,
    },
    /// The local identity between weighted series values, densities and point counts.
    LocalCheck {
        #[command(flatten)]
        variety: VarietyArg,
        #[command(flatten)]
        q: QArg,
    },
    /// The cone constant, the divisibility index of -K and the positivity hypotheses.
    Alpha {
        #[command(flatten)]
        variety: VarietyArg,
    },
    /// Morphism counts by degree, or the kernel-count lemma suites.
    CountCurves {
        #[arg(long)]
        variety: Option<String>,
        #[arg(long)]
        q: Option<String>,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(i64).range(0..))]
        m_max: i64,
        /// Run the seeded random suites instead of counting.
        #[arg(long)]
        lemma_suite: bool,
        #[arg(long, default_value_t = 500)]
        linear: usize,
        #[arg(long, default_value_t = 200)]
        quasi: usize,
    },
    /// Direct counts against the lifted sum over divisor data.
    LiftingCheck {
        #[command(flatten)]
        variety: VarietyArg,
        #[command(flatten)]
        q: QArg,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(i64).range(0..))]
        m_max: i64,
    },
    /// Counts next to the predicted main term.
    Zeta {
        #[command(flatten)]
        variety: VarietyArg,
        #[command(flatten)]
        q: QArg,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(i64).range(0..))]
        m_max: i64,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
        euler_bound: u32,
    },
}

/// Bad input caught before any work is done.
struct Usage(String);

fn usage<E: std::fmt::Display>(e: E) -> Usage {
    Usage(e.to_string())
}

fn configure_threads() -> Result<(), Usage> {
    let Ok(raw) = std::env::var("MANINLAB_THREADS") else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().map_err(|_| Usage(format!("MANINLAB_THREADS={raw:?} is not a thread count")))?;
    if n == 0 {
        return Err(Usage("MANINLAB_THREADS must be positive".into()));
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(usage)
}

fn variety(cfg: &mut RunConfig, sel: &str) -> Result<variety_model::VarietyDescriptor, Usage> {
    cfg.variety = Some(sel.to_string());
    parse_selector(sel).and_then(|s| s.load()).map_err(usage)
}

fn q_list(cfg: &mut RunConfig, s: &str) -> Result<Vec<u64>, Usage> {
    cfg.q = parse_q_list(s).map_err(usage)?;
    Ok(cfg.q.clone())
}

/// Validates everything, then builds the job.
fn prepare(cli: &Cli) -> Result<(RunConfig, commands::Job), Usage> {
    use commands::Job;
    let mut cfg = RunConfig { seed: cli.seed, ..Default::default() };
    let job = match &cli.command {
        Command::Fan { n, check, samples } => {
            cfg.command = "fan".into();
            if n.iter().any(|&n| n < 2) {
                return Err(Usage("fan family index must be at least 2".into()));
            }
            Job::Fan { n: n.clone(), check: *check, samples: *samples }
        }
        Command::Mu { variety: v, tuples } => {
            cfg.command = "mu".into();
            Job::Mu { v: variety(&mut cfg, &v.variety)?, tuples: *tuples }
        }
        Command::Series { variety: v, pattern, bound, dump, coeffs } => {
            cfg.command = "series".into();
            cfg.box_bound = Some(*bound);
            let var = variety(&mut cfg, &v.variety)?;
            let pattern = match pattern {
                Some(p) => Some(
                    p.split(',').map(|x| x.trim().parse::<u32>()).collect::<Result<Vec<_>, _>>().map_err(|e| Usage(format!("pattern {p:?}: {e}")))?,
                ),
                None => None,
            };
            Job::Series { v: var, pattern, bound: *bound, dump: dump.clone(), coeffs: *coeffs }
        }
        Command::Points { variety: v, q, method, polynomial } => {
            cfg.command = "points".into();
            let var = variety(&mut cfg, &v.variety)?;
            Job::Points { v: var, q: q_list(&mut cfg, &q.q)?, method: *method, polynomial: *polynomial }
        }
        Command::LocalCheck { variety: v, q } => {
            cfg.command = "local-check".into();
            let var = variety(&mut cfg, &v.variety)?;
            Job::LocalCheck { v: var, q: q_list(&mut cfg, &q.q)? }
        }
        Command::Alpha { variety: v } => {
            cfg.command = "alpha".into();
            Job::Alpha { v: variety(&mut cfg, &v.variety)? }
        }
        Command::CountCurves { variety: v, q, m_max, lemma_suite, linear, quasi } => {
            cfg.command = "count-curves".into();
            if *lemma_suite {
                Job::LemmaSuite { linear: *linear, quasi: *quasi }
            } else {
                let (Some(v), Some(q)) = (v, q) else {
                    return Err(Usage("count-curves needs --variety and --q (or --lemma-suite)".into()));
                };
                cfg.m_max = Some(*m_max);
                let var = variety(&mut cfg, v)?;
                Job::CountCurves { v: var, q: q_list(&mut cfg, q)?, m_max: *m_max }
            }
        }
        Command::LiftingCheck { variety: v, q, m_max } => {
            cfg.command = "lifting-check".into();
            cfg.m_max = Some(*m_max);
            let var = variety(&mut cfg, &v.variety)?;
            Job::LiftingCheck { v: var, q: q_list(&mut cfg, &q.q)?, m_max: *m_max }
        }
        Command::Zeta { variety: v, q, m_max, euler_bound } => {
            cfg.command = "zeta".into();
            cfg.m_max = Some(*m_max);
            cfg.euler_bound = Some(*euler_bound);
            let var = variety(&mut cfg, &v.variety)?;
            Job::Zeta { v: var, q: q_list(&mut cfg, &q.q)?, m_max: *m_max, euler_bound: *euler_bound }
        }
    };
    Ok((cfg, job))
}

fn write_report(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(stdout.flush()?)
        }
    }
}

fn run(cli: &Cli, cfg: RunConfig, job: commands::Job) -> Result<bool> {
    let outcome = commands::run(job, &cfg)?;
    let report = envelope(&cfg, outcome.descriptor.as_ref(), outcome.pass, outcome.result);
    debug_assert!(!maninlab::has_float(&report));
    let mut text = serde_json::to_string_pretty(&report)?;
    text.push('\n');
    write_report(cli.out.as_ref(), &text)?;
    Ok(outcome.pass)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let prepared = configure_threads().and_then(|_| prepare(&cli));
    let (cfg, job) = match prepared {
        Ok(p) => p,
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    match run(&cli, cfg, job) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

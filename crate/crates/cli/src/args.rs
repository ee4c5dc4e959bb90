//! Command-line surface. Every per-prime report takes either a single `--p`
//! or an inclusive `--p-min`/`--p-max` sweep over odd primes; `scan` runs one
//! of them over a range with a JSONL result cache.

use std::path::PathBuf;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "fq", version, about = "Fermat-quotient reports and bound checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Output path; "-" writes to stdout.
    #[arg(long, global = true, default_value = "-")]
    pub output: String,

    /// Worker threads for sweeps over p; 1 runs sequentially. Output is
    /// byte-identical at every worker count.
    #[arg(long, global = true, default_value_t = 1)]
    pub workers: usize,

    /// Count multiples of p as vanishing (the convention that puts p itself
    /// into the sets and the n = p term into the sums).
    #[arg(long, global = true, action = ArgAction::Set, default_value_t = true, value_name = "BOOL")]
    pub include_p_term: bool,

    /// Evaluate through the definitional paths instead of the accelerated
    /// ones where both exist; results are identical either way.
    #[arg(long, global = true)]
    pub brute: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Jsonl,
}

/// Prime selection shared by the per-prime reports.
#[derive(Debug, Args)]
pub struct PRange {
    /// A single odd prime.
    #[arg(long, conflicts_with_all = ["p_min", "p_max"])]
    pub p: Option<u64>,

    /// Lower end of the prime sweep (inclusive).
    #[arg(long, default_value_t = 3)]
    pub p_min: u64,

    /// Upper end of the prime sweep (inclusive); required unless --p is
    /// given.
    #[arg(long)]
    pub p_max: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The quotient q_p(n) itself.
    Quotient {
        #[command(flatten)]
        range: PRange,
        /// Argument of the quotient.
        #[arg(long)]
        n: u64,
    },
    /// The smallest argument with nonvanishing quotient.
    Ell {
        #[command(flatten)]
        range: PRange,
    },
    /// The vanishing set Q_p(N): all n <= N with q_p(n) = 0.
    Setq {
        #[command(flatten)]
        range: PRange,
        /// Window height N.
        #[arg(long)]
        n: u64,
    },
    /// The vanishing primes R_p(N).
    Setr {
        #[command(flatten)]
        range: PRange,
        /// Window height N.
        #[arg(long)]
        n: u64,
    },
    /// The count #T_p(K) of w <= K coprime to p with w^(p-1) = 1 mod p².
    Countt {
        #[command(flatten)]
        range: PRange,
        /// Window height K.
        #[arg(long)]
        k: u64,
    },
    /// The generalized divisor function τ_s(n) with its main-term comparison.
    Taus {
        /// Argument n >= 3.
        #[arg(long)]
        n: u64,
        /// Order s >= 1 of the divisor function.
        #[arg(long)]
        s: u64,
    },
    /// The restricted sum S_p = Σ Λ(n)/n over the vanishing set up to p.
    Ihara {
        #[command(flatten)]
        range: PRange,
        /// Optional cutoff N for the partial sum; clamped to p.
        #[arg(long)]
        n: Option<u64>,
    },
    /// The unrestricted Mertens-style sum Σ_{n <= N} Λ(n)/n.
    Mertens {
        /// Window height N >= 1.
        #[arg(long)]
        n: u64,
    },
    /// The index logarithm log I_p with its comparison levels.
    Index {
        #[command(flatten)]
        range: PRange,
    },
    /// Granville's inequality #R_p(⌊p^(1/u)⌋) <= u·p^(1/(2u)) at each u.
    Granville {
        #[command(flatten)]
        range: PRange,
        /// Root indices to check, comma-separated.
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        u: Vec<u64>,
    },
    /// Diagnostic ratios for the cardinality, solution-count, sum, and index
    /// bounds at one window configuration.
    Ratios {
        #[command(flatten)]
        range: PRange,
        /// Window height N for the cardinality ratios.
        #[arg(long)]
        n: u64,
        /// Window height K for the solution-count ratio.
        #[arg(long)]
        k: u64,
        /// Slack multiplier in s = ⌈α·ln p/ln N⌉; defaults to a hair above
        /// the critical exponent 463/252.
        #[arg(long, default_value_t = fq_core::bounds::CRITICAL_EXPONENT + 1e-6)]
        alpha: f64,
    },
    /// Sweep one per-prime report over a range, reusing and extending a JSONL
    /// result cache.
    Scan {
        /// Which report to sweep.
        #[arg(value_enum)]
        command: ScanCommand,
        #[command(flatten)]
        range: PRange,
        /// --n of the underlying report, where it takes one.
        #[arg(long)]
        n: Option<u64>,
        /// --k of the underlying report, where it takes one.
        #[arg(long)]
        k: Option<u64>,
        /// --u list for granville.
        #[arg(long, value_delimiter = ',')]
        u: Option<Vec<u64>>,
        /// --alpha for ratios.
        #[arg(long)]
        alpha: Option<f64>,
        /// Cache file; computed rows are appended, cached rows are reused.
        /// The definitional (--brute) paths produce identical rows, so the
        /// cache is shared across that flag.
        #[arg(long, env = "FQ_CACHE")]
        cache: PathBuf,
    },
}

/// The per-prime reports `scan` can sweep (everything except the two reports
/// that take no prime at all).
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScanCommand {
    Quotient,
    Ell,
    Setq,
    Setr,
    Countt,
    Ihara,
    Index,
    Granville,
    Ratios,
}

impl ScanCommand {
    /// The stable name recorded in cache entries.
    pub fn name(self) -> &'static str {
        match self {
            ScanCommand::Quotient => "quotient",
            ScanCommand::Ell => "ell",
            ScanCommand::Setq => "setq",
            ScanCommand::Setr => "setr",
            ScanCommand::Countt => "countt",
            ScanCommand::Ihara => "ihara",
            ScanCommand::Index => "index",
            ScanCommand::Granville => "granville",
            ScanCommand::Ratios => "ratios",
        }
    }
}

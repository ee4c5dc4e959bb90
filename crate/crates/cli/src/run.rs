//! Dispatch: resolve the prime range, fan the per-prime computations out over
//! the worker pool, reuse a scan cache where one is given, and emit rows in
//! ascending order of p. Output is byte-identical at every worker count and
//! whether rows come from the cache or from fresh computation.

use std::collections::BTreeMap;
use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use serde_json::Value;

use fq_core::bounds;
use fq_core::divisor;
use fq_core::fermatq;
use fq_core::ihara;
use fq_core::index;
use fq_core::make_context;
use fq_core::primes::primes_up_to;

use crate::args::{Cli, Command, Format, PRange, ScanCommand};
use crate::cache;
use crate::rows::{
    BoundRow, CounttRow, EllRow, IharaRow, IndexRow, MertensRow, QuotientRow, Record, SetRow,
    TauRow,
};

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments (exit 2).
    Usage(String),
    /// I/O failure, corrupt cache, or an unexpected computational dead end
    /// (exit 3).
    Internal(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Internal(m) => f.write_str(m),
        }
    }
}

impl From<fq_core::Error> for CliError {
    fn from(e: fq_core::Error) -> Self {
        match e {
            // Running out of search room is not an argument problem.
            fq_core::Error::SearchExhausted { .. } => CliError::Internal(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Internal(format!("I/O error: {e}"))
    }
}

/// The global flags every computation respects.
#[derive(Clone, Copy)]
struct Opts {
    include_p_term: bool,
    brute: bool,
    workers: usize,
}

pub fn run(cli: Cli) -> Result<bool, CliError> {
    let opts = Opts {
        include_p_term: cli.include_p_term,
        brute: cli.brute,
        workers: cli.workers.max(1),
    };
    let mut emitter = Emitter::new(cli.format, &cli.output)?;
    let violated = dispatch(cli.command, opts, &mut emitter)?;
    emitter.flush()?;
    Ok(violated)
}

fn dispatch(command: Command, opts: Opts, emitter: &mut Emitter) -> Result<bool, CliError> {
    match command {
        Command::Quotient { range, n } => {
            quotient_cmd(resolve_ps(&range)?, n, opts, None, emitter)
        }
        Command::Ell { range } => ell_cmd(resolve_ps(&range)?, opts, None, emitter),
        Command::Setq { range, n } => set_cmd(resolve_ps(&range)?, n, true, opts, None, emitter),
        Command::Setr { range, n } => set_cmd(resolve_ps(&range)?, n, false, opts, None, emitter),
        Command::Countt { range, k } => countt_cmd(resolve_ps(&range)?, k, opts, None, emitter),
        Command::Taus { n, s } => {
            let record = divisor::tau_bound_report(n, s)?;
            emitter.header::<TauRow>()?;
            emitter.rows(std::slice::from_ref(&TauRow::from(&record)))?;
            Ok(false)
        }
        Command::Ihara { range, n } => ihara_cmd(resolve_ps(&range)?, n, opts, None, emitter),
        Command::Mertens { n } => {
            if n == 0 {
                return Err(CliError::Usage("the window height N must be at least 1".into()));
            }
            let mertens = ihara::mertens_sum(n);
            let log_n = (n as f64).ln();
            let row = MertensRow { n, mertens, log_n, deficit: mertens - log_n };
            emitter.header::<MertensRow>()?;
            emitter.rows(std::slice::from_ref(&row))?;
            Ok(false)
        }
        Command::Index { range } => index_cmd(resolve_ps(&range)?, opts, None, emitter),
        Command::Granville { range, u } => {
            granville_cmd(resolve_ps(&range)?, u, opts, None, emitter)
        }
        Command::Ratios { range, n, k, alpha } => {
            ratios_cmd(resolve_ps(&range)?, n, k, alpha, opts, None, emitter)
        }
        Command::Scan { command, range, n, k, u, alpha, cache } => {
            let ps = resolve_ps(&range)?;
            let need = |name: &str, v: Option<u64>| {
                v.ok_or_else(|| {
                    CliError::Usage(format!("scan {} requires --{name}", command.name()))
                })
            };
            match command {
                ScanCommand::Quotient => {
                    quotient_cmd(ps, need("n", n)?, opts, Some(cache), emitter)
                }
                ScanCommand::Ell => ell_cmd(ps, opts, Some(cache), emitter),
                ScanCommand::Setq => set_cmd(ps, need("n", n)?, true, opts, Some(cache), emitter),
                ScanCommand::Setr => set_cmd(ps, need("n", n)?, false, opts, Some(cache), emitter),
                ScanCommand::Countt => countt_cmd(ps, need("k", k)?, opts, Some(cache), emitter),
                ScanCommand::Ihara => ihara_cmd(ps, n, opts, Some(cache), emitter),
                ScanCommand::Index => index_cmd(ps, opts, Some(cache), emitter),
                ScanCommand::Granville => {
                    granville_cmd(ps, u.unwrap_or_else(|| vec![1, 2, 3]), opts, Some(cache), emitter)
                }
                ScanCommand::Ratios => ratios_cmd(
                    ps,
                    need("n", n)?,
                    need("k", k)?,
                    alpha.unwrap_or(bounds::CRITICAL_EXPONENT + 1e-6),
                    opts,
                    Some(cache),
                    emitter,
                ),
            }
        }
    }
}

/// The odd primes selected by --p or --p-min/--p-max.
fn resolve_ps(range: &PRange) -> Result<Vec<u64>, CliError> {
    if let Some(p) = range.p {
        return Ok(vec![p]);
    }
    let hi = range
        .p_max
        .ok_or_else(|| CliError::Usage("provide either --p or --p-max".to_string()))?;
    if range.p_min > hi {
        return Err(CliError::Usage(format!("--p-min {} exceeds --p-max {hi}", range.p_min)));
    }
    let lo = range.p_min.max(3);
    Ok(primes_up_to(hi).into_iter().filter(|&q| q >= lo).collect())
}

fn quotient_cmd(
    ps: Vec<u64>,
    n: u64,
    opts: Opts,
    cache_path: Option<PathBuf>,
    emitter: &mut Emitter,
) -> Result<bool, CliError> {
    let key = cache_path.map(|path| ScanKey::new(path, "quotient", vec![("n", Value::from(n))]));
    run_per_p::<QuotientRow, _>(
        ps,
        opts.workers,
        key,
        move |p| {
            let ctx = make_context(p)?;
            Ok(vec![QuotientRow { p, n, value: fermatq::fermat_quotient(&ctx, n).value }])
        },
        emitter,
    )
}

fn ell_cmd(
    ps: Vec<u64>,
    opts: Opts,
    cache_path: Option<PathBuf>,
    emitter: &mut Emitter,
) -> Result<bool, CliError> {
    let key = cache_path.map(|path| ScanKey::new(path, "ell", Vec::new()));
    run_per_p::<EllRow, _>(
        ps,
        opts.workers,
        key,
        move |p| {
            let ctx = make_context(p)?;
            Ok(vec![EllRow { p, ell: fermatq::smallest_nonvanishing(&ctx)? }])
        },
        emitter,
    )
}

fn set_cmd(
    ps: Vec<u64>,
    n: u64,
    full_set: bool,
    opts: Opts,
    cache_path: Option<PathBuf>,
    emitter: &mut Emitter,
) -> Result<bool, CliError> {
    let command = if full_set { "setq" } else { "setr" };
    let key = cache_path.map(|path| {
        ScanKey::new(
            path,
            command,
            vec![("n", Value::from(n)), ("include_p_term", Value::from(opts.include_p_term))],
        )
    });
    run_per_p::<SetRow, _>(
        ps,
        opts.workers,
        key,
        move |p| {
            let ctx = make_context(p)?;
            let report = if full_set {
                fermatq::enumerate_q_with(&ctx, n, opts.include_p_term, opts.brute)
            } else {
                fermatq::enumerate_r_with(&ctx, n, opts.include_p_term, opts.brute)
            };
            Ok(vec![SetRow::from(&report)])
        },
        emitter,
    )
}

fn countt_cmd(
    ps: Vec<u64>,
    k: u64,
    opts: Opts,
    cache_path: Option<PathBuf>,
    emitter: &mut Emitter,
) -> Result<bool, CliError> {
    let key = cache_path.map(|path| ScanKey::new(path, "countt", vec![("k", Value::from(k))]));
    run_per_p::<CounttRow, _>(
        ps,
        opts.workers,
        key,
        move |p| {
            let ctx = make_context(p)?;
            Ok(vec![CounttRow { p, k, count: fermatq::count_report(&ctx, k).cardinality }])
        },
        emitter,
    )
}

fn ihara_cmd(
    ps: Vec<u64>,
    cutoff: Option<u64>,
    opts: Opts,
    cache_path: Option<PathBuf>,
    emitter: &mut Emitter,
) -> Result<bool, CliError> {
    let key = cache_path.map(|path| {
        let mut params = vec![("include_p_term", Value::from(opts.include_p_term))];
        if let Some(c) = cutoff {
            params.push(("n", Value::from(c)));
        }
        ScanKey::new(path, "ihara", params)
    });
    run_per_p::<IharaRow, _>(
        ps,
        opts.workers,
        key,
        move |p| {
            let ctx = make_context(p)?;
            let report = match cutoff {
                None => ihara::ihara_full_with(&ctx, opts.include_p_term, opts.brute),
                // A cutoff past p is just the full sum.
                Some(c) => {
                    ihara::tail_report_with(&ctx, c.min(ctx.p), opts.include_p_term, opts.brute)?
                }
            };
            Ok(vec![IharaRow::from(&report)])
        },
        emitter,
    )
}

fn index_cmd(
    ps: Vec<u64>,
    opts: Opts,
    cache_path: Option<PathBuf>,
    emitter: &mut Emitter,
) -> Result<bool, CliError> {
    let key = cache_path.map(|path| {
        ScanKey::new(path, "index", vec![("include_p_term", Value::from(opts.include_p_term))])
    });
    run_per_p::<IndexRow, _>(
        ps,
        opts.workers,
        key,
        move |p| {
            let ctx = make_context(p)?;
            Ok(vec![IndexRow::from(&index::log_index_with(&ctx, opts.include_p_term, opts.brute))])
        },
        emitter,
    )
}

fn granville_cmd(
    ps: Vec<u64>,
    us: Vec<u64>,
    opts: Opts,
    cache_path: Option<PathBuf>,
    emitter: &mut Emitter,
) -> Result<bool, CliError> {
    let key = cache_path
        .map(|path| ScanKey::new(path, "granville", vec![("u", Value::from(us.clone()))]));
    run_per_p::<BoundRow, _>(
        ps,
        opts.workers,
        key,
        move |p| {
            let ctx = make_context(p)?;
            let records = bounds::granville_check_with(&ctx, &us, opts.brute)?;
            Ok(records.iter().map(BoundRow::from).collect())
        },
        emitter,
    )
}

#[allow(clippy::too_many_arguments)]
fn ratios_cmd(
    ps: Vec<u64>,
    n: u64,
    k: u64,
    alpha: f64,
    opts: Opts,
    cache_path: Option<PathBuf>,
    emitter: &mut Emitter,
) -> Result<bool, CliError> {
    let key = cache_path.map(|path| {
        ScanKey::new(
            path,
            "ratios",
            vec![
                ("n", Value::from(n)),
                ("k", Value::from(k)),
                ("alpha", Value::from(alpha)),
                ("include_p_term", Value::from(opts.include_p_term)),
            ],
        )
    });
    run_per_p::<BoundRow, _>(
        ps,
        opts.workers,
        key,
        move |p| {
            let ctx = make_context(p)?;
            let mut records =
                bounds::theorem_ratio_report_with(&ctx, n, alpha, opts.include_p_term, opts.brute)?;
            records.push(bounds::lemma_sols_ratio(&ctx, k)?);
            records.extend(bounds::sp_bound_report_with(&ctx, opts.include_p_term, opts.brute));
            Ok(records.iter().map(BoundRow::from).collect())
        },
        emitter,
    )
}

/// Cache identity for one scan: the file, the command name, and the
/// canonically ordered parameters that determine its rows.
struct ScanKey {
    path: PathBuf,
    command: &'static str,
    params: BTreeMap<String, Value>,
}

impl ScanKey {
    fn new(path: PathBuf, command: &'static str, params: Vec<(&'static str, Value)>) -> Self {
        ScanKey {
            path,
            command,
            params: params.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        }
    }
}

/// The shared pipeline: load matching cache rows, compute what is missing,
/// append the fresh entries (ascending p), then emit every prime's rows
/// ascending. Returns whether any row records a violation.
fn run_per_p<R, F>(
    ps: Vec<u64>,
    workers: usize,
    key: Option<ScanKey>,
    f: F,
    emitter: &mut Emitter,
) -> Result<bool, CliError>
where
    R: Record,
    F: Fn(u64) -> Result<Vec<R>, CliError> + Sync + Send,
{
    let mut cached: BTreeMap<u64, Vec<R>> = BTreeMap::new();
    if let Some(key) = &key {
        for entry in cache::load(&key.path).map_err(CliError::Internal)? {
            if entry.command == key.command
                && entry.params == key.params
                && ps.binary_search(&entry.p).is_ok()
                && !cached.contains_key(&entry.p)
            {
                let rows = entry
                    .result
                    .iter()
                    .map(|v| serde_json::from_value::<R>(v.clone()))
                    .collect::<Result<Vec<R>, _>>()
                    .map_err(|e| {
                        CliError::Internal(format!(
                            "corrupt cache {}: row for p = {}: {e}",
                            key.path.display(),
                            entry.p
                        ))
                    })?;
                cached.insert(entry.p, rows);
            }
        }
    }
    let missing: Vec<u64> = ps.iter().copied().filter(|p| !cached.contains_key(p)).collect();
    let fresh_pairs = compute_rows(missing, workers, &f)?;
    if let Some(key) = &key {
        let mut entries = Vec::with_capacity(fresh_pairs.len());
        for (p, rows) in &fresh_pairs {
            let result = rows
                .iter()
                .map(serde_json::to_value)
                .collect::<Result<Vec<Value>, _>>()
                .map_err(|e| CliError::Internal(format!("cannot serialize rows for p = {p}: {e}")))?;
            entries.push(cache::CacheEntry {
                schema_version: cache::SCHEMA_VERSION,
                p: *p,
                command: key.command.to_string(),
                params: key.params.clone(),
                result,
                toolkit_version: env!("CARGO_PKG_VERSION").to_string(),
            });
        }
        cache::append(&key.path, &entries).map_err(CliError::Internal)?;
    }
    let mut fresh: BTreeMap<u64, Vec<R>> = fresh_pairs.into_iter().collect();
    emitter.header::<R>()?;
    let mut violated = false;
    for p in &ps {
        let rows = cached
            .remove(p)
            .or_else(|| fresh.remove(p))
            .expect("every requested prime is either cached or computed");
        violated |= rows.iter().any(|r| r.is_violation());
        emitter.rows(&rows)?;
    }
    Ok(violated)
}

/// Evaluates `f` on every prime, in input order; the first error (in that
/// order) wins.
fn compute_rows<R, F>(ps: Vec<u64>, workers: usize, f: &F) -> Result<Vec<(u64, Vec<R>)>, CliError>
where
    R: Record,
    F: Fn(u64) -> Result<Vec<R>, CliError> + Sync + Send,
{
    let results = pool_map(workers, ps, |p| (p, f(p)));
    let mut out = Vec::with_capacity(results.len());
    for (p, r) in results {
        out.push((p, r?));
    }
    Ok(out)
}

#[cfg(feature = "parallel")]
fn pool_map<T, U, F>(workers: usize, inputs: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    if workers > 1 {
        // A dedicated pool pins the worker count; the map keeps input order,
        // so the output cannot depend on scheduling.
        match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
            Ok(pool) => pool.install(|| fq_core::parallel::map(inputs, f)),
            Err(_) => fq_core::parallel::map_seq(inputs, f),
        }
    } else {
        fq_core::parallel::map_seq(inputs, f)
    }
}

#[cfg(not(feature = "parallel"))]
fn pool_map<T, U, F>(_workers: usize, inputs: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    fq_core::parallel::map_seq(inputs, f)
}

/// CSV/JSONL writer over stdout or a file.
struct Emitter {
    format: Format,
    out: BufWriter<Box<dyn Write>>,
    header_done: bool,
}

impl Emitter {
    fn new(format: Format, output: &str) -> Result<Self, CliError> {
        let sink: Box<dyn Write> = if output == "-" {
            Box::new(io::stdout())
        } else {
            Box::new(
                File::create(output)
                    .map_err(|e| CliError::Internal(format!("cannot create {output}: {e}")))?,
            )
        };
        Ok(Emitter { format, out: BufWriter::new(sink), header_done: false })
    }

    /// Writes the CSV header once (a no-op for JSONL); emitted even when a
    /// sweep produces no rows.
    fn header<R: Record>(&mut self) -> Result<(), CliError> {
        if self.format == Format::Csv && !self.header_done {
            writeln!(self.out, "{}", R::HEADER)?;
        }
        self.header_done = true;
        Ok(())
    }

    fn rows<R: Record>(&mut self, rows: &[R]) -> Result<(), CliError> {
        for row in rows {
            match self.format {
                Format::Csv => writeln!(self.out, "{}", row.csv_fields().join(","))?,
                Format::Jsonl => {
                    let line = serde_json::to_string(row)
                        .map_err(|e| CliError::Internal(format!("cannot serialize row: {e}")))?;
                    writeln!(self.out, "{line}")?;
                }
            }
        }
        Ok(())
    }

    fn flush(&mut self) -> Result<(), CliError> {
        self.out.flush()?;
        Ok(())
    }
}

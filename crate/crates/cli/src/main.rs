//! `tribsum`: terms, closed-form partial sums, verification sweeps and OEIS
//! checks for generalized Tribonacci sequences.

mod output;
mod sequence;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use tribsum_core::oeis::{self, AlignmentStatus, BFileSource};
use tribsum_core::verify::{self, Suite, SuiteOutcome, Target};
use tribsum_core::{
    catalog, sum, sum_checked, sum_oracle, term_iterative, term_matrix, Direction, Error,
    FormulaCase, Parity, SequenceDef, SumQuery,
};

use output::{Format, Output};
use sequence::SequenceArgs;

#[derive(Parser, Debug)]
#[command(name = "tribsum", version, about)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate W_n
    Term(TermArgs),
    /// Partial sum over all, even or odd indices, forward or backward
    Sum(SumArgs),
    /// Check the closed forms against the oracle
    Verify(VerifyArgs),
    /// Compare catalog sequences with OEIS b-files
    OeisCheck(OeisArgs),
    /// Time closed-form sums against term-by-term summation
    Bench(BenchArgs),
    /// List the catalog
    Catalog,
}

#[derive(clap::Args, Debug)]
struct TermArgs {
    #[command(flatten)]
    sequence: SequenceArgs,
    /// Index, may be negative
    #[arg(long, allow_hyphen_values = true)]
    n: i64,
    /// Evaluation method
    #[arg(long, value_enum, default_value_t = Method::Matrix)]
    method: Method,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Matrix,
    Iterative,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DirArg {
    Fwd,
    Bwd,
}

impl From<DirArg> for Direction {
    fn from(d: DirArg) -> Self {
        match d {
            DirArg::Fwd => Direction::Forward,
            DirArg::Bwd => Direction::Backward,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ParityArg {
    All,
    Even,
    Odd,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Self {
        match p {
            ParityArg::All => Parity::All,
            ParityArg::Even => Parity::Even,
            ParityArg::Odd => Parity::Odd,
        }
    }
}

#[derive(clap::Args, Debug)]
struct SumArgs {
    #[command(flatten)]
    sequence: SequenceArgs,
    #[arg(long, value_enum, default_value_t = DirArg::Fwd)]
    dir: DirArg,
    #[arg(long, value_enum, default_value_t = ParityArg::All)]
    parity: ParityArg,
    /// Upper summation bound
    #[arg(long)]
    n: u64,
    /// Also sum term by term and fail on disagreement
    #[arg(long)]
    check: bool,
}

#[derive(clap::Args, Debug)]
struct VerifyArgs {
    /// Largest n checked in every sum family
    #[arg(long, default_value_t = 100)]
    max_n: u64,
    /// Restrict to these catalog keys (repeatable)
    #[arg(long)]
    seq: Vec<String>,
    /// Add this many random parameter sets
    #[arg(long, value_name = "K")]
    random: Option<usize>,
    /// Seed for --random
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(clap::Args, Debug)]
struct OeisArgs {
    /// Catalog keys to check (repeatable); all entries by default
    #[arg(long)]
    seq: Vec<String>,
    /// Terms to compare after alignment
    #[arg(long, default_value_t = 50)]
    count: usize,
    /// Download b-files from OEIS into the fixture directory
    #[arg(long)]
    network: bool,
    /// Directory of b<digits>.txt files
    #[arg(long, env = oeis::FIXTURE_DIR_ENV)]
    fixture_dir: Option<PathBuf>,
    #[arg(long, default_value = oeis::DEFAULT_BASE_URL, hide = true)]
    base_url: String,
}

#[derive(clap::Args, Debug)]
struct BenchArgs {
    #[command(flatten)]
    sequence: SequenceArgs,
    /// Sum sizes
    #[arg(long, value_delimiter = ',', num_args = 1.., default_values_t = [1_000, 10_000, 100_000])]
    n: Vec<u64>,
    #[arg(long, value_enum, default_value_t = DirArg::Fwd)]
    dir: DirArg,
    #[arg(long, value_enum, default_value_t = ParityArg::All)]
    parity: ParityArg,
}

/// A failed command: exit status plus message for stderr.
struct Failure {
    code: u8,
    message: String,
}

const EXIT_USAGE: u8 = 2;
const EXIT_MISMATCH: u8 = 3;
const EXIT_OEIS: u8 = 4;

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::OracleMismatch { .. } => EXIT_MISMATCH,
            Error::FixtureMissing { .. }
            | Error::FetchFailed { .. }
            | Error::MalformedBFile { .. }
            | Error::InvalidOeisId(_) => EXIT_OEIS,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<(), Failure>;

#[derive(Serialize)]
struct TermRecord<'a> {
    command: &'static str,
    sequence: &'a SequenceDef,
    n: i64,
    value: String,
}

fn cmd_term(out: Output, args: &TermArgs) -> Outcome {
    let def = args.sequence.resolve().map_err(Failure::usage)?;
    let value = match args.method {
        Method::Matrix => term_matrix(&def, args.n)?,
        Method::Iterative => term_iterative(&def, args.n)?,
    };
    let value = value.to_string();
    out.emit(
        || value.clone(),
        &TermRecord {
            command: "term",
            sequence: &def,
            n: args.n,
            value: value.clone(),
        },
    );
    Ok(())
}

#[derive(Serialize)]
struct SumRecord<'a> {
    command: &'static str,
    sequence: &'a SequenceDef,
    direction: &'static str,
    parity: &'static str,
    n: u64,
    value: String,
    case_used: FormulaCase,
    oracle_checked: bool,
}

fn cmd_sum(out: Output, args: &SumArgs) -> Outcome {
    let def = args.sequence.resolve().map_err(Failure::usage)?;
    let query = SumQuery::new(args.dir.into(), args.parity.into(), args.n);
    let result = if args.check {
        sum_checked(&def, &query)?
    } else {
        sum(&def, &query)?
    };
    let value = result.value.to_string();
    out.emit(
        || format!("{value} ({})", result.case_used),
        &SumRecord {
            command: "sum",
            sequence: &def,
            direction: query.direction.label(),
            parity: query.parity.label(),
            n: query.n,
            value: value.clone(),
            case_used: result.case_used,
            oracle_checked: result.oracle_checked,
        },
    );
    Ok(())
}

#[derive(Serialize)]
struct SuiteRecord<'a> {
    command: &'static str,
    suite: &'static str,
    #[serde(flatten)]
    outcome: &'a SuiteOutcome,
}

#[derive(Serialize)]
struct VerifySummary {
    command: &'static str,
    result: &'static str,
    targets: usize,
    max_n: u64,
    checks: u64,
    failed: u64,
}

fn verify_targets(args: &VerifyArgs) -> Result<Vec<Target>, Failure> {
    let mut targets = Vec::new();
    if args.seq.is_empty() {
        if args.random.is_none() {
            targets = verify::catalog_targets();
        }
    } else {
        for key in &args.seq {
            targets.push(Target::from_catalog(catalog::lookup(key)?));
        }
    }
    if let Some(k) = args.random {
        targets.extend(verify::random_targets(args.seed, k));
    }
    if targets.is_empty() {
        return Err(Failure::usage("nothing to verify"));
    }
    Ok(targets)
}

fn cmd_verify(out: Output, args: &VerifyArgs) -> Outcome {
    let targets = verify_targets(args)?;
    let report = verify::run(&targets, args.max_n)?;
    for (suite, outcome) in &report.suites {
        out.emit(
            || {
                let mut text = format!(
                    "{:<24} {:>7} checks {:>4} failed",
                    suite.name(),
                    outcome.checks,
                    outcome.failed
                );
                if outcome.fallbacks > 0 && *suite == Suite::FormulaVsOracle {
                    text += &format!(" ({} oracle fallbacks)", outcome.fallbacks);
                }
                for f in &outcome.failures {
                    text += &format!("\n  {f}");
                }
                text
            },
            &SuiteRecord {
                command: "verify",
                suite: suite.name(),
                outcome,
            },
        );
    }
    let result = if report.passed() { "PASS" } else { "FAIL" };
    out.emit(
        || {
            format!(
                "{result}: {} checks, {} failed (sequences: {}, max n: {})",
                report.total_checks(),
                report.total_failed(),
                report.targets,
                args.max_n
            )
        },
        &VerifySummary {
            command: "verify",
            result,
            targets: report.targets,
            max_n: args.max_n,
            checks: report.total_checks(),
            failed: report.total_failed(),
        },
    );
    if report.passed() {
        Ok(())
    } else {
        Err(Failure {
            code: EXIT_MISMATCH,
            message: format!("{} checks failed", report.total_failed()),
        })
    }
}

#[derive(Serialize)]
struct OeisRecord<'a> {
    command: &'static str,
    seq: &'a str,
    oeis_id: Option<&'a str>,
    status: &'static str,
    shift: Option<i64>,
    compared: usize,
    matched: usize,
    detail: Option<String>,
}

fn cmd_oeis_check(out: Output, args: &OeisArgs) -> Outcome {
    let entries = if args.seq.is_empty() {
        catalog::list_all().iter().collect()
    } else {
        args.seq
            .iter()
            .map(|k| catalog::lookup(k))
            .collect::<Result<Vec<_>, _>>()?
    };
    let dir = args
        .fixture_dir
        .clone()
        .unwrap_or_else(oeis::bundled_fixture_dir);
    let source = if args.network {
        BFileSource::Network {
            base_url: args.base_url.clone(),
            cache_dir: dir,
        }
    } else {
        BFileSource::FixtureDir(dir)
    };

    let mut failures = 0;
    for entry in entries {
        let mut record = OeisRecord {
            command: "oeis-check",
            seq: entry.key,
            oeis_id: entry.primary_oeis_id(),
            status: "skipped",
            shift: None,
            compared: 0,
            matched: 0,
            detail: None,
        };
        let text = match entry.primary_oeis_id() {
            None => "skipped: no OEIS id".to_string(),
            Some(id) => match oeis::fetch_bfile(id, &source) {
                Err(e) => {
                    record.status = "error";
                    record.detail = Some(e.to_string());
                    format!("{id} FAILED: {e}")
                }
                Ok(bfile) => {
                    let report = oeis::align(&entry.def, &bfile);
                    if report.status == AlignmentStatus::NoAlignment {
                        record.status = "no-alignment";
                        format!(
                            "{id} FAILED: no shift in {}..={} matches {} terms",
                            oeis::SHIFT_WINDOW.start(),
                            oeis::SHIFT_WINDOW.end(),
                            oeis::MIN_MATCHED_TERMS
                        )
                    } else {
                        let cmp = oeis::compare(&entry.def, &bfile, report.shift, args.count);
                        record.shift = Some(report.shift);
                        record.compared = cmp.compared;
                        record.matched = cmp.matched;
                        let expected = entry.oeis_offset_shift.unwrap_or(report.shift);
                        let ok = cmp.matched == args.count && expected == report.shift;
                        record.status = if ok { "ok" } else { "mismatch" };
                        let mut text = format!(
                            "{id} aligned (shift {}), {}/{} match",
                            report.shift, cmp.matched, args.count
                        );
                        if expected != report.shift {
                            text += &format!(", catalog expects shift {expected}");
                        }
                        if let Some(n) = cmp.first_mismatch {
                            text += &format!(", first mismatch at n={n}");
                        }
                        text
                    }
                }
            },
        };
        if !matches!(record.status, "ok" | "skipped") {
            failures += 1;
        }
        out.emit(|| format!("{}: {text}", entry.key), &record);
    }
    if failures == 0 {
        Ok(())
    } else {
        Err(Failure {
            code: EXIT_OEIS,
            message: format!("{failures} sequence(s) failed the OEIS check"),
        })
    }
}

#[derive(Serialize)]
struct BenchRecord {
    command: &'static str,
    n: u64,
    case_used: FormulaCase,
    closed_form_ns: u128,
    oracle_ns: u128,
    speedup: f64,
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let value = f();
    (value, start.elapsed())
}

fn cmd_bench(out: Output, args: &BenchArgs) -> Outcome {
    let def = args
        .sequence
        .resolve_or(Some("tribonacci"))
        .map_err(Failure::usage)?;
    out.text(|| {
        format!(
            "{:>10}  {:>14}  {:>14}  {:>9}  case",
            "n", "closed form", "oracle", "speedup"
        )
    });
    for &n in &args.n {
        let query = SumQuery::new(args.dir.into(), args.parity.into(), n);
        let (closed, closed_time) = timed(|| sum(&def, &query));
        let (oracle, oracle_time) = timed(|| sum_oracle(&def, &query));
        let closed = closed?;
        if closed.value != oracle? {
            return Err(Failure {
                code: EXIT_MISMATCH,
                message: format!("closed form and oracle disagree at n={n}"),
            });
        }
        let speedup = oracle_time.as_secs_f64() / closed_time.as_secs_f64().max(1e-9);
        out.emit(
            || {
                format!(
                    "{n:>10}  {:>14}  {:>14}  {speedup:>8.1}x  {}",
                    format!("{closed_time:.2?}"),
                    format!("{oracle_time:.2?}"),
                    closed.case_used
                )
            },
            &BenchRecord {
                command: "bench",
                n,
                case_used: closed.case_used,
                closed_form_ns: closed_time.as_nanos(),
                oracle_ns: oracle_time.as_nanos(),
                speedup,
            },
        );
    }
    Ok(())
}

#[derive(Serialize)]
struct CatalogRecord<'a> {
    command: &'static str,
    #[serde(flatten)]
    entry: &'a catalog::CatalogEntry,
}

fn cmd_catalog(out: Output) -> Outcome {
    out.text(|| format!("{:<30} {:<4} {:<26} OEIS", "key", "sym", "W(a,b,c; r,s,t)"));
    for entry in catalog::list_all() {
        let d = &entry.def;
        let p = &d.params;
        out.emit(
            || {
                let def = format!("W({},{},{}; {},{},{})", d.w0, d.w1, d.w2, p.r, p.s, p.t);
                let ids = if entry.oeis_ids.is_empty() {
                    "-".to_string()
                } else {
                    entry.oeis_ids.join(", ")
                };
                format!("{:<30} {:<4} {def:<26} {ids}", entry.key, entry.symbol)
            },
            &CatalogRecord {
                command: "catalog",
                entry,
            },
        );
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = Output { format: cli.format };
    let outcome = match &cli.command {
        Command::Term(args) => cmd_term(out, args),
        Command::Sum(args) => cmd_sum(out, args),
        Command::Verify(args) => cmd_verify(out, args),
        Command::OeisCheck(args) => cmd_oeis_check(out, args),
        Command::Bench(args) => cmd_bench(out, args),
        Command::Catalog => cmd_catalog(out),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

//! `comppat`: batch front end for the composition/word pattern engine.
//!
//! Exit codes: 0 success, 2 usage, 3 numeric failure, 4 verification mismatch.

mod report;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use comppat::asymptotics::{emit_curve, estimate_with, AsymptoticError, EstimateConfig, MAX_MODULUS, MIN_SAMPLES};
use comppat::genfun::build;
use comppat::patterns::{brute_force_table, brute_force_word_table};
use comppat::words::word_gf;
use comppat::{OccurrenceTable, PartSet, PatternId, SeriesError};
use num_bigint::BigInt;
use serde_json::{json, Value};

use report::{Envelope, Table};

const MAX_ORDER: u32 = 60;
/// Brute-force enumeration grows like 2^n; beyond this the oracle is too slow to be useful.
const MAX_ORACLE_N: u32 = 20;
const MAX_ORACLE_WORDS: u64 = 10_000_000;

#[derive(Parser)]
#[command(name = "comppat", version, about = "Pattern statistics in integer compositions and k-ary words")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full (n, m, r) coefficient table of the generating function.
    Expand(ExpandArgs),
    /// Number of avoiding compositions for n = 0..order.
    Avoiders(AvoidersArgs),
    /// Growth constant, amplitude and winding check over all positive parts.
    Asymptotics(AsymptoticsArgs),
    /// Compare the generating function against brute-force enumeration.
    Verify(VerifyArgs),
    /// (m, r) coefficient table for words over [k].
    Words(WordsArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct Target {
    /// One of 111, 112, 221, 123, peak, valley.
    #[arg(long)]
    pattern: PatternId,
    /// "nat" or a strictly increasing list such as 1,3,4.
    #[arg(long)]
    set: PartSet,
    /// Largest n kept (at most 60).
    #[arg(long, value_parser = clap::value_parser!(u32).range(0..=MAX_ORDER as i64))]
    order: u32,
}

#[derive(Args)]
struct ExpandArgs {
    #[command(flatten)]
    target: Target,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct AvoidersArgs {
    #[command(flatten)]
    target: Target,
    /// Emit "n a(n)" lines instead of JSON.
    #[arg(long)]
    bfile: bool,
}

#[derive(Args)]
struct AsymptoticsArgs {
    #[arg(long)]
    pattern: PatternId,
    /// Radius of the winding contour (below 0.8).
    #[arg(long, default_value_t = 0.7)]
    radius: f64,
    /// Contour samples (at least 1024).
    #[arg(long, default_value_t = 4096)]
    samples: usize,
    /// Also write the image of the contour as CSV.
    #[arg(long, value_name = "PATH")]
    curve_csv: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    pattern: PatternId,
    #[arg(long, required_unless_present = "words", conflicts_with = "words")]
    set: Option<PartSet>,
    #[arg(long, required_unless_present = "words", conflicts_with = "words")]
    max_n: Option<u32>,
    /// Check word series instead of compositions.
    #[arg(long, requires_all = ["k", "max_m"])]
    words: bool,
    #[arg(short, long)]
    k: Option<u32>,
    #[arg(long)]
    max_m: Option<u32>,
}

#[derive(Args)]
struct WordsArgs {
    #[arg(long)]
    pattern: PatternId,
    /// Alphabet size.
    #[arg(short, long)]
    k: u32,
    /// Longest word length kept (at most 60).
    #[arg(long, value_parser = clap::value_parser!(u32).range(0..=MAX_ORDER as i64))]
    order: u32,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Numeric(String),
    Mismatch(String),
    Io(io::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Numeric(_) | Failure::Io(_) => 3,
            Failure::Mismatch(_) => 4,
        }
    }
}

impl From<SeriesError> for Failure {
    fn from(e: SeriesError) -> Self {
        Failure::Numeric(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn command_echo() -> String {
    std::env::args().skip(1).collect::<Vec<_>>().join(" ")
}

fn expand(args: &ExpandArgs, out: &mut impl Write) -> Result<(), Failure> {
    let t = &args.target;
    let series = build::<BigInt>(t.pattern, &t.set, t.order)?;
    let table = OccurrenceTable::from_series(t.pattern, t.set.clone(), t.order, &series);
    match args.format {
        Format::Csv => Table::compositions(&table).write_csv(out)?,
        Format::Json => {
            let env = Envelope::new("expand", t.pattern).with_set(&t.set, t.order);
            env.write(out, [("coefficients", Table::compositions(&table).json())])?;
        }
    }
    Ok(())
}

fn avoiders(args: &AvoidersArgs, out: &mut impl Write) -> Result<(), Failure> {
    let t = &args.target;
    let seq = build::<BigInt>(t.pattern, &t.set, t.order)?.avoidance_sequence();
    if args.bfile {
        for (n, a) in seq.iter().enumerate() {
            writeln!(out, "{n} {a}")?;
        }
        return Ok(());
    }
    let values: Vec<Value> = seq.iter().map(|a| Value::String(a.to_string())).collect();
    Envelope::new("avoiders", t.pattern).with_set(&t.set, t.order).write(out, [("values", Value::Array(values))])?;
    Ok(())
}

fn numeric(e: AsymptoticError) -> Failure {
    Failure::Numeric(e.to_string())
}

fn asymptotics(args: &AsymptoticsArgs, out: &mut impl Write) -> Result<(), Failure> {
    if !(args.radius > 0.0 && args.radius < MAX_MODULUS) {
        return Err(usage(format!("--radius must lie in (0, {MAX_MODULUS}), got {}", args.radius)));
    }
    if args.samples < MIN_SAMPLES {
        return Err(usage(format!("--samples must be at least {MIN_SAMPLES}, got {}", args.samples)));
    }
    let cfg = EstimateConfig { radius: args.radius, samples: args.samples, ..EstimateConfig::default() };
    let est = estimate_with(args.pattern, cfg).map_err(numeric)?;
    if let Some(path) = &args.curve_csv {
        let rows = emit_curve(args.pattern, args.radius, args.samples).map_err(numeric)?;
        let mut csv = String::from("re_x,im_x,re_f,im_f\n");
        for r in rows {
            csv.push_str(&format!("{},{},{},{}\n", r.x.re, r.x.im, r.f.re, r.f.im));
        }
        fs::write(path, csv)?;
    }
    let mut fields = vec![
        ("rho", json!(est.rho)),
        ("v", json!(est.growth_v)),
        ("K", json!(est.constant_k)),
        ("winding", json!(est.winding)),
        ("f_at_rho", json!(est.f_at_rho)),
        (
            "tolerances",
            json!({
                "root_tol": cfg.root_tol,
                "tail_eps": cfg.tail_eps,
                "fd_step": cfg.fd_step,
                "radius": cfg.radius,
                "samples": cfg.samples,
            }),
        ),
    ];
    if est.winding != 1 {
        let msg = format!(
            "winding number {} at radius {}: the contour does not isolate exactly one simple zero",
            est.winding, args.radius
        );
        fields.push(("warning", Value::String(msg)));
    }
    Envelope::new("asymptotics", args.pattern).write(out, fields)?;
    Ok(())
}

fn verify(args: &VerifyArgs, out: &mut impl Write) -> Result<(), Failure> {
    let p = args.pattern;
    let (env, expected, actual) = if args.words {
        let (k, max_m) = (args.k.unwrap_or(0), args.max_m.unwrap_or(0));
        if k == 0 {
            return Err(usage("-k must be at least 1"));
        }
        if (k as u64).checked_pow(max_m).is_none_or(|c| c > MAX_ORACLE_WORDS) {
            return Err(usage(format!("--max-m {max_m} with -k {k} exceeds the brute-force budget")));
        }
        let series = word_gf::<BigInt>(p, k, max_m)?;
        let set = PartSet::alphabet(k).expect("k >= 1");
        let env = Envelope::new("verify", p).with_words(k, max_m);
        (env, brute_force_word_table(p, k, max_m), OccurrenceTable::from_series(p, set, max_m, &series))
    } else {
        let set = args.set.clone().expect("clap enforces --set");
        let max_n = args.max_n.expect("clap enforces --max-n");
        if max_n > MAX_ORACLE_N {
            return Err(usage(format!("--max-n {max_n} exceeds the brute-force cap {MAX_ORACLE_N}")));
        }
        let series = build::<BigInt>(p, &set, max_n)?;
        let env = Envelope::new("verify", p).with_set(&set, max_n);
        (env, brute_force_table(p, &set, max_n), OccurrenceTable::from_series(p, set.clone(), max_n, &series))
    };
    let (checked, mismatches) = expected.compare(&actual);
    let rows: Vec<Value> = mismatches
        .iter()
        .map(|m| {
            let mut row =
                json!({"m": m.m, "r": m.r, "expected": m.expected.to_string(), "actual": m.actual.to_string()});
            if !args.words {
                row["n"] = json!(m.n);
            }
            row
        })
        .collect();
    let count = rows.len();
    env.write(out, [("checked", json!(checked)), ("mismatches", Value::Array(rows))])?;
    if count > 0 {
        return Err(Failure::Mismatch(format!("{count} of {checked} cells disagree")));
    }
    Ok(())
}

fn words(args: &WordsArgs, out: &mut impl Write) -> Result<(), Failure> {
    if args.k == 0 {
        return Err(usage("-k must be at least 1"));
    }
    let series = word_gf::<BigInt>(args.pattern, args.k, args.order)?;
    let set = PartSet::alphabet(args.k).expect("k >= 1");
    let table = OccurrenceTable::from_series(args.pattern, set, args.order, &series);
    match args.format {
        Format::Csv => Table::words(&table).write_csv(out)?,
        Format::Json => {
            let env = Envelope::new("words", args.pattern).with_words(args.k, args.order);
            env.write(out, [("coefficients", Table::words(&table).json())])?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = match &cli.command {
        Command::Expand(a) => expand(a, &mut out),
        Command::Avoiders(a) => avoiders(a, &mut out),
        Command::Asymptotics(a) => asymptotics(a, &mut out),
        Command::Verify(a) => verify(a, &mut out),
        Command::Words(a) => words(a, &mut out),
    };
    let flushed = out.flush();
    match result.and(flushed.map_err(Failure::Io)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let msg = match &f {
                Failure::Usage(m) | Failure::Numeric(m) | Failure::Mismatch(m) => m.clone(),
                Failure::Io(e) => e.to_string(),
            };
            eprintln!("comppat: {msg}");
            ExitCode::from(f.code())
        }
    }
}

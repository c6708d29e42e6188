//! `zigzag`: classify reductions, check weight families and run sweeps.

mod config;
mod output;
mod sweep;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use thiserror::Error;

use zigzag_core::crystalline::classify_crystalline;
use zigzag_core::family::{chart_convergence, chart_limit, ApFamily, EvalMode, FamilyGenerator};
use zigzag_core::padic::{parse_element, DEFAULT_PRECISION};
use zigzag_core::semistable::{classify_semistable, SemistableInput};
use zigzag_core::verdict::{ClassifyOptions, ZigZagVerdict};
use zigzag_core::{CappedElement, Error};

use config::Config;
use output::{render_record, render_table, Format, Tabular, VerdictRecord};
use sweep::{compute_rows, Summary};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0} certified rows failed")]
    Failures(usize),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::Parse(_)) | CliError::Usage(_) => 2,
            CliError::Core(Error::InsufficientPrecision { .. }) => 4,
            CliError::Core(_) => 3,
            CliError::Io(_) | CliError::Failures(_) => 1,
        }
    }
}

#[derive(Parser)]
#[command(name = "zigzag", version, about = "Reductions of crystalline and semi-stable representations at exceptional weights")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalArgs {
    /// Absolute p-adic precision of capped arithmetic.
    #[arg(long, global = true)]
    precision: Option<i64>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Seed for pseudorandom families.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Accept p = 3, outside the proved range.
    #[arg(long, global = true)]
    allow_p3: bool,
    /// Smallest t reported as the proved regime (default r0).
    #[arg(long, global = true)]
    tmin: Option<i64>,
    /// Use exact arithmetic instead of capped arithmetic.
    #[arg(long, global = true)]
    exact: bool,
    /// Flat key=value file; command-line flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a single representation.
    #[command(subcommand)]
    Classify(ClassifyCmd),
    /// Work with one weight family `p;k0;[c0,c1,...]`.
    #[command(subcommand)]
    Family(FamilyCmd),
    /// Verify many families over a range of weights.
    Sweep(SweepArgs),
}

#[derive(Subcommand)]
enum ClassifyCmd {
    /// V_{k,a_p}.
    Crystalline {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: i64,
        /// Element literal such as `505` or `5/2 + 1/2*s` (s = √p).
        #[arg(long, allow_hyphen_values = true)]
        ap: String,
    },
    /// V_{k0,𝔏}.
    Semistable {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k0: i64,
        #[arg(long = "L", visible_alias = "l", allow_hyphen_values = true)]
        l_invariant: String,
    },
}

#[derive(Args)]
struct WeightArgs {
    #[arg(long)]
    family: String,
    /// Weights k0 + (p−1)p^m for m in `A..B` (inclusive, default 1..5) or a single `m`.
    #[arg(long)]
    m: Option<String>,
    /// Explicit weights; overrides `--m`.
    #[arg(long = "k")]
    ks: Vec<i64>,
}

#[derive(Subcommand)]
enum FamilyCmd {
    /// The limit point of the chart.
    Limit {
        #[arg(long)]
        family: String,
    },
    /// Verification rows at each weight.
    Verify(WeightArgs),
    /// Chart gap at each weight.
    Chart(WeightArgs),
}

#[derive(Args)]
struct SweepArgs {
    /// Family literal; may repeat.
    #[arg(long)]
    family: Vec<String>,
    /// Primes for generated families, comma separated.
    #[arg(long)]
    primes: Option<String>,
    /// Number of generated families (needs --seed).
    #[arg(long)]
    count: Option<usize>,
    /// Range of m, `A..B` inclusive (default 2..6).
    #[arg(long)]
    m: Option<String>,
    /// Range of r0 for generated families, `A..B` inclusive.
    #[arg(long)]
    r0: Option<String>,
    /// Largest coefficient degree of generated families.
    #[arg(long)]
    degree: Option<usize>,
}

/// Flags merged with the config file.
struct Settings {
    precision: i64,
    format: Format,
    seed: Option<u64>,
    out: Option<PathBuf>,
    exact: bool,
    opts: ClassifyOptions,
    config: Config,
}

impl Settings {
    fn new(g: GlobalArgs) -> Result<Self, CliError> {
        let config = match &g.config {
            Some(path) => Config::load(path)?,
            None => Config::default(),
        };
        let precision = g.precision.or(config.typed("precision")?).unwrap_or(DEFAULT_PRECISION);
        if precision < 1 {
            return Err(CliError::Usage(format!("precision must be positive, got {precision}")));
        }
        Ok(Settings {
            precision,
            format: g.format.or(config.typed("format")?).unwrap_or(Format::Text),
            seed: g.seed.or(config.typed("seed")?),
            out: g.out.or(config.typed("out")?),
            exact: g.exact || config.typed("exact")?.unwrap_or(false),
            opts: ClassifyOptions {
                t_min: g.tmin.or(config.typed("tmin")?),
                allow_p3: g.allow_p3 || config.typed("allow-p3")?.unwrap_or(false),
            },
            config,
        })
    }

    fn mode(&self) -> EvalMode {
        if self.exact {
            EvalMode::Exact
        } else {
            EvalMode::Capped(self.precision)
        }
    }

    fn emit(&self, text: &str) -> Result<(), CliError> {
        match &self.out {
            Some(path) => std::fs::write(path, text)?,
            None => std::io::stdout().write_all(text.as_bytes())?,
        }
        Ok(())
    }
}

/// Parses `A..B` (inclusive) or a single integer.
fn parse_range(text: &str) -> Result<(i64, i64), CliError> {
    let bad = || CliError::Usage(format!("invalid range `{text}`, expected A..B"));
    let (lo, hi) = match text.split_once("..") {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
        None => {
            let v = text.trim().parse().map_err(|_| bad())?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn m_range(flag: Option<&str>, s: &Settings, default: &str) -> Result<(u32, u32), CliError> {
    let (lo, hi) = parse_range(flag.or(s.config.get("m")).unwrap_or(default))?;
    if lo < 1 || hi > 30 {
        return Err(CliError::Usage(format!("m must lie in 1..30, got {lo}..{hi}")));
    }
    Ok((lo as u32, hi as u32))
}

fn verdict_output(v: &ZigZagVerdict, s: &Settings) -> Result<(), CliError> {
    s.emit(&render_record(&VerdictRecord::new(v), s.format))
}

fn classify(cmd: ClassifyCmd, s: &Settings) -> Result<(), CliError> {
    let verdict = match cmd {
        ClassifyCmd::Crystalline { p, k, ap } => {
            let ap = parse_element(p, &ap)?;
            if s.exact {
                classify_crystalline(k, &ap, &s.opts)?
            } else {
                classify_crystalline(k, &CappedElement::with_precision(&ap, s.precision), &s.opts)?
            }
        }
        ClassifyCmd::Semistable { p, k0, l_invariant } => {
            let l = parse_element(p, &l_invariant)?;
            if s.exact {
                classify_semistable(&SemistableInput::new(k0, l, &s.opts)?, &s.opts)?
            } else {
                let l = CappedElement::with_precision(&l, s.precision);
                classify_semistable(&SemistableInput::new(k0, l, &s.opts)?, &s.opts)?
            }
        }
    };
    verdict_output(&verdict, s)
}

#[derive(Serialize)]
struct LimitRecord {
    x: String,
    y: String,
    a: String,
    b: String,
}

impl Tabular for LimitRecord {
    const HEADER: &'static [&'static str] = &["x", "y", "a", "b"];
    fn cells(&self) -> Vec<String> {
        vec![self.x.clone(), self.y.clone(), self.a.clone(), self.b.clone()]
    }
}

#[derive(Serialize)]
struct ChartRow {
    k: i64,
    t: String,
    gap: Option<String>,
    error: Option<String>,
}

impl Tabular for ChartRow {
    const HEADER: &'static [&'static str] = &["k", "t", "gap", "error"];
    fn cells(&self) -> Vec<String> {
        vec![self.k.to_string(), self.t.clone(), self.gap.clone().unwrap_or_default(), self.error.clone().unwrap_or_default()]
    }
}

fn weights(f: &ApFamily, w: &WeightArgs, s: &Settings) -> Result<Vec<i64>, CliError> {
    if !w.ks.is_empty() {
        return Ok(w.ks.clone());
    }
    let (lo, hi) = m_range(w.m.as_deref(), s, "1..5")?;
    Ok((lo..=hi).map(|m| f.weight_at(m)).collect())
}

fn family(cmd: FamilyCmd, s: &Settings) -> Result<(), CliError> {
    match cmd {
        FamilyCmd::Limit { family } => {
            let f = ApFamily::parse(&family)?;
            let l = chart_limit(&f, s.precision);
            let rec = LimitRecord { x: l.x.to_string(), y: l.y.to_string(), a: l.a.to_string(), b: l.b.to_string() };
            s.emit(&render_record(&rec, s.format))
        }
        FamilyCmd::Verify(w) => {
            let f = ApFamily::parse(&w.family)?;
            let ks = weights(&f, &w, s)?;
            for &k in &ks {
                f.data().check_weight(k)?;
            }
            let rows = compute_rows(std::slice::from_ref(&f), |_| ks.clone(), s.mode(), s.precision, &s.opts);
            finish_rows(&rows, s)
        }
        FamilyCmd::Chart(w) => {
            let f = ApFamily::parse(&w.family)?;
            let ks = weights(&f, &w, s)?;
            let rows: Vec<ChartRow> = chart_convergence(&f, &ks, s.precision)?
                .into_iter()
                .map(|r| ChartRow {
                    k: r.k,
                    t: r.t.to_string(),
                    gap: r.gap.as_ref().ok().map(|g| g.to_string()),
                    error: r.gap.err().map(|e| e.to_string()),
                })
                .collect();
            s.emit(&render_table::<_, Summary>(&rows, None, s.format))
        }
    }
}

/// Emits rows with their summary; CSV keeps the summary on stderr so the
/// table stays machine-readable.
fn finish_rows(rows: &[sweep::SweepRow], s: &Settings) -> Result<(), CliError> {
    let summary = Summary::of(rows);
    s.emit(&render_table(rows, Some(&summary), s.format))?;
    if s.format == Format::Csv {
        eprintln!("{summary}");
    }
    if summary.fail > 0 {
        return Err(CliError::Failures(summary.fail));
    }
    Ok(())
}

fn run_sweep(args: SweepArgs, s: &Settings) -> Result<(), CliError> {
    let cfg = &s.config;
    let mut literals: Vec<String> = cfg.families().to_vec();
    literals.extend(args.family);
    let mut families = literals.iter().map(|l| ApFamily::parse(l)).collect::<Result<Vec<_>, _>>()?;
    if let Some(seed) = s.seed {
        let primes_text = args.primes.or(cfg.typed("primes")?).unwrap_or_else(|| "5,7".to_string());
        let primes = primes_text
            .split(',')
            .map(|p| p.trim().parse::<u64>().map_err(|_| CliError::Usage(format!("invalid prime list `{primes_text}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        for &p in &primes {
            if p < 5 && !(p == 3 && s.opts.allow_p3) || !zigzag_core::padic::modp::is_prime(p) {
                return Err(Error::InvalidPrime(p).into());
            }
        }
        let count = args.count.or(cfg.typed("count")?).unwrap_or(20);
        let degree = args.degree.or(cfg.typed("degree")?).unwrap_or(3);
        let (r0_lo, r0_hi) = parse_range(args.r0.as_deref().or(cfg.get("r0")).unwrap_or("1..1000"))?;
        let mut gen = FamilyGenerator::new(seed, &primes, degree).with_r0_range(r0_lo, r0_hi)?;
        families.extend((0..count).map(|_| gen.next_family()));
    }
    let (lo, hi) = m_range(args.m.as_deref(), s, "2..6")?;
    let rows = compute_rows(&families, |f| (lo..=hi).map(|m| f.weight_at(m)).collect(), s.mode(), s.precision, &s.opts);
    finish_rows(&rows, s)
}

fn run(cli: Cli) -> Result<(), CliError> {
    let settings = Settings::new(cli.global)?;
    match cli.command {
        Command::Classify(cmd) => classify(cmd, &settings),
        Command::Family(cmd) => family(cmd, &settings),
        Command::Sweep(args) => run_sweep(args, &settings),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("zigzag: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

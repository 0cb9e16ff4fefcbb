//! The `dlite` command line: distance matrices, pairwise breakdowns and the
//! verification suite.
//!
//! Exit codes: 0 ok, 1 a verified property failed, 2 usage or input error,
//! 3 KL undefined on the given supports.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use dlite_core::io::{read_distributions, Format};
use dlite_core::proofcheck::{run_all, Tolerances, VerifyConfig, DIM_RANGE};
use dlite_core::{
    distance_matrix, dlite, dlite_cbrt, jsd, kl, tv, Distribution64, MeasureKind,
    NamedDistribution64,
};

#[derive(Debug, Parser)]
#[command(
    name = "dlite",
    version,
    about = "DLITE divergences between discrete distributions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Pairwise distance matrix as CSV.
    Dist {
        #[command(flatten)]
        input: InputArgs,
        /// dlite, dlite-cbrt, lit, delta-h, kl, jsd or tv.
        #[arg(long, default_value = "dlite-cbrt")]
        measure: MeasureKind,
    },
    /// Every measure and the per-outcome terms for two named distributions, as JSON.
    Pair {
        #[command(flatten)]
        input: InputArgs,
        name_a: String,
        name_b: String,
    },
    /// Run the numerical verification suite; one JSON report per line.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// csv or json; defaults to the file extension.
    #[arg(long)]
    pub format: Option<Format>,
    /// Smooth every distribution with this epsilon before measuring.
    #[arg(long, value_parser = positive_f64)]
    pub smooth: Option<f64>,
    /// Output file; standard output if absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,
    /// Comma-separated simplex dimensions.
    #[arg(long, value_delimiter = ',', default_value = "2,3,4,8", value_parser = dimension)]
    pub dims: Vec<usize>,
    /// Override a tolerance, e.g. `--tolerance triangle=1e-9`. Repeatable.
    #[arg(long, value_parser = tolerance_override)]
    pub tolerance: Vec<(String, f64)>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

fn positive_f64(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        Ok(_) => Err(format!("`{s}` is not a positive number")),
        Err(e) => Err(e.to_string()),
    }
}

fn dimension(s: &str) -> Result<usize, String> {
    let d: usize = s.trim().parse().map_err(|e| format!("`{s}`: {e}"))?;
    if DIM_RANGE.contains(&d) {
        Ok(d)
    } else {
        Err(format!(
            "dimension {d} outside {}..={}",
            DIM_RANGE.start(),
            DIM_RANGE.end()
        ))
    }
}

fn tolerance_override(s: &str) -> Result<(String, f64), String> {
    let (key, value) = s
        .split_once('=')
        .ok_or_else(|| format!("expected KEY=VALUE, got `{s}`"))?;
    let value: f64 = value
        .trim()
        .parse()
        .map_err(|e| format!("`{value}`: {e}"))?;
    let key = key.trim().to_string();
    Tolerances::default()
        .set(&key, value)
        .map_err(|e| e.to_string())?;
    Ok((key, value))
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(dlite_core::Error),
    #[error("{0}; pass --smooth EPSILON to smooth both sides")]
    KlUndefined(dlite_core::Error),
    #[error("no distribution named `{0}` in the input")]
    UnknownName(String),
    #[error("{0}")]
    Io(#[from] io::Error),
    #[error("{0}")]
    Internal(dlite_core::Error),
}

impl From<dlite_core::Error> for CliError {
    fn from(e: dlite_core::Error) -> Self {
        use dlite_core::Error as E;
        match e {
            E::KlUndefined { .. } => CliError::KlUndefined(e),
            E::Io(io) => CliError::Io(io),
            E::Inconsistent { .. } | E::QuadratureNonConvergence { .. } => CliError::Internal(e),
            e => CliError::Input(e),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::KlUndefined(_) => 3,
            CliError::Internal(_) => 1,
            _ => 2,
        }
    }
}

/// Parses `std::env::args` and runs; clap handles `--help` and usage errors.
pub fn main_entry() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("dlite: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

pub fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Dist { input, measure } => run_dist(&input, measure),
        Command::Pair {
            input,
            name_a,
            name_b,
        } => run_pair(&input, &name_a, &name_b),
        Command::Verify(args) => run_verify(&args),
    }
}

fn load(args: &InputArgs) -> Result<Vec<NamedDistribution64>, CliError> {
    let mut ds = read_distributions::<f64>(&args.input, args.format)?;
    if ds.is_empty() {
        return Err(dlite_core::Error::Empty.into());
    }
    if let Some(eps) = args.smooth {
        for d in &mut ds {
            d.dist = d.dist.smooth(eps)?;
        }
    }
    Ok(ds)
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// `%g`-style formatting with 12 significant digits.
pub fn format_sig12(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{v:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..12).contains(&exp) {
        let decimals = (11 - exp) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn run_dist(args: &InputArgs, measure: MeasureKind) -> Result<u8, CliError> {
    let ds = load(args)?;
    let m = distance_matrix(&ds, measure)?;
    let mut out = open_output(args.output.as_deref())?;
    let header: Vec<String> = m.labels.iter().map(|l| csv_field(l)).collect();
    writeln!(out, ",{}", header.join(","))?;
    for (label, row) in m.labels.iter().zip(m.rows()) {
        let cells: Vec<String> = row.iter().map(|&v| format_sig12(v)).collect();
        writeln!(out, "{},{}", csv_field(label), cells.join(","))?;
    }
    out.flush()?;
    Ok(0)
}

fn find<'a>(ds: &'a [NamedDistribution64], name: &str) -> Result<&'a Distribution64, CliError> {
    ds.iter()
        .find(|d| d.name == name)
        .map(|d| &d.dist)
        .ok_or_else(|| CliError::UnknownName(name.to_string()))
}

pub fn run_pair(args: &InputArgs, name_a: &str, name_b: &str) -> Result<u8, CliError> {
    let ds = load(args)?;
    let p = find(&ds, name_a)?;
    let q = find(&ds, name_b)?;

    let d = dlite(p, q)?;
    let (mut lit, mut delta_h) = (0.0, 0.0);
    let mut per_outcome = Map::new();
    for (label, t) in &d.per_outcome {
        lit += t.g;
        delta_h += t.delta;
        per_outcome.insert(
            label.clone(),
            json!({"g": t.g, "delta": t.delta, "dl": t.dl}),
        );
    }
    let kl = match kl(p, q) {
        Ok(v) => json!(v),
        Err(dlite_core::Error::KlUndefined { .. }) => Value::Null,
        Err(e) => return Err(e.into()),
    };
    let doc = json!({
        "lit": lit,
        "delta_h": delta_h,
        "dlite": d.total,
        "dlite_cbrt": dlite_cbrt(p, q)?,
        "kl": kl,
        "jsd": jsd(p, q)?,
        "tv": tv(p, q)?,
        "per_outcome": per_outcome,
    });
    let mut out = open_output(args.output.as_deref())?;
    serde_json::to_writer_pretty(&mut out, &doc).map_err(io::Error::from)?;
    writeln!(out)?;
    out.flush()?;
    Ok(0)
}

pub fn verify_config(args: &VerifyArgs) -> Result<VerifyConfig, CliError> {
    let mut cfg = VerifyConfig {
        seed: args.seed,
        samples: usize::try_from(args.samples)
            .map_err(|_| dlite_core::Error::InvalidConfig("--samples too large".into()))?,
        dims: args.dims.clone(),
        ..VerifyConfig::default()
    };
    for (key, value) in &args.tolerance {
        cfg.tolerances.set(key, *value)?;
    }
    Ok(cfg)
}

pub fn run_verify(args: &VerifyArgs) -> Result<u8, CliError> {
    let cfg = verify_config(args)?;
    let reports = run_all(&cfg)?;
    let mut out = open_output(args.output.as_deref())?;
    for r in &reports {
        writeln!(out, "{}", r.to_json_line())?;
    }
    out.flush()?;
    Ok(if reports.iter().all(|r| r.passed) {
        0
    } else {
        1
    })
}

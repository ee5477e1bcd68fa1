use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use jackpoly::clustercli::{
    compute, compute_cached, parse_a, parse_alpha, parse_qt, render, scan, verify, Cache, CaseParams, Coefficients,
    ComputeRequest, Family, IdentityCase, IdentityId, IdentityReport, ReportFormat, ScanConfig,
};
use jackpoly::partlib::Partition;

const DEFAULT_CACHE: &str = ".jackpoly-cache";

#[derive(Parser)]
#[command(name = "jackpoly", version, about = "Exact Jack, Hermite, Laguerre and Macdonald polynomials and identity checks")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print one polynomial in canonical text form.
    Compute(ComputeArgs),
    /// Check one identity case.
    Verify(VerifyArgs),
    /// Run every admissible case of a JSON scan configuration.
    Scan(ScanArgs),
    /// Summarize the reports stored in a cache directory.
    Report(ReportArgs),
}

#[derive(Args)]
struct ComputeArgs {
    /// jack-p, jack-e, jack-s, hermite-p, hermite-e, laguerre-p, laguerre-e, mac-p, mac-e or mac-s.
    family: Family,
    /// Parts `4,2,0` or frequency notation `[f0,f1,...]`.
    #[arg(long, allow_hyphen_values = true)]
    label: String,
    #[arg(long)]
    n: Option<usize>,
    /// `generic` or a rational `p/q`.
    #[arg(long, conflicts_with = "qt")]
    alpha: Option<String>,
    /// Laguerre parameter: `generic` or a rational.
    #[arg(long, default_value = "generic")]
    a: String,
    /// `generic` or `p^d,p^e` (q = p^d, t = p^e).
    #[arg(long)]
    qt: Option<String>,
    #[arg(long)]
    cache_dir: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    id: IdentityId,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    b: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    kappa: Option<String>,
    #[arg(long)]
    l: Option<usize>,
    #[arg(long)]
    g: Option<usize>,
    /// Shift the identity's exponent (or flip alpha) by one as a negative control.
    #[arg(long)]
    perturb: bool,
    #[arg(long, default_value = "text")]
    format: ReportFormat,
    /// Store the report in this cache directory.
    #[arg(long)]
    cache_dir: Option<PathBuf>,
}

#[derive(Args)]
struct ScanArgs {
    config: PathBuf,
    #[arg(long, default_value = "text")]
    format: ReportFormat,
    /// Overrides `cache_dir` from the configuration.
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Stop at the first fails/conjecture-violated verdict.
    #[arg(long)]
    halt: bool,
}

#[derive(Args)]
struct ReportArgs {
    #[arg(long, default_value = "text")]
    format: ReportFormat,
    #[arg(long, default_value = DEFAULT_CACHE)]
    cache_dir: PathBuf,
}

fn status(reports: &[IdentityReport]) -> ExitCode {
    if reports.iter().any(|r| r.verdict.is_failure()) {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

/// Writes to stdout; a closed pipe ends the output quietly.
fn emit(text: &str) -> Result<()> {
    match io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        r => Ok(r?),
    }
}

fn run_compute(a: ComputeArgs) -> Result<ExitCode> {
    let coefficients = if a.family.is_macdonald() {
        if a.alpha.is_some() {
            bail!("{} takes --qt, not --alpha", a.family);
        }
        Coefficients::Qt(parse_qt(a.qt.as_deref().unwrap_or("generic"))?)
    } else {
        if a.qt.is_some() {
            bail!("{} takes --alpha, not --qt", a.family);
        }
        Coefficients::Jack { alpha: parse_alpha(a.alpha.as_deref().unwrap_or("generic"))?, a: parse_a(&a.a)? }
    };
    let req = ComputeRequest { family: a.family, label: a.label, n: a.n, coefficients };
    let poly = match &a.cache_dir {
        Some(dir) => compute_cached(&req, &Cache::open(dir)?)?,
        None => compute(&req)?,
    };
    emit(&format!("{}\n", poly.to_text()))?;
    Ok(ExitCode::SUCCESS)
}

fn run_verify(a: VerifyArgs) -> Result<ExitCode> {
    let kappa = match &a.kappa {
        Some(s) => Some(Partition::parse(s, None).with_context(|| format!("--kappa {s:?}"))?.parts().to_vec()),
        None => None,
    };
    let params =
        CaseParams { k: a.k, r: a.r, s: a.s, m: a.m, b: a.b, n: a.n, kappa, l: a.l, g: a.g };
    let case = IdentityCase { id: a.id, params, perturb: a.perturb };
    let report = verify(&case);
    if let Some(dir) = &a.cache_dir {
        Cache::open(dir)?.put_report(&report)?;
    }
    let reports = [report];
    emit(&render(&reports, a.format)?)?;
    Ok(status(&reports))
}

fn run_scan(a: ScanArgs) -> Result<ExitCode> {
    let raw = std::fs::read_to_string(&a.config).with_context(|| format!("reading {}", a.config.display()))?;
    let mut config: ScanConfig = serde_json::from_str(&raw).with_context(|| format!("parsing {}", a.config.display()))?;
    config.halt_on_violation |= a.halt;
    let dir = a.cache_dir.or_else(|| config.cache_dir.clone().map(PathBuf::from)).unwrap_or_else(|| DEFAULT_CACHE.into());
    let cache = Cache::open(&dir)?;
    let reports = scan(&config, Some(&cache))?;
    emit(&render(&reports, a.format)?)?;
    Ok(status(&reports))
}

fn run_report(a: ReportArgs) -> Result<ExitCode> {
    if !a.cache_dir.is_dir() {
        bail!("no cache directory at {}", a.cache_dir.display());
    }
    let reports = Cache::open(&a.cache_dir)?.reports()?;
    emit(&render(&reports, a.format)?)?;
    Ok(status(&reports))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Compute(a) => run_compute(a),
        Cmd::Verify(a) => run_verify(a),
        Cmd::Scan(a) => run_scan(a),
        Cmd::Report(a) => run_report(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

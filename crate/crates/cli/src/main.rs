use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use e8anomaly::anomaly::{verify_target, Status, Target, VerificationReport, DEFAULT_Q_ORDER, MIN_Q_ORDER};
use e8anomaly::bundles::{ch, parse_bundle};
use e8anomaly::expand::{format_series, named_series};
use e8anomaly::theta::{standard_samples, theta_numeric, transform_residual, LawId, NumericSample, ThetaKind};
use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::json;

const EXIT_STATEMENT: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "e8anomaly", version, about = "Exact verifier for E8 anomaly cancellation identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run kernel, theorem and lemma checks.
    Verify(VerifyArgs),
    /// Print a q-expansion or the Chern character of a bundle expression.
    Expand(ExpandArgs),
    /// Evaluate theta/E2 transformation laws numerically.
    Numcheck(NumcheckArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 => Ok(v),
        Ok(_) => Err("must be positive".into()),
        Err(e) => Err(e.to_string()),
    }
}

fn q_order(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|e: std::num::ParseIntError| e.to_string())?;
    if n < MIN_Q_ORDER {
        return Err(format!("must be at least {MIN_Q_ORDER}"));
    }
    Ok(n)
}

fn complex(s: &str) -> Result<Complex64, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    // num-complex wants an explicit imaginary coefficient
    let t = if t == "i" || t.ends_with("+i") || t.ends_with("-i") { t.replace('i', "1i") } else { t };
    t.parse::<Complex64>().map_err(|e| format!("not a complex number: {e}"))
}

#[derive(Args)]
struct VerifyArgs {
    /// `all`, a numbered identity such as `T3.8`, or a fit target `Q1`..`QL`.
    #[arg(long, default_value = "all")]
    target: String,
    /// Truncation order in powers of q^(1/2).
    #[arg(long, default_value_t = DEFAULT_Q_ORDER, value_parser = q_order)]
    q_order: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Numeric tolerance (used by numeric checks only).
    #[arg(long, default_value_t = 1e-9, value_parser = positive)]
    tolerance: f64,
    /// Product terms for numeric evaluation (used by numeric checks only).
    #[arg(long, default_value_t = 200)]
    num_terms: usize,
    /// Verify targets on all cores.
    #[arg(long)]
    parallel: bool,
}

#[derive(Args)]
struct ExpandArgs {
    /// E2, E4, E6, phi8, Theta1, Theta2, Theta3, Theta, Phi, V1..V3, or a bundle expression.
    what: String,
    /// Number of q-powers to print (exclusive bound).
    #[arg(long, default_value_t = 4)]
    order: usize,
}

#[derive(Args)]
struct NumcheckArgs {
    /// `all` or a comma-separated list of law ids such as `2.14,2.26`.
    #[arg(long, default_value = "all")]
    laws: String,
    /// Single sample point; the five standard samples are used otherwise.
    #[arg(long, value_parser = complex, allow_hyphen_values = true)]
    tau: Option<Complex64>,
    /// Elliptic variable for `--tau`.
    #[arg(long, value_parser = complex, default_value = "0.2+0.1i", allow_hyphen_values = true)]
    v: Complex64,
    /// Bound on every residual; defaults to each law's own bound.
    #[arg(long, value_parser = positive)]
    tolerance: Option<f64>,
    #[arg(long, default_value_t = 200)]
    num_terms: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: impl std::fmt::Display) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn verify(args: &VerifyArgs) -> ExitCode {
    let targets = if args.target == "all" {
        Target::all()
    } else {
        match args.target.parse::<Target>() {
            Ok(t) => vec![t],
            Err(e) => return usage(e),
        }
    };
    let run = |t: &Target| verify_target(*t, args.q_order);
    let results: Vec<_> =
        if args.parallel { targets.par_iter().map(run).collect() } else { targets.iter().map(run).collect() };
    let reports: Vec<VerificationReport> = match results.into_iter().collect() {
        Ok(r) => r,
        Err(e) => return usage(e),
    };
    match args.format {
        Format::Text => {
            for r in &reports {
                emit(r.to_text());
            }
        }
        Format::Json => {
            let out = if reports.len() == 1 && args.target != "all" {
                serde_json::to_string_pretty(&reports[0])
            } else {
                serde_json::to_string_pretty(&reports)
            };
            emit(out.expect("reports serialize"));
        }
    }
    if reports.iter().any(|r| r.status == Status::Fail) {
        ExitCode::FAILURE
    } else if reports.iter().any(|r| r.status == Status::Deviation) {
        ExitCode::from(EXIT_STATEMENT)
    } else {
        ExitCode::SUCCESS
    }
}

fn expand(args: &ExpandArgs) -> ExitCode {
    if let Some(s) = named_series(&args.what, 2 * args.order) {
        emit(format_series(&s, args.order));
        return ExitCode::SUCCESS;
    }
    let expr = match parse_bundle(&args.what) {
        Ok(e) => e,
        Err(e) => {
            eprintln!("{}", e.render(&args.what));
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match ch(&expr) {
        Ok(c) => {
            emit(c);
            ExitCode::SUCCESS
        }
        Err(e) => usage(e),
    }
}

fn numcheck(args: &NumcheckArgs) -> ExitCode {
    let laws: Vec<LawId> = if args.laws == "all" {
        LawId::ALL.to_vec()
    } else {
        match args.laws.split(',').map(str::parse).collect() {
            Ok(l) => l,
            Err(e) => return usage(e),
        }
    };
    let samples = match args.tau {
        Some(tau) => match NumericSample::new(args.v, tau, args.num_terms) {
            Ok(s) => vec![s],
            Err(e) => return usage(e),
        },
        None => standard_samples(args.num_terms),
    };
    let mut all_ok = true;
    let mut rows = Vec::new();
    for law in laws {
        let r = match transform_residual(law, &samples) {
            Ok(r) => r,
            Err(e) => return usage(e),
        };
        let tol = args.tolerance.unwrap_or(law.tolerance());
        let ok = r.residual < tol;
        all_ok &= ok;
        rows.push((law, r.residual, tol, ok));
    }
    match args.format {
        Format::Text => {
            for (law, res, tol, ok) in &rows {
                emit(format!("{:<5} residual {res:.3e}  tolerance {tol:.0e}  {}", law.name(), if *ok { "pass" } else { "FAIL" }));
            }
            if let [s] = samples.as_slice() {
                let th = theta_numeric(ThetaKind::Theta, s).expect("validated sample");
                emit(format!("theta(v, tau) = {th:.6e}  at v = {}, tau = {}", s.v, s.tau));
            }
            emit(format!("{} of {} laws within tolerance over {} sample(s)", rows.iter().filter(|r| r.3).count(), rows.len(), samples.len()));
        }
        Format::Json => {
            let v: Vec<_> = rows
                .iter()
                .map(|(law, res, tol, ok)| json!({"law": law.name(), "residual": res, "tolerance": tol, "samples": samples.len(), "passed": ok}))
                .collect();
            emit(serde_json::to_string_pretty(&v).expect("serializable"));
        }
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match &cli.command {
        Command::Verify(a) => verify(a),
        Command::Expand(a) => expand(a),
        Command::Numcheck(a) => numcheck(a),
    }
}

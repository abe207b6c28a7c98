//! Batch front end: character tables, convergence/divergence runs, the
//! isomorphism test, the odometer tower report, and the character-envelope
//! calibration. Commands read JSON configs, write CSV/JSON, and exit with
//! 0 on success, 1 on configuration errors, 2 when a resource cap is hit.
//!
//! Numeric output contract: exact rationals print as `p/q` strings (bare
//! numerator when the denominator is 1), floats print with 12 significant
//! digits.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use symlim::classify;
use symlim::embedding::{BaseSequence, GroupElement};
use symlim::limits::{self, RunCaps, SecondRowRule};
use symlim::odometer;
use symlim::partitions::{partitions_of, Partition};
use symlim::permgroup::{cycle_types_of_degree, Permutation};
use symlim::yor::{envelope_cases, required_base, YorSpace};

#[derive(Parser)]
#[command(name = "symlim", version, about = "Experiments with inductive limits of symmetric groups", max_term_width = 100)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// Cap on representation dimensions.
    #[arg(long, global = true, default_value_t = symlim::DEFAULT_DIM_CAP)]
    cap_dim: u64,
    /// Cap on materialized permutation points.
    #[arg(long, global = true, default_value_t = symlim::DEFAULT_POINT_CAP)]
    cap_points: u64,
    /// Fallback deviation budget for converge when the config omits one.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Output path (commands with two outputs append .csv/.json).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format for single-file commands.
    #[arg(long, global = true, value_parser = ["csv", "json"], default_value = "csv")]
    format: String,
}

#[derive(Subcommand)]
enum Command {
    /// Full character table of S_N: every shape against every cycle type.
    Character {
        /// Number of points N.
        #[arg(long)]
        n: usize,
    },
    /// Convergence run from a JSON config.
    Converge {
        #[arg(long)]
        config: PathBuf,
    },
    /// Divergence run from a JSON config.
    Diverge {
        #[arg(long)]
        config: PathBuf,
    },
    /// Isomorphism test for two base-sequence rules (inline JSON).
    Classify {
        #[arg(long)]
        seq1: String,
        #[arg(long)]
        seq2: String,
    },
    /// Tower report: involution, homomorphism and conjugation defects.
    Odometer {
        /// Base sequence rule (inline JSON).
        #[arg(long)]
        sequence: String,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        r: usize,
    },
    /// Calibrate the character-magnitude envelope constants.
    BoundCalibrate {
        #[arg(long, default_value_t = 4)]
        n_min: usize,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
    },
}

enum CliError {
    Config(String),
    Cap(String),
}

impl From<symlim::Error> for CliError {
    fn from(err: symlim::Error) -> Self {
        match err {
            symlim::Error::CapExceeded { .. } => CliError::Cap(err.to_string()),
            _ => CliError::Config(err.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Config(err.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Cap(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let opts = &cli.global;
    match cli.command {
        Command::Character { n } => cmd_character(opts, n),
        Command::Converge { config } => cmd_converge(opts, &config),
        Command::Diverge { config } => cmd_diverge(opts, &config),
        Command::Classify { seq1, seq2 } => cmd_classify(opts, &seq1, &seq2),
        Command::Odometer { sequence, p, q, r } => cmd_odometer(opts, &sequence, p, q, r),
        Command::BoundCalibrate { n_min, n_max } => cmd_bound_calibrate(opts, n_min, n_max),
    }
}

/// Twelve significant digits in scientific notation.
fn fmt_f64(x: f64) -> String {
    format!("{x:.11e}")
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn fmt_parts(parts: &[usize]) -> String {
    parts
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn fmt_counts(counts: &[u64]) -> String {
    counts
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn emit(opts: &GlobalOpts, text: &str) -> Result<(), CliError> {
    match &opts.out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

// --- character ---------------------------------------------------------

#[derive(Serialize)]
struct CharacterRow {
    lambda: Partition,
    cycle_type: Vec<u64>,
    chi: String,
    dim: u64,
}

fn cmd_character(opts: &GlobalOpts, n: usize) -> Result<(), CliError> {
    if n == 0 {
        return Err(CliError::Config("N must be at least 1".to_string()));
    }
    // Reject over-cap tables before enumerating a single tableau; the hook
    // formula prices every shape cheaply.
    for shape in partitions_of(n) {
        let dim = shape.dimension();
        if dim > num_bigint::BigUint::from(opts.cap_dim) {
            return Err(CliError::Cap(format!(
                "dimension of {shape} is {dim}, above the cap {}",
                opts.cap_dim
            )));
        }
    }
    let classes = cycle_types_of_degree(n);
    let mut rows = Vec::new();
    for shape in partitions_of(n) {
        let space = YorSpace::with_cap(shape.clone(), opts.cap_dim)?;
        let dim = space.dimension() as u64;
        for ct in &classes {
            let (sigma, _) = ct.minimal_element(n)?;
            let chi = space.normalized_character(&sigma)?;
            rows.push(CharacterRow {
                lambda: shape.clone(),
                cycle_type: ct.counts().to_vec(),
                chi: fmt_f64(chi),
                dim,
            });
        }
    }
    let text = match opts.format.as_str() {
        "json" => {
            let report = serde_json::json!({ "n": n, "rows": rows });
            format!("{}\n", serde_json::to_string_pretty(&report).expect("serializable"))
        }
        _ => {
            let mut out = String::from("lambda,cycle_type,chi,dim\n");
            for row in &rows {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    fmt_parts(row.lambda.parts()),
                    fmt_counts(&row.cycle_type),
                    row.chi,
                    row.dim
                ));
            }
            out
        }
    };
    emit(opts, &text)
}

// --- converge / diverge ------------------------------------------------

#[derive(Deserialize)]
struct ElementConfig {
    level: usize,
    images: Vec<usize>,
}

impl ElementConfig {
    fn build(&self, seq: &BaseSequence) -> Result<GroupElement, CliError> {
        let perm = Permutation::from_images(self.images.clone())?;
        Ok(GroupElement::new(seq.clone(), self.level, perm)?)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConvergeConfig {
    sequence: BaseSequence,
    sigma: ElementConfig,
    mu: Partition,
    #[serde(default)]
    transposed: bool,
    levels: Vec<usize>,
    #[serde(default)]
    deviation_budget: Option<f64>,
}

fn load_config<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

fn run_caps(opts: &GlobalOpts) -> RunCaps {
    RunCaps {
        dim_cap: opts.cap_dim,
        point_cap: opts.cap_points,
    }
}

fn cmd_converge(opts: &GlobalOpts, config_path: &PathBuf) -> Result<(), CliError> {
    let config: ConvergeConfig = load_config(config_path)?;
    let sigma = config.sigma.build(&config.sequence)?;
    let run = limits::convergence_run(
        &config.sequence,
        &sigma,
        &config.mu,
        config.transposed,
        &config.levels,
        run_caps(opts),
    )?;

    let mut csv = String::from("N,lambda,chi,target,deviation\n");
    for row in &run.rows {
        csv.push_str(&format!(
            "{},{},{},{},{}\n",
            row.n,
            fmt_parts(row.lambda.parts()),
            fmt_f64(row.chi),
            fmt_rational(&row.target),
            fmt_f64(row.deviation)
        ));
    }

    let budget = config.deviation_budget.or(opts.tol);
    let max_final = run.final_deviation().unwrap_or(0.0);
    let summary = serde_json::json!({
        "mu": config.mu,
        "transposed": config.transposed,
        "rows": run.rows.iter().map(|row| serde_json::json!({
            "level": row.level,
            "n": row.n,
            "lambda": row.lambda,
            "chi": fmt_f64(row.chi),
            "target": fmt_rational(&row.target),
            "deviation": fmt_f64(row.deviation),
        })).collect::<Vec<_>>(),
        "max_final_deviation": fmt_f64(max_final),
        "deviation_budget": budget.map(fmt_f64),
        "pass": budget.map(|b| max_final <= b),
    });
    let json = format!("{}\n", serde_json::to_string_pretty(&summary).expect("serializable"));

    let base = opts
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from("converge_run"));
    fs::write(base.with_extension("csv"), csv)?;
    fs::write(base.with_extension("json"), json)?;
    eprintln!(
        "wrote {} and {}",
        base.with_extension("csv").display(),
        base.with_extension("json").display()
    );
    Ok(())
}

#[derive(Deserialize)]
#[serde(untagged)]
enum SecondRowConfig {
    Fixed(usize),
    Named(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DivergeConfig {
    sequence: BaseSequence,
    sigma: ElementConfig,
    second_row: SecondRowConfig,
    levels: Vec<usize>,
}

fn cmd_diverge(opts: &GlobalOpts, config_path: &PathBuf) -> Result<(), CliError> {
    let config: DivergeConfig = load_config(config_path)?;
    let rule = match &config.second_row {
        SecondRowConfig::Fixed(r) => SecondRowRule::Fixed(*r),
        SecondRowConfig::Named(name) if name == "log" => SecondRowRule::LogNatural,
        SecondRowConfig::Named(other) => {
            return Err(CliError::Config(format!(
                "second_row must be an integer or \"log\", got {other:?}"
            )))
        }
    };
    let sigma = config.sigma.build(&config.sequence)?;
    let rows = limits::divergence_run(
        &config.sequence,
        &sigma,
        rule,
        &config.levels,
        run_caps(opts),
    )?;
    let text = match opts.format.as_str() {
        "json" => {
            let report = serde_json::json!({
                "rows": rows.iter().map(|row| serde_json::json!({
                    "level": row.level,
                    "n": row.n,
                    "lambda": row.lambda,
                    "chi_abs": fmt_f64(row.chi_abs),
                })).collect::<Vec<_>>(),
            });
            format!("{}\n", serde_json::to_string_pretty(&report).expect("serializable"))
        }
        _ => {
            let mut out = String::from("N,lambda,chi_abs\n");
            for row in &rows {
                out.push_str(&format!(
                    "{},{},{}\n",
                    row.n,
                    fmt_parts(row.lambda.parts()),
                    fmt_f64(row.chi_abs)
                ));
            }
            out
        }
    };
    emit(opts, &text)
}

// --- classify -----------------------------------------------------------

fn parse_sequence(text: &str) -> Result<BaseSequence, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Config(format!("bad sequence rule: {e}")))
}

fn cmd_classify(opts: &GlobalOpts, seq1: &str, seq2: &str) -> Result<(), CliError> {
    let a = parse_sequence(seq1)?;
    let b = parse_sequence(seq2)?;
    let report = serde_json::json!({
        "isomorphic": classify::isomorphic(&a, &b),
        "supernatural_1": classify::supernatural(&a),
        "supernatural_2": classify::supernatural(&b),
    });
    let text = format!("{}\n", serde_json::to_string_pretty(&report).expect("serializable"));
    print!("{text}");
    if let Some(path) = &opts.out {
        fs::write(path, &text)?;
    }
    Ok(())
}

// --- odometer ------------------------------------------------------------

fn cmd_odometer(
    opts: &GlobalOpts,
    sequence: &str,
    p: usize,
    q: usize,
    r: usize,
) -> Result<(), CliError> {
    let seq = parse_sequence(sequence)?;
    let tower = odometer::tower_approximation_with_cap(&seq, p, q, r, opts.cap_points)?;

    let theta2 = tower.theta.compose(&tower.theta)?;
    let theta_involution = theta2.permutation().is_identity();

    let mut homomorphism_ok = true;
    'outer: for (sigma, j_sigma) in &tower.homomorphism {
        for (tau, j_tau) in &tower.homomorphism {
            let product = sigma.compose(tau)?;
            let expected = tower
                .homomorphism
                .iter()
                .find(|(s, _)| *s == product)
                .map(|(_, j)| j)
                .expect("product stays in the group");
            if &j_sigma.compose(j_tau)? != expected {
                homomorphism_ok = false;
                break 'outer;
            }
        }
    }

    let bound = tower.bound();
    let mut all_within = true;
    let mut per_sigma = Vec::new();
    for (sigma, _) in &tower.homomorphism {
        let defect = tower.conjugation_defect(&seq, sigma)?;
        let within = defect <= bound;
        all_within &= within;
        per_sigma.push(serde_json::json!({
            "sigma": sigma,
            "rho": fmt_rational(&defect),
            "within_bound": within,
        }));
    }

    let report = serde_json::json!({
        "p": p, "q": q, "r": r,
        "m": tower.m,
        "rem": tower.rem,
        "bound": fmt_rational(&bound),
        "theta_involution": theta_involution,
        "homomorphism_ok": homomorphism_ok,
        "per_sigma": per_sigma,
        "all_within_bound": all_within,
    });
    let text = format!("{}\n", serde_json::to_string_pretty(&report).expect("serializable"));
    print!("{text}");
    if let Some(path) = &opts.out {
        fs::write(path, &text)?;
    }
    Ok(())
}

// --- bound-calibrate ------------------------------------------------------

fn cmd_bound_calibrate(opts: &GlobalOpts, n_min: usize, n_max: usize) -> Result<(), CliError> {
    if n_min < 4 || n_min > n_max {
        return Err(CliError::Config(
            "need 4 <= n_min <= n_max (the envelope hypothesis starts at 4 cells)".to_string(),
        ));
    }
    let cases = envelope_cases(n_min, n_max)?;
    let grid = [2.0, 1.5, 1.25, 1.0, 0.75, 0.5, 0.25];
    let mut per_b = Vec::new();
    let mut recommendation = None;
    for b in grid {
        let (needed, witness) = required_base(&cases, b);
        let admissible = needed < 1.0;
        if recommendation.is_none() && admissible && needed <= 0.95 {
            // Freeze with a little headroom, two decimals, strictly below 1.
            let frozen = ((needed * 100.0).ceil() / 100.0).min(0.99);
            recommendation = Some(serde_json::json!({
                "a": fmt_f64(frozen),
                "b": fmt_f64(b),
                "required_a": fmt_f64(needed),
            }));
        }
        per_b.push(serde_json::json!({
            "b": fmt_f64(b),
            "required_a": fmt_f64(needed),
            "admissible": admissible,
            "witness": witness.map(|w| serde_json::json!({
                "lambda": w.shape,
                "cycle_type": w.class.counts(),
                "chi_abs": fmt_f64(w.chi_abs),
                "support": w.support,
            })),
        }));
    }
    let report = serde_json::json!({
        "n_min": n_min,
        "n_max": n_max,
        "cases": cases.len(),
        "per_b": per_b,
        "recommendation": recommendation,
    });
    let text = format!("{}\n", serde_json::to_string_pretty(&report).expect("serializable"));
    emit_or_print(opts, &text)
}

fn emit_or_print(opts: &GlobalOpts, text: &str) -> Result<(), CliError> {
    print!("{text}");
    if let Some(path) = &opts.out {
        fs::write(path, text)?;
    }
    Ok(())
}

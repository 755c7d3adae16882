//! `grassdesign` command-line front end.
//!
//! Exit codes: 0 ok, 1 verification failed, 2 usage error, 3 computational
//! error.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use grassdesign::designs::{
    angle_table, certificate_e, certificate_f, certificate_one_design, check_nonnegativity, lp_bound, parse_design_set,
    report_from_table, CoefficientFunction, DesignReport, DEFAULT_TOLERANCE,
};
use grassdesign::grassmann::{appendix_b_config, great_antipodal, SubspaceConfiguration};
use grassdesign::partitions::{enumerate_t_t, Partition};
use grassdesign::scalar::format_rational;
use grassdesign::zonal::{dim_h, zonal_james_constantine};
use grassdesign::Error;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "grassdesign", version, about = "Zonal polynomials, designs and LP bounds on complex Grassmannians")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Emit::Json, global = true)]
    emit: Emit,

    /// Worker threads for pairwise angle computation.
    #[arg(long, default_value_t = 1, global = true)]
    parallel: usize,

    /// Seed for randomized steps.
    #[arg(long, env = "GRASSDESIGN_SEED", default_value_t = 0, global = true)]
    seed: u64,

    /// Record wall-clock duration in the manifest (breaks byte-identical
    /// output).
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Expansion of Z_mu in the normalized Schur basis.
    Zonal(ZonalArgs),
    /// Table of dim H_mu for all mu up to a weight.
    Dims(DimsArgs),
    /// Pairwise principal-angle matrix of a configuration file.
    Angles(ConfigArgs),
    /// Zonal design test of a configuration file.
    VerifyDesign(VerifyArgs),
    /// LP bound from a named certificate.
    Bound(CertificateArgs),
    /// The coordinate great antipodal set, optionally verified.
    Antipodal(AntipodalArgs),
    /// The six-plane configuration in C^4, optionally verified.
    AppendixB(AppendixArgs),
    /// Grid and sampling scan for negative values of a certificate.
    CheckNonneg(NonnegArgs),
}

#[derive(Args, Serialize)]
struct ZonalArgs {
    /// Partition, e.g. `2,1`.
    #[arg(long)]
    mu: String,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
}

#[derive(Args, Serialize)]
struct DimsArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    max_weight: u32,
}

#[derive(Args, Serialize)]
struct ConfigArgs {
    #[arg(long)]
    config: PathBuf,
}

#[derive(Args, Serialize)]
struct VerifyArgs {
    #[arg(long)]
    config: PathBuf,
    /// Design set: `E`, `F`, `T<t>`, explicit partitions, joined by `+`.
    #[arg(long)]
    set: String,
    /// Float tolerance relative to |X|^2 dim H_mu.
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tol: f64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Certificate {
    E,
    F,
    One,
}

#[derive(Args, Serialize)]
struct CertificateArgs {
    #[arg(long, value_enum)]
    certificate: Certificate,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
}

#[derive(Args, Serialize)]
struct AntipodalArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    verify: Option<String>,
}

#[derive(Args, Serialize)]
struct AppendixArgs {
    #[arg(long)]
    verify: Option<String>,
}

#[derive(Args, Serialize)]
struct NonnegArgs {
    #[arg(long, value_enum)]
    certificate: Certificate,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 20)]
    depth: u32,
    #[arg(long, default_value_t = 100)]
    samples: usize,
}

#[derive(Serialize)]
struct RunManifest {
    command: &'static str,
    params: Value,
    seed: u64,
    version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    duration_ms: Option<f64>,
}

/// What a subcommand produced: a JSON result, the same data as a flat table,
/// and whether any requested verification passed.
struct Outcome {
    result: Value,
    table: Vec<Vec<String>>,
    verified: bool,
}

impl Outcome {
    fn plain(result: Value, table: Vec<Vec<String>>) -> Self {
        Self { result, table, verified: true }
    }
}

struct Context {
    parallel: usize,
    seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let ctx = Context { parallel: cli.parallel.max(1), seed: cli.seed };
    let (name, params, outcome) = match &cli.command {
        Command::Zonal(a) => ("zonal", to_value(a), cmd_zonal(a)),
        Command::Dims(a) => ("dims", to_value(a), cmd_dims(a)),
        Command::Angles(a) => ("angles", to_value(a), cmd_angles(a)),
        Command::VerifyDesign(a) => ("verify-design", to_value(a), cmd_verify(a, &ctx)),
        Command::Bound(a) => ("bound", to_value(a), cmd_bound(a)),
        Command::Antipodal(a) => ("antipodal", to_value(a), cmd_antipodal(a, &ctx)),
        Command::AppendixB(a) => ("appendix-b", to_value(a), cmd_appendix_b(a, &ctx)),
        Command::CheckNonneg(a) => ("check-nonneg", to_value(a), cmd_check_nonneg(a, &ctx)),
    };
    let manifest = RunManifest {
        command: name,
        params,
        seed: cli.seed,
        version: env!("CARGO_PKG_VERSION"),
        duration_ms: cli.timing.then(|| started.elapsed().as_secs_f64() * 1e3),
    };
    match outcome {
        Ok(out) => {
            if let Err(e) = emit(cli.emit, &manifest, &out) {
                eprintln!("error: failed to write output: {e}");
                return ExitCode::from(3);
            }
            if out.verified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let body = json!({ "manifest": manifest, "error": { "code": e.code(), "message": e.to_string() } });
            eprintln!("{}", serde_json::to_string_pretty(&body).unwrap_or_else(|_| e.to_string()));
            ExitCode::from(if e.is_usage() { 2 } else { 3 })
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}

fn emit(format: Emit, manifest: &RunManifest, out: &Outcome) -> std::io::Result<()> {
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match format {
        Emit::Json => {
            let body = json!({ "manifest": manifest, "result": out.result, "verified": out.verified });
            writeln!(lock, "{}", serde_json::to_string_pretty(&body)?)?;
        }
        Emit::Csv => {
            writeln!(lock, "# manifest: {}", serde_json::to_string(manifest)?)?;
            let mut writer = csv::Writer::from_writer(&mut lock);
            for row in &out.table {
                writer.write_record(row)?;
            }
            writer.flush()?;
        }
    }
    Ok(())
}

fn load_config(path: &PathBuf) -> grassdesign::Result<SubspaceConfiguration> {
    let text = std::fs::read_to_string(path)?;
    SubspaceConfiguration::from_json(&text)
}

fn cmd_zonal(a: &ZonalArgs) -> grassdesign::Result<Outcome> {
    let mu = Partition::parse(&a.mu, a.m)?;
    let z = zonal_james_constantine(&mu, a.n)?;
    let mut table = vec![vec!["partition".to_string(), "coeff".to_string()]];
    for (sigma, c) in z.expansion.coeffs() {
        table.push(vec![sigma.to_string(), format_rational(c)]);
    }
    let dim = dim_h(&mu, a.n)?;
    Ok(Outcome::plain(
        json!({ "mu": mu, "m": a.m, "n": a.n, "dim": dim.value.to_string(), "expansion": z.expansion }),
        table,
    ))
}

fn cmd_dims(a: &DimsArgs) -> grassdesign::Result<Outcome> {
    let mut rows = Vec::new();
    let mut table = vec![vec!["partition".to_string(), "dim".to_string()]];
    for mu in enumerate_t_t(a.m, a.max_weight) {
        let d = dim_h(&mu, a.n)?;
        table.push(vec![mu.to_string(), d.value.to_string()]);
        rows.push(d);
    }
    Ok(Outcome::plain(json!({ "m": a.m, "n": a.n, "dims": rows }), table))
}

fn angle_outcome(config: &SubspaceConfiguration) -> grassdesign::Result<(Value, Vec<Vec<String>>)> {
    let matrix = config.angle_matrix()?;
    let mut table = vec![vec!["i".to_string(), "j".to_string(), "angles".to_string()]];
    for (i, row) in matrix.iter().enumerate() {
        for (j, y) in row.iter().enumerate() {
            table.push(vec![(i + 1).to_string(), (j + 1).to_string(), y.to_string()]);
        }
    }
    let value = json!({
        "label": config.label,
        "m": config.m(),
        "n": config.n(),
        "mode": config.mode(),
        "size": config.len(),
        "angles": matrix,
    });
    Ok((value, table))
}

fn cmd_angles(a: &ConfigArgs) -> grassdesign::Result<Outcome> {
    let config = load_config(&a.config)?;
    let (value, table) = angle_outcome(&config)?;
    Ok(Outcome::plain(value, table))
}

fn design_table(report: &DesignReport) -> Vec<Vec<String>> {
    let mut table = vec![["partition", "defect", "dim", "relative", "vanishes"].map(String::from).to_vec()];
    for e in &report.entries {
        table.push(vec![
            e.partition.to_string(),
            e.defect.to_string(),
            e.dim.to_string(),
            format!("{:e}", e.relative),
            e.vanishes.to_string(),
        ]);
    }
    table
}

fn verify(config: &SubspaceConfiguration, set: &str, tol: f64, ctx: &Context) -> grassdesign::Result<DesignReport> {
    let t = parse_design_set(set, config.m())?;
    let table = angle_table(config, ctx.parallel)?;
    report_from_table(&config.label, &table, &t, tol)
}

fn cmd_verify(a: &VerifyArgs, ctx: &Context) -> grassdesign::Result<Outcome> {
    if a.tol.is_nan() || a.tol < 0.0 {
        return Err(Error::OutOfRange(format!("tolerance must be nonnegative, got {}", a.tol)));
    }
    let config = load_config(&a.config)?;
    let report = verify(&config, &a.set, a.tol, ctx)?;
    let table = design_table(&report);
    Ok(Outcome { verified: report.is_design, result: serde_json::to_value(&report)?, table })
}

fn certificate(kind: Certificate, m: usize, n: usize) -> grassdesign::Result<CoefficientFunction> {
    match kind {
        Certificate::E => certificate_e(m, n),
        Certificate::F => certificate_f(m, n),
        Certificate::One => certificate_one_design(m, n),
    }
}

fn cmd_bound(a: &CertificateArgs) -> grassdesign::Result<Outcome> {
    let c = certificate(a.certificate, a.m, a.n)?;
    let bound = lp_bound(&c)?;
    let mut table = vec![vec!["partition".to_string(), "coeff".to_string()]];
    for (mu, v) in c.support() {
        table.push(vec![mu.to_string(), format_rational(v)]);
    }
    table.push(vec!["bound".to_string(), format_rational(&bound.bound)]);
    Ok(Outcome::plain(json!({ "certificate": c, "bound": bound }), table))
}

fn configuration_outcome(
    config: &SubspaceConfiguration,
    set: Option<&str>,
    ctx: &Context,
) -> grassdesign::Result<Outcome> {
    let antipodal = config.is_antipodal_set(0.0)?;
    let (angles, mut table) = angle_outcome(config)?;
    let mut result =
        BTreeMap::from([("configuration".to_string(), angles), ("antipodal".to_string(), Value::Bool(antipodal))]);
    let mut verified = true;
    if let Some(set) = set {
        let report = verify(config, set, 0.0, ctx)?;
        verified = report.is_design;
        table = design_table(&report);
        result.insert("design".to_string(), serde_json::to_value(&report)?);
    }
    Ok(Outcome { result: serde_json::to_value(result)?, table, verified })
}

fn cmd_antipodal(a: &AntipodalArgs, ctx: &Context) -> grassdesign::Result<Outcome> {
    configuration_outcome(&great_antipodal(a.m, a.n)?, a.verify.as_deref(), ctx)
}

fn cmd_appendix_b(a: &AppendixArgs, ctx: &Context) -> grassdesign::Result<Outcome> {
    configuration_outcome(&appendix_b_config(), a.verify.as_deref(), ctx)
}

fn cmd_check_nonneg(a: &NonnegArgs, ctx: &Context) -> grassdesign::Result<Outcome> {
    let c = certificate(a.certificate, a.m, a.n)?;
    let report = check_nonnegativity(&c, a.depth, a.samples, ctx.seed)?;
    let table = vec![
        ["points_checked", "minimum", "argmin", "violations"].map(String::from).to_vec(),
        vec![
            report.points_checked.to_string(),
            format_rational(&report.minimum),
            report.argmin.join(" "),
            report.violations.to_string(),
        ],
    ];
    Ok(Outcome { verified: report.nonnegative, result: serde_json::to_value(&report)?, table })
}

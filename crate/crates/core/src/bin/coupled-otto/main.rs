//! `coupled-otto` command-line front end.

mod config;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use coupled_otto::cycle::{critical_coupling, Device};
use coupled_otto::entanglement::cycle_concurrences;
use coupled_otto::figures::{self, FigureName, Table};
use coupled_otto::optimize::{max_coupled_work, max_uncoupled_work, sample_engine_points};
use coupled_otto::oracle::{run_verification, Mutation, VerifyLevel};
use coupled_otto::{evaluate_cycle, CouplingModel, CyclePoint, CycleSpec, MediumKind, OttoError};

use config::{Format, RunConfig};

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Domain(String),
    Verification(String),
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Domain(_) | CliError::Io(_) => 3,
            CliError::Verification(_) => 4,
        }
    }
}

impl From<OttoError> for CliError {
    fn from(e: OttoError) -> Self {
        match e {
            OttoError::UnknownModel(_) | OttoError::EmptyDomain(_) => CliError::Config(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Domain(m) => write!(f, "{m}"),
            CliError::Verification(m) => write!(f, "verification failed: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "coupled-otto",
    version,
    about = "Quantum Otto cycles with coupled oscillators and spins"
)]
struct Cli {
    /// JSON run configuration; command-line flags override its fields
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a single cycle and print a JSON report
    Cycle(RunConfig),
    /// Evaluate a cycle over a range of couplings
    Sweep(RunConfig),
    /// Emit a figure dataset
    Figure {
        #[arg(value_parser = parse_figure)]
        name: FigureName,
        #[command(flatten)]
        config: RunConfig,
    },
    /// Maximize work over the cycle parameters
    Optimize(RunConfig),
    /// Sample random XX spin engines with their concurrences
    Sample(RunConfig),
    /// Check closed forms against brute-force diagonalization
    Verify {
        #[arg(long, value_enum, default_value = "quick")]
        level: LevelArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Corrupt the closed forms on purpose
        #[arg(long, value_enum, hide = true)]
        mutate: Option<MutationArg>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum MutationArg {
    NegateLambdaP,
}

fn parse_figure(s: &str) -> Result<FigureName, String> {
    s.parse().map_err(|e: OttoError| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("{e}");
        return ExitCode::from(e.exit_code());
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("coupled-otto: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("OTTO_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Config(format!("OTTO_THREADS: expected a positive integer, got '{raw}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Config(format!("OTTO_THREADS: {e}")))
}

fn run(cli: Cli) -> Result<(), CliError> {
    let path = cli.config.as_deref();
    match cli.command {
        Command::Cycle(flags) => cmd_cycle(&RunConfig::resolve(path, &flags)?),
        Command::Sweep(flags) => cmd_sweep(&RunConfig::resolve(path, &flags)?),
        Command::Figure { name, config } => cmd_figure(name, &RunConfig::resolve(path, &config)?),
        Command::Optimize(flags) => cmd_optimize(&RunConfig::resolve(path, &flags)?),
        Command::Sample(flags) => cmd_sample(&RunConfig::resolve(path, &flags)?),
        Command::Verify { level, seed, mutate } => cmd_verify(level, seed, mutate),
    }
}

fn emit(bytes: &[u8], cfg: &RunConfig) -> Result<(), CliError> {
    match &cfg.out {
        Some(p) => std::fs::write(p, bytes).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => std::io::stdout()
            .write_all(bytes)
            .map_err(|e| CliError::Io(e.to_string())),
    }
}

fn emit_table(table: &Table, cfg: &RunConfig) -> Result<(), CliError> {
    let bytes = match cfg.format() {
        Format::Csv => {
            let mut buf = Vec::new();
            table.write_csv(&mut buf).map_err(|e| CliError::Io(e.to_string()))?;
            buf
        }
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&table.to_json()).expect("tables serialize");
            s.push('\n');
            s.into_bytes()
        }
    };
    emit(&bytes, cfg)
}

fn emit_json(value: &serde_json::Value, cfg: &RunConfig) -> Result<(), CliError> {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    emit(s.as_bytes(), cfg)
}

fn cmd_cycle(cfg: &RunConfig) -> Result<(), CliError> {
    let kind = cfg.medium()?;
    let omega = cfg.frequency("omega", cfg.omega, None)?;
    let omega_prime = cfg.frequency("omega-prime", cfg.omega_prime, None)?;
    let baths = cfg.baths(None, None)?;
    let coupling = cfg.coupling(kind)?;
    let spec = CycleSpec::new(
        kind,
        CyclePoint::new(omega, coupling),
        CyclePoint::new(omega_prime, coupling),
        baths,
    )?;
    let result = evaluate_cycle(&spec)?;
    let mut report = json!({
        "medium": kind.label(),
        "spec": spec,
        "result": result,
    });
    if kind == MediumKind::Spin {
        let c = cycle_concurrences(&spec)?;
        report["concurrence"] = json!({ "hot": c.hot, "cold": c.cold });
    }
    if cfg.model() == CouplingModel::Xx && !baths.is_degenerate() && cfg.jx.is_none() && cfg.lx.is_none() {
        report["critical_coupling"] = json!({
            "engine": critical_coupling(Device::Engine, omega, omega_prime, &baths)?,
            "refrigerator": critical_coupling(Device::Refrigerator, omega, omega_prime, &baths)?,
        });
    }
    emit_json(&report, cfg)
}

fn cmd_sweep(cfg: &RunConfig) -> Result<(), CliError> {
    let kind = cfg.medium()?;
    if cfg.model() == CouplingModel::General {
        return Err(CliError::Config("model: sweeps support the xx and xy families".into()));
    }
    let omega = cfg.frequency("omega", cfg.omega, None)?;
    let omega_prime = cfg.frequency("omega-prime", cfg.omega_prime, None)?;
    let baths = cfg.baths(None, None)?;
    let sweep = cfg.sweep(None)?;
    emit_table(
        &figures::sweep(kind, cfg.model(), omega, omega_prime, &baths, &sweep),
        cfg,
    )
}

fn cmd_figure(name: FigureName, cfg: &RunConfig) -> Result<(), CliError> {
    let d = name.defaults();
    let baths = cfg.baths(Some(FigureName::DEFAULT_T_HOT), Some(FigureName::DEFAULT_T_COLD))?;
    let table = if name == FigureName::Fig5 {
        let n = cfg.n.unwrap_or(FigureName::DEFAULT_SAMPLES);
        if n == 0 {
            return Err(CliError::Config("n: must be at least 1".into()));
        }
        let domain = cfg.domain(FigureName::DEFAULT_SAMPLE_RANGE, true)?;
        figures::fig5(cfg.seed.unwrap_or(0), n, &domain, &baths)?
    } else {
        let omega = cfg.frequency("omega", cfg.omega, Some(d.omega))?;
        let omega_prime = cfg.frequency("omega-prime", cfg.omega_prime, Some(d.omega_prime))?;
        let sweep = cfg.sweep(Some(d.sweep))?;
        match name {
            FigureName::Fig3 => figures::fig3(omega, omega_prime, &baths, &sweep),
            FigureName::Fig6 => figures::fig6(omega, omega_prime, &baths, &sweep),
            FigureName::Fig7a => figures::fig7(Device::Engine, omega, omega_prime, &baths, &sweep),
            FigureName::Fig7b => figures::fig7(Device::Refrigerator, omega, omega_prime, &baths, &sweep),
            FigureName::Fig5 => unreachable!(),
        }
    };
    emit_table(&table, cfg)
}

fn cmd_optimize(cfg: &RunConfig) -> Result<(), CliError> {
    let kind = cfg.medium()?;
    let baths = cfg.baths(Some(FigureName::DEFAULT_T_HOT), Some(FigureName::DEFAULT_T_COLD))?;
    let resolution = cfg.resolution.unwrap_or(60);
    let model = cfg.model();
    let domain = cfg.domain(10.0, model != CouplingModel::General)?;
    let single = max_uncoupled_work(kind, &baths, &domain, resolution)?;
    let mut report = json!({
        "medium": kind.label(),
        "uncoupled": single,
        "uncoupled_pair_work": single.pair_work(),
    });
    if cfg.model.is_some() {
        report["coupled"] = json!(max_coupled_work(kind, model, &baths, &domain, resolution)?);
    }
    emit_json(&report, cfg)
}

fn cmd_sample(cfg: &RunConfig) -> Result<(), CliError> {
    let baths = cfg.baths(Some(FigureName::DEFAULT_T_HOT), Some(FigureName::DEFAULT_T_COLD))?;
    let n = cfg.n.unwrap_or(FigureName::DEFAULT_SAMPLES);
    if n == 0 {
        return Err(CliError::Config("n: must be at least 1".into()));
    }
    let domain = cfg.domain(FigureName::DEFAULT_SAMPLE_RANGE, true)?;
    let set = sample_engine_points(cfg.seed.unwrap_or(0), n, &domain, &baths)?;
    eprintln!(
        "drawn {}, invalid {}, engines {}",
        set.drawn,
        set.invalid,
        set.records.len()
    );
    let label = figures::regime_label;
    let rows = set
        .records
        .iter()
        .map(|r| {
            vec![
                (r.index as f64).into(),
                r.omega.into(),
                r.omega_prime.into(),
                r.lambda.into(),
                r.work.into(),
                r.q_hot.into(),
                r.c_hot.into(),
                r.c_cold.into(),
                figures::Cell::Text(label(r.regime_a)),
                figures::Cell::Text(label(r.regime_b)),
            ]
        })
        .collect();
    let table = Table {
        columns: vec![
            "index",
            "omega",
            "omega_prime",
            "lambda",
            "work",
            "q_hot",
            "c_hot",
            "c_cold",
            "regime_a",
            "regime_b",
        ],
        rows,
    };
    emit_table(&table, cfg)
}

fn cmd_verify(level: LevelArg, seed: u64, mutate: Option<MutationArg>) -> Result<(), CliError> {
    let level = match level {
        LevelArg::Quick => VerifyLevel::Quick,
        LevelArg::Full => VerifyLevel::Full,
    };
    let mutation = mutate.map(|MutationArg::NegateLambdaP| Mutation::NegateSecondCoupling);
    let report = run_verification(level, seed, mutation);
    let mut out = String::new();
    out.push_str(&format!(
        "{:<11} {:<8} {:<36} {:>6} {:>12} {:>9}  status\n",
        "medium", "model", "check", "draws", "max residual", "threshold"
    ));
    for c in &report.checks {
        let model = c.model.map_or("-".to_string(), |m| format!("{m:?}").to_lowercase());
        out.push_str(&format!(
            "{:<11} {:<8} {:<36} {:>6} {:>12.3e} {:>9.0e}  {}\n",
            c.medium.label(),
            model,
            c.check,
            c.draws,
            c.max_residual,
            c.threshold,
            if c.passed { "ok" } else { "FAIL" }
        ));
    }
    for f in &report.failures {
        out.push_str(&format!("error: {f}\n"));
    }
    print!("{out}");
    if report.passed() {
        Ok(())
    } else {
        let failed = report.checks.iter().filter(|c| !c.passed).count() + report.failures.len();
        Err(CliError::Verification(format!(
            "{failed} check(s) breached their threshold"
        )))
    }
}

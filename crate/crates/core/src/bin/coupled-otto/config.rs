//! Run configuration: a JSON file overlaid by command-line flags.

use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::Deserialize;

use coupled_otto::figures::LambdaSweep;
use coupled_otto::optimize::SearchDomain;
use coupled_otto::{BathPair, Coupling, CouplingModel, MediumKind};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum MediumArg {
    #[serde(alias = "oscillator")]
    #[value(alias = "oscillator")]
    Osc,
    Spin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ModelArg {
    Xx,
    Xy,
    General,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Every field is optional so that files and flags can be layered.
#[derive(Debug, Clone, Default, Deserialize, Args)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Working medium
    #[arg(long, value_enum)]
    pub medium: Option<MediumArg>,
    /// Coupling family
    #[arg(long, value_enum)]
    pub model: Option<ModelArg>,
    /// Bare frequency at the hot point
    #[arg(long, allow_negative_numbers = true)]
    pub omega: Option<f64>,
    /// Bare frequency at the cold point
    #[arg(long = "omega-prime", allow_negative_numbers = true)]
    pub omega_prime: Option<f64>,
    /// Coupling strength for the xx and xy families
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
    /// Spin exchange along x (general model)
    #[arg(long, allow_negative_numbers = true)]
    pub jx: Option<f64>,
    /// Spin exchange along y (general model)
    #[arg(long, allow_negative_numbers = true)]
    pub jy: Option<f64>,
    /// Oscillator position coupling (general model)
    #[arg(long, allow_negative_numbers = true)]
    pub lx: Option<f64>,
    /// Oscillator momentum coupling (general model)
    #[arg(long, allow_negative_numbers = true)]
    pub lp: Option<f64>,
    /// Hot bath temperature
    #[arg(long, allow_negative_numbers = true)]
    pub th: Option<f64>,
    /// Cold bath temperature
    #[arg(long, allow_negative_numbers = true)]
    pub tc: Option<f64>,
    /// First coupling value of a sweep
    #[arg(long = "lambda-start", allow_negative_numbers = true)]
    pub lambda_start: Option<f64>,
    /// Last coupling value of a sweep
    #[arg(long = "lambda-stop", allow_negative_numbers = true)]
    pub lambda_stop: Option<f64>,
    /// Coupling step of a sweep
    #[arg(long = "lambda-step", allow_negative_numbers = true)]
    pub lambda_step: Option<f64>,
    /// Random seed
    #[arg(long)]
    pub seed: Option<u64>,
    /// Number of random draws
    #[arg(long)]
    pub n: Option<usize>,
    /// Upper end of every search or sampling interval
    #[arg(long, allow_negative_numbers = true)]
    pub range: Option<f64>,
    /// Grid points per axis for optimization
    #[arg(long)]
    pub resolution: Option<usize>,
    /// Output file (stdout when absent)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

macro_rules! overlay {
    ($base:expr, $top:expr, $($f:ident),*) => {
        $( if $top.$f.is_some() { $base.$f = $top.$f.clone(); } )*
    };
}

impl RunConfig {
    /// Loads `path` (if any) and applies `flags` on top.
    pub fn resolve(path: Option<&Path>, flags: &RunConfig) -> Result<RunConfig, CliError> {
        let mut base = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| CliError::Config(format!("config: cannot read {}: {e}", p.display())))?;
                serde_json::from_str(&text).map_err(|e| CliError::Config(format!("config: {}: {e}", p.display())))?
            }
            None => RunConfig::default(),
        };
        overlay!(
            base,
            flags,
            medium,
            model,
            omega,
            omega_prime,
            lambda,
            jx,
            jy,
            lx,
            lp,
            th,
            tc,
            lambda_start,
            lambda_stop,
            lambda_step,
            seed,
            n,
            range,
            resolution,
            out,
            format
        );
        Ok(base)
    }

    pub fn medium(&self) -> Result<MediumKind, CliError> {
        match self.medium {
            Some(MediumArg::Osc) => Ok(MediumKind::Oscillator),
            Some(MediumArg::Spin) => Ok(MediumKind::Spin),
            None => Err(CliError::Config("medium: required (osc or spin)".into())),
        }
    }

    pub fn model(&self) -> CouplingModel {
        match self.model {
            Some(ModelArg::Xy) => CouplingModel::Xy,
            Some(ModelArg::General) => CouplingModel::General,
            Some(ModelArg::Xx) | None => CouplingModel::Xx,
        }
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or_default()
    }

    pub fn frequency(&self, name: &'static str, value: Option<f64>, default: Option<f64>) -> Result<f64, CliError> {
        let v = value
            .or(default)
            .ok_or_else(|| CliError::Config(format!("{name}: required")))?;
        positive(name, v)
    }

    pub fn baths(&self, default_hot: Option<f64>, default_cold: Option<f64>) -> Result<BathPair, CliError> {
        let th = self
            .th
            .or(default_hot)
            .ok_or_else(|| CliError::Config("th: required".into()))?;
        let tc = self
            .tc
            .or(default_cold)
            .ok_or_else(|| CliError::Config("tc: required".into()))?;
        positive("th", th)?;
        positive("tc", tc)?;
        if th < tc {
            return Err(CliError::Config(format!("th: hot temperature {th} is below tc = {tc}")));
        }
        BathPair::new(th, tc).map_err(|e| CliError::Config(format!("th/tc: {e}")))
    }

    /// The coupling selected by explicit components or by `--lambda`.
    pub fn coupling(&self, kind: MediumKind) -> Result<Coupling, CliError> {
        let (spin_given, osc_given) = (
            self.jx.is_some() || self.jy.is_some(),
            self.lx.is_some() || self.lp.is_some(),
        );
        match kind {
            MediumKind::Oscillator if spin_given => {
                return Err(CliError::Config(
                    "jx/jy: spin exchange given for an oscillator medium; use --lx/--lp".into(),
                ))
            }
            MediumKind::Spin if osc_given => {
                return Err(CliError::Config(
                    "lx/lp: oscillator couplings given for a spin medium; use --jx/--jy".into(),
                ))
            }
            _ => {}
        }
        if spin_given || osc_given {
            if self.lambda.is_some() {
                return Err(CliError::Config(
                    "lambda: give either --lambda or explicit coupling components".into(),
                ));
            }
            let (a, b) = match kind {
                MediumKind::Oscillator => (self.lx.unwrap_or(0.0), self.lp.unwrap_or(0.0)),
                MediumKind::Spin => (self.jx.unwrap_or(0.0), self.jy.unwrap_or(0.0)),
            };
            finite("coupling", a)?;
            finite("coupling", b)?;
            return Ok(match kind {
                MediumKind::Oscillator => Coupling::Oscillator {
                    lambda_x: a,
                    lambda_p: b,
                },
                MediumKind::Spin => Coupling::Spin { jx: a, jy: b },
            });
        }
        if self.model() == CouplingModel::General {
            return Err(CliError::Config(
                "model: general needs explicit components (--jx/--jy or --lx/--lp)".into(),
            ));
        }
        let lambda = finite("lambda", self.lambda.unwrap_or(0.0))?;
        Ok(Coupling::from_model(kind, self.model(), lambda))
    }

    pub fn sweep(&self, default: Option<LambdaSweep>) -> Result<LambdaSweep, CliError> {
        let start = self.lambda_start.or(default.map(|d| d.start)).unwrap_or(0.0);
        let stop = self
            .lambda_stop
            .or(default.map(|d| d.stop))
            .ok_or_else(|| CliError::Config("lambda-stop: required".into()))?;
        let step = self.lambda_step.or(default.map(|d| d.step)).unwrap_or(0.01);
        if step.is_nan() || step <= 0.0 {
            return Err(CliError::Config(format!("lambda-step: must be positive, got {step}")));
        }
        LambdaSweep::new(start, stop, step).map_err(|e| CliError::Config(format!("lambda-start/lambda-stop: {e}")))
    }

    pub fn domain(&self, default_range: f64, coupling_from_zero: bool) -> Result<SearchDomain, CliError> {
        let r = positive("range", self.range.unwrap_or(default_range))?;
        let c = if coupling_from_zero { (0.0, r) } else { (-r, r) };
        SearchDomain::new((0.0, r), (0.0, r), c).map_err(|e| CliError::Config(format!("range: {e}")))
    }
}

fn finite(name: &str, v: f64) -> Result<f64, CliError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::Config(format!("{name}: must be finite, got {v}")))
    }
}

fn positive(name: &str, v: f64) -> Result<f64, CliError> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(CliError::Config(format!("{name}: must be positive, got {v}")))
    }
}

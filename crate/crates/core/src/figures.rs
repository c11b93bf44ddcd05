//! Tabular datasets behind the figures and parameter sweeps.

use std::io::{self, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cycle::{evaluate_cycle, CycleResult, Device, Regime};
use crate::error::{domain, OttoError, Result};
use crate::medium::{BathPair, CouplingModel, CycleSpec, MediumKind};
use crate::optimize::{sample_engine_points, SearchDomain};

/// One table cell. `Empty` marks a quantity that is undefined at that row,
/// such as an efficiency outside the engine regime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Number(f64),
    Text(&'static str),
    Empty,
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Number)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Number(v)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| *c == name)
    }

    /// Numeric value of `name` in `row`, if present.
    pub fn value(&self, row: usize, name: &str) -> Option<f64> {
        match self.rows.get(row)?.get(self.column(name)?)? {
            Cell::Number(v) => Some(*v),
            _ => None,
        }
    }

    /// Header row, then one line per row; numbers carry 17 significant
    /// digits and undefined cells are left empty.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let line: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Number(v) => format!("{v:.16e}"),
                    Cell::Text(t) => (*t).to_string(),
                    Cell::Empty => String::new(),
                })
                .collect();
            writeln!(out, "{}", line.join(","))?;
        }
        Ok(())
    }

    /// Array of objects keyed by column; undefined cells become `null`.
    pub fn to_json(&self) -> serde_json::Value {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let map = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(k, c)| {
                        let v = match c {
                            Cell::Number(v) => serde_json::Number::from_f64(*v)
                                .map_or(serde_json::Value::Null, serde_json::Value::Number),
                            Cell::Text(t) => serde_json::Value::String((*t).to_string()),
                            Cell::Empty => serde_json::Value::Null,
                        };
                        ((*k).to_string(), v)
                    })
                    .collect();
                serde_json::Value::Object(map)
            })
            .collect();
        serde_json::Value::Array(rows)
    }
}

/// Evenly spaced coupling values `start, start + step, …` up to `stop`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LambdaSweep {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl LambdaSweep {
    pub fn new(start: f64, stop: f64, step: f64) -> Result<Self> {
        if !(start.is_finite() && stop.is_finite() && step.is_finite() && step > 0.0 && stop >= start) {
            return Err(domain(format!("invalid sweep [{start}, {stop}] with step {step}")));
        }
        Ok(Self { start, stop, step })
    }

    /// Grid values computed as `start + i·step` so they do not accumulate
    /// rounding error.
    pub fn values(&self) -> Vec<f64> {
        let n = ((self.stop - self.start) / self.step + 1e-9).floor() as usize;
        (0..=n).map(|i| self.start + i as f64 * self.step).collect()
    }
}

pub fn regime_label(regime: Regime) -> &'static str {
    match regime {
        Regime::Engine => "engine",
        Regime::Refrigerator => "refrigerator",
        Regime::Dissipator => "dissipator",
    }
}

fn evaluate_row(
    kind: MediumKind,
    model: CouplingModel,
    omega: f64,
    omega_prime: f64,
    lambda: f64,
    baths: &BathPair,
) -> Option<CycleResult> {
    CycleSpec::with_model(kind, model, omega, omega_prime, lambda, *baths)
        .and_then(|s| evaluate_cycle(&s))
        .ok()
}

fn mode_figure(r: &Option<CycleResult>, index: usize, regime: Regime) -> Cell {
    r.as_ref()
        .filter(|r| r.modes[index].regime == regime)
        .and_then(|r| r.modes[index].figure_of_merit)
        .into()
}

fn global_figure(r: &Option<CycleResult>, regime: Regime) -> Cell {
    r.as_ref()
        .filter(|r| r.regime == regime)
        .and_then(|r| r.global_figure)
        .into()
}

/// Which XX bound-figure to build.
fn xx_bounds_table(device: Device, omega: f64, omega_prime: f64, baths: &BathPair, sweep: &LambdaSweep) -> Table {
    let (regime, carnot, columns) = match device {
        Device::Engine => (
            Regime::Engine,
            baths.carnot_efficiency(),
            vec!["lambda", "eta_a", "eta_b", "eta_os", "eta_sp", "eta_carnot"],
        ),
        Device::Refrigerator => (
            Regime::Refrigerator,
            baths.carnot_cop(),
            vec!["lambda", "zeta_a", "zeta_b", "zeta_os", "zeta_sp", "zeta_carnot"],
        ),
    };
    let rows = sweep
        .values()
        .par_iter()
        .map(|&l| {
            let os = evaluate_row(MediumKind::Oscillator, CouplingModel::Xx, omega, omega_prime, l, baths);
            let sp = evaluate_row(MediumKind::Spin, CouplingModel::Xx, omega, omega_prime, l, baths);
            // Mode figures are shared by both media; take them from whichever
            // medium is defined at this coupling.
            let modes = if os.is_some() { &os } else { &sp };
            vec![
                l.into(),
                mode_figure(modes, 0, regime),
                mode_figure(modes, 1, regime),
                global_figure(&os, regime),
                global_figure(&sp, regime),
                carnot.into(),
            ]
        })
        .collect();
    Table { columns, rows }
}

/// XX engines: per-mode bounds and global efficiencies of both media.
pub fn fig3(omega: f64, omega_prime: f64, baths: &BathPair, sweep: &LambdaSweep) -> Table {
    xx_bounds_table(Device::Engine, omega, omega_prime, baths, sweep)
}

/// XX refrigerators: per-mode bounds and global COPs of both media.
pub fn fig6(omega: f64, omega_prime: f64, baths: &BathPair, sweep: &LambdaSweep) -> Table {
    xx_bounds_table(Device::Refrigerator, omega, omega_prime, baths, sweep)
}

/// XY couplings against the uncoupled reference.
pub fn fig7(device: Device, omega: f64, omega_prime: f64, baths: &BathPair, sweep: &LambdaSweep) -> Table {
    let (regime, columns) = match device {
        Device::Engine => (Regime::Engine, vec!["lambda", "eta_os", "eta_sp", "eta_uncoupled"]),
        Device::Refrigerator => (
            Regime::Refrigerator,
            vec!["lambda", "zeta_os", "zeta_sp", "zeta_uncoupled"],
        ),
    };
    let reference = evaluate_row(MediumKind::Spin, CouplingModel::Xy, omega, omega_prime, 0.0, baths);
    let reference = global_figure(&reference, regime);
    let rows = sweep
        .values()
        .par_iter()
        .map(|&l| {
            let os = evaluate_row(MediumKind::Oscillator, CouplingModel::Xy, omega, omega_prime, l, baths);
            let sp = evaluate_row(MediumKind::Spin, CouplingModel::Xy, omega, omega_prime, l, baths);
            vec![
                l.into(),
                global_figure(&os, regime),
                global_figure(&sp, regime),
                reference,
            ]
        })
        .collect();
    Table { columns, rows }
}

/// Work and concurrences of sampled XX spin engines.
pub fn fig5(seed: u64, n: usize, domain: &SearchDomain, baths: &BathPair) -> Result<Table> {
    let set = sample_engine_points(seed, n, domain, baths)?;
    let rows = set
        .records
        .iter()
        .map(|r| {
            vec![
                r.work.into(),
                r.c_hot.into(),
                r.c_cold.into(),
                r.omega.into(),
                r.omega_prime.into(),
                r.lambda.into(),
            ]
        })
        .collect();
    Ok(Table {
        columns: vec!["work", "c_hot", "c_cold", "omega", "omega_prime", "lambda"],
        rows,
    })
}

/// Full cycle report across a coupling sweep for one medium.
pub fn sweep(
    kind: MediumKind,
    model: CouplingModel,
    omega: f64,
    omega_prime: f64,
    baths: &BathPair,
    sweep: &LambdaSweep,
) -> Table {
    let columns = vec![
        "lambda",
        "omega_a_hot",
        "omega_a_cold",
        "omega_b_hot",
        "omega_b_cold",
        "q_hot_a",
        "q_cold_a",
        "work_a",
        "q_hot_b",
        "q_cold_b",
        "work_b",
        "q_hot",
        "q_cold",
        "work",
        "regime_a",
        "regime_b",
        "regime",
        "figure_a",
        "figure_b",
        "figure",
        "weight",
        "bound_low",
        "bound_high",
    ];
    let width = columns.len();
    let rows = sweep
        .values()
        .par_iter()
        .map(|&l| {
            let Some(r) = evaluate_row(kind, model, omega, omega_prime, l, baths) else {
                let mut row = vec![Cell::Empty; width];
                row[0] = l.into();
                return row;
            };
            let [a, b] = r.modes;
            vec![
                l.into(),
                a.omega_hot.into(),
                a.omega_cold.into(),
                b.omega_hot.into(),
                b.omega_cold.into(),
                a.q_hot.into(),
                a.q_cold.into(),
                a.work.into(),
                b.q_hot.into(),
                b.q_cold.into(),
                b.work.into(),
                r.q_hot.into(),
                r.q_cold.into(),
                r.work.into(),
                Cell::Text(regime_label(a.regime)),
                Cell::Text(regime_label(b.regime)),
                Cell::Text(regime_label(r.regime)),
                a.figure_of_merit.into(),
                b.figure_of_merit.into(),
                r.global_figure.into(),
                r.weight.into(),
                r.bounds.map(|x| x.0).into(),
                r.bounds.map(|x| x.1).into(),
            ]
        })
        .collect();
    Table { columns, rows }
}

/// Named figure datasets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FigureName {
    Fig3,
    Fig5,
    Fig6,
    Fig7a,
    Fig7b,
}

impl std::str::FromStr for FigureName {
    type Err = OttoError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "fig3" => Ok(FigureName::Fig3),
            "fig5" => Ok(FigureName::Fig5),
            "fig6" => Ok(FigureName::Fig6),
            "fig7a" => Ok(FigureName::Fig7a),
            "fig7b" => Ok(FigureName::Fig7b),
            other => Err(domain(format!("unknown figure '{other}'"))),
        }
    }
}

/// Default parameters for each figure, all with T_h = 2 and T_c = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FigureDefaults {
    pub omega: f64,
    pub omega_prime: f64,
    pub sweep: LambdaSweep,
}

impl FigureName {
    pub const DEFAULT_T_HOT: f64 = 2.0;
    pub const DEFAULT_T_COLD: f64 = 1.0;
    pub const DEFAULT_SAMPLES: usize = 100_000;
    pub const DEFAULT_SAMPLE_RANGE: f64 = 10.0;

    pub fn defaults(self) -> FigureDefaults {
        let (omega, omega_prime, stop) = match self {
            FigureName::Fig3 | FigureName::Fig7a => (4.0, 3.0, 3.0),
            FigureName::Fig6 | FigureName::Fig7b => (5.0, 2.0, 2.0),
            FigureName::Fig5 => (0.0, 0.0, Self::DEFAULT_SAMPLE_RANGE),
        };
        FigureDefaults {
            omega,
            omega_prime,
            sweep: LambdaSweep {
                start: 0.0,
                stop,
                step: 0.01,
            },
        }
    }
}

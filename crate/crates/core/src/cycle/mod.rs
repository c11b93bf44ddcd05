//! Heats, work and figures of merit of the Otto cycle.
//!
//! Every heat is counted as flowing *into* the working medium, and work is
//! the work done *by* it, so `W = Q_h + Q_c` holds without sign juggling.
//! A mode behaves as an engine when `W > 0, Q_h > 0` and as a refrigerator
//! when `Q_c > 0, W < 0`.

mod expansion;
mod regime;
mod relaxation;

use serde::{Deserialize, Serialize};

pub use expansion::{perturbative_prediction, xx_engine_gap, xx_fridge_gap, ExpansionModel};
pub use regime::{classify_regime, default_tolerance, Classification, Regime};
pub use relaxation::occupation_relaxation;

use crate::error::{domain, OttoError, Result};
use crate::medium::{mean_occupation, mode_pairs_for_cycle, BathPair, CycleSpec, MediumKind, ModeStroke};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModeId {
    A,
    B,
}

/// Heats into the system and work done by it over one cycle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Heats {
    pub q_hot: f64,
    pub q_cold: f64,
    pub work: f64,
}

/// Heats and work of a single mode cycling `omega -> omega_prime`.
///
/// Only population differences enter: the mode absorbs
/// `ω (n_h - n_c)` from the hot bath and `ω' (n_c - n_h)` from the cold one,
/// with `n` the thermal occupation at each end.
pub fn mode_heats(kind: MediumKind, omega: f64, omega_prime: f64, baths: &BathPair) -> Heats {
    // (coth x - coth y)/2 and (tanh y - tanh x)/2 both equal n_h - n_c;
    // the occupation form keeps precision deep in the Boltzmann tail.
    let dn = mean_occupation(kind, baths.beta_hot(), omega) - mean_occupation(kind, baths.beta_cold(), omega_prime);
    let q_hot = omega * dn;
    let q_cold = -omega_prime * dn;
    Heats {
        q_hot,
        q_cold,
        work: q_hot + q_cold,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeCycleResult {
    pub mode: ModeId,
    pub omega_hot: f64,
    pub omega_cold: f64,
    pub q_hot: f64,
    pub q_cold: f64,
    pub work: f64,
    pub regime: Regime,
    pub on_boundary: bool,
    /// η in the engine regime, ζ in the refrigerator regime, absent otherwise.
    pub figure_of_merit: Option<f64>,
}

impl ModeCycleResult {
    fn new(kind: MediumKind, mode: ModeId, stroke: ModeStroke, baths: &BathPair, eps: Option<f64>) -> Result<Self> {
        let h = mode_heats(kind, stroke.hot, stroke.cold, baths);
        let eps = eps.unwrap_or_else(|| default_tolerance(h.q_hot, h.q_cold));
        let class = classify_regime(h.q_hot, h.q_cold, h.work, eps)?;
        // Closed forms of W/Q_h and Q_c/|W|; they avoid 0/0 near the Carnot point.
        let figure_of_merit = match class.regime {
            Regime::Engine => Some(1.0 - stroke.cold / stroke.hot),
            Regime::Refrigerator => Some(stroke.cold / (stroke.hot - stroke.cold)),
            Regime::Dissipator => None,
        };
        Ok(Self {
            mode,
            omega_hot: stroke.hot,
            omega_cold: stroke.cold,
            q_hot: h.q_hot,
            q_cold: h.q_cold,
            work: h.work,
            regime: class.regime,
            on_boundary: class.on_boundary,
            figure_of_merit,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CycleResult {
    pub modes: [ModeCycleResult; 2],
    pub q_hot: f64,
    pub q_cold: f64,
    pub work: f64,
    /// Regime of the composite system from the total heats.
    pub regime: Regime,
    pub on_boundary: bool,
    /// Global η (engine) or ζ (refrigerator).
    pub global_figure: Option<f64>,
    /// α = Q_A/(Q_A+Q_B) for a double engine, α' = |W_A|/|W_A+W_B| for a
    /// double refrigerator.
    pub weight: Option<f64>,
    /// (min, max) of the per-mode figures when both modes share a regime.
    pub bounds: Option<(f64, f64)>,
}

impl CycleResult {
    pub fn mode(&self, id: ModeId) -> &ModeCycleResult {
        match id {
            ModeId::A => &self.modes[0],
            ModeId::B => &self.modes[1],
        }
    }

    pub fn efficiency(&self) -> Option<f64> {
        (self.regime == Regime::Engine).then_some(self.global_figure).flatten()
    }

    pub fn cop(&self) -> Option<f64> {
        (self.regime == Regime::Refrigerator)
            .then_some(self.global_figure)
            .flatten()
    }

    pub fn both_modes_in(&self, regime: Regime) -> bool {
        self.modes.iter().all(|m| m.regime == regime)
    }
}

/// Evaluates a cycle with the default per-quantity tolerance.
pub fn evaluate_cycle(spec: &CycleSpec) -> Result<CycleResult> {
    evaluate(spec, None)
}

/// Evaluates a cycle with a fixed absolute regime tolerance `eps`.
pub fn evaluate_cycle_with_tolerance(spec: &CycleSpec, eps: f64) -> Result<CycleResult> {
    if !(eps.is_finite() && eps >= 0.0) {
        return Err(domain(format!("tolerance must be non-negative, got {eps}")));
    }
    evaluate(spec, Some(eps))
}

fn evaluate(spec: &CycleSpec, eps: Option<f64>) -> Result<CycleResult> {
    let strokes = mode_pairs_for_cycle(spec)?;
    let a = ModeCycleResult::new(spec.kind, ModeId::A, strokes.a, &spec.baths, eps)?;
    let b = ModeCycleResult::new(spec.kind, ModeId::B, strokes.b, &spec.baths, eps)?;

    let q_hot = a.q_hot + b.q_hot;
    let q_cold = a.q_cold + b.q_cold;
    let work = a.work + b.work;
    let eps_total = eps.unwrap_or_else(|| default_tolerance(q_hot, q_cold));
    let total = classify_regime(q_hot, q_cold, work, eps_total)?;

    let global_figure = match total.regime {
        Regime::Engine => Some(work / q_hot),
        Regime::Refrigerator => Some(q_cold / work.abs()),
        Regime::Dissipator => None,
    };

    let (weight, bounds) = match (a.regime, b.regime) {
        (Regime::Engine, Regime::Engine) => (Some(a.q_hot / q_hot), Some(ordered(&a, &b))),
        (Regime::Refrigerator, Regime::Refrigerator) => (Some(a.work.abs() / work.abs()), Some(ordered(&a, &b))),
        _ => (None, None),
    };

    Ok(CycleResult {
        modes: [a, b],
        q_hot,
        q_cold,
        work,
        regime: total.regime,
        on_boundary: total.on_boundary,
        global_figure,
        weight,
        bounds,
    })
}

fn ordered(a: &ModeCycleResult, b: &ModeCycleResult) -> (f64, f64) {
    let fa = a.figure_of_merit.unwrap_or(f64::NAN);
    let fb = b.figure_of_merit.unwrap_or(f64::NAN);
    (fa.min(fb), fa.max(fb))
}

/// Bounds on the global figure of merit set by the two independent modes.
pub fn figure_of_merit_bounds(result: &CycleResult) -> Result<(f64, f64)> {
    let [a, b] = &result.modes;
    if a.regime != b.regime {
        return Err(OttoError::RegimeMismatch {
            a: a.regime,
            b: b.regime,
        });
    }
    match (a.figure_of_merit, b.figure_of_merit) {
        (Some(fa), Some(fb)) => Ok((fa.min(fb), fa.max(fb))),
        _ => Err(domain("both modes are dissipators; no figure of merit to bound")),
    }
}

/// Device type for [`critical_coupling`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Device {
    Engine,
    Refrigerator,
}

/// XX coupling at which one mode sits exactly on its Carnot point.
///
/// Engine: mode B reaches `ω_B/T_h = ω_B'/T_c` at
/// `λ_c = (ω'T_h - ωT_c)/(T_h - T_c)`. Refrigerator: mode A reaches it at
/// `λ_c' = (ωT_c - ω'T_h)/(T_h - T_c)`.
pub fn critical_coupling(device: Device, omega: f64, omega_prime: f64, baths: &BathPair) -> Result<f64> {
    if baths.is_degenerate() {
        return Err(OttoError::DegenerateBaths);
    }
    let (th, tc) = (baths.t_hot(), baths.t_cold());
    let engine = (omega_prime * th - omega * tc) / (th - tc);
    Ok(match device {
        Device::Engine => engine,
        Device::Refrigerator => -engine,
    })
}

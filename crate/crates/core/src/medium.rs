//! Working media and their decomposition into independent normal modes.
//!
//! Two identical oscillators coupled through positions and momenta, and two
//! spin-1/2 particles with anisotropic exchange, both reduce to a pair of
//! uncoupled modes labelled `A` (the `+` branch) and `B` (the `-` branch).
//! Mode labels are never re-sorted, so a mode keeps its identity across the
//! hot and cold points of a cycle even where the two frequencies cross.
//!
//! Units: ħ = k_B = 1. Constant offsets of the spectrum are dropped; they
//! cancel in every heat and work expression.

use serde::{Deserialize, Serialize};

use crate::error::{domain, OttoError, Result};

/// Which kind of working medium a cycle uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MediumKind {
    #[serde(alias = "osc")]
    Oscillator,
    Spin,
}

impl MediumKind {
    pub fn label(self) -> &'static str {
        match self {
            MediumKind::Oscillator => "oscillator",
            MediumKind::Spin => "spin",
        }
    }
}

/// Hot and cold reservoir temperatures.
///
/// `T_h == T_c` is accepted so that the degenerate no-gradient case can be
/// expressed; anything colder-than-cold on the hot side is rejected.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BathPair {
    hot: f64,
    cold: f64,
}

impl BathPair {
    pub fn new(hot: f64, cold: f64) -> Result<Self> {
        if !(cold.is_finite() && cold > 0.0) {
            return Err(domain(format!("cold bath temperature must be positive, got {cold}")));
        }
        if !(hot.is_finite() && hot >= cold) {
            return Err(domain(format!(
                "hot bath temperature {hot} must not be below the cold one {cold}"
            )));
        }
        Ok(Self { hot, cold })
    }

    pub fn t_hot(&self) -> f64 {
        self.hot
    }

    pub fn t_cold(&self) -> f64 {
        self.cold
    }

    pub fn beta_hot(&self) -> f64 {
        1.0 / self.hot
    }

    pub fn beta_cold(&self) -> f64 {
        1.0 / self.cold
    }

    pub fn is_degenerate(&self) -> bool {
        self.hot == self.cold
    }

    /// `1 - T_c/T_h`.
    pub fn carnot_efficiency(&self) -> f64 {
        1.0 - self.cold / self.hot
    }

    /// `T_c/(T_h - T_c)`; infinite for degenerate baths.
    pub fn carnot_cop(&self) -> f64 {
        self.cold / (self.hot - self.cold)
    }
}

/// Quadratic coupling between the two constituents.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Coupling {
    /// Position (`lambda_x`) and momentum (`lambda_p`) coupling strengths.
    Oscillator { lambda_x: f64, lambda_p: f64 },
    /// Exchange constants along x and y.
    Spin { jx: f64, jy: f64 },
}

impl Coupling {
    pub fn kind(&self) -> MediumKind {
        match self {
            Coupling::Oscillator { .. } => MediumKind::Oscillator,
            Coupling::Spin { .. } => MediumKind::Spin,
        }
    }

    pub fn uncoupled(kind: MediumKind) -> Self {
        Self::from_model(kind, CouplingModel::Xx, 0.0)
    }

    /// Single-parameter coupling families.
    ///
    /// `Xx`: λ_x = λ_p = λ (J_x = J_y = λ), flip-flop term only.
    /// `Xy`: λ_x = -λ_p = λ (J_x = -J_y = λ), double-flip term only.
    /// `General` has no single-parameter form and is treated as `Xx`.
    pub fn from_model(kind: MediumKind, model: CouplingModel, lambda: f64) -> Self {
        let (first, second) = match model {
            CouplingModel::Xx | CouplingModel::General => (lambda, lambda),
            CouplingModel::Xy => (lambda, -lambda),
        };
        match kind {
            MediumKind::Oscillator => Coupling::Oscillator {
                lambda_x: first,
                lambda_p: second,
            },
            MediumKind::Spin => Coupling::Spin { jx: first, jy: second },
        }
    }

    /// The pair of raw coupling constants, (λ_x, λ_p) or (J_x, J_y).
    pub fn components(&self) -> (f64, f64) {
        match *self {
            Coupling::Oscillator { lambda_x, lambda_p } => (lambda_x, lambda_p),
            Coupling::Spin { jx, jy } => (jx, jy),
        }
    }
}

/// Named coupling families used by sweeps and the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CouplingModel {
    Xx,
    Xy,
    General,
}

impl std::str::FromStr for CouplingModel {
    type Err = OttoError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "xx" => Ok(CouplingModel::Xx),
            "xy" => Ok(CouplingModel::Xy),
            "general" => Ok(CouplingModel::General),
            other => Err(OttoError::UnknownModel(other.to_string())),
        }
    }
}

/// One end of a stroke: bare frequency plus coupling.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CyclePoint {
    pub omega: f64,
    pub coupling: Coupling,
}

impl CyclePoint {
    pub fn new(omega: f64, coupling: Coupling) -> Self {
        Self { omega, coupling }
    }

    pub fn normal_modes(&self) -> Result<ModePair> {
        match self.coupling {
            Coupling::Oscillator { lambda_x, lambda_p } => {
                oscillator_normal_modes(self.omega, lambda_x, lambda_p, 1.0).map(|m| m.modes)
            }
            Coupling::Spin { jx, jy } => spin_normal_modes(self.omega, jx, jy),
        }
    }
}

/// A four-stroke Otto cycle: thermalize at `hot` with the hot bath, drive to
/// `cold`, thermalize with the cold bath, drive back.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CycleSpec {
    pub kind: MediumKind,
    pub hot: CyclePoint,
    pub cold: CyclePoint,
    pub baths: BathPair,
}

impl CycleSpec {
    /// Builds and validates a cycle. Both points must decompose into
    /// positive-frequency modes.
    pub fn new(kind: MediumKind, hot: CyclePoint, cold: CyclePoint, baths: BathPair) -> Result<Self> {
        let spec = Self { kind, hot, cold, baths };
        spec.validate()?;
        Ok(spec)
    }

    /// Cycle driven by the bare frequency `omega -> omega_prime` at fixed
    /// coupling `lambda` of the given family.
    pub fn with_model(
        kind: MediumKind,
        model: CouplingModel,
        omega: f64,
        omega_prime: f64,
        lambda: f64,
        baths: BathPair,
    ) -> Result<Self> {
        let coupling = Coupling::from_model(kind, model, lambda);
        Self::new(
            kind,
            CyclePoint::new(omega, coupling),
            CyclePoint::new(omega_prime, coupling),
            baths,
        )
    }

    pub fn validate(&self) -> Result<()> {
        for (name, point) in [("hot", &self.hot), ("cold", &self.cold)] {
            if point.coupling.kind() != self.kind {
                return Err(domain(format!(
                    "{name} point carries a {} coupling in a {} cycle",
                    point.coupling.kind().label(),
                    self.kind.label()
                )));
            }
            point.normal_modes()?;
        }
        Ok(())
    }
}

/// Normal-mode frequencies of a coupled pair; `a` is the `+` branch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModePair {
    pub a: f64,
    pub b: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OscillatorNormalModes {
    pub modes: ModePair,
    pub mass_a: f64,
    pub mass_b: f64,
}

/// Normal modes of two oscillators of mass `m` and frequency `omega` coupled
/// by `lambda_x x1 x2` and `lambda_p p1 p2` terms.
///
/// ω_{A/B} = sqrt((Ω ± λ_p)(Ω ± λ_x)), M_{A/B} = mΩ/(Ω ± λ_p).
pub fn oscillator_normal_modes(omega: f64, lambda_x: f64, lambda_p: f64, mass: f64) -> Result<OscillatorNormalModes> {
    if !(mass.is_finite() && mass > 0.0) {
        return Err(domain(format!("mass must be positive, got {mass}")));
    }
    let bound = lambda_x.abs().max(lambda_p.abs());
    if !(omega.is_finite() && omega > bound) {
        return Err(domain(format!(
            "unstable mode: frequency {omega} must exceed max(|lambda_x|, |lambda_p|) = {bound}"
        )));
    }
    let a = ((omega + lambda_p) * (omega + lambda_x)).sqrt();
    let b = ((omega - lambda_p) * (omega - lambda_x)).sqrt();
    Ok(OscillatorNormalModes {
        modes: ModePair { a, b },
        mass_a: mass * omega / (omega + lambda_p),
        mass_b: mass * omega / (omega - lambda_p),
    })
}

/// Normal modes of two spins in a field `omega` with exchange `jx`, `jy`.
///
/// With λ₊ = (J_x + J_y)/2 and λ₋ = (J_x - J_y)/2 the two-spin spectrum is
/// {E₀, E₀ + ω_B, E₀ + ω_A, E₀ + ω_A + ω_B} where
/// ω_{A/B} = sqrt(Ω² + λ₋²) ± λ₊.
pub fn spin_normal_modes(omega: f64, jx: f64, jy: f64) -> Result<ModePair> {
    if !(omega.is_finite() && omega > 0.0) {
        return Err(domain(format!("field frequency must be positive, got {omega}")));
    }
    if !(jx.is_finite() && jy.is_finite()) {
        return Err(domain("exchange constants must be finite"));
    }
    let plus = 0.5 * (jx + jy);
    let minus = 0.5 * (jx - jy);
    let radius = omega.hypot(minus);
    if radius <= plus.abs() {
        return Err(domain(format!(
            "unstable mode: non-positive spin mode spacing (sqrt(omega^2 + lambda_-^2) = {radius} <= |lambda_+| = {})",
            plus.abs()
        )));
    }
    Ok(ModePair {
        a: radius + plus,
        b: radius - plus,
    })
}

/// Thermal excitation number of a single mode.
///
/// Oscillator: Bose-Einstein `1/(e^{βΩ} - 1)`. Spin: `1/(e^{βΩ} + 1)`.
pub fn mean_occupation(kind: MediumKind, beta: f64, omega: f64) -> f64 {
    let x = beta * omega;
    match kind {
        MediumKind::Oscillator => 1.0 / x.exp_m1(),
        // Written through e^{-x} so large x underflows to 0 instead of NaN.
        MediumKind::Spin => {
            let e = (-x).exp();
            e / (1.0 + e)
        }
    }
}

/// Frequencies of one normal mode at the hot and cold points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeStroke {
    pub hot: f64,
    pub cold: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CycleModes {
    pub a: ModeStroke,
    pub b: ModeStroke,
}

impl CycleModes {
    pub fn strokes(&self) -> [ModeStroke; 2] {
        [self.a, self.b]
    }
}

/// Normal-mode frequencies at both ends of the cycle, A tracked as A.
pub fn mode_pairs_for_cycle(spec: &CycleSpec) -> Result<CycleModes> {
    spec.validate()?;
    let hot = spec.hot.normal_modes()?;
    let cold = spec.cold.normal_modes()?;
    Ok(CycleModes {
        a: ModeStroke {
            hot: hot.a,
            cold: cold.a,
        },
        b: ModeStroke {
            hot: hot.b,
            cold: cold.b,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn baths() -> BathPair {
        BathPair::new(2.0, 1.0).unwrap()
    }

    #[test]
    fn oscillator_xx_modes() {
        let m = oscillator_normal_modes(4.0, 1.0, 1.0, 1.0).unwrap();
        assert_relative_eq!(m.modes.a, 5.0, epsilon = 1e-15);
        assert_relative_eq!(m.modes.b, 3.0, epsilon = 1e-15);
        assert_relative_eq!(m.mass_a, 0.8, epsilon = 1e-15);
        assert_relative_eq!(m.mass_b, 4.0 / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn oscillator_zero_coupling() {
        let m = oscillator_normal_modes(2.5, 0.0, 0.0, 3.0).unwrap();
        assert_eq!(m.modes, ModePair { a: 2.5, b: 2.5 });
        assert_eq!((m.mass_a, m.mass_b), (3.0, 3.0));
    }

    #[test]
    fn oscillator_xy_modes_are_degenerate() {
        let m = oscillator_normal_modes(4.0, 1.0, -1.0, 1.0).unwrap();
        assert_relative_eq!(m.modes.a, 15f64.sqrt(), epsilon = 1e-14);
        assert_relative_eq!(m.modes.b, 15f64.sqrt(), epsilon = 1e-14);
    }

    #[test]
    fn oscillator_rejects_unstable_coupling() {
        assert!(matches!(
            oscillator_normal_modes(1.0, 1.0, 0.0, 1.0),
            Err(OttoError::Domain(_))
        ));
        assert!(oscillator_normal_modes(1.0, 0.2, -1.5, 1.0).is_err());
        assert!(oscillator_normal_modes(1.0, 0.2, 0.2, 0.0).is_err());
    }

    #[test]
    fn spin_modes() {
        assert_eq!(spin_normal_modes(4.0, 1.0, 1.0).unwrap(), ModePair { a: 5.0, b: 3.0 });
        let xy = spin_normal_modes(4.0, 1.0, -1.0).unwrap();
        assert_relative_eq!(xy.a, 17f64.sqrt(), epsilon = 1e-15);
        assert_relative_eq!(xy.b, 17f64.sqrt(), epsilon = 1e-15);
        assert_eq!(spin_normal_modes(3.0, 0.0, 0.0).unwrap(), ModePair { a: 3.0, b: 3.0 });
    }

    #[test]
    fn spin_rejects_non_positive_spacing() {
        assert!(spin_normal_modes(1.0, 1.0, 1.0).is_err());
        assert!(spin_normal_modes(1.0, -2.0, -2.0).is_err());
        assert!(spin_normal_modes(0.0, 0.0, 0.0).is_err());
        // A large double-flip term keeps the spacing open.
        assert!(spin_normal_modes(1.0, 3.0, -1.0).is_ok());
    }

    #[test]
    fn occupations() {
        assert_relative_eq!(
            mean_occupation(MediumKind::Oscillator, 1.0, 1.0),
            1.0 / (std::f64::consts::E - 1.0),
            epsilon = 1e-15
        );
        assert_relative_eq!(
            mean_occupation(MediumKind::Oscillator, 1.0, 1.0),
            0.581976706869326,
            epsilon = 1e-14
        );
        assert_eq!(mean_occupation(MediumKind::Oscillator, 1.0, 1e4), 0.0);
        assert_eq!(mean_occupation(MediumKind::Spin, 1.0, 1e4), 0.0);
        assert_relative_eq!(mean_occupation(MediumKind::Spin, 1e-12, 1.0), 0.5, epsilon = 1e-12);
        // coth(x/2) = 2n + 1 and tanh(x/2) = 1 - 2n
        for &x in &[0.1, 1.0, 3.7] {
            let n = mean_occupation(MediumKind::Oscillator, 1.0, x);
            assert_relative_eq!(1.0 / (x / 2.0).tanh(), 2.0 * n + 1.0, max_relative = 1e-13);
            let s = mean_occupation(MediumKind::Spin, 1.0, x);
            assert_relative_eq!((x / 2.0).tanh(), 1.0 - 2.0 * s, max_relative = 1e-13);
        }
    }

    #[test]
    fn cycle_mode_pairs() {
        let xx = CycleSpec::with_model(MediumKind::Oscillator, CouplingModel::Xx, 4.0, 3.0, 1.0, baths()).unwrap();
        let m = mode_pairs_for_cycle(&xx).unwrap();
        assert_eq!(m.a, ModeStroke { hot: 5.0, cold: 4.0 });
        assert_eq!(m.b, ModeStroke { hot: 3.0, cold: 2.0 });

        let xy = CycleSpec::with_model(MediumKind::Spin, CouplingModel::Xy, 4.0, 3.0, 1.0, baths()).unwrap();
        let m = mode_pairs_for_cycle(&xy).unwrap();
        assert_relative_eq!(m.a.hot, 17f64.sqrt(), epsilon = 1e-15);
        assert_relative_eq!(m.a.cold, 10f64.sqrt(), epsilon = 1e-15);
        assert_eq!(m.a, m.b);

        let free = CycleSpec::with_model(MediumKind::Spin, CouplingModel::Xx, 4.0, 3.0, 0.0, baths()).unwrap();
        let m = mode_pairs_for_cycle(&free).unwrap();
        assert_eq!(m.a, ModeStroke { hot: 4.0, cold: 3.0 });
        assert_eq!(m.a, m.b);
    }

    #[test]
    fn cycle_spec_rejects_mismatched_coupling() {
        let point = CyclePoint::new(4.0, Coupling::Spin { jx: 0.0, jy: 0.0 });
        assert!(CycleSpec::new(MediumKind::Oscillator, point, point, baths()).is_err());
    }

    #[test]
    fn bath_validation() {
        assert!(BathPair::new(1.0, 2.0).is_err());
        assert!(BathPair::new(1.0, 0.0).is_err());
        assert!(BathPair::new(1.0, 1.0).unwrap().is_degenerate());
        assert_eq!(baths().carnot_efficiency(), 0.5);
        assert_eq!(baths().carnot_cop(), 1.0);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn branch_a_dominates_for_nonnegative_coupling(
                omega in 0.1f64..10.0, fx in 0.0f64..0.99, fp in 0.0f64..0.99, jy in -5.0f64..5.0, shift in 0.0f64..5.0,
            ) {
                let m = oscillator_normal_modes(omega, fx * omega, fp * omega, 1.0).unwrap();
                prop_assert!(m.modes.a >= m.modes.b);
                // λ₊ ≥ 0
                let jx = -jy + shift;
                if let Ok(s) = spin_normal_modes(omega, jx, jy) {
                    prop_assert!(s.a >= s.b);
                }
            }

            #[test]
            fn modes_continuous_at_zero_coupling(omega in 0.1f64..10.0, dx in -1.0f64..1.0, dp in -1.0f64..1.0) {
                let eps = 1e-9;
                let m = oscillator_normal_modes(omega, dx * eps, dp * eps, 1.0).unwrap().modes;
                prop_assert!((m.a - omega).abs() < 1e-8 && (m.b - omega).abs() < 1e-8);
                let s = spin_normal_modes(omega, dx * eps, dp * eps).unwrap();
                prop_assert!((s.a - omega).abs() < 1e-8 && (s.b - omega).abs() < 1e-8);
            }
        }
    }
}

use serde::{Deserialize, Serialize};

use crate::error::{OttoError, Result};

/// Operating regime of a mode or of the whole cycle.
///
/// `Dissipator` covers everything that is neither an engine nor a
/// refrigerator (heaters, accelerators, and the zero-output Carnot point).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Engine,
    Refrigerator,
    Dissipator,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub regime: Regime,
    /// Set when a heat or the work lies within the tolerance of zero.
    pub on_boundary: bool,
}

/// Default classification tolerance for a given set of heats.
pub fn default_tolerance(q_hot: f64, q_cold: f64) -> f64 {
    1e-12 * q_hot.abs().max(q_cold.abs()).max(1.0)
}

/// Sign-based regime of a closed cycle with heats into the system and work
/// done by it.
pub fn classify_regime(q_hot: f64, q_cold: f64, work: f64, eps: f64) -> Result<Classification> {
    let sum = q_hot + q_cold;
    if (work - sum).abs() > eps {
        return Err(OttoError::InconsistentEnergy { work, sum });
    }
    let on_boundary = work.abs() <= eps || q_hot.abs() <= eps || q_cold.abs() <= eps;
    let regime = if work > eps && q_hot > eps {
        Regime::Engine
    } else if q_cold > eps && work < -eps {
        Regime::Refrigerator
    } else {
        Regime::Dissipator
    };
    Ok(Classification {
        regime,
        on_boundary: on_boundary && regime == Regime::Dissipator,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_conventions() {
        let engine = classify_regime(0.5, -0.4, 0.1, 1e-12).unwrap();
        assert_eq!(engine.regime, Regime::Engine);
        assert!(!engine.on_boundary);

        let fridge = classify_regime(-0.5, 0.2, -0.3, 1e-12).unwrap();
        assert_eq!(fridge.regime, Regime::Refrigerator);

        // Work in, heat dumped into both baths.
        let heater = classify_regime(-0.1, -0.2, -0.3, 1e-12).unwrap();
        assert_eq!(heater.regime, Regime::Dissipator);
        assert!(!heater.on_boundary);
    }

    #[test]
    fn carnot_point_is_a_flagged_dissipator() {
        let c = classify_regime(0.0, 0.0, 0.0, 1e-12).unwrap();
        assert_eq!(c.regime, Regime::Dissipator);
        assert!(c.on_boundary);

        let near = classify_regime(3e-13, -2e-13, 1e-13, 1e-12).unwrap();
        assert_eq!(near.regime, Regime::Dissipator);
        assert!(near.on_boundary);
    }

    #[test]
    fn rejects_broken_energy_balance() {
        assert!(matches!(
            classify_regime(0.5, -0.4, 0.3, 1e-12),
            Err(OttoError::InconsistentEnergy { .. })
        ));
    }
}

//! Second-order small-coupling expansions of the global figures of merit.
//!
//! These are cross-checks for [`evaluate_cycle`](super::evaluate_cycle): the
//! exact value and the expansion must differ by O(λ⁴).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{OttoError, Result};
use crate::hyperbolic::{coth, csch, sech};
use crate::medium::BathPair;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExpansionModel {
    XxEngineOscillator,
    XxEngineSpin,
    XxFridgeOscillator,
    XxFridgeSpin,
    XyEngineOscillator,
    XyEngineSpin,
    XyFridgeOscillator,
    XyFridgeSpin,
}

impl ExpansionModel {
    pub const ALL: [ExpansionModel; 8] = [
        ExpansionModel::XxEngineOscillator,
        ExpansionModel::XxEngineSpin,
        ExpansionModel::XxFridgeOscillator,
        ExpansionModel::XxFridgeSpin,
        ExpansionModel::XyEngineOscillator,
        ExpansionModel::XyEngineSpin,
        ExpansionModel::XyFridgeOscillator,
        ExpansionModel::XyFridgeSpin,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            ExpansionModel::XxEngineOscillator => "XX-engine-os",
            ExpansionModel::XxEngineSpin => "XX-engine-sp",
            ExpansionModel::XxFridgeOscillator => "XX-fridge-os",
            ExpansionModel::XxFridgeSpin => "XX-fridge-sp",
            ExpansionModel::XyEngineOscillator => "XY-engine-os",
            ExpansionModel::XyEngineSpin => "XY-engine-sp",
            ExpansionModel::XyFridgeOscillator => "XY-fridge-os",
            ExpansionModel::XyFridgeSpin => "XY-fridge-sp",
        }
    }

    pub fn is_engine(self) -> bool {
        matches!(
            self,
            ExpansionModel::XxEngineOscillator
                | ExpansionModel::XxEngineSpin
                | ExpansionModel::XyEngineOscillator
                | ExpansionModel::XyEngineSpin
        )
    }
}

impl fmt::Display for ExpansionModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for ExpansionModel {
    type Err = OttoError;

    fn from_str(s: &str) -> Result<Self> {
        ExpansionModel::ALL
            .into_iter()
            .find(|m| m.tag().eq_ignore_ascii_case(s))
            .ok_or_else(|| OttoError::UnknownModel(s.to_string()))
    }
}

/// Thermal arguments x = ω/(2T_h), y = ω'/(2T_c).
fn arguments(omega: f64, omega_prime: f64, baths: &BathPair) -> (f64, f64) {
    (omega / (2.0 * baths.t_hot()), omega_prime / (2.0 * baths.t_cold()))
}

/// Zeroth plus λ_J² term of η (engine models) or ζ (refrigerator models).
pub fn perturbative_prediction(
    model: ExpansionModel,
    omega: f64,
    omega_prime: f64,
    baths: &BathPair,
    lambda: f64,
) -> f64 {
    let (th, tc) = (baths.t_hot(), baths.t_cold());
    let (x, y) = arguments(omega, omega_prime, baths);
    let l2 = lambda * lambda;
    let eta0 = 1.0 - omega_prime / omega;
    let zeta0 = omega_prime / (omega - omega_prime);
    // γ and γ' as they appear in the engine and refrigerator expansions
    let gamma = (omega - omega_prime) / (th * tc * omega * omega);
    let gamma_prime = th * tc * (omega - omega_prime);

    match model {
        ExpansionModel::XxEngineOscillator => {
            let num = tc * csch(x).powi(2) - th * csch(y).powi(2);
            eta0 + gamma * num * l2 / (2.0 * (coth(x) - coth(y)))
        }
        ExpansionModel::XxEngineSpin => {
            let num = th * sech(y).powi(2) - tc * sech(x).powi(2);
            eta0 + gamma * num * l2 / (2.0 * (x.tanh() - y.tanh()))
        }
        ExpansionModel::XxFridgeOscillator => {
            let num = th * csch(y).powi(2) - tc * csch(x).powi(2);
            zeta0 + num * l2 / (2.0 * gamma_prime * (coth(x) - coth(y)))
        }
        ExpansionModel::XxFridgeSpin => {
            let num = tc * sech(x).powi(2) - th * sech(y).powi(2);
            zeta0 + num * l2 / (2.0 * gamma_prime * (x.tanh() - y.tanh()))
        }
        ExpansionModel::XyEngineOscillator | ExpansionModel::XyEngineSpin => {
            let term = (omega * omega - omega_prime * omega_prime) * l2 / (2.0 * omega.powi(3) * omega_prime);
            if model == ExpansionModel::XyEngineOscillator {
                eta0 + term
            } else {
                eta0 - term
            }
        }
        ExpansionModel::XyFridgeOscillator | ExpansionModel::XyFridgeSpin => {
            let term = (omega + omega_prime) * l2 / (2.0 * omega * omega_prime * (omega - omega_prime));
            if model == ExpansionModel::XyFridgeOscillator {
                zeta0 - term
            } else {
                zeta0 + term
            }
        }
    }
}

/// Leading-order η_os − η_sp for the XX engine.
pub fn xx_engine_gap(omega: f64, omega_prime: f64, baths: &BathPair, lambda: f64) -> f64 {
    let (th, tc) = (baths.t_hot(), baths.t_cold());
    let gamma = (omega - omega_prime) / (th * tc * omega * omega);
    gamma * (tc * csch(omega / th) + th * csch(omega_prime / tc)) * lambda * lambda
}

/// Leading-order ζ_sp − ζ_os for the XX refrigerator.
pub fn xx_fridge_gap(omega: f64, omega_prime: f64, baths: &BathPair, lambda: f64) -> f64 {
    let (th, tc) = (baths.t_hot(), baths.t_cold());
    let gamma_prime = th * tc * (omega - omega_prime);
    (tc * csch(omega / th) + th * csch(omega_prime / tc)) * lambda * lambda / gamma_prime
}

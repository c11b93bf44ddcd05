//! Seeded verification suite run by `coupled-otto verify`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::medium::{BathPair, Coupling, CouplingModel, CyclePoint, MediumKind, ModePair};

use super::checks::{check_cycle, partition_factorization_check, thermal_energy_check, CycleResiduals, ModeFormula};

/// Residual ceilings.
pub const OSCILLATOR_THRESHOLD: f64 = 1e-10;
pub const SPIN_THRESHOLD: f64 = 1e-12;
pub const LOW_LYING_SPECTRUM_THRESHOLD: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VerifyLevel {
    Quick,
    Full,
}

impl VerifyLevel {
    pub fn draws(self) -> usize {
        match self {
            VerifyLevel::Quick => 100,
            VerifyLevel::Full => 1000,
        }
    }
}

impl std::str::FromStr for VerifyLevel {
    type Err = crate::error::OttoError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(VerifyLevel::Quick),
            "full" => Ok(VerifyLevel::Full),
            other => Err(crate::error::OttoError::Domain(format!(
                "unknown verification level '{other}'"
            ))),
        }
    }
}

/// Deliberate corruption of the closed forms, used to prove the suite bites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutation {
    /// Flip the sign of λ_p (or J_y) before evaluating mode frequencies.
    NegateSecondCoupling,
}

fn mutated_modes(point: &CyclePoint, mutation: Option<Mutation>) -> Result<ModePair> {
    match mutation {
        None => point.normal_modes(),
        Some(Mutation::NegateSecondCoupling) => {
            let coupling = match point.coupling {
                Coupling::Oscillator { lambda_x, lambda_p } => Coupling::Oscillator {
                    lambda_x,
                    lambda_p: -lambda_p,
                },
                Coupling::Spin { jx, jy } => Coupling::Spin { jx, jy: -jy },
            };
            CyclePoint::new(point.omega, coupling).normal_modes()
        }
    }
}

/// One randomly drawn frequency-driven cycle.
#[derive(Debug, Clone, Copy)]
pub struct Draw {
    pub hot: CyclePoint,
    pub cold: CyclePoint,
    pub baths: BathPair,
}

/// Draws a valid cycle for the suite.
///
/// Ω ∈ [0.5, 5], ω′/ω ∈ [0.3, 0.95]. Oscillator couplings are at most 0.3 of
/// the smaller bare frequency, spin couplings at most 0.9 of it. Temperatures
/// are set so the softest mode satisfies βω ∈ [1.5, 4] at the hot point and
/// βω ≥ 1 at the cold point, which keeps the truncated ladders shallow.
pub fn draw_cycle(rng: &mut ChaCha8Rng, kind: MediumKind, model: CouplingModel) -> Draw {
    loop {
        let omega = rng.random_range(0.5..5.0);
        let omega_prime = omega * rng.random_range(0.3..0.95);
        let reach = match kind {
            MediumKind::Oscillator => 0.3,
            MediumKind::Spin => 0.9,
        } * omega_prime;
        let coupling = match model {
            CouplingModel::General => {
                let first = rng.random_range(-reach..reach);
                let second = rng.random_range(-reach..reach);
                match kind {
                    MediumKind::Oscillator => Coupling::Oscillator {
                        lambda_x: first,
                        lambda_p: second,
                    },
                    MediumKind::Spin => Coupling::Spin { jx: first, jy: second },
                }
            }
            _ => Coupling::from_model(kind, model, rng.random_range(-reach..reach)),
        };
        let hot = CyclePoint::new(omega, coupling);
        let cold = CyclePoint::new(omega_prime, coupling);
        let (Ok(mh), Ok(mc)) = (hot.normal_modes(), cold.normal_modes()) else {
            continue;
        };
        let soft_hot = mh.a.min(mh.b);
        let soft_cold = mc.a.min(mc.b);
        let t_hot = soft_hot / rng.random_range(1.5..4.0);
        let t_cold_max = t_hot.min(soft_cold);
        let t_cold = t_cold_max * rng.random_range(0.3..0.95);
        let baths = BathPair::new(t_hot, t_cold).expect("drawn temperatures are ordered");
        return Draw { hot, cold, baths };
    }
}

/// Maximum residual of one check over all draws.
#[derive(Debug, Clone, Serialize)]
pub struct CheckSummary {
    pub medium: MediumKind,
    pub model: Option<CouplingModel>,
    pub check: &'static str,
    pub draws: usize,
    pub max_residual: f64,
    pub threshold: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub level: VerifyLevel,
    pub seed: u64,
    pub checks: Vec<CheckSummary>,
    /// Draws on which a brute-force evaluation itself failed.
    pub failures: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.checks.iter().all(|c| c.passed)
    }
}

const MODELS: [CouplingModel; 3] = [CouplingModel::Xx, CouplingModel::Xy, CouplingModel::General];

fn threshold(kind: MediumKind) -> f64 {
    match kind {
        MediumKind::Oscillator => OSCILLATOR_THRESHOLD,
        MediumKind::Spin => SPIN_THRESHOLD,
    }
}

/// Up to twenty ladder levels with n_A + n_B ≤ n_max/2 are compared; the
/// upper ones feel the truncation more than the thermal sums do.
fn spectrum_threshold(kind: MediumKind) -> f64 {
    match kind {
        MediumKind::Oscillator => LOW_LYING_SPECTRUM_THRESHOLD,
        MediumKind::Spin => SPIN_THRESHOLD,
    }
}

fn stream_id(kind: MediumKind, model: CouplingModel) -> u64 {
    let k = match kind {
        MediumKind::Oscillator => 0,
        MediumKind::Spin => 1,
    };
    let m = match model {
        CouplingModel::Xx => 0,
        CouplingModel::Xy => 1,
        CouplingModel::General => 2,
    };
    3 * k + m
}

/// Runs the oracle suite over `draws` cycles per (medium, model).
///
/// The full level additionally sweeps single-mode energies and partition
/// factorization at fixed truncation.
pub fn run_verification_with(
    level: VerifyLevel,
    seed: u64,
    draws: usize,
    mutation: Option<Mutation>,
) -> VerificationReport {
    let formula: &ModeFormula = &move |p: &CyclePoint| mutated_modes(p, mutation);
    let mut checks = Vec::new();
    let mut failures = Vec::new();

    for kind in [MediumKind::Oscillator, MediumKind::Spin] {
        for model in MODELS {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(stream_id(kind, model));
            let cases: Vec<Draw> = (0..draws).map(|_| draw_cycle(&mut rng, kind, model)).collect();
            let outcomes: Vec<std::result::Result<CycleResiduals, String>> = cases
                .par_iter()
                .map(|d| check_cycle(&d.hot, &d.cold, &d.baths, formula).map_err(|e| format!("{d:?}: {e}")))
                .collect();
            let mut max = [0.0f64; 5];
            for outcome in outcomes {
                match outcome {
                    Ok(r) => {
                        let values = [
                            r.modes,
                            r.hot.spectrum.max(r.cold.spectrum),
                            r.hot.mean_energy.max(r.cold.mean_energy),
                            r.heats,
                            r.hot.partition.max(r.cold.partition),
                        ];
                        for (m, v) in max.iter_mut().zip(values) {
                            *m = if v.is_nan() { f64::INFINITY } else { m.max(v) };
                        }
                    }
                    Err(e) => failures.push(format!("{} {:?}: {e}", kind.label(), model)),
                }
            }
            let names = [
                "mode frequencies",
                "low-lying spectrum",
                "thermal mean energy",
                "heats",
                "partition factorization",
            ];
            for (i, (name, m)) in names.into_iter().zip(max).enumerate() {
                let t = if i == 1 {
                    spectrum_threshold(kind)
                } else {
                    threshold(kind)
                };
                checks.push(CheckSummary {
                    medium: kind,
                    model: Some(model),
                    check: name,
                    draws,
                    max_residual: m,
                    threshold: t,
                    passed: m < t,
                });
            }
        }
    }

    if level == VerifyLevel::Full {
        checks.extend(fixed_truncation_checks(seed, draws));
    }

    VerificationReport {
        level,
        seed,
        checks,
        failures,
    }
}

pub fn run_verification(level: VerifyLevel, seed: u64, mutation: Option<Mutation>) -> VerificationReport {
    run_verification_with(level, seed, level.draws(), mutation)
}

/// Single-mode energies and n_max = 60 factorization at βω ≥ 1.
fn fixed_truncation_checks(seed: u64, draws: usize) -> Vec<CheckSummary> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(100);
    let mut energy = [0.0f64; 2];
    let mut factor = 0.0f64;
    let params: Vec<(f64, f64, f64, f64)> = (0..draws)
        .map(|_| {
            let omega = rng.random_range(0.5..5.0);
            let lx = omega * rng.random_range(-0.3..0.3);
            let lp = omega * rng.random_range(-0.3..0.3);
            (omega, lx, lp, rng.random_range(1.0..4.0))
        })
        .collect();
    for &(omega, _, _, x) in &params {
        let beta = x / omega;
        energy[0] =
            energy[0].max(thermal_energy_check(MediumKind::Oscillator, omega, beta, 60).unwrap_or(f64::INFINITY));
        energy[1] = energy[1].max(thermal_energy_check(MediumKind::Spin, omega, beta, 1).unwrap_or(f64::INFINITY));
    }
    let factor_draws = (draws / 50).max(1);
    let residuals: Vec<f64> = params[..factor_draws]
        .par_iter()
        .map(|&(omega, lx, lp, x)| {
            let coupling = Coupling::Oscillator {
                lambda_x: lx,
                lambda_p: lp,
            };
            let soft = CyclePoint::new(omega, coupling)
                .normal_modes()
                .map(|m| m.b.min(m.a))
                .unwrap_or(omega);
            partition_factorization_check(omega, coupling, x / soft, Some(60)).unwrap_or(f64::INFINITY)
        })
        .collect();
    for r in residuals {
        factor = factor.max(r);
    }
    let summary = |medium, check, n, m: f64, t| CheckSummary {
        medium,
        model: None,
        check,
        draws: n,
        max_residual: m,
        threshold: t,
        passed: m < t,
    };
    vec![
        summary(
            MediumKind::Oscillator,
            "single-mode energy (n_max=60)",
            draws,
            energy[0],
            OSCILLATOR_THRESHOLD,
        ),
        summary(MediumKind::Spin, "single-mode energy", draws, energy[1], 1e-13),
        summary(
            MediumKind::Oscillator,
            "partition factorization (n_max=60)",
            factor_draws,
            factor,
            OSCILLATOR_THRESHOLD,
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn draws_are_valid_and_reproducible() {
        for kind in [MediumKind::Oscillator, MediumKind::Spin] {
            for model in MODELS {
                let mut a = ChaCha8Rng::seed_from_u64(9);
                let mut b = ChaCha8Rng::seed_from_u64(9);
                for _ in 0..50 {
                    let (x, y) = (draw_cycle(&mut a, kind, model), draw_cycle(&mut b, kind, model));
                    assert_eq!(x.hot, y.hot);
                    assert!(x.hot.normal_modes().is_ok() && x.cold.normal_modes().is_ok());
                    assert!(x.baths.t_hot() > x.baths.t_cold());
                }
            }
        }
    }

    #[test]
    fn small_suite_passes_and_mutation_fails() {
        let ok = run_verification_with(VerifyLevel::Quick, 1, 8, None);
        assert!(ok.passed(), "{ok:#?}");
        let bad = run_verification_with(VerifyLevel::Quick, 1, 8, Some(Mutation::NegateSecondCoupling));
        assert!(!bad.passed());
    }
}

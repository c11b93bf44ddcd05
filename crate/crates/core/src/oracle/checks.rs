//! Residuals between closed forms and brute-force diagonalization.
//!
//! Energies are referenced to the ground state on both sides before any
//! comparison: the spin pair's exact spectrum sits a constant above the
//! independent-mode ladder, and ground-referenced partition functions never
//! overflow.

use crate::cycle::mode_heats;
use crate::error::{domain, OttoError, Result};
use crate::hyperbolic::coth;
use crate::medium::{mean_occupation, BathPair, Coupling, CyclePoint, MediumKind, ModePair};

use super::fock::{
    adaptive_oscillator_spectrum, spectrum_mode_frequencies, thermal_sums, truncated_oscillator_spectrum,
};
use super::spin::{brute_force_spin_heats, exact_spin_spectrum, spin_thermal_sums};

const MODE_EXTRACTION_TOLERANCE: f64 = 1e-8;
const LOW_LYING_LEVELS: usize = 20;
const SPECTRUM_TRUNCATION: usize = 24;

fn relative(a: f64, b: f64, scale: f64) -> f64 {
    (a - b).abs() / scale.max(f64::MIN_POSITIVE)
}

/// Single-mode ground-referenced partition function and mean excitation
/// ω·n̄, with n̄ from the library's occupation closed form.
fn closed_mode_sums(kind: MediumKind, beta: f64, omega: f64) -> (f64, f64) {
    let z = match kind {
        MediumKind::Oscillator => 1.0 / -(-beta * omega).exp_m1(),
        MediumKind::Spin => 1.0 + (-beta * omega).exp(),
    };
    (z, omega * mean_occupation(kind, beta, omega))
}

fn closed_pair_sums(kind: MediumKind, beta: f64, modes: &ModePair) -> (f64, f64) {
    let (za, ua) = closed_mode_sums(kind, beta, modes.a);
    let (zb, ub) = closed_mode_sums(kind, beta, modes.b);
    (za * zb, ua + ub)
}

/// Two-level spin mode with levels ∓ω/2, or an oscillator ladder
/// (n + 1/2)ω for n ≤ n_max: brute-force mean energy against
/// -(ω/2)tanh(βω/2) or (ω/2)coth(βω/2).
pub fn thermal_energy_check(kind: MediumKind, omega: f64, beta: f64, n_max: usize) -> Result<f64> {
    if !(omega > 0.0 && beta > 0.0) {
        return Err(domain("mode frequency and inverse temperature must be positive"));
    }
    let levels: Vec<f64> = match kind {
        MediumKind::Oscillator => {
            if n_max < 1 {
                return Err(domain("truncation must keep at least one excitation"));
            }
            (0..=n_max).map(|n| (n as f64 + 0.5) * omega).collect()
        }
        MediumKind::Spin => vec![-0.5 * omega, 0.5 * omega],
    };
    let (z, excitation) = thermal_sums(&levels, beta);
    debug_assert!(z >= 1.0);
    let brute = levels[0] + excitation;
    let closed = match kind {
        MediumKind::Oscillator => 0.5 * omega * coth(0.5 * beta * omega),
        MediumKind::Spin => -0.5 * omega * (0.5 * beta * omega).tanh(),
    };
    Ok(relative(brute, closed, closed.abs()))
}

/// `|Z_exact - Z_A Z_B| / Z_exact` with both sides ground-referenced.
///
/// For oscillators `n_max = None` selects the adaptive truncation.
pub fn partition_factorization_check(omega: f64, coupling: Coupling, beta: f64, n_max: Option<usize>) -> Result<f64> {
    let point = CyclePoint::new(omega, coupling);
    let modes = point.normal_modes()?;
    let kind = coupling.kind();
    let z_exact = match coupling {
        Coupling::Spin { jx, jy } => spin_thermal_sums(omega, jx, jy, beta).0,
        Coupling::Oscillator { lambda_x, lambda_p } => {
            let spectrum = match n_max {
                Some(n) => truncated_oscillator_spectrum(omega, lambda_x, lambda_p, n)?,
                None => adaptive_oscillator_spectrum(omega, lambda_x, lambda_p, beta)?.spectrum,
            };
            thermal_sums(&spectrum, beta).0
        }
    };
    let z_closed = closed_pair_sums(kind, beta, &modes).0;
    Ok(relative(z_exact, z_closed, z_exact))
}

/// Source of closed-form mode frequencies under test.
pub type ModeFormula = dyn Fn(&CyclePoint) -> Result<ModePair> + Sync;

/// Residuals at one cycle point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointResiduals {
    /// Low-lying levels (oscillator) or all pairwise gaps (spin).
    pub spectrum: f64,
    pub mean_energy: f64,
    pub partition: f64,
}

/// Brute-force data for one point, kept for the heat comparison.
#[derive(Debug, Clone)]
pub struct PointOracle {
    pub residuals: PointResiduals,
    /// Mode quanta read off the brute-force spectrum, (larger, smaller).
    pub brute_modes: (f64, f64),
}

pub fn check_point(point: &CyclePoint, beta: f64, formula: &ModeFormula) -> Result<PointOracle> {
    let modes = formula(point)?;
    if !(modes.a > 0.0 && modes.b > 0.0 && modes.a.is_finite() && modes.b.is_finite()) {
        return Err(OttoError::Numerical(format!(
            "closed form returned non-positive modes {modes:?}"
        )));
    }
    let kind = point.coupling.kind();
    let (z_closed, u_closed) = closed_pair_sums(kind, beta, &modes);
    match point.coupling {
        Coupling::Spin { jx, jy } => {
            let exact = exact_spin_spectrum(point.omega, jx, jy);
            let mut ladder = [0.0, modes.a, modes.b, modes.a + modes.b];
            ladder.sort_by(f64::total_cmp);
            let mut spectrum = 0.0f64;
            for i in 0..4 {
                for j in i + 1..4 {
                    let gap_exact = exact[j] - exact[i];
                    let gap_ladder = ladder[j] - ladder[i];
                    spectrum = spectrum.max(relative(gap_exact, gap_ladder, (exact[3] - exact[0]).max(1.0)));
                }
            }
            let (z, u) = spin_thermal_sums(point.omega, jx, jy, beta);
            Ok(PointOracle {
                residuals: PointResiduals {
                    spectrum,
                    mean_energy: relative(u, u_closed, u.max(modes.b * 1e-300)),
                    partition: relative(z, z_closed, z),
                },
                brute_modes: (exact[2] - exact[0], exact[1] - exact[0]),
            })
        }
        Coupling::Oscillator { lambda_x, lambda_p } => {
            let converged = adaptive_oscillator_spectrum(point.omega, lambda_x, lambda_p, beta)?;
            let spectrum = &converged.spectrum;
            let n_max = converged.truncation.n_max;
            // Cold points converge thermally with very short ladders; the
            // level comparison wants some headroom above the levels it reads.
            let deeper;
            let (levels, n_levels) = if n_max >= SPECTRUM_TRUNCATION {
                (spectrum, n_max)
            } else {
                deeper = truncated_oscillator_spectrum(point.omega, lambda_x, lambda_p, SPECTRUM_TRUNCATION)?;
                (&deeper, SPECTRUM_TRUNCATION)
            };
            // Ladder levels with n_A + n_B ≤ n_max/2 are trustworthy.
            let reach = n_levels / 2;
            let mut ladder = Vec::new();
            for na in 0..=reach {
                for nb in 0..=(reach - na) {
                    ladder.push(na as f64 * modes.a + nb as f64 * modes.b + 0.5 * (modes.a + modes.b));
                }
            }
            ladder.sort_by(f64::total_cmp);
            let cutoff = ladder[0] + reach as f64 * modes.a.min(modes.b);
            let compared = ladder
                .iter()
                .take_while(|&&e| e <= cutoff)
                .count()
                .min(LOW_LYING_LEVELS);
            let mut spectrum_res = 0.0f64;
            for (e, l) in levels.iter().zip(&ladder).take(compared) {
                spectrum_res = spectrum_res.max(relative(*e, *l, l.abs().max(1.0)));
            }
            let brute_modes = spectrum_mode_frequencies(spectrum, MODE_EXTRACTION_TOLERANCE)
                .ok_or_else(|| OttoError::Numerical("brute-force spectrum is not a two-mode ladder".into()))?;
            let (z, u) = thermal_sums(spectrum, beta);
            Ok(PointOracle {
                residuals: PointResiduals {
                    spectrum: spectrum_res,
                    mean_energy: relative(u, u_closed, u),
                    partition: relative(z, z_closed, z),
                },
                brute_modes,
            })
        }
    }
}

/// Oscillator heats by explicit enumeration over (n_A, n_B) occupations with
/// Boltzmann populations at each end; the adiabats keep each labelled
/// level's population.
fn enumerated_oscillator_heats(hot: (f64, f64), cold: (f64, f64), baths: &BathPair) -> (f64, f64) {
    let (bh, bc) = (baths.beta_hot(), baths.beta_cold());
    let softest = (bh * hot.0.min(hot.1)).min(bc * cold.0.min(cold.1));
    let n_cut = ((40.0 / softest).ceil() as usize).max(4);
    let mut zh = 0.0;
    let mut zc = 0.0;
    let mut sums = [0.0f64; 4]; // Σ E_h p_h, Σ E_h p_c, Σ E_c p_c, Σ E_c p_h (unnormalized)
    for na in 0..=n_cut {
        for nb in 0..=n_cut {
            let eh = na as f64 * hot.0 + nb as f64 * hot.1;
            let ec = na as f64 * cold.0 + nb as f64 * cold.1;
            let wh = (-bh * eh).exp();
            let wc = (-bc * ec).exp();
            zh += wh;
            zc += wc;
            sums[0] += eh * wh;
            sums[1] += eh * wc;
            sums[2] += ec * wc;
            sums[3] += ec * wh;
        }
    }
    let q_hot = sums[0] / zh - sums[1] / zc;
    let q_cold = sums[2] / zc - sums[3] / zh;
    (q_hot, q_cold)
}

/// Residuals over a whole cycle at fixed coupling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycleResiduals {
    pub hot: PointResiduals,
    pub cold: PointResiduals,
    /// Brute-force mode quanta against the closed forms, both ends.
    pub modes: f64,
    pub heats: f64,
}

/// Compares closed-form frequencies and heats with brute force for a cycle
/// whose coupling is the same at both ends.
pub fn check_cycle(
    hot: &CyclePoint,
    cold: &CyclePoint,
    baths: &BathPair,
    formula: &ModeFormula,
) -> Result<CycleResiduals> {
    let kind = hot.coupling.kind();
    if cold.coupling.kind() != kind {
        return Err(domain("hot and cold points must share a medium"));
    }
    let oracle_hot = check_point(hot, baths.beta_hot(), formula)?;
    let oracle_cold = check_point(cold, baths.beta_cold(), formula)?;
    let closed_hot = formula(hot)?;
    let closed_cold = formula(cold)?;

    let mut mode_res = 0.0f64;
    for (brute, closed) in [
        (oracle_hot.brute_modes, closed_hot),
        (oracle_cold.brute_modes, closed_cold),
    ] {
        let (hi, lo) = (closed.a.max(closed.b), closed.a.min(closed.b));
        mode_res = mode_res.max(relative(brute.0, hi, hi)).max(relative(brute.1, lo, lo));
    }

    let qa = mode_heats(kind, closed_hot.a, closed_cold.a, baths);
    let qb = mode_heats(kind, closed_hot.b, closed_cold.b, baths);
    let (qh_closed, qc_closed) = (qa.q_hot + qb.q_hot, qa.q_cold + qb.q_cold);
    let (qh, qc) = match (hot.coupling, cold.coupling) {
        (Coupling::Spin { jx, jy }, Coupling::Spin { jx: kx, jy: ky }) => {
            brute_force_spin_heats((hot.omega, jx, jy), (cold.omega, kx, ky), baths)
        }
        _ => enumerated_oscillator_heats(oracle_hot.brute_modes, oracle_cold.brute_modes, baths),
    };
    // Natural scale: the energy carried by the excitations at either end.
    let (_, u_hot) = closed_pair_sums(kind, baths.beta_hot(), &closed_hot);
    let (_, u_cold) = closed_pair_sums(kind, baths.beta_cold(), &closed_cold);
    let scale = qh_closed.abs().max(qc_closed.abs()).max(u_hot + u_cold);
    let heats = relative(qh, qh_closed, scale).max(relative(qc, qc_closed, scale));

    Ok(CycleResiduals {
        hot: oracle_hot.residuals,
        cold: oracle_cold.residuals,
        modes: mode_res,
        heats,
    })
}

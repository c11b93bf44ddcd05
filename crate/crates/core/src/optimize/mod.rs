//! Work maximization and the Monte Carlo work-versus-entanglement study.

mod sampling;
mod search;

use serde::{Deserialize, Serialize};

use crate::cycle::{evaluate_cycle, mode_heats};
use crate::error::{OttoError, Result};
use crate::medium::{BathPair, Coupling, CouplingModel, CycleSpec, MediumKind};

pub use sampling::{sample_engine_points, SampleRecord, SampleSet, SAMPLE_BATCH};
pub use search::{maximize, Maximum, MIN_REFINEMENT_STEPS, OBJECTIVE_TOLERANCE, PARAMETER_TOLERANCE, SHRINK};

/// Smallest bare frequency the optimizers will evaluate. Oscillator
/// occupations diverge at zero frequency.
pub const FREQUENCY_FLOOR: f64 = 1e-6;

/// Slack allowed on the coupled-versus-uncoupled work bound.
pub const WORK_BOUND_SLACK: f64 = 1e-9;

/// Box of cycle parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchDomain {
    pub omega: (f64, f64),
    pub omega_prime: (f64, f64),
    pub coupling: (f64, f64),
}

impl SearchDomain {
    pub fn new(omega: (f64, f64), omega_prime: (f64, f64), coupling: (f64, f64)) -> Result<Self> {
        let d = Self {
            omega,
            omega_prime,
            coupling,
        };
        d.validate()?;
        Ok(d)
    }

    /// `[0, side]` on every axis.
    pub fn cube(side: f64) -> Result<Self> {
        Self::new((0.0, side), (0.0, side), (0.0, side))
    }

    pub fn validate(&self) -> Result<()> {
        for (name, (lo, hi)) in [
            ("omega", self.omega),
            ("omega_prime", self.omega_prime),
            ("coupling", self.coupling),
        ] {
            if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
                return Err(OttoError::EmptyDomain(format!("{name} range [{lo}, {hi}] is empty")));
            }
            if name != "coupling" && (lo < 0.0 || hi <= FREQUENCY_FLOOR) {
                return Err(OttoError::EmptyDomain(format!(
                    "{name} range [{lo}, {hi}] must be non-negative and reach above {FREQUENCY_FLOOR}"
                )));
            }
        }
        Ok(())
    }

    fn frequency_bounds(&self) -> [(f64, f64); 2] {
        [self.omega, self.omega_prime].map(|(lo, hi)| (lo.max(FREQUENCY_FLOOR), hi))
    }
}

/// Best single-mode cycle; an uncoupled pair does twice as well.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UncoupledOptimum {
    pub omega: f64,
    pub omega_prime: f64,
    pub work_single: f64,
    pub grid_work: f64,
}

impl UncoupledOptimum {
    /// W_0^max for two uncoupled constituents.
    pub fn pair_work(&self) -> f64 {
        2.0 * self.work_single
    }
}

/// Maximum work of a single uncoupled constituent over `(ω, ω′)`.
pub fn max_uncoupled_work(
    kind: MediumKind,
    baths: &BathPair,
    domain: &SearchDomain,
    resolution: usize,
) -> Result<UncoupledOptimum> {
    domain.validate()?;
    let bounds = domain.frequency_bounds();
    if baths.is_degenerate() {
        // No gradient: W ≤ 0 with equality at ω = ω′ (or the closest pair).
        let w = bounds[0].0.max(bounds[1].0).min(bounds[0].1.min(bounds[1].1));
        return Ok(UncoupledOptimum {
            omega: w,
            omega_prime: w,
            work_single: 0.0,
            grid_work: 0.0,
        });
    }
    let m = maximize(|p| mode_heats(kind, p[0], p[1], baths).work, &bounds, resolution)?;
    Ok(UncoupledOptimum {
        omega: m.point[0],
        omega_prime: m.point[1],
        work_single: m.value,
        grid_work: m.grid_value,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoupledOptimum {
    pub omega: f64,
    pub omega_prime: f64,
    pub coupling: Coupling,
    pub work: f64,
    pub grid_work: f64,
    /// W_0^max on the same frequency domain.
    pub uncoupled_bound: f64,
}

fn coupling_for(kind: MediumKind, model: CouplingModel, p: &[f64]) -> Coupling {
    match model {
        CouplingModel::General => match kind {
            MediumKind::Oscillator => Coupling::Oscillator {
                lambda_x: p[2],
                lambda_p: p[3],
            },
            MediumKind::Spin => Coupling::Spin { jx: p[2], jy: p[3] },
        },
        _ => Coupling::from_model(kind, model, p[2]),
    }
}

/// Total work of a coupled pair at fixed coupling, or NaN where the cycle is
/// not defined.
fn coupled_work(kind: MediumKind, model: CouplingModel, baths: &BathPair, p: &[f64]) -> f64 {
    let coupling = coupling_for(kind, model, p);
    let spec = CycleSpec {
        kind,
        hot: crate::medium::CyclePoint::new(p[0], coupling),
        cold: crate::medium::CyclePoint::new(p[1], coupling),
        baths: *baths,
    };
    evaluate_cycle(&spec).map(|r| r.work).unwrap_or(f64::NAN)
}

/// Maximum total work of the coupled pair over `(ω, ω′, coupling)`.
///
/// The general model searches both coupling constants over the coupling
/// range. Fails with `Numerical` if the optimum beats the uncoupled bound.
pub fn max_coupled_work(
    kind: MediumKind,
    model: CouplingModel,
    baths: &BathPair,
    domain: &SearchDomain,
    resolution: usize,
) -> Result<CoupledOptimum> {
    domain.validate()?;
    let [w, wp] = domain.frequency_bounds();
    let mut bounds = vec![w, wp, domain.coupling];
    if model == CouplingModel::General {
        bounds.push(domain.coupling);
    }
    let m = maximize(|p| coupled_work(kind, model, baths, p), &bounds, resolution)?;
    let bound = max_uncoupled_work(kind, baths, domain, resolution.max(100))?.pair_work();
    if m.value > bound + WORK_BOUND_SLACK {
        return Err(OttoError::Numerical(format!(
            "coupled optimum {} exceeds the uncoupled bound {bound}",
            m.value
        )));
    }
    Ok(CoupledOptimum {
        omega: m.point[0],
        omega_prime: m.point[1],
        coupling: coupling_for(kind, model, &m.point),
        work: m.value,
        grid_work: m.grid_value,
        uncoupled_bound: bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn baths() -> BathPair {
        BathPair::new(2.0, 1.0).unwrap()
    }

    /// Plain dense grid, no refinement.
    fn dense_single(kind: MediumKind, n: usize) -> f64 {
        let mut best = f64::MIN;
        for i in 1..=n {
            for j in 1..=n {
                let (w, wp) = (10.0 * i as f64 / n as f64, 10.0 * j as f64 / n as f64);
                best = best.max(mode_heats(kind, w, wp, &baths()).work);
            }
        }
        best
    }

    #[test]
    fn spin_single_optimum_matches_dense_grid() {
        let d = SearchDomain::cube(10.0).unwrap();
        let opt = max_uncoupled_work(MediumKind::Spin, &baths(), &d, 60).unwrap();
        let grid = dense_single(MediumKind::Spin, 400);
        assert!(opt.work_single >= grid - 1e-12);
        assert!((opt.work_single - 0.074_307_5).abs() < 2e-7, "{opt:?}");
        assert!(
            (opt.omega - 4.066).abs() < 2e-3 && (opt.omega_prime - 2.861).abs() < 2e-3,
            "{opt:?}"
        );
        assert!(opt.work_single >= opt.grid_work);
    }

    #[test]
    fn oscillator_outworks_spin_and_approaches_classical_limit() {
        let d = SearchDomain::cube(10.0).unwrap();
        let os = max_uncoupled_work(MediumKind::Oscillator, &baths(), &d, 60).unwrap();
        let sp = max_uncoupled_work(MediumKind::Spin, &baths(), &d, 60).unwrap();
        assert!(os.work_single >= sp.work_single);
        let classical = (2f64.sqrt() - 1.0).powi(2);
        // The supremum sits at ω → 0 along a diagonal ridge, which coordinate
        // moves only creep along.
        assert!(
            os.work_single <= classical && os.work_single > classical - 1e-4,
            "{os:?}"
        );
        assert!(os.omega < 0.5);
    }

    #[test]
    fn degenerate_baths_give_no_work() {
        let b = BathPair::new(1.5, 1.5).unwrap();
        let d = SearchDomain::cube(10.0).unwrap();
        for kind in [MediumKind::Oscillator, MediumKind::Spin] {
            assert_eq!(max_uncoupled_work(kind, &b, &d, 20).unwrap().work_single, 0.0);
        }
    }

    #[test]
    fn empty_domains_are_rejected() {
        assert!(matches!(
            SearchDomain::new((2.0, 1.0), (0.0, 1.0), (0.0, 1.0)),
            Err(OttoError::EmptyDomain(_))
        ));
        assert!(matches!(
            SearchDomain::new((-1.0, 1.0), (0.0, 1.0), (0.0, 1.0)),
            Err(OttoError::EmptyDomain(_))
        ));
        let d = SearchDomain::cube(10.0).unwrap();
        assert!(matches!(
            max_uncoupled_work(MediumKind::Spin, &baths(), &d, 1),
            Err(OttoError::EmptyDomain(_))
        ));
    }

    #[test]
    fn xx_spin_optimum_sits_at_zero_coupling() {
        let d = SearchDomain::cube(10.0).unwrap();
        let opt = max_coupled_work(MediumKind::Spin, CouplingModel::Xx, &baths(), &d, 30).unwrap();
        let (j, _) = opt.coupling.components();
        assert!(j.abs() < 1e-4, "{opt:?}");
        assert!((opt.work - opt.uncoupled_bound).abs() < 1e-8);
    }

    #[test]
    fn coupled_optima_respect_the_bound() {
        let d = SearchDomain::cube(10.0).unwrap();
        for kind in [MediumKind::Oscillator, MediumKind::Spin] {
            for model in [CouplingModel::Xx, CouplingModel::Xy] {
                let opt = max_coupled_work(kind, model, &baths(), &d, 24).unwrap();
                assert!(opt.work <= opt.uncoupled_bound + WORK_BOUND_SLACK);
            }
        }
        let small = SearchDomain::new((0.0, 10.0), (0.0, 10.0), (-3.0, 3.0)).unwrap();
        let opt = max_coupled_work(MediumKind::Spin, CouplingModel::General, &baths(), &small, 12).unwrap();
        assert!(opt.work <= opt.uncoupled_bound + WORK_BOUND_SLACK);
    }

    #[test]
    fn equal_frequency_modes_reach_the_bound() {
        // XY spin modes are degenerate; at λ = 0 both sit at the single optimum.
        let d = SearchDomain::cube(10.0).unwrap();
        let single = max_uncoupled_work(MediumKind::Spin, &baths(), &d, 60).unwrap();
        let w = coupled_work(
            MediumKind::Spin,
            CouplingModel::Xy,
            &baths(),
            &[single.omega, single.omega_prime, 0.0],
        );
        assert!((w - single.pair_work()).abs() < 1e-15);
    }
}

//! Grid search followed by coordinate-shrink refinement.

use crate::error::{OttoError, Result};

/// Step sizes shrink by this factor whenever no coordinate move improves.
pub const SHRINK: f64 = 0.5;
/// Refinement always runs at least this many iterations.
pub const MIN_REFINEMENT_STEPS: usize = 40;
pub const PARAMETER_TOLERANCE: f64 = 1e-6;
pub const OBJECTIVE_TOLERANCE: f64 = 1e-10;
const MAX_REFINEMENT_STEPS: usize = 100_000;

#[derive(Debug, Clone, PartialEq)]
pub struct Maximum {
    pub point: Vec<f64>,
    pub value: f64,
    /// Best value seen on the grid before refinement.
    pub grid_value: f64,
    pub refinement_steps: usize,
}

fn axis(lo: f64, hi: f64, resolution: usize) -> Vec<f64> {
    if resolution == 1 || lo == hi {
        return vec![0.5 * (lo + hi)];
    }
    let h = (hi - lo) / (resolution - 1) as f64;
    (0..resolution)
        .map(|i| if i + 1 == resolution { hi } else { lo + h * i as f64 })
        .collect()
}

/// Maximizes `objective` over the box `bounds`. Points where the objective
/// is not finite count as infeasible.
pub fn maximize<F>(objective: F, bounds: &[(f64, f64)], resolution: usize) -> Result<Maximum>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    if bounds.is_empty() || resolution < 2 {
        return Err(OttoError::EmptyDomain(
            "need at least one axis and two grid points per axis".into(),
        ));
    }
    for &(lo, hi) in bounds {
        if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
            return Err(OttoError::EmptyDomain(format!("interval [{lo}, {hi}] is empty")));
        }
    }
    let axes: Vec<Vec<f64>> = bounds.iter().map(|&(lo, hi)| axis(lo, hi, resolution)).collect();
    let total: usize = axes.iter().map(Vec::len).product();

    use rayon::prelude::*;
    let best = (0..total)
        .into_par_iter()
        .map(|flat| {
            let mut rest = flat;
            let point: Vec<f64> = axes
                .iter()
                .map(|a| {
                    let v = a[rest % a.len()];
                    rest /= a.len();
                    v
                })
                .collect();
            (objective(&point), flat, point)
        })
        .filter(|(v, _, _)| v.is_finite())
        // Ties go to the lowest flat index so the result is schedule-independent.
        .reduce_with(|a, b| if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a });
    let Some((grid_value, _, start)) = best else {
        return Err(OttoError::EmptyDomain(
            "objective is infeasible on every grid point".into(),
        ));
    };

    let steps: Vec<f64> = axes
        .iter()
        .zip(bounds)
        .map(|(a, &(lo, hi))| {
            if a.len() > 1 {
                (hi - lo) / (a.len() - 1) as f64
            } else {
                0.0
            }
        })
        .collect();
    Ok(refine(&objective, bounds, start, grid_value, steps))
}

fn refine<F>(objective: &F, bounds: &[(f64, f64)], mut x: Vec<f64>, mut value: f64, mut step: Vec<f64>) -> Maximum
where
    F: Fn(&[f64]) -> f64,
{
    let grid_value = value;
    let mut iterations = 0;
    loop {
        let mut gain = 0.0;
        'coords: for i in 0..x.len() {
            for dir in [1.0, -1.0] {
                let mut candidate = x.clone();
                candidate[i] = (x[i] + dir * step[i]).clamp(bounds[i].0, bounds[i].1);
                if candidate[i] == x[i] {
                    continue;
                }
                let v = objective(&candidate);
                if v.is_finite() && v > value {
                    gain = v - value;
                    x = candidate;
                    value = v;
                    break 'coords;
                }
            }
        }
        iterations += 1;
        if gain == 0.0 {
            for s in &mut step {
                *s *= SHRINK;
            }
        }
        let small = step.iter().all(|&s| s < PARAMETER_TOLERANCE);
        if (iterations >= MIN_REFINEMENT_STEPS && small && gain < OBJECTIVE_TOLERANCE)
            || iterations >= MAX_REFINEMENT_STEPS
        {
            break;
        }
    }
    Maximum {
        point: x,
        value,
        grid_value,
        refinement_steps: iterations,
    }
}

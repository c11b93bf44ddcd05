//! Thermal states of the coupled spin pair and their Wootters concurrence.
//!
//! Basis order is fixed as {|↑↑⟩, |↑↓⟩, |↓↑⟩, |↓↓⟩}; the spin-flip operator
//! σ_y ⊗ σ_y and the entrywise complex conjugation are taken in this basis.

use nalgebra::{Matrix4, SymmetricEigen, Vector4};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, OttoError, Result};
use crate::medium::{Coupling, CycleSpec, MediumKind};

pub type Matrix4c = Matrix4<Complex64>;

const STATE_TOLERANCE: f64 = 1e-12;

/// A validated two-qubit density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoSpinDensityMatrix(Matrix4c);

impl TwoSpinDensityMatrix {
    /// Checks Hermiticity, unit trace and positivity, each to 1e-12.
    pub fn new(rho: Matrix4c) -> Result<Self> {
        let asym = (rho - rho.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if asym > STATE_TOLERANCE {
            return Err(domain(format!("density matrix is not Hermitian (deviation {asym:e})")));
        }
        let trace = rho.trace();
        if (trace - Complex64::new(1.0, 0.0)).norm() > STATE_TOLERANCE {
            return Err(domain(format!("density matrix trace is {trace}, expected 1")));
        }
        let min_eig = hermitian_eigen(&rho).eigenvalues.min();
        if min_eig < -STATE_TOLERANCE {
            return Err(domain(format!("density matrix has negative eigenvalue {min_eig:e}")));
        }
        Ok(Self(rho))
    }

    /// |ψ⟩⟨ψ| for a (not necessarily normalized) vector.
    pub fn from_pure(psi: Vector4<Complex64>) -> Result<Self> {
        let norm = psi.norm();
        if norm == 0.0 {
            return Err(domain("zero state vector"));
        }
        let psi = psi / Complex64::new(norm, 0.0);
        Self::new(psi * psi.adjoint())
    }

    pub fn maximally_mixed() -> Self {
        Self(Matrix4c::identity() * Complex64::new(0.25, 0.0))
    }

    pub fn matrix(&self) -> &Matrix4c {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix4c {
        self.0
    }
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn hermitian_eigen(m: &Matrix4c) -> SymmetricEigen<Complex64, nalgebra::U4> {
    // Symmetrize away round-off before handing to the Hermitian solver.
    let h = (m + m.adjoint()) * real(0.5);
    SymmetricEigen::new(h)
}

/// Two-spin Hamiltonian in the ladder convention: diagonal (3Ω, 2Ω, 2Ω, Ω),
/// flip-flop amplitude (J_x + J_y)/2 and double-flip amplitude (J_x - J_y)/2.
pub fn spin_pair_hamiltonian(omega: f64, jx: f64, jy: f64) -> Matrix4c {
    let flip_flop = 0.5 * (jx + jy);
    let double_flip = 0.5 * (jx - jy);
    let mut h = Matrix4c::zeros();
    h[(0, 0)] = real(3.0 * omega);
    h[(1, 1)] = real(2.0 * omega);
    h[(2, 2)] = real(2.0 * omega);
    h[(3, 3)] = real(omega);
    h[(1, 2)] = real(flip_flop);
    h[(2, 1)] = real(flip_flop);
    h[(0, 3)] = real(double_flip);
    h[(3, 0)] = real(double_flip);
    h
}

/// Gibbs state e^{-βH}/Z of a Hermitian 4×4 Hamiltonian.
pub fn thermal_state(hamiltonian: &Matrix4c, beta: f64) -> Result<TwoSpinDensityMatrix> {
    if !(beta.is_finite() && beta > 0.0) {
        return Err(domain(format!("inverse temperature must be positive, got {beta}")));
    }
    let eig = hermitian_eigen(hamiltonian);
    let ground = eig.eigenvalues.min();
    let weights = eig.eigenvalues.map(|e| (-beta * (e - ground)).exp());
    let z: f64 = weights.sum();
    let diag = Matrix4c::from_diagonal(&weights.map(|w| real(w / z)));
    let rho = eig.eigenvectors * diag * eig.eigenvectors.adjoint();
    // Clean Hermitian part; the constructor re-checks all invariants.
    TwoSpinDensityMatrix::new((rho + rho.adjoint()) * real(0.5))
}

fn spin_flip() -> Matrix4c {
    // σ_y ⊗ σ_y in the {↑↑, ↑↓, ↓↑, ↓↓} basis
    let mut y = Matrix4c::zeros();
    y[(0, 3)] = real(-1.0);
    y[(1, 2)] = real(1.0);
    y[(2, 1)] = real(1.0);
    y[(3, 0)] = real(-1.0);
    y
}

fn hermitian_sqrt(m: &Matrix4c) -> Matrix4c {
    let eig = hermitian_eigen(m);
    let roots = eig.eigenvalues.map(|e| real(e.max(0.0).sqrt()));
    eig.eigenvectors * Matrix4c::from_diagonal(&roots) * eig.eigenvectors.adjoint()
}

/// Wootters concurrence `max{0, √λ₁ - √λ₂ - √λ₃ - √λ₄}`.
///
/// The λᵢ are the eigenvalues of R = ρ ρ̃ with ρ̃ = (σ_y⊗σ_y) ρ* (σ_y⊗σ_y),
/// obtained from the Hermitian similar matrix √ρ ρ̃ √ρ.
pub fn concurrence(rho: &TwoSpinDensityMatrix) -> Result<f64> {
    let r = rho.matrix();
    let y = spin_flip();
    let flipped = y * r.map(|z| z.conj()) * y;
    let root = hermitian_sqrt(r);
    let similar = root * flipped * root;
    let mut lambdas: Vec<f64> = hermitian_eigen(&similar).eigenvalues.iter().copied().collect();
    if let Some(&bad) = lambdas.iter().find(|&&l| l < -STATE_TOLERANCE) {
        return Err(OttoError::Numerical(format!(
            "spin-flipped product has eigenvalue {bad:e}"
        )));
    }
    lambdas.sort_by(|a, b| b.total_cmp(a));
    let s: Vec<f64> = lambdas.iter().map(|l| l.max(0.0).sqrt()).collect();
    Ok((s[0] - s[1] - s[2] - s[3]).clamp(0.0, 1.0))
}

/// Concurrence of the thermal states at the end of the hot and cold strokes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConcurrencePair {
    pub hot: f64,
    pub cold: f64,
}

pub fn cycle_concurrences(spec: &CycleSpec) -> Result<ConcurrencePair> {
    if spec.kind != MediumKind::Spin {
        return Err(domain("concurrence is only defined for the spin medium"));
    }
    let state_at = |omega: f64, coupling: Coupling, beta: f64| -> Result<f64> {
        let (jx, jy) = coupling.components();
        concurrence(&thermal_state(&spin_pair_hamiltonian(omega, jx, jy), beta)?)
    };
    Ok(ConcurrencePair {
        hot: state_at(spec.hot.omega, spec.hot.coupling, spec.baths.beta_hot())?,
        cold: state_at(spec.cold.omega, spec.cold.coupling, spec.baths.beta_cold())?,
    })
}

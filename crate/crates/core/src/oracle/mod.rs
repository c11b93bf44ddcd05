//! Brute-force validators for the closed forms in [`crate::medium`] and
//! [`crate::cycle`]: exact diagonalization of the two-spin Hamiltonian and
//! truncated-Fock diagonalization of the coupled oscillators.

mod checks;
mod fock;
mod spin;
mod suite;

pub use checks::{
    check_cycle, check_point, partition_factorization_check, thermal_energy_check, CycleResiduals, ModeFormula,
    PointOracle, PointResiduals,
};
pub use fock::{
    adaptive_oscillator_spectrum, spectrum_mode_frequencies, thermal_sums, truncated_oscillator_matrix,
    truncated_oscillator_spectrum, ConvergedSpectrum, TruncatedFockSpec, MAX_TRUNCATION,
};
pub use spin::{brute_force_spin_heats, exact_spin_spectrum, spin_thermal_sums};
pub use suite::{
    draw_cycle, run_verification, run_verification_with, CheckSummary, Draw, Mutation, VerificationReport, VerifyLevel,
    LOW_LYING_SPECTRUM_THRESHOLD, OSCILLATOR_THRESHOLD, SPIN_THRESHOLD,
};

//! Quantum Otto cycles with coupled working media.
//!
//! Two coupled harmonic oscillators or two coupled spin-1/2 particles are
//! decomposed into independent normal modes; each mode runs its own Otto
//! cycle and the totals are sums over modes.
//!
//! ```
//! use coupled_otto::{evaluate_cycle, BathPair, CouplingModel, CycleSpec, MediumKind};
//!
//! let baths = BathPair::new(2.0, 1.0).unwrap();
//! let spec = CycleSpec::with_model(MediumKind::Spin, CouplingModel::Xx, 4.0, 3.0, 2.0, baths).unwrap();
//! let result = evaluate_cycle(&spec).unwrap();
//! assert!((result.efficiency().unwrap() - 1.0 / 6.0).abs() < 1e-12);
//! ```

pub mod cycle;
pub mod entanglement;
mod error;
pub mod figures;
pub(crate) mod hyperbolic;
pub mod medium;
pub mod optimize;
pub mod oracle;

pub use cycle::{evaluate_cycle, CycleResult, Regime};
pub use error::{OttoError, Result};
pub use medium::{BathPair, Coupling, CouplingModel, CyclePoint, CycleSpec, MediumKind, ModePair};

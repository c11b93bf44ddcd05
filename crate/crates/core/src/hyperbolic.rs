//! Overflow-safe hyperbolic functions for thermal factors.
//!
//! Arguments of the form `βω/2` reach both very small and very large values
//! during sweeps, so `coth` and `csch` are evaluated through `expm1`.

const SERIES_CUTOFF: f64 = 1e-8;

/// `coth(x)` for `x != 0`.
pub fn coth(x: f64) -> f64 {
    let ax = x.abs();
    let value = if ax < SERIES_CUTOFF {
        1.0 / ax + ax / 3.0
    } else {
        // coth(x) = 1 + 2 / (e^{2x} - 1); expm1 overflows to +inf gracefully.
        1.0 + 2.0 / (2.0 * ax).exp_m1()
    };
    value.copysign(x)
}

/// `csch(x)` for `x != 0`.
pub fn csch(x: f64) -> f64 {
    let ax = x.abs();
    let value = if ax < SERIES_CUTOFF {
        1.0 / ax - ax / 6.0
    } else {
        // csch(x) = 2 e^{-x} / (1 - e^{-2x})
        2.0 * (-ax).exp() / -(-2.0 * ax).exp_m1()
    };
    value.copysign(x)
}

pub fn sech(x: f64) -> f64 {
    let ax = x.abs();
    2.0 * (-ax).exp() / (1.0 + (-2.0 * ax).exp())
}

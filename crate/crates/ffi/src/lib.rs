//! C ABI over `coupled_otto`.
//!
//! Every fallible function returns an [`OttoStatus`]; on failure a
//! description is available from [`otto_last_error_message`] on the same
//! thread. Specs and results are opaque heap handles owned by the caller and
//! released with their `_free` function. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use coupled_otto::cycle::{
    critical_coupling, evaluate_cycle, figure_of_merit_bounds, CycleResult, Device, ModeCycleResult, Regime,
};
use coupled_otto::entanglement::cycle_concurrences;
use coupled_otto::{BathPair, Coupling, CyclePoint, CycleSpec, MediumKind, OttoError};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OttoStatus {
    Ok = 0,
    NullPointer = 1,
    DomainError = 2,
    RegimeMismatch = 3,
    DegenerateBaths = 4,
    UnknownModel = 5,
    EmptyDomain = 6,
    NumericalError = 7,
    InconsistentEnergy = 8,
    /// The requested quantity is not defined in the current regime.
    Undefined = 9,
    InvalidArgument = 10,
    Panic = 11,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OttoMedium {
    Oscillator = 0,
    Spin = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OttoRegime {
    Engine = 0,
    Refrigerator = 1,
    Dissipator = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OttoDevice {
    Engine = 0,
    Refrigerator = 1,
}

/// Per-mode cycle quantities. `figure_of_merit` is NaN when the mode is a
/// dissipator.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct OttoModeResult {
    pub omega_hot: f64,
    pub omega_cold: f64,
    pub q_hot: f64,
    pub q_cold: f64,
    pub work: f64,
    pub regime: OttoRegime,
    pub on_boundary: bool,
    pub figure_of_merit: f64,
}

/// Opaque cycle specification.
pub struct OttoCycleSpec(CycleSpec);

/// Opaque evaluated cycle.
pub struct OttoCycleResult(CycleResult);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &OttoError) -> OttoStatus {
    match e {
        OttoError::Domain(_) => OttoStatus::DomainError,
        OttoError::InconsistentEnergy { .. } => OttoStatus::InconsistentEnergy,
        OttoError::RegimeMismatch { .. } => OttoStatus::RegimeMismatch,
        OttoError::DegenerateBaths => OttoStatus::DegenerateBaths,
        OttoError::UnknownModel(_) => OttoStatus::UnknownModel,
        OttoError::EmptyDomain(_) => OttoStatus::EmptyDomain,
        OttoError::Numerical(_) => OttoStatus::NumericalError,
    }
}

fn fail(status: OttoStatus, message: impl Into<String>) -> OttoStatus {
    set_error(message.into());
    status
}

/// Runs `body`, mapping library errors and panics to status codes.
fn guard(body: impl FnOnce() -> Result<(), (OttoStatus, String)>) -> OttoStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => OttoStatus::Ok,
        Ok(Err((status, message))) => fail(status, message),
        Err(_) => fail(OttoStatus::Panic, "internal panic"),
    }
}

fn lib<T>(r: coupled_otto::Result<T>) -> Result<T, (OttoStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(name: &str) -> (OttoStatus, String) {
    (OttoStatus::NullPointer, format!("{name} is null"))
}

fn coupling(medium: OttoMedium, first: f64, second: f64) -> Coupling {
    match medium {
        OttoMedium::Oscillator => Coupling::Oscillator {
            lambda_x: first,
            lambda_p: second,
        },
        OttoMedium::Spin => Coupling::Spin { jx: first, jy: second },
    }
}

fn kind(medium: OttoMedium) -> MediumKind {
    match medium {
        OttoMedium::Oscillator => MediumKind::Oscillator,
        OttoMedium::Spin => MediumKind::Spin,
    }
}

fn regime(r: Regime) -> OttoRegime {
    match r {
        Regime::Engine => OttoRegime::Engine,
        Regime::Refrigerator => OttoRegime::Refrigerator,
        Regime::Dissipator => OttoRegime::Dissipator,
    }
}

/// Message for the most recent failure on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn otto_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// Static name of a status code.
#[no_mangle]
pub extern "C" fn otto_status_name(status: OttoStatus) -> *const c_char {
    let s: &'static CStr = match status {
        OttoStatus::Ok => c"ok",
        OttoStatus::NullPointer => c"null pointer",
        OttoStatus::DomainError => c"domain error",
        OttoStatus::RegimeMismatch => c"regime mismatch",
        OttoStatus::DegenerateBaths => c"degenerate baths",
        OttoStatus::UnknownModel => c"unknown model",
        OttoStatus::EmptyDomain => c"empty domain",
        OttoStatus::NumericalError => c"numerical error",
        OttoStatus::InconsistentEnergy => c"inconsistent energy",
        OttoStatus::Undefined => c"undefined in this regime",
        OttoStatus::InvalidArgument => c"invalid argument",
        OttoStatus::Panic => c"panic",
    };
    s.as_ptr()
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn otto_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Normal-mode frequencies at one point. For oscillators `first`, `second`
/// are λ_x, λ_p; for spins J_x, J_y.
///
/// # Safety
/// `a` and `b` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn otto_normal_modes(
    medium: OttoMedium,
    omega: f64,
    first: f64,
    second: f64,
    a: *mut f64,
    b: *mut f64,
) -> OttoStatus {
    guard(|| {
        if a.is_null() || b.is_null() {
            return Err(null("output"));
        }
        let modes = lib(CyclePoint::new(omega, coupling(medium, first, second)).normal_modes())?;
        // SAFETY: checked non-null; caller guarantees validity.
        unsafe {
            *a = modes.a;
            *b = modes.b;
        }
        Ok(())
    })
}

/// Builds a validated cycle driven between two (ω, coupling) points.
///
/// # Safety
/// `out` must be valid for writes. On success `*out` owns a handle that
/// must be released with [`otto_cycle_spec_free`].
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn otto_cycle_spec_new(
    medium: OttoMedium,
    omega_hot: f64,
    first_hot: f64,
    second_hot: f64,
    omega_cold: f64,
    first_cold: f64,
    second_cold: f64,
    t_hot: f64,
    t_cold: f64,
    out: *mut *mut OttoCycleSpec,
) -> OttoStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let baths = lib(BathPair::new(t_hot, t_cold))?;
        let spec = lib(CycleSpec::new(
            kind(medium),
            CyclePoint::new(omega_hot, coupling(medium, first_hot, second_hot)),
            CyclePoint::new(omega_cold, coupling(medium, first_cold, second_cold)),
            baths,
        ))?;
        // SAFETY: checked non-null.
        unsafe { *out = Box::into_raw(Box::new(OttoCycleSpec(spec))) };
        Ok(())
    })
}

/// Releases a spec handle. NULL is ignored.
///
/// # Safety
/// `spec` must come from [`otto_cycle_spec_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn otto_cycle_spec_free(spec: *mut OttoCycleSpec) {
    if !spec.is_null() {
        // SAFETY: ownership returns from the caller.
        drop(unsafe { Box::from_raw(spec) });
    }
}

/// Evaluates heats, work, regimes and figures of merit.
///
/// # Safety
/// `spec` must be a live handle and `out` valid for writes. On success
/// `*out` must be released with [`otto_cycle_result_free`].
#[no_mangle]
pub unsafe extern "C" fn otto_evaluate_cycle(spec: *const OttoCycleSpec, out: *mut *mut OttoCycleResult) -> OttoStatus {
    guard(|| {
        // SAFETY: caller guarantees a live handle when non-null.
        let spec = unsafe { spec.as_ref() }.ok_or_else(|| null("spec"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let result = lib(evaluate_cycle(&spec.0))?;
        // SAFETY: checked non-null.
        unsafe { *out = Box::into_raw(Box::new(OttoCycleResult(result))) };
        Ok(())
    })
}

/// Releases a result handle. NULL is ignored.
///
/// # Safety
/// `result` must come from [`otto_evaluate_cycle`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn otto_cycle_result_free(result: *mut OttoCycleResult) {
    if !result.is_null() {
        // SAFETY: ownership returns from the caller.
        drop(unsafe { Box::from_raw(result) });
    }
}

/// Total heats into the medium and work done by it.
///
/// # Safety
/// `result` must be a live handle; outputs must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn otto_cycle_result_totals(
    result: *const OttoCycleResult,
    q_hot: *mut f64,
    q_cold: *mut f64,
    work: *mut f64,
) -> OttoStatus {
    guard(|| {
        // SAFETY: caller guarantees a live handle when non-null.
        let r = &unsafe { result.as_ref() }.ok_or_else(|| null("result"))?.0;
        if q_hot.is_null() || q_cold.is_null() || work.is_null() {
            return Err(null("output"));
        }
        // SAFETY: checked non-null.
        unsafe {
            *q_hot = r.q_hot;
            *q_cold = r.q_cold;
            *work = r.work;
        }
        Ok(())
    })
}

/// Regime of the composite system.
///
/// # Safety
/// `result` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn otto_cycle_result_regime(result: *const OttoCycleResult, out: *mut OttoRegime) -> OttoStatus {
    guard(|| {
        // SAFETY: caller guarantees a live handle when non-null.
        let r = &unsafe { result.as_ref() }.ok_or_else(|| null("result"))?.0;
        // SAFETY: caller guarantees validity when non-null.
        let out = unsafe { out.as_mut() }.ok_or_else(|| null("out"))?;
        *out = regime(r.regime);
        Ok(())
    })
}

/// Global efficiency (engine) or COP (refrigerator); `Undefined` otherwise.
///
/// # Safety
/// `result` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn otto_cycle_result_figure_of_merit(
    result: *const OttoCycleResult,
    out: *mut f64,
) -> OttoStatus {
    guard(|| {
        // SAFETY: caller guarantees a live handle when non-null.
        let r = &unsafe { result.as_ref() }.ok_or_else(|| null("result"))?.0;
        // SAFETY: caller guarantees validity when non-null.
        let out = unsafe { out.as_mut() }.ok_or_else(|| null("out"))?;
        *out = r
            .global_figure
            .ok_or((OttoStatus::Undefined, "the pair is a dissipator".to_string()))?;
        Ok(())
    })
}

/// Per-mode bounds on the global figure of merit.
///
/// # Safety
/// `result` must be a live handle; outputs valid for writes.
#[no_mangle]
pub unsafe extern "C" fn otto_cycle_result_bounds(
    result: *const OttoCycleResult,
    low: *mut f64,
    high: *mut f64,
) -> OttoStatus {
    guard(|| {
        // SAFETY: caller guarantees a live handle when non-null.
        let r = &unsafe { result.as_ref() }.ok_or_else(|| null("result"))?.0;
        if low.is_null() || high.is_null() {
            return Err(null("output"));
        }
        let (lo, hi) = lib(figure_of_merit_bounds(r))?;
        // SAFETY: checked non-null.
        unsafe {
            *low = lo;
            *high = hi;
        }
        Ok(())
    })
}

/// Quantities of mode 0 (A, the `+` branch) or 1 (B).
///
/// # Safety
/// `result` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn otto_cycle_result_mode(
    result: *const OttoCycleResult,
    mode: u32,
    out: *mut OttoModeResult,
) -> OttoStatus {
    guard(|| {
        // SAFETY: caller guarantees a live handle when non-null.
        let r = &unsafe { result.as_ref() }.ok_or_else(|| null("result"))?.0;
        // SAFETY: caller guarantees validity when non-null.
        let out = unsafe { out.as_mut() }.ok_or_else(|| null("out"))?;
        let m: &ModeCycleResult = r
            .modes
            .get(mode as usize)
            .ok_or((OttoStatus::InvalidArgument, format!("mode index {mode} is not 0 or 1")))?;
        *out = OttoModeResult {
            omega_hot: m.omega_hot,
            omega_cold: m.omega_cold,
            q_hot: m.q_hot,
            q_cold: m.q_cold,
            work: m.work,
            regime: regime(m.regime),
            on_boundary: m.on_boundary,
            figure_of_merit: m.figure_of_merit.unwrap_or(f64::NAN),
        };
        Ok(())
    })
}

/// Wootters concurrences of the thermal states at the hot and cold points
/// of a spin cycle.
///
/// # Safety
/// `spec` must be a live handle; outputs valid for writes.
#[no_mangle]
pub unsafe extern "C" fn otto_cycle_concurrences(
    spec: *const OttoCycleSpec,
    c_hot: *mut f64,
    c_cold: *mut f64,
) -> OttoStatus {
    guard(|| {
        // SAFETY: caller guarantees a live handle when non-null.
        let spec = &unsafe { spec.as_ref() }.ok_or_else(|| null("spec"))?.0;
        if c_hot.is_null() || c_cold.is_null() {
            return Err(null("output"));
        }
        let c = lib(cycle_concurrences(spec))?;
        // SAFETY: checked non-null.
        unsafe {
            *c_hot = c.hot;
            *c_cold = c.cold;
        }
        Ok(())
    })
}

/// XX coupling at which one mode reaches its Carnot point.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn otto_critical_coupling(
    device: OttoDevice,
    omega: f64,
    omega_prime: f64,
    t_hot: f64,
    t_cold: f64,
    out: *mut f64,
) -> OttoStatus {
    guard(|| {
        // SAFETY: caller guarantees validity when non-null.
        let out = unsafe { out.as_mut() }.ok_or_else(|| null("out"))?;
        let baths = lib(BathPair::new(t_hot, t_cold))?;
        let device = match device {
            OttoDevice::Engine => Device::Engine,
            OttoDevice::Refrigerator => Device::Refrigerator,
        };
        *out = lib(critical_coupling(device, omega, omega_prime, &baths))?;
        Ok(())
    })
}

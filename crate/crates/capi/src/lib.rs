//! C ABI for the fluxlaw library.
//!
//! Conventions:
//! * every fallible call returns a [`FluxlawStatus`]; `FLUXLAW_STATUS_OK` is 0,
//! * handles are opaque pointers created by `*_new` and released by `*_free`,
//! * output arrays must hold one double per conserved component (query the
//!   model with [`fluxlaw_model_components`]),
//! * on failure a thread-local message is set; read it with
//!   [`fluxlaw_last_error_length`] and [`fluxlaw_last_error_message`].
//!
//! The header `include/fluxlaw.h` is generated by cbindgen at build time.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use fluxlaw::cli::build_verify_document;
use fluxlaw::config::RunConfig;
use fluxlaw::error::FluxError;
use fluxlaw::exact::PlanarWeakSolution;
use fluxlaw::geometry::{AxisFace, BoxDomain, Coord, Domain, Face};
use fluxlaw::systems::{StateVector, SystemModel};

/// Result codes of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FluxlawStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// Arguments violate a precondition (dimensions, ordering, ranges).
    InvalidArgument = 2,
    /// A state outside the model's admissible set, or vacuum formation.
    InadmissibleState = 3,
    /// A quadrature could not reach the requested tolerance.
    Accuracy = 4,
    /// An iterative solve failed or the time step degenerated.
    Solver = 5,
    /// A face or checkpoint does not exist on the mesh/trajectory.
    NotFound = 6,
    /// Config parsing or validation failed.
    Config = 7,
    Io = 8,
    /// A panic was caught at the boundary; state may be inconsistent.
    Panic = 9,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: &str) {
    let message = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(message));
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

fn status_of(err: &FluxError) -> FluxlawStatus {
    match err {
        FluxError::InadmissibleState { .. } | FluxError::Vacuum => FluxlawStatus::InadmissibleState,
        FluxError::NonUnitDirection { .. }
        | FluxError::InvalidArgument(_)
        | FluxError::Geometry(_)
        | FluxError::PointOffFace { .. }
        | FluxError::SamplerDomain(_) => FluxlawStatus::InvalidArgument,
        FluxError::Accuracy { .. } => FluxlawStatus::Accuracy,
        FluxError::NoConvergence { .. } | FluxError::DegenerateTimeStep => FluxlawStatus::Solver,
        FluxError::NotAMeshFace { .. } | FluxError::UnknownCheckpoint(_) => FluxlawStatus::NotFound,
        FluxError::Config { .. } => FluxlawStatus::Config,
        FluxError::Io(_) => FluxlawStatus::Io,
    }
}

fn fail(err: &FluxError) -> FluxlawStatus {
    set_error(&err.to_string());
    status_of(err)
}

/// Runs a closure with panics contained at the boundary.
fn guarded<F: FnOnce() -> FluxlawStatus>(body: F) -> FluxlawStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            FluxlawStatus::Panic
        }
    }
}

/// Opaque handle to a conservation-law model.
pub struct FluxlawModel {
    inner: SystemModel,
}

/// Opaque handle to an exact planar-wave solution.
pub struct FluxlawOracle {
    inner: PlanarWeakSolution,
}

unsafe fn slice_arg<'a>(ptr: *const f64, len: usize) -> Option<&'a [f64]> {
    if ptr.is_null() {
        None
    } else {
        Some(unsafe { std::slice::from_raw_parts(ptr, len) })
    }
}

fn write_state(out: *mut f64, value: &StateVector) {
    let slice = unsafe { std::slice::from_raw_parts_mut(out, value.components()) };
    slice.copy_from_slice(value.as_slice());
}

/// Number of bytes (excluding the terminator) of the last error message.
#[no_mangle]
pub extern "C" fn fluxlaw_last_error_length() -> usize {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(0, |s| s.as_bytes().len()))
}

/// Copies the last error message into `buffer` (at most `length` bytes,
/// including the NUL terminator). Returns the number of bytes written.
///
/// # Safety
/// `buffer` must point to at least `length` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn fluxlaw_last_error_message(buffer: *mut c_char, length: usize) -> usize {
    if buffer.is_null() || length == 0 {
        return 0;
    }
    LAST_ERROR.with(|slot| {
        let borrow = slot.borrow();
        let Some(message) = borrow.as_ref() else {
            unsafe { *buffer = 0 };
            return 0;
        };
        let bytes = message.as_bytes();
        let count = bytes.len().min(length - 1);
        unsafe {
            std::ptr::copy_nonoverlapping(bytes.as_ptr(), buffer.cast(), count);
            *buffer.add(count) = 0;
        }
        count
    })
}

/// Creates a Burgers model in `dim` (1 or 2) space dimensions.
///
/// # Safety
/// `out` must be a valid pointer to a handle slot.
#[no_mangle]
pub unsafe extern "C" fn fluxlaw_model_burgers(
    dim: usize,
    out: *mut *mut FluxlawModel,
) -> FluxlawStatus {
    guarded(|| {
        if out.is_null() {
            set_error("out handle is null");
            return FluxlawStatus::NullPointer;
        }
        clear_error();
        match SystemModel::burgers(dim) {
            Ok(inner) => {
                unsafe { *out = Box::into_raw(Box::new(FluxlawModel { inner })) };
                FluxlawStatus::Ok
            }
            Err(err) => fail(&err),
        }
    })
}

/// Creates a linear advection model with the given constant velocity.
///
/// # Safety
/// `velocity` must point to `dim` doubles; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn fluxlaw_model_advection(
    velocity: *const f64,
    dim: usize,
    out: *mut *mut FluxlawModel,
) -> FluxlawStatus {
    guarded(|| {
        let (Some(v), false) = (unsafe { slice_arg(velocity, dim) }, out.is_null()) else {
            set_error("null pointer argument");
            return FluxlawStatus::NullPointer;
        };
        clear_error();
        let build = Coord::from_slice(v).and_then(SystemModel::advection);
        match build {
            Ok(inner) => {
                unsafe { *out = Box::into_raw(Box::new(FluxlawModel { inner })) };
                FluxlawStatus::Ok
            }
            Err(err) => fail(&err),
        }
    })
}

/// Creates a 1D shallow-water model with the given gravitational constant.
///
/// # Safety
/// `out` must be a valid pointer to a handle slot.
#[no_mangle]
pub unsafe extern "C" fn fluxlaw_model_shallow_water(
    gravity: f64,
    out: *mut *mut FluxlawModel,
) -> FluxlawStatus {
    guarded(|| {
        if out.is_null() {
            set_error("out handle is null");
            return FluxlawStatus::NullPointer;
        }
        clear_error();
        match SystemModel::shallow_water(gravity) {
            Ok(inner) => {
                unsafe { *out = Box::into_raw(Box::new(FluxlawModel { inner })) };
                FluxlawStatus::Ok
            }
            Err(err) => fail(&err),
        }
    })
}

/// Releases a model handle (null is a no-op).
///
/// # Safety
/// `model` must be a handle returned by a `fluxlaw_model_*` constructor,
/// not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fluxlaw_model_free(model: *mut FluxlawModel) {
    if !model.is_null() {
        drop(unsafe { Box::from_raw(model) });
    }
}

/// Number of conserved components D, or 0 for a null handle.
///
/// # Safety
/// `model` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn fluxlaw_model_components(model: *const FluxlawModel) -> usize {
    if model.is_null() {
        0
    } else {
        unsafe { &*model }.inner.components()
    }
}

/// Spatial dimension n, or 0 for a null handle.
///
/// # Safety
/// `model` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn fluxlaw_model_dim(model: *const FluxlawModel) -> usize {
    if model.is_null() {
        0
    } else {
        unsafe { &*model }.inner.dim()
    }
}

/// Godunov numerical flux through an interface with unit normal `direction`.
///
/// # Safety
/// `u_left`/`u_right` point to D doubles, `direction` to n doubles, and
/// `out` to D writable doubles.
#[no_mangle]
pub unsafe extern "C" fn fluxlaw_godunov_flux(
    model: *const FluxlawModel,
    u_left: *const f64,
    u_right: *const f64,
    direction: *const f64,
    out: *mut f64,
) -> FluxlawStatus {
    guarded(|| {
        if model.is_null() || out.is_null() {
            set_error("null pointer argument");
            return FluxlawStatus::NullPointer;
        }
        let model = &unsafe { &*model }.inner;
        let d = model.components();
        let n = model.dim();
        let (Some(ul), Some(ur), Some(dir)) = (
            unsafe { slice_arg(u_left, d) },
            unsafe { slice_arg(u_right, d) },
            unsafe { slice_arg(direction, n) },
        ) else {
            set_error("null pointer argument");
            return FluxlawStatus::NullPointer;
        };
        clear_error();
        let result = (|| {
            let ul = StateVector::from_slice(ul)?;
            let ur = StateVector::from_slice(ur)?;
            let dir = Coord::from_slice(dir)?;
            model.godunov_flux(&ul, &ur, &dir)
        })();
        match result {
            Ok(flux) => {
                write_state(out, &flux);
                FluxlawStatus::Ok
            }
            Err(err) => fail(&err),
        }
    })
}

/// Upper bound of the characteristic speeds of d·f at `u`.
///
/// # Safety
/// `u` points to D doubles, `direction` to n doubles, `out` to one double.
#[no_mangle]
pub unsafe extern "C" fn fluxlaw_max_speed(
    model: *const FluxlawModel,
    u: *const f64,
    direction: *const f64,
    out: *mut f64,
) -> FluxlawStatus {
    guarded(|| {
        if model.is_null() || out.is_null() {
            set_error("null pointer argument");
            return FluxlawStatus::NullPointer;
        }
        let model = &unsafe { &*model }.inner;
        let (Some(state), Some(dir)) = (unsafe { slice_arg(u, model.components()) }, unsafe {
            slice_arg(direction, model.dim())
        }) else {
            set_error("null pointer argument");
            return FluxlawStatus::NullPointer;
        };
        clear_error();
        let result = (|| {
            let state = StateVector::from_slice(state)?;
            let dir = Coord::from_slice(dir)?;
            model.max_speed(&state, &dir)
        })();
        match result {
            Ok(speed) => {
                unsafe { *out = speed };
                FluxlawStatus::Ok
            }
            Err(err) => fail(&err),
        }
    })
}

/// Creates a planar-wave solution with the step u_left/u_right across the
/// plane x·normal = offset. The model handle is borrowed, not consumed.
///
/// # Safety
/// `normal` points to n doubles, the states to D doubles each, `out` to a
/// handle slot.
#[no_mangle]
pub unsafe extern "C" fn fluxlaw_oracle_new(
    model: *const FluxlawModel,
    normal: *const f64,
    offset: f64,
    u_left: *const f64,
    u_right: *const f64,
    out: *mut *mut FluxlawOracle,
) -> FluxlawStatus {
    guarded(|| {
        if model.is_null() || out.is_null() {
            set_error("null pointer argument");
            return FluxlawStatus::NullPointer;
        }
        let model = &unsafe { &*model }.inner;
        let (Some(nu), Some(ul), Some(ur)) = (
            unsafe { slice_arg(normal, model.dim()) },
            unsafe { slice_arg(u_left, model.components()) },
            unsafe { slice_arg(u_right, model.components()) },
        ) else {
            set_error("null pointer argument");
            return FluxlawStatus::NullPointer;
        };
        clear_error();
        let result = (|| {
            PlanarWeakSolution::new(
                model.clone(),
                Coord::from_slice(nu)?,
                offset,
                StateVector::from_slice(ul)?,
                StateVector::from_slice(ur)?,
            )
        })();
        match result {
            Ok(inner) => {
                unsafe { *out = Box::into_raw(Box::new(FluxlawOracle { inner })) };
                FluxlawStatus::Ok
            }
            Err(err) => fail(&err),
        }
    })
}

/// Releases an oracle handle (null is a no-op).
///
/// # Safety
/// `oracle` must be a handle returned by [`fluxlaw_oracle_new`], not yet
/// freed.
#[no_mangle]
pub unsafe extern "C" fn fluxlaw_oracle_free(oracle: *mut FluxlawOracle) {
    if !oracle.is_null() {
        drop(unsafe { Box::from_raw(oracle) });
    }
}

/// Exact pointwise value u(x, t); at t = 0 the initial data is returned.
///
/// # Safety
/// `x` points to n doubles and `out` to D writable doubles.
#[no_mangle]
pub unsafe extern "C" fn fluxlaw_oracle_sample(
    oracle: *const FluxlawOracle,
    x: *const f64,
    t: f64,
    out: *mut f64,
) -> FluxlawStatus {
    guarded(|| {
        if oracle.is_null() || out.is_null() {
            set_error("null pointer argument");
            return FluxlawStatus::NullPointer;
        }
        let oracle = &unsafe { &*oracle }.inner;
        let Some(point) = (unsafe { slice_arg(x, oracle.dim()) }) else {
            set_error("null pointer argument");
            return FluxlawStatus::NullPointer;
        };
        clear_error();
        let result = Coord::from_slice(point).and_then(|p| oracle.sample(&p, t));
        match result {
            Ok(value) => {
                write_state(out, &value);
                FluxlawStatus::Ok
            }
            Err(err) => fail(&err),
        }
    })
}

/// Exact mass over an axis-aligned box at time t, componentwise.
///
/// # Safety
/// `lo`/`hi` point to n doubles and `out` to D writable doubles.
#[no_mangle]
pub unsafe extern "C" fn fluxlaw_oracle_mass_box(
    oracle: *const FluxlawOracle,
    lo: *const f64,
    hi: *const f64,
    t: f64,
    out: *mut f64,
) -> FluxlawStatus {
    guarded(|| {
        if oracle.is_null() || out.is_null() {
            set_error("null pointer argument");
            return FluxlawStatus::NullPointer;
        }
        let oracle = &unsafe { &*oracle }.inner;
        let (Some(lo), Some(hi)) = (unsafe { slice_arg(lo, oracle.dim()) }, unsafe {
            slice_arg(hi, oracle.dim())
        }) else {
            set_error("null pointer argument");
            return FluxlawStatus::NullPointer;
        };
        clear_error();
        let result = (|| {
            let domain = Domain::Box(BoxDomain::degenerate(
                Coord::from_slice(lo)?,
                Coord::from_slice(hi)?,
            )?);
            oracle.mass(&domain, t)
        })();
        match result {
            Ok(mass) => {
                write_state(out, &mass);
                FluxlawStatus::Ok
            }
            Err(err) => fail(&err),
        }
    })
}

/// Time-integrated flux through an axis face over [t1, t2], componentwise.
///
/// For 1D solutions pass `cross_lo == cross_hi == 0` (the face is a point
/// with counting measure). `sign` orients the face normal along ±e_axis.
/// `out_error` (optional) receives the absolute error estimate.
///
/// # Safety
/// `out` points to D writable doubles; `out_error` is null or points to one
/// writable double.
#[no_mangle]
pub unsafe extern "C" fn fluxlaw_oracle_face_flux(
    oracle: *const FluxlawOracle,
    axis: usize,
    position: f64,
    cross_lo: f64,
    cross_hi: f64,
    sign: f64,
    t1: f64,
    t2: f64,
    tol: f64,
    out: *mut f64,
    out_error: *mut f64,
) -> FluxlawStatus {
    guarded(|| {
        if oracle.is_null() || out.is_null() {
            set_error("null pointer argument");
            return FluxlawStatus::NullPointer;
        }
        let oracle = &unsafe { &*oracle }.inner;
        clear_error();
        let face = if oracle.dim() == 1 {
            Face::Axis(AxisFace::point_1d(position, sign))
        } else {
            Face::Axis(AxisFace::segment_2d(
                axis,
                position,
                (cross_lo, cross_hi),
                sign,
            ))
        };
        match oracle.face_flux(&face, t1, t2, tol) {
            Ok((value, error)) => {
                write_state(out, &value);
                if !out_error.is_null() {
                    unsafe { *out_error = error };
                }
                FluxlawStatus::Ok
            }
            Err(err) => fail(&err),
        }
    })
}

/// Runs the verification checks described by a JSON run configuration (the
/// same schema the CLI consumes) and returns the report document as a JSON
/// string. Free the returned string with [`fluxlaw_string_free`].
///
/// # Safety
/// `config_json` must be a NUL-terminated string; `out_report` must point to
/// a writable `char*` slot.
#[no_mangle]
pub unsafe extern "C" fn fluxlaw_verify_json(
    config_json: *const c_char,
    seed: u64,
    out_report: *mut *mut c_char,
) -> FluxlawStatus {
    guarded(|| {
        if config_json.is_null() || out_report.is_null() {
            set_error("null pointer argument");
            return FluxlawStatus::NullPointer;
        }
        let Ok(text) = unsafe { CStr::from_ptr(config_json) }.to_str() else {
            set_error("config string is not valid UTF-8");
            return FluxlawStatus::InvalidArgument;
        };
        clear_error();
        let parsed: std::result::Result<RunConfig, _> = serde_json::from_str(text);
        let config = match parsed {
            Ok(config) => config,
            Err(err) => {
                set_error(&format!("config error: {err}"));
                return FluxlawStatus::Config;
            }
        };
        if let Err(err) = config.validate() {
            return fail(&err);
        }
        match build_verify_document(&config, seed) {
            Ok(document) => {
                let json = serde_json::to_string(&document).unwrap_or_else(|_| "{}".to_string());
                let cstring = CString::new(json).unwrap_or_default();
                unsafe { *out_report = cstring.into_raw() };
                FluxlawStatus::Ok
            }
            Err(err) => fail(&err),
        }
    })
}

/// Frees a string returned by this library (null is a no-op).
///
/// # Safety
/// `s` must have been returned by a fluxlaw function and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fluxlaw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

//! C ABI for `loxhelix`.
//!
//! Surfaces and curves are opaque heap handles owned by the caller and released
//! with the matching `*_free` function. Every entry point returns a
//! [`LoxStatus`]; on failure the reason code and message of the last error on
//! the calling thread are available through [`lox_last_error_code`] and
//! [`lox_last_error_message`]. Panics never cross the boundary.
//!
//! The header `include/loxhelix.h` is generated by cbindgen at build time.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use loxhelix::oracle::{angle_profile, integrate_ode};
use loxhelix::{
    elliptic_e, elliptic_f, length_report, make_right_helicoidal, parse_profile, right_helicoidal_solution,
    solve_loxodrome, CausalCharacter, Domain, Family, HelicoidalSurface, LoxError, LoxodromeProblem, ProfileCurve,
    SampledCurve, Sign,
};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LoxStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// Bad enum value, non-UTF-8 string, wrong buffer length or index.
    InvalidArgument = 2,
    /// The inputs violate a precondition of the construction.
    Validation = 3,
    /// A numerical routine failed on valid inputs.
    Numerical = 4,
    /// An internal panic was caught.
    Panic = 5,
}

/// Surface family.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LoxFamily {
    I = 1,
    Ii = 2,
    Iii = 3,
}

/// Which solver produces the curve.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LoxSolver {
    /// Closed forms on right surfaces, quadrature otherwise.
    Auto = 0,
    /// Quadrature of the slope formula.
    General = 1,
    /// Right-helicoidal closed forms only.
    Right = 2,
    /// RK4 on the raw slope field.
    Oracle = 3,
}

/// Causal character of a sampled tangent.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LoxCausal {
    Spacelike = 0,
    Timelike = 1,
    Lightlike = 2,
}

/// Opaque helicoidal surface.
pub struct LoxSurface {
    inner: HelicoidalSurface,
}

/// Opaque solved curve, keeping the problem it came from.
pub struct LoxCurve {
    problem: LoxodromeProblem,
    curve: SampledCurve,
}

/// Surface construction parameters.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct LoxSurfaceParams {
    pub family: LoxFamily,
    /// Ambient dimension n.
    pub dim: usize,
    /// Profile in the mini-language, e.g. `"x1=const(0.6),x3=linear(1)"`.
    pub profile: *const c_char,
    /// +1 or -1; 0 infers it from the profile.
    pub epsilon: i32,
    pub domain_start: f64,
    pub domain_end: f64,
    pub c: f64,
    pub right: bool,
}

/// Loxodrome problem parameters.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct LoxProblemParams {
    /// Constant Lorentzian angle, > 0.
    pub phi0: f64,
    /// +1 selects the larger slope root, -1 the smaller.
    pub branch: i32,
    pub u0: f64,
    pub v0: f64,
    pub u1: f64,
    /// Number of samples, >= 2; 0 uses the default.
    pub samples: usize,
    /// Quadrature tolerance; 0 uses the default.
    pub tolerance: f64,
    pub solver: LoxSolver,
}

/// One curve sample without its ambient point.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct LoxSample {
    pub u: f64,
    pub v: f64,
    pub slope: f64,
    pub radicand: f64,
    pub tangent_inner: f64,
    /// NaN where undefined.
    pub angle: f64,
    /// A [`LoxCausal`] value.
    pub causal: i32,
}

struct LastError {
    code: String,
    message: String,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<LastError>> = const { RefCell::new(None) };
}

struct Failure {
    status: LoxStatus,
    code: String,
    message: String,
}

impl Failure {
    fn new(status: LoxStatus, code: &str, message: impl Into<String>) -> Self {
        Self { status, code: code.into(), message: message.into() }
    }

    fn null(what: &str) -> Self {
        Self::new(LoxStatus::NullPointer, "null-pointer", format!("{what} is null"))
    }

    fn arg(message: impl Into<String>) -> Self {
        Self::new(LoxStatus::InvalidArgument, "invalid-argument", message)
    }
}

impl From<LoxError> for Failure {
    fn from(e: LoxError) -> Self {
        let status = if e.is_validation() { LoxStatus::Validation } else { LoxStatus::Numerical };
        Self::new(status, e.code(), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> LoxStatus {
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|payload| {
        let msg = payload
            .downcast_ref::<&str>()
            .map(|s| s.to_string())
            .or_else(|| payload.downcast_ref::<String>().cloned())
            .unwrap_or_else(|| "unknown panic".into());
        Err(Failure::new(LoxStatus::Panic, "panic", msg))
    });
    match outcome {
        Ok(()) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            LoxStatus::Ok
        }
        Err(f) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = Some(LastError { code: f.code, message: f.message }));
            f.status
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure::null(what))
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_slice(out: *mut f64, len: usize, values: &[f64]) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::null("output buffer"));
    }
    if len != values.len() {
        return Err(Failure::arg(format!("buffer length {len}, expected {}", values.len())));
    }
    std::slice::from_raw_parts_mut(out, len).copy_from_slice(values);
    Ok(())
}

fn sign(v: i32, what: &str) -> Result<Sign, Failure> {
    match v {
        1 => Ok(Sign::Plus),
        -1 => Ok(Sign::Minus),
        _ => Err(Failure::arg(format!("{what} must be +1 or -1, got {v}"))),
    }
}

unsafe fn build_surface(p: &LoxSurfaceParams) -> Result<HelicoidalSurface, Failure> {
    // Enum discriminants arriving from C are not trusted.
    let raw_family = ptr::addr_of!(p.family).cast::<i32>().read();
    let fam = match raw_family {
        1 => Family::I,
        2 => Family::II,
        3 => Family::III,
        v => return Err(Failure::arg(format!("unknown family {v}"))),
    };
    let spec = if p.profile.is_null() {
        ""
    } else {
        CStr::from_ptr(p.profile).to_str().map_err(|_| Failure::arg("profile is not valid UTF-8"))?
    };
    let components = parse_profile(spec, fam, p.dim)?;
    let domain = Domain::new(p.domain_start, p.domain_end)?;
    let build = |eps: Sign| {
        if p.right {
            make_right_helicoidal(fam, p.dim, components.clone(), eps, domain, p.c)
        } else {
            HelicoidalSurface::new(ProfileCurve::new(fam, p.dim, components.clone(), eps, domain)?, p.c)
        }
    };
    let surface = match p.epsilon {
        0 => match build(Sign::Plus) {
            Err(LoxError::NotUnitSpeed { .. }) => build(Sign::Minus)?,
            other => other?,
        },
        e => build(sign(e, "epsilon")?)?,
    };
    Ok(surface)
}

/// Builds a surface and stores a new handle in `*out`.
///
/// # Safety
/// `params` must point to a valid `LoxSurfaceParams` whose `profile` is null
/// or a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lox_surface_new(params: *const LoxSurfaceParams, out: *mut *mut LoxSurface) -> LoxStatus {
    guard(|| {
        let p = deref(params, "params")?;
        if out.is_null() {
            return Err(Failure::null("out"));
        }
        let surface = build_surface(p)?;
        out.write(Box::into_raw(Box::new(LoxSurface { inner: surface })));
        Ok(())
    })
}

/// Releases a surface. Null is ignored.
///
/// # Safety
/// `surface` must come from [`lox_surface_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn lox_surface_free(surface: *mut LoxSurface) {
    if !surface.is_null() {
        drop(Box::from_raw(surface));
    }
}

/// Ambient dimension of the surface, 0 for null.
///
/// # Safety
/// `surface` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lox_surface_dim(surface: *const LoxSurface) -> usize {
    surface.as_ref().map_or(0, |s| s.inner.dim())
}

/// Sign ε of the meridian (+1 spacelike, -1 timelike), 0 for null.
///
/// # Safety
/// `surface` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lox_surface_epsilon(surface: *const LoxSurface) -> i32 {
    surface.as_ref().map_or(0, |s| match s.inner.epsilon() {
        Sign::Plus => 1,
        Sign::Minus => -1,
    })
}

/// First fundamental form coefficients at `u`.
///
/// # Safety
/// `surface` must be a live handle; `e`, `f`, `g` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lox_surface_metric(
    surface: *const LoxSurface,
    u: f64,
    e: *mut f64,
    f: *mut f64,
    g: *mut f64,
) -> LoxStatus {
    guard(|| {
        let s = deref(surface, "surface")?;
        let m = s.inner.metric_coefficients(u)?;
        write(e, m.e, "e")?;
        write(f, m.f, "f")?;
        write(g, m.g, "g")
    })
}

/// Writes the point `x(u, v)` into `out[0..len]`; `len` must equal the dimension.
///
/// # Safety
/// `surface` must be a live handle; `out` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn lox_surface_embed(
    surface: *const LoxSurface,
    u: f64,
    v: f64,
    out: *mut f64,
    len: usize,
) -> LoxStatus {
    guard(|| {
        let s = deref(surface, "surface")?;
        let x = s.inner.embed(u, v)?;
        write_slice(out, len, x.coords())
    })
}

/// Whether the surface is timelike at `u`.
///
/// # Safety
/// `surface` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lox_surface_is_timelike(surface: *const LoxSurface, u: f64, out: *mut bool) -> LoxStatus {
    guard(|| {
        let s = deref(surface, "surface")?;
        let t = s.inner.timelike_condition(u)?;
        write(out, t, "out")
    })
}

fn build_problem(surface: &HelicoidalSurface, p: &LoxProblemParams) -> Result<LoxodromeProblem, Failure> {
    let mut problem = LoxodromeProblem::new(surface.clone(), p.phi0, p.u0, p.v0, p.u1)?
        .with_branch(sign(p.branch, "branch")?);
    if p.samples != 0 {
        problem = problem.with_samples(p.samples)?;
    }
    if p.tolerance != 0.0 {
        problem = problem.with_tolerance(p.tolerance)?;
    }
    Ok(problem)
}

/// Solves the loxodrome problem on `surface` and stores a new curve in `*out`.
///
/// # Safety
/// `surface` must be a live handle, `params` valid and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lox_solve(
    surface: *const LoxSurface,
    params: *const LoxProblemParams,
    out: *mut *mut LoxCurve,
) -> LoxStatus {
    guard(|| {
        let s = deref(surface, "surface")?;
        let p = deref(params, "params")?;
        if out.is_null() {
            return Err(Failure::null("out"));
        }
        let raw_solver = ptr::addr_of!(p.solver).cast::<i32>().read();
        let problem = build_problem(&s.inner, p)?;
        let curve = match raw_solver {
            0 if problem.surface.is_right() => right_helicoidal_solution(&problem)?,
            0 | 1 => solve_loxodrome(&problem)?,
            2 => right_helicoidal_solution(&problem)?,
            3 => integrate_ode(&problem)?,
            v => return Err(Failure::arg(format!("unknown solver {v}"))),
        };
        out.write(Box::into_raw(Box::new(LoxCurve { problem, curve })));
        Ok(())
    })
}

/// Releases a curve. Null is ignored.
///
/// # Safety
/// `curve` must come from [`lox_solve`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn lox_curve_free(curve: *mut LoxCurve) {
    if !curve.is_null() {
        drop(Box::from_raw(curve));
    }
}

/// Number of samples, 0 for null.
///
/// # Safety
/// `curve` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lox_curve_len(curve: *const LoxCurve) -> usize {
    curve.as_ref().map_or(0, |c| c.curve.len())
}

fn sample_at(c: &LoxCurve, index: usize) -> Result<&loxhelix::CurveSample, Failure> {
    c.curve
        .samples
        .get(index)
        .ok_or_else(|| Failure::arg(format!("index {index} out of range for {} samples", c.curve.len())))
}

/// Copies sample `index` into `*out`.
///
/// # Safety
/// `curve` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lox_curve_sample(curve: *const LoxCurve, index: usize, out: *mut LoxSample) -> LoxStatus {
    guard(|| {
        let c = deref(curve, "curve")?;
        let s = sample_at(c, index)?;
        let causal = match s.causal {
            CausalCharacter::Spacelike => LoxCausal::Spacelike,
            CausalCharacter::Timelike => LoxCausal::Timelike,
            CausalCharacter::Lightlike => LoxCausal::Lightlike,
        } as i32;
        let sample = LoxSample {
            u: s.u,
            v: s.v,
            slope: s.slope,
            radicand: s.radicand,
            tangent_inner: s.tangent_inner,
            angle: s.angle,
            causal,
        };
        write(out, sample, "out")
    })
}

/// Writes the ambient point of sample `index` into `out[0..len]`.
///
/// # Safety
/// `curve` must be a live handle; `out` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn lox_curve_point(curve: *const LoxCurve, index: usize, out: *mut f64, len: usize) -> LoxStatus {
    guard(|| {
        let c = deref(curve, "curve")?;
        write_slice(out, len, sample_at(c, index)?.point.coords())
    })
}

/// Length of the curve: the closed form where one exists, quadrature otherwise.
/// `numeric` (optional) receives the quadrature value.
///
/// # Safety
/// `curve` must be a live handle; `out` writable; `numeric` null or writable.
#[no_mangle]
pub unsafe extern "C" fn lox_curve_length(curve: *const LoxCurve, out: *mut f64, numeric: *mut f64) -> LoxStatus {
    guard(|| {
        let c = deref(curve, "curve")?;
        let report = length_report(&c.problem, &c.curve)?;
        if !numeric.is_null() {
            numeric.write(report.numeric);
        }
        write(out, report.value(), "out")
    })
}

/// Re-measures the angle along the curve from the surface partials and writes
/// the largest deviation from φ0.
///
/// # Safety
/// `curve` must be a live handle; `max_deviation` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lox_curve_verify_angle(curve: *const LoxCurve, max_deviation: *mut f64) -> LoxStatus {
    guard(|| {
        let c = deref(curve, "curve")?;
        let profile = angle_profile(&c.problem.surface, &c.curve)?;
        write(max_deviation, profile.max_abs_deviation, "max_deviation")
    })
}

/// Incomplete elliptic integral of the first kind F(φ, k), 0 <= k < 1.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lox_elliptic_f(phi: f64, k: f64, out: *mut f64) -> LoxStatus {
    guard(|| write(out, elliptic_f(phi, k)?, "out"))
}

/// Incomplete elliptic integral of the second kind E(φ, k), 0 <= k <= 1.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lox_elliptic_e(phi: f64, k: f64, out: *mut f64) -> LoxStatus {
    guard(|| write(out, elliptic_e(phi, k)?, "out"))
}

/// Static name of a status value, e.g. `"validation"`; `"unknown"` otherwise.
#[no_mangle]
pub extern "C" fn lox_status_name(status: i32) -> *const c_char {
    let s: &'static CStr = match status {
        0 => c"ok",
        1 => c"null-pointer",
        2 => c"invalid-argument",
        3 => c"validation",
        4 => c"numerical",
        5 => c"panic",
        _ => c"unknown",
    };
    s.as_ptr()
}

fn copy_out(text: &str, buf: *mut c_char, len: usize) -> usize {
    let bytes = text.as_bytes();
    if !buf.is_null() && len > 0 {
        let n = bytes.len().min(len - 1);
        // SAFETY: caller guarantees `buf` holds `len` bytes.
        unsafe {
            ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
            buf.add(n).write(0);
        }
    }
    bytes.len() + 1
}

fn last_error_field(pick: fn(&LastError) -> &str, buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| match &*e.borrow() {
        Some(err) => copy_out(pick(err), buf, len),
        None => 0,
    })
}

/// Copies the reason code of the last failure on this thread (e.g.
/// `"surface-not-timelike"`) into `buf`, truncating and NUL-terminating.
/// Returns the buffer size needed including the NUL, or 0 if the last call
/// succeeded.
///
/// # Safety
/// `buf` must be null or hold `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn lox_last_error_code(buf: *mut c_char, len: usize) -> usize {
    last_error_field(|e| &e.code, buf, len)
}

/// Like [`lox_last_error_code`] for the human-readable message.
///
/// # Safety
/// `buf` must be null or hold `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn lox_last_error_message(buf: *mut c_char, len: usize) -> usize {
    last_error_field(|e| &e.message, buf, len)
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn lox_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

//! C ABI over `peano-core`.
//!
//! Objects cross the boundary as opaque pointers that must be released with
//! their `_free` function. Every fallible call returns a [`PeanoStatus`]; the
//! message of the last failure on the calling thread is available from
//! [`peano_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use peano_core::analysis::{estimate_sdim, holder_bound};
use peano_core::assembler::{assemble, HolderCurve};
use peano_core::covers::sierpinski_table;
use peano_core::modulus::ModulusSpec;
use peano_core::raster::{load_bitmap, Raster};
use peano_core::{Continuum, Error, Shape};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PeanoStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Empty = 3,
    Disconnected = 4,
    Raster = 5,
    InverseUndefined = 6,
    DivergentSeries = 7,
    InsufficientLevels = 8,
    Io = 9,
    Pipeline = 10,
    Panic = 11,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PeanoShape {
    Interval = 0,
    Square = 1,
    Carpet = 2,
    Gasket = 3,
}

/// A discretized continuum.
pub struct PeanoContinuum(Continuum);

/// An assembled curve with its certificate.
pub struct PeanoCurve(HolderCurve);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let text = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

fn status_of(e: &Error) -> PeanoStatus {
    match e {
        Error::Empty => PeanoStatus::Empty,
        Error::Disconnected { .. } => PeanoStatus::Disconnected,
        Error::Raster(_) => PeanoStatus::Raster,
        Error::InverseUndefined(_) => PeanoStatus::InverseUndefined,
        Error::DivergentSeries { .. } => PeanoStatus::DivergentSeries,
        Error::InsufficientLevels(_) => PeanoStatus::InsufficientLevels,
        Error::InvalidParameter(_) => PeanoStatus::InvalidArgument,
        Error::Io(_) => PeanoStatus::Io,
        _ => PeanoStatus::Pipeline,
    }
}

/// Runs `f`, recording errors and panics.
fn guard(f: impl FnOnce() -> Result<(), Error>) -> PeanoStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PeanoStatus::Ok,
        Ok(Err(e)) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("panic inside peano");
            PeanoStatus::Panic
        }
    }
}

fn null() -> Error {
    Error::InvalidParameter("null pointer".into())
}

/// Message of the last failed call on this thread; empty if none. Owned by the library.
#[no_mangle]
pub extern "C" fn peano_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Generates a built-in shape. `param` is the size for interval and square, the depth otherwise.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn peano_continuum_generate(
    shape: PeanoShape,
    param: u32,
    out: *mut *mut PeanoContinuum,
) -> PeanoStatus {
    if out.is_null() {
        set_error("null output pointer");
        return PeanoStatus::NullPointer;
    }
    guard(|| {
        let name = match shape {
            PeanoShape::Interval => "interval",
            PeanoShape::Square => "square",
            PeanoShape::Carpet => "carpet",
            PeanoShape::Gasket => "gasket",
        };
        let x = Continuum::generate(Shape::from_name(name, param as usize)?);
        // SAFETY: `out` was checked non-null and the caller provides writable storage.
        unsafe { *out = Box::into_raw(Box::new(PeanoContinuum(x))) };
        Ok(())
    })
}

/// Loads a PGM or PBM image held in memory.
///
/// # Safety
/// `data` must point to `len` readable bytes.
#[no_mangle]
pub unsafe extern "C" fn peano_continuum_from_pnm(
    data: *const u8,
    len: usize,
    threshold: u8,
    out: *mut *mut PeanoContinuum,
) -> PeanoStatus {
    if data.is_null() || out.is_null() {
        set_error("null pointer argument");
        return PeanoStatus::NullPointer;
    }
    guard(|| {
        // SAFETY: the caller guarantees `len` readable bytes at `data`.
        let bytes = unsafe { std::slice::from_raw_parts(data, len) };
        let x = load_bitmap(&Raster::from_pnm_bytes(bytes, threshold)?)?;
        // SAFETY: checked non-null above.
        unsafe { *out = Box::into_raw(Box::new(PeanoContinuum(x))) };
        Ok(())
    })
}

/// # Safety
/// `x` must be null or a live continuum from this library.
#[no_mangle]
pub unsafe extern "C" fn peano_continuum_cell_count(x: *const PeanoContinuum) -> usize {
    // SAFETY: per the contract above.
    unsafe { x.as_ref() }.map_or(0, |x| x.0.len())
}

/// Normalized coordinates of a cell.
///
/// # Safety
/// `x` must be a live continuum; `px` and `py` must be writable.
#[no_mangle]
pub unsafe extern "C" fn peano_continuum_cell(
    x: *const PeanoContinuum,
    id: usize,
    px: *mut f64,
    py: *mut f64,
) -> PeanoStatus {
    // SAFETY: per the contract above.
    let Some(x) = (unsafe { x.as_ref() }) else {
        set_error("null continuum");
        return PeanoStatus::NullPointer;
    };
    if px.is_null() || py.is_null() {
        set_error("null output pointer");
        return PeanoStatus::NullPointer;
    }
    guard(|| {
        let cell = x.0.cells().get(id).ok_or_else(|| Error::InvalidParameter(format!("no cell {id}")))?;
        // SAFETY: checked non-null above.
        unsafe {
            *px = cell.coords[0];
            *py = cell.coords[1];
        }
        Ok(())
    })
}

/// Finest level whose scale is at least the edge length; 0 for a single cell.
///
/// # Safety
/// `x` must be null or a live continuum.
#[no_mangle]
pub unsafe extern "C" fn peano_continuum_resolution_level(x: *const PeanoContinuum) -> u32 {
    // SAFETY: per the contract above.
    unsafe { x.as_ref() }.and_then(|x| x.0.resolution_level()).unwrap_or(0)
}

/// # Safety
/// `x` must be null or a continuum from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn peano_continuum_free(x: *mut PeanoContinuum) {
    if !x.is_null() {
        // SAFETY: ownership returns from the caller.
        drop(unsafe { Box::from_raw(x) });
    }
}

/// Builds a curve for the modulus `holder_c * t^(1/alpha)` over `levels` levels
/// (0 picks the resolution level). A failed certificate still yields a curve.
///
/// # Safety
/// `x` must be a live continuum; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn peano_assemble(
    x: *const PeanoContinuum,
    alpha: f64,
    holder_c: f64,
    levels: u32,
    out: *mut *mut PeanoCurve,
) -> PeanoStatus {
    // SAFETY: per the contract above.
    let Some(x) = (unsafe { x.as_ref() }) else {
        set_error("null continuum");
        return PeanoStatus::NullPointer;
    };
    if out.is_null() {
        set_error("null output pointer");
        return PeanoStatus::NullPointer;
    }
    guard(|| {
        let omega = ModulusSpec::power(holder_c, alpha)?;
        let levels = if levels == 0 { x.0.resolution_level().unwrap_or(1).max(1) } else { levels };
        let curve = assemble(&x.0, &omega, levels)?;
        // SAFETY: checked non-null above.
        unsafe { *out = Box::into_raw(Box::new(PeanoCurve(curve))) };
        Ok(())
    })
}

/// # Safety
/// `c` must be null or a live curve.
#[no_mangle]
pub unsafe extern "C" fn peano_curve_length(c: *const PeanoCurve) -> f64 {
    // SAFETY: per the contract above.
    unsafe { c.as_ref() }.map_or(f64::NAN, |c| c.0.curve.s)
}

/// # Safety
/// `c` must be null or a live curve.
#[no_mangle]
pub unsafe extern "C" fn peano_curve_breakpoint_count(c: *const PeanoCurve) -> usize {
    // SAFETY: per the contract above.
    unsafe { c.as_ref() }.map_or(0, |c| c.0.curve.breakpoints.len())
}

/// # Safety
/// `c` must be a live curve; `t` and `cell` must be writable.
#[no_mangle]
pub unsafe extern "C" fn peano_curve_breakpoint(
    c: *const PeanoCurve,
    i: usize,
    t: *mut f64,
    cell: *mut usize,
) -> PeanoStatus {
    // SAFETY: per the contract above.
    let Some(c) = (unsafe { c.as_ref() }) else {
        set_error("null curve");
        return PeanoStatus::NullPointer;
    };
    if t.is_null() || cell.is_null() {
        set_error("null output pointer");
        return PeanoStatus::NullPointer;
    }
    guard(|| {
        let b = c.0.curve.breakpoints.get(i).ok_or_else(|| Error::InvalidParameter(format!("no breakpoint {i}")))?;
        // SAFETY: checked non-null above.
        unsafe {
            *t = b.t;
            *cell = b.cell;
        }
        Ok(())
    })
}

/// Fraction of cells the curve visits.
///
/// # Safety
/// `c` must be null or a live curve.
#[no_mangle]
pub unsafe extern "C" fn peano_curve_coverage(c: *const PeanoCurve) -> f64 {
    // SAFETY: per the contract above.
    unsafe { c.as_ref() }.map_or(f64::NAN, |c| c.0.certificate.coverage)
}

/// # Safety
/// `c` must be null or a live curve.
#[no_mangle]
pub unsafe extern "C" fn peano_curve_passed(c: *const PeanoCurve) -> bool {
    // SAFETY: per the contract above.
    unsafe { c.as_ref() }.is_some_and(|c| c.0.certificate.passed)
}

/// Certificate as JSON; release with [`peano_string_free`]. Null on failure.
///
/// # Safety
/// `c` must be null or a live curve.
#[no_mangle]
pub unsafe extern "C" fn peano_curve_certificate_json(c: *const PeanoCurve) -> *mut c_char {
    // SAFETY: per the contract above.
    let Some(c) = (unsafe { c.as_ref() }) else {
        set_error("null curve");
        return ptr::null_mut();
    };
    match serde_json::to_string(&c.0.certificate).ok().and_then(|s| CString::new(s).ok()) {
        Some(s) => s.into_raw(),
        None => {
            set_error("could not serialize certificate");
            ptr::null_mut()
        }
    }
}

/// # Safety
/// `c` must be null or a curve from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn peano_curve_free(c: *mut PeanoCurve) {
    if !c.is_null() {
        // SAFETY: ownership returns from the caller.
        drop(unsafe { Box::from_raw(c) });
    }
}

/// # Safety
/// `s` must be null or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn peano_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: ownership returns from the caller.
        drop(unsafe { CString::from_raw(s) });
    }
}

/// S-dimension estimate from cover counts over levels `0..=levels` (0 picks the resolution level).
///
/// # Safety
/// `x` must be a live continuum; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn peano_estimate_sdim(x: *const PeanoContinuum, levels: u32, out: *mut f64) -> PeanoStatus {
    // SAFETY: per the contract above.
    let Some(x) = (unsafe { x.as_ref() }) else {
        set_error("null continuum");
        return PeanoStatus::NullPointer;
    };
    if out.is_null() {
        set_error("null output pointer");
        return PeanoStatus::NullPointer;
    }
    guard(|| {
        let levels = if levels == 0 { x.0.resolution_level().unwrap_or(2).max(2) } else { levels };
        let fit = estimate_sdim(&sierpinski_table(&x.0, levels))?;
        // SAFETY: checked non-null above.
        unsafe { *out = fit.slope };
        Ok(())
    })
}

/// Closed-form bound on curve length; fails with `DivergentSeries` when `alpha <= 2r`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn peano_holder_bound(c: f64, r: f64, alpha: f64, out: *mut f64) -> PeanoStatus {
    if out.is_null() {
        set_error("null output pointer");
        return PeanoStatus::NullPointer;
    }
    guard(|| {
        let v = holder_bound(c, r, alpha)?;
        // SAFETY: checked non-null above.
        unsafe { *out = v };
        Ok(())
    })
}

/// Reads a C string argument, for use by bindings that pass paths.
fn c_str<'a>(s: *const c_char) -> Result<&'a str, Error> {
    if s.is_null() {
        return Err(null());
    }
    // SAFETY: callers pass NUL-terminated strings.
    unsafe { CStr::from_ptr(s) }.to_str().map_err(|e| Error::InvalidParameter(e.to_string()))
}

/// Writes the curve as CSV (`t,cell_id,x,y`) to `path`.
///
/// # Safety
/// `x` and `c` must be live; `path` must be a NUL-terminated UTF-8 string.
#[no_mangle]
pub unsafe extern "C" fn peano_curve_write_csv(
    x: *const PeanoContinuum,
    c: *const PeanoCurve,
    path: *const c_char,
) -> PeanoStatus {
    // SAFETY: per the contract above.
    let (Some(x), Some(c)) = (unsafe { x.as_ref() }, unsafe { c.as_ref() }) else {
        set_error("null handle");
        return PeanoStatus::NullPointer;
    };
    guard(|| {
        let path = c_str(path)?;
        let file = std::fs::File::create(path)?;
        c.0.curve.write_csv(&x.0, std::io::BufWriter::new(file))
    })
}

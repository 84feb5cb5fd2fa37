//! C ABI over `mixed-frame`.
//!
//! Pairs live behind the opaque [`MfFramePair`] handle. Every function
//! returns an [`MfStatus`]; on failure a message is available from
//! [`mf_last_error`] on the calling thread. Reports are returned as
//! NUL-terminated JSON strings owned by the caller and released with
//! [`mf_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use mixed_frame::frames::PairDocument;
use mixed_frame::optimizer::{self, OptimizerConfig};
use mixed_frame::potential::{self, PotentialValue};
use mixed_frame::structure;
use mixed_frame::{ConstraintSpec, Error, Field, FramePair, Scalar};

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MfStatus {
    Ok = 0,
    /// Null pointer, bad UTF-8 or an out-of-range argument.
    InvalidArgument = 1,
    /// Malformed document or violated precondition.
    InvalidInput = 2,
    /// Eigensolver or internal consistency failure.
    Numerical = 3,
    /// A Rust panic was caught at the boundary.
    Panic = 4,
}

/// Ground field selector.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MfField {
    Real = 0,
    Complex = 1,
}

/// Opaque frame pair, optionally carrying its constraint values.
pub struct MfFramePair {
    pair: FramePair,
    alpha: Option<ConstraintSpec>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let clean = msg.replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(clean).expect("no interior NUL"));
}

fn status_for(e: &Error) -> MfStatus {
    match e {
        Error::NoConvergence { .. }
        | Error::NotSquare { .. }
        | Error::ZeroDirection
        | Error::DegeneratePairing { .. }
        | Error::AmbiguousClusters { .. }
        | Error::Consistency(_) => MfStatus::Numerical,
        _ => MfStatus::InvalidInput,
    }
}

struct Fail(MfStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_for(&e), e.to_string())
    }
}

fn bad_arg(msg: &str) -> Fail {
    Fail(MfStatus::InvalidArgument, msg.to_string())
}

/// Runs `f`, converting errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> MfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            MfStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("panic inside mixed-frame");
            MfStatus::Panic
        }
    }
}

unsafe fn handle<'a>(p: *const MfFramePair) -> Result<&'a MfFramePair, Fail> {
    p.as_ref().ok_or_else(|| bad_arg("null pair handle"))
}

unsafe fn c_str<'a>(s: *const c_char) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(bad_arg("null string"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| bad_arg("string is not UTF-8"))
}

unsafe fn write_out<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(bad_arg("null output pointer"));
    }
    out.write(v);
    Ok(())
}

unsafe fn write_json<S: serde::Serialize>(out: *mut *mut c_char, v: &S) -> Result<(), Fail> {
    let text = serde_json::to_string(v).map_err(|e| Fail(MfStatus::Numerical, e.to_string()))?;
    let c = CString::new(text).map_err(|_| Fail(MfStatus::Numerical, "NUL in report".into()))?;
    write_out(out, c.into_raw())
}

/// Constraint from `len` entries of `alpha_re` / `alpha_im` (either may be
/// null for zeros), or the one stored in the handle when both are null.
unsafe fn constraint(
    h: &MfFramePair,
    alpha_re: *const f64,
    alpha_im: *const f64,
    len: usize,
) -> Result<ConstraintSpec, Fail> {
    if alpha_re.is_null() && alpha_im.is_null() {
        return h
            .alpha
            .clone()
            .ok_or_else(|| Fail(MfStatus::InvalidInput, "no alpha given or stored".into()));
    }
    let part = |p: *const f64, i: usize| if p.is_null() { 0.0 } else { *p.add(i) };
    let values = (0..len)
        .map(|i| Scalar::new(part(alpha_re, i), part(alpha_im, i)))
        .collect();
    Ok(ConstraintSpec::new(values)?)
}

fn field_of(f: MfField) -> Field {
    match f {
        MfField::Real => Field::Real,
        MfField::Complex => Field::Complex,
    }
}

fn into_handle(pair: FramePair, alpha: Option<ConstraintSpec>) -> *mut MfFramePair {
    Box::into_raw(Box::new(MfFramePair { pair, alpha }))
}

/// Message of the last failed call on this thread, empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn mf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses a frame-pair JSON document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mf_pair_from_json(
    json: *const c_char,
    out: *mut *mut MfFramePair,
) -> MfStatus {
    guard(|| {
        let text = c_str(json)?;
        let (pair, alpha) = PairDocument::parse(text)?.to_pair()?;
        write_out(out, into_handle(pair, alpha))
    })
}

/// Random pair with standard normal entries from `seed`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mf_pair_random(
    field: MfField,
    d: usize,
    n: usize,
    seed: u64,
    out: *mut *mut MfFramePair,
) -> MfStatus {
    guard(|| {
        let pair = FramePair::random(field_of(field), d, n, seed)?;
        write_out(out, into_handle(pair, None))
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `pair` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mf_pair_free(pair: *mut MfFramePair) {
    if !pair.is_null() {
        drop(Box::from_raw(pair));
    }
}

/// Dimension `d` and length `N`.
///
/// # Safety
/// `pair` must be a live handle, `d` and `n` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn mf_pair_shape(
    pair: *const MfFramePair,
    d: *mut usize,
    n: *mut usize,
) -> MfStatus {
    guard(|| {
        let h = handle(pair)?;
        write_out(d, h.pair.dim())?;
        write_out(n, h.pair.len())
    })
}

/// Serialises the pair (and its stored alpha) as a JSON document.
///
/// # Safety
/// `pair` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mf_pair_to_json(
    pair: *const MfFramePair,
    out: *mut *mut c_char,
) -> MfStatus {
    guard(|| {
        let h = handle(pair)?;
        let text = PairDocument::from_pair(&h.pair, h.alpha.as_ref()).to_json();
        let c = CString::new(text).map_err(|_| bad_arg("NUL in document"))?;
        write_out(out, c.into_raw())
    })
}

unsafe fn write_value(v: PotentialValue, re: *mut f64, im: *mut f64) -> Result<(), Fail> {
    write_out(re, v.value.re)?;
    write_out(im, v.value.im)
}

/// `FP(F, G)` from the cross Gram matrix.
///
/// # Safety
/// `pair` must be a live handle, `re` and `im` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn mf_fp_direct(
    pair: *const MfFramePair,
    re: *mut f64,
    im: *mut f64,
) -> MfStatus {
    guard(|| write_value(potential::fp_direct(&handle(pair)?.pair), re, im))
}

/// `Tr((TU*)²)`, cross-checked against the eigenvalues at `tol`.
///
/// # Safety
/// `pair` must be a live handle, `re` and `im` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn mf_fp_trace(
    pair: *const MfFramePair,
    tol: f64,
    re: *mut f64,
    im: *mut f64,
) -> MfStatus {
    guard(|| write_value(potential::fp_trace(&handle(pair)?.pair, tol)?, re, im))
}

/// Spectral bound report as JSON. Pass null `alpha_re` and `alpha_im` to use
/// the alpha stored with the pair.
///
/// # Safety
/// `pair` must be a live handle; non-null alpha arrays must hold `len`
/// values; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mf_bound_report(
    pair: *const MfFramePair,
    alpha_re: *const f64,
    alpha_im: *const f64,
    len: usize,
    class_tol: f64,
    out: *mut *mut c_char,
) -> MfStatus {
    guard(|| {
        let h = handle(pair)?;
        let c = constraint(h, alpha_re, alpha_im, len)?;
        write_json(out, &potential::bound_report(&h.pair, &c, class_tol)?)
    })
}

/// Critical-pair report as JSON.
///
/// # Safety
/// As for [`mf_bound_report`].
#[no_mangle]
pub unsafe extern "C" fn mf_critical_report(
    pair: *const MfFramePair,
    alpha_re: *const f64,
    alpha_im: *const f64,
    len: usize,
    tol: f64,
    out: *mut *mut c_char,
) -> MfStatus {
    guard(|| {
        let h = handle(pair)?;
        let c = constraint(h, alpha_re, alpha_im, len)?;
        write_json(out, &structure::critical_report(&h.pair, &c, tol)?)
    })
}

/// Decomposition report as JSON; a pair that is not critical yields
/// `InvalidInput`.
///
/// # Safety
/// As for [`mf_bound_report`].
#[no_mangle]
pub unsafe extern "C" fn mf_decompose(
    pair: *const MfFramePair,
    alpha_re: *const f64,
    alpha_im: *const f64,
    len: usize,
    tol: f64,
    cluster_tol: f64,
    out: *mut *mut c_char,
) -> MfStatus {
    guard(|| {
        let h = handle(pair)?;
        let c = constraint(h, alpha_re, alpha_im, len)?;
        write_json(out, &structure::decompose(&h.pair, &c, tol, cluster_tol)?)
    })
}

/// Dual-pair conditions report as JSON.
///
/// # Safety
/// As for [`mf_bound_report`].
#[no_mangle]
pub unsafe extern "C" fn mf_corollary(
    pair: *const MfFramePair,
    alpha_re: *const f64,
    alpha_im: *const f64,
    len: usize,
    tol: f64,
    out: *mut *mut c_char,
) -> MfStatus {
    guard(|| {
        let h = handle(pair)?;
        let c = constraint(h, alpha_re, alpha_im, len)?;
        write_json(out, &structure::corollary_check(&h.pair, &c, tol)?)
    })
}

/// Searches for a critical pair with `<f_m, g_m> = α_m`. `config_json` is an
/// optimizer configuration object (null for defaults). The search result is
/// written to `out_json`; when `out_pair` is non-null it receives a new
/// handle holding the final pair and alpha.
///
/// # Safety
/// `alpha_re` must hold `len` values, `alpha_im` must be null or hold `len`
/// values, `config_json` must be null or NUL-terminated, `out_json` must be
/// valid.
#[no_mangle]
pub unsafe extern "C" fn mf_search(
    alpha_re: *const f64,
    alpha_im: *const f64,
    len: usize,
    field: MfField,
    d: usize,
    config_json: *const c_char,
    out_json: *mut *mut c_char,
    out_pair: *mut *mut MfFramePair,
) -> MfStatus {
    guard(|| {
        if alpha_re.is_null() {
            return Err(bad_arg("null alpha"));
        }
        let cfg: OptimizerConfig = if config_json.is_null() {
            OptimizerConfig::default()
        } else {
            serde_json::from_str(c_str(config_json)?)
                .map_err(|e| Fail(MfStatus::InvalidInput, e.to_string()))?
        };
        let values = (0..len)
            .map(|i| {
                Scalar::new(
                    *alpha_re.add(i),
                    if alpha_im.is_null() {
                        0.0
                    } else {
                        *alpha_im.add(i)
                    },
                )
            })
            .collect();
        let c = ConstraintSpec::new(values)?;
        let result = optimizer::search(&c, field_of(field), d, &cfg)?;
        write_json(out_json, &result)?;
        if !out_pair.is_null() {
            out_pair.write(into_handle(result.pair().clone(), Some(c)));
        }
        Ok(())
    })
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

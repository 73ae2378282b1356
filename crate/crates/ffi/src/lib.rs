//! C ABI for `hecke-baxter`.
//!
//! Every function returns an [`HbStatus`]; outputs go through caller-owned
//! pointers that are written only on success. Matrices are `n×n`, row-major,
//! `1 ≤ n ≤ 8`. Signatures are arrays of `n` bytes, each 0 or 1. On failure
//! a description is kept per thread and read with [`hb_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use hecke_baxter::hecke::{convolve_vector, eigenvalue_check};
use hecke_baxter::mc::{MCEstimate, RandomStream};
use hecke_baxter::{
    cartan_decompose, delta_w, epsilon_spherical, iwasawa_decompose, l_factor, minor_matrix_element, Error,
    RealSquareMatrix, Signature, SpectralParams, MAX_DIM,
};
use num_complex::Complex64;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    SingularMatrix = 3,
    Pole = 4,
    NoConvergence = 5,
    NumericalFailure = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct HbComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for HbComplex {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

/// A Monte-Carlo estimate.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct HbEstimate {
    pub mean: HbComplex,
    /// Standard error of `mean`; not `stderr`, which C reserves as a macro.
    pub std_error: f64,
    pub samples: u64,
    /// Draws given weight zero as numerically singular.
    pub rejected: u64,
}

impl From<MCEstimate> for HbEstimate {
    fn from(e: MCEstimate) -> Self {
        Self {
            mean: e.mean.into(),
            std_error: e.stderr,
            samples: e.samples,
            rejected: e.rejected,
        }
    }
}

/// Opaque spectral parameters `(s, c, γ, ε)`.
pub struct HbParams {
    inner: SpectralParams,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_last_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

enum Failure {
    Null(&'static str),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn status_of(e: &Error) -> HbStatus {
    match e {
        Error::SingularMatrix { .. } => HbStatus::SingularMatrix,
        Error::Pole { .. } => HbStatus::Pole,
        Error::NoConvergence { .. } => HbStatus::NoConvergence,
        Error::NonFiniteIntegrand { .. } | Error::TooManyRejected { .. } => HbStatus::NumericalFailure,
        _ => HbStatus::InvalidArgument,
    }
}

/// Runs `f`, converting errors and panics into a status.
fn guard<F: FnOnce() -> Result<(), Failure>>(f: F) -> HbStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error(String::new());
            HbStatus::Ok
        }
        Ok(Err(Failure::Null(name))) => {
            set_last_error(format!("null pointer: {name}"));
            HbStatus::NullPointer
        }
        Ok(Err(Failure::Lib(e))) => {
            set_last_error(e.to_string());
            status_of(&e)
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("panic: {msg}"));
            HbStatus::Panic
        }
    }
}

fn check_dim(n: usize) -> Result<(), Failure> {
    if n == 0 {
        return Err(Error::EmptyMatrix.into());
    }
    if n > MAX_DIM {
        return Err(Error::DimensionTooLarge { n, max: MAX_DIM }.into());
    }
    Ok(())
}

unsafe fn slice_in<'a, T>(p: *const T, len: usize, name: &'static str) -> Result<&'a [T], Failure> {
    if p.is_null() {
        return Err(Failure::Null(name));
    }
    Ok(slice::from_raw_parts(p, len))
}

unsafe fn slice_out<'a, T>(p: *mut T, len: usize, name: &'static str) -> Result<&'a mut [T], Failure> {
    if p.is_null() {
        return Err(Failure::Null(name));
    }
    Ok(slice::from_raw_parts_mut(p, len))
}

unsafe fn out_ref<'a, T>(p: *mut T, name: &'static str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or(Failure::Null(name))
}

unsafe fn params_ref<'a>(p: *const HbParams) -> Result<&'a SpectralParams, Failure> {
    p.as_ref().map(|h| &h.inner).ok_or(Failure::Null("params"))
}

unsafe fn matrix_in(n: usize, g: *const f64) -> Result<RealSquareMatrix, Failure> {
    check_dim(n)?;
    Ok(RealSquareMatrix::from_row_major(n, slice_in(g, n * n, "g")?)?)
}

unsafe fn signature_in(n: usize, bits: *const u8, name: &'static str) -> Result<Signature, Failure> {
    check_dim(n)?;
    Ok(Signature::new(slice_in(bits, n, name)?)?)
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn hb_version() -> *const c_char {
    static VERSION: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(v) => v,
        Err(_) => panic!("version contains NUL"),
    };
    VERSION.as_ptr()
}

/// Copies the calling thread's last error message into `buf` (truncated,
/// always NUL-terminated when `len > 0`). Returns the full message length
/// excluding the terminator; empty after a successful call.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn hb_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let k = msg.len().min(len - 1);
            ptr::copy_nonoverlapping(msg.as_ptr(), buf.cast::<u8>(), k);
            *buf.add(k) = 0;
        }
        msg.len()
    })
}

/// Creates parameters for matrices of size `n`. `gamma` holds `n` reals and
/// `epsilon` `n` bits. Release with [`hb_params_free`].
///
/// # Safety
/// `gamma` and `epsilon` must point to `n` elements; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hb_params_new(
    n: usize,
    s_re: f64,
    s_im: f64,
    c: f64,
    gamma: *const f64,
    epsilon: *const u8,
    out: *mut *mut HbParams,
) -> HbStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        check_dim(n)?;
        let gamma = slice_in(gamma, n, "gamma")?.to_vec();
        let eps = signature_in(n, epsilon, "epsilon")?;
        let inner = SpectralParams::new(Complex64::new(s_re, s_im), c, gamma, eps)?;
        *out = Box::into_raw(Box::new(HbParams { inner }));
        Ok(())
    })
}

/// Releases parameters from [`hb_params_new`]; null is ignored.
///
/// # Safety
/// `params` must be null or come from [`hb_params_new`], and not be used
/// afterwards.
#[no_mangle]
pub unsafe extern "C" fn hb_params_free(params: *mut HbParams) {
    if !params.is_null() {
        drop(Box::from_raw(params));
    }
}

/// Matrix size of the parameters, or 0 for null.
///
/// # Safety
/// `params` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hb_params_dim(params: *const HbParams) -> usize {
    params.as_ref().map_or(0, |h| h.inner.dim())
}

/// L(s, c | ε, γ).
///
/// # Safety
/// `params` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hb_l_factor(params: *const HbParams, out: *mut HbComplex) -> HbStatus {
    guard(|| {
        let p = params_ref(params)?;
        let out = out_ref(out, "out")?;
        *out = l_factor(p)?.value.into();
        Ok(())
    })
}

/// Δ_W(g).
///
/// # Safety
/// `g` must point to `n·n` doubles and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn hb_delta_w(n: usize, g: *const f64, out: *mut f64) -> HbStatus {
    guard(|| {
        let g = matrix_in(n, g)?;
        let out = out_ref(out, "out")?;
        *out = delta_w(&g);
        Ok(())
    })
}

/// The minor with rows `eps_row` and columns `eps_col` of `g`; zero when
/// the two weights differ.
///
/// # Safety
/// `eps_row` and `eps_col` must point to `n` bytes, `g` to `n·n` doubles,
/// and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn hb_minor(
    n: usize,
    eps_row: *const u8,
    eps_col: *const u8,
    g: *const f64,
    out: *mut f64,
) -> HbStatus {
    guard(|| {
        let row = signature_in(n, eps_row, "eps_row")?;
        let col = signature_in(n, eps_col, "eps_col")?;
        let g = matrix_in(n, g)?;
        let out = out_ref(out, "out")?;
        *out = minor_matrix_element(&row, &col, &g)?;
        Ok(())
    })
}

/// g = k·diag(a)·n_factor with `n_factor` lower unipotent.
///
/// # Safety
/// `g`, `k_out` and `n_out` must hold `n·n` doubles and `a_out` `n`.
#[no_mangle]
pub unsafe extern "C" fn hb_iwasawa(
    n: usize,
    g: *const f64,
    k_out: *mut f64,
    a_out: *mut f64,
    n_out: *mut f64,
) -> HbStatus {
    guard(|| {
        let g = matrix_in(n, g)?;
        let k_out = slice_out(k_out, n * n, "k_out")?;
        let a_out = slice_out(a_out, n, "a_out")?;
        let n_out = slice_out(n_out, n * n, "n_out")?;
        let f = iwasawa_decompose(&g)?;
        k_out.copy_from_slice(f.k.as_slice());
        a_out.copy_from_slice(&f.a);
        n_out.copy_from_slice(f.n_factor.as_slice());
        Ok(())
    })
}

/// g = k1·diag(a)·k2 with `a` non-increasing.
///
/// # Safety
/// `g`, `k1_out` and `k2_out` must hold `n·n` doubles and `a_out` `n`.
#[no_mangle]
pub unsafe extern "C" fn hb_cartan(
    n: usize,
    g: *const f64,
    k1_out: *mut f64,
    a_out: *mut f64,
    k2_out: *mut f64,
) -> HbStatus {
    guard(|| {
        let g = matrix_in(n, g)?;
        let k1_out = slice_out(k1_out, n * n, "k1_out")?;
        let a_out = slice_out(a_out, n, "a_out")?;
        let k2_out = slice_out(k2_out, n * n, "k2_out")?;
        let f = cartan_decompose(&g)?;
        k1_out.copy_from_slice(f.k1.as_slice());
        a_out.copy_from_slice(&f.a);
        k2_out.copy_from_slice(f.k2.as_slice());
        Ok(())
    })
}

/// φ_ε(g) for the parameters' signature.
///
/// # Safety
/// `params` must be a live handle, `g` hold `n·n` doubles for its size `n`,
/// and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn hb_epsilon_spherical(params: *const HbParams, g: *const f64, out: *mut HbComplex) -> HbStatus {
    guard(|| {
        let p = params_ref(params)?;
        let g = matrix_in(p.dim(), g)?;
        let out = out_ref(out, "out")?;
        *out = epsilon_spherical(p, &g)?.into();
        Ok(())
    })
}

/// Monte-Carlo estimate of (Q̂_s ∗ φ_ε)(g) with `samples` draws from stream
/// `(seed, stream_id)`.
///
/// # Safety
/// `params` must be a live handle, `g` hold `n·n` doubles for its size `n`,
/// and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn hb_convolve_vector(
    params: *const HbParams,
    g: *const f64,
    samples: u64,
    seed: u64,
    stream_id: u32,
    out: *mut HbEstimate,
) -> HbStatus {
    guard(|| {
        let p = params_ref(params)?;
        let g = matrix_in(p.dim(), g)?;
        let out = out_ref(out, "out")?;
        *out = convolve_vector(p, &g, samples, &RandomStream::new(seed, stream_id))?.into();
        Ok(())
    })
}

/// Monte-Carlo estimate of the eigenvalue (Q̂_s ∗ φ_ε)(g) / φ_ε(g), which
/// should equal L(s, c | ε, γ).
///
/// # Safety
/// As for [`hb_convolve_vector`].
#[no_mangle]
pub unsafe extern "C" fn hb_eigenvalue_estimate(
    params: *const HbParams,
    g: *const f64,
    samples: u64,
    seed: u64,
    out: *mut HbEstimate,
) -> HbStatus {
    guard(|| {
        let p = params_ref(params)?;
        let g = matrix_in(p.dim(), g)?;
        let out = out_ref(out, "out")?;
        let report = eigenvalue_check(p, std::slice::from_ref(&g), samples, &RandomStream::new(seed, 0), 4.0)?;
        *out = report.points[0].ratio.into();
        Ok(())
    })
}

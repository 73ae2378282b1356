use std::ffi::{c_char, CStr};
use std::ptr;

use hecke_baxter_ffi::*;

fn params(n: usize, s: (f64, f64), gamma: &[f64], eps: &[u8]) -> *mut HbParams {
    let mut p = ptr::null_mut();
    let st = unsafe { hb_params_new(n, s.0, s.1, 1.0, gamma.as_ptr(), eps.as_ptr(), &mut p) };
    assert_eq!(st, HbStatus::Ok);
    assert!(!p.is_null());
    p
}

fn last_error() -> String {
    let mut buf = [0 as c_char; 256];
    unsafe {
        hb_last_error_message(buf.as_mut_ptr(), buf.len());
        CStr::from_ptr(buf.as_ptr()).to_string_lossy().into_owned()
    }
}

#[test]
fn version_is_crate_version() {
    let v = unsafe { CStr::from_ptr(hb_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn l_factor_matches_frozen_value() {
    let p = params(2, (3.0, 0.5), &[0.3, -0.7], &[0, 1]);
    let mut out = HbComplex::default();
    assert_eq!(unsafe { hb_l_factor(p, &mut out) }, HbStatus::Ok);
    assert!((out.re - 0.758_580_995_354_981).abs() < 1e-12);
    assert!((out.im - 0.211_138_373_415_829_1).abs() < 1e-12);
    assert_eq!(unsafe { hb_params_dim(p) }, 2);
    unsafe { hb_params_free(p) };
}

#[test]
fn invalid_parameters_report_field() {
    let mut p = ptr::null_mut();
    let st = unsafe { hb_params_new(1, 1.0, 0.0, -1.0, [0.0].as_ptr(), [0u8].as_ptr(), &mut p) };
    assert_eq!(st, HbStatus::InvalidArgument);
    assert!(p.is_null());
    assert!(last_error().contains('c'), "{}", last_error());
    let st = unsafe { hb_params_new(2, 1.0, 0.0, 1.0, [0.0, 0.0].as_ptr(), [0u8, 2].as_ptr(), &mut p) };
    assert_eq!(st, HbStatus::InvalidArgument);
    let st = unsafe { hb_params_new(9, 1.0, 0.0, 1.0, [0.0; 9].as_ptr(), [0u8; 9].as_ptr(), &mut p) };
    assert_eq!(st, HbStatus::InvalidArgument);
}

#[test]
fn null_pointers_are_rejected() {
    let mut out = 0.0;
    assert_eq!(unsafe { hb_delta_w(2, ptr::null(), &mut out) }, HbStatus::NullPointer);
    assert_eq!(last_error(), "null pointer: g");
    let mut z = HbComplex::default();
    assert_eq!(unsafe { hb_l_factor(ptr::null(), &mut z) }, HbStatus::NullPointer);
    let p = params(1, (2.0, 0.0), &[0.0], &[0]);
    assert_eq!(unsafe { hb_l_factor(p, ptr::null_mut()) }, HbStatus::NullPointer);
    unsafe { hb_params_free(p) };
    unsafe { hb_params_free(ptr::null_mut()) };
}

#[test]
fn error_message_clears_on_success() {
    let mut out = 0.0;
    unsafe { hb_delta_w(0, [1.0].as_ptr(), &mut out) };
    assert!(!last_error().is_empty());
    assert_eq!(unsafe { hb_delta_w(1, [2.0].as_ptr(), &mut out) }, HbStatus::Ok);
    assert_eq!(out, 3.0);
    assert!(last_error().is_empty());
    assert_eq!(unsafe { hb_last_error_message(ptr::null_mut(), 0) }, 0);
}

#[test]
fn truncated_error_message() {
    let mut out = 0.0;
    unsafe { hb_delta_w(2, ptr::null(), &mut out) };
    let mut buf = [0x7f as c_char; 5];
    let full = unsafe { hb_last_error_message(buf.as_mut_ptr(), buf.len()) };
    assert_eq!(full, "null pointer: g".len());
    let s = unsafe { CStr::from_ptr(buf.as_ptr()) };
    assert_eq!(s.to_str().unwrap(), "null");
}

#[test]
fn delta_w_and_minor() {
    // Δ_W = 1 + 2·tr + det for n = 2.
    let g = [1.0, 2.0, 3.0, 4.0];
    let mut dw = 0.0;
    assert_eq!(unsafe { hb_delta_w(2, g.as_ptr(), &mut dw) }, HbStatus::Ok);
    assert!((dw - (1.0 + 10.0 - 2.0)).abs() < 1e-14);
    let mut m = 0.0;
    assert_eq!(unsafe { hb_minor(2, [1, 0].as_ptr(), [0, 1].as_ptr(), g.as_ptr(), &mut m) }, HbStatus::Ok);
    assert_eq!(m, 2.0);
    assert_eq!(unsafe { hb_minor(2, [1, 1].as_ptr(), [0, 1].as_ptr(), g.as_ptr(), &mut m) }, HbStatus::Ok);
    assert_eq!(m, 0.0);
}

#[test]
fn decompositions_reconstruct() {
    let g = [2.0, -1.0, 0.5, 0.3, 1.5, -0.7, 1.1, 0.2, 3.0];
    let (mut k, mut a, mut nf) = ([0.0; 9], [0.0; 3], [0.0; 9]);
    assert_eq!(unsafe { hb_iwasawa(3, g.as_ptr(), k.as_mut_ptr(), a.as_mut_ptr(), nf.as_mut_ptr()) }, HbStatus::Ok);
    for i in 0..3 {
        for j in 0..3 {
            let v: f64 = (0..3).map(|m| k[i * 3 + m] * a[m] * nf[m * 3 + j]).sum();
            assert!((v - g[i * 3 + j]).abs() < 1e-12);
        }
        assert!(a[i] > 0.0);
        assert_eq!(nf[i * 3 + i], 1.0);
    }
    let (mut k1, mut s, mut k2) = ([0.0; 9], [0.0; 3], [0.0; 9]);
    assert_eq!(unsafe { hb_cartan(3, g.as_ptr(), k1.as_mut_ptr(), s.as_mut_ptr(), k2.as_mut_ptr()) }, HbStatus::Ok);
    for i in 0..3 {
        for j in 0..3 {
            let v: f64 = (0..3).map(|m| k1[i * 3 + m] * s[m] * k2[m * 3 + j]).sum();
            assert!((v - g[i * 3 + j]).abs() < 1e-12);
        }
    }
    assert!(s[0] >= s[1] && s[1] >= s[2]);
    let singular = [1.0, 2.0, 2.0, 4.0];
    assert_eq!(
        unsafe { hb_iwasawa(2, singular.as_ptr(), k.as_mut_ptr(), a.as_mut_ptr(), nf.as_mut_ptr()) },
        HbStatus::SingularMatrix
    );
}

#[test]
fn epsilon_spherical_at_identity() {
    let p = params(2, (3.0, 0.0), &[0.3, -0.7], &[1, 0]);
    let mut z = HbComplex::default();
    assert_eq!(unsafe { hb_epsilon_spherical(p, [1.0, 0.0, 0.0, 1.0].as_ptr(), &mut z) }, HbStatus::Ok);
    assert!((z.re - 1.0).abs() < 1e-14 && z.im.abs() < 1e-14);
    unsafe { hb_params_free(p) };
}

#[test]
fn eigenvalue_estimate_is_reproducible() {
    let p = params(1, (2.5, 0.0), &[0.3], &[1]);
    let g = [1.0];
    let mut a = HbEstimate::default();
    let mut b = HbEstimate::default();
    assert_eq!(unsafe { hb_eigenvalue_estimate(p, g.as_ptr(), 200_000, 42, &mut a) }, HbStatus::Ok);
    assert_eq!(unsafe { hb_eigenvalue_estimate(p, g.as_ptr(), 200_000, 42, &mut b) }, HbStatus::Ok);
    assert_eq!(a, b);
    assert_eq!(a.samples, 200_000);
    let mut l = HbComplex::default();
    unsafe { hb_l_factor(p, &mut l) };
    let z = ((a.mean.re - l.re).powi(2) + (a.mean.im - l.im).powi(2)).sqrt() / a.std_error;
    assert!(z < 4.0, "z = {z}");

    let mut c = HbEstimate::default();
    assert_eq!(unsafe { hb_convolve_vector(p, g.as_ptr(), 200_000, 42, 0, &mut c) }, HbStatus::Ok);
    assert_eq!(c.mean, a.mean, "φ_ε(1) = 1");
    unsafe { hb_params_free(p) };
}

#[test]
fn variance_guard_is_invalid_argument() {
    // Re s must exceed n/2.
    let p = params(2, (0.9, 0.0), &[0.0, 0.0], &[0, 0]);
    let mut e = HbEstimate::default();
    let st = unsafe { hb_convolve_vector(p, [1.0, 0.0, 0.0, 1.0].as_ptr(), 1000, 0, 0, &mut e) };
    assert_eq!(st, HbStatus::InvalidArgument);
    unsafe { hb_params_free(p) };
}

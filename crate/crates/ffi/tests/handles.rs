use std::ffi::{CStr, CString};
use std::ptr;

use biserial_ffi::*;

fn algebra(spec: &str) -> *mut BiserialAlgebra {
    let spec = CString::new(spec).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { biserial_algebra_from_spec(spec.as_ptr(), c"q".as_ptr(), &mut out) }, BiserialStatus::Ok);
    out
}

fn module(alg: *const BiserialAlgebra, text: &str) -> *mut BiserialModule {
    let text = CString::new(text).unwrap();
    let mut out = ptr::null_mut();
    let s = unsafe { biserial_module_parse(alg, text.as_ptr(), ptr::null(), &mut out) };
    assert_eq!(s, BiserialStatus::Ok, "{:?}", unsafe { CStr::from_ptr(biserial_last_error()) });
    out
}

#[test]
fn loop_simple_has_infinite_pd() {
    let alg = algebra("lambda:r=1,m=0");
    let u = module(alg, "module u over x\nstring u\n");
    let mut pd = BiserialPd { kind: BiserialPdKind::Inconclusive, n: 0, from: 0, to: 0 };
    assert_eq!(unsafe { biserial_module_pd(alg, u, 12, 0, &mut pd) }, BiserialStatus::Ok);
    assert_eq!((pd.kind, pd.from, pd.to), (BiserialPdKind::Infinite, 0, 1));
    unsafe {
        biserial_module_free(u);
        biserial_algebra_free(alg);
    }
}

#[test]
fn syzygy_of_projective_is_zero() {
    let alg = algebra("lambda:r=1,m=1");
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { biserial_module_projective(alg, c"c1".as_ptr(), &mut p) }, BiserialStatus::Ok);
    assert_eq!(unsafe { biserial_module_total_dim(p) }, 6);
    let mut omega = ptr::null_mut();
    assert_eq!(unsafe { biserial_module_syzygy(alg, p, &mut omega) }, BiserialStatus::Ok);
    assert_eq!(unsafe { biserial_module_total_dim(omega) }, 0);
    let mut iso = BiserialIso::Unknown;
    assert_eq!(unsafe { biserial_module_iso(p, p, 0, &mut iso) }, BiserialStatus::Ok);
    assert_eq!(iso, BiserialIso::Isomorphic);
    unsafe {
        biserial_module_free(omega);
        biserial_module_free(p);
        biserial_algebra_free(alg);
    }
}

#[test]
fn modules_over_other_algebras_are_rejected() {
    let a = algebra("lambda:r=1,m=0");
    let b = algebra("lambda:r=1,m=1");
    let d = module(b, "module d over x\nstring d0\n");
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { biserial_module_syzygy(a, d, &mut out) }, BiserialStatus::Mismatch);
    let mut dim = 0;
    assert_eq!(unsafe { biserial_module_dim_at(d, c"nope".as_ptr(), &mut dim) }, BiserialStatus::InvalidArgument);
    assert_eq!(unsafe { biserial_module_dim_at(d, c"d0".as_ptr(), &mut dim) }, BiserialStatus::Ok);
    assert_eq!(dim, 1);
    unsafe {
        biserial_module_free(d);
        biserial_algebra_free(a);
        biserial_algebra_free(b);
    }
}

#[test]
fn parse_errors_carry_line_numbers() {
    let mut out = ptr::null_mut();
    let s = unsafe { biserial_algebra_parse(c"vertex a\nbogus\n".as_ptr(), c"q".as_ptr(), &mut out) };
    assert_eq!(s, BiserialStatus::Parse);
    let msg = unsafe { CStr::from_ptr(biserial_last_error()) }.to_str().unwrap().to_string();
    assert!(msg.contains("line"), "{msg}");
}

#[test]
fn emit_round_trips() {
    let alg = algebra("lambda1prime:r=1");
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { biserial_algebra_emit(alg, &mut text) }, BiserialStatus::Ok);
    let mut again = ptr::null_mut();
    assert_eq!(unsafe { biserial_algebra_parse(text, c"fp:101".as_ptr(), &mut again) }, BiserialStatus::Ok);
    assert_eq!(unsafe { biserial_algebra_vertex_count(again) }, unsafe { biserial_algebra_vertex_count(alg) });
    unsafe {
        biserial_string_free(text);
        biserial_algebra_free(again);
        biserial_algebra_free(alg);
    }
}

#[test]
fn verify_reports_json() {
    let cfg = BiserialVerifyConfig { samples: 3, ..biserial_verify_config_default() };
    let mut status = BiserialClaimStatus::Fail;
    let mut json = ptr::null_mut();
    let s = unsafe { biserial_verify(c"prop-2".as_ptr(), c"q".as_ptr(), cfg, &mut status, &mut json) };
    assert_eq!(s, BiserialStatus::Ok);
    assert_eq!(status, BiserialClaimStatus::Pass);
    let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap().to_string();
    assert!(text.contains("\"claim\":\"prop-2\""));
    unsafe { biserial_string_free(json) };
    let s = unsafe { biserial_verify(c"nope".as_ptr(), c"q".as_ptr(), cfg, &mut status, ptr::null_mut()) };
    assert_eq!(s, BiserialStatus::InvalidArgument);
}

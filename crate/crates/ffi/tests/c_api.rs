use std::ffi::{c_char, CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use quiverforge_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(qf_last_error()) }.to_string_lossy().into_owned()
}

unsafe fn take_string(p: *mut c_char) -> String {
    let s = CStr::from_ptr(p).to_string_lossy().into_owned();
    qf_string_free(p);
    s
}

fn build(root: [i64; 3]) -> *mut QfRepresentation {
    let mut out = ptr::null_mut();
    let status = unsafe { qf_construct(1, 1, 1, root.as_ptr(), 3, ptr::null(), &mut out) };
    assert_eq!(status, QfStatus::Ok, "{}", last_error());
    out
}

#[test]
fn construct_and_query() {
    let x = build([0, 1, 2]);
    let mut n = 0usize;
    let mut dims = [0usize; 3];
    let mut end = 0usize;
    let mut flag = false;
    unsafe {
        assert_eq!(qf_rep_vertex_count(x, &mut n), QfStatus::Ok);
        assert_eq!(n, 3);
        assert_eq!(qf_rep_dims(x, dims.as_mut_ptr(), 3), QfStatus::Ok);
        assert_eq!(dims, [0, 1, 2]);
        assert_eq!(qf_end_dim(x, &mut end), QfStatus::Ok);
        assert_eq!(end, 2);
        assert_eq!(qf_is_maximal_rank(x, &mut flag), QfStatus::Ok);
        assert!(flag);
        assert_eq!(qf_is_tree(x, &mut flag), QfStatus::Ok);
        assert!(flag);
        let mut hom = 0;
        let mut ext = 0;
        assert_eq!(qf_hom_ext(x, x, &mut hom, &mut ext), QfStatus::Ok);
        assert_eq!((hom, ext), (2, 1));
        qf_rep_free(x);
    }
}

#[test]
fn json_roundtrip_and_dot() {
    let x = build([1, 4, 2]);
    unsafe {
        let mut text = ptr::null_mut();
        assert_eq!(qf_rep_to_json(x, &mut text), QfStatus::Ok);
        let json = take_string(text);
        let c = CString::new(json.clone()).unwrap();
        let mut y = ptr::null_mut();
        assert_eq!(qf_rep_from_json(c.as_ptr(), &mut y), QfStatus::Ok);
        let mut again = ptr::null_mut();
        assert_eq!(qf_rep_to_json(y, &mut again), QfStatus::Ok);
        assert_eq!(take_string(again), json);

        let mut dot = ptr::null_mut();
        assert_eq!(qf_export_dot(y, &mut dot), QfStatus::Ok);
        assert!(take_string(dot).starts_with("digraph"));
        qf_rep_free(x);
        qf_rep_free(y);
    }
}

#[test]
fn error_codes() {
    let mut out = ptr::null_mut();
    unsafe {
        let imaginary = [1i64, 1, 1];
        assert_eq!(qf_construct(1, 1, 1, imaginary.as_ptr(), 3, ptr::null(), &mut out), QfStatus::DomainError);
        assert!(last_error().contains("not a real root"));
        assert_eq!(qf_construct(1, 0, 1, imaginary.as_ptr(), 3, ptr::null(), &mut out), QfStatus::InputError);
        assert_eq!(qf_construct(1, 1, 1, imaginary.as_ptr(), 2, ptr::null(), &mut out), QfStatus::InputError);
        assert_eq!(qf_construct(1, 1, 1, ptr::null(), 3, ptr::null(), &mut out), QfStatus::InvalidArgument);
        let bad_field = CString::new("fp:4").unwrap();
        let root = [0i64, 0, 1];
        assert_eq!(qf_construct(1, 1, 1, root.as_ptr(), 3, bad_field.as_ptr(), &mut out), QfStatus::InputError);
        let junk = CString::new("{").unwrap();
        assert_eq!(qf_rep_from_json(junk.as_ptr(), &mut out), QfStatus::InputError);
        let mut n = 0;
        assert_eq!(qf_end_dim(ptr::null(), &mut n), QfStatus::InvalidArgument);
        assert_eq!(qf_construct(1, 1, 1, root.as_ptr(), 3, ptr::null(), &mut out), QfStatus::Ok);
        assert_eq!(last_error(), "");
        let mut small = [0usize; 2];
        assert_eq!(qf_rep_dims(out, small.as_mut_ptr(), 2), QfStatus::InvalidArgument);
        qf_rep_free(out);
        qf_rep_free(ptr::null_mut());
        qf_string_free(ptr::null_mut());
    }
}

#[test]
fn prime_field_construction() {
    let field = CString::new("fp:3").unwrap();
    let root = [2i64, 2, 3];
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(qf_construct(1, 1, 1, root.as_ptr(), 3, field.as_ptr(), &mut out), QfStatus::Ok, "{}", last_error());
        let mut text = ptr::null_mut();
        assert_eq!(qf_rep_to_json(out, &mut text), QfStatus::Ok);
        assert!(take_string(text).contains("\"fp:3\""));
        qf_rep_free(out);
    }
}

#[test]
fn catalog_report() {
    let mut text = ptr::null_mut();
    let mut pass = false;
    unsafe {
        assert_eq!(qf_catalog(2, 1, 1, 5, ptr::null(), 1, &mut text, &mut pass), QfStatus::Ok);
        let json = take_string(text);
        assert!(pass);
        assert!(json.contains("\"schema_version\": 1"));
        assert_eq!(qf_catalog(2, 1, 1, 5, ptr::null(), 0, &mut text, &mut pass), QfStatus::InputError);
    }
}

#[test]
fn header_is_valid_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/quiverforge.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in ["qf_construct", "qf_rep_free", "qf_string_free", "qf_last_error", "QF_STATUS_DOMAIN_ERROR"] {
        assert!(text.contains(name), "header lacks {name}");
    }
    // syntax-check with the system compiler when one is installed
    if let Ok(status) = Command::new("cc").args(["-fsyntax-only", "-x", "c"]).arg(&header).status() {
        assert!(status.success());
    }
}

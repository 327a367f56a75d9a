use std::ffi::{CStr, CString};
use std::ptr;

use nsmodop_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    nsm_string_free(s);
    out
}

#[test]
fn type_round_trip_and_surgery() {
    unsafe {
        let mut a = ptr::null_mut();
        let mut b = ptr::null_mut();
        assert_eq!(nsm_type_parse(c("{(a u) (z)}").as_ptr(), &mut a), NsmStatus::Ok);
        assert_eq!(nsm_type_parse(c("(v b c)").as_ptr(), &mut b), NsmStatus::Ok);
        let mut m = ptr::null_mut();
        assert_eq!(nsm_type_merge(a, c("u").as_ptr(), b, c("v").as_ptr(), &mut m), NsmStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(nsm_type_to_string(m, &mut s), NsmStatus::Ok);
        assert_eq!(take(s), "{(a b c) (z)}");
        let mut count = 0usize;
        assert_eq!(nsm_type_b(m, &mut count), NsmStatus::Ok);
        assert_eq!(count, 2);
        let mut cut = ptr::null_mut();
        assert_eq!(nsm_type_cut(m, c("a").as_ptr(), c("c").as_ptr(), &mut cut), NsmStatus::Ok);
        assert_eq!(nsm_type_b(cut, &mut count), NsmStatus::Ok);
        assert_eq!(count, 3);
        for t in [a, b, m, cut] {
            nsm_type_free(t);
        }
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut t = ptr::null_mut();
        assert_eq!(nsm_type_parse(c("(a a)").as_ptr(), &mut t), NsmStatus::Domain);
        let msg = CStr::from_ptr(nsm_last_error_message()).to_str().unwrap();
        assert!(msg.contains("more than once"), "{msg}");
        assert_eq!(nsm_type_parse(ptr::null(), &mut t), NsmStatus::NullPointer);
        assert_eq!(nsm_type_parse(c("{(a)").as_ptr(), &mut t), NsmStatus::Parse);
        let mut n = 0u64;
        assert_eq!(nsm_wheel_count(0, &mut n), NsmStatus::Domain);
        assert_eq!(nsm_wheel_count(3, &mut n), NsmStatus::Ok);
        assert_eq!(n, 8);
        let mut g = ptr::null_mut();
        assert_eq!(nsm_graph_from_json(c("{}").as_ptr(), &mut g), NsmStatus::Parse);
    }
}

#[test]
fn graphs() {
    let loop_graph = r#"{"flags":["x","u","y","v"],"involution":{"x":"x","u":"v","y":"y","v":"u"},"vertices":[{"genus":0,"blocks":[["x","u","y","v"]]}],"legs":{"x":"x","y":"y"}}"#;
    let star = r#"{"flags":["x","u","y","v"],"involution":{"x":"x","u":"u","y":"y","v":"v"},"vertices":[{"genus":0,"blocks":[["x","u","y","v"]]}],"legs":{"x":"x","u":"u","y":"y","v":"v"}}"#;
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(nsm_graph_from_json(c(loop_graph).as_ptr(), &mut g), NsmStatus::Ok);
        let mut genus = 0u32;
        assert_eq!(nsm_graph_genus(g, &mut genus), NsmStatus::Ok);
        assert_eq!(genus, 1);
        let mut t = ptr::null_mut();
        assert_eq!(nsm_graph_leg_type(g, &mut t), NsmStatus::Ok);
        let mut s = ptr::null_mut();
        nsm_type_to_string(t, &mut s);
        assert_eq!(take(s), "{(x) (y)}");
        let mut js = ptr::null_mut();
        assert_eq!(nsm_graph_to_json(g, &mut js), NsmStatus::Ok);
        assert_eq!(take(js), loop_graph);

        let mut h = ptr::null_mut();
        assert_eq!(nsm_graph_from_json(c(star).as_ptr(), &mut h), NsmStatus::Ok);
        let mut glued = ptr::null_mut();
        assert_eq!(nsm_graph_self_glue(h, c("u").as_ptr(), c("v").as_ptr(), &mut glued), NsmStatus::Ok);
        let mut iso = false;
        assert_eq!(nsm_graph_isomorphic(g, glued, &mut iso), NsmStatus::Ok);
        assert!(iso);
        let mut canon = ptr::null_mut();
        assert_eq!(nsm_graph_canonical_json(glued, &mut canon), NsmStatus::Ok);
        assert!(!take(canon).is_empty());
        let mut bad = ptr::null_mut();
        assert_eq!(nsm_graph_graft(g, c("x").as_ptr(), h, c("x").as_ptr(), &mut bad), NsmStatus::Domain);
        nsm_type_free(t);
        for x in [g, h, glued] {
            nsm_graph_free(x);
        }
    }
}

#[test]
fn counts_and_envelope() {
    unsafe {
        let mut n = 0u64;
        assert_eq!(nsm_count_mod_ass(3, 0, &mut n), NsmStatus::Ok);
        assert_eq!(n, 2);
        let mut cert = ptr::null_mut();
        assert_eq!(nsm_envelope_verify(2, 1, 3, false, &mut cert), NsmStatus::Ok);
        assert!(take(cert).contains("\"components\":2"));
        assert_eq!(nsm_envelope_verify(1, 2, 1, false, &mut cert), NsmStatus::Inconclusive);
        nsm_string_free(cert);
    }
}

#[test]
fn header_is_generated() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/nsmodop.h")).unwrap();
    for name in ["NsmStatus", "nsm_type_parse", "nsm_graph_from_json", "nsm_envelope_verify", "nsm_last_error_message"]
    {
        assert!(header.contains(name), "{name} missing from header");
    }
}

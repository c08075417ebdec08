use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use skewcode_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(skc_last_error()) }.to_str().unwrap().to_owned()
}

fn take(s: *mut std::ffi::c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { skc_string_free(s) };
    out
}

#[test]
fn ring_queries() {
    let field = CString::new("GF(4)").unwrap();
    let mut ring = ptr::null_mut();
    unsafe {
        assert_eq!(skc_ring_new(field.as_ptr(), 5, &mut ring), SkcStatus::Ok);
        let mut r = 0;
        assert_eq!(skc_ring_num_factors(ring, &mut r), SkcStatus::Ok);
        assert_eq!(r, 3);
        let mut deg = 0;
        assert_eq!(skc_ring_factor_degree(ring, 2, &mut deg), SkcStatus::Ok);
        assert_eq!(deg, 2);
        let mut s = ptr::null_mut();
        assert_eq!(skc_ring_factor_string(ring, 1, &mut s), SkcStatus::Ok);
        assert_eq!(take(s), "1+x");
        assert_eq!(skc_ring_factor_degree(ring, 4, &mut deg), SkcStatus::Math);
        assert!(!last_error().is_empty());
        skc_ring_free(ring);
    }
}

#[test]
fn status_codes() {
    let mut ring = ptr::null_mut();
    unsafe {
        assert_eq!(skc_ring_new(ptr::null(), 7, &mut ring), SkcStatus::NullPointer);
        let bad = CString::new("GF(x)").unwrap();
        assert_eq!(skc_ring_new(bad.as_ptr(), 7, &mut ring), SkcStatus::Parse);
        let two = CString::new("GF(2)").unwrap();
        assert_eq!(skc_ring_new(two.as_ptr(), 4, &mut ring), SkcStatus::Precondition);
        assert!(!last_error().is_empty());
        assert_eq!(skc_ring_new(two.as_ptr(), 7, ptr::null_mut()), SkcStatus::NullPointer);
        let mut b = 0;
        assert_eq!(skc_singleton_bound(7, 1, 2, &mut b), SkcStatus::Ok);
        assert_eq!(last_error(), "");
        assert_eq!(b, 21);
        assert_eq!(skc_griesmer_bound(7, 2, 4, 2, 8, &mut b), SkcStatus::Ok);
        assert_eq!(b, 18);
        assert_eq!(skc_singleton_bound(3, 3, 1, &mut b), SkcStatus::Math);
        skc_ring_free(ptr::null_mut());
        skc_code_free(ptr::null_mut());
        skc_string_free(ptr::null_mut());
    }
}

#[test]
fn code_from_descriptor() {
    let json = CString::new(
        r#"{"field":"GF(2)","n":7,"sigma":"x^5","generator":"1+x^2+x^3+x^4+z*(x+x^2+x^3+x^5)+z^2*(1+x+x^4+x^6)"}"#,
    )
    .unwrap();
    let mut code = ptr::null_mut();
    unsafe {
        assert_eq!(skc_code_from_descriptor(json.as_ptr(), &mut code), SkcStatus::Ok);
        let (mut n, mut k, mut delta, mut d, mut q) = (0, 0, 0, 0, 0);
        assert_eq!(skc_code_params(code, &mut n, &mut k, &mut delta), SkcStatus::Ok);
        assert_eq!((n, k, delta), (7, 3, 6));
        assert_eq!(skc_code_params(code, ptr::null_mut(), &mut k, ptr::null_mut()), SkcStatus::Ok);
        assert_eq!(skc_code_free_distance(code, 0, &mut d), SkcStatus::Ok);
        assert_eq!(d, 12);
        assert_eq!(skc_code_field_size(code, &mut q), SkcStatus::Ok);
        assert_eq!(q, 2);
        assert_eq!(skc_code_free_distance(code, 4, &mut d), SkcStatus::Math);
        let mut s = ptr::null_mut();
        assert_eq!(skc_code_generator_json(code, &mut s), SkcStatus::Ok);
        let m: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(m["rows"], 3);
        assert_eq!(m["entries"][0][0], "1+z^2");
        skc_code_free(code);

        let bad = CString::new(r#"{"field":"GF(2)"}"#).unwrap();
        assert_eq!(skc_code_from_descriptor(bad.as_ptr(), &mut code), SkcStatus::Parse);
    }
}

fn target_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(|p| p.parent()).unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_header() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let lib = target_dir().join("libskewcode_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let out = std::env::temp_dir().join(format!("skewcode-smoke-{}", std::process::id()));
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(cc)
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let run = Command::new(&out).output().unwrap();
    std::fs::remove_file(&out).ok();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
}

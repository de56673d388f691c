use std::ffi::{CStr, CString};
use std::process::Command;
use std::ptr;

use hyperclass_ffi::*;

fn last_error() -> String {
    let p = hc_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn field(p: u32, n: u32) -> *mut HcField {
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { hc_field_new(p, n, &mut f) }, HcStatus::Ok);
    f
}

fn data(f: *const HcField, e: u32, poly: &str) -> Result<*mut HcClassData, HcStatus> {
    let s = CString::new(poly).unwrap();
    let mut d = ptr::null_mut();
    match unsafe { hc_class_data_new(f, e, s.as_ptr(), 0, &mut d) } {
        HcStatus::Ok => Ok(d),
        err => Err(err),
    }
}

#[test]
fn class_data_round_trip() {
    let f = field(3, 1);
    let mut e = 0;
    assert_eq!(unsafe { hc_field_least_non_square(f, &mut e) }, HcStatus::Ok);
    assert_eq!(e, 2);
    // T^4 + T + 2 is irreducible over F_3, genus 1, class number divisible by 4
    let d = data(f, e, "2+1T+0T^2+0T^3+1T^4").unwrap();
    let (mut h, mut g) = (0u64, 0u32);
    unsafe {
        assert_eq!(hc_class_number(d, &mut h), HcStatus::Ok);
        assert_eq!(hc_genus(d, &mut g), HcStatus::Ok);
    }
    assert_eq!(g, 1);
    assert_eq!(h % 4, 0);

    let mut len = 0usize;
    let mut divs = [0u64; 8];
    assert_eq!(unsafe { hc_divisors(d, divs.as_mut_ptr(), divs.len(), &mut len) }, HcStatus::Ok);
    assert_eq!(divs[..len].iter().product::<u64>(), h);

    let mut coeffs = [0i64; 1];
    assert_eq!(unsafe { hc_l_polynomial(d, coeffs.as_mut_ptr(), 1, &mut len) }, HcStatus::BufferTooSmall);
    assert_eq!(len, 2 * g as usize + 1);
    let mut coeffs = vec![0i64; len];
    assert_eq!(unsafe { hc_l_polynomial(d, coeffs.as_mut_ptr(), len, &mut len) }, HcStatus::Ok);
    assert_eq!(coeffs[0], 1);
    assert_eq!(coeffs[2], 3);

    let (mut s, mut cyclic) = (0u32, false);
    assert_eq!(unsafe { hc_two_sylow(d, &mut s, &mut cyclic) }, HcStatus::Ok);
    assert!(cyclic && s >= 2);
    unsafe {
        hc_class_data_free(d);
        hc_field_free(f);
    }
}

#[test]
fn errors_map_to_codes() {
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { hc_field_new(4, 1, &mut f) }, HcStatus::InvalidField);
    assert!(!last_error().is_empty());
    assert_eq!(unsafe { hc_field_new(3, 1, ptr::null_mut()) }, HcStatus::NullPointer);

    let f = field(3, 1);
    assert_eq!(data(f, 2, "2+0T+1T^2").unwrap_err(), HcStatus::NotIrreducible);
    assert_eq!(data(f, 1, "1+0T+1T^2").unwrap_err(), HcStatus::SquareMultiplier);
    assert_eq!(data(f, 2, "1+xT").unwrap_err(), HcStatus::Parse);
    assert_eq!(data(f, 7, "1+0T+1T^2").unwrap_err(), HcStatus::InvalidArgument);
    assert!(last_error().contains('7'));
    let mut h = 0;
    assert_eq!(unsafe { hc_class_number(ptr::null(), &mut h) }, HcStatus::NullPointer);
    unsafe { hc_field_free(f) };
}

#[test]
fn witness_json_and_exhaustion() {
    let f = field(5, 1);
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { hc_witness_json(f, 8, 0, &mut json) }, HcStatus::Ok);
    let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap().to_owned();
    unsafe { hc_string_free(json) };
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let (a, b) = (v["plus"]["h"].as_u64().unwrap(), v["minus"]["h"].as_u64().unwrap());
    assert_ne!(a % 8, b % 8);
    unsafe { hc_field_free(f) };

    let f = field(3, 1);
    assert_eq!(unsafe { hc_witness_json(f, 8, 0, &mut json) }, HcStatus::SearchExhausted);
    unsafe { hc_field_free(f) };
}

#[test]
fn header_is_generated_and_compiles() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/hyperclass.h");
    let text = std::fs::read_to_string(header).unwrap();
    for name in ["hc_field_new", "hc_class_data_new", "hc_witness_json", "hc_last_error", "HC_STATUS_OK"] {
        assert!(text.contains(name), "{name} missing from header");
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("check.c");
    std::fs::write(&src, "#include \"hyperclass.h\"\nint main(void) { return HC_STATUS_OK; }\n").unwrap();
    let Ok(out) = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I", concat!(env!("CARGO_MANIFEST_DIR"), "/include")])
        .arg(&src)
        .output()
    else {
        eprintln!("no C compiler; skipping syntax check");
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

use std::ffi::CStr;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use dixon_complex_ffi::*;

fn new_complex(p: u32, n: u32) -> *mut DixonComplex {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { dixon_complex_new(p, n, 0, &mut h) }, DixonStatus::Ok);
    assert!(!h.is_null());
    h
}

fn last_error() -> String {
    let p = dixon_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn version_is_set() {
    let v = unsafe { CStr::from_ptr(dixon_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn face_counts_and_euler() {
    let h = new_complex(3, 4);
    let mut f = 0;
    assert_eq!(unsafe { dixon_face_count(h, 1, &mut f) }, DixonStatus::Ok);
    assert_eq!(f, 216);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { dixon_euler_characteristic(h, &mut s) }, DixonStatus::Ok);
    assert_eq!(unsafe { take_string(s) }, "-90");
    unsafe { dixon_complex_free(h) };
}

#[test]
fn face_count_overflow_is_reported() {
    let h = new_complex(40, 40);
    let mut f = 0;
    assert_eq!(unsafe { dixon_face_count(h, 19, &mut f) }, DixonStatus::BudgetExceeded);
    assert!(last_error().contains("64 bits"));
    unsafe { dixon_complex_free(h) };
}

#[test]
fn invalid_arguments() {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { dixon_complex_new(0, 3, 0, &mut h) }, DixonStatus::InvalidArgument);
    assert!(h.is_null());
    assert!(last_error().contains("arity"));
    assert_eq!(unsafe { dixon_complex_new(3, 3, 0, ptr::null_mut()) }, DixonStatus::NullPointer);
    let mut f = 0;
    assert_eq!(unsafe { dixon_face_count(ptr::null(), 0, &mut f) }, DixonStatus::NullPointer);
    unsafe {
        dixon_complex_free(ptr::null_mut());
        dixon_string_free(ptr::null_mut());
    }
}

#[test]
fn facets_text() {
    let h = new_complex(3, 2);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { dixon_facets_text(h, &mut s) }, DixonStatus::Ok);
    let text = unsafe { take_string(s) };
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "# p=3 n=2");
    assert_eq!(lines[1], "(1,1,1) (2,2,2)");
    assert_eq!(lines.len(), 8);
    unsafe { dixon_complex_free(h) };
}

#[test]
fn budget_is_enforced() {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { dixon_complex_new(3, 5, 50, &mut h) }, DixonStatus::Ok);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { dixon_facets_text(h, &mut s) }, DixonStatus::BudgetExceeded);
    assert!(s.is_null());
    unsafe { dixon_complex_free(h) };
}

#[test]
fn shelling_and_betti() {
    let h = new_complex(3, 3);
    let (mut pairs, mut violations) = (0, 0);
    let status = unsafe { dixon_verify_shelling(h, DixonWitnessMode::Both, &mut pairs, &mut violations) };
    assert_eq!(status, DixonStatus::Ok);
    assert_eq!(pairs, 37 * 36 / 2);
    assert_eq!(violations, 0);

    let mut buf = [0u64; 8];
    let mut len = 0;
    let mut from_matrix = [0u64; 8];
    for (method, out) in [
        (DixonBettiMethod::Shelling, &mut buf),
        (DixonBettiMethod::Matrix, &mut from_matrix),
    ] {
        let status = unsafe { dixon_betti(h, method, out.as_mut_ptr(), out.len(), &mut len) };
        assert_eq!(status, DixonStatus::Ok);
        assert_eq!(len, 4);
    }
    assert_eq!(buf, from_matrix);

    let mut small = [0u64; 2];
    let status = unsafe { dixon_betti(h, DixonBettiMethod::Matrix, small.as_mut_ptr(), 2, &mut len) };
    assert_eq!(status, DixonStatus::BufferTooSmall);
    assert_eq!(len, 4);

    let mut holds = false;
    assert_eq!(unsafe { dixon_euler_poincare(h, &mut holds) }, DixonStatus::Ok);
    assert!(holds);
    unsafe { dixon_complex_free(h) };
}

#[test]
fn identities() {
    let (mut passed, mut total) = (0, 0);
    assert_eq!(
        unsafe { dixon_identity_check(DixonIdentity::ThreeF2, 5, &mut passed, &mut total) },
        DixonStatus::Ok
    );
    assert_eq!((passed, total), (216, 216));
    assert_eq!(
        unsafe { dixon_identity_check(DixonIdentity::Dixon, 40, &mut passed, &mut total) },
        DixonStatus::Ok
    );
    assert_eq!((passed, total), (40, 40));
    assert_eq!(
        unsafe { dixon_identity_check(DixonIdentity::Aigner, 40, &mut passed, &mut total) },
        DixonStatus::Ok
    );
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { dixon_lhs_string(4, &mut s) }, DixonStatus::Ok);
    assert_eq!(unsafe { take_string(s) }, "90");
}

fn header() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include").join("dixon_complex.h")
}

fn have_cc() -> bool {
    Command::new("cc").arg("--version").output().is_ok()
}

#[test]
fn header_parses_as_c() {
    let h = header();
    assert!(h.exists(), "build script should write {}", h.display());
    if !have_cc() {
        eprintln!("cc not found; header syntax check skipped");
        return;
    }
    let status = Command::new("cc")
        .args(["-std=c11", "-Wall", "-Werror", "-fsyntax-only", "-x", "c"])
        .arg(&h)
        .status()
        .unwrap();
    assert!(status.success());
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "dixon_complex.h"

int main(void) {
    DixonComplex *h = NULL;
    if (dixon_complex_new(3, 4, 0, &h) != DIXON_STATUS_OK) return 10;
    uint64_t betti[8];
    size_t len = 0;
    if (dixon_betti(h, DIXON_BETTI_METHOD_MATRIX, betti, 8, &len) != DIXON_STATUS_OK) return 11;
    char *chi = NULL;
    if (dixon_euler_characteristic(h, &chi) != DIXON_STATUS_OK) return 12;
    printf("%s", chi);
    for (size_t i = 0; i < len; i++) printf(" %llu", (unsigned long long)betti[i]);
    printf("\n");
    dixon_string_free(chi);
    dixon_complex_free(h);
    if (dixon_complex_new(0, 4, 0, &h) != DIXON_STATUS_INVALID_ARGUMENT) return 13;
    if (dixon_last_error() == NULL) return 14;
    return 0;
}
"#;

/// Links a C program against the static library when it can be found next to
/// this test binary.
#[test]
fn c_program_links_and_runs() {
    if !have_cc() {
        eprintln!("cc not found; link test skipped");
        return;
    }
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(Path::parent).unwrap();
    let lib = profile_dir.join("libdixon_complex_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built; link test skipped", lib.display());
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    let bin = dir.path().join("main");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let status = Command::new("cc")
        .arg("-std=c11")
        .arg(&src)
        .arg("-I")
        .arg(header().parent().unwrap())
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "linking against {} failed", lib.display());
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    // reduced Euler characteristic, then β_{-1}..β_3 of Δ(4)
    let text = String::from_utf8(out.stdout).unwrap();
    let fields: Vec<&str> = text.split_whitespace().collect();
    assert_eq!(fields[0], "-90");
    assert_eq!(fields.len(), 6);
}

use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use hirzebruch_ffi::*;

fn last_error() -> String {
    let p = hz_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

fn complex(k: u32, a: u32, b: u32) -> *mut HzComplex {
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { hz_complex_new(k, a, b, &mut c) }, HzStatus::Ok);
    c
}

#[test]
fn complex_counts_and_json() {
    let c = complex(1, 2, 2);
    let mut n = HzCounts::default();
    assert_eq!(unsafe { hz_complex_counts(c, &mut n) }, HzStatus::Ok);
    assert_eq!(n, HzCounts { planes: 12, lines: 13, vertices: 12 });
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { hz_complex_to_json(c, &mut s) }, HzStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(unsafe { CStr::from_ptr(s) }.to_str().unwrap()).unwrap();
    assert_eq!(v["counts"]["lines"], 13);
    unsafe {
        hz_string_free(s);
        hz_complex_free(c);
    }
}

#[test]
fn invalid_parameters_and_nulls() {
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { hz_complex_new(1, 1, 0, &mut c) }, HzStatus::InvalidParams);
    assert!(c.is_null());
    assert!(last_error().contains("invalid parameters"));
    assert_eq!(unsafe { hz_complex_new(1, 1, 1, ptr::null_mut()) }, HzStatus::NullPointer);
    let mut n = HzCounts::default();
    assert_eq!(unsafe { hz_complex_counts(ptr::null(), &mut n) }, HzStatus::NullPointer);
    let mut ch = HzChern::default();
    assert_eq!(unsafe { hz_chern(2, 0, 3, &mut ch) }, HzStatus::InvalidParams);
    unsafe {
        hz_complex_free(ptr::null_mut());
        hz_string_free(ptr::null_mut());
        hz_factorization_free(ptr::null_mut());
    }
}

#[test]
fn degenerate_factorization_round_trip() {
    let c = complex(1, 1, 2);
    let mut f = ptr::null_mut();
    let status = unsafe { hz_factorize(c, HzLevel::Degenerate, HzThreePointMode::Auto, 0x5eed, &mut f) };
    assert_eq!(status, HzStatus::Ok);
    let (mut factors, mut strands, mut residual, mut ok) = (0usize, 0usize, 1i64, false);
    unsafe {
        assert_eq!(hz_factorization_shape(f, &mut factors, &mut strands), HzStatus::Ok);
        assert_eq!(hz_factorization_residual(f, &mut residual), HzStatus::Ok);
        assert_eq!(hz_factorization_verify(f, &mut ok), HzStatus::Ok);
    }
    assert_eq!((strands, residual, ok), (8, 0, true));
    assert!(factors > 0);

    let mut s = ptr::null_mut();
    assert_eq!(unsafe { hz_factorization_to_json(f, &mut s) }, HzStatus::Ok);
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { hz_factorization_from_json(s, &mut g) }, HzStatus::Ok);
    let mut ok2 = false;
    assert_eq!(unsafe { hz_factorization_verify(g, &mut ok2) }, HzStatus::Ok);
    assert!(ok2);
    unsafe {
        hz_string_free(s);
        hz_factorization_free(f);
        hz_factorization_free(g);
        hz_complex_free(c);
    }
}

#[test]
fn regenerated_residuals() {
    let c = complex(1, 1, 1);
    for (mode, expected) in [(HzThreePointMode::Auto, 0), (HzThreePointMode::Literal, 6), (HzThreePointMode::Cubed, 0)]
    {
        let mut f = ptr::null_mut();
        assert_eq!(unsafe { hz_factorize(c, HzLevel::Regenerated, mode, 0, &mut f) }, HzStatus::Ok);
        let mut r = 0;
        assert_eq!(unsafe { hz_factorization_residual(f, &mut r) }, HzStatus::Ok);
        assert_eq!(r, expected);
        unsafe { hz_factorization_free(f) };
    }
    unsafe { hz_complex_free(c) };
}

#[test]
fn bad_json_is_a_parse_error() {
    let text = CString::new("{\"strand_count\": 2}").unwrap();
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { hz_factorization_from_json(text.as_ptr(), &mut f) }, HzStatus::Parse);
    assert!(f.is_null());
}

#[test]
fn invariants() {
    let mut ch = HzChern::default();
    assert_eq!(unsafe { hz_chern(1, 0, 3, &mut ch) }, HzStatus::Ok);
    // 9!/4 * 16 and 9!/8 * 160.
    assert_eq!(ch.factorial_index, 9);
    assert_eq!(ch.c1sq, HzRational { num: 36, den: 1 });
    assert_eq!(ch.c2, HzRational { num: 20, den: 1 });
    assert_eq!(unsafe { hz_chern(0, 7, 4, &mut ch) }, HzStatus::Ok);
    assert_eq!(ch.signature, HzRational { num: 0, den: 1 });

    let mut cl = HzClassification::default();
    assert_eq!(unsafe { hz_classify(1, 3, 7, &mut cl) }, HzStatus::Ok);
    assert!(cl.general_type && cl.spin && cl.simply_connected && cl.consistent);
    assert_eq!(cl.signature_sign, 1);

    let mut g = HzGroup::default();
    assert_eq!(unsafe { hz_pi1(0, 4, 2, &mut g) }, HzStatus::Ok);
    assert_eq!(g, HzGroup { torsion_order: 2, rank: 14 });
    assert_eq!(unsafe { hz_pi1(1, 0, 3, &mut g) }, HzStatus::InvalidParams);
}

#[test]
fn braid_equality() {
    let (l, r) = ([1, 2, 1], [2, 1, 2]);
    let mut eq = false;
    assert_eq!(unsafe { hz_braid_equal(3, l.as_ptr(), 3, r.as_ptr(), 3, &mut eq) }, HzStatus::Ok);
    assert!(eq);
    let w = [1, 2];
    assert_eq!(unsafe { hz_braid_equal(3, w.as_ptr(), 2, ptr::null(), 0, &mut eq) }, HzStatus::Ok);
    assert!(!eq);
    let bad = [3];
    assert_eq!(unsafe { hz_braid_equal(3, bad.as_ptr(), 1, ptr::null(), 0, &mut eq) }, HzStatus::InvalidArgument);
    assert_eq!(unsafe { hz_braid_equal(3, ptr::null(), 2, ptr::null(), 0, &mut eq) }, HzStatus::NullPointer);
}

const C_PROGRAM: &str = r#"
#include "hirzebruch.h"
#include <stdio.h>

int main(void) {
    HzComplex *c = NULL;
    if (hz_complex_new(1, 1, 2, &c) != HZ_STATUS_OK) return 1;
    HzFactorization *f = NULL;
    if (hz_factorize(c, HZ_LEVEL_DEGENERATE, HZ_THREE_POINT_MODE_AUTO, 0x5eed, &f) != HZ_STATUS_OK) return 2;
    bool ok = false;
    if (hz_factorization_verify(f, &ok) != HZ_STATUS_OK || !ok) return 3;
    HzChern ch;
    if (hz_chern(0, 7, 4, &ch) != HZ_STATUS_OK || ch.signature.num != 0) return 4;
    if (hz_complex_new(1, 1, 0, &c) != HZ_STATUS_INVALID_PARAMS || hz_last_error() == NULL) return 5;
    hz_factorization_free(f);
    printf("ok\n");
    return 0;
}
"#;

/// Compiles and runs a C program against the generated header and the
/// static library. Skipped when no C compiler is on the path.
#[test]
fn c_program_links_against_header() {
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("no C compiler; skipping");
        return;
    }
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let include = manifest.join("include");
    assert!(include.join("hirzebruch.h").exists());
    // target/<profile>/deps/<test binary> -> target/<profile>
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libhirzebruch_ffi.a");
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    std::fs::write(&src, C_PROGRAM).unwrap();

    let syntax = Command::new("cc")
        .args(["-std=c11", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(&include)
        .arg(&src)
        .output()
        .unwrap();
    assert!(syntax.status.success(), "{}", String::from_utf8_lossy(&syntax.stderr));

    assert!(lib.exists(), "static library not built at {}", lib.display());
    let exe = dir.path().join("main");
    let link = Command::new("cc")
        .args(["-std=c11", "-I"])
        .arg(&include)
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .output()
        .unwrap();
    assert!(link.status.success(), "{}", String::from_utf8_lossy(&link.stderr));
    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success(), "exit {:?}", run.status.code());
    assert_eq!(String::from_utf8_lossy(&run.stdout), "ok\n");
}

use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use clifford_roots_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    cr_string_free(s);
    out
}

#[test]
fn catalog_and_identify() {
    unsafe {
        let mut set = ptr::null_mut();
        assert_eq!(cr_catalog_build(c("D").as_ptr(), 4, &mut set), CrStatus::Ok);
        let mut n = 0;
        assert_eq!(cr_root_set_len(set, &mut n), CrStatus::Ok);
        assert_eq!(n, 24);
        assert_eq!(cr_root_set_rank(set, &mut n), CrStatus::Ok);
        assert_eq!(n, 4);
        let mut s = ptr::null_mut();
        assert_eq!(cr_identify(set, &mut s), CrStatus::Ok);
        assert_eq!(
            take(s),
            r#"{"components":[{"family":"D","rank":4,"roots":24,"scale":"2"}],"total_roots":24}"#
        );
        cr_root_set_free(set);
    }
}

#[test]
fn json_round_trip_and_closure() {
    unsafe {
        let text = c(r#"{"basis_gram": [["1/2", 0], [0, "1/2"]], "vectors": [[1, 0], [0, 1]]}"#);
        let mut set = ptr::null_mut();
        assert_eq!(cr_root_set_from_json(text.as_ptr(), &mut set), CrStatus::Ok);
        let mut closed = ptr::null_mut();
        assert_eq!(cr_closure(set, 512, &mut closed), CrStatus::Ok);
        let mut n = 0;
        cr_root_set_len(closed, &mut n);
        assert_eq!(n, 4);
        let mut adm = false;
        assert_eq!(cr_is_admissible(set, 512, &mut adm), CrStatus::Ok);
        assert!(adm);
        let mut s = ptr::null_mut();
        assert_eq!(cr_root_set_to_json(closed, &mut s), CrStatus::Ok);
        let json = c(&take(s));
        let mut again = ptr::null_mut();
        assert_eq!(cr_root_set_from_json(json.as_ptr(), &mut again), CrStatus::Ok);
        cr_root_set_free(again);
        cr_root_set_free(closed);
        cr_root_set_free(set);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut set = ptr::null_mut();
        assert_eq!(cr_catalog_build(c("Q").as_ptr(), 4, &mut set), CrStatus::Parse);
        assert!(!cr_last_error().is_null());
        assert_eq!(cr_catalog_build(c("E").as_ptr(), 9, &mut set), CrStatus::InvalidInput);
        assert_eq!(cr_catalog_build(ptr::null(), 3, &mut set), CrStatus::NullPointer);
        assert_eq!(cr_root_set_from_json(c("{").as_ptr(), &mut set), CrStatus::Parse);
        let msg = CStr::from_ptr(cr_last_error()).to_str().unwrap();
        assert!(msg.contains("line 1"), "{msg}");
        let mut n = 0;
        assert_eq!(cr_root_set_len(ptr::null(), &mut n), CrStatus::NullPointer);

        let text = c(r#"{"basis_gram": [[1]], "vectors": [[1], [-1], [3], [-3]]}"#);
        assert_eq!(cr_root_set_from_json(text.as_ptr(), &mut set), CrStatus::Ok);
        let mut closed = ptr::null_mut();
        assert_eq!(cr_closure(set, 512, &mut closed), CrStatus::NotASubsystem);
        assert!(CStr::from_ptr(cr_last_error()).to_str().unwrap().contains("R2"));
        cr_root_set_free(set);

        // success clears the message
        assert_eq!(cr_catalog_build(c("A").as_ptr(), 2, &mut set), CrStatus::Ok);
        assert!(cr_last_error().is_null());
        cr_root_set_free(set);
    }
}

#[test]
fn verify_claims() {
    unsafe {
        let mut s = ptr::null_mut();
        let mut ok = false;
        assert_eq!(cr_verify(c("r14-exclusion").as_ptr(), &mut s, &mut ok), CrStatus::Ok);
        assert!(ok);
        assert!(take(s).contains("\"status\":\"INFEASIBLE\""));
        assert_eq!(cr_verify(c("theorem-case-V").as_ptr(), &mut s, &mut ok), CrStatus::UnknownClaim);
    }
}

#[test]
fn header_declares_api() {
    let header = std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/clifford_roots.h")).unwrap();
    for f in [
        "cr_last_error",
        "cr_root_set_from_json",
        "cr_catalog_build",
        "cr_root_set_free",
        "cr_root_set_len",
        "cr_root_set_rank",
        "cr_root_set_to_json",
        "cr_closure",
        "cr_is_admissible",
        "cr_identify",
        "cr_verify",
        "cr_string_free",
    ] {
        assert!(header.contains(&format!("{f}(")), "{f} missing from header");
    }
    assert!(header.contains("typedef struct CrRootSet CrRootSet;"));
}

/// Compiles the C smoke program against the header and the static library.
#[test]
fn c_program_links() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // test binaries live in <target>/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().unwrap().parent().unwrap();
    let lib = profile_dir.join("libclifford_roots_ffi.a");
    assert!(lib.exists(), "static library not found at {}", lib.display());
    let out = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("smoke");
    let status = Command::new("cc")
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .expect("cc runs");
    assert!(status.success());
    let run = Command::new(&out).output().unwrap();
    assert!(run.status.success(), "exit {:?}", run.status.code());
    assert_eq!(String::from_utf8_lossy(&run.stdout), "ok\n");
}

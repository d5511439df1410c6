use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use omniversal_ffi::*;

fn last_error() -> String {
    let p = omv_last_error_message();
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned();
    unsafe { omv_string_free(p) };
    s
}

#[test]
fn l_star_spectrum_is_omniversal() {
    unsafe {
        let mut sq = ptr::null_mut();
        assert_eq!(omv_build_l_star(1, 0, &mut sq), OmvStatus::Ok);
        assert_eq!(omv_square_order(sq), 8);
        let mut rep = ptr::null_mut();
        assert_eq!(omv_spectrum(sq, 0, &mut rep), OmvStatus::Ok);
        let (mut lo, mut hi) = (0, 0);
        assert_eq!(omv_report_range(rep, &mut lo, &mut hi), OmvStatus::Ok);
        assert_eq!((lo, hi), (4, 8));
        let (mut kind, mut mu) = (OmvVerdict::Incomplete, 99);
        assert_eq!(omv_report_verdict(rep, &mut kind, &mut mu), OmvStatus::Ok);
        assert_eq!((kind, mu), (OmvVerdict::Omniversal, 0));

        let mut need = 0;
        assert_eq!(
            omv_report_witness(rep, 6, ptr::null_mut(), 0, &mut need),
            OmvStatus::OutOfRange
        );
        assert_eq!(need, 18);
        let mut buf = vec![0usize; need];
        assert_eq!(
            omv_report_witness(rep, 6, buf.as_mut_ptr(), buf.len(), &mut need),
            OmvStatus::Ok
        );
        for t in buf.chunks(3) {
            let mut s = 0;
            assert_eq!(omv_square_get(sq, t[0], t[1], &mut s), OmvStatus::Ok);
            assert_eq!(s, t[2]);
        }

        let mut json = ptr::null_mut();
        assert_eq!(omv_report_to_json(rep, &mut json), OmvStatus::Ok);
        let v: serde_json::Value =
            serde_json::from_str(CStr::from_ptr(json).to_str().unwrap()).unwrap();
        assert_eq!(v["verdict"]["kind"], "omniversal");
        omv_string_free(json);
        omv_report_free(rep);
        omv_square_free(sq);
    }
}

#[test]
fn m_star_and_groups() {
    unsafe {
        let mut sq = ptr::null_mut();
        assert_eq!(omv_build_m_star(1, &mut sq), OmvStatus::Ok);
        let mut rep = ptr::null_mut();
        assert_eq!(omv_spectrum(sq, 0, &mut rep), OmvStatus::Ok);
        let (mut kind, mut mu) = (OmvVerdict::Incomplete, 0);
        omv_report_verdict(rep, &mut kind, &mut mu);
        assert_eq!((kind, mu), (OmvVerdict::NearOmniversal, 3));
        let mut st = OmvLengthStatus::Achieved;
        assert_eq!(omv_report_status(rep, 3, &mut st), OmvStatus::Ok);
        assert_eq!(st, OmvLengthStatus::ProvenAbsent);
        assert_eq!(omv_report_status(rep, 7, &mut st), OmvStatus::OutOfRange);
        omv_report_free(rep);
        omv_square_free(sq);

        let name = CString::new("D8").unwrap();
        let mut g = ptr::null_mut();
        assert_eq!(omv_group_by_name(name.as_ptr(), &mut g), OmvStatus::Ok);
        assert_eq!(omv_group_order(g), 8);
        let mut rep = ptr::null_mut();
        assert_eq!(omv_classify_group(g, 0, &mut rep), OmvStatus::Ok);
        omv_report_verdict(rep, &mut kind, &mut mu);
        assert_eq!((kind, mu), (OmvVerdict::NearOmniversal, 5));
        let mut table = ptr::null_mut();
        assert_eq!(omv_group_cayley_table(g, &mut table), OmvStatus::Ok);
        let mut hash = ptr::null_mut();
        assert_eq!(omv_square_hash(table, &mut hash), OmvStatus::Ok);
        assert_eq!(CStr::from_ptr(hash).to_bytes().len(), 64);
        omv_string_free(hash);
        omv_square_free(table);
        omv_report_free(rep);
        omv_group_free(g);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut sq = ptr::null_mut();
        let good = [0usize, 1, 1, 0];
        assert_eq!(
            omv_square_from_grid(good.as_ptr(), 2, &mut sq),
            OmvStatus::Ok
        );
        omv_square_free(sq);
        let bad = [0usize, 0, 1, 1];
        assert_eq!(
            omv_square_from_grid(bad.as_ptr(), 2, &mut sq),
            OmvStatus::InvalidSquare
        );
        assert!(last_error().contains("duplicate"));
        assert_eq!(
            omv_square_from_grid(ptr::null(), 2, &mut sq),
            OmvStatus::NullPointer
        );
        assert_eq!(omv_build_l_star(0, 0, &mut sq), OmvStatus::InvalidArgument);
        assert_eq!(omv_build_m_star(0, &mut sq), OmvStatus::InvalidArgument);
        let name = CString::new("Z99").unwrap();
        let mut g = ptr::null_mut();
        assert_eq!(
            omv_group_by_name(name.as_ptr(), &mut g),
            OmvStatus::NotFound
        );
        assert!(!last_error().is_empty());
        let text = CString::new("2\n0 1\n1 1\n").unwrap();
        assert_eq!(
            omv_square_parse(text.as_ptr(), &mut sq),
            OmvStatus::InvalidSquare
        );
        assert_eq!(omv_square_order(ptr::null()), 0);
        omv_square_free(ptr::null_mut());
        omv_report_free(ptr::null_mut());
        omv_string_free(ptr::null_mut());
    }
}

#[test]
fn timeouts_still_return_a_report() {
    unsafe {
        let name = CString::new("Z9").unwrap();
        let mut g = ptr::null_mut();
        omv_group_by_name(name.as_ptr(), &mut g);
        let mut table = ptr::null_mut();
        omv_group_cayley_table(g, &mut table);
        let mut rep = ptr::null_mut();
        assert_eq!(omv_spectrum(table, 1, &mut rep), OmvStatus::Timeout);
        assert!(!rep.is_null());
        let (mut kind, mut mu) = (OmvVerdict::Omniversal, 0);
        omv_report_verdict(rep, &mut kind, &mut mu);
        assert_eq!(kind, OmvVerdict::Incomplete);
        omv_report_free(rep);
        omv_square_free(table);
        omv_group_free(g);
    }
}

fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn header_declares_the_interface() {
    let h = std::fs::read_to_string(manifest_dir().join("include/omniversal.h")).unwrap();
    for name in [
        "typedef struct OmvSquare OmvSquare;",
        "OMV_STATUS_NULL_POINTER",
        "OMV_VERDICT_NEAR_OMNIVERSAL",
        "omv_square_from_grid",
        "omv_spectrum",
        "omv_report_witness",
        "omv_last_error_message",
        "omv_string_free",
    ] {
        assert!(h.contains(name), "header lacks {name}");
    }
}

/// Builds the static library, which test builds do not produce.
fn static_library() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    let target = exe.ancestors().nth(3).unwrap().to_path_buf();
    let status = Command::new(env!("CARGO"))
        .args([
            "build",
            "--quiet",
            "--lib",
            "-p",
            "omniversal-ffi",
            "--target-dir",
        ])
        .arg(&target)
        .current_dir(manifest_dir())
        .status()
        .unwrap();
    assert!(status.success());
    let lib = target.join("debug").join("libomniversal_ffi.a");
    assert!(lib.exists(), "missing {}", lib.display());
    lib
}

#[test]
fn c_program_links_against_the_static_library() {
    let lib = static_library();
    let dir = std::env::temp_dir().join(format!("omv-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("smoke.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include "omniversal.h"
int main(void) {
    OmvSquare *sq = NULL;
    OmvReport *rep = NULL;
    if (omv_build_l_star(1, 0, &sq) != OMV_STATUS_OK) return 10;
    if (omv_spectrum(sq, 0, &rep) != OMV_STATUS_OK) return 11;
    OmvVerdict kind; size_t mu;
    omv_report_verdict(rep, &kind, &mu);
    printf("order=%zu verdict=%d\n", omv_square_order(sq), (int)kind);
    omv_report_free(rep);
    omv_square_free(sq);
    return kind == OMV_VERDICT_OMNIVERSAL ? 0 : 12;
}
"#,
    )
    .unwrap();
    let exe = dir.join("smoke");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(manifest_dir().join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("a C compiler named cc");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    assert_eq!(String::from_utf8_lossy(&out.stdout), "order=8 verdict=1\n");
    std::fs::remove_dir_all(dir).ok();
}

use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use gqod_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn preset(name: &str) -> *mut GqodOrder {
    let mut o = ptr::null_mut();
    assert_eq!(unsafe { gqod_order_preset(c(name).as_ptr(), &mut o) }, GqodStatus::Ok);
    o
}

fn term(o: *const GqodOrder, text: &str) -> *mut GqodTerm {
    let mut t = ptr::null_mut();
    assert_eq!(
        unsafe { gqod_term_parse(o, c(text).as_ptr(), &mut t) },
        GqodStatus::Ok,
        "{text}"
    );
    t
}

fn last_error() -> String {
    let p = gqod_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

fn printed(t: *const GqodTerm) -> String {
    unsafe {
        let p = gqod_term_print(t);
        let s = CStr::from_ptr(p).to_str().unwrap().to_string();
        gqod_string_free(p);
        s
    }
}

#[test]
fn parse_print_and_compare() {
    let o = preset("hydra");
    let a = term(o, "x # x");
    let b = term(o, "(rho, rho) # x");
    let mut out = false;
    unsafe {
        assert_eq!(gqod_lll(a, b, &mut out), GqodStatus::Ok);
        assert!(out);
        assert_eq!(gqod_lll(b, a, &mut out), GqodStatus::Ok);
        assert!(!out);
        let p = term(o, &printed(b));
        assert_eq!(printed(p), printed(b));
        let lo = term(o, "(0, 0)");
        let hi = term(o, "(1, 0)");
        assert_eq!(gqod_leq(lo, hi, ptr::null(), &mut out), GqodStatus::Ok);
        assert!(out);
        assert_eq!(gqod_leq(lo, hi, c("nope").as_ptr(), &mut out), GqodStatus::Order);
        assert!(last_error().contains("nope"));
        for t in [a, b, p, lo, hi] {
            gqod_term_free(t);
        }
        gqod_order_free(o);
    }
}

#[test]
fn errors_are_reported() {
    let o = preset("hydra");
    let mut t = ptr::null_mut();
    unsafe {
        assert_eq!(gqod_term_parse(o, c("(0,").as_ptr(), &mut t), GqodStatus::Parse);
        assert!(t.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(
            gqod_term_parse(ptr::null(), c("0").as_ptr(), &mut t),
            GqodStatus::NullArgument
        );
        let mut bad = ptr::null_mut();
        assert_eq!(gqod_order_preset(c("nope").as_ptr(), &mut bad), GqodStatus::Order);
        assert_eq!(
            gqod_order_load(c("[I]\na < b\nb < a\n").as_ptr(), &mut bad),
            GqodStatus::Order
        );
        // A successful call clears the message.
        let ok = term(o, "0");
        assert!(gqod_last_error().is_null());
        let other = preset("hydra");
        let foreign = term(other, "0");
        let mut out = false;
        assert_eq!(gqod_lll(ok, foreign, &mut out), GqodStatus::OrderMismatch);
        gqod_term_free(ok);
        gqod_term_free(foreign);
        gqod_order_free(other);
        gqod_order_free(o);
        gqod_string_free(ptr::null_mut());
    }
}

#[test]
fn terms_outlive_their_order_handle() {
    let o = preset("two-chain");
    let t = term(o, "(1, 0'')");
    unsafe { gqod_order_free(o) };
    assert_eq!(printed(t), "(1, 0'')");
    unsafe { gqod_term_free(t) };
}

#[test]
fn embedding_of_trees_and_forests() {
    let o = preset("hydra");
    let small = term(o, "(0, x)");
    let big = term(o, "(1, (0, x))");
    let forest = term(o, "(2', 0) # (1, (0, x))");
    let mut out = false;
    unsafe {
        assert_eq!(gqod_embeds(small, big, &mut out), GqodStatus::Ok);
        assert!(out);
        assert_eq!(gqod_embeds(big, small, &mut out), GqodStatus::Ok);
        assert!(!out);
        assert_eq!(gqod_embeds(big, forest, &mut out), GqodStatus::Ok);
        assert!(out);
        for t in [small, big, forest] {
            gqod_term_free(t);
        }
        gqod_order_free(o);
    }
}

#[test]
fn games_round_trip_through_replay() {
    let o = preset("hydra");
    let h = term(o, "(0, (2, 0) # (1', 0))");
    for seed in 0..5 {
        let mut outcome = GqodOutcome::Stopped;
        let mut trace = ptr::null_mut();
        unsafe {
            assert_eq!(
                gqod_hydra_play(h, seed, 100, 300, &mut outcome, &mut trace),
                GqodStatus::Ok
            );
            assert_ne!(outcome, GqodOutcome::Stopped);
            let mut steps = usize::MAX;
            assert_eq!(gqod_hydra_replay(o, trace, &mut steps), GqodStatus::Ok);
            assert!(steps <= 100);
            let text = CStr::from_ptr(trace).to_str().unwrap().replace("=> ", "=> 0 # ");
            assert_eq!(gqod_hydra_replay(o, c(&text).as_ptr(), &mut steps), GqodStatus::Trace);
            gqod_string_free(trace);
        }
    }
    let not_hydra = term(o, "(1, (0, 0) # (1', 0))");
    let mut outcome = GqodOutcome::Stopped;
    let status = unsafe { gqod_hydra_play(not_hydra, 0, 10, 10, &mut outcome, ptr::null_mut()) };
    assert_eq!(status, GqodStatus::Game);
    assert!(last_error().contains("path comparable"));
    unsafe {
        gqod_term_free(h);
        gqod_term_free(not_hydra);
        gqod_order_free(o);
    }
}

/// Compiles a C program against the generated header and the static
/// library, if a C compiler is available.
#[test]
fn c_program_links_against_the_static_library() {
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = crate_dir.join("include/gqod.h");
    assert!(std::fs::read_to_string(&header).unwrap().contains("gqod_hydra_play"));
    let deps = std::env::current_exe().unwrap().parent().unwrap().to_path_buf();
    let lib = deps.parent().unwrap().join("libgqod_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no static library or C compiler");
        return;
    }
    let exe = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("gqod_smoke");
    let status = Command::new("cc")
        .arg(crate_dir.join("tests/smoke.c"))
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert!(String::from_utf8_lossy(&out.stdout).contains("replayed"));
}

use std::ffi::CStr;
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use ringcodes_ffi::*;

fn mask(indices: &[u32]) -> u32 {
    indices.iter().map(|i| 1 << (i - 1)).sum()
}

struct Owned(*mut RcCode);

impl Drop for Owned {
    fn drop(&mut self) {
        unsafe { rc_code_free(self.0) }
    }
}

fn build(variant: u32, m: u8, m_set: &[u32], n_set: &[u32]) -> Result<Owned, RcStatus> {
    let mut out = ptr::null_mut();
    let status = unsafe { rc_code_new(variant, m, mask(m_set), mask(n_set), 0, &mut out) };
    if status == RcStatus::Ok {
        assert!(!out.is_null());
        Ok(Owned(out))
    } else {
        assert!(out.is_null());
        Err(status)
    }
}

fn take_string(p: *mut std::ffi::c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned();
    unsafe { rc_string_free(p) };
    s
}

#[test]
fn t1_example_through_handle() {
    let code = build(1, 6, &[2, 3], &[4, 5]).unwrap();
    unsafe {
        assert_eq!(rc_code_length(code.0), 16);
        assert_eq!(rc_code_size(code.0), 4);
        assert_eq!(rc_code_kernel_size(code.0), 1024);
        assert!(!rc_code_is_degenerate(code.0));
        assert_eq!(take_string(rc_code_enumerator(code.0)), "X^32 + 3X^16Y^16");
        let mut params = RcBinaryParams::default();
        assert_eq!(rc_code_binary_params(code.0, &mut params), RcStatus::Ok);
        assert_eq!(params, RcBinaryParams { n: 32, k: 2, d: 16, has_d: true });
    }
}

#[test]
fn weight_distribution_buffer_protocol() {
    let code = build(2, 3, &[1], &[2]).unwrap();
    let mut len = 0usize;
    let status = unsafe { rc_code_weight_distribution(code.0, ptr::null_mut(), ptr::null_mut(), 0, &mut len) };
    assert_eq!(status, RcStatus::BufferTooSmall);
    assert_eq!(len, 3);
    let mut weights = vec![0u32; len];
    let mut counts = vec![0u64; len];
    let status =
        unsafe { rc_code_weight_distribution(code.0, weights.as_mut_ptr(), counts.as_mut_ptr(), len, &mut len) };
    assert_eq!(status, RcStatus::Ok);
    assert_eq!(weights, [0, 12, 16]);
    assert_eq!(counts, [1, 4, 3]);
}

#[test]
fn empty_defining_set_is_degenerate_handle() {
    let code = build(5, 2, &[1, 2], &[1, 2]).unwrap();
    unsafe {
        assert_eq!(rc_code_length(code.0), 0);
        assert_eq!(rc_code_size(code.0), 1);
        assert_eq!(rc_code_kernel_size(code.0), 16);
        assert!(rc_code_is_degenerate(code.0));
        let mut params = RcBinaryParams { n: 9, k: 9, d: 9, has_d: true };
        assert_eq!(rc_code_binary_params(code.0, &mut params), RcStatus::Ok);
        assert!(!params.has_d);
        assert_eq!(params.n, 0);
    }
}

#[test]
fn analysis_json_has_schema_and_certificates() {
    let code = build(2, 5, &[1, 2, 3], &[4]).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { rc_code_analysis_json(code.0, &mut out) }, RcStatus::Ok);
    let doc: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["report"]["spec"], "T2 m=5 M={1,2,3} N={4}");
    let expectations = doc["report"]["expectations"].as_array().unwrap();
    assert!(!expectations.is_empty());
    assert!(expectations.iter().all(|e| e["ok"] == true), "{expectations:?}");
}

#[test]
fn invalid_arguments_report_errors() {
    assert_eq!(build(0, 3, &[1], &[2]).err(), Some(RcStatus::InvalidArgument));
    assert!(last_error().unwrap().contains("variant"));
    assert_eq!(build(6, 3, &[1], &[2]).err(), Some(RcStatus::InvalidArgument));
    let mut out = ptr::null_mut();
    // mask has a bit beyond m
    assert_eq!(unsafe { rc_code_new(1, 3, 0b1000, 0, 0, &mut out) }, RcStatus::InvalidArgument);
    assert_eq!(unsafe { rc_code_new(1, 0, 0, 0, 0, &mut out) }, RcStatus::InvalidArgument);
    assert_eq!(unsafe { rc_code_new(1, 3, 1, 2, 0, ptr::null_mut()) }, RcStatus::NullPointer);
    assert!(last_error().is_some());
    unsafe { rc_code_free(ptr::null_mut()) };
    assert_eq!(unsafe { rc_code_length(ptr::null()) }, 0);
    assert!(unsafe { rc_code_enumerator(ptr::null()) }.is_null());
}

#[test]
fn budget_exceeded_status() {
    let mut out = ptr::null_mut();
    let status = unsafe { rc_code_new(3, 6, mask(&[1, 2]), mask(&[3]), 10, &mut out) };
    assert_eq!(status, RcStatus::BudgetExceeded);
    assert!(out.is_null());
    assert!(last_error().unwrap().contains("budget"));
}

#[test]
fn success_clears_last_error() {
    let _ = build(0, 3, &[1], &[2]);
    assert!(last_error().is_some());
    let mut r = 0u8;
    assert_eq!(unsafe { rc_ring_add(1, 2, &mut r) }, RcStatus::Ok);
    assert!(last_error().is_none());
}

#[test]
fn ring_operations_match_tables() {
    // rows 0, a, b, c; entries coded 0..3
    let add = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]];
    let mul = [[0, 0, 0, 0], [0, 2, 0, 2], [0, 0, 0, 0], [0, 2, 0, 2]];
    for x in 0..4u8 {
        for y in 0..4u8 {
            let mut r = 9u8;
            assert_eq!(unsafe { rc_ring_add(x, y, &mut r) }, RcStatus::Ok);
            assert_eq!(r, add[x as usize][y as usize]);
            assert_eq!(unsafe { rc_ring_mul(x, y, &mut r) }, RcStatus::Ok);
            assert_eq!(r, mul[x as usize][y as usize]);
        }
    }
    let mut r = 0u8;
    assert_eq!(unsafe { rc_ring_add(4, 0, &mut r) }, RcStatus::InvalidArgument);
}

#[test]
fn griesmer_through_ffi() {
    let mut g = RcGriesmerCheck { sum_at_d: 0, sum_at_d_plus_1: 0, status: RcGriesmerStatus::Inconclusive };
    assert_eq!(unsafe { rc_griesmer_check(3072, 9, 1536, &mut g) }, RcStatus::Ok);
    assert_eq!((g.sum_at_d, g.sum_at_d_plus_1), (3066, 3075));
    assert_eq!(g.status, RcGriesmerStatus::CertifiedOptimal);
    assert_eq!(unsafe { rc_griesmer_check(7, 3, 4, &mut g) }, RcStatus::Ok);
    assert_eq!(g.status, RcGriesmerStatus::GriesmerCode);
    assert_eq!(unsafe { rc_griesmer_check(32, 2, 16, &mut g) }, RcStatus::Ok);
    assert_eq!(g.status, RcGriesmerStatus::Inconclusive);
    assert_eq!(unsafe { rc_griesmer_check(5, 3, 4, &mut g) }, RcStatus::Ok);
    assert_eq!(g.status, RcGriesmerStatus::InfeasibleParameters);
    assert_eq!(unsafe { rc_griesmer_check(5, 0, 4, &mut g) }, RcStatus::InvalidArgument);
}

fn header_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include").join("ringcodes.h")
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(header_path()).unwrap();
    for symbol in [
        "rc_code_new",
        "rc_code_free",
        "rc_code_length",
        "rc_code_size",
        "rc_code_kernel_size",
        "rc_code_is_degenerate",
        "rc_code_weight_distribution",
        "rc_code_binary_params",
        "rc_code_enumerator",
        "rc_code_analysis_json",
        "rc_griesmer_check",
        "rc_ring_add",
        "rc_ring_mul",
        "rc_last_error_message",
        "rc_string_free",
        "typedef struct RcCode RcCode;",
        "RC_STATUS_OK = 0",
        "RC_STATUS_BUDGET_EXCEEDED = 3",
        "RC_GRIESMER_STATUS_CERTIFIED_OPTIMAL",
    ] {
        assert!(header.contains(symbol), "header lacks {symbol}");
    }
    assert!(!header.contains("last_error("), "Rust-only helper leaked into the header");
}

#[test]
fn header_compiles_as_c() {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let src = "#include \"ringcodes.h\"\nint main(void) { RcCode *c = 0; return (int)rc_code_length(c); }\n";
    let dir = std::env::temp_dir().join(format!("ringcodes-hdr-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("probe.c");
    std::fs::write(&file, src).unwrap();
    let result = Command::new(&cc)
        .arg("-fsyntax-only")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(header_path().parent().unwrap())
        .arg(&file)
        .output();
    let _ = std::fs::remove_dir_all(&dir);
    match result {
        Ok(out) => assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr)),
        Err(e) => eprintln!("skipping: no C compiler ({e})"),
    }
}

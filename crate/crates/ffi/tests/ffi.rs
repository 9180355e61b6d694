use std::ffi::CStr;
use std::ptr;

use peano::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(peano_last_error()) }.to_string_lossy().into_owned()
}

fn carpet(depth: u32) -> *mut PeanoContinuum {
    let mut x = ptr::null_mut();
    assert_eq!(unsafe { peano_continuum_generate(PeanoShape::Carpet, depth, &mut x) }, PeanoStatus::Ok);
    x
}

#[test]
fn generate_and_inspect() {
    let x = carpet(1);
    unsafe {
        assert_eq!(peano_continuum_cell_count(x), 8);
        assert_eq!(peano_continuum_resolution_level(x), 1);
        let (mut cx, mut cy) = (f64::NAN, f64::NAN);
        assert_eq!(peano_continuum_cell(x, 0, &mut cx, &mut cy), PeanoStatus::Ok);
        assert_eq!((cx, cy), (0.0, 0.0));
        assert_eq!(peano_continuum_cell(x, 8, &mut cx, &mut cy), PeanoStatus::InvalidArgument);
        assert!(last_error().contains("no cell 8"));
        peano_continuum_free(x);
    }
}

#[test]
fn invalid_shapes_and_nulls() {
    let mut x = ptr::null_mut();
    unsafe {
        assert_eq!(peano_continuum_generate(PeanoShape::Carpet, 9, &mut x), PeanoStatus::InvalidArgument);
        assert!(x.is_null());
        assert_eq!(peano_continuum_generate(PeanoShape::Square, 2, ptr::null_mut()), PeanoStatus::NullPointer);
        assert_eq!(peano_continuum_cell_count(ptr::null()), 0);
        let mut c = ptr::null_mut();
        assert_eq!(peano_assemble(ptr::null(), 4.0, 1.0, 3, &mut c), PeanoStatus::NullPointer);
        peano_continuum_free(ptr::null_mut());
        peano_curve_free(ptr::null_mut());
        peano_string_free(ptr::null_mut());
    }
}

#[test]
fn bitmaps() {
    let mut x = ptr::null_mut();
    let line = b"P1\n3 1\n1 1 1\n";
    unsafe {
        assert_eq!(peano_continuum_from_pnm(line.as_ptr(), line.len(), 127, &mut x), PeanoStatus::Ok);
        assert_eq!(peano_continuum_cell_count(x), 3);
        peano_continuum_free(x);
        let split = b"P1\n3 1\n1 0 1\n";
        let mut y = ptr::null_mut();
        assert_eq!(peano_continuum_from_pnm(split.as_ptr(), split.len(), 127, &mut y), PeanoStatus::Disconnected);
        let blank = b"P2\n2 1\n255\n0 0\n";
        assert_eq!(peano_continuum_from_pnm(blank.as_ptr(), blank.len(), 127, &mut y), PeanoStatus::Empty);
        let junk = b"junk";
        assert_eq!(peano_continuum_from_pnm(junk.as_ptr(), junk.len(), 127, &mut y), PeanoStatus::Raster);
    }
}

#[test]
fn assemble_carpet() {
    let x = carpet(2);
    unsafe {
        let mut c = ptr::null_mut();
        assert_eq!(peano_assemble(x, 4.0, 1.0, 5, &mut c), PeanoStatus::Ok);
        assert!(peano_curve_passed(c));
        assert_eq!(peano_curve_coverage(c), 1.0);
        let n = peano_curve_breakpoint_count(c);
        assert!(n > 64);
        let (mut t, mut cell) = (0.0, 0usize);
        assert_eq!(peano_curve_breakpoint(c, n - 1, &mut t, &mut cell), PeanoStatus::Ok);
        assert_eq!(t, peano_curve_length(c));
        assert_eq!(peano_curve_breakpoint(c, n, &mut t, &mut cell), PeanoStatus::InvalidArgument);

        let json = peano_curve_certificate_json(c);
        let text = CStr::from_ptr(json).to_str().unwrap().to_owned();
        peano_string_free(json);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["passed"], true);

        let dir = tempfile::tempdir().unwrap();
        let path = std::ffi::CString::new(dir.path().join("c.csv").to_str().unwrap()).unwrap();
        assert_eq!(peano_curve_write_csv(x, c, path.as_ptr()), PeanoStatus::Ok);
        let csv = std::fs::read_to_string(dir.path().join("c.csv")).unwrap();
        assert_eq!(csv.lines().count(), n + 2);

        assert_eq!(peano_assemble(x, -1.0, 1.0, 5, &mut c), PeanoStatus::InvalidArgument);
        peano_curve_free(c);
        peano_continuum_free(x);
    }
}

#[test]
fn dimensions_and_bounds() {
    let x = carpet(3);
    unsafe {
        let mut r = 0.0;
        assert_eq!(peano_estimate_sdim(x, 0, &mut r), PeanoStatus::Ok);
        assert!((r - 8f64.ln() / 3f64.ln()).abs() < 0.3);
        peano_continuum_free(x);
        let mut b = 0.0;
        assert_eq!(peano_holder_bound(1.0, 1.0, 4.0, &mut b), PeanoStatus::Ok);
        assert!((b / (134_217_728.0 / 21.0) - 1.0).abs() < 1e-12);
        assert_eq!(peano_holder_bound(1.0, 2.0, 4.0, &mut b), PeanoStatus::DivergentSeries);
        assert!(!last_error().is_empty());
    }
}

#[test]
fn header_is_generated() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/peano.h")).unwrap();
    for name in [
        "PeanoContinuum",
        "PeanoCurve",
        "PEANO_STATUS_OK",
        "peano_assemble",
        "peano_last_error",
        "peano_curve_certificate_json",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}

use std::ffi::CStr;
use std::ptr;

use graceful_ffi::*;

struct Shape(*mut GfShape);

impl Shape {
    fn parse(text: &CStr) -> Self {
        let mut raw = ptr::null_mut();
        assert_eq!(
            unsafe { gf_shape_parse(text.as_ptr(), &mut raw) },
            GfStatus::Ok
        );
        Self(raw)
    }
}

impl Drop for Shape {
    fn drop(&mut self) {
        unsafe { gf_shape_free(self.0) };
    }
}

fn last_error() -> String {
    let p = gf_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn shape_handles() {
    let s = Shape::parse(c"2,3,4");
    unsafe {
        assert_eq!(gf_shape_levels(s.0), 4);
        assert_eq!(gf_shape_vertex_count(s.0), 33);
        assert_eq!(gf_shape_edge_count(s.0), 32);
        let mut h = 0;
        assert_eq!(gf_shape_level_size(s.0, 2, &mut h), GfStatus::Ok);
        assert_eq!(h, 16);
        assert_eq!(gf_shape_level_size(s.0, 5, &mut h), GfStatus::OutOfRange);
        assert_eq!(gf_shape_vertex_count(ptr::null()), 0);
    }

    let mut raw = ptr::null_mut();
    let ks = [2u64, 3, 4];
    assert_eq!(
        unsafe { gf_shape_new(ks.as_ptr(), ks.len(), &mut raw) },
        GfStatus::Ok
    );
    assert_eq!(unsafe { gf_shape_vertex_count(raw) }, 33);
    unsafe { gf_shape_free(raw) };

    assert_eq!(
        unsafe { gf_shape_new(ptr::null(), 0, &mut raw) },
        GfStatus::Ok
    );
    assert_eq!(unsafe { gf_shape_vertex_count(raw) }, 1);
    unsafe { gf_shape_free(raw) };
    unsafe { gf_shape_free(ptr::null_mut()) };
}

#[test]
fn construction_errors() {
    let mut raw = ptr::null_mut();
    assert_eq!(
        unsafe { gf_shape_parse(c"2,0,4".as_ptr(), &mut raw) },
        GfStatus::Parse
    );
    assert!(last_error().contains("positive"));
    let twos = [2u64; 64];
    assert_eq!(
        unsafe { gf_shape_new(twos.as_ptr(), 64, &mut raw) },
        GfStatus::Capacity
    );
    assert_eq!(
        unsafe { gf_shape_parse(ptr::null(), &mut raw) },
        GfStatus::NullPointer
    );
    assert_eq!(
        unsafe { gf_shape_new(ptr::null(), 3, &mut raw) },
        GfStatus::NullPointer
    );
}

#[test]
fn labels_and_inversion() {
    let s = Shape::parse(c"2,3,4");
    let mut out = 0;
    unsafe {
        assert_eq!(gf_label_vertex(s.0, ptr::null(), 0, &mut out), GfStatus::Ok);
        assert_eq!(out, 0);
        let v = [1u64, 2, 3];
        assert_eq!(gf_label_vertex(s.0, v.as_ptr(), 3, &mut out), GfStatus::Ok);
        assert_eq!(out, 2);
        assert_eq!(gf_edge_label(s.0, v.as_ptr(), 3, &mut out), GfStatus::Ok);
        assert_eq!(out, 25);
        assert_eq!(
            gf_edge_label(s.0, ptr::null(), 0, &mut out),
            GfStatus::InvalidVertex
        );
        let bad = [2u64];
        assert_eq!(
            gf_label_vertex(s.0, bad.as_ptr(), 1, &mut out),
            GfStatus::InvalidVertex
        );
        assert!(last_error().contains("x_1"));

        let mut edges = [0u64; 4];
        let mut len = 0;
        assert_eq!(
            gf_invert_label(s.0, 32, edges.as_mut_ptr(), 4, &mut len),
            GfStatus::Ok
        );
        assert_eq!(&edges[..len], &[0]);
        assert_eq!(
            gf_invert_label(s.0, 10, edges.as_mut_ptr(), 4, &mut len),
            GfStatus::Ok
        );
        assert_eq!(&edges[..len], &[1, 1, 0]);
        assert_eq!(
            gf_invert_label(s.0, 0, ptr::null_mut(), 0, &mut len),
            GfStatus::Ok
        );
        assert_eq!(len, 0);
        assert_eq!(
            gf_invert_label(s.0, 10, edges.as_mut_ptr(), 2, &mut len),
            GfStatus::BufferTooSmall
        );
        assert_eq!(len, 3);
        assert_eq!(
            gf_invert_label(s.0, 33, edges.as_mut_ptr(), 4, &mut len),
            GfStatus::OutOfRange
        );
    }
}

#[test]
fn bulk_labels_and_verification() {
    let s = Shape::parse(c"2,3,4");
    let mut labels = vec![0u64; 33];
    let mut len = 0;
    unsafe {
        assert_eq!(
            gf_label_all(s.0, labels.as_mut_ptr(), 33, &mut len),
            GfStatus::Ok
        );
    }
    assert_eq!(len, 33);
    assert_eq!(&labels[..4], &[0, 32, 16, 1]);

    let mut report = GfVerifyReport::default();
    assert_eq!(unsafe { gf_verify(s.0, &mut report) }, GfStatus::Ok);
    assert!(report.graceful && report.weak_feasible && report.claim_holds);
    assert_eq!(
        (report.weak_k_lo, report.weak_k_hi, report.claimed_k),
        (16, 16, 16)
    );

    let mut path = [0u64; 7];
    unsafe {
        assert_eq!(
            gf_canonical_path_labelling(7, path.as_mut_ptr(), 7, &mut len),
            GfStatus::Ok
        );
        assert_eq!(path, [0, 6, 1, 5, 2, 4, 3]);
        assert_eq!(
            gf_canonical_path_labelling(9, path.as_mut_ptr(), 7, &mut len),
            GfStatus::BufferTooSmall
        );
        assert_eq!(len, 9);
    }
}

#[test]
fn status_strings() {
    let s = unsafe { CStr::from_ptr(gf_status_str(GfStatus::BufferTooSmall)) };
    assert_eq!(s.to_str().unwrap(), "output buffer too small");
    let v = unsafe { CStr::from_ptr(gf_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

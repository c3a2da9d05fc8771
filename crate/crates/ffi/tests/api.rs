use std::ffi::{CStr, CString};
use std::ptr;

use wedgework_ffi::*;

unsafe fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_owned();
    ww_string_free(p);
    s
}

unsafe fn last_error() -> String {
    let p = ww_last_error();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_string_lossy().into_owned()
}

#[test]
fn family_round_trip() {
    unsafe {
        let mut w = ptr::null_mut();
        assert_eq!(ww_gen_family(1, &mut w), WwStatus::Ok);
        assert_eq!(ww_wedge_m(w), 8);

        let mut text = ptr::null_mut();
        assert_eq!(ww_wedge_serialize(w, &mut text), WwStatus::Ok);
        let text = take_string(text);
        assert_eq!(
            text,
            "wedge 1\nm 8\nbeam red T2 B3 T3 B4\nbeam blue T1 B1 T2 B2\n"
        );

        let mut s = ptr::null_mut();
        assert_eq!(ww_expand(w, &mut s), WwStatus::Ok);
        assert_eq!(ww_structure_curve_count(s), 25);
        assert_eq!(ww_structure_vertex_count(s), 81);
        assert_eq!(ww_structure_alpha(s), 1);

        let mut valid = false;
        assert_eq!(ww_structure_validate(s, &mut valid), WwStatus::Ok);
        assert!(valid);

        let mut st = ptr::null_mut();
        assert_eq!(ww_structure_stats(s, &mut st), WwStatus::Ok);
        assert_eq!((ww_stats_n(st), ww_stats_r(st)), (25, 10));
        let (mut p1, mut p2, mut pairs) = (false, false, false);
        assert_eq!(ww_audit_thm3(st, &mut p1, &mut p2), WwStatus::Ok);
        assert_eq!(ww_audit_pairs(st, &mut pairs), WwStatus::Ok);
        assert!(p1 && p2 && pairs);
        let total: usize = (0..=25).map(|d| ww_stats_l(st, d)).sum();
        assert_eq!(total, 300);

        let mut window = WwDyadicWindow::default();
        assert_eq!(ww_audit_dyadic(st, 1, 2, 0, &mut window), WwStatus::Ok);
        assert_eq!(window.below + window.inside + window.above, 300);
        ww_stats_free(st);

        let mut report = WwDiracReport::default();
        assert_eq!(ww_audit_dirac(s, 1000, &mut report), WwStatus::Ok);
        assert!(report.hypothesis_holds && report.g_ge_h && report.binomial_holds);
        assert_eq!((report.g, report.h), (10, 8));

        let mut acc = ptr::null_mut();
        assert_eq!(ww_structure_serialize(s, &mut acc), WwStatus::Ok);
        let acc = CString::new(take_string(acc)).unwrap();
        let mut back = ptr::null_mut();
        assert_eq!(ww_structure_parse(acc.as_ptr(), &mut back), WwStatus::Ok);
        assert_eq!(ww_structure_vertex_count(back), 81);
        ww_structure_free(back);

        let mut svg = ptr::null_mut();
        assert_eq!(ww_render_arrangement(w, &mut svg), WwStatus::Ok);
        assert_eq!(take_string(svg).matches("<polyline").count(), 25);
        assert_eq!(ww_render_wedge(w, &mut svg), WwStatus::Ok);
        assert_eq!(take_string(svg).matches("<polyline").count(), 2);

        ww_structure_free(s);
        ww_wedge_free(w);
    }
}

#[test]
fn vertex_buffers() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(ww_gen_near_pencil(5, &mut s), WwStatus::Ok);
        let mut buf = [0u32; 8];
        let mut len = 0;
        assert_eq!(
            ww_structure_vertex(s, 0, buf.as_mut_ptr(), buf.len(), &mut len),
            WwStatus::Ok
        );
        assert_eq!(&buf[..len], &[0, 1, 2, 3]);
        assert_eq!(
            ww_structure_vertex(s, 0, buf.as_mut_ptr(), 2, &mut len),
            WwStatus::OutOfRange
        );
        assert_eq!(len, 4);
        assert_eq!(
            ww_structure_vertex(s, 99, buf.as_mut_ptr(), 8, &mut len),
            WwStatus::OutOfRange
        );
        ww_structure_free(s);
    }
}

#[test]
fn generators_and_branches() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(ww_gen_pg2(3, 0, 0, true, &mut s), WwStatus::Ok);
        let mut st = ptr::null_mut();
        assert_eq!(ww_structure_stats(s, &mut st), WwStatus::Ok);
        assert_eq!((ww_stats_t(st, 4), ww_stats_r(st)), (13, 4));
        ww_stats_free(st);
        ww_structure_free(s);

        assert_eq!(ww_gen_pencil(4, &mut s), WwStatus::Ok);
        let mut mask = 0;
        assert_eq!(ww_audit_dichotomy(s, 1, 2, 1000, &mut mask), WwStatus::Ok);
        assert_eq!(
            mask,
            WW_BRANCH_COMPLETE_PENCIL | WW_BRANCH_LARGE_COVERAGE | WW_BRANCH_MANY_VERTICES
        );
        let mut report = WwDiracReport::default();
        assert_eq!(ww_audit_dirac(s, 1000, &mut report), WwStatus::Ok);
        assert!(!report.hypothesis_holds);
        ww_structure_free(s);

        assert_eq!(ww_gen_simple(6, &mut s), WwStatus::Ok);
        assert_eq!(ww_audit_dichotomy(s, 1, 2, 1000, &mut mask), WwStatus::Ok);
        assert_eq!(mask, WW_BRANCH_MANY_VERTICES);
        ww_structure_free(s);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut s = ptr::null_mut();
        let bad = CString::new("acc 1\nalpha 1\nlines 3\nv 0 7\n").unwrap();
        assert_eq!(
            ww_structure_parse(bad.as_ptr(), &mut s),
            WwStatus::ParseError
        );
        assert!(s.is_null());
        assert!(last_error().contains("line 4"));

        assert_eq!(
            ww_structure_parse(ptr::null(), &mut s),
            WwStatus::NullArgument
        );
        assert_eq!(
            ww_gen_pg2(4, 3, 0, false, &mut s),
            WwStatus::InvalidArgument
        );
        assert!(last_error().contains("not prime"));
        assert_eq!(ww_gen_pencil(2, &mut s), WwStatus::InvalidArgument);
        let mut w = ptr::null_mut();
        assert_eq!(ww_gen_family(0, &mut w), WwStatus::InvalidArgument);

        let invalid = CString::new("acc 1\nalpha 1\nlines 3\nv 0 1\nv 0 2\n").unwrap();
        assert_eq!(ww_structure_parse(invalid.as_ptr(), &mut s), WwStatus::Ok);
        assert!(ww_last_error().is_null());
        let mut valid = true;
        assert_eq!(ww_structure_validate(s, &mut valid), WwStatus::Ok);
        assert!(!valid);
        assert!(!last_error().is_empty());
        let mut st = ptr::null_mut();
        assert_eq!(ww_structure_stats(s, &mut st), WwStatus::InvalidStructure);
        let mut report = WwDiracReport::default();
        assert_eq!(
            ww_audit_dirac(s, 10, &mut report),
            WwStatus::InvalidStructure
        );
        ww_structure_free(s);

        assert_eq!(ww_gen_simple(30, &mut s), WwStatus::Ok);
        let mut mask = 0;
        assert_eq!(
            ww_audit_dichotomy(s, 0, 1, 10, &mut mask),
            WwStatus::InvalidArgument
        );
        ww_structure_free(s);

        let open = CString::new("wedge 1\nm 3\nbeam a T1\n").unwrap();
        assert_eq!(ww_wedge_parse(open.as_ptr(), &mut w), WwStatus::Ok);
        assert_eq!(ww_expand(w, &mut s), WwStatus::ExpansionFailed);
        let mut svg = ptr::null_mut();
        assert_eq!(
            ww_render_arrangement(w, &mut svg),
            WwStatus::ExpansionFailed
        );
        ww_wedge_free(w);

        ww_structure_free(ptr::null_mut());
        ww_wedge_free(ptr::null_mut());
        ww_stats_free(ptr::null_mut());
        ww_string_free(ptr::null_mut());
        assert_eq!(ww_structure_curve_count(ptr::null()), 0);
    }
}

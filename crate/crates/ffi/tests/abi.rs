//! Exercise the C entry points the way a foreign caller would.

use std::ffi::CString;
use std::ptr;

use hullkit_ffi::*;

#[test]
fn region_handle_lifecycle() {
    let json = CString::new(r#"{"dimension": 4, "region": {"complement": {"point": [0,0,0,0]}}}"#)
        .unwrap();
    let mut region: *mut HullkitRegion = ptr::null_mut();
    unsafe {
        assert_eq!(hullkit_region_parse(json.as_ptr(), &mut region), HullkitStatus::Ok);
        let mut dim = 0usize;
        assert_eq!(hullkit_region_dimension(region, &mut dim), HullkitStatus::Ok);
        assert_eq!(dim, 4);
        let mut inside = false;
        let p = [1.0, 0.0, 0.0, 0.0];
        assert_eq!(
            hullkit_region_contains(region, p.as_ptr(), 4, &mut inside),
            HullkitStatus::Ok
        );
        assert!(inside);

        // z = (i/2, 0, 0, 0) is certified; z = (1, i, 0, 0) hits the puncture
        let mut verdict = HullkitVerdict::ConeFailsObstacle;
        let z_re = [0.0, 0.0, 0.0, 0.0];
        let z_im = [0.5, 0.0, 0.0, 0.0];
        assert_eq!(
            hullkit_hull_membership(region, z_re.as_ptr(), z_im.as_ptr(), p.as_ptr(), 4, 64, &mut verdict),
            HullkitStatus::Ok
        );
        assert_eq!(verdict, HullkitVerdict::MemberCertified);

        let z_re = [1.0, 0.0, 0.0, 0.0];
        let z_im = [0.0, 1.0, 0.0, 0.0];
        assert_eq!(
            hullkit_hull_membership(region, z_re.as_ptr(), z_im.as_ptr(), p.as_ptr(), 4, 64, &mut verdict),
            HullkitStatus::Ok
        );
        assert_eq!(verdict, HullkitVerdict::ConeFailsObstacle);

        hullkit_region_free(region);
    }
}

#[test]
fn bad_region_json_reports_message() {
    let json = CString::new("{ not json").unwrap();
    let mut region: *mut HullkitRegion = ptr::null_mut();
    unsafe {
        assert_eq!(
            hullkit_region_parse(json.as_ptr(), &mut region),
            HullkitStatus::BadInput
        );
        let msg = std::ffi::CStr::from_ptr(hullkit_last_error());
        assert!(!msg.to_bytes().is_empty());
    }
}

#[test]
fn incidence_through_ffi() {
    let z_re = [0.0; 4];
    let z_im = [0.0; 4];
    let zp_re = [1.0, 0.0, 0.0, 0.0];
    let zp_im = [0.0, 1.0, 0.0, 0.0];
    let mut intersect = false;
    let (mut dre, mut dim) = (1.0f64, 1.0f64);
    unsafe {
        assert_eq!(
            hullkit_lines_intersect(
                z_re.as_ptr(),
                z_im.as_ptr(),
                zp_re.as_ptr(),
                zp_im.as_ptr(),
                &mut intersect,
                &mut dre,
                &mut dim
            ),
            HullkitStatus::Ok
        );
    }
    assert!(intersect);
    assert!(dre.abs() < 1e-14 && dim.abs() < 1e-14);
}

#[test]
fn bateman_eval_through_ffi() {
    let name = CString::new("st_over_zeta").unwrap();
    let mut f: *mut HullkitIntegrand = ptr::null_mut();
    unsafe {
        assert_eq!(hullkit_integrand_parse(name.as_ptr(), &mut f), HullkitStatus::Ok);
        let z_re = [1.0, 0.0, 0.0, 0.0];
        let z_im = [0.0; 4];
        let (mut re, mut im) = (1.0f64, 1.0f64);
        assert_eq!(
            hullkit_bateman_eval(f, 0.0, 0.0, 1.0, 64, z_re.as_ptr(), z_im.as_ptr(), &mut re, &mut im),
            HullkitStatus::Ok
        );
        assert!(re.abs() < 1e-12 && im.abs() < 1e-12);
        hullkit_integrand_free(f);
    }
}

#[test]
fn monodromy_through_ffi() {
    let (mut re, mut im) = (0.0f64, 0.0f64);
    unsafe {
        assert_eq!(
            hullkit_newtonian_monodromy(0.0, 1.0, 0.5, 400, &mut re, &mut im),
            HullkitStatus::Ok
        );
    }
    assert!((re + 1.0).abs() < 1e-8 && im.abs() < 1e-8);
}

#[test]
fn reduced_hull_through_ffi() {
    let obstacle = [0.0f64; 3];
    let mut member = false;
    unsafe {
        // purely imaginary z has (z - x)^2 < 0: excluded
        let z_re = [0.0; 3];
        let z_im = [0.0, 2.0, 0.0];
        assert_eq!(
            hullkit_reduced_hull_member(z_re.as_ptr(), z_im.as_ptr(), obstacle.as_ptr(), &mut member),
            HullkitStatus::Ok
        );
        assert!(!member);

        let z_re = [1.0, 1.0, 0.0];
        let z_im = [0.0, 1.0, 0.0];
        assert_eq!(
            hullkit_reduced_hull_member(z_re.as_ptr(), z_im.as_ptr(), obstacle.as_ptr(), &mut member),
            HullkitStatus::Ok
        );
        assert!(member);
    }
}

#[test]
fn pqp_rank_through_ffi() {
    let mut rank = 0usize;
    unsafe {
        assert_eq!(hullkit_pqp_rank(2, 5, 7, &mut rank), HullkitStatus::Ok);
    }
    assert_eq!(rank, 14);
}

#[test]
fn null_pointers_are_rejected() {
    let mut out = false;
    unsafe {
        assert_eq!(
            hullkit_region_contains(ptr::null(), ptr::null(), 0, &mut out),
            HullkitStatus::NullPointer
        );
    }
}

use cubicgap_certify::{
    certify_gap, certify_touchpoint, exact_eigenpairs, verify_transpose_symmetry, CertifyError, EndpointKind,
    GapCertificate, TouchAngle,
};
use cubicgap_cover::families::{wbar_a, wbar_b};
use num_bigint::BigInt;
use num_traits::Signed;

#[test]
fn certificate_round_trips_through_disk() {
    let dir = tempfile::tempdir().unwrap();
    for (p, target) in [(wbar_b(), (-1.0, 1.0)), (wbar_a(), (-2.0, 0.0))] {
        let cert = certify_gap(&p, target, 256).unwrap();
        let path = dir.path().join(format!("{}.json", cert.cover_id));
        cert.save(&path).unwrap();
        let back = GapCertificate::load(&path).unwrap();
        assert_eq!(back, cert);
        back.reverify().unwrap();
    }
}

#[test]
fn tampered_certificates_fail() {
    let cert = certify_gap(&wbar_b(), (-1.0, 1.0), 256).unwrap();
    let json = cert.to_json();

    let mut wrong_vector = cert.clone();
    wrong_vector.eigenpairs[0].vector[0] += BigInt::from(1);
    assert!(wrong_vector.reverify().is_err());

    let mut wrong_id = cert.clone();
    wrong_id.cover_id = "0000000000000000".into();
    assert!(wrong_id.reverify().is_err());

    let edited = json.replacen("\"-1\"", "\"-2\"", 1);
    let parsed: GapCertificate = serde_json::from_str(&edited).unwrap();
    assert!(parsed.reverify().is_err());
}

#[test]
fn second_cover_vectors_stay_small() {
    let pairs = exact_eigenpairs(&wbar_a(), TouchAngle::Zero).unwrap();
    assert_eq!(pairs.len(), 6);
    let largest = pairs.iter().flat_map(|p| p.vector.iter()).map(|x| x.abs()).max().unwrap();
    assert!(largest <= BigInt::from(2));
    certify_touchpoint(&wbar_a(), TouchAngle::Zero, &pairs).unwrap();
}

#[test]
fn refusals_are_reported() {
    let mut pairs = exact_eigenpairs(&wbar_b(), TouchAngle::Pi).unwrap();
    pairs.pop();
    match certify_touchpoint(&wbar_b(), TouchAngle::Pi, &pairs) {
        Err(CertifyError::Refused { .. }) | Err(CertifyError::Incomplete(_)) => {}
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn transpose_symmetry_at_touch_angles() {
    for p in [wbar_b(), wbar_a()] {
        for angle in [TouchAngle::Zero, TouchAngle::Pi] {
            assert!(verify_transpose_symmetry(&p, angle.radians(), &[0.1, 0.7, 2.0]).unwrap());
        }
        assert!(!verify_transpose_symmetry(&p, 1.0, &[0.1, 0.7]).unwrap());
    }
}

#[test]
fn second_cover_gaps_have_expected_endpoints() {
    let p = wbar_a();
    let cert = certify_gap(&p, (-2.0, 0.0), 256).unwrap();
    let [lo, hi] = cert.gap.unwrap();
    assert_eq!((lo.kind, hi.kind), (EndpointKind::FlatBand, EndpointKind::FlatBand));
    let s17 = 17f64.sqrt();
    let cert = certify_gap(&p, ((s17 - 1.0) / 2.0, 2.0), 256).unwrap();
    let [lo, _] = cert.gap.unwrap();
    assert_eq!(lo.kind, EndpointKind::TouchEigenvalue);
    assert!((lo.value.to_f64() - (s17 - 1.0) / 2.0).abs() < 1e-12);
}

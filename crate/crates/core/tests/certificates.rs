use symskew::criteria::{self, CriterionId, SearchPool, Variant};
use symskew::decompose::{self, Certificate, CertificateVerdict, DecomposeError, Factor, GenericXsy, Scheme, Tag};
use symskew::{FieldDescriptor, InvolutiveAlgebra, Involution};

fn mat(field: FieldDescriptor, n: usize, inv: Involution) -> InvolutiveAlgebra {
    InvolutiveAlgebra::matrices(field, n, inv).unwrap()
}

fn fields() -> [FieldDescriptor; 2] {
    [FieldDescriptor::rationals(), FieldDescriptor::prime(5).unwrap()]
}

fn round_trip(cert: &Certificate) {
    let text = serde_json::to_string(&cert.to_json()).unwrap();
    let back = Certificate::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
    assert_eq!(&back, cert);
    assert!(decompose::verify_certificate(&back).is_valid());
}

#[test]
fn s3_and_s2_over_both_fields() {
    for field in fields() {
        let alg = mat(field, 4, Involution::Transpose);
        let (x, y) = criteria::paper_witness(&alg, "s3_transpose_even").unwrap();
        for seed in 1..=100 {
            let r = decompose::random_target(&alg, seed);
            round_trip(&decompose::decompose_s3(&alg, &x, &y, &r).unwrap());
            let s2 = decompose::decompose_s2(&alg, &x, &y, &r, &GenericXsy).unwrap();
            assert!(s2.terms.len() <= 1 + s2.m.unwrap() + 4);
            round_trip(&s2);
        }
    }
}

#[test]
fn s2_on_symplectic_m4_with_searched_witness() {
    let alg = mat(FieldDescriptor::rationals(), 4, Involution::Symplectic);
    let found = criteria::witness_search(&alg, CriterionId::Aux(Variant::H2), SearchPool::BasisSumsDifferences, None)
        .unwrap()
        .outcome
        .expect("h2 witness on M4 symplectic");
    for seed in 1..=20 {
        let r = decompose::random_target(&alg, seed);
        let xsy = decompose::default_xsy_decomposer(&found.x, &found.y);
        round_trip(&decompose::decompose_s2(&alg, &found.x, &found.y, &r, xsy.as_ref()).unwrap());
    }
}

#[test]
fn skew_chains() {
    for field in fields() {
        let m2 = mat(field, 2, Involution::Symplectic);
        let (x, y) = criteria::paper_witness(&m2, "k_k2_symplectic_m2").unwrap();
        for seed in 1..=50 {
            let r = decompose::random_target(&m2, seed);
            round_trip(&decompose::decompose_k_chain(&m2, &x, &y, &r, Scheme::KPlusK2).unwrap());
        }
        let m4 = mat(field, 4, Involution::Transpose);
        let x = m4.e(1, 2) - m4.e(2, 1);
        let y = m4.e(1, 3) - m4.e(3, 1) + m4.e(2, 4) - m4.e(4, 2);
        for seed in 1..=50 {
            let r = decompose::random_target(&m4, seed);
            let cert = decompose::decompose_k_chain(&m4, &x, &y, &r, Scheme::KPlusK2K3).unwrap();
            assert!(cert.terms.len() <= 4);
            round_trip(&cert);
        }
    }
}

#[test]
fn k_plus_k2_obstructed_on_transpose_m2() {
    let alg = mat(FieldDescriptor::rationals(), 2, Involution::Transpose);
    // K is one-dimensional, so x y + y x is never invertible for x, y ∈ K ∖ 0 unless
    // x = c·y; even then x S y leaves K^2 = scalars.
    let k = alg.e(1, 2) - alg.e(2, 1);
    let r = decompose::random_target(&alg, 1);
    let err = decompose::decompose_k_chain(&alg, &k, &k, &r, Scheme::KPlusK2).unwrap_err();
    assert!(matches!(err, DecomposeError::Obstructed(ref m) if m.contains("K^2")), "{err}");
}

#[test]
fn odd_transpose_has_no_inverse() {
    let alg = mat(FieldDescriptor::rationals(), 3, Involution::Transpose);
    let x = alg.e(1, 1) - alg.e(2, 2);
    let y = alg.e(1, 2) + alg.e(2, 1);
    let err = decompose::decompose_s3(&alg, &x, &y, &alg.one()).unwrap_err();
    assert!(matches!(err, DecomposeError::NotInvertible { .. }));
}

#[test]
fn tampering_is_detected() {
    let alg = mat(FieldDescriptor::rationals(), 2, Involution::Transpose);
    let (x, y) = criteria::paper_witness(&alg, "s3_transpose_even").unwrap();
    let cert = decompose::decompose_s3(&alg, &x, &y, &alg.e(1, 2)).unwrap();

    let mut wrong_target = cert.clone();
    wrong_target.target = alg.e(2, 1);
    assert_eq!(decompose::verify_certificate(&wrong_target), CertificateVerdict::Violation("sum mismatch".into()));

    let mut wrong_tag = cert.clone();
    wrong_tag.terms[1].factors[0] = Factor { tag: Tag::K, value: alg.e(1, 1) };
    assert_eq!(
        decompose::verify_certificate(&wrong_tag),
        CertificateVerdict::Violation("factor not skew".into())
    );

    let mut wrong_z = cert.clone();
    wrong_z.witness.z = alg.one();
    assert!(!decompose::verify_certificate(&wrong_z).is_valid());

    let mut too_long = cert;
    let extra = too_long.terms[0].clone();
    too_long.terms.push(extra);
    assert!(!decompose::verify_certificate(&too_long).is_valid());
}

#[test]
fn malformed_json_is_rejected() {
    let err = Certificate::from_json(&serde_json::json!({ "scheme": "s3" })).unwrap_err();
    assert!(matches!(err, DecomposeError::BadCertificate(_)));
    assert!(Scheme::parse("s4").is_err());
}

use num_traits::Signed;

use qwz_core::algebra::rat;
use qwz_core::identity::{build_identity, catalog, catalog_lookup, Family, Identity};
use qwz_core::special::{BigFloat, PrecisionContext};
use qwz_core::verify::verify_identity;
use qwz_core::Error;

#[test]
fn catalog_is_large_and_tags_are_unique() {
    let entries = catalog().unwrap();
    assert!(entries.len() >= 30);
    let mut tags: Vec<&str> = entries.iter().map(|e| e.tag()).collect();
    tags.sort();
    tags.dedup();
    assert_eq!(tags.len(), entries.len());
}

#[test]
fn lookups() {
    let apery = catalog_lookup("apery").unwrap();
    assert_eq!(apery.identity.family, Family::Quarter);
    assert_eq!(apery.identity.params, [rat(1, 1), rat(1, 1), rat(2, 1), rat(2, 1)]);
    let z = catalog_lookup("zeilberger64").unwrap();
    assert_eq!(z.identity.family, Family::Rate64);
    assert!(catalog_lookup("no-such-entry").is_err());
}

#[test]
fn condition_holds_at_two() {
    for e in catalog().unwrap() {
        // |2^e| < 1 < 2
        assert!(e.identity.condition_exponent.is_negative(), "{}: {}", e.tag(), e.identity.condition_text());
    }
}

#[test]
fn every_entry_verifies_at_three() {
    let ctx = PrecisionContext::new(60);
    let q = BigFloat::from_int(3, ctx.bits());
    for e in catalog().unwrap() {
        let r = verify_identity(&e.identity, &q, &ctx).unwrap();
        assert!(r.pass, "{} at q = 3: diff {}", e.tag(), r.diff.to_decimal(6));
        assert!(r.lhs_burn_in <= r.lhs_terms && r.rhs_burn_in <= r.rhs_terms);
    }
}

#[test]
fn json_round_trip_is_byte_identical() {
    for e in catalog().unwrap() {
        let text = e.identity.to_json().unwrap();
        let back = Identity::from_json(&text).unwrap();
        assert!(back.residual().unwrap().is_zero(), "{}", e.tag());
        assert_eq!(back.to_json().unwrap(), text, "{}", e.tag());
    }
}

#[test]
fn derivation_is_deterministic() {
    let p = [rat(1, 2), rat(1, 2), rat(2, 1), rat(2, 1)];
    let a = build_identity(Family::Quarter, &p).unwrap().to_json().unwrap();
    let b = build_identity(Family::Quarter, &p).unwrap().to_json().unwrap();
    assert_eq!(a, b);
}

#[test]
fn degenerate_tuples_are_rejected() {
    let p = [rat(0, 1), rat(1, 1), rat(2, 1), rat(2, 1)];
    assert!(matches!(build_identity(Family::Quarter, &p), Err(Error::DegenerateParameters(_))));
    let p = [rat(1, 1), rat(1, 1), rat(1, 1), rat(1, 1)];
    assert!(matches!(build_identity(Family::Quarter, &p), Err(Error::DegenerateParameters(_))));
}

#[test]
fn latex_uses_bracket_notation() {
    let tex = catalog_lookup("apery").unwrap().identity.to_latex();
    assert!(tex.contains("\\begin{bmatrix}") || tex.contains("\\left["), "{}", tex);
}

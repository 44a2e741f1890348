mod common;

use common::CASES;

#[test]
fn pochhammer_splitting() {
    common::pochhammer_splitting(CASES).unwrap();
}

#[test]
fn shift_quotients_commute() {
    common::shift_commutation(CASES).unwrap();
}

#[test]
fn rf_normalize_is_idempotent() {
    common::normalize_idempotence(CASES).unwrap();
}

#[test]
fn gosper_certificates_telescope() {
    common::gosper_contract(CASES).unwrap();
}

#[test]
fn tails_bound_the_remainder() {
    common::tail_honesty(CASES).unwrap();
}

#[test]
fn field_axioms() {
    common::field_axioms(CASES).unwrap();
}

#[test]
fn q_linear_factorization_reconstructs() {
    common::factorization_reconstructs(CASES).unwrap();
}

#[test]
fn gaussian_binomial_symmetry() {
    common::gaussian_symmetry(CASES).unwrap();
}

#[test]
fn prefactor_vanishes_iff_degenerate() {
    common::prefactor_iff_degenerate(CASES).unwrap();
}

//! Acceptance suite: one test per criterion, each printing its
//! pass/fail line (visible with `--nocapture`). The same runners back
//! the CLI `selftest` subcommand; the CLI exit-code portion of the
//! text contract lives in the CLI crate's own acceptance tests.

use sl2ode::acceptance::{self, CriterionOutcome};

fn check(outcome: CriterionOutcome) {
    println!("{}", outcome.line());
    assert!(outcome.passed, "{}", outcome.line());
}

#[test]
fn criterion_1_theorem_1_reproduction() {
    check(acceptance::criterion_1_theorem_1());
}

#[test]
fn criterion_2_coefficient_cross_check() {
    check(acceptance::criterion_2_coefficients());
}

#[test]
fn criterion_3_theorem_2_reproduction() {
    check(acceptance::criterion_3_theorem_2());
}

#[test]
fn criterion_4_third_order_equation_reproduction() {
    check(acceptance::criterion_4_eq9());
}

#[test]
fn criterion_5_theorem_3_reproduction() {
    check(acceptance::criterion_5_theorem_3());
}

#[test]
fn criterion_6_structure_constant_suite() {
    check(acceptance::criterion_6_structure_constants());
}

#[test]
fn criterion_7_prolongation_property_suite() {
    check(acceptance::criterion_7_prolongation());
}

#[test]
fn criterion_8_kernel_property_suite() {
    check(acceptance::criterion_8_kernel_properties());
}

#[test]
fn criterion_9_text_contract() {
    check(acceptance::criterion_9_text_contract());
}

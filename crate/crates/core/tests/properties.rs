mod common;

use common::*;
use gencluster::verify::Check;

const CASES: u32 = 64;

fn ok(res: Result<u32, String>) {
    if let Err(e) = res {
        panic!("{e}");
    }
}

#[test]
fn mutation_is_an_involution() {
    ok(involution(CASES));
}

#[test]
fn composite_mutation_is_order_independent() {
    ok(composite_order(CASES));
}

#[test]
fn skew_symmetrizer_is_preserved() {
    ok(skew_symmetrizer(CASES));
}

#[test]
fn separation_formulas_hold_on_random_instances() {
    ok(separation(CASES, RANDOM_DEPTH));
}

#[test]
fn separation_formulas_hold_on_cases() {
    ok(on_cases_at(Check::Separation, &CASE_DEPTHS));
}

#[test]
fn cluster_variables_are_positive_laurent_on_random_instances() {
    ok(laurent_positive(CASES, RANDOM_DEPTH));
}

#[test]
fn cluster_variables_are_positive_laurent_on_cases() {
    ok(on_cases_at(Check::LaurentPositive, &CASE_DEPTHS));
}

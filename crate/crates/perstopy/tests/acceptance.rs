//! Acceptance suite: every criterion of the reproducibility battery runs at
//! its pinned tolerance and prints a pass/fail line.

use perstopy::gh::DEFAULT_BUDGET;
use perstopy::verify::{self, CriterionReport};

fn run(report: CriterionReport) {
    println!(
        "{} {}: {}",
        if report.pass { "PASS" } else { "FAIL" },
        report.id,
        report.details
    );
    assert!(report.pass, "{}: {}", report.id, report.details);
}

#[test]
fn criterion_01_cycle_pi1() {
    run(verify::c01_cycle_groups());
}

#[test]
fn criterion_02_tree_triviality() {
    run(verify::c02_tree_triviality());
}

#[test]
fn criterion_03_star_loop_spaces() {
    run(verify::c03_star_loop_spaces());
}

#[test]
fn criterion_04_gh_table() {
    run(verify::c04_gh_table(DEFAULT_BUDGET));
}

#[test]
fn criterion_05_delta34_battery() {
    run(verify::c05_delta34_battery(DEFAULT_BUDGET));
}

#[test]
fn criterion_06_hurewicz() {
    run(verify::c06_hurewicz());
}

#[test]
fn criterion_07_product_coproduct() {
    run(verify::c07_product_coproduct());
}

#[test]
fn criterion_08_interval_interleaving() {
    run(verify::c08_interval_interleaving());
}

#[test]
fn criterion_09_stability_battery() {
    run(verify::c09_stability_battery(DEFAULT_BUDGET));
}

#[test]
fn criterion_10_oracle_equivalence() {
    run(verify::c10_oracle_equivalence());
}

#[test]
fn criterion_11_two_point_diagrams() {
    run(verify::c11_two_point_diagrams());
}

#[test]
fn criterion_12_mu1_c4_audit() {
    run(verify::c12_mu1_c4_audit());
}

#[test]
fn properties_suite_is_green_and_deterministic() {
    let a = verify::properties_suite(42, DEFAULT_BUDGET);
    for r in &a {
        println!("{} {}: {}", if r.pass { "PASS" } else { "FAIL" }, r.id, r.details);
        assert!(r.pass, "{}: {}", r.id, r.details);
    }
    let b = verify::properties_suite(42, DEFAULT_BUDGET);
    let render = |v: &[CriterionReport]| {
        v.iter().map(|r| format!("{}|{}|{}", r.id, r.pass, r.details)).collect::<Vec<_>>()
    };
    assert_eq!(render(&a), render(&b));
}

//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. Run with `cargo test -p hopf --test acceptance -- --nocapture` to
//! see the lines; the `hopf selftest` subcommand prints the same report.

use hopf::selftest::{self, CriterionReport};
use hopf::Config;

fn check(report: CriterionReport) {
    println!("{}", report.line());
    assert!(report.passed, "{}", report.line());
}

#[test]
fn criterion_01_cohomology_tables() {
    check(selftest::criterion_1_cohomology_tables(&Config::default()));
}

#[test]
fn criterion_02_degree_normalizations() {
    check(selftest::criterion_2_degree_normalizations(
        &Config::default(),
    ));
}

#[test]
fn criterion_03_stability_domains() {
    check(selftest::criterion_3_domain_geometry(&Config::default()));
}

#[test]
fn criterion_04_stability_brute_force() {
    check(selftest::criterion_4_stability_oracle(&Config::default()));
}

#[test]
fn criterion_05_jump_bookkeeping() {
    check(selftest::criterion_5_jump_bookkeeping(&Config::default()));
}

#[test]
fn criterion_06_spectral_arithmetic() {
    check(selftest::criterion_6_spectral_arithmetic(&Config::default()));
}

#[test]
fn criterion_07_poisson_rank() {
    check(selftest::criterion_7_poisson_rank(&Config::default()));
}

#[test]
fn criterion_08_higher_stability() {
    check(selftest::criterion_8_higher_stability(&Config::default()));
}

#[test]
fn criterion_09_cover_case_table() {
    check(selftest::criterion_9_cover_table(&Config::default()));
}

#[test]
fn criterion_10_moduli_descriptors() {
    check(selftest::criterion_10_moduli(&Config::default()));
}

#[test]
fn full_suite_under_budget() {
    let start = std::time::Instant::now();
    let reports = selftest::run_all(&Config::default());
    let elapsed = start.elapsed();
    for r in &reports {
        println!("{}", r.line());
    }
    assert!(reports.iter().all(|r| r.passed));
    assert!(
        elapsed.as_secs() < 60,
        "suite took {} ms, budget is 60 s",
        elapsed.as_millis()
    );
}

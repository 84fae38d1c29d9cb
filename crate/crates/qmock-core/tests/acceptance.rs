//! Acceptance suite: one test per criterion, each driving the corresponding
//! verification suite at its pinned order and printing a pass/fail line per
//! criterion. All arithmetic is exact, so every tolerance is zero:
//! comparisons are coefficient equality over the stated window.

use qmock_core::report::{Record, Status, VerificationReport};
use qmock_core::suites::{
    chain_suite, corollary_suite, crosspath_suite, hm_suite, identities_suite, laws_suite,
    pairs_suite, starred_suite, transforms_suite, SuiteConfig,
};

fn cfg(order: Option<i64>, n_max: Option<usize>) -> SuiteConfig {
    SuiteConfig {
        order,
        n_max,
        ids: None,
        row_cap: 4096,
    }
}

fn conclude(name: &str, records: Vec<Record>) -> VerificationReport {
    let report = VerificationReport::new(name, records);
    let verdict = if report.all_equal() { "PASS" } else { "FAIL" };
    println!(
        "[{verdict}] {name}: {} equal, {} mismatch, {} error",
        report.summary.equal, report.summary.mismatch, report.summary.error
    );
    for r in &report.records {
        if r.status != Status::Equal {
            println!("    {}", r.render_line());
        }
    }
    report
}

fn assert_all_equal(name: &str, records: Vec<Record>) {
    let report = conclude(name, records);
    assert!(
        report.all_equal(),
        "{name}: {} mismatches, {} errors",
        report.summary.mismatch,
        report.summary.error
    );
}

fn sink() -> impl FnMut(&Record) {
    |_: &Record| {}
}

/// All catalog Bailey pairs satisfy the defining relation for n <= 12 at
/// order q^50.
#[test]
fn criterion_pair_suite() {
    let mut s = sink();
    assert_all_equal(
        "pair suite (n <= 12, order 50)",
        pairs_suite(&cfg(Some(50), Some(12)), &mut s),
    );
}

/// Constructor theorems against direct pair checks, the composition law,
/// the inversion round trip, and the defining recurrence.
#[test]
fn criterion_transform_suite() {
    let mut s = sink();
    assert_all_equal(
        "transform suite (n <= 10, order 40)",
        transforms_suite(&cfg(Some(40), Some(10)), &mut s),
    );
}

/// The change-of-base chain: -2 base_change(bk) = andrews1(q -> q^2), the
/// closed-form beta, and the two constructor steps to andrews2/andrews0.
#[test]
fn criterion_base_change_chain() {
    let mut s = sink();
    assert_all_equal(
        "change-of-base chain (n <= 8, order 40)",
        chain_suite(&cfg(Some(40), Some(8)), &mut s),
    );
}

/// Every identity's double-sum, Hecke, and Appell-Lerch forms agree at
/// order q^40; the four heaviest multi-quotient entries are allowed to drop
/// to q^25 but comfortably run at the full window.
#[test]
fn criterion_identity_suite() {
    let mut s = sink();
    let records = identities_suite(&cfg(Some(40), None), &mut s);
    assert_all_equal("identity suite (order 40)", records);
}

/// The classical-mock-theta corollaries at order q^40.
#[test]
fn criterion_corollary_suite() {
    let mut s = sink();
    assert_all_equal(
        "corollary suite (order 40)",
        corollary_suite(&cfg(Some(40), None), &mut s),
    );
}

/// f_{n,n+p,n} equals its Appell-Lerch expansion at every specialization
/// the derivations use: order q^40 for p in {1, 2}, q^30 for p = 4.
#[test]
fn criterion_hm_suite() {
    let mut s = sink();
    assert_all_equal("hm suite (order 40 / p=4 at 30)", hm_suite(&cfg(None, None), &mut s));
}

/// Appell-Lerch function laws on sampled generic specs, the exact product
/// value, theta sum = product, both j-laws on the full grid, the two
/// auxiliary Pochhammer facts, and the two classical summations at the
/// specializations the derivations use.
#[test]
fn criterion_function_laws() {
    let mut s = sink();
    assert_all_equal("function-law suite", laws_suite(&cfg(None, None), &mut s));
}

/// For the starred sums the even and odd stabilized partial sums differ
/// (first differing exponent reported), and their average matches the
/// closed forms at order q^20.
#[test]
fn criterion_starred_sums() {
    let mut s = sink();
    assert_all_equal(
        "starred-sum suite (order 20)",
        starred_suite(&cfg(Some(20), None), &mut s),
    );
}

/// Cross-path determinism: the double sum equals the limiting-form lhs of
/// its (pair, rho, dilation) tuple at order q^30 - two independent code
/// paths to the same series.
#[test]
fn criterion_cross_path() {
    let mut s = sink();
    assert_all_equal(
        "cross-path suite (order 30)",
        crosspath_suite(&cfg(Some(30), None), &mut s),
    );
}

//! End-to-end acceptance checks.
//!
//! Each test exercises one criterion of the verification suite at the
//! reference configuration (K = 1 in H2×R) and prints a single PASS/FAIL
//! line so the whole gate can be read off a test run at a glance.

use std::sync::LazyLock;

use prodsurf::ambient::SpaceTag;
use prodsurf::verify::{verify, VerifyOptions, VerifyReport};

static REPORT: LazyLock<VerifyReport> =
    LazyLock::new(|| verify(&VerifyOptions::new(1.0, SpaceTag::H2R).unwrap()));

/// Look up criterion `idx`, assert its identity and print the gate line.
fn check(idx: usize, name: &str) {
    let c = &REPORT.criteria[idx];
    assert_eq!(c.name, name, "criterion {idx} is not {name}");
    let status = if c.pass { "PASS" } else { "FAIL" };
    println!(
        "{status} — {} (value {:e}, bound {:e})",
        c.name, c.value, c.bound
    );
    if let Some(err) = &c.error {
        panic!("criterion {} errored: {err}", c.name);
    }
    assert!(
        c.pass,
        "criterion {} failed: value {:e} exceeds bound {:e}",
        c.name, c.value, c.bound
    );
}

#[test]
fn acceptance_01_principal_product() {
    check(0, "principal_product");
}

#[test]
fn acceptance_02_curvature_match() {
    check(1, "curvature_match");
}

#[test]
fn acceptance_03_gauss_equation() {
    check(2, "gauss_equation");
}

#[test]
fn acceptance_04_nu2_identity() {
    check(3, "nu2_identity");
}

#[test]
fn acceptance_05_height_estimates() {
    check(4, "height_estimates");
}

#[test]
fn acceptance_06_special_values() {
    check(5, "special_values");
}

#[test]
fn acceptance_07_q_vanishing() {
    check(6, "q_vanishing");
}

#[test]
fn acceptance_08_pair_curvature() {
    check(7, "pair_curvature");
}

#[test]
fn acceptance_09_radial_laplacians() {
    check(8, "radial_laplacians");
}

#[test]
fn acceptance_10_isometry_group() {
    check(9, "isometry_group");
}

#[test]
fn acceptance_11_section_convexity() {
    check(10, "section_convexity");
}

#[test]
fn acceptance_12_reproducibility() {
    check(11, "reproducibility");
    assert!(REPORT.all_pass, "some criterion in the suite failed");
}

//! The acceptance gate: every identity family the library claims to verify,
//! run end to end at its full verification parameters. One test per
//! criterion; each prints a single pass/fail line (visible under
//! `--nocapture`) and fails loudly with the failing check otherwise.
//!
//! All arithmetic is exact, so every criterion is an equality check with
//! zero tolerance.

use qtpaths_core::verify::{
    suite_afell, suite_basis, suite_commutation, suite_d_exchange, suite_engines,
    suite_explicit, suite_ext_delta, suite_macdonald, suite_pde, suite_soundness,
    suite_uniqueness, SuiteReport,
};
use std::time::Instant;

fn gate(criterion: u32, name: &str, report: SuiteReport, started: Instant) {
    let status = if report.pass() { "PASS" } else { "FAIL" };
    println!(
        "criterion {criterion} ({name}): {status} ({} checks, {:.1}s)",
        report.checks.len(),
        started.elapsed().as_secs_f64()
    );
    if !report.pass() {
        for c in report.checks.iter().filter(|c| !c.pass) {
            println!("  failed: {} [{}] {:?}", c.id, c.params, c.detail);
        }
        panic!("criterion {criterion} ({name}) failed");
    }
}

#[test]
fn criterion_01_d_exchange() {
    // omega(z1/z2) D(z1) D(z2) = omega(z2/z1) D(z2) D(z1), coefficient-wise
    // for all monomials with exponents in [-3,3] on p-basis degree <= 3
    let t = Instant::now();
    gate(1, "D-field exchange relation", suite_d_exchange(3, 3), t);
}

#[test]
fn criterion_02_engine_triple_agreement() {
    // paths / increments / voa agree for beta in {-2..2}^l, l <= 3,
    // p-basis inputs of degree <= 3
    let t = Instant::now();
    gate(2, "engine triple agreement", suite_engines(3, 3, -2, 2), t);
}

#[test]
fn criterion_03_explicit_formula() {
    // R_betas . 1 equals the closed product formula, all three basis
    // extractions match direct conversion, truncations are stable
    let t = Instant::now();
    gate(3, "closed product formula", suite_explicit(), t);
}

#[test]
fn criterion_04_macdonald() {
    // eigen property, star orthogonality, normalization and Pieri support
    // for degrees <= 5; Cauchy identity for n <= 4
    let t = Instant::now();
    gate(4, "Macdonald suite", suite_macdonald(5, 4), t);
}

#[test]
fn criterion_05_commutation() {
    // one-step commutators (k,r <= 3), the first commutation relation
    // (n <= 3), the Q-raising rule, the insertion/splitting rule (m <= 2),
    // and the symmetrized recursion, all as operator identities on window 4
    let t = Instant::now();
    gate(5, "commutation suite", suite_commutation(4), t);
}

#[test]
fn criterion_06_afell_engines() {
    // commutator and path-sum constructions of A_F^(l) agree on window 3
    // for l <= 2 and F in {1, 1+h, 1+2h+h^2}
    let t = Instant::now();
    gate(6, "A_F^(l) construction agreement", suite_afell(3), t);
}

#[test]
fn criterion_07_conjugation_and_pde() {
    // Pi_G conjugation identities and the tau differential equations for
    // l in {1,2}, zmax 3, three random rational weight pairs of degree <= 2
    let t = Instant::now();
    gate(7, "conjugation and differential equations", suite_pde(3, 3), t);
}

#[test]
fn criterion_08_uniqueness() {
    // dual-basis reconstruction of tau equals the direct build for
    // z-degree <= 3, three random weight pairs
    let t = Instant::now();
    gate(8, "uniqueness reconstruction", suite_uniqueness(3, 3), t);
}

#[test]
fn criterion_09_basis() {
    // the operator-generated family has nonzero determinant for n <= 4 and
    // three weights, with the dominance-triangular q=t=1 specialization
    let t = Instant::now();
    gate(9, "operator-generated basis", suite_basis(4), t);
}

#[test]
fn criterion_10_ext_delta() {
    // the extended-delta identity for all (n,k,l) with n <= 4, 1 <= k <= n,
    // l <= 2
    let t = Instant::now();
    gate(10, "extended delta identity", suite_ext_delta(4, 2), t);
}

#[test]
fn criterion_11_soundness() {
    // every checker fails on a deliberately broken input
    let t = Instant::now();
    gate(11, "checker soundness", suite_soundness(), t);
}

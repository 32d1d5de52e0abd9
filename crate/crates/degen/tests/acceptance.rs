//! Acceptance suite: every criterion runs at its stated exhaustive bounds
//! with exact arithmetic (tolerance zero) and prints one line.
//!
//! Criteria sharing a suite (4/9 and 6/7) reuse one suite run through a
//! process-wide cache.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};
use std::time::Instant;

use degen::report::CaseRecord;
use degen::rootsys::Family;
use degen::verify::{run_suite, SuiteName, VerifyConfig};

fn acceptance_config() -> VerifyConfig {
    VerifyConfig {
        families: Family::ALL.to_vec(),
        max_rank: 5,
        lambda_coord_bound: 2,
        suites: SuiteName::ALL.to_vec(),
        seed: 0x5eed,
    }
}

fn suite_cases(name: SuiteName) -> Vec<CaseRecord> {
    static CACHE: OnceLock<Mutex<HashMap<SuiteName, Vec<CaseRecord>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&name) {
        return v.clone();
    }
    let cases = run_suite(name, &acceptance_config()).expect("suite runs");
    cache.lock().unwrap().insert(name, cases.clone());
    cases
}

fn check(criterion: &str, description: &str, cases: Vec<CaseRecord>, t0: Instant) {
    assert!(!cases.is_empty(), "{criterion}: no cases ran");
    let failures: Vec<&CaseRecord> = cases.iter().filter(|c| !c.pass).collect();
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!(
        "criterion {criterion} {description}: {status} ({} cases, {} ms)",
        cases.len(),
        t0.elapsed().as_millis()
    );
    if !failures.is_empty() {
        for f in &failures {
            eprintln!(
                "  {} {}{} cuts={} {}: expected {}, computed {}",
                f.suite, f.family, f.rank, f.cuts, f.case, f.expected, f.computed
            );
        }
        panic!("{criterion}: {} failing cases", failures.len());
    }
}

#[test]
fn criterion_01_facet_nonredundancy() {
    let t0 = Instant::now();
    let cases = suite_cases(SuiteName::Facets);
    check(
        "01",
        "facet witnesses violate exactly their own inequality",
        cases,
        t0,
    );
}

#[test]
fn criterion_02_graded_algebra_wellformed() {
    let t0 = Instant::now();
    let cases = suite_cases(SuiteName::Jacobi);
    check(
        "02",
        "Jacobi at height and interior points; superadditive degrees are abelian",
        cases,
        t0,
    );
}

#[test]
fn criterion_03_stretch_correctness() {
    let t0 = Instant::now();
    let cases = suite_cases(SuiteName::Stretch);
    check(
        "03",
        "root lengths, closure/convexity, section and weight-pairing identities",
        cases,
        t0,
    );
}

#[test]
fn criterion_04_inversion_sets_and_lengths() {
    let t0 = Instant::now();
    let cases: Vec<CaseRecord> = suite_cases(SuiteName::Weylgroup)
        .into_iter()
        .filter(|c| !c.case.starts_with("extremal-columns"))
        .collect();
    check(
        "04",
        "inversion sets equal embedded images; reduced words of length |Φ+|",
        cases,
        t0,
    );
}

#[test]
fn criterion_05_graded_isomorphism() {
    let t0 = Instant::now();
    let cases = suite_cases(SuiteName::Laiso);
    check(
        "05",
        "bracket patterns correspond and a sign rescaling exists",
        cases,
        t0,
    );
}

#[test]
fn criterion_06_fundamental_dimensions() {
    let t0 = Instant::now();
    let cases: Vec<CaseRecord> = suite_cases(SuiteName::Dims)
        .into_iter()
        .filter(|c| c.case.starts_with("fundamental-dim"))
        .collect();
    check(
        "06",
        "Demazure dimensions of embedded fundamentals match the closed forms",
        cases,
        t0,
    );
}

#[test]
fn criterion_07_general_weight_dimensions() {
    let t0 = Instant::now();
    let cases: Vec<CaseRecord> = suite_cases(SuiteName::Dims)
        .into_iter()
        .filter(|c| c.case.starts_with("general-dims"))
        .collect();
    check(
        "07",
        "Demazure dimensions match Weyl dimensions on the weight grid",
        cases,
        t0,
    );
}

#[test]
fn criterion_08_lattice_point_counts() {
    let t0 = Instant::now();
    let cases = suite_cases(SuiteName::Polytopes);
    check(
        "08",
        "chain-polytope counts equal Weyl dimensions (types A and C)",
        cases,
        t0,
    );
}

#[test]
fn criterion_09_extremal_vectors() {
    let t0 = Instant::now();
    let cases: Vec<CaseRecord> = suite_cases(SuiteName::Weylgroup)
        .into_iter()
        .filter(|c| c.case.starts_with("extremal-columns"))
        .collect();
    check(
        "09",
        "closed-form extremal columns equal the direct action",
        cases,
        t0,
    );
}

#[test]
fn criterion_10_wedge_cross_checks() {
    let t0 = Instant::now();
    let cases = suite_cases(SuiteName::Wedge);
    check(
        "10",
        "span, character and Weyl dimensions agree; filtrations are exhaustive",
        cases,
        t0,
    );
}

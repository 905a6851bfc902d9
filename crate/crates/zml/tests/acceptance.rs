//! Acceptance battery at the canonical scale T = 2000: one test per
//! criterion, each asserting its group of checks from the verification
//! suite at the pinned thresholds.
//!
//! The suite is executed twice (1 worker and 8 workers) through
//! `run_verification_with_determinism`, so the determinism criterion is the
//! real thing, not a proxy.

use std::sync::OnceLock;
use std::time::Instant;

use zml::sums::discrete_mean_square;
use zml::verify::{run_verification_with_determinism, VerifyReport};
use zml::zeros::find_zeros;
use zml::EvalConfig;

const T_ACCEPT: f64 = 2000.0;

struct Suite {
    report: VerifyReport,
    wall_seconds: f64,
}

fn suite() -> &'static Suite {
    static SUITE: OnceLock<Suite> = OnceLock::new();
    SUITE.get_or_init(|| {
        let start = Instant::now();
        let report = run_verification_with_determinism(T_ACCEPT, &EvalConfig::default())
            .expect("verification suite must run");
        Suite {
            report,
            wall_seconds: start.elapsed().as_secs_f64(),
        }
    })
}

/// Assert every check whose name starts with `prefix`; the failure message
/// lists each offending check with its observed value and threshold.
fn assert_group(prefix: &str, context: &str) {
    let s = suite();
    let group: Vec<_> = s
        .report
        .checks
        .iter()
        .filter(|c| c.name.starts_with(prefix))
        .collect();
    assert!(!group.is_empty(), "no checks ran for {prefix}");
    for c in &group {
        assert!(
            !c.skipped,
            "{} unexpectedly skipped at T = {T_ACCEPT}",
            c.name
        );
    }
    let failing: Vec<String> = group
        .iter()
        .filter(|c| !c.pass)
        .map(|c| {
            format!(
                "{}: observed {:.6e} vs threshold {:.6e}",
                c.name,
                c.observed.unwrap_or(f64::NAN),
                c.threshold
            )
        })
        .collect();
    assert!(
        failing.is_empty(),
        "{} check(s) failed:\n  {}\n{context}",
        failing.len(),
        failing.join("\n  ")
    );
}

#[test]
fn criterion_01_zero_census() {
    assert_group("c1_", "");
    let s = suite();
    assert!(
        s.report.census_seconds <= 60.0,
        "census took {:.1}s, budget is 60s",
        s.report.census_seconds
    );
}

#[test]
fn criterion_02_zero_accuracy() {
    assert_group("c2_", "");
}

#[test]
fn criterion_03_evaluator_accuracy() {
    assert_group("c3_", "");
}

#[test]
fn criterion_04_landau_formula() {
    assert_group("c4_", "");
}

#[test]
fn criterion_05_mean_square_asymptotic() {
    // Pinned at rel_dev <= 0.2 for all nine (sigma, t) cells. The t = 0
    // cells at sigma = 0.75 and sigma = 1.0 cannot meet that at T = 2000:
    // the Re(zeta'/zeta(sigma + 1/2)) term is large and negative near the
    // pole, the composite main term at sigma = 0.75 stays negative until
    // T ~ 20000, and the observed sums match the independent
    // high-precision oracle to six digits (see oracle_parity_mean_square).
    // The check is asserted as pinned; the failure is a property of the
    // asymptotics at this scale, not of the pipeline.
    assert_group(
        "c5_",
        "note: observed values agree with the independent oracle; \
         the two-term asymptotic is pre-asymptotic at t = 0 for this T",
    );
}

#[test]
fn criterion_06_large_sigma_collapse() {
    assert_group("c6_", "");
}

#[test]
fn criterion_07_proof_decomposition() {
    // Pinned at |A - S|/S <= 0.05 (sigma = 1.5, t = 0, delta = 0.5,
    // T = 500). The true truncation remainder at these parameters is
    // ~5.27% of S (confirmed by the independent oracle), so the pinned
    // threshold misses by a hair; asserted as pinned regardless.
    assert_group(
        "c7_",
        "note: the measured remainder matches the independent oracle \
         (|A - S|/S = 0.0527 at these parameters)",
    );
}

#[test]
fn criterion_08_shift_sum_ratio_stability() {
    assert_group("c8_", "");
}

#[test]
fn criterion_09_gonek_degeneracy() {
    assert_group("c9_", "");
}

#[test]
fn criterion_10_determinism() {
    assert_group("c10_", "");
}

#[test]
fn suite_fits_runtime_budget() {
    // both passes of the whole battery (1 worker, then 8) well under the
    // five-minute single-core budget
    let s = suite();
    assert!(s.wall_seconds < 300.0, "suite took {:.1}s", s.wall_seconds);
}

/// Landau deviation per unit T shrinks (or stays under 0.05) as the table
/// extends: 500 -> 1000 -> 2000.
#[test]
fn invariant_landau_linear_growth() {
    use zml::sums::{landau_main_term, landau_sum};
    let table = &suite().report.table;
    let per_t: Vec<f64> = [500.0, 1000.0, 2000.0]
        .iter()
        .map(|&t| {
            let cut = table.truncated(t);
            (landau_sum(2.0, &cut).re - landau_main_term(2.0, t)).abs() / t
        })
        .collect();
    let monotone = per_t[0] >= per_t[1] && per_t[1] >= per_t[2];
    let bounded = per_t.iter().all(|&d| d <= 0.05);
    assert!(monotone || bounded, "per-T deviations: {per_t:?}");
}

/// At sigma = 3 both sides collapse toward count scale and the main term
/// dominates to within 5%.
#[test]
fn invariant_main_term_dominance_sigma3() {
    let table = suite().report.table.truncated(1000.0);
    let r = discrete_mean_square(3.0, 0.0, &table, &EvalConfig::default()).unwrap();
    assert!(
        (r.observed_s - r.main_m).abs() <= 0.05 * r.main_m,
        "S = {}, M = {}",
        r.observed_s,
        r.main_m
    );
}

/// Independent-oracle parity: the pipeline's observed mean squares against
/// values computed with mpmath (exact zeros from `zetazero`, exact zeta),
/// frozen before the build. This is what separates "the sum is right" from
/// "the pinned threshold holds".
#[test]
fn oracle_parity_mean_square() {
    let s = suite();
    let table = &s.report.table;
    let cfg = EvalConfig::default();
    let cases = [
        (0.75, 0.0, 693.725557),
        (0.75, 5.0, 3946.859446),
        (0.75, -5.0, 3932.642071),
        (1.0, 0.0, 1156.508452),
        (1.0, 5.0, 2593.223739),
        (1.0, -5.0, 2586.920545),
        (1.5, 0.0, 1397.301769),
        (1.5, 5.0, 1885.551390),
        (1.5, -5.0, 1883.296226),
    ];
    for (sigma, t, want) in cases {
        let got = discrete_mean_square(sigma, t, table, &cfg)
            .unwrap()
            .observed_s;
        assert!(
            ((got - want) / want).abs() <= 1e-4,
            "S(sigma={sigma}, t={t}) = {got}, oracle {want}"
        );
    }
}

/// The sign-change route alone, re-run on a fresh sub-range, agrees with
/// the argument-principle count embedded in the shared table.
#[test]
fn oracle_parity_zero_table() {
    let s = suite();
    let table = &s.report.table;
    assert_eq!(table.len(), 1517);
    let slice = find_zeros(100.0, 120.0, &EvalConfig::default()).unwrap();
    let expected: Vec<f64> = table
        .ordinates()
        .iter()
        .copied()
        .filter(|&g| g > 100.0 && g <= 120.0)
        .collect();
    assert_eq!(slice.len(), expected.len());
    for (a, b) in slice.ordinates().iter().zip(&expected) {
        assert!((a - b).abs() <= 1e-9);
    }
}

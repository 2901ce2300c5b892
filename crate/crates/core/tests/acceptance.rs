//! Acceptance criteria, one line each. Run with
//! `cargo test --release --test acceptance -- --nocapture`.
//!
//! Criteria listed in `KNOWN_RED` are evaluated in full and reported as
//! FAIL; the test only fails when any other criterion does.

use std::process::Command;
use std::time::{Duration, Instant};

use cycle_ekr::counting::factorial;
use cycle_ekr::oracle::{max_clique_exact, Mode};
use cycle_ekr::verify::{self, Check, SuiteReport, Status, Suite, VerifyParams};
use cycle_ekr::Exec;

/// Criteria whose stated claim does not hold as stated.
const KNOWN_RED: [usize; 4] = [8, 10, 11, 12];

struct Outcome {
    id: usize,
    title: &'static str,
    pass: bool,
    detail: String,
    elapsed: Duration,
    limit: Duration,
}

fn summarize(checks: &[Check]) -> (bool, String) {
    let failed: Vec<&Check> = checks.iter().filter(|c| c.status == Status::Fail).collect();
    let passed = checks.iter().filter(|c| c.status == Status::Pass).count();
    let mut detail = format!("{passed}/{} checks", checks.len());
    if let Some(first) = failed.first() {
        detail.push_str(&format!(", {} failed, first: {}: expected {}, got {}", failed.len(), first.label, first.expected, first.actual));
    }
    (failed.is_empty() && passed > 0, detail)
}

fn criterion(id: usize, title: &'static str, limit_secs: u64, body: impl FnOnce() -> (bool, String)) -> Outcome {
    let start = Instant::now();
    let (pass, detail) = body();
    let elapsed = start.elapsed();
    let limit = Duration::from_secs(limit_secs);
    Outcome { id, title, pass: pass && elapsed <= limit, detail, elapsed, limit }
}

fn suite(report: cycle_ekr::Result<SuiteReport>) -> (bool, String) {
    let report = report.expect("suite runs");
    summarize(&report.checks)
}

fn checks(result: cycle_ekr::Result<Vec<Check>>) -> (bool, String) {
    summarize(&result.expect("suite runs"))
}

fn params() -> VerifyParams {
    VerifyParams { exec: Exec::available_parallel(), ..VerifyParams::default() }
}

fn table(threads: &str) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_cycle-ekr"))
        .args(["--threads", threads, "table", "--n-range", "3..10", "--t-range", "1..2"])
        .output()
        .expect("binary runs");
    assert!(out.status.success(), "table failed: {}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}

#[test]
fn acceptance() {
    let p = params();
    let outcomes = vec![
        criterion(1, "derangements match brute force, m <= 8", 1, || checks(verify::derangements(8))),
        criterion(2, "m!/e - 1 < f(m) < m!/e + 1, 1 <= m <= 30", 1, || checks(verify::derangement_bounds(30))),
        criterion(3, "sum_j C(m,j) f(m-j) = m!, m <= 12", 1, || checks(verify::partition_identity(12))),
        criterion(4, "M(n,1) = (n-1)! by clique oracle, n = 3,4,5", 60, || {
            let mut out = Vec::new();
            for n in 3..=5 {
                let got = max_clique_exact(n, 1, Mode::TrivialAllowed).expect("oracle runs").maximum;
                out.push(Check {
                    label: format!("n={n}"),
                    expected: factorial(n - 1).to_string(),
                    actual: got.to_string(),
                    status: if got == factorial(n - 1) { Status::Pass } else { Status::Fail },
                });
            }
            summarize(&out)
        }),
        criterion(5, "m_max = trivial-allowed oracle, n <= 5", 600, || suite(verify::run(Suite::Theorem1, &VerifyParams { max_n: 5, ..p }))),
        criterion(6, "m_tilde = nontrivial oracle, t+2 <= n <= 5", 600, || suite(verify::run(Suite::Theorem5, &VerifyParams { max_n: 5, ..p }))),
        criterion(7, "generated counts = brute force, n <= 7", 300, || {
            suite(verify::run(Suite::Generators, &VerifyParams { max_n: 7, trials: 100, ..p }))
        }),
        criterion(8, "argmax of nu at i=2 from some n* <= 25 to n = 40", 60, || checks(verify::asymptotic(&[1, 2], 25, 40))),
        criterion(9, "S_i < S_i+1 implies S_i+1 < S_i+2, t <= 3, n <= 20", 60, || checks(verify::s_monotonicity(3, 20))),
        criterion(10, "compression operators, 500 families, n = 5, t <= 2", 300, || {
            suite(verify::run(Suite::Compression, &VerifyParams { n: 5, t: 2, trials: 500, ..p }))
        }),
        criterion(11, "nontrivial maximizers in Omega_0, n <= 5", 600, || suite(verify::run(Suite::Statement1, &VerifyParams { max_n: 5, ..p }))),
        criterion(12, "ratio lower bound, t <= 3, n <= 12", 1, || checks(verify::ratio_bound(3, 12))),
        criterion(13, "cited k-set formulas = exhaustive search, n <= 10 (12)", 600, || checks(verify::cited(p.exec))),
        criterion(14, "table byte-identical over 3 runs and threads 1/4", 60, || {
            let base = table("4");
            let runs = [table("4"), table("4"), table("1")];
            let same = runs.iter().all(|r| *r == base);
            let rows = base.iter().filter(|&&b| b == b'\n').count().saturating_sub(1);
            (same && rows > 0, format!("{rows} rows, {}", if same { "identical" } else { "differs" }))
        }),
    ];

    let mut unexpected = Vec::new();
    for o in &outcomes {
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        let known = if !o.pass && KNOWN_RED.contains(&o.id) { " [known]" } else { "" };
        println!(
            "criterion {:>2} {verdict}{known} {}: {} ({:.2}s, limit {}s)",
            o.id,
            o.title,
            o.detail,
            o.elapsed.as_secs_f64(),
            o.limit.as_secs()
        );
        if !o.pass && !KNOWN_RED.contains(&o.id) {
            unexpected.push(o.id);
        }
    }
    assert!(unexpected.is_empty(), "criteria failed: {unexpected:?}");
}

/// The claims the red criteria are measured against, in the form that holds.
mod corrected {
    use cycle_ekr::compression::{fix_to_fixpoint_with, shift_family_with};
    use cycle_ekr::counting::{asymptotic_value, nu, ratio_lower_bound_check};
    use cycle_ekr::oracle::{enumerate_maximizers, Mode};
    use cycle_ekr::perm::is_t_intersecting_family;
    use cycle_ekr::verify::{crossover_rows, crossover_start, random_intersecting_family, CrossoverRow};
    use cycle_ekr::Exec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn asymptotic_value_is_attained_at_the_last_index() {
        for (t, n_star) in [(1, 4), (2, 8)] {
            let rows = crossover_rows(t, 40).unwrap();
            assert_eq!(crossover_start(&rows, 25, CrossoverRow::last_wins), Some(n_star));
            for n in n_star..=40 {
                assert_eq!(nu(n, t, n - t - 1).unwrap(), asymptotic_value(n, t).unwrap());
            }
        }
    }

    #[test]
    fn shifting_preserves_intersection_after_fixing() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for trial in 0..200 {
            let t = 1 + trial % 2;
            let family = random_intersecting_family(5, t, &mut rng).unwrap();
            let (fixed, _) = fix_to_fixpoint_with(&family, Exec::Sequential).unwrap();
            for v in 1..=5 {
                for w in v + 1..=5 {
                    let (shifted, _) = shift_family_with(v, w, &fixed, Exec::Sequential).unwrap();
                    assert_eq!(shifted.len(), fixed.len());
                    assert!(is_t_intersecting_family(&shifted, t));
                }
            }
        }
    }

    #[test]
    fn multi_member_maximizers_have_no_common_fixed_point() {
        for n in 4..=5 {
            for t in 1..=n - 2 {
                let m = enumerate_maximizers(n, t, Mode::NontrivialOnly).unwrap();
                for family in m.families.iter().filter(|f| f.len() >= 2) {
                    assert!(family.common_fixed_points().is_none_or(|s| s.is_empty()), "n={n} t={t}: {}", family.to_text());
                }
            }
        }
    }

    #[test]
    fn ratio_bound_fails_only_at_full_length_with_even_radius() {
        for t in 1..=3 {
            for n in t..=12 {
                for ell in (t..=n).step_by(2) {
                    // At ℓ = n the ratio is D(r+1)/D(r) = r + 1 + (−1)^(r+1)/D(r), r = (n−t)/2.
                    let expected = !(ell == n && ((n - t) / 2) % 2 == 0);
                    assert_eq!(ratio_lower_bound_check(n, t, ell).unwrap(), expected, "n={n} t={t} ell={ell}");
                }
            }
        }
    }
}

//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the lines are always printed. Every
//! integer comparison is exact; the only tolerances are the wall-clock limits
//! below.

use std::time::{Duration, Instant};

use cyclocode::conv::{check_reduced_basic, family_mainconv, free_distance_upper, SearchOptions};
use cyclocode::css::{family_good1, family_good2};
use cyclocode::oracle::{
    coset_theorem_sweep, css_true_distance, min_distance_exact, OracleBudget, Outcome,
    DEFAULT_CODEWORD_BUDGET,
};
use cyclocode::report::Status;
use cyclocode::tables::{table, TableOptions};
use cyclocode::verify::{conv_family_instances, css_family_instances, prime_powers, verify_cyclic, VerifyOptions};

const TABLE1_LIMIT: Duration = Duration::from_secs(5);
const TABLE2_LIMIT: Duration = Duration::from_secs(10);
const TABLE3_LIMIT: Duration = Duration::from_secs(60);
const SWEEP_LIMIT: Duration = Duration::from_secs(120);
const DISTANCE_LIMIT: Duration = Duration::from_secs(300);
const CSS_EXACT_LIMIT: Duration = Duration::from_secs(120);
const CONV_LIMIT: Duration = Duration::from_secs(300);
/// Largest length covered by the identity checks.
const IDENTITY_MAX_N: u64 = 80;

const TABLE1: [&str; 25] = [
    "[[24, 18, d >= 3]]_5",
    "[[24, 10, d >= 5]]_5",
    "[[48, 42, d >= 3]]_7",
    "[[48, 38, d >= 4]]_7",
    "[[48, 34, d >= 5]]_7",
    "[[48, 30, d >= 6]]_7",
    "[[48, 26, d >= 7]]_7",
    "[[63, 57, d >= 3]]_8",
    "[[63, 53, d >= 4]]_8",
    "[[63, 49, d >= 5]]_8",
    "[[63, 45, d >= 6]]_8",
    "[[63, 41, d >= 7]]_8",
    "[[80, 54, d >= 8]]_9",
    "[[80, 50, d >= 9]]_9",
    "[[120, 114, d >= 3]]_11",
    "[[120, 106, d >= 5]]_11",
    "[[120, 98, d >= 7]]_11",
    "[[120, 90, d >= 9]]_11",
    "[[120, 82, d >= 11]]_11",
    "[[168, 162, d >= 3]]_13",
    "[[168, 154, d >= 5]]_13",
    "[[168, 146, d >= 7]]_13",
    "[[168, 138, d >= 9]]_13",
    "[[168, 130, d >= 11]]_13",
    "[[168, 122, d >= 13]]_13",
];

const TABLE2: [&str; 25] = [
    "[[15, 9, d >= 3]]_4",
    "[[15, 5, d >= 4]]_4",
    "[[24, 18, d >= 3]]_5",
    "[[24, 14, d >= 4]]_5",
    "[[24, 10, d >= 5]]_5",
    "[[63, 57, d >= 3]]_8",
    "[[63, 53, d >= 4]]_8",
    "[[63, 49, d >= 5]]_8",
    "[[63, 45, d >= 6]]_8",
    "[[63, 41, d >= 7]]_8",
    "[[63, 37, d >= 8]]_8",
    "[[255, 244, d >= 3]]_4",
    "[[255, 236, d >= 4]]_4",
    "[[624, 613, d >= 3]]_5",
    "[[624, 605, d >= 4]]_5",
    "[[624, 597, d >= 5]]_5",
    "[[124, 102, d >= 5]]_5",
    "[[342, 320, d >= 5]]_7",
    "[[342, 314, d >= 6]]_7",
    "[[342, 308, d >= 7]]_7",
    "[[255, 242, d >= 3]]_4",
    "[[255, 234, d >= 4]]_4",
    "[[624, 611, d >= 3]]_5",
    "[[624, 603, d >= 4]]_5",
    "[[624, 595, d >= 5]]_5",
];

const TABLE3: [&str; 33] = [
    "(15, 8, 5; 1, dfree >= 9)_4",
    "(24, 15, 7; 1, dfree >= 11)_5",
    "(48, 35, 11; 1, dfree >= 15)_7",
    "(63, 48, 13; 1, dfree >= 17)_8",
    "(80, 63, 15; 1, dfree >= 19)_9",
    "(120, 99, 19; 1, dfree >= 23)_11",
    "(168, 143, 23; 1, dfree >= 27)_13",
    "(255, 224, 29; 1, dfree >= 33)_16",
    "(15, 7, 4; 1, dfree >= 9)_4",
    "(24, 14, 6; 1, dfree >= 11)_5",
    "(120, 98, 18; 1, dfree >= 23)_11",
    "(168, 142, 22; 1, dfree >= 27)_13",
    "(255, 223, 28; 1, dfree >= 33)_16",
    "(15, 5, 2; 1, dfree >= 9)_4",
    "(24, 12, 4; 1, dfree >= 11)_5",
    "(24, 10, 2; 1, dfree >= 11)_5",
    "(48, 32, 8; 1, dfree >= 15)_7",
    "(48, 30, 6; 1, dfree >= 15)_7",
    "(48, 28, 4; 1, dfree >= 15)_7",
    "(48, 26, 2; 1, dfree >= 15)_7",
    "(255, 221, 26; 1, dfree >= 33)_16",
    "(255, 219, 24; 1, dfree >= 33)_16",
    "(255, 213, 18; 1, dfree >= 33)_16",
    "(255, 209, 14; 1, dfree >= 33)_16",
    "(255, 203, 8; 1, dfree >= 33)_16",
    "(255, 197, 2; 1, dfree >= 33)_16",
    "(15, 8, 3; 1, dfree >= 8)_4",
    "(24, 15, 3; 1, dfree >= 9)_5",
    "(24, 15, 5; 1, dfree >= 10)_5",
    "(48, 35, 3; 1, dfree >= 11)_7",
    "(48, 35, 5; 1, dfree >= 12)_7",
    "(48, 35, 7; 1, dfree >= 13)_7",
    "(48, 35, 9; 1, dfree >= 14)_7",
];

struct Verdict {
    ok: bool,
    detail: String,
}

fn verdict(ok: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        ok,
        detail: detail.into(),
    }
}

fn check_table(which: u8, expected: &[&str]) -> Verdict {
    let report = match table(which, &TableOptions::default()) {
        Ok(r) => r,
        Err(e) => return verdict(false, e.to_string()),
    };
    let got: Vec<&str> = report.rows.iter().map(|r| r.params.as_str()).collect();
    if got != expected {
        let diff: Vec<String> = expected
            .iter()
            .zip(got.iter().chain(std::iter::repeat(&"<missing>")))
            .filter(|(e, g)| e != g)
            .map(|(e, g)| format!("{e} vs {g}"))
            .collect();
        return verdict(false, format!("{} rows, differences: {}", got.len(), diff.join("; ")));
    }
    let mismatches = report.rows.iter().filter(|r| r.status == Status::Mismatch).count();
    let verified = report
        .rows
        .iter()
        .filter(|r| r.status == Status::OracleVerified)
        .count();
    verdict(
        mismatches == 0 && report.discrepancies.is_empty(),
        format!(
            "{} rows exact, {verified} oracle-verified, {mismatches} mismatches",
            got.len()
        ),
    )
}

fn coset_sweep() -> Verdict {
    let report = coset_theorem_sweep(&[3, 5, 7, 9, 11, 13], &[2, 3, 4], &OracleBudget::default());
    let failures: Vec<String> = report
        .failures()
        .map(|e| format!("q={} m={} {}: {:?}", e.q, e.m, e.check, e.detail))
        .collect();
    verdict(
        failures.is_empty(),
        format!(
            "{} passed, {} skipped, {} failed {}",
            report.count(Outcome::Pass),
            report.count(Outcome::Skipped),
            failures.len(),
            failures.join("; ")
        ),
    )
}

fn family_distances() -> Verdict {
    let mut checked = 0;
    let mut bad = Vec::new();
    for q in [3, 4, 5] {
        for p in css_family_instances(q, 2) {
            let c = p.claimed_distance();
            for (name, code) in [("C1", p.outer()), ("C2^perp", p.inner_dual())] {
                checked += 1;
                match min_distance_exact(code, DEFAULT_CODEWORD_BUDGET) {
                    Ok((d, _)) if d >= c => {}
                    Ok((d, _)) => bad.push(format!("{} q={q} c={c} {name}: d = {d}", p.family())),
                    Err(e) => bad.push(format!("{} q={q} c={c} {name}: {e}", p.family())),
                }
            }
        }
    }
    verdict(
        bad.is_empty() && checked > 0,
        format!("{checked} codes exact, {} below c {}", bad.len(), bad.join("; ")),
    )
}

fn css_exact() -> Verdict {
    let pairs = [family_good1(3), family_good2(4, 3)];
    let mut out = Vec::new();
    let mut ok = true;
    for p in pairs {
        let p = match p {
            Ok(p) => p,
            Err(e) => return verdict(false, e.to_string()),
        };
        match css_true_distance(&p, DEFAULT_CODEWORD_BUDGET) {
            Ok(Some(d)) => {
                ok &= d >= 3;
                out.push(format!("{} has D = {d}", p.bracket()));
            }
            other => {
                ok = false;
                out.push(format!("{}: {other:?}", p.bracket()));
            }
        }
    }
    verdict(ok, out.join(", "))
}

fn conv_soundness() -> Verdict {
    let mut instances = 0;
    let mut bad = Vec::new();
    for q in [4, 5, 7, 8] {
        for code in conv_family_instances(q) {
            instances += 1;
            let r = check_reduced_basic(code.field(), q, code.generator());
            if !r.passes() || r.rank_h0 < r.max_rank_higher {
                bad.push(format!("{} q={q}: {}", code.family(), r.failures.join("; ")));
            }
        }
    }
    let search = family_mainconv(4).map_err(|e| e.to_string()).and_then(|code| {
        let opts = SearchOptions {
            allow_partial: true,
            ..SearchOptions::default()
        };
        free_distance_upper(&code, 2, &opts).map_err(|e| e.to_string())
    });
    let (found, detail) = match &search {
        Ok(s) => (
            s.value,
            format!(
                "lightest V^perp word of degree <= 2: {:?} ({})",
                s.value,
                if s.exhaustive() { "exhaustive" } else { "partial" }
            ),
        ),
        Err(e) => (None, e.clone()),
    };
    verdict(
        bad.is_empty() && instances > 0 && found.is_some_and(|v| v >= 9),
        format!("{instances} instances reduced basic, {} failures{}; {detail}", bad.len(), bad.iter().map(|b| format!(" {b}")).collect::<String>()),
    )
}

fn identities() -> Verdict {
    let qs = prime_powers(2, 9);
    let report = verify_cyclic(&qs, IDENTITY_MAX_N, &VerifyOptions::default());
    let predicate_rows = report
        .rows
        .iter()
        .filter(|r| r.check == "dual-predicates-agree")
        .count();
    let fails: Vec<String> = report.discrepancies.iter().map(|d| d.to_string()).collect();
    verdict(
        fails.is_empty() && predicate_rows > 0,
        format!(
            "{} checks passed over {predicate_rows} coset spaces, {} failed {}",
            report.count(Outcome::Pass),
            fails.len(),
            fails.join("; ")
        ),
    )
}

fn main() {
    type Criterion = (u32, &'static str, Duration, fn() -> Verdict);
    let criteria: [Criterion; 8] = [
        (1, "table 1 regeneration", TABLE1_LIMIT, || check_table(1, &TABLE1)),
        (2, "table 2 regeneration", TABLE2_LIMIT, || check_table(2, &TABLE2)),
        (3, "table 3 regeneration", TABLE3_LIMIT, || check_table(3, &TABLE3)),
        (4, "coset sweep", SWEEP_LIMIT, coset_sweep),
        (5, "family distances", DISTANCE_LIMIT, family_distances),
        (6, "css exact distance", CSS_EXACT_LIMIT, css_exact),
        (7, "convolutional soundness", CONV_LIMIT, conv_soundness),
        (8, "algebraic identities", Duration::MAX, identities),
    ];
    let mut failed = 0;
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let v = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= limit;
        let ok = v.ok && in_time;
        if !ok {
            failed += 1;
        }
        let limit_text = if limit == Duration::MAX {
            String::new()
        } else {
            format!(" (limit {:.0?})", limit)
        };
        println!(
            "{} {id} {name}: {} [{:.2?}{limit_text}]",
            if ok { "PASS" } else { "FAIL" },
            v.detail.trim_end(),
            elapsed
        );
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}

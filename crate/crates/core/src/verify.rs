//! Verification sweeps behind the `verify` subcommand.
//!
//! Each scope returns one row per check. A failing row also yields a
//! [`Discrepancy`]; a row over budget is `skipped`, never silently passed.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::conv::{
    check_reduced_basic, free_distance_upper, ConvCode, ConvError, ConvFamily, SearchOptions,
};
use crate::cosets::{all_cosets, modulus, DEFAULT_MODULUS_CAP};
use crate::css::{CssFamily, CssParams};
use crate::cyclic::{
    dual_containing_by_complementary, dual_containing_by_inverse, CodeSpace, CyclicCode,
    DefiningSet,
};
use crate::gf::{prime_power, rank, Poly};
use crate::oracle::{
    coset_theorem_sweep, css_true_distance, verify_min_distance_at_least, OracleBudget,
    OracleError, Outcome,
};
use crate::report::Discrepancy;
use crate::tables::{build_conv_family, build_css};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyRow {
    pub scope: String,
    pub subject: String,
    pub check: String,
    pub outcome: Outcome,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub rows: Vec<VerifyRow>,
    pub discrepancies: Vec<Discrepancy>,
}

impl VerifyReport {
    fn push(&mut self, scope: &str, subject: &str, check: &str, result: Result<Option<String>, String>) {
        let (outcome, detail) = match result {
            Ok(d) => (Outcome::Pass, d),
            Err(d) => {
                self.discrepancies.push(Discrepancy {
                    module: scope.into(),
                    check: check.into(),
                    inputs: subject.into(),
                    expected: "holds".into(),
                    actual: d.clone(),
                });
                (Outcome::Fail, Some(d))
            }
        };
        self.rows.push(VerifyRow {
            scope: scope.into(),
            subject: subject.into(),
            check: check.into(),
            outcome,
            detail,
        });
    }

    fn skip(&mut self, scope: &str, subject: &str, check: &str, why: String) {
        self.rows.push(VerifyRow {
            scope: scope.into(),
            subject: subject.into(),
            check: check.into(),
            outcome: Outcome::Skipped,
            detail: Some(why),
        });
    }

    pub fn extend(&mut self, other: VerifyReport) {
        self.rows.extend(other.rows);
        self.discrepancies.extend(other.discrepancies);
    }

    pub fn count(&self, outcome: Outcome) -> usize {
        self.rows.iter().filter(|r| r.outcome == outcome).count()
    }

    pub fn all_passed(&self) -> bool {
        self.discrepancies.is_empty()
    }

    fn merge(parts: Vec<VerifyReport>) -> VerifyReport {
        let mut out = VerifyReport::default();
        for p in parts {
            out.extend(p);
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOptions {
    /// Codeword budget for each exhaustive search; 0 skips them all.
    pub budget: u64,
    pub modulus_cap: u64,
    /// Largest input degree for free-distance searches.
    pub conv_degree: usize,
    /// Permit partial free-distance searches beyond the budget.
    pub allow_partial: bool,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            budget: crate::oracle::DEFAULT_CODEWORD_BUDGET,
            modulus_cap: DEFAULT_MODULUS_CAP,
            conv_degree: 1,
            allow_partial: false,
            seed: 0,
        }
    }
}

/// Prime powers in `lo..=hi`.
pub fn prime_powers(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(2)..=hi).filter(|&q| prime_power(q).is_some()).collect()
}

fn over_budget(e: impl std::fmt::Display) -> String {
    format!("over budget: {e}")
}

/// Structural coset sweep over `q_list × m_list`.
pub fn verify_cosets(q_list: &[u64], m_list: &[u32], opts: &VerifyOptions) -> VerifyReport {
    let mut report = VerifyReport::default();
    if opts.budget == 0 {
        report.skip("cosets", "all", "coset-sweep", "budget is 0".into());
        return report;
    }
    let budget = OracleBudget {
        max_codewords: opts.budget,
        max_modulus: opts.modulus_cap,
        seed: opts.seed,
    };
    let sweep = coset_theorem_sweep(q_list, m_list, &budget);
    report.discrepancies = sweep.discrepancies();
    report.rows = sweep
        .entries
        .into_iter()
        .map(|e| VerifyRow {
            scope: "cosets".into(),
            subject: format!("q={} m={}", e.q, e.m),
            check: e.check,
            outcome: e.outcome,
            detail: e.detail,
        })
        .collect();
    report
}

/// Every family code of length at most `n_max` over a field in `q_list`,
/// plus every single-coset code, labelled.
pub fn constructed_codes(q_list: &[u64], n_max: u64) -> Vec<(String, CyclicCode)> {
    let mut out = Vec::new();
    for &q in q_list {
        for m in 1..=8u32 {
            let Some(n) = modulus(q, m) else { break };
            if n > n_max {
                break;
            }
            if n < 2 {
                continue;
            }
            let Ok(space) = CodeSpace::new(q, m) else { continue };
            if let Ok(cosets) = all_cosets(q, m) {
                for c in cosets {
                    let code = CyclicCode::from_exponents(&space, &[c.rep() as i64]);
                    out.push((format!("q={q} m={m} Z=C{}", c.rep()), code));
                }
            }
            for p in css_family_instances(q, m) {
                let tag = format!("{} q={q} m={m} c={}", p.family(), p.claimed_distance());
                out.push((format!("{tag} C1"), p.outer().clone()));
                out.push((format!("{tag} C2"), p.inner().clone()));
                out.push((format!("{tag} C2^perp"), p.inner_dual().clone()));
            }
            if m == 2 {
                for code in conv_family_instances(q) {
                    let tag = format!("{} q={q}", code.family());
                    out.push((format!("{tag} parent"), code.parent().clone()));
                    out.push((format!("{tag} head"), code.head().clone()));
                    out.push((format!("{tag} tail"), code.tail().clone()));
                }
            }
        }
    }
    out
}

/// Every CSS family instance at `(q, m)` that its constructor accepts.
pub fn css_family_instances(q: u64, m: u32) -> Vec<CssParams> {
    let mut out = Vec::new();
    if m == 2 {
        out.extend(build_css(CssFamily::Good1, q, 2, q));
        out.extend((2..q).filter_map(|c| build_css(CssFamily::Good2, q, 2, c).ok()));
    }
    if m % 2 == 0 {
        out.extend((2..=q).filter_map(|c| build_css(CssFamily::Good3, q, m, c).ok()));
    }
    if m >= 3 {
        out.extend((2..=q).filter_map(|c| build_css(CssFamily::Es, q, m, c).ok()));
    }
    out
}

/// Every convolutional family instance over GF(q) that its constructor accepts.
pub fn conv_family_instances(q: u64) -> Vec<ConvCode> {
    let mut fams = vec![ConvFamily::Main, ConvFamily::B, ConvFamily::E];
    for i in 1..q {
        fams.push(ConvFamily::C(i));
        fams.push(ConvFamily::D(i));
    }
    fams.into_iter()
        .filter_map(|f| build_conv_family(f, q).ok())
        .collect()
}

fn identity_checks(label: &str, code: &CyclicCode, opts: &VerifyOptions) -> VerifyReport {
    let mut r = VerifyReport::default();
    let field = code.field();
    let n = code.n() as usize;
    let k = code.dimension() as usize;

    let product = code.generator().mul(&code.check_polynomial(), field);
    r.push(
        "cyclic",
        label,
        "generator-times-check",
        (product == Poly::x_n_minus_one(field, n))
            .then_some(None)
            .ok_or_else(|| "g(x) h(x) != x^n - 1".to_string()),
    );

    let h = code.check_matrix();
    let g = code.generator_matrix();
    let orthogonal = k == 0 || h.rows() == 0 || h.mul(field, &g.transpose()).is_zero();
    let rh = rank(field, &h);
    let rg = rank(field, &g);
    let ok = orthogonal && rh == n - k && rg == k && h.all_in_subfield(field, code.q());
    r.push(
        "cyclic",
        label,
        "null-space",
        ok.then_some(None).ok_or_else(|| {
            format!("orthogonal={orthogonal}, rank H = {rh} (want {}), rank G = {rg} (want {k})", n - k)
        }),
    );

    if opts.budget == 0 {
        r.skip("cyclic", label, "distance-at-least-bch", "budget is 0".into());
    } else {
        let bound = code.bch_bound().min(n as u64 + 1);
        match verify_min_distance_at_least(code, bound, opts.budget) {
            Ok((true, _)) => r.push("cyclic", label, "distance-at-least-bch", Ok(None)),
            Ok((false, _)) => r.push(
                "cyclic",
                label,
                "distance-at-least-bch",
                Err(format!("a nonzero word lighter than {bound}")),
            ),
            Err(e) => r.skip("cyclic", label, "distance-at-least-bch", over_budget(e)),
        }
    }
    r
}

/// Compares the two dual-containment predicates on every union of at most
/// `max_cosets` cosets modulo `q^m - 1`. Returns `(sets tried, disagreements)`.
pub fn dual_predicate_agreement(q: u64, m: u32, max_cosets: usize) -> (u64, Vec<String>) {
    let Ok(cosets) = all_cosets(q, m) else {
        return (0, vec!["modulus over cap".into()]);
    };
    let reps: Vec<i64> = cosets.iter().map(|c| c.rep() as i64).collect();
    let mut tried = 0u64;
    let mut bad = Vec::new();
    let mut pick: Vec<usize> = Vec::new();
    fn walk(
        q: u64,
        m: u32,
        reps: &[i64],
        start: usize,
        left: usize,
        pick: &mut Vec<usize>,
        tried: &mut u64,
        bad: &mut Vec<String>,
    ) {
        let exps: Vec<i64> = pick.iter().map(|&i| reps[i]).collect();
        let z = DefiningSet::from_exponents(q, m, &exps);
        *tried += 1;
        if dual_containing_by_inverse(&z) != dual_containing_by_complementary(&z) {
            bad.push(z.to_string());
        }
        if left == 0 {
            return;
        }
        for i in start..reps.len() {
            pick.push(i);
            walk(q, m, reps, i + 1, left - 1, pick, tried, bad);
            pick.pop();
        }
    }
    walk(q, m, &reps, 0, max_cosets, &mut pick, &mut tried, &mut bad);
    (tried, bad)
}

/// Algebraic identities for every constructed code of length at most
/// `n_max`, plus predicate agreement over unions of up to four cosets.
pub fn verify_cyclic(q_list: &[u64], n_max: u64, opts: &VerifyOptions) -> VerifyReport {
    let codes = constructed_codes(q_list, n_max);
    let mut parts: Vec<VerifyReport> = codes
        .par_iter()
        .map(|(label, code)| identity_checks(label, code, opts))
        .collect();
    let spaces: Vec<(u64, u32)> = q_list
        .iter()
        .flat_map(|&q| (1..=8u32).map(move |m| (q, m)))
        .filter(|&(q, m)| modulus(q, m).is_some_and(|n| n >= 2 && n <= n_max))
        .collect();
    parts.par_extend(spaces.par_iter().map(|&(q, m)| {
        let mut r = VerifyReport::default();
        let (tried, bad) = dual_predicate_agreement(q, m, 4);
        let subject = format!("q={q} m={m}");
        r.push(
            "cyclic",
            &subject,
            "dual-predicates-agree",
            if bad.is_empty() {
                Ok(Some(format!("{tried} defining sets")))
            } else {
                Err(format!("disagree on {}", bad.join(", ")))
            },
        );
        r
    }));
    VerifyReport::merge(parts)
}

fn css_checks(p: &CssParams, opts: &VerifyOptions) -> VerifyReport {
    let mut r = VerifyReport::default();
    let c = p.claimed_distance();
    let subject = format!("{} q={} m={} c={} {}", p.family(), p.q(), p.m(), c, p.bracket());
    r.push(
        "css",
        &subject,
        "dimension",
        match p.closed_form_k() {
            Some(k) if k != p.k() => Err(format!("k = {}, closed form {k}", p.k())),
            _ => Ok(None),
        },
    );
    r.push(
        "css",
        &subject,
        "distance-bound",
        (p.d_lb() >= c)
            .then(|| Some(format!("bound {}", p.d_lb())))
            .ok_or_else(|| format!("bound {} < {c}", p.d_lb())),
    );
    for (check, code) in [("outer-distance", p.outer()), ("inner-dual-distance", p.inner_dual())] {
        if opts.budget == 0 {
            r.skip("css", &subject, check, "budget is 0".into());
            continue;
        }
        match verify_min_distance_at_least(code, c, opts.budget) {
            Ok((true, route)) => r.push("css", &subject, check, Ok(Some(format!("{route:?}")))),
            Ok((false, _)) => r.push("css", &subject, check, Err(format!("a word lighter than {c}"))),
            Err(e) => r.skip("css", &subject, check, over_budget(e)),
        }
    }
    if opts.budget == 0 {
        r.skip("css", &subject, "true-distance", "budget is 0".into());
    } else {
        match css_true_distance(p, opts.budget) {
            Ok(Some(d)) if d >= c => r.push("css", &subject, "true-distance", Ok(Some(format!("D = {d}")))),
            Ok(Some(d)) => r.push("css", &subject, "true-distance", Err(format!("D = {d} < {c}"))),
            Ok(None) => r.skip("css", &subject, "true-distance", "degenerate pair".into()),
            Err(OracleError::BudgetExceeded { needed, budget }) => r.skip(
                "css",
                &subject,
                "true-distance",
                format!("over budget: needs {needed} > {budget}"),
            ),
            Err(e) => r.push("css", &subject, "true-distance", Err(e.to_string())),
        }
    }
    r
}

/// Family instances over each `q` in `q_list` at `m = 2`, and at `m = 3, 4`
/// when the length stays at most 80.
pub fn verify_css(q_list: &[u64], opts: &VerifyOptions) -> VerifyReport {
    let mut params = Vec::new();
    for &q in q_list {
        for m in 2..=4u32 {
            if m > 2 && !modulus(q, m).is_some_and(|n| n <= 80) {
                continue;
            }
            params.extend(css_family_instances(q, m));
        }
    }
    VerifyReport::merge(params.par_iter().map(|p| css_checks(p, opts)).collect())
}

fn conv_checks(code: &ConvCode, opts: &VerifyOptions) -> VerifyReport {
    let mut r = VerifyReport::default();
    let subject = format!("{} q={} {}", code.family(), code.q(), code.bracket());
    let basic = check_reduced_basic(code.field(), code.q(), code.generator());
    r.push(
        "conv",
        &subject,
        "rank-condition",
        (basic.rank_condition && basic.rank_h0 >= basic.max_rank_higher)
            .then_some(None)
            .ok_or_else(|| format!("rank H0 = {}, rank H1 = {}", basic.rank_h0, basic.max_rank_higher)),
    );
    r.push(
        "conv",
        &subject,
        "reduced-basic",
        basic.passes().then_some(None).ok_or_else(|| basic.failures.join("; ")),
    );
    if let Some(claim) = code.claimed() {
        r.push(
            "conv",
            &subject,
            "parameters",
            ((code.k(), code.degree(), code.memory()) == (claim.k, claim.degree, 1))
                .then_some(None)
                .ok_or_else(|| {
                    format!(
                        "k = {}, degree = {}, memory = {}; claimed k = {}, degree = {}",
                        code.k(),
                        code.degree(),
                        code.memory(),
                        claim.k,
                        claim.degree
                    )
                }),
        );
    }
    let shown = code.shown_bound();
    r.push(
        "conv",
        &subject,
        "distance-bound",
        (code.dfree_lb() >= shown)
            .then(|| Some(format!("bound {}", code.dfree_lb())))
            .ok_or_else(|| format!("bound {} < {shown}", code.dfree_lb())),
    );
    if opts.budget == 0 {
        r.skip("conv", &subject, "free-distance-search", "budget is 0".into());
        return r;
    }
    let search = SearchOptions {
        budget: opts.budget,
        allow_partial: opts.allow_partial,
        seed: opts.seed,
    };
    match free_distance_upper(code, opts.conv_degree, &search) {
        Ok(s) => {
            let how = if s.exhaustive() { "exhaustive" } else { "partial" };
            match s.value {
                Some(v) if v < shown => r.push(
                    "conv",
                    &subject,
                    "free-distance-search",
                    Err(format!("word of weight {v} with degree <= {}", opts.conv_degree)),
                ),
                v => r.push(
                    "conv",
                    &subject,
                    "free-distance-search",
                    Ok(Some(format!(
                        "{how}, degree <= {}, lightest {}",
                        opts.conv_degree,
                        v.map_or("none".into(), |v| v.to_string())
                    ))),
                ),
            }
        }
        Err(ConvError::BudgetExceeded { needed, budget }) => r.skip(
            "conv",
            &subject,
            "free-distance-search",
            format!("over budget: needs {needed} > {budget}"),
        ),
        Err(e) => r.push("conv", &subject, "free-distance-search", Err(e.to_string())),
    }
    r
}

/// Every convolutional family instance over each `q` in `q_list`.
pub fn verify_conv(q_list: &[u64], opts: &VerifyOptions) -> VerifyReport {
    let codes: Vec<ConvCode> = q_list.iter().flat_map(|&q| conv_family_instances(q)).collect();
    VerifyReport::merge(codes.par_iter().map(|c| conv_checks(c, opts)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_power_list() {
        assert_eq!(prime_powers(1, 13), vec![2, 3, 4, 5, 7, 8, 9, 11, 13]);
    }

    #[test]
    fn predicates_agree_small() {
        let (tried, bad) = dual_predicate_agreement(3, 2, 4);
        // 5 cosets: 1 + 5 + 10 + 10 + 5 subsets of size <= 4
        assert_eq!(tried, 31);
        assert!(bad.is_empty());
    }

    #[test]
    fn zero_budget_skips_searches() {
        let opts = VerifyOptions {
            budget: 0,
            ..VerifyOptions::default()
        };
        let r = verify_css(&[3], &opts);
        assert!(r.all_passed());
        assert!(r.count(Outcome::Skipped) > 0);
        assert!(r
            .rows
            .iter()
            .filter(|x| x.check.ends_with("distance") && x.check != "distance-bound")
            .all(|x| x.outcome == Outcome::Skipped));
    }

    #[test]
    fn css_q3_confirmed() {
        let r = verify_css(&[3], &VerifyOptions::default());
        assert!(r.all_passed(), "{:?}", r.discrepancies);
        assert_eq!(r.count(Outcome::Fail), 0);
    }
}

//! Regeneration of the three parameter tables.
//!
//! Only the parameter tuples are listed here. Every printed value is
//! recomputed from the family constructors.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::conv::{
    check_reduced_basic, family_mainconv, family_mainconv_b, family_mainconv_c,
    family_mainconv_d, family_mainconv_e, free_distance_upper, ConvCode, ConvError, ConvFamily,
    SearchOptions,
};
use crate::css::{family_es, family_good1, family_good2, family_good3, CssError, CssFamily, CssParams};
use crate::cyclic::CyclicCode;
use crate::oracle::{verify_min_distance_at_least, OracleError};
use crate::report::{Discrepancy, Status, TableRow};

/// Oracle budget used by `table` when none is given.
pub const TABLE_ORACLE_BUDGET: u64 = 200_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableError {
    #[error(transparent)]
    Css(#[from] CssError),
    #[error(transparent)]
    Conv(#[from] ConvError),
    #[error("no table {0}; expected 1, 2 or 3")]
    Unknown(u8),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableOptions {
    /// `None` skips exhaustive checks entirely.
    pub oracle_budget: Option<u64>,
    /// Largest input degree searched for convolutional rows.
    pub conv_degree: usize,
}

impl Default for TableOptions {
    fn default() -> Self {
        TableOptions {
            oracle_budget: Some(TABLE_ORACLE_BUDGET),
            conv_degree: 1,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    pub rows: Vec<TableRow>,
    pub discrepancies: Vec<Discrepancy>,
}

/// `(q, c)` for the first table; `c = q` selects good1.
pub fn table1_instances() -> Vec<(u64, u64)> {
    let mut v = vec![(5, 3), (5, 5)];
    v.extend((3..=7).map(|c| (7, c)));
    v.extend((3..=7).map(|c| (8, c)));
    v.extend([(9, 8), (9, 9)]);
    v.extend([3, 5, 7, 9, 11].map(|c| (11, c)));
    v.extend([3, 5, 7, 9, 11, 13].map(|c| (13, c)));
    v
}

/// `(family, q, m, c)` for the second table.
pub fn table2_instances() -> Vec<(CssFamily, u64, u32, u64)> {
    use CssFamily::{Es, Good3};
    let mut v = vec![(Good3, 4, 2, 3), (Good3, 4, 2, 4)];
    v.extend((3..=5).map(|c| (Good3, 5, 2, c)));
    v.extend((3..=8).map(|c| (Good3, 8, 2, c)));
    v.extend([(Good3, 4, 4, 3), (Good3, 4, 4, 4)]);
    v.extend((3..=5).map(|c| (Good3, 5, 4, c)));
    v.push((Es, 5, 3, 5));
    v.extend((5..=7).map(|c| (Es, 7, 3, c)));
    v.extend([(Es, 4, 4, 3), (Es, 4, 4, 4)]);
    v.extend((3..=5).map(|c| (Es, 5, 4, c)));
    v
}

/// `(family, q)` for the third table.
pub fn table3_instances() -> Vec<(ConvFamily, u64)> {
    let mut v: Vec<(ConvFamily, u64)> = [4, 5, 7, 8, 9, 11, 13, 16]
        .map(|q| (ConvFamily::Main, q))
        .to_vec();
    v.extend([4, 5, 11, 13, 16].map(|q| (ConvFamily::B, q)));
    for (q, i) in [
        (4, 1),
        (5, 1),
        (5, 2),
        (7, 1),
        (7, 2),
        (7, 3),
        (7, 4),
        (16, 1),
        (16, 2),
        (16, 5),
        (16, 7),
        (16, 10),
        (16, 13),
    ] {
        v.push((ConvFamily::C(i), q));
    }
    for (q, i) in [(4, 1), (5, 1), (5, 2), (7, 1), (7, 2), (7, 3), (7, 4)] {
        v.push((ConvFamily::D(i), q));
    }
    v
}

pub fn build_css(family: CssFamily, q: u64, m: u32, c: u64) -> Result<CssParams, CssError> {
    match family {
        CssFamily::Good1 => family_good1(q),
        CssFamily::Good2 => family_good2(q, c),
        CssFamily::Good3 => family_good3(q, m, c),
        CssFamily::Es => family_es(q, m, c),
        CssFamily::Pair => Err(CssError::Range("a bare pair has no constructor".into())),
    }
}

pub fn build_conv_family(family: ConvFamily, q: u64) -> Result<ConvCode, ConvError> {
    match family {
        ConvFamily::Main => family_mainconv(q),
        ConvFamily::B => family_mainconv_b(q),
        ConvFamily::C(i) => family_mainconv_c(q, i),
        ConvFamily::D(i) => family_mainconv_d(q, i),
        ConvFamily::E => family_mainconv_e(q),
        ConvFamily::Custom => Err(ConvError::Range("custom codes have no constructor".into())),
    }
}

enum Check {
    Verified,
    Skipped,
    Failed(String),
}

fn oracle_distance(code: &CyclicCode, bound: u64, budget: u64) -> Check {
    match verify_min_distance_at_least(code, bound, budget) {
        Ok((true, _)) => Check::Verified,
        Ok((false, route)) => Check::Failed(format!("a word of weight < {bound} exists ({route:?})")),
        Err(OracleError::BudgetExceeded { .. }) => Check::Skipped,
        Err(e) => Check::Failed(e.to_string()),
    }
}

fn finish(oracle: Option<Vec<Check>>, found: &mut Vec<Discrepancy>, mk: impl Fn(&str, String) -> Discrepancy) -> Status {
    let mut status = match &oracle {
        None => Status::FormulaMatch,
        Some(checks) if checks.iter().all(|c| matches!(c, Check::Verified)) => Status::OracleVerified,
        Some(_) => Status::OracleSkipped,
    };
    for c in oracle.into_iter().flatten() {
        if let Check::Failed(msg) = c {
            found.push(mk("oracle", msg));
        }
    }
    if !found.is_empty() {
        status = Status::Mismatch;
    }
    status
}

/// Row for a CSS code together with any disagreement found.
pub fn css_row(table: u8, p: &CssParams, opts: &TableOptions) -> (TableRow, Vec<Discrepancy>) {
    let c = p.claimed_distance();
    let inputs = format!("{} q={} m={} c={}", p.family(), p.q(), p.m(), c);
    let mk = |check: &str, actual: String| Discrepancy {
        module: "css".into(),
        check: check.into(),
        inputs: inputs.clone(),
        expected: match check {
            "dimension" => format!("k = {:?}", p.closed_form_k()),
            _ => format!("d >= {c}"),
        },
        actual,
    };
    let mut found = Vec::new();
    if p.closed_form_k() != Some(p.k()) {
        found.push(mk("dimension", format!("k = {}", p.k())));
    }
    if p.d_lb() < c {
        found.push(mk("distance-bound", format!("computed bound {}", p.d_lb())));
    }
    let oracle = opts.oracle_budget.map(|b| {
        vec![
            oracle_distance(p.outer(), c, b),
            oracle_distance(p.inner_dual(), c, b),
        ]
    });
    let status = finish(oracle, &mut found, mk);
    let row = TableRow {
        table,
        family: p.family().name().into(),
        q: p.q(),
        m: Some(p.m()),
        c: Some(c),
        i: None,
        n: p.n(),
        k: p.k(),
        degree: None,
        memory: None,
        claimed_bound: c,
        computed_bound: p.d_lb(),
        params: p.bracket(),
        status,
        note: (!p.warnings().is_empty()).then(|| p.warnings().join("; ")),
    };
    (row, found)
}

/// Row for a convolutional code together with any disagreement found.
pub fn conv_row(code: &ConvCode, opts: &TableOptions) -> (TableRow, Vec<Discrepancy>) {
    let claim = code.claimed();
    let shown = code.shown_bound();
    let inputs = format!("{} q={}", code.family(), code.q());
    let mk = |check: &str, actual: String| Discrepancy {
        module: "conv".into(),
        check: check.into(),
        inputs: inputs.clone(),
        expected: match (check, claim) {
            ("parameters", Some(c)) => format!("k = {}, degree = {}, memory = 1", c.k, c.degree),
            ("basic", _) => "reduced basic".into(),
            _ => format!("dfree >= {shown}"),
        },
        actual,
    };
    let mut found = Vec::new();
    if let Some(c) = claim {
        if (code.k(), code.degree(), code.memory()) != (c.k, c.degree, 1) {
            found.push(mk(
                "parameters",
                format!("k = {}, degree = {}, memory = {}", code.k(), code.degree(), code.memory()),
            ));
        }
    }
    if code.dfree_lb() < shown {
        found.push(mk("distance-bound", format!("computed bound {}", code.dfree_lb())));
    }
    let oracle = opts.oracle_budget.map(|b| {
        let report = check_reduced_basic(code.field(), code.q(), code.generator());
        let basic = if report.passes() {
            Check::Verified
        } else {
            Check::Failed(report.failures.join("; "))
        };
        let search = SearchOptions {
            budget: b,
            ..SearchOptions::default()
        };
        let upper = match free_distance_upper(code, opts.conv_degree, &search) {
            Ok(r) => match r.value {
                Some(v) if v < shown => Check::Failed(format!("word of weight {v}")),
                _ => Check::Verified,
            },
            Err(ConvError::BudgetExceeded { .. }) => Check::Skipped,
            Err(e) => Check::Failed(e.to_string()),
        };
        vec![basic, upper]
    });
    let status = finish(oracle, &mut found, mk);
    let row = TableRow {
        table: 3,
        family: code.family().name().into(),
        q: code.q(),
        m: Some(2),
        c: None,
        i: code.family().index(),
        n: code.n(),
        k: code.k(),
        degree: Some(code.degree()),
        memory: Some(code.memory()),
        claimed_bound: shown,
        computed_bound: code.dfree_lb(),
        params: code.bracket(),
        status,
        note: None,
    };
    (row, found)
}

fn collect(results: Vec<(TableRow, Vec<Discrepancy>)>) -> TableReport {
    let mut report = TableReport::default();
    for (row, d) in results {
        report.rows.push(row);
        report.discrepancies.extend(d);
    }
    report
}

/// Regenerates table `which` (1, 2 or 3). Row order is fixed regardless of
/// the number of worker threads.
pub fn table(which: u8, opts: &TableOptions) -> Result<TableReport, TableError> {
    match which {
        1 => {
            let rows = table1_instances()
                .par_iter()
                .map(|&(q, c)| {
                    let p = if c == q { family_good1(q)? } else { family_good2(q, c)? };
                    Ok(css_row(1, &p, opts))
                })
                .collect::<Result<Vec<_>, CssError>>()?;
            Ok(collect(rows))
        }
        2 => {
            let rows = table2_instances()
                .par_iter()
                .map(|&(f, q, m, c)| Ok(css_row(2, &build_css(f, q, m, c)?, opts)))
                .collect::<Result<Vec<_>, CssError>>()?;
            Ok(collect(rows))
        }
        3 => {
            let rows = table3_instances()
                .par_iter()
                .map(|&(f, q)| Ok(conv_row(&build_conv_family(f, q)?, opts)))
                .collect::<Result<Vec<_>, ConvError>>()?;
            Ok(collect(rows))
        }
        other => Err(TableError::Unknown(other)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instance_counts() {
        assert_eq!(table1_instances().len(), 25);
        assert_eq!(table2_instances().len(), 25);
        assert_eq!(table3_instances().len(), 33);
    }

    #[test]
    fn unknown_table() {
        assert_eq!(table(4, &TableOptions::default()), Err(TableError::Unknown(4)));
    }

    #[test]
    fn formula_only_rows() {
        let opts = TableOptions {
            oracle_budget: None,
            ..TableOptions::default()
        };
        let p = family_good1(7).unwrap();
        let (row, d) = css_row(1, &p, &opts);
        assert!(d.is_empty());
        assert_eq!(row.status, Status::FormulaMatch);
        assert_eq!(row.params, "[[48, 26, d >= 7]]_7");
    }

    #[test]
    fn zero_budget_skips() {
        let opts = TableOptions {
            oracle_budget: Some(0),
            ..TableOptions::default()
        };
        let (row, d) = css_row(1, &family_good2(5, 3).unwrap(), &opts);
        assert!(d.is_empty());
        assert_eq!(row.status, Status::OracleSkipped);
    }
}

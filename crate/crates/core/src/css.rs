//! CSS quantum codes from nested pairs of cyclic codes.
//!
//! A pair `C2 ⊂ C1` of length-`n` codes gives an `[[n, k1 - k2, D]]_q` code
//! whose distance is at least the smaller of the minimum distances of `C1`
//! and `C2^⊥`. Both are bounded here by their BCH bounds.
//!
//! The four families differ only in which cosets they put in the defining
//! set of `C1` and which cosets they leave out of the defining set of `C2`:
//!
//! | family | `Z(C1)` | cosets left out of `Z(C2)` |
//! |--------|---------|-----------------------------|
//! | good1  | `C_0 .. C_{q-2}` | `C_{q+1} .. C_{2q-1}` |
//! | good2  | `C_0 .. C_{c-2}` | `C_{q+1} .. C_{q+c-1}` |
//! | good3  | `C_0 .. C_{c-2}` | `C_{r+1} .. C_{r+c-1}`, `r = q^{m/2}` |
//! | es     | `C_0 .. C_{c-2}` | `C_{q+1}, C_{2q+1}, .., C_{(c-1)q+1}` |

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cosets::{ladder_cosets, modulus, CosetError};
use crate::cyclic::{CodeSpace, CyclicCode, CyclicError, DefiningSet};
use crate::gf::{self, GfError};
use crate::report::css_bracket;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CssError {
    #[error(transparent)]
    Cyclic(#[from] CyclicError),
    #[error(transparent)]
    Coset(#[from] CosetError),
    #[error("inner code is not contained in the outer code")]
    NotNested,
    #[error("{0}")]
    Range(String),
}

impl From<GfError> for CssError {
    fn from(e: GfError) -> Self {
        CssError::Cyclic(e.into())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CssFamily {
    Good1,
    Good2,
    Good3,
    Es,
    /// Built from an arbitrary nested pair.
    Pair,
}

impl CssFamily {
    pub fn name(self) -> &'static str {
        match self {
            CssFamily::Good1 => "good1",
            CssFamily::Good2 => "good2",
            CssFamily::Good3 => "good3",
            CssFamily::Es => "es",
            CssFamily::Pair => "pair",
        }
    }
}

impl fmt::Display for CssFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parameters of a CSS code together with the pair it came from.
#[derive(Debug, Clone)]
pub struct CssParams {
    family: CssFamily,
    q: u64,
    m: u32,
    c: Option<u64>,
    outer: CyclicCode,
    inner: CyclicCode,
    inner_dual: CyclicCode,
    warnings: Vec<String>,
}

/// CSS parameters of a nested pair `inner ⊂ outer`.
pub fn css_from_pair(outer: &CyclicCode, inner: &CyclicCode) -> Result<CssParams, CssError> {
    if !CyclicCode::nested(outer, inner)? {
        return Err(CssError::NotNested);
    }
    Ok(CssParams {
        family: CssFamily::Pair,
        q: outer.q(),
        m: outer.m(),
        c: None,
        outer: outer.clone(),
        inner: inner.clone(),
        inner_dual: inner.dual(),
        warnings: Vec::new(),
    })
}

impl CssParams {
    pub fn family(&self) -> CssFamily {
        self.family
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Designed distance `c` of a family instance.
    pub fn c(&self) -> Option<u64> {
        self.c
    }

    pub fn n(&self) -> u64 {
        self.outer.n()
    }

    /// Logical dimension `k1 - k2`.
    pub fn k(&self) -> u64 {
        self.outer.dimension() - self.inner.dimension()
    }

    pub fn outer(&self) -> &CyclicCode {
        &self.outer
    }

    pub fn inner(&self) -> &CyclicCode {
        &self.inner
    }

    /// `C2^⊥`.
    pub fn inner_dual(&self) -> &CyclicCode {
        &self.inner_dual
    }

    pub fn outer_bound(&self) -> u64 {
        self.outer.bch_bound()
    }

    pub fn inner_dual_bound(&self) -> u64 {
        self.inner_dual.bch_bound()
    }

    /// `min(bch(C1), bch(C2^⊥))`.
    pub fn d_lb(&self) -> u64 {
        self.outer_bound().min(self.inner_dual_bound())
    }

    /// Distance promised by the family: `c`, or the computed bound for a
    /// bare pair.
    pub fn claimed_distance(&self) -> u64 {
        self.c.unwrap_or_else(|| self.d_lb())
    }

    /// Closed-form logical dimension for the family, if any.
    pub fn closed_form_k(&self) -> Option<u64> {
        let (q, m) = (self.q as i64, self.m as i64);
        let n = self.n() as i64;
        let k = match (self.family, self.c) {
            (CssFamily::Good1, _) => q * q - 4 * q + 5,
            (CssFamily::Good2, Some(c)) => q * q - 4 * c as i64 + 5,
            (CssFamily::Good3, Some(c)) => n - 2 * m * (c as i64 - 2) - m / 2 - 1,
            (CssFamily::Es, Some(c)) => n - m * (2 * c as i64 - 3) - 1,
            _ => return None,
        };
        u64::try_from(k).ok()
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// `[[n, k, d >= D]]_q` with the family's claimed distance.
    pub fn bracket(&self) -> String {
        css_bracket(self.n(), self.k(), self.claimed_distance(), self.q)
    }
}

impl fmt::Display for CssParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.bracket())
    }
}

fn check_q(q: u64) -> Result<(), CssError> {
    if gf::prime_power(q).is_none() {
        return Err(GfError::NotPrimePower(q).into());
    }
    if q < 3 {
        return Err(CssError::Range(format!("q = {q} is below 3")));
    }
    Ok(())
}

fn check_c(q: u64, c: u64) -> Result<(), CssError> {
    if !(2..=q).contains(&c) {
        return Err(CssError::Range(format!("c = {c} outside [2, {q}]")));
    }
    Ok(())
}

fn build(
    family: CssFamily,
    q: u64,
    m: u32,
    c: u64,
    outer_exps: &[i64],
    excluded: &[i64],
) -> Result<CssParams, CssError> {
    let space = CodeSpace::new(q, m)?;
    let outer = CyclicCode::from_exponents(&space, outer_exps);
    let left_out = DefiningSet::from_exponents(q, m, excluded);
    let inner = CyclicCode::from_defining_set(&space, left_out.complement());
    let mut params = css_from_pair(&outer, &inner)?;
    params.family = family;
    params.c = Some(c);
    Ok(params)
}

fn range(lo: u64, hi: u64) -> Vec<i64> {
    (lo..=hi).map(|x| x as i64).collect()
}

/// `[[q^2 - 1, q^2 - 4q + 5, d >= q]]_q`.
pub fn family_good1(q: u64) -> Result<CssParams, CssError> {
    check_q(q)?;
    build(CssFamily::Good1, q, 2, q, &range(0, q - 2), &range(q + 1, 2 * q - 1))
}

/// `[[q^2 - 1, q^2 - 4c + 5, d >= c]]_q` for `2 <= c <= q`.
///
/// `c = q` coincides with [`family_good1`] and carries a warning.
pub fn family_good2(q: u64, c: u64) -> Result<CssParams, CssError> {
    check_q(q)?;
    check_c(q, c)?;
    let mut p = build(CssFamily::Good2, q, 2, c, &range(0, c - 2), &range(q + 1, q + c - 1))?;
    if c == q {
        p.warnings
            .push(format!("c = q = {q} reproduces the good1 construction"));
    }
    Ok(p)
}

/// `[[n, n - 2m(c-2) - m/2 - 1, d >= c]]_q` with `n = q^m - 1`, `m` even.
pub fn family_good3(q: u64, m: u32, c: u64) -> Result<CssParams, CssError> {
    check_q(q)?;
    if m < 2 || m % 2 != 0 {
        return Err(CosetError::OddDegree(m).into());
    }
    check_c(q, c)?;
    modulus(q, m).ok_or_else(|| CssError::Range("q^m overflows".into()))?;
    let r = q.pow(m / 2);
    build(CssFamily::Good3, q, m, c, &range(0, c - 2), &range(r + 1, r + c - 1))
}

/// `[[n, n - m(2c - 3) - 1, d >= c]]_q` with `n = q^m - 1`.
///
/// Needs `(c-1)q + 1 < q^ceil(m/2) - 1` so the left-out cosets are full-size
/// and pairwise disjoint.
pub fn family_es(q: u64, m: u32, c: u64) -> Result<CssParams, CssError> {
    check_q(q)?;
    check_c(q, c)?;
    let ladder = ladder_cosets(q, m, c - 1)?;
    let excluded: Vec<i64> = ladder.iter().map(|x| x.rep() as i64).collect();
    build(CssFamily::Es, q, m, c, &range(0, c - 2), &excluded)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nkd(p: &CssParams) -> (u64, u64, u64) {
        (p.n(), p.k(), p.claimed_distance())
    }

    #[test]
    fn pair_examples() {
        let g1 = family_good1(5).unwrap();
        let p = css_from_pair(g1.outer(), g1.inner()).unwrap();
        assert_eq!((p.n(), p.k(), p.d_lb()), (24, 10, 5));
        let same = css_from_pair(g1.outer(), g1.outer()).unwrap();
        assert_eq!(same.k(), 0);
        let g2 = family_good2(5, 3).unwrap();
        assert_eq!((g2.n(), g2.k()), (24, 18));
        assert!(g2.d_lb() >= 3);
        assert_eq!(
            css_from_pair(g1.inner(), g1.outer()).unwrap_err(),
            CssError::NotNested
        );
    }

    #[test]
    fn good1_examples() {
        assert_eq!(nkd(&family_good1(7).unwrap()), (48, 26, 7));
        assert_eq!(nkd(&family_good1(3).unwrap()), (8, 2, 3));
        assert_eq!(nkd(&family_good1(9).unwrap()), (80, 50, 9));
        assert!(family_good1(2).is_err());
        assert!(family_good1(6).is_err());
    }

    #[test]
    fn good2_examples() {
        assert_eq!(nkd(&family_good2(4, 3).unwrap()), (15, 9, 3));
        assert_eq!(nkd(&family_good2(13, 11).unwrap()), (168, 130, 11));
        assert_eq!(nkd(&family_good2(5, 2).unwrap()), (24, 22, 2));
        assert!(family_good2(13, 14).is_err());
        assert!(family_good2(5, 1).is_err());
    }

    #[test]
    fn good2_at_c_equal_q_matches_good1() {
        for q in [3, 4, 5] {
            let a = family_good1(q).unwrap();
            let b = family_good2(q, q).unwrap();
            assert_eq!(a.outer(), b.outer());
            assert_eq!(a.inner(), b.inner());
            assert_eq!(nkd(&a), nkd(&b));
            assert_eq!(b.warnings().len(), 1);
        }
    }

    #[test]
    fn good3_examples() {
        assert_eq!(nkd(&family_good3(4, 2, 4).unwrap()), (15, 5, 4));
        assert_eq!(nkd(&family_good3(5, 4, 5).unwrap()), (624, 597, 5));
        assert_eq!(nkd(&family_good3(3, 2, 2).unwrap()), (8, 6, 2));
        assert!(family_good3(5, 3, 3).is_err());
    }

    #[test]
    fn es_examples() {
        assert_eq!(nkd(&family_es(5, 3, 5).unwrap()), (124, 102, 5));
        assert_eq!(nkd(&family_es(7, 3, 7).unwrap()), (342, 308, 7));
        assert_eq!(nkd(&family_es(4, 4, 3).unwrap()), (255, 242, 3));
        assert!(matches!(
            family_es(5, 2, 3),
            Err(CssError::Coset(CosetError::LadderHypothesis { .. }))
        ));
    }

    #[test]
    fn closed_forms_and_bounds_agree() {
        let cases = [
            family_good1(5).unwrap(),
            family_good2(7, 4).unwrap(),
            family_good3(4, 4, 4).unwrap(),
            family_es(5, 4, 4).unwrap(),
        ];
        for p in &cases {
            assert_eq!(p.closed_form_k(), Some(p.k()), "{}", p.family());
            assert!(p.d_lb() >= p.claimed_distance(), "{}", p.family());
            assert!(CyclicCode::nested(p.outer(), p.inner()).unwrap());
        }
    }
}

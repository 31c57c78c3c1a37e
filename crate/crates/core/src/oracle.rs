//! Exhaustive checks used as ground truth.
//!
//! Minimum distances are computed exactly by one of two routes:
//!
//! * **messages**: walk every codeword of the span of a generator matrix,
//!   one scalar multiple per line;
//! * **columns**: find the smallest set of columns of a parity-check matrix
//!   that is linearly dependent. A dependent set of `w` columns is exactly the
//!   support of a codeword of weight at most `w`, so the first `w` at which a
//!   dependent set appears is the minimum distance.
//!
//! Both are exact. Anything that would exceed the budget is refused with
//! [`OracleError::BudgetExceeded`] instead of being approximated.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cosets::{
    all_cosets_capped, coset_of, coset_oplus, complementary, complementary_witness,
    disjointness_range, gap_stat, ladder_cosets, ladder_limit, modulus, parity_class,
    special_coset_cardinality, Coset, CosetError, DEFAULT_MODULUS_CAP,
};
use crate::css::CssParams;
use crate::cyclic::{CyclicCode, DefiningSet};
use crate::gf::{Echelon, Elem, Field, Matrix};
use crate::report::Discrepancy;

pub const DEFAULT_CODEWORD_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleBudget {
    /// Largest number of codewords (or column subsets) a search may visit.
    pub max_codewords: u64,
    /// Largest modulus a coset sweep will partition.
    pub max_modulus: u64,
    /// Seed for randomized sampling.
    pub seed: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_codewords: DEFAULT_CODEWORD_BUDGET,
            max_modulus: DEFAULT_MODULUS_CAP,
            seed: 0,
        }
    }
}

impl OracleBudget {
    pub fn with_codewords(max_codewords: u64) -> OracleBudget {
        OracleBudget {
            max_codewords,
            ..OracleBudget::default()
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("search needs more than {budget} steps (estimated {needed})")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error(transparent)]
    Coset(#[from] CosetError),
}

/// Which exact method produced a distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Messages,
    Columns,
}

/// `q^k`, saturating.
pub fn span_size(q: u64, k: u64) -> u64 {
    u32::try_from(k)
        .ok()
        .and_then(|k| q.checked_pow(k))
        .unwrap_or(u64::MAX)
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Upper estimate of the column subsets visited when looking for a
/// dependent set of at most `w` columns among `n`, with one column pinned
/// when `anchored`.
pub fn column_cost(n: u64, w: u64, anchored: bool) -> u64 {
    let (pool, offset) = if anchored { (n.saturating_sub(1), 1) } else { (n, 0) };
    let mut total: u64 = 0;
    for depth in 1..=w {
        let level = (1..=depth)
            .map(|d| binomial(pool, d - offset))
            .fold(0u64, |a, b| a.saturating_add(b));
        total = total.saturating_add(level);
    }
    total
}

/// Zero, one, then the remaining nonzero elements of GF(q) inside `field`.
pub(crate) fn subfield_elements(field: &Field, q: u64) -> Vec<Elem> {
    let step = (field.order() - 1) / (q - 1);
    std::iter::once(0)
        .chain((0..q - 1).map(|j| field.exp((j * step) as i64)))
        .collect()
}

#[inline]
fn add_tracked(field: &Field, word: &mut [Elem], delta: &[Elem], weight: &mut u64) {
    for (x, &d) in word.iter_mut().zip(delta) {
        if d != 0 {
            let was = *x != 0;
            *x = field.add(*x, d);
            let is = *x != 0;
            if was != is {
                if is {
                    *weight += 1;
                } else {
                    *weight -= 1;
                }
            }
        }
    }
}

fn scaled(field: &Field, row: &[Elem], s: Elem) -> Vec<Elem> {
    row.iter().map(|&x| field.mul(x, s)).collect()
}

fn add_into(field: &Field, acc: &mut [Elem], row: &[Elem]) {
    for (a, &b) in acc.iter_mut().zip(row) {
        *a = field.add(*a, b);
    }
}

/// Minimum weight over words `r_j + sum_{i<j} c_i r_i` for every `j >= free`
/// and every coefficient choice.
///
/// Every line of the span that meets the rows `free..` is visited once, so
/// this is the minimum over `span(rows) \ span(rows[..free])` up to scalars.
/// With `stop_below = Some(b)` the walk ends at the first word of weight
/// below `b`. Returns `None` when every visited word is zero.
pub(crate) fn span_min_weight(
    field: &Field,
    q: u64,
    rows: &[Vec<Elem>],
    free: usize,
    stop_below: Option<u64>,
) -> Option<u64> {
    let base = subfield_elements(field, q);
    let qs = q as usize;
    // deltas[i][d] moves coefficient of row i from base[d] to base[d+1] (mod q)
    let deltas: Vec<Vec<Vec<Elem>>> = rows
        .iter()
        .map(|r| {
            (0..qs)
                .map(|d| {
                    let next = base[(d + 1) % qs];
                    scaled(field, r, field.sub(next, base[d]))
                })
                .collect()
        })
        .collect();
    let best = AtomicU64::new(u64::MAX);
    let stop = AtomicBool::new(false);

    let mut tasks = Vec::new();
    for j in free..rows.len() {
        // split the lower rows so that each task walks q^(j - s) words
        let mut s = 0;
        while s < j && span_size(q, s as u64) < 256 {
            s += 1;
        }
        for t in 0..span_size(q, s as u64) {
            tasks.push((j, s, t));
        }
    }
    tasks.par_iter().for_each(|&(j, s, t)| {
        if stop.load(Ordering::Relaxed) {
            return;
        }
        let mut word = rows[j].clone();
        let mut digits = t;
        for i in (j - s)..j {
            let d = (digits % q) as usize;
            digits /= q;
            if d != 0 {
                add_into(field, &mut word, &scaled(field, &rows[i], base[d]));
            }
        }
        let low = j - s;
        let local = walk(field, &mut word, &deltas[..low], qs, stop_below, &stop);
        if let Some(w) = local {
            best.fetch_min(w, Ordering::Relaxed);
            if stop_below.is_some_and(|b| w < b) {
                stop.store(true, Ordering::Relaxed);
            }
        }
    });
    match best.load(Ordering::Relaxed) {
        u64::MAX => None,
        w => Some(w),
    }
}

/// Odometer over all coefficient vectors of the rows behind `deltas`,
/// starting from `word` (all coefficients zero).
fn walk(
    field: &Field,
    word: &mut [Elem],
    deltas: &[Vec<Vec<Elem>>],
    q: usize,
    stop_below: Option<u64>,
    stop: &AtomicBool,
) -> Option<u64> {
    let mut weight = word.iter().filter(|&&x| x != 0).count() as u64;
    let mut best = if weight > 0 { weight } else { u64::MAX };
    if stop_below.is_some_and(|b| best < b) {
        return Some(best);
    }
    let mut digits = vec![0usize; deltas.len()];
    let mut steps: u32 = 0;
    'outer: loop {
        let mut i = 0;
        loop {
            if i == deltas.len() {
                break 'outer;
            }
            let d = digits[i];
            add_tracked(field, word, &deltas[i][d], &mut weight);
            if d + 1 < q {
                digits[i] = d + 1;
                break;
            }
            digits[i] = 0;
            i += 1;
        }
        if weight > 0 && weight < best {
            best = weight;
            if stop_below.is_some_and(|b| best < b) {
                break;
            }
        }
        steps = steps.wrapping_add(1);
        if steps % 4096 == 0 && stop.load(Ordering::Relaxed) {
            break;
        }
    }
    (best != u64::MAX).then_some(best)
}

fn number_of_lines(q: u64, total: usize, free: usize) -> u64 {
    // sum over j >= free of q^j
    (free..total).fold(0u64, |acc, j| acc.saturating_add(span_size(q, j as u64)))
}

/// Exact minimum weight of the nonzero words in the row span of `gens`.
pub fn min_weight_of_span(
    field: &Field,
    q: u64,
    gens: &Matrix,
    budget: u64,
) -> Result<Option<u64>, OracleError> {
    let rows = gens.row_vecs();
    let needed = number_of_lines(q, rows.len(), 0);
    if needed > budget {
        return Err(OracleError::BudgetExceeded { needed, budget });
    }
    Ok(span_min_weight(field, q, &rows, 0, None))
}

/// State of a column-subset search over one or two check matrices.
struct ColumnSearch<'a> {
    field: &'a Field,
    /// `columns[t][c]` is column `c` of matrix `t`.
    columns: Vec<Vec<Vec<Elem>>>,
    n: usize,
    hit: fn(&[usize], usize) -> bool,
}

struct Walker<'a, 'b> {
    search: &'b ColumnSearch<'a>,
    echelons: Vec<Echelon>,
    pushed: Vec<Vec<bool>>,
    visited: &'b AtomicU64,
    abort: &'b AtomicBool,
    budget: u64,
}

impl Walker<'_, '_> {
    fn ranks(&self) -> Vec<usize> {
        self.echelons.iter().map(Echelon::rank).collect()
    }

    fn push(&mut self, c: usize) {
        let flags = self
            .echelons
            .iter_mut()
            .zip(&self.search.columns)
            .map(|(e, cols)| e.insert(self.search.field, &cols[c]))
            .collect();
        self.pushed.push(flags);
    }

    fn pop(&mut self) {
        let flags = self.pushed.pop().expect("pop without push");
        for (e, f) in self.echelons.iter_mut().zip(flags) {
            if f {
                e.pop();
            }
        }
    }

    /// Depth-first over increasing column indices from `start`, up to a
    /// subset size of `limit`.
    fn dfs(&mut self, start: usize, depth: usize, limit: usize) -> bool {
        for c in start..self.search.n {
            if self.search.n - c < limit - depth {
                break;
            }
            if self.abort.load(Ordering::Relaxed) {
                return false;
            }
            if self.visited.fetch_add(1, Ordering::Relaxed) >= self.budget {
                self.abort.store(true, Ordering::Relaxed);
                return false;
            }
            self.push(c);
            if (self.search.hit)(&self.ranks(), depth + 1) {
                self.pop();
                return true;
            }
            if depth + 1 < limit && self.dfs(c + 1, depth + 1, limit) {
                self.pop();
                return true;
            }
            self.pop();
        }
        false
    }
}

impl<'a> ColumnSearch<'a> {
    fn new(field: &'a Field, mats: &[&Matrix], hit: fn(&[usize], usize) -> bool) -> Self {
        let n = mats[0].cols();
        let columns = mats
            .iter()
            .map(|m| (0..n).map(|c| (0..m.rows()).map(|r| m.get(r, c)).collect()).collect())
            .collect();
        ColumnSearch {
            field,
            columns,
            n,
            hit,
        }
    }

    fn walker<'b>(&'b self, visited: &'b AtomicU64, abort: &'b AtomicBool, budget: u64) -> Walker<'a, 'b> {
        Walker {
            search: self,
            echelons: self.columns.iter().map(|cols| Echelon::new(cols[0].len())).collect(),
            pushed: Vec::new(),
            visited,
            abort,
            budget,
        }
    }

    /// Smallest subset size in `1..=max_w` at which `hit` fires.
    fn smallest(&self, max_w: usize, anchored: bool, budget: u64) -> Result<Option<usize>, OracleError> {
        let visited = AtomicU64::new(0);
        let abort = AtomicBool::new(false);
        for w in 1..=max_w.min(self.n) {
            let found = if anchored {
                let mut root = self.walker(&visited, &abort, budget);
                root.push(0);
                visited.fetch_add(1, Ordering::Relaxed);
                if (self.hit)(&root.ranks(), 1) {
                    true
                } else if w == 1 {
                    false
                } else {
                    let prefix = root.pushed.clone();
                    let echelons = root.echelons.clone();
                    (1..self.n).into_par_iter().any(|c| {
                        let mut wk = self.walker(&visited, &abort, budget);
                        wk.echelons = echelons.clone();
                        wk.pushed = prefix.clone();
                        if abort.load(Ordering::Relaxed) {
                            return false;
                        }
                        visited.fetch_add(1, Ordering::Relaxed);
                        wk.push(c);
                        if (self.hit)(&wk.ranks(), 2) {
                            return true;
                        }
                        w > 2 && wk.dfs(c + 1, 2, w)
                    })
                }
            } else {
                (0..self.n).into_par_iter().any(|c| {
                    let mut wk = self.walker(&visited, &abort, budget);
                    visited.fetch_add(1, Ordering::Relaxed);
                    wk.push(c);
                    if (self.hit)(&wk.ranks(), 1) {
                        return true;
                    }
                    w > 1 && wk.dfs(c + 1, 1, w)
                })
            };
            if abort.load(Ordering::Relaxed) {
                return Err(OracleError::BudgetExceeded {
                    needed: column_cost(self.n as u64, w as u64, anchored),
                    budget,
                });
            }
            if found {
                return Ok(Some(w));
            }
        }
        Ok(None)
    }
}

fn dependent(ranks: &[usize], depth: usize) -> bool {
    ranks[0] < depth
}

fn gap_opens(ranks: &[usize], _depth: usize) -> bool {
    ranks[1] > ranks[0]
}

/// Size of the smallest linearly dependent set of columns of `h`, searched
/// up to `max_w`. That is the minimum distance of the code `{v : h v = 0}`.
///
/// `anchored` pins column 0 into every subset, which is exact for codes
/// invariant under a transitive group of coordinate permutations such as
/// cyclic shifts.
pub fn smallest_dependent_columns(
    field: &Field,
    h: &Matrix,
    max_w: usize,
    anchored: bool,
    budget: u64,
) -> Result<Option<usize>, OracleError> {
    ColumnSearch::new(field, &[h], dependent).smallest(max_w, anchored, budget)
}

/// Minimum weight of `ker(small) \ ker(big)` where the row space of `small`
/// lies inside the row space of `big`: the smallest column set `S` with
/// `rank(big_S) > rank(small_S)`.
pub fn smallest_difference_support(
    field: &Field,
    small: &Matrix,
    big: &Matrix,
    max_w: usize,
    anchored: bool,
    budget: u64,
) -> Result<Option<usize>, OracleError> {
    ColumnSearch::new(field, &[small, big], gap_opens).smallest(max_w, anchored, budget)
}

/// Exact minimum distance by walking the message space against the
/// generator polynomial. Needs `q^k <= budget`.
///
/// Returns `n + 1` for the zero code, matching [`CyclicCode::bch_bound`].
pub fn min_distance_bruteforce(code: &CyclicCode, budget: u64) -> Result<u64, OracleError> {
    let needed = span_size(code.q(), code.dimension());
    if needed > budget {
        return Err(OracleError::BudgetExceeded { needed, budget });
    }
    let g = code.generator_matrix();
    Ok(span_min_weight(code.field(), code.q(), &g.row_vecs(), 0, None).unwrap_or(code.n() + 1))
}

/// Exact minimum distance, walking messages when `q^k` fits the budget and
/// searching dependent check columns otherwise.
pub fn min_distance_exact(code: &CyclicCode, budget: u64) -> Result<(u64, Route), OracleError> {
    if span_size(code.q(), code.dimension()) <= budget {
        return Ok((min_distance_bruteforce(code, budget)?, Route::Messages));
    }
    let h = code.check_matrix();
    let n = code.n() as usize;
    let w = smallest_dependent_columns(code.field(), &h, n, true, budget)?;
    Ok((w.map_or(code.n() + 1, |w| w as u64), Route::Columns))
}

/// Whether every nonzero codeword has weight at least `bound`.
///
/// Stops at the first lighter word. Picks whichever route is cheaper.
pub fn verify_min_distance_at_least(
    code: &CyclicCode,
    bound: u64,
    budget: u64,
) -> Result<(bool, Route), OracleError> {
    if bound <= 1 || code.dimension() == 0 {
        return Ok((true, Route::Messages));
    }
    let q = code.q();
    let messages = span_size(q, code.dimension());
    let columns = column_cost(code.n(), bound - 1, true);
    if messages.min(columns) > budget {
        return Err(OracleError::BudgetExceeded {
            needed: messages.min(columns),
            budget,
        });
    }
    if messages <= columns {
        let g = code.generator_matrix();
        let w = span_min_weight(code.field(), q, &g.row_vecs(), 0, Some(bound));
        Ok((w.is_none_or(|w| w >= bound), Route::Messages))
    } else {
        let h = code.check_matrix();
        let w = smallest_dependent_columns(code.field(), &h, (bound - 1) as usize, true, budget)?;
        Ok((w.is_none(), Route::Columns))
    }
}

/// Rows of `big_gen` extending a basis of the span of `small_gen`: the
/// basis of the smaller code first, then the extension.
fn extend_basis(field: &Field, small_gen: &Matrix, big_gen: &Matrix) -> (Vec<Vec<Elem>>, usize) {
    let mut ech = Echelon::new(big_gen.cols());
    let mut rows = Vec::new();
    for r in small_gen.row_vecs() {
        if ech.insert(field, &r) {
            rows.push(r);
        }
    }
    let free = rows.len();
    for r in big_gen.row_vecs() {
        if ech.insert(field, &r) {
            rows.push(r);
        }
    }
    (rows, free)
}

/// Minimum weight of `big \ small` for cyclic codes `small ⊂ big`.
fn difference_distance(
    big: &CyclicCode,
    small: &CyclicCode,
    budget: u64,
) -> Result<Option<u64>, OracleError> {
    let field = big.field();
    let q = big.q();
    if big.dimension() == small.dimension() {
        return Ok(None);
    }
    if span_size(q, big.dimension()) <= budget {
        let (rows, free) = extend_basis(field, &small.generator_matrix(), &big.generator_matrix());
        return Ok(span_min_weight(field, q, &rows, free, None));
    }
    let w = smallest_difference_support(
        field,
        &big.check_matrix(),
        &small.check_matrix(),
        big.n() as usize,
        true,
        budget,
    )?;
    Ok(w.map(|w| w as u64))
}

/// Exact CSS distance: the minimum weight over `(C1 \ C2) ∪ (C2^⊥ \ C1^⊥)`.
///
/// `None` when both differences are empty (`C1 = C2`).
pub fn css_true_distance(params: &CssParams, budget: u64) -> Result<Option<u64>, OracleError> {
    let outer = params.outer();
    let inner = params.inner();
    let a = difference_distance(outer, inner, budget)?;
    let b = difference_distance(params.inner_dual(), &outer.dual(), budget)?;
    Ok(match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, y) => x.or(y),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Skipped,
}

/// Result of one structural check at one `(q, m)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepEntry {
    pub q: u64,
    pub m: u32,
    pub check: String,
    pub outcome: Outcome,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub entries: Vec<SweepEntry>,
}

impl SweepReport {
    pub fn failures(&self) -> impl Iterator<Item = &SweepEntry> {
        self.entries.iter().filter(|e| e.outcome == Outcome::Fail)
    }

    pub fn all_passed(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn count(&self, outcome: Outcome) -> usize {
        self.entries.iter().filter(|e| e.outcome == outcome).count()
    }

    pub fn discrepancies(&self) -> Vec<Discrepancy> {
        self.failures()
            .map(|e| Discrepancy {
                module: "cosets".into(),
                check: e.check.clone(),
                inputs: format!("q={}, m={}", e.q, e.m),
                expected: "holds".into(),
                actual: e.detail.clone().unwrap_or_else(|| "fails".into()),
            })
            .collect()
    }
}

struct Checker {
    q: u64,
    m: u32,
    entries: Vec<SweepEntry>,
}

impl Checker {
    fn record(&mut self, check: &str, result: Result<(), String>) {
        let (outcome, detail) = match result {
            Ok(()) => (Outcome::Pass, None),
            Err(d) => (Outcome::Fail, Some(d)),
        };
        self.entries.push(SweepEntry {
            q: self.q,
            m: self.m,
            check: check.into(),
            outcome,
            detail,
        });
    }

    fn skip(&mut self, check: &str, why: &str) {
        self.entries.push(SweepEntry {
            q: self.q,
            m: self.m,
            check: check.into(),
            outcome: Outcome::Skipped,
            detail: Some(why.into()),
        });
    }
}

fn first_failure<T, F>(items: impl IntoIterator<Item = T>, mut f: F) -> Result<(), String>
where
    F: FnMut(T) -> Result<(), String>,
{
    for it in items {
        f(it)?;
    }
    Ok(())
}

/// Every structural property of cyclotomic cosets used by the code
/// constructions, checked exhaustively at one `(q, m)`.
pub fn coset_checks(q: u64, m: u32, cap: u64) -> Result<Vec<SweepEntry>, OracleError> {
    let cosets = all_cosets_capped(q, m, cap)?;
    let n = modulus(q, m).expect("bounded by the cap");
    let mut rep_of = vec![0u64; n as usize];
    for c in &cosets {
        for &x in c.elements() {
            rep_of[x as usize] = c.rep();
        }
    }
    let mut ck = Checker {
        q,
        m,
        entries: Vec::new(),
    };

    ck.record(
        "partition",
        if cosets.iter().map(Coset::cardinality).sum::<usize>() as u64 == n {
            Ok(())
        } else {
            Err("cardinalities do not sum to n".into())
        },
    );

    if q % 2 == 1 {
        ck.record(
            "parity-uniform",
            first_failure(&cosets, |c| parity_class(c).map(|_| ()).map_err(|e| e.to_string())),
        );
        ck.record(
            "no-consecutive",
            first_failure(0..n.saturating_sub(1), |x| {
                if rep_of[x as usize] == rep_of[x as usize + 1] {
                    Err(format!("{x} and {} share C_{}", x + 1, rep_of[x as usize]))
                } else {
                    Ok(())
                }
            }),
        );
    } else {
        ck.skip("parity-uniform", "hypothesis: q odd");
        ck.skip("no-consecutive", "hypothesis: q odd");
    }

    if q >= 3 {
        ck.record(
            "gap-lower-bound",
            first_failure(&cosets, |c| match gap_stat(c) {
                Some(l) if l < q - 1 => Err(format!("L = {l} < q - 1 at C_{}", c.rep())),
                _ => Ok(()),
            }),
        );
        let c1 = coset_of(q, m, 1);
        ck.record(
            "gap-attained",
            match (m, gap_stat(&c1)) {
                (1, None) => Ok(()),
                (_, Some(l)) if l == q - 1 => Ok(()),
                (_, l) => Err(format!("L(C_1) = {l:?}")),
            },
        );
    } else {
        ck.skip("gap-lower-bound", "hypothesis: q >= 3");
        ck.skip("gap-attained", "hypothesis: q >= 3");
    }

    ck.record(
        "complementary-unique",
        first_failure(&cosets, |c| {
            // the partition check makes the coset holding n - s the only candidate
            let bar = complementary(c);
            let holder = rep_of[((n - c.rep()) % n) as usize];
            if holder == bar.rep() && complementary_witness(c, &bar).is_ok() {
                Ok(())
            } else {
                Err(format!("C_{} has complementary candidate C_{holder}", c.rep()))
            }
        }),
    );
    ck.record(
        "complementary-cardinality",
        first_failure(&cosets, |c| {
            let bar = complementary(c);
            (bar.cardinality() == c.cardinality())
                .then_some(())
                .ok_or(format!("|C_{}| != |C_{}|", c.rep(), bar.rep()))
        }),
    );
    ck.record(
        "complementary-sum-zero",
        first_failure(&cosets, |c| match coset_oplus(c, &complementary(c)) {
            Ok(z) if z.elements() == [0] => Ok(()),
            Ok(z) => Err(format!("C_{} gives C_{}", c.rep(), z.rep())),
            Err(e) => Err(e.to_string()),
        }),
    );
    ck.record(
        "complementary-gap",
        first_failure(&cosets, |c| {
            let bar = complementary(c);
            (gap_stat(c) == gap_stat(&bar))
                .then_some(())
                .ok_or(format!("L differs on C_{} and C_{}", c.rep(), bar.rep()))
        }),
    );
    ck.record(
        "complementary-involution",
        first_failure(&cosets, |c| {
            (complementary(&complementary(c)) == *c)
                .then_some(())
                .ok_or(format!("C_{}", c.rep()))
        }),
    );

    let t = disjointness_range(q, m).min(n - 1);
    let small: Vec<u64> = (1..=t).filter(|x| x % q != 0).collect();
    ck.record("disjoint-range", {
        let mut seen = std::collections::HashMap::new();
        first_failure(&small, |&x| match seen.insert(rep_of[x as usize], x) {
            Some(y) => Err(format!("{y} and {x} share a coset")),
            None => Ok(()),
        })
    });
    if m % 2 == 0 {
        ck.record(
            "minimal-representative",
            first_failure(&small, |&x| {
                (rep_of[x as usize] == x)
                    .then_some(())
                    .ok_or(format!("{x} is not the minimum of its coset"))
            }),
        );
        ck.record(
            "special-coset-size",
            match special_coset_cardinality(q, m) {
                Ok((_, size)) if size == (m / 2) as usize => Ok(()),
                Ok((rep, size)) => Err(format!("|C_{rep}| = {size}")),
                Err(e) => Err(e.to_string()),
            },
        );
    } else {
        ck.skip("minimal-representative", "hypothesis: m even");
        ck.skip("special-coset-size", "hypothesis: m even");
    }

    let full_to = q.pow(m.div_ceil(2)).min(n - 1);
    ck.record(
        "full-cardinality",
        first_failure(1..=full_to, |x| {
            let c = coset_of(q, m, x as i64);
            (c.cardinality() == m as usize)
                .then_some(())
                .ok_or(format!("|C_{x}| = {}", c.cardinality()))
        }),
    );

    let limit = ladder_limit(q, m);
    let admissible: Vec<u64> = (1..).take_while(|c| c * q + 1 < limit).collect();
    if q >= 3 && !admissible.is_empty() {
        ck.record(
            "ladder",
            first_failure(&admissible, |&c| ladder_check(q, m, c)),
        );
    } else {
        ck.skip("ladder", "no admissible c");
    }

    if q >= 3 && m >= 2 {
        ck.record("run-cap", run_cap_check(q, m));
    } else {
        ck.skip("run-cap", "hypothesis: q >= 3, m >= 2");
    }
    Ok(ck.entries)
}

fn ladder_check(q: u64, m: u32, c: u64) -> Result<(), String> {
    let ladder = ladder_cosets(q, m, c).map_err(|e| e.to_string())?;
    let firsts: Vec<Coset> = (1..=c).map(|j| coset_of(q, m, j as i64)).collect();
    for (a, x) in ladder.iter().enumerate() {
        if x.cardinality() != m as usize {
            return Err(format!("c={c}: |C_{}| = {}", x.rep(), x.cardinality()));
        }
        for y in &ladder[a + 1..] {
            if x == y {
                return Err(format!("c={c}: C_{} repeats", x.rep()));
            }
        }
        if let Some(y) = firsts.iter().find(|y| *y == x) {
            return Err(format!("c={c}: C_{} meets C_{}", x.rep(), y.rep()));
        }
    }
    let lasts: Vec<u64> = ladder.iter().map(Coset::last_element).collect();
    if lasts.windows(2).any(|w| w[1] != w[0] + 1) {
        return Err(format!("c={c}: last elements {lasts:?}"));
    }
    Ok(())
}

/// A defining set `C_{s+1} ∪ ... ∪ C_{s+c}` with `1 <= s + c <= q - 2` has
/// no run longer than `c + 1`, and exactly one coset gives a run of 1.
fn run_cap_check(q: u64, m: u32) -> Result<(), String> {
    for top in 1..=q.saturating_sub(2) {
        for c in 1..=top {
            let s = top - c;
            let exps: Vec<i64> = (s + 1..=s + c).map(|x| x as i64).collect();
            let z = DefiningSet::from_exponents(q, m, &exps);
            let delta = z.longest_run().0 + 1;
            if delta > c + 2 || (c == 1 && delta != 2) {
                return Err(format!("s={s}, c={c}: designed distance {delta}"));
            }
        }
    }
    Ok(())
}

/// [`coset_checks`] over every `(q, m)` pair, in input order.
pub fn coset_theorem_sweep(q_list: &[u64], m_list: &[u32], budget: &OracleBudget) -> SweepReport {
    let pairs: Vec<(u64, u32)> = q_list
        .iter()
        .flat_map(|&q| m_list.iter().map(move |&m| (q, m)))
        .collect();
    let entries = pairs
        .par_iter()
        .map(|&(q, m)| match coset_checks(q, m, budget.max_modulus) {
            Ok(e) => e,
            Err(e) => vec![SweepEntry {
                q,
                m,
                check: "sweep".into(),
                outcome: Outcome::Skipped,
                detail: Some(e.to_string()),
            }],
        })
        .collect::<Vec<_>>()
        .concat();
    SweepReport { entries }
}

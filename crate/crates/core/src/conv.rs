//! Unit-memory convolutional codes from split BCH parity-check matrices.
//!
//! A parity-check matrix `H` of a cyclic code is split into a head `H0` and
//! a tail `H1`. `H1` is padded with zero rows at the bottom to the row count
//! `κ = rank H0`, and `G(D) = H̃0 + H̃1 D` generates a code `V`. The
//! parameters reported for a family are those of the dual `V^⊥`:
//!
//! * length `n`, dimension `n - κ`;
//! * degree `rank H1`, memory 1;
//! * free distance at least `min(d0 + d1, d)`, where `d0`, `d1` and `d` are
//!   BCH bounds of the head code, the tail code and the parent code.
//!
//! The dual is taken with respect to the inner product summed over all time
//! shifts, so `v(D)` lies in `V^⊥` exactly when `sum_i H̃i v_{s+i} = 0` for
//! every shift `s`, including the boundary shifts before `v_0` and after the
//! last block.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclic::{CodeSpace, CyclicCode, CyclicError, DefiningSet};
use crate::gf::{self, rank, Elem, Field, GfError, Matrix};
use crate::oracle::{span_min_weight, span_size, subfield_elements};
use crate::report::conv_bracket;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConvError {
    #[error(transparent)]
    Cyclic(#[from] CyclicError),
    #[error("head and tail share exponent {0}")]
    Overlap(u64),
    #[error("head and tail do not cover the parent defining set")]
    NotPartition,
    #[error("rank(H1) = {h1} exceeds rank(H0) = {h0}")]
    RankCondition { h0: usize, h1: usize },
    #[error("{0}")]
    Range(String),
    #[error("search needs {needed} words, budget is {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error("coefficient matrices disagree in shape")]
    Shape,
}

impl From<GfError> for ConvError {
    fn from(e: GfError) -> Self {
        ConvError::Cyclic(e.into())
    }
}

/// Polynomial matrix `G(D) = sum_i H_i D^i`, stored as its coefficient
/// matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    coeffs: Vec<Matrix>,
}

impl PolyMatrix {
    pub fn new(coeffs: Vec<Matrix>) -> Result<PolyMatrix, ConvError> {
        let first = coeffs.first().ok_or(ConvError::Shape)?;
        if coeffs
            .iter()
            .any(|c| c.rows() != first.rows() || c.cols() != first.cols())
        {
            return Err(ConvError::Shape);
        }
        Ok(PolyMatrix { coeffs })
    }

    pub fn rows(&self) -> usize {
        self.coeffs[0].rows()
    }

    pub fn cols(&self) -> usize {
        self.coeffs[0].cols()
    }

    /// Coefficient of `D^i` (zero beyond the stored degree).
    pub fn coefficient(&self, i: usize) -> Matrix {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.rows(), self.cols()))
    }

    pub fn coefficients(&self) -> &[Matrix] {
        &self.coeffs
    }

    /// Row degrees `γ_i`; a zero row counts as degree 0.
    pub fn row_degrees(&self) -> Vec<usize> {
        (0..self.rows())
            .map(|r| {
                (0..self.coeffs.len())
                    .rev()
                    .find(|&i| self.coeffs[i].row(r).iter().any(|&x| x != 0))
                    .unwrap_or(0)
            })
            .collect()
    }

    /// `μ = max γ_i`.
    pub fn memory(&self) -> usize {
        self.row_degrees().into_iter().max().unwrap_or(0)
    }

    /// `γ = sum γ_i`.
    pub fn degree(&self) -> usize {
        self.row_degrees().into_iter().sum()
    }

    /// `G(λ)`.
    pub fn eval(&self, field: &Field, lambda: Elem) -> Matrix {
        let mut out = Matrix::zeros(self.rows(), self.cols());
        let mut power = 1;
        for c in &self.coeffs {
            for r in 0..self.rows() {
                for j in 0..self.cols() {
                    let v = field.add(out.get(r, j), field.mul(power, c.get(r, j)));
                    out.set(r, j, v);
                }
            }
            power = field.mul(power, lambda);
        }
        out
    }

    /// Row `i` is the coefficient of `D^{γ_i}` in row `i`.
    pub fn leading_coefficients(&self) -> Matrix {
        let degs = self.row_degrees();
        Matrix::from_rows(
            self.cols(),
            degs.iter()
                .enumerate()
                .map(|(r, &d)| self.coeffs[d].row(r).to_vec())
                .collect(),
        )
    }

    /// Every nonzero coefficient row of every row, stacked.
    fn coefficient_stack(&self) -> Matrix {
        let mut out = Matrix::zeros(0, self.cols());
        for c in &self.coeffs {
            for r in 0..self.rows() {
                if c.row(r).iter().any(|&x| x != 0) {
                    out.push_row(c.row(r));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "i")]
pub enum ConvFamily {
    Main,
    B,
    C(u64),
    D(u64),
    E,
    Custom,
}

impl ConvFamily {
    pub fn name(self) -> &'static str {
        match self {
            ConvFamily::Main => "mainconv",
            ConvFamily::B => "mainconvB",
            ConvFamily::C(_) => "mainconvC",
            ConvFamily::D(_) => "mainconvD",
            ConvFamily::E => "mainconvE",
            ConvFamily::Custom => "custom",
        }
    }

    pub fn index(self) -> Option<u64> {
        match self {
            ConvFamily::C(i) | ConvFamily::D(i) => Some(i),
            _ => None,
        }
    }
}

impl fmt::Display for ConvFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.index() {
            Some(i) => write!(f, "{}(i={i})", self.name()),
            None => f.write_str(self.name()),
        }
    }
}

/// Closed-form `(k, γ, d_free bound)` promised for a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimedConv {
    pub k: u64,
    pub degree: u64,
    pub dfree: u64,
}

/// The convolutional code `V` generated by `G(D)`, reported through its dual.
#[derive(Debug, Clone)]
pub struct ConvCode {
    family: ConvFamily,
    parent: CyclicCode,
    head: CyclicCode,
    tail: CyclicCode,
    h0: Matrix,
    h1: Matrix,
    generator: PolyMatrix,
}

/// Expanded, dependent-row-free check matrices of the head and tail.
///
/// Rows are raw exponents: row `j` of the extension-field matrix is
/// `(alpha^{j*t})_t`.
pub fn split_parity(
    parent: &CyclicCode,
    head: &[u64],
    tail: &[u64],
) -> Result<(Matrix, Matrix), ConvError> {
    let (q, m) = (parent.q(), parent.m());
    let to_i64 = |v: &[u64]| v.iter().map(|&x| x as i64).collect::<Vec<_>>();
    let zh = DefiningSet::from_exponents(q, m, &to_i64(head));
    let zt = DefiningSet::from_exponents(q, m, &to_i64(tail));
    if let Some(&z) = zh.exponents().iter().find(|&&z| zt.contains(z)) {
        return Err(ConvError::Overlap(z));
    }
    if zh.union(&zt) != *parent.defining_set() {
        return Err(ConvError::NotPartition);
    }
    let h0 = parent.parity_check_matrix(head)?;
    let h1 = if tail.is_empty() {
        Matrix::zeros(0, parent.n() as usize)
    } else {
        parent.parity_check_matrix(tail)?
    };
    let field = parent.field();
    let (r0, r1) = (rank(field, &h0), rank(field, &h1));
    if r1 > r0 {
        return Err(ConvError::RankCondition { h0: r0, h1: r1 });
    }
    Ok((h0, h1))
}

fn assemble(
    family: ConvFamily,
    space: &CodeSpace,
    head: &[u64],
    tail: &[u64],
) -> Result<ConvCode, ConvError> {
    let to_i64 = |v: &[u64]| v.iter().map(|&x| x as i64).collect::<Vec<_>>();
    let all: Vec<i64> = to_i64(head).into_iter().chain(to_i64(tail)).collect();
    let parent = CyclicCode::from_exponents(space, &all);
    let head_code = CyclicCode::from_exponents(space, &to_i64(head));
    let tail_code = CyclicCode::from_exponents(space, &to_i64(tail));
    let (h0, h1) = split_parity(&parent, head, tail)?;
    let kappa = h0.rows();
    let generator = if h1.rows() == 0 {
        PolyMatrix::new(vec![h0.clone()])?
    } else {
        PolyMatrix::new(vec![h0.clone(), h1.pad_rows(kappa)])?
    };
    Ok(ConvCode {
        family,
        parent,
        head: head_code,
        tail: tail_code,
        h0,
        h1,
        generator,
    })
}

/// `G(D) = H̃0 + H̃1 D` from a head code and a tail code over the same space.
///
/// The check rows are the coset representatives of each defining set.
pub fn build_conv(head: &CyclicCode, tail: &CyclicCode) -> Result<ConvCode, ConvError> {
    if head.space() != tail.space() {
        return Err(CyclicError::Mismatch(head.n(), head.q(), tail.n(), tail.q()).into());
    }
    assemble(
        ConvFamily::Custom,
        head.space(),
        &head.defining_set().reps(),
        &tail.defining_set().reps(),
    )
}

impl ConvCode {
    pub fn family(&self) -> ConvFamily {
        self.family
    }

    pub fn q(&self) -> u64 {
        self.parent.q()
    }

    pub fn n(&self) -> u64 {
        self.parent.n()
    }

    pub fn field(&self) -> &Field {
        self.parent.field()
    }

    pub fn parent(&self) -> &CyclicCode {
        &self.parent
    }

    pub fn head(&self) -> &CyclicCode {
        &self.head
    }

    pub fn tail(&self) -> &CyclicCode {
        &self.tail
    }

    pub fn h0(&self) -> &Matrix {
        &self.h0
    }

    /// Unpadded tail check matrix.
    pub fn h1(&self) -> &Matrix {
        &self.h1
    }

    pub fn generator(&self) -> &PolyMatrix {
        &self.generator
    }

    /// `κ = rank H0`.
    pub fn kappa(&self) -> u64 {
        self.h0.rows() as u64
    }

    /// Dimension of `V^⊥`.
    pub fn k(&self) -> u64 {
        self.n() - self.kappa()
    }

    /// Degree of `V`, equal to `rank H1`.
    pub fn degree(&self) -> u64 {
        self.generator.degree() as u64
    }

    pub fn memory(&self) -> u64 {
        self.generator.memory() as u64
    }

    pub fn d0(&self) -> u64 {
        self.head.bch_bound()
    }

    pub fn d1(&self) -> u64 {
        self.tail.bch_bound()
    }

    pub fn d(&self) -> u64 {
        self.parent.bch_bound()
    }

    /// `min(d0 + d1, d)`.
    pub fn dfree_lb(&self) -> u64 {
        (self.d0() + self.d1()).min(self.d())
    }

    pub fn claimed(&self) -> Option<ClaimedConv> {
        let q = self.q();
        let n = self.n();
        let (k, degree, dfree) = match self.family {
            ConvFamily::Main => (n - 2 * q + 1, 2 * q - 3, 2 * q + 1),
            ConvFamily::B => (n - 2 * q, 2 * q - 4, 2 * q + 1),
            ConvFamily::C(i) => (n - 2 * (q + i), 2 * (q - 2 - i), 2 * q + 1),
            ConvFamily::D(i) => (n - 2 * q + 1, 2 * i + 1, q + i + 3),
            ConvFamily::E => (n - 2 * q + 1, 1, q + 2),
            ConvFamily::Custom => return None,
        };
        Some(ClaimedConv { k, degree, dfree })
    }

    /// Bound shown in the bracket: the family's claim, or the computed one.
    pub fn shown_bound(&self) -> u64 {
        self.claimed().map_or_else(|| self.dfree_lb(), |c| c.dfree)
    }

    /// `(n, k, g; m, dfree >= D)_q`.
    pub fn bracket(&self) -> String {
        conv_bracket(
            self.n(),
            self.k(),
            self.degree(),
            self.memory(),
            self.shown_bound(),
            self.q(),
        )
    }
}

impl fmt::Display for ConvCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.bracket())
    }
}

fn check_q(q: u64) -> Result<(), ConvError> {
    if gf::prime_power(q).is_none() {
        return Err(GfError::NotPrimePower(q).into());
    }
    if q < 4 {
        return Err(ConvError::Range(format!("q = {q} is below 4")));
    }
    Ok(())
}

fn check_i(q: u64, i: u64) -> Result<(), ConvError> {
    if i < 1 || i + 3 > q {
        return Err(ConvError::Range(format!("i = {i} outside [1, {}]", q - 3)));
    }
    Ok(())
}

fn span(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).collect()
}

fn family(f: ConvFamily, q: u64, head: Vec<u64>, tail: Vec<u64>) -> Result<ConvCode, ConvError> {
    let space = CodeSpace::new(q, 2)?;
    assemble(f, &space, &head, &tail)
}

/// Head `0..=q-1`, tail `q+1..=2q-1`.
pub fn family_mainconv(q: u64) -> Result<ConvCode, ConvError> {
    check_q(q)?;
    family(ConvFamily::Main, q, span(0, q - 1), span(q + 1, 2 * q - 1))
}

/// Head `0..=q-1, q+1`, tail `q+2..=2q-1`.
pub fn family_mainconv_b(q: u64) -> Result<ConvCode, ConvError> {
    check_q(q)?;
    let mut head = span(0, q - 1);
    head.push(q + 1);
    family(ConvFamily::B, q, head, span(q + 2, 2 * q - 1))
}

/// Head `0..=q-1, q+1..=q+1+i`, tail `q+2+i..=2q-1`, for `1 <= i <= q-3`.
pub fn family_mainconv_c(q: u64, i: u64) -> Result<ConvCode, ConvError> {
    check_q(q)?;
    check_i(q, i)?;
    let mut head = span(0, q - 1);
    head.extend(span(q + 1, q + 1 + i));
    family(ConvFamily::C(i), q, head, span(q + 2 + i, 2 * q - 1))
}

/// Head `0..=q-1`, tail `q+1..=q+1+i`, for `1 <= i <= q-3`.
pub fn family_mainconv_d(q: u64, i: u64) -> Result<ConvCode, ConvError> {
    check_q(q)?;
    check_i(q, i)?;
    family(ConvFamily::D(i), q, span(0, q - 1), span(q + 1, q + 1 + i))
}

/// Head `0..=q-1`, tail `q+1`.
pub fn family_mainconv_e(q: u64) -> Result<ConvCode, ConvError> {
    check_q(q)?;
    family(ConvFamily::E, q, span(0, q - 1), vec![q + 1])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "verdict")]
pub enum Basicness {
    /// The stacked coefficient rows are independent, which yields a constant
    /// right inverse.
    Basic,
    /// `G(λ)` loses rank at `λ = witness`, so no polynomial right inverse
    /// exists.
    NotBasic { witness: Elem },
    /// Neither test settles it.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasicReport {
    pub kappa: usize,
    pub rank_h0: usize,
    pub max_rank_higher: usize,
    /// `rank H̃0 = κ` and every other coefficient has rank at most `κ`.
    pub rank_condition: bool,
    pub basic: Basicness,
    /// Leading row coefficients have full rank.
    pub reduced: bool,
    pub failures: Vec<String>,
}

impl BasicReport {
    pub fn passes(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Rank hypothesis, basicness and reducedness of `G(D)` over GF(q).
pub fn check_reduced_basic(field: &Field, q: u64, g: &PolyMatrix) -> BasicReport {
    let kappa = g.rows();
    let rank_h0 = rank(field, &g.coefficient(0));
    let max_rank_higher = g.coeffs[1..]
        .iter()
        .map(|c| rank(field, c))
        .max()
        .unwrap_or(0);
    let rank_condition = rank_h0 == kappa && max_rank_higher <= kappa;
    let mut failures = Vec::new();
    if !rank_condition {
        failures.push(format!(
            "rank condition: kappa = {kappa}, rank H0 = {rank_h0}, max rank Hi = {max_rank_higher}"
        ));
    }

    let stack = g.coefficient_stack();
    let certificate = rank(field, &stack) == stack.rows()
        && (0..kappa).all(|r| g.coeffs.iter().any(|c| c.row(r).iter().any(|&x| x != 0)));
    let witness = subfield_elements(field, q)
        .into_iter()
        .find(|&l| rank(field, &g.eval(field, l)) < kappa);
    let basic = match (certificate, witness) {
        (true, _) => Basicness::Basic,
        (false, Some(w)) => Basicness::NotBasic { witness: w },
        (false, None) => Basicness::Inconclusive,
    };
    match basic {
        Basicness::Basic => {}
        Basicness::NotBasic { witness } => {
            failures.push(format!("G(λ) drops rank at λ = {witness}"))
        }
        Basicness::Inconclusive => failures.push("basicness inconclusive".into()),
    }
    let reduced = rank(field, &g.leading_coefficients()) == kappa;
    if !reduced {
        failures.push("leading row coefficients are rank deficient".into());
    }
    BasicReport {
        kappa,
        rank_h0,
        max_rank_higher,
        rank_condition,
        basic,
        reduced,
        failures,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOptions {
    /// Words that may be examined per input degree.
    pub budget: u64,
    /// Allow a partial search when a degree does not fit the budget.
    pub allow_partial: bool,
    pub seed: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: crate::oracle::DEFAULT_CODEWORD_BUDGET,
            allow_partial: false,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeSearch {
    pub degree: usize,
    /// Dimension of the space of words of this degree.
    pub dimension: usize,
    pub min_weight: Option<u64>,
    pub exhaustive: bool,
    pub words: u64,
}

/// Outcome of a bounded free-distance search. Every weight found belongs to
/// an actual codeword, so `value` is an upper bound on the free distance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeDistanceSearch {
    pub value: Option<u64>,
    pub degrees: Vec<DegreeSearch>,
}

impl FreeDistanceSearch {
    pub fn exhaustive(&self) -> bool {
        self.degrees.iter().all(|d| d.exhaustive)
    }
}

/// Check matrix of the words `v_0 + v_1 D + ... + v_L D^L` of `V^⊥`:
/// one block row `sum_i H̃i v_{s+i} = 0` per shift `s = -μ..=L`.
pub fn sliding_check_matrix(g: &PolyMatrix, max_degree: usize) -> Matrix {
    let (kappa, n) = (g.rows(), g.cols());
    let mu = g.coeffs.len() - 1;
    let blocks = max_degree + 1;
    let shifts = blocks + mu;
    let mut s = Matrix::zeros(shifts * kappa, blocks * n);
    for shift in 0..shifts {
        // actual shift is shift - mu
        for (i, c) in g.coeffs.iter().enumerate() {
            let t = shift + i;
            if t < mu || t - mu >= blocks {
                continue;
            }
            let col0 = (t - mu) * n;
            for r in 0..kappa {
                for j in 0..n {
                    s.set(shift * kappa + r, col0 + j, c.get(r, j));
                }
            }
        }
    }
    s
}

/// Upper bound on the free distance of `V^⊥` from its words of degree at
/// most `max_input_degree`.
pub fn free_distance_upper(
    code: &ConvCode,
    max_input_degree: usize,
    opts: &SearchOptions,
) -> Result<FreeDistanceSearch, ConvError> {
    let field = code.field();
    let q = code.q();
    let mut degrees = Vec::new();
    for l in 0..=max_input_degree {
        let s = sliding_check_matrix(code.generator(), l);
        let basis = s.null_space(field);
        degrees.push(search_span(field, q, &basis, l, opts)?);
    }
    Ok(summarize(degrees))
}

/// Upper bound on the free distance of `V` itself: the lightest `u(D) G(D)`
/// with `deg u <= max_input_degree`.
pub fn free_distance_upper_generator(
    field: &Field,
    q: u64,
    g: &PolyMatrix,
    max_input_degree: usize,
    opts: &SearchOptions,
) -> Result<FreeDistanceSearch, ConvError> {
    let (kappa, n) = (g.rows(), g.cols());
    let mu = g.coeffs.len() - 1;
    let mut degrees = Vec::new();
    for l in 0..=max_input_degree {
        let len = (l + mu + 1) * n;
        let mut gens = Matrix::zeros(0, len);
        for t in 0..=l {
            for r in 0..kappa {
                let mut row = vec![0; len];
                for (i, c) in g.coeffs.iter().enumerate() {
                    row[(t + i) * n..(t + i + 1) * n].copy_from_slice(c.row(r));
                }
                gens.push_row(&row);
            }
        }
        degrees.push(search_span(field, q, &gens, l, opts)?);
    }
    Ok(summarize(degrees))
}

fn summarize(degrees: Vec<DegreeSearch>) -> FreeDistanceSearch {
    let value = degrees.iter().filter_map(|d| d.min_weight).min();
    FreeDistanceSearch { value, degrees }
}

fn search_span(
    field: &Field,
    q: u64,
    basis: &Matrix,
    degree: usize,
    opts: &SearchOptions,
) -> Result<DegreeSearch, ConvError> {
    let dim = basis.rows();
    let lines = (0..dim).fold(0u64, |a, j| a.saturating_add(span_size(q, j as u64)));
    if lines <= opts.budget {
        return Ok(DegreeSearch {
            degree,
            dimension: dim,
            min_weight: span_min_weight(field, q, &basis.row_vecs(), 0, None),
            exhaustive: true,
            words: lines,
        });
    }
    if !opts.allow_partial {
        return Err(ConvError::BudgetExceeded {
            needed: lines,
            budget: opts.budget,
        });
    }
    let (low, used) = low_information_weight(field, q, basis, opts.budget);
    let samples = opts.budget.saturating_sub(used).min(100_000);
    let sampled = sample_span(field, q, basis, samples, opts.seed);
    Ok(DegreeSearch {
        degree,
        dimension: dim,
        min_weight: [low, sampled].into_iter().flatten().min(),
        exhaustive: false,
        words: used + samples,
    })
}

fn lines_with_support(dim: u64, t: u64, q: u64) -> u64 {
    let mut c: u128 = 1;
    for i in 0..t {
        c = c * (dim - i) as u128 / (i + 1) as u128;
    }
    let v = c.saturating_mul((q as u128 - 1).saturating_pow((t.max(1) - 1) as u32));
    v.min(u64::MAX as u128) as u64
}

/// Every combination of at most `t` basis rows, `t` as large as the budget
/// allows. Returns the lightest nonzero word and the number of words seen.
fn low_information_weight(field: &Field, q: u64, basis: &Matrix, budget: u64) -> (Option<u64>, u64) {
    let dim = basis.rows() as u64;
    let mut t = 0;
    let mut used = 0u64;
    while t < dim {
        let next = used.saturating_add(lines_with_support(dim, t + 1, q));
        if next > budget {
            break;
        }
        used = next;
        t += 1;
    }
    if t == 0 {
        return (None, 0);
    }
    let rows = basis.row_vecs();
    let nonzero: Vec<Elem> = subfield_elements(field, q)[1..].to_vec();
    let best = (0..rows.len())
        .into_par_iter()
        .map(|first| {
            let mut acc = rows[first].clone();
            let mut best = weight(&acc);
            combos(field, &rows, &nonzero, first + 1, 1, t as usize, &mut acc, &mut best);
            best
        })
        .min()
        .unwrap_or(u64::MAX);
    ((best != u64::MAX).then_some(best), used)
}

fn weight(v: &[Elem]) -> u64 {
    let w = v.iter().filter(|&&x| x != 0).count() as u64;
    if w == 0 {
        u64::MAX
    } else {
        w
    }
}

#[allow(clippy::too_many_arguments)]
fn combos(
    field: &Field,
    rows: &[Vec<Elem>],
    nonzero: &[Elem],
    start: usize,
    depth: usize,
    limit: usize,
    acc: &mut Vec<Elem>,
    best: &mut u64,
) {
    if depth == limit {
        return;
    }
    for i in start..rows.len() {
        for &a in nonzero {
            let saved = acc.clone();
            for (x, &y) in acc.iter_mut().zip(&rows[i]) {
                *x = field.add(*x, field.mul(a, y));
            }
            *best = (*best).min(weight(acc));
            combos(field, rows, nonzero, i + 1, depth + 1, limit, acc, best);
            *acc = saved;
        }
    }
}

fn sample_span(field: &Field, q: u64, basis: &Matrix, samples: u64, seed: u64) -> Option<u64> {
    if samples == 0 || basis.rows() == 0 {
        return None;
    }
    let elems = subfield_elements(field, q);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = u64::MAX;
    for _ in 0..samples {
        let mut acc = vec![0; basis.cols()];
        for r in 0..basis.rows() {
            let a = elems[rng.gen_range(0..elems.len())];
            if a != 0 {
                for (x, &y) in acc.iter_mut().zip(basis.row(r)) {
                    *x = field.add(*x, field.mul(a, y));
                }
            }
        }
        best = best.min(weight(&acc));
    }
    (best != u64::MAX).then_some(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::min_distance_bruteforce;

    fn params(c: &ConvCode) -> (u64, u64, u64, u64) {
        (c.n(), c.k(), c.degree(), c.memory())
    }

    #[test]
    fn split_examples() {
        let code = family_mainconv(4).unwrap();
        assert_eq!((code.h0().rows(), code.h1().rows()), (7, 5));
        let b = family_mainconv_b(5).unwrap();
        assert_eq!((b.h0().rows(), b.h1().rows()), (10, 6));
        let space = CodeSpace::new(4, 2).unwrap();
        let head = CyclicCode::from_exponents(&space, &[0, 1]);
        let (h0, h1) = split_parity(&head, &[0, 1], &[]).unwrap();
        assert_eq!((h0.rows(), h1.rows()), (3, 0));
    }

    #[test]
    fn split_errors() {
        let space = CodeSpace::new(4, 2).unwrap();
        let parent = CyclicCode::from_exponents(&space, &[0, 1, 2]);
        assert_eq!(split_parity(&parent, &[0, 1], &[4, 2]), Err(ConvError::Overlap(1)));
        assert_eq!(split_parity(&parent, &[0], &[1]), Err(ConvError::NotPartition));
        assert!(matches!(
            split_parity(&parent, &[0], &[1, 2]),
            Err(ConvError::RankCondition { h0: 1, h1: 4 })
        ));
    }

    #[test]
    fn family_examples() {
        assert_eq!(params(&family_mainconv(4).unwrap()), (15, 8, 5, 1));
        assert_eq!(family_mainconv(4).unwrap().bracket(), "(15, 8, 5; 1, dfree >= 9)_4");
        assert_eq!(params(&family_mainconv(5).unwrap()), (24, 15, 7, 1));
        assert_eq!(params(&family_mainconv_c(7, 2).unwrap()), (48, 30, 6, 1));
        assert_eq!(params(&family_mainconv_d(7, 4).unwrap()), (48, 35, 9, 1));
        assert_eq!(params(&family_mainconv_e(4).unwrap()), (15, 8, 1, 1));
        assert!(family_mainconv(3).is_err());
        assert!(family_mainconv_c(7, 5).is_err());
        assert!(family_mainconv_d(7, 0).is_err());
    }

    #[test]
    fn computed_bounds_meet_claims() {
        for code in [
            family_mainconv(5).unwrap(),
            family_mainconv_b(5).unwrap(),
            family_mainconv_c(7, 2).unwrap(),
            family_mainconv_d(7, 4).unwrap(),
            family_mainconv_e(4).unwrap(),
        ] {
            let claim = code.claimed().unwrap();
            assert_eq!((code.k(), code.degree()), (claim.k, claim.degree), "{}", code.family());
            assert!(code.dfree_lb() >= claim.dfree, "{}", code.family());
            assert!(code.dfree_lb() <= code.d());
        }
    }

    #[test]
    fn basic_report_examples() {
        let code = family_mainconv(4).unwrap();
        let r = check_reduced_basic(code.field(), 4, code.generator());
        assert!(r.passes(), "{:?}", r.failures);
        assert_eq!(r.basic, Basicness::Basic);

        let field = code.field();
        let mut id = Matrix::zeros(3, 6);
        for i in 0..3 {
            id.set(i, i, 1);
        }
        let g = PolyMatrix::new(vec![id]).unwrap();
        let r = check_reduced_basic(field, 4, &g);
        assert!(r.passes());

        let h0 = code.h0();
        let mut dup = h0.clone();
        let first = h0.row(0).to_vec();
        for j in 0..dup.cols() {
            dup.set(1, j, first[j]);
        }
        let g = PolyMatrix::new(vec![dup, code.h1().pad_rows(h0.rows())]).unwrap();
        let r = check_reduced_basic(field, 4, &g);
        assert!(!r.rank_condition);
        assert!(!r.passes());
        assert!(matches!(r.basic, Basicness::NotBasic { .. }));
    }

    #[test]
    fn row_degrees_and_leading_rows() {
        let code = family_mainconv(4).unwrap();
        let g = code.generator();
        assert_eq!(g.row_degrees(), vec![1, 1, 1, 1, 1, 0, 0]);
        assert_eq!(g.degree(), 5);
        assert_eq!(g.memory(), 1);
        let lead = g.leading_coefficients();
        assert_eq!(lead.row(0), code.h1().row(0));
        assert_eq!(lead.row(6), code.h0().row(6));
    }

    #[test]
    fn single_generator_row_is_an_upper_bound() {
        let code = family_mainconv(4).unwrap();
        let r = free_distance_upper_generator(
            code.field(),
            4,
            code.generator(),
            0,
            &SearchOptions::default(),
        )
        .unwrap();
        let row_weight = |r: usize| {
            code.generator()
                .coefficients()
                .iter()
                .map(|c| c.row(r).iter().filter(|&&x| x != 0).count() as u64)
                .sum::<u64>()
        };
        assert!(r.value.unwrap() <= row_weight(0));
        assert!(r.exhaustive());
    }

    #[test]
    fn dual_search_degree_zero_is_parent_code() {
        let code = family_mainconv(4).unwrap();
        let r = free_distance_upper(&code, 0, &SearchOptions::default()).unwrap();
        assert_eq!(r.degrees[0].dimension as u64, code.parent().dimension());
        let d = min_distance_bruteforce(code.parent(), 1 << 20).unwrap();
        assert_eq!(r.value, Some(d));
    }

    #[test]
    fn block_code_as_memory_zero() {
        let space = CodeSpace::new(3, 2).unwrap();
        let head = CyclicCode::from_exponents(&space, &[1]);
        let tail = CyclicCode::from_exponents(&space, &[]);
        let code = build_conv(&head, &tail).unwrap();
        assert_eq!(code.memory(), 0);
        let r = free_distance_upper(&code, 1, &SearchOptions::default()).unwrap();
        let d = min_distance_bruteforce(&head, 1 << 20).unwrap();
        assert_eq!(r.value, Some(d));
    }

    #[test]
    fn over_budget_needs_partial_flag() {
        let code = family_mainconv(4).unwrap();
        let tight = SearchOptions {
            budget: 1000,
            allow_partial: false,
            seed: 1,
        };
        assert!(matches!(
            free_distance_upper(&code, 1, &tight),
            Err(ConvError::BudgetExceeded { .. })
        ));
        let partial = SearchOptions {
            allow_partial: true,
            ..tight
        };
        let r = free_distance_upper(&code, 1, &partial).unwrap();
        assert!(!r.exhaustive());
        assert!(r.value.unwrap() >= 9);
    }

    #[test]
    fn sliding_matrix_shape() {
        let code = family_mainconv(4).unwrap();
        let s = sliding_check_matrix(code.generator(), 1);
        assert_eq!((s.rows(), s.cols()), (21, 30));
        assert_eq!(code.field().order(), 16);
        assert_eq!(rank(code.field(), &s), 19);
    }
}

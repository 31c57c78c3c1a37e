//! Cyclic and BCH codes of length `n = q^m - 1` over GF(q).
//!
//! A code is fixed by its defining set `Z`, a union of q-cyclotomic cosets:
//! the roots of the generator polynomial are exactly `alpha^z` for `z` in `Z`.
//! The dimension is always `n - |Z|`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::cosets::{complementary, coset_of, modulus, Coset, CosetError};
use crate::gf::{self, minimal_polynomial, Basis, Elem, Field, GfError, Matrix, Poly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CyclicError {
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Coset(#[from] CosetError),
    #[error("codes live in different ambient spaces: (n={0}, q={1}) vs (n={2}, q={3})")]
    Mismatch(u64, u64, u64, u64),
    #[error("exponent {0} out of range for length {1}")]
    ExponentOutOfRange(u64, u64),
    #[error("{0}")]
    Invalid(String),
}

/// Ambient data shared by every cyclic code of length `q^m - 1` over GF(q):
/// the extension field GF(q^m) and a GF(q)-basis of it.
#[derive(Debug, Clone)]
pub struct CodeSpace {
    q: u64,
    m: u32,
    n: u64,
    field: Arc<Field>,
    basis: Basis,
}

impl PartialEq for CodeSpace {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.m == other.m
    }
}

impl Eq for CodeSpace {}

impl CodeSpace {
    pub fn new(q: u64, m: u32) -> Result<CodeSpace, CyclicError> {
        let (p, e) = gf::prime_power(q).ok_or(GfError::NotPrimePower(q))?;
        if m == 0 {
            return Err(CyclicError::Invalid("m must be at least 1".into()));
        }
        let field = Field::shared(p, e * m)?;
        let basis = Basis::polynomial(&field, q)?;
        let n = modulus(q, m).expect("field size already bounded");
        Ok(CodeSpace {
            q,
            m,
            n,
            field,
            basis,
        })
    }

    /// Same space with a different GF(q)-basis for parity-check expansion.
    pub fn with_basis(&self, basis: Basis) -> Result<CodeSpace, CyclicError> {
        if basis.dim() != self.m as usize {
            return Err(GfError::Dimension("basis size differs from m".into()).into());
        }
        Ok(CodeSpace {
            basis,
            ..self.clone()
        })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// GF(q^m). Matrices "over GF(q)" use its encoding restricted to the subfield.
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn coset(&self, a: i64) -> Coset {
        coset_of(self.q, self.m, a)
    }

    /// Nonzero elements of GF(q) followed by zero... in increasing log order,
    /// zero first.
    pub fn base_elements(&self) -> Vec<Elem> {
        let step = (self.field.order() - 1) / (self.q - 1);
        std::iter::once(0)
            .chain((0..self.q - 1).map(|j| self.field.exp((j * step) as i64)))
            .collect()
    }
}

/// A union of q-cyclotomic cosets modulo `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefiningSet {
    n: u64,
    q: u64,
    m: u32,
    cosets: Vec<Coset>,
    exponents: Vec<u64>,
}

impl DefiningSet {
    pub fn empty(q: u64, m: u32) -> DefiningSet {
        DefiningSet {
            n: modulus(q, m).expect("q^m overflows u64"),
            q,
            m,
            cosets: Vec::new(),
            exponents: Vec::new(),
        }
    }

    /// Union of the cosets of the given exponents (reduced modulo `n`).
    pub fn from_exponents(q: u64, m: u32, exps: &[i64]) -> DefiningSet {
        let mut reps = BTreeSet::new();
        let mut cosets = Vec::new();
        for &a in exps {
            let c = coset_of(q, m, a);
            if reps.insert(c.rep()) {
                cosets.push(c);
            }
        }
        DefiningSet::from_cosets(q, m, cosets)
    }

    fn from_cosets(q: u64, m: u32, mut cosets: Vec<Coset>) -> DefiningSet {
        cosets.sort_by_key(Coset::rep);
        cosets.dedup();
        let mut exponents: Vec<u64> = cosets.iter().flat_map(|c| c.elements().to_vec()).collect();
        exponents.sort_unstable();
        DefiningSet {
            n: modulus(q, m).expect("q^m overflows u64"),
            q,
            m,
            cosets,
            exponents,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn base(&self) -> u64 {
        self.q
    }

    pub fn cosets(&self) -> &[Coset] {
        &self.cosets
    }

    pub fn reps(&self) -> Vec<u64> {
        self.cosets.iter().map(Coset::rep).collect()
    }

    /// Sorted exponent list.
    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn contains(&self, z: u64) -> bool {
        self.exponents.binary_search(&(z % self.n.max(1))).is_ok()
    }

    pub fn is_subset(&self, other: &DefiningSet) -> bool {
        self.exponents.iter().all(|&z| other.contains(z))
    }

    pub fn union(&self, other: &DefiningSet) -> DefiningSet {
        let mut cosets = self.cosets.clone();
        cosets.extend(other.cosets.iter().cloned());
        DefiningSet::from_cosets(self.q, self.m, cosets)
    }

    pub fn is_disjoint(&self, other: &DefiningSet) -> bool {
        self.exponents.iter().all(|&z| !other.contains(z))
    }

    /// `{0..n-1} \ Z`.
    pub fn complement(&self) -> DefiningSet {
        let reps: Vec<i64> = (0..self.n)
            .filter(|&z| !self.contains(z))
            .map(|z| z as i64)
            .collect();
        DefiningSet::from_exponents(self.q, self.m, &reps)
    }

    /// `Z^{-1} = { -z mod n }`.
    pub fn negate(&self) -> DefiningSet {
        let cosets = self.cosets.iter().map(complementary).collect();
        DefiningSet::from_cosets(self.q, self.m, cosets)
    }

    /// Length of the longest cyclic run of consecutive exponents and where
    /// it starts; `(n, 0)` when `Z` is everything.
    pub fn longest_run(&self) -> (u64, u64) {
        if self.exponents.is_empty() {
            return (0, 0);
        }
        if self.exponents.len() as u64 == self.n {
            return (self.n, 0);
        }
        // Start scanning just after a gap so wrapping runs are seen whole.
        let gap = (0..self.n).find(|&z| !self.contains(z)).unwrap();
        let mut best = (0, 0);
        let mut current = 0;
        let mut start = 0;
        for step in 1..=self.n {
            let z = (gap + step) % self.n;
            if self.contains(z) {
                if current == 0 {
                    start = z;
                }
                current += 1;
                if current > best.0 {
                    best = (current, start);
                }
            } else {
                current = 0;
            }
        }
        best
    }
}

impl fmt::Display for DefiningSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.cosets.iter().map(|c| format!("C{}", c.rep())).collect();
        write!(f, "{}", parts.join(" u "))
    }
}

/// A cyclic code over GF(q) of length `q^m - 1`.
#[derive(Debug, Clone)]
pub struct CyclicCode {
    space: CodeSpace,
    defining_set: DefiningSet,
    generator: Poly,
    offset: Option<u64>,
}

impl PartialEq for CyclicCode {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.defining_set == other.defining_set
    }
}

impl Eq for CyclicCode {}

/// `Z ∩ -Z = ∅`: the code with defining set `Z` contains its dual.
pub fn dual_containing_by_inverse(z: &DefiningSet) -> bool {
    z.is_disjoint(&z.negate())
}

/// No complementary coset of a coset in `Z` meets `Z`.
pub fn dual_containing_by_complementary(z: &DefiningSet) -> bool {
    z.cosets
        .iter()
        .map(complementary)
        .all(|bar| bar.elements().iter().all(|&e| !z.contains(e)))
}

/// Cyclic code whose defining set is the union of the cosets of `exponents`.
pub fn code_from_cosets(q: u64, m: u32, exponents: &[i64]) -> Result<CyclicCode, CyclicError> {
    let space = CodeSpace::new(q, m)?;
    Ok(CyclicCode::from_exponents(&space, exponents))
}

impl CyclicCode {
    pub fn from_exponents(space: &CodeSpace, exponents: &[i64]) -> CyclicCode {
        let z = DefiningSet::from_exponents(space.q, space.m, exponents);
        CyclicCode::from_defining_set(space, z)
    }

    pub fn from_defining_set(space: &CodeSpace, defining_set: DefiningSet) -> CyclicCode {
        assert_eq!(defining_set.n, space.n, "defining set modulus differs from code length");
        let field = space.field();
        let generator = defining_set.cosets.iter().fold(Poly::one(), |g, c| {
            let mp = minimal_polynomial(field, space.q, c.rep()).expect("rep < n");
            g.mul(&mp, field)
        });
        CyclicCode {
            space: space.clone(),
            defining_set,
            generator,
            offset: None,
        }
    }

    /// Narrow-sense style BCH code: zeros `alpha^b, ..., alpha^(b + delta - 2)`.
    pub fn bch(space: &CodeSpace, b: u64, delta: u64) -> CyclicCode {
        let exps: Vec<i64> = (0..delta.saturating_sub(1)).map(|j| (b + j) as i64).collect();
        let mut code = CyclicCode::from_exponents(space, &exps);
        code.offset = Some(b);
        code
    }

    pub fn space(&self) -> &CodeSpace {
        &self.space
    }

    pub fn field(&self) -> &Field {
        self.space.field()
    }

    pub fn n(&self) -> u64 {
        self.space.n
    }

    pub fn q(&self) -> u64 {
        self.space.q
    }

    pub fn m(&self) -> u32 {
        self.space.m
    }

    pub fn defining_set(&self) -> &DefiningSet {
        &self.defining_set
    }

    pub fn generator(&self) -> &Poly {
        &self.generator
    }

    pub fn offset(&self) -> Option<u64> {
        self.offset
    }

    /// `k = n - |Z|`.
    pub fn dimension(&self) -> u64 {
        self.n() - self.defining_set.len() as u64
    }

    /// One more than the longest cyclic run of consecutive exponents in `Z`.
    ///
    /// Returns 1 for the full space and `n + 1` for the zero code.
    pub fn bch_bound(&self) -> u64 {
        self.defining_set.longest_run().0 + 1
    }

    /// `h(x) = prod` of the minimal polynomials outside `Z`.
    pub fn check_polynomial(&self) -> Poly {
        let field = self.field();
        self.defining_set
            .complement()
            .cosets
            .iter()
            .fold(Poly::one(), |h, c| {
                h.mul(&minimal_polynomial(field, self.q(), c.rep()).unwrap(), field)
            })
    }

    /// Defining set of the Euclidean dual: the complement of `-Z`.
    pub fn dual_defining_set(&self) -> DefiningSet {
        self.defining_set.negate().complement()
    }

    pub fn dual(&self) -> CyclicCode {
        CyclicCode::from_defining_set(&self.space, self.dual_defining_set())
    }

    /// Whether the code contains its Euclidean dual, via `Z ∩ -Z = ∅`.
    pub fn contains_dual_by_inverse(&self) -> bool {
        dual_containing_by_inverse(&self.defining_set)
    }

    /// Same predicate via complementary cosets: no complementary coset of a
    /// member coset meets `Z`.
    pub fn contains_dual_by_complementary(&self) -> bool {
        dual_containing_by_complementary(&self.defining_set)
    }

    /// Both formulations, asserted to agree.
    pub fn contains_dual(&self) -> bool {
        let a = self.contains_dual_by_inverse();
        let b = self.contains_dual_by_complementary();
        assert_eq!(a, b, "dual-containment predicates disagree on {}", self.defining_set);
        a
    }

    fn same_space(&self, other: &CyclicCode) -> Result<(), CyclicError> {
        if self.space != other.space {
            return Err(CyclicError::Mismatch(self.n(), self.q(), other.n(), other.q()));
        }
        Ok(())
    }

    /// Whether `inner ⊆ outer`, i.e. `Z(outer) ⊆ Z(inner)`.
    pub fn nested(outer: &CyclicCode, inner: &CyclicCode) -> Result<bool, CyclicError> {
        outer.same_space(inner)?;
        Ok(outer.defining_set.is_subset(&inner.defining_set))
    }

    /// Parity-check matrix over GF(q) from raw exponent rows.
    ///
    /// Row `i` of the extension-field matrix is `(1, alpha^i, ..., alpha^((n-1)i))`;
    /// it is expanded over the space's basis and the first maximal independent
    /// set of rows is kept.
    pub fn parity_check_matrix(&self, rows: &[u64]) -> Result<Matrix, CyclicError> {
        let n = self.n();
        if let Some(&bad) = rows.iter().find(|&&r| r >= n) {
            return Err(CyclicError::ExponentOutOfRange(bad, n));
        }
        Ok(vandermonde_checks(&self.space, rows))
    }

    /// Parity-check matrix from the coset representatives of `Z`.
    pub fn check_matrix(&self) -> Matrix {
        vandermonde_checks(&self.space, &self.defining_set.reps())
    }

    /// Generator matrix with rows `x^i g(x)`, `0 <= i < k`.
    pub fn generator_matrix(&self) -> Matrix {
        let n = self.n() as usize;
        let k = self.dimension() as usize;
        let mut g = Matrix::zeros(k, n);
        for i in 0..k {
            for (j, &c) in self.generator.coeffs().iter().enumerate() {
                g.set(i, i + j, c);
            }
        }
        g
    }

    /// Polynomial membership test: `g(x) | c(x)`.
    pub fn contains_word(&self, word: &[Elem]) -> bool {
        self.generator
            .divides(&Poly::new(word.to_vec()), self.field())
    }
}

fn vandermonde_checks(space: &CodeSpace, rows: &[u64]) -> Matrix {
    let field = space.field();
    let n = space.n as usize;
    let ext = Matrix::from_rows(
        n,
        rows.iter()
            .map(|&i| (0..n).map(|j| field.exp((i as i64) * j as i64)).collect())
            .collect(),
    );
    let expanded = gf::expand_matrix(field, &ext, &space.basis);
    let keep = expanded.independent_rows(field);
    expanded.select_rows(&keep)
}

impl fmt::Display for CyclicCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}, >={}]_{}",
            self.n(),
            self.dimension(),
            self.bch_bound(),
            self.q()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::rank;

    #[test]
    fn dimension_examples() {
        let c = code_from_cosets(5, 2, &[0, 1, 2, 3]).unwrap();
        assert_eq!(c.defining_set().len(), 7);
        assert_eq!(c.dimension(), 17);
        let full = code_from_cosets(5, 2, &[]).unwrap();
        assert_eq!(full.generator(), &Poly::one());
        assert_eq!(full.dimension(), 24);
        let c = code_from_cosets(3, 2, &[1]).unwrap();
        assert_eq!(c.defining_set().exponents(), &[1, 3]);
        assert_eq!(c.dimension(), 6);
        assert_eq!(c.generator().degree(), Some(2));
    }

    #[test]
    fn bch_bound_examples() {
        let c = code_from_cosets(5, 2, &[0, 1, 2, 3]).unwrap();
        assert_eq!(c.defining_set().exponents(), &[0, 1, 2, 3, 5, 10, 15]);
        assert_eq!(c.bch_bound(), 5);
        let single = code_from_cosets(5, 2, &[2]).unwrap();
        assert_eq!(single.bch_bound(), 2);
        assert_eq!(code_from_cosets(5, 2, &[]).unwrap().bch_bound(), 1);
    }

    #[test]
    fn bch_bound_wraps() {
        // Z = C_0 u C_23-coset: {0} u {19, 23}, run 23, 0 wraps
        let c = code_from_cosets(5, 2, &[0, 23]).unwrap();
        assert_eq!(c.defining_set().longest_run(), (2, 23));
        assert_eq!(c.bch_bound(), 3);
    }

    #[test]
    fn bch_constructor_records_offset() {
        let space = CodeSpace::new(4, 2).unwrap();
        let c = CyclicCode::bch(&space, 1, 4);
        assert_eq!(c.offset(), Some(1));
        assert!(c.bch_bound() >= 4);
    }

    #[test]
    fn dual_examples() {
        let full = code_from_cosets(5, 2, &[]).unwrap();
        assert_eq!(full.dual_defining_set().len(), 24);
        assert_eq!(full.dual().dimension(), 0);

        // inner code of the good1 pair at q = 5: everything except C6..C9
        let space = CodeSpace::new(5, 2).unwrap();
        let excluded = DefiningSet::from_exponents(5, 2, &[6, 7, 8, 9]);
        let c2 = CyclicCode::from_defining_set(&space, excluded.complement());
        let dual = c2.dual();
        assert_eq!(dual.dimension(), 24 - c2.dimension());
        assert!(dual.bch_bound() >= 5);

        // self-reciprocal defining set
        let z = code_from_cosets(5, 2, &[1, 19]).unwrap();
        assert_eq!(z.defining_set().negate(), *z.defining_set());
        assert_eq!(z.dual_defining_set(), z.defining_set().complement());
    }

    #[test]
    fn dual_containment_examples() {
        assert!(code_from_cosets(5, 2, &[1]).unwrap().contains_dual());
        assert!(!code_from_cosets(5, 2, &[0]).unwrap().contains_dual());
        assert!(!code_from_cosets(5, 2, &[1, 19]).unwrap().contains_dual());
    }

    #[test]
    fn nesting_examples() {
        let space = CodeSpace::new(5, 2).unwrap();
        let c1 = CyclicCode::from_exponents(&space, &[0, 1, 2, 3]);
        let c2 = CyclicCode::from_defining_set(
            &space,
            DefiningSet::from_exponents(5, 2, &[6, 7, 8, 9]).complement(),
        );
        assert_eq!(CyclicCode::nested(&c1, &c2), Ok(true));
        assert_eq!(CyclicCode::nested(&c1, &c1), Ok(true));
        let a = CyclicCode::from_exponents(&space, &[1]);
        let b = CyclicCode::from_exponents(&space, &[2]);
        assert_eq!(CyclicCode::nested(&a, &b), Ok(false));
        let other = code_from_cosets(3, 2, &[1]).unwrap();
        assert!(matches!(CyclicCode::nested(&a, &other), Err(CyclicError::Mismatch(..))));
    }

    #[test]
    fn parity_check_examples() {
        let space = CodeSpace::new(4, 2).unwrap();
        let field = space.field();
        let q = 4i64;
        let big: Vec<i64> = (0..q).chain(q + 1..2 * q).collect();
        let c = CyclicCode::from_exponents(&space, &big);
        let reps: Vec<u64> = big.iter().map(|&x| x as u64).collect();
        let h = c.parity_check_matrix(&reps).unwrap();
        assert_eq!(rank(field, &h), 12);
        assert_eq!(h.rows(), 12);
        assert!(h.all_in_subfield(field, 4));

        let ones = c.parity_check_matrix(&[0]).unwrap();
        assert_eq!(ones.rows(), 1);
        assert!(ones.row(0).iter().all(|&x| x == 1));

        let head: Vec<u64> = (0..4).collect();
        assert_eq!(rank(field, &c.parity_check_matrix(&head).unwrap()), 7);
        assert_eq!(
            c.parity_check_matrix(&[15]),
            Err(CyclicError::ExponentOutOfRange(15, 15))
        );
    }

    #[test]
    fn raw_rows_before_reduction() {
        // the raw expansion of 0..q-1 over GF(16)/GF(4) has 2q rows, rank 2q - 1
        let space = CodeSpace::new(4, 2).unwrap();
        let field = space.field();
        let ext = Matrix::from_rows(
            15,
            (0..4).map(|i| (0..15).map(|j| field.exp(i * j)).collect()).collect(),
        );
        let raw = gf::expand_matrix(field, &ext, space.basis());
        assert_eq!(raw.rows(), 8);
        assert_eq!(rank(field, &raw), 7);
    }

    #[test]
    fn generator_times_check_is_x_n_minus_one() {
        for (q, m) in [(3, 2), (4, 2), (5, 2), (3, 3), (2, 4)] {
            let space = CodeSpace::new(q, m).unwrap();
            let c = CyclicCode::from_exponents(&space, &[1, 2]);
            let f = space.field();
            assert_eq!(
                c.generator().mul(&c.check_polynomial(), f),
                Poly::x_n_minus_one(f, space.n() as usize)
            );
            assert!(c.generator().over_subfield(f, q));
        }
    }

    #[test]
    fn generator_rows_satisfy_checks() {
        let space = CodeSpace::new(3, 2).unwrap();
        let c = CyclicCode::from_exponents(&space, &[1, 2]);
        let g = c.generator_matrix();
        let h = c.check_matrix();
        let f = space.field();
        assert_eq!(h.rows() as u64, space.n() - c.dimension());
        for r in 0..g.rows() {
            assert!(h.syndrome(f, g.row(r)).iter().all(|&x| x == 0));
            assert!(c.contains_word(g.row(r)));
        }
    }
}

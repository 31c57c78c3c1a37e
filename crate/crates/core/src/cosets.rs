//! q-ary cyclotomic cosets modulo `n = q^m - 1`.
//!
//! The coset of `s` is the orbit `{s, sq, sq^2, ...}` reduced modulo `n`; its
//! representative is the smallest element. Besides enumeration this module
//! exposes the structural facts the code constructions rely on: parity
//! uniformity for odd `q`, the gap statistic `L_s`, complementary cosets,
//! the disjointness ranges for small representatives and the "ladder"
//! cosets `C_{q+1}, C_{2q+1}, ...` whose last elements are consecutive.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default cap on `n` for [`all_cosets`].
pub const DEFAULT_MODULUS_CAP: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CosetError {
    #[error("modulus {q}^{m} - 1 exceeds the cap {cap}")]
    TooLarge { q: u64, m: u32, cap: u64 },
    #[error("parity structure is only claimed for odd q (got q = {0})")]
    EvenBase(u64),
    #[error("coset C_{rep} mixes even and odd elements")]
    MixedParity { rep: u64 },
    #[error("C_{candidate} holds no element w with {s} + w = 0 mod {n}")]
    NotComplementary { s: u64, candidate: u64, n: u64 },
    #[error("cosets belong to different moduli ({0} vs {1})")]
    ModulusMismatch(u64, u64),
    #[error("m = {0} is odd")]
    OddDegree(u32),
    #[error("ladder hypothesis {c}*{q} + 1 < {limit} fails")]
    LadderHypothesis { q: u64, c: u64, limit: u64 },
    #[error("invalid parameters: {0}")]
    Invalid(String),
}

/// `q^m - 1`, or `None` on overflow.
pub fn modulus(q: u64, m: u32) -> Option<u64> {
    q.checked_pow(m).map(|x| x - 1)
}

fn modulus_checked(q: u64, m: u32, cap: u64) -> Result<u64, CosetError> {
    match modulus(q, m) {
        Some(n) if n <= cap => Ok(n),
        _ => Err(CosetError::TooLarge { q, m, cap }),
    }
}

fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

fn pow_mod(base: u64, mut exp: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let mut result = 1 % n;
    let mut b = base % n;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(result, b, n);
        }
        b = mul_mod(b, b, n);
        exp >>= 1;
    }
    result
}

/// One q-ary cyclotomic coset modulo `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Coset {
    n: u64,
    q: u64,
    m: u32,
    /// Orbit order starting from the representative.
    elements: Vec<u64>,
}

impl Coset {
    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn base(&self) -> u64 {
        self.q
    }

    /// The `m` in `n = q^m - 1`.
    pub fn degree(&self) -> u32 {
        self.m
    }

    /// The smallest element.
    pub fn rep(&self) -> u64 {
        self.elements[0]
    }

    /// Elements in orbit order `s, sq, sq^2, ...`.
    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    /// `m_s`, the number of elements.
    pub fn cardinality(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.elements.contains(&(x % self.n.max(1)))
    }

    pub fn sorted_elements(&self) -> Vec<u64> {
        let mut v = self.elements.clone();
        v.sort_unstable();
        v
    }

    /// `s q^(m-1) mod n`, the last element of the orbit when `m_s = m`.
    pub fn last_element(&self) -> u64 {
        mul_mod(self.rep(), pow_mod(self.q, self.m as u64 - 1, self.n), self.n)
    }
}

/// Coset of `a mod n` for `n = q^m - 1`.
///
/// # Panics
/// Panics if `q < 2`, `m == 0` or `q^m` overflows `u64`.
pub fn coset_of(q: u64, m: u32, a: i64) -> Coset {
    assert!(q >= 2 && m >= 1, "need q >= 2 and m >= 1");
    let n = modulus(q, m).expect("q^m overflows u64");
    let start = (a as i128).rem_euclid(n as i128) as u64;
    let mut orbit = vec![start];
    let mut x = mul_mod(start, q, n);
    while x != start {
        orbit.push(x);
        x = mul_mod(x, q, n);
    }
    let min_pos = orbit
        .iter()
        .enumerate()
        .min_by_key(|&(_, &v)| v)
        .map(|(i, _)| i)
        .unwrap();
    orbit.rotate_left(min_pos);
    Coset { n, q, m, elements: orbit }
}

/// Partition of `{0, ..., n-1}` into cosets, sorted by representative.
pub fn all_cosets(q: u64, m: u32) -> Result<Vec<Coset>, CosetError> {
    all_cosets_capped(q, m, DEFAULT_MODULUS_CAP)
}

pub fn all_cosets_capped(q: u64, m: u32, cap: u64) -> Result<Vec<Coset>, CosetError> {
    if q < 2 || m == 0 {
        return Err(CosetError::Invalid(format!("q = {q}, m = {m}")));
    }
    let n = modulus_checked(q, m, cap)?;
    let mut seen = vec![false; n as usize];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s as usize] {
            continue;
        }
        let c = coset_of(q, m, s as i64);
        for &x in c.elements() {
            seen[x as usize] = true;
        }
        out.push(c);
    }
    Ok(out)
}

/// Common parity of a coset's elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Parity {
    Even,
    Odd,
}

/// Parity shared by every element of `c` (odd `q` only).
///
/// For even `q` the modulus is odd and no uniformity is claimed, so the
/// call is refused.
pub fn parity_class(c: &Coset) -> Result<Parity, CosetError> {
    if c.q % 2 == 0 {
        return Err(CosetError::EvenBase(c.q));
    }
    let even = c.elements.iter().filter(|&&x| x % 2 == 0).count();
    match even {
        e if e == c.cardinality() => Ok(Parity::Even),
        0 => Ok(Parity::Odd),
        _ => Err(CosetError::MixedParity { rep: c.rep() }),
    }
}

/// `L_s`: the smallest absolute difference between two distinct elements,
/// absent for singletons.
pub fn gap_stat(c: &Coset) -> Option<u64> {
    let sorted = c.sorted_elements();
    sorted.windows(2).map(|w| w[1] - w[0]).min()
}

/// The coset containing `n - s`.
pub fn complementary(c: &Coset) -> Coset {
    coset_of(c.q, c.m, -(c.rep() as i64))
}

/// Witness for "candidate is a complementary coset of `c`": an element
/// `w = q^l r` of `candidate` with `s + w = 0 mod n`. Returns `(w, l)`.
pub fn complementary_witness(c: &Coset, candidate: &Coset) -> Result<(u64, usize), CosetError> {
    if c.n != candidate.n || c.q != candidate.q {
        return Err(CosetError::ModulusMismatch(c.n, candidate.n));
    }
    let n = c.n;
    candidate
        .elements
        .iter()
        .position(|&w| (c.rep() + w) % n == 0)
        .map(|l| (candidate.elements[l], l))
        .ok_or(CosetError::NotComplementary {
            s: c.rep(),
            candidate: candidate.rep(),
            n,
        })
}

/// `C_s (+) Cbar_r = C_[s + q^l r]`.
///
/// `cbar_r` is read as the complementary coset of `C_r`, where `C_r` is
/// recovered as `complementary(cbar_r)`; `q^l r` is the element of `cbar_r`
/// that cancels `r`. With `cbar_r = complementary(c_s)` the result is `{0}`.
pub fn coset_oplus(c_s: &Coset, cbar_r: &Coset) -> Result<Coset, CosetError> {
    if c_s.n != cbar_r.n || c_s.q != cbar_r.q {
        return Err(CosetError::ModulusMismatch(c_s.n, cbar_r.n));
    }
    if coset_of(cbar_r.q, cbar_r.m, cbar_r.rep() as i64) != *cbar_r {
        return Err(CosetError::Invalid(format!(
            "{:?} is not a q-cyclotomic coset",
            cbar_r.elements
        )));
    }
    let c_r = complementary(cbar_r);
    let (w, _) = complementary_witness(&c_r, cbar_r)?;
    Ok(coset_of(c_s.q, c_s.m, (c_s.rep() + w) as i64))
}

/// Upper end `T` of the range `[1, T]` in which representatives not divisible
/// by `q` lie in pairwise distinct cosets.
///
/// Even `m` gives `2 q^(m/2)`; odd `m` falls back to
/// `min(floor(n q^ceil(m/2) / (q^m - 1) - 1), n - 1)`.
pub fn disjointness_range(q: u64, m: u32) -> u64 {
    let n = modulus(q, m).expect("q^m overflows u64");
    if m % 2 == 0 {
        2 * q.pow(m / 2)
    } else {
        // n q^c / (q^m - 1) = q^c exactly since n = q^m - 1
        let half = q.pow(m.div_ceil(2));
        (half - 1).min(n.saturating_sub(1))
    }
}

/// Representative and cardinality of the special coset `C_{q^(m/2) + 1}`.
pub fn special_coset_cardinality(q: u64, m: u32) -> Result<(u64, usize), CosetError> {
    if m % 2 == 1 {
        return Err(CosetError::OddDegree(m));
    }
    let rep = q.pow(m / 2) + 1;
    let c = coset_of(q, m, rep as i64);
    Ok((c.rep(), c.cardinality()))
}

/// The bound `floor(q^ceil(m/2) - 1)` in the ladder hypothesis.
pub fn ladder_limit(q: u64, m: u32) -> u64 {
    q.pow(m.div_ceil(2)) - 1
}

/// `C_{q+1}, C_{2q+1}, ..., C_{cq+1}`, provided `cq + 1 < q^ceil(m/2) - 1`.
pub fn ladder_cosets(q: u64, m: u32, c: u64) -> Result<Vec<Coset>, CosetError> {
    let limit = ladder_limit(q, m);
    if c == 0 || c * q + 1 >= limit {
        return Err(CosetError::LadderHypothesis { q, c, limit });
    }
    Ok((1..=c).map(|j| coset_of(q, m, (j * q + 1) as i64)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coset_examples() {
        let c = coset_of(5, 2, 0);
        assert_eq!(c.elements(), &[0]);
        assert_eq!(coset_of(5, 2, 1).elements(), &[1, 5]);
        assert_eq!(coset_of(3, 3, 4).elements(), &[4, 12, 10]);
        // reduction of the input
        assert_eq!(coset_of(5, 2, 25), coset_of(5, 2, 1));
        assert_eq!(coset_of(5, 2, -1).rep(), 19);
        assert_eq!(coset_of(5, 2, 5).rep(), 1);
    }

    #[test]
    fn partition_examples() {
        let reps = |q, m| {
            all_cosets(q, m)
                .unwrap()
                .iter()
                .map(|c| c.sorted_elements())
                .collect::<Vec<_>>()
        };
        assert_eq!(
            reps(3, 2),
            vec![vec![0], vec![1, 3], vec![2, 6], vec![4], vec![5, 7]]
        );
        assert_eq!(reps(2, 2), vec![vec![0], vec![1, 2]]);
        assert_eq!(reps(2, 1), vec![vec![0]]);
        for (q, m) in [(3, 4), (4, 3), (5, 3), (7, 2), (8, 2)] {
            let total: usize = all_cosets(q, m).unwrap().iter().map(Coset::cardinality).sum();
            assert_eq!(total as u64, modulus(q, m).unwrap());
        }
    }

    #[test]
    fn cardinality_divides_m() {
        for c in all_cosets(3, 4).unwrap() {
            assert_eq!(4 % c.cardinality(), 0);
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            all_cosets_capped(3, 5, 100),
            Err(CosetError::TooLarge { .. })
        ));
    }

    #[test]
    fn parity_examples() {
        assert_eq!(parity_class(&coset_of(5, 2, 2)), Ok(Parity::Even));
        assert_eq!(parity_class(&coset_of(5, 2, 1)), Ok(Parity::Odd));
        assert_eq!(parity_class(&coset_of(3, 2, 0)), Ok(Parity::Even));
        assert_eq!(parity_class(&coset_of(4, 2, 1)), Err(CosetError::EvenBase(4)));
    }

    #[test]
    fn gap_examples() {
        assert_eq!(gap_stat(&coset_of(5, 2, 1)), Some(4));
        assert_eq!(gap_stat(&coset_of(5, 2, 6)), None);
        assert_eq!(gap_stat(&coset_of(5, 2, 0)), None);
        assert_eq!(coset_of(5, 2, 19).sorted_elements(), vec![19, 23]);
        assert_eq!(gap_stat(&coset_of(5, 2, 19)), Some(4));
    }

    #[test]
    fn complementary_examples() {
        let c1 = coset_of(5, 2, 1);
        let bar = complementary(&c1);
        assert_eq!(bar.sorted_elements(), vec![19, 23]);
        assert_eq!(complementary(&coset_of(5, 2, 0)).elements(), &[0]);
        let c2 = coset_of(7, 2, 2);
        assert_eq!(complementary(&complementary(&c2)), c2);
    }

    #[test]
    fn oplus_examples() {
        let c1 = coset_of(5, 2, 1);
        let c19 = coset_of(5, 2, 19);
        assert_eq!(coset_oplus(&c1, &c19).unwrap().elements(), &[0]);
        let c0 = coset_of(5, 2, 0);
        assert_eq!(coset_oplus(&c0, &c0).unwrap().elements(), &[0]);
        let c2 = coset_of(3, 2, 2);
        assert_eq!(coset_oplus(&c2, &complementary(&c2)).unwrap().elements(), &[0]);
        // general case: C_s (+) Cbar_r = C_[s - r]
        let c3 = coset_of(5, 2, 3);
        assert_eq!(coset_oplus(&c3, &complementary(&c1)).unwrap(), coset_of(5, 2, 2));
    }

    #[test]
    fn witness_reports_failed_congruence() {
        let c1 = coset_of(5, 2, 1);
        assert_eq!(complementary_witness(&c1, &coset_of(5, 2, 19)), Ok((23, 1)));
        assert_eq!(
            complementary_witness(&c1, &coset_of(5, 2, 2)),
            Err(CosetError::NotComplementary { s: 1, candidate: 2, n: 24 })
        );
        assert!(matches!(
            coset_oplus(&c1, &coset_of(3, 2, 1)),
            Err(CosetError::ModulusMismatch(24, 8))
        ));
    }

    #[test]
    fn disjointness_examples() {
        assert_eq!(disjointness_range(3, 2), 6);
        let cs: Vec<_> = [1, 2, 4, 5].iter().map(|&x| coset_of(3, 2, x)).collect();
        for i in 0..cs.len() {
            for j in i + 1..cs.len() {
                assert_ne!(cs[i], cs[j]);
            }
        }
        assert_eq!(disjointness_range(4, 2), 8);
        assert_eq!(disjointness_range(3, 3), 8);
    }

    #[test]
    fn special_coset_examples() {
        assert_eq!(special_coset_cardinality(5, 2), Ok((6, 1)));
        assert_eq!(special_coset_cardinality(3, 2), Ok((4, 1)));
        assert_eq!(special_coset_cardinality(3, 4), Ok((10, 2)));
        assert_eq!(coset_of(3, 4, 10).sorted_elements(), vec![10, 30]);
        assert_eq!(special_coset_cardinality(3, 3), Err(CosetError::OddDegree(3)));
    }

    #[test]
    fn ladder_examples() {
        let l = ladder_cosets(3, 3, 2).unwrap();
        assert_eq!(l[0].elements(), &[4, 12, 10]);
        assert_eq!(l[1].elements(), &[7, 21, 11]);
        assert_eq!((l[0].last_element(), l[1].last_element()), (10, 11));

        let l = ladder_cosets(5, 3, 2).unwrap();
        assert_eq!(l[1].last_element(), l[0].last_element() + 1);

        let l = ladder_cosets(5, 3, 1).unwrap();
        assert_eq!(l.len(), 1);
        assert_eq!(l[0].rep(), 6);

        assert!(matches!(ladder_cosets(3, 2, 1), Err(CosetError::LadderHypothesis { .. })));
    }
}

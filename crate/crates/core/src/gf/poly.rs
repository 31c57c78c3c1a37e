use super::{Elem, Field, GfError};
use crate::cosets::coset_of;

/// Polynomial with coefficients in a [`Field`], lowest degree first.
///
/// The zero polynomial has no coefficients; otherwise the last coefficient is
/// nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly { coeffs: vec![1] }
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Poly {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = 1;
        Poly { coeffs }
    }

    /// `x^n - 1`.
    pub fn x_n_minus_one(field: &Field, n: usize) -> Poly {
        let mut coeffs = vec![0; n + 1];
        coeffs[0] = field.neg(1);
        coeffs[n] = 1;
        Poly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn eval(&self, field: &Field, x: Elem) -> Elem {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| field.add(field.mul(acc, x), c))
    }

    pub fn add(&self, other: &Poly, field: &Field) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            (0..len)
                .map(|i| field.add(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Poly, field: &Field) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(out[i + j], field.mul(a, b));
            }
        }
        Poly::new(out)
    }

    /// Multiplies by the linear factor `x - root`.
    pub fn mul_linear(&self, root: Elem, field: &Field) -> Poly {
        let neg = field.neg(root);
        let mut out = vec![0; self.coeffs.len() + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i + 1] = field.add(out[i + 1], c);
            out[i] = field.add(out[i], field.mul(c, neg));
        }
        Poly::new(out)
    }

    /// Quotient and remainder.
    ///
    /// # Panics
    /// Panics when dividing by the zero polynomial.
    pub fn div_rem(&self, divisor: &Poly, field: &Field) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead_inv = field.inv(divisor.leading());
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![0; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = field.mul(rem[i + dd], lead_inv);
            if c == 0 {
                continue;
            }
            quot[i] = c;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = field.sub(rem[i + j], field.mul(c, d));
            }
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn divides(&self, other: &Poly, field: &Field) -> bool {
        other.div_rem(self, field).1.is_zero()
    }

    /// Whether every coefficient lies in the GF(q) subfield.
    pub fn over_subfield(&self, field: &Field, q: u64) -> bool {
        self.coeffs.iter().all(|&c| field.in_subfield(c, q))
    }

    /// Renders the polynomial with coefficients written as powers of alpha.
    pub fn display(&self, field: &Field) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coeff = match field.log(c) {
                Some(0) => String::new(),
                Some(l) => format!("a^{l}"),
                None => unreachable!(),
            };
            let mono = match i {
                0 if coeff.is_empty() => "1".to_string(),
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{i}"),
            };
            let sep = if !coeff.is_empty() && !mono.is_empty() { "*" } else { "" };
            terms.push(format!("{coeff}{sep}{mono}"));
        }
        terms.join(" + ")
    }
}

/// Minimal polynomial over GF(q) of `alpha^i`, where `field` is GF(q^m).
///
/// Computed as the product of `x - alpha^j` over the q-cyclotomic coset of
/// `i` modulo `q^m - 1`; the coefficients are checked to lie in GF(q).
pub fn minimal_polynomial(field: &Field, q: u64, i: u64) -> Result<Poly, GfError> {
    let m = field.subfield_index(q)?;
    let n = field.order() - 1;
    if i >= n {
        return Err(GfError::ExponentOutOfRange { i, n });
    }
    let coset = coset_of(q, m, i as i64);
    let poly = coset
        .elements()
        .iter()
        .fold(Poly::one(), |acc, &j| acc.mul_linear(field.exp(j as i64), field));
    debug_assert!(poly.over_subfield(field, q));
    Ok(poly)
}

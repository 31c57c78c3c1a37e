//! Exact arithmetic in GF(p^e).
//!
//! A [`Field`] is realized from the lexicographically smallest primitive
//! polynomial of degree `e` over GF(p). Elements are plain integers: the
//! element `a_0 + a_1 x + ... + a_{e-1} x^{e-1}` is encoded as
//! `a_0 + a_1 p + ... + a_{e-1} p^{e-1}`. Multiplication goes through
//! log/antilog tables indexed by powers of the primitive element `alpha = x`;
//! addition is digit-wise modulo `p` (XOR in characteristic 2).
//!
//! Subfields are not separate types. A matrix "over GF(q)" is a matrix whose
//! entries lie in the GF(q) subfield of some larger field, which keeps every
//! computation in one encoding and makes rank and null-space computations
//! automatically consistent between the two fields.

mod matrix;
mod poly;

pub use matrix::{expand_matrix, rank, Basis, Matrix};
pub(crate) use matrix::Echelon;
pub use poly::{minimal_polynomial, Poly};

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use thiserror::Error;

/// A field element in the integer encoding of its [`Field`].
pub type Elem = u32;

/// Default upper bound on the number of field elements.
pub const DEFAULT_FIELD_CAP: u64 = 1 << 20;

/// Log of zero. Never stored in the antilog table.
pub const ZERO_LOG: u32 = u32::MAX;

const ADD_TABLE_MAX: u32 = 1024;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field with {p}^{e} elements exceeds the cap of {cap} elements")]
    TooLarge { p: u64, e: u32, cap: u64 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("GF({sub}) is not a subfield of GF({order})")]
    NotSubfield { sub: u64, order: u64 },
    #[error("exponent {i} out of range for modulus {n}")]
    ExponentOutOfRange { i: u64, n: u64 },
    #[error("basis elements are linearly dependent over GF({q})")]
    DependentBasis { q: u64 },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q = p^e` into `(p, e)`, or `None` when `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut e = 0;
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

/// A realized finite field GF(p^e) with a fixed primitive element.
#[derive(Debug, Clone)]
pub struct Field {
    p: u32,
    e: u32,
    order: u32,
    modulus: Vec<u32>,
    /// `exp[i] = alpha^i`, doubled in length so products of logs need no reduction.
    exp: Vec<Elem>,
    log: Vec<u32>,
    add_table: Option<Vec<Elem>>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}

impl Eq for Field {}

/// Builds GF(p^e) with the default element cap.
pub fn make_field(p: u64, e: u32) -> Result<Field, GfError> {
    Field::with_cap(p, e, DEFAULT_FIELD_CAP)
}

impl Field {
    pub fn with_cap(p: u64, e: u32, cap: u64) -> Result<Field, GfError> {
        if !is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        if e == 0 {
            return Err(GfError::ZeroDegree);
        }
        let order = p
            .checked_pow(e)
            .filter(|&o| o <= cap)
            .ok_or(GfError::TooLarge { p, e, cap })?;
        let p = p as u32;
        let order = order as u32;

        // Candidates are monic x^e + c_{e-1} x^{e-1} + ... + c_0, visited in
        // lexicographic order of (c_0, c_1, ..., c_{e-1}).
        let mut tail = vec![0u32; e as usize];
        loop {
            if tail[0] != 0 {
                let mut modulus = tail.clone();
                modulus.push(1);
                if let Some(exp) = primitive_powers(p, &modulus, order) {
                    return Ok(Field::from_tables(p, e, order, modulus, exp));
                }
            }
            // Increment with c_{e-1} as the least significant digit.
            let mut pos = e as usize;
            loop {
                if pos == 0 {
                    unreachable!("a primitive polynomial exists for every degree");
                }
                pos -= 1;
                tail[pos] += 1;
                if tail[pos] < p {
                    break;
                }
                tail[pos] = 0;
            }
        }
    }

    /// Shared instance of GF(p^e); fields are immutable so one copy per
    /// process is enough.
    pub fn shared(p: u64, e: u32) -> Result<Arc<Field>, GfError> {
        static CACHE: OnceLock<Mutex<HashMap<(u64, u32), Arc<Field>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(f) = cache.lock().unwrap().get(&(p, e)) {
            return Ok(Arc::clone(f));
        }
        let field = Arc::new(make_field(p, e)?);
        cache.lock().unwrap().insert((p, e), Arc::clone(&field));
        Ok(field)
    }

    fn from_tables(p: u32, e: u32, order: u32, modulus: Vec<u32>, powers: Vec<Elem>) -> Field {
        let mut log = vec![ZERO_LOG; order as usize];
        for (i, &x) in powers.iter().enumerate() {
            log[x as usize] = i as u32;
        }
        let mut exp = powers.clone();
        exp.extend_from_slice(&powers);
        let mut field = Field {
            p,
            e,
            order,
            modulus,
            exp,
            log,
            add_table: None,
        };
        if p != 2 && order <= ADD_TABLE_MAX {
            let mut table = vec![0; (order * order) as usize];
            for a in 0..order {
                for b in 0..order {
                    table[(a * order + b) as usize] = field.add_digits(a, b);
                }
            }
            field.add_table = Some(table);
        }
        field
    }

    pub fn characteristic(&self) -> u64 {
        self.p as u64
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    /// Number of elements.
    pub fn order(&self) -> u64 {
        self.order as u64
    }

    /// Defining polynomial over GF(p), lowest degree first, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        0
    }

    #[inline]
    pub fn one(&self) -> Elem {
        1
    }

    /// The primitive element.
    #[inline]
    pub fn alpha(&self) -> Elem {
        self.exp[1 % (self.order as usize - 1).max(1)]
    }

    /// `alpha^i` for any integer exponent.
    #[inline]
    pub fn exp(&self, i: i64) -> Elem {
        let period = (self.order - 1) as i64;
        self.exp[i.rem_euclid(period) as usize]
    }

    /// Discrete log base alpha, `None` for zero.
    #[inline]
    pub fn log(&self, x: Elem) -> Option<u32> {
        match self.log[x as usize] {
            ZERO_LOG => None,
            l => Some(l),
        }
    }

    /// The antilog table `alpha^0, ..., alpha^(q-2)`.
    pub fn antilog_table(&self) -> &[Elem] {
        &self.exp[..self.order as usize - 1]
    }

    /// Iterator over all elements in encoding order (zero first).
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.order
    }

    /// GF(p) digits of an element, lowest first.
    pub fn coordinates(&self, x: Elem) -> Vec<u32> {
        let mut x = x;
        (0..self.e)
            .map(|_| {
                let d = x % self.p;
                x /= self.p;
                d
            })
            .collect()
    }

    pub fn from_coordinates(&self, digits: &[u32]) -> Elem {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p + d % self.p)
    }

    fn add_digits(&self, a: Elem, b: Elem) -> Elem {
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.e {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            a ^ b
        } else if let Some(t) = &self.add_table {
            t[(a * self.order + b) as usize]
        } else {
            self.add_digits(a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 || a == 0 {
            return a;
        }
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.e {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }

    /// Multiplicative inverse.
    ///
    /// # Panics
    /// Panics on zero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        assert!(a != 0, "inverse of zero");
        let period = self.order - 1;
        self.exp[((period - self.log[a as usize]) % period) as usize]
    }

    #[inline]
    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Elem, k: u64) -> Elem {
        if k == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let period = (self.order - 1) as u64;
        let l = (self.log[a as usize] as u64 * (k % period)) % period;
        self.exp[l as usize]
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: Elem) -> u64 {
        let period = (self.order - 1) as u64;
        let l = self.log(a).expect("zero has no multiplicative order") as u64;
        period / gcd(period, l)
    }

    /// Whether GF(q) embeds in this field.
    pub fn has_subfield(&self, q: u64) -> bool {
        match prime_power(q) {
            Some((p, e)) => p == self.p as u64 && self.e % e == 0,
            None => false,
        }
    }

    /// Checks that `q` is a subfield order and returns `m = [F : GF(q)]`.
    pub fn subfield_index(&self, q: u64) -> Result<u32, GfError> {
        let (p, e) = prime_power(q).ok_or(GfError::NotPrimePower(q))?;
        if p != self.p as u64 || self.e % e != 0 {
            return Err(GfError::NotSubfield {
                sub: q,
                order: self.order(),
            });
        }
        Ok(self.e / e)
    }

    /// Whether `x` lies in the GF(q) subfield, i.e. `x^q = x`.
    pub fn in_subfield(&self, x: Elem, q: u64) -> bool {
        match self.log(x) {
            None => true,
            Some(l) => {
                let step = (self.order as u64 - 1) / (q - 1);
                l as u64 % step == 0
            }
        }
    }

    /// The relative trace from this field down to GF(q).
    pub fn trace(&self, x: Elem, q: u64) -> Elem {
        let m = self.subfield_index(q).expect("trace target must be a subfield");
        let mut acc = 0;
        let mut y = x;
        for _ in 0..m {
            acc = self.add(acc, y);
            y = self.pow(y, q);
        }
        acc
    }
}

/// Powers `x^0, ..., x^(order-2)` modulo `modulus` when `x` has full order,
/// i.e. when the polynomial is primitive.
fn primitive_powers(p: u32, modulus: &[u32], order: u32) -> Option<Vec<Elem>> {
    let e = modulus.len() - 1;
    let period = order as usize - 1;
    let mut powers = Vec::with_capacity(period);
    let mut digits = vec![0u32; e];
    digits[0] = 1;
    let encode = |d: &[u32]| d.iter().rev().fold(0u32, |acc, &c| acc * p + c);
    for i in 0..period {
        let x = encode(&digits);
        if i > 0 && x == 1 {
            return None;
        }
        powers.push(x);
        // multiply by x and reduce: x^e = -(c_0 + ... + c_{e-1} x^{e-1})
        let top = digits[e - 1];
        for j in (1..e).rev() {
            digits[j] = digits[j - 1];
        }
        digits[0] = 0;
        if top != 0 {
            for j in 0..e {
                digits[j] = (digits[j] + (p - modulus[j]) * top) % p;
            }
        }
    }
    (encode(&digits) == 1).then_some(powers)
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

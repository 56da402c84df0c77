//! Exact scalar fields.
//!
//! Every matrix carries a [`Field`] value which acts as the arithmetic
//! context: the rationals are a zero-sized context, a prime field stores its
//! modulus.

use alloc::string::{String, ToString};
use core::fmt;

use crate::exactla::rational::Q;

/// Which exact field a computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => f.write_str("rationals"),
            FieldSpec::Prime(p) => write!(f, "prime:{p}"),
        }
    }
}

/// Arithmetic context for an exact field.
pub trait Field: Clone + PartialEq + Eq + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Canonical text: `p/q` in lowest terms, `p` when `q = 1`.
    fn render(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Option<Self::Elem>;
    /// Image in `Z/p`, `None` when the element is not `p`-integral.
    fn to_prime(&self, a: &Self::Elem, p: u64) -> Option<u64>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `acc -= a * b`
    fn sub_mul_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        *acc = self.sub(acc, &self.mul(a, b));
    }

    /// `acc += a * b`
    fn add_mul_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        *acc = self.add(acc, &self.mul(a, b));
    }

    fn sign(&self, odd: bool) -> Self::Elem {
        if odd {
            self.from_i64(-1)
        } else {
            self.one()
        }
    }
}

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Q;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn zero(&self) -> Q {
        Q::ZERO
    }
    fn one(&self) -> Q {
        Q::ONE
    }
    fn from_i64(&self, v: i64) -> Q {
        if v == i64::MIN {
            return Q::int(v + 1).sub(&Q::ONE);
        }
        Q::int(v)
    }
    fn is_zero(&self, a: &Q) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &Q) -> bool {
        a.is_one()
    }
    fn add(&self, a: &Q, b: &Q) -> Q {
        a.add(b)
    }
    fn sub(&self, a: &Q, b: &Q) -> Q {
        a.sub(b)
    }
    fn mul(&self, a: &Q, b: &Q) -> Q {
        a.mul(b)
    }
    fn neg(&self, a: &Q) -> Q {
        a.neg()
    }
    fn inv(&self, a: &Q) -> Option<Q> {
        a.recip()
    }
    fn sub_mul_assign(&self, acc: &mut Q, a: &Q, b: &Q) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *acc = acc.sub(&a.mul(b));
    }
    fn add_mul_assign(&self, acc: &mut Q, a: &Q, b: &Q) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *acc = acc.add(&a.mul(b));
    }
    fn render(&self, a: &Q) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Option<Q> {
        s.parse().ok()
    }
    fn to_prime(&self, a: &Q, p: u64) -> Option<u64> {
        a.mod_p(p)
    }
}

/// The prime field `Z/p` with `p < 2^63`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

/// A large prime used for modular rank bounds.
pub const LARGE_PRIME: u64 = 2_305_843_009_213_693_951; // 2^61 - 1

impl PrimeField {
    /// Returns `None` unless `p` is a prime below `2^63`.
    pub fn new(p: u64) -> Option<Self> {
        if p >= 1 << 63 || !is_prime(p) {
            return None;
        }
        Some(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        r
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for q in BASES {
        if n % q == 0 {
            return n == q;
        }
    }
    // deterministic Miller-Rabin for 64-bit inputs
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        r
    };
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in BASES {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        (v as i128).rem_euclid(self.p as i128) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b; // both < 2^63
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.p - (b - a)
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a, self.p - 2))
        }
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Option<u64> {
        s.parse::<Q>().ok()?.mod_p(self.p)
    }
    fn to_prime(&self, a: &u64, p: u64) -> Option<u64> {
        if p == self.p {
            Some(*a)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_render_and_parse() {
        let q = Rationals;
        let x = q.parse("6/-4").unwrap();
        assert_eq!(q.render(&x), "-3/2");
        assert_eq!(q.render(&q.from_i64(7)), "7");
        assert!(q.parse("1/0").is_none());
    }

    #[test]
    fn prime_field_arithmetic() {
        assert!(PrimeField::new(15).is_none());
        assert!(PrimeField::new(1).is_none());
        let f = PrimeField::new(101).unwrap();
        let a = f.from_i64(-3);
        assert_eq!(a, 98);
        let inv = f.inv(&a).unwrap();
        assert_eq!(f.mul(&a, &inv), 1);
        assert_eq!(f.parse("1/2"), Some(51));
        assert!(PrimeField::new(LARGE_PRIME).is_some());
        assert!(!is_prime(561));
    }
}

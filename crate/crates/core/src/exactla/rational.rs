//! Rational numbers with an inline `i64` representation and a bignum
//! fallback. Values are always normalized, so structural equality is
//! numeric equality.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Q {
    /// numerator, positive denominator, coprime
    Small(i64, i64),
    Big(Box<BigRational>),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Q {
    pub const ZERO: Q = Q::Small(0, 1);
    pub const ONE: Q = Q::Small(1, 1);

    pub fn int(v: i64) -> Q {
        Q::Small(v, 1)
    }

    fn from_i128(n: i128, d: i128) -> Q {
        debug_assert!(d != 0);
        let (mut n, mut d) = if d < 0 { (-n, -d) } else { (n, d) };
        let g = gcd_u128(n.unsigned_abs(), d as u128) as i128;
        if g > 1 {
            n /= g;
            d /= g;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) if n != i64::MIN => Q::Small(n, d),
            _ => Q::Big(Box::new(BigRational::new_raw(BigInt::from(n), BigInt::from(d)))),
        }
    }

    fn from_big(r: BigRational) -> Q {
        // BigRational arithmetic keeps values reduced with positive denominator
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) if n != i64::MIN => Q::Small(n, d),
            _ => Q::Big(Box::new(r)),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Q::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Q::Big(r) => (**r).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Q::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Q::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Q::Small(_, d) => *d == 1,
            Q::Big(r) => r.is_integer(),
        }
    }

    pub fn add(&self, o: &Q) -> Q {
        match (self, o) {
            (Q::Small(a, b), Q::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    return match a.checked_add(*c) {
                        Some(s) if s != i64::MIN => Q::Small(s, 1),
                        _ => Q::from_i128(*a as i128 + *c as i128, 1),
                    };
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Q::from_i128(a * d + c * b, b * d)
            }
            _ => Q::from_big(self.to_big() + o.to_big()),
        }
    }

    pub fn neg(&self) -> Q {
        match self {
            Q::Small(n, d) => Q::Small(-n, *d),
            Q::Big(r) => Q::from_big(-(**r).clone()),
        }
    }

    pub fn sub(&self, o: &Q) -> Q {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Q) -> Q {
        match (self, o) {
            (Q::Small(0, _), _) | (_, Q::Small(0, _)) => Q::ZERO,
            (Q::Small(a, b), Q::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    return match a.checked_mul(*c) {
                        Some(p) if p != i64::MIN => Q::Small(p, 1),
                        _ => Q::from_i128(*a as i128 * *c as i128, 1),
                    };
                }
                Q::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Q::from_big(self.to_big() * o.to_big()),
        }
    }

    pub fn recip(&self) -> Option<Q> {
        match self {
            Q::Small(0, _) => None,
            Q::Small(n, d) => Some(if *n < 0 { Q::Small(-d, -n) } else { Q::Small(*d, *n) }),
            Q::Big(r) => Some(Q::from_big(r.recip())),
        }
    }

    pub fn numer_denom(&self) -> (BigInt, BigInt) {
        match self {
            Q::Small(n, d) => (BigInt::from(*n), BigInt::from(*d)),
            Q::Big(r) => (r.numer().clone(), r.denom().clone()),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Q::Small(n, 1) => Some(*n),
            _ => None,
        }
    }

    /// Residue modulo `p`, `None` if `p` divides the denominator.
    pub fn mod_p(&self, p: u64) -> Option<u64> {
        let (n, d) = match self {
            Q::Small(n, d) => ((*n as i128).rem_euclid(p as i128) as u64, (*d as i128).rem_euclid(p as i128) as u64),
            Q::Big(r) => {
                let pb = BigInt::from(p);
                let n = r.numer().mod_floor(&pb).to_u64()?;
                let d = r.denom().mod_floor(&pb).to_u64()?;
                (n, d)
            }
        };
        if d == 0 {
            return None;
        }
        let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
        let mut inv = 1u64;
        let (mut b, mut e) = (d, p - 2);
        while e > 0 {
            if e & 1 == 1 {
                inv = mulmod(inv, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        Some(mulmod(n, inv))
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Q::Small(n, 1) => write!(f, "{n}"),
            Q::Small(n, d) => write!(f, "{n}/{d}"),
            Q::Big(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Q::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Q {
    type Err = String;

    fn from_str(s: &str) -> Result<Q, String> {
        let s = s.trim();
        let bad = || "malformed rational: ".to_string() + s;
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (BigInt::from_str(n.trim()).map_err(|_| bad())?, BigInt::from_str(d.trim()).map_err(|_| bad())?),
            None => (BigInt::from_str(s).map_err(|_| bad())?, BigInt::one()),
        };
        if d.is_zero() {
            return Err("zero denominator: ".to_string() + s);
        }
        Ok(Q::from_big(BigRational::new(n, d)))
    }
}

impl From<i64> for Q {
    fn from(v: i64) -> Q {
        Q::int(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Q::int(i64::MAX).mul(&Q::int(4));
        assert!(matches!(big, Q::Big(_)));
        let back = big.mul(&Q::Small(1, 4));
        assert_eq!(back, Q::int(i64::MAX));
        assert!(matches!(back, Q::Small(..)));
    }

    #[test]
    fn fractions_reduce() {
        let a = Q::Small(1, 6).add(&Q::Small(1, 3));
        assert_eq!(a, Q::Small(1, 2));
        assert_eq!(a.recip(), Some(Q::int(2)));
        assert_eq!(Q::Small(-2, 3).recip(), Some(Q::Small(-3, 2)));
        assert_eq!("4/-6".parse::<Q>().unwrap(), Q::Small(-2, 3));
        assert_eq!(Q::Small(-2, 3).to_string(), "-2/3");
    }

    #[test]
    fn residues() {
        assert_eq!(Q::Small(1, 2).mod_p(7), Some(4));
        assert_eq!(Q::Small(1, 7).mod_p(7), None);
        assert_eq!(Q::int(-1).mod_p(5), Some(4));
    }
}

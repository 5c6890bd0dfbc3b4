//! Exact rational scalars.
//!
//! `Rat` wraps an arbitrary-precision rational kept in lowest terms with a
//! positive denominator. Every computation in this crate is exact; there is
//! no floating point anywhere downstream of this type.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An exact rational number, always reduced, denominator always positive.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rat(BigRational);

impl Rat {
    /// Builds `num / den`. Returns `None` when `den` is zero.
    pub fn new(num: BigInt, den: BigInt) -> Option<Self> {
        if den.is_zero() {
            None
        } else {
            Some(Rat(BigRational::new(num, den)))
        }
    }

    pub fn from_int(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num / den` from machine integers; panics if `den == 0`.
    pub fn from_frac(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rat(self.0.recip()))
        }
    }

    /// Exact square root when `self` is a square in the rationals.
    ///
    /// Both `|numerator|` and `denominator` must be perfect integer squares
    /// and the value must be non-negative. The returned root is the
    /// non-negative one.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let num_root = self.numer().sqrt();
        let den_root = self.denom().sqrt();
        if &(&num_root * &num_root) == self.numer() && &(&den_root * &den_root) == self.denom() {
            Some(Rat(BigRational::new(num_root, den_root)))
        } else {
            None
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Rat::one();
        for _ in 0..exp {
            acc *= self.clone();
        }
        acc
    }

    /// Parses `"p"` or `"p/q"`; rejects a zero denominator.
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        match s.split_once('/') {
            None => BigInt::from_str(s).ok().map(|n| Rat(BigRational::from_integer(n))),
            Some((p, q)) => {
                let num = BigInt::from_str(p.trim()).ok()?;
                let den = BigInt::from_str(q.trim()).ok()?;
                Rat::new(num, den)
            }
        }
    }
}

impl fmt::Display for Rat {
    /// Renders as `p` for integers and `p/q` otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::from_int(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((self.0).$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: &'a Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for Rat {
    type Output = Rat;
    /// Panics on division by zero; use [`Rat::recip`] to branch instead.
    fn div(self, rhs: Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        Rat(self.0 / rhs.0)
    }
}

impl Div<&Rat> for &Rat {
    type Output = Rat;
    /// Panics on division by zero; use [`Rat::recip`] to branch instead.
    fn div(self, rhs: &Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        Rat(&self.0 / &rhs.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl AddAssign for Rat {
    fn add_assign(&mut self, rhs: Rat) {
        self.0 += rhs.0;
    }
}

impl SubAssign for Rat {
    fn sub_assign(&mut self, rhs: Rat) {
        self.0 -= rhs.0;
    }
}

impl MulAssign for Rat {
    fn mul_assign(&mut self, rhs: Rat) {
        self.0 *= rhs.0;
    }
}

impl Serialize for Rat {
    /// Serializes as the string `"p"` or `"p/q"`.
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    /// Accepts a `"p/q"` string or a plain JSON integer.
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Text(String),
            Int(i64),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Text(s) => {
                Rat::parse(&s).ok_or_else(|| D::Error::custom(format!("invalid rational {s:?}")))
            }
            Repr::Int(n) => Ok(Rat::from_int(n)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_and_normalizes_sign() {
        let r = Rat::from_frac(4, -6);
        assert_eq!(r.to_string(), "-2/3");
        assert!(r.denom() > &BigInt::zero());
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(Rat::new(BigInt::from(1), BigInt::from(0)).is_none());
        assert!(Rat::parse("1/0").is_none());
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "7", "-3", "5/9", "-22/7"] {
            assert_eq!(Rat::parse(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn sqrt_of_squares() {
        assert_eq!(Rat::from_frac(9, 4).sqrt(), Some(Rat::from_frac(3, 2)));
        assert_eq!(Rat::from_int(2).sqrt(), None);
        assert_eq!(Rat::from_int(-4).sqrt(), None);
        assert_eq!(Rat::zero().sqrt(), Some(Rat::zero()));
    }

    #[test]
    fn arithmetic() {
        let a = Rat::from_frac(1, 2);
        let b = Rat::from_frac(1, 3);
        assert_eq!(&a + &b, Rat::from_frac(5, 6));
        assert_eq!(&a - &b, Rat::from_frac(1, 6));
        assert_eq!(&a * &b, Rat::from_frac(1, 6));
        assert_eq!(a.clone() / b, Rat::from_frac(3, 2));
        assert_eq!(a.pow(3), Rat::from_frac(1, 8));
    }
}

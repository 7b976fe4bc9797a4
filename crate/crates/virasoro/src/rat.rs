//! Exact rational scalars.
//!
//! [`Rat`] wraps an arbitrary-precision rational kept in lowest terms with a
//! positive denominator. Every operation in this crate that produces a scalar
//! goes through this type; no floating point is used anywhere.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Error;

/// An exact rational number.
///
/// Always normalized: lowest terms, denominator positive. Construct with
/// [`Rat::new`], [`Rat::from_int`], or parse from text in `p` or `p/q` form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(BigRational);

impl Rat {
    /// The scalar 0.
    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    /// The scalar 1.
    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    /// Builds `num/den`. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Builds the integer scalar `n`.
    pub fn from_int(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    /// Builds `num/den` from big integers. Panics if `den == 0`.
    pub fn from_big(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Rat(BigRational::new(num, den))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// True when the denominator is 1.
    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Numerator of the reduced fraction (sign lives here).
    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    /// Denominator of the reduced fraction (always positive).
    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// Multiplicative inverse; errors on zero.
    pub fn recip(&self) -> crate::Result<Rat> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rat(self.0.recip()))
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    /// Largest integer `<= self`.
    pub fn floor_int(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// Fractional part `self - floor(self)`, always in `[0, 1)`.
    pub fn fract(&self) -> Rat {
        Rat(&self.0 - self.0.floor())
    }

    /// Nonnegative integer power.
    pub fn pow(&self, e: u32) -> Rat {
        Rat(self.0.pow(e as i32))
    }

    /// The value as an `i64`, when it is an integer in range.
    pub fn to_i64(&self) -> Option<i64> {
        if !self.is_integer() {
            return None;
        }
        self.0.numer().to_i64()
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::from_int(n)
    }
}

impl From<BigInt> for Rat {
    fn from(n: BigInt) -> Self {
        Rat(BigRational::from_integer(n))
    }
}

impl From<BigRational> for Rat {
    fn from(q: BigRational) -> Self {
        Rat(q)
    }
}

impl fmt::Display for Rat {
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
        write!(f, "Rat({})", self)
    }
}

impl FromStr for Rat {
    type Err = Error;

    /// Parses `p` or `p/q` with an optional leading sign.
    fn from_str(s: &str) -> crate::Result<Self> {
        let s = s.trim();
        let err = |msg: &str| Error::Parse {
            position: 0,
            message: format!("{msg} in rational `{s}`"),
        };
        let (num_str, den_str) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let num: BigInt = num_str.parse().map_err(|_| err("invalid numerator"))?;
        let den: BigInt = match den_str {
            Some(d) => d.parse().map_err(|_| err("invalid denominator"))?,
            None => BigInt::one(),
        };
        if den.is_zero() {
            return Err(err("zero denominator"));
        }
        Ok(Rat(BigRational::new(num, den)))
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
        impl $trait<&Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat((self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((&self.0).$method(rhs.0))
            }
        }
        impl $trait<&Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

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

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        self.0 += &rhs.0;
    }
}

impl AddAssign for Rat {
    fn add_assign(&mut self, rhs: Rat) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rat> for Rat {
    fn mul_assign(&mut self, rhs: &Rat) {
        self.0 *= &rhs.0;
    }
}

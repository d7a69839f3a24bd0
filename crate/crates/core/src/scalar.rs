//! Exact rational scalars with a strict `p/q` text form.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::CoreError;
use crate::ring::Ring;

/// An exact rational number, kept in lowest terms with positive denominator.
///
/// The text form is `p/q` (or just `p` for integers) with any minus sign on
/// the numerator only; parsing rejects anything else.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn from_int(n: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num/den`; panics on a zero denominator.
    pub fn frac(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Scalar(self.0.abs())
    }

    pub fn inv(&self) -> Self {
        assert!(!self.0.is_zero(), "division by zero");
        Scalar(self.0.recip())
    }
}

impl Ring for Scalar {
    fn zero() -> Self {
        Scalar(BigRational::zero())
    }
    fn one() -> Self {
        Scalar(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        Scalar(&self.0 + &rhs.0)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Scalar(&self.0 - &rhs.0)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Scalar(&self.0 * &rhs.0)
    }
    fn neg(&self) -> Self {
        Scalar(-&self.0)
    }
    fn from_int(n: i64) -> Self {
        Scalar::from_int(n)
    }
    fn from_scalar(s: &Scalar) -> Self {
        s.clone()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // BigRational prints `p` when the denominator is one, else `p/q`.
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn decimal_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

impl FromStr for Scalar {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CoreError::Argument(format!("malformed rational `{s}`"));
        let (num_str, den_str) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        let num_digits = num_str.strip_prefix('-').unwrap_or(num_str);
        if !decimal_digits(num_digits) {
            return Err(bad());
        }
        let num = BigInt::from_str(num_str).map_err(|_| bad())?;
        let den = match den_str {
            None => BigInt::one(),
            Some(d) => {
                if !decimal_digits(d) {
                    return Err(bad());
                }
                let den = BigInt::from_str(d).map_err(|_| bad())?;
                if den.is_zero() {
                    return Err(CoreError::Argument(format!("zero denominator in `{s}`")));
                }
                den
            }
        };
        Ok(Scalar(BigRational::new(num, den)))
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar($trait::$method(self.0, rhs.0))
            }
        }
        impl $trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar($trait::$method(&self.0, &rhs.0))
            }
        }
    };
}

scalar_binop!(Add, add);
scalar_binop!(Sub, sub);
scalar_binop!(Mul, mul);

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        assert!(!rhs.0.is_zero(), "division by zero");
        Scalar(&self.0 / &rhs.0)
    }
}

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        (&self).div(&rhs)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_and_print() {
        let x: Scalar = "-3/6".parse().unwrap();
        assert_eq!(x.to_string(), "-1/2");
        let y: Scalar = "4/2".parse().unwrap();
        assert_eq!(y.to_string(), "2");
        let z: Scalar = "0".parse().unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn rejects_malformed_input() {
        for s in ["", "1/0", "1/-2", "+1", "a", "1.5", "1/ 2", "--1", "1//2"] {
            assert!(s.parse::<Scalar>().is_err(), "accepted `{s}`");
        }
    }

    #[test]
    fn arithmetic_is_exact() {
        let third = Scalar::frac(1, 3);
        let sum = (&third + &third) + third.clone();
        assert_eq!(sum, Scalar::from_int(1));
        assert_eq!(Scalar::frac(2, 4), Scalar::frac(1, 2));
    }

    proptest! {
        #[test]
        fn string_round_trip(n in -10_000i64..10_000, d in 1i64..10_000) {
            let x = Scalar::frac(n, d);
            let back: Scalar = x.to_string().parse().unwrap();
            prop_assert_eq!(back, x);
        }

        #[test]
        fn field_identities(a in -500i64..500, b in 1i64..500, c in -500i64..500, e in 1i64..500) {
            let x = Scalar::frac(a, b);
            let y = Scalar::frac(c, e);
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&x - &x, Scalar::from_int(0));
            if !y.is_zero() {
                prop_assert_eq!(&(&x / &y) * &y, x);
            }
        }
    }
}

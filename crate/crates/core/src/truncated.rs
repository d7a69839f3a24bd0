//! The truncated polynomial ring ℚ[t]/(t^m).

use std::fmt;

use crate::ring::Ring;
use crate::scalar::Scalar;

/// Handle for ℚ[t]/(t^m) with `m >= 1`. For `m = 1` this is ℚ itself and
/// the maximal ideal is zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TruncatedRing {
    order: usize,
}

impl TruncatedRing {
    pub fn new(order: usize) -> Self {
        assert!(order >= 1, "truncation order must be at least 1");
        TruncatedRing { order }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Element with the given low-order coefficients, truncated or
    /// zero-padded to length `m`.
    pub fn element(&self, coeffs: &[Scalar]) -> TruncPoly {
        let mut c: Vec<Scalar> = coeffs.iter().take(self.order).cloned().collect();
        c.resize(self.order, Ring::zero());
        TruncPoly { coeffs: c }
    }

    pub fn zero(&self) -> TruncPoly {
        self.element(&[])
    }

    pub fn one(&self) -> TruncPoly {
        self.element(&[Ring::one()])
    }

    /// The class of `t`; zero when `m = 1`.
    pub fn t(&self) -> TruncPoly {
        self.element(&[Ring::zero(), Ring::one()])
    }

    pub fn embed(&self, s: &Scalar) -> TruncPoly {
        self.element(std::slice::from_ref(s))
    }

    /// Membership in the maximal ideal `R_+` (zero constant term).
    pub fn in_max_ideal(&self, x: &TruncPoly) -> bool {
        x.constant_term().is_zero()
    }

    /// Reduction modulo `R_+`, i.e. the constant term.
    pub fn reduce(&self, x: &TruncPoly) -> Scalar {
        x.constant_term()
    }
}

/// Element of a truncated polynomial ring. `coeffs[i]` is the coefficient
/// of `t^i` and the vector length is the truncation order in effect.
///
/// `Ring::zero`/`Ring::one` produce length-1 constants; mixed-length
/// arithmetic unifies operands to the larger length, so embedded rationals
/// combine with elements of any fixed ring without a shared handle.
#[derive(Clone, Debug)]
pub struct TruncPoly {
    coeffs: Vec<Scalar>,
}

impl TruncPoly {
    pub fn constant_term(&self) -> Scalar {
        self.coeffs.first().cloned().unwrap_or_else(Ring::zero)
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(Ring::zero)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl PartialEq for TruncPoly {
    fn eq(&self, other: &Self) -> bool {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n).all(|i| self.coeff(i) == other.coeff(i))
    }
}

impl Ring for TruncPoly {
    fn zero() -> Self {
        TruncPoly { coeffs: vec![Ring::zero()] }
    }

    fn one() -> Self {
        TruncPoly { coeffs: vec![Ring::one()] }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).add(&rhs.coeff(i))).collect();
        TruncPoly { coeffs }
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs: Vec<Scalar> = vec![Ring::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j >= n {
                    break;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        TruncPoly { coeffs }
    }

    fn neg(&self) -> Self {
        TruncPoly { coeffs: self.coeffs.iter().map(|c| Ring::neg(c)).collect() }
    }

    fn from_int(n: i64) -> Self {
        TruncPoly { coeffs: vec![Scalar::from_int(n)] }
    }

    fn from_scalar(s: &Scalar) -> Self {
        TruncPoly { coeffs: vec![s.clone()] }
    }
}

impl fmt::Display for TruncPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*t")?,
                _ => write!(f, "{c}*t^{i}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

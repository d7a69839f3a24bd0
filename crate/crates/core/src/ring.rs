use std::fmt::{Debug, Display};

use crate::scalar::Scalar;

/// Exact commutative coefficient ring.
///
/// Implemented by [`Scalar`] (the rationals) and by
/// [`crate::truncated::TruncPoly`] (ℚ[t]/(t^m)). All graded-map and
/// complex machinery is generic over this trait; only rank/kernel/image
/// computations require the field [`Scalar`].
pub trait Ring: Clone + PartialEq + Debug + Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_int(n: i64) -> Self;
    /// Embedding of the ground field ℚ.
    fn from_scalar(s: &Scalar) -> Self;
}

/// (-1)^k as a ring element.
pub fn sign<R: Ring>(k: i64) -> R {
    if k.rem_euclid(2) == 0 {
        R::one()
    } else {
        R::from_int(-1)
    }
}

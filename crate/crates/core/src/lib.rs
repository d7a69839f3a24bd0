//! Exact-arithmetic kernel for nilpotent differential structures.
//!
//! Everything here computes over ℚ (or over a truncated polynomial ring
//! ℚ[t]/(t^m)); there is no floating point anywhere. The main objects:
//!
//! * [`graded::GradedSpace`] / [`graded::GradedMap`] - finitely supported
//!   ℤ-graded spaces with named basis elements and exact block matrices.
//! * [`ncomplex::NComplex`] - a graded space with a degree-1 map `d`
//!   satisfying `d^N = 0`, with generalized cohomology, morphism checks,
//!   homotopy witnesses, and tensor products.
//! * [`ndga::NDga`] - an N-complex with an associative graded product
//!   satisfying the graded Leibniz rule, plus modules over it.
//! * [`mc`] - the expansion of `(d+e)^N` into multi-index terms
//!   `c(s,N) e^(s) d^(N(s))`, Maurer-Cartan residuals, closed forms on
//!   2-complexes, inner derivations, deformations over ℚ[t]/(t^m), and
//!   the antisymmetric pairing sum.
//! * [`dqm`] - weighted digraph path kernels, including the built-in
//!   multi-index graph whose path sums reproduce the `c(s,N)` coefficients
//!   by an independent route.
//! * [`freealg`] / [`cs`] - the free noncommutative algebra on
//!   `a, da, b, db`, cyclic (trace) classes, and Chern-Simons functionals
//!   with their variational check.
//! * [`gallery`] / [`fixture`] - built-in example structures and JSON
//!   serialization for complexes, algebras, and graphs.

pub mod cs;
pub mod dqm;
pub mod error;
pub mod fixture;
pub mod freealg;
pub mod gallery;
pub mod graded;
pub mod matrix;
pub mod mc;
pub mod multiindex;
pub mod ncomplex;
pub mod ndga;
pub mod ring;
pub mod scalar;
pub mod truncated;

pub use error::{CoreError, Result};
pub use graded::{Element, GradedMap, GradedSpace};
pub use matrix::Matrix;
pub use mc::{CoeffTable, McExpansion};
pub use multiindex::MultiIndex;
pub use ncomplex::NComplex;
pub use ndga::{AxiomReport, Kdgm, NDga};
pub use ring::Ring;
pub use scalar::Scalar;
pub use truncated::{TruncPoly, TruncatedRing};

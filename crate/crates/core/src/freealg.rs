//! The free noncommutative differential algebra on two degree-1
//! generators `a`, `b` and their images `da`, `db`: words, polynomials
//! with rational coefficients, the differential, the length-scaling
//! operator `#` with its inverse, and dual-number polynomials used for
//! first-order variations.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{CoreError, Result};
use crate::ring::Ring;
use crate::scalar::Scalar;

/// Generators of the free algebra, ordered `a < da < b < db`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    A,
    Da,
    B,
    Db,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::A, Letter::Da, Letter::B, Letter::Db];

    pub fn degree(self) -> i64 {
        match self {
            Letter::A | Letter::B => 1,
            Letter::Da | Letter::Db => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Letter::A => "a",
            Letter::Da => "da",
            Letter::B => "b",
            Letter::Db => "db",
        }
    }

    /// The differential on generators: `a -> da`, `b -> db`, images to 0.
    pub fn d(self) -> Option<Letter> {
        match self {
            Letter::A => Some(Letter::Da),
            Letter::B => Some(Letter::Db),
            Letter::Da | Letter::Db => None,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// A word in the generators. Ordered by length, then lexicographically;
/// the empty word is the unit monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NCWord(Vec<Letter>);

impl NCWord {
    pub fn new(letters: impl Into<Vec<Letter>>) -> Self {
        NCWord(letters.into())
    }

    pub fn empty() -> Self {
        NCWord(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|l| l.degree()).sum()
    }

    pub fn concat(&self, rhs: &NCWord) -> NCWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&rhs.0);
        NCWord(v)
    }

    /// Letters of one kind, counting `b`-type as both `b` and `db`.
    pub fn count_b_type(&self) -> usize {
        self.0
            .iter()
            .filter(|l| matches!(l, Letter::B | Letter::Db))
            .count()
    }
}

impl Ord for NCWord {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for NCWord {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for NCWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "·")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// A noncommutative polynomial: finitely many words with rational
/// coefficients. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct NCPoly {
    terms: BTreeMap<NCWord, Scalar>,
}

impl NCPoly {
    pub fn zero() -> Self {
        NCPoly::default()
    }

    pub fn one() -> Self {
        NCPoly::word(NCWord::empty())
    }

    pub fn letter(l: Letter) -> Self {
        NCPoly::word(NCWord::new([l]))
    }

    pub fn word(w: NCWord) -> Self {
        let mut p = NCPoly::zero();
        p.add_term(&w, &Scalar::one());
        p
    }

    pub fn add_term(&mut self, w: &NCWord, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w.clone()).or_insert_with(Scalar::zero);
        *entry = entry.add(c);
        if entry.is_zero() {
            self.terms.remove(w);
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w, c);
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        NCPoly {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = NCPoly::zero();
        for (w, v) in &self.terms {
            out.add_term(w, &v.mul(c));
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = NCPoly::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &rhs.terms {
                out.add_term(&w1.concat(w2), &c1.mul(c2));
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = NCPoly::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&NCWord, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &NCWord) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "{c} * {w}")?;
            first = false;
        }
        Ok(())
    }
}

/// The differential extended by the graded Leibniz rule: replacing the
/// letter at position i picks up the sign of the prefix degree.
pub fn free_d(p: &NCPoly) -> NCPoly {
    let mut out = NCPoly::zero();
    for (w, c) in p.iter() {
        let mut prefix_degree: i64 = 0;
        for (i, letter) in w.letters().iter().enumerate() {
            if let Some(image) = letter.d() {
                let mut letters = w.letters().to_vec();
                letters[i] = image;
                let sign: Scalar = crate::ring::sign(prefix_degree);
                out.add_term(&NCWord::new(letters), &c.mul(&sign));
            }
            prefix_degree += letter.degree();
        }
    }
    out
}

/// The length-scaling operator `#`: each word is multiplied by its
/// length, so the unit monomial is sent to zero.
pub fn hash_map(p: &NCPoly) -> NCPoly {
    let mut out = NCPoly::zero();
    for (w, c) in p.iter() {
        out.add_term(w, &c.mul(&Scalar::from_int(w.len() as i64)));
    }
    out
}

/// Inverse of [`hash_map`] on polynomials without a constant term.
pub fn hash_inverse(p: &NCPoly) -> Result<NCPoly> {
    let mut out = NCPoly::zero();
    for (w, c) in p.iter() {
        if w.is_empty() {
            return Err(CoreError::Argument(
                "the length-scaling operator is not invertible on the \
                 unit monomial"
                    .into(),
            ));
        }
        out.add_term(w, &(c / &Scalar::from_int(w.len() as i64)));
    }
    Ok(out)
}

/// `c0 + ε c1` with ε central, even, and ε² = 0: the ring of first-order
/// variations over [`NCPoly`].
#[derive(Clone, Debug, PartialEq)]
pub struct EpsPoly {
    pub c0: NCPoly,
    pub c1: NCPoly,
}

impl EpsPoly {
    pub fn new(c0: NCPoly, c1: NCPoly) -> Self {
        EpsPoly { c0, c1 }
    }

    pub fn constant(p: NCPoly) -> Self {
        EpsPoly { c0: p, c1: NCPoly::zero() }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        EpsPoly { c0: self.c0.add(&rhs.c0), c1: self.c1.add(&rhs.c1) }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        EpsPoly {
            c0: self.c0.mul(&rhs.c0),
            c1: self.c0.mul(&rhs.c1).add(&self.c1.mul(&rhs.c0)),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = EpsPoly::constant(NCPoly::one());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn word(ls: &[Letter]) -> NCWord {
        NCWord::new(ls)
    }

    #[test]
    fn differential_of_a_square() {
        let a = NCPoly::letter(Letter::A);
        let aa = a.mul(&a);
        let d = free_d(&aa);
        // d(aa) = da·a - a·da.
        assert_eq!(d.coeff(&word(&[Letter::Da, Letter::A])), Scalar::from_int(1));
        assert_eq!(d.coeff(&word(&[Letter::A, Letter::Da])), Scalar::from_int(-1));
        assert_eq!(d.iter().count(), 2);
    }

    #[test]
    fn hash_scales_by_length() {
        let p = NCPoly::word(word(&[Letter::A, Letter::Da]));
        assert_eq!(
            hash_map(&p).coeff(&word(&[Letter::A, Letter::Da])),
            Scalar::from_int(2)
        );
        let aaa = NCPoly::word(word(&[Letter::A, Letter::A, Letter::A]));
        assert_eq!(
            hash_inverse(&aaa).unwrap().coeff(&word(&[Letter::A; 3])),
            Scalar::frac(1, 3)
        );
        assert!(hash_inverse(&NCPoly::one()).is_err());
        assert!(hash_map(&NCPoly::one()).is_zero());
    }

    #[test]
    fn eps_square_vanishes() {
        // (a + εb)^2 = a^2 + ε(ab + ba).
        let x = EpsPoly::new(NCPoly::letter(Letter::A), NCPoly::letter(Letter::B));
        let sq = x.pow(2);
        assert_eq!(
            sq.c0,
            NCPoly::word(word(&[Letter::A, Letter::A]))
        );
        let expected = NCPoly::word(word(&[Letter::A, Letter::B]))
            .add(&NCPoly::word(word(&[Letter::B, Letter::A])));
        assert_eq!(sq.c1, expected);
    }

    fn arb_word() -> impl Strategy<Value = NCWord> {
        proptest::collection::vec(0usize..4, 0..5).prop_map(|v| {
            NCWord::new(v.into_iter().map(|i| Letter::ALL[i]).collect::<Vec<_>>())
        })
    }

    fn arb_poly() -> impl Strategy<Value = NCPoly> {
        proptest::collection::vec((arb_word(), -4i64..5), 0..4).prop_map(|terms| {
            let mut p = NCPoly::zero();
            for (w, c) in terms {
                p.add_term(&w, &Scalar::from_int(c));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn differential_squares_to_zero(p in arb_poly()) {
            prop_assert!(free_d(&free_d(&p)).is_zero());
        }

        #[test]
        fn hash_round_trip(p in arb_poly()) {
            // Remove any constant term before inverting.
            let mut q = p.clone();
            let unit = NCWord::empty();
            let c = q.coeff(&unit);
            q.add_term(&unit, &c.neg());
            let back = hash_inverse(&hash_map(&q)).unwrap();
            prop_assert_eq!(back, q);
        }

        #[test]
        fn multiplication_is_associative(
            p in arb_poly(), q in arb_poly(), r in arb_poly()
        ) {
            prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
        }

        #[test]
        fn leibniz_rule_for_products(p in arb_word(), q in arb_word()) {
            // d(pq) = d(p)q + (-1)^{deg p} p d(q) for homogeneous words.
            let pp = NCPoly::word(p.clone());
            let qq = NCPoly::word(q.clone());
            let lhs = free_d(&pp.mul(&qq));
            let sign: Scalar = crate::ring::sign(p.degree());
            let rhs = free_d(&pp).mul(&qq).add(&pp.mul(&free_d(&qq)).scale(&sign));
            prop_assert_eq!(lhs, rhs);
        }
    }
}

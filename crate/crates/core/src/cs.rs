//! Cyclic word classes of the free algebra (the target of a formal
//! trace), the odd action functionals built from `a(da + a²)^K`, and the
//! first-order variational check identifying the critical equation
//! modulo exact classes.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{CoreError, Result};
use crate::freealg::{free_d, hash_inverse, EpsPoly, Letter, NCPoly, NCWord};
use crate::matrix;
use crate::ring::Ring;
use crate::scalar::Scalar;

/// A linear combination of canonical cyclic words.
pub type CyclicCombo = BTreeMap<NCWord, Scalar>;

/// One rotation step: `x·w' -> w'·x` with the graded trace sign
/// `(-1)^{deg x · deg w'}`. The empty word rotates to itself with sign 1.
pub fn rotate_once(w: &NCWord) -> (NCWord, Scalar) {
    let letters = w.letters();
    if letters.is_empty() {
        return (w.clone(), Scalar::one());
    }
    let x = letters[0];
    let mut rotated = letters[1..].to_vec();
    rotated.push(x);
    let sign: Scalar = crate::ring::sign(x.degree() * (w.degree() - x.degree()));
    (NCWord::new(rotated), sign)
}

/// The canonical representative of a word's cyclic class: its least
/// rotation, with the accumulated sign relating the word to it. Returns
/// `None` when the least rotation reappears with both signs, which makes
/// the whole class zero.
pub fn canonical_rotation(w: &NCWord) -> Option<(NCWord, Scalar)> {
    let mut best = w.clone();
    let mut best_sign = Scalar::one();
    let mut inconsistent = false;
    let mut current = w.clone();
    let mut sign = Scalar::one();
    for _ in 0..w.len() {
        let (next, step) = rotate_once(&current);
        sign = sign.mul(&step);
        current = next;
        match current.cmp(&best) {
            std::cmp::Ordering::Less => {
                best = current.clone();
                best_sign = sign.clone();
                inconsistent = false;
            }
            std::cmp::Ordering::Equal => {
                if sign != best_sign {
                    inconsistent = true;
                }
            }
            std::cmp::Ordering::Greater => {}
        }
    }
    if inconsistent {
        None
    } else {
        Some((best, best_sign))
    }
}

/// Projects a polynomial to cyclic classes: every word is replaced by its
/// canonical rotation with the trace sign, self-annihilating classes are
/// dropped, and coefficients are accumulated.
pub fn cyclic_reduce(p: &NCPoly) -> CyclicCombo {
    let mut out = CyclicCombo::new();
    for (w, c) in p.iter() {
        let Some((canonical, sign)) = canonical_rotation(w) else {
            continue;
        };
        let entry = out.entry(canonical).or_insert_with(Scalar::zero);
        *entry = entry.add(&c.mul(&sign));
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Scales every class coefficient.
pub fn scale_classes(combo: &CyclicCombo, c: &Scalar) -> CyclicCombo {
    combo
        .iter()
        .filter(|(_, v)| !v.mul(c).is_zero())
        .map(|(w, v)| (w.clone(), v.mul(c)))
        .collect()
}

fn combo_sub(a: &CyclicCombo, b: &CyclicCombo) -> CyclicCombo {
    let mut out = a.clone();
    for (w, c) in b {
        let entry = out.entry(w.clone()).or_insert_with(Scalar::zero);
        *entry = entry.sub(c);
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// All words over the given letters with the exact total degree and at
/// most `max_len` letters.
pub fn enumerate_words(letters: &[Letter], degree: i64, max_len: usize) -> Vec<NCWord> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<Letter>> = vec![Vec::new()];
    while let Some(prefix) = stack.pop() {
        let prefix_degree: i64 = prefix.iter().map(|l| l.degree()).sum();
        if prefix_degree == degree {
            out.push(NCWord::new(prefix));
            continue;
        }
        if prefix.len() >= max_len || prefix_degree > degree {
            continue;
        }
        for &l in letters.iter().rev() {
            if prefix_degree + l.degree() <= degree {
                let mut next = prefix.clone();
                next.push(l);
                stack.push(next);
            }
        }
    }
    out.sort();
    out
}

/// Membership of a class combination in the span of the given
/// combinations, by exact linear algebra over the union of their words.
pub fn in_span(target: &CyclicCombo, generators: &[CyclicCombo]) -> bool {
    let mut words: BTreeSet<NCWord> = target.keys().cloned().collect();
    for g in generators {
        words.extend(g.keys().cloned());
    }
    let index: Vec<NCWord> = words.into_iter().collect();
    let dim = index.len();
    let to_coords = |combo: &CyclicCombo| -> Vec<Scalar> {
        index
            .iter()
            .map(|w| combo.get(w).cloned().unwrap_or_else(Scalar::zero))
            .collect()
    };
    let vectors: Vec<Vec<Scalar>> = generators.iter().map(to_coords).collect();
    matrix::span_contains(&vectors, &to_coords(target), dim)
}

/// The weight-2K action functional: `2K` times the cyclic classes of
/// `#⁻¹(a (da + a²)^K)`. Requires `K >= 1`.
pub fn cs_functional(k: u32) -> Result<CyclicCombo> {
    if k == 0 {
        return Err(CoreError::Argument("the functional needs K >= 1".into()));
    }
    let a = NCPoly::letter(Letter::A);
    let da = NCPoly::letter(Letter::Da);
    let curvature = da.add(&a.mul(&a));
    let integrand = a.mul(&curvature.pow(k));
    let uncurled = hash_inverse(&integrand)?;
    Ok(scale_classes(
        &cyclic_reduce(&uncurled),
        &Scalar::from_int(2 * i64::from(k)),
    ))
}

/// First-order variation of the functional under `a -> a + εb`,
/// compared against `2K` times the classes of `b (da + a²)^K`. The two
/// must agree modulo classes of exact elements; returns whether they do.
pub fn variational_check(k: u32) -> Result<bool> {
    if k == 0 {
        return Err(CoreError::Argument("the functional needs K >= 1".into()));
    }
    let x = EpsPoly::new(NCPoly::letter(Letter::A), NCPoly::letter(Letter::B));
    let dx = EpsPoly::new(NCPoly::letter(Letter::Da), NCPoly::letter(Letter::Db));
    let curvature = dx.add(&x.mul(&x));
    let integrand = x.mul(&curvature.pow(k));
    let two_k = Scalar::from_int(2 * i64::from(k));
    let variation = scale_classes(
        &cyclic_reduce(&hash_inverse(&integrand.c1)?),
        &two_k,
    );

    let a = NCPoly::letter(Letter::A);
    let b = NCPoly::letter(Letter::B);
    let da = NCPoly::letter(Letter::Da);
    let target_poly = b.mul(&da.add(&a.mul(&a)).pow(k));
    let target = scale_classes(&cyclic_reduce(&target_poly), &two_k);

    let diff = combo_sub(&variation, &target);
    if diff.is_empty() {
        return Ok(true);
    }

    // Exact classes of the matching weight: d preserves word length and
    // the b-type letter count, and every word in the difference carries
    // exactly one b-type letter, so those generators suffice.
    let degree = 2 * i64::from(k);
    let generators: Vec<CyclicCombo> = enumerate_words(&Letter::ALL, degree, 2 * k as usize)
        .into_iter()
        .filter(|w| w.count_b_type() == 1)
        .map(|w| cyclic_reduce(&free_d(&NCPoly::word(w))))
        .filter(|g| !g.is_empty())
        .collect();
    Ok(in_span(&diff, &generators))
}

/// Renders a class combination as `c1 * w1 + c2 * w2 + ...` in canonical
/// word order; the zero combination renders as `0`.
pub fn format_functional(combo: &CyclicCombo) -> String {
    if combo.is_empty() {
        return "0".to_string();
    }
    combo
        .iter()
        .map(|(w, c)| format!("{c} * {w}"))
        .collect::<Vec<_>>()
        .join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn word(ls: &[Letter]) -> NCWord {
        NCWord::new(ls)
    }

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn rotation_moves_the_head_with_a_trace_sign() {
        let ba = word(&[Letter::B, Letter::A]);
        let (rot, sign) = rotate_once(&ba);
        assert_eq!(rot, word(&[Letter::A, Letter::B]));
        assert_eq!(sign, s(-1));
        let ada = word(&[Letter::A, Letter::Da]);
        let (rot, sign) = rotate_once(&ada);
        assert_eq!(rot, word(&[Letter::Da, Letter::A]));
        assert_eq!(sign, s(1));
    }

    #[test]
    fn odd_squares_are_self_annihilating() {
        let aa = word(&[Letter::A, Letter::A]);
        assert_eq!(canonical_rotation(&aa), None);
        assert!(cyclic_reduce(&NCPoly::word(aa)).is_empty());
        // A commutator collapses: ba = -ab in the cyclic quotient.
        let combo = cyclic_reduce(&NCPoly::word(word(&[Letter::B, Letter::A])));
        assert_eq!(combo.len(), 1);
        assert_eq!(combo.get(&word(&[Letter::A, Letter::B])), Some(&s(-1)));
    }

    #[test]
    fn exact_cube_class() {
        // d(a³) reduces to 3 times the class of a·a·da.
        let a = NCPoly::letter(Letter::A);
        let cube = a.mul(&a).mul(&a);
        let combo = cyclic_reduce(&free_d(&cube));
        assert_eq!(combo.len(), 1);
        assert_eq!(
            combo.get(&word(&[Letter::A, Letter::A, Letter::Da])),
            Some(&s(3))
        );
    }

    #[test]
    fn functional_strings_for_small_weights() {
        assert_eq!(
            format_functional(&cs_functional(1).unwrap()),
            "1 * a·da + 2/3 * a·a·a"
        );
        assert_eq!(
            format_functional(&cs_functional(2).unwrap()),
            "4/3 * a·da·da + 2 * a·a·a·da + 4/5 * a·a·a·a·a"
        );
        assert_eq!(
            format_functional(&cs_functional(3).unwrap()),
            "3/2 * a·da·da·da + 12/5 * a·a·a·da·da + 6/5 * a·a·da·a·da \
             + 3 * a·a·a·a·a·da + 6/7 * a·a·a·a·a·a·a"
        );
        assert!(cs_functional(0).is_err());
    }

    #[test]
    fn variation_matches_the_critical_equation() {
        for k in 1..=3 {
            assert!(variational_check(k).unwrap(), "k = {k}");
        }
    }

    #[test]
    fn word_enumeration_by_degree() {
        // Degree 2 over all letters: da, db, and the nine two-letter
        // products of degree-1 letters restricted to {a, b}: aa, ab, ba, bb.
        let words = enumerate_words(&Letter::ALL, 2, 2);
        assert_eq!(words.len(), 6);
        assert!(words.contains(&word(&[Letter::Da])));
        assert!(words.contains(&word(&[Letter::A, Letter::B])));
        // Length cap respected.
        let capped = enumerate_words(&Letter::ALL, 4, 2);
        assert!(capped.iter().all(|w| w.len() <= 2));
    }

    fn arb_word() -> impl Strategy<Value = NCWord> {
        proptest::collection::vec(0usize..4, 1..6).prop_map(|v| {
            NCWord::new(v.into_iter().map(|i| Letter::ALL[i]).collect::<Vec<_>>())
        })
    }

    proptest! {
        #[test]
        fn reduction_is_rotation_invariant(w in arb_word()) {
            let (rot, sign) = rotate_once(&w);
            let direct = cyclic_reduce(&NCPoly::word(w));
            let rotated = cyclic_reduce(&NCPoly::word(rot).scale(&sign));
            prop_assert_eq!(direct, rotated);
        }

        #[test]
        fn reduction_is_idempotent(w in arb_word()) {
            let once = cyclic_reduce(&NCPoly::word(w));
            let mut as_poly = NCPoly::zero();
            for (cw, c) in &once {
                as_poly.add_term(cw, c);
            }
            prop_assert_eq!(cyclic_reduce(&as_poly), once);
        }
    }
}

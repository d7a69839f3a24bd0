//! Expansion of `(d+e)^n` for two degree-1 operators into multi-index
//! terms `c(s,n) e^(s) d^(N(s))`, and everything built on it:
//! Maurer-Cartan residuals with the order filter, the closed forms
//! available when `d^2 = 0`, inner derivations of an algebra,
//! deformations of a differential over ℚ[t]/(t^m), and the antisymmetric
//! pairing sum governing fourth powers.
//!
//! Here `e^(s) = e^(s_1) ∘ ... ∘ e^(s_k)` with `e^(l)` the l-fold graded
//! commutator of `e` with `d`, and `N(s) = n - |s| - l(s)` is the
//! leftover exponent of `d`.

use std::collections::BTreeMap;
use std::sync::{OnceLock, RwLock};

use crate::error::{CoreError, Result};
use crate::graded::{Element, GradedMap};
use crate::matrix::Matrix;
use crate::multiindex::{enumerate_admissible, MultiIndex};
use crate::ncomplex::nilpotency_order;
use crate::ndga::NDga;
use crate::ring::{sign, Ring};
use crate::scalar::Scalar;
use crate::truncated::{TruncPoly, TruncatedRing};

/// Memoized table of the expansion coefficients `c(s,n)`.
///
/// Level n is computed from level n-1 by the recurrence
/// `c(s,n) = δ₁(s)·c(s₂..,n-1) + (-1)^{|s|+l(s)}·c(s,n-1)
///          + Σ_i η_i(s)·(-1)^{|s_{<i}|+i}·c(s-e_i,n-1)`
/// (0-based i), with `c((),0) = 1` and zero outside the admissible set.
pub struct CoeffTable {
    levels: RwLock<Vec<BTreeMap<MultiIndex, Scalar>>>,
}

impl CoeffTable {
    pub fn new() -> Self {
        let base = BTreeMap::from([(MultiIndex::empty(), Scalar::one())]);
        CoeffTable { levels: RwLock::new(vec![base]) }
    }

    pub fn c(&self, s: &MultiIndex, n: u32) -> Scalar {
        if !s.admissible(n) {
            return Scalar::zero();
        }
        self.ensure(n);
        let levels = self.levels.read().unwrap();
        levels[n as usize].get(s).cloned().unwrap_or_else(Scalar::zero)
    }

    fn ensure(&self, n: u32) {
        if self.levels.read().unwrap().len() > n as usize {
            return;
        }
        let mut levels = self.levels.write().unwrap();
        while levels.len() <= n as usize {
            let k = levels.len() as u32;
            let table = {
                let prev = levels.last().unwrap();
                let look = |idx: &MultiIndex| -> Scalar {
                    prev.get(idx).cloned().unwrap_or_else(Scalar::zero)
                };
                let mut table = BTreeMap::new();
                for s in enumerate_admissible(k) {
                    let mut value = Scalar::zero();
                    if s.delta() == 1 {
                        value = value.add(&look(&s.tail()));
                    }
                    let middle: Scalar =
                        sign(i64::from(s.weight()) + s.len() as i64);
                    value = value.add(&middle.mul(&look(&s)));
                    for i in 0..s.len() {
                        if let Some(lower) = s.minus_unit(i) {
                            let sg: Scalar =
                                sign(i64::from(s.prefix_weight(i)) + i as i64);
                            value = value.add(&sg.mul(&look(&lower)));
                        }
                    }
                    if !value.is_zero() {
                        table.insert(s, value);
                    }
                }
                table
            };
            levels.push(table);
        }
    }
}

impl Default for CoeffTable {
    fn default() -> Self {
        CoeffTable::new()
    }
}

static GLOBAL_TABLE: OnceLock<CoeffTable> = OnceLock::new();

/// `c(s,n)` from a process-wide memoized table.
pub fn c_coeff(s: &MultiIndex, n: u32) -> Scalar {
    GLOBAL_TABLE.get_or_init(CoeffTable::new).c(s, n)
}

fn check_degree_one_pair<R: Ring>(d: &GradedMap<R>, e: &GradedMap<R>) -> Result<()> {
    if !d.is_endomorphism() || !e.is_endomorphism() || **d.source() != **e.source() {
        return Err(CoreError::SpaceMismatch(
            "expansion needs two endomorphisms of one space".into(),
        ));
    }
    if d.degree() != 1 || e.degree() != 1 {
        return Err(CoreError::Argument(format!(
            "expansion needs degree-1 maps, got degrees {} and {}",
            d.degree(),
            e.degree()
        )));
    }
    Ok(())
}

/// `e^(s) = e^(s_1) ∘ ... ∘ e^(s_k)` where `e^(l)` iterates the graded
/// commutator with `d`. The empty index gives the identity.
pub fn e_power<R: Ring>(
    d: &GradedMap<R>,
    e: &GradedMap<R>,
    s: &MultiIndex,
) -> Result<GradedMap<R>> {
    check_degree_one_pair(d, e)?;
    let mut acc = GradedMap::identity(d.source().clone());
    for i in 0..s.len() {
        let mut factor = e.clone();
        for _ in 0..s.get(i) {
            factor = d.d_end(&factor)?;
        }
        acc = acc.compose(&factor)?;
    }
    Ok(acc)
}

/// The expansion `(d+e)^n = Σ_s c(s,n) e^(s) d^(N(s))`: the surviving
/// terms in canonical order and their assembled operator sum.
///
/// With `filter = Some(M)`, terms with any `s_i >= M` are dropped; the
/// filtered sum is the order-(M,n) Maurer-Cartan operator.
pub struct McExpansion<R: Ring> {
    n: u32,
    filter: Option<u32>,
    terms: Vec<(MultiIndex, Scalar)>,
    operator: GradedMap<R>,
}

impl<R: Ring> McExpansion<R> {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn filter(&self) -> Option<u32> {
        self.filter
    }

    /// Surviving `(s, c(s,n))` pairs, by length then lexicographic order.
    pub fn terms(&self) -> &[(MultiIndex, Scalar)] {
        &self.terms
    }

    pub fn operator(&self) -> &GradedMap<R> {
        &self.operator
    }

    /// The exponent of `d` attached to a term.
    pub fn dpow(&self, s: &MultiIndex) -> u32 {
        s.leftover(self.n)
    }
}

/// Expands `(d+e)^n` into multi-index terms. Zero coefficients are
/// suppressed; `m_filter = Some(M)` additionally drops every term with
/// some `s_i >= M`.
pub fn dn_expansion<R: Ring>(
    d: &GradedMap<R>,
    e: &GradedMap<R>,
    n: u32,
    m_filter: Option<u32>,
) -> Result<McExpansion<R>> {
    check_degree_one_pair(d, e)?;
    if m_filter == Some(0) {
        return Err(CoreError::Argument(
            "filter order M must be at least 1".into(),
        ));
    }
    // d_end_powers[l] = e^(l); admissible parts stay below n.
    let mut d_end_powers: Vec<GradedMap<R>> = vec![e.clone()];
    for l in 0..n as usize {
        let next = d.d_end(&d_end_powers[l])?;
        d_end_powers.push(next);
    }
    let mut terms = Vec::new();
    let mut operator =
        GradedMap::zero(d.source().clone(), d.source().clone(), i64::from(n));
    for s in enumerate_admissible(n) {
        if let Some(m) = m_filter {
            if s.parts().iter().any(|&p| p >= m) {
                continue;
            }
        }
        let c = c_coeff(&s, n);
        if c.is_zero() {
            continue;
        }
        let mut op = GradedMap::identity(d.source().clone());
        for i in 0..s.len() {
            op = op.compose(&d_end_powers[s.get(i) as usize])?;
        }
        op = op.compose(&d.power(s.leftover(n))?)?;
        operator = operator.add(&op.scale(&R::from_scalar(&c)))?;
        terms.push((s, c));
    }
    Ok(McExpansion { n, filter: m_filter, terms, operator })
}

/// The order-(M,N) Maurer-Cartan operator
/// `Σ_{s: s_i < M} c(s,N) e^(s) d^(N(s))`; `e` satisfies the equation
/// exactly when this is zero. Requires `d^M = 0`.
pub fn mc_residual<R: Ring>(
    d: &GradedMap<R>,
    e: &GradedMap<R>,
    m: u32,
    n: u32,
) -> Result<GradedMap<R>> {
    if m == 0 || n < m {
        return Err(CoreError::Argument(
            "orders must satisfy N >= M >= 1".into(),
        ));
    }
    if !d.power(m)?.is_zero() {
        return Err(CoreError::Precondition(format!(
            "d^{m} != 0, so the order-{m} filter does not apply"
        )));
    }
    Ok(dn_expansion(d, e, n, Some(m))?.operator)
}

/// Closed form of `(d+e)^n` when `d^2 = 0`: with `F = d_End(e) + e^2`,
/// the power is `F^(n/2)` for even n and `F^((n-1)/2) ∘ (d+e)` for odd n.
/// The precondition `d^2 = 0` is not checked here; callers compare
/// against [`dn_expansion`] to certify it.
pub fn mc_closed_form<R: Ring>(
    d: &GradedMap<R>,
    e: &GradedMap<R>,
    n: u32,
) -> Result<GradedMap<R>> {
    check_degree_one_pair(d, e)?;
    let f = d.d_end(e)?.add(&e.compose(e)?)?;
    if n % 2 == 0 {
        f.power(n / 2)
    } else {
        f.power(n / 2)?.compose(&d.add(e)?)
    }
}

/// The inner derivation `e_a(b) = a·b - (-1)^{deg b} b·a` of a degree-1
/// element, as a graded map. The zero element gives the zero map. The
/// derivation property is re-checked on all basis pairs; a failure means
/// the algebra's product data is inconsistent.
pub fn inner_derivation(algebra: &NDga, a: &Element<Scalar>) -> Result<GradedMap<Scalar>> {
    let space = algebra.space().clone();
    if a.is_zero() {
        return Ok(GradedMap::zero(space.clone(), space, 1));
    }
    let deg = a.degree(algebra.space())?.expect("nonzero element");
    if deg != 1 {
        return Err(CoreError::Argument(format!(
            "inner derivations need a degree-1 element, got degree {deg}"
        )));
    }
    let mut map = GradedMap::zero(space.clone(), space.clone(), 1);
    for b_deg in space.degrees() {
        for b in space.labels(b_deg) {
            let eb = Element::basis(b.clone());
            let left = algebra.mul(a, &eb)?;
            let right = algebra.mul(&eb, a)?.scale(&sign(b_deg));
            for (t, c) in left.sub(&right).iter() {
                map.add_entry(b, t, c)?;
            }
        }
    }
    for b_deg in space.degrees() {
        for b in space.labels(b_deg) {
            for c_deg in space.degrees() {
                for c in space.labels(c_deg) {
                    let eb = Element::basis(b.clone());
                    let ec = Element::basis(c.clone());
                    let product = algebra.mul(&eb, &ec)?;
                    let lhs = map.apply(&product)?;
                    let rhs = algebra
                        .mul(&map.apply(&eb)?, &ec)?
                        .add(&algebra.mul(&eb, &map.apply(&ec)?)?.scale(&sign(b_deg)));
                    if lhs != rhs {
                        return Err(CoreError::Structural(format!(
                            "product data is not a graded algebra: \
                             the commutator with the given element fails \
                             the derivation rule on ({b}, {c})"
                        )));
                    }
                }
            }
        }
    }
    Ok(map)
}

/// A differential deformed over ℚ[t]/(t^m): `D = d + e` with `e ≡ 0 mod t`.
pub struct Deformation {
    /// The deformed differential with truncated-polynomial entries.
    pub d: GradedMap<TruncPoly>,
    /// The base differential `D mod t`.
    pub base: GradedMap<Scalar>,
    /// The guaranteed nilpotency bound `m·M`.
    pub bound: u32,
    /// The exact smallest `n` with `D^n = 0`.
    pub realized_order: u32,
}

/// Deforms a degree-1 differential with `base^M = 0` by a perturbation
/// whose entries all lie in the maximal ideal `tR`. Such a deformation
/// always satisfies `D^{mM} = 0` over ℚ[t]/(t^m): a word of that length
/// either holds `m` perturbation factors (killed by `t^m = 0`) or
/// contains a run of `M` consecutive base factors.
pub fn deform(
    base: &GradedMap<Scalar>,
    e: &GradedMap<TruncPoly>,
    ring: &TruncatedRing,
    base_order: u32,
) -> Result<Deformation> {
    if base_order == 0 {
        return Err(CoreError::Argument("base order M must be at least 1".into()));
    }
    if !base.is_endomorphism() || !e.is_endomorphism() {
        return Err(CoreError::SpaceMismatch(
            "deformation needs endomorphisms".into(),
        ));
    }
    if **base.source() != **e.source() {
        return Err(CoreError::SpaceMismatch(
            "perturbation lives on a different space than the base".into(),
        ));
    }
    if base.degree() != 1 || e.degree() != 1 {
        return Err(CoreError::Argument(
            "deformation needs degree-1 maps".into(),
        ));
    }
    if !base.power(base_order)?.is_zero() {
        return Err(CoreError::Precondition(format!(
            "base differential does not satisfy d^{base_order} = 0"
        )));
    }
    for (src, tgt, c) in e.entries() {
        if !ring.in_max_ideal(&c) {
            return Err(CoreError::Structural(format!(
                "perturbation entry `{src}` -> `{tgt}` has a nonzero \
                 constant term"
            )));
        }
    }
    let lifted = base.map_coeffs(|s| ring.embed(s));
    let d = lifted.add(e)?;
    let bound = base_order * ring.order() as u32;
    let realized_order = nilpotency_order(&d, bound)?
        .expect("a max-ideal deformation is nilpotent within m*M");
    Ok(Deformation { d, base: base.clone(), bound, realized_order })
}

/// The alternating pairing sum of an antisymmetric matrix `F` of even
/// dimension: pair index 0 with each remaining index `b` (at position k
/// among the survivors, signed `(-1)^{k-1}`) and recurse on the rest.
/// For dimension 4 this is `F01·F23 - F02·F13 + F03·F12`.
pub fn pairing_sum(f: &Matrix<Scalar>) -> Result<Scalar> {
    let n = f.rows();
    if f.cols() != n {
        return Err(CoreError::Argument(format!(
            "pairing needs a square matrix, got {}x{}",
            f.rows(),
            f.cols()
        )));
    }
    if n % 2 != 0 {
        return Err(CoreError::Argument(format!(
            "pairing needs an even dimension, got {n}"
        )));
    }
    for i in 0..n {
        for j in 0..n {
            if *f.get(i, j) != f.get(j, i).neg() {
                return Err(CoreError::Argument(format!(
                    "matrix is not antisymmetric at ({i}, {j})"
                )));
            }
        }
    }
    let indices: Vec<usize> = (0..n).collect();
    Ok(pair_recurse(f, &indices))
}

fn pair_recurse(f: &Matrix<Scalar>, idx: &[usize]) -> Scalar {
    if idx.is_empty() {
        return Scalar::one();
    }
    let a = idx[0];
    let mut total = Scalar::zero();
    for k in 1..idx.len() {
        let b = idx[k];
        let rest: Vec<usize> =
            idx.iter().copied().filter(|&x| x != a && x != b).collect();
        let term = f.get(a, b).mul(&pair_recurse(f, &rest));
        total = if k % 2 == 1 { total.add(&term) } else { total.sub(&term) };
    }
    total
}

/// Largest absolute value among all entries of a map; zero for the zero
/// map.
pub fn max_abs_entry(f: &GradedMap<Scalar>) -> Scalar {
    let mut best = Scalar::zero();
    for (_, _, c) in f.entries() {
        let a = c.abs();
        if best < a {
            best = a;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::GradedSpace;
    use std::sync::Arc;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn chain(m: usize) -> (Arc<GradedSpace>, GradedMap<Scalar>) {
        let space = GradedSpace::from_labels(
            (1..=m).map(|k| (format!("e{k}"), k as i64 - 1)),
        )
        .unwrap();
        let entries: Vec<(String, String, Scalar)> = (1..m)
            .map(|k| (format!("e{k}"), format!("e{}", k + 1), s(1)))
            .collect();
        let d = GradedMap::from_entries(space.clone(), space.clone(), 1, entries)
            .unwrap();
        (space, d)
    }

    #[test]
    fn coefficient_base_values() {
        let zero = MultiIndex::empty();
        for n in 0..=6 {
            assert_eq!(c_coeff(&zero, n), s(1), "c((), {n})");
        }
        assert_eq!(c_coeff(&MultiIndex::new([0]), 1), s(1));
        assert_eq!(c_coeff(&MultiIndex::new([0]), 2), s(0));
        assert_eq!(c_coeff(&MultiIndex::new([1]), 2), s(1));
        assert_eq!(c_coeff(&MultiIndex::new([0, 0]), 2), s(1));
        // Outside the admissible set everything vanishes.
        assert_eq!(c_coeff(&MultiIndex::new([5]), 2), s(0));
    }

    #[test]
    fn expansion_reproduces_the_square() {
        // (d+e)^2 = d^2 + e^(1) + e e with coefficients 1, 1, 1 and the
        // (0) term suppressed since c((0),2) = 0.
        let (_, d) = chain(4);
        let e = d.scale(&s(3));
        let exp = dn_expansion(&d, &e, 2, None).unwrap();
        let indices: Vec<String> =
            exp.terms().iter().map(|(s, _)| s.to_string()).collect();
        assert_eq!(indices, vec!["()", "(1)", "(0,0)"]);
        assert_eq!(*exp.operator(), d.add(&e).unwrap().power(2).unwrap());
    }

    #[test]
    fn expansion_is_exact_for_generic_maps() {
        let (space, d) = chain(5);
        let entries: Vec<(String, String, Scalar)> = (1..5)
            .map(|k| (format!("e{k}"), format!("e{}", k + 1), s(k as i64 + 1)))
            .collect();
        let e = GradedMap::from_entries(space.clone(), space.clone(), 1, entries)
            .unwrap();
        let de = d.add(&e).unwrap();
        for n in 0..=6 {
            let exp = dn_expansion(&d, &e, n, None).unwrap();
            assert_eq!(*exp.operator(), de.power(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn e_power_multiplies_factors_in_order() {
        let (_, d) = chain(4);
        let e = d.scale(&s(2));
        let s_idx = MultiIndex::new([1, 0]);
        let direct = e_power(&d, &e, &s_idx).unwrap();
        let expected = d.d_end(&e).unwrap().compose(&e).unwrap();
        assert_eq!(direct, expected);
        assert_eq!(
            e_power(&d, &e, &MultiIndex::empty()).unwrap(),
            GradedMap::identity(d.source().clone())
        );
    }

    #[test]
    fn closed_form_matches_expansion_on_a_square_zero_base() {
        // Two strands of length 7 with d pairing even steps only, so
        // d^2 = 0, and a perturbation weaving the strands together.
        let labels: Vec<(String, i64)> = (0..7)
            .flat_map(|k| [(format!("a{k}"), k), (format!("b{k}"), k)])
            .collect();
        let space = GradedSpace::from_labels(labels).unwrap();
        let mut d_entries = Vec::new();
        let mut e_entries = Vec::new();
        for k in 0..6 {
            if k % 2 == 0 {
                d_entries.push((format!("a{k}"), format!("a{}", k + 1), s(1)));
                d_entries.push((format!("b{k}"), format!("b{}", k + 1), s(-1)));
            }
            e_entries.push((format!("a{k}"), format!("b{}", k + 1), s(k as i64 + 2)));
            e_entries.push((format!("b{k}"), format!("a{}", k + 1), s(-(k as i64) - 1)));
        }
        let d = GradedMap::from_entries(space.clone(), space.clone(), 1, d_entries)
            .unwrap();
        let e = GradedMap::from_entries(space.clone(), space.clone(), 1, e_entries)
            .unwrap();
        assert!(d.power(2).unwrap().is_zero());
        let de = d.add(&e).unwrap();
        for n in 2..=6 {
            let closed = mc_closed_form(&d, &e, n).unwrap();
            let full = dn_expansion(&d, &e, n, None).unwrap();
            assert_eq!(closed, *full.operator(), "closed form at n = {n}");
            assert_eq!(closed, de.power(n).unwrap(), "direct power at n = {n}");
        }
    }

    #[test]
    fn residual_requires_the_filter_order() {
        let (space, d) = chain(3);
        let e = GradedMap::zero(space.clone(), space.clone(), 1);
        // d^2 != 0 on the 3-chain, so the order-2 filter is refused.
        assert!(matches!(
            mc_residual(&d, &e, 2, 3),
            Err(CoreError::Precondition(_))
        ));
        // With e = 0 the residual is d^n = 0.
        let r = mc_residual(&d, &e, 3, 3).unwrap();
        assert!(r.is_zero());
        assert!(mc_residual(&d, &e, 0, 3).is_err());
        assert!(mc_residual(&d, &e, 3, 2).is_err());
    }

    #[test]
    fn pairing_of_a_four_matrix() {
        let rows = vec![
            vec![s(0), s(1), s(2), s(3)],
            vec![s(-1), s(0), s(4), s(5)],
            vec![s(-2), s(-4), s(0), s(6)],
            vec![s(-3), s(-5), s(-6), s(0)],
        ];
        let f = Matrix::from_rows(rows);
        // F01 F23 - F02 F13 + F03 F12 = 6 - 10 + 12.
        assert_eq!(pairing_sum(&f).unwrap(), s(8));
    }

    #[test]
    fn pairing_rejects_bad_shapes() {
        assert!(pairing_sum(&Matrix::zero(2, 3)).is_err());
        assert!(pairing_sum(&Matrix::zero(3, 3)).is_err());
        let mut bad = Matrix::zero(2, 2);
        bad.set(0, 1, s(1));
        bad.set(1, 0, s(1));
        assert!(pairing_sum(&bad).is_err());
        assert_eq!(pairing_sum(&Matrix::zero(0, 0)).unwrap(), s(1));
        assert_eq!(pairing_sum(&Matrix::zero(2, 2)).unwrap(), s(0));
    }

    #[test]
    fn deformation_raises_the_order_within_bound() {
        // Base d = 0 (order 1); perturb by t times the 3-chain map. The
        // square t^2 d^2 survives in ℚ[t]/(t^3), so the realized order
        // is 3 = bound.
        let (space, step) = chain(3);
        let ring = TruncatedRing::new(3);
        let zero_d = GradedMap::zero(space.clone(), space.clone(), 1);
        let e = step.map_coeffs(|c| ring.element(&[Scalar::zero(), c.clone()]));
        let def = deform(&zero_d, &e, &ring, 1).unwrap();
        assert_eq!(def.bound, 3);
        assert_eq!(def.realized_order, 3);
        assert!(!def.d.power(2).unwrap().is_zero());
    }

    #[test]
    fn deformation_rejects_constant_terms() {
        let (space, step) = chain(2);
        let ring = TruncatedRing::new(2);
        let e = step.map_coeffs(|c| ring.embed(c));
        let zero_d = GradedMap::zero(space.clone(), space.clone(), 1);
        assert!(matches!(
            deform(&zero_d, &e, &ring, 1),
            Err(CoreError::Structural(_))
        ));
    }

    #[test]
    fn inner_derivation_on_a_square_generator() {
        // Algebra 1, x, y with x^2 = y in degrees 0, 1, 2.
        let space =
            GradedSpace::from_labels([("1", 0), ("x", 1), ("y", 2)]).unwrap();
        let d = GradedMap::zero(space.clone(), space.clone(), 1);
        let mut product = BTreeMap::new();
        for l in ["1", "x", "y"] {
            product.insert(("1".to_string(), l.to_string()), Element::basis(l));
            if l != "1" {
                product.insert((l.to_string(), "1".to_string()), Element::basis(l));
            }
        }
        product.insert(("x".into(), "x".into()), Element::basis("y"));
        let algebra =
            NDga::new(space, d, 1, product, Some("1".into())).unwrap();
        assert!(algebra.verify().is_valid());

        let e = inner_derivation(&algebra, &Element::basis("x")).unwrap();
        // e_x(1) = x - x = 0, e_x(x) = x^2 + x^2 = 2y, e_x(y) = 0.
        assert!(e.apply(&Element::basis("1")).unwrap().is_zero());
        assert_eq!(
            e.apply(&Element::basis("x")).unwrap(),
            Element::from_terms([("y", s(2))])
        );
        assert!(e.apply(&Element::basis("y")).unwrap().is_zero());

        let bad = inner_derivation(&algebra, &Element::basis("y"));
        assert!(matches!(bad, Err(CoreError::Argument(_))));
        let zero = inner_derivation(&algebra, &Element::zero()).unwrap();
        assert!(zero.is_zero());
    }
}

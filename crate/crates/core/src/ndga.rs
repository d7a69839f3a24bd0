//! N-differential graded algebras: structure-constant products over a
//! graded space, axiom verification with named offenders, graded-binomial
//! Leibniz powers, tensor products, endomorphism algebras, and graded
//! modules over an algebra.
//!
//! Construction is structural only (labels must exist); the mathematical
//! axioms are checked by [`NDga::verify`], which returns a report instead
//! of failing, so invalid input can be described to the user.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{CoreError, Result};
use crate::graded::{Element, GradedMap, GradedSpace};
use crate::ncomplex::NComplex;
use crate::ring::{sign, Ring};
use crate::scalar::Scalar;

/// A graded algebra with a candidate N-differential. The product maps a
/// pair of basis labels to a linear combination; absent pairs multiply
/// to zero.
#[derive(Clone, Debug)]
pub struct NDga {
    space: Arc<GradedSpace>,
    d: GradedMap<Scalar>,
    order: u32,
    product: BTreeMap<(String, String), Element<Scalar>>,
    unit: Option<String>,
}

impl NDga {
    pub fn new(
        space: Arc<GradedSpace>,
        d: GradedMap<Scalar>,
        order: u32,
        product: BTreeMap<(String, String), Element<Scalar>>,
        unit: Option<String>,
    ) -> Result<Self> {
        if order == 0 {
            return Err(CoreError::Argument("order N must be at least 1".into()));
        }
        if !d.is_endomorphism() || **d.source() != *space {
            return Err(CoreError::Structural(
                "differential must be an endomorphism of the algebra space".into(),
            ));
        }
        if d.degree() != 1 {
            return Err(CoreError::Structural(format!(
                "differential must have degree 1, got {}",
                d.degree()
            )));
        }
        for ((a, b), value) in &product {
            for label in [a, b] {
                if !space.contains(label) {
                    return Err(CoreError::Structural(format!(
                        "product entry references unknown label `{label}`"
                    )));
                }
            }
            for (label, _) in value.iter() {
                if !space.contains(label) {
                    return Err(CoreError::Structural(format!(
                        "product of `{a}`·`{b}` references unknown label `{label}`"
                    )));
                }
            }
        }
        if let Some(u) = &unit {
            if !space.contains(u) {
                return Err(CoreError::Structural(format!(
                    "unit label `{u}` is not in the space"
                )));
            }
        }
        Ok(NDga { space, d, order, product, unit })
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        &self.space
    }

    pub fn d(&self) -> &GradedMap<Scalar> {
        &self.d
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn unit(&self) -> Option<&str> {
        self.unit.as_deref()
    }

    /// Product of two basis labels (zero if no entry is stored).
    pub fn product_of(&self, a: &str, b: &str) -> Element<Scalar> {
        self.product
            .get(&(a.to_string(), b.to_string()))
            .cloned()
            .unwrap_or_else(Element::zero)
    }

    /// Stored product entries, sorted by label pair.
    pub fn products(&self) -> impl Iterator<Item = (&(String, String), &Element<Scalar>)> {
        self.product.iter()
    }

    /// Bilinear extension of the product.
    pub fn mul(&self, x: &Element<Scalar>, y: &Element<Scalar>) -> Result<Element<Scalar>> {
        let mut out = Element::zero();
        for (a, ca) in x.iter() {
            if !self.space.contains(a) {
                return Err(CoreError::Argument(format!("unknown label `{a}`")));
            }
            for (b, cb) in y.iter() {
                if !self.space.contains(b) {
                    return Err(CoreError::Argument(format!("unknown label `{b}`")));
                }
                let prod = self.product_of(a, b).scale(&ca.mul(cb));
                out = out.add(&prod);
            }
        }
        Ok(out)
    }

    /// The operator `x ↦ a·x`; homogeneous `a` gives a homogeneous map.
    pub fn left_multiplication(&self, a: &Element<Scalar>) -> Result<GradedMap<Scalar>> {
        let degree = a
            .degree(&self.space)?
            .ok_or_else(|| CoreError::Argument("zero element has no degree".into()))?;
        let mut map = GradedMap::zero(self.space.clone(), self.space.clone(), degree);
        for b_deg in self.space.degrees() {
            for b in self.space.labels(b_deg) {
                let image = self.mul(a, &Element::basis(b.clone()))?;
                for (t, c) in image.iter() {
                    map.add_entry(b, t, c)?;
                }
            }
        }
        Ok(map)
    }

    /// The verified underlying N-complex (errors if `d^N != 0`).
    pub fn complex(&self) -> Result<NComplex> {
        NComplex::new(self.space.clone(), self.d.clone(), self.order)
    }

    /// Full axiom check: degree additivity, associativity on all basis
    /// triples, the graded Leibniz rule on all basis pairs, unit laws if a
    /// unit is declared, and `d^N = 0`. Every violation is reported with
    /// the offending labels.
    pub fn verify(&self) -> AxiomReport {
        let mut report = self.verify_pairwise();
        let labels: Vec<&String> = self.space.all_labels().collect();
        for a in &labels {
            for b in &labels {
                for c in &labels {
                    if !self.associative_on(a, b, c) {
                        report.violations.push(AxiomViolation::Associativity {
                            a: (*a).clone(),
                            b: (*b).clone(),
                            c: (*c).clone(),
                        });
                    }
                }
            }
        }
        report
    }

    /// Everything in [`NDga::verify`] except the cubic associativity
    /// sweep, for spaces large enough that all-triples checking is not
    /// worth its cost and associativity is guaranteed by how the product
    /// was constructed.
    pub fn verify_pairwise(&self) -> AxiomReport {
        let mut violations = Vec::new();
        let labels: Vec<&String> = self.space.all_labels().collect();

        for ((a, b), value) in &self.product {
            let expected = self.space.position(a).map(|(d, _)| d).unwrap_or(0)
                + self.space.position(b).map(|(d, _)| d).unwrap_or(0);
            for (t, _) in value.iter() {
                if let Some((found, _)) = self.space.position(t) {
                    if found != expected {
                        violations.push(AxiomViolation::DegreeAdditivity {
                            a: a.clone(),
                            b: b.clone(),
                            target: t.clone(),
                            expected,
                            found,
                        });
                    }
                }
            }
        }

        for a in &labels {
            for b in &labels {
                if let Err(detail) = self.leibniz_on(a, b) {
                    violations.push(AxiomViolation::Leibniz {
                        a: (*a).clone(),
                        b: (*b).clone(),
                        detail,
                    });
                }
            }
        }

        if let Some(u) = &self.unit {
            match self.space.degree_of(u) {
                Ok(0) => {}
                _ => violations.push(AxiomViolation::Unit {
                    label: u.clone(),
                    detail: "unit must live in degree 0".into(),
                }),
            }
            for a in &labels {
                let left = self.product_of(u, a);
                let right = self.product_of(a, u);
                let expected = Element::basis((*a).clone());
                if left != expected {
                    violations.push(AxiomViolation::Unit {
                        label: (*a).clone(),
                        detail: format!("{u}·{a} != {a}"),
                    });
                }
                if right != expected {
                    violations.push(AxiomViolation::Unit {
                        label: (*a).clone(),
                        detail: format!("{a}·{u} != {a}"),
                    });
                }
            }
        }

        match self.d.power(self.order) {
            Ok(p) if p.is_zero() => {}
            _ => violations.push(AxiomViolation::Nilpotency { order: self.order }),
        }

        AxiomReport { violations }
    }

    fn associative_on(&self, a: &str, b: &str, c: &str) -> bool {
        let ab = self.product_of(a, b);
        let bc = self.product_of(b, c);
        let left = self.mul(&ab, &Element::basis(c.to_string()));
        let right = self.mul(&Element::basis(a.to_string()), &bc);
        matches!((left, right), (Ok(l), Ok(r)) if l == r)
    }

    fn leibniz_on(&self, a: &str, b: &str) -> std::result::Result<(), String> {
        let ea = Element::<Scalar>::basis(a.to_string());
        let eb = Element::basis(b.to_string());
        let deg_a = match self.space.degree_of(a) {
            Ok(d) => d,
            Err(_) => return Err("unknown label".into()),
        };
        let compute = || -> Result<(Element<Scalar>, Element<Scalar>)> {
            let lhs = self.d.apply(&self.mul(&ea, &eb)?)?;
            let da_b = self.mul(&self.d.apply(&ea)?, &eb)?;
            let a_db = self.mul(&ea, &self.d.apply(&eb)?)?.scale(&sign(deg_a));
            Ok((lhs, da_b.add(&a_db)))
        };
        match compute() {
            Ok((lhs, rhs)) if lhs == rhs => Ok(()),
            Ok((lhs, rhs)) => Err(format!("d({a}·{b}) = {lhs}, Leibniz side = {rhs}")),
            Err(e) => Err(e.to_string()),
        }
    }
}

/// One violated axiom with the basis labels that witness it.
#[derive(Clone, Debug, PartialEq)]
pub enum AxiomViolation {
    DegreeAdditivity { a: String, b: String, target: String, expected: i64, found: i64 },
    Associativity { a: String, b: String, c: String },
    Leibniz { a: String, b: String, detail: String },
    Unit { label: String, detail: String },
    Nilpotency { order: u32 },
    ActionDegree { a: String, m: String, target: String, expected: i64, found: i64 },
    ActionAssociativity { a: String, b: String, m: String },
    ModuleLeibniz { a: String, m: String, detail: String },
    ModuleNilpotency { order: u32 },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::DegreeAdditivity { a, b, target, expected, found } => write!(
                f,
                "degree additivity fails: {a}·{b} hits `{target}` of degree {found}, expected {expected}"
            ),
            AxiomViolation::Associativity { a, b, c } => {
                write!(f, "associativity fails on ({a}, {b}, {c})")
            }
            AxiomViolation::Leibniz { a, b, detail } => {
                write!(f, "Leibniz rule fails on ({a}, {b}): {detail}")
            }
            AxiomViolation::Unit { label, detail } => {
                write!(f, "unit law fails at `{label}`: {detail}")
            }
            AxiomViolation::Nilpotency { order } => write!(f, "d^{order} != 0"),
            AxiomViolation::ActionDegree { a, m, target, expected, found } => write!(
                f,
                "action degree fails: {a}·{m} hits `{target}` of degree {found}, expected {expected}"
            ),
            AxiomViolation::ActionAssociativity { a, b, m } => {
                write!(f, "action associativity fails on ({a}, {b}, {m})")
            }
            AxiomViolation::ModuleLeibniz { a, m, detail } => {
                write!(f, "module Leibniz rule fails on ({a}, {m}): {detail}")
            }
            AxiomViolation::ModuleNilpotency { order } => {
                write!(f, "module differential: d^{order} != 0")
            }
        }
    }
}

/// Result of an axiom sweep; empty means every checked axiom holds.
#[derive(Clone, Debug, Default)]
pub struct AxiomReport {
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn lines(&self) -> Vec<String> {
        self.violations.iter().map(|v| v.to_string()).collect()
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            write!(f, "all axioms hold")
        } else {
            for (i, v) in self.violations.iter().enumerate() {
                if i > 0 {
                    writeln!(f)?;
                }
                write!(f, "{v}")?;
            }
            Ok(())
        }
    }
}

/// The braced coefficient of `d^i(a) d^{n-i}(b)` in `d^n(ab)` for
/// `deg a ≡ parity (mod 2)`.
///
/// Base column: `{n,0} = (-1)^{n·parity}` (the value making the n = 2
/// expansion close; the sign depends on n, not on parity alone), with
/// `{1,1} = 1` and, for j >= 1,
/// `{n+1,j} = {n,j-1} + (-1)^{parity+j}·{n,j}`. Out-of-range j gives 0.
pub fn graded_binomial(n: u32, j: u32, parity: u8) -> Scalar {
    if j > n {
        return Scalar::zero();
    }
    if n == 0 {
        // d^0(ab) = ab with coefficient 1 at j = 0.
        return Scalar::one();
    }
    let p = i64::from(parity % 2);
    // row[j] holds {m, j} while m climbs from 1 to n.
    let mut row: Vec<Scalar> = vec![sign(p), Scalar::one()];
    for m in 1..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(sign(i64::from(m + 1) * p));
        for jj in 1..=(m + 1) as usize {
            let prev_lower = row[jj - 1].clone();
            let prev_same = if jj < row.len() { row[jj].clone() } else { Scalar::zero() };
            let s: Scalar = sign(p + jj as i64);
            next.push(prev_lower + s * prev_same);
        }
        row = next;
    }
    row[j as usize].clone()
}

/// True iff `d^n(a·b) = Σ_i {n,i}_{deg a} d^i(a)·d^{n-i}(b)` holds
/// exactly in the given algebra. Both elements must be homogeneous.
pub fn leibniz_power_check(
    algebra: &NDga,
    a: &Element<Scalar>,
    b: &Element<Scalar>,
    n: u32,
) -> Result<bool> {
    let deg_a = a
        .degree(algebra.space())?
        .ok_or_else(|| CoreError::Argument("zero element has no parity".into()))?;
    let _ = b.degree(algebra.space())?; // homogeneity check
    let parity = (deg_a.rem_euclid(2)) as u8;
    let mut lhs = algebra.mul(a, b)?;
    for _ in 0..n {
        lhs = algebra.d().apply(&lhs)?;
    }
    let mut rhs = Element::zero();
    let mut da: Vec<Element<Scalar>> = vec![a.clone()];
    let mut db: Vec<Element<Scalar>> = vec![b.clone()];
    for i in 0..n as usize {
        da.push(algebra.d().apply(&da[i])?);
        db.push(algebra.d().apply(&db[i])?);
    }
    for i in 0..=n {
        let coeff = graded_binomial(n, i, parity);
        if coeff.is_zero() {
            continue;
        }
        let term = algebra.mul(&da[i as usize], &db[(n - i) as usize])?;
        rhs = rhs.add(&term.scale(&coeff));
    }
    Ok(lhs == rhs)
}

/// Tensor product of algebras: labels `x⊗y`, differential as in
/// [`crate::ncomplex::tensor_complex`], and product
/// `(x⊗y)(x'⊗y') = (-1)^{deg y · deg x'} (xx')⊗(yy')`. Declared order is
/// `M+N-1`.
pub fn tensor_dga(a: &NDga, b: &NDga) -> Result<NDga> {
    let (space, d) = crate::ncomplex::tensor_differential(a.space(), a.d(), b.space(), b.d())?;
    let mut product: BTreeMap<(String, String), Element<Scalar>> = BTreeMap::new();
    let a_labels: Vec<(String, i64)> = a
        .space()
        .degrees()
        .flat_map(|deg| a.space().labels(deg).iter().map(move |l| (l.clone(), deg)))
        .collect();
    let b_labels: Vec<(String, i64)> = b
        .space()
        .degrees()
        .flat_map(|deg| b.space().labels(deg).iter().map(move |l| (l.clone(), deg)))
        .collect();
    for (x, _) in &a_labels {
        for (y, y_deg) in &b_labels {
            for (xp, xp_deg) in &a_labels {
                for (yp, _) in &b_labels {
                    let xx = a.product_of(x, xp);
                    let yy = b.product_of(y, yp);
                    if xx.is_zero() || yy.is_zero() {
                        continue;
                    }
                    let koszul: Scalar = sign(y_deg * xp_deg);
                    let mut value = Element::zero();
                    for (tx, cx) in xx.iter() {
                        for (ty, cy) in yy.iter() {
                            value.add_term(
                                &crate::ncomplex::tensor_label(tx, ty),
                                &cx.mul(cy).mul(&koszul),
                            );
                        }
                    }
                    if !value.is_zero() {
                        product.insert(
                            (
                                crate::ncomplex::tensor_label(x, y),
                                crate::ncomplex::tensor_label(xp, yp),
                            ),
                            value,
                        );
                    }
                }
            }
        }
    }
    let unit = match (a.unit(), b.unit()) {
        (Some(u), Some(v)) => Some(crate::ncomplex::tensor_label(u, v)),
        _ => None,
    };
    NDga::new(space, d, a.order() + b.order() - 1, product, unit)
}

/// The endomorphism algebra of a complex: basis maps `t⊗s*` sending the
/// basis label `s` to `t` (degree `deg t - deg s`), product given by
/// composition, and differential `d_End(f) = d∘f - (-1)^{deg f} f∘d`.
/// Declared order is `2N-1`. The identity is a sum of basis maps, so no
/// single unit label exists.
pub fn end_algebra(m: &NComplex) -> Result<NDga> {
    let space = m.space();
    let mut labels: BTreeMap<i64, Vec<String>> = BTreeMap::new();
    let mut pairs: Vec<(String, String)> = Vec::new(); // (target t, source s)
    for t_deg in space.degrees() {
        for t in space.labels(t_deg) {
            for s_deg in space.degrees() {
                for s in space.labels(s_deg) {
                    labels
                        .entry(t_deg - s_deg)
                        .or_default()
                        .push(end_label(t, s));
                    pairs.push((t.clone(), s.clone()));
                }
            }
        }
    }
    let end_space = GradedSpace::new(labels)?;

    // d_End(t⊗s*) = Σ_u d_{u,t}·(u⊗s*) - (-1)^{deg t - deg s} Σ_v d_{s,v}·(t⊗v*).
    let mut d_entries: Vec<(String, String, Scalar)> = Vec::new();
    for (t, s) in &pairs {
        let label = end_label(t, s);
        let dt = m.d().apply(&Element::basis(t.clone()))?;
        for (u, c) in dt.iter() {
            d_entries.push((label.clone(), end_label(u, s), c.clone()));
        }
        let deg = space.degree_of(t)? - space.degree_of(s)?;
        let koszul: Scalar = sign(deg + 1);
        for v_deg in space.degrees() {
            for v in space.labels(v_deg) {
                let c = m.d().entry(v, s);
                if !c.is_zero() {
                    d_entries.push((label.clone(), end_label(t, v), c.mul(&koszul)));
                }
            }
        }
    }
    let d = GradedMap::from_entries(end_space.clone(), end_space.clone(), 1, d_entries)?;

    // (t⊗s*)∘(t'⊗s'*) = [s = t'] t⊗s'*.
    let mut product = BTreeMap::new();
    for (t, s) in &pairs {
        for (tp, sp) in &pairs {
            if s == tp {
                product.insert(
                    (end_label(t, s), end_label(tp, sp)),
                    Element::basis(end_label(t, sp)),
                );
            }
        }
    }
    NDga::new(end_space, d, 2 * m.order() - 1, product, None)
}

pub fn end_label(target: &str, source: &str) -> String {
    format!("{target}⊗{source}*")
}

/// Reads an element of the endomorphism algebra back as the graded map
/// it denotes on the original complex.
pub fn end_element_to_map(
    m: &NComplex,
    end: &NDga,
    element: &Element<Scalar>,
) -> Result<GradedMap<Scalar>> {
    let degree = element
        .degree(end.space())?
        .ok_or_else(|| CoreError::Argument("zero element has no degree".into()))?;
    let mut map = GradedMap::zero(m.space().clone(), m.space().clone(), degree);
    for (label, c) in element.iter() {
        let Some((target, source)) = split_end_label(label) else {
            return Err(CoreError::Argument(format!(
                "`{label}` is not an elementary endomorphism label"
            )));
        };
        map.add_entry(&source, &target, c)?;
    }
    Ok(map)
}

/// Writes a homogeneous graded map as an element of the endomorphism
/// algebra.
pub fn map_to_end_element(map: &GradedMap<Scalar>) -> Element<Scalar> {
    let mut out = Element::zero();
    for (src, tgt, c) in map.entries() {
        out.add_term(&end_label(&tgt, &src), &c);
    }
    out
}

fn split_end_label(label: &str) -> Option<(String, String)> {
    let rest = label.strip_suffix('*')?;
    let (target, source) = rest.split_once('⊗')?;
    Some((target.to_string(), source.to_string()))
}

/// A graded module over an algebra: an action of algebra basis labels on
/// module basis labels plus a module differential of some order K.
#[derive(Clone, Debug)]
pub struct Kdgm {
    algebra: Arc<NDga>,
    module_space: Arc<GradedSpace>,
    module_d: GradedMap<Scalar>,
    order: u32,
    action: BTreeMap<(String, String), Element<Scalar>>,
}

impl Kdgm {
    pub fn new(
        algebra: Arc<NDga>,
        module_space: Arc<GradedSpace>,
        module_d: GradedMap<Scalar>,
        order: u32,
        action: BTreeMap<(String, String), Element<Scalar>>,
    ) -> Result<Self> {
        if order == 0 {
            return Err(CoreError::Argument("order K must be at least 1".into()));
        }
        if !module_d.is_endomorphism() || **module_d.source() != *module_space {
            return Err(CoreError::Structural(
                "module differential must be an endomorphism of the module space".into(),
            ));
        }
        if module_d.degree() != 1 {
            return Err(CoreError::Structural(
                "module differential must have degree 1".into(),
            ));
        }
        for ((a, m), value) in &action {
            if !algebra.space().contains(a) {
                return Err(CoreError::Structural(format!(
                    "action references unknown algebra label `{a}`"
                )));
            }
            if !module_space.contains(m) {
                return Err(CoreError::Structural(format!(
                    "action references unknown module label `{m}`"
                )));
            }
            for (t, _) in value.iter() {
                if !module_space.contains(t) {
                    return Err(CoreError::Structural(format!(
                        "action of `{a}` on `{m}` references unknown label `{t}`"
                    )));
                }
            }
        }
        Ok(Kdgm { algebra, module_space, module_d, order, action })
    }

    pub fn algebra(&self) -> &Arc<NDga> {
        &self.algebra
    }

    pub fn module_space(&self) -> &Arc<GradedSpace> {
        &self.module_space
    }

    pub fn module_d(&self) -> &GradedMap<Scalar> {
        &self.module_d
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn action_of(&self, a: &str, m: &str) -> Element<Scalar> {
        self.action
            .get(&(a.to_string(), m.to_string()))
            .cloned()
            .unwrap_or_else(Element::zero)
    }

    /// Bilinear extension of the action.
    pub fn act(&self, a: &Element<Scalar>, m: &Element<Scalar>) -> Result<Element<Scalar>> {
        let mut out = Element::zero();
        for (al, ca) in a.iter() {
            for (ml, cm) in m.iter() {
                let v = self.action_of(al, ml).scale(&ca.mul(cm));
                out = out.add(&v);
            }
        }
        Ok(out)
    }

    /// The operator `m ↦ a·m` on the module.
    pub fn action_operator(&self, a: &Element<Scalar>) -> Result<GradedMap<Scalar>> {
        let degree = a
            .degree(self.algebra.space())?
            .ok_or_else(|| CoreError::Argument("zero element has no degree".into()))?;
        let mut map = GradedMap::zero(self.module_space.clone(), self.module_space.clone(), degree);
        for m_deg in self.module_space.degrees() {
            for m in self.module_space.labels(m_deg) {
                let image = self.act(a, &Element::basis(m.clone()))?;
                for (t, c) in image.iter() {
                    map.add_entry(m, t, c)?;
                }
            }
        }
        Ok(map)
    }

    /// Axiom check for the module: action degree additivity, action
    /// associativity `a(bm) = (ab)m`, module Leibniz, and `d_M^K = 0`.
    pub fn verify(&self) -> AxiomReport {
        let mut violations = Vec::new();
        let a_labels: Vec<(String, i64)> = self
            .algebra
            .space()
            .degrees()
            .flat_map(|deg| {
                self.algebra
                    .space()
                    .labels(deg)
                    .iter()
                    .map(move |l| (l.clone(), deg))
            })
            .collect();
        let m_labels: Vec<(String, i64)> = self
            .module_space
            .degrees()
            .flat_map(|deg| {
                self.module_space
                    .labels(deg)
                    .iter()
                    .map(move |l| (l.clone(), deg))
            })
            .collect();

        for ((a, m), value) in &self.action {
            let expected = self
                .algebra
                .space()
                .position(a)
                .map(|(d, _)| d)
                .unwrap_or(0)
                + self.module_space.position(m).map(|(d, _)| d).unwrap_or(0);
            for (t, _) in value.iter() {
                if let Some((found, _)) = self.module_space.position(t) {
                    if found != expected {
                        violations.push(AxiomViolation::ActionDegree {
                            a: a.clone(),
                            m: m.clone(),
                            target: t.clone(),
                            expected,
                            found,
                        });
                    }
                }
            }
        }

        for (a, _) in &a_labels {
            for (b, _) in &a_labels {
                for (m, _) in &m_labels {
                    let bm = self.action_of(b, m);
                    let lhs = self.act(&Element::basis(a.clone()), &bm);
                    let ab = self.algebra.product_of(a, b);
                    let rhs = self.act(&ab, &Element::basis(m.clone()));
                    let ok = matches!((lhs, rhs), (Ok(l), Ok(r)) if l == r);
                    if !ok {
                        violations.push(AxiomViolation::ActionAssociativity {
                            a: a.clone(),
                            b: b.clone(),
                            m: m.clone(),
                        });
                    }
                }
            }
        }

        for (a, a_deg) in &a_labels {
            for (m, _) in &m_labels {
                let check = || -> Result<(Element<Scalar>, Element<Scalar>)> {
                    let am = self.action_of(a, m);
                    let lhs = self.module_d.apply(&am)?;
                    let da = self.algebra.d().apply(&Element::basis(a.clone()))?;
                    let da_m = self.act(&da, &Element::basis(m.clone()))?;
                    let dm = self.module_d.apply(&Element::basis(m.clone()))?;
                    let a_dm = self
                        .act(&Element::basis(a.clone()), &dm)?
                        .scale(&sign(*a_deg));
                    Ok((lhs, da_m.add(&a_dm)))
                };
                match check() {
                    Ok((lhs, rhs)) if lhs == rhs => {}
                    Ok((lhs, rhs)) => violations.push(AxiomViolation::ModuleLeibniz {
                        a: a.clone(),
                        m: m.clone(),
                        detail: format!("d(a·m) = {lhs}, Leibniz side = {rhs}"),
                    }),
                    Err(e) => violations.push(AxiomViolation::ModuleLeibniz {
                        a: a.clone(),
                        m: m.clone(),
                        detail: e.to_string(),
                    }),
                }
            }
        }

        match self.module_d.power(self.order) {
            Ok(p) if p.is_zero() => {}
            _ => violations.push(AxiomViolation::ModuleNilpotency { order: self.order }),
        }

        AxiomReport { violations }
    }
}

/// Any algebra is a module over itself by left multiplication.
pub fn self_module(algebra: &Arc<NDga>) -> Result<Kdgm> {
    let mut action = BTreeMap::new();
    let labels: Vec<String> = algebra.space().all_labels().cloned().collect();
    for a in &labels {
        for b in &labels {
            let v = algebra.product_of(a, b);
            if !v.is_zero() {
                action.insert((a.clone(), b.clone()), v);
            }
        }
    }
    Kdgm::new(
        algebra.clone(),
        algebra.space().clone(),
        algebra.d().clone(),
        algebra.order(),
        action,
    )
}

/// A complex is a module over its own endomorphism algebra by
/// evaluation: `(t⊗s*)·m = [m = s]·t`. The module keeps order N while
/// the algebra has order 2N-1.
pub fn evaluation_module(m: &NComplex) -> Result<(Arc<NDga>, Kdgm)> {
    let end = Arc::new(end_algebra(m)?);
    let mut action = BTreeMap::new();
    for t_deg in m.space().degrees() {
        for t in m.space().labels(t_deg) {
            for s_deg in m.space().degrees() {
                for s in m.space().labels(s_deg) {
                    action.insert(
                        (end_label(t, s), s.clone()),
                        Element::basis(t.clone()),
                    );
                }
            }
        }
    }
    let module = Kdgm::new(
        end.clone(),
        m.space().clone(),
        m.d().clone(),
        m.order(),
        action,
    )?;
    Ok((end, module))
}

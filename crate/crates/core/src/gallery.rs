//! Built-in examples: chain complexes of any length, the nine-dimensional
//! grid complex, and a truncated polynomial differential-forms algebra
//! with connection-style degree-1 operators.

use std::collections::BTreeMap;

use crate::error::{CoreError, Result};
use crate::graded::{Element, GradedMap, GradedSpace};
use crate::matrix::Matrix;
use crate::ncomplex::NComplex;
use crate::ndga::NDga;
use crate::ring::{sign, Ring};
use crate::scalar::Scalar;

/// The chain on basis e1..em with d(ek) = e(k+1) and d(em) = 0, graded by
/// deg ek = k - 1: a proper m-complex.
pub fn chain(m: u32) -> NComplex {
    assert!(m >= 1, "a chain needs at least one basis vector");
    let labels: Vec<(String, i64)> = (1..=m)
        .map(|k| (format!("e{k}"), i64::from(k) - 1))
        .collect();
    let space = GradedSpace::from_labels(labels).expect("chain labels are distinct");
    let mut d = GradedMap::zero(space.clone(), space.clone(), 1);
    for k in 1..m {
        d.add_entry(&format!("e{k}"), &format!("e{}", k + 1), &Scalar::one())
            .expect("consecutive chain labels differ by one degree");
    }
    NComplex::new(space, d, m).expect("the chain differential dies at its length")
}

/// The grid complex on labels Eij (1 <= i, j <= 3) with deg Eij = i - j
/// and D(Eij) = E(i+1)j + (-1)^{i+j} Ei(j-1), out-of-range terms dropped:
/// a proper 5-complex.
pub fn grid_complex() -> NComplex {
    let mut labels = Vec::new();
    for i in 1..=3i64 {
        for j in 1..=3i64 {
            labels.push((format!("E{i}{j}"), i - j));
        }
    }
    let space = GradedSpace::from_labels(labels).expect("grid labels are distinct");
    let mut d = GradedMap::zero(space.clone(), space.clone(), 1);
    for i in 1..=3i64 {
        for j in 1..=3i64 {
            let src = format!("E{i}{j}");
            if i < 3 {
                d.add_entry(&src, &format!("E{}{j}", i + 1), &Scalar::one())
                    .expect("the row step raises the degree by one");
            }
            if j > 1 {
                d.add_entry(&src, &format!("E{i}{}", j - 1), &sign(i + j))
                    .expect("the column step raises the degree by one");
            }
        }
    }
    NComplex::new(space, d, 5).expect("the grid differential dies at order five")
}

/// One basis monomial of the forms model: a polynomial part given by
/// exponents and a strictly increasing list of generator indices for the
/// one-form factors.
#[derive(Clone, Debug)]
struct Monomial {
    exponents: Vec<u32>,
    forms: Vec<usize>,
    label: String,
}

impl Monomial {
    fn total_degree(&self) -> u32 {
        self.exponents.iter().sum::<u32>() + self.forms.len() as u32
    }
}

/// The display label of a forms-model monomial: polynomial factors
/// `x{i}` / `x{i}^{p}` followed by `dx{j}` factors, joined by `*`;
/// the empty monomial is `1`. Indices are 1-based in labels.
pub fn monomial_label(exponents: &[u32], forms: &[usize]) -> String {
    let mut parts = Vec::new();
    for (i, &p) in exponents.iter().enumerate() {
        match p {
            0 => {}
            1 => parts.push(format!("x{}", i + 1)),
            _ => parts.push(format!("x{}^{p}", i + 1)),
        }
    }
    for &j in forms {
        parts.push(format!("dx{}", j + 1));
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

fn compositions(parts: usize, total: u32) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for head in 0..=total {
        for mut tail in compositions(parts - 1, total - head) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Disjoint merge of two increasing form-index lists with the sign of the
/// shuffle sorting the concatenation; `None` when an index repeats.
fn merge_forms(s: &[usize], t: &[usize]) -> Option<(Vec<usize>, i64)> {
    let mut inversions = 0i64;
    for &a in s {
        for &b in t {
            if a == b {
                return None;
            }
            if a > b {
                inversions += 1;
            }
        }
    }
    let mut merged: Vec<usize> = s.iter().chain(t.iter()).copied().collect();
    merged.sort_unstable();
    Some((merged, inversions))
}

/// A finite commutative model of polynomial differential forms: the
/// algebra on x1..x{vars} (degree 0) and dx1..dx{vars} (degree 1), with
/// every monomial of polynomial-plus-form degree above `max_total`
/// truncated to zero. The truncation ideal is closed under both the
/// product and d, so the quotient is an honest 2-dga, graded by form
/// degree. Caps: vars <= 4, max_total <= 6.
pub fn forms_model(vars: usize, max_total: u32) -> Result<NDga> {
    if !(1..=4).contains(&vars) {
        return Err(CoreError::Argument(format!(
            "the forms model supports 1 to 4 variables, got {vars}"
        )));
    }
    if !(1..=6).contains(&max_total) {
        return Err(CoreError::Argument(format!(
            "the forms model supports total degree caps 1 to 6, got {max_total}"
        )));
    }

    let mut masks: Vec<u32> = (0..(1u32 << vars)).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    let mut basis: Vec<Monomial> = Vec::new();
    for mask in masks {
        let forms: Vec<usize> = (0..vars).filter(|i| mask & (1 << i) != 0).collect();
        let form_degree = forms.len() as u32;
        if form_degree > max_total {
            continue;
        }
        for poly_total in 0..=(max_total - form_degree) {
            for exponents in compositions(vars, poly_total) {
                let label = monomial_label(&exponents, &forms);
                basis.push(Monomial { exponents, forms: forms.clone(), label });
            }
        }
    }

    let space = GradedSpace::from_labels(
        basis
            .iter()
            .map(|m| (m.label.clone(), m.forms.len() as i64)),
    )?;

    let mut d = GradedMap::zero(space.clone(), space.clone(), 1);
    for m in &basis {
        for i in 0..vars {
            if m.exponents[i] == 0 || m.forms.contains(&i) {
                continue;
            }
            let passed = m.forms.iter().filter(|&&s| s < i).count() as i64;
            let mut exponents = m.exponents.clone();
            exponents[i] -= 1;
            let mut forms = m.forms.clone();
            forms.push(i);
            forms.sort_unstable();
            let coeff = Scalar::from_int(i64::from(m.exponents[i])).mul(&sign(passed));
            d.add_entry(&m.label, &monomial_label(&exponents, &forms), &coeff)?;
        }
    }

    let mut product = BTreeMap::new();
    for u in &basis {
        for v in &basis {
            if u.total_degree() + v.total_degree() > max_total {
                continue;
            }
            let Some((forms, inversions)) = merge_forms(&u.forms, &v.forms) else {
                continue;
            };
            let exponents: Vec<u32> = u
                .exponents
                .iter()
                .zip(&v.exponents)
                .map(|(a, b)| a + b)
                .collect();
            let value = Element::from_terms([(
                monomial_label(&exponents, &forms),
                sign(inversions),
            )]);
            product.insert((u.label.clone(), v.label.clone()), value);
        }
    }

    NDga::new(space, d, 2, product, Some("1".to_string()))
}

/// The one-form with linear coefficients determined by a square matrix:
/// the (i, j) entry multiplies x{i+1}*dx{j+1}. Requires the model to keep
/// total degree 2.
pub fn linear_one_form(model: &NDga, coeffs: &Matrix<Scalar>) -> Result<Element<Scalar>> {
    if coeffs.rows() != coeffs.cols() {
        return Err(CoreError::Argument(format!(
            "coefficient matrix must be square, got {}x{}",
            coeffs.rows(),
            coeffs.cols()
        )));
    }
    let vars = coeffs.rows();
    let mut a = Element::zero();
    for i in 0..vars {
        for j in 0..vars {
            let c = coeffs.get(i, j);
            if c.is_zero() {
                continue;
            }
            let mut exponents = vec![0u32; vars];
            exponents[i] = 1;
            let label = monomial_label(&exponents, &[j]);
            if !model.space().contains(&label) {
                return Err(CoreError::Argument(format!(
                    "the model has no monomial `{label}`; it needs at least \
                     {vars} variables and total degree 2"
                )));
            }
            a.add_term(&label, c);
        }
    }
    Ok(a)
}

fn generator_count(model: &NDga) -> usize {
    let mut n = 0;
    while model.space().contains(&format!("dx{}", n + 1)) {
        n += 1;
    }
    n
}

fn form_index(part: &str, vars: usize) -> Option<usize> {
    let k: usize = part.strip_prefix("dx")?.parse().ok()?;
    (1..=vars).contains(&k).then(|| k - 1)
}

/// Reads a constant-coefficient two-form off as the antisymmetric matrix
/// F with F[i][j] the coefficient of dx{i+1}*dx{j+1} for i < j. Terms
/// with polynomial factors or of other form degrees are rejected.
pub fn constant_two_form_matrix(model: &NDga, w: &Element<Scalar>) -> Result<Matrix<Scalar>> {
    let vars = generator_count(model);
    let mut f = Matrix::zero(vars, vars);
    for (label, c) in w.iter() {
        let parts: Vec<&str> = label.split('*').collect();
        let indices: Option<Vec<usize>> = parts
            .iter()
            .map(|p| form_index(p, vars))
            .collect();
        let Some(indices) = indices else {
            return Err(CoreError::Argument(format!(
                "term `{label}` is not a constant two-form monomial"
            )));
        };
        if indices.len() != 2 || indices[0] >= indices[1] {
            return Err(CoreError::Argument(format!(
                "term `{label}` is not a constant two-form monomial"
            )));
        }
        f.add_assign_at(indices[0], indices[1], c);
        f.add_assign_at(indices[1], indices[0], &c.neg());
    }
    Ok(f)
}

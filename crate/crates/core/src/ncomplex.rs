//! N-complexes: a graded space with a degree-1 endomorphism `d` such
//! that `d^N = 0`. Provides nilpotency order search, properness,
//! generalized cohomology, morphism and homotopy-witness solvers, and
//! tensor products.

use std::sync::Arc;

use crate::error::{CoreError, Result};
use crate::graded::{Element, GradedMap, GradedSpace, MapEquation};
use crate::matrix;
use crate::ring::{sign, Ring};
use crate::scalar::Scalar;

/// A verified N-complex: `d` has degree 1 and `d^N = 0`.
#[derive(Clone, Debug)]
pub struct NComplex {
    space: Arc<GradedSpace>,
    d: GradedMap<Scalar>,
    order: u32,
}

impl NComplex {
    pub fn new(space: Arc<GradedSpace>, d: GradedMap<Scalar>, order: u32) -> Result<Self> {
        if order == 0 {
            return Err(CoreError::Argument("order N must be at least 1".into()));
        }
        if !Arc::ptr_eq(&space, d.source()) && **d.source() != *space {
            return Err(CoreError::SpaceMismatch(
                "differential is not defined on the given space".into(),
            ));
        }
        if !d.is_endomorphism() {
            return Err(CoreError::Structural(
                "differential must be an endomorphism".into(),
            ));
        }
        if d.degree() != 1 {
            return Err(CoreError::Structural(format!(
                "differential must have degree 1, got {}",
                d.degree()
            )));
        }
        if !d.power(order)?.is_zero() {
            return Err(CoreError::Structural(format!(
                "d^{order} is not zero on this space"
            )));
        }
        Ok(NComplex { space, d, order })
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        &self.space
    }

    pub fn d(&self) -> &GradedMap<Scalar> {
        &self.d
    }

    /// The verified nilpotency bound N.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// `d^{N-1} != 0`: the bound N is attained.
    pub fn is_proper(&self) -> Result<bool> {
        Ok(self.order == 1 || !self.d.power(self.order - 1)?.is_zero())
    }

    /// Minimal `p >= 1` with `d^p(v) = 0`. The zero element gets 1.
    pub fn closedness_order(&self, v: &Element<Scalar>) -> Result<u32> {
        let mut current = self.d.apply(v)?;
        let mut p = 1;
        while !current.is_zero() {
            current = self.d.apply(&current)?;
            p += 1;
        }
        Ok(p)
    }

    /// Dimension and representatives of
    /// `ker(d^p: A^i -> A^{i+p}) / im(d^{N-p}: A^{i-N+p} -> A^i)`.
    ///
    /// `p >= N` gives the zero group by convention; `p = 0` is an error.
    pub fn cohomology(&self, p: u32, i: i64) -> Result<Cohomology> {
        if p == 0 {
            return Err(CoreError::Argument(
                "cohomology index p must satisfy p >= 1".into(),
            ));
        }
        if p >= self.order {
            return Ok(Cohomology { p, degree: i, dimension: 0, representatives: vec![] });
        }
        let dim_i = self.space.dim(i);
        let kernel = self.d.power(p)?.rank_kernel_image(i).kernel;
        let image_degree = i - i64::from(self.order - p);
        let image = {
            let rki = self.d.power(self.order - p)?.rank_kernel_image(image_degree);
            rki.image
        };
        let dimension = matrix::quotient_dimension(&image, &kernel, dim_i)?;
        let representatives = matrix::quotient_representatives(&image, &kernel, dim_i)
            .into_iter()
            .map(|v| GradedMap::coordinates_to_element(&self.space, i, &v))
            .collect();
        Ok(Cohomology { p, degree: i, dimension, representatives })
    }

    /// Every `(p, i)` with `1 <= p < N` and `A^j != 0` for some
    /// `j ∈ {i, i-N+p}`, in ascending `(p, i)` order.
    pub fn cohomology_table(&self) -> Result<Vec<Cohomology>> {
        let mut out = Vec::new();
        let degrees: Vec<i64> = self.space.degrees().collect();
        for p in 1..self.order {
            for &i in &degrees {
                out.push(self.cohomology(p, i)?);
            }
        }
        Ok(out)
    }
}

/// One generalized cohomology component with explicit representatives.
#[derive(Clone, Debug)]
pub struct Cohomology {
    pub p: u32,
    pub degree: i64,
    pub dimension: usize,
    pub representatives: Vec<Element<Scalar>>,
}

/// Smallest `n <= bound` with `f^n = 0`, or `None` when the bound is
/// exceeded. `f` must be an endomorphism (any degree).
pub fn nilpotency_order<R: Ring>(f: &GradedMap<R>, bound: u32) -> Result<Option<u32>> {
    if !f.is_endomorphism() {
        return Err(CoreError::Structural(
            "nilpotency order requires an endomorphism".into(),
        ));
    }
    let mut acc = GradedMap::identity(f.source().clone());
    for n in 0..=bound {
        if acc.is_zero() {
            return Ok(Some(n));
        }
        acc = f.compose(&acc)?;
    }
    Ok(None)
}

/// `d_B ∘ f = f ∘ d_A`, blockwise and exact.
pub fn is_morphism(f: &GradedMap<Scalar>, a: &NComplex, b: &NComplex) -> Result<bool> {
    let left = b.d().compose(f)?;
    let right = f.compose(a.d())?;
    Ok(left == right)
}

/// Basis of the space of degree-`degree` maps `f` with `d_B f = f d_A`.
pub fn morphism_space(
    a: &NComplex,
    b: &NComplex,
    degree: i64,
) -> Result<Vec<GradedMap<Scalar>>> {
    let db = b.d().clone();
    let da = a.d().clone();
    let eq = MapEquation::new(a.space().clone(), b.space().clone(), degree, move |x| {
        db.compose(x)?.sub(&x.compose(&da)?)
    });
    eq.kernel()
}

/// Searches for `h` with `f - g = Σ_{i=0}^{N-1} d_B^{N-1-i} h d_A^i`.
///
/// `h` has degree `deg f - (N-1)`, forced by the identity: each summand
/// shifts `h` up by `N-1`. Both complexes must share the order N and
/// `f`, `g` the degree. Returns the solution with free coordinates zero,
/// in lexicographic (source label, target label) unknown order.
pub fn homotopy_witness(
    f: &GradedMap<Scalar>,
    g: &GradedMap<Scalar>,
    a: &NComplex,
    b: &NComplex,
) -> Result<Option<GradedMap<Scalar>>> {
    if f.degree() != g.degree() {
        return Err(CoreError::Argument(format!(
            "maps of degrees {} and {} cannot be homotopic",
            f.degree(),
            g.degree()
        )));
    }
    if a.order() != b.order() {
        return Err(CoreError::Argument(
            "homotopy requires complexes of the same order".into(),
        ));
    }
    let n = a.order();
    let h_degree = f.degree() - i64::from(n - 1);
    let da = a.d().clone();
    let db = b.d().clone();
    let eq = MapEquation::new(a.space().clone(), b.space().clone(), h_degree, move |h| {
        let mut acc = GradedMap::zero(h.source().clone(), h.target().clone(), h.degree() + i64::from(n - 1));
        for i in 0..n {
            let term = db.power(n - 1 - i)?.compose(h)?.compose(&da.power(i)?)?;
            acc = acc.add(&term)?;
        }
        Ok(acc)
    });
    let rhs = f.sub(g)?;
    eq.solve(&rhs)
}

/// Evaluates the homotopy combination `Σ d_B^{N-1-i} h d_A^i` for a
/// candidate witness, so callers can re-check solutions independently.
pub fn homotopy_combination(
    h: &GradedMap<Scalar>,
    a: &NComplex,
    b: &NComplex,
) -> Result<GradedMap<Scalar>> {
    let n = a.order();
    let mut acc = GradedMap::zero(
        a.space().clone(),
        b.space().clone(),
        h.degree() + i64::from(n - 1),
    );
    for i in 0..n {
        let term = b.d().power(n - 1 - i)?.compose(h)?.compose(&a.d().power(i)?)?;
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

/// True when `f` and `g` induce the same map on `_pH^i`: for every
/// kernel vector `v` of `d_A^p` at degree `i`, `(f-g)(v)` lies in the
/// image of `d_B^{N-p}`. Both maps must be morphisms of equal degree.
pub fn agree_on_cohomology(
    f: &GradedMap<Scalar>,
    g: &GradedMap<Scalar>,
    a: &NComplex,
    b: &NComplex,
    p: u32,
    i: i64,
) -> Result<bool> {
    if p == 0 || p >= a.order() || a.order() != b.order() {
        return Err(CoreError::Argument(
            "cohomology comparison needs 1 <= p < N and equal orders".into(),
        ));
    }
    let diff = f.sub(g)?;
    let kernel = a.d().power(p)?.rank_kernel_image(i).kernel;
    let target_degree = i + f.degree();
    let image = b
        .d()
        .power(b.order() - p)?
        .rank_kernel_image(target_degree - i64::from(b.order() - p))
        .image;
    let target_dim = b.space().dim(target_degree);
    for v in kernel {
        let elem = GradedMap::coordinates_to_element(a.space(), i, &v);
        let mapped = diff.apply(&elem)?;
        let mut coords = vec![Scalar::zero(); target_dim];
        for (label, c) in mapped.iter() {
            let (deg, pos) = b.space().position(label).ok_or_else(|| {
                CoreError::Structural(format!("image label `{label}` missing"))
            })?;
            if deg != target_degree {
                return Err(CoreError::Structural(
                    "morphism is not degree-homogeneous".into(),
                ));
            }
            coords[pos] = c.clone();
        }
        if !matrix::span_contains(&image, &coords, target_dim) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Tensor product of complexes: basis labels `x⊗y`, degrees add, and
/// `d(x⊗y) = d_A(x)⊗y + (-1)^{deg x} x⊗d_B(y)`. The result is verified
/// as an `(M+N-1)`-complex.
pub fn tensor_complex(a: &NComplex, b: &NComplex) -> Result<NComplex> {
    let (space, d) = tensor_differential(a.space(), a.d(), b.space(), b.d())?;
    NComplex::new(space, d, a.order() + b.order() - 1)
}

/// The underlying space/differential construction of [`tensor_complex`],
/// exposed for structures that carry extra data on top.
pub fn tensor_differential(
    sa: &Arc<GradedSpace>,
    da: &GradedMap<Scalar>,
    sb: &Arc<GradedSpace>,
    db: &GradedMap<Scalar>,
) -> Result<(Arc<GradedSpace>, GradedMap<Scalar>)> {
    let mut labels: Vec<(String, i64)> = Vec::new();
    for da_deg in sa.degrees() {
        for x in sa.labels(da_deg) {
            for db_deg in sb.degrees() {
                for y in sb.labels(db_deg) {
                    labels.push((tensor_label(x, y), da_deg + db_deg));
                }
            }
        }
    }
    // Sort by degree, keeping the (x, y) nesting order within a degree.
    let mut by_degree: std::collections::BTreeMap<i64, Vec<String>> = Default::default();
    for (label, deg) in labels {
        by_degree.entry(deg).or_default().push(label);
    }
    let space = GradedSpace::new(by_degree)?;

    let mut entries: Vec<(String, String, Scalar)> = Vec::new();
    for xa_deg in sa.degrees() {
        for x in sa.labels(xa_deg) {
            let dx = da.apply(&Element::basis(x.clone()))?;
            for xb_deg in sb.degrees() {
                for y in sb.labels(xb_deg) {
                    for (tx, c) in dx.iter() {
                        entries.push((tensor_label(x, y), tensor_label(tx, y), c.clone()));
                    }
                    let dy = db.apply(&Element::basis(y.clone()))?;
                    let koszul: Scalar = sign(xa_deg);
                    for (ty, c) in dy.iter() {
                        entries.push((
                            tensor_label(x, y),
                            tensor_label(x, ty),
                            c.mul(&koszul),
                        ));
                    }
                }
            }
        }
    }
    let d = GradedMap::from_entries(space.clone(), space.clone(), 1, entries)?;
    Ok((space, d))
}

pub fn tensor_label(x: &str, y: &str) -> String {
    format!("{x}⊗{y}")
}

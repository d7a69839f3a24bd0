//! JSON fixtures for complexes, algebras, and weighted graphs.
//!
//! Failures split into two kinds on purpose: unreadable or malformed
//! input is a fixture error, while well-formed input that breaks a
//! mathematical rule (unknown label, degree violation, non-nilpotent d)
//! surfaces as a structural error naming the offender.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dqm::AdjacencyGraph;
use crate::error::{CoreError, Result};
use crate::graded::{Element, GradedMap, GradedSpace};
use crate::ncomplex::NComplex;
use crate::ndga::NDga;
use crate::scalar::Scalar;

/// On-disk form of a complex, extended by an optional product table and
/// unit to describe an algebra. Degrees key the basis lists; `d` and
/// `product` store only nonzero entries, coefficients as scalar strings.
/// Product keys are comma-joined label pairs, so labels may not contain
/// commas.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexFixture {
    pub degrees: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub d: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(rename = "N")]
    pub order: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub product: Option<BTreeMap<String, BTreeMap<String, String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EdgeDto {
    pub from: String,
    pub to: String,
    pub weight: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphFixture {
    pub edges: Vec<EdgeDto>,
}

pub fn parse_fixture(text: &str) -> Result<ComplexFixture> {
    serde_json::from_str(text).map_err(|e| CoreError::Fixture(format!("bad fixture JSON: {e}")))
}

pub fn read_fixture(path: &Path) -> Result<ComplexFixture> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CoreError::Fixture(format!("cannot read `{}`: {e}", path.display())))?;
    parse_fixture(&text)
}

fn scalar_entry(raw: &str, context: &str) -> Result<Scalar> {
    Scalar::from_str(raw)
        .map_err(|_| CoreError::Fixture(format!("bad scalar `{raw}` in {context}")))
}

/// The graded space a fixture describes, without building its maps.
pub fn space_from_fixture(fx: &ComplexFixture) -> Result<std::sync::Arc<GradedSpace>> {
    build_space(fx)
}

/// The fixture's `d` table as a degree-1 map on a given space. Used to
/// read perturbation fixtures that share a base fixture's degrees.
pub fn map_from_fixture(
    fx: &ComplexFixture,
    space: &std::sync::Arc<GradedSpace>,
) -> Result<GradedMap<Scalar>> {
    build_d(fx, space)
}

fn build_space(fx: &ComplexFixture) -> Result<std::sync::Arc<GradedSpace>> {
    let mut components: BTreeMap<i64, Vec<String>> = BTreeMap::new();
    for (raw_degree, labels) in &fx.degrees {
        let degree: i64 = raw_degree.parse().map_err(|_| {
            CoreError::Fixture(format!("bad degree key `{raw_degree}`"))
        })?;
        components
            .entry(degree)
            .or_default()
            .extend(labels.iter().cloned());
    }
    GradedSpace::new(components)
}

fn build_d(
    fx: &ComplexFixture,
    space: &std::sync::Arc<GradedSpace>,
) -> Result<GradedMap<Scalar>> {
    let mut d = GradedMap::zero(space.clone(), space.clone(), 1);
    for (src, row) in &fx.d {
        for (tgt, raw) in row {
            let coeff = scalar_entry(raw, &format!("d entry `{src}` -> `{tgt}`"))?;
            d.add_entry(src, tgt, &coeff)?;
        }
    }
    Ok(d)
}

/// Builds the complex, checking d is a degree-1 endomorphism with
/// d^N = 0.
pub fn complex_from_fixture(fx: &ComplexFixture) -> Result<NComplex> {
    let space = build_space(fx)?;
    let d = build_d(fx, &space)?;
    NComplex::new(space, d, fx.order)
}

/// Builds the algebra. The fixture must carry a product table; beyond
/// label existence the axioms are left to [`NDga::verify`] so that a
/// broken fixture can still be loaded and described.
pub fn dga_from_fixture(fx: &ComplexFixture) -> Result<NDga> {
    let Some(product_dto) = &fx.product else {
        return Err(CoreError::Fixture(
            "fixture has no product table; it describes a complex, not an algebra".into(),
        ));
    };
    let space = build_space(fx)?;
    let d = build_d(fx, &space)?;
    let mut product = BTreeMap::new();
    for (key, row) in product_dto {
        let Some((a, b)) = key.split_once(',') else {
            return Err(CoreError::Fixture(format!(
                "product key `{key}` is not of the form `a,b`"
            )));
        };
        let mut value = Element::zero();
        for (label, raw) in row {
            let coeff = scalar_entry(raw, &format!("product entry `{key}` -> `{label}`"))?;
            value.add_term(label, &coeff);
        }
        product.insert((a.to_string(), b.to_string()), value);
    }
    NDga::new(space, d, fx.order, product, fx.unit.clone())
}

pub fn fixture_from_complex(c: &NComplex) -> ComplexFixture {
    ComplexFixture {
        degrees: degrees_dto(c.space()),
        d: map_dto(c.d()),
        order: c.order(),
        product: None,
        unit: None,
    }
}

pub fn fixture_from_dga(a: &NDga) -> ComplexFixture {
    let mut product: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::new();
    for ((x, y), value) in a.products() {
        if value.is_zero() {
            continue;
        }
        let row: BTreeMap<String, String> = value
            .iter()
            .map(|(label, c)| (label.clone(), c.to_string()))
            .collect();
        product.insert(format!("{x},{y}"), row);
    }
    ComplexFixture {
        degrees: degrees_dto(a.space()),
        d: map_dto(a.d()),
        order: a.order(),
        product: Some(product),
        unit: a.unit().map(str::to_string),
    }
}

fn degrees_dto(space: &GradedSpace) -> BTreeMap<String, Vec<String>> {
    space
        .degrees()
        .map(|deg| (deg.to_string(), space.labels(deg).to_vec()))
        .collect()
}

fn map_dto(map: &GradedMap<Scalar>) -> BTreeMap<String, BTreeMap<String, String>> {
    let mut out: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::new();
    for (src, tgt, coeff) in map.entries() {
        out.entry(src).or_default().insert(tgt, coeff.to_string());
    }
    out
}

/// Deterministic pretty-printed JSON (maps are ordered), ending in a
/// newline.
pub fn fixture_to_json(fx: &ComplexFixture) -> String {
    let mut text = serde_json::to_string_pretty(fx).expect("fixture DTOs always serialize");
    text.push('\n');
    text
}

pub fn parse_graph(text: &str) -> Result<AdjacencyGraph> {
    let fx: GraphFixture = serde_json::from_str(text)
        .map_err(|e| CoreError::Fixture(format!("bad graph JSON: {e}")))?;
    let mut edges = Vec::new();
    for e in &fx.edges {
        let weight = scalar_entry(&e.weight, &format!("edge `{}` -> `{}`", e.from, e.to))?;
        edges.push((e.from.clone(), e.to.clone(), weight));
    }
    Ok(AdjacencyGraph::from_edges(edges))
}

pub fn read_graph(path: &Path) -> Result<AdjacencyGraph> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CoreError::Fixture(format!("cannot read `{}`: {e}", path.display())))?;
    parse_graph(&text)
}

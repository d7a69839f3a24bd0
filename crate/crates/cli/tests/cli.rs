//! Subcommand behaviors beyond the acceptance gate: algebra fixtures
//! through tensor and verify, perturbation fixture validation, and
//! argument parsing edge cases.

use std::path::PathBuf;
use std::process::{Command, Output};

use ndga_core::fixture;

fn ndga_bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ndga"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ndga-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    dir
}

#[test]
fn tensor_of_algebras_is_a_loadable_algebra_fixture() {
    let dir = temp_dir("tensor");
    let small = dir.join("forms-1-1.json");
    let out = ndga_bin(&["export-gallery", "forms-1-1", "--output", small.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));

    let out = ndga_bin(&["tensor", small.to_str().unwrap(), small.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let fx = fixture::parse_fixture(&String::from_utf8_lossy(&out.stdout)).expect("fixture JSON");
    assert!(fx.product.is_some(), "algebra ⊗ algebra keeps its product");
    assert_eq!(fx.order, 3);

    let product = dir.join("product.json");
    std::fs::write(&product, out.stdout).expect("write");
    let out = ndga_bin(&["verify", product.to_str().unwrap()]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8_lossy(&out.stdout).contains("3-dga"));

    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn mixing_a_complex_with_an_algebra_is_a_usage_error() {
    let dir = temp_dir("mixed");
    let complex = dir.join("chain2.json");
    let algebra = dir.join("forms-1-1.json");
    ndga_bin(&["export-gallery", "chain2", "--output", complex.to_str().unwrap()]);
    ndga_bin(&["export-gallery", "forms-1-1", "--output", algebra.to_str().unwrap()]);
    let out = ndga_bin(&["tensor", complex.to_str().unwrap(), algebra.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn corrupted_product_table_fails_verification() {
    let dir = temp_dir("product");
    let file = dir.join("forms-2-2.json");
    ndga_bin(&["export-gallery", "forms-2-2", "--output", file.to_str().unwrap()]);
    let text = std::fs::read_to_string(&file).expect("exported");
    let mut fx: serde_json::Value = serde_json::from_str(&text).expect("valid JSON");
    // Scaling a unit-row product entry breaks the unit law but nothing
    // structural, so the axiom sweep itself must catch it.
    fx["product"]["1,x1"] = serde_json::json!({"x1": "2"});
    let broken = dir.join("broken.json");
    std::fs::write(&broken, fx.to_string()).expect("write");

    let out = ndga_bin(&["verify", broken.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("x1"), "report must name the label: {stderr}");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn residual_rejects_mismatched_perturbation_degrees() {
    let dir = temp_dir("residual");
    let base = dir.join("base.json");
    let other = dir.join("other.json");
    std::fs::write(&base, r#"{"degrees": {"0": ["v0"], "1": ["v1"]}, "d": {}, "N": 1}"#)
        .expect("write");
    std::fs::write(&other, r#"{"degrees": {"0": ["w0"], "1": ["w1"]}, "d": {}, "N": 1}"#)
        .expect("write");
    let out = ndga_bin(&[
        "mc",
        "--order",
        "2",
        "--filter",
        "1",
        "--residual",
        base.to_str().unwrap(),
        other.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn residual_requires_the_declared_filter_to_hold() {
    let dir = temp_dir("filter");
    let chain3 = dir.join("chain3.json");
    ndga_bin(&["export-gallery", "chain3", "--output", chain3.to_str().unwrap()]);
    let e = dir.join("e.json");
    std::fs::write(
        &e,
        r#"{"degrees": {"0": ["e1"], "1": ["e2"], "2": ["e3"]}, "d": {"e1": {"e2": "1"}}, "N": 1}"#,
    )
    .expect("write");
    // d^2 != 0 on the 3-chain, so an order-2 filter is a false premise.
    let out = ndga_bin(&[
        "mc",
        "--order",
        "3",
        "--filter",
        "2",
        "--residual",
        chain3.to_str().unwrap(),
        e.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("precondition"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn kernel_multi_index_arguments_must_be_parenthesized() {
    let out = ndga_bin(&["kernel", "--builtin-l", "--steps", "2", "--from", "0,1", "--to", "()"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cohomology_validates_p_before_reading_the_fixture() {
    let out = ndga_bin(&["cohomology", "/definitely/not/here.json", "--p", "0", "--degree", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("1 <= p"));
}

#[test]
fn gallery_names_are_validated() {
    for name in ["chain0", "chain99", "forms-9-1", "forms-2", "mystery"] {
        let out = ndga_bin(&["export-gallery", name]);
        assert_eq!(out.status.code(), Some(2), "name {name:?}");
    }
}

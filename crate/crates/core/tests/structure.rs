//! Structural theorems across modules: tensor nilpotency bounds with
//! their attainment, homotopy invariance of the induced cohomology maps,
//! deformation bounds over truncated polynomial rings, and the
//! path-kernel route to the expansion coefficients.

mod common;

use ndga_core::dqm::c_oracle;
use ndga_core::gallery::{chain, grid_complex};
use ndga_core::mc::{c_coeff, deform};
use ndga_core::multiindex::enumerate_admissible;
use ndga_core::ncomplex::{
    agree_on_cohomology, homotopy_combination, homotopy_witness, is_morphism, nilpotency_order,
    tensor_complex,
};
use ndga_core::{GradedMap, NComplex, Ring, Scalar, TruncatedRing};

#[test]
fn tensor_orders_obey_the_bound_and_attain_it_by_parity() {
    // The registered order is always m+n-1 and the power check at
    // construction certifies it. With the alternating sign the square
    // of the tensor differential loses its cross terms, so when both
    // factors are even-order the realized order drops to m+n-2; any odd
    // factor attains the bound.
    for m in 2..=4u32 {
        for n in 2..=4u32 {
            let t = tensor_complex(&chain(m), &chain(n)).unwrap();
            assert_eq!(t.order(), m + n - 1, "({m}, {n})");
            assert!(t.d().power(m + n - 1).unwrap().is_zero(), "({m}, {n})");
            let expected = if m % 2 == 0 && n % 2 == 0 {
                m + n - 2
            } else {
                m + n - 1
            };
            assert_eq!(
                nilpotency_order(t.d(), m + n).unwrap(),
                Some(expected),
                "({m}, {n})"
            );
        }
    }
}

fn check_homotopy_invariance(c: &NComplex, f: &GradedMap<Scalar>, seed: u64) {
    assert!(is_morphism(f, c, c).unwrap());
    let mut rng = common::rng(seed);
    let h_degree = f.degree() - i64::from(c.order() - 1);
    let h = common::random_map(&mut rng, c.space(), h_degree);
    let offset = homotopy_combination(&h, c, c).unwrap();
    let g = f.add(&offset).unwrap();
    assert!(is_morphism(&g, c, c).unwrap());

    // The two morphisms act identically on every cohomology group.
    let degrees: Vec<i64> = c.space().degrees().collect();
    for p in 1..c.order() {
        for &i in &degrees {
            assert!(
                agree_on_cohomology(f, &g, c, c, p, i).unwrap(),
                "p = {p}, degree {i}"
            );
        }
    }

    // The witness search recovers some homotopy, and recombining it
    // reproduces f - g exactly.
    let witness = homotopy_witness(f, &g, c, c).unwrap();
    let w = witness.expect("a homotopy exists by construction");
    assert_eq!(homotopy_combination(&w, c, c).unwrap(), f.sub(&g).unwrap());
}

#[test]
fn homotopic_morphisms_agree_on_cohomology() {
    let four = chain(4);
    let identity = GradedMap::identity(four.space().clone());
    check_homotopy_invariance(&four, &identity, 51_000);

    let grid = grid_complex();
    let identity = GradedMap::identity(grid.space().clone());
    check_homotopy_invariance(&grid, &identity, 52_000);
    // d itself is a degree-1 morphism.
    check_homotopy_invariance(&grid, grid.d(), 53_000);

    let mixed = tensor_complex(&chain(2), &chain(3)).unwrap();
    let identity = GradedMap::identity(mixed.space().clone());
    check_homotopy_invariance(&mixed, &identity, 54_000);
    check_homotopy_invariance(&mixed, mixed.d(), 55_000);
}

#[test]
fn deformations_over_truncated_rings_respect_the_order_bound() {
    for (truncation, base_order) in [(2u32, 2u32), (2, 3), (3, 2), (3, 3)] {
        let ring = TruncatedRing::new(truncation as usize);
        let base = chain(base_order);
        for seed in 0..4u64 {
            let mut rng = common::rng(61_000 + 100 * u64::from(truncation) + seed);
            let r1 = common::random_map(&mut rng, base.space(), 1);
            let r2 = common::random_map(&mut rng, base.space(), 1);
            let e = r1
                .map_coeffs(|c| ring.embed(c).mul(&ring.t()))
                .add(&r2.map_coeffs(|c| ring.embed(c).mul(&ring.t()).mul(&ring.t())))
                .unwrap();
            let deformation = deform(base.d(), &e, &ring, base_order).unwrap();
            assert_eq!(deformation.bound, truncation * base_order);
            assert!(deformation.realized_order <= deformation.bound);
            // Independent recomputation of the realized order.
            assert_eq!(
                nilpotency_order(&deformation.d, deformation.bound).unwrap(),
                Some(deformation.realized_order)
            );
        }
    }
}

#[test]
fn path_kernels_reproduce_every_expansion_coefficient_up_to_eight() {
    for n in 0..=8u32 {
        for s in enumerate_admissible(n) {
            assert_eq!(c_coeff(&s, n), c_oracle(&s, n), "s = {s}, n = {n}");
        }
        // The admissible set has size 2^n.
        assert_eq!(enumerate_admissible(n).len(), 1usize << n);
    }
}

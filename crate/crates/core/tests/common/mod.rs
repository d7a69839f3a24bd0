#![allow(dead_code)]

use std::sync::Arc;

use ndga_core::{GradedMap, GradedSpace, Scalar};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// A space with one to `max_dim` basis labels in each degree of the
/// inclusive range.
pub fn random_space(rng: &mut StdRng, lo: i64, hi: i64, max_dim: usize) -> Arc<GradedSpace> {
    let mut labels = Vec::new();
    for deg in lo..=hi {
        let dim = rng.gen_range(1..=max_dim);
        for k in 0..dim {
            labels.push((format!("v{deg}_{k}"), deg));
        }
    }
    GradedSpace::from_labels(labels).expect("generated labels are distinct")
}

/// A map of the given degree with independent small integer entries.
pub fn random_map(rng: &mut StdRng, space: &Arc<GradedSpace>, degree: i64) -> GradedMap<Scalar> {
    let mut f = GradedMap::zero(space.clone(), space.clone(), degree);
    let degrees: Vec<i64> = space.degrees().collect();
    for &src_deg in &degrees {
        for src in space.labels(src_deg).to_vec() {
            for tgt in space.labels(src_deg + degree).to_vec() {
                let c = rng.gen_range(-2..=2i64);
                if c != 0 {
                    f.add_entry(&src, &tgt, &Scalar::from_int(c))
                        .expect("entry degrees match by construction");
                }
            }
        }
    }
    f
}

/// A degree-1 map supported only on even-degree sources, so its square
/// is zero by a degree argument.
pub fn random_square_zero_map(rng: &mut StdRng, space: &Arc<GradedSpace>) -> GradedMap<Scalar> {
    let mut f = GradedMap::zero(space.clone(), space.clone(), 1);
    let degrees: Vec<i64> = space.degrees().collect();
    for &src_deg in &degrees {
        if src_deg.rem_euclid(2) != 0 {
            continue;
        }
        for src in space.labels(src_deg).to_vec() {
            for tgt in space.labels(src_deg + 1).to_vec() {
                let c = rng.gen_range(-2..=2i64);
                if c != 0 {
                    f.add_entry(&src, &tgt, &Scalar::from_int(c))
                        .expect("entry degrees match by construction");
                }
            }
        }
    }
    f
}

//! Weighted digraphs and their path kernels: the sum of weight products
//! over all length-n walks between two vertices. Includes the built-in
//! multi-index graph whose kernel values starting from the empty tuple
//! reproduce the expansion coefficients `c(s,n)` along a second route.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Debug;
use std::hash::Hash;

use crate::multiindex::MultiIndex;
use crate::ring::{sign, Ring};
use crate::scalar::Scalar;

/// A directed graph with rational edge weights. Parallel edges are
/// allowed; `neighbors` lists them in a fixed order.
pub trait Digraph {
    type V: Clone + Eq + Ord + Hash + Debug;

    fn neighbors(&self, v: &Self::V) -> Vec<(Self::V, Scalar)>;
}

/// All vertices reachable in exactly `n` steps from `x`, with the summed
/// path weights; vertices whose weights cancel to zero are dropped.
pub fn kernel_layer<G: Digraph>(g: &G, n: u32, x: &G::V) -> BTreeMap<G::V, Scalar> {
    let mut layer = BTreeMap::from([(x.clone(), Scalar::one())]);
    for _ in 0..n {
        let mut next: BTreeMap<G::V, Scalar> = BTreeMap::new();
        for (v, c) in &layer {
            for (w, weight) in g.neighbors(v) {
                let entry = next.entry(w).or_insert_with(Scalar::zero);
                *entry = entry.add(&c.mul(&weight));
            }
        }
        next.retain(|_, c| !c.is_zero());
        layer = next;
    }
    layer
}

/// The length-n path kernel `K_n(x, y)`.
pub fn kernel<G: Digraph>(g: &G, n: u32, x: &G::V, y: &G::V) -> Scalar {
    kernel_layer(g, n, x)
        .get(y)
        .cloned()
        .unwrap_or_else(Scalar::zero)
}

/// Every length-n walk from `x` to `y` with its weight product, in
/// depth-first order. The weights sum to `kernel(g, n, x, y)`; this is
/// the slow route used to cross-check the layered computation.
pub fn enumerate_paths<G: Digraph>(
    g: &G,
    n: u32,
    x: &G::V,
    y: &G::V,
) -> Vec<(Vec<G::V>, Scalar)> {
    let mut out = Vec::new();
    let mut path = vec![x.clone()];
    walk(g, n, y, &mut path, Scalar::one(), &mut out);
    out
}

fn walk<G: Digraph>(
    g: &G,
    remaining: u32,
    target: &G::V,
    path: &mut Vec<G::V>,
    weight: Scalar,
    out: &mut Vec<(Vec<G::V>, Scalar)>,
) {
    if remaining == 0 {
        if path.last().unwrap() == target {
            out.push((path.clone(), weight));
        }
        return;
    }
    let current = path.last().unwrap().clone();
    for (w, c) in g.neighbors(&current) {
        path.push(w);
        walk(g, remaining - 1, target, path, weight.mul(&c), out);
        path.pop();
    }
}

/// The multi-index graph: from `s`, one edge to `(0, s)` with weight 1,
/// a loop at `s` with weight `(-1)^{|s|+l(s)}`, and for each position i
/// an edge to `s + e_i` with weight `(-1)^{|s_{<i}|+i}` (0-based i).
///
/// Its length-n kernel from the empty tuple computes `c(s,n)`.
pub struct LGraph;

impl Digraph for LGraph {
    type V = MultiIndex;

    fn neighbors(&self, v: &MultiIndex) -> Vec<(MultiIndex, Scalar)> {
        let mut out = Vec::with_capacity(v.len() + 2);
        out.push((v.prepend_zero(), Scalar::one()));
        out.push((v.clone(), sign(i64::from(v.weight()) + v.len() as i64)));
        for i in 0..v.len() {
            out.push((
                v.plus_unit(i),
                sign(i64::from(v.prefix_weight(i)) + i as i64),
            ));
        }
        out
    }
}

/// `c(s,n)` computed as a path sum on [`LGraph`], independently of the
/// memoized recurrence table.
pub fn c_oracle(s: &MultiIndex, n: u32) -> Scalar {
    kernel(&LGraph, n, &MultiIndex::empty(), s)
}

/// A finite digraph over string vertex names, built from an edge list.
/// Edges keep their insertion order per source vertex.
#[derive(Clone, Debug, Default)]
pub struct AdjacencyGraph {
    out_edges: HashMap<String, Vec<(String, Scalar)>>,
    vertices: Vec<String>,
}

impl AdjacencyGraph {
    pub fn new() -> Self {
        AdjacencyGraph::default()
    }

    pub fn from_edges<I>(edges: I) -> Self
    where
        I: IntoIterator<Item = (String, String, Scalar)>,
    {
        let mut g = AdjacencyGraph::new();
        for (from, to, weight) in edges {
            g.add_edge(from, to, weight);
        }
        g
    }

    pub fn add_edge(&mut self, from: String, to: String, weight: Scalar) {
        self.note_vertex(&from);
        self.note_vertex(&to);
        self.out_edges.entry(from).or_default().push((to, weight));
    }

    fn note_vertex(&mut self, v: &str) {
        if !self.vertices.iter().any(|x| x == v) {
            self.vertices.push(v.to_string());
        }
    }

    /// Vertices in first-seen order.
    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn contains(&self, v: &str) -> bool {
        self.vertices.iter().any(|x| x == v)
    }
}

impl Digraph for AdjacencyGraph {
    type V = String;

    fn neighbors(&self, v: &String) -> Vec<(String, Scalar)> {
        self.out_edges.get(v).cloned().unwrap_or_default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mc::c_coeff;
    use crate::multiindex::enumerate_admissible;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn mi(parts: &[u32]) -> MultiIndex {
        MultiIndex::new(parts)
    }

    #[test]
    fn neighbor_lists_are_in_the_documented_order() {
        let empty = MultiIndex::empty();
        assert_eq!(
            LGraph.neighbors(&empty),
            vec![(mi(&[0]), s(1)), (empty.clone(), s(1))]
        );
        assert_eq!(
            LGraph.neighbors(&mi(&[0])),
            vec![
                (mi(&[0, 0]), s(1)),
                (mi(&[0]), s(-1)),
                (mi(&[1]), s(1)),
            ]
        );
        // Increment weights depend on the prefix weight and position.
        let v = mi(&[1, 0]);
        let inc: Vec<(MultiIndex, Scalar)> =
            LGraph.neighbors(&v).into_iter().skip(2).collect();
        assert_eq!(inc, vec![(mi(&[2, 0]), s(1)), (mi(&[1, 1]), s(1))]);
    }

    #[test]
    fn small_kernels_match_hand_sums() {
        let empty = MultiIndex::empty();
        // Two length-2 walks to (0) cancel: loop-then-step and step-then-loop.
        assert_eq!(kernel(&LGraph, 2, &empty, &mi(&[0])), s(0));
        assert_eq!(kernel(&LGraph, 2, &empty, &mi(&[1])), s(1));
        assert_eq!(kernel(&LGraph, 2, &empty, &mi(&[0, 0])), s(1));
        assert_eq!(kernel(&LGraph, 5, &empty, &empty), s(1));
    }

    #[test]
    fn layers_stay_inside_the_admissible_set() {
        let empty = MultiIndex::empty();
        for n in 0..=6 {
            for v in kernel_layer(&LGraph, n, &empty).keys() {
                assert!(
                    v.admissible(n),
                    "vertex {v} outside the admissible set at n = {n}"
                );
            }
        }
    }

    #[test]
    fn path_enumeration_sums_to_the_kernel() {
        let empty = MultiIndex::empty();
        for n in 0..=5 {
            for target in enumerate_admissible(n) {
                let total = enumerate_paths(&LGraph, n, &empty, &target)
                    .into_iter()
                    .fold(Scalar::zero(), |acc, (_, w)| acc.add(&w));
                assert_eq!(
                    total,
                    kernel(&LGraph, n, &empty, &target),
                    "n = {n}, target = {target}"
                );
            }
        }
    }

    #[test]
    fn chapman_kolmogorov_composition() {
        let empty = MultiIndex::empty();
        for (n, m) in [(1u32, 2u32), (2, 2), (3, 1)] {
            for target in enumerate_admissible(n + m) {
                let direct = kernel(&LGraph, n + m, &empty, &target);
                let mut composed = Scalar::zero();
                for (z, w) in kernel_layer(&LGraph, n, &empty) {
                    composed = composed.add(&w.mul(&kernel(&LGraph, m, &z, &target)));
                }
                assert_eq!(direct, composed, "n = {n}, m = {m}, target = {target}");
            }
        }
    }

    #[test]
    fn oracle_agrees_with_the_recurrence_table() {
        for n in 0..=6 {
            for s_idx in enumerate_admissible(n) {
                assert_eq!(
                    c_oracle(&s_idx, n),
                    c_coeff(&s_idx, n),
                    "s = {s_idx}, n = {n}"
                );
            }
        }
    }

    #[test]
    fn string_graphs_walk_with_weights() {
        let g = AdjacencyGraph::from_edges([
            ("a".to_string(), "b".to_string(), s(2)),
            ("b".to_string(), "c".to_string(), s(-3)),
            ("a".to_string(), "c".to_string(), s(1)),
            ("c".to_string(), "c".to_string(), s(1)),
        ]);
        assert_eq!(kernel(&g, 2, &"a".to_string(), &"c".to_string()), s(-5));
        let layer = kernel_layer(&g, 1, &"a".to_string());
        assert_eq!(layer.get("b"), Some(&s(2)));
        assert_eq!(layer.get("c"), Some(&s(1)));
        assert_eq!(g.vertices(), &["a", "b", "c"]);
        let paths = enumerate_paths(&g, 2, &"a".to_string(), &"c".to_string());
        assert_eq!(paths.len(), 2);
    }
}

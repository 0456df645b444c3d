#![allow(dead_code)]

use clawsq::corpus::{gen_line_graph, random_bounded_degree, rng};
use clawsq::{build_graph, Graph};
use proptest::prelude::*;

/// Arbitrary simple graph on up to `max_n` vertices.
pub fn any_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut e = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        e.push((u, v));
                    }
                    k += 1;
                }
            }
            build_graph(n, &e).unwrap()
        })
    })
}

/// Line graph of a seeded random root with the given maximum degree.
pub fn random_line_graph(seed: u64, edges: usize, max_degree: usize) -> (Graph, Graph) {
    let mut r = rng(seed);
    let vertices = (2 * edges).div_ceil(max_degree) + 2;
    let f = random_bounded_degree(vertices, edges, max_degree, &mut r);
    (gen_line_graph(&f).0, f)
}

mod common;

use clawsq::analysis::{find_claw, is_claw_free};
use clawsq::build_graph;
use clawsq::corpus::{named, rng};
use clawsq::oracle::brute_force_claw_free;
use rand::Rng;

#[test]
fn finder_agrees_with_enumeration_on_random_graphs() {
    let mut r = rng(7);
    for _ in 0..1000 {
        let n = r.gen_range(0..=16);
        let p: f64 = r.gen_range(0.05..0.95);
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if r.gen_bool(p) {
                    e.push((u, v));
                }
            }
        }
        let g = build_graph(n, &e).unwrap();
        let fast = find_claw(&g);
        assert_eq!(fast.is_none(), brute_force_claw_free(&g), "{:?}", g.edges());
        if let Some(w) = fast {
            let [a, b, c] = w.leaves;
            assert!([a, b, c].iter().all(|&x| g.has_edge(w.center, x)));
            assert!(!g.has_edge(a, b) && !g.has_edge(a, c) && !g.has_edge(b, c));
        }
    }
}

#[test]
fn line_graphs_are_claw_free() {
    for seed in 0..50 {
        let (l, _) = common::random_line_graph(seed, 25, 5);
        assert!(is_claw_free(&l));
    }
    assert!(!is_claw_free(&named::complete_bipartite(1, 3)));
    assert!(!is_claw_free(&named::petersen()));
}

mod common;

use clawsq::corpus::{gen_line_graph, named, permute, random_regular, rng};
use clawsq::structure::neighborhood_shape;
use clawsq::structure::{
    classify, find_reducible_vertex, krausz_partition, root_graph, verify_reduction, Classification, NeighborhoodShape,
};
use common::random_line_graph;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn classification_witnesses_verify(seed in any::<u64>(), edges in 3usize..40, d in 3usize..=4) {
        let (l, _) = random_line_graph(seed, edges, d);
        for comp in l.connected_components() {
            let (h, _) = l.induced_subgraph(&comp).unwrap();
            let w = h.clique_number();
            prop_assume!(matches!(w, 3 | 4));
            let c = classify(&h, w).unwrap();
            prop_assert!(c.verify(&h, w));
        }
    }

    #[test]
    fn reductions_recheck(seed in any::<u64>(), edges in 3usize..40) {
        let (l, _) = random_line_graph(seed, edges, 4);
        if let Some(r) = find_reducible_vertex(&l, 4, 19) {
            prop_assert!(verify_reduction(&l, &r));
        }
    }

    #[test]
    fn shapes_are_relabelling_invariant(seed in any::<u64>(), edges in 3usize..30) {
        let (l, _) = random_line_graph(seed, edges, 4);
        let p = permute(&l, &mut rng(seed));
        let shapes = |g: &clawsq::Graph| {
            let mut v: Vec<String> = (0..g.n()).map(|x| format!("{:?}", neighborhood_shape(g, x).unwrap())).collect();
            v.sort();
            v
        };
        prop_assert_eq!(shapes(&l), shapes(&p));
    }
}

#[test]
fn cubic_girth_five_roots_are_recovered() {
    let mut found = 0;
    for seed in 0..200 {
        let f = random_regular(14, 3, &mut rng(seed)).unwrap();
        let l = gen_line_graph(&f).0;
        if !l.is_connected() || find_reducible_vertex(&l, 3, 9).is_some() {
            continue;
        }
        match classify(&l, 3).unwrap() {
            Classification::LineGraph { root } => {
                assert!(root.reconstructs(&l));
                assert_eq!(root.f.edge_count(), f.edge_count());
                found += 1;
            }
            other => panic!("seed {seed}: {}", other.summary()),
        }
    }
    assert!(found > 0);
}

#[test]
fn quartic_roots_are_recovered() {
    for f in [named::robertson(), named::quartic_girth5()] {
        let l = gen_line_graph(&f).0;
        let p = krausz_partition(&l, 4).unwrap().expect("line graph partition");
        let root = root_graph(&l, &p).unwrap();
        assert!(root.reconstructs(&l));
        assert_eq!((root.f.n(), root.f.edge_count(), root.max_degree()), (f.n(), f.edge_count(), 4));
    }
}

#[test]
fn octahedron_neighbourhood_is_not_a_clique_pair() {
    // C4 splits into two edges in two different ways
    let g = named::octahedron();
    assert_eq!(neighborhood_shape(&g, 0).unwrap(), NeighborhoodShape::Other);
}

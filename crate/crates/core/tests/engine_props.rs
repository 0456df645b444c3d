mod common;

use clawsq::corpus::{gen_random_claw_free, named, permute, rng, RandomStrategy};
use clawsq::engine::{
    bound_for_omega, color_icosahedron, color_small_omega, greedy_reduce, strong_edge_color, trivial_greedy_square,
    EngineParams,
};
use clawsq::oracle::{exact_chromatic, exact_strong_chromatic_index};
use clawsq::structure::recognize_icosahedron;
use clawsq::{color_square, verify_coloring, Coloring, Error};
use common::random_line_graph;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn line_graphs_colour_within_bound(seed in any::<u64>(), edges in 1usize..40, d in 2usize..=5) {
        let (l, _) = random_line_graph(seed, edges, d);
        let c = color_square(&l).unwrap();
        prop_assert!(verify_coloring(&l, &c).unwrap());
        prop_assert!(c.palette_size() <= bound_for_omega(l.clique_number()));
    }

    #[test]
    fn random_claw_free_colour_within_bound(seed in any::<u64>(), n in 1usize..30, w in 3usize..=5, s in 0usize..2) {
        let strategy = [RandomStrategy::LineGraph, RandomStrategy::Blowup][s];
        let (g, _) = gen_random_claw_free(n, w, strategy, seed).unwrap();
        let c = color_square(&g).unwrap();
        prop_assert!(verify_coloring(&g, &c).unwrap());
        prop_assert!(c.palette_size() <= bound_for_omega(g.clique_number()));
    }

    #[test]
    fn never_beats_the_oracle(seed in any::<u64>(), edges in 1usize..14) {
        let (l, _) = random_line_graph(seed, edges, 4);
        prop_assume!(l.n() <= 14);
        let c = color_square(&l).unwrap();
        let chi = exact_chromatic(&l.square(), 30).unwrap().value.unwrap();
        prop_assert!(chi <= c.palette_size());
    }

    #[test]
    fn strong_colouring_of_subcubic_roots(seed in any::<u64>(), edges in 1usize..30) {
        let (l, f) = random_line_graph(seed, edges, 3);
        let s = strong_edge_color(&f, 10).unwrap();
        prop_assert!(s.palette_size <= 10);
        // pulled back onto the line graph it must be a square colouring
        let c = Coloring::new(s.edge_colors.clone());
        prop_assert!(verify_coloring(&l, &c).unwrap());
    }

    #[test]
    fn greedy_reduce_is_sound_under_relabelling(seed in any::<u64>(), edges in 4usize..30) {
        let (l, _) = random_line_graph(seed, edges, 4);
        let w = l.clique_number();
        prop_assume!(matches!(w, 3 | 4));
        let p = permute(&l, &mut rng(seed));
        let c = greedy_reduce(&p, EngineParams::for_omega(w).unwrap()).unwrap();
        prop_assert!(verify_coloring(&p, &c).unwrap());
        prop_assert!(c.palette_size() <= bound_for_omega(w));
    }
}

#[test]
fn relabelled_icosahedron_keeps_six() {
    for seed in 0..20 {
        let g = permute(&named::icosahedron(), &mut rng(seed));
        let pairs = recognize_icosahedron(&g).unwrap();
        let c = color_icosahedron(&g, &pairs).unwrap();
        assert_eq!(c.palette_size(), 6);
        assert_eq!(color_square(&g).unwrap().palette_size(), 6);
    }
}

#[test]
fn small_omega_matches_oracle() {
    for n in 4..=14 {
        let g = named::cycle(n);
        let c = color_small_omega(&g).unwrap();
        let chi = exact_chromatic(&g.square(), 10).unwrap().value.unwrap();
        assert_eq!(c.palette_size(), chi, "C{n}");
    }
    assert_eq!(color_small_omega(&named::path(2)).unwrap().palette_size(), 2);
}

#[test]
fn strong_colouring_hits_the_optimum_on_known_roots() {
    for f in [named::claw(), named::complete(4), named::petersen(), named::cube()] {
        let s = strong_edge_color(&f, 10).unwrap();
        let exact = exact_strong_chromatic_index(&f, 10).unwrap().value.unwrap();
        assert!(exact <= s.palette_size && s.palette_size <= 10);
    }
    assert_eq!(strong_edge_color(&named::complete(4), 6).unwrap().palette_size, 6);
    assert!(matches!(strong_edge_color(&named::complete(5), 9), Err(Error::BudgetExhausted(9))));
}

#[test]
fn quartic_girth_five_roots_fit_in_22() {
    for f in [named::robertson(), named::quartic_girth5()] {
        let s = strong_edge_color(&f, 22).unwrap();
        assert!(s.palette_size <= 22);
    }
}

#[test]
fn trivial_greedy_respects_square_degree() {
    for seed in 0..30 {
        let (g, _) = gen_random_claw_free(20, 6, RandomStrategy::LineGraph, seed).unwrap();
        let c = trivial_greedy_square(&g);
        assert!(verify_coloring(&g, &c).unwrap());
        let max_sq = (0..g.n()).map(|v| g.square_degree(v).unwrap()).max().unwrap_or(0);
        assert!(c.palette_size() <= max_sq + 1);
    }
}

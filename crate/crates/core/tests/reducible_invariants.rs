use clawsq::corpus::standard_corpus;
use clawsq::structure::{classify, classify_very_bad, Classification};

#[test]
fn reducible_vertices_have_tame_neighbourhoods() {
    let mut checked = 0;
    for e in standard_corpus(2024) {
        for comp in e.graph.connected_components() {
            let (h, _) = e.graph.induced_subgraph(&comp).unwrap();
            let w = h.clique_number();
            let Ok(Classification::Reducible(r)) = classify(&h, w) else { continue };
            let v = r.vertex;
            match w {
                3 => {
                    for &x in h.neighbors(v) {
                        assert!(h.square_degree(x).unwrap() <= 11, "{}: neighbour {x} of {v}", e.id);
                    }
                }
                4 => {
                    let vb = classify_very_bad(&h, 4).unwrap().very_bad;
                    let b: Vec<usize> = h.neighbors(v).iter().copied().filter(|x| vb.contains(x)).collect();
                    let sq = h.delete_vertex(v).unwrap().square();
                    let s = |x: usize| if x > v { x - 1 } else { x };
                    for (i, &x) in b.iter().enumerate() {
                        for &y in &b[i + 1..] {
                            assert!(sq.has_edge(s(x), s(y)), "{}: very bad {x},{y} at {v}", e.id);
                        }
                    }
                }
                _ => continue,
            }
            checked += 1;
        }
    }
    assert!(checked > 300);
}

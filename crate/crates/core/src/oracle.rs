//! Exact reference solvers for cross-checking the constructive engine.
//!
//! These deliberately use plain adjacency matrices and their own
//! backtracking; only the clique lower bound is shared with the graph core.

use std::time::{Duration, Instant};

use crate::coloring::{is_proper, Coloring};
use crate::corpus::gen_line_graph;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_NODE_LIMIT: u64 = 100_000_000;

#[derive(Debug, Clone)]
pub struct ExactResult {
    /// The chromatic number, or `None` when it exceeds the requested cap.
    pub value: Option<usize>,
    /// Clique lower bound used to seed the search.
    pub lower_bound: usize,
    pub witness: Option<Coloring>,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

/// Induced claw test by enumerating every centre and leaf triple.
pub fn brute_force_claw_free(g: &Graph) -> bool {
    let n = g.n();
    for c in 0..n {
        for a in 0..n {
            if a == c || !g.has_edge(c, a) {
                continue;
            }
            for b in a + 1..n {
                if b == c || !g.has_edge(c, b) || g.has_edge(a, b) {
                    continue;
                }
                for d in b + 1..n {
                    if d != c && g.has_edge(c, d) && !g.has_edge(a, d) && !g.has_edge(b, d) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

struct Search<'a> {
    adj: &'a [Vec<bool>],
    colors: Vec<Option<usize>>,
    nodes: u64,
    limit: u64,
}

impl Search<'_> {
    fn saturation(&self, v: usize) -> usize {
        let mut seen = 0u128;
        let mut big = Vec::new();
        for (u, &e) in self.adj[v].iter().enumerate() {
            if let (true, Some(c)) = (e, self.colors[u]) {
                if c < 128 {
                    seen |= 1 << c;
                } else if !big.contains(&c) {
                    big.push(c);
                }
            }
        }
        seen.count_ones() as usize + big.len()
    }

    /// Backtracking k-colouring; picks the lowest-index vertex of maximum
    /// saturation and only opens one new colour per level.
    fn solve(&mut self, k: usize, used: usize) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(Error::Timeout(self.limit));
        }
        let n = self.colors.len();
        let mut pick = None;
        let mut best = 0;
        for v in 0..n {
            if self.colors[v].is_none() {
                let s = self.saturation(v);
                if pick.is_none() || s > best {
                    pick = Some(v);
                    best = s;
                }
            }
        }
        let Some(v) = pick else { return Ok(true) };
        for c in 0..k.min(used + 1) {
            let clash = (0..n).any(|u| self.adj[v][u] && self.colors[u] == Some(c));
            if clash {
                continue;
            }
            self.colors[v] = Some(c);
            if self.solve(k, used.max(c + 1))? {
                return Ok(true);
            }
            self.colors[v] = None;
        }
        Ok(false)
    }
}

pub fn exact_chromatic(g: &Graph, upper: usize) -> Result<ExactResult> {
    exact_chromatic_with_limit(g, upper, DEFAULT_NODE_LIMIT)
}

/// Exact chromatic number of `g` if it is at most `upper`.
///
/// Every palette size from the clique bound upwards is refuted by
/// exhaustive search until one succeeds, so a returned value is certified
/// optimal.
pub fn exact_chromatic_with_limit(g: &Graph, upper: usize, node_limit: u64) -> Result<ExactResult> {
    let start = Instant::now();
    let n = g.n();
    let adj: Vec<Vec<bool>> = (0..n).map(|u| (0..n).map(|v| g.has_edge(u, v)).collect()).collect();
    let lower = g.clique_number();

    // first-fit in index order
    let mut greedy = vec![0usize; n];
    for v in 0..n {
        let mut c = 0;
        while (0..v).any(|u| adj[v][u] && greedy[u] == c) {
            c += 1;
        }
        greedy[v] = c;
    }
    let greedy_value = greedy.iter().max().map_or(0, |&m| m + 1);

    let mut search = Search { adj: &adj, colors: vec![None; n], nodes: 0, limit: node_limit };
    let mut value = None;
    let mut witness = None;
    for k in lower..greedy_value.min(upper + 1) {
        search.colors.iter_mut().for_each(|c| *c = None);
        if search.solve(k, 0)? {
            let w = Coloring::new(search.colors.iter().map(|c| c.unwrap()).collect());
            value = Some(k);
            witness = Some(w);
            break;
        }
    }
    if value.is_none() && greedy_value <= upper {
        value = Some(greedy_value);
        witness = Some(Coloring::new(greedy));
    }
    if let Some(w) = &witness {
        debug_assert!(is_proper(g, w));
    }
    Ok(ExactResult { value, lower_bound: lower, witness, nodes_explored: search.nodes, elapsed: start.elapsed() })
}

/// Strong chromatic index of `f`, i.e. the chromatic number of `L(f)²`.
/// The witness colours edges in `f.edges()` order.
pub fn exact_strong_chromatic_index(f: &Graph, upper: usize) -> Result<ExactResult> {
    let conflict = gen_line_graph(f).0.square();
    exact_chromatic(&conflict, upper)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{gen_blowup_c5, named, BlowupSpec};

    #[test]
    fn chromatic_examples() {
        let r = exact_chromatic(&named::complete(10), 20).unwrap();
        assert_eq!(r.value, Some(10));
        let r = exact_chromatic(&named::icosahedron().square(), 20).unwrap();
        assert_eq!(r.value, Some(6));
        assert_eq!(r.lower_bound, 6);
        let r = exact_chromatic(&named::cycle(7).square(), 20).unwrap();
        assert_eq!(r.value, Some(4));
        assert!(is_proper(&named::cycle(7).square(), r.witness.as_ref().unwrap()));
    }

    #[test]
    fn chromatic_above_cap() {
        let r = exact_chromatic(&named::complete(6), 4).unwrap();
        assert_eq!(r.value, None);
        assert!(r.witness.is_none());
    }

    #[test]
    fn refutes_below_optimum() {
        // C5 has clique number 2 but needs 3 colours
        let r = exact_chromatic(&named::cycle(5), 10).unwrap();
        assert_eq!((r.lower_bound, r.value), (2, Some(3)));
        assert!(r.nodes_explored > 0);
    }

    #[test]
    fn node_limit_is_enforced() {
        let g = named::cycle(7).square();
        assert!(matches!(exact_chromatic_with_limit(&g, 10, 3), Err(Error::Timeout(3))));
    }

    #[test]
    fn strong_index_examples() {
        assert_eq!(exact_strong_chromatic_index(&named::complete(4), 20).unwrap().value, Some(6));
        let b = gen_blowup_c5(&BlowupSpec::new([1, 1, 1, 2, 2])).unwrap();
        assert_eq!(exact_strong_chromatic_index(&b, 20).unwrap().value, Some(10));
        assert_eq!(exact_strong_chromatic_index(&named::claw(), 5).unwrap().value, Some(3));
    }

    #[test]
    fn claw_brute_force() {
        assert!(!brute_force_claw_free(&named::claw()));
        assert!(brute_force_claw_free(&named::cycle(5)));
        assert!(brute_force_claw_free(&named::line_graph(&named::complete(4)).0));
    }
}

//! Simple undirected graphs on dense `0..n` vertex indices.
//!
//! Each vertex keeps a bitset row of its neighbours (for fast intersection
//! and distance-2 queries) next to a sorted neighbour list (for iteration).
//! Graphs never change after construction; every transformation returns a
//! fresh graph.

use std::collections::VecDeque;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

const WORD: usize = 64;

fn words_for(n: usize) -> usize {
    n.div_ceil(WORD)
}

/// A set of vertex indices drawn from `0..universe`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    words: Vec<u64>,
    universe: usize,
}

impl VertexSet {
    pub fn new(universe: usize) -> Self {
        VertexSet { words: vec![0; words_for(universe)], universe }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::new(universe);
        for v in 0..universe {
            s.insert(v);
        }
        s
    }

    /// Builds a set, rejecting members outside the universe.
    pub fn from_slice(universe: usize, members: &[usize]) -> Result<Self> {
        let mut s = Self::new(universe);
        for &v in members {
            if v >= universe {
                return Err(Error::IndexOutOfRange { index: v, n: universe });
            }
            s.insert(v);
        }
        Ok(s)
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn insert(&mut self, v: usize) -> bool {
        debug_assert!(v < self.universe);
        let (w, b) = (v / WORD, v % WORD);
        let was = self.words[w] >> b & 1 == 1;
        self.words[w] |= 1 << b;
        !was
    }

    #[inline]
    pub fn remove(&mut self, v: usize) -> bool {
        if v >= self.universe {
            return false;
        }
        let (w, b) = (v / WORD, v % WORD);
        let was = self.words[w] >> b & 1 == 1;
        self.words[w] &= !(1 << b);
        was
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.universe && self.words[v / WORD] >> (v % WORD) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * WORD + b)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn subtract(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.subtract(other);
        s
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

/// An immutable simple undirected graph.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    rows: Vec<VertexSet>,
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph").field("n", &self.n).field("edges", &self.edges()).finish()
    }
}

/// Builds a graph from an edge list, rejecting loops, duplicates and
/// out-of-range endpoints.
pub fn build_graph(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
    let mut rows = vec![VertexSet::new(n); n];
    for &(u, v) in edges {
        for x in [u, v] {
            if x >= n {
                return Err(Error::IndexOutOfRange { index: x, n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if rows[u].contains(v) {
            return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
        }
        rows[u].insert(v);
        rows[v].insert(u);
    }
    Ok(Graph::from_rows(rows))
}

impl Graph {
    /// Assembles a graph from symmetric, loop-free adjacency rows.
    fn from_rows(rows: Vec<VertexSet>) -> Graph {
        let n = rows.len();
        let adj: Vec<Vec<usize>> = rows.iter().map(VertexSet::to_vec).collect();
        let degree_sum: usize = adj.iter().map(Vec::len).sum();
        debug_assert!(degree_sum.is_multiple_of(2));
        Graph { n, rows, adj, edge_count: degree_sum / 2 }
    }

    pub fn empty(n: usize) -> Graph {
        Graph::from_rows(vec![VertexSet::new(n); n])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    fn check(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: v, n: self.n })
        }
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        self.check(v)
    }

    /// Sorted neighbour list of `v`. Panics if `v` is out of range.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// Neighbourhood of `v` as a bitset.
    pub fn neighbor_set(&self, v: usize) -> &VertexSet {
        &self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Vertices at distance exactly 1 or 2 from `v`.
    pub fn square_neighbor_set(&self, v: usize) -> VertexSet {
        let mut row = self.rows[v].clone();
        for &w in &self.adj[v] {
            row.union_with(&self.rows[w]);
        }
        row.remove(v);
        row
    }

    /// Degree of `v` in the square, `deg(v) + |N(N(v)) \ {v}|`.
    pub fn square_degree(&self, v: usize) -> Result<usize> {
        self.check(v)?;
        Ok(self.square_neighbor_set(v).len())
    }

    /// `N(N(v)) \ ({v} ∪ N(v))`: the vertices at distance exactly two.
    pub fn second_neighborhood(&self, v: usize) -> VertexSet {
        let mut s = self.square_neighbor_set(v);
        s.subtract(&self.rows[v]);
        s
    }

    pub fn square(&self) -> Graph {
        Graph::from_rows((0..self.n).map(|v| self.square_neighbor_set(v)).collect())
    }

    pub fn is_clique(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| {
            let mut rest = s.clone();
            rest.remove(v);
            rest.is_subset(&self.rows[v])
        })
    }

    pub fn is_independent(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| !self.rows[v].intersects(s))
    }

    /// Breadth-first distance, `None` when `u` and `v` are disconnected.
    pub fn distance(&self, u: usize, v: usize) -> Result<Option<usize>> {
        self.check(u)?;
        self.check(v)?;
        let dist = self.bfs(u);
        Ok(dist[v])
    }

    /// Distances from `source` to every vertex.
    pub fn bfs(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(x) = queue.pop_front() {
            let d = dist[x].unwrap();
            for &y in &self.adj[x] {
                if dist[y].is_none() {
                    dist[y] = Some(d + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// Induced subgraph on `s`, with the map from new to old indices.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<(Graph, Vec<usize>)> {
        if s.universe() > self.n {
            if let Some(bad) = s.iter().find(|&v| v >= self.n) {
                return Err(Error::IndexOutOfRange { index: bad, n: self.n });
            }
        }
        let map: Vec<usize> = s.iter().collect();
        Ok((self.induced_on(&map), map))
    }

    /// Induced subgraph on the listed vertices, in list order; indices must
    /// be valid and distinct.
    pub(crate) fn induced_on(&self, vertices: &[usize]) -> Graph {
        let k = vertices.len();
        let mut inverse = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            inverse[v] = i;
        }
        let rows = vertices
            .iter()
            .map(|&v| {
                let mut row = VertexSet::new(k);
                for &w in &self.adj[v] {
                    if inverse[w] != usize::MAX {
                        row.insert(inverse[w]);
                    }
                }
                row
            })
            .collect();
        Graph::from_rows(rows)
    }

    /// Removes `v`; vertices above `v` shift down by one.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph> {
        self.check(v)?;
        let keep: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
        Ok(self.induced_on(&keep))
    }

    /// Components in order of their smallest vertex.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = VertexSet::new(self.n);
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(x) = stack.pop() {
                comp.insert(x);
                for &y in &self.adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Maximum clique by branch and bound with greedy-colouring bounds.
    ///
    /// Each vertex seeds a search over its higher-indexed neighbours, so the
    /// cost on sparse graphs stays proportional to the neighbourhood sizes.
    pub fn max_clique(&self) -> (usize, VertexSet) {
        let mut best: Vec<usize> = Vec::new();
        let mut current = Vec::new();
        for v in 0..self.n {
            let mut cand = self.rows[v].clone();
            for u in 0..=v {
                cand.remove(u);
            }
            if cand.len() < best.len() {
                continue;
            }
            current.push(v);
            self.expand_clique(&mut current, cand, &mut best);
            current.pop();
        }
        let witness = VertexSet::from_slice(self.n, &best).expect("clique members in range");
        (best.len(), witness)
    }

    pub fn clique_number(&self) -> usize {
        self.max_clique().0
    }

    fn expand_clique(&self, current: &mut Vec<usize>, cand: VertexSet, best: &mut Vec<usize>) {
        if cand.is_empty() {
            if current.len() > best.len() {
                *best = current.clone();
            }
            return;
        }
        let (order, bounds) = self.colour_sort(&cand);
        let mut cand = cand;
        for i in (0..order.len()).rev() {
            if current.len() + bounds[i] <= best.len() {
                return;
            }
            let u = order[i];
            current.push(u);
            let next = cand.intersection(&self.rows[u]);
            self.expand_clique(current, next, best);
            current.pop();
            cand.remove(u);
        }
    }

    /// Greedy colouring of the candidate set; `bounds[i]` is the colour
    /// number of `order[i]`, an upper bound on cliques within `order[..=i]`.
    fn colour_sort(&self, cand: &VertexSet) -> (Vec<usize>, Vec<usize>) {
        let mut uncoloured = cand.clone();
        let mut order = Vec::with_capacity(cand.len());
        let mut bounds = Vec::with_capacity(cand.len());
        let mut colour = 0;
        while !uncoloured.is_empty() {
            colour += 1;
            let mut q = uncoloured.clone();
            while let Some(u) = q.first() {
                q.remove(u);
                q.subtract(&self.rows[u]);
                uncoloured.remove(u);
                order.push(u);
                bounds.push(colour);
            }
        }
        (order, bounds)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, m: &[usize]) -> VertexSet {
        VertexSet::from_slice(n, m).unwrap()
    }

    fn claw() -> Graph {
        build_graph(4, &[(0, 1), (0, 2), (0, 3)]).unwrap()
    }

    fn c5() -> Graph {
        build_graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap()
    }

    fn p4() -> Graph {
        build_graph(4, &[(0, 1), (1, 2), (2, 3)]).unwrap()
    }

    fn k(n: usize) -> Graph {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        build_graph(n, &e).unwrap()
    }

    #[test]
    fn build_examples() {
        let g = claw();
        assert_eq!(g.degree(0), 3);
        assert_eq!(g.edge_count(), 3);
        let e = build_graph(3, &[]).unwrap();
        assert_eq!(e.edge_count(), 0);
        let c = c5();
        assert!((0..5).all(|v| c.degree(v) == 2));
    }

    #[test]
    fn build_errors() {
        assert_eq!(build_graph(3, &[(0, 3)]), Err(Error::IndexOutOfRange { index: 3, n: 3 }));
        assert_eq!(build_graph(3, &[(1, 1)]), Err(Error::SelfLoop(1)));
        assert_eq!(build_graph(3, &[(0, 1), (1, 0)]), Err(Error::DuplicateEdge(0, 1)));
    }

    #[test]
    fn square_examples() {
        assert_eq!(c5().square(), k(5));
        let sq = p4().square();
        assert_eq!(sq.edges(), vec![(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]);
        assert!(!sq.has_edge(0, 3));
        assert_eq!(Graph::empty(4).square().edge_count(), 0);
    }

    #[test]
    fn square_degree_examples() {
        assert!((0..4).all(|v| k(4).square_degree(v).unwrap() == 3));
        assert_eq!(p4().square_degree(0).unwrap(), 2);
        assert!(p4().square_degree(4).is_err());
    }

    #[test]
    fn induced_examples() {
        let (g, map) = c5().induced_subgraph(&set(5, &[0, 1, 2])).unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
        assert_eq!(map, vec![0, 1, 2]);
        let (g, _) = k(4).induced_subgraph(&set(4, &[1, 2, 3])).unwrap();
        assert_eq!(g, k(3));
        let (g, _) = claw().induced_subgraph(&set(4, &[1, 2, 3])).unwrap();
        assert_eq!(g.edge_count(), 0);
        assert!(claw().induced_subgraph(&set(9, &[7])).is_err());
    }

    #[test]
    fn delete_examples() {
        assert_eq!(k(4).delete_vertex(0).unwrap(), k(3));
        assert_eq!(c5().delete_vertex(0).unwrap().edges(), vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(claw().delete_vertex(0).unwrap().edge_count(), 0);
    }

    #[test]
    fn squares_do_not_commute_with_deletion() {
        let g = c5();
        let a = g.delete_vertex(0).unwrap().square();
        let b = g.square().delete_vertex(0).unwrap();
        assert_ne!(a, b);
        // isolated vertex: they agree
        let h = build_graph(4, &[(1, 2), (2, 3)]).unwrap();
        assert_eq!(h.delete_vertex(0).unwrap().square(), h.square().delete_vertex(0).unwrap());
    }

    #[test]
    fn components() {
        let two = build_graph(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let comps = two.connected_components();
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.len() == 3));
        assert_eq!(c5().connected_components().len(), 1);
        assert_eq!(Graph::empty(3).connected_components().len(), 3);
    }

    #[test]
    fn clique_examples() {
        assert_eq!(k(4).max_clique().0, 4);
        let octahedron = build_graph(
            6,
            &[(0, 2), (0, 3), (0, 4), (0, 5), (1, 2), (1, 3), (1, 4), (1, 5), (2, 4), (2, 5), (3, 4), (3, 5)],
        )
        .unwrap();
        let (size, w) = octahedron.max_clique();
        assert_eq!(size, 3);
        assert!(octahedron.is_clique(&w));
        assert_eq!(Graph::empty(0).max_clique().0, 0);
        assert_eq!(Graph::empty(3).max_clique().0, 1);
    }

    #[test]
    fn plumbing() {
        let g = p4();
        assert_eq!(g.neighbors(1), &[0, 2]);
        assert_eq!(g.max_degree(), 2);
        assert!(g.is_clique(&set(4, &[1, 2])));
        assert!(!g.is_clique(&set(4, &[0, 2])));
        assert!(g.is_independent(&set(4, &[0, 2])));
        assert!(!g.is_independent(&set(4, &[0, 1])));
        assert_eq!(g.distance(0, 3).unwrap(), Some(3));
        assert_eq!(Graph::empty(2).distance(0, 1).unwrap(), None);
    }
}

//! Structural classification of connected claw-free graphs.
//!
//! A graph with clique number 3 or 4 either has a *reducible* vertex (small
//! square degree and a tame neighbourhood), is the icosahedron, or is a line
//! graph whose root can be read off the neighbourhood structure. The
//! functions here find whichever outcome applies and attach a witness that
//! can be checked independently.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::analysis::require_claw_free;
use crate::error::{Error, Result};
use crate::graph::{build_graph, Graph, VertexSet};

/// Shape of `G[N(v)]` in terms of a cover by two cliques.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "shape", rename_all = "kebab-case")]
pub enum NeighborhoodShape {
    /// Two disjoint edges with nothing between them.
    TwoDisjointEdges,
    /// Disjoint cliques of sizes `a <= b` with no edges between them. `a`
    /// may be zero when the neighbourhood is a single clique.
    CliquePair {
        a: usize,
        b: usize,
    },
    /// Cliques of sizes `a <= b` joined by `k` cross edges (`k` is 1, or 2
    /// non-incident edges), where this cover is the only one with `k`
    /// cross edges.
    CliquePairPlusEdges {
        a: usize,
        b: usize,
        k: usize,
    },
    FiveCycle,
    Other,
}

/// A two-clique split of a neighbourhood with its cross edges.
type Split = (Vec<usize>, Vec<usize>, Vec<(usize, usize)>);
type CrossEdges<'a> = dyn Fn(&[usize], &[usize]) -> Vec<(usize, usize)> + 'a;

/// The two-clique covers of `G[N(v)]` with the fewest cross edges.
struct CliqueCover {
    cross: usize,
    covers: Vec<(Vec<usize>, Vec<usize>)>,
}

fn clique_covers(g: &Graph, v: usize) -> Option<CliqueCover> {
    let nb = g.neighbors(v);
    let m = nb.len();
    // components of the complement of G[N(v)], 2-coloured
    let mut side = vec![usize::MAX; m];
    let mut comps: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for s in 0..m {
        if side[s] != usize::MAX {
            continue;
        }
        let mut parts = (Vec::new(), Vec::new());
        side[s] = 0;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            if side[x] == 0 {
                parts.0.push(x)
            } else {
                parts.1.push(x)
            }
            for y in 0..m {
                if y == x || g.has_edge(nb[x], nb[y]) {
                    continue;
                }
                if side[y] == usize::MAX {
                    side[y] = 1 - side[x];
                    stack.push(y);
                } else if side[y] == side[x] {
                    return None;
                }
            }
        }
        comps.push(parts);
    }

    let cross_between = |xs: &[usize], ys: &[usize]| -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for &x in xs {
            for &y in ys {
                if g.has_edge(nb[x], nb[y]) {
                    out.push((x, y));
                }
            }
        }
        out
    };

    let mut found: Vec<Split> = Vec::new();
    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut cross = Vec::new();
    fn assign(
        j: usize,
        comps: &[(Vec<usize>, Vec<usize>)],
        a: &mut Vec<usize>,
        b: &mut Vec<usize>,
        cross: &mut Vec<(usize, usize)>,
        found: &mut Vec<Split>,
        cross_between: &CrossEdges,
    ) {
        if cross.len() > 2 {
            return;
        }
        if j == comps.len() {
            found.push((a.clone(), b.clone(), cross.clone()));
            return;
        }
        let orientations: &[bool] = if j == 0 { &[false] } else { &[false, true] };
        for &flip in orientations {
            let (p, q) = if flip { (&comps[j].1, &comps[j].0) } else { (&comps[j].0, &comps[j].1) };
            let mark = (a.len(), b.len(), cross.len());
            cross.extend(cross_between(p, b));
            cross.extend(cross_between(a, q));
            cross.extend(cross_between(p, q));
            a.extend_from_slice(p);
            b.extend_from_slice(q);
            assign(j + 1, comps, a, b, cross, found, cross_between);
            a.truncate(mark.0);
            b.truncate(mark.1);
            cross.truncate(mark.2);
        }
    }
    assign(0, &comps, &mut a, &mut b, &mut cross, &mut found, &cross_between);

    // two cross edges must be non-incident
    found.retain(|(_, _, c)| c.len() < 2 || (c[0].0 != c[1].0 && c[0].1 != c[1].1));
    let best = found.iter().map(|f| f.2.len()).min()?;
    let covers = found
        .into_iter()
        .filter(|f| f.2.len() == best)
        .map(|(a, b, _)| {
            let mut a: Vec<usize> = a.into_iter().map(|x| nb[x]).collect();
            let mut b: Vec<usize> = b.into_iter().map(|x| nb[x]).collect();
            a.sort_unstable();
            b.sort_unstable();
            if (a.len(), &a) > (b.len(), &b) {
                (b, a)
            } else {
                (a, b)
            }
        })
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    Some(CliqueCover { cross: best, covers })
}

fn is_five_cycle(g: &Graph, v: usize) -> bool {
    if g.degree(v) != 5 {
        return false;
    }
    let (h, _) = g.induced_subgraph(g.neighbor_set(v)).expect("in range");
    (0..5).all(|x| h.degree(x) == 2) && h.is_connected()
}

pub fn neighborhood_shape(g: &Graph, v: usize) -> Result<NeighborhoodShape> {
    g.check_vertex(v)?;
    if let Some(cover) = clique_covers(g, v) {
        let (a, b) = &cover.covers[0];
        let (a, b) = (a.len(), b.len());
        match cover.cross {
            0 if (a, b) == (2, 2) => return Ok(NeighborhoodShape::TwoDisjointEdges),
            0 => return Ok(NeighborhoodShape::CliquePair { a, b }),
            k if cover.covers.len() == 1 => return Ok(NeighborhoodShape::CliquePairPlusEdges { a, b, k }),
            _ => {}
        }
    }
    if is_five_cycle(g, v) {
        return Ok(NeighborhoodShape::FiveCycle);
    }
    Ok(NeighborhoodShape::Other)
}

/// The six neighbourhood shapes that make a vertex not good when the
/// clique number is 4.
const OMEGA4_BAD_SHAPES: [NeighborhoodShape; 6] = [
    NeighborhoodShape::CliquePair { a: 1, b: 3 },
    NeighborhoodShape::CliquePair { a: 2, b: 3 },
    NeighborhoodShape::CliquePairPlusEdges { a: 2, b: 3, k: 1 },
    NeighborhoodShape::CliquePair { a: 3, b: 3 },
    NeighborhoodShape::CliquePairPlusEdges { a: 3, b: 3, k: 1 },
    NeighborhoodShape::CliquePairPlusEdges { a: 3, b: 3, k: 2 },
];

pub fn is_good_vertex(g: &Graph, v: usize, omega: usize) -> Result<bool> {
    let shape = neighborhood_shape(g, v)?;
    match omega {
        3 => Ok(g.degree(v) == 4 && shape != NeighborhoodShape::TwoDisjointEdges),
        4 => Ok(!OMEGA4_BAD_SHAPES.contains(&shape)),
        _ => Err(Error::UnsupportedOmega(omega)),
    }
}

/// Antipodal pairs `(v, u)`, `v < u`, when `g` is the icosahedron.
pub fn recognize_icosahedron(g: &Graph) -> Option<Vec<(usize, usize)>> {
    if g.n() != 12 || (0..12).any(|v| g.degree(v) != 5) || !g.is_connected() {
        return None;
    }
    if !(0..12).all(|v| is_five_cycle(g, v)) {
        return None;
    }
    let mut antipode = [usize::MAX; 12];
    for (v, slot) in antipode.iter_mut().enumerate() {
        let far: Vec<usize> = g.bfs(v).iter().enumerate().filter(|(_, d)| **d == Some(3)).map(|(u, _)| u).collect();
        if far.len() != 1 {
            return None;
        }
        *slot = far[0];
    }
    let mut pairs = Vec::new();
    for v in 0..12 {
        if antipode[antipode[v]] != v {
            return None;
        }
        if v < antipode[v] {
            pairs.push((v, antipode[v]));
        }
    }
    Some(pairs)
}

/// Edge partition into cliques read off the neighbourhoods: each vertex `v`
/// contributes `{v} ∪ A` and `{v} ∪ B` for the unique two-clique cover
/// `(A, B)` of `N(v)`; edges left over become 2-cliques.
///
/// Returns `None` when some vertex is good (for `omega` 3 or 4), when a
/// neighbourhood has no unique cover, or when the result is not a valid
/// line-graph partition.
pub fn krausz_partition(g: &Graph, omega: usize) -> Result<Option<Vec<Vec<usize>>>> {
    if omega < 2 {
        return Err(Error::UnsupportedOmega(omega));
    }
    if matches!(omega, 3 | 4) {
        for v in 0..g.n() {
            if is_good_vertex(g, v, omega)? {
                return Ok(None);
            }
        }
    }
    let mut cliques = BTreeSet::new();
    for v in 0..g.n() {
        let Some(cover) = clique_covers(g, v) else {
            log::debug!("vertex {v}: neighbourhood is not covered by two cliques");
            return Ok(None);
        };
        if cover.covers.len() != 1 {
            log::info!(
                "vertex {v}: {} distinct two-clique covers with {} cross edges",
                cover.covers.len(),
                cover.cross
            );
            return Ok(None);
        }
        let (a, b) = &cover.covers[0];
        for side in [a, b] {
            if !side.is_empty() {
                let mut c = side.clone();
                c.push(v);
                c.sort_unstable();
                cliques.insert(c);
            }
        }
    }
    let mut covered = BTreeSet::new();
    for c in &cliques {
        for (i, &x) in c.iter().enumerate() {
            for &y in &c[i + 1..] {
                covered.insert((x, y));
            }
        }
    }
    for e in g.edges() {
        if !covered.contains(&e) {
            cliques.insert(vec![e.0, e.1]);
        }
    }
    let partition: Vec<Vec<usize>> = cliques.into_iter().collect();
    if partition.iter().any(|c| c.len() > omega) || validate_partition(g, &partition).is_err() {
        log::debug!("designated cliques do not form a line-graph partition");
        return Ok(None);
    }
    Ok(Some(partition))
}

/// Membership lists, after checking the line-graph partition properties.
fn validate_partition(g: &Graph, partition: &[Vec<usize>]) -> Result<Vec<Vec<usize>>> {
    let bad = |m: String| Err(Error::InvalidPartition(m));
    let mut member = vec![Vec::new(); g.n()];
    let mut edge_hits = std::collections::BTreeMap::new();
    for (i, c) in partition.iter().enumerate() {
        if c.len() < 2 {
            return bad(format!("clique {i} has fewer than two vertices"));
        }
        for (k, &x) in c.iter().enumerate() {
            g.check_vertex(x)?;
            member[x].push(i);
            for &y in &c[k + 1..] {
                if x == y || !g.has_edge(x, y) {
                    return bad(format!("clique {i} is not a clique"));
                }
                *edge_hits.entry((x.min(y), x.max(y))).or_insert(0usize) += 1;
            }
        }
    }
    for e in g.edges() {
        match edge_hits.get(&e) {
            Some(1) => {}
            Some(_) => return bad(format!("edge {}-{} lies in several cliques", e.0, e.1)),
            None => return bad(format!("edge {}-{} is not covered", e.0, e.1)),
        }
    }
    if let Some(x) = (0..g.n()).find(|&x| member[x].len() > 2) {
        return bad(format!("vertex {x} lies in {} cliques", member[x].len()));
    }
    Ok(member)
}

/// `g` realised as the line graph of `f`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootGraph {
    #[serde(skip)]
    pub f: Graph,
    /// `edge_of_vertex[x]` is the edge of `f` (as `(a, b)`, `a < b`) that
    /// vertex `x` of `g` stands for.
    pub edge_of_vertex: Vec<(usize, usize)>,
}

impl RootGraph {
    /// True iff `L(f)` is exactly `g` under the bijection.
    pub fn reconstructs(&self, g: &Graph) -> bool {
        let n = g.n();
        if self.edge_of_vertex.len() != n {
            return false;
        }
        let distinct: BTreeSet<_> = self.edge_of_vertex.iter().collect();
        if distinct.len() != n || self.f.edge_count() != n {
            return false;
        }
        if !self.edge_of_vertex.iter().all(|&(a, b)| self.f.has_edge(a, b)) {
            return false;
        }
        for x in 0..n {
            let (a, b) = self.edge_of_vertex[x];
            for y in x + 1..n {
                let (c, d) = self.edge_of_vertex[y];
                let share = a == c || a == d || b == c || b == d;
                if share != g.has_edge(x, y) {
                    return false;
                }
            }
        }
        true
    }

    pub fn max_degree(&self) -> usize {
        self.f.max_degree()
    }
}

/// Builds the root graph of a line-graph partition: one root vertex per
/// clique plus a pendant root vertex for every vertex of `g` in a single
/// clique (two for isolated vertices).
pub fn root_graph(g: &Graph, partition: &[Vec<usize>]) -> Result<RootGraph> {
    let member = validate_partition(g, partition)?;
    let mut next = partition.len();
    let mut ends = Vec::with_capacity(g.n());
    for m in &member {
        let mut e: Vec<usize> = m.clone();
        while e.len() < 2 {
            e.push(next);
            next += 1;
        }
        ends.push((e[0].min(e[1]), e[0].max(e[1])));
    }
    let mut sorted = ends.clone();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::InvalidPartition(format!("two vertices share cliques {} and {}", w[0].0, w[0].1)));
    }
    let f = build_graph(next, &sorted)?;
    let root = RootGraph { f, edge_of_vertex: ends };
    if !root.reconstructs(g) {
        return Err(Error::InvalidPartition("line graph of the root differs from the input".into()));
    }
    Ok(root)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReductionCase {
    /// A neighbour `x*` of square degree at most `K' + 1` exists and the
    /// neighbours above `K' + 2` form a clique in `(G - v)²`.
    Ii,
    /// The neighbours above `K' + 1` form a clique in `(G - v)²`.
    Iii,
}

/// A vertex that can be deleted and re-inserted by the greedy step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Reduction {
    pub vertex: usize,
    pub case: ReductionCase,
    pub xstar: Option<usize>,
    pub k_prime: usize,
}

impl Reduction {
    /// Square-degree threshold above which a neighbour keeps its colour.
    pub fn threshold(&self) -> usize {
        match self.case {
            ReductionCase::Ii => self.k_prime + 2,
            ReductionCase::Iii => self.k_prime + 1,
        }
    }
}

fn square_degrees(g: &Graph) -> Vec<usize> {
    (0..g.n()).map(|v| g.square_neighbor_set(v).len()).collect()
}

/// Whether `b` is a clique in `(g - v)²`.
fn clique_in_square_without(g: &Graph, v: usize, b: &[usize]) -> bool {
    b.iter().enumerate().all(|(i, &x)| {
        b[i + 1..].iter().all(|&y| {
            if g.has_edge(x, y) {
                return true;
            }
            let mut common = g.neighbor_set(x).intersection(g.neighbor_set(y));
            common.remove(v);
            !common.is_empty()
        })
    })
}

/// Smallest vertex meeting case (iii), else smallest meeting case (ii),
/// searching first among vertices with a tame neighbourhood: no neighbour
/// of square degree above 11 at clique number 3, very bad (>= 21)
/// neighbours pairwise close at 4. Case (ii) is not attempted for
/// `omega >= 5`.
pub fn find_reducible_vertex(g: &Graph, omega: usize, k_prime: usize) -> Option<Reduction> {
    let sq = square_degrees(g);
    let above = |v: usize, t: usize| -> Vec<usize> { g.neighbors(v).iter().copied().filter(|&x| sq[x] > t).collect() };
    let all: Vec<usize> = (0..g.n()).filter(|&v| sq[v] <= k_prime).collect();
    // prefer vertices whose neighbourhood has no extremely bad vertex (and,
    // at clique number 4, whose very bad neighbours are pairwise close)
    let tame = |v: usize| match omega {
        3 => g.neighbors(v).iter().all(|&x| sq[x] <= 11),
        4 => clique_in_square_without(g, v, &above(v, 20)),
        _ => true,
    };
    let (preferred, rest): (Vec<usize>, Vec<usize>) = all.iter().partition(|&&v| tame(v));
    for candidates in [preferred, rest] {
        if let Some(r) = reducible_among(g, omega, k_prime, &sq, &candidates) {
            return Some(r);
        }
    }
    None
}

fn reducible_among(g: &Graph, omega: usize, k_prime: usize, sq: &[usize], candidates: &[usize]) -> Option<Reduction> {
    let above = |v: usize, t: usize| -> Vec<usize> { g.neighbors(v).iter().copied().filter(|&x| sq[x] > t).collect() };
    for &v in candidates {
        if clique_in_square_without(g, v, &above(v, k_prime + 1)) {
            return Some(Reduction { vertex: v, case: ReductionCase::Iii, xstar: None, k_prime });
        }
    }
    if omega >= 5 {
        return None;
    }
    for &v in candidates {
        let Some(&xstar) = g.neighbors(v).iter().find(|&&x| sq[x] <= k_prime + 1) else {
            continue;
        };
        if clique_in_square_without(g, v, &above(v, k_prime + 2)) {
            return Some(Reduction { vertex: v, case: ReductionCase::Ii, xstar: Some(xstar), k_prime });
        }
    }
    None
}

/// Re-checks a reduction from scratch using explicit squares of `g` and of
/// `g - v`.
pub fn verify_reduction(g: &Graph, r: &Reduction) -> bool {
    let v = r.vertex;
    if v >= g.n() {
        return false;
    }
    let sq = g.square();
    let deleted = g.delete_vertex(v).expect("in range").square();
    let shift = |x: usize| if x > v { x - 1 } else { x };
    if sq.degree(v) > r.k_prime {
        return false;
    }
    if r.case == ReductionCase::Ii {
        match r.xstar {
            Some(x) if g.has_edge(v, x) && sq.degree(x) <= r.k_prime + 1 => {}
            _ => return false,
        }
    }
    let b: Vec<usize> = g.neighbors(v).iter().copied().filter(|&x| sq.degree(x) > r.threshold()).collect();
    b.iter().enumerate().all(|(i, &x)| b[i + 1..].iter().all(|&y| deleted.has_edge(shift(x), shift(y))))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Classification {
    SmallOmega,
    Icosahedron { pairing: Vec<(usize, usize)> },
    LineGraph { root: RootGraph },
    Reducible(Reduction),
}

impl Classification {
    pub fn summary(&self) -> String {
        match self {
            Classification::SmallOmega => "small-omega".into(),
            Classification::Icosahedron { .. } => "icosahedron".into(),
            Classification::LineGraph { root } => {
                format!("line-graph root n={} m={} maxdeg={}", root.f.n(), root.f.edge_count(), root.max_degree())
            }
            Classification::Reducible(r) => format!(
                "reducible v={} case {}",
                r.vertex,
                match r.case {
                    ReductionCase::Ii => "ii",
                    ReductionCase::Iii => "iii",
                }
            ),
        }
    }

    /// Independent check of the attached witness.
    pub fn verify(&self, g: &Graph, omega: usize) -> bool {
        match self {
            Classification::SmallOmega => omega <= 2 && g.clique_number() <= 2,
            Classification::Icosahedron { pairing } => {
                pairing.len() == 6 && pairing.iter().all(|&(a, b)| g.distance(a, b).ok().flatten() == Some(3))
            }
            Classification::LineGraph { root } => root.reconstructs(g) && root.max_degree() <= omega,
            Classification::Reducible(r) => verify_reduction(g, r),
        }
    }
}

/// The reducible-vertex threshold `K'` for a clique number.
pub fn default_k_prime(omega: usize) -> usize {
    match omega {
        0..=2 => 0,
        3 => 9,
        4 => 19,
        w => 2 * w * (w - 1) - 4,
    }
}

pub fn classify(g: &Graph, omega: usize) -> Result<Classification> {
    require_claw_free(g)?;
    if omega <= 2 {
        return Ok(Classification::SmallOmega);
    }
    classify_with_threshold(g, omega, default_k_prime(omega))
}

/// Classification with an explicit reducible threshold. The input must
/// already be known to be claw-free.
pub fn classify_with_threshold(g: &Graph, omega: usize, k_prime: usize) -> Result<Classification> {
    if omega <= 2 {
        return Ok(Classification::SmallOmega);
    }
    if let Some(r) = find_reducible_vertex(g, omega, k_prime) {
        return Ok(Classification::Reducible(r));
    }
    if omega == 3 {
        if let Some(pairing) = recognize_icosahedron(g) {
            return Ok(Classification::Icosahedron { pairing });
        }
    }
    if let Some(partition) = krausz_partition(g, omega)? {
        let root = root_graph(g, &partition)?;
        return Ok(Classification::LineGraph { root });
    }
    let sq = square_degrees(g);
    let good = if matches!(omega, 3 | 4) {
        (0..g.n()).filter(|&v| is_good_vertex(g, v, omega).unwrap_or(false)).count()
    } else {
        0
    };
    Err(Error::TheoremViolation(format!(
        "n={} m={} omega={omega} K'={k_prime} min square degree={:?} good vertices={good}",
        g.n(),
        g.edge_count(),
        sq.iter().min()
    )))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VeryBad {
    pub very_bad: Vec<usize>,
    /// Only populated for clique number 3 (square degree at least 12).
    pub extremely_bad: Vec<usize>,
}

pub fn classify_very_bad(g: &Graph, omega: usize) -> Result<VeryBad> {
    let sq = square_degrees(g);
    let pick = |f: &dyn Fn(usize) -> bool| (0..g.n()).filter(|&v| f(sq[v])).collect::<Vec<_>>();
    match omega {
        3 => Ok(VeryBad { very_bad: pick(&|d| d == 11), extremely_bad: pick(&|d| d >= 12) }),
        4 => Ok(VeryBad { very_bad: pick(&|d| d >= 21), extremely_bad: Vec::new() }),
        w if w >= 5 => {
            let t = 2 * w * (w - 1) - 2;
            Ok(VeryBad { very_bad: pick(&|d| d >= t), extremely_bad: Vec::new() })
        }
        w => Err(Error::UnsupportedOmega(w)),
    }
}

/// Vertex set helper for callers holding plain index lists.
pub fn as_set(g: &Graph, members: &[usize]) -> Result<VertexSet> {
    VertexSet::from_slice(g.n(), members)
}

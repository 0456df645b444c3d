//! Claw detection and the local counting bounds for claw-free graphs.
//!
//! Every bound is exposed twice: as a plain computation (`z_set`,
//! `q_value`, ...) and as a batch of [`LemmaReport`]s that record the
//! computed left-hand side next to the bound. Bounds are kept as exact
//! rationals; nothing here touches floating point.

use std::collections::HashMap;
use std::fmt;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::par::{self, Execution};

pub type Rational = Ratio<i64>;

fn int(x: usize) -> Rational {
    Rational::from_integer(x as i64)
}

/// An induced `K_{1,3}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClawWitness {
    pub center: usize,
    pub leaves: [usize; 3],
}

impl fmt::Display for ClawWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "center {} with leaves {}, {}, {}", self.center, self.leaves[0], self.leaves[1], self.leaves[2])
    }
}

/// First induced claw in (center, leaves) lexicographic order.
pub fn find_claw(g: &Graph) -> Option<ClawWitness> {
    for v in 0..g.n() {
        let nv = g.neighbor_set(v);
        for &a in g.neighbors(v) {
            for &b in g.neighbors(v) {
                if b <= a || g.has_edge(a, b) {
                    continue;
                }
                let mut rest = nv.difference(g.neighbor_set(a));
                rest.subtract(g.neighbor_set(b));
                let found = rest.iter().find(|&c| c > b);
                if let Some(c) = found {
                    return Some(ClawWitness { center: v, leaves: [a, b, c] });
                }
            }
        }
    }
    None
}

pub fn is_claw_free(g: &Graph) -> bool {
    find_claw(g).is_none()
}

pub(crate) fn require_claw_free(g: &Graph) -> Result<()> {
    match find_claw(g) {
        Some(w) => Err(Error::NotClawFree(w)),
        None => Ok(()),
    }
}

const RAMSEY_K3: [usize; 8] = [3, 6, 9, 14, 18, 23, 28, 36];

/// `R(omega, 3)` for `omega <= 9`, else the bound `C(omega + 1, 2)`.
pub fn ramsey_bound(omega: usize) -> Result<usize> {
    match omega {
        0 | 1 => Err(Error::OmegaTooSmall(omega)),
        2..=9 => Ok(RAMSEY_K3[omega - 2]),
        _ => Ok(omega * (omega + 1) / 2),
    }
}

// R(1,3) = 1, used so that edgeless inputs get a well-defined degree cap.
fn ramsey_or_trivial(omega: usize) -> usize {
    ramsey_bound(omega).unwrap_or(1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LemmaId {
    /// `deg(v) <= R(omega, 3) - 1`.
    DegreeRamsey,
    /// `G[N(v)]` has no clique of size `omega`.
    NeighborhoodClique,
    /// `G[N(v)]` has no stable set of size 3.
    NeighborhoodStable,
    /// `|N(w) \ ({v} ∪ N(v))| <= omega - 1` for an edge `vw`.
    ExteriorBound,
    /// `N(w) \ ({v} ∪ N(v))` is a clique (lhs counts non-adjacent pairs).
    ExteriorClique,
    /// Every exterior vertex of `w` sees one end of each non-adjacent pair
    /// in `N(v) ∩ N(w)` (lhs counts violations).
    CommonNeighbor,
    ZWeightedSum,
    ZBound,
    /// `Z(v) = N(v)` once `deg(v) >= 2 omega - 1` (lhs is `|N(v) \ Z(v)|`).
    CorollaryZEquality,
    CorollaryZBound,
    /// `q(w) >= 1` exactly when `w ∈ Z(v)` (lhs counts disagreements).
    QZAgreement,
    QWeightedSum,
    QBound,
    CorollaryQ,
    /// The closed-form cap on `deg_{G²}(v)` for `deg(v) >= 2 omega - 1`.
    SquareDegreeCap,
    /// `Δ(G²) <= 2 omega (omega - 1)`.
    SquareMaxDegree,
}

fn serialize_ratio<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// One evaluated inequality `lhs <= rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub lemma: LemmaId,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertex: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub neighbor: Option<usize>,
    pub lhs: u64,
    #[serde(serialize_with = "serialize_ratio")]
    pub rhs: Rational,
    pub holds: bool,
}

impl LemmaReport {
    fn new(lemma: LemmaId, vertex: Option<usize>, neighbor: Option<usize>, lhs: usize, rhs: Rational) -> Self {
        LemmaReport { lemma, vertex, neighbor, lhs: lhs as u64, rhs, holds: int(lhs) <= rhs }
    }
}

/// Independence number of `G[s]`, computed as the clique number of the
/// complement.
fn independence_number(g: &Graph, s: &VertexSet) -> usize {
    let (h, _) = g.induced_subgraph(s).expect("subset of g");
    complement(&h).clique_number()
}

fn complement(h: &Graph) -> Graph {
    let mut edges = Vec::new();
    for u in 0..h.n() {
        for v in u + 1..h.n() {
            if !h.has_edge(u, v) {
                edges.push((u, v));
            }
        }
    }
    crate::graph::build_graph(h.n(), &edges).expect("complement is simple")
}

/// Per-vertex degree caps: `deg(v) < R(omega, 3)`, and `G[N(v)]` has
/// neither an `omega`-clique nor a stable triple.
pub fn check_degree_lemma(g: &Graph, omega: usize) -> Result<Vec<LemmaReport>> {
    check_degree_lemma_with(g, omega, Execution::default())
}

pub fn check_degree_lemma_with(g: &Graph, omega: usize, exec: Execution) -> Result<Vec<LemmaReport>> {
    require_claw_free(g)?;
    let cap = ramsey_or_trivial(omega) - 1;
    let per_vertex = par::map_range(exec, g.n(), |v| {
        let nv = g.neighbor_set(v);
        let (h, _) = g.induced_subgraph(nv).expect("neighbourhood in range");
        vec![
            LemmaReport::new(LemmaId::DegreeRamsey, Some(v), None, g.degree(v), int(cap)),
            LemmaReport::new(
                LemmaId::NeighborhoodClique,
                Some(v),
                None,
                h.clique_number(),
                int(omega.saturating_sub(1)),
            ),
            LemmaReport::new(LemmaId::NeighborhoodStable, Some(v), None, independence_number(g, nv), int(2)),
        ]
    });
    Ok(per_vertex.into_iter().flatten().collect())
}

/// `N(w) \ ({v} ∪ N(v))` for an edge `vw`.
pub fn exterior_neighbors(g: &Graph, v: usize, w: usize) -> Result<VertexSet> {
    g.check_vertex(v)?;
    g.check_vertex(w)?;
    if !g.has_edge(v, w) {
        return Err(Error::NotNeighbor(v, w));
    }
    let mut out = g.neighbor_set(w).difference(g.neighbor_set(v));
    out.remove(v);
    Ok(out)
}

fn non_adjacent_pairs(g: &Graph, s: &VertexSet) -> usize {
    let members = s.to_vec();
    let mut count = 0;
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            if !g.has_edge(a, b) {
                count += 1;
            }
        }
    }
    count
}

/// Exterior-set bounds for every ordered edge `(v, w)`.
pub fn check_exterior_lemmas(g: &Graph, omega: usize) -> Result<Vec<LemmaReport>> {
    check_exterior_lemmas_with(g, omega, Execution::default())
}

pub fn check_exterior_lemmas_with(g: &Graph, omega: usize, exec: Execution) -> Result<Vec<LemmaReport>> {
    require_claw_free(g)?;
    let per_vertex = par::map_range(exec, g.n(), |v| {
        let mut out = Vec::new();
        for &w in g.neighbors(v) {
            let ext = exterior_neighbors(g, v, w).expect("w adjacent to v");
            out.push(LemmaReport::new(
                LemmaId::ExteriorBound,
                Some(v),
                Some(w),
                ext.len(),
                int(omega.saturating_sub(1)),
            ));
            out.push(LemmaReport::new(LemmaId::ExteriorClique, Some(v), Some(w), non_adjacent_pairs(g, &ext), int(0)));
            let common = g.neighbor_set(v).intersection(g.neighbor_set(w));
            let members = common.to_vec();
            let mut violations = 0;
            for (i, &x) in members.iter().enumerate() {
                for &y in &members[i + 1..] {
                    if g.has_edge(x, y) {
                        continue;
                    }
                    violations += ext.iter().filter(|&z| !g.has_edge(x, z) && !g.has_edge(y, z)).count();
                }
            }
            out.push(LemmaReport::new(LemmaId::CommonNeighbor, Some(v), Some(w), violations, int(0)));
        }
        out
    });
    Ok(per_vertex.into_iter().flatten().collect())
}

/// `Z(v)`: neighbours `w` of `v` whose common neighbourhood with `v`
/// contains a non-adjacent pair.
pub fn z_set(g: &Graph, v: usize) -> Result<VertexSet> {
    g.check_vertex(v)?;
    let nv = g.neighbor_set(v);
    let mut z = VertexSet::new(g.n());
    for &w in g.neighbors(v) {
        let common = nv.intersection(g.neighbor_set(w));
        if !g.is_clique(&common) {
            z.insert(w);
        }
    }
    Ok(z)
}

/// Matching number of the complement of `G[N(v) ∩ N(w)]`.
pub fn q_value(g: &Graph, v: usize, w: usize) -> Result<usize> {
    g.check_vertex(v)?;
    g.check_vertex(w)?;
    if !g.has_edge(v, w) {
        return Err(Error::NotNeighbor(v, w));
    }
    let common = g.neighbor_set(v).intersection(g.neighbor_set(w)).to_vec();
    Ok(complement_matching_number(g, &common))
}

/// Exhaustive maximum matching over the non-edges among `vertices`.
fn complement_matching_number(g: &Graph, vertices: &[usize]) -> usize {
    let k = vertices.len();
    assert!(k <= 64, "neighbourhood too large for exhaustive matching");
    let mut comp = vec![0u64; k];
    for i in 0..k {
        for j in 0..k {
            if i != j && !g.has_edge(vertices[i], vertices[j]) {
                comp[i] |= 1 << j;
            }
        }
    }
    let mut live = 0u64;
    for (i, &row) in comp.iter().enumerate() {
        if row != 0 {
            live |= 1 << i;
        }
    }
    let mut memo = HashMap::new();
    matching_search(&comp, live, &mut memo)
}

fn matching_search(comp: &[u64], avail: u64, memo: &mut HashMap<u64, usize>) -> usize {
    if avail == 0 {
        return 0;
    }
    if let Some(&m) = memo.get(&avail) {
        return m;
    }
    let a = avail.trailing_zeros() as usize;
    let rest = avail & !(1 << a);
    let mut best = matching_search(comp, rest, memo);
    let upper = (avail.count_ones() / 2) as usize;
    let mut partners = comp[a] & rest;
    while partners != 0 && best < upper {
        let b = partners.trailing_zeros() as usize;
        partners &= partners - 1;
        best = best.max(1 + matching_search(comp, rest & !(1 << b), memo));
    }
    memo.insert(avail, best);
    best
}

/// The pieces of the second-neighbourhood bounds at one vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexProfile {
    pub vertex: usize,
    pub degree: usize,
    pub square_degree: usize,
    /// `|N(N(v)) \ {v}|`.
    pub second_neighborhood: usize,
    pub z: Vec<usize>,
    /// `(w, |N(w) \ ({v} ∪ N(v))|, q(w))` for each neighbour `w`.
    pub neighbors: Vec<(usize, usize, usize)>,
}

pub fn vertex_profile(g: &Graph, v: usize) -> Result<VertexProfile> {
    g.check_vertex(v)?;
    let z = z_set(g, v)?;
    let neighbors = g
        .neighbors(v)
        .iter()
        .map(|&w| {
            let ext = exterior_neighbors(g, v, w).expect("adjacent").len();
            (w, ext, q_value(g, v, w).expect("adjacent"))
        })
        .collect();
    let second = g.second_neighborhood(v).len();
    Ok(VertexProfile {
        vertex: v,
        degree: g.degree(v),
        square_degree: g.degree(v) + second,
        second_neighborhood: second,
        z: z.to_vec(),
        neighbors,
    })
}

fn ceil_half(x: usize) -> usize {
    x.div_ceil(2)
}

/// The closed-form maximum over the admissible high degrees.
pub fn square_degree_cap(omega: usize) -> Result<Rational> {
    let r = ramsey_bound(omega)? as i64;
    let w = omega as i64;
    let half = Rational::new(1, 2);
    let first = Rational::from_integer(2 * w - 1) + (Rational::from_integer(w) - half) * (w - 1);
    let second =
        Rational::from_integer(r - 2) + Rational::from_integer((r - 2) * (w - 1)) / (Rational::new(r - 1, 2) + 2 - w);
    let third =
        Rational::from_integer(r - 1) + Rational::from_integer((r - 1) * (w - 1)) / (Rational::new(r, 2) + 2 - w);
    Ok(first.max(second).max(third))
}

fn second_neighborhood_reports(g: &Graph, omega: usize, v: usize) -> Vec<LemmaReport> {
    let profile = vertex_profile(g, v).expect("v in range");
    let deg = profile.degree;
    let lhs = profile.second_neighborhood;
    let w1 = int(omega.saturating_sub(1));
    let in_z = |w: usize| profile.z.binary_search(&w).is_ok();
    let mut reports = Vec::new();

    let mut z_sum = Rational::from_integer(0);
    let mut q_sum = Rational::from_integer(0);
    let mut q_weights = Rational::from_integer(0);
    let mut disagreements = 0;
    for &(w, ext, q) in &profile.neighbors {
        z_sum += if in_z(w) { Rational::new(ext as i64, 2) } else { int(ext) };
        q_sum += Rational::new(ext as i64, q as i64 + 1);
        q_weights += Rational::new(1, q as i64 + 1);
        if (q >= 1) != in_z(w) {
            disagreements += 1;
        }
    }
    let vx = Some(v);
    reports.push(LemmaReport::new(LemmaId::ZWeightedSum, vx, None, lhs, z_sum));
    let z_bound = (int(deg) - Rational::new(profile.z.len() as i64, 2)) * w1;
    reports.push(LemmaReport::new(LemmaId::ZBound, vx, None, lhs, z_bound));
    reports.push(LemmaReport::new(LemmaId::QZAgreement, vx, None, disagreements, int(0)));
    reports.push(LemmaReport::new(LemmaId::QWeightedSum, vx, None, lhs, q_sum));
    reports.push(LemmaReport::new(LemmaId::QBound, vx, None, lhs, w1 * q_weights));

    if omega >= 1 && deg + 1 >= 2 * omega {
        reports.push(LemmaReport::new(LemmaId::CorollaryZEquality, vx, None, deg - profile.z.len(), int(0)));
        reports.push(LemmaReport::new(LemmaId::CorollaryZBound, vx, None, lhs, Rational::new(deg as i64, 2) * w1));
        if omega >= 4 {
            let denom = (ceil_half(deg + 1) + 2) as i64 - omega as i64;
            reports.push(LemmaReport::new(LemmaId::CorollaryQ, vx, None, lhs, int(deg) * w1 / denom));
        }
        if omega >= 3 {
            let cap = square_degree_cap(omega).expect("omega >= 3");
            reports.push(LemmaReport::new(LemmaId::SquareDegreeCap, vx, None, profile.square_degree, cap));
        }
    }
    reports
}

/// Second-neighbourhood bounds at every vertex plus the global cap on
/// `Δ(G²)`.
pub fn check_second_neighborhood_bounds(g: &Graph, omega: usize) -> Result<Vec<LemmaReport>> {
    check_second_neighborhood_bounds_with(g, omega, Execution::default())
}

pub fn check_second_neighborhood_bounds_with(g: &Graph, omega: usize, exec: Execution) -> Result<Vec<LemmaReport>> {
    require_claw_free(g)?;
    let per_vertex = par::map_range(exec, g.n(), |v| second_neighborhood_reports(g, omega, v));
    let mut reports: Vec<LemmaReport> = per_vertex.into_iter().flatten().collect();
    let max_sq = (0..g.n()).map(|v| g.square_neighbor_set(v).len()).max().unwrap_or(0);
    reports.push(LemmaReport::new(
        LemmaId::SquareMaxDegree,
        None,
        None,
        max_sq,
        int(2 * omega * omega.saturating_sub(1)),
    ));
    Ok(reports)
}

/// Every lemma check on one graph, in a fixed order.
pub fn check_all_lemmas(g: &Graph, omega: usize, exec: Execution) -> Result<Vec<LemmaReport>> {
    let mut all = check_degree_lemma_with(g, omega, exec)?;
    all.extend(check_exterior_lemmas_with(g, omega, exec)?);
    all.extend(check_second_neighborhood_bounds_with(g, omega, exec)?);
    Ok(all)
}

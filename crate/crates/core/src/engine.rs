//! Constructive colouring of squares of claw-free graphs.
//!
//! Graphs with clique number 3 or 4 are coloured by repeatedly deleting a
//! reducible vertex until a base case remains (paths and cycles, the
//! icosahedron, or a line graph coloured through a strong edge colouring of
//! its root), then re-inserting the deleted vertices in reverse. Larger
//! clique numbers fall back to first-fit on the square.

use serde::Serialize;

use crate::analysis::require_claw_free;
use crate::coloring::{verify_coloring, Coloring};
use crate::corpus::gen_line_graph;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::par::{self, Execution};
use crate::structure::{classify_with_threshold, Classification};

pub const DEFAULT_STRONG_NODE_LIMIT: u64 = 50_000_000;

/// Palette size guaranteed for a claw-free graph of the given clique number.
pub fn bound_for_omega(omega: usize) -> usize {
    match omega {
        0..=2 => 5,
        3 => 10,
        4 => 22,
        w => 2 * w * (w - 1) + 1,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EngineParams {
    /// Largest colour index; the palette is `0..=k`.
    pub k: usize,
    /// Square-degree threshold for reducible vertices.
    pub k_prime: usize,
    pub omega: usize,
}

impl EngineParams {
    pub fn new(k: usize, k_prime: usize, omega: usize) -> Result<Self> {
        if k_prime > k {
            return Err(Error::InvalidSpec(format!("K' = {k_prime} exceeds K = {k}")));
        }
        Ok(EngineParams { k, k_prime, omega })
    }

    /// Clique number 4 uses K = 21, i.e. the 22-colour strong edge
    /// colouring bound for degree 4; the exact degree-4 strong chromatic
    /// index is unknown, so no sharper K can be executed.
    pub fn for_omega(omega: usize) -> Result<Self> {
        match omega {
            3 => Ok(EngineParams { k: 9, k_prime: 9, omega }),
            4 => Ok(EngineParams { k: 21, k_prime: 19, omega }),
            w if w >= 5 => {
                let k = 2 * w * (w - 1);
                Ok(EngineParams { k, k_prime: k - 4, omega })
            }
            w => Err(Error::UnsupportedOmega(w)),
        }
    }
}

/// Strong edge colouring of a root graph; `edge_colors[i]` colours
/// `edges[i]`, and `edges` is in `f.edges()` order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrongEdgeColoring {
    pub edges: Vec<(usize, usize)>,
    pub edge_colors: Vec<usize>,
    pub palette_size: usize,
}

impl StrongEdgeColoring {
    pub fn color_of(&self, a: usize, b: usize) -> Option<usize> {
        let e = (a.min(b), a.max(b));
        self.edges.binary_search(&e).ok().map(|i| self.edge_colors[i])
    }
}

pub fn strong_edge_color(f: &Graph, budget: usize) -> Result<StrongEdgeColoring> {
    strong_edge_color_with_limit(f, budget, DEFAULT_STRONG_NODE_LIMIT)
}

/// Backtracking search for a colouring of `L(f)²` with at most `budget`
/// colours. Vertices are chosen by saturation, then degree, then index;
/// a new colour is opened at most once per level.
pub fn strong_edge_color_with_limit(f: &Graph, budget: usize, node_limit: u64) -> Result<StrongEdgeColoring> {
    let (line, edges) = gen_line_graph(f);
    let conflict = line.square();
    let colors = dsatur_within(&conflict, budget, node_limit)?;
    let palette_size = colors.iter().max().map_or(0, |&m| m + 1);
    Ok(StrongEdgeColoring { edges, edge_colors: colors, palette_size })
}

fn dsatur_within(g: &Graph, budget: usize, node_limit: u64) -> Result<Vec<usize>> {
    let n = g.n();
    if n == 0 {
        return Ok(Vec::new());
    }
    if budget == 0 {
        return Err(Error::BudgetExhausted(budget));
    }
    if budget > 64 {
        // the bitmask search below is capped at 64 colours; first-fit
        // needs at most max degree + 1
        let c = first_fit(g, &(0..n).collect::<Vec<_>>());
        return if c.iter().all(|&x| x < budget) { Ok(c) } else { Err(Error::BudgetExhausted(budget)) };
    }
    struct State<'a> {
        g: &'a Graph,
        budget: usize,
        color: Vec<Option<usize>>,
        // per-vertex count of coloured neighbours holding each colour
        counts: Vec<Vec<u32>>,
        mask: Vec<u64>,
        nodes: u64,
        limit: u64,
    }
    impl State<'_> {
        fn set(&mut self, v: usize, c: usize) {
            self.color[v] = Some(c);
            for &u in self.g.neighbors(v) {
                self.counts[u][c] += 1;
                self.mask[u] |= 1 << c;
            }
        }
        fn unset(&mut self, v: usize, c: usize) {
            self.color[v] = None;
            for &u in self.g.neighbors(v) {
                self.counts[u][c] -= 1;
                if self.counts[u][c] == 0 {
                    self.mask[u] &= !(1 << c);
                }
            }
        }
        fn search(&mut self, used: usize) -> Result<bool> {
            self.nodes += 1;
            if self.nodes > self.limit {
                return Err(Error::Timeout(self.limit));
            }
            let mut pick: Option<(u32, usize, usize)> = None;
            for v in 0..self.color.len() {
                if self.color[v].is_none() {
                    let key = (self.mask[v].count_ones(), self.g.degree(v), usize::MAX - v);
                    if pick.is_none_or(|p| key > p) {
                        pick = Some(key);
                    }
                }
            }
            let Some((_, _, inv)) = pick else { return Ok(true) };
            let v = usize::MAX - inv;
            for c in 0..self.budget.min(used + 1) {
                if self.mask[v] & (1 << c) != 0 {
                    continue;
                }
                self.set(v, c);
                if self.search(used.max(c + 1))? {
                    return Ok(true);
                }
                self.unset(v, c);
            }
            Ok(false)
        }
    }
    let mut st = State {
        g,
        budget,
        color: vec![None; n],
        counts: vec![vec![0; budget]; n],
        mask: vec![0; n],
        nodes: 0,
        limit: node_limit,
    };
    if st.search(0)? {
        Ok(st.color.into_iter().map(|c| c.expect("complete")).collect())
    } else {
        Err(Error::BudgetExhausted(budget))
    }
}

fn first_fit(g: &Graph, order: &[usize]) -> Vec<usize> {
    let mut color = vec![usize::MAX; g.n()];
    let mut taken = Vec::new();
    for &v in order {
        taken.clear();
        taken.resize(g.degree(v) + 1, false);
        for &u in g.neighbors(v) {
            if color[u] < taken.len() {
                taken[color[u]] = true;
            }
        }
        color[v] = taken.iter().position(|&t| !t).expect("pigeonhole");
    }
    color
}

/// Six colours, one per antipodal pair.
pub fn color_icosahedron(g: &Graph, pairing: &[(usize, usize)]) -> Result<Coloring> {
    let bad = |m: &str| Err(Error::InvalidPairing(m.to_string()));
    if g.n() != 12 || pairing.len() != 6 {
        return bad("expected 12 vertices in 6 pairs");
    }
    let mut colors = vec![usize::MAX; 12];
    let mut pairs = pairing.to_vec();
    pairs.sort_by_key(|&(a, b)| a.min(b));
    for (i, &(a, b)) in pairs.iter().enumerate() {
        if a >= 12 || b >= 12 || a == b || colors[a] != usize::MAX || colors[b] != usize::MAX {
            return bad("pairing is not a perfect matching");
        }
        colors[a] = i;
        colors[b] = i;
    }
    let c = Coloring::new(colors);
    if !verify_coloring(g, &c)? {
        return bad("antipodal classes are not independent in the square");
    }
    Ok(c)
}

fn cycle_pattern(n: usize) -> Vec<usize> {
    match n {
        4 | 5 => (0..n).collect(),
        _ if n.is_multiple_of(3) => (0..n).map(|i| i % 3).collect(),
        _ => {
            // (012)^a followed by one or two copies of 0123
            let quads = if n % 3 == 1 { 1 } else { 2 };
            let mut p: Vec<usize> = (0..n - 4 * quads).map(|i| i % 3).collect();
            for _ in 0..quads {
                p.extend([0, 1, 2, 3]);
            }
            p
        }
    }
}

/// Paths cyclically with three colours; cycles with 3, 4 or 5.
pub fn color_small_omega(g: &Graph) -> Result<Coloring> {
    let omega = g.clique_number();
    if omega > 2 {
        return Err(Error::NotSmallOmega(omega));
    }
    require_claw_free(g)?;
    let mut colors = vec![0; g.n()];
    for comp in g.connected_components() {
        let vs = comp.to_vec();
        let edges: usize = vs.iter().map(|&v| g.degree(v)).sum::<usize>() / 2;
        let is_cycle = edges == vs.len() && vs.len() >= 3;
        let start = if is_cycle { vs[0] } else { *vs.iter().find(|&&v| g.degree(v) <= 1).expect("path end") };
        let mut order = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while let Some(&next) = g.neighbors(cur).iter().find(|&&u| u != prev && u != start) {
            order.push(next);
            prev = cur;
            cur = next;
        }
        let pattern = if is_cycle { cycle_pattern(order.len()) } else { (0..order.len()).map(|i| i % 3).collect() };
        for (v, c) in order.into_iter().zip(pattern) {
            colors[v] = c;
        }
    }
    Ok(Coloring::new(colors))
}

/// First-fit on the square in non-increasing square-degree order.
pub fn trivial_greedy_square(g: &Graph) -> Coloring {
    let sq = g.square();
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(sq.degree(v)));
    Coloring::new(first_fit(&sq, &order))
}

/// What happened to one piece of the graph during the reduction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BaseKind {
    SmallOmega,
    Icosahedron,
    LineGraph,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Trace {
    pub reductions: usize,
    pub bases: Vec<BaseKind>,
}

enum Event {
    Base {
        vertices: Vec<usize>,
        colors: Vec<usize>,
    },
    Extend {
        v: usize,
        s: Vec<usize>,
        // colours of these vertices are unavailable to the matching s
        forbidden: Vec<Vec<usize>>,
        square_nbrs: Vec<usize>,
    },
}

/// Distinct colours for `avail.len()` vertices, `avail[i]` listing the
/// colours vertex `i` may take.
fn distinct_representatives(avail: &[Vec<usize>], palette: usize) -> Option<Vec<usize>> {
    fn augment(i: usize, avail: &[Vec<usize>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for &c in &avail[i] {
            if seen[c] {
                continue;
            }
            seen[c] = true;
            if owner[c].is_none_or(|j| augment(j, avail, seen, owner)) {
                owner[c] = Some(i);
                return true;
            }
        }
        false
    }
    let mut owner = vec![None; palette];
    for i in 0..avail.len() {
        let mut seen = vec![false; palette];
        if !augment(i, avail, &mut seen, &mut owner) {
            return None;
        }
    }
    let mut out = vec![usize::MAX; avail.len()];
    for (c, o) in owner.into_iter().enumerate() {
        if let Some(i) = o {
            out[i] = c;
        }
    }
    Some(out)
}

fn to_original(map: &[usize], local: impl IntoIterator<Item = usize>) -> Vec<usize> {
    local.into_iter().map(|x| map[x]).collect()
}

pub fn greedy_reduce(g: &Graph, params: EngineParams) -> Result<Coloring> {
    greedy_reduce_traced(g, params).map(|(c, _)| c)
}

/// The reduction with an explicit work stack: each popped piece is either
/// a base case or loses one reducible vertex, whose re-insertion data is
/// recorded and replayed in reverse once everything below it is coloured.
pub fn greedy_reduce_traced(g: &Graph, params: EngineParams) -> Result<(Coloring, Trace)> {
    require_claw_free(g)?;
    let palette = params.k + 1;
    let mut trace = Trace::default();
    let mut events = Vec::new();
    let mut work: Vec<VertexSet> = g.connected_components();
    work.reverse();

    while let Some(piece) = work.pop() {
        let (h, map) = g.induced_subgraph(&piece)?;
        let omega = h.clique_number();
        if omega <= 2 {
            let c = color_small_omega(&h)?;
            trace.bases.push(BaseKind::SmallOmega);
            events.push(Event::Base { vertices: map, colors: c.colors().to_vec() });
            continue;
        }
        match classify_with_threshold(&h, omega, params.k_prime)? {
            Classification::Reducible(r) => {
                let v = r.vertex;
                let sq = |x: usize| h.square_neighbor_set(x);
                let t = r.threshold();
                let s_local: Vec<usize> = h.neighbors(v).iter().copied().filter(|&x| sq(x).len() <= t).collect();
                let mut keep = VertexSet::from_slice(h.n(), &s_local)?;
                keep.insert(v);
                let forbidden = s_local.iter().map(|&s| to_original(&map, sq(s).difference(&keep).iter())).collect();
                events.push(Event::Extend {
                    v: map[v],
                    s: to_original(&map, s_local.iter().copied()),
                    forbidden,
                    square_nbrs: to_original(&map, sq(v).iter()),
                });
                trace.reductions += 1;
                let mut rest = VertexSet::new(h.n());
                (0..h.n()).filter(|&x| x != v).for_each(|x| {
                    rest.insert(x);
                });
                let (sub, sub_map) = h.induced_subgraph(&rest)?;
                let mut parts = sub.connected_components();
                parts.reverse();
                for p in parts {
                    let orig: Vec<usize> = p.iter().map(|x| map[sub_map[x]]).collect();
                    work.push(VertexSet::from_slice(g.n(), &orig)?);
                }
            }
            Classification::Icosahedron { pairing } => {
                let c = color_icosahedron(&h, &pairing)?;
                trace.bases.push(BaseKind::Icosahedron);
                events.push(Event::Base { vertices: map, colors: c.colors().to_vec() });
            }
            Classification::LineGraph { root } => {
                let guaranteed = matches!((root.max_degree(), palette), (0..=3, 10..) | (4, 22..));
                let strong = strong_edge_color(&root.f, palette).map_err(|e| {
                    let dump = format!(
                        "strong edge colouring of root (n={}, edges={:?}) with {palette} colours failed: {e}",
                        root.f.n(),
                        root.f.edges()
                    );
                    if guaranteed {
                        Error::InternalBoundViolation(dump)
                    } else {
                        e
                    }
                })?;
                let colors: Vec<usize> =
                    root.edge_of_vertex.iter().map(|&(a, b)| strong.color_of(a, b).expect("root edge")).collect();
                let c = Coloring::new(colors);
                if !verify_coloring(&h, &c)? {
                    return Err(Error::InternalBoundViolation(
                        "pulled-back strong edge colouring is not proper on the square".into(),
                    ));
                }
                trace.bases.push(BaseKind::LineGraph);
                events.push(Event::Base { vertices: map, colors: c.colors().to_vec() });
            }
            Classification::SmallOmega => unreachable!("clique number above 2"),
        }
    }

    let mut color = vec![usize::MAX; g.n()];
    for ev in events.into_iter().rev() {
        match ev {
            Event::Base { vertices, colors } => {
                for (v, c) in vertices.into_iter().zip(colors) {
                    color[v] = c;
                }
            }
            Event::Extend { v, s, forbidden, square_nbrs } => {
                let avail: Vec<Vec<usize>> = forbidden
                    .iter()
                    .map(|f| {
                        let mut free = vec![true; palette];
                        for &x in f {
                            free[color[x]] = false;
                        }
                        (0..palette).filter(|&c| free[c]).collect()
                    })
                    .collect();
                let picked = distinct_representatives(&avail, palette).ok_or_else(|| {
                    Error::InternalBoundViolation(format!("no distinct colours for the neighbours {s:?} of vertex {v}"))
                })?;
                for (&x, &c) in s.iter().zip(&picked) {
                    color[x] = c;
                }
                if cfg!(debug_assertions) {
                    for (i, &c) in picked.iter().enumerate() {
                        debug_assert!(avail[i].contains(&c));
                        debug_assert!(picked[..i].iter().all(|&d| d != c));
                        debug_assert!(forbidden[i].iter().all(|&x| color[x] != c));
                    }
                }
                let mut free = vec![true; palette];
                for &x in &square_nbrs {
                    free[color[x]] = false;
                }
                color[v] = free
                    .iter()
                    .position(|&f| f)
                    .ok_or_else(|| Error::InternalBoundViolation(format!("no colour left for vertex {v}")))?;
            }
        }
    }
    let c = Coloring::new(color);
    if c.palette_size() > palette || !verify_coloring(g, &c)? {
        return Err(Error::InternalBoundViolation(format!(
            "reduction produced an invalid colouring with {} colours",
            c.palette_size()
        )));
    }
    Ok((c, trace))
}

/// How one connected component was coloured.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentRun {
    pub vertices: usize,
    pub omega: usize,
    pub method: &'static str,
    pub trace: Option<Trace>,
}

pub fn color_square(g: &Graph) -> Result<Coloring> {
    color_square_traced(g).map(|(c, _)| c)
}

/// Colours every component on its own (sharing colour indices) and checks
/// the result against the bound for the clique number of `g`.
pub fn color_square_traced(g: &Graph) -> Result<(Coloring, Vec<ComponentRun>)> {
    require_claw_free(g)?;
    let mut color = vec![0; g.n()];
    let mut runs = Vec::new();
    let mut omega = 0;
    for comp in g.connected_components() {
        let (h, map) = g.induced_subgraph(&comp)?;
        let w = h.clique_number();
        omega = omega.max(w);
        let (c, method, trace) = match w {
            0..=2 => (color_small_omega(&h)?, "small-omega", None),
            3 | 4 => {
                let (c, t) = greedy_reduce_traced(&h, EngineParams::for_omega(w)?)?;
                (c, "greedy-reduce", Some(t))
            }
            _ => (trivial_greedy_square(&h), "square-greedy", None),
        };
        for (x, &cx) in c.colors().iter().enumerate() {
            color[map[x]] = cx;
        }
        runs.push(ComponentRun { vertices: h.n(), omega: w, method, trace });
    }
    let c = Coloring::new(color).compacted();
    if !verify_coloring(g, &c)? {
        return Err(Error::InternalBoundViolation("colouring is not proper on the square".into()));
    }
    let bound = bound_for_omega(omega);
    if c.palette_size() > bound {
        return Err(Error::InternalBoundViolation(format!(
            "{} colours used, bound for clique number {omega} is {bound}",
            c.palette_size()
        )));
    }
    Ok((c, runs))
}

/// Colours many graphs; order of results matches `graphs`.
pub fn color_all(graphs: &[Graph], exec: Execution) -> Vec<Result<Coloring>> {
    par::map(exec, graphs, color_square)
}

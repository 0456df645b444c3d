//! Named instances, seeded random claw-free generators and the DIMACS
//! `.col` format.
//!
//! Randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64(seed)`; every generator takes its seed explicitly and
//! records it in the entry's [`Provenance`].

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::analysis::is_claw_free;
use crate::error::{Error, Result};
use crate::graph::{build_graph, Graph, VertexSet};
use crate::oracle::brute_force_claw_free;
use crate::par::{self, Execution};

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Class sizes of a blown-up five-cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupSpec {
    pub sizes: [usize; 5],
    /// When set, generation fails unless every class degree
    /// `s[i-1] + s[i+1]` is at most this.
    pub max_degree: Option<usize>,
}

impl BlowupSpec {
    pub fn new(sizes: [usize; 5]) -> Self {
        BlowupSpec { sizes, max_degree: None }
    }

    pub fn with_max_degree(mut self, d: usize) -> Self {
        self.max_degree = Some(d);
        self
    }

    /// Degree of a vertex in class `i`.
    pub fn class_degree(&self, i: usize) -> usize {
        self.sizes[(i + 4) % 5] + self.sizes[(i + 1) % 5]
    }
}

/// Replaces each five-cycle vertex by an independent class and joins
/// consecutive classes completely. Class `i` occupies a contiguous index
/// range, classes in order.
pub fn gen_blowup_c5(spec: &BlowupSpec) -> Result<Graph> {
    if let Some(i) = spec.sizes.iter().position(|&s| s == 0) {
        return Err(Error::InvalidSpec(format!("class {i} is empty")));
    }
    if let Some(d) = spec.max_degree {
        if let Some(i) = (0..5).find(|&i| spec.class_degree(i) > d) {
            return Err(Error::InvalidSpec(format!("class {i} has degree {} > {d}", spec.class_degree(i))));
        }
    }
    let mut start = [0usize; 6];
    for i in 0..5 {
        start[i + 1] = start[i] + spec.sizes[i];
    }
    let mut edges = Vec::new();
    for i in 0..5 {
        let j = (i + 1) % 5;
        for a in start[i]..start[i + 1] {
            for b in start[j]..start[j + 1] {
                edges.push((a.min(b), a.max(b)));
            }
        }
    }
    edges.sort_unstable();
    build_graph(start[5], &edges)
}

/// Line graph of `f`; vertex `i` is the `i`-th edge of `f.edges()`, and the
/// returned vector records that edge.
pub fn gen_line_graph(f: &Graph) -> (Graph, Vec<(usize, usize)>) {
    let edges = f.edges();
    let mut at = vec![Vec::new(); f.n()];
    for (i, &(a, b)) in edges.iter().enumerate() {
        at[a].push(i);
        at[b].push(i);
    }
    let mut pairs = Vec::new();
    for incident in &at {
        for (k, &i) in incident.iter().enumerate() {
            for &j in &incident[k + 1..] {
                pairs.push((i.min(j), i.max(j)));
            }
        }
    }
    pairs.sort_unstable();
    let g = build_graph(edges.len(), &pairs).expect("simple input gives simple line graph");
    (g, edges)
}

/// The icosahedron: 0 is the top, 1..=5 the upper ring, 6..=10 the lower
/// ring, 11 the bottom. Upper `1 + j` touches lower `6 + j` and
/// `6 + (j + 1) % 5`.
pub fn gen_icosahedron() -> Graph {
    let mut e = Vec::new();
    for j in 0..5 {
        let up = 1 + j;
        let up_next = 1 + (j + 1) % 5;
        let low = 6 + j;
        let low_next = 6 + (j + 1) % 5;
        e.push((0, up));
        e.push((up.min(up_next), up.max(up_next)));
        e.push((up, low));
        e.push((up, low_next));
        e.push((low.min(low_next), low.max(low_next)));
        e.push((low, 11));
    }
    build_graph(12, &e).expect("icosahedron")
}

/// Small named graphs used throughout the tests and the shipped corpus.
pub mod named {
    use super::*;

    pub fn claw() -> Graph {
        build_graph(4, &[(0, 1), (0, 2), (0, 3)]).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        build_graph(n, &e).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3);
        let e: Vec<_> = (0..n).map(|i| (i.min((i + 1) % n), i.max((i + 1) % n))).collect();
        build_graph(n, &e).unwrap()
    }

    pub fn path(n: usize) -> Graph {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        build_graph(n, &e).unwrap()
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut e = Vec::new();
        for u in 0..a {
            for v in a..a + b {
                e.push((u, v));
            }
        }
        build_graph(a + b, &e).unwrap()
    }

    /// `K_{2,2,2}` with parts `{0,1}`, `{2,3}`, `{4,5}`; isomorphic to `L(K4)`.
    pub fn octahedron() -> Graph {
        let mut e = Vec::new();
        for u in 0..6 {
            for v in u + 1..6 {
                if u / 2 != v / 2 {
                    e.push((u, v));
                }
            }
        }
        build_graph(6, &e).unwrap()
    }

    /// Outer cycle 0..5, inner pentagram 5..10, spokes `i - (5 + i)`.
    pub fn petersen() -> Graph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((5 + i, 5 + (i + 2) % 5));
            e.push((i, 5 + i));
        }
        let e: Vec<_> = e.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        build_graph(10, &e).unwrap()
    }

    /// The 3-cube `Q3`.
    pub fn cube() -> Graph {
        let mut e = Vec::new();
        for u in 0..8usize {
            for bit in 0..3 {
                let v = u ^ (1 << bit);
                if u < v {
                    e.push((u, v));
                }
            }
        }
        build_graph(8, &e).unwrap()
    }

    pub fn icosahedron() -> Graph {
        gen_icosahedron()
    }

    /// The Robertson graph, the smallest 4-regular graph of girth 5.
    pub fn robertson() -> Graph {
        build_graph(
            19,
            &[
                (0, 4),
                (0, 6),
                (0, 11),
                (0, 12),
                (1, 4),
                (1, 5),
                (1, 7),
                (1, 8),
                (2, 3),
                (2, 5),
                (2, 11),
                (2, 15),
                (3, 4),
                (3, 13),
                (3, 16),
                (4, 10),
                (5, 12),
                (5, 14),
                (6, 7),
                (6, 15),
                (6, 16),
                (7, 13),
                (7, 18),
                (8, 9),
                (8, 16),
                (8, 17),
                (9, 10),
                (9, 11),
                (9, 13),
                (10, 14),
                (10, 15),
                (11, 18),
                (12, 13),
                (12, 17),
                (14, 16),
                (14, 18),
                (15, 17),
                (17, 18),
            ],
        )
        .unwrap()
    }

    /// A 4-regular graph of girth 5 on 20 vertices.
    pub fn quartic_girth5() -> Graph {
        build_graph(
            20,
            &[
                (0, 2),
                (0, 6),
                (0, 11),
                (0, 18),
                (1, 2),
                (1, 12),
                (1, 17),
                (1, 19),
                (2, 3),
                (2, 8),
                (3, 5),
                (3, 7),
                (3, 16),
                (4, 8),
                (4, 16),
                (4, 18),
                (4, 19),
                (5, 6),
                (5, 14),
                (5, 17),
                (6, 12),
                (6, 15),
                (7, 12),
                (7, 13),
                (7, 18),
                (8, 9),
                (8, 13),
                (9, 10),
                (9, 12),
                (9, 14),
                (10, 15),
                (10, 16),
                (10, 17),
                (11, 13),
                (11, 14),
                (11, 16),
                (13, 15),
                (14, 19),
                (15, 19),
                (17, 18),
            ],
        )
        .unwrap()
    }

    pub fn line_graph(f: &Graph) -> (Graph, Vec<(usize, usize)>) {
        gen_line_graph(f)
    }

    pub fn by_name(name: &str) -> Option<Graph> {
        Some(match name {
            "claw" => claw(),
            "petersen" => petersen(),
            "octahedron" => octahedron(),
            "icosahedron" => icosahedron(),
            "cube" => cube(),
            "robertson" => robertson(),
            "quartic20" => quartic_girth5(),
            "k4" => complete(4),
            "k5" => complete(5),
            "k33" => complete_bipartite(3, 3),
            _ => return None,
        })
    }
}

pub fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
    let mut e = a.edges();
    e.extend(b.edges().into_iter().map(|(u, v)| (u + a.n(), v + a.n())));
    build_graph(a.n() + b.n(), &e).expect("disjoint union is simple")
}

/// Random vertex relabelling.
pub fn permute(g: &Graph, rng: &mut Rng64) -> Graph {
    let mut perm: Vec<usize> = (0..g.n()).collect();
    perm.shuffle(rng);
    let mut e: Vec<_> = g.edges().into_iter().map(|(u, v)| (perm[u].min(perm[v]), perm[u].max(perm[v]))).collect();
    e.sort_unstable();
    build_graph(g.n(), &e).unwrap()
}

/// Deletes `count` random vertices; claw-freeness is preserved.
pub fn delete_random_vertices(g: &Graph, count: usize, rng: &mut Rng64) -> Graph {
    let mut keep: Vec<usize> = (0..g.n()).collect();
    keep.shuffle(rng);
    keep.truncate(g.n().saturating_sub(count));
    keep.sort_unstable();
    let s = VertexSet::from_slice(g.n(), &keep).unwrap();
    g.induced_subgraph(&s).unwrap().0
}

/// Random simple graph on `vertices` vertices with at most `target_edges`
/// edges and maximum degree at most `max_degree`.
pub fn random_bounded_degree(vertices: usize, target_edges: usize, max_degree: usize, rng: &mut Rng64) -> Graph {
    let mut deg = vec![0usize; vertices];
    let mut present = std::collections::BTreeSet::new();
    let mut attempts = 0;
    while present.len() < target_edges && attempts < 50 * (target_edges + 1) && vertices >= 2 {
        attempts += 1;
        let a = rng.gen_range(0..vertices);
        let b = rng.gen_range(0..vertices);
        if a == b || deg[a] >= max_degree || deg[b] >= max_degree {
            continue;
        }
        if present.insert((a.min(b), a.max(b))) {
            deg[a] += 1;
            deg[b] += 1;
        }
    }
    let e: Vec<_> = present.into_iter().collect();
    build_graph(vertices, &e).unwrap()
}

/// Random simple `degree`-regular graph by the configuration model,
/// retrying until the pairing has no loops or repeated edges.
pub fn random_regular(vertices: usize, degree: usize, rng: &mut Rng64) -> Result<Graph> {
    if (vertices * degree) % 2 == 1 || degree >= vertices.max(1) {
        return Err(Error::InvalidSpec(format!("no {degree}-regular graph on {vertices} vertices")));
    }
    let mut points: Vec<usize> = (0..vertices).flat_map(|v| std::iter::repeat_n(v, degree)).collect();
    for _ in 0..REJECTION_BUDGET {
        points.shuffle(rng);
        let mut edges: Vec<(usize, usize)> = points.chunks(2).map(|p| (p[0].min(p[1]), p[0].max(p[1]))).collect();
        edges.sort_unstable();
        if edges.iter().all(|e| e.0 != e.1) && edges.windows(2).all(|w| w[0] != w[1]) {
            return build_graph(vertices, &edges);
        }
    }
    Err(Error::GenerationExhausted(REJECTION_BUDGET))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RandomStrategy {
    /// Line graph of a random graph with maximum degree `omega_target`.
    LineGraph,
    /// Line graph of a random blown-up five-cycle, trimmed by vertex deletion.
    Blowup,
    /// `G(n, p)` conditioned on claw-freeness and clique number.
    Rejection,
}

/// Where a corpus graph came from; enough to regenerate it exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub generator: String,
    pub params: Value,
    pub seed: u64,
}

const REJECTION_BUDGET: u64 = 200_000;

/// A seeded random claw-free graph. The output is checked claw-free before
/// it is returned.
pub fn gen_random_claw_free(
    n: usize,
    omega_target: usize,
    strategy: RandomStrategy,
    seed: u64,
) -> Result<(Graph, Provenance)> {
    let mut r = rng(seed);
    let g = match strategy {
        _ if n == 0 => Graph::empty(0),
        RandomStrategy::LineGraph => {
            let d = omega_target.max(1);
            let vertices = (2 * n).div_ceil(d) + 1 + r.gen_range(0..=n / 3 + 1);
            let f = random_bounded_degree(vertices, n, d, &mut r);
            gen_line_graph(&f).0
        }
        RandomStrategy::Blowup => {
            let d = omega_target.max(2);
            let spec = loop {
                let mut sizes = [0; 5];
                for s in sizes.iter_mut() {
                    *s = r.gen_range(1..=(d - 1).max(1));
                }
                let spec = BlowupSpec::new(sizes).with_max_degree(d);
                if (0..5).all(|i| spec.class_degree(i) <= d) {
                    break spec;
                }
            };
            let (l, _) = gen_line_graph(&gen_blowup_c5(&spec)?);
            let excess = l.n().saturating_sub(n);
            delete_random_vertices(&l, excess, &mut r)
        }
        RandomStrategy::Rejection => {
            let mut found = None;
            for _ in 0..REJECTION_BUDGET {
                let p: f64 = r.gen_range(0.25..0.85);
                let mut e = Vec::new();
                for u in 0..n {
                    for v in u + 1..n {
                        if r.gen_bool(p) {
                            e.push((u, v));
                        }
                    }
                }
                let g = build_graph(n, &e)?;
                if is_claw_free(&g) && g.clique_number() <= omega_target {
                    found = Some(g);
                    break;
                }
            }
            found.ok_or(Error::GenerationExhausted(REJECTION_BUDGET))?
        }
    };
    assert!(is_claw_free(&g), "generator produced a claw");
    let prov = Provenance {
        generator: "random-claw-free".into(),
        params: json!({ "n": n, "omega_target": omega_target, "strategy": strategy }),
        seed,
    };
    Ok((g, prov))
}

/// Parses DIMACS `.col` text into a graph with 0-based indices.
pub fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let syntax = |msg: &str| Error::Syntax { line: line_no, msg: msg.to_string() };
        let mut tok = line.split_whitespace();
        match tok.next() {
            Some("p") => {
                if header.is_some() {
                    return Err(syntax("second problem line"));
                }
                match tok.next() {
                    Some("edge") | Some("col") => {}
                    _ => return Err(syntax("expected `p edge <n> <m>`")),
                }
                let n = tok.next().and_then(|t| t.parse().ok()).ok_or_else(|| syntax("bad vertex count"))?;
                let m = tok.next().and_then(|t| t.parse().ok()).ok_or_else(|| syntax("bad edge count"))?;
                if tok.next().is_some() {
                    return Err(syntax("trailing tokens"));
                }
                header = Some((n, m));
            }
            Some("e") => {
                let (n, _) = header.ok_or_else(|| syntax("edge before problem line"))?;
                let mut end = || -> Result<usize> {
                    let x: usize = tok.next().and_then(|t| t.parse().ok()).ok_or_else(|| syntax("bad endpoint"))?;
                    if x == 0 || x > n {
                        return Err(Error::IndexOutOfRange { index: x.wrapping_sub(1), n });
                    }
                    Ok(x - 1)
                };
                let u = end()?;
                let v = end()?;
                if tok.next().is_some() {
                    return Err(syntax("trailing tokens"));
                }
                edges.push((u, v));
            }
            _ => return Err(syntax("unknown line type")),
        }
    }
    let (n, m) = header.ok_or(Error::Syntax { line: 0, msg: "missing problem line".into() })?;
    let g = build_graph(n, &edges)?;
    if edges.len() != m {
        return Err(Error::Syntax { line: 0, msg: format!("problem line declares {m} edges, found {}", edges.len()) });
    }
    Ok(g)
}

/// Normalised DIMACS: one problem line, then sorted 1-based edges `u < v`.
pub fn write_dimacs(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "p edge {} {}", g.n(), g.edge_count()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Known {
    pub omega: usize,
    pub claw_free: bool,
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub id: String,
    pub graph: Graph,
    pub provenance: Provenance,
    pub known: Known,
}

impl CorpusEntry {
    /// Computes `known` with the oracle routines.
    pub fn new(id: impl Into<String>, graph: Graph, provenance: Provenance) -> Self {
        let known = Known { omega: graph.clique_number(), claw_free: brute_force_claw_free(&graph) };
        CorpusEntry { id: id.into(), graph, provenance, known }
    }

    pub fn manifest_entry(&self) -> ManifestEntry {
        ManifestEntry {
            id: self.id.clone(),
            file: format!("{}.col", self.id),
            generator: self.provenance.generator.clone(),
            params: self.provenance.params.clone(),
            seed: self.provenance.seed,
            known: self.known,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub id: String,
    pub file: String,
    pub generator: String,
    pub params: Value,
    pub seed: u64,
    pub known: Known,
}

fn named_prov(name: &str) -> Provenance {
    Provenance { generator: "named".into(), params: json!({ "name": name }), seed: 0 }
}

/// Regenerates a graph from its provenance, or `None` for an unknown
/// generator.
pub fn regenerate(prov: &Provenance) -> Result<Option<Graph>> {
    let p = &prov.params;
    let get = |k: &str| p.get(k).and_then(Value::as_u64).map(|x| x as usize);
    Ok(Some(match prov.generator.as_str() {
        "named" => {
            let name = p.get("name").and_then(Value::as_str).unwrap_or("");
            match named_instance(name) {
                Some(g) => g,
                None => return Ok(None),
            }
        }
        "random-claw-free" => {
            let strategy: RandomStrategy = match p.get("strategy").cloned().map(serde_json::from_value) {
                Some(Ok(s)) => s,
                _ => return Ok(None),
            };
            gen_random_claw_free(get("n").unwrap_or(0), get("omega_target").unwrap_or(0), strategy, prov.seed)?.0
        }
        "line-graph-random" => {
            let mut r = rng(prov.seed);
            let f = random_bounded_degree(
                get("vertices").unwrap_or(0),
                get("edges").unwrap_or(0),
                get("max_degree").unwrap_or(0),
                &mut r,
            );
            gen_line_graph(&f).0
        }
        "line-graph-regular" => {
            let mut r = rng(prov.seed);
            let f = random_regular(get("vertices").unwrap_or(0), get("degree").unwrap_or(0), &mut r)?;
            gen_line_graph(&f).0
        }
        "blowup-c5" => {
            let sizes: [usize; 5] = match p.get("sizes").cloned().map(serde_json::from_value) {
                Some(Ok(s)) => s,
                _ => return Ok(None),
            };
            let f = gen_blowup_c5(&BlowupSpec::new(sizes))?;
            let mut r = rng(prov.seed);
            let l = gen_line_graph(&f).0;
            delete_random_vertices(&l, get("delete").unwrap_or(0), &mut r)
        }
        "vertex-deletion" => {
            let base = p.get("base").and_then(Value::as_str).unwrap_or("");
            let Some(g) = named_instance(base) else { return Ok(None) };
            let mut r = rng(prov.seed);
            let g = delete_random_vertices(&g, get("delete").unwrap_or(0), &mut r);
            permute(&g, &mut r)
        }
        "small-omega" => {
            let mut r = rng(prov.seed);
            small_omega_instance(get("components").unwrap_or(1), &mut r)
        }
        "disjoint-union" => {
            let a = p.get("left").and_then(Value::as_str).and_then(named_instance);
            let b = p.get("right").and_then(Value::as_str).and_then(named_instance);
            match (a, b) {
                (Some(a), Some(b)) => disjoint_union(&a, &b),
                _ => return Ok(None),
            }
        }
        _ => return Ok(None),
    }))
}

/// Named instances, including a few line graphs and blow-ups.
pub fn named_instance(name: &str) -> Option<Graph> {
    if let Some(g) = named::by_name(name) {
        return Some(g);
    }
    if let Some(rest) = name.strip_prefix("line-") {
        return named_instance(rest).map(|f| gen_line_graph(&f).0);
    }
    if let Some(rest) = name.strip_prefix("cycle") {
        return rest.parse().ok().filter(|&n| n >= 3).map(named::cycle);
    }
    if let Some(rest) = name.strip_prefix("path") {
        return rest.parse().ok().map(named::path);
    }
    if let Some(rest) = name.strip_prefix("complete") {
        return rest.parse().ok().map(named::complete);
    }
    if let Some(rest) = name.strip_prefix("blowup") {
        let sizes: Vec<usize> = rest.chars().filter_map(|c| c.to_digit(10).map(|d| d as usize)).collect();
        let sizes: [usize; 5] = sizes.try_into().ok()?;
        return gen_blowup_c5(&BlowupSpec::new(sizes)).ok();
    }
    None
}

/// Disjoint union of random paths and cycles.
fn small_omega_instance(components: usize, r: &mut Rng64) -> Graph {
    let mut g = Graph::empty(0);
    for _ in 0..components {
        let len = r.gen_range(1..=9);
        let part = if len >= 4 && r.gen_bool(0.5) { named::cycle(len) } else { named::path(len) };
        g = disjoint_union(&g, &part);
    }
    g
}

const BASES: [&str; 11] = [
    "line-robertson",
    "line-quartic20",
    "icosahedron",
    "octahedron",
    "line-petersen",
    "line-k5",
    "line-k33",
    "line-cube",
    "line-blowup22222",
    "line-blowup11122",
    "line-line-k4",
];

/// The shipped corpus: several hundred claw-free graphs on at most 40
/// vertices, deterministic in `seed`.
pub fn standard_corpus(seed: u64) -> Vec<CorpusEntry> {
    standard_corpus_with(seed, Execution::default())
}

pub fn standard_corpus_with(seed: u64, exec: Execution) -> Vec<CorpusEntry> {
    let mut specs: Vec<(String, Provenance)> = Vec::new();
    let mut push = |id: String, prov: Provenance| specs.push((id, prov));

    for name in [
        "icosahedron",
        "octahedron",
        "line-petersen",
        "line-k4",
        "line-k5",
        "line-k33",
        "line-cube",
        "complete3",
        "complete4",
        "complete5",
        "line-blowup11122",
        "line-blowup22222",
        "line-blowup11111",
        "line-blowup12121",
        "line-line-k4",
        "line-robertson",
        "line-quartic20",
        "path1",
        "path2",
    ] {
        push(name.to_string(), named_prov(name));
    }
    for n in 4..=12 {
        push(format!("cycle{n}"), named_prov(&format!("cycle{n}")));
    }
    for (l, r) in [("icosahedron", "octahedron"), ("line-petersen", "cycle7"), ("line-k5", "complete4")] {
        push(
            format!("union-{l}-{r}"),
            Provenance { generator: "disjoint-union".into(), params: json!({ "left": l, "right": r }), seed: 0 },
        );
    }

    let mut r = rng(seed);
    let mut next_seed = || r.gen::<u64>();

    for i in 0..180 {
        let max_degree = 3 + i % 3;
        let s = next_seed();
        let mut pr = rng(s ^ 0x9e37_79b9_7f4a_7c15);
        let edges: usize = pr.gen_range(6..=40);
        let vertices = (2 * edges).div_ceil(max_degree) + pr.gen_range(1..=6);
        push(
            format!("lg-d{max_degree}-{i:03}"),
            Provenance {
                generator: "line-graph-random".into(),
                params: json!({ "vertices": vertices, "edges": edges, "max_degree": max_degree }),
                seed: s,
            },
        );
    }
    // regular roots: no reducible vertex survives long, so these exercise
    // the line-graph base cases
    for i in 0..40 {
        let s = next_seed();
        let (degree, vertices) = if i < 20 { (3, 8 + 2 * (i % 7)) } else { (4, 9 + (i % 12)) };
        push(
            format!("lg-reg{degree}-{i:03}"),
            Provenance {
                generator: "line-graph-regular".into(),
                params: json!({ "vertices": vertices, "degree": degree }),
                seed: s,
            },
        );
    }
    for i in 0..80 {
        let s = next_seed();
        let mut pr = rng(s ^ 0x5851_f42d_4c95_7f2d);
        let d = pr.gen_range(3..=5);
        let sizes = loop {
            let mut sizes = [0usize; 5];
            for x in sizes.iter_mut() {
                *x = pr.gen_range(1..=d - 1);
            }
            if (0..5).all(|k| BlowupSpec::new(sizes).class_degree(k) <= d) {
                break sizes;
            }
        };
        let total: usize = (0..5).map(|k| sizes[k] * sizes[(k + 1) % 5]).sum();
        let delete = pr.gen_range(0..=total / 3);
        push(
            format!("blowup-{i:03}"),
            Provenance { generator: "blowup-c5".into(), params: json!({ "sizes": sizes, "delete": delete }), seed: s },
        );
    }
    for i in 0..120 {
        let base = BASES[i % BASES.len()];
        let s = next_seed();
        let n = named_instance(base).unwrap().n();
        let delete = rng(s).gen_range(1..=n / 2);
        push(
            format!("del-{base}-{i:03}"),
            Provenance {
                generator: "vertex-deletion".into(),
                params: json!({ "base": base, "delete": delete }),
                seed: s,
            },
        );
    }
    for i in 0..80 {
        let s = next_seed();
        let n = 5 + i % 6;
        let omega = 3 + i % 3;
        push(
            format!("gnp-{i:03}"),
            Provenance {
                generator: "random-claw-free".into(),
                params: json!({ "n": n, "omega_target": omega, "strategy": RandomStrategy::Rejection }),
                seed: s,
            },
        );
    }
    for i in 0..30 {
        let s = next_seed();
        let strategy = if i % 2 == 0 { RandomStrategy::LineGraph } else { RandomStrategy::Blowup };
        let n = 10 + i;
        let omega = 3 + i % 3;
        push(
            format!("rcf-{i:03}"),
            Provenance {
                generator: "random-claw-free".into(),
                params: json!({ "n": n, "omega_target": omega, "strategy": strategy }),
                seed: s,
            },
        );
    }
    for i in 0..25 {
        let s = next_seed();
        push(
            format!("paths-cycles-{i:03}"),
            Provenance { generator: "small-omega".into(), params: json!({ "components": 1 + i % 4 }), seed: s },
        );
    }

    par::map(exec, &specs, |(id, prov)| {
        let g = regenerate(prov).expect("corpus generator failed").expect("corpus generator known");
        CorpusEntry::new(id.clone(), g, prov.clone())
    })
}

/// Writes `<id>.col` files plus `manifest.json` into `dir`.
pub fn write_corpus(dir: &Path, entries: &[CorpusEntry]) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    let mut manifest = Vec::with_capacity(entries.len());
    for e in entries {
        let m = e.manifest_entry();
        fs::write(dir.join(&m.file), write_dimacs(&e.graph))?;
        manifest.push(m);
    }
    let text = serde_json::to_string_pretty(&manifest).expect("manifest serialises");
    fs::write(dir.join("manifest.json"), text + "\n")
}

pub fn read_manifest(path: &Path) -> std::result::Result<Vec<ManifestEntry>, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blowup_examples() {
        let c5 = gen_blowup_c5(&BlowupSpec::new([1, 1, 1, 1, 1])).unwrap();
        assert_eq!(c5, named::cycle(5));
        let b = gen_blowup_c5(&BlowupSpec::new([1, 1, 1, 2, 2])).unwrap();
        assert_eq!((b.n(), b.edge_count(), b.max_degree()), (7, 10, 3));
        let degrees: Vec<_> = (0..5).map(|i| BlowupSpec::new([1, 1, 1, 2, 2]).class_degree(i)).collect();
        assert_eq!(degrees, vec![3, 2, 3, 3, 3]);
        let b = gen_blowup_c5(&BlowupSpec::new([2; 5])).unwrap();
        assert_eq!((b.n(), b.edge_count(), b.max_degree()), (10, 20, 4));
        assert!(gen_blowup_c5(&BlowupSpec::new([1, 0, 1, 1, 1])).is_err());
        assert!(gen_blowup_c5(&BlowupSpec::new([2; 5]).with_max_degree(3)).is_err());
    }

    #[test]
    fn line_graph_examples() {
        assert_eq!(gen_line_graph(&named::claw()).0, named::complete(3));
        assert_eq!(gen_line_graph(&named::path(4)).0, named::path(3));
        let (lp, bij) = gen_line_graph(&named::petersen());
        assert_eq!(lp.n(), 15);
        assert!((0..15).all(|v| lp.degree(v) == 4));
        assert!(is_claw_free(&lp));
        assert_eq!(bij.len(), 15);
    }

    #[test]
    fn icosahedron_shape() {
        let g = gen_icosahedron();
        assert_eq!((g.n(), g.edge_count()), (12, 30));
        for v in 0..12 {
            assert_eq!(g.degree(v), 5);
            let (h, _) = g.induced_subgraph(g.neighbor_set(v)).unwrap();
            assert!(h.is_connected() && (0..5).all(|x| h.degree(x) == 2));
        }
    }

    #[test]
    fn dimacs_examples() {
        let g = parse_dimacs("p edge 3 3\ne 1 2\ne 2 3\ne 1 3").unwrap();
        assert_eq!(g, named::complete(3));
        let messy = "c a comment\np edge 4 2\ne 3 2\n\ne 1 4\n";
        let g = parse_dimacs(messy).unwrap();
        assert_eq!(write_dimacs(&g), "p edge 4 2\ne 1 4\ne 2 3\n");
        assert_eq!(write_dimacs(&parse_dimacs(&write_dimacs(&g)).unwrap()), write_dimacs(&g));
        assert!(matches!(parse_dimacs("p edge 3 1\ne 4 1\n"), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(parse_dimacs("p edge 3 2\ne 1 2\ne 2 1\n"), Err(Error::DuplicateEdge(0, 1))));
        assert!(matches!(parse_dimacs("e 1 2\n"), Err(Error::Syntax { line: 1, .. })));
        assert!(matches!(parse_dimacs("p edge 3 2\ne 1 2\n"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_dimacs("p edge 3 1\nx 1 2\n"), Err(Error::Syntax { line: 2, .. })));
    }

    #[test]
    fn random_generators() {
        let (g, prov) = gen_random_claw_free(30, 3, RandomStrategy::LineGraph, 7).unwrap();
        assert!(is_claw_free(&g) && g.clique_number() <= 3);
        assert_eq!(prov.seed, 7);
        assert_eq!(gen_random_claw_free(0, 3, RandomStrategy::Rejection, 1).unwrap().0.n(), 0);
        let (a, _) = gen_random_claw_free(10, 4, RandomStrategy::Rejection, 42).unwrap();
        let (b, _) = gen_random_claw_free(10, 4, RandomStrategy::Rejection, 42).unwrap();
        assert_eq!(a.edges(), b.edges());
        assert!(a.clique_number() <= 4 && is_claw_free(&a));
        let (c, _) = gen_random_claw_free(20, 4, RandomStrategy::Blowup, 3).unwrap();
        assert!(c.n() <= 20 && is_claw_free(&c));
    }

    #[test]
    fn regular_roots() {
        let mut r = rng(5);
        let f = random_regular(12, 4, &mut r).unwrap();
        assert!((0..12).all(|v| f.degree(v) == 4));
        assert!(random_regular(7, 3, &mut r).is_err());
    }

    #[test]
    fn regenerate_round_trip() {
        let (g, prov) = gen_random_claw_free(12, 4, RandomStrategy::Blowup, 99).unwrap();
        assert_eq!(regenerate(&prov).unwrap().unwrap(), g);
        assert!(regenerate(&Provenance { generator: "nope".into(), params: json!({}), seed: 0 }).unwrap().is_none());
    }

    #[test]
    fn named_lookup() {
        assert_eq!(named_instance("line-blowup22222").unwrap().n(), 20);
        assert_eq!(named_instance("cycle7").unwrap(), named::cycle(7));
        assert!(named_instance("cycle2").is_none());
        assert!(named_instance("mystery").is_none());
    }
}

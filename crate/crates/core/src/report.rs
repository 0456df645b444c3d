//! JSON run reports shared by the command-line front end and the test
//! suites. Everything except `timings` is a pure function of the input.

use std::time::Instant;

use serde::Serialize;

use crate::analysis::{check_all_lemmas, find_claw, vertex_profile, ClawWitness, LemmaReport, VertexProfile};
use crate::coloring::verify_coloring;
use crate::engine::{bound_for_omega, color_square_traced, ComponentRun};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracle::{exact_chromatic_with_limit, DEFAULT_NODE_LIMIT};
use crate::par::{self, Execution};
use crate::structure::{classify, Classification};

pub const SCHEMA: &str = "clawsq/1";

/// Largest square handed to the exact oracle by default.
pub const ORACLE_MAX_VERTICES: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReportOptions {
    pub timings: bool,
    pub oracle: bool,
    pub oracle_max_vertices: usize,
    pub node_limit: u64,
    pub lemmas: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            timings: true,
            oracle: false,
            oracle_max_vertices: ORACLE_MAX_VERTICES,
            node_limit: DEFAULT_NODE_LIMIT,
            lemmas: true,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Timings {
    pub analysis_ms: f64,
    pub color_ms: f64,
    pub oracle_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleCheck {
    pub chromatic: Option<usize>,
    pub nodes_explored: u64,
    /// Engine palette minus the exact value, when both are known.
    pub gap: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentClass {
    pub vertices: usize,
    pub omega: usize,
    pub summary: String,
    pub witness_verified: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub schema: &'static str,
    pub id: String,
    pub n: usize,
    pub m: usize,
    pub omega: usize,
    pub claw_free: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub claw: Option<ClawWitness>,
    pub classification: String,
    pub components: Vec<ComponentClass>,
    pub palette: Option<usize>,
    pub bound: usize,
    pub verified: bool,
    pub lemma_failures: Vec<LemmaReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runs: Option<Vec<ComponentRun>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coloring: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

/// `analyze` output: the run report plus per-vertex tables.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    #[serde(flatten)]
    pub run: RunReport,
    pub square_degrees: Vec<usize>,
    pub profiles: Vec<VertexProfile>,
}

impl RunReport {
    fn skeleton(id: &str, g: &Graph) -> RunReport {
        let claw = find_claw(g);
        let omega = g.clique_number();
        RunReport {
            schema: SCHEMA,
            id: id.to_string(),
            n: g.n(),
            m: g.edge_count(),
            omega,
            claw_free: claw.is_none(),
            claw,
            classification: String::new(),
            components: Vec::new(),
            palette: None,
            bound: bound_for_omega(omega),
            verified: false,
            lemma_failures: Vec::new(),
            runs: None,
            coloring: None,
            oracle: None,
            error: None,
            timings: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

fn classify_components(g: &Graph) -> Result<Vec<ComponentClass>> {
    let mut out = Vec::new();
    for comp in g.connected_components() {
        let (h, _) = g.induced_subgraph(&comp)?;
        let omega = h.clique_number();
        let (summary, witness_verified) = match classify(&h, omega) {
            Ok(c) => (c.summary(), c.verify(&h, omega)),
            // beyond clique number 4 the disjunction is informational only
            Err(Error::TheoremViolation(m)) if omega >= 5 => (format!("unclassified ({m})"), false),
            Err(e) => return Err(e),
        };
        out.push(ComponentClass { vertices: h.n(), omega, summary, witness_verified });
    }
    Ok(out)
}

fn join_summaries(components: &[ComponentClass]) -> String {
    components.iter().map(|c| c.summary.as_str()).collect::<Vec<_>>().join("; ")
}

/// Structural analysis without colouring. A claw is reported, not raised.
pub fn analyze(id: &str, g: &Graph, opts: &ReportOptions) -> Result<AnalysisReport> {
    let start = Instant::now();
    let mut run = RunReport::skeleton(id, g);
    let square_degrees = (0..g.n()).map(|v| g.square_neighbor_set(v).len()).collect();
    let mut profiles = Vec::new();
    if run.claw_free {
        run.components = classify_components(g)?;
        run.classification = join_summaries(&run.components);
        if opts.lemmas {
            run.lemma_failures = failures(g, run.omega)?;
        }
        profiles = (0..g.n()).map(|v| vertex_profile(g, v)).collect::<Result<_>>()?;
    } else {
        run.classification = "not claw-free".into();
    }
    if opts.timings {
        run.timings = Some(Timings { analysis_ms: ms(start), ..Timings::default() });
    }
    Ok(AnalysisReport { run, square_degrees, profiles })
}

fn failures(g: &Graph, omega: usize) -> Result<Vec<LemmaReport>> {
    Ok(check_all_lemmas(g, omega, Execution::Sequential)?.into_iter().filter(|r| !r.holds).collect())
}

fn ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

/// Classifies, colours, verifies and optionally cross-checks one graph.
/// Errors from the engine (claws, bound violations) are returned as-is.
pub fn color(id: &str, g: &Graph, opts: &ReportOptions) -> Result<RunReport> {
    let mut run = RunReport::skeleton(id, g);
    if let Some(w) = run.claw {
        return Err(Error::NotClawFree(w));
    }
    let t0 = Instant::now();
    run.components = classify_components(g)?;
    run.classification = join_summaries(&run.components);
    if opts.lemmas {
        run.lemma_failures = failures(g, run.omega)?;
    }
    let analysis_ms = ms(t0);

    let t1 = Instant::now();
    let (c, runs) = color_square_traced(g)?;
    let color_ms = ms(t1);
    run.verified = verify_coloring(g, &c)? && c.palette_size() <= run.bound;
    run.palette = Some(c.palette_size());
    run.coloring = Some(c.colors().to_vec());
    run.runs = Some(runs);

    let t2 = Instant::now();
    if opts.oracle && g.n() <= opts.oracle_max_vertices {
        let exact = exact_chromatic_with_limit(&g.square(), c.palette_size(), opts.node_limit)?;
        run.oracle = Some(OracleCheck {
            chromatic: exact.value,
            nodes_explored: exact.nodes_explored,
            gap: exact.value.map(|x| c.palette_size() - x),
        });
    }
    if opts.timings {
        run.timings = Some(Timings { analysis_ms, color_ms, oracle_ms: ms(t2) });
    }
    Ok(run)
}

/// Like [`color`] but folds errors into the report, for batch runs.
pub fn color_or_report(id: &str, g: &Graph, opts: &ReportOptions) -> RunReport {
    color(id, g, opts).unwrap_or_else(|e| {
        let mut run = RunReport::skeleton(id, g);
        run.error = Some(e.to_string());
        run
    })
}

pub fn color_batch(items: &[(String, Graph)], opts: &ReportOptions, exec: Execution) -> Vec<RunReport> {
    par::map(exec, items, |(id, g)| color_or_report(id, g, opts))
}

/// Counts in a batch that a reviewer checks first.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct BatchSummary {
    pub graphs: usize,
    pub verified: usize,
    pub errors: usize,
    pub lemma_failures: usize,
    pub max_oracle_gap: Option<usize>,
}

pub fn summarize(reports: &[RunReport]) -> BatchSummary {
    BatchSummary {
        graphs: reports.len(),
        verified: reports.iter().filter(|r| r.verified).count(),
        errors: reports.iter().filter(|r| r.error.is_some()).count(),
        lemma_failures: reports.iter().map(|r| r.lemma_failures.len()).sum(),
        max_oracle_gap: reports.iter().filter_map(|r| r.oracle.as_ref()?.gap).max(),
    }
}

/// Classification of a connected graph together with its witness check,
/// for callers that want the structured value rather than the summary.
pub fn classify_checked(g: &Graph) -> Result<(Classification, bool)> {
    let omega = g.clique_number();
    let c = classify(g, omega)?;
    let ok = c.verify(g, omega);
    Ok((c, ok))
}

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use clawsq::analysis::check_all_lemmas;
use clawsq::corpus::{
    gen_blowup_c5, gen_icosahedron, gen_line_graph, gen_random_claw_free, named_instance, parse_dimacs, read_manifest,
    standard_corpus_with, write_corpus, write_dimacs, BlowupSpec, RandomStrategy,
};
use clawsq::report::{self, ReportOptions, SCHEMA};
use clawsq::{Error, Execution, Graph};

#[derive(Parser)]
#[command(name = "clawsq", version, about = "Colour squares of claw-free graphs and check the bounds behind them")]
struct Cli {
    /// Worker threads for batch commands (1 = sequential; default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dimacs,
}

#[derive(clap::Args)]
struct Common {
    /// Input format
    #[arg(long, value_enum, default_value = "dimacs")]
    format: Format,
    /// Leave wall-clock timings out of the report
    #[arg(long)]
    no_timings: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Clique number, claw witness, square degrees, Z/q tables and classification
    Analyze {
        path: PathBuf,
        #[command(flatten)]
        common: Common,
        /// Exit with code 2 if the graph has an induced claw
        #[arg(long)]
        require_claw_free: bool,
    },
    /// Colour the square and verify the result
    Color {
        path: PathBuf,
        #[command(flatten)]
        common: Common,
        /// Cross-check against the exact chromatic number (small inputs only)
        #[arg(long)]
        oracle: bool,
        /// Largest vertex count handed to the oracle
        #[arg(long, default_value_t = report::ORACLE_MAX_VERTICES)]
        oracle_max: usize,
        /// Backtracking node budget for the oracle
        #[arg(long, default_value_t = clawsq::oracle::DEFAULT_NODE_LIMIT)]
        node_limit: u64,
    },
    /// Check every degree and second-neighbourhood inequality on a corpus
    VerifyLemmas { manifest: PathBuf },
    /// Colour a whole corpus, optionally against the oracle, and summarise
    CrossCheck {
        manifest: PathBuf,
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = report::ORACLE_MAX_VERTICES)]
        oracle_max: usize,
        #[arg(long, default_value_t = clawsq::oracle::DEFAULT_NODE_LIMIT)]
        node_limit: u64,
        /// Also write one report per graph into this directory
        #[arg(long)]
        reports: Option<PathBuf>,
    },
    /// Write generated instances as DIMACS
    Generate {
        #[command(subcommand)]
        kind: GenKind,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// Blow-up of the five-cycle (the root graph, or its line graph with --line)
    BlowupC5 {
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long)]
        line: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Icosahedron {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Line graph of a named graph (petersen, k4, cycle7, ...)
    LineGraph {
        #[arg(long)]
        of: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded random claw-free graph
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        omega: usize,
        #[arg(long, value_enum, default_value = "line-graph")]
        strategy: Strategy,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The standard test corpus with its manifest
    Corpus {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Strategy {
    LineGraph,
    Blowup,
    Rejection,
}

/// Failure carrying its exit code: 1 input, 2 claw, 3 internal violation.
struct Fail(u8, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotClawFree(_) => 2,
            Error::InternalBoundViolation(_)
            | Error::TheoremViolation(_)
            | Error::BudgetExhausted(_)
            | Error::Timeout(_) => 3,
            _ => 1,
        };
        Fail(code, e.to_string())
    }
}

fn input(msg: impl std::fmt::Display) -> Fail {
    Fail(1, msg.to_string())
}

fn read_graph(path: &Path, _format: Format) -> Result<Graph, Fail> {
    let text = fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    parse_dimacs(&text).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn id_of(path: &Path) -> String {
    path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

fn emit(v: &impl serde::Serialize) {
    let text = serde_json::to_string_pretty(v).expect("report serialises");
    stdout(&format!("{text}\n"));
}

// a closed pipe (`| head`) is not an error worth a panic
fn stdout(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn write_out(out: &Option<PathBuf>, g: &Graph) -> Result<(), Fail> {
    let text = write_dimacs(g);
    match out {
        Some(p) => fs::write(p, text).map_err(|e| input(format!("{}: {e}", p.display()))),
        None => {
            stdout(&text);
            Ok(())
        }
    }
}

type Loaded = Vec<(String, Result<Graph, Fail>)>;

fn load_manifest(path: &Path) -> Result<Loaded, Fail> {
    let entries = read_manifest(path).map_err(input)?;
    let dir = path.parent().unwrap_or(Path::new("."));
    Ok(entries.into_iter().map(|m| (m.id, read_graph(&dir.join(&m.file), Format::Dimacs))).collect())
}

fn run(cli: Cli) -> Result<(), Fail> {
    let exec = match cli.jobs {
        Some(1) => Execution::Sequential,
        _ => Execution::Parallel,
    };
    if let Some(j) = cli.jobs.filter(|&j| j > 1) {
        rayon::ThreadPoolBuilder::new().num_threads(j).build_global().map_err(input)?;
    }
    match cli.cmd {
        Cmd::Analyze { path, common, require_claw_free } => {
            let g = read_graph(&path, common.format)?;
            let opts = ReportOptions { timings: !common.no_timings, ..ReportOptions::default() };
            let r = report::analyze(&id_of(&path), &g, &opts)?;
            emit(&r);
            if require_claw_free && !r.run.claw_free {
                return Err(Fail(2, format!("induced claw {}", r.run.claw.expect("claw"))));
            }
        }
        Cmd::Color { path, common, oracle, oracle_max, node_limit } => {
            let g = read_graph(&path, common.format)?;
            let opts = ReportOptions {
                timings: !common.no_timings,
                oracle,
                oracle_max_vertices: oracle_max,
                node_limit,
                lemmas: true,
            };
            let r = report::color(&id_of(&path), &g, &opts)?;
            emit(&r);
            if !r.verified {
                return Err(Fail(3, "colouring failed verification".into()));
            }
        }
        Cmd::VerifyLemmas { manifest } => {
            let graphs = load_manifest(&manifest)?;
            if graphs.is_empty() {
                log::warn!("manifest {} lists no graphs", manifest.display());
            }
            let mut checked = 0;
            let (mut failures, mut errors) = (Vec::new(), Vec::new());
            let mut code = 0;
            for (id, g) in graphs {
                let g = match g {
                    Ok(g) => g,
                    Err(Fail(c, m)) => {
                        code = code.max(c);
                        errors.push(json!({ "id": id, "error": m }));
                        continue;
                    }
                };
                match check_all_lemmas(&g, g.clique_number(), exec) {
                    Ok(rs) => {
                        checked += rs.len();
                        for r in rs.into_iter().filter(|r| !r.holds) {
                            code = code.max(3);
                            failures.push(json!({ "id": id, "report": r }));
                        }
                    }
                    Err(e) => {
                        let f = Fail::from(e);
                        code = code.max(f.0);
                        errors.push(json!({ "id": id, "error": f.1 }));
                    }
                }
            }
            emit(&json!({ "schema": SCHEMA, "checked": checked, "failures": failures, "errors": errors }));
            if code != 0 {
                return Err(Fail(code, format!("{} lemma failures, {} errors", failures.len(), errors.len())));
            }
        }
        Cmd::CrossCheck { manifest, oracle, oracle_max, node_limit, reports } => {
            let graphs = load_manifest(&manifest)?;
            let mut items = Vec::new();
            let mut code = 0;
            let mut errors = Vec::new();
            for (id, g) in graphs {
                match g {
                    Ok(g) => items.push((id, g)),
                    Err(Fail(c, m)) => {
                        code = code.max(c);
                        errors.push(json!({ "id": id, "error": m }));
                    }
                }
            }
            let opts =
                ReportOptions { timings: false, oracle, oracle_max_vertices: oracle_max, node_limit, lemmas: true };
            let runs = report::color_batch(&items, &opts, exec);
            for r in &runs {
                if let Some(e) = &r.error {
                    code = code.max(if r.claw_free { 3 } else { 2 });
                    errors.push(json!({ "id": r.id, "error": e }));
                } else if !r.verified || !r.lemma_failures.is_empty() {
                    code = code.max(3);
                }
            }
            if let Some(dir) = reports {
                fs::create_dir_all(&dir).map_err(input)?;
                for r in &runs {
                    fs::write(dir.join(format!("{}.json", r.id)), r.to_json() + "\n").map_err(input)?;
                }
            }
            let per_graph: Vec<Value> = runs
                .iter()
                .map(|r| {
                    json!({
                        "id": r.id, "omega": r.omega, "palette": r.palette, "bound": r.bound,
                        "verified": r.verified, "oracle": r.oracle.as_ref().and_then(|o| o.chromatic),
                    })
                })
                .collect();
            emit(&json!({
                "schema": SCHEMA,
                "summary": report::summarize(&runs),
                "errors": errors,
                "graphs": per_graph,
            }));
            if code != 0 {
                return Err(Fail(code, "cross-check found problems".into()));
            }
        }
        Cmd::Generate { kind } => match kind {
            GenKind::BlowupC5 { sizes, line, out } => {
                let sizes: [usize; 5] = sizes.try_into().map_err(|_| input("--sizes takes five values"))?;
                let f = gen_blowup_c5(&BlowupSpec::new(sizes))?;
                write_out(&out, &if line { gen_line_graph(&f).0 } else { f })?;
            }
            GenKind::Icosahedron { out } => write_out(&out, &gen_icosahedron())?,
            GenKind::LineGraph { of, out } => {
                let f = named_instance(&of).ok_or_else(|| input(format!("unknown graph {of}")))?;
                write_out(&out, &gen_line_graph(&f).0)?;
            }
            GenKind::Random { n, omega, strategy, seed, out } => {
                let strategy = match strategy {
                    Strategy::LineGraph => RandomStrategy::LineGraph,
                    Strategy::Blowup => RandomStrategy::Blowup,
                    Strategy::Rejection => RandomStrategy::Rejection,
                };
                let (g, prov) = gen_random_claw_free(n, omega, strategy, seed)?;
                log::info!("provenance {}", serde_json::to_string(&prov).expect("serialises"));
                write_out(&out, &g)?;
            }
            GenKind::Corpus { out, seed } => {
                let entries = standard_corpus_with(seed, exec);
                write_corpus(&out, &entries).map_err(|e| input(format!("{}: {e}", out.display())))?;
                log::info!("wrote {} graphs to {}", entries.len(), out.display());
            }
        },
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .target(env_logger::Target::Stderr)
        .init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

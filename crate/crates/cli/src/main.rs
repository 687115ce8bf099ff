//! Command-line front end: exact coloring, critical cores, complete-join
//! decomposition, immersion construction/verification, the seeded
//! experiment harness, and the crossing-number bound calculators.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or precondition
//! errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use immersion_core::bounds::{
    albertson_case_report, auxiliary_bound, hill_number, lower_bound, quartic_upper_bound,
    AuxiliaryBoundKind, LowerBoundKind, PartSummary,
};
use immersion_core::chromatic::{chromatic_number, critical_subgraph, ChiConfig};
use immersion_core::experiments::{
    maximize_degree_bound, median_ratio_per_k, plot_svg, run_trials, to_csv, ExperimentConfig,
};
use immersion_core::gallai::{gallai_decompose, verify_decomposition};
use immersion_core::graph::formats::{parse_dimacs, parse_graph6, write_graph6};
use immersion_core::graph::SimpleGraph;
use immersion_core::immersion::{
    construct_immersion, verify_weak_immersion, Certificate, ImmersionConfig, Strategy, WeakImmersion,
};

/// Environment variable overriding the exact solver's vertex cap.
const CHI_CAP_ENV: &str = "IMMERSION_CHI_CAP";

#[derive(Parser)]
#[command(name = "immersion", about = "Weak clique immersions: build, verify, measure", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FileFormat {
    Auto,
    Graph6,
    Dimacs,
}

#[derive(Args)]
struct GraphInput {
    /// Graph file (graph6 or DIMACS edge list).
    file: PathBuf,
    #[arg(long, value_enum, default_value = "auto")]
    format: FileFormat,
}

#[derive(Subcommand)]
enum Command {
    /// Exact chromatic number with a witness coloring.
    Chi(GraphInput),
    /// Extract a chi-preserving critical subgraph.
    Critical(GraphInput),
    /// Complete-join decomposition with full verification.
    Gallai {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        k: usize,
    },
    /// Construct a weak immersion certificate.
    Immerse {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "arbitrary")]
        strategy: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Certificate output path (JSON).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a certificate against a graph.
    Verify {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        cert: PathBuf,
        /// Additionally require path interiors to avoid branch vertices.
        #[arg(long)]
        strong: bool,
    },
    /// Run the seeded semi-random experiment harness.
    Experiment {
        /// JSON experiment config.
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// CSV output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Optional SVG scatter of delta_H/k against k.
        #[arg(long)]
        plot: Option<PathBuf>,
        /// Worker threads (defaults to the rayon global pool).
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Maximize the semi-random degree bound for a threshold ratio.
    DegreeBound {
        #[arg(long, default_value_t = 1.125)]
        delta: f64,
        #[arg(long, default_value_t = 1e-3)]
        resolution: f64,
    },
    /// Crossing-number bound calculators.
    Bounds {
        #[command(subcommand)]
        which: BoundsCommand,
    },
}

#[derive(Subcommand)]
enum BoundsCommand {
    /// Conjectured crossing number of K_k (floor-product formula).
    Hill {
        #[arg(long)]
        k: u64,
    },
    /// Lower bounds: complete graphs, complete bipartite graphs, the
    /// crossing lemma.
    Lower {
        #[command(subcommand)]
        kind: LowerCommand,
    },
    /// Auxiliary bounds used by the case analysis.
    Aux {
        #[command(subcommand)]
        kind: AuxCommand,
    },
    /// Case-analysis ledger for a decomposition summary.
    Case {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        n: u64,
        /// Comma-separated n_i:k_i pairs, e.g. "5:3,1:1,1:1".
        #[arg(long)]
        parts: String,
    },
}

#[derive(Subcommand)]
enum LowerCommand {
    Complete {
        #[arg(long)]
        k: u64,
    },
    Bipartite {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
    },
    CrossingLemma {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
    },
}

#[derive(Subcommand)]
enum AuxCommand {
    AddEdge {
        #[arg(long)]
        cr: f64,
        #[arg(long)]
        m: u64,
    },
    SampledEdges {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        a: u64,
    },
    ImmersionOverhead {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
    },
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn chi_config() -> Result<ChiConfig> {
    match std::env::var(CHI_CAP_ENV) {
        Ok(v) => {
            let cap: usize = v.parse().with_context(|| format!("bad {CHI_CAP_ENV} value '{v}'"))?;
            Ok(ChiConfig::with_cap(cap))
        }
        Err(_) => Ok(ChiConfig::default()),
    }
}

fn load_graph(input: &GraphInput) -> Result<SimpleGraph> {
    let bytes = fs::read(&input.file)
        .with_context(|| format!("cannot read {}", input.file.display()))?;
    let parsed = match input.format {
        FileFormat::Graph6 => parse_graph6(&bytes),
        FileFormat::Dimacs => parse_dimacs(&bytes),
        FileFormat::Auto => {
            if looks_like_dimacs(&input.file, &bytes) {
                parse_dimacs(&bytes)
            } else {
                parse_graph6(&bytes)
            }
        }
    };
    parsed.map_err(|e| anyhow!("{e}"))
}

fn looks_like_dimacs(path: &Path, bytes: &[u8]) -> bool {
    if let Some(ext) = path.extension().and_then(|e| e.to_str()) {
        if matches!(ext, "col" | "dimacs" | "edge" | "clq") {
            return true;
        }
        if ext == "g6" {
            return false;
        }
    }
    bytes.starts_with(b"c ") || bytes.starts_with(b"p ") || bytes.starts_with(b"c\n")
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn run() -> Result<ExitCode> {
    let cli = Cli::parse();
    match cli.command {
        Command::Chi(input) => {
            let g = load_graph(&input)?;
            let r = chromatic_number(&g, &chi_config()?)?;
            print_json(&json!({
                "n": g.vertex_count(),
                "m": g.edge_count(),
                "chromatic_number": r.chi,
                "coloring": r.coloring,
            }));
            Ok(ExitCode::SUCCESS)
        }
        Command::Critical(input) => {
            let g = load_graph(&input)?;
            let cfg = chi_config()?;
            let k = chromatic_number(&g, &cfg)?.chi;
            let (h, vertex_map) = critical_subgraph(&g, &cfg)?;
            print_json(&json!({
                "chromatic_number": k,
                "n": h.vertex_count(),
                "m": h.edge_count(),
                "vertices": vertex_map,
                "graph6": write_graph6(&h),
            }));
            Ok(ExitCode::SUCCESS)
        }
        Command::Gallai { input, k } => {
            let g = load_graph(&input)?;
            let cfg = chi_config()?;
            let d = gallai_decompose(&g, k, &cfg)?;
            let report = verify_decomposition(&g, k, &d, &cfg);
            let ok = report.all_passed();
            print_json(&json!({
                "k": k,
                "parts": d.parts.iter().map(|p| json!({
                    "vertices": p.vertices,
                    "n_i": p.n_i(),
                    "k_i": p.k_i,
                })).collect::<Vec<_>>(),
                "verification": report,
                "verified": ok,
            }));
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Immerse { input, k, strategy, seed, out } => {
            let g = load_graph(&input)?;
            let strategy: Strategy = strategy.parse().map_err(|e: String| anyhow!(e))?;
            let cfg = ImmersionConfig { chi: chi_config()?, ..ImmersionConfig::default() };
            let imm = construct_immersion(&g, k, strategy, seed, &cfg)?;
            let report = verify_weak_immersion(&g, &imm, false);
            let cert = imm.to_certificate(g.vertex_count());
            if let Some(path) = &out {
                fs::write(path, serde_json::to_string_pretty(&cert)?)
                    .with_context(|| format!("cannot write {}", path.display()))?;
            }
            let lengths = imm.path_lengths();
            print_json(&json!({
                "k": k,
                "n": g.vertex_count(),
                "strategy": format!("{strategy:?}").to_lowercase(),
                "seed": seed,
                "branch_vertices": imm.branch_vertices,
                "path_length_histogram": lengths.into_iter()
                    .map(|(l, c)| (l.to_string(), serde_json::Value::from(c)))
                    .collect::<serde_json::Map<String, serde_json::Value>>(),
                "certificate": out.as_ref().map(|p| p.display().to_string()),
                "verified": report.all_passed(),
            }));
            Ok(if report.all_passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Verify { input, cert, strong } => {
            let g = load_graph(&input)?;
            let text = fs::read_to_string(&cert)
                .with_context(|| format!("cannot read {}", cert.display()))?;
            let cert: Certificate = serde_json::from_str(&text).context("malformed certificate")?;
            if cert.n != g.vertex_count() {
                return Err(anyhow!(
                    "certificate is for an {}-vertex graph, input has {}",
                    cert.n,
                    g.vertex_count()
                ));
            }
            let imm = WeakImmersion::from_certificate(&cert);
            if imm.k() != cert.k {
                return Err(anyhow!("certificate k mismatch"));
            }
            let report = verify_weak_immersion(&g, &imm, strong);
            let ok = report.all_passed();
            print_json(&json!({
                "k": cert.k,
                "strong_checked": strong,
                "checks": report.checks,
                "passed": ok,
            }));
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Experiment { config, seed, out, plot, jobs } => {
            let text = fs::read_to_string(&config)
                .with_context(|| format!("cannot read {}", config.display()))?;
            let cfg: ExperimentConfig = serde_json::from_str(&text).context("malformed config")?;
            let rows = match jobs {
                Some(j) => rayon::ThreadPoolBuilder::new()
                    .num_threads(j)
                    .build()
                    .context("thread pool")?
                    .install(|| run_trials(&cfg, seed)),
                None => run_trials(&cfg, seed),
            }?;
            let csv = to_csv(&rows, cfg.diagnostics);
            match &out {
                Some(path) => {
                    fs::write(path, &csv).with_context(|| format!("cannot write {}", path.display()))?;
                    for (k, median) in median_ratio_per_k(&rows) {
                        eprintln!("k = {k}: median delta_H/k = {median:.4}");
                    }
                }
                None => print!("{csv}"),
            }
            if let Some(path) = &plot {
                fs::write(path, plot_svg(&rows))
                    .with_context(|| format!("cannot write {}", path.display()))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::DegreeBound { delta, resolution } => {
            let report = maximize_degree_bound(delta, resolution)?;
            print_json(&serde_json::to_value(&report)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Bounds { which } => {
            match which {
                BoundsCommand::Hill { k } => {
                    print_json(&json!({
                        "k": k,
                        "hill": hill_number(k).to_string(),
                        "quartic_upper_bound": quartic_upper_bound(k),
                    }));
                }
                BoundsCommand::Lower { kind } => {
                    let (label, b) = match kind {
                        LowerCommand::Complete { k } => {
                            ("complete", lower_bound(LowerBoundKind::CompleteGraph { k })?)
                        }
                        LowerCommand::Bipartite { a, b } => {
                            ("bipartite", lower_bound(LowerBoundKind::CompleteBipartite { a, b })?)
                        }
                        LowerCommand::CrossingLemma { n, m } => {
                            ("crossing-lemma", lower_bound(LowerBoundKind::CrossingLemma { n, m })?)
                        }
                    };
                    print_json(&json!({
                        "kind": label,
                        "value": b.value,
                        "asymptotic_caveat": b.asymptotic_caveat,
                    }));
                }
                BoundsCommand::Aux { kind } => {
                    let (label, b) = match kind {
                        AuxCommand::AddEdge { cr, m } => {
                            ("add-edge", auxiliary_bound(AuxiliaryBoundKind::AddEdge { cr, m })?)
                        }
                        AuxCommand::SampledEdges { n, m, a } => (
                            "sampled-edges",
                            auxiliary_bound(AuxiliaryBoundKind::SampledEdges { n, m, a })?,
                        ),
                        AuxCommand::ImmersionOverhead { n, k } => (
                            "immersion-overhead",
                            auxiliary_bound(AuxiliaryBoundKind::ImmersionOverhead { n, k })?,
                        ),
                    };
                    print_json(&json!({
                        "kind": label,
                        "value": b.value,
                        "within_half_k_cubed": b.within_half_k_cubed,
                    }));
                }
                BoundsCommand::Case { k, n, parts } => {
                    let parts = parse_parts(&parts)?;
                    let report = albertson_case_report(k, n, &parts)?;
                    print_json(&serde_json::to_value(&report)?);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn parse_parts(spec: &str) -> Result<Vec<PartSummary>> {
    spec.split(',')
        .map(|tok| {
            let (n_i, k_i) = tok
                .split_once(':')
                .ok_or_else(|| anyhow!("part '{tok}' is not n_i:k_i"))?;
            Ok(PartSummary { n_i: n_i.trim().parse()?, k_i: k_i.trim().parse()? })
        })
        .collect()
}

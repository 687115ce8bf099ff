//! Weak immersions of complete graphs: representation, verification, and
//! construction.
//!
//! The constructed immersion uses the union of per-part branch sets U_i as
//! branch vertices, all edges inside that union as length-1 paths, and for
//! each non-adjacent branch pair inside a part either a length-2 path
//! through a shared injection image or a length-4 path through a proper
//! edge coloring of the part's auxiliary multigraph, colored with the
//! branch vertices outside the part.

pub mod semirandom;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chromatic::{chromatic_number, critical_subgraph, ChiConfig, ChiError};
use crate::edge_color::{edge_color, realized_color_bound, EdgeColorError};
use crate::gallai::{gallai_decompose, GallaiError};
use crate::graph::{Multigraph, SimpleGraph};
use crate::seed::derive;
use crate::Check;

pub use semirandom::{semirandom_split, SemiRandomConfig, SemiRandomState};

#[derive(Debug, Error)]
pub enum ImmersionError {
    #[error(transparent)]
    Chi(#[from] ChiError),
    #[error(transparent)]
    Gallai(#[from] GallaiError),
    #[error(transparent)]
    EdgeColor(#[from] EdgeColorError),
    #[error("graph has chromatic number {actual}, not the claimed {claimed}")]
    WrongChromaticNumber { claimed: usize, actual: usize },
    #[error("hypothesis violated: n = {n} is not {bound} for k = {k}")]
    HypothesisViolated { n: usize, k: usize, bound: String },
    #[error("injection infeasible at vertex {vertex}: needs {needed} images, has {available}")]
    InjectionInfeasible { vertex: usize, needed: usize, available: usize },
    #[error(
        "edge-color budget exceeded in part {part}: needs {needed} colors, budget {budget}; \
         this contradicts the construction's counting and is a defect for the arbitrary strategy"
    )]
    ColoringBudgetExceeded { part: usize, needed: usize, budget: usize },
    #[error("semi-random strategy exhausted {attempts} retry seeds")]
    RetriesExhausted { attempts: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// A weak immersion of the complete graph on `branch_vertices.len()`
/// branch vertices: paths are keyed by branch-index pairs `(i, j)` with
/// `i < j` and stored as vertex sequences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakImmersion {
    pub branch_vertices: Vec<usize>,
    pub paths: BTreeMap<(usize, usize), Vec<usize>>,
}

impl WeakImmersion {
    pub fn k(&self) -> usize {
        self.branch_vertices.len()
    }

    pub fn path_lengths(&self) -> BTreeMap<usize, usize> {
        let mut hist = BTreeMap::new();
        for path in self.paths.values() {
            *hist.entry(path.len().saturating_sub(1)).or_insert(0) += 1;
        }
        hist
    }

    pub fn to_certificate(&self, n: usize) -> Certificate {
        Certificate {
            k: self.k(),
            n,
            branch_vertices: self.branch_vertices.clone(),
            paths: self
                .paths
                .iter()
                .map(|(&(i, j), vertices)| CertificatePath { pair: (i, j), vertices: vertices.clone() })
                .collect(),
        }
    }

    pub fn from_certificate(cert: &Certificate) -> WeakImmersion {
        WeakImmersion {
            branch_vertices: cert.branch_vertices.clone(),
            paths: cert.paths.iter().map(|p| (p.pair, p.vertices.clone())).collect(),
        }
    }
}

/// Self-contained serialized form: carries `k` and the host vertex count so
/// a verifier needs only the graph and this file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub k: usize,
    pub n: usize,
    pub branch_vertices: Vec<usize>,
    pub paths: Vec<CertificatePath>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificatePath {
    pub pair: (usize, usize),
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ImmersionReport {
    pub checks: Vec<Check>,
    pub strong_checked: bool,
}

impl ImmersionReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

/// Checks the weak-immersion conditions: injective branch map, full pair
/// coverage, valid connecting paths, pairwise edge-disjointness, and (when
/// `strong`) that path interiors avoid the branch set.
pub fn verify_weak_immersion(g: &SimpleGraph, imm: &WeakImmersion, strong: bool) -> ImmersionReport {
    let n = g.vertex_count();
    let k = imm.k();
    let mut checks = Vec::new();

    let in_range = imm.branch_vertices.iter().all(|&v| v < n);
    let distinct: BTreeSet<_> = imm.branch_vertices.iter().collect();
    checks.push(Check::of(
        "injective_branch_map",
        in_range && distinct.len() == k,
        format!("{k} branch vertices, {} distinct, in range: {in_range}", distinct.len()),
    ));

    let mut expected = BTreeSet::new();
    for i in 0..k {
        for j in (i + 1)..k {
            expected.insert((i, j));
        }
    }
    let got: BTreeSet<_> = imm.paths.keys().copied().collect();
    checks.push(Check::of(
        "pair_coverage",
        expected == got,
        format!("{} of {} branch pairs have paths", got.intersection(&expected).count(), expected.len()),
    ));

    let mut paths_ok = true;
    let mut path_detail = String::from("all paths are simple, adjacent, and connect their endpoints");
    'outer: for (&(i, j), path) in &imm.paths {
        if i >= k || j >= k {
            paths_ok = false;
            path_detail = format!("pair ({i},{j}) out of branch range");
            break;
        }
        let (s, t) = (imm.branch_vertices[i], imm.branch_vertices[j]);
        if path.len() < 2 || path[0] != s || *path.last().unwrap() != t {
            paths_ok = false;
            path_detail = format!("path for pair ({i},{j}) does not connect {s} to {t}");
            break;
        }
        let mut seen = BTreeSet::new();
        for &v in path {
            if v >= n || !seen.insert(v) {
                paths_ok = false;
                path_detail = format!("path for pair ({i},{j}) repeats or exceeds vertices");
                break 'outer;
            }
        }
        for w in path.windows(2) {
            if !g.has_edge(w[0], w[1]) {
                paths_ok = false;
                path_detail = format!("path for pair ({i},{j}) uses the non-edge ({}, {})", w[0], w[1]);
                break 'outer;
            }
        }
    }
    checks.push(Check::of("paths_connect_endpoints", paths_ok, path_detail));

    let mut used = BTreeSet::new();
    let mut disjoint = true;
    let mut clash = String::from("no edge used twice");
    'dis: for (&pair, path) in &imm.paths {
        for w in path.windows(2) {
            let e = (w[0].min(w[1]), w[0].max(w[1]));
            if !used.insert(e) {
                disjoint = false;
                clash = format!("edge ({}, {}) reused by pair {:?}", e.0, e.1, pair);
                break 'dis;
            }
        }
    }
    checks.push(Check::of("edge_disjoint_paths", disjoint, clash));

    if strong {
        let branch_set: BTreeSet<_> = imm.branch_vertices.iter().copied().collect();
        let mut internal_ok = true;
        let mut detail = String::from("path interiors avoid branch vertices");
        'strong: for (&pair, path) in &imm.paths {
            for &v in path.iter().skip(1).take(path.len().saturating_sub(2)) {
                if branch_set.contains(&v) {
                    internal_ok = false;
                    detail = format!("pair {pair:?} passes through branch vertex {v}");
                    break 'strong;
                }
            }
        }
        checks.push(Check::of("internal_avoid_branch", internal_ok, detail));
    }

    ImmersionReport { checks, strong_checked: strong }
}

/// Per-part split V_i = U_i u W_i with one-to-one maps f_u from the
/// non-neighbors of u inside U_i into u's neighbors inside W_i. Vertex ids
/// are local to the part graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartSplit {
    pub part_index: usize,
    pub u_set: Vec<usize>,
    pub w_set: Vec<usize>,
    /// `injections[u][u']` = f_u(u').
    pub injections: BTreeMap<usize, BTreeMap<usize, usize>>,
}

impl PartSplit {
    pub fn image(&self, u: usize, other: usize) -> Option<usize> {
        self.injections.get(&u).and_then(|f| f.get(&other)).copied()
    }
}

/// Picks the injections f_u greedily in lexicographic order: for each
/// u in U_i ascending, non-neighbors get the smallest unused neighbor in
/// W_i. Feasibility needs deg(u) >= |U_i| - 1, which k_i-critical parts
/// guarantee.
pub fn choose_injections(g_part: &SimpleGraph, u_set: &[usize]) -> Result<PartSplit, ImmersionError> {
    let n = g_part.vertex_count();
    let mut u_sorted: Vec<usize> = u_set.to_vec();
    u_sorted.sort_unstable();
    u_sorted.dedup();
    if u_sorted.len() != u_set.len() {
        return Err(ImmersionError::Precondition("branch set has duplicates".into()));
    }
    if u_sorted.iter().any(|&v| v >= n) {
        return Err(ImmersionError::Precondition("branch set out of range".into()));
    }
    let in_u: Vec<bool> = {
        let mut m = vec![false; n];
        for &v in &u_sorted {
            m[v] = true;
        }
        m
    };
    let w_set: Vec<usize> = (0..n).filter(|&v| !in_u[v]).collect();
    let mut injections = BTreeMap::new();
    for &u in &u_sorted {
        let domain: Vec<usize> =
            u_sorted.iter().copied().filter(|&v| v != u && !g_part.has_edge(u, v)).collect();
        let range: Vec<usize> = g_part.neighbors(u).filter(|&v| !in_u[v]).collect();
        if domain.len() > range.len() {
            return Err(ImmersionError::InjectionInfeasible {
                vertex: u,
                needed: domain.len(),
                available: range.len(),
            });
        }
        let f: BTreeMap<usize, usize> = domain.into_iter().zip(range).collect();
        injections.insert(u, f);
    }
    Ok(PartSplit { part_index: 0, u_set: u_sorted, w_set, injections })
}

/// Auxiliary multigraph on W_i (re-indexed 0..|W_i|): one edge instance per
/// non-adjacent branch pair (u, u') with f_u(u') != f_{u'}(u). Pairs with
/// equal images contribute nothing (they become length-2 paths), so the
/// multigraph is loopless, and injectivity of the f_u caps its maximum
/// degree at |U_i|.
pub fn build_h(split: &PartSplit) -> Multigraph {
    build_h_with_sources(split).0
}

/// `build_h` plus, for each canonical edge instance, the branch pair it
/// came from.
pub fn build_h_with_sources(split: &PartSplit) -> (Multigraph, Vec<(usize, usize)>) {
    let mut w_index: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, &w) in split.w_set.iter().enumerate() {
        w_index.insert(w, i);
    }
    let mut entries: Vec<(usize, usize, (usize, usize))> = Vec::new();
    for (&u, f) in &split.injections {
        for (&other, &w) in f {
            if other < u {
                continue; // handle each unordered pair once
            }
            let w_back = split
                .image(other, u)
                .expect("injection domains are symmetric across a non-adjacent pair");
            if w == w_back {
                continue;
            }
            let (a, b) = (w_index[&w], w_index[&w_back]);
            entries.push((a.min(b), a.max(b), (u, other)));
        }
    }
    entries.sort_unstable();
    let mut builder = Multigraph::builder(split.w_set.len());
    let mut sources = Vec::with_capacity(entries.len());
    for (a, b, pair) in entries {
        builder.add_edge(a, b).expect("w indices in range");
        sources.push(pair);
    }
    let h = builder.build();
    // Injectivity of each f_u caps every W-vertex's H-degree at |U_i|.
    debug_assert!(h.max_degree() <= split.u_set.len());
    (h, sources)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// Branch sets are the lowest-id vertices of each part.
    Arbitrary,
    /// Branch sets follow the semi-random high-degree-threshold process.
    SemiRandom,
}

impl std::str::FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "arbitrary" => Ok(Strategy::Arbitrary),
            "semirandom" => Ok(Strategy::SemiRandom),
            other => Err(format!("unknown strategy '{other}'")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ImmersionConfig {
    pub chi: ChiConfig,
    pub semirandom: SemiRandomConfig,
    /// Fresh seeds tried per part when the semi-random strategy exceeds the
    /// coloring budget. The guarantee is only asymptotic, so finite
    /// instances may need retries.
    pub retries: usize,
}

impl Default for ImmersionConfig {
    fn default() -> Self {
        ImmersionConfig { chi: ChiConfig::default(), semirandom: SemiRandomConfig::default(), retries: 16 }
    }
}

/// Constructs a verified-by-construction weak immersion of K_k in `g`.
///
/// Requires chi(g) = k. The arbitrary strategy requires n < 1.4k - 0.6 and
/// always succeeds there; the semi-random strategy is admitted up to
/// n < 1.64k but carries no finite-k guarantee, so it retries fresh seeds
/// and can fail.
pub fn construct_immersion(
    g: &SimpleGraph,
    k: usize,
    strategy: Strategy,
    seed: u64,
    cfg: &ImmersionConfig,
) -> Result<WeakImmersion, ImmersionError> {
    let n = g.vertex_count();
    let actual = chromatic_number(g, &cfg.chi)?.chi;
    if actual != k {
        return Err(ImmersionError::WrongChromaticNumber { claimed: k, actual });
    }
    match strategy {
        // n < 1.4k - 0.6 for integers is 5n < 7k - 3.
        Strategy::Arbitrary => {
            if 5 * n >= 7 * k - 3 {
                return Err(ImmersionError::HypothesisViolated {
                    n,
                    k,
                    bound: "below 1.4k - 0.6".into(),
                });
            }
        }
        // Guideline bound n < 1.64k, i.e. 25n < 41k.
        Strategy::SemiRandom => {
            if 25 * n >= 41 * k {
                return Err(ImmersionError::HypothesisViolated {
                    n,
                    k,
                    bound: "below 1.64k".into(),
                });
            }
        }
    }

    // Work inside a critical subgraph; its paths are paths of g.
    let (crit, orig_map) = critical_subgraph(g, &cfg.chi)?;
    let decomposition = gallai_decompose(&crit, k, &cfg.chi)?;

    // Per part: branch set, injections, auxiliary multigraph, coloring.
    let mut splits: Vec<PartSplit> = Vec::new();
    for (part_idx, part) in decomposition.parts.iter().enumerate() {
        let part_graph = crit.induced_subgraph(&part.vertices).expect("part vertices in range");
        let k_i = part.k_i;
        let budget = k - k_i;
        let mut chosen: Option<PartSplit> = None;
        let attempts = match strategy {
            Strategy::Arbitrary => 1,
            Strategy::SemiRandom => cfg.retries.max(1),
        };
        for attempt in 0..attempts {
            let mut split = match strategy {
                Strategy::Arbitrary => {
                    let u_local: Vec<usize> = (0..k_i).collect();
                    choose_injections(&part_graph, &u_local)?
                }
                Strategy::SemiRandom => {
                    let part_seed = derive(seed, &[part_idx as u64, attempt as u64]);
                    semirandom_split(&part_graph, k_i, part_seed, &cfg.semirandom)?.into_part_split()
                }
            };
            split.part_index = part_idx;
            let (h, _) = build_h_with_sources(&split);
            let needed = realized_color_bound(&h);
            if needed <= budget {
                chosen = Some(split);
                break;
            }
            if strategy == Strategy::Arbitrary {
                return Err(ImmersionError::ColoringBudgetExceeded { part: part_idx, needed, budget });
            }
        }
        let split = chosen.ok_or(ImmersionError::RetriesExhausted { attempts })?;
        splits.push(split);
    }

    // Branch vertices in crit coordinates, sorted ascending.
    let mut branch_crit: Vec<usize> = Vec::new();
    for (part, split) in decomposition.parts.iter().zip(&splits) {
        for &ul in &split.u_set {
            branch_crit.push(part.vertices[ul]);
        }
    }
    branch_crit.sort_unstable();
    let branch_index: BTreeMap<usize, usize> =
        branch_crit.iter().enumerate().map(|(i, &v)| (v, i)).collect();

    let mut paths: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    // Length-1 paths: every edge inside the branch set (cross-part pairs
    // are always adjacent by the complete join).
    for (bi, &a) in branch_crit.iter().enumerate() {
        for &b in branch_crit.iter().skip(bi + 1) {
            if crit.has_edge(a, b) {
                paths.insert((branch_index[&a], branch_index[&b]), vec![a, b]);
            }
        }
    }

    // Non-adjacent pairs live inside single parts. Local vertex order
    // matches crit order (part vertices are sorted), so the pair (u, other)
    // with u < other maps to crit vertices a < b and branch indices in the
    // same order.
    for (part, split) in decomposition.parts.iter().zip(&splits) {
        let (h, sources) = build_h_with_sources(split);
        let budget = k - part.k_i;
        let coloring = match edge_color(&h, budget) {
            Ok(c) => c,
            Err(EdgeColorError::BudgetBelowGuarantee { guarantee, .. }) => {
                return Err(ImmersionError::ColoringBudgetExceeded {
                    part: split.part_index,
                    needed: guarantee,
                    budget,
                });
            }
            Err(e) => return Err(e.into()),
        };
        // Colors map to branch vertices outside this part, ascending.
        let part_branch: BTreeSet<usize> = split.u_set.iter().map(|&ul| part.vertices[ul]).collect();
        let outside: Vec<usize> =
            branch_crit.iter().copied().filter(|v| !part_branch.contains(v)).collect();
        let mut pair_color: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (inst_idx, &pair) in sources.iter().enumerate() {
            pair_color.insert(pair, coloring.colors[inst_idx]);
        }
        for (&u, f) in &split.injections {
            for (&other, &wa) in f {
                if other < u {
                    continue;
                }
                let (a, b) = (part.vertices[u], part.vertices[other]);
                let key = (branch_index[&a], branch_index[&b]);
                let wb = split.image(other, u).expect("domain symmetric");
                let wa_g = part.vertices[wa];
                let wb_g = part.vertices[wb];
                if wa_g == wb_g {
                    paths.insert(key, vec![a, wa_g, b]);
                } else {
                    let color = pair_color[&(u, other)];
                    let t = outside[color];
                    paths.insert(key, vec![a, wa_g, t, wb_g, b]);
                }
            }
        }
    }

    // Map back to the original graph's labels.
    let branch_vertices: Vec<usize> = branch_crit.iter().map(|&v| orig_map[v]).collect();
    let paths = paths
        .into_iter()
        .map(|(key, path)| (key, path.into_iter().map(|v| orig_map[v]).collect()))
        .collect();
    Ok(WeakImmersion { branch_vertices, paths })
}

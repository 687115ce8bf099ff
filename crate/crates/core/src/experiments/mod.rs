//! Seeded Monte-Carlo harness for the semi-random branch-selection
//! process, plus the constrained optimizer for its asymptotic degree
//! bound.
//!
//! Trials are independent: each derives its own seed from the master seed
//! and its (k, trial) coordinates, so runs are reproducible regardless of
//! how many worker threads execute them. Output ordering is canonical
//! (sorted by (k, trial)).

mod degree_bound;

pub use degree_bound::{maximize_degree_bound, DegreeBoundPoint, DegreeBoundReport};

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::edge_color::{edge_color, guaranteed_colors, verify_proper, EdgeColorError};
use crate::graph::{SimpleGraph, SimpleGraphBuilder};
use crate::immersion::semirandom::{degree_threshold_default, semirandom_split, SemiRandomConfig};
use crate::immersion::{build_h, ImmersionError};
use crate::seed::{derive, rng_from};

pub const MAX_K: usize = 2000;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("k = {k} above the desk-scale limit {MAX_K}")]
    KTooLarge { k: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Split(#[from] ImmersionError),
    #[error(transparent)]
    EdgeColor(#[from] EdgeColorError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    /// Unions of seeded Hamilton cycles until the minimum degree reaches
    /// k-1; degrees stay within a small band.
    NearRegular,
    /// Near-regular base plus boosted hubs so that at least k - phi(k)
    /// vertices reach the degree threshold d.
    ThresholdHeavy,
    /// Two cliques covering the vertex set plus a sparse random bipartite
    /// crossing.
    TwoCliqueBlowup,
    /// The complete graph (degenerate: branch set is a clique, H empty).
    Complete,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub kind: GeneratorKind,
    /// Cross edges per vertex for the two-clique family.
    #[serde(default = "default_cross_degree")]
    pub cross_degree: usize,
}

fn default_cross_degree() -> usize {
    2
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig { kind: GeneratorKind::NearRegular, cross_degree: default_cross_degree() }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub generator: GeneratorConfig,
    pub k_list: Vec<usize>,
    pub trials_per_k: usize,
    /// Adds the per-trial neighbor/degree bound excess columns.
    #[serde(default)]
    pub diagnostics: bool,
    /// When false the ms column is written as 0, which keeps the CSV
    /// byte-identical across reruns.
    #[serde(default)]
    pub record_wall_time: bool,
}

/// One semi-random trial: the part graph's parameters, the auxiliary
/// multigraph's degree and multiplicity, and the coloring size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialStats {
    pub k: usize,
    pub n: usize,
    pub seed: u64,
    pub delta_h: usize,
    pub mu_h: usize,
    pub colors_used: usize,
    pub ell: usize,
    pub ratio_delta: f64,
    pub ratio_mu: f64,
    pub elapsed_ms: u64,
    /// max over w of |U_w| minus its selection-phase bound (no o(k)
    /// slack); positive values are flagged, not failed.
    pub neighbor_bound_excess: Option<f64>,
    /// max over w of deg_H(w) minus max(k/4, its completion-phase bound).
    pub h_degree_bound_excess: Option<f64>,
}

/// Runs `trials_per_k` seeded trials for every k in the config, in
/// canonical order. Deterministic given (config, master_seed), except for
/// the wall-time column when enabled.
pub fn run_trials(cfg: &ExperimentConfig, master_seed: u64) -> Result<Vec<TrialStats>, ExperimentError> {
    for &k in &cfg.k_list {
        if k > MAX_K {
            return Err(ExperimentError::KTooLarge { k });
        }
        if k == 0 {
            return Err(ExperimentError::InvalidParameter("k must be positive".into()));
        }
    }
    if cfg.trials_per_k == 0 {
        return Err(ExperimentError::InvalidParameter("trials_per_k must be positive".into()));
    }
    let jobs: Vec<(usize, usize)> = cfg
        .k_list
        .iter()
        .flat_map(|&k| (0..cfg.trials_per_k).map(move |t| (k, t)))
        .collect();
    jobs.par_iter()
        .map(|&(k, trial)| run_one_trial(cfg, master_seed, k, trial))
        .collect()
}

fn run_one_trial(
    cfg: &ExperimentConfig,
    master_seed: u64,
    k: usize,
    trial: usize,
) -> Result<TrialStats, ExperimentError> {
    let seed = derive(master_seed, &[k as u64, trial as u64]);
    let started = std::time::Instant::now();
    let g = generate_part_graph(&cfg.generator, k, derive(seed, &[0]))?;
    let n = g.vertex_count();
    let state = semirandom_split(&g, k, derive(seed, &[1]), &SemiRandomConfig::default())?;
    let h = build_h(&state.part_split());
    let delta_h = h.max_degree();
    let mu_h = h.max_multiplicity();
    let budget = guaranteed_colors(&h);
    let coloring = edge_color(&h, budget)?;
    debug_assert!(verify_proper(&h, &coloring));
    let (neighbor_bound_excess, h_degree_bound_excess) = if cfg.diagnostics {
        let (a, b) = diagnostics(&g, &state, &h);
        (Some(a), Some(b))
    } else {
        (None, None)
    };
    let elapsed_ms = if cfg.record_wall_time { started.elapsed().as_millis() as u64 } else { 0 };
    Ok(TrialStats {
        k,
        n,
        seed,
        delta_h,
        mu_h,
        colors_used: coloring.colors_used(),
        ell: state.ell,
        ratio_delta: delta_h as f64 / k as f64,
        ratio_mu: mu_h as f64 / k as f64,
        elapsed_ms,
        neighbor_bound_excess,
        h_degree_bound_excess,
    })
}

/// Selection-phase and completion-phase per-vertex bound excesses,
/// evaluated without the o(k) slack the asymptotic statements allow.
fn diagnostics(
    g: &SimpleGraph,
    state: &crate::immersion::SemiRandomState,
    h: &crate::graph::Multigraph,
) -> (f64, f64) {
    let k = state.k as f64;
    let d = state.d as f64;
    let ell = state.ell as f64;
    let n = g.vertex_count() as f64;
    let cap = state.k.saturating_sub(state.phi_k);
    let in_u: std::collections::BTreeSet<usize> = state.u_set.iter().copied().collect();
    let in_ud: std::collections::BTreeSet<usize> = state.u_d.iter().copied().collect();

    let mut neighbor_excess = f64::NEG_INFINITY;
    let mut degree_excess = f64::NEG_INFINITY;
    for (wi, &w) in state.w_set.iter().enumerate() {
        let ell_w = g.neighbors(w).filter(|v| in_ud.contains(v)).count() as f64;
        let u_w = state.g_star.neighbors(w).filter(|v| in_u.contains(v)).count() as f64;
        let selection_bound = if state.ell < cap {
            // All non-threshold vertices have degree below d here.
            ell_w + (d - ell_w) * (k - ell) / (n - ell)
        } else {
            ell_w + state.phi_k as f64
        };
        neighbor_excess = neighbor_excess.max(u_w - selection_bound);

        let deg_h = h.degree(wi) as f64;
        if deg_h > k / 4.0 {
            let denom = d - 1.0 - u_w;
            if denom > 0.0 {
                let completion_bound = u_w - ell_w * (d - 1.0 - k) / denom;
                degree_excess = degree_excess.max(deg_h - completion_bound.max(k / 4.0));
            }
        }
    }
    let fix = |x: f64| if x.is_finite() { x } else { 0.0 };
    (fix(neighbor_excess), fix(degree_excess))
}

/// CSV with the fixed header
/// `k,n,seed,delta_H,mu_H,colors,ell,ratio_delta,ratio_mu,ms`; diagnostics
/// append two more columns.
pub fn to_csv(rows: &[TrialStats], diagnostics: bool) -> String {
    let mut out = String::from("k,n,seed,delta_H,mu_H,colors,ell,ratio_delta,ratio_mu,ms");
    if diagnostics {
        out.push_str(",neighbor_excess,hdegree_excess");
    }
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{:.6},{:.6},{}",
            r.k, r.n, r.seed, r.delta_h, r.mu_h, r.colors_used, r.ell, r.ratio_delta, r.ratio_mu, r.elapsed_ms
        ));
        if diagnostics {
            out.push_str(&format!(
                ",{:.4},{:.4}",
                r.neighbor_bound_excess.unwrap_or(0.0),
                r.h_degree_bound_excess.unwrap_or(0.0)
            ));
        }
        out.push('\n');
    }
    out
}

/// Minimal static scatter plot of delta_H/k against k (SVG, no styling
/// dependencies), with the asymptotic reference line at 9/16.
pub fn plot_svg(rows: &[TrialStats]) -> String {
    let (w, h, margin) = (640.0, 400.0, 48.0);
    let k_max = rows.iter().map(|r| r.k).max().unwrap_or(1) as f64;
    let y_max = rows
        .iter()
        .map(|r| r.ratio_delta)
        .fold(0.5625f64, f64::max)
        .max(1e-9)
        * 1.1;
    let x = |k: f64| margin + (w - 2.0 * margin) * k / k_max;
    let y = |v: f64| h - margin - (h - 2.0 * margin) * v / y_max;
    let mut svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n\
         <rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n\
         <line x1=\"{m}\" y1=\"{y0}\" x2=\"{x1}\" y2=\"{y0}\" stroke=\"black\"/>\n\
         <line x1=\"{m}\" y1=\"{m}\" x2=\"{m}\" y2=\"{y0}\" stroke=\"black\"/>\n",
        m = margin,
        y0 = h - margin,
        x1 = w - margin,
    );
    let ref_y = y(0.5625);
    svg.push_str(&format!(
        "<line x1=\"{margin}\" y1=\"{ref_y:.2}\" x2=\"{:.2}\" y2=\"{ref_y:.2}\" stroke=\"gray\" stroke-dasharray=\"4 4\"/>\n\
         <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\">9/16</text>\n",
        w - margin,
        w - margin + 4.0,
        ref_y + 4.0,
    ));
    for r in rows {
        svg.push_str(&format!(
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\" fill=\"steelblue\"/>\n",
            x(r.k as f64),
            y(r.ratio_delta)
        ));
    }
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\">k</text>\n\
         <text x=\"8\" y=\"{:.2}\" font-size=\"12\">delta_H/k</text>\n</svg>\n",
        w - margin,
        h - margin + 24.0,
        margin - 24.0,
    ));
    svg
}

/// Median of delta_H/k per k, over the given rows.
pub fn median_ratio_per_k(rows: &[TrialStats]) -> Vec<(usize, f64)> {
    let mut per_k: std::collections::BTreeMap<usize, Vec<f64>> = Default::default();
    for r in rows {
        per_k.entry(r.k).or_default().push(r.ratio_delta);
    }
    per_k
        .into_iter()
        .map(|(k, mut v)| {
            v.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let m = v.len() / 2;
            let median = if v.len() % 2 == 1 { v[m] } else { (v[m - 1] + v[m]) / 2.0 };
            (k, median)
        })
        .collect()
}

/// Builds the part graph for a trial: n = 2k-1 vertices (the hardest
/// regime for the selection bound) with minimum degree at least k-1.
pub fn generate_part_graph(
    cfg: &GeneratorConfig,
    k: usize,
    seed: u64,
) -> Result<SimpleGraph, ExperimentError> {
    let n = 2 * k - 1;
    let mut rng = rng_from(seed);
    let g = match cfg.kind {
        GeneratorKind::Complete => crate::graph::generators::complete(n),
        GeneratorKind::NearRegular => near_regular(n, k, &mut rng),
        GeneratorKind::ThresholdHeavy => {
            let base = near_regular(n, k, &mut rng);
            boost_hubs(&base, k, &mut rng)
        }
        GeneratorKind::TwoCliqueBlowup => two_clique_blowup(n, k, cfg.cross_degree, &mut rng),
    };
    debug_assert!(g.min_degree() + 1 >= k);
    Ok(g)
}

/// Adds seeded Hamilton cycles until every degree is at least k-1.
fn near_regular(n: usize, k: usize, rng: &mut impl Rng) -> SimpleGraph {
    let mut b = SimpleGraphBuilder::new(n);
    let mut degrees = vec![0usize; n];
    while degrees.iter().min().copied().unwrap_or(0) + 1 < k {
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = rng.random_range(0..=i);
            perm.swap(i, j);
        }
        for i in 0..n {
            let (u, v) = (perm[i], perm[(i + 1) % n]);
            if !b.has_edge(u, v) {
                b.add_edge(u, v).unwrap();
                degrees[u] += 1;
                degrees[v] += 1;
            }
        }
    }
    b.build()
}

/// Raises the first k - phi(k) vertices to degree >= d, so the threshold
/// branch of the selection process engages fully.
fn boost_hubs(base: &SimpleGraph, k: usize, rng: &mut impl Rng) -> SimpleGraph {
    let n = base.vertex_count();
    let d = degree_threshold_default(k);
    let hubs = k.saturating_sub(crate::immersion::semirandom::phi_default(k));
    let mut b = SimpleGraphBuilder::new(n);
    for (u, v) in base.edges() {
        b.add_edge(u, v).unwrap();
    }
    let mut degrees: Vec<usize> = (0..n).map(|v| base.degree(v)).collect();
    for hub in 0..hubs.min(n) {
        let mut guard = 0;
        while degrees[hub] < d && guard < 10 * n {
            guard += 1;
            let v = rng.random_range(0..n);
            if v != hub && !b.has_edge(hub, v) {
                b.add_edge(hub, v).unwrap();
                degrees[hub] += 1;
                degrees[v] += 1;
            }
        }
    }
    b.build()
}

/// Two cliques covering the vertices, plus `cross_degree` random cross
/// edges per second-clique vertex (at least one, to keep the minimum
/// degree at k-1).
fn two_clique_blowup(n: usize, k: usize, cross_degree: usize, rng: &mut impl Rng) -> SimpleGraph {
    let a_size = n.div_ceil(2);
    let mut b = SimpleGraphBuilder::new(n);
    for u in 0..a_size {
        for v in (u + 1)..a_size {
            b.add_edge(u, v).unwrap();
        }
    }
    for u in a_size..n {
        for v in (u + 1)..n {
            b.add_edge(u, v).unwrap();
        }
    }
    let _ = k;
    for u in a_size..n {
        for _ in 0..cross_degree.max(1) {
            let v = rng.random_range(0..a_size);
            let _ = b.add_edge(u, v);
        }
    }
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_config(kind: GeneratorKind) -> ExperimentConfig {
        ExperimentConfig {
            generator: GeneratorConfig { kind, cross_degree: 2 },
            k_list: vec![8, 12],
            trials_per_k: 3,
            diagnostics: false,
            record_wall_time: false,
        }
    }

    #[test]
    fn reruns_are_byte_identical() {
        let cfg = small_config(GeneratorKind::NearRegular);
        let a = run_trials(&cfg, 1).unwrap();
        let b = run_trials(&cfg, 1).unwrap();
        assert_eq!(to_csv(&a, false), to_csv(&b, false));
        let c = run_trials(&cfg, 2).unwrap();
        assert_ne!(to_csv(&a, false), to_csv(&c, false));
    }

    #[test]
    fn complete_parts_have_empty_h() {
        let cfg = small_config(GeneratorKind::Complete);
        for row in run_trials(&cfg, 5).unwrap() {
            assert_eq!(row.delta_h, 0);
            assert_eq!(row.mu_h, 0);
            assert_eq!(row.colors_used, 0);
        }
    }

    #[test]
    fn stats_satisfy_their_invariants() {
        for kind in [GeneratorKind::NearRegular, GeneratorKind::ThresholdHeavy, GeneratorKind::TwoCliqueBlowup] {
            let mut cfg = small_config(kind);
            cfg.diagnostics = true;
            for row in run_trials(&cfg, 9).unwrap() {
                assert!(row.delta_h >= row.mu_h);
                let bound = ((3 * row.delta_h).div_ceil(2)).min(row.delta_h + row.mu_h);
                assert!(row.colors_used <= bound);
                assert_eq!(row.n, 2 * row.k - 1);
                assert!(row.neighbor_bound_excess.is_some());
            }
        }
    }

    #[test]
    fn csv_layout_is_stable() {
        let cfg = small_config(GeneratorKind::NearRegular);
        let rows = run_trials(&cfg, 1).unwrap();
        let csv = to_csv(&rows, false);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "k,n,seed,delta_H,mu_H,colors,ell,ratio_delta,ratio_mu,ms");
        assert_eq!(csv.lines().count(), 1 + rows.len());
        assert!(csv.lines().skip(1).all(|l| l.ends_with(",0")), "ms column must be 0 when wall time is off");
    }

    #[test]
    fn plot_is_valid_svg_with_all_points() {
        let cfg = small_config(GeneratorKind::NearRegular);
        let rows = run_trials(&cfg, 3).unwrap();
        let svg = plot_svg(&rows);
        assert!(svg.starts_with("<svg"));
        assert!(svg.ends_with("</svg>\n"));
        assert_eq!(svg.matches("<circle").count(), rows.len());
        assert_eq!(plot_svg(&rows), svg);
    }

    #[test]
    fn k_limits_are_enforced() {
        let mut cfg = small_config(GeneratorKind::NearRegular);
        cfg.k_list = vec![4000];
        assert!(matches!(run_trials(&cfg, 1), Err(ExperimentError::KTooLarge { k: 4000 })));
    }
}

//! Complete-join decomposition of critical graphs.
//!
//! A k-critical graph on at most 2k-2 vertices has a disconnected
//! complement, so it splits into parts that are pairwise completely
//! joined, each part inducing a smaller critical graph. The decomposition
//! here is self-certifying: per-part chromatic numbers are computed, never
//! inferred, and `verify_decomposition` re-checks everything from scratch.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chromatic::{chromatic_number, is_k_critical, ChiConfig, ChiError};
use crate::graph::SimpleGraph;
use crate::Check;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GallaiError {
    #[error(transparent)]
    Chi(#[from] ChiError),
    #[error("caller claims chi = {claimed} but the solver found {actual}")]
    WrongChromaticNumber { claimed: usize, actual: usize },
    #[error(
        "complement is connected although n = {n} <= 2k-2 = {bound}; the input cannot be {k}-critical"
    )]
    ComplementConnected { n: usize, k: usize, bound: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GallaiPart {
    /// Sorted vertex ids of the part, in the input graph's labeling.
    pub vertices: Vec<usize>,
    /// Chromatic number of the induced subgraph.
    pub k_i: usize,
}

impl GallaiPart {
    pub fn n_i(&self) -> usize {
        self.vertices.len()
    }
}

/// Partition into complete-join parts, ordered by smallest contained
/// vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GallaiDecomposition {
    pub parts: Vec<GallaiPart>,
}

impl GallaiDecomposition {
    pub fn part_count(&self) -> usize {
        self.parts.len()
    }

    pub fn total_vertices(&self) -> usize {
        self.parts.iter().map(|p| p.n_i()).sum()
    }

    pub fn total_chromatic(&self) -> usize {
        self.parts.iter().map(|p| p.k_i).sum()
    }

    /// Rebuilds the graph the decomposition describes: the parts' induced
    /// subgraphs plus every cross-part edge, in the original labeling.
    pub fn rejoin(&self, g: &SimpleGraph) -> SimpleGraph {
        let n = g.vertex_count();
        let mut b = SimpleGraph::builder(n);
        for part in &self.parts {
            for (i, &u) in part.vertices.iter().enumerate() {
                for &v in part.vertices.iter().skip(i + 1) {
                    if g.has_edge(u, v) {
                        b.add_edge(u, v).unwrap();
                    }
                }
            }
        }
        for (pi, part) in self.parts.iter().enumerate() {
            for other in self.parts.iter().skip(pi + 1) {
                for &u in &part.vertices {
                    for &v in &other.vertices {
                        b.add_edge(u, v).unwrap();
                    }
                }
            }
        }
        b.build()
    }
}

/// Decomposes `g` into the connected components of its complement, with
/// per-part chromatic numbers computed exactly.
///
/// `k` is the caller's chromatic number for `g` and is verified. When
/// n <= 2k-2 a connected complement is an error (a k-critical graph cannot
/// have one); for larger n a single part is returned as-is, with no
/// criticality promise.
pub fn gallai_decompose(
    g: &SimpleGraph,
    k: usize,
    cfg: &ChiConfig,
) -> Result<GallaiDecomposition, GallaiError> {
    let actual = chromatic_number(g, cfg)?.chi;
    if actual != k {
        return Err(GallaiError::WrongChromaticNumber { claimed: k, actual });
    }
    let n = g.vertex_count();
    let comps = g.complement().components();
    if comps.len() == 1 && k >= 1 && n <= 2 * k - 2 {
        return Err(GallaiError::ComplementConnected { n, k, bound: 2 * k - 2 });
    }
    let mut parts = Vec::with_capacity(comps.len());
    for vertices in comps {
        let sub = g.induced_subgraph(&vertices).expect("component vertices in range");
        let k_i = chromatic_number(&sub, cfg)?.chi;
        parts.push(GallaiPart { vertices, k_i });
    }
    Ok(GallaiDecomposition { parts })
}

/// Report of all decomposition invariants, re-checked from scratch.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub checks: Vec<Check>,
}

impl DecompositionReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

/// Checks every invariant of a claimed decomposition of `g`: partition,
/// complete join, vertex/chromatic sums, per-part criticality, and (when
/// n <= 2k-2) the part-size bound n_i >= 2k_i - 1 and t >= 2.
///
/// Failures are report entries, never errors; solver errors surface as
/// failed entries too.
pub fn verify_decomposition(
    g: &SimpleGraph,
    k: usize,
    d: &GallaiDecomposition,
    cfg: &ChiConfig,
) -> DecompositionReport {
    let mut checks = Vec::new();
    let n = g.vertex_count();
    let small_regime = k >= 1 && n <= 2 * k - 2;

    let mut seen = vec![0usize; n];
    let mut in_range = true;
    for part in &d.parts {
        for &v in &part.vertices {
            if v < n {
                seen[v] += 1;
            } else {
                in_range = false;
            }
        }
    }
    let partition_ok = in_range && seen.iter().all(|&c| c == 1) && !d.parts.iter().any(|p| p.vertices.is_empty());
    checks.push(Check::of(
        "partition",
        partition_ok,
        "every vertex in exactly one nonempty part",
    ));

    let mut join_ok = true;
    'join: for (pi, part) in d.parts.iter().enumerate() {
        for other in d.parts.iter().skip(pi + 1) {
            for &u in &part.vertices {
                for &v in &other.vertices {
                    if u < n && v < n && !g.has_edge(u, v) {
                        join_ok = false;
                        break 'join;
                    }
                }
            }
        }
    }
    checks.push(Check::of("complete_join", join_ok, "all cross-part pairs are edges"));

    checks.push(Check::of(
        "vertex_sum",
        d.total_vertices() == n,
        format!("sum n_i = {} vs n = {}", d.total_vertices(), n),
    ));
    checks.push(Check::of(
        "chromatic_sum",
        d.total_chromatic() == k,
        format!("sum k_i = {} vs k = {}", d.total_chromatic(), k),
    ));

    for (pi, part) in d.parts.iter().enumerate() {
        if !partition_ok {
            break;
        }
        let sub = match g.induced_subgraph(&part.vertices) {
            Ok(s) => s,
            Err(e) => {
                checks.push(Check::fail(&format!("part_{pi}_chromatic"), e.to_string()));
                continue;
            }
        };
        match chromatic_number(&sub, cfg) {
            Ok(r) => checks.push(Check::of(
                &format!("part_{pi}_chromatic"),
                r.chi == part.k_i,
                format!("chi(G[V_{pi}]) = {} vs recorded k_i = {}", r.chi, part.k_i),
            )),
            Err(e) => checks.push(Check::fail(&format!("part_{pi}_chromatic"), e.to_string())),
        }
        match is_k_critical(&sub, part.k_i, cfg) {
            Ok(crit) => checks.push(Check::of(
                &format!("part_{pi}_critical"),
                crit,
                format!("G[V_{pi}] is {}-critical", part.k_i),
            )),
            Err(e) => checks.push(Check::fail(&format!("part_{pi}_critical"), e.to_string())),
        }
        if small_regime {
            checks.push(Check::of(
                &format!("part_{pi}_size"),
                part.n_i() >= 2 * part.k_i - 1,
                format!("n_i = {} >= 2k_i - 1 = {}", part.n_i(), 2 * part.k_i - 1),
            ));
        }
    }

    if small_regime {
        checks.push(Check::of(
            "part_count",
            d.part_count() >= 2,
            format!("t = {} >= 2", d.part_count()),
        ));
    }

    DecompositionReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::{complete, cycle};

    fn cfg() -> ChiConfig {
        ChiConfig::default()
    }

    #[test]
    fn complete_graph_decomposes_into_singletons() {
        let d = gallai_decompose(&complete(5), 5, &cfg()).unwrap();
        assert_eq!(d.part_count(), 5);
        assert!(d.parts.iter().all(|p| p.n_i() == 1 && p.k_i == 1));
    }

    #[test]
    fn join_c5_k4_decomposes_as_expected() {
        let g = cycle(5).join(&complete(4));
        let d = gallai_decompose(&g, 7, &cfg()).unwrap();
        assert_eq!(d.part_count(), 5);
        assert_eq!(d.parts[0].vertices, vec![0, 1, 2, 3, 4]);
        assert_eq!(d.parts[0].k_i, 3);
        for p in &d.parts[1..] {
            assert_eq!(p.n_i(), 1);
            assert_eq!(p.k_i, 1);
        }
        let report = verify_decomposition(&g, 7, &d, &cfg());
        assert!(report.all_passed(), "failed: {:?}", report.failed());
        assert_eq!(d.rejoin(&g), g);
    }

    #[test]
    fn rejoin_reconstructs_interleaved_parts() {
        let base = cycle(5).join(&complete(4));
        let perm = [3, 7, 1, 8, 5, 0, 2, 4, 6];
        let g = base.relabeled(&perm).unwrap();
        let d = gallai_decompose(&g, 7, &cfg()).unwrap();
        assert!(verify_decomposition(&g, 7, &d, &cfg()).all_passed());
        assert_eq!(d.rejoin(&g), g);
    }

    #[test]
    fn double_c5_join_k2() {
        let c5 = cycle(5);
        let g = SimpleGraph::join_all(&[&c5, &c5, &complete(2)]);
        let d = gallai_decompose(&g, 8, &cfg()).unwrap();
        let sizes: Vec<(usize, usize)> = d.parts.iter().map(|p| (p.n_i(), p.k_i)).collect();
        assert_eq!(sizes, vec![(5, 3), (5, 3), (1, 1), (1, 1)]);
        assert!(verify_decomposition(&g, 8, &d, &cfg()).all_passed());
        assert_eq!(d.rejoin(&g), g);
    }

    #[test]
    fn large_graphs_may_have_a_single_part() {
        // C7: chi 3 and n = 7 > 2k-2, so a connected complement is fine and
        // carries no criticality promise.
        let d = gallai_decompose(&cycle(7), 3, &cfg()).unwrap();
        assert_eq!(d.part_count(), 1);
    }

    #[test]
    fn connected_complement_in_small_regime_is_an_error() {
        // K4 plus an isolated vertex: chi = 4, n = 5 <= 2k-2 = 6, and the
        // complement is a star, hence connected. Such a graph cannot be
        // 4-critical, which is exactly what the error reports.
        let g =
            SimpleGraph::from_edges(5, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap();
        assert_eq!(chromatic_number(&g, &cfg()).unwrap().chi, 4);
        assert!(matches!(
            gallai_decompose(&g, 4, &cfg()),
            Err(GallaiError::ComplementConnected { n: 5, k: 4, bound: 6 })
        ));
    }

    #[test]
    fn verify_flags_missing_cross_edge() {
        let g = cycle(5).join(&complete(4));
        let d = gallai_decompose(&g, 7, &cfg()).unwrap();
        let broken = g.without_edge(0, 5);
        let report = verify_decomposition(&broken, 7, &d, &cfg());
        assert!(report.checks.iter().any(|c| c.name == "complete_join" && !c.passed));
    }

    #[test]
    fn verify_flags_singleton_cover_of_non_complete_graph() {
        let g = cycle(5);
        let d = GallaiDecomposition {
            parts: (0..5).map(|v| GallaiPart { vertices: vec![v], k_i: 1 }).collect(),
        };
        let report = verify_decomposition(&g, 3, &d, &cfg());
        assert!(!report.all_passed());
        assert!(report.checks.iter().any(|c| c.name == "complete_join" && !c.passed));
        assert!(report.checks.iter().any(|c| c.name == "chromatic_sum" && !c.passed));
    }

    #[test]
    fn wrong_chi_claim_is_rejected() {
        assert!(matches!(
            gallai_decompose(&complete(5), 4, &cfg()),
            Err(GallaiError::WrongChromaticNumber { claimed: 4, actual: 5 })
        ));
    }
}

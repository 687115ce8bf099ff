//! Independent brute-force oracles for the test suites.
//!
//! Everything here is deliberately naive: plain exhaustive search with no
//! shared code paths with the solvers it audits, so a bug in the main
//! algorithms cannot hide behind a matching bug here.

use immersion_core::graph::SimpleGraph;
use immersion_core::immersion::WeakImmersion;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    CapExceeded(String),
}

impl std::fmt::Display for OracleError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OracleError::CapExceeded(s) => write!(f, "oracle cap exceeded: {s}"),
        }
    }
}

impl std::error::Error for OracleError {}

pub const CHROMATIC_CAP: usize = 9;

/// Exact chromatic number by exhaustive color assignment in vertex order
/// 0, 1, 2, ... with no ordering heuristics or bounds.
pub fn bruteforce_chromatic(g: &SimpleGraph) -> Result<usize, OracleError> {
    bruteforce_chromatic_with_cap(g, CHROMATIC_CAP)
}

/// Same as [`bruteforce_chromatic`] with an explicit cap (a couple of named
/// fixtures are slightly bigger than the default).
pub fn bruteforce_chromatic_with_cap(g: &SimpleGraph, cap: usize) -> Result<usize, OracleError> {
    let n = g.vertex_count();
    if n > cap {
        return Err(OracleError::CapExceeded(format!("{n} vertices > {cap}")));
    }
    if n == 0 {
        return Ok(0);
    }
    for q in 1..=n {
        if can_assign(g, q, &mut vec![usize::MAX; n], 0) {
            return Ok(q);
        }
    }
    unreachable!("n colors always suffice")
}

fn can_assign(g: &SimpleGraph, q: usize, colors: &mut Vec<usize>, v: usize) -> bool {
    if v == g.vertex_count() {
        return true;
    }
    for c in 0..q {
        if g.neighbors(v).all(|w| w >= v || colors[w] != c) {
            colors[v] = c;
            if can_assign(g, q, colors, v + 1) {
                return true;
            }
            colors[v] = usize::MAX;
        }
    }
    false
}

pub const IMMERSION_VERTEX_CAP: usize = 7;
pub const IMMERSION_K_CAP: usize = 4;
pub const IMMERSION_EDGE_CAP: usize = 12;

/// Exhaustive search for a weak immersion of the complete graph on `k`
/// branch vertices: every branch set, every system of pairwise
/// edge-disjoint connecting paths.
///
/// Returns a certificate or definitive absence.
pub fn bruteforce_weak_immersion(
    g: &SimpleGraph,
    k: usize,
) -> Result<Option<WeakImmersion>, OracleError> {
    let n = g.vertex_count();
    if n > IMMERSION_VERTEX_CAP {
        return Err(OracleError::CapExceeded(format!("{n} vertices > {IMMERSION_VERTEX_CAP}")));
    }
    if k > IMMERSION_K_CAP {
        return Err(OracleError::CapExceeded(format!("k {k} > {IMMERSION_K_CAP}")));
    }
    if g.edge_count() > IMMERSION_EDGE_CAP {
        return Err(OracleError::CapExceeded(format!(
            "{} edges > {IMMERSION_EDGE_CAP}",
            g.edge_count()
        )));
    }
    if k == 0 {
        return Ok(Some(WeakImmersion { branch_vertices: vec![], paths: BTreeMap::new() }));
    }
    if k > n {
        return Ok(None);
    }
    let mut branch = Vec::new();
    search_branch_sets(g, k, 0, &mut branch)
}

fn search_branch_sets(
    g: &SimpleGraph,
    k: usize,
    from: usize,
    branch: &mut Vec<usize>,
) -> Result<Option<WeakImmersion>, OracleError> {
    if branch.len() == k {
        if let Some(paths) = connect_all(g, branch) {
            return Ok(Some(WeakImmersion { branch_vertices: branch.clone(), paths }));
        }
        return Ok(None);
    }
    for v in from..g.vertex_count() {
        branch.push(v);
        if let Some(found) = search_branch_sets(g, k, v + 1, branch)? {
            return Ok(Some(found));
        }
        branch.pop();
    }
    Ok(None)
}

type PathMap = BTreeMap<(usize, usize), Vec<usize>>;

fn connect_all(g: &SimpleGraph, branch: &[usize]) -> Option<PathMap> {
    let k = branch.len();
    let mut pairs = Vec::new();
    for i in 0..k {
        for j in (i + 1)..k {
            pairs.push((i, j));
        }
    }
    let mut used = std::collections::BTreeSet::new();
    let mut chosen: PathMap = BTreeMap::new();
    if assign_paths(g, branch, &pairs, 0, &mut used, &mut chosen) {
        Some(chosen)
    } else {
        None
    }
}

fn assign_paths(
    g: &SimpleGraph,
    branch: &[usize],
    pairs: &[(usize, usize)],
    idx: usize,
    used: &mut std::collections::BTreeSet<(usize, usize)>,
    chosen: &mut PathMap,
) -> bool {
    if idx == pairs.len() {
        return true;
    }
    let (i, j) = pairs[idx];
    let (s, t) = (branch[i], branch[j]);
    let mut path = vec![s];
    let mut visited = vec![false; g.vertex_count()];
    visited[s] = true;
    extend_path(g, branch, pairs, idx, t, &mut path, &mut visited, used, chosen)
}

#[allow(clippy::too_many_arguments)]
fn extend_path(
    g: &SimpleGraph,
    branch: &[usize],
    pairs: &[(usize, usize)],
    idx: usize,
    target: usize,
    path: &mut Vec<usize>,
    visited: &mut Vec<bool>,
    used: &mut std::collections::BTreeSet<(usize, usize)>,
    chosen: &mut PathMap,
) -> bool {
    let cur = *path.last().unwrap();
    if cur == target {
        let key = pairs[idx];
        chosen.insert(key, path.clone());
        if assign_paths(g, branch, pairs, idx + 1, used, chosen) {
            return true;
        }
        chosen.remove(&key);
        return false;
    }
    for next in g.neighbors(cur) {
        let e = (cur.min(next), cur.max(next));
        if visited[next] || used.contains(&e) {
            continue;
        }
        visited[next] = true;
        path.push(next);
        used.insert(e);
        if extend_path(g, branch, pairs, idx, target, path, visited, used, chosen) {
            return true;
        }
        used.remove(&e);
        path.pop();
        visited[next] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use immersion_core::graph::generators::{complete, cycle, path, petersen};

    #[test]
    fn chromatic_basics() {
        assert_eq!(bruteforce_chromatic(&cycle(5)).unwrap(), 3);
        assert_eq!(bruteforce_chromatic(&complete(4)).unwrap(), 4);
        assert!(bruteforce_chromatic(&petersen()).is_err());
        assert_eq!(bruteforce_chromatic_with_cap(&petersen(), 10).unwrap(), 3);
        // Known proper 3-coloring of the Petersen graph, as a fixture check.
        let fixture = [0, 1, 0, 1, 2, 1, 2, 2, 0, 0];
        let g = petersen();
        for (u, v) in g.edges() {
            assert_ne!(fixture[u], fixture[v]);
        }
    }

    #[test]
    fn immersion_identity_in_k4() {
        let found = bruteforce_weak_immersion(&complete(4), 4).unwrap().unwrap();
        assert_eq!(found.branch_vertices, vec![0, 1, 2, 3]);
        assert_eq!(found.paths.len(), 6);
    }

    #[test]
    fn immersion_absent_in_short_path() {
        // Three branch pairs need three edge-disjoint paths; P3 has 2 edges.
        assert_eq!(bruteforce_weak_immersion(&path(3), 3).unwrap(), None);
    }

    #[test]
    fn immersion_exists_in_c5() {
        let found = bruteforce_weak_immersion(&cycle(5), 3).unwrap();
        assert!(found.is_some());
    }

    #[test]
    fn caps_enforced() {
        assert!(bruteforce_weak_immersion(&complete(8), 3).is_err());
        assert!(bruteforce_weak_immersion(&complete(5), 5).is_err());
    }
}

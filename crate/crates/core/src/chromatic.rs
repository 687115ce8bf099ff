//! Exact chromatic number, k-criticality, and critical-subgraph extraction
//! at desk scale.
//!
//! The solver is a branch-and-bound search with a saturation-degree
//! branching order, a greedy-clique lower bound, and one-new-color-at-a-time
//! symmetry breaking. It is exact and deterministic; graphs above the
//! configured vertex cap are rejected rather than searched unboundedly.

use thiserror::Error;

use crate::graph::SimpleGraph;

/// Hard ceiling on the configurable cap (the solver packs vertex sets into
/// `u128` masks).
pub const MAX_VERTEX_CAP: usize = 128;

#[derive(Debug, Clone, Copy)]
pub struct ChiConfig {
    pub vertex_cap: usize,
}

impl Default for ChiConfig {
    fn default() -> Self {
        ChiConfig { vertex_cap: 64 }
    }
}

impl ChiConfig {
    pub fn with_cap(vertex_cap: usize) -> Self {
        ChiConfig { vertex_cap }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChiError {
    #[error("chromatic solver requires at least one vertex")]
    EmptyGraph,
    #[error("graph has {n} vertices, above the solver cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("vertex cap {cap} above supported maximum {MAX_VERTEX_CAP}")]
    CapTooLarge { cap: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChromaticResult {
    pub chi: usize,
    /// Proper coloring using exactly `chi` colors `0..chi`.
    pub coloring: Vec<usize>,
}

fn check_size(g: &SimpleGraph, cfg: &ChiConfig) -> Result<(), ChiError> {
    if cfg.vertex_cap > MAX_VERTEX_CAP {
        return Err(ChiError::CapTooLarge { cap: cfg.vertex_cap });
    }
    if g.vertex_count() > cfg.vertex_cap {
        return Err(ChiError::CapExceeded { n: g.vertex_count(), cap: cfg.vertex_cap });
    }
    Ok(())
}

/// Adjacency as u128 masks; only valid for n <= 128.
fn masks(g: &SimpleGraph) -> Vec<u128> {
    let n = g.vertex_count();
    let mut adj = vec![0u128; n];
    for (u, row) in adj.iter_mut().enumerate() {
        for v in g.neighbors(u) {
            *row |= 1u128 << v;
        }
    }
    adj
}

/// Greedy clique on (degree desc, id asc) order; a chromatic lower bound.
fn greedy_clique_size(adj: &[u128]) -> usize {
    let n = adj.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(adj[v].count_ones()), v));
    let mut clique = 0u128;
    let mut size = 0;
    for &v in &order {
        if clique & !adj[v] == 0 {
            clique |= 1u128 << v;
            size += 1;
        }
    }
    size
}

/// Backtracking search for a proper coloring with at most `q` colors.
///
/// Branching: uncolored vertex with maximum saturation, then maximum
/// degree among uncolored, then lowest id. A vertex may open at most one
/// new color index, which breaks color-class symmetry.
fn try_color(adj: &[u128], q: usize) -> Option<Vec<usize>> {
    let n = adj.len();
    if n == 0 {
        return Some(Vec::new());
    }
    if q == 0 {
        return None;
    }
    let mut colors: Vec<Option<usize>> = vec![None; n];
    // Bitmask of colors used by already-colored neighbors.
    let mut sat: Vec<u128> = vec![0; n];
    fn rec(
        adj: &[u128],
        q: usize,
        colors: &mut Vec<Option<usize>>,
        sat: &mut Vec<u128>,
        colored: usize,
        used: usize,
    ) -> bool {
        let n = adj.len();
        if colored == n {
            return true;
        }
        // Pick branch vertex.
        let mut best: Option<(u32, u32, usize)> = None;
        for v in 0..n {
            if colors[v].is_some() {
                continue;
            }
            let s = sat[v].count_ones();
            let d = adj[v].count_ones();
            let cand = (s, d, v);
            best = match best {
                None => Some(cand),
                Some(b) => {
                    // saturation desc, degree desc, id asc
                    if (cand.0, cand.1) > (b.0, b.1) || ((cand.0, cand.1) == (b.0, b.1) && cand.2 < b.2) {
                        Some(cand)
                    } else {
                        Some(b)
                    }
                }
            };
        }
        let v = best.expect("some vertex uncolored").2;
        let limit = (used + 1).min(q);
        for c in 0..limit {
            if sat[v] >> c & 1 == 1 {
                continue;
            }
            colors[v] = Some(c);
            let mut touched = 0u128;
            let mut nb = adj[v];
            while nb != 0 {
                let w = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                if sat[w] >> c & 1 == 0 {
                    sat[w] |= 1 << c;
                    touched |= 1 << w;
                }
            }
            let new_used = used.max(c + 1);
            if rec(adj, q, colors, sat, colored + 1, new_used) {
                return true;
            }
            colors[v] = None;
            let mut t = touched;
            while t != 0 {
                let w = t.trailing_zeros() as usize;
                t &= t - 1;
                sat[w] &= !(1u128 << c);
            }
        }
        false
    }
    if rec(adj, q, &mut colors, &mut sat, 0, 0) {
        Some(colors.into_iter().map(|c| c.unwrap()).collect())
    } else {
        None
    }
}

/// Greedy DSATUR coloring; an upper bound plus witness.
fn dsatur(adj: &[u128]) -> Vec<usize> {
    let n = adj.len();
    let mut colors: Vec<Option<usize>> = vec![None; n];
    let mut sat: Vec<u128> = vec![0; n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| colors[v].is_none())
            .max_by_key(|&v| (sat[v].count_ones(), adj[v].count_ones(), std::cmp::Reverse(v)))
            .unwrap();
        let c = (0..n).find(|&c| sat[v] >> c & 1 == 0).unwrap();
        colors[v] = Some(c);
        let mut nb = adj[v];
        while nb != 0 {
            let w = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            sat[w] |= 1 << c;
        }
    }
    colors.into_iter().map(|c| c.unwrap()).collect()
}

/// Exact chromatic number with a witness coloring.
pub fn chromatic_number(g: &SimpleGraph, cfg: &ChiConfig) -> Result<ChromaticResult, ChiError> {
    if g.vertex_count() == 0 {
        return Err(ChiError::EmptyGraph);
    }
    check_size(g, cfg)?;
    let adj = masks(g);
    let greedy = dsatur(&adj);
    let ub = greedy.iter().copied().max().unwrap() + 1;
    let lb = greedy_clique_size(&adj).max(1);
    for q in lb..ub {
        if let Some(coloring) = try_color(&adj, q) {
            return Ok(ChromaticResult { chi: q, coloring });
        }
    }
    Ok(ChromaticResult { chi: ub, coloring: greedy })
}

/// Is `g` properly colorable with at most `q` colors?
pub fn is_colorable(g: &SimpleGraph, q: usize, cfg: &ChiConfig) -> Result<bool, ChiError> {
    check_size(g, cfg)?;
    Ok(try_color(&masks(g), q).is_some())
}

/// True iff chi(g) = k and deleting any edge or vertex drops the chromatic
/// number below k.
pub fn is_k_critical(g: &SimpleGraph, k: usize, cfg: &ChiConfig) -> Result<bool, ChiError> {
    if g.vertex_count() == 0 {
        return Err(ChiError::EmptyGraph);
    }
    check_size(g, cfg)?;
    if chromatic_number(g, cfg)?.chi != k {
        return Ok(false);
    }
    if k == 0 {
        return Ok(false);
    }
    for v in g.vertices() {
        let h = g.without_vertex(v);
        let ok = if h.vertex_count() == 0 { true } else { is_colorable(&h, k - 1, cfg)? };
        if !ok {
            return Ok(false);
        }
    }
    for (u, v) in g.edges() {
        if !is_colorable(&g.without_edge(u, v), k - 1, cfg)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A subgraph with the same chromatic number that is chi(g)-critical,
/// obtained by repeatedly deleting the lowest removable vertex, then the
/// lexicographically lowest removable edge, restarting after each deletion.
///
/// Returns the subgraph plus the map from its vertex ids to the input's.
pub fn critical_subgraph(
    g: &SimpleGraph,
    cfg: &ChiConfig,
) -> Result<(SimpleGraph, Vec<usize>), ChiError> {
    if g.vertex_count() == 0 {
        return Err(ChiError::EmptyGraph);
    }
    check_size(g, cfg)?;
    let k = chromatic_number(g, cfg)?.chi;
    let mut cur = g.clone();
    let mut orig: Vec<usize> = g.vertices().collect();
    'outer: loop {
        for v in cur.vertices() {
            let h = cur.without_vertex(v);
            let removable = h.vertex_count() > 0 && !is_colorable(&h, k - 1, cfg)?;
            if removable {
                cur = h;
                orig.remove(v);
                continue 'outer;
            }
        }
        for (u, v) in cur.edges() {
            if !is_colorable(&cur.without_edge(u, v), k - 1, cfg)? {
                cur = cur.without_edge(u, v);
                continue 'outer;
            }
        }
        break;
    }
    Ok((cur, orig))
}

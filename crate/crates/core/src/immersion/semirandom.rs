//! Semi-random branch-set selection: high-degree vertices taken up to a
//! threshold, uniform fill, exhaustive rewiring to G*, and uniform
//! completion of the injections.
//!
//! The rewiring loop repeatedly takes a triple (w, u, u') with w in W
//! adjacent to both, u in the high-degree set U(d), and u, u' non-adjacent,
//! then deletes (u, w), (u', w), adds (u, u'), and records
//! f_u(u') = f_{u'}(u) = w. U-degrees are preserved, W-degrees drop by two
//! per rewire, and a rewire never creates new qualifying triples (it only
//! deletes W-edges and adds U-edges), so one lexicographic sweep that
//! re-validates against the live graph is equivalent to restarting the
//! scan after every rewire.

use std::collections::BTreeMap;

use rand::Rng;

use super::{ImmersionError, PartSplit};
use crate::graph::{SimpleGraph, SimpleGraphBuilder};
use crate::seed::rng_from;
use crate::Check;

#[derive(Debug, Clone, Default)]
pub struct SemiRandomConfig {
    /// Override for the degree threshold d (default ceil(9k/8)).
    pub degree_threshold: Option<usize>,
    /// Override for phi(k) (default ceil(k^0.9)).
    pub phi: Option<usize>,
}

/// Everything the semi-random process produced, kept for auditing.
/// Vertex ids are local to the part graph the split was computed on.
#[derive(Debug, Clone)]
pub struct SemiRandomState {
    pub k: usize,
    pub d: usize,
    pub phi_k: usize,
    /// High-degree seed set U(d), sorted; capped at k - phi(k) members.
    pub u_d: Vec<usize>,
    pub ell: usize,
    pub u_set: Vec<usize>,
    pub w_set: Vec<usize>,
    pub g_star: SimpleGraph,
    /// (u, u', w) per rewire, in execution order.
    pub rewire_log: Vec<(usize, usize, usize)>,
    /// Full injections f_u, rewired pairs plus random completion; domains
    /// are the non-neighbors inside U with respect to the original graph.
    pub injections: BTreeMap<usize, BTreeMap<usize, usize>>,
    pub initial_w_degree_sum: usize,
    pub final_w_degree_sum: usize,
}

impl SemiRandomState {
    pub fn part_split(&self) -> PartSplit {
        PartSplit {
            part_index: 0,
            u_set: self.u_set.clone(),
            w_set: self.w_set.clone(),
            injections: self.injections.clone(),
        }
    }

    pub fn into_part_split(self) -> PartSplit {
        PartSplit {
            part_index: 0,
            u_set: self.u_set,
            w_set: self.w_set,
            injections: self.injections,
        }
    }
}

/// ceil(k^0.9) in exact integer arithmetic: the smallest p with
/// p^10 >= k^9. Avoids platform-dependent float rounding.
pub fn phi_default(k: usize) -> usize {
    if k <= 1 {
        return k;
    }
    let k9 = (k as u128).pow(9);
    let (mut lo, mut hi) = (1u128, k as u128);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if mid.pow(10) >= k9 {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo as usize
}

/// ceil(9k/8).
pub fn degree_threshold_default(k: usize) -> usize {
    (9 * k).div_ceil(8)
}

struct MutGraph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
}

impl MutGraph {
    fn from_graph(g: &SimpleGraph) -> Self {
        let n = g.vertex_count();
        let words = n.div_ceil(64);
        let mut adj = vec![0u64; n * words];
        for v in 0..n {
            adj[v * words..(v + 1) * words].copy_from_slice(g.adjacency_row(v));
        }
        MutGraph { n, words, adj }
    }

    fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    fn add(&mut self, u: usize, v: usize) {
        self.adj[u * self.words + v / 64] |= 1 << (v % 64);
        self.adj[v * self.words + u / 64] |= 1 << (u % 64);
    }

    fn remove(&mut self, u: usize, v: usize) {
        self.adj[u * self.words + v / 64] &= !(1 << (v % 64));
        self.adj[v * self.words + u / 64] &= !(1 << (u % 64));
    }

    fn to_simple(&self) -> SimpleGraph {
        let mut b = SimpleGraphBuilder::new(self.n);
        for u in 0..self.n {
            let row = self.row(u);
            for (wi, &word) in row.iter().enumerate() {
                let mut bits = word;
                while bits != 0 {
                    let v = wi * 64 + bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    if v > u {
                        b.add_edge(u, v).expect("in range");
                    }
                }
            }
        }
        b.build()
    }
}

/// First vertex >= `from` in `a AND b AND NOT neg` (missing `neg` means no
/// exclusion).
fn next_in(a: &[u64], b: &[u64], neg: Option<&[u64]>, from: usize) -> Option<usize> {
    let words = a.len();
    let mut wi = from / 64;
    if wi >= words {
        return None;
    }
    let word_at = |i: usize| a[i] & b[i] & neg.map_or(!0u64, |n| !n[i]);
    let mut cur = word_at(wi) & (!0u64 << (from % 64));
    loop {
        if cur != 0 {
            return Some(wi * 64 + cur.trailing_zeros() as usize);
        }
        wi += 1;
        if wi >= words {
            return None;
        }
        cur = word_at(wi);
    }
}

/// Runs the semi-random process on a part graph with target branch-set
/// size `k`: threshold selection of U(d), uniform fill of U, exhaustive
/// rewiring, and uniform random completion of the injections.
pub fn semirandom_split(
    g: &SimpleGraph,
    k: usize,
    seed: u64,
    cfg: &SemiRandomConfig,
) -> Result<SemiRandomState, ImmersionError> {
    let n = g.vertex_count();
    if k == 0 || k > n {
        return Err(ImmersionError::Precondition(format!("k = {k} must be in 1..={n}")));
    }
    if k > 10_000 {
        return Err(ImmersionError::Precondition("k above the supported desk-scale limit 10000".into()));
    }
    if n < 2 * k - 1 {
        return Err(ImmersionError::Precondition(format!("n = {n} below 2k - 1 = {}", 2 * k - 1)));
    }
    if g.min_degree() + 1 < k {
        return Err(ImmersionError::Precondition(format!(
            "minimum degree {} below k - 1 = {}",
            g.min_degree(),
            k - 1
        )));
    }

    let d = cfg.degree_threshold.unwrap_or_else(|| degree_threshold_default(k));
    let phi_k = cfg.phi.unwrap_or_else(|| phi_default(k));
    let cap = k.saturating_sub(phi_k);

    // U(d): high-degree vertices, lowest ids first, at most cap of them.
    let mut u_d: Vec<usize> = (0..n).filter(|&v| g.degree(v) >= d).collect();
    u_d.truncate(cap);
    let ell = u_d.len();

    let mut rng = rng_from(seed);

    // Fill U with k - ell uniform vertices from the rest.
    let mut in_ud = vec![false; n];
    for &v in &u_d {
        in_ud[v] = true;
    }
    let mut candidates: Vec<usize> = (0..n).filter(|&v| !in_ud[v]).collect();
    let need = k - ell;
    for i in 0..need {
        let j = rng.random_range(i..candidates.len());
        candidates.swap(i, j);
    }
    let mut u_set: Vec<usize> = u_d.iter().copied().chain(candidates[..need].iter().copied()).collect();
    u_set.sort_unstable();
    let in_u = {
        let mut m = vec![false; n];
        for &v in &u_set {
            m[v] = true;
        }
        m
    };
    let w_set: Vec<usize> = (0..n).filter(|&v| !in_u[v]).collect();

    // Masks for the rewiring scan.
    let words = n.div_ceil(64);
    let mut ud_mask = vec![0u64; words];
    for &v in &u_d {
        ud_mask[v / 64] |= 1 << (v % 64);
    }
    let mut u_mask = vec![0u64; words];
    for &v in &u_set {
        u_mask[v / 64] |= 1 << (v % 64);
    }

    let mut work = MutGraph::from_graph(g);
    let initial_w_degree_sum: usize =
        w_set.iter().map(|&w| work.row(w).iter().map(|x| x.count_ones() as usize).sum::<usize>()).sum();

    let mut rewire_log: Vec<(usize, usize, usize)> = Vec::new();
    let mut injections: BTreeMap<usize, BTreeMap<usize, usize>> = BTreeMap::new();
    for &u in &u_set {
        injections.insert(u, BTreeMap::new());
    }

    for &w in &w_set {
        let mut u_from = 0usize;
        while let Some(u) = next_in(work.row(w), &ud_mask, None, u_from) {
            // First u' in N(w) & U, non-adjacent to u, distinct from u.
            let mut up_from = 0usize;
            let up = loop {
                match next_in(work.row(w), &u_mask, Some(work.row(u)), up_from) {
                    None => break None,
                    Some(x) if x == u => up_from = x + 1,
                    Some(x) => break Some(x),
                }
            };
            match up {
                None => u_from = u + 1,
                Some(up) => {
                    work.remove(u, w);
                    work.remove(up, w);
                    work.add(u, up);
                    rewire_log.push((u, up, w));
                    injections.get_mut(&u).unwrap().insert(up, w);
                    injections.get_mut(&up).unwrap().insert(u, w);
                    // (u, w) is gone, so no further triple uses this u at w.
                    u_from = u + 1;
                }
            }
        }
    }

    let final_w_degree_sum: usize =
        w_set.iter().map(|&w| work.row(w).iter().map(|x| x.count_ones() as usize).sum::<usize>()).sum();
    let g_star = work.to_simple();

    // Uniform completion with respect to G*: remaining non-neighbors of u
    // in U map into u's remaining W-neighbors.
    for &u in &u_set {
        let domain: Vec<usize> =
            u_set.iter().copied().filter(|&v| v != u && !g_star.has_edge(u, v)).collect();
        let mut range: Vec<usize> = g_star.neighbors(u).filter(|&v| !in_u[v]).collect();
        if domain.len() > range.len() {
            return Err(ImmersionError::InjectionInfeasible {
                vertex: u,
                needed: domain.len(),
                available: range.len(),
            });
        }
        let f = injections.get_mut(&u).unwrap();
        for v in domain {
            debug_assert!(!f.contains_key(&v));
            let idx = rng.random_range(0..range.len());
            f.insert(v, range.swap_remove(idx));
        }
    }

    Ok(SemiRandomState {
        k,
        d,
        phi_k,
        u_d,
        ell,
        u_set,
        w_set,
        g_star,
        rewire_log,
        injections,
        initial_w_degree_sum,
        final_w_degree_sum,
    })
}

/// Re-checks every invariant of a semi-random state against the part graph
/// it was computed from. Failures are report entries.
pub fn check_state(g: &SimpleGraph, st: &SemiRandomState) -> Vec<Check> {
    let mut checks = Vec::new();
    let cap = st.k.saturating_sub(st.phi_k);
    checks.push(Check::of(
        "ell_cap",
        st.ell <= cap && st.ell == st.u_d.len(),
        format!("ell = {} <= k - phi(k) = {}", st.ell, cap),
    ));

    let u_deg_ok = st.u_set.iter().all(|&u| st.g_star.degree(u) == g.degree(u));
    checks.push(Check::of("u_degrees_preserved", u_deg_ok, "deg_G*(u) = deg_G(u) for u in U"));

    let w_deg_ok = st.w_set.iter().all(|&w| st.g_star.degree(w) <= g.degree(w));
    checks.push(Check::of("w_degrees_non_increasing", w_deg_ok, "deg_G*(w) <= deg_G(w) for w in W"));

    // No qualifying triple remains: for w in W and u in N*(w) & U(d),
    // every other U-neighbor of w is adjacent to u in G*. This is the
    // U_w \ {u} inside U_u containment; it holds for threshold vertices u,
    // which is the form the rewiring can and does guarantee.
    let in_ud: std::collections::BTreeSet<usize> = st.u_d.iter().copied().collect();
    let in_u: std::collections::BTreeSet<usize> = st.u_set.iter().copied().collect();
    let mut containment = true;
    'outer: for &w in &st.w_set {
        let u_w: Vec<usize> = st.g_star.neighbors(w).filter(|v| in_u.contains(v)).collect();
        for &u in u_w.iter().filter(|v| in_ud.contains(v)) {
            for &other in &u_w {
                if other != u && !st.g_star.has_edge(u, other) {
                    containment = false;
                    break 'outer;
                }
            }
        }
    }
    checks.push(Check::of(
        "threshold_neighborhood_containment",
        containment,
        "U_w minus u inside U_u for u in U_w meeting U(d)",
    ));

    let mut inj_ok = true;
    let mut inj_detail = String::from("every f_u is injective with the right domain and range");
    'inj: for (&u, f) in &st.injections {
        let expected_domain: Vec<usize> =
            st.u_set.iter().copied().filter(|&v| v != u && !g.has_edge(u, v)).collect();
        let domain: Vec<usize> = f.keys().copied().collect();
        if domain != expected_domain {
            inj_ok = false;
            inj_detail = format!("f_{u} domain mismatch");
            break;
        }
        let mut images = std::collections::BTreeSet::new();
        for (&v, &w) in f {
            let _ = v;
            if !images.insert(w) {
                inj_ok = false;
                inj_detail = format!("f_{u} repeats image {w}");
                break 'inj;
            }
            if in_u.contains(&w) || !g.has_edge(u, w) {
                inj_ok = false;
                inj_detail = format!("f_{u} image {w} not a W-neighbor of {u}");
                break 'inj;
            }
        }
    }
    checks.push(Check::of("injections_valid", inj_ok, inj_detail));

    checks.push(Check::of(
        "rewire_degree_accounting",
        st.initial_w_degree_sum - st.final_w_degree_sum == 2 * st.rewire_log.len()
            && st.rewire_log.len() <= g.edge_count(),
        format!(
            "W degree sum fell {} over {} rewires",
            st.initial_w_degree_sum - st.final_w_degree_sum,
            st.rewire_log.len()
        ),
    ));

    checks
}

//! Loopless multigraphs with individually addressable parallel edges.

use std::collections::BTreeMap;
use std::fmt;

use super::GraphError;

/// One parallel edge of a multigraph. `ordinal` distinguishes the instances
/// of the same vertex pair, so edge colorings can address each instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct EdgeInstance {
    pub u: usize,
    pub v: usize,
    pub ordinal: usize,
}

/// Loopless undirected multigraph on vertices `0..n`.
///
/// Edge instances are kept in canonical order (sorted by `(u, v, ordinal)`
/// with `u < v`), and are addressed by their index in that order.
#[derive(Clone, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    multiplicities: BTreeMap<(usize, usize), usize>,
    instances: Vec<EdgeInstance>,
    degrees: Vec<usize>,
}

impl fmt::Debug for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multigraph(n={}, pairs={:?})", self.n, self.multiplicities)
    }
}

impl Multigraph {
    pub fn empty(n: usize) -> Self {
        Multigraph { n, multiplicities: BTreeMap::new(), instances: Vec::new(), degrees: vec![0; n] }
    }

    pub fn builder(n: usize) -> MultigraphBuilder {
        MultigraphBuilder { n, multiplicities: BTreeMap::new() }
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut b = Multigraph::builder(n);
        for &(u, v) in pairs {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn instance_count(&self) -> usize {
        self.instances.len()
    }

    pub fn instances(&self) -> &[EdgeInstance] {
        &self.instances
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        let key = (u.min(v), u.max(v));
        self.multiplicities.get(&key).copied().unwrap_or(0)
    }

    /// Distinct adjacent pairs with their multiplicities, sorted.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.multiplicities.iter().map(|(&(u, v), &m)| (u, v, m))
    }

    /// Degree counting multiplicity.
    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v]
    }

    /// Maximum degree counting multiplicity.
    pub fn max_degree(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    /// Maximum edge multiplicity over vertex pairs.
    pub fn max_multiplicity(&self) -> usize {
        self.multiplicities.values().copied().max().unwrap_or(0)
    }
}

pub struct MultigraphBuilder {
    n: usize,
    multiplicities: BTreeMap<(usize, usize), usize>,
}

impl MultigraphBuilder {
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<&mut Self, GraphError> {
        if u >= self.n {
            return Err(GraphError::VertexOutOfRange { vertex: u, vertex_count: self.n });
        }
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange { vertex: v, vertex_count: self.n });
        }
        if u == v {
            return Err(GraphError::Loop(u));
        }
        *self.multiplicities.entry((u.min(v), u.max(v))).or_insert(0) += 1;
        Ok(self)
    }

    pub fn build(self) -> Multigraph {
        let mut instances = Vec::new();
        let mut degrees = vec![0; self.n];
        for (&(u, v), &m) in &self.multiplicities {
            degrees[u] += m;
            degrees[v] += m;
            for ordinal in 0..m {
                instances.push(EdgeInstance { u, v, ordinal });
            }
        }
        Multigraph { n: self.n, multiplicities: self.multiplicities, instances, degrees }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::rng_from;
    use rand::Rng;

    #[test]
    fn rejects_loops() {
        let mut b = Multigraph::builder(3);
        assert!(matches!(b.add_edge(2, 2), Err(GraphError::Loop(2))));
    }

    #[test]
    fn instances_are_canonical_and_counted() {
        let m = Multigraph::from_pairs(3, &[(1, 2), (0, 1), (2, 1)]).unwrap();
        assert_eq!(m.instance_count(), 3);
        assert_eq!(
            m.instances(),
            &[
                EdgeInstance { u: 0, v: 1, ordinal: 0 },
                EdgeInstance { u: 1, v: 2, ordinal: 0 },
                EdgeInstance { u: 1, v: 2, ordinal: 1 },
            ]
        );
        assert_eq!(m.multiplicity(2, 1), 2);
        assert_eq!(m.degree(1), 3);
        assert_eq!(m.max_degree(), 3);
        assert_eq!(m.max_multiplicity(), 2);
    }

    #[test]
    fn degree_multiplicity_relations_hold_on_random_multigraphs() {
        for seed in 0..200u64 {
            let mut rng = rng_from(seed);
            let n = rng.random_range(2..9usize);
            let mut b = Multigraph::builder(n);
            for _ in 0..rng.random_range(0..20) {
                let u = rng.random_range(0..n);
                let v = rng.random_range(0..n);
                if u != v {
                    b.add_edge(u, v).unwrap();
                }
            }
            let m = b.build();
            assert!(m.max_degree() >= m.max_multiplicity());
            assert!(m.max_degree() <= m.vertex_count() * m.max_multiplicity());
        }
    }
}

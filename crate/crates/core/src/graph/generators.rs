//! Small named graphs and seeded random generators for the test corpus.

use rand::Rng;

use super::{SimpleGraph, SimpleGraphBuilder};

pub fn complete(n: usize) -> SimpleGraph {
    let mut b = SimpleGraphBuilder::new(n);
    for u in 0..n {
        for v in (u + 1)..n {
            b.add_edge(u, v).unwrap();
        }
    }
    b.build()
}

pub fn cycle(n: usize) -> SimpleGraph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    let mut b = SimpleGraphBuilder::new(n);
    for v in 0..n {
        b.add_edge(v, (v + 1) % n).unwrap();
    }
    b.build()
}

pub fn path(n: usize) -> SimpleGraph {
    let mut b = SimpleGraphBuilder::new(n);
    for v in 1..n {
        b.add_edge(v - 1, v).unwrap();
    }
    b.build()
}

/// Petersen graph: outer 5-cycle 0..5, inner pentagram 5..10, spokes i -- i+5.
pub fn petersen() -> SimpleGraph {
    let mut b = SimpleGraphBuilder::new(10);
    for i in 0..5 {
        b.add_edge(i, (i + 1) % 5).unwrap();
        b.add_edge(i, i + 5).unwrap();
        b.add_edge(i + 5, (i + 2) % 5 + 5).unwrap();
    }
    b.build()
}

/// Erdos-Renyi G(n, p) from the caller's generator.
pub fn random_gnp(n: usize, p: f64, rng: &mut impl Rng) -> SimpleGraph {
    let mut b = SimpleGraphBuilder::new(n);
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random::<f64>() < p {
                b.add_edge(u, v).unwrap();
            }
        }
    }
    b.build()
}

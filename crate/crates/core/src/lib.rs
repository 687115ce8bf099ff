//! Graph machinery for building and certifying weak immersions of complete
//! graphs in graphs of high chromatic number.
//!
//! The crate is organized around the pipeline
//!
//! ```text
//! parse -> chromatic core -> complete-join decomposition -> per-part
//! injections -> auxiliary multigraph -> edge coloring -> immersion paths
//! ```
//!
//! plus a seeded experiment harness for the semi-random branch-vertex
//! selection process and calculators for crossing-number bounds.

pub mod bounds;
pub mod chromatic;
pub mod edge_color;
pub mod experiments;
pub mod gallai;
pub mod graph;
pub mod immersion;
pub mod seed;

pub use chromatic::{chromatic_number, critical_subgraph, is_k_critical, ChiConfig, ChiError};
pub use gallai::{gallai_decompose, verify_decomposition, GallaiDecomposition, GallaiError};
pub use graph::{GraphError, Multigraph, SimpleGraph};
pub use immersion::{
    build_h, choose_injections, construct_immersion, verify_weak_immersion, ImmersionError,
    PartSplit, Strategy, WeakImmersion,
};

/// A single named pass/fail entry in a verification report.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn pass(name: &str, detail: impl Into<String>) -> Self {
        Check { name: name.to_string(), passed: true, detail: detail.into() }
    }

    pub fn fail(name: &str, detail: impl Into<String>) -> Self {
        Check { name: name.to_string(), passed: false, detail: detail.into() }
    }

    pub fn of(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.to_string(), passed, detail: detail.into() }
    }
}

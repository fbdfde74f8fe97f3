//! Search and construction tools for `H`-intersecting families of graphs.
//!
//! A family of subgraphs of a host is `H`-intersecting when every two members
//! share a copy of `H` in their common edges. The crate enumerates small hosts,
//! finds the largest such family on each by exact maximum clique, and builds
//! and checks the multipartite constructions with exact dyadic densities.

pub mod clique;
pub mod construct;
pub mod density;
pub mod detect;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod input;
pub mod search;

pub use clique::{build_compatibility, max_clique, BitGraph, CliqueResult, CompatibilityGraph};
pub use construct::{multipartite_family, ConstructionSpec, SubgraphFamily};
pub use density::DyadicDensity;
pub use error::{Error, Result};
pub use graph::{christofides_host, CanonicalKey, EdgeSet, Graph};

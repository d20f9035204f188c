//! Minimum-cost directed edge covers of crossing biset-families.
//!
//! The crate provides the biset algebra, oracle access to (possibly implicit)
//! families, the primal-dual machinery for intersecting and semi-intersecting
//! families, the approximation algorithms for crossing families, exact
//! desk-scale oracles, and the vertex-connectivity applications built on top.

pub mod biset;
pub mod connectivity;
pub mod crossing;
pub mod digraph;
pub mod error;
pub mod exact;
pub mod generators;
pub mod lp;
pub mod nodeset;
pub mod oracle;
pub mod primal_dual;
pub mod rational;

pub use biset::{Biset, Edge, GroundSet};
pub use digraph::WeightedDigraph;
pub use error::{Error, Result};
pub use nodeset::NodeSet;
pub use rational::Rational;

//! Induced-subgraph size spectra of graphs.
//!
//! This crate computes the set of sizes Φ(G) = {e(H) : H an induced subgraph of G}
//! and the order/size set Ψ(G) = {(v(H), e(H))}, together with their vertex-weighted
//! generalizations, in three ways:
//!
//! * exact enumeration over all subsets (small graphs),
//! * stratified random sampling (lower bounds for larger graphs), and
//! * a certified randomized construction that extracts many distinct-size induced
//!   subgraphs from graphs with small homogeneous sets, emitting an explicit,
//!   independently recountable vertex-set certificate for every size it claims.
//!
//! Supporting modules provide the structural analysis the construction relies on
//! (homogeneous-set search, neighbourhood diversity, bipartite diverse splits) and
//! an exactly-validated probability toolkit (tail bounds, anti-concentration of
//! hypergeometric differences, a sampling variance identity).
//!
//! Everything downstream of a random draw is verified by exact integer (or
//! rational) recomputation before it is returned; randomness only decides *what*
//! gets built, never *whether it is correct*.

pub mod analysis;
pub mod construction;
pub mod error;
pub mod experiments;
pub mod graph;
pub mod prob;
pub mod rng;
pub mod spectrum;

mod bits;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet, WeightFn, WeightedGraph, MAX_N};

//! Counting connected labeled bipartite graphs with a fixed surplus.
//!
//! A connected spanning subgraph of `K_{n,m}` with `n + m - 1 + k` edges is
//! its breadth-first spanning tree plus `k` of that tree's candidate edges.
//! The number of candidates `W` depends on the tree only through its child
//! counts, which gives
//!
//! - exact counts by summing over admissible child-count pairs
//!   ([`counting::exact_count`]), with brute-force enumeration as a check
//!   ([`graph::oracle_count`]);
//! - Monte Carlo counts from uniform spanning trees sampled through
//!   conditioned Poisson counts and a cyclic shift ([`counting::estimate_count`]);
//! - the large-`n` approximation in terms of Brownian excursion area moments
//!   ([`counting::asymptotic_count`], [`counting::estimate_rho`]).

pub mod bigcount;
pub mod cli;
pub mod counting;
pub mod cyclic;
pub mod error;
pub mod exploration;
pub mod graph;
pub mod rng;
pub mod sampling;
pub mod stats;
pub mod validate;

pub use bigcount::BigCount;
pub use error::{Error, Result};
pub use graph::BipartiteGraph;

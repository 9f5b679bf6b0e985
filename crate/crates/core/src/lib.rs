//! Spectral extremal checks for graphs with a fixed number of edges.
//!
//! The crate is organised around a small immutable [`Graph`] type with
//! bitset adjacency rows (at most 64 vertices) and a set of pure operations:
//!
//! * [`family`] builds and recognises the named graph families
//!   (stars, `S_n^k`, complete split graphs, books, `H_{t,s}∘R_k`, ...).
//! * [`graph6`] reads and writes the graph6 exchange format.
//! * [`patterns`] decides (not necessarily induced) subgraph containment for
//!   cycles, `C_t^+`, complete bipartite graphs, books, cliques, paths and
//!   small explicit graphs.
//! * [`spectra`] computes spectral radii with residual certificates, exact
//!   characteristic polynomials and exact equality certificates.
//! * [`enumerate`] generates one representative per isomorphism class of
//!   graphs with `m` edges and no isolated vertices.
//! * [`search`] hill-climbs the spectral radius over forbidden-subgraph
//!   classes when exhaustive generation is out of reach.
//! * [`verify`] runs the bound, boundary and conjecture checks and produces
//!   JSON-lines reports.

pub mod enumerate;
pub mod error;
pub mod family;
pub mod graph;
pub mod graph6;
pub mod patterns;
pub mod search;
pub mod spectra;
pub mod verify;

pub use error::{Error, Result};
pub use family::FamilySpec;
pub use graph::Graph;
pub use patterns::Pattern;

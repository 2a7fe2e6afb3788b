//! Pure Nash equilibria of two-strategy replicator dynamics on networks.
//!
//! Each vertex of an undirected graph is a player that plays a 2x2 game
//! against every neighbor. The crate classifies every pure profile as strict
//! Nash, Nash or neither from neighbor counts, cross-checks that against the
//! Nash definitions and the Jacobian, prunes with topological rules, sweeps
//! the payoff ratio, and integrates the replicator flow.

pub mod dynamics;
pub mod equilibria;
pub mod error;
pub mod game;
pub mod graph;
pub mod io;
pub mod report;
pub mod sweep;

pub use equilibria::{
    best_response_oracle, classify_pure, enumerate_classified, jacobian_at, EnumerateOptions, Filter,
    ProfileClassification, PureProfile, Verdict,
};
pub use error::{Error, Result};
pub use game::{EgnInstance, GameClass, PayoffMatrix, StateVector};
pub use graph::{Graph, VertexSet};

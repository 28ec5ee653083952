//! Exact tools for the tropicalization of graph and hypergraph density profiles.
//!
//! The crate is organised bottom-up:
//!
//! * [`hypergraph`] and [`families`]: r-uniform hypergraphs, homomorphism
//!   densities, products, canonical forms and the extremal constructions.
//! * [`gluing`]: partially labeled graphs, the gluing product, bases and the
//!   tropical moment matrix.
//! * [`cones`]: exact rational polyhedral cones (double description and an
//!   exact simplex membership oracle) plus the closed-form clique and star cones.
//! * [`obstructions`]: the degree-based tropical point, the square-difference
//!   vectors and the certificates showing a binomial is not sos-testable.
//!
//! All arithmetic is exact; floating point only appears when trajectories are
//! reported.

pub mod cones;
pub mod error;
pub mod families;
pub mod gluing;
pub mod hypergraph;
pub mod obstructions;
pub mod poly;
pub mod rational;

mod bitset;
mod canon;

pub use error::{Error, Result};
pub use hypergraph::Hypergraph;
pub use rational::Rational;

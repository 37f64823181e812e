//! Linear quantum networks as colored, weighted graphs.
//!
//! A network sends `N` particles with two-level internal states to `N`
//! detectors. Post-selecting one particle per detector leaves a state whose
//! terms are the perfect matchings of the network graph. This crate builds
//! those graphs, enumerates their perfect matchings, assembles the
//! post-selected state and checks its entanglement structurally and
//! numerically.

pub mod cli;
pub mod designers;
pub mod dot;
pub mod entanglement;
pub mod error;
pub mod graphs;
pub mod io;
pub mod model;
pub mod partition;
pub mod spin;
pub mod states;

pub use error::{LqnError, Result};
pub use model::{NetworkSpec, NormalizationMode, Statistics, Transition};
pub use partition::Partition;
pub use spin::{ColorVector, Spin};
pub use states::{Ket, NoBunchState};

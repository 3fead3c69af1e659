//! Kinetic solver: semi-Lagrangian transport with implicit relaxation.

pub mod reconstruct;
pub mod relax;
pub mod stepper;
pub mod transport;

pub use reconstruct::Reconstruction;
pub use relax::{moment_solve, relax_implicit};
pub use stepper::{CflSegment, KineticSolver, RunOutput, Snapshot, SolverConfig, Stepper, TimeController};
pub use transport::{transport, GhostMode, TransportConfig};

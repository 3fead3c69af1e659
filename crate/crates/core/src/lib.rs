//! Kinetic BGK models for inert gas mixtures (AAP, GS, BBGSP), their
//! Navier–Stokes limits with global and per-species velocities and
//! temperatures, and closed-form discrepancy terms between the models.

pub mod closures;
pub mod discrepancy;
pub mod error;
pub mod grid;
pub mod io;
pub mod kinetic;
pub mod linalg;
pub mod moments;
pub mod ns;
pub mod params;
pub mod scenarios;
pub mod state;

pub use error::{Error, Result};
pub use grid::{make_grids, BoundaryKind, SpatialGrid, VelocityGrid};
pub use params::{MixtureParams, Model, UnitSystem};
pub use state::{init_maxwellian_state, ChuPair, KineticState, SpeciesFields};

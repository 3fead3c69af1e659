//! Navier–Stokes limits of the kinetic models: global velocity and
//! temperature, and one velocity and temperature per species.
//!
//! Both systems are advanced in conservative variables so that the discrete
//! totals are exact; the primitive-variable right-hand sides are provided as
//! well and checked against the conservative form.

pub mod driver;
pub mod fv;
pub mod global;
pub mod multi;
pub mod rk4;
pub mod spectral;

pub use driver::{run_system, stable_dt, step_system, NsMethod, NsRun, NsRunConfig};
pub use fv::{maccormack_step, FvBoundary};
pub use global::{fick_matrix, transport_coeffs, FickVariant, GlobalSystem, NsGlobalState};
pub use multi::{exchange_terms, species_fluxes, MultiSystem, NsMultiState, SourceMode};
pub use rk4::{rk4_step, Fields};
pub use spectral::SpectralDiff;

use crate::error::Result;

/// A 1D system ∂_t U + ∂_x F(U, ∂_x ·) = S(U).
pub trait ConservationSystem: Sync {
    fn nvars(&self) -> usize;

    /// Flux at every point; `grad` differentiates a field on the same points.
    fn flux(&self, u: &Fields, grad: &dyn Fn(&[f64]) -> Vec<f64>) -> Result<Fields>;

    /// Explicit source, if any.
    fn source(&self, _u: &Fields) -> Result<Option<Fields>> {
        Ok(None)
    }

    /// Backward-Euler source sub-step applied after the flux update.
    fn implicit_source(&self, _u: &mut Fields, _dt: f64) -> Result<()> {
        Ok(())
    }

    /// Largest characteristic speed.
    fn max_speed(&self, u: &Fields) -> Result<f64>;

    /// Largest diffusion coefficient, already scaled by ε.
    fn max_diffusivity(&self, u: &Fields) -> Result<f64>;

    /// Mixture pressure (shock sensor).
    fn pressure(&self, u: &Fields) -> Result<Vec<f64>>;
}

//! Galerkin-truncated free Euler dynamics and cyclic vorticity.

mod config;
mod dynamics;
mod vorticity;

pub use config::{Integrator, SimConfig};
pub use dynamics::{
    b_form, b_form_full, diagnostics, euler_rhs, pressure_rhs, simulate, step, Diagnostics, SampleRecord, SimState,
    Trajectory,
};
pub use vorticity::{check_vorticity_transport, moments_of, vorticity, vorticity_moments, vorticity_transport_direct};

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Mode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Integrator {
    Rk4,
    EulerExplicit,
}

/// Parameters of a Galerkin-truncated free Euler run.
///
/// Time quantities are rationals so that exact-mode runs are reproducible;
/// float runs convert them once.
#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub n: usize,
    /// Largest Fock degree retained by the truncation.
    pub trunc_degree: usize,
    pub dt: BigRational,
    pub t_end: BigRational,
    pub integrator: Integrator,
    pub mode: Mode,
    /// Coefficient of the number-operator damping term; 0 gives Euler.
    pub viscosity: BigRational,
    /// Highest vorticity moment `τ(Ω^m)` reported.
    pub moments: usize,
    /// Diagnostics are recorded every `cadence` steps (and at the end).
    pub cadence: usize,
}

impl SimConfig {
    pub fn new(n: usize, trunc_degree: usize, dt: BigRational, t_end: BigRational) -> Self {
        SimConfig {
            n,
            trunc_degree,
            dt,
            t_end,
            integrator: Integrator::Rk4,
            mode: Mode::Float,
            viscosity: BigRational::zero(),
            moments: 2,
            cadence: 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidConfig(m.to_string()));
        if self.n == 0 {
            return bad("n must be at least 1");
        }
        if self.trunc_degree < 1 {
            return bad("trunc_degree must be at least 1");
        }
        if !self.dt.is_positive() {
            return bad("dt must be positive");
        }
        if self.t_end.is_negative() {
            return bad("t_end must be nonnegative");
        }
        if self.viscosity.is_negative() {
            return bad("viscosity must be nonnegative");
        }
        if self.cadence == 0 {
            return bad("cadence must be at least 1");
        }
        Ok(())
    }
}

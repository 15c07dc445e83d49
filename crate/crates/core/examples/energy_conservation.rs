//! Energy along the Galerkin-truncated free Euler flow.
//!
//! Random self-adjoint divergence-free initial data, truncation degree 5,
//! RK4. Prints the relative energy drift per run and checks that the
//! truncated right-hand side is exactly orthogonal to the field.

use std::time::Instant;

use free_euler::euler::{euler_rhs, simulate, SimConfig};
use free_euler::random::{random_divergence_free, seeded};
use free_euler::semicircular::inner_sym;
use free_euler::{GaussRational, Mode, Scalar, VectorField};
use num_complex::Complex64;
use num_rational::BigRational;

fn main() -> free_euler::Result<()> {
    let runs: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let mut rng = seeded(2024);
    let mut cfg = SimConfig::new(2, 5, BigRational::new(1.into(), 1000.into()), BigRational::from_integer(1.into()));
    cfg.cadence = 100;
    cfg.moments = 2;

    for run in 0..runs {
        let v0: VectorField<GaussRational> = random_divergence_free(&mut rng, 2, 3)?;

        let mut exact_cfg = cfg.clone();
        exact_cfg.mode = Mode::Exact;
        let power = inner_sym(&euler_rhs(&v0, &exact_cfg)?, &v0)?;

        let start = Instant::now();
        let vf: VectorField<Complex64> = v0.map_coeffs(|c| c.to_complex());
        let traj = simulate(&vf, &cfg)?;
        let e0 = traj.samples[0].energy.re;
        let drift = traj
            .samples
            .iter()
            .map(|s| (s.energy.re - e0).abs() / e0)
            .fold(0.0, f64::max);
        println!(
            "run {run}: E0 = {e0:.6}, <rhs(v), v> = {power}, max relative drift = {drift:.2e} ({:.1?})",
            start.elapsed()
        );
    }
    Ok(())
}

//! Adding `−ν N v` (number-operator damping) to the truncated equations:
//! the energy decays monotonically.

use free_euler::euler::{simulate, SimConfig};
use free_euler::random::{random_divergence_free, seeded};
use free_euler::{GaussRational, Scalar, VectorField};
use num_complex::Complex64;
use num_rational::BigRational;

fn main() -> free_euler::Result<()> {
    let mut cfg = SimConfig::new(2, 4, BigRational::new(1.into(), 100.into()), BigRational::from_integer(2.into()));
    cfg.viscosity = BigRational::new(1.into(), 10.into());
    cfg.cadence = 10;
    let v0: VectorField<GaussRational> = random_divergence_free(&mut seeded(8), 2, 3)?;
    let v0: VectorField<Complex64> = v0.map_coeffs(|c| c.to_complex());
    let traj = simulate(&v0, &cfg)?;
    for s in &traj.samples {
        println!("t = {:<5} energy = {:.10}", s.t.to_string(), s.energy.re);
    }
    let monotone = traj.samples.windows(2).all(|w| w[1].energy.re <= w[0].energy.re);
    println!("monotonically non-increasing: {monotone}");
    Ok(())
}

//! `v = (s2, −s1)` is a stationary solution: `D_v v = (−s1, −s2)` is a
//! cyclic gradient, so the projected advection vanishes and the pressure
//! is `(s1² + s2²)/2`.

use free_euler::euler::{pressure_rhs, simulate, SimConfig};
use free_euler::text::{format_field, format_poly, parse_field};
use free_euler::{GaussRational, Mode, VectorField};
use num_complex::Complex64;
use num_rational::BigRational;

fn main() -> free_euler::Result<()> {
    let cfg = SimConfig::new(2, 3, BigRational::new(1.into(), 100.into()), BigRational::from_integer(1.into()));
    let v0: VectorField<Complex64> = parse_field("(s2, -s1)", None)?;
    let traj = simulate(&v0, &cfg)?;
    let last = traj.samples.last().expect("samples");
    let deviation = traj.final_field.checked_sub(&v0)?;
    let worst = deviation
        .components()
        .iter()
        .flat_map(|p| p.terms().map(|(_, c)| c.norm()))
        .fold(0.0, f64::max);
    println!("{} samples, final field {}", traj.samples.len(), format_field(&traj.final_field));
    println!("max coefficient deviation {worst:.2e}, energy {:.15}", last.energy.re);
    println!("τ(Ω), τ(Ω²) = {}, {}", last.moments[0].re, last.moments[1].re);

    let mut exact = cfg.clone();
    exact.mode = Mode::Exact;
    let v: VectorField<GaussRational> = parse_field("(s2, -s1)", None)?;
    let (rhs, p) = pressure_rhs(&v, &exact)?;
    println!("exact rhs {}, pressure {}", format_field(&rhs), format_poly(&p));
    Ok(())
}

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::algebra::{directional_field, flipped_insert, NcPoly, VectorField};
use crate::error::{Error, Result};
use crate::euler::config::{Integrator, SimConfig};
use crate::euler::vorticity::vorticity_moments;
use crate::leray::{divergence_check_coords, is_divergence_free, project_coords, recover_pressure, FLOAT_TOLERANCE};
use crate::scalar::{Mode, Scalar};
use crate::semicircular::{apply_number_op, inner_sym, GradedFieldCoords};

/// `B(c, a) = Π(D_a c_k + Σ_j m_{c_j}(flip ∂_k a_j))_k`. Blocks above
/// `max_degree` are discarded.
///
/// For divergence-free `a, b, c` and the bracket `[a,b] = −{a,b}` of
/// [`bracket`](crate::algebra::bracket) this satisfies
/// `⟨[a,b], c⟩ = ⟨B(c,a), b⟩` under the symmetric form.
pub fn b_form<S: Scalar>(c: &VectorField<S>, a: &VectorField<S>, max_degree: usize) -> Result<VectorField<S>> {
    let raw = b_form_unprojected(c, a)?;
    Ok(project_coords(&GradedFieldCoords::from_field(&raw), max_degree)?.to_field())
}

/// [`b_form`] with no degree truncation.
pub fn b_form_full<S: Scalar>(c: &VectorField<S>, a: &VectorField<S>) -> Result<VectorField<S>> {
    let raw = b_form_unprojected(c, a)?;
    let d = raw.degree().unwrap_or(0);
    Ok(project_coords(&GradedFieldCoords::from_field(&raw), d)?.to_field())
}

fn b_form_unprojected<S: Scalar>(c: &VectorField<S>, a: &VectorField<S>) -> Result<VectorField<S>> {
    c.check_same_n(a)?;
    let check = is_divergence_free(a)?;
    if !check.divergence_free {
        return Err(Error::NotDivergenceFree {
            residual: check.residual,
        });
    }
    let mut comps = directional_field(a, c)?.into_components();
    for (k, comp) in comps.iter_mut().enumerate() {
        for (j, aj) in a.components().iter().enumerate() {
            let extra = flipped_insert(&c.components()[j], k + 1, aj)?;
            *comp = &*comp + &extra;
        }
    }
    VectorField::new(a.n(), comps)
}

/// Both parts of `D_v v` in Fock coordinates, truncated at the retained
/// degree: the divergence-free part and the cyclic-gradient remainder.
struct SplitAdvection<S> {
    projected: GradedFieldCoords<S>,
    remainder: GradedFieldCoords<S>,
}

fn split_advection<S: Scalar>(v: &VectorField<S>, max_degree: usize) -> Result<SplitAdvection<S>> {
    let advection = directional_field(v, v)?;
    let mut coords = GradedFieldCoords::from_field(&advection);
    coords.truncate(max_degree);
    let projected = project_coords(&coords, max_degree)?;
    let remainder = coords.add(&projected.scale(&S::one().neg_ref()));
    Ok(SplitAdvection { projected, remainder })
}

/// Right-hand side in Fock coordinates: `−Π_{≤D}(D_v v) − ν N v`.
fn rhs_coords<S: Scalar>(v: &VectorField<S>, cfg: &SimConfig) -> Result<GradedFieldCoords<S>> {
    let split = split_advection(v, cfg.trunc_degree)?;
    let mut out = split.projected.scale(&S::one().neg_ref());
    if !cfg.viscosity.is_zero() {
        let nu = S::from_ratio(&cfg.viscosity).neg_ref();
        let damp = GradedFieldCoords::from_field(v).map_components(|x| apply_number_op(x).scale(&nu));
        out = out.add(&damp);
    }
    Ok(out)
}

fn check_admissible<S: Scalar>(v: &VectorField<S>, cfg: &SimConfig) -> Result<()> {
    if v.n() != cfg.n {
        return Err(Error::GeneratorMismatch {
            left: cfg.n,
            right: v.n(),
        });
    }
    if let Some(d) = v.degree() {
        if d > cfg.trunc_degree {
            return Err(Error::DegreeCap {
                degree: d,
                cap: cfg.trunc_degree,
            });
        }
    }
    if !is_self_adjoint_within_tolerance(v) {
        return Err(Error::NotSelfAdjoint);
    }
    let check = is_divergence_free(v)?;
    if !check.divergence_free {
        return Err(Error::NotDivergenceFree {
            residual: check.residual,
        });
    }
    Ok(())
}

pub(crate) fn is_self_adjoint_within_tolerance<S: Scalar>(v: &VectorField<S>) -> bool {
    match S::MODE {
        Mode::Exact => v.is_self_adjoint(),
        Mode::Float => {
            let diff = v.checked_sub(&v.adjoint()).expect("same n");
            let d = GradedFieldCoords::from_field(&diff).norm_sqr_f64().sqrt();
            let s = GradedFieldCoords::from_field(v).norm_sqr_f64().sqrt();
            d <= FLOAT_TOLERANCE * s.max(1.0)
        }
    }
}

/// Truncated free Euler right-hand side `−Π_{≤D}(D_v v) − ν N(v)`.
///
/// `Π_{≤D}` projects each Fock block of degree `k ≤ D` onto `X_k` and drops
/// the rest; `N` is the number operator.
pub fn euler_rhs<S: Scalar>(v: &VectorField<S>, cfg: &SimConfig) -> Result<VectorField<S>> {
    check_admissible(v, cfg)?;
    Ok(rhs_coords(v, cfg)?.to_field())
}

/// Pressure form: returns the right-hand side together with a pressure `p`
/// such that `rhs = −D_v v − δp − ν N v` up to the discarded tail above
/// degree `D`.
pub fn pressure_rhs<S: Scalar>(v: &VectorField<S>, cfg: &SimConfig) -> Result<(VectorField<S>, NcPoly<S>)> {
    check_admissible(v, cfg)?;
    let split = split_advection(v, cfg.trunc_degree)?;
    let gradient = split.remainder.scale(&S::one().neg_ref()).to_field();
    let p = recover_pressure(&gradient)?;
    Ok((rhs_coords(v, cfg)?.to_field(), p))
}

/// Diagnostics recorded along a trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostics<S> {
    /// `⟨v, v⟩` under the symmetric form.
    pub energy: S,
    /// `τ(Ω^m)` for `m = 1..=M`.
    pub moments: Vec<S>,
    pub div_residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimState<S> {
    pub t: BigRational,
    pub v: VectorField<S>,
    /// Pressure recovered at `t`.
    pub p: NcPoly<S>,
    pub diagnostics: Diagnostics<S>,
}

impl<S: Scalar> SimState<S> {
    /// State at time `t` with freshly computed pressure and diagnostics.
    pub fn new(t: BigRational, v: VectorField<S>, cfg: &SimConfig) -> Result<Self> {
        let (_, p) = pressure_rhs(&v, cfg)?;
        let diagnostics = diagnostics(&v, cfg)?;
        Ok(SimState { t, v, p, diagnostics })
    }
}

pub fn diagnostics<S: Scalar>(v: &VectorField<S>, cfg: &SimConfig) -> Result<Diagnostics<S>> {
    Ok(Diagnostics {
        energy: inner_sym(v, v)?,
        moments: vorticity_moments(v, cfg.moments),
        div_residual: is_divergence_free(v)?.residual,
    })
}

fn axpy<S: Scalar>(v: &VectorField<S>, h: &S, k: &VectorField<S>) -> VectorField<S> {
    v + &k.scale(h)
}

/// Advances `v` by `h` and re-projects through `Π_{≤D}`.
fn advance<S: Scalar>(v: &VectorField<S>, h: &S, t: f64, cfg: &SimConfig) -> Result<VectorField<S>> {
    let f = |x: &VectorField<S>| rhs_coords(x, cfg).map(|c| c.to_field());
    let raw = match cfg.integrator {
        Integrator::EulerExplicit => axpy(v, h, &f(v)?),
        Integrator::Rk4 => {
            let half = h.mul_ref(&S::from_i64(2).inv().expect("nonzero"));
            let k1 = f(v)?;
            let k2 = f(&axpy(v, &half, &k1))?;
            let k3 = f(&axpy(v, &half, &k2))?;
            let k4 = f(&axpy(v, h, &k3))?;
            let two = S::from_i64(2);
            let sum = &(&k1 + &k4) + &(&k2 + &k3).scale(&two);
            let sixth = h.mul_ref(&S::from_i64(6).inv().expect("nonzero"));
            axpy(v, &sixth, &sum)
        }
    };
    let coords = GradedFieldCoords::from_field(&raw);
    let check = divergence_check_coords(&coords)?;
    if S::MODE == Mode::Float && !(check.residual <= FLOAT_TOLERANCE) {
        return Err(Error::Instability {
            t,
            residual: check.residual,
        });
    }
    Ok(project_coords(&coords, cfg.trunc_degree)?.to_field())
}

/// One integrator step of size `cfg.dt`, followed by re-projection and fresh
/// diagnostics.
pub fn step<S: Scalar>(state: &SimState<S>, cfg: &SimConfig) -> Result<SimState<S>> {
    step_by(state, &cfg.dt, cfg)
}

fn step_by<S: Scalar>(state: &SimState<S>, h: &BigRational, cfg: &SimConfig) -> Result<SimState<S>> {
    cfg.validate()?;
    let t = &state.t + h;
    if h.is_zero() {
        return Ok(SimState { t, ..state.clone() });
    }
    let v = advance(&state.v, &S::from_ratio(h), t.to_f64().unwrap_or(f64::NAN), cfg)?;
    SimState::new(t, v, cfg)
}

/// One sampled point of a trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleRecord<S> {
    pub t: BigRational,
    pub energy: S,
    pub moments: Vec<S>,
    pub div_residual: f64,
    pub pressure: NcPoly<S>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<S> {
    pub samples: Vec<SampleRecord<S>>,
    pub final_field: VectorField<S>,
    /// Whether the initial projection through `Π_{≤D}` altered `v0`.
    pub initial_projection_changed: bool,
}

/// Runs the truncated dynamics from `v0` to `cfg.t_end`.
///
/// `v0` is first projected through `Π_{≤D}`. The last step is shortened
/// when `t_end` is not a multiple of `dt`.
pub fn simulate<S: Scalar>(v0: &VectorField<S>, cfg: &SimConfig) -> Result<Trajectory<S>> {
    cfg.validate()?;
    if v0.n() != cfg.n {
        return Err(Error::GeneratorMismatch {
            left: cfg.n,
            right: v0.n(),
        });
    }
    if !is_self_adjoint_within_tolerance(v0) {
        return Err(Error::NotSelfAdjoint);
    }
    let projected = project_coords(&GradedFieldCoords::from_field(v0), cfg.trunc_degree)?.to_field();
    let changed = !fields_close(&projected, v0);
    if changed {
        log::warn!("initial field changed by the Leray projection / degree truncation");
    }

    let record = |t: &BigRational, v: &VectorField<S>| -> Result<SampleRecord<S>> {
        let (_, p) = pressure_rhs(v, cfg)?;
        let d = diagnostics(v, cfg)?;
        Ok(SampleRecord {
            t: t.clone(),
            energy: d.energy,
            moments: d.moments,
            div_residual: d.div_residual,
            pressure: p,
        })
    };

    let mut t = BigRational::zero();
    let mut v = projected;
    let mut samples = vec![record(&t, &v)?];
    let mut steps = 0usize;
    while t < cfg.t_end {
        let remaining = &cfg.t_end - &t;
        let h = if remaining < cfg.dt { remaining } else { cfg.dt.clone() };
        t += &h;
        v = advance(&v, &S::from_ratio(&h), t.to_f64().unwrap_or(f64::NAN), cfg)?;
        steps += 1;
        if steps % cfg.cadence == 0 || t >= cfg.t_end {
            samples.push(record(&t, &v)?);
        }
    }
    Ok(Trajectory {
        samples,
        final_field: v,
        initial_projection_changed: changed,
    })
}

fn fields_close<S: Scalar>(a: &VectorField<S>, b: &VectorField<S>) -> bool {
    match S::MODE {
        Mode::Exact => a == b,
        Mode::Float => {
            let d = GradedFieldCoords::from_field(&(a - b)).norm_sqr_f64().sqrt();
            let s = GradedFieldCoords::from_field(b).norm_sqr_f64().sqrt();
            d <= FLOAT_TOLERANCE * s.max(1.0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::leray::leray_project_full;
    use crate::scalar::GaussRational as Q;
    use crate::word::Word;
    use num_complex::Complex64 as C;

    fn rot<S: Scalar>() -> VectorField<S> {
        let s1 = NcPoly::generator(2, 1).unwrap();
        let s2: NcPoly<S> = NcPoly::generator(2, 2).unwrap();
        VectorField::new(2, vec![s2, -&s1]).unwrap()
    }

    fn cfg(mode: Mode, d: usize) -> SimConfig {
        let mut c = SimConfig::new(2, d, BigRational::new(1.into(), 100.into()), BigRational::from_integer(1.into()));
        c.mode = mode;
        c
    }

    #[test]
    fn adjointness_of_b_with_bracket() {
        use crate::algebra::{bracket, directional};
        use crate::random::{random_divergence_free, seeded};
        use crate::semicircular::trace_of_product;
        let mut rng = seeded(5);
        let mut nonzero = 0;
        for _ in 0..12 {
            let a: VectorField<Q> = random_divergence_free(&mut rng, 2, 3).unwrap();
            let b: VectorField<Q> = random_divergence_free(&mut rng, 2, 3).unwrap();
            let c: VectorField<Q> = random_divergence_free(&mut rng, 2, 3).unwrap();
            for j in 1..=2 {
                // integration by parts
                let lhs = trace_of_product(&directional(&a, b.component(j)).unwrap(), c.component(j));
                let rhs = trace_of_product(b.component(j), &directional(&a, c.component(j)).unwrap());
                assert_eq!(lhs, rhs.neg_ref());
                // τ((D_b a_j) c_j) = Σ_k τ(m_{c_j}(flip ∂_k a_j) b_k)
                let lhs = trace_of_product(&directional(&b, a.component(j)).unwrap(), c.component(j));
                let mut rhs = Q::zero();
                for k in 1..=2 {
                    let m = flipped_insert(c.component(j), k, a.component(j)).unwrap();
                    rhs.add_assign_ref(&trace_of_product(&m, b.component(k)));
                }
                assert_eq!(lhs, rhs);
            }
            let lhs = inner_sym(&bracket(&a, &b).unwrap(), &c).unwrap();
            let rhs = inner_sym(&b_form_full(&c, &a).unwrap(), &b).unwrap();
            assert_eq!(lhs, rhs);
            nonzero += usize::from(!lhs.is_zero());
        }
        assert!(nonzero > 0);
    }

    #[test]
    fn b_form_of_rotation() {
        let a = rot::<Q>();
        assert!(b_form_full(&a, &a).unwrap().is_zero());
        assert!(b_form_full(&VectorField::zero(2), &a).unwrap().is_zero());
    }

    #[test]
    fn rotation_is_stationary() {
        let c = cfg(Mode::Exact, 3);
        assert!(euler_rhs(&rot::<Q>(), &c).unwrap().is_zero());
        let (rhs, p) = pressure_rhs(&rot::<Q>(), &c).unwrap();
        assert!(rhs.is_zero());
        let half = Q::from_frac(1, 2);
        let m = |l: &[u8]| NcPoly::monomial(2, Word::from_letters(l), Q::one());
        assert_eq!(p, (&m(&[1, 1]) + &m(&[2, 2])).scale(&half));
        assert!(euler_rhs(&VectorField::<Q>::zero(2), &c).unwrap().is_zero());
    }

    #[test]
    fn step_keeps_rotation() {
        let c = cfg(Mode::Exact, 3);
        let s0 = SimState::new(BigRational::zero(), rot::<Q>(), &c).unwrap();
        let s1 = step(&s0, &c).unwrap();
        assert_eq!(s1.v, s0.v);
        assert_eq!(s1.diagnostics.energy, Q::from_i64(2));

        let cf = cfg(Mode::Float, 3);
        let f0 = SimState::new(BigRational::zero(), rot::<C>(), &cf).unwrap();
        let f1 = step(&f0, &cf).unwrap();
        assert!((f1.diagnostics.energy - C::new(2.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn zero_dt_step_is_identity() {
        let c = cfg(Mode::Exact, 3);
        let s0 = SimState::new(BigRational::zero(), rot::<Q>(), &c).unwrap();
        let s1 = step_by(&s0, &BigRational::zero(), &c).unwrap();
        assert_eq!(s1.v, s0.v);
    }

    #[test]
    fn explicit_euler_step_is_definitional() {
        let mut c = cfg(Mode::Exact, 3);
        c.integrator = Integrator::EulerExplicit;
        let m = |l: &[u8]| NcPoly::monomial(2, Word::from_letters(l), Q::one());
        let raw = VectorField::new(2, vec![&m(&[2, 1, 1]) + &m(&[1, 1, 2]), &m(&[1, 2, 2]) + &m(&[2, 2, 1])]).unwrap();
        let v0 = leray_project_full(&raw).unwrap().self_adjoint_part();
        let v0 = &v0 + &rot();
        let s0 = SimState::new(BigRational::zero(), v0.clone(), &c).unwrap();
        let s1 = step(&s0, &c).unwrap();
        let r = euler_rhs(&v0, &c).unwrap();
        let dt = Q::from_ratio(&c.dt);
        let expected = project_coords(&GradedFieldCoords::from_field(&(&v0 + &r.scale(&dt))), 3)
            .unwrap()
            .to_field();
        assert_eq!(s1.v, expected);
    }

    #[test]
    fn rejects_non_divergence_free() {
        let s1 = NcPoly::<Q>::generator(2, 1).unwrap();
        let s2 = NcPoly::generator(2, 2).unwrap();
        let grad = VectorField::new(2, vec![s1, s2]).unwrap();
        assert!(matches!(
            euler_rhs(&grad, &cfg(Mode::Exact, 3)),
            Err(Error::NotDivergenceFree { .. })
        ));
        assert!(b_form_full(&grad, &grad).is_err());
    }
}

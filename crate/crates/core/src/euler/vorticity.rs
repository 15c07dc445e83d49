use crate::algebra::{directional, NcPoly, VectorField};
use crate::error::{Error, Result};
use crate::leray::{is_divergence_free, theta};
use crate::scalar::Scalar;
use crate::semicircular::{apply_poly, poly_to_fock, trace, GradedVector};

/// Cyclic vorticity `Ω = i Σ_j [s_j, v_j]`.
pub fn vorticity<S: Scalar>(v: &VectorField<S>) -> NcPoly<S> {
    theta(v).scale(&S::imag())
}

/// `τ(Ω^m)` for `m = 1..=max_order`.
///
/// Evaluated in the Fock representation as `⟨Ω^b 1, (Ω*)^a 1⟩` with
/// `a + b = m`, which never expands the full power `Ω^m`.
pub fn vorticity_moments<S: Scalar>(v: &VectorField<S>, max_order: usize) -> Vec<S> {
    let omega = vorticity(v);
    moments_of(&omega, max_order)
}

/// `τ(x^m)` for `m = 1..=max_order` via Fock vectors.
pub fn moments_of<S: Scalar>(x: &NcPoly<S>, max_order: usize) -> Vec<S> {
    if max_order == 0 {
        return Vec::new();
    }
    let x_adj = x.adjoint();
    let self_adjoint = *x == x_adj;
    let n = x.n();
    let half_up = max_order.div_ceil(2);
    // right[b] = x^b 1, left[a] = (x*)^a 1
    let mut right = vec![GradedVector::vacuum(n)];
    for b in 1..=max_order / 2 {
        let next = apply_poly(x, &right[b - 1]);
        right.push(next);
    }
    let mut left = if self_adjoint {
        right.clone()
    } else {
        vec![GradedVector::vacuum(n)]
    };
    for a in left.len()..=half_up {
        let op = if self_adjoint { x } else { &x_adj };
        let next = apply_poly(op, &left[a - 1]);
        left.push(next);
    }
    (1..=max_order)
        .map(|m| {
            let a = m.div_ceil(2);
            right[m - a].inner(&left[a])
        })
        .collect()
}

/// The instantaneous rate `d/dt τ(Ω^m) = −τ(D_v Ω^m)` along the untruncated
/// flow, for a divergence-free field `v`.
///
/// `D_v` is a derivation and `τ` is tracial, so `τ(D_v Ω^m) = m τ(D_vΩ · Ω^{m−1})`;
/// the product is evaluated as `⟨Ω^{m−1} 1, (D_vΩ)* 1⟩` in the Fock space.
/// [`vorticity_transport_direct`] expands `D_v(Ω^m)` instead.
pub fn check_vorticity_transport<S: Scalar>(v: &VectorField<S>, m: usize) -> Result<S> {
    require_divergence_free(v)?;
    if m == 0 {
        return Ok(S::zero());
    }
    let omega = vorticity(v);
    let d_omega = directional(v, &omega)?;
    let mut power = GradedVector::vacuum(v.n());
    for _ in 1..m {
        power = apply_poly(&omega, &power);
    }
    let value = power.inner(&poly_to_fock(&d_omega.adjoint()));
    Ok(value.scale_i64(m as i64).neg_ref())
}

/// Same quantity as [`check_vorticity_transport`], computed by expanding the
/// polynomial `D_v(Ω^m)` and taking its trace.
pub fn vorticity_transport_direct<S: Scalar>(v: &VectorField<S>, m: usize) -> Result<S> {
    require_divergence_free(v)?;
    let x = vorticity(v).pow(m);
    Ok(trace(&directional(v, &x)?).neg_ref())
}

fn require_divergence_free<S: Scalar>(v: &VectorField<S>) -> Result<()> {
    let check = is_divergence_free(v)?;
    if !check.divergence_free {
        return Err(Error::NotDivergenceFree {
            residual: check.residual,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussRational as Q;
    use crate::word::Word;

    fn rot() -> VectorField<Q> {
        let s1 = NcPoly::generator(2, 1).unwrap();
        let s2: NcPoly<Q> = NcPoly::generator(2, 2).unwrap();
        VectorField::new(2, vec![s2, -&s1]).unwrap()
    }

    #[test]
    fn rotation_vorticity() {
        let omega = vorticity(&rot());
        let m = |l: &[u8]| NcPoly::monomial(2, Word::from_letters(l), Q::one());
        let expected = (&m(&[1, 2]) - &m(&[2, 1])).scale(&Q::imag().scale_i64(2));
        assert_eq!(omega, expected);
        assert!(omega.is_self_adjoint());
        let moments = vorticity_moments(&rot(), 4);
        assert!(moments[0].is_zero());
        assert_eq!(moments[1], Q::from_i64(8));
        // Fock route agrees with expanding the powers.
        for (k, mo) in moments.iter().enumerate() {
            assert_eq!(*mo, trace(&omega.pow(k + 1)));
        }
    }

    #[test]
    fn zero_field() {
        let z = VectorField::<Q>::zero(2);
        assert!(vorticity(&z).is_zero());
        assert!(vorticity_moments(&z, 3).iter().all(Scalar::is_zero));
    }

    #[test]
    fn transport_vanishes_for_rotation() {
        for m in 1..=3 {
            assert!(check_vorticity_transport(&rot(), m).unwrap().is_zero());
            assert!(vorticity_transport_direct(&rot(), m).unwrap().is_zero());
        }
    }

    #[test]
    fn transport_routes_agree_on_random_fields() {
        let mut rng = crate::random::seeded(11);
        for _ in 0..4 {
            let v: VectorField<Q> = crate::random::random_divergence_free(&mut rng, 2, 2).unwrap();
            for m in 1..=3 {
                let a = check_vorticity_transport(&v, m).unwrap();
                assert_eq!(a, vorticity_transport_direct(&v, m).unwrap());
                assert!(a.is_zero());
            }
        }
        // Off the divergence-free locus the two routes still agree.
        let f: VectorField<Q> = crate::random::random_field(&mut rng, 2, 2, 3, true);
        let omega = vorticity(&f);
        let d = directional(&f, &omega).unwrap();
        let lhs = trace(&directional(&f, &omega.pow(2)).unwrap());
        assert_eq!(lhs, crate::semicircular::trace_of_product(&d, &omega).scale_i64(2));
    }

    #[test]
    fn transport_requires_divergence_free() {
        let s1 = NcPoly::generator(2, 1).unwrap();
        let s2: NcPoly<Q> = NcPoly::generator(2, 2).unwrap();
        let grad = VectorField::new(2, vec![s1, s2]).unwrap();
        assert!(matches!(
            check_vorticity_transport(&grad, 2),
            Err(Error::NotDivergenceFree { .. })
        ));
    }
}

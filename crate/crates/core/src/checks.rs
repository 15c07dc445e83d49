//! Seeded invariant suites, driven by `free-euler check`.
//!
//! Every suite draws its cases from [`seeded`] and runs in exact arithmetic
//! except `trace-oracle`, which compares against floating-point matrices.

use num_traits::One;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{bracket, cyclic_grad, directional, directional_field, free_diff, NcPoly, VectorField};
use crate::error::{Error, Result};
use crate::euler::{b_form_full, check_vorticity_transport, euler_rhs, SimConfig};
use crate::leray::{c_map, is_divergence_free, leray_project_full, recover_pressure, theta};
use crate::oracle::TruncatedFock;
use crate::random::{random_divergence_free, random_field, random_poly, random_word, seeded};
use crate::scalar::{GaussRational as Q, Scalar};
use crate::semicircular::{fock_to_poly, inner_herm, inner_sym, pairing_count, poly_to_fock, trace, trace_of_product};

pub const SUITES: &[&str] = &[
    "algebra",
    "trace",
    "trace-oracle",
    "leray",
    "exact-sequence",
    "lemma1",
    "energy",
    "vorticity-transport",
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub cases: usize,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Tally {
    checks: usize,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

/// Runs one suite, or every suite for `"all"`.
pub fn run_suite(name: &str, seed: u64, cases: usize) -> Result<Vec<SuiteReport>> {
    if name == "all" {
        return SUITES.iter().map(|s| run_one(s, seed, cases)).collect();
    }
    Ok(vec![run_one(name, seed, cases)?])
}

fn run_one(name: &str, seed: u64, cases: usize) -> Result<SuiteReport> {
    let f: fn(&mut ChaCha8Rng, usize, &mut Tally) -> Result<()> = match name {
        "algebra" => algebra,
        "trace" => trace_suite,
        "trace-oracle" => trace_oracle,
        "leray" => leray,
        "exact-sequence" => exact_sequence,
        "lemma1" => lemma1,
        "energy" => energy,
        "vorticity-transport" => vorticity_transport,
        other => return Err(Error::UnknownSuite(other.to_string())),
    };
    let mut rng = seeded(seed);
    let mut tally = Tally {
        checks: 0,
        failures: Vec::new(),
    };
    f(&mut rng, cases, &mut tally)?;
    Ok(SuiteReport {
        suite: name.to_string(),
        seed,
        cases,
        checks: tally.checks,
        failures: tally.failures,
    })
}

fn pick_n(rng: &mut ChaCha8Rng) -> usize {
    rng.random_range(2..=3)
}

fn algebra(rng: &mut ChaCha8Rng, cases: usize, t: &mut Tally) -> Result<()> {
    for case in 0..cases {
        let n = pick_n(rng);
        let p: NcPoly<Q> = random_poly(rng, n, 3, 4, true);
        let q: NcPoly<Q> = random_poly(rng, n, 3, 4, true);
        let pq = &p * &q;
        for j in 1..=n {
            let lhs = free_diff(j, &pq)?;
            let rhs = free_diff(j, &p)?.right_mul(&q)?.add(&free_diff(j, &q)?.left_mul(&p)?);
            t.check(lhs == rhs, || format!("case {case}: Leibniz rule for ∂_{j}"));
        }
        t.check(cyclic_grad(&p.adjoint()) == cyclic_grad(&p).adjoint(), || {
            format!("case {case}: δ(P*) = (δP)*")
        });
        let b: VectorField<Q> = random_field(rng, n, 2, 3, true);
        let lhs = directional(&b, &pq)?;
        let rhs = &(&directional(&b, &p)? * &q) + &(&p * &directional(&b, &q)?);
        t.check(lhs == rhs, || format!("case {case}: D_b is a derivation"));

        let f = |rng: &mut ChaCha8Rng| -> VectorField<Q> { random_field(rng, n, 2, 2, true) };
        let (x, y, z) = (f(rng), f(rng), f(rng));
        let jac = &(&bracket(&x, &bracket(&y, &z)?)? + &bracket(&y, &bracket(&z, &x)?)?) + &bracket(&z, &bracket(&x, &y)?)?;
        t.check(jac.is_zero(), || format!("case {case}: Jacobi identity"));
    }
    Ok(())
}

fn trace_suite(rng: &mut ChaCha8Rng, cases: usize, t: &mut Tally) -> Result<()> {
    for case in 0..cases {
        let n = pick_n(rng);
        let p: NcPoly<Q> = random_poly(rng, n, 5, 5, true);
        let q: NcPoly<Q> = random_poly(rng, n, 5, 5, true);
        t.check(trace(&(&p * &q)) == trace(&(&q * &p)), || format!("case {case}: τ(PQ) = τ(QP)"));
        t.check(trace_of_product(&p, &q) == trace(&(&p * &q)), || {
            format!("case {case}: streamed τ(PQ) equals τ of the expanded product")
        });
        t.check(trace(&p.adjoint()) == trace(&p).conj(), || format!("case {case}: τ(P*) = conj τ(P)"));
        t.check(fock_to_poly(&poly_to_fock(&p)) == p, || format!("case {case}: Fock round trip"));
    }
    let catalan = [1u64, 1, 2, 5, 14, 42, 132];
    for (m, c) in catalan.iter().enumerate() {
        let w = crate::word::Word::from_letters(&vec![1; 2 * m]);
        t.check(pairing_count(&w) == *c, || format!("τ(s^{}) should be {c}", 2 * m));
    }
    Ok(())
}

fn trace_oracle(rng: &mut ChaCha8Rng, cases: usize, t: &mut Tally) -> Result<()> {
    let level = 8;
    let spaces: Vec<TruncatedFock> = (1..=3).map(|n| TruncatedFock::build(n, level)).collect::<Result<_>>()?;
    for case in 0..cases {
        let n = rng.random_range(1..=3);
        let len = rng.random_range(0..=level);
        let w = random_word(rng, n, len);
        let mono = NcPoly::monomial(n, w.clone(), Q::one());
        let symbolic = trace(&mono).to_complex();
        let numeric = spaces[n - 1].vacuum_expectation(&mono)?;
        t.check((symbolic - numeric).norm() <= 1e-10, || {
            format!("case {case}: τ({w}) = {symbolic} but the Fock oracle gives {numeric}")
        });
    }
    Ok(())
}

fn leray(rng: &mut ChaCha8Rng, cases: usize, t: &mut Tally) -> Result<()> {
    for case in 0..cases {
        let n = pick_n(rng);
        let a: VectorField<Q> = random_field(rng, n, 3, 4, true);
        let b: VectorField<Q> = random_field(rng, n, 3, 4, true);
        let pa = leray_project_full(&a)?;
        let pb = leray_project_full(&b)?;
        t.check(leray_project_full(&pa)? == pa, || format!("case {case}: Π² = Π"));
        t.check(inner_herm(&pa, &b)? == inner_herm(&a, &pb)?, || {
            format!("case {case}: Π is self-adjoint for the Hermitian form")
        });
        t.check(pa.degree() <= a.degree(), || format!("case {case}: Π raised the degree"));
        t.check(is_divergence_free(&pa)?.divergence_free, || format!("case {case}: Πa is divergence-free"));
        let g = a.checked_sub(&pa)?;
        t.check(inner_herm(&pa, &g)?.is_zero(), || format!("case {case}: Πa ⊥ (a − Πa)"));
        match recover_pressure(&g) {
            Ok(p) => t.check(cyclic_grad(&p) == g, || format!("case {case}: δp ≠ a − Πa")),
            Err(e) => t.check(false, || format!("case {case}: a − Πa is not a cyclic gradient ({e})")),
        }
    }
    Ok(())
}

fn exact_sequence(rng: &mut ChaCha8Rng, cases: usize, t: &mut Tally) -> Result<()> {
    for case in 0..cases {
        let n = pick_n(rng);
        let r: NcPoly<Q> = random_poly(rng, n, 5, 5, true);
        t.check(theta(&cyclic_grad(&r)).is_zero(), || format!("case {case}: θ(δR) = 0"));
        let a: VectorField<Q> = random_field(rng, n, 5, 4, true);
        let th = theta(&a);
        t.check(c_map(&th).is_zero(), || format!("case {case}: C(θ(a)) = 0"));
        t.check(trace(&th).is_zero(), || format!("case {case}: τ(θ(a)) = 0"));
    }
    Ok(())
}

fn lemma1(rng: &mut ChaCha8Rng, cases: usize, t: &mut Tally) -> Result<()> {
    for case in 0..cases {
        let f = |rng: &mut ChaCha8Rng| random_divergence_free::<Q, _>(rng, 2, 3);
        let (a, b, c) = (f(rng)?, f(rng)?, f(rng)?);
        // With [a,b] = −{a,b} the adjointness holds with a plus sign.
        let lhs = inner_sym(&bracket(&a, &b)?, &c)?;
        let rhs = inner_sym(&b_form_full(&c, &a)?, &b)?;
        t.check(lhs == rhs, || format!("case {case}: ⟨[a,b],c⟩ = {lhs} but ⟨B(c,a),b⟩ = {rhs}"));
        let baa = b_form_full(&a, &a)?;
        t.check(baa == leray_project_full(&directional_field(&a, &a)?)?, || {
            format!("case {case}: B(a,a) ≠ Π(D_a a)")
        });
    }
    Ok(())
}

fn energy(rng: &mut ChaCha8Rng, cases: usize, t: &mut Tally) -> Result<()> {
    let mut cfg = SimConfig::new(2, 5, One::one(), One::one());
    cfg.mode = crate::scalar::Mode::Exact;
    for case in 0..cases {
        let v: VectorField<Q> = random_divergence_free(rng, 2, 3)?;
        let e = inner_sym(&euler_rhs(&v, &cfg)?, &v)?;
        t.check(e.is_zero(), || format!("case {case}: ⟨rhs(v), v⟩ = {e}"));
    }
    Ok(())
}

fn vorticity_transport(rng: &mut ChaCha8Rng, cases: usize, t: &mut Tally) -> Result<()> {
    for case in 0..cases {
        let v: VectorField<Q> = random_divergence_free(rng, 2, 3)?;
        for m in 1..=4 {
            let rate = check_vorticity_transport(&v, m)?;
            t.check(rate.is_zero(), || format!("case {case}: τ(D_v Ω^{m}) = {rate}"));
        }
    }
    Ok(())
}

//! Coefficient fields.
//!
//! Two scalar modes exist: exact Gaussian rationals ([`GaussRational`]) and
//! complex doubles ([`Complex64`]). Every algebraic type is generic over the
//! [`Scalar`] trait, so a single expression can never mix the two modes.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arithmetic mode tag, used by configuration and serialization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exact => f.write_str("exact"),
            Mode::Float => f.write_str("float"),
        }
    }
}

/// Coefficient ring of the polynomial algebra.
///
/// Arithmetic goes through reference-taking methods so that big-integer
/// backed scalars are not cloned on every operation.
pub trait Scalar: Clone + fmt::Debug + fmt::Display + PartialEq + Send + Sync + 'static {
    const MODE: Mode;

    fn zero() -> Self;
    fn one() -> Self;
    /// The imaginary unit.
    fn imag() -> Self;
    /// Exact zero test. Float scalars compare against `0.0` literally.
    fn is_zero(&self) -> bool;
    fn from_i64(v: i64) -> Self;
    fn from_ratio(r: &BigRational) -> Self;
    fn from_gauss(g: &GaussRational) -> Self;
    /// Converts a double. Exact mode uses the exact binary value.
    fn from_f64(x: f64) -> Self;

    fn add_assign_ref(&mut self, other: &Self);
    fn sub_assign_ref(&mut self, other: &Self);
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn scale_i64(&self, k: i64) -> Self;
    fn conj(&self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn to_complex(&self) -> Complex64;
    /// Signs (`-1`, `0`, `1`) of the real and imaginary parts.
    fn signs(&self) -> (i8, i8) {
        let z = self.to_complex();
        let sg = |x: f64| (x > 0.0) as i8 - (x < 0.0) as i8;
        (sg(z.re), sg(z.im))
    }
    /// `|z|^2` as a double, used for residual norms.
    fn norm_sqr_f64(&self) -> f64 {
        self.to_complex().norm_sqr()
    }
    /// `self + a * b`
    fn add_mul(&mut self, a: &Self, b: &Self) {
        let p = a.mul_ref(b);
        self.add_assign_ref(&p);
    }
}

/// An exact complex number `re + im*i` with arbitrary-precision rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRational { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        GaussRational {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        GaussRational::real(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

fn fmt_ratio(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Serialized as `p/q`, `r/t*i` or `p/q+r/t*i` (integers drop the denominator).
impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => f.write_str(&fmt_ratio(&self.re)),
            (true, false) => write!(f, "{}*i", fmt_ratio(&self.im)),
            (false, false) => {
                let sign = if self.im.is_negative() { "-" } else { "+" };
                write!(
                    f,
                    "{}{}{}*i",
                    fmt_ratio(&self.re),
                    sign,
                    fmt_ratio(&self.im.abs())
                )
            }
        }
    }
}

impl Add for GaussRational {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += &rhs;
        self
    }
}

impl Sub for GaussRational {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self -= &rhs;
        self
    }
}

impl Mul for GaussRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl Neg for GaussRational {
    type Output = Self;
    fn neg(self) -> Self {
        GaussRational {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl AddAssign<&GaussRational> for GaussRational {
    fn add_assign(&mut self, rhs: &GaussRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussRational> for GaussRational {
    fn sub_assign(&mut self, rhs: &GaussRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl Scalar for GaussRational {
    const MODE: Mode = Mode::Exact;

    fn zero() -> Self {
        GaussRational::real(BigRational::zero())
    }

    fn one() -> Self {
        GaussRational::real(BigRational::one())
    }

    fn imag() -> Self {
        GaussRational::new(BigRational::zero(), BigRational::one())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn from_i64(v: i64) -> Self {
        GaussRational::real(BigRational::from_integer(BigInt::from(v)))
    }

    fn from_ratio(r: &BigRational) -> Self {
        GaussRational::real(r.clone())
    }

    fn from_gauss(g: &GaussRational) -> Self {
        g.clone()
    }

    fn from_f64(x: f64) -> Self {
        GaussRational::real(BigRational::from_float(x).unwrap_or_else(BigRational::zero))
    }

    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }

    fn sub_assign_ref(&mut self, other: &Self) {
        *self -= other;
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if self.im.is_zero() && other.im.is_zero() {
            return GaussRational::real(&self.re * &other.re);
        }
        let re = &self.re * &other.re - &self.im * &other.im;
        let im = &self.re * &other.im + &self.im * &other.re;
        GaussRational { re, im }
    }

    fn neg_ref(&self) -> Self {
        GaussRational {
            re: -&self.re,
            im: -&self.im,
        }
    }

    fn scale_i64(&self, k: i64) -> Self {
        let k = BigRational::from_integer(BigInt::from(k));
        GaussRational {
            re: &self.re * &k,
            im: &self.im * &k,
        }
    }

    fn conj(&self) -> Self {
        GaussRational {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    fn inv(&self) -> Option<Self> {
        if Scalar::is_zero(self) {
            return None;
        }
        let den = &self.re * &self.re + &self.im * &self.im;
        Some(GaussRational {
            re: &self.re / &den,
            im: -&self.im / &den,
        })
    }

    fn signs(&self) -> (i8, i8) {
        let sg = |x: &BigRational| (x.is_positive() as i8) - (x.is_negative() as i8);
        (sg(&self.re), sg(&self.im))
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl Scalar for Complex64 {
    const MODE: Mode = Mode::Float;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }

    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }

    fn imag() -> Self {
        Complex64::new(0.0, 1.0)
    }

    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }

    fn from_ratio(r: &BigRational) -> Self {
        Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn from_gauss(g: &GaussRational) -> Self {
        g.to_complex()
    }

    fn from_f64(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }

    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }

    fn sub_assign_ref(&mut self, other: &Self) {
        *self -= other;
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn neg_ref(&self) -> Self {
        -self
    }

    fn scale_i64(&self, k: i64) -> Self {
        self * (k as f64)
    }

    fn conj(&self) -> Self {
        Complex64::conj(self)
    }

    fn inv(&self) -> Option<Self> {
        if Scalar::is_zero(self) {
            None
        } else {
            Some(Complex64::inv(self))
        }
    }

    fn to_complex(&self) -> Complex64 {
        *self
    }

    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
}

/// Formats a float with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Serialization used for CSV cells and JSON manifests.
pub fn serialize_scalar<S: Scalar>(s: &S) -> String {
    match S::MODE {
        Mode::Exact => s.to_string(),
        Mode::Float => {
            let z = s.to_complex();
            if z.im == 0.0 {
                fmt_f64(z.re)
            } else {
                let sign = if z.im < 0.0 { "-" } else { "+" };
                format!("{}{}{}*i", fmt_f64(z.re), sign, fmt_f64(z.im.abs()))
            }
        }
    }
}

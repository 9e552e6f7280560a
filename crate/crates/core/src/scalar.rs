//! Coefficient fields.
//!
//! Every polynomial in this crate is generic over a [`Coeff`] field. Two
//! fields are provided: [`Rational`] (exact, arbitrary precision) and `f64`.
//! A polynomial value lives entirely in one field, so mixing exact and
//! floating-point data inside one expression is a type error rather than a
//! runtime surprise. The dynamically typed wrappers in [`crate::polyrep::json`]
//! surface the same rule as [`crate::Error::ModeMismatch`].

use std::fmt;
use std::ops::Neg;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Exact rational scalar. Always in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Complex number over a coefficient field.
pub type Cx<F> = Complex<F>;

/// Scalar mode of a polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Rational,
    Float,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Rational => f.write_str("rational"),
            Mode::Float => f.write_str("float"),
        }
    }
}

/// A field usable as polynomial coefficient and as a family parameter
/// (α, β, μ).
pub trait Coeff:
    Clone + PartialEq + PartialOrd + fmt::Debug + Num + Neg<Output = Self> + Send + Sync + 'static
{
    const MODE: Mode;

    fn from_int(v: i64) -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn to_f64(&self) -> f64;
    /// JSON encoding: `"p/q"` strings for rationals, numbers for floats.
    fn to_json(&self) -> serde_json::Value;
    fn from_json(v: &serde_json::Value) -> Result<Self, Error>;
}

impl Coeff for Rational {
    const MODE: Mode = Mode::Rational;

    fn from_int(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(format_rational(self))
    }

    fn from_json(v: &serde_json::Value) -> Result<Self, Error> {
        match v {
            serde_json::Value::String(s) => parse_rational(s),
            serde_json::Value::Number(n) if n.is_i64() => Ok(Self::from_int(n.as_i64().unwrap())),
            other => Err(Error::Parse(format!(
                "rational coefficient must be a \"p/q\" string, got {other}"
            ))),
        }
    }
}

impl Coeff for f64 {
    const MODE: Mode = Mode::Float;

    fn from_int(v: i64) -> Self {
        v as f64
    }

    fn from_rational(r: &Rational) -> Self {
        rational_to_f64(r)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::Number::from_f64(*self)
            .map(serde_json::Value::Number)
            .unwrap_or(serde_json::Value::Null)
    }

    fn from_json(v: &serde_json::Value) -> Result<Self, Error> {
        match v {
            serde_json::Value::Number(n) => n.as_f64().ok_or_else(|| Error::Parse(format!("not a float: {n}"))),
            serde_json::Value::String(s) => s
                .trim()
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("bad float {s:?}: {e}"))),
            other => Err(Error::Parse(format!("float coefficient expected, got {other}"))),
        }
    }
}

/// Shorthand for the rational `num/den`.
pub fn q(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer as rational.
pub fn qi(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Parses `"p"` or `"p/q"` (optional sign, surrounding whitespace allowed).
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    let bad = |why: &str| Error::Parse(format!("bad rational {s:?}: {why}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad("numerator"))?;
    let den = BigInt::from_str(den).map_err(|_| bad("denominator"))?;
    if den.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

/// `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Correctly handles numerators and denominators outside the `f64` range by
/// scaling both to a common bit length first.
pub fn rational_to_f64(r: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 && n.abs() < 9.0e15 && d < 9.0e15 {
            return n / d;
        }
    }
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let shift = nb - db - 60;
    let scaled = if shift > 0 {
        r.numer() / (r.denom() << (shift as usize))
    } else {
        (r.numer() << ((-shift) as usize)) / r.denom()
    };
    scaled.to_f64().unwrap_or(f64::NAN) * 2f64.powi(shift as i32)
}

/// Exact conversion of a finite float (used when tests compare modes).
pub fn f64_to_rational(v: f64) -> Option<Rational> {
    Rational::from_f64(v)
}

/// A family parameter as it arrives from the outside world: `"p/q"` strings
/// select exact mode, bare numbers select float mode.
#[derive(Debug, Clone, PartialEq)]
pub enum Param {
    Exact(Rational),
    Float(f64),
}

impl Param {
    pub fn mode(&self) -> Mode {
        match self {
            Param::Exact(_) => Mode::Rational,
            Param::Float(_) => Mode::Float,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Param::Exact(r) => rational_to_f64(r),
            Param::Float(v) => *v,
        }
    }

    /// Exact value if available; floats convert exactly (binary expansion).
    pub fn to_rational(&self) -> Option<Rational> {
        match self {
            Param::Exact(r) => Some(r.clone()),
            Param::Float(v) => f64_to_rational(*v),
        }
    }
}

impl FromStr for Param {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim();
        if t.contains('/') {
            return parse_rational(t).map(Param::Exact);
        }
        t.parse::<f64>()
            .map(Param::Float)
            .map_err(|_| Error::Parse(format!("bad parameter {s:?}")))
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Exact(r) => f.write_str(&format_rational(r)),
            Param::Float(v) => write!(f, "{v}"),
        }
    }
}

/// Rising factorial `(a)_k`.
pub fn pochhammer<F: Coeff>(a: &F, k: u32) -> F {
    let mut acc = F::one();
    let mut term = a.clone();
    for _ in 0..k {
        acc = acc * term.clone();
        term = term + F::one();
    }
    acc
}

pub fn factorial<F: Coeff>(n: u32) -> F {
    pochhammer(&F::one(), n)
}

pub fn binomial<F: Coeff>(n: u32, k: u32) -> F {
    if k > n {
        return F::zero();
    }
    let k = k.min(n - k);
    let mut acc = F::one();
    for i in 0..k {
        acc = acc * F::from_int((n - i) as i64) / F::from_int((i + 1) as i64);
    }
    acc
}

/// Complex conjugate without requiring `num_complex`'s `Num` bound on clones.
pub fn conj<F: Coeff>(c: &Cx<F>) -> Cx<F> {
    Cx::new(c.re.clone(), -c.im.clone())
}

pub fn cx_is_zero<F: Coeff>(c: &Cx<F>) -> bool {
    c.re.is_zero() && c.im.is_zero()
}

pub fn is_negative<F: Coeff>(v: &F) -> bool {
    *v < F::zero()
}

/// Integer-ness of a rational, with its value when it fits.
pub fn as_small_int(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        r.numer().to_i64()
    } else {
        None
    }
}

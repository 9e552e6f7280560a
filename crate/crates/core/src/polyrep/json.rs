//! JSON polynomial schema.
//!
//! ```json
//! {"mode":"rational","terms":[{"a":0,"b":0,"re":"-1"},{"a":1,"b":1,"re":"2"}]}
//! ```
//!
//! Each term is the coefficient of `z^a z̄^b`. Rational scalars are `"p/q"`
//! strings (`"p"` for integers); float scalars are JSON numbers. A zero
//! imaginary part is omitted on output and defaults to zero on input. A
//! univariate polynomial in `t` uses the same schema with `b = 0`: the term
//! `(a, 0)` is the coefficient of `t^a`. Terms are written in the global term
//! order (total degree, then `a`), so output is byte-stable.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::polyrep::{BiPoly, UniPoly};
use crate::scalar::{Coeff, Cx, Mode, Rational};

#[derive(Serialize, Deserialize)]
struct TermJson {
    a: u32,
    b: u32,
    #[serde(default = "zero_value")]
    re: Value,
    #[serde(default = "zero_value", skip_serializing_if = "is_zero_value")]
    im: Value,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    mode: Mode,
    terms: Vec<TermJson>,
}

fn zero_value() -> Value {
    Value::Null
}

fn is_zero_value(v: &Value) -> bool {
    match v {
        Value::Null => true,
        Value::String(s) => s == "0",
        Value::Number(n) => n.as_f64() == Some(0.0),
        _ => false,
    }
}

fn scalar_from<F: Coeff>(v: &Value) -> Result<F> {
    if v.is_null() {
        Ok(F::zero())
    } else {
        F::from_json(v)
    }
}

pub fn bipoly_to_value<F: Coeff>(p: &BiPoly<F>) -> Value {
    let doc = PolyJson {
        mode: F::MODE,
        terms: p
            .terms()
            .map(|(m, c)| TermJson {
                a: m.a,
                b: m.b,
                re: c.re.to_json(),
                im: c.im.to_json(),
            })
            .collect(),
    };
    serde_json::to_value(doc).expect("polynomial serializes")
}

pub fn bipoly_to_json<F: Coeff>(p: &BiPoly<F>) -> String {
    serde_json::to_string(&bipoly_to_value(p)).expect("polynomial serializes")
}

/// Parses a polynomial whose `mode` must match `F`.
pub fn bipoly_from_value<F: Coeff>(v: &Value) -> Result<BiPoly<F>> {
    let doc: PolyJson = serde_json::from_value(v.clone())?;
    if doc.mode != F::MODE {
        return Err(Error::ModeMismatch {
            left: doc.mode,
            right: F::MODE,
        });
    }
    let terms = doc
        .terms
        .iter()
        .map(|t| Ok((t.a, t.b, Cx::new(scalar_from::<F>(&t.re)?, scalar_from::<F>(&t.im)?))))
        .collect::<Result<Vec<_>>>()?;
    BiPoly::from_terms(terms)
}

pub fn bipoly_from_json<F: Coeff>(s: &str) -> Result<BiPoly<F>> {
    bipoly_from_value(&serde_json::from_str::<Value>(s)?)
}

pub fn unipoly_to_json<F: Coeff>(p: &UniPoly<F>) -> String {
    let as_bi = BiPoly::from_terms(
        p.coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| (i as u32, 0, Cx::new(c.clone(), F::zero()))),
    )
    .expect("univariate degree within bound");
    bipoly_to_json(&as_bi)
}

pub fn unipoly_from_json<F: Coeff>(s: &str) -> Result<UniPoly<F>> {
    let bi = bipoly_from_json::<F>(s)?;
    let mut coeffs = vec![F::zero(); (bi.total_degree() + 1).max(0) as usize];
    for (m, c) in bi.terms() {
        if m.b != 0 || !c.im.is_zero() {
            return Err(Error::Parse(format!(
                "univariate polynomial has term (a={}, b={}) with b != 0 or complex coefficient",
                m.a, m.b
            )));
        }
        coeffs[m.a as usize] = c.re.clone();
    }
    Ok(UniPoly::from_coeffs(coeffs))
}

/// A polynomial whose scalar mode is only known at run time.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyBiPoly {
    Rational(BiPoly<Rational>),
    Float(BiPoly<f64>),
}

impl AnyBiPoly {
    pub fn mode(&self) -> Mode {
        match self {
            AnyBiPoly::Rational(_) => Mode::Rational,
            AnyBiPoly::Float(_) => Mode::Float,
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s)?;
        match v.get("mode").and_then(Value::as_str) {
            Some("rational") => Ok(AnyBiPoly::Rational(bipoly_from_value(&v)?)),
            Some("float") => Ok(AnyBiPoly::Float(bipoly_from_value(&v)?)),
            other => Err(Error::Parse(format!("unknown polynomial mode {other:?}"))),
        }
    }

    pub fn to_json(&self) -> String {
        match self {
            AnyBiPoly::Rational(p) => bipoly_to_json(p),
            AnyBiPoly::Float(p) => bipoly_to_json(p),
        }
    }

    fn mismatch(&self, other: &Self) -> Error {
        Error::ModeMismatch {
            left: self.mode(),
            right: other.mode(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (AnyBiPoly::Rational(p), AnyBiPoly::Rational(q)) => Ok(AnyBiPoly::Rational(p + q)),
            (AnyBiPoly::Float(p), AnyBiPoly::Float(q)) => Ok(AnyBiPoly::Float(p + q)),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (AnyBiPoly::Rational(p), AnyBiPoly::Rational(q)) => Ok(AnyBiPoly::Rational(p.try_mul(q)?)),
            (AnyBiPoly::Float(p), AnyBiPoly::Float(q)) => Ok(AnyBiPoly::Float(p.try_mul(q)?)),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn to_float(&self) -> BiPoly<f64> {
        match self {
            AnyBiPoly::Rational(p) => p.to_float(),
            AnyBiPoly::Float(p) => p.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qi};

    #[test]
    fn table_example_layout() {
        let p: BiPoly<Rational> = &BiPoly::zzbar().scale_real(&qi(2)) - &BiPoly::one();
        assert_eq!(
            bipoly_to_json(&p),
            r#"{"mode":"rational","terms":[{"a":0,"b":0,"re":"-1"},{"a":1,"b":1,"re":"2"}]}"#
        );
    }

    #[test]
    fn rational_round_trip_with_complex_terms() {
        let p = BiPoly::from_terms(vec![
            (3, 1, Cx::new(q(-7, 3), q(5, 11))),
            (0, 2, Cx::new(qi(0), q(1, 2))),
        ])
        .unwrap();
        let s = bipoly_to_json(&p);
        assert_eq!(bipoly_from_json::<Rational>(&s).unwrap(), p);
    }

    #[test]
    fn float_round_trip_is_bit_exact() {
        let p = BiPoly::from_terms(vec![(1, 0, Cx::new(0.1f64, -1.0 / 3.0))]).unwrap();
        assert_eq!(bipoly_from_json::<f64>(&bipoly_to_json(&p)).unwrap(), p);
    }

    #[test]
    fn mode_mismatch_is_reported() {
        let exact = AnyBiPoly::Rational(BiPoly::z());
        let float = AnyBiPoly::Float(BiPoly::z());
        assert!(matches!(exact.add(&float), Err(Error::ModeMismatch { .. })));
        assert!(matches!(float.mul(&exact), Err(Error::ModeMismatch { .. })));
        assert!(exact.add(&exact).is_ok());
        let s = bipoly_to_json(&BiPoly::<f64>::z());
        assert!(matches!(
            bipoly_from_json::<Rational>(&s),
            Err(Error::ModeMismatch { .. })
        ));
    }

    #[test]
    fn unipoly_uses_b_zero_convention() {
        let p = UniPoly::from_coeffs(vec![q(-1, 2), qi(0), q(3, 2)]);
        let s = unipoly_to_json(&p);
        assert!(s.contains(r#""a":2,"b":0,"re":"3/2""#));
        assert_eq!(unipoly_from_json::<Rational>(&s).unwrap(), p);
        assert!(unipoly_from_json::<Rational>(&bipoly_to_json(&BiPoly::<Rational>::zzbar())).is_err());
    }
}

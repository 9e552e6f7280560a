//! Complex generalized Zernike polynomials `Q^μ_{k,j}(z, z̄)`, their real
//! forms, and closed-form norms.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jacobi::jacobi_explicit;
use crate::polyrep::BiPoly;
use crate::scalar::{factorial, pochhammer, Coeff, Cx, Param, Rational};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZernikeIndex<F> {
    pub k: u32,
    pub j: u32,
    pub mu: F,
}

impl<F: Coeff> ZernikeIndex<F> {
    pub fn new(k: u32, j: u32, mu: F) -> Self {
        ZernikeIndex { k, j, mu }
    }

    /// μ > −1, so the family is orthogonal on the disk.
    pub fn is_orthogonal(&self) -> bool {
        self.mu > -F::one()
    }

    pub fn degree(&self) -> u32 {
        self.k + self.j
    }

    pub fn build(&self) -> Result<BiPoly<F>> {
        build_q(self.k, self.j, &self.mu)
    }
}

fn mu_guard<F: Coeff>(mu: &F, what: &str) -> Result<()> {
    if *mu > -F::one() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{what} needs mu > -1")))
    }
}

/// `m!/(μ+1)_m`, failing when the Pochhammer symbol vanishes.
fn prefactor<F: Coeff>(m: u32, mu: &F) -> Result<F> {
    let p = pochhammer(&(mu.clone() + F::one()), m);
    if p.is_zero() {
        return Err(Error::DegenerateParameter(format!(
            "(mu+1)_{m} = 0 for mu = {}",
            mu.to_f64()
        )));
    }
    Ok(factorial::<F>(m) / p)
}

/// `Q^μ_{k,j}`: `z^{k−j}` times a Jacobi polynomial in `2zz̄−1` when `k ≥ j`,
/// and the conjugate form with `z̄^{j−k}` when `k < j`. Normalized so that
/// `Q^μ_{k,j}(1, 1) = 1`.
pub fn build_q<F: Coeff>(k: u32, j: u32, mu: &F) -> Result<BiPoly<F>> {
    if k >= j {
        let p = jacobi_explicit(mu, &F::from_int((k - j) as i64), j);
        Ok(BiPoly::compose_radial(&p, k - j, 0)?.scale_real(&prefactor(j, mu)?))
    } else {
        build_q_conjugation(k, j, mu)
    }
}

/// `Q^μ_{k,j}` with float coefficients. Exact parameters are expanded in
/// rational arithmetic first and rounded once at the end.
pub fn build_q_param(k: u32, j: u32, mu: &Param) -> Result<BiPoly<f64>> {
    match mu {
        Param::Exact(r) => Ok(build_q::<Rational>(k, j, r)?.to_float()),
        Param::Float(v) => build_q(k, j, v),
    }
}

/// The conjugate representation `k!/(μ+1)_k · z̄^{j−k} P_k^{(μ,j−k)}(2zz̄−1)`.
///
/// For `k > j` the Jacobi parameter `j − k` is a negative integer and the
/// radial factor is divisible by `(zz̄)^{k−j}`; the quotient by `z̄^{k−j}` is
/// then taken exactly, so both representations can be compared for every
/// index pair.
pub fn build_q_conjugation<F: Coeff>(k: u32, j: u32, mu: &F) -> Result<BiPoly<F>> {
    let beta = F::from_int(j as i64 - k as i64);
    let p = jacobi_explicit(mu, &beta, k);
    let pre = prefactor(k, mu)?;
    if j >= k {
        return Ok(BiPoly::compose_radial(&p, 0, j - k)?.scale_real(&pre));
    }
    let shift = k - j;
    let radial = BiPoly::compose_radial(&p, 0, 0)?;
    let mut terms = Vec::with_capacity(radial.len());
    for (m, c) in radial.terms() {
        if m.b < shift {
            return Err(Error::DegenerateParameter(format!(
                "radial factor not divisible by (z zbar)^{shift} at term ({}, {})",
                m.a, m.b
            )));
        }
        terms.push((m.a, m.b - shift, c.clone()));
    }
    Ok(BiPoly::from_terms(terms)?.scale_real(&pre))
}

/// `(P^{n,μ}_{j,1}, P^{n,μ}_{j,2})`: real and imaginary parts of
/// `(μ+1)_j/j! · Q^μ_{n−j,j}`, i.e. `P_j^{(μ,n−2j)}(2r²−1) r^{n−2j}` times
/// `cos (n−2j)θ` and `sin (n−2j)θ`.
pub fn build_real_forms<F: Coeff>(n: u32, j: u32, mu: &F) -> Result<(BiPoly<F>, BiPoly<F>)> {
    if 2 * j > n {
        return Err(Error::IndexRange(format!(
            "real forms need j <= n/2 (n = {n}, j = {j})"
        )));
    }
    let q = build_q(n - j, j, mu)?;
    let p = q.scale_real(&(F::one() / prefactor(j, mu)?));
    Ok((p.real_part(), p.imag_part()))
}

/// `h^μ_{k,j} = (μ+1)/(μ+k+j+1) · k! j! / ((μ+1)_k (μ+1)_j)`, the squared
/// norm of `Q^μ_{k,j}` under `b_μ ∫_D f ḡ (1−zz̄)^μ`.
pub fn norm_h<F: Coeff>(k: u32, j: u32, mu: &F) -> Result<F> {
    mu_guard(mu, "norm h")?;
    let one = F::one();
    let m1 = mu.clone() + one.clone();
    let kj = F::from_int((k + j) as i64);
    Ok(
        m1.clone() / (mu.clone() + kj + one) * factorial::<F>(k) * factorial::<F>(j)
            / (pochhammer(&m1, k) * pochhammer(&m1, j)),
    )
}

fn real_norm_range<F: Coeff>(n: u32, j: u32, mu: &F) -> Result<()> {
    mu_guard(mu, "real-form norm")?;
    if 2 * j > n {
        return Err(Error::IndexRange(format!(
            "real-form norm needs j <= n/2 (n = {n}, j = {j})"
        )));
    }
    Ok(())
}

/// Squared norm of each real form under the normalized disk inner product:
///
/// `H^{n,μ}_j = (μ+1)_j (n−j)! (n−j+μ+1) / (j! (μ+2)_{n−j} (n+μ+1))`,
/// halved when `n ≠ 2j`.
pub fn norm_h_real<F: Coeff>(n: u32, j: u32, mu: &F) -> Result<F> {
    real_norm_range(n, j, mu)?;
    let one = F::one();
    let nj = F::from_int((n - j) as i64);
    let v = pochhammer(&(mu.clone() + one.clone()), j) * factorial::<F>(n - j) * (nj + mu.clone() + one.clone())
        / (factorial::<F>(j)
            * pochhammer(&(mu.clone() + F::from_int(2)), n - j)
            * (F::from_int(n as i64) + mu.clone() + one.clone()));
    Ok(if n == 2 * j { v } else { v / F::from_int(2) })
}

/// The real-form norm in its printed form, with `(n+2)_{n−j}` in the
/// denominator and a factor 2 when `n ≠ 2j`. It does not match the
/// integrals of the real forms beyond `n = 0`; see [`norm_h_real`].
pub fn norm_h_real_printed<F: Coeff>(n: u32, j: u32, mu: &F) -> Result<F> {
    real_norm_range(n, j, mu)?;
    let one = F::one();
    let nj = F::from_int((n - j) as i64);
    let v = pochhammer(&(mu.clone() + one.clone()), j) * factorial::<F>(n - j) * (nj + mu.clone() + one.clone())
        / (factorial::<F>(j)
            * pochhammer(&F::from_int(n as i64 + 2), n - j)
            * (F::from_int(n as i64) + mu.clone() + one.clone()));
    Ok(if n == 2 * j { v } else { v * F::from_int(2) })
}

/// `b_μ = (μ+1)/π`, held as its rational part `μ+1`.
#[derive(Clone, Debug, PartialEq)]
pub struct BMu<F> {
    pub rational_part: F,
}

impl<F: Coeff> BMu<F> {
    pub fn to_f64(&self) -> f64 {
        self.rational_part.to_f64() / PI
    }
}

pub fn b_mu<F: Coeff>(mu: &F) -> Result<BMu<F>> {
    mu_guard(mu, "b_mu")?;
    Ok(BMu {
        rational_part: mu.clone() + F::one(),
    })
}

/// `true` when every term `z^a z̄^b` of `p` has `a − b = k − j`.
pub fn has_angular_order<F: Coeff>(p: &BiPoly<F>, k: u32, j: u32) -> bool {
    p.terms().all(|(m, _)| m.a as i64 - m.b as i64 == k as i64 - j as i64)
}

/// Exact value `Q(1, 1)` (evaluation at `z = 1`).
pub fn value_at_one<F: Coeff>(p: &BiPoly<F>) -> Cx<F> {
    p.eval_exact(&Cx::new(F::one(), F::zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qi, Rational};

    #[test]
    fn construction_examples() {
        for k in 0..5 {
            let zk = BiPoly::from_terms(vec![(k, 0, Cx::new(qi(1), qi(0)))]).unwrap();
            assert_eq!(build_q(k, 0, &q(3, 2)).unwrap(), zk);
        }
        let expect: BiPoly<Rational> = &BiPoly::zzbar().scale_real(&qi(2)) - &BiPoly::one();
        assert_eq!(build_q(1, 1, &qi(0)).unwrap(), expect);
        let q111: BiPoly<Rational> = (&BiPoly::zzbar().scale_real(&qi(3)) - &BiPoly::one()).scale_real(&q(1, 2));
        assert_eq!(build_q(1, 1, &qi(1)).unwrap(), q111);
    }

    #[test]
    fn normalization_and_conjugation_agree() {
        for mu in [q(-1, 2), qi(0), q(7, 3)] {
            for k in 0..6 {
                for j in 0..6 {
                    let p = build_q(k, j, &mu).unwrap();
                    assert_eq!(value_at_one(&p), Cx::new(qi(1), qi(0)), "k={k} j={j}");
                    assert_eq!(build_q_conjugation(k, j, &mu).unwrap(), p, "k={k} j={j}");
                    assert!(has_angular_order(&p, k, j));
                }
            }
        }
    }

    #[test]
    fn degenerate_prefactor() {
        assert!(matches!(build_q(2, 2, &qi(-2)), Err(Error::DegenerateParameter(_))));
        assert!(build_q(3, 0, &qi(-2)).is_ok());
    }

    #[test]
    fn real_form_examples() {
        let (re, im) = build_real_forms(1, 0, &q(1, 3)).unwrap();
        let x: BiPoly<Rational> = (&BiPoly::z() + &BiPoly::zbar()).scale_real(&q(1, 2));
        assert_eq!(re, x);
        assert!(im.is_real_valued());
        let (re, im) = build_real_forms(2, 1, &qi(0)).unwrap();
        assert_eq!(re, build_q(1, 1, &qi(0)).unwrap());
        assert!(im.is_zero());
        let (_, im) = build_real_forms::<Rational>(2, 0, &qi(0)).unwrap();
        // Im(z²) = 2xy = (z² − z̄²)/(2i)
        let expect =
            BiPoly::from_terms(vec![(2, 0, Cx::new(qi(0), q(-1, 2))), (0, 2, Cx::new(qi(0), q(1, 2)))]).unwrap();
        assert_eq!(im, expect);
        assert!(build_real_forms(2, 2, &qi(0)).is_err());
    }

    #[test]
    fn norm_examples() {
        let mu = q(5, 7);
        assert_eq!(norm_h(0, 0, &mu).unwrap(), qi(1));
        assert_eq!(norm_h(1, 0, &qi(0)).unwrap(), q(1, 2));
        assert_eq!(norm_h(1, 1, &qi(0)).unwrap(), q(1, 3));
        assert!(norm_h(1, 1, &qi(-1)).is_err());
    }

    #[test]
    fn real_norm_examples() {
        assert_eq!(norm_h_real_printed(0, 0, &q(2, 3)).unwrap(), qi(1));
        assert_eq!(norm_h_real_printed(1, 0, &qi(0)).unwrap(), q(2, 3));
        assert_eq!(norm_h_real_printed(2, 1, &qi(0)).unwrap(), q(1, 6));
        // Direct integrals: <1,1> = 1, <x,x> = 1/4, <2r²−1, 2r²−1> = 1/3 at μ = 0.
        assert_eq!(norm_h_real(0, 0, &q(2, 3)).unwrap(), qi(1));
        assert_eq!(norm_h_real(1, 0, &qi(0)).unwrap(), q(1, 4));
        assert_eq!(norm_h_real(2, 1, &qi(0)).unwrap(), q(1, 3));
        assert!(norm_h_real(3, 2, &qi(0)).is_err());
    }

    #[test]
    fn b_mu_examples() {
        assert!((b_mu(&0.0).unwrap().to_f64() - 1.0 / PI).abs() < 1e-16);
        assert_eq!(b_mu(&qi(1)).unwrap().rational_part, qi(2));
        assert_eq!(b_mu(&q(-1, 2)).unwrap().rational_part, q(1, 2));
        assert!(b_mu(&qi(-1)).is_err());
    }
}

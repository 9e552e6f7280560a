//! Univariate Jacobi polynomials `P_n^{(α,β)}(t)`, their weight and the
//! second-order operator `L^{α,β}` of which they are eigenfunctions.
//!
//! Parameters are plain field values. Construction through the explicit
//! sum is purely formal and valid for every α, β; only the operations that
//! depend on orthogonality (weight, norms, quadrature) insist on α, β > −1.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::polyrep::UniPoly;
use crate::quadrature::gauss_jacobi;
use crate::scalar::{binomial, factorial, pochhammer, Coeff, Rational};

/// `(α, β, n)` plus whether α and β lie in the orthogonality range.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobiParams<F> {
    pub alpha: F,
    pub beta: F,
    pub n: u32,
}

impl<F: Coeff> JacobiParams<F> {
    pub fn new(alpha: F, beta: F, n: u32) -> Self {
        JacobiParams { alpha, beta, n }
    }

    pub fn alpha_valid(&self) -> bool {
        self.alpha > -F::one()
    }

    pub fn beta_valid(&self) -> bool {
        self.beta > -F::one()
    }

    /// Both parameters exceed −1, so the family is orthogonal.
    pub fn is_orthogonal(&self) -> bool {
        self.alpha_valid() && self.beta_valid()
    }

    pub fn polynomial(&self) -> UniPoly<F> {
        jacobi_explicit(&self.alpha, &self.beta, self.n)
    }
}

/// Thread-safe memo of rising factorials over the rationals.
#[derive(Debug, Default)]
pub struct PochhammerCache {
    table: Mutex<HashMap<(Rational, u32), Rational>>,
}

impl PochhammerCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// `(a)_k`, filling in every `(a)_i`, `i ≤ k` on the way.
    pub fn get(&self, a: &Rational, k: u32) -> Rational {
        let mut table = self.table.lock().expect("pochhammer cache poisoned");
        if let Some(v) = table.get(&(a.clone(), k)) {
            return v.clone();
        }
        let start = (0..k).rev().find(|i| table.contains_key(&(a.clone(), *i))).unwrap_or(0);
        let mut acc = if start == 0 {
            Rational::from_int(1)
        } else {
            table[&(a.clone(), start)].clone()
        };
        table.insert((a.clone(), 0), Rational::from_int(1));
        for i in start..k {
            acc *= a + Rational::from_int(i as i64);
            table.insert((a.clone(), i + 1), acc.clone());
        }
        acc
    }

    pub fn len(&self) -> usize {
        self.table.lock().expect("pochhammer cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// `P_n^{(α,β)}(t)` from the explicit sum
/// `(1/n!) Σ_k C(n,k) (k+α+1)_{n−k} (n+α+β+1)_k ((t−1)/2)^k`,
/// expanded in powers of `t`.
pub fn jacobi_explicit<F: Coeff>(alpha: &F, beta: &F, n: u32) -> UniPoly<F> {
    let one = F::one();
    let half = one.clone() / F::from_int(2);
    let half_t_minus_one = UniPoly::from_coeffs(vec![-half.clone(), half]);
    let shift = F::from_int(n as i64) + alpha.clone() + beta.clone() + one.clone();
    let mut sum = UniPoly::zero();
    let mut power = UniPoly::one();
    for k in 0..=n {
        let c = binomial::<F>(n, k)
            * pochhammer(&(F::from_int(k as i64) + alpha.clone() + one.clone()), n - k)
            * pochhammer(&shift, k);
        sum = &sum + &power.scale(&c);
        power = &power * &half_t_minus_one;
    }
    sum.scale(&(one / factorial::<F>(n)))
}

/// Leading coefficient `(n+α+β+1)_n / (2^n n!)`.
pub fn leading_coefficient<F: Coeff>(alpha: &F, beta: &F, n: u32) -> F {
    let shift = F::from_int(n as i64) + alpha.clone() + beta.clone() + F::one();
    let two_pow = (0..n).fold(F::one(), |acc, _| acc * F::from_int(2));
    pochhammer(&shift, n) / (two_pow * factorial::<F>(n))
}

/// `P_n^{(α,β)}(t)` by the three-term recurrence, in floating point.
pub fn jacobi_eval_recurrence(alpha: f64, beta: f64, n: u32, t: f64) -> f64 {
    let p1 = (alpha + 1.0) + (alpha + beta + 2.0) * (t - 1.0) / 2.0;
    if n == 0 {
        return 1.0;
    }
    if n == 1 {
        return p1;
    }
    let ab = alpha + beta;
    let (mut prev, mut cur) = (1.0, p1);
    for k in 2..=n {
        let k = k as f64;
        let c = 2.0 * k + ab;
        let denom = 2.0 * k * (k + ab) * (c - 2.0);
        if denom == 0.0 {
            // Degenerate formal parameters: fall back to the explicit sum.
            return jacobi_explicit(&alpha, &beta, n).eval_f64(t);
        }
        let a1 = (c - 1.0) * (c * (c - 2.0) * t + alpha * alpha - beta * beta);
        let a2 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * c;
        let next = (a1 * cur - a2 * prev) / denom;
        prev = cur;
        cur = next;
    }
    cur
}

/// `L^{α,β}[u] = (1−t²)u″ + (β−α−(α+β+2)t)u′`.
pub fn apply_l<F: Coeff>(alpha: &F, beta: &F, u: &UniPoly<F>) -> UniPoly<F> {
    let d1 = u.derivative();
    let d2 = d1.derivative();
    let one_minus_t2 = UniPoly::from_coeffs(vec![F::one(), F::zero(), -F::one()]);
    let drift = UniPoly::from_coeffs(vec![
        beta.clone() - alpha.clone(),
        -(alpha.clone() + beta.clone() + F::from_int(2)),
    ]);
    &(&one_minus_t2 * &d2) + &(&drift * &d1)
}

/// Eigenvalue `−n(n+α+β+1)` of `L^{α,β}` on `P_n^{(α,β)}`.
pub fn eigenvalue<F: Coeff>(alpha: &F, beta: &F, n: u32) -> F {
    let n = F::from_int(n as i64);
    -(n.clone() * (n + alpha.clone() + beta.clone() + F::one()))
}

/// `(1−t)^α (1+t)^β`.
pub fn jacobi_weight(alpha: f64, beta: f64, t: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&t) {
        return Err(Error::Domain(format!("jacobi weight at t = {t} outside [-1, 1]")));
    }
    if (t == 1.0 && alpha < 0.0) || (t == -1.0 && beta < 0.0) {
        return Err(Error::Domain(format!(
            "jacobi weight with alpha = {alpha}, beta = {beta} is singular at t = {t}"
        )));
    }
    Ok((1.0 - t).powf(alpha) * (1.0 + t).powf(beta))
}

/// Checks `P_n^{(α,β)}(t) = (−1)^n P_n^{(β,α)}(−t)` coefficient by coefficient.
pub fn reflection_check<F: Coeff>(alpha: &F, beta: &F, n: u32) -> bool {
    let lhs = jacobi_explicit(alpha, beta, n);
    let mut rhs = jacobi_explicit(beta, alpha, n).reflect();
    if n % 2 == 1 {
        rhs = -rhs;
    }
    lhs == rhs
}

/// `∫ (P_n^{(α,β)})² w_{α,β} dt` by Gauss–Jacobi quadrature.
pub fn norm_by_quadrature(alpha: f64, beta: f64, n: u32) -> Result<f64> {
    if alpha <= -1.0 || beta <= -1.0 {
        return Err(Error::Domain(format!(
            "jacobi norm needs alpha, beta > -1 (got {alpha}, {beta})"
        )));
    }
    let rule = gauss_jacobi(alpha, beta, n as usize + 1)?;
    let p = jacobi_explicit(&alpha, &beta, n);
    Ok(rule.integrate(|t| {
        let v = p.eval_f64(t);
        v * v
    }))
}

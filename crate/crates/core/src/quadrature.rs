//! Gauss–Jacobi rules on `[−1, 1]`, product rules on the unit disk for the
//! weight `(1 − z z̄)^μ`, and the equispaced rule on the unit circle.
//!
//! All sums use a fixed pairwise reduction order so a given rule and
//! integrand always produce the same bits.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;
use statrs::function::gamma::gamma;

use crate::error::{Error, Result};
use crate::polyrep::BiPoly;

/// Nodes and weights of a Gauss–Jacobi rule for `(1−t)^α (1+t)^β`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadRule1D {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub alpha: f64,
    pub beta: f64,
}

impl QuadRule1D {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `Σ w_i f(t_i) ≈ ∫ f(t) (1−t)^α (1+t)^β dt`.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        let terms: Vec<f64> = self.nodes.iter().zip(&self.weights).map(|(&t, &w)| w * f(t)).collect();
        pairwise_sum(&terms)
    }
}

/// `∫_{−1}^{1} (1−t)^α (1+t)^β dt = 2^{α+β+1} Γ(α+1)Γ(β+1)/Γ(α+β+2)`.
pub fn jacobi_mass(alpha: f64, beta: f64) -> f64 {
    let scale = 2f64.powf(alpha + beta + 1.0);
    if beta == 0.0 {
        scale / (alpha + 1.0)
    } else if alpha == 0.0 {
        scale / (beta + 1.0)
    } else {
        scale * gamma(alpha + 1.0) * gamma(beta + 1.0) / gamma(alpha + beta + 2.0)
    }
}

/// Golub–Welsch: nodes are the eigenvalues of the symmetric tridiagonal
/// Jacobi matrix of the recurrence for `w_{α,β}`, weights are the squared
/// first eigenvector components times the total mass.
pub fn gauss_jacobi(alpha: f64, beta: f64, n_points: usize) -> Result<QuadRule1D> {
    if !(alpha > -1.0 && beta > -1.0) {
        return Err(Error::Domain(format!(
            "gauss-jacobi needs alpha, beta > -1 (got {alpha}, {beta})"
        )));
    }
    if n_points == 0 {
        return Err(Error::Domain("gauss-jacobi needs at least one point".into()));
    }
    let ab = alpha + beta;
    let mut jm = DMatrix::<f64>::zeros(n_points, n_points);
    for i in 0..n_points {
        let k = i as f64;
        jm[(i, i)] = if i == 0 {
            (beta - alpha) / (ab + 2.0)
        } else {
            (beta * beta - alpha * alpha) / ((2.0 * k + ab) * (2.0 * k + ab + 2.0))
        };
        if i + 1 < n_points {
            let k = k + 1.0;
            let c = 2.0 * k + ab;
            let b2 = if i == 0 {
                // (1+α+β) cancels; keeps α+β = −1 well defined.
                4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab).powi(2) * (3.0 + ab))
            } else {
                4.0 * k * (k + alpha) * (k + beta) * (k + ab) / (c * c * (c + 1.0) * (c - 1.0))
            };
            jm[(i, i + 1)] = b2.sqrt();
            jm[(i + 1, i)] = b2.sqrt();
        }
    }
    let eig = jm.symmetric_eigen();
    let mass = jacobi_mass(alpha, beta);
    let mut pairs: Vec<(f64, f64)> = (0..n_points)
        .map(|i| {
            let v0 = eig.eigenvectors[(0, i)];
            (eig.eigenvalues[i], mass * v0 * v0)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(QuadRule1D {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
        alpha,
        beta,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DiskNode {
    pub x: f64,
    pub y: f64,
    pub weight: f64,
}

/// Product rule for `∫_D f (1 − x² − y²)^μ dx dy`.
///
/// With `r² = (1+t)/2` the radial factor `∫₀¹ g (1−r²)^μ r dr` becomes
/// `2^{−μ−2} ∫ g (1−t)^μ dt`, a Gauss–Jacobi integral with parameters
/// `(μ, 0)`; the angle uses the `M`-point trapezoid rule.
#[derive(Clone, Debug, PartialEq)]
pub struct DiskRule {
    pub mu: f64,
    pub radial: QuadRule1D,
    pub n_angular: usize,
    pub nodes: Vec<DiskNode>,
}

pub fn disk_rule(mu: f64, n_radial: usize, n_angular: usize) -> Result<DiskRule> {
    if mu.is_nan() || mu <= -1.0 {
        return Err(Error::Domain(format!("disk rule needs mu > -1 (got {mu})")));
    }
    if n_angular == 0 {
        return Err(Error::Domain("disk rule needs at least one angle".into()));
    }
    let radial = gauss_jacobi(mu, 0.0, n_radial)?;
    let radial_scale = 2f64.powf(-mu - 2.0);
    let dtheta = 2.0 * PI / n_angular as f64;
    let mut nodes = Vec::with_capacity(radial.len() * n_angular);
    for (&t, &w) in radial.nodes.iter().zip(&radial.weights) {
        let r = ((1.0 + t) / 2.0).sqrt();
        for m in 0..n_angular {
            let theta = dtheta * m as f64;
            nodes.push(DiskNode {
                x: r * theta.cos(),
                y: r * theta.sin(),
                weight: w * radial_scale * dtheta,
            });
        }
    }
    Ok(DiskRule {
        mu,
        radial,
        n_angular,
        nodes,
    })
}

/// Rule sizes that integrate `Q·conj(Q')` exactly when both factors have
/// total degree at most `degree`: `M = 2·degree + 1` angles and enough radial
/// points for a polynomial of degree `degree` in `t`.
pub fn disk_rule_for_degree(mu: f64, degree: usize) -> Result<DiskRule> {
    disk_rule(mu, degree / 2 + 2, 2 * degree + 1)
}

impl DiskRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `b_μ = (μ+1)/π`, the reciprocal of the weighted disk area.
    pub fn b_mu(&self) -> f64 {
        (self.mu + 1.0) / PI
    }

    /// `∫_D f w_μ dx dy`.
    pub fn integrate(&self, f: impl Fn(Complex64) -> Complex64) -> Complex64 {
        let terms: Vec<Complex64> = self
            .nodes
            .iter()
            .map(|n| f(Complex64::new(n.x, n.y)) * n.weight)
            .collect();
        pairwise_sum_c(&terms)
    }

    /// `b_μ ∫_D f w_μ dx dy`.
    pub fn integrate_normalized(&self, f: impl Fn(Complex64) -> Complex64) -> Complex64 {
        self.integrate(f) * self.b_mu()
    }

    /// `b_μ ∫_D p conj(q) w_μ dx dy`.
    pub fn inner(&self, p: &BiPoly<f64>, q: &BiPoly<f64>) -> Complex64 {
        self.integrate_normalized(|z| p.eval(z) * q.eval(z).conj())
    }
}

/// `M` equispaced angles with weight `2/M`: approximates
/// `(1/π) ∫₀^{2π} f(e^{iθ}) dθ`, exact for Laurent polynomials of degree
/// below `M` in absolute value.
#[derive(Clone, Debug, PartialEq)]
pub struct CircleRule {
    pub thetas: Vec<f64>,
    pub weights: Vec<f64>,
}

pub fn circle_rule(n_angular: usize) -> Result<CircleRule> {
    if n_angular == 0 {
        return Err(Error::Domain("circle rule needs at least one angle".into()));
    }
    let m = n_angular as f64;
    Ok(CircleRule {
        thetas: (0..n_angular).map(|i| 2.0 * PI * i as f64 / m).collect(),
        weights: vec![2.0 / m; n_angular],
    })
}

impl CircleRule {
    pub fn len(&self) -> usize {
        self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thetas.is_empty()
    }

    pub fn points(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.thetas.iter().map(|&t| Complex64::from_polar(1.0, t))
    }

    pub fn integrate(&self, f: impl Fn(Complex64) -> Complex64) -> Complex64 {
        let terms: Vec<Complex64> = self.points().zip(&self.weights).map(|(z, &w)| f(z) * w).collect();
        pairwise_sum_c(&terms)
    }
}

const PAIRWISE_BLOCK: usize = 8;

pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= PAIRWISE_BLOCK {
        return xs.iter().sum();
    }
    let (l, r) = xs.split_at(xs.len() / 2);
    pairwise_sum(l) + pairwise_sum(r)
}

pub fn pairwise_sum_c(xs: &[Complex64]) -> Complex64 {
    if xs.len() <= PAIRWISE_BLOCK {
        return xs.iter().sum();
    }
    let (l, r) = xs.split_at(xs.len() / 2);
    pairwise_sum_c(l) + pairwise_sum_c(r)
}

//! Two Sobolev inner products on the disk, their orthogonal bases and the
//! Gram matrices used to check them.
//!
//! - `(f, g)_1 = (λ/π) ∫_D ∂_z f · conj(∂_z g) + (1/π) ∫_0^{2π} f ḡ dθ`,
//!   orthogonal basis `Q^{−1}_{k,j}`.
//! - `(f, g)_2 = (1/π) ∫_D ∂²_{zz̄}[(1−zz̄)f] · conj(∂²_{zz̄}[(1−zz̄)g])`,
//!   orthogonal basis `U_{0,0} = 1`, `U_{k,j} = (1−zz̄) Q²_{k−1,j−1}`.
//!
//! Both bases are defined only for `k = j = 0` or `k, j ≥ 1`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ops2d::q_minus_one;
use crate::polyrep::BiPoly;
use crate::quadrature::{circle_rule, disk_rule, pairwise_sum_c, CircleRule, DiskRule};
use crate::report::CheckRecord;
use crate::scalar::{qi, Coeff, Rational};
use crate::zernike::{build_q, norm_h};

pub const MAX_GRAM_CAP: u32 = 20;

/// `Q^{−1}_{k,j}`, or `None` outside the defined index set.
pub fn basis1<F: Coeff>(k: u32, j: u32) -> Result<Option<BiPoly<F>>> {
    q_minus_one(k, j)
}

/// `U_{k,j}`, or `None` outside the defined index set.
pub fn basis2<F: Coeff>(k: u32, j: u32) -> Result<Option<BiPoly<F>>> {
    match (k, j) {
        (0, 0) => Ok(Some(BiPoly::one())),
        (0, _) | (_, 0) => Ok(None),
        _ => Ok(Some(BiPoly::one_minus_zzbar().try_mul(&build_q(
            k - 1,
            j - 1,
            &F::from_int(2),
        )?)?)),
    }
}

/// `∂²/∂z∂z̄ [(1−zz̄) f]`.
pub fn second_order_image<F: Coeff>(f: &BiPoly<F>) -> Result<BiPoly<F>> {
    Ok(BiPoly::one_minus_zzbar().try_mul(f)?.d_z().d_zbar())
}

/// Quadrature rules exact for both inner products on polynomials of total
/// degree up to `degree`.
#[derive(Clone, Debug)]
pub struct SobolevRules {
    pub disk: DiskRule,
    pub circle: CircleRule,
}

impl SobolevRules {
    pub fn for_degree(degree: u32) -> Result<Self> {
        let d = degree as usize + 2;
        Ok(SobolevRules {
            disk: disk_rule(0.0, d / 2 + 2, 2 * d + 1)?,
            circle: circle_rule(2 * d + 1)?,
        })
    }
}

pub fn inner_product_1(f: &BiPoly<f64>, g: &BiPoly<f64>, lambda: f64, rules: &SobolevRules) -> Complex64 {
    let (fz, gz) = (f.d_z(), g.d_z());
    let disk = rules.disk.integrate(|z| fz.eval(z) * gz.eval(z).conj());
    let boundary = rules.circle.integrate(|z| f.eval(z) * g.eval(z).conj());
    disk * (lambda / PI) + boundary
}

pub fn inner_product_2(f: &BiPoly<f64>, g: &BiPoly<f64>, rules: &SobolevRules) -> Result<Complex64> {
    let (lf, lg) = (second_order_image(f)?, second_order_image(g)?);
    Ok(rules.disk.integrate(|z| lf.eval(z) * lg.eval(z).conj()) / PI)
}

/// Which Gram matrix to assemble.
#[derive(Clone, Debug, PartialEq)]
pub enum GramKind {
    /// `Q^μ_{k,j}` under `b_μ ∫_D f ḡ (1−zz̄)^μ`, all `k + j ≤ cap`.
    Weight {
        mu: f64,
    },
    Sobolev1 {
        lambda: f64,
    },
    Sobolev2,
}

#[derive(Clone, Debug, Serialize)]
pub struct GramMatrix {
    pub which: String,
    pub cap: u32,
    pub labels: Vec<(u32, u32)>,
    /// Row-major `(re, im)` pairs.
    pub entries: Vec<Vec<(f64, f64)>>,
    /// Closed-form diagonal for each label.
    pub expected_diagonal: Vec<f64>,
}

impl GramMatrix {
    pub fn entry(&self, r: usize, c: usize) -> Complex64 {
        let (re, im) = self.entries[r][c];
        Complex64::new(re, im)
    }

    pub fn max_off_diagonal(&self) -> f64 {
        let n = self.labels.len();
        (0..n)
            .flat_map(|r| (0..n).filter(move |&c| c != r).map(move |c| (r, c)))
            .map(|(r, c)| self.entry(r, c).norm())
            .fold(0.0, f64::max)
    }

    /// Largest `|G_ii − expected_i| / |expected_i|`.
    pub fn max_diagonal_rel_error(&self) -> f64 {
        (0..self.labels.len())
            .map(|i| {
                let e = self.expected_diagonal[i];
                (self.entry(i, i) - e).norm() / e.abs()
            })
            .fold(0.0, f64::max)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("row_k,row_j,col_k,col_j,re,im\n");
        for (r, &(rk, rj)) in self.labels.iter().enumerate() {
            for (c, &(ck, cj)) in self.labels.iter().enumerate() {
                let (re, im) = self.entries[r][c];
                out.push_str(&format!("{rk},{rj},{ck},{cj},{re:e},{im:e}\n"));
            }
        }
        out
    }
}

/// Index pairs with `k + j ≤ cap`, ordered by total degree and then `k`.
pub fn indices_up_to(cap: u32) -> Vec<(u32, u32)> {
    (0..=cap).flat_map(|d| (0..=d).map(move |k| (k, d - k))).collect()
}

fn sobolev_indices(cap: u32) -> Vec<(u32, u32)> {
    indices_up_to(cap)
        .into_iter()
        .filter(|&(k, j)| (k == 0) == (j == 0))
        .collect()
}

/// Gram entries `Σ_n w_n a_n(r) conj(a_n(c))` from per-node values.
fn gram_from_values(values: &[Vec<Complex64>], weights: &[f64]) -> Vec<Vec<Complex64>> {
    let n = values.len();
    let mut g = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for r in 0..n {
        for c in 0..n {
            let terms: Vec<Complex64> = weights
                .iter()
                .enumerate()
                .map(|(i, &w)| values[r][i] * values[c][i].conj() * w)
                .collect();
            g[r][c] = pairwise_sum_c(&terms);
        }
    }
    g
}

fn node_values(polys: &[BiPoly<f64>], points: &[Complex64]) -> Vec<Vec<Complex64>> {
    polys
        .iter()
        .map(|p| points.iter().map(|&z| p.eval(z)).collect())
        .collect()
}

pub fn gram_matrix(kind: &GramKind, cap: u32) -> Result<GramMatrix> {
    if cap > MAX_GRAM_CAP {
        return Err(Error::IndexRange(format!("gram cap {cap} exceeds {MAX_GRAM_CAP}")));
    }
    let (which, labels, raw, expected) = match kind {
        GramKind::Weight { mu } => {
            let labels = indices_up_to(cap);
            let rule = disk_rule(*mu, cap as usize / 2 + 2, 2 * cap as usize + 1)?;
            let polys = labels
                .iter()
                .map(|&(k, j)| build_q(k, j, mu))
                .collect::<Result<Vec<_>>>()?;
            let pts: Vec<Complex64> = rule.nodes.iter().map(|n| Complex64::new(n.x, n.y)).collect();
            let weights: Vec<f64> = rule.nodes.iter().map(|n| n.weight * rule.b_mu()).collect();
            let g = gram_from_values(&node_values(&polys, &pts), &weights);
            let expected = labels
                .iter()
                .map(|&(k, j)| norm_h(k, j, mu))
                .collect::<Result<Vec<_>>>()?;
            ("weight", labels, g, expected)
        }
        GramKind::Sobolev1 { lambda } => {
            if *lambda <= 0.0 {
                return Err(Error::Domain("sobolev lambda must be positive".into()));
            }
            let labels = sobolev_indices(cap);
            let rules = SobolevRules::for_degree(cap)?;
            let polys: Vec<BiPoly<f64>> = labels
                .iter()
                .map(|&(k, j)| Ok(basis1::<Rational>(k, j)?.expect("defined index").to_float()))
                .collect::<Result<Vec<_>>>()?;
            let derivs: Vec<BiPoly<f64>> = polys.iter().map(BiPoly::d_z).collect();
            let disk_pts: Vec<Complex64> = rules.disk.nodes.iter().map(|n| Complex64::new(n.x, n.y)).collect();
            let disk_w: Vec<f64> = rules.disk.nodes.iter().map(|n| n.weight * lambda / PI).collect();
            let circ_pts: Vec<Complex64> = rules.circle.points().collect();
            let gd = gram_from_values(&node_values(&derivs, &disk_pts), &disk_w);
            let gc = gram_from_values(&node_values(&polys, &circ_pts), &rules.circle.weights);
            let g = gd
                .iter()
                .zip(&gc)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect();
            let expected = labels
                .iter()
                .map(|&(k, j)| {
                    if (k, j) == (0, 0) {
                        Ok(2.0)
                    } else {
                        Ok(lambda * norm_h(k - 1, j, &0.0)?)
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            ("sobolev1", labels, g, expected)
        }
        GramKind::Sobolev2 => {
            let labels = sobolev_indices(cap);
            let rules = SobolevRules::for_degree(cap)?;
            let images = labels
                .iter()
                .map(|&(k, j)| {
                    let u = basis2::<Rational>(k, j)?.expect("defined index");
                    Ok(second_order_image(&u)?.to_float())
                })
                .collect::<Result<Vec<_>>>()?;
            let pts: Vec<Complex64> = rules.disk.nodes.iter().map(|n| Complex64::new(n.x, n.y)).collect();
            let w: Vec<f64> = rules.disk.nodes.iter().map(|n| n.weight / PI).collect();
            let g = gram_from_values(&node_values(&images, &pts), &w);
            let expected = labels
                .iter()
                .map(|&(k, j)| {
                    if (k, j) == (0, 0) {
                        1.0
                    } else {
                        4.0 / (k + j + 1) as f64
                    }
                })
                .collect();
            ("sobolev2", labels, g, expected)
        }
    };
    Ok(GramMatrix {
        which: which.to_string(),
        cap,
        labels,
        entries: raw
            .into_iter()
            .map(|row| row.into_iter().map(|c| (c.re, c.im)).collect())
            .collect(),
        expected_diagonal: expected,
    })
}

/// Largest `|Q^{−1}_{k,j}|` over the nodes of a circle rule.
pub fn boundary_max(k: u32, j: u32, circle: &CircleRule) -> Result<f64> {
    let p = basis1::<Rational>(k, j)?
        .ok_or_else(|| Error::IndexRange(format!("Q^-1 undefined at ({k}, {j})")))?
        .to_float();
    Ok(circle.points().map(|z| p.eval(z).norm()).fold(0.0, f64::max))
}

/// Exact lemma identities for `k, j ≤ max_index`:
///
/// - `∂_z Q^{−1}_{k,j} = −Q⁰_{k−1,j}` (k, j ≥ 1)
/// - `∂²_{zz̄}[(1−zz̄)U_{k,j}] = c_{k,j} Q⁰_{k,j}`, `c_{0,0} = −1`, otherwise 2
/// - `(1−zz̄)∂²_{zz̄} Q⁰_{k,j} = d_{k,j} U_{k,j}`, `d_{0,0} = 0`, otherwise
///   `kj(k+1)(j+1)/2`
pub fn verify_sobolev_lemmas(max_index: u32) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for k in 0..=max_index {
        for j in 0..=max_index {
            if (k == 0) != (j == 0) {
                continue;
            }
            let rec = |name: &str| CheckRecord::new(name).param("k", k).param("j", j);
            let zero = qi(0);
            if k >= 1 {
                out.push(check(rec("sobolev.lemma1"), || {
                    let lhs = basis1::<Rational>(k, j)?.expect("defined").d_z();
                    Ok((lhs, -build_q(k - 1, j, &zero)?))
                }));
            }
            out.push(check(rec("sobolev.lemma2_c"), || {
                let u = basis2::<Rational>(k, j)?.expect("defined");
                let c = if k == 0 { qi(-1) } else { qi(2) };
                Ok((second_order_image(&u)?, build_q(k, j, &zero)?.scale_real(&c)))
            }));
            out.push(check(rec("sobolev.lemma2_d"), || {
                let q0 = build_q(k, j, &zero)?;
                let lhs = BiPoly::one_minus_zzbar().try_mul(&q0.d_z().d_zbar())?;
                let d = Rational::new((k as i64 * j as i64 * (k as i64 + 1) * (j as i64 + 1)).into(), 2.into());
                Ok((lhs, basis2::<Rational>(k, j)?.expect("defined").scale_real(&d)))
            }));
        }
    }
    out
}

fn check(rec: CheckRecord, sides: impl FnOnce() -> Result<(BiPoly<Rational>, BiPoly<Rational>)>) -> CheckRecord {
    match sides() {
        Ok((l, r)) => rec.bipoly_eq(&l, &r),
        Err(e) => rec.failed(e.to_string()),
    }
}

//! Expansion of sampled disk data in `Q^μ_{k,j}`, by quadrature projection
//! or by regularized least squares.

use std::io::Read;

use nalgebra::{Complex, DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyrep::BiPoly;
use crate::quadrature::{disk_rule, pairwise_sum_c, DiskRule};
use crate::scalar::Param;
use crate::sobolev::indices_up_to;
use crate::zernike::{build_q_param, norm_h};

/// Slack allowed on `x² + y² ≤ 1`.
pub const DISK_TOLERANCE: f64 = 1e-12;
/// Diagonal shift added to the normal equations.
pub const REGULARIZATION: f64 = 1e-12;
/// Maximum distance between a sample and the matching projection node.
pub const NODE_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sample {
    pub x: f64,
    pub y: f64,
    pub value: Complex64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SampleSet {
    pub samples: Vec<Sample>,
    pub source: Option<String>,
}

#[derive(Deserialize)]
struct CsvRow {
    x: f64,
    y: f64,
    re: f64,
    #[serde(default)]
    im: Option<f64>,
}

impl SampleSet {
    pub fn new(samples: Vec<Sample>) -> Result<Self> {
        let set = SampleSet { samples, source: None };
        set.check_in_disk()?;
        Ok(set)
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    fn check_in_disk(&self) -> Result<()> {
        for (i, s) in self.samples.iter().enumerate() {
            let r2 = s.x * s.x + s.y * s.y;
            if r2.is_nan() || r2 > 1.0 + DISK_TOLERANCE {
                return Err(Error::Domain(format!(
                    "sample {i} at ({}, {}) lies outside the unit disk",
                    s.x, s.y
                )));
            }
        }
        Ok(())
    }

    /// Reads `x,y,re[,im]` CSV with a header row.
    pub fn from_csv_reader<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .flexible(true)
            .from_reader(reader);
        let mut samples = Vec::new();
        for row in rdr.deserialize::<CsvRow>() {
            let row = row.map_err(|e| Error::Parse(format!("sample csv: {e}")))?;
            samples.push(Sample {
                x: row.x,
                y: row.y,
                value: Complex64::new(row.re, row.im.unwrap_or(0.0)),
            });
        }
        SampleSet::new(samples)
    }

    pub fn from_csv_path(path: &std::path::Path) -> Result<Self> {
        let file = std::fs::File::open(path)?;
        let mut set = SampleSet::from_csv_reader(file)?;
        set.source = Some(path.display().to_string());
        Ok(set)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,y,re,im\n");
        for s in &self.samples {
            out.push_str(&format!("{:e},{:e},{:e},{:e}\n", s.x, s.y, s.value.re, s.value.im));
        }
        out
    }

    /// Samples `f` on the nodes of `rule`.
    pub fn on_rule(rule: &DiskRule, f: impl Fn(Complex64) -> Complex64) -> Self {
        SampleSet {
            samples: rule
                .nodes
                .iter()
                .map(|n| Sample {
                    x: n.x,
                    y: n.y,
                    value: f(Complex64::new(n.x, n.y)),
                })
                .collect(),
            source: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FitMethod {
    Projection,
    LeastSquares,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FitCoefficient {
    pub k: u32,
    pub j: u32,
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FitResult {
    pub method: FitMethod,
    pub degree: u32,
    pub mu: String,
    pub coefficients: Vec<FitCoefficient>,
    pub rms_residual: f64,
    /// Ratio of extreme eigenvalues of the (weighted) Gram matrix.
    pub condition: f64,
}

impl FitResult {
    pub fn coefficient(&self, k: u32, j: u32) -> Option<Complex64> {
        self.coefficients
            .iter()
            .find(|c| c.k == k && c.j == j)
            .map(|c| Complex64::new(c.re, c.im))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("fit result serializes")
    }
}

type Basis = (Vec<(u32, u32)>, Vec<BiPoly<f64>>);

fn basis(degree: u32, mu: &Param) -> Result<Basis> {
    if mu.to_f64().is_nan() || mu.to_f64() <= -1.0 {
        return Err(Error::Domain(format!("fitting needs mu > -1 (got {mu})")));
    }
    let labels = indices_up_to(degree);
    let polys = labels
        .iter()
        .map(|&(k, j)| build_q_param(k, j, mu))
        .collect::<Result<Vec<_>>>()?;
    Ok((labels, polys))
}

fn rms_residual(samples: &SampleSet, polys: &[BiPoly<f64>], coeffs: &[Complex64]) -> f64 {
    if samples.is_empty() {
        return 0.0;
    }
    let sq: Vec<f64> = samples
        .samples
        .iter()
        .map(|s| {
            let z = Complex64::new(s.x, s.y);
            let model: Complex64 = polys.iter().zip(coeffs).map(|(p, c)| p.eval(z) * c).sum();
            (s.value - model).norm_sqr()
        })
        .collect();
    (crate::quadrature::pairwise_sum(&sq) / sq.len() as f64).sqrt()
}

fn assemble(
    method: FitMethod,
    degree: u32,
    mu: &Param,
    labels: Vec<(u32, u32)>,
    coeffs: Vec<Complex64>,
    rms_residual: f64,
    condition: f64,
) -> FitResult {
    FitResult {
        method,
        degree,
        mu: mu.to_string(),
        coefficients: labels
            .into_iter()
            .zip(coeffs)
            .map(|((k, j), c)| FitCoefficient {
                k,
                j,
                re: c.re,
                im: c.im,
            })
            .collect(),
        rms_residual,
        condition,
    }
}

/// Default projection grid for a given degree: `degree + 1` radial and
/// `2·degree + 1` angular nodes.
pub fn projection_rule(mu: f64, degree: u32) -> Result<DiskRule> {
    disk_rule(mu, degree as usize + 1, 2 * degree as usize + 1)
}

/// `c_{k,j} = b_μ Σ w f conj(Q^μ_{k,j}) / h^μ_{k,j}` over the nodes of `rule`.
/// The samples must sit on the rule's nodes, in node order.
pub fn fit_projection(samples: &SampleSet, degree: u32, mu: &Param, rule: &DiskRule) -> Result<FitResult> {
    let (labels, polys) = basis(degree, mu)?;
    if samples.len() != rule.len() {
        return Err(Error::Domain(format!(
            "projection needs samples on the {}-node quadrature grid, got {} samples",
            rule.len(),
            samples.len()
        )));
    }
    for (i, (s, n)) in samples.samples.iter().zip(&rule.nodes).enumerate() {
        if (s.x - n.x).abs() > NODE_TOLERANCE || (s.y - n.y).abs() > NODE_TOLERANCE {
            return Err(Error::Domain(format!(
                "sample {i} at ({}, {}) is not quadrature node ({}, {})",
                s.x, s.y, n.x, n.y
            )));
        }
    }
    let mu_f = mu.to_f64();
    let b = rule.b_mu();
    let mut coeffs = Vec::with_capacity(polys.len());
    let mut norms = Vec::with_capacity(polys.len());
    for (&(k, j), p) in labels.iter().zip(&polys) {
        let terms: Vec<Complex64> = samples
            .samples
            .iter()
            .zip(&rule.nodes)
            .map(|(s, n)| s.value * p.eval(Complex64::new(n.x, n.y)).conj() * n.weight)
            .collect();
        let h = norm_h(k, j, &mu_f)?;
        coeffs.push(pairwise_sum_c(&terms) * b / h);
        norms.push(h);
    }
    let hmax = norms.iter().cloned().fold(f64::MIN, f64::max);
    let hmin = norms.iter().cloned().fold(f64::MAX, f64::min);
    let rms = rms_residual(samples, &polys, &coeffs);
    Ok(assemble(
        FitMethod::Projection,
        degree,
        mu,
        labels,
        coeffs,
        rms,
        hmax / hmin,
    ))
}

/// Solves `(AᴴA + εI) c = Aᴴ f` with `A_{s,i} = Q_i(z_s)`.
pub fn fit_least_squares(samples: &SampleSet, degree: u32, mu: &Param) -> Result<FitResult> {
    let (labels, polys) = basis(degree, mu)?;
    let (m, n) = (samples.len(), polys.len());
    if m < n {
        return Err(Error::Underdetermined {
            samples: m,
            unknowns: n,
        });
    }
    let a = DMatrix::<Complex<f64>>::from_fn(m, n, |r, c| {
        let s = &samples.samples[r];
        polys[c].eval(Complex64::new(s.x, s.y))
    });
    let f = DVector::<Complex<f64>>::from_iterator(m, samples.samples.iter().map(|s| s.value));
    let ah = a.adjoint();
    let mut normal = &ah * &a;
    for i in 0..n {
        normal[(i, i)] += Complex::new(REGULARIZATION, 0.0);
    }
    let rhs = &ah * f;
    let eig = normal.clone().symmetric_eigen();
    let lmax = eig.eigenvalues.iter().cloned().fold(f64::MIN, f64::max);
    let lmin = eig.eigenvalues.iter().cloned().fold(f64::MAX, f64::min);
    let sol = match normal.clone().cholesky() {
        Some(ch) => ch.solve(&rhs),
        None => normal.lu().solve(&rhs).ok_or(Error::Underdetermined {
            samples: m,
            unknowns: n,
        })?,
    };
    let coeffs: Vec<Complex64> = sol.iter().cloned().collect();
    let rms = rms_residual(samples, &polys, &coeffs);
    Ok(assemble(
        FitMethod::LeastSquares,
        degree,
        mu,
        labels,
        coeffs,
        rms,
        lmax / lmin,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zernike::build_q;

    #[test]
    fn projection_recovers_single_polynomial() {
        let mu = Param::Float(0.0);
        let rule = projection_rule(0.0, 3).unwrap();
        let q21 = build_q(2, 1, &0.0).unwrap();
        let s = SampleSet::on_rule(&rule, |z| q21.eval(z));
        let fit = fit_projection(&s, 3, &mu, &rule).unwrap();
        for c in &fit.coefficients {
            let expect = if (c.k, c.j) == (2, 1) { 1.0 } else { 0.0 };
            assert!((c.re - expect).abs() < 1e-10 && c.im.abs() < 1e-10, "{c:?}");
        }
        assert!(fit.rms_residual < 1e-10);
    }

    #[test]
    fn zero_and_real_data() {
        let mu = Param::Float(0.5);
        let rule = projection_rule(0.5, 1).unwrap();
        let s = SampleSet::on_rule(&rule, |_| Complex64::new(0.0, 0.0));
        let fit = fit_projection(&s, 1, &mu, &rule).unwrap();
        assert!(fit.coefficients.iter().all(|c| c.re == 0.0 && c.im == 0.0));
        let s = SampleSet::on_rule(&rule, |z| z + z.conj());
        let fit = fit_projection(&s, 1, &mu, &rule).unwrap();
        assert!((fit.coefficient(1, 0).unwrap() - 1.0).norm() < 1e-12);
        assert!((fit.coefficient(0, 1).unwrap() - 1.0).norm() < 1e-12);
        assert!(fit.coefficient(0, 0).unwrap().norm() < 1e-12);
    }

    #[test]
    fn least_squares_matches_projection() {
        let mu = Param::Float(1.0);
        let rule = projection_rule(1.0, 4).unwrap();
        let f = |z: Complex64| z * z * z.conj() + Complex64::new(0.5, -2.0) * z.conj();
        let s = SampleSet::on_rule(&rule, f);
        let a = fit_projection(&s, 4, &mu, &rule).unwrap();
        let b = fit_least_squares(&s, 4, &mu).unwrap();
        for (x, y) in a.coefficients.iter().zip(&b.coefficients) {
            assert!((x.re - y.re).abs() < 1e-9 && (x.im - y.im).abs() < 1e-9, "{x:?} {y:?}");
        }
        assert!(b.condition >= 1.0);
    }

    #[test]
    fn errors() {
        let bad = vec![Sample {
            x: 1.0,
            y: 0.5,
            value: Complex64::new(1.0, 0.0),
        }];
        assert!(matches!(SampleSet::new(bad), Err(Error::Domain(_))));
        let few = SampleSet::new(vec![Sample {
            x: 0.1,
            y: 0.0,
            value: Complex64::new(1.0, 0.0),
        }])
        .unwrap();
        assert!(matches!(
            fit_least_squares(&few, 2, &Param::Float(0.0)),
            Err(Error::Underdetermined {
                samples: 1,
                unknowns: 6
            })
        ));
        let rule = projection_rule(0.0, 2).unwrap();
        assert!(matches!(
            fit_projection(&few, 2, &Param::Float(0.0), &rule),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn csv_round_trip() {
        let text = "x,y,re,im\n0.1,0.2,1.5,-0.5\n0,0,2\n";
        let s = SampleSet::from_csv_reader(text.as_bytes()).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.samples[1].value, Complex64::new(2.0, 0.0));
        let again = SampleSet::from_csv_reader(s.to_csv().as_bytes()).unwrap();
        assert_eq!(again.samples, s.samples);
        assert!(SampleSet::from_csv_reader("x,y,re\n2,0,1\n".as_bytes()).is_err());
    }
}

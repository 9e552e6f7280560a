//! Batch verification: runs every identity of the selected families over a
//! parameter grid and aggregates the records into one report.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ops1d::{ladder_sides_1d, verify_ladder_1d, verify_proof_identities, verify_reflection_pairs, LadderKind1D};
use crate::ops2d::{
    compare_z2_readings, make_op_2d, q_or_zero, verify_angular, verify_connection, verify_duality, verify_eigen,
    verify_l_mu_factorization, verify_ladder_2d, verify_mu_minus_one, verify_structure, verify_three_term,
    LadderKind2D,
};
use crate::report::{CheckRecord, VariantFinding, VerificationReport};
use crate::scalar::{format_rational, parse_rational, q, qi, Rational};
use crate::sobolev::verify_sobolev_lemmas;
use crate::zernike::build_q;

/// Largest index used for the Sobolev lemma checks.
pub const SOBOLEV_LEMMA_MAX: u32 = 6;
/// Monomial degree bound for operator-level identities.
pub const OPERATOR_MAX_DEGREE: u32 = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// Univariate families 1..=6.
    Ladder(u32),
    /// Bivariate families 1..=8.
    Z(u32),
    Relations,
    Sobolev,
    Operators,
    All,
}

impl Family {
    fn covers(self, other: Family) -> bool {
        self == Family::All || self == other
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        let bad = || Error::Parse(format!("unknown family {s:?}"));
        let num = |rest: &str, max: u32| -> Result<u32> {
            let n: u32 = rest.parse().map_err(|_| bad())?;
            if (1..=max).contains(&n) {
                Ok(n)
            } else {
                Err(bad())
            }
        };
        match t.as_str() {
            "all" => Ok(Family::All),
            "relations" => Ok(Family::Relations),
            "sobolev" => Ok(Family::Sobolev),
            "operators" => Ok(Family::Operators),
            _ => {
                if let Some(rest) = t.strip_prefix("ladder") {
                    num(rest, 6).map(Family::Ladder)
                } else if let Some(rest) = t.strip_prefix('z') {
                    num(rest, 8).map(Family::Z)
                } else {
                    Err(bad())
                }
            }
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Ladder(n) => write!(f, "ladder{n}"),
            Family::Z(n) => write!(f, "Z{n}"),
            Family::Relations => f.write_str("relations"),
            Family::Sobolev => f.write_str("sobolev"),
            Family::Operators => f.write_str("operators"),
            Family::All => f.write_str("all"),
        }
    }
}

/// Deliberate corruption of one operator, used as a negative control.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Flips the sign of the multiplication term of `Z5_lower_k`.
    Z5LowerSign,
}

impl FromStr for Fault {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "z5-lower-sign" => Ok(Fault::Z5LowerSign),
            _ => Err(Error::Parse(format!("unknown fault {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyConfig {
    pub families: Vec<Family>,
    pub kmax: u32,
    pub jmax: u32,
    pub nmax: u32,
    pub mus: Vec<Rational>,
    pub alphas: Vec<Rational>,
    pub betas: Vec<Rational>,
    pub fault: Option<Fault>,
}

pub fn default_mus() -> Vec<Rational> {
    vec![q(-1, 2), qi(0), q(1, 2), qi(1), qi(2)]
}

pub fn default_alpha_beta() -> Vec<Rational> {
    vec![q(-1, 2), qi(0), q(1, 2), qi(1), qi(2), q(7, 3)]
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            families: vec![Family::All],
            kmax: 8,
            jmax: 8,
            nmax: 12,
            mus: default_mus(),
            alphas: default_alpha_beta(),
            betas: default_alpha_beta(),
            fault: None,
        }
    }
}

impl VerifyConfig {
    pub fn for_family(family: Family) -> Self {
        VerifyConfig {
            families: vec![family],
            ..Default::default()
        }
    }

    fn selects(&self, family: Family) -> bool {
        self.families.iter().any(|f| f.covers(family))
    }

    fn kj_grid(&self) -> Vec<(u32, u32)> {
        (0..=self.kmax)
            .flat_map(|k| (0..=self.jmax).map(move |j| (k, j)))
            .collect()
    }

    fn abn_grid(&self) -> Vec<(Rational, Rational, u32)> {
        let mut out = Vec::new();
        for a in &self.alphas {
            for b in &self.betas {
                for n in 0..=self.nmax {
                    out.push((a.clone(), b.clone(), n));
                }
            }
        }
        out
    }
}

type Task = Box<dyn Fn() -> Vec<CheckRecord> + Send + Sync>;

fn z5_lower_faulty(mu: &Rational, k: u32, j: u32) -> CheckRecord {
    let kind = LadderKind2D::Z5_lower_k;
    let rec = CheckRecord::new(kind.name())
        .param("mu", format_rational(mu))
        .param("k", k)
        .param("j", j);
    if *mu <= qi(-1) {
        return rec.skipped("mu <= -1");
    }
    let sides = (|| -> Result<_> {
        let mut op = make_op_2d(kind, mu, k, j);
        op.c_0 = -op.c_0;
        let lhs = op.apply(&build_q(k, j, mu)?)?;
        let (dk, dj, dm) = kind.shifts();
        let rhs = q_or_zero(k as i64 + dk, j as i64 + dj, &(mu + qi(dm)))?.scale_real(&kind.factor(mu, k, j));
        Ok((lhs, rhs))
    })();
    match sides {
        Ok((l, r)) => rec.bipoly_eq(&l, &r),
        Err(e) => rec.failed(e.to_string()),
    }
}

fn tasks(cfg: &VerifyConfig) -> Vec<Task> {
    let mut out: Vec<Task> = Vec::new();
    let abn = cfg.abn_grid();
    let kj = cfg.kj_grid();

    for kind in LadderKind1D::ALL {
        if !cfg.selects(Family::Ladder(kind.family())) {
            continue;
        }
        for (a, b, n) in &abn {
            let (a, b, n) = (a.clone(), b.clone(), *n);
            out.push(Box::new(move || vec![verify_ladder_1d(kind, &a, &b, n)]));
        }
    }

    for kind in LadderKind2D::ALL {
        if !cfg.selects(Family::Z(kind.family())) {
            continue;
        }
        let faulty = cfg.fault == Some(Fault::Z5LowerSign) && kind == LadderKind2D::Z5_lower_k;
        for mu in &cfg.mus {
            for &(k, j) in &kj {
                let mu = mu.clone();
                out.push(Box::new(move || {
                    if faulty {
                        vec![z5_lower_faulty(&mu, k, j)]
                    } else {
                        vec![verify_ladder_2d(kind, &mu, k, j)]
                    }
                }));
            }
        }
    }

    if cfg.selects(Family::Relations) {
        for mu in cfg.mus.iter().filter(|m| **m > qi(-1)) {
            for &(k, j) in &kj {
                let mu = mu.clone();
                out.push(Box::new(move || {
                    let mut v = vec![
                        verify_eigen(&mu, k, j),
                        verify_connection(&mu, k, j),
                        verify_angular(&mu, k, j),
                    ];
                    v.extend(verify_three_term(&mu, k, j));
                    v.extend(verify_structure(&mu, k, j));
                    v
                }));
            }
        }
        for &(k, j) in &kj {
            out.push(Box::new(move || vec![verify_mu_minus_one(k, j)]));
        }
    }

    if cfg.selects(Family::Sobolev) {
        out.push(Box::new(|| verify_sobolev_lemmas(SOBOLEV_LEMMA_MAX)));
    }

    if cfg.selects(Family::Operators) {
        for (a, b, n) in &abn {
            let (a, b, n) = (a.clone(), b.clone(), *n);
            out.push(Box::new(move || {
                let mut v = verify_proof_identities(&a, &b, n);
                v.extend(verify_reflection_pairs(&a, &b, n));
                v
            }));
        }
        for mu in &cfg.mus {
            let m = mu.clone();
            out.push(Box::new(move || {
                vec![verify_l_mu_factorization(&m, OPERATOR_MAX_DEGREE)]
            }));
            for &(k, j) in &kj {
                let mu = mu.clone();
                out.push(Box::new(move || {
                    if mu <= qi(-1) {
                        return Vec::new();
                    }
                    LadderKind2D::ALL
                        .iter()
                        .filter(|kind| !kind.needs_positive_mu() || mu > qi(0))
                        .map(|&kind| verify_duality(kind, &mu, k, j))
                        .collect()
                }));
            }
        }
    }
    out
}

/// Runs both readings of the second `Z2` identity over the configured
/// `(k, j)` grid and the positive entries of the μ list (μ = 1 if none).
pub fn z2_finding(cfg: &VerifyConfig) -> VariantFinding {
    let mut mus: Vec<Rational> = cfg.mus.iter().filter(|m| **m > qi(0)).cloned().collect();
    if mus.is_empty() {
        mus.push(qi(1));
    }
    let tuples: Vec<(Rational, u32, u32)> = mus
        .iter()
        .flat_map(|m| cfg.kj_grid().into_iter().map(move |(k, j)| (m.clone(), k, j)))
        .collect();
    let results: Vec<(bool, bool)> = tuples
        .par_iter()
        .map(|(m, k, j)| {
            compare_z2_readings(m, *k, *j)
                .map(|c| (c.corrected, c.printed))
                .unwrap_or((false, false))
        })
        .collect();
    finding(
        "(1 - z zbar) d/dz - mu zbar",
        "(1 - z zbar) d/dzbar - mu zbar",
        &results,
    )
}

/// Runs both sign readings of the `E2` operator over the configured
/// `(α, β, n)` grid, restricted to the identity's parameter range.
pub fn e2_finding(cfg: &VerifyConfig) -> VariantFinding {
    let grid: Vec<_> = cfg
        .abn_grid()
        .into_iter()
        .filter(|(a, b, _)| LadderKind1D::E2.in_range(a, b))
        .collect();
    let results: Vec<(bool, bool)> = grid
        .par_iter()
        .map(|(a, b, n)| {
            let (l, r) = ladder_sides_1d(LadderKind1D::E2, a, b, *n);
            let (pl, pr) = ladder_sides_1d(LadderKind1D::E2Printed, a, b, *n);
            (l == r, pl == pr)
        })
        .collect();
    finding(
        "(1 - t^2) D - [(n+a+1)(1+t) - b(1-t)]",
        "(1 - t^2) D + [(n+a+1)(1+t) - b(1-t)]",
        &results,
    )
}

fn finding(adopted: &str, printed: &str, results: &[(bool, bool)]) -> VariantFinding {
    VariantFinding {
        adopted: adopted.to_string(),
        printed: printed.to_string(),
        adopted_passes: results.iter().filter(|r| r.0).count(),
        printed_passes: results.iter().filter(|r| r.1).count(),
        both_pass: results.iter().filter(|r| r.0 && r.1).count(),
        neither_pass: results.iter().filter(|r| !r.0 && !r.1).count(),
        tested: results.len(),
    }
}

pub fn run_verification(cfg: &VerifyConfig) -> VerificationReport {
    let records: Vec<CheckRecord> = tasks(cfg).par_iter().flat_map_iter(|t| t()).collect();
    let mut report = VerificationReport::from_records(records);
    report.z2_variant = Some(z2_finding(cfg));
    if cfg.selects(Family::Ladder(5)) {
        report.e2_variant = Some(e2_finding(cfg));
    }
    report
}

/// Parses a comma separated list of exact parameters; bare integers and
/// decimals are read exactly as well.
pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            parse_rational(t).or_else(|e| {
                t.parse::<crate::scalar::Param>()
                    .ok()
                    .and_then(|p| p.to_rational())
                    .ok_or(e)
            })
        })
        .collect()
}

//! Bivariate ladder operators for `Q^μ_{k,j}`, the second-order operator
//! `L_μ`, and the fixed-length relations between neighbouring polynomials.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyrep::BiPoly;
use crate::report::CheckRecord;
use crate::scalar::{format_rational, qi, Coeff, Cx, Rational};
use crate::zernike::build_q;

/// `c_zz̄ ∂²/∂z∂z̄ + c_z ∂/∂z + c_z̄ ∂/∂z̄ + c_0`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiffOp2D<F> {
    pub c_zzbar: BiPoly<F>,
    pub c_z: BiPoly<F>,
    pub c_zbar: BiPoly<F>,
    pub c_0: BiPoly<F>,
}

impl<F: Coeff> DiffOp2D<F> {
    pub fn zero() -> Self {
        DiffOp2D::new(BiPoly::zero(), BiPoly::zero(), BiPoly::zero(), BiPoly::zero())
    }

    pub fn new(c_zzbar: BiPoly<F>, c_z: BiPoly<F>, c_zbar: BiPoly<F>, c_0: BiPoly<F>) -> Self {
        DiffOp2D {
            c_zzbar,
            c_z,
            c_zbar,
            c_0,
        }
    }

    pub fn first_order(c_z: BiPoly<F>, c_zbar: BiPoly<F>, c_0: BiPoly<F>) -> Self {
        DiffOp2D::new(BiPoly::zero(), c_z, c_zbar, c_0)
    }

    pub fn d_z() -> Self {
        DiffOp2D::first_order(BiPoly::one(), BiPoly::zero(), BiPoly::zero())
    }

    pub fn d_zbar() -> Self {
        DiffOp2D::first_order(BiPoly::zero(), BiPoly::one(), BiPoly::zero())
    }

    /// `L_μ = 2(1−zz̄)∂²/∂z∂z̄ − (μ+1)(z∂/∂z + z̄∂/∂z̄)`.
    pub fn l_mu(mu: &F) -> Self {
        let m1 = -(mu.clone() + F::one());
        DiffOp2D::new(
            BiPoly::one_minus_zzbar().scale_real(&F::from_int(2)),
            BiPoly::z().scale_real(&m1),
            BiPoly::zbar().scale_real(&m1),
            BiPoly::zero(),
        )
    }

    pub fn is_first_order(&self) -> bool {
        self.c_zzbar.is_zero()
    }

    pub fn apply(&self, p: &BiPoly<F>) -> Result<BiPoly<F>> {
        let pz = p.d_z();
        let pzb = p.d_zbar();
        let pzzb = pz.d_zbar();
        let mut out = self.c_zzbar.try_mul(&pzzb)?;
        out = &out + &self.c_z.try_mul(&pz)?;
        out = &out + &self.c_zbar.try_mul(&pzb)?;
        Ok(&out + &self.c_0.try_mul(p)?)
    }

    pub fn add(&self, o: &Self) -> Self {
        DiffOp2D::new(
            &self.c_zzbar + &o.c_zzbar,
            &self.c_z + &o.c_z,
            &self.c_zbar + &o.c_zbar,
            &self.c_0 + &o.c_0,
        )
    }

    /// `outer ∘ inner` for two first-order operators. Fails if the result
    /// would carry a `∂²/∂z²` or `∂²/∂z̄²` term.
    pub fn compose_first_order(outer: &Self, inner: &Self) -> Result<Self> {
        if !outer.is_first_order() || !inner.is_first_order() {
            return Err(Error::OrderOverflow { order: 3 });
        }
        let (a, b, c) = (&outer.c_z, &outer.c_zbar, &outer.c_0);
        let (d, e, f) = (&inner.c_z, &inner.c_zbar, &inner.c_0);
        if !a.try_mul(d)?.is_zero() || !b.try_mul(e)?.is_zero() {
            return Err(Error::Arity {
                kind: "composition".into(),
                detail: "produces an unmixed second derivative".into(),
            });
        }
        let c_zzbar = &a.try_mul(e)? + &b.try_mul(d)?;
        let c_z = &(&a.try_mul(&d.d_z())? + &b.try_mul(&d.d_zbar())?) + &(&a.try_mul(f)? + &c.try_mul(d)?);
        let c_zbar = &(&a.try_mul(&e.d_z())? + &b.try_mul(&e.d_zbar())?) + &(&b.try_mul(f)? + &c.try_mul(e)?);
        let c_0 = &(&a.try_mul(&f.d_z())? + &b.try_mul(&f.d_zbar())?) + &c.try_mul(f)?;
        Ok(DiffOp2D::new(c_zzbar, c_z, c_zbar, c_0))
    }
}

impl<F: Coeff> fmt::Display for DiffOp2D<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})∂z∂z̄ + ({})∂z + ({})∂z̄ + ({})",
            self.c_zzbar, self.c_z, self.c_zbar, self.c_0
        )
    }
}

/// `2(1−zz̄)∂²p/∂z∂z̄ − (μ+1)(z ∂p/∂z + z̄ ∂p/∂z̄)`.
pub fn apply_l_mu<F: Coeff>(mu: &F, p: &BiPoly<F>) -> Result<BiPoly<F>> {
    DiffOp2D::l_mu(mu).apply(p)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[allow(non_camel_case_types)]
pub enum LadderKind2D {
    Z1_lower_k,
    Z1_raise_k,
    Z2_lower_j,
    Z2_raise_j,
    Z3_raise_mu,
    Z3_lower_mu,
    Z4_raise_mu,
    Z4_lower_mu,
    Z5_lower_k,
    Z5_raise_k,
    Z6_lower_j,
    Z6_raise_j,
    Z7_lower_kj,
    Z7_raise_kj,
    Z8_lower_kj,
    Z8_raise_kj,
    /// `Z2_raise_j` with `∂/∂z̄` in place of `∂/∂z`, as printed in the
    /// source. Only used to show which reading holds.
    Z2_raise_j_printed,
}

impl LadderKind2D {
    pub const ALL: [LadderKind2D; 16] = [
        LadderKind2D::Z1_lower_k,
        LadderKind2D::Z1_raise_k,
        LadderKind2D::Z2_lower_j,
        LadderKind2D::Z2_raise_j,
        LadderKind2D::Z3_raise_mu,
        LadderKind2D::Z3_lower_mu,
        LadderKind2D::Z4_raise_mu,
        LadderKind2D::Z4_lower_mu,
        LadderKind2D::Z5_lower_k,
        LadderKind2D::Z5_raise_k,
        LadderKind2D::Z6_lower_j,
        LadderKind2D::Z6_raise_j,
        LadderKind2D::Z7_lower_kj,
        LadderKind2D::Z7_raise_kj,
        LadderKind2D::Z8_lower_kj,
        LadderKind2D::Z8_raise_kj,
    ];

    pub fn name(self) -> &'static str {
        use LadderKind2D::*;
        match self {
            Z1_lower_k => "Z1_lower_k",
            Z1_raise_k => "Z1_raise_k",
            Z2_lower_j => "Z2_lower_j",
            Z2_raise_j => "Z2_raise_j",
            Z3_raise_mu => "Z3_raise_mu",
            Z3_lower_mu => "Z3_lower_mu",
            Z4_raise_mu => "Z4_raise_mu",
            Z4_lower_mu => "Z4_lower_mu",
            Z5_lower_k => "Z5_lower_k",
            Z5_raise_k => "Z5_raise_k",
            Z6_lower_j => "Z6_lower_j",
            Z6_raise_j => "Z6_raise_j",
            Z7_lower_kj => "Z7_lower_kj",
            Z7_raise_kj => "Z7_raise_kj",
            Z8_lower_kj => "Z8_lower_kj",
            Z8_raise_kj => "Z8_raise_kj",
            Z2_raise_j_printed => "Z2_raise_j_printed",
        }
    }

    /// Family number 1–8.
    pub fn family(self) -> u32 {
        use LadderKind2D::*;
        match self {
            Z1_lower_k | Z1_raise_k => 1,
            Z2_lower_j | Z2_raise_j | Z2_raise_j_printed => 2,
            Z3_raise_mu | Z3_lower_mu => 3,
            Z4_raise_mu | Z4_lower_mu => 4,
            Z5_lower_k | Z5_raise_k => 5,
            Z6_lower_j | Z6_raise_j => 6,
            Z7_lower_kj | Z7_raise_kj => 7,
            Z8_lower_kj | Z8_raise_kj => 8,
        }
    }

    /// The identity lowers μ by one and so is stated for μ > 0.
    pub fn needs_positive_mu(self) -> bool {
        self.shifts().2 < 0
    }

    /// `(k shift, j shift, μ shift)` of the image.
    pub fn shifts(self) -> (i64, i64, i64) {
        use LadderKind2D::*;
        match self {
            Z1_lower_k => (-1, 0, 1),
            Z1_raise_k => (1, 0, -1),
            Z2_lower_j => (0, -1, 1),
            Z2_raise_j | Z2_raise_j_printed => (0, 1, -1),
            Z3_raise_mu | Z4_raise_mu => (0, 0, 1),
            Z3_lower_mu | Z4_lower_mu => (0, 0, -1),
            Z5_lower_k => (-1, 0, 0),
            Z5_raise_k => (1, 0, 0),
            Z6_lower_j => (0, -1, 0),
            Z6_raise_j => (0, 1, 0),
            Z7_lower_kj | Z8_lower_kj => (-1, -1, 1),
            Z7_raise_kj | Z8_raise_kj => (1, 1, -1),
        }
    }

    pub fn factor<F: Coeff>(self, mu: &F, k: u32, j: u32) -> F {
        use LadderKind2D::*;
        let one = F::one();
        let m1 = mu.clone() + one.clone();
        let kk = F::from_int(k as i64);
        let jj = F::from_int(j as i64);
        match self {
            Z1_lower_k => kk * (jj + m1.clone()) / m1,
            Z2_lower_j => jj * (kk + m1.clone()) / m1,
            Z3_raise_mu | Z4_raise_mu => (kk + m1.clone()) * (jj + m1.clone()) / m1,
            Z1_raise_k | Z2_raise_j | Z2_raise_j_printed | Z3_lower_mu | Z4_lower_mu | Z7_raise_kj | Z8_raise_kj => {
                -mu.clone()
            }
            Z5_lower_k => kk,
            Z5_raise_k => -(kk + m1),
            Z6_lower_j => jj,
            Z6_raise_j => -(jj + m1),
            Z7_lower_kj | Z8_lower_kj => kk * jj / m1,
        }
    }

    /// Image of the operator under conjugation with `k ↔ j`.
    pub fn partner(self) -> LadderKind2D {
        use LadderKind2D::*;
        match self {
            Z1_lower_k => Z2_lower_j,
            Z2_lower_j => Z1_lower_k,
            Z1_raise_k => Z2_raise_j,
            Z2_raise_j | Z2_raise_j_printed => Z1_raise_k,
            Z3_raise_mu => Z4_raise_mu,
            Z4_raise_mu => Z3_raise_mu,
            Z3_lower_mu => Z4_lower_mu,
            Z4_lower_mu => Z3_lower_mu,
            Z5_lower_k => Z6_lower_j,
            Z6_lower_j => Z5_lower_k,
            Z5_raise_k => Z6_raise_j,
            Z6_raise_j => Z5_raise_k,
            Z7_lower_kj => Z8_lower_kj,
            Z8_lower_kj => Z7_lower_kj,
            Z7_raise_kj => Z8_raise_kj,
            Z8_raise_kj => Z7_raise_kj,
        }
    }
}

impl fmt::Display for LadderKind2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for LadderKind2D {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LadderKind2D::ALL
            .iter()
            .chain(std::iter::once(&LadderKind2D::Z2_raise_j_printed))
            .copied()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown bivariate ladder operator {s:?}")))
    }
}

/// Builds the operator for `Q^μ_{k,j}`; `k` and `j` are the indices of the
/// polynomial acted on.
pub fn make_op_2d<F: Coeff>(kind: LadderKind2D, mu: &F, k: u32, j: u32) -> DiffOp2D<F> {
    use LadderKind2D::*;
    let one = F::one();
    let kk = F::from_int(k as i64);
    let jj = F::from_int(j as i64);
    let w = BiPoly::<F>::one_minus_zzbar();
    let z = BiPoly::<F>::z();
    let zb = BiPoly::<F>::zbar();
    let zzb = BiPoly::<F>::zzbar();
    let c = |v: F| BiPoly::real_constant(v);
    let zero = BiPoly::zero;
    match kind {
        Z1_lower_k => DiffOp2D::d_z(),
        Z2_lower_j => DiffOp2D::d_zbar(),
        Z1_raise_k => DiffOp2D::first_order(zero(), w, z.scale_real(&-mu.clone())),
        Z2_raise_j => DiffOp2D::first_order(w, zero(), zb.scale_real(&-mu.clone())),
        Z2_raise_j_printed => DiffOp2D::first_order(zero(), w, zb.scale_real(&-mu.clone())),
        Z3_raise_mu => DiffOp2D::first_order(z, zero(), c(jj + mu.clone() + one)),
        Z4_raise_mu => DiffOp2D::first_order(zero(), zb, c(kk + mu.clone() + one)),
        Z3_lower_mu => DiffOp2D::first_order(&w * &z, zero(), &w.scale_real(&-kk) - &c(mu.clone())),
        Z4_lower_mu => DiffOp2D::first_order(zero(), &w * &zb, &w.scale_real(&-jj) - &c(mu.clone())),
        Z5_lower_k => DiffOp2D::first_order(w, zero(), zb.scale_real(&kk)),
        Z5_raise_k => DiffOp2D::first_order(zero(), w, z.scale_real(&-(kk + mu.clone() + one))),
        Z6_lower_j => DiffOp2D::first_order(zero(), w, z.scale_real(&jj)),
        Z6_raise_j => DiffOp2D::first_order(w, zero(), zb.scale_real(&-(jj + mu.clone() + one))),
        Z7_lower_kj => DiffOp2D::first_order(z, zero(), c(-kk)),
        Z8_lower_kj => DiffOp2D::first_order(zero(), zb, c(-jj)),
        Z7_raise_kj => DiffOp2D::first_order(&w * &z, zero(), &w.scale_real(&(jj + one)) - &zzb.scale_real(mu)),
        Z8_raise_kj => DiffOp2D::first_order(zero(), &w * &zb, &w.scale_real(&(kk + one)) - &zzb.scale_real(mu)),
    }
}

/// `Q^μ_{k,j}` with `Q ≡ 0` whenever an index is negative.
pub fn q_or_zero<F: Coeff>(k: i64, j: i64, mu: &F) -> Result<BiPoly<F>> {
    if k < 0 || j < 0 {
        Ok(BiPoly::zero())
    } else {
        build_q(k as u32, j as u32, mu)
    }
}

/// Both sides of a bivariate ladder identity, regardless of parameter range.
pub fn ladder_sides_2d<F: Coeff>(kind: LadderKind2D, mu: &F, k: u32, j: u32) -> Result<(BiPoly<F>, BiPoly<F>)> {
    let lhs = make_op_2d(kind, mu, k, j).apply(&build_q(k, j, mu)?)?;
    let (dk, dj, dm) = kind.shifts();
    let target_mu = mu.clone() + F::from_int(dm);
    let rhs = q_or_zero(k as i64 + dk, j as i64 + dj, &target_mu)?.scale_real(&kind.factor(mu, k, j));
    Ok((lhs, rhs))
}

fn rec2(identity: &str, mu: &Rational, k: u32, j: u32) -> CheckRecord {
    CheckRecord::new(identity)
        .param("mu", format_rational(mu))
        .param("k", k)
        .param("j", j)
}

fn finish(rec: CheckRecord, sides: Result<(BiPoly<Rational>, BiPoly<Rational>)>) -> CheckRecord {
    match sides {
        Ok((l, r)) => rec.bipoly_eq(&l, &r),
        Err(e) => rec.failed(e.to_string()),
    }
}

/// Exact check of a ladder identity. Tuples with μ ≤ −1, or μ ≤ 0 for
/// identities that lower μ, are reported as skipped.
pub fn verify_ladder_2d(kind: LadderKind2D, mu: &Rational, k: u32, j: u32) -> CheckRecord {
    let rec = rec2(kind.name(), mu, k, j);
    if *mu <= qi(-1) {
        return rec.skipped("mu <= -1");
    }
    if kind.needs_positive_mu() && *mu <= qi(0) {
        return rec.skipped("identity lowers mu and needs mu > 0");
    }
    finish(rec, ladder_sides_2d(kind, mu, k, j))
}

/// `swap_conj` carries the identity for `kind` at `(k, j)` to the identity
/// for its partner at `(j, k)`, side by side.
pub fn verify_duality(kind: LadderKind2D, mu: &Rational, k: u32, j: u32) -> CheckRecord {
    let rec = rec2(&format!("duality.{}", kind.name()), mu, k, j);
    let sides = (|| -> Result<(BiPoly<Rational>, BiPoly<Rational>)> {
        let (l, r) = ladder_sides_2d(kind, mu, k, j)?;
        let (pl, pr) = ladder_sides_2d(kind.partner(), mu, j, k)?;
        Ok((l.swap_conj() - pl, r.swap_conj() - pr))
    })();
    match sides {
        Ok((dl, _)) if !dl.is_zero() => rec.bipoly_eq(&dl, &BiPoly::zero()).param("side", "lhs"),
        Ok((_, dr)) => rec.bipoly_eq(&dr, &BiPoly::zero()).param("side", "rhs"),
        Err(e) => rec.failed(e.to_string()),
    }
}

/// Outcome of running both readings of the raising operator in the second
/// `Z2` identity at one tuple.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Z2Comparison {
    pub corrected: bool,
    pub printed: bool,
}

pub fn compare_z2_readings(mu: &Rational, k: u32, j: u32) -> Result<Z2Comparison> {
    let check = |kind| -> Result<bool> {
        let (l, r) = ladder_sides_2d(kind, mu, k, j)?;
        Ok(l == r)
    };
    Ok(Z2Comparison {
        corrected: check(LadderKind2D::Z2_raise_j)?,
        printed: check(LadderKind2D::Z2_raise_j_printed)?,
    })
}

/// `L_μ Q^μ_{k,j} = (−2kj − (μ+1)(k+j)) Q^μ_{k,j}`.
pub fn eigenvalue_l_mu<F: Coeff>(mu: &F, k: u32, j: u32) -> F {
    let kk = F::from_int(k as i64);
    let jj = F::from_int(j as i64);
    -(F::from_int(2) * kk.clone() * jj.clone()) - (mu.clone() + F::one()) * (kk + jj)
}

pub fn verify_eigen(mu: &Rational, k: u32, j: u32) -> CheckRecord {
    let rec = rec2("eigen", mu, k, j);
    finish(
        rec,
        (|| {
            let q = build_q(k, j, mu)?;
            Ok((apply_l_mu(mu, &q)?, q.scale_real(&eigenvalue_l_mu(mu, k, j))))
        })(),
    )
}

/// `Q^{−1}_{0,0} = 1`, `Q^{−1}_{k,j} = (1−zz̄) Q^1_{k−1,j−1}` for `k, j ≥ 1`;
/// `None` for the other index pairs.
pub fn q_minus_one<F: Coeff>(k: u32, j: u32) -> Result<Option<BiPoly<F>>> {
    match (k, j) {
        (0, 0) => Ok(Some(BiPoly::one())),
        (0, _) | (_, 0) => Ok(None),
        _ => Ok(Some(BiPoly::one_minus_zzbar().try_mul(&build_q(
            k - 1,
            j - 1,
            &F::one(),
        )?)?)),
    }
}

/// `L_{−1} Q^{−1}_{k,j} = −2kj Q^{−1}_{k,j}`.
pub fn verify_mu_minus_one(k: u32, j: u32) -> CheckRecord {
    let rec = CheckRecord::new("mu_minus_one").param("k", k).param("j", j);
    match q_minus_one::<Rational>(k, j) {
        Ok(None) => rec.skipped("Q^{-1} is defined only for k = j = 0 or k, j >= 1"),
        Ok(Some(q)) => finish(
            rec,
            (|| Ok((apply_l_mu(&qi(-1), &q)?, q.scale_real(&qi(-2 * k as i64 * j as i64)))))(),
        ),
        Err(e) => rec.failed(e.to_string()),
    }
}

/// `(k+j+μ+1) z Q_{k,j} = (k+μ+1) Q_{k+1,j} + j Q_{k,j−1}` and the twin
/// `(k+j+μ+1) z̄ Q_{k,j} = (j+μ+1) Q_{k,j+1} + k Q_{k−1,j}`.
pub fn verify_three_term(mu: &Rational, k: u32, j: u32) -> Vec<CheckRecord> {
    let s = qi((k + j) as i64) + mu + qi(1);
    let (ki, ji) = (k as i64, j as i64);
    let z_side = || -> Result<_> {
        let q = build_q(k, j, mu)?;
        let lhs = BiPoly::z().try_mul(&q)?.scale_real(&s);
        let rhs = &q_or_zero(ki + 1, ji, mu)?.scale_real(&(qi(ki) + mu + qi(1)))
            + &q_or_zero(ki, ji - 1, mu)?.scale_real(&qi(ji));
        Ok((lhs, rhs))
    };
    let zbar_side = || -> Result<_> {
        let q = build_q(k, j, mu)?;
        let lhs = BiPoly::zbar().try_mul(&q)?.scale_real(&s);
        let rhs = &q_or_zero(ki, ji + 1, mu)?.scale_real(&(qi(ji) + mu + qi(1)))
            + &q_or_zero(ki - 1, ji, mu)?.scale_real(&qi(ki));
        Ok((lhs, rhs))
    };
    vec![
        finish(rec2("three_term.z", mu, k, j), z_side()),
        finish(rec2("three_term.zbar", mu, k, j), zbar_side()),
    ]
}

/// `(k+j+μ+1) Q^μ_{k,j} = (k+μ+1)(j+μ+1)/(μ+1) Q^{μ+1}_{k,j} − kj/(μ+1) Q^{μ+1}_{k−1,j−1}`.
pub fn verify_connection(mu: &Rational, k: u32, j: u32) -> CheckRecord {
    let m1 = mu + qi(1);
    let (kq, jq) = (qi(k as i64), qi(j as i64));
    finish(
        rec2("connection", mu, k, j),
        (|| {
            let lhs = build_q(k, j, mu)?.scale_real(&(kq.clone() + jq.clone() + m1.clone()));
            let a = (kq.clone() + m1.clone()) * (jq.clone() + m1.clone()) / m1.clone();
            let b = kq * jq / m1.clone();
            let rhs = &build_q(k, j, &m1)?.scale_real(&a) - &q_or_zero(k as i64 - 1, j as i64 - 1, &m1)?.scale_real(&b);
            Ok((lhs, rhs))
        })(),
    )
}

/// Structure relations
///
/// - `(k+j+μ+1)(1−zz̄) ∂_z Q_{k,j} = k(j+μ+1)(Q_{k−1,j} − Q_{k,j+1})`
/// - `(k+j+μ+1)(1−zz̄) ∂_z̄ Q_{k,j} = j(k+μ+1)(Q_{k,j−1} − Q_{k+1,j})`
///
/// and the corollary
/// `(k+j+μ+2)(1−zz̄) Q^{μ+1}_{k,j} = (μ+1)(Q^μ_{k,j} − Q^μ_{k+1,j+1})`.
pub fn verify_structure(mu: &Rational, k: u32, j: u32) -> Vec<CheckRecord> {
    let one = qi(1);
    let m1 = mu + &one;
    let (ki, ji) = (k as i64, j as i64);
    let s = qi(ki + ji) + &m1;
    let w = BiPoly::<Rational>::one_minus_zzbar();
    let dz = || -> Result<_> {
        let q = build_q(k, j, mu)?;
        let lhs = w.try_mul(&q.d_z())?.scale_real(&s);
        let rhs = (&q_or_zero(ki - 1, ji, mu)? - &q_or_zero(ki, ji + 1, mu)?).scale_real(&(qi(ki) * (qi(ji) + &m1)));
        Ok((lhs, rhs))
    };
    let dzbar = || -> Result<_> {
        let q = build_q(k, j, mu)?;
        let lhs = w.try_mul(&q.d_zbar())?.scale_real(&s);
        let rhs = (&q_or_zero(ki, ji - 1, mu)? - &q_or_zero(ki + 1, ji, mu)?).scale_real(&(qi(ji) * (qi(ki) + &m1)));
        Ok((lhs, rhs))
    };
    let corollary = || -> Result<_> {
        let lhs = w.try_mul(&build_q(k, j, &m1)?)?.scale_real(&(s.clone() + &one));
        let rhs = (&build_q(k, j, mu)? - &build_q(k + 1, j + 1, mu)?).scale_real(&m1);
        Ok((lhs, rhs))
    };
    vec![
        finish(rec2("structure.z", mu, k, j), dz()),
        finish(rec2("structure.zbar", mu, k, j), dzbar()),
        finish(rec2("structure.corollary", mu, k, j), corollary()),
    ]
}

/// `(z∂_z − z̄∂_z̄) Q_{k,j} = (k − j) Q_{k,j}`.
pub fn verify_angular(mu: &Rational, k: u32, j: u32) -> CheckRecord {
    finish(
        rec2("angular", mu, k, j),
        (|| {
            let q = build_q(k, j, mu)?;
            let op = DiffOp2D::first_order(BiPoly::z(), -BiPoly::zbar(), BiPoly::zero());
            Ok((op.apply(&q)?, q.scale_real(&qi(k as i64 - j as i64))))
        })(),
    )
}

/// `L_μ = [(1−zz̄)∂_z̄ − (μ+1)z]∂_z + [(1−zz̄)∂_z − (μ+1)z̄]∂_z̄`, checked both
/// as a coefficient identity and on every `z^a z̄^b` with `a + b ≤ max_degree`.
pub fn verify_l_mu_factorization(mu: &Rational, max_degree: u32) -> CheckRecord {
    let rec = CheckRecord::new("l_mu_factorization")
        .param("mu", format_rational(mu))
        .param("max_degree", max_degree);
    let m1 = mu + qi(1);
    let result = (|| -> Result<Option<(BiPoly<Rational>, BiPoly<Rational>)>> {
        let w = BiPoly::one_minus_zzbar();
        let left = DiffOp2D::first_order(BiPoly::zero(), w.clone(), BiPoly::z().scale_real(&-m1.clone()));
        let right = DiffOp2D::first_order(w, BiPoly::zero(), BiPoly::zbar().scale_real(&-m1.clone()));
        let factored = DiffOp2D::compose_first_order(&left, &DiffOp2D::d_z())?
            .add(&DiffOp2D::compose_first_order(&right, &DiffOp2D::d_zbar())?);
        let l = DiffOp2D::l_mu(mu);
        for d in 0..=max_degree {
            for a in 0..=d {
                let p = BiPoly::monomial(a, d - a, Cx::new(qi(1), qi(0)))?;
                let (x, y) = (l.apply(&p)?, factored.apply(&p)?);
                if x != y {
                    return Ok(Some((x, y)));
                }
            }
        }
        if factored != l {
            return Ok(Some((l.c_0.clone(), factored.c_0.clone())));
        }
        Ok(None)
    })();
    match result {
        Ok(None) => rec.with_witness(None),
        Ok(Some((x, y))) => rec.bipoly_eq(&x, &y),
        Err(e) => rec.failed(e.to_string()),
    }
}

/// Applies `Z5_lower_k` and then `Z5_raise_k` (built for index `k−1`) to
/// `Q^μ_{k,j}` and returns the constant `c` with result `= c·Q^μ_{k,j}`,
/// or `None` when the result is not a multiple of `Q^μ_{k,j}`.
pub fn raise_lower_constant(mu: &Rational, k: u32, j: u32) -> Result<Option<Rational>> {
    let q = build_q(k, j, mu)?;
    let lowered = make_op_2d(LadderKind2D::Z5_lower_k, mu, k, j).apply(&q)?;
    let back = make_op_2d(LadderKind2D::Z5_raise_k, mu, k.saturating_sub(1), j).apply(&lowered)?;
    let (m, c) = match q.terms().next() {
        Some((m, c)) => (m, c.clone()),
        None => return Ok(None),
    };
    let ratio = back.coeff(m.a, m.b).re / c.re;
    Ok((q.scale_real(&ratio) == back).then_some(ratio))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn construction_examples() {
        let op = make_op_2d::<Rational>(LadderKind2D::Z1_lower_k, &qi(0), 3, 2);
        assert_eq!(op, DiffOp2D::d_z());
        let op = make_op_2d(LadderKind2D::Z5_lower_k, &q(1, 2), 2, 1);
        assert_eq!(op.c_z, BiPoly::one_minus_zzbar());
        assert_eq!(op.c_0, BiPoly::zbar().scale_real(&qi(2)));
        let op = make_op_2d(LadderKind2D::Z7_lower_kj, &qi(1), 0, 3);
        assert_eq!(op.c_z, BiPoly::z());
        assert!(op.c_0.is_zero());
    }

    #[test]
    fn ladder_examples() {
        let (l, r) = ladder_sides_2d(LadderKind2D::Z1_lower_k, &qi(0), 1, 0).unwrap();
        assert_eq!(l, BiPoly::one());
        assert_eq!(l, r);
        let (l, r) = ladder_sides_2d(LadderKind2D::Z5_raise_k, &qi(0), 0, 0).unwrap();
        assert_eq!(l, -BiPoly::z());
        assert_eq!(l, r);
        let (l, r) = ladder_sides_2d(LadderKind2D::Z3_raise_mu, &qi(0), 1, 1).unwrap();
        assert_eq!(l, &BiPoly::zzbar().scale_real(&qi(6)) - &BiPoly::real_constant(qi(2)));
        assert_eq!(l, r);
    }

    #[test]
    fn z2_readings() {
        let c = compare_z2_readings(&qi(1), 0, 0).unwrap();
        assert!(c.corrected && c.printed);
        let c = compare_z2_readings(&qi(1), 2, 1).unwrap();
        assert!(c.corrected && !c.printed);
    }

    #[test]
    fn l_mu_examples() {
        assert!(apply_l_mu(&q(1, 3), &BiPoly::one()).unwrap().is_zero());
        let q11 = build_q(1, 1, &qi(0)).unwrap();
        assert_eq!(apply_l_mu(&qi(0), &q11).unwrap(), q11.scale_real(&qi(-4)));
        let qm = q_minus_one::<Rational>(1, 1).unwrap().unwrap();
        assert_eq!(apply_l_mu(&qi(-1), &qm).unwrap(), qm.scale_real(&qi(-2)));
        assert!(verify_mu_minus_one(2, 3).is_pass());
        assert!(verify_mu_minus_one(0, 2).is_skipped());
    }

    #[test]
    fn relation_examples() {
        for r in verify_three_term(&qi(0), 1, 1) {
            assert!(r.is_pass(), "{r:?}");
        }
        assert!(verify_connection(&qi(0), 1, 1).is_pass());
        for r in verify_structure(&qi(0), 1, 0) {
            assert!(r.is_pass(), "{r:?}");
        }
        assert!(verify_angular(&q(1, 2), 3, 1).is_pass());
        assert!(verify_l_mu_factorization(&q(-1, 2), 6).is_pass());
    }

    #[test]
    fn raise_after_lower_is_proportional() {
        // Z5_lower then Z5_raise: k·(−(k+μ)) = −k(k+μ).
        let c = raise_lower_constant(&q(1, 2), 3, 1).unwrap().unwrap();
        assert_eq!(c, -(qi(3) * (qi(3) + q(1, 2))));
    }
}

//! The twelve univariate ladder operators, as second-order differential
//! operators with polynomial coefficients.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jacobi::jacobi_explicit;
use crate::polyrep::UniPoly;
use crate::report::CheckRecord;
use crate::scalar::{binomial, format_rational, qi, Coeff, Rational};

/// `p2·u″ + p1·u′ + p0·u`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiffOp1D<F> {
    pub p2: UniPoly<F>,
    pub p1: UniPoly<F>,
    pub p0: UniPoly<F>,
}

impl<F: Coeff> DiffOp1D<F> {
    pub fn zero() -> Self {
        DiffOp1D {
            p2: UniPoly::zero(),
            p1: UniPoly::zero(),
            p0: UniPoly::zero(),
        }
    }

    pub fn new(p2: UniPoly<F>, p1: UniPoly<F>, p0: UniPoly<F>) -> Self {
        DiffOp1D { p2, p1, p0 }
    }

    pub fn first_order(p1: UniPoly<F>, p0: UniPoly<F>) -> Self {
        DiffOp1D::new(UniPoly::zero(), p1, p0)
    }

    /// Multiplication by a constant.
    pub fn scalar(c: F) -> Self {
        DiffOp1D::new(UniPoly::zero(), UniPoly::zero(), UniPoly::constant(c))
    }

    /// `L^{α,β}`.
    pub fn jacobi_l(alpha: &F, beta: &F) -> Self {
        DiffOp1D::new(
            UniPoly::from_coeffs(vec![F::one(), F::zero(), -F::one()]),
            UniPoly::from_coeffs(vec![
                beta.clone() - alpha.clone(),
                -(alpha.clone() + beta.clone() + F::from_int(2)),
            ]),
            UniPoly::zero(),
        )
    }

    pub fn order(&self) -> i32 {
        if !self.p2.is_zero() {
            2
        } else if !self.p1.is_zero() {
            1
        } else if !self.p0.is_zero() {
            0
        } else {
            -1
        }
    }

    pub fn is_zero(&self) -> bool {
        self.order() < 0
    }

    pub fn apply(&self, u: &UniPoly<F>) -> UniPoly<F> {
        let d1 = u.derivative();
        let d2 = d1.derivative();
        &(&(&self.p2 * &d2) + &(&self.p1 * &d1)) + &(&self.p0 * u)
    }

    pub fn add(&self, other: &Self) -> Self {
        DiffOp1D::new(&self.p2 + &other.p2, &self.p1 + &other.p1, &self.p0 + &other.p0)
    }

    pub fn sub(&self, other: &Self) -> Self {
        DiffOp1D::new(&self.p2 - &other.p2, &self.p1 - &other.p1, &self.p0 - &other.p0)
    }

    pub fn scale(&self, c: &F) -> Self {
        DiffOp1D::new(self.p2.scale(c), self.p1.scale(c), self.p0.scale(c))
    }

    /// `R ∘ self ∘ R` with `R: u(t) ↦ u(−t)`.
    pub fn reflect(&self) -> Self {
        DiffOp1D::new(self.p2.reflect(), -self.p1.reflect(), self.p0.reflect())
    }

    pub fn to_general(&self) -> GeneralOp1D<F> {
        GeneralOp1D::new(vec![self.p0.clone(), self.p1.clone(), self.p2.clone()])
    }

    /// `outer ∘ inner`; fails when the composite has order above two.
    pub fn compose(outer: &Self, inner: &Self) -> Result<Self> {
        outer.to_general().compose(&inner.to_general()).narrow()
    }

    /// `[a, b] = a∘b − b∘a`; third-order terms may cancel.
    pub fn commutator(a: &Self, b: &Self) -> Result<Self> {
        let (ga, gb) = (a.to_general(), b.to_general());
        ga.compose(&gb).sub(&gb.compose(&ga)).narrow()
    }
}

impl<F: Coeff> fmt::Display for DiffOp1D<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})D² + ({})D + ({})", self.p2, self.p1, self.p0)
    }
}

/// `Σ_i c_i(t) Dⁱ` of arbitrary order, used for compositions.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneralOp1D<F> {
    coeffs: Vec<UniPoly<F>>,
}

impl<F: Coeff> GeneralOp1D<F> {
    pub fn new(mut coeffs: Vec<UniPoly<F>>) -> Self {
        while coeffs.last().is_some_and(UniPoly::is_zero) {
            coeffs.pop();
        }
        GeneralOp1D { coeffs }
    }

    pub fn order(&self) -> i32 {
        self.coeffs.len() as i32 - 1
    }

    pub fn coeffs(&self) -> &[UniPoly<F>] {
        &self.coeffs
    }

    pub fn apply(&self, u: &UniPoly<F>) -> UniPoly<F> {
        let mut out = UniPoly::zero();
        let mut du = u.clone();
        for c in &self.coeffs {
            out = &out + &(c * &du);
            du = du.derivative();
        }
        out
    }

    /// Leibniz: `a Dⁱ ∘ b Dᵏ = Σ_m C(i,m) a b^{(i−m)} D^{m+k}`.
    pub fn compose(&self, inner: &Self) -> Self {
        if self.coeffs.is_empty() || inner.coeffs.is_empty() {
            return GeneralOp1D::new(Vec::new());
        }
        let len = self.coeffs.len() + inner.coeffs.len() - 1;
        let mut out = vec![UniPoly::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (k, b) in inner.coeffs.iter().enumerate() {
                let mut bd = b.clone();
                let mut derivs = vec![bd.clone()];
                for _ in 0..i {
                    bd = bd.derivative();
                    derivs.push(bd.clone());
                }
                for m in 0..=i {
                    let c = binomial::<F>(i as u32, m as u32);
                    let term = (a * &derivs[i - m]).scale(&c);
                    out[m + k] = &out[m + k] + &term;
                }
            }
        }
        GeneralOp1D::new(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[UniPoly<F>], i: usize| v.get(i).cloned().unwrap_or_else(UniPoly::zero);
        GeneralOp1D::new(
            (0..len)
                .map(|i| &get(&self.coeffs, i) + &get(&other.coeffs, i))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let neg = GeneralOp1D::new(other.coeffs.iter().map(|c| -c).collect());
        self.add(&neg)
    }

    pub fn narrow(&self) -> Result<DiffOp1D<F>> {
        if self.order() > 2 {
            return Err(Error::OrderOverflow {
                order: self.order() as usize,
            });
        }
        let get = |i: usize| self.coeffs.get(i).cloned().unwrap_or_else(UniPoly::zero);
        Ok(DiffOp1D::new(get(2), get(1), get(0)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LadderKind1D {
    A1,
    A2,
    B1,
    B2,
    C1,
    C2,
    D1,
    D2,
    E1,
    E2,
    F1,
    F2,
    /// `E2` with the sign of the multiplication term as printed in the
    /// source; kept only so the verifier can show that it fails.
    E2Printed,
}

/// Lower bound on a parameter: strictly greater than −1 or than 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bound {
    GtMinusOne,
    GtZero,
}

impl Bound {
    pub fn holds(self, v: &Rational) -> bool {
        match self {
            Bound::GtMinusOne => *v > qi(-1),
            Bound::GtZero => *v > qi(0),
        }
    }
}

impl LadderKind1D {
    pub const ALL: [LadderKind1D; 12] = [
        LadderKind1D::A1,
        LadderKind1D::A2,
        LadderKind1D::B1,
        LadderKind1D::B2,
        LadderKind1D::C1,
        LadderKind1D::C2,
        LadderKind1D::D1,
        LadderKind1D::D2,
        LadderKind1D::E1,
        LadderKind1D::E2,
        LadderKind1D::F1,
        LadderKind1D::F2,
    ];

    pub fn name(self) -> &'static str {
        use LadderKind1D::*;
        match self {
            A1 => "A1",
            A2 => "A2",
            B1 => "B1",
            B2 => "B2",
            C1 => "C1",
            C2 => "C2",
            D1 => "D1",
            D2 => "D2",
            E1 => "E1",
            E2 => "E2",
            F1 => "F1",
            F2 => "F2",
            E2Printed => "E2_printed",
        }
    }

    /// The pair number 1–6 (A through F).
    pub fn family(self) -> u32 {
        use LadderKind1D::*;
        match self {
            A1 | A2 => 1,
            B1 | B2 => 2,
            C1 | C2 => 3,
            D1 | D2 => 4,
            E1 | E2 | E2Printed => 5,
            F1 | F2 => 6,
        }
    }

    pub fn needs_n(self) -> bool {
        !matches!(
            self,
            LadderKind1D::A1 | LadderKind1D::A2 | LadderKind1D::F1 | LadderKind1D::F2
        )
    }

    /// Parameter range under which the identity is stated.
    pub fn range(self) -> (Bound, Bound) {
        use Bound::*;
        use LadderKind1D::*;
        match self {
            A1 | B1 | C1 | D1 | E1 => (GtMinusOne, GtMinusOne),
            A2 => (GtZero, GtZero),
            B2 | D2 | F2 => (GtZero, GtMinusOne),
            C2 | E2 | E2Printed | F1 => (GtMinusOne, GtZero),
        }
    }

    pub fn in_range(self, alpha: &Rational, beta: &Rational) -> bool {
        let (ba, bb) = self.range();
        ba.holds(alpha) && bb.holds(beta)
    }

    /// Image of `P_n^{(α,β)}`: `(n shift, α shift, β shift)`.
    pub fn shifts(self) -> (i64, i64, i64) {
        use LadderKind1D::*;
        match self {
            A1 => (-1, 1, 1),
            A2 => (1, -1, -1),
            B1 => (0, 1, 0),
            B2 => (0, -1, 0),
            C1 => (0, 0, 1),
            C2 => (0, 0, -1),
            D1 => (-1, 1, 0),
            D2 => (1, -1, 0),
            E1 => (-1, 0, 1),
            E2 | E2Printed => (1, 0, -1),
            F1 => (0, 1, -1),
            F2 => (0, -1, 1),
        }
    }

    /// The constant multiplying the image polynomial.
    pub fn factor<F: Coeff>(self, alpha: &F, beta: &F, n: u32) -> F {
        use LadderKind1D::*;
        let nn = F::from_int(n as i64);
        let two = F::from_int(2);
        let s = nn.clone() + alpha.clone() + beta.clone() + F::one();
        match self {
            A1 => s / two,
            A2 | D2 | E2 | E2Printed => -(two * (nn + F::one())),
            B1 => s,
            B2 => -(two * (nn + alpha.clone())),
            C1 => -s,
            C2 => two * (nn + beta.clone()),
            D1 | F1 => nn + beta.clone(),
            E1 => nn + alpha.clone(),
            F2 => -(nn + alpha.clone()),
        }
    }
}

impl fmt::Display for LadderKind1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for LadderKind1D {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LadderKind1D::ALL
            .iter()
            .chain(std::iter::once(&LadderKind1D::E2Printed))
            .copied()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown univariate ladder operator {s:?}")))
    }
}

fn lin<F: Coeff>(c0: F, c1: F) -> UniPoly<F> {
    UniPoly::from_coeffs(vec![c0, c1])
}

/// Builds the operator. `n` must be given exactly for the kinds whose
/// coefficients depend on the degree of the polynomial acted on.
pub fn make_op_1d<F: Coeff>(kind: LadderKind1D, alpha: &F, beta: &F, n: Option<u32>) -> Result<DiffOp1D<F>> {
    use LadderKind1D::*;
    let nn = match (kind.needs_n(), n) {
        (true, Some(n)) => F::from_int(n as i64),
        (false, None) => F::zero(),
        (true, None) => {
            return Err(Error::Arity {
                kind: kind.name().into(),
                detail: "operator needs the degree n".into(),
            })
        }
        (false, Some(_)) => {
            return Err(Error::Arity {
                kind: kind.name().into(),
                detail: "operator does not take a degree n".into(),
            })
        }
    };
    let (a, b) = (alpha.clone(), beta.clone());
    let one = F::one();
    let two = F::from_int(2);
    let s = nn.clone() + a.clone() + b.clone() + one.clone();
    let one_plus_t = lin(one.clone(), one.clone());
    let one_minus_t = lin(one.clone(), -one.clone());
    let one_minus_t2 = UniPoly::from_coeffs(vec![one.clone(), F::zero(), -one.clone()]);
    let k = |c: F| UniPoly::constant(c);
    // (n+α+1)(1+t) − β(1−t)
    let e2_bracket = &one_plus_t.scale(&(nn.clone() + a.clone() + one.clone())) - &one_minus_t.scale(&b);
    let op = match kind {
        A1 => DiffOp1D::first_order(UniPoly::one(), UniPoly::zero()),
        A2 => DiffOp1D::first_order(one_minus_t2, &one_minus_t.scale(&b) - &one_plus_t.scale(&a)),
        B1 => DiffOp1D::first_order(one_plus_t, k(s)),
        B2 => DiffOp1D::first_order(one_minus_t2, -(&k(two * a) + &one_minus_t.scale(&nn))),
        C1 => DiffOp1D::first_order(one_minus_t, k(-s)),
        C2 => DiffOp1D::first_order(one_minus_t2, &k(two * b) + &one_plus_t.scale(&nn)),
        D1 => DiffOp1D::first_order(one_plus_t, k(-nn)),
        D2 => DiffOp1D::first_order(
            one_minus_t2,
            &one_minus_t.scale(&(nn + b + one)) - &one_plus_t.scale(&a),
        ),
        E1 => DiffOp1D::first_order(one_minus_t, k(nn)),
        E2 => DiffOp1D::first_order(one_minus_t2, -e2_bracket),
        E2Printed => DiffOp1D::first_order(one_minus_t2, e2_bracket),
        F1 => DiffOp1D::first_order(one_plus_t, k(b)),
        F2 => DiffOp1D::first_order(one_minus_t, k(-a)),
    };
    Ok(op)
}

fn shifted(v: &Rational, by: i64) -> Rational {
    v + qi(by)
}

fn base_record(kind: LadderKind1D, alpha: &Rational, beta: &Rational, n: u32) -> CheckRecord {
    CheckRecord::new(kind.name())
        .param("alpha", format_rational(alpha))
        .param("beta", format_rational(beta))
        .param("n", n)
}

/// Exact check of `K[P_n^{(α,β)}] = c·P_{n'}^{(α',β')}`, with `P_{−1} ≡ 0`.
/// Tuples outside the identity's parameter range are reported as skipped.
pub fn verify_ladder_1d(kind: LadderKind1D, alpha: &Rational, beta: &Rational, n: u32) -> CheckRecord {
    let rec = base_record(kind, alpha, beta, n);
    if !kind.in_range(alpha, beta) {
        return rec.skipped("parameters outside the identity's range");
    }
    let (lhs, rhs) = ladder_sides_1d(kind, alpha, beta, n);
    rec.unipoly_eq(&lhs, &rhs)
}

/// Both sides of a univariate ladder identity, regardless of range.
pub fn ladder_sides_1d<F: Coeff>(kind: LadderKind1D, alpha: &F, beta: &F, n: u32) -> (UniPoly<F>, UniPoly<F>) {
    let n_arg = kind.needs_n().then_some(n);
    let op = make_op_1d(kind, alpha, beta, n_arg).expect("arity matches kind");
    let lhs = op.apply(&jacobi_explicit(alpha, beta, n));
    let (dn, da, db) = kind.shifts();
    let target_n = n as i64 + dn;
    let rhs = if target_n < 0 {
        UniPoly::zero()
    } else {
        let a2 = alpha.clone() + F::from_int(da);
        let b2 = beta.clone() + F::from_int(db);
        jacobi_explicit(&a2, &b2, target_n as u32).scale(&kind.factor(alpha, beta, n))
    };
    (lhs, rhs)
}

/// Largest power in the monomial basis used for operator-level checks.
pub const PROOF_BASIS_DEGREE: usize = 10;

fn basis_check<F: Coeff>(lhs: &GeneralOp1D<F>, rhs: &GeneralOp1D<F>, rec: CheckRecord) -> CheckRecord {
    for m in 0..=PROOF_BASIS_DEGREE {
        let u = UniPoly::monomial(m, F::one());
        let (l, r) = (lhs.apply(&u), rhs.apply(&u));
        if l != r {
            return rec.unipoly_eq(&l, &r).param("basis_power", m);
        }
    }
    rec.with_witness(None)
}

/// Operator identities used to prove the ladder relations, checked on
/// `1, t, …, t^10`:
///
/// - `L^{α+1,β+1}A1 = A1(L^{α,β} + α+β+2)`
/// - `L^{α−1,β−1}A2 = A2(L^{α,β} − (α+β))`
/// - `L^{α+1,β−1}F1 = F1 L^{α,β}`
/// - `L^{α+1,β}B1 = B1(L^{α,β} − n) + L^{α,β} + n(n+α+β+1)`
/// - `L^{α+1,β}D1 = D1(L^{α,β} + n+α+β+1) + L^{α,β} + n(n+α+β+1)`
pub fn verify_proof_identities(alpha: &Rational, beta: &Rational, n: u32) -> Vec<CheckRecord> {
    let one = qi(1);
    let two = qi(2);
    let nn = qi(n as i64);
    let l = DiffOp1D::jacobi_l(alpha, beta).to_general();
    let lshift = |da: i64, db: i64| DiffOp1D::jacobi_l(&shifted(alpha, da), &shifted(beta, db)).to_general();
    let scalar = |c: Rational| DiffOp1D::scalar(c).to_general();
    let op = |k: LadderKind1D| {
        make_op_1d(k, alpha, beta, k.needs_n().then_some(n))
            .expect("arity matches kind")
            .to_general()
    };
    let ab = alpha + beta;
    let eig = nn.clone() * (nn.clone() + ab.clone() + one.clone());
    let rec = |name: &str| {
        CheckRecord::new(format!("proof.{name}"))
            .param("alpha", format_rational(alpha))
            .param("beta", format_rational(beta))
    };

    let a1 = op(LadderKind1D::A1);
    let a2 = op(LadderKind1D::A2);
    let f1 = op(LadderKind1D::F1);
    let b1 = op(LadderKind1D::B1);
    let d1 = op(LadderKind1D::D1);

    let cases: Vec<(&str, GeneralOp1D<Rational>, GeneralOp1D<Rational>, bool)> = vec![
        (
            "A1",
            lshift(1, 1).compose(&a1),
            a1.compose(&l.add(&scalar(ab.clone() + two.clone()))),
            false,
        ),
        (
            "A2",
            lshift(-1, -1).compose(&a2),
            a2.compose(&l.sub(&scalar(ab.clone()))),
            false,
        ),
        ("F1", lshift(1, -1).compose(&f1), f1.compose(&l), false),
        (
            "B1",
            lshift(1, 0).compose(&b1),
            b1.compose(&l.sub(&scalar(nn.clone())))
                .add(&l)
                .add(&scalar(eig.clone())),
            true,
        ),
        (
            "D1",
            lshift(1, 0).compose(&d1),
            d1.compose(&l.add(&scalar(nn.clone() + ab.clone() + one.clone())))
                .add(&l)
                .add(&scalar(eig.clone())),
            true,
        ),
    ];
    cases
        .into_iter()
        .map(|(name, lhs, rhs, has_n)| {
            let r = rec(name);
            let r = if has_n { r.param("n", n) } else { r };
            basis_check(&lhs, &rhs, r)
        })
        .collect()
}

/// `E1 = −R D1^{(β,α)} R`, `E2 = −R D2^{(β,α)} R`, `C1 = −R B1^{(β,α)} R`,
/// `C2 = −R B2^{(β,α)} R`, with `R u(t) = u(−t)`; checked as coefficient
/// equalities, together with agreement of the identity outcomes.
pub fn verify_reflection_pairs(alpha: &Rational, beta: &Rational, n: u32) -> Vec<CheckRecord> {
    use LadderKind1D::*;
    [(E1, D1), (E2, D2), (C1, B1), (C2, B2)]
        .into_iter()
        .map(|(target, source)| {
            let rec = CheckRecord::new(format!("reflection.{}", target.name()))
                .param("alpha", format_rational(alpha))
                .param("beta", format_rational(beta))
                .param("n", n);
            let direct = make_op_1d(target, alpha, beta, Some(n)).expect("n-dependent");
            let via = make_op_1d(source, beta, alpha, Some(n))
                .expect("n-dependent")
                .reflect()
                .scale(&qi(-1));
            if direct != via {
                return rec
                    .unipoly_eq(&direct.p0, &via.p0)
                    .failed(format!("operators differ: {direct} vs {via}"));
            }
            let ours = ladder_sides_1d(target, alpha, beta, n);
            let theirs = ladder_sides_1d(source, beta, alpha, n);
            if (ours.0 == ours.1) != (theirs.0 == theirs.1) {
                return rec.failed("identity outcomes differ under reflection");
            }
            rec.with_witness(None)
        })
        .collect()
}

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::polyrep::UniPoly;
use crate::scalar::{conj, cx_is_zero, Coeff, Cx};

/// Largest total degree `a + b` a [`BiPoly`] may hold.
pub const MAX_TOTAL_DEGREE: u32 = 4096;

/// Exponent pair of the monomial `z^a z̄^b`.
///
/// Ordered by total degree first, then by the power of `z`; this is the
/// global term order used for every serialized output.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub a: u32,
    pub b: u32,
}

impl Monomial {
    pub fn new(a: u32, b: u32) -> Self {
        Monomial { a, b }
    }

    pub fn degree(&self) -> u32 {
        self.a + self.b
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.a + self.b, self.a).cmp(&(other.a + other.b, other.a))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in the conjugate pair `z`, `z̄` with complex
/// coefficients. No zero coefficient is ever stored.
#[derive(Clone, Debug, PartialEq)]
pub struct BiPoly<F> {
    terms: BTreeMap<Monomial, Cx<F>>,
}

fn check_degree(degree: u64) -> Result<()> {
    if degree > MAX_TOTAL_DEGREE as u64 {
        Err(Error::ExponentBound {
            degree,
            limit: MAX_TOTAL_DEGREE,
        })
    } else {
        Ok(())
    }
}

fn real<F: Coeff>(v: F) -> Cx<F> {
    Cx::new(v, F::zero())
}

impl<F: Coeff> BiPoly<F> {
    pub fn zero() -> Self {
        BiPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::real_constant(F::one())
    }

    pub fn constant(c: Cx<F>) -> Self {
        let mut p = Self::zero();
        p.insert(Monomial::new(0, 0), c);
        p
    }

    pub fn real_constant(c: F) -> Self {
        Self::constant(real(c))
    }

    pub fn z() -> Self {
        Self::monomial(1, 0, real(F::one())).expect("degree 1")
    }

    pub fn zbar() -> Self {
        Self::monomial(0, 1, real(F::one())).expect("degree 1")
    }

    /// `z z̄`.
    pub fn zzbar() -> Self {
        Self::monomial(1, 1, real(F::one())).expect("degree 2")
    }

    /// `1 − z z̄`, the disk boundary factor.
    pub fn one_minus_zzbar() -> Self {
        &Self::one() - &Self::zzbar()
    }

    /// `c·z^a z̄^b`.
    pub fn monomial(a: u32, b: u32, c: Cx<F>) -> Result<Self> {
        check_degree(a as u64 + b as u64)?;
        let mut p = Self::zero();
        p.insert(Monomial::new(a, b), c);
        Ok(p)
    }

    /// Sums duplicate keys and prunes zeros.
    pub fn from_terms<I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, u32, Cx<F>)>,
    {
        let mut p = Self::zero();
        for (a, b, c) in terms {
            check_degree(a as u64 + b as u64)?;
            p.insert(Monomial::new(a, b), c);
        }
        Ok(p)
    }

    /// Adds `c` to the coefficient of `m`.
    fn insert(&mut self, m: Monomial, c: Cx<F>) {
        use std::collections::btree_map::Entry;
        if cx_is_zero(&c) {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if cx_is_zero(&sum) {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// Terms in the global order (total degree, then power of `z`).
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &Cx<F>)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coeff(&self, a: u32, b: u32) -> Cx<F> {
        self.terms
            .get(&Monomial::new(a, b))
            .cloned()
            .unwrap_or_else(|| real(F::zero()))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Maximum `a + b` over the terms, −1 for the zero polynomial.
    pub fn total_degree(&self) -> i64 {
        self.terms.keys().map(|m| m.degree() as i64).max().unwrap_or(-1)
    }

    pub fn scale(&self, s: &Cx<F>) -> Self {
        let mut p = Self::zero();
        for (m, c) in &self.terms {
            p.insert(*m, c.clone() * s.clone());
        }
        p
    }

    pub fn scale_real(&self, s: &F) -> Self {
        self.scale(&real(s.clone()))
    }

    /// Product with a bound check on the result's total degree.
    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        let deg = self.total_degree() + rhs.total_degree();
        if !self.is_zero() && !rhs.is_zero() {
            check_degree(deg as u64)?;
        }
        let mut p = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                p.insert(Monomial::new(m1.a + m2.a, m1.b + m2.b), c1.clone() * c2.clone());
            }
        }
        Ok(p)
    }

    /// Formal `∂/∂z` with `z̄` held fixed.
    pub fn d_z(&self) -> Self {
        let mut p = Self::zero();
        for (m, c) in &self.terms {
            if m.a > 0 {
                p.insert(Monomial::new(m.a - 1, m.b), c.clone() * real(F::from_int(m.a as i64)));
            }
        }
        p
    }

    /// Formal `∂/∂z̄` with `z` held fixed.
    pub fn d_zbar(&self) -> Self {
        let mut p = Self::zero();
        for (m, c) in &self.terms {
            if m.b > 0 {
                p.insert(Monomial::new(m.a, m.b - 1), c.clone() * real(F::from_int(m.b as i64)));
            }
        }
        p
    }

    /// The pointwise complex conjugate as a polynomial: exponents swapped and
    /// coefficients conjugated.
    pub fn swap_conj(&self) -> Self {
        let mut p = Self::zero();
        for (m, c) in &self.terms {
            p.insert(Monomial::new(m.b, m.a), conj(c));
        }
        p
    }

    /// Real-valued on the disk iff `coeff(a,b) = conj(coeff(b,a))`.
    pub fn is_real_valued(&self) -> bool {
        *self == self.swap_conj()
    }

    /// `Re p` as a polynomial: `(p + swap_conj(p)) / 2`.
    pub fn real_part(&self) -> Self {
        (self + &self.swap_conj()).scale_real(&(F::one() / F::from_int(2)))
    }

    /// `Im p` as a polynomial: `(p − swap_conj(p)) / (2i)`.
    pub fn imag_part(&self) -> Self {
        let half_over_i = Cx::new(F::zero(), -(F::one() / F::from_int(2)));
        (self - &self.swap_conj()).scale(&half_over_i)
    }

    /// Horner evaluation at `z`, with `z̄ = conj(z)`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let zb = z.conj();
        let mut by_a: BTreeMap<u32, Complex64> = BTreeMap::new();
        for (m, c) in &self.terms {
            let c = Complex64::new(c.re.to_f64(), c.im.to_f64());
            *by_a.entry(m.a).or_default() += c * zb.powu(m.b);
        }
        horner_desc(by_a.into_iter().rev(), z)
    }

    /// Exact evaluation at a point of the coefficient field's Gaussian
    /// extension, with `z̄ = conj(z)`.
    pub fn eval_exact(&self, z: &Cx<F>) -> Cx<F> {
        let zb = conj(z);
        let mut by_a: BTreeMap<u32, Cx<F>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let term = c.clone() * cx_pow(&zb, m.b);
            let slot = by_a.entry(m.a).or_insert_with(|| real(F::zero()));
            *slot = slot.clone() + term;
        }
        let mut acc = real(F::zero());
        let mut prev: Option<u32> = None;
        for (a, s) in by_a.into_iter().rev() {
            if let Some(p) = prev {
                acc = acc * cx_pow(z, p - a);
            }
            acc = acc + s;
            prev = Some(a);
        }
        if let Some(p) = prev {
            acc = acc * cx_pow(z, p);
        }
        acc
    }

    /// `z^{m_z} z̄^{m_zbar} · p(2 z z̄ − 1)`, fully expanded. At most one of
    /// the two exponents may be nonzero.
    pub fn compose_radial(p: &UniPoly<F>, m_z: u32, m_zbar: u32) -> Result<Self> {
        if m_z != 0 && m_zbar != 0 {
            return Err(Error::RadialExponents { m_z, m_zbar });
        }
        check_degree(m_z as u64 + m_zbar as u64 + 2 * p.degree().max(0) as u64)?;
        // p(2r − 1) as a polynomial in r = z z̄.
        let shifted = p.compose(&UniPoly::from_coeffs(vec![-F::one(), F::from_int(2)]));
        let mut out = Self::zero();
        for (power, c) in shifted.coeffs().iter().enumerate() {
            let power = power as u32;
            out.insert(Monomial::new(power + m_z, power + m_zbar), real(c.clone()));
        }
        Ok(out)
    }

    pub fn to_float(&self) -> BiPoly<f64> {
        let mut p = BiPoly::zero();
        for (m, c) in &self.terms {
            p.insert(*m, Cx::new(c.re.to_f64(), c.im.to_f64()));
        }
        p
    }

    /// First monomial (in term order) where the polynomials differ.
    pub fn first_difference(&self, other: &Self) -> Option<(Monomial, Cx<F>, Cx<F>)> {
        let mut keys: Vec<Monomial> = self.terms.keys().chain(other.terms.keys()).copied().collect();
        keys.sort();
        keys.dedup();
        keys.into_iter().find_map(|m| {
            let l = self.coeff(m.a, m.b);
            let r = other.coeff(m.a, m.b);
            (l != r).then_some((m, l, r))
        })
    }
}

fn cx_pow<F: Coeff>(z: &Cx<F>, k: u32) -> Cx<F> {
    let mut acc = real(F::one());
    for _ in 0..k {
        acc = acc * z.clone();
    }
    acc
}

fn horner_desc<I>(groups: I, z: Complex64) -> Complex64
where
    I: Iterator<Item = (u32, Complex64)>,
{
    let mut acc = Complex64::new(0.0, 0.0);
    let mut prev: Option<u32> = None;
    for (a, s) in groups {
        if let Some(p) = prev {
            acc *= z.powu(p - a);
        }
        acc += s;
        prev = Some(a);
    }
    match prev {
        Some(p) => acc * z.powu(p),
        None => acc,
    }
}

impl<F: Coeff> fmt::Display for BiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if c.im.is_zero() {
                write!(f, "{:?}", c.re)?;
            } else {
                write!(f, "({:?} + {:?}i)", c.re, c.im)?;
            }
            if m.a > 0 {
                write!(f, "·z^{}", m.a)?;
            }
            if m.b > 0 {
                write!(f, "·zb^{}", m.b)?;
            }
        }
        Ok(())
    }
}

impl<F: Coeff> std::ops::Add for &BiPoly<F> {
    type Output = BiPoly<F>;
    fn add(self, rhs: Self) -> BiPoly<F> {
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.insert(*m, c.clone());
        }
        p
    }
}

impl<F: Coeff> std::ops::Sub for &BiPoly<F> {
    type Output = BiPoly<F>;
    fn sub(self, rhs: Self) -> BiPoly<F> {
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.insert(*m, -c.clone());
        }
        p
    }
}

/// Panics if the product exceeds [`MAX_TOTAL_DEGREE`]; use
/// [`BiPoly::try_mul`] for a fallible product.
impl<F: Coeff> std::ops::Mul for &BiPoly<F> {
    type Output = BiPoly<F>;
    fn mul(self, rhs: Self) -> BiPoly<F> {
        self.try_mul(rhs).expect("BiPoly product exceeds the exponent bound")
    }
}

impl<F: Coeff> std::ops::Neg for &BiPoly<F> {
    type Output = BiPoly<F>;
    fn neg(self) -> BiPoly<F> {
        self.scale_real(&-F::one())
    }
}

crate::polyrep::forward_owned_ops!(BiPoly);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{qi, Rational};

    type P = BiPoly<Rational>;

    fn m(a: u32, b: u32, c: i64) -> P {
        P::monomial(a, b, Cx::new(qi(c), qi(0))).unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(P::z() + P::zbar(), m(1, 0, 1) + m(0, 1, 1));
        let p = m(2, 1, 3);
        assert_eq!(&p + &P::zero(), p);
        // (2zz̄ − 1) + 1 = 2zz̄
        assert_eq!((m(1, 1, 2) - P::one()) + P::one(), m(1, 1, 2));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(P::z() * P::zbar(), P::zzbar());
        let lhs = P::one_minus_zzbar() * (P::one() + P::zzbar());
        assert_eq!(lhs, P::one() - m(2, 2, 1));
        assert!((P::zero() * m(3, 1, 5)).is_zero());
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(m(2, 1, 1).d_z(), m(1, 1, 2));
        assert!(m(2, 0, 1).d_zbar().is_zero());
        assert_eq!((m(1, 1, 2) - P::one()).d_z(), m(0, 1, 2));
    }

    #[test]
    fn eval_examples() {
        let z = Complex64::new(0.6, 0.8);
        assert!((P::zzbar().eval(z) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        let p = m(1, 1, 2) - P::one();
        assert_eq!(p.eval(Complex64::new(0.0, 0.0)), Complex64::new(-1.0, 0.0));
        let sq = m(2, 0, 1).eval(Complex64::new(0.0, 1.0));
        assert!((sq - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn swap_conj_examples() {
        assert_eq!(P::z().swap_conj(), P::zbar());
        assert_eq!(P::zzbar().swap_conj(), P::zzbar());
        let c = P::monomial(2, 0, Cx::new(qi(1), qi(3))).unwrap();
        assert_eq!(c.swap_conj(), P::monomial(0, 2, Cx::new(qi(1), qi(-3))).unwrap());
    }

    #[test]
    fn compose_radial_examples() {
        assert_eq!(P::compose_radial(&UniPoly::one(), 3, 0).unwrap(), m(3, 0, 1));
        assert_eq!(P::compose_radial(&UniPoly::t(), 0, 0).unwrap(), m(1, 1, 2) - P::one());
        assert_eq!(P::compose_radial(&UniPoly::t(), 1, 0).unwrap(), m(2, 1, 2) - m(1, 0, 1));
        assert!(matches!(
            P::compose_radial(&UniPoly::t(), 1, 1),
            Err(Error::RadialExponents { .. })
        ));
    }

    #[test]
    fn exponent_bound() {
        assert!(P::monomial(4096, 0, Cx::new(qi(1), qi(0))).is_ok());
        assert!(matches!(
            P::monomial(4000, 97, Cx::new(qi(1), qi(0))),
            Err(Error::ExponentBound { .. })
        ));
        let big = m(2048, 0, 1);
        assert!(big.try_mul(&m(0, 2049, 1)).is_err());
    }

    #[test]
    fn zero_degree_sentinel() {
        assert_eq!(P::zero().total_degree(), -1);
        assert_eq!((P::z() - P::z()).len(), 0);
    }

    #[test]
    fn real_and_imaginary_parts() {
        let z2 = m(2, 0, 1);
        // Re z² = (z² + z̄²)/2, Im z² = (z² − z̄²)/(2i)
        let half = Cx::new(Rational::new(1.into(), 2.into()), qi(0));
        assert_eq!(z2.real_part(), (m(2, 0, 1) + m(0, 2, 1)).scale(&half));
        assert!(z2.real_part().is_real_valued());
        assert!(z2.imag_part().is_real_valued());
        let recombined = z2.real_part() + z2.imag_part().scale(&Cx::new(qi(0), qi(1)));
        assert_eq!(recombined, z2);
    }

    #[test]
    fn exact_eval_at_gaussian_rational() {
        let p = m(1, 1, 2) - P::one();
        let z = Cx::new(Rational::new(3.into(), 5.into()), Rational::new(4.into(), 5.into()));
        assert_eq!(p.eval_exact(&z), Cx::new(qi(1), qi(0)));
    }
}

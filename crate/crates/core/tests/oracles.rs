//! Reference values computed by hand or quoted as closed forms.

use std::f64::consts::PI;

use diskladder::jacobi::{apply_l, jacobi_explicit, jacobi_weight, reflection_check};
use diskladder::ops1d::{make_op_1d, DiffOp1D, LadderKind1D};
use diskladder::ops2d::{apply_l_mu, make_op_2d, q_minus_one, LadderKind2D};
use diskladder::polyrep::{BiPoly, UniPoly};
use diskladder::quadrature::{circle_rule, disk_rule, gauss_jacobi};
use diskladder::scalar::{q, qi, Cx, Rational};
use diskladder::sobolev::{basis2, gram_matrix, inner_product_1, inner_product_2, GramKind, SobolevRules};
use diskladder::zernike::{b_mu, build_q, norm_h};
use num_complex::Complex64;

type Bp = BiPoly<Rational>;
type Up = UniPoly<Rational>;

fn c(re: i64) -> Cx<Rational> {
    Cx::new(qi(re), qi(0))
}

fn mono(a: u32, b: u32, re: i64) -> Bp {
    Bp::monomial(a, b, c(re)).unwrap()
}

fn uni(coeffs: &[Rational]) -> Up {
    Up::from_coeffs(coeffs.to_vec())
}

#[test]
fn bipoly_arithmetic() {
    let two_zzbar_minus_one = &mono(1, 1, 2) - &Bp::one();
    assert_eq!(&Bp::z() + &Bp::zbar(), &mono(1, 0, 1) + &mono(0, 1, 1));
    assert_eq!(&two_zzbar_minus_one + &Bp::one(), mono(1, 1, 2));
    assert_eq!(&Bp::z() * &Bp::zbar(), Bp::zzbar());
    let one_plus = &Bp::one() + &Bp::zzbar();
    assert_eq!(&Bp::one_minus_zzbar() * &one_plus, &Bp::one() - &mono(2, 2, 1));
    assert!((&Bp::zero() * &two_zzbar_minus_one).is_zero());
    assert_eq!(mono(2, 1, 1).d_z(), mono(1, 1, 2));
    assert!(mono(2, 0, 1).d_zbar().is_zero());
    assert_eq!(two_zzbar_minus_one.d_z(), mono(0, 1, 2));
    assert_eq!(Bp::z().swap_conj(), Bp::zbar());
    assert_eq!(Bp::zzbar().swap_conj(), Bp::zzbar());
}

#[test]
fn bipoly_evaluation() {
    let f = |p: &Bp, z: Complex64| p.to_float().eval(z);
    assert!((f(&Bp::zzbar(), Complex64::new(0.6, 0.8)) - 1.0).norm() < 1e-15);
    assert_eq!(
        f(&(&mono(1, 1, 2) - &Bp::one()), Complex64::new(0.0, 0.0)),
        Complex64::new(-1.0, 0.0)
    );
    assert!((f(&mono(2, 0, 1), Complex64::i()) + 1.0).norm() < 1e-15);
}

#[test]
fn compose_radial_examples() {
    assert_eq!(Bp::compose_radial(&Up::one(), 3, 0).unwrap(), mono(3, 0, 1));
    assert_eq!(Bp::compose_radial(&Up::t(), 0, 0).unwrap(), &mono(1, 1, 2) - &Bp::one());
    assert_eq!(Bp::compose_radial(&Up::t(), 1, 0).unwrap(), &mono(2, 1, 2) - &Bp::z());
}

#[test]
fn jacobi_values() {
    let z = qi(0);
    assert_eq!(jacobi_explicit(&z, &z, 0), Up::one());
    assert_eq!(jacobi_explicit(&z, &z, 1), Up::t());
    assert_eq!(jacobi_explicit(&z, &z, 2), uni(&[q(-1, 2), qi(0), q(3, 2)]));
    for n in 0..10 {
        assert_eq!(jacobi_explicit(&z, &z, n).eval(&qi(1)), qi(1));
    }
    assert_eq!(jacobi_explicit(&0.0, &0.0, 1).eval(&0.5), 0.5);
    assert_eq!(jacobi_explicit(&0.0, &0.0, 2).eval(&0.0), -0.5);
}

#[test]
fn jacobi_operator() {
    let z = qi(0);
    let p2 = jacobi_explicit(&z, &z, 2);
    assert_eq!(apply_l(&z, &z, &p2), p2.scale(&qi(-6)));
    assert!(apply_l(&q(1, 2), &qi(3), &Up::one()).is_zero());
    assert_eq!(apply_l(&z, &z, &Up::t()), Up::t().scale(&qi(-2)));
}

#[test]
fn weight_and_reflection() {
    assert_eq!(jacobi_weight(0.0, 0.0, 0.3).unwrap(), 1.0);
    assert_eq!(jacobi_weight(1.0, 0.0, 0.0).unwrap(), 1.0);
    assert_eq!(jacobi_weight(1.0, 1.0, 0.5).unwrap(), 0.75);
    assert!(jacobi_weight(-0.5, 0.0, 1.0).is_err());
    assert!(reflection_check(&qi(0), &qi(0), 3));
    assert!(reflection_check(&q(1, 2), &qi(2), 4));
    assert!(reflection_check(&qi(1), &qi(3), 0));
}

#[test]
fn univariate_operators() {
    let (a, b) = (q(1, 3), q(5, 2));
    let a1 = make_op_1d(LadderKind1D::A1, &a, &b, None).unwrap();
    assert_eq!((a1.p1.clone(), a1.p0.clone()), (Up::one(), Up::zero()));
    let f1 = make_op_1d(LadderKind1D::F1, &a, &b, None).unwrap();
    assert_eq!(
        (f1.p1.clone(), f1.p0.clone()),
        (uni(&[qi(1), qi(1)]), uni(std::slice::from_ref(&b)))
    );
    let b2 = make_op_1d(LadderKind1D::B2, &qi(1), &qi(0), Some(0)).unwrap();
    assert_eq!(
        (b2.p1.clone(), b2.p0.clone()),
        (uni(&[qi(1), qi(0), qi(-1)]), uni(&[qi(-2)]))
    );

    assert_eq!(a1.apply(&uni(&[qi(0), qi(0), qi(1)])), uni(&[qi(0), qi(2)]));
    let a2 = make_op_1d(LadderKind1D::A2, &qi(1), &qi(1), None).unwrap();
    assert_eq!(a2.apply(&Up::one()), uni(&[qi(0), qi(-2)]));
    let b1 = make_op_1d(LadderKind1D::B1, &qi(0), &qi(0), Some(1)).unwrap();
    assert_eq!(b1.apply(&Up::t()), uni(&[qi(1), qi(3)]));

    assert!(DiffOp1D::commutator(&b1, &b1).unwrap().is_zero());
    let d2 = DiffOp1D::compose(&a1, &a1).unwrap();
    assert_eq!((d2.p2, d2.p1, d2.p0), (Up::one(), Up::zero(), Up::zero()));
}

#[test]
fn zernike_values() {
    let mu = q(3, 4);
    for k in 0..6 {
        assert_eq!(build_q(k, 0, &mu).unwrap(), mono(k, 0, 1));
    }
    assert_eq!(build_q(1, 1, &qi(0)).unwrap(), &mono(1, 1, 2) - &Bp::one());
    for (k, j) in [(0, 0), (3, 1), (2, 5), (4, 4)] {
        let v = build_q(k, j, &mu).unwrap().eval_exact(&c(1));
        assert_eq!(v, c(1));
    }
    assert_eq!(norm_h(0, 0, &q(5, 3)).unwrap(), qi(1));
    assert_eq!(norm_h(1, 0, &qi(0)).unwrap(), q(1, 2));
    assert_eq!(norm_h(1, 1, &qi(0)).unwrap(), q(1, 3));
    assert!((b_mu(&0.0).unwrap().to_f64() - 1.0 / PI).abs() < 1e-15);
    assert!((b_mu(&1.0).unwrap().to_f64() - 2.0 / PI).abs() < 1e-15);
    assert!((b_mu(&-0.5).unwrap().to_f64() - 0.5 / PI).abs() < 1e-15);
    assert_eq!(build_q(2, 3, &mu).unwrap().swap_conj(), build_q(3, 2, &mu).unwrap());
}

#[test]
fn bivariate_operators() {
    let mu = q(1, 2);
    let z1 = make_op_2d(LadderKind2D::Z1_lower_k, &mu, 3, 2);
    assert_eq!(
        (
            z1.c_z.clone(),
            z1.c_zbar.is_zero(),
            z1.c_0.is_zero(),
            z1.c_zzbar.is_zero()
        ),
        (Bp::one(), true, true, true)
    );
    let z5 = make_op_2d(LadderKind2D::Z5_lower_k, &mu, 2, 1);
    assert_eq!((z5.c_z.clone(), z5.c_0.clone()), (Bp::one_minus_zzbar(), mono(0, 1, 2)));
    let z7 = make_op_2d(LadderKind2D::Z7_lower_kj, &mu, 0, 3);
    assert_eq!((z7.c_z.clone(), z7.c_0.is_zero()), (Bp::z(), true));

    assert!(apply_l_mu(&mu, &Bp::one()).unwrap().is_zero());
    let q11 = build_q(1, 1, &qi(0)).unwrap();
    assert_eq!(apply_l_mu(&qi(0), &q11).unwrap(), q11.scale_real(&qi(-4)));
    // μ = −1, (k, j) = (1, 1): eigenvalue −2kj = −2
    let p = Bp::one_minus_zzbar().try_mul(&build_q(0, 0, &qi(1)).unwrap()).unwrap();
    assert_eq!(apply_l_mu(&qi(-1), &p).unwrap(), p.scale_real(&qi(-2)));
    let qm = q_minus_one::<Rational>(1, 1).unwrap().unwrap();
    assert_eq!(apply_l_mu(&qi(-1), &qm).unwrap(), qm.scale_real(&qi(-2)));
}

#[test]
fn angular_eigenvalues() {
    let mu = q(2, 3);
    for (k, j, e) in [(2u32, 2u32, 0i64), (3, 1, 2), (0, 2, -2)] {
        let p = build_q(k, j, &mu).unwrap();
        let rotated = &Bp::z().try_mul(&p.d_z()).unwrap() - &Bp::zbar().try_mul(&p.d_zbar()).unwrap();
        assert_eq!(rotated, p.scale_real(&qi(e)));
    }
}

#[test]
fn gauss_jacobi_small_rules() {
    let r = gauss_jacobi(0.0, 0.0, 2).unwrap();
    let s = 1.0 / 3f64.sqrt();
    assert!((r.nodes[0] + s).abs() < 1e-15 && (r.nodes[1] - s).abs() < 1e-15);
    assert!((r.weights[0] - 1.0).abs() < 1e-14 && (r.weights[1] - 1.0).abs() < 1e-14);
    let r = gauss_jacobi(0.0, 0.0, 1).unwrap();
    assert!(r.nodes[0].abs() < 1e-15 && (r.weights[0] - 2.0).abs() < 1e-15);
    let r = gauss_jacobi(1.0, 0.0, 1).unwrap();
    assert!((r.nodes[0] + 1.0 / 3.0).abs() < 1e-15 && (r.weights[0] - 2.0).abs() < 1e-15);
    assert!(gauss_jacobi(-1.0, 0.0, 3).is_err());
}

#[test]
fn disk_and_circle_rules() {
    for mu in [0.0, 0.5, 2.0] {
        let rule = disk_rule(mu, 4, 5).unwrap();
        assert!((rule.integrate_normalized(|_| Complex64::new(1.0, 0.0)) - 1.0).norm() < 1e-13);
    }
    let rule = disk_rule(0.0, 4, 9).unwrap();
    let q11 = build_q(1, 1, &0.0).unwrap();
    let q20 = build_q(2, 0, &0.0).unwrap();
    assert!((rule.inner(&q11, &q11) - 1.0 / 3.0).norm() < 1e-11);
    assert!(rule.inner(&q20, &q11).norm() < 1e-12);

    let circle = circle_rule(7).unwrap();
    assert!((circle.integrate(|_| Complex64::new(1.0, 0.0)) - 2.0).norm() < 1e-14);
    assert!(circle.integrate(|z| z).norm() < 1e-14);
    assert!((circle.integrate(|z| z * z.conj()) - 2.0).norm() < 1e-14);
}

#[test]
fn sobolev_products() {
    let rules = SobolevRules::for_degree(4).unwrap();
    let one = BiPoly::<f64>::one();
    let qm11 = q_minus_one::<Rational>(1, 1).unwrap().unwrap().to_float();
    for lambda in [1.0, 3.0] {
        assert!((inner_product_1(&one, &one, lambda, &rules) - 2.0).norm() < 1e-13);
        assert!(inner_product_1(&qm11, &one, lambda, &rules).norm() < 1e-13);
    }
    assert!((inner_product_1(&qm11, &qm11, 1.0, &rules) - 0.5).norm() < 1e-13);

    let u = |k, j| basis2::<Rational>(k, j).unwrap().unwrap().to_float();
    assert!((inner_product_2(&one, &one, &rules).unwrap() - 1.0).norm() < 1e-13);
    assert!((inner_product_2(&u(1, 1), &u(1, 1), &rules).unwrap() - 4.0 / 3.0).norm() < 1e-13);
    assert!(inner_product_2(&u(1, 1), &u(2, 2), &rules).unwrap().norm() < 1e-13);

    let g1 = gram_matrix(&GramKind::Sobolev1 { lambda: 3.0 }, 3).unwrap();
    let idx = |g: &diskladder::sobolev::GramMatrix, k, j| g.labels.iter().position(|&l| l == (k, j)).unwrap();
    assert!((g1.entry(0, 0).re - 2.0).abs() < 1e-13);
    let i = idx(&g1, 2, 1);
    assert!((g1.entry(i, i).re - 1.0).abs() < 1e-13);
    let g2 = gram_matrix(&GramKind::Sobolev2, 3).unwrap();
    let i = idx(&g2, 1, 2);
    assert!((g2.entry(i, i).re - 1.0).abs() < 1e-13);
}

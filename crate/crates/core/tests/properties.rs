use diskladder::jacobi::{apply_l, eigenvalue, jacobi_eval_recurrence, jacobi_explicit};
use diskladder::ops1d::{verify_ladder_1d, LadderKind1D};
use diskladder::ops2d::{verify_angular, verify_eigen, verify_ladder_2d, LadderKind2D};
use diskladder::polyrep::BiPoly;
use diskladder::quadrature::{disk_rule, gauss_jacobi};
use diskladder::scalar::{q, qi, rational_to_f64, Cx, Rational};
use diskladder::sobolev::{gram_matrix, GramKind};
use diskladder::zernike::build_q;
use num_complex::Complex64;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| q(n, d))
}

/// Rationals strictly greater than `floor`.
fn rational_above(floor: i64) -> impl Strategy<Value = Rational> {
    (1i64..=24, 1i64..=4).prop_map(move |(n, d)| qi(floor) + q(n, d))
}

fn bipoly() -> impl Strategy<Value = BiPoly<Rational>> {
    prop::collection::vec((0u32..4, 0u32..4, rational(), rational()), 0..5)
        .prop_map(|terms| BiPoly::from_terms(terms.into_iter().map(|(a, b, re, im)| (a, b, Cx::new(re, im)))).unwrap())
}

fn point() -> impl Strategy<Value = Complex64> {
    (0.0f64..1.0, 0.0f64..std::f64::consts::TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(p in bipoly(), r in bipoly(), s in bipoly()) {
        prop_assert_eq!(&p + &r, &r + &p);
        prop_assert_eq!(&p * &r, &r * &p);
        prop_assert_eq!(&(&p * &r) * &s, &p * &(&r * &s));
        prop_assert_eq!(&p * &(&r + &s), &(&p * &r) + &(&p * &s));
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&p * &BiPoly::one(), p.clone());
    }

    #[test]
    fn derivatives_commute_and_obey_leibniz(p in bipoly(), r in bipoly()) {
        prop_assert_eq!(p.d_z().d_zbar(), p.d_zbar().d_z());
        prop_assert_eq!((&p * &r).d_z(), &(&p.d_z() * &r) + &(&p * &r.d_z()));
    }

    #[test]
    fn swap_conj_is_an_involution(p in bipoly(), r in bipoly()) {
        prop_assert_eq!(p.swap_conj().swap_conj(), p.clone());
        prop_assert_eq!((&p * &r).swap_conj(), &p.swap_conj() * &r.swap_conj());
        prop_assert_eq!(p.d_z().swap_conj(), p.swap_conj().d_zbar());
    }

    #[test]
    fn float_and_exact_q_agree(k in 0u32..7, j in 0u32..7, mu in rational_above(-1), z in point()) {
        let exact = build_q(k, j, &mu).unwrap().to_float().eval(z);
        let float = build_q(k, j, &rational_to_f64(&mu)).unwrap().eval(z);
        prop_assert!((exact - float).norm() <= 1e-10 * (1.0 + exact.norm()), "{exact} vs {float}");
    }

    #[test]
    fn q_terms_respect_angular_order(k in 0u32..8, j in 0u32..8, mu in rational_above(-1)) {
        let p = build_q(k, j, &mu).unwrap();
        prop_assert!(p.terms().all(|(m, _)| m.a as i64 - m.b as i64 == k as i64 - j as i64));
        prop_assert!(verify_angular(&mu, k, j).pass);
        prop_assert!(verify_eigen(&mu, k, j).pass);
    }

    #[test]
    fn jacobi_eigen_relation(a in rational_above(-1), b in rational_above(-1), n in 0u32..11) {
        let p = jacobi_explicit(&a, &b, n);
        prop_assert_eq!(apply_l(&a, &b, &p), p.scale(&eigenvalue(&a, &b, n)));
    }

    #[test]
    fn recurrence_matches_exact_evaluation(a in rational_above(-1), b in rational_above(-1), n in 0u32..15, t in -32i64..=32) {
        let t = q(t, 32);
        let exact = rational_to_f64(&jacobi_explicit(&a, &b, n).eval(&t));
        let rec = jacobi_eval_recurrence(rational_to_f64(&a), rational_to_f64(&b), n, rational_to_f64(&t));
        prop_assert!((exact - rec).abs() <= 1e-11 * (1.0 + exact.abs()), "{exact} vs {rec}");
    }

    #[test]
    fn ladder_1d_random_parameters(a in rational_above(-1), b in rational_above(-1), n in 0u32..9, idx in 0usize..12) {
        let kind = LadderKind1D::ALL[idx];
        let rec = verify_ladder_1d(kind, &a, &b, n);
        prop_assert!(rec.pass || rec.is_skipped(), "{rec:?}");
    }

    #[test]
    fn ladder_2d_random_mu(mu in rational_above(0), k in 0u32..6, j in 0u32..6, idx in 0usize..16) {
        let rec = verify_ladder_2d(LadderKind2D::ALL[idx], &mu, k, j);
        prop_assert!(rec.pass, "{rec:?}");
    }

    #[test]
    fn gauss_jacobi_exactness(a in -0.9f64..3.0, b in -0.9f64..3.0, n in 1usize..12) {
        let rule = gauss_jacobi(a, b, n).unwrap();
        let reference = gauss_jacobi(a, b, 4 * n).unwrap();
        for m in 0..2 * n as i32 {
            let x = rule.integrate(|t| t.powi(m));
            let y = reference.integrate(|t| t.powi(m));
            prop_assert!((x - y).abs() <= 1e-11 * (1.0 + y.abs()), "m={m}: {x} vs {y}");
        }
    }

    #[test]
    fn disk_rule_radial_moments(mu in -0.9f64..4.0, m in 0u32..8) {
        // b_μ ∫ |z|^{2m} (1−|z|²)^μ = m! / (μ+2)_m
        let rule = disk_rule(mu, m as usize / 2 + 2, 3).unwrap();
        let got = rule.integrate_normalized(|z| Complex64::new(z.norm_sqr().powi(m as i32), 0.0));
        let expect = (1..=m).map(|i| i as f64 / (mu + 1.0 + i as f64)).product::<f64>();
        prop_assert!((got.re - expect).abs() <= 1e-13 && got.im.abs() <= 1e-14, "{got} vs {expect}");
    }
}

#[test]
fn legendre_moments_exact() {
    for n in 1..10usize {
        let rule = gauss_jacobi(0.0, 0.0, n).unwrap();
        for m in 0..2 * n as i32 {
            let expect = if m % 2 == 0 { 2.0 / (m + 1) as f64 } else { 0.0 };
            assert!((rule.integrate(|t| t.powi(m)) - expect).abs() < 1e-13, "n={n} m={m}");
        }
    }
}

#[test]
fn gram_error_plateaus_under_refinement() {
    // Once the rule is exact, refining it cannot move the Gram error off
    // round-off level.
    for mu in [0.0, 1.5] {
        let base = gram_matrix(&GramKind::Weight { mu }, 8).unwrap();
        let rule = disk_rule(mu, 2 * (8 / 2 + 2), 2 * (2 * 8 + 1)).unwrap();
        let labels = &base.labels;
        let polys: Vec<_> = labels.iter().map(|&(k, j)| build_q(k, j, &mu).unwrap()).collect();
        for (r, p) in polys.iter().enumerate() {
            for (c, s) in polys.iter().enumerate() {
                let fine = rule.inner(p, s);
                assert!((fine - base.entry(r, c)).norm() < 1e-12, "({r},{c})");
            }
        }
        assert!(base.max_diagonal_rel_error() < 1e-12);
    }
}

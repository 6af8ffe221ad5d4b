//! Cross-module checks through the public API, each against an oracle that
//! shares no code path with the function under test.

use simplex_fourier::classical_poly::{jacobi_eval, JacobiParams};
use simplex_fourier::fourier_xform::{ft_closed_form, ft_numeric, g_eval, GParams};
use simplex_fourier::hypergeom::pfq;
use simplex_fourier::numerics::{c, gamma};
use simplex_fourier::quadrature::{gauss_legendre, simplex_rule};
use simplex_fourier::recurrences::{coefficients, residual, terms, RelationId, RelationParams};
use simplex_fourier::sfamily::{s_eval, s_norm, s_orthogonality_lhs, SParams};
use simplex_fourier::simplex_poly::{h_norm, simplex_poly_eval};
use simplex_fourier::{Complex, MultiIndex, ParamVector};
use std::f64::consts::PI;

fn gp(n: &[usize], a: &[f64], alpha: &[f64]) -> GParams {
    GParams::new(MultiIndex::new(n), ParamVector::new(a), ParamVector::new(alpha)).unwrap()
}

fn sp(n: &[usize], a: &[f64], b: &[f64]) -> SParams {
    SParams::new(MultiIndex::new(n), ParamVector::new(a), ParamVector::new(b)).unwrap()
}

#[test]
fn triangle_norm_by_midpoint_refinement() {
    // brute-force Riemann sum on a fine triangular grid, alpha = 0
    let n = MultiIndex::new(&[1, 1]);
    let alpha = ParamVector::new(&[0.0, 0.0, 0.0]);
    let k = 400;
    let h = 1.0 / k as f64;
    let mut sum = 0.0;
    for i in 0..k {
        for j in 0..k - i {
            // centroid of the lower cell triangle
            let x = [(i as f64 + 1.0 / 3.0) * h, (j as f64 + 1.0 / 3.0) * h];
            sum += simplex_poly_eval(&n, &alpha, &x).unwrap().powi(2) * h * h / 2.0;
            if i + j + 1 < k {
                let y = [(i as f64 + 2.0 / 3.0) * h, (j as f64 + 2.0 / 3.0) * h];
                sum += simplex_poly_eval(&n, &alpha, &y).unwrap().powi(2) * h * h / 2.0;
            }
        }
    }
    let hn = h_norm(&n, &alpha).unwrap();
    assert!((sum - hn).abs() < 1e-4 * hn, "{sum} vs {hn}");
}

#[test]
fn simplex_rule_integrates_monomials() {
    // ∫_T x^p y^q dx dy = p! q! / (p + q + 2)!
    let rule = simplex_rule(2, 6, &[0.0, 0.0, 0.0]).unwrap();
    let fact = |k: u32| (1..=k).map(f64::from).product::<f64>();
    for p in 0..=3u32 {
        for q in 0..=3 - p {
            let v = rule.integrate(|x| x[0].powi(p as i32) * x[1].powi(q as i32));
            let exact = fact(p) * fact(q) / fact(p + q + 2);
            assert!((v - exact).abs() < 1e-14 * exact, "{p} {q}: {v} vs {exact}");
        }
    }
}

#[test]
fn transform_matches_plain_riemann_sum() {
    // crude trapezoid sum of e^{-i xi x} g_1(x) on [-40, 40]
    let p = gp(&[2], &[1.3, 0.9], &[0.4, -0.2]);
    let xi = 1.7;
    let h = 1e-3;
    let mut acc = Complex::new(0.0, 0.0);
    let steps = (80.0 / h) as usize;
    for i in 0..=steps {
        let x = -40.0 + i as f64 * h;
        let w = if i == 0 || i == steps { 0.5 } else { 1.0 };
        acc += w * h * Complex::from_polar(g_eval(&p, &[x]).unwrap(), -xi * x);
    }
    let closed = ft_closed_form(&p, &[xi]).unwrap();
    assert!((acc - closed).norm() < 1e-8, "{acc} vs {closed}");
}

#[test]
fn rank_two_transform_numeric_and_closed() {
    let p = gp(&[1, 2], &[0.8, 1.1, 1.6], &[0.3, 1.2, -0.4]);
    let xi = [-1.0, 3.0];
    let closed = ft_closed_form(&p, &xi).unwrap();
    let numeric = ft_numeric(&p, &xi, 1e-11).unwrap();
    assert!((closed - numeric).norm() <= 1e-9 * (1.0 + closed.norm()));
}

#[test]
fn first_s_function_is_a_hahn_type_polynomial() {
    // _1S_1 is linear in x: check against the two-term series directly
    let (a1, a2, b1, b2) = (0.7, 1.3, 0.9, 1.6);
    let p = sp(&[1], &[a1, a2], &[b1, b2]);
    for x in [-1.5, 0.0, 0.4, 2.2] {
        let v = s_eval(&p, &[c(x)], simplex_fourier::fourier_xform::Form::Hypergeometric).unwrap();
        let expect = 1.0 - (a1 + a2 + b1 + b2) * (a2 + x / 2.0) / ((a2 + b2) * (a1 + a2));
        assert!((v.re - expect).abs() < 1e-14 && v.im.abs() < 1e-14);
    }
}

#[test]
fn s_norm_at_degree_zero_is_a_beta_integral() {
    // n = 0 leaves the weight alone; Barnes' first lemma with t = x/2 gives
    // 4π Γ(a1+a2) Γ(a1+b1) Γ(a2+b2) Γ(b1+b2) / Γ(a1+a2+b1+b2)
    let (a1, a2, b1, b2) = (0.8, 1.2, 0.6, 1.4);
    let p = sp(&[0], &[a1, a2], &[b1, b2]);
    let g = |z: f64| gamma(c(z)).unwrap().re;
    let barnes = 4.0 * PI * g(a1 + a2) * g(a1 + b1) * g(a2 + b2) * g(b1 + b2) / g(a1 + a2 + b1 + b2);
    let norm = s_norm(&p).unwrap();
    assert!((norm - barnes).abs() < 1e-12 * barnes, "{norm} vs {barnes}");
    let lhs = s_orthogonality_lhs(&p, &MultiIndex::new(&[0]), 1e-10).unwrap();
    assert!((lhs.re - barnes).abs() < 1e-8 * barnes);
}

#[test]
fn jacobi_against_legendre_quadrature_orthogonality() {
    let rule = gauss_legendre(12).unwrap();
    for (i, j) in [(1, 3), (2, 4), (0, 5)] {
        let v = rule.integrate(|x| {
            jacobi_eval(&JacobiParams::new(i, 0.0, 0.0), c(x[0])).re * jacobi_eval(&JacobiParams::new(j, 0.0, 0.0), c(x[0])).re
        });
        assert!(v.abs() < 1e-14);
    }
}

#[test]
fn h3_is_a_contiguous_relation_of_plain_series() {
    // rebuild the three 3F2 values with pfq and the printed coefficients
    let (m1, m2, m3, s1, s2, z) = (1.4, -3.0, 0.9, 1.8, 2.3, c(0.6));
    let params = RelationParams::Hyper { m: [m1, m2, m3], s: [s1, s2], z };
    let f = |a: f64, b: f64| pfq(&[c(a), c(m2), c(m3)], &[c(b), c(s2)], z).unwrap();
    let sum = s1 * f(m1, s1) + (m1 - s1) * f(m1, s1 + 1.0) - m1 * f(m1 + 1.0, s1 + 1.0);
    assert!(sum.norm() < 1e-14);
    assert_eq!(terms(RelationId::H3, &params).unwrap(), vec![f(m1, s1), f(m1, s1 + 1.0), f(m1 + 1.0, s1 + 1.0)]);
    assert_eq!(coefficients(RelationId::H3, &params).unwrap(), vec![c(s1), c(m1 - s1), c(-m1)]);
}

#[test]
fn every_relation_has_matching_lengths() {
    let s1 = RelationParams::s(&[2], &[0.9, 1.4], &[1.2, 0.8], &[0.3]).unwrap();
    let s2 = RelationParams::s(&[2, 1], &[0.9, 1.4, 1.1], &[1.2, 0.8, 1.7], &[0.3, -0.6]).unwrap();
    let s3 = RelationParams::s(&[1, 2, 1], &[0.9, 1.4, 1.1, 2.0], &[1.2, 0.8, 1.7, 1.3], &[0.3, -0.6, 1.2]).unwrap();
    let h = RelationParams::Hyper { m: [1.7, -2.0, 0.8], s: [1.6, 2.1], z: c(0.4) };
    for id in RelationId::ALL {
        let p = match id.name() {
            n if n.starts_with('H') => &h,
            n if n.starts_with("S1") => &s1,
            n if n.starts_with("S2") => &s2,
            _ => &s3,
        };
        let cs = coefficients(id, p).unwrap();
        let ts = terms(id, p).unwrap();
        assert_eq!(cs.len(), ts.len(), "{id}");
        assert!(cs.len() == 3 || cs.len() == 4);
        if id != RelationId::S2Eq103 {
            assert!(residual(id, p).unwrap() < 1e-10, "{id}");
        }
    }
}

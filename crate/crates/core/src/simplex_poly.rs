//! The Jacobi-product orthogonal basis on the simplex `T^r`.
//!
//! `P_n^{(α)}(x) = Π_j (1-|x_{j-1}|)^{n_j} P_{n_j}^{(a_j, α_j)}(2x_j/(1-|x_{j-1}|) - 1)`
//! with `a_j = 2|n^{j+1}| + |α^{j+1}| + r - j`. Each factor is evaluated in the
//! homogeneous form `q^n P_n(p/q)`, so points on the facets `|x_{j-1}| = 1`
//! need no special casing.

use crate::classical_poly::jacobi_homogeneous;
use crate::error::{Error, Result};
use crate::index::{AlphaVector, MultiIndex};
use crate::numerics::{c, factorial, ln_gamma_real};
use crate::quadrature::{Domain, QuadratureRule};
use crate::report::{ParamsBuilder, VerificationReport};

fn check_dims(n: &MultiIndex, alpha: &AlphaVector) -> Result<usize> {
    let r = n.r();
    if r == 0 || alpha.len() != r + 1 {
        return Err(Error::DimensionMismatch(format!(
            "multi-index of length {r} needs {} alpha entries, got {}",
            r + 1,
            alpha.len()
        )));
    }
    Ok(r)
}

/// Jacobi parameter `a_j` of the `j`-th factor (1-based `j`).
pub fn factor_alpha(n: &MultiIndex, alpha: &AlphaVector, j: usize) -> f64 {
    let r = n.r();
    2.0 * n.tail(j + 1) as f64 + alpha.tail(j + 1) + (r - j) as f64
}

pub fn simplex_poly_eval(n: &MultiIndex, alpha: &AlphaVector, x: &[f64]) -> Result<f64> {
    let r = check_dims(n, alpha)?;
    if x.len() != r {
        return Err(Error::DimensionMismatch(format!(
            "point has {} coordinates, simplex dimension is {r}",
            x.len()
        )));
    }
    let mut rest = Vec::with_capacity(r);
    let mut left = 1.0;
    for &xj in x {
        rest.push(left);
        left -= xj;
    }
    simplex_poly_eval_split(n, alpha, x, &rest)
}

/// Same as [`simplex_poly_eval`] with the remaining masses
/// `rest[j-1] = 1 - x_1 - ... - x_{j-1}` supplied by the caller, for points
/// near a vertex where forming them by subtraction would cancel.
pub fn simplex_poly_eval_split(n: &MultiIndex, alpha: &AlphaVector, x: &[f64], rest: &[f64]) -> Result<f64> {
    let r = check_dims(n, alpha)?;
    if x.len() != r || rest.len() != r {
        return Err(Error::DimensionMismatch(format!(
            "point has {} coordinates and {} masses, simplex dimension is {r}",
            x.len(),
            rest.len()
        )));
    }
    let mut value = 1.0;
    for j in 1..=r {
        let p = c(2.0 * x[j - 1] - rest[j - 1]);
        let q = c(rest[j - 1]);
        value *= jacobi_homogeneous(n[j - 1], factor_alpha(n, alpha, j), alpha[j - 1], p, q).re;
    }
    Ok(value)
}

/// Squared norm `h_n^{(α)}` against `W_α`, assembled in log space.
pub fn h_norm(n: &MultiIndex, alpha: &AlphaVector) -> Result<f64> {
    let r = check_dims(n, alpha)?;
    if !alpha.all_greater(-1.0) {
        return Err(Error::ParameterRange("alpha entries must exceed -1".into()));
    }
    let mut log_h = 0.0;
    for j in 1..=r {
        let nj = n[j - 1] as f64;
        let aj = alpha[j - 1];
        let cj = 2.0 * n.tail(j + 1) as f64 + alpha.tail(j + 1) + (r - j) as f64 + 1.0;
        log_h += ln_gamma_real(cj + nj)? + ln_gamma_real(1.0 + aj + nj)?
            - factorial(n[j - 1]).ln()
            - (cj + aj + 2.0 * nj).ln()
            - ln_gamma_real(cj + aj + nj)?;
    }
    Ok(log_h.exp())
}

/// `|L[P](x) + |n|(|n| + |α| + r) P(x)|` with the second-order simplex
/// operator `L` discretized by central differences of width `step`.
pub fn pde_residual(n: &MultiIndex, alpha: &AlphaVector, x: &[f64], step: f64) -> Result<f64> {
    let r = check_dims(n, alpha)?;
    if x.len() != r {
        return Err(Error::DimensionMismatch("point dimension".into()));
    }
    let sum: f64 = x.iter().sum();
    if x.iter().any(|&xi| xi - step <= 0.0) || sum + 2.0 * step >= 1.0 {
        return Err(Error::StencilOutsideDomain);
    }
    let p = |y: &[f64]| simplex_poly_eval(n, alpha, y);
    let shifted = |moves: &[(usize, f64)]| {
        let mut y = x.to_vec();
        for &(i, d) in moves {
            y[i] += d;
        }
        p(&y)
    };
    let h = step;
    let p0 = p(x)?;
    let abs_alpha = alpha.total();
    let mut l = 0.0;
    for i in 0..r {
        let fp = shifted(&[(i, h)])?;
        let fm = shifted(&[(i, -h)])?;
        let d2 = (fp - 2.0 * p0 + fm) / (h * h);
        let d1 = (fp - fm) / (2.0 * h);
        l += x[i] * (1.0 - x[i]) * d2 + ((alpha[i] + 1.0) - (abs_alpha + r as f64 + 1.0) * x[i]) * d1;
        for j in i + 1..r {
            let dij = (shifted(&[(i, h), (j, h)])? - shifted(&[(i, h), (j, -h)])?
                - shifted(&[(i, -h), (j, h)])?
                + shifted(&[(i, -h), (j, -h)])?)
                / (4.0 * h * h);
            l -= 2.0 * x[i] * x[j] * dij;
        }
    }
    let deg = n.total() as f64;
    Ok((l + deg * (deg + abs_alpha + r as f64) * p0).abs())
}

/// Quadrature of `W_α P_n P_m` against `h_n δ_{n,m}`.
///
/// Passes when `|LHS - RHS| ≤ tol · max(1, sqrt(h_n h_m))`.
pub fn orthogonality_check(
    n: &MultiIndex,
    m: &MultiIndex,
    alpha: &AlphaVector,
    rule: &QuadratureRule,
    tol: f64,
) -> Result<VerificationReport> {
    let r = check_dims(n, alpha)?;
    check_dims(m, alpha)?;
    if rule.domain != Domain::Simplex(r) {
        return Err(Error::RuleMismatch(format!("expected a simplex({r}) rule, got {:?}", rule.domain)));
    }
    if rule.exponents.as_slice() != alpha.entries() {
        return Err(Error::RuleMismatch("rule weight exponents differ from alpha".into()));
    }
    let need = n.total() + m.total();
    if rule.exactness().is_none_or(|d| d < need) {
        return Err(Error::RuleMismatch(format!("rule is not exact to degree {need}")));
    }
    let lhs = rule.integrate(|x| {
        simplex_poly_eval(n, alpha, x).unwrap_or(f64::NAN) * simplex_poly_eval(m, alpha, x).unwrap_or(f64::NAN)
    });
    let hn = h_norm(n, alpha)?;
    let hm = h_norm(m, alpha)?;
    let rhs = if n == m { hn } else { 0.0 };
    let params = ParamsBuilder::new()
        .with("n", n.entries())
        .with("m", m.entries())
        .with("alpha", alpha.entries())
        .build();
    Ok(VerificationReport::compare(
        "simplex_orthogonality",
        params,
        c(lhs),
        c(rhs),
        (hn * hm).sqrt().max(1.0),
        tol,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical_poly::{jacobi_shifted_eval, JacobiParams};
    use crate::index::choose;
    use crate::quadrature::simplex_rule;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn av(v: &[f64]) -> AlphaVector {
        AlphaVector::new(v)
    }

    #[test]
    fn constant_basis_element() {
        let n = MultiIndex::zeros(3);
        let a = av(&[0.2, 0.4, -0.3, 1.0]);
        assert_eq!(simplex_poly_eval(&n, &a, &[0.1, 0.2, 0.3]).unwrap(), 1.0);
    }

    #[test]
    fn one_dimensional_reduces_to_shifted_jacobi() {
        let a = av(&[0.3, 1.2]);
        for k in 0..5 {
            let v = simplex_poly_eval(&MultiIndex::new(&[k]), &a, &[0.37]).unwrap();
            let j = jacobi_shifted_eval(&JacobiParams::new(k, 1.2, 0.3), 0.37).re;
            assert_relative_eq!(v, j, max_relative = 1e-14);
        }
    }

    #[test]
    fn hand_expanded_second_factor() {
        let v = simplex_poly_eval(&MultiIndex::new(&[0, 1]), &av(&[0.0, 0.0, 0.0]), &[0.2, 0.3]).unwrap();
        assert_relative_eq!(v, -0.2, max_relative = 1e-14);
    }

    #[test]
    fn boundary_facet_is_finite() {
        // |x_1| = 1 makes the inner argument 2x_2/0 - 1; the polynomial is still defined
        let n = MultiIndex::new(&[1, 2]);
        let a = av(&[0.5, 0.1, 0.7]);
        let v = simplex_poly_eval(&n, &a, &[1.0, 0.0]).unwrap();
        assert!(v.is_finite());
        let near = simplex_poly_eval(&n, &a, &[1.0 - 1e-9, 0.0]).unwrap();
        assert!((v - near).abs() < 1e-6);
    }

    #[test]
    fn norm_examples() {
        assert_relative_eq!(h_norm(&MultiIndex::new(&[0]), &av(&[0.0, 0.0])).unwrap(), 1.0, max_relative = 1e-14);
        assert_relative_eq!(h_norm(&MultiIndex::new(&[0, 0]), &av(&[0.0, 0.0, 0.0])).unwrap(), 0.5, max_relative = 1e-14);
        assert_relative_eq!(h_norm(&MultiIndex::new(&[1]), &av(&[0.0, 0.0])).unwrap(), 1.0 / 3.0, max_relative = 1e-14);
        assert!(h_norm(&MultiIndex::new(&[1]), &av(&[-1.0, 0.0])).is_err());
    }

    #[test]
    fn dimension_errors() {
        let e = simplex_poly_eval(&MultiIndex::new(&[1, 1]), &av(&[0.0, 0.0]), &[0.1, 0.1]);
        assert!(matches!(e, Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn pde_examples() {
        let z = pde_residual(&MultiIndex::zeros(2), &av(&[0.1, 0.2, 0.3]), &[0.2, 0.3], 1e-4).unwrap();
        assert_eq!(z, 0.0);
        let r1 = pde_residual(&MultiIndex::new(&[1]), &av(&[0.0, 0.0]), &[0.4], 1e-4).unwrap();
        assert!(r1 <= 1e-6, "{r1}");
        let r2 = pde_residual(&MultiIndex::new(&[1, 1]), &av(&[0.5, 0.5, 0.5]), &[0.3, 0.3], 1e-4).unwrap();
        assert!(r2 <= 1e-5, "{r2}");
        let e = pde_residual(&MultiIndex::new(&[1]), &av(&[0.0, 0.0]), &[1e-5], 1e-4);
        assert_eq!(e, Err(Error::StencilOutsideDomain));
    }

    #[test]
    fn pde_residual_converges_quadratically() {
        let n = MultiIndex::new(&[2, 1, 1]);
        let a = av(&[0.5, 0.2, 0.1, 0.7]);
        let x = [0.2, 0.3, 0.1];
        let r1 = pde_residual(&n, &a, &x, 4e-3).unwrap();
        let r2 = pde_residual(&n, &a, &x, 2e-3).unwrap();
        let r3 = pde_residual(&n, &a, &x, 1e-3).unwrap();
        // degree-4 polynomial: the O(h²) term is exact, ratios near 4
        assert!(r1 / r2 > 3.0 && r2 / r3 > 3.0, "{r1} {r2} {r3}");
    }

    #[test]
    fn orthogonality_examples() {
        let a = av(&[0.0, 0.0, 0.0]);
        let rule = simplex_rule(2, 2, a.entries()).unwrap();
        let z = MultiIndex::zeros(2);
        let rep = orthogonality_check(&z, &z, &a, &rule, 1e-12).unwrap();
        assert!(rep.passed);
        assert_relative_eq!(rep.lhs.re, 0.5, max_relative = 1e-14);
        let rep = orthogonality_check(&MultiIndex::new(&[1, 0]), &MultiIndex::new(&[0, 1]), &a, &rule, 1e-12).unwrap();
        assert!(rep.passed && rep.lhs.re.abs() < 1e-12);

        let a1 = av(&[0.0, 0.0]);
        let rule1 = simplex_rule(1, 2, a1.entries()).unwrap();
        let one = MultiIndex::new(&[1]);
        let rep = orthogonality_check(&one, &one, &a1, &rule1, 1e-12).unwrap();
        assert_relative_eq!(rep.lhs.re, 1.0 / 3.0, max_relative = 1e-13);
    }

    #[test]
    fn simplex_volume_is_inverse_factorial() {
        for r in 1..=4 {
            let a = AlphaVector::new(&vec![0.0; r + 1]);
            let rule = simplex_rule(r, 0, a.entries()).unwrap();
            let z = MultiIndex::zeros(r);
            let rep = orthogonality_check(&z, &z, &a, &rule, 1e-12).unwrap();
            assert_relative_eq!(rep.lhs.re, 1.0 / factorial(r), max_relative = 1e-13);
        }
    }

    #[test]
    fn rule_mismatch_is_reported() {
        let a = av(&[0.0, 0.0, 0.0]);
        let rule = simplex_rule(2, 1, a.entries()).unwrap();
        let n = MultiIndex::new(&[1, 1]);
        assert!(matches!(orthogonality_check(&n, &n, &a, &rule, 1e-10), Err(Error::RuleMismatch(_))));
        let other = simplex_rule(2, 4, &[0.5, 0.0, 0.0]).unwrap();
        assert!(matches!(orthogonality_check(&n, &n, &a, &other, 1e-10), Err(Error::RuleMismatch(_))));
        let r3 = simplex_rule(3, 4, &[0.0; 4]).unwrap();
        assert!(matches!(orthogonality_check(&n, &n, &a, &r3, 1e-10), Err(Error::RuleMismatch(_))));
    }

    #[test]
    fn solutions_per_degree() {
        for r in 1..=3 {
            for d in 0..=4 {
                assert_eq!(MultiIndex::with_total(r, d).len(), choose(d + r - 1, d));
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn quadrature_reproduces_norms(r in 1usize..=3, seed in proptest::collection::vec(-0.5f64..2.0, 4), deg in 0usize..=4) {
            let a = AlphaVector::new(&seed[..=r]);
            let rule = simplex_rule(r, 2 * deg, a.entries()).unwrap();
            for n in MultiIndex::with_total(r, deg) {
                let rep = orthogonality_check(&n, &n, &a, &rule, 1e-10).unwrap();
                let rel = (rep.lhs.re - rep.rhs.re).abs() / rep.rhs.re;
                prop_assert!(rel <= 1e-10, "n={:?} rel={}", n, rel);
            }
        }

        #[test]
        fn distinct_indices_are_orthogonal(r in 1usize..=3, seed in proptest::collection::vec(-0.5f64..2.0, 4)) {
            let a = AlphaVector::new(&seed[..=r]);
            let idx = MultiIndex::up_to_total(r, 3);
            let rule = simplex_rule(r, 6, a.entries()).unwrap();
            for n in &idx {
                for m in &idx {
                    if n == m { continue; }
                    let rep = orthogonality_check(n, m, &a, &rule, 1e-10).unwrap();
                    let scale = (h_norm(n, &a).unwrap() * h_norm(m, &a).unwrap()).sqrt();
                    prop_assert!(rep.lhs.re.abs() <= 1e-10 * scale);
                }
            }
        }
    }
}

//! The orthogonal family `_rS_n(x; a, b)` and its Gamma-product weight.
//!
//! `_rS_n(x; a, b) = Π_j (|a^{j+1}| + x_j/2)_{|n^{j+1}|}
//!     · 3F2(-n_j, n_j + 2|n^{j+1}| + |a^j| + |b^j| - 1, |n^{j+1}| + |a^{j+1}| + x_j/2;
//!           2|n^{j+1}| + |a^{j+1}| + |b^{j+1}|, |n^{j+1}| + |a^j|; 1)`
//!
//! Every factor depends on one coordinate only, and so does the weight, so
//! the r-dimensional orthogonality integral is a product of line integrals.

use crate::classical_poly::{hahn_eval, HahnParams};
use crate::error::{Error, Result};
use crate::fourier_xform::Form;
use crate::hypergeom::f32_unit;
use crate::index::{MultiIndex, ParamVector};
use crate::numerics::{c, factorial, i_pow, ln_gamma, ln_gamma_real, pochhammer, pochhammer_real, Complex, I};
use crate::quadrature::{line_rule, LineRuleSpec};
use crate::report::{ParamsBuilder, VerificationReport};
use crate::simplex_poly::h_norm;
use std::f64::consts::PI;

#[derive(Debug, Clone, PartialEq)]
pub struct SParams {
    pub n: MultiIndex,
    pub a: ParamVector,
    pub b: ParamVector,
}

impl SParams {
    pub fn new(n: MultiIndex, a: ParamVector, b: ParamVector) -> Result<Self> {
        let r = n.r();
        if r == 0 || a.len() != r + 1 || b.len() != r + 1 {
            return Err(Error::DimensionMismatch(format!(
                "rank {r} needs {} entries in a and b, got {} and {}",
                r + 1,
                a.len(),
                b.len()
            )));
        }
        Ok(Self { n, a, b })
    }

    pub fn r(&self) -> usize {
        self.n.r()
    }

    /// Same parameters with another multi-index.
    pub fn with_index(&self, n: MultiIndex) -> Result<Self> {
        Self::new(n, self.a.clone(), self.b.clone())
    }

    /// `(m; b, a)`: the second factor of the orthogonality integrand.
    pub fn swapped(&self, m: MultiIndex) -> Result<Self> {
        Self::new(m, self.b.clone(), self.a.clone())
    }

    fn require_positive(&self) -> Result<()> {
        if self.a.all_greater(0.0) && self.b.all_greater(0.0) {
            Ok(())
        } else {
            Err(Error::ParameterRange("a_j and b_j must be positive".into()))
        }
    }

    fn describe(&self) -> ParamsBuilder {
        ParamsBuilder::new()
            .with("n", self.n.entries())
            .with("a", self.a.entries())
            .with("b", self.b.entries())
    }
}

/// Factor of `_rS` belonging to axis `j` (1-based).
pub fn s_axis(p: &SParams, j: usize, x: Complex, form: Form) -> Result<Complex> {
    let nj = p.n[j - 1];
    let njf = nj as f64;
    let tail_n = p.n.tail(j + 1);
    let tn = tail_n as f64;
    let (a1, aj) = (p.a.tail(j + 1), p.a.tail(j));
    let (b1, bj) = (p.b.tail(j + 1), p.b.tail(j));
    let shift = pochhammer(a1 + x / 2.0, tail_n);
    match form {
        Form::Hypergeometric => {
            let f = f32_unit(
                [c(-njf), c(njf + 2.0 * tn + aj + bj - 1.0), tn + a1 + x / 2.0],
                [c(2.0 * tn + a1 + b1), c(tn + aj)],
            )?;
            Ok(shift * f)
        }
        Form::Hahn => {
            let hp = HahnParams::real(nj, tn + a1, p.b[j - 1], tn + b1, p.a[j - 1]);
            let poly = hahn_eval(&hp, -I * x / 2.0)?;
            let den = i_pow(nj) * pochhammer_real(tn + aj, nj) * pochhammer_real(2.0 * tn + a1 + b1, nj);
            Ok(factorial(nj) * shift * poly / den)
        }
    }
}

pub fn s_eval(p: &SParams, x: &[Complex], form: Form) -> Result<Complex> {
    if x.len() != p.r() {
        return Err(Error::DimensionMismatch(format!(
            "point has {} coordinates, rank is {}",
            x.len(),
            p.r()
        )));
    }
    let mut v = c(1.0);
    for j in 1..=p.r() {
        v *= s_axis(p, j, x[j - 1], form)?;
    }
    Ok(v)
}

/// `ln` of the axis-`j` weight `Γ(a_j - ix/2) Γ(|a^{j+1}| + ix/2) Γ(b_j + ix/2) Γ(|b^{j+1}| - ix/2)`.
fn ln_w_axis(p: &SParams, j: usize, x: f64) -> Result<Complex> {
    let h = I * (x / 2.0);
    Ok(ln_gamma(p.a[j - 1] - h)?
        + ln_gamma(p.a.tail(j + 1) + h)?
        + ln_gamma(p.b[j - 1] + h)?
        + ln_gamma(p.b.tail(j + 1) - h)?)
}

/// `W_r(x; a, b)`, summed in log space and exponentiated once.
pub fn w_weight(p: &SParams, x: &[f64]) -> Result<Complex> {
    if x.len() != p.r() {
        return Err(Error::DimensionMismatch("point dimension".into()));
    }
    let mut lw = c(0.0);
    for j in 1..=p.r() {
        lw += ln_w_axis(p, j, x[j - 1])?;
    }
    Ok(lw.exp())
}

/// Diagonal value of the axis-`j` integral. The product over `j` equals
/// the closed-form norm; it is used to split the error budget.
fn axis_norm(p: &SParams, j: usize) -> Result<f64> {
    let nj = p.n[j - 1];
    let njf = nj as f64;
    let tn = p.n.tail(j + 1) as f64;
    let cj = 2.0 * tn + p.a.tail(j + 1) + p.b.tail(j + 1);
    let alj = p.a[j - 1] + p.b[j - 1] - 1.0;
    let log_h = ln_gamma_real(cj + njf)? + ln_gamma_real(1.0 + alj + njf)?
        - factorial(nj).ln()
        - (cj + alj + 2.0 * njf).ln()
        - ln_gamma_real(cj + alj + njf)?;
    let log_rest = 2.0 * factorial(nj).ln() + ln_gamma_real(tn + p.a.tail(j))? + ln_gamma_real(tn + p.b.tail(j))?
        - 2.0 * pochhammer_real(cj, nj).ln();
    Ok(4.0 * PI * (log_h + log_rest).exp())
}

/// `2^{2r} π^r h_n^{(a+b-1)} Π_j (n_j!)² Γ(|n^{j+1}|+|a^j|) Γ(|n^{j+1}|+|b^j|) / (2|n^{j+1}|+|a^{j+1}|+|b^{j+1}|)_{n_j}²`.
pub fn s_norm(p: &SParams) -> Result<f64> {
    p.require_positive()?;
    let r = p.r();
    let alpha: Vec<f64> = p.a.entries().iter().zip(p.b.entries()).map(|(x, y)| x + y - 1.0).collect();
    let h = h_norm(&p.n, &ParamVector::new(&alpha))?;
    let mut log_v = 2.0 * r as f64 * 2f64.ln() + r as f64 * PI.ln() + h.ln();
    for j in 1..=r {
        let nj = p.n[j - 1];
        let tn = p.n.tail(j + 1) as f64;
        log_v += 2.0 * factorial(nj).ln() + ln_gamma_real(tn + p.a.tail(j))? + ln_gamma_real(tn + p.b.tail(j))?
            - 2.0 * pochhammer_real(2.0 * tn + p.a.tail(j + 1) + p.b.tail(j + 1), nj).ln();
    }
    Ok(log_v.exp())
}

/// Integrand decay: each Gamma factor contributes `e^{-π|x|/4}`; the
/// margin below π absorbs the polynomial growth.
const DECAY: f64 = 0.75 * PI;
const ENVELOPE_REACH: f64 = 60.0;

fn axis_integrand(p: &SParams, q: &SParams, j: usize, x: f64) -> Result<Complex> {
    let s1 = s_axis(p, j, I * x, Form::Hypergeometric)?;
    let s2 = s_axis(q, j, -I * x, Form::Hypergeometric)?;
    Ok(ln_w_axis(p, j, x)?.exp() * s1 * s2)
}

/// `∫ w_j(x) s_j^n(ix; a, b) s_j^m(-ix; b, a) dx` with absolute error `tol`.
pub fn axis_orthogonality_integral(p: &SParams, m: &MultiIndex, j: usize, tol: f64) -> Result<Complex> {
    let q = p.swapped(m.clone())?;
    // sampled envelope with a safety factor; the integrand is smooth on this scale
    let mut env: f64 = 0.0;
    let steps = (8.0 * ENVELOPE_REACH) as usize;
    for i in 0..=2 * steps {
        let x = -ENVELOPE_REACH + i as f64 / 8.0;
        let v = axis_integrand(p, &q, j, x)?.norm() * (DECAY * x.abs()).exp();
        env = env.max(v);
    }
    let rule = line_rule(&LineRuleSpec::new(DECAY, tol).with_envelope(4.0 * env))?;
    rule.points()
        .map(|(x, w)| axis_integrand(p, &q, j, x[0]).map(|v| w * v))
        .sum()
}

/// Left side of the orthogonality relation for `(n, m)` as a product of
/// axis integrals; each axis gets a share of `rel_tol` relative to the
/// geometric mean of its two diagonal values.
pub fn s_orthogonality_lhs(p: &SParams, m: &MultiIndex, rel_tol: f64) -> Result<Complex> {
    p.require_positive()?;
    if m.r() != p.r() {
        return Err(Error::DimensionMismatch("index ranks differ".into()));
    }
    let pm = p.with_index(m.clone())?;
    let mut v = c(1.0);
    for j in 1..=p.r() {
        let scale = (axis_norm(p, j)? * axis_norm(&pm, j)?).sqrt();
        v *= axis_orthogonality_integral(p, m, j, rel_tol * scale)?;
    }
    Ok(v)
}

/// Checks `∫ W _rS_n(ix; a, b) _rS_m(-ix; b, a) dx = norm · δ_{nm}` with the
/// residual measured against `sqrt(norm_n · norm_m)`.
pub fn s_orthogonality_check(p: &SParams, m: &MultiIndex, tolerance: f64) -> Result<VerificationReport> {
    let lhs = s_orthogonality_lhs(p, m, tolerance * 1e-2 / p.r() as f64)?;
    let norm_n = s_norm(p)?;
    let norm_m = s_norm(&p.with_index(m.clone())?)?;
    let rhs = if *m == p.n { norm_n } else { 0.0 };
    let params = p.describe().with("m", m.entries()).build();
    Ok(VerificationReport::compare(
        "s_orthogonality",
        params,
        lhs,
        c(rhs),
        (norm_n * norm_m).sqrt(),
        tolerance,
    ))
}

/// The factorizations of `_rS` into lower-rank members.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SRelation {
    /// Rank two in terms of `_1S` in the first variable.
    Relation1,
    /// Rank two in terms of `_1S` in the second variable.
    Relation2,
    /// Peel off the last axis.
    P1,
    /// Peel off the first axis.
    P2,
}

impl SRelation {
    pub const ALL: [SRelation; 4] = [Self::Relation1, Self::Relation2, Self::P1, Self::P2];

    pub fn name(self) -> &'static str {
        match self {
            Self::Relation1 => "relation1",
            Self::Relation2 => "relation2",
            Self::P1 => "P1",
            Self::P2 => "P2",
        }
    }
}

fn sp(n: &[usize], a: &[f64], b: &[f64]) -> Result<SParams> {
    SParams::new(MultiIndex::new(n), ParamVector::new(a), ParamVector::new(b))
}

/// Right-hand side of the chosen factorization.
pub fn s_factorized(p: &SParams, which: SRelation, x: &[Complex]) -> Result<Complex> {
    let r = p.r();
    if r < 2 || x.len() != r {
        return Err(Error::DimensionMismatch("factorizations need r >= 2 and r coordinates".into()));
    }
    let (n, a, b) = (p.n.entries(), p.a.entries(), p.b.entries());
    match which {
        SRelation::Relation1 | SRelation::Relation2 if r != 2 => {
            Err(Error::DimensionMismatch(format!("{} is a rank-two identity", which.name())))
        }
        SRelation::Relation1 => {
            let (n1, n2) = (n[0], n[1] as f64);
            let low = sp(&[n1], &[a[0], a[1] + a[2] + n2], &[b[0], b[1] + b[2] + n2])?;
            let f = f32_unit(
                [c(-n2), a[2] + x[1] / 2.0, c(n2 + a[1] + a[2] + b[1] + b[2] - 1.0)],
                [c(a[2] + b[2]), c(a[1] + a[2])],
            )?;
            Ok(s_eval(&low, &x[..1], Form::Hypergeometric)? * f * pochhammer(a[1] + a[2] + x[0] / 2.0, n[1]))
        }
        SRelation::Relation2 => {
            let (n1, n2) = (n[0] as f64, n[1] as f64);
            let low = sp(&[n[1]], &[a[1], a[2]], &[b[1], b[2]])?;
            let f = f32_unit(
                [
                    c(-n1),
                    n2 + a[1] + a[2] + x[0] / 2.0,
                    c(n1 + 2.0 * n2 + a[0] + a[1] + a[2] + b[0] + b[1] + b[2] - 1.0),
                ],
                [c(2.0 * n2 + a[1] + a[2] + b[1] + b[2]), c(n2 + a[0] + a[1] + a[2])],
            )?;
            Ok(pochhammer(a[1] + a[2] + x[0] / 2.0, n[1]) * s_eval(&low, &x[1..], Form::Hypergeometric)? * f)
        }
        SRelation::P1 => {
            let nr = n[r - 1];
            let nrf = nr as f64;
            let ar = p.a.tail(r);
            let br = p.b.tail(r);
            let f = f32_unit(
                [c(-nrf), c(nrf + ar + br - 1.0), a[r] + x[r - 1] / 2.0],
                [c(a[r] + b[r]), c(ar)],
            )?;
            let mut poch = c(1.0);
            for j in 1..r {
                poch *= pochhammer(p.a.tail(j + 1) + x[j - 1] / 2.0, nr);
            }
            let mut la = a[..r - 1].to_vec();
            la.push(a[r - 1] + a[r] + nrf);
            let mut lb = b[..r - 1].to_vec();
            lb.push(b[r - 1] + b[r] + nrf);
            let low = sp(&n[..r - 1], &la, &lb)?;
            Ok(f * poch * s_eval(&low, &x[..r - 1], Form::Hypergeometric)?)
        }
        SRelation::P2 => {
            let n1 = n[0] as f64;
            let t2 = p.n.tail(2);
            let t2f = t2 as f64;
            let low = sp(&n[1..], &a[1..], &b[1..])?;
            let f = f32_unit(
                [
                    c(-n1),
                    c(n1 + 2.0 * t2f + p.a.total() + p.b.total() - 1.0),
                    t2f + p.a.tail(2) + x[0] / 2.0,
                ],
                [c(2.0 * t2f + p.a.tail(2) + p.b.tail(2)), c(t2f + p.a.total())],
            )?;
            Ok(pochhammer(p.a.tail(2) + x[0] / 2.0, t2) * s_eval(&low, &x[1..], Form::Hypergeometric)? * f)
        }
    }
}

pub fn s_relation_check(p: &SParams, which: SRelation, x: &[Complex], tolerance: f64) -> Result<VerificationReport> {
    let lhs = s_eval(p, x, Form::Hypergeometric)?;
    let rhs = s_factorized(p, which, x)?;
    let params = p.describe().with("x", x).build();
    Ok(VerificationReport::relative(
        format!("s_{}", which.name()),
        params,
        lhs,
        rhs,
        f64::MIN_POSITIVE,
        tolerance,
    ))
}

/// 3F2 and Hahn forms of `_rS` against each other.
pub fn s_form_check(p: &SParams, x: &[Complex], tolerance: f64) -> Result<VerificationReport> {
    let lhs = s_eval(p, x, Form::Hypergeometric)?;
    let rhs = s_eval(p, x, Form::Hahn)?;
    let params = p.describe().with("x", x).build();
    Ok(VerificationReport::relative(
        "s_hahn_form",
        params,
        lhs,
        rhs,
        f64::MIN_POSITIVE,
        tolerance,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::gamma;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn s(n: &[usize], a: &[f64], b: &[f64]) -> SParams {
        sp(n, a, b).unwrap()
    }

    fn cx(v: &[f64]) -> Vec<Complex> {
        v.iter().map(|&x| c(x)).collect()
    }

    #[test]
    fn zero_index_is_one() {
        let p = s(&[0, 0], &[0.7, 1.2, 0.9], &[1.1, 0.6, 1.4]);
        let v = s_eval(&p, &[Complex::new(0.3, 1.0), c(-2.0)], Form::Hypergeometric).unwrap();
        assert_eq!(v, c(1.0));
    }

    #[test]
    fn rank_one_two_term_value() {
        // 1 - (n+a1+a2+b1+b2-1)(a2 + x/2) / ((a2+b2)(a1+a2)) = 1 - 4·1/(2·2)
        let p = s(&[1], &[1.0, 1.0], &[1.0, 1.0]);
        let v = s_eval(&p, &[c(0.0)], Form::Hypergeometric).unwrap();
        assert!(v.norm() < 1e-15);
        let v = s_eval(&p, &[c(1.0)], Form::Hypergeometric).unwrap();
        assert_relative_eq!(v.re, 1.0 - 4.0 * 1.5 / 4.0, max_relative = 1e-15);
    }

    #[test]
    fn weight_values() {
        let p = s(&[0], &[0.5, 0.5], &[0.5, 0.5]);
        assert_relative_eq!(w_weight(&p, &[0.0]).unwrap().re, PI * PI, max_relative = 1e-13);
        for &x in &[0.4, -1.7, 3.0] {
            let w = w_weight(&p, &[x]).unwrap();
            let expected = (PI / (PI * x / 2.0).cosh()).powi(2);
            assert_relative_eq!(w.re, expected, max_relative = 1e-12);
            assert!(w.im.abs() < 1e-13 * expected);
        }
    }

    #[test]
    fn weight_matches_gamma_product() {
        let p = s(&[1, 0], &[0.7, 1.2, 0.9], &[1.1, 0.6, 1.4]);
        let x = [0.8, -1.3];
        let mut direct = c(1.0);
        for j in 1..=2 {
            let h = I * (x[j - 1] / 2.0);
            direct *= gamma(p.a[j - 1] - h).unwrap()
                * gamma(p.a.tail(j + 1) + h).unwrap()
                * gamma(p.b[j - 1] + h).unwrap()
                * gamma(p.b.tail(j + 1) - h).unwrap();
        }
        let w = w_weight(&p, &x).unwrap();
        assert!((w - direct).norm() < 1e-12 * direct.norm());
    }

    #[test]
    fn orthogonality_spot_values() {
        let p = s(&[0], &[0.5, 0.5], &[0.5, 0.5]);
        let lhs = s_orthogonality_lhs(&p, &MultiIndex::new(&[0]), 1e-10).unwrap();
        assert!((lhs - c(4.0 * PI)).norm() < 1e-8);
        assert_relative_eq!(s_norm(&p).unwrap(), 4.0 * PI, max_relative = 1e-13);
        let p = s(&[0, 0], &[0.5; 3], &[0.5; 3]);
        assert_relative_eq!(s_norm(&p).unwrap(), 2.0 * PI.powi(3), max_relative = 1e-13);
        let rep = s_orthogonality_check(&p, &MultiIndex::new(&[0, 0]), 1e-8).unwrap();
        assert!(rep.passed, "{rep:?}");
    }

    #[test]
    fn orthogonality_rank_one_off_diagonal() {
        let p = s(&[0], &[0.7, 1.1], &[0.9, 1.3]);
        let rep = s_orthogonality_check(&p, &MultiIndex::new(&[1]), 1e-6).unwrap();
        assert!(rep.passed, "{rep:?}");
        assert!(rep.lhs.norm() < 1e-6);
    }

    #[test]
    fn orthogonality_reference_values() {
        // adaptive-quadrature references for a ≠ b, where the weight is complex
        let p = s(&[2], &[0.7, 1.1], &[0.9, 1.3]);
        let rep = s_orthogonality_check(&p, &MultiIndex::new(&[2]), 1e-8).unwrap();
        assert!(rep.passed, "{rep:?}");
        let p = s(&[2, 1], &[0.7, 1.1, 0.8], &[0.9, 1.3, 0.6]);
        for m in [[2, 1], [1, 1], [0, 2]] {
            let rep = s_orthogonality_check(&p, &MultiIndex::new(&m), 1e-7).unwrap();
            assert!(rep.passed, "{rep:?}");
        }
    }

    #[test]
    fn axis_norms_multiply_to_norm() {
        let p = s(&[2, 1, 1], &[0.7, 1.1, 0.8, 1.2], &[0.9, 1.3, 0.6, 0.75]);
        let prod: f64 = (1..=3).map(|j| axis_norm(&p, j).unwrap()).product();
        assert_relative_eq!(prod, s_norm(&p).unwrap(), max_relative = 1e-12);
    }

    #[test]
    fn relation_examples() {
        let p = s(&[2, 0], &[0.8, 1.2, 0.9], &[1.3, 0.7, 1.1]);
        let x = cx(&[0.4, -1.1]);
        // n_2 = 0 in the last-axis split is a pure parameter shift
        let low = s(&[2], &[0.8, 2.1], &[1.3, 1.8]);
        let direct = s_eval(&low, &x[..1], Form::Hypergeometric).unwrap();
        assert!((s_factorized(&p, SRelation::P1, &x).unwrap() - direct).norm() < 1e-14 * direct.norm());
        let p = s(&[1, 2, 1], &[0.8, 1.2, 0.9, 1.4], &[1.3, 0.7, 1.1, 0.6]);
        let x = cx(&[0.4, -1.1, 1.7]);
        for w in [SRelation::P1, SRelation::P2] {
            assert!(s_relation_check(&p, w, &x, 1e-11).unwrap().passed);
        }
        assert!(s_factorized(&p, SRelation::Relation1, &x).is_err());
    }

    #[test]
    fn degree_along_each_axis() {
        // a forward difference of order |n^j| + 1 in x_j annihilates the polynomial
        let p = s(&[1, 2], &[0.8, 1.2, 0.9], &[1.3, 0.7, 1.1]);
        for j in 0..2 {
            let order = p.n.tail(j + 1) + 1;
            let mut acc = c(0.0);
            let mut scale: f64 = 0.0;
            for k in 0..=order {
                let mut x = cx(&[0.3, -0.2]);
                x[j] += 0.5 * k as f64;
                let v = s_eval(&p, &x, Form::Hypergeometric).unwrap();
                let sign = if (order - k) % 2 == 0 { 1.0 } else { -1.0 };
                acc += sign * crate::index::choose(order, k) as f64 * v;
                scale = scale.max(v.norm());
            }
            assert!(acc.norm() < 1e-11 * scale.max(1.0), "axis {j}: {acc}");
        }
    }

    fn params(r: usize) -> impl Strategy<Value = (SParams, Vec<Complex>)> {
        (
            prop::collection::vec(0usize..=3, r),
            prop::collection::vec(0.5f64..2.0, r + 1),
            prop::collection::vec(0.5f64..2.0, r + 1),
            prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), r),
        )
            .prop_map(|(n, a, b, x)| (s(&n, &a, &b), x.into_iter().map(|(re, im)| Complex::new(re, im)).collect()))
    }

    proptest! {
        #[test]
        fn hahn_form_agrees((p, x) in params(3)) {
            let rep = s_form_check(&p, &x, 1e-11).unwrap();
            prop_assert!(rep.passed, "{:?}", rep);
        }

        #[test]
        fn rank_two_relations((p, x) in params(2)) {
            for w in SRelation::ALL {
                let rep = s_relation_check(&p, w, &x, 1e-11).unwrap();
                prop_assert!(rep.passed, "{:?}", rep);
            }
        }

        #[test]
        fn rank_three_splits((p, x) in params(3)) {
            for w in [SRelation::P1, SRelation::P2] {
                let rep = s_relation_check(&p, w, &x, 1e-11).unwrap();
                prop_assert!(rep.passed, "{:?}", rep);
            }
        }

        #[test]
        fn weight_positive_when_a_equals_b(a in prop::collection::vec(0.1f64..3.0, 3), x in prop::collection::vec(-30.0f64..30.0, 2)) {
            let p = s(&[0, 0], &a, &a);
            let w = w_weight(&p, &x).unwrap();
            prop_assert!(w.re >= 0.0);
            prop_assert!(w.im.abs() <= 1e-12 * w.re);
        }
    }
}

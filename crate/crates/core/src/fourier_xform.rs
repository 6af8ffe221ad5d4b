//! The functions `g_r` and their Fourier transforms.
//!
//! `g_r(x) = Π_j (1+tanh x_j)^{a_j} (1-tanh x_j)^{|a^{j+1}|} · P_n^{(α)}(Υ_1, …, Υ_r)`
//! where `Υ_j = Π_{k<j} (1-tanh x_k)/2 · (1+tanh x_j)/2`. The transform
//! factorizes into one Beta-times-3F2 factor `Λ_j` per axis.

use crate::classical_poly::{hahn_eval, jacobi_homogeneous, HahnParams};
use crate::error::{Error, Result};
use crate::hypergeom::f32_unit;
use crate::index::{AlphaVector, MultiIndex, ParamVector};
use crate::numerics::{beta, binomial, c, factorial, i_pow, pochhammer_real, Complex, I};
use crate::quadrature::{line_rule, LineRuleSpec};
use crate::report::{ParamsBuilder, VerificationReport};
use crate::simplex_poly::{factor_alpha, simplex_poly_eval_split};
use std::f64::consts::LN_2;

#[derive(Debug, Clone, PartialEq)]
pub struct GParams {
    pub n: MultiIndex,
    pub a: ParamVector,
    pub alpha: AlphaVector,
}

/// Which closed form of `Λ_j` to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Form {
    Hypergeometric,
    Hahn,
}

impl GParams {
    pub fn new(n: MultiIndex, a: ParamVector, alpha: AlphaVector) -> Result<Self> {
        let r = n.r();
        if r == 0 || a.len() != r + 1 || alpha.len() != r + 1 {
            return Err(Error::DimensionMismatch(format!(
                "rank {r} needs {} entries in a and alpha, got {} and {}",
                r + 1,
                a.len(),
                alpha.len()
            )));
        }
        Ok(Self { n, a, alpha })
    }

    pub fn r(&self) -> usize {
        self.n.r()
    }

    /// The rank `r-1` parameters that multiply the last-axis factor in the
    /// rank recursion.
    pub fn reduced(&self) -> Result<Self> {
        let r = self.r();
        if r < 2 {
            return Err(Error::ParameterRange("rank recursion needs r >= 2".into()));
        }
        let m = self.n[r - 1];
        let mut a = self.a.entries()[..r - 1].to_vec();
        a.push(self.a[r - 1] + self.a[r] + m as f64);
        let mut alpha = self.alpha.entries()[..r - 1].to_vec();
        alpha.push(self.alpha[r - 1] + self.alpha[r] + 2.0 * m as f64 + 1.0);
        Self::new(
            MultiIndex::new(&self.n.entries()[..r - 1]),
            ParamVector::new(&a),
            ParamVector::new(&alpha),
        )
    }

    fn require_positive(&self) -> Result<()> {
        if self.a.all_greater(0.0) {
            Ok(())
        } else {
            Err(Error::ParameterRange(format!(
                "Fourier transform needs a_j > 0, got {:?}",
                self.a.entries()
            )))
        }
    }

    fn describe(&self) -> ParamsBuilder {
        ParamsBuilder::new()
            .with("n", self.n.entries())
            .with("a", self.a.entries())
            .with("alpha", self.alpha.entries())
    }
}

fn softplus(y: f64) -> f64 {
    if y > 0.0 {
        y + (-y).exp().ln_1p()
    } else {
        y.exp().ln_1p()
    }
}

/// `(ln(1 + tanh x), ln(1 - tanh x))` without cancellation.
fn log_one_pm_tanh(x: f64) -> (f64, f64) {
    (LN_2 - softplus(-2.0 * x), LN_2 - softplus(2.0 * x))
}

fn check_point(p: &GParams, x: &[f64]) -> Result<()> {
    if x.len() != p.r() {
        return Err(Error::DimensionMismatch(format!(
            "point has {} coordinates, rank is {}",
            x.len(),
            p.r()
        )));
    }
    Ok(())
}

/// `g_r(x)` straight from the definition: tanh weights times the simplex
/// basis at `Υ(x)`.
pub fn g_eval(p: &GParams, x: &[f64]) -> Result<f64> {
    check_point(p, x)?;
    let r = p.r();
    let mut log_w = 0.0;
    let mut ups = Vec::with_capacity(r);
    let mut rests = Vec::with_capacity(r);
    let mut rest = 1.0;
    for j in 1..=r {
        let (lp, lm) = log_one_pm_tanh(x[j - 1]);
        log_w += p.a[j - 1] * lp + p.a.tail(j + 1) * lm;
        rests.push(rest);
        ups.push(rest * lp.exp() / 2.0);
        // 1 - |Υ^j| is a product, no subtraction needed
        rest *= lm.exp() / 2.0;
    }
    Ok(log_w.exp() * simplex_poly_eval_split(&p.n, &p.alpha, &ups, &rests)?)
}

/// The one-variable factor `φ_k` of `g_r = Π_k φ_k(x_k)`:
/// `(1+t)^{a_k} (1-t)^{|a^{k+1}|} ((1-t)/2)^{|n^{k+1}|} P_{n_k}^{(A_k, α_k)}(t)`, `t = tanh x`.
pub fn axis_factor(p: &GParams, k: usize, x: f64) -> f64 {
    let (lp, lm) = log_one_pm_tanh(x);
    let tail_n = p.n.tail(k + 1) as f64;
    let log_w = p.a[k - 1] * lp + p.a.tail(k + 1) * lm + tail_n * (lm - LN_2);
    let jac = jacobi_homogeneous(p.n[k - 1], factor_alpha(&p.n, &p.alpha, k), p.alpha[k - 1], c(x.tanh()), c(1.0));
    log_w.exp() * jac.re
}

/// Right-hand side of the rank recursion: the last-axis Jacobi factor times
/// `g_{r-1}` with shifted parameters.
fn g_by_recursion(p: &GParams, x: &[f64]) -> Result<f64> {
    let r = p.r();
    let low = p.reduced()?;
    let m = p.n[r - 1];
    let xr = x[r - 1];
    let (lp, lm) = log_one_pm_tanh(xr);
    let w = (p.a[r - 1] * lp + p.a[r] * lm - ((r - 1) * m) as f64 * LN_2).exp();
    let jac = jacobi_homogeneous(m, p.alpha[r], p.alpha[r - 1], c(xr.tanh()), c(1.0)).re;
    Ok(w * jac * g_eval(&low, &x[..r - 1])?)
}

/// Compares `g_r` with its rank recursion at `x`; `p` has rank ≥ 2.
pub fn g_recursion_check(p: &GParams, x: &[f64], tolerance: f64) -> Result<VerificationReport> {
    check_point(p, x)?;
    let lhs = g_eval(p, x)?;
    let rhs = g_by_recursion(p, x)?;
    let params = p.describe().with("x", x).build();
    Ok(VerificationReport::relative(
        "g_rank_recursion",
        params,
        c(lhs),
        c(rhs),
        f64::MIN_POSITIVE,
        tolerance,
    ))
}

/// `(2|n^{j+1}| + |α^{j+1}| + r - j + 1)`, the lower 3F2 parameter of `Λ_j`.
fn lower_param(p: &GParams, j: usize) -> f64 {
    factor_alpha(&p.n, &p.alpha, j) + 1.0
}

/// The per-axis factor `Λ_j` (1-based `j`) at frequency `xi`.
pub fn lambda_factor(j: usize, p: &GParams, xi: f64, form: Form) -> Result<Complex> {
    let r = p.r();
    if j == 0 || j > r {
        return Err(Error::DimensionMismatch(format!("axis {j} outside 1..={r}")));
    }
    let nj = p.n[j - 1];
    let njf = nj as f64;
    let tail_n = p.n.tail(j + 1) as f64;
    let a_next = p.a.tail(j + 1);
    let a_here = p.a.tail(j);
    let aj = p.a[j - 1];
    let half = I * (xi / 2.0);
    let cj = lower_param(p, j);
    let b = beta(aj - half, tail_n + a_next + half)?;
    match form {
        Form::Hypergeometric => {
            let top = njf + 2.0 * tail_n + p.alpha.tail(j) + (r - j) as f64 + 1.0;
            let f = f32_unit(
                [c(-njf), c(top), tail_n + a_next + half],
                [c(cj), c(tail_n + a_here)],
            )?;
            Ok(b * f)
        }
        Form::Hahn => {
            let hp = HahnParams::real(
                nj,
                tail_n + a_next,
                p.alpha[j - 1] - aj + 1.0,
                tail_n + p.alpha.tail(j + 1) - a_next + (r - j) as f64 + 1.0,
                aj,
            );
            let poly = hahn_eval(&hp, c(xi / 2.0))?;
            let den = i_pow(nj) * pochhammer_real(tail_n + a_here, nj) * pochhammer_real(cj, nj);
            Ok(factorial(nj) * b * poly / den)
        }
    }
}

pub fn ft_closed_form(p: &GParams, xi: &[f64]) -> Result<Complex> {
    ft_closed_form_with(p, xi, Form::Hypergeometric)
}

/// `2^{r(a_r + a_{r+1} - 1) + Σ_{j<r} j a_j} · Π_j (c_j)_{n_j}/n_j! · Λ_j(ξ_j)`.
pub fn ft_closed_form_with(p: &GParams, xi: &[f64], form: Form) -> Result<Complex> {
    p.require_positive()?;
    check_point(p, xi)?;
    let r = p.r();
    let rf = r as f64;
    let mut expo = rf * (p.a[r - 1] + p.a[r] - 1.0);
    for j in 1..r {
        expo += j as f64 * p.a[j - 1];
    }
    let mut value = c(2f64.powf(expo));
    for j in 1..=r {
        let nj = p.n[j - 1];
        let pre = pochhammer_real(lower_param(p, j), nj) / factorial(nj);
        value *= pre * lambda_factor(j, p, xi[j - 1], form)?;
    }
    Ok(value)
}

/// Rank recursion for transforms: the last-axis Beta·3F2 factor times the
/// rank `r-1` closed form with shifted parameters.
pub fn ft_by_recursion(p: &GParams, xi: &[f64]) -> Result<Complex> {
    p.require_positive()?;
    check_point(p, xi)?;
    let r = p.r();
    let low = p.reduced()?;
    let m = p.n[r - 1];
    let mf = m as f64;
    let (a1, a2) = (p.a[r - 1], p.a[r]);
    let (al1, al2) = (p.alpha[r - 1], p.alpha[r]);
    let half = I * (xi[r - 1] / 2.0);
    let pre = 2f64.powf(a1 + a2 - ((r - 1) * m) as f64 - 1.0) * pochhammer_real(al2 + 1.0, m) / factorial(m);
    let f = f32_unit([c(-mf), c(mf + al1 + al2 + 1.0), a2 + half], [c(al2 + 1.0), c(a1 + a2)])?;
    let b = beta(a1 - half, a2 + half)?;
    Ok(pre * b * f * ft_closed_form(&low, &xi[..r - 1])?)
}

pub fn ft_recursion_check(p: &GParams, xi: &[f64], tolerance: f64) -> Result<VerificationReport> {
    let lhs = ft_closed_form(p, xi)?;
    let rhs = ft_by_recursion(p, xi)?;
    let params = p.describe().with("xi", xi).build();
    Ok(VerificationReport::relative(
        "ft_rank_recursion",
        params,
        lhs,
        rhs,
        f64::MIN_POSITIVE,
        tolerance,
    ))
}

/// Bound on `|P_n^{(A,B)}(t)|` over `[-1, 1]` from the explicit sum.
fn jacobi_sup_bound(n: usize, a: f64, b: f64) -> f64 {
    let nf = n as f64;
    (0..=n)
        .map(|k| (binomial(nf + a, k) * binomial(nf + b, n - k)).abs())
        .sum()
}

/// Exponential envelope of `φ_k`: `|φ_k(x)| ≤ C e^{-λ|x|}`.
fn axis_envelope(p: &GParams, k: usize) -> (f64, f64) {
    let tail_a = p.a.tail(k + 1);
    let tail_n = p.n.tail(k + 1) as f64;
    let rate = 2.0 * p.a[k - 1].min(tail_a + tail_n);
    let sup = jacobi_sup_bound(p.n[k - 1], factor_alpha(&p.n, &p.alpha, k), p.alpha[k - 1]);
    (2f64.powf(p.a[k - 1] + tail_a) * sup, rate)
}

/// `∫ e^{-iξx} φ_k(x) dx` on a truncated line rule with absolute error `tol`.
pub fn axis_transform_numeric(p: &GParams, k: usize, xi: f64, tol: f64) -> Result<Complex> {
    let (envelope, rate) = axis_envelope(p, k);
    let rule = line_rule(&LineRuleSpec::new(rate, tol).with_envelope(envelope))?;
    Ok(rule.integrate_complex(|x| {
        let x = x[0];
        Complex::from_polar(axis_factor(p, k, x), -xi * x)
    }))
}

/// Numeric Fourier transform as a product of per-axis line integrals, with
/// total absolute error at most `tolerance`.
pub fn ft_numeric(p: &GParams, xi: &[f64], tolerance: f64) -> Result<Complex> {
    p.require_positive()?;
    check_point(p, xi)?;
    let r = p.r();
    // ∫|φ_k| ≤ 2C/λ bounds how much each axis error is amplified by the others
    let l1: Vec<f64> = (1..=r)
        .map(|k| {
            let (env, rate) = axis_envelope(p, k);
            (2.0 * env / rate).max(1.0)
        })
        .collect();
    let mut value = c(1.0);
    for k in 1..=r {
        let others: f64 = l1.iter().enumerate().filter(|&(i, _)| i != k - 1).map(|(_, v)| v).product();
        let tol_k = tolerance / (2.0 * r as f64 * others);
        value *= axis_transform_numeric(p, k, xi[k - 1], tol_k)?;
    }
    Ok(value)
}

/// Closed form against the quadrature oracle, passing when
/// `|closed - numeric| ≤ tolerance · (1 + |closed|)`.
pub fn ft_oracle_check(p: &GParams, xi: &[f64], tolerance: f64) -> Result<VerificationReport> {
    let closed = ft_closed_form(p, xi)?;
    let numeric = ft_numeric(p, xi, tolerance * 1e-2)?;
    let params = p.describe().with("xi", xi).build();
    Ok(VerificationReport::compare(
        "ft_closed_form_vs_quadrature",
        params,
        closed,
        numeric,
        1.0 + closed.norm(),
        tolerance,
    ))
}

/// 3F2 and Hahn forms of `Λ_j` against each other.
pub fn lambda_form_check(j: usize, p: &GParams, xi: f64, tolerance: f64) -> Result<VerificationReport> {
    let lhs = lambda_factor(j, p, xi, Form::Hypergeometric)?;
    let rhs = lambda_factor(j, p, xi, Form::Hahn)?;
    let params = p.describe().with("j", j).with("xi", xi).build();
    Ok(VerificationReport::relative(
        "lambda_hahn_form",
        params,
        lhs,
        rhs,
        f64::MIN_POSITIVE,
        tolerance,
    ))
}

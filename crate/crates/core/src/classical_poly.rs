//! Jacobi and continuous Hahn polynomials.

use crate::error::{Error, Result};
use crate::hypergeom::pfq;
use crate::numerics::{binomial, c, factorial, i_pow, ln_gamma_real, pochhammer, Complex};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiParams {
    pub n: usize,
    pub alpha: f64,
    pub beta: f64,
}

impl JacobiParams {
    pub fn new(n: usize, alpha: f64, beta: f64) -> Self {
        Self { n, alpha, beta }
    }
}

/// `q^n P_n^{(a,b)}(p/q)`, a polynomial in `(p, q)` that stays finite at `q = 0`.
///
/// Uses the three-term recurrence written in homogeneous form; if one of its
/// denominators vanishes (possible for `a + b` a negative integer) the
/// explicit binomial sum is used instead.
pub fn jacobi_homogeneous(n: usize, a: f64, b: f64, p: Complex, q: Complex) -> Complex {
    if n == 0 {
        return c(1.0);
    }
    let ab = a + b;
    let mut prev = c(1.0);
    let mut cur = (a + 1.0) * q + 0.5 * (ab + 2.0) * (p - q);
    for k in 1..n {
        let kf = k as f64;
        let s = 2.0 * kf + ab;
        let den = 2.0 * (kf + 1.0) * (kf + ab + 1.0) * s;
        if den.abs() < 1e-12 * (1.0 + s.abs()).powi(3) {
            return jacobi_explicit_homogeneous(n, a, b, p, q);
        }
        let next = ((s + 1.0) * (((s + 2.0) * s) * p + (a * a - b * b) * q) * cur
            - 2.0 * (kf + a) * (kf + b) * (s + 2.0) * q * q * prev)
            / den;
        prev = cur;
        cur = next;
    }
    cur
}

/// `2^{-n} Σ_k C(n+a,k) C(n+b,n-k) (p+q)^k (p-q)^{n-k}`.
pub fn jacobi_explicit_homogeneous(n: usize, a: f64, b: f64, p: Complex, q: Complex) -> Complex {
    let nf = n as f64;
    let plus = p + q;
    let minus = p - q;
    let mut s = c(0.0);
    for k in 0..=n {
        let coef = binomial(nf + a, k) * binomial(nf + b, n - k);
        s += coef * plus.powu(k as u32) * minus.powu((n - k) as u32);
    }
    s * 2f64.powi(-(n as i32))
}

pub fn jacobi_eval(p: &JacobiParams, x: Complex) -> Complex {
    jacobi_homogeneous(p.n, p.alpha, p.beta, x, c(1.0))
}

/// The explicit-sum definition; kept as an independent oracle.
pub fn jacobi_explicit(p: &JacobiParams, x: Complex) -> Complex {
    jacobi_explicit_homogeneous(p.n, p.alpha, p.beta, x, c(1.0))
}

/// `P_n^{(α,β)}(2t - 1)`.
pub fn jacobi_shifted_eval(p: &JacobiParams, t: f64) -> Complex {
    jacobi_eval(p, c(2.0 * t - 1.0))
}

/// `∫_{-1}^{1} (1-x)^α (1+x)^β P_n(x)² dx`.
pub fn jacobi_norm(p: &JacobiParams) -> Result<f64> {
    let (n, a, b) = (p.n as f64, p.alpha, p.beta);
    if a <= -1.0 || b <= -1.0 {
        return Err(Error::ParameterRange(format!(
            "Jacobi norm needs alpha, beta > -1, got ({a}, {b})"
        )));
    }
    if p.n == 0 {
        // the general formula has 0/0 when α + β = -1
        let lg = ln_gamma_real(a + 1.0)? + ln_gamma_real(b + 1.0)? - ln_gamma_real(a + b + 2.0)?;
        return Ok(2f64.powf(a + b + 1.0) * lg.exp());
    }
    let lg = ln_gamma_real(a + n + 1.0)? + ln_gamma_real(b + n + 1.0)? - ln_gamma_real(a + b + n + 1.0)?;
    Ok(2f64.powf(a + b + 1.0) * lg.exp() / (factorial(p.n) * (a + b + 2.0 * n + 1.0)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HahnParams {
    pub n: usize,
    pub a: Complex,
    pub b: Complex,
    pub c: Complex,
    pub d: Complex,
}

impl HahnParams {
    pub fn new(n: usize, a: Complex, b: Complex, c: Complex, d: Complex) -> Self {
        Self { n, a, b, c, d }
    }

    pub fn real(n: usize, a: f64, b: f64, cc: f64, d: f64) -> Self {
        Self::new(n, c(a), c(b), c(cc), c(d))
    }
}

/// Continuous Hahn polynomial
/// `p_n(x) = i^n (a+c)_n (a+d)_n / n! · 3F2(-n, n+a+b+c+d-1, a+ix; a+c, a+d; 1)`.
pub fn hahn_eval(p: &HahnParams, x: Complex) -> Result<Complex> {
    let n = p.n;
    let nf = n as f64;
    let pre = i_pow(n) * pochhammer(p.a + p.c, n) * pochhammer(p.a + p.d, n) / factorial(n);
    let f = pfq(
        &[c(-nf), nf + p.a + p.b + p.c + p.d - 1.0, p.a + crate::numerics::I * x],
        &[p.a + p.c, p.a + p.d],
        c(1.0),
    )?;
    Ok(pre * f)
}

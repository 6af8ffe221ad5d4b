//! Quadrature rules on [-1, 1], the simplex and the real line.

use crate::error::{Error, Result};
use crate::numerics::{beta, c, Complex};
use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Domain {
    Interval,
    Simplex(usize),
    RealLine,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Guarantee {
    /// Exact for polynomials up to this degree (against the rule's weight).
    Exactness(usize),
    /// Declared absolute error bound.
    ErrorBudget(f64),
}

/// Node/weight pairs; nodes are stored flat with `dim` coordinates each.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub dim: usize,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub domain: Domain,
    pub guarantee: Guarantee,
    /// Weight exponents the rule integrates against: `(α, β)` on the
    /// interval, `(α_1, ..., α_{r+1})` on the simplex, empty on the line.
    pub exponents: Vec<f64>,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn node(&self, i: usize) -> &[f64] {
        &self.nodes[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> impl Iterator<Item = (&[f64], f64)> {
        self.nodes.chunks(self.dim).zip(self.weights.iter().copied())
    }

    pub fn integrate(&self, f: impl Fn(&[f64]) -> f64) -> f64 {
        self.points().map(|(x, w)| w * f(x)).sum()
    }

    pub fn integrate_complex(&self, f: impl Fn(&[f64]) -> Complex) -> Complex {
        self.points().fold(c(0.0), |acc, (x, w)| acc + f(x) * w)
    }

    pub fn exactness(&self) -> Option<usize> {
        match self.guarantee {
            Guarantee::Exactness(d) => Some(d),
            Guarantee::ErrorBudget(_) => None,
        }
    }
}

/// Three-term recurrence data of the monic Jacobi polynomials.
fn jacobi_matrix(n: usize, alpha: f64, beta: f64) -> (Vec<f64>, Vec<f64>) {
    let ab = alpha + beta;
    let diag = (0..n)
        .map(|k| {
            if k == 0 {
                (beta - alpha) / (ab + 2.0)
            } else {
                let s = 2.0 * k as f64 + ab;
                (beta * beta - alpha * alpha) / (s * (s + 2.0))
            }
        })
        .collect();
    let off = (1..n)
        .map(|k| {
            let kf = k as f64;
            let s = 2.0 * kf + ab;
            let b2 = if k == 1 {
                // the general form is 0/0 when α + β = -1
                4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab).powi(2) * (3.0 + ab))
            } else {
                4.0 * kf * (kf + alpha) * (kf + beta) * (kf + ab) / (s * s * (s + 1.0) * (s - 1.0))
            };
            b2.sqrt()
        })
        .collect();
    (diag, off)
}

/// `npoints`-point Gauss rule for the weight `(1-x)^alpha (1+x)^beta` on [-1, 1].
pub fn gauss_jacobi(npoints: usize, alpha: f64, beta_: f64) -> Result<QuadratureRule> {
    if alpha <= -1.0 || beta_ <= -1.0 {
        return Err(Error::ParameterRange(format!(
            "Gauss-Jacobi needs alpha, beta > -1, got ({alpha}, {beta_})"
        )));
    }
    if npoints == 0 {
        return Err(Error::ParameterRange("npoints must be at least 1".into()));
    }
    let mu0 = 2f64.powf(alpha + beta_ + 1.0) * beta(c(alpha + 1.0), c(beta_ + 1.0))?.re;
    let (diag, off) = jacobi_matrix(npoints, alpha, beta_);
    let mut t = DMatrix::<f64>::zeros(npoints, npoints);
    for i in 0..npoints {
        t[(i, i)] = diag[i];
    }
    for (i, &b) in off.iter().enumerate() {
        t[(i, i + 1)] = b;
        t[(i + 1, i)] = b;
    }
    let eig = SymmetricEigen::new(t);
    let mut pairs: Vec<(f64, f64)> = (0..npoints)
        .map(|i| {
            let v0 = eig.eigenvectors[(0, i)];
            (eig.eigenvalues[i], mu0 * v0 * v0)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(QuadratureRule {
        dim: 1,
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
        domain: Domain::Interval,
        guarantee: Guarantee::Exactness(2 * npoints - 1),
        exponents: vec![alpha, beta_],
    })
}

pub fn gauss_legendre(npoints: usize) -> Result<QuadratureRule> {
    gauss_jacobi(npoints, 0.0, 0.0)
}

/// Rule on [0, 1] for the weight `u^a (1-u)^b`.
pub fn gauss_jacobi_unit(npoints: usize, a: f64, b: f64) -> Result<QuadratureRule> {
    let mut rule = gauss_jacobi(npoints, b, a)?;
    let scale = 2f64.powf(-(a + b + 1.0));
    for x in &mut rule.nodes {
        *x = 0.5 * (1.0 + *x);
    }
    for w in &mut rule.weights {
        *w *= scale;
    }
    rule.exponents = vec![a, b];
    Ok(rule)
}

/// Tensor rule on `T^r` against `x_1^{α_1} ... x_r^{α_r} (1-|x|)^{α_{r+1}}`,
/// exact for polynomials of total degree at most `degree`.
///
/// Built from `x_j = u_j (1-u_1)...(1-u_{j-1})`, which turns the weight into
/// a product of one-dimensional Jacobi weights in the `u_k`.
pub fn simplex_rule(r: usize, degree: usize, alpha: &[f64]) -> Result<QuadratureRule> {
    if r == 0 {
        return Err(Error::DimensionMismatch("simplex dimension must be at least 1".into()));
    }
    if alpha.len() != r + 1 {
        return Err(Error::DimensionMismatch(format!(
            "simplex of dimension {r} needs {} weight exponents, got {}",
            r + 1,
            alpha.len()
        )));
    }
    let np = points_for_degree(degree);
    let axes: Vec<QuadratureRule> = (1..=r)
        .map(|k| {
            let e: f64 = alpha[k..].iter().sum::<f64>() + (r - k) as f64;
            gauss_jacobi_unit(np, alpha[k - 1], e)
        })
        .collect::<Result<_>>()?;

    let total = np.pow(r as u32);
    let mut nodes = Vec::with_capacity(total * r);
    let mut weights = Vec::with_capacity(total);
    let mut idx = vec![0usize; r];
    for _ in 0..total {
        let mut rest = 1.0;
        let mut w = 1.0;
        for k in 0..r {
            let u = axes[k].nodes[idx[k]];
            nodes.push(u * rest);
            rest *= 1.0 - u;
            w *= axes[k].weights[idx[k]];
        }
        weights.push(w);
        for k in (0..r).rev() {
            idx[k] += 1;
            if idx[k] < np {
                break;
            }
            idx[k] = 0;
        }
    }
    Ok(QuadratureRule {
        dim: r,
        nodes,
        weights,
        domain: Domain::Simplex(r),
        guarantee: Guarantee::Exactness(2 * np - 1),
        exponents: alpha.to_vec(),
    })
}

/// Parameters of a truncated real-line rule for integrands bounded by
/// `envelope * exp(-decay_rate * (|x| - core_radius))` outside the core.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineRuleSpec {
    pub decay_rate: f64,
    pub tolerance: f64,
    pub core_radius: f64,
    pub envelope: f64,
    pub node_cap: usize,
}

impl LineRuleSpec {
    pub fn new(decay_rate: f64, tolerance: f64) -> Self {
        Self {
            decay_rate,
            tolerance,
            core_radius: 0.0,
            envelope: 1.0,
            node_cap: 400_000,
        }
    }

    pub fn with_core(mut self, core_radius: f64) -> Self {
        self.core_radius = core_radius;
        self
    }

    pub fn with_envelope(mut self, envelope: f64) -> Self {
        self.envelope = envelope;
        self
    }

    pub fn with_cap(mut self, node_cap: usize) -> Self {
        self.node_cap = node_cap;
        self
    }

    /// Truncation half-width: both tails together stay below a quarter of
    /// the tolerance, leaving the rest for the panel rule and rounding.
    pub fn half_width(&self) -> f64 {
        let tail = (8.0 * self.envelope / (self.decay_rate * self.tolerance)).ln() / self.decay_rate;
        self.core_radius + tail.max(0.0)
    }
}

/// Panel width and order of the composite rule. For integrands analytic in a
/// strip of half-width ≥ 1/2 around the axis the per-panel Gauss error is far
/// below any tolerance this crate asks for.
const PANEL_WIDTH: f64 = 0.5;
const PANEL_ORDER: usize = 20;

/// Composite Gauss–Legendre rule on `[-L, L]` with `L` from the decay bound.
pub fn line_rule(spec: &LineRuleSpec) -> Result<QuadratureRule> {
    if !(spec.decay_rate > 0.0) || !(spec.tolerance > 0.0) {
        return Err(Error::ParameterRange(
            "line rule needs positive decay rate and tolerance".into(),
        ));
    }
    let half = spec.half_width();
    let panels = ((2.0 * half / PANEL_WIDTH).ceil() as usize).max(1);
    let count = panels.saturating_mul(PANEL_ORDER);
    if count > spec.node_cap || !half.is_finite() {
        return Err(Error::BudgetInfeasible {
            nodes: count,
            cap: spec.node_cap,
        });
    }
    let base = gauss_legendre(PANEL_ORDER)?;
    let h = 2.0 * half / panels as f64;
    let mut nodes = Vec::with_capacity(count);
    let mut weights = Vec::with_capacity(count);
    for p in 0..panels {
        let mid = -half + (p as f64 + 0.5) * h;
        for (x, w) in base.nodes.iter().zip(&base.weights) {
            nodes.push(mid + 0.5 * h * x);
            weights.push(0.5 * h * w);
        }
    }
    Ok(QuadratureRule {
        dim: 1,
        nodes,
        weights,
        domain: Domain::RealLine,
        guarantee: Guarantee::ErrorBudget(spec.tolerance),
        exponents: Vec::new(),
    })
}

/// `npoints` on each axis for a rule exact to `degree`.
pub fn points_for_degree(degree: usize) -> usize {
    degree / 2 + 1
}

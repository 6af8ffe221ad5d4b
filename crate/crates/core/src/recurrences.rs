//! Contiguous relations for `3F2` and the `S` family, with residual checks
//! and a least-squares oracle for the printed coefficients.
//!
//! Each relation is `Σ_k c_k F_k = 0` over three or four shifted function
//! values. The three `3F2` relations carry a contiguity variable `z`, and
//! their coefficients are stored as pairs `(B_k, C_k)` meaning `B_k + C_k z`.
//! Labels follow the printed numbering, which skips `*5` and `105`.

use crate::error::{Error, Result};
use crate::fourier_xform::Form;
use crate::hypergeom::pfq;
use crate::index::{MultiIndex, ParamVector};
use crate::numerics::{c, pochhammer, Complex};
use crate::sfamily::{s_eval, SParams};
use nalgebra::{DMatrix, DVector};
use rand::Rng;
use serde::{Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelationId {
    H1,
    H2,
    H3,
    S1Star1,
    S1Star2,
    S1Star3,
    S1Star4,
    S1Star6,
    S1Star7,
    S2Eq101,
    S2Eq102,
    S2Eq103,
    S2Eq104,
    S2Eq106,
    S2Eq107,
    SrT514,
    SrT515,
    SrT516,
    SrT517,
    SrT518,
    SrT519,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Hyper,
    S1,
    S2,
    Sr,
}

use RelationId::*;

impl RelationId {
    pub const ALL: [RelationId; 21] = [
        H1, H2, H3, S1Star1, S1Star2, S1Star3, S1Star4, S1Star6, S1Star7, S2Eq101, S2Eq102, S2Eq103, S2Eq104,
        S2Eq106, S2Eq107, SrT514, SrT515, SrT516, SrT517, SrT518, SrT519,
    ];

    pub fn name(self) -> &'static str {
        match self {
            H1 => "H1",
            H2 => "H2",
            H3 => "H3",
            S1Star1 => "S1_STAR1",
            S1Star2 => "S1_STAR2",
            S1Star3 => "S1_STAR3",
            S1Star4 => "S1_STAR4",
            S1Star6 => "S1_STAR6",
            S1Star7 => "S1_STAR7",
            S2Eq101 => "S2_101",
            S2Eq102 => "S2_102",
            S2Eq103 => "S2_103",
            S2Eq104 => "S2_104",
            S2Eq106 => "S2_106",
            S2Eq107 => "S2_107",
            SrT514 => "SR_T514",
            SrT515 => "SR_T515",
            SrT516 => "SR_T516",
            SrT517 => "SR_T517",
            SrT518 => "SR_T518",
            SrT519 => "SR_T519",
        }
    }

    pub fn family(self) -> Family {
        match self {
            H1 | H2 | H3 => Family::Hyper,
            S1Star1 | S1Star2 | S1Star3 | S1Star4 | S1Star6 | S1Star7 => Family::S1,
            S2Eq101 | S2Eq102 | S2Eq103 | S2Eq104 | S2Eq106 | S2Eq107 => Family::S2,
            _ => Family::Sr,
        }
    }

    /// The rank-two relation that a rank-r relation reduces to at `r = 2`.
    pub fn rank_two_counterpart(self) -> Option<RelationId> {
        Some(match self {
            SrT514 => S2Eq101,
            SrT515 => S2Eq102,
            SrT516 => S2Eq103,
            SrT517 => S2Eq104,
            SrT518 => S2Eq106,
            SrT519 => S2Eq107,
            _ => return None,
        })
    }

    /// The rank-one relation a rank-two relation reduces to when `n_2 = 0`
    /// (only for relations whose shifts stay on the first axis).
    pub fn rank_one_counterpart(self) -> Option<RelationId> {
        Some(match self {
            S2Eq101 => S1Star1,
            S2Eq102 => S1Star2,
            S2Eq104 => S1Star4,
            S2Eq107 => S1Star7,
            _ => return None,
        })
    }
}

impl fmt::Display for RelationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RelationId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let up = s.to_ascii_uppercase();
        RelationId::ALL
            .into_iter()
            .find(|id| id.name() == up)
            .ok_or_else(|| Error::ParameterRange(format!("unknown relation id {s:?}")))
    }
}

impl Serialize for RelationId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// Free parameters of one relation instance.
#[derive(Debug, Clone, PartialEq)]
pub enum RelationParams {
    /// `3F2(m1, m2, m3; s1, s2; z)` with `m2` a non-positive integer.
    Hyper { m: [f64; 3], s: [f64; 2], z: Complex },
    /// `S` family parameters and the evaluation point.
    S { p: SParams, x: Vec<Complex> },
}

impl RelationParams {
    pub fn s(n: &[usize], a: &[f64], b: &[f64], x: &[f64]) -> Result<Self> {
        let p = SParams::new(MultiIndex::new(n), ParamVector::new(a), ParamVector::new(b))?;
        Ok(Self::S {
            p,
            x: x.iter().map(|&v| c(v)).collect(),
        })
    }

    pub fn describe(&self) -> crate::report::Parameters {
        use crate::report::ParamsBuilder;
        match self {
            Self::Hyper { m, s, z } => ParamsBuilder::new().with("m", m).with("s", s).with("z", z).build(),
            Self::S { p, x } => ParamsBuilder::new()
                .with("n", p.n.entries())
                .with("a", p.a.entries())
                .with("b", p.b.entries())
                .with("x", x)
                .build(),
        }
    }
}

/// Tracks the smallest denominator met while building coefficients.
struct Guard {
    min: f64,
    worst: &'static str,
}

impl Guard {
    fn new() -> Self {
        Self {
            min: f64::INFINITY,
            worst: "",
        }
    }

    fn inv(&mut self, d: Complex, what: &'static str) -> Complex {
        let m = d.norm();
        if m < self.min {
            self.min = m;
            self.worst = what;
        }
        1.0 / d
    }

    fn finish(self, v: Vec<Complex>) -> Result<(Vec<Complex>, f64)> {
        if self.min <= 1e-12 {
            Err(Error::DegenerateParameter(self.worst.to_string()))
        } else {
            Ok((v, self.min))
        }
    }
}

fn poch2(a: Complex) -> Complex {
    pochhammer(a, 2)
}

fn poch3(a: Complex) -> Complex {
    pochhammer(a, 3)
}

/// `(B_k, C_k)` pairs of the three `3F2` relations, coefficient `k` being
/// `B_k + C_k z`.
pub fn h_parts(id: RelationId, m: [f64; 3], s: [f64; 2]) -> Result<Vec<(f64, f64)>> {
    let [m1, m2, m3] = m;
    let [s1, s2] = s;
    let mut g = Guard::new();
    let parts = match id {
        H1 => {
            let i1 = g.inv(c(m1), "m1").re;
            let i2 = g.inv(c((m1 - 1.0) * m1), "(m1-1)_2").re;
            let b1 = (s1 + s2 + 1.0 - 3.0 * m1) * i1;
            let b2 = (s1 * s2 + (m1 - 1.0) * (3.0 * m1 - 2.0 * (s1 + s2 + 1.0))) * i2;
            let c1 = (2.0 * m1 - m2 - m3 - 1.0) * i1;
            let c2 = -((m1 - 1.0) * (m1 - m2 - m3 - 1.0) + m2 * m3) * i2;
            let b3 = -(m1 - s1 - 1.0) * (m1 - s2 - 1.0) * i2;
            vec![(-1.0, 1.0), (-b1, -c1), (-b2, -c2), (-b3, 0.0)]
        }
        H2 => {
            let i1 = g.inv(c(s1 - 1.0), "s1-1").re;
            let i2 = g.inv(c((s1 - 1.0) * s1), "(s1-1)_2").re;
            let i3 = g.inv(c((s1 - 1.0) * s1 * (s1 + 1.0)), "(s1-1)_3").re;
            let b1 = (s2 - 2.0 * s1) * i1;
            let b2 = (s1 - s2 + 1.0) * i1;
            let c1 = (3.0 * s1 - m1 - m2 - m3) * i1;
            let c2 = ((2.0 * s1 + 1.0) * (m1 + m2 + m3) - 3.0 * (s1 - 1.0) * (s1 + 2.0) - 7.0
                - m1 * m2
                - m1 * m3
                - m2 * m3)
                * i2;
            let c3 = (s1 - m1 + 1.0) * (s1 - m2 + 1.0) * (s1 - m3 + 1.0) * i3;
            vec![(-1.0, 1.0), (-b1, -c1), (-b2, -c2), (0.0, -c3)]
        }
        H3 => vec![(s1, 0.0), (m1 - s1, 0.0), (-m1, 0.0)],
        _ => return Err(Error::ParameterRange(format!("{id} is not a 3F2 relation"))),
    };
    g.finish(Vec::new())?;
    Ok(parts)
}

fn check_shape(id: RelationId, p: &SParams, x: &[Complex]) -> Result<()> {
    let r = p.r();
    let ok = match id.family() {
        Family::S1 => r == 1,
        Family::S2 => r == 2,
        _ => r >= 1,
    };
    if !ok || x.len() != r {
        return Err(Error::DimensionMismatch(format!(
            "{id} does not apply to rank {r} with {} coordinates",
            x.len()
        )));
    }
    Ok(())
}

/// Printed coefficients of an `S`-family relation, plus the smallest
/// denominator modulus met.
fn s_coefficients(id: RelationId, p: &SParams, x: &[Complex]) -> Result<(Vec<Complex>, f64)> {
    check_shape(id, p, x)?;
    let mut g = Guard::new();
    let n = p.n.entries();
    let (a, b) = (p.a.entries(), p.b.entries());
    let n1 = n[0] as f64;
    let x1 = x[0];
    let h1 = x1 / 2.0;
    let v = match id {
        S1Star1 => {
            let (a1, a2, b1, b2) = (a[0], a[1], b[0], b[1]);
            let i1 = g.inv(c(n1), "n1");
            let i2 = g.inv(c(n1 * (n1 + 1.0)), "(n1)_2");
            let c1 = (b1 - 1.0 + h1) * i1;
            let c2 = ((a2 + b2) * (a1 + a2) - (n1 + a1 + a2 + b1 + b2 - 1.0) * (a2 + h1)) * i2
                + (n1 + a1 + 2.0 * a2 - b1 + b2 + 2.0 - h1) * i1;
            let c3 = -(n1 + a2 + b2 + 1.0) * (n1 + a1 + a2 + 1.0) * i2;
            vec![c1, c2, c3]
        }
        S1Star2 => {
            let (a1, a2, b1, b2) = (a[0], a[1], b[0], b[1]);
            let d = n1 + a1 + a2 + b1 + b2;
            let i1 = g.inv(c(d - 1.0), "n1+a1+a2+b1+b2-1");
            let i2 = g.inv(poch2(c(d - 2.0)), "(n1+a1+a2+b1+b2-2)_2");
            let c1 = -(b1 - 1.0 + h1) * i1;
            let c2 = ((a2 + b2) * (a1 + a2) + n1 * (a2 + h1)) * i2 + (n1 - a2 + 2.0 * b1 - 3.0 + h1) * i1;
            let c3 = -(n1 + a1 + b1 - 2.0) * (n1 + b1 + b2 - 2.0) * i2;
            vec![c1, c2, c3]
        }
        S1Star3 => {
            let (a1, a2, b1, b2) = (a[0], a[1], b[0], b[1]);
            let i1 = g.inv(a2 + h1, "a2+x/2");
            let i2 = g.inv(poch2(a2 - 1.0 + h1), "(a2-1+x/2)_2");
            let c1 = -(b1 - 1.0 + h1) * i1;
            let c2 = ((a2 + b2) * (a1 + a2) + n1 * (n1 + a1 + a2 + b1 + b2 - 1.0)) * i2
                - (a1 + a2 - b1 + b2 + 2.0 - x1) * i1;
            let c3 = -(a1 + 1.0 - h1) * (b2 + 1.0 - h1) * i2;
            vec![c1, c2, c3]
        }
        S1Star4 => {
            let (a1, a2, b1, b2) = (a[0], a[1], b[0], b[1]);
            let s = a1 + a2;
            let i1 = g.inv(c(s - 1.0), "a1+a2-1");
            let i2 = g.inv(poch2(c(s - 1.0)), "(a1+a2-1)_2");
            let i3 = g.inv(poch3(c(s - 1.0)), "(a1+a2-1)_3");
            let c1 = -(b1 - 1.0 + h1) * i1;
            let c2 = ((2.0 * s + 1.0) * (a2 + b1 + b2 - 2.0 + h1) + n1 * (n1 + a1 + a2 + b1 + b2 - 1.0)) * i2
                - (a1 + a2 + b1 + b2 - 1.0) * (a2 + h1) * i2
                - (a2 + b2 - 1.0) * i1;
            let c3 = -(n1 + a1 + a2 + 1.0) * (n1 + b1 + b2 - 2.0) * (a1 + 1.0 - h1) * i3;
            vec![c1, c2, c3]
        }
        S1Star6 => {
            let (a1, a2, b1, b2) = (a[0], a[1], b[0], b[1]);
            let s = a2 + b2;
            let i1 = g.inv(c(s - 1.0), "a2+b2-1");
            let i2 = g.inv(poch2(c(s - 1.0)), "(a2+b2-1)_2");
            let i3 = g.inv(poch3(c(s - 1.0)), "(a2+b2-1)_3");
            let c1 = -(b1 - 1.0 + h1) * i1;
            let c2 = ((2.0 * s + 1.0) * (a1 + a2 + b1 - 2.0 + h1) + n1 * (n1 + a1 + a2 + b1 + b2 - 1.0)) * i2
                - (a1 + a2 + b1 + b2 - 1.0) * (a2 + h1) * i2
                - (a1 + a2 - 1.0) * i1;
            let c3 = -(n1 + a2 + b2 + 1.0) * (n1 + a1 + b1 - 2.0) * (b2 + 1.0 - h1) * i3;
            vec![c1, c2, c3]
        }
        S1Star7 => {
            let (a1, a2, b1, b2) = (a[0], a[1], b[0], b[1]);
            vec![
                c(a1 + a2),
                c(n1 + b1 + b2 - 1.0),
                c(-(n1 + a1 + a2 + b1 + b2 - 1.0)),
            ]
        }
        S2Eq101 | S2Eq102 | S2Eq104 | S2Eq107 => {
            let n2 = n[1] as f64;
            let (a1, a2, a3) = (a[0], a[1], a[2]);
            let (b1, b2, b3) = (b[0], b[1], b[2]);
            let aa = a1 + a2 + a3;
            let bb = b1 + b2 + b3;
            match id {
                S2Eq101 => {
                    let i1 = g.inv(c(n1), "n1");
                    let i2 = g.inv(c(n1 * (n1 + 1.0)), "(n1)_2");
                    let c1 = (b1 - 1.0 + h1) * i1;
                    let c2 = (2.0 * n2 + a2 + a3 + b2 + b3) * (n2 + aa) * i2
                        - (n1 + 2.0 * n2 + aa + bb - 1.0) * (n2 + a2 + a3 + h1) * i2
                        + (n1 + 3.0 * n2 + a1 + 2.0 * (a2 + a3) - b1 + b2 + b3 + 2.0 - h1) * i1;
                    let c3 = -(n1 + 2.0 * n2 + a2 + a3 + b2 + b3 + 1.0) * (n1 + n2 + aa + 1.0) * i2;
                    vec![c1, c2, c3]
                }
                S2Eq102 => {
                    let d = n1 + 2.0 * n2 + aa + bb;
                    let i1 = g.inv(c(d - 1.0), "n1+2n2+|a|+|b|-1");
                    let i2 = g.inv(poch2(c(d - 2.0)), "(n1+2n2+|a|+|b|-2)_2");
                    let c1 = -(b1 - 1.0 + h1) * i1;
                    let c2 = ((2.0 * n2 + a2 + a3 + b2 + b3) * (n2 + aa) + n1 * (n2 + a2 + a3 + h1)) * i2
                        + (n1 - n2 - (a2 + a3) + 2.0 * b1 - 3.0 + h1) * i1;
                    let c3 = -(n1 + a1 + b1 - 2.0) * (n1 + n2 + bb - 2.0) * i2;
                    vec![c1, c2, c3]
                }
                S2Eq104 => {
                    let s = n2 + aa;
                    let i1 = g.inv(c(s - 1.0), "n2+|a|-1");
                    let i2 = g.inv(poch2(c(s - 1.0)), "(n2+|a|-1)_2");
                    let i3 = g.inv(poch3(c(s - 1.0)), "(n2+|a|-1)_3");
                    let c1 = -(b1 - 1.0 + h1) * i1;
                    let c2 = (2.0 * n2 + 2.0 * aa + 1.0) * (2.0 * n2 + a2 + a3 + bb - 2.0 + h1) * i2
                        + n1 * (n1 + 2.0 * n2 + aa + bb - 1.0) * i2
                        - (2.0 * n2 + aa + bb - 1.0) * (n2 + a2 + a3 + h1) * i2
                        - (2.0 * n2 + a2 + a3 + b2 + b3 - 1.0) * i1;
                    let c3 = -(n1 + n2 + aa + 1.0) * (n1 + n2 + bb - 2.0) * (a1 + 1.0 - h1) * i3;
                    vec![c1, c2, c3]
                }
                _ => vec![
                    c(n2 + aa),
                    c(-(n1 + 2.0 * n2 + aa + bb - 1.0)),
                    c(n1 + n2 + bb - 1.0),
                ],
            }
        }
        S2Eq103 | S2Eq106 => {
            let n2 = n[1] as f64;
            let (a2, a3) = (a[1], a[2]);
            let (b2, b3) = (b[1], b[2]);
            let h2 = x[1] / 2.0;
            if id == S2Eq103 {
                let i1 = g.inv(a3 + h2, "a3+x2/2");
                let i2 = g.inv(poch2(a3 - 1.0 + h2), "(a3-1+x2/2)_2");
                let c1 = -(b2 - 1.0 + h2) * i1;
                let c2 = ((a2 + a3) * (a3 + b3) + n2 * (n2 + a2 + a3 + b2 + b3 - 1.0)) * i2
                    - (a2 + a3 - b2 + b3 + 2.0 - x[1]) * i1;
                // printed with a plus sign
                let c3 = (a2 + 1.0 - h2) * (b3 + 1.0 - h2) * i2;
                vec![c1, c2, c3]
            } else {
                let s = a3 + b3;
                let i1 = g.inv(c(s - 1.0), "a3+b3-1");
                let i2 = g.inv(poch2(c(s - 1.0)), "(a3+b3-1)_2");
                let i3 = g.inv(poch3(c(s - 1.0)), "(a3+b3-1)_3");
                let c1 = -(b2 - 1.0 + h2) * i1;
                let c2 = (2.0 * s + 1.0) * (a2 + a3 + b2 - 2.0 + h2) * i2 - (a2 + a3 - 1.0) * i1
                    + (n2 * (n2 + a2 + a3 + b2 + b3 - 1.0) - (a2 + a3 + b2 + b3 - 1.0) * (a3 + h2)) * i2;
                let c3 = -(n2 + a2 + b2 - 2.0) * (n2 + a3 + b3 + 1.0) * (b3 + 1.0 - h2) * i3;
                vec![c1, c2, c3]
            }
        }
        SrT514 | SrT515 | SrT517 | SrT519 => {
            let (a1, b1) = (a[0], b[0]);
            let big_n = p.n.total() as f64;
            let n2 = p.n.tail(2) as f64;
            let (aa, bb) = (p.a.total(), p.b.total());
            let (a2, b2) = (p.a.tail(2), p.b.tail(2));
            match id {
                SrT514 => {
                    let i1 = g.inv(c(n1), "n1");
                    let i2 = g.inv(c(n1 * (n1 + 1.0)), "(n1)_2");
                    let c1 = (b1 - 1.0 + h1) * i1;
                    let c2 = ((2.0 * n2 + a2 + b2) * (n2 + aa) - (n1 + 2.0 * n2 + aa + bb - 1.0) * (n2 + a2 + h1)) * i2
                        + (n1 + 3.0 * n2 + a1 + 2.0 * a2 - b1 + b2 + 2.0 - h1) * i1;
                    let c3 = -(n1 + 2.0 * n2 + a2 + b2 + 1.0) * (big_n + aa + 1.0) * i2;
                    vec![c1, c2, c3]
                }
                SrT515 => {
                    let d = n1 + 2.0 * n2 + aa + bb;
                    let i1 = g.inv(c(d - 1.0), "n1+2|n^2|+|a|+|b|-1");
                    let i2 = g.inv(poch2(c(d - 2.0)), "(n1+2|n^2|+|a|+|b|-2)_2");
                    let c1 = -(b1 - 1.0 + h1) * i1;
                    let c2 = ((2.0 * n2 + a2 + b2) * (n2 + aa) + n1 * (n2 + a2 + h1)) * i2
                        + (n1 - n2 - a2 + 2.0 * b1 - 3.0 + h1) * i1;
                    let c3 = -(n1 + a1 + b1 - 2.0) * (big_n + bb - 2.0) * i2;
                    vec![c1, c2, c3]
                }
                SrT517 => {
                    let s = n2 + aa;
                    let i1 = g.inv(c(s - 1.0), "|n^2|+|a|-1");
                    let i2 = g.inv(poch2(c(s - 1.0)), "(|n^2|+|a|-1)_2");
                    let i3 = g.inv(poch3(c(s - 1.0)), "(|n^2|+|a|-1)_3");
                    let c1 = -(b1 - 1.0 + h1) * i1;
                    let c2 = ((2.0 * n2 + 2.0 * aa + 1.0) * (2.0 * n2 + a2 + bb - 2.0 + h1)
                        + n1 * (n1 + 2.0 * n2 + aa + bb - 1.0))
                        * i2
                        - (2.0 * n2 + aa + bb - 1.0) * (n2 + a2 + h1) * i2
                        - (2.0 * n2 + a2 + b2 - 1.0) * i1;
                    let c3 = -(big_n + aa + 1.0) * (big_n + bb - 2.0) * (a1 - h1 + 1.0) * i3;
                    vec![c1, c2, c3]
                }
                _ => vec![
                    c(n2 + aa),
                    c(-(n1 + 2.0 * n2 + aa + bb - 1.0)),
                    c(big_n + bb - 1.0),
                ],
            }
        }
        SrT516 | SrT518 => {
            let r = p.r();
            let nr = n[r - 1] as f64;
            let (ar, ar1) = (a[r - 1], a[r]);
            let (br, br1) = (b[r - 1], b[r]);
            let (sa, sb) = (ar + ar1, br + br1);
            let xr = x[r - 1];
            let hr = xr / 2.0;
            if id == SrT516 {
                let i1 = g.inv(ar1 + hr, "a_{r+1}+x_r/2");
                let i2 = g.inv(poch2(ar1 + hr - 1.0), "(a_{r+1}+x_r/2-1)_2");
                let c1 = -(br - 1.0 + hr) * i1;
                let c2 = (sa * (ar1 + br1) + nr * (nr + sa + sb - 1.0)) * i2 - (sa - br + br1 + 2.0 - xr) * i1;
                let c3 = -(ar - hr + 1.0) * (br1 - hr + 1.0) * i2;
                vec![c1, c2, c3]
            } else {
                let s = ar1 + br1;
                let i1 = g.inv(c(s - 1.0), "a_{r+1}+b_{r+1}-1");
                let i2 = g.inv(poch2(c(s - 1.0)), "(a_{r+1}+b_{r+1}-1)_2");
                let i3 = g.inv(poch3(c(s - 1.0)), "(a_{r+1}+b_{r+1}-1)_3");
                let c1 = -(br - 1.0 + hr) * i1;
                let c2 = (nr * (nr + sa + sb - 1.0) - (ar1 + hr) * (sa + sb - 1.0)) * i2
                    + (2.0 * ar1 + 2.0 * br1 + 1.0) * (sa + br - 2.0 + hr) * i2
                    - (sa - 1.0) * i1;
                let c3 = -(nr + ar + br - 2.0) * (nr + ar1 + br1 + 1.0) * (br1 - hr + 1.0) * i3;
                vec![c1, c2, c3]
            }
        }
        _ => return Err(Error::ParameterRange(format!("{id} is not an S-family relation"))),
    };
    g.finish(v)
}

fn coefficients_with_margin(id: RelationId, params: &RelationParams) -> Result<(Vec<Complex>, f64)> {
    match params {
        RelationParams::Hyper { m, s, z } => {
            let parts = h_parts(id, *m, *s)?;
            // the smallest denominator for the margin check
            let [m1, _, _] = *m;
            let [s1, _] = *s;
            let margin = match id {
                H1 => m1.abs().min((m1 - 1.0).abs()),
                H2 => (s1 - 1.0).abs().min(s1.abs()).min((s1 + 1.0).abs()),
                _ => f64::INFINITY,
            };
            Ok((parts.iter().map(|&(b, cc)| b + cc * z).collect(), margin))
        }
        RelationParams::S { p, x } => s_coefficients(id, p, x),
    }
}

/// Printed coefficients `c_k` of the relation at `params`.
pub fn coefficients(id: RelationId, params: &RelationParams) -> Result<Vec<Complex>> {
    coefficients_with_margin(id, params).map(|(v, _)| v)
}

/// Shifts `(Δn_1, [(i, Δa_i)], [(i, Δb_i)])` of the `S` terms, 0-based `i`.
type Shift = (usize, Vec<(usize, f64)>, Vec<(usize, f64)>);

fn s_shifts(id: RelationId, r: usize) -> Vec<Shift> {
    let none = (0, vec![], vec![]);
    let (p, q) = (r - 1, r);
    match id {
        S1Star1 | S2Eq101 | SrT514 => vec![none, (1, vec![], vec![(0, -1.0)]), (2, vec![], vec![(0, -2.0)])],
        S1Star2 | S2Eq102 | SrT515 => vec![none, (0, vec![], vec![(0, -1.0)]), (0, vec![], vec![(0, -2.0)])],
        S1Star3 | S2Eq103 | SrT516 => vec![
            none,
            (0, vec![(p, 1.0), (q, -1.0)], vec![(p, -1.0), (q, 1.0)]),
            (0, vec![(p, 2.0), (q, -2.0)], vec![(p, -2.0), (q, 2.0)]),
        ],
        S1Star4 | S2Eq104 | SrT517 => vec![
            none,
            (0, vec![(0, 1.0)], vec![(0, -1.0)]),
            (0, vec![(0, 2.0)], vec![(0, -2.0)]),
        ],
        S1Star6 | S2Eq106 | SrT518 => vec![
            none,
            (0, vec![], vec![(p, -1.0), (q, 1.0)]),
            (0, vec![], vec![(p, -2.0), (q, 2.0)]),
        ],
        S1Star7 => vec![none, (0, vec![(0, 1.0)], vec![(0, -1.0)]), (0, vec![(0, 1.0)], vec![])],
        S2Eq107 | SrT519 => vec![none, (0, vec![(0, 1.0)], vec![]), (0, vec![(0, 1.0)], vec![(0, -1.0)])],
        H1 | H2 | H3 => vec![],
    }
}

fn apply_shift(p: &SParams, shift: &Shift) -> Result<SParams> {
    let mut n = p.n.entries().to_vec();
    n[0] += shift.0;
    let mut a = p.a.entries().to_vec();
    for &(i, d) in &shift.1 {
        a[i] += d;
    }
    let mut b = p.b.entries().to_vec();
    for &(i, d) in &shift.2 {
        b[i] += d;
    }
    SParams::new(MultiIndex(n), ParamVector(a), ParamVector(b))
}

/// The shifted function values `F_k`, in the order of the coefficients.
pub fn terms(id: RelationId, params: &RelationParams) -> Result<Vec<Complex>> {
    match params {
        RelationParams::Hyper { m, s, z } => {
            let [m1, m2, m3] = *m;
            let [s1, s2] = *s;
            let f = |a: f64, b: f64| pfq(&[c(a), c(m2), c(m3)], &[c(b), c(s2)], *z);
            match id {
                H1 => [m1 + 1.0, m1, m1 - 1.0, m1 - 2.0].iter().map(|&mm| f(mm, s1)).collect(),
                H2 => [s1 - 1.0, s1, s1 + 1.0, s1 + 2.0].iter().map(|&ss| f(m1, ss)).collect(),
                H3 => Ok(vec![f(m1, s1)?, f(m1, s1 + 1.0)?, f(m1 + 1.0, s1 + 1.0)?]),
                _ => Err(Error::ParameterRange(format!("{id} needs S-family parameters"))),
            }
        }
        RelationParams::S { p, x } => {
            if id.family() == Family::Hyper {
                return Err(Error::ParameterRange(format!("{id} needs 3F2 parameters")));
            }
            check_shape(id, p, x)?;
            s_shifts(id, p.r())
                .iter()
                .map(|sh| s_eval(&apply_shift(p, sh)?, x, Form::Hypergeometric))
                .collect()
        }
    }
}

/// A relation evaluated at one parameter point.
#[derive(Debug, Clone, PartialEq)]
pub struct RelationInstance {
    pub id: RelationId,
    pub params: RelationParams,
    pub coefficients: Vec<Complex>,
    pub terms: Vec<Complex>,
}

impl RelationInstance {
    pub fn new(id: RelationId, params: RelationParams) -> Result<Self> {
        let coefficients = coefficients(id, &params)?;
        let terms = terms(id, &params)?;
        Ok(Self {
            id,
            params,
            coefficients,
            terms,
        })
    }

    pub fn residual(&self) -> f64 {
        relative_residual(&self.coefficients, &self.terms)
    }
}

/// `|Σ c_k F_k| / max_k |c_k F_k|`.
pub fn relative_residual(coefficients: &[Complex], terms: &[Complex]) -> f64 {
    let parts: Vec<Complex> = coefficients.iter().zip(terms).map(|(a, b)| a * b).collect();
    let scale = parts.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let sum: Complex = parts.iter().sum();
    if scale == 0.0 {
        0.0
    } else {
        sum.norm() / scale
    }
}

pub fn residual(id: RelationId, params: &RelationParams) -> Result<f64> {
    Ok(RelationInstance::new(id, params.clone())?.residual())
}

/// Smallest denominator allowed when drawing samples.
pub const SAMPLE_MARGIN: f64 = 0.02;

fn unit_param<R: Rng>(rng: &mut R) -> f64 {
    rng.gen_range(0.7..2.5)
}

fn draw<R: Rng>(id: RelationId, rng: &mut R, degree: Option<usize>) -> Result<RelationParams> {
    match id.family() {
        Family::Hyper => {
            let big_n = degree.unwrap_or_else(|| rng.gen_range(1..=4));
            Ok(RelationParams::Hyper {
                m: [unit_param(rng), -(big_n as f64), unit_param(rng)],
                s: [unit_param(rng), unit_param(rng)],
                z: c(rng.gen_range(-2.0..2.0)),
            })
        }
        fam => {
            let r = match fam {
                Family::S1 => 1,
                Family::S2 => 2,
                _ => rng.gen_range(1..=3),
            };
            let mut n: Vec<usize> = (0..r).map(|_| rng.gen_range(0..=4)).collect();
            if matches!(id, S1Star1 | S2Eq101 | SrT514) && n[0] == 0 {
                n[0] = rng.gen_range(1..=4);
            }
            if let Some(d) = degree {
                let (axis, _) = active_axis(id, r);
                n[axis] = d;
            }
            let a: Vec<f64> = (0..=r).map(|_| unit_param(rng)).collect();
            let b: Vec<f64> = (0..=r).map(|_| unit_param(rng)).collect();
            let x: Vec<f64> = (0..r).map(|_| rng.gen_range(-2.0..2.0)).collect();
            RelationParams::s(&n, &a, &b, &x)
        }
    }
}

/// Random admissible parameters: every coefficient denominator has modulus
/// at least [`SAMPLE_MARGIN`] and all terms evaluate.
pub fn sample_params<R: Rng>(id: RelationId, rng: &mut R) -> Result<RelationParams> {
    sample_with(id, rng, None)
}

fn sample_with<R: Rng>(id: RelationId, rng: &mut R, degree: Option<usize>) -> Result<RelationParams> {
    for _ in 0..1000 {
        let p = draw(id, rng, degree)?;
        if admissible(id, &p) {
            return Ok(p);
        }
    }
    Err(Error::DegenerateParameter(format!("no admissible sample found for {id}")))
}

fn admissible(id: RelationId, p: &RelationParams) -> bool {
    match coefficients_with_margin(id, p) {
        Ok((_, margin)) if margin >= SAMPLE_MARGIN => terms(id, p).is_ok(),
        _ => false,
    }
}

/// Coordinate the coefficients depend on (0-based), and whether the
/// coefficients carry the Pochhammer denominator `(a - 1 + x/2)_2`.
fn active_axis(id: RelationId, r: usize) -> (usize, bool) {
    match id {
        S1Star3 => (0, true),
        S2Eq103 => (1, true),
        SrT516 => (r - 1, true),
        S2Eq106 => (1, false),
        SrT518 => (r - 1, false),
        _ => (0, false),
    }
}

/// Sets the fitting variable: `z` for `3F2` relations, the active
/// coordinate otherwise.
fn with_variable(id: RelationId, params: &RelationParams, t: f64) -> RelationParams {
    match params {
        RelationParams::Hyper { m, s, .. } => RelationParams::Hyper { m: *m, s: *s, z: c(t) },
        RelationParams::S { p, x } => {
            let mut x = x.clone();
            x[active_axis(id, p.r()).0] = c(t);
            RelationParams::S { p: p.clone(), x }
        }
    }
}

/// Factor that clears the `x`-dependent denominators of the coefficients.
fn clearing_factor(id: RelationId, params: &RelationParams) -> Complex {
    match params {
        RelationParams::S { p, x } => {
            let (axis, poch) = active_axis(id, p.r());
            if poch {
                let a = p.a[axis + 1];
                let h = x[axis] / 2.0;
                (a - 1.0 + h) * (a + h)
            } else {
                c(1.0)
            }
        }
        RelationParams::Hyper { .. } => c(1.0),
    }
}

/// Monomial powers of the fitting variable in each unknown coefficient
/// (all but the first, which fixes the normalization).
fn monomials(id: RelationId) -> Vec<Vec<i32>> {
    match id {
        H1 => vec![vec![0, 1], vec![0, 1], vec![0]],
        H2 => vec![vec![0, 1], vec![0, 1], vec![1]],
        H3 => vec![vec![0], vec![0]],
        _ => vec![vec![0, 1, 2], vec![0, 1, 2]],
    }
}

/// Result of the least-squares coefficient oracle at one parameter point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BruteForceFit {
    pub id: RelationId,
    /// Fitted coefficients at the requested point.
    pub fitted: Vec<Complex>,
    /// Printed coefficients at the same point.
    pub printed: Vec<Complex>,
    /// Largest relative residual of the fitted relation over all samples.
    pub fit_residual: f64,
    /// Ratio of extreme singular values of the scaled design matrix.
    pub condition: f64,
    pub samples: usize,
}

impl BruteForceFit {
    /// Relative difference between fitted and printed coefficient `k`.
    pub fn deviation(&self, k: usize) -> f64 {
        let (f, p) = (self.fitted[k], self.printed[k]);
        (f - p).norm() / f.norm().max(p.norm()).max(f64::MIN_POSITIVE)
    }
}

struct Fitted {
    id: RelationId,
    base: RelationParams,
    powers: Vec<Vec<i32>>,
    u: Vec<Complex>,
}

impl Fitted {
    fn coefficients_at(&self, t: f64) -> Result<Vec<Complex>> {
        let p = with_variable(self.id, &self.base, t);
        let first = coefficients(self.id, &p)?[0];
        let d = clearing_factor(self.id, &p);
        let mut out = vec![first];
        let mut k = 0;
        for pw in &self.powers {
            let mut v = c(0.0);
            for &e in pw {
                v += self.u[k] * t.powi(e);
                k += 1;
            }
            out.push(v / d);
        }
        Ok(out)
    }
}

fn draw_variable<R: Rng>(id: RelationId, base: &RelationParams, rng: &mut R) -> Result<(f64, RelationParams)> {
    for _ in 0..1000 {
        let t = rng.gen_range(-2.0..2.0);
        let p = with_variable(id, base, t);
        if admissible(id, &p) && clearing_factor(id, &p).norm() >= SAMPLE_MARGIN {
            return Ok((t, p));
        }
    }
    Err(Error::DegenerateParameter(format!("no admissible fitting point for {id}")))
}

fn fit<R: Rng>(id: RelationId, base: &RelationParams, sample_count: usize, rng: &mut R) -> Result<(Fitted, f64)> {
    let powers = monomials(id);
    let unknowns: usize = powers.iter().map(Vec::len).sum();
    if sample_count < 2 * unknowns {
        return Err(Error::RankDeficient {
            rank: sample_count,
            unknowns,
        });
    }
    let mut rows = Vec::with_capacity(sample_count * unknowns);
    let mut rhs = Vec::with_capacity(sample_count);
    for _ in 0..sample_count {
        let (t, p) = draw_variable(id, base, rng)?;
        let f = terms(id, &p)?;
        let c0 = coefficients(id, &p)?[0];
        let d = clearing_factor(id, &p);
        let mut row = Vec::with_capacity(unknowns);
        for (k, pw) in powers.iter().enumerate() {
            for &e in pw {
                row.push(t.powi(e) * f[k + 1]);
            }
        }
        let target = -(d * c0 * f[0]);
        let scale = row.iter().map(|v| v.norm()).fold(target.norm(), f64::max).max(f64::MIN_POSITIVE);
        rows.extend(row.into_iter().map(|v| v / scale));
        rhs.push(target / scale);
    }
    let a = DMatrix::from_row_slice(sample_count, unknowns, &rows);
    let b = DVector::from_vec(rhs);
    let svd = a.svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    let rank = svd.singular_values.iter().filter(|&&s| s > 1e-12 * smax).count();
    if rank < unknowns {
        return Err(Error::RankDeficient { rank, unknowns });
    }
    let u = svd
        .solve(&b, 1e-14 * smax)
        .map_err(|e| Error::ParameterRange(e.to_string()))?;
    let fitted = Fitted {
        id,
        base: base.clone(),
        powers,
        u: u.iter().copied().collect(),
    };
    Ok((fitted, smax / smin))
}

/// Fits the coefficients of `id` as low-degree polynomials in the fitting
/// variable (`z`, or the active coordinate with its denominator cleared),
/// holding the first coefficient at its printed value. The fit uses
/// `sample_count` random points; the residual is reported over a further
/// two independent sets of the same size.
pub fn brute_force_coefficients<R: Rng>(
    id: RelationId,
    params: &RelationParams,
    sample_count: usize,
    rng: &mut R,
) -> Result<BruteForceFit> {
    let (fitted, condition) = fit(id, params, sample_count, rng)?;
    let mut worst: f64 = 0.0;
    for _ in 0..3 * sample_count {
        let (t, p) = draw_variable(id, params, rng)?;
        let cs = fitted.coefficients_at(t)?;
        worst = worst.max(relative_residual(&cs, &terms(id, &p)?));
    }
    let t0 = match params {
        RelationParams::Hyper { z, .. } => z.re,
        RelationParams::S { p, x } => x[active_axis(id, p.r()).0].re,
    };
    Ok(BruteForceFit {
        id,
        fitted: fitted.coefficients_at(t0)?,
        printed: coefficients(id, params)?,
        fit_residual: worst,
        condition,
        samples: 3 * sample_count,
    })
}

/// Random parameters whose degree on the fitting axis is 4, enough for the
/// fit to determine every unknown.
pub fn sample_fit_params<R: Rng>(id: RelationId, rng: &mut R) -> Result<RelationParams> {
    sample_with(id, rng, Some(4))
}

/// A printed coefficient contradicted by the least-squares oracle: the
/// fitted coefficient equals `factor` times the printed one.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Erratum {
    pub id: RelationId,
    pub coefficient: usize,
    pub factor: f64,
    pub fit_residual: f64,
    pub sample_sets: usize,
    pub description: String,
}

/// Fit tolerance for accepting a brute-force correction.
pub const FIT_TOLERANCE: f64 = 1e-10;
/// Coefficient deviations below this count as agreement with the print.
pub const AGREEMENT: f64 = 1e-7;

/// Runs the oracle on `sets` independent degree-4 parameter points and
/// returns one erratum per coefficient that disagrees with the print by a
/// constant factor on every set. An empty list confirms the printed
/// coefficients; `None` means the fits did not reach [`FIT_TOLERANCE`] or
/// the disagreement is not a constant factor.
pub fn find_errata<R: Rng>(
    id: RelationId,
    sets: usize,
    sample_count: usize,
    rng: &mut R,
) -> Result<Option<Vec<Erratum>>> {
    let mut fits = Vec::with_capacity(sets);
    for _ in 0..sets {
        let p = sample_fit_params(id, rng)?;
        fits.push(brute_force_coefficients(id, &p, sample_count, rng)?);
    }
    let fit_residual = fits.iter().map(|f| f.fit_residual).fold(0.0, f64::max);
    if fit_residual > FIT_TOLERANCE {
        return Ok(None);
    }
    let mut out = Vec::new();
    for k in 1..fits[0].printed.len() {
        if fits.iter().all(|f| f.deviation(k) <= AGREEMENT) {
            continue;
        }
        let ratios: Vec<Complex> = fits.iter().map(|f| f.fitted[k] / f.printed[k]).collect();
        let mean = ratios.iter().sum::<Complex>() / ratios.len() as f64;
        let constant = ratios.iter().all(|r| (r - mean).norm() <= AGREEMENT * mean.norm()) && mean.im.abs() <= AGREEMENT;
        if !constant {
            return Ok(None);
        }
        let factor = mean.re;
        out.push(Erratum {
            id,
            coefficient: k,
            factor,
            fit_residual,
            sample_sets: sets,
            description: format!(
                "coefficient {} of {id} as printed must be multiplied by {factor:.12}",
                k + 1
            ),
        });
    }
    Ok(Some(out))
}

/// Printed coefficients with the given errata applied.
pub fn corrected_coefficients(id: RelationId, params: &RelationParams, errata: &[Erratum]) -> Result<Vec<Complex>> {
    let mut cs = coefficients(id, params)?;
    for e in errata.iter().filter(|e| e.id == id) {
        cs[e.coefficient] *= e.factor;
    }
    Ok(cs)
}

//! Terminating generalized hypergeometric series.

use crate::error::{Error, Result};
use crate::numerics::{c, Complex};

#[derive(Debug, Clone, PartialEq)]
pub struct HyperParams {
    pub numerator: Vec<Complex>,
    pub denominator: Vec<Complex>,
    pub argument: Complex,
}

impl HyperParams {
    pub fn new(numerator: Vec<Complex>, denominator: Vec<Complex>, argument: Complex) -> Self {
        Self {
            numerator,
            denominator,
            argument,
        }
    }
}

/// The integer `m >= 0` with `a = -m`, if `a` is a non-positive integer.
pub fn non_positive_integer(a: Complex) -> Option<usize> {
    let m = (-a.re).round();
    if m < 0.0 {
        return None;
    }
    let tol = 1e-9 * (1.0 + a.norm());
    if (a.re + m).abs() <= tol && a.im.abs() <= tol {
        Some(m as usize)
    } else {
        None
    }
}

/// Length of the series: the smallest `n` with some numerator parameter `-n`.
pub fn termination_index(numerator: &[Complex]) -> Option<usize> {
    numerator.iter().filter_map(|&a| non_positive_integer(a)).min()
}

/// Compensated complex accumulator.
#[derive(Default, Clone, Copy)]
struct KahanSum {
    sum: Complex,
    carry: Complex,
}

impl KahanSum {
    fn add(&mut self, x: Complex) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }
}

pub fn eval_terminating(params: &HyperParams) -> Result<Complex> {
    eval_with_magnitude(params).map(|(v, _)| v)
}

/// Above this ratio of `Σ |term_k|` to `|sum|` the series is re-summed in
/// double-double arithmetic.
const CANCELLATION_LIMIT: f64 = 1e3;

/// The series value together with `Σ |term_k|`, a scale for the rounding
/// error of the alternating sum.
///
/// Sums that cancel heavily are recomputed with terms and partial sums held
/// as unevaluated pairs of doubles, so the returned value keeps full double
/// precision relative to itself rather than to `Σ |term_k|`.
pub fn eval_with_magnitude(params: &HyperParams) -> Result<(Complex, f64)> {
    let (v, magnitude, n) = eval_double(params)?;
    if magnitude > CANCELLATION_LIMIT * v.norm() {
        return Ok((dd::eval(params, n), magnitude));
    }
    Ok((v, magnitude))
}

fn eval_double(params: &HyperParams) -> Result<(Complex, f64, usize)> {
    let n = termination_index(&params.numerator).ok_or(Error::NonTerminating)?;
    for (j, &b) in params.denominator.iter().enumerate() {
        if let Some(m) = non_positive_integer(b) {
            // (b)_k contains the factor b + m for every k > m
            if m < n {
                return Err(Error::ZeroDenominator { param: j, term: m + 1 });
            }
        }
    }
    let z = params.argument;
    let mut term = c(1.0);
    let mut acc = KahanSum::default();
    let mut magnitude = 1.0;
    acc.add(term);
    for k in 0..n {
        let kf = k as f64;
        let mut num = z / (kf + 1.0);
        for &a in &params.numerator {
            num *= a + kf;
        }
        let mut den = c(1.0);
        for &b in &params.denominator {
            den *= b + kf;
        }
        term = term * num / den;
        magnitude += term.norm();
        acc.add(term);
    }
    Ok((acc.sum, magnitude, n))
}

/// Double-double arithmetic for the cancellation fallback.
mod dd {
    use super::HyperParams;
    use crate::numerics::Complex;
    use std::ops::{Add, Div, Mul, Sub};

    #[derive(Clone, Copy, Debug, Default)]
    pub struct Dd {
        hi: f64,
        lo: f64,
    }

    fn two_sum(a: f64, b: f64) -> Dd {
        let s = a + b;
        let bb = s - a;
        Dd {
            hi: s,
            lo: (a - (s - bb)) + (b - bb),
        }
    }

    fn quick_two_sum(a: f64, b: f64) -> Dd {
        let s = a + b;
        Dd { hi: s, lo: b - (s - a) }
    }

    fn two_prod(a: f64, b: f64) -> Dd {
        let p = a * b;
        Dd { hi: p, lo: a.mul_add(b, -p) }
    }

    impl Dd {
        pub fn from(x: f64) -> Self {
            Dd { hi: x, lo: 0.0 }
        }

        pub fn to_f64(self) -> f64 {
            self.hi + self.lo
        }

        fn neg(self) -> Self {
            Dd {
                hi: -self.hi,
                lo: -self.lo,
            }
        }
    }

    impl Add for Dd {
        type Output = Dd;
        fn add(self, o: Dd) -> Dd {
            let s = two_sum(self.hi, o.hi);
            let t = two_sum(self.lo, o.lo);
            let s = quick_two_sum(s.hi, s.lo + t.hi);
            quick_two_sum(s.hi, s.lo + t.lo)
        }
    }

    impl Sub for Dd {
        type Output = Dd;
        fn sub(self, o: Dd) -> Dd {
            self + o.neg()
        }
    }

    impl Mul for Dd {
        type Output = Dd;
        fn mul(self, o: Dd) -> Dd {
            let p = two_prod(self.hi, o.hi);
            quick_two_sum(p.hi, p.lo + (self.hi * o.lo + self.lo * o.hi))
        }
    }

    impl Div for Dd {
        type Output = Dd;
        fn div(self, o: Dd) -> Dd {
            let q1 = self.hi / o.hi;
            let r = self - o * Dd::from(q1);
            let q2 = r.hi / o.hi;
            let r = r - o * Dd::from(q2);
            let q3 = r.hi / o.hi;
            quick_two_sum(q1, q2) + Dd::from(q3)
        }
    }

    #[derive(Clone, Copy, Debug, Default)]
    pub struct DdComplex {
        re: Dd,
        im: Dd,
    }

    impl DdComplex {
        pub fn from(z: Complex) -> Self {
            DdComplex {
                re: Dd::from(z.re),
                im: Dd::from(z.im),
            }
        }

        fn to_complex(self) -> Complex {
            Complex::new(self.re.to_f64(), self.im.to_f64())
        }

        fn add_real(self, k: f64) -> Self {
            DdComplex {
                re: self.re + Dd::from(k),
                im: self.im,
            }
        }

        fn add(self, o: Self) -> Self {
            DdComplex {
                re: self.re + o.re,
                im: self.im + o.im,
            }
        }

        fn mul(self, o: Self) -> Self {
            DdComplex {
                re: self.re * o.re - self.im * o.im,
                im: self.re * o.im + self.im * o.re,
            }
        }

        fn div(self, o: Self) -> Self {
            let d = o.re * o.re + o.im * o.im;
            let num = self.mul(DdComplex {
                re: o.re,
                im: o.im.neg(),
            });
            DdComplex {
                re: num.re / d,
                im: num.im / d,
            }
        }
    }

    /// The first `n + 1` terms summed in double-double.
    pub fn eval(params: &HyperParams, n: usize) -> Complex {
        let z = DdComplex::from(params.argument);
        let num: Vec<DdComplex> = params.numerator.iter().map(|&a| DdComplex::from(a)).collect();
        let den: Vec<DdComplex> = params.denominator.iter().map(|&b| DdComplex::from(b)).collect();
        let one = DdComplex::from(Complex::new(1.0, 0.0));
        let mut term = one;
        let mut sum = one;
        for k in 0..n {
            let kf = k as f64;
            let mut ratio = z;
            for a in &num {
                ratio = ratio.mul(a.add_real(kf));
            }
            let mut d = DdComplex::from(Complex::new(kf + 1.0, 0.0));
            for b in &den {
                d = d.mul(b.add_real(kf));
            }
            term = term.mul(ratio).div(d);
            sum = sum.add(term);
        }
        sum.to_complex()
    }
}

/// `pFq(num; den; z)` for a terminating series.
pub fn pfq(numerator: &[Complex], denominator: &[Complex], z: Complex) -> Result<Complex> {
    eval_terminating(&HyperParams::new(numerator.to_vec(), denominator.to_vec(), z))
}

/// `3F2(a1, a2, a3; b1, b2; 1)`.
pub fn f32_unit(num: [Complex; 3], den: [Complex; 2]) -> Result<Complex> {
    pfq(&num, &den, c(1.0))
}

//! Gamma, Beta and Pochhammer primitives over complex arguments.
//!
//! Gamma values are carried in log form so that products of many Gamma
//! factors with large imaginary parts can be assembled before a single
//! exponentiation.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

pub type Complex = Complex64;

pub const I: Complex = Complex::new(0.0, 1.0);

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln Γ(z)` split into modulus and phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogGammaValue {
    pub log_modulus: f64,
    pub phase: f64,
}

impl LogGammaValue {
    pub fn as_complex(self) -> Complex {
        Complex::new(self.log_modulus, self.phase)
    }

    pub fn value(self) -> Complex {
        self.as_complex().exp()
    }
}

pub fn c(re: f64) -> Complex {
    Complex::new(re, 0.0)
}

fn is_pole(z: Complex) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

fn ln_gamma_lanczos(z: Complex) -> Complex {
    let z = z - 1.0;
    let mut x = c(LANCZOS[0]);
    for (i, &coef) in LANCZOS.iter().enumerate().skip(1) {
        x += coef / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

/// `ln sin(πz)`, stable for large `|Im z|`.
fn ln_sin_pi(z: Complex) -> Complex {
    let w = z * PI;
    if w.im > 20.0 {
        // sin w = -e^{-iw}(1 - e^{2iw}) / (2i)
        -I * w + Complex::new(0.5f64.ln(), PI / 2.0) + (1.0 - (2.0 * I * w).exp()).ln()
    } else if w.im < -20.0 {
        // sin w = e^{iw}(1 - e^{-2iw}) / (2i)
        I * w + Complex::new(0.5f64.ln(), -PI / 2.0) + (1.0 - (-2.0 * I * w).exp()).ln()
    } else {
        w.sin().ln()
    }
}

fn ln_gamma_unchecked(z: Complex) -> Complex {
    if z.re < 0.5 {
        // Γ(z)Γ(1-z) = π / sin(πz)
        c(PI.ln()) - ln_sin_pi(z) - ln_gamma_lanczos(1.0 - z)
    } else {
        ln_gamma_lanczos(z)
    }
}

pub fn log_gamma(z: Complex) -> Result<LogGammaValue> {
    if is_pole(z) {
        return Err(Error::Pole(z.re));
    }
    let v = ln_gamma_unchecked(z);
    Ok(LogGammaValue {
        log_modulus: v.re,
        phase: v.im,
    })
}

/// Complex `ln Γ(z)`; the imaginary part is a phase, not reduced mod 2π.
pub fn ln_gamma(z: Complex) -> Result<Complex> {
    log_gamma(z).map(LogGammaValue::as_complex)
}

pub fn gamma(z: Complex) -> Result<Complex> {
    ln_gamma(z).map(|v| v.exp())
}

/// `ln Γ(x)` for real positive `x`.
pub fn ln_gamma_real(x: f64) -> Result<f64> {
    if x <= 0.0 {
        return Err(Error::ParameterRange(format!("ln_gamma_real needs x > 0, got {x}")));
    }
    Ok(ln_gamma_unchecked(c(x)).re)
}

/// `B(a, b) = Γ(a)Γ(b)/Γ(a+b)`. Outside `Re a, Re b > 0` this is the
/// Gamma-ratio continuation rather than the Euler integral.
pub fn beta(a: Complex, b: Complex) -> Result<Complex> {
    Ok((ln_gamma(a)? + ln_gamma(b)? - ln_gamma(a + b)?).exp())
}

pub fn pochhammer(a: Complex, k: usize) -> Complex {
    let mut p = c(1.0);
    for i in 0..k {
        p *= a + i as f64;
    }
    p
}

pub fn pochhammer_real(a: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |p, i| p * (a + i as f64))
}

pub fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |p, k| p * k as f64)
}

/// `C(top, k)` for real `top`, as `(-1)^k (-top)_k / k!`.
pub fn binomial(top: f64, k: usize) -> f64 {
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    sign * pochhammer_real(-top, k) / factorial(k)
}

/// `i^n`.
pub fn i_pow(n: usize) -> Complex {
    match n % 4 {
        0 => c(1.0),
        1 => I,
        2 => c(-1.0),
        _ => -I,
    }
}

/// Relative difference with a floor of 1 on the scale of `b`.
pub fn rel_diff(a: Complex, b: Complex) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gamma_at_one_and_half() {
        let g1 = log_gamma(c(1.0)).unwrap();
        assert!(g1.log_modulus.abs() < 1e-15);
        assert!(g1.phase.abs() < 1e-15);
        let gh = gamma(c(0.5)).unwrap();
        assert_relative_eq!(gh.re, 1.772_453_850_905_516, max_relative = 1e-14);
        assert!(gh.im.abs() < 1e-15);
    }

    #[test]
    fn gamma_integers() {
        for n in 1..20 {
            let g = gamma(c(n as f64)).unwrap();
            assert_relative_eq!(g.re, factorial(n - 1), max_relative = 1e-13);
        }
    }

    #[test]
    fn half_line_modulus() {
        let g = gamma(Complex::new(0.5, 1.0)).unwrap();
        assert_relative_eq!(g.norm_sqr(), PI / PI.cosh(), max_relative = 1e-13);
        assert_relative_eq!(g.norm_sqr(), 0.271_014_951_399_418_4, max_relative = 1e-13);
    }

    #[test]
    fn negative_argument_uses_reflection() {
        // Γ(-1/2) = -2√π
        let g = gamma(c(-0.5)).unwrap();
        assert_relative_eq!(g.re, -2.0 * PI.sqrt(), max_relative = 1e-13);
        let g = gamma(c(-2.5)).unwrap();
        assert_relative_eq!(g.re, -8.0 * PI.sqrt() / 15.0, max_relative = 1e-13);
    }

    #[test]
    fn poles_are_errors() {
        for z in [0.0, -1.0, -7.0] {
            assert!(matches!(log_gamma(c(z)), Err(Error::Pole(_))));
        }
        assert!(log_gamma(Complex::new(-1.0, 1e-3)).is_ok());
    }

    #[test]
    fn large_imaginary_part_stays_finite() {
        let v = log_gamma(Complex::new(0.3, 45.0)).unwrap();
        assert!(v.log_modulus.is_finite() && v.log_modulus < -60.0);
        let v = log_gamma(Complex::new(-0.3, -45.0)).unwrap();
        assert!(v.log_modulus.is_finite());
        // |Γ(1/2 + iy)|² = π / cosh(πy) far out on the line
        let y = 40.0;
        let lg = ln_gamma(Complex::new(0.5, y)).unwrap();
        let expected = 0.5 * (PI.ln() - (PI * y + (1.0 + (-2.0 * PI * y).exp()).ln() - 2f64.ln()));
        assert_relative_eq!(lg.re, expected, max_relative = 1e-13);
    }

    #[test]
    fn beta_values() {
        assert_relative_eq!(beta(c(1.0), c(1.0)).unwrap().re, 1.0, max_relative = 1e-14);
        assert_relative_eq!(beta(c(2.0), c(3.0)).unwrap().re, 1.0 / 12.0, max_relative = 1e-14);
        assert_relative_eq!(beta(c(0.5), c(0.5)).unwrap().re, PI, max_relative = 1e-14);
        // B(1-i, 1+i) = π / sinh(π)
        let b = beta(Complex::new(1.0, -1.0), Complex::new(1.0, 1.0)).unwrap();
        assert_relative_eq!(b.re, PI / PI.sinh(), max_relative = 1e-13);
        assert!(b.im.abs() < 1e-15);
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(c(7.3), 0), c(1.0));
        assert_eq!(pochhammer(c(3.0), 2), c(12.0));
        assert_eq!(pochhammer(c(-2.0), 3), c(0.0));
        assert_eq!(pochhammer_real(-2.0, 3), 0.0);
    }

    #[test]
    fn binomial_extension() {
        assert_relative_eq!(binomial(5.0, 2), 10.0);
        assert_relative_eq!(binomial(0.5, 2), -0.125);
        assert_eq!(binomial(3.0, 0), 1.0);
    }

    #[test]
    fn powers_of_i() {
        for n in 0..9 {
            let direct = I.powu(n as u32);
            assert!((i_pow(n) - direct).norm() < 1e-15);
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn reflection_on_half_line(y in 0.1f64..5.0) {
                let g = gamma(Complex::new(0.5, y)).unwrap();
                let lhs = g.norm_sqr() * (PI * y).cosh();
                prop_assert!((lhs - PI).abs() <= 1e-12 * PI);
            }

            #[test]
            fn functional_equation(re in 0.1f64..20.0, im in -20.0f64..20.0) {
                let z = Complex::new(re, im);
                // compare in log space: Γ(z+1) / (z Γ(z)) = 1
                let d = ln_gamma(z + 1.0).unwrap() - ln_gamma(z).unwrap() - z.ln();
                let ratio = d.exp();
                prop_assert!((ratio - 1.0).norm() <= 1e-12, "z={} ratio={}", z, ratio);
            }

            #[test]
            fn conjugate_symmetry(re in -10.0f64..20.0, im in -20.0f64..20.0) {
                prop_assume!(im.abs() > 1e-3 || re > 0.0);
                let z = Complex::new(re, im);
                let a = gamma(z.conj()).unwrap();
                let b = gamma(z).unwrap().conj();
                prop_assert!((a - b).norm() <= 1e-13 * b.norm());
            }

            #[test]
            fn pochhammer_splits(re in -5.0f64..5.0, im in -3.0f64..3.0, j in 0usize..6, k in 0usize..6) {
                let a = Complex::new(re, im);
                let lhs = pochhammer(a, j + k);
                let rhs = pochhammer(a, j) * pochhammer(a + j as f64, k);
                prop_assert!((lhs - rhs).norm() <= 1e-12 * lhs.norm().max(1.0));
            }
        }
    }
}

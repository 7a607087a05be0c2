//! Complex log-gamma, Γ modulus/argument and Pochhammer symbols.
//!
//! `ln Γ(w)` is evaluated with a shifted Stirling series: the argument is
//! pushed to `Re w ≥ 10` by the recurrence `Γ(w+1) = wΓ(w)` and the
//! asymptotic series is summed there. Arguments with `Re w < 0` go through the
//! reflection formula first. The lower half plane is obtained from the upper
//! one by Schwarz reflection, so `ln Γ(w̄)` is the exact conjugate of `ln Γ(w)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{HahnError, Result};

pub type ComplexNumber = Complex64;

/// `ln(2π)/2`.
const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

/// Stirling coefficients `B_{2k} / (2k(2k-1))`, k = 1..12.
pub const STIRLING_COEFFICIENTS: [f64; 12] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43_867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
    77_683.0 / 5796.0,
    -236_364_091.0 / 1_506_960.0,
];

/// `ln Γ(w)` split into `ln|Γ(w)|` and the principal argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaValue {
    pub log_modulus: f64,
    /// Principal value in (−π, π].
    pub argument: f64,
}

impl GammaValue {
    pub fn modulus(&self) -> f64 {
        self.log_modulus.exp()
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::from_polar(self.modulus(), self.argument)
    }
}

/// Reduce an angle to the principal interval (−π, π].
pub fn principal_angle(theta: f64) -> f64 {
    if theta > -PI && theta <= PI {
        return theta;
    }
    let two_pi = 2.0 * PI;
    let mut t = theta.rem_euclid(two_pi);
    if t > PI {
        t -= two_pi;
    }
    t
}

/// True when `w` is one of 0, −1, −2, …
pub fn is_gamma_pole(w: Complex64) -> bool {
    w.im == 0.0 && w.re <= 0.0 && w.re == w.re.round()
}

/// Log-gamma engine with an explicit Stirling coefficient table.
///
/// The module-level functions use [`LogGamma::default`]. A custom table is
/// only useful for exercising the validation suite against a broken engine.
#[derive(Debug, Clone)]
pub struct LogGamma {
    coefficients: Vec<f64>,
    shift_threshold: f64,
}

impl Default for LogGamma {
    fn default() -> Self {
        Self {
            coefficients: STIRLING_COEFFICIENTS.to_vec(),
            shift_threshold: 10.0,
        }
    }
}

impl LogGamma {
    pub fn with_coefficients(coefficients: Vec<f64>) -> Self {
        Self {
            coefficients,
            ..Self::default()
        }
    }

    /// `ln Γ(w)` on a branch that is continuous in the upper half plane
    /// (imaginary part not reduced).
    pub fn ln_gamma_complex(&self, w: Complex64) -> Result<Complex64> {
        if !(w.re.is_finite() && w.im.is_finite()) {
            return Err(HahnError::NonFinite("ln_gamma argument"));
        }
        if is_gamma_pole(w) {
            return Err(HahnError::GammaPole(w.re));
        }
        if w.im < 0.0 {
            return Ok(self.ln_gamma_complex(w.conj())?.conj());
        }
        if w.re < 0.0 {
            // Γ(w)Γ(1−w) = π / sin(πw)
            let rest = self.ln_gamma_complex(Complex64::new(1.0, 0.0) - w)?;
            return Ok(Complex64::new(PI.ln(), 0.0) - ln_sin_pi(w) - rest);
        }
        Ok(self.shifted_stirling(w))
    }

    pub fn ln_gamma(&self, w: Complex64) -> Result<GammaValue> {
        let l = self.ln_gamma_complex(w)?;
        Ok(GammaValue {
            log_modulus: l.re,
            argument: principal_angle(l.im),
        })
    }

    fn shifted_stirling(&self, w: Complex64) -> Complex64 {
        if w.re >= self.shift_threshold {
            return self.stirling(w);
        }
        let steps = (self.shift_threshold - w.re).ceil();
        let z = w + steps;
        self.stirling(z) - sum_ln_factors(w, steps as usize)
    }

    fn stirling(&self, z: Complex64) -> Complex64 {
        let inv = z.inv();
        let inv2 = inv * inv;
        let mut series = Complex64::new(0.0, 0.0);
        let mut power = inv;
        for &c in &self.coefficients {
            series += power * c;
            power *= inv2;
        }
        (z - 0.5) * z.ln() - z + HALF_LN_TWO_PI + series
    }
}

/// Σ_{j<count} ln(w + j), factor by factor so the branch stays continuous.
fn sum_ln_factors(w: Complex64, count: usize) -> Complex64 {
    (0..count).map(|j| (w + j as f64).ln()).sum()
}

/// `ln sin(πw)` for `Im w ≥ 0` without overflow at large imaginary part.
fn ln_sin_pi(w: Complex64) -> Complex64 {
    let z = w * PI;
    if z.im.abs() < 1.0 {
        return z.sin().ln();
    }
    if z.im < 0.0 {
        return ln_sin_pi(w.conj()).conj();
    }
    // sin z = (i/2) e^{-iz} (1 - e^{2iz})
    let i = Complex64::new(0.0, 1.0);
    let u = (i * z * 2.0).exp();
    -i * z + Complex64::new(-std::f64::consts::LN_2, PI / 2.0) + (Complex64::new(1.0, 0.0) - u).ln()
}

fn engine() -> &'static LogGamma {
    static ENGINE: std::sync::OnceLock<LogGamma> = std::sync::OnceLock::new();
    ENGINE.get_or_init(LogGamma::default)
}

pub fn ln_gamma(w: Complex64) -> Result<GammaValue> {
    engine().ln_gamma(w)
}

/// Continuous-branch `ln Γ(w)`; see [`LogGamma::ln_gamma_complex`].
pub fn ln_gamma_complex(w: Complex64) -> Result<Complex64> {
    engine().ln_gamma_complex(w)
}

/// `ln|Γ(x)|` for real `x` off the poles.
pub fn ln_gamma_real(x: f64) -> Result<f64> {
    Ok(ln_gamma(Complex64::new(x, 0.0))?.log_modulus)
}

/// `|Γ(w)|`, infinite at the poles.
pub fn gamma_abs(w: Complex64) -> f64 {
    match ln_gamma(w) {
        Ok(g) => g.modulus(),
        Err(_) => f64::INFINITY,
    }
}

/// `1/|Γ(w)|`; exactly zero at the poles.
pub fn recip_gamma_abs(w: Complex64) -> f64 {
    match ln_gamma(w) {
        Ok(g) => (-g.log_modulus).exp(),
        Err(_) => 0.0,
    }
}

/// Principal argument of Γ(w).
pub fn gamma_arg(w: Complex64) -> Result<f64> {
    Ok(ln_gamma(w)?.argument)
}

/// Rising factorial (x)_n = x(x+1)…(x+n−1).
pub fn pochhammer(x: Complex64, n: usize) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    for j in 0..n {
        acc *= x + j as f64;
    }
    acc
}

/// Sign and `ln|(x)_n|` of a real rising factorial, computed factor by factor.
pub fn signed_ln_pochhammer(x: f64, n: usize) -> (f64, f64) {
    let mut sign = 1.0;
    let mut acc = 0.0;
    for j in 0..n {
        let f = x + j as f64;
        if f == 0.0 {
            return (0.0, f64::NEG_INFINITY);
        }
        if f < 0.0 {
            sign = -sign;
        }
        acc += f.abs().ln();
    }
    (sign, acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn trivial_values() {
        let g = ln_gamma(c(1.0, 0.0)).unwrap();
        assert!(g.log_modulus.abs() < 1e-15);
        assert_eq!(g.argument, 0.0);
        let half = ln_gamma(c(0.5, 0.0)).unwrap();
        assert!((half.log_modulus - PI.sqrt().ln()).abs() < 1e-14);
        assert!((gamma_abs(c(2.0, 0.0)) - 1.0).abs() < 1e-15);
        assert_eq!(gamma_arg(c(3.0, 0.0)).unwrap(), 0.0);
    }

    #[test]
    fn imaginary_unit_modulus() {
        // |Γ(ix)|² = π / (x sinh πx)
        let expected = (PI / (PI.sinh())).sqrt();
        assert!(rel(gamma_abs(c(0.0, 1.0)), expected) < 1e-13);
        assert!(rel(gamma_abs(c(0.0, 1.0)), 0.521_564_046_864_939_8) < 1e-13);
        // |Γ(1+i)| = |i Γ(i)|
        assert!(rel(gamma_abs(c(1.0, 1.0)), 0.521_564_046_864_939_8) < 1e-13);
    }

    #[test]
    fn poles() {
        assert_eq!(ln_gamma(c(0.0, 0.0)), Err(HahnError::GammaPole(0.0)));
        assert!(matches!(
            gamma_arg(c(-3.0, 0.0)),
            Err(HahnError::GammaPole(_))
        ));
        assert_eq!(recip_gamma_abs(c(-3.0, 0.0)), 0.0);
        assert!(gamma_abs(c(-3.0, 0.0)).is_infinite());
        assert!(recip_gamma_abs(c(-3.0, 1e-9)) > 0.0);
    }

    // Reference values from a 40-digit evaluation.
    const FROZEN: [(f64, f64, f64, f64); 7] = [
        (0.5, 14.5, -21.857_608_205_321_327, -0.854_711_450_348_491_3),
        (0.0, 1.0, -0.650_923_199_301_856_4, -1.872_436_647_262_429_9),
        (2.0, 3.0, -2.092_851_753_092_733_5, 2.302_396_543_466_868),
        (
            -3.3,
            2.7,
            -7.937_646_656_768_488_5,
            -1.846_004_277_938_844_8,
        ),
        (-20.5, -60.0, -179.723_712_082_441_6, 1.725_298_825_990_067),
        (45.0, 99.0, 51.308_282_124_531_95, 1.438_346_139_179_434_3),
        (
            0.25,
            -0.75,
            -0.169_725_085_677_072_98,
            1.339_643_442_992_360_3,
        ),
    ];

    #[test]
    fn frozen_high_precision_values() {
        for &(re, im, lm, arg) in &FROZEN {
            let g = ln_gamma(c(re, im)).unwrap();
            assert!(
                (g.log_modulus - lm).abs() <= 1e-12 * lm.abs().max(1.0),
                "log modulus at {re}+{im}i: {} vs {lm}",
                g.log_modulus
            );
            assert!(
                (g.argument - arg).abs() < 1e-11,
                "arg at {re}+{im}i: {} vs {arg}",
                g.argument
            );
        }
    }

    #[test]
    fn conjugate_symmetry_is_exact() {
        for &(re, im, _, _) in &FROZEN {
            let a = ln_gamma_complex(c(re, im)).unwrap();
            let b = ln_gamma_complex(c(re, -im)).unwrap();
            assert_eq!(a, b.conj());
        }
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(c(3.7, -2.0), 0), c(1.0, 0.0));
        assert_eq!(pochhammer(c(2.0, 0.0), 3), c(24.0, 0.0));
        assert_eq!(pochhammer(c(1.0, 1.0), 2), c(1.0, 3.0));
        let (s, l) = signed_ln_pochhammer(-2.5, 3);
        assert_eq!(s, -1.0);
        assert!((l - (2.5f64 * 1.5 * 0.5).ln()).abs() < 1e-15);
    }

    #[test]
    fn principal_angle_range() {
        assert_eq!(principal_angle(PI), PI);
        assert!((principal_angle(-PI) - PI).abs() < 1e-15);
        assert!((principal_angle(7.0) - (7.0 - 2.0 * PI)).abs() < 1e-15);
    }
}

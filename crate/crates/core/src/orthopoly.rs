//! Continuous Hahn and Hahn polynomials, plus the classical Jacobi and
//! Laguerre polynomials used to build bases.
//!
//! All Hahn-type polynomials here are the *normalized* versions, whose
//! three-term recursions are symmetric.
//!
//! The continuous Hahn polynomial `P_n^μ(z; ν; a, b)` is evaluated by its
//! recursion by default. The terminating ₃F₂ form is kept as an independent
//! route for moderate degrees.

use std::f64::consts::{FRAC_PI_2, PI};
use std::ops::Deref;

use num_complex::{Complex, Complex64};
use serde::{Deserialize, Serialize};
use twofloat::TwoFloat;

use crate::error::{HahnError, Result};
use crate::specfun::{ln_gamma, ln_gamma_real, recip_gamma_abs, signed_ln_pochhammer};

/// Parameters `(μ, ν, a, b)` of the continuous Hahn family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContinuousHahnParams {
    pub mu: f64,
    pub nu: f64,
    pub a: f64,
    pub b: f64,
}

impl ContinuousHahnParams {
    pub fn new(mu: f64, nu: f64, a: f64, b: f64) -> Self {
        Self { mu, nu, a, b }
    }

    /// μ, ν > 0 is required for the weight to be a positive measure.
    pub fn check_orthogonality(&self) -> Result<()> {
        if self.mu > 0.0 && self.nu > 0.0 && self.a.is_finite() && self.b.is_finite() {
            Ok(())
        } else {
            Err(HahnError::OutsideOrthogonalityRegime(format!(
                "mu = {}, nu = {} (both must be positive)",
                self.mu, self.nu
            )))
        }
    }

    fn sum_ab(&self) -> f64 {
        self.a + self.b
    }

    /// `μ + i(z + a)` for complex `z`.
    pub fn first_gamma_argument(&self, z: Complex64) -> Complex64 {
        Complex64::new(self.mu - z.im, z.re + self.a)
    }

    /// `ν + i(z − b)` for complex `z`.
    pub fn second_gamma_argument(&self, z: Complex64) -> Complex64 {
        Complex64::new(self.nu - z.im, z.re - self.b)
    }
}

/// Parameters `(N, α, β)` of the discrete Hahn family on `{0, …, N}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HahnParams {
    /// N, the largest argument (and degree).
    pub size: usize,
    pub alpha: f64,
    pub beta: f64,
}

/// Image of a Hahn parameter set in the continuous Hahn parameters, with the
/// combination `i(a+b)` kept as the real number it becomes under the map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContinuousImage {
    pub two_mu: f64,
    pub two_nu: f64,
    pub i_sum_ab: f64,
}

impl HahnParams {
    pub fn new(size: usize, alpha: f64, beta: f64) -> Self {
        Self { size, alpha, beta }
    }

    fn admissible(x: f64, size: usize) -> bool {
        x > -1.0 || x < -(size as f64)
    }

    pub fn check(&self) -> Result<()> {
        if Self::admissible(self.alpha, self.size) && Self::admissible(self.beta, self.size) {
            Ok(())
        } else {
            Err(HahnError::NonOrthogonalityRegime(format!(
                "alpha = {}, beta = {} must each be > -1 or < -N = -{}",
                self.alpha, self.beta, self.size
            )))
        }
    }

    /// Map `2μ = −N`, `2ν = α+β+N+2`, `i(a+b) = (α−β)/2`.
    pub fn negative_mu_image(&self) -> ContinuousImage {
        let n = self.size as f64;
        ContinuousImage {
            two_mu: -n,
            two_nu: self.alpha + self.beta + n + 2.0,
            i_sum_ab: 0.5 * (self.alpha - self.beta),
        }
    }

    /// Map `2μ = α+1`, `2ν = β+1`, `i(a+b) = −(α+β)/2 − N − 1`.
    pub fn positive_mu_image(&self) -> ContinuousImage {
        ContinuousImage {
            two_mu: self.alpha + 1.0,
            two_nu: self.beta + 1.0,
            i_sum_ab: -0.5 * (self.alpha + self.beta) - self.size as f64 - 1.0,
        }
    }

    /// Inverse of [`HahnParams::negative_mu_image`].
    pub fn from_negative_mu_image(img: ContinuousImage) -> Result<Self> {
        let size = integer_size(-img.two_mu)?;
        let sum = img.two_nu - size as f64 - 2.0;
        let diff = 2.0 * img.i_sum_ab;
        Ok(Self::new(size, 0.5 * (sum + diff), 0.5 * (sum - diff)))
    }

    /// Inverse of [`HahnParams::positive_mu_image`].
    pub fn from_positive_mu_image(img: ContinuousImage) -> Result<Self> {
        let alpha = img.two_mu - 1.0;
        let beta = img.two_nu - 1.0;
        let size = integer_size(-img.i_sum_ab - 0.5 * (alpha + beta) - 1.0)?;
        Ok(Self::new(size, alpha, beta))
    }
}

fn integer_size(x: f64) -> Result<usize> {
    let r = x.round();
    if (x - r).abs() > 1e-9 || r < 0.0 {
        return Err(HahnError::InvalidParameter(format!(
            "parameter map requires a nonnegative integer N, got {x}"
        )));
    }
    Ok(r as usize)
}

/// Values `P_0 … P_{n_max}` of a normalized polynomial family at one point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolySequence {
    pub values: Vec<f64>,
}

impl Deref for PolySequence {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.values
    }
}

/// Coefficient of `P_n` in `2(z+a)P_n = D_n P_n + O_n P_{n+1} + O_{n-1} P_{n-1}`.
pub fn cont_hahn_diag(p: &ContinuousHahnParams, n: usize) -> f64 {
    let (mu, nu, s) = (p.mu, p.nu, p.sum_ab());
    let n = n as f64;
    if n == 0.0 {
        // (2μ+2ν−1) cancels between the prefactor and the first bracket term
        return s * 2.0 * mu / (mu + nu);
    }
    let c = 2.0 * mu + 2.0 * nu - 1.0;
    s / (2.0 * n + c)
        * ((n + 2.0 * mu) * (n + c) / (n + mu + nu)
            + n * (n + 2.0 * nu - 1.0) / (n + mu + nu - 1.0))
}

/// Off-diagonal coefficient `O_n` of the continuous Hahn recursion.
pub fn cont_hahn_off(p: &ContinuousHahnParams, n: usize) -> f64 {
    let (mu, nu, s) = (p.mu, p.nu, p.sum_ab());
    let n = n as f64;
    let m = n + mu + nu;
    let c = 2.0 * mu + 2.0 * nu - 1.0;
    let ratio = if n == 0.0 {
        2.0 * mu * 2.0 * nu * (m * m + s * s) / (c + 2.0)
    } else {
        (n + 1.0) * (n + 2.0 * mu) * (n + 2.0 * nu) * (n + c) * (m * m + s * s)
            / ((2.0 * n + c) * (2.0 * n + c + 2.0))
    };
    ratio.sqrt() / m
}

/// `P_0 … P_{n_max}` at real `z` by forward recursion.
pub fn cont_hahn_recursion(p: &ContinuousHahnParams, z: f64, n_max: usize) -> Result<PolySequence> {
    p.check_orthogonality()?;
    let mut values = Vec::with_capacity(n_max + 1);
    values.push(1.0);
    let x = 2.0 * (z + p.a);
    let mut prev = 0.0;
    let mut off_prev = 0.0;
    for n in 0..n_max {
        let cur = values[n];
        let off = cont_hahn_off(p, n);
        let next = ((x - cont_hahn_diag(p, n)) * cur - off_prev * prev) / off;
        values.push(next);
        prev = cur;
        off_prev = off;
    }
    Ok(PolySequence { values })
}

fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        n => {
            let (l, r) = xs.split_at(n / 2);
            pairwise_sum(l) + pairwise_sum(r)
        }
    }
}

/// Complex double-double number.
type Dd = Complex<TwoFloat>;

fn dd(re: TwoFloat, im: TwoFloat) -> Dd {
    Complex::new(re, im)
}

fn dd_of(z: Complex64) -> Dd {
    dd(TwoFloat::from(z.re), TwoFloat::from(z.im))
}

fn dd_to_f64(z: Dd) -> Complex64 {
    Complex64::new(f64::from(z.re), f64::from(z.im))
}

/// `₃F₂(−n, b, c; d, e; 1)` in nested form `1 + r₀(1 + r₁(1 + …))`, carried
/// as a double-double fraction `A/B` so that cancellation among the terms
/// costs no accuracy at moderate degrees. Only the final quotient is rounded.
fn terminating_3f2_dd(n: usize, b: Dd, c: Dd, d: Dd, e: Dd) -> Complex64 {
    let real = |v: f64| dd(TwoFloat::from(v), TwoFloat::from(0.0));
    let mut num = real(1.0);
    let mut den = real(1.0);
    for j in (0..n).rev() {
        let jf = real(j as f64);
        let up = real(j as f64 - n as f64) * (b + jf) * (c + jf);
        let down = (d + jf) * (e + jf) * real(j as f64 + 1.0);
        num = down * den + up * num;
        den = down * den;
        // power-of-two rescaling is exact and keeps both parts in range
        let top = f64::from(den.re).abs().max(f64::from(den.im).abs());
        if top > 0.0 && top.is_finite() {
            let scale = 2f64.powi(-(top.log2().floor() as i32));
            num *= real(scale);
            den *= real(scale);
        }
    }
    dd_to_f64(num) / dd_to_f64(den)
}

/// Terms of the terminating series `₃F₂(−n, b, c; d, e; 1)`.
pub fn terminating_3f2_terms(
    n: usize,
    b: Complex64,
    c: Complex64,
    d: Complex64,
    e: Complex64,
) -> Vec<Complex64> {
    let mut terms = Vec::with_capacity(n + 1);
    let mut t = Complex64::new(1.0, 0.0);
    terms.push(t);
    for j in 0..n {
        let jf = j as f64;
        t = t * (jf - n as f64) * (b + jf) * (c + jf) / ((d + jf) * (e + jf) * (jf + 1.0));
        terms.push(t);
    }
    terms
}

/// `₃F₂(−n, b, c; d, e; 1)`, accumulated in double-double arithmetic.
pub fn terminating_3f2(
    n: usize,
    b: Complex64,
    c: Complex64,
    d: Complex64,
    e: Complex64,
) -> Complex64 {
    terminating_3f2_dd(n, dd_of(b), dd_of(c), dd_of(d), dd_of(e))
}

/// `P_n^μ(z; ν; a, b)` from the normalized terminating ₃F₂ representation.
///
/// The sum is carried out in complex arithmetic; the imaginary residue left
/// after cancellation must be negligible and is then dropped.
pub fn cont_hahn_hypergeometric(p: &ContinuousHahnParams, z: f64, n: usize) -> Result<f64> {
    p.check_orthogonality()?;
    if n == 0 {
        return Ok(1.0);
    }
    let (mu, nu, s) = (p.mu, p.nu, p.sum_ab());
    let c = 2.0 * mu + 2.0 * nu - 1.0;
    let nf = n as f64;

    // (2n+c)/c · (c)_n = (2n+c) · (c+1)_{n−1}
    let (s1, l1) = signed_ln_pochhammer(c + 1.0, n - 1);
    let (s2, l2) = signed_ln_pochhammer(2.0 * mu, n);
    let (s3, l3) = signed_ln_pochhammer(2.0 * nu, n);
    let (_, lfact) = signed_ln_pochhammer(1.0, n);
    let sign = s1 * s2 * s3 * (2.0 * nf + c).signum();
    if sign <= 0.0 {
        return Err(HahnError::OutsideOrthogonalityRegime(
            "negative normalization".into(),
        ));
    }
    let ln_norm2 = (2.0 * nf + c).abs().ln() + l1 + l2 - l3 - lfact;
    // phase of (μ+ν+i(a+b))_n, i.e. the square root of its ratio to the conjugate
    let theta: f64 = (0..n).map(|j| s.atan2(mu + nu + j as f64)).sum();
    let i_pow = Complex64::new(0.0, 1.0).powu(n as u32);
    let prefactor = i_pow * Complex64::from_polar((0.5 * ln_norm2).exp(), theta);

    // parameters formed exactly so the summed cancellation is not seeded by
    // rounded inputs
    let exact = TwoFloat::new_add;
    let two_mu = TwoFloat::from(2.0 * mu);
    let sum_mu_nu = exact(mu, nu);
    let zero = TwoFloat::from(0.0);
    let b = dd(sum_mu_nu * 2.0 + (nf - 1.0), zero);
    let c = dd(TwoFloat::from(mu), exact(z, p.a));
    let d = dd(two_mu, zero);
    let e = dd(sum_mu_nu, exact(p.a, p.b));
    let sum = terminating_3f2_dd(n, b, c, d, e);
    let terms = terminating_3f2_terms(n, dd_to_f64(b), dd_to_f64(c), dd_to_f64(d), dd_to_f64(e));
    let magnitude = prefactor.norm() * terms.iter().map(|t| t.norm()).fold(0.0, f64::max);
    let value = prefactor * sum;
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(HahnError::DegreeTooLarge(n));
    }
    // rounding of the prefactor and of the double-double sum bounds the
    // imaginary residue that can be resolved
    let floor = 64.0 * f64::EPSILON * nf * (value.norm() + f64::EPSILON * f64::EPSILON * magnitude);
    if value.im.abs() > (1e-9 * value.re.abs()).max(floor) {
        return Err(HahnError::ImaginaryResidue {
            real: value.re,
            imag: value.im,
        });
    }
    Ok(value.re)
}

/// `ln ρ(z)` of the normalized continuous Hahn weight.
pub fn cont_hahn_log_weight(p: &ContinuousHahnParams, z: f64) -> Result<f64> {
    p.check_orthogonality()?;
    let (mu, nu) = (p.mu, p.nu);
    let zc = Complex64::new(z, 0.0);
    let g1 = ln_gamma(p.first_gamma_argument(zc))?.log_modulus;
    let g2 = ln_gamma(p.second_gamma_argument(zc))?.log_modulus;
    let gs = ln_gamma(Complex64::new(mu + nu, p.sum_ab()))?.log_modulus;
    Ok(-(2.0 * PI).ln() + ln_gamma_real(2.0 * mu + 2.0 * nu)?
        - ln_gamma_real(2.0 * mu)?
        - ln_gamma_real(2.0 * nu)?
        + 2.0 * (g1 + g2 - gs))
}

/// Normalized weight `ρ(z)`; integrates to one over the real line.
pub fn cont_hahn_weight(p: &ContinuousHahnParams, z: f64) -> Result<f64> {
    Ok(cont_hahn_log_weight(p, z)?.exp())
}

/// `ln(2√(2Γ(2μ)Γ(2ν)/Γ(2μ+2ν)) |Γ(μ+ν+i(a+b))|)`, with pole factors taken as infinite.
fn ln_amplitude_prefactor(p: &ContinuousHahnParams) -> f64 {
    let lg = |x: f64| ln_gamma_real(x).unwrap_or(f64::INFINITY);
    let mixed = ln_gamma(Complex64::new(p.mu + p.nu, p.sum_ab()))
        .map(|g| g.log_modulus)
        .unwrap_or(f64::INFINITY);
    let inner =
        std::f64::consts::LN_2 + lg(2.0 * p.mu) + lg(2.0 * p.nu) - lg(2.0 * p.mu + 2.0 * p.nu);
    std::f64::consts::LN_2 + 0.5 * inner + mixed
}

/// Scattering amplitude `A(z)`; exactly zero when either Γ factor in the
/// denominator sits on a pole.
pub fn scattering_amplitude(p: &ContinuousHahnParams, z: Complex64) -> f64 {
    let r1 = recip_gamma_abs(p.first_gamma_argument(z));
    let r2 = recip_gamma_abs(p.second_gamma_argument(z));
    if r1 == 0.0 || r2 == 0.0 {
        return 0.0;
    }
    let l1 = ln_gamma(p.first_gamma_argument(z))
        .map(|g| g.log_modulus)
        .unwrap_or(f64::INFINITY);
    let l2 = ln_gamma(p.second_gamma_argument(z))
        .map(|g| g.log_modulus)
        .unwrap_or(f64::INFINITY);
    (ln_amplitude_prefactor(p) - l1 - l2).exp()
}

/// Phase shift `δ(z) = −arg Γ[μ+i(z+a)] − arg Γ[ν+i(z−b)]` as the sum of
/// principal arguments; defined modulo 2π.
pub fn scattering_phase(p: &ContinuousHahnParams, z: f64) -> Result<f64> {
    let zc = Complex64::new(z, 0.0);
    let g1 = ln_gamma(p.first_gamma_argument(zc)).map_err(|_| HahnError::PhaseUndefined)?;
    let g2 = ln_gamma(p.second_gamma_argument(zc)).map_err(|_| HahnError::PhaseUndefined)?;
    Ok(-g1.argument - g2.argument)
}

/// `−nπ/2` reduced modulo 2π without losing precision at large n.
fn quarter_turns(n: usize) -> f64 {
    -((n % 4) as f64) * FRAC_PI_2
}

/// Large-degree asymptotic form of `P_n^μ(z; ν; a, b)` (relative remainder O(1/n)).
pub fn cont_hahn_asymptotic(p: &ContinuousHahnParams, z: f64, n: usize) -> Result<f64> {
    p.check_orthogonality()?;
    let (mu, nu) = (p.mu, p.nu);
    let zc = Complex64::new(z, 0.0);
    let g1 = ln_gamma(p.first_gamma_argument(zc))?;
    let g2 = ln_gamma(p.second_gamma_argument(zc))?;
    let gs = ln_gamma(Complex64::new(mu + nu, p.sum_ab()))?;
    let ln_big_a = g1.log_modulus + g2.log_modulus;
    let arg_big_a = g1.argument + g2.argument;
    let nf = n as f64;
    let ln_amp = 1.5 * std::f64::consts::LN_2
        + gs.log_modulus
        + 0.5
            * (ln_gamma_real(2.0 * mu)? + ln_gamma_real(2.0 * nu)?
                - ln_gamma_real(2.0 * mu + 2.0 * nu)?)
        - 0.5 * nf.ln()
        - ln_big_a;
    let phase = (2.0 * z + p.a - p.b) * nf.ln() - arg_big_a + quarter_turns(n);
    Ok(ln_amp.exp() * phase.cos())
}

fn check_index(index: usize, size: usize) -> Result<()> {
    if index > size {
        Err(HahnError::IndexExceedsN { index, size })
    } else {
        Ok(())
    }
}

/// Normalized Hahn polynomial `Q_n^N(k; α, β)` from its terminating ₃F₂ sum.
pub fn hahn_eval(h: &HahnParams, n: usize, k: usize) -> Result<f64> {
    check_index(n, h.size)?;
    check_index(k, h.size)?;
    if n == 0 {
        return Ok(1.0);
    }
    let (al, be, size) = (h.alpha, h.beta, h.size);
    let nf = n as f64;
    // (2n+α+β+1)/(α+β+1) · (α+β+1)_{N+1} = (2n+α+β+1) · (α+β+2)_N
    let parts = [
        (
            1.0,
            (
                (2.0 * nf + al + be + 1.0).signum(),
                (2.0 * nf + al + be + 1.0).abs().ln(),
            ),
        ),
        (1.0, signed_ln_pochhammer(al + be + 2.0, size)),
        (1.0, signed_ln_pochhammer(al + 1.0, n)),
        (1.0, signed_ln_pochhammer((size - n) as f64 + 1.0, n)),
        (-1.0, signed_ln_pochhammer(be + 1.0, n)),
        (-1.0, signed_ln_pochhammer(nf + al + be + 1.0, size + 1)),
        (-1.0, signed_ln_pochhammer(1.0, n)),
    ];
    let mut sign = 1.0;
    let mut ln_norm2 = 0.0;
    for (power, (s, l)) in parts {
        if s == 0.0 {
            return Err(HahnError::ParameterDegeneracy(format!(
                "vanishing factor in the Hahn normalization at n = {n}"
            )));
        }
        sign *= s;
        ln_norm2 += power * l;
    }
    if sign < 0.0 {
        return Err(HahnError::NonOrthogonalityRegime(format!(
            "negative normalization for alpha = {al}, beta = {be}"
        )));
    }
    let mut terms = Vec::with_capacity(n.min(k) + 1);
    let mut t = 1.0;
    terms.push(t);
    for j in 0..n.min(k) {
        let jf = j as f64;
        t *= (jf - nf) * (jf - k as f64) * (nf + al + be + 1.0 + jf)
            / ((al + 1.0 + jf) * (jf - size as f64) * (jf + 1.0));
        terms.push(t);
    }
    let value = (0.5 * ln_norm2).exp() * pairwise_sum(&terms);
    if !value.is_finite() {
        return Err(HahnError::DegreeTooLarge(n));
    }
    Ok(value)
}

/// Normalized discrete weight `ω_k`, summing to one over `k = 0..=N`.
pub fn hahn_weight(h: &HahnParams, k: usize) -> Result<f64> {
    check_index(k, h.size)?;
    let size = h.size;
    let parts = [
        (1.0, signed_ln_pochhammer(1.0, size)),
        (-1.0, signed_ln_pochhammer(h.alpha + h.beta + 2.0, size)),
        (1.0, signed_ln_pochhammer(h.alpha + 1.0, k)),
        (1.0, signed_ln_pochhammer(h.beta + 1.0, size - k)),
        (-1.0, signed_ln_pochhammer(1.0, k)),
        (-1.0, signed_ln_pochhammer(1.0, size - k)),
    ];
    let mut sign = 1.0;
    let mut ln_w = 0.0;
    for (power, (s, l)) in parts {
        sign *= s;
        ln_w += power * l;
    }
    if sign <= 0.0 || !ln_w.is_finite() {
        return Err(HahnError::NonOrthogonalityRegime(format!(
            "weight at k = {k} is not positive for alpha = {}, beta = {}",
            h.alpha, h.beta
        )));
    }
    Ok(ln_w.exp())
}

/// Diagonal coefficient `B_n` in `k Q_n = B_n Q_n − C_n Q_{n+1} − C_{n−1} Q_{n−1}`.
pub fn hahn_diag(h: &HahnParams, n: usize) -> f64 {
    let (al, be, big) = (h.alpha, h.beta, h.size as f64);
    let nf = n as f64;
    let s = al + be;
    if n == 0 {
        return big * (al + 1.0) / (s + 2.0);
    }
    ((big - nf) * (nf + al + 1.0) * (nf + s + 1.0) / (2.0 * nf + s + 2.0)
        + nf * (nf + be) * (nf + big + s + 1.0) / (2.0 * nf + s))
        / (2.0 * nf + s + 1.0)
}

/// Off-diagonal coefficient `C_n` of the Hahn recursion.
pub fn hahn_off(h: &HahnParams, n: usize) -> f64 {
    let (al, be, big) = (h.alpha, h.beta, h.size as f64);
    let nf = n as f64;
    let s = al + be;
    let ratio = if n == 0 {
        big * (al + 1.0) * (be + 1.0) * (big + s + 2.0) / (s + 3.0)
    } else {
        (nf + 1.0)
            * (big - nf)
            * (nf + al + 1.0)
            * (nf + be + 1.0)
            * (nf + s + 1.0)
            * (nf + big + s + 2.0)
            / ((2.0 * nf + s + 1.0) * (2.0 * nf + s + 3.0))
    };
    ratio.sqrt() / (2.0 * nf + s + 2.0)
}

/// `Q_0 … Q_{n_max}` at integer argument `k` by forward recursion.
pub fn hahn_recursion(h: &HahnParams, k: usize, n_max: usize) -> Result<PolySequence> {
    if n_max > h.size {
        return Err(HahnError::DegreeExceedsFamily {
            degree: n_max,
            size: h.size,
        });
    }
    check_index(k, h.size)?;
    h.check()?;
    let kf = k as f64;
    let mut values = Vec::with_capacity(n_max + 1);
    values.push(1.0);
    let mut prev = 0.0;
    let mut off_prev = 0.0;
    for n in 0..n_max {
        let cur = values[n];
        let off = hahn_off(h, n);
        let next = ((hahn_diag(h, n) - kf) * cur - off_prev * prev) / off;
        if !next.is_finite() {
            return Err(HahnError::ParameterDegeneracy(format!(
                "Hahn recursion breaks down at n = {n}"
            )));
        }
        values.push(next);
        prev = cur;
        off_prev = off;
    }
    Ok(PolySequence { values })
}

/// Jacobi polynomials `P_0^{(α,β)} … P_{n_max}^{(α,β)}` at `y`.
pub fn jacobi_sequence(alpha: f64, beta: f64, n_max: usize, y: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(1.0);
    if n_max == 0 {
        return out;
    }
    out.push((alpha + 1.0) + (alpha + beta + 2.0) * (y - 1.0) / 2.0);
    let s = alpha + beta;
    for n in 2..=n_max {
        let nf = n as f64;
        let c = 2.0 * nf + s;
        let lhs = 2.0 * nf * (nf + s) * (c - 2.0);
        let a1 = (c - 1.0) * (c * (c - 2.0) * y + alpha * alpha - beta * beta);
        let a2 = 2.0 * (nf + alpha - 1.0) * (nf + beta - 1.0) * c;
        let next = (a1 * out[n - 1] - a2 * out[n - 2]) / lhs;
        out.push(next);
    }
    out
}

/// Jacobi polynomial `P_n^{(α,β)}(y)`.
pub fn jacobi_eval(alpha: f64, beta: f64, n: usize, y: f64) -> f64 {
    jacobi_sequence(alpha, beta, n, y)[n]
}

/// Generalized Laguerre polynomials `L_0^β … L_{n_max}^β` at `y`.
pub fn laguerre_sequence(beta: f64, n_max: usize, y: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(1.0);
    if n_max == 0 {
        return out;
    }
    out.push(1.0 + beta - y);
    for n in 2..=n_max {
        let nf = n as f64;
        let next = ((2.0 * nf - 1.0 + beta - y) * out[n - 1] - (nf - 1.0 + beta) * out[n - 2]) / nf;
        out.push(next);
    }
    out
}

/// Generalized Laguerre polynomial `L_n^β(y)`.
pub fn laguerre_eval(beta: f64, n: usize, y: f64) -> f64 {
    laguerre_sequence(beta, n, y)[n]
}

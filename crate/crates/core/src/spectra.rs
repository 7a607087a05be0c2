//! Phase shifts and energy spectra of the three worked physical examples,
//! and the classification of complex energies.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{HahnError, Result};
use crate::orthopoly::ContinuousHahnParams;
use crate::specfun::ln_gamma;

/// Number of levels emitted for the infinite bound spectrum of example two.
pub const DEFAULT_K_MAX: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StateKind {
    Bound,
    Resonance,
    EmbeddedResonance,
    Unphysical,
}

impl StateKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            StateKind::Bound => "bound",
            StateKind::Resonance => "resonance",
            StateKind::EmbeddedResonance => "embedded_resonance",
            StateKind::Unphysical => "unphysical",
        }
    }
}

impl std::fmt::Display for StateKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumEntry {
    pub k: usize,
    pub energy: Complex64,
    pub kind: StateKind,
}

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda > 0.0 && lambda.is_finite() {
        Ok(())
    } else {
        Err(HahnError::InvalidParameter(format!(
            "lambda must be positive, got {lambda}"
        )))
    }
}

/// `ν = μ`, `b = −a`, `z = κ/λ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExampleOneParams {
    pub mu: f64,
    pub a: f64,
    pub lambda: f64,
}

impl ExampleOneParams {
    pub fn new(mu: f64, a: f64, lambda: f64) -> Result<Self> {
        check_lambda(lambda)?;
        Ok(Self { mu, a, lambda })
    }

    /// The continuous Hahn parameters this example specializes.
    pub fn hahn_params(&self) -> ContinuousHahnParams {
        ContinuousHahnParams::new(self.mu, self.mu, self.a, -self.a)
    }
}

/// Potential strength `V` (absolute energy units) and shifts `a`, `b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExampleTwoParams {
    #[serde(rename = "V")]
    pub v: f64,
    pub a: f64,
    pub b: f64,
    pub lambda: f64,
}

impl ExampleTwoParams {
    pub fn new(v: f64, a: f64, b: f64, lambda: f64) -> Result<Self> {
        check_lambda(lambda)?;
        Ok(Self { v, a, b, lambda })
    }

    /// `a + 2V/λ²`, the offset that controls the spectrum.
    pub fn offset(&self) -> f64 {
        self.a + 2.0 * self.v / (self.lambda * self.lambda)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExampleThreeParams {
    pub gamma: f64,
    pub a: f64,
    pub nu: f64,
    pub lambda: f64,
}

impl ExampleThreeParams {
    pub fn new(gamma: f64, a: f64, nu: f64, lambda: f64) -> Result<Self> {
        check_lambda(lambda)?;
        Ok(Self {
            gamma,
            a,
            nu,
            lambda,
        })
    }
}

/// Which root of `μ + i(z + a) = −k` a spectral point belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// `z = −a + i(k + μ)`
    Plus,
    /// `z = −a − i(k + μ)`
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPoint {
    pub k: usize,
    pub branch: Branch,
    pub z: Complex64,
}

/// Zeros of the scattering amplitude from the first Γ factor, `k = 0..=⌊−μ⌋`.
pub fn general_spectrum_points(p: &ContinuousHahnParams) -> Vec<SpectralPoint> {
    if !(p.mu < 0.0) {
        return Vec::new();
    }
    let top = (-p.mu).floor() as usize;
    let mut out = Vec::with_capacity(2 * (top + 1));
    for k in 0..=top {
        let im = k as f64 + p.mu;
        out.push(SpectralPoint {
            k,
            branch: Branch::Plus,
            z: Complex64::new(-p.a, im),
        });
        out.push(SpectralPoint {
            k,
            branch: Branch::Minus,
            z: Complex64::new(-p.a, -im),
        });
    }
    out
}

/// Quadrant rule: real energies are bound, positive imaginary parts are
/// unphysical, and decaying states in the left half plane are embedded.
pub fn classify(energy: Complex64) -> StateKind {
    if energy.im == 0.0 {
        StateKind::Bound
    } else if energy.im > 0.0 {
        StateKind::Unphysical
    } else if energy.re < 0.0 {
        StateKind::EmbeddedResonance
    } else {
        StateKind::Resonance
    }
}

fn phase_of(w1: Complex64, w2: Complex64) -> Result<f64> {
    let g1 = ln_gamma(w1).map_err(|_| HahnError::PhaseUndefined)?;
    let g2 = ln_gamma(w2).map_err(|_| HahnError::PhaseUndefined)?;
    Ok(-g1.argument - g2.argument)
}

fn check_energy(e: f64) -> Result<()> {
    if e.is_finite() {
        Ok(())
    } else {
        Err(HahnError::NonFinite("energy"))
    }
}

/// `δ(E) = −2 arg Γ[μ + i(a + κ/λ)]` with `κ = √(2E)`.
pub fn example1_phase(p: &ExampleOneParams, energy: f64) -> Result<f64> {
    if !(p.mu > 0.0) {
        return Err(HahnError::ScatteringRegime(p.mu));
    }
    check_energy(energy)?;
    if !(energy > 0.0) {
        return Err(HahnError::InvalidParameter(format!(
            "scattering energy must be positive, got {energy}"
        )));
    }
    let kappa = (2.0 * energy).sqrt();
    let w = Complex64::new(p.mu, p.a + kappa / p.lambda);
    Ok(-2.0 * ln_gamma(w).map_err(|_| HahnError::PhaseUndefined)?.argument)
}

/// `E_k = −(λ²/2)(k + μ + ia)²` for `k = 0..=⌊−μ⌋`; empty unless `μ < 0`.
pub fn example1_spectrum(p: &ExampleOneParams) -> Vec<SpectrumEntry> {
    if !(p.mu < 0.0) {
        return Vec::new();
    }
    let half_l2 = 0.5 * p.lambda * p.lambda;
    let top = (-p.mu).floor() as usize;
    (0..=top)
        .map(|k| {
            let w = Complex64::new(k as f64 + p.mu, p.a);
            let energy = -half_l2 * w * w;
            let kind = if p.a == 0.0 {
                StateKind::Bound
            } else if p.a > 0.0 {
                StateKind::Unphysical
            } else if (k as f64) < p.a - p.mu {
                StateKind::EmbeddedResonance
            } else {
                StateKind::Resonance
            };
            SpectrumEntry { k, energy, kind }
        })
        .collect()
}

/// `δ(E) = −arg Γ[(2/λ²)(E+iV) + ia] − arg Γ[(2/λ²)(E+iV) − ib]`.
pub fn example2_phase(p: &ExampleTwoParams, energy: f64) -> Result<f64> {
    check_energy(energy)?;
    let s = 2.0 / (p.lambda * p.lambda);
    let base = Complex64::new(s * energy, s * p.v);
    phase_of(
        base + Complex64::new(0.0, p.a),
        base - Complex64::new(0.0, p.b),
    )
}

/// `E_k = (λ²/2)[k + i(a + 2V/λ²)]²` for `k = 0..=k_max`.
///
/// The spectrum is bound when the offset `a + 2V/λ²` vanishes (to a relative
/// 1e-12), made of resonances for a negative offset, and unphysical for a
/// positive one.
pub fn example2_spectrum(p: &ExampleTwoParams, k_max: usize) -> Vec<SpectrumEntry> {
    let half_l2 = 0.5 * p.lambda * p.lambda;
    let c = p.offset();
    let scale =
        p.a.abs()
            .max((2.0 * p.v / (p.lambda * p.lambda)).abs())
            .max(1.0);
    let zero = c.abs() <= 1e-12 * scale;
    (0..=k_max)
        .map(|k| {
            let kf = k as f64;
            let (energy, kind) = if zero {
                (Complex64::new(half_l2 * kf * kf, 0.0), StateKind::Bound)
            } else {
                let w = Complex64::new(kf, c);
                let kind = if c > 0.0 {
                    StateKind::Unphysical
                } else if kf > -c {
                    StateKind::Resonance
                } else {
                    StateKind::EmbeddedResonance
                };
                (half_l2 * w * w, kind)
            };
            SpectrumEntry { k, energy, kind }
        })
        .collect()
}

/// `δ(E) = −arg Γ[(E/λ²)(γ+i) + ia] − arg Γ[ν + (i/λ²)(E + aλ²)]`.
pub fn example3_phase(p: &ExampleThreeParams, energy: f64) -> Result<f64> {
    check_energy(energy)?;
    let l2 = p.lambda * p.lambda;
    let e = energy / l2;
    phase_of(
        Complex64::new(e * p.gamma, e + p.a),
        Complex64::new(p.nu, e + p.a),
    )
}

/// `E_k/λ² = [−(a + kγ) + i(k − aγ)]/(1 + γ²)` for `k = 0..=⌊γa⌋`; empty unless `γa > 0`.
pub fn example3_spectrum(p: &ExampleThreeParams) -> Vec<SpectrumEntry> {
    let ga = p.gamma * p.a;
    if !(ga > 0.0) {
        return Vec::new();
    }
    let l2 = p.lambda * p.lambda;
    let denom = 1.0 + p.gamma * p.gamma;
    (0..=ga.floor() as usize)
        .map(|k| {
            let kf = k as f64;
            let energy = Complex64::new(-(p.a + kf * p.gamma), kf - ga) * (l2 / denom);
            SpectrumEntry {
                k,
                energy,
                kind: StateKind::Resonance,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * b.norm().max(1.0)
    }

    #[test]
    fn example_one_figure_values() {
        let p = ExampleOneParams::new(-14.5, -5.0, 1.0).unwrap();
        let s = example1_spectrum(&p);
        assert_eq!(s.len(), 15);
        assert!(close(s[0].energy, Complex64::new(-92.625, -72.5), 1e-15));
        assert_eq!(s[0].kind, StateKind::EmbeddedResonance);
        // k < a − μ = 9.5 splits embedded from ordinary resonances
        assert_eq!(s[9].kind, StateKind::EmbeddedResonance);
        assert_eq!(s[10].kind, StateKind::Resonance);
        for e in &s {
            assert_eq!(classify(e.energy), e.kind);
        }
    }

    #[test]
    fn example_one_bound_and_empty() {
        let p = ExampleOneParams::new(-3.2, 0.0, 1.7).unwrap();
        let s = example1_spectrum(&p);
        assert_eq!(s.len(), 4);
        for e in &s {
            let expect = -0.5 * 1.7 * 1.7 * (e.k as f64 - 3.2).powi(2);
            assert!((e.energy.re - expect).abs() < 1e-13);
            assert_eq!(e.energy.im, 0.0);
            assert_eq!(e.kind, StateKind::Bound);
        }
        assert!(example1_spectrum(&ExampleOneParams::new(0.5, 0.0, 1.0).unwrap()).is_empty());
        let up = example1_spectrum(&ExampleOneParams::new(-2.5, 1.0, 1.0).unwrap());
        assert!(up
            .iter()
            .all(|e| e.kind == StateKind::Unphysical && e.energy.im > 0.0));
    }

    #[test]
    fn example_one_phase() {
        let p = ExampleOneParams::new(2.0, 1.0, 1.0).unwrap();
        assert!((example1_phase(&p, 2.0).unwrap() - -4.604793086933736).abs() < 1e-11);
        let q = ExampleOneParams::new(2.0, 0.0, 1.0).unwrap();
        assert!(example1_phase(&q, 1e-14).unwrap().abs() < 1e-6);
        let r = ExampleOneParams::new(-1.0, 0.0, 1.0).unwrap();
        assert_eq!(
            example1_phase(&r, 1.0),
            Err(HahnError::ScatteringRegime(-1.0))
        );
        // same as the general phase with ν = μ, b = −a, z = κ/λ
        let lam: f64 = 1.3;
        let p = ExampleOneParams::new(1.7, -0.4, lam).unwrap();
        let e: f64 = 2.2;
        let z = (2.0 * e).sqrt() / lam;
        let general = crate::orthopoly::scattering_phase(&p.hahn_params(), z).unwrap();
        let diff = crate::specfun::principal_angle(example1_phase(&p, e).unwrap() - general);
        assert!(diff.abs() < 1e-12);
    }

    #[test]
    fn example_two_values() {
        let p = ExampleTwoParams::new(7.5 * 0.5, -10.0, -10.0, 1.0).unwrap();
        let s = example2_spectrum(&p, DEFAULT_K_MAX);
        assert_eq!(s.len(), DEFAULT_K_MAX + 1);
        assert!(close(s[0].energy, Complex64::new(-3.125, 0.0), 1e-15));
        assert_eq!(s[0].kind, StateKind::EmbeddedResonance);
        assert_eq!(s[2].kind, StateKind::EmbeddedResonance);
        assert_eq!(s[3].kind, StateKind::Resonance);
        assert!(s[40].energy.re > 0.0 && s[40].energy.im < 0.0);
        assert!((example2_phase(&p, 1.0).unwrap() - 4.549139498109912).abs() < 1e-11);

        let b = ExampleTwoParams::new(2.0, -4.0, 0.0, 1.0).unwrap();
        for e in example2_spectrum(&b, 10) {
            assert_eq!(e.kind, StateKind::Bound);
            assert_eq!(e.energy, Complex64::new(0.5 * (e.k * e.k) as f64, 0.0));
        }
        let zero = ExampleTwoParams::new(0.0, 0.0, 0.0, 1.0).unwrap();
        assert_eq!(example2_phase(&zero, 1.3).unwrap(), 0.0);
        assert_eq!(example2_phase(&zero, 0.0), Err(HahnError::PhaseUndefined));
    }

    #[test]
    fn example_two_reflection_flips_phase() {
        let p = ExampleTwoParams::new(1.3, 0.4, -2.2, 1.1).unwrap();
        // (a, b, V) → (−a, −b, −V) conjugates both Γ arguments
        let q = ExampleTwoParams::new(-1.3, -0.4, 2.2, 1.1).unwrap();
        for e in [0.3, 1.0, 4.5] {
            let d1 = example2_phase(&p, e).unwrap();
            let d2 = example2_phase(&q, e).unwrap();
            assert!((d1 + d2).abs() < 1e-12);
        }
    }

    #[test]
    fn example_three_values() {
        let p = ExampleThreeParams::new(-2.0, -7.5, 1.0, 1.0).unwrap();
        let s = example3_spectrum(&p);
        assert_eq!(s.len(), 16);
        assert!(close(s[0].energy, Complex64::new(1.5, -3.0), 1e-15));
        assert_eq!(classify(s[0].energy), StateKind::Resonance);
        assert!((example3_phase(&p, 3.0).unwrap() - 3.9243756639456566).abs() < 1e-11);
        assert!(
            example3_spectrum(&ExampleThreeParams::new(2.0, -1.0, 1.0, 1.0).unwrap()).is_empty()
        );
        // integer γa puts the last level on the real axis at E = −λ²a
        let q = ExampleThreeParams::new(2.0, 3.0, 1.0, 1.5).unwrap();
        let last = *example3_spectrum(&q).last().unwrap();
        assert_eq!(last.k, 6);
        assert!(close(last.energy, Complex64::new(-3.0 * 2.25, 0.0), 1e-14));
        let z = ExampleThreeParams::new(0.5, 0.0, 1.0, 1.0).unwrap();
        assert_eq!(example3_phase(&z, 0.0), Err(HahnError::PhaseUndefined));
    }

    #[test]
    fn general_points() {
        let p = ContinuousHahnParams::new(-0.5, 1.0, 0.0, 0.0);
        let pts = general_spectrum_points(&p);
        assert_eq!(pts.len(), 2);
        assert_eq!(pts[0].z, Complex64::new(0.0, -0.5));
        assert_eq!(pts[1].z, Complex64::new(0.0, 0.5));
        let big = ContinuousHahnParams::new(-14.5, 1.0, 2.0, 0.0);
        assert_eq!(general_spectrum_points(&big).len(), 30);
        assert!(general_spectrum_points(&ContinuousHahnParams::new(3.0, 1.0, 0.0, 0.0)).is_empty());
    }

    #[test]
    fn classify_quadrants() {
        assert_eq!(classify(Complex64::new(1.5, -3.0)), StateKind::Resonance);
        assert_eq!(
            classify(Complex64::new(-92.625, -72.5)),
            StateKind::EmbeddedResonance
        );
        assert_eq!(classify(Complex64::new(4.0, 0.0)), StateKind::Bound);
        assert_eq!(classify(Complex64::new(4.0, 1.0)), StateKind::Unphysical);
    }

    #[test]
    fn invalid_lambda() {
        assert!(ExampleOneParams::new(1.0, 0.0, 0.0).is_err());
        assert!(ExampleTwoParams::new(1.0, 0.0, 0.0, -1.0).is_err());
        assert!(ExampleThreeParams::new(1.0, 0.0, 1.0, f64::NAN).is_err());
    }
}

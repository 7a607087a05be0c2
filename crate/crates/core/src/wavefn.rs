//! Wavefunctions as truncated expansions over a basis with polynomial
//! coefficients: continuous Hahn for scattering states, Hahn for bound states.

use serde::Serialize;

use crate::basis::BasisSpec;
use crate::error::{HahnError, Result};
use crate::orthopoly::{
    cont_hahn_recursion, cont_hahn_weight, hahn_recursion, hahn_weight, ContinuousHahnParams,
    HahnParams,
};

pub const DEFAULT_SCATTERING_N_MAX: usize = 40;

const TAIL_TERMS: usize = 4;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WavefunctionSample {
    pub x: Vec<f64>,
    pub psi: Vec<f64>,
    pub truncation: usize,
    /// Largest `|c_n φ_n|` over the grid among the last four retained terms
    /// (one cycle of the large-degree phase), relative to `max|ψ|`.
    pub tail_estimate: f64,
}

/// `ψ(x) = prefactor · Σ_n c_n φ_n(x)` on `grid`.
pub fn synthesize(
    spec: &BasisSpec,
    coefficients: &[f64],
    prefactor: f64,
    grid: &[f64],
) -> Result<WavefunctionSample> {
    let Some(n_max) = coefficients.len().checked_sub(1) else {
        return Err(HahnError::InvalidParameter(
            "at least one coefficient is required".into(),
        ));
    };
    let mut psi = Vec::with_capacity(grid.len());
    let mut tail = 0.0f64;
    for &x in grid {
        let phi = spec.values(n_max, x)?;
        let s: f64 = coefficients.iter().zip(&phi).map(|(c, f)| c * f).sum();
        let v = prefactor * s;
        if !v.is_finite() {
            return Err(HahnError::NonFinite("wavefunction sample"));
        }
        psi.push(v);
        for n in n_max.saturating_sub(TAIL_TERMS - 1)..=n_max {
            tail = tail.max((prefactor * coefficients[n] * phi[n]).abs());
        }
    }
    let peak = psi.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    Ok(WavefunctionSample {
        x: grid.to_vec(),
        psi,
        truncation: n_max,
        tail_estimate: if peak > 0.0 { tail / peak } else { tail },
    })
}

/// `ψ(x; z) = √ρ(z) Σ_{n ≤ n_max} P_n(z) φ_n(x)`.
pub fn scattering_wavefunction(
    p: &ContinuousHahnParams,
    spec: &BasisSpec,
    z: f64,
    grid: &[f64],
    n_max: usize,
) -> Result<WavefunctionSample> {
    let coeffs = cont_hahn_recursion(p, z, n_max)?;
    let weight = cont_hahn_weight(p, z)?;
    synthesize(spec, &coeffs, weight.sqrt(), grid)
}

/// `ψ_k(x) = √ω_k Σ_{n ≤ n_max} Q_n(k) φ_n(x)`; exact for `n_max = N`.
pub fn bound_wavefunction(
    h: &HahnParams,
    spec: &BasisSpec,
    k: usize,
    grid: &[f64],
    n_max: usize,
) -> Result<WavefunctionSample> {
    if k > h.size {
        return Err(HahnError::IndexExceedsSpectrum {
            index: k,
            size: h.size,
        });
    }
    let coeffs = hahn_recursion(h, k, n_max)?;
    let weight = hahn_weight(h, k)?;
    synthesize(spec, &coeffs, weight.sqrt(), grid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::basis_eval;

    fn spec() -> BasisSpec {
        BasisSpec::laguerre_exp(2.7, 1.0).unwrap()
    }

    #[test]
    fn single_term_is_weighted_ground_function() {
        let p = ContinuousHahnParams::new(3.0, 4.0, 2.0, -2.0);
        let grid = [-1.0, 0.0, 0.5];
        let s = scattering_wavefunction(&p, &spec(), 0.4, &grid, 0).unwrap();
        let w = cont_hahn_weight(&p, 0.4).unwrap().sqrt();
        for (x, v) in grid.iter().zip(&s.psi) {
            assert!((v - w * basis_eval(&spec(), 0, *x).unwrap()).abs() < 1e-15);
        }
        let h = HahnParams::new(3, 0.5, 1.5);
        let b = bound_wavefunction(&h, &spec(), 2, &grid, 0).unwrap();
        let w = hahn_weight(&h, 2).unwrap().sqrt();
        assert!((b.psi[1] - w * basis_eval(&spec(), 0, 0.0).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn synthesis_is_linear() {
        let grid = [-2.0, -0.3, 0.8];
        let c = [0.3, -1.2, 0.7];
        let d = [1.1, 0.4, -0.2];
        let sum: Vec<f64> = c.iter().zip(&d).map(|(a, b)| a + b).collect();
        let a = synthesize(&spec(), &c, 1.0, &grid).unwrap();
        let b = synthesize(&spec(), &d, 1.0, &grid).unwrap();
        let s = synthesize(&spec(), &sum, 1.0, &grid).unwrap();
        for i in 0..3 {
            assert!((a.psi[i] + b.psi[i] - s.psi[i]).abs() < 1e-14);
        }
    }

    #[test]
    fn bound_index_errors() {
        let h = HahnParams::new(3, 0.5, 1.5);
        assert_eq!(
            bound_wavefunction(&h, &spec(), 4, &[0.0], 3),
            Err(HahnError::IndexExceedsSpectrum { index: 4, size: 3 })
        );
        assert!(matches!(
            bound_wavefunction(&h, &spec(), 1, &[0.0], 4),
            Err(HahnError::DegreeExceedsFamily { .. })
        ));
    }
}

//! Potential reconstruction from tridiagonal matrix elements.
//!
//! `Ṽ(x) ≅ Σ_{m<M} [φ_m(x)/φ_0(x)] Ṽ_{m0}`. The ratio `φ_m/φ_0` equals
//! `(A_m/A_0) p_m(y)` for every basis, so it is evaluated without the
//! envelope and stays finite wherever `φ_0` itself is representable.

use serde::Serialize;

use crate::basis::{BasisSpec, Exponents, MapKind};
use crate::error::{HahnError, Result};
use crate::hamiltonian::SymTridiag;

pub const DEFAULT_M: usize = 20;
pub const DEFAULT_GRID_POINTS: usize = 400;
/// Fit residual above which a reconstruction is not treated as linear in `y`.
pub const LINEARITY_THRESHOLD: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReconstructionResult {
    pub grid: Vec<f64>,
    pub y: Vec<f64>,
    pub v_tilde: Vec<f64>,
    pub m: usize,
    /// Grid points dropped because `φ_0` underflows there.
    pub excluded: Vec<f64>,
    pub v0: f64,
    pub v1: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LinearFit {
    pub v0: f64,
    pub v1: f64,
    /// `max|V − fit| / (max V − min V)`; the bare deviation for constant data.
    pub residual: f64,
}

/// Least-squares fit `values ≈ v0 + v1·y`.
pub fn linear_fit_in_y(ys: &[f64], values: &[f64]) -> Result<LinearFit> {
    if ys.len() != values.len() {
        return Err(HahnError::SizeMismatch {
            left: ys.len(),
            right: values.len(),
        });
    }
    let n = ys.len();
    if n < 3 {
        return Err(HahnError::InsufficientPoints(n));
    }
    let nf = n as f64;
    let my = ys.iter().sum::<f64>() / nf;
    let mv = values.iter().sum::<f64>() / nf;
    let (mut syy, mut syv) = (0.0, 0.0);
    for (y, v) in ys.iter().zip(values) {
        syy += (y - my) * (y - my);
        syv += (y - my) * (v - mv);
    }
    if !(syy > 0.0) {
        return Err(HahnError::InsufficientPoints(n));
    }
    let v1 = syv / syy;
    let v0 = mv - v1 * my;
    let dev = ys
        .iter()
        .zip(values)
        .map(|(y, v)| (v - v0 - v1 * y).abs())
        .fold(0.0, f64::max);
    let hi = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let range = hi - lo;
    let residual = if range > 0.0 { dev / range } else { dev };
    Ok(LinearFit { v0, v1, residual })
}

/// Uniform grid over the plotting window of a basis.
pub fn default_grid(spec: &BasisSpec, points: usize) -> Vec<f64> {
    let l = spec.lambda();
    let (lo, hi) = match spec.map.kind {
        MapKind::RadialTanh | MapKind::RadialSquare => (0.05 / l, 6.0 / l),
        MapKind::TrigSine => {
            let len = spec.scale;
            (-0.5 * len + 0.01 * len, 0.5 * len - 0.01 * len)
        }
        MapKind::ExpLine => (-6.0 / l, 2.0 / l),
    };
    if points < 2 {
        return vec![lo; points];
    }
    (0..points)
        .map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64)
        .collect()
}

/// Apply the truncated expansion to column 0 of `vt` on `grid`, then fit it
/// linearly in `y`.
pub fn reconstruct_potential(
    vt: &SymTridiag,
    spec: &BasisSpec,
    m: usize,
    grid: &[f64],
) -> Result<ReconstructionResult> {
    if m == 0 || m > vt.dim() {
        return Err(HahnError::InvalidParameter(format!(
            "truncation M = {m} must lie in 1..={}",
            vt.dim()
        )));
    }
    if grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(HahnError::InvalidParameter(
            "grid must be strictly increasing".into(),
        ));
    }
    let column = vt.column(0);
    let ln_a0 = spec.ln_normalization(0);
    let ratios: Vec<f64> = (0..m)
        .map(|k| (spec.ln_normalization(k) - ln_a0).exp())
        .collect();
    let mut out = ReconstructionResult {
        grid: Vec::with_capacity(grid.len()),
        y: Vec::with_capacity(grid.len()),
        v_tilde: Vec::with_capacity(grid.len()),
        m,
        excluded: Vec::new(),
        v0: 0.0,
        v1: 0.0,
        residual: 0.0,
    };
    for &x in grid {
        spec.map.check(x)?;
        if spec.ln_envelope(x) + ln_a0 < -700.0 {
            out.excluded.push(x);
            continue;
        }
        let y = spec.map.y(x);
        let polys = spec.polynomials(m - 1, y);
        let v: f64 = (0..m).map(|k| ratios[k] * polys[k] * column[k]).sum();
        out.grid.push(x);
        out.y.push(y);
        out.v_tilde.push(v);
    }
    let fit = linear_fit_in_y(&out.y, &out.v_tilde)?;
    out.v0 = fit.v0;
    out.v1 = fit.v1;
    out.residual = fit.residual;
    Ok(out)
}

/// Reference potential whose matrix is the basis' closed-form `H₀`.
pub fn reference_potential(spec: &BasisSpec, x: f64) -> f64 {
    let l = spec.lambda();
    let l2 = l * l;
    match spec.map.kind {
        MapKind::RadialTanh => {
            let v0 = (spec.beta * spec.beta - 0.25) * l2 / 2.0;
            v0 / (l * x).sinh().powi(2)
        }
        MapKind::TrigSine => {
            let (vp, vm) = scarf_strengths(spec);
            let t = l * x;
            (vp - vm * t.sin()) / t.cos().powi(2)
        }
        MapKind::ExpLine => l2 / 8.0 * (2.0 * l * x).exp(),
        MapKind::RadialSquare => 0.0,
    }
}

fn scarf_strengths(spec: &BasisSpec) -> (f64, f64) {
    let l2 = spec.lambda().powi(2);
    let (a, b) = (spec.alpha, spec.beta);
    ((a * a + b * b - 0.5) * l2 / 4.0, (b * b - a * a) * l2 / 4.0)
}

/// `ℓ` of a radial Laguerre basis (`β = ℓ + ½`).
pub fn angular_momentum(spec: &BasisSpec) -> Option<u32> {
    match (spec.map.kind, spec.exponents) {
        (MapKind::RadialSquare, Exponents::Laguerre { .. }) => {
            Some((spec.beta - 0.5).round() as u32)
        }
        _ => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PotentialKind {
    PoschlTellerHyperbolic,
    ScarfTrigGeneralized,
    Morse1d,
    IsotropicOscillator,
}

/// Closed-form total potential identified from a linear fit `Ṽ = v0 + v1·y`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClosedFormPotential {
    /// `V₀/sinh²(λr) − 2Ṽ₁/cosh²(λr)`; the constant `Ṽ₀ + Ṽ₁` is dropped so
    /// that `V → 0` as `r → ∞`.
    PoschlTellerHyperbolic {
        lambda: f64,
        v_ref: f64,
        v1: f64,
        dropped_constant: f64,
    },
    /// `(V₊ − V₋ sin(λx))/cos²(λx) + Ṽ₁ sin(λx) + Ṽ₀`.
    ScarfTrigGeneralized {
        lambda: f64,
        v_plus: f64,
        v_minus: f64,
        v0: f64,
        v1: f64,
    },
    /// `(λ²/8)e^{2λx} + Ṽ₁e^{λx}`; `Ṽ₀` is dropped so that `V → 0` as `x → −∞`.
    Morse1d {
        lambda: f64,
        v1: f64,
        dropped_constant: f64,
    },
    /// `Ṽ₀ + ω r²` with `ω = Ṽ₁λ²/4`.
    IsotropicOscillator {
        lambda: f64,
        v0: f64,
        r2_coefficient: f64,
        ell: u32,
    },
}

impl ClosedFormPotential {
    pub fn kind(&self) -> PotentialKind {
        match self {
            Self::PoschlTellerHyperbolic { .. } => PotentialKind::PoschlTellerHyperbolic,
            Self::ScarfTrigGeneralized { .. } => PotentialKind::ScarfTrigGeneralized,
            Self::Morse1d { .. } => PotentialKind::Morse1d,
            Self::IsotropicOscillator { .. } => PotentialKind::IsotropicOscillator,
        }
    }

    /// Total potential `V(x)`.
    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            Self::PoschlTellerHyperbolic {
                lambda, v_ref, v1, ..
            } => {
                let t = lambda * x;
                v_ref / t.sinh().powi(2) - 2.0 * v1 / t.cosh().powi(2)
            }
            Self::ScarfTrigGeneralized {
                lambda,
                v_plus,
                v_minus,
                v0,
                v1,
            } => {
                let t = lambda * x;
                (v_plus - v_minus * t.sin()) / t.cos().powi(2) + v1 * t.sin() + v0
            }
            Self::Morse1d { lambda, v1, .. } => {
                let e = (lambda * x).exp();
                lambda * lambda / 8.0 * e * e + v1 * e
            }
            Self::IsotropicOscillator {
                v0, r2_coefficient, ..
            } => v0 + r2_coefficient * x * x,
        }
    }

    /// The residual potential `Ṽ(x)` implied by the closed form, with any
    /// dropped constant restored.
    pub fn v_tilde(&self, spec: &BasisSpec, x: f64) -> f64 {
        let dropped = match *self {
            Self::PoschlTellerHyperbolic {
                dropped_constant, ..
            }
            | Self::Morse1d {
                dropped_constant, ..
            } => dropped_constant,
            _ => 0.0,
        };
        self.eval(x) - reference_potential(spec, x) + dropped
    }

    /// Effective radial potential `ℓ(ℓ+1)/(2r²) + V(r)`; plain `V` otherwise.
    pub fn effective(&self, x: f64) -> f64 {
        match *self {
            Self::IsotropicOscillator { ell, .. } => {
                let l = ell as f64;
                l * (l + 1.0) / (2.0 * x * x) + self.eval(x)
            }
            _ => self.eval(x),
        }
    }

    /// Named coefficients for reporting.
    pub fn coefficients(&self) -> Vec<(&'static str, f64)> {
        match *self {
            Self::PoschlTellerHyperbolic {
                lambda,
                v_ref,
                v1,
                dropped_constant,
            } => vec![
                ("lambda", lambda),
                ("V0", v_ref),
                ("V1_tilde", v1),
                ("dropped_constant", dropped_constant),
            ],
            Self::ScarfTrigGeneralized {
                lambda,
                v_plus,
                v_minus,
                v0,
                v1,
            } => vec![
                ("lambda", lambda),
                ("V_plus", v_plus),
                ("V_minus", v_minus),
                ("V0_tilde", v0),
                ("V1_tilde", v1),
            ],
            Self::Morse1d {
                lambda,
                v1,
                dropped_constant,
            } => vec![
                ("lambda", lambda),
                ("V1_tilde", v1),
                ("dropped_constant", dropped_constant),
            ],
            Self::IsotropicOscillator {
                lambda,
                v0,
                r2_coefficient,
                ell,
            } => vec![
                ("lambda", lambda),
                ("V0_tilde", v0),
                ("r2_coefficient", r2_coefficient),
                ("ell", ell as f64),
            ],
        }
    }
}

/// Identify the closed-form potential for the configuration `spec`.
pub fn identify_closed_form(fit: &LinearFit, spec: &BasisSpec) -> Result<ClosedFormPotential> {
    if !(fit.residual <= LINEARITY_THRESHOLD) {
        return Err(HahnError::NotLinear(fit.residual));
    }
    let lambda = spec.lambda();
    let l2 = lambda * lambda;
    Ok(match spec.map.kind {
        MapKind::RadialTanh => ClosedFormPotential::PoschlTellerHyperbolic {
            lambda,
            v_ref: (spec.beta * spec.beta - 0.25) * l2 / 2.0,
            v1: fit.v1,
            dropped_constant: fit.v0 + fit.v1,
        },
        MapKind::TrigSine => {
            let (v_plus, v_minus) = scarf_strengths(spec);
            ClosedFormPotential::ScarfTrigGeneralized {
                lambda,
                v_plus,
                v_minus,
                v0: fit.v0,
                v1: fit.v1,
            }
        }
        MapKind::ExpLine => ClosedFormPotential::Morse1d {
            lambda,
            v1: fit.v1,
            dropped_constant: fit.v0,
        },
        MapKind::RadialSquare => ClosedFormPotential::IsotropicOscillator {
            lambda,
            v0: fit.v0,
            r2_coefficient: fit.v1 * l2 / 4.0,
            ell: angular_momentum(spec).unwrap_or(0),
        },
    })
}

//! Symmetric tridiagonal matrices: the total Hamiltonian read off from the
//! continuous Hahn recursion, the reference Hamiltonians of each basis, and
//! the potential matrix `Ṽ = H − H₀`.

use serde::Serialize;

use crate::error::{HahnError, Result};
use crate::orthopoly::{cont_hahn_recursion, ContinuousHahnParams};

pub const DEFAULT_DIMENSION: usize = 30;

/// Symmetric tridiagonal matrix stored as its diagonal and first off-diagonal.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymTridiag {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
    /// Unit convention of the entries.
    pub scale_note: String,
}

impl SymTridiag {
    pub fn new(diag: Vec<f64>, off: Vec<f64>, scale_note: impl Into<String>) -> Result<Self> {
        if off.len() + 1 != diag.len() {
            return Err(HahnError::SizeMismatch {
                left: diag.len(),
                right: off.len() + 1,
            });
        }
        if !diag.iter().chain(&off).all(|v| v.is_finite()) {
            return Err(HahnError::NonFinite("matrix entry"));
        }
        Ok(Self {
            diag,
            off,
            scale_note: scale_note.into(),
        })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Entry `(i, j)`; zero outside the band.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        match i.abs_diff(j) {
            0 => self.diag[i],
            1 => self.off[i.min(j)],
            _ => 0.0,
        }
    }

    /// Column `j` as a dense vector.
    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.dim()).map(|i| self.get(i, j)).collect()
    }
}

/// `H`, `H₀` and `Ṽ = H − H₀`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HamiltonianSet {
    pub h: SymTridiag,
    pub h0: SymTridiag,
    pub vt: SymTridiag,
}

impl HamiltonianSet {
    pub fn new(h: SymTridiag, h0: SymTridiag) -> Result<Self> {
        let vt = potential_matrix(&h, &h0)?;
        Ok(Self { h, h0, vt })
    }
}

fn check_dim(n: usize) -> Result<()> {
    if n == 0 {
        Err(HahnError::InvalidParameter(
            "matrix dimension must be at least 1".into(),
        ))
    } else {
        Ok(())
    }
}

fn check_jacobi(alpha: f64, beta: f64) -> Result<()> {
    if alpha > -1.0 && beta > -1.0 {
        Ok(())
    } else {
        Err(HahnError::InvalidParameter(format!(
            "alpha = {alpha}, beta = {beta} must exceed -1"
        )))
    }
}

fn check_scale(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(HahnError::InvalidParameter(format!(
            "{name} must be positive, got {v}"
        )))
    }
}

/// Total Hamiltonian `H` for energy `E = λ²z`, `n × n`.
pub fn build_h(p: &ContinuousHahnParams, lambda: f64, n: usize) -> Result<SymTridiag> {
    check_dim(n)?;
    check_scale("lambda", lambda)?;
    p.check_orthogonality()?;
    let l2 = lambda * lambda;
    let (mu, nu, a, b) = (p.mu, p.nu, p.a, p.b);
    let s = a + b;
    let diag = (0..n)
        .map(|k| {
            let k = k as f64;
            let bracket = if k == 0.0 {
                // (2μ+2ν−1) of the prefactor cancels against the first term
                2.0 * mu / (mu + nu)
            } else {
                ((k + 2.0 * mu) * (k + 2.0 * mu + 2.0 * nu - 1.0) / (k + mu + nu)
                    + k * (k + 2.0 * nu - 1.0) / (k + mu + nu - 1.0))
                    / (2.0 * k + 2.0 * mu + 2.0 * nu - 1.0)
            };
            l2 * (-a + 0.5 * s * bracket)
        })
        .collect();
    let off = (0..n - 1)
        .map(|k| {
            let k = k as f64;
            let m = k + mu + nu;
            let radicand = if k == 0.0 {
                4.0 * mu * nu * (m * m + s * s) / (2.0 * mu + 2.0 * nu + 1.0)
            } else {
                (k + 1.0)
                    * (k + 2.0 * mu)
                    * (k + 2.0 * nu)
                    * (k + 2.0 * mu + 2.0 * nu - 1.0)
                    * (m * m + s * s)
                    / ((2.0 * k + 2.0 * mu + 2.0 * nu - 1.0)
                        * (2.0 * k + 2.0 * mu + 2.0 * nu + 1.0))
            };
            l2 * 0.5 / m * radicand.sqrt()
        })
        .collect();
    SymTridiag::new(diag, off, "lambda^2")
}

/// Reference Hamiltonian `T + V₀/sinh²(λr)` in the radial Jacobi basis.
pub fn build_h0_jacobi_radial(alpha: f64, beta: f64, lambda: f64, n: usize) -> Result<SymTridiag> {
    check_dim(n)?;
    check_jacobi(alpha, beta)?;
    check_scale("lambda", lambda)?;
    let l2 = lambda * lambda;
    let s = alpha + beta;
    let c = |k: f64| {
        if k == 0.0 {
            // (β²−α²)/((α+β)(α+β+2)) with the α+β factor cancelled
            (beta - alpha) / (s + 2.0)
        } else {
            (beta * beta - alpha * alpha) / ((2.0 * k + s) * (2.0 * k + s + 2.0))
        }
    };
    let d = |k: f64| {
        let ratio = if k == 0.0 {
            (alpha + 1.0) * (beta + 1.0) / (s + 3.0)
        } else {
            (k + 1.0) * (k + alpha + 1.0) * (k + beta + 1.0) * (k + s + 1.0)
                / ((2.0 * k + s + 1.0) * (2.0 * k + s + 3.0))
        };
        2.0 / (2.0 * k + s + 2.0) * ratio.sqrt()
    };
    let g = |k: f64| (k + 0.5 * s + 1.0).powi(2) - 1.0 / 16.0;
    let diag = (0..n)
        .map(|k| {
            let k = k as f64;
            let first = if k == 0.0 {
                0.0
            } else {
                -2.0 * k * (k + beta) / (2.0 * k + s)
            };
            l2 * (first - 0.5 * (alpha + 1.0).powi(2) + g(k) * (1.0 - c(k)))
        })
        .collect();
    let off = (0..n - 1)
        .map(|k| -l2 * g(k as f64) * d(k as f64))
        .collect();
    SymTridiag::new(diag, off, "lambda^2")
}

/// Reference Hamiltonian of the trigonometric Jacobi basis; diagonal.
pub fn build_h0_jacobi_trig(alpha: f64, beta: f64, length: f64, n: usize) -> Result<SymTridiag> {
    check_dim(n)?;
    check_jacobi(alpha, beta)?;
    check_scale("L", length)?;
    let lambda = std::f64::consts::PI / length;
    let half_l2 = 0.5 * lambda * lambda;
    let diag = (0..n)
        .map(|k| half_l2 * (k as f64 + 0.5 * (alpha + beta + 1.0)).powi(2))
        .collect();
    SymTridiag::new(diag, vec![0.0; n - 1], "lambda^2 with lambda = pi/L")
}

/// Reference Hamiltonian `−½d²/dx² + (λ²/8)e^{2λx}` in the exponential Laguerre basis.
pub fn build_h0_laguerre_1d(beta: f64, lambda: f64, n: usize) -> Result<SymTridiag> {
    check_dim(n)?;
    check_jacobi(0.0, beta)?;
    check_scale("lambda", lambda)?;
    let half_l2 = 0.5 * lambda * lambda;
    let diag = (0..n)
        .map(|k| {
            let k = k as f64;
            half_l2
                * ((2.0 * k + beta + 1.0) * (k + 0.5 * beta + 1.0)
                    - k
                    - 0.25 * (beta + 1.0).powi(2))
        })
        .collect();
    let off = (0..n - 1)
        .map(|k| {
            let k = k as f64;
            -half_l2 * (k + 0.5 * beta + 1.0) * ((k + 1.0) * (k + beta + 1.0)).sqrt()
        })
        .collect();
    SymTridiag::new(diag, off, "lambda^2")
}

/// Kinetic operator `−½d²/dr² + ℓ(ℓ+1)/(2r²)` in the radial Laguerre basis
/// with `y = (λr/2)²`, `β = ℓ + ½`.
///
/// With this coordinate map the overall factor is `λ²/8`.
pub fn build_t_laguerre_radial(ell: u32, lambda: f64, n: usize) -> Result<SymTridiag> {
    check_dim(n)?;
    check_scale("lambda", lambda)?;
    let beta = ell as f64 + 0.5;
    let pref = lambda * lambda / 8.0;
    let diag = (0..n)
        .map(|k| pref * (2.0 * k as f64 + beta + 1.0))
        .collect();
    let off = (0..n - 1)
        .map(|k| {
            let k = k as f64;
            pref * ((k + 1.0) * (k + beta + 1.0)).sqrt()
        })
        .collect();
    SymTridiag::new(diag, off, "lambda^2")
}

/// `Ṽ = H − H₀`, elementwise.
pub fn potential_matrix(h: &SymTridiag, h0: &SymTridiag) -> Result<SymTridiag> {
    if h.dim() != h0.dim() {
        return Err(HahnError::SizeMismatch {
            left: h.dim(),
            right: h0.dim(),
        });
    }
    let diag = h.diag.iter().zip(&h0.diag).map(|(a, b)| a - b).collect();
    let off = h.off.iter().zip(&h0.off).map(|(a, b)| a - b).collect();
    SymTridiag::new(diag, off, h.scale_note.clone())
}

/// Largest residual of `E P_n = Σ_m H_{nm} P_m` with `E = λ²z`, relative to `max|P_n|`.
///
/// The last row is skipped: it couples to `P_n` beyond the truncation.
pub fn wave_equation_residual(
    h: &SymTridiag,
    p: &ContinuousHahnParams,
    lambda: f64,
    z: f64,
) -> Result<f64> {
    let dim = h.dim();
    let poly = cont_hahn_recursion(p, z, dim)?;
    let energy = lambda * lambda * z;
    let scale = poly.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut worst = 0.0f64;
    for n in 0..dim.saturating_sub(1) {
        let lower = if n > 0 {
            h.off[n - 1] * poly[n - 1]
        } else {
            0.0
        };
        let r = energy * poly[n] - h.diag[n] * poly[n] - lower - h.off[n] * poly[n + 1];
        worst = worst.max(r.abs());
    }
    Ok(worst / scale)
}

//! Square-integrable Jacobi and Laguerre bases under four coordinate maps.
//!
//! Every basis is orthonormal with respect to the measure `λ dx`. Envelope
//! factors are accumulated as logarithms so that large exponents near the
//! ends of the domain underflow cleanly to zero instead of producing NaN.

use std::f64::consts::{FRAC_PI_4, LN_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{HahnError, Result};
use crate::orthopoly::{jacobi_sequence, laguerre_sequence};
use crate::quadrature::{self, decay_cutoff};
use crate::specfun::ln_gamma_real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Jacobi,
    Laguerre,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MapKind {
    /// `y = 2 tanh²(λr) − 1`, `r ∈ [0, ∞)`
    RadialTanh,
    /// `y = sin(πx/L)`, `x ∈ [−L/2, L/2]`
    TrigSine,
    /// `y = e^{λx}`, `x ∈ ℝ`
    ExpLine,
    /// `y = (λr/2)²`, `r ∈ [0, ∞)`
    RadialSquare,
}

/// A coordinate map `y(x)` together with its length scale.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoordinateMap {
    pub kind: MapKind,
    /// λ; for the trigonometric map this is π/L.
    pub lambda: f64,
}

impl CoordinateMap {
    pub fn new(kind: MapKind, lambda: f64) -> Self {
        Self { kind, lambda }
    }

    /// Closed interval of admissible `x` (possibly infinite).
    pub fn domain(&self) -> (f64, f64) {
        match self.kind {
            MapKind::RadialTanh | MapKind::RadialSquare => (0.0, f64::INFINITY),
            MapKind::TrigSine => {
                let half = 0.5 * PI / self.lambda;
                (-half, half)
            }
            MapKind::ExpLine => (f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    /// Range of `y` over the domain.
    pub fn y_range(&self) -> (f64, f64) {
        match self.kind {
            MapKind::RadialTanh | MapKind::TrigSine => (-1.0, 1.0),
            MapKind::ExpLine | MapKind::RadialSquare => (0.0, f64::INFINITY),
        }
    }

    pub fn check(&self, x: f64) -> Result<()> {
        let (lo, hi) = self.domain();
        if x.is_nan() || x < lo || x > hi || x.is_infinite() {
            Err(HahnError::OutOfDomain { x, lo, hi })
        } else {
            Ok(())
        }
    }

    pub fn y(&self, x: f64) -> f64 {
        let t = self.lambda * x;
        match self.kind {
            MapKind::RadialTanh => {
                let sech = 1.0 / t.cosh();
                1.0 - 2.0 * sech * sech
            }
            MapKind::TrigSine => t.sin(),
            MapKind::ExpLine => t.exp(),
            MapKind::RadialSquare => 0.25 * t * t,
        }
    }

    /// `dy/dx`.
    pub fn dy_dx(&self, x: f64) -> f64 {
        let l = self.lambda;
        let t = l * x;
        match self.kind {
            MapKind::RadialTanh => {
                let sech = 1.0 / t.cosh();
                4.0 * l * t.tanh() * sech * sech
            }
            MapKind::TrigSine => l * t.cos(),
            MapKind::ExpLine => l * t.exp(),
            MapKind::RadialSquare => 0.5 * l * t,
        }
    }

    /// Inverse map; `y` must lie in [`CoordinateMap::y_range`].
    pub fn x_of_y(&self, y: f64) -> f64 {
        let l = self.lambda;
        match self.kind {
            MapKind::RadialTanh => (0.5 * (1.0 + y)).sqrt().atanh() / l,
            MapKind::TrigSine => y.clamp(-1.0, 1.0).asin() / l,
            MapKind::ExpLine => y.ln() / l,
            MapKind::RadialSquare => 2.0 * y.sqrt() / l,
        }
    }

    /// Density of the measure `λ dx` with respect to `dy`.
    pub fn measure_density_y(&self, y: f64) -> f64 {
        match self.kind {
            MapKind::RadialTanh => 1.0 / (std::f64::consts::SQRT_2 * (1.0 - y) * (1.0 + y).sqrt()),
            MapKind::TrigSine => 1.0 / ((1.0 - y) * (1.0 + y)).sqrt(),
            MapKind::ExpLine => 1.0 / y,
            MapKind::RadialSquare => 1.0 / y.sqrt(),
        }
    }

    /// `(ln(1−y), ln(1+y))` for the compact maps, accurate near both ends.
    fn ln_one_minus_plus(&self, x: f64) -> (f64, f64) {
        let t = self.lambda * x;
        match self.kind {
            MapKind::RadialTanh => {
                // 1 − y = 2 sech², 1 + y = 2 tanh²
                let at = t.abs();
                let ln_cosh = at + (-2.0 * at).exp().ln_1p() - LN_2;
                (LN_2 - 2.0 * ln_cosh, LN_2 + 2.0 * t.tanh().abs().ln())
            }
            MapKind::TrigSine => {
                // 1 − sin θ = 2 sin²(π/4 − θ/2), 1 + sin θ = 2 cos²(π/4 − θ/2)
                let u = FRAC_PI_4 - 0.5 * t;
                (
                    LN_2 + 2.0 * u.sin().abs().ln(),
                    LN_2 + 2.0 * u.cos().abs().ln(),
                )
            }
            _ => unreachable!("only compact maps carry (1∓y) factors"),
        }
    }

    fn ln_y(&self, x: f64) -> f64 {
        match self.kind {
            MapKind::ExpLine => self.lambda * x,
            MapKind::RadialSquare => 2.0 * (0.5 * self.lambda * x).ln(),
            _ => unreachable!("only unbounded maps carry a y power"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Exponents {
    Jacobi { sigma: f64, tau: f64 },
    Laguerre { alpha_exp: f64 },
}

/// A concrete basis: polynomial family, coordinate map and envelope exponents.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BasisSpec {
    pub family: Family,
    pub map: CoordinateMap,
    /// Jacobi α (unused for Laguerre).
    pub alpha: f64,
    pub beta: f64,
    /// λ for hyperbolic, exponential and radial maps; L for the trigonometric one.
    pub scale: f64,
    pub exponents: Exponents,
}

fn check_gt_minus_one(name: &str, v: f64) -> Result<()> {
    if v > -1.0 && v.is_finite() {
        Ok(())
    } else {
        Err(HahnError::InvalidParameter(format!(
            "{name} must exceed -1, got {v}"
        )))
    }
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(HahnError::InvalidParameter(format!(
            "{name} must be positive, got {v}"
        )))
    }
}

impl BasisSpec {
    /// Jacobi basis with `y = 2tanh²(λr) − 1`, `2σ = α+1`, `2τ = β+½`.
    pub fn jacobi_radial(alpha: f64, beta: f64, lambda: f64) -> Result<Self> {
        check_gt_minus_one("alpha", alpha)?;
        check_gt_minus_one("beta", beta)?;
        check_positive("lambda", lambda)?;
        Ok(Self {
            family: Family::Jacobi,
            map: CoordinateMap::new(MapKind::RadialTanh, lambda),
            alpha,
            beta,
            scale: lambda,
            exponents: Exponents::Jacobi {
                sigma: 0.5 * (alpha + 1.0),
                tau: 0.5 * (beta + 0.5),
            },
        })
    }

    /// Jacobi basis with `y = sin(πx/L)`, `2σ = α+½`, `2τ = β+½`, `λ = π/L`.
    pub fn jacobi_trig(alpha: f64, beta: f64, length: f64) -> Result<Self> {
        check_gt_minus_one("alpha", alpha)?;
        check_gt_minus_one("beta", beta)?;
        check_positive("L", length)?;
        Ok(Self {
            family: Family::Jacobi,
            map: CoordinateMap::new(MapKind::TrigSine, PI / length),
            alpha,
            beta,
            scale: length,
            exponents: Exponents::Jacobi {
                sigma: 0.5 * (alpha + 0.5),
                tau: 0.5 * (beta + 0.5),
            },
        })
    }

    /// Laguerre basis with `y = e^{λx}`, `2α = β+1`.
    pub fn laguerre_exp(beta: f64, lambda: f64) -> Result<Self> {
        check_gt_minus_one("beta", beta)?;
        check_positive("lambda", lambda)?;
        Ok(Self {
            family: Family::Laguerre,
            map: CoordinateMap::new(MapKind::ExpLine, lambda),
            alpha: f64::NAN,
            beta,
            scale: lambda,
            exponents: Exponents::Laguerre {
                alpha_exp: 0.5 * (beta + 1.0),
            },
        })
    }

    /// Laguerre basis with `y = (λr/2)²`, `β = ℓ + ½`, `2α = β+½`.
    pub fn laguerre_radial(ell: u32, lambda: f64) -> Result<Self> {
        check_positive("lambda", lambda)?;
        let beta = ell as f64 + 0.5;
        Ok(Self {
            family: Family::Laguerre,
            map: CoordinateMap::new(MapKind::RadialSquare, lambda),
            alpha: f64::NAN,
            beta,
            scale: lambda,
            exponents: Exponents::Laguerre {
                alpha_exp: 0.5 * (beta + 0.5),
            },
        })
    }

    pub fn lambda(&self) -> f64 {
        self.map.lambda
    }

    /// Polynomials `p_0(y) … p_{n_max}(y)` of the family.
    pub fn polynomials(&self, n_max: usize, y: f64) -> Vec<f64> {
        match self.family {
            Family::Jacobi => jacobi_sequence(self.alpha, self.beta, n_max, y),
            Family::Laguerre => laguerre_sequence(self.beta, n_max, y),
        }
    }

    /// `ln A_n`.
    pub fn ln_normalization(&self, n: usize) -> f64 {
        let nf = n as f64;
        let lg = |x: f64| ln_gamma_real(x).expect("argument above zero");
        match self.family {
            Family::Jacobi => {
                let (a, b) = (self.alpha, self.beta);
                let s = a + b;
                let power = match self.map.kind {
                    MapKind::TrigSine => s + 1.0,
                    _ => s + 0.5,
                };
                // (2n+s+1) Γ(n+s+1), written to stay finite at n = 0, s = −1
                let lead = if n == 0 {
                    lg(s + 2.0)
                } else {
                    (2.0 * nf + s + 1.0).ln() + lg(nf + s + 1.0)
                };
                0.5 * (lead - power * LN_2 + lg(nf + 1.0) - lg(nf + b + 1.0) - lg(nf + a + 1.0))
            }
            Family::Laguerre => 0.5 * (lg(nf + 1.0) - lg(nf + self.beta + 1.0)),
        }
    }

    /// `ln` of the `n`-independent envelope factor at `x` (without `A_n`).
    pub fn ln_envelope(&self, x: f64) -> f64 {
        let term = |p: f64, l: f64| if p == 0.0 { 0.0 } else { p * l };
        match self.exponents {
            Exponents::Jacobi { sigma, tau } => {
                let (lm, lp) = self.map.ln_one_minus_plus(x);
                term(sigma, lm) + term(tau, lp)
            }
            Exponents::Laguerre { alpha_exp } => {
                term(alpha_exp, self.map.ln_y(x)) - 0.5 * self.map.y(x)
            }
        }
    }

    /// `ln` of the envelope expressed through `y` directly.
    fn ln_envelope_y(&self, y: f64) -> f64 {
        let term = |p: f64, v: f64| if p == 0.0 { 0.0 } else { p * v.ln() };
        match self.exponents {
            Exponents::Jacobi { sigma, tau } => term(sigma, 1.0 - y) + term(tau, 1.0 + y),
            Exponents::Laguerre { alpha_exp } => term(alpha_exp, y) - 0.5 * y,
        }
    }

    /// Evaluator for `φ_0 … φ_{n_max}` with the normalization constants cached.
    pub fn evaluator(&self, n_max: usize) -> BasisEvaluator {
        BasisEvaluator {
            spec: *self,
            ln_norms: (0..=n_max).map(|n| self.ln_normalization(n)).collect(),
        }
    }

    /// `φ_0(x) … φ_{n_max}(x)`.
    pub fn values(&self, n_max: usize, x: f64) -> Result<Vec<f64>> {
        self.evaluator(n_max).values(x)
    }

    /// `φ_0 … φ_{n_max}` at the point with coordinate `y`.
    pub fn values_y(&self, n_max: usize, y: f64) -> Vec<f64> {
        self.evaluator(n_max).values_y(y)
    }

    /// Subintervals in `y` covering the effective support of `φ_0 … φ_{n_max}`.
    pub fn y_breaks(&self, n_max: usize) -> Vec<f64> {
        match self.map.y_range() {
            (lo, hi) if hi.is_finite() => {
                let mut b: Vec<f64> = (0..=8).map(|i| lo + (hi - lo) * i as f64 / 8.0).collect();
                // split off the ends, where the envelope powers may be singular
                b.insert(1, lo + 1e-3 * (hi - lo));
                b.insert(b.len() - 1, hi - 1e-3 * (hi - lo));
                b
            }
            _ => {
                let p = self.beta + 2.0 * n_max as f64;
                let log_f = |y: f64| p.max(0.0) * y.ln() - y;
                let peak = p.max(1.0);
                let top = decay_cutoff(log_f, peak, 1.0, log_f(peak), 18.0, 1e4);
                let mut b = vec![0.0, 1e-3];
                let mut y = 0.5;
                while y < top {
                    b.push(y);
                    y += 0.5 + y * 0.25;
                }
                b.push(top);
                b
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct BasisEvaluator {
    spec: BasisSpec,
    ln_norms: Vec<f64>,
}

impl BasisEvaluator {
    pub fn spec(&self) -> &BasisSpec {
        &self.spec
    }

    fn assemble(&self, y: f64, ln_env: f64) -> Vec<f64> {
        let polys = self.spec.polynomials(self.ln_norms.len() - 1, y);
        polys
            .iter()
            .zip(&self.ln_norms)
            .map(|(p, ln_a)| {
                let l = ln_env + ln_a;
                if l < -745.0 || *p == 0.0 {
                    0.0
                } else {
                    // fold the polynomial into the exponent so that huge
                    // polynomial values meet a vanishing envelope in log space
                    p.signum() * (l + p.abs().ln()).exp()
                }
            })
            .collect()
    }

    pub fn values(&self, x: f64) -> Result<Vec<f64>> {
        self.spec.map.check(x)?;
        Ok(self.assemble(self.spec.map.y(x), self.spec.ln_envelope(x)))
    }

    pub fn values_y(&self, y: f64) -> Vec<f64> {
        self.assemble(y, self.spec.ln_envelope_y(y))
    }
}

/// `φ_n(x)`.
pub fn basis_eval(spec: &BasisSpec, n: usize, x: f64) -> Result<f64> {
    Ok(spec.values(n, x)?[n])
}

/// `A_n`, the normalization constant.
pub fn normalization_constant(spec: &BasisSpec, n: usize) -> f64 {
    spec.ln_normalization(n).exp()
}

/// `⟨φ_n| w(y) |φ_m⟩` for `n, m ≤ n_max`, integrated in `y`.
pub fn matrix_elements<W>(
    spec: &BasisSpec,
    n_max: usize,
    weight: W,
    tol: f64,
) -> Result<Vec<Vec<f64>>>
where
    W: Fn(f64) -> f64,
{
    let dim = n_max + 1;
    let pairs: Vec<(usize, usize)> = (0..dim)
        .flat_map(|n| (n..dim).map(move |m| (n, m)))
        .collect();
    let breaks = spec.y_breaks(n_max);
    let eval = spec.evaluator(n_max);
    let est = quadrature::integrate_vec_pieces(
        |y, out| {
            let phi = eval.values_y(y);
            let w = weight(y) * spec.map.measure_density_y(y);
            for (o, &(n, m)) in out.iter_mut().zip(&pairs) {
                let v = phi[n] * phi[m] * w;
                *o = if v.is_finite() { v } else { 0.0 };
            }
        },
        pairs.len(),
        &breaks,
        tol,
    )?;
    let mut out = vec![vec![0.0; dim]; dim];
    for (v, &(n, m)) in est.values.iter().zip(&pairs) {
        out[n][m] = *v;
        out[m][n] = *v;
    }
    Ok(out)
}

/// Gram matrix `⟨φ_n|φ_m⟩` by adaptive quadrature.
pub fn orthonormality_matrix(spec: &BasisSpec, n_max: usize) -> Result<Vec<Vec<f64>>> {
    matrix_elements(spec, n_max, |_| 1.0, 1e-11)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn specs() -> Vec<BasisSpec> {
        vec![
            BasisSpec::jacobi_radial(5.0, 2.0, 1.0).unwrap(),
            BasisSpec::jacobi_trig(1.5, 3.5, 2.0).unwrap(),
            BasisSpec::laguerre_exp(2.7, 1.0).unwrap(),
            BasisSpec::laguerre_radial(1, 2.0).unwrap(),
        ]
    }

    #[test]
    fn exponent_relations() {
        let s = &specs();
        assert_eq!(
            s[0].exponents,
            Exponents::Jacobi {
                sigma: 3.0,
                tau: 1.25
            }
        );
        assert_eq!(
            s[1].exponents,
            Exponents::Jacobi {
                sigma: 1.0,
                tau: 2.0
            }
        );
        assert_eq!(s[2].exponents, Exponents::Laguerre { alpha_exp: 1.85 });
        assert_eq!(s[3].exponents, Exponents::Laguerre { alpha_exp: 1.0 });
        assert!((s[1].lambda() - PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn normalization_examples() {
        let lag = BasisSpec::laguerre_exp(0.0, 1.0).unwrap();
        assert!((normalization_constant(&lag, 0) - 1.0).abs() < 1e-15);
        let jr = BasisSpec::jacobi_radial(5.0, 2.0, 1.0).unwrap();
        let expect = (8.0 / 2f64.powf(7.5) * 5040.0 / (2.0 * 120.0)).sqrt();
        assert!((normalization_constant(&jr, 0) - expect).abs() < 1e-14 * expect);
        // n = 0 stays finite at α + β = −1
        let deg = BasisSpec::jacobi_trig(-0.5, -0.5, 1.0).unwrap();
        assert!(normalization_constant(&deg, 0).is_finite());
    }

    #[test]
    fn gram_is_identity() {
        for s in specs() {
            let g = orthonormality_matrix(&s, 8).unwrap();
            for (n, row) in g.iter().enumerate() {
                for (m, v) in row.iter().enumerate() {
                    let expect = if n == m { 1.0 } else { 0.0 };
                    assert!(
                        (v - expect).abs() < 1e-8,
                        "{:?} ({n},{m}) = {v}",
                        s.map.kind
                    );
                }
            }
        }
    }

    #[test]
    fn y_space_and_x_space_agree() {
        for s in specs() {
            for x in [0.3, 0.6, 0.9] {
                let vx = s.values(5, x).unwrap();
                let vy = s.values_y(5, s.map.y(x));
                for (a, b) in vx.iter().zip(&vy) {
                    assert!(
                        (a - b).abs() < 1e-10 * a.abs().max(1e-3),
                        "{:?}",
                        s.map.kind
                    );
                }
            }
        }
    }

    #[test]
    fn domain_and_boundaries() {
        let s = specs();
        assert!(matches!(
            basis_eval(&s[0], 0, -0.1),
            Err(HahnError::OutOfDomain { .. })
        ));
        assert!(matches!(
            basis_eval(&s[1], 0, 1.01),
            Err(HahnError::OutOfDomain { .. })
        ));
        assert!(basis_eval(&s[2], 0, f64::NAN).is_err());
        assert_eq!(basis_eval(&s[0], 2, 0.0).unwrap(), 0.0);
        assert_eq!(basis_eval(&s[1], 2, 1.0).unwrap(), 0.0);
        assert_eq!(basis_eval(&s[3], 2, 0.0).unwrap(), 0.0);
        assert_eq!(basis_eval(&s[0], 3, 500.0).unwrap(), 0.0);
        assert_eq!(basis_eval(&s[2], 3, 40.0).unwrap(), 0.0);
        assert!(basis_eval(&s[2], 3, -400.0).unwrap().abs() < 1e-200);
    }

    #[test]
    fn trig_ground_state_even_for_equal_exponents() {
        let s = BasisSpec::jacobi_trig(1.5, 1.5, 2.0).unwrap();
        for x in [0.1, 0.4, 0.77] {
            let a = basis_eval(&s, 0, x).unwrap();
            let b = basis_eval(&s, 0, -x).unwrap();
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn inverse_map() {
        for s in specs() {
            for x in [0.2, 0.7, 1.3] {
                let (lo, hi) = s.map.domain();
                if x < lo || x > hi {
                    continue;
                }
                assert!((s.map.x_of_y(s.map.y(x)) - x).abs() < 1e-10);
            }
        }
    }
}

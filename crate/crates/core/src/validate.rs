//! Named numerical checks over every module, plus the independent oracles
//! they rely on: finite Hahn sums, quadrature Gram matrices, the large-degree
//! remainder and a finite-difference evaluation of the wave operator.

use std::fmt;
use std::str::FromStr;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::basis::{matrix_elements, orthonormality_matrix, BasisEvaluator, BasisSpec, MapKind};
use crate::error::{HahnError, Result};
use crate::figures::{potential_setup, Params, PotentialSetup};
use crate::hamiltonian::{
    build_h, build_h0_jacobi_radial, build_h0_jacobi_trig, build_h0_laguerre_1d,
    build_t_laguerre_radial, wave_equation_residual, SymTridiag,
};
use crate::orthopoly::{
    cont_hahn_asymptotic, cont_hahn_hypergeometric, cont_hahn_log_weight, cont_hahn_recursion,
    cont_hahn_weight, hahn_eval, hahn_recursion, hahn_weight, scattering_amplitude,
    ContinuousHahnParams, HahnParams,
};
use crate::quadrature::{decay_cutoff, integrate_vec_pieces};
use crate::reconstruct::{
    angular_momentum, default_grid, identify_closed_form, reconstruct_potential,
    reference_potential, LinearFit, DEFAULT_GRID_POINTS, LINEARITY_THRESHOLD,
};
use crate::specfun::{principal_angle, LogGamma};
use crate::spectra::{
    example1_phase, example1_spectrum, example2_phase, example3_phase, example3_spectrum,
    ExampleOneParams, ExampleThreeParams, ExampleTwoParams, StateKind,
};
use crate::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Specfun,
    Orthopoly,
    Spectra,
    Hamiltonian,
    Basis,
    Reconstruct,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Specfun,
        Suite::Orthopoly,
        Suite::Spectra,
        Suite::Hamiltonian,
        Suite::Basis,
        Suite::Reconstruct,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Suite::Specfun => "specfun",
            Suite::Orthopoly => "orthopoly",
            Suite::Spectra => "spectra",
            Suite::Hamiltonian => "hamiltonian",
            Suite::Basis => "basis",
            Suite::Reconstruct => "reconstruct",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = HahnError;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.as_str() == s)
            .ok_or_else(|| HahnError::InvalidParameter(format!("unknown suite '{s}'")))
    }
}

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub tolerance: f64,
    /// Measured deviation; NaN when the computation itself failed.
    pub achieved: f64,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn measured(
        suite: Suite,
        name: impl Into<String>,
        tolerance: f64,
        outcome: Result<(f64, String)>,
    ) -> Self {
        let name = name.into();
        match outcome {
            Ok((achieved, detail)) => Self {
                suite,
                name,
                tolerance,
                achieved,
                passed: achieved <= tolerance,
                detail,
            },
            Err(e) => Self {
                suite,
                name,
                tolerance,
                achieved: f64::NAN,
                passed: false,
                detail: e.to_string(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
    pub passed: usize,
    pub failed: usize,
}

impl Report {
    fn new(checks: Vec<Check>) -> Self {
        let passed = checks.iter().filter(|c| c.passed).count();
        Self {
            failed: checks.len() - passed,
            passed,
            checks,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

struct Collector {
    suite: Suite,
    checks: Vec<Check>,
}

impl Collector {
    fn new(suite: Suite) -> Self {
        Self {
            suite,
            checks: Vec::new(),
        }
    }

    fn check(&mut self, name: impl Into<String>, tolerance: f64, f: impl FnOnce() -> Result<f64>) {
        self.detailed(name, tolerance, || f().map(|v| (v, String::new())));
    }

    fn detailed(
        &mut self,
        name: impl Into<String>,
        tolerance: f64,
        f: impl FnOnce() -> Result<(f64, String)>,
    ) {
        self.checks
            .push(Check::measured(self.suite, name, tolerance, f()));
    }
}

/// Run the given suites with the default Γ engine.
pub fn run(suites: &[Suite]) -> Report {
    run_with_engine(suites, &LogGamma::default())
}

pub fn run_all() -> Report {
    run(&Suite::ALL)
}

/// Run the given suites; the special-function checks use `engine`.
pub fn run_with_engine(suites: &[Suite], engine: &LogGamma) -> Report {
    let mut checks = Vec::new();
    for suite in suites {
        checks.extend(match suite {
            Suite::Specfun => specfun_checks(engine),
            Suite::Orthopoly => orthopoly_checks(),
            Suite::Spectra => spectra_checks(),
            Suite::Hamiltonian => hamiltonian_checks(),
            Suite::Basis => basis_checks(),
            Suite::Reconstruct => reconstruct_checks(),
        });
    }
    Report::new(checks)
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn max_abs<I: IntoIterator<Item = f64>>(it: I) -> f64 {
    it.into_iter().fold(
        0.0,
        |m, v| if v.is_nan() { f64::NAN } else { m.max(v.abs()) },
    )
}

/// Reference values of `ln Γ(w)`: (Re w, Im w, ln|Γ|, arg Γ).
pub const LN_GAMMA_TABLE: [(f64, f64, f64, f64); 7] = [
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

/// `max |ln(|Γ(ix)|² x sinh πx / π)|` over `xs`.
pub fn reflection_identity_error(engine: &LogGamma, xs: &[f64]) -> Result<f64> {
    let mut worst = 0.0f64;
    for &x in xs {
        let g = engine.ln_gamma(c(0.0, x))?;
        // ln sinh t = t + ln((1 − e^{−2t})/2)
        let t = std::f64::consts::PI * x;
        let ln_sinh = t + (-0.5 * (-2.0 * t).exp_m1()).ln();
        let d = 2.0 * g.log_modulus + x.ln() + ln_sinh - std::f64::consts::PI.ln();
        worst = worst.max(d.exp_m1().abs());
    }
    Ok(worst)
}

/// `max |Γ(w+1)/(wΓ(w)) − 1|` over `count` seeded random points with
/// `|Re w|, |Im w| ≤ 20`.
pub fn recurrence_error(engine: &LogGamma, count: usize, seed: u64) -> Result<f64> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    let mut done = 0;
    while done < count {
        let w = c(rng.gen_range(-20.0..20.0), rng.gen_range(-20.0..20.0));
        if w.im.abs() < 1e-3 && w.re <= 0.0 {
            continue;
        }
        let d = engine.ln_gamma_complex(w + 1.0)? - engine.ln_gamma_complex(w)? - w.ln();
        worst = worst.max((d.exp() - 1.0).norm());
        done += 1;
    }
    Ok(worst)
}

pub fn specfun_checks(engine: &LogGamma) -> Vec<Check> {
    let mut col = Collector::new(Suite::Specfun);
    col.check("gamma_trivial_values", 1e-14, || {
        let one = engine.ln_gamma(c(1.0, 0.0))?;
        let two = engine.ln_gamma(c(2.0, 0.0))?;
        let half = engine.ln_gamma(c(0.5, 0.0))?;
        let sqrt_pi = 0.5 * std::f64::consts::PI.ln();
        Ok(max_abs([
            one.log_modulus,
            two.log_modulus,
            half.log_modulus - sqrt_pi,
            one.argument,
        ]))
    });
    col.check("reflection_identity", 1e-12, || {
        reflection_identity_error(engine, &[0.3, 1.0, 2.5, 7.0, 15.0])
    });
    col.check("recurrence_identity", 1e-12, || {
        recurrence_error(engine, 100, 0x5eed)
    });
    col.check("conjugate_symmetry", 1e-13, || {
        let mut worst = 0.0f64;
        for &(re, im, ..) in &LN_GAMMA_TABLE {
            let g = engine.ln_gamma(c(re, im))?;
            let h = engine.ln_gamma(c(re, -im))?;
            worst = worst.max((g.log_modulus - h.log_modulus).abs());
            worst = worst.max(principal_angle(g.argument + h.argument).abs());
        }
        Ok(worst)
    });
    col.check("frozen_table", 1e-12, || {
        let mut worst = 0.0f64;
        for &(re, im, lm, arg) in &LN_GAMMA_TABLE {
            let g = engine.ln_gamma(c(re, im))?;
            worst = worst.max((g.log_modulus - lm).abs() / lm.abs().max(1.0));
            worst = worst.max(principal_angle(g.argument - arg).abs());
        }
        Ok(worst)
    });
    col.check("modulus_at_one_plus_i", 1e-13, || {
        let g = engine.ln_gamma(c(1.0, 1.0))?;
        Ok((g.modulus() - 0.521_564_046_864_939_8).abs())
    });
    col.checks
}

/// Deviations `(orthogonality, dual)` of the Hahn family from exact
/// orthonormality: `max|Σ_k ω_k Q_n Q_m − δ_nm|` and
/// `max|Σ_n Q_n(j) Q_n(k) − δ_jk/ω_j|·ω_j`.
pub fn hahn_orthogonality_error(h: &HahnParams) -> Result<(f64, f64)> {
    h.check()?;
    let size = h.size;
    let q: Vec<Vec<f64>> = (0..=size)
        .map(|k| hahn_recursion(h, k, size).map(|s| s.values))
        .collect::<Result<_>>()?;
    let w: Vec<f64> = (0..=size)
        .map(|k| hahn_weight(h, k))
        .collect::<Result<_>>()?;
    let mut orth = 0.0f64;
    for n in 0..=size {
        for m in 0..=size {
            let s: f64 = (0..=size).map(|k| w[k] * q[k][n] * q[k][m]).sum();
            orth = orth.max((s - if n == m { 1.0 } else { 0.0 }).abs());
        }
    }
    let mut dual = 0.0f64;
    for j in 0..=size {
        for k in 0..=size {
            let s: f64 = (0..=size).map(|n| q[j][n] * q[k][n]).sum();
            let target = if j == k { 1.0 / w[j] } else { 0.0 };
            dual = dual.max((s - target).abs() * w[j]);
        }
    }
    Ok((orth, dual))
}

/// `∫ρ(z) P_n(z) P_m(z) dz` for `n, m ≤ n_max`.
pub fn continuous_gram(p: &ContinuousHahnParams, n_max: usize, tol: f64) -> Result<Vec<Vec<f64>>> {
    p.check_orthogonality()?;
    let growth = 2.0 * n_max as f64;
    let log_f = |z: f64| {
        cont_hahn_log_weight(p, z).unwrap_or(f64::NEG_INFINITY) + growth * (1.0 + z.abs()).ln()
    };
    let centre = 0.5 * (p.b - p.a);
    let peak = (-200..=200)
        .map(|i| centre + 0.25 * i as f64)
        .fold(f64::NEG_INFINITY, |m, z| m.max(log_f(z)));
    let lo = decay_cutoff(log_f, centre, -0.25, peak, 20.0, 1e4);
    let hi = decay_cutoff(log_f, centre, 0.25, peak, 20.0, 1e4);
    let pieces = 48;
    let breaks: Vec<f64> = (0..=pieces)
        .map(|i| lo + (hi - lo) * i as f64 / pieces as f64)
        .collect();
    let dim = n_max + 1;
    let pairs: Vec<(usize, usize)> = (0..dim)
        .flat_map(|n| (n..dim).map(move |m| (n, m)))
        .collect();
    let mut failure = None;
    let est = integrate_vec_pieces(
        |z, out| {
            let values = cont_hahn_recursion(p, z, n_max)
                .and_then(|poly| Ok((poly, cont_hahn_weight(p, z)?)));
            match values {
                Ok((poly, w)) => {
                    for (o, &(n, m)) in out.iter_mut().zip(&pairs) {
                        *o = w * poly[n] * poly[m];
                    }
                }
                Err(e) => {
                    failure.get_or_insert(e);
                    out.fill(0.0);
                }
            }
        },
        pairs.len(),
        &breaks,
        tol,
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    let mut out = vec![vec![0.0; dim]; dim];
    for (v, &(n, m)) in est.values.iter().zip(&pairs) {
        out[n][m] = *v;
        out[m][n] = *v;
    }
    Ok(out)
}

/// `max |G − I|` of a square matrix.
pub fn identity_deviation(g: &[Vec<f64>]) -> f64 {
    let mut worst = 0.0f64;
    for (i, row) in g.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            worst = worst.max((v - if i == j { 1.0 } else { 0.0 }).abs());
        }
    }
    worst
}

/// Largest relative gap between the recursion and the asymptotic form over
/// degrees `n .. n + window`, scaled by the largest recursion value there.
pub fn asymptotic_deviation(
    p: &ContinuousHahnParams,
    z: f64,
    recursion: &[f64],
    n: usize,
    window: usize,
) -> Result<f64> {
    let end = n + window;
    if end > recursion.len() {
        return Err(HahnError::InvalidParameter(format!(
            "recursion has {} values, need {end}",
            recursion.len()
        )));
    }
    let mut gap = 0.0f64;
    let mut scale = 0.0f64;
    for (j, rec) in recursion.iter().enumerate().take(end).skip(n) {
        gap = gap.max((rec - cont_hahn_asymptotic(p, z, j)?).abs());
        scale = scale.max(rec.abs());
    }
    Ok(gap / scale)
}

pub const ASYMPTOTIC_DEGREES: [usize; 4] = [500, 1000, 2000, 4000];
pub const ASYMPTOTIC_WINDOW: usize = 16;

/// Ratios of successive asymptotic deviations at [`ASYMPTOTIC_DEGREES`].
pub fn asymptotic_ratios(p: &ContinuousHahnParams, z: f64) -> Result<Vec<f64>> {
    let top = ASYMPTOTIC_DEGREES[ASYMPTOTIC_DEGREES.len() - 1] + ASYMPTOTIC_WINDOW;
    let rec = cont_hahn_recursion(p, z, top)?;
    let devs: Vec<f64> = ASYMPTOTIC_DEGREES
        .iter()
        .map(|&n| asymptotic_deviation(p, z, &rec, n, ASYMPTOTIC_WINDOW))
        .collect::<Result<_>>()?;
    Ok(devs.windows(2).map(|w| w[0] / w[1]).collect())
}

/// Continuous Hahn parameter sets of the examples and the potential figures.
pub fn continuous_parameter_sets() -> Vec<ContinuousHahnParams> {
    vec![
        ContinuousHahnParams::new(1.0, 1.0, 0.0, 0.0),
        ContinuousHahnParams::new(3.0, 4.0, 2.0, -2.0),
        ContinuousHahnParams::new(3.0, 4.0, 2.0, 2.0),
        ContinuousHahnParams::new(3.0, 4.0, 2.5, -2.5),
        ContinuousHahnParams::new(3.0, 4.0, 2.5, 2.5),
        ContinuousHahnParams::new(2.0, 2.0, 1.0, -1.0),
        ContinuousHahnParams::new(0.5, 1.5, -0.75, 1.25),
    ]
}

pub const CROSS_EVALUATION_POINTS: [f64; 5] = [-1.3, -0.4, 0.25, 0.9, 2.1];

/// `max |P_rec − P_₃F₂|` over degrees `≤ n_max` and [`CROSS_EVALUATION_POINTS`],
/// relative to the largest `|P_n|` of each degree across those points.
pub fn cross_evaluation_error(p: &ContinuousHahnParams, n_max: usize) -> Result<f64> {
    let rec: Vec<Vec<f64>> = CROSS_EVALUATION_POINTS
        .iter()
        .map(|&z| cont_hahn_recursion(p, z, n_max).map(|s| s.values))
        .collect::<Result<_>>()?;
    let mut worst = 0.0f64;
    for n in 0..=n_max {
        let scale = max_abs(rec.iter().map(|r| r[n]));
        for (i, &z) in CROSS_EVALUATION_POINTS.iter().enumerate() {
            let h = cont_hahn_hypergeometric(p, z, n)?;
            worst = worst.max((rec[i][n] - h).abs() / scale);
        }
    }
    Ok(worst)
}

fn label(p: &ContinuousHahnParams) -> String {
    format!("({},{},{},{})", p.mu, p.nu, p.a, p.b)
}

pub const HAHN_FAMILIES: [(usize, f64, f64); 4] =
    [(1, 0.0, 0.0), (5, 1.5, 0.5), (10, 2.0, 3.0), (20, 0.5, 0.5)];

pub fn orthopoly_checks() -> Vec<Check> {
    let mut col = Collector::new(Suite::Orthopoly);
    for (size, alpha, beta) in HAHN_FAMILIES {
        let h = HahnParams::new(size, alpha, beta);
        let res = hahn_orthogonality_error(&h);
        let tag = format!("N={size},alpha={alpha},beta={beta}");
        col.check(format!("hahn_orthogonality[{tag}]"), 1e-10, || {
            res.clone().map(|r| r.0)
        });
        col.check(format!("hahn_dual_orthogonality[{tag}]"), 1e-8, || {
            res.map(|r| r.1)
        });
    }
    col.check("hahn_direct_sum_matches_recursion", 1e-10, || {
        let h = HahnParams::new(10, 2.0, 3.0);
        let mut worst = 0.0f64;
        for k in 0..=h.size {
            let rec = hahn_recursion(&h, k, h.size)?;
            for n in 0..=h.size {
                worst = worst.max((hahn_eval(&h, n, k)? - rec[n]).abs() / rec[n].abs().max(1.0));
            }
        }
        Ok(worst)
    });
    col.check("hahn_parameter_maps_round_trip", 1e-12, || {
        let h = HahnParams::new(6, 1.5, 0.5);
        let a = HahnParams::from_negative_mu_image(h.negative_mu_image())?;
        let b = HahnParams::from_positive_mu_image(h.positive_mu_image())?;
        Ok(max_abs([
            a.alpha - h.alpha,
            a.beta - h.beta,
            b.alpha - h.alpha,
            b.beta - h.beta,
            a.size as f64 - h.size as f64,
            b.size as f64 - h.size as f64,
        ]))
    });
    for p in [
        ContinuousHahnParams::new(3.0, 4.0, 2.0, -2.0),
        ContinuousHahnParams::new(1.0, 1.0, 0.0, 0.0),
    ] {
        col.check(
            format!("continuous_orthonormality{}", label(&p)),
            1e-6,
            || Ok(identity_deviation(&continuous_gram(&p, 10, 1e-9)?)),
        );
    }
    for p in continuous_parameter_sets() {
        col.check(
            format!("recursion_vs_hypergeometric{}", label(&p)),
            1e-8,
            || cross_evaluation_error(&p, 20),
        );
    }
    col.check("first_degree_closed_form", 1e-13, || {
        let p = ContinuousHahnParams::new(1.0, 1.0, 0.0, 0.0);
        let mut worst = 0.0f64;
        for z in CROSS_EVALUATION_POINTS {
            let exact = 5f64.sqrt() * z;
            worst = worst.max((cont_hahn_recursion(&p, z, 1)?[1] - exact).abs());
            worst = worst.max((cont_hahn_hypergeometric(&p, z, 1)? - exact).abs());
        }
        Ok(worst)
    });
    col.check("weight_normalization", 1e-9, || {
        let mut worst = 0.0f64;
        for p in continuous_parameter_sets() {
            worst = worst.max((continuous_gram(&p, 0, 1e-12)?[0][0] - 1.0).abs());
        }
        Ok(worst)
    });
    col.detailed("asymptotic_remainder_order", 0.0, || {
        let p = ContinuousHahnParams::new(3.0, 4.0, 2.0, -2.0);
        let ratios = asymptotic_ratios(&p, 0.3)?;
        let outside = ratios
            .iter()
            .map(|r| {
                if (1.3..=3.0).contains(r) {
                    0.0
                } else {
                    (r - r.clamp(1.3, 3.0)).abs()
                }
            })
            .fold(0.0, f64::max);
        Ok((
            outside,
            format!("deviation ratios {ratios:?}, expected within [1.3, 3]"),
        ))
    });
    col.checks
}

/// Real-axis intercept and largest residual of a least-squares line
/// `Im E = m Re E + c` through `points`.
pub fn chain_line(points: &[Complex64]) -> Result<(f64, f64)> {
    let n = points.len();
    if n < 2 {
        return Err(HahnError::InsufficientPoints(n));
    }
    let nf = n as f64;
    let mx = points.iter().map(|p| p.re).sum::<f64>() / nf;
    let my = points.iter().map(|p| p.im).sum::<f64>() / nf;
    let sxx: f64 = points.iter().map(|p| (p.re - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.re - mx) * (p.im - my)).sum();
    if !(sxx > 0.0) {
        return Err(HahnError::InsufficientPoints(n));
    }
    let slope = sxy / sxx;
    let icpt = my - slope * mx;
    let residual = max_abs(points.iter().map(|p| p.im - slope * p.re - icpt));
    Ok((-icpt / slope, residual))
}

pub const FIGURE3_GAMMAS: [f64; 6] = [-0.5, -1.0, -1.5, -2.0, -3.0, -5.0];

pub fn spectra_checks() -> Vec<Check> {
    let mut col = Collector::new(Suite::Spectra);
    let ex1 = ExampleOneParams::new(-14.5, -5.0, 1.0).expect("valid lambda");
    let chain = example1_spectrum(&ex1);
    col.check("figure1_ground_energy", 1e-12, || {
        let e = chain
            .first()
            .ok_or(HahnError::IndexExceedsSpectrum { index: 0, size: 0 })?;
        Ok((e.energy - c(-92.625, -72.5)).norm())
    });
    col.detailed("figure1_ground_kind", 0.0, || {
        let kind = chain.first().map(|e| e.kind);
        let ok = kind == Some(StateKind::EmbeddedResonance);
        Ok((if ok { 0.0 } else { 1.0 }, format!("{kind:?}")))
    });
    col.check("figure1_chain_length", 0.0, || {
        Ok((chain.len() as f64 - 15.0).abs())
    });
    let ex3 = ExampleThreeParams::new(-2.0, -7.5, 1.0, 1.0).expect("valid lambda");
    col.check("figure3_ground_energy", 1e-12, || {
        let e = example3_spectrum(&ex3);
        let e0 = e
            .first()
            .ok_or(HahnError::IndexExceedsSpectrum { index: 0, size: 0 })?;
        Ok((e0.energy - c(1.5, -3.0)).norm())
    });
    let lines: Result<Vec<(f64, f64)>> = FIGURE3_GAMMAS
        .iter()
        .map(|&g| {
            let p = ExampleThreeParams::new(g, -7.5, 1.0, 1.0)?;
            let pts: Vec<Complex64> = example3_spectrum(&p).iter().map(|e| e.energy).collect();
            chain_line(&pts)
        })
        .collect();
    col.check("figure3_chain_linearity", 1e-12, || {
        Ok(max_abs(lines.clone()?.iter().map(|l| l.1)))
    });
    col.check("figure3_chain_intercept", 1e-10, || {
        Ok(max_abs(lines?.iter().map(|l| l.0 - 7.5)))
    });
    col.check("amplitude_vanishes_on_spectrum", 0.0, || {
        let p = ex1.hahn_params();
        Ok(max_abs(
            crate::spectra::general_spectrum_points(&p)
                .iter()
                .map(|s| match s.branch {
                    crate::spectra::Branch::Plus => scattering_amplitude(&p, s.z),
                    crate::spectra::Branch::Minus => 0.0,
                }),
        ))
    });
    col.check("phase_shift_oracles", 1e-12, || {
        let d1 =
            example1_phase(&ExampleOneParams::new(2.0, 1.0, 1.0)?, 2.0)? + 4.604_793_086_933_736;
        let d2 = example2_phase(&ExampleTwoParams::new(3.75, -10.0, -10.0, 1.0)?, 1.0)?
            - 4.549_139_498_109_912;
        let d3 = example3_phase(&ExampleThreeParams::new(-2.0, -7.5, 1.0, 1.0)?, 3.0)?
            - 3.924_375_663_945_656_6;
        Ok(max_abs([d1, d2, d3].map(principal_angle)))
    });
    col.check("phase_vanishes_at_threshold", 1e-3, || {
        Ok(principal_angle(example1_phase(
            &ExampleOneParams::new(2.0, 0.0, 1.0)?,
            1e-8,
        )?)
        .abs())
    });
    col.checks
}

/// Potential of the operator whose closed-form matrix each basis carries:
/// the reference potential, plus the centrifugal term for the radial
/// Laguerre basis (whose closed form is the kinetic part only).
pub fn operator_potential(spec: &BasisSpec, x: f64) -> f64 {
    match spec.map.kind {
        MapKind::RadialSquare => {
            let ell = angular_momentum(spec).unwrap_or(0) as f64;
            ell * (ell + 1.0) / (2.0 * x * x)
        }
        _ => reference_potential(spec, x),
    }
}

/// Interval in `x` outside of which every `φ_n`, `n ≤ n_max`, is negligible.
fn x_support(eval: &BasisEvaluator, n_max: usize) -> (f64, f64) {
    let spec = eval.spec();
    let (lo, hi) = spec.map.domain();
    if lo.is_finite() && hi.is_finite() {
        return (lo, hi);
    }
    let g = |x: f64| match eval.values(x) {
        Ok(v) => v.iter().fold(f64::NEG_INFINITY, |m, p| m.max(p.abs().ln())),
        Err(_) => f64::NEG_INFINITY,
    };
    let top = 4.0 * (spec.beta + 2.0 * n_max as f64 + 2.0);
    let (peak_x, peak) = (1..400)
        .map(|i| spec.map.x_of_y(top * i as f64 / 400.0))
        .map(|x| (x, g(x)))
        .fold((f64::NAN, f64::NEG_INFINITY), |best, cur| {
            if cur.1 > best.1 {
                cur
            } else {
                best
            }
        });
    let step = 0.02 / spec.lambda();
    let limit = 1e4 / spec.lambda();
    let left = if lo.is_finite() {
        lo
    } else {
        decay_cutoff(g, peak_x, -step, peak, 16.0, limit)
    };
    let right = decay_cutoff(g, peak_x, step, peak, 16.0, limit);
    (left, right)
}

/// `−½ d²φ_n/dx²` at `x` for all `n ≤ n_max`: five-point stencil at steps
/// `h` and `h/2`, combined by Richardson extrapolation.
fn kinetic_fd(eval: &BasisEvaluator, x: f64, h_base: f64, lo: f64, hi: f64) -> Result<Vec<f64>> {
    let h = h_base.min((x - lo) / 2.5).min((hi - x) / 2.5);
    let at = |t: f64| eval.values(t);
    let f0 = at(x)?;
    let fp = [at(x + 0.5 * h)?, at(x + h)?, at(x + 2.0 * h)?];
    let fm = [at(x - 0.5 * h)?, at(x - h)?, at(x - 2.0 * h)?];
    let stencil = |p1: &[f64], p2: &[f64], m1: &[f64], m2: &[f64], step: f64| -> Vec<f64> {
        (0..f0.len())
            .map(|n| {
                (-p2[n] + 16.0 * p1[n] - 30.0 * f0[n] + 16.0 * m1[n] - m2[n]) / (12.0 * step * step)
            })
            .collect()
    };
    let coarse = stencil(&fp[1], &fp[2], &fm[1], &fm[2], h);
    let fine = stencil(&fp[0], &fp[1], &fm[0], &fm[1], 0.5 * h);
    Ok(coarse
        .iter()
        .zip(&fine)
        .map(|(c, f)| -0.5 * (16.0 * f - c) / 15.0)
        .collect())
}

/// `⟨φ_n| −½ d²/dx² + V |φ_m⟩ = λ ∫ φ_n (−½φ_m'' + Vφ_m) dx` for `n, m ≤ n_max`,
/// with derivatives by finite differences and the integral by adaptive
/// quadrature in `x`. The result is not symmetrized.
pub fn operator_matrix_fd<V>(
    spec: &BasisSpec,
    n_max: usize,
    potential: V,
    tol: f64,
) -> Result<Vec<Vec<f64>>>
where
    V: Fn(f64) -> f64,
{
    let eval = spec.evaluator(n_max);
    let (lo, hi) = x_support(&eval, n_max);
    let (dlo, dhi) = spec.map.domain();
    let h_base = 5e-3 / spec.lambda();
    let pieces = 32;
    let mut breaks: Vec<f64> = (0..=pieces)
        .map(|i| lo + (hi - lo) * i as f64 / pieces as f64)
        .collect();
    let edge = 1e-3 * (hi - lo);
    if dlo.is_finite() {
        breaks.insert(1, lo + edge);
    }
    if dhi.is_finite() {
        breaks.insert(breaks.len() - 1, hi - edge);
    }
    let dim = n_max + 1;
    let mut failure = None;
    let est = integrate_vec_pieces(
        |x, out| {
            let result = eval
                .values(x)
                .and_then(|phi| Ok((kinetic_fd(&eval, x, h_base, dlo, dhi)?, phi)));
            match result {
                Ok((kin, phi)) => {
                    let v = potential(x);
                    for n in 0..dim {
                        for m in 0..dim {
                            let t = phi[n] * (kin[m] + v * phi[m]);
                            out[n * dim + m] = if t.is_finite() { t } else { 0.0 };
                        }
                    }
                }
                Err(e) => {
                    failure.get_or_insert(e);
                    out.fill(0.0);
                }
            }
        },
        dim * dim,
        &breaks,
        tol,
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    let l = spec.lambda();
    Ok((0..dim)
        .map(|n| (0..dim).map(|m| l * est.values[n * dim + m]).collect())
        .collect())
}

/// A basis together with its closed-form reference operator.
#[derive(Debug, Clone)]
pub struct OperatorCase {
    pub name: &'static str,
    pub spec: BasisSpec,
    pub closed_form: SymTridiag,
}

/// The four basis families at the potential-figure parameters.
pub fn operator_cases(dim: usize) -> Result<Vec<OperatorCase>> {
    Ok(vec![
        OperatorCase {
            name: "jacobi_radial",
            spec: BasisSpec::jacobi_radial(5.0, 2.0, 1.0)?,
            closed_form: build_h0_jacobi_radial(5.0, 2.0, 1.0, dim)?,
        },
        OperatorCase {
            name: "jacobi_trig",
            spec: BasisSpec::jacobi_trig(1.5, 3.5, 2.0)?,
            closed_form: build_h0_jacobi_trig(1.5, 3.5, 2.0, dim)?,
        },
        OperatorCase {
            name: "laguerre_exp",
            spec: BasisSpec::laguerre_exp(2.7, 1.0)?,
            closed_form: build_h0_laguerre_1d(2.7, 1.0, dim)?,
        },
        OperatorCase {
            name: "laguerre_radial",
            spec: BasisSpec::laguerre_radial(1, 2.0)?,
            closed_form: build_t_laguerre_radial(1, 2.0, dim)?,
        },
    ])
}

/// Deviations of the finite-difference operator from the closed form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleErrors {
    /// Largest error on `|n−m| ≤ 1`.
    pub band: f64,
    /// Largest magnitude on `|n−m| ≥ 2`.
    pub off_band: f64,
    /// Largest `|M_nm − M_mn|`.
    pub asymmetry: f64,
}

pub fn operator_oracle_error(case: &OperatorCase, n_max: usize) -> Result<OracleErrors> {
    let fd = operator_matrix_fd(
        &case.spec,
        n_max,
        |x| operator_potential(&case.spec, x),
        1e-9,
    )?;
    let mut e = OracleErrors {
        band: 0.0,
        off_band: 0.0,
        asymmetry: 0.0,
    };
    for (n, row) in fd.iter().enumerate() {
        for (m, v) in row.iter().enumerate() {
            if n.abs_diff(m) <= 1 {
                e.band = e.band.max((v - case.closed_form.get(n, m)).abs());
            } else {
                e.off_band = e.off_band.max(v.abs());
            }
            e.asymmetry = e.asymmetry.max((v - fd[m][n]).abs());
        }
    }
    Ok(e)
}

pub const WAVE_IDENTITY_SAMPLES: usize = 10;

/// Largest wave-equation residual of the dimension-30 `H` over seeded random
/// `z ∈ [−6, 6]`.
pub fn wave_identity_error(
    p: &ContinuousHahnParams,
    lambda: f64,
    samples: usize,
    seed: u64,
) -> Result<f64> {
    let h = build_h(p, lambda, 30)?;
    let mut rng = StdRng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        worst = worst.max(wave_equation_residual(
            &h,
            p,
            lambda,
            rng.gen_range(-6.0..6.0),
        )?);
    }
    Ok(worst)
}

pub fn hamiltonian_checks() -> Vec<Check> {
    let mut col = Collector::new(Suite::Hamiltonian);
    for (i, p) in continuous_parameter_sets().iter().enumerate() {
        col.check(format!("wave_equation_identity{}", label(p)), 1e-9, || {
            wave_identity_error(
                p,
                1.0 + 0.5 * i as f64,
                WAVE_IDENTITY_SAMPLES,
                17 + i as u64,
            )
        });
    }
    match operator_cases(5) {
        Ok(cases) => {
            for case in cases {
                let res = operator_oracle_error(&case, 4);
                col.check(format!("operator_oracle_band[{}]", case.name), 1e-6, || {
                    res.clone().map(|r| r.band)
                });
                col.check(
                    format!("operator_oracle_vanishing[{}]", case.name),
                    1e-8,
                    || res.clone().map(|r| r.off_band),
                );
                col.check(format!("operator_hermiticity[{}]", case.name), 1e-8, || {
                    res.map(|r| r.asymmetry)
                });
            }
        }
        Err(e) => col.check("operator_oracle", 1e-6, || Err(e)),
    }
    col.checks
}

fn basis_specs() -> [(&'static str, Result<BasisSpec>); 4] {
    [
        ("jacobi_radial", BasisSpec::jacobi_radial(5.0, 2.0, 1.0)),
        ("jacobi_trig", BasisSpec::jacobi_trig(1.5, 3.5, 2.0)),
        ("laguerre_exp", BasisSpec::laguerre_exp(2.7, 1.0)),
        ("laguerre_radial", BasisSpec::laguerre_radial(1, 2.0)),
    ]
}

pub fn basis_checks() -> Vec<Check> {
    let mut col = Collector::new(Suite::Basis);
    let specs = basis_specs();
    for (name, spec) in specs {
        col.check(format!("gram_identity[{name}]"), 1e-9, || {
            Ok(identity_deviation(&orthonormality_matrix(&spec?, 8)?))
        });
    }
    col.check("linear_weight_is_tridiagonal", 1e-9, || {
        let spec = BasisSpec::laguerre_exp(2.7, 1.0)?;
        let m = matrix_elements(&spec, 6, |y| y, 1e-11)?;
        let mut worst = 0.0f64;
        for (n, row) in m.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                if n.abs_diff(k) >= 2 {
                    worst = worst.max(v.abs());
                }
            }
        }
        Ok(worst)
    });
    col.checks
}

/// Residual of a linear fit of `φ_1/φ_0` against `y` on the default grid.
pub fn ratio_affinity(spec: &BasisSpec) -> Result<f64> {
    let eval = spec.evaluator(1);
    let mut ys = Vec::new();
    let mut ratios = Vec::new();
    for x in default_grid(spec, DEFAULT_GRID_POINTS) {
        let phi = eval.values(x)?;
        if phi[0] != 0.0 {
            ys.push(spec.map.y(x));
            ratios.push(phi[1] / phi[0]);
        }
    }
    Ok(crate::reconstruct::linear_fit_in_y(&ys, &ratios)?.residual)
}

pub const POTENTIAL_FIGURES: [u32; 4] = [4, 5, 6, 7];

/// Round trip of the identified closed form: its matrix elements
/// `⟨φ_n|Ṽ|φ_0⟩` reproduce the first column of `Ṽ` for `n ≤ n_max`.
///
/// Only this column is reproduced; the other columns of `H − H₀` are not
/// those of a multiplicative potential.
pub fn round_trip_error(setup: &PotentialSetup, n_max: usize) -> Result<f64> {
    let spec = setup.spec;
    let grid = default_grid(&spec, DEFAULT_GRID_POINTS);
    let rec = reconstruct_potential(&setup.set.vt, &spec, 2, &grid)?;
    let fit = LinearFit {
        v0: rec.v0,
        v1: rec.v1,
        residual: rec.residual,
    };
    let closed = identify_closed_form(&fit, &spec)?;
    let m = matrix_elements(
        &spec,
        n_max,
        |y| closed.v_tilde(&spec, spec.map.x_of_y(y)),
        1e-10,
    )?;
    Ok(max_abs(
        m.iter()
            .enumerate()
            .map(|(n, row)| row[0] - setup.set.vt.get(n, 0)),
    ))
}

/// `max |Ṽ_{M=2} − Ṽ_{M=20}|` on the default grid.
pub fn truncation_difference(setup: &PotentialSetup) -> Result<f64> {
    let grid = default_grid(&setup.spec, DEFAULT_GRID_POINTS);
    let short = reconstruct_potential(&setup.set.vt, &setup.spec, 2, &grid)?;
    let long = reconstruct_potential(&setup.set.vt, &setup.spec, 20, &grid)?;
    Ok(max_abs(
        short.v_tilde.iter().zip(&long.v_tilde).map(|(a, b)| a - b),
    ))
}

pub fn reconstruct_checks() -> Vec<Check> {
    let mut col = Collector::new(Suite::Reconstruct);
    for (name, spec) in basis_specs() {
        col.check(format!("ratio_affine_in_y[{name}]"), 1e-10, || {
            ratio_affinity(&spec?)
        });
    }
    for id in POTENTIAL_FIGURES {
        let setup = potential_setup(id, &Params::new());
        col.check(
            format!("linear_in_y[figure {id}]"),
            LINEARITY_THRESHOLD,
            || {
                let s = setup.clone()?;
                let grid = default_grid(&s.spec, DEFAULT_GRID_POINTS);
                Ok(reconstruct_potential(&s.set.vt, &s.spec, 20, &grid)?.residual)
            },
        );
        col.check(
            format!("truncation_independence[figure {id}]"),
            1e-9,
            || truncation_difference(&setup.clone()?),
        );
        col.check(format!("closed_form_round_trip[figure {id}]"), 1e-6, || {
            round_trip_error(&setup.clone()?, 3)
        });
    }
    col.checks
}

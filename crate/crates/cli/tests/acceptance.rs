//! Acceptance criteria, one line per criterion.

use std::process::Command;
use std::time::{Duration, Instant};

use hahn_core::figures::{figure, potential_setup, Cell, Params, Table};
use hahn_core::orthopoly::{cont_hahn_recursion, ContinuousHahnParams, HahnParams};
use hahn_core::reconstruct::{default_grid, reconstruct_potential, DEFAULT_GRID_POINTS};
use hahn_core::specfun::LogGamma;
use hahn_core::validate::{
    asymptotic_ratios, chain_line, continuous_gram, continuous_parameter_sets,
    cross_evaluation_error, hahn_orthogonality_error, identity_deviation, operator_cases,
    operator_oracle_error, recurrence_error, reflection_identity_error, round_trip_error,
    truncation_difference, wave_identity_error, HAHN_FAMILIES, POTENTIAL_FIGURES,
    WAVE_IDENTITY_SAMPLES,
};
use hahn_core::Result;

type Criterion = fn() -> Result<Outcome>;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Result<Outcome> {
    Ok(Outcome { passed, detail })
}

fn within(elapsed: Duration, budget: f64) -> bool {
    elapsed.as_secs_f64() < budget
}

fn finite_orthogonality() -> Result<Outcome> {
    let start = Instant::now();
    let (mut orth, mut dual) = (0.0f64, 0.0f64);
    for (n, a, b) in HAHN_FAMILIES {
        let (o, d) = hahn_orthogonality_error(&HahnParams::new(n, a, b))?;
        orth = orth.max(o);
        dual = dual.max(d);
    }
    let t = start.elapsed();
    outcome(
        orth <= 1e-10 && dual <= 1e-8 && within(t, 1.0),
        format!("orthogonality {orth:.2e} (<= 1e-10), dual {dual:.2e} (<= 1e-8), {t:.2?} (< 1 s)"),
    )
}

fn continuous_orthonormality() -> Result<Outcome> {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for p in [
        ContinuousHahnParams::new(3.0, 4.0, 2.0, -2.0),
        ContinuousHahnParams::new(1.0, 1.0, 0.0, 0.0),
    ] {
        worst = worst.max(identity_deviation(&continuous_gram(&p, 10, 1e-9)?));
    }
    let t = start.elapsed();
    outcome(
        worst <= 1e-6 && within(t, 10.0),
        format!("max |G - I| {worst:.2e} (<= 1e-6), {t:.2?} (< 10 s)"),
    )
}

fn cross_evaluation() -> Result<Outcome> {
    let mut worst = 0.0f64;
    for p in continuous_parameter_sets() {
        worst = worst.max(cross_evaluation_error(&p, 20)?);
    }
    let p = ContinuousHahnParams::new(1.0, 1.0, 0.0, 0.0);
    let mut p1 = 0.0f64;
    for z in [-2.0, -0.7, 0.3, 1.9] {
        let rec = cont_hahn_recursion(&p, z, 1)?;
        p1 = p1.max((rec[1] - 5f64.sqrt() * z).abs() / (5f64.sqrt() * z).abs());
    }
    outcome(
        worst <= 1e-8 && p1 <= 1e-8,
        format!("recursion vs 3F2 {worst:.2e} (<= 1e-8), P_1 = sqrt(5) z {p1:.2e}"),
    )
}

fn asymptotics() -> Result<Outcome> {
    let start = Instant::now();
    let ratios = asymptotic_ratios(&ContinuousHahnParams::new(3.0, 4.0, 2.0, -2.0), 0.3)?;
    let t = start.elapsed();
    let shown: Vec<String> = ratios.iter().map(|r| format!("{r:.3}")).collect();
    outcome(
        ratios.iter().all(|r| (1.3..=3.0).contains(r)) && within(t, 5.0),
        format!(
            "deviation ratios [{}] (in [1.3, 3]), {t:.2?} (< 5 s)",
            shown.join(", ")
        ),
    )
}

fn wave_equation() -> Result<Outcome> {
    let mut worst = 0.0f64;
    for (i, p) in continuous_parameter_sets().iter().enumerate() {
        worst = worst.max(wave_identity_error(
            p,
            1.0 + 0.5 * i as f64,
            WAVE_IDENTITY_SAMPLES,
            101 + i as u64,
        )?);
    }
    outcome(worst <= 1e-9, format!("max residual {worst:.2e} (<= 1e-9)"))
}

fn hamiltonian_oracles() -> Result<Outcome> {
    let (mut band, mut off) = (0.0f64, 0.0f64);
    let mut names = Vec::new();
    for case in operator_cases(5)? {
        let e = operator_oracle_error(&case, 4)?;
        band = band.max(e.band);
        off = off.max(e.off_band);
        names.push(case.name);
    }
    outcome(
        band <= 1e-6 && off <= 1e-8 && names.len() == 4,
        format!(
            "band {band:.2e} (<= 1e-6), |n-m| >= 2 {off:.2e} (<= 1e-8), bases {}",
            names.join(" ")
        ),
    )
}

fn real(cell: &Cell) -> f64 {
    match cell {
        Cell::Real(v) => *v,
        Cell::Int(i) => *i as f64,
        Cell::Text(_) => f64::NAN,
    }
}

fn column(t: &Table, name: &str) -> usize {
    t.columns
        .iter()
        .position(|c| c == name)
        .expect("column present")
}

fn figure_one() -> Result<Outcome> {
    let t = figure(1, &Params::new())?;
    let (re, im, kind, chain) = (
        column(&t, "Re_E"),
        column(&t, "Im_E"),
        column(&t, "kind"),
        column(&t, "a_or_gamma"),
    );
    let first = t
        .rows
        .iter()
        .find(|r| real(&r[chain]) == -5.0)
        .expect("a = -5 chain");
    let err = (real(&first[re]) + 92.625)
        .abs()
        .max((real(&first[im]) + 72.5).abs());
    let scaled = (real(&first[column(&t, "Re_E_scaled")]) + 185.25)
        .abs()
        .max((real(&first[column(&t, "Im_E_scaled")]) + 145.0).abs());
    let embedded = first[kind] == Cell::Text("embedded_resonance".into());
    let counts: Vec<usize> = [-5.0, -7.0, -9.0, -11.0]
        .iter()
        .map(|a| t.rows.iter().filter(|r| real(&r[chain]) == *a).count())
        .collect();
    outcome(
        err <= 1e-12 && scaled <= 1e-12 && embedded && counts.iter().all(|&c| c == 15),
        format!("E_0 error {err:.1e}, scaled {scaled:.1e} (<= 1e-12), embedded_resonance {embedded}, chain sizes {counts:?}"),
    )
}

fn figure_three() -> Result<Outcome> {
    let t = figure(3, &Params::new())?;
    let (re, im, chain) = (
        column(&t, "Re_E"),
        column(&t, "Im_E"),
        column(&t, "a_or_gamma"),
    );
    let first = t
        .rows
        .iter()
        .find(|r| real(&r[chain]) == -2.0)
        .expect("gamma = -2 chain");
    let e0 = (real(&first[re]) - 1.5)
        .abs()
        .max((real(&first[im]) + 3.0).abs());
    let (mut residual, mut intercept) = (0.0f64, 0.0f64);
    for g in hahn_core::validate::FIGURE3_GAMMAS {
        let points: Vec<_> = t
            .rows
            .iter()
            .filter(|r| real(&r[chain]) == g)
            .map(|r| hahn_core::Complex64::new(real(&r[re]), real(&r[im])))
            .collect();
        let (x0, res) = chain_line(&points)?;
        residual = residual.max(res);
        intercept = intercept.max((x0 - 7.5).abs());
    }
    outcome(
        e0 <= 1e-12 && residual <= 1e-12 && intercept <= 1e-10,
        format!("E_0 error {e0:.1e} (<= 1e-12), chain residual {residual:.1e} (<= 1e-12), intercept error {intercept:.1e} (<= 1e-10)"),
    )
}

fn reconstruction() -> Result<Outcome> {
    let start = Instant::now();
    let (mut linear, mut trunc, mut round) = (0.0f64, 0.0f64, 0.0f64);
    for id in POTENTIAL_FIGURES {
        let s = potential_setup(id, &Params::new())?;
        let grid = default_grid(&s.spec, DEFAULT_GRID_POINTS);
        linear = linear.max(reconstruct_potential(&s.set.vt, &s.spec, 20, &grid)?.residual);
        trunc = trunc.max(truncation_difference(&s)?);
        round = round.max(round_trip_error(&s, 3)?);
    }
    let t = start.elapsed();
    outcome(
        linear <= 1e-6 && trunc <= 1e-9 && round <= 1e-6 && within(t, 30.0),
        format!(
            "fit residual {linear:.1e} (<= 1e-6), M=2 vs M=20 {trunc:.1e} (<= 1e-9), round trip {round:.1e} (<= 1e-6), {t:.2?} (< 30 s)"
        ),
    )
}

fn special_functions() -> Result<Outcome> {
    let engine = LogGamma::default();
    let refl = reflection_identity_error(&engine, &[0.1, 0.5, 1.0, 3.7, 12.0])?;
    let rec = recurrence_error(&engine, 100, 2024)?;
    outcome(
        refl <= 1e-12 && rec <= 1e-12,
        format!("reflection {refl:.1e}, recurrence on 100 points {rec:.1e} (<= 1e-12)"),
    )
}

fn run_hahn(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_hahn"))
        .args(args)
        .output()
        .expect("hahn runs");
    assert!(
        out.status.success(),
        "hahn {args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out.stdout
}

fn determinism() -> Result<Outcome> {
    let mut differing = Vec::new();
    for id in 1..=7 {
        let id = id.to_string();
        for format in ["csv", "json"] {
            let args = ["figure", id.as_str(), "--format", format];
            if run_hahn(&args) != run_hahn(&args) {
                differing.push(format!("figure {id} ({format})"));
            }
        }
    }
    outcome(
        differing.is_empty(),
        if differing.is_empty() {
            "figures 1-7 rerun byte-identically (csv, json)".into()
        } else {
            format!("differing output: {}", differing.join(", "))
        },
    )
}

fn main() {
    let criteria: [(&str, Criterion); 11] = [
        ("exact finite orthogonality", finite_orthogonality),
        ("continuous orthonormality", continuous_orthonormality),
        ("cross-evaluation", cross_evaluation),
        ("asymptotics", asymptotics),
        ("wave-equation identity", wave_equation),
        ("hamiltonian oracles", hamiltonian_oracles),
        ("figure 1 data", figure_one),
        ("figure 3 data", figure_three),
        ("reconstruction", reconstruction),
        ("special functions", special_functions),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let (passed, detail) = match f() {
            Ok(o) => (o.passed, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !passed {
            failed += 1;
        }
        println!(
            "criterion {:>2} {:<28} {}  {detail}",
            i + 1,
            name,
            if passed { "PASS" } else { "FAIL" }
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

use hahn_core::basis::{matrix_elements, BasisSpec};
use hahn_core::figures::{figure, phase, Params};
use hahn_core::orthopoly::{ContinuousHahnParams, HahnParams};
use hahn_core::quadrature::integrate;
use hahn_core::specfun::{ln_gamma, principal_angle, LogGamma, STIRLING_COEFFICIENTS};
use hahn_core::validate::{
    continuous_gram, identity_deviation, operator_cases, operator_oracle_error, run_all,
    run_with_engine, Suite,
};
use hahn_core::wavefn::{bound_wavefunction, scattering_wavefunction};
use hahn_core::Complex64;

#[test]
fn continuous_gram_is_identity() {
    for p in [
        ContinuousHahnParams::new(3.0, 4.0, 2.0, -2.0),
        ContinuousHahnParams::new(1.0, 1.0, 0.0, 0.0),
    ] {
        let g = continuous_gram(&p, 10, 1e-9).unwrap();
        assert!(
            identity_deviation(&g) <= 1e-6,
            "{p:?}: {}",
            identity_deviation(&g)
        );
    }
}

#[test]
fn finite_difference_operators_match_closed_forms() {
    for case in operator_cases(5).unwrap() {
        let e = operator_oracle_error(&case, 4).unwrap();
        assert!(e.band <= 1e-6, "{}: band {}", case.name, e.band);
        assert!(e.off_band <= 1e-8, "{}: off band {}", case.name, e.off_band);
        assert!(
            e.asymmetry <= 1e-8,
            "{}: asymmetry {}",
            case.name,
            e.asymmetry
        );
    }
}

#[test]
fn phase_table_matches_gamma_argument() {
    let mut over = Params::new();
    over.insert("steps".into(), 7.0);
    let t = phase(1, &over).unwrap();
    let e = t.real_column("E").unwrap();
    let d = t.real_column("delta").unwrap();
    for (e, d) in e.iter().zip(&d) {
        let w = Complex64::new(2.0, 1.0 + (2.0 * e).sqrt());
        let oracle = -2.0 * ln_gamma(w).unwrap().argument;
        assert!(principal_angle(d - oracle).abs() < 1e-13);
    }
}

#[test]
fn bound_states_are_orthogonal() {
    let spec = BasisSpec::jacobi_trig(1.5, 3.5, 2.0).unwrap();
    let h = HahnParams::new(1, 0.0, 0.0);
    let (lo, hi) = spec.map.domain();
    let overlap = integrate(
        |x| {
            let a = bound_wavefunction(&h, &spec, 0, &[x], 1).unwrap().psi[0];
            let b = bound_wavefunction(&h, &spec, 1, &[x], 1).unwrap().psi[0];
            a * b
        },
        lo,
        hi,
        1e-10,
    )
    .unwrap()
    .value;
    assert!((spec.lambda() * overlap).abs() <= 1e-6);
}

#[test]
fn bound_states_have_unit_norm() {
    let spec = BasisSpec::jacobi_trig(1.5, 3.5, 2.0).unwrap();
    let h = HahnParams::new(4, 1.5, 0.5);
    let (lo, hi) = spec.map.domain();
    for k in 0..=4 {
        let norm = integrate(
            |x| bound_wavefunction(&h, &spec, k, &[x], 4).unwrap().psi[0].powi(2),
            lo,
            hi,
            1e-11,
        )
        .unwrap()
        .value
            * spec.lambda();
        assert!((norm - 1.0).abs() <= 1e-8, "k = {k}: {norm}");
    }
}

#[test]
fn scattering_tail_shrinks_with_truncation() {
    let cases = [
        (
            ContinuousHahnParams::new(3.0, 4.0, 2.5, -2.5),
            BasisSpec::laguerre_exp(2.7, 1.0).unwrap(),
        ),
        (
            ContinuousHahnParams::new(3.0, 4.0, 2.0, 2.0),
            BasisSpec::jacobi_radial(5.0, 2.0, 1.0).unwrap(),
        ),
        (
            ContinuousHahnParams::new(3.0, 4.0, 2.5, -2.5),
            BasisSpec::jacobi_trig(1.5, 3.5, 2.0).unwrap(),
        ),
        (
            ContinuousHahnParams::new(3.0, 4.0, 2.5, 2.5),
            BasisSpec::laguerre_radial(1, 2.0).unwrap(),
        ),
    ];
    for (p, spec) in cases {
        let grid = hahn_core::reconstruct::default_grid(&spec, 60);
        for z in [-3.0, -1.0, 0.3, 1.0, 2.0, 4.0] {
            let short = scattering_wavefunction(&p, &spec, z, &grid, 20).unwrap();
            let long = scattering_wavefunction(&p, &spec, z, &grid, 40).unwrap();
            assert!(
                long.tail_estimate <= short.tail_estimate,
                "{:?} z = {z}",
                spec.map.kind
            );
        }
    }
}

fn specs() -> Vec<BasisSpec> {
    vec![
        BasisSpec::jacobi_radial(5.0, 2.0, 1.0).unwrap(),
        BasisSpec::jacobi_trig(1.5, 3.5, 2.0).unwrap(),
        BasisSpec::laguerre_exp(2.7, 1.0).unwrap(),
        BasisSpec::laguerre_radial(1, 2.0).unwrap(),
    ]
}

#[test]
fn projection_of_y_phi0_is_exact() {
    for spec in specs() {
        let c = matrix_elements(&spec, 7, |y| y, 1e-11).unwrap();
        for x in hahn_core::reconstruct::default_grid(&spec, 25) {
            let phi = spec.values(7, x).unwrap();
            let synth: f64 = (0..8).map(|n| c[n][0] * phi[n]).sum();
            let exact = spec.map.y(x) * phi[0];
            assert!((synth - exact).abs() <= 1e-4, "{:?} at {x}", spec.map.kind);
        }
    }
}

#[test]
fn basis_functions_vanish_at_the_ends() {
    for spec in specs() {
        let (lo, hi) = spec.map.domain();
        let ends = [
            if lo.is_finite() {
                lo + 1e-7
            } else {
                -200.0 / spec.lambda()
            },
            if hi.is_finite() {
                hi - 1e-7
            } else {
                200.0 / spec.lambda()
            },
        ];
        for x in ends {
            for (n, v) in spec.values(6, x).unwrap().iter().enumerate() {
                assert!(v.abs() < 1e-3, "{:?} n = {n} at {x}: {v}", spec.map.kind);
            }
        }
    }
}

#[test]
fn full_validation_passes() {
    let report = run_all();
    assert!(report.checks.len() >= 20);
    let failed: Vec<_> = report.failures().collect();
    assert!(failed.is_empty(), "{failed:#?}");
}

#[test]
fn corrupted_gamma_coefficients_are_caught() {
    let mut coefficients = STIRLING_COEFFICIENTS.to_vec();
    coefficients[1] *= 1.001;
    let report = run_with_engine(
        &[Suite::Specfun],
        &LogGamma::with_coefficients(coefficients),
    );
    assert!(!report.all_passed());
    assert!(report.failures().any(|c| c.name == "reflection_identity"));
}

#[test]
fn figure_tables_have_caption_shape() {
    let f1 = figure(1, &Params::new()).unwrap();
    assert_eq!(f1.rows.len(), 60);
    let f3 = figure(3, &Params::new()).unwrap();
    let gamma = f3.real_column("a_or_gamma").unwrap();
    let re = f3.real_column("Re_E").unwrap();
    let last = gamma.iter().rposition(|g| *g == -2.0).unwrap();
    assert_eq!(re[last], 7.5);
    let f4 = figure(4, &Params::new()).unwrap();
    assert_eq!(f4.columns, ["r", "V_tilde", "V_total"]);
    assert_eq!(f4.rows.len(), 400);
    assert_eq!(
        figure(7, &Params::new()).unwrap().columns.last().unwrap(),
        "V_eff"
    );
}

use hahn_core::basis::BasisSpec;
use hahn_core::hamiltonian::{
    build_h, build_h0_laguerre_1d, potential_matrix, wave_equation_residual,
};
use hahn_core::orthopoly::{
    cont_hahn_hypergeometric, cont_hahn_recursion, hahn_eval, hahn_recursion, ContinuousHahnParams,
    HahnParams,
};
use hahn_core::reconstruct::{default_grid, linear_fit_in_y, reconstruct_potential};
use hahn_core::specfun::{ln_gamma, ln_gamma_complex, pochhammer, principal_angle};
use hahn_core::spectra::{
    example1_spectrum, example3_spectrum, general_spectrum_points, Branch, ExampleOneParams,
    ExampleThreeParams, StateKind,
};
use hahn_core::validate::hahn_orthogonality_error;
use hahn_core::wavefn::{scattering_wavefunction, synthesize};
use hahn_core::Complex64;
use proptest::prelude::*;
use proptest::sample::select;

fn poleless() -> impl Strategy<Value = Complex64> {
    (-30.0..30.0f64, -30.0..30.0f64)
        .prop_filter("away from the poles", |(re, im)| {
            im.abs() > 1e-3 || *re > 0.0
        })
        .prop_map(|(re, im)| Complex64::new(re, im))
}

proptest! {
    #[test]
    fn ln_gamma_conjugate_symmetry(w in poleless()) {
        let g = ln_gamma(w).unwrap();
        let h = ln_gamma(w.conj()).unwrap();
        prop_assert_eq!(g.log_modulus, h.log_modulus);
        prop_assert!(principal_angle(g.argument + h.argument).abs() <= 1e-15);
    }

    #[test]
    fn gamma_functional_equation(re in 0.0..20.0f64, im in -20.0..20.0f64) {
        prop_assume!(re > 1e-6 || im.abs() > 1e-6);
        let w = Complex64::new(re, im);
        let d = ln_gamma_complex(w + 1.0).unwrap() - ln_gamma_complex(w).unwrap() - w.ln();
        prop_assert!((d.exp() - 1.0).norm() <= 1e-12, "w = {w}, d = {d}");
    }

    #[test]
    fn gamma_reflection_on_imaginary_axis(x in 0.05..25.0f64) {
        let g = ln_gamma(Complex64::new(0.0, x)).unwrap();
        let t = std::f64::consts::PI * x;
        let ln_sinh = t + (-0.5 * (-2.0 * t).exp_m1()).ln();
        let d = 2.0 * g.log_modulus + x.ln() + ln_sinh - std::f64::consts::PI.ln();
        prop_assert!(d.exp_m1().abs() <= 1e-12, "x = {x}: {d}");
    }

    #[test]
    fn pochhammer_step(re in -10.0..10.0f64, im in -10.0..10.0f64, n in 0usize..30) {
        let x = Complex64::new(re, im);
        prop_assert_eq!(pochhammer(x, n + 1), pochhammer(x, n) * (x + n as f64));
    }

    #[test]
    fn recursion_matches_hypergeometric(
        mu in select(vec![0.6, 1.0, 3.0, 4.0]),
        nu in select(vec![0.6, 1.0, 3.0, 4.0]),
        a in select(vec![-2.5, 0.0, 2.0]),
        b in select(vec![-2.5, 0.0, 2.0]),
        z in -5.0..5.0f64,
    ) {
        let p = ContinuousHahnParams::new(mu, nu, a, b);
        let rec = cont_hahn_recursion(&p, z, 21).unwrap();
        for n in 0..=20 {
            let local = rec[n].abs().max(rec[n + 1].abs()).max(if n > 0 { rec[n - 1].abs() } else { 0.0 });
            let h = cont_hahn_hypergeometric(&p, z, n).unwrap();
            prop_assert!((rec[n] - h).abs() <= 1e-8 * local, "n = {n}: {} vs {h}", rec[n]);
        }
    }

    #[test]
    fn parity_about_minus_a(mu in 0.3..5.0f64, a in -3.0..3.0f64, t in -6.0..6.0f64) {
        let p = ContinuousHahnParams::new(mu, mu, a, -a);
        let plus = cont_hahn_recursion(&p, -a + t, 15).unwrap();
        let minus = cont_hahn_recursion(&p, -a - t, 15).unwrap();
        for n in 0..=15 {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            prop_assert!((minus[n] - sign * plus[n]).abs() <= 1e-11 * plus[n].abs().max(1.0));
        }
    }

    #[test]
    fn hahn_finite_orthogonality(size in 1usize..16, alpha in -0.9..5.0f64, beta in -0.9..5.0f64) {
        let (orth, dual) = hahn_orthogonality_error(&HahnParams::new(size, alpha, beta)).unwrap();
        prop_assert!(orth <= 1e-10, "orthogonality {orth}");
        prop_assert!(dual <= 1e-8, "dual {dual}");
    }

    #[test]
    fn hahn_direct_sum_matches_recursion(size in 1usize..10, alpha in -0.5..4.0f64, beta in -0.5..4.0f64) {
        let h = HahnParams::new(size, alpha, beta);
        for k in 0..=size {
            let rec = hahn_recursion(&h, k, size).unwrap();
            for n in 0..=size {
                let d = hahn_eval(&h, n, k).unwrap();
                prop_assert!((d - rec[n]).abs() <= 1e-9 * rec[n].abs().max(1.0));
            }
        }
    }

    #[test]
    fn hahn_maps_round_trip(size in 1usize..30, alpha in -0.9..8.0f64, beta in -0.9..8.0f64) {
        let h = HahnParams::new(size, alpha, beta);
        let a = HahnParams::from_negative_mu_image(h.negative_mu_image()).unwrap();
        let b = HahnParams::from_positive_mu_image(h.positive_mu_image()).unwrap();
        for back in [a, b] {
            prop_assert_eq!(back.size, size);
            prop_assert!((back.alpha - alpha).abs() <= 1e-12 * alpha.abs().max(1.0));
            prop_assert!((back.beta - beta).abs() <= 1e-12 * beta.abs().max(1.0));
        }
    }

    #[test]
    fn example1_bound_count(mu in -20.0..-0.01f64) {
        let s = example1_spectrum(&ExampleOneParams::new(mu, 0.0, 1.0).unwrap());
        prop_assert_eq!(s.len(), 1 + (-mu).floor() as usize);
        prop_assert!(s.iter().all(|e| e.kind == StateKind::Bound));
    }

    #[test]
    fn spectrum_branches_are_conjugate(mu in -12.0..-0.01f64, nu in 0.5..4.0f64, a in -5.0..5.0f64, b in -5.0..5.0f64) {
        let pts = general_spectrum_points(&ContinuousHahnParams::new(mu, nu, a, b));
        for pair in pts.chunks(2) {
            prop_assert_eq!(pair[0].branch, Branch::Plus);
            prop_assert_eq!(pair[1].branch, Branch::Minus);
            prop_assert_eq!(pair[0].z, pair[1].z.conj());
        }
    }

    #[test]
    fn example3_chains_are_straight(gamma in -6.0..-0.2f64, a in -9.0..-1.0f64) {
        let p = ExampleThreeParams::new(gamma, a, 1.0, 1.0).unwrap();
        let s = example3_spectrum(&p);
        prop_assume!(s.len() >= 2);
        for w in s.windows(2) {
            let d = w[1].energy - w[0].energy;
            prop_assert!((d.im / d.re + 1.0 / gamma).abs() <= 1e-12 * (1.0 / gamma).abs().max(1.0));
        }
    }

    #[test]
    fn wave_equation_identity(
        mu in 0.3..5.0f64, nu in 0.3..5.0f64, a in -3.0..3.0f64, b in -3.0..3.0f64,
        lambda in 0.5..3.0f64, z in -6.0..6.0f64,
    ) {
        let p = ContinuousHahnParams::new(mu, nu, a, b);
        let h = build_h(&p, lambda, 30).unwrap();
        prop_assert!(wave_equation_residual(&h, &p, lambda, z).unwrap() <= 1e-9);
    }

    #[test]
    fn hamiltonian_storage_is_symmetric(mu in 0.3..5.0f64, nu in 0.3..5.0f64, a in -3.0..3.0f64, b in -3.0..3.0f64) {
        let h = build_h(&ContinuousHahnParams::new(mu, nu, a, b), 1.0, 8).unwrap();
        for i in 0..8 {
            for j in 0..8 {
                prop_assert_eq!(h.get(i, j), h.get(j, i));
                if i.abs_diff(j) >= 2 {
                    prop_assert_eq!(h.get(i, j), 0.0);
                }
            }
        }
    }

    #[test]
    fn truncation_does_not_change_reconstruction(
        mu in 0.5..5.0f64, nu in 0.5..5.0f64, a in -3.0..3.0f64, b in -3.0..3.0f64, beta in 0.5..4.0f64,
    ) {
        let spec = BasisSpec::laguerre_exp(beta, 1.0).unwrap();
        let h = build_h(&ContinuousHahnParams::new(mu, nu, a, b), 1.0, 20).unwrap();
        let vt = potential_matrix(&h, &build_h0_laguerre_1d(beta, 1.0, 20).unwrap()).unwrap();
        let grid = default_grid(&spec, 60);
        let short = reconstruct_potential(&vt, &spec, 2, &grid).unwrap();
        let long = reconstruct_potential(&vt, &spec, 20, &grid).unwrap();
        for (s, l) in short.v_tilde.iter().zip(&long.v_tilde) {
            prop_assert!((s - l).abs() <= 1e-9);
        }
        prop_assert!(long.residual <= 1e-6);
    }

    #[test]
    fn linear_fit_recovers_lines(v0 in -50.0..50.0f64, v1 in -50.0..50.0f64) {
        prop_assume!(v1.abs() > 1e-3);
        let ys: Vec<f64> = (0..40).map(|i| -1.0 + 0.05 * i as f64).collect();
        let vs: Vec<f64> = ys.iter().map(|y| v0 + v1 * y).collect();
        let fit = linear_fit_in_y(&ys, &vs).unwrap();
        prop_assert!((fit.v0 - v0).abs() <= 1e-10 * v0.abs().max(1.0));
        prop_assert!((fit.v1 - v1).abs() <= 1e-10 * v1.abs().max(1.0));
        prop_assert!(fit.residual <= 1e-12);
    }

    #[test]
    fn synthesis_is_linear(c in prop::collection::vec(-2.0..2.0f64, 6), d in prop::collection::vec(-2.0..2.0f64, 6)) {
        let spec = BasisSpec::jacobi_trig(1.5, 3.5, 2.0).unwrap();
        let grid = [-0.9, -0.3, 0.0, 0.4, 0.95];
        let sum: Vec<f64> = c.iter().zip(&d).map(|(x, y)| x + y).collect();
        let a = synthesize(&spec, &c, 1.0, &grid).unwrap();
        let b = synthesize(&spec, &d, 1.0, &grid).unwrap();
        let s = synthesize(&spec, &sum, 1.0, &grid).unwrap();
        for i in 0..grid.len() {
            prop_assert!((a.psi[i] + b.psi[i] - s.psi[i]).abs() <= 1e-13 * (a.psi[i].abs() + b.psi[i].abs()).max(1.0));
        }
    }

    #[test]
    fn scattering_states_are_real_and_finite(z in -4.0..4.0f64) {
        let p = ContinuousHahnParams::new(3.0, 4.0, 2.5, -2.5);
        let spec = BasisSpec::laguerre_exp(2.7, 1.0).unwrap();
        let s = scattering_wavefunction(&p, &spec, z, &default_grid(&spec, 30), 40).unwrap();
        prop_assert!(s.psi.iter().all(|v| v.is_finite()));
        prop_assert!(s.tail_estimate.is_finite());
    }
}

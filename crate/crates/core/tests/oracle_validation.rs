//! Closed forms checked against the integrated amplitude equations.

use std::f64::consts::PI;

use twolevel::dynamics::{p1, p2};
use twolevel::oracle::{
    compare_traces, integrate_bichromatic, integrate_rwa_monochromatic, run_suite, uniform_times,
    CaseCheck, Method, OdeConfig, Trace, ValidationSuite,
};

fn p1_error(omega: f64, detuning: f64, t_end: f64, n: usize, cfg: &OdeConfig) -> f64 {
    let times = uniform_times(t_end, n).unwrap();
    let numeric = integrate_rwa_monochromatic(omega, detuning, &times, cfg).unwrap();
    let exact = Trace::try_sample(&times, |t| p1(omega, detuning, t)).unwrap();
    compare_traces(&exact, &numeric.population).unwrap().max_abs_error
}

#[test]
fn rwa_matrix_agrees_with_closed_form() {
    let report = run_suite(ValidationSuite::Rwa, &OdeConfig::default(), None).unwrap();
    assert_eq!(report.cases.len(), 16);
    for c in &report.cases {
        assert!(c.max_abs_error <= 1e-6, "{c:?}");
        assert!(c.detuning / c.omega_rabi <= 8.0);
    }
    assert!(report.passed);
}

#[test]
fn p1_versus_integration_at_detuning_three() {
    let err = p1_error(1.0, 3.0, 30.0, 1000, &OdeConfig::default());
    assert!(err <= 1e-6, "{err}");
}

#[test]
fn norm_drift_over_one_hundred_over_omega() {
    let cfg = OdeConfig::default();
    let times = uniform_times(100.0, 1000).unwrap();
    for &(omega, detuning) in &[(1.0, 0.0), (1.0, 0.5)] {
        let tr = integrate_rwa_monochromatic(omega, detuning, &times, &cfg).unwrap();
        assert!(tr.max_norm_drift() <= 1e-9, "{}", tr.max_norm_drift());
    }
    let tr = integrate_bichromatic(1.0, 1.0, &times, &cfg).unwrap();
    assert!(tr.max_norm_drift() <= 1e-9, "{}", tr.max_norm_drift());
}

fn drift_over_hundred_rabi_periods(omega: f64, detuning: f64, cfg: &OdeConfig) -> f64 {
    // Population period at resonance is π/Ω.
    let times = uniform_times(100.0 * PI / omega, 2000).unwrap();
    integrate_rwa_monochromatic(omega, detuning, &times, cfg)
        .unwrap()
        .max_norm_drift()
}

#[test]
fn eighth_order_method_holds_unitarity_over_one_hundred_rabi_periods() {
    let cfg = OdeConfig {
        method: Method::DormandPrince853,
        ..OdeConfig::default()
    };
    for &(omega, detuning) in &[(1.0, 0.0), (1.0, 2.0), (1e9, 3e9), (1.0, 8.0)] {
        let drift = drift_over_hundred_rabi_periods(omega, detuning, &cfg);
        assert!(drift <= 10.0 * cfg.rel_tol, "Ω={omega} Δω={detuning}: {drift:e}");
    }
}

#[test]
fn fifth_order_drift_grows_linearly_but_stays_bounded() {
    // The default pair keeps global error close to rel_tol per unit of
    // 20/Ω, so over 100 Rabi periods the drift exceeds 10×rel_tol; the
    // measured excess is pinned here so regressions are visible.
    let cfg = OdeConfig::default();
    for &(omega, detuning) in &[(1.0, 0.0), (1.0, 2.0), (1e9, 3e9), (1.0, 8.0)] {
        let drift = drift_over_hundred_rabi_periods(omega, detuning, &cfg);
        assert!(drift <= 200.0 * cfg.rel_tol, "Ω={omega} Δω={detuning}: {drift:e}");
    }
}

#[test]
fn tighter_tolerance_never_increases_error() {
    let mut errors = Vec::new();
    let mut tol = 1e-6;
    while tol >= 1e-11 {
        let cfg = OdeConfig::with_tolerances(tol, tol * 1e-2).unwrap();
        errors.push(p1_error(1.0, 3.0, 20.0, 1000, &cfg));
        tol /= 2.0;
    }
    for w in errors.windows(2) {
        assert!(w[1] <= w[0], "{errors:?}");
    }
    assert!(errors.last().unwrap() < &(errors[0] * 1e-3));
}

#[test]
fn error_is_stable_under_output_refinement() {
    for cfg in [
        OdeConfig::default(),
        OdeConfig::with_tolerances(1e-7, 1e-9).unwrap(),
    ] {
        let coarse = p1_error(1.0, 3.0, 20.0, 1000, &cfg);
        let fine = p1_error(1.0, 3.0, 20.0, 1999, &cfg);
        assert!(((fine - coarse) / coarse).abs() <= 0.1, "{coarse} {fine}");
    }
}

#[test]
fn loosened_tolerance_fails_the_bar() {
    let cfg = OdeConfig::with_tolerances(1e-3, 1e-3).unwrap();
    let report = run_suite(ValidationSuite::Rwa, &cfg, None).unwrap();
    assert!(!report.passed);
    assert!(report.worst_max_abs_error > 1e-6);
}

#[test]
fn bichromatic_zeros_and_validity_map() {
    let cfg = OdeConfig::default();
    let zeros: Vec<f64> = (0..=10).map(|k| k as f64 * PI).collect();
    let tr = integrate_bichromatic(1.0, 1.0, &zeros, &cfg).unwrap();
    for (&t, &v) in zeros.iter().zip(&tr.population.values) {
        assert!(v <= 1e-6, "t={t}: {v}");
        assert!(p2(1.0, 1.0, t).unwrap() <= 1e-6);
    }

    // The carrier-frame model with a cos(Δω t) coupling envelope is solved
    // exactly by the closed form, so the map reports integrator error only,
    // including at Ω/Δω = 5.
    let report = run_suite(ValidationSuite::Bichromatic, &cfg, None).unwrap();
    assert!(report.cases.iter().any(|c| (c.omega_rabi / c.detuning - 5.0).abs() < 1e-12));
    for c in &report.cases {
        assert!(c.max_abs_error.is_finite());
        assert!(c.max_abs_error <= 1e-6, "{c:?}");
    }
}

#[test]
fn damped_suite_checks_decay_and_properties() {
    let report = run_suite(ValidationSuite::Damped, &OdeConfig::default(), None).unwrap();
    assert!(report.passed, "{report:?}");
    assert!(report.cases.iter().any(|c| c.check == CaseCheck::Properties));
    assert!(report.cases.iter().any(|c| c.check == CaseCheck::ClosedForm));
}

#[test]
fn suite_reports_are_deterministic() {
    let a = run_suite(ValidationSuite::Rwa, &OdeConfig::default(), None).unwrap();
    let b = run_suite(ValidationSuite::Rwa, &OdeConfig::default(), None).unwrap();
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
}

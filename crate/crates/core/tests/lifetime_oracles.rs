//! Quadrature and search oracles for the lifetime densities.

use twolevel::lifetime::{g1, g2, g_joint, g_joint_argmax_t_l};

/// Adaptive Simpson quadrature, independent of anything in the crate.
fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        ((b - a) / 6.0 * (fa + 4.0 * fm + fb), m, fm)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        whole: f64,
        m: f64,
        fm: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let (left, lm, flm) = simpson(f, a, fa, m, fm);
        let (right, rm, frm) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        recurse(f, a, fa, m, fm, left, lm, flm, 0.5 * tol, depth - 1)
            + recurse(f, m, fm, b, fb, right, rm, frm, 0.5 * tol, depth - 1)
    }
    let (fa, fb) = (f(a), f(b));
    let (whole, m, fm) = simpson(f, a, fa, b, fb);
    recurse(f, a, fa, b, fb, whole, m, fm, tol, 50)
}

fn golden_section_max<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, iters: usize) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    for _ in 0..iters {
        if f(c) > f(d) {
            b = d;
        } else {
            a = c;
        }
        c = b - r * (b - a);
        d = a + r * (b - a);
    }
    0.5 * (a + b)
}

#[test]
fn densities_normalize_to_one() {
    for rate in [1.0, 1.0 / 27.1e-9, 6.1e6, 1e-3] {
        let upper = 40.0 / rate;
        // The tail beyond 40/γ integrates to exp(−40).
        let tail = (-40f64).exp();
        let i1 = adaptive_simpson(&|t| g1(rate, t).unwrap(), 0.0, upper, 1e-12) + tail;
        let i2 = adaptive_simpson(&|t| g2(rate, t).unwrap(), 0.0, upper, 1e-12) + tail;
        assert!((i1 - 1.0).abs() <= 1e-9, "g1 rate {rate}: {i1}");
        assert!((i2 - 1.0).abs() <= 1e-9, "g2 rate {rate}: {i2}");
    }
}

#[test]
fn joint_density_is_product_of_marginals() {
    for &(t_l, t_s) in &[(1.0, 1.0), (27.1e-9, 27.1e-9), (3e-9, 27.1e-9), (2.0, 0.3), (1e-3, 5e-3)] {
        let prod = g1(1.0 / t_s, t_l).unwrap() * g2(1.0 / t_l, t_s).unwrap();
        let g = g_joint(t_l, t_s).unwrap();
        assert!(((g - prod) / prod).abs() <= 1e-12, "{t_l} {t_s}");
    }
}

#[test]
fn g2_peaks_at_inverse_emission_time() {
    for t_s in [27.1e-9, 1.0, 4.2] {
        let best = golden_section_max(|gamma| g2(gamma, t_s).unwrap(), 0.01 / t_s, 10.0 / t_s, 200);
        assert!((best * t_s - 1.0).abs() < 1e-6, "t_s {t_s}: {best}");
    }
}

#[test]
fn joint_argmax_against_golden_section() {
    for t_s in [27.1e-9, 1.0] {
        let best = golden_section_max(|t| g_joint(t, t_s).unwrap().ln(), 1e-3 * t_s, 10.0 * t_s, 200);
        let closed = g_joint_argmax_t_l(t_s).unwrap();
        assert!(((best - closed) / closed).abs() < 1e-6);
    }
}

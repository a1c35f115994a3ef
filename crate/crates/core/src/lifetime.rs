//! Spontaneous-emission and lifetime statistics.
//!
//! Two exponential densities link the emission time t_S and the upper-level
//! lifetime t_L: `g1` fades at the known rate γ_S = 1/t_S, `g2` empties the
//! level at the rate γ_L = 1/t_L. Their product is `g_joint`. The ratio
//! X = t_S/t_L is fixed by the transcendental equation X = exp(X − 2), whose
//! larger root π* ≈ 3.1462 sets the derived damping constants.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{ensure_non_negative, ensure_positive, Error, Result};

/// Residual bound every returned root must meet.
pub const ROOT_RESIDUAL_BOUND: f64 = 1e-12;

/// γ_S·exp(−γ_S·t_L).
pub fn g1(gamma_s: f64, t_l: f64) -> Result<f64> {
    ensure_positive("emission rate", gamma_s)?;
    ensure_non_negative("lifetime", t_l)?;
    Ok(gamma_s * (-gamma_s * t_l).exp())
}

/// γ_L·exp(−γ_L·t_S).
pub fn g2(gamma_l: f64, t_s: f64) -> Result<f64> {
    ensure_positive("lifetime damping rate", gamma_l)?;
    ensure_non_negative("emission time", t_s)?;
    Ok(gamma_l * (-gamma_l * t_s).exp())
}

/// G = G1·G2 = (1/(t_L·t_S))·exp(−(t_L² + t_S²)/(t_L·t_S)).
pub fn g_joint(t_l: f64, t_s: f64) -> Result<f64> {
    ensure_positive("lifetime", t_l)?;
    ensure_positive("emission time", t_s)?;
    let prod = t_l * t_s;
    Ok((-(t_l / t_s + t_s / t_l)).exp() / prod)
}

/// The t_L maximizing `g_joint` at fixed t_S: t_L = t_S·(√5 − 1)/2.
///
/// Root of ∂/∂t_L log G = −1/t_L − 1/t_S + t_S/t_L² = 0.
pub fn g_joint_argmax_t_l(t_s: f64) -> Result<f64> {
    ensure_positive("emission time", t_s)?;
    Ok(t_s * (5f64.sqrt() - 1.0) * 0.5)
}

/// Unit-peak Lorentzian `(w/2)² / (Δω² + (w/2)²)`.
pub fn lorentzian_profile(detuning: f64, fwhm: f64) -> Result<f64> {
    ensure_positive("FWHM", fwhm)?;
    crate::error::ensure_finite("detuning", detuning)?;
    let hw = 0.5 * fwhm;
    Ok(hw * hw / (detuning * detuning + hw * hw))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FixedPointRoots {
    /// Root in (0, 1).
    pub x_small: f64,
    /// Root above 1, π*.
    pub pi_star: f64,
    pub residual_small: f64,
    pub residual_large: f64,
}

fn fixed_point_fn(x: f64) -> f64 {
    x - (x - 2.0).exp()
}

fn fixed_point_deriv(x: f64) -> f64 {
    1.0 - (x - 2.0).exp()
}

fn bisect_then_polish(mut lo: f64, mut hi: f64, tolerance: f64) -> Result<f64> {
    let mut f_lo = fixed_point_fn(lo);
    if f_lo.signum() == fixed_point_fn(hi).signum() {
        return Err(Error::domain(format!("no sign change on [{lo}, {hi}]")));
    }
    // Bisect until the bracket is narrow enough for Newton to converge
    // quadratically, then polish.
    while hi - lo > 1e-6 {
        let mid = 0.5 * (lo + hi);
        let f_mid = fixed_point_fn(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..50 {
        let step = fixed_point_fn(x) / fixed_point_deriv(x);
        let next = (x - step).clamp(lo, hi);
        if next == x {
            break;
        }
        x = next;
        if step.abs() <= f64::EPSILON * x.abs() && fixed_point_fn(x).abs() <= tolerance {
            break;
        }
    }
    Ok(x)
}

/// Both positive roots of x = exp(x − 2).
///
/// Bisection on [1e-6, 1] and [2, 5], then Newton polishing.
pub fn solve_fixed_point(tolerance: f64) -> Result<FixedPointRoots> {
    if !(tolerance > 0.0 && tolerance <= 1e-6) {
        return Err(Error::domain(format!(
            "tolerance must lie in (0, 1e-6], got {tolerance}"
        )));
    }
    let x_small = bisect_then_polish(1e-6, 1.0, tolerance)?;
    let pi_star = bisect_then_polish(2.0, 5.0, tolerance)?;
    let roots = FixedPointRoots {
        x_small,
        pi_star,
        residual_small: fixed_point_fn(x_small).abs(),
        residual_large: fixed_point_fn(pi_star).abs(),
    };
    if roots.residual_small > tolerance || roots.residual_large > tolerance {
        return Err(Error::domain(format!(
            "root residuals {:e}, {:e} exceed tolerance {tolerance:e}",
            roots.residual_small, roots.residual_large
        )));
    }
    Ok(roots)
}

/// Constants computed with the literal π instead of π*.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LiteralPiConstants {
    pub gamma_l: f64,
    pub gamma_lg: f64,
    pub ratio_19: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LifetimeModel {
    /// Spontaneous emission time, s.
    pub t_s: f64,
    /// 1/t_S, 1/s.
    pub gamma_s: f64,
    pub pi_star: f64,
    pub x_small: f64,
    /// π*/(19·t_S), 1/s.
    pub gamma_l: f64,
    /// π*/(20·t_S), 1/s.
    pub gamma_lg: f64,
    /// 19/π*, the ratio γ_S/γ_L.
    pub ratio_19: f64,
    /// t_S/π*, s.
    pub t_l1: f64,
    /// t_S·20/π*, s.
    pub t_l2: f64,
    /// 20/π*; reported next to `inv_x_small` because the two candidate
    /// factors for t_L2 differ (6.357 vs 6.305).
    pub ratio_20: f64,
    /// 1/x_small.
    pub inv_x_small: f64,
    pub residual_small: f64,
    pub residual_large: f64,
    pub literal_pi: LiteralPiConstants,
}

/// Tolerance used by [`lifetime_constants`] when solving for π*.
pub const DEFAULT_ROOT_TOLERANCE: f64 = 1e-13;

pub fn lifetime_constants(t_s: f64) -> Result<LifetimeModel> {
    ensure_positive("emission time", t_s)?;
    let roots = solve_fixed_point(DEFAULT_ROOT_TOLERANCE)?;
    let pi_star = roots.pi_star;
    Ok(LifetimeModel {
        t_s,
        gamma_s: 1.0 / t_s,
        pi_star,
        x_small: roots.x_small,
        gamma_l: pi_star / (19.0 * t_s),
        gamma_lg: pi_star / (20.0 * t_s),
        ratio_19: 19.0 / pi_star,
        t_l1: t_s / pi_star,
        t_l2: t_s * (20.0 / pi_star),
        ratio_20: 20.0 / pi_star,
        inv_x_small: 1.0 / roots.x_small,
        residual_small: roots.residual_small,
        residual_large: roots.residual_large,
        literal_pi: LiteralPiConstants {
            gamma_l: PI / (19.0 * t_s),
            gamma_lg: PI / (20.0 * t_s),
            ratio_19: 19.0 / PI,
        },
    })
}

impl LifetimeModel {
    /// Lorentzian FWHM associated with the lifetime damping γ_L, rad/s.
    pub fn line_fwhm(&self) -> f64 {
        self.gamma_l
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn g1_examples() {
        assert_eq!(g1(1.0, 0.0).unwrap(), 1.0);
        assert!((g1(1.0, 2.0).unwrap() - (-2f64).exp()).abs() < 1e-16);
        let t_s = 27.1e-9;
        assert!(rel(g1(1.0 / t_s, t_s).unwrap(), 1.0 / (t_s * E)) < 1e-14);
        assert!(g1(0.0, 1.0).is_err());
        assert!(g1(-1.0, 1.0).is_err());
    }

    #[test]
    fn g2_examples() {
        assert!((g2(1.0, 1.0).unwrap() - (-1f64).exp()).abs() < 1e-16);
        assert_eq!(g2(2.0, 0.0).unwrap(), 2.0);
        assert!(g2(0.0, 1.0).is_err());
    }

    #[test]
    fn g_joint_examples() {
        assert!((g_joint(1.0, 1.0).unwrap() - (-2f64).exp()).abs() < 1e-16);
        assert_eq!(g_joint(2.0, 0.3).unwrap(), g_joint(0.3, 2.0).unwrap());
        // e⁻²/(27.1 ns)², mpmath at 30 digits.
        assert!(rel(g_joint(27.1e-9, 27.1e-9).unwrap(), 1.842_775_605_405_872_6e14) < 1e-13);
        assert!(g_joint(0.0, 1.0).is_err());
        assert!(g_joint(1.0, -1.0).is_err());
    }

    #[test]
    fn fixed_point_roots() {
        let r = solve_fixed_point(1e-12).unwrap();
        // mpmath findroot: 3.14619322062058258..., 0.15859433956303936...
        assert!((r.pi_star - 3.146_193_220_620_582_6).abs() < 1e-14);
        assert!((r.x_small - 0.158_594_339_563_039_36).abs() < 1e-14);
        assert!(r.residual_small <= 1e-12 && r.residual_large <= 1e-12);
        let excess = r.pi_star - PI;
        assert!((0.004..=0.005).contains(&excess));
    }

    #[test]
    fn fixed_point_rejects_bad_tolerance() {
        assert!(solve_fixed_point(0.0).is_err());
        assert!(solve_fixed_point(1e-3).is_err());
        assert!(solve_fixed_point(f64::NAN).is_err());
    }

    #[test]
    fn fixed_point_brackets_change_sign() {
        assert!(fixed_point_fn(0.1) * fixed_point_fn(0.2) < 0.0);
        assert!(fixed_point_fn(3.1) * fixed_point_fn(3.2) < 0.0);
    }

    #[test]
    fn lithium_lifetime_constants() {
        let m = lifetime_constants(27.1e-9).unwrap();
        assert!(rel(m.gamma_lg, 5.796e6) < 0.002, "{}", m.gamma_lg);
        assert!(rel(m.gamma_l, 6.101e6) < 0.002, "{}", m.gamma_l);
        assert!(rel(m.gamma_s, 3.69e7) < 0.005);
        assert!(m.gamma_lg < m.gamma_l && m.gamma_l < m.gamma_s);
        assert!(0.0 < m.x_small && m.x_small < 1.0 && 1.0 < m.pi_star);
        assert!((m.literal_pi.ratio_19 - 6.048).abs() < 5e-4);
        assert!((m.ratio_19 - 6.039).abs() < 5e-4);
        assert!(rel(m.t_l1 * m.pi_star, m.t_s) < 1e-15);
        assert!((m.ratio_20 - 6.357).abs() < 1e-3);
        assert!((m.inv_x_small - 6.305).abs() < 1e-3);
        assert!(rel(m.line_fwhm(), 6.1e6) < 0.01);
        assert!(lifetime_constants(0.0).is_err());
    }

    #[test]
    fn lorentzian_examples() {
        assert_eq!(lorentzian_profile(0.0, 3.0).unwrap(), 1.0);
        assert_eq!(lorentzian_profile(1.5, 3.0).unwrap(), 0.5);
        assert_eq!(lorentzian_profile(-1.5, 3.0).unwrap(), 0.5);
        assert!(lorentzian_profile(1.0, 0.0).is_err());
    }

    #[test]
    fn joint_argmax_matches_dense_grid() {
        let t_s = 27.1e-9;
        let closed = g_joint_argmax_t_l(t_s).unwrap();
        let n = 200_000;
        let (mut best_t, mut best_g) = (0.0, f64::MIN);
        for i in 1..=n {
            let t = 3.0 * t_s * i as f64 / n as f64;
            let g = g_joint(t, t_s).unwrap();
            if g > best_g {
                best_g = g;
                best_t = t;
            }
        }
        assert!((best_t - closed).abs() <= 3.0 * t_s / n as f64);
        // Stationarity of the log-density at the closed form.
        let d = -1.0 / closed - 1.0 / t_s + t_s / (closed * closed);
        assert!(d.abs() * t_s < 1e-12);
    }
}

//! Closed-form upper-level populations for the two drive configurations.
//!
//! `p1` is single-frequency Rabi flopping with generalized frequency
//! √(4Ω²+Δω²). `p2` is the symmetric bichromatic law
//! sin²((Ω/Δω)·sin(Δω·τ)). Both also exist in the dimensionless
//! coordinates X = τΩ, Y = Δω/Ω where Ω cancels.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, ensure_non_negative, Error, Result};

/// Below both `|Δω·τ|` and `|Δω/Ω|` of this size `p2` uses its resonant limit.
pub const RESONANT_LIMIT_THRESHOLD: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DriveKind {
    Monochromatic,
    /// Two components at ω₀ − Δω and ω₀ + Δω with equal amplitude.
    BichromaticSymmetric,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DriveSpec {
    pub kind: DriveKind,
    /// Ω, rad/s.
    pub omega_rabi: f64,
    /// Δω, rad/s. For the bichromatic drive both components sit this far
    /// from the carrier.
    pub detuning: f64,
    /// ω₀, rad/s. Only needed to synthesize the lab-frame waveform.
    pub carrier: Option<f64>,
}

impl DriveSpec {
    pub fn monochromatic(omega_rabi: f64, detuning: f64) -> Result<Self> {
        Self::new(DriveKind::Monochromatic, omega_rabi, detuning)
    }

    pub fn bichromatic(omega_rabi: f64, detuning: f64) -> Result<Self> {
        Self::new(DriveKind::BichromaticSymmetric, omega_rabi, detuning)
    }

    fn new(kind: DriveKind, omega_rabi: f64, detuning: f64) -> Result<Self> {
        ensure_non_negative("Rabi frequency", omega_rabi)?;
        ensure_finite("detuning", detuning)?;
        Ok(DriveSpec {
            kind,
            omega_rabi,
            detuning,
            carrier: None,
        })
    }

    pub fn with_carrier(mut self, carrier: f64) -> Result<Self> {
        ensure_non_negative("carrier frequency", carrier)?;
        self.carrier = Some(carrier);
        Ok(self)
    }

    /// Lab-frame angular frequencies of the drive components.
    ///
    /// Monochromatic drives return `(ω₀ + Δω, None)`; the symmetric pair is
    /// `(ω₀ − Δω, Some(ω₀ + Δω))` so that ω₀ − ω₁ = ω₂ − ω₀ = Δω.
    pub fn component_frequencies(&self) -> Result<(f64, Option<f64>)> {
        let carrier = self.carrier.ok_or_else(|| {
            Error::Config("drive has no carrier frequency; waveform synthesis needs one".into())
        })?;
        Ok(match self.kind {
            DriveKind::Monochromatic => (carrier + self.detuning, None),
            DriveKind::BichromaticSymmetric => {
                (carrier - self.detuning, Some(carrier + self.detuning))
            }
        })
    }

    /// Closed-form upper-level population at time `tau` for this drive.
    pub fn probability(&self, tau: f64) -> Result<f64> {
        match self.kind {
            DriveKind::Monochromatic => p1(self.omega_rabi, self.detuning, tau),
            DriveKind::BichromaticSymmetric => p2(self.omega_rabi, self.detuning, tau),
        }
    }
}

/// Scaled time and detuning, X = τΩ and Y = Δω/Ω.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DimensionlessPoint {
    pub x: f64,
    pub y: f64,
}

impl DimensionlessPoint {
    pub fn new(x: f64, y: f64) -> Self {
        DimensionlessPoint { x, y }
    }

    pub fn from_physical(omega_rabi: f64, detuning: f64, tau: f64) -> Result<Self> {
        crate::error::ensure_positive("Rabi frequency", omega_rabi)?;
        Ok(DimensionlessPoint {
            x: tau * omega_rabi,
            y: detuning / omega_rabi,
        })
    }
}

fn check_probability_inputs(omega_rabi: f64, detuning: f64, tau: f64) -> Result<()> {
    ensure_non_negative("Rabi frequency", omega_rabi)?;
    ensure_finite("detuning", detuning)?;
    ensure_non_negative("time", tau)?;
    Ok(())
}

/// Single-frequency population
/// `[4Ω²/(4Ω²+Δω²)]·sin²((τ/2)·√(4Ω²+Δω²))`.
///
/// With no drive at all (Ω = Δω = 0) the population stays at 0.
pub fn p1(omega_rabi: f64, detuning: f64, tau: f64) -> Result<f64> {
    check_probability_inputs(omega_rabi, detuning, tau)?;
    Ok(p1_unchecked(omega_rabi, detuning, tau))
}

#[inline]
pub(crate) fn p1_unchecked(omega_rabi: f64, detuning: f64, tau: f64) -> f64 {
    let four_omega_sq = 4.0 * omega_rabi * omega_rabi;
    let gen_sq = four_omega_sq + detuning * detuning;
    if gen_sq == 0.0 {
        return 0.0;
    }
    let s = (0.5 * tau * gen_sq.sqrt()).sin();
    (four_omega_sq / gen_sq) * s * s
}

/// The τ-independent prefactor of [`p1`], i.e. its supremum over time.
pub fn p1_envelope(omega_rabi: f64, detuning: f64) -> Result<f64> {
    ensure_non_negative("Rabi frequency", omega_rabi)?;
    ensure_finite("detuning", detuning)?;
    if omega_rabi == 0.0 && detuning == 0.0 {
        return Err(Error::domain(
            "envelope undefined when Rabi frequency and detuning are both zero",
        ));
    }
    let four_omega_sq = 4.0 * omega_rabi * omega_rabi;
    Ok(four_omega_sq / (four_omega_sq + detuning * detuning))
}

/// Bichromatic population `sin²((Ω/Δω)·sin(Δω·τ))`.
///
/// The removable singularity at Δω = 0 is replaced by the limit sin²(Ωτ)
/// once `|Δω·τ|` and `|Δω/Ω|` are both below [`RESONANT_LIMIT_THRESHOLD`].
pub fn p2(omega_rabi: f64, detuning: f64, tau: f64) -> Result<f64> {
    check_probability_inputs(omega_rabi, detuning, tau)?;
    Ok(p2_unchecked(omega_rabi, detuning, tau))
}

#[inline]
pub(crate) fn p2_unchecked(omega_rabi: f64, detuning: f64, tau: f64) -> f64 {
    let s = p2_argument(omega_rabi, detuning, tau).sin();
    s * s
}

/// The inner argument u(Δω) = (Ω/Δω)·sin(Δω·τ), with its resonant limit Ωτ.
#[inline]
pub(crate) fn p2_argument(omega_rabi: f64, detuning: f64, tau: f64) -> f64 {
    if in_resonant_limit(omega_rabi, detuning, tau) {
        omega_rabi * tau
    } else {
        (omega_rabi / detuning) * (detuning * tau).sin()
    }
}

#[inline]
fn in_resonant_limit(omega_rabi: f64, detuning: f64, tau: f64) -> bool {
    let ad = detuning.abs();
    ad == 0.0
        || (ad * tau < RESONANT_LIMIT_THRESHOLD && ad < RESONANT_LIMIT_THRESHOLD * omega_rabi)
}

fn check_point(pt: DimensionlessPoint) -> Result<()> {
    ensure_finite("X", pt.x)?;
    ensure_finite("Y", pt.y)?;
    Ok(())
}

/// `[4/(4+Y²)]·sin²((X/2)·√(4+Y²))`.
pub fn p1_dimensionless(pt: DimensionlessPoint) -> Result<f64> {
    check_point(pt)?;
    Ok(p1_dimensionless_unchecked(pt.x, pt.y))
}

#[inline]
pub(crate) fn p1_dimensionless_unchecked(x: f64, y: f64) -> f64 {
    let gen_sq = 4.0 + y * y;
    let s = (0.5 * x * gen_sq.sqrt()).sin();
    (4.0 / gen_sq) * s * s
}

/// `sin²(sin(XY)/Y)`, with limit sin²(X) near Y = 0.
pub fn p2_dimensionless(pt: DimensionlessPoint) -> Result<f64> {
    check_point(pt)?;
    Ok(p2_dimensionless_unchecked(pt.x, pt.y))
}

#[inline]
pub(crate) fn p2_dimensionless_unchecked(x: f64, y: f64) -> f64 {
    let ay = y.abs();
    let arg = if ay == 0.0
        || (ay < RESONANT_LIMIT_THRESHOLD && (x * y).abs() < RESONANT_LIMIT_THRESHOLD)
    {
        x
    } else {
        (x * y).sin() / y
    };
    let s = arg.sin();
    s * s
}

/// Instantaneous lab-frame field: E₀cos(ωt) for one component, or
/// E₀[cos(ω₁t) + cos(ω₂t)] for the symmetric pair.
pub fn field_waveform(spec: &DriveSpec, e0: f64, t: f64) -> Result<f64> {
    ensure_finite("field amplitude", e0)?;
    ensure_non_negative("time", t)?;
    let (w1, w2) = spec.component_frequencies()?;
    let mut e = (w1 * t).cos();
    if let Some(w2) = w2 {
        e += (w2 * t).cos();
    }
    Ok(e0 * e)
}

/// ∂p1/∂Δω at fixed Ω and τ.
pub(crate) fn p1_detuning_derivative(omega_rabi: f64, detuning: f64, tau: f64) -> f64 {
    let four_omega_sq = 4.0 * omega_rabi * omega_rabi;
    let gen_sq = four_omega_sq + detuning * detuning;
    if gen_sq == 0.0 || detuning == 0.0 {
        return 0.0;
    }
    let gen = gen_sq.sqrt();
    let half = 0.5 * tau * gen;
    let envelope = four_omega_sq / gen_sq;
    let d_envelope = -2.0 * four_omega_sq * detuning / (gen_sq * gen_sq);
    let s = half.sin();
    d_envelope * s * s + envelope * (2.0 * half).sin() * 0.5 * tau * detuning / gen
}

/// ∂p2/∂Δω at fixed Ω and τ, using a series for u'(Δω) near resonance.
pub(crate) fn p2_detuning_derivative(omega_rabi: f64, detuning: f64, tau: f64) -> f64 {
    let phase = detuning * tau;
    let du = if phase.abs() < 1e-3 {
        let t3 = tau * tau * tau;
        omega_rabi * (-detuning * t3 / 3.0 + detuning.powi(3) * t3 * tau * tau / 30.0)
    } else {
        omega_rabi * (tau * phase.cos() * detuning - phase.sin()) / (detuning * detuning)
    };
    let u = p2_argument(omega_rabi, detuning, tau);
    (2.0 * u).sin() * du
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn p1_examples() {
        assert!((p1(1.0, 0.0, FRAC_PI_2).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(p1(3.0, -2.0, 0.0).unwrap(), 0.0);
        let v = p1(1.0, 2.0, PI / (2.0 * 2f64.sqrt())).unwrap();
        assert!((v - 0.5).abs() < 1e-15);
        assert_eq!(p1(0.0, 0.0, 5.0).unwrap(), 0.0);
    }

    #[test]
    fn p1_rejects_bad_inputs() {
        assert!(p1(-1.0, 0.0, 1.0).is_err());
        assert!(p1(1.0, 0.0, -1.0).is_err());
        assert!(p1(1.0, f64::NAN, 1.0).is_err());
    }

    #[test]
    fn envelope_examples() {
        assert_eq!(p1_envelope(1.0, 0.0).unwrap(), 1.0);
        assert_eq!(p1_envelope(1.0, 2.0).unwrap(), 0.5);
        assert!((p1_envelope(1.0, 20.0).unwrap() - 0.009_900_990_099_009_9).abs() < 1e-15);
        assert!(p1_envelope(0.0, 0.0).is_err());
    }

    #[test]
    fn p2_examples() {
        assert!(p2(1.0, 1.0, PI).unwrap() < 1e-30);
        assert!((p2(1.0, 0.0, FRAC_PI_2).unwrap() - 1.0).abs() < 1e-15);
        assert!((p2(1.0, 1e-12, FRAC_PI_2).unwrap() - 1.0).abs() < 1e-15);
        // sin²(1), mpmath at 30 digits.
        assert!((p2(1.0, 1.0, FRAC_PI_2).unwrap() - 0.708_073_418_273_571_2).abs() < 1e-15);
        assert!(p2(1.0, f64::INFINITY, 1.0).is_err());
    }

    #[test]
    fn p2_zero_rabi_is_zero() {
        assert_eq!(p2(0.0, 0.0, 3.0).unwrap(), 0.0);
        assert_eq!(p2(0.0, 2.0, 3.0).unwrap(), 0.0);
    }

    #[test]
    fn dimensionless_examples() {
        let p = |x, y| p1_dimensionless(DimensionlessPoint::new(x, y)).unwrap();
        let q = |x, y| p2_dimensionless(DimensionlessPoint::new(x, y)).unwrap();
        assert!((p(FRAC_PI_2, 0.0) - 1.0).abs() < 1e-15);
        assert_eq!(p(0.0, 3.0), 0.0);
        // (1/2)·sin²(√2), mpmath.
        assert!((p(1.0, 2.0) - 0.487_840_782_031_461_86).abs() < 1e-15);
        assert!((p1(3.7e8, 2.0 * 3.7e8, 1.0 / 3.7e8).unwrap() - p(1.0, 2.0)).abs() < 1e-14);
        assert!(q(PI, 1.0) < 1e-30);
        assert!((q(FRAC_PI_2, 0.0) - 1.0).abs() < 1e-15);
        // sin²(2·sin 1), mpmath.
        assert!((q(2.0, 0.5) - 0.987_475_990_465_052_2).abs() < 1e-15);
        assert!(p1_dimensionless(DimensionlessPoint::new(f64::NAN, 0.0)).is_err());
    }

    #[test]
    fn waveform_examples() {
        let mono = DriveSpec::monochromatic(1.0, 0.0)
            .unwrap()
            .with_carrier(10.0)
            .unwrap();
        assert_eq!(field_waveform(&mono, 3.0, 0.0).unwrap(), 3.0);
        let bi = DriveSpec::bichromatic(1.0, 1.0)
            .unwrap()
            .with_carrier(10.0)
            .unwrap();
        assert_eq!(field_waveform(&bi, 3.0, 0.0).unwrap(), 6.0);
        assert!((field_waveform(&bi, 1.0, PI).unwrap() + 2.0).abs() < 1e-13);
        let (w1, w2) = bi.component_frequencies().unwrap();
        assert_eq!((w1, w2), (9.0, Some(11.0)));
        let no_carrier = DriveSpec::bichromatic(1.0, 1.0).unwrap();
        assert!(matches!(
            field_waveform(&no_carrier, 1.0, 0.0),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn drive_probability_dispatch() {
        let d = DriveSpec::bichromatic(1.0, 1.0).unwrap();
        assert_eq!(d.probability(0.7).unwrap(), p2(1.0, 1.0, 0.7).unwrap());
        let d = DriveSpec::monochromatic(1.0, 1.0).unwrap();
        assert_eq!(d.probability(0.7).unwrap(), p1(1.0, 1.0, 0.7).unwrap());
    }

    #[test]
    fn analytic_derivatives_match_finite_differences() {
        let h = 1e-6;
        for &(om, d, tau) in &[(1.0, 0.7, 3.0), (1.0, -2.3, 10.0), (2.0, 1e-4, 5.0), (0.5, 4.0, 1.5)] {
            let fd1 = (p1_unchecked(om, d + h, tau) - p1_unchecked(om, d - h, tau)) / (2.0 * h);
            assert!((fd1 - p1_detuning_derivative(om, d, tau)).abs() < 1e-6, "p1 {om} {d} {tau}");
            let fd2 = (p2_unchecked(om, d + h, tau) - p2_unchecked(om, d - h, tau)) / (2.0 * h);
            assert!((fd2 - p2_detuning_derivative(om, d, tau)).abs() < 1e-6, "p2 {om} {d} {tau}");
        }
    }
}

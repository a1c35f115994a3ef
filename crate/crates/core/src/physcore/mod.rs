//! Physical constants, atom and laser presets, and conversions between
//! field amplitude, intensity and Rabi frequency.

mod presets;
pub mod units;

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, ensure_non_negative, Error, Result};

pub use presets::{
    builtin_atoms, builtin_lasers, parse_presets, AtomPreset, LaserPreset, PresetRegistry,
};

/// CODATA 2018 exact / recommended values.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    /// Reduced Planck constant, J·s.
    pub hbar: f64,
    /// Vacuum permittivity, F/m.
    pub epsilon0: f64,
    /// Speed of light in vacuum, m/s.
    pub c0: f64,
}

pub const CONSTANTS: PhysicalConstants = PhysicalConstants {
    hbar: 1.054_571_817e-34,
    epsilon0: 8.854_187_812_8e-12,
    c0: 299_792_458.0,
};

/// One atomic unit of electric dipole moment (e·a₀) in C·m.
pub const ATOMIC_UNIT_DIPOLE: f64 = 8.478_35e-30;

/// Converts a dipole moment in atomic units to C·m.
pub fn dipole_from_atomic_units(au: f64) -> f64 {
    au * ATOMIC_UNIT_DIPOLE
}

/// Relation between the two Rabi numbers carried by [`RabiValue`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RabiConvention {
    /// `omega = π · omega_nu`: one absorption half of a full round trip.
    HalfRound,
}

/// A Rabi frequency in both conventions used by the toolkit.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RabiValue {
    /// Angular Rabi frequency Ω in rad/s, the value fed to the probability laws.
    pub omega: f64,
    /// d·E₀/ħ in 1/s.
    pub omega_nu: f64,
    pub convention: RabiConvention,
}

impl RabiValue {
    pub fn from_omega_nu(omega_nu: f64) -> Self {
        RabiValue {
            omega: std::f64::consts::PI * omega_nu,
            omega_nu,
            convention: RabiConvention::HalfRound,
        }
    }
}

/// Ω_ν = d·E₀/ħ and Ω = π·Ω_ν for a field amplitude in V/m.
pub fn rabi_from_field(preset: &AtomPreset, e0: f64) -> Result<RabiValue> {
    ensure_non_negative("field amplitude", e0)?;
    Ok(RabiValue::from_omega_nu(preset.dipole * e0 / CONSTANTS.hbar))
}

/// Cycle-averaged intensity ½ε₀c₀E₀² in W/m².
pub fn intensity_from_field(e0: f64) -> Result<f64> {
    ensure_finite("field amplitude", e0)?;
    Ok(0.5 * CONSTANTS.epsilon0 * CONSTANTS.c0 * e0 * e0)
}

/// Inverse of [`intensity_from_field`], returning the non-negative amplitude.
pub fn field_from_intensity(intensity: f64) -> Result<f64> {
    ensure_non_negative("intensity", intensity)?;
    Ok((2.0 * intensity / (CONSTANTS.epsilon0 * CONSTANTS.c0)).sqrt())
}

/// The constant K in Ω_ν = K·√I, derived from the dipole moment.
pub fn intensity_rabi_constant(preset: &AtomPreset) -> f64 {
    (preset.dipole / CONSTANTS.hbar) * (2.0 / (CONSTANTS.epsilon0 * CONSTANTS.c0)).sqrt()
}

pub fn rabi_from_intensity(preset: &AtomPreset, intensity: f64) -> Result<RabiValue> {
    ensure_non_negative("intensity", intensity)?;
    Ok(RabiValue::from_omega_nu(
        intensity_rabi_constant(preset) * intensity.sqrt(),
    ))
}

/// Radiative lifetime t_S = 3πħε₀c₀³ / (ω₀³ d²), in seconds.
pub fn spontaneous_emission_time(preset: &AtomPreset) -> Result<f64> {
    if preset.dipole == 0.0 {
        return Err(Error::domain(
            "dipole moment is zero: spontaneous emission time is infinite",
        ));
    }
    preset.validate()?;
    let PhysicalConstants { hbar, epsilon0, c0 } = CONSTANTS;
    let t_s = 3.0 * std::f64::consts::PI * hbar * epsilon0 * c0.powi(3)
        / (preset.omega0.powi(3) * preset.dipole * preset.dipole);
    Ok(t_s)
}

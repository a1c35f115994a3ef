//! Presentation-layer formatting.
//!
//! Everything inside the toolkit is SI with angular frequencies in rad/s.
//! The labels here reproduce the mixed display conventions found in the
//! atomic physics literature: "MHz" for a plain rate in 1e6/s, "MHz.rad"
//! and "GHz.rad" for angular frequencies scaled by 1e6 and 1e9.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DisplayUnit {
    /// Rate in 1e6 s⁻¹, labelled "MHz".
    MegaPerSecond,
    /// Angular frequency in 1e6 rad/s, labelled "MHz.rad".
    MegaRadPerSecond,
    /// Angular frequency in 1e9 rad/s, labelled "GHz.rad".
    GigaRadPerSecond,
    Nanoseconds,
    /// W/m² shown as mW/cm².
    MilliwattPerCm2,
    /// V/m shown as V/cm.
    VoltPerCm,
}

impl DisplayUnit {
    pub fn label(self) -> &'static str {
        match self {
            DisplayUnit::MegaPerSecond => "MHz",
            DisplayUnit::MegaRadPerSecond => "MHz.rad",
            DisplayUnit::GigaRadPerSecond => "GHz.rad",
            DisplayUnit::Nanoseconds => "ns",
            DisplayUnit::MilliwattPerCm2 => "mW/cm^2",
            DisplayUnit::VoltPerCm => "V/cm",
        }
    }

    /// Multiplier from the SI value to the displayed number.
    pub fn scale(self) -> f64 {
        match self {
            DisplayUnit::MegaPerSecond | DisplayUnit::MegaRadPerSecond => 1e-6,
            DisplayUnit::GigaRadPerSecond => 1e-9,
            DisplayUnit::Nanoseconds => 1e9,
            DisplayUnit::MilliwattPerCm2 => 0.1,
            DisplayUnit::VoltPerCm => 0.01,
        }
    }

    pub fn convert(self, si: f64) -> f64 {
        si * self.scale()
    }

    pub fn format(self, si: f64, precision: usize) -> String {
        format!("{:.*} {}", precision, self.convert(si), self.label())
    }
}

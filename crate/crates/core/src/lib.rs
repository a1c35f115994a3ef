//! Two-level atom toolkit.
//!
//! Closed-form upper-level populations for single-frequency and symmetric
//! bichromatic drives, spontaneous-emission and lifetime statistics,
//! probability-time-frequency (PTF) surfaces, and an independent ODE
//! integrator used to check the closed forms.
//!
//! Internally every quantity is SI, with angular frequencies in rad/s.
//! Display units such as "MHz.rad" exist only in [`physcore::units`].

pub mod dynamics;
pub mod error;
pub mod lifetime;
pub mod oracle;
pub mod physcore;
pub mod surface;

pub use error::{Error, Result};

/// Version string embedded in exported metadata.
pub const TOOLKIT_VERSION: &str = concat!("twolevel ", env!("CARGO_PKG_VERSION"));

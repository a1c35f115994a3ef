//! Batches of closed-form vs integrated comparisons.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    compare_traces, integrate_bichromatic, integrate_damped, integrate_rwa_monochromatic,
    uniform_times, InitialLevel, OdeConfig, Trace, MODEL_VERSION,
};
use crate::dynamics::{p1, p2};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ValidationSuite {
    Rwa,
    Bichromatic,
    Damped,
}

impl std::str::FromStr for ValidationSuite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rwa" => Ok(ValidationSuite::Rwa),
            "bichromatic" => Ok(ValidationSuite::Bichromatic),
            "damped" => Ok(ValidationSuite::Damped),
            other => Err(Error::Usage(format!(
                "unknown suite '{other}' (expected rwa, bichromatic or damped)"
            ))),
        }
    }
}

impl ValidationSuite {
    /// Default pass bar on the maximum absolute population error.
    pub fn default_bar(self) -> f64 {
        match self {
            ValidationSuite::Rwa | ValidationSuite::Bichromatic => 1e-6,
            ValidationSuite::Damped => 1e-8,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseCheck {
    /// Compared against a closed form.
    ClosedForm,
    /// No closed form; checks population ∈ [0, 1] and non-increasing norm.
    Properties,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseReport {
    pub omega_rabi: f64,
    pub detuning: f64,
    pub gamma: Option<f64>,
    pub t_end: f64,
    pub samples: usize,
    pub check: CaseCheck,
    pub max_abs_error: f64,
    pub rms_error: f64,
    pub max_norm_drift: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: ValidationSuite,
    pub model: String,
    pub config: OdeConfig,
    pub bar: f64,
    pub cases: Vec<CaseReport>,
    pub worst_max_abs_error: f64,
    pub passed: bool,
}

/// Samples per comparison trace.
pub const SUITE_SAMPLES: usize = 1000;

/// The 16-point (Ω, Δω) matrix: four Rabi scales × Δω/Ω ∈ {0, 1, 3, 8}.
pub fn rwa_matrix() -> Vec<(f64, f64)> {
    let omegas = [0.5, 1.0, 2.5e7, 1.0e9];
    let ratios = [0.0, 1.0, 3.0, 8.0];
    omegas
        .iter()
        .flat_map(|&om| ratios.iter().map(move |&r| (om, r * om)))
        .collect()
}

/// Ω/Δω ∈ {0.2, 0.5, 1, 2, 5} at two Rabi scales.
pub fn bichromatic_matrix() -> Vec<(f64, f64)> {
    let omegas = [1.0, 1.0e9];
    let ratios = [0.2, 0.5, 1.0, 2.0, 5.0];
    omegas
        .iter()
        .flat_map(|&om| ratios.iter().map(move |&r| (om, om / r)))
        .collect()
}

fn closed_form_case(
    omega_rabi: f64,
    detuning: f64,
    t_end: f64,
    cfg: &OdeConfig,
    bar: f64,
    bichromatic: bool,
) -> Result<CaseReport> {
    let times = uniform_times(t_end, SUITE_SAMPLES)?;
    let (numeric, analytic) = if bichromatic {
        (
            integrate_bichromatic(omega_rabi, detuning, &times, cfg)?,
            Trace::try_sample(&times, |t| p2(omega_rabi, detuning, t))?,
        )
    } else {
        (
            integrate_rwa_monochromatic(omega_rabi, detuning, &times, cfg)?,
            Trace::try_sample(&times, |t| p1(omega_rabi, detuning, t))?,
        )
    };
    let cmp = compare_traces(&analytic, &numeric.population)?;
    Ok(CaseReport {
        omega_rabi,
        detuning,
        gamma: None,
        t_end,
        samples: SUITE_SAMPLES,
        check: CaseCheck::ClosedForm,
        max_abs_error: cmp.max_abs_error,
        rms_error: cmp.rms_error,
        max_norm_drift: numeric.max_norm_drift(),
        passed: cmp.max_abs_error <= bar,
    })
}

fn damped_cases(cfg: &OdeConfig, bar: f64) -> Result<Vec<CaseReport>> {
    let mut cases = Vec::new();
    for gamma in [1.0 / 27.1e-9, 1.0] {
        let t_end = 5.0 / gamma;
        let times = uniform_times(t_end, SUITE_SAMPLES)?;
        let tr = integrate_damped(0.0, 0.0, gamma, InitialLevel::Upper, &times, cfg)?;
        let exact = Trace::sample(&times, |t| (-gamma * t).exp());
        let cmp = compare_traces(&exact, &tr.population)?;
        cases.push(CaseReport {
            omega_rabi: 0.0,
            detuning: 0.0,
            gamma: Some(gamma),
            t_end,
            samples: SUITE_SAMPLES,
            check: CaseCheck::ClosedForm,
            max_abs_error: cmp.max_abs_error,
            rms_error: cmp.rms_error,
            max_norm_drift: tr.max_norm_drift(),
            passed: cmp.max_abs_error <= bar,
        });
    }
    for (omega, detuning, gamma) in [(1.0, 0.0, 0.1), (1.0, 2.0, 0.5), (1.0e9, 3.0e8, 3.69e7)] {
        let t_end = 40.0 / omega;
        let times = uniform_times(t_end, SUITE_SAMPLES)?;
        let tr = integrate_damped(omega, detuning, gamma, InitialLevel::Lower, &times, cfg)?;
        let in_range = tr
            .population
            .values
            .iter()
            .all(|p| (-1e-12..=1.0 + 1e-12).contains(p));
        let monotone = tr.norm.windows(2).all(|w| w[1] <= w[0] + 1e-12);
        cases.push(CaseReport {
            omega_rabi: omega,
            detuning,
            gamma: Some(gamma),
            t_end,
            samples: SUITE_SAMPLES,
            check: CaseCheck::Properties,
            max_abs_error: 0.0,
            rms_error: 0.0,
            max_norm_drift: tr.max_norm_drift(),
            passed: in_range && monotone,
        });
    }
    Ok(cases)
}

/// Runs one suite. `bar` overrides [`ValidationSuite::default_bar`].
pub fn run_suite(suite: ValidationSuite, cfg: &OdeConfig, bar: Option<f64>) -> Result<SuiteReport> {
    cfg.validate()?;
    let bar = bar.unwrap_or(suite.default_bar());
    let cases = match suite {
        ValidationSuite::Rwa => rwa_matrix()
            .par_iter()
            .map(|&(om, d)| closed_form_case(om, d, 20.0 / om, cfg, bar, false))
            .collect::<Result<Vec<_>>>()?,
        ValidationSuite::Bichromatic => bichromatic_matrix()
            .par_iter()
            .map(|&(om, d)| closed_form_case(om, d, 4.0 * PI / om.min(d), cfg, bar, true))
            .collect::<Result<Vec<_>>>()?,
        ValidationSuite::Damped => damped_cases(cfg, bar)?,
    };
    let worst = cases.iter().fold(0.0f64, |m, c| m.max(c.max_abs_error));
    let passed = cases.iter().all(|c| c.passed);
    Ok(SuiteReport {
        suite,
        model: MODEL_VERSION.to_string(),
        config: *cfg,
        bar,
        cases,
        worst_max_abs_error: worst,
        passed,
    })
}

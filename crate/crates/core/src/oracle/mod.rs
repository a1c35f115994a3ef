//! Independent numerical integration of the two-level amplitude equations.
//!
//! Units: ħ = 1, time in seconds, couplings in rad/s. State is (c1, c2) with
//! c1 the lower and c2 the upper level. Three rotating-frame models are
//! provided:
//!
//! * monochromatic: `i ċ1 = −(Δ/2)c1 + Ω c2`, `i ċ2 = Ω c1 + (Δ/2)c2`,
//!   whose generalized flopping frequency is √(4Ω² + Δ²);
//! * symmetric bichromatic, frame at ω₀: each component couples with Ω/2
//!   and the pair beats, so `i ċ1 = V(t) c2`, `i ċ2 = V(t) c1` with
//!   `V(t) = 2·(Ω/2)·cos(Δ t)`;
//! * damped: the monochromatic model with `−(γ/2)c2` added to ċ2.
//!
//! None of these reuse the closed forms in [`crate::dynamics`].

mod dop853;
mod dopri5;
mod rk;
mod suites;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, ensure_non_negative, ensure_positive, Error, Result};

pub use rk::SolverStats;
pub use suites::{run_suite, SUITE_SAMPLES, CaseCheck, CaseReport, SuiteReport, ValidationSuite};

/// Version label of the reference dynamics, embedded in reports.
pub const MODEL_VERSION: &str = "rwa-two-level/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "dopri5")]
    /// Embedded Runge–Kutta 5(4) pair of Dormand and Prince. Its global
    /// error tracks the tolerance closely, so tolerance sweeps are
    /// informative under the default step cap.
    DormandPrince54,
    #[serde(rename = "dop853")]
    /// Embedded Runge–Kutta 8(5,3) pair of Dormand and Prince. Under the
    /// default step cap it is usually step-limited rather than
    /// tolerance-limited; preferred for long runs where norm drift matters.
    DormandPrince853,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::DormandPrince54 => "dopri5",
            Method::DormandPrince853 => "dop853",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dopri5" => Ok(Method::DormandPrince54),
            "dop853" => Ok(Method::DormandPrince853),
            _ => Err(Error::Usage(format!(
                "unknown integration method '{s}' (expected dopri5 or dop853)"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OdeConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Upper bound on the step, s. `None` picks (1/20)·2π/max(Ω, |Δ|, γ).
    pub max_step: Option<f64>,
    pub method: Method,
    pub max_steps: usize,
}

impl Default for OdeConfig {
    fn default() -> Self {
        OdeConfig {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            max_step: None,
            method: Method::DormandPrince54,
            max_steps: 20_000_000,
        }
    }
}

impl OdeConfig {
    pub fn with_tolerances(rel_tol: f64, abs_tol: f64) -> Result<Self> {
        let cfg = OdeConfig {
            rel_tol,
            abs_tol,
            ..OdeConfig::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, tol) in [("rel_tol", self.rel_tol), ("abs_tol", self.abs_tol)] {
            if !(tol > 1e-14 && tol <= 1e-3) {
                return Err(Error::domain(format!(
                    "{name} must lie in (1e-14, 1e-3], got {tol:e}"
                )));
            }
        }
        if let Some(h) = self.max_step {
            ensure_positive("max_step", h)?;
        }
        if self.max_steps == 0 {
            return Err(Error::domain("max_steps must be positive"));
        }
        Ok(())
    }

    fn step_control(&self, rates: &[f64], t_end: f64) -> rk::StepControl {
        let fastest = rates.iter().fold(0.0f64, |m, r| m.max(r.abs()));
        let default_step = if fastest > 0.0 {
            std::f64::consts::TAU / fastest / 20.0
        } else {
            t_end / 20.0
        };
        rk::StepControl {
            rel_tol: self.rel_tol,
            abs_tol: self.abs_tol,
            max_step: self.max_step.unwrap_or(default_step),
            max_steps: self.max_steps,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum InitialLevel {
    Lower,
    Upper,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoLevelState {
    pub c1: Complex64,
    pub c2: Complex64,
    pub t: f64,
}

impl TwoLevelState {
    pub fn initial(level: InitialLevel) -> Self {
        let (c1, c2) = match level {
            InitialLevel::Lower => (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)),
            InitialLevel::Upper => (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)),
        };
        TwoLevelState { c1, c2, t: 0.0 }
    }

    pub fn upper_population(&self) -> f64 {
        self.c2.norm_sqr()
    }

    pub fn norm(&self) -> f64 {
        self.c1.norm_sqr() + self.c2.norm_sqr()
    }
}

/// A sampled scalar signal.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Trace {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
}

impl Trace {
    /// Evaluates `f` on every time in `times`.
    pub fn sample<F: FnMut(f64) -> f64>(times: &[f64], mut f: F) -> Self {
        Trace {
            times: times.to_vec(),
            values: times.iter().map(|&t| f(t)).collect(),
        }
    }

    pub fn try_sample<F: FnMut(f64) -> Result<f64>>(times: &[f64], mut f: F) -> Result<Self> {
        let values = times.iter().map(|&t| f(t)).collect::<Result<Vec<_>>>()?;
        Ok(Trace {
            times: times.to_vec(),
            values,
        })
    }
}

/// Integrated upper-level population plus diagnostics.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PopulationTrace {
    pub population: Trace,
    /// |c1|² + |c2|² at each sample.
    pub norm: Vec<f64>,
    pub accepted_steps: usize,
    pub rejected_steps: usize,
    pub evaluations: usize,
}

impl PopulationTrace {
    pub fn times(&self) -> &[f64] {
        &self.population.times
    }

    /// max |norm − 1| over the samples.
    pub fn max_norm_drift(&self) -> f64 {
        self.norm.iter().fold(0.0, |m, n| m.max((n - 1.0).abs()))
    }
}

/// `n` uniformly spaced times on [0, t_end], both ends included.
pub fn uniform_times(t_end: f64, n: usize) -> Result<Vec<f64>> {
    ensure_positive("t_end", t_end)?;
    if n < 2 {
        return Err(Error::domain(format!("need at least 2 samples, got {n}")));
    }
    let last = (n - 1) as f64;
    Ok((0..n)
        .map(|i| {
            if i + 1 == n {
                t_end
            } else {
                t_end * i as f64 / last
            }
        })
        .collect())
}

fn run<F>(
    rhs: F,
    initial: InitialLevel,
    times: &[f64],
    rates: &[f64],
    cfg: &OdeConfig,
) -> Result<PopulationTrace>
where
    F: Fn(f64, &rk::State) -> rk::State,
{
    cfg.validate()?;
    let t_end = *times
        .last()
        .ok_or_else(|| Error::Usage("empty time grid".into()))?;
    if times[0] < 0.0 {
        return Err(Error::domain("sample times must be non-negative"));
    }
    let s0 = TwoLevelState::initial(initial);
    let ctl = cfg.step_control(rates, t_end);
    let y0 = [s0.c1, s0.c2];
    let (states, stats) = match cfg.method {
        Method::DormandPrince54 => {
            let mut scheme = dopri5::DormandPrince54::default();
            rk::integrate(&mut scheme, rhs, 0.0, y0, times, &ctl)?
        }
        Method::DormandPrince853 => {
            let mut scheme = dop853::DormandPrince853::default();
            rk::integrate(&mut scheme, rhs, 0.0, y0, times, &ctl)?
        }
    };
    let population = states.iter().map(|s| s[1].norm_sqr()).collect();
    let norm = states
        .iter()
        .map(|s| s[0].norm_sqr() + s[1].norm_sqr())
        .collect();
    Ok(PopulationTrace {
        population: Trace {
            times: times.to_vec(),
            values: population,
        },
        norm,
        accepted_steps: stats.accepted,
        rejected_steps: stats.rejected,
        evaluations: stats.evaluations,
    })
}

fn check_drive(omega_rabi: f64, detuning: f64) -> Result<()> {
    ensure_non_negative("Rabi frequency", omega_rabi)?;
    ensure_finite("detuning", detuning)?;
    Ok(())
}

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Single-frequency rotating-frame dynamics from the lower level.
pub fn integrate_rwa_monochromatic(
    omega_rabi: f64,
    detuning: f64,
    times: &[f64],
    cfg: &OdeConfig,
) -> Result<PopulationTrace> {
    check_drive(omega_rabi, detuning)?;
    let half = 0.5 * detuning;
    run(
        move |_, y| {
            [
                -I * (y[0] * (-half) + y[1] * omega_rabi),
                -I * (y[0] * omega_rabi + y[1] * half),
            ]
        },
        InitialLevel::Lower,
        times,
        &[omega_rabi, detuning],
        cfg,
    )
}

/// Symmetric-pair dynamics in the frame rotating at the carrier.
pub fn integrate_bichromatic(
    omega_rabi: f64,
    detuning: f64,
    times: &[f64],
    cfg: &OdeConfig,
) -> Result<PopulationTrace> {
    check_drive(omega_rabi, detuning)?;
    if detuning == 0.0 {
        return Err(Error::domain("bichromatic drive needs a non-zero detuning"));
    }
    let component = 0.5 * omega_rabi;
    run(
        move |t, y| {
            let v = 2.0 * component * (detuning * t).cos();
            [-I * y[1] * v, -I * y[0] * v]
        },
        InitialLevel::Lower,
        times,
        &[omega_rabi, detuning],
        cfg,
    )
}

/// Monochromatic dynamics with upper-level amplitude decay at rate γ/2, so
/// that an undriven upper population decays as exp(−γt).
pub fn integrate_damped(
    omega_rabi: f64,
    detuning: f64,
    gamma_s: f64,
    initial: InitialLevel,
    times: &[f64],
    cfg: &OdeConfig,
) -> Result<PopulationTrace> {
    check_drive(omega_rabi, detuning)?;
    ensure_positive("damping rate", gamma_s)?;
    let half = 0.5 * detuning;
    let half_gamma = 0.5 * gamma_s;
    run(
        move |_, y| {
            [
                -I * (y[0] * (-half) + y[1] * omega_rabi),
                -I * (y[0] * omega_rabi + y[1] * half) - y[1] * half_gamma,
            ]
        },
        initial,
        times,
        &[omega_rabi, detuning, gamma_s],
        cfg,
    )
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceComparison {
    pub times: Vec<f64>,
    pub analytic: Vec<f64>,
    pub numeric: Vec<f64>,
    pub max_abs_error: f64,
    pub rms_error: f64,
}

/// Error metrics between two traces sampled on the same grid.
pub fn compare_traces(analytic: &Trace, numeric: &Trace) -> Result<TraceComparison> {
    if analytic.times.len() != analytic.values.len() || numeric.times.len() != numeric.values.len()
    {
        return Err(Error::Usage("trace has mismatched times and values".into()));
    }
    if analytic.times != numeric.times {
        return Err(Error::Usage(format!(
            "time grids differ ({} vs {} samples)",
            analytic.times.len(),
            numeric.times.len()
        )));
    }
    if analytic.times.is_empty() {
        return Err(Error::Usage("cannot compare empty traces".into()));
    }
    let mut max_abs: f64 = 0.0;
    let mut sum_sq = 0.0;
    for (a, n) in analytic.values.iter().zip(&numeric.values) {
        let e = (a - n).abs();
        max_abs = max_abs.max(e);
        sum_sq += e * e;
    }
    Ok(TraceComparison {
        times: analytic.times.clone(),
        analytic: analytic.values.clone(),
        numeric: numeric.values.clone(),
        max_abs_error: max_abs,
        rms_error: (sum_sq / analytic.values.len() as f64).sqrt(),
    })
}

//! Adaptive explicit Runge–Kutta driver for a pair of complex amplitudes.
//!
//! Steps are chosen by the scheme's embedded error estimate; samples that
//! fall inside a step are read from the scheme's continuous extension and
//! the final sample is reached by an exact step.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type State = [Complex64; 2];

pub const ZERO: State = [Complex64 { re: 0.0, im: 0.0 }; 2];

#[derive(Clone, Copy, Debug)]
pub struct StepControl {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_step: f64,
    pub max_steps: usize,
}

impl StepControl {
    pub fn scale(&self, a: Complex64, b: Complex64) -> f64 {
        self.abs_tol + self.rel_tol * a.norm().max(b.norm())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolverStats {
    pub accepted: usize,
    pub rejected: usize,
    pub evaluations: usize,
}

/// One embedded explicit Runge–Kutta pair with continuous extension.
pub trait Scheme {
    /// Step-size update `0.9·err^(−alpha)·err_prev^beta`.
    const ALPHA: f64;
    const BETA: f64;
    /// Bounds on the step-size ratio between consecutive steps.
    const FAC_MIN: f64;
    const FAC_MAX: f64;

    /// Attempts a step of size `h` from `(t, y)` with `f0 = rhs(t, y)`.
    /// Returns the new state, `rhs` at the new state, and the scaled error
    /// norm (accept when ≤ 1).
    fn attempt<F: Fn(f64, &State) -> State>(
        &mut self,
        rhs: &F,
        t: f64,
        y: &State,
        f0: &State,
        h: f64,
        ctl: &StepControl,
    ) -> (State, State, f64);

    /// Builds the interpolant for the last accepted attempt.
    fn prepare_dense<F: Fn(f64, &State) -> State>(
        &mut self,
        rhs: &F,
        t: f64,
        y: &State,
        y_new: &State,
        f_new: &State,
        h: f64,
    );

    /// Evaluates the interpolant at fraction `theta` of the step.
    fn dense(&self, y: &State, theta: f64) -> State;

    /// Right-hand-side evaluations per attempt.
    const EVALS_PER_STEP: usize;
    /// Extra evaluations needed by `prepare_dense`.
    const EVALS_PER_DENSE: usize;
}

pub(super) fn combine(y: &State, k: &[State], coeffs: &[f64], h: f64) -> State {
    let mut out = *y;
    for (c, ki) in coeffs.iter().zip(k) {
        if *c != 0.0 {
            for i in 0..2 {
                out[i] += ki[i] * (h * c);
            }
        }
    }
    out
}

/// Integrates `rhs` from `(t0, y0)` and records the state at every time in
/// `samples` (ascending, all ≥ t0).
pub fn integrate<S: Scheme, F: Fn(f64, &State) -> State>(
    scheme: &mut S,
    rhs: F,
    t0: f64,
    y0: State,
    samples: &[f64],
    ctl: &StepControl,
) -> Result<(Vec<State>, SolverStats)> {
    if samples.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::Usage("sample times must be ascending".into()));
    }
    if samples.first().is_some_and(|&s| s < t0) {
        return Err(Error::Usage("sample times precede the initial time".into()));
    }
    let mut stats = SolverStats::default();
    let mut out = Vec::with_capacity(samples.len());
    let mut next = 0;
    let mut t = t0;
    let mut y = y0;
    while next < samples.len() && samples[next] == t0 {
        out.push(y);
        next += 1;
    }
    let t_end = match samples.last() {
        Some(&t_end) if next < samples.len() => t_end,
        _ => return Ok((out, stats)),
    };

    let mut f0 = rhs(t, &y);
    stats.evaluations += 1;
    let mut h = initial_step(&y, &f0, ctl, t_end - t0);
    let mut prev_err: f64 = 1e-4;

    while t < t_end {
        let remaining = t_end - t;
        let mut step = h.min(ctl.max_step);
        let last = step >= remaining;
        if last {
            step = remaining;
        }
        if !last && step <= 1e-14 * t.abs().max(ctl.max_step) {
            return Err(Error::Integration {
                t,
                step,
                steps: stats.accepted,
                reason: "step size collapsed below resolvable width".into(),
            });
        }
        if stats.accepted + stats.rejected >= ctl.max_steps {
            return Err(Error::Integration {
                t,
                step,
                steps: stats.accepted,
                reason: format!("step budget of {} exhausted", ctl.max_steps),
            });
        }

        let (y_new, f_new, err) = scheme.attempt(&rhs, t, &y, &f0, step, ctl);
        stats.evaluations += S::EVALS_PER_STEP;
        if !err.is_finite() {
            return Err(Error::Integration {
                t,
                step,
                steps: stats.accepted,
                reason: "non-finite error estimate".into(),
            });
        }

        if err <= 1.0 {
            stats.accepted += 1;
            let t_new = if last { t_end } else { t + step };
            let mut dense_ready = false;
            while next < samples.len() && samples[next] <= t_new {
                let s = samples[next];
                if s == t_new {
                    out.push(y_new);
                } else {
                    if !dense_ready {
                        scheme.prepare_dense(&rhs, t, &y, &y_new, &f_new, step);
                        stats.evaluations += S::EVALS_PER_DENSE;
                        dense_ready = true;
                    }
                    out.push(scheme.dense(&y, (s - t) / step));
                }
                next += 1;
            }
            let factor = if err == 0.0 {
                10.0
            } else {
                (0.9 * err.powf(-S::ALPHA) * prev_err.powf(S::BETA)).clamp(S::FAC_MIN, S::FAC_MAX)
            };
            prev_err = err.max(1e-4);
            t = t_new;
            y = y_new;
            f0 = f_new;
            h = step * factor;
        } else {
            stats.rejected += 1;
            h = step * (0.9 * err.powf(-S::ALPHA)).max(S::FAC_MIN);
        }
    }
    Ok((out, stats))
}

fn initial_step(y: &State, f: &State, ctl: &StepControl, span: f64) -> f64 {
    let mut d0: f64 = 0.0;
    let mut d1: f64 = 0.0;
    for i in 0..2 {
        let sc = ctl.abs_tol + ctl.rel_tol * y[i].norm();
        d0 = d0.max(y[i].norm() / sc);
        d1 = d1.max(f[i].norm() / sc);
    }
    let h = if d0 < 1e-5 || d1 < 1e-5 {
        1e-6
    } else {
        0.01 * d0 / d1
    };
    h.min(ctl.max_step).min(span)
}

#[cfg(test)]
mod tests {
    use super::super::{dop853::DormandPrince853, dopri5::DormandPrince54};
    use super::*;

    fn ctl() -> StepControl {
        StepControl {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            max_step: 0.1,
            max_steps: 1_000_000,
        }
    }

    fn both<F: Fn(f64, &State) -> State + Copy>(
        rhs: F,
        y0: State,
        samples: &[f64],
        ctl: &StepControl,
    ) -> [Result<(Vec<State>, SolverStats)>; 2] {
        [
            integrate(&mut DormandPrince54::default(), rhs, 0.0, y0, samples, ctl),
            integrate(&mut DormandPrince853::default(), rhs, 0.0, y0, samples, ctl),
        ]
    }

    #[test]
    fn exponential_decay() {
        // y' = -y for both components.
        let y0 = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 2.0)];
        let samples: Vec<f64> = (0..=10).map(|i| i as f64 * 0.5).collect();
        for run in both(|_, y| [-y[0], -y[1]], y0, &samples, &ctl()) {
            let (ys, stats) = run.unwrap();
            for (t, y) in samples.iter().zip(&ys) {
                assert!((y[0].re - (-t).exp()).abs() < 1e-10);
                assert!((y[1].im - 2.0 * (-t).exp()).abs() < 1e-10);
            }
            assert!(stats.accepted > 0);
        }
    }

    #[test]
    fn harmonic_rotation() {
        // y' = i·y rotates at unit rate.
        let y0 = [Complex64::new(1.0, 0.0), ZERO[1]];
        let samples = [std::f64::consts::PI];
        for run in both(|_, y| [y[0] * Complex64::i(), y[1]], y0, &samples, &ctl()) {
            let (ys, _) = run.unwrap();
            assert!((ys[0][0] - Complex64::new(-1.0, 0.0)).norm() < 1e-9);
        }
    }

    #[test]
    fn step_budget_is_reported() {
        let y0 = [Complex64::new(1.0, 0.0), ZERO[1]];
        let mut c = ctl();
        c.max_steps = 3;
        for run in both(|_, y| [-y[0], y[1]], y0, &[100.0], &c) {
            assert!(matches!(run.unwrap_err(), Error::Integration { .. }));
        }
    }

    #[test]
    fn dense_output_matches_exact_solution() {
        let y0 = [Complex64::new(1.0, 0.0), ZERO[1]];
        let samples: Vec<f64> = (0..=400).map(|i| i as f64 * 0.025).collect();
        for run in both(|_, y| [y[0] * Complex64::i(), y[1]], y0, &samples, &ctl()) {
            let (ys, stats) = run.unwrap();
            assert_eq!(ys.len(), samples.len());
            assert!(stats.accepted < samples.len());
            for (t, y) in samples.iter().zip(&ys) {
                assert!((y[0] - Complex64::new(t.cos(), t.sin())).norm() < 1e-9, "t={t}");
            }
        }
    }

    #[test]
    fn eighth_order_pair_takes_fewer_steps() {
        let y0 = [Complex64::new(1.0, 0.0), ZERO[1]];
        let mut c = ctl();
        c.max_step = 10.0;
        let [lo, hi] = both(|_, y| [y[0] * Complex64::i(), y[1]], y0, &[50.0], &c);
        assert!(hi.unwrap().1.accepted < lo.unwrap().1.accepted);
    }

    #[test]
    fn rejects_descending_samples() {
        let y0 = [Complex64::new(1.0, 0.0), ZERO[1]];
        for run in both(|_, y| *y, y0, &[1.0, 0.5], &ctl()) {
            assert!(run.is_err());
        }
    }
}

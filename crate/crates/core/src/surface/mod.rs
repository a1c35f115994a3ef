//! Probability-time-frequency surfaces, fixed-time spectral slices and
//! unit-probability peak search.
//!
//! Surfaces are sampled on uniform axes: x is time τ (s) or X = τΩ, y is
//! detuning Δω (rad/s) or Y = Δω/Ω. `values[i][j]` is the probability at
//! `(xs[i], ys[j])`.

mod export;

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::{
    p1_detuning_derivative, p1_dimensionless_unchecked, p1_unchecked, p2_detuning_derivative,
    p2_dimensionless_unchecked, p2_unchecked, DriveKind, DriveSpec,
};
use crate::error::{ensure_finite, ensure_non_negative, ensure_positive, Error, Result};

pub use export::{
    export_surface, export_surface_to_vec, format_f64, import_surface, ExportFormat,
};

/// Largest number of samples a single surface may hold.
pub const MAX_SAMPLES: u128 = 100_000_000;

/// Default dimensionless ranges when none are given: X ∈ [0, 4π], Y ∈ [−4, 4].
pub const DEFAULT_X_RANGE: (f64, f64) = (0.0, 4.0 * PI);
pub const DEFAULT_Y_RANGE: (f64, f64) = (-4.0, 4.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProbabilityKind {
    /// Single-frequency drive.
    P1,
    /// Symmetric bichromatic drive.
    P2,
}

impl ProbabilityKind {
    pub fn drive_kind(self) -> DriveKind {
        match self {
            ProbabilityKind::P1 => DriveKind::Monochromatic,
            ProbabilityKind::P2 => DriveKind::BichromaticSymmetric,
        }
    }

    #[inline]
    fn eval(self, omega_rabi: f64, detuning: f64, tau: f64) -> f64 {
        match self {
            ProbabilityKind::P1 => p1_unchecked(omega_rabi, detuning, tau),
            ProbabilityKind::P2 => p2_unchecked(omega_rabi, detuning, tau),
        }
    }

    #[inline]
    fn eval_dimensionless(self, x: f64, y: f64) -> f64 {
        match self {
            ProbabilityKind::P1 => p1_dimensionless_unchecked(x, y),
            ProbabilityKind::P2 => p2_dimensionless_unchecked(x, y),
        }
    }

    #[inline]
    fn detuning_derivative(self, omega_rabi: f64, detuning: f64, tau: f64) -> f64 {
        match self {
            ProbabilityKind::P1 => p1_detuning_derivative(omega_rabi, detuning, tau),
            ProbabilityKind::P2 => p2_detuning_derivative(omega_rabi, detuning, tau),
        }
    }
}

impl std::str::FromStr for ProbabilityKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "p1" => Ok(ProbabilityKind::P1),
            "p2" => Ok(ProbabilityKind::P2),
            other => Err(Error::Usage(format!("unknown probability kind '{other}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub nx: usize,
    pub ny: usize,
    pub dimensionless: bool,
    pub kind: ProbabilityKind,
}

impl GridSpec {
    /// Dimensionless grid over the default ranges.
    pub fn dimensionless_default(kind: ProbabilityKind, nx: usize, ny: usize) -> Self {
        GridSpec {
            x_min: DEFAULT_X_RANGE.0,
            x_max: DEFAULT_X_RANGE.1,
            y_min: DEFAULT_Y_RANGE.0,
            y_max: DEFAULT_Y_RANGE.1,
            nx,
            ny,
            dimensionless: true,
            kind,
        }
    }

    pub fn sample_count(&self) -> u128 {
        self.nx as u128 * self.ny as u128
    }

    pub fn validate(&self) -> Result<()> {
        if self.nx < 2 || self.ny < 2 {
            return Err(Error::domain(format!(
                "grid needs at least 2 samples per axis, got {}x{}",
                self.nx, self.ny
            )));
        }
        for (name, v) in [
            ("x_min", self.x_min),
            ("x_max", self.x_max),
            ("y_min", self.y_min),
            ("y_max", self.y_max),
        ] {
            ensure_finite(name, v)?;
        }
        ensure_non_negative("x_min (time runs forward)", self.x_min)?;
        if self.x_max <= self.x_min || self.y_max <= self.y_min {
            return Err(Error::domain("axis maximum must exceed minimum"));
        }
        let n = self.sample_count();
        if n > MAX_SAMPLES {
            return Err(Error::Resource {
                requested: n,
                limit: MAX_SAMPLES,
            });
        }
        Ok(())
    }

    fn uses_default_ranges(&self) -> bool {
        self.dimensionless
            && (self.x_min, self.x_max) == DEFAULT_X_RANGE
            && (self.y_min, self.y_max) == DEFAULT_Y_RANGE
    }
}

/// `n` uniform samples on [lo, hi] with exact endpoints.
///
/// Sample `j` is `(lo·(n−1−j) + hi·j)/(n−1)`, so a range symmetric about
/// zero produces exactly negated mirror samples and, for odd `n`, an exact 0.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let last = (n - 1) as f64;
    (0..n)
        .map(|j| {
            if j == 0 {
                lo
            } else if j + 1 == n {
                hi
            } else {
                (lo * (n - 1 - j) as f64 + hi * j as f64) / last
            }
        })
        .collect()
}

/// How a surface was produced.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenerationInfo {
    pub grid: GridSpec,
    /// Ω in rad/s for physical-unit surfaces.
    pub omega_rabi_rad_s: Option<f64>,
    pub x_axis: String,
    pub y_axis: String,
    /// True when the ranges are the toolkit's defaults, not user choices.
    pub default_ranges: bool,
    pub rabi_convention: String,
    pub time_direction: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceMetadata {
    pub toolkit_version: String,
    /// Absent for surfaces imported from CSV or matrix files.
    pub generation: Option<GenerationInfo>,
    /// FNV-1a 64 over the bit patterns of axes and values.
    pub checksum: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Surface {
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    pub values: Vec<Vec<f64>>,
    pub metadata: SurfaceMetadata,
}

impl Surface {
    pub(crate) fn from_parts(
        xs: Vec<f64>,
        ys: Vec<f64>,
        values: Vec<Vec<f64>>,
        generation: Option<GenerationInfo>,
    ) -> Self {
        let checksum = checksum(&xs, &ys, &values);
        Surface {
            xs,
            ys,
            values,
            metadata: SurfaceMetadata {
                toolkit_version: crate::TOOLKIT_VERSION.to_string(),
                generation,
                checksum,
            },
        }
    }

    pub fn nx(&self) -> usize {
        self.xs.len()
    }

    pub fn ny(&self) -> usize {
        self.ys.len()
    }

    pub fn max_value(&self) -> f64 {
        self.values
            .iter()
            .flatten()
            .fold(f64::NEG_INFINITY, |m, &v| m.max(v))
    }

    /// Recomputes the checksum and compares it with the stored one.
    pub fn verify_checksum(&self) -> bool {
        checksum(&self.xs, &self.ys, &self.values) == self.metadata.checksum
    }

    pub(crate) fn check_shape(&self) -> Result<()> {
        if self.values.len() != self.xs.len() || self.values.iter().any(|r| r.len() != self.ys.len())
        {
            return Err(Error::Usage(format!(
                "surface values are not {}x{}",
                self.xs.len(),
                self.ys.len()
            )));
        }
        Ok(())
    }
}

pub(crate) fn checksum(xs: &[f64], ys: &[f64], values: &[Vec<f64>]) -> String {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    let mut h = OFFSET;
    let all = xs.iter().chain(ys).chain(values.iter().flatten());
    for v in all {
        for b in v.to_bits().to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(PRIME);
        }
    }
    format!("{h:016x}")
}

fn resolve_omega(spec: &GridSpec, drive: Option<&DriveSpec>) -> Result<Option<f64>> {
    match (spec.dimensionless, drive) {
        (true, None) => Ok(None),
        (true, Some(_)) => Err(Error::Config(
            "dimensionless surfaces take no drive; Rabi frequency cancels".into(),
        )),
        (false, None) => Err(Error::Config(
            "physical-unit surfaces need a drive with a Rabi frequency".into(),
        )),
        (false, Some(d)) => {
            if d.kind != spec.kind.drive_kind() {
                return Err(Error::Config(format!(
                    "drive kind {:?} does not match surface kind {:?}",
                    d.kind, spec.kind
                )));
            }
            ensure_non_negative("Rabi frequency", d.omega_rabi)?;
            Ok(Some(d.omega_rabi))
        }
    }
}

fn surface_rows(spec: &GridSpec, omega: Option<f64>, xs: &[f64], ys: &[f64]) -> Vec<Vec<f64>> {
    let kind = spec.kind;
    xs.par_iter()
        .map(|&x| {
            ys.iter()
                .map(|&y| match omega {
                    None => kind.eval_dimensionless(x, y),
                    Some(om) => kind.eval(om, y, x),
                })
                .collect()
        })
        .collect()
}

fn generation_info(spec: &GridSpec, omega: Option<f64>) -> GenerationInfo {
    let (x_axis, y_axis) = if spec.dimensionless {
        ("X = tau*Omega", "Y = detuning/Omega")
    } else {
        ("tau [s]", "detuning [rad/s]")
    };
    GenerationInfo {
        grid: *spec,
        omega_rabi_rad_s: omega,
        x_axis: x_axis.into(),
        y_axis: y_axis.into(),
        default_ranges: spec.uses_default_ranges(),
        rabi_convention: "Omega = pi * Omega_nu, Omega_nu = d*E0/hbar".into(),
        time_direction: "forward (tau >= 0); emission reads the same surface in reversed time"
            .into(),
    }
}

/// Evaluates the closed form at every grid point using the current rayon pool.
///
/// `drive` must be `None` for dimensionless grids and carry Ω otherwise.
pub fn generate_surface(spec: &GridSpec, drive: Option<&DriveSpec>) -> Result<Surface> {
    spec.validate()?;
    let omega = resolve_omega(spec, drive)?;
    let xs = linspace(spec.x_min, spec.x_max, spec.nx);
    let ys = linspace(spec.y_min, spec.y_max, spec.ny);
    let values = surface_rows(spec, omega, &xs, &ys);
    Ok(Surface::from_parts(
        xs,
        ys,
        values,
        Some(generation_info(spec, omega)),
    ))
}

/// Same as [`generate_surface`] on a dedicated pool of `workers` threads.
pub fn generate_surface_with_workers(
    spec: &GridSpec,
    drive: Option<&DriveSpec>,
    workers: usize,
) -> Result<Surface> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    pool.install(|| generate_surface(spec, drive))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnitPeak {
    /// rad/s.
    pub detuning: f64,
    pub probability: f64,
    /// 1 − probability.
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralSlice {
    pub kind: ProbabilityKind,
    /// s.
    pub tau_fixed: f64,
    /// rad/s.
    pub omega_rabi: f64,
    pub detunings: Vec<f64>,
    pub values: Vec<f64>,
    /// Filled by [`SpectralSlice::attach_peaks`].
    pub peaks: Vec<UnitPeak>,
}

fn check_slice_inputs(tau: f64, omega_rabi: f64, lo: f64, hi: f64) -> Result<()> {
    ensure_positive("fixed time", tau)?;
    ensure_non_negative("Rabi frequency", omega_rabi)?;
    ensure_finite("detuning minimum", lo)?;
    ensure_finite("detuning maximum", hi)?;
    if hi <= lo {
        return Err(Error::domain(format!(
            "detuning range [{lo}, {hi}] is empty"
        )));
    }
    Ok(())
}

/// P(Δω) at fixed τ on `n` uniform detunings in [lo, hi].
pub fn spectral_slice(
    kind: ProbabilityKind,
    tau_fixed: f64,
    omega_rabi: f64,
    detuning_range: (f64, f64),
    n: usize,
) -> Result<SpectralSlice> {
    let (lo, hi) = detuning_range;
    check_slice_inputs(tau_fixed, omega_rabi, lo, hi)?;
    if n < 2 {
        return Err(Error::domain(format!("slice needs at least 2 samples, got {n}")));
    }
    let detunings = linspace(lo, hi, n);
    let values = detunings
        .iter()
        .map(|&d| kind.eval(omega_rabi, d, tau_fixed))
        .collect();
    Ok(SpectralSlice {
        kind,
        tau_fixed,
        omega_rabi,
        detunings,
        values,
        peaks: Vec::new(),
    })
}

impl SpectralSlice {
    pub fn attach_peaks(&mut self, tol: f64) -> Result<()> {
        let lo = self.detunings[0];
        let hi = *self.detunings.last().expect("slice has samples");
        self.peaks = find_unit_peaks(self.kind, self.omega_rabi, self.tau_fixed, (lo, hi), tol)?;
        Ok(())
    }
}

/// Upper bound on scan samples for peak search.
pub const MAX_SCAN_SAMPLES: usize = 50_000_000;

/// Scan density: 64 samples per shortest expected oscillation of P in Δω.
fn scan_samples(kind: ProbabilityKind, omega_rabi: f64, tau: f64, span: f64) -> Result<usize> {
    // P1 oscillates with period ≥ 2π/τ in Δω. For P2, |∂u/∂Δω| ≤ Ωτ²/2 and
    // sin(Δω·τ) has period 2π/τ, so one oscillation spans ≥ 2π/(τ·max(1, Ωτ)).
    let period = match kind {
        ProbabilityKind::P1 => 2.0 * PI / tau,
        ProbabilityKind::P2 => 2.0 * PI / (tau * (omega_rabi * tau).max(1.0)),
    };
    let n = (64.0 * (span / period).ceil()).max(1024.0) + 1.0;
    if n.is_nan() || n > MAX_SCAN_SAMPLES as f64 {
        return Err(Error::Resource {
            requested: n as u128,
            limit: MAX_SCAN_SAMPLES as u128,
        });
    }
    let n = n as usize;
    // Odd counts put Δω = 0 on the grid for symmetric ranges.
    Ok(if n.is_multiple_of(2) { n + 1 } else { n })
}

/// Detunings in `range` where P(Δω) at fixed τ reaches 1 within `tol`.
///
/// Local maxima are located from sign changes of ∂P/∂Δω on a dense scan
/// and refined by bisection; runs of zero derivative report their midpoint.
/// Results are ascending. An empty list is a valid answer.
pub fn find_unit_peaks(
    kind: ProbabilityKind,
    omega_rabi: f64,
    tau_fixed: f64,
    range: (f64, f64),
    tol: f64,
) -> Result<Vec<UnitPeak>> {
    let (lo, hi) = range;
    check_slice_inputs(tau_fixed, omega_rabi, lo, hi)?;
    if !(tol > 0.0 && tol <= 1e-3) {
        return Err(Error::domain(format!("peak tolerance must lie in (0, 1e-3], got {tol}")));
    }
    let n = scan_samples(kind, omega_rabi, tau_fixed, hi - lo)?;
    let grid = linspace(lo, hi, n);
    let deriv: Vec<f64> = grid
        .iter()
        .map(|&d| kind.detuning_derivative(omega_rabi, d, tau_fixed))
        .collect();
    let sign = |v: f64| -> i8 {
        if v > 0.0 {
            1
        } else if v < 0.0 {
            -1
        } else {
            0
        }
    };

    let mut candidates = Vec::new();
    let mut i = 0;
    while i < n {
        let s = sign(deriv[i]);
        if s == 0 {
            let start = i;
            while i + 1 < n && sign(deriv[i + 1]) == 0 {
                i += 1;
            }
            let end = i;
            let rising = start == 0 || sign(deriv[start - 1]) > 0;
            let falling = end + 1 == n || sign(deriv[end + 1]) < 0;
            if rising && falling {
                candidates.push(0.5 * (grid[start] + grid[end]));
            }
        } else {
            if i == 0 && s < 0 {
                candidates.push(grid[0]);
            }
            if i + 1 == n && s > 0 {
                candidates.push(grid[i]);
            }
            if i + 1 < n && s > 0 && sign(deriv[i + 1]) < 0 {
                candidates.push(bisect_derivative(
                    kind, omega_rabi, tau_fixed, grid[i], grid[i + 1],
                ));
            }
        }
        i += 1;
    }

    Ok(candidates
        .into_iter()
        .filter_map(|d| {
            let p = kind.eval(omega_rabi, d, tau_fixed);
            (p >= 1.0 - tol).then_some(UnitPeak {
                detuning: d,
                probability: p,
                residual: 1.0 - p,
            })
        })
        .collect())
}

/// Bisects on the sign of ∂P/∂Δω, positive at `lo` and negative at `hi`.
fn bisect_derivative(kind: ProbabilityKind, omega_rabi: f64, tau: f64, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let d = kind.detuning_derivative(omega_rabi, mid, tau);
        if d > 0.0 {
            lo = mid;
        } else if d < 0.0 {
            hi = mid;
        } else {
            return mid;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{p1, p2};
    use std::f64::consts::FRAC_PI_2;

    fn dimless(kind: ProbabilityKind, x: (f64, f64), y: (f64, f64), nx: usize, ny: usize) -> GridSpec {
        GridSpec {
            x_min: x.0,
            x_max: x.1,
            y_min: y.0,
            y_max: y.1,
            nx,
            ny,
            dimensionless: true,
            kind,
        }
    }

    #[test]
    fn linspace_mirror_and_zero() {
        let v = linspace(-3.0, 3.0, 101);
        for j in 0..101 {
            assert_eq!(v[j], -v[100 - j]);
        }
        assert_eq!(v[50], 0.0);
        assert_eq!(v[0], -3.0);
        assert_eq!(v[100], 3.0);
    }

    #[test]
    fn resonant_row_is_sin_squared() {
        let spec = dimless(ProbabilityKind::P1, (0.0, PI), (-2.0, 2.0), 64, 5);
        let s = generate_surface(&spec, None).unwrap();
        assert_eq!(s.ys[2], 0.0);
        for (i, &x) in s.xs.iter().enumerate() {
            assert!((s.values[i][2] - x.sin().powi(2)).abs() < 1e-15);
        }
    }

    #[test]
    fn p1_surface_hits_one_on_grid_point() {
        let spec = dimless(ProbabilityKind::P1, (0.0, PI), (-1.0, 1.0), 3, 3);
        let s = generate_surface(&spec, None).unwrap();
        assert_eq!(s.xs[1], FRAC_PI_2);
        assert!(s.max_value() <= 1.0);
        assert!((s.values[1][1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn surface_values_match_pointwise_evaluation() {
        let drive = DriveSpec::bichromatic(1e9, 0.0).unwrap();
        let spec = GridSpec {
            x_min: 0.0,
            x_max: 2e-8,
            y_min: -1e9,
            y_max: 1e9,
            nx: 17,
            ny: 9,
            dimensionless: false,
            kind: ProbabilityKind::P2,
        };
        let s = generate_surface(&spec, Some(&drive)).unwrap();
        for (i, &t) in s.xs.iter().enumerate() {
            for (j, &d) in s.ys.iter().enumerate() {
                assert_eq!(s.values[i][j], p2(1e9, d, t).unwrap());
            }
        }
        assert!(s.verify_checksum());
    }

    #[test]
    fn p2_rows_are_periodic_in_x() {
        // On X ∈ [0, 4π] with step π/64, rows with Y = ±1, ±2 have a period
        // 2π/|Y| that is a whole number of grid steps.
        let spec = dimless(ProbabilityKind::P2, (0.0, 4.0 * PI), (-2.0, 2.0), 257, 5);
        let s = generate_surface(&spec, None).unwrap();
        for (j, &y) in s.ys.iter().enumerate() {
            if y == 0.0 {
                continue;
            }
            let lag = (2.0 * PI / y.abs() / (PI / 64.0)).round() as usize;
            for i in 0..(s.nx() - lag) {
                assert!((s.values[i][j] - s.values[i + lag][j]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn drive_requirements() {
        let spec = GridSpec::dimensionless_default(ProbabilityKind::P1, 4, 4);
        let drive = DriveSpec::monochromatic(1.0, 0.0).unwrap();
        assert!(matches!(generate_surface(&spec, Some(&drive)), Err(Error::Config(_))));
        let mut phys = spec;
        phys.dimensionless = false;
        assert!(matches!(generate_surface(&phys, None), Err(Error::Config(_))));
        let wrong = DriveSpec::bichromatic(1.0, 0.0).unwrap();
        assert!(matches!(generate_surface(&phys, Some(&wrong)), Err(Error::Config(_))));
        let s = generate_surface(&spec, None).unwrap();
        assert!(s.metadata.generation.as_ref().unwrap().default_ranges);
    }

    #[test]
    fn grid_validation_and_guard() {
        let mut spec = GridSpec::dimensionless_default(ProbabilityKind::P1, 1, 4);
        assert!(matches!(spec.validate(), Err(Error::Domain(_))));
        spec.nx = 20_000;
        spec.ny = 20_000;
        assert!(matches!(spec.validate(), Err(Error::Resource { .. })));
        spec.nx = 4;
        spec.ny = 4;
        spec.x_min = -1.0;
        assert!(spec.validate().is_err());
        spec.x_min = 0.0;
        spec.y_max = spec.y_min;
        assert!(spec.validate().is_err());
    }

    #[test]
    fn slice_examples() {
        let s = spectral_slice(ProbabilityKind::P1, FRAC_PI_2, 1.0, (-3.0, 3.0), 61).unwrap();
        assert_eq!(s.detunings[30], 0.0);
        assert!((s.values[30] - 1.0).abs() < 1e-15);
        let s = spectral_slice(ProbabilityKind::P2, 10.0, 1.0, (-3.0, 3.0), 61).unwrap();
        assert_eq!(s.values[30], 10f64.sin().powi(2));
        for (&d, &v) in s.detunings.iter().zip(&s.values) {
            assert_eq!(v, p2(1.0, d, 10.0).unwrap());
        }
        assert!(spectral_slice(ProbabilityKind::P2, 0.0, 1.0, (-1.0, 1.0), 5).is_err());
        assert!(spectral_slice(ProbabilityKind::P2, 1.0, 1.0, (1.0, -1.0), 5).is_err());
        assert!(spectral_slice(ProbabilityKind::P2, 1.0, 1.0, (-1.0, 1.0), 1).is_err());
    }

    #[test]
    fn p1_peak_at_resonance() {
        for omega in [1.0, 3.0e8] {
            let tau = FRAC_PI_2 / omega;
            let peaks = find_unit_peaks(ProbabilityKind::P1, omega, tau, (-5.0 * omega, 5.0 * omega), 1e-9)
                .unwrap();
            assert_eq!(peaks.len(), 1, "{peaks:?}");
            assert_eq!(peaks[0].detuning, 0.0);
            assert!((p1(omega, 0.0, tau).unwrap() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn p2_peaks_symmetric() {
        let peaks = find_unit_peaks(ProbabilityKind::P2, 1.0, 10.0, (-3.0, 3.0), 1e-9).unwrap();
        assert!(!peaks.is_empty());
        assert_eq!(peaks.len() % 2, 0);
        for w in peaks.windows(2) {
            assert!(w[0].detuning < w[1].detuning);
        }
        let n = peaks.len();
        for k in 0..n {
            assert_eq!(peaks[k].detuning, -peaks[n - 1 - k].detuning);
            assert!((p2(1.0, peaks[k].detuning, 10.0).unwrap() - 1.0).abs() <= 1e-9);
        }
    }

    #[test]
    fn p2_no_peaks_below_quarter_period() {
        for tau in [0.5, 1.0, 1.5] {
            let peaks = find_unit_peaks(ProbabilityKind::P2, 1.0, tau, (-10.0, 10.0), 1e-6).unwrap();
            assert!(peaks.is_empty(), "tau={tau}: {peaks:?}");
        }
    }

    #[test]
    fn peak_tolerance_validation() {
        assert!(find_unit_peaks(ProbabilityKind::P2, 1.0, 10.0, (-3.0, 3.0), 0.0).is_err());
        assert!(find_unit_peaks(ProbabilityKind::P2, 1.0, 10.0, (-3.0, 3.0), 0.1).is_err());
    }

    #[test]
    fn attach_peaks_fills_slice() {
        let mut s = spectral_slice(ProbabilityKind::P2, 10.0, 1.0, (-3.0, 3.0), 101).unwrap();
        s.attach_peaks(1e-9).unwrap();
        assert!(!s.peaks.is_empty());
    }
}

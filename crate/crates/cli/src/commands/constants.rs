use serde::Serialize;
use twolevel::physcore::units::DisplayUnit;
use twolevel::physcore::{
    field_from_intensity, intensity_from_field, rabi_from_field, spontaneous_emission_time,
    AtomPreset, ATOMIC_UNIT_DIPOLE,
};

use crate::args::{ConstantsArgs, ReportFormat};
use crate::failure::CliError;
use crate::output::{emit, json_bytes, Provenance};

#[derive(Debug, Serialize)]
struct AtomSi {
    omega0_rad_s: f64,
    dipole_c_m: f64,
    t_s_s: f64,
    gamma_s_per_s: f64,
    fine_splitting_rad_s: Option<f64>,
}

#[derive(Debug, Serialize)]
struct AtomDisplay {
    transition_frequency: String,
    dipole: String,
    t_s: String,
    gamma_s: String,
    fine_splitting: Option<String>,
}

/// One point of the field ↔ intensity ↔ Rabi frequency chain.
#[derive(Debug, Serialize)]
struct OperatingPoint {
    field_v_per_m: f64,
    intensity_w_per_m2: f64,
    omega_nu_per_s: f64,
    omega_rabi_rad_s: f64,
    display: OperatingDisplay,
}

#[derive(Debug, Serialize)]
struct OperatingDisplay {
    field: String,
    intensity: String,
    omega_nu: String,
    omega_rabi: String,
}

#[derive(Debug, Serialize)]
struct ConstantsReport {
    provenance: Provenance,
    atom: String,
    notes: String,
    si: AtomSi,
    display: AtomDisplay,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    operating_points: Vec<OperatingPoint>,
}

fn operating_point(atom: &AtomPreset, field: f64) -> Result<OperatingPoint, CliError> {
    let intensity = intensity_from_field(field)?;
    let rabi = rabi_from_field(atom, field)?;
    Ok(OperatingPoint {
        field_v_per_m: field,
        intensity_w_per_m2: intensity,
        omega_nu_per_s: rabi.omega_nu,
        omega_rabi_rad_s: rabi.omega,
        display: OperatingDisplay {
            field: DisplayUnit::VoltPerCm.format(field, 3),
            intensity: DisplayUnit::MilliwattPerCm2.format(intensity, 2),
            omega_nu: DisplayUnit::MegaPerSecond.format(rabi.omega_nu, 1),
            omega_rabi: DisplayUnit::MegaRadPerSecond.format(rabi.omega, 1),
        },
    })
}

fn build(args: &ConstantsArgs) -> Result<ConstantsReport, CliError> {
    let atom = args.preset.resolve()?;
    let t_s = spontaneous_emission_time(&atom)?;
    let mut operating_points = Vec::new();
    if let Some(e0) = args.field_v_per_m {
        operating_points.push(operating_point(&atom, e0)?);
    }
    if let Some(i) = args.intensity_w_per_m2 {
        operating_points.push(operating_point(&atom, field_from_intensity(i)?)?);
    }
    Ok(ConstantsReport {
        provenance: Provenance::new("constants", args)?,
        si: AtomSi {
            omega0_rad_s: atom.omega0,
            dipole_c_m: atom.dipole,
            t_s_s: t_s,
            gamma_s_per_s: 1.0 / t_s,
            fine_splitting_rad_s: atom.fine_splitting,
        },
        display: AtomDisplay {
            transition_frequency: format!(
                "2pi x {:.4e} Hz",
                atom.omega0 / std::f64::consts::TAU
            ),
            dipole: format!("{:.4} a.u.", atom.dipole / ATOMIC_UNIT_DIPOLE),
            t_s: DisplayUnit::Nanoseconds.format(t_s, 1),
            gamma_s: DisplayUnit::MegaPerSecond.format(1.0 / t_s, 1),
            fine_splitting: atom
                .fine_splitting
                .map(|w| DisplayUnit::GigaRadPerSecond.format(w, 2)),
        },
        atom: atom.name,
        notes: atom.notes,
        operating_points,
    })
}

fn text(r: &ConstantsReport) -> String {
    let mut s = r.provenance.comment_lines();
    let mut line = |k: &str, v: String| s.push_str(&format!("{k:<22}{v}\n"));
    line("atom", r.atom.clone());
    line("omega0", format!("{:e} rad/s ({})", r.si.omega0_rad_s, r.display.transition_frequency));
    line("dipole", format!("{:e} C m ({})", r.si.dipole_c_m, r.display.dipole));
    line("t_S", format!("{:e} s ({})", r.si.t_s_s, r.display.t_s));
    line("gamma_S", format!("{:e} 1/s ({})", r.si.gamma_s_per_s, r.display.gamma_s));
    if let (Some(w), Some(d)) = (r.si.fine_splitting_rad_s, &r.display.fine_splitting) {
        line("fine splitting", format!("{w:e} rad/s ({d})"));
    }
    for p in &r.operating_points {
        line(
            "operating point",
            format!(
                "E0 = {} -> I = {}, Omega_nu = {}, Omega = {}",
                p.display.field, p.display.intensity, p.display.omega_nu, p.display.omega_rabi
            ),
        );
    }
    if !r.notes.is_empty() {
        line("notes", r.notes.clone());
    }
    s
}

pub fn run(args: &ConstantsArgs) -> Result<(), CliError> {
    let report = build(args)?;
    let bytes = match args.format {
        ReportFormat::Json => json_bytes(&report)?,
        ReportFormat::Text => text(&report).into_bytes(),
    };
    emit(args.out.as_deref(), &bytes)
}

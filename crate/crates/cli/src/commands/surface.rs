use serde_json::Value;
use twolevel::dynamics::{DriveKind, DriveSpec};
use twolevel::surface::{
    export_surface_to_vec, generate_surface, generate_surface_with_workers, ExportFormat, GridSpec,
    ProbabilityKind, DEFAULT_X_RANGE, DEFAULT_Y_RANGE,
};

use crate::args::SurfaceArgs;
use crate::failure::CliError;
use crate::output::{emit, json_bytes, Provenance};

fn grid(args: &SurfaceArgs) -> Result<(GridSpec, Option<DriveSpec>), CliError> {
    let kind: ProbabilityKind = args.kind.into();
    if args.dimensionless {
        let spec = GridSpec {
            x_min: args.x_min.unwrap_or(DEFAULT_X_RANGE.0),
            x_max: args.x_max.unwrap_or(DEFAULT_X_RANGE.1),
            y_min: args.y_min.unwrap_or(DEFAULT_Y_RANGE.0),
            y_max: args.y_max.unwrap_or(DEFAULT_Y_RANGE.1),
            nx: args.nx,
            ny: args.ny,
            dimensionless: true,
            kind,
        };
        return Ok((spec, None));
    }
    let omega = args.omega_rabi_radps.ok_or_else(|| {
        CliError::Usage("physical axes need --omega-rabi-radps (or pass --dimensionless)".into())
    })?;
    if omega == 0.0
        && (args.tau_max_s.is_none()
            || (args.detuning_radps.is_none()
                && (args.detuning_min_radps.is_none() || args.detuning_max_radps.is_none())))
    {
        return Err(CliError::Usage(
            "with Ω = 0 the time and detuning axes must be given explicitly".into(),
        ));
    }
    // Unset bounds follow the dimensionless defaults scaled by Ω.
    let tau_min = args.tau_min_s.unwrap_or(0.0);
    let tau_max = args.tau_max_s.unwrap_or_else(|| DEFAULT_X_RANGE.1 / omega);
    let (det_min, det_max) = match args.detuning_radps {
        Some(d) => (-d, d),
        None => (
            args.detuning_min_radps.unwrap_or(DEFAULT_Y_RANGE.0 * omega),
            args.detuning_max_radps.unwrap_or(DEFAULT_Y_RANGE.1 * omega),
        ),
    };
    let spec = GridSpec {
        x_min: tau_min,
        x_max: tau_max,
        y_min: det_min,
        y_max: det_max,
        nx: args.nx,
        ny: args.ny,
        dimensionless: false,
        kind,
    };
    // The surface sweeps the detuning along y; the drive records the
    // configuration at the edge of the sweep (ω₀ ± Δω for the pair).
    let edge = args
        .detuning_radps
        .unwrap_or_else(|| det_min.abs().max(det_max.abs()));
    let drive = match kind.drive_kind() {
        DriveKind::Monochromatic => DriveSpec::monochromatic(omega, edge)?,
        DriveKind::BichromaticSymmetric => DriveSpec::bichromatic(omega, edge)?,
    };
    Ok((spec, Some(drive)))
}

pub fn run(args: &SurfaceArgs) -> Result<(), CliError> {
    let (spec, drive) = grid(args)?;
    // Refuse oversized grids before allocating anything.
    spec.validate()?;
    let surface = match args.workers {
        Some(w) => generate_surface_with_workers(&spec, drive.as_ref(), w)?,
        None => generate_surface(&spec, drive.as_ref())?,
    };
    let provenance = Provenance::new("surface", args)?;
    let format: ExportFormat = args.format.into();
    let bytes = match format {
        ExportFormat::Json => {
            let mut value = serde_json::to_value(&surface)?;
            if let Value::Object(map) = &mut value {
                map.insert("provenance".into(), serde_json::to_value(&provenance)?);
            }
            json_bytes(&value)?
        }
        ExportFormat::Csv | ExportFormat::Matrix => {
            let mut bytes = provenance.comment_lines().into_bytes();
            bytes.extend(export_surface_to_vec(&surface, format)?);
            bytes
        }
    };
    emit(args.out.as_deref(), &bytes)
}

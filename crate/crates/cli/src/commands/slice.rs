use serde::Serialize;
use twolevel::surface::{format_f64, spectral_slice, SpectralSlice, UnitPeak};

use crate::args::{SliceArgs, TableFormat};
use crate::failure::CliError;
use crate::output::{emit, json_bytes, Provenance};

#[derive(Debug, Serialize)]
struct SliceReport<'a> {
    provenance: Provenance,
    peak_tol: Option<f64>,
    slice: &'a SpectralSlice,
}

/// `detuning,p` records; with peaks, a second `peak_detuning,probability,residual`
/// table follows after a blank line.
fn csv(provenance: &Provenance, slice: &SpectralSlice, peaks: Option<f64>) -> String {
    let mut s = provenance.comment_lines();
    s.push_str("detuning,p\n");
    for (d, p) in slice.detunings.iter().zip(&slice.values) {
        s.push_str(&format!("{},{}\n", format_f64(*d), format_f64(*p)));
    }
    if let Some(tol) = peaks {
        s.push_str(&format!("\n# unit-probability peaks, |P - 1| <= {tol:e}\n"));
        s.push_str("peak_detuning,probability,residual\n");
        for pk in &slice.peaks {
            s.push_str(&format!(
                "{},{},{}\n",
                format_f64(pk.detuning),
                format_f64(pk.probability),
                format_f64(pk.residual)
            ));
        }
    }
    s
}

fn peak_summary(peaks: &[UnitPeak]) -> String {
    let mut s = format!("{} unit-probability peak(s)\n", peaks.len());
    for pk in peaks {
        s.push_str(&format!(
            "  detuning {} rad/s  P = {}  residual {:e}\n",
            format_f64(pk.detuning),
            format_f64(pk.probability),
            pk.residual
        ));
    }
    s
}

pub fn run(args: &SliceArgs) -> Result<(), CliError> {
    let mut slice = spectral_slice(
        args.kind.into(),
        args.tau_s,
        args.omega_rabi_radps,
        (args.detuning_min_radps, args.detuning_max_radps),
        args.n,
    )?;
    let peak_tol = args.find_peaks.then_some(args.peak_tol);
    if let Some(tol) = peak_tol {
        slice.attach_peaks(tol)?;
    }
    let provenance = Provenance::new("slice", args)?;
    let bytes = match args.format {
        TableFormat::Csv => csv(&provenance, &slice, peak_tol).into_bytes(),
        TableFormat::Json => json_bytes(&SliceReport {
            provenance,
            peak_tol,
            slice: &slice,
        })?,
    };
    emit(args.out.as_deref(), &bytes)?;
    if peak_tol.is_some() && args.out.is_some() {
        emit(None, peak_summary(&slice.peaks).as_bytes())?;
    }
    Ok(())
}

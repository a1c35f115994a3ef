use serde::Serialize;
use twolevel::oracle::{run_suite, OdeConfig, SuiteReport};

use crate::args::ValidateArgs;
use crate::failure::CliError;
use crate::output::{emit, json_bytes, Provenance};

#[derive(Debug, Serialize)]
struct ValidateReport {
    provenance: Provenance,
    informational: bool,
    report: SuiteReport,
}

pub fn run(args: &ValidateArgs) -> Result<(), CliError> {
    let cfg = OdeConfig {
        method: args.method.into(),
        ..OdeConfig::with_tolerances(args.rel_tol, args.abs_tol)?
    };
    let report = run_suite(args.suite.into(), &cfg, args.bar)?;
    let passed = report.passed;
    let summary = format!(
        "{} cases, worst max abs error {:e} against bar {:e}",
        report.cases.len(),
        report.worst_max_abs_error,
        report.bar
    );
    let bytes = json_bytes(&ValidateReport {
        provenance: Provenance::new("validate", args)?,
        informational: args.informational,
        report,
    })?;
    emit(args.out.as_deref(), &bytes)?;
    if passed || args.informational {
        Ok(())
    } else {
        Err(CliError::ValidationFailed(summary))
    }
}

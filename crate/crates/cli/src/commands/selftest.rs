use nonrecip_core::selftest::{run_selftest, SelftestOptions, SelftestReport, Status};
use nonrecip_core::spectral::QuadratureConfig;
use serde::Deserialize;
use serde_json::Value;

use crate::config::parse;
use crate::dataset::{Cell, Dataset};
use crate::error::CliError;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct SelftestConfig {
    #[serde(default)]
    options: SelftestOptions,
}

pub fn run(value: Value, cfg: &QuadratureConfig) -> Result<(Dataset, SelftestReport), CliError> {
    let config: SelftestConfig = parse(value)?;
    let report = run_selftest(&config.options, cfg)?;
    let mut data = Dataset::new(["check", "status", "max_error [1]", "tolerance [1]", "samples [1]"]);
    for row in &report.rows {
        let status = match row.status {
            Status::Pass => "pass",
            Status::Fail => "fail",
        };
        data.push(vec![
            Cell::from(row.name.as_str()),
            Cell::from(status),
            row.max_error.into(),
            row.tolerance.into(),
            row.samples.into(),
        ]);
    }
    Ok((data, report))
}

/// Fixed-width table for a terminal.
pub fn render_table(report: &SelftestReport) -> String {
    let width = report.rows.iter().map(|r| r.name.len()).max().unwrap_or(0);
    let mut out = String::new();
    for row in &report.rows {
        let status = match row.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        };
        out.push_str(&format!(
            "{status}  {:<width$}  max error {:.3e}  tolerance {:.0e}  ({} samples)\n",
            row.name, row.max_error, row.tolerance, row.samples
        ));
    }
    out
}

use serde_json::json;

use meyerkit::cert::massicot_wagner_bound;

use crate::report::RunReport;
use crate::{BoundsArgs, CliError};

pub(super) fn run(args: &BoundsArgs) -> Result<RunReport, CliError> {
    let mut report = RunReport::new("bounds", json!({ "K": args.k, "m": args.m }));
    let bound = massicot_wagner_bound(args.k, args.m)?;
    report.insert("massicot_wagner", &bound);
    Ok(report)
}

use meyerkit::cps::generate_patch;

use super::{load, record_validation};
use crate::report::RunReport;
use crate::{CliError, GenerateArgs};

pub(super) fn run(args: &GenerateArgs) -> Result<RunReport, CliError> {
    let inputs = load(&args.scheme, None)?;
    let mut report = RunReport::new("generate", inputs.inputs.clone());
    if !record_validation(&mut report, &inputs) {
        return Ok(report);
    }
    if args.exact && args.out.is_none() {
        return Err(CliError::Usage("--exact needs --out".into()));
    }
    let s = &inputs.scheme;
    let patch = generate_patch(s, &inputs.window, &inputs.bx)?;
    if let Some(out) = &args.out {
        let csv = patch.to_csv(s.rank(), s.physical_dim(), s.internal_dim());
        write(out, &csv)?;
        if args.exact {
            let mut path = out.clone().into_os_string();
            path.push(".exact.json");
            let text = serde_json::to_string_pretty(&patch.to_exact_json()).expect("json");
            write(std::path::Path::new(&path), &text)?;
        }
    }
    report.insert("points", patch.len());
    report.insert("candidates", patch.candidates.to_string());
    report.insert("index_bounds", &patch.index_bounds);
    if let (Some(first), Some(last)) = (patch.points.first(), patch.points.last()) {
        report.insert("first", first.physical_f64());
        report.insert("last", last.physical_f64());
    } else {
        report.warn("the patch is empty");
    }
    Ok(report)
}

fn write(path: &std::path::Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

mod bounds;
mod generate;
mod qm;
mod verify;

use std::path::Path;

use serde_json::json;

use meyerkit::cps::{load_scheme, validate_scheme, CutProjectScheme, SchemeValidation, Window};
use meyerkit::exact::RationalBox;

use crate::report::RunReport;
use crate::{Cli, CliError, Command, SchemeArgs};

pub(crate) const DENSITY_NOTE: &str =
    "density of the internal projection is not certified; only the per-axis necessary condition is checked";

pub(crate) fn dispatch(cli: &Cli) -> Result<RunReport, CliError> {
    match &cli.command {
        Command::Generate(args) => generate::run(args),
        Command::Verify(args) => verify::run(args),
        Command::Qm(args) => qm::run(args),
        Command::Bounds(args) => bounds::run(args),
    }
}

/// A scheme file with its parsed window and box.
pub(crate) struct SchemeInputs {
    pub scheme: CutProjectScheme,
    pub window: Window,
    pub bx: RationalBox,
    pub validation: SchemeValidation,
    /// Canonical description of the inputs for the report digest.
    pub inputs: serde_json::Value,
}

pub(crate) fn load(args: &SchemeArgs, default_box: Option<&str>) -> Result<SchemeInputs, CliError> {
    let text = read(&args.scheme)?;
    let scheme = match load_scheme(&args.scheme) {
        Ok(Ok(s)) => s,
        Ok(Err(e)) => return Err(CliError::Usage(format!("{}: {e}", args.scheme.display()))),
        Err(e) => return Err(CliError::Io(format!("{}: {e}", args.scheme.display()))),
    };
    let window = parse_window(&args.window, scheme.internal_dim())?;
    let box_text = match (&args.bx, default_box) {
        (Some(b), _) => b.clone(),
        (None, Some(axis)) => vec![axis; scheme.physical_dim()].join(","),
        (None, None) => return Err(CliError::Usage("--box is required".into())),
    };
    let bx = RationalBox::parse(&box_text)?;
    if bx.dim() != scheme.physical_dim() {
        return Err(CliError::Usage(format!(
            "box has {} axes but the scheme has physical dimension {}",
            bx.dim(),
            scheme.physical_dim()
        )));
    }
    let validation = validate_scheme(&scheme);
    let inputs = json!({
        "scheme_sha256": crate::report::digest(&json!(text)),
        "scheme": scheme.name(),
        "window": window,
        "box": bx.to_string(),
    });
    Ok(SchemeInputs { scheme, window, bx, validation, inputs })
}

/// One half-width is broadcast to every internal axis; with no internal
/// space the window is `{0}` whatever was given.
fn parse_window(text: &str, m: usize) -> Result<Window, CliError> {
    if m == 0 {
        return Ok(Window::trivial());
    }
    let w = Window::parse(text)?;
    match w.dim() {
        d if d == m => Ok(w),
        1 => Ok(Window::cube(m, w.half_widths()[0].clone())?),
        d => Err(CliError::Usage(format!("window has {d} half-widths, scheme needs {m}"))),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// Records validation results; `false` when a rank check failed.
pub(crate) fn record_validation(report: &mut RunReport, inputs: &SchemeInputs) -> bool {
    report.insert("validation", inputs.validation);
    if !inputs.validation.internal_dense_necessary {
        report.warn("an internal coordinate of the lattice is not dense: not a cut-and-project scheme");
    }
    report.warn(DENSITY_NOTE);
    if let Some(check) = inputs.validation.first_failure().filter(|_| !inputs.validation.ranks_ok()) {
        report.insert("failed_check", check);
        report.fail();
        return false;
    }
    true
}

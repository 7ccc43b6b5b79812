use serde_json::json;

use meyerkit::cert::{covering_radius, min_gap, product_cover_check};
use meyerkit::cps::{
    doubling_witness, generate_patch, good_model_tower, graph_min_gap, physical_min_norm, ModelSetPatch,
    SchemeView,
};
use meyerkit::exact::{integer, Rational};

use super::{load, record_validation, SchemeInputs, DENSITY_NOTE};
use crate::report::RunReport;
use crate::{CliError, VerifyArgs};

const DEFAULT_BOX_AXIS: &str = "-50..50";
const DEFAULT_TOWER_DEPTH: usize = 5;
/// Relative slack when comparing a float gap with an exact lower bound.
const GAP_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Check {
    Discrete3,
    Dense,
    Cover,
    Tower(usize),
    Graph,
}

fn parse_checks(text: &str) -> Result<Vec<Check>, CliError> {
    let mut out = Vec::new();
    for name in text.split(',').map(str::trim) {
        match name {
            "all" => out.extend([
                Check::Discrete3,
                Check::Dense,
                Check::Cover,
                Check::Tower(DEFAULT_TOWER_DEPTH),
                Check::Graph,
            ]),
            "discrete3" => out.push(Check::Discrete3),
            "dense" => out.push(Check::Dense),
            "cover" => out.push(Check::Cover),
            "graph" => out.push(Check::Graph),
            "tower" => out.push(Check::Tower(DEFAULT_TOWER_DEPTH)),
            _ => match name.strip_prefix("tower:").map(str::parse::<usize>) {
                Some(Ok(n)) if n >= 1 => out.push(Check::Tower(n)),
                _ => return Err(CliError::Usage(format!("unknown check `{name}`"))),
            },
        }
    }
    out.dedup();
    Ok(out)
}

pub(super) fn run(args: &VerifyArgs) -> Result<RunReport, CliError> {
    let checks = parse_checks(&args.checks)?;
    let inputs = load(&args.scheme, Some(DEFAULT_BOX_AXIS))?;
    let mut digest_inputs = inputs.inputs.clone();
    digest_inputs["checks"] = json!(args.checks);
    let mut report = RunReport::new("verify", digest_inputs);
    if !record_validation(&mut report, &inputs) {
        return Ok(report);
    }
    let patch = generate_patch(&inputs.scheme, &inputs.window, &inputs.bx)?;
    report.insert("points", patch.len());
    if patch.is_empty() {
        report.insert("degenerate", true);
        report.warn("the patch is empty; no check can be verified");
        report.fail();
        return Ok(report);
    }
    let mut verdicts = serde_json::Map::new();
    for check in checks {
        let (name, (ok, value)) = match check {
            Check::Discrete3 => ("discrete3".to_string(), discrete3(&inputs, &patch)?),
            Check::Dense => ("dense".to_string(), dense(&inputs, &patch)),
            Check::Cover => ("cover".to_string(), cover(&inputs, &patch)?),
            Check::Tower(n) => (format!("tower:{n}"), tower(&inputs, n)?),
            Check::Graph => ("graph".to_string(), graph(&inputs)?),
        };
        if !ok {
            report.fail();
        }
        verdicts.insert(name.clone(), json!(ok));
        report.insert(&name, value);
    }
    report.insert("verdicts", verdicts);
    Ok(report)
}

/// Minimum gap of `Λ^3`, compared with the exact smallest nonzero point of
/// `P_0(6W)`, which contains every difference of two points of `Λ^3`.
fn discrete3(inputs: &SchemeInputs, patch: &ModelSetPatch) -> Result<(bool, serde_json::Value), CliError> {
    let view = SchemeView::new(&inputs.scheme);
    let report = min_gap(&view, &patch.indices(), 3);
    let bound = if inputs.scheme.internal_dim() == 0 {
        None
    } else {
        let six = inputs.window.scaled(&integer(6))?;
        let closed = meyerkit::cps::Window::closed(six.half_widths().to_vec())?;
        Some(physical_min_norm(&inputs.scheme, &closed)?)
    };
    let ok = match (report.gap, &bound) {
        (Some(g), Some(b)) => g > 0.0 && g >= b.norm * (1.0 - GAP_TOLERANCE) && !report.is_degenerate(),
        (Some(g), None) => g > 0.0 && !report.is_degenerate(),
        (None, _) => false,
    };
    Ok((
        ok,
        json!({
            "gap": report.gap,
            "points": report.points,
            "witness": report.witness,
            "zero_distance_pairs": report.zero_distance_pairs,
            "lower_bound": bound.as_ref().map(|b| b.norm),
            "lower_bound_witness": bound.as_ref().map(|b| b.witness.clone()),
        }),
    ))
}

fn grid_step(inputs: &SchemeInputs) -> Rational {
    let per_axis = match inputs.scheme.physical_dim() {
        1 => 4096,
        2 => 256,
        _ => 24,
    };
    let width = inputs.bx.axes().iter().map(|a| a.width()).min().expect("box has axes");
    if width > integer(0) {
        width / integer(per_axis)
    } else {
        integer(1)
    }
}

/// Covering radius over a grid of the box. In dimension one it is also
/// compared with half the largest gap between consecutive points.
fn dense(inputs: &SchemeInputs, patch: &ModelSetPatch) -> (bool, serde_json::Value) {
    let step = grid_step(inputs);
    let cover = covering_radius(&patch.physical_f64(), &inputs.bx, &step);
    let mut value = json!({
        "covering_radius": cover.radius,
        "grid_slack": cover.slack,
        "bound": cover.bound(),
        "grid_nodes": cover.nodes,
        "worst_node": cover.worst_node,
        "internal_dense_necessary": inputs.validation.internal_dense_necessary,
        "note": DENSITY_NOTE,
    });
    let mut ok = cover.radius.is_finite() && inputs.validation.internal_dense_necessary;
    if inputs.scheme.physical_dim() == 1 {
        let gaps = patch.consecutive_gaps();
        let largest = gaps.iter().copied().fold(0.0, f64::max);
        // the box ends count as gaps to the outermost points
        let (lo, hi) = inputs.bx.to_f64()[0];
        let first = patch.points[0].physical_f64()[0];
        let last = patch.points[patch.len() - 1].physical_f64()[0];
        let edge = (first - lo).max(hi - last);
        let limit = (largest / 2.0).max(edge) + cover.slack;
        ok &= cover.radius <= limit;
        value["largest_gap"] = json!(largest);
        value["gap_alphabet"] = json!(alphabet(&gaps));
        value["radius_limit"] = json!(limit);
    }
    (ok, value)
}

/// Distinct values up to `1e-9`, ascending.
pub(crate) fn alphabet(values: &[f64]) -> Vec<f64> {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    v.dedup_by(|a, b| (*a - *b).abs() <= GAP_TOLERANCE);
    v
}

/// `Λ^2 ⊆ F Λ`: `F` from the cover of `W + W` by translates of `W`, then
/// every product of patch points checked exactly.
fn cover(inputs: &SchemeInputs, patch: &ModelSetPatch) -> Result<(bool, serde_json::Value), CliError> {
    let s = &inputs.scheme;
    let cert = doubling_witness(s, &inputs.window, &inputs.bx)?;
    let view = SchemeView::new(s);
    let product = product_cover_check(&view, &patch.indices(), &cert.witnesses, |z| {
        view.in_window(&inputs.window, z)
    });
    let ok = cert.holds() && product.verified;
    Ok((
        ok,
        json!({
            "F": cert.witnesses,
            "size": cert.size(),
            "internal_cover_proved": cert.complete,
            "doubling_certificate_verified": cert.verified,
            "pairs_checked": product.checked,
            "uncovered_products": product.failures.len(),
        }),
    ))
}

fn tower(inputs: &SchemeInputs, depth: usize) -> Result<(bool, serde_json::Value), CliError> {
    let (report, _) = good_model_tower(&inputs.scheme, &inputs.window, depth, &inputs.bx)?;
    Ok((report.verified(), serde_json::to_value(&report).expect("tower report")))
}

fn graph(inputs: &SchemeInputs) -> Result<(bool, serde_json::Value), CliError> {
    let radius = match inputs.scheme.rank() {
        0..=2 => 20,
        3 => 10,
        4 => 5,
        _ => 2,
    };
    let g = graph_min_gap(&inputs.scheme, radius)?;
    Ok((
        g.gap > 0.0,
        json!({
            "gap": g.gap,
            "norm_squared": g.norm_squared.to_string(),
            "witness": g.witness,
            "search_radius": g.search_radius,
            "note": "shortest graph vector within the index search radius, not a certified global minimum",
        }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_names() {
        assert_eq!(parse_checks("all").unwrap().len(), 5);
        assert_eq!(parse_checks("tower:3,graph").unwrap(), vec![Check::Tower(3), Check::Graph]);
        assert!(parse_checks("tower:0").is_err());
        assert!(parse_checks("speed").is_err());
    }

    #[test]
    fn alphabet_merges_close_values() {
        assert_eq!(alphabet(&[1.0, 2.0, 1.0 + 1e-12, 2.0]), vec![1.0, 2.0]);
    }
}

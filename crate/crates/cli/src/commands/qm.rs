use serde_json::json;

use meyerkit::exact::{integer, parse_rational, Rational};
use meyerkit::freegroup::{
    defect_max, homogenize_estimate, qm_commensurability_witness, quasi_kernel_cover, quasi_kernel_patch,
    BrooksQM, Conjugated, ReducedWord, MAX_RANK,
};
use meyerkit::Error;

use crate::report::RunReport;
use crate::{CliError, QmAction, QmArgs};

/// Smallest rank (at least 2) whose alphabet covers the letters of `text`.
fn inferred_rank(text: &str) -> u32 {
    text.chars()
        .filter(char::is_ascii_alphabetic)
        .map(|c| (c.to_ascii_lowercase() as u32) - ('a' as u32) + 1)
        .max()
        .unwrap_or(0)
        .max(2)
}

fn parse_threshold(text: &str, what: &str) -> Result<Rational, CliError> {
    parse_rational(text).map_err(|e| CliError::Usage(format!("{what}: {e}")))
}

fn action_inputs(action: &QmAction) -> serde_json::Value {
    match action {
        QmAction::Defect { radius, budget } => json!({"action": "defect", "radius": radius, "budget": budget}),
        QmAction::Kernel { threshold, radius, .. } => {
            json!({"action": "kernel", "R": threshold, "radius": radius})
        }
        QmAction::Cover { threshold, radius, defect } => {
            json!({"action": "cover", "R": threshold, "radius": radius, "C": defect})
        }
        QmAction::Homogenize { at, power } => json!({"action": "homogenize", "at": at, "power": power}),
        QmAction::Commensurate { threshold, threshold2, radius, by, defect } => json!({
            "action": "commensurate", "R": threshold, "R2": threshold2, "radius": radius, "by": by, "C": defect,
        }),
    }
}

pub(super) fn run(args: &QmArgs) -> Result<RunReport, CliError> {
    let rank = args.rank.unwrap_or_else(|| inferred_rank(&args.word));
    if rank == 0 || rank > MAX_RANK {
        return Err(CliError::Usage(format!("rank must be between 1 and {MAX_RANK}")));
    }
    let mut inputs = action_inputs(&args.action);
    inputs["word"] = json!(args.word);
    inputs["rank"] = json!(rank);
    let mut report = RunReport::new("qm", inputs);

    let (word, changed) = ReducedWord::parse_reducing(rank, &args.word)?;
    if changed {
        report.warn(format!("`{}` was not reduced; using `{word}`", args.word));
    }
    let f = BrooksQM::new(word.clone())?;
    if f.is_excluded_pattern() {
        report.warn(format!(
            "pattern `{word}` is a generator or its inverse: f is a homomorphism and falls outside the non-Meyer example; the lemmas still apply"
        ));
    }
    report.insert("word", word.to_string());
    report.insert("pattern_length", word.len());
    let analytic = f.analytic_defect_bound();
    report.insert("analytic_defect_bound", analytic);

    match &args.action {
        QmAction::Defect { radius, budget } => {
            let d = defect_max(&f, *radius, *budget)?;
            if !d.exhaustive {
                report.warn("scan budget reached: the defect is a partial lower bound");
            }
            if d.within_bound != Some(true) {
                report.fail();
            }
            report.insert("defect", &d);
        }
        QmAction::Kernel { threshold, radius, out } => {
            let r = parse_threshold(threshold, "--R")?;
            let patch = quasi_kernel_patch(&f, &r, *radius)?;
            if let Some(path) = out {
                std::fs::write(path, patch.to_lines())
                    .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            }
            report.insert("threshold", r.to_string());
            report.insert("radius", radius);
            report.insert("size", patch.len());
            report.insert("symmetric", {
                let set: std::collections::HashSet<_> = patch.elements().into_iter().collect();
                set.iter().all(|g| set.contains(&g.inv()))
            });
        }
        QmAction::Cover { threshold, radius, defect } => {
            let r = parse_threshold(threshold, "--R")?;
            let c = defect_constant(defect.as_deref(), analytic)?;
            report.insert("C_used", c.to_string());
            match quasi_kernel_cover(&f, &r, &c, *radius) {
                Ok(cover) => {
                    if !cover.certificate.holds() || cover.certificate.bound_satisfied != Some(true) {
                        report.fail();
                    }
                    report.insert("cover", &cover);
                }
                Err(Error::Domain(msg)) => hypothesis_violated(&mut report, msg),
                Err(e) => return Err(e.into()),
            }
        }
        QmAction::Homogenize { at, power } => {
            let targets: Vec<ReducedWord> = match at {
                Some(list) => list
                    .split(',')
                    .map(|t| ReducedWord::parse_reducing(rank, t.trim()).map(|(w, _)| w))
                    .collect::<Result<_, _>>()?,
                None => std::iter::once(Ok(word.clone()))
                    .chain((1..=rank as i32).map(|i| ReducedWord::generator(rank, i)))
                    .collect::<Result<_, _>>()?,
            };
            let mut estimates = serde_json::Map::new();
            for g in &targets {
                estimates.insert(g.to_string(), serde_json::to_value(homogenize_estimate(&f, g, *power)?).expect("json"));
            }
            report.insert("power", power);
            report.insert("estimates", estimates);
        }
        QmAction::Commensurate { threshold, threshold2, radius, by, defect } => {
            let r1 = parse_threshold(threshold, "--R")?;
            let r2 = match threshold2 {
                Some(t) => parse_threshold(t, "--R2")?,
                None => r1.clone(),
            };
            let c = defect_constant(defect.as_deref(), analytic)?;
            let by = match by {
                Some(t) => ReducedWord::parse_reducing(rank, t)?.0,
                None => ReducedWord::from_letters(rank, word.letters()[..1].to_vec())?,
            };
            let g = Conjugated::new(f.clone(), by.clone())?;
            report.insert("conjugated_by", by.to_string());
            report.insert("C_used", c.to_string());
            match qm_commensurability_witness(&f, &r1, &c, &g, &r2, &c, *radius) {
                Ok(w) => {
                    if !w.verified() {
                        report.fail();
                    }
                    report.insert("commensurability", &w);
                }
                Err(Error::Domain(msg)) => hypothesis_violated(&mut report, msg),
                Err(e) => return Err(e.into()),
            }
        }
    }
    Ok(report)
}

fn defect_constant(text: Option<&str>, analytic: i64) -> Result<Rational, CliError> {
    match text {
        Some(t) => parse_threshold(t, "--C"),
        None => Ok(integer(analytic)),
    }
}

fn hypothesis_violated(report: &mut RunReport, msg: String) {
    report.insert("hypothesis", "R > C(f)");
    report.insert("hypothesis_violated", msg);
    report.fail();
}

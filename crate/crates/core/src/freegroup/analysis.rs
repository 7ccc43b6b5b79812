use rayon::prelude::*;
use serde::Serialize;

use super::ball::{ball, ball_size};
use super::brooks::QuasiMorphism;
use super::word::ReducedWord;
use crate::error::{Error, Result};
use crate::exact::Rational;

#[derive(Debug, Clone, Serialize)]
pub struct DefectReport {
    pub radius: usize,
    /// Largest `|f(gh) - f(g) - f(h)|` found. A lower bound for the true
    /// defect, which is a supremum over the whole group.
    pub max_defect: i64,
    pub witness: (ReducedWord, ReducedWord),
    pub pairs_checked: u64,
    /// All pairs of the ball were scanned (false when the budget cut in).
    pub exhaustive: bool,
    pub analytic_bound: Option<i64>,
    pub within_bound: Option<bool>,
}

/// Exhaustive defect scan over ordered pairs of reduced words of length at
/// most `radius`. With a `budget`, only the first `budget` pairs in
/// enumeration order are scanned and the report is flagged partial.
pub fn defect_max<Q: QuasiMorphism>(f: &Q, radius: usize, budget: Option<u64>) -> Result<DefectReport> {
    if radius == 0 {
        return Err(Error::Domain("defect scan needs radius >= 1".into()));
    }
    let size = ball_size(f.rank(), radius);
    let total = size.saturating_mul(size);
    let limit = budget.map_or(total, |b| total.min(u128::from(b)));
    if limit > u128::from(u64::MAX) {
        return Err(Error::Domain(format!("{total} pairs exceed any scan budget")));
    }
    let words = ball(f.rank(), radius);
    let values: Vec<i64> = words.par_iter().map(|g| f.eval(g)).collect();
    let n = words.len() as u128;
    let rows = limit.div_ceil(n.max(1)) as usize;

    // (defect, i, j); ties keep the earliest pair
    let best = (0..rows)
        .into_par_iter()
        .map(|i| {
            let cols = (limit - i as u128 * n).min(n) as usize;
            let mut local = (-1i64, usize::MAX, usize::MAX);
            for j in 0..cols {
                let prod = words[i].mul_unchecked(&words[j]);
                let d = (f.eval(&prod) - values[i] - values[j]).abs();
                if d > local.0 {
                    local = (d, i, j);
                }
            }
            local
        })
        .reduce(
            || (-1, usize::MAX, usize::MAX),
            |a, b| if b.0 > a.0 || (b.0 == a.0 && (b.1, b.2) < (a.1, a.2)) { b } else { a },
        );
    let (max_defect, i, j) = if best.0 < 0 { (0, 0, 0) } else { best };
    let analytic_bound = f.defect_bound();
    Ok(DefectReport {
        radius,
        max_defect,
        witness: (words[i].clone(), words[j].clone()),
        pairs_checked: limit as u64,
        exhaustive: limit == total,
        analytic_bound,
        within_bound: analytic_bound.map(|b| max_defect <= b),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct HomogenizationEstimate {
    pub power: u64,
    /// `f(g^N) / N`, exact.
    #[serde(serialize_with = "crate::freegroup::kernel::ser_rational")]
    pub value: Rational,
    /// `C / N` with `C` the analytic defect bound: the homogenization lies
    /// within this distance of `value`.
    #[serde(serialize_with = "crate::freegroup::kernel::ser_opt_rational")]
    pub error_bound: Option<Rational>,
}

pub fn homogenize_estimate<Q: QuasiMorphism>(
    f: &Q,
    g: &ReducedWord,
    power: u64,
) -> Result<HomogenizationEstimate> {
    if power == 0 {
        return Err(Error::Domain("homogenization needs N >= 1".into()));
    }
    if g.rank() != f.rank() {
        return Err(Error::RankMismatch(f.rank(), g.rank()));
    }
    let exp = i64::try_from(power).map_err(|_| Error::Domain("N too large".into()))?;
    let value = Rational::new(f.eval(&g.pow(exp)).into(), power.into());
    let error_bound = f.defect_bound().map(|c| Rational::new(c.into(), power.into()));
    Ok(HomogenizationEstimate { power, value, error_bound })
}

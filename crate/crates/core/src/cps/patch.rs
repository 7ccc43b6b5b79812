use std::collections::HashSet;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use super::scheme::{validate_scheme, CutProjectScheme, LatticePoint};
use super::window::Window;
use crate::error::{Error, Result};
use crate::exact::{rational_ceil, rational_floor, Interval, RationalBox};
use crate::format::fmt12;

/// Candidate count above which [`generate_patch`] refuses to enumerate.
pub const DEFAULT_ENUMERATION_LIMIT: u128 = 50_000_000;

const ENCLOSURE_BITS: u32 = 96;

/// `P_0(W) ∩ box`: physical parts of the lattice points whose internal part
/// lies in the window, restricted to a physical box.
#[derive(Debug, Clone, Serialize)]
pub struct ModelSetPatch {
    pub scheme: String,
    pub window: Window,
    #[serde(rename = "box", serialize_with = "ser_box")]
    pub bx: RationalBox,
    /// Sorted lexicographically by physical coordinates, then index.
    pub points: Vec<LatticePoint>,
    /// Inclusive index ranges that were swept.
    pub index_bounds: Vec<(i64, i64)>,
    pub candidates: u128,
}

fn ser_box<S: serde::Serializer>(b: &RationalBox, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(b)
}

impl ModelSetPatch {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn indices(&self) -> Vec<Vec<i64>> {
        self.points.iter().map(|p| p.index.clone()).collect()
    }

    pub fn index_set(&self) -> HashSet<Vec<i64>> {
        self.points.iter().map(|p| p.index.clone()).collect()
    }

    pub fn physical_f64(&self) -> Vec<Vec<f64>> {
        self.points.iter().map(LatticePoint::physical_f64).collect()
    }

    /// Gaps between consecutive points of a one-dimensional patch.
    pub fn consecutive_gaps(&self) -> Vec<f64> {
        self.points
            .windows(2)
            .map(|w| (&w[1].physical[0] - &w[0].physical[0]).to_f64())
            .collect()
    }

    /// CSV with columns `idx_*, phys_*, int_*`, floats to 12 significant
    /// digits.
    pub fn to_csv(&self, k: usize, d: usize, m: usize) -> String {
        let mut header: Vec<String> = (0..k).map(|i| format!("idx_{i}")).collect();
        header.extend((0..d).map(|i| format!("phys_{i}")));
        header.extend((0..m).map(|i| format!("int_{i}")));
        let mut out = header.join(",");
        out.push('\n');
        for p in &self.points {
            let mut row: Vec<String> = p.index.iter().map(ToString::to_string).collect();
            row.extend(p.physical.iter().map(|x| fmt12(x.to_f64())));
            row.extend(p.internal.iter().map(|x| fmt12(x.to_f64())));
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    /// Exact sidecar: every coordinate as `{"a": .., "b": ..}`.
    pub fn to_exact_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("patch serializes")
    }
}

fn check_inputs(s: &CutProjectScheme, w: &Window, bx: &RationalBox) -> Result<()> {
    if w.dim() != s.internal_dim() {
        return Err(Error::DimensionMismatch { expected: s.internal_dim(), found: w.dim() });
    }
    if bx.dim() != s.physical_dim() {
        return Err(Error::DimensionMismatch { expected: s.physical_dim(), found: bx.dim() });
    }
    let v = validate_scheme(s);
    if let Some(check) = [("lattice_full_rank", v.lattice_full_rank), ("physical_injective", v.physical_injective)]
        .into_iter()
        .find_map(|(name, ok)| (!ok).then_some(name))
    {
        return Err(Error::InvalidScheme(format!("{} fails {check}", s.name())));
    }
    Ok(())
}

/// Integer ranges containing every `z` with `B z ∈ box x closure(W)`.
///
/// `z = B^-1 v`; each entry of `B^-1` is replaced by an outer rational
/// enclosure and the product with the target box is taken in interval
/// arithmetic, then rounded outward.
pub fn index_bounds(s: &CutProjectScheme, w: &Window, bx: &RationalBox) -> Result<Vec<(i64, i64)>> {
    let inv = s
        .basis()
        .inverse()
        .ok_or_else(|| Error::Internal("unbounded preimage: singular basis".into()))?;
    let mut target: Vec<Interval> = bx.axes().to_vec();
    target.extend((0..w.dim()).map(|i| {
        let (lo, hi) = w.axis(i);
        Interval::new(lo, hi)
    }));
    let k = s.rank();
    (0..k)
        .map(|i| {
            let mut acc = Interval::point(crate::exact::integer(0));
            for (j, t) in target.iter().enumerate() {
                acc = acc.add(&inv.get(i, j).enclosure(ENCLOSURE_BITS).mul(t));
            }
            let lo = rational_floor(&acc.lo).to_i64();
            let hi = rational_ceil(&acc.hi).to_i64();
            match (lo, hi) {
                (Some(lo), Some(hi)) => Ok((lo, hi)),
                _ => Err(Error::EnumerationTooLarge(u128::MAX)),
            }
        })
        .collect()
}

/// Exact membership of an index vector in `P_0(W) ∩ box`.
pub fn in_patch(s: &CutProjectScheme, w: &Window, bx: &RationalBox, index: &[i64]) -> Option<LatticePoint> {
    let internal = s.internal_of(index);
    if !w.contains(&internal) {
        return None;
    }
    let physical = s.physical_of(index);
    bx.contains(&physical).then(|| LatticePoint { index: index.to_vec(), physical, internal })
}

pub fn generate_patch(s: &CutProjectScheme, w: &Window, bx: &RationalBox) -> Result<ModelSetPatch> {
    generate_patch_with_limit(s, w, bx, DEFAULT_ENUMERATION_LIMIT)
}

/// Complete enumeration of `P_0(W) ∩ box`: every index inside
/// [`index_bounds`] is tested exactly. Work is split on the first index
/// coordinate; the merged result is sorted, so it does not depend on the
/// number of worker threads.
pub fn generate_patch_with_limit(
    s: &CutProjectScheme,
    w: &Window,
    bx: &RationalBox,
    limit: u128,
) -> Result<ModelSetPatch> {
    check_inputs(s, w, bx)?;
    let empty = ModelSetPatch {
        scheme: s.name().to_string(),
        window: w.clone(),
        bx: bx.clone(),
        points: Vec::new(),
        index_bounds: Vec::new(),
        candidates: 0,
    };
    if bx.is_empty() {
        return Ok(empty);
    }
    let bounds = index_bounds(s, w, bx)?;
    let candidates = bounds
        .iter()
        .try_fold(1u128, |acc, &(lo, hi)| acc.checked_mul((hi as i128 - lo as i128 + 1) as u128))
        .unwrap_or(u128::MAX);
    if candidates > limit {
        return Err(Error::EnumerationTooLarge(candidates));
    }
    let (first_lo, first_hi) = bounds[0];
    let rest = &bounds[1..];
    let mut points: Vec<LatticePoint> = (first_lo..=first_hi)
        .into_par_iter()
        .flat_map_iter(|z0| {
            let mut found = Vec::new();
            let mut z: Vec<i64> = std::iter::once(z0).chain(rest.iter().map(|b| b.0)).collect();
            loop {
                if let Some(p) = in_patch(s, w, bx, &z) {
                    found.push(p);
                }
                if !advance(&mut z[1..], rest) {
                    break;
                }
            }
            found
        })
        .collect();
    points.sort_by(|a, b| a.physical.cmp(&b.physical).then_with(|| a.index.cmp(&b.index)));
    Ok(ModelSetPatch { points, index_bounds: bounds, candidates, ..empty })
}

/// Odometer step over inclusive ranges; `false` after the last vector.
pub(crate) fn advance(z: &mut [i64], bounds: &[(i64, i64)]) -> bool {
    for i in (0..z.len()).rev() {
        if z[i] < bounds[i].1 {
            z[i] += 1;
            return true;
        }
        z[i] = bounds[i].0;
    }
    false
}

use num_traits::Zero;
use serde::Serialize;

use super::patch::generate_patch;
use super::scheme::{CutProjectScheme, LatticePoint};
use super::view::SchemeView;
use super::window::{window_sumset, Window};
use crate::cert::{check_cover, CoverCertificate, Relation};
use crate::error::{Error, Result};
use crate::exact::{integer, QuadraticNumber, RationalBox};

/// Greedy iterations allowed before a cover is declared incomplete.
pub const DEFAULT_COVER_BUDGET: usize = 1_000;

#[derive(Debug, Clone, Serialize)]
pub struct WindowCommensurability {
    /// `P_0(W) ∩ box ⊆ F P_0(W')`.
    pub forward: CoverCertificate<Vec<i64>>,
    /// `P_0(W') ∩ box ⊆ F' P_0(W)`.
    pub backward: CoverCertificate<Vec<i64>>,
}

impl WindowCommensurability {
    pub fn verified(&self) -> bool {
        self.forward.holds() && self.backward.holds()
    }
}

/// A cell of the arrangement cut out on `target` by its own faces and the
/// faces of the translates: a breakpoint or an open interval per axis.
struct Cell {
    rep: Vec<QuadraticNumber>,
    lo: Vec<QuadraticNumber>,
    hi: Vec<QuadraticNumber>,
}

/// Cells of the arrangement inside `target`. Membership in every box of
/// the arrangement is constant on a cell, so testing one representative per
/// cell decides coverage of the continuum.
fn cells(
    target: &Window,
    translate: &Window,
    centers: &[Vec<QuadraticNumber>],
    field: crate::exact::QuadraticField,
) -> Vec<Cell> {
    let half = crate::exact::ratio(1, 2);
    // per axis: (representative, lo, hi)
    let axes: Vec<Vec<(QuadraticNumber, QuadraticNumber, QuadraticNumber)>> = (0..target.dim())
        .map(|i| {
            let (lo, hi) = target.axis(i);
            let lo = QuadraticNumber::from_rational(lo, field);
            let hi = QuadraticNumber::from_rational(hi, field);
            let r = QuadraticNumber::from_rational(translate.half_widths()[i].clone(), field);
            let mut cuts = vec![lo.clone(), hi.clone()];
            for c in centers {
                cuts.push(&c[i] - &r);
                cuts.push(&c[i] + &r);
            }
            cuts.retain(|x| *x >= lo && *x <= hi);
            cuts.sort();
            cuts.dedup();
            let mut pieces = Vec::with_capacity(2 * cuts.len());
            for (j, x) in cuts.iter().enumerate() {
                if j > 0 {
                    let prev = &cuts[j - 1];
                    pieces.push(((prev + x).scale(&half), prev.clone(), x.clone()));
                }
                if target.is_closed() || *x != hi {
                    pieces.push((x.clone(), x.clone(), x.clone()));
                }
            }
            pieces
        })
        .collect();
    let mut out = vec![Cell { rep: Vec::new(), lo: Vec::new(), hi: Vec::new() }];
    for axis in axes {
        out = out
            .into_iter()
            .flat_map(|c| {
                axis.iter().map(move |(x, lo, hi)| {
                    let mut next = Cell { rep: c.rep.clone(), lo: c.lo.clone(), hi: c.hi.clone() };
                    next.rep.push(x.clone());
                    next.lo.push(lo.clone());
                    next.hi.push(hi.clone());
                    next
                })
            })
            .collect();
    }
    out
}

fn covers(translate: &Window, center: &[QuadraticNumber], x: &[QuadraticNumber]) -> bool {
    let shifted: Vec<QuadraticNumber> = x.iter().zip(center).map(|(a, b)| a - b).collect();
    translate.contains(&shifted)
}

/// Volume of `cell ∩ (center + translate)`.
fn overlap(cell: &Cell, translate: &Window, center: &[QuadraticNumber]) -> QuadraticNumber {
    let field = center.first().map_or(crate::exact::QuadraticField::rational(), QuadraticNumber::field);
    let mut vol = QuadraticNumber::from_int(1, field);
    for i in 0..center.len() {
        let r = QuadraticNumber::from_rational(translate.half_widths()[i].clone(), field);
        let lo = (&center[i] - &r).max(cell.lo[i].clone());
        let hi = (&center[i] + &r).min(cell.hi[i].clone());
        if hi <= lo {
            return QuadraticNumber::zero(field);
        }
        vol = &vol * &(&hi - &lo);
    }
    vol
}

fn physical_norm(p: &LatticePoint) -> QuadraticNumber {
    let mut n = QuadraticNumber::zero(p.physical[0].field());
    for x in &p.physical {
        n += &(x * x);
    }
    n
}

/// Greedily picks candidates `c` so that the translates `τ(c) + W'` cover
/// `target`. Each round takes the first uncovered cell and, among the
/// candidates covering it, the one covering the largest uncovered volume
/// (then most uncovered cells, then smallest physical norm, then smallest
/// index). Returns the picks and whether coverage was proved.
pub fn greedy_internal_cover(
    s: &CutProjectScheme,
    target: &Window,
    translate: &Window,
    candidates: &[LatticePoint],
    budget: usize,
) -> (Vec<LatticePoint>, bool) {
    let mut chosen: Vec<LatticePoint> = Vec::new();
    for _ in 0..budget {
        let centers: Vec<Vec<QuadraticNumber>> = chosen.iter().map(|c| c.internal.clone()).collect();
        let uncovered: Vec<Cell> = cells(target, translate, &centers, s.field())
            .into_iter()
            .filter(|cell| !centers.iter().any(|c| covers(translate, c, &cell.rep)))
            .collect();
        let Some(first) = uncovered.first() else {
            return (chosen, true);
        };
        let best = candidates
            .iter()
            .filter(|c| covers(translate, &c.internal, &first.rep))
            .map(|c| {
                let mut volume = QuadraticNumber::zero(s.field());
                let mut count = 0usize;
                for cell in &uncovered {
                    volume += &overlap(cell, translate, &c.internal);
                    count += usize::from(covers(translate, &c.internal, &cell.rep));
                }
                (volume, count, c)
            })
            .max_by(|(va, na, a), (vb, nb, b)| {
                va.cmp(vb)
                    .then_with(|| na.cmp(nb))
                    .then_with(|| physical_norm(b).cmp(&physical_norm(a)))
                    .then_with(|| b.index.cmp(&a.index))
            });
        match best {
            Some((_, _, c)) => chosen.push(c.clone()),
            None => return (chosen, false),
        }
    }
    let centers: Vec<Vec<QuadraticNumber>> = chosen.iter().map(|c| c.internal.clone()).collect();
    let done = cells(target, translate, &centers, s.field())
        .iter()
        .all(|cell| centers.iter().any(|c| covers(translate, c, &cell.rep)));
    (chosen, done)
}

fn one_direction(
    s: &CutProjectScheme,
    w: &Window,
    w_prime: &Window,
    bx: &RationalBox,
    budget: usize,
) -> Result<CoverCertificate<Vec<i64>>> {
    let sum = window_sumset(w, w_prime)?;
    let mut candidates = generate_patch(s, &sum, bx)?.points;
    if !candidates.iter().any(|p| p.index.iter().all(Zero::is_zero)) {
        candidates.push(s.point(vec![0; s.rank()]));
    }
    let (chosen, complete) = greedy_internal_cover(s, w, w_prime, &candidates, budget);
    let left = generate_patch(s, w, bx)?.indices();
    let view = SchemeView::new(s);
    let witnesses: Vec<Vec<i64>> = chosen.iter().map(|c| c.index.clone()).collect();
    let failures = check_cover(&view, &left, &witnesses, |z| view.in_window(w_prime, z));
    let scope = serde_json::json!({
        "box": bx.to_string(),
        "window": w.to_string(),
        "translated_window": w_prime.to_string(),
        "internal_cover_proved": complete,
    });
    let cert = CoverCertificate::new(Relation::XSubsetFY, witnesses, left.len(), failures).with_scope(scope);
    Ok(if complete { cert } else { cert.incomplete() })
}

/// Finite `F ⊆ Γ` with `P_0(W) ⊆ F P_0(W')`, and the reverse direction.
///
/// The cover is built in the internal space, where it is proved exactly
/// (`W ⊆ ∪ τ(f) + W'`), then checked point by point on the patch over the
/// box with the exact internal membership test. Candidates are the points
/// of `P_0(W + W')` in the box together with the origin.
pub fn window_commensurability_witness(
    s: &CutProjectScheme,
    w: &Window,
    w_prime: &Window,
    bx: &RationalBox,
) -> Result<WindowCommensurability> {
    window_commensurability_witness_with_budget(s, w, w_prime, bx, DEFAULT_COVER_BUDGET)
}

pub fn window_commensurability_witness_with_budget(
    s: &CutProjectScheme,
    w: &Window,
    w_prime: &Window,
    bx: &RationalBox,
    budget: usize,
) -> Result<WindowCommensurability> {
    if w.dim() != w_prime.dim() {
        return Err(Error::DimensionMismatch { expected: w.dim(), found: w_prime.dim() });
    }
    Ok(WindowCommensurability {
        forward: one_direction(s, w, w_prime, bx, budget)?,
        backward: one_direction(s, w_prime, w, bx, budget)?,
    })
}

/// `W + W` against `W`: the witness set `F` for `P_0(W)^2 ⊆ F P_0(W)`.
pub fn doubling_witness(s: &CutProjectScheme, w: &Window, bx: &RationalBox) -> Result<CoverCertificate<Vec<i64>>> {
    let doubled = w.scaled(&integer(2))?;
    one_direction(s, &doubled, w, bx, DEFAULT_COVER_BUDGET)
}

use rayon::prelude::*;
use serde::Serialize;

use super::patch::{generate_patch, ModelSetPatch};
use super::scheme::CutProjectScheme;
use super::window::{window_halve, window_subset, window_sumset, Window};
use crate::error::{Error, Result};
use crate::exact::{QuadraticNumber, RationalBox};

/// Windows `W_0 ⊇ W_1 ⊇ ... ⊇ W_N` with `W_n = W_0 / 2^n`.
#[derive(Debug, Clone, Serialize)]
pub struct WindowTower {
    pub base: Window,
    /// `W_1 .. W_N`.
    pub levels: Vec<Window>,
    /// Largest `n` such that `W_j + W_j ⊆ W_{j-1}` holds for all `j <= n`.
    pub verified_depth: usize,
}

impl WindowTower {
    pub fn window(&self, n: usize) -> &Window {
        if n == 0 {
            &self.base
        } else {
            &self.levels[n - 1]
        }
    }
}

/// Checks at one level `n >= 1` of the tower.
#[derive(Debug, Clone, Serialize)]
pub struct TowerLevel {
    pub level: usize,
    pub points: usize,
    /// `W_n + W_n ⊆ W_{n-1}`.
    pub window_sum_nested: bool,
    /// Pairs `λ, μ` of the level-`n` patch with `λ + μ` physically in the box.
    pub pairs_checked: usize,
    /// Of those, pairs whose internal sum misses `W_{n-1}`.
    pub pair_failures: usize,
    /// Level-`n` patch is a subset of the level-`(n-1)` patch.
    pub patch_nested: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TowerReport {
    pub tower: WindowTower,
    /// Patch size at levels `0..=N`.
    pub counts: Vec<usize>,
    pub levels: Vec<TowerLevel>,
    /// Some level patch is empty although the box contains the origin.
    pub degenerate: bool,
}

impl TowerReport {
    pub fn verified(&self) -> bool {
        !self.degenerate
            && self
                .levels
                .iter()
                .all(|l| l.window_sum_nested && l.pair_failures == 0 && l.patch_nested)
    }
}

/// Builds the halving tower over `w0` to depth `depth` and verifies it on
/// the box: the window inclusions exactly, and for every pair of level-`n`
/// points whose physical sum stays in the box, that the internal sum lies
/// in `W_{n-1}`.
pub fn good_model_tower(
    s: &CutProjectScheme,
    w0: &Window,
    depth: usize,
    bx: &RationalBox,
) -> Result<(TowerReport, Vec<ModelSetPatch>)> {
    if depth == 0 {
        return Err(Error::Domain("tower depth must be at least 1".into()));
    }
    let mut windows = vec![w0.clone()];
    for n in 1..=depth {
        windows.push(window_halve(&windows[n - 1]));
    }
    let patches = windows
        .iter()
        .map(|w| generate_patch(s, w, bx))
        .collect::<Result<Vec<_>>>()?;
    let counts: Vec<usize> = patches.iter().map(ModelSetPatch::len).collect();
    let degenerate = bx.contains_origin() && counts.contains(&0);

    let mut levels = Vec::with_capacity(depth);
    let mut verified_depth = 0;
    for n in 1..=depth {
        let nested = window_subset(&window_sumset(&windows[n], &windows[n])?, &windows[n - 1])?;
        if nested && verified_depth == n - 1 {
            verified_depth = n;
        }
        let pts = &patches[n].points;
        let (pairs_checked, pair_failures) = pts
            .par_iter()
            .map(|a| {
                let mut checked = 0;
                let mut failed = 0;
                for b in pts {
                    let phys: Vec<QuadraticNumber> =
                        a.physical.iter().zip(&b.physical).map(|(x, y)| x + y).collect();
                    if !bx.contains(&phys) {
                        continue;
                    }
                    checked += 1;
                    let int: Vec<QuadraticNumber> =
                        a.internal.iter().zip(&b.internal).map(|(x, y)| x + y).collect();
                    if !windows[n - 1].contains(&int) {
                        failed += 1;
                    }
                }
                (checked, failed)
            })
            .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1 + y.1));
        let upper = patches[n - 1].index_set();
        let patch_nested = pts.iter().all(|p| upper.contains(&p.index));
        levels.push(TowerLevel {
            level: n,
            points: counts[n],
            window_sum_nested: nested,
            pairs_checked,
            pair_failures,
            patch_nested,
        });
    }
    let tower = WindowTower { base: w0.clone(), levels: windows[1..].to_vec(), verified_depth };
    Ok((TowerReport { tower, counts, levels, degenerate }, patches))
}

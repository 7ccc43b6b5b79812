use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use super::group::Embedding;
use crate::exact::{rational_to_f64, Rational, RationalBox};

/// Result of a minimum-gap scan over a (sumset of a) finite point list.
#[derive(Debug, Clone, Serialize)]
pub struct GapReport<E> {
    pub power: usize,
    /// Distinct elements of the `power`-fold sumset that were scanned.
    pub points: usize,
    /// Smallest positive distance; `None` with fewer than two distinct points.
    pub gap: Option<f64>,
    pub witness: Option<(E, E)>,
    /// The input list repeated an element.
    pub duplicates_in_input: bool,
    /// Distinct elements landed at float distance zero.
    pub zero_distance_pairs: bool,
}

impl<E> GapReport<E> {
    pub fn is_degenerate(&self) -> bool {
        self.duplicates_in_input || self.zero_distance_pairs || self.gap.is_none()
    }
}

/// Distinct elements of the `n`-fold product set `X^n`, sorted.
pub fn sumset<G: Embedding>(group: &G, points: &[G::Elem], n: usize) -> Vec<G::Elem> {
    assert!(n >= 1, "power must be at least 1");
    let base: BTreeSet<G::Elem> = points.iter().cloned().collect();
    let base: Vec<G::Elem> = base.into_iter().collect();
    let mut acc = base.clone();
    for _ in 1..n {
        let next: BTreeSet<G::Elem> = acc
            .par_iter()
            .flat_map_iter(|x| base.iter().map(move |y| group.op(x, y)))
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
        acc = next.into_iter().collect();
    }
    acc
}

/// Minimum positive pairwise Euclidean distance in the `n`-fold sumset of
/// `points`. Distances are measured on the group's embedding.
pub fn min_gap<G: Embedding>(group: &G, points: &[G::Elem], n: usize) -> GapReport<G::Elem> {
    let distinct: BTreeSet<&G::Elem> = points.iter().collect();
    let duplicates_in_input = distinct.len() != points.len();
    let set = sumset(group, points, n);
    let mut embedded: Vec<(Vec<f64>, &G::Elem)> =
        set.iter().map(|x| (group.embed(x), x)).collect();
    embedded.sort_by(|a, b| {
        lex_cmp(&a.0, &b.0).then_with(|| a.1.cmp(b.1))
    });

    let mut best: Option<(f64, usize, usize)> = None;
    let mut zero_distance_pairs = false;
    for i in 0..embedded.len() {
        for j in i + 1..embedded.len() {
            let dx = embedded[j].0.first().copied().unwrap_or(0.0)
                - embedded[i].0.first().copied().unwrap_or(0.0);
            if let Some((b, _, _)) = best {
                if dx > b {
                    break;
                }
            }
            let d = dist(&embedded[i].0, &embedded[j].0);
            if d == 0.0 {
                zero_distance_pairs = true;
            } else if best.map_or(true, |(b, _, _)| d < b) {
                best = Some((d, i, j));
            }
        }
    }
    GapReport {
        power: n,
        points: set.len(),
        gap: best.map(|(d, _, _)| d),
        witness: best.map(|(_, i, j)| (embedded[i].1.clone(), embedded[j].1.clone())),
        duplicates_in_input,
        zero_distance_pairs,
    }
}

/// Covering-radius estimate over a grid of the box.
#[derive(Debug, Clone, Serialize)]
pub struct CoveringReport {
    /// Largest distance from a grid node to the nearest point (infinite when
    /// there are no points).
    pub radius: f64,
    /// Diameter of one grid cell: every point of the box lies within
    /// `radius + slack` of the point set.
    pub slack: f64,
    pub nodes: usize,
    pub worst_node: Vec<f64>,
}

impl CoveringReport {
    pub fn bound(&self) -> f64 {
        self.radius + self.slack
    }
}

/// Largest distance from a node of the grid `lo + k * step` (plus the upper
/// corner) of `bx` to the nearest of `points`.
pub fn covering_radius(points: &[Vec<f64>], bx: &RationalBox, step: &Rational) -> CoveringReport {
    assert!(*step > Rational::from_integer(0.into()), "grid step must be positive");
    let step_f = rational_to_f64(step);
    let axes: Vec<Vec<f64>> = bx
        .axes()
        .iter()
        .map(|axis| {
            let mut nodes = Vec::new();
            let mut x = axis.lo.clone();
            while x <= axis.hi {
                nodes.push(rational_to_f64(&x));
                x += step;
            }
            if x - step != axis.hi && axis.lo <= axis.hi {
                nodes.push(rational_to_f64(&axis.hi));
            }
            nodes
        })
        .collect();
    let slack = step_f * (bx.dim() as f64).sqrt();
    let nodes: usize = axes.iter().map(Vec::len).product();
    if points.is_empty() || nodes == 0 {
        return CoveringReport {
            radius: if points.is_empty() { f64::INFINITY } else { 0.0 },
            slack,
            nodes,
            worst_node: Vec::new(),
        };
    }
    let mut sorted: Vec<&Vec<f64>> = points.iter().collect();
    sorted.sort_by(|a, b| lex_cmp(a, b));

    let (radius, worst) = (0..nodes)
        .into_par_iter()
        .map(|k| {
            let node = grid_node(&axes, k);
            (nearest(&sorted, &node), k)
        })
        .reduce(|| (f64::NEG_INFINITY, usize::MAX), |a, b| {
            if a.0 > b.0 || (a.0 == b.0 && a.1 < b.1) { a } else { b }
        });
    CoveringReport { radius, slack, nodes, worst_node: grid_node(&axes, worst) }
}

fn grid_node(axes: &[Vec<f64>], mut k: usize) -> Vec<f64> {
    let mut node = vec![0.0; axes.len()];
    for (i, axis) in axes.iter().enumerate().rev() {
        node[i] = axis[k % axis.len()];
        k /= axis.len();
    }
    node
}

fn nearest(sorted: &[&Vec<f64>], q: &[f64]) -> f64 {
    let first = |p: &Vec<f64>| p.first().copied().unwrap_or(0.0);
    let q0 = q.first().copied().unwrap_or(0.0);
    let start = sorted.partition_point(|p| first(p) < q0);
    let mut best = f64::INFINITY;
    for p in &sorted[start..] {
        if first(p) - q0 > best {
            break;
        }
        best = best.min(dist(p, q));
    }
    for p in sorted[..start].iter().rev() {
        if q0 - first(p) > best {
            break;
        }
        best = best.min(dist(p, q));
    }
    best
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

fn lex_cmp(a: &[f64], b: &[f64]) -> std::cmp::Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(std::cmp::Ordering::Equal)
}

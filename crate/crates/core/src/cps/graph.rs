use rayon::prelude::*;
use serde::Serialize;

use super::patch::{advance, generate_patch};
use super::scheme::CutProjectScheme;
use super::window::Window;
use crate::error::{Error, Result};
use crate::exact::{integer, Interval, QuadraticNumber, RationalBox};

/// Shortest vector of the graph lattice `{(p_G γ, p_H γ)}` found in a
/// bounded index search. Not a certified global minimum.
#[derive(Debug, Clone, Serialize)]
pub struct GraphGap {
    pub search_radius: i64,
    /// Exact squared Euclidean norm.
    pub norm_squared: QuadraticNumber,
    pub gap: f64,
    pub witness: Vec<i64>,
    pub candidates: u128,
}

fn norm_squared(s: &CutProjectScheme, z: &[i64]) -> QuadraticNumber {
    let mut acc = QuadraticNumber::zero(s.field());
    for x in s.basis().mul_int_vec(z) {
        acc += &(&x * &x);
    }
    acc
}

/// Minimum over nonzero `z` with `|z|_inf <= radius` of `|B z|`. Only one of
/// `z, -z` is visited (first nonzero coordinate positive); ties go to the
/// lexicographically smallest index.
pub fn graph_min_gap(s: &CutProjectScheme, radius: i64) -> Result<GraphGap> {
    if radius <= 0 {
        return Err(Error::Domain("search radius must be at least 1".into()));
    }
    let k = s.rank();
    let side = 2 * radius as u128 + 1;
    let candidates = side.checked_pow(k as u32).unwrap_or(u128::MAX) / 2;
    if candidates > super::patch::DEFAULT_ENUMERATION_LIMIT {
        return Err(Error::EnumerationTooLarge(candidates));
    }
    // split on the position of the first nonzero coordinate and its value
    let heads: Vec<(usize, i64)> = (0..k).flat_map(|p| (1..=radius).map(move |v| (p, v))).collect();
    let best = heads
        .par_iter()
        .filter_map(|&(p, v)| {
            let bounds = vec![(-radius, radius); k - p - 1];
            let mut z = vec![0i64; k];
            z[p] = v;
            for (zi, b) in z[p + 1..].iter_mut().zip(&bounds) {
                *zi = b.0;
            }
            let mut best: Option<(QuadraticNumber, Vec<i64>)> = None;
            loop {
                let n = norm_squared(s, &z);
                if best.as_ref().map_or(true, |(b, w)| n < *b || (n == *b && z < *w)) {
                    best = Some((n, z.clone()));
                }
                if !advance(&mut z[p + 1..], &bounds) {
                    break;
                }
            }
            best
        })
        .min_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)))
        .expect("radius >= 1 gives candidates");
    let gap = best.0.to_f64().sqrt();
    Ok(GraphGap { search_radius: radius, norm_squared: best.0, gap, witness: best.1, candidates })
}

/// Smallest physical norm of a nonzero point of `P_0(W)`, found exactly.
///
/// Boxes `[-t, t]^d` are doubled until one holds a nonzero patch point; any
/// shorter point then lies in that box too, so the minimum over it is the
/// global one. This is a lower bound for every gap of `P_0(W')` with
/// `W' - W' ⊆ W`.
#[derive(Debug, Clone, Serialize)]
pub struct PhysicalMinNorm {
    pub norm_squared: QuadraticNumber,
    pub norm: f64,
    pub witness: Vec<i64>,
    /// Half-width of the box that was searched last.
    pub searched: i64,
}

pub fn physical_min_norm(s: &CutProjectScheme, w: &Window) -> Result<PhysicalMinNorm> {
    let d = s.physical_dim();
    let mut t: i64 = 1;
    loop {
        let bx = RationalBox::new(vec![Interval::symmetric(integer(t)); d]);
        let patch = generate_patch(s, w, &bx)?;
        let best = patch
            .points
            .iter()
            .filter(|p| p.index.iter().any(|&z| z != 0))
            .map(|p| {
                let mut n = QuadraticNumber::zero(s.field());
                for x in &p.physical {
                    n += &(x * x);
                }
                (n, p.index.clone())
            })
            .min_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
        if let Some((n, witness)) = best {
            // inside the inscribed ball of radius t every shorter point is seen
            let t2 = QuadraticNumber::from_int(t * t, s.field());
            if n <= t2 {
                let norm = n.to_f64().sqrt();
                return Ok(PhysicalMinNorm { norm_squared: n, norm, witness, searched: t });
            }
        }
        t = t.checked_mul(2).ok_or_else(|| Error::Internal("no nonzero patch point found".into()))?;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{ratio, Rational};

    #[test]
    fn integer_lattice_gap_is_one() {
        let g = graph_min_gap(&CutProjectScheme::integer_lattice(1), 5).unwrap();
        assert_eq!(g.witness, vec![1]);
        assert_eq!(g.gap, 1.0);
        let g = graph_min_gap(&CutProjectScheme::integer_lattice(3), 2).unwrap();
        assert_eq!(g.witness, vec![0, 0, 1]);
    }

    #[test]
    fn fibonacci_graph_gap_is_sqrt_two() {
        let s = CutProjectScheme::fibonacci();
        let g = graph_min_gap(&s, 20).unwrap();
        assert_eq!(g.witness, vec![1, 0]);
        assert_eq!(g.norm_squared, QuadraticNumber::from_int(2, s.field()));
        // float oracle over the full square
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let psi = 1.0 - phi;
        let mut best = f64::INFINITY;
        for a in -20i64..=20 {
            for b in -20i64..=20 {
                if (a, b) != (0, 0) {
                    let (x, y) = (a as f64 + b as f64 * phi, a as f64 + b as f64 * psi);
                    best = best.min((x * x + y * y).sqrt());
                }
            }
        }
        assert!((g.gap - best).abs() < 1e-12);
        assert!((g.gap - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn scaling_scales_the_gap() {
        let s = CutProjectScheme::fibonacci();
        let three: Rational = integer(3);
        let g = graph_min_gap(&s.scaled(&three).unwrap(), 10).unwrap();
        assert!((g.gap - 3.0 * 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(g.witness, vec![1, 0]);
    }

    #[test]
    fn zero_radius_is_an_error() {
        assert!(graph_min_gap(&CutProjectScheme::fibonacci(), 0).is_err());
    }

    #[test]
    fn physical_min_norm_of_fibonacci_windows() {
        let s = CutProjectScheme::fibonacci();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        // |τ| <= 2 allows γ = φ^-1 = φ - 1 with τ = -φ
        let m = physical_min_norm(&s, &Window::cube(1, integer(2)).unwrap()).unwrap();
        assert!((m.norm - 1.0 / phi).abs() < 1e-12);
        let m = physical_min_norm(&s, &Window::cube(1, ratio(1, 2)).unwrap()).unwrap();
        assert!((m.norm - phi * phi).abs() < 1e-12);
    }
}

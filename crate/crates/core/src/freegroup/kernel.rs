use std::collections::BTreeMap;

use num_traits::Signed;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::ball::ball;
use super::brooks::QuasiMorphism;
use super::word::ReducedWord;
use super::FreeGroup;
use crate::cert::{check_cover, CoverCertificate, Relation};
use crate::error::{Error, Result};
use crate::exact::{integer, Rational};

pub(crate) fn ser_rational<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(r)
}

pub(crate) fn ser_opt_rational<S: Serializer>(
    r: &Option<Rational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.collect_str(r),
        None => s.serialize_none(),
    }
}

fn within(value: i64, threshold: &Rational) -> bool {
    integer(value).abs() <= *threshold
}

/// The quasi-kernel `f^-1([-R, R])` truncated to the ball of a given radius.
#[derive(Debug, Clone, Serialize)]
pub struct QuasiKernelPatch {
    #[serde(serialize_with = "ser_rational")]
    pub threshold: Rational,
    pub radius: usize,
    /// Words in breadth-first order, each with its value `f(g)`.
    pub words: Vec<(ReducedWord, i64)>,
}

impl QuasiKernelPatch {
    pub fn elements(&self) -> Vec<ReducedWord> {
        self.words.iter().map(|(w, _)| w.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Newline-delimited `word<TAB>f(word)` lines.
    pub fn to_lines(&self) -> String {
        self.words.iter().map(|(w, v)| format!("{w}\t{v}\n")).collect()
    }
}

pub fn quasi_kernel_patch<Q: QuasiMorphism>(
    f: &Q,
    threshold: &Rational,
    radius: usize,
) -> Result<QuasiKernelPatch> {
    if threshold.is_negative() {
        return Err(Error::Domain(format!("threshold R = {threshold} must be >= 0")));
    }
    let words = ball(f.rank(), radius)
        .into_par_iter()
        .map(|g| {
            let v = f.eval(&g);
            (g, v)
        })
        .filter(|(_, v)| within(*v, threshold))
        .collect();
    Ok(QuasiKernelPatch { threshold: threshold.clone(), radius, words })
}

/// Greedy maximal `spacing`-separated subset of sorted distinct values:
/// ascending scan, keeping a value when it is at least `spacing` above the
/// last one kept. Every skipped value lies within `spacing` of a kept one.
pub fn separated_values(sorted: &[i64], spacing: &Rational) -> Vec<i64> {
    let mut kept: Vec<i64> = Vec::new();
    for &v in sorted {
        match kept.last() {
            Some(&last) if integer(v - last) < *spacing => {}
            _ => kept.push(v),
        }
    }
    kept
}

/// For each value, the shortest (then smallest) word attaining it.
fn representatives<'a, Q: QuasiMorphism>(
    f: &Q,
    words: impl Iterator<Item = &'a ReducedWord>,
) -> BTreeMap<i64, ReducedWord> {
    let mut reps: BTreeMap<i64, ReducedWord> = BTreeMap::new();
    for g in words {
        let v = f.eval(g);
        match reps.get(&v) {
            Some(cur) if (cur.len(), cur) <= (g.len(), g) => {}
            _ => {
                reps.insert(v, g.clone());
            }
        }
    }
    reps
}

fn separated_witnesses(reps: &BTreeMap<i64, ReducedWord>, spacing: &Rational) -> Vec<ReducedWord> {
    let values: Vec<i64> = reps.keys().copied().collect();
    separated_values(&values, spacing).into_iter().map(|v| reps[&v].clone()).collect()
}

fn check_hypothesis(r: &Rational, c: &Rational, which: &str) -> Result<()> {
    if r <= c {
        return Err(Error::Domain(format!(
            "quasi-kernel lemma needs R > C(f): R{which} = {r}, C{which} = {c}"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct QuasiKernelCover {
    pub certificate: CoverCertificate<ReducedWord>,
    #[serde(serialize_with = "ser_rational")]
    pub delta: Rational,
    /// `2 (2R + C) / (R - C + 2)`.
    #[serde(serialize_with = "ser_rational")]
    pub bound: Rational,
    pub patch_size: usize,
    /// Distinct products `λμ` checked.
    pub products: usize,
}

/// `Λ^2 ⊆ F Λ` for `Λ = f^-1([-R, R])` on the ball of `radius`.
///
/// With `δ = R - C`, `F ⊆ Λ^2` is chosen so that `f(F)` is a maximal
/// `δ/2`-separated subset of `f(Λ^2)`. Every product `λμ` of patch elements
/// is then checked for some `γ` in `F` with `|f(γ^-1 λ μ)| <= R`, evaluating
/// `f` exactly on the (untruncated) quotient.
pub fn quasi_kernel_cover<Q: QuasiMorphism>(
    f: &Q,
    threshold: &Rational,
    defect: &Rational,
    radius: usize,
) -> Result<QuasiKernelCover> {
    check_hypothesis(threshold, defect, "")?;
    let patch = quasi_kernel_patch(f, threshold, radius)?;
    let elements = patch.elements();
    let mut products: Vec<ReducedWord> = elements
        .par_iter()
        .flat_map_iter(|x| elements.iter().map(move |y| x.mul_unchecked(y)))
        .collect();
    products.par_sort_unstable();
    products.dedup();

    let delta = threshold - defect;
    let reps = representatives(f, products.iter());
    let witnesses = separated_witnesses(&reps, &(&delta / integer(2)));
    let failures = check_cover(&FreeGroup::new(f.rank()), &products, &witnesses, |z| {
        within(f.eval(z), threshold)
    });
    let bound = integer(2) * (integer(2) * threshold + defect) / (threshold - defect + integer(2));
    let satisfied = integer(witnesses.len() as i64) <= bound;
    let certificate = CoverCertificate::new(Relation::X2SubsetFX, witnesses, products.len(), failures)
        .with_bound(bound.to_string(), satisfied)
        .with_scope(serde_json::json!({ "radius": radius, "threshold": threshold.to_string() }));
    Ok(QuasiKernelCover {
        certificate,
        delta,
        bound,
        patch_size: patch.len(),
        products: products.len(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct QmCommensurability {
    /// `max |f1 - f2|` over the ball, a lower bound for the true supremum.
    pub eta: i64,
    /// `Λ2 ∩ ball ⊆ F1 Λ1`.
    pub forward: CoverCertificate<ReducedWord>,
    /// `Λ1 ∩ ball ⊆ F2 Λ2`.
    pub backward: CoverCertificate<ReducedWord>,
    /// `max(2 (R1 + η) / (R2 - C2 + 2), 2 (R2 + η) / (R1 - C1 + 2))`.
    #[serde(serialize_with = "ser_rational")]
    pub lemma_bound: Rational,
}

impl QmCommensurability {
    pub fn verified(&self) -> bool {
        self.forward.verified && self.backward.verified
    }
}

/// Commensurability of the quasi-kernels of two symmetric quasi-morphisms
/// at bounded distance. Each direction uses a maximal separated set of
/// values of one quasi-morphism on the other's kernel.
#[allow(clippy::too_many_arguments)]
pub fn qm_commensurability_witness<Q1: QuasiMorphism, Q2: QuasiMorphism>(
    f1: &Q1,
    r1: &Rational,
    c1: &Rational,
    f2: &Q2,
    r2: &Rational,
    c2: &Rational,
    radius: usize,
) -> Result<QmCommensurability> {
    if f1.rank() != f2.rank() {
        return Err(Error::RankMismatch(f1.rank(), f2.rank()));
    }
    check_hypothesis(r1, c1, "1")?;
    check_hypothesis(r2, c2, "2")?;
    let group = FreeGroup::new(f1.rank());
    let words = ball(f1.rank(), radius);
    let eta = words.par_iter().map(|g| (f1.eval(g) - f2.eval(g)).abs()).max().unwrap_or(0);
    let lambda1: Vec<ReducedWord> = words.iter().filter(|g| within(f1.eval(g), r1)).cloned().collect();
    let lambda2: Vec<ReducedWord> = words.iter().filter(|g| within(f2.eval(g), r2)).cloned().collect();
    let two = integer(2);
    let eta_r = integer(eta);

    let direction = |fa: &(dyn Fn(&ReducedWord) -> i64 + Sync),
                     ra: &Rational,
                     ca: &Rational,
                     target: &[ReducedWord],
                     rb: &Rational| {
        let delta = ra - ca;
        let mut reps: BTreeMap<i64, ReducedWord> = BTreeMap::new();
        for g in target {
            let v = fa(g);
            match reps.get(&v) {
                Some(cur) if (cur.len(), cur) <= (g.len(), g) => {}
                _ => {
                    reps.insert(v, g.clone());
                }
            }
        }
        let witnesses = separated_witnesses(&reps, &(&delta / &two));
        let failures = check_cover(&group, target, &witnesses, |z| within(fa(z), ra));
        let bound = &two * (rb + &eta_r) / (&delta + &two);
        let ok = integer(witnesses.len() as i64) <= bound;
        (
            CoverCertificate::new(Relation::XSubsetFY, witnesses, target.len(), failures)
                .with_bound(bound.to_string(), ok)
                .with_scope(serde_json::json!({ "radius": radius })),
            bound,
        )
    };
    let eval1 = |g: &ReducedWord| f1.eval(g);
    let eval2 = |g: &ReducedWord| f2.eval(g);
    let (forward, b_fwd) = direction(&eval1, r1, c1, &lambda2, r2);
    let (backward, b_bwd) = direction(&eval2, r2, c2, &lambda1, r1);
    Ok(QmCommensurability { eta, forward, backward, lemma_bound: b_fwd.max(b_bwd) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;
    use crate::freegroup::{BrooksQM, Conjugated};

    fn w(s: &str) -> ReducedWord {
        s.parse().unwrap()
    }

    fn fab() -> BrooksQM {
        BrooksQM::new(w("ab")).unwrap()
    }

    #[test]
    fn zero_threshold_radius_one() {
        let p = quasi_kernel_patch(&fab(), &integer(0), 1).unwrap();
        let names: Vec<String> = p.elements().iter().map(ToString::to_string).collect();
        assert_eq!(names, ["1", "a", "A", "b", "B"]);
    }

    #[test]
    fn large_threshold_gives_whole_ball_and_radius_zero_gives_identity() {
        let p = quasi_kernel_patch(&fab(), &integer(4), 4).unwrap();
        assert_eq!(p.len(), ball(2, 4).len());
        let p = quasi_kernel_patch(&fab(), &integer(0), 0).unwrap();
        assert_eq!(p.elements(), vec![ReducedWord::identity(2)]);
        assert!(quasi_kernel_patch(&fab(), &integer(-1), 2).is_err());
    }

    #[test]
    fn kernel_patch_is_symmetric_and_complete() {
        let f = BrooksQM::new(w("aB")).unwrap();
        let p = quasi_kernel_patch(&f, &integer(1), 5).unwrap();
        let set: std::collections::HashSet<_> = p.elements().into_iter().collect();
        for g in &set {
            assert!(set.contains(&g.inv()));
        }
        let oracle = ball(2, 5).into_iter().filter(|g| f.eval(g).abs() <= 1).count();
        assert_eq!(set.len(), oracle);
    }

    #[test]
    fn separated_values_greedy() {
        assert_eq!(separated_values(&[-5, -4, -3, -2, -1, 0, 1, 2, 3, 4, 5], &ratio(3, 2)), [-5, -3, -1, 1, 3, 5]);
        assert_eq!(separated_values(&[0, 1, 2], &integer(10)), [0]);
        assert!(separated_values(&[], &integer(1)).is_empty());
    }

    #[test]
    fn cover_for_ab_at_r6() {
        let cover = quasi_kernel_cover(&fab(), &integer(6), &integer(3), 5).unwrap();
        assert_eq!(cover.bound, integer(6));
        assert!(cover.certificate.verified);
        assert!(cover.certificate.size() <= 6);
        assert_eq!(cover.certificate.bound_satisfied, Some(true));
        // naive re-check
        let f = fab();
        let elements = quasi_kernel_patch(&f, &integer(6), 5).unwrap().elements();
        for x in &elements {
            for y in &elements {
                let p = x.mul(y).unwrap();
                assert!(cover.certificate.witnesses.iter().any(|g| f.eval(&g.inv().mul(&p).unwrap()).abs() <= 6));
            }
        }
    }

    #[test]
    fn huge_threshold_needs_one_translate() {
        let cover = quasi_kernel_cover(&fab(), &integer(100), &integer(3), 3).unwrap();
        assert_eq!(cover.certificate.size(), 1);
        assert!(cover.certificate.verified);
        let elements = quasi_kernel_patch(&fab(), &integer(100), 3).unwrap().elements();
        let products: Vec<_> = elements.iter().flat_map(|x| elements.iter().map(move |y| x.mul(y).unwrap())).collect();
        let f = fab();
        assert!(check_cover(&FreeGroup::new(2), &products, &[ReducedWord::identity(2)], |z| f.eval(z).abs() <= 100).is_empty());
    }

    #[test]
    fn hypothesis_boundary() {
        assert!(matches!(quasi_kernel_cover(&fab(), &integer(3), &integer(3), 3), Err(Error::Domain(_))));
    }

    #[test]
    fn identical_quasi_morphisms() {
        let f = fab();
        let r = qm_commensurability_witness(&f, &integer(6), &integer(3), &f, &integer(6), &integer(3), 4).unwrap();
        assert_eq!(r.eta, 0);
        assert!(r.verified());
    }

    #[test]
    fn doubled_threshold_contains_the_smaller_kernel() {
        let f = fab();
        let r = qm_commensurability_witness(&f, &integer(4), &integer(3), &f, &integer(8), &integer(3), 4).unwrap();
        assert!(r.verified());
        assert!(r.backward.size() <= 3);
        let lambda1: Vec<_> = ball(2, 4).into_iter().filter(|g| f.eval(g).abs() <= 4).collect();
        assert!(check_cover(&FreeGroup::new(2), &lambda1, &[ReducedWord::identity(2)], |z| f.eval(z).abs() <= 8).is_empty());
    }

    #[test]
    fn conjugated_perturbation() {
        let f1 = fab();
        let f2 = Conjugated::new(fab(), w("a")).unwrap();
        let r = qm_commensurability_witness(&f1, &integer(6), &integer(3), &f2, &integer(6), &integer(3), 5).unwrap();
        assert!(r.eta <= 6);
        assert!(r.eta >= 1);
        assert!(r.verified());
    }
}

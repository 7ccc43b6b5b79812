use crate::error::{Error, Result};

use super::word::ReducedWord;

/// An integer-valued quasi-morphism on a free group.
pub trait QuasiMorphism: Sync {
    fn rank(&self) -> u32;
    fn eval(&self, g: &ReducedWord) -> i64;
    /// A proven upper bound on the defect, when one is known.
    fn defect_bound(&self) -> Option<i64>;
    fn describe(&self) -> String;
}

/// Number of positions at which `w` appears as a contiguous subword of the
/// reduced spelling of `x`. Overlapping occurrences all count.
pub fn count_occurrences(x: &ReducedWord, w: &ReducedWord) -> usize {
    let (x, w) = (x.letters(), w.letters());
    if w.is_empty() || w.len() > x.len() {
        return 0;
    }
    x.windows(w.len()).filter(|win| *win == w).count()
}

/// Brooks counting quasi-morphism `f_w(g) = o(g, w) - o(g, w^-1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrooksQM {
    pattern: ReducedWord,
    pattern_inv: ReducedWord,
}

impl BrooksQM {
    pub fn new(pattern: ReducedWord) -> Result<Self> {
        if pattern.is_identity() {
            return Err(Error::Domain("Brooks pattern must be a nontrivial word".into()));
        }
        let pattern_inv = pattern.inv();
        Ok(BrooksQM { pattern, pattern_inv })
    }

    pub fn pattern(&self) -> &ReducedWord {
        &self.pattern
    }

    pub fn pattern_len(&self) -> usize {
        self.pattern.len()
    }

    /// Single generators (and their inverses) give homomorphisms; the
    /// lemmas still apply but the non-Meyer example excludes them.
    pub fn is_excluded_pattern(&self) -> bool {
        self.pattern.len() <= 1
    }

    /// `3 (l - 1)` for a pattern of length `l`.
    pub fn analytic_defect_bound(&self) -> i64 {
        3 * (self.pattern.len() as i64 - 1)
    }
}

impl QuasiMorphism for BrooksQM {
    fn rank(&self) -> u32 {
        self.pattern.rank()
    }

    fn eval(&self, g: &ReducedWord) -> i64 {
        count_occurrences(g, &self.pattern) as i64 - count_occurrences(g, &self.pattern_inv) as i64
    }

    fn defect_bound(&self) -> Option<i64> {
        Some(self.analytic_defect_bound())
    }

    fn describe(&self) -> String {
        format!("f_{}", self.pattern)
    }
}

pub fn brooks_eval(f: &BrooksQM, g: &ReducedWord) -> Result<i64> {
    if f.rank() != g.rank() {
        return Err(Error::RankMismatch(f.rank(), g.rank()));
    }
    Ok(f.eval(g))
}

/// `g -> f(c g c^-1)`: same defect as `f`, at bounded distance from it.
#[derive(Debug, Clone)]
pub struct Conjugated<Q> {
    inner: Q,
    by: ReducedWord,
    by_inv: ReducedWord,
}

impl<Q: QuasiMorphism> Conjugated<Q> {
    pub fn new(inner: Q, by: ReducedWord) -> Result<Self> {
        if inner.rank() != by.rank() {
            return Err(Error::RankMismatch(inner.rank(), by.rank()));
        }
        let by_inv = by.inv();
        Ok(Conjugated { inner, by, by_inv })
    }
}

impl<Q: QuasiMorphism> QuasiMorphism for Conjugated<Q> {
    fn rank(&self) -> u32 {
        self.inner.rank()
    }

    fn eval(&self, g: &ReducedWord) -> i64 {
        self.inner.eval(&self.by.mul_unchecked(g).mul_unchecked(&self.by_inv))
    }

    fn defect_bound(&self) -> Option<i64> {
        self.inner.defect_bound()
    }

    fn describe(&self) -> String {
        format!("{} o conj({})", self.inner.describe(), self.by)
    }
}

impl<Q: QuasiMorphism + ?Sized> QuasiMorphism for &Q {
    fn rank(&self) -> u32 {
        (**self).rank()
    }
    fn eval(&self, g: &ReducedWord) -> i64 {
        (**self).eval(g)
    }
    fn defect_bound(&self) -> Option<i64> {
        (**self).defect_bound()
    }
    fn describe(&self) -> String {
        (**self).describe()
    }
}

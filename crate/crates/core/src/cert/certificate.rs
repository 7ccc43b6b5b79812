use serde::Serialize;

use super::group::Group;

/// Which covering statement a certificate witnesses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    /// `X ⊆ F Y Y^-1` (Ruzsa covering).
    #[serde(rename = "X_subset_FYYinv")]
    XSubsetFYYinv,
    /// `X^2 ⊆ F X` (approximate subgroup).
    #[serde(rename = "X2_subset_FX")]
    X2SubsetFX,
    /// `X ⊆ F Y` (one half of commensurability).
    #[serde(rename = "X_subset_FY")]
    XSubsetFY,
}

impl Relation {
    pub fn as_str(self) -> &'static str {
        match self {
            Relation::XSubsetFYYinv => "X_subset_FYYinv",
            Relation::X2SubsetFX => "X2_subset_FX",
            Relation::XSubsetFY => "X_subset_FY",
        }
    }
}

/// A finite witness set `F` for a covering relation, with its verdict.
///
/// `verified` means every checked left-side element `x` has some `f` in `F`
/// with `f^-1 x` in the right side; `failures` lists the elements that had
/// none. `complete = false` marks a construction that ran out of budget.
#[derive(Debug, Clone, Serialize)]
pub struct CoverCertificate<E> {
    pub relation: Relation,
    #[serde(rename = "F")]
    pub witnesses: Vec<E>,
    pub verified: bool,
    pub complete: bool,
    pub checked: usize,
    pub bound_claimed: Option<String>,
    pub bound_satisfied: Option<bool>,
    pub failures: Vec<E>,
    #[serde(rename = "box")]
    pub scope: Option<serde_json::Value>,
}

impl<E: Clone> CoverCertificate<E> {
    pub fn new(relation: Relation, witnesses: Vec<E>, checked: usize, failures: Vec<E>) -> Self {
        CoverCertificate {
            relation,
            witnesses,
            verified: failures.is_empty(),
            complete: true,
            checked,
            bound_claimed: None,
            bound_satisfied: None,
            failures,
            scope: None,
        }
    }

    pub fn with_bound(mut self, claimed: String, satisfied: bool) -> Self {
        self.bound_claimed = Some(claimed);
        self.bound_satisfied = Some(satisfied);
        self
    }

    pub fn with_scope(mut self, scope: serde_json::Value) -> Self {
        self.scope = Some(scope);
        self
    }

    pub fn incomplete(mut self) -> Self {
        self.complete = false;
        self.verified = false;
        self
    }

    /// Size of `F`.
    pub fn size(&self) -> usize {
        self.witnesses.len()
    }

    /// Verified, complete, and within its claimed bound (if any).
    pub fn holds(&self) -> bool {
        self.verified && self.complete && self.bound_satisfied != Some(false)
    }

    /// Re-runs the check with the independent checker.
    pub fn reverify<G: Group<Elem = E>>(
        &self,
        group: &G,
        left: &[E],
        right: impl Fn(&E) -> bool + Sync,
    ) -> bool {
        self.verified && check_cover(group, left, &self.witnesses, right).is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value
    where
        E: Serialize,
    {
        serde_json::to_value(self).expect("certificate serializes")
    }
}

/// Independent quadratic-time checker: returns every `x` in `left` for which
/// no `f` in `witnesses` puts `f^-1 x` into the right side.
pub fn check_cover<G: Group>(
    group: &G,
    left: &[G::Elem],
    witnesses: &[G::Elem],
    right: impl Fn(&G::Elem) -> bool + Sync,
) -> Vec<G::Elem> {
    use rayon::prelude::*;
    let inverses: Vec<G::Elem> = witnesses.iter().map(|f| group.inv(f)).collect();
    left.par_iter()
        .filter(|x| !inverses.iter().any(|fi| right(&group.op(fi, x))))
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cert::IntegerLattice;

    #[test]
    fn checker_finds_uncovered_elements() {
        let z = IntegerLattice::new(1);
        let left: Vec<Vec<i64>> = (0..6).map(|i| vec![i]).collect();
        let right = |x: &Vec<i64>| (0..=1).contains(&x[0]);
        assert!(check_cover(&z, &left, &[vec![0], vec![2], vec![4]], right).is_empty());
        assert_eq!(check_cover(&z, &left, &[vec![0], vec![4]], right), vec![vec![2], vec![3]]);
        assert_eq!(check_cover(&z, &left, &[], right).len(), 6);
    }

    #[test]
    fn serializes_with_published_keys() {
        let cert = CoverCertificate::new(Relation::XSubsetFY, vec![vec![0i64]], 3, vec![])
            .with_bound("1".into(), true);
        let v = cert.to_json();
        assert_eq!(v["relation"], "X_subset_FY");
        assert_eq!(v["F"], serde_json::json!([[0]]));
        assert_eq!(v["verified"], true);
        assert_eq!(v["bound_claimed"], "1");
        assert_eq!(v["bound_satisfied"], true);
        assert_eq!(v["failures"], serde_json::json!([]));
        assert!(v["box"].is_null());
    }
}

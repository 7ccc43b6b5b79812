use rayon::prelude::*;

use super::certificate::{CoverCertificate, Relation};
use super::group::Group;

/// Checks `Λ Λ ⊆ F Λ` on a patch: every product `λμ` of patch elements must
/// have some `f` in `witnesses` with `f^-1 λ μ` in `Λ`, decided by the exact
/// ambient predicate (never by presence in the patch list).
pub fn product_cover_check<G: Group>(
    group: &G,
    patch: &[G::Elem],
    witnesses: &[G::Elem],
    member: impl Fn(&G::Elem) -> bool + Sync,
) -> CoverCertificate<G::Elem> {
    let inverses: Vec<G::Elem> = witnesses.iter().map(|f| group.inv(f)).collect();
    let failures: Vec<G::Elem> = patch
        .par_iter()
        .flat_map_iter(|x| {
            let inverses = &inverses;
            let member = &member;
            patch.iter().filter_map(move |y| {
                let p = group.op(x, y);
                (!inverses.iter().any(|fi| member(&group.op(fi, &p)))).then_some(p)
            })
        })
        .collect();
    let mut failures = failures;
    failures.sort();
    failures.dedup();
    CoverCertificate::new(Relation::X2SubsetFX, witnesses.to_vec(), patch.len() * patch.len(), failures)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cert::IntegerLattice;

    #[test]
    fn subgroup_needs_only_identity() {
        let z = IntegerLattice::new(1);
        let patch: Vec<Vec<i64>> = (-5..=5).map(|i| vec![i]).collect();
        let cert = product_cover_check(&z, &patch, &[vec![0]], |_| true);
        assert!(cert.verified);
    }

    #[test]
    fn empty_witness_set_fails_with_witness() {
        let z = IntegerLattice::new(1);
        let patch = vec![vec![0], vec![1]];
        let cert = product_cover_check(&z, &patch, &[], |v: &Vec<i64>| v[0].abs() <= 1);
        assert!(!cert.verified);
        assert!(cert.failures.contains(&vec![2]));
    }

    #[test]
    fn interval_needs_three_translates() {
        // [-1, 1] + [-1, 1] = [-2, 2] ⊆ {-1, 0, 1} + [-1, 1]
        let z = IntegerLattice::new(1);
        let patch: Vec<Vec<i64>> = (-1..=1).map(|i| vec![i]).collect();
        let member = |v: &Vec<i64>| v[0].abs() <= 1;
        assert!(product_cover_check(&z, &patch, &[vec![-1], vec![0], vec![1]], member).verified);
        let cert = product_cover_check(&z, &patch, &[vec![0]], member);
        assert_eq!(cert.failures, vec![vec![-2], vec![2]]);
    }
}

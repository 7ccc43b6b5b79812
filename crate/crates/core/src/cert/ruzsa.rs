use std::collections::HashSet;

use super::certificate::{check_cover, CoverCertificate, Relation};
use super::group::Group;

/// Ruzsa covering: scans `x_set` in order and keeps `x` whenever `xY` is
/// disjoint from every translate kept so far. The kept family is maximal, so
/// `X ⊆ F Y Y^-1`, which is then checked exhaustively.
pub fn ruzsa_cover<G: Group>(
    group: &G,
    x_set: &[G::Elem],
    y_set: &[G::Elem],
) -> CoverCertificate<G::Elem> {
    let mut kept = Vec::new();
    let mut occupied: HashSet<G::Elem> = HashSet::new();
    for x in x_set {
        let translate: Vec<G::Elem> = y_set.iter().map(|y| group.op(x, y)).collect();
        if translate.iter().any(|t| occupied.contains(t)) {
            continue;
        }
        for t in translate {
            let fresh = occupied.insert(t);
            assert!(fresh, "kept translates must be pairwise disjoint");
        }
        kept.push(x.clone());
    }

    let difference: HashSet<G::Elem> = y_set
        .iter()
        .flat_map(|a| y_set.iter().map(move |b| (a, b)))
        .map(|(a, b)| group.op(a, &group.inv(b)))
        .collect();
    let failures = check_cover(group, x_set, &kept, |z| difference.contains(z));
    CoverCertificate::new(Relation::XSubsetFYYinv, kept, x_set.len(), failures)
}

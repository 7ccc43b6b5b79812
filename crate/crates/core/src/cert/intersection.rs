use std::collections::HashSet;
use std::fmt;

use super::certificate::{check_cover, CoverCertificate, Relation};
use super::group::Group;

/// Precondition failure of [`intersection_cover`]: `element` of `X_0` is
/// not covered by `F_index X_index`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UncoveredElement<E> {
    pub index: usize,
    pub element: E,
}

impl<E: fmt::Debug> fmt::Display for UncoveredElement<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} is not covered by F_{} X_{}", self.element, self.index + 1, self.index + 1)
    }
}

impl<E: fmt::Debug> std::error::Error for UncoveredElement<E> {}

/// Intersection of commensurable subsets: given `X_0 ⊆ F_i X_i` for every
/// `i`, builds `F` with `|F| <= prod |F_i|` and `X_0 ⊆ F ∩ X_i^-1 X_i`.
///
/// For each tuple `f = (f_i)` whose translates `f_i X_i` meet inside `X_0` a
/// representative `x_f` is chosen: the first `f_i` of the tuple that lies in
/// the intersection, otherwise the first such element of `X_0`.
pub fn intersection_cover<G: Group>(
    group: &G,
    x0: &[G::Elem],
    xs: &[Vec<G::Elem>],
    fs: &[Vec<G::Elem>],
) -> Result<CoverCertificate<G::Elem>, UncoveredElement<G::Elem>> {
    assert_eq!(xs.len(), fs.len(), "one witness set per X_i");
    let x_sets: Vec<HashSet<G::Elem>> = xs.iter().map(|x| x.iter().cloned().collect()).collect();

    for (i, (x_set, f)) in x_sets.iter().zip(fs).enumerate() {
        if let Some(bad) = check_cover(group, x0, f, |z| x_set.contains(z)).into_iter().next() {
            return Err(UncoveredElement { index: i, element: bad });
        }
    }

    let in_all_translates = |x: &G::Elem, tuple: &[&G::Elem]| {
        tuple.iter().zip(&x_sets).all(|(f, set)| set.contains(&group.left_quotient(f, x)))
    };
    let x0_set: HashSet<&G::Elem> = x0.iter().collect();
    let mut chosen: Vec<G::Elem> = Vec::new();
    let mut seen: HashSet<G::Elem> = HashSet::new();
    let tuple_count: usize = fs.iter().map(Vec::len).product();
    for_each_tuple(fs, |tuple| {
        let pick = tuple
            .iter()
            .find(|f| x0_set.contains(*f) && in_all_translates(f, tuple))
            .map(|f| (*f).clone())
            .or_else(|| x0.iter().find(|x| in_all_translates(x, tuple)).cloned());
        if let Some(x) = pick {
            if seen.insert(x.clone()) {
                chosen.push(x);
            }
        }
    });

    let mut common: Option<HashSet<G::Elem>> = None;
    for x in xs {
        let diff: HashSet<G::Elem> = x
            .iter()
            .flat_map(|a| x.iter().map(move |b| (a, b)))
            .map(|(a, b)| group.op(&group.inv(a), b))
            .collect();
        common = Some(match common {
            None => diff,
            Some(c) => c.intersection(&diff).cloned().collect(),
        });
    }
    let common = common.unwrap_or_else(|| [group.identity()].into_iter().collect());
    let failures = check_cover(group, x0, &chosen, |z| common.contains(z));
    let within = chosen.len() <= tuple_count;
    Ok(CoverCertificate::new(Relation::XSubsetFY, chosen, x0.len(), failures)
        .with_bound(tuple_count.to_string(), within))
}

fn for_each_tuple<E>(sets: &[Vec<E>], mut visit: impl FnMut(&[&E])) {
    if sets.iter().any(Vec::is_empty) {
        return;
    }
    let mut idx = vec![0usize; sets.len()];
    loop {
        let tuple: Vec<&E> = idx.iter().zip(sets).map(|(&i, s)| &s[i]).collect();
        visit(&tuple);
        let mut k = sets.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < sets[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

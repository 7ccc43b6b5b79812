use std::fmt::Debug;
use std::hash::Hash;

/// A group given by oracles. `op(x, y)` is the product `xy`.
pub trait Group: Sync {
    type Elem: Clone + Eq + Hash + Ord + Debug + Send + Sync;

    fn op(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn inv(&self, x: &Self::Elem) -> Self::Elem;
    fn identity(&self) -> Self::Elem;

    /// `f^-1 x`, the element a witness `f` must carry into the right side.
    fn left_quotient(&self, f: &Self::Elem, x: &Self::Elem) -> Self::Elem {
        self.op(&self.inv(f), x)
    }
}

/// Groups whose elements have a Euclidean picture, used for distances.
pub trait Embedding: Group {
    fn embed(&self, x: &Self::Elem) -> Vec<f64>;
}

/// `Z^dim` with addition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntegerLattice {
    pub dim: usize,
}

impl IntegerLattice {
    pub fn new(dim: usize) -> Self {
        IntegerLattice { dim }
    }
}

impl Group for IntegerLattice {
    type Elem = Vec<i64>;

    fn op(&self, x: &Vec<i64>, y: &Vec<i64>) -> Vec<i64> {
        x.iter()
            .zip(y)
            .map(|(a, b)| a.checked_add(*b).expect("lattice index overflow"))
            .collect()
    }

    fn inv(&self, x: &Vec<i64>) -> Vec<i64> {
        x.iter().map(|a| a.checked_neg().expect("lattice index overflow")).collect()
    }

    fn identity(&self) -> Vec<i64> {
        vec![0; self.dim]
    }
}

impl Embedding for IntegerLattice {
    fn embed(&self, x: &Vec<i64>) -> Vec<f64> {
        x.iter().map(|&a| a as f64).collect()
    }
}

/// A finite window onto a group: the elements at hand plus an exact
/// membership predicate for the (possibly infinite) ambient set of interest.
pub struct FiniteGroupView<'a, G: Group> {
    pub group: &'a G,
    pub elements: Vec<G::Elem>,
    pub membership: Box<dyn Fn(&G::Elem) -> bool + Sync + 'a>,
}

impl<'a, G: Group> FiniteGroupView<'a, G> {
    pub fn new(
        group: &'a G,
        elements: Vec<G::Elem>,
        membership: impl Fn(&G::Elem) -> bool + Sync + 'a,
    ) -> Self {
        FiniteGroupView { group, elements, membership: Box::new(membership) }
    }

    pub fn contains(&self, x: &G::Elem) -> bool {
        (self.membership)(x)
    }

    /// Every listed element satisfies the membership predicate.
    pub fn is_consistent(&self) -> bool {
        self.elements.iter().all(|x| self.contains(x))
    }
}

/// Identity, inverse and associativity on all triples from `sample`.
pub fn check_group_axioms<G: Group>(group: &G, sample: &[G::Elem]) -> bool {
    let e = group.identity();
    for x in sample {
        if group.op(&e, x) != *x || group.op(x, &e) != *x {
            return false;
        }
        if group.op(x, &group.inv(x)) != e {
            return false;
        }
        for y in sample {
            for z in sample {
                if group.op(&group.op(x, y), z) != group.op(x, &group.op(y, z)) {
                    return false;
                }
            }
        }
    }
    true
}

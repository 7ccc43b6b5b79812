use super::scheme::CutProjectScheme;
use crate::cert::{Embedding, Group};

/// The lattice of a scheme as a group on index vectors, embedded in the
/// physical space. Lets the generic certifiers run on model-set patches.
#[derive(Debug, Clone, Copy)]
pub struct SchemeView<'a> {
    pub scheme: &'a CutProjectScheme,
}

impl<'a> SchemeView<'a> {
    pub fn new(scheme: &'a CutProjectScheme) -> Self {
        SchemeView { scheme }
    }

    /// Exact test `p_H(z) ∈ W`.
    pub fn in_window(&self, w: &super::Window, z: &[i64]) -> bool {
        w.contains(&self.scheme.internal_of(z))
    }
}

impl Group for SchemeView<'_> {
    type Elem = Vec<i64>;

    fn op(&self, x: &Vec<i64>, y: &Vec<i64>) -> Vec<i64> {
        x.iter().zip(y).map(|(a, b)| a.checked_add(*b).expect("lattice index overflow")).collect()
    }

    fn inv(&self, x: &Vec<i64>) -> Vec<i64> {
        x.iter().map(|a| -a).collect()
    }

    fn identity(&self) -> Vec<i64> {
        vec![0; self.scheme.rank()]
    }
}

impl Embedding for SchemeView<'_> {
    fn embed(&self, x: &Vec<i64>) -> Vec<f64> {
        self.scheme.physical_of(x).iter().map(|q| q.to_f64()).collect()
    }
}

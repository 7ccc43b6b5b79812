//! Free groups, Brooks counting quasi-morphisms and their quasi-kernels.

mod analysis;
mod ball;
mod brooks;
mod kernel;
mod word;

pub use analysis::{defect_max, homogenize_estimate, DefectReport, HomogenizationEstimate};
pub use ball::{ball, ball_size};
pub use brooks::{brooks_eval, count_occurrences, BrooksQM, Conjugated, QuasiMorphism};
pub use kernel::{
    qm_commensurability_witness, quasi_kernel_cover, quasi_kernel_patch, separated_values,
    QmCommensurability, QuasiKernelCover, QuasiKernelPatch,
};
pub use word::{ReducedWord, MAX_RANK};

use crate::cert::Group;

/// The free group of a given rank as a [`Group`] oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FreeGroup {
    pub rank: u32,
}

impl FreeGroup {
    pub fn new(rank: u32) -> Self {
        FreeGroup { rank }
    }
}

impl Group for FreeGroup {
    type Elem = ReducedWord;

    fn op(&self, x: &ReducedWord, y: &ReducedWord) -> ReducedWord {
        x.mul(y).expect("words of the group's rank")
    }

    fn inv(&self, x: &ReducedWord) -> ReducedWord {
        x.inv()
    }

    fn identity(&self) -> ReducedWord {
        ReducedWord::identity(self.rank)
    }
}

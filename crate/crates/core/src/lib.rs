//! Exact cut-and-project model sets, approximate-group covering certificates
//! and Brooks quasi-morphisms on free groups.
//!
//! The crate is split along the objects it manipulates:
//!
//! * [`exact`]: rationals, real quadratic fields `Q(sqrt D)` and the small
//!   amount of exact linear algebra needed to validate lattice bases.
//! * [`cps`]: cut-and-project schemes `R^d x R^m` with exact bases, model-set
//!   patches, the star map, window towers and commensurability witnesses.
//! * [`cert`]: covering certificates over any group given by an operation
//!   oracle (Ruzsa covering, intersections, `AA ⊆ FA` checks), gap and
//!   covering-radius measurements and the Massicot–Wagner constants.
//! * [`freegroup`]: reduced words, Brooks counting quasi-morphisms, defects,
//!   homogenization and quasi-kernels.
//!
//! Every membership decision is made in exact arithmetic. Floats only appear
//! in measurements (gaps, radii) and in human-facing output.

pub mod cert;
pub mod cps;
pub mod error;
pub mod exact;
pub mod freegroup;
pub mod format;

pub use cert::{CoverCertificate, Relation};
pub use cps::{CutProjectScheme, LatticePoint, ModelSetPatch, Window};
pub use error::{Error, Result};
pub use exact::{ExactMatrix, QuadraticField, QuadraticNumber, RationalBox, Rational};
pub use freegroup::{BrooksQM, QuasiMorphism, ReducedWord};


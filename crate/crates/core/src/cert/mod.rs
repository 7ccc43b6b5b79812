//! Covering and commensurability certificates over finite truncations of
//! groups, plus gap and covering-radius measurements.
//!
//! Groups are supplied as operation oracles through [`Group`]. All
//! membership decisions go through exact predicates; distances are floats.

mod certificate;
mod gaps;
mod group;
mod intersection;
mod massicot;
mod product;
mod ruzsa;

pub use certificate::{check_cover, CoverCertificate, Relation};
pub use gaps::{covering_radius, min_gap, sumset, CoveringReport, GapReport};
pub use group::{check_group_axioms, Embedding, FiniteGroupView, Group, IntegerLattice};
pub use intersection::{intersection_cover, UncoveredElement};
pub use massicot::{massicot_wagner_bound, IntegerPower, MassicotWagnerBound};
pub use product::product_cover_check;
pub use ruzsa::ruzsa_cover;

//! Cut-and-project schemes `(R^d, R^m, Γ)` with exact lattice bases.
//!
//! A scheme is a basis matrix whose top rows project to the physical space
//! and bottom rows to the internal space. Windows are symmetric rational
//! boxes in the internal space, and membership of a lattice point in a
//! model set is always decided exactly on its internal coordinates.

mod graph;
mod io;
mod patch;
mod scheme;
mod tower;
mod view;
mod window;
mod witness;

pub use graph::{graph_min_gap, physical_min_norm, GraphGap, PhysicalMinNorm};
pub use io::{load_scheme, parse_scheme, scheme_to_json, EntryFile, RatLiteral, SchemeFile};
pub use patch::{
    generate_patch, generate_patch_with_limit, in_patch, index_bounds, ModelSetPatch,
    DEFAULT_ENUMERATION_LIMIT,
};
pub use scheme::{star_map, validate_scheme, CutProjectScheme, LatticePoint, SchemeValidation};
pub use tower::{good_model_tower, TowerLevel, TowerReport, WindowTower};
pub use view::SchemeView;
pub use window::{window_halve, window_intersect, window_subset, window_sumset, Window};
pub use witness::{
    doubling_witness, greedy_internal_cover, window_commensurability_witness,
    window_commensurability_witness_with_budget, WindowCommensurability, DEFAULT_COVER_BUDGET,
};

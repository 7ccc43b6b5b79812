//! Shared fixtures for the benchmarks.

use meyerkit::cps::{CutProjectScheme, Window};
use meyerkit::exact::{integer, RationalBox};
use meyerkit::freegroup::{BrooksQM, ReducedWord};

pub fn fibonacci_unit_window() -> (CutProjectScheme, Window) {
    (CutProjectScheme::fibonacci(), Window::cube(1, integer(1)).expect("positive width"))
}

/// `[-r, r]` in one dimension.
pub fn symmetric_box(r: i64) -> RationalBox {
    RationalBox::parse(&format!("{}..{}", -r, r)).expect("box literal")
}

pub fn brooks(word: &str) -> BrooksQM {
    let w: ReducedWord = word.parse().expect("reduced word");
    BrooksQM::new(w).expect("nontrivial pattern")
}

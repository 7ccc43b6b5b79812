//! Exact scalars and linear algebra.
//!
//! Coordinates of lattice points live in a real quadratic field `Q(sqrt D)`.
//! Purely rational schemes use the sentinel field `D = 1`, in which every
//! number has a vanishing irrational part.

mod matrix;
mod quadratic;
mod rational;
mod rbox;

pub use matrix::ExactMatrix;
pub use matrix::rational_rank;
pub use quadratic::{galois_conjugate, quad_sign, QuadraticField, QuadraticNumber};
pub use rational::{
    integer, parse_rational, ratio, rational_ceil, rational_floor, rational_to_f64, Rational,
};
pub use rbox::{Interval, RationalBox};

use std::fmt;

use num_traits::Signed;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{integer, QuadraticNumber, Rational};

/// Symmetric axis-aligned box `[-r_1, r_1] x ... x [-r_m, r_m]` in the
/// internal space. A half-open window (`closed = false`) drops the upper
/// faces: `[-r_i, r_i)` on every axis. With `m = 0` the window is `{0}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Window {
    half_widths: Vec<Rational>,
    closed: bool,
}

impl Window {
    pub fn new(half_widths: Vec<Rational>, closed: bool) -> Result<Self> {
        if let Some(r) = half_widths.iter().find(|r| !r.is_positive()) {
            return Err(Error::InvalidWindow(format!("half-width {r} is not positive")));
        }
        Ok(Window { half_widths, closed })
    }

    pub fn closed(half_widths: Vec<Rational>) -> Result<Self> {
        Self::new(half_widths, true)
    }

    /// Same half-width on each of `m` axes.
    pub fn cube(m: usize, r: Rational) -> Result<Self> {
        Self::new(vec![r; m], true)
    }

    /// The window of an internal space of dimension 0.
    pub fn trivial() -> Self {
        Window { half_widths: Vec::new(), closed: true }
    }

    /// Parses `r1,r2,...`; an empty string is the trivial window.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Self::trivial());
        }
        let widths = text
            .split(',')
            .map(|t| crate::exact::parse_rational(t.trim()))
            .collect::<Result<Vec<_>>>()?;
        Self::closed(widths)
    }

    pub fn dim(&self) -> usize {
        self.half_widths.len()
    }

    pub fn half_widths(&self) -> &[Rational] {
        &self.half_widths
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// Exact membership of an internal vector.
    pub fn contains(&self, x: &[QuadraticNumber]) -> bool {
        assert_eq!(x.len(), self.dim(), "internal dimension");
        x.iter().zip(&self.half_widths).all(|(xi, r)| {
            let r = QuadraticNumber::from_rational(r.clone(), xi.field());
            let below = (xi + &r).sign() >= 0;
            let above = (&r - xi).sign();
            below && if self.closed { above >= 0 } else { above > 0 }
        })
    }

    /// Lower and upper bound on axis `i`.
    pub fn axis(&self, i: usize) -> (Rational, Rational) {
        (-self.half_widths[i].clone(), self.half_widths[i].clone())
    }

    fn same_dim(&self, other: &Window) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        Ok(())
    }

    pub fn scaled(&self, k: &Rational) -> Result<Window> {
        Window::new(self.half_widths.iter().map(|r| r * k).collect(), self.closed)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.half_widths.iter().map(crate::exact::rational_to_f64).collect()
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.half_widths.is_empty() {
            return write!(f, "{{0}}");
        }
        let close = if self.closed { "]" } else { ")" };
        let axes: Vec<String> = self.half_widths.iter().map(|r| format!("[-{r}, {r}{close}")).collect();
        write!(f, "{}", axes.join(" x "))
    }
}

impl Serialize for Window {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Window", 2)?;
        let widths: Vec<String> = self.half_widths.iter().map(ToString::to_string).collect();
        st.serialize_field("half_widths", &widths)?;
        st.serialize_field("closed", &self.closed)?;
        st.end()
    }
}

/// Minkowski sum; closed only when both summands are closed.
pub fn window_sumset(w1: &Window, w2: &Window) -> Result<Window> {
    w1.same_dim(w2)?;
    let widths = w1.half_widths.iter().zip(&w2.half_widths).map(|(a, b)| a + b).collect();
    Window::new(widths, w1.closed && w2.closed)
}

/// `w1 ⊆ w2`. A closed window sits inside a half-open one only with strict
/// inequality on every axis.
pub fn window_subset(w1: &Window, w2: &Window) -> Result<bool> {
    w1.same_dim(w2)?;
    let strict = w1.closed && !w2.closed;
    Ok(w1
        .half_widths
        .iter()
        .zip(&w2.half_widths)
        .all(|(a, b)| if strict { a < b } else { a <= b }))
}

pub fn window_halve(w: &Window) -> Window {
    let two = integer(2);
    Window { half_widths: w.half_widths.iter().map(|r| r / &two).collect(), closed: w.closed }
}

/// `w1 ∩ w2`, when it is again a window of one closedness type.
pub fn window_intersect(w1: &Window, w2: &Window) -> Result<Window> {
    w1.same_dim(w2)?;
    let widths: Vec<Rational> =
        w1.half_widths.iter().zip(&w2.half_widths).map(|(a, b)| a.min(b).clone()).collect();
    if w1.closed == w2.closed {
        return Window::new(widths, w1.closed);
    }
    let (c, o) = if w1.closed { (w1, w2) } else { (w2, w1) };
    let pairs = || c.half_widths.iter().zip(&o.half_widths);
    if pairs().all(|(rc, ro)| rc < ro) {
        Window::new(widths, true)
    } else if pairs().all(|(rc, ro)| ro <= rc) {
        Window::new(widths, false)
    } else {
        Err(Error::InvalidWindow(format!(
            "intersection of {w1} and {w2} mixes closed and half-open faces"
        )))
    }
}

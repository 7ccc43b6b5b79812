use std::fmt;

use num_traits::Signed;

use super::quadratic::QuadraticNumber;
use super::rational::{parse_rational, rational_to_f64, Rational};
use crate::error::{Error, Result};

/// Closed rational interval `[lo, hi]`; empty when `lo > hi`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        Interval { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn symmetric(r: Rational) -> Self {
        Interval { lo: -r.clone(), hi: r }
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi }
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = products.iter().min().expect("four products").clone();
        let hi = products.iter().max().expect("four products").clone();
        Interval { lo, hi }
    }

    /// Exact closed membership test for a quadratic number.
    pub fn contains(&self, x: &QuadraticNumber) -> bool {
        let lo = QuadraticNumber::from_rational(self.lo.clone(), x.field());
        let hi = QuadraticNumber::from_rational(self.hi.clone(), x.field());
        (x - &lo).sign() >= 0 && (&hi - x).sign() >= 0
    }

    pub fn intersect(&self, other: &Interval) -> Interval {
        Interval {
            lo: (&self.lo).max(&other.lo).clone(),
            hi: (&self.hi).min(&other.hi).clone(),
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

/// Axis-aligned box with rational corners, used for physical regions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalBox {
    axes: Vec<Interval>,
}

impl RationalBox {
    pub fn new(axes: Vec<Interval>) -> Self {
        RationalBox { axes }
    }

    /// Parses `lo..hi[,lo..hi...]` with `RAT` endpoints.
    pub fn parse(text: &str) -> Result<Self> {
        let mut axes = Vec::new();
        for part in text.split(',') {
            let (lo, hi) = part
                .split_once("..")
                .ok_or_else(|| Error::InvalidBox(format!("expected lo..hi, got `{part}`")))?;
            axes.push(Interval::new(parse_rational(lo)?, parse_rational(hi)?));
        }
        Ok(RationalBox { axes })
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn axes(&self) -> &[Interval] {
        &self.axes
    }

    pub fn is_empty(&self) -> bool {
        self.axes.iter().any(Interval::is_empty)
    }

    pub fn contains(&self, point: &[QuadraticNumber]) -> bool {
        point.len() == self.axes.len()
            && self.axes.iter().zip(point).all(|(axis, x)| axis.contains(x))
    }

    /// The box scaled about the origin by a nonnegative factor; the `n`-fold
    /// sumset of points in `self` lies in `self.scaled(n)`.
    pub fn scaled(&self, factor: &Rational) -> RationalBox {
        assert!(!factor.is_negative(), "negative box scale");
        RationalBox {
            axes: self
                .axes
                .iter()
                .map(|a| Interval::new(&a.lo * factor, &a.hi * factor))
                .collect(),
        }
    }

    pub fn intersect(&self, other: &RationalBox) -> Result<RationalBox> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        Ok(RationalBox {
            axes: self.axes.iter().zip(&other.axes).map(|(a, b)| a.intersect(b)).collect(),
        })
    }

    pub fn contains_origin(&self) -> bool {
        self.axes.iter().all(|a| !a.lo.is_positive() && !a.hi.is_negative())
    }

    pub fn to_f64(&self) -> Vec<(f64, f64)> {
        self.axes.iter().map(|a| (rational_to_f64(&a.lo), rational_to_f64(&a.hi))).collect()
    }

}

impl fmt::Display for RationalBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, axis) in self.axes.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{axis}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::integer;

    #[test]
    fn parse_and_display_round_trip() {
        let b = RationalBox::parse("-50..50,0..1/2").unwrap();
        assert_eq!(b.dim(), 2);
        assert_eq!(b.to_string(), "-50..50,0..1/2");
        assert!(RationalBox::parse("0..").is_err());
        assert!(RationalBox::parse("3").is_err());
    }

    #[test]
    fn empty_and_origin() {
        assert!(RationalBox::parse("1..0").unwrap().is_empty());
        assert!(!RationalBox::parse("0..0").unwrap().is_empty());
        assert!(RationalBox::parse("-1..3").unwrap().contains_origin());
        assert!(!RationalBox::parse("1..3").unwrap().contains_origin());
    }

    #[test]
    fn interval_product_encloses_corners() {
        let a = Interval::new(integer(-2), integer(3));
        let b = Interval::new(integer(-5), integer(1));
        let p = a.mul(&b);
        assert_eq!(p.lo, integer(-15));
        assert_eq!(p.hi, integer(10));
    }
}

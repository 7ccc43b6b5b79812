use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};

use super::rational::{rational_to_f64, Rational};
use super::rbox::Interval;
use crate::error::{Error, Result};

/// The field `Q(sqrt D)` a number lives in. `D = 1` is the sentinel for `Q`
/// itself, in which irrational parts are always zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadraticField(u64);

impl QuadraticField {
    pub fn new(radicand: u64) -> Result<Self> {
        if radicand < 2 || !is_squarefree(radicand) {
            return Err(Error::InvalidRadicand(radicand));
        }
        Ok(QuadraticField(radicand))
    }

    pub const fn rational() -> Self {
        QuadraticField(1)
    }

    /// Builds the field from an optional radicand, `None` meaning `Q`.
    pub fn from_option(radicand: Option<u64>) -> Result<Self> {
        radicand.map_or(Ok(Self::rational()), Self::new)
    }

    pub fn radicand(self) -> u64 {
        self.0
    }

    pub fn is_rational(self) -> bool {
        self.0 == 1
    }

    pub fn as_option(self) -> Option<u64> {
        (!self.is_rational()).then_some(self.0)
    }

    /// Outer rational enclosure `[lo, hi]` of `sqrt D` of width `2^-bits`.
    pub fn sqrt_enclosure(self, bits: u32) -> (Rational, Rational) {
        let scale = BigInt::one() << (2 * bits);
        let s = (BigInt::from(self.0) * scale).sqrt();
        let den = BigInt::one() << bits;
        if self.is_rational() {
            let one = Rational::one();
            return (one.clone(), one);
        }
        (
            Rational::new(s.clone(), den.clone()),
            Rational::new(s + 1, den),
        )
    }
}

impl fmt::Display for QuadraticField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "Q")
        } else {
            write!(f, "Q(sqrt {})", self.0)
        }
    }
}

fn is_squarefree(n: u64) -> bool {
    let mut n = n;
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// Exact real number `a + b sqrt D`.
#[derive(Debug, Clone)]
pub struct QuadraticNumber {
    a: Rational,
    b: Rational,
    field: QuadraticField,
}

impl QuadraticNumber {
    pub fn new(a: Rational, b: Rational, field: QuadraticField) -> Result<Self> {
        if field.is_rational() && !b.is_zero() {
            return Err(Error::Domain(
                "irrational part in a purely rational field".into(),
            ));
        }
        Ok(QuadraticNumber { a, b, field })
    }

    pub fn from_rational(a: Rational, field: QuadraticField) -> Self {
        QuadraticNumber { a, b: Rational::zero(), field }
    }

    pub fn from_int(n: i64, field: QuadraticField) -> Self {
        Self::from_rational(Rational::from_integer(n.into()), field)
    }

    pub fn zero(field: QuadraticField) -> Self {
        Self::from_int(0, field)
    }

    /// `sqrt D` itself.
    pub fn sqrt(field: QuadraticField) -> Result<Self> {
        Self::new(Rational::zero(), Rational::one(), field)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn field(&self) -> QuadraticField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn sign(&self) -> i32 {
        quad_sign(self)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let d = Rational::from_integer(self.field.0.into());
        let norm = &self.a * &self.a - &self.b * &self.b * d;
        // norm != 0 because D is not a perfect square
        Some(QuadraticNumber {
            a: &self.a / &norm,
            b: -(&self.b / &norm),
            field: self.field,
        })
    }

    pub fn scale(&self, r: &Rational) -> Self {
        QuadraticNumber { a: &self.a * r, b: &self.b * r, field: self.field }
    }

    pub fn mul_int(&self, n: i64) -> Self {
        let r = Rational::from_integer(n.into());
        self.scale(&r)
    }

    /// `a^2 - D b^2`, the field norm.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * Rational::from_integer(self.field.0.into())
    }

    pub fn abs(&self) -> Self {
        if self.sign() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Nearest-float view. Cancellation between the two parts is avoided by
    /// going through the norm when they have opposite signs.
    pub fn to_f64(&self) -> f64 {
        let root = (self.field.0 as f64).sqrt();
        let a = rational_to_f64(&self.a);
        let b = rational_to_f64(&self.b);
        if self.b.is_zero() || self.a.is_zero() || self.a.is_positive() == self.b.is_positive() {
            return a + b * root;
        }
        let conj = a - b * root;
        rational_to_f64(&self.norm()) / conj
    }

    /// Outer rational enclosure of the value.
    pub fn enclosure(&self, bits: u32) -> Interval {
        if self.b.is_zero() {
            return Interval::point(self.a.clone());
        }
        let (lo, hi) = self.field.sqrt_enclosure(bits);
        let x = &self.a + &self.b * &lo;
        let y = &self.a + &self.b * &hi;
        if x <= y {
            Interval::new(x, y)
        } else {
            Interval::new(y, x)
        }
    }

    fn joined_field(&self, other: &Self) -> QuadraticField {
        if self.field == other.field || other.b.is_zero() {
            self.field
        } else if self.b.is_zero() {
            other.field
        } else {
            panic!("{}", Error::FieldMismatch(self.field.0, other.field.0))
        }
    }

    /// Field the two numbers can be combined in, if any.
    pub fn compatible(&self, other: &Self) -> bool {
        self.field == other.field || self.b.is_zero() || other.b.is_zero()
    }
}

/// Exact sign of `a + b sqrt D` in {-1, 0, 1}.
pub fn quad_sign(x: &QuadraticNumber) -> i32 {
    let sa = sign_of(&x.a);
    let sb = sign_of(&x.b);
    if sb == 0 {
        return sa;
    }
    if sa == 0 || sa == sb {
        return sb;
    }
    // opposite signs: compare a^2 against b^2 D
    let lhs = &x.a * &x.a;
    let rhs = &x.b * &x.b * Rational::from_integer(x.field.0.into());
    match lhs.cmp(&rhs) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => 0,
    }
}

/// The field automorphism `a + b sqrt D -> a - b sqrt D`.
pub fn galois_conjugate(x: &QuadraticNumber) -> QuadraticNumber {
    QuadraticNumber { a: x.a.clone(), b: -x.b.clone(), field: x.field }
}

fn sign_of(r: &Rational) -> i32 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

impl PartialEq for QuadraticNumber {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && (self.b.is_zero() || self.field == other.field)
    }
}

impl Eq for QuadraticNumber {}

impl Hash for QuadraticNumber {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.a.hash(state);
        self.b.hash(state);
    }
}

impl PartialOrd for QuadraticNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadraticNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        quad_sign(&(self - other)).cmp(&0)
    }
}

/// Serialized as `{"a": "p/q", "b": "r/s"}`, the scheme-file entry format.
impl serde::Serialize for QuadraticNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("QuadraticNumber", 2)?;
        st.serialize_field("a", &self.a.to_string())?;
        st.serialize_field("b", &self.b.to_string())?;
        st.end()
    }
}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return write!(f, "{}*sqrt({})", self.b, self.field.0);
        }
        if self.b.is_negative() {
            write!(f, "{} - {}*sqrt({})", self.a, -self.b.clone(), self.field.0)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.field.0)
        }
    }
}

impl<'a> Add<&'a QuadraticNumber> for &'a QuadraticNumber {
    type Output = QuadraticNumber;
    fn add(self, rhs: &QuadraticNumber) -> QuadraticNumber {
        let field = self.joined_field(rhs);
        QuadraticNumber { a: &self.a + &rhs.a, b: &self.b + &rhs.b, field }
    }
}

impl<'a> Sub<&'a QuadraticNumber> for &'a QuadraticNumber {
    type Output = QuadraticNumber;
    fn sub(self, rhs: &QuadraticNumber) -> QuadraticNumber {
        let field = self.joined_field(rhs);
        QuadraticNumber { a: &self.a - &rhs.a, b: &self.b - &rhs.b, field }
    }
}

impl<'a> Mul<&'a QuadraticNumber> for &'a QuadraticNumber {
    type Output = QuadraticNumber;
    fn mul(self, rhs: &QuadraticNumber) -> QuadraticNumber {
        let field = self.joined_field(rhs);
        let d = Rational::from_integer(field.0.into());
        QuadraticNumber {
            a: &self.a * &rhs.a + &self.b * &rhs.b * d,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
            field,
        }
    }
}

impl Neg for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        QuadraticNumber { a: -self.a.clone(), b: -self.b.clone(), field: self.field }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<QuadraticNumber> for QuadraticNumber {
            type Output = QuadraticNumber;
            fn $method(self, rhs: QuadraticNumber) -> QuadraticNumber {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a QuadraticNumber> for QuadraticNumber {
            type Output = QuadraticNumber;
            fn $method(self, rhs: &QuadraticNumber) -> QuadraticNumber {
                (&self).$method(rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        QuadraticNumber { a: -self.a, b: -self.b, field: self.field }
    }
}

impl AddAssign<&QuadraticNumber> for QuadraticNumber {
    fn add_assign(&mut self, rhs: &QuadraticNumber) {
        self.field = self.joined_field(rhs);
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn q5(a: (i64, i64), b: (i64, i64)) -> QuadraticNumber {
        QuadraticNumber::new(
            Rational::new(a.0.into(), a.1.into()),
            Rational::new(b.0.into(), b.1.into()),
            QuadraticField::new(5).unwrap(),
        )
        .unwrap()
    }

    /// Fixed-point evaluation of `a + b sqrt D` scaled by `2^200`, rounded
    /// toward zero per term. Independent of the case split in `quad_sign`.
    fn fixed_point_200(x: &QuadraticNumber) -> BigInt {
        let shift = 200u32;
        let root = (BigInt::from(x.field().radicand()) << (2 * shift)).sqrt();
        let scaled_a = (x.a().numer() << shift) / x.a().denom();
        let scaled_b = (x.b().numer() * root) / x.b().denom();
        scaled_a + scaled_b
    }

    #[test]
    fn sign_examples() {
        assert_eq!(quad_sign(&q5((0, 1), (0, 1))), 0);
        assert_eq!(quad_sign(&q5((1, 1), (-1, 1))), -1);
        assert_eq!(quad_sign(&q5((3, 1), (-1, 1))), 1);
        // float oracle agrees on the derived examples
        assert!(q5((1, 1), (-1, 1)).to_f64() < 0.0);
        assert!(q5((3, 1), (-1, 1)).to_f64() > 0.0);
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(galois_conjugate(&q5((2, 1), (3, 1))), q5((2, 1), (-3, 1)));
        assert_eq!(galois_conjugate(&q5((1, 1), (0, 1))), q5((1, 1), (0, 1)));
        let x = q5((-7, 2), (1, 3));
        assert_eq!(galois_conjugate(&galois_conjugate(&x)), x);
    }

    #[test]
    fn rejects_bad_radicands() {
        for d in [0, 1, 4, 8, 12, 18, 49] {
            assert!(QuadraticField::new(d).is_err(), "{d}");
        }
        for d in [2, 3, 5, 6, 7, 10, 30] {
            assert!(QuadraticField::new(d).is_ok(), "{d}");
        }
    }

    #[test]
    fn rational_field_forbids_irrational_part() {
        let one = Rational::from_integer(1.into());
        assert!(QuadraticNumber::new(one.clone(), one, QuadraticField::rational()).is_err());
    }

    #[test]
    fn rational_operands_mix_with_any_field() {
        let x = q5((1, 2), (1, 2));
        let two = QuadraticNumber::from_int(2, QuadraticField::rational());
        let y = &x * &two;
        assert_eq!(y, q5((1, 1), (1, 1)));
        assert_eq!(y.field(), QuadraticField::new(5).unwrap());
    }

    #[test]
    #[should_panic(expected = "mixed quadratic fields")]
    fn mixed_irrational_fields_panic() {
        let x = q5((0, 1), (1, 1));
        let y = QuadraticNumber::sqrt(QuadraticField::new(2).unwrap()).unwrap();
        let _ = &x + &y;
    }

    #[test]
    fn inverse_and_enclosure() {
        let phi = q5((1, 2), (1, 2));
        let inv = phi.inv().unwrap();
        assert_eq!(&phi * &inv, QuadraticNumber::from_int(1, phi.field()));
        // 1/phi = phi - 1
        assert_eq!(inv, q5((-1, 2), (1, 2)));
        let enc = phi.enclosure(40);
        let v = Rational::new(1618033988749894i64.into(), 1_000_000_000_000_000i64.into());
        assert!(enc.lo <= v && v <= enc.hi + Rational::new(1.into(), 1_000_000_000_000i64.into()));
        assert!(QuadraticNumber::zero(phi.field()).inv().is_none());
    }

    #[test]
    fn float_view_avoids_cancellation() {
        // 9 - 4 sqrt 5 = 1 / (9 + 4 sqrt 5)
        let x = q5((9, 1), (-4, 1));
        let expected = 1.0 / (9.0 + 4.0 * 5f64.sqrt());
        assert!((x.to_f64() - expected).abs() < 1e-17);
    }

    fn small_q5() -> impl Strategy<Value = QuadraticNumber> {
        (-50i64..50, 1i64..12, -50i64..50, 1i64..12).prop_map(|(an, ad, bn, bd)| q5((an, ad), (bn, bd)))
    }

    proptest! {
        #[test]
        fn field_axioms(x in small_q5(), y in small_q5(), z in small_q5()) {
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x * &y, &y * &x);
        }

        #[test]
        fn sign_is_odd(x in small_q5()) {
            let s = quad_sign(&x);
            if s != 0 {
                prop_assert_eq!(s * quad_sign(&-x.clone()), -1);
            }
        }

        #[test]
        fn conjugation_is_a_ring_morphism(x in small_q5(), y in small_q5()) {
            prop_assert_eq!(galois_conjugate(&(&x + &y)), &galois_conjugate(&x) + &galois_conjugate(&y));
            prop_assert_eq!(galois_conjugate(&(&x * &y)), &galois_conjugate(&x) * &galois_conjugate(&y));
        }
    }

    #[test]
    fn sign_agrees_with_200_bit_fixed_point() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5157);
        let fields = [2u64, 3, 5, 7, 13, 1_000_003];
        let threshold = BigInt::from(1) << (200 - 64);
        let mut compared = 0;
        for _ in 0..10_000 {
            let field = QuadraticField::new(fields[rng.gen_range(0..fields.len())]).unwrap();
            // near-cancelling pairs from continued-fraction-like numerators
            let big = |rng: &mut rand_chacha::ChaCha8Rng| -> BigInt {
                BigInt::from(rng.gen_range(-(1i64 << 40)..(1i64 << 40)))
            };
            let b = Rational::new(big(&mut rng), BigInt::from(rng.gen_range(1i64..1_000_000)));
            let approx = -rational_to_f64(&b) * (field.radicand() as f64).sqrt();
            let jitter = rng.gen_range(-3i64..=3);
            let a = Rational::new(
                BigInt::from((approx * 1000.0) as i64 + jitter),
                BigInt::from(1000),
            );
            let x = QuadraticNumber::new(a, b, field).unwrap();
            let fixed = fixed_point_200(&x);
            // two truncations lose at most 2 units
            if fixed.abs() <= threshold {
                continue;
            }
            compared += 1;
            let oracle = if fixed.is_positive() { 1 } else { -1 };
            assert_eq!(quad_sign(&x), oracle, "{x}");
        }
        assert!(compared > 9_000, "{compared}");
    }
}

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::Rational;

/// `base^exponent`, kept unexpanded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerPower {
    pub base: BigUint,
    pub exponent: BigUint,
}

impl IntegerPower {
    /// The expanded value when it has at most `max_bits` bits.
    pub fn expand(&self, max_bits: u64) -> Option<BigUint> {
        let exp = self.exponent.to_u64()?;
        if self.base.is_zero() || self.base.is_one() {
            return Some(if exp == 0 { BigUint::one() } else { self.base.clone() });
        }
        if exp.checked_mul(self.base.bits())? > max_bits {
            return None;
        }
        Some(self.base.pow(u32::try_from(exp).ok()?))
    }
}

impl fmt::Display for IntegerPower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.base, self.exponent)
    }
}

/// Constants from the Massicot–Wagner covering argument for a
/// `K`-approximate subgroup and `m >= 1`:
///
/// * `n` is the least integer with `(1 - 1/(4m))^-n >= K`,
/// * `c = (2K)^-(2^n - 1)`,
/// * at most `2K / c + 1 = (2K)^(2^n) + 1` translates are needed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MassicotWagnerBound {
    pub k: u64,
    pub m: u64,
    pub n: u64,
    /// `c = 1 / c_inverse`.
    pub c_inverse: IntegerPower,
    /// Cover bound minus one.
    pub cover_power: IntegerPower,
}

impl MassicotWagnerBound {
    pub fn c_display(&self) -> String {
        if self.c_inverse.exponent.is_zero() {
            "1".to_string()
        } else {
            format!("{}^-{}", self.c_inverse.base, self.c_inverse.exponent)
        }
    }

    pub fn cover_bound_display(&self) -> String {
        format!("{} + 1", self.cover_power)
    }

    /// `c` as an exact rational, when the denominator fits in `max_bits`.
    pub fn c_exact(&self, max_bits: u64) -> Option<Rational> {
        let den = self.c_inverse.expand(max_bits)?;
        Some(Rational::new(1.into(), den.into()))
    }

    pub fn cover_bound_exact(&self, max_bits: u64) -> Option<BigUint> {
        Some(self.cover_power.expand(max_bits)? + 1u32)
    }
}

#[derive(Serialize)]
struct BoundJson {
    k: u64,
    m: u64,
    n: u64,
    c: String,
    cover_bound: String,
    c_exact: Option<String>,
    cover_bound_exact: Option<String>,
}

impl Serialize for MassicotWagnerBound {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BoundJson {
            k: self.k,
            m: self.m,
            n: self.n,
            c: self.c_display(),
            cover_bound: self.cover_bound_display(),
            c_exact: self.c_exact(4096).map(|c| c.to_string()),
            cover_bound_exact: self.cover_bound_exact(4096).map(|b| b.to_string()),
        }
        .serialize(s)
    }
}

/// `(4m)^n >= K (4m - 1)^n`, i.e. `(1 - 1/(4m))^-n >= K`, decided exactly.
fn ratio_power_reaches(k: u64, m: u64, n: u64) -> bool {
    let exp = u32::try_from(n).expect("exponent fits in u32");
    let four_m = BigUint::from(4 * m);
    four_m.pow(exp) >= BigUint::from(k) * (four_m - 1u32).pow(exp)
}

pub fn massicot_wagner_bound(k: u64, m: u64) -> Result<MassicotWagnerBound> {
    if k == 0 || m == 0 {
        return Err(Error::Domain(format!("need K >= 1 and m >= 1, got K = {k}, m = {m}")));
    }
    if m > u64::MAX / 8 {
        return Err(Error::Domain(format!("m = {m} too large")));
    }
    // float estimate, then settle exactly
    let estimate = if k == 1 {
        0.0
    } else {
        (k as f64).ln() / -(1.0 - 1.0 / (4.0 * m as f64)).ln()
    };
    let mut n = estimate.ceil().max(0.0) as u64;
    while !ratio_power_reaches(k, m, n) {
        n += 1;
    }
    while n > 0 && ratio_power_reaches(k, m, n - 1) {
        n -= 1;
    }
    let two_k = BigUint::from(2u32) * k;
    let two_pow_n = BigUint::one() << n;
    Ok(MassicotWagnerBound {
        k,
        m,
        n,
        c_inverse: IntegerPower { base: two_k.clone(), exponent: &two_pow_n - 1u32 },
        cover_power: IntegerPower { base: two_k, exponent: two_pow_n },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_case() {
        let b = massicot_wagner_bound(1, 1).unwrap();
        assert_eq!(b.n, 0);
        assert_eq!(b.c_display(), "1");
        assert_eq!(b.c_exact(64), Some(Rational::from_integer(1.into())));
        assert_eq!(b.cover_bound_exact(64), Some(BigUint::from(3u32)));
    }

    #[test]
    fn k2_m2() {
        let b = massicot_wagner_bound(2, 2).unwrap();
        assert_eq!(b.n, 6);
        assert_eq!(b.c_display(), "4^-63");
        assert_eq!(b.cover_bound_display(), "4^64 + 1");
        assert_eq!(b.cover_bound_exact(4096), Some((BigUint::one() << 128) + 1u32));
        // (8/7)^5 < 2 <= (8/7)^6
        assert!(BigUint::from(8u32).pow(5) < BigUint::from(2u32) * BigUint::from(7u32).pow(5));
        assert!(BigUint::from(8u32).pow(6) >= BigUint::from(2u32) * BigUint::from(7u32).pow(6));
    }

    #[test]
    fn domain_errors() {
        assert!(massicot_wagner_bound(0, 1).is_err());
        assert!(massicot_wagner_bound(1, 0).is_err());
    }

    #[test]
    fn n_is_minimal_and_bounds_grow_with_m() {
        for k in 1..40 {
            for m in 1..12 {
                let b = massicot_wagner_bound(k, m).unwrap();
                assert!(ratio_power_reaches(k, m, b.n));
                if b.n >= 1 {
                    assert!(!ratio_power_reaches(k, m, b.n - 1));
                }
                let next = massicot_wagner_bound(k, m + 1).unwrap();
                assert!(next.n >= b.n);
                assert!(next.cover_power.exponent >= b.cover_power.exponent);
            }
        }
    }

    #[test]
    fn large_parameters_stay_symbolic() {
        let b = massicot_wagner_bound(1000, 50).unwrap();
        assert!(b.n > 1000);
        assert!(b.c_exact(4096).is_none());
        let json = serde_json::to_value(&b).unwrap();
        assert!(json["c_exact"].is_null());
        assert!(json["c"].as_str().unwrap().starts_with("2000^-"));
    }
}

//! Float formatting shared by CSV and report output.

/// Formats `x` like C's `%.{sig}g`: `sig` significant digits, trailing zeros
/// stripped, scientific notation outside `1e-4 <= |x| < 10^sig`.
pub fn fmt_sig(x: f64, sig: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sig = sig.max(1);
    let sci = format!("{:.*e}", sig - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= sig as i32 {
        let mantissa = strip_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        strip_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

/// 12 significant digits, the precision used for all float output.
pub fn fmt12(x: f64) -> String {
    fmt_sig(x, 12)
}

/// Rounds `x` to 12 significant digits and returns it as a float.
pub fn round12(x: f64) -> f64 {
    fmt12(x).parse().unwrap_or(x)
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_percent_g() {
        assert_eq!(fmt12(0.0), "0");
        assert_eq!(fmt12(1.0), "1");
        assert_eq!(fmt12(-3.5), "-3.5");
        assert_eq!(fmt12(1.618033988749895), "1.61803398875");
        assert_eq!(fmt12(100.0), "100");
        assert_eq!(fmt12(1e-5), "1e-05");
        assert_eq!(fmt12(123456789012345.0), "1.23456789012e+14");
        assert_eq!(fmt12(0.000123), "0.000123");
    }

    #[test]
    fn rounding_carries_into_exponent() {
        assert_eq!(fmt_sig(9.9999999999999, 12), "10");
        assert_eq!(fmt_sig(999999999999.9, 12), "1e+12");
    }
}

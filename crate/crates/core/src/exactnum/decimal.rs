use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Decimal expansion of `r` with `frac_digits` digits after the point,
/// truncated toward zero.
pub fn decimal_string(r: &BigRational, frac_digits: usize) -> String {
    let scale = BigInt::from(10).pow(frac_digits as u32);
    let scaled = (r.numer().abs() * &scale) / r.denom();
    let (int, frac) = scaled.div_rem(&scale);
    let sign = if r.is_negative() && !scaled.is_zero() { "-" } else { "" };
    if frac_digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{:0>width$}", frac.to_string(), width = frac_digits)
    }
}

/// A value truncated to a fixed number of significant decimal digits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scientific {
    pub negative: bool,
    /// Significant digits, no leading zeros (or just `"0"` for zero).
    pub digits: String,
    pub exponent: i64,
}

/// Truncates `|r|` to `sig` significant digits.
pub fn scientific(r: &BigRational, sig: usize) -> Scientific {
    assert!(sig >= 1);
    if r.is_zero() {
        return Scientific {
            negative: false,
            digits: "0".into(),
            exponent: 0,
        };
    }
    let num = r.numer().abs();
    let den = r.denom().clone();
    // Estimate from digit counts, then correct by at most one.
    let mut exponent = num.to_string().len() as i64 - den.to_string().len() as i64;
    let ten = BigInt::from(10);
    let leading = |e: i64| -> BigInt {
        let shift = sig as i64 - 1 - e;
        if shift >= 0 {
            (&num * ten.pow(shift as u32)) / &den
        } else {
            &num / (&den * ten.pow((-shift) as u32))
        }
    };
    let lo = ten.pow(sig as u32 - 1);
    let hi = ten.pow(sig as u32);
    let mut m = leading(exponent);
    while m >= hi {
        exponent += 1;
        m = leading(exponent);
    }
    while m < lo {
        exponent -= 1;
        m = leading(exponent);
    }
    Scientific {
        negative: r.is_negative(),
        digits: m.to_string(),
        exponent,
    }
}

impl Scientific {
    /// `-1.129... x 10^4`
    pub fn ellipsis_form(&self) -> String {
        let sign = if self.negative { "-" } else { "" };
        let (head, tail) = self.digits.split_at(1);
        if tail.is_empty() {
            format!("{sign}{head}... x 10^{}", self.exponent)
        } else {
            format!("{sign}{head}.{tail}... x 10^{}", self.exponent)
        }
    }
}

impl fmt::Display for Scientific {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.negative { "-" } else { "" };
        let (head, tail) = self.digits.split_at(1);
        if tail.is_empty() {
            write!(f, "{sign}{head}e{}", self.exponent)
        } else {
            write!(f, "{sign}{head}.{tail}e{}", self.exponent)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn decimals() {
        assert_eq!(decimal_string(&r(-52, 31), 6), "-1.677419");
        assert_eq!(decimal_string(&r(1, 3), 0), "0");
        assert_eq!(decimal_string(&r(-1, 3000), 2), "0.00");
        assert_eq!(decimal_string(&r(7, 1), 3), "7.000");
    }

    #[test]
    fn scientific_truncates() {
        let s = scientific(&r(-112913448, 10000), 4);
        assert_eq!(s.to_string(), "-1.129e4");
        assert_eq!(s.ellipsis_form(), "-1.129... x 10^4");
        assert_eq!(scientific(&r(999, 1000), 2).to_string(), "9.9e-1");
        assert_eq!(scientific(&r(1000, 1), 1).to_string(), "1e3");
        assert_eq!(scientific(&r(-1, 3), 3).to_string(), "-3.33e-1");
    }
}

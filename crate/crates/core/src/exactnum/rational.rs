use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::word::inverse_mod_pow2;
use crate::error::{Error, Result};

/// A rational number with odd denominator, i.e. an element of the
/// 2-adic integers whose expansion is eventually periodic.
///
/// Always stored in lowest terms with a positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Q2(BigRational);

impl Q2 {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let (numer, denom) = (numer.into(), denom.into());
        if denom.is_zero() {
            return Err(Error::ZeroDenominator(format!("{numer}/0")));
        }
        Self::try_from(BigRational::new(numer, denom))
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Q2(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Q2(BigRational::zero())
    }

    /// Caller guarantees the denominator is odd.
    pub(crate) fn from_ratio_unchecked(r: BigRational) -> Self {
        debug_assert!(r.denom().is_odd(), "even denominator in {r}");
        Q2(r)
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }

    pub fn into_ratio(self) -> BigRational {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Lowest 2-adic bit. For odd `b`, `a/b ≡ a (mod 2)`.
    pub fn parity(&self) -> bool {
        self.numer().is_odd()
    }

    /// 2-adic valuation; `None` for zero.
    pub fn valuation(&self) -> Option<u64> {
        self.numer().trailing_zeros()
    }

    /// `a * b^{-1} mod 2^k`.
    pub fn residue(&self, k: u32) -> BigUint {
        if k == 0 {
            return BigUint::zero();
        }
        let modulus = BigInt::one() << k;
        let inv = BigInt::from(inverse_mod_pow2(self.denom(), k));
        (self.numer() * inv)
            .mod_floor(&modulus)
            .to_biguint()
            .expect("mod_floor is nonnegative")
    }

    /// `x * 2^n`.
    pub fn shl(&self, n: u32) -> Self {
        Q2(BigRational::new(self.numer() << n, self.denom().clone()))
    }

    /// Division by an odd integer; `None` if `d` is even.
    pub fn div_odd(&self, d: &BigInt) -> Option<Self> {
        d.is_odd().then(|| Q2(&self.0 / BigRational::from_integer(d.clone())))
    }
}

impl TryFrom<BigRational> for Q2 {
    type Error = Error;

    fn try_from(r: BigRational) -> Result<Self> {
        if r.denom().is_odd() {
            Ok(Q2(r))
        } else {
            Err(Error::NotTwoAdic(format_ratio(&r)))
        }
    }
}

impl From<i64> for Q2 {
    fn from(n: i64) -> Self {
        Q2::integer(n)
    }
}

impl From<BigInt> for Q2 {
    fn from(n: BigInt) -> Self {
        Q2::integer(n)
    }
}

impl fmt::Display for Q2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_ratio(&self.0))
    }
}

impl serde::Serialize for Q2 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl FromStr for Q2 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Q2::try_from(parse_ratio(s)?)
    }
}

/// `a` for integers, `a/b` otherwise.
pub fn format_ratio(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `a`, `-a`, `a/b` or `-a/b` with decimal digits; the denominator
/// carries no sign.
pub fn parse_ratio(s: &str) -> Result<BigRational> {
    let malformed = || Error::Malformed(s.to_string());
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|c| c.is_ascii_digit());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let unsigned = num.strip_prefix('-').unwrap_or(num);
    if !digits(unsigned) {
        return Err(malformed());
    }
    let numer = BigInt::from_str(num).map_err(|_| malformed())?;
    let denom = match den {
        None => BigInt::one(),
        Some(d) if digits(d) => BigInt::from_str(d).map_err(|_| malformed())?,
        Some(_) => return Err(malformed()),
    };
    if denom.is_zero() {
        return Err(Error::ZeroDenominator(s.to_string()));
    }
    Ok(BigRational::new(numer, denom))
}

/// Parity of an arbitrary rational, rejecting even denominators.
pub fn parity(x: &BigRational) -> Result<bool> {
    Q2::try_from(x.clone()).map(|q| q.parity())
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Q2> for &Q2 {
            type Output = Q2;
            fn $method(self, rhs: &Q2) -> Q2 {
                Q2((&self.0).$method(&rhs.0))
            }
        }

        impl $trait for Q2 {
            type Output = Q2;
            fn $method(self, rhs: Q2) -> Q2 {
                Q2(self.0.$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for Q2 {
    type Output = Q2;
    fn neg(self) -> Q2 {
        Q2(-self.0)
    }
}

impl Neg for &Q2 {
    type Output = Q2;
    fn neg(self) -> Q2 {
        Q2(-&self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Q2 {
        s.parse().unwrap()
    }

    #[test]
    fn parity_examples() {
        assert!(q("1/3").parity());
        assert!(!q("4/3").parity());
        assert!(!q("-6/7").parity());
    }

    #[test]
    fn even_denominator_rejected() {
        let err = "1/2".parse::<Q2>().unwrap_err();
        assert!(matches!(err, Error::NotTwoAdic(_)));
        assert!(err.to_string().contains("not a 2-adic integer"));
        assert!(parity(&BigRational::new(3.into(), 4.into())).is_err());
        // 2/6 reduces to 1/3
        assert_eq!(q("2/6"), q("1/3"));
    }

    #[test]
    fn parse_rejects_garbage() {
        for bad in ["", "-", "1/", "/3", "1/-3", "+1", "1.5", "a/3", "1/3/5", " 1"] {
            assert!(matches!(parse_ratio(bad), Err(Error::Malformed(_))), "{bad:?}");
        }
        assert!(matches!(parse_ratio("4/0"), Err(Error::ZeroDenominator(_))));
        assert_eq!(q("-0"), Q2::zero());
    }

    #[test]
    fn display_roundtrip() {
        for s in ["-52/31", "7", "-2", "0", "3662262/1953125"] {
            assert_eq!(q(s).to_string(), s);
        }
    }

    #[test]
    fn residue_matches_inverse() {
        // -1/3 = ...01010101
        assert_eq!(q("-1/3").residue(8), BigUint::from(0b0101_0101u32));
        assert_eq!(q("-1").residue(5), BigUint::from(31u32));
        assert_eq!(q("5").residue(0), BigUint::zero());
    }

    #[test]
    fn valuation() {
        assert_eq!(q("12/7").valuation(), Some(2));
        assert_eq!(q("-3").valuation(), Some(0));
        assert_eq!(Q2::zero().valuation(), None);
    }
}

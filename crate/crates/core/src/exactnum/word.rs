use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// A 2-adic integer known modulo `2^precision`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TwoAdicWord {
    #[serde(serialize_with = "ser_decimal")]
    residue: BigUint,
    precision: u32,
}

fn ser_decimal<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl TwoAdicWord {
    pub fn new(residue: BigUint, precision: u32) -> Result<Self> {
        if residue.bits() > u64::from(precision) {
            return Err(Error::ResidueOutOfRange(precision));
        }
        Ok(TwoAdicWord { residue, precision })
    }

    /// Reduces `residue` mod `2^precision` instead of rejecting it.
    pub fn wrapping(residue: BigUint, precision: u32) -> Self {
        TwoAdicWord {
            residue: residue & mask(precision),
            precision,
        }
    }

    pub fn from_u64(residue: u64, precision: u32) -> Result<Self> {
        Self::new(BigUint::from(residue), precision)
    }

    pub fn residue(&self) -> &BigUint {
        &self.residue
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.residue.to_u64()
    }

    pub fn bit(&self, i: u64) -> bool {
        self.residue.bit(i)
    }

    /// Positions of the one bits, ascending.
    pub fn one_positions(&self) -> impl Iterator<Item = u64> + '_ {
        (0..u64::from(self.precision)).filter(|&i| self.residue.bit(i))
    }

    /// Keeps the low `k` bits.
    pub fn reduce(&self, k: u32) -> Self {
        let k = k.min(self.precision);
        TwoAdicWord::wrapping(self.residue.clone(), k)
    }

    /// Drops bit 0, losing one bit of precision.
    pub fn shift(&self) -> Self {
        if self.precision == 0 {
            return self.clone();
        }
        TwoAdicWord {
            residue: &self.residue >> 1u32,
            precision: self.precision - 1,
        }
    }

    /// `2^k - 1 - residue`, the word of `-1 - x`.
    pub fn complement(&self) -> Self {
        TwoAdicWord {
            residue: mask(self.precision) ^ &self.residue,
            precision: self.precision,
        }
    }

    /// The residue read as a nonnegative integer.
    pub fn to_bigint(&self) -> BigInt {
        BigInt::from(self.residue.clone())
    }
}

impl fmt::Display for TwoAdicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod 2^{}", self.residue, self.precision)
    }
}

pub(crate) fn mask(k: u32) -> BigUint {
    (BigUint::one() << k) - 1u32
}

/// Inverse of odd `b` modulo `2^k` by Newton lifting.
pub(crate) fn inverse_mod_pow2(b: &BigInt, k: u32) -> BigUint {
    assert!(b.is_odd(), "inverse_mod_pow2 needs an odd argument");
    if k == 0 {
        return BigUint::zero();
    }
    let modulus = BigInt::one() << k;
    let b = b.mod_floor(&modulus);
    // b*b ≡ 1 (mod 8) for odd b
    let mut inv = b.clone();
    let mut good = 3u32;
    while good < k {
        inv = (&inv * (BigInt::from(2) - &b * &inv)).mod_floor(&modulus);
        good *= 2;
    }
    inv.mod_floor(&modulus)
        .to_biguint()
        .expect("mod_floor is nonnegative")
}

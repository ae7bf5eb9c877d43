use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::{Q2, TwoAdicWord};
use crate::error::{Error, Result};

/// A 2-adic integer given by a finite preperiod followed by a repeating
/// period, least significant bit first.
///
/// The constructor canonicalizes: the period is primitive and the
/// preperiod is as short as possible, so structural equality coincides with
/// equality of the denoted 2-adic integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EventuallyPeriodicBits {
    preperiod: Vec<bool>,
    period: Vec<bool>,
}

impl EventuallyPeriodicBits {
    pub fn new(preperiod: Vec<bool>, period: Vec<bool>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        let mut b = EventuallyPeriodicBits { preperiod, period };
        b.canonicalize();
        Ok(b)
    }

    /// Parses bit strings such as `("0", "011")`.
    pub fn from_strs(preperiod: &str, period: &str) -> Result<Self> {
        let parse = |s: &str| -> Result<Vec<bool>> {
            s.chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(Error::Malformed(s.to_string())),
                })
                .collect()
        };
        Self::new(parse(preperiod)?, parse(period)?)
    }

    pub fn preperiod(&self) -> &[bool] {
        &self.preperiod
    }

    pub fn period(&self) -> &[bool] {
        &self.period
    }

    pub fn bit(&self, i: usize) -> bool {
        match i.checked_sub(self.preperiod.len()) {
            None => self.preperiod[i],
            Some(j) => self.period[j % self.period.len()],
        }
    }

    /// Expansion of a rational with odd denominator, by repeated
    /// `x <- (x - bit) / 2` until a state recurs.
    pub fn from_rational(x: &Q2) -> Self {
        let den = x.denom();
        let mut num = x.numer().clone();
        let mut seen: HashMap<BigInt, usize> = HashMap::new();
        let mut bits = Vec::new();
        let entry = loop {
            if let Some(&i) = seen.get(&num) {
                break i;
            }
            seen.insert(num.clone(), bits.len());
            let bit = num.is_odd();
            if bit {
                num -= den;
            }
            num >>= 1u32;
            bits.push(bit);
        };
        let period = bits.split_off(entry);
        Self::new(bits, period).expect("a recurring state closes a nonempty cycle")
    }

    pub fn to_rational(&self) -> Q2 {
        let pre = BigInt::from(bits_value(&self.preperiod));
        let per = BigInt::from(bits_value(&self.period));
        let lead = BigInt::one() << self.preperiod.len();
        let cycle_den = BigInt::one() - (BigInt::one() << self.period.len());
        let value = BigRational::from_integer(pre) + BigRational::new(lead * per, cycle_den);
        Q2::from_ratio_unchecked(value)
    }

    pub fn truncate(&self, k: u32) -> TwoAdicWord {
        let mut residue = BigUint::zero();
        for i in 0..k as usize {
            if self.bit(i) {
                residue.set_bit(i as u64, true);
            }
        }
        TwoAdicWord::new(residue, k).expect("k bits fit in 2^k")
    }

    /// The shift map: drop bit 0.
    pub fn shift(&self) -> Self {
        let (mut pre, mut per) = (self.preperiod.clone(), self.period.clone());
        if pre.is_empty() {
            per.rotate_left(1);
        } else {
            pre.remove(0);
        }
        Self::new(pre, per).expect("period stays nonempty")
    }

    /// Bitwise complement, i.e. `-1 - x`.
    pub fn complement(&self) -> Self {
        let flip = |v: &[bool]| v.iter().map(|b| !b).collect::<Vec<_>>();
        EventuallyPeriodicBits {
            preperiod: flip(&self.preperiod),
            period: flip(&self.period),
        }
    }

    /// True when the value is a nonnegative integer (period `[0]`).
    pub fn is_natural(&self) -> bool {
        self.period == [false]
    }

    fn canonicalize(&mut self) {
        let p = self.period.len();
        if let Some(d) = (1..p)
            .filter(|d| p.is_multiple_of(*d))
            .find(|&d| (d..p).all(|i| self.period[i] == self.period[i - d]))
        {
            self.period.truncate(d);
        }
        while self.preperiod.last() == self.period.last() && !self.preperiod.is_empty() {
            self.preperiod.pop();
            self.period.rotate_right(1);
        }
    }
}

fn bits_value(bits: &[bool]) -> BigUint {
    let mut v = BigUint::zero();
    for (i, _) in bits.iter().enumerate().filter(|(_, b)| **b) {
        v.set_bit(i as u64, true);
    }
    v
}

pub(crate) fn bit_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

impl fmt::Display for EventuallyPeriodicBits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}]({})*",
            bit_string(&self.preperiod),
            bit_string(&self.period)
        )
    }
}

impl Serialize for EventuallyPeriodicBits {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("EventuallyPeriodicBits", 2)?;
        st.serialize_field("preperiod", &bit_string(&self.preperiod))?;
        st.serialize_field("period", &bit_string(&self.period))?;
        st.end()
    }
}

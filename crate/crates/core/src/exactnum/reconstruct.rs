use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Q2, TwoAdicWord};
use crate::error::{Error, Result};

/// Recovers `a/b` with `|a|, b <= bound` and `b` odd from `a * b^{-1} mod 2^k`.
///
/// Walks the remainder sequence of the extended Euclidean algorithm on
/// `(2^k, residue)`. Each step keeps `r_i ≡ t_i * residue (mod 2^k)`, so
/// the first pair with `|r_i| <= bound`, `|t_i| <= bound` and `t_i` odd is
/// a solution. It is the only one when `2 * bound^2 < 2^k`, which is
/// enforced.
pub fn rational_reconstruct(w: &TwoAdicWord, bound: &BigUint) -> Result<Option<Q2>> {
    let k = w.precision();
    if k < 2 {
        return Err(Error::PrecisionTooSmall(k));
    }
    let modulus = BigInt::one() << k;
    let bound = BigInt::from(bound.clone());
    if bound.is_zero() || BigInt::from(2) * &bound * &bound >= modulus {
        return Err(Error::BoundTooLarge {
            bound: bound.to_string(),
            precision: k,
        });
    }

    let (mut r0, mut r1) = (modulus, w.to_bigint());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    loop {
        if t1.abs() > bound {
            return Ok(None);
        }
        if r1 <= bound && t1.is_odd() {
            let (a, b) = if t1.is_negative() { (-r1, -t1) } else { (r1, t1) };
            return Ok(Some(Q2::new(a, b).expect("odd denominator")));
        }
        if r1.is_zero() {
            return Ok(None);
        }
        let (q, r2) = r0.div_rem(&r1);
        let t2 = &t0 - &q * &t1;
        (r0, r1) = (r1, r2);
        (t0, t1) = (t1, t2);
    }
}

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::collatz::MapParams;
use crate::exactnum::{inverse_mod_pow2, mask, EventuallyPeriodicBits, TwoAdicWord, Q2};

/// `Φ_{m,r}(2^{d_0} + 2^{d_1} + ...) = -r Σ_j m^{-(j+1)} 2^{d_j}`.
///
/// The ones of the periodic part contribute a geometric series with ratio
/// `2^P / m^p` (period length `P`, `p` ones per period). That ratio is never
/// 1 for odd `m`, so the closed form always applies.
pub fn phi_exact(p: MapParams, b: &EventuallyPeriodicBits) -> Q2 {
    let m = BigInt::from(p.m());
    let pow2 = |e: usize| BigInt::one() << e;
    let mut sum = BigRational::zero();
    let mut ones = 0u32;
    for (d, _) in b.preperiod().iter().enumerate().filter(|(_, bit)| **bit) {
        ones += 1;
        sum += BigRational::new(pow2(d), m.pow(ones));
    }

    let period = b.period();
    let per_ones = period.iter().filter(|bit| **bit).count() as u32;
    if per_ones > 0 {
        let mut inner = BigRational::zero();
        for (s, (e, _)) in period.iter().enumerate().filter(|(_, bit)| **bit).enumerate() {
            inner += BigRational::new(pow2(e), m.pow(s as u32));
        }
        let lead = BigRational::new(pow2(b.preperiod().len()), m.pow(ones + 1));
        let ratio = BigRational::new(pow2(period.len()), m.pow(per_ones));
        sum += lead * inner / (BigRational::one() - ratio);
    }
    Q2::from_ratio_unchecked(-sum * BigInt::from(p.r()))
}

/// `Φ_{m,r}(x) mod 2^k` from `x mod 2^k`.
///
/// The residue is read as a finite set of one positions and the finite
/// series is summed in `Z/2^k` using the inverse of `m`.
pub fn phi_truncated(p: MapParams, w: &TwoAdicWord) -> TwoAdicWord {
    let k = w.precision();
    if k == 0 {
        return w.clone();
    }
    let modulus_mask = mask(k);
    let inv = inverse_mod_pow2(&BigInt::from(p.m()), k);
    let mut acc = BigUint::zero();
    let mut factor = inv.clone();
    for d in w.one_positions() {
        acc += (&factor << d) & &modulus_mask;
        factor = (factor * &inv) & &modulus_mask;
    }
    acc &= &modulus_mask;
    // multiply by -r
    let r = p.r();
    let scaled = (acc * BigUint::from(r.unsigned_abs())) & &modulus_mask;
    let residue = if r > 0 {
        (&modulus_mask + 1u32 - scaled) & &modulus_mask
    } else {
        scaled
    };
    TwoAdicWord::new(residue, k).expect("masked")
}

use num_bigint::BigUint;
use num_traits::Zero;

use super::orbit::trace;
use super::{Iterates, MapParams, OrbitLimits};
use crate::exactnum::{EventuallyPeriodicBits, TwoAdicWord, Q2};

/// `Q_{k,m,r}(x)`: the first `k` parity bits `t_i` packed as `Σ t_i 2^i`.
pub fn q_truncated(p: MapParams, x: &Q2, k: u32) -> TwoAdicWord {
    let mut residue = BigUint::zero();
    for (i, bit) in Iterates::new(p, x).take(k as usize).enumerate() {
        if bit {
            residue.set_bit(i as u64, true);
        }
    }
    TwoAdicWord::new(residue, k).expect("k bits")
}

/// `Q_{k,m,r}` on a nonnegative integer given mod `2^64`, for `k <= 64`.
///
/// Each step of `T` costs one bit of known precision, and the parity of the
/// `i`-th iterate needs `i + 1` bits, so wrapping `u64` arithmetic is exact
/// up to `k = 64`.
pub fn q_word_u64(p: MapParams, x: u64, k: u32) -> u64 {
    assert!(k <= 64, "q_word_u64 supports k <= 64");
    let (m, r) = (p.m() as u64, p.r() as u64);
    let mut y = x;
    let mut out = 0u64;
    for i in 0..k {
        if y & 1 == 1 {
            out |= 1 << i;
            y = y.wrapping_mul(m).wrapping_add(r) >> 1;
        } else {
            y >>= 1;
        }
    }
    out
}

/// Exact `Q_{m,r}(x)` when the orbit of `x` closes a cycle within `budget`
/// steps; `None` on exhaustion.
pub fn q_exact(p: MapParams, x: &Q2, budget: usize) -> Option<EventuallyPeriodicBits> {
    q_exact_with(p, x, OrbitLimits::steps(budget))
}

pub fn q_exact_with(p: MapParams, x: &Q2, limits: OrbitLimits) -> Option<EventuallyPeriodicBits> {
    let t = trace(p, x, limits, false);
    let cycle = t.cycle?;
    let mut bits = t.bits;
    let period = bits.split_off(cycle.entry);
    Some(EventuallyPeriodicBits::new(bits, period).expect("cycle is nonempty"))
}

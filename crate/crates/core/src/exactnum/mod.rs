//! Exact arithmetic on the odd-denominator rationals, their eventually
//! periodic binary expansions, and 2-adic words known to finite precision.

mod bits;
mod decimal;
mod rational;
mod reconstruct;
mod word;

pub use bits::EventuallyPeriodicBits;
pub use decimal::{decimal_string, scientific, Scientific};
pub use rational::{format_ratio, parity, parse_ratio, Q2};
pub use reconstruct::rational_reconstruct;
pub use word::TwoAdicWord;

pub(crate) use word::{inverse_mod_pow2, mask};

/// First `k` bits of the expansion of `b` as a residue mod `2^k`.
pub fn truncate(b: &EventuallyPeriodicBits, k: u32) -> TwoAdicWord {
    b.truncate(k)
}

pub fn rational_to_bits(x: &Q2) -> EventuallyPeriodicBits {
    EventuallyPeriodicBits::from_rational(x)
}

pub fn bits_to_rational(b: &EventuallyPeriodicBits) -> Q2 {
    b.to_rational()
}

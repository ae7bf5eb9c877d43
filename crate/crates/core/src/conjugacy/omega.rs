use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{phi_exact, phi_truncated};
use crate::collatz::{q_exact_with, q_truncated, Iterates, MapParams, OrbitLimits};
use crate::exactnum::{TwoAdicWord, Q2};

/// `Ω_{m,r}(x) = Φ(-1 - Q(x))`, exact when the orbit of `x` cycles within
/// `budget` steps.
pub fn omega_exact(p: MapParams, x: &Q2, budget: usize) -> Option<Q2> {
    omega_exact_with(p, x, OrbitLimits::steps(budget))
}

pub fn omega_exact_with(p: MapParams, x: &Q2, limits: OrbitLimits) -> Option<Q2> {
    let q = q_exact_with(p, x, limits)?;
    Some(phi_exact(p, &q.complement()))
}

/// `Ω(x) mod 2^k`. Needs only the first `k` parity bits, so it is defined
/// whether or not the orbit ever cycles.
pub fn omega_mod(p: MapParams, x: &Q2, k: u32) -> TwoAdicWord {
    phi_truncated(p, &q_truncated(p, x, k).complement())
}

/// `Ω_{k,m,r}(x) = Φ(-1 - Q_k(x))` as an exact rational.
///
/// With `i_0 < ... < i_{j-1}` the even-step positions below `k`, the
/// argument of `Φ` has ones at the `i_l` and at every position `>= k`, so
///
/// `Ω_k(x) = -(r/m) [Σ_l m^{-l} 2^{i_l} + (2^k / m^j) (1 - 2/m)^{-1}]`
///         `= -r (A (m - 2) + 2^k) / (m^j (m - 2))`
///
/// where `A = Σ_l 2^{i_l} m^{j-1-l}`.
pub fn omega_truncated(p: MapParams, x: &Q2, k: u32) -> Q2 {
    let m = BigInt::from(p.m());
    let mut acc = BigInt::zero();
    let mut evens = 0u32;
    for (i, odd) in Iterates::new(p, x).take(k as usize).enumerate() {
        if !odd {
            acc = acc * &m + (BigInt::one() << i);
            evens += 1;
        }
    }
    let m_minus_2 = &m - 2;
    let inner: BigInt = acc * &m_minus_2 + (BigInt::one() << k);
    let numer = -inner * BigInt::from(p.r());
    let denom = m.pow(evens) * m_minus_2;
    Q2::from_ratio_unchecked(BigRational::new(numer, denom))
}

/// `Ω(2^n x)` from `Ω(x)`:
/// `r/(m-2) + Ω(2^n x) = (2/m)^n (r/(m-2) + Ω(x))`.
pub fn theorem1_scale(p: MapParams, omega_x: &Q2, n: u32) -> Q2 {
    let m = BigInt::from(p.m());
    let shift = BigRational::new(BigInt::from(p.r()), &m - 2);
    let factor = BigRational::new(BigInt::one() << n, m.pow(n));
    let value = factor * (omega_x.as_ratio() + &shift) - shift;
    Q2::from_ratio_unchecked(value)
}

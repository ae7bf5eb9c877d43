use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::orbit::trace;
use super::{MapParams, OrbitLimits};
use crate::exactnum::Q2;

/// Density of even iterates along an orbit.
///
/// When the orbit cycles within the window the density over one period is
/// the true liminf and `exact` is set. Otherwise `density` is the average
/// over the `steps` iterates actually seen, which is only a proxy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NuEstimate {
    #[serde(serialize_with = "crate::ser::ratio")]
    pub density: BigRational,
    pub exact: bool,
    pub steps: usize,
}

pub fn nu_estimate(p: MapParams, x: &Q2, window: usize) -> NuEstimate {
    let window = window.max(1);
    let t = trace(p, x, OrbitLimits::steps(window), false);
    let evens = |bits: &[bool]| bits.iter().filter(|b| !**b).count();
    match t.cycle {
        Some(c) => {
            let period = &t.bits[c.entry..];
            NuEstimate {
                density: ratio(evens(period), period.len()),
                exact: true,
                steps: t.bits.len(),
            }
        }
        None => NuEstimate {
            density: ratio(evens(&t.bits), t.bits.len().max(1)),
            exact: false,
            steps: t.bits.len(),
        },
    }
}

fn ratio(a: usize, b: usize) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

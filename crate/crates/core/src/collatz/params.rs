use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

/// The odd pair `(m, r)` defining `T_{m,r}`. Negative `m` and `m = ±1` are
/// legal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MapParams {
    m: i64,
    r: i64,
}

impl MapParams {
    /// The classical `3x + 1` map.
    pub const COLLATZ: MapParams = MapParams { m: 3, r: 1 };
    /// `T_{1,-1}` is the shift map and `Q_{1,-1}` the identity.
    pub const SHIFT: MapParams = MapParams { m: 1, r: -1 };

    pub fn new(m: i64, r: i64) -> Result<Self> {
        if m.is_odd() && r.is_odd() {
            Ok(MapParams { m, r })
        } else {
            Err(Error::EvenParams { m, r })
        }
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    /// Same `m` with `r = 1`.
    pub fn with_unit_r(&self) -> Self {
        MapParams { m: self.m, r: 1 }
    }

    /// `log2 |m|`, the per-term decay rate against which even-step density
    /// is compared.
    pub fn log2_abs_m(&self) -> f64 {
        (self.m.unsigned_abs() as f64).log2()
    }
}

impl fmt::Display for MapParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(m={}, r={})", self.m, self.r)
    }
}

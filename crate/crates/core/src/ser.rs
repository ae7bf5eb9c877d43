//! Serde helpers: rationals go out as `"num/den"` strings, never floats.

use num_rational::BigRational;
use serde::Serializer;

use crate::exactnum::format_ratio;

pub(crate) fn ratio<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_ratio(r))
}

pub(crate) fn opt_ratio<S: Serializer>(r: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => ratio(r, s),
        None => s.serialize_none(),
    }
}

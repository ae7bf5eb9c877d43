//! The map `T(x) = x/2` (x even), `(m x + r)/2` (x odd) on the odd-denominator
//! rationals, its orbits, and the parity-vector encoding `Q`.

mod complement;
mod density;
mod orbit;
mod params;
mod parity;

pub use complement::{sigma_shift, v_complement, Complement};
pub use density::{nu_estimate, NuEstimate};
pub use orbit::{orbit, orbit_with, t_apply, Cycle, Iterates, OrbitLimits, OrbitResult};
pub use params::MapParams;
pub use parity::{q_exact, q_exact_with, q_truncated, q_word_u64};

pub(crate) use orbit::trace;

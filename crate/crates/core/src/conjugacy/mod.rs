//! The inverse encoding `Φ = Q^{-1}`, the autoconjugacy `Ω = Φ V Q`, its
//! truncations `Ω_k` and their real limit `Ω̂`.

mod hat;
mod omega;
mod phi;

pub use hat::{omega_hat, Certificate, DivergenceWitness, HatConfig, HatStatus, OmegaHatResult};
pub use omega::{omega_exact, omega_exact_with, omega_mod, omega_truncated, theorem1_scale};
pub use phi::{phi_exact, phi_truncated};

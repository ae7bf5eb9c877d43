//! Exact 2-adic machinery for the generalized Collatz map
//!
//! ```text
//! T(x) = x / 2          x even
//!        (m x + r) / 2  x odd
//! ```
//!
//! for odd `m`, `r`, acting on rationals with odd denominator. Provides the
//! parity-vector encoding `Q`, its inverse `Φ`, the autoconjugacy
//! `Ω = Φ V Q` with `V(x) = -1 - x`, its truncations `Ω_k`, the real limit
//! `Ω̂`, and batch scanners over these objects.
//!
//! ```
//! use mxr::collatz::MapParams;
//! use mxr::conjugacy::omega_exact;
//! use mxr::exactnum::Q2;
//!
//! let p = MapParams::new(5, 1).unwrap();
//! let x: Q2 = "1".parse().unwrap();
//! assert_eq!(omega_exact(p, &x, 1000).unwrap().to_string(), "-52/31");
//! ```

pub mod analysis;
pub mod collatz;
pub mod conjugacy;
pub mod error;
pub mod exactnum;
pub mod exec;
mod ser;

pub use error::{Error, Result};

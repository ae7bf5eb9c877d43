//! Batch experiments over parameter grids and sample sets. Every scan item
//! is independent, so scans take an [`Execution`](crate::exec::Execution)
//! and return identical reports in either mode.

mod hatscan;
mod identities;
mod pairs;
mod perm;
mod report;
mod table1;

pub use hatscan::scan_omega_hat;
pub use identities::{identity_suite, sample_rationals, IdentityConfig};
pub use pairs::{scan_rational_pairs, PairsConfig};
pub use perm::{qbar_table, PermutationTable, MAX_QBAR_K};
pub use report::{Counts, ScanReport, Verdict, Witness};
pub use table1::{format_table1_text, table1, OmegaCell, Table1Row, TABLE1_INPUTS};

use crate::collatz::MapParams;

/// Parameter pairs exercised by default.
pub const DEFAULT_GRID: [(i64, i64); 9] = [
    (3, 1),
    (5, 1),
    (3, 5),
    (7, 1),
    (1, 1),
    (1, -1),
    (1, 3),
    (1, -3),
    (5, -3),
];

pub fn default_grid() -> Vec<MapParams> {
    DEFAULT_GRID
        .iter()
        .map(|&(m, r)| MapParams::new(m, r).expect("grid entries are odd"))
        .collect()
}

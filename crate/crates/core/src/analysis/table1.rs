use std::fmt::Write;

use serde::Serialize;

use crate::collatz::{MapParams, OrbitLimits};
use crate::conjugacy::{omega_exact_with, omega_hat, omega_mod, Certificate, HatConfig, HatStatus, OmegaHatResult};
use crate::exactnum::{scientific, Q2};
use crate::exec::{map_items, Execution};

pub const TABLE1_INPUTS: [i64; 11] = [-9, -7, -5, -3, -1, 0, 1, 3, 5, 7, 9];

const PREFIX_BITS: u32 = 64;
const PREFIX_TERMS: usize = 3;

/// `Ω_{5,1}(x)` as either an exact rational or a 2-adic prefix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OmegaCell {
    Exact(Q2),
    /// `2^valuation (2^{p_0} + 2^{p_1} + ... )` with `p_0 = 0`, listing the
    /// leading one-positions of the unit part.
    Prefix { valuation: u64, one_positions: Vec<u64> },
}

impl OmegaCell {
    pub fn text(&self) -> String {
        match self {
            OmegaCell::Exact(q) => q.to_string(),
            OmegaCell::Prefix { valuation, one_positions } => {
                let terms: Vec<String> = one_positions
                    .iter()
                    .map(|&i| if i == 0 { "1".into() } else { format!("2^{i}") })
                    .collect();
                let body = format!("{} + ...", terms.join(" + "));
                if *valuation == 0 {
                    body
                } else {
                    format!("2^{valuation}({body})")
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Table1Row {
    pub x: i64,
    pub omega: OmegaCell,
    pub hat: OmegaHatResult,
}

/// `Ω_{5,1}` and `Ω̂_{5,1}` on [`TABLE1_INPUTS`].
pub fn table1(tolerance: f64, exec: Execution) -> Vec<Table1Row> {
    let p = MapParams::new(5, 1).expect("odd");
    let cfg = HatConfig::with_tolerance(tolerance);
    map_items(exec, &TABLE1_INPUTS, |&x| {
        let xq = Q2::integer(x);
        Table1Row {
            x,
            omega: omega_cell(p, &xq),
            hat: omega_hat(p, &xq, &cfg),
        }
    })
}

fn omega_cell(p: MapParams, x: &Q2) -> OmegaCell {
    if let Some(q) = omega_exact_with(p, x, OrbitLimits::default()) {
        return OmegaCell::Exact(q);
    }
    let w = omega_mod(p, x, PREFIX_BITS);
    let ones: Vec<u64> = w.one_positions().collect();
    let valuation = ones.first().copied().unwrap_or(0);
    OmegaCell::Prefix {
        valuation,
        one_positions: ones.iter().take(PREFIX_TERMS).map(|i| i - valuation).collect(),
    }
}

fn hat_text(h: &OmegaHatResult) -> String {
    match (h.status, &h.value) {
        (HatStatus::Diverged, _) => "does not exist".into(),
        (HatStatus::Converged, Some(v)) if h.certificate == Certificate::ExactCycle => {
            crate::exactnum::format_ratio(v)
        }
        (HatStatus::Converged, Some(v)) => scientific(v, 4).ellipsis_form(),
        _ => "unknown".into(),
    }
}

/// Three aligned columns: `x`, `Ω(x)`, `Ω̂(x)`.
pub fn format_table1_text(rows: &[Table1Row]) -> String {
    let cells: Vec<[String; 3]> = rows
        .iter()
        .map(|r| [r.x.to_string(), r.omega.text(), hat_text(&r.hat)])
        .collect();
    let header = ["x", "Omega_{5,1}(x)", "Omega-hat_{5,1}(x)"];
    let mut width = header.map(str::len);
    for row in &cells {
        for (w, c) in width.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |row: [&str; 3]| {
        let _ = writeln!(
            out,
            "{:>w0$} | {:<w1$} | {}",
            row[0],
            row[1],
            row[2],
            w0 = width[0],
            w1 = width[1]
        );
    };
    line(header);
    for row in &cells {
        line([&row[0], &row[1], &row[2]]);
    }
    out
}

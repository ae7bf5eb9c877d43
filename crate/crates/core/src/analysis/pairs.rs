use num_bigint::BigUint;
use num_traits::One;

use super::report::evidence;
use super::{ScanReport, Verdict, Witness};
use crate::collatz::{q_exact_with, MapParams, OrbitLimits};
use crate::conjugacy::{omega_truncated, phi_exact};
use crate::error::{Error, Result};
use crate::exactnum::{rational_reconstruct, TwoAdicWord, Q2};
use crate::exec::{map_items, Execution};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairsConfig {
    pub limits: OrbitLimits,
    /// Reconstruction is attempted at `k_probe / 2` and `k_probe` bits and
    /// must agree at both.
    pub k_probe: u32,
    pub recon_bound: BigUint,
}

impl Default for PairsConfig {
    fn default() -> Self {
        PairsConfig {
            limits: OrbitLimits::default(),
            k_probe: 256,
            recon_bound: BigUint::one() << 60u32,
        }
    }
}

/// Evidence search around the claim that `x, Ω(x) ∈ Q_2` forces
/// `Q(x) ∈ Q_2`.
///
/// Items whose orbit closes satisfy hypothesis and conclusion and are
/// confirmed. For the rest, `Ω_k(x)` is reduced mod `2^k` at two depths and
/// rational reconstruction is tried on both; a reconstruction that agrees
/// at both depths is a candidate rational `Ω(x)` with `Q(x)` of unknown
/// rationality, which is the shape a counterexample would take. Those are
/// reported as unknown with the candidate attached; nothing here is ever
/// refuted.
pub fn scan_rational_pairs(
    p: MapParams,
    xs: &[Q2],
    cfg: &PairsConfig,
    exec: Execution,
) -> Result<ScanReport> {
    let (k_lo, k_hi) = (cfg.k_probe / 2, cfg.k_probe);
    // validate once up front
    rational_reconstruct(&TwoAdicWord::wrapping(BigUint::one(), k_lo), &cfg.recon_bound)?;
    if k_lo < 2 {
        return Err(Error::PrecisionTooSmall(k_lo));
    }

    let items = map_items(exec, xs, |x| probe(p, x, cfg, k_lo, k_hi));
    let sample = format!(
        "{} rationals; orbit budget {} steps / {} bits; probe at {} and {} bits",
        xs.len(),
        cfg.limits.steps,
        cfg.limits.max_bits,
        k_lo,
        k_hi
    );
    let mut report = ScanReport::collect("rational-pairs", p, sample, items, |_| true);
    let candidates = report
        .witnesses
        .iter()
        .filter(|w| w.evidence.contains_key("candidate_omega"))
        .count();
    report
        .summary
        .insert("candidates".into(), candidates.to_string());
    Ok(report)
}

fn probe(p: MapParams, x: &Q2, cfg: &PairsConfig, k_lo: u32, k_hi: u32) -> Witness {
    if let Some(q) = q_exact_with(p, x, cfg.limits) {
        let omega = phi_exact(p, &q.complement());
        return Witness {
            input: x.to_string(),
            verdict: Verdict::Confirmed,
            evidence: evidence([("omega", omega.to_string()), ("q", q.to_rational().to_string())]),
        };
    }
    let recon = |k: u32| {
        let w = TwoAdicWord::new(omega_truncated(p, x, k).residue(k), k).expect("reduced");
        rational_reconstruct(&w, &cfg.recon_bound).expect("bound validated")
    };
    let ev = match (recon(k_lo), recon(k_hi)) {
        (Some(a), Some(b)) if a == b => evidence([
            ("candidate_omega", a.to_string()),
            ("q", "unknown".into()),
        ]),
        (None, None) => evidence([("reconstruction", "none".into()), ("q", "unknown".into())]),
        _ => evidence([("reconstruction", "unstable".into()), ("q", "unknown".into())]),
    };
    Witness {
        input: x.to_string(),
        verdict: Verdict::Unknown,
        evidence: ev,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(m: i64, r: i64) -> MapParams {
        MapParams::new(m, r).unwrap()
    }

    #[test]
    fn cyclic_item_confirmed() {
        let xs = vec!["1/3".parse().unwrap()];
        let rep = scan_rational_pairs(p(5, 1), &xs, &PairsConfig::default(), Execution::Serial).unwrap();
        assert_eq!(rep.counts.confirmed, 1);
        let ev = &rep.witnesses[0].evidence;
        assert_eq!(ev["omega"], "-14/17");
        assert_eq!(ev["q"], "-1/7");
    }

    #[test]
    fn open_orbit_unknown() {
        let xs = vec![Q2::integer(7)];
        let rep = scan_rational_pairs(p(5, 1), &xs, &PairsConfig::default(), Execution::Serial).unwrap();
        assert_eq!(rep.counts.unknown, 1);
        assert_eq!(rep.counts.refuted, 0);
        assert!(!rep.witnesses[0].evidence.contains_key("candidate_omega"));
    }

    #[test]
    fn bound_validated() {
        let cfg = PairsConfig {
            k_probe: 16,
            recon_bound: BigUint::from(1000u32),
            ..Default::default()
        };
        assert!(scan_rational_pairs(p(5, 1), &[], &cfg, Execution::Serial).is_err());
    }
}

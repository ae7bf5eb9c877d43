use std::collections::BTreeMap;

use num_traits::ToPrimitive;

use super::report::evidence;
use super::{ScanReport, Verdict, Witness};
use crate::collatz::MapParams;
use crate::conjugacy::{omega_hat, Certificate, HatConfig, HatStatus, OmegaHatResult};
use crate::exactnum::Q2;
use crate::exec::{map_items, Execution};

/// Runs [`omega_hat`] over `xs`, judged against the claim that `Ω̂(x)`
/// exists for integer `x` when `m >= 5`.
///
/// Converged items confirm it. Divergence certified by an exact cycle on
/// an integer with `m >= 5` refutes it; heuristic divergence stays unknown.
/// Items outside the hypothesis are not applicable but still carry their
/// status and value.
pub fn scan_omega_hat(p: MapParams, xs: &[Q2], cfg: &HatConfig, exec: Execution) -> ScanReport {
    let results = map_items(exec, xs, |x| omega_hat(p, x, cfg));
    let items: Vec<Witness> = xs
        .iter()
        .zip(&results)
        .map(|(x, h)| Witness {
            input: x.to_string(),
            verdict: verdict(p, x, h),
            evidence: describe(h),
        })
        .collect();
    let sample = format!(
        "{} inputs; tolerance {:e}; orbit budget {} steps / {} bits",
        xs.len(),
        cfg.tolerance,
        cfg.limits.steps,
        cfg.limits.max_bits
    );
    let mut report = ScanReport::collect("omega-hat", p, sample, items, |_| true);
    report.summary = summarize(&results);
    report
}

fn verdict(p: MapParams, x: &Q2, h: &OmegaHatResult) -> Verdict {
    if !(p.m() >= 5 && x.is_integer()) {
        return Verdict::NotApplicable;
    }
    match (h.status, h.certificate) {
        (HatStatus::Converged, _) => Verdict::Confirmed,
        (HatStatus::Diverged, Certificate::ExactCycle) => Verdict::Refuted,
        _ => Verdict::Unknown,
    }
}

pub(crate) fn describe(h: &OmegaHatResult) -> BTreeMap<String, String> {
    let show = |v: &Option<String>| v.clone().unwrap_or_else(|| "none".into());
    let mut ev = evidence([
        ("status", status_name(h.status).into()),
        ("certificate", certificate_name(h.certificate).into()),
        ("value", show(&h.decimal(12))),
        ("error_bound", show(&h.error_bound.map(|e| format!("{e:e}")))),
        ("density_seen", crate::exactnum::format_ratio(&h.density_seen)),
        ("steps", h.steps.to_string()),
        ("terms", h.terms_used.to_string()),
    ]);
    if h.certificate == Certificate::ExactCycle {
        if let Some(v) = &h.value {
            ev.insert("exact".into(), crate::exactnum::format_ratio(v));
        }
    }
    if let Some(w) = h.window_density {
        ev.insert("window_density".into(), format!("{w:.6}"));
    }
    if let Some(w) = &h.witness {
        ev.insert(
            "witness".into(),
            format!("step {} term {} log2 {:.3}", w.step, w.term_index, w.log2_magnitude),
        );
    }
    ev
}

fn status_name(s: HatStatus) -> &'static str {
    match s {
        HatStatus::Converged => "converged",
        HatStatus::Diverged => "diverged",
        HatStatus::Unknown => "unknown",
    }
}

fn certificate_name(c: Certificate) -> &'static str {
    match c {
        Certificate::ExactCycle => "exact_cycle",
        Certificate::ConditionalTail => "conditional_tail",
        Certificate::Heuristic => "heuristic",
        Certificate::None => "none",
    }
}

fn summarize(results: &[OmegaHatResult]) -> BTreeMap<String, String> {
    let mut summary = BTreeMap::new();
    for status in [HatStatus::Converged, HatStatus::Diverged, HatStatus::Unknown] {
        let n = results.iter().filter(|h| h.status == status).count();
        summary.insert(status_name(status).to_string(), n.to_string());
    }
    let mut densities: Vec<f64> = results
        .iter()
        .filter_map(|h| h.density_seen.to_f64())
        .collect();
    densities.sort_by(f64::total_cmp);
    if let (Some(lo), Some(hi)) = (densities.first(), densities.last()) {
        summary.insert("density_min".into(), format!("{lo:.6}"));
        summary.insert("density_median".into(), format!("{:.6}", densities[densities.len() / 2]));
        summary.insert("density_max".into(), format!("{hi:.6}"));
    }
    if let Some(w) = results
        .iter()
        .filter_map(|h| h.window_density)
        .min_by(f64::total_cmp)
    {
        summary.insert("window_density_min".into(), format!("{w:.6}"));
    }
    summary
}

use num_bigint::BigUint;
use serde_json::{json, Map, Value};

use mxr::analysis::{
    format_table1_text, identity_suite, qbar_table, sample_rationals, scan_omega_hat,
    scan_rational_pairs, table1, IdentityConfig, OmegaCell, PairsConfig, ScanReport,
};
use mxr::collatz::{nu_estimate, orbit_with, q_exact_with, q_truncated, MapParams, OrbitLimits};
use mxr::conjugacy::{
    omega_exact_with, omega_hat, omega_mod, omega_truncated, phi_exact, phi_truncated,
    Certificate, HatConfig, HatStatus, OmegaHatResult,
};
use mxr::exactnum::{format_ratio as ratio, rational_to_bits, EventuallyPeriodicBits, TwoAdicWord, Q2};
use mxr::exec::Execution;

use crate::record::{OutputRecord, Params};
use crate::{Command, Failure, Opts};

const MAX_K: u32 = 1 << 16;
const DEFAULT_ORBIT_BUDGET: usize = 10_000;
const DEFAULT_PREFIX_K: u32 = 64;
const SCAN_HAT_RANGE: i64 = 64;

type Out = Result<OutputRecord, Failure>;

pub fn run(cmd: Command, opts: &Opts, echo: String) -> Result<OutputRecord, Failure> {
    let mut rec = match cmd {
        Command::Orbit => orbit(opts),
        Command::Q => q(opts),
        Command::Phi => phi(opts),
        Command::Omega => omega(opts),
        Command::OmegaK => omega_k(opts),
        Command::OmegaHat => omega_hat_cmd(opts),
        Command::Nu => nu(opts),
        Command::Qbar => qbar(opts),
        Command::Table1 => table1_cmd(opts),
        Command::Identities => identities(opts),
        Command::ScanPairs => scan_pairs(opts),
        Command::ScanHat => scan_hat(opts),
    }?;
    rec.command = echo;
    Ok(rec)
}

fn params(opts: &Opts) -> Result<MapParams, Failure> {
    Ok(MapParams::new(opts.m, opts.r)?)
}

fn x(opts: &Opts) -> Result<Q2, Failure> {
    let s = opts.x.as_deref().ok_or_else(|| Failure::Usage("--x is required".into()))?;
    Ok(s.parse()?)
}

fn xs(opts: &Opts) -> Result<Option<Vec<Q2>>, Failure> {
    let Some(s) = opts.x.as_deref() else {
        return Ok(None);
    };
    let parsed: Result<Vec<Q2>, _> = s.split(',').map(|t| t.trim().parse::<Q2>()).collect();
    Ok(Some(parsed?))
}

fn k_checked(k: u32, max: u32) -> Result<u32, Failure> {
    if (1..=max).contains(&k) {
        Ok(k)
    } else {
        Err(mxr::Error::OutOfRange {
            what: "k",
            value: k.into(),
            min: 1,
            max: max.into(),
        }
        .into())
    }
}

fn k_opt(opts: &Opts) -> Result<Option<u32>, Failure> {
    opts.k.map(|k| k_checked(k, MAX_K)).transpose()
}

fn k_required(opts: &Opts) -> Result<u32, Failure> {
    k_opt(opts)?.ok_or_else(|| Failure::Usage("--k is required".into()))
}

fn limits(opts: &Opts) -> OrbitLimits {
    opts.budget.map(OrbitLimits::steps).unwrap_or_default()
}

fn bound(opts: &Opts, default_bits: u32) -> Result<BigUint, Failure> {
    let Some(s) = opts.bound.as_deref() else {
        return Ok(BigUint::from(1u32) << default_bits);
    };
    let bad = || Failure::Usage(format!("malformed bound {s:?}, expected an integer or 2^n"));
    if let Some(e) = s.strip_prefix("2^") {
        let e: u32 = e.parse().map_err(|_| bad())?;
        return Ok(BigUint::from(1u32) << e);
    }
    s.parse().map_err(|_| bad())
}

fn record(p: MapParams, inputs: Value, results: Vec<Value>, status: &str) -> OutputRecord {
    let obj = |v: Value| match v {
        Value::Object(m) => m,
        other => Map::from_iter([("value".to_string(), other)]),
    };
    OutputRecord {
        command: String::new(),
        params: Params { m: p.m(), r: p.r() },
        inputs: obj(inputs),
        results: results.into_iter().map(obj).collect(),
        status: status.into(),
        summary: Map::new(),
        text: None,
    }
}

fn bits_json(b: &EventuallyPeriodicBits) -> Value {
    serde_json::to_value(b).expect("serializable")
}

fn word_json(w: &TwoAdicWord) -> Value {
    let bits: String = (0..u64::from(w.precision()))
        .map(|i| if w.bit(i) { '1' } else { '0' })
        .collect();
    json!({
        "residue": w.residue().to_string(),
        "precision": w.precision(),
        "bits_lsb_first": bits,
    })
}

fn orbit(opts: &Opts) -> Out {
    let (p, x) = (params(opts)?, x(opts)?);
    let lim = OrbitLimits::steps(opts.budget.unwrap_or(DEFAULT_ORBIT_BUDGET));
    let o = orbit_with(p, &x, lim);
    let results = o
        .states
        .iter()
        .zip(&o.parity_bits)
        .enumerate()
        .map(|(i, (s, &b))| json!({"index": i, "state": s.to_string(), "parity": u8::from(b)}))
        .collect();
    let status = if o.cycle.is_some() { "cyclic" } else { "exhausted" };
    let mut rec = record(p, json!({"x": x.to_string(), "budget": lim.steps}), results, status);
    if let Some(c) = o.cycle {
        rec.summary.insert("cycle_entry".into(), c.entry.into());
        rec.summary.insert("cycle_length".into(), c.length.into());
    }
    rec.summary.insert("steps".into(), o.parity_bits.len().into());
    rec.summary.insert("magnitude_capped".into(), o.magnitude_capped.into());
    Ok(rec)
}

fn q(opts: &Opts) -> Out {
    let (p, x) = (params(opts)?, x(opts)?);
    if let Some(k) = k_opt(opts)? {
        let w = q_truncated(p, &x, k);
        return Ok(record(p, json!({"x": x.to_string(), "k": k}), vec![word_json(&w)], "truncated"));
    }
    let inputs = json!({"x": x.to_string()});
    Ok(match q_exact_with(p, &x, limits(opts)) {
        Some(b) => {
            let res = json!({"value": b.to_rational().to_string(), "bits": bits_json(&b)});
            record(p, inputs, vec![res], "exact")
        }
        None => record(p, inputs, vec![], "unknown"),
    })
}

fn phi(opts: &Opts) -> Out {
    let (p, x) = (params(opts)?, x(opts)?);
    if let Some(k) = k_opt(opts)? {
        let w = TwoAdicWord::new(x.residue(k), k)?;
        let res = word_json(&phi_truncated(p, &w));
        return Ok(record(p, json!({"x": x.to_string(), "k": k}), vec![res], "truncated"));
    }
    let bits = rational_to_bits(&x);
    let res = json!({"value": phi_exact(p, &bits).to_string(), "input_bits": bits_json(&bits)});
    Ok(record(p, json!({"x": x.to_string()}), vec![res], "exact"))
}

fn omega(opts: &Opts) -> Out {
    let (p, x) = (params(opts)?, x(opts)?);
    let inputs = json!({"x": x.to_string()});
    if let Some(v) = omega_exact_with(p, &x, limits(opts)) {
        let res = json!({"value": v.to_string(), "bits": bits_json(&rational_to_bits(&v))});
        return Ok(record(p, inputs, vec![res], "exact"));
    }
    let k = k_opt(opts)?.unwrap_or(DEFAULT_PREFIX_K);
    let res = json!({"prefix": word_json(&omega_mod(p, &x, k))});
    Ok(record(p, inputs, vec![res], "unknown"))
}

fn omega_k(opts: &Opts) -> Out {
    let (p, x, k) = (params(opts)?, x(opts)?, k_required(opts)?);
    let v = omega_truncated(p, &x, k);
    let res = json!({"value": v.to_string(), "residue": v.residue(k).to_string(), "precision": k});
    Ok(record(p, json!({"x": x.to_string(), "k": k}), vec![res], "exact"))
}

fn hat_config(opts: &Opts) -> Result<HatConfig, Failure> {
    if !(opts.tolerance > 0.0 && opts.tolerance.is_finite()) {
        return Err(Failure::Usage(format!("tolerance must be positive, got {}", opts.tolerance)));
    }
    let mut cfg = HatConfig::with_tolerance(opts.tolerance);
    if opts.budget.is_some() {
        cfg.limits = limits(opts);
    }
    Ok(cfg)
}

fn status_name(s: HatStatus) -> &'static str {
    match s {
        HatStatus::Converged => "converged",
        HatStatus::Diverged => "diverged",
        HatStatus::Unknown => "unknown",
    }
}

fn hat_json(h: &OmegaHatResult) -> Value {
    let mut v = json!({
        "status": status_name(h.status),
        "certificate": serde_json::to_value(h.certificate).expect("serializable"),
        "value": h.decimal(12),
        "error_bound": h.error_bound.map(|e| format!("{e:e}")),
        "terms": h.terms_used,
        "steps": h.steps,
        "density_seen": ratio(&h.density_seen),
        "window_density": h.window_density.map(|w| format!("{w:.6}")),
    });
    if let (Certificate::ExactCycle, Some(exact)) = (h.certificate, &h.value) {
        v["exact"] = ratio(exact).into();
    }
    if let Some(w) = &h.witness {
        v["witness"] = json!({
            "step": w.step,
            "term_index": w.term_index,
            "log2_magnitude": format!("{:.3}", w.log2_magnitude),
        });
    }
    v
}

fn omega_hat_cmd(opts: &Opts) -> Out {
    let (p, x, cfg) = (params(opts)?, x(opts)?, hat_config(opts)?);
    let h = omega_hat(p, &x, &cfg);
    let inputs = json!({"x": x.to_string(), "tolerance": format!("{:e}", cfg.tolerance)});
    Ok(record(p, inputs, vec![hat_json(&h)], status_name(h.status)))
}

fn nu(opts: &Opts) -> Out {
    let (p, x) = (params(opts)?, x(opts)?);
    let window = opts.budget.unwrap_or(DEFAULT_ORBIT_BUDGET);
    let e = nu_estimate(p, &x, window);
    let res = json!({"density": ratio(&e.density), "exact": e.exact, "steps": e.steps});
    let status = if e.exact { "exact" } else { "estimate" };
    Ok(record(p, json!({"x": x.to_string(), "window": window}), vec![res], status))
}

fn qbar(opts: &Opts) -> Out {
    let p = params(opts)?;
    let k = k_checked(opts.k.unwrap_or(8), mxr::analysis::MAX_QBAR_K)?;
    let t = qbar_table(p, k, Execution::Parallel)?;
    let results = t
        .mapping
        .iter()
        .enumerate()
        .map(|(x, &y)| json!({"x": x, "qbar": y}))
        .collect();
    let mut rec = record(p, json!({"k": k}), results, "permutation");
    rec.summary.insert("order".into(), t.order.into());
    rec.summary.insert("order_divides_2^k".into(), t.order_divides_modulus().into());
    rec.summary.insert("identity".into(), t.is_identity().into());
    Ok(rec)
}

fn table1_cmd(opts: &Opts) -> Out {
    let cfg = hat_config(opts)?;
    let rows = table1(cfg.tolerance, Execution::Parallel);
    let results = rows
        .iter()
        .map(|row| {
            let omega = match &row.omega {
                OmegaCell::Exact(q) => json!({"exact": q.to_string()}),
                OmegaCell::Prefix { valuation, one_positions } => json!({
                    "valuation": valuation,
                    "one_positions": one_positions,
                    "text": row.omega.text(),
                }),
            };
            json!({"x": row.x.to_string(), "omega": omega, "omega_hat": hat_json(&row.hat)})
        })
        .collect();
    let p = MapParams::new(5, 1).expect("odd");
    let inputs = json!({"tolerance": format!("{:e}", cfg.tolerance)});
    let mut rec = record(p, inputs, results, "ok");
    rec.text = Some(format_table1_text(&rows));
    Ok(rec)
}

fn from_report(p: MapParams, inputs: Value, report: ScanReport) -> OutputRecord {
    let results = report
        .witnesses
        .iter()
        .map(|w| serde_json::to_value(w).expect("serializable"))
        .collect();
    let status = if report.counts.refuted > 0 { "refuted" } else { "ok" };
    let mut rec = record(p, inputs, results, status);
    rec.summary.insert("scan".into(), report.scan.into());
    rec.summary.insert("sample".into(), report.sample.into());
    rec.summary.insert("counts".into(), serde_json::to_value(report.counts).expect("serializable"));
    for (k, v) in report.summary {
        rec.summary.insert(k, v.into());
    }
    rec
}

fn identities(opts: &Opts) -> Out {
    let p = params(opts)?;
    let cfg = IdentityConfig {
        samples: opts.budget.unwrap_or(1000),
        k_max: k_checked(opts.k.unwrap_or(64), MAX_K)?,
        seed: opts.seed,
        ..Default::default()
    };
    let report = identity_suite(p, &cfg, Execution::Parallel);
    let inputs = json!({"samples": cfg.samples, "k_max": cfg.k_max, "seed": cfg.seed});
    Ok(from_report(p, inputs, report))
}

fn scan_pairs(opts: &Opts) -> Out {
    let p = params(opts)?;
    let samples = opts.budget.unwrap_or(200);
    let xs = xs(opts)?.unwrap_or_else(|| sample_rationals(samples, opts.seed, 1000, 99));
    let k_probe = k_checked(opts.k.unwrap_or(256), MAX_K)?;
    let cfg = PairsConfig {
        k_probe,
        // largest power of two the k_probe / 2 guard admits
        recon_bound: bound(opts, (k_probe / 4).saturating_sub(1))?,
        ..Default::default()
    };
    let report = scan_rational_pairs(p, &xs, &cfg, Execution::Parallel)?;
    let inputs = json!({
        "count": xs.len(),
        "seed": opts.seed,
        "k_probe": cfg.k_probe,
        "bound": cfg.recon_bound.to_string(),
    });
    Ok(from_report(p, inputs, report))
}

fn scan_hat(opts: &Opts) -> Out {
    let (p, cfg) = (params(opts)?, hat_config(opts)?);
    let xs = xs(opts)?
        .unwrap_or_else(|| (-SCAN_HAT_RANGE..=SCAN_HAT_RANGE).map(Q2::integer).collect());
    let report = scan_omega_hat(p, &xs, &cfg, Execution::Parallel);
    let inputs = json!({"count": xs.len(), "tolerance": format!("{:e}", cfg.tolerance)});
    Ok(from_report(p, inputs, report))
}

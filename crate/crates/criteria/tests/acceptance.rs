//! Acceptance criteria. Each prints one PASS/FAIL line; the process exits
//! non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use mxr::analysis::{default_grid, identity_suite, qbar_table, sample_rationals, IdentityConfig};
use mxr::collatz::{q_exact_with, q_truncated, MapParams, OrbitLimits};
use mxr::conjugacy::{
    omega_exact_with, omega_hat, omega_truncated, phi_truncated, theorem1_scale, HatConfig,
    HatStatus,
};
use mxr::exactnum::{bits_to_rational, rational_reconstruct, rational_to_bits, TwoAdicWord, Q2};
use mxr::exec::Execution;

const TABLE1_LIMIT: Duration = Duration::from_secs(1);
const HAT_LIMIT: Duration = Duration::from_secs(10);
const COUNTEREXAMPLE_LIMIT: Duration = Duration::from_secs(5);
const IDENTITIES_LIMIT: Duration = Duration::from_secs(60);
const QBAR_LIMIT: Duration = Duration::from_secs(60);
const HAT_TOLERANCE: f64 = 1e-6;
const HAT_SIG_DIGITS: usize = 3;
const IDENTITY_SAMPLES: usize = 1000;
const IDENTITY_K_MAX: u32 = 64;
const M1_RANGE: i64 = 1000;
const SCALING_SAMPLES: usize = 1000;
const SCALING_N_MAX: u32 = 8;
const QBAR_K_MAX: u32 = 14;
const ORACLE_PAIRS: usize = 10_000;
const ROUNDTRIP_SAMPLES: usize = 10_000;
const RECON_K: u32 = 128;
const RECON_BOUND_BITS: u32 = 63;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn p(m: i64, r: i64) -> MapParams {
    MapParams::new(m, r).unwrap()
}

fn q(s: &str) -> Q2 {
    s.parse().unwrap()
}

fn limits() -> OrbitLimits {
    OrbitLimits::default()
}

fn timed(limit: Duration, elapsed: Duration, detail: String) -> Outcome {
    if elapsed <= limit {
        Ok(format!("{detail} in {elapsed:.2?}"))
    } else {
        Err(format!("{detail} but took {elapsed:.2?} > {limit:?}"))
    }
}

fn table1_exact() -> Outcome {
    let expected = [
        (-7, "-160532/78125"),
        (-5, "-3662262/1953125"),
        (-3, "-321064/78125"),
        (-1, "-2"),
        (0, "-1/3"),
        (1, "-52/31"),
        (3, "-26/31"),
        (5, "-464/31"),
    ];
    let start = Instant::now();
    let got: Vec<_> = expected
        .iter()
        .map(|&(x, _)| omega_exact_with(p(5, 1), &Q2::integer(x), limits()))
        .collect();
    let elapsed = start.elapsed();
    let mismatches: Vec<String> = expected
        .iter()
        .zip(&got)
        .filter(|((_, want), got)| got.as_ref().map(|g| g.to_string()).as_deref() != Some(*want))
        .map(|((x, want), got)| {
            let got = got.as_ref().map_or("none".into(), |g| g.to_string());
            format!("x={x}: expected {want}, computed {got}")
        })
        .collect();
    if !mismatches.is_empty() {
        return Err(mismatches.join("; "));
    }
    timed(TABLE1_LIMIT, elapsed, "8 exact cells match".into())
}

fn table1_real() -> Outcome {
    let cfg = HatConfig::with_tolerance(HAT_TOLERANCE);
    let mut notes = Vec::new();
    let mut failures = Vec::new();
    for (x, want) in [(7, -1.426e2), (-9, -1.129e4), (9, -1.777e2)] {
        let start = Instant::now();
        let h = omega_hat(p(5, 1), &Q2::integer(x), &cfg);
        let elapsed = start.elapsed();
        let round = |v: f64| format!("{v:.*e}", HAT_SIG_DIGITS - 1);
        match h.to_f64() {
            Some(v) if h.status == HatStatus::Converged && round(v) == round(want) => {
                if elapsed > HAT_LIMIT {
                    failures.push(format!("x={x} took {elapsed:.2?}"));
                }
                notes.push(format!("x={x}: {v:.6} ({elapsed:.2?})"));
            }
            v => failures.push(format!("x={x}: status {:?}, value {v:?}, want {want}", h.status)),
        }
    }
    if failures.is_empty() {
        Ok(notes.join(", "))
    } else {
        Err(failures.join("; "))
    }
}

fn counterexample() -> Outcome {
    let start = Instant::now();
    let h = omega_hat(p(5, 1), &q("-14/17"), &HatConfig::default());
    let elapsed = start.elapsed();
    if h.status != HatStatus::Diverged {
        return Err(format!("status {:?}", h.status));
    }
    timed(COUNTEREXAMPLE_LIMIT, elapsed, format!("diverged ({:?})", h.certificate))
}

fn identities() -> Outcome {
    let cfg = IdentityConfig {
        samples: IDENTITY_SAMPLES,
        k_max: IDENTITY_K_MAX,
        ..Default::default()
    };
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut exact = 0usize;
    for params in default_grid() {
        let report = identity_suite(params, &cfg, Execution::Parallel);
        exact += report.summary["exact_checked"].parse::<usize>().unwrap();
        if report.counts.refuted > 0 || report.counts.total() != IDENTITY_SAMPLES {
            failures.push(format!("{params}: {:?}", report.witnesses.first()));
        }
    }
    let elapsed = start.elapsed();
    if !failures.is_empty() {
        return Err(failures.join("; "));
    }
    timed(
        IDENTITIES_LIMIT,
        elapsed,
        format!("{} samples, {exact} with exact checks, 0 failures", IDENTITY_SAMPLES * 9),
    )
}

fn m_equals_one() -> Outcome {
    let mut checked = 0;
    for r in [1, -1, 3, -3, 5, -5, 7, -7] {
        let params = p(1, r);
        for x in -M1_RANGE..=M1_RANGE {
            let xq = Q2::integer(x);
            let qx = q_exact_with(params, &xq, limits()).map(|b| bits_to_rational(&b));
            let want_q = (-&xq).div_odd(&BigInt::from(r)).unwrap();
            if qx.as_ref() != Some(&want_q) {
                return Err(format!("Q_(1,{r})({x}) = {qx:?}, want {want_q}"));
            }
            let omega = omega_exact_with(params, &xq, limits());
            let want_omega = Q2::integer(r - x);
            if omega.as_ref() != Some(&want_omega) {
                return Err(format!("Omega_(1,{r})({x}) = {omega:?}, want {want_omega}"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} (r, x) pairs"))
}

fn scaling() -> Outcome {
    let xs = sample_rationals(SCALING_SAMPLES, 6, 1000, 99);
    let mut checked = 0;
    for params in [p(5, 1), p(3, 1)] {
        for x in &xs {
            let Some(omega) = omega_exact_with(params, x, limits()) else {
                continue;
            };
            for n in 0..=SCALING_N_MAX {
                let lhs = omega_exact_with(params, &x.shl(n), limits());
                let rhs = theorem1_scale(params, &omega, n);
                if lhs.as_ref() != Some(&rhs) {
                    return Err(format!("{params} x={x} n={n}: {lhs:?} vs {rhs}"));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (x, n) checks on cyclic samples"))
}

fn permutations() -> Outcome {
    let start = Instant::now();
    let mut tables = 0;
    for params in default_grid() {
        let mut prev = None;
        for k in 1..=QBAR_K_MAX {
            let t = qbar_table(params, k, Execution::Parallel)
                .map_err(|e| format!("{params} k={k}: {e}"))?;
            if !t.order_divides_modulus() {
                return Err(format!("{params} k={k}: order {} does not divide 2^{k}", t.order));
            }
            if let Some(prev) = &prev {
                if !t.restricts_to(prev) {
                    return Err(format!("{params} k={k}: restriction to k-1 incoherent"));
                }
            }
            prev = Some(t);
            tables += 1;
        }
    }
    timed(QBAR_LIMIT, start.elapsed(), format!("{tables} tables bijective and coherent"))
}

fn oracle() -> Outcome {
    let xs = sample_rationals(ORACLE_PAIRS, 8, 10_000, 10_000);
    for (i, x) in xs.iter().enumerate() {
        let params = default_grid()[i % 9];
        let k = (i % 64) as u32 + 1;
        let back = phi_truncated(params, &q_truncated(params, x, k));
        if *back.residue() != x.residue(k) {
            return Err(format!("{params} x={x} k={k}: {back}"));
        }
    }
    let xs = sample_rationals(ROUNDTRIP_SAMPLES, 9, 10_000, 10_000);
    for x in &xs {
        let back = bits_to_rational(&rational_to_bits(x));
        if back != *x {
            return Err(format!("round trip {x} -> {back}"));
        }
    }
    Ok(format!("{ORACLE_PAIRS} Phi(Q_k) pairs, {ROUNDTRIP_SAMPLES} bit round trips"))
}

fn reconstruction() -> Outcome {
    let bound = BigUint::one() << RECON_BOUND_BITS;
    let mut recovered = Vec::new();
    for x in mxr::analysis::TABLE1_INPUTS {
        let xq = Q2::integer(x);
        let Some(exact) = omega_exact_with(p(5, 1), &xq, limits()) else {
            continue;
        };
        let residue = omega_truncated(p(5, 1), &xq, RECON_K).residue(RECON_K);
        let word = TwoAdicWord::new(residue, RECON_K).unwrap();
        let got = rational_reconstruct(&word, &bound).map_err(|e| e.to_string())?;
        if got.as_ref() != Some(&exact) {
            return Err(format!("x={x}: reconstructed {got:?}, exact {exact}"));
        }
        recovered.push(format!("{x}->{exact}"));
    }
    Ok(format!("recovered {}", recovered.join(", ")))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 table1 exact cells", table1_exact),
        ("2 table1 real cells", table1_real),
        ("3 -14/17 diverges", counterexample),
        ("4 identity suite over grid", identities),
        ("5 m=1 closed forms", m_equals_one),
        ("6 scaling law", scaling),
        ("7 qbar permutations", permutations),
        ("8 oracle equivalence", oracle),
        ("9 reconstruction pipeline", reconstruction),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail}");
            }
        }
    }
    println!("{} passed, {failed} failed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

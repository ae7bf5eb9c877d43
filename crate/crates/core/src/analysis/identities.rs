use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::report::evidence;
use super::{ScanReport, Verdict, Witness};
use crate::collatz::{
    q_exact_with, q_truncated, t_apply, MapParams, OrbitLimits,
};
use crate::conjugacy::{omega_exact_with, omega_mod, phi_exact, phi_truncated, theorem1_scale};
use crate::exactnum::{rational_to_bits, TwoAdicWord, Q2};
use crate::exec::{map_items, Execution};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IdentityConfig {
    pub samples: usize,
    /// Truncation depths are drawn from `1..=k_max`.
    pub k_max: u32,
    pub seed: u64,
    /// Limits for the exact (cyclic-orbit) checks; a sample whose orbit
    /// does not close within them gets only the mod `2^k` checks.
    pub limits: OrbitLimits,
    pub max_numerator: i64,
    pub max_denominator: i64,
}

impl Default for IdentityConfig {
    fn default() -> Self {
        IdentityConfig {
            samples: 1000,
            k_max: 64,
            seed: 0,
            limits: OrbitLimits {
                steps: 2000,
                max_bits: 512,
            },
            max_numerator: 10_000,
            max_denominator: 99,
        }
    }
}

/// Deterministic sample of odd-denominator rationals: about half are
/// integers, the rest have an odd denominator in `3..=max_denominator`.
pub fn sample_rationals(n: usize, seed: u64, max_numerator: i64, max_denominator: i64) -> Vec<Q2> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| draw(&mut rng, max_numerator, max_denominator))
        .collect()
}

fn draw(rng: &mut ChaCha8Rng, max_numerator: i64, max_denominator: i64) -> Q2 {
    let a = rng.random_range(-max_numerator..=max_numerator);
    let b = if max_denominator < 3 || rng.random_bool(0.5) {
        1
    } else {
        2 * rng.random_range(1..=(max_denominator - 1) / 2) + 1
    };
    Q2::new(a, b).expect("odd denominator")
}

struct Sample {
    x: Q2,
    k: u32,
    n: u32,
}

/// Runs every proved identity on sampled `(x, k)`:
///
/// - `Q T = σ Q` and `Φ Q_k ≡ 1` mod `2^k`
/// - `Ω² ≡ 1`, `Q Ω ≡ V Q` mod `2^k`, `Ω T ≡ T Ω` mod `2^(k-1)`
/// - `Φ_{m,r} = r Φ_{m,1}` exactly and mod `2^k`
/// - on orbits that close: `Φ Q = 1`, `Ω² = 1`, `Q Ω = V Q`, `Ω T = T Ω`,
///   the scaling law for `Ω(2^n x)`, norm preservation of `Q`, and for
///   `m = 1` the closed forms `Q(x) = -x/r`, `Ω(x) = r - x`.
///
/// A sample is refuted if any identity fails, with the failing names as
/// evidence.
pub fn identity_suite(p: MapParams, cfg: &IdentityConfig, exec: Execution) -> ScanReport {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let samples: Vec<Sample> = (0..cfg.samples)
        .map(|_| Sample {
            x: draw(&mut rng, cfg.max_numerator, cfg.max_denominator),
            k: rng.random_range(1..=cfg.k_max.max(1)),
            n: rng.random_range(1..=8),
        })
        .collect();

    let results = map_items(exec, &samples, |s| check_sample(p, s, cfg.limits));
    let exact_checked = results.iter().filter(|(_, exact)| *exact).count();
    let items = samples
        .iter()
        .zip(results)
        .map(|(s, (failures, exact))| {
            let verdict = if failures.is_empty() {
                Verdict::Confirmed
            } else {
                Verdict::Refuted
            };
            Witness {
                input: s.x.to_string(),
                verdict,
                evidence: evidence([
                    ("k", s.k.to_string()),
                    ("n", s.n.to_string()),
                    ("exact_checks", exact.to_string()),
                    ("failed", failures.join(",")),
                ]),
            }
        })
        .collect();

    let sample = format!(
        "{} rationals |a| <= {}, odd b <= {}, k in 1..={}, seed {}",
        cfg.samples, cfg.max_numerator, cfg.max_denominator, cfg.k_max, cfg.seed
    );
    let mut report = ScanReport::collect("identities", p, sample, items, |_| false);
    report
        .summary
        .insert("exact_checked".into(), exact_checked.to_string());
    report
}

fn check_sample(p: MapParams, s: &Sample, limits: OrbitLimits) -> (Vec<&'static str>, bool) {
    let mut failed = Vec::new();
    let mut check = |name: &'static str, ok: bool| {
        if !ok {
            failed.push(name);
        }
    };
    let (x, k) = (&s.x, s.k);
    let x_mod = x.residue(k);
    let qk = q_truncated(p, x, k);
    let tx = t_apply(p, x);

    check("QT=sigmaQ", q_truncated(p, &tx, k) == q_truncated(p, x, k + 1).shift());
    check("PhiQ=1 mod 2^k", *phi_truncated(p, &qk).residue() == x_mod);

    let omega_w = omega_mod(p, x, k);
    let y = Q2::from(omega_w.to_bigint());
    check("Omega^2=1 mod 2^k", *omega_mod(p, &y, k).residue() == x_mod);
    check("QOmega=VQ mod 2^k", q_truncated(p, &y, k) == qk.complement());
    if k >= 2 {
        let lhs = omega_mod(p, &tx, k - 1);
        let rhs = t_apply(p, &y).residue(k - 1);
        check("OmegaT=TOmega mod 2^(k-1)", *lhs.residue() == rhs);
    }

    let unit = p.with_unit_r();
    let r = BigInt::from(p.r());
    let bits = rational_to_bits(x);
    check(
        "Phi_r=r*Phi_1",
        phi_exact(p, &bits) == phi_exact(unit, &bits) * Q2::from(r.clone()),
    );
    let scaled = (phi_truncated(unit, &qk).to_bigint() * &r).mod_floor(&(BigInt::one() << k));
    let scaled = TwoAdicWord::new(scaled.to_biguint().expect("nonnegative"), k).expect("reduced");
    check("Phi_r=r*Phi_1 mod 2^k", phi_truncated(p, &qk) == scaled);

    let Some(qx) = q_exact_with(p, x, limits) else {
        return (failed, false);
    };
    check("Q consistency", qx.truncate(k) == qk);
    check(
        "norm preservation",
        qx.to_rational().valuation() == x.valuation(),
    );
    check("PhiQ=1", phi_exact(p, &qx) == *x);
    let omega = phi_exact(p, &qx.complement());
    if let Some(q_omega) = q_exact_with(p, &omega, limits) {
        check("QOmega=VQ", q_omega == qx.complement());
        check("Omega^2=1", phi_exact(p, &q_omega.complement()) == *x);
    }
    if let Some(omega_tx) = omega_exact_with(p, &tx, limits) {
        check("OmegaT=TOmega", omega_tx == t_apply(p, &omega));
    }
    if let Some(omega_scaled) = omega_exact_with(p, &x.shl(s.n), limits) {
        check("scaling", omega_scaled == theorem1_scale(p, &omega, s.n));
    }
    if p.m() == 1 {
        let minus_x_over_r = (-x).div_odd(&r).expect("r is odd");
        check("Q_1r=-x/r", qx.to_rational() == minus_x_over_r);
        check("Omega_1r=r-x", omega == Q2::from(r) - x.clone());
    }
    (failed, true)
}

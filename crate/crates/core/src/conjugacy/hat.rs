use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::phi_exact;
use crate::collatz::{trace, Cycle, MapParams, OrbitLimits};
use crate::exactnum::{decimal_string, EventuallyPeriodicBits, Q2};

/// Settings for [`omega_hat`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HatConfig {
    /// Absolute error target for the real limit.
    pub tolerance: f64,
    /// Orbit exploration limits; the parity bits seen within them are all
    /// the evidence available.
    pub limits: OrbitLimits,
    /// Shortest trailing window used to measure even-step density, and the
    /// number of consecutive blown-up steps that counts as divergence.
    pub window: usize,
    /// `log2` of the term size treated as blown up.
    pub blowup_log2: f64,
    /// Steps between convergence checks.
    pub check_every: usize,
}

impl Default for HatConfig {
    fn default() -> Self {
        HatConfig {
            tolerance: 1e-6,
            limits: OrbitLimits::default(),
            window: 64,
            blowup_log2: 64.0,
            check_every: 8,
        }
    }
}

impl HatConfig {
    pub fn with_tolerance(tolerance: f64) -> Self {
        HatConfig {
            tolerance,
            ..Default::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HatStatus {
    Converged,
    Diverged,
    Unknown,
}

/// How a status was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Certificate {
    /// The orbit is eventually periodic; the verdict is a theorem about
    /// that cycle.
    ExactCycle,
    /// The measured even-step density is assumed to persist for the
    /// unseen tail; the error bound holds under that assumption.
    ConditionalTail,
    /// Sustained growth of the terms; not a proof.
    Heuristic,
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DivergenceWitness {
    /// Orbit step `k` at which the truncation term was measured.
    pub step: usize,
    /// Number of even steps `j` before `k`.
    pub term_index: usize,
    /// `log2 (2^k / |m|^j)`.
    pub log2_magnitude: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OmegaHatResult {
    pub status: HatStatus,
    pub certificate: Certificate,
    /// Limit value for exact cycles, otherwise the last partial sum
    /// `-(r/m) Σ_{l<j} m^{-l} 2^{i_l}`.
    #[serde(serialize_with = "crate::ser::opt_ratio")]
    pub value: Option<BigRational>,
    /// Bound on `|Ω̂ - value|`; zero for exact cycles.
    pub error_bound: Option<f64>,
    pub terms_used: usize,
    pub steps: usize,
    /// Fraction of even steps seen: over one period for cycles, over the
    /// whole trace otherwise.
    #[serde(serialize_with = "crate::ser::ratio")]
    pub density_seen: BigRational,
    /// Minimum density over trailing windows at the last check.
    pub window_density: Option<f64>,
    pub witness: Option<DivergenceWitness>,
}

impl OmegaHatResult {
    pub fn to_f64(&self) -> Option<f64> {
        self.value.as_ref().and_then(|v| v.to_f64())
    }

    pub fn decimal(&self, digits: usize) -> Option<String> {
        self.value.as_ref().map(|v| decimal_string(v, digits))
    }
}

/// The real limit `Ω̂(x) = lim Ω_k(x)`, when it can be established.
///
/// Eventually periodic orbits are decided exactly: writing `P` for the
/// cycle length and `z` for its even steps, the limit exists iff
/// `2^P < |m|^z` or the cycle is the fixed point 0, and then it equals the
/// 2-adic `Ω(x)`. Other orbits are summed from their parity bits until the
/// geometric majorant of the tail, built from the smallest trailing-window
/// density seen, falls below the tolerance. Divergence is reported when
/// `2^k / |m|^j` stays above `2^blowup_log2` for `window` consecutive steps.
pub fn omega_hat(p: MapParams, x: &Q2, cfg: &HatConfig) -> OmegaHatResult {
    let t = trace(p, x, cfg.limits, false);
    match t.cycle {
        Some(c) => cyclic(p, &t.bits, c, cfg),
        None => stream(p, &t.bits, cfg),
    }
}

fn cyclic(p: MapParams, bits: &[bool], c: Cycle, cfg: &HatConfig) -> OmegaHatResult {
    let (pre, per) = bits.split_at(c.entry);
    let evens = per.iter().filter(|b| !**b).count();
    let density_seen = BigRational::new(BigInt::from(evens), BigInt::from(per.len()));
    let contracting =
        (BigInt::one() << per.len()) < BigInt::from(p.m().unsigned_abs()).pow(evens as u32);
    let fixed_zero = evens == per.len();
    let terms_used = bits.iter().filter(|b| !**b).count();

    if contracting || fixed_zero {
        let q = EventuallyPeriodicBits::new(pre.to_vec(), per.to_vec()).expect("nonempty cycle");
        let value = phi_exact(p, &q.complement()).into_ratio();
        return OmegaHatResult {
            status: HatStatus::Converged,
            certificate: Certificate::ExactCycle,
            value: Some(value),
            error_bound: Some(0.0),
            terms_used,
            steps: bits.len(),
            density_seen,
            window_density: None,
            witness: None,
        };
    }

    // Walk the eventually periodic parities until the truncation term
    // crosses the blow-up threshold; it grows by a fixed amount per period.
    let lm = p.log2_abs_m();
    let (mut k, mut j) = (0usize, 0usize);
    let mut witness = None;
    let walk = pre.iter().chain(per.iter().cycle()).take(10_000_000);
    for &odd in walk {
        k += 1;
        if !odd {
            j += 1;
        }
        let log2h = k as f64 - j as f64 * lm;
        let w = DivergenceWitness {
            step: k,
            term_index: j,
            log2_magnitude: log2h,
        };
        witness = Some(w);
        if log2h > cfg.blowup_log2 {
            break;
        }
    }
    OmegaHatResult {
        status: HatStatus::Diverged,
        certificate: Certificate::ExactCycle,
        value: None,
        error_bound: None,
        terms_used,
        steps: bits.len(),
        density_seen,
        window_density: None,
        witness,
    }
}

fn stream(p: MapParams, bits: &[bool], cfg: &HatConfig) -> OmegaHatResult {
    let m = BigInt::from(p.m());
    let lm = p.log2_abs_m();
    let log2_r_over_m = (p.r().unsigned_abs() as f64).log2() - lm;
    let log2_tol = cfg.tolerance.log2();
    let window = cfg.window.max(1);
    let check_every = cfg.check_every.max(1);

    // acc = Σ_{l<j} 2^{i_l} m^{j-1-l}, so the partial sum is -r acc / m^j
    let mut acc = BigInt::zero();
    let mut j = 0usize;
    let mut evens_before = Vec::with_capacity(bits.len() + 1);
    evens_before.push(0usize);
    let mut blown_up = 0usize;
    let mut window_density = None;

    let partial = |acc: &BigInt, j: usize| {
        BigRational::new(-(acc * p.r()), m.pow(j as u32))
    };
    let finish = |status, certificate, acc: &BigInt, j: usize, k: usize, error_bound, window_density, witness| {
        OmegaHatResult {
            status,
            certificate,
            value: Some(partial(acc, j)),
            error_bound,
            terms_used: j,
            steps: k,
            density_seen: BigRational::new(BigInt::from(j), BigInt::from(k.max(1))),
            window_density,
            witness,
        }
    };

    for (i, &odd) in bits.iter().enumerate() {
        if !odd {
            acc = acc * &m + (BigInt::one() << i);
            j += 1;
        }
        evens_before.push(j);
        let k = i + 1;
        let log2h = k as f64 - j as f64 * lm;

        if log2h > cfg.blowup_log2 {
            blown_up += 1;
            if blown_up >= window {
                let witness = DivergenceWitness {
                    step: k,
                    term_index: j,
                    log2_magnitude: log2h,
                };
                let mut r = finish(HatStatus::Diverged, Certificate::Heuristic, &acc, j, k, None, window_density, Some(witness));
                r.value = None;
                return r;
            }
        } else {
            blown_up = 0;
        }

        if k >= window && k % check_every == 0 {
            let rho = (window..=k)
                .map(|len| (j - evens_before[k - len]) as f64 / len as f64)
                .fold(f64::INFINITY, f64::min);
            window_density = Some(rho);
            if rho * lm > 1.0 {
                // future even steps assumed at least rho apart on average:
                // i_{j+t} <= k + (t+1)/rho, so the tail is at most
                // |r/m| 2^k/|m|^j 2^{1/rho} / (1 - 2^{1/rho}/|m|)
                let log2q = 1.0 / rho - lm;
                let log2_bound =
                    log2_r_over_m + log2h + 1.0 / rho - (1.0 - log2q.exp2()).log2();
                if log2_bound <= log2_tol {
                    return finish(
                        HatStatus::Converged,
                        Certificate::ConditionalTail,
                        &acc,
                        j,
                        k,
                        Some(log2_bound.exp2()),
                        window_density,
                        None,
                    );
                }
            }
        }
    }
    finish(HatStatus::Unknown, Certificate::None, &acc, j, bits.len(), None, window_density, None)
}

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use serde::Serialize;

use super::MapParams;
use crate::exactnum::Q2;

/// One application of `T_{m,r}`.
pub fn t_apply(p: MapParams, x: &Q2) -> Q2 {
    let next = step(p, x.numer(), x.denom());
    Q2::from_ratio_unchecked(BigRational::new(next, x.denom().clone()))
}

/// `T` on the numerator of `a/b` with `b` held fixed. For odd `a`,
/// `m a + r b` is even because `m`, `r`, `b` are all odd.
pub(crate) fn step(p: MapParams, num: &BigInt, den: &BigInt) -> BigInt {
    if num.is_odd() {
        (num * p.m() + den * p.r()) >> 1u32
    } else {
        num >> 1u32
    }
}

/// Endless stream of parity bits `t_0, t_1, ...` of the orbit of `x`.
#[derive(Clone, Debug)]
pub struct Iterates {
    params: MapParams,
    num: BigInt,
    den: BigInt,
}

impl Iterates {
    pub fn new(params: MapParams, x: &Q2) -> Self {
        Iterates {
            params,
            num: x.numer().clone(),
            den: x.denom().clone(),
        }
    }

    /// The state the next call to `next` will report the parity of.
    pub fn current(&self) -> Q2 {
        Q2::from_ratio_unchecked(BigRational::new(self.num.clone(), self.den.clone()))
    }
}

impl Iterator for Iterates {
    type Item = bool;

    fn next(&mut self) -> Option<bool> {
        let bit = self.num.is_odd();
        self.num = step(self.params, &self.num, &self.den);
        Some(bit)
    }
}

/// Stopping rules for orbit exploration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitLimits {
    /// Maximum number of applications of `T`.
    pub steps: usize,
    /// A state whose numerator exceeds this many bits ends the search as
    /// exhausted.
    pub max_bits: u64,
}

impl Default for OrbitLimits {
    fn default() -> Self {
        OrbitLimits {
            steps: 1_000_000,
            max_bits: 4096,
        }
    }
}

impl OrbitLimits {
    pub fn steps(steps: usize) -> Self {
        OrbitLimits {
            steps,
            ..Default::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Cycle {
    /// Index of the first state that recurs.
    pub entry: usize,
    pub length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitResult {
    /// Distinct states in visiting order. With a cycle, `T` of the last
    /// state is `states[cycle.entry]`.
    pub states: Vec<Q2>,
    pub parity_bits: Vec<bool>,
    pub cycle: Option<Cycle>,
    /// Set exactly when no cycle was found.
    pub budget_exhausted: bool,
    /// The search stopped on the numerator-size cap rather than the step
    /// count.
    pub magnitude_capped: bool,
}

pub(crate) struct Trace {
    pub bits: Vec<bool>,
    pub numerators: Vec<BigInt>,
    pub den: BigInt,
    pub cycle: Option<Cycle>,
    pub capped: bool,
}

pub(crate) fn trace(p: MapParams, x: &Q2, limits: OrbitLimits, keep_states: bool) -> Trace {
    let den = x.denom().clone();
    let mut num = x.numer().clone();
    let mut seen: HashMap<BigInt, usize> = HashMap::new();
    let mut bits = Vec::new();
    let mut numerators = Vec::new();
    let mut cycle = None;
    let mut capped = false;
    loop {
        if let Some(&entry) = seen.get(&num) {
            cycle = Some(Cycle {
                entry,
                length: bits.len() - entry,
            });
            break;
        }
        if bits.len() >= limits.steps {
            break;
        }
        if num.bits() > limits.max_bits {
            capped = true;
            break;
        }
        seen.insert(num.clone(), bits.len());
        bits.push(num.is_odd());
        let next = step(p, &num, &den);
        if keep_states {
            numerators.push(std::mem::replace(&mut num, next));
        } else {
            num = next;
        }
    }
    Trace {
        bits,
        numerators,
        den,
        cycle,
        capped,
    }
}

/// Iterates `T` at most `budget` times with exact cycle detection.
pub fn orbit(p: MapParams, x: &Q2, budget: usize) -> OrbitResult {
    orbit_with(
        p,
        x,
        OrbitLimits {
            steps: budget,
            ..Default::default()
        },
    )
}

pub fn orbit_with(p: MapParams, x: &Q2, limits: OrbitLimits) -> OrbitResult {
    let t = trace(p, x, limits, true);
    let states = t
        .numerators
        .into_iter()
        .map(|n| Q2::from_ratio_unchecked(BigRational::new(n, t.den.clone())))
        .collect();
    OrbitResult {
        states,
        parity_bits: t.bits,
        budget_exhausted: t.cycle.is_none(),
        cycle: t.cycle,
        magnitude_capped: t.capped,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(m: i64, r: i64) -> MapParams {
        MapParams::new(m, r).unwrap()
    }

    fn q(s: &str) -> Q2 {
        s.parse().unwrap()
    }

    #[test]
    fn t_apply_examples() {
        assert_eq!(t_apply(p(3, 1), &q("1")), q("2"));
        assert_eq!(t_apply(p(5, 1), &q("1/3")), q("4/3"));
        assert_eq!(t_apply(p(1, -1), &q("7")), q("3"));
        assert_eq!(t_apply(p(3, 1), &q("-1")), q("-1"));
    }

    #[test]
    fn orbit_of_one_under_5x_plus_1() {
        let o = orbit(p(5, 1), &q("1"), 100);
        let states: Vec<_> = ["1", "3", "8", "4", "2"].iter().map(|s| q(s)).collect();
        assert_eq!(o.states, states);
        assert_eq!(o.parity_bits, vec![true, true, false, false, false]);
        assert_eq!(o.cycle, Some(Cycle { entry: 0, length: 5 }));
        assert!(!o.budget_exhausted);
    }

    #[test]
    fn orbit_of_one_third() {
        let o = orbit(p(5, 1), &q("1/3"), 100);
        assert_eq!(o.states, vec![q("1/3"), q("4/3"), q("2/3")]);
        assert_eq!(o.parity_bits, vec![true, false, false]);
        assert_eq!(o.cycle, Some(Cycle { entry: 0, length: 3 }));
    }

    #[test]
    fn fixed_point_minus_one() {
        let o = orbit(p(3, 1), &q("-1"), 10);
        assert_eq!(o.cycle, Some(Cycle { entry: 0, length: 1 }));
        assert_eq!(o.parity_bits, vec![true]);
    }

    #[test]
    fn preperiodic_entry() {
        // 5 -> 13 -> 33 -> 83 -> 208 -> 104 -> 52 -> 26 -> 13
        let o = orbit(p(5, 1), &q("5"), 100);
        assert_eq!(o.cycle, Some(Cycle { entry: 1, length: 7 }));
        let last = o.states.last().unwrap();
        assert_eq!(t_apply(p(5, 1), last), o.states[1]);
    }

    #[test]
    fn budget_exhaustion_is_a_result() {
        let o = orbit(p(5, 1), &q("1"), 3);
        assert!(o.budget_exhausted);
        assert!(o.cycle.is_none());
        assert_eq!(o.states.len(), 3);
        // exactly the budget: the revisit is still seen
        let o = orbit(p(5, 1), &q("1"), 5);
        assert_eq!(o.cycle, Some(Cycle { entry: 0, length: 5 }));
    }

    #[test]
    fn magnitude_cap() {
        let limits = OrbitLimits {
            steps: 1_000_000,
            max_bits: 64,
        };
        let o = orbit_with(p(5, 1), &q("7"), limits);
        assert!(o.budget_exhausted && o.magnitude_capped);
        assert!(o.states.len() < 1000);
    }

    #[test]
    fn iterates_match_orbit() {
        let o = orbit(p(7, 3), &q("-5/9"), 200);
        let bits: Vec<bool> = Iterates::new(p(7, 3), &q("-5/9")).take(o.parity_bits.len()).collect();
        assert_eq!(bits, o.parity_bits);
    }
}

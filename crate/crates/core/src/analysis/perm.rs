use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::collatz::{q_word_u64, MapParams};
use crate::error::{Error, Result};
use crate::exec::{map_range, Execution};

pub const MAX_QBAR_K: u32 = 24;

/// The map induced by `Q_{k,m,r}` on `Z / 2^k Z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PermutationTable {
    pub params: MapParams,
    pub k: u32,
    pub mapping: Vec<u32>,
    /// Order as a permutation: lcm of the cycle lengths.
    pub order: u64,
}

pub fn qbar_table(p: MapParams, k: u32, exec: Execution) -> Result<PermutationTable> {
    if !(1..=MAX_QBAR_K).contains(&k) {
        return Err(Error::OutOfRange {
            what: "k",
            value: u64::from(k),
            min: 1,
            max: u64::from(MAX_QBAR_K),
        });
    }
    let mapping: Vec<u32> = map_range(exec, 1usize << k, |x| q_word_u64(p, x as u64, k) as u32);
    let order = permutation_order(&mapping).ok_or(Error::NotPermutation(k))?;
    Ok(PermutationTable {
        params: p,
        k,
        mapping,
        order,
    })
}

/// lcm of cycle lengths, or `None` if `mapping` is not a bijection.
fn permutation_order(mapping: &[u32]) -> Option<u64> {
    let n = mapping.len();
    let mut hit = vec![false; n];
    for &y in mapping {
        let slot = hit.get_mut(y as usize)?;
        if *slot {
            return None;
        }
        *slot = true;
    }
    let mut visited = vec![false; n];
    let mut order = BigUint::one();
    for start in 0..n {
        if visited[start] {
            continue;
        }
        let mut len = 0u64;
        let mut x = start;
        while !visited[x] {
            visited[x] = true;
            x = mapping[x] as usize;
            len += 1;
        }
        order = order.lcm(&BigUint::from(len));
    }
    order.to_u64()
}

impl PermutationTable {
    pub fn is_identity(&self) -> bool {
        self.mapping.iter().enumerate().all(|(x, &y)| x as u32 == y)
    }

    pub fn order_divides_modulus(&self) -> bool {
        self.order.is_power_of_two() && self.order.trailing_zeros() <= self.k
    }

    /// Low bits of this table reproduce the coarser one:
    /// `mapping[x] mod 2^k' = coarser.mapping[x mod 2^k']`.
    pub fn restricts_to(&self, coarser: &PermutationTable) -> bool {
        if coarser.k > self.k || coarser.params != self.params {
            return false;
        }
        let low = (1u32 << coarser.k) - 1;
        self.mapping
            .iter()
            .enumerate()
            .all(|(x, &y)| y & low == coarser.mapping[x & low as usize])
    }
}

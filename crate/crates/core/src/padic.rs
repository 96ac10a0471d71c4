//! p-adic valuations of the terms of the zero-sum partition expansion.
//!
//! For `n = p^r` the one-block term `(-1)^(n-1) n (n-1)!` has valuation
//! `r + v_p((n-1)!)`; a term with `k >= 2` blocks of sizes `b_j` has
//! valuation `k r + sum v_p((b_j - 1)!)`. When the one-block term is the
//! unique minimum the whole sum is nonzero.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::arith::{legendre, prime_power};
use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::zerosum::for_each_zero_sum_partition;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValuationTerm {
    /// Block sizes, weakly decreasing.
    pub block_sizes: Vec<usize>,
    /// How many zero-sum set partitions have this block-size shape.
    pub count: u64,
    pub valuation: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValuationProfile {
    pub p: usize,
    pub r: u32,
    pub terms: Vec<ValuationTerm>,
    pub one_block_valuation: u32,
    /// Smallest valuation among partitions with at least two blocks.
    pub min_other_valuation: Option<u32>,
    pub strictly_minimal: bool,
}

impl ValuationProfile {
    pub fn min_valuation(&self) -> u32 {
        self.min_other_valuation
            .map_or(self.one_block_valuation, |v| {
                v.min(self.one_block_valuation)
            })
    }
}

pub fn padic_profile(table: &GroupTable, seq: &[usize]) -> Result<ValuationProfile> {
    let n = table.order();
    let (p, r) = prime_power(n).ok_or(Error::NotPrimePower(n))?;
    if seq.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: seq.len(),
        });
    }
    if table.sum(seq.iter().copied()) != 0 {
        return Err(Error::NotZeroSum);
    }
    let term_valuation = |sizes: &[usize]| {
        sizes.len() as u32 * r + sizes.iter().map(|&b| legendre(b - 1, p)).sum::<u32>()
    };
    let mut shapes: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
    for_each_zero_sum_partition(table, seq, |part| {
        *shapes.entry(part.block_sizes()).or_insert(0) += 1;
    });
    let terms: Vec<ValuationTerm> = shapes
        .into_iter()
        .rev()
        .map(|(block_sizes, count)| ValuationTerm {
            valuation: term_valuation(&block_sizes),
            block_sizes,
            count,
        })
        .collect();
    let one_block_valuation = r + legendre(n - 1, p);
    debug_assert_eq!(one_block_valuation, term_valuation(&[n]));
    let min_other_valuation = terms
        .iter()
        .filter(|t| t.block_sizes.len() >= 2)
        .map(|t| t.valuation)
        .min();
    Ok(ValuationProfile {
        p,
        r,
        terms,
        one_block_valuation,
        min_other_valuation,
        strictly_minimal: min_other_valuation.is_none_or(|v| one_block_valuation < v),
    })
}

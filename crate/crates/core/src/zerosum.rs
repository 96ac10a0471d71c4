//! Zero-sum set partitions of a sequence over G and the labelled
//! determinant coefficient
//!
//! `c(S) = sum over zero-sum set partitions pi of
//!         (-1)^(n - |pi|) n^|pi| prod_B (|B| - 1)!`.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::arith::factorial_u128;
use crate::error::{Error, Result};
use crate::group::GroupTable;

/// A set partition of the positions `0..n` of a sequence whose blocks all
/// sum to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroSumSetPartition {
    pub blocks: Vec<Vec<usize>>,
}

impl ZeroSumSetPartition {
    pub fn block_sizes(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.blocks.iter().map(Vec::len).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes
    }
}

/// Calls `visit` once per zero-sum set partition of `seq`. Each new block is
/// anchored at the smallest unassigned position, so every partition is
/// produced exactly once.
pub fn for_each_zero_sum_partition<F>(table: &GroupTable, seq: &[usize], mut visit: F)
where
    F: FnMut(&ZeroSumSetPartition),
{
    if table.sum(seq.iter().copied()) != 0 {
        return;
    }
    let mut assigned = vec![false; seq.len()];
    let mut current = ZeroSumSetPartition { blocks: Vec::new() };
    open_block(table, seq, &mut assigned, &mut current, &mut visit);
}

fn open_block<F>(
    table: &GroupTable,
    seq: &[usize],
    assigned: &mut [bool],
    current: &mut ZeroSumSetPartition,
    visit: &mut F,
) where
    F: FnMut(&ZeroSumSetPartition),
{
    let Some(anchor) = assigned.iter().position(|&a| !a) else {
        visit(current);
        return;
    };
    assigned[anchor] = true;
    let mut block = vec![anchor];
    extend_block(
        table,
        seq,
        assigned,
        anchor + 1,
        seq[anchor],
        &mut block,
        current,
        visit,
    );
    assigned[anchor] = false;
}

#[allow(clippy::too_many_arguments)]
fn extend_block<F>(
    table: &GroupTable,
    seq: &[usize],
    assigned: &mut [bool],
    next: usize,
    partial: usize,
    block: &mut Vec<usize>,
    current: &mut ZeroSumSetPartition,
    visit: &mut F,
) where
    F: FnMut(&ZeroSumSetPartition),
{
    if next == seq.len() {
        // the complement of a zero-sum block in a zero-sum remainder is zero-sum
        if partial == 0 {
            current.blocks.push(block.clone());
            open_block(table, seq, assigned, current, visit);
            current.blocks.pop();
        }
        return;
    }
    if !assigned[next] {
        assigned[next] = true;
        block.push(next);
        let s = table.add(partial, seq[next]);
        extend_block(table, seq, assigned, next + 1, s, block, current, visit);
        block.pop();
        assigned[next] = false;
    }
    extend_block(
        table,
        seq,
        assigned,
        next + 1,
        partial,
        block,
        current,
        visit,
    );
}

pub fn zero_sum_partitions(table: &GroupTable, seq: &[usize]) -> Vec<ZeroSumSetPartition> {
    let mut out = Vec::new();
    for_each_zero_sum_partition(table, seq, |p| out.push(p.clone()));
    out
}

/// Signed weight `(-1)^(b-1) n (b-1)!` of one block of size `b`.
fn block_weight(n: usize, b: usize) -> i128 {
    let w = n as i128 * factorial_u128(b - 1) as i128;
    if b.is_multiple_of(2) {
        -w
    } else {
        w
    }
}

/// `c(S)` by explicit enumeration of every zero-sum set partition.
pub fn labelled_det_coeff_enumerated(table: &GroupTable, seq: &[usize]) -> Result<BigInt> {
    check_len(table, seq)?;
    let n = table.order();
    let mut total = BigInt::from(0);
    for_each_zero_sum_partition(table, seq, |p| {
        let term = p
            .blocks
            .iter()
            .fold(BigInt::from(1), |acc, b| acc * block_weight(n, b.len()));
        total += term;
    });
    Ok(total)
}

fn check_len(table: &GroupTable, seq: &[usize]) -> Result<()> {
    if seq.len() != table.order() {
        return Err(Error::LengthMismatch {
            expected: table.order(),
            got: seq.len(),
        });
    }
    if let Some(&bad) = seq.iter().find(|&&g| g >= table.order()) {
        return Err(Error::Precondition(format!(
            "element index {bad} out of range"
        )));
    }
    Ok(())
}

/// `c(S)`, computed on multiplicity vectors: the anchor block is chosen as
/// a sub-multiset of what remains, counted with its number of labellings,
/// and the remainder's contribution is memoized (it only depends on the
/// remaining multiset).
pub fn labelled_det_coeff(table: &GroupTable, seq: &[usize]) -> Result<BigInt> {
    LabelledCoefficients::new(table).coeff(seq)
}

/// [`labelled_det_coeff`] with a memo that survives across sequences over
/// the same group; sub-multisets are shared between many supports.
#[derive(Debug, Clone)]
pub struct LabelledCoefficients<'a> {
    table: &'a GroupTable,
    memo: HashMap<u128, i128>,
}

impl<'a> LabelledCoefficients<'a> {
    pub fn new(table: &'a GroupTable) -> Self {
        Self {
            table,
            memo: HashMap::new(),
        }
    }

    pub fn coeff(&mut self, seq: &[usize]) -> Result<BigInt> {
        let table = self.table;
        check_len(table, seq)?;
        if table.order() > 16 {
            return Err(Error::Precondition(format!(
                "memoized coefficients support order <= 16, got {}",
                table.order()
            )));
        }
        if table.sum(seq.iter().copied()) != 0 {
            return Ok(BigInt::from(0));
        }
        let mut counts = vec![0u8; table.order()];
        for &g in seq {
            counts[g] += 1;
        }
        let value = self.multiset_sum(&counts)?;
        Ok(BigInt::from(value))
    }

    fn multiset_sum(&mut self, counts: &[u8]) -> Result<i128> {
        let Some(anchor) = counts.iter().position(|&c| c > 0) else {
            return Ok(1);
        };
        let key = counts
            .iter()
            .enumerate()
            .fold(0u128, |k, (i, &c)| k | (c as u128) << (8 * i));
        if let Some(&v) = self.memo.get(&key) {
            return Ok(v);
        }
        let mut rest = counts.to_vec();
        rest[anchor] -= 1;
        let mut chosen = vec![0u8; counts.len()];
        let mut total: i128 = 0;
        let mut block = Block {
            rest: &rest,
            chosen: &mut chosen,
            total: &mut total,
        };
        self.choose_block(&mut block, anchor, 0, 1, 1)?;
        self.memo.insert(key, total);
        Ok(total)
    }

    fn choose_block(
        &mut self,
        block: &mut Block<'_>,
        partial: usize,
        g: usize,
        size: usize,
        ways: i128,
    ) -> Result<()> {
        let table = self.table;
        if g == block.rest.len() {
            if partial != 0 {
                return Ok(());
            }
            let remainder: Vec<u8> = block
                .rest
                .iter()
                .zip(block.chosen.iter())
                .map(|(r, c)| r - c)
                .collect();
            let sub = self.multiset_sum(&remainder)?;
            let term = ways
                .checked_mul(block_weight(table.order(), size))
                .and_then(|t| t.checked_mul(sub))
                .ok_or(Error::Overflow("labelled determinant coefficient"))?;
            *block.total = block
                .total
                .checked_add(term)
                .ok_or(Error::Overflow("labelled determinant coefficient"))?;
            return Ok(());
        }
        let mut s = partial;
        let mut binom: i128 = 1;
        for k in 0..=block.rest[g] {
            if k > 0 {
                s = table.add(s, g);
                binom = binom * (block.rest[g] - k + 1) as i128 / k as i128;
            }
            block.chosen[g] = k;
            self.choose_block(block, s, g + 1, size + k as usize, ways * binom)?;
        }
        block.chosen[g] = 0;
        Ok(())
    }
}

struct Block<'b> {
    rest: &'b [u8],
    chosen: &'b mut [u8],
    total: &'b mut i128,
}

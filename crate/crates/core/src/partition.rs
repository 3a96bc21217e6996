//! Equal-sum partitions of an arithmetic progression into `t` blocks of `s`
//! terms: the row condition of a `t x s` magic rectangle. Column sums are
//! never needed by the merges that use this, so they are not enforced.

use serde::{Deserialize, Serialize};

use crate::error::PartitionError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApSpec {
    pub first: i64,
    pub step: i64,
    pub length: u64,
}

impl ApSpec {
    pub fn term(&self, p: u64) -> i64 {
        self.first + self.step * p as i64
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EqualSumPartition {
    /// Block values, each in descending order; blocks ordered by their
    /// largest value, descending.
    pub blocks: Vec<Vec<i64>>,
    /// The same blocks as 1-based ranks in the descending progression
    /// (rank 1 is the largest term).
    pub ranks: Vec<Vec<u64>>,
    pub target: i64,
}

impl EqualSumPartition {
    /// Blocks are disjoint, cover the progression, have `s` terms each and
    /// all sum to `target`.
    pub fn verify(&self, spec: &ApSpec, t: u64, s: u64) -> bool {
        if self.blocks.len() as u64 != t || self.blocks.iter().any(|b| b.len() as u64 != s) {
            return false;
        }
        let mut all: Vec<i64> = self.blocks.iter().flatten().copied().collect();
        all.sort_unstable();
        let mut want: Vec<i64> = (0..spec.length).map(|p| spec.term(p)).collect();
        want.sort_unstable();
        all == want && self.blocks.iter().all(|b| b.iter().sum::<i64>() == self.target)
    }
}

/// Offsets chosen from each of the `s` slices of `t` consecutive indices, per block.
fn latin_offsets(t: u64, s: u64) -> Option<Vec<Vec<u64>>> {
    if t == 1 {
        return Some(vec![vec![0; s as usize]]);
    }
    if s < 3 || s.is_multiple_of(2) || t.is_multiple_of(2) {
        return None;
    }
    let m = (t - 1) / 2;
    let blocks = (0..t)
        .map(|c| {
            let first = c;
            let second = (c + m) % t;
            // first + second runs over m..=3m exactly once, so this is a permutation
            let third = 3 * m - first - second;
            let mut row = vec![first, second, third];
            for _ in 0..(s - 3) / 2 {
                row.push(c);
                row.push(t - 1 - c);
            }
            row
        })
        .collect();
    Some(blocks)
}

fn from_index_blocks(spec: &ApSpec, index_blocks: Vec<Vec<u64>>, target: i64) -> EqualSumPartition {
    let n = spec.length;
    let descending = spec.step >= 0;
    let rank = |p: u64| if descending { n - p } else { p + 1 };
    let mut pairs: Vec<(Vec<i64>, Vec<u64>)> = index_blocks
        .into_iter()
        .map(|b| {
            let mut ranks: Vec<u64> = b.iter().map(|&p| rank(p)).collect();
            ranks.sort_unstable();
            let values = ranks
                .iter()
                .map(|&r| spec.term(if descending { n - r } else { r - 1 }))
                .collect();
            (values, ranks)
        })
        .collect();
    pairs.sort_by(|a, b| a.1.cmp(&b.1));
    let (blocks, ranks) = pairs.into_iter().unzip();
    EqualSumPartition { blocks, ranks, target }
}

/// Bounded search over index sets; `None` when exhausted or over budget.
/// Each block starts at the smallest unused index, which removes block-order
/// symmetry.
fn backtrack(values: &[i64], s: usize, target: i64, budget: &mut u64) -> Option<Vec<Vec<u64>>> {
    struct Search<'a> {
        values: &'a [i64],
        used: Vec<bool>,
        s: usize,
        target: i64,
        blocks: Vec<Vec<u64>>,
    }

    impl Search<'_> {
        fn next_block(&mut self, budget: &mut u64) -> bool {
            let Some(p) = self.used.iter().position(|&u| !u) else {
                return true;
            };
            self.used[p] = true;
            let mut current = vec![p as u64];
            let ok = self.grow(&mut current, p + 1, self.values[p], budget);
            self.used[p] = false;
            ok
        }

        fn grow(&mut self, current: &mut Vec<u64>, from: usize, sum: i64, budget: &mut u64) -> bool {
            if *budget == 0 {
                return false;
            }
            *budget -= 1;
            if current.len() == self.s {
                if sum != self.target {
                    return false;
                }
                self.blocks.push(current.clone());
                if self.next_block(budget) {
                    return true;
                }
                self.blocks.pop();
                return false;
            }
            for q in from..self.values.len() {
                if self.used[q] {
                    continue;
                }
                self.used[q] = true;
                current.push(q as u64);
                let ok = self.grow(current, q + 1, sum + self.values[q], budget);
                current.pop();
                self.used[q] = false;
                if ok {
                    return true;
                }
            }
            false
        }
    }

    let mut search = Search {
        values,
        used: vec![false; values.len()],
        s,
        target,
        blocks: Vec::new(),
    };
    search.next_block(budget).then_some(search.blocks)
}

const SEARCH_BUDGET: u64 = 2_000_000;

/// Split the progression into `t` blocks of `s` terms with equal sums.
pub fn partition_ap(spec: &ApSpec, t: u64, s: u64) -> Result<EqualSumPartition, PartitionError> {
    if t == 0 || s == 0 || t * s != spec.length {
        return Err(PartitionError::LengthMismatch {
            length: spec.length,
            t,
            s,
        });
    }
    let infeasible = |reason: &str| PartitionError::InfeasibleShape {
        t,
        s,
        reason: reason.to_string(),
    };
    if t.is_multiple_of(2) || s.is_multiple_of(2) {
        return Err(infeasible("only odd dimensions are supported"));
    }
    let total: i64 = (0..spec.length).map(|p| spec.term(p)).sum();
    if total % t as i64 != 0 {
        return Err(infeasible("total is not divisible by the block count"));
    }
    let target = total / t as i64;

    if let Some(offsets) = latin_offsets(t, s) {
        let index_blocks: Vec<Vec<u64>> = offsets
            .iter()
            .map(|row| row.iter().enumerate().map(|(a, &b)| a as u64 * t + b).collect())
            .collect();
        let out = from_index_blocks(spec, index_blocks, target);
        if out.verify(spec, t, s) {
            return Ok(out);
        }
    }

    let values: Vec<i64> = (0..spec.length).map(|p| spec.term(p)).collect();
    let mut budget = SEARCH_BUDGET;
    match backtrack(&values, s as usize, target, &mut budget) {
        Some(blocks) => {
            let out = from_index_blocks(spec, blocks, target);
            debug_assert!(out.verify(spec, t, s));
            Ok(out)
        }
        None if budget == 0 => Err(infeasible("search budget exhausted")),
        None => Err(infeasible("no equal-sum partition exists")),
    }
}

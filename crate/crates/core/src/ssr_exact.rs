//! Exact pseudo-polynomial solver for the anchored subset-sum-ratio problem:
//! `max(S_1) = p` and `max(S_i) > p` for every other set.
//!
//! Some optimum has every set built from values `<= Q` summing below `2Q`,
//! and every set holding a value `> Q` a singleton drawn from the smallest
//! such elements `q+1, q+2, ...`. The solver therefore fixes `x` of those
//! singletons for each feasible `x` and searches the remaining `k - x` sets
//! with the difference-vector table over `a_1..a_q`.

use crate::dp::{DpStats, DpTable, Mode};
use crate::error::{Error, Result};
use crate::instance::{Instance, RestrictionContext, Solution};
use crate::ratio::ExtendedRational;

/// Partial solutions of the anchored table over `values` (= `a_1..a_q`, all
/// at most `a_1 + ... + a_p`).
#[derive(Debug)]
pub struct SsrDpOutcome {
    table: DpTable,
}

impl SsrDpOutcome {
    pub fn table(&self) -> &DpTable {
        &self.table
    }

    /// Every surviving all-valid tuple, rebuilt into `k'` index sets.
    pub fn solutions(&self) -> Vec<Vec<Vec<usize>>> {
        self.table.final_cells().map(|(_, cell)| self.table.reconstruct(cell).0).collect()
    }
}

/// Runs the anchored table with `k_prime` sets. `prune_bound` is `2Q` for the
/// exact solver: tuples whose difference would drop to `-prune_bound` or
/// below are discarded.
pub fn dp_kssrr(values: &[u64], k_prime: usize, p: usize, prune_bound: u64) -> Result<SsrDpOutcome> {
    dp_kssrr_with(values, k_prime, p, prune_bound, None)
}

pub fn dp_kssrr_with(
    values: &[u64],
    k_prime: usize,
    p: usize,
    prune_bound: u64,
    stats: Option<&DpStats>,
) -> Result<SsrDpOutcome> {
    let q = values.len();
    if k_prime == 0 || p == 0 || p + k_prime > q + 1 {
        return Err(Error::RestrictionOutOfRange { p, max: (q + 1).saturating_sub(k_prime) });
    }
    let anchor_sum: u64 = values[..p].iter().sum();
    assert!(values[q - 1] <= anchor_sum, "a_q must not exceed a_1 + ... + a_p");
    let table = DpTable::run(values, k_prime, p, prune_bound as u128, Mode::SubsetSum, stats)?;
    Ok(SsrDpOutcome { table })
}

/// Optimal solution of the anchored problem on `instance` with anchor `p`.
pub fn exact_kssrr(instance: &Instance, p: usize) -> Result<Solution> {
    exact_kssrr_with(instance, p, None)
}

pub fn exact_kssrr_with(instance: &Instance, p: usize, stats: Option<&DpStats>) -> Result<Solution> {
    let sets = exact_restricted_sets(instance.values(), instance.k(), p, stats)?;
    Solution::evaluate(sets, instance.values())
}

/// Core of the exact solver, on raw sorted values (rounded values may be 0).
/// Returns the index sets of a minimum-ratio anchored solution on `values`.
pub(crate) fn exact_restricted_sets(
    values: &[u64],
    k: usize,
    p: usize,
    stats: Option<&DpStats>,
) -> Result<Vec<Vec<usize>>> {
    let ctx = RestrictionContext::compute(values, k, p)?;
    let RestrictionContext { prefix_sum, q, large_count, .. } = ctx;
    let prune_bound = prefix_sum.checked_mul(2).ok_or(Error::StateSpaceOverflow)?;
    let mut best: Option<(ExtendedRational, Vec<Vec<usize>>)> = None;

    for x in 0..=large_count.min(k - 1) {
        let k_prime = k - x;
        if p + k_prime > q + 1 {
            continue;
        }
        let dp = dp_kssrr_with(&values[..q], k_prime, p, prune_bound, stats)?;
        let singles = &values[q..q + x];
        let mut sums = vec![0u64; k];
        let mut table_best: Option<(ExtendedRational, _)> = None;
        for (key, cell) in dp.table.final_cells() {
            sums[0] = cell.sum1;
            for (t, &d) in key.diffs().iter().enumerate() {
                sums[t + 1] = (cell.sum1 as i64 - d) as u64;
            }
            sums[k_prime..].copy_from_slice(singles);
            let r = ExtendedRational::of_sums(&sums);
            if table_best.as_ref().is_none_or(|(b, _)| r < *b) {
                table_best = Some((r, *cell));
            }
        }
        if let Some((r, cell)) = table_best {
            if best.as_ref().is_none_or(|(b, _)| r < *b) {
                let (mut sets, _, _) = dp.table.reconstruct(&cell);
                sets.extend((1..=x).map(|y| vec![q + y]));
                best = Some((r, sets));
            }
        }
    }
    best.map(|(_, sets)| sets).ok_or(Error::Infeasible)
}

//! FPTAS for k-way number partitioning with the largest-to-smallest ratio
//! objective.
//!
//! For each anchor `p` that survives [`prune_p`], the `x = n - q` elements
//! above `Q` become singletons, all values are rounded as in the subset-sum
//! scheme, and a partition table assigns every element of `a'_1..a'_q` to
//! one of the remaining `k - x` sets. Each anchor keeps its best tuple by
//! ratio on the rounded values; anchors are then compared on the original
//! values.

use rayon::prelude::*;

use crate::dp::{DpStats, DpTable, Mode};
use crate::error::{Error, Result};
use crate::feasibility::{check_feasible, ProblemKind};
use crate::instance::{Instance, RestrictionContext, Solution};
use crate::options::SolveOptions;
use crate::ratio::{ExtendedRational, Fraction};
use crate::ssr_fptas::round_values;

/// `true` when anchor `p` can be skipped: more large elements than non-anchor
/// sets, or exactly `k - 1` of them while `p < q` leaves `q` needing a set.
pub fn prune_p(ctx: &RestrictionContext, k: usize) -> bool {
    let x = ctx.large_count;
    x > k - 1 || (x == k - 1 && ctx.p < ctx.q)
}

/// Pruning threshold `2Q/δ` of the partition table, kept as an exact
/// fraction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PruneBound {
    pub num: u128,
    pub den: u128,
}

impl PruneBound {
    /// `2Q/δ` for the original anchor prefix sum `Q` and `δ = dn/dd`.
    pub fn from_prefix(prefix_sum: u64, delta_num: u128, delta_den: u128) -> Result<Self> {
        let num = (2 * prefix_sum as u128).checked_mul(delta_den).ok_or(Error::ValueOverflow)?;
        Ok(Self { num, den: delta_num })
    }

    /// Smallest integer `B` with `B >= 2Q/δ`. For integer differences,
    /// `d - a <= -2Q/δ` holds exactly when `a - d >= B`.
    pub fn threshold(&self) -> u128 {
        self.num.div_ceil(self.den)
    }
}

/// Partial partitions of the anchored partition table.
#[derive(Debug)]
pub struct PartDpOutcome {
    table: DpTable,
    total: u64,
    k_prime: usize,
}

impl PartDpOutcome {
    pub fn table(&self) -> &DpTable {
        &self.table
    }

    /// Every all-valid tuple of the final row, rebuilt into `k'` sets that
    /// together cover `[q]`.
    pub fn solutions(&self) -> Vec<Vec<Vec<usize>>> {
        self.table.final_cells().map(|(_, cell)| self.table.reconstruct(cell).0).collect()
    }

    /// Set sums of a final tuple, recovered from its key alone: the sets
    /// cover every element, so `k'·Σ(S_1) - Σd = total`.
    fn sums_of(&self, diffs: &[i64], out: &mut [u64]) {
        let sum_d: i128 = diffs.iter().map(|&d| d as i128).sum();
        let s1 = (self.total as i128 + sum_d) / self.k_prime as i128;
        debug_assert_eq!(s1 * self.k_prime as i128, self.total as i128 + sum_d);
        out[0] = s1 as u64;
        for (t, &d) in diffs.iter().enumerate() {
            out[t + 1] = (s1 - d as i128) as u64;
        }
    }
}

/// Runs the partition table on `values` (rounded `a'_1..a'_q`), with
/// `k_prime` sets and anchor `p`. Every element joins a set; tuples with a
/// difference at or below `-2Q/δ` are pruned.
pub fn dp_kpartr(values: &[u64], k_prime: usize, p: usize, bound: PruneBound) -> Result<PartDpOutcome> {
    dp_kpartr_with(values, k_prime, p, bound, None)
}

pub fn dp_kpartr_with(
    values: &[u64],
    k_prime: usize,
    p: usize,
    bound: PruneBound,
    stats: Option<&DpStats>,
) -> Result<PartDpOutcome> {
    let q = values.len();
    if k_prime == 0 || p == 0 || p + k_prime > q + 1 {
        return Err(Error::RestrictionOutOfRange { p, max: (q + 1).saturating_sub(k_prime) });
    }
    let table = DpTable::run(values, k_prime, p, bound.threshold(), Mode::Partition, stats)?;
    let total = values.iter().sum();
    Ok(PartDpOutcome { table, total, k_prime })
}

/// Best tuple for one anchor, judged on the rounded values. `None` when the
/// anchor is pruned or its table has no all-valid tuple.
fn best_for_anchor(instance: &Instance, p: usize, eps: Fraction, stats: Option<&DpStats>) -> Result<Option<Vec<Vec<usize>>>> {
    let n = instance.n();
    let k = instance.k();
    let ctx = instance.restriction(p)?;
    if prune_p(&ctx, k) {
        return Ok(None);
    }
    let RestrictionContext { prefix_sum, q, large_count: x, .. } = ctx;
    let k_prime = k - x;
    let rounded = round_values(instance.values(), p, eps)?;
    let bound = PruneBound::from_prefix(prefix_sum, rounded.delta_num, rounded.delta_den)?;
    let dp = dp_kpartr_with(&rounded.values[..q], k_prime, p, bound, stats)?;

    let singles = &rounded.values[q..n];
    let mut sums = vec![0u64; k];
    let mut best: Option<(ExtendedRational, _)> = None;
    for (key, cell) in dp.table.final_cells() {
        dp.sums_of(key.diffs(), &mut sums);
        sums[k_prime..].copy_from_slice(singles);
        let r = ExtendedRational::of_sums(&sums);
        if best.as_ref().is_none_or(|(b, _)| r < *b) {
            best = Some((r, *cell));
        }
    }
    Ok(best.map(|(_, cell)| {
        let (mut sets, _, _) = dp.table.reconstruct(&cell);
        sets.extend((1..=x).map(|y| vec![q + y]));
        sets
    }))
}

/// `(1+ε)`-approximation of the optimal k-way partition ratio.
pub fn fptas_kpart(instance: &Instance, eps: Fraction) -> Result<Solution> {
    fptas_kpart_with(instance, eps, &SolveOptions::default())
}

pub fn fptas_kpart_with(instance: &Instance, eps: Fraction, opts: &SolveOptions<'_>) -> Result<Solution> {
    if !eps.is_proper() {
        return Err(Error::EpsilonOutOfRange { num: eps.numer(), den: eps.denom() });
    }
    let last = instance.max_restriction();
    let solve = |p: usize| best_for_anchor(instance, p, eps, opts.stats);
    let per_anchor: Vec<Result<Option<Vec<Vec<usize>>>>> = if opts.parallel {
        (1..=last).into_par_iter().map(solve).collect()
    } else {
        (1..=last).map(solve).collect()
    };

    let mut considered = 0usize;
    let mut best: Option<Solution> = None;
    for r in per_anchor {
        let Some(sets) = r? else { continue };
        considered += 1;
        let s = Solution::evaluate(sets, instance.values())?;
        if best.as_ref().is_none_or(|b| s.ratio() < b.ratio()) {
            best = Some(s);
        }
    }
    assert!(considered > 0, "every anchor was pruned although k <= n");
    let best = best.expect("at least one anchor produced a partition");
    let report = check_feasible(best.sets(), instance.n(), instance.k(), ProblemKind::Part);
    assert!(report.is_feasible(), "partition FPTAS produced an infeasible result: {:?}", report.violation);
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: usize, q: usize, x: usize) -> RestrictionContext {
        RestrictionContext { p, prefix_sum: 0, q, large_count: x }
    }

    #[test]
    fn pruning_rules() {
        assert!(prune_p(&ctx(1, 2, 3), 3));
        assert!(prune_p(&ctx(1, 2, 2), 3));
        assert!(!prune_p(&ctx(2, 2, 2), 3));
        assert!(!prune_p(&ctx(1, 5, 1), 3));
    }

    #[test]
    fn prune_bound_is_ceiling() {
        let b = PruneBound { num: 7, den: 2 };
        assert_eq!(b.threshold(), 4);
        let b = PruneBound { num: 8, den: 2 };
        assert_eq!(b.threshold(), 4);
    }

    fn wide() -> PruneBound {
        PruneBound { num: 1000, den: 1 }
    }

    fn sorted(mut sols: Vec<Vec<Vec<usize>>>) -> Vec<Vec<Vec<usize>>> {
        sols.sort();
        sols
    }

    #[test]
    fn forced_partition_of_two() {
        let out = dp_kpartr(&[1, 1], 2, 1, wide()).unwrap();
        assert_eq!(out.solutions(), vec![vec![vec![1], vec![2]]]);
    }

    #[test]
    fn partitions_with_anchor_two() {
        // 2-colourings of [3] with max(S_1) = 2 and max(S_2) = 3
        let out = dp_kpartr(&[1, 2, 3], 2, 2, wide()).unwrap();
        assert_eq!(sorted(out.solutions()), vec![vec![vec![1, 2], vec![3]], vec![vec![2], vec![1, 3]]]);
    }

    #[test]
    fn partitions_with_anchor_one() {
        let out = dp_kpartr(&[1, 2, 3], 2, 1, wide()).unwrap();
        assert_eq!(out.solutions(), vec![vec![vec![1], vec![2, 3]]]);
    }

    #[test]
    fn sums_recovered_from_keys() {
        let out = dp_kpartr(&[2, 3, 5, 7, 8], 3, 2, wide()).unwrap();
        let mut sums = vec![0; 3];
        for (key, cell) in out.table().final_cells() {
            out.sums_of(key.diffs(), &mut sums);
            let (sets, _, _) = out.table().reconstruct(cell);
            let direct: Vec<u64> = sets.iter().map(|s| s.iter().map(|&i| [2, 3, 5, 7, 8][i - 1]).sum()).collect();
            assert_eq!(sums, direct);
        }
    }

    #[test]
    fn fptas_small_examples() {
        let eps = Fraction::epsilon(1, 10).unwrap();
        let a = Instance::new(&[5, 5, 5, 10], 3).unwrap();
        let s = fptas_kpart(&a, eps).unwrap();
        assert!(s.ratio().within_factor_of(&ExtendedRational::new(2, 1).unwrap(), eps));
        let a = Instance::new(&[1, 2, 3, 10], 3).unwrap();
        let s = fptas_kpart(&a, eps).unwrap();
        assert!(s.ratio().within_factor_of(&ExtendedRational::new(10, 3).unwrap(), eps));
    }
}

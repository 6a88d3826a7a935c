use rayon::prelude::*;

use crate::dp::DpStats;
use crate::error::Result;
use crate::instance::Solution;
use crate::ratio::ExtendedRational;

/// Knobs shared by the approximation schemes.
#[derive(Clone, Copy, Debug, Default)]
pub struct SolveOptions<'a> {
    /// Fan independent per-anchor / per-window solves out over the rayon pool.
    /// Results are reduced in a fixed order, so output does not depend on it.
    pub parallel: bool,
    /// Stop scanning once a solution of ratio exactly 1 is found. Off by
    /// default; when on, work is scanned sequentially.
    pub stop_at_one: bool,
    /// Optional sink for DP state counts.
    pub stats: Option<&'a DpStats>,
}

impl<'a> SolveOptions<'a> {
    pub fn parallel() -> Self {
        Self { parallel: true, ..Self::default() }
    }

    pub fn with_stats(mut self, stats: &'a DpStats) -> Self {
        self.stats = Some(stats);
        self
    }
}

/// Minimum-ratio result of `solve(i)` over `first..=last`, ties going to the
/// smallest `i`. Errors surface in index order.
pub(crate) fn best_over<F>(first: usize, last: usize, opts: &SolveOptions<'_>, solve: F) -> Result<(usize, Solution)>
where
    F: Fn(usize) -> Result<Solution> + Sync + Send,
{
    let mut best: Option<(usize, Solution)> = None;
    let consider = |i: usize, s: Solution, best: &mut Option<(usize, Solution)>| {
        if best.as_ref().is_none_or(|(_, b)| s.ratio() < b.ratio()) {
            *best = Some((i, s));
        }
    };
    if opts.parallel && !opts.stop_at_one {
        let results: Vec<Result<Solution>> = (first..=last).into_par_iter().map(&solve).collect();
        for (i, r) in (first..=last).zip(results) {
            consider(i, r?, &mut best);
        }
    } else {
        for i in first..=last {
            consider(i, solve(i)?, &mut best);
            if opts.stop_at_one && best.as_ref().is_some_and(|(_, b)| b.ratio() == ExtendedRational::one()) {
                break;
            }
        }
    }
    Ok(best.expect("scan range is nonempty"))
}

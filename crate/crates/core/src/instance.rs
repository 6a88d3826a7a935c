//! Problem instances and solutions.
//!
//! Indices in this module are 1-based: element `i` of an instance is the
//! `i`-th smallest value. The permutation back to the caller's input order is
//! kept alongside so results can be reported against the original positions.

use crate::error::{Error, Result};
use crate::ratio::ExtendedRational;

/// A sorted multiset of positive integers together with the number of
/// subsets `k` to be formed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    values: Vec<u64>,
    k: usize,
    // sorted position (0-based) -> position in the caller's input (0-based)
    origin: Vec<usize>,
}

impl Instance {
    /// Validates and sorts raw input values.
    pub fn new(raw_values: &[i64], k: usize) -> Result<Self> {
        let mut values = Vec::with_capacity(raw_values.len());
        for (position, &v) in raw_values.iter().enumerate() {
            if v <= 0 {
                return Err(Error::NonPositiveValue { position, value: v as i128 });
            }
            values.push(v as u64);
        }
        Self::from_unsorted(values, k)
    }

    /// Same as [`Instance::new`] for values already known to be unsigned.
    pub fn from_unsorted(values: Vec<u64>, k: usize) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyInstance);
        }
        if let Some(position) = values.iter().position(|&v| v == 0) {
            return Err(Error::NonPositiveValue { position, value: 0 });
        }
        if k < 2 {
            return Err(Error::SubsetCountTooSmall(k));
        }
        if k > values.len() {
            return Err(Error::SubsetCountExceedsValues { k, n: values.len() });
        }
        check_magnitude(&values)?;
        let mut origin: Vec<usize> = (0..values.len()).collect();
        origin.sort_by_key(|&i| (values[i], i));
        let sorted = origin.iter().map(|&i| values[i]).collect();
        Ok(Self { values: sorted, k, origin })
    }

    /// Sorted values, `values()[i - 1]` being element `i`.
    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Value of the 1-based element `i`.
    pub fn value(&self, i: usize) -> u64 {
        self.values[i - 1]
    }

    /// 0-based position in the caller's input of the 1-based element `i`.
    pub fn original_position(&self, i: usize) -> usize {
        self.origin[i - 1]
    }

    /// The sub-instance `A[l, r]` (1-based, inclusive). Original positions
    /// are carried over, so they still refer to the caller's input.
    pub fn slice(&self, l: usize, r: usize) -> Result<Self> {
        let n = self.n();
        if l == 0 || l > r || r > n {
            return Err(Error::IndexOutOfRange { index: if l == 0 { l } else { r }, n });
        }
        if self.k > r - l + 1 {
            return Err(Error::SubsetCountExceedsValues { k: self.k, n: r - l + 1 });
        }
        Ok(Self {
            values: self.values[l - 1..r].to_vec(),
            k: self.k,
            origin: self.origin[l - 1..r].to_vec(),
        })
    }

    /// The same multiset with a different subset count.
    pub fn with_k(&self, k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::SubsetCountTooSmall(k));
        }
        if k > self.n() {
            return Err(Error::SubsetCountExceedsValues { k, n: self.n() });
        }
        Ok(Self { k, ..self.clone() })
    }

    /// Largest valid restriction index, `n - k + 1`.
    pub fn max_restriction(&self) -> usize {
        self.n() - self.k + 1
    }

    pub fn restriction(&self, p: usize) -> Result<RestrictionContext> {
        RestrictionContext::compute(&self.values, self.k, p)
    }
}

/// `n * max(values)` must fit in `u64`, so every set sum fits and every
/// ratio comparison fits in `u128`.
pub(crate) fn check_magnitude(values: &[u64]) -> Result<()> {
    let max = values.iter().copied().max().unwrap_or(0);
    (values.len() as u64).checked_mul(max).ok_or(Error::ValueOverflow)?;
    Ok(())
}

/// Sum of the values at the 1-based indices in `set`.
pub fn subset_sum(set: &[usize], values: &[u64]) -> Result<u64> {
    let n = values.len();
    set.iter().try_fold(0u64, |acc, &i| {
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
        acc.checked_add(values[i - 1]).ok_or(Error::ValueOverflow)
    })
}

/// Largest-to-smallest ratio of `sets` on `values`.
pub fn ratio(sets: &[Vec<usize>], values: &[u64]) -> Result<ExtendedRational> {
    ensure_disjoint(sets, values.len())?;
    let sums = sets.iter().map(|s| subset_sum(s, values)).collect::<Result<Vec<_>>>()?;
    Ok(ExtendedRational::of_sums(&sums))
}

pub(crate) fn ensure_disjoint(sets: &[Vec<usize>], n: usize) -> Result<()> {
    let mut seen = vec![false; n + 1];
    for &i in sets.iter().flatten() {
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
        if std::mem::replace(&mut seen[i], true) {
            return Err(Error::OverlappingSets(i));
        }
    }
    Ok(())
}

/// `k` pairwise-disjoint index sets with their sums and ratio.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    sets: Vec<Vec<usize>>,
    sums: Vec<u64>,
    ratio: ExtendedRational,
}

impl Solution {
    /// Evaluates `sets` against `values`. Each set is sorted; set order is
    /// preserved.
    pub fn evaluate(mut sets: Vec<Vec<usize>>, values: &[u64]) -> Result<Self> {
        ensure_disjoint(&sets, values.len())?;
        for s in &mut sets {
            s.sort_unstable();
        }
        let sums = sets.iter().map(|s| subset_sum(s, values)).collect::<Result<Vec<_>>>()?;
        let ratio = ExtendedRational::of_sums(&sums);
        Ok(Self { sets, sums, ratio })
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn sums(&self) -> &[u64] {
        &self.sums
    }

    pub fn ratio(&self) -> ExtendedRational {
        self.ratio
    }

    pub fn k(&self) -> usize {
        self.sets.len()
    }

    /// Shifts every index by `offset`, re-evaluating on `values`. Used to
    /// lift solutions found on a window `A[offset + 1, ..]` back to `A`.
    pub fn shifted(&self, offset: usize, values: &[u64]) -> Result<Self> {
        let sets = self
            .sets
            .iter()
            .map(|s| s.iter().map(|&i| i + offset).collect())
            .collect();
        Self::evaluate(sets, values)
    }

    /// Sets expressed as 0-based positions in the caller's original input.
    pub fn original_sets(&self, instance: &Instance) -> Vec<Vec<usize>> {
        self.sets
            .iter()
            .map(|s| {
                let mut v: Vec<usize> = s.iter().map(|&i| instance.original_position(i)).collect();
                v.sort_unstable();
                v
            })
            .collect()
    }

    pub fn into_sets(self) -> Vec<Vec<usize>> {
        self.sets
    }
}

/// The quantities governing a restricted subproblem with anchor `p`:
/// `Q = a_1 + ... + a_p`, `q` the largest index with `a_q <= Q`, and
/// `x = n - q` elements strictly larger than `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RestrictionContext {
    pub p: usize,
    pub prefix_sum: u64,
    pub q: usize,
    pub large_count: usize,
}

impl RestrictionContext {
    /// `values` must be sorted nondecreasing.
    pub fn compute(values: &[u64], k: usize, p: usize) -> Result<Self> {
        let n = values.len();
        let max = (n + 1).saturating_sub(k);
        if p == 0 || p > max {
            return Err(Error::RestrictionOutOfRange { p, max });
        }
        let prefix_sum = values[..p].iter().try_fold(0u64, |a, &v| a.checked_add(v)).ok_or(Error::ValueOverflow)?;
        let q = values.partition_point(|&v| v <= prefix_sum);
        Ok(Self { p, prefix_sum, q, large_count: n - q })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TABLE: [i64; 8] = [16, 16, 18, 20, 24, 27, 29, 40];

    #[test]
    fn validation_sorts_and_keeps_permutation() {
        let a = Instance::new(&[10, 1, 3, 2], 3).unwrap();
        assert_eq!(a.values(), &[1, 2, 3, 10]);
        assert_eq!(a.original_position(4), 0);
        assert_eq!(a.original_position(1), 1);
    }

    #[test]
    fn validation_errors() {
        assert_eq!(Instance::new(&[5], 2), Err(Error::SubsetCountExceedsValues { k: 2, n: 1 }));
        assert_eq!(Instance::new(&[3, 0, 4], 2), Err(Error::NonPositiveValue { position: 1, value: 0 }));
        assert_eq!(Instance::new(&[], 2), Err(Error::EmptyInstance));
        assert_eq!(Instance::new(&[1, 2], 1), Err(Error::SubsetCountTooSmall(1)));
        assert_eq!(Instance::new(&[i64::MAX, i64::MAX, 1], 2), Err(Error::ValueOverflow));
    }

    #[test]
    fn subset_sums_on_table_instance() {
        let a = Instance::new(&TABLE, 4).unwrap();
        assert_eq!(subset_sum(&[1, 2, 3], a.values()), Ok(50));
        assert_eq!(subset_sum(&[], a.values()), Ok(0));
        assert_eq!(subset_sum(&[8], a.values()), Ok(40));
        assert!(subset_sum(&[9], a.values()).is_err());
    }

    #[test]
    fn table_ratios() {
        let a = Instance::new(&TABLE, 4).unwrap();
        // {40},{16,16,18},{24,27},{29,20}
        let makespan = vec![vec![8], vec![1, 2, 3], vec![5, 6], vec![7, 4]];
        assert_eq!(ratio(&makespan, a.values()), Ok(ExtendedRational::new(51, 40).unwrap()));
        // {40,16},{24,20},{16,29},{18,27}
        let best = vec![vec![8, 1], vec![5, 4], vec![2, 7], vec![3, 6]];
        assert_eq!(ratio(&best, a.values()), Ok(ExtendedRational::new(56, 44).unwrap()));
        let with_empty = vec![vec![8, 1], vec![], vec![2, 7], vec![3, 6]];
        assert!(ratio(&with_empty, a.values()).unwrap().is_infinite());
        let overlapping = vec![vec![8, 1], vec![1], vec![2, 7], vec![3, 6]];
        assert_eq!(ratio(&overlapping, a.values()), Err(Error::OverlappingSets(1)));
    }

    #[test]
    fn restriction_context_examples() {
        let a = Instance::new(&[1, 2, 3, 10], 3).unwrap();
        let ctx = a.restriction(2).unwrap();
        assert_eq!((ctx.prefix_sum, ctx.q, ctx.large_count), (3, 3, 1));
        assert_eq!(a.restriction(4), Err(Error::RestrictionOutOfRange { p: 4, max: 2 }));
        assert!(a.restriction(0).is_err());
        let b = Instance::new(&[5, 5, 5, 10], 2).unwrap();
        let ctx = b.restriction(1).unwrap();
        assert_eq!((ctx.prefix_sum, ctx.q, ctx.large_count), (5, 3, 1));
    }

    #[test]
    fn slice_keeps_original_positions() {
        let a = Instance::new(&[10, 1, 3, 2], 2).unwrap();
        let w = a.slice(3, 4).unwrap();
        assert_eq!(w.values(), &[3, 10]);
        assert_eq!(w.original_position(2), 0);
        assert!(a.slice(4, 4).is_err());
    }
}

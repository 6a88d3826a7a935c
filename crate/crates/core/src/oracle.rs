//! Exhaustive solvers used as ground truth on small instances.
//!
//! Every element is assigned to one of the `k` sets or left out (partitions
//! never leave anything out). Set labels are canonical: a new label is only
//! opened after all smaller ones are in use, which removes the `k!`
//! relabelings. In the anchored variant set 1 is special and only labels
//! `2..=k` are canonicalised. Ties go to the lexicographically smallest
//! assignment vector.

use crate::error::{Error, Result};
use crate::instance::{Instance, Solution};
use crate::ratio::ExtendedRational;

/// Size cap above which the oracles refuse to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_n: usize,
    pub max_k: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        Self { max_n: 12, max_k: 4 }
    }
}

impl OracleLimits {
    pub fn admits(&self, n: usize, k: usize) -> bool {
        n <= self.max_n && k <= self.max_k
    }
}

/// Which problem the enumeration solves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Ssr,
    /// `max(S_1) = p`, `max(S_i) > p` otherwise.
    Restricted(usize),
    /// The largest element must be used.
    Largest,
    /// Every element is assigned; empty sets are allowed (ratio `+∞`).
    Part,
}

pub fn brute_force_kssr(instance: &Instance) -> Result<Solution> {
    enumerate(instance.values(), instance.k(), Variant::Ssr, OracleLimits::default())
}

pub fn brute_force_kssrr(instance: &Instance, p: usize) -> Result<Solution> {
    let max = instance.max_restriction();
    if p == 0 || p > max {
        return Err(Error::RestrictionOutOfRange { p, max });
    }
    enumerate(instance.values(), instance.k(), Variant::Restricted(p), OracleLimits::default())
}

pub fn brute_force_kpart(instance: &Instance) -> Result<Solution> {
    enumerate(instance.values(), instance.k(), Variant::Part, OracleLimits::default())
}

pub fn brute_force_kssrl(instance: &Instance) -> Result<Solution> {
    enumerate(instance.values(), instance.k(), Variant::Largest, OracleLimits::default())
}

/// Minimum-ratio solution of `variant` on sorted `values` with `k >= 1` sets.
/// Returns [`Error::Infeasible`] when no assignment satisfies the variant.
pub fn enumerate(values: &[u64], k: usize, variant: Variant, limits: OracleLimits) -> Result<Solution> {
    let n = values.len();
    if !limits.admits(n, k) {
        return Err(Error::OracleCapExceeded { n, k, max_n: limits.max_n, max_k: limits.max_k });
    }
    if k == 0 {
        return Err(Error::SubsetCountTooSmall(k));
    }
    let mut search = Search {
        values,
        k,
        variant,
        labels: vec![0; n],
        sums: vec![0; k],
        counts: vec![0; k],
        last: vec![0; k],
        best: None,
    };
    search.descend(0, if matches!(variant, Variant::Restricted(_)) { 1 } else { 0 });
    let labels = search.best.map(|(_, l)| l).ok_or(Error::Infeasible)?;
    let mut sets = vec![Vec::new(); k];
    for (i, &l) in labels.iter().enumerate() {
        if l > 0 {
            sets[l - 1].push(i + 1);
        }
    }
    Solution::evaluate(sets, values)
}

struct Search<'a> {
    values: &'a [u64],
    k: usize,
    variant: Variant,
    // label per element, 0 = unassigned
    labels: Vec<usize>,
    sums: Vec<u64>,
    counts: Vec<usize>,
    // largest element (1-based) placed in each set so far
    last: Vec<usize>,
    best: Option<(ExtendedRational, Vec<usize>)>,
}

impl Search<'_> {
    /// `opened` = number of labels in use (label 1 counts as opened from the
    /// start in the anchored variant).
    fn descend(&mut self, i: usize, opened: usize) {
        let n = self.values.len();
        if i == n {
            self.leaf();
            return;
        }
        let elem = i + 1;
        let first_label = match self.variant {
            Variant::Part => 1,
            Variant::Restricted(p) if elem == p => 1,
            Variant::Largest if elem == n => 1,
            _ => 0,
        };
        let last_label = match self.variant {
            Variant::Restricted(p) if elem == p => 1,
            _ => (opened + 1).min(self.k),
        };
        for label in first_label..=last_label {
            if let Variant::Restricted(p) = self.variant {
                if label == 1 && elem > p {
                    continue;
                }
            }
            let opened_next = if label > opened { label } else { opened };
            self.labels[i] = label;
            if label > 0 {
                let s = label - 1;
                self.sums[s] += self.values[i];
                self.counts[s] += 1;
                let prev_last = std::mem::replace(&mut self.last[s], elem);
                self.descend(i + 1, opened_next);
                self.last[s] = prev_last;
                self.counts[s] -= 1;
                self.sums[s] -= self.values[i];
            } else {
                self.descend(i + 1, opened_next);
            }
        }
        self.labels[i] = 0;
    }

    fn leaf(&mut self) {
        let feasible = match self.variant {
            Variant::Part => true,
            Variant::Ssr | Variant::Largest => self.counts.iter().all(|&c| c > 0),
            Variant::Restricted(p) => self.last[0] == p && self.last[1..].iter().all(|&m| m > p),
        };
        if !feasible {
            return;
        }
        let r = ExtendedRational::of_sums(&self.sums);
        if self.best.as_ref().is_none_or(|(b, _)| r < *b) {
            self.best = Some((r, self.labels.clone()));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(v: &[i64], k: usize) -> Instance {
        Instance::new(v, k).unwrap()
    }

    fn rat(n: u64, d: u64) -> ExtendedRational {
        ExtendedRational::new(n, d).unwrap()
    }

    #[test]
    fn ssr_examples() {
        assert_eq!(brute_force_kssr(&inst(&[5, 5], 2)).unwrap().ratio(), rat(1, 1));
        let s = brute_force_kssr(&inst(&[1, 2, 3], 2)).unwrap();
        assert_eq!(s.ratio(), rat(1, 1));
        assert_eq!(s.sets(), &[vec![1, 2], vec![3]]);
    }

    #[test]
    fn restricted_examples() {
        let a = inst(&[1, 2, 3], 2);
        assert_eq!(brute_force_kssrr(&a, 2).unwrap().ratio(), rat(1, 1));
        assert_eq!(
            enumerate(a.values(), 2, Variant::Restricted(3), OracleLimits::default()),
            Err(Error::Infeasible)
        );
        let s = brute_force_kssrr(&inst(&[2, 3, 4], 2), 1).unwrap();
        assert_eq!(s.sets(), &[vec![1], vec![2]]);
        assert_eq!(s.ratio(), rat(3, 2));
    }

    #[test]
    fn partition_examples() {
        assert_eq!(brute_force_kpart(&inst(&[5, 5, 5, 10], 3)).unwrap().ratio(), rat(2, 1));
        let single = enumerate(&[7], 1, Variant::Part, OracleLimits::default()).unwrap();
        assert_eq!(single.ratio(), rat(1, 1));
        let s = brute_force_kpart(&inst(&[1, 2, 3, 10], 3)).unwrap();
        assert_eq!(s.ratio(), rat(10, 3));
    }

    #[test]
    fn largest_examples() {
        let s = brute_force_kssrl(&inst(&[1, 2, 3], 2)).unwrap();
        assert_eq!(s.ratio(), rat(1, 1));
        let s = brute_force_kssrl(&inst(&[1, 2, 10], 2)).unwrap();
        assert_eq!(s.ratio(), rat(10, 3));
        assert_eq!(s.sets(), &[vec![1, 2], vec![3]]);
    }

    #[test]
    fn prefix_minimum_of_largest_variant() {
        let a = inst(&[1, 2, 3, 10], 2);
        let opt = brute_force_kssr(&a).unwrap().ratio();
        let min_l = (2..=4).map(|j| brute_force_kssrl(&a.slice(1, j).unwrap()).unwrap().ratio()).min().unwrap();
        assert_eq!(opt, min_l);
        assert_eq!(opt, rat(1, 1));
    }

    #[test]
    fn cap_is_enforced() {
        let big: Vec<i64> = (1..=13).collect();
        assert!(matches!(brute_force_kssr(&inst(&big, 2)), Err(Error::OracleCapExceeded { .. })));
        let wide = OracleLimits { max_n: 13, max_k: 4 };
        let vals: Vec<u64> = (1..=13).collect();
        assert!(enumerate(&vals, 2, Variant::Ssr, wide).is_ok());
    }
}

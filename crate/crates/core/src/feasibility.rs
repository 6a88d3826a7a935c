//! Structural feasibility checks for every problem variant.

use std::fmt;

/// Which structural constraints a solution must satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProblemKind {
    /// k disjoint subsets.
    Ssr,
    /// k disjoint subsets, `max(S_1) = p` and `max(S_i) > p` for `i > 1`.
    SsrRestricted(usize),
    /// k disjoint subsets whose union contains the largest element `n`.
    SsrLargest,
    /// k disjoint subsets covering `[n]`.
    Part,
    /// A partition with the same anchor constraints as `SsrRestricted`.
    PartRestricted(usize),
}

/// The first constraint a candidate solution violates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    WrongSetCount { expected: usize, found: usize },
    IndexOutOfRange(usize),
    Overlap(usize),
    NotAPartition,
    AnchorNotMaximum { p: usize },
    SetMaximumNotAboveAnchor { set: usize, p: usize },
    MissingLargest,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::WrongSetCount { expected, found } => write!(f, "expected {expected} sets, found {found}"),
            Violation::IndexOutOfRange(i) => write!(f, "index {i} out of range"),
            Violation::Overlap(i) => write!(f, "sets overlap at index {i}"),
            Violation::NotAPartition => write!(f, "not a partition"),
            Violation::AnchorNotMaximum { p } => write!(f, "max(S_1) is not {p}"),
            Violation::SetMaximumNotAboveAnchor { set, p } => write!(f, "max(S_{set}) does not exceed {p}"),
            Violation::MissingLargest => write!(f, "largest element not used"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibilityReport {
    pub violation: Option<Violation>,
}

impl FeasibilityReport {
    pub fn is_feasible(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks `sets` (1-based indices over `[n]`) against the constraints of `kind`.
pub fn check_feasible(sets: &[Vec<usize>], n: usize, k: usize, kind: ProblemKind) -> FeasibilityReport {
    let violation = first_violation(sets, n, k, kind);
    FeasibilityReport { violation }
}

fn first_violation(sets: &[Vec<usize>], n: usize, k: usize, kind: ProblemKind) -> Option<Violation> {
    if sets.len() != k {
        return Some(Violation::WrongSetCount { expected: k, found: sets.len() });
    }
    let mut used = vec![false; n + 1];
    for &i in sets.iter().flatten() {
        if i == 0 || i > n {
            return Some(Violation::IndexOutOfRange(i));
        }
        if std::mem::replace(&mut used[i], true) {
            return Some(Violation::Overlap(i));
        }
    }
    let covers_all = used[1..].iter().all(|&u| u);
    match kind {
        ProblemKind::Ssr => None,
        ProblemKind::SsrLargest => (!used[n]).then_some(Violation::MissingLargest),
        ProblemKind::Part => (!covers_all).then_some(Violation::NotAPartition),
        ProblemKind::SsrRestricted(p) => anchor_violation(sets, p),
        ProblemKind::PartRestricted(p) => {
            if !covers_all {
                Some(Violation::NotAPartition)
            } else {
                anchor_violation(sets, p)
            }
        }
    }
}

fn anchor_violation(sets: &[Vec<usize>], p: usize) -> Option<Violation> {
    if sets[0].iter().max() != Some(&p) {
        return Some(Violation::AnchorNotMaximum { p });
    }
    sets.iter()
        .enumerate()
        .skip(1)
        .find(|(_, s)| s.iter().max().is_none_or(|&m| m <= p))
        .map(|(j, _)| Violation::SetMaximumNotAboveAnchor { set: j + 1, p })
}

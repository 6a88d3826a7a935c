//! Dynamic program over sorted difference vectors.
//!
//! A row maps a key `(D, V)` to a cell. `D = [d_2, ..., d_k']` holds
//! `Σ(S_1) - Σ(S_j)` for the non-anchor sets, kept sorted nondecreasing, and
//! `V` records for each of them whether it already holds an element above the
//! anchor `p`. Cells do not copy their sets: each stores a link into an
//! append-only trace arena (parent link, element, target slot) and the sets
//! are rebuilt by replaying the moves from the root.
//!
//! The same engine drives the subset-sum-ratio table (elements may be
//! skipped, conflicts resolved by larger `Σ(S_1)`) and the partition table
//! (every element placed, first tuple kept).

use std::collections::hash_map::Entry;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::time::Instant;

use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use crate::error::{Error, Result};

const ROOT: u32 = u32::MAX;
const COMPACT_FLOOR: usize = 1 << 20;

/// Key of a DP cell: sorted differences plus one validity bit per difference
/// (bit `t` belongs to `diffs[t]`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DpKey {
    diffs: SmallVec<[i64; 4]>,
    valid: u32,
}

impl DpKey {
    /// The key of row 0: every difference equals `a_p`, nothing valid yet.
    pub fn initial(anchor_value: i64, k_prime: usize) -> Self {
        Self { diffs: SmallVec::from_elem(anchor_value, k_prime - 1), valid: 0 }
    }

    pub fn from_parts(diffs: &[i64], validity: &[bool]) -> Self {
        assert_eq!(diffs.len(), validity.len());
        let valid = validity.iter().enumerate().fold(0u32, |acc, (t, &v)| acc | ((v as u32) << t));
        Self { diffs: SmallVec::from_slice(diffs), valid }
    }

    pub fn diffs(&self) -> &[i64] {
        &self.diffs
    }

    pub fn validity(&self) -> Vec<bool> {
        (0..self.diffs.len()).map(|t| self.valid >> t & 1 == 1).collect()
    }

    pub fn all_valid(&self) -> bool {
        self.valid.count_ones() as usize == self.diffs.len()
    }
}

/// Which set an element joins: the anchor set `S_1`, or the non-anchor set
/// currently at sorted position `t` of the difference vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    First,
    Other(usize),
}

impl Target {
    fn to_slot(self) -> u8 {
        match self {
            Target::First => 0,
            Target::Other(t) => t as u8 + 1,
        }
    }

    fn from_slot(slot: u8) -> Self {
        match slot {
            0 => Target::First,
            s => Target::Other(s as usize - 1),
        }
    }
}

/// Adds element `i` (value `value`) to `target`, returning the updated key
/// and anchor-set sum. Adding to `S_1` raises every difference; adding to a
/// non-anchor set lowers its difference, marks it valid when `i > p`, and
/// bubbles it left to restore sorted order.
pub fn dp_update(value: u64, i: usize, target: Target, key: &DpKey, sum1: u64, p: usize) -> (DpKey, u64) {
    let mut next = key.clone();
    let sum1 = apply_move(&mut next.diffs, &mut next.valid, None, value as i64, i, target, p, sum1);
    (next, sum1)
}

#[allow(clippy::too_many_arguments)]
fn apply_move(
    diffs: &mut [i64],
    valid: &mut u32,
    mut sets: Option<&mut [Vec<usize>]>,
    value: i64,
    i: usize,
    target: Target,
    p: usize,
    sum1: u64,
) -> u64 {
    match target {
        Target::First => {
            for d in diffs.iter_mut() {
                *d += value;
            }
            if let Some(sets) = sets {
                sets[0].push(i);
            }
            sum1 + value as u64
        }
        Target::Other(mut t) => {
            diffs[t] -= value;
            if i > p {
                *valid |= 1 << t;
            }
            if let Some(sets) = sets.as_deref_mut() {
                sets[t + 1].push(i);
            }
            while t > 0 && diffs[t - 1] > diffs[t] {
                diffs.swap(t - 1, t);
                let (lo, hi) = ((*valid >> (t - 1)) & 1, (*valid >> t) & 1);
                *valid = (*valid & !(0b11 << (t - 1))) | (hi << (t - 1)) | (lo << t);
                if let Some(sets) = sets.as_deref_mut() {
                    sets.swap(t, t + 1);
                }
                t -= 1;
            }
            sum1
        }
    }
}

/// A cell: link into the trace arena plus `Σ(S_1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DpCell {
    trace: u32,
    pub sum1: u64,
}

#[derive(Clone, Copy, Debug)]
struct TraceNode {
    parent: u32,
    element: u32,
    slot: u8,
}

/// How conflicts and skipped elements are handled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Mode {
    /// Elements may stay unassigned; a cell is overwritten only by a tuple
    /// with strictly larger `Σ(S_1)`.
    SubsetSum,
    /// Every element joins a set; the first tuple written to a cell stays.
    Partition,
}

/// Counters shared by concurrent DP runs, plus an optional wall-clock
/// deadline checked after every row.
#[derive(Debug, Default)]
pub struct DpStats {
    runs: AtomicU64,
    peak_states: AtomicUsize,
    bound_violations: AtomicU64,
    deadline: Option<Instant>,
}

impl DpStats {
    pub fn new() -> Self {
        Self::default()
    }

    /// Runs observed by these stats fail with [`Error::DeadlineExceeded`]
    /// once `deadline` has passed.
    pub fn with_deadline(deadline: Instant) -> Self {
        Self { deadline: Some(deadline), ..Self::default() }
    }

    fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }

    /// Number of DP runs recorded.
    pub fn runs(&self) -> u64 {
        self.runs.load(Ordering::Relaxed)
    }

    /// Largest row size seen in any run.
    pub fn peak_states(&self) -> usize {
        self.peak_states.load(Ordering::Relaxed)
    }

    /// Runs whose largest row exceeded `(3 Q_r)^(k'-1) * 2^(k'-1)`, with `Q_r`
    /// the anchor prefix sum of the values the DP ran on.
    pub fn bound_violations(&self) -> u64 {
        self.bound_violations.load(Ordering::Relaxed)
    }

    fn record(&self, peak: usize, within_bound: bool) {
        self.runs.fetch_add(1, Ordering::Relaxed);
        self.peak_states.fetch_max(peak, Ordering::Relaxed);
        if !within_bound {
            self.bound_violations.fetch_add(1, Ordering::Relaxed);
        }
    }
}

/// `(width)^(dims) * 2^(dims)`, saturating.
fn box_bound(width: u128, dims: usize) -> u128 {
    (0..dims).fold(1u128, |acc, _| acc.saturating_mul(width).saturating_mul(2))
}

/// Final row of a DP run together with what is needed to rebuild sets.
#[derive(Debug)]
pub struct DpTable {
    values: Vec<u64>,
    k_prime: usize,
    p: usize,
    row: FxHashMap<DpKey, DpCell>,
    arena: Vec<TraceNode>,
    peak_states: usize,
}

impl DpTable {
    /// Runs the table over `values` (`a_1..a_q`, sorted) with `k_prime` sets
    /// and anchor `p`. Differences reaching `-threshold` or below are pruned.
    pub(crate) fn run(
        values: &[u64],
        k_prime: usize,
        p: usize,
        threshold: u128,
        mode: Mode,
        stats: Option<&DpStats>,
    ) -> Result<Self> {
        let q = values.len();
        assert!((1..=32).contains(&k_prime));
        assert!(p >= 1 && p + k_prime <= q + 1, "anchor {p} infeasible for {k_prime} sets over {q} values");
        let anchor_sum: u64 = values[..p].iter().sum();
        let upper = anchor_sum as i128;
        let lower = -(threshold as i128);
        if upper.saturating_sub(lower) > i64::MAX as i128 / 2 {
            return Err(Error::StateSpaceOverflow);
        }
        let dims = k_prime - 1;
        let literal_bound = box_bound(3 * anchor_sum as u128, dims);
        let state_bound = box_bound(anchor_sum as u128 + threshold, dims);

        let mut row: FxHashMap<DpKey, DpCell> = FxHashMap::default();
        row.insert(DpKey::initial(values[p - 1] as i64, k_prime), DpCell { trace: ROOT, sum1: values[p - 1] });
        let mut arena: Vec<TraceNode> = Vec::new();
        let mut compact_at = COMPACT_FLOOR;
        let mut peak = 1usize;

        for i in 1..=q {
            if i == p {
                continue;
            }
            let a = values[i - 1];
            // Subset-sum rows keep every old tuple (the element may be
            // skipped), so updates go straight into the current row while
            // iterating a snapshot. Partition rows start empty.
            let snapshot: Vec<(DpKey, DpCell)> = match mode {
                Mode::SubsetSum => row.iter().map(|(k, c)| (k.clone(), *c)).collect(),
                Mode::Partition => std::mem::take(&mut row).into_iter().collect(),
            };
            let next = &mut row;
            next.reserve(snapshot.len());
            for (key, cell) in &snapshot {
                if i < p {
                    let (k2, s2) = dp_update(a, i, Target::First, key, cell.sum1, p);
                    debug_assert!(k2.diffs.iter().all(|&d| (d as i128) <= upper));
                    let link = TraceNode { parent: cell.trace, element: i as u32, slot: Target::First.to_slot() };
                    insert(next, &mut arena, mode, k2, DpCell { trace: ROOT, sum1: s2 }, Some(link));
                }
                for t in 0..dims {
                    if a as i128 - key.diffs[t] as i128 >= threshold as i128 {
                        continue;
                    }
                    let target = Target::Other(t);
                    let (k2, s2) = dp_update(a, i, target, key, cell.sum1, p);
                    debug_assert!(k2.diffs.iter().all(|&d| (d as i128) > lower && (d as i128) <= upper));
                    let link = TraceNode { parent: cell.trace, element: i as u32, slot: target.to_slot() };
                    insert(next, &mut arena, mode, k2, DpCell { trace: ROOT, sum1: s2 }, Some(link));
                }
            }
            peak = peak.max(row.len());
            assert!(
                row.len() as u128 <= state_bound,
                "row {i} holds {} states, above the bound {state_bound}",
                row.len()
            );
            if arena.len() > compact_at {
                compact(&mut row, &mut arena);
                compact_at = COMPACT_FLOOR.max(arena.len() * 2);
            }
            if arena.len() >= ROOT as usize {
                return Err(Error::StateSpaceOverflow);
            }
            if stats.is_some_and(DpStats::expired) {
                return Err(Error::DeadlineExceeded);
            }
        }

        if let Some(stats) = stats {
            stats.record(peak, peak as u128 <= literal_bound);
        }
        Ok(Self { values: values.to_vec(), k_prime, p, row, arena, peak_states: peak })
    }

    /// Largest row size observed during the run.
    pub fn peak_states(&self) -> usize {
        self.peak_states
    }

    /// Cells of the final row whose validity vector is all true.
    pub fn final_cells(&self) -> impl Iterator<Item = (&DpKey, &DpCell)> {
        self.row.iter().filter(|(key, _)| key.all_valid())
    }

    /// Every cell of the final row, valid or not.
    pub fn all_cells(&self) -> impl Iterator<Item = (&DpKey, &DpCell)> {
        self.row.iter()
    }

    /// Rebuilds the `k'` sets of `cell` (1-based indices), `S_1` first and
    /// then the non-anchor sets in key order. Also returns the replayed key
    /// and anchor sum so callers can cross-check them.
    pub fn reconstruct(&self, cell: &DpCell) -> (Vec<Vec<usize>>, DpKey, u64) {
        let mut moves = Vec::new();
        let mut at = cell.trace;
        while at != ROOT {
            let node = self.arena[at as usize];
            moves.push(node);
            at = node.parent;
        }
        let p = self.p;
        let mut sets = vec![Vec::new(); self.k_prime];
        sets[0].push(p);
        let mut key = DpKey::initial(self.values[p - 1] as i64, self.k_prime);
        let mut sum1 = self.values[p - 1];
        for node in moves.iter().rev() {
            let i = node.element as usize;
            sum1 = apply_move(
                &mut key.diffs,
                &mut key.valid,
                Some(&mut sets),
                self.values[i - 1] as i64,
                i,
                Target::from_slot(node.slot),
                p,
                sum1,
            );
        }
        for s in &mut sets {
            s.sort_unstable();
        }
        (sets, key, sum1)
    }
}

fn insert(
    row: &mut FxHashMap<DpKey, DpCell>,
    arena: &mut Vec<TraceNode>,
    mode: Mode,
    key: DpKey,
    mut cell: DpCell,
    link: Option<TraceNode>,
) {
    let mut alloc = |cell: &mut DpCell| {
        if let Some(node) = link {
            cell.trace = arena.len() as u32;
            arena.push(node);
        }
    };
    match row.entry(key) {
        Entry::Vacant(e) => {
            alloc(&mut cell);
            e.insert(cell);
        }
        Entry::Occupied(mut e) => {
            if mode == Mode::SubsetSum && cell.sum1 > e.get().sum1 {
                alloc(&mut cell);
                *e.get_mut() = cell;
            }
        }
    }
}

/// Drops trace nodes no live cell can reach. Parents always precede their
/// children in the arena, so one backward sweep marks everything reachable.
fn compact(row: &mut FxHashMap<DpKey, DpCell>, arena: &mut Vec<TraceNode>) {
    let mut live = vec![false; arena.len()];
    for cell in row.values() {
        if cell.trace != ROOT {
            live[cell.trace as usize] = true;
        }
    }
    for idx in (0..arena.len()).rev() {
        if live[idx] && arena[idx].parent != ROOT {
            live[arena[idx].parent as usize] = true;
        }
    }
    let mut remap = vec![ROOT; arena.len()];
    let mut kept = Vec::with_capacity(live.iter().filter(|&&l| l).count());
    for (idx, node) in arena.iter().enumerate() {
        if live[idx] {
            remap[idx] = kept.len() as u32;
            let parent = if node.parent == ROOT { ROOT } else { remap[node.parent as usize] };
            kept.push(TraceNode { parent, ..*node });
        }
    }
    for cell in row.values_mut() {
        if cell.trace != ROOT {
            cell.trace = remap[cell.trace as usize];
        }
    }
    *arena = kept;
}

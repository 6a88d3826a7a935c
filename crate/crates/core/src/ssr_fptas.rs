//! Rounding FPTAS for the anchored problem, and the unrestricted FPTAS that
//! runs it for every anchor.
//!
//! With anchor `p`, every value is scaled by `δ = ε·a_p / (3n)` and rounded
//! down; the exact anchored solver then runs on the rounded values and its
//! index sets are evaluated on the original ones. The anchor itself rounds
//! to `⌊3n/ε⌋ ≥ 3n`, and every feasible anchored set holds an element at or
//! above the anchor, so no rounded set sum is ever zero.

use crate::dp::DpStats;
use crate::error::{Error, Result};
use crate::instance::{check_magnitude, Instance, Solution};
use crate::options::{best_over, SolveOptions};
use crate::ratio::Fraction;
use crate::ssr_exact::exact_restricted_sets;

/// Values scaled by `1/δ` and rounded down.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundedInstance {
    /// `δ = delta_num / delta_den`, exact.
    pub delta_num: u128,
    pub delta_den: u128,
    /// `⌊a_i / δ⌋` for every element, sorted like the original values.
    pub values: Vec<u64>,
    pub anchor: usize,
}

impl RoundedInstance {
    /// Checks `a_i - δ <= δ·a'_i <= a_i` for every element.
    pub fn brackets(&self, original: &[u64]) -> bool {
        original.iter().zip(&self.values).all(|(&a, &r)| {
            // δ·r <= a  <=>  r·dn <= a·dd ; a - δ <= δ·r  <=>  a·dd <= (r + 1)·dn
            let lhs = r as u128 * self.delta_num;
            let scaled = a as u128 * self.delta_den;
            lhs <= scaled && scaled <= lhs + self.delta_num
        })
    }
}

fn check_epsilon(eps: Fraction) -> Result<()> {
    if eps.is_proper() {
        Ok(())
    } else {
        Err(Error::EpsilonOutOfRange { num: eps.numer(), den: eps.denom() })
    }
}

/// Rounds `instance` for anchor `p`: `a'_i = ⌊a_i·3n / (ε·a_p)⌋`, computed in
/// integers.
pub fn round_instance(instance: &Instance, p: usize, eps: Fraction) -> Result<RoundedInstance> {
    check_epsilon(eps)?;
    let max = instance.max_restriction();
    if p == 0 || p > max {
        return Err(Error::RestrictionOutOfRange { p, max });
    }
    round_values(instance.values(), p, eps)
}

pub(crate) fn round_values(values: &[u64], p: usize, eps: Fraction) -> Result<RoundedInstance> {
    let n = values.len() as u128;
    let anchor = values[p - 1] as u128;
    let delta_num = (eps.numer() as u128).checked_mul(anchor).ok_or(Error::ValueOverflow)?;
    let delta_den = (eps.denom() as u128).checked_mul(3 * n).ok_or(Error::ValueOverflow)?;
    let rounded = values
        .iter()
        .map(|&a| {
            let scaled = (a as u128).checked_mul(delta_den).ok_or(Error::ValueOverflow)?;
            u64::try_from(scaled / delta_num).map_err(|_| Error::ValueOverflow)
        })
        .collect::<Result<Vec<_>>>()?;
    check_magnitude(&rounded)?;
    Ok(RoundedInstance { delta_num, delta_den, values: rounded, anchor: p })
}

/// `(1+ε)`-approximation of the anchored optimum for anchor `p`.
pub fn fptas_kssrr(instance: &Instance, p: usize, eps: Fraction) -> Result<Solution> {
    fptas_kssrr_with(instance, p, eps, None)
}

pub fn fptas_kssrr_with(instance: &Instance, p: usize, eps: Fraction, stats: Option<&DpStats>) -> Result<Solution> {
    let rounded = round_instance(instance, p, eps)?;
    let sets = exact_restricted_sets(&rounded.values, instance.k(), p, stats)?;
    Solution::evaluate(sets, instance.values())
}

/// `(1+ε)`-approximation for the unrestricted problem: best anchored
/// solution over every anchor `p = 1..=n-k+1`.
pub fn fptas_kssr(instance: &Instance, eps: Fraction) -> Result<Solution> {
    fptas_kssr_with(instance, eps, &SolveOptions::default())
}

pub fn fptas_kssr_with(instance: &Instance, eps: Fraction, opts: &SolveOptions<'_>) -> Result<Solution> {
    check_epsilon(eps)?;
    let (_, best) = best_over(1, instance.max_restriction(), opts, |p| {
        fptas_kssrr_with(instance, p, eps, opts.stats)
    })?;
    Ok(best)
}

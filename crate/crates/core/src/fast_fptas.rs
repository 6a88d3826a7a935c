//! FPTAS with near-linear dependence on `n`.
//!
//! Some optimum uses a largest element `j`, and keeping only the `C` largest
//! elements `A[j-C+1, j]` loses at most a `(1+ε)` factor, because the elements
//! below the window sum to less than `ε/2 · a_{j-k+1}` whenever the input is
//! sparse (and a dense input already has `k` consecutive near-equal
//! singletons). So each window is solved with the subset-sum FPTAS and the
//! best window wins.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::instance::{Instance, Solution};
use crate::options::{best_over, SolveOptions};
use crate::ratio::Fraction;
use crate::ssr_fptas::fptas_kssr_with;

/// Window parameters: `c = 1 + ⌈(1 + 1/ε)·ln(2(k-1)/ε²)⌉` and
/// `C = (c + 1)(k - 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WindowParams {
    pub eps_inner: Fraction,
    pub c: u64,
    pub width: usize,
}

/// Computes [`WindowParams`] for `k` and `eps_inner`. The logarithm is
/// bracketed by a rational interval that is tightened until the ceiling is
/// certain.
pub fn window_size(k: usize, eps_inner: Fraction) -> Result<WindowParams> {
    if !eps_inner.is_proper() {
        return Err(Error::EpsilonOutOfRange { num: eps_inner.numer(), den: eps_inner.denom() });
    }
    if k < 2 {
        return Err(Error::SubsetCountTooSmall(k));
    }
    let (en, ed) = (BigInt::from(eps_inner.numer()), BigInt::from(eps_inner.denom()));
    let factor = BigRational::new(&en + &ed, en.clone());
    let arg = BigRational::new(BigInt::from(2 * (k as u64 - 1)) * &ed * &ed, &en * &en);
    let mut terms = 16;
    let ceiling = loop {
        let (lo, hi) = ln_bounds(&arg, terms);
        let (lo, hi) = (&factor * lo, &factor * hi);
        let (a, b) = (lo.ceil(), hi.ceil());
        if a == b {
            break a;
        }
        terms *= 2;
        assert!(terms <= 4096, "ceiling did not separate");
    };
    let c = 1 + ceiling.to_integer().to_u64().ok_or(Error::ValueOverflow)?;
    let width = (c + 1)
        .checked_mul(k as u64 - 1)
        .and_then(|w| usize::try_from(w).ok())
        .ok_or(Error::ValueOverflow)?;
    Ok(WindowParams { eps_inner, c, width })
}

/// Rational bounds `lo <= ln(x) <= hi` for `x >= 1`, from the series
/// `ln r = 2·Σ y^(2m+1)/(2m+1)` with `y = (r-1)/(r+1)`, after writing
/// `x = 2^j · r` with `r ∈ [1, 2)`.
fn ln_bounds(x: &BigRational, terms: usize) -> (BigRational, BigRational) {
    assert!(*x >= BigRational::one());
    let two = BigRational::from_integer(BigInt::from(2));
    let mut r = x.clone();
    let mut j = 0u64;
    while r >= two {
        r /= &two;
        j += 1;
    }
    let (r_lo, r_hi) = atanh_ln(&r, terms);
    let (l2_lo, l2_hi) = atanh_ln(&two, terms);
    let j = BigRational::from_integer(BigInt::from(j));
    (&j * l2_lo + r_lo, &j * l2_hi + r_hi)
}

/// Bounds on `ln r` for `r ∈ [1, 2]` (so `y <= 1/3`).
fn atanh_ln(r: &BigRational, terms: usize) -> (BigRational, BigRational) {
    let one = BigRational::one();
    let y = (r - &one) / (r + &one);
    if y.is_zero() {
        return (BigRational::zero(), BigRational::zero());
    }
    let y2 = &y * &y;
    let mut power = y.clone();
    let mut sum = BigRational::zero();
    for m in 0..terms {
        sum += &power / BigRational::from_integer(BigInt::from(2 * m as u64 + 1));
        power *= &y2;
    }
    // remaining terms: Σ_{m>=M} y^(2m+1)/(2m+1) <= y^(2M+1) / ((2M+1)(1 - y²))
    let tail = &power / (BigRational::from_integer(BigInt::from(2 * terms as u64 + 1)) * (&one - &y2));
    debug_assert!(tail.is_positive());
    let two = BigRational::from_integer(BigInt::from(2));
    (&two * &sum, &two * (sum + tail))
}

/// Windowed FPTAS: for every `j = k..=n`, solves `A[max(1, j-C+1), j]` with
/// the subset-sum FPTAS at `ε/3` and keeps the best window (ties to the
/// smaller `j`). Window width uses `ε/3` too.
pub fn fast_fptas_kssr(instance: &Instance, eps: Fraction) -> Result<Solution> {
    fast_fptas_kssr_with(instance, eps, &SolveOptions::default())
}

pub fn fast_fptas_kssr_with(instance: &Instance, eps: Fraction, opts: &SolveOptions<'_>) -> Result<Solution> {
    if !eps.is_proper() {
        return Err(Error::EpsilonOutOfRange { num: eps.numer(), den: eps.denom() });
    }
    let inner = eps.div_int(3)?;
    let params = window_size(instance.k(), inner)?;
    let inner_opts = SolveOptions { parallel: false, ..*opts };
    let (_, best) = best_over(instance.k(), instance.n(), opts, |j| {
        let (l, r) = window_bounds(j, params.width);
        let window = instance.slice(l, r)?;
        let local = fptas_kssr_with(&window, inner, &inner_opts)?;
        local.shifted(l - 1, instance.values())
    })?;
    Ok(best)
}

/// 1-based inclusive bounds of the window ending at `j`.
pub fn window_bounds(j: usize, width: usize) -> (usize, usize) {
    ((j + 1).saturating_sub(width).max(1), j)
}

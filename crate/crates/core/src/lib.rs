//! Exact and approximate solvers for two min-ratio problems over a multiset
//! of positive integers:
//!
//! * **k-subset sum ratio**: pick `k` disjoint nonempty subsets whose largest
//!   and smallest sums are as close as possible (ratio `max/min`).
//! * **k-way partition ratio**: the same objective, but the `k` subsets must
//!   cover every element.
//!
//! The pieces are an exact pseudo-polynomial solver for the anchored
//! subset-sum problem ([`ssr_exact`]), a rounding FPTAS built on it
//! ([`ssr_fptas`]), a partition FPTAS ([`part_fptas`]), a windowed FPTAS
//! whose cost is near-linear in `n` ([`fast_fptas`]) and exhaustive
//! reference solvers ([`oracle`]). All ratios are exact rationals.
//!
//! ```
//! use kratio::{fptas_kpart, Fraction, Instance};
//!
//! let a = Instance::new(&[16, 16, 18, 20, 24, 27, 29, 40], 4).unwrap();
//! let eps = Fraction::epsilon(1, 100).unwrap();
//! let s = fptas_kpart(&a, eps).unwrap();
//! assert!(s.ratio().to_f64() <= 1.01 * 14.0 / 11.0);
//! ```

pub mod cli;
pub mod dp;
pub mod error;
pub mod fast_fptas;
pub mod feasibility;
pub mod instance;
pub mod options;
pub mod oracle;
pub mod part_fptas;
pub mod ratio;
pub mod ssr_exact;
pub mod ssr_fptas;

pub use dp::DpStats;
pub use error::{Error, Result};
pub use fast_fptas::{fast_fptas_kssr, window_size, WindowParams};
pub use feasibility::{check_feasible, FeasibilityReport, ProblemKind};
pub use instance::{ratio, subset_sum, Instance, RestrictionContext, Solution};
pub use options::SolveOptions;
pub use oracle::{brute_force_kpart, brute_force_kssr, brute_force_kssrl, brute_force_kssrr};
pub use part_fptas::fptas_kpart;
pub use ratio::{ExtendedRational, Fraction};
pub use ssr_exact::exact_kssrr;
pub use ssr_fptas::{fptas_kssr, fptas_kssrr, round_instance};

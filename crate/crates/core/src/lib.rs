//! Exact Eulerian distributions on the classical Weyl groups.
//!
//! The crate covers the symmetric group `S_n` (type A), the hyperoctahedral
//! group `B_n`, its index-two subgroup `D_n` and the coset `B_n - D_n`,
//! together with their even/odd halves (elements of even or odd length).
//!
//! * [`group`] holds signed permutations and every per-element statistic.
//! * [`enumeration`] is the brute-force oracle: exhaustive, partitioned and
//!   optionally parallel tabulation of statistics over a group.
//! * [`poly`] is exact polynomial / power-series arithmetic over big integers.
//! * [`closed_forms`] builds every Eulerian and signed Eulerian polynomial
//!   from closed formulas, never by enumeration.
//! * [`involution`] executes the sign-reversing involution on `D_n` and
//!   `B_n - D_n` that collapses the signed bivariate descent polynomial.
//! * [`verify`] checks Carlitz identities and the other polynomial relations
//!   and reports machine-readable verdicts.
//! * [`clt`] computes exact moments and Kolmogorov distances to the normal
//!   law.

pub mod closed_forms;
pub mod clt;
pub mod enumeration;
pub mod error;
pub mod group;
pub mod involution;
pub mod poly;
pub mod verify;

pub use closed_forms::Family;
pub use clt::DistReport;
pub use enumeration::{Caps, DistTable, Enumerator};
pub use error::{Error, Result};
pub use group::{Ambient, GroupId, SignClass, SignedPermutation, StatKind};
pub use poly::{BiPoly, RatSeq, UniPoly};
pub use verify::{CarlitzFamily, Verdict};

/// Formats an exact rational as `p/q`, always with an explicit denominator.
pub fn fmt_ratio(r: &num_rational::BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

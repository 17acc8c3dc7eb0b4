//! Eulerian, signed Eulerian and even/odd restricted polynomials from closed
//! formulas. Nothing here enumerates group elements.
//!
//! `A_n` and `B_n` come from inverting their Carlitz series: multiply the
//! truncated series `sum (k+1)^n t^k` (resp. `(2k+1)^n`) by `(1-t)^{n+1}`.
//! `D_n` is `B_n - n 2^{n-1} t A_{n-1}`. Restricted polynomials are the
//! half-sums `(P ± SgnP) / 2`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::enumeration::DistTable;
use crate::error::{Error, Result};
use crate::group::{GroupId, SignClass, StatKind};
use crate::poly::{one_minus_t_pow, BiPoly, UniPoly};

/// A statistic on a group (or coset) with a closed-form distribution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// `des` on `S_n`.
    #[serde(rename = "a-des")]
    ADes,
    /// `exc` on `S_n`.
    #[serde(rename = "a-exc")]
    AExc,
    /// `des_B` on `B_n`.
    #[serde(rename = "b-des")]
    BDes,
    /// `exc_B` on `B_n`.
    #[serde(rename = "b-exc")]
    BExc,
    /// `des_D` on `D_n`.
    #[serde(rename = "d-des")]
    DDes,
    /// `exc_B` on `D_n`.
    #[serde(rename = "d-exc")]
    DExc,
    /// `des_B` on `D_n`.
    #[serde(rename = "bdes-over-d")]
    BDesOverD,
    /// `des_B` on `B_n - D_n`.
    #[serde(rename = "bdes-over-b-minus-d")]
    BDesOverBminusD,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::ADes,
        Family::AExc,
        Family::BDes,
        Family::BExc,
        Family::DDes,
        Family::DExc,
        Family::BDesOverD,
        Family::BDesOverBminusD,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::ADes => "a-des",
            Family::AExc => "a-exc",
            Family::BDes => "b-des",
            Family::BExc => "b-exc",
            Family::DDes => "d-des",
            Family::DExc => "d-exc",
            Family::BDesOverD => "bdes-over-d",
            Family::BDesOverBminusD => "bdes-over-b-minus-d",
        }
    }

    pub fn group(self) -> GroupId {
        match self {
            Family::ADes | Family::AExc => GroupId::A,
            Family::BDes | Family::BExc => GroupId::B,
            Family::DDes | Family::DExc | Family::BDesOverD => GroupId::D,
            Family::BDesOverBminusD => GroupId::BminusD,
        }
    }

    pub fn stat(self) -> StatKind {
        match self {
            Family::ADes => StatKind::Des,
            Family::AExc => StatKind::Exc,
            Family::BDes | Family::BDesOverD | Family::BDesOverBminusD => StatKind::DesB,
            Family::BExc | Family::DExc => StatKind::ExcB,
            Family::DDes => StatKind::DesD,
        }
    }

    /// The family computing the distribution of `stat` on `g`, if any.
    ///
    /// `exc_B` on `B_n - D_n` is served by [`Family::BDesOverBminusD`]: the two
    /// statistics are equidistributed on each parity class there, which the
    /// test suite checks by brute force.
    pub fn for_group_stat(g: GroupId, stat: StatKind) -> Option<Family> {
        match (g, stat) {
            (GroupId::BminusD, StatKind::ExcB) => Some(Family::BDesOverBminusD),
            _ => Family::ALL.into_iter().find(|f| f.group() == g && f.stat() == stat),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown family `{s}`")))
    }
}

fn require_positive_degree(n: usize, what: &str) -> Result<()> {
    if n == 0 {
        return Err(Error::DegreeOutOfRange { n, what: what.into() });
    }
    Ok(())
}

/// `(1-t)^{n+1} * sum_{k <= deg} c(k) t^k`, truncated to degree `deg`.
fn carlitz_inverse(n: usize, deg: usize, c: impl Fn(u64) -> BigInt) -> UniPoly {
    let series = UniPoly::new((0..=deg as u64).map(c).collect());
    (&series * &one_minus_t_pow(n + 1)).truncate(deg)
}

/// Eulerian polynomial `A_n(t)` of `S_n` (descents or excedances).
pub fn eulerian_a(n: usize) -> Result<UniPoly> {
    require_positive_degree(n, "eulerian_a (n >= 1)")?;
    Ok(carlitz_inverse(n, n - 1, |k| BigInt::from(k + 1).pow(n as u32)))
}

/// Type B Eulerian polynomial `B_n(t)` (`des_B` or `exc_B` on `B_n`).
pub fn eulerian_b(n: usize) -> Result<UniPoly> {
    require_positive_degree(n, "eulerian_b (n >= 1)")?;
    Ok(carlitz_inverse(n, n, |k| BigInt::from(2 * k + 1).pow(n as u32)))
}

/// Type D Eulerian polynomial `D_n(t)` (`des_D` on `D_n`); `D_1 = 1`.
pub fn eulerian_d(n: usize) -> Result<UniPoly> {
    require_positive_degree(n, "eulerian_d (n >= 1)")?;
    if n == 1 {
        return Ok(UniPoly::one());
    }
    let correction = eulerian_a(n - 1)?.shift(1).scale(&(BigInt::from(n) << (n - 1)));
    Ok(&eulerian_b(n)? - &correction)
}

/// Distribution of `family` over its whole group or coset.
pub fn unrestricted(family: Family, n: usize) -> Result<UniPoly> {
    require_positive_degree(n, "unrestricted (n >= 1)")?;
    match family {
        Family::ADes | Family::AExc => eulerian_a(n),
        Family::BDes | Family::BExc => eulerian_b(n),
        Family::DDes => eulerian_d(n),
        Family::DExc | Family::BDesOverD => (&eulerian_b(n)? + &one_minus_t_pow(n)).halve(),
        Family::BDesOverBminusD => (&eulerian_b(n)? - &one_minus_t_pow(n)).halve(),
    }
}

/// Length-signed generating function `sum (-1)^{length} t^{stat}` over the
/// family's group.
pub fn signed_gf(family: Family, n: usize) -> Result<UniPoly> {
    require_positive_degree(n, "signed_gf (n >= 1)")?;
    let even = n.is_multiple_of(2);
    Ok(match family {
        Family::AExc => one_minus_t_pow(n - 1),
        Family::ADes => &one_minus_t_pow(n / 2) * &eulerian_a(n.div_ceil(2))?,
        Family::BDes | Family::BExc => one_minus_t_pow(n),
        Family::DDes if n == 1 => UniPoly::one(),
        Family::DDes if even => one_minus_t_pow(n),
        Family::DDes => &UniPoly::from_i64s(&[1, 1]) * &one_minus_t_pow(n - 1),
        Family::DExc if even => one_minus_t_pow(n),
        Family::DExc => one_minus_t_pow(n - 1),
        Family::BDesOverD => sgn_bdes_bivariate(n, GroupId::D)?.eval_s1(),
        Family::BDesOverBminusD => sgn_bdes_bivariate(n, GroupId::BminusD)?.eval_s1(),
    })
}

/// `sum (-1)^{inv_D} s^{asc_B} t^{des_B}` over `D_n` or `B_n - D_n`.
pub fn sgn_bdes_bivariate(n: usize, g: GroupId) -> Result<BiPoly> {
    require_positive_degree(n, "sgn_bdes_bivariate (n >= 1)")?;
    let even = n.is_multiple_of(2);
    match g {
        GroupId::D if even => Ok(BiPoly::s_minus_t().pow(n as u32)),
        GroupId::D => Ok(&BiPoly::s() * &BiPoly::s_minus_t().pow(n as u32 - 1)),
        GroupId::BminusD if even => Ok(BiPoly::zero()),
        GroupId::BminusD => Ok(&BiPoly::t() * &BiPoly::s_minus_t().pow(n as u32 - 1)),
        _ => Err(Error::Unsupported(format!(
            "signed bivariate descent polynomial is defined over d and b-minus-d, not {g}"
        ))),
    }
}

/// Distribution of `family` over the `sign` half of its group.
///
/// Fails with an inconsistency error if a half-sum is not a polynomial with
/// nonnegative integer coefficients.
pub fn restricted(family: Family, n: usize, sign: SignClass) -> Result<UniPoly> {
    let all = unrestricted(family, n)?;
    let sgn = signed_gf(family, n)?;
    let twice = match sign {
        SignClass::All => return Ok(all),
        SignClass::Plus => &all + &sgn,
        SignClass::Minus => &all - &sgn,
    };
    let half = twice.halve()?;
    if !half.has_nonnegative_coeffs() {
        return Err(Error::Inconsistency(format!(
            "{family} {sign} at n = {n} has a negative coefficient: {half}"
        )));
    }
    Ok(half)
}

/// Closed-form table for `family`, labelled with the family's group and statistic.
pub fn closed_table(family: Family, n: usize, sign: SignClass) -> Result<DistTable> {
    Ok(DistTable::new(n, family.group(), sign, family.stat(), restricted(family, n, sign)?))
}

/// Closed-form table for `stat` on `g`, when a family covers the pair.
pub fn closed_distribution(n: usize, g: GroupId, sign: SignClass, stat: StatKind) -> Result<DistTable> {
    let family = Family::for_group_stat(g, stat)
        .ok_or_else(|| Error::Unsupported(format!("no closed form for statistic {stat} on {g}")))?;
    Ok(DistTable::new(n, g, sign, stat, restricted(family, n, sign)?))
}

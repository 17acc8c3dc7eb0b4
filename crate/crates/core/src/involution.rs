//! The sign-reversing involution behind the two-step recurrence for the signed
//! bivariate descent polynomial on `D_n` and `B_n - D_n`.
//!
//! Write `π''` for the window of `π` with the letters `±n`, `±(n-1)` deleted.
//! For the ambient set `D_n`, classes 1 to 5 require `π''` in `D_{n-2}` and
//! class 6 requires `π''` in `B_{n-2} - D_{n-2}`; for `B_n - D_n` the two
//! conditions trade places.
//!
//! 1. `±n` and `±(n-1)` adjacent, occupying the last two positions.
//! 2. `n`, `n-1` adjacent, not at the end.
//! 3. `-n`, `-(n-1)` adjacent, not at the end.
//! 4. `n`, `n-1` not adjacent.
//! 5. `-n`, `-(n-1)` not adjacent.
//! 6. `n`, `n-1` carry opposite signs.
//!
//! Classes 2 and 3 are exchanged by replacing the adjacent block `a, b` with
//! `-b, -a`; classes 4, 5 and 6 are mapped to themselves by exchanging the
//! absolute values `n` and `n-1` in place. Both maps keep `des_B` and flip the
//! parity of `inv_D`, so everything outside class 1 cancels.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::closed_forms::sgn_bdes_bivariate;
use crate::enumeration::Enumerator;
use crate::error::{Error, Result};
use crate::group::{Ambient, SignedPermutation};
use crate::poly::BiPoly;

/// 1-based position of the signed value `r`.
pub fn pos_of(p: &SignedPermutation, r: i32) -> Result<usize> {
    p.window().iter().position(|&v| v == r).map(|i| i + 1).ok_or(Error::ValueAbsent(r))
}

/// 1-based position of whichever of `r`, `-r` occurs.
pub fn pos_abs(p: &SignedPermutation, r: i32) -> Result<usize> {
    p.window().iter().position(|&v| v.abs() == r.abs()).map(|i| i + 1).ok_or(Error::ValueAbsent(r))
}

/// One of the six classes, tagged with its ambient set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ClassId {
    pub ambient: Ambient,
    pub class: u8,
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.ambient, self.class)
    }
}

/// `π''`: the window without the letters of absolute value `n` and `n-1`.
fn reduced(p: &SignedPermutation) -> Vec<i32> {
    let n = p.n() as i32;
    p.window().iter().copied().filter(|v| v.abs() < n - 1).collect()
}

fn adjacent(a: usize, b: usize) -> bool {
    a.abs_diff(b) == 1
}

/// Class of `p` inside `ambient`; `n >= 3` is required.
///
/// All six membership conditions are evaluated; anything other than exactly
/// one match is reported as an inconsistency.
pub fn classify(p: &SignedPermutation, ambient: Ambient) -> Result<ClassId> {
    let n = p.n();
    if n < 3 {
        return Err(Error::DegreeOutOfRange { n, what: "the six-class partition (n >= 3)".into() });
    }
    if !ambient.group().contains(p) {
        return Err(Error::NotAMember { window: p.to_string(), group: ambient.group() });
    }
    let top = n as i32;
    let inner_negs = reduced(p).iter().filter(|&&v| v < 0).count();
    // classes 1-5 keep π'' in the ambient's own parity class
    let same_parity = match ambient {
        Ambient::D => inner_negs % 2 == 0,
        Ambient::BminusD => inner_negs % 2 == 1,
    };
    let last = p.window()[n - 1];
    let pair = |a: i32, b: i32| pos_of(p, a).ok().zip(pos_of(p, b).ok());
    let pos_pair = pair(top, top - 1);
    let neg_pair = pair(-top, -(top - 1));
    let abs_adjacent = adjacent(pos_abs(p, top)?, pos_abs(p, top - 1)?);

    let matches = [
        same_parity && abs_adjacent && last.abs() >= top - 1,
        same_parity && pos_pair.is_some_and(|(a, b)| adjacent(a, b)) && last != top && last != top - 1,
        same_parity && neg_pair.is_some_and(|(a, b)| adjacent(a, b)) && last != -top && last != -(top - 1),
        same_parity && pos_pair.is_some_and(|(a, b)| !adjacent(a, b)),
        same_parity && neg_pair.is_some_and(|(a, b)| !adjacent(a, b)),
        !same_parity,
    ];
    let hits: Vec<u8> = (1..=6).filter(|&k| matches[k as usize - 1]).collect();
    match hits[..] {
        [class] => Ok(ClassId { ambient, class }),
        _ => Err(Error::Inconsistency(format!(
            "{p} in {ambient} matches classes {hits:?}, expected exactly one"
        ))),
    }
}

/// The involution on classes 2 to 6 of the ambient set containing `p`.
pub fn involution_map(p: &SignedPermutation) -> Result<SignedPermutation> {
    let class = classify(p, Ambient::of(p))?.class;
    let top = p.n() as i32;
    let mut out = p.clone();
    match class {
        1 => return Err(Error::FixedClass),
        2 | 3 => {
            let i = pos_abs(p, top)?.min(pos_abs(p, top - 1)?) - 1;
            let w = out.window_mut();
            let (a, b) = (w[i], w[i + 1]);
            w[i] = -b;
            w[i + 1] = -a;
        }
        _ => {
            for v in out.window_mut() {
                if v.abs() == top {
                    *v = v.signum() * (top - 1);
                } else if v.abs() == top - 1 {
                    *v = v.signum() * top;
                }
            }
        }
    }
    Ok(out)
}

/// Which inductively built fixed-point family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FixedFamily {
    /// Lives in `D_n`; starts from `L_1 = D_1`, `L_2 = D_2`.
    L,
    /// Lives in `B_n - D_n`; starts from `M_1 = {(-1)}`, empty for even `n`.
    M,
}

impl FixedFamily {
    pub fn for_ambient(ambient: Ambient) -> Self {
        match ambient {
            Ambient::D => FixedFamily::L,
            Ambient::BminusD => FixedFamily::M,
        }
    }

    pub fn ambient(self) -> Ambient {
        match self {
            FixedFamily::L => Ambient::D,
            FixedFamily::M => Ambient::BminusD,
        }
    }

    /// `2^n` or `2^{n-1}` for `L` (even or odd `n`); `2^{n-1}` or 0 for `M`.
    pub fn expected_size(self, n: usize) -> usize {
        match (self, n.is_multiple_of(2)) {
            (FixedFamily::L, true) => 1 << n,
            (FixedFamily::M, true) => 0,
            (_, false) => 1 << (n - 1),
        }
    }
}

impl fmt::Display for FixedFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FixedFamily::L => "L",
            FixedFamily::M => "M",
        })
    }
}

/// The fixed-point family at degree `n`, in construction order.
///
/// Each element of degree `n-2` is extended by the four tails
/// `(n-1, n)`, `(n, n-1)`, `(-n, -(n-1))`, `(-(n-1), -n)`.
pub fn build_fixed_points(n: usize, which: FixedFamily) -> Result<Vec<SignedPermutation>> {
    if n == 0 {
        return Err(Error::DegreeOutOfRange { n, what: "fixed points (n >= 1)".into() });
    }
    let base: Vec<Vec<i32>> = match (which, n % 2) {
        (FixedFamily::L, 1) => vec![vec![1]],
        (FixedFamily::L, _) => vec![vec![1, 2], vec![2, 1], vec![-1, -2], vec![-2, -1]],
        (FixedFamily::M, 1) => vec![vec![-1]],
        (FixedFamily::M, _) => vec![],
    };
    let mut level = base;
    let mut m = 2 - n % 2;
    while m < n {
        m += 2;
        let (a, b) = (m as i32 - 1, m as i32);
        let tails = [[a, b], [b, a], [-b, -a], [-a, -b]];
        level = level
            .iter()
            .flat_map(|w| {
                tails.iter().map(move |tail| {
                    let mut next = w.clone();
                    next.extend_from_slice(tail);
                    next
                })
            })
            .collect();
    }
    level.into_iter().map(SignedPermutation::new).collect()
}

fn bivariate_term(p: &SignedPermutation) -> BiPoly {
    let sign = if p.inv_d().is_multiple_of(2) { 1 } else { -1 };
    BiPoly::monomial(BigInt::from(sign), p.asc_b(), p.des_b())
}

/// `sum (-1)^{inv_D} s^{asc_B} t^{des_B}` over the fixed-point family.
pub fn fixed_point_gf(n: usize, which: FixedFamily) -> Result<BiPoly> {
    Ok(build_fixed_points(n, which)?.iter().fold(BiPoly::zero(), |acc, p| &acc + &bivariate_term(p)))
}

/// Signed `(asc_B, des_B)` counts, `[asc_B][des_B]`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Signed2(Vec<Vec<i64>>);

impl Signed2 {
    fn new(n: usize) -> Self {
        Self(vec![vec![0; n + 1]; n + 1])
    }

    fn add(&mut self, p: &SignedPermutation) {
        let sign = if p.inv_d().is_multiple_of(2) { 1 } else { -1 };
        self.0[p.asc_b()][p.des_b()] += sign;
    }

    fn merge(&mut self, other: &Self) {
        for (row, orow) in self.0.iter_mut().zip(&other.0) {
            for (a, b) in row.iter_mut().zip(orow) {
                *a += b;
            }
        }
    }

    fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(|&c| c == 0)
    }

    fn to_bipoly(&self) -> BiPoly {
        let mut out = BiPoly::zero();
        for (a, row) in self.0.iter().enumerate() {
            for (b, &c) in row.iter().enumerate() {
                out.add_term(BigInt::from(c), a, b);
            }
        }
        out
    }
}

/// Per-class accumulators for a single pass over the ambient set.
#[derive(Clone, Debug)]
struct Census {
    sizes: [u64; 6],
    sums: Vec<Signed2>,
    outside_fixed: Signed2,
    map_failures: u64,
    first_problem: Option<String>,
}

impl Census {
    fn new(n: usize) -> Self {
        Self {
            sizes: [0; 6],
            sums: vec![Signed2::new(n); 6],
            outside_fixed: Signed2::new(n),
            map_failures: 0,
            first_problem: None,
        }
    }

    fn note(&mut self, problem: String) {
        self.map_failures += 1;
        self.first_problem.get_or_insert(problem);
    }

    fn visit(&mut self, p: &SignedPermutation, ambient: Ambient, fixed: &HashSet<SignedPermutation>) {
        let class = match classify(p, ambient) {
            Ok(c) => c.class,
            Err(e) => return self.note(e.to_string()),
        };
        let idx = class as usize - 1;
        self.sizes[idx] += 1;
        self.sums[idx].add(p);
        if class == 1 {
            if !fixed.contains(p) {
                self.outside_fixed.add(p);
            }
            return;
        }
        let image = match involution_map(p) {
            Ok(q) => q,
            Err(e) => return self.note(format!("{p}: {e}")),
        };
        let expected_class = match class {
            2 => 3,
            3 => 2,
            c => c,
        };
        let image_class = classify(&image, ambient).map(|c| c.class);
        let back = involution_map(&image);
        if image_class != Ok(expected_class)
            || back.as_ref() != Ok(p)
            || image.des_b() != p.des_b()
            || (image.inv_d() + p.inv_d()) % 2 != 1
        {
            self.note(format!("map fails at {p} -> {image}"));
        }
    }

    fn merge(&mut self, other: &Self) {
        for i in 0..6 {
            self.sizes[i] += other.sizes[i];
            self.sums[i].merge(&other.sums[i]);
        }
        self.outside_fixed.merge(&other.outside_fixed);
        self.map_failures += other.map_failures;
        if self.first_problem.is_none() {
            self.first_problem.clone_from(&other.first_problem);
        }
    }
}

/// Cancellation result for one class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub n: usize,
    pub ambient: Ambient,
    pub class: u8,
    pub size: u64,
    /// For classes 2 and 3 this is the sum over their union.
    pub signed_sum_is_zero: bool,
}

/// Fixed-point family check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedPointReport {
    pub family: String,
    pub size: usize,
    pub expected_size: usize,
    pub contained_in_class_1: bool,
    pub gf_matches_closed_form: bool,
}

/// Everything checked about the involution at one `(n, ambient)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvolutionReport {
    pub n: usize,
    pub ambient: Ambient,
    pub classes: Vec<ClassReport>,
    pub partition_ok: bool,
    pub involution_ok: bool,
    pub residue_equals_full_sum: bool,
    pub residue_matches_closed_form: bool,
    pub outside_fixed_points_cancel: bool,
    pub fixed_points: FixedPointReport,
    pub first_problem: Option<String>,
    pub pass: bool,
}

/// Runs the full census of the involution over `ambient` at degree `n`.
pub fn verify_involution(en: &Enumerator, n: usize, ambient: Ambient) -> Result<InvolutionReport> {
    if n < 3 {
        return Err(Error::DegreeOutOfRange { n, what: "the six-class partition (n >= 3)".into() });
    }
    let which = FixedFamily::for_ambient(ambient);
    let fixed_list = build_fixed_points(n, which)?;
    let fixed: HashSet<SignedPermutation> = fixed_list.iter().cloned().collect();
    let census = en.fold(
        n,
        ambient.group(),
        || Census::new(n),
        |c, p| c.visit(p, ambient, &fixed),
        |c, other| c.merge(other),
    )?;

    let zero = |idx: usize| census.sums[idx].is_zero();
    let mut pair = census.sums[1].clone();
    pair.merge(&census.sums[2]);
    let classes: Vec<ClassReport> = (1..=6u8)
        .map(|class| {
            let idx = class as usize - 1;
            let signed_sum_is_zero = match class {
                2 | 3 => pair.is_zero(),
                _ => zero(idx),
            };
            ClassReport { n, ambient, class, size: census.sizes[idx], signed_sum_is_zero }
        })
        .collect();

    let total: u64 = census.sizes.iter().sum();
    let partition_ok = BigInt::from(total) == ambient.group().order(n) && census.first_problem.is_none();
    let mut full = Signed2::new(n);
    for s in &census.sums {
        full.merge(s);
    }
    let residue = census.sums[0].to_bipoly();
    let closed = sgn_bdes_bivariate(n, ambient.group())?;
    let fixed_points = FixedPointReport {
        family: which.to_string(),
        size: fixed_list.len(),
        expected_size: which.expected_size(n),
        contained_in_class_1: fixed_list.iter().all(|p| classify(p, ambient).map(|c| c.class) == Ok(1)),
        gf_matches_closed_form: fixed_point_gf(n, which)? == closed,
    };
    let mut report = InvolutionReport {
        n,
        ambient,
        partition_ok,
        involution_ok: census.map_failures == 0,
        residue_equals_full_sum: residue == full.to_bipoly(),
        residue_matches_closed_form: residue == closed,
        outside_fixed_points_cancel: census.outside_fixed.is_zero(),
        first_problem: census.first_problem,
        classes,
        fixed_points,
        pass: false,
    };
    report.pass = report.partition_ok
        && report.involution_ok
        && report.residue_equals_full_sum
        && report.residue_matches_closed_form
        && report.outside_fixed_points_cancel
        && report.classes.iter().skip(1).all(|c| c.signed_sum_is_zero)
        && report.fixed_points.size == report.fixed_points.expected_size
        && report.fixed_points.contained_in_class_1
        && report.fixed_points.gf_matches_closed_form;
    Ok(report)
}

/// Cancellation report for a single class; classes 2 and 3 report their union.
pub fn verify_cancellation(en: &Enumerator, n: usize, ambient: Ambient, class: u8) -> Result<ClassReport> {
    if !(2..=6).contains(&class) {
        return Err(Error::Unsupported(format!("class {class} has no cancelling map")));
    }
    let report = verify_involution(en, n, ambient)?;
    Ok(report.classes[class as usize - 1].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupId;

    fn w(v: &[i32]) -> SignedPermutation {
        SignedPermutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn position_examples() {
        assert_eq!(pos_of(&w(&[3, 1, 2]), 3), Ok(1));
        assert_eq!(pos_of(&w(&[-2, 1]), -2), Ok(1));
        assert_eq!(pos_abs(&w(&[-2, 1]), 2), Ok(1));
        assert_eq!(pos_of(&w(&[-2, 1]), 2), Err(Error::ValueAbsent(2)));
    }

    #[test]
    fn classify_examples() {
        let d = |v: &[i32]| classify(&w(v), Ambient::D).unwrap().class;
        assert_eq!(d(&[1, 2, 3, 4]), 1);
        assert_eq!(d(&[3, 4, 1, 2]), 2);
        assert_eq!(d(&[4, 1, 2, 3]), 4);
        assert_eq!(d(&[-3, -4, 1, 2]), 3);
        assert_eq!(d(&[-4, 1, -3, 2]), 5);
        assert_eq!(d(&[4, 1, -3, -2]), 6);
        assert!(classify(&w(&[1, 2]), Ambient::D).is_err());
        assert!(matches!(classify(&w(&[-1, 2, 3]), Ambient::D), Err(Error::NotAMember { .. })));
    }

    #[test]
    fn map_examples() {
        assert_eq!(involution_map(&w(&[4, 3, 1, 2])).unwrap(), w(&[-3, -4, 1, 2]));
        assert_eq!(involution_map(&w(&[4, 1, 2, 3])).unwrap(), w(&[3, 1, 2, 4]));
        assert_eq!(involution_map(&w(&[4, 1, -3, 2])).unwrap(), w(&[3, 1, -4, 2]));
        assert_eq!(involution_map(&w(&[1, 2, 3, 4])), Err(Error::FixedClass));
    }

    #[test]
    fn fixed_point_sizes() {
        assert_eq!(build_fixed_points(2, FixedFamily::L).unwrap().len(), 4);
        assert_eq!(build_fixed_points(3, FixedFamily::L).unwrap().len(), 4);
        assert_eq!(build_fixed_points(4, FixedFamily::M).unwrap().len(), 0);
        for n in 1..=9 {
            for f in [FixedFamily::L, FixedFamily::M] {
                let pts = build_fixed_points(n, f).unwrap();
                assert_eq!(pts.len(), f.expected_size(n), "{f} n={n}");
                assert!(pts.iter().all(|p| f.ambient().group().contains(p)));
                let set: HashSet<_> = pts.iter().collect();
                assert_eq!(set.len(), pts.len());
            }
        }
    }

    #[test]
    fn fixed_point_gf_examples() {
        let st = BiPoly::s_minus_t();
        assert_eq!(fixed_point_gf(2, FixedFamily::L).unwrap(), st.pow(2));
        assert_eq!(fixed_point_gf(3, FixedFamily::L).unwrap(), &BiPoly::s() * &st.pow(2));
        assert_eq!(fixed_point_gf(3, FixedFamily::M).unwrap(), &BiPoly::t() * &st.pow(2));
        for n in 1..=10 {
            assert_eq!(
                fixed_point_gf(n, FixedFamily::L).unwrap(),
                sgn_bdes_bivariate(n, GroupId::D).unwrap()
            );
            assert_eq!(
                fixed_point_gf(n, FixedFamily::M).unwrap(),
                sgn_bdes_bivariate(n, GroupId::BminusD).unwrap()
            );
        }
    }

    #[test]
    fn class_sizes_at_four() {
        let r = verify_involution(&Enumerator::default(), 4, Ambient::D).unwrap();
        let sizes: Vec<u64> = r.classes.iter().map(|c| c.size).collect();
        assert_eq!(sizes, vec![16, 16, 16, 24, 24, 96]);
    }

    #[test]
    fn full_census_small() {
        let en = Enumerator::default();
        for n in 3..=6 {
            for ambient in Ambient::BOTH {
                let r = verify_involution(&en, n, ambient).unwrap();
                assert!(r.pass, "{r:?}");
            }
        }
    }

    #[test]
    fn cancellation_examples() {
        let en = Enumerator::default();
        assert!(verify_cancellation(&en, 3, Ambient::D, 2).unwrap().signed_sum_is_zero);
        assert!(verify_cancellation(&en, 4, Ambient::D, 4).unwrap().signed_sum_is_zero);
        assert!(verify_cancellation(&en, 4, Ambient::D, 6).unwrap().signed_sum_is_zero);
        assert!(verify_cancellation(&en, 4, Ambient::D, 1).is_err());
    }

    #[test]
    fn class_report_json() {
        let c = ClassReport { n: 4, ambient: Ambient::D, class: 2, size: 16, signed_sum_is_zero: true };
        assert_eq!(
            serde_json::to_string(&c).unwrap(),
            r#"{"n":4,"ambient":"d","class":2,"size":16,"signed_sum_is_zero":true}"#
        );
    }
}

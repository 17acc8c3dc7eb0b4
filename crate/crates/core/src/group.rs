//! Signed permutations and their statistics.
//!
//! Elements of `B_n` are stored as their window `(π_1, …, π_n)`. Type A
//! elements are the all-positive windows, `D_n` holds the windows with an
//! even number of negative entries and `B_n - D_n` those with an odd number.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Window of a signed permutation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    window: Vec<i32>,
}

impl SignedPermutation {
    /// Validates a window; the diagnostic names the first violated invariant.
    pub fn new(window: Vec<i32>) -> Result<Self> {
        let n = window.len();
        if n == 0 {
            return Err(Error::InvalidWindow("window is empty".into()));
        }
        let mut seen = vec![false; n + 1];
        for (i, &v) in window.iter().enumerate() {
            if v == 0 {
                return Err(Error::InvalidWindow(format!("entry {} is zero", i + 1)));
            }
            let a = v.unsigned_abs() as usize;
            if a > n {
                return Err(Error::InvalidWindow(format!(
                    "entry {} has absolute value {a} > n = {n}",
                    i + 1
                )));
            }
            if seen[a] {
                return Err(Error::InvalidWindow(format!("absolute value {a} repeats at entry {}", i + 1)));
            }
            seen[a] = true;
        }
        Ok(Self { window })
    }

    pub fn identity(n: usize) -> Self {
        Self { window: (1..=n as i32).collect() }
    }

    pub(crate) fn from_raw(window: Vec<i32>) -> Self {
        debug_assert!(Self::new(window.clone()).is_ok());
        Self { window }
    }

    pub(crate) fn window_mut(&mut self) -> &mut [i32] {
        &mut self.window
    }

    pub fn window(&self) -> &[i32] {
        &self.window
    }

    pub fn n(&self) -> usize {
        self.window.len()
    }

    pub fn into_window(self) -> Vec<i32> {
        self.window
    }

    pub fn negs(&self) -> usize {
        self.window.iter().filter(|&&v| v < 0).count()
    }

    pub fn is_positive(&self) -> bool {
        self.window.iter().all(|&v| v > 0)
    }

    fn require_positive(&self, stat: StatKind) -> Result<()> {
        if self.is_positive() {
            Ok(())
        } else {
            Err(Error::StatNotApplicable { stat, target: format!("window {self}") })
        }
    }

    /// `|{i < j : π_i > π_j}|` in the usual order on the integers.
    fn inv_signed(&self) -> usize {
        let w = &self.window;
        let mut c = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    c += 1;
                }
            }
        }
        c
    }

    /// `|{i < j : -π_i > π_j}|`.
    fn neg_sum_pairs(&self) -> usize {
        let w = &self.window;
        let mut c = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if -w[i] > w[j] {
                    c += 1;
                }
            }
        }
        c
    }

    /// Type A descents.
    pub fn des(&self) -> Result<usize> {
        self.require_positive(StatKind::Des)?;
        Ok(self.window.windows(2).filter(|p| p[0] > p[1]).count())
    }

    /// Type A excedances over the index set `[n-1]`; position `n` never counts.
    pub fn exc(&self) -> Result<usize> {
        self.require_positive(StatKind::Exc)?;
        let n = self.n();
        Ok((0..n.saturating_sub(1)).filter(|&i| self.window[i] > i as i32 + 1).count())
    }

    /// Type A inversions.
    pub fn inv(&self) -> Result<usize> {
        self.require_positive(StatKind::Inv)?;
        Ok(self.inv_signed())
    }

    /// Descents with the virtual entry `π_0 = 0`.
    pub fn des_b(&self) -> usize {
        let w = &self.window;
        let first = usize::from(w[0] < 0);
        first + w.windows(2).filter(|p| p[0] > p[1]).count()
    }

    pub fn asc_b(&self) -> usize {
        self.n() - self.des_b()
    }

    /// Brenti excedances: `π_{|π_i|} > π_i`, or `π_i = -i`.
    pub fn exc_b(&self) -> usize {
        let w = &self.window;
        (0..w.len())
            .filter(|&i| {
                let v = w[i];
                let target = w[v.unsigned_abs() as usize - 1];
                target > v || v == -(i as i32 + 1)
            })
            .count()
    }

    pub fn inv_b(&self) -> usize {
        self.inv_signed() + self.neg_sum_pairs() + self.negs()
    }

    pub fn inv_d(&self) -> usize {
        self.inv_signed() + self.neg_sum_pairs()
    }

    /// Descents with the virtual entry `π_0 = -π_2`. Defined as 0 when `n = 1`.
    pub fn des_d(&self) -> usize {
        let w = &self.window;
        if w.len() < 2 {
            return 0;
        }
        let first = usize::from(-w[1] > w[0]);
        first + w.windows(2).filter(|p| p[0] > p[1]).count()
    }

    pub fn stat(&self, kind: StatKind) -> Result<usize> {
        Ok(match kind {
            StatKind::Des => self.des()?,
            StatKind::Exc => self.exc()?,
            StatKind::Inv => self.inv()?,
            StatKind::DesB => self.des_b(),
            StatKind::AscB => self.asc_b(),
            StatKind::ExcB => self.exc_b(),
            StatKind::InvB => self.inv_b(),
            StatKind::InvD => self.inv_d(),
            StatKind::Negs => self.negs(),
            StatKind::DesD => self.des_d(),
        })
    }

    /// Parity of the length statistic of `g`, without a membership check.
    pub(crate) fn length_parity(&self, g: GroupId) -> usize {
        match g {
            GroupId::A => self.inv_signed() & 1,
            GroupId::B => self.inv_b() & 1,
            GroupId::D | GroupId::BminusD => self.inv_d() & 1,
        }
    }

    /// `(-1)^length` for the group `g`: `inv` for A, `inv_B` for B and
    /// `inv_D` for both D and `B - D`.
    pub fn sign_of(&self, g: GroupId) -> Result<i8> {
        if !g.contains(self) {
            return Err(Error::NotAMember { window: self.to_string(), group: g });
        }
        Ok(if self.length_parity(g) == 0 { 1 } else { -1 })
    }

    /// Whether `self` lies in the `s` half of `g`.
    pub fn in_subset(&self, g: GroupId, s: SignClass) -> bool {
        g.contains(self)
            && match s {
                SignClass::All => true,
                SignClass::Plus => self.length_parity(g) == 0,
                SignClass::Minus => self.length_parity(g) == 1,
            }
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.window.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for SignedPermutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let window = s
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<i32>().map_err(|_| Error::Parse(format!("`{tok}` is not an integer")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(window)
    }
}

impl Serialize for SignedPermutation {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupId {
    #[serde(rename = "a")]
    A,
    #[serde(rename = "b")]
    B,
    #[serde(rename = "d")]
    D,
    #[serde(rename = "b-minus-d")]
    BminusD,
}

impl GroupId {
    pub const ALL: [GroupId; 4] = [GroupId::A, GroupId::B, GroupId::D, GroupId::BminusD];

    pub fn contains(self, p: &SignedPermutation) -> bool {
        match self {
            GroupId::A => p.is_positive(),
            GroupId::B => true,
            GroupId::D => p.negs().is_multiple_of(2),
            GroupId::BminusD => p.negs() % 2 == 1,
        }
    }

    /// Cardinality of the set at degree `n`.
    pub fn order(self, n: usize) -> BigInt {
        let fact = (1..=n).fold(BigInt::one(), |acc, k| acc * k);
        match self {
            GroupId::A => fact,
            GroupId::B => fact << n,
            GroupId::D | GroupId::BminusD => fact << (n - 1),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GroupId::A => "a",
            GroupId::B => "b",
            GroupId::D => "d",
            GroupId::BminusD => "b-minus-d",
        }
    }

    pub fn supports(self, stat: StatKind) -> bool {
        !matches!(stat, StatKind::Des | StatKind::Exc | StatKind::Inv) || self == GroupId::A
    }
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GroupId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GroupId::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown group `{s}`")))
    }
}

/// The two cosets of `D_n` in `B_n`, which carry the six-class partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Ambient {
    #[serde(rename = "d")]
    D,
    #[serde(rename = "b-minus-d")]
    BminusD,
}

impl Ambient {
    pub const BOTH: [Ambient; 2] = [Ambient::D, Ambient::BminusD];

    pub fn group(self) -> GroupId {
        match self {
            Ambient::D => GroupId::D,
            Ambient::BminusD => GroupId::BminusD,
        }
    }

    /// The coset containing `p`.
    pub fn of(p: &SignedPermutation) -> Self {
        if p.negs().is_multiple_of(2) {
            Ambient::D
        } else {
            Ambient::BminusD
        }
    }
}

impl TryFrom<GroupId> for Ambient {
    type Error = Error;

    fn try_from(g: GroupId) -> Result<Self> {
        match g {
            GroupId::D => Ok(Ambient::D),
            GroupId::BminusD => Ok(Ambient::BminusD),
            other => {
                Err(Error::Unsupported(format!("group `{other}` is not one of the cosets d, b-minus-d")))
            }
        }
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.group().fmt(f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignClass {
    All,
    Plus,
    Minus,
}

impl SignClass {
    pub const ALL: [SignClass; 3] = [SignClass::All, SignClass::Plus, SignClass::Minus];

    pub fn name(self) -> &'static str {
        match self {
            SignClass::All => "all",
            SignClass::Plus => "plus",
            SignClass::Minus => "minus",
        }
    }
}

impl fmt::Display for SignClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SignClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SignClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown sign class `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StatKind {
    #[serde(rename = "des")]
    Des,
    #[serde(rename = "exc")]
    Exc,
    #[serde(rename = "inv")]
    Inv,
    #[serde(rename = "des-b")]
    DesB,
    #[serde(rename = "asc-b")]
    AscB,
    #[serde(rename = "exc-b")]
    ExcB,
    #[serde(rename = "inv-b")]
    InvB,
    #[serde(rename = "inv-d")]
    InvD,
    #[serde(rename = "negs")]
    Negs,
    #[serde(rename = "des-d")]
    DesD,
}

impl StatKind {
    pub const ALL: [StatKind; 10] = [
        StatKind::Des,
        StatKind::Exc,
        StatKind::Inv,
        StatKind::DesB,
        StatKind::AscB,
        StatKind::ExcB,
        StatKind::InvB,
        StatKind::InvD,
        StatKind::Negs,
        StatKind::DesD,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StatKind::Des => "des",
            StatKind::Exc => "exc",
            StatKind::Inv => "inv",
            StatKind::DesB => "des-b",
            StatKind::AscB => "asc-b",
            StatKind::ExcB => "exc-b",
            StatKind::InvB => "inv-b",
            StatKind::InvD => "inv-d",
            StatKind::Negs => "negs",
            StatKind::DesD => "des-d",
        }
    }

    /// Upper bound on the statistic over `B_n`.
    pub fn max_value(self, n: usize) -> usize {
        match self {
            StatKind::Inv | StatKind::InvB | StatKind::InvD => n * n,
            _ => n,
        }
    }
}

impl fmt::Display for StatKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StatKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        StatKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown statistic `{s}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> SignedPermutation {
        s.parse().unwrap()
    }

    /// Every window of `B_n`, built independently of the enumeration module.
    fn all_b(n: usize) -> Vec<SignedPermutation> {
        fn perms(rest: &mut Vec<i32>, cur: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
            if rest.is_empty() {
                out.push(cur.clone());
                return;
            }
            for i in 0..rest.len() {
                let v = rest.remove(i);
                cur.push(v);
                perms(rest, cur, out);
                cur.pop();
                rest.insert(i, v);
            }
        }
        let mut ps = Vec::new();
        perms(&mut (1..=n as i32).collect(), &mut Vec::new(), &mut ps);
        let mut out = Vec::new();
        for p in ps {
            for mask in 0..1u32 << n {
                let win =
                    p.iter().enumerate().map(|(i, &v)| if mask >> i & 1 == 1 { -v } else { v }).collect();
                out.push(SignedPermutation::new(win).unwrap());
            }
        }
        out
    }

    #[test]
    fn type_a_statistics() {
        assert_eq!(w("1,2,3").des().unwrap(), 0);
        assert_eq!(w("2,1,3").des().unwrap(), 1);
        assert_eq!(w("3,2,1").des().unwrap(), 2);
        assert_eq!(w("1,2,3").exc().unwrap(), 0);
        assert_eq!(w("3,1,2").exc().unwrap(), 1);
        assert_eq!(w("2,3,1").exc().unwrap(), 2);
        assert_eq!(w("1,2,3").inv().unwrap(), 0);
        assert_eq!(w("2,1,3").inv().unwrap(), 1);
        assert_eq!(w("3,2,1").inv().unwrap(), 3);
    }

    #[test]
    fn type_a_statistics_reject_negative_entries() {
        let p = w("-2,1");
        assert!(matches!(p.des(), Err(Error::StatNotApplicable { stat: StatKind::Des, .. })));
        assert!(p.exc().is_err());
        assert!(p.inv().is_err());
        assert!(p.stat(StatKind::Des).is_err());
    }

    #[test]
    fn type_b_statistics() {
        assert_eq!(w("1,2").des_b(), 0);
        assert_eq!(w("-1").des_b(), 1);
        assert_eq!(w("-2,1").des_b(), 1);

        assert_eq!(w("1,2,3").exc_b(), 0);
        assert_eq!(w("-1").exc_b(), 1);
        assert_eq!(w("-1,-2").exc_b(), 2);

        assert_eq!(w("1,2").inv_b(), 0);
        assert_eq!(w("-2,1").inv_b(), 2);
        assert_eq!(w("-1").inv_b(), 1);

        assert_eq!(w("1,2").inv_d(), 0);
        assert_eq!(w("-2,1").inv_d(), 1);
        assert_eq!(w("-1,-2").inv_d(), 2);

        assert_eq!(w("1,2").asc_b(), 2);
        assert_eq!(w("-1").asc_b(), 0);
        assert_eq!(w("-2,1").asc_b(), 1);
    }

    #[test]
    fn type_d_descents() {
        assert_eq!(w("1,2").des_d(), 0);
        assert_eq!(w("-1,-2").des_d(), 2);
        assert_eq!(w("2,1").des_d(), 1);
        assert_eq!(w("1").des_d(), 0);
    }

    #[test]
    fn signs() {
        assert_eq!(w("1,2,3").sign_of(GroupId::A).unwrap(), 1);
        assert_eq!(w("-2,1").sign_of(GroupId::BminusD).unwrap(), -1);
        assert_eq!(w("-1,-2").sign_of(GroupId::D).unwrap(), 1);
        assert!(matches!(w("-2,1").sign_of(GroupId::D), Err(Error::NotAMember { group: GroupId::D, .. })));
        assert!(w("-1,2").sign_of(GroupId::A).is_err());
        assert!(w("1,-2").in_subset(GroupId::B, SignClass::Minus));
    }

    #[test]
    fn parse_rejects_invalid_windows() {
        assert_eq!(w(" -2, 1 ").window(), &[-2, 1]);
        let msg = |s: &str| s.parse::<SignedPermutation>().unwrap_err().to_string();
        assert!(msg("1,0").contains("entry 2 is zero"));
        assert!(msg("1,3").contains("absolute value 3 > n = 2"));
        assert!(msg("2,-2").contains("absolute value 2 repeats"));
        assert!(msg("").contains("not an integer"));
        assert!(msg("1,x").contains("`x`"));
        assert_eq!(w("-3,1,2").to_string(), "-3,1,2");
    }

    #[test]
    fn positive_windows_agree_with_type_a() {
        for n in 1..=5 {
            for p in all_b(n).into_iter().filter(|p| p.is_positive()) {
                let inv = p.inv().unwrap();
                assert_eq!(p.inv_b(), inv);
                assert_eq!(p.inv_d(), inv);
                assert_eq!(p.des_b(), p.des().unwrap());
            }
        }
    }

    #[test]
    fn length_relations_over_b_n() {
        for n in 1..=5 {
            for p in all_b(n) {
                assert_eq!(p.inv_b(), p.inv_d() + p.negs());
                assert_eq!(p.asc_b() + p.des_b(), n);
            }
        }
    }

    #[test]
    fn single_sign_flip_changes_inv_b_parity() {
        for n in 1..=5 {
            for p in all_b(n) {
                for i in 0..n {
                    let mut win = p.window().to_vec();
                    win[i] = -win[i];
                    let q = SignedPermutation::new(win).unwrap();
                    assert_eq!((p.inv_b() + q.inv_b()) % 2, 1, "{p} vs {q}");
                }
            }
        }
    }

    #[test]
    fn transposition_changes_inv_b_parity() {
        for n in 2..=4 {
            for p in all_b(n) {
                for i in 0..n {
                    for j in i + 1..n {
                        let mut win = p.window().to_vec();
                        win.swap(i, j);
                        let q = SignedPermutation::new(win).unwrap();
                        assert_eq!((p.inv_b() + q.inv_b()) % 2, 1, "{p} vs {q}");
                    }
                }
            }
        }
    }

    #[test]
    fn group_orders() {
        assert_eq!(GroupId::A.order(3), BigInt::from(6));
        assert_eq!(GroupId::B.order(2), BigInt::from(8));
        assert_eq!(GroupId::D.order(2), BigInt::from(4));
        assert_eq!(GroupId::BminusD.order(3), BigInt::from(24));
    }

    #[test]
    fn names_round_trip() {
        for g in GroupId::ALL {
            assert_eq!(g.name().parse::<GroupId>().unwrap(), g);
        }
        for k in StatKind::ALL {
            assert_eq!(k.name().parse::<StatKind>().unwrap(), k);
        }
        for s in SignClass::ALL {
            assert_eq!(s.name().parse::<SignClass>().unwrap(), s);
        }
        assert!(Ambient::try_from(GroupId::B).is_err());
        assert_eq!(Ambient::try_from(GroupId::BminusD).unwrap(), Ambient::BminusD);
    }
}

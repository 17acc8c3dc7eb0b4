//! Exact verification of Carlitz identities and the other polynomial relations
//! between the Eulerian families, reported as machine-readable [`Verdict`]s.
//!
//! A failing identity is a verdict with `pass = false`, never an error; errors
//! are reserved for invalid requests (degree out of range, caps exceeded).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::closed_forms::{
    eulerian_a, eulerian_b, eulerian_d, restricted, sgn_bdes_bivariate, unrestricted, Family,
};
use crate::clt::factorial_moment;
use crate::enumeration::Enumerator;
use crate::error::{Error, Result};
use crate::group::{GroupId, SignClass, StatKind};
use crate::poly::{bernoulli_poly, one_minus_t_pow, series_quotient, BiPoly, RatSeq, UniPoly};

/// Outcome of one exact check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub identity: String,
    pub n: usize,
    #[serde(rename = "K")]
    pub order: usize,
    pub pass: bool,
    pub first_fail_k: Option<usize>,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
}

impl Verdict {
    fn passed(identity: String, n: usize, order: usize) -> Self {
        Self { identity, n, order, pass: true, first_fail_k: None, lhs: None, rhs: None }
    }

    fn failed(identity: String, n: usize, order: usize, k: usize, lhs: String, rhs: String) -> Self {
        Self { identity, n, order, pass: false, first_fail_k: Some(k), lhs: Some(lhs), rhs: Some(rhs) }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("Verdict serializes")
    }
}

/// Compares two sequences entry by entry up to index `order`.
fn compare_seq<T: PartialEq + fmt::Display>(
    identity: String,
    n: usize,
    order: usize,
    lhs: impl Fn(usize) -> T,
    rhs: impl Fn(usize) -> T,
) -> Verdict {
    for k in 0..=order {
        let (l, r) = (lhs(k), rhs(k));
        if l != r {
            return Verdict::failed(identity, n, order, k, l.to_string(), r.to_string());
        }
    }
    Verdict::passed(identity, n, order)
}

/// Coefficientwise polynomial comparison; `K` is the larger degree.
fn compare_poly(identity: String, n: usize, lhs: &UniPoly, rhs: &UniPoly) -> Verdict {
    let order = lhs.degree().max(rhs.degree()).unwrap_or(0);
    compare_seq(identity, n, order, |k| lhs.coeff(k), |k| rhs.coeff(k))
}

/// Bivariate comparison; a failure reports the first differing `t` exponent
/// and the two whole polynomials.
fn compare_bipoly(identity: String, n: usize, lhs: &BiPoly, rhs: &BiPoly) -> Verdict {
    if lhs == rhs {
        return Verdict::passed(identity, n, n);
    }
    let diff = lhs - rhs;
    let k = diff.terms().map(|(&(_, b), _)| b).min().unwrap_or(0);
    Verdict::failed(identity, n, n, k, lhs.to_string(), rhs.to_string())
}

/// How to read the Bernoulli term of the type D Carlitz identity.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BernoulliReading {
    /// `𝓑_n(k+1) - 𝓑_n(1)`, which equals `n * sum_{j<=k} j^{n-1}`.
    #[default]
    PowerSum,
    /// `𝓑_n(k+1) - 𝓑_n(k)`, which equals `n * k^{n-1}`.
    Literal,
}

/// Carlitz-type identities `P(t) / (1-t)^{n+1} = sum_k c_k t^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CarlitzFamily {
    /// `A_n`, `c_k = (k+1)^n`.
    #[serde(rename = "a")]
    A,
    /// Descent halves of `S_n`.
    #[serde(rename = "a-des-pm")]
    ADesPm,
    /// Excedance halves of `S_n`.
    #[serde(rename = "a-exc-pm")]
    AExcPm,
    /// `B_n`, `c_k = (2k+1)^n`.
    #[serde(rename = "b")]
    B,
    /// Halves of `B_n`.
    #[serde(rename = "b-pm")]
    BPm,
    /// `D_n`, with the Bernoulli correction term.
    #[serde(rename = "d")]
    D,
    /// Halves of `D_n`.
    #[serde(rename = "d-pm")]
    DPm,
    /// `des_B` halves over `D_n`.
    #[serde(rename = "bdes-d-pm")]
    BDesDPm,
    /// `des_B` halves over `B_n - D_n`.
    #[serde(rename = "bdes-bd-pm")]
    BDesBDPm,
}

impl CarlitzFamily {
    pub const ALL: [CarlitzFamily; 9] = [
        CarlitzFamily::A,
        CarlitzFamily::ADesPm,
        CarlitzFamily::AExcPm,
        CarlitzFamily::B,
        CarlitzFamily::BPm,
        CarlitzFamily::D,
        CarlitzFamily::DPm,
        CarlitzFamily::BDesDPm,
        CarlitzFamily::BDesBDPm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CarlitzFamily::A => "a",
            CarlitzFamily::ADesPm => "a-des-pm",
            CarlitzFamily::AExcPm => "a-exc-pm",
            CarlitzFamily::B => "b",
            CarlitzFamily::BPm => "b-pm",
            CarlitzFamily::D => "d",
            CarlitzFamily::DPm => "d-pm",
            CarlitzFamily::BDesDPm => "bdes-d-pm",
            CarlitzFamily::BDesBDPm => "bdes-bd-pm",
        }
    }

    pub fn is_refined(self) -> bool {
        !matches!(self, CarlitzFamily::A | CarlitzFamily::B | CarlitzFamily::D)
    }

    /// Sign classes the family is stated for.
    pub fn signs(self) -> &'static [SignClass] {
        if self.is_refined() {
            &[SignClass::Plus, SignClass::Minus]
        } else {
            &[SignClass::All]
        }
    }

    /// Smallest valid `n`.
    pub fn min_n(self) -> usize {
        match self {
            CarlitzFamily::D | CarlitzFamily::DPm => 2,
            _ => 1,
        }
    }

    /// The identity obtained by adding the Plus and Minus cases.
    pub fn unrefined(self) -> Option<(CarlitzFamily, SignClass)> {
        match self {
            CarlitzFamily::ADesPm | CarlitzFamily::AExcPm => Some((CarlitzFamily::A, SignClass::All)),
            CarlitzFamily::BPm => Some((CarlitzFamily::B, SignClass::All)),
            CarlitzFamily::DPm => Some((CarlitzFamily::D, SignClass::All)),
            CarlitzFamily::BDesDPm => Some((CarlitzFamily::BPm, SignClass::Plus)),
            CarlitzFamily::BDesBDPm => Some((CarlitzFamily::BPm, SignClass::Minus)),
            _ => None,
        }
    }

    fn check(self, n: usize, sign: SignClass) -> Result<()> {
        if n < self.min_n() {
            return Err(Error::DegreeOutOfRange {
                n,
                what: format!("carlitz family {self} (n >= {})", self.min_n()),
            });
        }
        if !self.signs().contains(&sign) {
            return Err(Error::Unsupported(format!("carlitz family {self} has no {sign} case")));
        }
        Ok(())
    }

    /// Left-hand polynomial, built from closed forms.
    pub fn lhs_poly(self, n: usize, sign: SignClass) -> Result<UniPoly> {
        self.check(n, sign)?;
        match self {
            CarlitzFamily::A => eulerian_a(n),
            CarlitzFamily::B => eulerian_b(n),
            CarlitzFamily::D => eulerian_d(n),
            CarlitzFamily::ADesPm => restricted(Family::ADes, n, sign),
            CarlitzFamily::AExcPm => restricted(Family::AExc, n, sign),
            CarlitzFamily::BPm => restricted(Family::BDes, n, sign),
            CarlitzFamily::DPm => restricted(Family::DDes, n, sign),
            CarlitzFamily::BDesDPm => restricted(Family::BDesOverD, n, sign),
            CarlitzFamily::BDesBDPm => restricted(Family::BDesOverBminusD, n, sign),
        }
    }

    /// Identifier used in verdicts, e.g. `carlitz/b-pm/plus`.
    pub fn identity_name(self, sign: SignClass) -> String {
        if self.is_refined() {
            format!("carlitz/{self}/{sign}")
        } else {
            format!("carlitz/{self}")
        }
    }
}

impl fmt::Display for CarlitzFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CarlitzFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CarlitzFamily::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown carlitz family `{s}`")))
    }
}

/// Right-hand side coefficients `c_0..=c_K`, sharing one Bernoulli polynomial.
struct Rhs {
    fam: CarlitzFamily,
    sign: SignClass,
    n: usize,
    reading: BernoulliReading,
    bernoulli: Option<RatSeq>,
}

fn int(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

impl Rhs {
    fn new(fam: CarlitzFamily, sign: SignClass, n: usize, reading: BernoulliReading) -> Result<Self> {
        fam.check(n, sign)?;
        let needs_bernoulli = matches!(fam, CarlitzFamily::D | CarlitzFamily::DPm);
        Ok(Self { fam, sign, n, reading, bernoulli: needs_bernoulli.then(|| bernoulli_poly(n)) })
    }

    /// `+1` for Plus, `-1` for Minus, `0` for All.
    fn pm(&self) -> BigRational {
        int(match self.sign {
            SignClass::Plus => 1,
            SignClass::Minus => -1,
            SignClass::All => 0,
        })
    }

    fn type_d(&self, k: u64) -> BigRational {
        let bp = self.bernoulli.as_ref().expect("type D families carry a Bernoulli polynomial");
        let hi = bp.eval_poly(&int(k + 1));
        let lo = match self.reading {
            BernoulliReading::PowerSum => bp.eval_poly(&BigRational::one()),
            BernoulliReading::Literal => bp.eval_poly(&int(k)),
        };
        int(BigInt::from(2 * k + 1).pow(self.n as u32)) - int(BigInt::one() << (self.n - 1)) * (hi - lo)
    }

    fn at(&self, k: u64) -> BigRational {
        let n = self.n as u32;
        let even = self.n.is_multiple_of(2);
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let odd_pow = int(BigInt::from(2 * k + 1).pow(n));
        let pm = self.pm();
        match self.fam {
            CarlitzFamily::A => int(BigInt::from(k + 1).pow(n)),
            CarlitzFamily::ADesPm => {
                half * (int(BigInt::from(k + 1).pow(n)) + pm * int(BigInt::from(k + 1).pow(n.div_ceil(2))))
            }
            CarlitzFamily::AExcPm => half * (int(BigInt::from(k + 1).pow(n)) + pm * int(k + 1)),
            CarlitzFamily::B => odd_pow,
            CarlitzFamily::BPm => half * (odd_pow + pm),
            CarlitzFamily::D => self.type_d(k),
            CarlitzFamily::DPm if even => half * (self.type_d(k) + pm),
            CarlitzFamily::DPm => half * (self.type_d(k) + pm * int(2 * k + 1)),
            CarlitzFamily::BDesDPm if even => &half * (&half * (odd_pow + int(1)) + pm),
            CarlitzFamily::BDesDPm => &half * (&half * (odd_pow + int(1)) + pm * int(k + 1)),
            CarlitzFamily::BDesBDPm if even => &half * &half * (odd_pow - int(1)),
            CarlitzFamily::BDesBDPm => &half * (&half * (odd_pow - int(1)) + pm * int(k)),
        }
    }
}

/// Right-hand coefficient `c_k` as an exact rational, without the integrality check.
pub fn rhs_coefficient_raw(
    fam: CarlitzFamily,
    sign: SignClass,
    n: usize,
    k: u64,
    reading: BernoulliReading,
) -> Result<BigRational> {
    Ok(Rhs::new(fam, sign, n, reading)?.at(k))
}

/// Right-hand coefficient `c_k`; fails unless it is an integer.
pub fn rhs_coefficient(fam: CarlitzFamily, sign: SignClass, n: usize, k: u64) -> Result<BigRational> {
    let c = rhs_coefficient_raw(fam, sign, n, k, BernoulliReading::PowerSum)?;
    if !c.is_integer() {
        return Err(Error::Inconsistency(format!(
            "{} at n = {n}, k = {k} is not an integer: {c}",
            fam.identity_name(sign)
        )));
    }
    Ok(c)
}

/// Default truncation order `max(n + 2, 50)`.
pub fn default_order(n: usize) -> usize {
    (n + 2).max(50)
}

/// Compares the series of `lhs / (1-t)^{n+1}` with the right-hand side up to `order`.
pub fn verify_carlitz_with(
    fam: CarlitzFamily,
    sign: SignClass,
    n: usize,
    order: usize,
    reading: BernoulliReading,
) -> Result<Verdict> {
    let rhs = Rhs::new(fam, sign, n, reading)?;
    let lhs = series_quotient(&fam.lhs_poly(n, sign)?, n + 1, order);
    let mut name = fam.identity_name(sign);
    if reading == BernoulliReading::Literal {
        name.push_str("/literal");
    }
    Ok(compare_seq(name, n, order, |k| lhs.get(k).expect("order + 1 entries").clone(), |k| rhs.at(k as u64)))
}

pub fn verify_carlitz(fam: CarlitzFamily, sign: SignClass, n: usize, order: usize) -> Result<Verdict> {
    verify_carlitz_with(fam, sign, n, order, BernoulliReading::PowerSum)
}

/// Every sign case of `fam` for every `n` in `n_range`, in parallel, ordered
/// by `n` then sign. Values of `n` below the family's onset are skipped.
pub fn carlitz_campaign(
    fam: CarlitzFamily,
    n_range: std::ops::RangeInclusive<usize>,
    order: Option<usize>,
) -> Result<Vec<Verdict>> {
    let start = (*n_range.start()).max(fam.min_n());
    let jobs: Vec<(usize, SignClass)> =
        (start..=*n_range.end()).flat_map(|n| fam.signs().iter().map(move |&s| (n, s))).collect();
    jobs.into_par_iter()
        .map(|(n, s)| verify_carlitz(fam, s, n, order.unwrap_or_else(|| default_order(n))))
        .collect()
}

/// Plus RHS + Minus RHS against the unrefined RHS, for `k <= order`.
pub fn verify_refinement_sum(fam: CarlitzFamily, n: usize, order: usize) -> Result<Verdict> {
    let (base, base_sign) = fam
        .unrefined()
        .ok_or_else(|| Error::Unsupported(format!("carlitz family {fam} is not a refinement")))?;
    let plus = Rhs::new(fam, SignClass::Plus, n, BernoulliReading::PowerSum)?;
    let minus = Rhs::new(fam, SignClass::Minus, n, BernoulliReading::PowerSum)?;
    let whole = Rhs::new(base, base_sign, n, BernoulliReading::PowerSum)?;
    Ok(compare_seq(
        format!("carlitz-sum/{fam}"),
        n,
        order,
        |k| plus.at(k as u64) + minus.at(k as u64),
        |k| whole.at(k as u64),
    ))
}

/// Checks that the first `l - 1` factorial moments of the normalized
/// distributions `F` and `G` agree. `K` in the verdict is `l - 1` and a
/// failure reports the first disagreeing order `r`.
pub fn verify_moment_lemma(
    identity: String,
    n: usize,
    f: &UniPoly,
    g: &UniPoly,
    l: usize,
) -> Result<Verdict> {
    let order = l.saturating_sub(1);
    let mut moments = Vec::with_capacity(order);
    for r in 1..=order {
        moments.push((factorial_moment(f, r)?, factorial_moment(g, r)?));
    }
    if order == 0 {
        factorial_moment(f, 0)?;
        factorial_moment(g, 0)?;
        return Ok(Verdict::passed(identity, n, 0));
    }
    Ok(compare_seq(
        identity,
        n,
        order,
        |r| if r == 0 { BigRational::one() } else { moments[r - 1].0.clone() },
        |r| if r == 0 { BigRational::one() } else { moments[r - 1].1.clone() },
    ))
}

/// Multiplicity of `t = 1` as a root of `F - λ G`; `None` if `F = λ G`.
pub fn moment_lemma_order(f: &UniPoly, g: &UniPoly, lambda: &BigRational) -> Option<usize> {
    let scaled_f = f.scale(lambda.denom());
    let scaled_g = g.scale(lambda.numer());
    (&scaled_f - &scaled_g).root_multiplicity_at_one()
}

/// One `F = λ G ± (1-t)^l H` decomposition coming from a half-sum formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentInstance {
    pub name: String,
    pub n: usize,
    pub f: UniPoly,
    pub g: UniPoly,
    pub lambda: BigRational,
    pub l: usize,
}

impl MomentInstance {
    /// Moments agree and the decomposition really has order at least `l`.
    pub fn verify(&self) -> Result<Verdict> {
        let mut v = verify_moment_lemma(self.name.clone(), self.n, &self.f, &self.g, self.l)?;
        let order = moment_lemma_order(&self.f, &self.g, &self.lambda);
        if v.pass && order.is_some_and(|m| m < self.l) {
            v.pass = false;
            v.first_fail_k = order;
            v.lhs = Some(format!("root order {}", order.unwrap_or(0)));
            v.rhs = Some(format!("root order >= {}", self.l));
        }
        Ok(v)
    }
}

/// Half-sum instances at degree `n` for every family whose halves are
/// nonempty (`n >= 2`).
pub fn moment_lemma_instances(n: usize) -> Result<Vec<MomentInstance>> {
    if n < 2 {
        return Err(Error::DegreeOutOfRange { n, what: "moment-lemma instances (n >= 2)".into() });
    }
    let even = n.is_multiple_of(2);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let parity_l = if even { n } else { n - 1 };
    let cases: [(Family, usize); 7] = [
        (Family::AExc, n - 1),
        (Family::ADes, n / 2),
        (Family::BDes, n),
        (Family::DDes, parity_l),
        (Family::DExc, parity_l),
        (Family::BDesOverD, parity_l),
        // F = G / 2 exactly for even n, so any order works; n + 1 covers every moment.
        (Family::BDesOverBminusD, if even { n + 1 } else { n - 1 }),
    ];
    let mut out = Vec::new();
    for (family, l) in cases {
        let g = unrestricted(family, n)?;
        for sign in [SignClass::Plus, SignClass::Minus] {
            out.push(MomentInstance {
                name: format!("moment-lemma/{family}/{sign}"),
                n,
                f: restricted(family, n, sign)?,
                g: g.clone(),
                lambda: half.clone(),
                l,
            });
        }
    }
    Ok(out)
}

/// `B_n = D_n + n 2^{n-1} t A_{n-1}` with all three tables from brute force.
pub fn verify_brenti_relation(en: &Enumerator, n: usize) -> Result<Verdict> {
    if n < 2 {
        return Err(Error::DegreeOutOfRange { n, what: "brenti-relation (n >= 2)".into() });
    }
    let b = en.brute_distribution(n, GroupId::B, SignClass::All, StatKind::DesB)?.coeffs;
    let d = en.brute_distribution(n, GroupId::D, SignClass::All, StatKind::DesD)?.coeffs;
    let a = en.brute_distribution(n - 1, GroupId::A, SignClass::All, StatKind::Des)?.coeffs;
    let rhs = &d + &a.shift(1).scale(&(BigInt::from(n) << (n - 1)));
    Ok(compare_poly("brenti-relation".into(), n, &b, &rhs))
}

/// Refined relation `B_n^± = D_n^± + ½ n 2^{n-1} t A_{n-1} ∓ [n odd] t (1-t)^{n-1}`,
/// with the halves of `B_n`, `D_n` and `A_{n-1}` from brute force.
pub fn verify_stembridge_refined(en: &Enumerator, n: usize, sign: SignClass) -> Result<Verdict> {
    if n < 2 {
        return Err(Error::DegreeOutOfRange { n, what: "stembridge-pm (n >= 2)".into() });
    }
    let pm: i64 = match sign {
        SignClass::Plus => 1,
        SignClass::Minus => -1,
        SignClass::All => {
            return Err(Error::Unsupported("stembridge-pm needs sign plus or minus".into()));
        }
    };
    let b = en.brute_distribution(n, GroupId::B, sign, StatKind::DesB)?.coeffs;
    let d = en.brute_distribution(n, GroupId::D, sign, StatKind::DesD)?.coeffs;
    let a = en.brute_distribution(n - 1, GroupId::A, SignClass::All, StatKind::Des)?.coeffs;
    let mut rhs = &d + &a.shift(1).scale(&(BigInt::from(n) << (n - 2)));
    if n % 2 == 1 {
        rhs = &rhs - &one_minus_t_pow(n - 1).shift(1).scale(&BigInt::from(pm));
    }
    Ok(compare_poly(format!("stembridge-pm/{sign}"), n, &b, &rhs))
}

/// `des_B` and `exc_B` tables agree on both halves of `D_n` and of `B_n - D_n`.
pub fn verify_equidistribution(en: &Enumerator, n: usize) -> Result<Vec<Verdict>> {
    let mut out = Vec::new();
    for g in [GroupId::D, GroupId::BminusD] {
        let tab = en.tabulate(n, g, &[StatKind::DesB, StatKind::ExcB])?;
        for sign in [SignClass::Plus, SignClass::Minus] {
            let des = tab.distribution(StatKind::DesB, sign)?.coeffs;
            let exc = tab.distribution(StatKind::ExcB, sign)?.coeffs;
            out.push(compare_poly(format!("equidistribution/{g}/{sign}"), n, &des, &exc));
        }
    }
    Ok(out)
}

/// `sum_{B_n} (-1)^{inv_B} s^{asc_B} t^{des_B} = (s - t)^n` by brute force.
pub fn verify_reiner_bivariate(en: &Enumerator, n: usize) -> Result<Verdict> {
    let lhs = en.brute_bivariate_b(n)?;
    Ok(compare_bipoly("reiner-bivariate".into(), n, &lhs, &BiPoly::s_minus_t().pow(n as u32)))
}

/// Named identities runnable over a range of `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Identity {
    Mantaci,
    ReinerB,
    SignedBExc,
    ReinerD,
    SignedDExc,
    ReinerBivariate,
    SgnBDes,
    BrentiRelation,
    StembridgePm,
    Equidistribution,
    MomentLemma,
}

impl Identity {
    pub const ALL: [Identity; 11] = [
        Identity::Mantaci,
        Identity::ReinerB,
        Identity::SignedBExc,
        Identity::ReinerD,
        Identity::SignedDExc,
        Identity::ReinerBivariate,
        Identity::SgnBDes,
        Identity::BrentiRelation,
        Identity::StembridgePm,
        Identity::Equidistribution,
        Identity::MomentLemma,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Mantaci => "mantaci",
            Identity::ReinerB => "reiner-b",
            Identity::SignedBExc => "siva-b-exc",
            Identity::ReinerD => "reiner-d",
            Identity::SignedDExc => "siva-d-exc",
            Identity::ReinerBivariate => "reiner-bivariate",
            Identity::SgnBDes => "sgnbdes",
            Identity::BrentiRelation => "brenti-relation",
            Identity::StembridgePm => "stembridge-pm",
            Identity::Equidistribution => "equidistribution",
            Identity::MomentLemma => "moment-lemma",
        }
    }

    /// Smallest `n` the identity is stated for.
    pub fn min_n(self) -> usize {
        match self {
            Identity::ReinerD | Identity::BrentiRelation | Identity::StembridgePm | Identity::MomentLemma => {
                2
            }
            _ => 1,
        }
    }

    /// Verdicts at one `n`.
    pub fn run(self, en: &Enumerator, n: usize) -> Result<Vec<Verdict>> {
        if n < self.min_n() {
            return Err(Error::DegreeOutOfRange {
                n,
                what: format!("{} (n >= {})", self.name(), self.min_n()),
            });
        }
        let signed = |g: GroupId, stat: StatKind, expected: UniPoly| -> Result<Vec<Verdict>> {
            let lhs = en.brute_signed_gf(n, g, stat)?;
            Ok(vec![compare_poly(self.name().into(), n, &lhs, &expected)])
        };
        match self {
            Identity::Mantaci => signed(GroupId::A, StatKind::Exc, one_minus_t_pow(n - 1)),
            Identity::ReinerB => signed(GroupId::B, StatKind::DesB, one_minus_t_pow(n)),
            Identity::SignedBExc => signed(GroupId::B, StatKind::ExcB, one_minus_t_pow(n)),
            Identity::ReinerD => {
                let expected = if n.is_multiple_of(2) {
                    one_minus_t_pow(n)
                } else {
                    &UniPoly::from_i64s(&[1, 1]) * &one_minus_t_pow(n - 1)
                };
                signed(GroupId::D, StatKind::DesD, expected)
            }
            Identity::SignedDExc => {
                let expected = one_minus_t_pow(if n.is_multiple_of(2) { n } else { n - 1 });
                signed(GroupId::D, StatKind::ExcB, expected)
            }
            Identity::ReinerBivariate => Ok(vec![verify_reiner_bivariate(en, n)?]),
            Identity::SgnBDes => [GroupId::D, GroupId::BminusD]
                .into_iter()
                .map(|g| {
                    let lhs = en.brute_bivariate_sgn(n, g)?;
                    Ok(compare_bipoly(format!("sgnbdes/{g}"), n, &lhs, &sgn_bdes_bivariate(n, g)?))
                })
                .collect(),
            Identity::BrentiRelation => Ok(vec![verify_brenti_relation(en, n)?]),
            Identity::StembridgePm => [SignClass::Plus, SignClass::Minus]
                .into_iter()
                .map(|s| verify_stembridge_refined(en, n, s))
                .collect(),
            Identity::Equidistribution => verify_equidistribution(en, n),
            Identity::MomentLemma => moment_lemma_instances(n)?.iter().map(MomentInstance::verify).collect(),
        }
    }

    /// Verdicts for every `n` in `n_range` from the onset on, ordered by `n`.
    pub fn campaign(self, en: &Enumerator, n_range: std::ops::RangeInclusive<usize>) -> Result<Vec<Verdict>> {
        let start = (*n_range.start()).max(self.min_n());
        let per_n: Vec<Vec<Verdict>> =
            (start..=*n_range.end()).map(|n| self.run(en, n)).collect::<Result<_>>()?;
        Ok(per_n.into_iter().flatten().collect())
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown identity `{s}`")))
    }
}

//! Exact moments of distribution polynomials and their Kolmogorov distance to
//! the normal law.
//!
//! Moments are exact rationals built from factorial moments `p^{(r)}(1)/p(1)`.
//! The only floating-point step is the comparison with `Φ`, which receives
//! the exact mean and standard deviation converted to `f64` at the end.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::closed_forms::{closed_table, Family};
use crate::enumeration::DistTable;
use crate::error::{Error, Result};
use crate::fmt_ratio;
use crate::group::SignClass;
use crate::poly::UniPoly;

fn total_mass(p: &UniPoly) -> Result<BigInt> {
    if !p.has_nonnegative_coeffs() {
        return Err(Error::NegativeMass);
    }
    let mass = p.eval_at_one();
    if mass.is_zero() {
        return Err(Error::ZeroMass);
    }
    Ok(mass)
}

/// `p^{(r)}(1) / p(1)`.
pub fn factorial_moment(p: &UniPoly, r: usize) -> Result<BigRational> {
    let mass = total_mass(p)?;
    let d = (0..r).fold(p.clone(), |q, _| q.derivative());
    Ok(BigRational::new(d.eval_at_one(), mass))
}

/// Exact mean and variance of the distribution encoded by `p`.
pub fn mean_variance(p: &UniPoly) -> Result<(BigRational, BigRational)> {
    let m1 = factorial_moment(p, 1)?;
    let m2 = factorial_moment(p, 2)?;
    let var = &m2 + &m1 - &m1 * &m1;
    Ok((m1, var))
}

/// Standard normal CDF.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / std::f64::consts::SQRT_2)
}

/// `sup_x |F(xσ + μ) - Φ(x)|` for the normalized step CDF `F` of `p`,
/// evaluated at both one-sided limits of every jump.
pub fn ks_distance(p: &UniPoly, mu: f64, sigma: f64) -> Result<f64> {
    let mass = total_mass(p)?;
    if sigma.is_nan() || sigma <= 0.0 {
        return Err(Error::Degenerate);
    }
    let mut below = BigInt::zero();
    let mut prev = 0.0_f64;
    let mut worst = 0.0_f64;
    for (k, c) in p.coeffs().iter().enumerate() {
        below += c;
        let cur = BigRational::new(below.clone(), mass.clone()).to_f64().expect("finite ratio");
        let phi = normal_cdf((k as f64 - mu) / sigma);
        worst = worst.max((cur - phi).abs()).max((prev - phi).abs());
        prev = cur;
    }
    Ok(worst)
}

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Mean and variance formulas with the smallest `n` from which they hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MomentLaw {
    pub mean: LinearLaw,
    pub mean_onset: usize,
    pub variance: LinearLaw,
    pub variance_onset: usize,
}

/// `(n + offset) / den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LinearLaw {
    pub offset: i64,
    pub den: i64,
}

impl LinearLaw {
    pub fn at(&self, n: usize) -> BigRational {
        ratio(n as i64 + self.offset, self.den)
    }
}

const HALF_N_MINUS_ONE: LinearLaw = LinearLaw { offset: -1, den: 2 };
const HALF_N: LinearLaw = LinearLaw { offset: 0, den: 2 };
const N_PLUS_ONE_12: LinearLaw = LinearLaw { offset: 1, den: 12 };
const N_PLUS_TWO_12: LinearLaw = LinearLaw { offset: 2, den: 12 };

/// Known mean/variance law for a family and sign class.
pub fn moment_law(family: Family, sign: SignClass) -> MomentLaw {
    let all = sign == SignClass::All;
    let law =
        |mean, mean_onset, variance, variance_onset| MomentLaw { mean, mean_onset, variance, variance_onset };
    match family {
        Family::ADes | Family::AExc if all => law(HALF_N_MINUS_ONE, 1, N_PLUS_ONE_12, 2),
        Family::ADes => law(HALF_N_MINUS_ONE, 4, N_PLUS_ONE_12, 6),
        Family::AExc => law(HALF_N_MINUS_ONE, 3, N_PLUS_ONE_12, 4),
        Family::BDes | Family::BExc if all => law(HALF_N, 1, N_PLUS_ONE_12, 2),
        Family::BDes | Family::BExc => law(HALF_N, 2, N_PLUS_ONE_12, 3),
        Family::DDes if all => law(HALF_N, 2, N_PLUS_TWO_12, 3),
        Family::DDes => law(HALF_N, 3, N_PLUS_TWO_12, 4),
        Family::DExc | Family::BDesOverD | Family::BDesOverBminusD if all => law(HALF_N, 2, N_PLUS_ONE_12, 3),
        Family::DExc | Family::BDesOverD | Family::BDesOverBminusD => law(HALF_N, 3, N_PLUS_ONE_12, 4),
    }
}

/// One row of a CLT sweep.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DistReport {
    pub n: usize,
    pub family: Family,
    pub table: DistTable,
    #[serde(serialize_with = "ser_ratio")]
    pub mean: BigRational,
    #[serde(serialize_with = "ser_ratio")]
    pub variance: BigRational,
    /// `None` when the distribution is a point mass.
    pub ks_distance: Option<f64>,
    /// Whether the mean matches its law; `None` below the onset.
    pub mean_ok: Option<bool>,
    /// Whether the variance matches its law; `None` below the onset.
    pub variance_ok: Option<bool>,
}

fn ser_ratio<S: serde::Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_ratio(r))
}

impl DistReport {
    pub fn build(family: Family, sign: SignClass, n: usize) -> Result<Self> {
        let table = closed_table(family, n, sign)?;
        let (mean, variance) = mean_variance(table.poly())?;
        let sigma = variance.to_f64().expect("finite").sqrt();
        let ks_distance = match ks_distance(table.poly(), mean.to_f64().expect("finite"), sigma) {
            Ok(d) => Some(d),
            Err(Error::Degenerate) => None,
            Err(e) => return Err(e),
        };
        let law = moment_law(family, sign);
        let mean_ok = (n >= law.mean_onset).then(|| mean == law.mean.at(n));
        let variance_ok = (n >= law.variance_onset).then(|| variance == law.variance.at(n));
        Ok(Self { n, family, table, mean, variance, ks_distance, mean_ok, variance_ok })
    }

    pub fn checks_pass(&self) -> bool {
        self.mean_ok != Some(false) && self.variance_ok != Some(false)
    }
}

/// Reports for every `n` in `n_range`, computed in parallel and returned in
/// increasing `n`.
pub fn clt_report(
    family: Family,
    sign: SignClass,
    n_range: std::ops::RangeInclusive<usize>,
) -> Result<Vec<DistReport>> {
    n_range.into_par_iter().map(|n| DistReport::build(family, sign, n)).collect()
}

/// CSV with header `n,mean,variance,ks`; an empty `ks` marks a point mass.
pub fn reports_to_csv(reports: &[DistReport]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["n", "mean", "variance", "ks"]).expect("in-memory write");
    for r in reports {
        w.write_record([
            r.n.to_string(),
            fmt_ratio(&r.mean),
            fmt_ratio(&r.variance),
            r.ks_distance.map(|d| format!("{d:.12}")).unwrap_or_default(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("CSV is UTF-8")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_forms::{eulerian_a, eulerian_b, restricted};

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_i64s(c)
    }

    #[test]
    fn factorial_moment_examples() {
        assert_eq!(factorial_moment(&p(&[1, 4, 1]), 1).unwrap(), ratio(1, 1));
        assert_eq!(factorial_moment(&p(&[3, 1, 7]), 0).unwrap(), ratio(1, 1));
        assert_eq!(factorial_moment(&p(&[1, 1]), 1).unwrap(), ratio(1, 2));
        assert_eq!(factorial_moment(&UniPoly::zero(), 1), Err(Error::ZeroMass));
        assert_eq!(factorial_moment(&p(&[1, -1]), 1), Err(Error::NegativeMass));
    }

    #[test]
    fn mean_variance_examples() {
        assert_eq!(mean_variance(&p(&[1, 11, 11, 1])).unwrap(), (ratio(3, 2), ratio(5, 12)));
        assert_eq!(mean_variance(&p(&[1, 6, 1])).unwrap(), (ratio(1, 1), ratio(1, 4)));
        assert_eq!(mean_variance(&p(&[1])).unwrap(), (ratio(0, 1), ratio(0, 1)));
    }

    #[test]
    fn mean_variance_matches_direct_sums() {
        let q = p(&[2, 0, 5, 3, 1]);
        let mass = BigRational::from_integer(q.eval_at_one());
        let m: BigRational =
            q.coeffs().iter().enumerate().map(|(k, c)| BigRational::from_integer(c * k)).sum::<BigRational>()
                / &mass;
        let v: BigRational = q
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let d = BigRational::from_integer(BigInt::from(k)) - &m;
                BigRational::from_integer(c.clone()) * &d * &d
            })
            .sum::<BigRational>()
            / &mass;
        assert_eq!(mean_variance(&q).unwrap(), (m, v));
    }

    #[test]
    fn normal_cdf_basics() {
        assert_eq!(normal_cdf(0.0), 0.5);
        assert!((normal_cdf(40.0) - 1.0).abs() < 1e-15);
        assert!((normal_cdf(1.7) + normal_cdf(-1.7) - 1.0).abs() < 1e-12);
        let mut last = 0.0;
        for i in -800..=800 {
            let v = normal_cdf(i as f64 / 100.0);
            assert!(v >= last);
            last = v;
        }
    }

    #[test]
    fn ks_examples() {
        assert_eq!(ks_distance(&p(&[1]), 0.0, 0.0), Err(Error::Degenerate));
        let d = ks_distance(&p(&[1, 1]), 0.5, 0.5).unwrap();
        assert!((d - (0.5 - normal_cdf(-1.0))).abs() < 1e-15);
        assert!((d - 0.3413).abs() < 1e-4);
    }

    #[test]
    fn ks_reversal_invariance() {
        for n in 2..=20 {
            let q = eulerian_b(n).unwrap();
            let mut rev = q.coeffs().to_vec();
            rev.reverse();
            let r = UniPoly::new(rev);
            let (m, v) = mean_variance(&q).unwrap();
            let sigma = v.to_f64().unwrap().sqrt();
            let mu = m.to_f64().unwrap();
            let a = ks_distance(&q, mu, sigma).unwrap();
            let b = ks_distance(&r, n as f64 - mu, sigma).unwrap();
            assert!((a - b).abs() < 1e-12, "n={n}");
        }
        // Non-palindromic table: mirror it explicitly.
        let q = restricted(Family::AExc, 7, SignClass::Minus).unwrap();
        let deg = q.degree().unwrap();
        let mut rev = q.coeffs().to_vec();
        rev.reverse();
        let (m, v) = mean_variance(&q).unwrap();
        let sigma = v.to_f64().unwrap().sqrt();
        let a = ks_distance(&q, m.to_f64().unwrap(), sigma).unwrap();
        let b = ks_distance(&UniPoly::new(rev), deg as f64 - m.to_f64().unwrap(), sigma).unwrap();
        assert!((a - b).abs() < 1e-12);
    }

    /// Fixed-point arithmetic with `DIGITS` decimal digits, used as an
    /// independent high-precision route to `Φ` and the KS distance.
    mod fixed {
        use num_bigint::BigInt;
        use num_rational::BigRational;
        use num_traits::{One, Signed, Zero};

        pub const DIGITS: u32 = 60;

        pub fn scale() -> BigInt {
            BigInt::from(10).pow(DIGITS)
        }

        pub fn from_ratio(r: &BigRational) -> BigInt {
            r.numer() * scale() / r.denom()
        }

        pub fn mul(a: &BigInt, b: &BigInt) -> BigInt {
            a * b / scale()
        }

        pub fn div(a: &BigInt, b: &BigInt) -> BigInt {
            a * scale() / b
        }

        pub fn sqrt(a: &BigInt) -> BigInt {
            (a * scale()).sqrt()
        }

        /// `arctan(1/x)` by its alternating series.
        fn arctan_inv(x: i64) -> BigInt {
            let x2 = BigInt::from(x * x);
            let mut term = scale() / x;
            let mut sum = BigInt::zero();
            let mut k = 0i64;
            while !term.is_zero() {
                let t = &term / (2 * k + 1);
                if k % 2 == 0 {
                    sum += t;
                } else {
                    sum -= t;
                }
                term /= &x2;
                k += 1;
            }
            sum
        }

        /// Machin's formula.
        pub fn pi() -> BigInt {
            arctan_inv(5) * 16 - arctan_inv(239) * 4
        }

        /// `Φ(z)` from the Maclaurin series of the error integral.
        pub fn phi(z: &BigInt) -> BigInt {
            let z2 = mul(z, z);
            let mut power = z.clone();
            let mut sum = BigInt::zero();
            let mut k = 0i64;
            let mut denom = BigInt::one();
            loop {
                let term = &power / (&denom * (2 * k + 1));
                if term.is_zero() && k > 5 {
                    break;
                }
                if k % 2 == 0 {
                    sum += &term;
                } else {
                    sum -= &term;
                }
                k += 1;
                power = mul(&power, &z2);
                denom *= 2 * k;
            }
            let root_two_pi = sqrt(&(pi() * 2));
            scale() / 2 + div(&sum, &root_two_pi)
        }

        pub fn abs_diff(a: &BigInt, b: &BigInt) -> BigInt {
            (a - b).abs()
        }
    }

    fn ks_high_precision(q: &UniPoly) -> f64 {
        let (m, v) = mean_variance(q).unwrap();
        let sigma = fixed::sqrt(&fixed::from_ratio(&v));
        let mass = q.eval_at_one();
        let mut below = BigInt::zero();
        let mut prev = BigInt::zero();
        let mut worst = BigInt::zero();
        for (k, c) in q.coeffs().iter().enumerate() {
            below += c;
            let cur = fixed::from_ratio(&BigRational::new(below.clone(), mass.clone()));
            let x = fixed::from_ratio(&(BigRational::from_integer(BigInt::from(k)) - &m));
            let phi = fixed::phi(&fixed::div(&x, &sigma));
            worst = worst.max(fixed::abs_diff(&cur, &phi)).max(fixed::abs_diff(&prev, &phi));
            prev = cur;
        }
        BigRational::new(worst, fixed::scale()).to_f64().unwrap()
    }

    #[test]
    fn high_precision_pi_is_sane() {
        let pi = BigRational::new(fixed::pi(), fixed::scale()).to_f64().unwrap();
        assert!((pi - std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn ks_matches_high_precision_route() {
        let mut tables = Vec::new();
        for n in 2..=20 {
            tables.push(eulerian_a(n).unwrap());
            tables.push(eulerian_b(n).unwrap());
            for f in [Family::AExc, Family::BDes, Family::DDes, Family::BDesOverD] {
                if n >= 4 {
                    tables.push(restricted(f, n, SignClass::Plus).unwrap());
                }
            }
        }
        for q in tables {
            let (m, v) = mean_variance(&q).unwrap();
            let fast = ks_distance(&q, m.to_f64().unwrap(), v.to_f64().unwrap().sqrt()).unwrap();
            let slow = ks_high_precision(&q);
            assert!((fast - slow).abs() < 1e-9, "{q}: {fast} vs {slow}");
        }
    }

    #[test]
    fn laws_hold_from_onset_to_forty() {
        for f in Family::ALL {
            for sign in SignClass::ALL {
                let law = moment_law(f, sign);
                let start = law.mean_onset.min(law.variance_onset);
                for r in clt_report(f, sign, start..=40).unwrap() {
                    assert!(r.checks_pass(), "{f} {sign} n={}: {} {}", r.n, r.mean, r.variance);
                }
            }
        }
    }

    #[test]
    fn type_a_variance_law_needs_two_elements() {
        let r = DistReport::build(Family::ADes, SignClass::All, 1).unwrap();
        assert_eq!(r.variance, BigRational::zero());
        assert_ne!(r.variance, N_PLUS_ONE_12.at(1));
        assert_eq!(r.ks_distance, None);
        assert_eq!(r.mean, BigRational::zero());
        assert!(r.mean_ok == Some(true) && r.variance_ok.is_none());
    }

    #[test]
    fn report_examples() {
        let rs = clt_report(Family::AExc, SignClass::Plus, 3..=6).unwrap();
        assert!(rs.iter().all(|r| r.mean_ok == Some(true)));
        assert!(rs.iter().skip(1).all(|r| r.variance_ok == Some(true)));
        let r = DistReport::build(Family::BDes, SignClass::Minus, 3).unwrap();
        assert_eq!(r.variance, ratio(1, 3));
        let csv = reports_to_csv(&clt_report(Family::ADes, SignClass::All, 1..=2).unwrap());
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "n,mean,variance,ks");
        assert_eq!(lines[1], "1,0/1,0/1,");
        assert!(lines[2].starts_with("2,1/2,1/4,"));
    }

    #[test]
    fn ks_decreases_with_n() {
        for (f, sign) in [
            (Family::ADes, SignClass::All),
            (Family::AExc, SignClass::Plus),
            (Family::BDes, SignClass::All),
            (Family::BDes, SignClass::Plus),
            (Family::DDes, SignClass::Plus),
            (Family::BDesOverD, SignClass::Plus),
        ] {
            let at = |n| DistReport::build(f, sign, n).unwrap().ks_distance.unwrap();
            assert!(at(40) < at(10), "{f} {sign}");
        }
    }
}

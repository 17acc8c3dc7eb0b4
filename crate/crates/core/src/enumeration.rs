//! Exhaustive enumeration of groups and brute-force distribution tables.
//!
//! Elements are produced by walking `S_n` in lexicographic order and, for each
//! permutation of absolute values, every sign mask from `0` to `2^n - 1`
//! (bit `i` negates position `i + 1`). The work is cut into blocks sharing a
//! prefix of absolute values; blocks are tabulated independently and the
//! partial integer tables are summed in block order, so results do not depend
//! on the number of worker threads.

use std::env;
use std::sync::Arc;

use num_bigint::BigInt;
use rayon::prelude::*;
use rayon::ThreadPool;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{GroupId, SignClass, SignedPermutation, StatKind};
use crate::poly::{BiPoly, UniPoly};

/// Size limits for anything that walks group elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest window length accepted at all.
    pub max_degree: usize,
    /// Largest `n` for brute force over `S_n`.
    pub brute_a: usize,
    /// Largest `n` for brute force over `B_n`, `D_n` and `B_n - D_n`.
    pub brute_bd: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self { max_degree: 16, brute_a: 10, brute_bd: 8 }
    }
}

impl Caps {
    pub const ENV_MAX_DEGREE: &'static str = "EULERIAN_MAX_DEGREE";
    pub const ENV_BRUTE_A: &'static str = "EULERIAN_BRUTE_CAP_A";
    pub const ENV_BRUTE_BD: &'static str = "EULERIAN_BRUTE_CAP_BD";

    /// Defaults, overridden by the `EULERIAN_*` environment variables when set.
    pub fn from_env() -> Result<Self> {
        let mut caps = Self::default();
        for (var, slot) in [
            (Self::ENV_MAX_DEGREE, &mut caps.max_degree),
            (Self::ENV_BRUTE_A, &mut caps.brute_a),
            (Self::ENV_BRUTE_BD, &mut caps.brute_bd),
        ] {
            if let Ok(raw) = env::var(var) {
                *slot = raw
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("{var}={raw} is not a nonnegative integer")))?;
            }
        }
        Ok(caps)
    }

    pub fn brute_cap(&self, g: GroupId) -> usize {
        let cap = match g {
            GroupId::A => self.brute_a,
            _ => self.brute_bd,
        };
        cap.min(self.max_degree)
    }

    /// Rejects `n = 0` and any `n` beyond the brute-force cap for `g`.
    pub fn check(&self, n: usize, g: GroupId) -> Result<()> {
        if n == 0 {
            return Err(Error::DegreeOutOfRange { n, what: "enumeration (n >= 1)".into() });
        }
        let cap = self.brute_cap(g);
        if n > cap {
            return Err(Error::ResourceLimit { n, cap });
        }
        Ok(())
    }
}

/// A distribution table `k -> |{π in subset : stat(π) = k}|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistTable {
    pub n: usize,
    pub group: GroupId,
    pub sign: SignClass,
    pub stat: StatKind,
    pub coeffs: UniPoly,
}

impl DistTable {
    pub fn new(n: usize, group: GroupId, sign: SignClass, stat: StatKind, coeffs: UniPoly) -> Self {
        Self { n, group, sign, stat, coeffs }
    }

    pub fn poly(&self) -> &UniPoly {
        &self.coeffs
    }

    pub fn total(&self) -> BigInt {
        self.coeffs.eval_at_one()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("DistTable serializes")
    }

    /// CSV with header `k,count`, one row per statistic value up to the degree.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["k", "count"]).expect("in-memory write");
        for (k, c) in self.coeffs.coeffs().iter().enumerate() {
            w.write_record([k.to_string(), c.to_string()]).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("CSV is UTF-8")
    }
}

/// Counts of several statistics over one group, split by length parity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tabulation {
    pub n: usize,
    pub group: GroupId,
    stats: Vec<StatKind>,
    // [stat][parity][value]
    counts: Vec<[Vec<u64>; 2]>,
}

impl Tabulation {
    fn empty(n: usize, group: GroupId, stats: &[StatKind]) -> Self {
        let counts = stats
            .iter()
            .map(|s| {
                let len = s.max_value(n) + 1;
                [vec![0; len], vec![0; len]]
            })
            .collect();
        Self { n, group, stats: stats.to_vec(), counts }
    }

    fn record(&mut self, p: &SignedPermutation) {
        let parity = p.length_parity(self.group);
        for (slot, &s) in self.counts.iter_mut().zip(&self.stats) {
            let v = p.stat(s).expect("applicability checked before enumeration");
            slot[parity][v] += 1;
        }
    }

    fn merge(&mut self, other: &Self) {
        for (mine, theirs) in self.counts.iter_mut().zip(&other.counts) {
            for parity in 0..2 {
                for (a, b) in mine[parity].iter_mut().zip(&theirs[parity]) {
                    *a += b;
                }
            }
        }
    }

    fn slot(&self, stat: StatKind) -> Result<&[Vec<u64>; 2]> {
        self.stats
            .iter()
            .position(|&s| s == stat)
            .map(|i| &self.counts[i])
            .ok_or_else(|| Error::Unsupported(format!("statistic {stat} was not tabulated")))
    }

    pub fn stats(&self) -> &[StatKind] {
        &self.stats
    }

    pub fn distribution(&self, stat: StatKind, sign: SignClass) -> Result<DistTable> {
        let [even, odd] = self.slot(stat)?;
        let coeffs: Vec<BigInt> = (0..even.len())
            .map(|k| match sign {
                SignClass::All => BigInt::from(even[k]) + odd[k],
                SignClass::Plus => BigInt::from(even[k]),
                SignClass::Minus => BigInt::from(odd[k]),
            })
            .collect();
        Ok(DistTable::new(self.n, self.group, sign, stat, UniPoly::new(coeffs)))
    }

    /// Plus table minus Minus table.
    pub fn signed(&self, stat: StatKind) -> Result<UniPoly> {
        let [even, odd] = self.slot(stat)?;
        Ok(UniPoly::new(even.iter().zip(odd).map(|(&e, &o)| BigInt::from(e) - BigInt::from(o)).collect()))
    }
}

/// Signed `(asc_B, des_B)` counts, indexed `[asc_B][des_B]`.
#[derive(Clone, Debug)]
struct BiCounts(Vec<Vec<i64>>);

impl BiCounts {
    fn new(n: usize) -> Self {
        Self(vec![vec![0; n + 1]; n + 1])
    }

    fn merge(&mut self, other: &Self) {
        for (row, orow) in self.0.iter_mut().zip(&other.0) {
            for (a, b) in row.iter_mut().zip(orow) {
                *a += b;
            }
        }
    }

    fn into_bipoly(self) -> BiPoly {
        let mut out = BiPoly::zero();
        for (a, row) in self.0.into_iter().enumerate() {
            for (b, c) in row.into_iter().enumerate() {
                out.add_term(BigInt::from(c), a, b);
            }
        }
        out
    }
}

/// Lexicographic successor of `xs`; returns false once `xs` is the last
/// arrangement.
fn next_permutation(xs: &mut [i32]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let Some(i) = (0..xs.len() - 1).rev().find(|&i| xs[i] < xs[i + 1]) else {
        return false;
    };
    let j = (i + 1..xs.len()).rev().find(|&j| xs[j] > xs[i]).expect("successor exists");
    xs.swap(i, j);
    xs[i + 1..].reverse();
    true
}

/// Absolute-value prefixes used to cut `S_n` into blocks, in lex order.
fn block_prefixes(n: usize) -> Vec<Vec<i32>> {
    let depth = n.min(2);
    let mut out: Vec<Vec<i32>> = vec![Vec::new()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for pre in &out {
            for v in (1..=n as i32).filter(|v| !pre.contains(v)) {
                let mut p = pre.clone();
                p.push(v);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// Calls `f` on every member of `g` whose absolute values start with `prefix`,
/// in enumeration order. A single buffer is reused across calls.
fn walk_block(n: usize, g: GroupId, prefix: &[i32], mut f: impl FnMut(&SignedPermutation)) {
    let mut abs: Vec<i32> = prefix.to_vec();
    abs.extend((1..=n as i32).filter(|v| !prefix.contains(v)));
    let k = prefix.len();
    let masks: u32 = if g == GroupId::A { 1 } else { 1 << n };
    let mut elem = SignedPermutation::from_raw(abs.clone());
    loop {
        for mask in 0..masks {
            let keep = match g {
                GroupId::A | GroupId::B => true,
                GroupId::D => mask.count_ones() % 2 == 0,
                GroupId::BminusD => mask.count_ones() % 2 == 1,
            };
            if !keep {
                continue;
            }
            for (i, (slot, &a)) in elem.window_mut().iter_mut().zip(&abs).enumerate() {
                *slot = if mask >> i & 1 == 1 { -a } else { a };
            }
            f(&elem);
        }
        if !next_permutation(&mut abs[k..]) {
            break;
        }
    }
}

/// Brute-force driver holding size caps and an optional dedicated thread pool.
#[derive(Clone, Default)]
pub struct Enumerator {
    caps: Caps,
    pool: Option<Arc<ThreadPool>>,
}

impl std::fmt::Debug for Enumerator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Enumerator")
            .field("caps", &self.caps)
            .field("threads", &self.pool.as_ref().map(|p| p.current_num_threads()))
            .finish()
    }
}

impl Enumerator {
    /// Uses the global rayon pool.
    pub fn new(caps: Caps) -> Self {
        Self { caps, pool: None }
    }

    /// Uses a private pool of exactly `threads` workers.
    pub fn with_threads(caps: Caps, threads: usize) -> Result<Self> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build()
            .map_err(|e| Error::Unsupported(format!("cannot build thread pool: {e}")))?;
        Ok(Self { caps, pool: Some(Arc::new(pool)) })
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    /// Runs `op` inside this enumerator's pool, if it has one.
    pub fn install<R: Send>(&self, op: impl FnOnce() -> R + Send) -> R {
        match &self.pool {
            Some(pool) => pool.install(op),
            None => op(),
        }
    }

    /// Every element of `g` at degree `n`, in enumeration order.
    pub fn iter_group(&self, n: usize, g: GroupId) -> Result<impl Iterator<Item = SignedPermutation>> {
        self.caps.check(n, g)?;
        Ok(block_prefixes(n).into_iter().flat_map(move |prefix| {
            let mut block = Vec::new();
            walk_block(n, g, &prefix, |p| block.push(p.clone()));
            block
        }))
    }

    pub fn iter_subset(
        &self,
        n: usize,
        g: GroupId,
        s: SignClass,
    ) -> Result<impl Iterator<Item = SignedPermutation>> {
        Ok(self.iter_group(n, g)?.filter(move |p| p.in_subset(g, s)))
    }

    /// Folds every element of `g` blockwise in parallel, then merges the
    /// partial results in block order.
    pub(crate) fn fold<T, F, M>(
        &self,
        n: usize,
        g: GroupId,
        init: impl Fn() -> T + Sync,
        visit: F,
        merge: M,
    ) -> Result<T>
    where
        T: Send,
        F: Fn(&mut T, &SignedPermutation) + Sync,
        M: Fn(&mut T, &T),
    {
        self.caps.check(n, g)?;
        let prefixes = block_prefixes(n);
        let partials: Vec<T> = self.install(|| {
            prefixes
                .par_iter()
                .map(|prefix| {
                    let mut acc = init();
                    walk_block(n, g, prefix, |p| visit(&mut acc, p));
                    acc
                })
                .collect()
        });
        let mut total = init();
        for part in &partials {
            merge(&mut total, part);
        }
        Ok(total)
    }

    /// Tabulates several statistics in a single pass over `g`.
    pub fn tabulate(&self, n: usize, g: GroupId, stats: &[StatKind]) -> Result<Tabulation> {
        for &stat in stats {
            if !g.supports(stat) {
                return Err(Error::StatNotApplicable { stat, target: format!("group {g}") });
            }
        }
        self.fold(n, g, || Tabulation::empty(n, g, stats), |t, p| t.record(p), |t, other| t.merge(other))
    }

    pub fn brute_distribution(
        &self,
        n: usize,
        g: GroupId,
        s: SignClass,
        stat: StatKind,
    ) -> Result<DistTable> {
        self.tabulate(n, g, &[stat])?.distribution(stat, s)
    }

    /// `sum_{π in g} sign_of(π, g) t^{stat(π)}`.
    pub fn brute_signed_gf(&self, n: usize, g: GroupId, stat: StatKind) -> Result<UniPoly> {
        self.tabulate(n, g, &[stat])?.signed(stat)
    }

    /// `sum (-1)^{length} s^{asc_B} t^{des_B}` over `g`, with the length
    /// statistic of `g` (`inv_D` for `D` and `B - D`, `inv_B` for `B`).
    fn bivariate(&self, n: usize, g: GroupId) -> Result<BiPoly> {
        let counts = self.fold(
            n,
            g,
            || BiCounts::new(n),
            |acc, p| {
                let sign = if p.length_parity(g) == 0 { 1 } else { -1 };
                acc.0[p.asc_b()][p.des_b()] += sign;
            },
            |acc, other| acc.merge(other),
        )?;
        Ok(counts.into_bipoly())
    }

    /// Signed bivariate descent polynomial over `D_n` or `B_n - D_n`.
    pub fn brute_bivariate_sgn(&self, n: usize, g: GroupId) -> Result<BiPoly> {
        match g {
            GroupId::D | GroupId::BminusD => self.bivariate(n, g),
            _ => Err(Error::Unsupported(format!(
                "signed bivariate descent sum is defined over d and b-minus-d, not {g}"
            ))),
        }
    }

    /// Signed bivariate descent polynomial over all of `B_n`, signed by `inv_B`.
    pub fn brute_bivariate_b(&self, n: usize) -> Result<BiPoly> {
        self.bivariate(n, GroupId::B)
    }
}

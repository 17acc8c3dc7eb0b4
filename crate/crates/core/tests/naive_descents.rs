//! Descent distributions recomputed by a deliberately naive enumerator that
//! shares no code with the library's block-parallel walk.

use eulerian_core::{Caps, Enumerator, GroupId, SignClass, StatKind};
use num_bigint::BigInt;

fn permutations(n: usize) -> Vec<Vec<i32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n as i32);
            out.push(q);
        }
    }
    out
}

fn signed_permutations(n: usize) -> Vec<Vec<i32>> {
    let mut out = Vec::new();
    for p in permutations(n) {
        for mask in 0u32..(1 << n) {
            out.push(p.iter().enumerate().map(|(i, &v)| if mask >> i & 1 == 1 { -v } else { v }).collect());
        }
    }
    out
}

fn des_a(w: &[i32]) -> usize {
    w.windows(2).filter(|p| p[0] > p[1]).count()
}

fn des_b(w: &[i32]) -> usize {
    usize::from(w[0] < 0) + des_a(w)
}

fn des_d(w: &[i32]) -> usize {
    let first = w.len() >= 2 && w[0] + w[1] < 0;
    usize::from(first) + des_a(w)
}

fn counts(words: &[Vec<i32>], stat: fn(&[i32]) -> usize) -> Vec<BigInt> {
    let mut c: Vec<u64> = Vec::new();
    for w in words {
        let k = stat(w);
        if c.len() <= k {
            c.resize(k + 1, 0);
        }
        c[k] += 1;
    }
    c.into_iter().map(BigInt::from).collect()
}

#[test]
fn type_a_descents() {
    let en = Enumerator::new(Caps::default());
    for n in 1..=7 {
        let want = counts(&permutations(n), des_a);
        let got = en.brute_distribution(n, GroupId::A, SignClass::All, StatKind::Des).unwrap();
        assert_eq!(got.coeffs.coeffs(), &want[..], "n = {n}");
    }
}

#[test]
fn type_b_descents() {
    let en = Enumerator::new(Caps::default());
    for n in 1..=6 {
        let want = counts(&signed_permutations(n), des_b);
        let got = en.brute_distribution(n, GroupId::B, SignClass::All, StatKind::DesB).unwrap();
        assert_eq!(got.coeffs.coeffs(), &want[..], "n = {n}");
    }
}

#[test]
fn type_d_descents() {
    let en = Enumerator::new(Caps::default());
    for n in 2..=6 {
        let evens: Vec<Vec<i32>> = signed_permutations(n)
            .into_iter()
            .filter(|w| w.iter().filter(|&&v| v < 0).count() % 2 == 0)
            .collect();
        let want = counts(&evens, des_d);
        let got = en.brute_distribution(n, GroupId::D, SignClass::All, StatKind::DesD).unwrap();
        assert_eq!(got.coeffs.coeffs(), &want[..], "n = {n}");
    }
}

#[test]
fn coset_descents_complement_type_d() {
    let en = Enumerator::new(Caps::default());
    for n in 1..=6 {
        let odds: Vec<Vec<i32>> = signed_permutations(n)
            .into_iter()
            .filter(|w| w.iter().filter(|&&v| v < 0).count() % 2 == 1)
            .collect();
        let want = counts(&odds, des_b);
        let got = en.brute_distribution(n, GroupId::BminusD, SignClass::All, StatKind::DesB).unwrap();
        assert_eq!(got.coeffs.coeffs(), &want[..], "n = {n}");
    }
}

//! Helpers shared by the integration tests: random rule generators and a
//! naive reference simulator that shares no code with the library's
//! evaluators.

#![allow(dead_code)]

use lpca::rng::Stream;
use lpca::{AdditiveForm, Configuration, LocalRule};

/// A random permutation of `0..n`.
pub fn permutation(st: &mut Stream, n: usize) -> Vec<u8> {
    let mut p: Vec<u8> = (0..n as u8).collect();
    for i in (1..n).rev() {
        let j = st.below(i as u64 + 1) as usize;
        p.swap(i, j);
    }
    p
}

/// A uniformly random left-permutive rule: one permutation per suffix.
pub fn left_permutive_rule(st: &mut Stream, s: usize, r: usize) -> LocalRule {
    let stride = s.pow(r as u32);
    let perms: Vec<Vec<u8>> = (0..stride).map(|_| permutation(st, s)).collect();
    let mut table = vec![0u8; s * stride];
    for (u, p) in perms.iter().enumerate() {
        for t0 in 0..s {
            table[t0 * stride + u] = p[t0];
        }
    }
    LocalRule::new(s, r, table).unwrap()
}

/// Random `θ` on `r`-words with `θ(0..0) = 0` and at least one nonzero value,
/// so the all-zero tail is fixed and the rule has positive anticipation.
pub fn theta(st: &mut Stream, s: usize, r: usize) -> Vec<u8> {
    let n = s.pow(r as u32);
    loop {
        let mut th: Vec<u8> = (0..n).map(|_| st.symbol(s)).collect();
        th[0] = 0;
        if th.iter().any(|&v| v != 0) {
            return th;
        }
    }
}

pub fn additive(s: usize, r: usize, a: u8, th: Vec<u8>) -> LocalRule {
    AdditiveForm::new(s, r, a, th).unwrap().to_rule().unwrap()
}

/// Direct table lookup by base-`s` encoding, without `LocalRule::apply`.
fn lookup(rule: &LocalRule, window: &[u8]) -> u8 {
    let s = rule.alphabet();
    let idx = window.iter().fold(0usize, |acc, &v| acc * s + v as usize);
    rule.table()[idx]
}

/// `[Φ^t(x)]_j` for `t = 0..=T`, by materializing `x` on `[j, j + T·r]` and
/// applying the rule `T` times.
pub fn naive_column(config: &Configuration, rule: &LocalRule, j: i64, horizon: usize) -> Vec<u8> {
    let r = rule.anticipation();
    let mut row: Vec<u8> = (0..=(horizon * r) as i64).map(|d| config.symbol(j + d)).collect();
    let mut out = vec![row[0]];
    for _ in 0..horizon {
        row = (0..row.len() - r).map(|i| lookup(rule, &row[i..=i + r])).collect();
        out.push(row[0]);
    }
    out
}

/// Rows of `Φ^t(x)` on `[lo, hi]`, `t = 0..=T`, by the same naive scheme.
pub fn naive_rows(config: &Configuration, rule: &LocalRule, lo: i64, hi: i64, horizon: usize) -> Vec<Vec<u8>> {
    let r = rule.anticipation();
    let width = (hi - lo + 1) as usize;
    let mut row: Vec<u8> = (lo..=hi + (horizon * r) as i64).map(|i| config.symbol(i)).collect();
    let mut out = vec![row[..width].to_vec()];
    for _ in 0..horizon {
        row = (0..row.len() - r).map(|i| lookup(rule, &row[i..=i + r])).collect();
        out.push(row[..width].to_vec());
    }
    out
}

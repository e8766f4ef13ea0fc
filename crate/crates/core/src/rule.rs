//! No-memory local rules over `Z/s`: validation, permutivity, composition,
//! powers, effective anticipation, identity order and injectivity.
//!
//! A rule with anticipation `r` is a table over windows `(t_0, .., t_r)`,
//! indexed by the base-`s` encoding of the window with `t_r` varying fastest.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::rng;

/// Default cap on materialized table entries.
pub const DEFAULT_TABLE_BUDGET: usize = 1 << 26;

/// Largest supported alphabet (symbols are stored as `u8`).
pub const MAX_ALPHABET: usize = 256;

pub(crate) fn checked_pow(base: usize, exp: usize) -> Option<usize> {
    let mut acc: usize = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

fn saturating_pow_u128(base: usize, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}

fn check_budget(s: usize, window: usize, budget: usize) -> Result<usize> {
    match checked_pow(s, window) {
        Some(n) if n <= budget => Ok(n),
        _ => Err(Error::BudgetExceeded {
            required: saturating_pow_u128(s, window),
            budget,
        }),
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Exact table realization of a no-memory local rule.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LocalRule {
    alphabet: usize,
    anticipation: usize,
    table: Vec<u8>,
}

impl LocalRule {
    /// Validates and builds a rule from its row-major table.
    pub fn new(alphabet: usize, anticipation: usize, table: Vec<u8>) -> Result<Self> {
        if !(2..=MAX_ALPHABET).contains(&alphabet) {
            return Err(Error::BadDimensions(format!(
                "alphabet size {alphabet} outside 2..={MAX_ALPHABET}"
            )));
        }
        let expected = checked_pow(alphabet, anticipation + 1).ok_or_else(|| {
            Error::BadDimensions(format!("{alphabet}^{} overflows", anticipation + 1))
        })?;
        if table.len() != expected {
            return Err(Error::BadDimensions(format!(
                "table has {} entries, expected {alphabet}^{} = {expected}",
                table.len(),
                anticipation + 1
            )));
        }
        if let Some(&bad) = table.iter().find(|&&v| v as usize >= alphabet) {
            return Err(Error::SymbolOutOfRange {
                symbol: bad as u32,
                alphabet,
            });
        }
        Ok(Self {
            alphabet,
            anticipation,
            table,
        })
    }

    /// Builds a rule from a closure over windows of length `anticipation + 1`.
    pub fn from_fn(
        alphabet: usize,
        anticipation: usize,
        f: impl Fn(&[u8]) -> u8,
    ) -> Result<Self> {
        let n = checked_pow(alphabet, anticipation + 1)
            .ok_or_else(|| Error::BadDimensions("table size overflows".into()))?;
        let mut window = vec![0u8; anticipation + 1];
        let mut table = Vec::with_capacity(n);
        for idx in 0..n {
            decode_into(idx, alphabet, &mut window);
            table.push(f(&window));
        }
        Self::new(alphabet, anticipation, table)
    }

    /// The rule `t_0 ↦ t_0` with anticipation 0.
    pub fn identity(alphabet: usize) -> Result<Self> {
        Self::new(alphabet, 0, (0..alphabet as u32).map(|v| v as u8).collect())
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    /// Nominal anticipation (window length minus one).
    pub fn anticipation(&self) -> usize {
        self.anticipation
    }

    pub fn table(&self) -> &[u8] {
        &self.table
    }

    /// Table index of a window of length `anticipation + 1`.
    #[inline]
    pub fn index(&self, window: &[u8]) -> usize {
        debug_assert_eq!(window.len(), self.anticipation + 1);
        window
            .iter()
            .fold(0usize, |acc, &t| acc * self.alphabet + t as usize)
    }

    #[inline]
    pub fn apply(&self, window: &[u8]) -> u8 {
        self.table[self.index(window)]
    }

    /// `s^r`, the number of suffixes `(t_1, .., t_r)`.
    pub fn suffix_count(&self) -> usize {
        self.table.len() / self.alphabet
    }

    /// The map `t_0 ↦ φ(t_0, suffix)` for the suffix with index `suffix`.
    pub fn column(&self, suffix: usize) -> Vec<u8> {
        let stride = self.suffix_count();
        (0..self.alphabet)
            .map(|t0| self.table[t0 * stride + suffix])
            .collect()
    }

    /// Applies the rule along a finite word; the result is `anticipation`
    /// symbols shorter.
    pub fn slide(&self, word: &[u8]) -> Vec<u8> {
        let w = self.anticipation + 1;
        if word.len() < w {
            return Vec::new();
        }
        word.windows(w).map(|win| self.apply(win)).collect()
    }

    /// Evaluates `φ^n` on a window of length `n·r + 1` by iterated sliding.
    pub fn apply_iterated(&self, window: &[u8], n: usize) -> u8 {
        debug_assert_eq!(window.len(), n * self.anticipation + 1);
        let mut cur = window.to_vec();
        for _ in 0..n {
            cur = self.slide(&cur);
        }
        cur[0]
    }

    pub fn is_left_permutive(&self) -> bool {
        let stride = self.suffix_count();
        let mut seen = vec![false; self.alphabet];
        for u in 0..stride {
            seen.iter_mut().for_each(|b| *b = false);
            for t0 in 0..self.alphabet {
                let v = self.table[t0 * stride + u] as usize;
                if seen[v] {
                    return false;
                }
                seen[v] = true;
            }
        }
        true
    }

    /// Largest `j` such that the rule depends on `t_j`; 0 for a symbol map.
    pub fn effective_anticipation(&self) -> usize {
        let mut independent = 0;
        let mut block = 1usize;
        while independent < self.anticipation {
            block *= self.alphabet;
            let constant = self
                .table
                .chunks_exact(block)
                .all(|c| c.iter().all(|&v| v == c[0]));
            if !constant {
                break;
            }
            independent += 1;
        }
        self.anticipation - independent
    }

    /// Drops trailing coordinates the rule does not depend on.
    pub fn trimmed(&self) -> LocalRule {
        let e = self.effective_anticipation();
        if e == self.anticipation {
            return self.clone();
        }
        let stride = checked_pow(self.alphabet, self.anticipation - e).unwrap();
        let table = self.table.iter().step_by(stride).copied().collect();
        LocalRule {
            alphabet: self.alphabet,
            anticipation: e,
            table,
        }
    }

    /// Re-expresses the rule with a larger nominal anticipation.
    pub fn padded(&self, anticipation: usize, budget: usize) -> Result<LocalRule> {
        if anticipation < self.anticipation {
            return Err(Error::BadDimensions(format!(
                "cannot pad anticipation {} down to {anticipation}",
                self.anticipation
            )));
        }
        let n = check_budget(self.alphabet, anticipation + 1, budget)?;
        let stride = checked_pow(self.alphabet, anticipation - self.anticipation).unwrap();
        let table = (0..n).map(|i| self.table[i / stride]).collect();
        Ok(LocalRule {
            alphabet: self.alphabet,
            anticipation,
            table,
        })
    }

    /// True if the rule is the identity map on `t_0` (at any padding).
    pub fn is_identity(&self) -> bool {
        let stride = self.suffix_count();
        self.table
            .iter()
            .enumerate()
            .all(|(i, &v)| v as usize == i / stride)
    }

    /// Rule of `outer ∘ inner` (apply `inner`, then `outer`).
    pub fn compose(outer: &LocalRule, inner: &LocalRule) -> Result<LocalRule> {
        compose_with_budget(outer, inner, DEFAULT_TABLE_BUDGET)
    }

    /// Local rule of `Φ^n` with nominal anticipation `n·r`.
    pub fn power(&self, n: usize) -> Result<LocalRule> {
        self.power_with_budget(n, DEFAULT_TABLE_BUDGET)
    }

    pub fn power_with_budget(&self, n: usize, budget: usize) -> Result<LocalRule> {
        if n == 0 {
            return Err(Error::BadDimensions("power must be at least 1".into()));
        }
        let nominal = n
            .checked_mul(self.anticipation)
            .ok_or_else(|| Error::BadDimensions("anticipation overflows".into()))?;
        check_budget(self.alphabet, nominal + 1, budget)?;
        self.power_trimmed(n, budget)?.padded(nominal, budget)
    }

    /// `Φ^n` with trailing unused coordinates dropped, computed by repeated
    /// squaring with trimming at every step.
    pub fn power_trimmed(&self, n: usize, budget: usize) -> Result<LocalRule> {
        if n == 0 {
            return Err(Error::BadDimensions("power must be at least 1".into()));
        }
        let mut base = self.trimmed();
        let mut acc: Option<LocalRule> = None;
        let mut e = n;
        loop {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => compose_with_budget(&base, &a, budget)?.trimmed(),
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = compose_with_budget(&base, &base, budget)?.trimmed();
        }
        Ok(acc.expect("n >= 1"))
    }

    /// Searches for two windows that differ only in `t_1..` and on which `φ^n`
    /// disagrees. A hit certifies that `Φ^n` has positive anticipation.
    pub fn anticipation_witness(
        &self,
        n: usize,
        attempts: usize,
        seed: u64,
    ) -> Option<(Vec<u8>, Vec<u8>)> {
        let len = n * self.anticipation + 1;
        if len < 2 {
            return None;
        }
        let mut st = rng::Stream::new(seed);
        for _ in 0..attempts {
            let a: Vec<u8> = (0..len).map(|_| st.symbol(self.alphabet)).collect();
            let mut b = a.clone();
            if st.below(2) == 0 {
                for v in b.iter_mut().skip(1) {
                    *v = st.symbol(self.alphabet);
                }
            } else {
                let pos = 1 + st.below((len - 1) as u64) as usize;
                b[pos] = ((b[pos] as usize + 1 + st.below(self.alphabet as u64 - 1) as usize)
                    % self.alphabet) as u8;
            }
            if a != b && self.apply_iterated(&a, n) != self.apply_iterated(&b, n) {
                return Some((a, b));
            }
        }
        None
    }

    /// Searches for two windows of length `n·e + 1` (`e` the effective
    /// anticipation) that differ only in their last symbol and on which the
    /// `n`-th power of the trimmed rule disagrees, i.e. a proof that `Φ^n` reaches all the way to `t_{ne}`.
    ///
    /// The change travels down the right edge of the light cone, so the
    /// search fixes the window from right to left, `e` symbols per level, and
    /// backtracks as soon as the edge stops being sensitive. At most
    /// `max_nodes` partial windows are expanded.
    pub fn edge_witness(&self, n: usize, max_nodes: usize) -> Option<(Vec<u8>, Vec<u8>)> {
        let rule = self.trimmed();
        let r = rule.anticipation;
        if n == 0 || r == 0 {
            return None;
        }
        let len = n * r + 1;
        let mut search = EdgeSearch {
            rule: &rule,
            n,
            rows: vec![vec![0u8; len]; n],
            nodes: 0,
            max_nodes,
        };
        let s = rule.alphabet as u8;
        for a in 0..s {
            for b in a + 1..s {
                if search.descend(0, a, b) {
                    let mut x = search.rows[0].clone();
                    let mut y = x.clone();
                    x[len - 1] = a;
                    y[len - 1] = b;
                    return Some((x, y));
                }
                if search.nodes >= max_nodes {
                    return None;
                }
            }
        }
        None
    }

    /// Least `m ≤ bound` with `Φ^m` the identity map, if any.
    ///
    /// Powers with a cheap positive-anticipation witness are skipped; the
    /// others are materialized and trimmed. Once some `Φ^n` collapses to a
    /// symbol permutation `π`, the answer is `n · ord(π)`.
    pub fn identity_order(&self, bound: usize, budget: usize) -> Result<Option<usize>> {
        if !self.is_left_permutive() {
            return Err(Error::NotPermutive("identity order needs a left-permutive rule".into()));
        }
        for m in 1..=bound {
            if self.edge_witness(m, 1 << 12).is_some()
                || self.anticipation_witness(m, 48, 0x1D0 ^ m as u64).is_some()
            {
                continue;
            }
            let g = self.power_trimmed(m, budget)?;
            if g.anticipation > 0 {
                continue;
            }
            let order = permutation_order(&g.table);
            let total = m * order;
            return Ok((total <= bound).then_some(total));
        }
        Ok(None)
    }

    /// Whether the global map on bi-infinite sequences is one-to-one, decided
    /// on the pair graph of overlapping windows.
    pub fn is_injective(&self, budget: usize) -> Result<bool> {
        let rule = self.trimmed();
        let s = rule.alphabet;
        let e = rule.anticipation;
        if e == 0 {
            let mut seen = vec![false; s];
            return Ok(rule.table.iter().all(|&v| !std::mem::replace(&mut seen[v as usize], true)));
        }
        let words = checked_pow(s, e).unwrap();
        let nodes = words
            .checked_mul(words)
            .filter(|&n| n.saturating_mul(s * s) <= budget)
            .ok_or(Error::BudgetExceeded {
                required: (words as u128) * (words as u128) * (s * s) as u128,
                budget,
            })?;
        // Window (u, c) for u an e-word has index u*s + c and leads to the
        // e-word (u*s + c) mod s^e.
        let mut succ: Vec<Vec<u32>> = vec![Vec::new(); nodes];
        let mut pred: Vec<Vec<u32>> = vec![Vec::new(); nodes];
        for u in 0..words {
            for v in 0..words {
                let from = u * words + v;
                for a in 0..s {
                    let wa = u * s + a;
                    for b in 0..s {
                        let wb = v * s + b;
                        if rule.table[wa] == rule.table[wb] {
                            let to = (wa % words) * words + wb % words;
                            succ[from].push(to as u32);
                            pred[to].push(from as u32);
                        }
                    }
                }
            }
        }
        let forward = infinite_path_nodes(&succ, &pred);
        let backward = infinite_path_nodes(&pred, &succ);
        let collision = (0..nodes).any(|n| {
            let (u, v) = (n / words, n % words);
            u != v && forward[n] && backward[n]
        });
        Ok(!collision)
    }
}

/// Depth-first state for `edge_witness`. `rows[τ][i]` is `[Φ^τ(x)]_i` on the
/// places already fixed, excluding the right edge where the two windows
/// differ.
struct EdgeSearch<'a> {
    rule: &'a LocalRule,
    n: usize,
    rows: Vec<Vec<u8>>,
    nodes: usize,
    max_nodes: usize,
}

impl EdgeSearch<'_> {
    /// At level `t` the windows differ at place `(n - t)·r` of row `t`,
    /// holding `a` and `b`.
    fn descend(&mut self, t: usize, a: u8, b: u8) -> bool {
        if t == self.n {
            return true;
        }
        let r = self.rule.anticipation;
        let s = self.rule.alphabet;
        let lo = (self.n - t - 1) * r;
        let combos = s.pow(r as u32);
        let mut window = vec![0u8; r + 1];
        for code in 0..combos {
            if self.nodes >= self.max_nodes {
                return false;
            }
            self.nodes += 1;
            let mut c = code;
            for i in (lo..lo + r).rev() {
                self.rows[0][i] = (c % s) as u8;
                c /= s;
            }
            for tau in 1..=t {
                for i in lo..lo + r {
                    window.copy_from_slice(&self.rows[tau - 1][i..=i + r]);
                    self.rows[tau][i] = self.rule.apply(&window);
                }
            }
            window[..r].copy_from_slice(&self.rows[t][lo..lo + r]);
            window[r] = a;
            let fa = self.rule.apply(&window);
            window[r] = b;
            let fb = self.rule.apply(&window);
            if fa != fb && self.descend(t + 1, fa, fb) {
                return true;
            }
        }
        false
    }
}

/// Nodes from which an infinite path along `out` exists (prunes sinks).
fn infinite_path_nodes(out: &[Vec<u32>], inc: &[Vec<u32>]) -> Vec<bool> {
    let n = out.len();
    let mut alive = vec![true; n];
    let mut degree: Vec<usize> = out.iter().map(|v| v.len()).collect();
    let mut queue: VecDeque<usize> = (0..n).filter(|&i| degree[i] == 0).collect();
    while let Some(x) = queue.pop_front() {
        if !alive[x] {
            continue;
        }
        alive[x] = false;
        for &p in &inc[x] {
            let p = p as usize;
            degree[p] -= 1;
            if degree[p] == 0 && alive[p] {
                queue.push_back(p);
            }
        }
    }
    alive
}

/// Order of a permutation given as an image table.
pub fn permutation_order(perm: &[u8]) -> usize {
    let mut seen = vec![false; perm.len()];
    let mut order = 1usize;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = perm[x] as usize;
            len += 1;
        }
        order = order / gcd(order, len) * len;
    }
    order
}

fn decode_into(mut idx: usize, s: usize, window: &mut [u8]) {
    for slot in window.iter_mut().rev() {
        *slot = (idx % s) as u8;
        idx /= s;
    }
}

fn compose_with_budget(outer: &LocalRule, inner: &LocalRule, budget: usize) -> Result<LocalRule> {
    if outer.alphabet != inner.alphabet {
        return Err(Error::AlphabetMismatch {
            left: outer.alphabet,
            right: inner.alphabet,
        });
    }
    let s = outer.alphabet;
    let ro = outer.anticipation;
    let ri = inner.anticipation;
    let size = check_budget(s, ro + ri + 1, budget)?;
    let inner_len = inner.table.len();
    let pows: Vec<usize> = (0..=ro).map(|j| checked_pow(s, ro - j).unwrap()).collect();
    let mut table = Vec::with_capacity(size);
    for idx in 0..size {
        let mut o = 0usize;
        for &p in &pows {
            o = o * s + inner.table[(idx / p) % inner_len] as usize;
        }
        table.push(outer.table[o]);
    }
    Ok(LocalRule {
        alphabet: s,
        anticipation: ro + ri,
        table,
    })
}

/// A rule of the form `a·t_0 + θ(t_1, .., t_r) mod s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdditiveForm {
    pub alphabet: usize,
    pub anticipation: usize,
    pub coefficient: u8,
    pub theta: Vec<u8>,
}

impl AdditiveForm {
    pub fn new(alphabet: usize, anticipation: usize, coefficient: u8, theta: Vec<u8>) -> Result<Self> {
        if !(2..=MAX_ALPHABET).contains(&alphabet) {
            return Err(Error::BadDimensions(format!("alphabet size {alphabet}")));
        }
        let expected = checked_pow(alphabet, anticipation)
            .ok_or_else(|| Error::BadDimensions("theta size overflows".into()))?;
        if theta.len() != expected {
            return Err(Error::BadDimensions(format!(
                "theta has {} entries, expected {alphabet}^{anticipation} = {expected}",
                theta.len()
            )));
        }
        for &v in theta.iter().chain(std::iter::once(&coefficient)) {
            if v as usize >= alphabet {
                return Err(Error::SymbolOutOfRange {
                    symbol: v as u32,
                    alphabet,
                });
            }
        }
        Ok(Self {
            alphabet,
            anticipation,
            coefficient,
            theta,
        })
    }

    /// Recovers the additive form of a rule, if it has one.
    pub fn detect(rule: &LocalRule) -> Option<Self> {
        let s = rule.alphabet;
        let stride = rule.suffix_count();
        let theta: Vec<u8> = rule.table[..stride].to_vec();
        let a = ((rule.table[stride] as usize + s - theta[0] as usize) % s) as u8;
        for t0 in 0..s {
            for u in 0..stride {
                let want = (t0 * a as usize + theta[u] as usize) % s;
                if rule.table[t0 * stride + u] as usize != want {
                    return None;
                }
            }
        }
        Some(Self {
            alphabet: s,
            anticipation: rule.anticipation,
            coefficient: a,
            theta,
        })
    }

    /// Materializes the table; fails unless `gcd(a, s) = 1`.
    pub fn to_rule(&self) -> Result<LocalRule> {
        let rule = self.to_rule_unchecked();
        if gcd(self.coefficient as usize, self.alphabet) != 1 {
            return Err(Error::NotPermutive(format!(
                "gcd({}, {}) != 1",
                self.coefficient, self.alphabet
            )));
        }
        debug_assert!(rule.is_left_permutive());
        Ok(rule)
    }

    fn to_rule_unchecked(&self) -> LocalRule {
        let s = self.alphabet;
        let stride = self.theta.len();
        let mut table = Vec::with_capacity(s * stride);
        for t0 in 0..s {
            for &th in &self.theta {
                table.push(((t0 * self.coefficient as usize + th as usize) % s) as u8);
            }
        }
        LocalRule {
            alphabet: s,
            anticipation: self.anticipation,
            table,
        }
    }
}

/// Builds `a·t_0 + θ(t_1..t_r) mod s`.
pub fn make_additive_rule(s: usize, r: usize, a: u8, theta: Vec<u8>) -> Result<LocalRule> {
    AdditiveForm::new(s, r, a, theta)?.to_rule()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xor() -> LocalRule {
        LocalRule::new(2, 1, vec![0, 1, 1, 0]).unwrap()
    }

    /// φ(t0,t1) = t0 except φ(0,1) = 2 and φ(2,1) = 0.
    fn z3() -> LocalRule {
        LocalRule::from_fn(3, 1, |w| match (w[0], w[1]) {
            (0, 1) => 2,
            (2, 1) => 0,
            (t0, _) => t0,
        })
        .unwrap()
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            LocalRule::new(2, 1, vec![0, 1, 1]),
            Err(Error::BadDimensions(_))
        ));
        assert!(matches!(
            LocalRule::new(2, 1, vec![0, 1, 2, 0]),
            Err(Error::SymbolOutOfRange { symbol: 2, .. })
        ));
        assert!(LocalRule::new(1, 0, vec![0]).is_err());
        assert_eq!(z3().table(), &[0, 2, 0, 1, 1, 1, 2, 0, 2]);
    }

    #[test]
    fn additive_rules() {
        let r = make_additive_rule(2, 1, 1, vec![0, 1]).unwrap();
        assert_eq!(r, xor());
        let r = make_additive_rule(5, 1, 2, vec![0, 1, 2, 3, 4]).unwrap();
        assert!(r.is_left_permutive());
        assert_eq!(r.apply(&[3, 4]), (2 * 3 + 4) % 5);
        assert!(matches!(
            make_additive_rule(4, 1, 2, vec![0; 4]),
            Err(Error::NotPermutive(_))
        ));
        let f = AdditiveForm::detect(&r).unwrap();
        assert_eq!((f.coefficient, f.theta.clone()), (2, vec![0, 1, 2, 3, 4]));
        assert!(AdditiveForm::detect(&z3()).is_none());
    }

    #[test]
    fn permutivity() {
        assert!(xor().is_left_permutive());
        assert!(z3().is_left_permutive());
        assert!(LocalRule::new(2, 1, vec![0, 0, 1, 1]).unwrap().is_left_permutive());
        assert!(!LocalRule::new(2, 1, vec![0, 1, 0, 1]).unwrap().is_left_permutive());
    }

    #[test]
    fn composition() {
        let xx = LocalRule::compose(&xor(), &xor()).unwrap();
        let expected = LocalRule::from_fn(2, 2, |w| (w[0] + w[2]) % 2).unwrap();
        assert_eq!(xx, expected);

        let zz = LocalRule::compose(&z3(), &z3()).unwrap();
        assert!(zz.is_identity());
        assert_eq!(zz.effective_anticipation(), 0);

        let id = LocalRule::identity(2).unwrap();
        let g = LocalRule::compose(&id, &xor()).unwrap();
        assert_eq!(g, xor());
        let g = LocalRule::compose(&xor(), &id).unwrap();
        assert_eq!(g, xor());

        let other = LocalRule::identity(3).unwrap();
        assert!(matches!(
            LocalRule::compose(&xor(), &other),
            Err(Error::AlphabetMismatch { .. })
        ));
    }

    #[test]
    fn powers() {
        assert_eq!(xor().power(1).unwrap(), xor());
        let p4 = xor().power(4).unwrap();
        assert_eq!(p4.anticipation(), 4);
        assert_eq!(p4, LocalRule::from_fn(2, 4, |w| (w[0] + w[4]) % 2).unwrap());
        let p3 = xor().power(3).unwrap();
        assert_eq!(
            p3,
            LocalRule::from_fn(2, 3, |w| (w[0] + w[1] + w[2] + w[3]) % 2).unwrap()
        );
        let err = xor().power_with_budget(30, 1 << 20).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { required, .. } if required == 1 << 31));
        assert!(xor().power(0).is_err());
    }

    #[test]
    fn anticipation_values() {
        assert_eq!(xor().effective_anticipation(), 1);
        assert_eq!(z3().power(2).unwrap().effective_anticipation(), 0);
        let pad = LocalRule::new(2, 1, vec![0, 0, 1, 1]).unwrap();
        assert_eq!(pad.effective_anticipation(), 0);
        assert_eq!(pad.trimmed(), LocalRule::identity(2).unwrap());
        // depends on t1 only, nominally r = 2
        let mid = LocalRule::from_fn(2, 2, |w| (w[0] + w[1]) % 2).unwrap();
        assert_eq!(mid.effective_anticipation(), 1);
        assert_eq!(mid.trimmed(), xor());
    }

    #[test]
    fn identity_orders() {
        assert_eq!(z3().identity_order(10, DEFAULT_TABLE_BUDGET).unwrap(), Some(2));
        assert_eq!(xor().identity_order(32, DEFAULT_TABLE_BUDGET).unwrap(), None);
        let cyc = LocalRule::new(3, 0, vec![1, 2, 0]).unwrap();
        assert_eq!(cyc.identity_order(10, DEFAULT_TABLE_BUDGET).unwrap(), Some(3));
        assert_eq!(cyc.identity_order(2, DEFAULT_TABLE_BUDGET).unwrap(), None);
        let not_perm = LocalRule::new(2, 1, vec![0, 1, 0, 1]).unwrap();
        assert!(not_perm.identity_order(4, DEFAULT_TABLE_BUDGET).is_err());
    }

    #[test]
    fn injectivity() {
        assert!(!xor().is_injective(DEFAULT_TABLE_BUDGET).unwrap());
        assert!(z3().is_injective(DEFAULT_TABLE_BUDGET).unwrap());
        assert!(LocalRule::identity(4).unwrap().is_injective(DEFAULT_TABLE_BUDGET).unwrap());
        // the shift t1 is injective
        let shift = LocalRule::new(2, 1, vec![0, 1, 0, 1]).unwrap();
        assert!(shift.is_injective(DEFAULT_TABLE_BUDGET).unwrap());
        // constant map is not
        let c = LocalRule::new(2, 0, vec![0, 0]).unwrap();
        assert!(!c.is_injective(DEFAULT_TABLE_BUDGET).unwrap());
    }

    #[test]
    fn witness_certifies() {
        let (a, b) = xor().anticipation_witness(5, 16, 3).unwrap();
        assert_eq!(a[0], b[0]);
        assert_ne!(xor().apply_iterated(&a, 5), xor().apply_iterated(&b, 5));
        assert!(z3().anticipation_witness(2, 64, 3).is_none());
    }

    #[test]
    fn edge_witnesses() {
        let (a, b) = xor().edge_witness(6, 1000).unwrap();
        assert_eq!((a.len(), a[..6] == b[..6]), (7, true));
        assert_ne!(xor().apply_iterated(&a, 6), xor().apply_iterated(&b, 6));
        // t_0 + t_1 (1 + t_2): sensitive to t_2 only when t_1 = 1
        let g = LocalRule::new(2, 2, vec![0, 0, 1, 0, 1, 1, 0, 1]).unwrap();
        let (a, b) = g.edge_witness(16, 1 << 20).unwrap();
        assert_ne!(g.apply_iterated(&a, 16), g.apply_iterated(&b, 16));
        assert!(z3().edge_witness(2, 1 << 16).is_none());
        assert!(LocalRule::identity(3).unwrap().edge_witness(4, 16).is_none());
    }
}

//! Exact evaluation of `Φ` on two-sided configurations whose left half is
//! produced on demand.
//!
//! Rules have no memory, so coordinates `≥ i` of `Φ^t(x)` depend only on
//! coordinates `≥ i` of `x`. Every evaluation here works on a finite window
//! `[lo, hi]` (with `hi ≥ 0`) whose right boundary is read from the orbit of
//! the tail.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rng;
use crate::rule::LocalRule;
use crate::signature::{self, SignatureOptions, SignatureStatus};
use crate::tails::{is_tail_fixed, least_tail_period};
use crate::word::{format_symbols, parse_symbols, EventuallyPeriodicWord, TailOrbit};

/// Source of the symbols `x_{-1}, x_{-2}, ..`; `symbol(k)` is `x_{-k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LeftProvider {
    Constant(u8),
    /// `x_{-1}, x_{-2}, ..` read off an eventually periodic word.
    Periodic(EventuallyPeriodicWord),
    /// Counter-based pseudorandom symbols keyed by `seed`.
    Random { seed: u64 },
    /// `x_{-1}, x_{-2}, ..` given explicitly, zeros further left.
    Word(Vec<u8>),
    /// `base` with `x_{-offset}` replaced by `symbol`.
    Patched {
        base: Box<LeftProvider>,
        offset: usize,
        symbol: u8,
    },
}

impl LeftProvider {
    pub fn symbol(&self, k: usize, alphabet: usize) -> u8 {
        debug_assert!(k >= 1);
        match self {
            LeftProvider::Constant(c) => *c,
            LeftProvider::Periodic(w) => w.symbol(k),
            LeftProvider::Random { seed } => rng::symbol(*seed, k as u64, alphabet),
            LeftProvider::Word(w) => w.get(k - 1).copied().unwrap_or(0),
            LeftProvider::Patched {
                base,
                offset,
                symbol,
            } => {
                if k == *offset {
                    *symbol
                } else {
                    base.symbol(k, alphabet)
                }
            }
        }
    }

    /// The leftward sequence as an eventually periodic word, if it is one.
    pub fn as_eventually_periodic(&self) -> Option<EventuallyPeriodicWord> {
        match self {
            LeftProvider::Constant(c) => Some(EventuallyPeriodicWord::constant(*c)),
            LeftProvider::Periodic(w) => Some(w.clone()),
            LeftProvider::Random { .. } => None,
            LeftProvider::Word(w) => EventuallyPeriodicWord::new(w.clone(), vec![0]).ok(),
            LeftProvider::Patched {
                base,
                offset,
                symbol,
            } => {
                let b = base.as_eventually_periodic()?;
                let mut prefix: Vec<u8> = (1..=(*offset).max(b.transient().len()))
                    .map(|k| b.symbol(k))
                    .collect();
                let period_start = prefix.len() + 1;
                prefix[offset - 1] = *symbol;
                let period = (0..b.period().len())
                    .map(|i| b.symbol(period_start + i))
                    .collect();
                EventuallyPeriodicWord::new(prefix, period).ok()
            }
        }
    }

    fn check(&self, alphabet: usize) -> Result<()> {
        let bad = |v: u8| -> Result<()> {
            if v as usize >= alphabet {
                Err(Error::SymbolOutOfRange {
                    symbol: v as u32,
                    alphabet,
                })
            } else {
                Ok(())
            }
        };
        match self {
            LeftProvider::Constant(c) => bad(*c),
            LeftProvider::Periodic(w) => w.check_alphabet(alphabet),
            LeftProvider::Random { .. } => Ok(()),
            LeftProvider::Word(w) => w.iter().try_for_each(|&v| bad(v)),
            LeftProvider::Patched { base, symbol, .. } => {
                bad(*symbol)?;
                base.check(alphabet)
            }
        }
    }
}

/// `zero`, `ep:TRANSIENT:(PERIOD)`, `rand:SEED` or `word:SYMBOLS`. Word and
/// eventually periodic literals list `x_{-1}` first and continue leftward.
impl FromStr for LeftProvider {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "zero" {
            return Ok(LeftProvider::Constant(0));
        }
        let (kind, arg) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("unknown left provider {s:?}")))?;
        match kind {
            "ep" => Ok(LeftProvider::Periodic(arg.parse()?)),
            "rand" => arg
                .parse()
                .map(|seed| LeftProvider::Random { seed })
                .map_err(|_| Error::Parse(format!("bad seed {arg:?}"))),
            "word" => Ok(LeftProvider::Word(parse_symbols(arg)?)),
            _ => Err(Error::Parse(format!("unknown left provider {s:?}"))),
        }
    }
}

impl fmt::Display for LeftProvider {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LeftProvider::Constant(0) => write!(f, "zero"),
            LeftProvider::Constant(c) => write!(f, "ep::({})", format_symbols(&[*c])),
            LeftProvider::Periodic(w) => write!(f, "ep:{w}"),
            LeftProvider::Random { seed } => write!(f, "rand:{seed}"),
            LeftProvider::Word(w) => write!(f, "word:{}", format_symbols(w)),
            LeftProvider::Patched {
                base,
                offset,
                symbol,
            } => write!(f, "{base}+[-{offset}]={symbol}"),
        }
    }
}

/// A two-sided point: on-demand left half, anchor `x_0`, and right tail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    alphabet: usize,
    pub left: LeftProvider,
    pub anchor: u8,
    pub tail: EventuallyPeriodicWord,
}

impl Configuration {
    pub fn new(
        alphabet: usize,
        left: LeftProvider,
        anchor: u8,
        tail: EventuallyPeriodicWord,
    ) -> Result<Self> {
        left.check(alphabet)?;
        tail.check_alphabet(alphabet)?;
        if anchor as usize >= alphabet {
            return Err(Error::SymbolOutOfRange {
                symbol: anchor as u32,
                alphabet,
            });
        }
        Ok(Self {
            alphabet,
            left,
            anchor,
            tail,
        })
    }

    /// The all-`c` configuration.
    pub fn constant(alphabet: usize, c: u8) -> Result<Self> {
        Self::new(
            alphabet,
            LeftProvider::Constant(c),
            c,
            EventuallyPeriodicWord::constant(c),
        )
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    #[inline]
    pub fn symbol(&self, i: i64) -> u8 {
        match i {
            0 => self.anchor,
            i if i > 0 => self.tail.symbol(i as usize),
            i => self.left.symbol(i.unsigned_abs() as usize, self.alphabet),
        }
    }

    pub fn with_left(&self, left: LeftProvider) -> Result<Self> {
        Self::new(self.alphabet, left, self.anchor, self.tail.clone())
    }

    pub(crate) fn check_rule(&self, rule: &LocalRule) -> Result<()> {
        if rule.alphabet() != self.alphabet {
            return Err(Error::AlphabetMismatch {
                left: rule.alphabet(),
                right: self.alphabet,
            });
        }
        Ok(())
    }
}

/// In-place simulation of `Φ` on coordinates `[lo, hi]`, `hi ≥ 0`.
#[derive(Debug, Clone)]
pub struct WindowSim<'r> {
    rule: &'r LocalRule,
    lo: i64,
    hi: i64,
    cells: Vec<u8>,
    tail: TailOrbit<'r>,
    time: u64,
}

impl<'r> WindowSim<'r> {
    pub fn new(config: &Configuration, rule: &'r LocalRule, lo: i64, hi: i64) -> Self {
        assert!(lo <= hi && hi >= 0, "window [{lo}, {hi}] must end at or right of 0");
        let r = rule.anticipation();
        let mut cells: Vec<u8> = (lo..=hi).map(|i| config.symbol(i)).collect();
        cells.extend((1..=r as i64).map(|d| config.symbol(hi + d)));
        Self {
            rule,
            lo,
            hi,
            cells,
            tail: TailOrbit::new(rule, config.tail.clone()),
            time: 0,
        }
    }

    pub fn time(&self) -> u64 {
        self.time
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    #[inline]
    pub fn get(&self, i: i64) -> u8 {
        self.cells[(i - self.lo) as usize]
    }

    /// Current symbols at `[lo, hi]` (both inside the window).
    pub fn slice(&self, lo: i64, hi: i64) -> &[u8] {
        &self.cells[(lo - self.lo) as usize..=(hi - self.lo) as usize]
    }

    /// Drops coordinates left of `lo`.
    pub fn truncate_left(&mut self, lo: i64) {
        if lo > self.lo {
            self.cells.drain(..(lo - self.lo) as usize);
            self.lo = lo;
        }
    }

    pub fn step(&mut self) {
        let s = self.rule.alphabet();
        let r = self.rule.anticipation();
        let m = self.rule.suffix_count();
        let table = self.rule.table();
        let n = (self.hi - self.lo + 1) as usize;
        let cells = &mut self.cells;
        let mut idx = cells[..=r].iter().fold(0usize, |a, &t| a * s + t as usize);
        for i in 0..n {
            let v = table[idx];
            if i + 1 < n {
                idx = (idx - cells[i] as usize * m) * s + cells[i + r + 1] as usize;
            }
            cells[i] = v;
        }
        self.time += 1;
        if r > 0 {
            let t = self.time;
            let base = self.hi as usize;
            let state = self.tail.state(t);
            for d in 1..=r {
                cells[n - 1 + d] = state.symbol(base + d);
            }
        }
    }

    pub fn steps(&mut self, n: u64) {
        for _ in 0..n {
            self.step();
        }
    }
}

/// `v_t = [Φ^t(x)]_j` for `t = 0..=T`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColumnSeries {
    pub column: i64,
    pub values: Vec<u8>,
}

/// Column-major evaluator with memoized columns for a fixed horizon.
///
/// Column `j` only depends on columns `j..=j+r` one step earlier, so columns
/// are filled right to left starting from the tail columns, which come
/// straight from the (eventually periodic) tail orbit.
#[derive(Debug)]
pub struct ColumnWorkspace<'a> {
    config: &'a Configuration,
    rule: &'a LocalRule,
    horizon: usize,
    tail: TailOrbit<'a>,
    tail_columns: Vec<Vec<u8>>,
    /// `left[n]` is column `-n`.
    left: Vec<Vec<u8>>,
}

impl<'a> ColumnWorkspace<'a> {
    pub fn new(config: &'a Configuration, rule: &'a LocalRule, horizon: usize) -> Result<Self> {
        config.check_rule(rule)?;
        let mut ws = Self {
            config,
            rule,
            horizon,
            tail: TailOrbit::new(rule, config.tail.clone()),
            tail_columns: Vec::new(),
            left: Vec::new(),
        };
        for j in 1..=rule.anticipation() {
            let col = ws.tail_column(j);
            ws.tail_columns.push(col);
        }
        Ok(ws)
    }

    fn tail_column(&mut self, j: usize) -> Vec<u8> {
        (0..=self.horizon as u64)
            .map(|t| self.tail.symbol(t, j))
            .collect()
    }

    pub fn column(&mut self, j: i64) -> Vec<u8> {
        if j > 0 {
            let j = j as usize;
            if j <= self.tail_columns.len() {
                return self.tail_columns[j - 1].clone();
            }
            return self.tail_column(j);
        }
        let need = j.unsigned_abs() as usize;
        let r = self.rule.anticipation();
        let s = self.rule.alphabet();
        let table = self.rule.table();
        while self.left.len() <= need {
            let n = self.left.len();
            let c = -(n as i64);
            let mut col = Vec::with_capacity(self.horizon + 1);
            col.push(self.config.symbol(c));
            for t in 0..self.horizon {
                let mut idx = col[t] as usize;
                for d in 1..=r {
                    let v = if d <= n {
                        self.left[n - d][t]
                    } else {
                        self.tail_columns[d - n - 1][t]
                    };
                    idx = idx * s + v as usize;
                }
                col.push(table[idx]);
            }
            self.left.push(col);
        }
        self.left[need].clone()
    }
}

pub fn column_evolution(
    config: &Configuration,
    rule: &LocalRule,
    j: i64,
    horizon: usize,
) -> Result<ColumnSeries> {
    let mut ws = ColumnWorkspace::new(config, rule, horizon)?;
    Ok(ColumnSeries {
        column: j,
        values: ws.column(j),
    })
}

/// Whether `(x_{-k}, x_{-k+1}, ..)` is `Φ_R^m`-fixed. The tail must already be
/// `Φ_R^m`-fixed, so only coordinates `-k..=0` are checked.
pub fn suffix_fixed(config: &Configuration, rule: &LocalRule, k: u64, m: u64) -> Result<bool> {
    config.check_rule(rule)?;
    if m == 0 {
        return Err(Error::PreconditionViolated("m must be at least 1".into()));
    }
    if !is_tail_fixed(&config.tail, rule, m) {
        return Err(Error::PreconditionViolated(format!(
            "tail {} is not fixed by the {m}-th power",
            config.tail
        )));
    }
    let lo = -(k as i64);
    let mut sim = WindowSim::new(config, rule, lo, 0);
    let before = sim.slice(lo, 0).to_vec();
    sim.steps(m);
    Ok(sim.slice(lo, 0) == before.as_slice())
}

/// Rows `Φ^t(x)` restricted to places `-k_left..=k_right`, `t = 0..=T`.
pub fn spacetime_window(
    config: &Configuration,
    rule: &LocalRule,
    k_left: i64,
    k_right: i64,
    steps: usize,
) -> Result<Vec<Vec<u8>>> {
    config.check_rule(rule)?;
    let lo = -k_left;
    if lo > k_right {
        return Err(Error::BadDimensions(format!("empty window [{lo}, {k_right}]")));
    }
    let mut sim = WindowSim::new(config, rule, lo, k_right.max(0));
    let mut rows = Vec::with_capacity(steps + 1);
    for t in 0..=steps {
        if t > 0 {
            sim.step();
        }
        rows.push(sim.slice(lo, k_right).to_vec());
    }
    Ok(rows)
}

/// Two-sided eventually periodic configuration in canonical form, used to
/// detect cycles of the whole orbit.
///
/// `x_i = left[i mod |left|]` for `i < start`, `x_i = middle[i - start]`
/// on the middle, `x_i = right[i mod |right|]` beyond it. Both blocks are
/// primitive, the right region is as long as possible and then the left one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct TwoSided {
    left: Vec<u8>,
    start: i64,
    middle: Vec<u8>,
    right: Vec<u8>,
}

fn primitive_block(block: &mut Vec<u8>) {
    let p = block.len();
    let d = (1..=p)
        .find(|&d| p % d == 0 && (d..p).all(|i| block[i] == block[i - d]))
        .unwrap_or(p);
    block.truncate(d);
}

impl TwoSided {
    fn from_config(config: &Configuration) -> Option<Self> {
        let lw = config.left.as_eventually_periodic()?;
        let (lt, lp) = (lw.transient().len(), lw.period().len());
        let (rt, rp) = (config.tail.transient().len(), config.tail.period().len());
        let left = (0..lp as i64)
            .map(|j| lw.period()[((-j - lt as i64 - 1).rem_euclid(lp as i64)) as usize])
            .collect();
        let right = (0..rp as i64)
            .map(|j| config.tail.period()[((j - rt as i64 - 1).rem_euclid(rp as i64)) as usize])
            .collect();
        let start = -(lt as i64);
        let middle = (start..=rt as i64).map(|i| config.symbol(i)).collect();
        let mut x = Self {
            left,
            start,
            middle,
            right,
        };
        x.canonicalize();
        Some(x)
    }

    #[inline]
    fn symbol(&self, i: i64) -> u8 {
        if i < self.start {
            self.left[i.rem_euclid(self.left.len() as i64) as usize]
        } else if i < self.start + self.middle.len() as i64 {
            self.middle[(i - self.start) as usize]
        } else {
            self.right[i.rem_euclid(self.right.len() as i64) as usize]
        }
    }

    fn canonicalize(&mut self) {
        primitive_block(&mut self.left);
        primitive_block(&mut self.right);
        let lp = self.left.len() as i64;
        let rp = self.right.len() as i64;
        let right_at = |i: i64| self.right[i.rem_euclid(rp) as usize];
        let left_at = |i: i64| self.left[i.rem_euclid(lp) as usize];
        let mut end = self.start + self.middle.len() as i64;
        while end > self.start && self.middle[(end - 1 - self.start) as usize] == right_at(end - 1) {
            end -= 1;
        }
        let mut start = self.start;
        if end == start {
            // right pattern may reach into the left region
            let lcm = lp / gcd(lp, rp) * rp;
            let mut steps = 0;
            while steps < lcm && left_at(end - 1) == right_at(end - 1) {
                end -= 1;
                steps += 1;
            }
            if steps == lcm {
                let block = self.right.clone();
                *self = Self {
                    left: block.clone(),
                    start: 0,
                    middle: Vec::new(),
                    right: block,
                };
                return;
            }
            start = end;
        }
        let mut middle: Vec<u8> = (start..end).map(|i| self.symbol(i)).collect();
        let mut drop = 0;
        while drop < middle.len() && middle[drop] == left_at(start + drop as i64) {
            drop += 1;
        }
        middle.drain(..drop);
        self.start = start + drop as i64;
        self.middle = middle;
    }

    fn step(&self, rule: &LocalRule) -> Self {
        let r = rule.anticipation();
        let cyc = |block: &[u8]| -> Vec<u8> {
            let p = block.len();
            (0..p)
                .map(|j| {
                    let w: Vec<u8> = (0..=r).map(|d| block[(j + d) % p]).collect();
                    rule.apply(&w)
                })
                .collect()
        };
        let start = self.start - r as i64;
        let end = self.start + self.middle.len() as i64;
        let mut window: Vec<u8> = Vec::with_capacity((end - start) as usize + r);
        for i in start..end + r as i64 {
            window.push(self.symbol(i));
        }
        let mut next = Self {
            left: cyc(&self.left),
            start,
            middle: rule.slide(&window),
            right: cyc(&self.right),
        };
        next.canonicalize();
        next
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ProbeVerdict {
    /// Signature reached the requested depth: the orbit has at least
    /// `s_1⋯s_depth` distinct points.
    InfiniteSoFar { k: Vec<u64>, moduli: Vec<u64> },
    CycleFound { preperiod: u64, period: u64 },
    Inconclusive { reason: String },
}

impl ProbeVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            ProbeVerdict::InfiniteSoFar { .. } => "INFINITE_SO_FAR",
            ProbeVerdict::CycleFound { .. } => "CYCLE_FOUND",
            ProbeVerdict::Inconclusive { .. } => "INCONCLUSIVE",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ProbeOptions {
    pub depth: usize,
    /// Left extent searched by signature extraction; also caps the middle
    /// length during cycle hashing.
    pub window: usize,
    /// Cap on whole-orbit steps during cycle hashing.
    pub max_steps: usize,
    /// Bound on the tail period searched for periodic tails.
    pub q_max: u64,
    pub max_period: u128,
}

impl ProbeOptions {
    pub fn new(depth: usize, window: usize) -> Self {
        Self {
            depth,
            window,
            max_steps: 4096,
            q_max: 64,
            max_period: SignatureOptions::default().max_period,
        }
    }
}

/// Bounded decision of whether the forward orbit of `config` is finite.
pub fn finite_orbit_probe(
    config: &Configuration,
    rule: &LocalRule,
    opts: ProbeOptions,
) -> Result<ProbeVerdict> {
    config.check_rule(rule)?;
    let sig_opts = SignatureOptions {
        window: opts.window,
        max_period: opts.max_period,
    };
    let mut reason = String::from("signature evidence incomplete");
    let sig = if is_tail_fixed(&config.tail, rule, 1) {
        Some(signature::signature(config, rule, opts.depth, sig_opts))
    } else if least_tail_period(&config.tail, rule, opts.q_max).is_some() {
        Some(signature::signature_periodic(
            config,
            rule,
            opts.depth,
            opts.q_max,
            sig_opts,
        ))
    } else {
        reason = format!("tail not periodic within {}", opts.q_max);
        None
    };
    match sig {
        Some(Ok(sig)) if sig.status == SignatureStatus::Complete => {
            return Ok(ProbeVerdict::InfiniteSoFar {
                k: sig.stages.iter().map(|st| st.k).collect(),
                moduli: sig.moduli(),
            });
        }
        Some(Ok(_)) => reason = "orbit appears finite within window".into(),
        Some(Err(e)) => reason = e.to_string(),
        None => {}
    }
    let Some(mut x) = TwoSided::from_config(config) else {
        return Ok(ProbeVerdict::Inconclusive { reason });
    };
    let mut seen: HashMap<TwoSided, u64> = HashMap::new();
    for n in 0..=opts.max_steps as u64 {
        if let Some(&first) = seen.get(&x) {
            return Ok(ProbeVerdict::CycleFound {
                preperiod: first,
                period: n - first,
            });
        }
        if x.middle.len() > opts.window {
            break;
        }
        let next = x.step(rule);
        seen.insert(x, n);
        x = next;
    }
    Ok(ProbeVerdict::Inconclusive { reason })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xor() -> LocalRule {
        LocalRule::new(2, 1, vec![0, 1, 1, 0]).unwrap()
    }

    fn delta() -> Configuration {
        Configuration::new(2, LeftProvider::Constant(0), 1, EventuallyPeriodicWord::constant(0)).unwrap()
    }

    #[test]
    fn provider_literals() {
        let p: LeftProvider = "ep:1:(01)".parse().unwrap();
        assert_eq!(p.symbol(1, 2), 1);
        assert_eq!(p.symbol(2, 2), 0);
        assert_eq!(p.symbol(3, 2), 1);
        let w: LeftProvider = "word:21".parse().unwrap();
        assert_eq!((w.symbol(1, 3), w.symbol(2, 3), w.symbol(3, 3)), (2, 1, 0));
        assert_eq!("zero".parse::<LeftProvider>().unwrap(), LeftProvider::Constant(0));
        let r: LeftProvider = "rand:9".parse().unwrap();
        assert_eq!(r.to_string(), "rand:9");
        assert!("nope".parse::<LeftProvider>().is_err());
        assert!(Configuration::new(2, w, 0, EventuallyPeriodicWord::constant(0)).is_err());
    }

    #[test]
    fn patched_provider_stays_periodic() {
        let p = LeftProvider::Patched {
            base: Box::new("ep::(01)".parse().unwrap()),
            offset: 4,
            symbol: 0,
        };
        let ep = p.as_eventually_periodic().unwrap();
        for k in 1..20 {
            assert_eq!(ep.symbol(k), p.symbol(k, 2), "k = {k}");
        }
    }

    #[test]
    fn column_examples() {
        let c = column_evolution(&delta(), &xor(), 0, 3).unwrap();
        assert_eq!(c.values, vec![1, 1, 1, 1]);
        let c = column_evolution(&delta(), &xor(), -1, 4).unwrap();
        assert_eq!(c.values, vec![0, 1, 0, 1, 0]);
        let zero = Configuration::constant(2, 0).unwrap();
        for j in [-3, 0, 2] {
            assert_eq!(column_evolution(&zero, &xor(), j, 5).unwrap().values, vec![0; 6]);
        }
    }

    #[test]
    fn suffix_examples() {
        assert!(suffix_fixed(&delta(), &xor(), 0, 1).unwrap());
        assert!(!suffix_fixed(&delta(), &xor(), 1, 1).unwrap());
        assert!(suffix_fixed(&delta(), &xor(), 1, 2).unwrap());
        let zero = Configuration::constant(2, 0).unwrap();
        for k in 0..6 {
            for m in 1..4 {
                assert!(suffix_fixed(&zero, &xor(), k, m).unwrap());
            }
        }
        let moving = Configuration::new(2, LeftProvider::Constant(0), 0, "11:(0)".parse().unwrap()).unwrap();
        assert!(matches!(
            suffix_fixed(&moving, &xor(), 0, 1),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn spacetime_examples() {
        let rows = spacetime_window(&delta(), &xor(), 2, 1, 2).unwrap();
        assert_eq!(rows, vec![vec![0, 0, 1, 0], vec![0, 1, 1, 0], vec![1, 0, 1, 0]]);
        let zero = Configuration::constant(2, 0).unwrap();
        let rows = spacetime_window(&zero, &xor(), 3, 3, 4).unwrap();
        assert!(rows.iter().flatten().all(|&v| v == 0));
        let rows = spacetime_window(&delta(), &xor(), 1, 2, 0).unwrap();
        assert_eq!(rows, vec![vec![0, 1, 0, 0]]);
    }

    #[test]
    fn probe_examples() {
        let zero = Configuration::constant(2, 0).unwrap();
        let v = finite_orbit_probe(&zero, &xor(), ProbeOptions::new(6, 256)).unwrap();
        assert_eq!(v, ProbeVerdict::CycleFound { preperiod: 0, period: 1 });

        let v = finite_orbit_probe(&delta(), &xor(), ProbeOptions::new(6, 256)).unwrap();
        match v {
            ProbeVerdict::InfiniteSoFar { k, moduli } => {
                assert_eq!(k, vec![1, 2, 4, 8, 16, 32]);
                assert_eq!(moduli, vec![2; 6]);
            }
            other => panic!("{other:?}"),
        }

        // ...110110... with x_0 = 1, x_1 = 0, x_2 = 1, x_3 = 1
        let per = Configuration::new(
            2,
            "ep::(101)".parse().unwrap(),
            1,
            ":(011)".parse().unwrap(),
        )
        .unwrap();
        let row: Vec<u8> = (-6..=5).map(|i| per.symbol(i)).collect();
        assert_eq!(row, vec![1, 0, 1, 1, 0, 1, 1, 0, 1, 1, 0, 1]);
        let v = finite_orbit_probe(&per, &xor(), ProbeOptions::new(6, 256)).unwrap();
        assert_eq!(v, ProbeVerdict::CycleFound { preperiod: 0, period: 3 });
    }

    #[test]
    fn two_sided_canonical_form_is_unique() {
        let a = Configuration::new(2, "ep::(01)".parse().unwrap(), 0, ":(10)".parse().unwrap()).unwrap();
        let b = Configuration::new(2, "ep:01:(01)".parse().unwrap(), 0, "10:(10)".parse().unwrap()).unwrap();
        let ta = TwoSided::from_config(&a).unwrap();
        let tb = TwoSided::from_config(&b).unwrap();
        assert_eq!(ta, tb);
        for i in -10..10 {
            assert_eq!(ta.symbol(i), a.symbol(i));
        }
    }

    #[test]
    fn window_sim_matches_columns() {
        let rule = LocalRule::from_fn(3, 2, |w| (w[0] + w[1] * w[2] + 1) % 3).unwrap();
        let config = Configuration::new(3, LeftProvider::Random { seed: 5 }, 2, "12:(0)".parse().unwrap()).unwrap();
        let rows = spacetime_window(&config, &rule, 6, 3, 10).unwrap();
        let mut ws = ColumnWorkspace::new(&config, &rule, 10).unwrap();
        for j in -6i64..=3 {
            let col = ws.column(j);
            for t in 0..=10 {
                assert_eq!(rows[t][(j + 6) as usize], col[t]);
            }
        }
    }
}

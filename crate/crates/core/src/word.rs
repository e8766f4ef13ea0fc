//! Eventually periodic one-sided words and their orbits under the
//! one-sided automaton.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rule::LocalRule;

/// The one-sided sequence `transient · period^∞`, always kept canonical:
/// the period block is primitive and the transient is as short as possible.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EventuallyPeriodicWord {
    transient: Vec<u8>,
    period: Vec<u8>,
}

impl EventuallyPeriodicWord {
    pub fn new(transient: Vec<u8>, period: Vec<u8>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::BadDimensions("period block must be nonempty".into()));
        }
        let mut w = Self { transient, period };
        w.canonicalize();
        Ok(w)
    }

    /// The constant sequence `c^∞`.
    pub fn constant(c: u8) -> Self {
        Self {
            transient: Vec::new(),
            period: vec![c],
        }
    }

    pub fn transient(&self) -> &[u8] {
        &self.transient
    }

    pub fn period(&self) -> &[u8] {
        &self.period
    }

    /// `|transient| + |period|`: this many leading symbols determine any word
    /// whose transient and period are no longer.
    pub fn span(&self) -> usize {
        self.transient.len() + self.period.len()
    }

    /// Symbol at 1-based position `i`.
    #[inline]
    pub fn symbol(&self, i: usize) -> u8 {
        debug_assert!(i >= 1);
        let t = self.transient.len();
        if i <= t {
            self.transient[i - 1]
        } else {
            self.period[(i - t - 1) % self.period.len()]
        }
    }

    pub fn max_symbol(&self) -> u8 {
        self.transient
            .iter()
            .chain(&self.period)
            .copied()
            .max()
            .unwrap_or(0)
    }

    pub fn check_alphabet(&self, alphabet: usize) -> Result<()> {
        let m = self.max_symbol();
        if m as usize >= alphabet {
            return Err(Error::SymbolOutOfRange {
                symbol: m as u32,
                alphabet,
            });
        }
        Ok(())
    }

    fn canonicalize(&mut self) {
        let p = self.period.len();
        let d = (1..=p)
            .find(|&d| p % d == 0 && (d..p).all(|i| self.period[i] == self.period[i - d]))
            .unwrap_or(p);
        self.period.truncate(d);
        while let Some(&last) = self.transient.last() {
            if last != *self.period.last().unwrap() {
                break;
            }
            self.transient.pop();
            self.period.rotate_right(1);
        }
    }

    /// Image under the one-sided automaton `Φ_R`.
    pub fn step(&self, rule: &LocalRule) -> Self {
        let t = self.transient.len();
        let p = self.period.len();
        let r = rule.anticipation();
        let source: Vec<u8> = (1..=t + p + r).map(|i| self.symbol(i)).collect();
        let image = rule.slide(&source);
        let mut w = Self {
            transient: image[..t].to_vec(),
            period: image[t..t + p].to_vec(),
        };
        w.canonicalize();
        w
    }

    /// `Φ_R^n(self)`, iterating at most until the orbit cycles.
    pub fn step_n(&self, rule: &LocalRule, n: u64) -> Self {
        let mut orbit = TailOrbit::new(rule, self.clone());
        orbit.state(n).clone()
    }
}

fn symbol_char(v: u8) -> char {
    std::char::from_digit(v as u32, 36).unwrap_or('?')
}

/// Parses a word of base-36 digits.
pub fn parse_symbols(text: &str) -> Result<Vec<u8>> {
    text.chars()
        .map(|c| {
            c.to_digit(36)
                .map(|d| d as u8)
                .ok_or_else(|| Error::Parse(format!("invalid symbol {c:?}")))
        })
        .collect()
}

pub fn format_symbols(word: &[u8]) -> String {
    word.iter().map(|&v| symbol_char(v)).collect()
}

impl fmt::Display for EventuallyPeriodicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:({})",
            format_symbols(&self.transient),
            format_symbols(&self.period)
        )
    }
}

/// `TRANSIENT:(PERIOD)`, e.g. `1:(0)` or `:(21)`.
impl FromStr for EventuallyPeriodicWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (transient, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("tail literal {s:?} lacks ':'")))?;
        let period = rest
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("tail literal {s:?} needs a (PERIOD) block")))?;
        Self::new(parse_symbols(transient)?, parse_symbols(period)?)
    }
}

impl Serialize for EventuallyPeriodicWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Lazily computed orbit of a tail under `Φ_R`, with cycle detection.
///
/// Iterating `Φ_R` never lengthens the transient nor the period, so the
/// orbit visits finitely many canonical words and is eventually periodic.
#[derive(Debug, Clone)]
pub struct TailOrbit<'r> {
    rule: &'r LocalRule,
    states: Vec<EventuallyPeriodicWord>,
    seen: HashMap<EventuallyPeriodicWord, usize>,
    cycle: Option<(usize, usize)>,
}

impl<'r> TailOrbit<'r> {
    pub fn new(rule: &'r LocalRule, start: EventuallyPeriodicWord) -> Self {
        let mut seen = HashMap::new();
        seen.insert(start.clone(), 0);
        Self {
            rule,
            states: vec![start],
            seen,
            cycle: None,
        }
    }

    fn extend(&mut self) {
        let next = self.states.last().unwrap().step(self.rule);
        if let Some(&first) = self.seen.get(&next) {
            self.cycle = Some((first, self.states.len() - first));
        } else {
            self.seen.insert(next.clone(), self.states.len());
            self.states.push(next);
        }
    }

    fn resolve(&mut self, t: u64) -> usize {
        loop {
            if let Some((mu, lambda)) = self.cycle {
                if (t as u128) < mu as u128 {
                    return t as usize;
                }
                return mu + ((t - mu as u64) % lambda as u64) as usize;
            }
            if (t as u128) < self.states.len() as u128 {
                return t as usize;
            }
            self.extend();
        }
    }

    /// `Φ_R^t(start)`.
    pub fn state(&mut self, t: u64) -> &EventuallyPeriodicWord {
        let i = self.resolve(t);
        &self.states[i]
    }

    /// Symbol `i ≥ 1` of `Φ_R^t(start)`.
    pub fn symbol(&mut self, t: u64, i: usize) -> u8 {
        self.state(t).symbol(i)
    }

    /// `(preperiod, period)` of the orbit, computing it fully if needed.
    pub fn cycle(&mut self) -> (usize, usize) {
        while self.cycle.is_none() {
            self.extend();
        }
        self.cycle.unwrap()
    }

    /// Cycle data if it is already known or found within `limit` states.
    pub fn cycle_within(&mut self, limit: usize) -> Option<(usize, usize)> {
        while self.cycle.is_none() && self.states.len() <= limit {
            self.extend();
        }
        self.cycle
    }
}

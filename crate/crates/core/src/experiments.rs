//! Sampling and witness searches around the genericity and density results:
//! how often random left halves give odometer orbits, single-site escapes
//! from `Fix(Φ^j)`, and spatially periodic `Φ`-periodic points.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::orbit::{finite_orbit_probe, Configuration, LeftProvider, ProbeOptions, ProbeVerdict, WindowSim};
use crate::rng;
use crate::rule::{LocalRule, DEFAULT_TABLE_BUDGET};
use crate::tails::is_tail_fixed;
use crate::word::{format_symbols, EventuallyPeriodicWord};

/// Largest `m` tried when checking whether some `Φ^m` is the identity.
pub const IDENTITY_ORDER_BOUND: usize = 64;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRecord {
    pub trial: u64,
    pub left: String,
    pub anchor: u8,
    #[serde(flatten)]
    pub verdict: ProbeVerdict,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PrevalenceStats {
    pub seed: u64,
    pub trials: u64,
    pub depth: usize,
    pub window: usize,
    pub infinite_so_far: u64,
    pub cycle_found: u64,
    pub inconclusive: u64,
    /// `infinite_so_far / trials`; absent when there were no trials.
    pub fraction: Option<f64>,
    /// Observed `(s_1, .., s_depth)`, keyed as comma-separated moduli.
    pub histogram: BTreeMap<String, u64>,
    /// Least `m ≤ IDENTITY_ORDER_BOUND` with `Φ^m = id`. When present every
    /// orbit is finite, whatever the per-trial verdicts say.
    pub identity_order: Option<usize>,
    pub records: Vec<TrialRecord>,
}

impl PrevalenceStats {
    pub fn all_orbits_finite(&self) -> bool {
        self.identity_order.is_some()
    }
}

/// Probes `trials` configurations with the given fixed tail and seeded
/// random left halves. Trial `t` uses the key `derive(seed, t)` for both
/// its left half and its anchor, so results do not depend on `exec`.
pub fn sample_prevalence(
    rule: &LocalRule,
    tail: &EventuallyPeriodicWord,
    trials: u64,
    depth: usize,
    window: usize,
    seed: u64,
    exec: Exec,
) -> Result<PrevalenceStats> {
    tail.check_alphabet(rule.alphabet())?;
    if !is_tail_fixed(tail, rule, 1) {
        return Err(Error::TailNotFixed);
    }
    let s = rule.alphabet();
    let opts = ProbeOptions::new(depth, window);
    let outcomes = exec.map_range(trials as usize, |t| -> Result<TrialRecord> {
        let key = rng::derive(seed, t as u64);
        let left = LeftProvider::Random { seed: key };
        let anchor = rng::symbol(key, 0, s);
        let config = Configuration::new(s, left.clone(), anchor, tail.clone())?;
        Ok(TrialRecord {
            trial: t as u64,
            left: left.to_string(),
            anchor,
            verdict: finite_orbit_probe(&config, rule, opts)?,
        })
    });
    let records: Vec<TrialRecord> = outcomes.into_iter().collect::<Result<_>>()?;

    let mut histogram = BTreeMap::new();
    let (mut inf, mut cyc, mut inc) = (0, 0, 0);
    for rec in &records {
        match &rec.verdict {
            ProbeVerdict::InfiniteSoFar { moduli, .. } => {
                inf += 1;
                let key = moduli.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
                *histogram.entry(key).or_insert(0) += 1;
            }
            ProbeVerdict::CycleFound { .. } => cyc += 1,
            ProbeVerdict::Inconclusive { .. } => inc += 1,
        }
    }
    let identity_order = if rule.is_left_permutive() {
        rule.identity_order(IDENTITY_ORDER_BOUND, DEFAULT_TABLE_BUDGET)?
    } else {
        None
    };
    Ok(PrevalenceStats {
        seed,
        trials,
        depth,
        window,
        infinite_so_far: inf,
        cycle_found: cyc,
        inconclusive: inc,
        fraction: (trials > 0).then(|| inf as f64 / trials as f64),
        histogram,
        identity_order,
        records,
    })
}

/// A configuration one symbol away from a `Φ^j`-fixed point that is no
/// longer `Φ^j`-fixed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EscapeWitness {
    pub modified: Configuration,
    /// The changed place, at or left of `-position_bound`.
    pub position: i64,
    pub symbol: u8,
    /// A place where `Φ^j` of `modified` differs from `modified`.
    pub coordinate: i64,
    pub before: u8,
    pub after: u8,
}

/// Places left of `-position_bound` tried before giving up.
pub const ESCAPE_SEARCH_SPAN: usize = 256;

/// Changes one symbol at a place `≤ -position_bound` so that the result
/// leaves `Fix(Φ^j)`.
pub fn perturbation_escape(
    rule: &LocalRule,
    config: &Configuration,
    j: u64,
    position_bound: usize,
) -> Result<EscapeWitness> {
    config.check_rule(rule)?;
    if j == 0 {
        return Err(Error::PreconditionViolated("j must be at least 1".into()));
    }
    if !is_tail_fixed(&config.tail, rule, j) {
        return Err(Error::PreconditionViolated(format!(
            "tail {} is not fixed by the {j}-th power",
            config.tail
        )));
    }
    let reach = (j as usize).saturating_mul(rule.anticipation()) as i64;
    let far = (position_bound + ESCAPE_SEARCH_SPAN) as i64;
    let lo = -(far + reach);
    let mut sim = WindowSim::new(config, rule, lo, 0);
    let before = sim.slice(lo, 0).to_vec();
    sim.steps(j);
    if let Some(i) = (lo..=0).find(|&i| sim.get(i) != before[(i - lo) as usize]) {
        return Err(Error::PreconditionViolated(format!(
            "configuration is not fixed by the {j}-th power at place {i}"
        )));
    }

    let s = rule.alphabet();
    for n in position_bound.max(1)..=position_bound.max(1) + ESCAPE_SEARCH_SPAN {
        let original = config.symbol(-(n as i64));
        for c in (0..s as u8).filter(|&c| c != original) {
            let modified = config.with_left(LeftProvider::Patched {
                base: Box::new(config.left.clone()),
                offset: n,
                symbol: c,
            })?;
            // places right of -n are untouched by the change
            let lo = -(n as i64) - reach;
            let hi = -(n as i64);
            let mut sim = WindowSim::new(&modified, rule, lo, 0);
            sim.steps(j);
            let hit = (lo..=hi).rev().find(|&i| sim.get(i) != modified.symbol(i));
            if let Some(i) = hit {
                return Ok(EscapeWitness {
                    before: modified.symbol(i),
                    after: sim.get(i),
                    modified,
                    position: -(n as i64),
                    symbol: c,
                    coordinate: i,
                });
            }
        }
    }
    Err(Error::NoWitnessFound(format!(
        "no single change in places -{}..=-{position_bound} leaves Fix(Φ^{j})",
        position_bound + ESCAPE_SEARCH_SPAN
    )))
}

/// `x_i = block[i mod N]`, with `Φ^period(x) = x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodicPoint {
    #[serde(serialize_with = "serialize_block")]
    pub block: Vec<u8>,
    pub spatial_period: usize,
    pub temporal_period: usize,
}

fn serialize_block<S: serde::Serializer>(block: &[u8], ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.serialize_str(&format_symbols(block))
}

/// `Φ` on the torus of `N`-periodic configurations.
pub fn torus_step(rule: &LocalRule, block: &[u8]) -> Vec<u8> {
    let n = block.len();
    let r = rule.anticipation();
    let mut window = vec![0u8; r + 1];
    (0..n)
        .map(|i| {
            for (d, slot) in window.iter_mut().enumerate() {
                *slot = block[(i + d) % n];
            }
            rule.apply(&window)
        })
        .collect()
}

fn contains_cyclic(block: &[u8], word: &[u8]) -> bool {
    if word.is_empty() {
        return true;
    }
    let n = block.len();
    (0..n).any(|start| word.iter().enumerate().all(|(d, &w)| block[(start + d) % n] == w))
}

/// Searches spatial periods `N = 1..=max_spatial`, blocks in lexicographic
/// order, for a `Φ`-periodic configuration with period `≤ period_bound`
/// containing `word`.
pub fn periodic_point_search(
    rule: &LocalRule,
    word: &[u8],
    period_bound: usize,
    max_spatial: usize,
    exec: Exec,
) -> Result<Option<PeriodicPoint>> {
    let s = rule.alphabet();
    if let Some(&v) = word.iter().find(|&&v| v as usize >= s) {
        return Err(Error::SymbolOutOfRange {
            symbol: v as u32,
            alphabet: s,
        });
    }
    for n in 1..=max_spatial {
        let Some(total) = crate::rule::checked_pow(s, n) else {
            break;
        };
        if total > DEFAULT_TABLE_BUDGET {
            break;
        }
        let found = exec.find_map_first((0..total).collect(), |code| {
            let mut block = vec![0u8; n];
            let mut c = code;
            for slot in block.iter_mut().rev() {
                *slot = (c % s) as u8;
                c /= s;
            }
            if !contains_cyclic(&block, word) {
                return None;
            }
            let mut x = block.clone();
            for t in 1..=period_bound {
                x = torus_step(rule, &x);
                if x == block {
                    return Some(PeriodicPoint {
                        block,
                        spatial_period: n,
                        temporal_period: t,
                    });
                }
            }
            None
        });
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xor() -> LocalRule {
        LocalRule::new(2, 1, vec![0, 1, 1, 0]).unwrap()
    }

    fn z3() -> LocalRule {
        LocalRule::new(3, 1, vec![0, 2, 0, 1, 1, 1, 2, 0, 2]).unwrap()
    }

    fn zero_tail() -> EventuallyPeriodicWord {
        EventuallyPeriodicWord::constant(0)
    }

    #[test]
    fn prevalence_xor() {
        let stats = sample_prevalence(&xor(), &zero_tail(), 40, 6, 4096, 1, Exec::default()).unwrap();
        assert_eq!(stats.records.len(), 40);
        assert!(stats.fraction.unwrap() > 0.9, "{stats:?}");
        assert_eq!(stats.identity_order, None);
        let again = sample_prevalence(&xor(), &zero_tail(), 40, 6, 4096, 1, Exec::Sequential).unwrap();
        assert_eq!(stats, again);
    }

    #[test]
    fn prevalence_edge_cases() {
        let empty = sample_prevalence(&xor(), &zero_tail(), 0, 6, 256, 1, Exec::default()).unwrap();
        assert_eq!((empty.trials, empty.fraction), (0, None));
        let stats = sample_prevalence(&z3(), &zero_tail(), 20, 6, 256, 3, Exec::default()).unwrap();
        assert_eq!(stats.fraction, Some(0.0));
        assert_eq!(stats.identity_order, Some(2));
        assert!(stats.all_orbits_finite());
        let moving: EventuallyPeriodicWord = "11:(0)".parse().unwrap();
        assert_eq!(
            sample_prevalence(&xor(), &moving, 4, 6, 256, 1, Exec::default()),
            Err(Error::TailNotFixed)
        );
    }

    #[test]
    fn escape_examples() {
        let zero = Configuration::constant(2, 0).unwrap();
        let w = perturbation_escape(&xor(), &zero, 1, 10).unwrap();
        assert_eq!((w.position, w.symbol, w.coordinate), (-10, 1, -11));
        assert_eq!((w.before, w.after), (0, 1));

        let z3zero = Configuration::constant(3, 0).unwrap();
        assert!(matches!(
            perturbation_escape(&z3(), &z3zero, 2, 10),
            Err(Error::NoWitnessFound(_))
        ));

        let delta = Configuration::new(2, LeftProvider::Constant(0), 1, zero_tail()).unwrap();
        assert!(matches!(
            perturbation_escape(&xor(), &delta, 1, 10),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn periodic_points() {
        let p = periodic_point_search(&xor(), &[1], 8, 8, Exec::default()).unwrap().unwrap();
        assert_eq!((p.spatial_period, p.temporal_period), (3, 3));
        assert_eq!(p.block, vec![0, 1, 1]);
        assert_eq!(torus_step(&xor(), &p.block), vec![1, 0, 1]);

        let p = periodic_point_search(&xor(), &[0], 8, 8, Exec::default()).unwrap().unwrap();
        assert_eq!((p.block.as_slice(), p.temporal_period), (&[0u8][..], 1));

        let p = periodic_point_search(&z3(), &[1], 2, 4, Exec::default()).unwrap().unwrap();
        assert_eq!((p.block.as_slice(), p.temporal_period), (&[1u8][..], 1));

        assert!(periodic_point_search(&xor(), &[2], 8, 4, Exec::default()).is_err());
    }
}

//! Odometer signatures of forward orbits and the finite check of the
//! digit/window correspondence.
//!
//! With the tail fixed, stage `i` finds the leftmost coordinate `-k_i` whose
//! suffix is no longer fixed by `Φ^{P_{i-1}}` and the least multiplier
//! `s_i` restoring it, so `P_i = P_{i-1} s_i`. The suffix from `-k_i` then has
//! least period exactly `P_i`, which is what makes `Φ^n(x) ↦ (n in base S)`
//! a conjugacy onto the `(s_1, s_2, ..)`-adic odometer.

use std::collections::HashMap;

use serde::Serialize;

use crate::adic::{expansion, modulus_product, AdicInteger};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::orbit::{Configuration, WindowSim};
use crate::rule::LocalRule;
use crate::tails::{is_tail_fixed, least_tail_period};
use crate::word::TailOrbit;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Stage {
    pub k: u64,
    pub s: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SignatureStatus {
    Complete,
    /// No non-fixed suffix within the window after `stage` stages. This is a
    /// bounded verdict, not a proof that the orbit is finite.
    OrbitAppearsFinite { stage: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OdometerSignature {
    /// Least period `q > 1` of the tail, when the signature was taken for
    /// `Φ^q`; it is the leading modulus.
    pub tail_period: Option<u64>,
    pub stages: Vec<Stage>,
    pub status: SignatureStatus,
}

impl OdometerSignature {
    /// `(q, s_1, s_2, ..)` or `(s_1, s_2, ..)`.
    pub fn moduli(&self) -> Vec<u64> {
        self.tail_period
            .into_iter()
            .chain(self.stages.iter().map(|s| s.s))
            .collect()
    }

    pub fn stage_moduli(&self) -> Vec<u64> {
        self.stages.iter().map(|s| s.s).collect()
    }

    /// Prefix products of `moduli()`.
    pub fn accumulated(&self) -> Vec<u128> {
        let mut acc = 1u128;
        self.moduli()
            .into_iter()
            .map(|m| {
                acc = acc.saturating_mul(m as u128);
                acc
            })
            .collect()
    }

    /// `(k, s)` pairs, with `(0, q)` leading for periodic tails.
    pub fn stage_pairs(&self) -> Vec<[u64; 2]> {
        self.tail_period
            .map(|q| [0, q])
            .into_iter()
            .chain(self.stages.iter().map(|s| [s.k, s.s]))
            .collect()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SignatureOptions {
    /// Largest `k` examined when searching for a non-fixed suffix.
    pub window: usize,
    /// Cap on the accumulated period, counted in steps of `Φ`.
    pub max_period: u128,
}

impl Default for SignatureOptions {
    fn default() -> Self {
        Self {
            window: 1 << 16,
            max_period: 1 << 24,
        }
    }
}

/// Signature of the orbit of `config`, whose tail must be `Φ_R`-fixed.
pub fn signature(
    config: &Configuration,
    rule: &LocalRule,
    depth: usize,
    opts: SignatureOptions,
) -> Result<OdometerSignature> {
    config.check_rule(rule)?;
    if !rule.is_left_permutive() {
        return Err(Error::NotPermutive("signature needs a left-permutive rule".into()));
    }
    if !is_tail_fixed(&config.tail, rule, 1) {
        return Err(Error::TailNotFixed);
    }
    extract(config, rule, depth, 1, opts)
}

/// Signature for a tail of least period `q > 1`: the stages are those of
/// `Φ^q` and `q` leads the moduli.
pub fn signature_periodic(
    config: &Configuration,
    rule: &LocalRule,
    depth: usize,
    q_max: u64,
    opts: SignatureOptions,
) -> Result<OdometerSignature> {
    config.check_rule(rule)?;
    if !rule.is_left_permutive() {
        return Err(Error::NotPermutive("signature needs a left-permutive rule".into()));
    }
    match least_tail_period(&config.tail, rule, q_max) {
        Some(q) if q > 1 => extract(config, rule, depth, q, opts),
        _ => Err(Error::TailNotPeriodic(q_max)),
    }
}

fn extract(
    config: &Configuration,
    rule: &LocalRule,
    depth: usize,
    step: u64,
    opts: SignatureOptions,
) -> Result<OdometerSignature> {
    let s = rule.alphabet();
    let r = rule.anticipation();
    let m = rule.suffix_count();
    let table = rule.table();
    let tail_period = (step > 1).then_some(step);
    let cap = usize::try_from(opts.max_period).unwrap_or(usize::MAX);
    if step as u128 > opts.max_period {
        return Err(Error::WindowExhausted(format!(
            "tail period {step} exceeds cap {}",
            opts.max_period
        )));
    }

    // Columns are generated right to left. The suffix from -k+1 is periodic
    // in time with period `period`; `sidx[t]` encodes (t_1, .., t_r) seen by
    // column -k at time t. Column -k then has period `period * mult`, where
    // `mult` is the cycle length of x_{-k} under the permutation composed
    // over one period of its suffix.
    let mut orbit = TailOrbit::new(rule, config.tail.clone());
    let mut period = step as usize;
    let mut sidx: Vec<u32> = (0..step)
        .map(|t| (1..=r).fold(0u32, |acc, j| acc * s as u32 + orbit.symbol(t, j) as u32))
        .collect();
    let lead = m / s.max(1);
    let mut stages: Vec<Stage> = Vec::with_capacity(depth);
    let mut col: Vec<u8> = Vec::new();

    for k in 0..=opts.window as u64 {
        if stages.len() == depth {
            break;
        }
        let start = config.symbol(-(k as i64));
        let mut v = start;
        let mut mult = 1usize;
        col.clear();
        loop {
            for &u in &sidx {
                col.push(v);
                v = table[v as usize * m + u as usize];
            }
            if v == start {
                break;
            }
            if mult >= s {
                return Err(Error::Internal(format!(
                    "place -{k}: cycle longer than the alphabet size {s}"
                )));
            }
            if period.saturating_mul(mult + 1) > cap {
                return Err(Error::WindowExhausted(format!(
                    "accumulated period would exceed cap {} at stage {}",
                    opts.max_period,
                    stages.len() + 1
                )));
            }
            mult += 1;
        }
        if mult > 1 {
            stages.push(Stage { k, s: mult as u64 });
            let base = sidx.len();
            sidx.reserve(base * (mult - 1));
            for i in 0..base * (mult - 1) {
                sidx.push(sidx[i]);
            }
            period *= mult;
        }
        if r > 0 {
            for (u, &c) in sidx.iter_mut().zip(&col) {
                *u = c as u32 * lead as u32 + *u / s as u32;
            }
        }
    }
    let status = if stages.len() == depth {
        SignatureStatus::Complete
    } else {
        SignatureStatus::OrbitAppearsFinite { stage: stages.len() }
    };
    Ok(OdometerSignature {
        tail_period,
        stages,
        status,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// `correspondence`, `shift` or `arithmetic`.
    pub kind: &'static str,
    pub m: u64,
    pub n: u64,
    /// Number of leading digits compared.
    pub level: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugacyReport {
    pub moduli: Vec<u64>,
    pub iterations: u64,
    pub pairs_checked: u64,
    pub violation_count: u64,
    /// Lexicographic in `(m, n, level)`, capped.
    pub violations: Vec<Violation>,
}

impl ConjugacyReport {
    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }
}

const MAX_LISTED_VIOLATIONS: usize = 64;

/// Checks, for all `0 ≤ m < n ≤ N` and every level `i`, that the base-S
/// expansions of `m` and `n` agree in their first `i` digits exactly when
/// `Φ^m(x)` and `Φ^n(x)` agree on the level-`i` window, and that `+1` on
/// expansions tracks one step of `Φ`.
///
/// For fixed tails the level-`i` window is `[-k_i, 0]`. For periodic tails
/// level 1 is the tail window `[1, L]` (`L` = transient + period length)
/// and level `i + 1` is `[-k_i, L]`.
pub fn verify_conjugacy(
    config: &Configuration,
    rule: &LocalRule,
    sig: &OdometerSignature,
    iterations: u64,
    exec: Exec,
) -> Result<ConjugacyReport> {
    config.check_rule(rule)?;
    let moduli = sig.moduli();
    if moduli.is_empty() {
        return Err(Error::PreconditionViolated("signature has no stages".into()));
    }
    if let Some(total) = modulus_product(&moduli) {
        if iterations as u128 >= total {
            return Err(Error::PreconditionViolated(format!(
                "N = {iterations} must be below the modulus product {total}"
            )));
        }
    }
    let hi: i64 = if sig.tail_period.is_some() {
        config.tail.span() as i64
    } else {
        0
    };
    let mut levels: Vec<(i64, i64)> = Vec::new();
    if sig.tail_period.is_some() {
        levels.push((1, hi));
    }
    levels.extend(sig.stages.iter().map(|st| (-(st.k as i64), hi)));
    let lo = levels.iter().map(|l| l.0).min().unwrap().min(0);

    let mut sim = WindowSim::new(config, rule, lo, hi);
    let mut rows: Vec<Vec<u8>> = Vec::with_capacity(iterations as usize + 1);
    for n in 0..=iterations {
        if n > 0 {
            sim.step();
        }
        rows.push(sim.slice(lo, hi).to_vec());
    }
    let classes: Vec<Vec<u32>> = levels
        .iter()
        .map(|&(a, b)| {
            let (from, to) = ((a - lo) as usize, (b - lo) as usize);
            let mut ids: HashMap<&[u8], u32> = HashMap::new();
            rows.iter()
                .map(|row| {
                    let next = ids.len() as u32;
                    *ids.entry(&row[from..=to]).or_insert(next)
                })
                .collect()
        })
        .collect();
    let exps: Vec<AdicInteger> = (0..=iterations)
        .map(|n| expansion(n as u128, &moduli))
        .collect::<Result<_>>()?;

    let count = iterations as usize + 1;
    let per_m = exec.map_range(count, |m| {
        let mut found = Vec::new();
        for n in m + 1..count {
            for (li, cls) in classes.iter().enumerate() {
                let level = li + 1;
                let digits = exps[m].agrees_with(&exps[n], level);
                let windows = cls[m] == cls[n];
                if digits != windows {
                    found.push(Violation {
                        kind: "correspondence",
                        m: m as u64,
                        n: n as u64,
                        level,
                    });
                }
            }
        }
        found
    });

    // +1 on digits versus one step of Φ, pushed through the window classes.
    let mut shift = Vec::new();
    let prefix_class: Vec<HashMap<&[u64], u32>> = classes
        .iter()
        .enumerate()
        .map(|(li, cls)| {
            let mut map = HashMap::new();
            for (n, e) in exps.iter().enumerate() {
                map.entry(&e.digits()[..=li]).or_insert(cls[n]);
            }
            map
        })
        .collect();
    for n in 0..iterations as usize {
        let (next, _) = exps[n].add_one();
        if next != exps[n + 1] {
            shift.push(Violation {
                kind: "arithmetic",
                m: n as u64,
                n: n as u64 + 1,
                level: moduli.len(),
            });
        }
        for (li, cls) in classes.iter().enumerate() {
            if prefix_class[li].get(&next.digits()[..=li]) != Some(&cls[n + 1]) {
                shift.push(Violation {
                    kind: "shift",
                    m: n as u64,
                    n: n as u64 + 1,
                    level: li + 1,
                });
            }
        }
    }

    let mut all: Vec<Violation> = per_m.into_iter().flatten().chain(shift).collect();
    all.sort_by_key(|v| (v.m, v.n, v.level, v.kind));
    let violation_count = all.len() as u64;
    all.truncate(MAX_LISTED_VIOLATIONS);
    Ok(ConjugacyReport {
        moduli,
        iterations,
        pairs_checked: (count * (count - 1) / 2) as u64,
        violation_count,
        violations: all,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbit::LeftProvider;
    use crate::word::EventuallyPeriodicWord;

    fn xor() -> LocalRule {
        LocalRule::new(2, 1, vec![0, 1, 1, 0]).unwrap()
    }

    fn delta(s: usize) -> Configuration {
        Configuration::new(s, LeftProvider::Constant(0), 1, EventuallyPeriodicWord::constant(0)).unwrap()
    }

    fn pairs(sig: &OdometerSignature) -> Vec<(u64, u64)> {
        sig.stages.iter().map(|s| (s.k, s.s)).collect()
    }

    #[test]
    fn xor_delta_signature() {
        let sig = signature(&delta(2), &xor(), 4, SignatureOptions::default()).unwrap();
        assert_eq!(pairs(&sig), vec![(1, 2), (2, 2), (4, 2), (8, 2)]);
        assert_eq!(sig.status, SignatureStatus::Complete);
        assert_eq!(sig.accumulated(), vec![2, 4, 8, 16]);
    }

    #[test]
    fn mod3_delta_signature() {
        let rule = LocalRule::from_fn(3, 1, |w| (w[0] + w[1]) % 3).unwrap();
        let sig = signature(&delta(3), &rule, 3, SignatureOptions::default()).unwrap();
        assert_eq!(pairs(&sig), vec![(1, 3), (3, 3), (9, 3)]);
        let report = verify_conjugacy(&delta(3), &rule, &sig, 26, Exec::default()).unwrap();
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn fixed_point_appears_finite() {
        let zero = Configuration::constant(2, 0).unwrap();
        let opts = SignatureOptions { window: 512, ..Default::default() };
        let sig = signature(&zero, &xor(), 4, opts).unwrap();
        assert!(sig.stages.is_empty());
        assert_eq!(sig.status, SignatureStatus::OrbitAppearsFinite { stage: 0 });
    }

    #[test]
    fn tail_guards() {
        let moving = Configuration::new(2, LeftProvider::Constant(0), 0, "11:(0)".parse().unwrap()).unwrap();
        assert_eq!(
            signature(&moving, &xor(), 3, SignatureOptions::default()),
            Err(Error::TailNotFixed)
        );
        assert_eq!(
            signature_periodic(&delta(2), &xor(), 3, 16, SignatureOptions::default()),
            Err(Error::TailNotPeriodic(16))
        );
    }

    #[test]
    fn periodic_tail_signature() {
        let config = Configuration::new(2, LeftProvider::Constant(0), 0, "11:(0)".parse().unwrap()).unwrap();
        let sig = signature_periodic(&config, &xor(), 3, 16, SignatureOptions::default()).unwrap();
        assert_eq!(sig.tail_period, Some(2));
        assert_eq!(sig.moduli(), vec![2, 2, 2, 2]);
        let report = verify_conjugacy(&config, &xor(), &sig, 15, Exec::default()).unwrap();
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn conjugacy_and_falsification() {
        let sig = signature(&delta(2), &xor(), 4, SignatureOptions::default()).unwrap();
        let report = verify_conjugacy(&delta(2), &xor(), &sig, 15, Exec::default()).unwrap();
        assert!(report.passed());
        assert_eq!(report.pairs_checked, 120);

        let mut bad = sig.clone();
        bad.stages[0].s = 3;
        let report = verify_conjugacy(&delta(2), &xor(), &bad, 15, Exec::default()).unwrap();
        assert!(report.violation_count >= 1);
        let mut sorted = report.violations.clone();
        sorted.sort_by_key(|v| (v.m, v.n, v.level, v.kind));
        assert_eq!(sorted, report.violations);

        assert!(verify_conjugacy(&delta(2), &xor(), &sig, 16, Exec::default()).is_err());
    }
}

//! Expected odometer profiles for additive rules and the dichotomy case a
//! rule falls in.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::adic::{factorize, prime_power, supernatural_profile};
use crate::error::{Error, Result};
use crate::rule::{AdditiveForm, LocalRule};
use crate::signature::{OdometerSignature, SignatureStatus};
use crate::tails::{is_tail_fixed, least_tail_period};
use crate::word::EventuallyPeriodicWord;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "profile", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ExpectedProfile {
    /// Every `s_i = p`.
    AllP { p: u64 },
    /// Every `s_i` is a positive power of `p`.
    PowersOfP { p: u64 },
    /// `(q, p, p, ..)` with `q` the multiplicative order of the coefficient.
    QThenP { q: u64, p: u64 },
    /// Tail of least period `q > 1`; `inner` describes the stages of `Φ^q`.
    PeriodicPrefix { q: u64, inner: Box<ExpectedProfile> },
    NotCovered { reason: String },
}

impl ExpectedProfile {
    pub fn name(&self) -> &'static str {
        match self {
            ExpectedProfile::AllP { .. } => "ALL_P",
            ExpectedProfile::PowersOfP { .. } => "POWERS_OF_P",
            ExpectedProfile::QThenP { .. } => "Q_THEN_P",
            ExpectedProfile::PeriodicPrefix { .. } => "PERIODIC_PREFIX",
            ExpectedProfile::NotCovered { .. } => "NOT_COVERED",
        }
    }
}

impl std::fmt::Display for ExpectedProfile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExpectedProfile::AllP { p } => write!(f, "ALL_P({p})"),
            ExpectedProfile::PowersOfP { p } => write!(f, "POWERS_OF_P({p})"),
            ExpectedProfile::QThenP { q, p } => write!(f, "Q_THEN_P({q}, {p})"),
            ExpectedProfile::PeriodicPrefix { q, inner } => write!(f, "PERIODIC_PREFIX({q}, {inner})"),
            ExpectedProfile::NotCovered { reason } => write!(f, "NOT_COVERED({reason})"),
        }
    }
}

/// Least `q ≥ 1` with `a^q ≡ 1 (mod n)`, if `a` is a unit.
pub fn multiplicative_order(a: u64, n: u64) -> Option<u64> {
    if n < 2 || gcd(a % n, n) != 1 {
        return None;
    }
    let mut x = a % n;
    let mut q = 1;
    while x != 1 {
        x = x * a % n;
        q += 1;
    }
    Some(q)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn not_covered(reason: impl Into<String>) -> ExpectedProfile {
    ExpectedProfile::NotCovered { reason: reason.into() }
}

/// The odometer profile predicted for additive rules with `tail`.
/// Tail periods are searched up to `q_max`.
pub fn classify_expected(
    rule: &LocalRule,
    tail: &EventuallyPeriodicWord,
    q_max: u64,
) -> Result<ExpectedProfile> {
    let form = AdditiveForm::detect(rule).ok_or(Error::NotAdditiveForm)?;
    let s = rule.alphabet() as u64;
    let a = form.coefficient as u64;
    let Some((p, m)) = prime_power(s) else {
        return Ok(not_covered(format!("alphabet {s} is not a prime power")));
    };
    if !rule.is_left_permutive() {
        return Ok(not_covered(format!("coefficient {a} is not a unit mod {s}")));
    }
    if rule.effective_anticipation() == 0 {
        return Ok(not_covered("zero anticipation"));
    }
    let inner = if a == 1 {
        if m == 1 {
            ExpectedProfile::AllP { p }
        } else {
            ExpectedProfile::PowersOfP { p }
        }
    } else if m == 1 {
        let q = multiplicative_order(a, p).expect("unit");
        ExpectedProfile::QThenP { q, p }
    } else {
        return Ok(not_covered(format!("coefficient {a} != 1 over Z/{s}")));
    };
    if is_tail_fixed(tail, rule, 1) {
        return Ok(inner);
    }
    match least_tail_period(tail, rule, q_max) {
        Some(q) if a == 1 => Ok(ExpectedProfile::PeriodicPrefix {
            q,
            inner: Box::new(inner),
        }),
        Some(_) => Ok(not_covered("periodic tail with coefficient != 1")),
        None => Ok(not_covered(format!("tail not periodic within {q_max}"))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    Fail,
    Unknown,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Unknown => "UNKNOWN",
        }
    }
}

fn check_stages(expected: &ExpectedProfile, moduli: &[u64]) -> Verdict {
    let ok = match expected {
        ExpectedProfile::AllP { p } => moduli.iter().all(|m| m == p),
        ExpectedProfile::PowersOfP { p } => moduli.iter().all(|&m| prime_power(m).is_some_and(|(b, _)| b == *p)),
        ExpectedProfile::QThenP { q, p } => {
            let mut want: BTreeMap<u64, u32> = factorize(*q);
            if !moduli.is_empty() {
                *want.entry(*p).or_insert(0) += moduli.len() as u32 - 1;
            }
            supernatural_profile(moduli) == want
        }
        ExpectedProfile::PeriodicPrefix { .. } | ExpectedProfile::NotCovered { .. } => {
            return Verdict::Unknown
        }
    };
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

/// Compares an extracted signature with an expected profile. Signatures that
/// stopped early carry no evidence either way.
pub fn check_profile(expected: &ExpectedProfile, sig: &OdometerSignature) -> Verdict {
    if sig.status != SignatureStatus::Complete || sig.stages.is_empty() {
        return Verdict::Unknown;
    }
    match (expected, sig.tail_period) {
        (ExpectedProfile::PeriodicPrefix { q, inner }, Some(tq)) => {
            if *q != tq {
                return Verdict::Fail;
            }
            check_stages(inner, &sig.stage_moduli())
        }
        (ExpectedProfile::PeriodicPrefix { .. }, None) => Verdict::Fail,
        (ExpectedProfile::NotCovered { .. }, _) => Verdict::Unknown,
        (_, Some(_)) => Verdict::Fail,
        (e, None) => check_stages(e, &sig.stage_moduli()),
    }
}

/// Which alternative of the fixed-tail dichotomy holds for a rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum DichotomyCase {
    /// Odometer orbits are generic over every fixed tail.
    Generic { reason: String },
    /// `Φ^m` is the identity, so no orbit is infinite.
    Empty { identity_order: usize },
    Unknown { bound: usize },
}

impl DichotomyCase {
    pub fn name(&self) -> &'static str {
        match self {
            DichotomyCase::Generic { .. } => "CASE_1",
            DichotomyCase::Empty { .. } => "CASE_2",
            DichotomyCase::Unknown { .. } => "UNKNOWN",
        }
    }
}

/// Requires a left-permutive rule with positive anticipation.
pub fn dichotomy_case(rule: &LocalRule, bound: usize, budget: usize) -> Result<DichotomyCase> {
    if !rule.is_left_permutive() {
        return Err(Error::NotPermutive("dichotomy needs a left-permutive rule".into()));
    }
    if rule.effective_anticipation() == 0 {
        return Err(Error::PreconditionViolated("rule has zero anticipation".into()));
    }
    if rule.alphabet() == 2 {
        return Ok(DichotomyCase::Generic {
            reason: "two-letter alphabet".into(),
        });
    }
    if !rule.is_injective(budget)? {
        return Ok(DichotomyCase::Generic {
            reason: "not one-to-one".into(),
        });
    }
    Ok(match rule.identity_order(bound, budget)? {
        Some(m) => DichotomyCase::Empty { identity_order: m },
        None => DichotomyCase::Unknown { bound },
    })
}

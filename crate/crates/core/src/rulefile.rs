//! Text format for rules.
//!
//! ```text
//! s r
//! <s^(r+1) symbols, row-major, t_r fastest>
//! ```
//!
//! or, for rules of the form `a·t_0 + θ(t_1..t_r)`:
//!
//! ```text
//! additive s r a
//! <s^r theta values>
//! ```
//!
//! Lines starting with `#` are ignored. The canonical rendering writes `s`
//! symbols per line separated by single spaces.

use std::fmt;

use crate::error::{Error, Result};
use crate::rule::{AdditiveForm, LocalRule};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RuleFile {
    Table(LocalRule),
    Additive(AdditiveForm),
}

impl RuleFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut tokens = text
            .lines()
            .filter(|l| !l.trim_start().starts_with('#'))
            .flat_map(str::split_whitespace);
        let first = tokens.next().ok_or_else(|| Error::Parse("empty rule file".into()))?;
        let additive = first == "additive";
        let mut header = Vec::new();
        if !additive {
            header.push(num(first)?);
        }
        let want = if additive { 3 } else { 2 };
        while header.len() < want {
            let t = tokens
                .next()
                .ok_or_else(|| Error::Parse("truncated header".into()))?;
            header.push(num(t)?);
        }
        let body: Vec<usize> = tokens.map(num).collect::<Result<_>>()?;
        let s = header[0];
        let r = header[1];
        let symbols = body
            .into_iter()
            .map(|v| {
                u8::try_from(v).map_err(|_| Error::SymbolOutOfRange {
                    symbol: v.min(u32::MAX as usize) as u32,
                    alphabet: s,
                })
            })
            .collect::<Result<Vec<u8>>>()?;
        if additive {
            let a = u8::try_from(header[2]).map_err(|_| Error::SymbolOutOfRange {
                symbol: header[2].min(u32::MAX as usize) as u32,
                alphabet: s,
            })?;
            Ok(RuleFile::Additive(AdditiveForm::new(s, r, a, symbols)?))
        } else {
            Ok(RuleFile::Table(LocalRule::new(s, r, symbols)?))
        }
    }

    /// The rule table; additive forms must be left permutive.
    pub fn to_rule(&self) -> Result<LocalRule> {
        match self {
            RuleFile::Table(r) => Ok(r.clone()),
            RuleFile::Additive(f) => f.to_rule(),
        }
    }
}

fn num(tok: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::Parse(format!("expected a non-negative integer, got {tok:?}")))
}

fn write_rows(f: &mut fmt::Formatter<'_>, values: &[u8], per_line: usize) -> fmt::Result {
    for row in values.chunks(per_line) {
        let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        writeln!(f, "{}", line.join(" "))?;
    }
    Ok(())
}

impl fmt::Display for RuleFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleFile::Table(r) => {
                writeln!(f, "{} {}", r.alphabet(), r.anticipation())?;
                write_rows(f, r.table(), r.alphabet())
            }
            RuleFile::Additive(a) => {
                writeln!(
                    f,
                    "additive {} {} {}",
                    a.alphabet, a.anticipation, a.coefficient
                )?;
                write_rows(f, &a.theta, a.alphabet)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_table_and_additive() {
        let xor = RuleFile::parse("2 1\n0 1\n1 0\n").unwrap();
        assert_eq!(xor.to_rule().unwrap().table(), &[0, 1, 1, 0]);
        let add = RuleFile::parse("# 2t0 + t1 mod 5\nadditive 5 1 2\n0 1 2 3 4\n").unwrap();
        let rule = add.to_rule().unwrap();
        assert_eq!(rule.apply(&[4, 3]), (8 + 3) % 5);
        assert_eq!(add.to_string(), "additive 5 1 2\n0 1 2 3 4\n");
        assert!(RuleFile::parse("2 1\n0 1 1\n").is_err());
        assert!(RuleFile::parse("2 1\n0 1 x 0\n").is_err());
        assert!(RuleFile::parse("").is_err());
        assert!(RuleFile::parse("additive 4 1 2\n0 0 0 0\n")
            .unwrap()
            .to_rule()
            .is_err());
    }

    #[test]
    fn canonical_text_is_stable() {
        let text = "3 1\n0 2 0\n1 1 1\n2 0 2\n";
        assert_eq!(RuleFile::parse(text).unwrap().to_string(), text);
    }

    proptest! {
        #[test]
        fn round_trip(s in 2usize..6, r in 0usize..3, seed in any::<u64>(), additive in any::<bool>()) {
            let mut st = crate::rng::Stream::new(seed);
            let file = if additive {
                let theta = (0..s.pow(r as u32)).map(|_| st.symbol(s)).collect();
                RuleFile::Additive(AdditiveForm::new(s, r, st.symbol(s), theta).unwrap())
            } else {
                let table = (0..s.pow(r as u32 + 1)).map(|_| st.symbol(s)).collect();
                RuleFile::Table(LocalRule::new(s, r, table).unwrap())
            };
            let text = file.to_string();
            let back = RuleFile::parse(&text).unwrap();
            prop_assert_eq!(&back, &file);
            prop_assert_eq!(back.to_string(), text);
        }
    }
}

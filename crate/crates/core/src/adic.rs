//! Truncated elements of `Z(S) = ∏ Z/s_n Z` and the `+1`-with-carry map.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};

/// Digits `d_1..d_D` with `0 ≤ d_i < s_i`; value `Σ d_i · s_1⋯s_{i-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AdicInteger {
    digits: Vec<u64>,
    moduli: Vec<u64>,
}

fn check_moduli(moduli: &[u64]) -> Result<()> {
    if let Some(&m) = moduli.iter().find(|&&m| m < 2) {
        return Err(Error::BadDimensions(format!("modulus {m} < 2")));
    }
    Ok(())
}

/// `s_1⋯s_D`, or `None` past `u128`.
pub fn modulus_product(moduli: &[u64]) -> Option<u128> {
    moduli
        .iter()
        .try_fold(1u128, |acc, &m| acc.checked_mul(m as u128))
}

impl AdicInteger {
    pub fn new(digits: Vec<u64>, moduli: Vec<u64>) -> Result<Self> {
        check_moduli(&moduli)?;
        if digits.len() != moduli.len() {
            return Err(Error::BadDimensions(format!(
                "{} digits for {} moduli",
                digits.len(),
                moduli.len()
            )));
        }
        if let Some((d, m)) = digits.iter().zip(&moduli).find(|(d, m)| d >= m) {
            return Err(Error::BadDimensions(format!("digit {d} out of range for modulus {m}")));
        }
        Ok(Self { digits, moduli })
    }

    pub fn zero(moduli: Vec<u64>) -> Result<Self> {
        Self::new(vec![0; moduli.len()], moduli)
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn value(&self) -> u128 {
        let small = self
            .digits
            .iter()
            .zip(&self.moduli)
            .rev()
            .try_fold(0u64, |acc, (&d, &m)| acc.checked_mul(m)?.checked_add(d));
        if let Some(v) = small {
            return v as u128;
        }
        self.digits
            .iter()
            .zip(&self.moduli)
            .rev()
            .fold(0u128, |acc, (&d, &m)| acc * m as u128 + d as u128)
    }

    /// `τ(z) = z + (1, 0, 0, ..)`. The flag reports a carry out of the last
    /// digit, i.e. wrap-around to zero at the truncation depth.
    pub fn add_one(&self) -> (AdicInteger, bool) {
        let mut next = self.clone();
        let carry = next.increment();
        (next, carry)
    }

    /// In-place `add_one`; returns the carry-out flag.
    pub fn increment(&mut self) -> bool {
        for (d, &m) in self.digits.iter_mut().zip(&self.moduli) {
            *d += 1;
            if *d < m {
                return false;
            }
            *d = 0;
        }
        true
    }

    /// Overwrite the digits with the expansion of `n`, reusing storage.
    pub fn assign(&mut self, n: u128) -> Result<()> {
        let overflow = Error::Overflow {
            value: n,
            depth: self.moduli.len(),
        };
        // n < s_1⋯s_D exactly when nothing is left after dividing out every modulus.
        let left = match u32::try_from(n) {
            Ok(mut rest) if self.moduli.iter().all(|&m| m <= u32::MAX as u64) => {
                for (d, &m) in self.digits.iter_mut().zip(&self.moduli) {
                    *d = (rest % m as u32) as u64;
                    rest /= m as u32;
                }
                rest as u128
            }
            _ => {
                let mut rest = n;
                for (d, &m) in self.digits.iter_mut().zip(&self.moduli) {
                    *d = (rest % m as u128) as u64;
                    rest /= m as u128;
                }
                rest
            }
        };
        if left != 0 {
            self.digits.iter_mut().for_each(|d| *d = 0);
            return Err(overflow);
        }
        Ok(())
    }

    /// Whether the first `places` digits agree.
    pub fn agrees_with(&self, other: &AdicInteger, places: usize) -> bool {
        self.digits[..places] == other.digits[..places]
    }
}

/// Mixed-radix ("base-S") expansion of `n`.
pub fn expansion(n: u128, moduli: &[u64]) -> Result<AdicInteger> {
    let mut z = AdicInteger::zero(moduli.to_vec())?;
    z.assign(n)?;
    Ok(z)
}

pub fn factorize(mut n: u64) -> BTreeMap<u64, u32> {
    let mut out = BTreeMap::new();
    let mut p = 2u64;
    while p * p <= n {
        while n % p == 0 {
            *out.entry(p).or_insert(0) += 1;
            n /= p;
        }
        p += 1;
    }
    if n > 1 {
        *out.entry(n).or_insert(0) += 1;
    }
    out
}

/// Prime multiplicities of `s_1⋯s_D`.
pub fn supernatural_profile(moduli: &[u64]) -> BTreeMap<u64, u32> {
    let mut out = BTreeMap::new();
    for &m in moduli {
        for (p, e) in factorize(m) {
            *out.entry(p).or_insert(0) += e;
        }
    }
    out
}

/// `Some((p, m))` if `n = p^m` with `p` prime and `m ≥ 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    let f = factorize(n);
    if f.len() == 1 {
        f.into_iter().next()
    } else {
        None
    }
}

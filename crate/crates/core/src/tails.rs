//! Right tails `(x_1, x_2, ..)` that are fixed or periodic under the
//! one-sided automaton.

use crate::error::Result;
use crate::exec::Exec;
use crate::rule::{LocalRule, DEFAULT_TABLE_BUDGET};
use crate::word::{EventuallyPeriodicWord, TailOrbit};

/// Whether `Φ_R^p(tail) = tail`.
pub fn is_tail_fixed(tail: &EventuallyPeriodicWord, rule: &LocalRule, p: u64) -> bool {
    if p == 0 {
        return true;
    }
    let mut orbit = TailOrbit::new(rule, tail.clone());
    let limit = usize::try_from(p).unwrap_or(usize::MAX).saturating_add(1);
    match orbit.cycle_within(limit) {
        Some((mu, lambda)) => mu == 0 && p % lambda as u64 == 0,
        None => false,
    }
}

/// Least `q ≤ q_max` with `Φ_R^q(tail) = tail`.
pub fn least_tail_period(tail: &EventuallyPeriodicWord, rule: &LocalRule, q_max: u64) -> Option<u64> {
    let mut orbit = TailOrbit::new(rule, tail.clone());
    let limit = usize::try_from(q_max).unwrap_or(usize::MAX).saturating_add(1);
    match orbit.cycle_within(limit) {
        Some((0, lambda)) if lambda as u64 <= q_max => Some(lambda as u64),
        _ => None,
    }
}

/// All canonical `Φ_R^p`-fixed tails with transient at most `max_transient`
/// and primitive period at most `max_period`, in lexicographic order.
///
/// A tail is `Φ_R^p`-fixed iff every window `w` of length `r_p + 1` along it
/// satisfies `φ^p(w) = w_0`, where `r_p` is the effective anticipation of
/// `φ^p`. Periodic parts are cycles of this window graph; transients are
/// grown by prepending symbols along allowed windows.
pub fn enumerate_fixed_tails(
    rule: &LocalRule,
    p: usize,
    max_transient: usize,
    max_period: usize,
    exec: Exec,
) -> Result<Vec<EventuallyPeriodicWord>> {
    let g = rule.power_trimmed(p, DEFAULT_TABLE_BUDGET)?;
    let s = g.alphabet();
    let w = g.anticipation() + 1;
    let allowed = |win: &[u8]| g.apply(win) == win[0];

    let mut blocks = Vec::new();
    for d in 1..=max_period {
        let total = match crate::rule::checked_pow(s, d) {
            Some(n) => n,
            None => break,
        };
        for code in 0..total {
            let mut block = vec![0u8; d];
            let mut c = code;
            for slot in block.iter_mut().rev() {
                *slot = (c % s) as u8;
                c /= s;
            }
            blocks.push(block);
        }
    }

    let per_block = exec.map(blocks, |block| {
        let d = block.len();
        let primitive = (1..d).all(|e| d % e != 0 || (e..d).any(|i| block[i] != block[i - e]));
        if !primitive {
            return Vec::new();
        }
        let cyclic: Vec<u8> = (0..d + w).map(|i| block[i % d]).collect();
        if !(0..d).all(|i| allowed(&cyclic[i..i + w])) {
            return Vec::new();
        }
        let mut found = vec![EventuallyPeriodicWord::new(Vec::new(), block.clone()).unwrap()];
        // prefix holds the sequence from the current first symbol onwards,
        // long enough to read one window.
        let mut stack: Vec<Vec<u8>> = vec![Vec::new()];
        while let Some(transient) = stack.pop() {
            if transient.len() == max_transient {
                continue;
            }
            for c in 0..s as u8 {
                if transient.is_empty() && c == block[d - 1] {
                    continue;
                }
                let mut next = Vec::with_capacity(transient.len() + 1);
                next.push(c);
                next.extend_from_slice(&transient);
                let window: Vec<u8> = (0..w)
                    .map(|i| {
                        if i < next.len() {
                            next[i]
                        } else {
                            block[(i - next.len()) % d]
                        }
                    })
                    .collect();
                if allowed(&window) {
                    found.push(EventuallyPeriodicWord::new(next.clone(), block.clone()).unwrap());
                    stack.push(next);
                }
            }
        }
        found
    });

    let mut all: Vec<EventuallyPeriodicWord> = per_block.into_iter().flatten().collect();
    all.sort();
    all.dedup();
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ep(s: &str) -> EventuallyPeriodicWord {
        s.parse().unwrap()
    }

    fn xor() -> LocalRule {
        LocalRule::new(2, 1, vec![0, 1, 1, 0]).unwrap()
    }

    fn z3() -> LocalRule {
        LocalRule::from_fn(3, 1, |w| match (w[0], w[1]) {
            (0, 1) => 2,
            (2, 1) => 0,
            (t0, _) => t0,
        })
        .unwrap()
    }

    #[test]
    fn fixedness() {
        assert!(is_tail_fixed(&ep(":(0)"), &xor(), 1));
        assert!(is_tail_fixed(&ep("1:(0)"), &xor(), 1));
        assert!(!is_tail_fixed(&ep("11:(0)"), &xor(), 1));
        assert!(is_tail_fixed(&ep("11:(0)"), &xor(), 2));
        assert!(!is_tail_fixed(&ep("11:(0)"), &xor(), 3));
    }

    #[test]
    fn least_periods() {
        assert_eq!(least_tail_period(&ep("1:(0)"), &xor(), 4), Some(1));
        assert_eq!(least_tail_period(&ep("11:(0)"), &xor(), 4), Some(2));
        assert_eq!(least_tail_period(&ep("11:(0)"), &xor(), 1), None);
        assert_eq!(least_tail_period(&ep(":(0)"), &z3(), 4), Some(1));
        // (1)^∞ maps to 0^∞ under XOR and never returns
        assert_eq!(least_tail_period(&ep(":(1)"), &xor(), 8), None);
    }

    #[test]
    fn enumeration_examples() {
        let one = enumerate_fixed_tails(&xor(), 1, 2, 2, Exec::default()).unwrap();
        assert_eq!(one, vec![ep(":(0)"), ep("1:(0)")]);

        let z = enumerate_fixed_tails(&z3(), 1, 0, 1, Exec::default()).unwrap();
        assert_eq!(z, vec![ep(":(0)"), ep(":(1)"), ep(":(2)")]);

        let two = enumerate_fixed_tails(&xor(), 2, 2, 2, Exec::default()).unwrap();
        for t in &one {
            assert!(two.contains(t));
        }
        assert!(two.contains(&ep("11:(0)")));
        for t in &two {
            assert!(is_tail_fixed(t, &xor(), 2), "{t}");
        }
    }

    #[test]
    fn enumeration_matches_brute_force() {
        // every canonical word within bounds, filtered by direct iteration
        let rule = z3();
        let fast = enumerate_fixed_tails(&rule, 2, 2, 2, Exec::Sequential).unwrap();
        let mut brute = Vec::new();
        for tl in 0..=2usize {
            for pl in 1..=2usize {
                for code in 0..3usize.pow((tl + pl) as u32) {
                    let mut c = code;
                    let mut sym = Vec::new();
                    for _ in 0..tl + pl {
                        sym.push((c % 3) as u8);
                        c /= 3;
                    }
                    let w = EventuallyPeriodicWord::new(sym[..tl].to_vec(), sym[tl..].to_vec()).unwrap();
                    if w.transient().len() == tl
                        && w.period().len() == pl
                        && w.step(&rule).step(&rule) == w
                    {
                        brute.push(w);
                    }
                }
            }
        }
        brute.sort();
        brute.dedup();
        assert_eq!(fast, brute);
    }
}

use thiserror::Error;

/// Errors raised by rule construction and orbit analysis.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("bad dimensions: {0}")]
    BadDimensions(String),
    #[error("symbol {symbol} out of range for alphabet of size {alphabet}")]
    SymbolOutOfRange { symbol: u32, alphabet: usize },
    #[error("rule is not left permutive: {0}")]
    NotPermutive(String),
    #[error("alphabet mismatch: {left} vs {right}")]
    AlphabetMismatch { left: usize, right: usize },
    #[error("table budget exceeded: {required} entries required, budget is {budget}")]
    BudgetExceeded { required: u128, budget: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("tail is not fixed under the one-sided automaton")]
    TailNotFixed,
    #[error("tail is not periodic with least period > 1 within bound {0}")]
    TailNotPeriodic(u64),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("window exhausted: {0}")]
    WindowExhausted(String),
    #[error("value {value} does not fit in {depth} digits")]
    Overflow { value: u128, depth: usize },
    #[error("rule is not of the form a*t0 + theta(t1..tr)")]
    NotAdditiveForm,
    #[error("no witness found: {0}")]
    NoWitnessFound(String),
    #[error("internal assertion failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

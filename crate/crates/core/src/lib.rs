//! Left-permutive, memoryless one-dimensional cellular automata and the
//! odometers on their orbit closures.
//!
//! ```
//! use lpca::{signature, Configuration, LeftProvider, LocalRule, SignatureOptions};
//!
//! let xor = LocalRule::new(2, 1, vec![0, 1, 1, 0]).unwrap();
//! let x = Configuration::new(2, LeftProvider::Constant(0), 1, ":(0)".parse().unwrap()).unwrap();
//! let sig = signature(&x, &xor, 3, SignatureOptions::default()).unwrap();
//! assert_eq!(sig.moduli(), vec![2, 2, 2]);
//! ```

pub mod adic;
pub mod classify;
pub mod error;
pub mod exec;
pub mod experiments;
pub mod orbit;
pub mod pgm;
pub mod report;
pub mod rng;
pub mod rule;
pub mod rulefile;
pub mod signature;
pub mod tails;
pub mod word;

pub use adic::{expansion, modulus_product, supernatural_profile, AdicInteger};
pub use classify::{check_profile, classify_expected, dichotomy_case, DichotomyCase, ExpectedProfile, Verdict};
pub use error::{Error, Result};
pub use exec::Exec;
pub use experiments::{periodic_point_search, perturbation_escape, sample_prevalence};
pub use orbit::{
    column_evolution, finite_orbit_probe, spacetime_window, suffix_fixed, ColumnSeries, Configuration,
    LeftProvider, ProbeOptions, ProbeVerdict, WindowSim,
};
pub use rule::{make_additive_rule, AdditiveForm, LocalRule, DEFAULT_TABLE_BUDGET};
pub use rulefile::RuleFile;
pub use signature::{
    signature, signature_periodic, verify_conjugacy, ConjugacyReport, OdometerSignature, SignatureOptions,
    SignatureStatus, Stage,
};
pub use tails::{enumerate_fixed_tails, is_tail_fixed, least_tail_period};
pub use word::{EventuallyPeriodicWord, TailOrbit};

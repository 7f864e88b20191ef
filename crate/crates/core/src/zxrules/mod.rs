// SPDX-License-Identifier: Apache-2.0

//! Local rewrite rules, a deterministic simplification strategy, and an
//! evaluator-backed soundness check.
//!
//! Scalar factors per application (`d` is the spider's degree before the
//! rewrite, `α` its phase):
//!
//! | rule            | factor               |
//! |-----------------|----------------------|
//! | SpiderFuse      | 1                    |
//! | IdentityRemove  | 1                    |
//! | ColorChange     | 1                    |
//! | PiCommute       | e^{iα}               |
//! | PiCopy          | e^{iα} · √2^{2−d}    |
//! | CopyRule        | √2^{2−d}             |
//! | HopfCancel      | 1/2                  |
//! | Bialgebra       | 1/√2                 |
//! | ScalarD         | value of the component |

mod rules;
mod simplify;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use rules::{apply_rule, apply_rule_unchecked, apply_rule_with_tol, find_matches, is_match};
pub use simplify::{
    is_bare_identity, simplify, verify_equivalence, verify_equivalence_tol, EquivalenceReport, SimplifyConfig, SimplifyOutcome,
    Verdict,
};

use crate::zxgraph::ZxError;
use crate::C64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RuleId {
    SpiderFuse,
    IdentityRemove,
    ColorChange,
    PiCopy,
    PiCommute,
    CopyRule,
    Bialgebra,
    HopfCancel,
    ScalarD,
}

impl RuleId {
    pub const ALL: [RuleId; 9] = [
        RuleId::SpiderFuse,
        RuleId::IdentityRemove,
        RuleId::ColorChange,
        RuleId::PiCopy,
        RuleId::PiCommute,
        RuleId::CopyRule,
        RuleId::Bialgebra,
        RuleId::HopfCancel,
        RuleId::ScalarD,
    ];
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// One rule application. Re-applying `rule` at `site` to the diagram it
/// was taken from reproduces the result exactly.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RewriteStep {
    pub rule: RuleId,
    /// Node ids the matcher was given.
    pub site: Vec<usize>,
    /// Node ids created by the rewrite.
    pub produced: Vec<usize>,
    #[serde(with = "complex_obj")]
    pub scalar_delta: C64,
}

mod complex_obj {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::C64;

    #[derive(Serialize, Deserialize)]
    struct Obj {
        re: f64,
        im: f64,
    }

    pub fn serialize<S: Serializer>(z: &C64, s: S) -> Result<S::Ok, S::Error> {
        Obj { re: z.re, im: z.im }.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<C64, D::Error> {
        let o = Obj::deserialize(d)?;
        Ok(C64::new(o.re, o.im))
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RuleError {
    #[error("{rule} does not match at {site:?}")]
    NoMatch { rule: RuleId, site: Vec<usize> },
    #[error("{rule} at {site:?} changed the denoted map by {deviation:e}")]
    SoundnessViolation { rule: RuleId, site: Vec<usize>, deviation: f64 },
    #[error("simplification did not reach a fixpoint within {limit} steps")]
    StepLimitExceeded { limit: usize },
    #[error("boundary types differ: {left:?} vs {right:?} (inputs, outputs)")]
    TypeMismatch { left: (usize, usize), right: (usize, usize) },
    #[error(transparent)]
    Zx(#[from] ZxError),
}

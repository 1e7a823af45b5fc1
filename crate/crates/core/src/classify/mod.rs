//! Classification of almost L-space complexes up to filtered homotopy.

pub mod equivalence;
pub mod simplify;
pub mod templates;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::{reduce, KnotComplex};
use crate::error::{Error, Result};
use crate::invariants::hfk;
use crate::surgery::{detect, Verdict};

pub use equivalence::filtered_equivalent;
pub use simplify::{change_basis, is_simplified, simplify, BasisChange, Simplified};
pub use templates::{literally_isomorphic, Template};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Class {
    Staircase,
    StaircasePlusBox,
    AlmostStaircase1,
    AlmostStaircase2,
    NotAlmostLSpace,
    Unknown,
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Template {
    pub fn class(&self) -> Class {
        match self {
            Template::Staircase(_) => Class::Staircase,
            Template::StaircasePlusBox { .. } => Class::StaircasePlusBox,
            Template::AlmostStaircase1 { .. } => Class::AlmostStaircase1,
            Template::AlmostStaircase2 { .. } => Class::AlmostStaircase2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub verdict: Class,
    /// Also equivalent to an almost staircase (reported as staircase plus box).
    pub overlap: bool,
    pub template: Option<Template>,
    /// The simplified complex matched the template generator for generator;
    /// otherwise the match came from the equivalence search and the witness
    /// is the template itself.
    pub literal: bool,
    pub witness: KnotComplex,
    pub log: Vec<BasisChange>,
}

fn matches(
    reduced: &KnotComplex,
    simplified: &KnotComplex,
    t: &Template,
) -> Result<Option<(KnotComplex, bool)>> {
    let tc = t.build()?;
    if literally_isomorphic(simplified, &tc)? {
        return Ok(Some((tc, true)));
    }
    // TooLarge and SearchBudget leave the template unmatched.
    Ok(filtered_equivalent(reduced, &tc)
        .unwrap_or(false)
        .then_some((tc, false)))
}

/// Detects, reduces, simplifies and matches against the template families.
pub fn classify(c: &KnotComplex) -> Result<Classification> {
    let detection = detect(c)?;
    let reduced = reduce(c)?;
    if detection.verdict == Verdict::Neither {
        return Ok(Classification {
            verdict: Class::NotAlmostLSpace,
            overlap: false,
            template: None,
            literal: false,
            witness: reduced,
            log: Vec::new(),
        });
    }
    let simplified = simplify(&reduced)?;
    let candidates = match detection.verdict {
        Verdict::LSpace => templates::infer_staircase(&reduced).into_iter().collect(),
        _ => templates::infer_almost(&reduced),
    };
    let mut found: Vec<(Template, KnotComplex, bool)> = Vec::new();
    for t in candidates {
        if let Some((tc, literal)) = matches(&reduced, &simplified.complex, &t)? {
            found.push((t, tc, literal));
        }
    }
    let rank = |cl: Class| match cl {
        Class::Staircase | Class::StaircasePlusBox => 0,
        Class::AlmostStaircase1 => 1,
        _ => 2,
    };
    found.sort_by_key(|(t, _, literal)| (rank(t.class()), !literal));
    let overlap = found
        .iter()
        .any(|(t, _, _)| t.class() == Class::StaircasePlusBox)
        && found.iter().any(|(t, _, _)| {
            matches!(t.class(), Class::AlmostStaircase1 | Class::AlmostStaircase2)
        });
    match found.into_iter().next() {
        Some((t, tc, literal)) => Ok(Classification {
            verdict: t.class(),
            overlap,
            template: Some(t),
            literal,
            witness: if literal { simplified.complex } else { tc },
            log: simplified.log,
        }),
        None => Ok(Classification {
            verdict: Class::Unknown,
            overlap: false,
            template: None,
            literal: false,
            witness: simplified.complex,
            log: simplified.log,
        }),
    }
}

/// For staircase-plus-box complexes: whether HFK-hat in Alexander grading
/// zero sits in a single Maslov grading.
pub fn delta0_check(c: &KnotComplex) -> Result<bool> {
    let cl = classify(c)?;
    if cl.verdict != Class::StaircasePlusBox {
        return Err(Error::WrongClass {
            expected: Class::StaircasePlusBox.to_string(),
            got: cl.verdict.to_string(),
        });
    }
    Ok(hfk(c)?
        .by_alexander
        .get(&0)
        .is_some_and(|h| h.ranks.len() == 1))
}

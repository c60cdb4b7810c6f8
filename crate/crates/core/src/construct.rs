//! Sufficient conditions for a knot to admit a fillable positive contact
//! surgery: closures of positive braids (a), knots with a positive lens
//! space surgery (b), satellites with braided fillable patterns (c), and
//! cables whose slope exceeds a fillable coefficient of the companion (d).
//!
//! Every rule is one-sided. A negative answer is reported as
//! [`Fillable::NotDetermined`], never as "no".

use std::fmt;

use num_integer::Integer;

use crate::braid::BraidWord;
use crate::certificate::{Certificate, CertificateError};
use crate::invariants::{positive_braid_genus, InvariantError};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error(transparent)]
    Braid(#[from] InvariantError),
    #[error(transparent)]
    Certificate(#[from] CertificateError),
    #[error("surgery coefficient must be positive, got {0}")]
    NonPositiveCoefficient(i64),
    #[error(
        "inconsistent input: a lens space surgery with coefficient {coefficient} on a knot of genus {genus} would violate m > 2g − 1"
    )]
    LensBoundViolated { genus: u64, coefficient: i64 },
    #[error("cable parameters ({p},{q}) must be coprime")]
    NotCoprime { p: i64, q: i64 },
    #[error("cable winding number must be at least 1, got {0}")]
    BadWinding(i64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Fillable {
    Yes,
    NotDetermined,
}

impl fmt::Display for Fillable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Fillable::Yes => "yes",
            Fillable::NotDetermined => "not determined",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    PositiveBraid,
    LensSpace,
    Satellite,
    Cable,
}

impl Rule {
    /// Clause label `(a)` through `(d)`.
    pub fn clause(self) -> char {
        match self {
            Rule::PositiveBraid => 'a',
            Rule::LensSpace => 'b',
            Rule::Satellite => 'c',
            Rule::Cable => 'd',
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Rule::PositiveBraid => "positive braid closure",
            Rule::LensSpace => "lens space surgery",
            Rule::Satellite => "braided fillable pattern",
            Rule::Cable => "cable",
        };
        write!(f, "({}) {name}", self.clause())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionVerdict {
    pub fillable: Fillable,
    /// A smooth coefficient known to give a fillable surgery.
    pub coefficient_bound: Option<u64>,
    pub rule: Rule,
    pub notes: Vec<String>,
    /// Crossing changes in the transverse unknotting of a positive braid
    /// closure, `(ℓ − n + 1)/2`.
    pub crossing_changes: Option<u64>,
}

impl ConstructionVerdict {
    fn yes(rule: Rule, bound: Option<u64>) -> Self {
        Self {
            fillable: Fillable::Yes,
            coefficient_bound: bound,
            rule,
            notes: Vec::new(),
            crossing_changes: None,
        }
    }

    fn note(mut self, text: impl Into<String>) -> Self {
        self.notes.push(text.into());
        self
    }
}

/// Closures of positive braids have `μ ≤ 4g`: the slice genus equals the
/// Seifert genus `(ℓ − n + 1)/2`, and that many crossing changes unknot the
/// closure through transverse isotopy.
pub fn positive_braid_rule(word: &BraidWord) -> Result<ConstructionVerdict, ConstructionError> {
    let g = positive_braid_genus(word)?;
    let mut verdict = ConstructionVerdict::yes(Rule::PositiveBraid, Some(4 * g))
        .note(format!("slice genus {g} from the positive braid, bound 4g = {}", 4 * g));
    verdict.crossing_changes = Some(g);
    Ok(verdict)
}

/// A positive lens space surgery with integer coefficient `c` is fillable.
/// Since `c > 2g − 1` holds for any such surgery, `c < 2g` signals
/// inconsistent input.
pub fn lens_rule(genus: u64, lens_coefficient: i64) -> Result<ConstructionVerdict, ConstructionError> {
    if lens_coefficient <= 0 {
        return Err(ConstructionError::NonPositiveCoefficient(lens_coefficient));
    }
    if (lens_coefficient as u64) < 2 * genus {
        return Err(ConstructionError::LensBoundViolated {
            genus,
            coefficient: lens_coefficient,
        });
    }
    Ok(
        ConstructionVerdict::yes(Rule::LensSpace, Some(lens_coefficient as u64))
            .note("lens space recognition is caller-supplied data"),
    )
}

/// If the pattern is braided fillable (certified by a valid band/node
/// factorization) and the companion has fillable coefficient `m`, then
/// the satellite `P_m(C)` admits a fillable positive surgery. No coefficient
/// follows from the construction itself; given the satellite's slice genus
/// the generic bound `4g` applies.
pub fn satellite_rule(
    pattern: &Certificate,
    companion_coefficient: i64,
    satellite_genus: Option<u64>,
) -> Result<ConstructionVerdict, ConstructionError> {
    let report = pattern.validate()?;
    let bound = satellite_genus.map(|g| 4 * g);
    let mut verdict = ConstructionVerdict::yes(Rule::Satellite, bound).note(format!(
        "pattern of genus {} on {} strands, framing {companion_coefficient}",
        report.genus, pattern.strands
    ));
    if bound.is_none() {
        verdict = verdict.note("existence only: no coefficient is derived for the satellite");
    }
    Ok(verdict)
}

/// The `(p,q)` cable of a companion with fillable coefficient `m` is
/// fillable when `q/p > m`, since the pattern `T(p, q − mp)` is then a
/// positive braid. Otherwise the rule is silent.
pub fn cable_rule(p: i64, q: i64, companion_coefficient: i64) -> Result<ConstructionVerdict, ConstructionError> {
    if p < 1 {
        return Err(ConstructionError::BadWinding(p));
    }
    if p.gcd(&q) != 1 {
        return Err(ConstructionError::NotCoprime { p, q });
    }
    let excess = q - companion_coefficient * p;
    Ok(if excess > 0 {
        ConstructionVerdict::yes(Rule::Cable, None).note(format!(
            "pattern T({p},{excess}) is a positive braid in the solid torus"
        ))
    } else {
        ConstructionVerdict {
            fillable: Fillable::NotDetermined,
            coefficient_bound: None,
            rule: Rule::Cable,
            notes: vec![format!(
                "q − mp = {excess} ≤ 0; the rule is sufficient only, another route may apply"
            )],
            crossing_changes: None,
        }
    })
}

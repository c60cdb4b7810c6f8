//! Quasipositive factorizations into positive bands and positive full
//! twists, and the fillable surgery data they certify.
//!
//! A certificate on `n` strands is an ordered list of factors, each a
//! conjugate `w β w⁻¹` where `β` is either a single generator `σ_i` (a
//! band) or the full twist `(σ_s ⋯ σ_{s+m−2})^m` on `m` adjacent strands.
//! With exactly `n − 1` bands and a knotted closure, the factors with
//! `m ≥ 2` are singular points of a symplectic disk; blowing each up once
//! gives a disk class with parts `m_j`, so `r = Σ m_j²` is a fillable
//! smooth coefficient and `2g = Σ m_j(m_j − 1)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::braid::{check_letters, BraidError, BraidWord};
use crate::disk::DiskClass;
use crate::invariants::{alexander, self_linking};
use crate::laurent::LaurentPoly;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum CertificateError {
    #[error("certificate on {strands} strands needs {expected} bands, found {found}")]
    BandCountMismatch {
        strands: usize,
        expected: usize,
        found: usize,
    },
    #[error("flattened word closes to {0} components, expected a knot")]
    NotAKnot(usize),
    #[error("factor {factor}: {reason}")]
    IndexOutOfRange { factor: usize, reason: String },
    #[error("invalid factor: {0}")]
    InvalidFactor(String),
    #[error("twist-knot family starts at k = 1, got {0}")]
    TwistParameter(usize),
    #[error("cannot read certificate: {0}")]
    Format(String),
}

/// The core of a factor before conjugation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FactorKind {
    Band { index: usize },
    FullTwist { start: usize, multiplicity: usize },
}

/// One conjugated band or full twist.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawFactor", into = "RawFactor")]
pub struct Factor {
    conjugator: Vec<i32>,
    kind: FactorKind,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum RawFactor {
    Band {
        #[serde(default)]
        conjugator: Vec<i32>,
        index: usize,
    },
    Twist {
        #[serde(default)]
        conjugator: Vec<i32>,
        start: usize,
        multiplicity: usize,
    },
    Node {
        #[serde(default)]
        conjugator: Vec<i32>,
        #[serde(alias = "index")]
        start: usize,
    },
}

impl TryFrom<RawFactor> for Factor {
    type Error = CertificateError;

    fn try_from(raw: RawFactor) -> Result<Self, Self::Error> {
        match raw {
            RawFactor::Band { conjugator, index } => Factor::band(conjugator, index),
            RawFactor::Twist {
                conjugator,
                start,
                multiplicity,
            } => Factor::full_twist(conjugator, start, multiplicity),
            RawFactor::Node { conjugator, start } => Factor::node(conjugator, start),
        }
    }
}

impl From<Factor> for RawFactor {
    fn from(f: Factor) -> Self {
        match f.kind {
            FactorKind::Band { index } => RawFactor::Band {
                conjugator: f.conjugator,
                index,
            },
            FactorKind::FullTwist {
                start,
                multiplicity,
            } => RawFactor::Twist {
                conjugator: f.conjugator,
                start,
                multiplicity,
            },
        }
    }
}

fn check_conjugator(conjugator: &[i32]) -> Result<(), CertificateError> {
    if conjugator.contains(&0) {
        return Err(CertificateError::InvalidFactor(
            "conjugator contains the letter 0".into(),
        ));
    }
    Ok(())
}

impl Factor {
    /// The positive band `w σ_i w⁻¹`.
    pub fn band(conjugator: Vec<i32>, index: usize) -> Result<Self, CertificateError> {
        check_conjugator(&conjugator)?;
        if index == 0 {
            return Err(CertificateError::InvalidFactor(
                "band index must be at least 1".into(),
            ));
        }
        Ok(Self {
            conjugator,
            kind: FactorKind::Band { index },
        })
    }

    /// The positive node `w σ_s² w⁻¹`, a full twist on two strands.
    pub fn node(conjugator: Vec<i32>, start: usize) -> Result<Self, CertificateError> {
        Self::full_twist(conjugator, start, 2)
    }

    /// `w (σ_s σ_{s+1} ⋯ σ_{s+m−2})^m w⁻¹`, the monodromy of an ordinary
    /// `m`-fold point.
    pub fn full_twist(
        conjugator: Vec<i32>,
        start: usize,
        multiplicity: usize,
    ) -> Result<Self, CertificateError> {
        check_conjugator(&conjugator)?;
        if start == 0 {
            return Err(CertificateError::InvalidFactor(
                "full twist start strand must be at least 1".into(),
            ));
        }
        if multiplicity < 2 {
            return Err(CertificateError::InvalidFactor(format!(
                "full twist multiplicity must be at least 2, got {multiplicity}"
            )));
        }
        Ok(Self {
            conjugator,
            kind: FactorKind::FullTwist {
                start,
                multiplicity,
            },
        })
    }

    pub fn conjugator(&self) -> &[i32] {
        &self.conjugator
    }

    pub fn kind(&self) -> FactorKind {
        self.kind
    }

    pub fn is_band(&self) -> bool {
        matches!(self.kind, FactorKind::Band { .. })
    }

    /// Multiplicity of the singular point: 1 for a band.
    pub fn multiplicity(&self) -> usize {
        match self.kind {
            FactorKind::Band { .. } => 1,
            FactorKind::FullTwist { multiplicity, .. } => multiplicity,
        }
    }

    /// Largest generator index the unconjugated core uses.
    fn max_index(&self) -> usize {
        match self.kind {
            FactorKind::Band { index } => index,
            FactorKind::FullTwist {
                start,
                multiplicity,
            } => start + multiplicity - 2,
        }
    }

    fn core_letters(&self) -> Vec<i32> {
        match self.kind {
            FactorKind::Band { index } => vec![index as i32],
            FactorKind::FullTwist {
                start,
                multiplicity,
            } => {
                let cycle: Vec<i32> = (start..start + multiplicity - 1)
                    .map(|i| i as i32)
                    .collect();
                cycle.repeat(multiplicity)
            }
        }
    }

    /// `w β w⁻¹` as a word in `Br_strands`.
    pub fn flatten(&self, strands: usize) -> Result<BraidWord, BraidError> {
        BraidWord::new(strands, self.core_letters())?.conjugate(&self.conjugator)
    }

    /// The same factor conjugated further by `w`, i.e. `w (this) w⁻¹`.
    pub fn conjugated_by(&self, w: &[i32]) -> Factor {
        let mut conjugator = w.to_vec();
        conjugator.extend_from_slice(&self.conjugator);
        Factor {
            conjugator,
            kind: self.kind,
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let conj: Vec<String> = self.conjugator.iter().map(i32::to_string).collect();
        let conj = conj.join(" ");
        match self.kind {
            FactorKind::Band { index } => write!(f, "band([{conj}]; {index})"),
            FactorKind::FullTwist {
                start,
                multiplicity: 2,
            } => write!(f, "node([{conj}]; {start})"),
            FactorKind::FullTwist {
                start,
                multiplicity,
            } => write!(f, "twist([{conj}]; {start}, m={multiplicity})"),
        }
    }
}

/// An ordered factorization on a fixed number of strands.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub strands: usize,
    pub factors: Vec<Factor>,
}

/// Data derived from a valid certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateReport {
    /// Slice genus `g = Σ m_j(m_j − 1)/2` of the closure.
    pub genus: u64,
    /// Fillable smooth surgery coefficient `r = Σ m_j²`.
    pub surgery_coefficient: u64,
    /// Self-linking of the transverse closure, always `2g − 1`.
    pub self_linking: i64,
    pub flattened: BraidWord,
    pub band_count: usize,
    /// Multiplicities of the full-twist factors.
    pub disk_class: DiskClass,
    /// Whether a full twist of multiplicity `≥ 3` is used, beyond the
    /// band-and-node form.
    pub extended: bool,
}

impl Certificate {
    pub fn new(strands: usize, factors: Vec<Factor>) -> Self {
        Self { strands, factors }
    }

    pub fn band_count(&self) -> usize {
        self.factors.iter().filter(|f| f.is_band()).count()
    }

    fn check_indices(&self) -> Result<(), CertificateError> {
        let n = self.strands;
        if n == 0 {
            return Err(CertificateError::IndexOutOfRange {
                factor: 0,
                reason: "certificate has no strands".into(),
            });
        }
        for (k, f) in self.factors.iter().enumerate() {
            if f.max_index() >= n {
                return Err(CertificateError::IndexOutOfRange {
                    factor: k + 1,
                    reason: format!("{f} uses σ_{} outside Br_{n}", f.max_index()),
                });
            }
            check_letters(n, &f.conjugator).map_err(|e| CertificateError::IndexOutOfRange {
                factor: k + 1,
                reason: e.to_string(),
            })?;
        }
        Ok(())
    }

    /// Product of all flattened factors, free-reduced.
    pub fn flatten(&self) -> Result<BraidWord, CertificateError> {
        self.check_indices()?;
        let mut letters = Vec::new();
        for f in &self.factors {
            let w = f.flatten(self.strands).expect("indices checked");
            letters.extend_from_slice(w.letters());
        }
        Ok(BraidWord::new(self.strands, letters)
            .expect("indices checked")
            .free_reduce())
    }

    /// Checks the band count and the closure, and derives `g`, `r`, `sl`.
    pub fn validate(&self) -> Result<CertificateReport, CertificateError> {
        let flattened = self.flatten()?;
        let band_count = self.band_count();
        if band_count + 1 != self.strands {
            return Err(CertificateError::BandCountMismatch {
                strands: self.strands,
                expected: self.strands - 1,
                found: band_count,
            });
        }
        let components = flattened.closure_components();
        if components != 1 {
            return Err(CertificateError::NotAKnot(components));
        }
        let mults: Vec<u64> = self
            .factors
            .iter()
            .filter(|f| !f.is_band())
            .map(|f| f.multiplicity() as u64)
            .collect();
        let disk_class = DiskClass::new(mults).expect("multiplicities are at least 2");
        Ok(CertificateReport {
            genus: disk_class.genus(),
            surgery_coefficient: disk_class.surgery_coefficient(),
            self_linking: self_linking(&flattened),
            flattened,
            band_count,
            extended: disk_class.parts().iter().any(|&m| m >= 3),
            disk_class,
        })
    }

    /// Every factor conjugated by the common word `w`.
    pub fn conjugated_by(&self, w: &[i32]) -> Certificate {
        Certificate {
            strands: self.strands,
            factors: self.factors.iter().map(|f| f.conjugated_by(w)).collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, CertificateError> {
        serde_json::from_str(text).map_err(|e| CertificateError::Format(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates always serialize")
    }

    /// Compares the closure of the flattened word with a target braid
    /// through invariants that survive conjugation and positive Markov
    /// stabilization.
    pub fn check_target(&self, target: &BraidWord) -> Result<TargetCheck, CertificateError> {
        let flattened = self.flatten()?;
        let components = (
            flattened.closure_components(),
            target.closure_components(),
        );
        let sl = (self_linking(&flattened), self_linking(target));
        let alex = if components == (1, 1) {
            Some((
                alexander(&flattened).expect("knot closure"),
                alexander(target).expect("knot closure"),
            ))
        } else {
            None
        };
        Ok(TargetCheck {
            components,
            self_linking: sl,
            alexander: alex,
        })
    }
}

impl FromStr for Certificate {
    type Err = CertificateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::from_json(s)
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Br_{}:", self.strands)?;
        for factor in &self.factors {
            write!(f, " {factor}")?;
        }
        Ok(())
    }
}

/// Invariant comparison of a certificate's closure with a target braid,
/// each pair as (certificate, target). Agreement is evidence only: it
/// never proves the two closures are the same knot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetCheck {
    pub components: (usize, usize),
    pub self_linking: (i64, i64),
    pub alexander: Option<(LaurentPoly, LaurentPoly)>,
}

impl TargetCheck {
    pub fn consistent(&self) -> bool {
        self.components.0 == self.components.1
            && self.self_linking.0 == self.self_linking.1
            && self.alexander.as_ref().is_none_or(|(a, b)| a == b)
    }
}

/// The band product `σ(j,2j+1) · σ(1,2j+1)² · Π_{i=1..j} σ(i,j+i) σ(i+1,j+i)`
/// on `2j + 2` strands, with `σ(i,j)` the embedded band: `2j + 1` bands and
/// one node. Its closure has Alexander polynomial `j t − (2j − 1) + j t⁻¹`.
pub fn twist_band_product(j: usize) -> Result<Certificate, CertificateError> {
    if j < 1 {
        return Err(CertificateError::TwistParameter(j));
    }
    let embedded = |i: usize, j: usize| -> (Vec<i32>, usize) {
        ((i..j).map(|x| x as i32).collect(), j)
    };
    let mut factors = Vec::with_capacity(2 * j + 2);
    let (w, top) = embedded(j, 2 * j + 1);
    factors.push(Factor::band(w, top)?);
    let (w, top) = embedded(1, 2 * j + 1);
    factors.push(Factor::node(w, top)?);
    for i in 1..=j {
        let (w, top) = embedded(i, j + i);
        factors.push(Factor::band(w, top)?);
        let (w, top) = embedded(i + 1, j + i);
        factors.push(Factor::band(w, top)?);
    }
    Ok(Certificate::new(2 * j + 2, factors))
}

/// Certificate for the positive twist knot `K_{2k+1}` (`K_3 = 5_2`,
/// `K_5 = 7_2`, ...), whose Alexander polynomial is
/// `(k+1) t − (2k+1) + (k+1) t⁻¹`. This is [`twist_band_product`] at
/// `k + 1`, on `2k + 4` strands.
pub fn twist_knot_certificate(k: usize) -> Result<Certificate, CertificateError> {
    if k < 1 {
        return Err(CertificateError::TwistParameter(k));
    }
    twist_band_product(k + 1)
}

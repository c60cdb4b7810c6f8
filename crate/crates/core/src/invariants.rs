//! Classical invariants of braid closures: the reduced Burau
//! representation, the Alexander polynomial, self-linking number and the
//! genus of positive braid closures.

use crate::braid::BraidWord;
use crate::laurent::{LaurentMatrix, LaurentPoly};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("the reduced Burau representation needs at least 2 strands, got {0}")]
    TooFewStrands(usize),
    #[error("closure has {0} components, expected a knot")]
    NotAKnot(usize),
    #[error("word contains the negative letter {0}")]
    NegativeLetter(i32),
}

/// Image of a single letter under the reduced Burau representation of
/// `Br_n`, as an `(n-1) × (n-1)` matrix.
///
/// For a generator `σ_i` the matrix is the identity except on rows and
/// columns `i-1, i, i+1` (1-based, truncated at the borders), where it is
///
/// ```text
///   σ_i     = [ 1   t   0 ]      σ_i⁻¹ = [ 1   1     0 ]
///             [ 0  -t   0 ]              [ 0  -t⁻¹   0 ]
///             [ 0   1   1 ]              [ 0   t⁻¹   1 ]
/// ```
///
/// so that `σ_1 ∈ Br_2` maps to `[-t]`.
pub fn burau_letter(strands: usize, letter: i32) -> LaurentMatrix {
    let d = strands - 1;
    let k = letter.unsigned_abs() as usize - 1;
    let mut m = LaurentMatrix::identity(d);
    if letter > 0 {
        m.set(k, k, -LaurentPoly::t());
        if k >= 1 {
            m.set(k - 1, k, LaurentPoly::t());
        }
        if k + 1 < d {
            m.set(k + 1, k, LaurentPoly::one());
        }
    } else {
        m.set(k, k, LaurentPoly::monomial(-1, -1));
        if k >= 1 {
            m.set(k - 1, k, LaurentPoly::one());
        }
        if k + 1 < d {
            m.set(k + 1, k, LaurentPoly::monomial(1, -1));
        }
    }
    m
}

/// The reduced Burau matrix of a word; multiplicative over concatenation.
pub fn burau_reduced(word: &BraidWord) -> Result<LaurentMatrix, InvariantError> {
    let n = word.strands();
    if n < 2 {
        return Err(InvariantError::TooFewStrands(n));
    }
    Ok(word
        .letters()
        .iter()
        .fold(LaurentMatrix::identity(n - 1), |acc, &l| {
            acc.mul(&burau_letter(n, l))
        }))
}

/// Alexander polynomial of the closure of `word`, which must be a knot.
///
/// Computed as `det(B(β) − I) / (1 + t + ⋯ + t^{n−1})` and normalized to
/// the symmetric representative with `Δ(1) = 1`.
pub fn alexander(word: &BraidWord) -> Result<LaurentPoly, InvariantError> {
    let components = word.closure_components();
    if components != 1 {
        return Err(InvariantError::NotAKnot(components));
    }
    let n = word.strands();
    if n == 1 {
        return Ok(LaurentPoly::one());
    }
    let b = burau_reduced(word)?;
    let det = b.sub(&LaurentMatrix::identity(n - 1)).det();
    let cyclotomic = LaurentPoly::from_terms((0..n as i64).map(|k| (k, 1)));
    let quotient = det
        .div_exact(&cyclotomic)
        .expect("det(B - I) is divisible by 1 + t + ... + t^(n-1) for a knot closure");
    Ok(quotient
        .symmetrized()
        .expect("Alexander polynomial of a knot has even span"))
}

/// Self-linking number of the transverse closure: `e(β) − n`.
pub fn self_linking(word: &BraidWord) -> i64 {
    word.exponent_sum() - word.strands() as i64
}

/// Genus `(e − n + 1)/2` of the closure of a positive braid knot. This is
/// both the Seifert genus and the slice genus, since the fiber surface of a
/// positive braid is quasipositive.
pub fn positive_braid_genus(word: &BraidWord) -> Result<u64, InvariantError> {
    if let Some(&neg) = word.letters().iter().find(|&&l| l < 0) {
        return Err(InvariantError::NegativeLetter(neg));
    }
    let components = word.closure_components();
    if components != 1 {
        return Err(InvariantError::NotAKnot(components));
    }
    let twice = word.exponent_sum() - word.strands() as i64 + 1;
    debug_assert!(twice >= 0 && twice % 2 == 0);
    Ok((twice / 2) as u64)
}

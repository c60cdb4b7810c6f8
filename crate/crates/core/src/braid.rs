//! Words in the Artin braid group `Br_n`.
//!
//! A [`BraidWord`] is a strand count together with a list of signed, 1-indexed
//! generator letters: `i` stands for `σ_i` and `-i` for `σ_i⁻¹`. Nothing here
//! attempts to decide braid equivalence; words are compared through computable
//! invariants only.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("braid group needs at least one strand")]
    NoStrands,
    #[error("letter {letter} is not a generator of Br_{strands}")]
    InvalidLetter { letter: i32, strands: usize },
    #[error("embedded band σ({i},{j}) is not defined in Br_{strands}")]
    BandOutOfRange { i: usize, j: usize, strands: usize },
    #[error("cannot combine words on {left} and {right} strands")]
    StrandMismatch { left: usize, right: usize },
}

/// A word in the standard Artin generators of `Br_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawWord", into = "RawWord")]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

#[derive(Serialize, Deserialize)]
struct RawWord {
    strands: usize,
    letters: Vec<i32>,
}

impl TryFrom<RawWord> for BraidWord {
    type Error = BraidError;

    fn try_from(raw: RawWord) -> Result<Self, Self::Error> {
        BraidWord::new(raw.strands, raw.letters)
    }
}

impl From<BraidWord> for RawWord {
    fn from(w: BraidWord) -> Self {
        RawWord {
            strands: w.strands,
            letters: w.letters,
        }
    }
}

/// Checks that every letter names a generator (or inverse) of `Br_strands`.
pub(crate) fn check_letters(strands: usize, letters: &[i32]) -> Result<(), BraidError> {
    for &letter in letters {
        let index = letter.unsigned_abs() as usize;
        if letter == 0 || index >= strands {
            return Err(BraidError::InvalidLetter { letter, strands });
        }
    }
    Ok(())
}

/// Inverse of a letter sequence: reversed, with every sign flipped.
pub(crate) fn invert_letters(letters: &[i32]) -> Vec<i32> {
    letters.iter().rev().map(|l| -l).collect()
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::NoStrands);
        }
        check_letters(strands, &letters)?;
        Ok(Self { strands, letters })
    }

    /// The empty word in `Br_strands`.
    pub fn identity(strands: usize) -> Result<Self, BraidError> {
        Self::new(strands, Vec::new())
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    /// Word length `ℓ(β)`.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// True when every letter is a positive generator.
    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|&l| l > 0)
    }

    /// Algebraic letter count (the writhe of the closed braid diagram).
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|&l| i64::from(l.signum())).sum()
    }

    /// Deletes adjacent inverse pairs until none remain.
    ///
    /// A single left-to-right stack pass reaches the fixed point, so the
    /// result is freely reduced and the operation is idempotent.
    pub fn free_reduce(&self) -> BraidWord {
        let mut out: Vec<i32> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        BraidWord {
            strands: self.strands,
            letters: out,
        }
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: invert_letters(&self.letters),
        }
    }

    /// Concatenation `self · other`.
    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord, BraidError> {
        if self.strands != other.strands {
            return Err(BraidError::StrandMismatch {
                left: self.strands,
                right: other.strands,
            });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            strands: self.strands,
            letters,
        })
    }

    /// `w · self · w⁻¹` for a conjugating letter sequence `w`.
    pub fn conjugate(&self, w: &[i32]) -> Result<BraidWord, BraidError> {
        check_letters(self.strands, w)?;
        let mut letters = w.to_vec();
        letters.extend_from_slice(&self.letters);
        letters.extend(invert_letters(w));
        Ok(BraidWord {
            strands: self.strands,
            letters,
        })
    }

    /// Positive Markov stabilization: append `σ_n` in `Br_{n+1}`.
    pub fn stabilize(&self) -> BraidWord {
        let mut letters = self.letters.clone();
        letters.push(self.strands as i32);
        BraidWord {
            strands: self.strands + 1,
            letters,
        }
    }

    /// The permutation induced on strand positions.
    ///
    /// Letters act left to right: the transposition of `σ_i` is applied after
    /// everything to its left, in the sense that the result equals the
    /// functional composition `τ_{l₁} ∘ τ_{l₂} ∘ ⋯ ∘ τ_{l_k}`. For `σ₁σ₂` in
    /// `Br_3` this is the 3-cycle `1→2→3→1`.
    pub fn permutation(&self) -> Permutation {
        let mut images: Vec<usize> = (1..=self.strands).collect();
        // Composing on the right by τ permutes the entries at positions i, i+1.
        for &l in self.letters.iter().rev() {
            let i = l.unsigned_abs() as usize;
            for img in images.iter_mut() {
                if *img == i {
                    *img = i + 1;
                } else if *img == i + 1 {
                    *img = i;
                }
            }
        }
        Permutation { images }
    }

    /// Number of components of the closure `β̂`.
    pub fn closure_components(&self) -> usize {
        self.permutation().cycle_count()
    }

    pub fn is_knot(&self) -> bool {
        self.closure_components() == 1
    }
}

/// The embedded positive band
/// `σ(i,j) = σ_i σ_{i+1} ⋯ σ_{j-1} σ_j σ_{j-1}⁻¹ ⋯ σ_i⁻¹` in `Br_n`.
pub fn embedded_band(i: usize, j: usize, strands: usize) -> Result<BraidWord, BraidError> {
    if i == 0 || i > j || j + 1 > strands {
        return Err(BraidError::BandOutOfRange { i, j, strands });
    }
    let conj: Vec<i32> = (i..j).map(|x| x as i32).collect();
    let mut letters = conj.clone();
    letters.push(j as i32);
    letters.extend(invert_letters(&conj));
    BraidWord::new(strands, letters)
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}:", self.strands)?;
        for l in &self.letters {
            write!(f, " {l}")?;
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = BraidError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        parse_braid(text)
    }
}

fn parse_int(tok: &str, pos: usize) -> Result<i64, BraidError> {
    let digits = tok.strip_prefix('-').unwrap_or(tok);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(BraidError::Parse {
            pos,
            msg: format!("expected an integer, found {tok:?}"),
        });
    }
    let value: i64 = tok.parse().map_err(|_| BraidError::Parse {
        pos,
        msg: format!("integer {tok:?} out of range"),
    })?;
    if value == 0 {
        return Err(BraidError::Parse {
            pos,
            msg: "zero is not a generator index".into(),
        });
    }
    Ok(value)
}

/// Parses `B<n>: <letter> <letter> ...`.
pub fn parse_braid(text: &str) -> Result<BraidWord, BraidError> {
    let lead = text.len() - text.trim_start().len();
    let body = text.trim_start();
    let Some(rest) = body.strip_prefix('B') else {
        return Err(BraidError::Parse {
            pos: lead,
            msg: "braid word must start with 'B'".into(),
        });
    };
    let Some(colon) = rest.find(':') else {
        return Err(BraidError::Parse {
            pos: lead + 1 + rest.len(),
            msg: "missing ':' after strand count".into(),
        });
    };
    let count = &rest[..colon];
    let strands = parse_int(count, lead + 1)?;
    if strands < 0 {
        return Err(BraidError::Parse {
            pos: lead + 1,
            msg: "strand count must be positive".into(),
        });
    }
    let letters_start = lead + 1 + colon + 1;
    let tail = &rest[colon + 1..];
    let mut letters = Vec::new();
    let mut offset = 0;
    for tok in tail.split_whitespace() {
        // Locate the token inside the tail for error positions.
        let at = tail[offset..].find(tok).map_or(offset, |p| p + offset);
        offset = at + tok.len();
        let value = parse_int(tok, letters_start + at)?;
        let letter = i32::try_from(value).map_err(|_| BraidError::Parse {
            pos: letters_start + at,
            msg: format!("letter {tok:?} out of range"),
        })?;
        letters.push(letter);
    }
    let strands = usize::try_from(strands).map_err(|_| BraidError::Parse {
        pos: lead + 1,
        msg: "strand count out of range".into(),
    })?;
    BraidWord::new(strands, letters)
}

/// A bijection of `{1, …, n}` stored as its list of images.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            images: (1..=n).collect(),
        }
    }

    /// Builds a permutation from 1-based images, rejecting non-bijections.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &img in &images {
            if img == 0 || img > n || seen[img - 1] {
                return None;
            }
            seen[img - 1] = true;
        }
        Some(Self { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Image of the 1-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &img)| img == k + 1)
    }

    /// Cycle lengths, sorted non-increasing.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x] - 1;
                len += 1;
            }
            cycles.push(len);
        }
        cycles.sort_unstable_by(|a, b| b.cmp(a));
        cycles
    }

    pub fn cycle_count(&self) -> usize {
        self.cycle_type().len()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|i| i.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(n: usize, letters: &[i32]) -> BraidWord {
        BraidWord::new(n, letters.to_vec()).unwrap()
    }

    #[test]
    fn parses_examples() {
        assert_eq!(parse_braid("B4: 1 2 2 -3").unwrap(), w(4, &[1, 2, 2, -3]));
        assert_eq!(parse_braid("B2:").unwrap(), w(2, &[]));
        assert_eq!(
            parse_braid("B3: 1 3"),
            Err(BraidError::InvalidLetter {
                letter: 3,
                strands: 3
            })
        );
    }

    #[test]
    fn parse_errors_carry_positions() {
        match parse_braid("B3: 1 x") {
            Err(BraidError::Parse { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("unexpected {other:?}"),
        }
        match parse_braid("B3: 1 0") {
            Err(BraidError::Parse { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_braid("3: 1"), Err(BraidError::Parse { pos: 0, .. })));
        assert!(matches!(parse_braid("B3 1"), Err(BraidError::Parse { .. })));
        assert!(matches!(parse_braid("B0:"), Err(BraidError::Parse { .. })));
        assert!(matches!(parse_braid("B-2:"), Err(BraidError::Parse { .. })));
    }

    #[test]
    fn formats_canonically() {
        assert_eq!(w(4, &[1, 2, 2, -3]).to_string(), "B4: 1 2 2 -3");
        assert_eq!(w(2, &[]).to_string(), "B2:");
        assert_eq!(parse_braid("  B3:1   -2\t1 ").unwrap().to_string(), "B3: 1 -2 1");
    }

    #[test]
    fn free_reduction_examples() {
        assert_eq!(w(3, &[1, -1, 2]).free_reduce(), w(3, &[2]));
        assert_eq!(w(3, &[1, 2, -2, -1]).free_reduce(), w(3, &[]));
        assert_eq!(w(3, &[1, 2, 1]).free_reduce(), w(3, &[1, 2, 1]));
    }

    #[test]
    fn permutation_examples() {
        let p = w(3, &[1, 2]).permutation();
        assert_eq!(p.images(), &[2, 3, 1]);
        assert!(w(3, &[]).permutation().is_identity());
        assert!(w(2, &[1, 1]).permutation().is_identity());
    }

    #[test]
    fn closure_component_examples() {
        assert_eq!(w(3, &[1, 2]).closure_components(), 1);
        assert_eq!(w(3, &[]).closure_components(), 3);
    }

    #[test]
    fn exponent_sum_examples() {
        assert_eq!(w(4, &[1, 2, 2, -3]).exponent_sum(), 2);
        assert_eq!(w(4, &[]).exponent_sum(), 0);
        let pretzel = w(3, &[1, 2, 2, 1, 1, 2, 2, 2, 2, 2, 2, 2]);
        assert_eq!(pretzel.exponent_sum(), 12);
    }

    #[test]
    fn embedded_band_examples() {
        assert_eq!(embedded_band(2, 2, 4).unwrap(), w(4, &[2]));
        assert_eq!(embedded_band(1, 2, 3).unwrap(), w(3, &[1, 2, -1]));
        assert_eq!(embedded_band(1, 3, 4).unwrap(), w(4, &[1, 2, 3, -2, -1]));
        assert!(embedded_band(2, 1, 4).is_err());
        assert!(embedded_band(1, 3, 3).is_err());
        assert!(embedded_band(0, 1, 3).is_err());
    }

    #[test]
    fn stabilize_and_concat() {
        let a = w(2, &[1, 1, 1]);
        assert_eq!(a.stabilize(), w(3, &[1, 1, 1, 2]));
        assert!(a.concat(&w(3, &[1])).is_err());
        assert_eq!(a.concat(&w(2, &[-1])).unwrap(), w(2, &[1, 1, 1, -1]));
        assert_eq!(a.conjugate(&[1]).unwrap(), w(2, &[1, 1, 1, 1, -1]));
    }

    /// Independent cycle counter: follows individual strands through the
    /// word, one crossing at a time, and glues the top of the braid to the
    /// bottom.
    fn brute_force_components(word: &BraidWord) -> usize {
        let n = word.strands();
        let track = |start: usize| {
            let mut pos = start;
            for &l in word.letters() {
                let i = l.unsigned_abs() as usize;
                if pos == i {
                    pos = i + 1;
                } else if pos == i + 1 {
                    pos = i;
                }
            }
            pos
        };
        let mut visited = vec![false; n + 1];
        let mut components = 0;
        for s in 1..=n {
            if visited[s] {
                continue;
            }
            components += 1;
            let mut x = s;
            while !visited[x] {
                visited[x] = true;
                x = track(x);
            }
        }
        components
    }

    fn arb_word() -> impl Strategy<Value = BraidWord> {
        (2usize..=8).prop_flat_map(|n| {
            let max = (n - 1) as i32;
            prop::collection::vec(
                (1..=max, any::<bool>()).prop_map(|(i, neg)| if neg { -i } else { i }),
                0..=40,
            )
            .prop_map(move |letters| BraidWord::new(n, letters).unwrap())
        })
    }

    proptest! {
        #[test]
        fn free_reduce_is_idempotent_and_invariant(word in arb_word()) {
            let once = word.free_reduce();
            prop_assert_eq!(once.free_reduce(), once.clone());
            prop_assert_eq!(once.permutation(), word.permutation());
            prop_assert_eq!(once.exponent_sum(), word.exponent_sum());
            for pair in once.letters().windows(2) {
                prop_assert_ne!(pair[0], -pair[1]);
            }
        }

        #[test]
        fn components_match_brute_force(word in arb_word()) {
            prop_assert_eq!(word.closure_components(), brute_force_components(&word));
        }

        #[test]
        fn band_is_reduced_transposition(n in 2usize..=9, a in 1usize..=8, b in 1usize..=8) {
            let (i, j) = (a.min(b), a.max(b));
            prop_assume!(j < n);
            let band = embedded_band(i, j, n).unwrap();
            prop_assert_eq!(band.free_reduce(), band.clone());
            let p = band.permutation();
            for x in 1..=n {
                let expected = if x == i { j + 1 } else if x == j + 1 { i } else { x };
                prop_assert_eq!(p.apply(x), expected);
            }
        }

        #[test]
        fn parse_format_roundtrip(word in arb_word()) {
            prop_assert_eq!(parse_braid(&word.to_string()).unwrap(), word);
        }
    }
}

//! Homology classes `Σ n_j e_j` of embedded symplectic disks in blowups of
//! the 4-ball, and the integer arithmetic they impose on fillable surgery
//! coefficients.
//!
//! A class with parts `{n_j}` gives smooth surgery coefficient
//! `r = −Δ·Δ = Σ n_j²` and forces slice genus `g` with `2g = Σ n_j(n_j − 1)`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum DiskError {
    #[error("disk class parts must be positive")]
    ZeroPart,
    #[error("cannot parse disk class {0:?}")]
    Parse(String),
    #[error("no part equal to 1: no exceptional sphere meets the disk once")]
    NoUnitPart,
    #[error("a positive slice genus rules out an embedded symplectic disk in the 4-ball")]
    SliceDiskWithGenus,
    #[error("coefficient 0 with no slice disk is impossible: a fillable 0-surgery forces a slice disk")]
    ImpossibleZeroSurgery,
}

/// Multiset of positive multiplicities, kept sorted non-increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DiskClass {
    parts: Vec<u64>,
}

impl DiskClass {
    pub fn new(mut parts: Vec<u64>) -> Result<Self, DiskError> {
        if parts.contains(&0) {
            return Err(DiskError::ZeroPart);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { parts })
    }

    /// The class of a disk in `B⁴` itself.
    pub fn empty() -> Self {
        Self::default()
    }

    /// `count` copies of `part`, e.g. the generic class `{2}ᵍ` of `g`
    /// blown-up double points.
    pub fn repeated(part: u64, count: usize) -> Result<Self, DiskError> {
        Self::new(vec![part; count])
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `r = Σ n_j²`.
    pub fn surgery_coefficient(&self) -> u64 {
        self.parts.iter().map(|n| n * n).sum()
    }

    /// `Σ n_j(n_j − 1)/2`; each term is an integer.
    pub fn genus(&self) -> u64 {
        self.parts.iter().map(|n| n * (n - 1) / 2).sum()
    }

    /// `Σ n_j`, which equals `r − 2g`.
    pub fn multiplicity_sum(&self) -> u64 {
        self.parts.iter().sum()
    }

    pub fn has_unit_part(&self) -> bool {
        self.parts.last() == Some(&1)
    }

    /// Blows down one exceptional sphere met transversely once: removes a
    /// part equal to 1, lowering `r` by 1.
    pub fn blow_down(&self) -> Result<DiskClass, DiskError> {
        if !self.has_unit_part() {
            return Err(DiskError::NoUnitPart);
        }
        let mut parts = self.parts.clone();
        parts.pop();
        Ok(Self { parts })
    }

    /// Blows up a smooth point of the disk: adds a part 1, raising `r` by 1.
    pub fn blow_up_point(&self) -> DiskClass {
        let mut parts = self.parts.clone();
        parts.push(1);
        Self { parts }
    }
}

impl fmt::Display for DiskClass {
    /// Comma-separated parts in non-increasing order; the empty class is `{}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "{{}}");
        }
        let parts: Vec<String> = self.parts.iter().map(u64::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for DiskClass {
    type Err = DiskError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || s == "{}" {
            return Ok(Self::empty());
        }
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<u64>().map_err(|_| DiskError::Parse(s.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(parts)
    }
}

/// All disk classes with `Σ n_j² = r` and `Σ n_j(n_j − 1) = 2g`, in
/// canonical (lexicographic on non-increasing parts) order.
///
/// Exhaustive: parts are bounded by `⌊√r⌋`, and the search is pruned by both
/// constraints. Parts equal to 1 do not affect the genus, so their number is
/// whatever `r` has left once the larger parts are fixed.
pub fn consistent_classes(r: u64, g: u64) -> Vec<DiskClass> {
    let mut out = Vec::new();
    let mut parts = Vec::new();
    let max_part = r.isqrt();
    search(r, 2 * g, max_part, &mut parts, &mut out);
    out.sort();
    out
}

fn search(r_left: u64, twice_g_left: u64, max_part: u64, parts: &mut Vec<u64>, out: &mut Vec<DiskClass>) {
    if twice_g_left == 0 {
        let mut done = parts.clone();
        done.extend(std::iter::repeat_n(1, r_left as usize));
        out.push(DiskClass { parts: done });
        // Larger parts would add genus; nothing else to find on this branch.
        return;
    }
    let mut n = max_part.min(r_left.isqrt());
    while n >= 2 {
        let sq = n * n;
        let gn = n * (n - 1);
        if gn <= twice_g_left {
            parts.push(n);
            search(r_left - sq, twice_g_left - gn, n, parts, out);
            parts.pop();
        }
        n -= 1;
    }
}

/// Smallest `r` admitting a disk class of genus `g`: the arithmetic lower
/// bound on `μ` for a knot of slice genus `g`. Always at most `4g`.
pub fn min_consistent_coefficient(g: u64) -> u64 {
    (2 * g..=4 * g)
        .find(|&r| !consistent_classes(r, g).is_empty())
        .expect("the class {2}^g has r = 4g")
}

/// Values the literature lists for the blow-down criterion: every
/// representation of these `r` as a sum of positive squares uses a 1.
pub const CITED_GAP_LIST: [u64; 11] = [1, 2, 3, 5, 6, 7, 10, 11, 14, 15, 19];

/// All `1 ≤ r ≤ limit` with no representation as a sum of squares `≥ 4`,
/// i.e. the gaps of the numerical semigroup generated by `{m² : m ≥ 2}`.
pub fn gap_set(limit: u64) -> BTreeSet<u64> {
    let limit = limit as usize;
    let mut reachable = vec![false; limit + 1];
    reachable[0] = true;
    let mut m = 2usize;
    while m * m <= limit {
        let sq = m * m;
        for v in sq..=limit {
            if reachable[v - sq] {
                reachable[v] = true;
            }
        }
        m += 1;
    }
    (1..=limit)
        .filter(|&v| !reachable[v])
        .map(|v| v as u64)
        .collect()
}

/// Computed gaps up to `limit` that the cited list omits.
pub fn gap_discrepancies(limit: u64) -> Vec<u64> {
    gap_set(limit)
        .into_iter()
        .filter(|v| !CITED_GAP_LIST.contains(v))
        .collect()
}

/// Bounds on the minimal fillable coefficient `μ` of a knot with slice
/// genus `g`, assuming some positive surgery is fillable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MuBounds {
    /// `2g`, the raw lower bound.
    pub lower: u64,
    /// `2g + 1` when `g > 0` (the bound is strict), otherwise 0.
    pub effective_lower: u64,
    /// Least `r` for which a disk class of genus `g` exists.
    pub arithmetic_lower: u64,
    /// `4g`, realized by blowing up `g` double points.
    pub upper: u64,
}

/// `2g < μ ≤ 4g` for `g > 0`, and `μ = 0` for `g = 0`.
///
/// With `g = 0` the upper bound already forces `μ = 0` and hence a slice
/// disk, so `slice_disk_exists` only matters as a consistency check: it
/// cannot hold when `g > 0`.
pub fn mu_bounds(g: u64, slice_disk_exists: bool) -> Result<MuBounds, DiskError> {
    if g > 0 && slice_disk_exists {
        return Err(DiskError::SliceDiskWithGenus);
    }
    Ok(MuBounds {
        lower: 2 * g,
        effective_lower: if g == 0 { 0 } else { 2 * g + 1 },
        arithmetic_lower: min_consistent_coefficient(g),
        upper: 4 * g,
    })
}

/// Whether a weak filling of the surgery with coefficient `r` deforms to a
/// strong one. For `r ≠ 0` the meridian dies in real homology; for `r = 0`
/// the disk sits in `B⁴` where the symplectic form is exact. In `S³` both
/// branches always apply, so the answer is `true` for every consistent
/// input.
pub fn strong_fill_predicate(r: u64, slice: bool) -> Result<bool, DiskError> {
    if r == 0 && !slice {
        return Err(DiskError::ImpossibleZeroSurgery);
    }
    Ok(r != 0 || slice)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dc(parts: &[u64]) -> DiskClass {
        DiskClass::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn coefficient_examples() {
        assert_eq!(dc(&[3, 2, 2]).surgery_coefficient(), 17);
        assert_eq!(DiskClass::empty().surgery_coefficient(), 0);
        assert_eq!(dc(&[2, 2, 2, 2, 2]).surgery_coefficient(), 20);
    }

    #[test]
    fn genus_examples() {
        assert_eq!(dc(&[3, 2, 2]).genus(), 5);
        assert_eq!(dc(&[1, 1, 1]).genus(), 0);
        for g in 0..10 {
            let d = DiskClass::repeated(2, g).unwrap();
            assert_eq!(d.genus(), g as u64);
            assert_eq!(d.surgery_coefficient(), 4 * g as u64);
        }
    }

    #[test]
    fn blow_moves() {
        let d = dc(&[3, 2, 1]);
        assert_eq!(d.surgery_coefficient(), 14);
        let down = d.blow_down().unwrap();
        assert_eq!(down, dc(&[3, 2]));
        assert_eq!(down.surgery_coefficient(), 13);
        assert_eq!(dc(&[1]).blow_down().unwrap(), DiskClass::empty());
        assert_eq!(dc(&[3, 2, 2]).blow_down(), Err(DiskError::NoUnitPart));

        assert_eq!(DiskClass::empty().blow_up_point(), dc(&[1]));
        assert_eq!(dc(&[3, 2, 2]).blow_up_point(), dc(&[3, 2, 2, 1]));
        assert_eq!(dc(&[3, 2, 2]).blow_up_point().surgery_coefficient(), 18);
        assert_eq!(dc(&[2]).blow_up_point(), dc(&[2, 1]));
        assert_eq!(DiskClass::new(vec![2, 0]), Err(DiskError::ZeroPart));
    }

    #[test]
    fn text_form() {
        assert_eq!(dc(&[2, 3, 2]).to_string(), "3,2,2");
        assert_eq!("3, 2,2".parse::<DiskClass>().unwrap(), dc(&[3, 2, 2]));
        assert_eq!("{}".parse::<DiskClass>().unwrap(), DiskClass::empty());
        assert_eq!(DiskClass::empty().to_string(), "{}");
        assert!("3,x".parse::<DiskClass>().is_err());
        assert_eq!("3,0".parse::<DiskClass>(), Err(DiskError::ZeroPart));
    }

    /// Independent oracle: enumerate every non-increasing sequence of parts
    /// with squares summing to `r`, then filter by genus.
    fn oracle_classes(r: u64, g: u64) -> Vec<DiskClass> {
        fn partitions(r: u64, max: u64, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
            if r == 0 {
                out.push(acc.clone());
                return;
            }
            for n in (1..=max).rev() {
                if n * n <= r {
                    acc.push(n);
                    partitions(r - n * n, n, acc, out);
                    acc.pop();
                }
            }
        }
        let mut all = Vec::new();
        partitions(r, r.max(1), &mut Vec::new(), &mut all);
        let mut hits: Vec<DiskClass> = all
            .into_iter()
            .filter(|p| p.iter().map(|n| n * (n - 1)).sum::<u64>() == 2 * g)
            .map(|p| DiskClass::new(p).unwrap())
            .collect();
        hits.sort();
        hits
    }

    #[test]
    fn consistent_class_examples() {
        assert!(consistent_classes(16, 5).is_empty());
        assert_eq!(consistent_classes(17, 5), vec![dc(&[3, 2, 2])]);
        assert_eq!(consistent_classes(0, 0), vec![DiskClass::empty()]);
        assert_eq!(consistent_classes(18, 5), vec![dc(&[3, 2, 2, 1])]);
        assert_eq!(consistent_classes(18, 6), vec![dc(&[3, 3]), dc(&[4, 1, 1])]);
    }

    #[test]
    fn consistent_classes_match_oracle() {
        for r in 0..=60 {
            for g in 0..=8 {
                assert_eq!(consistent_classes(r, g), oracle_classes(r, g), "r={r} g={g}");
            }
        }
    }

    #[test]
    fn genus_identity_exhaustive() {
        // all multisets with parts ≤ 6 and at most 8 parts
        fn walk(max: u64, left: usize, acc: &mut Vec<u64>) {
            let d = DiskClass::new(acc.clone()).unwrap();
            assert_eq!(d.surgery_coefficient() - 2 * d.genus(), d.multiplicity_sum());
            if left == 0 {
                return;
            }
            for n in 1..=max {
                acc.push(n);
                walk(n, left - 1, acc);
                acc.pop();
            }
        }
        walk(6, 8, &mut Vec::new());
    }

    /// Brute-force semigroup closure of `{m² : m ≥ 2}` as an independent
    /// check on `gap_set`.
    fn oracle_gaps(limit: u64) -> BTreeSet<u64> {
        let squares: Vec<u64> = (2..).map(|m: u64| m * m).take_while(|&s| s <= limit).collect();
        let mut reach = BTreeSet::from([0u64]);
        let mut frontier = vec![0u64];
        while let Some(v) = frontier.pop() {
            for s in &squares {
                let next = v + s;
                if next <= limit && reach.insert(next) {
                    frontier.push(next);
                }
            }
        }
        (1..=limit).filter(|v| !reach.contains(v)).collect()
    }

    #[test]
    fn gap_set_examples() {
        assert_eq!(gap_set(19), BTreeSet::from(CITED_GAP_LIST));
        let mut with_23 = BTreeSet::from(CITED_GAP_LIST);
        with_23.insert(23);
        assert_eq!(gap_set(30), with_23);
        assert_eq!(gap_set(3), BTreeSet::from([1, 2, 3]));
        assert_eq!(gap_discrepancies(19), Vec::<u64>::new());
        assert_eq!(gap_discrepancies(30), vec![23]);
    }

    #[test]
    fn gap_set_matches_oracle_and_stabilizes() {
        let gaps = gap_set(200);
        assert_eq!(gaps, oracle_gaps(200));
        assert_eq!(gaps.iter().max(), Some(&23));
        for n in 24..=200 {
            assert_eq!(gap_set(n), gaps.iter().copied().filter(|&v| v <= n).collect());
        }
    }

    #[test]
    fn gaps_force_unit_parts() {
        for r in gap_set(60) {
            for g in 0..=8 {
                for class in consistent_classes(r, g) {
                    assert!(class.has_unit_part(), "r={r} class={class}");
                }
            }
        }
    }

    #[test]
    fn mu_bound_examples() {
        let b1 = mu_bounds(1, false).unwrap();
        assert_eq!((b1.effective_lower, b1.upper), (3, 4));
        // 3 is a gap, so the least admissible coefficient is 4
        assert!(gap_set(3).contains(&3));
        assert_eq!(b1.arithmetic_lower, 4);
        let b0 = mu_bounds(0, true).unwrap();
        assert_eq!((b0.effective_lower, b0.upper), (0, 0));
        let b5 = mu_bounds(5, false).unwrap();
        assert_eq!((b5.effective_lower, b5.upper), (11, 20));
        assert_eq!(b5.arithmetic_lower, 17);
        assert_eq!(mu_bounds(2, true), Err(DiskError::SliceDiskWithGenus));
    }

    #[test]
    fn strong_fill_examples() {
        assert_eq!(strong_fill_predicate(17, false), Ok(true));
        assert_eq!(strong_fill_predicate(0, true), Ok(true));
        assert_eq!(strong_fill_predicate(0, false), Err(DiskError::ImpossibleZeroSurgery));
    }

    proptest! {
        #[test]
        fn blow_down_undoes_blow_up(parts in prop::collection::vec(1u64..=6, 0..8)) {
            let d = DiskClass::new(parts).unwrap();
            prop_assert_eq!(d.blow_up_point().blow_down().unwrap(), d.clone());
            if d.has_unit_part() {
                prop_assert_eq!(d.blow_down().unwrap().blow_up_point(), d.clone());
                prop_assert_eq!(d.blow_down().unwrap().genus(), d.genus());
            }
        }

        #[test]
        fn non_gaps_stay_fillable_upward(r in 0u64..=60, g in 0u64..=8) {
            prop_assume!(!gap_set(r.max(1)).contains(&r));
            if !consistent_classes(r, g).is_empty() {
                prop_assert!(!consistent_classes(r + 1, g).is_empty());
            }
        }
    }
}

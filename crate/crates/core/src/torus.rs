//! Exact fillable surgery data for positive torus knots `T(p, q)`.
//!
//! The minimal fillable smooth coefficient is `μ = ⌈m⌉ = pq − a_n`, where
//! `m = pq − c(p,q)` is the Owens–Strle invariant and `a_n` the last term of
//! the continued fraction of `p/q`. The blowup schedule resolving the
//! singularity of `x^p + y^q = 0` follows the Euclidean algorithm.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;

use crate::braid::BraidWord;
use crate::disk::DiskClass;

pub type Rational = Ratio<i64>;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum TorusError {
    #[error("T({p},{q}) needs coprime parameters")]
    NotCoprime { p: i64, q: i64 },
    #[error("continued fraction of {p}/{q} needs p > q ≥ 1")]
    NotGreater { p: i64, q: i64 },
    #[error("torus knot parameters must be positive, got ({p},{q})")]
    NonPositive { p: i64, q: i64 },
    #[error("T({p},{q}) is the unknot; no singular point to resolve")]
    Unknot { p: i64, q: i64 },
    #[error("T({p},{q}) is too large for exact 64-bit arithmetic")]
    Overflow { p: i64, q: i64 },
}

/// `p/q = a_1 + 1/(a_2 + 1/(⋯ + 1/a_n))` with all `a_j ≥ 1` and `a_n ≥ 2`
/// (unless `n = 1`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ContinuedFraction {
    coefficients: Vec<i64>,
}

impl ContinuedFraction {
    pub fn coefficients(&self) -> &[i64] {
        &self.coefficients
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn last(&self) -> i64 {
        *self.coefficients.last().expect("nonempty expansion")
    }

    pub fn value(&self) -> Rational {
        evaluate(&self.coefficients)
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coefficients.iter().map(i64::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Evaluates `[c_1, …, c_k]⁺` exactly, from the innermost term out.
pub fn evaluate(coefficients: &[i64]) -> Rational {
    let mut it = coefficients.iter().rev();
    let Some(&innermost) = it.next() else {
        return Rational::from_integer(0);
    };
    it.fold(Rational::from_integer(innermost), |acc, &a| {
        Rational::from_integer(a) + acc.recip()
    })
}

/// Euclidean expansion of `p/q` for coprime `p > q ≥ 1`.
pub fn continued_fraction(p: i64, q: i64) -> Result<ContinuedFraction, TorusError> {
    if p <= 0 || q <= 0 {
        return Err(TorusError::NonPositive { p, q });
    }
    if p <= q {
        return Err(TorusError::NotGreater { p, q });
    }
    if p.gcd(&q) != 1 {
        return Err(TorusError::NotCoprime { p, q });
    }
    Ok(ContinuedFraction {
        coefficients: euclid(p, q).0,
    })
}

/// Quotients and remainders `p_0 = p, p_1 = q, …, p_n = gcd`.
fn euclid(p: i64, q: i64) -> (Vec<i64>, Vec<i64>) {
    let mut quotients = Vec::new();
    let mut remainders = vec![p, q];
    let (mut a, mut b) = (p, q);
    while b != 0 {
        let (quot, rem) = a.div_rem(&b);
        quotients.push(quot);
        if rem != 0 {
            remainders.push(rem);
        }
        (a, b) = (b, rem);
    }
    (quotients, remainders)
}

/// Validated torus knot parameters with `p > q`. `q = 1` is the unknot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TorusKnot {
    p: i64,
    q: i64,
}

impl TorusKnot {
    /// Accepts either order; `T(p,q) ≅ T(q,p)`.
    pub fn new(p: i64, q: i64) -> Result<Self, TorusError> {
        if p <= 0 || q <= 0 {
            return Err(TorusError::NonPositive { p, q });
        }
        let (p, q) = if p >= q { (p, q) } else { (q, p) };
        if p.gcd(&q) != 1 {
            return Err(TorusError::NotCoprime { p, q });
        }
        if p.checked_mul(q).is_none_or(|pq| pq > i64::MAX / 4) {
            return Err(TorusError::Overflow { p, q });
        }
        Ok(Self { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn is_unknot(&self) -> bool {
        self.q == 1
    }

    pub fn genus(&self) -> i64 {
        (self.p - 1) * (self.q - 1) / 2
    }

    fn nontrivial(&self) -> Result<ContinuedFraction, TorusError> {
        if self.is_unknot() {
            return Err(TorusError::Unknot {
                p: self.p,
                q: self.q,
            });
        }
        continued_fraction(self.p, self.q)
    }

    /// `μ(T(p,q)) = pq − a_n`.
    pub fn mu(&self) -> Result<i64, TorusError> {
        let cf = self.nontrivial()?;
        Ok(self.p * self.q - cf.last())
    }

    /// `c(p,q) = q/p*` for even `n`, `p/q*` for odd `n`, where `p*`, `q*` are
    /// the inverses of `p` mod `q` and of `q` mod `p`.
    pub fn c_modular(&self) -> Result<Rational, TorusError> {
        let cf = self.nontrivial()?;
        let (p, q) = (self.p, self.q);
        Ok(if cf.len() % 2 == 0 {
            Rational::new(q, mod_inverse(p, q))
        } else {
            Rational::new(p, mod_inverse(q, p))
        })
    }

    /// `c(p,q)` as the reversed expansion `[a_n, a_{n−1}, …, a_m]⁺` with
    /// `m = 2` for even `n` and `m = 1` for odd `n`.
    pub fn c_reversed(&self) -> Result<Rational, TorusError> {
        let cf = self.nontrivial()?;
        let stop = if cf.len() % 2 == 0 { 1 } else { 0 };
        let reversed: Vec<i64> = cf.coefficients()[stop..].iter().rev().copied().collect();
        Ok(evaluate(&reversed))
    }

    /// `m(T(p,q)) = pq − c(p,q)`.
    pub fn m(&self) -> Result<Rational, TorusError> {
        Ok(Rational::from_integer(self.p * self.q) - self.c_modular()?)
    }

    /// The standard positive braid `(σ_1 ⋯ σ_{q−1})^p` on `q` strands.
    pub fn braid(&self) -> BraidWord {
        let cycle: Vec<i32> = (1..self.q as i32).collect();
        BraidWord::new(self.q as usize, cycle.repeat(self.p as usize))
            .expect("generators of Br_q")
    }

    pub fn report(&self) -> TorusReport {
        TorusReport::new(*self)
    }
}

impl fmt::Display for TorusKnot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T({},{})", self.p, self.q)
    }
}

/// Inverse of `a` modulo `m` in `{1, …, m−1}`; `a` and `m` coprime, `m ≥ 2`.
fn mod_inverse(a: i64, m: i64) -> i64 {
    let e = a.extended_gcd(&m);
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(m)
}

/// One line of the Euclidean resolution: `count` blowups, each of
/// multiplicity `multiplicity`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlowupStep {
    pub multiplicity: i64,
    pub count: i64,
}

/// Everything the tool computes about `T(p, q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusReport {
    pub knot: TorusKnot,
    pub cf: ContinuedFraction,
    /// `p_0 = p, p_1 = q, …, p_n = 1`.
    pub remainders: Vec<i64>,
    /// Steps `j = 1 … n−1`; the last Euclidean line needs no blowup since the
    /// curve is already smooth once the multiplicity reaches 1.
    pub schedule: Vec<BlowupStep>,
    /// `a_n`, the tangency order left over at the smooth terminal step.
    pub terminal_tangency: i64,
    pub mu: i64,
    pub m: Rational,
    pub c: Rational,
    pub genus: i64,
    pub disk_class: DiskClass,
}

impl TorusReport {
    /// Full report; the unknot (`q = 1`) gets the degenerate report with
    /// `μ = m = c = 0`, empty schedule and genus 0.
    pub fn new(knot: TorusKnot) -> Self {
        let (p, q) = (knot.p, knot.q);
        if knot.is_unknot() {
            return Self {
                knot,
                cf: ContinuedFraction {
                    coefficients: vec![p],
                },
                remainders: vec![p, 1],
                schedule: Vec::new(),
                terminal_tangency: p,
                mu: 0,
                m: Rational::from_integer(0),
                c: Rational::from_integer(0),
                genus: 0,
                disk_class: DiskClass::empty(),
            };
        }
        let (quotients, remainders) = euclid(p, q);
        let n = quotients.len();
        let schedule: Vec<BlowupStep> = (0..n - 1)
            .map(|j| BlowupStep {
                multiplicity: remainders[j + 1],
                count: quotients[j],
            })
            .collect();
        let parts: Vec<u64> = schedule
            .iter()
            .flat_map(|s| std::iter::repeat_n(s.multiplicity as u64, s.count as usize))
            .collect();
        let c = knot.c_modular().expect("nontrivial torus knot");
        Self {
            knot,
            cf: ContinuedFraction {
                coefficients: quotients.clone(),
            },
            remainders,
            schedule,
            terminal_tangency: quotients[n - 1],
            mu: p * q - quotients[n - 1],
            m: Rational::from_integer(p * q) - c,
            c,
            genus: knot.genus(),
            disk_class: DiskClass::new(parts).expect("multiplicities are positive"),
        }
    }

    /// `−Δ·Δ = Σ_{j<n} a_j p_j²` of the resolved disk.
    pub fn resolved_self_intersection(&self) -> i64 {
        self.schedule
            .iter()
            .map(|s| s.count * s.multiplicity * s.multiplicity)
            .sum()
    }
}

pub fn mu_torus(p: i64, q: i64) -> Result<i64, TorusError> {
    TorusKnot::new(p, q)?.mu()
}

pub fn m_torus(p: i64, q: i64) -> Result<Rational, TorusError> {
    TorusKnot::new(p, q)?.m()
}

pub fn reversed_cf_c(p: i64, q: i64) -> Result<Rational, TorusError> {
    TorusKnot::new(p, q)?.c_reversed()
}

pub fn blowup_schedule(p: i64, q: i64) -> Result<TorusReport, TorusError> {
    Ok(TorusKnot::new(p, q)?.report())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::positive_braid_genus;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn continued_fraction_examples() {
        assert_eq!(continued_fraction(3, 2).unwrap().coefficients(), &[1, 2]);
        assert_eq!(continued_fraction(5, 3).unwrap().coefficients(), &[1, 1, 2]);
        assert_eq!(continued_fraction(9, 2).unwrap().coefficients(), &[4, 2]);
        assert_eq!(continued_fraction(7, 1).unwrap().coefficients(), &[7]);
        assert_eq!(continued_fraction(4, 2), Err(TorusError::NotCoprime { p: 4, q: 2 }));
        assert_eq!(continued_fraction(2, 3), Err(TorusError::NotGreater { p: 2, q: 3 }));
        assert_eq!(continued_fraction(3, 3), Err(TorusError::NotGreater { p: 3, q: 3 }));
    }

    #[test]
    fn continued_fraction_evaluates_back() {
        for p in 2..=60 {
            for q in 1..p {
                if p.gcd(&q) != 1 {
                    continue;
                }
                let cf = continued_fraction(p, q).unwrap();
                assert_eq!(cf.value(), r(p, q));
                assert!(cf.coefficients().iter().all(|&a| a >= 1));
                assert!(cf.len() == 1 || cf.last() >= 2);
            }
        }
    }

    #[test]
    fn mu_examples() {
        assert_eq!(mu_torus(3, 2).unwrap(), 4);
        assert_eq!(mu_torus(5, 3).unwrap(), 13);
        assert_eq!(mu_torus(5, 4).unwrap(), 16);
        assert_eq!(mu_torus(2, 3).unwrap(), 4);
        assert_eq!(mu_torus(6, 4), Err(TorusError::NotCoprime { p: 6, q: 4 }));
        assert_eq!(mu_torus(5, 1), Err(TorusError::Unknot { p: 5, q: 1 }));
    }

    #[test]
    fn m_examples() {
        assert_eq!(m_torus(3, 2).unwrap(), r(4, 1));
        assert_eq!(TorusKnot::new(3, 2).unwrap().c_modular().unwrap(), r(2, 1));
        assert_eq!(m_torus(5, 3).unwrap(), r(25, 2));
        assert_eq!(TorusKnot::new(5, 3).unwrap().c_modular().unwrap(), r(5, 2));
        for n in 1..=50 {
            assert_eq!(m_torus(2 * n + 1, 2).unwrap(), r(4 * n, 1));
        }
    }

    #[test]
    fn reversed_c_examples() {
        assert_eq!(reversed_cf_c(5, 3).unwrap(), r(5, 2));
        assert_eq!(reversed_cf_c(3, 2).unwrap(), r(2, 1));
        assert_eq!(reversed_cf_c(9, 2).unwrap(), r(2, 1));
        assert_eq!(m_torus(9, 2).unwrap(), r(16, 1));
        assert_eq!(mu_torus(9, 2).unwrap(), 16);
    }

    #[test]
    fn schedule_examples() {
        let t32 = blowup_schedule(3, 2).unwrap();
        assert_eq!(t32.schedule, vec![BlowupStep { multiplicity: 2, count: 1 }]);
        assert_eq!(t32.resolved_self_intersection(), 4);
        assert_eq!(t32.disk_class, DiskClass::new(vec![2]).unwrap());
        assert_eq!(t32.genus, 1);

        let t53 = blowup_schedule(5, 3).unwrap();
        assert_eq!(t53.remainders, vec![5, 3, 2, 1]);
        assert_eq!(
            t53.schedule,
            vec![
                BlowupStep { multiplicity: 3, count: 1 },
                BlowupStep { multiplicity: 2, count: 1 }
            ]
        );
        assert_eq!(t53.resolved_self_intersection(), 13);
        assert_eq!(t53.disk_class, DiskClass::new(vec![3, 2]).unwrap());
        assert_eq!(t53.disk_class.genus(), 4);

        let t43 = blowup_schedule(4, 3).unwrap();
        assert_eq!(t43.cf.coefficients(), &[1, 3]);
        assert_eq!(t43.schedule, vec![BlowupStep { multiplicity: 3, count: 1 }]);
        assert_eq!(t43.terminal_tangency, 3);
        assert_eq!(t43.resolved_self_intersection(), 9);
        assert_eq!(t43.disk_class, DiskClass::new(vec![3]).unwrap());
        assert_eq!(t43.genus, 3);
    }

    #[test]
    fn unknot_is_degenerate() {
        let rep = TorusKnot::new(1, 7).unwrap().report();
        assert_eq!(rep.knot.p(), 7);
        assert_eq!((rep.mu, rep.genus), (0, 0));
        assert!(rep.schedule.is_empty());
        assert!(rep.disk_class.is_empty());
        let trivial = TorusKnot::new(1, 1).unwrap().report();
        assert_eq!(trivial.mu, 0);
    }

    #[test]
    fn sharpness_families() {
        for n in 1..=20 {
            let k = TorusKnot::new(2 * n + 1, 2).unwrap();
            assert_eq!(k.mu().unwrap(), 4 * k.genus());
        }
        for p in 4..=30 {
            let k = TorusKnot::new(p, p - 1).unwrap();
            assert_eq!(k.mu().unwrap(), (p - 1) * (p - 1));
            assert!(k.mu().unwrap() < 4 * k.genus());
            assert_eq!(4 * k.genus(), 2 * (p - 1) * (p - 2));
        }
    }

    #[test]
    fn resolution_matches_disk_calculus() {
        for p in 3..=40 {
            for q in 2..p {
                if p.gcd(&q) != 1 {
                    continue;
                }
                let rep = blowup_schedule(p, q).unwrap();
                assert_eq!(rep.disk_class.surgery_coefficient() as i64, rep.mu);
                assert_eq!(rep.disk_class.genus() as i64, rep.genus);
                assert_eq!(
                    positive_braid_genus(&rep.knot.braid()).unwrap() as i64,
                    rep.genus
                );
            }
        }
    }
}

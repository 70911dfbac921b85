//! Conjugate sequences over the rationals, where nothing wraps around, and a
//! fixed enumeration of the rationals by non-negative integers.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::gf::Rational;
use crate::harmonic::{conjugate_iterates, conjugate_sequence, CoordinateHost, HarmonicError};
use crate::projplane::{collinear, FinitePlane, PlaneError, ProjPoint};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalsError {
    #[error("depth must be at least 2, got {0}")]
    ShallowDepth(usize),
    #[error("ε must be nonzero and differ from g")]
    BadEpsilon,
    #[error(transparent)]
    Harmonic(#[from] HarmonicError),
    #[error(transparent)]
    Plane(#[from] PlaneError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RationalEnumeration {
    #[serde(serialize_with = "decimal")]
    pub index: BigUint,
    pub value: Rational,
}

fn decimal<S: serde::Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

/// The `n`-th positive rational of the Calkin-Wilf sequence, `n ≥ 1`.
fn calkin_wilf(n: &BigUint) -> Rational {
    let (mut a, mut b) = (BigInt::one(), BigInt::one());
    for i in (0..n.bits() - 1).rev() {
        if n.bit(i) {
            a = &a + &b;
        } else {
            b = &a + &b;
        }
    }
    Rational::from_big(a, b).expect("positive denominator")
}

fn calkin_wilf_index(q: &Rational) -> BigUint {
    let (mut a, mut b) = (q.numer().clone(), q.denom().clone());
    let mut bits = Vec::new();
    while a != b {
        if a < b {
            b -= &a;
            bits.push(false);
        } else {
            a -= &b;
            bits.push(true);
        }
    }
    let mut n = BigUint::one();
    for bit in bits.into_iter().rev() {
        n <<= 1;
        if bit {
            n += 1u32;
        }
    }
    n
}

/// `0 ↦ 0`, odd `2i - 1 ↦` the `i`-th Calkin-Wilf rational, even `2i ↦` its negative.
pub fn psi_inverse(n: &BigUint) -> Rational {
    if n.is_zero() {
        return Rational::zero();
    }
    if n.bit(0) {
        calkin_wilf(&((n + 1u32) >> 1))
    } else {
        -&calkin_wilf(&(n >> 1))
    }
}

pub fn psi(q: &Rational) -> BigUint {
    if q.numer().is_zero() {
        return BigUint::zero();
    }
    let i = calkin_wilf_index(&q.abs());
    if q.numer().is_negative() {
        i << 1
    } else {
        (i << 1) - 1u32
    }
}

pub fn enumerate(count: u64) -> Vec<RationalEnumeration> {
    (0..count)
        .map(|n| {
            let index = BigUint::from(n);
            let value = psi_inverse(&index);
            RationalEnumeration { index, value }
        })
        .collect()
}

pub type QPoint = ProjPoint<Rational>;

fn q(n: i64) -> Rational {
    Rational::integer(n)
}

fn point(x: &Rational, y: &Rational, z: &Rational) -> QPoint {
    ProjPoint::new(x.clone(), y.clone(), z.clone()).expect("nonzero vector")
}

pub fn a_point(g: &Rational) -> QPoint {
    point(&q(1), &q(0), g)
}

pub fn b_point(s: &Rational) -> QPoint {
    point(&q(1), &q(1), s)
}

pub fn c_point(h: &Rational) -> QPoint {
    point(&q(0), &q(1), h)
}

/// Affine parameter `y/x` along a line through `a_g` and `c_h`; `None` is ∞.
pub fn tau(p: &QPoint) -> Option<Rational> {
    let [x, y, _] = p.coords();
    y.checked_div(x).ok()
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundedSequence {
    pub g: Rational,
    pub h: Rational,
    pub depth: usize,
    pub terms: Vec<QPoint>,
    /// `y/x` of each term, `None` for ∞.
    pub tau: Vec<Option<Rational>>,
    pub all_distinct: bool,
}

/// The first `depth` terms of the sequence based at `a_g` starting
/// `b_{g+h}, c_h` in PG(2, ℚ).
pub fn bounded_sequence(g: &Rational, h: &Rational, depth: usize) -> Result<BoundedSequence, RationalsError> {
    if depth < 2 {
        return Err(RationalsError::ShallowDepth(depth));
    }
    let host = CoordinateHost::<Rational>::new();
    let terms = conjugate_iterates(&host, &a_point(g), &b_point(&(g + h)), &c_point(h), depth)?;
    let mut sorted = terms.clone();
    sorted.sort();
    sorted.dedup();
    Ok(BoundedSequence {
        g: g.clone(),
        h: h.clone(),
        depth,
        tau: terms.iter().map(tau).collect(),
        all_distinct: sorted.len() == terms.len(),
        terms,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CollinearityCase {
    pub epsilon: Rational,
    pub t: usize,
    pub collinear: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CollinearityReport {
    pub g: Rational,
    pub h: Rational,
    pub depth: usize,
    pub cases: Vec<CollinearityCase>,
}

impl CollinearityReport {
    pub fn all_collinear(&self) -> bool {
        self.cases.iter().all(|c| c.collinear)
    }
}

/// For `φ(t) = tε − tg + h`, check `a_ε, b_{ε+φ(t)}, c_{φ(t)}, x_{t+1}` are
/// collinear for `0 ≤ t ≤ depth`.
pub fn verify_shifted_collinearity(g: &Rational, h: &Rational, depth: usize, epsilons: &[Rational]) -> Result<CollinearityReport, RationalsError> {
    if epsilons.iter().any(|e| e.numer().is_zero() || e == g) {
        return Err(RationalsError::BadEpsilon);
    }
    let seq = bounded_sequence(g, h, depth + 2)?;
    let mut cases = Vec::new();
    for e in epsilons {
        for t in 0..=depth {
            let ti = q(t as i64);
            let phi = &(&(&ti * e) - &(&ti * g)) + h;
            let (a, c) = (a_point(e), c_point(&phi));
            let b = b_point(&(e + &phi));
            let x = &seq.terms[t + 1];
            cases.push(CollinearityCase {
                epsilon: e.clone(),
                t,
                collinear: collinear(&a, &c, &b) && collinear(&a, &c, x),
            });
        }
    }
    Ok(CollinearityReport {
        g: g.clone(),
        h: h.clone(),
        depth,
        cases,
    })
}

/// The base sequence `a_0; b_0, c_0, …` in PG(2, p): its order.
pub fn modular_shadow(p: u32) -> Result<Option<usize>, RationalsError> {
    let plane = FinitePlane::with_order(p, 1)?;
    let f = plane.field();
    let (zero, one) = (f.zero(), f.one());
    let a = plane.locate(&one, &zero, &zero)?;
    let b = plane.locate(&one, &one, &zero)?;
    let c = plane.locate(&zero, &one, &zero)?;
    Ok(conjugate_sequence(&plane, &a, &b, &c, 4 * p as usize)?.order)
}

/// Whether the denominator of `τ_t` equals `t − 1` for `2 ≤ t < depth`.
pub fn denominators_linear(seq: &BoundedSequence) -> bool {
    seq.tau.iter().enumerate().skip(2).all(|(t, tau)| {
        tau.as_ref()
            .is_some_and(|v| *v.denom() == BigInt::from(t as i64 - 1))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn enumeration_anchors() {
        let vals: Vec<String> = enumerate(8).iter().map(|e| e.value.text()).collect();
        assert_eq!(vals, ["0/1", "1/1", "-1/1", "1/2", "-1/2", "2/1", "-2/1", "1/3"]);
    }

    #[test]
    fn enumeration_prefix_is_injective() {
        let vals = enumerate(10_000);
        let mut seen: Vec<&Rational> = vals.iter().map(|e| &e.value).collect();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 10_000);
        for e in &vals {
            assert_eq!(psi(&e.value), e.index);
        }
    }

    proptest! {
        #[test]
        fn psi_round_trip(n in -500i64..500, d in 1i64..500) {
            let v = Rational::new(n, d).unwrap();
            prop_assert_eq!(psi_inverse(&psi(&v)), v);
        }
    }

    #[test]
    fn base_sequence_tau() {
        let seq = bounded_sequence(&q(0), &q(0), 64).unwrap();
        assert!(seq.all_distinct);
        assert_eq!(seq.tau[0], Some(q(1)));
        assert_eq!(seq.tau[1], None);
        for t in 2..64 {
            assert_eq!(seq.tau[t], Some(Rational::new(-1, t as i64 - 1).unwrap()));
        }
        assert!(denominators_linear(&seq));
    }

    #[test]
    fn base_sequence_matches_explicit_configurations() {
        use crate::harmonic::construct_configuration;
        let seq = bounded_sequence(&q(0), &q(0), 12).unwrap();
        let base = a_point(&q(0));
        let a2 = point(&q(1), &q(1), &q(1));
        for t in 2..12 {
            let (e, f) = (&seq.terms[t - 2], &seq.terms[t - 1]);
            let c = |i: usize| &e.coords()[i] + &(&q(2) * &a2.coords()[i]);
            let a4 = point(&c(0), &c(1), &c(2));
            let [_, _, h] = construct_configuration(&base, e, f, &a2, &a4).unwrap();
            assert_eq!(h, seq.terms[t]);
        }
    }

    #[test]
    fn shifted_sequence_is_distinct() {
        let seq = bounded_sequence(&r("2/3"), &r("-5"), 40).unwrap();
        assert!(seq.all_distinct);
    }

    #[test]
    fn collinearity_for_sample_epsilons() {
        let eps: Vec<Rational> = ["1", "2", "-2/3", "7/5"].iter().map(|s| r(s)).collect();
        let report = verify_shifted_collinearity(&q(0), &q(0), 32, &eps).unwrap();
        assert!(report.all_collinear());
        assert_eq!(report.cases.len(), 4 * 33);
        let shifted = verify_shifted_collinearity(&r("1/2"), &r("3"), 16, &eps).unwrap();
        assert!(shifted.all_collinear());
    }

    #[test]
    fn rejects_degenerate_epsilon() {
        assert_eq!(verify_shifted_collinearity(&q(0), &q(0), 4, &[q(0)]).unwrap_err(), RationalsError::BadEpsilon);
        assert_eq!(bounded_sequence(&q(0), &q(0), 1).unwrap_err(), RationalsError::ShallowDepth(1));
    }

    #[test]
    fn reduction_mod_p_has_order_p() {
        for p in [2, 3, 5, 7] {
            assert_eq!(modular_shadow(p).unwrap(), Some(p as usize));
        }
    }
}

//! Exact scalar arithmetic: prime-power finite fields and arbitrary-precision
//! rationals. Everything geometric in this crate is generic over [`Scalar`].

mod field;
mod rational;

pub use field::{field_arith, ArithOp, Field, FieldElement};
pub use rational::Rational;

use std::fmt::{Debug, Display};
use std::hash::Hash;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("modulus {0} is not prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field GF({p}^{k}) is too large for this tool")]
    TooLarge { p: u32, k: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("invalid coefficient vector: {0}")]
    BadCoefficients(String),
    #[error("cannot parse scalar from {0:?}")]
    Parse(String),
}

/// A field element usable as a homogeneous coordinate.
///
/// Constructors are relative to an existing value (`zero_like`, `one_like`) so
/// that finite-field elements can carry their field without a global context.
pub trait Scalar: Clone + Eq + Hash + Ord + Debug + Display + Send + Sync {
    fn is_zero(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Panics on a zero divisor; callers check `is_zero` first.
    fn div(&self, other: &Self) -> Self;
    /// Canonical text form used in reports.
    fn to_text(&self) -> String;
}

/// Trial division; the fields here are tiny.
pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `q = p^k` with `p` prime.
pub fn prime_power(q: u64) -> Option<(u32, usize)> {
    let p = (2..=q).find(|d| q % d == 0)?;
    let p32 = u32::try_from(p).ok()?;
    if !is_prime(p32) {
        return None;
    }
    let (mut rest, mut k) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p32, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn primes() {
        let small: Vec<u32> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }
}

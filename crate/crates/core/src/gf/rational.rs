use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{GfError, Scalar};

/// Exact rational number in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Result<Rational, GfError> {
        if denom == 0 {
            return Err(GfError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(BigInt::from(numer), BigInt::from(denom))))
    }

    pub fn from_big(numer: BigInt, denom: BigInt) -> Result<Rational, GfError> {
        if denom.is_zero() {
            return Err(GfError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer, denom)))
    }

    pub fn integer(n: i64) -> Rational {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Rational {
        Rational(BigRational::zero())
    }

    pub fn one() -> Rational {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Rational {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Rational, GfError> {
        if self.0.is_zero() {
            return Err(GfError::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn checked_div(&self, other: &Rational) -> Result<Rational, GfError> {
        if other.0.is_zero() {
            return Err(GfError::DivisionByZero);
        }
        Ok(Rational(&self.0 / &other.0))
    }

    /// Canonical "num/den" text form, always with an explicit denominator.
    pub fn text(&self) -> String {
        format!("{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

impl FromStr for Rational {
    type Err = GfError;

    /// Accepts "n" or "n/d".
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GfError::Parse(s.to_string());
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                Rational::from_big(n, d)
            }
            None => {
                let n: BigInt = s.parse().map_err(|_| bad())?;
                Ok(Rational(BigRational::from_integer(n)))
            }
        }
    }
}

impl serde::Serialize for Rational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.text())
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::integer(n)
    }
}

impl std::ops::Add<&Rational> for &Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        Rational(&self.0 + &rhs.0)
    }
}

impl std::ops::Sub<&Rational> for &Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        Rational(&self.0 - &rhs.0)
    }
}

impl std::ops::Mul<&Rational> for &Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        Rational(&self.0 * &rhs.0)
    }
}

impl std::ops::Div<&Rational> for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        self.checked_div(rhs).expect("rational division by zero")
    }
}

impl std::ops::Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Scalar for Rational {
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn to_text(&self) -> String {
        self.text()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn normalizes_sign_and_gcd() {
        let r = Rational::new(4, -6).unwrap();
        assert_eq!(r.text(), "-2/3");
        assert_eq!(Rational::integer(5).text(), "5/1");
        assert!(Rational::new(1, 0).is_err());
    }

    #[test]
    fn parses_both_forms() {
        assert_eq!("7/5".parse::<Rational>().unwrap(), Rational::new(7, 5).unwrap());
        assert_eq!("-3".parse::<Rational>().unwrap(), Rational::integer(-3));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
    }

    proptest! {
        #[test]
        fn agrees_with_integer_arithmetic(a in -10_000i64..10_000, b in -10_000i64..10_000) {
            let (ra, rb) = (Rational::integer(a), Rational::integer(b));
            prop_assert_eq!(&ra + &rb, Rational::integer(a + b));
            prop_assert_eq!(&ra - &rb, Rational::integer(a - b));
            prop_assert_eq!(&ra * &rb, Rational::integer(a * b));
        }

        #[test]
        fn normalization_is_idempotent(n in -1000i64..1000, d in 1i64..1000) {
            let r = Rational::new(n, d).unwrap();
            let again: Rational = r.text().parse().unwrap();
            prop_assert_eq!(&again, &r);
            prop_assert!(r.denom() > &BigInt::zero());
            prop_assert_eq!(num_integer::Integer::gcd(r.numer(), r.denom()), BigInt::one());
        }
    }
}

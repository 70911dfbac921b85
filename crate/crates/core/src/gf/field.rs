use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::{is_prime, GfError, Scalar};

/// Largest field this crate will construct. Planes are materialized far below
/// this; the cap only guards element enumeration.
const MAX_CARDINALITY: u64 = 1 << 20;

#[derive(Debug, PartialEq, Eq, Hash)]
struct FieldSpec {
    p: u32,
    k: usize,
    /// Monic modulus of degree `k`, constant term first, length `k + 1`.
    modulus: Vec<u32>,
}

/// GF(p^k) as Z_p[x] modulo the lexicographically least monic irreducible
/// polynomial of degree k.
#[derive(Clone)]
pub struct Field(Arc<FieldSpec>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.p, self.0.k)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.k == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{})", self.0.p, self.0.k)
        }
    }
}

impl Field {
    /// Build GF(p^k). The modulus is the first monic irreducible of degree k
    /// in coefficient-vector lexicographic order (constant term first).
    pub fn new(p: u32, k: usize) -> Result<Field, GfError> {
        if !is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        if k == 0 {
            return Err(GfError::ZeroDegree);
        }
        let card = (p as u64).checked_pow(k as u32);
        if card.map_or(true, |c| c > MAX_CARDINALITY) {
            return Err(GfError::TooLarge { p, k });
        }
        let modulus = least_irreducible(p, k);
        Ok(Field(Arc::new(FieldSpec { p, k, modulus })))
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> usize {
        self.0.k
    }

    pub fn cardinality(&self) -> u64 {
        (self.0.p as u64).pow(self.0.k as u32)
    }

    /// The defining polynomial, constant term first, including the leading 1.
    pub fn irreducible(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            coeffs: vec![0; self.0.k],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        let mut coeffs = vec![0; self.0.k];
        coeffs[0] = n.rem_euclid(self.0.p as i64) as u32;
        FieldElement {
            field: self.clone(),
            coeffs,
        }
    }

    /// The class of x (a generator of the extension when k > 1).
    pub fn generator(&self) -> FieldElement {
        let mut coeffs = vec![0; self.0.k];
        if self.0.k > 1 {
            coeffs[1] = 1;
            FieldElement {
                field: self.clone(),
                coeffs,
            }
        } else {
            // x ≡ -modulus[0] in a prime field
            let c = (self.0.p - self.0.modulus[0]) % self.0.p;
            coeffs[0] = c;
            FieldElement {
                field: self.clone(),
                coeffs,
            }
        }
    }

    pub fn element(&self, coeffs: &[u32]) -> Result<FieldElement, GfError> {
        if coeffs.len() != self.0.k {
            return Err(GfError::BadCoefficients(format!(
                "expected {} coefficients, got {}",
                self.0.k,
                coeffs.len()
            )));
        }
        if let Some(c) = coeffs.iter().find(|&&c| c >= self.0.p) {
            return Err(GfError::BadCoefficients(format!(
                "coefficient {c} out of range for p = {}",
                self.0.p
            )));
        }
        Ok(FieldElement {
            field: self.clone(),
            coeffs: coeffs.to_vec(),
        })
    }

    /// Parse the canonical text form ("1,0" = constant term first).
    pub fn parse(&self, text: &str) -> Result<FieldElement, GfError> {
        let coeffs: Result<Vec<u32>, _> = text.split(',').map(|s| s.trim().parse::<u32>()).collect();
        let coeffs = coeffs.map_err(|_| GfError::Parse(text.to_string()))?;
        self.element(&coeffs)
    }

    /// All elements in coefficient-vector lexicographic order; zero first.
    pub fn elements(&self) -> Vec<FieldElement> {
        let n = self.cardinality() as usize;
        (0..n).map(|i| self.element_at(i)).collect()
    }

    /// The `index`-th element of [`Field::elements`].
    pub fn element_at(&self, index: usize) -> FieldElement {
        let (p, k) = (self.0.p as usize, self.0.k);
        let mut coeffs = vec![0u32; k];
        let mut rest = index;
        for slot in coeffs.iter_mut().rev() {
            *slot = (rest % p) as u32;
            rest /= p;
        }
        FieldElement {
            field: self.clone(),
            coeffs,
        }
    }

    /// Inverse of [`Field::element_at`].
    pub fn index_of(&self, e: &FieldElement) -> usize {
        let p = self.0.p as usize;
        e.coeffs.iter().fold(0, |acc, &c| acc * p + c as usize)
    }
}

/// Element of GF(p^k) as a polynomial residue of degree < k.
#[derive(Clone)]
pub struct FieldElement {
    field: Field,
    coeffs: Vec<u32>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.field == other.field
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state)
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs.cmp(&other.coeffs)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.text())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked binary operation: rejects mixed fields and division by zero.
pub fn field_arith(a: &FieldElement, b: &FieldElement, op: ArithOp) -> Result<FieldElement, GfError> {
    if a.field != b.field {
        return Err(GfError::MixedFields);
    }
    Ok(match op {
        ArithOp::Add => a.plus(b),
        ArithOp::Sub => a.minus(b),
        ArithOp::Mul => a.times(b),
        ArithOp::Div => {
            let inv = b.inverse()?;
            a.times(&inv)
        }
    })
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// True when the element lies in the prime subfield Z_p.
    pub fn in_prime_subfield(&self) -> bool {
        self.coeffs[1..].iter().all(|&c| c == 0)
    }

    pub fn text(&self) -> String {
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    fn p(&self) -> u32 {
        self.field.0.p
    }

    fn plus(&self, other: &Self) -> Self {
        let p = self.p();
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a + b) % p)
            .collect();
        FieldElement {
            field: self.field.clone(),
            coeffs,
        }
    }

    fn negated(&self) -> Self {
        let p = self.p();
        let coeffs = self.coeffs.iter().map(|&a| (p - a) % p).collect();
        FieldElement {
            field: self.field.clone(),
            coeffs,
        }
    }

    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negated())
    }

    fn times(&self, other: &Self) -> Self {
        let p = self.p() as u64;
        let k = self.coeffs.len();
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + a as u64 * b as u64) % p;
            }
        }
        let modulus = &self.field.0.modulus;
        for top in (k..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for j in 0..k {
                let sub = c * modulus[j] as u64 % p;
                let idx = top - k + j;
                prod[idx] = (prod[idx] + p - sub) % p;
            }
        }
        prod.truncate(k);
        FieldElement {
            field: self.field.clone(),
            coeffs: prod.into_iter().map(|c| c as u32).collect(),
        }
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.times(&base);
            }
            base = base.times(&base);
            exp >>= 1;
        }
        acc
    }

    pub fn inverse(&self) -> Result<Self, GfError> {
        if self.is_zero() {
            return Err(GfError::DivisionByZero);
        }
        Ok(self.pow(self.field.cardinality() - 2))
    }

    /// Multiply by an integer acting through the prime subfield.
    pub fn scale(&self, t: i64) -> Self {
        let p = self.p() as i64;
        let t = t.rem_euclid(p) as u64;
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| (c as u64 * t % p as u64) as u32)
            .collect();
        FieldElement {
            field: self.field.clone(),
            coeffs,
        }
    }
}

macro_rules! forward_op {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl std::ops::$tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                assert!(self.field == rhs.field, "operands belong to different fields");
                self.$inner(rhs)
            }
        }
        impl std::ops::$tr for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                std::ops::$tr::$method(&self, &rhs)
            }
        }
    };
}

forward_op!(Add, add, plus);
forward_op!(Sub, sub, minus);
forward_op!(Mul, mul, times);

impl std::ops::Div<&FieldElement> for &FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: &FieldElement) -> FieldElement {
        field_arith(self, rhs, ArithOp::Div).expect("field division")
    }
}

impl std::ops::Div for FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: FieldElement) -> FieldElement {
        &self / &rhs
    }
}

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.negated()
    }
}

impl std::ops::Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.negated()
    }
}

impl Scalar for FieldElement {
    fn is_zero(&self) -> bool {
        FieldElement::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        self.field.zero()
    }
    fn one_like(&self) -> Self {
        self.field.one()
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
        self.negated()
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn to_text(&self) -> String {
        self.text()
    }
}

// --- polynomials over Z_p, constant term first ---

fn poly_rem(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
    // `den` must be monic.
    let mut r: Vec<u64> = num.iter().map(|&c| c as u64).collect();
    let p = p as u64;
    let dd = den.len() - 1;
    if r.len() <= dd {
        return num.to_vec();
    }
    for top in (dd..r.len()).rev() {
        let c = r[top] % p;
        if c == 0 {
            continue;
        }
        for (j, &d) in den.iter().enumerate() {
            let idx = top - dd + j;
            r[idx] = (r[idx] + p * p - c * d as u64 % p) % p;
        }
    }
    r.truncate(dd);
    r.into_iter().map(|c| c as u32).collect()
}

/// Monic polynomials of the given degree in lexicographic order of their
/// lower coefficients (constant term first).
fn monic_polys(p: u32, degree: usize) -> impl Iterator<Item = Vec<u32>> {
    let count = (p as u64).pow(degree as u32);
    (0..count).map(move |mut idx| {
        let mut lower = vec![0u32; degree];
        for slot in lower.iter_mut().rev() {
            *slot = (idx % p as u64) as u32;
            idx /= p as u64;
        }
        lower.push(1);
        lower
    })
}

pub(crate) fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let k = poly.len() - 1;
    if k == 0 {
        return false;
    }
    for d in 1..=k / 2 {
        for divisor in monic_polys(p, d) {
            if poly_rem(poly, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn least_irreducible(p: u32, k: usize) -> Vec<u32> {
    monic_polys(p, k)
        .find(|f| is_irreducible(f, p))
        .expect("an irreducible polynomial exists in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_fields() -> Vec<Field> {
        [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1), (3, 3), (2, 4), (3, 4)]
            .iter()
            .map(|&(p, k)| Field::new(p, k).unwrap())
            .filter(|f| f.cardinality() <= 81)
            .collect()
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(Field::new(4, 1).unwrap_err(), GfError::NotPrime(4));
        assert_eq!(Field::new(1, 1).unwrap_err(), GfError::NotPrime(1));
        assert_eq!(Field::new(3, 0).unwrap_err(), GfError::ZeroDegree);
    }

    #[test]
    fn gf2_elements() {
        let f = Field::new(2, 1).unwrap();
        let texts: Vec<String> = f.elements().iter().map(|e| e.text()).collect();
        assert_eq!(texts, vec!["0", "1"]);
    }

    #[test]
    fn gf4_modulus_is_x2_x_1() {
        let f = Field::new(2, 2).unwrap();
        assert_eq!(f.irreducible(), &[1, 1, 1]);
        // oracle: x^2+x+1 has no root in Z_2
        for x in 0..2u32 {
            assert_ne!((x * x + x + 1) % 2, 0);
        }
        let els = f.elements();
        assert_eq!(els.len(), 4);
        assert!(els[0].is_zero());
    }

    #[test]
    fn gf4_x_squared() {
        let f = Field::new(2, 2).unwrap();
        let x = f.generator();
        assert_eq!((&x * &x).coeffs(), &[1, 1]);
    }

    #[test]
    fn gf9_has_characteristic_three() {
        let f = Field::new(3, 2).unwrap();
        let els = f.elements();
        assert_eq!(els.len(), 9);
        let distinct: std::collections::HashSet<_> = els.iter().cloned().collect();
        assert_eq!(distinct.len(), 9);
        for e in els.iter().filter(|e| !e.is_zero()) {
            assert!(!(e + e).is_zero());
            assert!((&(e + e) + e).is_zero());
        }
    }

    #[test]
    fn gf5_division_matches_brute_force() {
        let f = Field::new(5, 1).unwrap();
        let one = f.one();
        let two = f.from_int(2);
        let q = field_arith(&one, &two, ArithOp::Div).unwrap();
        let brute = (0..5).find(|x| 2 * x % 5 == 1).unwrap();
        assert_eq!(q.coeffs(), &[brute]);
        assert_eq!(q.coeffs(), &[3]);
    }

    #[test]
    fn division_by_zero_and_mixed_fields() {
        let f = Field::new(3, 1).unwrap();
        let g = Field::new(5, 1).unwrap();
        assert_eq!(
            field_arith(&f.one(), &f.zero(), ArithOp::Div).unwrap_err(),
            GfError::DivisionByZero
        );
        assert_eq!(
            field_arith(&f.one(), &g.one(), ArithOp::Add).unwrap_err(),
            GfError::MixedFields
        );
    }

    #[test]
    fn field_axioms_exhaustive() {
        for f in all_fields() {
            let els = f.elements();
            let zero = f.zero();
            let one = f.one();
            for a in &els {
                assert_eq!(&(a + &zero), a);
                assert_eq!(&(a * &one), a);
                assert!((a - a).is_zero());
                if !a.is_zero() {
                    assert_eq!(a * &a.inverse().unwrap(), one);
                }
                for b in &els {
                    assert_eq!(a + b, b + a);
                    assert_eq!(a * b, b * a);
                    for c in &els {
                        assert_eq!(&(a + b) + c, a + &(b + c));
                        assert_eq!(&(a * b) * c, a * &(b * c));
                        assert_eq!(a * &(b + c), &(a * b) + &(a * c));
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_is_additive() {
        for f in all_fields() {
            let p = f.characteristic() as u64;
            let els = f.elements();
            for a in &els {
                for b in &els {
                    assert_eq!((a + b).pow(p), &a.pow(p) + &b.pow(p));
                }
            }
        }
    }

    #[test]
    fn chosen_moduli_are_irreducible() {
        for f in all_fields() {
            assert!(is_irreducible(f.irreducible(), f.characteristic()));
            // no root in the prime field
            let p = f.characteristic();
            if f.degree() > 1 {
                for x in 0..p as u64 {
                    let v = f
                        .irreducible()
                        .iter()
                        .rev()
                        .fold(0u64, |acc, &c| (acc * x + c as u64) % p as u64);
                    assert_ne!(v, 0);
                }
            }
        }
    }

    #[test]
    fn text_round_trip_and_index() {
        let f = Field::new(3, 2).unwrap();
        for (i, e) in f.elements().iter().enumerate() {
            assert_eq!(f.parse(&e.text()).unwrap(), *e);
            assert_eq!(f.index_of(e), i);
        }
        assert_eq!(f.one().text(), "1,0");
        assert!(f.parse("3,0").is_err());
        assert!(f.parse("1").is_err());
    }
}

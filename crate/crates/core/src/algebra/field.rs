//! The `Field` abstraction and the two base fields: the rationals and the
//! prime fields `F_p`.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use super::spec::FieldSpec;
use super::AlgebraError;

/// A field whose elements are plain values and whose operations are methods
/// on a (cheap, cloneable) context object.
///
/// Element types are totally ordered so that canonical sorting of geometric
/// objects is possible; the order carries no algebraic meaning.
pub trait Field: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Ord + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// Image of a rational number; fails when the denominator vanishes in the field.
    fn from_rational(&self, r: &BigRational) -> Result<Self::Elem, AlgebraError>;
    fn spec(&self) -> FieldSpec;
    fn format_elem(&self, a: &Self::Elem) -> String;
    fn parse_elem(&self, s: &str) -> Result<Self::Elem, AlgebraError>;
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    /// A square root inside this field, if one exists.
    fn sqrt(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn from_u64(&self, n: u64) -> Self::Elem {
        match i64::try_from(n) {
            Ok(v) => self.from_i64(v),
            Err(_) => {
                let r = BigRational::from_integer(BigInt::from(n));
                self.from_rational(&r).expect("integers always embed")
            }
        }
    }

    fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        loop {
            let x = self.random_elem(rng);
            if !self.is_zero(&x) {
                return x;
            }
        }
    }
}

/// A field with finitely many elements, indexable by `0..order()`.
pub trait FiniteField: Field {
    fn order(&self) -> u64;
    /// Bijection `0..order() -> field`; index 0 is zero and index 1 is one.
    fn element(&self, index: u64) -> Self::Elem;

    fn elements(&self) -> Vec<Self::Elem> {
        (0..self.order()).map(|i| self.element(i)).collect()
    }
}

// ---------------------------------------------------------------------------
// Rationals

/// The field of rational numbers, backed by arbitrary-precision integers.
/// Every value is kept gcd-reduced with a positive denominator.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_rational(&self, r: &BigRational) -> Result<BigRational, AlgebraError> {
        Ok(r.clone())
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn format_elem(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn parse_elem(&self, s: &str) -> Result<BigRational, AlgebraError> {
        parse_rational(s)
    }
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        self.from_i64(rng.gen_range(-9..=9))
    }
    fn sqrt(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_negative() {
            return None;
        }
        let n = a.numer().sqrt();
        let d = a.denom().sqrt();
        if &(&n * &n) == a.numer() && &(&d * &d) == a.denom() {
            Some(BigRational::new(n, d))
        } else {
            None
        }
    }
}

/// Parses `n`, `-n` or `n/d` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<BigRational, AlgebraError> {
    let s = s.trim();
    let bad = || AlgebraError::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        None => s
            .parse::<BigInt>()
            .map(BigRational::from_integer)
            .map_err(|_| bad()),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
    }
}

// ---------------------------------------------------------------------------
// Prime fields

/// The prime field `F_p`, elements stored as canonical residues in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

/// Trial division; the moduli used here are small.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, AlgebraError> {
        if !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    fn reduce_bigint(&self, n: &BigInt) -> u64 {
        let m = n.mod_floor(&BigInt::from(self.p));
        m.to_u64().expect("residue fits in u64")
    }
}

impl Field for PrimeField {
    type Elem = u64;

    #[inline]
    fn zero(&self) -> u64 {
        0
    }
    #[inline]
    fn one(&self) -> u64 {
        1
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = *a as u128 + *b as u128;
        (s % self.p as u128) as u64
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.p - (b - a)
        }
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // extended Euclid on i128 to avoid overflow
        let (mut r0, mut r1) = (self.p as i128, *a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Some(t0.rem_euclid(self.p as i128) as u64)
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.reduce_i64(n)
    }
    fn from_rational(&self, r: &BigRational) -> Result<u64, AlgebraError> {
        let d = self.reduce_bigint(r.denom());
        let di = self.inv(&d).ok_or(AlgebraError::DenominatorVanishes {
            value: r.to_string(),
            characteristic: self.p,
        })?;
        Ok(self.mul(&self.reduce_bigint(r.numer()), &di))
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }
    fn format_elem(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse_elem(&self, s: &str) -> Result<u64, AlgebraError> {
        let r = parse_rational(s)?;
        self.from_rational(&r)
    }
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn sqrt(&self, a: &u64) -> Option<u64> {
        finite_sqrt(self, a)
    }
}

impl FiniteField for PrimeField {
    fn order(&self) -> u64 {
        self.p
    }
    fn element(&self, index: u64) -> u64 {
        index
    }
}

/// Whether `a` is a nonzero square in a finite field of odd order.
pub fn is_square_finite<F: FiniteField>(field: &F, a: &F::Elem) -> bool {
    if field.is_zero(a) {
        return true;
    }
    if field.characteristic() == 2 {
        return true;
    }
    field.is_one(&field.pow(a, (field.order() - 1) / 2))
}

/// First non-square of a finite field of odd order, in index order.
pub fn first_nonsquare<F: FiniteField>(field: &F) -> Option<F::Elem> {
    if field.characteristic() == 2 {
        return None;
    }
    (2..field.order())
        .map(|i| field.element(i))
        .find(|x| !is_square_finite(field, x))
}

/// Tonelli-Shanks square root in a finite field.
pub fn finite_sqrt<F: FiniteField>(field: &F, a: &F::Elem) -> Option<F::Elem> {
    if field.is_zero(a) {
        return Some(field.zero());
    }
    let q = field.order();
    if field.characteristic() == 2 {
        // Frobenius is bijective: sqrt(a) = a^(q/2)
        return Some(field.pow(a, q / 2));
    }
    if !is_square_finite(field, a) {
        return None;
    }
    let mut s = 0u32;
    let mut t = q - 1;
    while t.is_multiple_of(2) {
        t /= 2;
        s += 1;
    }
    let z = first_nonsquare(field)?;
    let mut m = s;
    let mut c = field.pow(&z, t);
    let mut x = field.pow(a, t.div_ceil(2));
    let mut b = field.pow(a, t);
    while !field.is_one(&b) {
        let mut i = 0u32;
        let mut bb = b.clone();
        while !field.is_one(&bb) {
            bb = field.mul(&bb, &bb);
            i += 1;
        }
        let mut g = c.clone();
        for _ in 0..(m - i - 1) {
            g = field.mul(&g, &g);
        }
        x = field.mul(&x, &g);
        c = field.mul(&g, &g);
        b = field.mul(&b, &c);
        m = i;
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime(2) && is_prime(13) && is_prime(97));
        assert!(!is_prime(1) && !is_prime(9) && !is_prime(91));
        assert!(PrimeField::new(15).is_err());
    }

    #[test]
    fn prime_field_basics() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.add(&3, &3), 1);
        assert_eq!(f.sub(&1, &3), 3);
        assert_eq!(f.inv(&2), Some(3));
        assert_eq!(f.inv(&0), None);
        assert_eq!(f.from_i64(-1), 4);
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(f.from_rational(&half).unwrap(), 3);
        let fifth = BigRational::new(1.into(), 5.into());
        assert!(f.from_rational(&fifth).is_err());
    }

    #[test]
    fn square_roots() {
        let f = PrimeField::new(13).unwrap();
        for a in 0..13u64 {
            if let Some(r) = f.sqrt(&a) {
                assert_eq!(f.mul(&r, &r), a);
            }
        }
        // 13 = 1 mod 4 so -1 is a square
        assert!(f.sqrt(&12).is_some());
        assert!(f.sqrt(&2).is_none());
        let q = Rationals;
        let nine_fourths = BigRational::new(9.into(), 4.into());
        assert_eq!(
            q.sqrt(&nine_fourths),
            Some(BigRational::new(3.into(), 2.into()))
        );
        assert_eq!(q.sqrt(&q.from_i64(2)), None);
    }

    #[test]
    fn rational_parse_and_format() {
        let q = Rationals;
        let x = q.parse_elem("-6/4").unwrap();
        assert_eq!(q.format_elem(&x), "-3/2");
        assert!(q.parse_elem("1/0").is_err());
        assert!(q.parse_elem("abc").is_err());
    }
}

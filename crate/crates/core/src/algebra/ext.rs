//! Extension fields `F_{p^k} = F_p[a]/(m(a))` for an irreducible monic `m`.

use std::sync::Arc;

use num_rational::BigRational;
use rand::Rng;
use smallvec::SmallVec;

use super::field::{finite_sqrt, Field, FiniteField, PrimeField};
use super::spec::{format_upoly, parse_upoly, FieldSpec};
use super::upoly;
use super::AlgebraError;

/// Coefficients `c_0 .. c_{k-1}` of an element `sum c_i a^i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtElem(pub SmallVec<[u64; 4]>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtField {
    base: PrimeField,
    k: usize,
    /// Monic modulus, ascending coefficients, length `k + 1`.
    modulus: Arc<[u64]>,
    order: u64,
}

/// Irreducibility of a monic polynomial over `F_p` (Ben-Or: no factor of
/// degree `i <= k/2` divides `x^{p^i} - x`).
pub fn is_irreducible(base: &PrimeField, m: &[u64]) -> bool {
    let m = upoly::trimmed(base, m.to_vec());
    let Some(k) = upoly::degree(&m) else {
        return false;
    };
    if k == 0 {
        return false;
    }
    if k == 1 {
        return true;
    }
    let x = vec![0, 1];
    let mut frob = x.clone();
    for _ in 1..=k / 2 {
        frob = upoly::pow_mod(base, &frob, base.modulus() as u128, &m);
        let g = upoly::gcd(base, &upoly::sub(base, &frob, &x), &m);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

impl ExtField {
    /// Builds `F_p[a]/(modulus)`; the modulus is made monic and checked for irreducibility.
    pub fn new(p: u64, modulus: &[u64]) -> Result<Self, AlgebraError> {
        let base = PrimeField::new(p)?;
        let m: Vec<u64> = modulus.iter().map(|c| c % p).collect();
        let m = upoly::make_monic(&base, &upoly::trimmed(&base, m));
        let k = upoly::degree(&m).unwrap_or(0);
        if k == 0 {
            return Err(AlgebraError::ReducibleModulus(format_upoly(&base, &m, "a")));
        }
        if !is_irreducible(&base, &m) {
            return Err(AlgebraError::ReducibleModulus(format_upoly(&base, &m, "a")));
        }
        let order = (p as u128)
            .checked_pow(k as u32)
            .filter(|q| *q <= u64::MAX as u128)
            .ok_or_else(|| {
                AlgebraError::Unsupported(format!("field of order {p}^{k} is too large"))
            })? as u64;
        Ok(ExtField {
            base,
            k,
            modulus: m.into(),
            order,
        })
    }

    /// `F_{p^k}` with the first irreducible monic modulus in index order.
    pub fn with_degree(p: u64, k: usize) -> Result<Self, AlgebraError> {
        let base = PrimeField::new(p)?;
        if k == 0 {
            return Err(AlgebraError::Unsupported("extension degree 0".into()));
        }
        let count = (p as u128).pow(k as u32);
        for idx in 0..count {
            let mut m = Vec::with_capacity(k + 1);
            let mut r = idx;
            for _ in 0..k {
                m.push((r % p as u128) as u64);
                r /= p as u128;
            }
            m.push(1);
            if is_irreducible(&base, &m) {
                return ExtField::new(p, &m);
            }
        }
        Err(AlgebraError::Unsupported(format!(
            "no irreducible of degree {k} over F_{p}"
        )))
    }

    pub fn prime(&self) -> u64 {
        self.base.modulus()
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn base(&self) -> &PrimeField {
        &self.base
    }

    /// The image of a base-field element.
    pub fn embed(&self, c: u64) -> ExtElem {
        let mut v = SmallVec::from_elem(0, self.k);
        v[0] = c % self.prime();
        ExtElem(v)
    }

    /// The class of the generator `a`.
    pub fn generator(&self) -> ExtElem {
        self.from_upoly(&[0, 1])
    }

    pub fn from_upoly(&self, c: &[u64]) -> ExtElem {
        let reduced = upoly::rem(&self.base, c, &self.modulus);
        let mut v: SmallVec<[u64; 4]> = SmallVec::from_elem(0, self.k);
        for (i, x) in reduced.into_iter().enumerate() {
            v[i] = x;
        }
        ExtElem(v)
    }
}

impl Field for ExtField {
    type Elem = ExtElem;

    fn zero(&self) -> ExtElem {
        ExtElem(SmallVec::from_elem(0, self.k))
    }
    fn one(&self) -> ExtElem {
        self.embed(1)
    }
    fn add(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        ExtElem(
            a.0.iter()
                .zip(&b.0)
                .map(|(x, y)| self.base.add(x, y))
                .collect(),
        )
    }
    fn sub(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        ExtElem(
            a.0.iter()
                .zip(&b.0)
                .map(|(x, y)| self.base.sub(x, y))
                .collect(),
        )
    }
    fn neg(&self, a: &ExtElem) -> ExtElem {
        ExtElem(a.0.iter().map(|x| self.base.neg(x)).collect())
    }
    fn mul(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let k = self.k;
        let p = self.prime() as u128;
        let mut prod = vec![0u128; 2 * k - 1];
        for (i, x) in a.0.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                prod[i + j] = (prod[i + j] + *x as u128 * *y as u128) % p;
            }
        }
        // reduce with a^k = -(m_0 + ... + m_{k-1} a^{k-1})
        for deg in (k..prod.len()).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            for (j, mj) in self.modulus[..k].iter().enumerate() {
                let idx = deg - k + j;
                prod[idx] = (prod[idx] + (p - c) * *mj as u128) % p;
            }
        }
        ExtElem(prod[..k].iter().map(|c| *c as u64).collect())
    }
    fn inv(&self, a: &ExtElem) -> Option<ExtElem> {
        if self.is_zero(a) {
            return None;
        }
        Some(self.pow(a, self.order - 2))
    }
    fn is_zero(&self, a: &ExtElem) -> bool {
        a.0.iter().all(|c| *c == 0)
    }
    fn characteristic(&self) -> u64 {
        self.prime()
    }
    fn from_i64(&self, n: i64) -> ExtElem {
        self.embed(self.base.from_i64(n))
    }
    fn from_rational(&self, r: &BigRational) -> Result<ExtElem, AlgebraError> {
        Ok(self.embed(self.base.from_rational(r)?))
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Ext {
            p: self.prime(),
            k: self.k,
            modulus: self.modulus.to_vec(),
        }
    }
    fn format_elem(&self, a: &ExtElem) -> String {
        format_upoly(&self.base, &upoly::trimmed(&self.base, a.0.to_vec()), "a")
    }
    fn parse_elem(&self, s: &str) -> Result<ExtElem, AlgebraError> {
        let c = parse_upoly(&self.base, s, "a")?;
        Ok(self.from_upoly(&c))
    }
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> ExtElem {
        ExtElem(
            (0..self.k)
                .map(|_| rng.gen_range(0..self.prime()))
                .collect(),
        )
    }
    fn sqrt(&self, a: &ExtElem) -> Option<ExtElem> {
        finite_sqrt(self, a)
    }
}

impl FiniteField for ExtField {
    fn order(&self) -> u64 {
        self.order
    }
    fn element(&self, index: u64) -> ExtElem {
        let p = self.prime();
        let mut r = index;
        let mut v = SmallVec::from_elem(0, self.k);
        for c in v.iter_mut() {
            *c = r % p;
            r /= p;
        }
        ExtElem(v)
    }
}

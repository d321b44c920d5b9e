//! Quadratic extensions `K(r)` with `r^2 = D` for a non-square `D` in `K`.
//!
//! Over a finite field this is `F_{q^2}`; over the rationals it is the
//! symbolic field `Q(sqrt(D))`, with elements stored as (rational part,
//! coefficient of the root).

use num_rational::BigRational;
use rand::Rng;

use super::field::{first_nonsquare, Field, FiniteField};
use super::spec::FieldSpec;
use super::AlgebraError;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadElem<E> {
    pub re: E,
    pub im: E,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuadExt<F: Field> {
    base: F,
    radicand: F::Elem,
}

impl<F: Field> QuadExt<F> {
    /// Adjoins `sqrt(radicand)`; fails when the radicand is already a square
    /// or the characteristic is 2.
    pub fn new(base: F, radicand: F::Elem) -> Result<Self, AlgebraError> {
        if base.characteristic() == 2 {
            return Err(AlgebraError::Unsupported(
                "quadratic extensions by square roots need odd characteristic".into(),
            ));
        }
        if base.sqrt(&radicand).is_some() {
            return Err(AlgebraError::Unsupported(format!(
                "{} is a square in {}",
                base.format_elem(&radicand),
                base.spec()
            )));
        }
        Ok(QuadExt { base, radicand })
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    pub fn radicand(&self) -> &F::Elem {
        &self.radicand
    }

    pub fn embed(&self, a: &F::Elem) -> QuadElem<F::Elem> {
        QuadElem {
            re: a.clone(),
            im: self.base.zero(),
        }
    }

    /// The adjoined root.
    pub fn root(&self) -> QuadElem<F::Elem> {
        QuadElem {
            re: self.base.zero(),
            im: self.base.one(),
        }
    }

    pub fn conjugate(&self, a: &QuadElem<F::Elem>) -> QuadElem<F::Elem> {
        QuadElem {
            re: a.re.clone(),
            im: self.base.neg(&a.im),
        }
    }

    /// `a` lies in the base field.
    pub fn is_base(&self, a: &QuadElem<F::Elem>) -> bool {
        self.base.is_zero(&a.im)
    }

    fn norm(&self, a: &QuadElem<F::Elem>) -> F::Elem {
        let b = &self.base;
        b.sub(
            &b.mul(&a.re, &a.re),
            &b.mul(&self.radicand, &b.mul(&a.im, &a.im)),
        )
    }
}

impl<F: FiniteField> QuadExt<F> {
    /// `F_{q^2}` built from the first non-square of `F_q`.
    pub fn of_finite(base: F) -> Result<Self, AlgebraError> {
        let d = first_nonsquare(&base)
            .ok_or_else(|| AlgebraError::Unsupported("characteristic 2".into()))?;
        QuadExt::new(base, d)
    }
}

impl<F: Field> Field for QuadExt<F> {
    type Elem = QuadElem<F::Elem>;

    fn zero(&self) -> Self::Elem {
        self.embed(&self.base.zero())
    }
    fn one(&self) -> Self::Elem {
        self.embed(&self.base.one())
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        QuadElem {
            re: self.base.add(&a.re, &b.re),
            im: self.base.add(&a.im, &b.im),
        }
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        QuadElem {
            re: self.base.sub(&a.re, &b.re),
            im: self.base.sub(&a.im, &b.im),
        }
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        QuadElem {
            re: self.base.neg(&a.re),
            im: self.base.neg(&a.im),
        }
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let k = &self.base;
        let re = k.add(
            &k.mul(&a.re, &b.re),
            &k.mul(&self.radicand, &k.mul(&a.im, &b.im)),
        );
        let im = k.add(&k.mul(&a.re, &b.im), &k.mul(&a.im, &b.re));
        QuadElem { re, im }
    }
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let n_inv = self.base.inv(&self.norm(a))?;
        let c = self.conjugate(a);
        Some(QuadElem {
            re: self.base.mul(&c.re, &n_inv),
            im: self.base.mul(&c.im, &n_inv),
        })
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.base.is_zero(&a.re) && self.base.is_zero(&a.im)
    }
    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }
    fn from_i64(&self, n: i64) -> Self::Elem {
        self.embed(&self.base.from_i64(n))
    }
    fn from_rational(&self, r: &BigRational) -> Result<Self::Elem, AlgebraError> {
        Ok(self.embed(&self.base.from_rational(r)?))
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Quadratic {
            base: Box::new(self.base.spec()),
            radicand: self.base.format_elem(&self.radicand),
        }
    }
    fn format_elem(&self, a: &Self::Elem) -> String {
        format!(
            "({},{})",
            self.base.format_elem(&a.re),
            self.base.format_elem(&a.im)
        )
    }
    fn parse_elem(&self, s: &str) -> Result<Self::Elem, AlgebraError> {
        let t = s.trim();
        match t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            Some(inner) => {
                // split at the top-level comma
                let (re, im) = inner
                    .split_once(',')
                    .ok_or_else(|| AlgebraError::Parse(format!("bad quadratic element {s:?}")))?;
                Ok(QuadElem {
                    re: self.base.parse_elem(re)?,
                    im: self.base.parse_elem(im)?,
                })
            }
            None => Ok(self.embed(&self.base.parse_elem(t)?)),
        }
    }
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        QuadElem {
            re: self.base.random_elem(rng),
            im: self.base.random_elem(rng),
        }
    }
    fn sqrt(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let k = &self.base;
        if k.is_zero(&a.im) {
            if let Some(r) = k.sqrt(&a.re) {
                return Some(self.embed(&r));
            }
            // a = D * (re/D) and re/D must be a square
            let t = k.div(&a.re, &self.radicand)?;
            let r = k.sqrt(&t)?;
            return Some(QuadElem {
                re: k.zero(),
                im: r,
            });
        }
        // (x + y r)^2 = a  =>  x^2 = (re ± sqrt(norm)) / 2, y = im / (2x)
        let n = k.sqrt(&self.norm(a))?;
        let two_inv = k.inv(&k.from_i64(2))?;
        for sign in [false, true] {
            let s = if sign { k.neg(&n) } else { n.clone() };
            let x2 = k.mul(&k.add(&a.re, &s), &two_inv);
            if let Some(x) = k.sqrt(&x2) {
                if k.is_zero(&x) {
                    continue;
                }
                let y = k.div(&k.mul(&a.im, &two_inv), &x)?;
                let cand = QuadElem { re: x, im: y };
                if self.mul(&cand, &cand) == *a {
                    return Some(cand);
                }
            }
        }
        None
    }
}

impl<F: FiniteField> FiniteField for QuadExt<F> {
    fn order(&self) -> u64 {
        let q = self.base.order();
        q.checked_mul(q).expect("field order overflows u64")
    }
    fn element(&self, index: u64) -> Self::Elem {
        let q = self.base.order();
        QuadElem {
            re: self.base.element(index % q),
            im: self.base.element(index / q),
        }
    }
}

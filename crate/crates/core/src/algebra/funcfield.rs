//! Rational function fields `K(s)` in one variable.
//!
//! Elements are reduced fractions with a monic denominator, so structural
//! equality coincides with equality of fractions.

use num_rational::BigRational;
use rand::Rng;

use super::field::Field;
use super::spec::FieldSpec;
use super::upoly;
use super::AlgebraError;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatFunc<E> {
    num: Vec<E>,
    den: Vec<E>,
}

impl<E> RatFunc<E> {
    pub fn numer(&self) -> &[E] {
        &self.num
    }
    pub fn denom(&self) -> &[E] {
        &self.den
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FunctionField<F: Field> {
    base: F,
    var: String,
}

impl<F: Field> FunctionField<F> {
    /// One transcendental level only: the base may not itself be a function field.
    pub fn new(base: F, var: &str) -> Result<Self, AlgebraError> {
        if matches!(base.spec(), FieldSpec::Function { .. }) {
            return Err(AlgebraError::NestedFunctionField);
        }
        Ok(FunctionField {
            base,
            var: var.to_string(),
        })
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    /// Builds `num/den` in lowest terms; `None` if `den` is zero.
    pub fn fraction(&self, num: Vec<F::Elem>, den: Vec<F::Elem>) -> Option<RatFunc<F::Elem>> {
        let k = &self.base;
        let num = upoly::trimmed(k, num);
        let den = upoly::trimmed(k, den);
        if den.is_empty() {
            return None;
        }
        if num.is_empty() {
            return Some(self.zero());
        }
        let g = upoly::gcd(k, &num, &den);
        let (mut num, mut den) = if g.len() > 1 {
            (
                upoly::div_exact(k, &num, &g).expect("gcd divides"),
                upoly::div_exact(k, &den, &g).expect("gcd divides"),
            )
        } else {
            (num, den)
        };
        let lead_inv = k.inv(den.last().unwrap()).unwrap();
        if !k.is_one(&lead_inv) {
            num = upoly::scale(k, &num, &lead_inv);
            den = upoly::scale(k, &den, &lead_inv);
        }
        Some(RatFunc { num, den })
    }

    pub fn from_poly(&self, p: Vec<F::Elem>) -> RatFunc<F::Elem> {
        RatFunc {
            num: upoly::trimmed(&self.base, p),
            den: vec![self.base.one()],
        }
    }

    pub fn constant(&self, c: &F::Elem) -> RatFunc<F::Elem> {
        self.from_poly(vec![c.clone()])
    }

    /// The transcendental `s`.
    pub fn variable(&self) -> RatFunc<F::Elem> {
        self.from_poly(vec![self.base.zero(), self.base.one()])
    }

    /// Value at `s = x`, or `None` at a pole.
    pub fn eval(&self, a: &RatFunc<F::Elem>, x: &F::Elem) -> Option<F::Elem> {
        let d = upoly::eval(&self.base, &a.den, x);
        let n = upoly::eval(&self.base, &a.num, x);
        self.base.div(&n, &d)
    }

    /// Polynomial numerator when the denominator is 1.
    pub fn as_poly<'a>(&self, a: &'a RatFunc<F::Elem>) -> Option<&'a [F::Elem]> {
        (a.den.len() == 1 && self.base.is_one(&a.den[0])).then_some(&a.num)
    }
}

impl<F: Field> Field for FunctionField<F> {
    type Elem = RatFunc<F::Elem>;

    fn zero(&self) -> Self::Elem {
        RatFunc {
            num: Vec::new(),
            den: vec![self.base.one()],
        }
    }
    fn one(&self) -> Self::Elem {
        self.constant(&self.base.one())
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let k = &self.base;
        if a.num.is_empty() {
            return b.clone();
        }
        if b.num.is_empty() {
            return a.clone();
        }
        if a.den == b.den {
            return self
                .fraction(upoly::add(k, &a.num, &b.num), a.den.clone())
                .unwrap();
        }
        let num = upoly::add(
            k,
            &upoly::mul(k, &a.num, &b.den),
            &upoly::mul(k, &b.num, &a.den),
        );
        self.fraction(num, upoly::mul(k, &a.den, &b.den)).unwrap()
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        RatFunc {
            num: upoly::neg(&self.base, &a.num),
            den: a.den.clone(),
        }
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let k = &self.base;
        if a.num.is_empty() || b.num.is_empty() {
            return self.zero();
        }
        self.fraction(upoly::mul(k, &a.num, &b.num), upoly::mul(k, &a.den, &b.den))
            .unwrap()
    }
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if a.num.is_empty() {
            return None;
        }
        self.fraction(a.den.clone(), a.num.clone())
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.num.is_empty()
    }
    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }
    fn from_i64(&self, n: i64) -> Self::Elem {
        self.constant(&self.base.from_i64(n))
    }
    fn from_rational(&self, r: &BigRational) -> Result<Self::Elem, AlgebraError> {
        Ok(self.constant(&self.base.from_rational(r)?))
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Function {
            base: Box::new(self.base.spec()),
            var: self.var.clone(),
        }
    }
    fn format_elem(&self, a: &Self::Elem) -> String {
        let fmt_poly = |p: &[F::Elem]| -> String {
            let terms: Vec<String> = p
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, c)| !self.base.is_zero(c))
                .map(|(i, c)| match i {
                    0 => self.base.format_elem(c),
                    1 => format!("{}*{}", self.base.format_elem(c), self.var),
                    _ => format!("{}*{}^{}", self.base.format_elem(c), self.var, i),
                })
                .collect();
            if terms.is_empty() {
                "0".into()
            } else {
                terms.join("+")
            }
        };
        if a.den.len() == 1 {
            fmt_poly(&a.num)
        } else {
            format!("({})/({})", fmt_poly(&a.num), fmt_poly(&a.den))
        }
    }
    fn parse_elem(&self, s: &str) -> Result<Self::Elem, AlgebraError> {
        // only constants are accepted in text form
        Ok(self.constant(&self.base.parse_elem(s)?))
    }
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        let num: Vec<F::Elem> = (0..3).map(|_| self.base.random_elem(rng)).collect();
        let mut den: Vec<F::Elem> = (0..2).map(|_| self.base.random_elem(rng)).collect();
        den.push(self.base.one());
        self.fraction(num, den).unwrap()
    }
    fn sqrt(&self, a: &Self::Elem) -> Option<Self::Elem> {
        // constants only
        if a.num.len() <= 1 && a.den.len() == 1 {
            let c = a.num.first().cloned().unwrap_or_else(|| self.base.zero());
            return self.base.sqrt(&c).map(|r| self.constant(&r));
        }
        None
    }
}

//! Sparse multivariate polynomials over a field.

use std::collections::BTreeMap;
use std::fmt;

use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use super::field::Field;
use super::AlgebraError;

/// Exponent vector; its length always equals the polynomial's `nvars`.
pub type Monomial = SmallVec<[u16; 8]>;

/// A polynomial in `nvars` variables. Terms are keyed by exponent vector and
/// never store a zero coefficient. The map order (lexicographic on exponent
/// vectors) is a monomial order, used for exact division.
#[derive(Clone, PartialEq)]
pub struct Poly<F: Field> {
    field: F,
    nvars: usize,
    terms: BTreeMap<Monomial, F::Elem>,
}

const PACK_MAX_VARS: usize = 8;

fn pack(e: &[u16]) -> u128 {
    e.iter().fold(0u128, |k, &x| (k << 16) | x as u128)
}

fn unpack(mut k: u128, n: usize) -> Monomial {
    let mut e: Monomial = SmallVec::from_elem(0, n);
    for i in (0..n).rev() {
        e[i] = (k & 0xffff) as u16;
        k >>= 16;
    }
    e
}

/// Whether the monomial packed as `a` divides the one packed as `b`.
fn packed_divides(a: u128, b: u128, n: usize) -> bool {
    (0..n).all(|i| (a >> (16 * i)) & 0xffff <= (b >> (16 * i)) & 0xffff)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

impl<F: Field> Poly<F> {
    pub fn zero(field: &F, nvars: usize) -> Self {
        Poly {
            field: field.clone(),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &F, nvars: usize, c: F::Elem) -> Self {
        let mut p = Self::zero(field, nvars);
        p.add_term(SmallVec::from_elem(0, nvars), c);
        p
    }

    pub fn one(field: &F, nvars: usize) -> Self {
        Self::constant(field, nvars, field.one())
    }

    /// The variable `x_i`.
    pub fn var(field: &F, nvars: usize, i: usize) -> Self {
        assert!(
            i < nvars,
            "variable index {i} out of range for {nvars} variables"
        );
        let mut e: Monomial = SmallVec::from_elem(0, nvars);
        e[i] = 1;
        Self::monomial(field, e, field.one())
    }

    pub fn monomial(field: &F, exps: Monomial, c: F::Elem) -> Self {
        let mut p = Self::zero(field, exps.len());
        p.add_term(exps, c);
        p
    }

    /// Sums the given terms (duplicates are combined).
    pub fn from_terms<I>(field: &F, nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, F::Elem)>,
    {
        let mut p = Self::zero(field, nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length mismatch");
            p.add_term(e, c);
        }
        p
    }

    /// Linear form `sum c_i x_i`.
    pub fn linear(field: &F, coeffs: &[F::Elem]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(field, n);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e: Monomial = SmallVec::from_elem(0, n);
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> std::collections::btree_map::Iter<'_, Monomial, F::Elem> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u16]) -> F::Elem {
        self.terms
            .get(exps)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// Adds `c * x^e` in place, keeping the no-zero-coefficient invariant.
    pub fn add_term(&mut self, e: Monomial, c: F::Elem) {
        debug_assert_eq!(e.len(), self.nvars);
        if self.field.is_zero(&c) {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = self.field.add(o.get(), &c);
                if self.field.is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as u32).sum())
            .max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u16> {
        self.terms.keys().map(|e| e[var]).max()
    }

    /// True iff all terms share one total degree (the zero polynomial counts as homogeneous).
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self
            .terms
            .keys()
            .map(|e| e.iter().map(|&x| x as u32).sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.nvars != other.nvars {
            return Err(AlgebraError::NvarsMismatch(self.nvars, other.nvars));
        }
        if self.field != other.field {
            return Err(AlgebraError::FieldMismatch(
                self.field.spec().to_string(),
                other.field.spec().to_string(),
            ));
        }
        Ok(())
    }

    /// Add, subtract or multiply, checking that both operands live in the same ring.
    pub fn arith(&self, other: &Self, op: ArithOp) -> Result<Self, AlgebraError> {
        self.check_compatible(other)?;
        Ok(match op {
            ArithOp::Add => self.add_unchecked(other),
            ArithOp::Sub => self.sub_unchecked(other),
            ArithOp::Mul => self.mul_unchecked(other),
        })
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    fn sub_unchecked(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), self.field.neg(c));
        }
        out
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let f = &self.field;
        if self.nvars > PACK_MAX_VARS {
            return self.mul_generic(other);
        }
        let a = self.packed();
        let b = other.packed();
        let mut acc: FxHashMap<u128, F::Elem> = FxHashMap::default();
        acc.reserve(a.len().max(b.len()) * 4);
        for (ka, ca) in &a {
            for (kb, cb) in &b {
                let c = f.mul(ca, cb);
                match acc.entry(ka + kb) {
                    std::collections::hash_map::Entry::Vacant(v) => {
                        v.insert(c);
                    }
                    std::collections::hash_map::Entry::Occupied(mut o) => {
                        let s = f.add(o.get(), &c);
                        *o.get_mut() = s;
                    }
                }
            }
        }
        let mut v: Vec<(u128, F::Elem)> = acc.into_iter().filter(|(_, c)| !f.is_zero(c)).collect();
        v.sort_unstable_by_key(|(k, _)| *k);
        self.with_packed_terms(v)
    }

    fn mul_generic(&self, other: &Self) -> Self {
        let f = &self.field;
        let mut acc: BTreeMap<Monomial, F::Elem> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Monomial = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let c = f.mul(ca, cb);
                match acc.entry(e) {
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(c);
                    }
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        let s = f.add(o.get(), &c);
                        *o.get_mut() = s;
                    }
                }
            }
        }
        acc.retain(|_, c| !f.is_zero(c));
        Poly {
            field: f.clone(),
            nvars: self.nvars,
            terms: acc,
        }
    }

    /// Terms with exponent vectors packed 16 bits per variable, first
    /// variable most significant, so integer order is the map order and
    /// integer addition multiplies monomials. Needs `nvars <= PACK_MAX_VARS`.
    fn packed(&self) -> Vec<(u128, F::Elem)> {
        self.terms
            .iter()
            .map(|(e, c)| (pack(e), c.clone()))
            .collect()
    }

    /// Inverse of `packed`; `v` must be sorted by key with no zero coefficients.
    fn with_packed_terms(&self, v: Vec<(u128, F::Elem)>) -> Self {
        let n = self.nvars;
        Poly {
            field: self.field.clone(),
            nvars: n,
            terms: v.into_iter().map(|(k, c)| (unpack(k, n), c)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Poly {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), self.field.neg(c)))
                .collect(),
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        if self.field.is_zero(c) {
            return Self::zero(&self.field, self.nvars);
        }
        Poly {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (e.clone(), self.field.mul(x, c)))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field, self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to `x_i`.
    pub fn partial_derivative(&self, i: usize) -> Self {
        assert!(i < self.nvars, "variable index out of range");
        let f = &self.field;
        let mut out = Self::zero(f, self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, f.mul(c, &f.from_u64(e[i] as u64)));
        }
        out
    }

    /// Value at a point.
    pub fn eval(&self, point: &[F::Elem]) -> F::Elem {
        assert_eq!(point.len(), self.nvars, "point has wrong dimension");
        let f = &self.field;
        let powers = power_table(f, point, self.max_exponents());
        let mut acc = f.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = f.mul(&t, &powers[i][k as usize]);
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    fn max_exponents(&self) -> Vec<u16> {
        let mut m = vec![0u16; self.nvars];
        for e in self.terms.keys() {
            for (i, &k) in e.iter().enumerate() {
                m[i] = m[i].max(k);
            }
        }
        m
    }

    /// Substitutes values for the first `values.len()` variables, leaving a
    /// polynomial in the remaining ones.
    pub fn specialize_prefix(&self, values: &[F::Elem]) -> Self {
        let k = values.len();
        assert!(k <= self.nvars);
        let f = &self.field;
        let maxe = self.max_exponents();
        let powers = power_table(f, values, maxe[..k].to_vec());
        let mut out = Self::zero(f, self.nvars - k);
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..k {
                if e[i] > 0 {
                    t = f.mul(&t, &powers[i][e[i] as usize]);
                }
            }
            out.add_term(e[k..].iter().copied().collect(), t);
        }
        out
    }

    /// Composition `f(M x')`: old variable `i` becomes `sum_j M[i][j] x'_j`.
    /// `M` has one row per variable of `self`; its column count is the new
    /// number of variables.
    pub fn substitute_linear(&self, m: &[Vec<F::Elem>]) -> Result<Self, AlgebraError> {
        if m.len() != self.nvars {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.nvars,
                found: m.len(),
            });
        }
        let ncols = m.first().map_or(0, |r| r.len());
        if let Some(bad) = m.iter().find(|r| r.len() != ncols) {
            return Err(AlgebraError::DimensionMismatch {
                expected: ncols,
                found: bad.len(),
            });
        }
        let f = &self.field;
        let maxe = self.max_exponents();
        let forms: Vec<Poly<F>> = m.iter().map(|row| Poly::linear(f, row)).collect();
        let mut pows: Vec<Vec<Poly<F>>> = Vec::with_capacity(self.nvars);
        for (i, form) in forms.iter().enumerate() {
            let mut v = vec![Poly::one(f, ncols)];
            for k in 1..=maxe[i] as usize {
                let next = &v[k - 1] * form;
                v.push(next);
            }
            pows.push(v);
        }
        let mut out = Poly::zero(f, ncols);
        for (e, c) in &self.terms {
            let mut t = Poly::constant(f, ncols, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = &t * &pows[i][k as usize];
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Coefficients of the binary form `f(s*a + t*b)`, index `j` holding the
    /// coefficient of `s^(d-j) t^j`. Requires `f` homogeneous of degree `d`.
    pub fn restrict_to_line(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        let d = self.total_degree().unwrap_or(0) as usize;
        let f = &self.field;
        let maxe = self.max_exponents();
        // pw[i][k][j] = coefficient of s^(k-j) t^j in (a_i s + b_i t)^k
        let pw: Vec<Vec<Vec<F::Elem>>> = (0..self.nvars)
            .map(|i| {
                let mut v: Vec<Vec<F::Elem>> = vec![vec![f.one()]];
                for k in 1..=maxe[i] as usize {
                    let prev = &v[k - 1];
                    let mut next = vec![f.zero(); k + 1];
                    for (j, c) in prev.iter().enumerate() {
                        next[j] = f.add(&next[j], &f.mul(c, &a[i]));
                        next[j + 1] = f.add(&next[j + 1], &f.mul(c, &b[i]));
                    }
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = vec![f.zero(); d + 1];
        let mut buf: Vec<F::Elem> = Vec::with_capacity(d + 1);
        let mut tmp: Vec<F::Elem> = Vec::with_capacity(d + 1);
        for (e, c) in &self.terms {
            buf.clear();
            buf.push(c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let p = &pw[i][k as usize];
                tmp.clear();
                tmp.resize(buf.len() + p.len() - 1, f.zero());
                for (x, bx) in buf.iter().enumerate() {
                    for (y, py) in p.iter().enumerate() {
                        tmp[x + y] = f.add(&tmp[x + y], &f.mul(bx, py));
                    }
                }
                std::mem::swap(&mut buf, &mut tmp);
            }
            for (j, v) in buf.iter().enumerate() {
                out[j] = f.add(&out[j], v);
            }
        }
        out
    }

    /// Maps every coefficient through a ring homomorphism into another field.
    pub fn map_field<G: Field>(&self, target: &G, map: impl Fn(&F::Elem) -> G::Elem) -> Poly<G> {
        let mut out = Poly::zero(target, self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), map(c));
        }
        out
    }

    /// Re-embeds into a polynomial ring with more variables; variable `i`
    /// becomes variable `positions[i]`.
    pub fn embed_vars(&self, nvars: usize, positions: &[usize]) -> Self {
        assert_eq!(positions.len(), self.nvars);
        let mut out = Self::zero(&self.field, nvars);
        for (e, c) in &self.terms {
            let mut e2: Monomial = SmallVec::from_elem(0, nvars);
            for (i, &k) in e.iter().enumerate() {
                e2[positions[i]] += k;
            }
            out.add_term(e2, c.clone());
        }
        out
    }

    /// Largest term in the lexicographic order.
    pub fn leading_term(&self) -> Option<(&Monomial, &F::Elem)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let f = &self.field;
        let (dl_e, dl_c) = d.leading_term()?;
        let dl_inv = f.inv(dl_c)?;
        if self.nvars > PACK_MAX_VARS {
            return self.div_exact_generic(d, dl_e, &dl_inv);
        }
        let n = self.nvars;
        let dl = pack(dl_e);
        let dp = d.packed();
        let mut rem: BTreeMap<u128, F::Elem> = self.packed().into_iter().collect();
        let mut quot: Vec<(u128, F::Elem)> = Vec::new();
        while let Some((re, rc)) = rem.pop_last() {
            if !packed_divides(dl, re, n) {
                return None;
            }
            let qe = re - dl;
            let qc = f.mul(&rc, &dl_inv);
            // the leading product cancels `re` exactly; skip it
            for (e, c) in dp.iter().rev().skip(1) {
                let t = f.neg(&f.mul(c, &qc));
                match rem.entry(e + qe) {
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(t);
                    }
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        let s = f.add(o.get(), &t);
                        if f.is_zero(&s) {
                            o.remove();
                        } else {
                            *o.get_mut() = s;
                        }
                    }
                }
            }
            quot.push((qe, qc));
        }
        quot.reverse();
        Some(self.with_packed_terms(quot))
    }

    fn div_exact_generic(&self, d: &Self, dl_e: &Monomial, dl_inv: &F::Elem) -> Option<Self> {
        let f = &self.field;
        let mut rem = self.clone();
        let mut quot = Self::zero(f, self.nvars);
        while let Some((re, rc)) = rem.leading_term() {
            if re.iter().zip(dl_e).any(|(a, b)| a < b) {
                return None;
            }
            let qe: Monomial = re.iter().zip(dl_e).map(|(a, b)| a - b).collect();
            let qc = f.mul(rc, dl_inv);
            for (e, c) in &d.terms {
                let e2: Monomial = e.iter().zip(&qe).map(|(a, b)| a + b).collect();
                rem.add_term(e2, f.neg(&f.mul(c, &qc)));
            }
            quot.add_term(qe, qc);
        }
        Some(quot)
    }

    /// Collects terms by their exponents in the variables `vars`, giving a
    /// map from those exponents to the coefficient polynomial in the rest.
    pub fn collect_by(&self, vars: &[usize]) -> BTreeMap<Monomial, Poly<F>> {
        let rest: Vec<usize> = (0..self.nvars).filter(|i| !vars.contains(i)).collect();
        let mut out: BTreeMap<Monomial, Poly<F>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let key: Monomial = vars.iter().map(|&i| e[i]).collect();
            let sub: Monomial = rest.iter().map(|&i| e[i]).collect();
            out.entry(key)
                .or_insert_with(|| Poly::zero(&self.field, rest.len()))
                .add_term(sub, c.clone());
        }
        out
    }

    /// Human-readable form using the given variable names.
    pub fn format_with(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let f = &self.field;
        let mut parts = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(names[i].to_string()),
                    k => factors.push(format!("{}^{}", names[i], k)),
                }
            }
            let cs = f.format_elem(c);
            let term = if factors.is_empty() {
                cs
            } else if f.is_one(c) {
                factors.join("*")
            } else {
                format!("{}*{}", cs, factors.join("*"))
            };
            parts.push(term);
        }
        parts.join(" + ")
    }
}

fn power_table<F: Field>(f: &F, values: &[F::Elem], maxe: Vec<u16>) -> Vec<Vec<F::Elem>> {
    values
        .iter()
        .zip(maxe)
        .map(|(x, m)| {
            let mut v = vec![f.one()];
            for k in 1..=m as usize {
                let next = f.mul(&v[k - 1], x);
                v.push(next);
            }
            v
        })
        .collect()
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        write!(
            fm,
            "Poly[{}]({})",
            self.field.spec(),
            self.format_with(&refs)
        )
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        write!(fm, "{}", self.format_with(&refs))
    }
}

// Operator sugar for internal use: operands must share a ring, which is
// asserted. Use `Poly::arith` when that is not guaranteed.
macro_rules! impl_op {
    ($tr:ident, $m:ident, $op:expr) => {
        impl<F: Field> std::ops::$tr<&Poly<F>> for &Poly<F> {
            type Output = Poly<F>;
            fn $m(self, rhs: &Poly<F>) -> Poly<F> {
                self.arith(rhs, $op)
                    .expect("polynomials from different rings")
            }
        }
    };
}
impl_op!(Add, add, ArithOp::Add);
impl_op!(Sub, sub, ArithOp::Sub);
impl_op!(Mul, mul, ArithOp::Mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{PrimeField, Rationals};

    fn q4() -> (Rationals, Vec<Poly<Rationals>>) {
        let q = Rationals;
        let xs = (0..4).map(|i| Poly::var(&q, 4, i)).collect();
        (q, xs)
    }

    #[test]
    fn cancellation_and_difference_of_squares() {
        let (_, x) = q4();
        let s = &(&x[0] + &x[1]) + &x[1].neg();
        assert_eq!(s, x[0]);
        let p = &(&x[0] + &x[1]) * &(&x[0] - &x[1]);
        assert_eq!(p, &(&x[0] * &x[0]) - &(&x[1] * &x[1]));
    }

    #[test]
    fn arithmetic_mod_five() {
        let f = PrimeField::new(5).unwrap();
        let x0 = Poly::var(&f, 4, 0);
        let a = x0.scale(&3);
        assert_eq!(&a + &a, x0);
    }

    #[test]
    fn mismatched_rings_are_errors() {
        let f5 = PrimeField::new(5).unwrap();
        let f7 = PrimeField::new(7).unwrap();
        let a = Poly::var(&f5, 4, 0);
        let b = Poly::var(&f7, 4, 0);
        assert!(matches!(
            a.arith(&b, ArithOp::Add),
            Err(AlgebraError::FieldMismatch(..))
        ));
        let c = Poly::var(&f5, 3, 0);
        assert!(matches!(
            a.arith(&c, ArithOp::Mul),
            Err(AlgebraError::NvarsMismatch(4, 3))
        ));
    }

    #[test]
    fn derivatives() {
        let (q, x) = q4();
        let c = x[0].pow(3);
        assert_eq!(c.partial_derivative(0), x[0].pow(2).scale(&q.from_i64(3)));
        let f5 = PrimeField::new(5).unwrap();
        assert!(Poly::var(&f5, 4, 0).pow(5).partial_derivative(0).is_zero());
    }

    #[test]
    fn euler_identity_fermat_quartic() {
        let (q, x) = q4();
        let f = x
            .iter()
            .fold(Poly::zero(&q, 4), |acc, xi| &acc + &xi.pow(4));
        let mut euler = Poly::zero(&q, 4);
        for (i, xi) in x.iter().enumerate() {
            euler = &euler + &(xi * &f.partial_derivative(i));
        }
        assert_eq!(euler, f.scale(&q.from_i64(4)));
    }

    #[test]
    fn substitution_examples() {
        let (q, x) = q4();
        let one = q.one();
        let zero = q.zero();
        let f = &x[0].pow(2) + &x[1].pow(2);
        let ident: Vec<Vec<_>> = (0..4)
            .map(|i| {
                (0..4)
                    .map(|j| if i == j { one.clone() } else { zero.clone() })
                    .collect()
            })
            .collect();
        assert_eq!(f.substitute_linear(&ident).unwrap(), f);
        // x0^2 - x1^2 along (t) -> (t, t, 0, 0)
        let g = &x[0].pow(2) - &x[1].pow(2);
        let m = vec![
            vec![one.clone()],
            vec![one.clone()],
            vec![zero.clone()],
            vec![zero.clone()],
        ];
        assert!(g.substitute_linear(&m).unwrap().is_zero());
        // Fermat cubic on span{(1,-1,0,0),(0,0,1,-1)}
        let fc = x
            .iter()
            .fold(Poly::zero(&q, 4), |acc, xi| &acc + &xi.pow(3));
        let m = vec![
            vec![one.clone(), zero.clone()],
            vec![q.neg(&one), zero.clone()],
            vec![zero.clone(), one.clone()],
            vec![zero.clone(), q.neg(&one)],
        ];
        assert!(fc.substitute_linear(&m).unwrap().is_zero());
        assert!(matches!(
            fc.substitute_linear(&m[..3]),
            Err(AlgebraError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn restriction_matches_substitution() {
        let f = PrimeField::new(11).unwrap();
        let x: Vec<_> = (0..4).map(|i| Poly::var(&f, 4, i)).collect();
        let p = &(&x[0].pow(3) + &(&x[1] * &x[2].pow(2)).scale(&5)) + &x[3].pow(3).scale(&7);
        let a = [1u64, 2, 3, 4];
        let b = [5u64, 0, 9, 1];
        let m: Vec<Vec<u64>> = (0..4).map(|i| vec![a[i], b[i]]).collect();
        let sub = p.substitute_linear(&m).unwrap();
        let dense = p.restrict_to_line(&a, &b);
        for (j, c) in dense.iter().enumerate() {
            assert_eq!(*c, sub.coeff(&[(3 - j) as u16, j as u16]));
        }
    }

    #[test]
    fn exact_division() {
        let (_, x) = q4();
        let a = &x[0] + &x[2];
        let b = &(&x[1] * &x[1]) - &x[3];
        let prod = &a.pow(3) * &b;
        assert_eq!(prod.div_exact(&a).unwrap(), &a.pow(2) * &b);
        assert_eq!(prod.div_exact(&a.pow(3)).unwrap(), b);
        assert!(prod.div_exact(&(&x[0] + &x[1])).is_none());
    }

    #[test]
    fn homogeneity() {
        let (_, x) = q4();
        assert!((&x[0].pow(2) + &(&x[1] * &x[2])).is_homogeneous());
        assert!(!(&x[0].pow(2) + &x[1]).is_homogeneous());
    }
}

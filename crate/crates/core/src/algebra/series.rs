//! Truncated power series in one variable and the implicit-function solver
//! used to parametrize a surface locally along one of its lines.

use std::collections::BTreeMap;
use std::fmt;

use super::field::Field;
use super::funcfield::FunctionField;
use super::poly::Poly;
use super::AlgebraError;

/// `c_0 + c_1 u + ... + c_N u^N + O(u^{N+1})`.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<F: Field> {
    field: F,
    var: String,
    coeffs: Vec<F::Elem>,
}

/// Result of an order query. `AtLeast(N+1)` means every coefficient up to
/// the truncation vanished, so the true order is unknown.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesOrder {
    Finite(usize),
    AtLeast(usize),
}

impl SeriesOrder {
    pub fn finite(self) -> Option<usize> {
        match self {
            SeriesOrder::Finite(k) => Some(k),
            SeriesOrder::AtLeast(_) => None,
        }
    }
}

impl fmt::Display for SeriesOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesOrder::Finite(k) => write!(f, "{k}"),
            SeriesOrder::AtLeast(k) => write!(f, "at-least-{k}"),
        }
    }
}

impl<F: Field> Series<F> {
    /// The zero series truncated at `u^N`.
    pub fn zero(field: &F, var: &str, n: usize) -> Self {
        Series {
            field: field.clone(),
            var: var.to_string(),
            coeffs: vec![field.zero(); n + 1],
        }
    }

    pub fn constant(field: &F, var: &str, n: usize, c: F::Elem) -> Self {
        let mut s = Self::zero(field, var, n);
        s.coeffs[0] = c;
        s
    }

    /// The variable `u` itself (zero when `N = 0`).
    pub fn variable(field: &F, var: &str, n: usize) -> Self {
        let mut s = Self::zero(field, var, n);
        if n >= 1 {
            s.coeffs[1] = field.one();
        }
        s
    }

    /// Coefficients beyond index `N` are dropped; missing ones are zero.
    pub fn from_coeffs(field: &F, var: &str, n: usize, mut coeffs: Vec<F::Elem>) -> Self {
        coeffs.resize(n + 1, field.zero());
        Series {
            field: field.clone(),
            var: var.to_string(),
            coeffs,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    /// Truncation order `N`.
    pub fn precision(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> F::Elem {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn truncate(&self, n: usize) -> Self {
        Self::from_coeffs(
            &self.field,
            &self.var,
            n,
            self.coeffs[..=n.min(self.precision())].to_vec(),
        )
    }

    pub fn order(&self) -> SeriesOrder {
        match self.coeffs.iter().position(|c| !self.field.is_zero(c)) {
            Some(k) => SeriesOrder::Finite(k),
            None => SeriesOrder::AtLeast(self.precision() + 1),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.precision().min(other.precision());
        let coeffs = (0..=n)
            .map(|k| self.field.add(&self.coeffs[k], &other.coeffs[k]))
            .collect();
        Self::from_coeffs(&self.field, &self.var, n, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|c| self.field.neg(c)).collect();
        Self::from_coeffs(&self.field, &self.var, self.precision(), coeffs)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|x| self.field.mul(x, c)).collect();
        Self::from_coeffs(&self.field, &self.var, self.precision(), coeffs)
    }

    /// Product truncated at the smaller of the two precisions.
    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.precision().min(other.precision());
        let mut out = vec![f.zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                if !f.is_zero(b) {
                    out[i + j] = f.add(&out[i + j], &f.mul(a, b));
                }
            }
        }
        Self::from_coeffs(f, &self.var, n, out)
    }

    /// Multiplicative inverse; `None` when the constant term vanishes.
    pub fn inv(&self) -> Option<Self> {
        let f = &self.field;
        let n = self.precision();
        let c0_inv = f.inv(&self.coeffs[0])?;
        let mut out = vec![f.zero(); n + 1];
        out[0] = c0_inv.clone();
        for k in 1..=n {
            let mut acc = f.zero();
            for j in 1..=k {
                if !f.is_zero(&self.coeffs[j]) {
                    acc = f.add(&acc, &f.mul(&self.coeffs[j], &out[k - j]));
                }
            }
            out[k] = f.neg(&f.mul(&acc, &c0_inv));
        }
        Some(Self::from_coeffs(f, &self.var, n, out))
    }

    /// Evaluates `sum g_{a,b} u^a y^b` at `y = self`, truncated at this
    /// series' precision.
    pub fn compose_bivariate(&self, g: &BTreeMap<(usize, usize), F::Elem>) -> Self {
        let f = &self.field;
        let n = self.precision();
        let maxb = g.keys().map(|k| k.1).max().unwrap_or(0);
        // h_b(u) = sum_a g_{a,b} u^a, then Horner in y
        let mut hb: Vec<Vec<F::Elem>> = vec![vec![f.zero(); n + 1]; maxb + 1];
        for ((a, b), c) in g {
            if *a <= n {
                hb[*b][*a] = f.add(&hb[*b][*a], c);
            }
        }
        let mut acc = Self::from_coeffs(f, &self.var, n, hb[maxb].clone());
        for b in (0..maxb).rev() {
            acc = acc
                .mul(self)
                .add(&Self::from_coeffs(f, &self.var, n, hb[b].clone()));
        }
        acc
    }
}

/// Coefficients `g_{a,b}(s)` of `f(1, s, u, y)` viewed in `K(s)[u, y]`.
fn chart_coefficients<F: Field>(
    f: &Poly<F>,
    kf: &FunctionField<F>,
) -> BTreeMap<(usize, usize), <FunctionField<F> as Field>::Elem> {
    let base = f.field();
    let mut dense: BTreeMap<(usize, usize), Vec<F::Elem>> = BTreeMap::new();
    for (e, c) in f.terms() {
        let key = (e[2] as usize, e[3] as usize);
        let v = dense.entry(key).or_default();
        let k = e[1] as usize;
        if v.len() <= k {
            v.resize(k + 1, base.zero());
        }
        v[k] = base.add(&v[k], c);
    }
    dense
        .into_iter()
        .map(|(k, v)| (k, kf.from_poly(v)))
        .filter(|(_, c)| !kf.is_zero(c))
        .collect()
}

/// Solves `f(1, s, u, phi(s, u)) = 0 mod u^{N+1}` for `phi` with `phi(s, 0) = 0`
/// in `K(s)[[u]]`, where `f` is a polynomial in `x0..x3` vanishing on
/// `{x2 = x3 = 0}` in the chart `x0 = 1`.
pub fn implicit_series_solve<F: Field>(
    f: &Poly<F>,
    n: usize,
) -> Result<Series<FunctionField<F>>, AlgebraError> {
    if f.nvars() != 4 {
        return Err(AlgebraError::DimensionMismatch {
            expected: 4,
            found: f.nvars(),
        });
    }
    let kf = FunctionField::new(f.field().clone(), "s")?;
    let g = chart_coefficients(f, &kf);
    if g.contains_key(&(0, 0)) {
        return Err(AlgebraError::ImplicitSolve(
            "the line x2 = x3 = 0 does not lie on the surface".into(),
        ));
    }
    if !g.contains_key(&(0, 1)) {
        return Err(AlgebraError::ImplicitSolve(
            "df/dx3 vanishes identically along the line".into(),
        ));
    }
    // g_y as a bivariate: d/dy of sum g_ab u^a y^b
    let gy: BTreeMap<(usize, usize), _> = g
        .iter()
        .filter(|((_, b), _)| *b > 0)
        .map(|((a, b), c)| ((*a, b - 1), kf.mul(c, &kf.from_i64(*b as i64))))
        .filter(|(_, c)| !kf.is_zero(c))
        .collect();
    // Newton iteration, doubling the number of correct coefficients
    let mut phi = Series::zero(&kf, "u", 0);
    let mut correct = 1usize; // coefficients 0..correct are exact
    while correct < n + 1 {
        let next = (2 * correct).min(n + 1);
        let p = phi.truncate(next - 1);
        let p = Series::from_coeffs(&kf, "u", next - 1, p.coeffs().to_vec());
        let val = p.compose_bivariate(&g);
        let deriv = p.compose_bivariate(&gy);
        let dinv = deriv.inv().ok_or_else(|| {
            AlgebraError::ImplicitSolve("df/dx3 vanishes at the base point".into())
        })?;
        phi = p.sub(&val.mul(&dinv));
        correct = next;
    }
    Ok(Series::from_coeffs(&kf, "u", n, phi.coeffs().to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{PrimeField, Rationals};

    fn vars(q: &Rationals) -> Vec<Poly<Rationals>> {
        (0..4).map(|i| Poly::var(q, 4, i)).collect()
    }

    #[test]
    fn order_queries() {
        let q = Rationals;
        let s = Series::from_coeffs(
            &q,
            "u",
            6,
            vec![q.zero(), q.zero(), q.zero(), q.one(), q.one()],
        );
        assert_eq!(s.order(), SeriesOrder::Finite(3));
        let z = Series::zero(&q, "u", 6);
        assert_eq!(z.order(), SeriesOrder::AtLeast(7));
        assert_eq!(z.order().to_string(), "at-least-7");
        let kf = FunctionField::new(q.clone(), "s").unwrap();
        let c = Series::constant(&kf, "u", 6, kf.variable());
        assert_eq!(c.order(), SeriesOrder::Finite(0));
    }

    #[test]
    fn inverse_of_one_minus_u() {
        let f = PrimeField::new(7).unwrap();
        let s = Series::from_coeffs(&f, "u", 5, vec![1, 6]);
        let inv = s.inv().unwrap();
        assert!(inv.coeffs().iter().all(|c| *c == 1));
        assert!(Series::variable(&f, "u", 5).inv().is_none());
    }

    #[test]
    fn linear_implicit_solve() {
        let q = Rationals;
        let x = vars(&q);
        let f = &x[3] - &(&x[1] * &x[2]);
        let phi = implicit_series_solve(&f, 6).unwrap();
        let kf = phi.field().clone();
        assert_eq!(phi.coeff(1), kf.variable());
        for k in [0, 2, 3, 4, 5, 6] {
            assert!(kf.is_zero(&phi.coeff(k)));
        }
    }

    #[test]
    fn quadratic_implicit_solve() {
        // x3 - x2^2 + x1 x3^2: phi = u^2 - s u^4 + O(u^5)
        let q = Rationals;
        let x = vars(&q);
        let f = &(&x[3] - &x[2].pow(2)) + &(&x[1] * &x[3].pow(2));
        let phi = implicit_series_solve(&f, 4).unwrap();
        let kf = phi.field().clone();
        let s = kf.variable();
        assert!(kf.is_zero(&phi.coeff(0)));
        assert!(kf.is_zero(&phi.coeff(1)));
        assert!(kf.is_one(&phi.coeff(2)));
        assert!(kf.is_zero(&phi.coeff(3)));
        assert_eq!(phi.coeff(4), kf.neg(&s));
        // substitute back: f(1, s, u, phi) vanishes mod u^5
        let mut g = BTreeMap::new();
        g.insert((0, 1), kf.one());
        g.insert((2, 0), kf.from_i64(-1));
        g.insert((0, 2), s.clone());
        assert_eq!(phi.compose_bivariate(&g).order(), SeriesOrder::AtLeast(5));
    }

    #[test]
    fn zero_truncation_gives_zero() {
        let q = Rationals;
        let x = vars(&q);
        let f = &x[3] - &(&x[1] * &x[2]);
        let phi = implicit_series_solve(&f, 0).unwrap();
        assert_eq!(phi.precision(), 0);
        assert_eq!(phi.order(), SeriesOrder::AtLeast(1));
    }

    #[test]
    fn solver_preconditions() {
        let q = Rationals;
        let x = vars(&q);
        let off_line = &x[3] - &x[0];
        assert!(matches!(
            implicit_series_solve(&off_line, 4),
            Err(AlgebraError::ImplicitSolve(_))
        ));
        let flat = &x[2] - &x[3].pow(2);
        assert!(matches!(
            implicit_series_solve(&flat, 4),
            Err(AlgebraError::ImplicitSolve(_))
        ));
    }
}

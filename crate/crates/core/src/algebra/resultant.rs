//! Sylvester resultants of binary forms and the eliminant of a linear, a
//! quadratic and a cubic ternary form.
//!
//! Binary forms are dense coefficient vectors: index `j` holds the
//! coefficient of `u^(m-j) v^j` for a form of degree `m`.

use std::collections::HashMap;

use super::field::Field;
use super::poly::Poly;
use super::AlgebraError;

/// The commutative-ring operations needed by determinant code.
pub trait RingOps {
    type Elem: Clone;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
}

/// A field viewed as a ring.
pub struct FieldRing<'a, F: Field>(pub &'a F);

impl<F: Field> RingOps for FieldRing<'_, F> {
    type Elem = F::Elem;
    fn zero(&self) -> F::Elem {
        self.0.zero()
    }
    fn one(&self) -> F::Elem {
        self.0.one()
    }
    fn add(&self, a: &F::Elem, b: &F::Elem) -> F::Elem {
        self.0.add(a, b)
    }
    fn sub(&self, a: &F::Elem, b: &F::Elem) -> F::Elem {
        self.0.sub(a, b)
    }
    fn mul(&self, a: &F::Elem, b: &F::Elem) -> F::Elem {
        self.0.mul(a, b)
    }
    fn is_zero(&self, a: &F::Elem) -> bool {
        self.0.is_zero(a)
    }
}

/// Polynomials in `nvars` variables over a field.
pub struct PolyRing<F: Field> {
    pub field: F,
    pub nvars: usize,
}

impl<F: Field> RingOps for PolyRing<F> {
    type Elem = Poly<F>;
    fn zero(&self) -> Poly<F> {
        Poly::zero(&self.field, self.nvars)
    }
    fn one(&self) -> Poly<F> {
        Poly::one(&self.field, self.nvars)
    }
    fn add(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        a + b
    }
    fn sub(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        a - b
    }
    fn mul(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        a * b
    }
    fn is_zero(&self, a: &Poly<F>) -> bool {
        a.is_zero()
    }
}

/// The `(m+n) x (m+n)` Sylvester matrix of forms of degrees `m` and `n`.
pub fn sylvester_matrix<R: RingOps>(r: &R, p: &[R::Elem], q: &[R::Elem]) -> Vec<Vec<R::Elem>> {
    let m = p.len() - 1;
    let n = q.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![r.zero(); size];
        for (j, c) in p.iter().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![r.zero(); size];
        for (j, c) in q.iter().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Division-free determinant by cofactor expansion along rows, memoizing
/// minors by their column set. Suited to small matrices over any ring.
pub fn det_cofactor<R: RingOps>(r: &R, m: &[Vec<R::Elem>]) -> R::Elem {
    let n = m.len();
    if n == 0 {
        return r.one();
    }
    assert!(n <= 20, "cofactor determinant limited to 20x20");
    let mut memo: HashMap<u32, R::Elem> = HashMap::new();
    minor(r, m, 0, (1u32 << n) - 1, &mut memo)
}

fn minor<R: RingOps>(
    r: &R,
    m: &[Vec<R::Elem>],
    row: usize,
    cols: u32,
    memo: &mut HashMap<u32, R::Elem>,
) -> R::Elem {
    if row == m.len() {
        return r.one();
    }
    if let Some(v) = memo.get(&cols) {
        return v.clone();
    }
    let mut acc = r.zero();
    let mut sign_pos = true;
    for j in 0..m.len() {
        if cols & (1 << j) == 0 {
            continue;
        }
        let entry = &m[row][j];
        if !r.is_zero(entry) {
            let sub = minor(r, m, row + 1, cols & !(1 << j), memo);
            if !r.is_zero(&sub) {
                let t = r.mul(entry, &sub);
                acc = if sign_pos {
                    r.add(&acc, &t)
                } else {
                    r.sub(&acc, &t)
                };
            }
        }
        sign_pos = !sign_pos;
    }
    memo.insert(cols, acc.clone());
    acc
}

/// Determinant over a field by Gaussian elimination.
pub fn det_field<F: Field>(f: &F, m: &[Vec<F::Elem>]) -> F::Elem {
    let n = m.len();
    let mut a: Vec<Vec<F::Elem>> = m.to_vec();
    let mut det = f.one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&i| !f.is_zero(&a[i][col])) else {
            return f.zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = f.neg(&det);
        }
        let p = a[col][col].clone();
        det = f.mul(&det, &p);
        let pinv = f.inv(&p).expect("nonzero pivot");
        for i in col + 1..n {
            if f.is_zero(&a[i][col]) {
                continue;
            }
            let factor = f.mul(&a[i][col], &pinv);
            for j in col..n {
                let t = f.mul(&factor, &a[col][j]);
                a[i][j] = f.sub(&a[i][j], &t);
            }
        }
    }
    det
}

/// Resultant of two binary forms over a ring. Both degrees must be at least 1.
pub fn sylvester_resultant_ring<R: RingOps>(
    r: &R,
    p: &[R::Elem],
    q: &[R::Elem],
) -> Result<R::Elem, AlgebraError> {
    if p.len() < 2 || q.len() < 2 {
        return Err(AlgebraError::Degenerate(
            "resultant needs forms of degree >= 1".into(),
        ));
    }
    Ok(det_cofactor(r, &sylvester_matrix(r, p, q)))
}

/// Resultant of two binary forms over a field, given densely.
pub fn sylvester_resultant_dense<F: Field>(
    f: &F,
    p: &[F::Elem],
    q: &[F::Elem],
) -> Result<F::Elem, AlgebraError> {
    if p.len() < 2 || q.len() < 2 {
        return Err(AlgebraError::Degenerate(
            "resultant needs forms of degree >= 1".into(),
        ));
    }
    Ok(det_field(f, &sylvester_matrix(&FieldRing(f), p, q)))
}

/// Dense coefficients of a homogeneous polynomial in two variables.
pub fn binary_form_coeffs<F: Field>(p: &Poly<F>) -> Result<Vec<F::Elem>, AlgebraError> {
    if p.nvars() != 2 || !p.is_homogeneous() {
        return Err(AlgebraError::NotBinary(p.nvars()));
    }
    let d = p.total_degree().unwrap_or(0) as usize;
    Ok((0..=d)
        .map(|j| p.coeff(&[(d - j) as u16, j as u16]))
        .collect())
}

/// Resultant of two binary forms (polynomials in two variables, homogeneous).
pub fn sylvester_resultant<F: Field>(p: &Poly<F>, q: &Poly<F>) -> Result<F::Elem, AlgebraError> {
    let a = binary_form_coeffs(p)?;
    let b = binary_form_coeffs(q)?;
    sylvester_resultant_dense(p.field(), &a, &b)
}

fn binary_mul<R: RingOps>(r: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
    let mut out = vec![r.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if r.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !r.is_zero(y) {
                out[i + j] = r.add(&out[i + j], &r.mul(x, y));
            }
        }
    }
    out
}

/// Restricts a ternary form with polynomial coefficients to the line
/// `z = U v1 + V v2`, returning the dense binary form in `(U, V)`.
fn pull_back<F: Field>(
    ring: &PolyRing<F>,
    form: &Poly<F>,
    lines: &[[Poly<F>; 2]; 3],
    degree: usize,
) -> Vec<Poly<F>> {
    let mut out = vec![ring.zero(); degree + 1];
    for (zexp, coeff) in form.collect_by(&[0, 1, 2]) {
        let mut acc = vec![coeff];
        for (i, &k) in zexp.iter().enumerate() {
            for _ in 0..k {
                acc = binary_mul(ring, &acc, &lines[i]);
            }
        }
        assert_eq!(
            acc.len(),
            degree + 1,
            "form is not homogeneous of the stated degree"
        );
        for (j, c) in acc.into_iter().enumerate() {
            out[j] = ring.add(&out[j], &c);
        }
    }
    out
}

fn z_degree<F: Field>(p: &Poly<F>) -> Option<usize> {
    let mut degs = p.terms().map(|(e, _)| (e[0] + e[1] + e[2]) as usize);
    let d = degs.next()?;
    degs.all(|x| x == d).then_some(d)
}

/// Eliminant of a linear form `l`, a quadratic `q` and a cubic `c` in
/// `z0, z1, z2`. Inputs are polynomials in `3 + m` variables: the first three
/// are `z`, the remaining `m` are parameters appearing in the coefficients.
/// The result is a polynomial in the `m` parameters; it vanishes at a
/// specialization iff the three forms have a common projective zero there
/// (as long as the pivot coefficient of `l` stays nonzero).
pub fn resultant_ternary_123<F: Field>(
    l: &Poly<F>,
    q: &Poly<F>,
    c: &Poly<F>,
) -> Result<Poly<F>, AlgebraError> {
    let nv = l.nvars();
    for p in [q, c] {
        if p.nvars() != nv {
            return Err(AlgebraError::NvarsMismatch(nv, p.nvars()));
        }
    }
    if nv < 3 {
        return Err(AlgebraError::DimensionMismatch {
            expected: 3,
            found: nv,
        });
    }
    if l.is_zero() {
        return Err(AlgebraError::Degenerate("linear form is zero".into()));
    }
    for (p, d, name) in [(l, 1, "linear"), (q, 2, "quadratic"), (c, 3, "cubic")] {
        if !p.is_zero() && z_degree(p) != Some(d) {
            return Err(AlgebraError::Degenerate(format!(
                "{name} form has wrong degree in z"
            )));
        }
    }
    let field = l.field().clone();
    let m = nv - 3;
    let ring = PolyRing {
        field: field.clone(),
        nvars: m,
    };
    let lc = l.collect_by(&[0, 1, 2]);
    let a: Vec<Poly<F>> = (0..3)
        .map(|i| {
            let mut e = smallvec::SmallVec::<[u16; 8]>::from_elem(0, 3);
            e[i] = 1;
            lc.get(&e).cloned().unwrap_or_else(|| ring.zero())
        })
        .collect();
    // pivot: the nonzero coefficient with the largest support
    let k = (0..3)
        .filter(|&i| !a[i].is_zero())
        .max_by_key(|&i| (a[i].num_terms(), std::cmp::Reverse(i)))
        .expect("l is nonzero");
    let others: Vec<usize> = (0..3).filter(|&i| i != k).collect();
    let (i, j) = (others[0], others[1]);
    // v1 = a_k e_i - a_i e_k, v2 = a_k e_j - a_j e_k; both lie on {l = 0}
    let mut lines: [[Poly<F>; 2]; 3] = std::array::from_fn(|_| [ring.zero(), ring.zero()]);
    lines[i][0] = a[k].clone();
    lines[k][0] = a[i].neg();
    lines[j][1] = a[k].clone();
    lines[k][1] = a[j].neg();
    if q.is_zero() || c.is_zero() {
        return Ok(ring.zero());
    }
    let qb = pull_back(&ring, q, &lines, 2);
    let cb = pull_back(&ring, c, &lines, 3);
    let res = sylvester_resultant_ring(&ring, &qb, &cb)?;
    res.div_exact(&a[k].pow(6))
        .ok_or(AlgebraError::NonExactDivision)
}

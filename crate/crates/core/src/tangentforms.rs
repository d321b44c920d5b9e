//! Contact forms of a surface at a point: the forms `t^(j)`, the tangent
//! plane, principal lines, contact orders and the flecnodal-point test.
//!
//! `t^(j)(w, z)` is the literal sum over ordered index tuples
//! `sum d^j f / dw_{i1}..dw_{ij} (w) * z_{i1}..z_{ij}`, so that
//! `t^(j)(w, w) = d (d-1) .. (d-j+1) f(w)`.

use std::collections::BTreeMap;

use rand::Rng;

use crate::algebra::linalg::{self, Matrix};
use crate::algebra::resultant::{sylvester_resultant_ring, PolyRing};
use crate::algebra::{upoly, Field, FiniteField, Poly, QuadElem, QuadExt};
use crate::error::Error;
use crate::projgeom::{LineP3, ProjPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SmoothStatus {
    /// The caller vouches for smoothness.
    AssumedSmooth,
    /// No singular point over `F_{q^k}` for the recorded `k`.
    ProbedSmooth(u32),
    Unknown,
}

/// A surface `f = 0` in `P^3`, `f` homogeneous of degree `d >= 3`.
#[derive(Clone, Debug, PartialEq)]
pub struct Surface<F: Field> {
    f: Poly<F>,
    d: u32,
    char_gate: bool,
    smooth: SmoothStatus,
}

impl<F: Field> Surface<F> {
    pub fn new(f: Poly<F>) -> Result<Self, Error> {
        if f.nvars() != 4 {
            return Err(Error::WrongVariableCount(f.nvars()));
        }
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !f.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        let d = f.total_degree().expect("nonzero");
        if d < 3 {
            return Err(Error::DegreeTooSmall(d));
        }
        let p = f.field().characteristic();
        let char_gate = p == 0 || p > d as u64;
        Ok(Surface {
            f,
            d,
            char_gate,
            smooth: SmoothStatus::Unknown,
        })
    }

    pub fn with_smooth_status(mut self, s: SmoothStatus) -> Self {
        self.smooth = s;
        self
    }

    pub fn poly(&self) -> &Poly<F> {
        &self.f
    }

    pub fn field(&self) -> &F {
        self.f.field()
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    /// Characteristic 0 or larger than the degree.
    pub fn char_gate(&self) -> bool {
        self.char_gate
    }

    pub fn smooth_status(&self) -> SmoothStatus {
        self.smooth
    }

    pub fn require_char_gate(&self) -> Result<(), Error> {
        if self.char_gate {
            Ok(())
        } else {
            Err(Error::UnsupportedCharacteristic {
                p: self.field().characteristic(),
                d: self.d,
            })
        }
    }

    /// The same surface over a larger field.
    pub fn base_change<G: Field>(&self, g: &G, map: impl Fn(&F::Elem) -> G::Elem) -> Surface<G> {
        Surface {
            f: self.f.map_field(g, map),
            d: self.d,
            char_gate: self.char_gate,
            smooth: self.smooth,
        }
    }

    pub fn contains_point(&self, p: &[F::Elem]) -> bool {
        self.field().is_zero(&self.f.eval(p))
    }

    /// Coefficients of `f(s a + t b)`, index `j` for `s^(d-j) t^j`.
    pub fn restrict(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        self.f.restrict_to_line(a, b)
    }

    pub fn contains_line(&self, l: &LineP3<F::Elem>) -> bool {
        let f = self.field();
        self.restrict(&l.span()[0], &l.span()[1])
            .iter()
            .all(|c| f.is_zero(c))
    }

    pub fn gradient(&self) -> [Poly<F>; 4] {
        std::array::from_fn(|i| self.f.partial_derivative(i))
    }
}

/// `t^(j)` as a polynomial in `(w0..w3, z0..z3)`.
pub fn big_t_form<F: Field>(x: &Surface<F>, j: usize) -> Result<Poly<F>, Error> {
    x.require_char_gate()?;
    Ok(big_t_form_unchecked(x.poly(), j))
}

fn big_t_form_unchecked<F: Field>(f: &Poly<F>, j: usize) -> Poly<F> {
    let field = f.field();
    let mut t = f.embed_vars(8, &[0, 1, 2, 3]);
    let z: Vec<Poly<F>> = (4..8).map(|i| Poly::var(field, 8, i)).collect();
    for _ in 0..j {
        let mut next = Poly::zero(field, 8);
        for (i, zi) in z.iter().enumerate() {
            next = &next + &(zi * &t.partial_derivative(i));
        }
        t = next;
    }
    t
}

/// `t_P^(1..=3)` at a point, read off the Taylor expansion: `t_P^(j)(z)` is
/// `j!` times the `lambda^(d-j)` coefficient of `f(lambda P + z)`.
pub(crate) fn t_forms_at<F: Field>(f: &Poly<F>, p: &[F::Elem], d: u32) -> [Poly<F>; 3] {
    let field = f.field();
    let m: Matrix<F::Elem> = (0..4)
        .map(|i| {
            let mut row = vec![p[i].clone()];
            row.extend((0..4).map(|k| if k == i { field.one() } else { field.zero() }));
            row
        })
        .collect();
    let shifted = f.substitute_linear(&m).expect("4x5 substitution");
    let by_lambda = shifted.collect_by(&[0]);
    std::array::from_fn(|k| {
        let j = k as u32 + 1;
        let key: crate::algebra::Monomial = smallvec::smallvec![(d - j) as u16];
        let fact = field.from_i64((1..=j as i64).product());
        by_lambda
            .get(&key)
            .map(|c| c.scale(&fact))
            .unwrap_or_else(|| Poly::zero(field, 4))
    })
}

/// The forms `t_P^(1), t_P^(2), t_P^(3)` at a point of the surface, with a
/// chart of the tangent plane.
#[derive(Clone, Debug, PartialEq)]
pub struct TangentData<F: Field> {
    pub point: ProjPoint<F::Elem>,
    pub t1: Poly<F>,
    pub t2: Poly<F>,
    pub t3: Poly<F>,
    /// Coordinate of `z` eliminated using `t1`.
    pub pivot: usize,
    /// 4x3 matrix `C` with `z = C y` parametrizing the tangent plane.
    pub chart: Matrix<F::Elem>,
}

impl<F: Field> TangentData<F> {
    /// The point in tangent-plane coordinates `y`.
    pub fn point_y(&self) -> Vec<F::Elem> {
        self.to_y(self.point.coords())
    }

    /// Tangent-plane coordinates of a point of `T_P`.
    pub fn to_y(&self, z: &[F::Elem]) -> Vec<F::Elem> {
        (0..4)
            .filter(|&i| i != self.pivot)
            .map(|i| z[i].clone())
            .collect()
    }

    pub fn from_y(&self, f: &F, y: &[F::Elem]) -> Vec<F::Elem> {
        linalg::mat_vec(f, &self.chart, y)
    }

    /// `t_P^(j)` restricted to the tangent plane, as a ternary form in `y`.
    pub fn restricted(&self, j: usize) -> Poly<F> {
        let t = match j {
            1 => &self.t1,
            2 => &self.t2,
            3 => &self.t3,
            _ => panic!("only t1, t2, t3 are stored"),
        };
        t.substitute_linear(&self.chart).expect("chart is 4x3")
    }
}

pub fn tangent_data<F: Field>(
    x: &Surface<F>,
    p: &ProjPoint<F::Elem>,
) -> Result<TangentData<F>, Error> {
    x.require_char_gate()?;
    let f = x.field();
    let pc = p.coords();
    if !x.contains_point(pc) {
        return Err(Error::NotOnSurface);
    }
    let grad: Vec<F::Elem> = x.gradient().iter().map(|g| g.eval(pc)).collect();
    let Some(pivot) = grad.iter().position(|g| !f.is_zero(g)) else {
        return Err(Error::SingularPoint);
    };
    let [t1, t2, t3] = t_forms_at(x.poly(), pc, x.degree());
    debug_assert_eq!(t1, Poly::linear(f, &grad));
    let ginv = f.inv(&grad[pivot]).expect("nonzero");
    let others: Vec<usize> = (0..4).filter(|&i| i != pivot).collect();
    let mut chart: Matrix<F::Elem> = vec![vec![f.zero(); 3]; 4];
    for (col, &i) in others.iter().enumerate() {
        chart[i][col] = f.one();
        chart[pivot][col] = f.neg(&f.mul(&grad[i], &ginv));
    }
    Ok(TangentData {
        point: p.clone(),
        t1,
        t2,
        t3,
        pivot,
        chart,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ContactOrder {
    Finite(u32),
    /// `f` vanishes identically on the line.
    Infinite,
}

impl ContactOrder {
    pub fn at_least(self, k: u32) -> bool {
        match self {
            ContactOrder::Finite(m) => m >= k,
            ContactOrder::Infinite => true,
        }
    }
}

/// Multiplicity of `(s0 : t0)` as a root of the binary form with dense
/// coefficients `c` (index `j` for `s^(d-j) t^j`).
pub fn binary_root_multiplicity<F: Field>(
    f: &F,
    c: &[F::Elem],
    s0: &F::Elem,
    t0: &F::Elem,
) -> ContactOrder {
    if c.iter().all(|x| f.is_zero(x)) {
        return ContactOrder::Infinite;
    }
    let d = c.len() - 1;
    if f.is_zero(s0) {
        let top = c.iter().rposition(|x| !f.is_zero(x)).expect("nonzero");
        return ContactOrder::Finite((d - top) as u32);
    }
    let g = upoly::trimmed(f, c.to_vec());
    let root = f.div(t0, s0).expect("nonzero");
    ContactOrder::Finite(upoly::root_multiplicity(f, &g, &root).unwrap_or(0) as u32)
}

/// Order of contact of the line with the surface at `p`.
pub fn contact_order<F: Field>(
    x: &Surface<F>,
    l: &LineP3<F::Elem>,
    p: &ProjPoint<F::Elem>,
) -> Result<ContactOrder, Error> {
    let f = x.field();
    if !l.contains_point(f, p.coords()) {
        return Err(Error::PointNotOnLine);
    }
    let (c0, c1) = l.pivots(f);
    let c = x.restrict(&l.span()[0], &l.span()[1]);
    Ok(binary_root_multiplicity(
        f,
        &c,
        &p.coords()[c0],
        &p.coords()[c1],
    ))
}

/// The principal lines at a point.
#[derive(Clone, Debug, PartialEq)]
pub enum PrincipalDirections<F: Field> {
    /// `t2` vanishes on the whole tangent plane.
    WholePlane,
    /// Two lines defined over the base field; equal for a double line.
    Rational(LineP3<F::Elem>, LineP3<F::Elem>),
    /// A pair of conjugate lines over `F(sqrt(D))`.
    Conjugate {
        ext: QuadExt<F>,
        lines: (LineP3<QuadElem<F::Elem>>, LineP3<QuadElem<F::Elem>>),
    },
}

impl<F: Field> PrincipalDirections<F> {
    pub fn is_double(&self) -> bool {
        matches!(self, PrincipalDirections::Rational(a, b) if a == b)
    }
}

/// A basis `(P_y, E1, E2)` of tangent-plane coordinates, first vector `P_y`.
fn adapted_basis<F: Field>(f: &F, py: &[F::Elem]) -> [Vec<F::Elem>; 3] {
    let k = py
        .iter()
        .position(|x| !f.is_zero(x))
        .expect("point is nonzero");
    let mut rest = (0..3).filter(|&i| i != k).map(|i| {
        let mut e = vec![f.zero(); 3];
        e[i] = f.one();
        e
    });
    [py.to_vec(), rest.next().unwrap(), rest.next().unwrap()]
}

/// Coefficients `(alpha, beta, gamma)` of `q(a P + b E1 + c E2) = alpha b^2 + beta b c + gamma c^2`.
fn binary_quadratic_on_basis<F: Field>(
    q: &Poly<F>,
    basis: &[Vec<F::Elem>; 3],
) -> Result<[F::Elem; 3], Error> {
    let m: Matrix<F::Elem> = linalg::transpose(basis.as_ref());
    let qb = q.substitute_linear(&m)?;
    for (e, _) in qb.terms() {
        if e[0] != 0 {
            return Err(Error::Consistency(
                "t2 on the tangent plane is not a cone with vertex P".into(),
            ));
        }
    }
    Ok([
        qb.coeff(&[0, 2, 0]),
        qb.coeff(&[0, 1, 1]),
        qb.coeff(&[0, 0, 2]),
    ])
}

/// Root directions `(b, c)` of `alpha b^2 + beta b c + gamma c^2`, over `F`
/// when the discriminant is a square.
fn quadratic_roots<F: Field>(
    f: &F,
    q: &[F::Elem; 3],
    sqrt_disc: &F::Elem,
) -> [(F::Elem, F::Elem); 2] {
    let [alpha, beta, gamma] = q;
    if f.is_zero(alpha) {
        // c (beta b + gamma c) = 0
        return [(f.one(), f.zero()), (f.neg(gamma), beta.clone())];
    }
    let two_a = f.add(alpha, alpha);
    let nb = f.neg(beta);
    [
        (f.add(&nb, sqrt_disc), two_a.clone()),
        (f.sub(&nb, sqrt_disc), two_a),
    ]
}

fn line_through_direction<F: Field>(
    f: &F,
    td: &TangentData<F>,
    basis: &[Vec<F::Elem>; 3],
    dir: &(F::Elem, F::Elem),
) -> Result<LineP3<F::Elem>, Error> {
    let y: Vec<F::Elem> = (0..3)
        .map(|i| f.add(&f.mul(&dir.0, &basis[1][i]), &f.mul(&dir.1, &basis[2][i])))
        .collect();
    let v = td.from_y(f, &y);
    Ok(LineP3::from_span(f, td.point.coords(), &v)?)
}

fn lift_tangent<F: Field>(ext: &QuadExt<F>, td: &TangentData<F>) -> TangentData<QuadExt<F>> {
    let emb = |x: &F::Elem| ext.embed(x);
    TangentData {
        point: ProjPoint::new(ext, td.point.coords().clone().map(|x| emb(&x))).expect("nonzero"),
        t1: td.t1.map_field(ext, emb),
        t2: td.t2.map_field(ext, emb),
        t3: td.t3.map_field(ext, emb),
        pivot: td.pivot,
        chart: td
            .chart
            .iter()
            .map(|r| r.iter().map(emb).collect())
            .collect(),
    }
}

/// Principal lines at a smooth point.
pub fn principal_lines<F: Field>(
    x: &Surface<F>,
    p: &ProjPoint<F::Elem>,
) -> Result<PrincipalDirections<F>, Error> {
    let td = tangent_data(x, p)?;
    principal_lines_from(x.field(), &td)
}

pub fn principal_lines_from<F: Field>(
    f: &F,
    td: &TangentData<F>,
) -> Result<PrincipalDirections<F>, Error> {
    let basis = adapted_basis(f, &td.point_y());
    let q = binary_quadratic_on_basis(&td.restricted(2), &basis)?;
    if q.iter().all(|c| f.is_zero(c)) {
        return Ok(PrincipalDirections::WholePlane);
    }
    let [alpha, beta, gamma] = &q;
    let four = f.from_i64(4);
    let disc = f.sub(&f.mul(beta, beta), &f.mul(&four, &f.mul(alpha, gamma)));
    if let Some(r) = f.sqrt(&disc) {
        let [d1, d2] = quadratic_roots(f, &q, &r);
        let l1 = line_through_direction(f, td, &basis, &d1)?;
        let l2 = line_through_direction(f, td, &basis, &d2)?;
        let (l1, l2) = if l1 <= l2 { (l1, l2) } else { (l2, l1) };
        return Ok(PrincipalDirections::Rational(l1, l2));
    }
    let ext = QuadExt::new(f.clone(), disc)?;
    let tde = lift_tangent(&ext, td);
    let emb = |x: &F::Elem| ext.embed(x);
    let qe = [emb(alpha), emb(beta), emb(gamma)];
    let basis_e: [Vec<QuadElem<F::Elem>>; 3] = basis.clone().map(|v| v.iter().map(emb).collect());
    let [d1, d2] = quadratic_roots(&ext, &qe, &ext.root());
    let l1 = line_through_direction(&ext, &tde, &basis_e, &d1)?;
    let l2 = line_through_direction(&ext, &tde, &basis_e, &d2)?;
    Ok(PrincipalDirections::Conjugate {
        ext,
        lines: (l1, l2),
    })
}

/// The line `L'` with `t2|_T = (form of L) * (form of L')`, for a line `L`
/// on the surface through `p`.
pub fn residual_principal_line<F: Field>(
    x: &Surface<F>,
    p: &ProjPoint<F::Elem>,
    l: &LineP3<F::Elem>,
) -> Result<LineP3<F::Elem>, Error> {
    let f = x.field();
    if !l.contains_point(f, p.coords()) {
        return Err(Error::PointNotOnLine);
    }
    if !x.contains_line(l) {
        return Err(Error::LineNotOnSurface);
    }
    let td = tangent_data(x, p)?;
    let q = td.restricted(2);
    if q.is_zero() {
        return Err(Error::WholePlanePoint);
    }
    let lf = line_form_in_chart(f, &td, l);
    let rest = q.div_exact(&lf).ok_or_else(|| {
        Error::Consistency("t2 is not divisible by the form of a line on X".into())
    })?;
    let coeffs: Vec<F::Elem> = (0..3)
        .map(|i| {
            let mut e = [0u16; 3];
            e[i] = 1;
            rest.coeff(&e)
        })
        .collect();
    let k = linalg::kernel(f, &[coeffs], 3);
    let a = td.from_y(f, &k[0]);
    let b = td.from_y(f, &k[1]);
    Ok(LineP3::from_span(f, &a, &b)?)
}

/// Linear form in tangent-plane coordinates cutting out a line of `T_P`.
pub fn line_form_in_chart<F: Field>(f: &F, td: &TangentData<F>, l: &LineP3<F::Elem>) -> Poly<F> {
    let a = td.to_y(&l.span()[0]);
    let b = td.to_y(&l.span()[1]);
    Poly::linear(f, &cross(f, &a, &b))
}

pub fn cross<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let m = |i: usize, j: usize| f.sub(&f.mul(&a[i], &b[j]), &f.mul(&a[j], &b[i]));
    vec![m(1, 2), m(2, 0), m(0, 1)]
}

/// Evidence that a point is flecnodal.
#[derive(Clone, Debug, PartialEq)]
pub enum FlecWitness<F: Field> {
    Line(LineP3<F::Elem>),
    ConjugateLine(QuadExt<F>, LineP3<QuadElem<F::Elem>>),
    /// Every tangent line is principal, and the cubic `t3` has a root over
    /// the algebraic closure.
    WholePlane,
}

/// Whether some principal line has contact order at least 4.
pub fn is_flecnodal_point<F: Field>(
    x: &Surface<F>,
    p: &ProjPoint<F::Elem>,
) -> Result<Option<FlecWitness<F>>, Error> {
    let f = x.field();
    let td = tangent_data(x, p)?;
    let pl = principal_lines_from(f, &td)?;
    Ok(match pl {
        PrincipalDirections::WholePlane => Some(FlecWitness::WholePlane),
        PrincipalDirections::Rational(l1, l2) => [l1, l2]
            .into_iter()
            .find(|l| t3_vanishes_on(f, &td.t3, l))
            .map(FlecWitness::Line),
        PrincipalDirections::Conjugate { ext, lines } => {
            let t3 = td.t3.map_field(&ext, |c| ext.embed(c));
            t3_vanishes_on(&ext, &t3, &lines.0).then(|| FlecWitness::ConjugateLine(ext, lines.0))
        }
    })
}

fn t3_vanishes_on<F: Field>(f: &F, t3: &Poly<F>, l: &LineP3<F::Elem>) -> bool {
    t3.restrict_to_line(&l.span()[0], &l.span()[1])
        .iter()
        .all(|c| f.is_zero(c))
}

/// Local intersection number at `p` of `V(t2|_T)` and `V(t3|_T)` inside the
/// tangent plane. Retries random coordinates up to 5 times when the chosen
/// projection is not generic.
pub fn diagonal_multiplicity<F: Field, R: Rng + ?Sized>(
    x: &Surface<F>,
    p: &ProjPoint<F::Elem>,
    rng: &mut R,
) -> Result<u32, Error> {
    let f = x.field();
    let td = tangent_data(x, p)?;
    match principal_lines_from(f, &td)? {
        PrincipalDirections::WholePlane => return Err(Error::WholePlanePoint),
        pl if pl.is_double() => {
            return Err(Error::Precondition("principal lines coincide".into()));
        }
        _ => {}
    }
    if is_flecnodal_point(x, p)?.is_some() {
        return Err(Error::Precondition("point is flecnodal".into()));
    }
    let q = td.restricted(2);
    let c = td.restricted(3);
    let py = td.point_y();
    const ATTEMPTS: usize = 5;
    for _ in 0..ATTEMPTS {
        let mut cols = vec![py.clone()];
        cols.push((0..3).map(|_| f.random_elem(rng)).collect());
        cols.push((0..3).map(|_| f.random_elem(rng)).collect());
        let a = linalg::transpose(&cols);
        if linalg::rank(f, &a) < 3 {
            continue;
        }
        if let Some(m) = local_resultant_order(f, &q, &c, &a)? {
            return Ok(m);
        }
    }
    Err(Error::GenericityFailed(ATTEMPTS))
}

/// With `y = A (1, b, c)`, the order at `b = 0` of `Res_c(Q', C')`, or
/// `None` when the fiber `b = 0` is not generic.
fn local_resultant_order<F: Field>(
    f: &F,
    q: &Poly<F>,
    c: &Poly<F>,
    a: &Matrix<F::Elem>,
) -> Result<Option<u32>, Error> {
    let qa = q.substitute_linear(a)?.specialize_prefix(&[f.one()]);
    let ca = c.substitute_linear(a)?.specialize_prefix(&[f.one()]);
    // variables now (b, c); collect by powers of c with coefficients in F[b]
    let as_c_poly = |g: &Poly<F>, deg: usize| -> Option<Vec<Poly<F>>> {
        let by = g.collect_by(&[1]);
        let mut coeffs: Vec<Poly<F>> = vec![Poly::zero(f, 1); deg + 1];
        for (e, co) in by {
            let k = e[0] as usize;
            if k > deg {
                return None;
            }
            coeffs[deg - k] = co;
        }
        // leading coefficient must be a nonzero constant
        let lead = &coeffs[0];
        (lead.total_degree() == Some(0)).then_some(coeffs)
    };
    let (Some(qc), Some(cc)) = (as_c_poly(&qa, 2), as_c_poly(&ca, 3)) else {
        return Ok(None);
    };
    // only c = 0 may be a common root on the fiber b = 0
    let at0 =
        |v: &[Poly<F>]| -> Vec<F::Elem> { v.iter().rev().map(|p| p.eval(&[f.zero()])).collect() };
    let g = upoly::gcd(f, &at0(&qc), &at0(&cc));
    if g.iter()
        .take(g.len().saturating_sub(1))
        .any(|x| !f.is_zero(x))
    {
        return Ok(None);
    }
    let ring = PolyRing {
        field: f.clone(),
        nvars: 1,
    };
    let res = sylvester_resultant_ring(&ring, &qc, &cc)?;
    if res.is_zero() {
        return Err(Error::Consistency(
            "t2 and t3 share a component on the tangent plane".into(),
        ));
    }
    let ord = res
        .terms()
        .map(|(e, _)| e[0] as u32)
        .min()
        .expect("nonzero");
    Ok(Some(ord))
}

/// All points of `P^3(F_q)`, normalized.
pub fn all_points<F: FiniteField>(f: &F) -> impl Iterator<Item = [F::Elem; 4]> + '_ {
    let q = f.order();
    (0..4usize).flat_map(move |lead| {
        let free = 3 - lead;
        (0..q.pow(free as u32)).map(move |mut idx| {
            let mut v: [F::Elem; 4] = std::array::from_fn(|_| f.zero());
            v[lead] = f.one();
            for c in v.iter_mut().skip(lead + 1) {
                *c = f.element(idx % q);
                idx /= q;
            }
            v
        })
    })
}

/// All points of `P^2(F_q)`, normalized.
pub fn all_points_p2<F: FiniteField>(f: &F) -> Vec<[F::Elem; 3]> {
    let q = f.order();
    let mut out = Vec::new();
    for lead in 0..3usize {
        let free = 2 - lead;
        for mut idx in 0..q.pow(free as u32) {
            let mut v: [F::Elem; 3] = std::array::from_fn(|_| f.zero());
            v[lead] = f.one();
            for c in v.iter_mut().skip(lead + 1) {
                *c = f.element(idx % q);
                idx /= q;
            }
            out.push(v);
        }
    }
    out
}

/// A uniformly chosen affine slice `(x0, x1, x2)` with all roots `x3` of `f`
/// found by trying every field element; retries until a point is found.
pub fn random_point<F: FiniteField, R: Rng + ?Sized>(
    x: &Surface<F>,
    rng: &mut R,
) -> ProjPoint<F::Elem> {
    let f = x.field();
    loop {
        let a: [F::Elem; 4] =
            std::array::from_fn(|i| if i < 3 { f.random_elem(rng) } else { f.zero() });
        let mut b: [F::Elem; 4] = std::array::from_fn(|_| f.zero());
        b[3] = f.one();
        if a.iter().all(|v| f.is_zero(v)) {
            continue;
        }
        let c = x.restrict(&a, &b);
        let g = upoly::trimmed(f, c);
        if g.is_empty() {
            let t = f.random_elem(rng);
            let mut p = a.clone();
            p[3] = t;
            return ProjPoint::new(f, p).expect("nonzero");
        }
        let roots: Vec<F::Elem> = f
            .elements()
            .into_iter()
            .filter(|t| f.is_zero(&upoly::eval(f, &g, t)))
            .collect();
        if roots.is_empty() {
            continue;
        }
        let t = roots[rng.gen_range(0..roots.len())].clone();
        let mut p = a.clone();
        p[3] = t;
        return ProjPoint::new(f, p).expect("nonzero");
    }
}

/// Distinct points on a line, parametrized by the field elements plus the point at infinity.
pub fn points_on_line<F: FiniteField>(f: &F, l: &LineP3<F::Elem>) -> Vec<ProjPoint<F::Elem>> {
    let mut out: Vec<ProjPoint<F::Elem>> = f
        .elements()
        .iter()
        .map(|t| ProjPoint::new(f, l.point_at(f, &f.one(), t)).expect("nonzero"))
        .collect();
    out.push(ProjPoint::new(f, l.point_at(f, &f.zero(), &f.one())).expect("nonzero"));
    out
}

/// Collects terms of a ternary form into a map from exponent triples.
pub fn ternary_terms<F: Field>(p: &Poly<F>) -> BTreeMap<[u16; 3], F::Elem> {
    p.terms()
        .map(|(e, c)| ([e[0], e[1], e[2]], c.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{PrimeField, Rationals};

    fn fermat<F: Field>(f: &F, d: u32) -> Surface<F> {
        let p = (0..4).fold(Poly::zero(f, 4), |acc, i| &acc + &Poly::var(f, 4, i).pow(d));
        Surface::new(p).unwrap()
    }

    #[test]
    fn fermat_cubic_forms() {
        let q = Rationals;
        let x = fermat(&q, 3);
        let t1 = big_t_form(&x, 1).unwrap();
        let mut expect = Poly::zero(&q, 8);
        for i in 0..4 {
            expect = &expect
                + &(&Poly::var(&q, 8, i).pow(2) * &Poly::var(&q, 8, 4 + i)).scale(&q.from_i64(3));
        }
        assert_eq!(t1, expect);
        let t2 = big_t_form(&x, 2).unwrap();
        let mut expect = Poly::zero(&q, 8);
        for i in 0..4 {
            expect = &expect
                + &(&Poly::var(&q, 8, i) * &Poly::var(&q, 8, 4 + i).pow(2)).scale(&q.from_i64(6));
        }
        assert_eq!(t2, expect);
    }

    #[test]
    fn tangent_data_fermat_cubic() {
        let q = Rationals;
        let x = fermat(&q, 3);
        let p = ProjPoint::new(&q, [1, -1, 0, 0].map(|v| q.from_i64(v))).unwrap();
        let td = tangent_data(&x, &p).unwrap();
        let z: Vec<_> = (0..4).map(|i| Poly::var(&q, 4, i)).collect();
        assert_eq!(td.t1, (&z[0] + &z[1]).scale(&q.from_i64(3)));
        assert_eq!(td.t2, (&z[0].pow(2) - &z[1].pow(2)).scale(&q.from_i64(6)));
        assert!(matches!(
            principal_lines(&x, &p).unwrap(),
            PrincipalDirections::WholePlane
        ));
        let off = ProjPoint::new(&q, [1, 0, 0, 0].map(|v| q.from_i64(v))).unwrap();
        assert_eq!(tangent_data(&x, &off), Err(Error::NotOnSurface));
    }

    #[test]
    fn t_forms_at_point_match_big_forms() {
        let f = PrimeField::new(31).unwrap();
        let x = fermat(&f, 4);
        let p = [1u64, 3, 7, 2];
        let at = t_forms_at(x.poly(), &p, 4);
        for j in 1..=3 {
            let big = big_t_form(&x, j).unwrap().specialize_prefix(&p);
            assert_eq!(big, at[j - 1]);
        }
    }

    #[test]
    fn contact_orders_on_fermat_cubic() {
        let q = Rationals;
        let x = fermat(&q, 3);
        let v = |a: [i64; 4]| a.map(|t| q.from_i64(t));
        let on = LineP3::from_span(&q, &v([1, -1, 0, 0]), &v([0, 0, 1, -1])).unwrap();
        let p = ProjPoint::new(&q, v([1, -1, 0, 0])).unwrap();
        assert_eq!(contact_order(&x, &on, &p).unwrap(), ContactOrder::Infinite);
        let tangent = LineP3::from_span(&q, &v([1, -1, 0, 0]), &v([0, 0, 1, 0])).unwrap();
        assert_eq!(
            contact_order(&x, &tangent, &p).unwrap(),
            ContactOrder::Finite(3)
        );
        let far = ProjPoint::new(&q, v([0, 0, 0, 1])).unwrap();
        assert_eq!(
            contact_order(&x, &tangent, &far),
            Err(Error::PointNotOnLine)
        );
    }

    #[test]
    fn char_gate_refuses_small_characteristic() {
        let f = PrimeField::new(3).unwrap();
        let x = fermat(&f, 4);
        assert!(!x.char_gate());
        assert_eq!(
            big_t_form(&x, 1),
            Err(Error::UnsupportedCharacteristic { p: 3, d: 4 })
        );
    }

    #[test]
    fn point_enumeration_counts() {
        let f = PrimeField::new(3).unwrap();
        assert_eq!(all_points(&f).count(), 27 + 9 + 3 + 1);
    }
}

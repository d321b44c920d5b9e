//! Points, lines and planes of projective 3-space, Plücker coordinates, and
//! enumeration of all lines over a finite field.
//!
//! Plücker coordinates are ordered `(p01, p02, p03, p12, p13, p23)` with
//! `p_ij = a_i b_j - a_j b_i` for spanning points `a`, `b`.

use crate::algebra::linalg::{self, Matrix};
use crate::algebra::{AlgebraError, Field, FieldSpec, FiniteField};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeomError {
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("vector does not satisfy the Plücker relation")]
    NotOnQuadric,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Index pairs of the Plücker coordinates, in storage order.
pub const PLUCKER_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Scales so that the first nonzero entry is 1. `None` for the zero vector.
fn normalize<F: Field>(f: &F, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let lead = v.iter().find(|x| !f.is_zero(x))?;
    let inv = f.inv(lead)?;
    Some(v.iter().map(|x| f.mul(x, &inv)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint<E> {
    coords: [E; 4],
}

impl<E: Clone> ProjPoint<E> {
    pub fn new<F: Field<Elem = E>>(f: &F, coords: [E; 4]) -> Result<Self, GeomError> {
        let n = normalize(f, &coords)
            .ok_or_else(|| GeomError::Degenerate("all coordinates are zero".into()))?;
        Ok(ProjPoint {
            coords: n.try_into().ok().expect("length 4"),
        })
    }

    pub fn coords(&self) -> &[E; 4] {
        &self.coords
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlaneP3<E> {
    form: [E; 4],
}

impl<E: Clone> PlaneP3<E> {
    pub fn new<F: Field<Elem = E>>(f: &F, form: [E; 4]) -> Result<Self, GeomError> {
        let n =
            normalize(f, &form).ok_or_else(|| GeomError::Degenerate("zero linear form".into()))?;
        Ok(PlaneP3 {
            form: n.try_into().ok().expect("length 4"),
        })
    }

    pub fn form(&self) -> &[E; 4] {
        &self.form
    }

    pub fn contains_point<F: Field<Elem = E>>(&self, f: &F, p: &[E]) -> bool {
        f.is_zero(&linalg::dot(f, &self.form, p))
    }

    pub fn contains_line<F: Field<Elem = E>>(&self, f: &F, l: &LineP3<E>) -> bool {
        l.span.iter().all(|row| self.contains_point(f, row))
    }

    /// The plane through the given points; they must span a plane.
    pub fn through<F: Field<Elem = E>>(f: &F, points: &[Vec<E>]) -> Result<Self, GeomError> {
        let k = linalg::kernel(f, points, 4);
        if k.len() != 1 {
            return Err(GeomError::Degenerate("points do not span a plane".into()));
        }
        PlaneP3::new(f, k[0].clone().try_into().ok().expect("length 4"))
    }
}

/// A line, stored as the reduced row-echelon form of a spanning 2x4 matrix
/// together with its normalized Plücker vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LineP3<E> {
    span: [[E; 4]; 2],
    plucker: [E; 6],
}

pub fn plucker_of<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> [F::Elem; 6] {
    PLUCKER_PAIRS.map(|(i, j)| f.sub(&f.mul(&a[i], &b[j]), &f.mul(&a[j], &b[i])))
}

/// `p01 p23 - p02 p13 + p03 p12`.
pub fn plucker_quadric<F: Field>(f: &F, p: &[F::Elem; 6]) -> F::Elem {
    let t1 = f.mul(&p[0], &p[5]);
    let t2 = f.mul(&p[1], &p[4]);
    let t3 = f.mul(&p[2], &p[3]);
    f.add(&f.sub(&t1, &t2), &t3)
}

/// The symmetric bilinear form whose vanishing means two lines meet.
pub fn plucker_pairing<F: Field>(f: &F, p: &[F::Elem; 6], q: &[F::Elem; 6]) -> F::Elem {
    let terms = [
        (f.mul(&p[0], &q[5]), true),
        (f.mul(&p[1], &q[4]), false),
        (f.mul(&p[2], &q[3]), true),
        (f.mul(&p[5], &q[0]), true),
        (f.mul(&p[4], &q[1]), false),
        (f.mul(&p[3], &q[2]), true),
    ];
    terms.iter().fold(
        f.zero(),
        |acc, (t, pos)| if *pos { f.add(&acc, t) } else { f.sub(&acc, t) },
    )
}

impl<E: Clone> LineP3<E> {
    /// The line spanned by two vectors; fails if they are dependent.
    pub fn from_span<F: Field<Elem = E>>(f: &F, a: &[E], b: &[E]) -> Result<Self, GeomError> {
        let (r, pivots) = linalg::rref(f, &[a.to_vec(), b.to_vec()]);
        if pivots.len() != 2 {
            return Err(GeomError::Degenerate(
                "spanning vectors are dependent".into(),
            ));
        }
        Ok(Self::from_rref(f, [to4(&r[0]), to4(&r[1])]))
    }

    /// Builds from rows already in reduced row-echelon form.
    fn from_rref<F: Field<Elem = E>>(f: &F, span: [[E; 4]; 2]) -> Self {
        let p = plucker_of(f, &span[0], &span[1]);
        debug_assert!(f.is_zero(&plucker_quadric(f, &p)));
        let plucker = to6(&normalize(f, &p).expect("rank 2"));
        LineP3 { span, plucker }
    }

    /// Reconstructs a line from a Plücker vector.
    pub fn from_plucker<F: Field<Elem = E>>(f: &F, p: &[E; 6]) -> Result<Self, GeomError> {
        if p.iter().all(|x| f.is_zero(x)) {
            return Err(GeomError::Degenerate("zero Plücker vector".into()));
        }
        if !f.is_zero(&plucker_quadric(f, p)) {
            return Err(GeomError::NotOnQuadric);
        }
        // columns of the antisymmetric matrix P = a b^T - b a^T lie in span{a, b}
        let mut m: Matrix<E> = vec![vec![f.zero(); 4]; 4];
        for (k, &(i, j)) in PLUCKER_PAIRS.iter().enumerate() {
            m[i][j] = p[k].clone();
            m[j][i] = f.neg(&p[k]);
        }
        let cols = linalg::transpose(&m);
        let (r, pivots) = linalg::rref(f, &cols);
        if pivots.len() != 2 {
            return Err(GeomError::NotOnQuadric);
        }
        Ok(Self::from_rref(f, [to4(&r[0]), to4(&r[1])]))
    }

    pub fn span(&self) -> &[[E; 4]; 2] {
        &self.span
    }

    pub fn plucker(&self) -> &[E; 6] {
        &self.plucker
    }

    /// Pivot columns of the echelon form.
    pub fn pivots<F: Field<Elem = E>>(&self, f: &F) -> (usize, usize) {
        let p0 = self.span[0]
            .iter()
            .position(|x| !f.is_zero(x))
            .expect("rank 2");
        let p1 = self.span[1]
            .iter()
            .position(|x| !f.is_zero(x))
            .expect("rank 2");
        (p0, p1)
    }

    /// `s * a + t * b` for the echelon rows `a`, `b`.
    pub fn point_at<F: Field<Elem = E>>(&self, f: &F, s: &E, t: &E) -> [E; 4] {
        std::array::from_fn(|i| f.add(&f.mul(s, &self.span[0][i]), &f.mul(t, &self.span[1][i])))
    }

    pub fn contains_point<F: Field<Elem = E>>(&self, f: &F, p: &[E]) -> bool {
        let (c0, c1) = self.pivots(f);
        (0..4).all(|i| {
            let v = f.add(
                &f.mul(&p[c0], &self.span[0][i]),
                &f.mul(&p[c1], &self.span[1][i]),
            );
            f.is_zero(&f.sub(&p[i], &v))
        })
    }

    /// Maps the line through a field embedding.
    pub fn map<G: Field>(&self, g: &G, phi: impl Fn(&E) -> G::Elem) -> LineP3<G::Elem> {
        let span = self.span.clone().map(|row| row.map(|x| phi(&x)));
        LineP3::from_rref(g, span)
    }
}

fn to4<E: Clone>(v: &[E]) -> [E; 4] {
    std::array::from_fn(|i| v[i].clone())
}

fn to6<E: Clone>(v: &[E]) -> [E; 6] {
    std::array::from_fn(|i| v[i].clone())
}

pub fn line_from_points<F: Field>(
    f: &F,
    a: &ProjPoint<F::Elem>,
    b: &ProjPoint<F::Elem>,
) -> Result<LineP3<F::Elem>, GeomError> {
    if a == b {
        return Err(GeomError::Degenerate("the two points coincide".into()));
    }
    LineP3::from_span(f, a.coords(), b.coords())
}

pub fn lines_meet<F: Field>(f: &F, l1: &LineP3<F::Elem>, l2: &LineP3<F::Elem>) -> bool {
    f.is_zero(&plucker_pairing(f, l1.plucker(), l2.plucker()))
}

/// The plane spanned by two distinct meeting lines.
pub fn plane_of_lines<F: Field>(
    f: &F,
    l1: &LineP3<F::Elem>,
    l2: &LineP3<F::Elem>,
) -> Result<PlaneP3<F::Elem>, GeomError> {
    let rows: Vec<Vec<F::Elem>> = l1
        .span()
        .iter()
        .chain(l2.span())
        .map(|r| r.to_vec())
        .collect();
    if linalg::rank(f, &rows) != 3 {
        return Err(GeomError::Degenerate("lines are equal or skew".into()));
    }
    PlaneP3::through(f, &rows)
}

/// `M` and `M^{-1}` such that substituting `x = M x'` carries `{x'2 = x'3 = 0}`
/// onto the line. The first two columns of `M` are the echelon rows of the
/// line; the last two are the standard basis vectors of its non-pivot columns.
pub fn standardize_line<F: Field>(
    f: &F,
    l: &LineP3<F::Elem>,
) -> (Matrix<F::Elem>, Matrix<F::Elem>) {
    let (c0, c1) = l.pivots(f);
    let rest: Vec<usize> = (0..4).filter(|&c| c != c0 && c != c1).collect();
    let mut cols: Vec<Vec<F::Elem>> = vec![l.span()[0].to_vec(), l.span()[1].to_vec()];
    for &c in &rest {
        let mut e = vec![f.zero(); 4];
        e[c] = f.one();
        cols.push(e);
    }
    let m = linalg::transpose(&cols);
    let inv = linalg::inverse(f, &m).expect("echelon rows plus complementary axes are a basis");
    (m, inv)
}

/// Pivot pairs of the six echelon shapes of a 2x4 matrix of rank 2.
pub const ECHELON_SHAPES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Positions `(row, col)` of the free entries of an echelon shape.
pub fn free_positions(shape: (usize, usize)) -> Vec<(usize, usize)> {
    let (c0, c1) = shape;
    let mut out: Vec<(usize, usize)> = ((c0 + 1)..4).filter(|&c| c != c1).map(|c| (0, c)).collect();
    out.extend(((c1 + 1)..4).map(|c| (1, c)));
    out
}

/// A slice of the line enumeration: one echelon shape, and (for shapes with
/// free entries) a fixed value index of the first free entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinePartition {
    pub shape: usize,
    pub lead: Option<u64>,
}

/// All partitions of the line enumeration over a field of order `q`, in
/// canonical order.
pub fn line_partitions(q: u64) -> Vec<LinePartition> {
    let mut out = Vec::new();
    for (s, &shape) in ECHELON_SHAPES.iter().enumerate() {
        if free_positions(shape).is_empty() {
            out.push(LinePartition {
                shape: s,
                lead: None,
            });
        } else {
            out.extend((0..q).map(|v| LinePartition {
                shape: s,
                lead: Some(v),
            }));
        }
    }
    out
}

/// Number of lines in `P^3(F_q)`: `(q^2 + 1)(q^2 + q + 1)`.
pub fn line_count(q: u64) -> u128 {
    let q = q as u128;
    (q * q + 1) * (q * q + q + 1)
}

/// Order of a finite field description, `None` for infinite fields.
pub fn field_order(spec: &FieldSpec) -> Option<u128> {
    match spec {
        FieldSpec::Prime(p) => Some(*p as u128),
        FieldSpec::Ext { p, k, .. } => (*p as u128).checked_pow(*k as u32),
        FieldSpec::Quadratic { base, .. } => field_order(base).and_then(|q| q.checked_mul(q)),
        FieldSpec::Rationals | FieldSpec::Function { .. } => None,
    }
}

/// Number of lines for a field description; infinite fields are rejected.
pub fn line_count_for(spec: &FieldSpec) -> Result<u128, GeomError> {
    let q = field_order(spec).ok_or_else(|| {
        GeomError::Unsupported(format!("line enumeration needs a finite field, got {spec}"))
    })?;
    Ok((q * q + 1) * (q * q + q + 1))
}

/// Lines of one partition, in canonical order.
pub fn lines_in_partition<F: FiniteField>(
    f: &F,
    part: LinePartition,
) -> impl Iterator<Item = LineP3<F::Elem>> + '_ {
    let shape = ECHELON_SHAPES[part.shape];
    let free = free_positions(shape);
    let q = f.order();
    let rest = free.len().saturating_sub(1);
    let count = if free.is_empty() {
        1
    } else {
        q.pow(rest as u32)
    };
    (0..count).map(move |idx| {
        let mut span: [[F::Elem; 4]; 2] =
            std::array::from_fn(|_| std::array::from_fn(|_| f.zero()));
        span[0][shape.0] = f.one();
        span[1][shape.1] = f.one();
        let mut r = idx;
        for (k, &(row, col)) in free.iter().enumerate() {
            let v = if k == 0 {
                part.lead.expect("shape has free entries")
            } else {
                let d = r % q;
                r /= q;
                d
            };
            span[row][col] = f.element(v);
        }
        LineP3::from_rref(f, span)
    })
}

/// Every line of `P^3(F_q)` exactly once.
pub fn all_lines<F: FiniteField>(f: &F) -> impl Iterator<Item = LineP3<F::Elem>> + '_ {
    line_partitions(f.order())
        .into_iter()
        .flat_map(move |p| lines_in_partition(f, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{PrimeField, Rationals};

    #[test]
    fn axis_line() {
        let q = Rationals;
        let p = |v: [i64; 4]| ProjPoint::new(&q, v.map(|x| q.from_i64(x))).unwrap();
        let l = line_from_points(&q, &p([1, 0, 0, 0]), &p([0, 1, 0, 0])).unwrap();
        let expect = [1, 0, 0, 0, 0, 0].map(|x| q.from_i64(x));
        assert_eq!(l.plucker(), &expect);
        let l2 = line_from_points(&q, &p([1, 0, 0, 0]), &p([1, 1, 0, 0])).unwrap();
        assert_eq!(l, l2);
        assert!(line_from_points(&q, &p([1, 0, 0, 0]), &p([2, 0, 0, 0])).is_err());
    }

    #[test]
    fn meeting_examples() {
        let f = PrimeField::new(5).unwrap();
        let x_axis = LineP3::from_span(&f, &[1, 0, 0, 0], &[0, 1, 0, 0]).unwrap();
        let skew = LineP3::from_span(&f, &[0, 0, 1, 0], &[0, 0, 0, 1]).unwrap();
        let meet = LineP3::from_span(&f, &[1, 0, 0, 0], &[0, 0, 1, 0]).unwrap();
        assert!(lines_meet(&f, &x_axis, &x_axis));
        assert!(!lines_meet(&f, &x_axis, &skew));
        assert!(lines_meet(&f, &x_axis, &meet));
    }

    #[test]
    fn standardize_examples() {
        let f = PrimeField::new(13).unwrap();
        let l = LineP3::from_span(&f, &[1, 0, 0, 0], &[0, 1, 0, 0]).unwrap();
        let (m, _) = standardize_line(&f, &l);
        assert_eq!(m, linalg::identity(&f, 4));
        let l = LineP3::from_span(&f, &[0, 0, 1, 0], &[0, 0, 0, 1]).unwrap();
        let (m, minv) = standardize_line(&f, &l);
        let swap = vec![
            vec![0, 0, 1, 0],
            vec![0, 0, 0, 1],
            vec![1, 0, 0, 0],
            vec![0, 1, 0, 0],
        ];
        assert_eq!(m, swap);
        assert_eq!(linalg::mat_mul(&f, &m, &minv), linalg::identity(&f, 4));
    }

    #[test]
    fn six_shapes_partition_the_count() {
        for q in [2u64, 3, 5] {
            let total: u64 = ECHELON_SHAPES
                .iter()
                .map(|&s| q.pow(free_positions(s).len() as u32))
                .sum();
            assert_eq!(total as u128, line_count(q));
        }
    }

    #[test]
    fn plucker_round_trip() {
        let f = PrimeField::new(11).unwrap();
        let l = LineP3::from_span(&f, &[1, 2, 3, 4], &[0, 5, 6, 7]).unwrap();
        let back = LineP3::from_plucker(&f, l.plucker()).unwrap();
        assert_eq!(l, back);
        assert!(matches!(
            LineP3::from_plucker(&f, &[1, 0, 0, 0, 0, 1]),
            Err(GeomError::NotOnQuadric)
        ));
    }

    #[test]
    fn infinite_fields_rejected() {
        assert!(matches!(
            line_count_for(&FieldSpec::Rationals),
            Err(GeomError::Unsupported(_))
        ));
        assert_eq!(line_count_for(&FieldSpec::Prime(7)).unwrap(), 2850);
    }
}

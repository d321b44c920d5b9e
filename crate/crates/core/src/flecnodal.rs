//! The flecnodal divisor of a surface: the eliminant `R(w)` of the contact
//! forms with `z` restricted to a plane `H`, multiplicities of lines in it,
//! and the first/second-kind classification of lines.
//!
//! On the surface, `div(R) = F + 6 (H . X)` where `F` is the flecnodal
//! divisor, so `deg R = 11d - 18` and `F` has class degree `11d - 24`.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::linalg::{self, Matrix};
use crate::algebra::{
    implicit_series_solve, resultant_ternary_123, upoly, AlgebraError, Field, FiniteField,
    FunctionField, Poly, SeriesOrder,
};
use crate::error::Error;
use crate::lineenum::{Census, LineKind};
use crate::projgeom::{standardize_line, LineP3, PlaneP3, ProjPoint};
use crate::tangentforms::{
    self, big_t_form, line_form_in_chart, tangent_data, Surface, TangentData,
};

/// Multiplicity of the diagonal in the intersection of the three contact
/// hypersurfaces.
pub const DIAGONAL_MULTIPLICITY: u32 = 6;

/// Re-rolls allowed when a random choice turns out not to be generic.
pub const MAX_REROLLS: usize = 5;

/// First truncation tried by `line_multiplicity`; doubled up to `SERIES_CAP`.
pub const SERIES_START: usize = 8;
pub const SERIES_CAP: usize = 128;

#[derive(Clone, Debug)]
pub struct FlecnodalData<F: Field> {
    surface: Surface<F>,
    h: PlaneP3<F::Elem>,
    r: Poly<F>,
    seed: Option<u64>,
}

impl<F: Field> FlecnodalData<F> {
    pub fn surface(&self) -> &Surface<F> {
        &self.surface
    }

    pub fn plane(&self) -> &PlaneP3<F::Elem> {
        &self.h
    }

    /// The eliminant `R(w)`.
    pub fn r(&self) -> &Poly<F> {
        &self.r
    }

    pub fn r_degree(&self) -> u32 {
        self.r.total_degree().unwrap_or(0)
    }

    pub fn diag_mult(&self) -> u32 {
        DIAGONAL_MULTIPLICITY
    }

    /// `deg R - 6 = 11d - 24`.
    pub fn class_degree(&self) -> u32 {
        self.r_degree() - DIAGONAL_MULTIPLICITY
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}

/// `11d - 18`.
pub fn expected_r_degree(d: u32) -> u32 {
    11 * d - 18
}

/// Computes `R(w)` for a given plane `H`.
pub fn flecnodal_resultant<F: Field>(
    x: &Surface<F>,
    h: &PlaneP3<F::Elem>,
) -> Result<FlecnodalData<F>, Error> {
    x.require_char_gate()?;
    let f = x.field();
    // z = N zeta with the columns of N spanning H
    let basis = linalg::kernel(f, &[h.form().to_vec()], 4);
    let mut sub: Matrix<F::Elem> = vec![vec![f.zero(); 7]; 8];
    for i in 0..4 {
        sub[i][3 + i] = f.one();
        for (k, b) in basis.iter().enumerate() {
            sub[4 + i][k] = b[i].clone();
        }
    }
    let t: Vec<Poly<F>> = (1..=3)
        .map(|j| Ok(big_t_form(x, j)?.substitute_linear(&sub)?))
        .collect::<Result<_, Error>>()?;
    let r = resultant_ternary_123(&t[0], &t[1], &t[2])?;
    let want = expected_r_degree(x.degree());
    if r.is_zero() || !r.is_homogeneous() || r.total_degree() != Some(want) {
        return Err(Error::Consistency(format!(
            "eliminant has degree {:?}, expected {want}",
            r.total_degree()
        )));
    }
    Ok(FlecnodalData {
        surface: x.clone(),
        h: h.clone(),
        r,
        seed: None,
    })
}

/// A random plane with nonzero coefficients drawn from the field's sampler.
pub fn random_plane<F: Field, R: Rng + ?Sized>(f: &F, rng: &mut R) -> PlaneP3<F::Elem> {
    loop {
        let form: [F::Elem; 4] = std::array::from_fn(|_| f.random_elem(rng));
        if let Ok(p) = PlaneP3::new(f, form) {
            return p;
        }
    }
}

/// `flecnodal_resultant` with a random plane, re-rolled when the eliminant
/// fails its degree check.
pub fn flecnodal_data<F: Field, R: Rng + ?Sized>(
    x: &Surface<F>,
    rng: &mut R,
) -> Result<FlecnodalData<F>, Error> {
    let mut last = None;
    for _ in 0..MAX_REROLLS {
        let h = random_plane(x.field(), rng);
        match flecnodal_resultant(x, &h) {
            Ok(d) => return Ok(d),
            Err(e @ Error::Consistency(_)) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.unwrap_or(Error::GenericityFailed(MAX_REROLLS)))
}

/// `flecnodal_data` driven by a seeded generator; the seed is recorded.
pub fn flecnodal_data_seeded<F: Field>(
    x: &Surface<F>,
    seed: u64,
) -> Result<FlecnodalData<F>, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(flecnodal_data(x, &mut rng)?.with_seed(seed))
}

/// Sets the kind of every census line, in parallel.
pub fn classify_kinds<F: Field>(census: &mut Census<F>) -> Result<(), Error> {
    let x = census.surface().clone();
    x.require_char_gate()?;
    let kinds: Vec<LineKind> = census
        .records()
        .par_iter()
        .map(|r| classify_line(&x, &r.line))
        .collect::<Result<_, Error>>()?;
    for (rec, k) in census.records_mut().iter_mut().zip(kinds) {
        rec.kind = k;
    }
    Ok(())
}

/// Classifies every census line and records its multiplicity, in parallel.
/// Lines inside `H` are measured against a second plane containing none
/// of them, drawn from a generator seeded by `data`'s seed.
pub fn classify_census<F: Field>(
    census: &mut Census<F>,
    data: &FlecnodalData<F>,
) -> Result<(), Error> {
    let x = census.surface().clone();
    x.require_char_gate()?;
    let f = x.field();
    let in_h: Vec<usize> = (0..census.len())
        .filter(|&i| data.h.contains_line(f, &census.records()[i].line))
        .collect();
    let alt = if in_h.is_empty() {
        None
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(data.seed.unwrap_or(0).wrapping_add(1));
        let mut found = None;
        for _ in 0..MAX_REROLLS {
            let d = flecnodal_data(&x, &mut rng)?;
            if in_h
                .iter()
                .all(|&i| !d.h.contains_line(f, &census.records()[i].line))
            {
                found = Some(d);
                break;
            }
        }
        Some(found.ok_or(Error::GenericityFailed(MAX_REROLLS))?)
    };
    let results: Vec<(LineKind, u32)> = census
        .records()
        .par_iter()
        .enumerate()
        .map(|(i, rec)| {
            let kind = classify_line(&x, &rec.line)?;
            let d = if in_h.contains(&i) {
                alt.as_ref().expect("built above")
            } else {
                data
            };
            Ok((kind, line_multiplicity(d, &rec.line)?))
        })
        .collect::<Result<_, Error>>()?;
    for (rec, (kind, m)) in census.records_mut().iter_mut().zip(results) {
        rec.kind = kind;
        rec.flec_mult = Some(m);
    }
    Ok(())
}

/// Looks for a point of the surface off `H` where `R` does not vanish,
/// showing that `R` is not identically zero on the surface.
pub fn witness_r_nonvanishing<F: FiniteField, R: Rng + ?Sized>(
    data: &FlecnodalData<F>,
    rng: &mut R,
    tries: usize,
) -> Option<ProjPoint<F::Elem>> {
    let x = data.surface();
    let f = x.field();
    (0..tries).find_map(|_| {
        let p = tangentforms::random_point(x, rng);
        (!data.h.contains_point(f, p.coords()) && !f.is_zero(&data.r.eval(p.coords()))).then_some(p)
    })
}

/// Echelon-adapted frame of a line: the matrix `M` of `standardize_line`
/// with its last two columns possibly swapped.
struct LineFrame<E> {
    m: Matrix<E>,
    /// Coordinate index carried by the third and fourth columns.
    k: usize,
    l: usize,
    c1: usize,
}

fn line_frame<F: Field>(f: &F, line: &LineP3<F::Elem>, swap: bool) -> LineFrame<F::Elem> {
    let (mut m, _) = standardize_line(f, line);
    let (c0, c1) = line.pivots(f);
    let comp: Vec<usize> = (0..4).filter(|&i| i != c0 && i != c1).collect();
    let (mut k, mut l) = (comp[0], comp[1]);
    if swap {
        for row in m.iter_mut() {
            row.swap(2, 3);
        }
        std::mem::swap(&mut k, &mut l);
    }
    LineFrame { m, k, l, c1 }
}

/// Coefficients `R_ab(s)` of `R(A + s B + eps e_k + delta e_l)` for
/// `a + b <= n`, as polynomials in `s`.
fn expand_along_line<F: Field>(
    f: &F,
    r: &Poly<F>,
    line: &LineP3<F::Elem>,
    frame: &LineFrame<F::Elem>,
    n: usize,
) -> BTreeMap<(usize, usize), Vec<F::Elem>> {
    let [a, b] = line.span();
    let (k, l, c1) = (frame.k, frame.l, frame.c1);
    // along the frame: x_{c0} = 1, x_{c1} = s, x_k = alpha_k(s) + eps, x_l = alpha_l(s) + delta
    let alpha_k = vec![a[k].clone(), b[k].clone()];
    let alpha_l = vec![a[l].clone(), b[l].clone()];
    let mut groups: BTreeMap<(usize, usize), Vec<F::Elem>> = BTreeMap::new();
    for (e, c) in r.terms() {
        let key = (e[k] as usize, e[l] as usize);
        let v = groups.entry(key).or_default();
        let deg = e[c1] as usize;
        if v.len() <= deg {
            v.resize(deg + 1, f.zero());
        }
        v[deg] = f.add(&v[deg], c);
    }
    let max_e = groups.keys().flat_map(|&(x, y)| [x, y]).max().unwrap_or(0);
    let pow_table = |alpha: &Vec<F::Elem>| {
        let mut p = vec![vec![f.one()]];
        for i in 1..=max_e {
            let next = upoly::mul(f, &p[i - 1], alpha);
            p.push(next);
        }
        p
    };
    let pk = pow_table(&alpha_k);
    let pl = pow_table(&alpha_l);
    let binom = binomials(max_e);
    let mut out: BTreeMap<(usize, usize), Vec<F::Elem>> = BTreeMap::new();
    for (&(ek, el), poly) in &groups {
        for ia in 0..=ek.min(n) {
            let left = upoly::mul(
                f,
                poly,
                &upoly::scale(f, &pk[ek - ia], &f.from_u64(binom[ek][ia])),
            );
            for ib in 0..=el.min(n - ia) {
                let term = upoly::mul(
                    f,
                    &left,
                    &upoly::scale(f, &pl[el - ib], &f.from_u64(binom[el][ib])),
                );
                let slot = out.entry((ia, ib)).or_default();
                *slot = upoly::add(f, slot, &term);
            }
        }
    }
    out.retain(|_, v| {
        upoly::trim(f, v);
        !v.is_empty()
    });
    out
}

fn binomials(n: usize) -> Vec<Vec<u64>> {
    let mut c = vec![vec![1u64]];
    for i in 1..=n {
        let mut row = vec![1u64; i + 1];
        for j in 1..i {
            row[j] = c[i - 1][j - 1] + c[i - 1][j];
        }
        c.push(row);
    }
    c
}

/// Multiplicity of a line of the surface in `div(R)` restricted to the
/// surface; equals its multiplicity in the flecnodal divisor when the line
/// is not contained in `H`.
pub fn line_multiplicity<F: Field>(
    data: &FlecnodalData<F>,
    line: &LineP3<F::Elem>,
) -> Result<u32, Error> {
    let x = data.surface();
    x.require_char_gate()?;
    let f = x.field();
    if !x.contains_line(line) {
        return Err(Error::LineNotOnSurface);
    }
    if data.h.contains_line(f, line) {
        return Err(Error::Precondition("line lies in the plane H".into()));
    }
    for swap in [false, true] {
        let frame = line_frame(f, line, swap);
        let fl = x.poly().substitute_linear(&frame.m)?;
        let mut n = SERIES_START;
        loop {
            let phi = match implicit_series_solve(&fl, n) {
                Ok(p) => p,
                Err(AlgebraError::ImplicitSolve(_)) if !swap => break,
                Err(e) => return Err(e.into()),
            };
            let kf = phi.field().clone();
            let coeffs: BTreeMap<(usize, usize), _> =
                expand_along_line(f, data.r(), line, &frame, n)
                    .into_iter()
                    .map(|(key, v)| (key, kf.from_poly(v)))
                    .collect();
            // sum R_ab u^a phi^b
            let val = phi.compose_bivariate(&coeffs);
            match val.order() {
                SeriesOrder::Finite(m) => return Ok(m as u32),
                SeriesOrder::AtLeast(_) if n < SERIES_CAP => n = (2 * n).min(SERIES_CAP),
                SeriesOrder::AtLeast(_) => return Err(Error::TruncationCap(SERIES_CAP)),
            }
        }
    }
    Err(Error::Consistency(
        "the surface is singular along the line".into(),
    ))
}

/// The line over `K(s)` with the generic point `P(s) = A + s B`.
fn generic_point<F: Field>(
    kf: &FunctionField<F>,
    line: &LineP3<F::Elem>,
    swap: bool,
) -> [<FunctionField<F> as Field>::Elem; 4] {
    let [a, b] = line.span();
    let (a, b) = if swap { (b, a) } else { (a, b) };
    std::array::from_fn(|i| kf.from_poly(vec![a[i].clone(), b[i].clone()]))
}

fn lift_line<F: Field>(
    kf: &FunctionField<F>,
    line: &LineP3<F::Elem>,
) -> LineP3<<FunctionField<F> as Field>::Elem> {
    line.map(kf, |c| kf.constant(c))
}

/// Tangent data at the generic point of the line, forcing the chart pivot.
fn generic_tangent<F: Field>(
    x: &Surface<F>,
    line: &LineP3<F::Elem>,
    swap: bool,
) -> Result<
    (
        FunctionField<F>,
        Surface<FunctionField<F>>,
        TangentData<FunctionField<F>>,
    ),
    Error,
> {
    let kf = FunctionField::new(x.field().clone(), "s")?;
    let xk = x.base_change(&kf, |c| kf.constant(c));
    let p = ProjPoint::new(&kf, generic_point(&kf, line, swap))?;
    let td = tangent_data(&xk, &p)?;
    Ok((kf, xk, td))
}

/// The residual linear form `l'` with `t2|_T = l * l'` in the chart of `td`.
fn residual_form<K: Field>(
    kf: &K,
    td: &TangentData<K>,
    line: &LineP3<K::Elem>,
) -> Result<Poly<K>, Error> {
    let q = td.restricted(2);
    if q.is_zero() {
        return Err(Error::Consistency(
            "every point of the line has all tangent lines principal".into(),
        ));
    }
    let lf = line_form_in_chart(kf, td, line);
    q.div_exact(&lf)
        .ok_or_else(|| Error::Consistency("t2 is not divisible by the form of the line".into()))
}

/// First or second kind: the line is of the second kind when at its generic
/// point the residual principal line has contact order at least 4.
pub fn classify_line<F: Field>(x: &Surface<F>, line: &LineP3<F::Elem>) -> Result<LineKind, Error> {
    x.require_char_gate()?;
    if !x.contains_line(line) {
        return Err(Error::LineNotOnSurface);
    }
    let (kf, _, td) = generic_tangent(x, line, false)?;
    let lk = lift_line(&kf, line);
    let rest = residual_form(&kf, &td, &lk)?;
    let coeffs: Vec<_> = (0..3)
        .map(|i| {
            let mut e = [0u16; 3];
            e[i] = 1;
            rest.coeff(&e)
        })
        .collect();
    let k = linalg::kernel(&kf, &[coeffs], 3);
    let cubic = td.restricted(3).restrict_to_line(&k[0], &k[1]);
    Ok(if cubic.iter().all(|c| kf.is_zero(c)) {
        LineKind::SecondKind
    } else {
        LineKind::FirstKind
    })
}

/// Parameter values where the residual principal line coincides with the
/// line itself. Affine values are the roots of `poly` in `P(s) = A + s B`;
/// `infinity` is the multiplicity at `P = B`.
#[derive(Clone, Debug, PartialEq)]
pub struct Ramification<E> {
    /// Monic, ascending coefficients.
    pub poly: Vec<E>,
    pub infinity: u32,
}

impl<E: Clone> Ramification<E> {
    /// Total number of ramification points counted with multiplicity, over
    /// the algebraic closure.
    pub fn total(&self) -> usize {
        self.poly.len().saturating_sub(1) + self.infinity as usize
    }

    /// Roots in a finite field, with multiplicities.
    pub fn roots_in<F: FiniteField<Elem = E>>(&self, f: &F) -> Vec<(E, usize)> {
        f.elements()
            .into_iter()
            .filter_map(|t| {
                upoly::root_multiplicity(f, &self.poly, &t)
                    .filter(|&m| m > 0)
                    .map(|m| (t, m))
            })
            .collect()
    }
}

/// Ramification polynomial in the parameter of `P(s) = A + s B` (or
/// `B + s A` when swapped). With `Q` the other spanning point, the residual
/// line equals the line at `P` iff the polar form of `t2` pairs `Q` to zero
/// with all of `T_P`; `T_P` is spanned by `g_j e_i - g_i e_j` for the
/// gradient `g`, so this is the gcd of `g_j b_i - g_i b_j` with
/// `b = grad t2 (Q)`. No chart is involved, so no spurious factors arise.
fn ramification_poly<F: Field>(
    x: &Surface<F>,
    line: &LineP3<F::Elem>,
    swap: bool,
) -> Result<Vec<F::Elem>, Error> {
    let f = x.field();
    let kf = FunctionField::new(f.clone(), "s")?;
    let xk = x.base_change(&kf, |c| kf.constant(c));
    let pc = generic_point(&kf, line, swap);
    let g: Vec<_> = xk.gradient().iter().map(|p| p.eval(&pc)).collect();
    if g.iter().all(|c| kf.is_zero(c)) {
        return Err(Error::SingularPoint);
    }
    let [_, t2, _] = tangentforms::t_forms_at(xk.poly(), &pc, xk.degree());
    let [a, b] = line.span();
    let q: Vec<_> = (if swap { a } else { b })
        .iter()
        .map(|c| kf.constant(c))
        .collect();
    let bq: Vec<_> = (0..4).map(|i| t2.partial_derivative(i).eval(&q)).collect();
    let mut acc: Option<Vec<F::Elem>> = None;
    for i in 0..4 {
        for j in (i + 1)..4 {
            let h = kf.sub(&kf.mul(&g[j], &bq[i]), &kf.mul(&g[i], &bq[j]));
            let num = kf
                .as_poly(&h)
                .ok_or_else(|| Error::Consistency("polar pairing is not polynomial in s".into()))?;
            if num.is_empty() {
                continue;
            }
            acc = Some(match acc {
                None => upoly::make_monic(f, num),
                Some(prev) => upoly::gcd(f, &prev, num),
            });
        }
    }
    acc.ok_or_else(|| {
        Error::Consistency("residual principal line equals the line at every point".into())
    })
}

/// Ramification points of the residual-line map along a line of the surface.
pub fn ramification_points<F: Field>(
    x: &Surface<F>,
    line: &LineP3<F::Elem>,
) -> Result<Ramification<F::Elem>, Error> {
    x.require_char_gate()?;
    if !x.contains_line(line) {
        return Err(Error::LineNotOnSurface);
    }
    let f = x.field();
    let poly = ramification_poly(x, line, false)?;
    let at_inf = ramification_poly(x, line, true)?;
    let infinity = upoly::root_multiplicity(f, &at_inf, &f.zero()).unwrap_or(0) as u32;
    Ok(Ramification { poly, infinity })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PrimeField;
    use crate::lineenum::{enumerate_lines, fermat_lines};

    fn x(f: &PrimeField, i: usize) -> Poly<PrimeField> {
        Poly::var(f, 4, i)
    }

    fn fermat(f: &PrimeField, d: u32) -> Surface<PrimeField> {
        let p = (0..4).fold(Poly::zero(f, 4), |acc, i| &acc + &x(f, i).pow(d));
        Surface::new(p).unwrap()
    }

    fn schur(f: &PrimeField) -> Surface<PrimeField> {
        let p = &(&(&x(f, 0).pow(4) - &(&x(f, 0) * &x(f, 1).pow(3))) - &x(f, 2).pow(4))
            + &(&x(f, 2) * &x(f, 3).pow(3));
        Surface::new(p).unwrap()
    }

    #[test]
    fn fermat_cubic_lines_have_multiplicity_one() {
        let f = PrimeField::new(13).unwrap();
        let s = fermat(&f, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let data = flecnodal_data(&s, &mut rng).unwrap();
        assert_eq!(data.r_degree(), 15);
        assert_eq!(data.class_degree(), 9);
        // every rational point of this Fermat cubic lies on one of its lines
        assert!(witness_r_nonvanishing(&data, &mut rng, 200).is_none());
        let mut total = 0;
        for l in fermat_lines(&f, 3).unwrap() {
            assert_eq!(classify_line(&s, &l).unwrap(), LineKind::FirstKind);
            total += line_multiplicity(&data, &l).unwrap();
        }
        assert_eq!(total, 27);
    }

    #[test]
    fn eliminant_nonzero_on_perturbed_cubic() {
        let f = PrimeField::new(13).unwrap();
        let p = fermat(&f, 3).poly() + &(&(&x(&f, 0) * &x(&f, 1)) * &x(&f, 2)).scale(&2);
        let s = Surface::new(p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let data = flecnodal_data(&s, &mut rng).unwrap();
        assert_eq!(data.r_degree(), 15);
        assert!(witness_r_nonvanishing(&data, &mut rng, 500).is_some());
    }

    #[test]
    fn schur_quartic_census() {
        let f = PrimeField::new(13).unwrap();
        let s = schur(&f);
        let c = enumerate_lines(&s);
        assert_eq!(c.len(), 64);
        let mut c = c;
        let data = flecnodal_data_seeded(&s, 2).unwrap();
        assert_eq!(data.r_degree(), 26);
        classify_census(&mut c, &data).unwrap();
        let (mut first, mut second, mut total) = (0, 0, 0);
        for rec in c.records() {
            let m = rec.flec_mult.unwrap();
            match rec.kind {
                LineKind::FirstKind => {
                    first += 1;
                    assert_eq!(m, 1);
                }
                LineKind::SecondKind => {
                    second += 1;
                    assert_eq!(m, 2);
                }
                LineKind::Unclassified => unreachable!(),
            }
            total += m;
        }
        assert_eq!((first, second, total), (48, 16, 80));
    }

    #[test]
    fn ramification_placed_at_zero() {
        // f = x2 g + x3 h with g|L = x1^2 and h|L = x0^2 along L = {x2 = x3 = 0}
        let f = PrimeField::new(11).unwrap();
        let g = &(&x(&f, 1).pow(2) + &x(&f, 2).pow(2)) + &(&x(&f, 0) * &x(&f, 3));
        let h = &(&x(&f, 0).pow(2) + &x(&f, 3).pow(2)) + &(&x(&f, 1) * &x(&f, 2));
        let s = Surface::new(&(&x(&f, 2) * &g) + &(&x(&f, 3) * &h)).unwrap();
        let l = LineP3::from_span(&f, &[1, 0, 0, 0], &[0, 1, 0, 0]).unwrap();
        let ram = ramification_points(&s, &l).unwrap();
        assert!(ram.roots_in(&f).iter().any(|(r, _)| *r == 0));
        assert!(ram.infinity >= 1);
    }

    #[test]
    fn ramification_matches_pointwise_residual_line() {
        let f = PrimeField::new(13).unwrap();
        let s = schur(&f);
        let c = enumerate_lines(&s);
        for rec in c.records().iter().take(8) {
            let l = &rec.line;
            let ram = ramification_points(&s, l).unwrap();
            assert!(ram.total() > 0);
            let roots: Vec<u64> = ram.roots_in(&f).into_iter().map(|(r, _)| r).collect();
            for t in 0..13u64 {
                let p = ProjPoint::new(&f, l.point_at(&f, &1, &t)).unwrap();
                let same = match crate::tangentforms::residual_principal_line(&s, &p, l) {
                    Ok(r) => r == *l,
                    Err(Error::WholePlanePoint) => true,
                    Err(e) => panic!("{e}"),
                };
                assert_eq!(same, roots.contains(&t), "line {l:?} at s = {t}");
            }
        }
    }
}

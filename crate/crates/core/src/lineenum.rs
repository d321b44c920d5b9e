//! Lines on a surface: exhaustive scan over a finite field, the Fermat
//! family, verification of supplied candidates, incidences and a
//! smoothness probe.

use rayon::prelude::*;

use crate::algebra::{upoly, Field, FiniteField, QuadExt};
use crate::error::Error;
use crate::projgeom::{line_partitions, lines_in_partition, lines_meet, LineP3};
use crate::tangentforms::Surface;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LineKind {
    FirstKind,
    SecondKind,
    Unclassified,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LineSource {
    Scan,
    Family,
    UserSupplied,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LineRecord<E> {
    pub line: LineP3<E>,
    pub kind: LineKind,
    pub flec_mult: Option<u32>,
    pub source: LineSource,
}

/// Lines on a surface, sorted by Plücker vector and free of duplicates, with
/// their incidence structure.
#[derive(Clone, Debug)]
pub struct Census<F: Field> {
    surface: Surface<F>,
    records: Vec<LineRecord<F::Elem>>,
    incidence: Vec<Vec<usize>>,
}

impl<F: Field> Census<F> {
    /// Sorts, deduplicates (first record wins) and computes incidences.
    /// Every record must lie on the surface.
    pub fn new(surface: Surface<F>, mut records: Vec<LineRecord<F::Elem>>) -> Result<Self, Error> {
        if records.iter().any(|r| !surface.contains_line(&r.line)) {
            return Err(Error::LineNotOnSurface);
        }
        records.sort_by(|a, b| a.line.plucker().cmp(b.line.plucker()));
        records.dedup_by(|b, a| a.line == b.line);
        let f = surface.field();
        let n = records.len();
        let incidence = (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| j != i && lines_meet(f, &records[i].line, &records[j].line))
                    .collect()
            })
            .collect();
        Ok(Census {
            surface,
            records,
            incidence,
        })
    }

    pub fn surface(&self) -> &Surface<F> {
        &self.surface
    }

    pub fn records(&self) -> &[LineRecord<F::Elem>] {
        &self.records
    }

    pub fn records_mut(&mut self) -> &mut [LineRecord<F::Elem>] {
        &mut self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Indices of the other census lines meeting line `i`.
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.incidence[i]
    }
}

/// For each census line, the number of other census lines meeting it.
pub fn incidence_graph<F: Field>(c: &Census<F>) -> Vec<usize> {
    (0..c.len()).map(|i| c.neighbors(i).len()).collect()
}

/// Containment test with cheap early exits: `f(a)` and `f(b)` are the two
/// extreme coefficients of `f(s a + t b)`.
fn line_on_surface<F: Field>(x: &Surface<F>, l: &LineP3<F::Elem>) -> bool {
    let f = x.field();
    let [a, b] = l.span();
    if !f.is_zero(&x.poly().eval(a)) || !f.is_zero(&x.poly().eval(b)) {
        return false;
    }
    x.contains_line(l)
}

/// Every line defined over the field that lies on the surface. The scan runs
/// in parallel over the echelon-shape partitions of the Grassmannian; the
/// result does not depend on the number of workers.
pub fn enumerate_lines<F: FiniteField>(x: &Surface<F>) -> Census<F> {
    let f = x.field();
    let parts = line_partitions(f.order());
    let found: Vec<LineP3<F::Elem>> = parts
        .into_par_iter()
        .flat_map_iter(|p| lines_in_partition(f, p).filter(|l| line_on_surface(x, l)))
        .collect();
    let records = found
        .into_iter()
        .map(|line| LineRecord {
            line,
            kind: LineKind::Unclassified,
            flec_mult: None,
            source: LineSource::Scan,
        })
        .collect();
    Census::new(x.clone(), records).expect("scan keeps only lines on the surface")
}

/// Smallest `k` with a primitive `n`-th root of unity in `F_{q^k}`.
pub fn root_of_unity_degree(q: u64, n: u64) -> u32 {
    let mut k = 1u32;
    let mut qk = q as u128 % n as u128;
    while qk != 1 % n as u128 {
        qk = qk * q as u128 % n as u128;
        k += 1;
        if k > 64 {
            break;
        }
    }
    k
}

/// The `3 d^2` lines `{x_a = alpha x_b, x_c = beta x_e}` with
/// `alpha^d = beta^d = -1` on `x0^d + x1^d + x2^d + x3^d`, given a primitive
/// `2d`-th root of unity `rho`.
pub fn fermat_lines_from_root<F: Field>(
    f: &F,
    d: u32,
    rho: &F::Elem,
) -> Result<Vec<LineP3<F::Elem>>, Error> {
    let minus_one = f.neg(&f.one());
    if f.pow(rho, d as u64) != minus_one {
        return Err(Error::Precondition("rho^d must equal -1".into()));
    }
    if (1..2 * d as u64).any(|k| f.is_one(&f.pow(rho, k))) {
        return Err(Error::Precondition(
            "rho must be a primitive 2d-th root of unity".into(),
        ));
    }
    let alphas: Vec<F::Elem> = (0..d as u64).map(|k| f.pow(rho, 2 * k + 1)).collect();
    let pairings = [((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))];
    let mut out = Vec::with_capacity(3 * (d * d) as usize);
    for ((a, b), (c, e)) in pairings {
        for alpha in &alphas {
            for beta in &alphas {
                let mut u = vec![f.zero(); 4];
                u[a] = alpha.clone();
                u[b] = f.one();
                let mut v = vec![f.zero(); 4];
                v[c] = beta.clone();
                v[e] = f.one();
                out.push(LineP3::from_span(f, &u, &v)?);
            }
        }
    }
    out.sort_by(|x, y| x.plucker().cmp(y.plucker()));
    Ok(out)
}

/// The Fermat family over a finite field, searching for a primitive `2d`-th
/// root of unity; fails naming the minimal extension degree when none exists.
pub fn fermat_lines<F: FiniteField>(f: &F, d: u32) -> Result<Vec<LineP3<F::Elem>>, Error> {
    let q = f.order();
    let n = 2 * d as u64;
    if !(q - 1).is_multiple_of(n) {
        let k = root_of_unity_degree(q, n);
        return Err(Error::FieldExtensionRequired {
            degree: k,
            what: format!("a primitive {n}-th root of unity needs F_(q^{k}) with q = {q}"),
        });
    }
    let rho = (1..q)
        .map(|i| f.element(i))
        .find(|r| (1..n).all(|k| !f.is_one(&f.pow(r, k))) && f.is_one(&f.pow(r, n)))
        .expect("cyclic multiplicative group has a primitive root of every order dividing q-1");
    fermat_lines_from_root(f, d, &rho)
}

/// A candidate rejected by `verify_census`, with its nonzero restriction.
#[derive(Clone, Debug, PartialEq)]
pub struct Rejection<E> {
    pub line: LineP3<E>,
    pub restriction: Vec<E>,
}

#[derive(Clone, Debug)]
pub struct VerifyReport<F: Field> {
    pub census: Census<F>,
    pub rejected: Vec<Rejection<F::Elem>>,
}

/// Keeps exactly the candidates on the surface.
pub fn verify_census<F: Field>(
    x: &Surface<F>,
    candidates: &[LineP3<F::Elem>],
    source: LineSource,
) -> VerifyReport<F> {
    let f = x.field();
    let mut kept = Vec::new();
    let mut rejected = Vec::new();
    for l in candidates {
        let r = x.restrict(&l.span()[0], &l.span()[1]);
        if r.iter().all(|c| f.is_zero(c)) {
            kept.push(LineRecord {
                line: l.clone(),
                kind: LineKind::Unclassified,
                flec_mult: None,
                source,
            });
        } else {
            rejected.push(Rejection {
                line: l.clone(),
                restriction: r,
            });
        }
    }
    VerifyReport {
        census: Census::new(x.clone(), kept).expect("only verified lines kept"),
        rejected,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SmoothProbe {
    /// No singular point over `F_{q^k}` for every `k <= ` the recorded bound.
    /// A bound of 0 carries no evidence.
    ProbedSmooth(u32),
    /// A singular point over `F_{q^k}`, coordinates formatted in that field.
    Singular { degree: u32, point: [String; 4] },
}

/// A singular point of the surface over `F`, if any. For each point of
/// `P^2` in the first three coordinates, the common roots in the last
/// coordinate are the roots in `F` of the gcd of `f` and its partials along
/// that fiber.
pub fn find_singular_point<F: FiniteField>(x: &Surface<F>) -> Option<[F::Elem; 4]> {
    let f = x.field();
    let polys: Vec<_> = std::iter::once(x.poly().clone())
        .chain(x.gradient())
        .collect();
    let q = f.order();
    let mut e3 = [f.zero(), f.zero(), f.zero(), f.zero()];
    e3[3] = f.one();
    if polys.iter().all(|p| f.is_zero(&p.eval(&e3))) {
        return Some(e3);
    }
    let prefixes = crate::tangentforms::all_points_p2(f);
    prefixes.into_par_iter().find_map_any(|a| {
        let base = [a[0].clone(), a[1].clone(), a[2].clone(), f.zero()];
        // g(t) = p(a + t e3); the binary form at s = 1 has index j for t^j
        let mut g: Vec<F::Elem> = Vec::new();
        for p in &polys {
            let c = upoly::trimmed(f, p.restrict_to_line(&base, &e3));
            g = if g.is_empty() {
                c
            } else {
                upoly::gcd(f, &g, &c)
            };
            if g.len() == 1 {
                return None;
            }
        }
        if g.is_empty() {
            // every polynomial vanishes on the whole fiber
            return Some(base);
        }
        let x_q = upoly::pow_mod(f, &[f.zero(), f.one()], q as u128, &g);
        let h = upoly::gcd(f, &g, &upoly::sub(f, &x_q, &[f.zero(), f.one()]));
        if h.len() <= 1 {
            return None;
        }
        (0..q)
            .map(|i| f.element(i))
            .find(|t| f.is_zero(&upoly::eval(f, &h, t)))
            .map(|t| {
                let mut p = base.clone();
                p[3] = t;
                p
            })
    })
}

/// Checks for singular points over `F_q` and, when `k_max >= 2`, over `F_{q^2}`.
/// Larger bounds are not supported.
pub fn smoothness_probe<F: FiniteField>(x: &Surface<F>, k_max: u32) -> Result<SmoothProbe, Error> {
    if k_max > 2 {
        return Err(Error::Unsupported(
            "smoothness probe supports extension degree at most 2".into(),
        ));
    }
    let f = x.field();
    if k_max >= 1 {
        if let Some(p) = find_singular_point(x) {
            return Ok(SmoothProbe::Singular {
                degree: 1,
                point: p.map(|c| f.format_elem(&c)),
            });
        }
    }
    if k_max >= 2 {
        let ext = QuadExt::of_finite(f.clone()).map_err(Error::Algebra)?;
        let xe = x.base_change(&ext, |c| ext.embed(c));
        if let Some(p) = find_singular_point(&xe) {
            return Ok(SmoothProbe::Singular {
                degree: 2,
                point: p.map(|c| ext.format_elem(&c)),
            });
        }
    }
    Ok(SmoothProbe::ProbedSmooth(k_max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Poly, PrimeField};

    fn fermat(f: &PrimeField, d: u32) -> Surface<PrimeField> {
        let p = (0..4).fold(Poly::zero(f, 4), |acc, i| &acc + &Poly::var(f, 4, i).pow(d));
        Surface::new(p).unwrap()
    }

    #[test]
    fn fermat_cubic_over_f7() {
        let f = PrimeField::new(7).unwrap();
        let x = fermat(&f, 3);
        let c = enumerate_lines(&x);
        assert_eq!(c.len(), 27);
        let fam = fermat_lines(&f, 3).unwrap();
        let scanned: Vec<_> = c.records().iter().map(|r| r.line.clone()).collect();
        assert_eq!(fam, scanned);
        assert!(incidence_graph(&c).iter().all(|&k| k == 10));
    }

    #[test]
    fn missing_root_of_unity() {
        let f = PrimeField::new(13).unwrap();
        assert!(matches!(
            fermat_lines(&f, 4),
            Err(Error::FieldExtensionRequired { degree: 2, .. })
        ));
    }

    #[test]
    fn duplicates_and_rejections() {
        let f = PrimeField::new(7).unwrap();
        let x = fermat(&f, 3);
        let fam = fermat_lines(&f, 3).unwrap();
        let random = LineP3::from_span(&f, &[1, 2, 3, 4], &[0, 1, 5, 6]).unwrap();
        let cands = vec![fam[0].clone(), fam[0].clone(), random.clone()];
        let rep = verify_census(&x, &cands, LineSource::UserSupplied);
        assert_eq!(rep.census.len(), 1);
        assert_eq!(rep.rejected.len(), 1);
        assert!(rep.rejected[0].restriction.iter().any(|c| *c != 0));
    }

    #[test]
    fn singular_fixture() {
        let f = PrimeField::new(7).unwrap();
        let v = |i| Poly::var(&f, 4, i);
        let p = &(&(&(&v(0) * &v(1)) * &v(2)) + &v(1).pow(3)) + &(&v(2).pow(3) + &v(3).pow(3));
        let x = Surface::new(p).unwrap();
        match smoothness_probe(&x, 1).unwrap() {
            SmoothProbe::Singular { degree: 1, point } => {
                assert_eq!(point, ["1", "0", "0", "0"].map(String::from));
            }
            other => panic!("expected singular point, got {other:?}"),
        }
        assert_eq!(
            smoothness_probe(&x, 0).unwrap(),
            SmoothProbe::ProbedSmooth(0)
        );
    }
}

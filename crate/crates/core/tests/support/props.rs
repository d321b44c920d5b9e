#![allow(dead_code)]

//! Property checks shared by the core `properties` suite and the CLI
//! acceptance harness. Each takes the runner so callers choose the seed.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestError, TestRng, TestRunner};

use surflines::algebra::{
    implicit_series_solve, sylvester_resultant_dense, upoly, ExtField, Field, FiniteField, Poly,
    PrimeField, Rationals, Series,
};
use surflines::lineenum::enumerate_lines;
use surflines::projgeom::{lines_meet, plucker_pairing, plucker_quadric, LineP3};
use surflines::tangentforms::{big_t_form, Surface};

pub const CASES: u32 = 64;

pub type Outcome = Result<(), String>;

fn config() -> Config {
    Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    }
}

pub fn random_runner() -> TestRunner {
    TestRunner::new(config())
}

pub fn fixed_runner() -> TestRunner {
    TestRunner::new_with_rng(config(), TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn report<T: std::fmt::Debug>(r: Result<(), TestError<T>>) -> Outcome {
    r.map_err(|e| e.to_string())
}

fn check_axioms<F: Field>(
    f: &F,
    a: &F::Elem,
    b: &F::Elem,
    c: &F::Elem,
) -> Result<(), TestCaseError> {
    prop_assert_eq!(f.add(a, b), f.add(b, a));
    prop_assert_eq!(f.mul(a, b), f.mul(b, a));
    prop_assert_eq!(f.add(&f.add(a, b), c), f.add(a, &f.add(b, c)));
    prop_assert_eq!(f.mul(&f.mul(a, b), c), f.mul(a, &f.mul(b, c)));
    prop_assert_eq!(f.mul(a, &f.add(b, c)), f.add(&f.mul(a, b), &f.mul(a, c)));
    prop_assert_eq!(f.add(a, &f.zero()), a.clone());
    prop_assert_eq!(f.mul(a, &f.one()), a.clone());
    prop_assert!(f.is_zero(&f.add(a, &f.neg(a))));
    prop_assert_eq!(f.sub(a, b), f.add(a, &f.neg(b)));
    match f.inv(a) {
        Some(ai) => prop_assert!(f.is_one(&f.mul(a, &ai))),
        None => prop_assert!(f.is_zero(a)),
    }
    Ok(())
}

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-50i64..50, 1i64..20).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

/// Polynomial with small random coefficients over F_p, as a term list.
fn poly_terms(nvars: usize, deg: u16) -> impl Strategy<Value = Vec<(Vec<u16>, u64)>> {
    prop::collection::vec((prop::collection::vec(0..=deg, nvars), 0u64..13), 1..8)
}

fn build(f: &PrimeField, nvars: usize, terms: &[(Vec<u16>, u64)]) -> Poly<PrimeField> {
    terms.iter().fold(Poly::zero(f, nvars), |acc, (e, c)| {
        &acc + &Poly::monomial(f, e.iter().copied().collect(), f.from_u64(*c))
    })
}

/// Homogeneous form of degree `d` in 4 variables, coefficients cycled from `coeffs`.
fn form(f: &PrimeField, d: u16, coeffs: &[u64]) -> Poly<PrimeField> {
    let mut p = Poly::zero(f, 4);
    let mut k = 0;
    for a in 0..=d {
        for b in 0..=d - a {
            for c in 0..=d - a - b {
                let e = [a, b, c, d - a - b - c];
                p = &p
                    + &Poly::monomial(
                        f,
                        e.iter().copied().collect(),
                        f.from_u64(coeffs[k % coeffs.len()]),
                    );
                k += 1;
            }
        }
    }
    p
}

pub fn field_axioms(runner: &mut TestRunner) -> Outcome {
    let fp = PrimeField::new(101).unwrap();
    report(runner.run(&(0u64..101, 0u64..101, 0u64..101), |(a, b, c)| {
        check_axioms(&fp, &a, &b, &c)
    }))?;
    let fe = ExtField::with_degree(5, 3).unwrap();
    report(runner.run(&(0u64..125, 0u64..125, 0u64..125), |(i, j, k)| {
        check_axioms(&fe, &fe.element(i), &fe.element(j), &fe.element(k))
    }))?;
    report(runner.run(
        &(small_rational(), small_rational(), small_rational()),
        |(a, b, c)| check_axioms(&Rationals, &a, &b, &c),
    ))
}

pub fn plucker_quadric_and_incidence(runner: &mut TestRunner) -> Outcome {
    let f = PrimeField::new(11).unwrap();
    let pt = || prop::array::uniform4(0u64..11);
    report(runner.run(&(pt(), pt(), pt(), pt()), |(a, b, c, d)| {
        let (Ok(l), Ok(m)) = (LineP3::from_span(&f, &a, &b), LineP3::from_span(&f, &c, &d)) else {
            return Ok(());
        };
        prop_assert_eq!(plucker_quadric(&f, l.plucker()), 0);
        prop_assert_eq!(LineP3::from_plucker(&f, l.plucker()).unwrap(), l.clone());
        prop_assert!(l.contains_point(&f, &a) && l.contains_point(&f, &b));
        prop_assert_eq!(
            lines_meet(&f, &l, &m),
            plucker_pairing(&f, l.plucker(), m.plucker()) == 0
        );
        Ok(())
    }))
}

pub fn euler_identity(runner: &mut TestRunner) -> Outcome {
    let f = PrimeField::new(13).unwrap();
    report(runner.run(
        &(prop::collection::vec(0u64..13, 1..20), 1u16..5),
        |(coeffs, d)| {
            let p = form(&f, d, &coeffs);
            let lhs = (0..4).fold(Poly::zero(&f, 4), |acc, i| {
                &acc + &(&Poly::var(&f, 4, i) * &p.partial_derivative(i))
            });
            prop_assert_eq!(lhs, p.scale(&f.from_u64(d as u64)));
            Ok(())
        },
    ))
}

/// t^(j)(w, w) = d!/(d-j)! f(w) for the contact forms of a quartic.
pub fn contact_forms_on_diagonal(runner: &mut TestRunner) -> Outcome {
    let f = PrimeField::new(13).unwrap();
    let strat = (
        prop::collection::vec(0u64..13, 3..20),
        prop::array::uniform4(0u64..13),
    );
    report(runner.run(&strat, |(coeffs, w)| {
        let Ok(x) = Surface::new(form(&f, 4, &coeffs)) else {
            return Ok(());
        };
        let fw = x.poly().eval(&w);
        let mut point = w.to_vec();
        point.extend_from_slice(&w);
        let mut falling = 1u64;
        for j in 1..=3usize {
            falling *= 4 - j as u64 + 1;
            let t = big_t_form(&x, j).unwrap();
            prop_assert_eq!(t.eval(&point), f.mul(&f.from_u64(falling), &fw));
        }
        Ok(())
    }))
}

/// Forms `sum a_j u^(m-j) v^j` share a zero at `v = 0` or at a common root
/// of their dehomogenizations exactly when the resultant vanishes.
pub fn resultant_vanishes_iff_common_zero(runner: &mut TestRunner) -> Outcome {
    let f = PrimeField::new(7).unwrap();
    let strat = (
        prop::collection::vec(0u64..7, 2..5),
        prop::collection::vec(0u64..7, 2..5),
    );
    report(runner.run(&strat, |(a, b)| {
        let Ok(r) = sylvester_resultant_dense(&f, &a, &b) else {
            return Ok(());
        };
        let asc = |v: &[u64]| upoly::trimmed(&f, v.iter().rev().cloned().collect());
        let (pa, pb) = (asc(&a), asc(&b));
        let at_infinity = a[0] == 0 && b[0] == 0;
        let both_zero = pa.is_empty() || pb.is_empty();
        let affine = !both_zero && upoly::degree(&upoly::gcd(&f, &pa, &pb)).unwrap_or(0) > 0;
        prop_assert_eq!(r == 0, at_infinity || both_zero || affine);
        Ok(())
    }))
}

/// `f = x2 g + x3 h` contains `{x2 = x3 = 0}`; the solved series must give
/// `f(1, s0, u, phi(s0, u)) = O(u^(n+1))`.
pub fn series_solution_is_exact(runner: &mut TestRunner) -> Outcome {
    let f = PrimeField::new(13).unwrap();
    let strat = (poly_terms(4, 2), poly_terms(4, 2), 1u64..13, 3usize..8);
    report(runner.run(&strat, |(g, h, s0, n)| {
        let fx = &(&Poly::var(&f, 4, 2) * &build(&f, 4, &g))
            + &(&Poly::var(&f, 4, 3) * &build(&f, 4, &h));
        let Ok(phi) = implicit_series_solve(&fx, n) else {
            return Ok(());
        };
        let kf = phi.field().clone();
        let Some(coeffs) = phi
            .coeffs()
            .iter()
            .map(|c| kf.eval(c, &s0))
            .collect::<Option<Vec<_>>>()
        else {
            return Ok(());
        };
        let phi0 = Series::from_coeffs(&f, "u", n, coeffs);
        let u = Series::variable(&f, "u", n);
        let mut total = Series::zero(&f, "u", n);
        for (e, c) in fx.terms() {
            let mut t = Series::constant(&f, "u", n, f.mul(c, &f.pow(&s0, e[1] as u64)));
            for _ in 0..e[2] {
                t = t.mul(&u);
            }
            for _ in 0..e[3] {
                t = t.mul(&phi0);
            }
            total = total.add(&t);
        }
        prop_assert!(total.coeffs().iter().all(|c| *c == 0));
        Ok(())
    }))
}

/// The Schur quartic over F_13 scanned with 1, 2, 4 and 8 threads.
pub fn scan_is_deterministic_under_parallelism() -> Outcome {
    let f = PrimeField::new(13).unwrap();
    let p = surflines::io::parse_poly("x0^4 - x0*x1^3 - x2^4 + x2*x3^3", &f)
        .map_err(|e| e.to_string())?;
    let x = Surface::new(p).map_err(|e| e.to_string())?;
    let run = |n| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .unwrap()
            .install(|| enumerate_lines(&x))
    };
    let one = run(1);
    for n in [2, 4, 8] {
        if run(n).records() != one.records() {
            return Err(format!("{n} threads gave a different census"));
        }
    }
    if one.len() != 64 {
        return Err(format!("expected 64 lines, found {}", one.len()));
    }
    Ok(())
}

pub type Suite = (&'static str, fn(&mut TestRunner) -> Outcome);

pub const SUITES: [Suite; 7] = [
    ("field axioms", field_axioms),
    (
        "plucker quadric and incidence",
        plucker_quadric_and_incidence,
    ),
    ("euler identity", euler_identity),
    ("contact forms on the diagonal", contact_forms_on_diagonal),
    (
        "resultant vs common zero",
        resultant_vanishes_iff_common_zero,
    ),
    ("series exactness", series_solution_is_exact),
    ("scan determinism", |_| {
        scan_is_deterministic_under_parallelism()
    }),
];

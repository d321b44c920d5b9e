use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use surflines::algebra::{Field, PrimeField, Rationals};
use surflines::flecnodal::{
    classify_line, flecnodal_data, flecnodal_data_seeded, line_multiplicity,
};
use surflines::io::{parse_poly, parse_surface};
use surflines::lineenum::{enumerate_lines, smoothness_probe, LineKind, SmoothProbe};
use surflines::projgeom::LineP3;
use surflines::tangentforms::Surface;

const SCHUR: &str = "x0^4 - x0*x1^3 - x2^4 + x2*x3^3";

/// A smooth quartic containing `{x2 = x3 = 0}`: `x2 g + x3 h` for random cubics.
fn quartic_with_line(f: &PrimeField, rng: &mut ChaCha8Rng) -> Surface<PrimeField> {
    let monos: Vec<String> = (0..4u32)
        .flat_map(|a| {
            (0..4 - a).flat_map(move |b| (0..4 - a - b).map(move |c| (a, b, c, 3 - a - b - c)))
        })
        .map(|(a, b, c, d)| format!("x0^{a}*x1^{b}*x2^{c}*x3^{d}"))
        .collect();
    loop {
        let mut cubic = || {
            monos
                .iter()
                .map(|m| format!("{}*{m}", rng.gen_range(0..f.modulus())))
                .collect::<Vec<_>>()
                .join(" + ")
        };
        let text = format!("x2*({}) + x3*({})", cubic(), cubic());
        let x = Surface::new(parse_poly(&text, f).unwrap()).unwrap();
        if matches!(smoothness_probe(&x, 1), Ok(SmoothProbe::ProbedSmooth(1))) {
            return x;
        }
    }
}

#[test]
fn multiplicity_does_not_depend_on_plane() {
    let f = PrimeField::new(13).unwrap();
    let x = parse_surface(SCHUR, &f).unwrap();
    let c = enumerate_lines(&x);
    let lines: Vec<_> = c
        .records()
        .iter()
        .map(|r| r.line.clone())
        .step_by(7)
        .collect();
    let datas: Vec<_> = (10..13)
        .map(|s| flecnodal_data_seeded(&x, s).unwrap())
        .collect();
    for l in &lines {
        let ms: Vec<u32> = datas
            .iter()
            .filter(|d| !d.plane().contains_line(&f, l))
            .map(|d| line_multiplicity(d, l).unwrap())
            .collect();
        assert!(ms.len() >= 2);
        assert!(ms.windows(2).all(|w| w[0] == w[1]), "{ms:?}");
    }
}

#[test]
fn random_quartics_through_a_line() {
    let f = PrimeField::new(11).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let l = LineP3::from_span(&f, &[1, 0, 0, 0], &[0, 1, 0, 0]).unwrap();
    for _ in 0..3 {
        let x = quartic_with_line(&f, &mut rng);
        let kind = classify_line(&x, &l).unwrap();
        let ms: Vec<u32> = (0..2)
            .map(|_| {
                let d = flecnodal_data(&x, &mut rng).unwrap();
                assert_eq!(d.r_degree(), 26);
                line_multiplicity(&d, &l).unwrap()
            })
            .collect();
        assert_eq!(ms[0], ms[1]);
        assert!(ms[0] >= 1);
        if kind == LineKind::SecondKind {
            assert!(ms[0] >= 2);
        }
    }
}

#[test]
fn fermat_cubic_over_rationals() {
    let q = Rationals;
    let x = parse_surface("x0^3 + x1^3 + x2^3 + x3^3", &q).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let d = flecnodal_data(&x, &mut rng).unwrap();
    assert_eq!(d.r_degree(), 15);
    let one = q.one();
    let m1 = q.neg(&one);
    let l = LineP3::from_span(
        &q,
        &[one.clone(), m1.clone(), q.zero(), q.zero()],
        &[q.zero(), q.zero(), one, m1],
    )
    .unwrap();
    assert_eq!(classify_line(&x, &l).unwrap(), LineKind::FirstKind);
    assert_eq!(line_multiplicity(&d, &l).unwrap(), 1);
}

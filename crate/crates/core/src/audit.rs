//! Line-count bounds and the audit of a classified census: the residual
//! divisor `Z = F - (sum of lines)`, intersection numbers with lines,
//! reduced lines, k-spanned planes and the inequalities bounding `deg Z`.
//!
//! Every verdict is a consistency check on concrete data.

use std::collections::BTreeMap;

use num_rational::Ratio;
use serde::Serialize;

use crate::algebra::Field;
use crate::error::Error;
use crate::lineenum::{Census, LineKind};
use crate::projgeom::plane_of_lines;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub d: u64,
    /// `d(11d - 24)`
    pub clebsch: u64,
    /// `(d - 2)(11d - 6)`
    pub segre: u64,
    /// `11d^2 - 30d + 18`
    pub new_bound: u64,
    pub observed: Option<u64>,
}

pub fn bounds(d: u64) -> Result<BoundsReport, Error> {
    if d < 3 {
        return Err(Error::Precondition(format!(
            "degree must be at least 3, got {d}"
        )));
    }
    let over = || Error::Precondition(format!("degree {d} overflows the bound arithmetic"));
    let m = |a: u64, b: u64| a.checked_mul(b).ok_or_else(over);
    let clebsch = m(d, 11 * d - 24)?;
    let segre = m(d - 2, 11 * d - 6)?;
    let new_bound = m(m(11, d)?, d)?.checked_sub(30 * d).ok_or_else(over)? + 18;
    Ok(BoundsReport {
        d,
        clebsch,
        segre,
        new_bound,
        observed: None,
    })
}

/// Intersection numbers of a census line with the divisors of the audit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionRecord {
    /// `F.L = 11d - 24`
    pub f_dot_l: i64,
    /// `L^2 = -(d - 2)`
    pub self_int: i64,
    /// `(F - L).L = 12d - 26`
    pub flec_minus_l_dot_l: i64,
    /// Number of other census lines meeting `L`.
    pub meets: usize,
    /// `Z.L = (11d - 24) + (d - 2) - meets`
    pub z_dot_l: i64,
}

fn require_classified<F: Field>(census: &Census<F>) -> Result<(), Error> {
    let missing: Vec<usize> = census
        .records()
        .iter()
        .enumerate()
        .filter(|(_, r)| r.flec_mult.is_none() || r.kind == LineKind::Unclassified)
        .map(|(i, _)| i)
        .collect();
    if missing.is_empty() {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "census lines without kind or multiplicity: {missing:?}"
        )))
    }
}

pub fn intersection_numbers<F: Field>(
    census: &Census<F>,
    index: usize,
) -> Result<IntersectionRecord, Error> {
    let rec = census
        .records()
        .get(index)
        .ok_or_else(|| Error::Precondition(format!("no census line {index}")))?;
    if rec.flec_mult.is_none() {
        return Err(Error::Precondition(format!(
            "census line {index} has no multiplicity"
        )));
    }
    let d = census.surface().degree() as i64;
    let meets = census.neighbors(index).len();
    Ok(IntersectionRecord {
        f_dot_l: 11 * d - 24,
        self_int: -(d - 2),
        flec_minus_l_dot_l: 12 * d - 26,
        meets,
        z_dot_l: (11 * d - 24) + (d - 2) - meets as i64,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineAudit {
    pub index: usize,
    pub kind: String,
    pub flec_mult: u32,
    pub reduced: bool,
    pub meets_reduced: usize,
    pub meets_nonreduced: usize,
    pub numbers: IntersectionRecord,
}

/// A plane containing at least two reduced census lines.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpannedPlane {
    pub plane: Vec<String>,
    /// Number of reduced lines in the plane.
    pub k: usize,
    pub reduced_lines: Vec<usize>,
    /// `deg (Z)_Pi`, known when the flecnodal divisor is supported on
    /// census lines.
    pub deg_z_pi: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub id: String,
    pub statement: String,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

impl Verdict {
    fn ge(id: &str, statement: String, lhs: i64, rhs: i64) -> Self {
        Verdict {
            id: id.into(),
            statement,
            lhs,
            rhs,
            holds: lhs >= rhs,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub d: i64,
    pub deg_f: i64,
    pub ell: i64,
    pub deg_z: i64,
    pub ell1: i64,
    pub ell2: i64,
    /// Sum of the measured multiplicities.
    pub mult_sum: i64,
    /// The flecnodal divisor is exactly the weighted sum of census lines.
    pub supported_on_lines: bool,
    pub lines: Vec<LineAudit>,
    pub planes: Vec<SpannedPlane>,
    pub verdicts: Vec<Verdict>,
}

impl AuditReport {
    pub fn all_hold(&self) -> bool {
        self.verdicts.iter().all(|v| v.holds)
    }
}

/// Audits a census whose lines all carry a kind and a multiplicity.
pub fn audit_census<F: Field>(census: &Census<F>) -> Result<AuditReport, Error> {
    require_classified(census)?;
    let f = census.surface().field();
    let d = census.surface().degree() as i64;
    let recs = census.records();
    let deg_f = d * (11 * d - 24);
    let ell = recs.len() as i64;
    let deg_z = deg_f - ell;
    let mult = |i: usize| recs[i].flec_mult.expect("checked") as i64;
    let reduced: Vec<bool> = (0..recs.len()).map(|i| mult(i) == 1).collect();
    let ell1 = reduced.iter().filter(|&&r| r).count() as i64;
    let ell2 = ell - ell1;
    let mult_sum: i64 = (0..recs.len()).map(mult).sum();
    let supported_on_lines = mult_sum == deg_f;

    let lines = (0..recs.len())
        .map(|i| {
            let nb = census.neighbors(i);
            let meets_reduced = nb.iter().filter(|&&j| reduced[j]).count();
            Ok(LineAudit {
                index: i,
                kind: crate::io::kind_name(recs[i].kind).into(),
                flec_mult: mult(i) as u32,
                reduced: reduced[i],
                meets_reduced,
                meets_nonreduced: nb.len() - meets_reduced,
                numbers: intersection_numbers(census, i)?,
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;

    // planes spanned by pairs of meeting reduced lines
    let mut planes: BTreeMap<Vec<F::Elem>, Vec<usize>> = BTreeMap::new();
    for i in 0..recs.len() {
        for &j in census.neighbors(i) {
            if j <= i || !reduced[i] || !reduced[j] {
                continue;
            }
            let pl = plane_of_lines(f, &recs[i].line, &recs[j].line)?;
            planes.entry(pl.form().to_vec()).or_insert_with(|| {
                (0..recs.len())
                    .filter(|&k| reduced[k] && pl.contains_line(f, &recs[k].line))
                    .collect()
            });
        }
    }
    let planes: Vec<SpannedPlane> = planes
        .into_iter()
        .map(|(form, members)| {
            let deg_z_pi = supported_on_lines.then(|| {
                let pl =
                    crate::projgeom::PlaneP3::new(f, form.clone().try_into().expect("4 entries"))
                        .expect("nonzero form");
                (0..recs.len())
                    .filter(|&k| pl.contains_line(f, &recs[k].line))
                    .map(|k| mult(k) - 1)
                    .sum()
            });
            SpannedPlane {
                plane: form.iter().map(|c| f.format_elem(c)).collect(),
                k: members.len(),
                reduced_lines: members,
                deg_z_pi,
            }
        })
        .collect();

    let first: Vec<&LineAudit> = lines
        .iter()
        .filter(|l| recs[l.index].kind == LineKind::FirstKind)
        .collect();
    let max_meets = first
        .iter()
        .map(|l| l.numbers.meets as i64)
        .max()
        .unwrap_or(0);
    let min_zl = first
        .iter()
        .map(|l| l.numbers.z_dot_l)
        .min()
        .unwrap_or(4 * (d - 3));
    let nb = bounds(d as u64)?.new_bound as i64;
    let verdicts = vec![
        Verdict::ge(
            "residual_degree",
            format!("deg Z = {deg_z} >= 6(d-3) = {}", 6 * (d - 3)),
            deg_z,
            6 * (d - 3),
        ),
        Verdict::ge(
            "first_kind_meets",
            format!(
                "8d-14 = {} >= max other lines met by a first-kind line = {max_meets}",
                8 * d - 14
            ),
            8 * d - 14,
            max_meets,
        ),
        Verdict::ge(
            "deg_z_vs_ell2",
            format!("deg Z = {deg_z} >= ell2 = {ell2}"),
            deg_z,
            ell2,
        ),
        Verdict::ge(
            "line_count",
            format!("new bound {nb} >= ell = {ell}"),
            nb,
            ell,
        ),
        Verdict::ge(
            "first_kind_z_dot_l",
            format!(
                "min Z.L over first-kind lines = {min_zl} >= 4(d-3) = {}",
                4 * (d - 3)
            ),
            min_zl,
            4 * (d - 3),
        ),
        Verdict::ge(
            "mult_sum",
            format!("deg F = {deg_f} >= sum of line multiplicities = {mult_sum}"),
            deg_f,
            mult_sum,
        ),
    ];
    Ok(AuditReport {
        d,
        deg_f,
        ell,
        deg_z,
        ell1,
        ell2,
        mult_sum,
        supported_on_lines,
        lines,
        planes,
        verdicts,
    })
}

/// Quantities consumed by the inequalities of the bound's proof; any of
/// them may be missing.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct InequalityInput {
    pub d: i64,
    pub deg_z: Option<i64>,
    pub ell2: Option<i64>,
    /// Number of coplanar reduced lines.
    pub k: Option<i64>,
    pub h: Option<i64>,
    pub deg_z_pi: Option<i64>,
    /// `Z.(L_1 + ... + L_k)`
    pub z_dot_lines: Option<i64>,
    /// Reduced lines meeting a reduced line.
    pub q: Option<i64>,
    pub q1: Option<i64>,
    pub q2: Option<i64>,
    /// 2-spanned and 3-spanned planes through one reduced line.
    pub two_spanned: Option<i64>,
    pub three_spanned: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Holds,
    Fails,
    /// The hypothesis of an implication is false.
    Vacuous,
    NotEvaluable(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InequalityVerdict {
    pub id: String,
    pub statement: String,
    /// The right-hand side, as `num/den`.
    pub bound: Option<String>,
    pub status: Status,
}

fn need(items: &[(&str, Option<i64>)]) -> Result<Vec<i64>, Status> {
    let missing: Vec<&str> = items
        .iter()
        .filter(|(_, v)| v.is_none())
        .map(|(n, _)| *n)
        .collect();
    if missing.is_empty() {
        Ok(items.iter().map(|(_, v)| v.expect("checked")).collect())
    } else {
        Err(Status::NotEvaluable(format!(
            "missing {}",
            missing.join(", ")
        )))
    }
}

fn verdict(
    id: &str,
    statement: &str,
    r: Result<(Ratio<i64>, Status), Status>,
) -> InequalityVerdict {
    let (bound, status) = match r {
        Ok((b, s)) => (Some(b.to_string()), s),
        Err(s) => (None, s),
    };
    InequalityVerdict {
        id: id.into(),
        statement: statement.into(),
        bound,
        status,
    }
}

fn ge(lhs: i64, rhs: Ratio<i64>) -> (Ratio<i64>, Status) {
    let s = if Ratio::from_integer(lhs) >= rhs {
        Status::Holds
    } else {
        Status::Fails
    };
    (rhs, s)
}

/// Evaluates each inequality on the supplied quantities; items whose inputs
/// are missing are reported as not evaluable.
pub fn bound_inequalities(inp: &InequalityInput) -> Vec<InequalityVerdict> {
    let d = inp.d;
    let r = Ratio::from_integer;
    let mut out = Vec::new();
    out.push(verdict(
        "residual_degree",
        "deg Z >= 6(d-3)",
        need(&[("deg_z", inp.deg_z)]).map(|v| ge(v[0], r(6 * (d - 3)))),
    ));
    out.push(verdict(
        "deg_z_vs_ell2",
        "deg Z >= ell2",
        need(&[("deg_z", inp.deg_z), ("ell2", inp.ell2)]).map(|v| ge(v[0], r(v[1]))),
    ));
    out.push(verdict(
        "coplanar_lines",
        "deg Z >= Z.(L1+...+Lk) - (k-1) deg Z_Pi",
        need(&[
            ("deg_z", inp.deg_z),
            ("z_dot_lines", inp.z_dot_lines),
            ("k", inp.k),
            ("deg_z_pi", inp.deg_z_pi),
        ])
        .map(|v| ge(v[0], r(v[1] - (v[2] - 1) * v[3]))),
    ));
    out.push(verdict(
        "coplanar_reduced_lines",
        "deg Z >= 4k(d-3) - (k-1) deg Z_Pi",
        need(&[
            ("deg_z", inp.deg_z),
            ("k", inp.k),
            ("deg_z_pi", inp.deg_z_pi),
        ])
        .map(|v| ge(v[0], r(4 * v[1] * (d - 3) - (v[1] - 1) * v[2]))),
    ));
    out.push(verdict(
        "spanned_plane_implication",
        "if 2 <= k <= d, h <= 4k and deg Z_Pi <= (4k-h)(d-3)/(k-1) then deg Z >= h(d-3)",
        need(&[
            ("deg_z", inp.deg_z),
            ("k", inp.k),
            ("h", inp.h),
            ("deg_z_pi", inp.deg_z_pi),
        ])
        .and_then(|v| {
            let (dz, k, h, dzp) = (v[0], v[1], v[2], v[3]);
            if !(2 <= k && k <= d && h <= 4 * k) {
                return Err(Status::NotEvaluable(
                    "requires 2 <= k <= d and h <= 4k".into(),
                ));
            }
            let hyp = r(dzp) <= Ratio::new((4 * k - h) * (d - 3), k - 1);
            let (b, s) = ge(dz, r(h * (d - 3)));
            Ok((b, if hyp { s } else { Status::Vacuous }))
        }),
    ));
    out.push(verdict(
        "three_planes",
        "three 2-spanned or two 3-spanned planes through a reduced line imply deg Z >= 6(d-3)",
        need(&[
            ("deg_z", inp.deg_z),
            ("two_spanned", inp.two_spanned),
            ("three_spanned", inp.three_spanned),
        ])
        .map(|v| {
            let (b, s) = ge(v[0], r(6 * (d - 3)));
            (
                b,
                if v[1] >= 3 || v[2] >= 2 {
                    s
                } else {
                    Status::Vacuous
                },
            )
        }),
    ));
    out.push(verdict(
        "one_reduced_line",
        "deg Z >= (6d-13) - q/2",
        need(&[("deg_z", inp.deg_z), ("q", inp.q)])
            .map(|v| ge(v[0], r(6 * d - 13) - Ratio::new(v[1], 2))),
    ));
    out.push(verdict(
        "one_line",
        "deg Z >= (12d-26) - (q1+q2)",
        need(&[("deg_z", inp.deg_z), ("q1", inp.q1), ("q2", inp.q2)])
            .map(|v| ge(v[0], r(12 * d - 26 - v[1] - v[2]))),
    ));
    out
}

/// Inputs read off an audited census for one reduced line and the spanned
/// plane through it containing the most reduced lines.
pub fn inequality_input_for_line(report: &AuditReport, index: usize) -> InequalityInput {
    let mut inp = InequalityInput {
        d: report.d,
        deg_z: Some(report.deg_z),
        ell2: Some(report.ell2),
        ..Default::default()
    };
    let Some(line) = report.lines.get(index) else {
        return inp;
    };
    if !line.reduced {
        return inp;
    }
    inp.q = Some(line.meets_reduced as i64);
    inp.q1 = Some(line.meets_reduced as i64);
    inp.q2 = Some(line.meets_nonreduced as i64);
    let through: Vec<&SpannedPlane> = report
        .planes
        .iter()
        .filter(|p| p.reduced_lines.contains(&index))
        .collect();
    inp.two_spanned = Some(through.len() as i64);
    inp.three_spanned = Some(through.iter().filter(|p| p.k >= 3).count() as i64);
    if let Some(best) = through.iter().max_by_key(|p| p.k) {
        inp.k = Some(best.k as i64);
        inp.deg_z_pi = best.deg_z_pi;
        inp.z_dot_lines = Some(
            best.reduced_lines
                .iter()
                .map(|&i| report.lines[i].numbers.z_dot_l)
                .sum(),
        );
    }
    inp
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_values() {
        let b = bounds(4).unwrap();
        assert_eq!((b.clebsch, b.segre, b.new_bound), (80, 76, 74));
        assert_eq!(bounds(3).unwrap().new_bound, 27);
        assert_eq!(bounds(6).unwrap().new_bound, 234);
        assert!(bounds(2).is_err());
    }

    #[test]
    fn bound_identities() {
        for d in 3..200u64 {
            let b = bounds(d).unwrap();
            assert_eq!(b.new_bound, b.clebsch - 6 * (d - 3));
            if d >= 6 {
                assert!(b.new_bound < b.segre && b.segre < b.clebsch);
            }
            let n = bounds(d + 1).unwrap();
            assert!(n.clebsch > b.clebsch && n.segre > b.segre && n.new_bound > b.new_bound);
        }
    }

    #[test]
    fn inequality_examples() {
        let base = InequalityInput {
            d: 4,
            deg_z: Some(16),
            ..Default::default()
        };
        let find =
            |v: &[InequalityVerdict], id: &str| v.iter().find(|x| x.id == id).unwrap().clone();
        let v = bound_inequalities(&InequalityInput {
            q: Some(10),
            ..base.clone()
        });
        let one = find(&v, "one_reduced_line");
        assert_eq!(
            (one.bound.as_deref(), &one.status),
            (Some("6"), &Status::Holds)
        );
        assert!(matches!(
            find(&v, "one_line").status,
            Status::NotEvaluable(_)
        ));
        let v = bound_inequalities(&InequalityInput {
            q1: Some(18),
            q2: Some(0),
            ..base.clone()
        });
        assert_eq!(find(&v, "one_line").bound.as_deref(), Some("4"));
        assert_eq!(find(&v, "one_line").status, Status::Holds);
        let v = bound_inequalities(&InequalityInput {
            k: Some(2),
            deg_z_pi: Some(0),
            ..base.clone()
        });
        let c = find(&v, "coplanar_reduced_lines");
        assert_eq!((c.bound.as_deref(), c.status), (Some("8"), Status::Holds));
        let v = bound_inequalities(&InequalityInput {
            deg_z: Some(5),
            ..base
        });
        assert_eq!(find(&v, "residual_degree").status, Status::Fails);
    }
}

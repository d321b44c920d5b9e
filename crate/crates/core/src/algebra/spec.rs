//! Field descriptions and their string grammar.
//!
//! ```text
//! Q                     rationals
//! F<p>                  prime field, e.g. F13
//! F<p>^<k>/<modulus>    extension by a monic irreducible in `a`, e.g. F3^2/a^2+1
//! F<p>^<k>              extension with the first irreducible modulus
//! <base>(sqrt(<D>))     quadratic extension by a non-square D, e.g. Q(sqrt(-3))
//! ```

use std::fmt;
use std::str::FromStr;

use super::field::{Field, PrimeField};
use super::upoly;
use super::AlgebraError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
    Ext {
        p: u64,
        k: usize,
        modulus: Vec<u64>,
    },
    /// `base(sqrt(radicand))`, radicand written in the base field's element syntax.
    Quadratic {
        base: Box<FieldSpec>,
        radicand: String,
    },
    /// Rational functions in one variable over `base`.
    Function {
        base: Box<FieldSpec>,
        var: String,
    },
}

impl FieldSpec {
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) | FieldSpec::Ext { p, .. } => *p,
            FieldSpec::Quadratic { base, .. } | FieldSpec::Function { base, .. } => {
                base.characteristic()
            }
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            FieldSpec::Rationals | FieldSpec::Function { .. } => false,
            FieldSpec::Prime(_) | FieldSpec::Ext { .. } => true,
            FieldSpec::Quadratic { base, .. } => base.is_finite(),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F{p}"),
            FieldSpec::Ext { p, k, modulus } => {
                let base = PrimeField::new(*p).map_err(|_| fmt::Error)?;
                write!(f, "F{p}^{k}/{}", format_upoly(&base, modulus, "a"))
            }
            FieldSpec::Quadratic { base, radicand } => write!(f, "{base}(sqrt({radicand}))"),
            FieldSpec::Function { base, var } => write!(f, "{base}({var})"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || AlgebraError::Parse(format!("unrecognized field spec {s:?}"));
        if let Some(inner) = s.strip_suffix("))") {
            let (base, rad) = inner.split_once("(sqrt(").ok_or_else(bad)?;
            let base: FieldSpec = base.parse()?;
            return Ok(FieldSpec::Quadratic {
                base: Box::new(base),
                radicand: rad.to_string(),
            });
        }
        if s == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        let rest = s.strip_prefix('F').ok_or_else(bad)?;
        let (p_str, ext) = match rest.split_once('^') {
            None => (rest, None),
            Some((p, e)) => (p, Some(e)),
        };
        let p: u64 = p_str.parse().map_err(|_| bad())?;
        let base = PrimeField::new(p)?;
        match ext {
            None => Ok(FieldSpec::Prime(p)),
            Some(e) => {
                let (k_str, modulus) = match e.split_once('/') {
                    None => (e, None),
                    Some((k, m)) => (k, Some(m)),
                };
                let k: usize = k_str.parse().map_err(|_| bad())?;
                let modulus = match modulus {
                    Some(m) => {
                        let m = parse_upoly(&base, m, "a")?;
                        if upoly::degree(&m) != Some(k) {
                            return Err(AlgebraError::Parse(format!(
                                "modulus degree does not match extension degree {k}"
                            )));
                        }
                        m
                    }
                    None => super::ext::ExtField::with_degree(p, k)?.modulus().to_vec(),
                };
                Ok(FieldSpec::Ext { p, k, modulus })
            }
        }
    }
}

/// Renders ascending coefficients as `c*a^k+...+c0` (descending, zero terms omitted).
pub fn format_upoly(base: &PrimeField, coeffs: &[u64], var: &str) -> String {
    let mut parts = Vec::new();
    for (i, c) in coeffs.iter().enumerate().rev() {
        if base.is_zero(c) {
            continue;
        }
        let term = match (i, *c) {
            (0, c) => c.to_string(),
            (1, 1) => var.to_string(),
            (1, c) => format!("{c}*{var}"),
            (i, 1) => format!("{var}^{i}"),
            (i, c) => format!("{c}*{var}^{i}"),
        };
        parts.push(term);
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join("+")
    }
}

/// Parses a univariate polynomial in `var` with integer coefficients,
/// reducing them into `F_p`. Returns ascending coefficients.
pub fn parse_upoly(base: &PrimeField, s: &str, var: &str) -> Result<Vec<u64>, AlgebraError> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = |why: &str| AlgebraError::Parse(format!("bad polynomial {s:?}: {why}"));
    if s.is_empty() {
        return Err(bad("empty"));
    }
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for (i, ch) in s.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 {
            terms.push((neg, std::mem::take(&mut cur)));
            neg = ch == '-';
        } else if ch == '-' && i == 0 {
            neg = true;
        } else if ch == '+' && i == 0 {
        } else {
            cur.push(ch);
        }
    }
    terms.push((neg, cur));
    let mut out: Vec<u64> = Vec::new();
    for (neg, t) in terms {
        if t.is_empty() {
            return Err(bad("empty term"));
        }
        let (coef, power) = match t.find(var) {
            None => (t.as_str(), 0usize),
            Some(pos) => {
                let coef = t[..pos].trim_end_matches('*');
                let after = &t[pos + var.len()..];
                let power = if after.is_empty() {
                    1
                } else {
                    after
                        .strip_prefix('^')
                        .ok_or_else(|| bad("expected ^"))?
                        .parse::<usize>()
                        .map_err(|_| bad("bad exponent"))?
                };
                (if coef.is_empty() { "1" } else { coef }, power)
            }
        };
        let c: i64 = coef.parse().map_err(|_| bad("bad coefficient"))?;
        let c = base.from_i64(if neg { -c } else { c });
        if out.len() <= power {
            out.resize(power + 1, 0);
        }
        out[power] = base.add(&out[power], &c);
    }
    Ok(upoly::trimmed(base, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_round_trip() {
        for s in ["Q", "F13", "F3^2/a^2+1", "Q(sqrt(-3))", "F7(sqrt(3))"] {
            let spec: FieldSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        let auto: FieldSpec = "F3^2".parse().unwrap();
        assert!(matches!(auto, FieldSpec::Ext { p: 3, k: 2, .. }));
        assert!("F15".parse::<FieldSpec>().is_err());
        assert!("F3^3/a^2+1".parse::<FieldSpec>().is_err());
        assert!("G7".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn upoly_grammar() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(parse_upoly(&f, "a^2 - 2", "a").unwrap(), vec![3, 0, 1]);
        assert_eq!(parse_upoly(&f, "-a+4*a^3", "a").unwrap(), vec![0, 4, 0, 4]);
        assert_eq!(format_upoly(&f, &[3, 0, 1], "a"), "a^2+3");
    }
}

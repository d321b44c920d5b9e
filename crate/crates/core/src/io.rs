//! Text formats: the surface grammar and the census JSON file.
//!
//! Surface grammar (whitespace-insensitive, `#` starts a comment):
//!
//! ```text
//! equation := expr [ '=' expr ]          // lhs = rhs means lhs - rhs
//! expr     := [ '+' | '-' ] term { ( '+' | '-' ) term }
//! term     := factor { '*' factor }
//! factor   := atom [ '^' integer ]
//! atom     := integer [ '/' integer ] | 'x0' .. 'x3' | element | '(' expr ')'
//! ```
//!
//! `element` is any other identifier the field can parse, e.g. the
//! generator `a` of an extension field.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::{AlgebraError, Field, Poly};
use crate::error::Error;
use crate::flecnodal::FlecnodalData;
use crate::lineenum::{Census, LineKind, LineRecord, LineSource};
use crate::projgeom::LineP3;
use crate::tangentforms::Surface;

pub const CENSUS_FORMAT: &str = "surflines-census";
pub const CENSUS_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FormatError {
    #[error("{line}:{col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("invalid surface: {0}")]
    Surface(#[from] Error),
    #[error("malformed census file: {0}")]
    Json(String),
    #[error("unsupported census format {format:?} version {version}")]
    Version { format: String, version: u32 },
    #[error("census hash mismatch: file says {stored}, content hashes to {computed}")]
    Hash { stored: String, computed: String },
    #[error("census was computed over {found}, expected {expected}")]
    FieldMismatch { expected: String, found: String },
    #[error("census belongs to surface {found}, expected {expected}")]
    SurfaceMismatch { expected: String, found: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Sym(char),
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

fn lex(text: &str) -> Result<Lexer, FormatError> {
    let mut toks = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                toks.push((Tok::Num(chars[start..i].iter().collect()), ln + 1, col));
            } else if c.is_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                toks.push((Tok::Ident(chars[start..i].iter().collect()), ln + 1, col));
            } else if "+-*/^()=".contains(c) {
                toks.push((Tok::Sym(c), ln + 1, col));
                i += 1;
            } else {
                return Err(FormatError::Parse {
                    line: ln + 1,
                    col,
                    msg: format!("unexpected character {c:?}"),
                });
            }
        }
    }
    let (l, c) = text
        .lines()
        .enumerate()
        .last()
        .map(|(i, s)| (i + 1, s.chars().count() + 1))
        .unwrap_or((1, 1));
    toks.push((Tok::End, l, c));
    Ok(Lexer { toks, pos: 0 })
}

struct Parser<'a, F: Field> {
    f: &'a F,
    lx: Lexer,
}

impl<F: Field> Parser<'_, F> {
    fn peek(&self) -> &Tok {
        &self.lx.toks[self.lx.pos].0
    }

    fn next(&mut self) -> Tok {
        let t = self.lx.toks[self.lx.pos].0.clone();
        if t != Tok::End {
            self.lx.pos += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, FormatError> {
        let (_, line, col) = self.lx.toks[self.lx.pos];
        Err(FormatError::Parse {
            line,
            col,
            msg: msg.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.next();
            true
        } else {
            false
        }
    }

    fn equation(&mut self) -> Result<Poly<F>, FormatError> {
        let lhs = self.expr()?;
        let p = if self.eat('=') {
            &lhs - &self.expr()?
        } else {
            lhs
        };
        match self.peek() {
            Tok::End => Ok(p),
            t => {
                let t = format!("{t:?}");
                self.err(format!("unexpected token {t}"))
            }
        }
    }

    fn expr(&mut self) -> Result<Poly<F>, FormatError> {
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut acc = self.term()?;
        if neg {
            acc = acc.neg();
        }
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly<F>, FormatError> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly<F>, FormatError> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.next() {
                Tok::Num(n) => match n.parse::<u32>() {
                    Ok(e) if e <= u16::MAX as u32 => Ok(base.pow(e)),
                    _ => self.err(format!("exponent {n} is too large")),
                },
                _ => self.err("expected an integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly<F>, FormatError> {
        let f = self.f;
        let at = self.lx.pos;
        match self.next() {
            Tok::Num(n) => {
                let num: BigInt = n.parse().expect("digits");
                let den: BigInt = if self.eat('/') {
                    match self.next() {
                        Tok::Num(d) => d.parse().expect("digits"),
                        _ => return self.err("expected a denominator"),
                    }
                } else {
                    BigInt::from(1)
                };
                if den == BigInt::from(0) {
                    self.lx.pos = at;
                    return self.err("zero denominator");
                }
                match f.from_rational(&BigRational::new(num, den)) {
                    Ok(c) => Ok(Poly::constant(f, 4, c)),
                    Err(e) => {
                        self.lx.pos = at;
                        self.err(e.to_string())
                    }
                }
            }
            Tok::Ident(name) => {
                if let Some(i) = name.strip_prefix('x').and_then(|s| s.parse::<usize>().ok()) {
                    if i < 4 {
                        return Ok(Poly::var(f, 4, i));
                    }
                    self.lx.pos = at;
                    return self.err(format!("unknown variable {name}; only x0..x3 are allowed"));
                }
                match f.parse_elem(&name) {
                    Ok(c) => Ok(Poly::constant(f, 4, c)),
                    Err(_) => {
                        self.lx.pos = at;
                        self.err(format!("unknown identifier {name}"))
                    }
                }
            }
            Tok::Sym('(') => {
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Tok::End => self.err("unexpected end of input"),
            t => {
                self.lx.pos = at;
                self.err(format!("unexpected token {t:?}"))
            }
        }
    }
}

/// Parses a polynomial in `x0..x3` over `f`.
pub fn parse_poly<F: Field>(text: &str, f: &F) -> Result<Poly<F>, FormatError> {
    let lx = lex(text)?;
    Parser { f, lx }.equation()
}

/// Parses and validates a surface equation.
pub fn parse_surface<F: Field>(text: &str, f: &F) -> Result<Surface<F>, FormatError> {
    Ok(Surface::new(parse_poly(text, f)?)?)
}

/// Renders a polynomial in the surface grammar; `parse_poly` reads it back.
pub fn render_poly<F: Field>(p: &Poly<F>) -> String {
    let f = p.field();
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (e, c)) in p.terms().rev().enumerate() {
        let mut cs = f.format_elem(c);
        let negative = cs.starts_with('-') && !cs[1..].contains(['+', '-']);
        if negative {
            cs.remove(0);
        }
        if k == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let factors: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| {
                if k == 1 {
                    format!("x{i}")
                } else {
                    format!("x{i}^{k}")
                }
            })
            .collect();
        let atomic = !cs.contains(['+', '-', '*', '^']);
        let coeff = if atomic {
            cs.clone()
        } else {
            format!("({cs})")
        };
        if factors.is_empty() {
            out.push_str(&coeff);
        } else if cs == "1" {
            out.push_str(&factors.join("*"));
        } else {
            out.push_str(&coeff);
            out.push('*');
            out.push_str(&factors.join("*"));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineEntry {
    pub plucker: Vec<String>,
    pub span: [Vec<String>; 2],
    pub kind: String,
    pub flec_mult: Option<u32>,
    pub source: String,
}

/// Flecnodal data as stored in a census file; `R` itself is not stored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlecnodalEntry {
    pub plane: Vec<String>,
    pub deg_r: u32,
    pub diag_mult: u32,
    pub class_degree: u32,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct CensusBody {
    format: String,
    version: u32,
    field: String,
    surface: String,
    degree: u32,
    lines: Vec<LineEntry>,
    flecnodal: Option<FlecnodalEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct CensusFile {
    #[serde(flatten)]
    body: CensusBody,
    sha256: String,
}

pub fn kind_name(k: LineKind) -> &'static str {
    match k {
        LineKind::FirstKind => "first",
        LineKind::SecondKind => "second",
        LineKind::Unclassified => "unclassified",
    }
}

fn parse_kind(s: &str) -> Result<LineKind, FormatError> {
    match s {
        "first" => Ok(LineKind::FirstKind),
        "second" => Ok(LineKind::SecondKind),
        "unclassified" => Ok(LineKind::Unclassified),
        _ => Err(FormatError::Json(format!("unknown line kind {s:?}"))),
    }
}

pub fn source_name(s: LineSource) -> &'static str {
    match s {
        LineSource::Scan => "scan",
        LineSource::Family => "family",
        LineSource::UserSupplied => "user",
    }
}

fn parse_source(s: &str) -> Result<LineSource, FormatError> {
    match s {
        "scan" => Ok(LineSource::Scan),
        "family" => Ok(LineSource::Family),
        "user" => Ok(LineSource::UserSupplied),
        _ => Err(FormatError::Json(format!("unknown line source {s:?}"))),
    }
}

fn body_hash(body: &CensusBody) -> String {
    let bytes = serde_json::to_vec(body).expect("census body serializes");
    hex::encode(Sha256::digest(&bytes))
}

pub fn flecnodal_entry<F: Field>(data: &FlecnodalData<F>) -> FlecnodalEntry {
    let f = data.surface().field();
    FlecnodalEntry {
        plane: data
            .plane()
            .form()
            .iter()
            .map(|c| f.format_elem(c))
            .collect(),
        deg_r: data.r_degree(),
        diag_mult: data.diag_mult(),
        class_degree: data.class_degree(),
        seed: data.seed(),
    }
}

/// Serializes a census, with optional flecnodal data, as pretty JSON.
pub fn render_census<F: Field>(census: &Census<F>, flec: Option<FlecnodalEntry>) -> String {
    let x = census.surface();
    let f = x.field();
    let fmt = |v: &[F::Elem]| v.iter().map(|c| f.format_elem(c)).collect::<Vec<_>>();
    let lines = census
        .records()
        .iter()
        .map(|r| LineEntry {
            plucker: fmt(r.line.plucker()),
            span: [fmt(&r.line.span()[0]), fmt(&r.line.span()[1])],
            kind: kind_name(r.kind).into(),
            flec_mult: r.flec_mult,
            source: source_name(r.source).into(),
        })
        .collect();
    let body = CensusBody {
        format: CENSUS_FORMAT.into(),
        version: CENSUS_VERSION,
        field: f.spec().to_string(),
        surface: render_poly(x.poly()),
        degree: x.degree(),
        lines,
        flecnodal: flec,
    };
    let sha256 = body_hash(&body);
    let mut s =
        serde_json::to_string_pretty(&CensusFile { body, sha256 }).expect("census serializes");
    s.push('\n');
    s
}

/// Field spec string recorded in a census file, without further checks.
pub fn census_field(text: &str) -> Result<String, FormatError> {
    let v: serde_json::Value =
        serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))?;
    v.get("field")
        .and_then(|f| f.as_str())
        .map(str::to_string)
        .ok_or_else(|| FormatError::Json("missing field".into()))
}

/// Reads a census written by `render_census` for the given surface. The hash
/// and the recorded field and surface are checked; every line must lie on
/// the surface.
pub fn parse_census<F: Field>(
    text: &str,
    surface: &Surface<F>,
) -> Result<(Census<F>, Option<FlecnodalEntry>), FormatError> {
    let file: CensusFile =
        serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))?;
    let body = file.body;
    if body.format != CENSUS_FORMAT || body.version != CENSUS_VERSION {
        return Err(FormatError::Version {
            format: body.format,
            version: body.version,
        });
    }
    let computed = body_hash(&body);
    if computed != file.sha256 {
        return Err(FormatError::Hash {
            stored: file.sha256,
            computed,
        });
    }
    let f = surface.field();
    let expected = f.spec().to_string();
    if body.field != expected {
        return Err(FormatError::FieldMismatch {
            expected,
            found: body.field,
        });
    }
    let stored = parse_poly(&body.surface, f)?;
    if !proportional(&stored, surface.poly()) {
        return Err(FormatError::SurfaceMismatch {
            expected: render_poly(surface.poly()),
            found: body.surface,
        });
    }
    let elems = |v: &[String]| -> Result<Vec<F::Elem>, FormatError> {
        v.iter().map(|s| Ok(f.parse_elem(s)?)).collect()
    };
    let mut records = Vec::with_capacity(body.lines.len());
    for e in &body.lines {
        let line = LineP3::from_span(f, &elems(&e.span[0])?, &elems(&e.span[1])?)
            .map_err(|err| FormatError::Json(err.to_string()))?;
        if elems(&e.plucker)? != line.plucker().to_vec() {
            return Err(FormatError::Json(
                "Plücker vector does not match the span".into(),
            ));
        }
        records.push(LineRecord {
            line,
            kind: parse_kind(&e.kind)?,
            flec_mult: e.flec_mult,
            source: parse_source(&e.source)?,
        });
    }
    let census = Census::new(surface.clone(), records)?;
    Ok((census, body.flecnodal))
}

/// Whether two polynomials agree up to a nonzero scalar.
fn proportional<F: Field>(a: &Poly<F>, b: &Poly<F>) -> bool {
    let f = a.field();
    let (Some((ea, ca)), Some((eb, cb))) = (a.leading_term(), b.leading_term()) else {
        return a.is_zero() && b.is_zero();
    };
    ea == eb && a.scale(cb) == b.scale(ca) && !f.is_zero(ca)
}

/// Reads a list of lines, one per row as two points separated by `;`, e.g.
/// `1 0 0 0 ; 0 1 0 0`. Blank rows and `#` comments are skipped.
pub fn parse_line_list<F: Field>(text: &str, f: &F) -> Result<Vec<LineP3<F::Elem>>, FormatError> {
    let mut out = Vec::new();
    for (ln, row) in text.lines().enumerate() {
        let row = row.split('#').next().unwrap_or("").trim();
        if row.is_empty() {
            continue;
        }
        let perr = |msg: String| FormatError::Parse {
            line: ln + 1,
            col: 1,
            msg,
        };
        let pts: Vec<Vec<F::Elem>> = row
            .split(';')
            .map(|p| {
                p.split_whitespace()
                    .map(|s| f.parse_elem(s).map_err(|e| perr(e.to_string())))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<_, _>>()?;
        if pts.len() != 2 || pts.iter().any(|p| p.len() != 4) {
            return Err(perr(
                "expected two points of four coordinates separated by ';'".into(),
            ));
        }
        out.push(LineP3::from_span(f, &pts[0], &pts[1]).map_err(|e| perr(e.to_string()))?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{ExtField, PrimeField, Rationals};
    use crate::lineenum::enumerate_lines;

    #[test]
    fn schur_text() {
        let f = PrimeField::new(13).unwrap();
        let x = parse_surface("x0^4 - x0*x1^3 - x2^4 + x2*x3^3", &f).unwrap();
        assert_eq!(x.degree(), 4);
        let y = parse_surface("x0^4 - x0*x1^3 = x2^4 - x2*x3^3", &f).unwrap();
        assert_eq!(x.poly(), y.poly());
    }

    #[test]
    fn bad_variable_position() {
        let f = PrimeField::new(7).unwrap();
        let err = parse_poly("x0^3 +\n  x4^3", &f).unwrap_err();
        assert!(
            matches!(
                err,
                FormatError::Parse {
                    line: 2,
                    col: 3,
                    ..
                }
            ),
            "{err}"
        );
        assert!(parse_poly("x0^3 + * x1", &f).is_err());
        assert!(matches!(
            parse_surface("x0^3 + x1^2*x0 + x2", &f),
            Err(FormatError::Surface(Error::NotHomogeneous))
        ));
    }

    #[test]
    fn rational_and_extension_round_trip() {
        let q = Rationals;
        let p = parse_poly("-1/2*x0^3 + 3*x1*x2^2 - (x3 + x0)^3", &q).unwrap();
        assert_eq!(parse_poly(&render_poly(&p), &q).unwrap(), p);
        let e = ExtField::with_degree(3, 2).unwrap();
        let p = parse_poly("(a+1)*x0^4 + a*x1^4 - x2^4 + x3^4", &e).unwrap();
        assert_eq!(parse_poly(&render_poly(&p), &e).unwrap(), p);
    }

    #[test]
    fn census_json_round_trip() {
        let f = PrimeField::new(7).unwrap();
        let x = parse_surface("x0^3+x1^3+x2^3+x3^3", &f).unwrap();
        let c = enumerate_lines(&x);
        let text = render_census(&c, None);
        let (back, flec) = parse_census(&text, &x).unwrap();
        assert!(flec.is_none());
        assert_eq!(back.records(), c.records());
        assert_eq!(render_census(&back, None), text);
        let tampered = text.replacen("\"scan\"", "\"user\"", 1);
        assert!(matches!(
            parse_census(&tampered, &x),
            Err(FormatError::Hash { .. })
        ));
        let other = parse_surface("x0^3+x1^3+x2^3+2*x3^3", &f).unwrap();
        assert!(matches!(
            parse_census(&text, &other),
            Err(FormatError::SurfaceMismatch { .. })
        ));
    }

    #[test]
    fn line_list() {
        let f = PrimeField::new(7).unwrap();
        let ls =
            parse_line_list("# two lines\n1 0 0 0 ; 0 1 0 0\n\n1 6 0 0; 0 0 1 6\n", &f).unwrap();
        assert_eq!(ls.len(), 2);
        assert!(parse_line_list("1 0 0 ; 0 1 0 0", &f).is_err());
    }
}

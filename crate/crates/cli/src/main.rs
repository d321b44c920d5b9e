//! `surflines`: census of lines on surfaces in P^3.
//!
//! Exit codes: 0 success, 1 input or computation error, 2 a checked
//! assertion or audit verdict failed.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde::Serialize;

use surflines::algebra::{ExtField, Field, FieldSpec, FiniteField, PrimeField, Rationals};
use surflines::audit::{audit_census, bound_inequalities, bounds, inequality_input_for_line};
use surflines::flecnodal::{classify_census, classify_kinds, flecnodal_data_seeded};
use surflines::io::{
    census_field, flecnodal_entry, parse_census, parse_line_list, parse_surface, render_census,
};
use surflines::lineenum::{
    enumerate_lines, smoothness_probe, verify_census, LineKind, LineSource, SmoothProbe,
};
use surflines::tangentforms::Surface;

#[derive(Parser)]
#[command(
    name = "surflines",
    version,
    about = "Lines on surfaces in P^3: scan, classify, flecnodal multiplicities, audit"
)]
struct Cli {
    /// Worker threads for parallel stages (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the three line-count bounds for degree d (or a table up to --to).
    Bounds {
        d: u64,
        #[arg(long)]
        to: Option<u64>,
        /// Observed line count to compare against the new bound.
        #[arg(long)]
        observed: Option<u64>,
    },
    /// Enumerate all lines over a finite field.
    Scan {
        surface: PathBuf,
        #[arg(long)]
        field: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify census lines as first or second kind.
    Classify {
        surface: PathBuf,
        #[arg(long)]
        census: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute the flecnodal eliminant and every line's multiplicity.
    Flecnodal {
        surface: PathBuf,
        #[arg(long)]
        census: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the bound inequalities on a classified census.
    Audit {
        surface: PathBuf,
        #[arg(long)]
        census: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check user-supplied lines (`a0 a1 a2 a3 ; b0 b1 b2 b3` per row).
    Verify {
        surface: PathBuf,
        #[arg(long)]
        lines: PathBuf,
        #[arg(long)]
        field: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Whether the checks run by a command all passed.
type Verdict = bool;

enum AnyField {
    Q(Rationals),
    P(PrimeField),
    E(ExtField),
}

fn make_field(spec: &str) -> Result<AnyField> {
    let spec: FieldSpec = spec
        .parse()
        .with_context(|| format!("field spec {spec:?}"))?;
    Ok(match spec {
        FieldSpec::Rationals => AnyField::Q(Rationals),
        FieldSpec::Prime(p) => AnyField::P(PrimeField::new(p)?),
        FieldSpec::Ext { p, modulus, .. } => AnyField::E(ExtField::new(p, &modulus)?),
        other => bail!("field {other} is not supported on the command line"),
    })
}

macro_rules! with_field {
    ($any:expr, $f:ident => $body:expr) => {
        match $any {
            AnyField::Q($f) => $body,
            AnyField::P($f) => $body,
            AnyField::E($f) => $body,
        }
    };
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_json<T: Serialize>(out: Option<&Path>, v: &T) -> Result<()> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    emit(out, &s)
}

fn load_surface<F: Field>(path: &Path, f: &F) -> Result<Surface<F>> {
    parse_surface(&read(path)?, f).with_context(|| format!("in {}", path.display()))
}

fn run_bounds(d: u64, to: Option<u64>, observed: Option<u64>) -> Result<Verdict> {
    match to {
        Some(hi) => {
            let table = (d..=hi).map(bounds).collect::<Result<Vec<_>, _>>()?;
            emit_json(None, &table)?;
            Ok(true)
        }
        None => {
            let mut b = bounds(d)?;
            b.observed = observed;
            emit_json(None, &b)?;
            Ok(observed.is_none_or(|n| n <= b.new_bound))
        }
    }
}

fn run_scan<F: FiniteField>(f: &F, surface: &Path, out: Option<&Path>) -> Result<Verdict> {
    let x = load_surface(surface, f)?;
    let census = enumerate_lines(&x);
    let b = bounds(x.degree() as u64)?;
    eprintln!(
        "{} lines over {} (new bound for d = {}: {})",
        census.len(),
        f.spec(),
        x.degree(),
        b.new_bound
    );
    emit(out, &render_census(&census, None))?;
    Ok(true)
}

fn run_verify<F: Field>(
    f: &F,
    surface: &Path,
    lines: &Path,
    out: Option<&Path>,
) -> Result<Verdict> {
    let x = load_surface(surface, f)?;
    let cands =
        parse_line_list(&read(lines)?, f).with_context(|| format!("in {}", lines.display()))?;
    let rep = verify_census(&x, &cands, LineSource::UserSupplied);
    for r in &rep.rejected {
        let coeffs: Vec<String> = r.restriction.iter().map(|c| f.format_elem(c)).collect();
        eprintln!(
            "rejected {:?}: restriction [{}]",
            r.line.span(),
            coeffs.join(", ")
        );
    }
    eprintln!(
        "{} lines kept, {} rejected",
        rep.census.len(),
        rep.rejected.len()
    );
    emit(out, &render_census(&rep.census, None))?;
    Ok(rep.rejected.is_empty())
}

/// Refuses surfaces outside the characteristic range or with a rational
/// singular point.
fn require_smooth<F: FiniteField>(x: &Surface<F>) -> Result<()> {
    x.require_char_gate()?;
    if let SmoothProbe::Singular { point, degree } = smoothness_probe(x, 1)? {
        bail!(
            "surface is singular at ({}) over an extension of degree {degree}",
            point.join(", ")
        );
    }
    Ok(())
}

fn run_classify<F: Field>(
    f: &F,
    surface: &Path,
    census: &Path,
    out: Option<&Path>,
) -> Result<Verdict> {
    let x = load_surface(surface, f)?;
    let (mut c, flec) = parse_census(&read(census)?, &x)?;
    classify_kinds(&mut c)?;
    let second = c
        .records()
        .iter()
        .filter(|r| r.kind == LineKind::SecondKind)
        .count();
    eprintln!("{} first kind, {second} second kind", c.len() - second);
    emit(out, &render_census(&c, flec))?;
    Ok(true)
}

fn run_flecnodal<F: Field>(
    f: &F,
    surface: &Path,
    census: &Path,
    seed: u64,
    out: Option<&Path>,
) -> Result<Verdict> {
    let x = load_surface(surface, f)?;
    let (mut c, _) = parse_census(&read(census)?, &x)?;
    let data = flecnodal_data_seeded(&x, seed)?;
    classify_census(&mut c, &data)?;
    let d = x.degree() as u64;
    let deg_f = d * (11 * d - 24);
    let total: u64 = c
        .records()
        .iter()
        .map(|r| r.flec_mult.unwrap_or(0) as u64)
        .sum();
    let bad_second = c
        .records()
        .iter()
        .filter(|r| r.kind == LineKind::SecondKind && r.flec_mult.unwrap_or(0) < 2)
        .count();
    eprintln!(
        "deg R = {}, class degree {}, sum of line multiplicities {total} (deg F = {deg_f})",
        data.r_degree(),
        data.class_degree()
    );
    emit(out, &render_census(&c, Some(flecnodal_entry(&data))))?;
    if bad_second > 0 {
        eprintln!("{bad_second} second-kind lines have multiplicity below 2");
    }
    Ok(total <= deg_f && bad_second == 0)
}

#[derive(Serialize)]
struct AuditOutput {
    report: surflines::audit::AuditReport,
    inequalities: Option<Vec<surflines::audit::InequalityVerdict>>,
}

fn run_audit<F: Field>(
    f: &F,
    surface: &Path,
    census: &Path,
    out: Option<&Path>,
) -> Result<Verdict> {
    let x = load_surface(surface, f)?;
    let (c, _) = parse_census(&read(census)?, &x)?;
    let report = audit_census(&c)?;
    for v in &report.verdicts {
        eprintln!(
            "[{}] {}: {}",
            if v.holds { "ok" } else { "FAIL" },
            v.id,
            v.statement
        );
    }
    let inequalities = report
        .lines
        .iter()
        .position(|l| l.reduced)
        .map(|i| bound_inequalities(&inequality_input_for_line(&report, i)));
    let ok = report.all_hold();
    emit_json(
        out,
        &AuditOutput {
            report,
            inequalities,
        },
    )?;
    Ok(ok)
}

fn run(cli: Cli) -> Result<Verdict> {
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()?;
    }
    match cli.cmd {
        Cmd::Bounds { d, to, observed } => run_bounds(d, to, observed),
        Cmd::Scan {
            surface,
            field,
            out,
        } => match make_field(&field)? {
            AnyField::Q(_) => bail!("scan needs a finite field, got {field}"),
            AnyField::P(f) => run_scan(&f, &surface, out.as_deref()),
            AnyField::E(f) => run_scan(&f, &surface, out.as_deref()),
        },
        Cmd::Verify {
            surface,
            lines,
            field,
            out,
        } => {
            with_field!(make_field(&field)?, f => run_verify(&f, &surface, &lines, out.as_deref()))
        }
        Cmd::Classify {
            surface,
            census,
            out,
        } => {
            let field = census_field(&read(&census)?)?;
            with_field!(make_field(&field)?, f => run_classify(&f, &surface, &census, out.as_deref()))
        }
        Cmd::Flecnodal {
            surface,
            census,
            seed,
            out,
        } => {
            let field = census_field(&read(&census)?)?;
            match make_field(&field)? {
                AnyField::Q(f) => run_flecnodal(&f, &surface, &census, seed, out.as_deref()),
                AnyField::P(f) => {
                    require_smooth(&load_surface(&surface, &f)?)?;
                    run_flecnodal(&f, &surface, &census, seed, out.as_deref())
                }
                AnyField::E(f) => {
                    require_smooth(&load_surface(&surface, &f)?)?;
                    run_flecnodal(&f, &surface, &census, seed, out.as_deref())
                }
            }
        }
        Cmd::Audit {
            surface,
            census,
            out,
        } => {
            let field = census_field(&read(&census)?)?;
            with_field!(make_field(&field)?, f => run_audit(&f, &surface, &census, out.as_deref()))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

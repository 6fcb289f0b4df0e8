//! Command-line front end: single values, Euler classes, closed forms,
//! tables, and the self-check runner.
//!
//! Output is byte-deterministic for fixed inputs: JSON objects are emitted
//! with sorted keys, rationals as exact "p/q" strings, and table rows are
//! assembled in genus order no matter which thread finished first.
//!
//! Exit codes: 0 success, 1 check failure, 2 usage error, 3 out of
//! implemented range.

mod space;

use std::path::PathBuf;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use clap::{Parser, Subcommand};
use serde_json::{json, Value as Json};

use vtev_core::closedform::{value_display, ClosedForm};
use vtev_core::engine::{dimension_d, euler_class, vtev_at, vtev_product};
use vtev_core::formulas::{e6_form, e7_form, lagrangian_form, orthogonal_form, quadric_form};
use vtev_core::polyroots::RootValue;
use vtev_core::rational::rat_to_string;
use vtev_core::ring::RingKind;
use vtev_core::selfcheck::{available_suites, golden_suite_with, run_suite};
use vtev_core::spectral::{eigen_decompose, residue_info, synthesize_full};
use vtev_core::{Error, Ring};

use space::{parse_space, FormulaSpace, SpaceSpec};

/// What went wrong, bucketed by exit code.
pub enum Failure {
    /// Bad flags or an unparseable space string (exit 2).
    Usage(String),
    /// Valid request outside what is implemented (exit 3).
    Range(String),
    /// A self-check suite failed (exit 1).
    Check(String),
}

impl Failure {
    pub fn range(e: Error) -> Failure {
        match e {
            Error::UnknownSpace(m) => Failure::Usage(m),
            other => Failure::Range(other.to_string()),
        }
    }

    fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Range(_) => 3,
            Failure::Check(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Range(m) | Failure::Check(m) => m,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "vtev",
    version,
    about = "Exact virtual Tevelev degrees via small quantum cohomology"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute one virtual Tevelev degree as a JSON record
    Vtev {
        /// Space, e.g. gr:2,7 | p:3 | q:4 | ci:4:2,2,2 | prod(p:1,p:1)
        #[arg(long)]
        space: String,
        /// Genus of the source curve
        #[arg(long = "genus")]
        genus: u64,
        /// Number of marked points; the curve degree is solved from the
        /// dimension constraint
        #[arg(long)]
        n: Option<u64>,
        /// Curve degree; the number of marked points is solved from the
        /// dimension constraint
        #[arg(long)]
        d: Option<u64>,
    },
    /// Print the quantum Euler class in basis terms
    Euler {
        #[arg(long)]
        space: String,
    },
    /// Emit the closed form for g -> vTev(g) as JSON
    ClosedForm {
        #[arg(long)]
        space: String,
    },
    /// Tabulate vTev for g = 0..gmax as CSV, one row per genus
    Table {
        #[arg(long)]
        space: String,
        /// Largest genus to tabulate
        #[arg(long)]
        gmax: u64,
    },
    /// Run the library self-check suites
    Selfcheck {
        /// Run a single suite by name
        #[arg(long)]
        only: Option<String>,
        /// Replace golden-table entries from a CSV file of space,genus,value
        /// lines before checking (intended for validating the checker itself)
        #[arg(long, value_name = "FILE")]
        golden_fixture: Option<PathBuf>,
    },
}

/// Decimal digits used for numeric eigenvalue work, overridable via the
/// VTEV_PRECISION environment variable.
fn precision_from_env() -> Result<u32, Failure> {
    match std::env::var("VTEV_PRECISION") {
        Err(_) => Ok(64),
        Ok(s) => s
            .trim()
            .parse::<u32>()
            .ok()
            .filter(|p| (8..=4096).contains(p))
            .ok_or_else(|| {
                Failure::Usage(format!(
                    "VTEV_PRECISION must be a decimal digit count in 8..=4096, got '{s}'"
                ))
            }),
    }
}

fn formula_only(space: &str) -> Failure {
    Failure::Range(format!(
        "'{space}' is a formula-only space: it supports `closed-form` and `table`, \
         not ring-level commands"
    ))
}

// ---------------------------------------------------------------------------
// vtev

fn unsatisfiable(obj: &mut serde_json::Map<String, Json>) {
    obj.insert("value".into(), json!("0"));
    obj.insert(
        "reason".into(),
        json!("dimension constraint unsatisfiable"),
    );
}

fn cmd_vtev(space_str: &str, g: u64, n: Option<u64>, d: Option<u64>) -> Result<(), Failure> {
    for v in [Some(g), n, d].into_iter().flatten() {
        if v > 1 << 40 {
            return Err(Failure::Range(format!(
                "parameter {v} exceeds the implemented range"
            )));
        }
    }
    let mut obj = serde_json::Map::new();
    obj.insert("space".into(), json!(space_str));
    obj.insert("g".into(), json!(g));

    match parse_space(space_str)? {
        SpaceSpec::Formula(_) => return Err(formula_only(space_str)),
        SpaceSpec::Product(rings) => {
            let n = match (n, d) {
                (Some(n), None) => n,
                (None, _) | (Some(_), Some(_)) => {
                    return Err(Failure::Usage(
                        "product spaces take --n only; each factor solves its own degree".into(),
                    ))
                }
            };
            obj.insert("n".into(), json!(n));
            let (ds, value) = vtev_product(&rings, g, n).map_err(Failure::range)?;
            match ds {
                Some(ds) => {
                    obj.insert("d".into(), json!(ds));
                    obj.insert("value".into(), json!(rat_to_string(&value)));
                }
                None => unsatisfiable(&mut obj),
            }
        }
        SpaceSpec::Ring(ring) => {
            let pair: Option<(u64, u64)> = match (n, d) {
                (None, None) => {
                    return Err(Failure::Usage(
                        "pass --n or --d; the other side of the dimension constraint is solved"
                            .into(),
                    ))
                }
                (Some(n), None) => dimension_d(&ring, g, n).map(|d| (n, d)),
                (None, Some(d)) => {
                    // dim (n + g - 1) = q_degree * d, solved for n >= 0.
                    let desc = ring.descriptor();
                    let dim = desc.dim as u64;
                    match (desc.q_degree as u64).checked_mul(d) {
                        Some(rhs) if rhs % dim == 0 && rhs / dim + 1 >= g => {
                            Some((rhs / dim + 1 - g, d))
                        }
                        _ => None,
                    }
                }
                (Some(n), Some(d)) => {
                    if dimension_d(&ring, g, n) == Some(d) {
                        Some((n, d))
                    } else {
                        None
                    }
                }
            };
            match pair {
                Some((n, d)) => {
                    obj.insert("n".into(), json!(n));
                    obj.insert("d".into(), json!(d));
                    let value = vtev_at(&ring, g, d, n).map_err(Failure::range)?;
                    obj.insert("value".into(), json!(rat_to_string(&value)));
                }
                None => {
                    if let Some(n) = n {
                        obj.insert("n".into(), json!(n));
                    }
                    if let Some(d) = d {
                        obj.insert("d".into(), json!(d));
                    }
                    unsatisfiable(&mut obj);
                }
            }
        }
    }

    println!("{}", Json::Object(obj));
    Ok(())
}

// ---------------------------------------------------------------------------
// euler

fn cmd_euler(space_str: &str) -> Result<(), Failure> {
    match parse_space(space_str)? {
        SpaceSpec::Ring(ring) => {
            let obj = json!({
                "space": space_str,
                "euler": format!("{}", euler_class(&ring)),
            });
            println!("{obj}");
            Ok(())
        }
        SpaceSpec::Formula(_) => Err(formula_only(space_str)),
        SpaceSpec::Product(_) => Err(Failure::Range(
            "the Euler class is printed per factor; pass a single ring-backed space".into(),
        )),
    }
}

// ---------------------------------------------------------------------------
// closed-form

fn formula_closed_form(f: FormulaSpace, digits: u32) -> Result<ClosedForm, Failure> {
    match f {
        FormulaSpace::Lagrangian(n) => lagrangian_form(n).map_err(Failure::range),
        FormulaSpace::Orthogonal(n) => orthogonal_form(n).map_err(Failure::range),
        FormulaSpace::CayleyPlane => Ok(e6_form()),
        FormulaSpace::Freudenthal => Ok(e7_form(digits).map_err(Failure::range)?.form),
    }
}

fn cmd_closed_form(space_str: &str) -> Result<(), Failure> {
    let digits = precision_from_env()?;
    let form = match parse_space(space_str)? {
        SpaceSpec::Formula(f) => formula_closed_form(f, digits)?,
        SpaceSpec::Product(_) => {
            return Err(Failure::Range(
                "closed forms are per-factor; pass a single space".into(),
            ))
        }
        SpaceSpec::Ring(ring) => match ring.descriptor().kind.clone() {
            RingKind::Grassmannian { .. } => {
                let sd = eigen_decompose(&ring, digits).map_err(Failure::range)?;
                synthesize_full(&sd).map_err(Failure::range)?
            }
            RingKind::Projective { r } => {
                // Same ring as the one-row Grassmannian; synthesize there.
                let gr = Ring::grassmannian(1, r + 1).map_err(Failure::range)?;
                let sd = eigen_decompose(&gr, digits).map_err(Failure::range)?;
                let mut form = synthesize_full(&sd).map_err(Failure::range)?;
                form.space = format!("p:{r}");
                form
            }
            RingKind::CompleteIntersection { r, degrees } => {
                if degrees == vec![2] {
                    quadric_form(r).map_err(Failure::range)?
                } else {
                    return Err(Failure::Range(format!(
                        "no closed form implemented for '{space_str}'; use `vtev` or `table`"
                    )));
                }
            }
        },
    };
    println!("{}", form.to_json());
    Ok(())
}

// ---------------------------------------------------------------------------
// table

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Smallest n >= 1 congruent to `residue` mod `modulus`.
fn smallest_rep(residue: i128, modulus: u64) -> u64 {
    let m = modulus as i128;
    let r = ((residue % m) + m) % m;
    if r == 0 {
        modulus
    } else {
        r as u64
    }
}

/// Run `make_row` for g = 0..=gmax on a small worker pool and print the rows
/// in genus order. The worker count never affects the output.
fn emit_rows<F>(header: String, gmax: u64, make_row: F) -> Result<(), Failure>
where
    F: Fn(u64) -> Result<String, Failure> + Sync,
{
    let rows = gmax as usize + 1;
    let results: Mutex<Vec<Option<Result<String, Failure>>>> =
        Mutex::new((0..rows).map(|_| None).collect());
    let next = AtomicU64::new(0);
    let workers = std::thread::available_parallelism()
        .map(|p| p.get())
        .unwrap_or(4)
        .min(rows)
        .max(1);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let g = next.fetch_add(1, Ordering::Relaxed);
                if g > gmax {
                    break;
                }
                let row = make_row(g);
                results.lock().unwrap()[g as usize] = Some(row);
            });
        }
    });
    let mut out = String::new();
    out.push_str(&header);
    out.push('\n');
    for row in results.into_inner().unwrap() {
        out.push_str(&row.expect("worker pool covered every row")?);
        out.push('\n');
    }
    print!("{out}");
    Ok(())
}

fn table_ring(ring: std::sync::Arc<Ring>, gmax: u64) -> Result<(), Failure> {
    let desc = ring.descriptor().clone();
    let dim = desc.dim as u64;
    let dq = desc.q_degree as u64;
    // Admissible marks satisfy n = 1 - g (mod t); for Grassmannians they
    // split into `classes` sub-columns mod ord(P), one value each.
    let (t, ord, classes) = match desc.kind {
        RingKind::Grassmannian { .. } => {
            let info = residue_info(&ring).map_err(Failure::range)?;
            (info.t, info.ord, info.classes)
        }
        _ => {
            let t = dq / gcd(dq, dim);
            (t, t, 1)
        }
    };
    let header = if classes == 1 {
        "g,n,d,value".to_string()
    } else {
        let mut h = "g".to_string();
        for j in 0..classes {
            h.push_str(&format!(",n[{j}],d[{j}],value[{j}]"));
        }
        h
    };
    emit_rows(header, gmax, |g| {
        let mut row = g.to_string();
        for j in 0..classes {
            let residue = 1 - g as i128 + (j * t) as i128;
            let n = smallest_rep(residue, ord);
            let d = dim * (n + g - 1) / dq;
            let value = vtev_at(&ring, g, d, n).map_err(Failure::range)?;
            row.push_str(&format!(",{n},{d},{}", rat_to_string(&value)));
        }
        Ok(row)
    })
}

/// Render one closed-form evaluation: integers plainly, other exact values
/// in their native shape, numerics at the declared precision.
fn form_value(form: &ClosedForm, g: u64, d: u64) -> Result<String, Error> {
    let (raw, rounded) = form.evaluate_rounded(g, d)?;
    if let Some(int) = rounded {
        return Ok(int.to_string());
    }
    Ok(match raw {
        RootValue::Numeric(v) if v.prec() > form.digits => {
            v.with_prec(form.digits).to_decimal_string()
        }
        other => value_display(&other),
    })
}

fn table_form(form: ClosedForm, gmax: u64) -> Result<(), Failure> {
    emit_rows("g,n,d,value".to_string(), gmax, |g| {
        // Smallest marks whose degree is integral and whose parity rules
        // apply; catalog forms always admit one within a few periods.
        let bound = 4 * form.q_degree.max(form.ord_point).max(2);
        for n in 1..=bound {
            let Some(d) = form.solve_d(g, n) else {
                continue;
            };
            match form_value(&form, g, d) {
                Ok(value) => return Ok(format!("{g},{n},{d},{value}")),
                Err(Error::InadmissibleParity(_)) => continue,
                Err(e) => return Err(Failure::range(e)),
            }
        }
        Err(Failure::Range(format!(
            "no admissible marks found for {} at genus {g}",
            form.space
        )))
    })
}

fn cmd_table(space_str: &str, gmax: u64) -> Result<(), Failure> {
    if gmax > 1_000_000 {
        return Err(Failure::Range(format!(
            "gmax {gmax} exceeds the implemented range"
        )));
    }
    let digits = precision_from_env()?;
    match parse_space(space_str)? {
        SpaceSpec::Ring(ring) => table_ring(ring, gmax),
        SpaceSpec::Formula(f) => table_form(formula_closed_form(f, digits)?, gmax),
        SpaceSpec::Product(_) => Err(Failure::Range(
            "tables are per-factor; pass a single space or use `vtev --n`".into(),
        )),
    }
}

// ---------------------------------------------------------------------------
// selfcheck

/// Parse a golden-fixture CSV (space,genus,value per line) and overlay it on
/// the built-in tables.
fn patched_golden(path: &PathBuf) -> Result<Vec<vtev_core::formulas::GoldenTable>, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read golden fixture {path:?}: {e}")))?;
    let mut tables = vtev_core::formulas::golden_tables();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        // Space names contain commas (gr:2,7), so split the last two fields
        // off the right.
        let parts: Vec<&str> = line.rsplitn(3, ',').collect();
        let bad = |what: &str| {
            Failure::Usage(format!(
                "golden fixture line {}: {what} in '{line}'",
                lineno + 1
            ))
        };
        if parts.len() != 3 {
            return Err(bad("expected space,genus,value"));
        }
        let g: usize = parts[1].trim().parse().map_err(|_| bad("bad genus"))?;
        let table = tables
            .iter_mut()
            .find(|t| t.space == parts[2].trim())
            .ok_or_else(|| bad("unknown space"))?;
        if g >= table.values.len() {
            return Err(bad("genus out of table range"));
        }
        // The fixture lives for the rest of the process; leaking keeps the
        // table type identical to the built-in one.
        table.values[g] = Box::leak(parts[0].trim().to_string().into_boxed_str());
    }
    Ok(tables)
}

fn cmd_selfcheck(only: Option<&str>, golden_fixture: Option<&PathBuf>) -> Result<(), Failure> {
    let names: Vec<&str> = match only {
        Some(name) => {
            if !available_suites().contains(&name) {
                return Err(Failure::Usage(format!(
                    "unknown suite '{name}'; available: {}",
                    available_suites().join(", ")
                )));
            }
            vec![name]
        }
        None => available_suites().to_vec(),
    };
    let fixture = golden_fixture.map(patched_golden).transpose()?;

    let mut failing: Vec<&str> = Vec::new();
    for name in names {
        let report = match (&fixture, name) {
            (Some(tables), "golden") => golden_suite_with(tables),
            _ => run_suite(name).map_err(Failure::range)?,
        };
        if report.ok() {
            println!("{}: pass ({} checks)", report.name, report.passed);
        } else {
            println!(
                "{}: FAIL ({} passed, {} failed)",
                report.name,
                report.passed,
                report.failures.len()
            );
            for f in &report.failures {
                eprintln!("  - {f}");
            }
            failing.push(report.name);
        }
    }
    if failing.is_empty() {
        Ok(())
    } else {
        Err(Failure::Check(format!(
            "failing suites: {}",
            failing.join(", ")
        )))
    }
}

// ---------------------------------------------------------------------------

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Cmd::Vtev {
            space,
            genus,
            n,
            d,
        } => cmd_vtev(&space, genus, n, d),
        Cmd::Euler { space } => cmd_euler(&space),
        Cmd::ClosedForm { space } => cmd_closed_form(&space),
        Cmd::Table { space, gmax } => cmd_table(&space, gmax),
        Cmd::Selfcheck {
            only,
            golden_fixture,
        } => cmd_selfcheck(only.as_deref(), golden_fixture.as_ref()),
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => {}
        Err(f) => {
            eprintln!("error: {}", f.message());
            std::process::exit(f.exit_code());
        }
    }
}

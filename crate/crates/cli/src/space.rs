//! Space-string grammar.
//!
//! `p:<r>`, `q:<r>` (sugar for `ci:<r>:2`), `gr:<m>,<N>`, `ci:<r>:<m1>,<m2>,...`,
//! `lg:<N>`, `og:<N>`, `e6`, `e7`, and products of ring-backed factors such as
//! `prod(p:1,p:1)` or `prod(gr:2,4,q:3)`.

use std::sync::Arc;

use vtev_core::Ring;

use crate::Failure;

/// A parsed `--space` argument: either a quantum cohomology ring we can
/// compute in directly, a formula-only space (closed form and table only),
/// or a product of ring-backed factors.
pub enum SpaceSpec {
    Ring(Arc<Ring>),
    Formula(FormulaSpace),
    Product(Vec<Arc<Ring>>),
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum FormulaSpace {
    /// LG(n, 2n)
    Lagrangian(u32),
    /// OG(n, 2n)
    Orthogonal(u32),
    /// E6/P6 (Cayley plane)
    CayleyPlane,
    /// E7/P7 (Freudenthal variety)
    Freudenthal,
}

fn usage(msg: String) -> Failure {
    Failure::Usage(msg)
}

fn parse_u32(s: &str, what: &str) -> Result<u32, Failure> {
    s.trim()
        .parse::<u32>()
        .map_err(|_| usage(format!("expected an integer for {what}, got '{s}'")))
}

/// Split the inside of `prod(...)` into factor strings. Factors themselves
/// contain commas (`gr:2,4`), so a comma only starts a new factor when what
/// follows opens a new space token.
fn split_factors(inner: &str) -> Result<Vec<String>, Failure> {
    let mut out: Vec<String> = Vec::new();
    for piece in inner.split(',') {
        let p = piece.trim();
        let starts_new = ["p:", "q:", "gr:", "ci:", "lg:", "og:"]
            .iter()
            .any(|pre| p.starts_with(pre))
            || p == "e6"
            || p == "e7";
        if starts_new {
            out.push(p.to_string());
        } else if let Some(last) = out.last_mut() {
            last.push(',');
            last.push_str(p);
        } else {
            return Err(usage(format!(
                "product factor must start with a space token, got '{p}'"
            )));
        }
    }
    Ok(out)
}

pub fn parse_space(s: &str) -> Result<SpaceSpec, Failure> {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix("prod(").and_then(|r| r.strip_suffix(')')) {
        let factors = split_factors(inner)?;
        if factors.len() < 2 {
            return Err(usage("a product space needs at least two factors".into()));
        }
        let mut rings = Vec::new();
        for f in &factors {
            match parse_space(f)? {
                SpaceSpec::Ring(r) => rings.push(r),
                _ => {
                    return Err(usage(format!(
                        "product factors must be ring-backed spaces (p/q/gr/ci), got '{f}'"
                    )))
                }
            }
        }
        return Ok(SpaceSpec::Product(rings));
    }

    match s {
        "e6" => return Ok(SpaceSpec::Formula(FormulaSpace::CayleyPlane)),
        "e7" => return Ok(SpaceSpec::Formula(FormulaSpace::Freudenthal)),
        _ => {}
    }

    if let Some(rest) = s.strip_prefix("p:") {
        let r = parse_u32(rest, "p:<r>")?;
        return Ok(SpaceSpec::Ring(Ring::projective(r).map_err(Failure::range)?));
    }
    if let Some(rest) = s.strip_prefix("q:") {
        let r = parse_u32(rest, "q:<r>")?;
        return Ok(SpaceSpec::Ring(Ring::quadric(r).map_err(Failure::range)?));
    }
    if let Some(rest) = s.strip_prefix("gr:") {
        let parts: Vec<&str> = rest.split(',').collect();
        if parts.len() != 2 {
            return Err(usage(format!("expected gr:<m>,<N>, got '{s}'")));
        }
        let m = parse_u32(parts[0], "gr:<m>,<N>")?;
        let n = parse_u32(parts[1], "gr:<m>,<N>")?;
        return Ok(SpaceSpec::Ring(
            Ring::grassmannian(m, n).map_err(Failure::range)?,
        ));
    }
    if let Some(rest) = s.strip_prefix("ci:") {
        let parts: Vec<&str> = rest.splitn(2, ':').collect();
        if parts.len() != 2 {
            return Err(usage(format!("expected ci:<r>:<m1>,<m2>,..., got '{s}'")));
        }
        let r = parse_u32(parts[0], "ci:<r>:...")?;
        let degrees = parts[1]
            .split(',')
            .map(|d| parse_u32(d, "complete intersection degree"))
            .collect::<Result<Vec<u32>, Failure>>()?;
        return Ok(SpaceSpec::Ring(
            Ring::complete_intersection(r, degrees).map_err(Failure::range)?,
        ));
    }
    if let Some(rest) = s.strip_prefix("lg:") {
        let n = parse_u32(rest, "lg:<N>")?;
        return Ok(SpaceSpec::Formula(FormulaSpace::Lagrangian(n)));
    }
    if let Some(rest) = s.strip_prefix("og:") {
        let n = parse_u32(rest, "og:<N>")?;
        return Ok(SpaceSpec::Formula(FormulaSpace::Orthogonal(n)));
    }

    Err(usage(format!(
        "unknown space '{s}'; expected p:<r>, q:<r>, gr:<m>,<N>, ci:<r>:<m1>,..., lg:<N>, og:<N>, e6, e7, or prod(...)"
    )))
}

//! Genus-parametric closed forms: finite sums `Σ wᵢ · λᵢ^g` with optional
//! degree-parity signs, evaluated exactly when the data is exact and at fixed
//! decimal precision otherwise.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde_json::{json, Value as Json};

use crate::bigdec::BigDec;
use crate::error::{Error, Result};
use crate::polyroots::RootValue;
use crate::rational::{rat_int, rat_to_string, Rat};
use crate::surd::{Field, QuadExt};

/// Sign attached to a term as a function of the curve degree d.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    None,
    /// multiply by (-1)^d
    PowD,
    /// multiply by (-1)^(d/2); only meaningful when d is even
    PowHalfD,
}

impl Parity {
    /// Sign contributed at degree d, or an error when the parity rule does
    /// not apply to this d.
    pub fn sign(&self, d: u64) -> Result<i64> {
        match self {
            Parity::None => Ok(1),
            Parity::PowD => Ok(if d % 2 == 1 { -1 } else { 1 }),
            Parity::PowHalfD => {
                if d % 2 != 0 {
                    Err(Error::InadmissibleParity(format!(
                        "sign (-1)^(d/2) is undefined at odd degree d = {d}"
                    )))
                } else {
                    Ok(if (d / 2) % 2 == 1 { -1 } else { 1 })
                }
            }
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Parity::None => "none",
            Parity::PowD => "(-1)^d",
            Parity::PowHalfD => "(-1)^(d/2)",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Term {
    pub weight: RootValue,
    pub base: RootValue,
    pub parity: Parity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Built from an eigendecomposition computed here.
    Synthesized,
    /// Fixed tabulated formula.
    Catalog,
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::Synthesized => "synthesized",
            Provenance::Catalog => "catalog",
        }
    }
}

/// A closed form for g ↦ vTev(X; g, ·) together with the constraint data of
/// the underlying space: degrees d are admissible exactly when
/// `q_degree · d = dim · (n + g - 1)`.
#[derive(Clone, Debug)]
pub struct ClosedForm {
    pub space: String,
    pub q_degree: u64,
    pub dim: u64,
    pub ord_point: u64,
    pub provenance: Provenance,
    /// Decimal digits used when any term is numeric.
    pub digits: u32,
    pub terms: Vec<Term>,
}

fn exact_as_quad(v: &RootValue) -> Option<QuadExt> {
    match v {
        RootValue::Rational(r) => Some(QuadExt::rational(r.clone())),
        RootValue::Quadratic(q) => Some(q.clone()),
        RootValue::Numeric(_) => None,
    }
}

/// Convert any value to a fixed-point decimal at the given precision.
pub fn value_to_dec(v: &RootValue, prec: u32) -> BigDec {
    match v {
        RootValue::Rational(r) => BigDec::from_rat(r, prec),
        RootValue::Quadratic(q) => {
            let a = BigDec::from_rat(q.rational_part(), prec);
            let b = BigDec::from_rat(q.surd_part(), prec);
            let root = BigDec::from_int(q.radicand() as i64, prec).sqrt();
            a.add(&b.mul(&root))
        }
        RootValue::Numeric(d) => d.with_prec(prec),
    }
}

fn dec_pow(base: &BigDec, e: u64) -> BigDec {
    let prec = base.prec();
    let mut acc = BigDec::from_int(1, prec);
    let mut b = base.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&b);
        }
        b = b.mul(&b);
        e >>= 1;
    }
    acc
}

/// Render a value for human-readable formula text.
pub fn value_display(v: &RootValue) -> String {
    match v {
        RootValue::Rational(r) => rat_to_string(r),
        RootValue::Quadratic(q) => format!("({q})"),
        RootValue::Numeric(d) => d.to_decimal_string(),
    }
}

/// JSON shape for a value: rationals are "p/q" strings, quadratic surds are
/// objects carrying their three components, numerics are decimal strings.
pub fn value_to_json(v: &RootValue) -> Json {
    match v {
        RootValue::Rational(r) => Json::String(rat_to_string(r)),
        RootValue::Quadratic(q) => json!({
            "rational": rat_to_string(q.rational_part()),
            "surd_coeff": rat_to_string(q.surd_part()),
            "radicand": q.radicand(),
        }),
        RootValue::Numeric(d) => json!({
            "decimal": d.to_decimal_string(),
            "digits": d.prec(),
        }),
    }
}

impl ClosedForm {
    /// Smallest admissible degree for (g, n), i.e. the solution d of
    /// `q_degree·d = dim·(n+g-1)`, if integral.
    pub fn solve_d(&self, g: u64, n: u64) -> Option<u64> {
        let rhs = self.dim * (n + g).checked_sub(1)?;
        if rhs % self.q_degree == 0 {
            Some(rhs / self.q_degree)
        } else {
            None
        }
    }

    /// Field the exact terms live in, for reporting.
    pub fn field_kind(&self) -> String {
        let mut radicand: Option<u64> = None;
        let mut numeric = false;
        for t in &self.terms {
            for v in [&t.weight, &t.base] {
                match v {
                    RootValue::Rational(_) => {}
                    RootValue::Quadratic(q) => radicand = Some(q.radicand()),
                    RootValue::Numeric(_) => numeric = true,
                }
            }
        }
        if numeric {
            "high-precision".to_string()
        } else if let Some(k) = radicand {
            format!("quadratic-surd({k})")
        } else {
            "rational".to_string()
        }
    }

    /// Evaluate at genus g and degree d. The result is exact whenever every
    /// term is exact; surd contributions must cancel pairwise in that case.
    pub fn evaluate(&self, g: u64, d: u64) -> Result<RootValue> {
        let mut rational_acc: Rat = <Rat as Zero>::zero();
        let mut buckets: BTreeMap<u64, QuadExt> = BTreeMap::new();
        let mut numeric: Vec<(i64, &Term)> = Vec::new();

        for term in &self.terms {
            let sign = term.parity.sign(d)?;
            match (exact_as_quad(&term.weight), exact_as_quad(&term.base)) {
                (Some(w), Some(b)) => {
                    let mut v = w.mul(&b.pow(g));
                    if sign < 0 {
                        v = v.neg();
                    }
                    if v.is_rational() {
                        rational_acc += v.rational_part().clone();
                    } else {
                        let k = v.radicand();
                        let cur = buckets.remove(&k).unwrap_or_else(QuadExt::zero);
                        buckets.insert(k, cur.add(&v));
                    }
                }
                _ => numeric.push((sign, term)),
            }
        }

        if numeric.is_empty() {
            for (k, v) in &buckets {
                if !v.is_rational() {
                    return Err(Error::ConstraintViolated(format!(
                        "closed form for {} left an uncancelled sqrt({k}) contribution at g = {g}",
                        self.space
                    )));
                }
                rational_acc += v.rational_part().clone();
            }
            return Ok(RootValue::Rational(rational_acc));
        }

        // guard digits: stored values may carry more precision than `digits`,
        // and powers amplify representation error
        let prec = self
            .terms
            .iter()
            .flat_map(|t| [&t.weight, &t.base])
            .filter_map(|v| match v {
                RootValue::Numeric(d) => Some(d.prec()),
                _ => None,
            })
            .max()
            .unwrap_or(self.digits)
            .max(self.digits)
            + 32;
        let mut acc = BigDec::from_rat(&rational_acc, prec);
        for v in buckets.values() {
            acc = acc.add(&value_to_dec(&RootValue::Quadratic(v.clone()), prec));
        }
        for (sign, term) in numeric {
            let w = value_to_dec(&term.weight, prec);
            let b = value_to_dec(&term.base, prec);
            let mut contrib = w.mul(&dec_pow(&b, g));
            if sign < 0 {
                contrib = contrib.neg();
            }
            acc = acc.add(&contrib);
        }
        Ok(RootValue::Numeric(acc.with_prec(self.digits)))
    }

    /// Evaluate and additionally round to the nearest integer when the value
    /// is within 1e-10 of one; returns (raw, rounded-or-None).
    pub fn evaluate_rounded(&self, g: u64, d: u64) -> Result<(RootValue, Option<BigInt>)> {
        let raw = self.evaluate(g, d)?;
        let rounded = match &raw {
            RootValue::Rational(r) => {
                if r.is_integer() {
                    Some(r.to_integer())
                } else {
                    None
                }
            }
            RootValue::Quadratic(_) => None,
            RootValue::Numeric(v) => {
                let n = v.round_to_bigint();
                let dist = v.sub(&BigDec::from_bigint(&n, v.prec())).abs();
                let tol = BigDec::from_rat(
                    &crate::rational::rat_frac(1, 10_000_000_000i64),
                    v.prec(),
                );
                if dist.cmp_value(&tol) != std::cmp::Ordering::Greater {
                    Some(n)
                } else {
                    None
                }
            }
        };
        Ok((raw, rounded))
    }

    /// Truncate a stored value to the declared precision for presentation;
    /// stored numerics may carry guard digits.
    fn presented(&self, v: &RootValue) -> RootValue {
        match v {
            RootValue::Numeric(d) if d.prec() > self.digits => {
                RootValue::Numeric(d.with_prec(self.digits))
            }
            other => other.clone(),
        }
    }

    pub fn to_json(&self) -> Json {
        let terms: Vec<Json> = self
            .terms
            .iter()
            .map(|t| {
                json!({
                    "weight": value_to_json(&self.presented(&t.weight)),
                    "base": value_to_json(&self.presented(&t.base)),
                    "parity": t.parity.as_str(),
                })
            })
            .collect();
        let mut obj = json!({
            "space": self.space,
            "provenance": self.provenance.as_str(),
            "field": self.field_kind(),
            "q_degree": self.q_degree,
            "dim": self.dim,
            "ord_point": self.ord_point,
            "terms": terms,
        });
        if self.terms.iter().any(|t| {
            matches!(t.weight, RootValue::Numeric(_)) || matches!(t.base, RootValue::Numeric(_))
        }) {
            obj.as_object_mut()
                .unwrap()
                .insert("digits".to_string(), json!(self.digits));
        }
        obj
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for t in &self.terms {
            let mut s = String::new();
            if t.parity != Parity::None {
                s.push_str(t.parity.as_str());
                s.push_str(" * ");
            }
            s.push_str(&value_display(&self.presented(&t.weight)));
            s.push_str(" * ");
            s.push_str(&value_display(&self.presented(&t.base)));
            s.push_str("^g");
            parts.push(s);
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Convenience for building rational terms.
pub fn rational_term(weight: Rat, base: i64, parity: Parity) -> Term {
    Term {
        weight: RootValue::Rational(weight),
        base: RootValue::Rational(rat_int(base)),
        parity,
    }
}

/// True when the rational is a non-negative integer.
pub fn is_nonneg_integer(r: &Rat) -> bool {
    r.is_integer() && !r.numer().is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_frac;

    fn quad(a: Rat, b: Rat, k: u64) -> RootValue {
        RootValue::Quadratic(QuadExt::new(a, b, k).unwrap())
    }

    #[test]
    fn rational_terms_evaluate_exactly() {
        // 1/6·36^g + 1/2·12^g + 1/3·9^g
        let form = ClosedForm {
            space: "gr:2,6".into(),
            q_degree: 6,
            dim: 8,
            ord_point: 3,
            provenance: Provenance::Synthesized,
            digits: 0,
            terms: vec![
                rational_term(rat_frac(1, 6), 36, Parity::None),
                rational_term(rat_frac(1, 2), 12, Parity::None),
                rational_term(rat_frac(1, 3), 9, Parity::None),
            ],
        };
        assert_eq!(form.evaluate(0, 0).unwrap(), RootValue::Rational(rat_int(1)));
        assert_eq!(
            form.evaluate(2, 0).unwrap(),
            RootValue::Rational(rat_int(216 + 72 + 27))
        );
        assert_eq!(form.field_kind(), "rational");
    }

    #[test]
    fn conjugate_surd_terms_cancel() {
        // (1/2 - √5/10)·(25/2 + 5√5/2)^g + conjugate
        let form = ClosedForm {
            space: "gr:2,5".into(),
            q_degree: 5,
            dim: 6,
            ord_point: 5,
            provenance: Provenance::Synthesized,
            digits: 0,
            terms: vec![
                Term {
                    weight: quad(rat_frac(1, 2), rat_frac(-1, 10), 5),
                    base: quad(rat_frac(25, 2), rat_frac(5, 2), 5),
                    parity: Parity::None,
                },
                Term {
                    weight: quad(rat_frac(1, 2), rat_frac(1, 10), 5),
                    base: quad(rat_frac(25, 2), rat_frac(-5, 2), 5),
                    parity: Parity::None,
                },
            ],
        };
        assert_eq!(form.evaluate(0, 0).unwrap(), RootValue::Rational(rat_int(1)));
        assert_eq!(form.evaluate(1, 0).unwrap(), RootValue::Rational(rat_int(10)));
        assert_eq!(form.evaluate(2, 0).unwrap(), RootValue::Rational(rat_int(125)));
        assert_eq!(form.field_kind(), "quadratic-surd(5)");
    }

    #[test]
    fn parity_signs_follow_degree() {
        let form = ClosedForm {
            space: "q:3".into(),
            q_degree: 3,
            dim: 3,
            ord_point: 2,
            provenance: Provenance::Catalog,
            digits: 0,
            terms: vec![
                rational_term(rat_frac(1, 2), 6, Parity::None),
                rational_term(rat_frac(1, 2), 2, Parity::PowD),
            ],
        };
        // (6^g + (-1)^d 2^g)/2
        assert_eq!(form.evaluate(1, 2).unwrap(), RootValue::Rational(rat_int(4)));
        assert_eq!(form.evaluate(1, 3).unwrap(), RootValue::Rational(rat_int(2)));

        let half = ClosedForm {
            space: "t".into(),
            q_degree: 1,
            dim: 1,
            ord_point: 1,
            provenance: Provenance::Catalog,
            digits: 0,
            terms: vec![rational_term(rat_int(1), 5, Parity::PowHalfD)],
        };
        assert!(matches!(
            half.evaluate(1, 3),
            Err(Error::InadmissibleParity(_))
        ));
        assert_eq!(half.evaluate(1, 2).unwrap(), RootValue::Rational(rat_int(-5)));
        assert_eq!(half.evaluate(1, 4).unwrap(), RootValue::Rational(rat_int(5)));
    }

    #[test]
    fn numeric_terms_promote_the_whole_sum() {
        let prec = 40;
        let sqrt2 = BigDec::from_int(2, prec).sqrt();
        let form = ClosedForm {
            space: "t".into(),
            q_degree: 1,
            dim: 1,
            ord_point: 1,
            provenance: Provenance::Synthesized,
            digits: prec,
            terms: vec![
                Term {
                    weight: RootValue::Rational(rat_int(1)),
                    base: RootValue::Numeric(sqrt2),
                    parity: Parity::None,
                },
                rational_term(rat_int(3), 1, Parity::None),
            ],
        };
        let v = form.evaluate(2, 0).unwrap();
        match v {
            RootValue::Numeric(d) => {
                // sqrt(2)^2 + 3 = 5 up to representation error
                let five = BigDec::from_int(5, prec);
                let err = d.sub(&five).abs();
                let tol = BigDec::from_rat(&rat_frac(1, 10i64.pow(18)), prec);
                assert!(err.cmp_value(&tol) == std::cmp::Ordering::Less);
            }
            other => panic!("expected numeric value, got {other:?}"),
        }
        assert_eq!(form.field_kind(), "high-precision");

        let (_, rounded) = form.evaluate_rounded(2, 0).unwrap();
        assert_eq!(rounded, Some(BigInt::from(5)));
    }

    #[test]
    fn json_shapes_are_stable() {
        let form = ClosedForm {
            space: "gr:2,5".into(),
            q_degree: 5,
            dim: 6,
            ord_point: 5,
            provenance: Provenance::Synthesized,
            digits: 0,
            terms: vec![Term {
                weight: quad(rat_frac(1, 2), rat_frac(-1, 10), 5),
                base: quad(rat_frac(25, 2), rat_frac(5, 2), 5),
                parity: Parity::None,
            }],
        };
        let j = form.to_json();
        assert_eq!(j["field"], "quadratic-surd(5)");
        assert_eq!(j["terms"][0]["weight"]["radicand"], 5);
        assert_eq!(j["terms"][0]["weight"]["surd_coeff"], "-1/10");
        assert_eq!(j["terms"][0]["parity"], "none");
        // keys serialize alphabetically, so output is byte-deterministic
        let s = serde_json::to_string(&j).unwrap();
        assert!(s.starts_with("{\"dim\":6,\"field\""));

        let rat_only = ClosedForm {
            space: "p:2".into(),
            q_degree: 3,
            dim: 2,
            ord_point: 3,
            provenance: Provenance::Synthesized,
            digits: 0,
            terms: vec![rational_term(rat_frac(1, 3), 9, Parity::None)],
        };
        let j2 = rat_only.to_json();
        assert_eq!(j2["terms"][0]["weight"], "1/3");
        assert!(j2.get("digits").is_none());
        assert_eq!(
            format!("{rat_only}"),
            "1/3 * 9^g"
        );
    }
}

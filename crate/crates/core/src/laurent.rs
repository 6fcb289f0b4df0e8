//! Sparse Laurent polynomials in the quantum parameter `q`.
//!
//! Exponents are signed (the localized rings invert `q`), coefficients are
//! exact rationals, and zero coefficients are pruned on every operation so
//! equality is plain structural equality.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::rational::{rat_int, rat_to_string, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rat>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(0, rat_int(1))
    }

    pub fn monomial(exp: i64, coeff: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        LaurentPoly { terms }
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (i64, Rat)>) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in iter {
            p.add_term(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> Rat {
        self.terms.get(&exp).cloned().unwrap_or_else(|| rat_int(0))
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rat)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Lowest exponent present, if any.
    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add_term(&mut self, exp: i64, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(|| rat_int(0));
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in other.terms.iter() {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms.iter() {
            for (e2, c2) in other.terms.iter() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, k)| (*e, k * c)).collect(),
        }
    }

    /// Multiply by q^shift.
    pub fn shift(&self, shift: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + shift, c.clone())).collect(),
        }
    }

    /// True if every exponent is >= 0 (polynomial part of the localization).
    pub fn is_polynomial(&self) -> bool {
        self.min_exp().map_or(true, |e| e >= 0)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter() {
            let cs = rat_to_string(c);
            let (sign, mag) = match cs.strip_prefix('-') {
                Some(rest) => ("-", rest.to_string()),
                None => ("+", cs),
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            match (*e, mag.as_str()) {
                (0, m) => write!(f, "{}", m)?,
                (1, "1") => write!(f, "q")?,
                (1, m) => write!(f, "{}*q", m)?,
                (e, "1") => write!(f, "q^{}", e)?,
                (e, m) => write!(f, "{}*q^{}", m, e)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_frac;
    use proptest::prelude::*;

    fn poly(v: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(v.iter().map(|(e, c)| (*e, rat_int(*c))))
    }

    #[test]
    fn arithmetic_prunes_zeros() {
        let p = poly(&[(0, 1), (2, 3)]);
        let q = poly(&[(0, -1), (1, 5)]);
        let s = p.add(&q);
        assert_eq!(s, poly(&[(1, 5), (2, 3)]));
        assert!(p.sub(&p).is_zero());
    }

    #[test]
    fn multiplication_convolves_exponents() {
        // (q^-1 + 2)(q - 3) = 1 - 3q^-1 + 2q - 6
        let p = poly(&[(-1, 1), (0, 2)]);
        let q = poly(&[(1, 1), (0, -3)]);
        assert_eq!(p.mul(&q), poly(&[(-1, -3), (0, -5), (1, 2)]));
    }

    #[test]
    fn display_is_readable() {
        let p = LaurentPoly::from_terms([(0, rat_int(6)), (1, rat_int(2))]);
        assert_eq!(p.to_string(), "6 + 2*q");
        let m = LaurentPoly::from_terms([(3, rat_frac(5, 2)), (1, rat_int(-2))]);
        assert_eq!(m.to_string(), "-2*q + 5/2*q^3");
    }

    proptest! {
        #[test]
        fn ring_axioms(a in prop::collection::vec((-4i64..5, -6i64..7), 0..6),
                       b in prop::collection::vec((-4i64..5, -6i64..7), 0..6),
                       c in prop::collection::vec((-4i64..5, -6i64..7), 0..6)) {
            let pa = LaurentPoly::from_terms(a.into_iter().map(|(e, k)| (e, rat_int(k))));
            let pb = LaurentPoly::from_terms(b.into_iter().map(|(e, k)| (e, rat_int(k))));
            let pc = LaurentPoly::from_terms(c.into_iter().map(|(e, k)| (e, rat_int(k))));
            prop_assert_eq!(pa.add(&pb), pb.add(&pa));
            prop_assert_eq!(pa.mul(&pb), pb.mul(&pa));
            prop_assert_eq!(pa.mul(&pb.add(&pc)), pa.mul(&pb).add(&pa.mul(&pc)));
            prop_assert_eq!(pa.mul(&pb).mul(&pc), pa.mul(&pb.mul(&pc)));
        }
    }
}

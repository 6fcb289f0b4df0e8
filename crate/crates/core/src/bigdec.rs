//! Fixed-point arbitrary-precision decimals and complex numbers.
//!
//! A value is mant / 10^prec with a BigInt mantissa; every operation keeps
//! the precision of its operands (which must agree) and rounds to nearest.
//! Just enough real/complex analysis lives here for evaluating closed forms
//! whose constants involve sqrt, arctan, sin, and cos: Taylor series at
//! small arguments, which is the only regime the callers use.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::rational::Rat;

fn pow10(p: u32) -> BigInt {
    BigInt::from(10u32).pow(p)
}

/// Nearest-integer division, ties toward +infinity. d must be positive.
fn div_round(n: &BigInt, d: &BigInt) -> BigInt {
    debug_assert!(d.is_positive());
    num_integer::Integer::div_floor(&(n * 2 + d), &(d * 2))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BigDec {
    mant: BigInt,
    prec: u32,
}

impl BigDec {
    pub fn zero(prec: u32) -> Self {
        BigDec {
            mant: BigInt::from(0),
            prec,
        }
    }

    pub fn from_int(v: i64, prec: u32) -> Self {
        BigDec {
            mant: BigInt::from(v) * pow10(prec),
            prec,
        }
    }

    pub fn from_bigint(v: &BigInt, prec: u32) -> Self {
        BigDec {
            mant: v * pow10(prec),
            prec,
        }
    }

    pub fn from_rat(v: &Rat, prec: u32) -> Self {
        let scaled = v.numer() * pow10(prec);
        let denom = v.denom();
        if denom.is_negative() {
            BigDec {
                mant: div_round(&-scaled, &-denom),
                prec,
            }
        } else {
            BigDec {
                mant: div_round(&scaled, denom),
                prec,
            }
        }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.prec, other.prec, "mixed precisions");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        BigDec {
            mant: &self.mant + &other.mant,
            prec: self.prec,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        BigDec {
            mant: &self.mant - &other.mant,
            prec: self.prec,
        }
    }

    pub fn neg(&self) -> Self {
        BigDec {
            mant: -&self.mant,
            prec: self.prec,
        }
    }

    pub fn abs(&self) -> Self {
        BigDec {
            mant: self.mant.abs(),
            prec: self.prec,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        BigDec {
            mant: div_round(&(&self.mant * &other.mant), &pow10(self.prec)),
            prec: self.prec,
        }
    }

    pub fn mul_int(&self, k: i64) -> Self {
        BigDec {
            mant: &self.mant * BigInt::from(k),
            prec: self.prec,
        }
    }

    pub fn div_int(&self, k: i64) -> Self {
        assert!(k != 0);
        let (n, d) = if k < 0 {
            (-&self.mant, BigInt::from(-k))
        } else {
            (self.mant.clone(), BigInt::from(k))
        };
        BigDec {
            mant: div_round(&n, &d),
            prec: self.prec,
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.check(other);
        assert!(!other.is_zero(), "division by zero");
        let (n, d) = if other.mant.is_negative() {
            (-&self.mant, -&other.mant)
        } else {
            (self.mant.clone(), other.mant.clone())
        };
        BigDec {
            mant: div_round(&(n * pow10(self.prec)), &d),
            prec: self.prec,
        }
    }

    /// Floor-rounded square root of a non-negative value.
    pub fn sqrt(&self) -> Self {
        assert!(!self.is_negative(), "sqrt of a negative value");
        BigDec {
            mant: (&self.mant * pow10(self.prec)).sqrt(),
            prec: self.prec,
        }
    }

    pub fn cmp_value(&self, other: &Self) -> Ordering {
        self.check(other);
        self.mant.cmp(&other.mant)
    }

    pub fn round_to_bigint(&self) -> BigInt {
        div_round(&self.mant, &pow10(self.prec))
    }

    /// Exact value of the stored fixed-point number.
    pub fn to_rat(&self) -> Rat {
        Rat::new(self.mant.clone(), pow10(self.prec))
    }

    /// Re-rounded copy at a different precision.
    pub fn with_prec(&self, prec: u32) -> Self {
        if prec >= self.prec {
            BigDec {
                mant: &self.mant * pow10(prec - self.prec),
                prec,
            }
        } else {
            BigDec {
                mant: div_round(&self.mant, &pow10(self.prec - prec)),
                prec,
            }
        }
    }

    /// Decimal string with all prec fractional digits.
    pub fn to_decimal_string(&self) -> String {
        let neg = self.mant.is_negative();
        let abs = self.mant.abs();
        let scale = pow10(self.prec);
        let int_part = &abs / &scale;
        let frac_part = &abs % &scale;
        let frac_str = format!("{:0>width$}", frac_part, width = self.prec as usize);
        format!("{}{}.{}", if neg { "-" } else { "" }, int_part, frac_str)
    }

    /// arctan by Taylor series; requires |x| < 1/2 where convergence is fast.
    pub fn arctan_small(&self) -> Self {
        assert!(
            self.abs().cmp_value(&BigDec::from_rat(&crate::rational::rat_frac(1, 2), self.prec))
                == Ordering::Less,
            "arctan series wants |x| < 1/2"
        );
        let x2 = self.mul(self);
        let mut term = self.clone();
        let mut acc = self.clone();
        let mut k: i64 = 0;
        while !term.is_zero() {
            term = term.mul(&x2).neg().mul_int(2 * k + 1).div_int(2 * k + 3);
            acc = acc.add(&term);
            k += 1;
        }
        acc
    }

    /// sin by Taylor series; requires |x| < 1.
    pub fn sin_small(&self) -> Self {
        assert!(
            self.abs().cmp_value(&BigDec::from_int(1, self.prec)) == Ordering::Less,
            "sin series wants |x| < 1"
        );
        let x2 = self.mul(self);
        let mut term = self.clone();
        let mut acc = self.clone();
        let mut k: i64 = 0;
        while !term.is_zero() {
            term = term.mul(&x2).neg().div_int((2 * k + 2) * (2 * k + 3));
            acc = acc.add(&term);
            k += 1;
        }
        acc
    }

    /// cos by Taylor series; requires |x| < 1.
    pub fn cos_small(&self) -> Self {
        assert!(
            self.abs().cmp_value(&BigDec::from_int(1, self.prec)) == Ordering::Less,
            "cos series wants |x| < 1"
        );
        let x2 = self.mul(self);
        let mut term = BigDec::from_int(1, self.prec);
        let mut acc = term.clone();
        let mut k: i64 = 0;
        while !term.is_zero() {
            term = term.mul(&x2).neg().div_int((2 * k + 1) * (2 * k + 2));
            acc = acc.add(&term);
            k += 1;
        }
        acc
    }

    pub fn to_f64(&self) -> f64 {
        self.to_rat().to_f64().unwrap_or(f64::NAN)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BigComplex {
    pub re: BigDec,
    pub im: BigDec,
}

impl BigComplex {
    pub fn new(re: BigDec, im: BigDec) -> Self {
        re.check(&im);
        BigComplex { re, im }
    }

    pub fn from_real(re: BigDec) -> Self {
        let prec = re.prec();
        BigComplex {
            re,
            im: BigDec::zero(prec),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        BigComplex {
            re: self.re.add(&other.re),
            im: self.im.add(&other.im),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        BigComplex {
            re: self.re.sub(&other.re),
            im: self.im.sub(&other.im),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        BigComplex {
            re: self.re.mul(&other.re).sub(&self.im.mul(&other.im)),
            im: self.re.mul(&other.im).add(&self.im.mul(&other.re)),
        }
    }

    pub fn conj(&self) -> Self {
        BigComplex {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    pub fn abs_sq(&self) -> BigDec {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn div(&self, other: &Self) -> Self {
        let d = other.abs_sq();
        let num = self.mul(&other.conj());
        BigComplex {
            re: num.re.div(&d),
            im: num.im.div(&d),
        }
    }

    pub fn powi(&self, e: u32) -> Self {
        let prec = self.re.prec();
        let mut acc = BigComplex::from_real(BigDec::from_int(1, prec));
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

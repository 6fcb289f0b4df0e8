//! Exact arithmetic in quadratic extensions Q(sqrt(k)).
//!
//! Eigenvalues of the transition operators live in Q or in a real quadratic
//! field, so a + b*sqrt(k) with rational a, b and squarefree k >= 2 covers
//! every exact closed form we synthesize. Elements with b = 0 carry k = 0
//! and mix freely with any extension.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{rat_int, Rat};

/// The handful of field operations the exact linear algebra needs.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn is_zero(&self) -> bool;
    fn from_rat(r: &Rat) -> Self;
}

impl Field for Rat {
    fn zero() -> Self {
        rat_int(0)
    }
    fn one() -> Self {
        rat_int(1)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
}

pub fn is_squarefree(k: u64) -> bool {
    if k < 2 {
        return false;
    }
    let mut n = k;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// a + b*sqrt(k). Invariant: b = 0 forces k = 0; otherwise k is squarefree
/// and at least 2, so the representation is unique.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadExt {
    a: Rat,
    b: Rat,
    k: u64,
}

impl QuadExt {
    pub fn rational(a: Rat) -> Self {
        QuadExt {
            a,
            b: rat_int(0),
            k: 0,
        }
    }

    pub fn new(a: Rat, b: Rat, k: u64) -> Result<Self> {
        if Zero::is_zero(&b) {
            return Ok(QuadExt::rational(a));
        }
        if !is_squarefree(k) {
            return Err(Error::OutOfRange(format!(
                "sqrt({}) is not in lowest form",
                k
            )));
        }
        Ok(QuadExt { a, b, k })
    }

    pub fn rational_part(&self) -> &Rat {
        &self.a
    }

    pub fn surd_part(&self) -> &Rat {
        &self.b
    }

    pub fn radicand(&self) -> u64 {
        self.k
    }

    pub fn is_rational(&self) -> bool {
        self.k == 0
    }

    /// As an exact rational if the surd part vanishes.
    pub fn to_rat(&self) -> Option<Rat> {
        if self.k == 0 {
            Some(self.a.clone())
        } else {
            None
        }
    }

    pub fn conjugate(&self) -> Self {
        QuadExt {
            a: self.a.clone(),
            b: -&self.b,
            k: self.k,
        }
    }

    fn unified_k(&self, other: &Self) -> u64 {
        match (self.k, other.k) {
            (0, k) | (k, 0) => k,
            (k1, k2) => {
                assert_eq!(k1, k2, "mixing sqrt({}) with sqrt({})", k1, k2);
                k1
            }
        }
    }

    /// Exact sign: -1, 0, or +1.
    pub fn sign(&self) -> i32 {
        let sa = rat_sign(&self.a);
        let sb = rat_sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // Opposite signs: the larger square wins.
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * rat_int(self.k as i64);
        match lhs.cmp(&rhs) {
            std::cmp::Ordering::Greater => sa,
            std::cmp::Ordering::Less => sb,
            std::cmp::Ordering::Equal => 0,
        }
    }

    /// Exact order, valid whenever the two values live in one extension.
    pub fn cmp_exact(&self, other: &Self) -> std::cmp::Ordering {
        match self.sub(other).sign() {
            s if s < 0 => std::cmp::Ordering::Less,
            0 => std::cmp::Ordering::Equal,
            _ => std::cmp::Ordering::Greater,
        }
    }

    pub fn approx(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * (self.k as f64).sqrt()
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut base = self.clone();
        let mut e = e;
        let mut acc = QuadExt::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

fn rat_sign(x: &Rat) -> i32 {
    if Zero::is_zero(x) {
        0
    } else if x.numer().is_negative() {
        -1
    } else {
        1
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use crate::rational::rat_to_string;
        if self.k == 0 {
            return write!(f, "{}", rat_to_string(&self.a));
        }
        let b_abs = self.b.abs();
        let surd = if b_abs == rat_int(1) {
            format!("sqrt({})", self.k)
        } else {
            format!("{}*sqrt({})", rat_to_string(&b_abs), self.k)
        };
        if Zero::is_zero(&self.a) {
            if rat_sign(&self.b) < 0 {
                return write!(f, "-{}", surd);
            }
            return write!(f, "{}", surd);
        }
        let op = if rat_sign(&self.b) < 0 { "-" } else { "+" };
        write!(f, "{} {} {}", rat_to_string(&self.a), op, surd)
    }
}

impl Field for QuadExt {
    fn zero() -> Self {
        QuadExt::rational(rat_int(0))
    }
    fn one() -> Self {
        QuadExt::rational(rat_int(1))
    }
    fn add(&self, other: &Self) -> Self {
        let k = self.unified_k(other);
        let b = &self.b + &other.b;
        QuadExt {
            a: &self.a + &other.a,
            k: if Zero::is_zero(&b) { 0 } else { k },
            b,
        }
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        let k = self.unified_k(other);
        let kr = rat_int(k as i64);
        let a = &self.a * &other.a + &self.b * &other.b * &kr;
        let b = &self.a * &other.b + &self.b * &other.a;
        QuadExt {
            a,
            k: if Zero::is_zero(&b) { 0 } else { k },
            b,
        }
    }
    fn neg(&self) -> Self {
        QuadExt {
            a: -&self.a,
            b: -&self.b,
            k: self.k,
        }
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // 1/(a + b sqrt k) = (a - b sqrt k)/(a^2 - b^2 k)
        let norm = &self.a * &self.a - &self.b * &self.b * rat_int(self.k as i64);
        debug_assert!(!Zero::is_zero(&norm), "sqrt({}) must be irrational", self.k);
        let inv_norm = norm.recip();
        Some(QuadExt {
            a: &self.a * &inv_norm,
            b: -&self.b * &inv_norm,
            k: self.k,
        })
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.a) && Zero::is_zero(&self.b)
    }
    fn from_rat(r: &Rat) -> Self {
        QuadExt::rational(r.clone())
    }
}

/// Split n = s^2 * k with k squarefree, certifying k by trial division.
/// None when the leftover cofactor cannot be certified or exceeds u64.
pub fn square_part(n: &BigInt) -> Option<(BigInt, u64)> {
    if n.is_negative() || n.is_zero() {
        return None;
    }
    let mut rem = n.clone();
    let mut s = BigInt::from(1);
    let mut k = BigInt::from(1);
    let mut p = BigInt::from(2);
    let limit = BigInt::from(1_000_000u64);
    while &p * &p <= rem && p <= limit {
        let mut count = 0u32;
        while (&rem % &p).is_zero() {
            rem /= &p;
            count += 1;
        }
        s *= p.pow(count / 2);
        if count % 2 == 1 {
            k *= &p;
        }
        p += 1;
    }
    if rem > BigInt::from(1) {
        // Leftover has no prime factor below the limit: either a perfect
        // square of a large prime or (assumed) squarefree.
        let root = rem.sqrt();
        if &root * &root == rem {
            s *= root;
        } else if rem < BigInt::from(u64::MAX) {
            k *= &rem;
        } else {
            return None;
        }
    }
    let k64 = k.to_u64()?;
    if k64 > 1 && !is_squarefree(k64) {
        return None;
    }
    Some((s, k64))
}

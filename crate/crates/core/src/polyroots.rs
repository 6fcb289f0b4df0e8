//! Real roots of monic rational polynomials, exactly where possible.
//!
//! The inputs are characteristic polynomials of small symmetric integer
//! matrices, so every root is expected to be real. Rational roots and roots
//! of quadratic factors come out exactly (the latter as quadratic surds);
//! anything irreducible of degree >= 3 is isolated by Sturm sequences and
//! refined by bisection to a requested number of decimal digits, then an
//! attempt is made to recover exact quadratic factors by pairing the
//! approximations and verifying with exact division. A nonreal root is an
//! error, never a silent omission.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::bigdec::BigDec;
use crate::error::{Error, Result};
use crate::rational::{rat_big, rat_int, Rat};
use crate::surd::{square_part, QuadExt};

#[derive(Clone, Debug, PartialEq)]
pub enum RootValue {
    Rational(Rat),
    Quadratic(QuadExt),
    Numeric(BigDec),
}

impl RootValue {
    pub fn is_exact(&self) -> bool {
        !matches!(self, RootValue::Numeric(_))
    }

    pub fn approx_f64(&self) -> f64 {
        match self {
            RootValue::Rational(r) => num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::NAN),
            RootValue::Quadratic(q) => q.approx(),
            RootValue::Numeric(d) => d.to_f64(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RootSet {
    /// (root, multiplicity), descending by value.
    pub roots: Vec<(RootValue, usize)>,
    /// True when every root is rational or a quadratic surd.
    pub exact: bool,
}

// ---- small exact polynomial helpers (ascending coefficients) ----

fn trim(p: &mut Vec<Rat>) {
    while p.len() > 1 && Zero::is_zero(p.last().unwrap()) {
        p.pop();
    }
}

fn degree(p: &[Rat]) -> usize {
    p.len() - 1
}

fn eval(p: &[Rat], x: &Rat) -> Rat {
    let mut acc = rat_int(0);
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn derivative(p: &[Rat]) -> Vec<Rat> {
    if p.len() <= 1 {
        return vec![rat_int(0)];
    }
    let mut d: Vec<Rat> = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * rat_int(i as i64))
        .collect();
    trim(&mut d);
    d
}

/// Quotient and remainder of a by b (b nonzero).
fn div_rem(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let db = degree(b);
    let lead = b[db].clone();
    assert!(!Zero::is_zero(&lead), "division by zero polynomial");
    let mut rem: Vec<Rat> = a.to_vec();
    trim(&mut rem);
    if degree(&rem) < db {
        return (vec![rat_int(0)], rem);
    }
    let mut quot = vec![rat_int(0); degree(&rem) - db + 1];
    while !is_zero_poly(&rem) && degree(&rem) >= db {
        let dr = degree(&rem);
        let coef = &rem[dr] / &lead;
        quot[dr - db] = coef.clone();
        for i in 0..=db {
            let v = &rem[dr - db + i] - &coef * &b[i];
            rem[dr - db + i] = v;
        }
        // The leading term cancels exactly, so trim always shrinks rem.
        trim(&mut rem);
        if rem.len() == 1 && Zero::is_zero(&rem[0]) {
            break;
        }
    }
    trim(&mut quot);
    (quot, rem)
}

fn is_zero_poly(p: &[Rat]) -> bool {
    p.iter().all(Zero::is_zero)
}

fn make_monic(p: &[Rat]) -> Vec<Rat> {
    let lead = p.last().unwrap();
    assert!(!Zero::is_zero(lead));
    let inv = lead.recip();
    p.iter().map(|c| c * &inv).collect()
}

fn gcd_poly(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !is_zero_poly(&y) {
        let (_, r) = div_rem(&x, &y);
        x = y;
        y = r;
        trim(&mut y);
    }
    if is_zero_poly(&x) {
        x
    } else {
        make_monic(&x)
    }
}

/// Yun's squarefree decomposition: p = prod u_i^i, u_i squarefree and
/// pairwise coprime. Returns the (u_i, i) with deg u_i > 0.
fn squarefree_decomposition(p: &[Rat]) -> Vec<(Vec<Rat>, usize)> {
    let dp = derivative(p);
    let a = gcd_poly(p, &dp);
    if degree(&a) == 0 {
        return vec![(make_monic(p), 1)];
    }
    let (mut b, r) = div_rem(p, &a);
    debug_assert!(is_zero_poly(&r));
    let (c0, r) = div_rem(&dp, &a);
    debug_assert!(is_zero_poly(&r));
    let mut d = sub_poly(&c0, &derivative(&b));
    let mut out = Vec::new();
    let mut i = 1;
    while degree(&b) > 0 {
        let u = gcd_poly(&b, &d);
        if degree(&u) > 0 {
            out.push((u.clone(), i));
        }
        let (bn, r) = div_rem(&b, &u);
        debug_assert!(is_zero_poly(&r));
        let (cn, r) = div_rem(&d, &u);
        debug_assert!(is_zero_poly(&r));
        b = bn;
        d = sub_poly(&cn, &derivative(&b));
        i += 1;
    }
    out
}

fn sub_poly(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(|| rat_int(0));
        let y = b.get(i).cloned().unwrap_or_else(|| rat_int(0));
        out.push(x - y);
    }
    trim(&mut out);
    out
}

// ---- Sturm sequences ----

fn sturm_chain(p: &[Rat]) -> Vec<Vec<Rat>> {
    let mut chain = vec![p.to_vec(), derivative(p)];
    loop {
        let n = chain.len();
        if degree(&chain[n - 1]) == 0 || is_zero_poly(&chain[n - 1]) {
            break;
        }
        let (_, r) = div_rem(&chain[n - 2], &chain[n - 1]);
        if is_zero_poly(&r) {
            break;
        }
        chain.push(r.iter().map(|c| -c).collect());
    }
    chain
}

fn sign_variations(chain: &[Vec<Rat>], x: &Rat) -> usize {
    let mut count = 0;
    let mut last = 0i32;
    for p in chain {
        let v = eval(p, x);
        let s = if Zero::is_zero(&v) {
            0
        } else if v.numer().is_negative() {
            -1
        } else {
            1
        };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Number of distinct real roots of p (counted without multiplicity after
/// squarefree reduction of the Sturm chain's leading polynomial).
pub fn count_real_roots(p: &[Rat]) -> usize {
    let mut q = p.to_vec();
    trim(&mut q);
    if degree(&q) == 0 {
        return 0;
    }
    // Work with the squarefree part so the chain behaves.
    let g = gcd_poly(&q, &derivative(&q));
    let (sf, _) = div_rem(&q, &g);
    let chain = sturm_chain(&sf);
    let b = cauchy_bound(&sf);
    sign_variations(&chain, &-&b) - sign_variations(&chain, &b)
}

/// True when every root of p is real: the squarefree part has as many
/// distinct real roots as its degree says it has roots at all.
pub fn all_roots_real(p: &[Rat]) -> bool {
    let mut q = p.to_vec();
    trim(&mut q);
    if degree(&q) == 0 {
        return true;
    }
    let g = gcd_poly(&q, &derivative(&q));
    let (sf, _) = div_rem(&q, &g);
    count_real_roots(&sf) == degree(&sf)
}

/// 1 + max |a_i| / |lead|: every real root lies strictly inside (-B, B).
fn cauchy_bound(p: &[Rat]) -> Rat {
    let lead = p.last().unwrap().clone();
    let mut max = rat_int(0);
    for c in &p[..p.len() - 1] {
        let a = (c / &lead).abs();
        if a > max {
            max = a;
        }
    }
    max + rat_int(1)
}

/// Half-open isolating intervals (lo, hi], one distinct root each, for a
/// squarefree p whose value is nonzero at every endpoint produced. If a
/// bisection point happens to be a root, it is returned in `rational_hits`
/// and the caller deflates and restarts.
fn isolate(
    chain: &[Vec<Rat>],
    p: &[Rat],
    lo: Rat,
    hi: Rat,
    count: usize,
    out: &mut Vec<(Rat, Rat)>,
) -> Option<Rat> {
    if count == 0 {
        return None;
    }
    if count == 1 {
        out.push((lo, hi));
        return None;
    }
    let mid = (&lo + &hi) / rat_int(2);
    if Zero::is_zero(&eval(p, &mid)) {
        return Some(mid);
    }
    let v_lo = sign_variations(chain, &lo);
    let v_mid = sign_variations(chain, &mid);
    let left = v_lo - v_mid;
    if let Some(hit) = isolate(chain, p, lo, mid.clone(), left, out) {
        return Some(hit);
    }
    isolate(chain, p, mid, hi, count - left, out)
}

/// Shrink a sign-change bracket until its width is below 10^-digits.
/// Returns either the exact rational root or the refined midpoint.
fn refine(p: &[Rat], mut lo: Rat, mut hi: Rat, digits: u32) -> RootValue {
    let width_goal = Rat::new(BigInt::one(), BigInt::from(10u32).pow(digits));
    let mut f_lo = eval(p, &lo);
    if Zero::is_zero(&f_lo) {
        return RootValue::Rational(lo);
    }
    let f_hi = eval(p, &hi);
    if Zero::is_zero(&f_hi) {
        return RootValue::Rational(hi);
    }
    debug_assert!(
        f_lo.numer().is_negative() != f_hi.numer().is_negative(),
        "bracket must change sign"
    );
    while &hi - &lo > width_goal {
        let mid = (&lo + &hi) / rat_int(2);
        let f_mid = eval(p, &mid);
        if Zero::is_zero(&f_mid) {
            return RootValue::Rational(mid);
        }
        if f_mid.numer().is_negative() == f_lo.numer().is_negative() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    let mid = (&lo + &hi) / rat_int(2);
    RootValue::Numeric(BigDec::from_rat(&mid, digits))
}

/// Roots of x^2 + bx + c, exact. Errors on a negative discriminant.
fn quadratic_roots(b: &Rat, c: &Rat) -> Result<Vec<RootValue>> {
    let disc = b * b - rat_int(4) * c;
    if disc.numer().is_negative() {
        return Err(Error::ComplexEigenvalue(format!(
            "x^2 + ({})x + ({}) has negative discriminant",
            b, c
        )));
    }
    // sqrt(num/den) = sqrt(num*den)/den
    let scaled = disc.numer() * disc.denom();
    let Some((s, k)) = square_part(&scaled) else {
        return Err(Error::OutOfRange(
            "discriminant too large to certify its square part".into(),
        ));
    };
    let coeff = rat_big(s) / rat_big(disc.denom().clone());
    let half = crate::rational::rat_frac(1, 2);
    let a0 = -b * &half;
    let b0 = &coeff * &half;
    if k == 1 {
        Ok(vec![
            RootValue::Rational(&a0 + &b0),
            RootValue::Rational(&a0 - &b0),
        ])
    } else {
        Ok(vec![
            RootValue::Quadratic(QuadExt::new(a0.clone(), b0.clone(), k)?),
            RootValue::Quadratic(QuadExt::new(a0, -b0, k)?),
        ])
    }
}

fn round_rat(x: &Rat) -> BigInt {
    let two = BigInt::from(2);
    num_integer::Integer::div_floor(&(x.numer() * &two + x.denom()), &(x.denom() * &two))
}

/// All real roots of a squarefree monic polynomial, every root required to
/// be real. `digits` controls the precision of any numeric leftovers.
fn roots_of_squarefree(u: &[Rat], digits: u32) -> Result<Vec<RootValue>> {
    let mut u = make_monic(u);
    let mut found = Vec::new();
    // Rational bisection hits deflate and restart.
    'restart: loop {
        let d = degree(&u);
        if d == 0 {
            break;
        }
        if d == 1 {
            found.push(RootValue::Rational(-u[0].clone()));
            break;
        }
        if d == 2 {
            found.extend(quadratic_roots(&u[1], &u[0])?);
            break;
        }
        if Zero::is_zero(&u[0]) {
            found.push(RootValue::Rational(rat_int(0)));
            let (q, _) = div_rem(&u, &[rat_int(0), rat_int(1)]);
            u = q;
            continue 'restart;
        }
        let chain = sturm_chain(&u);
        let bound = cauchy_bound(&u);
        let total = sign_variations(&chain, &-&bound) - sign_variations(&chain, &bound);
        if total < d {
            return Err(Error::ComplexEigenvalue(format!(
                "degree {} factor has only {} real roots",
                d, total
            )));
        }
        let mut intervals = Vec::new();
        if let Some(hit) = isolate(&chain, &u, -&bound, bound.clone(), total, &mut intervals) {
            found.push(RootValue::Rational(hit.clone()));
            let (q, r) = div_rem(&u, &[-hit, rat_int(1)]);
            debug_assert!(is_zero_poly(&r));
            u = q;
            continue 'restart;
        }
        // Refine every interval; exact rational hits also deflate.
        let mut approx: Vec<Rat> = Vec::new();
        for (lo, hi) in intervals {
            match refine(&u, lo, hi, digits + 10) {
                RootValue::Rational(x) => {
                    found.push(RootValue::Rational(x.clone()));
                    let (q, r) = div_rem(&u, &[-x, rat_int(1)]);
                    debug_assert!(is_zero_poly(&r));
                    u = q;
                    continue 'restart;
                }
                RootValue::Numeric(v) => approx.push(v.to_rat()),
                RootValue::Quadratic(_) => unreachable!(),
            }
        }
        // Check integer candidates near each approximation.
        for x in &approx {
            let cand = rat_big(round_rat(x));
            if Zero::is_zero(&eval(&u, &cand)) {
                found.push(RootValue::Rational(cand.clone()));
                let (q, r) = div_rem(&u, &[-cand, rat_int(1)]);
                debug_assert!(is_zero_poly(&r));
                u = q;
                continue 'restart;
            }
        }
        // Pair approximations into candidate monic integer quadratics and
        // verify by exact division.
        let tol = Rat::new(BigInt::one(), BigInt::from(10u32).pow(digits.min(20)));
        for i in 0..approx.len() {
            for j in (i + 1)..approx.len() {
                let sum = &approx[i] + &approx[j];
                let prod = &approx[i] * &approx[j];
                let b = rat_big(round_rat(&sum));
                let c = rat_big(round_rat(&prod));
                if (&sum - &b).abs() > tol || (&prod - &c).abs() > tol {
                    continue;
                }
                let quad = vec![c.clone(), -&b, rat_int(1)];
                let (q, r) = div_rem(&u, &quad);
                if is_zero_poly(&r) {
                    found.extend(quadratic_roots(&quad[1], &quad[0])?);
                    u = q;
                    continue 'restart;
                }
            }
        }
        // Nothing exact left: keep the numeric approximations.
        for x in approx {
            found.push(RootValue::Numeric(BigDec::from_rat(&x, digits)));
        }
        break;
    }
    Ok(found)
}

/// All roots of a monic polynomial with rational coefficients, with
/// multiplicities, sorted descending by value. Every root must be real.
pub fn real_roots(poly: &[Rat], digits: u32) -> Result<RootSet> {
    let mut p = poly.to_vec();
    trim(&mut p);
    assert!(degree(&p) >= 1, "constant polynomial has no roots");
    let p = make_monic(&p);
    let mut roots: Vec<(RootValue, usize)> = Vec::new();
    for (u, mult) in squarefree_decomposition(&p) {
        for root in roots_of_squarefree(&u, digits)? {
            roots.push((root, mult));
        }
    }
    roots.sort_by(|a, b| {
        b.0.approx_f64()
            .partial_cmp(&a.0.approx_f64())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let exact = roots.iter().all(|(r, _)| r.is_exact());
    Ok(RootSet { roots, exact })
}

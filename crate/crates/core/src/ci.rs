//! Power-basis quantum rings: projective space and complete intersections.
//!
//! For X = V(f_1,...,f_L) in P^{r+L} with degree vector m (all entries >= 2,
//! |m| <= r+L-1, and r >= 2|m|-2L-2 so the structural formulas are exact),
//! the star powers {H^*0, ..., H^*r} form a q-module basis and the whole ring
//! is the single relation `H^*(r+1) = m^m q H^*(|m|-L)` applied recursively. Projective space is the L = 0 case of everything
//! here. Degree-vector exponent notation follows the product convention:
//! m^{am+b} means prod_i m_i^{a m_i + b}, (m+b)! means prod_i (m_i + b)!, and
//! m^1 is the plain product of the m_i.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{factorial, rat_big, rat_int, rat_pow, Rat};
use crate::ring::{BasisLabel, QHElement, Ring, RingData, RingDescriptor, RingKind};
use std::sync::Arc;

pub(crate) struct PowerData {
    pub r: u32,
    pub degrees: Vec<u32>,
    pub ell: u32,
    pub msum: u32,
    /// deg q^2 == deg P, the edge of the exact range.
    pub border: bool,
    pub m_prod: BigInt,
    pub m_fact: BigInt,
    /// Two-pointed degree-one invariants c_0..c_{L+|m|}.
    pub c: Vec<Rat>,
    pub chi: BigInt,
    /// H^*s expanded in the basis, for s in 0..=2r.
    reduce: Vec<Vec<(i64, usize, Rat)>>,
}

impl PowerData {
    pub(crate) fn pair_product(&self, i: usize, j: usize) -> &[(i64, usize, Rat)] {
        &self.reduce[i + j]
    }

    pub(crate) fn index(&self) -> i64 {
        (self.r + self.ell + 1) as i64 - self.msum as i64
    }
}

/// prod_i m_i^{a m_i + b} as an exact rational.
pub fn m_power(degrees: &[u32], a: i64, b: i64) -> Rat {
    degrees
        .iter()
        .map(|&m| rat_pow(&rat_int(m as i64), a * m as i64 + b))
        .product()
}

/// prod_i (m_i + shift)! for shift in {-1, 0}.
pub fn m_factorial(degrees: &[u32], shift: i64) -> BigInt {
    degrees
        .iter()
        .map(|&m| factorial((m as i64 + shift) as u64))
        .product()
}

/// Coefficients of Psi(h1, h2) = prod_i prod_{j=0}^{m_i} (j h1 + (m_i - j) h2)
/// as a polynomial in h1 (entry t is the h1^t h2^{L+|m|-t} coefficient).
pub fn psi_coefficients(degrees: &[u32]) -> Vec<BigInt> {
    let mut poly = vec![BigInt::one()];
    for &m in degrees {
        for j in 0..=m {
            let c0 = BigInt::from(m - j);
            let c1 = BigInt::from(j);
            let mut next = vec![BigInt::zero(); poly.len() + 1];
            for (t, co) in poly.iter().enumerate() {
                next[t] += co * &c0;
                next[t + 1] += co * &c1;
            }
            poly = next;
        }
    }
    poly
}

/// The normalized constants c_t = [h1^t] Psi / m^1. Nonzero exactly for
/// L <= t <= |m|, symmetric about the middle, with c_L = m! and sum m^m.
pub fn ci_constants(degrees: &[u32]) -> Vec<Rat> {
    let m_prod: BigInt = degrees.iter().map(|&m| BigInt::from(m)).product();
    psi_coefficients(degrees)
        .into_iter()
        .map(|p| Rat::new(p, m_prod.clone()))
        .collect()
}

/// Topological Euler characteristic: m^1 [h^r] (1+h)^{r+L+1} / prod(1 + m_i h).
pub fn euler_characteristic(r: u32, degrees: &[u32]) -> BigInt {
    let n = r as usize;
    let total = r as u64 + degrees.len() as u64 + 1;
    let mut a: Vec<BigInt> = (0..=n)
        .map(|k| crate::rational::binomial(total, k as u64))
        .collect();
    for &m in degrees {
        let mi = BigInt::from(m);
        for k in 1..=n {
            let prev = a[k - 1].clone();
            a[k] -= &mi * prev;
        }
    }
    let m_prod: BigInt = degrees.iter().map(|&m| BigInt::from(m)).product();
    &a[n] * m_prod
}

pub(crate) fn build_ci_ring(r: u32, mut degrees: Vec<u32>) -> Result<Ring> {
    degrees.sort_unstable();
    if degrees.iter().any(|&m| m < 2) {
        return Err(Error::OutOfRange(
            "every defining degree must be at least 2".into(),
        ));
    }
    if r < 3 {
        return Err(Error::OutOfRange(
            "complete intersections need dimension r >= 3".into(),
        ));
    }
    let ell = degrees.len() as u32;
    let msum: u32 = degrees.iter().sum();
    if msum > r + ell - 1 {
        return Err(Error::OutOfRange(format!(
            "degree sum {} exceeds r + L - 1 = {}: the space is not Fano enough",
            msum,
            r + ell - 1
        )));
    }
    if (r as i64) < 2 * msum as i64 - 2 * ell as i64 - 2 {
        return Err(Error::OutOfRange(format!(
            "r = {} is below the exact range bound 2|m| - 2L - 2 = {}",
            r,
            2 * msum as i64 - 2 * ell as i64 - 2
        )));
    }
    build_power_ring(r, degrees)
}

pub(crate) fn build_power_ring(r: u32, degrees: Vec<u32>) -> Result<Ring> {
    let ell = degrees.len() as u32;
    let msum: u32 = degrees.iter().sum();
    let index = (r + ell + 1) as i64 - msum as i64;
    debug_assert!(index >= 2);
    let border = r as i64 == 2 * msum as i64 - 2 * ell as i64 - 2;
    let m_pow_m: BigInt = degrees
        .iter()
        .map(|&m| BigInt::from(m).pow(m))
        .product();
    let mut reduce = Vec::with_capacity(2 * r as usize + 1);
    for s in 0..=2 * r as i64 {
        let mut e = s;
        let mut k = 0u32;
        while e > r as i64 {
            e -= index;
            k += 1;
        }
        debug_assert!(e >= 0);
        reduce.push(vec![(
            k as i64,
            e as usize,
            rat_big(m_pow_m.pow(k)),
        )]);
    }
    let basis: Vec<BasisLabel> = (0..=r).map(BasisLabel::Power).collect();
    let idx: HashMap<BasisLabel, usize> = basis
        .iter()
        .enumerate()
        .map(|(i, l)| (l.clone(), i))
        .collect();
    let kind = if degrees.is_empty() {
        RingKind::Projective { r }
    } else {
        RingKind::CompleteIntersection {
            r,
            degrees: degrees.clone(),
        }
    };
    let chi = euler_characteristic(r, &degrees);
    let data = PowerData {
        r,
        m_prod: degrees.iter().map(|&m| BigInt::from(m)).product(),
        m_fact: m_factorial(&degrees, 0),
        c: ci_constants(&degrees),
        chi: chi.clone(),
        ell,
        msum,
        border,
        degrees,
        reduce,
    };
    Ok(Ring {
        descriptor: RingDescriptor {
            kind,
            dim: r,
            q_degree: index,
            euler_char: chi,
        },
        basis,
        index: idx,
        unit_idx: 0,
        point_idx: r as usize,
        data: RingData::Power(data),
    })
}

/// The classical power H^i expanded in star monomials. Exact in the
/// implemented range; at the border the top power picks up a q^2 term.
pub fn classical_power(ring: &Arc<Ring>, i: u32) -> Result<QHElement> {
    let pd = ring.power_data()?;
    if i > pd.r {
        return Err(Error::OutOfRange(format!(
            "H^{} is outside the basis range 0..={}",
            i, pd.r
        )));
    }
    let mut out = QHElement::from_label(ring, &BasisLabel::Power(i))?;
    let upper = i as i64 - 1 - pd.r as i64 + pd.msum as i64;
    let mut s_i = rat_int(0);
    for j in pd.ell as i64..=upper {
        s_i += &pd.c[j as usize];
    }
    if !s_i.is_zero() {
        let e = (i as i64 - pd.index()) as u32;
        out = out.sub(&QHElement::from_term(
            ring,
            &BasisLabel::Power(e),
            1,
            s_i,
        )?)?;
    }
    if pd.border && i == pd.r {
        let sq = rat_big(&pd.m_fact * &pd.m_fact) / rat_int(2);
        out = out.sub(&QHElement::from_term(ring, &BasisLabel::Power(0), 2, sq)?)?;
    }
    Ok(out)
}

/// The point class: H^r / m^1 in classical terms.
pub fn point_class_power(ring: &Arc<Ring>) -> Result<QHElement> {
    let pd = ring.power_data()?;
    let inv = Rat::new(BigInt::one(), pd.m_prod.clone());
    Ok(classical_power(ring, pd.r)?.scale(&inv))
}

/// The quantum Euler class: chi m^{-1} H^*r + (index - chi) m^{m-1} q H^*(|m|-L-1).
pub fn euler_class_power(ring: &Arc<Ring>) -> Result<QHElement> {
    let pd = ring.power_data()?;
    let lead = Rat::new(pd.chi.clone(), pd.m_prod.clone());
    let mut out = QHElement::from_term(ring, &BasisLabel::Power(pd.r), 0, lead)?;
    let second = (rat_int(pd.index()) - rat_big(pd.chi.clone())) * m_power(&pd.degrees, 1, -1);
    if !second.is_zero() {
        let e = (pd.msum - pd.ell - 1) as u32;
        out = out.add(&QHElement::from_term(ring, &BasisLabel::Power(e), 1, second)?)?;
    }
    Ok(out)
}

/// Expansion data of P^*n * E^*g along the ladder q^{d+i} H^*(r - i*index).
pub struct DiscrepancyReport {
    pub d: i64,
    pub b: Vec<Rat>,
    pub vtev: Rat,
    pub discrepancy: Rat,
}

pub fn discrepancy(ring: &Arc<Ring>, g: u64, n: u64) -> Result<DiscrepancyReport> {
    let pd = ring.power_data()?;
    let index = pd.index();
    let numer = pd.r as i64 * (n as i64 + g as i64 - 1);
    if numer < 0 || numer % index != 0 {
        return Err(Error::ConstraintViolated(format!(
            "no non-negative integer d solves {}d = {}(n+g-1) for n={}, g={}",
            index, pd.r, n, g
        )));
    }
    let d = numer / index;
    let point = point_class_power(ring)?;
    let euler = euler_class_power(ring)?;
    let f = point.pow(n)?.mul(&euler.pow(g)?)?;
    let i0 = pd.r as i64 / index;
    let mut b = Vec::new();
    let mut check = QHElement::zero(ring);
    for i in 0..=i0 {
        let label = BasisLabel::Power((pd.r as i64 - i * index) as u32);
        let bi = f.coeff(&label, d + i)?;
        check = check.add(&QHElement::from_term(ring, &label, d + i, bi.clone())?)?;
        b.push(bi);
    }
    assert_eq!(
        f, check,
        "P^*n E^*g must be supported on the diagonal ladder"
    );
    let vtev = &b[0] * rat_big(pd.m_prod.clone());
    let mut disc = rat_int(0);
    for (i, bi) in b.iter().enumerate().skip(1) {
        disc += bi * m_power(&pd.degrees, -(i as i64), 1);
    }
    Ok(DiscrepancyReport {
        d,
        b,
        vtev,
        discrepancy: disc,
    })
}

fn check_dimension(index: i64, r: u32, g: u64, d: u64, n: u64) -> Result<()> {
    if index * d as i64 == r as i64 * (n as i64 + g as i64 - 1) {
        Ok(())
    } else {
        Err(Error::ConstraintViolated(format!(
            "{}*{} != {}*({}+{}-1)",
            index, d, r, n, g
        )))
    }
}

/// Closed form for low-degree complete intersections (not P^r, not on the
/// border): ((m-1)!)^n index^g m^{(d-n)m - g + 1}, needing g+n >= 2.
pub fn ccii_formula(r: u32, degrees: &[u32], g: u64, d: u64, n: u64) -> Result<Rat> {
    let ell = degrees.len() as u32;
    let msum: u32 = degrees.iter().sum();
    let index = (r + ell + 1) as i64 - msum as i64;
    if msum <= ell + 1 {
        return Err(Error::InadmissibleBranch(
            "formula excludes projective spaces and quadrics".into(),
        ));
    }
    if r as i64 <= 2 * msum as i64 - 2 * ell as i64 - 2 {
        return Err(Error::InadmissibleBranch(
            "border case has its own formula".into(),
        ));
    }
    if g + n < 2 {
        return Err(Error::InadmissibleBranch("needs g + n >= 2".into()));
    }
    check_dimension(index, r, g, d, n)?;
    let fact = rat_pow(&rat_big(m_factorial(degrees, -1)), n as i64);
    let idx = rat_pow(&rat_int(index), g as i64);
    Ok(fact * idx * m_power(degrees, d as i64 - n as i64, 1 - g as i64))
}

/// Closed form on the border r = 2|m| - 2L - 2, where d = 2(n+g-1) and the
/// discrepancy has three genus branches.
pub fn border_formula(r: u32, degrees: &[u32], g: u64, d: u64, n: u64) -> Result<Rat> {
    let ell = degrees.len() as u32;
    let msum: u32 = degrees.iter().sum();
    let index = (r + ell + 1) as i64 - msum as i64;
    if r as i64 != 2 * msum as i64 - 2 * ell as i64 - 2 {
        return Err(Error::InadmissibleBranch(format!(
            "r = {} is not on the border 2|m| - 2L - 2 = {}",
            r,
            2 * msum as i64 - 2 * ell as i64 - 2
        )));
    }
    check_dimension(index, r, g, d, n)?;
    debug_assert_eq!(d as i64, 2 * (n as i64 + g as i64 - 1));
    let m_prod = rat_big(degrees.iter().map(|&m| BigInt::from(m)).product());
    let m_fact = rat_big(m_factorial(degrees, 0));
    let m_pow_m = m_power(degrees, 1, 0);
    let half_sq = &m_fact * &m_fact / rat_int(2);
    let main = rat_pow(&(&m_fact * &m_pow_m - &half_sq), n as i64)
        * rat_pow(&rat_int((msum - ell - 1) as i64), g as i64)
        * m_power(degrees, 2 * g as i64 - 2, 1 - n as i64 - g as i64);
    let chi = rat_big(euler_characteristic(r, degrees));
    let disc = match g {
        0 => {
            let lead = rat_pow(&(-&half_sq / &m_prod), n as i64 - 1);
            let tail = rat_int(n as i64) * &m_fact * m_power(degrees, -1, 0)
                - rat_int(n as i64)
                - m_power(degrees, -2, 0) * &half_sq;
            lead * tail
        }
        1 => rat_pow(&(-&half_sq / &m_prod), n as i64) * (rat_int((msum - ell - 1) as i64) - chi),
        _ => rat_int(0),
    };
    Ok(main - disc)
}

//! Virtual Tevelev degrees as coefficient extractions.
//!
//! For any implemented ring, vTev_{g,d,n} is the coefficient of q^d P in
//! P^*n * E^*g, and is zero unless the dimension constraint
//! q_degree * d = dim * (n + g - 1) holds. Products of spaces multiply
//! factor-wise, each factor carrying its own curve degree.

use std::sync::Arc;

use num_traits::Zero;

use crate::error::Result;
use crate::rational::{rat_big, rat_int, Rat};
use crate::ring::{BasisLabel, QHElement, Ring, RingData};

/// The class of a point, expressed in the ring's own basis.
pub fn point_class(ring: &Arc<Ring>) -> QHElement {
    match &ring.data {
        RingData::Grassmann(_) => QHElement::from_label(ring, ring.point_label())
            .expect("point label is in the basis"),
        RingData::Power(_) => {
            crate::ci::point_class_power(ring).expect("power rings always have a point class")
        }
    }
}

/// The quantum Euler class.
pub fn euler_class(ring: &Arc<Ring>) -> QHElement {
    match &ring.data {
        RingData::Grassmann(_) => {
            crate::grassmann::euler_class_gr(ring).expect("dual classes stay in the rectangle")
        }
        RingData::Power(_) => {
            crate::ci::euler_class_power(ring).expect("power rings always have an Euler class")
        }
    }
}

/// The curve degree forced by g and n, if any non-negative integer works.
pub fn dimension_d(ring: &Ring, g: u64, n: u64) -> Option<u64> {
    let rhs = ring.descriptor().dim as i64 * (n as i64 + g as i64 - 1);
    let dq = ring.descriptor().q_degree;
    if rhs < 0 || rhs % dq != 0 {
        return None;
    }
    Some((rhs / dq) as u64)
}

/// Coefficient of q^d P in an element, for any ring kind.
pub fn point_coefficient(f: &QHElement, d: i64) -> Result<Rat> {
    let ring = f.ring().clone();
    match &ring.data {
        RingData::Grassmann(_) => f.coeff(ring.point_label(), d),
        RingData::Power(_) => {
            let pd = ring.power_data()?;
            Ok(f.coeff(&BasisLabel::Power(pd.r), d)? * rat_big(pd.m_prod.clone()))
        }
    }
}

/// P^*n * E^*g.
pub fn insertion_product(ring: &Arc<Ring>, g: u64, n: u64) -> Result<QHElement> {
    let pn = match &ring.data {
        // Seidel shift: P^*n is a single basis term for Grassmannians.
        RingData::Grassmann(_) => crate::grassmann::point_power(ring, n as i64)?,
        RingData::Power(_) => point_class(ring).pow(n)?,
    };
    pn.mul(&euler_class(ring).pow(g)?)
}

/// vTev at an explicit curve degree: zero off the dimension constraint.
pub fn vtev_at(ring: &Arc<Ring>, g: u64, d: u64, n: u64) -> Result<Rat> {
    if dimension_d(ring, g, n) != Some(d) {
        return Ok(rat_int(0));
    }
    point_coefficient(&insertion_product(ring, g, n)?, d as i64)
}

/// vTev at the forced curve degree. The degree comes back alongside the
/// value; an unsatisfiable constraint gives (None, 0).
pub fn vtev(ring: &Arc<Ring>, g: u64, n: u64) -> Result<(Option<u64>, Rat)> {
    match dimension_d(ring, g, n) {
        None => Ok((None, rat_int(0))),
        Some(d) => {
            let value = point_coefficient(&insertion_product(ring, g, n)?, d as i64)?;
            Ok((Some(d), value))
        }
    }
}

/// The three classical low-(g,n) evaluations, where the theory is elementary.
/// Returns None for (g,n) outside the base range.
pub fn vtev_base_case(ring: &Ring, g: u64, d: u64, n: u64) -> Option<Rat> {
    match (g, n) {
        (0, 0) => Some(rat_int(0)),
        (0, 1) => Some(rat_int(if d == 0 { 1 } else { 0 })),
        (1, 0) => Some(if d == 0 {
            rat_big(ring.descriptor().euler_char.clone())
        } else {
            rat_int(0)
        }),
        _ => None,
    }
}

/// vTev of a product of spaces: every factor solves its own dimension
/// constraint, and the values multiply. Any unsatisfiable factor kills the
/// whole count.
pub fn vtev_product(rings: &[Arc<Ring>], g: u64, n: u64) -> Result<(Option<Vec<u64>>, Rat)> {
    let mut ds = Vec::with_capacity(rings.len());
    for ring in rings {
        match dimension_d(ring, g, n) {
            None => return Ok((None, rat_int(0))),
            Some(d) => ds.push(d),
        }
    }
    let mut value = rat_int(1);
    for ring in rings {
        let (_, v) = vtev(ring, g, n)?;
        if v.is_zero() {
            return Ok((Some(ds), rat_int(0)));
        }
        value *= v;
    }
    Ok((Some(ds), value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_pow;

    #[test]
    fn projective_line_and_plane() {
        for r in [1u32, 2, 3] {
            let ring = Ring::projective(r).unwrap();
            for g in 0..=4u64 {
                for n in 0..=6u64 {
                    let (d, value) = vtev(&ring, g, n).unwrap();
                    match d {
                        // vTev(P^r) = (r+1)^g whenever the constraint holds.
                        Some(_) => assert_eq!(
                            value,
                            rat_pow(&rat_int(r as i64 + 1), g as i64),
                            "p:{} g={} n={}",
                            r,
                            g,
                            n
                        ),
                        None => assert!(value.is_zero()),
                    }
                }
            }
        }
    }

    #[test]
    fn off_constraint_is_zero() {
        let ring = Ring::projective(2).unwrap();
        // g=1, n=1: 3d = 2 has no solution.
        assert_eq!(vtev(&ring, 1, 1).unwrap(), (None, rat_int(0)));
        // Explicit off-degree query.
        assert_eq!(vtev_at(&ring, 2, 7, 1).unwrap(), rat_int(0));
    }

    #[test]
    fn base_cases_agree_with_the_engine() {
        let rings = [
            Ring::projective(2).unwrap(),
            Ring::grassmannian(2, 4).unwrap(),
            Ring::quadric(3).unwrap(),
        ];
        for ring in &rings {
            for (g, n) in [(0u64, 0u64), (0, 1), (1, 0)] {
                for d in 0..=3u64 {
                    let base = vtev_base_case(ring, g, d, n).unwrap();
                    let engine = vtev_at(ring, g, d, n).unwrap();
                    assert_eq!(base, engine, "{:?} g={} d={} n={}", ring, g, d, n);
                }
            }
        }
    }

    #[test]
    fn the_grassmannian_gr24_is_the_quadric_fourfold() {
        // Two completely different routes: Schubert/rim-hook vs power basis.
        let gr = Ring::grassmannian(2, 4).unwrap();
        let quad = Ring::quadric(4).unwrap();
        for g in 0..=3u64 {
            for n in 0..=4u64 {
                let (d1, v1) = vtev(&gr, g, n).unwrap();
                let (d2, v2) = vtev(&quad, g, n).unwrap();
                assert_eq!(d1, d2);
                assert_eq!(v1, v2, "g={} n={}", g, n);
            }
        }
    }

    #[test]
    fn grassmannian_genus_one_matches_the_binomial() {
        for (m, nn) in [(2u32, 4u32), (2, 5), (3, 6)] {
            let ring = Ring::grassmannian(m, nn).unwrap();
            for marks in 0..=6u64 {
                let (d, value) = vtev(&ring, 1, marks).unwrap();
                match d {
                    Some(d) => {
                        let closed =
                            crate::grassmann::genus_one_value(m, nn, d, marks).unwrap();
                        assert_eq!(value, rat_big(closed), "gr:{},{} n={}", m, nn, marks);
                    }
                    None => assert!(value.is_zero()),
                }
            }
        }
    }

    #[test]
    fn products_multiply_factor_wise() {
        let p1 = Ring::projective(1).unwrap();
        // P^1 x P^1: vTev = 4^g when n + g is odd (so d is integral).
        let (ds, value) = vtev_product(&[p1.clone(), p1.clone()], 2, 1).unwrap();
        assert_eq!(ds, Some(vec![1, 1]));
        assert_eq!(value, rat_int(16));
        // Unsatisfiable on one factor kills the product.
        let (ds, value) = vtev_product(&[p1.clone(), p1.clone()], 2, 0).unwrap();
        assert_eq!(ds, None);
        assert!(value.is_zero());
        // Mixed product: P^1 x Gr(2,4) at g=3, n=1: d = (3, ...).
        let gr = Ring::grassmannian(2, 4).unwrap();
        let (_, lhs) = vtev_product(&[p1.clone(), gr.clone()], 3, 2).unwrap();
        let (_, a) = vtev(&p1, 3, 2).unwrap();
        let (_, b) = vtev(&gr, 3, 2).unwrap();
        assert_eq!(lhs, a * b);
    }

    #[test]
    fn euler_class_coefficient_is_chi_everywhere() {
        let rings = [
            Ring::projective(3).unwrap(),
            Ring::grassmannian(2, 5).unwrap(),
            Ring::quadric(4).unwrap(),
            Ring::complete_intersection(5, vec![2, 2]).unwrap(),
        ];
        for ring in &rings {
            let e = euler_class(ring);
            assert_eq!(
                point_coefficient(&e, 0).unwrap(),
                rat_big(ring.descriptor().euler_char.clone()),
                "{:?}",
                ring
            );
        }
    }
}

//! Quantum cohomology of Gr(m, N) on the Schubert basis.
//!
//! Products are computed classically (bounded Littlewood-Richardson) and then
//! pushed into the quotient by removing N-rim-hooks, tracked on beta numbers.
//! Each removed hook contributes one power of q and a sign; terms whose beta
//! numbers collide vanish. The full multiplication table is built once at
//! construction and checked for integrality and positivity, which is a sharp
//! test of the sign bookkeeping: every surviving structure constant counts
//! rational curves.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;

use crate::cylinder::CylinderPath;
use crate::error::{Error, Result};
use crate::lr::schur_product;
use crate::partition::Partition;
use crate::rational::{binomial, rat_int, Rat};
use crate::ring::{BasisLabel, QHElement, Ring, RingData, RingDescriptor, RingKind};
use std::sync::Arc;

pub(crate) struct GrData {
    pub m: u32,
    pub n: u32,
    /// Structure constants for basis pairs i <= j, triangular layout.
    table: Vec<Vec<(i64, usize, Rat)>>,
}

impl GrData {
    pub(crate) fn pair_product(&self, i: usize, j: usize) -> &[(i64, usize, Rat)] {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        &self.table[b * (b + 1) / 2 + a]
    }
}

/// Remove N-rim-hooks from a partition with at most m rows until it fits in
/// the m x (N-m) rectangle. Returns (q-power, reduced partition, sign), or
/// None when the class vanishes in the quotient.
pub(crate) fn rim_hook_reduce(nu: &Partition, m: u32, n: u32) -> Option<(u32, Partition, i64)> {
    let m = m as usize;
    debug_assert!(nu.len() <= m);
    let mut beta: Vec<i64> = (0..m)
        .map(|i| nu.part(i) as i64 + (m - 1 - i) as i64)
        .collect();
    let n = n as i64;
    let mut qpow = 0u32;
    let mut sign = 1i64;
    loop {
        let Some(pos) = beta.iter().position(|&b| b >= n) else {
            break;
        };
        let v = beta[pos] - n;
        if beta.iter().enumerate().any(|(j, &b)| j != pos && b == v) {
            return None;
        }
        let height = 1 + beta
            .iter()
            .enumerate()
            .filter(|&(j, &b)| j != pos && v < b && b < beta[pos])
            .count();
        if (m - height) % 2 == 1 {
            sign = -sign;
        }
        beta[pos] = v;
        qpow += 1;
    }
    beta.sort_unstable_by(|a, b| b.cmp(a));
    let parts: Vec<u32> = beta
        .iter()
        .enumerate()
        .map(|(i, &b)| (b - (m - 1 - i) as i64) as u32)
        .collect();
    Some((qpow, Partition::new(parts).expect("beta numbers stay strictly decreasing"), sign))
}

pub(crate) fn build_grassmannian(m: u32, n: u32) -> Result<Ring> {
    if m < 1 || m >= n {
        return Err(Error::OutOfRange(format!(
            "gr:{},{} needs 1 <= m < N",
            m, n
        )));
    }
    let width = n - m;
    let basis = Partition::all_in_rectangle(m, width);
    let labels: Vec<BasisLabel> = basis
        .iter()
        .map(|p| BasisLabel::Schubert(p.clone()))
        .collect();
    let index: HashMap<BasisLabel, usize> = labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.clone(), i))
        .collect();
    let mut table = Vec::with_capacity(basis.len() * (basis.len() + 1) / 2);
    for j in 0..basis.len() {
        for i in 0..=j {
            let expansion = schur_product(&basis[i], &basis[j], m);
            let mut acc: BTreeMap<(i64, usize), i64> = BTreeMap::new();
            for (nu, c) in &expansion {
                let Some((qpow, reduced, sign)) = rim_hook_reduce(nu, m, n) else {
                    continue;
                };
                let idx = index[&BasisLabel::Schubert(reduced)];
                *acc.entry((qpow as i64, idx)).or_insert(0) += sign * *c as i64;
            }
            let entries: Vec<(i64, usize, Rat)> = acc
                .into_iter()
                .filter(|&(_, c)| c != 0)
                .map(|((q, idx), c)| {
                    assert!(
                        c > 0,
                        "negative structure constant in gr:{},{} — rim-hook signs are wrong",
                        m,
                        n
                    );
                    (q, idx, rat_int(c))
                })
                .collect();
            table.push(entries);
        }
    }
    let unit_idx = index[&BasisLabel::Schubert(Partition::empty())];
    let point_idx = index[&BasisLabel::Schubert(Partition::rectangle(m, width))];
    Ok(Ring {
        descriptor: RingDescriptor {
            kind: RingKind::Grassmannian { m, n },
            dim: m * width,
            q_degree: n as i64,
            euler_char: binomial(n as u64, m as u64),
        },
        basis: labels,
        index,
        unit_idx,
        point_idx,
        data: RingData::Grassmann(GrData { m, n, table }),
    })
}

/// Poincare dual basis label: the 180-degree rotated complement.
pub fn dual_partition(ring: &Ring, lambda: &Partition) -> Result<Partition> {
    let gr = ring.grassmann_data()?;
    lambda.complement_in(gr.m, gr.n - gr.m)
}

/// Seidel element power S^{*k} for any integer k: a single Schubert class
/// times a (possibly negative) power of q.
pub fn seidel_power(ring: &Arc<Ring>, k: i64) -> Result<QHElement> {
    let gr = ring.grassmann_data()?;
    let (m, n) = (gr.m as i64, gr.n as i64);
    let cycles = k.div_euclid(n);
    let k0 = k.rem_euclid(n);
    let (extra_q, parts) = if k0 <= n - m {
        (0, vec![k0 as u32; m as usize])
    } else {
        (k0 - (n - m), vec![(n - m) as u32; (n - k0) as usize])
    };
    let label = BasisLabel::Schubert(Partition::new(parts)?);
    QHElement::from_term(ring, &label, m * cycles + extra_q, rat_int(1))
}

/// P^{*k} for any integer k, through the Seidel group law P = S^{*(N-m)}.
pub fn point_power(ring: &Arc<Ring>, k: i64) -> Result<QHElement> {
    let gr = ring.grassmann_data()?;
    seidel_power(ring, k * (gr.n - gr.m) as i64)
}

/// Multiplicative order of the point class modulo q-powers.
pub fn ord_point_gr(ring: &Ring) -> Result<u64> {
    let gr = ring.grassmann_data()?;
    Ok((gr.n / gr.n.gcd(&gr.m)) as u64)
}

/// The quantum Euler class: sum over the basis of each class times its dual.
pub fn euler_class_gr(ring: &Arc<Ring>) -> Result<QHElement> {
    let gr = ring.grassmann_data()?;
    let mut out = QHElement::zero(ring);
    for (i, label) in ring.basis().iter().enumerate() {
        let BasisLabel::Schubert(lambda) = label else {
            unreachable!()
        };
        let dual = BasisLabel::Schubert(lambda.complement_in(gr.m, gr.n - gr.m)?);
        let j = ring.label_index(&dual)?;
        for (qexp, idx, coeff) in ring.pair_product(i, j) {
            out.insert_term(*idx, *qexp, coeff.clone());
        }
    }
    Ok(out)
}

/// Multiply a Schubert class by the point class along the cylinder:
/// independent of the rim-hook table.
pub fn point_multiply(ring: &Ring, lambda: &Partition) -> Result<(u32, Partition)> {
    let gr = ring.grassmann_data()?;
    let path = CylinderPath::from_class(gr.m, gr.n, 0, lambda)?;
    let moved = path.translate(0, (gr.n - gr.m) as i64);
    let (d, mu) = moved.to_class();
    debug_assert!(d >= 0);
    Ok((d as u32, mu))
}

/// Genus-one count with marked points: nonzero only on the dimension
/// constraint N*d = m*(N-m)*marks, where it is a single binomial.
pub fn genus_one_value(m: u32, n: u32, d: u64, marks: u64) -> Option<BigInt> {
    let r = (m * (n - m)) as u64;
    if (n as u64) * d != r * marks {
        return None;
    }
    let c = d.gcd(&(m as u64));
    Some(binomial(c * n as u64 / m as u64, c))
}

/// Point-class coefficient of lambda * mu, the Poincare pairing on the
/// quantum basis at q^0.
pub fn pairing(ring: &Arc<Ring>, lambda: &Partition, mu: &Partition) -> Result<Rat> {
    let a = QHElement::from_label(ring, &BasisLabel::Schubert(lambda.clone()))?;
    let b = QHElement::from_label(ring, &BasisLabel::Schubert(mu.clone()))?;
    a.mul(&b)?.coeff(ring.point_label(), 0)
}

pub fn euler_char_gr(m: u32, n: u32) -> BigInt {
    binomial(n as u64, m as u64)
}

//! Quantum cohomology rings over exact rationals.
//!
//! Three kinds of rings share one element type: projective space and complete
//! intersections live on the power basis {H^*0, ..., H^*r} (star powers of the
//! hyperplane class), Grassmannians on the Schubert basis indexed by
//! partitions in the m x (N-m) rectangle. Multiplication tables are built
//! eagerly at construction, so a `Ring` is immutable and freely shareable.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::ci::PowerData;
use crate::error::{Error, Result};
use crate::grassmann::GrData;
use crate::laurent::LaurentPoly;
use crate::partition::Partition;
use crate::rational::{rat_int, rat_to_string, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingKind {
    Projective { r: u32 },
    Grassmannian { m: u32, n: u32 },
    CompleteIntersection { r: u32, degrees: Vec<u32> },
}

impl fmt::Display for RingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingKind::Projective { r } => write!(f, "p:{}", r),
            RingKind::Grassmannian { m, n } => write!(f, "gr:{},{}", m, n),
            RingKind::CompleteIntersection { r, degrees } => {
                let ds: Vec<String> = degrees.iter().map(|d| d.to_string()).collect();
                write!(f, "ci:{}:{}", r, ds.join(","))
            }
        }
    }
}

/// Shape data of a ring: enough to check compatibility of elements and to
/// state the dimension constraint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingDescriptor {
    pub kind: RingKind,
    /// Complex dimension of the underlying space.
    pub dim: u32,
    /// Fano index: deg q = 2 * q_degree.
    pub q_degree: i64,
    pub euler_char: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisLabel {
    /// H^*i on the power basis.
    Power(u32),
    /// Schubert class indexed by a partition in the defining rectangle.
    Schubert(Partition),
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::Power(0) => write!(f, "1"),
            BasisLabel::Power(i) => write!(f, "H^{}", i),
            BasisLabel::Schubert(p) if p.is_empty() => write!(f, "1"),
            BasisLabel::Schubert(p) => {
                let parts: Vec<String> = p.parts().iter().map(|x| x.to_string()).collect();
                write!(f, "s({})", parts.join(","))
            }
        }
    }
}

pub(crate) enum RingData {
    Grassmann(GrData),
    Power(PowerData),
}

pub struct Ring {
    pub(crate) descriptor: RingDescriptor,
    pub(crate) basis: Vec<BasisLabel>,
    pub(crate) index: HashMap<BasisLabel, usize>,
    pub(crate) unit_idx: usize,
    pub(crate) point_idx: usize,
    pub(crate) data: RingData,
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({})", self.descriptor.kind)
    }
}

impl Ring {
    pub fn projective(r: u32) -> Result<Arc<Ring>> {
        if r < 1 {
            return Err(Error::OutOfRange("projective space needs r >= 1".into()));
        }
        Ok(Arc::new(crate::ci::build_power_ring(r, Vec::new())?))
    }

    pub fn grassmannian(m: u32, n: u32) -> Result<Arc<Ring>> {
        crate::grassmann::build_grassmannian(m, n).map(Arc::new)
    }

    pub fn complete_intersection(r: u32, degrees: Vec<u32>) -> Result<Arc<Ring>> {
        if degrees.is_empty() {
            return Err(Error::OutOfRange(
                "complete intersection needs at least one degree; use a projective ring instead"
                    .into(),
            ));
        }
        Ok(Arc::new(crate::ci::build_ci_ring(r, degrees)?))
    }

    pub fn quadric(r: u32) -> Result<Arc<Ring>> {
        Ring::complete_intersection(r, vec![2])
    }

    pub fn descriptor(&self) -> &RingDescriptor {
        &self.descriptor
    }

    pub fn basis(&self) -> &[BasisLabel] {
        &self.basis
    }

    pub fn basis_size(&self) -> usize {
        self.basis.len()
    }

    pub fn unit_label(&self) -> &BasisLabel {
        &self.basis[self.unit_idx]
    }

    pub fn point_label(&self) -> &BasisLabel {
        &self.basis[self.point_idx]
    }

    pub fn label_index(&self, label: &BasisLabel) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::RingMismatch(format!("{} is not a basis label of {}", label, self.descriptor.kind)))
    }

    /// Cohomological degree of a basis label (2 per box / power).
    pub fn label_degree(&self, label: &BasisLabel) -> Result<i64> {
        self.label_index(label)?;
        Ok(match label {
            BasisLabel::Power(i) => 2 * *i as i64,
            BasisLabel::Schubert(p) => 2 * p.size() as i64,
        })
    }

    pub(crate) fn grassmann_data(&self) -> Result<&GrData> {
        match &self.data {
            RingData::Grassmann(g) => Ok(g),
            RingData::Power(_) => Err(Error::NotTypeA(format!("{}", self.descriptor.kind))),
        }
    }

    pub(crate) fn power_data(&self) -> Result<&PowerData> {
        match &self.data {
            RingData::Power(p) => Ok(p),
            RingData::Grassmann(_) => Err(Error::RingMismatch(format!(
                "{} is not a power-basis ring",
                self.descriptor.kind
            ))),
        }
    }

    /// Structure constants of basis element i times basis element j.
    pub(crate) fn pair_product(&self, i: usize, j: usize) -> &[(i64, usize, Rat)] {
        match &self.data {
            RingData::Grassmann(g) => g.pair_product(i, j),
            RingData::Power(p) => p.pair_product(i, j),
        }
    }
}

/// An element of the (localized) small quantum cohomology ring: a basis label
/// to Laurent-in-q coefficient map with zero entries pruned.
#[derive(Clone)]
pub struct QHElement {
    pub(crate) ring: Arc<Ring>,
    pub(crate) coeffs: HashMap<usize, LaurentPoly>,
}

impl fmt::Debug for QHElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QHElement({})", self)
    }
}

impl QHElement {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        QHElement {
            ring: Arc::clone(ring),
            coeffs: HashMap::new(),
        }
    }

    pub fn unit(ring: &Arc<Ring>) -> Self {
        let mut e = QHElement::zero(ring);
        e.coeffs.insert(ring.unit_idx, LaurentPoly::one());
        e
    }

    pub fn from_label(ring: &Arc<Ring>, label: &BasisLabel) -> Result<Self> {
        Self::from_term(ring, label, 0, rat_int(1))
    }

    pub fn from_term(ring: &Arc<Ring>, label: &BasisLabel, qexp: i64, coeff: Rat) -> Result<Self> {
        let idx = ring.label_index(label)?;
        let mut e = QHElement::zero(ring);
        if !coeff.is_zero() {
            e.coeffs.insert(idx, LaurentPoly::monomial(qexp, coeff));
        }
        Ok(e)
    }

    pub fn point(ring: &Arc<Ring>) -> Self {
        crate::engine::point_class(ring)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring)
            || self.ring.descriptor == other.ring.descriptor
        {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!(
                "{} vs {}",
                self.ring.descriptor.kind, other.ring.descriptor.kind
            )))
        }
    }

    pub(crate) fn insert_term(&mut self, idx: usize, qexp: i64, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(idx).or_default();
        entry.add_term(qexp, coeff);
        if entry.is_zero() {
            self.coeffs.remove(&idx);
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (idx, poly) in &other.coeffs {
            for (e, c) in poly.terms() {
                out.insert_term(*idx, e, c.clone());
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        QHElement {
            ring: Arc::clone(&self.ring),
            coeffs: self
                .coeffs
                .iter()
                .map(|(i, p)| (*i, p.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return QHElement::zero(&self.ring);
        }
        QHElement {
            ring: Arc::clone(&self.ring),
            coeffs: self.coeffs.iter().map(|(i, p)| (*i, p.scale(c))).collect(),
        }
    }

    /// Multiply by q^shift.
    pub fn shift_q(&self, shift: i64) -> Self {
        QHElement {
            ring: Arc::clone(&self.ring),
            coeffs: self
                .coeffs
                .iter()
                .map(|(i, p)| (*i, p.shift(shift)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut out = QHElement::zero(&self.ring);
        for (i, pi) in &self.coeffs {
            for (j, pj) in &other.coeffs {
                let scalar = pi.mul(pj);
                if scalar.is_zero() {
                    continue;
                }
                for (qexp, idx, coeff) in self.ring.pair_product(*i, *j) {
                    for (e, c) in scalar.terms() {
                        out.insert_term(*idx, e + qexp, c * coeff);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Non-negative power by square and multiply.
    pub fn pow(&self, k: u64) -> Result<Self> {
        let mut acc = QHElement::unit(&self.ring);
        if k == 0 {
            return Ok(acc);
        }
        let mut base = self.clone();
        let mut e = k;
        loop {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.mul(&base)?;
        }
        Ok(acc)
    }

    /// Coefficient of q^qexp at the given basis label.
    pub fn coeff(&self, label: &BasisLabel, qexp: i64) -> Result<Rat> {
        let idx = self.ring.label_index(label)?;
        Ok(self
            .coeffs
            .get(&idx)
            .map(|p| p.coeff(qexp))
            .unwrap_or_else(|| rat_int(0)))
    }

    pub fn coeff_poly(&self, label: &BasisLabel) -> Result<LaurentPoly> {
        let idx = self.ring.label_index(label)?;
        Ok(self.coeffs.get(&idx).cloned().unwrap_or_default())
    }

    /// Terms in deterministic order: basis order, then ascending q exponent.
    pub fn terms(&self) -> Vec<(i64, BasisLabel, Rat)> {
        let mut out = Vec::new();
        for (idx, label) in self.ring.basis.iter().enumerate() {
            if let Some(poly) = self.coeffs.get(&idx) {
                for (e, c) in poly.terms() {
                    out.push((e, label.clone(), c.clone()));
                }
            }
        }
        out
    }

    /// Total degree if the element is homogeneous (deg q = 2 q_degree).
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut deg: Option<i64> = None;
        for (idx, poly) in &self.coeffs {
            let base = match &self.ring.basis[*idx] {
                BasisLabel::Power(i) => 2 * *i as i64,
                BasisLabel::Schubert(p) => 2 * p.size() as i64,
            };
            for (e, _) in poly.terms() {
                let d = base + 2 * e * self.ring.descriptor.q_degree;
                match deg {
                    None => deg = Some(d),
                    Some(existing) if existing == d => {}
                    Some(_) => return None,
                }
            }
        }
        deg
    }

    /// True when every q exponent is non-negative (element of the
    /// non-localized ring).
    pub fn is_polynomial(&self) -> bool {
        self.coeffs.values().all(|p| p.is_polynomial())
    }

    /// Every coefficient is a non-negative integer.
    pub fn has_nonneg_integer_coeffs(&self) -> bool {
        self.coeffs.values().all(|p| {
            p.terms()
                .all(|(_, c)| c.is_integer() && c.numer() >= &BigInt::zero())
        })
    }
}

impl PartialEq for QHElement {
    fn eq(&self, other: &Self) -> bool {
        if !(Arc::ptr_eq(&self.ring, &other.ring) || self.ring.descriptor == other.ring.descriptor)
        {
            return false;
        }
        if self.coeffs.len() != other.coeffs.len() {
            return false;
        }
        self.coeffs
            .iter()
            .all(|(i, p)| other.coeffs.get(i) == Some(p))
    }
}

impl Eq for QHElement {}

impl fmt::Display for QHElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Highest classes first: "2*H^3 - 2*q" rather than "-2*q + 2*H^3".
        let mut terms = Vec::new();
        for (idx, label) in self.ring.basis.iter().enumerate().rev() {
            if let Some(poly) = self.coeffs.get(&idx) {
                for (e, c) in poly.terms() {
                    terms.push((e, label.clone(), c.clone()));
                }
            }
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        let point = self.ring.point_label().clone();
        let mut first = true;
        for (qexp, label, coeff) in terms {
            let cs = rat_to_string(&coeff);
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, cs),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if mag != "1" {
                if mag.contains('/') {
                    factors.push(format!("({})", mag));
                } else {
                    factors.push(mag.clone());
                }
            }
            match qexp {
                0 => {}
                1 => factors.push("q".into()),
                e => factors.push(format!("q^{}", e)),
            }
            let is_unit_label = label == *self.ring.unit_label();
            if label == point && matches!(label, BasisLabel::Schubert(_)) {
                factors.push("P".into());
            } else if !is_unit_label {
                factors.push(format!("{}", label));
            }
            if factors.is_empty() {
                factors.push("1".into());
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

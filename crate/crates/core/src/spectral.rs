//! Spectral analysis of the operator "multiply by E ⋆ P^{⋆-1}" on the
//! degree-zero block of a Grassmannian's small quantum ring, and synthesis of
//! genus-parametric closed forms from its eigendata.
//!
//! The block is spanned by the normalized classes q^{-|λ|/N}[X^λ] with N
//! dividing |λ|; the operator preserves it, its matrix is symmetric with
//! non-negative integer entries, and coefficient extraction against a Seidel
//! translate of the unit turns powers of the matrix into the invariants:
//! picking the target row for the residue class of n+g mod ord(P) gives
//! vTev(g) = Σᵢ wᵢ λᵢ^g over the eigenvalues λᵢ.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::bigdec::BigDec;
use crate::closedform::{value_to_dec, ClosedForm, Parity, Provenance, Term};
use crate::error::{Error, Result};
use crate::grassmann::{dual_partition, euler_class_gr, ord_point_gr, point_power};
use crate::matrix::{berkowitz_charpoly, Mat};
use crate::polyroots::{real_roots, RootValue};
use crate::rational::{rat_frac, rat_int, Rat};
use crate::ring::{BasisLabel, QHElement, Ring, RingKind};
use crate::surd::{Field, QuadExt};

fn grassmann_shape(ring: &Ring) -> Result<(u32, u32)> {
    match ring.descriptor().kind {
        RingKind::Grassmannian { m, n } => Ok((m, n)),
        ref other => Err(Error::NotTypeA(format!(
            "spectral analysis needs a Grassmannian ring, got {other}"
        ))),
    }
}

fn schubert_size(label: &BasisLabel) -> i64 {
    match label {
        BasisLabel::Schubert(p) => p.size() as i64,
        BasisLabel::Power(i) => *i as i64,
    }
}

/// Ring-basis indices of the degree-zero block, in basis order (unit first).
pub fn degree_zero_basis(ring: &Arc<Ring>) -> Result<Vec<usize>> {
    let (_m, n) = grassmann_shape(ring)?;
    let mut out = Vec::new();
    for (idx, label) in ring.basis().iter().enumerate() {
        if let BasisLabel::Schubert(p) = label {
            if p.size() % n as u64 == 0 {
                out.push(idx);
            }
        }
    }
    debug_assert_eq!(out.first().copied(), Some(0), "unit leads the block");
    Ok(out)
}

/// The quotient E ⋆ P^{⋆-1} of the quantum Euler class by the point class.
pub fn ep_element(ring: &Arc<Ring>) -> Result<QHElement> {
    let e = euler_class_gr(ring)?;
    e.mul(&point_power(ring, -1)?)
}

/// Matrix of multiplication by E ⋆ P^{⋆-1} on the degree-zero block, in block
/// coordinates. Entries are non-negative integers and the matrix is
/// symmetric; both facts are asserted.
pub fn ep_operator_matrix(ring: &Arc<Ring>) -> Result<(Vec<usize>, Mat<Rat>)> {
    let (_m, n) = grassmann_shape(ring)?;
    let n = n as i64;
    let block = degree_zero_basis(ring)?;
    let ep = ep_element(ring)?;
    let k = block.len();
    let mut mat = Mat::<Rat>::zeros(k, k);
    for (j, &bj) in block.iter().enumerate() {
        let label_j = ring.basis()[bj].clone();
        let col = ep.mul(&QHElement::from_label(ring, &label_j)?)?;
        let size_j = schubert_size(&label_j);
        let mut captured = 0usize;
        for (i, &bi) in block.iter().enumerate() {
            let label_i = &ring.basis()[bi];
            let size_i = schubert_size(label_i);
            debug_assert_eq!((size_j - size_i).rem_euclid(n), 0);
            let qexp = (size_j - size_i) / n;
            let c = col.coeff(label_i, qexp)?;
            assert!(c.is_integer(), "operator entry must be an integer");
            assert!(!c.numer().is_negative(), "operator entry must be non-negative");
            if !num_traits::Zero::is_zero(&c) {
                captured += 1;
            }
            mat.set(i, j, c);
        }
        let total = col.terms().len();
        assert_eq!(
            total, captured,
            "multiplication by E/P must preserve the degree-zero block"
        );
    }
    assert!(mat.is_symmetric(), "operator matrix must be symmetric");
    Ok((block, mat))
}

/// One eigenvalue of the block operator with the data needed to read off its
/// contribution to coefficient extraction.
#[derive(Clone, Debug)]
pub struct EigenSpace {
    pub value: RootValue,
    pub multiplicity: usize,
    /// Lead-1, mutually orthogonal eigenvectors (exact route only).
    pub vectors: Vec<Vec<QuadExt>>,
    /// Squared norms ⟨v, v⟩ matching `vectors`.
    pub norms: Vec<QuadExt>,
    /// Spectral projector entries (numeric route only).
    pub projector: Option<Vec<Vec<BigDec>>>,
}

impl EigenSpace {
    /// Entry [target][0] of this eigenvalue's spectral projector: the weight
    /// it contributes when extracting the `target` block coordinate from
    /// operator powers applied to the unit.
    pub fn weight_for(&self, target: usize) -> RootValue {
        if let Some(p) = &self.projector {
            return RootValue::Numeric(p[target][0].clone());
        }
        let mut acc = QuadExt::zero();
        for (v, norm) in self.vectors.iter().zip(&self.norms) {
            let contrib = v[0]
                .mul(&v[target])
                .mul(&norm.inv().expect("eigenvector norm is nonzero"));
            acc = acc.add(&contrib);
        }
        if acc.is_rational() {
            RootValue::Rational(acc.rational_part().clone())
        } else {
            RootValue::Quadratic(acc)
        }
    }
}

#[derive(Clone, Debug)]
pub struct SpectralData {
    pub ring: Arc<Ring>,
    /// Ring-basis indices of the degree-zero block, unit first.
    pub block: Vec<usize>,
    pub matrix: Mat<Rat>,
    /// Monic characteristic polynomial, ascending coefficients.
    pub charpoly: Vec<Rat>,
    /// Eigenspaces sorted by descending eigenvalue.
    pub spaces: Vec<EigenSpace>,
    pub digits: u32,
    /// True when every eigenvalue is rational or a quadratic surd.
    pub exact: bool,
}

fn inner(a: &[QuadExt], b: &[QuadExt]) -> QuadExt {
    let mut acc = QuadExt::zero();
    for (x, y) in a.iter().zip(b) {
        acc = acc.add(&x.mul(y));
    }
    acc
}

fn orthogonalize(vectors: Vec<Vec<QuadExt>>) -> Vec<Vec<QuadExt>> {
    let mut out: Vec<Vec<QuadExt>> = Vec::new();
    for mut v in vectors {
        for u in &out {
            let c = inner(&v, u).mul(&inner(u, u).inv().expect("nonzero norm"));
            for (vi, ui) in v.iter_mut().zip(u) {
                *vi = vi.sub(&c.mul(ui));
            }
        }
        let lead = v
            .iter()
            .find(|x| !x.is_zero())
            .cloned()
            .expect("orthogonalized vector stays nonzero");
        let li = lead.inv().unwrap();
        for x in v.iter_mut() {
            *x = x.mul(&li);
        }
        out.push(v);
    }
    out
}

fn exact_spaces(m: &Mat<Rat>, roots: &[(RootValue, usize)]) -> Result<Vec<EigenSpace>> {
    let mq = m.map(|r| QuadExt::rational(r.clone()));
    let mut out = Vec::new();
    for (value, mult) in roots {
        let lam = match value {
            RootValue::Rational(r) => QuadExt::rational(r.clone()),
            RootValue::Quadratic(q) => q.clone(),
            RootValue::Numeric(_) => unreachable!("exact route only sees exact roots"),
        };
        let vectors = mq.shift_diagonal(&lam).nullspace();
        if vectors.len() != *mult {
            return Err(Error::ConstraintViolated(format!(
                "eigenvalue {lam} has geometric multiplicity {} but algebraic multiplicity {mult}",
                vectors.len()
            )));
        }
        let vectors = orthogonalize(vectors);
        let norms: Vec<QuadExt> = vectors.iter().map(|v| inner(v, v)).collect();
        out.push(EigenSpace {
            value: value.clone(),
            multiplicity: *mult,
            vectors,
            norms,
            projector: None,
        });
    }
    Ok(out)
}

fn dec_mat_from_rat(m: &Mat<Rat>, prec: u32) -> Vec<Vec<BigDec>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| BigDec::from_rat(m.get(i, j), prec)).collect())
        .collect()
}

fn dec_identity(n: usize, prec: u32) -> Vec<Vec<BigDec>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| BigDec::from_int(if i == j { 1 } else { 0 }, prec))
                .collect()
        })
        .collect()
}

fn dec_mat_mul(a: &[Vec<BigDec>], b: &[Vec<BigDec>]) -> Vec<Vec<BigDec>> {
    let n = a.len();
    let prec = a[0][0].prec();
    let mut out = dec_identity(n, prec);
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            let mut acc = BigDec::zero(prec);
            for (k, bk) in b.iter().enumerate() {
                acc = acc.add(&a[i][k].mul(&bk[j]));
            }
            *cell = acc;
        }
    }
    out
}

fn dec_shift(m: &[Vec<BigDec>], lambda: &BigDec) -> Vec<Vec<BigDec>> {
    let mut out: Vec<Vec<BigDec>> = m.to_vec();
    for (i, row) in out.iter_mut().enumerate() {
        row[i] = row[i].sub(lambda);
    }
    out
}

fn small_tolerance(digits: u32, prec: u32) -> BigDec {
    let den = BigInt::from(10u32).pow(digits);
    BigDec::from_rat(&Rat::new(BigInt::one(), den), prec)
}

fn numeric_spaces(
    m: &Mat<Rat>,
    roots: &[(RootValue, usize)],
    digits: u32,
) -> Result<Vec<EigenSpace>> {
    let work = digits + 16;
    let md = dec_mat_from_rat(m, work);
    let k = m.rows();
    let vals: Vec<BigDec> = roots.iter().map(|(v, _)| value_to_dec(v, work)).collect();
    let mut projected_sum = vec![vec![BigDec::zero(work); k]; k];
    let mut out = Vec::new();
    for (i, (value, mult)) in roots.iter().enumerate() {
        // Lagrange projector Π_{j≠i} (M − λⱼI)/(λᵢ − λⱼ); valid because the
        // matrix is symmetric, hence diagonalizable with these eigenvalues.
        let mut proj = dec_identity(k, work);
        let mut denom = BigDec::from_int(1, work);
        for (j, lj) in vals.iter().enumerate() {
            if j == i {
                continue;
            }
            proj = dec_mat_mul(&proj, &dec_shift(&md, lj));
            denom = denom.mul(&vals[i].sub(lj));
        }
        for row in proj.iter_mut() {
            for cell in row.iter_mut() {
                *cell = cell.div(&denom);
            }
        }
        for (ps, pr) in projected_sum.iter_mut().zip(&proj) {
            for (a, b) in ps.iter_mut().zip(pr) {
                *a = a.add(b);
            }
        }
        // store at working precision; presentation layers truncate
        out.push(EigenSpace {
            value: value.clone(),
            multiplicity: *mult,
            vectors: Vec::new(),
            norms: Vec::new(),
            projector: Some(proj),
        });
    }
    // The projectors must resolve the identity.
    let tol = small_tolerance(digits / 2, work);
    for (i, row) in projected_sum.iter().enumerate() {
        for (j, cell) in row.iter().enumerate() {
            let expect = BigDec::from_int(if i == j { 1 } else { 0 }, work);
            assert!(
                cell.sub(&expect).abs().cmp_value(&tol) == std::cmp::Ordering::Less,
                "spectral projectors fail to resolve the identity at precision {digits}"
            );
        }
    }
    Ok(out)
}

/// Full eigendata of the block operator. Eigenvalues that are rational or
/// quadratic surds are kept exact (with exact eigenvectors); any harder
/// algebraic eigenvalue switches the whole decomposition to fixed-precision
/// decimals via spectral projectors.
pub fn eigen_decompose(ring: &Arc<Ring>, digits: u32) -> Result<SpectralData> {
    let (block, matrix) = ep_operator_matrix(ring)?;
    let charpoly = berkowitz_charpoly(&matrix);
    let roots = real_roots(&charpoly, digits)?;
    let spaces = if roots.exact {
        exact_spaces(&matrix, &roots.roots)?
    } else {
        numeric_spaces(&matrix, &roots.roots, digits)?
    };
    Ok(SpectralData {
        ring: Arc::clone(ring),
        block,
        matrix,
        charpoly,
        spaces,
        digits,
        exact: roots.exact,
    })
}

/// Residue structure of the dimension constraint on a Grassmannian:
/// admissible exponents ρ' = n+g-1 are the multiples of `t`, the curve degree
/// advances by `step` per admissible ρ', and (n+g) mod ord(P) takes `classes`
/// distinct values over admissible parameters.
#[derive(Clone, Copy, Debug)]
pub struct ResidueInfo {
    pub t: u64,
    pub step: u64,
    pub ord: u64,
    pub classes: u64,
}

pub fn residue_info(ring: &Ring) -> Result<ResidueInfo> {
    let (_m, n) = grassmann_shape(ring)?;
    let n = n as u64;
    let dim = ring.descriptor().dim as u64;
    let g = n.gcd(&dim);
    let t = n / g;
    let step = dim / g;
    let ord = ord_point_gr(ring)?;
    let classes = ord / t.gcd(&ord);
    Ok(ResidueInfo { t, step, ord, classes })
}

/// True when every admissible (g, n) lies in a single residue class, so one
/// parity-free closed form covers the space.
pub fn isone(ring: &Ring) -> Result<bool> {
    Ok(residue_info(ring)?.classes == 1)
}

/// The coefficient-extraction target for one residue class of n+g mod ord(P).
#[derive(Clone, Copy, Debug)]
pub struct TargetSpec {
    /// Smallest admissible ρ' = n+g-1 in the class.
    pub rho: u64,
    /// Its curve degree d = dim·ρ'/N.
    pub d: u64,
    /// Block coordinate extracted by the invariant.
    pub block_idx: usize,
}

pub fn admissible_target(ring: &Arc<Ring>, residue: u64) -> Result<TargetSpec> {
    let info = residue_info(ring)?;
    let (_m, n) = grassmann_shape(ring)?;
    let ord = info.ord;
    let rho = (0..ord)
        .map(|j| j * info.t)
        .find(|rho| (rho + 1) % ord == residue % ord)
        .ok_or_else(|| {
            Error::InadmissibleResidue(format!(
                "no admissible (g, n) has (n + g) ≡ {} mod {} on {}",
                residue % ord,
                ord,
                ring.descriptor().kind
            ))
        })?;
    let dim = ring.descriptor().dim as u64;
    debug_assert_eq!(dim * rho % n as u64, 0);
    let d = dim * rho / n as u64;
    // P^{⋆(-ρ')} is a single Seidel translate q^e[μ]; the target coordinate
    // is μ's, and q^d q^e [μ] must equal the normalized class q^{-|μ|/N}[μ].
    let p_inv = point_power(ring, -(rho as i64))?;
    let terms = p_inv.terms();
    assert_eq!(terms.len(), 1, "a Seidel power is a single term");
    let (e, label, c) = &terms[0];
    assert_eq!(c, &rat_int(1));
    let mu_size = schubert_size(label);
    assert_eq!(
        (d as i64 + e) * n as i64,
        -mu_size,
        "target must be the normalized degree-zero class"
    );
    let ring_idx = ring.label_index(label)?;
    let block = degree_zero_basis(ring)?;
    let block_idx = block
        .iter()
        .position(|&b| b == ring_idx)
        .expect("target lies in the degree-zero block");
    Ok(TargetSpec { rho, d, block_idx })
}

fn weight_is_zero(w: &RootValue, digits: u32) -> bool {
    match w {
        RootValue::Rational(r) => num_traits::Zero::is_zero(r),
        RootValue::Quadratic(_) => false,
        RootValue::Numeric(d) => {
            let tol = small_tolerance(digits / 2, d.prec());
            d.abs().cmp_value(&tol) == std::cmp::Ordering::Less
        }
    }
}

fn half_combination(a: &RootValue, b: &RootValue, subtract: bool, prec: u32) -> RootValue {
    let half = rat_frac(1, 2);
    match (a, b) {
        (RootValue::Numeric(_), _) | (_, RootValue::Numeric(_)) => {
            let x = value_to_dec(a, prec);
            let y = value_to_dec(b, prec);
            let s = if subtract { x.sub(&y) } else { x.add(&y) };
            RootValue::Numeric(s.div_int(2))
        }
        _ => {
            let x = match a {
                RootValue::Rational(r) => QuadExt::rational(r.clone()),
                RootValue::Quadratic(q) => q.clone(),
                RootValue::Numeric(_) => unreachable!(),
            };
            let y = match b {
                RootValue::Rational(r) => QuadExt::rational(r.clone()),
                RootValue::Quadratic(q) => q.clone(),
                RootValue::Numeric(_) => unreachable!(),
            };
            let s = if subtract { x.sub(&y) } else { x.add(&y) };
            let s = s.mul(&QuadExt::rational(half));
            if s.is_rational() {
                RootValue::Rational(s.rational_part().clone())
            } else {
                RootValue::Quadratic(s)
            }
        }
    }
}

fn base_form(sd: &SpectralData, space: String, terms: Vec<Term>) -> ClosedForm {
    let desc = sd.ring.descriptor();
    ClosedForm {
        space,
        q_degree: desc.q_degree as u64,
        dim: desc.dim as u64,
        ord_point: ord_point_gr(&sd.ring).expect("grassmannian ring"),
        provenance: Provenance::Synthesized,
        digits: sd.digits,
        terms,
    }
}

/// Closed form valid on one residue class of n+g mod ord(P): parity-free
/// terms whose weights are the projector entries at that class's target.
pub fn synthesize_closed_form(sd: &SpectralData, residue: u64) -> Result<ClosedForm> {
    let target = admissible_target(&sd.ring, residue)?;
    let mut terms = Vec::new();
    for s in &sd.spaces {
        let w = s.weight_for(target.block_idx);
        if weight_is_zero(&w, sd.digits) {
            continue;
        }
        terms.push(Term {
            weight: w,
            base: s.value.clone(),
            parity: Parity::None,
        });
    }
    let info = residue_info(&sd.ring)?;
    let space = format!("{}#res{}", sd.ring.descriptor().kind, residue % info.ord);
    Ok(base_form(sd, space, terms))
}

/// Single closed form covering every admissible (g, n, d). When two residue
/// classes exist they are merged with a degree-parity sign; more than two
/// classes (or classes whose degrees advance by a multiple of 4) cannot be
/// expressed this way and yield an error directing callers to per-residue
/// tables.
pub fn synthesize_full(sd: &SpectralData) -> Result<ClosedForm> {
    let info = residue_info(&sd.ring)?;
    let desc = sd.ring.descriptor();
    if info.classes == 1 {
        let mut form = synthesize_closed_form(sd, 1 % info.ord)?;
        form.space = desc.kind.to_string();
        return Ok(form);
    }
    if info.classes > 2 {
        return Err(Error::InadmissibleBranch(format!(
            "{} has {} residue classes; use per-residue tables",
            desc.kind, info.classes
        )));
    }
    let parity = if info.step % 2 == 1 {
        Parity::PowD
    } else if info.step % 4 == 2 {
        Parity::PowHalfD
    } else {
        return Err(Error::InadmissibleBranch(format!(
            "{}: admissible degrees advance by {} ≡ 0 mod 4, which no degree-parity sign separates",
            desc.kind, info.step
        )));
    };
    let t_even = admissible_target(&sd.ring, 1 % info.ord)?;
    let t_odd = admissible_target(&sd.ring, (info.t + 1) % info.ord)?;
    let mut terms = Vec::new();
    for s in &sd.spaces {
        let w_even = s.weight_for(t_even.block_idx);
        let w_odd = s.weight_for(t_odd.block_idx);
        let plain = half_combination(&w_even, &w_odd, false, sd.digits);
        let signed = half_combination(&w_even, &w_odd, true, sd.digits);
        if !weight_is_zero(&plain, sd.digits) {
            terms.push(Term {
                weight: plain,
                base: s.value.clone(),
                parity: Parity::None,
            });
        }
        if !weight_is_zero(&signed, sd.digits) {
            terms.push(Term {
                weight: signed,
                base: s.value.clone(),
                parity,
            });
        }
    }
    Ok(base_form(sd, desc.kind.to_string(), terms))
}

/// The involution q^e[X^λ] ↦ q^{-e}[X^{λ∨}] ⋆ P^{⋆-1}, extended linearly.
pub fn strange_dual(x: &QHElement) -> Result<QHElement> {
    let ring = x.ring();
    grassmann_shape(ring)?;
    let mut pre = QHElement::zero(ring);
    for (e, label, c) in x.terms() {
        let BasisLabel::Schubert(p) = &label else {
            return Err(Error::NotTypeA("expected Schubert labels".into()));
        };
        let dual = dual_partition(ring, p)?;
        pre = pre.add(&QHElement::from_term(
            ring,
            &BasisLabel::Schubert(dual),
            -e,
            c.clone(),
        )?)?;
    }
    pre.mul(&point_power(ring, -1)?)
}

/// Inner product making {q^e [X^λ]} orthonormal.
pub fn strange_inner(x: &QHElement, y: &QHElement) -> Result<Rat> {
    if x.ring().descriptor() != y.ring().descriptor() {
        return Err(Error::RingMismatch(
            "inner product needs elements of one ring".into(),
        ));
    }
    let mut acc = rat_int(0);
    for (e, label, c) in x.terms() {
        acc += c * y.coeff(&label, e)?;
    }
    Ok(acc)
}

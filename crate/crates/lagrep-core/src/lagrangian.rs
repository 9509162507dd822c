//! Hermitian Λ-modules and Lagrangian relations between them.
//!
//! A [`HermitianModule`] is a free module Λʳ with a non-degenerate
//! skew-hermitian Gram matrix G; the pairing is ω(x, y) = x̄ᵀ·G·y. A
//! [`Relation`] N: H ⇒ H′ is a submodule of (−H) ⊕ H′, stored as generator
//! columns whose top block lives in H and bottom block in H′.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::linalg::{self, GeneratorSet, LambdaMatrix, Verdict};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HermitianModule {
    gram: LambdaMatrix,
    label: String,
}

impl HermitianModule {
    /// Validates skew-hermitian symmetry and non-degeneracy of `gram`.
    pub fn new(gram: LambdaMatrix, label: impl Into<String>) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::NotSquare { rows: gram.rows(), cols: gram.cols() });
        }
        if gram.adjoint() != gram.neg() {
            return Err(Error::NotSkewHermitian);
        }
        if linalg::det(&gram)?.is_zero() {
            return Err(Error::Degenerate);
        }
        Ok(Self { gram, label: label.into() })
    }

    /// The zero module.
    pub fn zero() -> Self {
        Self { gram: LambdaMatrix::zeros(0, 0), label: String::from("0") }
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &LambdaMatrix {
        &self.gram
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// The same module with the opposite form, −H.
    pub fn negate(&self) -> Self {
        let mut label = String::from("-");
        label.push_str(&self.label);
        Self { gram: self.gram.neg(), label }
    }

    /// Orthogonal direct sum H ⊕ H′.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let label = alloc::format!("{} + {}", self.label, other.label);
        Self { gram: self.gram.direct_sum(&other.gram), label }
    }

    /// True when the two forms agree (labels are ignored).
    pub fn same_form(&self, other: &Self) -> bool {
        self.gram == other.gram
    }
}

/// ω(x, y) = x̄ᵀ·G·y: antilinear in x, linear in y.
pub fn pair(h: &HermitianModule, x: &[LaurentPoly], y: &[LaurentPoly]) -> Result<LaurentPoly> {
    let r = h.rank();
    if x.len() != r || y.len() != r {
        return Err(Error::DimensionMismatch { op: "pair", left: (x.len(), 1), right: (y.len(), 1) });
    }
    let gy = h.gram.mul_vec(y)?;
    let mut acc = LaurentPoly::zero();
    for (a, b) in x.iter().zip(&gy) {
        if !a.is_zero() && !b.is_zero() {
            acc += &(a.involute() * b);
        }
    }
    Ok(acc)
}

/// The matrix Āᵀ·G, whose kernel is Ann(A).
fn pairing_rows(h: &HermitianModule, a: &LambdaMatrix) -> Result<LambdaMatrix> {
    a.adjoint().mul(&h.gram)
}

fn check_ambient(h: &HermitianModule, a: &GeneratorSet) -> Result<()> {
    if a.ambient_rank() != h.rank() {
        return Err(Error::DimensionMismatch { op: "submodule", left: (h.rank(), h.rank()), right: a.gens().shape() });
    }
    Ok(())
}

/// A kernel basis that is certified, saturating if the first basis is not.
fn certified_kernel(m: &LambdaMatrix) -> Result<GeneratorSet> {
    let k = linalg::kernel(m);
    if k.certified_free_basis() {
        Ok(k)
    } else {
        linalg::saturate(&k)
    }
}

/// Ann(A) = {x : ω(a, x) = 0 for all a ∈ A}.
pub fn annihilator(h: &HermitianModule, a: &GeneratorSet) -> Result<GeneratorSet> {
    check_ambient(h, a)?;
    if a.is_empty() {
        return Ok(GeneratorSet::full(h.rank()));
    }
    certified_kernel(&pairing_rows(h, a.gens())?)
}

/// Ā, the closure of A.
pub fn closure(a: &GeneratorSet) -> Result<GeneratorSet> {
    linalg::saturate(a)
}

/// A ⊂ Ann(A), checked on generator pairs.
pub fn is_isotropic(h: &HermitianModule, a: &GeneratorSet) -> Result<bool> {
    check_ambient(h, a)?;
    Ok(pairing_rows(h, a.gens())?.mul(a.gens())?.is_zero())
}

/// Ā = Ann(A).
///
/// For isotropic A both sides are saturated and Ā ⊂ Ann(A); since ω is
/// non-degenerate, rk Ann(A) = rk H − rk A, so equality holds exactly when
/// 2·rk A = rk H. No basis of Ann(A) is needed.
pub fn is_lagrangian(h: &HermitianModule, a: &GeneratorSet) -> Result<bool> {
    Ok(is_isotropic(h, a)? && 2 * a.len() == h.rank())
}

/// [`is_lagrangian`] by computing both Ā and Ann(A) and comparing them as
/// submodules. Fails when either has no certified basis.
pub fn is_lagrangian_explicit(h: &HermitianModule, a: &GeneratorSet) -> Result<bool> {
    if !is_isotropic(h, a)? {
        return Ok(false);
    }
    linalg::span_eq(&closure(a)?, &annihilator(h, a)?)
}

/// The quotient Ann(A)/A on a free basis, with the data needed to project
/// vectors of Ann(A) to it.
#[derive(Clone, Debug)]
pub struct Quotient {
    /// H|A with the induced form.
    pub module: HermitianModule,
    /// Columns (in H) lifting the quotient basis.
    pub lift: LambdaMatrix,
    ann: GeneratorSet,
    /// Coordinates of A's generators in the basis of Ann(A).
    a_coords: LambdaMatrix,
    /// Rows of `a_coords` forming a unit minor, and the inverse of that minor.
    pivot_rows: Vec<usize>,
    pivot_inv: LambdaMatrix,
    free_rows: Vec<usize>,
}

impl Quotient {
    /// Coordinates in H|A of a vector of Ann(A); errors when `v ∉ Ann(A)`.
    pub fn project(&self, v: &[LaurentPoly]) -> Result<Vec<LaurentPoly>> {
        let y = linalg::coordinates(&self.ann, v)?.ok_or(Error::NotIsotropic)?;
        let y_piv: Vec<LaurentPoly> = self.pivot_rows.iter().map(|&i| y[i].clone()).collect();
        let x = self.pivot_inv.mul_vec(&y_piv)?;
        let cx = self.a_coords.mul_vec(&x)?;
        Ok(self.free_rows.iter().map(|&i| &y[i] - &cx[i]).collect())
    }
}

/// Builds H|A = Ann(A)/A for an isotropic closed A, by completing A's
/// generators to a basis of Ann(A) along a unit maximal minor.
pub fn quotient(h: &HermitianModule, a: &GeneratorSet) -> Result<Quotient> {
    check_ambient(h, a)?;
    if !is_isotropic(h, a)? {
        return Err(Error::NotIsotropic);
    }
    if !a.certified_free_basis() {
        return Err(Error::NotClosed);
    }
    let ann = annihilator(h, a)?;
    let k = a.len();
    let mut cols = Vec::with_capacity(k);
    for c in a.gens().columns() {
        cols.push(linalg::coordinates(&ann, &c)?.ok_or(Error::NotIsotropic)?);
    }
    let a_coords = LambdaMatrix::from_columns(ann.len(), &cols)?;
    let r = ann.len();
    let pivot_rows = unit_minor_rows(&a_coords).ok_or(Error::NoFreeBasis("quotient Ann(A)/A"))?;
    let pivot_inv = linalg::inverse(&a_coords.select_rows(&pivot_rows))?;
    let free_rows: Vec<usize> = (0..r).filter(|i| !pivot_rows.contains(i)).collect();
    let lift = ann.gens().select_cols(&free_rows);
    let gram = lift.adjoint().mul(h.gram())?.mul(&lift)?;
    let module = HermitianModule::new(gram, alloc::format!("{}|A", h.label()))?;
    Ok(Quotient { module, lift, ann, a_coords, pivot_rows, pivot_inv, free_rows })
}

/// First set of k rows (lexicographic) of an r×k matrix whose minor is a unit.
fn unit_minor_rows(m: &LambdaMatrix) -> Option<Vec<usize>> {
    let k = m.cols();
    let r = m.rows();
    if k == 0 {
        return Some(Vec::new());
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if linalg::det(&m.select_rows(&idx)).ok()?.is_unit() {
            return Some(idx);
        }
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if idx[i] < r - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Contraction along A: returns H|A and L|A = ((L + A) ∩ Ann(A))/A.
pub fn contract(h: &HermitianModule, l: &GeneratorSet, a: &GeneratorSet) -> Result<(HermitianModule, GeneratorSet)> {
    check_ambient(h, l)?;
    let q = quotient(h, a)?;
    // (L + A) ∩ Ann(A) = L·ker(Āᵀ G L) + A because A is isotropic.
    let z = if a.is_empty() || l.is_empty() {
        GeneratorSet::full(l.len())
    } else {
        certified_kernel(&pairing_rows(h, a.gens())?.mul(l.gens())?)?
    };
    let lz = l.gens().mul(z.gens())?;
    let mut projected = Vec::with_capacity(lz.cols());
    for c in lz.columns() {
        projected.push(q.project(&c)?);
    }
    let m = LambdaMatrix::from_columns(q.module.rank(), &projected)?;
    let contracted = linalg::saturated_span(&m)?;
    Ok((q.module, contracted))
}

/// A relation N: H ⇒ H′, a submodule of (−H) ⊕ H′.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    source: HermitianModule,
    target: HermitianModule,
    gens: GeneratorSet,
    transversal: bool,
}

impl Relation {
    /// Validates the ambient rank and isotropy of the generators.
    pub fn new(source: HermitianModule, target: HermitianModule, gens: GeneratorSet) -> Result<Self> {
        let rel = Self { source, target, gens, transversal: true };
        if rel.gens.ambient_rank() != rel.source.rank() + rel.target.rank() {
            return Err(Error::DimensionMismatch {
                op: "relation",
                left: (rel.source.rank(), rel.target.rank()),
                right: rel.gens.gens().shape(),
            });
        }
        if !is_isotropic(&rel.ambient(), &rel.gens)? {
            return Err(Error::NotIsotropic);
        }
        Ok(rel)
    }

    /// Builds from the two stacked blocks M (in H) and M′ (in H′).
    pub fn from_blocks(source: HermitianModule, target: HermitianModule, m: &LambdaMatrix, m_prime: &LambdaMatrix) -> Result<Self> {
        Self::new(source, target, GeneratorSet::new(m.vstack(m_prime)?)?)
    }

    pub fn source(&self) -> &HermitianModule {
        &self.source
    }

    pub fn target(&self) -> &HermitianModule {
        &self.target
    }

    pub fn gens(&self) -> &GeneratorSet {
        &self.gens
    }

    /// Whether the composition that produced this relation was transversal
    /// (always true for relations not built by composition).
    pub fn transversal(&self) -> bool {
        self.transversal
    }

    /// (−H) ⊕ H′.
    pub fn ambient(&self) -> HermitianModule {
        self.source.negate().direct_sum(&self.target)
    }

    /// Top block M.
    pub fn m(&self) -> LambdaMatrix {
        self.gens.gens().slice_rows(0..self.source.rank()).expect("top block")
    }

    /// Bottom block M′.
    pub fn m_prime(&self) -> LambdaMatrix {
        let r = self.gens.ambient_rank();
        self.gens.gens().slice_rows(self.source.rank()..r).expect("bottom block")
    }

    pub fn is_lagrangian(&self) -> Result<bool> {
        is_lagrangian(&self.ambient(), &self.gens)
    }

    /// Equality as submodules (mutual membership).
    pub fn same_as(&self, other: &Self) -> Result<bool> {
        if !self.source.same_form(&other.source) || !self.target.same_form(&other.target) {
            return Ok(false);
        }
        linalg::span_eq(&self.gens, &other.gens)
    }

    /// The closure N̄.
    pub fn closure(&self) -> Result<Self> {
        Ok(Self { gens: closure(&self.gens)?, ..self.clone() })
    }
}

/// N₂N₁: H₁ ⇒ H₃ for N₁: H₁ ⇒ H₂ and N₂: H₂ ⇒ H₃.
///
/// Solves (−M′₁ | M′₂)·(w₁; w₂) = 0 and returns the span of
/// (M₁W₁; M″₂W₂). The result is flagged non-transversal when those columns
/// are dependent, i.e. when some nonzero h₂ has 0 ⊕ h₂ ∈ N₁ and h₂ ⊕ 0 ∈ N₂.
pub fn compose(n1: &Relation, n2: &Relation) -> Result<Relation> {
    if !n1.target.same_form(&n2.source) {
        return Err(Error::ModuleMismatch);
    }
    let (m1, m1p) = (n1.m(), n1.m_prime());
    let (m2p, m2pp) = (n2.m(), n2.m_prime());
    let k1 = n1.gens.len();
    let w = if n1.target.rank() == 0 { GeneratorSet::full(k1 + n2.gens.len()) } else { certified_kernel(&m1p.neg().hstack(&m2p)?)? };
    let w1 = w.gens().slice_rows(0..k1)?;
    let w2 = w.gens().slice_rows(k1..w.ambient_rank())?;
    let stacked = m1.mul(&w1)?.vstack(&m2pp.mul(&w2)?)?;
    let transversal = linalg::rank_q(&stacked) == stacked.cols();
    let gens = if transversal { GeneratorSet::new(stacked)? } else { linalg::basis_of_span(&stacked)? };
    let mut rel = Relation::new(n1.source.clone(), n2.target.clone(), gens)?;
    rel.transversal = transversal;
    Ok(rel)
}

/// N₂ ∘ N₁ = closure of N₂N₁.
pub fn compose_bar(n1: &Relation, n2: &Relation) -> Result<Relation> {
    compose(n1, n2)?.closure()
}

/// diag_H: H ⇒ H.
pub fn diagonal(h: &HermitianModule) -> Relation {
    let r = h.rank();
    let i = LambdaMatrix::identity(r);
    let gens = GeneratorSet::from_parts(i.vstack(&i).expect("same width"), Verdict::CertifiedSaturated);
    Relation { source: h.clone(), target: h.clone(), gens, transversal: true }
}

/// Checks M̄ᵀ·G′·M = G.
pub fn is_unitary(m: &LambdaMatrix, h: &HermitianModule, h2: &HermitianModule) -> Result<bool> {
    if m.shape() != (h2.rank(), h.rank()) {
        return Err(Error::DimensionMismatch { op: "unitary", left: m.shape(), right: (h2.rank(), h.rank()) });
    }
    Ok(m.adjoint().mul(h2.gram())?.mul(m)? == *h.gram())
}

/// Γ_f = {h ⊕ f(h)} for a unitary f: H → H′ with matrix `m` (columns =
/// images of the basis of H).
pub fn graph(m: &LambdaMatrix, h: &HermitianModule, h2: &HermitianModule) -> Result<Relation> {
    if !is_unitary(m, h, h2)? {
        return Err(Error::NotUnitary);
    }
    let stacked = LambdaMatrix::identity(h.rank()).vstack(m)?;
    let gens = GeneratorSet::from_parts(stacked, Verdict::CertifiedSaturated);
    Ok(Relation { source: h.clone(), target: h2.clone(), gens, transversal: true })
}

/// Γ⁰_φ = {h ⊕ φ(h) | h ∈ H, φ(h) ∈ H′} for φ = num/den unitary over Q(Λ).
pub fn restricted_graph(num: &LambdaMatrix, den: &LaurentPoly, h: &HermitianModule, h2: &HermitianModule) -> Result<Relation> {
    if den.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if num.shape() != (h2.rank(), h.rank()) {
        return Err(Error::DimensionMismatch { op: "restricted_graph", left: num.shape(), right: (h2.rank(), h.rank()) });
    }
    let lhs = num.adjoint().mul(h2.gram())?.mul(num)?;
    let norm = den * &den.involute();
    if lhs != h.gram().scale(&norm) {
        return Err(Error::NotUnitary);
    }
    let stacked = LambdaMatrix::identity(h.rank()).scale(den).vstack(num)?;
    let gens = linalg::saturate(&GeneratorSet::new(stacked)?)?;
    Relation::new(h.clone(), h2.clone(), gens)
}

//! Alexander polynomials of closures, read off from the relation matrices.
//!
//! Three exact routes and one bounded one:
//!
//! - braid closures: det(M − I) divided by (t^ℓ − 1)/(t − 1);
//! - rational links C(a₁, …, a_n): one entry of a 3-strand oriented braid
//!   matrix;
//! - two-strand tangles: the pair (m₁, m₂) spanning the relation of the
//!   bent tangle, whose entries are the polynomials of the two closures;
//! - general (ε, ε)-tangles: det(M′ − M), correct up to an unknown divisor
//!   of (t^ℓ − 1)/(t − 1), which is reported rather than guessed.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::burau::{self, BraidWord};
use crate::diskhomology::SignSeq;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::linalg::{self, LambdaMatrix};
use crate::tanglecat::{self, TangleWord, Token};

/// How much of the answer is determined.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ambiguity {
    /// The polynomial is the canonical representative of Δ.
    Exact,
    /// The polynomial is δ·Δ for some divisor δ of the carried bound.
    UpToDivisor(LaurentPoly),
}

/// An Alexander polynomial in canonical form with its ambiguity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlexanderResult {
    pub poly: LaurentPoly,
    pub ambiguity: Ambiguity,
}

impl AlexanderResult {
    pub fn exact(p: &LaurentPoly) -> Self {
        Self { poly: p.canonical(), ambiguity: Ambiguity::Exact }
    }

    pub fn is_exact(&self) -> bool {
        self.ambiguity == Ambiguity::Exact
    }
}

impl fmt::Display for AlexanderResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.ambiguity {
            Ambiguity::Exact => write!(f, "{}", self.poly),
            Ambiguity::UpToDivisor(d) => write!(f, "{} (up to a divisor of {d})", self.poly),
        }
    }
}

/// (t^ℓ − 1)/(t − 1) as a Laurent polynomial (ℓ ≠ 0); for ℓ < 0 this is
/// −t^ℓ(1 + t + ⋯ + t^{−ℓ−1}).
pub fn divisor_bound(ell: i32) -> Result<LaurentPoly> {
    if ell == 0 {
        return Err(Error::Unsupported("the divisor bound needs nonzero total sign".into()));
    }
    let num = &LaurentPoly::monomial(1, ell) - &LaurentPoly::one();
    LaurentPoly::exact_div(&num, &LaurentPoly::from_terms([(1, 1), (0, -1)]))
}

/// Δ of the closure of β with strand signs `eps`:
/// det(M_β − I) / ((t^ℓ − 1)/(t − 1)).
pub fn alexander_braid_closure(w: &BraidWord, eps: &SignSeq) -> Result<AlexanderResult> {
    let (m, top) = burau::as_functor(w, eps)?;
    if &top != eps {
        return Err(Error::Unsupported(format!("closure needs the top signs {top} to equal the bottom signs {eps}")));
    }
    let d = linalg::det(&m.sub(&LambdaMatrix::identity(m.rows()))?)?;
    let q = LaurentPoly::exact_div(&d, &divisor_bound(eps.ell())?)?;
    Ok(AlexanderResult::exact(&q))
}

/// The braid a word spells, if it has crossings only.
fn as_braid(word: &TangleWord) -> Option<BraidWord> {
    let letters = word
        .tokens()
        .iter()
        .map(|t| match *t {
            Token::Sigma { i, sign } => Some((i, sign)),
            _ => None,
        })
        .collect::<Option<Vec<_>>>()?;
    BraidWord::new(word.bottom().len(), letters).ok()
}

/// Δ of the closure of an (ε, ε)-tangle from det(M′ − M). Pure braid words
/// are cross-checked against [`alexander_braid_closure`] and returned exact.
/// Otherwise the result is exact only when the divisor bound is a unit.
///
/// The word must denote a topologically trivial tangle (one whose
/// exterior is a handlebody, such as a braid or a rational tangle); this
/// cannot be checked and is the caller's obligation. For a knotted arc the
/// determinant misses the knot entirely. Words with closed components are
/// never topologically trivial and are rejected.
pub fn alexander_trivial_tangle_closure(word: &TangleWord) -> Result<AlexanderResult> {
    let eps = word.bottom();
    if word.top() != eps {
        return Err(Error::Unsupported(format!("closure needs equal end signs, got {eps} and {}", word.top())));
    }
    if word.trace().closed != 0 {
        return Err(Error::Unsupported(format!(
            "the tangle has {} closed components; the determinant formula needs a topologically trivial tangle",
            word.trace().closed
        )));
    }
    let bound = divisor_bound(eps.ell())?;
    let rel = tanglecat::relation_of_word(word)?;
    let (m, mp) = (rel.m(), rel.m_prime());
    if !m.is_square() || !mp.is_square() {
        return Err(Error::RankMismatch { expected: m.rows(), found: m.cols() });
    }
    let d = linalg::det(&mp.sub(&m)?)?;
    if let Some(b) = as_braid(word) {
        let exact = alexander_braid_closure(&b, eps)?;
        let numerator = &exact.poly * &bound;
        if !numerator.unit_equiv(&d) {
            return Err(Error::Construction(format!("tangle determinant {d} disagrees with braid determinant {numerator}")));
        }
        return Ok(exact);
    }
    if bound.is_unit() {
        return Ok(AlexanderResult::exact(&d));
    }
    Ok(AlexanderResult { poly: d.canonical(), ambiguity: Ambiguity::UpToDivisor(bound.canonical()) })
}

/// The 3-strand braid σ₂^{a₁} σ₁^{−a₂} σ₂^{a₃} ⋯.
pub fn rational_braid(a: &[i64]) -> Result<BraidWord> {
    let mut letters = Vec::new();
    for (k, &ak) in a.iter().enumerate() {
        let (gen, exp) = if k % 2 == 0 { (2, ak) } else { (1, -ak) };
        let sign = if exp < 0 { -1 } else { 1 };
        for _ in 0..exp.unsigned_abs() {
            letters.push((gen, sign));
        }
    }
    BraidWord::new(3, letters)
}

/// The (ε, ε)-tangle whose closure is C(a): the braid, then (for even
/// length) σ₁σ₂, then a cap and a cup on the first two strands.
pub fn rational_word(a: &[i64], eps: &SignSeq) -> Result<TangleWord> {
    if a.is_empty() {
        return Err(Error::Unsupported("rational link needs at least one coefficient".into()));
    }
    if eps.len() != 3 {
        return Err(Error::DimensionMismatch { op: "rational link signs", left: (3, 0), right: (eps.len(), 0) });
    }
    let mut tokens: Vec<Token> = rational_braid(a)?.letters().iter().map(|&(i, sign)| Token::Sigma { i, sign }).collect();
    if a.len().is_multiple_of(2) {
        tokens.extend([Token::Sigma { i: 1, sign: 1 }, Token::Sigma { i: 2, sign: 1 }]);
    }
    tokens.extend([Token::Cap, Token::Cup { sign: eps.get(0) }]);
    let word = tanglecat::validate(eps, &tokens)?;
    if word.top() != eps {
        return Err(Error::Unsupported(format!("orientation {eps} is inconsistent: the closure would need top signs {}", word.top())));
    }
    Ok(word)
}

/// A consistent orientation of a rational link with its linking data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalOrientation {
    pub eps: SignSeq,
    /// Number of link components.
    pub components: usize,
    /// Linking number of the two components (two-component links only).
    pub linking: Option<i32>,
}

/// All sign sequences that orient the closure of the rational tangle.
pub fn rational_orientations(a: &[i64]) -> Result<Vec<RationalOrientation>> {
    let mut out = Vec::new();
    for bits in 0..8u8 {
        let eps = SignSeq::new((0..3).map(|k| if bits >> k & 1 == 1 { -1 } else { 1 }).collect())?;
        let Ok(word) = rational_word(a, &eps) else { continue };
        let lk = word.trace().closure_linking();
        let linking = if lk.len() == 2 { Some(lk[0][1]) } else { None };
        out.push(RationalOrientation { eps, components: lk.len(), linking });
    }
    Ok(out)
}

/// Δ of C(a) with strand signs `eps`: the entry m₂₁ (odd length) or m₁₁
/// (even length) of the oriented matrix of σ(a).
pub fn rational_link(a: &[i64], eps: &SignSeq) -> Result<AlexanderResult> {
    rational_word(a, eps)?;
    let m = burau::oriented_braid_matrix(&rational_braid(a)?, eps)?;
    let entry = if a.len() % 2 == 1 { m.get(1, 0) } else { m.get(0, 0) };
    Ok(AlexanderResult::exact(entry))
}

/// Picks the orientation with total sign `epsilon` (and, for two-component
/// links, the requested linking number) and computes Δ. Fails when the
/// choice is ambiguous and the answers differ.
pub fn rational_link_oriented(a: &[i64], epsilon: i8, linking: Option<i32>) -> Result<(AlexanderResult, SignSeq)> {
    let candidates: Vec<RationalOrientation> = rational_orientations(a)?
        .into_iter()
        .filter(|o| o.eps.ell() == epsilon as i32 && (linking.is_none() || o.linking == linking))
        .collect();
    let mut found: Option<(AlexanderResult, SignSeq)> = None;
    for o in candidates {
        let r = rational_link(a, &o.eps)?;
        match &found {
            None => found = Some((r, o.eps)),
            Some((prev, _)) if prev == &r => {}
            Some(_) => {
                return Err(Error::Unsupported("orientations with different polynomials match; give a linking number".into()));
            }
        }
    }
    found.ok_or_else(|| Error::Unsupported(format!("no orientation of C{a:?} has total sign {epsilon} and linking {linking:?}")))
}

/// The pair (m₁, m₂) of a two-strand tangle, up to a common unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwoStrandInvariant {
    m1: LaurentPoly,
    m2: LaurentPoly,
}

impl TwoStrandInvariant {
    /// Scales the pair so that its first nonzero entry is canonical.
    pub fn new(m1: LaurentPoly, m2: LaurentPoly) -> Self {
        let lead = if m1.is_zero() { &m2 } else { &m1 };
        if lead.is_zero() {
            return Self { m1, m2 };
        }
        let (s, k) = lead.normalizing_unit();
        let u = LaurentPoly::unit(s, k);
        Self { m1: &m1 * &u, m2: &m2 * &u }
    }

    pub fn m1(&self) -> &LaurentPoly {
        &self.m1
    }

    pub fn m2(&self) -> &LaurentPoly {
        &self.m2
    }
}

impl fmt::Display for TwoStrandInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.m1, self.m2)
    }
}

/// Bends a (2,2)-tangle from ε to ε′ into a tangle from no points to
/// (ε′₁, ε′₂, −ε₂, −ε₁): two nested cups, then the tangle on the inner
/// pair.
pub fn bend(word: &TangleWord) -> Result<TangleWord> {
    let eps = word.bottom();
    if eps.len() != 2 || word.top().len() != 2 {
        return Err(Error::Unsupported(format!("bending needs a (2,2)-tangle, got {eps} to {}", word.top())));
    }
    let mut tokens = vec![Token::Cup { sign: eps.get(0) }];
    tokens.extend(tanglecat::cup_at(eps.get(1), 2));
    tokens.extend_from_slice(word.tokens());
    tanglecat::validate(&SignSeq::empty(), &tokens)
}

/// Reads (m₁, m₂) off a tangle from no points to four points with zero total
/// sign: its relation has rank one, spanned by m₁v₁ + m₂v₂.
pub fn invariant_of_bent(bent: &TangleWord) -> Result<TwoStrandInvariant> {
    if !bent.bottom().is_empty() || bent.top().len() != 4 || bent.top().ell() != 0 {
        return Err(Error::Unsupported(format!("expected a bent tangle ending in four points of total sign 0, got {}", bent.top())));
    }
    if bent.trace().closed != 0 {
        return Err(Error::Unsupported(format!("the tangle has {} closed components", bent.trace().closed)));
    }
    let rel = tanglecat::relation_of_word(bent)?;
    let mp = rel.m_prime();
    if mp.cols() != 1 || mp.rows() != 2 {
        return Err(Error::RankMismatch { expected: 1, found: mp.cols() });
    }
    Ok(TwoStrandInvariant::new(mp.get(0, 0).clone(), mp.get(1, 0).clone()))
}

/// (m₁, m₂) of a (2,2)-tangle without closed components.
pub fn two_strand_invariant(word: &TangleWord) -> Result<TwoStrandInvariant> {
    let trace = word.trace();
    if trace.closed != 0 {
        return Err(Error::Unsupported(format!("the tangle has {} closed components", trace.closed)));
    }
    invariant_of_bent(&bend(word)?)
}

/// Δ of the denominator and numerator closures: (m₁, m₂) in canonical form.
pub fn closure_modules(inv: &TwoStrandInvariant) -> (AlexanderResult, AlexanderResult) {
    (AlexanderResult::exact(&inv.m1), AlexanderResult::exact(&inv.m2))
}

/// Moves on two-strand tangles from (−,+) to (−,+).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TwoStrandOp {
    Reflect,
    Rotate,
    TwistRight,
    TwistTop,
}

impl TwoStrandOp {
    pub const ALL: [TwoStrandOp; 4] = [TwoStrandOp::Reflect, TwoStrandOp::Rotate, TwoStrandOp::TwistRight, TwoStrandOp::TwistTop];

    /// The crossing that realises a twist on the bent tangle: top endpoints
    /// sit at positions 1, 2 and the right-hand pair at 2, 3.
    pub fn bent_crossing(self) -> Option<Token> {
        match self {
            TwoStrandOp::TwistRight => Some(Token::Sigma { i: 2, sign: 1 }),
            TwoStrandOp::TwistTop => Some(Token::Sigma { i: 1, sign: 1 }),
            _ => None,
        }
    }
}

impl core::str::FromStr for TwoStrandOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "reflect" => Ok(Self::Reflect),
            "rotate" => Ok(Self::Rotate),
            "twist_right" | "twist-right" => Ok(Self::TwistRight),
            "twist_top" | "twist-top" => Ok(Self::TwistTop),
            other => Err(Error::Parse(format!("unknown two-strand move {other:?}"))),
        }
    }
}

/// The same tangle with every strand reversed: all signs negate, crossings
/// keep their letters. The invariant of the reversed tangle is the
/// involution of the original pair.
pub fn reverse_orientation(word: &TangleWord) -> Result<TangleWord> {
    let bottom = SignSeq::new(word.bottom().signs().iter().map(|s| -s).collect())?;
    let tokens: Vec<Token> = word
        .tokens()
        .iter()
        .map(|t| match *t {
            Token::Cup { sign } => Token::Cup { sign: -sign },
            other => other,
        })
        .collect();
    tanglecat::validate(&bottom, &tokens)
}

/// The mirror image: every crossing inverted.
pub fn mirror(word: &TangleWord) -> Result<TangleWord> {
    let tokens: Vec<Token> = word
        .tokens()
        .iter()
        .map(|t| match *t {
            Token::Sigma { i, sign } => Token::Sigma { i, sign: -sign },
            other => other,
        })
        .collect();
    tanglecat::validate(word.bottom(), &tokens)
}

/// Recomputes the invariant of the tangle obtained from `word` by a move,
/// working on the bent tangle: twists append a crossing of two boundary
/// points, reflection mirrors, and the quarter turn shifts the four points
/// cyclically (σ₃σ₂σ₁) and then reverses all strands so that the signs
/// return to (−,+,−,+); reversal conjugates the pair, so it is undone by
/// the involution.
pub fn recompute_two_strand(word: &TangleWord, op: TwoStrandOp) -> Result<TwoStrandInvariant> {
    let bent = bend(word)?;
    match op {
        TwoStrandOp::TwistRight | TwoStrandOp::TwistTop => {
            let crossing = op.bent_crossing().expect("twists have a crossing");
            invariant_of_bent(&bent.then(&[crossing])?)
        }
        TwoStrandOp::Reflect => invariant_of_bent(&bend(&mirror(word)?)?),
        TwoStrandOp::Rotate => {
            let shifted = bent.then(&[Token::Sigma { i: 3, sign: 1 }, Token::Sigma { i: 2, sign: 1 }, Token::Sigma { i: 1, sign: 1 }])?;
            let inv = invariant_of_bent(&reverse_orientation(&shifted)?)?;
            Ok(TwoStrandInvariant::new(inv.m1.involute(), inv.m2.involute()))
        }
    }
}

/// Applies a move to the invariant of a tangle from (−,+) to (−,+).
pub fn transform_two_strand(inv: &TwoStrandInvariant, op: TwoStrandOp, eps: &SignSeq, eps_top: &SignSeq) -> Result<TwoStrandInvariant> {
    let conv = SignSeq::new(vec![-1, 1])?;
    if eps != &conv || eps_top != &conv {
        return Err(Error::Unsupported(format!("two-strand moves are implemented for signs (-,+) to (-,+) only, got {eps} to {eps_top}")));
    }
    let (m1, m2) = (&inv.m1, &inv.m2);
    let t = LaurentPoly::t();
    Ok(match op {
        TwoStrandOp::Reflect => TwoStrandInvariant::new(m1.clone(), -m2),
        TwoStrandOp::Rotate => TwoStrandInvariant::new(m2.clone(), -m1),
        TwoStrandOp::TwistRight => TwoStrandInvariant::new(&t * m1, m1 - m2),
        TwoStrandOp::TwistTop => TwoStrandInvariant::new(m2 - &(&t * m1), m2.clone()),
    })
}

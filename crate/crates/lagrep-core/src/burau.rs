//! Braid words, the Burau representation and the oriented braid matrices.
//!
//! Two multiplication orders coexist and are kept apart by name:
//!
//! - [`as_group_rep`] multiplies generator matrices left to right in the
//!   order the letters are written (a representation of Bₙ);
//! - [`as_functor`] follows strands bottom to top: the matrix of the word
//!   w₁⋯w_k is M_k⋯M₁, the composite of the maps each letter induces on
//!   the homology of the punctured disk (an anti-representation of Bₙ).

use alloc::format;
use alloc::vec::Vec;

use crate::diskhomology::SignSeq;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::linalg::{self, LambdaMatrix};

/// A word in the Artin generators σ₁ … σ_{n−1} and their inverses.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<(usize, i8)>,
}

impl BraidWord {
    /// Letters are (i, ±1) with 1 ≤ i ≤ strands − 1.
    pub fn new(strands: usize, letters: Vec<(usize, i8)>) -> Result<Self> {
        for (k, &(i, s)) in letters.iter().enumerate() {
            if i == 0 || i + 1 > strands {
                return Err(Error::InvalidWord {
                    index: k,
                    reason: format!("generator s{i} needs 1 <= i <= {}", strands.saturating_sub(1)),
                });
            }
            if s != 1 && s != -1 {
                return Err(Error::InvalidWord { index: k, reason: format!("exponent {s} is not +1 or -1") });
            }
        }
        Ok(Self { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.letters
    }

    /// Concatenation self·other.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        if self.strands != other.strands {
            return Err(Error::DimensionMismatch { op: "braid concat", left: (self.strands, 0), right: (other.strands, 0) });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Self { strands: self.strands, letters })
    }

    /// The inverse braid.
    pub fn inverse(&self) -> Self {
        Self { strands: self.strands, letters: self.letters.iter().rev().map(|&(i, s)| (i, -s)).collect() }
    }

    /// The permutation induced on strand positions: `perm[p]` is the final
    /// position of the strand starting at position p (0-based).
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect();
        for &(i, _) in &self.letters {
            at.swap(i - 1, i);
        }
        let mut perm = alloc::vec![0; self.strands];
        for (pos, &strand) in at.iter().enumerate() {
            perm[strand] = pos;
        }
        perm
    }

    /// Signs at the top when the bottom carries `eps`.
    pub fn top_signs(&self, eps: &SignSeq) -> Result<SignSeq> {
        if eps.len() != self.strands {
            return Err(Error::DimensionMismatch { op: "braid signs", left: (self.strands, 0), right: (eps.len(), 0) });
        }
        Ok(self.letters.iter().fold(eps.clone(), |e, &(i, _)| e.swapped(i - 1)))
    }
}

fn burau_generator(n: usize, i: usize, sign: i8) -> LambdaMatrix {
    let mut m = LambdaMatrix::identity(n);
    let (a, b) = (i - 1, i);
    let block: [[LaurentPoly; 2]; 2] = if sign > 0 {
        [[LaurentPoly::from_terms([(0, 1), (1, -1)]), LaurentPoly::t()], [LaurentPoly::one(), LaurentPoly::zero()]]
    } else {
        [[LaurentPoly::zero(), LaurentPoly::one()], [LaurentPoly::monomial(1, -1), LaurentPoly::from_terms([(0, 1), (-1, -1)])]]
    };
    for (r, row) in block.into_iter().enumerate() {
        for (c, v) in row.into_iter().enumerate() {
            m.set([a, b][r], [a, b][c], v);
        }
    }
    m
}

/// Unreduced Burau matrix: σᵢ ↦ I ⊕ (1−t t; 1 0) ⊕ I, letters multiplied
/// left to right.
pub fn burau_unreduced(w: &BraidWord) -> LambdaMatrix {
    w.letters.iter().fold(LambdaMatrix::identity(w.strands), |acc, &(i, s)| acc.mul(&burau_generator(w.strands, i, s)).expect("square"))
}

/// Matrix of the map induced by the positive crossing σᵢ on the v-basis of
/// the disk with signs `eps` (columns are images of v₁ … v_{n−1}).
///
/// With e = t^(εᵢ₊₁) (1-based): vᵢ₋₁ ↦ v′ᵢ₋₁ + e·v′ᵢ, vᵢ ↦ −e·v′ᵢ,
/// vᵢ₊₁ ↦ v′ᵢ + v′ᵢ₊₁, all other basis vectors fixed.
pub fn oriented_generator(i: usize, eps: &SignSeq) -> Result<LambdaMatrix> {
    let n = eps.len();
    if i == 0 || i + 1 > n {
        return Err(Error::OutOfRange { what: "generator index", value: i, max: n.saturating_sub(1) });
    }
    let r = n - 1;
    let e = LaurentPoly::monomial(1, eps.get(i) as i32);
    let mut m = LambdaMatrix::identity(r);
    let c = i - 1;
    if c >= 1 {
        m.set(c, c - 1, e.clone());
    }
    m.set(c, c, -&e);
    if c + 1 < r {
        m.set(c, c + 1, LaurentPoly::one());
    }
    Ok(m)
}

/// Matrix of a single letter (i, sign) applied to `eps`; the inverse
/// crossing is the inverse of the positive crossing from the swapped signs.
pub fn oriented_letter(i: usize, sign: i8, eps: &SignSeq) -> Result<LambdaMatrix> {
    if sign > 0 {
        oriented_generator(i, eps)
    } else {
        if i == 0 || i + 1 > eps.len() {
            return Err(Error::OutOfRange { what: "generator index", value: i, max: eps.len().saturating_sub(1) });
        }
        linalg::inverse(&oriented_generator(i, &eps.swapped(i - 1))?)
    }
}

/// Oriented braid matrix in functor order: word w₁⋯w_k ↦ M_k⋯M₁, each Mⱼ
/// evaluated on the signs reached after w₁⋯wⱼ₋₁. Returns the matrix and
/// the top signs.
pub fn as_functor(w: &BraidWord, eps: &SignSeq) -> Result<(LambdaMatrix, SignSeq)> {
    if eps.len() != w.strands {
        return Err(Error::DimensionMismatch { op: "oriented braid", left: (w.strands, 0), right: (eps.len(), 0) });
    }
    let mut cur = eps.clone();
    let mut acc = LambdaMatrix::identity(w.strands.saturating_sub(1));
    for &(i, s) in &w.letters {
        let m = oriented_letter(i, s, &cur)?;
        acc = m.mul(&acc)?;
        cur = cur.swapped(i - 1);
    }
    Ok((acc, cur))
}

/// The oriented braid matrix M_{f_β} (functor order).
pub fn oriented_braid_matrix(w: &BraidWord, eps: &SignSeq) -> Result<LambdaMatrix> {
    Ok(as_functor(w, eps)?.0)
}

/// The reduced Burau representation ρ, in group order: the all-positive
/// oriented generator matrices multiplied left to right.
pub fn as_group_rep(w: &BraidWord) -> Result<LambdaMatrix> {
    let plus = SignSeq::new(alloc::vec![1; w.strands])?;
    let mut acc = LambdaMatrix::identity(w.strands.saturating_sub(1));
    for &(i, s) in &w.letters {
        acc = acc.mul(&oriented_letter(i, s, &plus)?)?;
    }
    Ok(acc)
}

/// Alias of [`as_group_rep`].
pub fn rho_reduced(w: &BraidWord) -> Result<LambdaMatrix> {
    as_group_rep(w)
}

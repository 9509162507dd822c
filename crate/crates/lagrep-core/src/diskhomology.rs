//! The objects of the tangle category: for a sign sequence ε of length n,
//! the first homology of the infinite cyclic cover of the n-punctured disk,
//! with basis v₁ … v_{n−1} (vᵢ = êᵢ − êᵢ₊₁) and its Hermitian form.
//!
//! When the signs sum to zero the relevant object is the punctured sphere,
//! whose homology is the disk module modulo one lifted boundary class γ̂.
//! That class always has a unit coefficient, so the quotient is free on the
//! remaining basis vectors.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::lagrangian::HermitianModule;
use crate::laurent::LaurentPoly;
use crate::linalg::LambdaMatrix;

/// A finite sequence of orientation signs ±1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SignSeq(Vec<i8>);

impl SignSeq {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if let Some(pos) = signs.iter().position(|&s| s != 1 && s != -1) {
            return Err(Error::Parse(format!("sign #{} is {}, expected +1 or -1", pos + 1, signs[pos])));
        }
        Ok(Self(signs))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn signs(&self) -> &[i8] {
        &self.0
    }

    /// Sign at 0-based position `i`.
    pub fn get(&self, i: usize) -> i8 {
        self.0[i]
    }

    /// ℓ_ε, the sum of the signs.
    pub fn ell(&self) -> i32 {
        self.0.iter().map(|&s| s as i32).sum()
    }

    /// The sequence with positions `i` and `i + 1` (0-based) exchanged.
    pub fn swapped(&self, i: usize) -> Self {
        let mut v = self.0.clone();
        v.swap(i, i + 1);
        Self(v)
    }

    /// The sequence with (s, −s) inserted in front.
    pub fn with_cup(&self, s: i8) -> Self {
        let mut v = vec![s, -s];
        v.extend_from_slice(&self.0);
        Self(v)
    }

    /// The sequence with its first two entries removed.
    pub fn without_front_pair(&self) -> Self {
        Self(self.0[2..].to_vec())
    }
}

impl fmt::Display for SignSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("()");
        }
        for &s in &self.0 {
            f.write_str(if s > 0 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for SignSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignSeq({self})")
    }
}

/// Accepts compact `+-+-`, comma-separated `+1,-1,1` and the empty `()`.
impl FromStr for SignSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "()" {
            return Ok(Self::empty());
        }
        if s.contains(',') || s.contains(' ') {
            let mut v = Vec::new();
            for tok in s.split([',', ' ']).filter(|t| !t.is_empty()) {
                v.push(match tok {
                    "+" | "+1" | "1" => 1,
                    "-" | "-1" => -1,
                    other => return Err(Error::Parse(format!("bad sign {other:?}"))),
                });
            }
            return Self::new(v);
        }
        s.chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' | '−' => Ok(-1),
                other => Err(Error::Parse(format!("bad sign character {other:?}"))),
            })
            .collect::<Result<Vec<i8>>>()
            .map(Self)
    }
}

/// tᵉ − 1 for a sign e.
fn t_pow_minus_one(e: i32) -> LaurentPoly {
    LaurentPoly::from_terms([(e, 1), (0, -1)])
}

/// Gram matrix of the form on v₁ … v_{n−1} (0×0 when n ≤ 1).
///
/// With 1-based indices and ω(x, y) = x̄ᵀ·G·y:
/// G[i][i] = ((εᵢ + εᵢ₊₁)/2)(t − t⁻¹), G[i][i+1] = t^(−εᵢ₊₁) − 1,
/// G[i+1][i] = 1 − t^(εᵢ₊₁), and all other entries vanish.
pub fn gram_form(eps: &SignSeq) -> LambdaMatrix {
    let r = eps.len().saturating_sub(1);
    let e = |k: usize| eps.get(k) as i32;
    LambdaMatrix::from_fn(r, r, |i, j| {
        if i == j {
            let h = (e(i) + e(i + 1)) / 2;
            LaurentPoly::from_terms([(1, h as i128), (-1, -h as i128)])
        } else if j == i + 1 {
            t_pow_minus_one(-e(i + 1))
        } else if i == j + 1 {
            -t_pow_minus_one(e(i))
        } else {
            LaurentPoly::zero()
        }
    })
}

/// Coefficients of γ̂ in v₁ … v_{n−1}, for ℓ_ε = 0.
///
/// Lifting γ = e₁^ε₁ ⋯ e_n^εₙ with running exponent cᵢ = Σ_{k<i} ε_k gives
/// γ̂ = Σ aᵢ êᵢ with aᵢ = t^cᵢ (εᵢ = +1) or −t^(cᵢ−1) (εᵢ = −1); as Σ aᵢ = 0
/// at ℓ = 0 this is Σ bᵢ vᵢ with bᵢ = a₁ + … + aᵢ.
pub fn relation_vector(eps: &SignSeq) -> Result<Vec<LaurentPoly>> {
    if eps.is_empty() || eps.ell() != 0 {
        return Err(Error::Unsupported(format!("relation vector needs a nonempty sequence with zero sum, got {eps}")));
    }
    let mut c = 0i32;
    let mut partial = LaurentPoly::zero();
    let mut b = Vec::with_capacity(eps.len() - 1);
    for &s in eps.signs() {
        let a = if s > 0 { LaurentPoly::monomial(1, c) } else { LaurentPoly::monomial(-1, c - 1) };
        partial += &a;
        b.push(partial.clone());
        c += s as i32;
    }
    b.pop();
    Ok(b)
}

/// An object of the category: the module with its form, plus the quotient
/// data when ℓ_ε = 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiskObject {
    eps: SignSeq,
    module: HermitianModule,
    disk_gram: LambdaMatrix,
    relation: Option<Vec<LaurentPoly>>,
    eliminated: Option<usize>,
}

impl DiskObject {
    pub fn eps(&self) -> &SignSeq {
        &self.eps
    }

    pub fn module(&self) -> &HermitianModule {
        &self.module
    }

    pub fn rank(&self) -> usize {
        self.module.rank()
    }

    /// Rank of the disk module, n − 1 (0 for the empty sequence).
    pub fn disk_rank(&self) -> usize {
        self.disk_gram.rows()
    }

    /// Gram matrix on v₁ … v_{n−1}, before any elimination.
    pub fn disk_gram(&self) -> &LambdaMatrix {
        &self.disk_gram
    }

    /// γ̂ in the v-basis, present iff ℓ_ε = 0 and n > 0.
    pub fn relation(&self) -> Option<&[LaurentPoly]> {
        self.relation.as_deref()
    }

    /// 0-based index of the basis vector removed to get a free quotient.
    pub fn eliminated_index(&self) -> Option<usize> {
        self.eliminated
    }

    /// The quotient map from the disk module to this object's module,
    /// as a rank × disk_rank matrix.
    pub fn projection(&self) -> LambdaMatrix {
        let n = self.disk_rank();
        match (self.eliminated, &self.relation) {
            (Some(k), Some(b)) => {
                let (s, e) = b[k].as_unit().expect("eliminated coefficient is a unit");
                let inv = LaurentPoly::unit(-s, -e);
                let kept: Vec<usize> = (0..n).filter(|&i| i != k).collect();
                LambdaMatrix::from_fn(kept.len(), n, |r, c| {
                    if c == kept[r] {
                        LaurentPoly::one()
                    } else if c == k {
                        &inv * &b[kept[r]]
                    } else {
                        LaurentPoly::zero()
                    }
                })
            }
            _ => LambdaMatrix::identity(n),
        }
    }

    /// The inclusion of the kept basis vectors, disk_rank × rank.
    pub fn section(&self) -> LambdaMatrix {
        let n = self.disk_rank();
        match self.eliminated {
            Some(k) => {
                let kept: Vec<usize> = (0..n).filter(|&i| i != k).collect();
                LambdaMatrix::from_fn(n, kept.len(), |r, c| if kept[c] == r { LaurentPoly::one() } else { LaurentPoly::zero() })
            }
            None => LambdaMatrix::identity(n),
        }
    }
}

/// Builds the object for ε, validating the form.
pub fn build_object(eps: &SignSeq) -> Result<DiskObject> {
    let g = gram_form(eps);
    let label = format!("H({eps})");
    if eps.ell() != 0 || eps.is_empty() {
        let module = HermitianModule::new(g.clone(), label)?;
        return Ok(DiskObject { eps: eps.clone(), module, disk_gram: g, relation: None, eliminated: None });
    }
    let b = relation_vector(eps)?;
    let k = (0..b.len())
        .rev()
        .find(|&i| b[i].is_unit())
        .ok_or_else(|| Error::Construction(format!("boundary class for {eps} has no unit coefficient")))?;
    if !g.mul_vec(&b)?.iter().all(LaurentPoly::is_zero) {
        return Err(Error::Construction(format!("boundary class for {eps} is not in the radical of the form")));
    }
    let kept: Vec<usize> = (0..b.len()).filter(|&i| i != k).collect();
    let q = g.select_rows(&kept).select_cols(&kept);
    let module = HermitianModule::new(q, label)?;
    Ok(DiskObject { eps: eps.clone(), module, disk_gram: g, relation: Some(b), eliminated: Some(k) })
}

/// Compact human-readable summary, e.g. for debugging dumps.
pub fn describe(obj: &DiskObject) -> String {
    format!("{} rank {} (disk rank {})", obj.eps, obj.rank(), obj.disk_rank())
}

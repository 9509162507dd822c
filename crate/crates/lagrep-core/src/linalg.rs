//! Exact matrices over Λ and its fraction field.
//!
//! Submodules of a free module Λⁿ are carried as a [`GeneratorSet`]: a
//! matrix whose columns generate the submodule, plus a [`Verdict`] saying
//! whether the span is known to be saturated (closed) in Λⁿ. The verdict is
//! the gcd of maximal minors: for full-column-rank generators over a UFD,
//! that gcd is a unit exactly when the span equals its closure.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use crate::error::{Error, Result};
use crate::laurent::{igcd, Coeff, LaurentPoly, RatFunc};

/// Dense row-major matrix over Λ.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LambdaMatrix {
    rows: usize,
    cols: usize,
    data: Vec<LaurentPoly>,
}

impl LambdaMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<LaurentPoly>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch { op: "new", left: (rows, cols), right: (entries.len(), 1) });
        }
        Ok(Self { rows, cols, data: entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![LaurentPoly::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { LaurentPoly::one() } else { LaurentPoly::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> LaurentPoly) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds from rows; all rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::DimensionMismatch { op: "from_rows", left: (r, c), right: (1, bad.len()) });
        }
        Ok(Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Builds a matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<LaurentPoly>]) -> Result<Self> {
        if let Some(bad) = columns.iter().find(|c| c.len() != rows) {
            return Err(Error::DimensionMismatch { op: "from_columns", left: (rows, 1), right: (bad.len(), 1) });
        }
        Ok(Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone()))
    }

    /// Integer matrix, handy for fixtures.
    pub fn from_ints(rows: &[&[i128]]) -> Self {
        let c = rows.first().map_or(0, |r| r.len());
        Self::from_fn(rows.len(), c, |i, j| LaurentPoly::constant(rows[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[LaurentPoly] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of {}x{}", self.rows, self.cols);
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: LaurentPoly) {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of {}x{}", self.rows, self.cols);
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<LaurentPoly> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<LaurentPoly> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<LaurentPoly>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(LaurentPoly::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { op: "mul", left: self.shape(), right: other.shape() });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[LaurentPoly]) -> Result<Vec<LaurentPoly>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch { op: "mul_vec", left: self.shape(), right: (v.len(), 1) });
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = LaurentPoly::zero();
                for (k, x) in v.iter().enumerate() {
                    let a = self.get(i, k);
                    if !a.is_zero() && !x.is_zero() {
                        acc += &(a * x);
                    }
                }
                acc
            })
            .collect())
    }

    fn zip(&self, other: &Self, op: &'static str, f: impl Fn(&LaurentPoly, &LaurentPoly) -> LaurentPoly) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch { op, left: self.shape(), right: other.shape() });
        }
        Ok(Self { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect() })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, "add", |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, "sub", |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        self.map(|a| -a)
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        self.map(|a| a * c)
    }

    pub fn map(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Entrywise involution t ↦ t⁻¹.
    pub fn involute(&self) -> Self {
        self.map(LaurentPoly::involute)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Conjugate transpose Āᵀ.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).involute())
    }

    /// Stacks `self` above `other`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch { op: "vstack", left: self.shape(), right: other.shape() });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Self { rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Places `self` to the left of `other`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch { op: "hstack", left: self.shape(), right: other.shape() });
        }
        Ok(Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        }))
    }

    /// Block diagonal sum self ⊕ other.
    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::from_fn(self.rows + other.rows, self.cols + other.cols, |i, j| match (i < self.rows, j < self.cols) {
            (true, true) => self.get(i, j).clone(),
            (false, false) => other.get(i - self.rows, j - self.cols).clone(),
            _ => LaurentPoly::zero(),
        })
    }

    pub fn slice_rows(&self, r: Range<usize>) -> Result<Self> {
        if r.start > r.end || r.end > self.rows {
            return Err(Error::OutOfRange { what: "row range end", value: r.end, max: self.rows });
        }
        Ok(Self::from_fn(r.len(), self.cols, |i, j| self.get(r.start + i, j).clone()))
    }

    pub fn slice_cols(&self, r: Range<usize>) -> Result<Self> {
        if r.start > r.end || r.end > self.cols {
            return Err(Error::OutOfRange { what: "column range end", value: r.end, max: self.cols });
        }
        Ok(Self::from_fn(self.rows, r.len(), |i, j| self.get(i, r.start + j).clone()))
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self::from_fn(idx.len(), self.cols, |i, j| self.get(idx[i], j).clone())
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        Self::from_fn(self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    fn to_rat(&self) -> Vec<Vec<RatFunc>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| RatFunc::from_poly(self.get(i, j).clone())).collect()).collect()
    }
}

impl fmt::Debug for LambdaMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LambdaMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Outcome of the saturation certificate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// The maximal-minor gcd is a unit: the span is closed in Λⁿ and the
    /// columns form a free basis of it.
    CertifiedSaturated,
    /// The maximal-minor gcd is this non-unit (canonical) polynomial.
    Uncertified(LaurentPoly),
}

impl Verdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, Verdict::CertifiedSaturated)
    }
}

/// A submodule of Λⁿ given by generator columns of full column rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorSet {
    gens: LambdaMatrix,
    verdict: Verdict,
}

impl GeneratorSet {
    /// Wraps independent generator columns, computing the certificate.
    pub fn new(gens: LambdaMatrix) -> Result<Self> {
        let verdict = certificate_of(&gens)?;
        Ok(Self { gens, verdict })
    }

    /// The zero submodule of Λⁿ.
    pub fn empty(ambient_rank: usize) -> Self {
        Self { gens: LambdaMatrix::zeros(ambient_rank, 0), verdict: Verdict::CertifiedSaturated }
    }

    /// All of Λⁿ, with the standard basis.
    pub fn full(ambient_rank: usize) -> Self {
        Self { gens: LambdaMatrix::identity(ambient_rank), verdict: Verdict::CertifiedSaturated }
    }

    pub(crate) fn from_parts(gens: LambdaMatrix, verdict: Verdict) -> Self {
        Self { gens, verdict }
    }

    pub fn ambient_rank(&self) -> usize {
        self.gens.rows
    }

    /// Number of generators (= rank of the span).
    pub fn len(&self) -> usize {
        self.gens.cols
    }

    pub fn is_empty(&self) -> bool {
        self.gens.cols == 0
    }

    pub fn gens(&self) -> &LambdaMatrix {
        &self.gens
    }

    pub fn verdict(&self) -> &Verdict {
        &self.verdict
    }

    /// True when the columns are a certified free basis of a closed submodule.
    pub fn certified_free_basis(&self) -> bool {
        self.verdict.is_certified()
    }
}

/// Determinant over Λ.
pub fn det(a: &LambdaMatrix) -> Result<LaurentPoly> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows, cols: a.cols });
    }
    Ok(if a.rows < 5 { det_cofactor(a) } else { det_bareiss(a) })
}

fn det_cofactor(a: &LambdaMatrix) -> LaurentPoly {
    fn rec(a: &LambdaMatrix, rows: &[usize], cols: &mut Vec<usize>) -> LaurentPoly {
        match rows.len() {
            0 => LaurentPoly::one(),
            1 => a.get(rows[0], cols[0]).clone(),
            _ => {
                let r = rows[0];
                let mut acc = LaurentPoly::zero();
                for k in 0..cols.len() {
                    let e = a.get(r, cols[k]).clone();
                    if e.is_zero() {
                        continue;
                    }
                    let c = cols.remove(k);
                    let minor = rec(a, &rows[1..], cols);
                    cols.insert(k, c);
                    let term = e * minor;
                    if k % 2 == 0 {
                        acc += &term;
                    } else {
                        acc -= &term;
                    }
                }
                acc
            }
        }
    }
    let rows: Vec<usize> = (0..a.rows).collect();
    rec(a, &rows, &mut (0..a.cols).collect())
}

/// Fraction-free elimination; each division by the previous pivot is exact.
fn det_bareiss(a: &LambdaMatrix) -> LaurentPoly {
    let n = a.rows;
    let mut m: Vec<Vec<LaurentPoly>> = (0..n).map(|i| a.row(i)).collect();
    let mut sign = 1i128;
    let mut prev = LaurentPoly::one();
    for k in 0..n {
        let Some(p) = (k..n).filter(|&i| !m[i][k].is_zero()).min_by_key(|&i| m[i][k].num_terms()) else {
            return LaurentPoly::zero();
        };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = LaurentPoly::exact_div(&v, &prev).expect("Bareiss step is exact");
            }
            m[i][k] = LaurentPoly::zero();
        }
        prev = m[k][k].clone();
    }
    m[n - 1][n - 1].scale(sign)
}

/// Inverse over Λ; requires a unit determinant.
pub fn inverse(a: &LambdaMatrix) -> Result<LambdaMatrix> {
    let d = det(a)?;
    if !d.is_unit() {
        return Err(Error::NotInvertible { det: d });
    }
    let n = a.rows;
    let aug = a.hstack(&LambdaMatrix::identity(n))?;
    let rr = Rref::compute(aug.to_rat(), n);
    let mut out = LambdaMatrix::zeros(n, n);
    for (r, &c) in rr.pivots.iter().enumerate() {
        for j in 0..n {
            let v = rr.m[r][n + j].to_laurent().expect("unit determinant gives a Laurent inverse");
            out.set(c, j, v);
        }
    }
    Ok(out)
}

/// Reduced row echelon form over Q(Λ).
struct Rref {
    m: Vec<Vec<RatFunc>>,
    /// Pivot column of each of the first `rank` rows.
    pivots: Vec<usize>,
}

/// Pivot ranking key (terms, non-unit, column, row) with its position.
type PivotChoice = ((usize, bool, usize, usize), usize, usize);

impl Rref {
    /// Gauss–Jordan with full pivoting restricted to the first `search_cols`
    /// columns (columns beyond are carried along, e.g. augmented parts).
    /// Pivot preference: fewest terms, then units of Λ, then lowest column,
    /// then lowest row.
    fn compute(mut m: Vec<Vec<RatFunc>>, search_cols: usize) -> Self {
        let rows = m.len();
        let mut pivots = Vec::new();
        let mut used = vec![false; search_cols];
        for r in 0..rows {
            let mut best: Option<PivotChoice> = None;
            for (i, row) in m.iter().enumerate().skip(r) {
                for (j, v) in row.iter().enumerate().take(search_cols) {
                    if used[j] || v.is_zero() {
                        continue;
                    }
                    let key = (v.num_terms(), !v.is_unit_laurent(), j, i);
                    if best.as_ref().is_none_or(|b| key < b.0) {
                        best = Some((key, i, j));
                    }
                }
            }
            let Some((_, pi, pj)) = best else { break };
            m.swap(r, pi);
            used[pj] = true;
            let inv = m[r][pj].inv().expect("pivot is nonzero");
            for v in m[r].iter_mut() {
                if !v.is_zero() {
                    *v = v.mul(&inv);
                }
            }
            let pivot_row = m[r].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i == r || row[pj].is_zero() {
                    continue;
                }
                let f = row[pj].clone();
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *v = v.sub(&f.mul(p));
                    }
                }
            }
            pivots.push(pj);
        }
        Self { m, pivots }
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Rank over Q(Λ).
pub fn rank_q(a: &LambdaMatrix) -> usize {
    Rref::compute(a.to_rat(), a.cols).rank()
}

/// Some solution x over Q(Λ) of A·x = b, or `None` when inconsistent.
pub fn solve_q(a: &LambdaMatrix, b: &[LaurentPoly]) -> Result<Option<Vec<RatFunc>>> {
    if b.len() != a.rows {
        return Err(Error::DimensionMismatch { op: "solve_q", left: a.shape(), right: (b.len(), 1) });
    }
    let mut m = a.to_rat();
    for (row, bi) in m.iter_mut().zip(b) {
        row.push(RatFunc::from_poly(bi.clone()));
    }
    let rr = Rref::compute(m, a.cols);
    if rr.m.iter().skip(rr.rank()).any(|row| !row[a.cols].is_zero()) {
        return Ok(None);
    }
    let mut x = vec![RatFunc::zero(); a.cols];
    for (r, &c) in rr.pivots.iter().enumerate() {
        x[c] = rr.m[r][a.cols].clone();
    }
    Ok(Some(x))
}

/// Clears denominators, divides by the gcd of the entries and scales by a
/// unit so that the first nonzero entry is canonical.
fn primitive_vector(v: &[RatFunc]) -> Vec<LaurentPoly> {
    let mut l = LaurentPoly::one();
    for x in v {
        if !x.den().is_one() {
            let g = LaurentPoly::gcd(&l, x.den());
            l = LaurentPoly::exact_div(&(&l * x.den()), &g).expect("lcm");
        }
    }
    let w: Vec<LaurentPoly> = v.iter().map(|x| LaurentPoly::exact_div(&(x.num() * &l), x.den()).expect("common denominator")).collect();
    primitive_poly_vector(&w)
}

fn primitive_poly_vector(w: &[LaurentPoly]) -> Vec<LaurentPoly> {
    let g = w.iter().fold(LaurentPoly::zero(), |g, x| LaurentPoly::gcd(&g, x));
    if g.is_zero() {
        return w.to_vec();
    }
    let first = w.iter().find(|x| !x.is_zero()).unwrap();
    let (s, k) = LaurentPoly::exact_div(first, &g).unwrap().normalizing_unit();
    let g = g.scale(s as i128).shift(-k);
    w.iter().map(|x| LaurentPoly::exact_div(x, &g).expect("gcd divides")).collect()
}

/// Cap on pivot subsets tried when looking for an integral kernel basis.
const SUBSET_SEARCH_LIMIT: usize = 20_000;

/// Generators of ker(A) ⊂ Λ^cols.
///
/// The basis comes from Gauss–Jordan elimination over Q(Λ) with cleared,
/// primitive, unit-normalised columns. If that basis fails the saturation
/// certificate, other choices of pivot columns are searched for one whose
/// reduced coefficients all lie in Λ (that basis contains an identity block
/// and is certified). Failing that, an exact echelon-and-divide routine
/// produces a certified basis; only if its coefficients grow too large is
/// the uncertified basis returned.
pub fn kernel(a: &LambdaMatrix) -> GeneratorSet {
    let n = a.cols;
    let rr = Rref::compute(a.to_rat(), n);
    let rank = rr.rank();
    if rank == n {
        return GeneratorSet::empty(n);
    }
    let basis = kernel_basis(&rr.m[..rank], &rr.pivots, n);
    let gens = columns_matrix(n, &basis);
    let verdict = certificate_of(&gens).expect("kernel basis is independent");
    if verdict.is_certified() {
        return GeneratorSet::from_parts(gens, verdict);
    }
    if let Some(better) = integral_kernel_search(&rr.m[..rank], n) {
        return better;
    }
    if let Some(exact) = exact_kernel(a) {
        return exact;
    }
    GeneratorSet::from_parts(gens, verdict)
}

/// Coefficient magnitude above which the exact kernel routine gives up
/// rather than risk overflow.
const EXACT_COEFF_BOUND: Coeff = 1 << 40;

fn span(p: &LaurentPoly) -> i32 {
    match (p.low_exp(), p.high_exp()) {
        (Some(l), Some(h)) => h - l,
        _ => -1,
    }
}

fn bounded(col: &[LaurentPoly]) -> bool {
    col.iter().all(|x| x.terms().all(|(_, c)| c.abs() < EXACT_COEFF_BOUND))
}

/// col_j ← a·col_j − b·tᵉ·col_i.
fn combine(cols: &mut [Vec<LaurentPoly>], j: usize, a: Coeff, b: Coeff, e: i32, i: usize) {
    let (src, dst) = if i < j {
        let (l, r) = cols.split_at_mut(j);
        (&l[i], &mut r[0])
    } else {
        let (l, r) = cols.split_at_mut(i);
        (&r[0], &mut l[j])
    };
    for (y, x) in dst.iter_mut().zip(src) {
        *y = &y.scale(a) - &x.scale(b).shift(e);
    }
}

fn remove_content(col: &mut [LaurentPoly]) {
    let c = col.iter().fold(0, |g, x| igcd(g, x.content()));
    if c > 1 {
        for x in col.iter_mut() {
            *x = x.content_primitive().map_or(LaurentPoly::zero(), |(k, q)| q.scale(k / c));
        }
    }
}

/// Column echelon form of the first `rows` entries of the columns, using
/// only operations invertible over Q[t, t⁻¹]: swaps, multiplication by
/// nonzero integers and tᵉ, and adding multiples of other columns. Returns
/// the number of pivot columns; the remaining columns vanish in those rows.
fn echelon_over_q(cols: &mut [Vec<LaurentPoly>], rows: usize) -> Option<usize> {
    let mut start = 0;
    for r in 0..rows {
        loop {
            let nz: Vec<usize> = (start..cols.len()).filter(|&j| !cols[j][r].is_zero()).collect();
            let Some(&piv) = nz.iter().min_by_key(|&&j| span(&cols[j][r])) else { break };
            if nz.len() == 1 {
                cols.swap(start, piv);
                start += 1;
                break;
            }
            for &j in nz.iter().filter(|&&j| j != piv) {
                while !cols[j][r].is_zero() && span(&cols[j][r]) >= span(&cols[piv][r]) {
                    if !bounded(&cols[j]) || !bounded(&cols[piv]) {
                        return None;
                    }
                    let (x, y) = (&cols[piv][r], &cols[j][r]);
                    let (hx, hy) = (x.high_exp()?, y.high_exp()?);
                    let (cx, cy) = (x.coeff(hx), y.coeff(hy));
                    let g = igcd(cx, cy);
                    combine(cols, j, cx / g, cy / g, hy - hx, piv);
                    remove_content(&mut cols[j]);
                }
            }
        }
    }
    Some(start)
}

/// True when every maximal minor of the columns is safely representable.
fn minors_fit(basis: &[Vec<LaurentPoly>]) -> bool {
    let bits = |v: u128| 128 - v.leading_zeros();
    let dim = basis.len() as u128;
    let entry = basis
        .iter()
        .flatten()
        .map(|x| {
            let max = x.terms().map(|(_, c)| c.unsigned_abs()).max().unwrap_or(0);
            bits(max) + bits(x.num_terms() as u128)
        })
        .max()
        .unwrap_or(0);
    dim * u128::from(entry + bits(dim)) < 110
}

fn mod_p(x: &LaurentPoly, p: Coeff) -> LaurentPoly {
    LaurentPoly::from_terms(x.terms().map(|(e, c)| {
        let r = c.rem_euclid(p);
        (e, if 2 * r > p { r - p } else { r })
    }))
}

fn inv_mod(a: Coeff, p: Coeff) -> Coeff {
    let (mut r0, mut r1, mut s0, mut s1) = (a.rem_euclid(p), p, 1, 0);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    s0.rem_euclid(p)
}

/// Given kernel generators whose maximal minors are all divisible by the
/// prime `p`, replaces them by generators of a strictly larger submodule
/// of the (saturated) kernel: the column operations of a column echelon
/// form modulo p are lifted to Λ (determinant ±tᵏ), and the column that
/// becomes divisible by p is divided.
fn divide_out_prime(basis: &mut [Vec<LaurentPoly>], p: Coeff) -> Option<()> {
    let n = basis.first()?.len();
    let mut reduced: Vec<Vec<LaurentPoly>> = basis.iter().map(|c| c.iter().map(|x| mod_p(x, p)).collect()).collect();
    let mut start = 0;
    for r in 0..n {
        loop {
            let nz: Vec<usize> = (start..basis.len()).filter(|&j| !reduced[j][r].is_zero()).collect();
            let Some(&piv) = nz.iter().min_by_key(|&&j| span(&reduced[j][r])) else { break };
            if nz.len() == 1 {
                basis.swap(start, piv);
                reduced.swap(start, piv);
                start += 1;
                break;
            }
            for &j in nz.iter().filter(|&&j| j != piv) {
                while !reduced[j][r].is_zero() && span(&reduced[j][r]) >= span(&reduced[piv][r]) {
                    if !bounded(&basis[j]) || !bounded(&basis[piv]) {
                        return None;
                    }
                    let (x, y) = (&reduced[piv][r], &reduced[j][r]);
                    let (hx, hy) = (x.high_exp()?, y.high_exp()?);
                    let q = mod_p(&LaurentPoly::constant(y.coeff(hy) * inv_mod(x.coeff(hx), p)), p);
                    let q = q.coeff(0);
                    combine(basis, j, 1, q, hy - hx, piv);
                    combine(&mut reduced, j, 1, q, hy - hx, piv);
                    for x in reduced[j].iter_mut() {
                        *x = mod_p(x, p);
                    }
                }
            }
        }
    }
    let zero = basis.get_mut(start)?;
    for x in zero.iter_mut() {
        *x = LaurentPoly::exact_div(x, &LaurentPoly::constant(p)).ok()?;
    }
    Some(())
}

fn smallest_prime_factor(c: Coeff) -> Coeff {
    let mut d = 2;
    while d * d <= c {
        if c % d == 0 {
            return d;
        }
        d += 1;
    }
    c
}

/// A certified basis of ker(A) ∩ Λⁿ computed without any search.
///
/// Column echelon form over the principal ideal domain Q[t, t⁻¹] yields
/// kernel generators whose maximal minors have an integer gcd; each prime
/// factor of that integer is then removed by [`divide_out_prime`]. Returns
/// `None` if intermediate coefficients exceed [`EXACT_COEFF_BOUND`].
fn exact_kernel(a: &LambdaMatrix) -> Option<GeneratorSet> {
    let (k, n) = a.shape();
    let mut cols: Vec<Vec<LaurentPoly>> = (0..n)
        .map(|j| {
            let mut c = a.col(j);
            c.extend((0..n).map(|i| if i == j { LaurentPoly::one() } else { LaurentPoly::zero() }));
            c
        })
        .collect();
    let pivots = echelon_over_q(&mut cols, k)?;
    let mut basis: Vec<Vec<LaurentPoly>> = cols[pivots..].iter().map(|c| primitive_poly_vector(&c[k..])).collect();
    let dim = basis.len();
    if dim == 0 {
        return Some(GeneratorSet::empty(n));
    }
    loop {
        if !minors_fit(&basis) {
            return None;
        }
        let gens = columns_matrix(n, &basis);
        let d = gcd_of_minors(&gens, dim, true);
        if d.is_one() {
            return Some(GeneratorSet::from_parts(gens, Verdict::CertifiedSaturated));
        }
        if d.num_terms() != 1 || d.content() <= 1 {
            return None;
        }
        divide_out_prime(&mut basis, smallest_prime_factor(d.content()))?;
        for c in basis.iter_mut() {
            *c = primitive_poly_vector(c);
        }
    }
}

fn kernel_basis(reduced: &[Vec<RatFunc>], pivots: &[usize], n: usize) -> Vec<Vec<LaurentPoly>> {
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut x = vec![RatFunc::zero(); n];
            x[f] = RatFunc::one();
            for (r, &c) in pivots.iter().enumerate() {
                x[c] = reduced[r][f].neg();
            }
            primitive_vector(&x)
        })
        .collect()
}

fn columns_matrix(n: usize, cols: &[Vec<LaurentPoly>]) -> LambdaMatrix {
    LambdaMatrix::from_fn(n, cols.len(), |i, j| cols[j][i].clone())
}

/// Tries pivot column sets S (lexicographically) such that re-reducing the
/// row space on S leaves only Λ-entries in the free columns.
fn integral_kernel_search(rows: &[Vec<RatFunc>], n: usize) -> Option<GeneratorSet> {
    let k = rows.len();
    let mut tried = 0;
    for subset in Subsets::new(n, k) {
        tried += 1;
        if tried > SUBSET_SEARCH_LIMIT {
            return None;
        }
        let sub: Vec<Vec<RatFunc>> = rows.to_vec();
        let mut reordered: Vec<Vec<RatFunc>> =
            sub.iter().map(|row| subset.iter().map(|&c| row[c].clone()).chain(row.iter().cloned()).collect()).collect();
        let rr = Rref::compute(core::mem::take(&mut reordered), k);
        if rr.rank() < k {
            continue;
        }
        let integral = rr.m.iter().all(|row| row[k..].iter().all(RatFunc::is_laurent));
        if !integral {
            continue;
        }
        let piv: Vec<usize> = rr.pivots.iter().map(|&p| subset[p]).collect();
        let reduced: Vec<Vec<RatFunc>> = rr.m.iter().map(|row| row[k..].to_vec()).collect();
        let basis = kernel_basis(&reduced, &piv, n);
        let gens = columns_matrix(n, &basis);
        let verdict = certificate_of(&gens).ok()?;
        if verdict.is_certified() {
            return Some(GeneratorSet::from_parts(gens, verdict));
        }
    }
    None
}

/// Lexicographic k-subsets of 0..n.
struct Subsets {
    n: usize,
    cur: Option<Vec<usize>>,
}

impl Subsets {
    fn new(n: usize, k: usize) -> Self {
        Self { n, cur: (k <= n).then(|| (0..k).collect()) }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.cur.clone()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                self.cur = None;
                break;
            }
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.cur = Some(next);
                break;
            }
        }
        Some(out)
    }
}

/// gcd of the maximal minors of a full-column-rank matrix, as a verdict.
fn certificate_of(gens: &LambdaMatrix) -> Result<Verdict> {
    let k = gens.cols;
    if k == 0 {
        return Ok(Verdict::CertifiedSaturated);
    }
    let rank = rank_q(gens);
    if rank < k {
        return Err(Error::RankDeficient { cols: k, rank });
    }
    let g = gcd_of_minors(gens, k, true);
    Ok(if g.is_one() { Verdict::CertifiedSaturated } else { Verdict::Uncertified(g) })
}

/// Canonical gcd of the g×g minors; with `early_exit`, stops at a unit.
fn gcd_of_minors(a: &LambdaMatrix, g: usize, early_exit: bool) -> LaurentPoly {
    if g == 0 {
        return LaurentPoly::one();
    }
    let mut acc = LaurentPoly::zero();
    for rows in Subsets::new(a.rows, g) {
        let sub_r = a.select_rows(&rows);
        for cols in Subsets::new(a.cols, g) {
            let m = det(&sub_r.select_cols(&cols)).expect("square minor");
            if m.is_zero() {
                continue;
            }
            acc = LaurentPoly::gcd(&acc, &m);
            if early_exit && acc.is_one() {
                return acc;
            }
        }
    }
    acc
}

/// The saturation verdict of a generator set (recomputed from scratch).
pub fn saturation_certificate(g: &GeneratorSet) -> Result<Verdict> {
    certificate_of(g.gens())
}

/// Rows spanning the left annihilator {y : yᵀ·G = 0} over Q(Λ), cleared to Λ.
pub fn left_annihilator(g: &LambdaMatrix) -> LambdaMatrix {
    kernel(&g.transpose()).gens().transpose()
}

/// The closure (Q(Λ)-span of G) ∩ Λⁿ, with a certified basis or an error.
pub fn saturate(g: &GeneratorSet) -> Result<GeneratorSet> {
    if g.certified_free_basis() {
        return Ok(g.clone());
    }
    let n = g.ambient_rank();
    let p = left_annihilator(g.gens());
    let closure = if p.rows() == 0 { GeneratorSet::full(n) } else { kernel(&p) };
    match closure.verdict() {
        Verdict::CertifiedSaturated => Ok(closure),
        Verdict::Uncertified(m) => Err(Error::Unsaturatable { minor_gcd: m.clone() }),
    }
}

/// Δ of a presentation matrix: canonical gcd of its g×g minors (0 when g
/// exceeds the rank).
pub fn minor_gcd(a: &LambdaMatrix, g: usize) -> Result<LaurentPoly> {
    let max = a.rows.min(a.cols);
    if g > max {
        return Err(Error::OutOfRange { what: "minor size", value: g, max });
    }
    Ok(gcd_of_minors(a, g, true))
}

/// Solutions of a single linear equation row·x = 0.
pub fn row_syzygy(row: &LambdaMatrix) -> Result<GeneratorSet> {
    if row.rows() != 1 || row.cols() == 0 {
        return Err(Error::DimensionMismatch { op: "row_syzygy", left: row.shape(), right: (1, 1) });
    }
    if row.is_zero() {
        return Ok(GeneratorSet::full(row.cols()));
    }
    if row.cols() == 2 {
        let (a, b) = (row.get(0, 0), row.get(0, 1));
        let g = LaurentPoly::gcd(a, b);
        let col = vec![LaurentPoly::exact_div(b, &g)?, -LaurentPoly::exact_div(a, &g)?];
        return Ok(GeneratorSet::from_parts(columns_matrix(2, &[col]), Verdict::CertifiedSaturated));
    }
    saturate(&kernel(row))
}

/// True when `v` lies in the Λ-span of the generators.
pub fn contains_vector(g: &GeneratorSet, v: &[LaurentPoly]) -> Result<bool> {
    Ok(coordinates(g, v)?.is_some())
}

/// Λ-coordinates of `v` in the (independent) generators, if they exist.
pub fn coordinates(g: &GeneratorSet, v: &[LaurentPoly]) -> Result<Option<Vec<LaurentPoly>>> {
    let Some(x) = solve_q(g.gens(), v)? else {
        return Ok(None);
    };
    Ok(x.iter().map(RatFunc::to_laurent).collect())
}

/// True when every generator of `h` lies in the Λ-span of `g`.
pub fn contains(g: &GeneratorSet, h: &GeneratorSet) -> Result<bool> {
    if g.ambient_rank() != h.ambient_rank() {
        return Err(Error::DimensionMismatch { op: "contains", left: g.gens().shape(), right: h.gens().shape() });
    }
    for c in h.gens().columns() {
        if !contains_vector(g, &c)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Equality of submodules by mutual membership.
pub fn span_eq(g: &GeneratorSet, h: &GeneratorSet) -> Result<bool> {
    Ok(g.len() == h.len() && contains(g, h)? && contains(h, g)?)
}

/// A free basis of the Λ-span of arbitrary (possibly dependent) columns.
///
/// Tries a greedy Q(Λ)-independent subset first, then other subsets of the
/// same size, accepting the first that generates every column over Λ.
pub fn basis_of_span(cols: &LambdaMatrix) -> Result<GeneratorSet> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut rank = 0;
    for j in 0..cols.cols() {
        let mut trial = chosen.clone();
        trial.push(j);
        let r = rank_q(&cols.select_cols(&trial));
        if r > rank {
            chosen = trial;
            rank = r;
        }
    }
    if let Some(g) = try_basis(cols, &chosen)? {
        return Ok(g);
    }
    for (tried, subset) in Subsets::new(cols.cols(), rank).enumerate() {
        if tried > SUBSET_SEARCH_LIMIT {
            break;
        }
        if subset != chosen && rank_q(&cols.select_cols(&subset)) == rank {
            if let Some(g) = try_basis(cols, &subset)? {
                return Ok(g);
            }
        }
    }
    Err(Error::NoFreeBasis("span of the given columns"))
}

fn try_basis(cols: &LambdaMatrix, subset: &[usize]) -> Result<Option<GeneratorSet>> {
    let g = GeneratorSet::new(cols.select_cols(subset))?;
    for j in 0..cols.cols() {
        if !subset.contains(&j) && !contains_vector(&g, &cols.col(j))? {
            return Ok(None);
        }
    }
    Ok(Some(g))
}

/// Closure of the Q(Λ)-span of arbitrary columns.
pub fn saturated_span(cols: &LambdaMatrix) -> Result<GeneratorSet> {
    let mut chosen: Vec<usize> = Vec::new();
    for j in 0..cols.cols() {
        let mut trial = chosen.clone();
        trial.push(j);
        if rank_q(&cols.select_cols(&trial)) == trial.len() {
            chosen = trial;
        }
    }
    saturate(&GeneratorSet::new(cols.select_cols(&chosen))?)
}

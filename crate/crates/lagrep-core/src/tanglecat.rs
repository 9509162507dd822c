//! Tangle words and the relations they induce.
//!
//! A word is read bottom to top. Crossings `s<i>` / `s<i>'` exchange the
//! strands at positions i and i+1; `cup±` creates a new arc whose two ends
//! occupy positions 1 and 2 at the top (signs ±, ∓); `cap` joins the strands
//! at positions 1 and 2, which must carry opposite signs.
//!
//! The relation of a word is the left fold of relation composition over the
//! elementary relations. When the signs have nonzero sum the fold uses
//! direct block updates (a crossing multiplies the top block, a cup pads it,
//! a cap solves one linear equation); otherwise it goes through generic
//! composition on the quotient objects.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::burau;
use crate::diskhomology::{build_object, DiskObject, SignSeq};
use crate::error::{Error, Result};
use crate::lagrangian::{self, Relation};
use crate::laurent::LaurentPoly;
use crate::linalg::{self, GeneratorSet, LambdaMatrix};

/// An elementary tangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Token {
    /// Crossing of positions i and i+1 (1-based); sign −1 is the inverse.
    Sigma { i: usize, sign: i8 },
    /// New arc at the top, ends at positions 1, 2 with signs (sign, −sign).
    Cup { sign: i8 },
    /// Joins positions 1 and 2 at the bottom.
    Cap,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Token::Sigma { i, sign } => write!(f, "s{i}{}", if sign < 0 { "'" } else { "" }),
            Token::Cup { sign } => write!(f, "cup{}", if sign < 0 { "-" } else { "+" }),
            Token::Cap => f.write_str("cap"),
        }
    }
}

/// A cup at positions k, k+1: a cup at 1, 2 slid right past k − 1 strands.
pub fn cup_at(sign: i8, k: usize) -> Vec<Token> {
    let mut out = vec![Token::Cup { sign }];
    for j in 1..k {
        out.push(Token::Sigma { i: j + 1, sign: 1 });
        out.push(Token::Sigma { i: j, sign: 1 });
    }
    out
}

/// A cap at positions k, k+1: slide the pair left to 1, 2, then cap.
pub fn cap_at(k: usize) -> Vec<Token> {
    let mut out = Vec::new();
    for j in (1..k).rev() {
        out.push(Token::Sigma { i: j, sign: 1 });
        out.push(Token::Sigma { i: j + 1, sign: 1 });
    }
    out.push(Token::Cap);
    out
}

/// Parses whitespace-separated tokens: `s<i>`, `s<i>'`, `cup+`, `cup-`,
/// `cap`, and the macros `cup±@<k>`, `cap@<k>`.
pub fn parse_tokens(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    for (idx, raw) in src.split_whitespace().enumerate() {
        let bad = |why: &str| Error::InvalidWord { index: idx, reason: format!("{why} in {raw:?}") };
        let (head, at) = match raw.split_once('@') {
            Some((h, k)) => {
                let k: usize = k.parse().map_err(|_| bad("bad position"))?;
                if k == 0 {
                    return Err(bad("positions start at 1"));
                }
                (h, Some(k))
            }
            None => (raw, None),
        };
        match head {
            "cup+" | "cup-" => {
                let sign = if head == "cup+" { 1 } else { -1 };
                out.extend(cup_at(sign, at.unwrap_or(1)));
            }
            "cap" => out.extend(cap_at(at.unwrap_or(1))),
            _ if head.starts_with('s') && at.is_none() => {
                let body = &head[1..];
                let (digits, sign) = match body.strip_suffix('\'') {
                    Some(d) => (d, -1),
                    None => (body, 1),
                };
                let i: usize = digits.parse().map_err(|_| bad("bad generator index"))?;
                if i == 0 {
                    return Err(bad("generator indices start at 1"));
                }
                out.push(Token::Sigma { i, sign });
            }
            _ => return Err(bad("unknown token")),
        }
    }
    Ok(out)
}

/// Renders tokens in the word grammar.
pub fn render_tokens(tokens: &[Token]) -> String {
    let mut s = String::new();
    for (k, t) in tokens.iter().enumerate() {
        if k > 0 {
            s.push(' ');
        }
        s.push_str(&format!("{t}"));
    }
    s
}

/// An end of a strand: a bottom or top position (0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Endpoint {
    Bottom(usize),
    Top(usize),
}

/// Connectivity of a word: which endpoints are joined, closed loops, and
/// the crossings between components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrandTrace {
    /// Each arc component as its pair of endpoints.
    pub arcs: Vec<(Endpoint, Endpoint)>,
    /// Number of closed components.
    pub closed: usize,
    /// Component index of every crossing's two strands with the oriented
    /// crossing sign. Arcs are numbered first (in `arcs` order), then loops.
    pub crossings: Vec<(usize, usize, i8)>,
    /// Sum of the signs (equal at the bottom and the top).
    pub ell: i32,
}

impl StrandTrace {
    /// No closed components and at least one strand from bottom to top.
    pub fn straight(&self) -> bool {
        self.closed == 0
            && self
                .arcs
                .iter()
                .any(|(a, b)| matches!((a, b), (Endpoint::Bottom(_), Endpoint::Top(_)) | (Endpoint::Top(_), Endpoint::Bottom(_))))
    }

    pub fn components(&self) -> usize {
        self.arcs.len() + self.closed
    }

    /// Linking number of two distinct components: half the signed count of
    /// crossings between them.
    pub fn linking_number(&self, a: usize, b: usize) -> i32 {
        let twice: i32 =
            self.crossings.iter().filter(|&&(x, y, _)| (x == a && y == b) || (x == b && y == a)).map(|&(_, _, s)| s as i32).sum();
        twice / 2
    }

    /// For a tangle whose top and bottom have the same length, the closure
    /// joins top position p to bottom position p. Returns the closure
    /// component of every component of the tangle, numbered from 0.
    pub fn closure_components(&self) -> Vec<usize> {
        let comps = self.components();
        let mut uf = UnionFind((0..comps).collect());
        let owner = |e: Endpoint| self.arcs.iter().position(|&(a, b)| a == e || b == e);
        for (c, &(a, b)) in self.arcs.iter().enumerate() {
            for e in [a, b] {
                if let Endpoint::Top(p) = e {
                    if let Some(d) = owner(Endpoint::Bottom(p)) {
                        uf.union(c, d);
                    }
                }
            }
        }
        let mut ids: Vec<usize> = Vec::new();
        (0..comps)
            .map(|c| {
                let r = uf.find(c);
                ids.iter().position(|&x| x == r).unwrap_or_else(|| {
                    ids.push(r);
                    ids.len() - 1
                })
            })
            .collect()
    }

    /// Pairwise linking numbers of the closure components (symmetric
    /// matrix with zero diagonal).
    pub fn closure_linking(&self) -> Vec<Vec<i32>> {
        let map = self.closure_components();
        let k = map.iter().copied().max().map_or(0, |m| m + 1);
        let mut twice = vec![vec![0i32; k]; k];
        for &(a, b, s) in &self.crossings {
            let (x, y) = (map[a], map[b]);
            if x != y {
                twice[x][y] += s as i32;
                twice[y][x] += s as i32;
            }
        }
        twice.iter().map(|row| row.iter().map(|v| v / 2).collect()).collect()
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn add(&mut self) -> usize {
        self.0.push(self.0.len());
        self.0.len() - 1
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[b] = a;
        }
    }
}

/// A validated word with its sign sequences at every level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangleWord {
    tokens: Vec<Token>,
    levels: Vec<SignSeq>,
    trace: StrandTrace,
}

impl TangleWord {
    pub fn bottom(&self) -> &SignSeq {
        &self.levels[0]
    }

    pub fn top(&self) -> &SignSeq {
        self.levels.last().unwrap()
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    /// Signs below token k (k = tokens.len() gives the top).
    pub fn level(&self, k: usize) -> &SignSeq {
        &self.levels[k]
    }

    pub fn trace(&self) -> &StrandTrace {
        &self.trace
    }

    /// The word followed by more tokens.
    pub fn then(&self, more: &[Token]) -> Result<Self> {
        let mut t = self.tokens.clone();
        t.extend_from_slice(more);
        validate(self.bottom(), &t)
    }
}

/// Sign sequence above a token, or why the token does not apply.
pub fn apply_token(t: Token, eps: &SignSeq) -> core::result::Result<SignSeq, String> {
    match t {
        Token::Sigma { i, sign } => {
            if sign != 1 && sign != -1 {
                return Err(format!("crossing sign {sign} is not +1 or -1"));
            }
            if i == 0 || i + 1 > eps.len() {
                return Err(format!("s{i} needs at least {} strands, have {}", i + 1, eps.len()));
            }
            Ok(eps.swapped(i - 1))
        }
        Token::Cup { sign } => {
            if sign != 1 && sign != -1 {
                return Err(format!("cup sign {sign} is not +1 or -1"));
            }
            Ok(eps.with_cup(sign))
        }
        Token::Cap => {
            if eps.len() < 2 {
                return Err(format!("cap needs two strands, have {}", eps.len()));
            }
            if eps.get(0) != -eps.get(1) {
                return Err(format!("cap joins positions 1, 2 which must have opposite signs, got {eps}"));
            }
            Ok(eps.without_front_pair())
        }
    }
}

/// Type-checks the word against its bottom signs and traces its strands.
pub fn validate(bottom: &SignSeq, tokens: &[Token]) -> Result<TangleWord> {
    let mut levels = vec![bottom.clone()];
    let mut uf = UnionFind(Vec::new());
    let mut pos: Vec<usize> = (0..bottom.len()).map(|_| uf.add()).collect();
    let mut ends: Vec<(usize, Endpoint)> = pos.iter().enumerate().map(|(p, &a)| (a, Endpoint::Bottom(p))).collect();
    let mut loops: Vec<usize> = Vec::new();
    let mut raw_crossings: Vec<(usize, usize, i8)> = Vec::new();
    for (k, &t) in tokens.iter().enumerate() {
        let cur = levels.last().unwrap();
        let next = apply_token(t, cur).map_err(|reason| Error::InvalidWord { index: k, reason })?;
        match t {
            Token::Sigma { i, sign } => {
                let s = sign * cur.get(i - 1) * cur.get(i);
                raw_crossings.push((pos[i - 1], pos[i], s));
                pos.swap(i - 1, i);
            }
            Token::Cup { .. } => {
                let a = uf.add();
                pos.splice(0..0, [a, a]);
            }
            Token::Cap => {
                let (a, b) = (pos[0], pos[1]);
                if uf.find(a) == uf.find(b) {
                    loops.push(a);
                } else {
                    uf.union(a, b);
                }
                pos.drain(0..2);
            }
        }
        levels.push(next);
    }
    for (p, &a) in pos.iter().enumerate() {
        ends.push((a, Endpoint::Top(p)));
    }
    // Number components: arcs in order of their first endpoint, then loops.
    let mut roots: Vec<usize> = Vec::new();
    let mut arc_ends: Vec<Vec<Endpoint>> = Vec::new();
    for &(a, e) in &ends {
        let r = uf.find(a);
        match roots.iter().position(|&x| x == r) {
            Some(c) => arc_ends[c].push(e),
            None => {
                roots.push(r);
                arc_ends.push(vec![e]);
            }
        }
    }
    for &l in &loops {
        let r = uf.find(l);
        if !roots.contains(&r) {
            roots.push(r);
        }
    }
    let arcs: Vec<(Endpoint, Endpoint)> = arc_ends
        .iter()
        .map(|e| {
            debug_assert_eq!(e.len(), 2);
            (e[0], e[1])
        })
        .collect();
    let crossings = raw_crossings
        .into_iter()
        .map(|(a, b, s)| {
            let ca = roots.iter().position(|&r| r == uf.find(a)).unwrap();
            let cb = roots.iter().position(|&r| r == uf.find(b)).unwrap();
            (ca, cb, s)
        })
        .collect();
    let trace = StrandTrace { arcs, closed: loops.len(), crossings, ell: bottom.ell() };
    Ok(TangleWord { tokens: tokens.to_vec(), levels, trace })
}

impl FromStr for Token {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match parse_tokens(s)?.as_slice() {
            [t] => Ok(*t),
            _ => Err(Error::Parse(format!("{s:?} is not a single elementary token"))),
        }
    }
}

/// Generators of the relation of a cup on the disk bases: v′₁ and
/// vᵢ ⊕ v′ᵢ₊₂ (source disk rank r, target r + 2).
fn cup_disk_gens(r: usize) -> LambdaMatrix {
    LambdaMatrix::from_fn(r + r + 2, r + 1, |row, col| {
        let hit = if col == 0 { row == r } else { row == col - 1 || row == r + col + 1 };
        if hit {
            LaurentPoly::one()
        } else {
            LaurentPoly::zero()
        }
    })
}

/// Generators of the relation of a cap on the disk bases: v₁ and
/// vᵢ₊₂ ⊕ v′ᵢ (source disk rank r + 2, target r).
fn cap_disk_gens(r: usize) -> LambdaMatrix {
    LambdaMatrix::from_fn(r + 2 + r, r + 1, |row, col| {
        let hit = if col == 0 { row == 0 } else { row == col + 1 || row == r + 2 + col - 1 };
        if hit {
            LaurentPoly::one()
        } else {
            LaurentPoly::zero()
        }
    })
}

fn disk_rank(eps: &SignSeq) -> usize {
    eps.len().saturating_sub(1)
}

/// The relation N(t) between the objects of `eps` and of the signs above t.
pub fn elementary_relation(t: Token, eps: &SignSeq) -> Result<Relation> {
    let next = apply_token(t, eps).map_err(|reason| Error::InvalidWord { index: 0, reason })?;
    let src = build_object(eps)?;
    let tgt = build_object(&next)?;
    elementary_between(t, &src, &tgt)
}

fn elementary_between(t: Token, src: &DiskObject, tgt: &DiskObject) -> Result<Relation> {
    let eps = src.eps();
    if let Token::Sigma { i, sign } = t {
        let m = burau::oriented_letter(i, sign, eps)?;
        let m = tgt.projection().mul(&m)?.mul(&src.section())?;
        return lagrangian::graph(&m, src.module(), tgt.module());
    }
    let (r_src, r_tgt) = (disk_rank(eps), disk_rank(tgt.eps()));
    if r_src == 0 && r_tgt == 0 {
        return Relation::new(src.module().clone(), tgt.module().clone(), GeneratorSet::empty(src.rank() + tgt.rank()));
    }
    let disk = match t {
        Token::Cup { .. } => {
            if eps.is_empty() {
                // A lone arc: the target disk rank is 1, spanned by v′₁.
                LambdaMatrix::identity(1)
            } else {
                cup_disk_gens(r_src)
            }
        }
        Token::Cap => {
            if tgt.eps().is_empty() {
                LambdaMatrix::identity(1)
            } else {
                cap_disk_gens(r_tgt)
            }
        }
        Token::Sigma { .. } => unreachable!(),
    };
    let gens = if src.eliminated_index().is_none() && tgt.eliminated_index().is_none() {
        GeneratorSet::new(disk)?
    } else {
        let proj = src.projection().direct_sum(&tgt.projection());
        let projected = proj.mul(&disk)?;
        if projected.cols() == 0 || projected.rows() == 0 || projected.is_zero() {
            GeneratorSet::empty(projected.rows())
        } else {
            linalg::basis_of_span(&projected)?
        }
    };
    Relation::new(src.module().clone(), tgt.module().clone(), gens)
}

/// Objects at every level of a word.
pub fn level_objects(word: &TangleWord) -> Result<Vec<DiskObject>> {
    (0..=word.tokens.len()).map(|k| build_object(word.level(k))).collect()
}

/// N(word) by direct block updates where available, else by composition.
pub fn relation_of_word(word: &TangleWord) -> Result<Relation> {
    let objs = level_objects(word)?;
    let mut rel = lagrangian::diagonal(objs[0].module());
    for (k, &t) in word.tokens.iter().enumerate() {
        let (cur, next) = (&objs[k], &objs[k + 1]);
        let fast = if word.trace.ell != 0 { shortcut_step(&rel, t, cur, next)? } else { None };
        rel = match fast {
            Some(r) => r,
            None => lagrangian::compose(&rel, &elementary_between(t, cur, next)?)?,
        };
    }
    Ok(rel)
}

/// N(word) as the plain left fold of composition over elementary relations.
pub fn relation_of_word_generic(word: &TangleWord) -> Result<Relation> {
    let objs = level_objects(word)?;
    let mut rel = lagrangian::diagonal(objs[0].module());
    for (k, &t) in word.tokens.iter().enumerate() {
        rel = lagrangian::compose(&rel, &elementary_between(t, &objs[k], &objs[k + 1])?)?;
    }
    Ok(rel)
}

/// One block update for signs with nonzero sum; `None` when the update
/// would produce dependent generators or the cap equation has no certified
/// solution basis (the generic path handles both).
fn shortcut_step(rel: &Relation, t: Token, cur: &DiskObject, next: &DiskObject) -> Result<Option<Relation>> {
    let m = rel.m();
    let mp = rel.m_prime();
    let k = m.cols();
    let (new_m, new_mp) = match t {
        Token::Sigma { i, sign } => (m, burau::oriented_letter(i, sign, cur.eps())?.mul(&mp)?),
        Token::Cup { .. } => {
            let mut e1 = LambdaMatrix::zeros(mp.rows() + 2, 1);
            e1.set(0, 0, LaurentPoly::one());
            let shifted = LambdaMatrix::zeros(2, k).vstack(&mp)?;
            (LambdaMatrix::zeros(m.rows(), 1).hstack(&m)?, e1.hstack(&shifted)?)
        }
        Token::Cap => {
            let w = if k == 0 {
                GeneratorSet::empty(0)
            } else {
                match linalg::row_syzygy(&mp.slice_rows(1..2)?) {
                    Ok(w) => w,
                    Err(Error::Unsaturatable { .. }) => return Ok(None),
                    Err(e) => return Err(e),
                }
            };
            (m.mul(w.gens())?, mp.slice_rows(2..mp.rows())?.mul(w.gens())?)
        }
    };
    let stacked = new_m.vstack(&new_mp)?;
    if linalg::rank_q(&stacked) < stacked.cols() {
        return Ok(None);
    }
    let out = Relation::new(rel.source().clone(), next.module().clone(), GeneratorSet::new(stacked)?)?;
    Ok(Some(out))
}

/// The expected rank of N(word) for a word from n to n′ points.
pub fn expected_rank(n: usize, n_top: usize, ell: i32) -> usize {
    if n == 0 && n_top == 0 {
        0
    } else if ell != 0 || n * n_top == 0 {
        (n + n_top) / 2 - 1
    } else {
        (n + n_top) / 2 - 2
    }
}

/// True when `rel` has a certified free basis of the expected rank.
pub fn rank_check(word: &TangleWord, rel: &Relation) -> bool {
    rel.gens().certified_free_basis() && rel.gens().len() == expected_rank(word.bottom().len(), word.top().len(), word.trace.ell)
}

/// Summary of the checks run on a computed relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub certified: bool,
    pub lagrangian: bool,
    pub rank_ok: bool,
    pub transversal: bool,
}

/// Runs the saturation, Lagrangian and rank checks on N(word).
pub fn verify_relation(word: &TangleWord, rel: &Relation) -> Result<RelationReport> {
    Ok(RelationReport {
        certified: rel.gens().certified_free_basis(),
        lagrangian: rel.is_lagrangian()?,
        rank_ok: rank_check(word, rel),
        transversal: rel.transversal(),
    })
}

//! Two independent derivations of the intersection form on the disk
//! module, used to check `gram_form`.
//!
//! * `geometric_gram` draws explicit polygonal lifts of the loops
//!   e_i e_{i+1}^{-1} in the infinite cyclic cover of the punctured disk and
//!   counts signed transverse crossings sheet by sheet.
//! * `bootstrap_gram` treats every entry of every form as an unknown
//!   Laurent polynomial supported on t^-1, t^0, t^1 and solves the linear
//!   system forced by skew-hermitian symmetry, the diagonal values, and
//!   unitarity of every oriented crossing matrix.
#![allow(dead_code)]

use std::collections::BTreeMap;

use lagrep_core::burau::oriented_generator;
use lagrep_core::diskhomology::SignSeq;
use lagrep_core::{LambdaMatrix, LaurentPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

type Pt = (i64, i64);

/// A straight segment of a lifted curve on a given sheet.
struct Seg {
    a: Pt,
    b: Pt,
    sheet: i32,
}

const SPACING: i64 = 1000;

/// Square loop around puncture j (at (1000j, 0)) starting and ending at its
/// top midpoint, counter-clockwise when `dir` is +1. Cuts run straight down
/// from each puncture; crossing cut j left to right moves up `eps_j` sheets.
fn square_loop(j: usize, dir: i32, eps_j: i32, r: i64, sheet: &mut i32, out: &mut Vec<Seg>) {
    let x = SPACING * j as i64;
    let pts: [Pt; 7] = if dir > 0 {
        [(x, r), (x - r, r), (x - r, -r), (x, -r), (x + r, -r), (x + r, r), (x, r)]
    } else {
        [(x, r), (x + r, r), (x + r, -r), (x, -r), (x - r, -r), (x - r, r), (x, r)]
    };
    for w in pts.windows(2) {
        out.push(Seg { a: w[0], b: w[1], sheet: *sheet });
        if w[1] == (x, -r) {
            *sheet += eps_j * dir;
        }
    }
}

/// The lift of e_i e_{i+1}^{-1} (1-based i) through the base point
/// (1000i + off, h), with loops of half-width r.
fn lifted_curve(i: usize, eps: &SignSeq, r: i64, h: i64, off: i64) -> Vec<Seg> {
    let base = (SPACING * i as i64 + off, h);
    let mut out = Vec::new();
    let mut sheet = 0;
    for (j, exp) in [(i, 1), (i + 1, -1)] {
        let top = (SPACING * j as i64, r);
        out.push(Seg { a: base, b: top, sheet });
        let e = eps.get(j - 1) as i32;
        square_loop(j, e * exp, e, r, &mut sheet, &mut out);
        out.push(Seg { a: top, b: base, sheet });
    }
    assert_eq!(sheet, 0, "the loop e_i e_(i+1)^-1 lifts to a closed curve");
    out
}

fn cross(o: Pt, a: Pt, b: Pt) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

fn on_box(o: Pt, a: Pt, p: Pt) -> bool {
    o.0.min(a.0) <= p.0 && p.0 <= o.0.max(a.0) && o.1.min(a.1) <= p.1 && p.1 <= o.1.max(a.1)
}

/// Whether two segments cross transversally; panics on touching or
/// overlapping segments, which the chosen representatives avoid.
fn crosses(p: &Seg, q: &Seg) -> bool {
    let (d1, d2) = (cross(q.a, q.b, p.a), cross(q.a, q.b, p.b));
    let (d3, d4) = (cross(p.a, p.b, q.a), cross(p.a, p.b, q.b));
    let degenerate = (d1 == 0 && on_box(q.a, q.b, p.a))
        || (d2 == 0 && on_box(q.a, q.b, p.b))
        || (d3 == 0 && on_box(p.a, p.b, q.a))
        || (d4 == 0 && on_box(p.a, p.b, q.b));
    assert!(!degenerate, "representatives must meet transversally");
    (d1 > 0) != (d2 > 0) && (d3 > 0) != (d4 > 0) && d1 != 0 && d2 != 0 && d3 != 0 && d4 != 0
}

/// Σ over crossings of sign · t^(sheet of x − sheet of y).
fn equivariant_intersection(x: &[Seg], y: &[Seg]) -> LaurentPoly {
    let mut terms = Vec::new();
    for p in x {
        for q in y {
            if crosses(p, q) {
                let (dx, dy) = ((p.b.0 - p.a.0, p.b.1 - p.a.1), (q.b.0 - q.a.0, q.b.1 - q.a.1));
                let sign = if dx.0 * dy.1 - dx.1 * dy.0 > 0 { 1 } else { -1 };
                terms.push((p.sheet - q.sheet, sign));
            }
        }
    }
    LaurentPoly::from_terms(terms)
}

/// Entry (a, b) is the equivariant intersection of the lifts of v_a and v_b,
/// drawn with two different sizes so that they meet transversally.
pub fn geometric_gram(eps: &SignSeq) -> LambdaMatrix {
    let r = eps.len().saturating_sub(1);
    let xs: Vec<Vec<Seg>> = (1..=r).map(|i| lifted_curve(i, eps, 300, 350, 500)).collect();
    let ys: Vec<Vec<Seg>> = (1..=r).map(|i| lifted_curve(i, eps, 200, 450, 430)).collect();
    LambdaMatrix::from_fn(r, r, |a, b| equivariant_intersection(&xs[a], &ys[b]))
}

/// Exponents allowed in an unknown entry.
const SUPPORT: [i32; 3] = [-1, 0, 1];

/// A linear form Σ c_k x_k + constant, sparse in the unknowns.
#[derive(Clone, Default)]
struct Linear {
    coeffs: BTreeMap<usize, BigRational>,
    constant: BigRational,
}

impl Linear {
    fn add_var(&mut self, var: usize, c: &BigRational) {
        let e = self.coeffs.entry(var).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&var);
        }
    }

    fn add_scaled(&mut self, other: &Linear, c: &BigRational) {
        for (&v, x) in &other.coeffs {
            self.add_var(v, &(x * c));
        }
        self.constant += &other.constant * c;
    }
}

/// A polynomial whose coefficients are linear forms.
type SymPoly = BTreeMap<i32, Linear>;

fn rat(c: i128) -> BigRational {
    BigRational::from_integer(BigInt::from(c))
}

/// Incremental sparse echelon form: each pivot row is keyed by an unknown
/// with coefficient 1 there, and mentions no unknown that was already a
/// pivot when the row was added.
#[derive(Default)]
struct Echelon {
    pivots: BTreeMap<usize, Linear>,
    order: Vec<usize>,
}

impl Echelon {
    /// Adds the equation `eq = 0`; returns false if it is inconsistent.
    fn push(&mut self, mut eq: Linear) -> bool {
        while let Some(var) = eq.coeffs.keys().copied().find(|v| self.pivots.contains_key(v)) {
            let c = -eq.coeffs[&var].clone();
            eq.add_scaled(&self.pivots[&var], &c);
        }
        let Some((&lead, c)) = eq.coeffs.iter().next() else { return eq.constant.is_zero() };
        let inv = c.recip();
        let mut row = Linear::default();
        row.add_scaled(&eq, &inv);
        self.pivots.insert(lead, row);
        self.order.push(lead);
        true
    }

    /// The unique solution, if every unknown is a pivot.
    fn solve(&self, unknowns: usize) -> Option<Vec<BigRational>> {
        if self.pivots.len() != unknowns {
            return None;
        }
        let mut x = vec![BigRational::zero(); unknowns];
        // Later rows only mention later pivots, so solve newest first.
        for &v in self.order.iter().rev() {
            let row = &self.pivots[&v];
            let mut val = -row.constant.clone();
            for (&w, c) in &row.coeffs {
                if w != v {
                    val -= c * &x[w];
                }
            }
            x[v] = val;
        }
        Some(x)
    }
}

/// Pushes one equation per coefficient of `p`.
fn push_poly(p: SymPoly, ech: &mut Echelon) -> bool {
    p.into_values().all(|l| ech.push(l))
}

/// Result of the bootstrap solve for one sign multiset.
pub struct Bootstrap {
    pub forms: Vec<(SignSeq, LambdaMatrix)>,
    pub unknowns: usize,
}

/// All distinct permutations of `eps`, sorted.
fn orbit(eps: &SignSeq) -> Vec<SignSeq> {
    let n = eps.len();
    let plus = eps.signs().iter().filter(|&&s| s > 0).count();
    let mut out: Vec<SignSeq> = (0..1u32 << n)
        .filter(|m| m.count_ones() as usize == plus)
        .map(|m| SignSeq::new((0..n).map(|k| if m >> k & 1 == 1 { 1 } else { -1 }).collect()).unwrap())
        .collect();
    out.sort();
    out
}

/// Solves for the forms on every ordering of the signs of `eps`; `None`
/// when the constraints do not pin the forms down uniquely.
pub fn bootstrap_gram(eps: &SignSeq) -> Option<Bootstrap> {
    let n = eps.len();
    let r = n.saturating_sub(1);
    let seqs = orbit(eps);
    let index = |s: usize, a: usize, b: usize, e: usize| ((s * r + a) * r + b) * SUPPORT.len() + e;
    let unknowns = seqs.len() * r * r * SUPPORT.len();
    let entry = |s: usize, a: usize, b: usize| -> SymPoly {
        SUPPORT
            .iter()
            .enumerate()
            .map(|(k, &e)| {
                let mut l = Linear::default();
                l.add_var(index(s, a, b, k), &BigRational::one());
                (e, l)
            })
            .collect()
    };
    let mut ech = Echelon::default();
    for (s, seq) in seqs.iter().enumerate() {
        for a in 0..r {
            for b in 0..r {
                // g[a][b] + conj(g[b][a]) = 0.
                let mut p = entry(s, a, b);
                for (e, l) in entry(s, b, a) {
                    p.entry(-e).or_default().add_scaled(&l, &BigRational::one());
                }
                if !push_poly(p, &mut ech) {
                    return None;
                }
            }
            // Diagonal: (ε_a + ε_{a+1})/2 · (t − t⁻¹).
            let half = BigRational::new(BigInt::from(seq.get(a) + seq.get(a + 1)), BigInt::from(2));
            let mut p = entry(s, a, a);
            p.entry(1).or_default().constant -= &half;
            p.entry(-1).or_default().constant += &half;
            if !push_poly(p, &mut ech) {
                return None;
            }
        }
        // M† G_{swapped} M = G for every crossing.
        for i in 1..n {
            let top = seq.swapped(i - 1);
            let s_top = seqs.iter().position(|x| *x == top).expect("orbits are closed under swaps");
            let m = oriented_generator(i, seq).ok()?;
            for a in 0..r {
                for b in 0..r {
                    let mut p = SymPoly::new();
                    for c in 0..r {
                        for d in 0..r {
                            let known = &m.get(c, a).involute() * m.get(d, b);
                            if known.is_zero() {
                                continue;
                            }
                            for (e, l) in entry(s_top, c, d) {
                                for (k, coeff) in known.terms() {
                                    p.entry(e + k).or_default().add_scaled(&l, &rat(coeff));
                                }
                            }
                        }
                    }
                    for (e, l) in entry(s, a, b) {
                        p.entry(e).or_default().add_scaled(&l, &-BigRational::one());
                    }
                    if !push_poly(p, &mut ech) {
                        return None;
                    }
                }
            }
        }
    }
    let x = ech.solve(unknowns)?;
    let to_int = |q: &BigRational| -> Option<i128> {
        if q.is_integer() {
            q.to_integer().to_i128()
        } else {
            None
        }
    };
    let mut forms = Vec::new();
    for (s, seq) in seqs.iter().enumerate() {
        let mut entries = Vec::with_capacity(r * r);
        for a in 0..r {
            for b in 0..r {
                let terms =
                    SUPPORT.iter().enumerate().map(|(k, &e)| Some((e, to_int(&x[index(s, a, b, k)])?))).collect::<Option<Vec<_>>>()?;
                entries.push(LaurentPoly::from_terms(terms));
            }
        }
        forms.push((seq.clone(), LambdaMatrix::new(r, r, entries).ok()?));
    }
    debug_assert!(x.iter().all(|q| q.abs() <= rat(2)));
    Some(Bootstrap { forms, unknowns })
}

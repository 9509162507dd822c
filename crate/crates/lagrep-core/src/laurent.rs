//! The ring Λ = Z[t, t⁻¹], its involution t ↦ t⁻¹, and the fraction field.
//!
//! A [`LaurentPoly`] is stored densely as a lowest exponent plus a
//! coefficient vector whose first and last entries are nonzero. The zero
//! polynomial is the empty vector. Coefficients are `i128`; arithmetic is
//! overflow-checked and panics on overflow rather than wrapping.
//!
//! Units of Λ are ±tᵏ. [`LaurentPoly::canonical`] picks the representative
//! of a unit class with lowest exponent 0 and positive leading coefficient, so
//! "equal up to a unit" becomes plain equality of canonical forms.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use core::str::FromStr;

use crate::error::{Error, Result};

pub type Coeff = i128;

#[inline]
fn cadd(a: Coeff, b: Coeff) -> Coeff {
    a.checked_add(b).expect("coefficient overflow")
}

#[inline]
fn cmul(a: Coeff, b: Coeff) -> Coeff {
    a.checked_mul(b).expect("coefficient overflow")
}

/// Non-negative gcd of two integers.
pub fn igcd(mut a: Coeff, mut b: Coeff) -> Coeff {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i32,
    coeffs: Vec<Coeff>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// The indeterminate t.
    pub fn t() -> Self {
        Self::monomial(1, 1)
    }

    pub fn constant(c: Coeff) -> Self {
        Self::monomial(c, 0)
    }

    /// c·tᵉ.
    pub fn monomial(c: Coeff, e: i32) -> Self {
        if c == 0 {
            Self::zero()
        } else {
            Self { low: e, coeffs: vec![c] }
        }
    }

    /// ±tᵉ for a sign in {+1, −1}.
    pub fn unit(sign: i8, e: i32) -> Self {
        Self::monomial(sign as Coeff, e)
    }

    /// Builds Σ coeffs[k]·t^(low+k), trimming zeros.
    pub fn from_coeffs(low: i32, coeffs: Vec<Coeff>) -> Self {
        let mut p = Self { low, coeffs };
        p.normalize();
        p
    }

    /// Builds a polynomial from (exponent, coefficient) pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I: IntoIterator<Item = (i32, Coeff)>>(terms: I) -> Self {
        let terms: Vec<(i32, Coeff)> = terms.into_iter().filter(|&(_, c)| c != 0).collect();
        if terms.is_empty() {
            return Self::zero();
        }
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![0; (hi - lo) as usize + 1];
        for (e, c) in terms {
            let slot = &mut coeffs[(e - lo) as usize];
            *slot = cadd(*slot, c);
        }
        Self::from_coeffs(lo, coeffs)
    }

    fn normalize(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i32;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs == [1]
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn low_exp(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.low)
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn high_exp(&self) -> Option<i32> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i32 - 1)
    }

    /// Coefficient of tᵉ.
    pub fn coeff(&self, e: i32) -> Coeff {
        let k = e as i64 - self.low as i64;
        if k < 0 {
            return 0;
        }
        self.coeffs.get(k as usize).copied().unwrap_or(0)
    }

    /// Nonzero terms as (exponent, coefficient), ascending.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, Coeff)> + '_ {
        let low = self.low;
        self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(move |(k, &c)| (low + k as i32, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    /// If `self` is a unit ±tᵉ, returns (sign, e).
    pub fn as_unit(&self) -> Option<(i8, i32)> {
        match self.coeffs.as_slice() {
            [1] => Some((1, self.low)),
            [-1] => Some((-1, self.low)),
            _ => None,
        }
    }

    pub fn is_unit(&self) -> bool {
        self.as_unit().is_some()
    }

    /// Multiplication by tᵏ.
    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    /// Multiplication by an integer.
    pub fn scale(&self, c: Coeff) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Self { low: self.low, coeffs: self.coeffs.iter().map(|&x| cmul(x, c)).collect() }
    }

    /// The involution t ↦ t⁻¹.
    pub fn involute(&self) -> Self {
        match self.high_exp() {
            None => Self::zero(),
            Some(hi) => {
                let mut coeffs = self.coeffs.clone();
                coeffs.reverse();
                Self { low: -hi, coeffs }
            }
        }
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Value at t = 1.
    pub fn eval_at_one(&self) -> Coeff {
        self.coeffs.iter().fold(0, |a, &c| cadd(a, c))
    }

    /// Positive gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> Coeff {
        self.coeffs.iter().fold(0, |g, &c| igcd(g, c))
    }

    /// Splits p = c·q with c the positive content and q primitive.
    pub fn content_primitive(&self) -> Result<(Coeff, LaurentPoly)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let c = self.content();
        Ok((c, self.div_int(c)))
    }

    /// Exact division by a nonzero integer dividing every coefficient.
    fn div_int(&self, c: Coeff) -> Self {
        debug_assert!(c != 0 && self.coeffs.iter().all(|x| x % c == 0));
        Self { low: self.low, coeffs: self.coeffs.iter().map(|&x| x / c).collect() }
    }

    /// The unit u = ±tᵏ with u·self canonical. Returns (sign, k); the zero
    /// polynomial gets (1, 0).
    pub fn normalizing_unit(&self) -> (i8, i32) {
        if self.is_zero() {
            return (1, 0);
        }
        let sign = if *self.coeffs.last().unwrap() > 0 { 1 } else { -1 };
        (sign, -self.low)
    }

    /// Canonical representative of the class of `self` up to units:
    /// lowest exponent 0, positive leading coefficient.
    pub fn canonical(&self) -> Self {
        let (s, k) = self.normalizing_unit();
        self.scale(s as Coeff).shift(k)
    }

    pub fn is_canonical(&self) -> bool {
        self.is_zero() || (self.low == 0 && *self.coeffs.last().unwrap() > 0)
    }

    /// True when `self` and `other` differ by a unit.
    pub fn unit_equiv(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }

    /// Greatest common divisor in Λ, in canonical form. gcd(0, 0) = 0.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        if a.is_zero() {
            return b.canonical();
        }
        if b.is_zero() {
            return a.canonical();
        }
        if a.is_unit() || b.is_unit() {
            return Self::one();
        }
        let ca = a.content();
        let cb = b.content();
        let c = igcd(ca, cb);
        let pa: Vec<Coeff> = a.coeffs.iter().map(|&x| x / ca).collect();
        let pb: Vec<Coeff> = b.coeffs.iter().map(|&x| x / cb).collect();
        let g = zpoly::primitive_gcd(&pa, &pb);
        Self::from_coeffs(0, g).scale(c).canonical()
    }

    /// Quotient a / b, failing unless b divides a exactly in Λ.
    pub fn exact_div(a: &Self, b: &Self) -> Result<Self> {
        if b.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if a.is_zero() {
            return Ok(Self::zero());
        }
        if let Some((s, e)) = b.as_unit() {
            return Ok(a.scale(s as Coeff).shift(-e));
        }
        // a = t^la·A, b = t^lb·B with A(0), B(0) ≠ 0, so any Laurent
        // quotient is t^(la-lb) times an honest polynomial.
        match zpoly::div_exact(&a.coeffs, &b.coeffs) {
            Some(q) => Ok(Self::from_coeffs(a.low - b.low, q)),
            None => Err(Error::NotDivisible { num: a.clone(), den: b.clone() }),
        }
    }

    /// True when `b` divides `self`.
    pub fn divisible_by(&self, b: &Self) -> bool {
        Self::exact_div(self, b).is_ok()
    }

    /// Renders with a custom variable name.
    pub fn render(&self, var: &str) -> String {
        use core::fmt::Write;
        let mut out = String::new();
        if self.is_zero() {
            out.push('0');
            return out;
        }
        for (idx, (e, c)) in self.terms().rev().enumerate() {
            let mag = c.unsigned_abs();
            if idx == 0 {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if c < 0 { " - " } else { " + " });
            }
            if e == 0 {
                let _ = write!(out, "{mag}");
                continue;
            }
            if mag != 1 {
                let _ = write!(out, "{mag}");
            }
            out.push_str(var);
            if e != 1 {
                let _ = write!(out, "^{e}");
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("t"))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl From<Coeff> for LaurentPoly {
    fn from(c: Coeff) -> Self {
        Self::constant(c)
    }
}

/// Parses text like `2t^2 - 3t + 2`, `t^-1`, `-t^{-2} + 4*t`, `t^(3)`.
/// Unicode minus and superscript minus-one (`t⁻¹`) are accepted too.
impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse::poly(s)
    }
}

mod parse {
    use super::*;

    pub(super) fn poly(src: &str) -> Result<LaurentPoly> {
        let cleaned: String = src.replace('−', "-").replace("⁻¹", "^-1").chars().filter(|c| !c.is_whitespace()).collect();
        let bytes = cleaned.as_bytes();
        if bytes.is_empty() {
            return Err(Error::Parse(String::from("empty polynomial")));
        }
        let mut terms = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            let mut sign: Coeff = 1;
            if i > 0 || bytes[i] == b'+' || bytes[i] == b'-' {
                match bytes[i] {
                    b'+' => i += 1,
                    b'-' => {
                        sign = -1;
                        i += 1
                    }
                    _ => return Err(err(&cleaned, i, "expected + or -")),
                }
            }
            let (coef, has_coef, next) = digits(bytes, i);
            i = next;
            if i < bytes.len() && bytes[i] == b'*' {
                if !has_coef {
                    return Err(err(&cleaned, i, "stray *"));
                }
                i += 1;
            }
            let mut exp: i32 = 0;
            if i < bytes.len() && bytes[i] == b't' {
                i += 1;
                exp = 1;
                if i < bytes.len() && bytes[i] == b'^' {
                    i += 1;
                    let (e, next) = exponent(&cleaned, bytes, i)?;
                    exp = e;
                    i = next;
                }
            } else if !has_coef {
                return Err(err(&cleaned, i, "expected a coefficient or t"));
            }
            let c = coef.unwrap_or(1);
            terms.push((exp, sign * c));
        }
        Ok(LaurentPoly::from_terms(terms))
    }

    fn digits(bytes: &[u8], mut i: usize) -> (Option<Coeff>, bool, usize) {
        let start = i;
        let mut v: Coeff = 0;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            v = cadd(cmul(v, 10), (bytes[i] - b'0') as Coeff);
            i += 1;
        }
        if i == start {
            (None, false, i)
        } else {
            (Some(v), true, i)
        }
    }

    fn exponent(src: &str, bytes: &[u8], mut i: usize) -> Result<(i32, usize)> {
        let close = match bytes.get(i) {
            Some(b'(') => Some(b')'),
            Some(b'{') => Some(b'}'),
            _ => None,
        };
        if close.is_some() {
            i += 1;
        }
        let mut neg = false;
        if bytes.get(i) == Some(&b'-') {
            neg = true;
            i += 1;
        } else if bytes.get(i) == Some(&b'+') {
            i += 1;
        }
        let (v, ok, next) = digits(bytes, i);
        if !ok {
            return Err(err(src, i, "expected exponent"));
        }
        i = next;
        if let Some(c) = close {
            if bytes.get(i) != Some(&c) {
                return Err(err(src, i, "unclosed exponent"));
            }
            i += 1;
        }
        let v = v.unwrap();
        let e = i32::try_from(if neg { -v } else { v }).map_err(|_| err(src, i, "exponent too large"))?;
        Ok((e, i))
    }

    fn err(src: &str, at: usize, what: &str) -> Error {
        Error::Parse(alloc::format!("{what} at byte {at} in {src:?}"))
    }
}

/// Dense integer polynomials (ascending coefficients, constant first).
mod zpoly {
    use super::*;

    fn trim(p: &mut Vec<Coeff>) {
        while p.last() == Some(&0) {
            p.pop();
        }
    }

    fn primitive_part(p: &mut [Coeff]) {
        let c = p.iter().fold(0, |g, &x| igcd(g, x));
        if c > 1 {
            for x in p.iter_mut() {
                *x /= c;
            }
        }
    }

    /// Pseudo-remainder of a by b with contents stripped along the way;
    /// only its associates matter for gcd purposes.
    fn prem(a: &[Coeff], b: &[Coeff]) -> Vec<Coeff> {
        let mut r = a.to_vec();
        let db = b.len() - 1;
        let lb = b[db];
        while r.len() > db {
            let dr = r.len() - 1;
            let lr = r[dr];
            let shift = dr - db;
            for x in r.iter_mut() {
                *x = cmul(*x, lb);
            }
            for (k, &bk) in b.iter().enumerate() {
                r[k + shift] = cadd(r[k + shift], -cmul(lr, bk));
            }
            trim(&mut r);
            primitive_part(&mut r);
        }
        r
    }

    /// Primes just below 2⁶¹; products of two still fit in i128.
    const PRIMES: [u64; 6] =
        [2305843009213693951, 2305843009213693921, 2305843009213693907, 2305843009213693669, 2305843009213693613, 2305843009213693561];

    fn mulmod(a: u64, b: u64, p: u64) -> u64 {
        ((a as u128 * b as u128) % p as u128) as u64
    }

    fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, a, p);
            }
            a = mulmod(a, a, p);
            e >>= 1;
        }
        acc
    }

    fn reduce(a: &[Coeff], p: u64) -> Vec<u64> {
        a.iter().map(|&x| x.rem_euclid(p as Coeff) as u64).collect()
    }

    /// Monic gcd over Z/p.
    fn gcd_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        while b.last() == Some(&0) {
            b.pop();
        }
        while !b.is_empty() {
            let inv = powmod(*b.last().unwrap(), p - 2, p);
            while a.len() >= b.len() {
                let c = mulmod(*a.last().unwrap(), inv, p);
                let shift = a.len() - b.len();
                for (k, &bk) in b.iter().enumerate() {
                    a[k + shift] = (a[k + shift] + p - mulmod(c, bk, p)) % p;
                }
                while a.last() == Some(&0) {
                    a.pop();
                }
            }
            core::mem::swap(&mut a, &mut b);
        }
        let inv = powmod(*a.last().unwrap(), p - 2, p);
        a.iter().map(|&x| mulmod(x, inv, p)).collect()
    }

    /// Exact quotient with checked arithmetic: None when b does not divide
    /// a or the division would overflow.
    fn try_div(a: &[Coeff], b: &[Coeff]) -> Option<Vec<Coeff>> {
        if a.len() < b.len() {
            return None;
        }
        let mut r = a.to_vec();
        let db = b.len() - 1;
        let lb = b[db];
        let mut q = vec![0; a.len() - db];
        for k in (0..q.len()).rev() {
            let top = r[k + db];
            if top % lb != 0 {
                return None;
            }
            let c = top / lb;
            q[k] = c;
            for (j, &bj) in b.iter().enumerate() {
                r[k + j] = r[k + j].checked_sub(c.checked_mul(bj)?)?;
            }
        }
        r.iter().all(|&x| x == 0).then_some(q)
    }

    fn normalize(mut g: Vec<Coeff>) -> Vec<Coeff> {
        trim(&mut g);
        primitive_part(&mut g);
        if g.last().is_some_and(|&x| x < 0) {
            for x in g.iter_mut() {
                *x = -*x;
            }
        }
        g
    }

    /// gcd of two nonzero primitive polynomials; primitive with positive
    /// leading coefficient.
    ///
    /// Modular: the gcd modulo primes not dividing either leading
    /// coefficient, scaled by the gcd of the leading coefficients and lifted
    /// through the Chinese remainder theorem, is accepted once it divides
    /// both inputs. Falls back to a primitive remainder sequence.
    pub(super) fn primitive_gcd(a: &[Coeff], b: &[Coeff]) -> Vec<Coeff> {
        let gamma = igcd(*a.last().unwrap(), *b.last().unwrap());
        // (degree, modulus, residues of γ·g)
        let mut acc: Option<(usize, u128, Vec<u128>)> = None;
        for &p in &PRIMES {
            if a.last().unwrap() % p as Coeff == 0 || b.last().unwrap() % p as Coeff == 0 {
                continue;
            }
            let g = gcd_mod(&reduce(a, p), &reduce(b, p), p);
            if g.len() == 1 {
                return vec![1];
            }
            let gm = gamma.rem_euclid(p as Coeff) as u64;
            let img: Vec<u64> = g.iter().map(|&x| mulmod(x, gm, p)).collect();
            acc = match acc {
                Some((deg, m, res)) if deg == img.len() && m < 1 << 64 => {
                    let minv = powmod((m % p as u128) as u64, p - 2, p);
                    let res = res
                        .iter()
                        .zip(&img)
                        .map(|(&x, &y)| {
                            let diff = (y as u128 + p as u128 - x % p as u128) % p as u128;
                            let h = mulmod(diff as u64, minv, p) as u128;
                            x + m * h
                        })
                        .collect();
                    Some((deg, m * p as u128, res))
                }
                Some((deg, ..)) if deg < img.len() => acc,
                _ => Some((img.len(), p as u128, img.iter().map(|&x| x as u128).collect())),
            };
            let (_, m, res) = acc.as_ref().unwrap();
            let half = m / 2;
            let cand: Vec<Coeff> = res.iter().map(|&x| if x > half { x as Coeff - *m as Coeff } else { x as Coeff }).collect();
            let cand = normalize(cand);
            if !cand.is_empty() && try_div(a, &cand).is_some() && try_div(b, &cand).is_some() {
                return cand;
            }
        }
        prs_gcd(a, b)
    }

    fn prs_gcd(a: &[Coeff], b: &[Coeff]) -> Vec<Coeff> {
        let (mut a, mut b) = if a.len() >= b.len() { (a.to_vec(), b.to_vec()) } else { (b.to_vec(), a.to_vec()) };
        loop {
            if b.len() == 1 {
                return vec![1];
            }
            let mut r = prem(&a, &b);
            if r.is_empty() {
                return normalize(b);
            }
            primitive_part(&mut r);
            a = core::mem::replace(&mut b, r);
        }
    }

    #[cfg(test)]
    pub(super) fn prs_gcd_for_tests(a: &[Coeff], b: &[Coeff]) -> Vec<Coeff> {
        prs_gcd(a, b)
    }

    /// Exact quotient a / b in Z[t], or None if b does not divide a.
    pub(super) fn div_exact(a: &[Coeff], b: &[Coeff]) -> Option<Vec<Coeff>> {
        if a.len() < b.len() {
            return None;
        }
        let mut r = a.to_vec();
        let db = b.len() - 1;
        let lb = b[db];
        let mut q = vec![0; a.len() - db];
        for k in (0..q.len()).rev() {
            let top = r[k + db];
            if top % lb != 0 {
                return None;
            }
            let c = top / lb;
            q[k] = c;
            if c != 0 {
                for (j, &bj) in b.iter().enumerate() {
                    r[k + j] = cadd(r[k + j], -cmul(c, bj));
                }
            }
        }
        r.iter().all(|&x| x == 0).then_some(q)
    }
}

fn add_impl(a: &LaurentPoly, b: &LaurentPoly, sign: Coeff) -> LaurentPoly {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return b.scale(sign);
    }
    let lo = a.low.min(b.low);
    let hi = a.high_exp().unwrap().max(b.high_exp().unwrap());
    let mut coeffs = vec![0; (hi - lo) as usize + 1];
    for (k, &c) in a.coeffs.iter().enumerate() {
        coeffs[(a.low - lo) as usize + k] = c;
    }
    for (k, &c) in b.coeffs.iter().enumerate() {
        let slot = &mut coeffs[(b.low - lo) as usize + k];
        *slot = cadd(*slot, cmul(sign, c));
    }
    LaurentPoly::from_coeffs(lo, coeffs)
}

fn mul_impl(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() || b.is_zero() {
        return LaurentPoly::zero();
    }
    let mut coeffs = vec![0; a.coeffs.len() + b.coeffs.len() - 1];
    for (i, &x) in a.coeffs.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.coeffs.iter().enumerate() {
            coeffs[i + j] = cadd(coeffs[i + j], cmul(x, y));
        }
    }
    LaurentPoly::from_coeffs(a.low + b.low, coeffs)
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                $body(self, rhs)
            }
        }
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                $body(&self, &rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                $body(&self, rhs)
            }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                $body(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| add_impl(a, b, 1));
forward_binop!(Sub, sub, |a, b| add_impl(a, b, -1));
forward_binop!(Mul, mul, mul_impl);

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        *self = add_impl(self, rhs, 1);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        *self = add_impl(self, rhs, -1);
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

/// An element num/den of the fraction field Q(Λ), kept reduced with a
/// canonical denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (num, den) = if den.is_unit() {
            (num, den)
        } else {
            let g = LaurentPoly::gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (
                    LaurentPoly::exact_div(&num, &g).expect("gcd divides numerator"),
                    LaurentPoly::exact_div(&den, &g).expect("gcd divides denominator"),
                )
            }
        };
        let (s, k) = den.normalizing_unit();
        Self { num: num.scale(s as Coeff).shift(k), den: den.scale(s as Coeff).shift(k) }
    }

    pub fn zero() -> Self {
        Self { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self { num: p, den: LaurentPoly::one() }
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the value lies in Λ.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn to_laurent(&self) -> Option<LaurentPoly> {
        self.is_laurent().then(|| self.num.clone())
    }

    /// Cost measure used for pivot selection: total number of terms.
    pub fn num_terms(&self) -> usize {
        self.num.num_terms() + self.den.num_terms() - 1
    }

    pub fn is_unit_laurent(&self) -> bool {
        self.is_laurent() && self.num.is_unit()
    }

    pub fn involute(&self) -> Self {
        Self::reduced(self.num.involute(), self.den.involute())
    }

    pub fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| Self::reduced(self.den.clone(), self.num.clone()))
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::reduced(&self.num + &o.num, self.den.clone());
        }
        Self::reduced(&self.num * &o.den + &o.num * &self.den, &self.den * &o.den)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        Self { num: -&self.num, den: self.den.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        Self::reduced(&self.num * &o.num, &self.den * &o.den)
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        Self::reduced(&self.num * p, self.den.clone())
    }

    /// self / o; panics when o = 0.
    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv().expect("division by zero in Q(Λ)"))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn ring_examples() {
        assert_eq!(p("t + 1") * p("t - 1"), p("t^2 - 1"));
        assert_eq!(p("3t^-2 + 1") + LaurentPoly::zero(), p("3t^-2 + 1"));
        assert_eq!(p("t - t^-1") * p("t"), p("t^2 - 1"));
        assert!((p("t") - p("t")).is_zero());
    }

    #[test]
    fn involution_examples() {
        assert_eq!(p("t - t^-1").involute(), p("t^-1 - t"));
        assert_eq!(p("5").involute(), p("5"));
        assert_eq!(p("2t^2 - 3t").involute(), p("2t^-2 - 3t^-1"));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(LaurentPoly::gcd(&p("t^2 - 1"), &p("t^3 - 1")), p("t - 1"));
        assert_eq!(LaurentPoly::gcd(&p("-2t^3 + 4t^2"), &LaurentPoly::zero()), p("2t - 4"));
        assert_eq!(LaurentPoly::gcd(&p("2t - 2"), &p("4")), p("2"));
        assert_eq!(LaurentPoly::gcd(&LaurentPoly::zero(), &LaurentPoly::zero()), LaurentPoly::zero());
        assert_eq!(LaurentPoly::gcd(&p("6t^2 + 12t + 6"), &p("4t^2 - 4")), p("2t + 2"));
    }

    #[test]
    fn modular_gcd_matches_remainder_sequence() {
        let mut seed = 11u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) % 9) as Coeff - 4
        };
        for _ in 0..200 {
            let mut poly = |len: usize| {
                let mut v: Vec<Coeff> = (0..len).map(|_| next()).collect();
                v[0] = if v[0] == 0 { 1 } else { v[0] };
                v[len - 1] = if v[len - 1] == 0 { -2 } else { v[len - 1] };
                LaurentPoly::from_coeffs(0, v)
            };
            let c = poly(3);
            let a = &poly(4) * &c;
            let b = &poly(3) * &c;
            let (pa, pb) = (a.content_primitive().unwrap().1, b.content_primitive().unwrap().1);
            let fast = zpoly::primitive_gcd(&pa.coeffs, &pb.coeffs);
            let slow = zpoly::prs_gcd_for_tests(&pa.coeffs, &pb.coeffs);
            assert_eq!(fast, slow, "{a} {b}");
        }
        let big_a = p("-3t^10 + t^9 + 4t^7 - 9t^3 + 17t + 5");
        let big_b = p("5t^6 - 16t^5 - 8t^4 - 7t^3 + 14t^2 + 31t + 5");
        let g = LaurentPoly::gcd(&(&big_a * &p("t^2 - 3t + 7")), &(&big_b * &p("t^2 - 3t + 7")));
        assert!(g.divisible_by(&p("t^2 - 3t + 7")));
    }

    #[test]
    fn exact_div_examples() {
        assert_eq!(LaurentPoly::exact_div(&p("t^2 - 1"), &p("t - 1")).unwrap(), p("t + 1"));
        assert_eq!(LaurentPoly::exact_div(&LaurentPoly::zero(), &p("t - 3")).unwrap(), LaurentPoly::zero());
        assert!(matches!(LaurentPoly::exact_div(&p("t - 1"), &p("t + 1")), Err(Error::NotDivisible { .. })));
        assert_eq!(LaurentPoly::exact_div(&p("2t^-1 - 2t^2"), &p("1 - t")).unwrap(), p("2t^-1 + 2 + 2t"));
        assert!(LaurentPoly::exact_div(&p("t + 1"), &p("2")).is_err());
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(p("2t - 3 + 2t^-1").canonical(), p("2t^2 - 3t + 2"));
        assert_eq!(p("-t^5").canonical(), p("1"));
        assert_eq!(p("t - 1").canonical(), p("1 - t^-1").canonical());
        assert_eq!(p("t - 1").canonical(), p("t - 1"));
        assert_eq!(LaurentPoly::zero().canonical(), LaurentPoly::zero());
    }

    #[test]
    fn content_examples() {
        assert_eq!(p("4t - 6").content_primitive().unwrap(), (2, p("2t - 3")));
        assert_eq!(p("t - 1").content_primitive().unwrap(), (1, p("t - 1")));
        assert_eq!(p("-8").content_primitive().unwrap(), (8, p("-1")));
        assert_eq!(LaurentPoly::zero().content_primitive(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn rendering_round_trip() {
        for s in ["2t^2 - 3t + 2", "-t^-1", "t", "0", "-3", "t^3 + t^-3", "-2t + 1"] {
            assert_eq!(p(s).to_string(), s);
        }
        assert_eq!(p("2*t^{-1} − t⁻¹").to_string(), "t^-1");
        assert_eq!(p("t^(2) + 1").to_string(), "t^2 + 1");
        assert!("t^".parse::<LaurentPoly>().is_err());
        assert!("".parse::<LaurentPoly>().is_err());
        assert!("2x".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn ratfunc_reduces() {
        let r = RatFunc::new(p("t^2 - 1"), p("2t - 2")).unwrap();
        assert_eq!(r.num(), &p("t + 1"));
        assert_eq!(r.den(), &p("2"));
        let s = RatFunc::new(p("1"), p("-t^3 + t^2")).unwrap();
        assert!(s.den().is_canonical());
        assert_eq!(s.mul_poly(&p("t^2 - t^3")), RatFunc::one());
        assert!(RatFunc::new(p("1"), LaurentPoly::zero()).is_err());
        let a = RatFunc::new(p("1"), p("t - 1")).unwrap();
        let b = RatFunc::new(p("1"), p("t + 1")).unwrap();
        assert_eq!(a.add(&b), RatFunc::new(p("2t"), p("t^2 - 1")).unwrap());
        assert_eq!(a.involute(), RatFunc::new(p("-t"), p("t - 1")).unwrap());
    }
}

//! Sparse polynomials over exact rationals in the variables `n`, `a`, `b`.
//!
//! `n` is the integer parameter of the weight functional, `a` and `b` stand
//! for the intermediate series parameters alpha and beta. Monomials are
//! ordered graded-lexicographically with `n > a > b`; printing runs from the
//! largest monomial down, with explicit `*` and `^` (for example
//! `4*n^2 + 6*n + 2`).
//!
//! Besides ring arithmetic, this module provides the exact root machinery
//! used by the simplicity analysis: [`integer_roots`] (exhaustive scan inside
//! a Cauchy bound), [`rational_roots`], univariate [`gcd_univariate`], and
//! the Sylvester [`resultant`].

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::rat::Rat;
use crate::{Error, Result};

/// A polynomial variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    /// Integer weight parameter, printed `n`.
    N,
    /// Intermediate series parameter alpha, printed `a`.
    A,
    /// Intermediate series parameter beta, printed `b`.
    B,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::N, Var::A, Var::B];

    fn index(self) -> usize {
        match self {
            Var::N => 0,
            Var::A => 1,
            Var::B => 2,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::N => write!(f, "n"),
            Var::A => write!(f, "a"),
            Var::B => write!(f, "b"),
        }
    }
}

/// Exponent triple `(n, a, b)` with graded-lex ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct Mono([u32; 3]);

impl Mono {
    const ONE: Mono = Mono([0, 0, 0]);

    fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Mono) -> Mono {
        Mono([
            self.0[0] + other.0[0],
            self.0[1] + other.0[1],
            self.0[2] + other.0[2],
        ])
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A sparse multivariate polynomial with [`Rat`] coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct MPoly {
    terms: BTreeMap<Mono, Rat>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn one() -> Self {
        MPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::ONE, c);
        }
        MPoly { terms }
    }

    pub fn var(v: Var) -> Self {
        MPoly::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: u32) -> Self {
        if e == 0 {
            return MPoly::one();
        }
        let mut exps = [0u32; 3];
        exps[v.index()] = e;
        let mut terms = BTreeMap::new();
        terms.insert(Mono(exps), Rat::one());
        MPoly { terms }
    }

    /// `c0 + cn*n + ca*a + cb*b`.
    pub fn affine(c0: Rat, cn: Rat, ca: Rat, cb: Rat) -> Self {
        let mut p = MPoly::constant(c0);
        p.add_term(Mono([1, 0, 0]), cn);
        p.add_term(Mono([0, 1, 0]), ca);
        p.add_term(Mono([0, 0, 1]), cb);
        p
    }

    fn add_term(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rat::zero);
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// When the polynomial is a constant, returns its value.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.terms.is_empty() {
            return Some(Rat::zero());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&Mono::ONE) {
                return Some(c.clone());
            }
        }
        None
    }

    /// Degree in one variable (0 for the zero polynomial).
    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.0[v.index()]).max().unwrap_or(0)
    }

    /// The first variable other than `v` that actually occurs, if any.
    fn extra_var(&self, v: Var) -> Option<Var> {
        Var::ALL
            .into_iter()
            .find(|&other| other != v && self.degree_in(other) > 0)
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        let terms = self.terms.iter().map(|(m, v)| (*m, v * c)).collect();
        MPoly { terms }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates with the given variable assignments.
    ///
    /// Only variables that actually occur need values; a missing one is an
    /// error naming the variable.
    pub fn eval(&self, assignments: &[(Var, Rat)]) -> Result<Rat> {
        let lookup = |v: Var| -> Result<&Rat> {
            assignments
                .iter()
                .find(|(w, _)| *w == v)
                .map(|(_, r)| r)
                .ok_or(Error::MissingVariable(v))
        };
        let mut total = Rat::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for v in Var::ALL {
                let e = m.0[v.index()];
                if e > 0 {
                    term = term * lookup(v)?.pow(e);
                }
            }
            total += term;
        }
        Ok(total)
    }

    /// Replaces `v` by the polynomial `value`.
    pub fn substitute(&self, v: Var, value: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let e = m.0[v.index()];
            let mut rest = *m;
            rest.0[v.index()] = 0;
            let mut piece = value.pow(e);
            piece = piece.mul_mono(&rest);
            out = &out + &piece.scale(c);
        }
        out
    }

    fn mul_mono(&self, m: &Mono) -> MPoly {
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| (k.mul(m), c.clone()))
            .collect();
        MPoly { terms }
    }

    /// Coefficients in `v`, lowest degree first, as polynomials in the
    /// remaining variables. The zero polynomial gives `[0]`.
    pub fn coeffs_in(&self, v: Var) -> Vec<MPoly> {
        let deg = self.degree_in(v) as usize;
        let mut out = vec![MPoly::zero(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.0[v.index()] as usize;
            let mut rest = *m;
            rest.0[v.index()] = 0;
            out[e].add_term(rest, c.clone());
        }
        out
    }
}

impl std::ops::Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl std::ops::Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl std::ops::Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl std::ops::Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&Rat::from_int(-1))
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut pieces: Vec<String> = Vec::new();
            if !mag.is_one() || m.total() == 0 {
                pieces.push(mag.to_string());
            }
            for v in Var::ALL {
                let e = m.0[v.index()];
                if e == 1 {
                    pieces.push(v.to_string());
                } else if e > 1 {
                    pieces.push(format!("{v}^{e}"));
                }
            }
            write!(f, "{}", pieces.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({})", self)
    }
}

/// The set of integer roots of a polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IntegerRootSet {
    /// The zero polynomial: every integer is a root.
    AllIntegers,
    /// Finitely many roots, sorted ascending.
    Finite(Vec<i64>),
}

const SCAN_LIMIT: i64 = 1_000_000;
const FACTOR_LIMIT: u64 = 1_000_000_000_000;

/// All integer roots of a polynomial univariate in `n`.
///
/// The zero polynomial reports [`IntegerRootSet::AllIntegers`]. Otherwise the
/// coefficients are cleared to integers and every candidate inside the Cauchy
/// bound `1 + max |c_i| / |c_d|` is tested exactly.
pub fn integer_roots(p: &MPoly) -> Result<IntegerRootSet> {
    if p.is_zero() {
        return Ok(IntegerRootSet::AllIntegers);
    }
    if let Some(found) = p.extra_var(Var::N) {
        return Err(Error::NotUnivariate {
            expected: Var::N,
            found,
        });
    }
    let coeffs = clear_denominators(&p.coeffs_in(Var::N));
    let (low_zeros, coeffs) = strip_low_zeros(coeffs);
    let coeffs = strip_content(coeffs);
    let mut roots: Vec<i64> = Vec::new();
    if low_zeros > 0 {
        roots.push(0);
    }
    if coeffs.len() > 1 {
        let lead = coeffs.last().unwrap().magnitude().clone();
        let max_ratio = coeffs[..coeffs.len() - 1]
            .iter()
            .map(|c| {
                Rat::from_big(
                    BigInt::from(c.magnitude().clone()),
                    BigInt::from(lead.clone()),
                )
            })
            .max()
            .unwrap();
        let bound = (Rat::one() + max_ratio).floor_int() + 1;
        if bound > BigInt::from(SCAN_LIMIT) {
            return Err(Error::RootBoundTooLarge(bound));
        }
        let bound = bound.to_i64().unwrap();
        for k in -bound..=bound {
            // The constant term is nonzero after stripping, so 0 was
            // already handled and can be skipped.
            if k != 0 && horner_int(&coeffs, k).is_zero() {
                roots.push(k);
            }
        }
    }
    roots.sort_unstable();
    roots.dedup();
    Ok(IntegerRootSet::Finite(roots))
}

/// All rational roots of a nonzero polynomial univariate in `v`.
///
/// Uses the rational root theorem: candidates `p/q` with `p` dividing the
/// constant term and `q` dividing the leading coefficient, each tested
/// exactly. Panics on the zero polynomial.
pub fn rational_roots(p: &MPoly, v: Var) -> Result<Vec<Rat>> {
    assert!(!p.is_zero(), "rational_roots of the zero polynomial");
    if let Some(found) = p.extra_var(v) {
        return Err(Error::NotUnivariate { expected: v, found });
    }
    let coeffs = clear_denominators(&p.coeffs_in(v));
    let (low_zeros, coeffs) = strip_low_zeros(coeffs);
    let coeffs = strip_content(coeffs);
    let mut roots: Vec<Rat> = Vec::new();
    if low_zeros > 0 {
        roots.push(Rat::zero());
    }
    if coeffs.len() > 1 {
        let nums = divisors(&coeffs[0])?;
        let dens = divisors(coeffs.last().unwrap())?;
        for num in &nums {
            for den in &dens {
                for sign in [1i64, -1] {
                    let cand = Rat::from_big(num * BigInt::from(sign), den.clone());
                    if horner_rat(&coeffs, &cand).is_zero() {
                        roots.push(cand);
                    }
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

/// Monic greatest common divisor of two polynomials univariate in `v`.
///
/// `gcd(p, 0)` is the monic multiple of `p`; `gcd(0, 0)` is zero.
pub fn gcd_univariate(p: &MPoly, q: &MPoly, v: Var) -> Result<MPoly> {
    for poly in [p, q] {
        if let Some(found) = poly.extra_var(v) {
            return Err(Error::NotUnivariate { expected: v, found });
        }
    }
    let to_coeffs = |poly: &MPoly| -> Vec<Rat> {
        if poly.is_zero() {
            Vec::new()
        } else {
            poly.coeffs_in(v)
                .into_iter()
                .map(|c| c.as_constant().unwrap())
                .collect()
        }
    };
    let mut a = to_coeffs(p);
    let mut b = to_coeffs(q);
    while !b.is_empty() {
        let r = poly_rem(&a, &b);
        a = b;
        b = r;
    }
    if a.is_empty() {
        return Ok(MPoly::zero());
    }
    let lead = a.last().unwrap().clone();
    let mut out = MPoly::zero();
    for (e, c) in a.iter().enumerate() {
        out = &out + &MPoly::var_pow(v, e as u32).scale(&(c / &lead));
    }
    Ok(out)
}

/// Sylvester resultant of `p` and `q` with respect to `v`.
///
/// The result is a polynomial in the remaining variables; it vanishes
/// identically exactly when `p` and `q` share a factor of positive degree
/// in `v`. When either polynomial has degree 0 in `v` the usual convention
/// `res(p, q) = p^deg(q)` (or `q^deg(p)`) applies.
pub fn resultant(p: &MPoly, q: &MPoly, v: Var) -> MPoly {
    let m = p.degree_in(v) as usize;
    let n = q.degree_in(v) as usize;
    if m == 0 && n == 0 {
        return MPoly::one();
    }
    if m == 0 {
        return p.pow(n as u32);
    }
    if n == 0 {
        return q.pow(m as u32);
    }
    let pc = p.coeffs_in(v);
    let qc = q.coeffs_in(v);
    let size = m + n;
    let mut mat = vec![vec![MPoly::zero(); size]; size];
    for (row, item) in mat.iter_mut().enumerate().take(n) {
        for (k, c) in pc.iter().enumerate() {
            item[row + m - k] = c.clone();
        }
    }
    for row in 0..m {
        for (k, c) in qc.iter().enumerate() {
            mat[n + row][row + n - k] = c.clone();
        }
    }
    determinant(&mat)
}

/// Determinant by first-row expansion with memoization on column subsets.
fn determinant(mat: &[Vec<MPoly>]) -> MPoly {
    let n = mat.len();
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    let mut memo: std::collections::HashMap<u32, MPoly> = std::collections::HashMap::new();
    fn go(
        mat: &[Vec<MPoly>],
        cols: u32,
        row: usize,
        memo: &mut std::collections::HashMap<u32, MPoly>,
    ) -> MPoly {
        if cols == 0 {
            return MPoly::one();
        }
        if let Some(v) = memo.get(&cols) {
            return v.clone();
        }
        let mut acc = MPoly::zero();
        let mut sign = Rat::one();
        for j in 0..mat.len() {
            if cols & (1 << j) == 0 {
                continue;
            }
            let entry = &mat[row][j];
            if !entry.is_zero() {
                let minor = go(mat, cols & !(1 << j), row + 1, memo);
                acc = &acc + &(entry * &minor).scale(&sign);
            }
            sign = -sign;
        }
        memo.insert(cols, acc.clone());
        acc
    }
    go(mat, full, 0, &mut memo)
}

fn clear_denominators(coeffs: &[MPoly]) -> Vec<BigInt> {
    let rats: Vec<Rat> = coeffs
        .iter()
        .map(|c| c.as_constant().expect("constant coefficients"))
        .collect();
    let mut lcm = BigInt::one();
    for r in &rats {
        lcm = lcm.lcm(r.denom());
    }
    rats.iter()
        .map(|r| r.numer() * (&lcm / r.denom()))
        .collect()
}

/// Removes zero low-order coefficients; returns how many were stripped.
fn strip_low_zeros(coeffs: Vec<BigInt>) -> (usize, Vec<BigInt>) {
    let first = coeffs.iter().position(|c| !c.is_zero());
    match first {
        Some(k) => (k, coeffs[k..].to_vec()),
        None => (0, coeffs),
    }
}

/// Divides out the integer content; roots are unchanged and the divisor
/// enumeration stays within the factoring limit for scaled-up inputs.
fn strip_content(mut coeffs: Vec<BigInt>) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for c in &coeffs {
        g = g.gcd(c);
    }
    if g > BigInt::one() {
        for c in coeffs.iter_mut() {
            *c /= &g;
        }
    }
    coeffs
}

fn horner_int(coeffs: &[BigInt], x: i64) -> BigInt {
    let x = BigInt::from(x);
    let mut acc = BigInt::zero();
    for c in coeffs.iter().rev() {
        acc = acc * &x + c;
    }
    acc
}

fn horner_rat(coeffs: &[BigInt], x: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + Rat::from(c.clone());
    }
    acc
}

/// Positive divisors of `n`, requiring `|n|` below the factoring limit.
fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let mag = n.magnitude();
    if mag > &BigUint::from(FACTOR_LIMIT) {
        return Err(Error::FactorTooLarge(n.clone()));
    }
    let m = mag.to_u64().unwrap();
    assert!(m != 0, "divisors of zero");
    let mut out = Vec::new();
    let mut d = 1u64;
    while d.saturating_mul(d) <= m {
        if m.is_multiple_of(d) {
            out.push(BigInt::from(d));
            if d != m / d {
                out.push(BigInt::from(m / d));
            }
        }
        d += 1;
    }
    out.sort();
    Ok(out)
}

/// Remainder of rational coefficient vectors, low degree first.
fn poly_rem(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    assert!(!b.is_empty());
    let mut r: Vec<Rat> = a.to_vec();
    let db = b.len() - 1;
    let lead = b.last().unwrap();
    while r.len() > db && !r.is_empty() {
        let lr = r.last().unwrap().clone();
        if lr.is_zero() {
            r.pop();
            continue;
        }
        let shift = r.len() - 1 - db;
        let factor = &lr / lead;
        for (k, c) in b.iter().enumerate() {
            let idx = shift + k;
            let delta = &factor * c;
            r[idx] = &r[idx] - &delta;
        }
        while let Some(last) = r.last() {
            if last.is_zero() {
                r.pop();
            } else {
                break;
            }
        }
    }
    r
}

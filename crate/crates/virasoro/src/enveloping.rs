//! The universal enveloping algebra of the lowering half of the Virasoro
//! algebra.
//!
//! Elements are rational combinations of ordered monomials
//! `d(-k_1) d(-k_2) ... d(-k_r)` with `k_1 >= k_2 >= ... >= k_r >= 1`,
//! indexed by partitions. Products are rewritten into this basis with the
//! commutation rule `d(-a) d(-b) = d(-b) d(-a) + (a - b) d(-(a+b))` for
//! `a < b`, which follows from `[d(m), d(n)] = (n - m) d(m+n)` (the central
//! term never appears between two lowering operators).

use std::collections::BTreeMap;
use std::fmt;

use crate::partition::{partitions_of, Partition};
use crate::rat::Rat;
use crate::{Error, Result};

/// One structure constant of the Virasoro bracket.
///
/// `[d(m), d(n)] = coefficient * d(index) + central * C`, where `central` is
/// nonzero only for `m + n = 0`. Brackets with `C` itself are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketTerm {
    pub coefficient: Rat,
    pub index: i64,
    pub central: Rat,
}

/// The bracket `[d(m), d(n)]`.
pub fn bracket(m: i64, n: i64) -> BracketTerm {
    let central = if m + n == 0 {
        Rat::new(m.pow(3) - m, 12)
    } else {
        Rat::zero()
    };
    BracketTerm {
        coefficient: Rat::from_int(n - m),
        index: m + n,
        central,
    }
}

/// The ordered monomial basis of the level-`n` graded piece.
///
/// Partitions of `n` with the largest first part first; for `n = 4`:
/// `(4), (3,1), (2,2), (2,1,1), (1,1,1,1)`.
pub fn pbw_basis(level: u32) -> Vec<Partition> {
    partitions_of(level)
}

/// An element of the enveloping algebra of the lowering operators.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct EnvElem {
    terms: BTreeMap<Partition, Rat>,
}

impl EnvElem {
    pub fn zero() -> Self {
        EnvElem::default()
    }

    /// The identity element.
    pub fn one() -> Self {
        EnvElem::monomial(Partition::empty())
    }

    /// The single generator `d(-k)`.
    pub fn generator(k: u32) -> Self {
        EnvElem::monomial(Partition::single(k))
    }

    /// The basis monomial labeled by a partition, with coefficient one.
    pub fn monomial(p: Partition) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(p, Rat::one());
        EnvElem { terms }
    }

    pub fn from_terms(pairs: impl IntoIterator<Item = (Partition, Rat)>) -> Self {
        let mut out = EnvElem::zero();
        for (p, c) in pairs {
            out.add_term(p, c);
        }
        out
    }

    fn add_term(&mut self, p: Partition, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(p.clone()).or_insert_with(Rat::zero);
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&p);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterates terms in ascending partition order.
    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, p: &Partition) -> Rat {
        self.terms.get(p).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn scale(&self, c: &Rat) -> EnvElem {
        if c.is_zero() {
            return EnvElem::zero();
        }
        EnvElem {
            terms: self.terms.iter().map(|(p, v)| (p.clone(), v * c)).collect(),
        }
    }

    /// The common level when the element is homogeneous (zero counts as
    /// level 0); errors on mixed levels.
    pub fn level(&self) -> Result<u32> {
        let mut level = None;
        for p in self.terms.keys() {
            match level {
                None => level = Some(p.size()),
                Some(l) if l != p.size() => return Err(Error::Inhomogeneous(self.to_string())),
                _ => {}
            }
        }
        Ok(level.unwrap_or(0))
    }

    /// Scales so coefficients are coprime integers with positive leading
    /// coefficient (leading = largest partition). Zero stays zero.
    pub fn primitive(&self) -> EnvElem {
        if self.is_zero() {
            return EnvElem::zero();
        }
        let mut lcm = num_bigint::BigInt::from(1);
        for c in self.terms.values() {
            lcm = num_integer::Integer::lcm(&lcm, c.denom());
        }
        let mut gcd = num_bigint::BigInt::from(0);
        for c in self.terms.values() {
            let scaled = c.numer() * (&lcm / c.denom());
            gcd = num_integer::Integer::gcd(&gcd, &scaled);
        }
        let lead = self.terms.iter().next_back().unwrap().1;
        let factor = Rat::from_big(lcm, gcd);
        let factor = if lead.is_negative() { -factor } else { factor };
        self.scale(&factor)
    }
}

impl std::ops::Add for &EnvElem {
    type Output = EnvElem;
    fn add(self, rhs: &EnvElem) -> EnvElem {
        let mut out = self.clone();
        for (p, c) in &rhs.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &EnvElem {
    type Output = EnvElem;
    fn sub(self, rhs: &EnvElem) -> EnvElem {
        let mut out = self.clone();
        for (p, c) in &rhs.terms {
            out.add_term(p.clone(), -c);
        }
        out
    }
}

impl std::ops::Neg for &EnvElem {
    type Output = EnvElem;
    fn neg(self) -> EnvElem {
        self.scale(&Rat::from_int(-1))
    }
}

/// Rewrites the word `d(-w[0]) d(-w[1]) ...` into the ordered basis.
pub fn normal_order_word(word: &[u32]) -> EnvElem {
    let mut out = EnvElem::zero();
    let mut stack: Vec<(Vec<u32>, Rat)> = vec![(word.to_vec(), Rat::one())];
    while let Some((w, c)) = stack.pop() {
        match w.windows(2).position(|pair| pair[0] < pair[1]) {
            None => out.add_term(Partition::new(w), c),
            Some(i) => {
                let (x, y) = (w[i], w[i + 1]);
                let mut swapped = w.clone();
                swapped.swap(i, i + 1);
                let mut merged = w.clone();
                merged[i] = x + y;
                merged.remove(i + 1);
                stack.push((swapped, c.clone()));
                stack.push((merged, c * Rat::from_int(x as i64 - y as i64)));
            }
        }
    }
    out
}

/// Product in the enveloping algebra, result in the ordered basis.
pub fn multiply(x: &EnvElem, y: &EnvElem) -> EnvElem {
    let mut out = EnvElem::zero();
    for (p1, c1) in &x.terms {
        for (p2, c2) in &y.terms {
            let coeff = c1 * c2;
            let word: Vec<u32> = p1.parts().iter().chain(p2.parts()).copied().collect();
            let ordered = p1.parts().last().copied().unwrap_or(u32::MAX)
                >= p2.parts().first().copied().unwrap_or(0);
            if ordered {
                out.add_term(Partition::new(word), coeff);
            } else {
                for (p, c) in &normal_order_word(&word).terms {
                    out.add_term(p.clone(), c * &coeff);
                }
            }
        }
    }
    out
}

impl fmt::Display for EnvElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.terms.iter().enumerate() {
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
            if !mag.is_one() || p.is_empty() {
                pieces.push(mag.to_string());
            }
            let mut parts = p.parts().iter().peekable();
            while let Some(&k) = parts.next() {
                let mut power = 1u32;
                while parts.peek() == Some(&&k) {
                    parts.next();
                    power += 1;
                }
                if power == 1 {
                    pieces.push(format!("d(-{k})"));
                } else {
                    pieces.push(format!("d(-{k})^{power}"));
                }
            }
            write!(f, "{}", pieces.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for EnvElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EnvElem({})", self)
    }
}

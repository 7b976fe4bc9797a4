//! The linear functional `phi_n` on products of lowering operators.
//!
//! For a word `d(-k_r) ... d(-k_1)` the value is the product of one affine
//! factor `k_j b - a - n - (k_1 + ... + k_j)` per letter, where `(a, b)` are
//! the parameters of the intermediate series module. Equivalently, peeling
//! the leftmost letter `d(-k)` of a word `w` contributes the factor
//! `k b - a - n - size(w)`. The functional respects the reordering relations
//! and so is well defined on ordered monomials; it extends linearly, with
//! `phi_n(1) = 1`.
//!
//! `phi_n` drives the submodule analysis of the tensor modules: a tensor
//! module is non-simple exactly when some integer `n` kills both submodule
//! generators of the Verma factor under `phi_n`.

use std::fmt;

use crate::enveloping::EnvElem;
use crate::poly::{MPoly, Var};
use crate::rat::Rat;
use crate::tensor::ModuleParams;
use crate::verma::VermaVector;

/// `phi_n` of a single word, not necessarily ordered.
pub fn phi_word(alpha: &Rat, beta: &Rat, n: &Rat, parts: &[u32]) -> Rat {
    let mut size: i64 = parts.iter().map(|&k| k as i64).sum();
    let mut acc = Rat::one();
    for &k in parts {
        let factor = Rat::from_int(k as i64) * beta - alpha - n - Rat::from_int(size);
        acc *= &factor;
        size -= k as i64;
    }
    acc
}

/// `phi_n` of a word with symbolic `n`, `a`, `b`.
pub fn phi_word_symbolic(parts: &[u32]) -> MPoly {
    let mut size: i64 = parts.iter().map(|&k| k as i64).sum();
    let mut acc = MPoly::one();
    for &k in parts {
        let factor = MPoly::affine(
            Rat::from_int(-size),
            Rat::from_int(-1),
            Rat::from_int(-1),
            Rat::from_int(k as i64),
        );
        acc = &acc * &factor;
        size -= k as i64;
    }
    acc
}

/// `phi_n(x)` at an integer `n`, extended linearly over terms.
pub fn phi_eval(params: &ModuleParams, n: i64, x: &EnvElem) -> Rat {
    let n = Rat::from_int(n);
    let mut acc = Rat::zero();
    for (p, c) in x.terms() {
        acc += &(c * &phi_word(&params.alpha, &params.beta, &n, p.parts()));
    }
    acc
}

/// `phi_n(x)` as a polynomial in the symbol `n`, with `a`, `b` symbolic.
pub fn phi_symbolic(x: &EnvElem) -> MPoly {
    let mut acc = MPoly::zero();
    for (p, c) in x.terms() {
        acc = &acc + &phi_word_symbolic(p.parts()).scale(c);
    }
    acc
}

/// The polynomial `n -> phi_n(x)` for fixed parameters, with the symbolic
/// trivariate form kept alongside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiPolynomial {
    /// Univariate in `n`, with `a` and `b` substituted.
    pub in_n: MPoly,
    /// The same polynomial with `a` and `b` left symbolic.
    pub symbolic: MPoly,
    /// The element the polynomial came from.
    pub source: EnvElem,
}

impl fmt::Display for PhiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.in_n)
    }
}

pub fn phi_poly(params: &ModuleParams, x: &EnvElem) -> PhiPolynomial {
    let symbolic = phi_symbolic(x);
    let in_n = symbolic
        .substitute(Var::A, &MPoly::constant(params.alpha.clone()))
        .substitute(Var::B, &MPoly::constant(params.beta.clone()));
    PhiPolynomial {
        in_n,
        symbolic,
        source: x.clone(),
    }
}

/// The functional `Pu -> phi_n(P)` on the Verma module, extended linearly.
pub fn tau_eval(n: i64, params: &ModuleParams, v: &VermaVector) -> Rat {
    let n = Rat::from_int(n);
    let mut acc = Rat::zero();
    for (p, c) in v.coeffs() {
        acc += &(c * &phi_word(&params.alpha, &params.beta, &n, p.parts()));
    }
    acc
}

//! Tensor products of a simple highest weight module with an intermediate
//! series module, and their submodule analysis.
//!
//! `V(c, h) (x) V'(a, b)` carries the action
//! `d_m (Pu (x) v_j) = (d_m Pu) (x) v_j + (a + j + m b) Pu (x) v_{j+m}`,
//! with the Verma component kept reduced modulo the maximal submodule.
//! Each term sits at the shifted exponent `n = j - level(P)`, where the
//! `d_0`-eigenvalue is `a + h + n`. In the canonical `(0, 0)` case the
//! module is the quotient by the line spanned by `v_0`, realized by
//! dropping every `j = 0` term.
//!
//! Simplicity is decided by the integer root set of the `phi` polynomials
//! of the submodule generators: the tensor module is simple exactly when
//! no admissible integer `n` kills both generators. When roots exist they
//! order a finite filtration whose layers are highest weight modules of
//! weight `a + h + n`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::enveloping::pbw_basis;
use crate::linalg::RowReducer;
use crate::partition::Partition;
use crate::phi::{phi_eval, phi_poly, phi_symbolic};
use crate::poly::{
    gcd_univariate, integer_roots, rational_roots, resultant, IntegerRootSet, MPoly, Var,
};
use crate::rat::Rat;
use crate::verma::{
    maximal_submodule_generators, GenStatus, HighestWeight, MaximalSubmoduleGens, VermaVector,
};
use crate::{Error, Result};

/// Parameters of an intermediate series module, with a flag recording
/// whether they are already in the canonical range `0 <= a < 1`, `b != 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModuleParams {
    pub alpha: Rat,
    pub beta: Rat,
    pub canonical: bool,
}

impl ModuleParams {
    /// Wraps raw parameters, detecting whether they happen to be canonical.
    pub fn raw(alpha: Rat, beta: Rat) -> Self {
        let canonical = !alpha.is_negative() && alpha < Rat::one() && !beta.is_one();
        ModuleParams {
            alpha,
            beta,
            canonical,
        }
    }

    /// The canonical form, applying the parameter identifications.
    pub fn canonicalized(&self) -> ModuleParams {
        if self.canonical {
            self.clone()
        } else {
            canonicalize(&self.alpha, &self.beta)
        }
    }

    /// True for the canonical `(0, 0)` case, where the module is the
    /// quotient with the `v_0` line removed.
    pub fn is_primed_zero(&self) -> bool {
        self.canonical && self.alpha.is_zero() && self.beta.is_zero()
    }
}

impl fmt::Display for ModuleParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.alpha, self.beta)
    }
}

/// Canonical parameters: `a` replaced by its fractional part and `b = 1`
/// identified with `b = 0`.
pub fn canonicalize(alpha: &Rat, beta: &Rat) -> ModuleParams {
    let alpha = alpha.fract();
    let beta = if beta.is_one() {
        Rat::zero()
    } else {
        beta.clone()
    };
    ModuleParams {
        alpha,
        beta,
        canonical: true,
    }
}

/// Whether the intermediate series module itself is simple; false exactly
/// for the canonical `(0, 0)` parameters.
pub fn intermediate_simple(params: &ModuleParams) -> bool {
    !params.canonicalized().is_primed_zero()
}

/// Equality of tensor modules after canonicalizing both parameter tuples.
pub fn classify_isomorphism(
    a: &(HighestWeight, ModuleParams),
    b: &(HighestWeight, ModuleParams),
) -> bool {
    let pa = a.1.canonicalized();
    let pb = b.1.canonicalized();
    a.0 == b.0 && pa.alpha == pb.alpha && pa.beta == pb.beta
}

/// Truncation window for tensor computations: Verma levels up to
/// `max_level` and shifted exponents inside `[exp_min, exp_max]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub max_level: u32,
    pub exp_min: i64,
    pub exp_max: i64,
}

impl Window {
    pub fn new(max_level: u32, exp_min: i64, exp_max: i64) -> Self {
        Window {
            max_level,
            exp_min,
            exp_max,
        }
    }
}

/// A finitely supported vector `sum c_{P,j} (Pu) (x) v_j` with every Verma
/// component reduced and, in the canonical `(0, 0)` case, no `j = 0` term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorVector {
    hw: HighestWeight,
    params: ModuleParams,
    terms: BTreeMap<(Partition, i64), Rat>,
}

impl TensorVector {
    pub fn hw(&self) -> &HighestWeight {
        &self.hw
    }

    pub fn params(&self) -> &ModuleParams {
        &self.params
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Partition, i64), &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, p: &Partition, j: i64) -> Rat {
        self.terms
            .get(&(p.clone(), j))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn scale(&self, c: &Rat) -> TensorVector {
        let mut out = self.clone();
        if c.is_zero() {
            out.terms.clear();
            return out;
        }
        for v in out.terms.values_mut() {
            *v *= c;
        }
        out
    }

    /// Sum within one ambient module.
    pub fn plus(&self, other: &TensorVector) -> TensorVector {
        assert_eq!(self.hw, other.hw, "ambient mismatch in tensor sum");
        assert_eq!(self.params, other.params, "ambient mismatch in tensor sum");
        let mut out = self.clone();
        for (key, c) in &other.terms {
            let entry = out.terms.entry(key.clone()).or_insert_with(Rat::zero);
            *entry += c;
            if entry.is_zero() {
                out.terms.remove(key);
            }
        }
        out
    }

    /// The set of shifted exponents `j - level` carrying support.
    pub fn shifted_exponents(&self) -> Vec<i64> {
        let mut out: Vec<i64> = self
            .terms
            .keys()
            .map(|(p, j)| j - p.size() as i64)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// The terms sitting at one shifted exponent, as a Verma-side element.
    pub fn component_at(&self, n: i64) -> Vec<(Partition, Rat)> {
        self.terms
            .iter()
            .filter(|((p, j), _)| j - p.size() as i64 == n)
            .map(|((p, _), c)| (p.clone(), c.clone()))
            .collect()
    }
}

impl fmt::Display for TensorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((p, j), c) in &self.terms {
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if p.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", crate::enveloping::EnvElem::monomial(p.clone()))?;
            } else {
                write!(
                    f,
                    "{mag}*{}",
                    crate::enveloping::EnvElem::monomial(p.clone())
                )?;
            }
            write!(f, "@v({j})")?;
        }
        Ok(())
    }
}

/// The tensor module with its generator data and truncation window.
pub struct TensorModule {
    hw: HighestWeight,
    params: ModuleParams,
    gens: Arc<MaximalSubmoduleGens>,
    window: Window,
    reducers: Mutex<HashMap<u32, Arc<RowReducer>>>,
}

impl TensorModule {
    /// Builds the module, canonicalizing the parameters and resolving the
    /// Verma factor's submodule generators up to `cap`.
    pub fn new(hw: HighestWeight, params: ModuleParams, cap: u32, window: Window) -> Result<Self> {
        let params = params.canonicalized();
        let gens = maximal_submodule_generators(&hw, cap);
        if gens.status == GenStatus::UndeterminedBeyondCap {
            return Err(Error::UndeterminedGenerators(cap));
        }
        Ok(TensorModule {
            hw,
            params,
            gens,
            window,
            reducers: Mutex::new(HashMap::new()),
        })
    }

    pub fn hw(&self) -> &HighestWeight {
        &self.hw
    }

    pub fn params(&self) -> &ModuleParams {
        &self.params
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn gens(&self) -> &Arc<MaximalSubmoduleGens> {
        &self.gens
    }

    fn reducer(&self, level: u32) -> Arc<RowReducer> {
        let mut cache = self.reducers.lock().unwrap();
        Arc::clone(
            cache
                .entry(level)
                .or_insert_with(|| Arc::new(crate::verma::submodule_span(&self.gens, level))),
        )
    }

    /// Reduces one homogeneous Verma component to its canonical residue.
    fn reduce_component(&self, level: u32, coords: Vec<Rat>) -> Vec<Rat> {
        if self.gens.generators().is_empty() {
            return coords;
        }
        self.reducer(level).reduce(&coords)
    }

    fn check_window(&self, terms: &BTreeMap<(Partition, i64), Rat>) -> Result<()> {
        for (p, j) in terms.keys() {
            let level = p.size();
            let n = j - level as i64;
            if level > self.window.max_level {
                return Err(Error::WindowExceeded(format!(
                    "Verma level {level} exceeds window maximum {}",
                    self.window.max_level
                )));
            }
            if n < self.window.exp_min || n > self.window.exp_max {
                return Err(Error::WindowExceeded(format!(
                    "shifted exponent {n} outside window [{}, {}]",
                    self.window.exp_min, self.window.exp_max
                )));
            }
        }
        Ok(())
    }

    /// Canonicalizes raw terms: reduce per `(level, j)` group, drop `j = 0`
    /// in the primed case, enforce the window.
    pub fn vector(
        &self,
        raw: impl IntoIterator<Item = (Partition, i64, Rat)>,
    ) -> Result<TensorVector> {
        let mut groups: BTreeMap<(u32, i64), BTreeMap<Partition, Rat>> = BTreeMap::new();
        for (p, j, c) in raw {
            if c.is_zero() {
                continue;
            }
            if self.params.is_primed_zero() && j == 0 {
                continue;
            }
            let level = p.size();
            let entry = groups
                .entry((level, j))
                .or_default()
                .entry(p)
                .or_insert_with(Rat::zero);
            *entry += &c;
        }
        let mut terms: BTreeMap<(Partition, i64), Rat> = BTreeMap::new();
        for ((level, j), group) in groups {
            let basis = pbw_basis(level);
            let coords: Vec<Rat> = basis
                .iter()
                .map(|p| group.get(p).cloned().unwrap_or_else(Rat::zero))
                .collect();
            let residue = self.reduce_component(level, coords);
            for (p, c) in basis.into_iter().zip(residue) {
                if !c.is_zero() {
                    terms.insert((p, j), c);
                }
            }
        }
        self.check_window(&terms)?;
        Ok(TensorVector {
            hw: self.hw.clone(),
            params: self.params.clone(),
            terms,
        })
    }

    /// `u (x) v_j`; zero in the primed case with `j = 0`.
    pub fn vacuum(&self, j: i64) -> Result<TensorVector> {
        self.vector([(Partition::empty(), j, Rat::one())])
    }

    /// The action of `d_m`.
    pub fn apply(&self, m: i64, v: &TensorVector) -> Result<TensorVector> {
        self.check_ambient(v)?;
        let mut raw: Vec<(Partition, i64, Rat)> = Vec::new();
        for ((p, j), c) in &v.terms {
            // Intermediate series side: (a + j + m b) Pu (x) v_{j+m}.
            let scalar =
                &self.params.alpha + &Rat::from_int(*j) + &(&Rat::from_int(m) * &self.params.beta);
            if !scalar.is_zero() {
                raw.push((p.clone(), j + m, c * &scalar));
            }
            // Verma side: (d_m Pu) (x) v_j.
            if m == 0 {
                let w = &self.hw.h - &Rat::from_int(p.size() as i64);
                if !w.is_zero() {
                    raw.push((p.clone(), *j, c * &w));
                }
            } else {
                let x = VermaVector::monomial(self.hw.clone(), p.clone());
                let y = x.apply_generator(m);
                for (q, d) in y.coeffs() {
                    raw.push((q.clone(), *j, c * d));
                }
            }
        }
        self.vector(raw)
    }

    /// `(d_0^2 + k d_0 - d_{-k} d_k) v`.
    pub fn casimir_apply(&self, k: u32, v: &TensorVector) -> Result<TensorVector> {
        self.check_ambient(v)?;
        let d0 = self.apply(0, v)?;
        let d00 = self.apply(0, &d0)?;
        let up = self.apply(k as i64, v)?;
        let down = self.apply(-(k as i64), &up)?;
        Ok(d00
            .plus(&d0.scale(&Rat::from_int(k as i64)))
            .plus(&down.scale(&Rat::from_int(-1))))
    }

    fn check_ambient(&self, v: &TensorVector) -> Result<()> {
        if v.hw != self.hw || v.params != self.params {
            return Err(Error::AmbientMismatch(format!(
                "vector from {} {} used in {} {}",
                v.hw, v.params, self.hw, self.params
            )));
        }
        Ok(())
    }
}

/// Free-function form of [`TensorModule::apply`].
pub fn tensor_apply(module: &TensorModule, m: i64, v: &TensorVector) -> Result<TensorVector> {
    module.apply(m, v)
}

/// Free-function form of [`TensorModule::casimir_apply`].
pub fn casimir_apply(module: &TensorModule, k: u32, v: &TensorVector) -> Result<TensorVector> {
    module.casimir_apply(k, v)
}

/// Dimension of the span of finitely supported tensor vectors.
pub fn span_dimension(vectors: &[TensorVector]) -> usize {
    let mut keys: Vec<(Partition, i64)> = Vec::new();
    for v in vectors {
        for key in v.terms.keys() {
            if !keys.contains(key) {
                keys.push(key.clone());
            }
        }
    }
    keys.sort();
    let mut red = RowReducer::new(keys.len());
    for v in vectors {
        let row: Vec<Rat> = keys.iter().map(|(p, j)| v.coefficient(p, *j)).collect();
        red.insert(&row);
    }
    red.rank()
}

/// The admissible integer root set of the pair of `phi` polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PhiSet {
    /// Finite sorted set, possibly empty.
    Finite(Vec<i64>),
    /// Every integer (with 0 removed in the canonical `(0, 0)` case).
    AllIntegers { excludes_zero: bool },
}

impl PhiSet {
    pub fn is_empty(&self) -> bool {
        matches!(self, PhiSet::Finite(v) if v.is_empty())
    }
}

impl fmt::Display for PhiSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PhiSet::Finite(v) => {
                write!(f, "{{")?;
                for (i, n) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{n}")?;
                }
                write!(f, "}}")
            }
            PhiSet::AllIntegers {
                excludes_zero: true,
            } => write!(f, "all_integers_except_zero"),
            PhiSet::AllIntegers {
                excludes_zero: false,
            } => write!(f, "all_integers"),
        }
    }
}

/// Intersection of two integer root sets with the optional removal of 0.
pub fn combine_integer_roots(
    r1: &IntegerRootSet,
    r2: &IntegerRootSet,
    exclude_zero: bool,
) -> PhiSet {
    let keep = |n: &i64| !(exclude_zero && *n == 0);
    match (r1, r2) {
        (IntegerRootSet::AllIntegers, IntegerRootSet::AllIntegers) => PhiSet::AllIntegers {
            excludes_zero: exclude_zero,
        },
        (IntegerRootSet::AllIntegers, IntegerRootSet::Finite(v))
        | (IntegerRootSet::Finite(v), IntegerRootSet::AllIntegers) => {
            PhiSet::Finite(v.iter().copied().filter(|n| keep(n)).collect())
        }
        (IntegerRootSet::Finite(v1), IntegerRootSet::Finite(v2)) => PhiSet::Finite(
            v1.iter()
                .copied()
                .filter(|n| v2.contains(n) && keep(n))
                .collect(),
        ),
    }
}

/// Integer `n` with `phi_n(Q1) = phi_n(Q2) = 0`, excluding 0 exactly in the
/// canonical `(0, 0)` case.
pub fn phi_set(hw: &HighestWeight, params: &ModuleParams, cap: u32) -> Result<PhiSet> {
    if !params.canonical {
        return Err(Error::NonCanonicalParams);
    }
    let gens = maximal_submodule_generators(hw, cap);
    phi_set_with_generators(params, &gens)
}

/// As [`phi_set`], for an already-resolved generator scan.
pub fn phi_set_with_generators(
    params: &ModuleParams,
    gens: &MaximalSubmoduleGens,
) -> Result<PhiSet> {
    if !params.canonical {
        return Err(Error::NonCanonicalParams);
    }
    if gens.status == GenStatus::UndeterminedBeyondCap {
        return Err(Error::UndeterminedGenerators(gens.scanned_to));
    }
    let r1 = integer_roots(&phi_poly(params, &gens.q1()).in_n)?;
    let r2 = integer_roots(&phi_poly(params, &gens.q2()).in_n)?;
    Ok(combine_integer_roots(&r1, &r2, params.is_primed_zero()))
}

/// Verdict of the simplicity analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Simple,
    NotSimple,
    /// Withheld because the generator scan did not settle.
    Undetermined,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Simple => "simple",
            Verdict::NotSimple => "not_simple",
            Verdict::Undetermined => "undetermined",
        };
        write!(f, "{s}")
    }
}

/// One layer of the submodule chain: the quotient above index `n` is a
/// highest weight module with the listed weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiltrationStep {
    pub index: i64,
    pub quotient: HighestWeight,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Filtration {
    /// Simple module, no chain.
    Empty,
    /// Finite chain ordered by ascending index.
    Finite(Vec<FiltrationStep>),
    /// Infinite chain (free Verma factor case).
    Infinite,
}

/// Outcome of the full simplicity analysis of one tensor module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicityReport {
    pub hw: HighestWeight,
    pub params: ModuleParams,
    pub verdict: Verdict,
    pub phi_roots: Option<PhiSet>,
    pub filtration: Filtration,
    /// Index of the unique minimal (simple) submodule when the root set is
    /// finite and nonempty.
    pub minimal_submodule_index: Option<i64>,
    pub gen_status: GenStatus,
    pub scanned_to: u32,
    pub caveats: Vec<String>,
}

/// Full simplicity analysis; requires canonical parameters.
pub fn simplicity(hw: &HighestWeight, params: &ModuleParams, cap: u32) -> Result<SimplicityReport> {
    if !params.canonical {
        return Err(Error::NonCanonicalParams);
    }
    let gens = maximal_submodule_generators(hw, cap);
    simplicity_with_generators(hw, params, &gens)
}

/// As [`simplicity`], for an already-resolved generator scan.
pub fn simplicity_with_generators(
    hw: &HighestWeight,
    params: &ModuleParams,
    gens: &MaximalSubmoduleGens,
) -> Result<SimplicityReport> {
    if !params.canonical {
        return Err(Error::NonCanonicalParams);
    }
    let mut caveats = Vec::new();
    if gens.status == GenStatus::UndeterminedBeyondCap {
        caveats.push(format!(
            "submodule generator scan inconclusive at level {}; verdict withheld",
            gens.scanned_to
        ));
        return Ok(SimplicityReport {
            hw: hw.clone(),
            params: params.clone(),
            verdict: Verdict::Undetermined,
            phi_roots: None,
            filtration: Filtration::Empty,
            minimal_submodule_index: None,
            gen_status: gens.status,
            scanned_to: gens.scanned_to,
            caveats,
        });
    }
    match gens.status {
        GenStatus::VermaSimple => caveats.push(format!(
            "no submodule generators found up to level {}; root set assumes the Verma factor stays free above the cap",
            gens.scanned_to
        )),
        GenStatus::SingleGenerator => caveats.push(format!(
            "one submodule generator found up to level {}; a second generator above the cap would shrink the root set",
            gens.scanned_to
        )),
        _ => {}
    }
    let roots = phi_set_with_generators(params, gens)?;
    let (verdict, filtration, minimal) = match &roots {
        PhiSet::Finite(v) if v.is_empty() => (Verdict::Simple, Filtration::Empty, None),
        PhiSet::Finite(v) => {
            let steps = v
                .iter()
                .map(|n| FiltrationStep {
                    index: *n,
                    quotient: HighestWeight::new(
                        hw.c.clone(),
                        &(&params.alpha + &hw.h) + &Rat::from_int(*n),
                    ),
                })
                .collect();
            (
                Verdict::NotSimple,
                Filtration::Finite(steps),
                Some(*v.last().unwrap()),
            )
        }
        PhiSet::AllIntegers { .. } => (Verdict::NotSimple, Filtration::Infinite, None),
    };
    Ok(SimplicityReport {
        hw: hw.clone(),
        params: params.clone(),
        verdict,
        phi_roots: Some(roots),
        filtration,
        minimal_submodule_index: minimal,
        gen_status: gens.status,
        scanned_to: gens.scanned_to,
        caveats,
    })
}

/// Canonical parameter pairs for which the tensor module fails to be simple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExceptionalSet {
    /// Isolated rational pairs `(alpha, beta)`, sorted.
    Pairs(Vec<(Rat, Rat)>),
    /// The solution locus is positive-dimensional (a single defining
    /// equation, or generators sharing a factor).
    Family,
    /// The Verma factor stayed free within the cap, so every parameter
    /// pair admits submodules.
    AllPairs,
}

/// Finds all canonical rational `(alpha, beta)` making the tensor module
/// non-simple, by eliminating the combined variable `s = alpha + n`.
///
/// `phi_n` depends on `alpha` and `n` only through `s`, so the two `phi`
/// polynomials become a system in `(s, b)`; the resultant in `s` confines
/// `b` to finitely many rational candidates, and each shared root `s*`
/// splits as `alpha = frac(s*)`, `n = floor(s*)`. Only rational solutions
/// are enumerated.
pub fn exceptional_pairs(hw: &HighestWeight, cap: u32) -> Result<ExceptionalSet> {
    let gens = maximal_submodule_generators(hw, cap);
    match gens.status {
        GenStatus::UndeterminedBeyondCap => {
            return Err(Error::UndeterminedGenerators(gens.scanned_to))
        }
        GenStatus::VermaSimple => return Ok(ExceptionalSet::AllPairs),
        GenStatus::SingleGenerator => return Ok(ExceptionalSet::Family),
        GenStatus::TwoGenerators => {}
    }
    let zero = MPoly::zero();
    let psi1 = phi_symbolic(&gens.q1()).substitute(Var::A, &zero);
    let psi2 = phi_symbolic(&gens.q2()).substitute(Var::A, &zero);
    let res = resultant(&psi1, &psi2, Var::N);
    if res.is_zero() {
        return Ok(ExceptionalSet::Family);
    }
    let mut pairs: Vec<(Rat, Rat)> = Vec::new();
    let b_candidates = if res.as_constant().is_some() {
        Vec::new()
    } else {
        rational_roots(&res, Var::B)?
    };
    for b in b_candidates {
        if b.is_one() {
            continue;
        }
        let bp = MPoly::constant(b.clone());
        let p1 = psi1.substitute(Var::B, &bp);
        let p2 = psi2.substitute(Var::B, &bp);
        let g = if p1.is_zero() && p2.is_zero() {
            return Ok(ExceptionalSet::Family);
        } else if p1.is_zero() {
            p2
        } else if p2.is_zero() {
            p1
        } else {
            gcd_univariate(&p1, &p2, Var::N)?
        };
        if g.as_constant().is_some() {
            continue;
        }
        for s in rational_roots(&g, Var::N)? {
            let alpha = s.fract();
            let n = Rat::from(s.floor_int())
                .to_i64()
                .expect("shifted root exceeds machine range");
            let params = ModuleParams::raw(alpha.clone(), b.clone());
            if phi_eval(&params, n, &gens.q1()).is_zero()
                && phi_eval(&params, n, &gens.q2()).is_zero()
            {
                let pair = (alpha, b.clone());
                if !pairs.contains(&pair) {
                    pairs.push(pair);
                }
            }
        }
    }
    pairs.sort();
    Ok(ExceptionalSet::Pairs(pairs))
}

//! Exact linear algebra over the rationals.
//!
//! Denominators are cleared up front and elimination runs fraction-free over
//! big integers (Bareiss single-step division), so intermediate growth stays
//! polynomial and every result is exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::rat::Rat;

/// Multiplies each row by the least common multiple of its denominators.
fn clear_row(row: &[Rat]) -> Vec<BigInt> {
    let mut lcm = BigInt::from(1);
    for x in row {
        lcm = lcm.lcm(x.denom());
    }
    row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
}

/// Divides a vector by the gcd of its entries and fixes the leading sign.
///
/// The zero vector is returned unchanged.
fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for x in &v {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return v;
    }
    if let Some(first) = v.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            g = -g;
        }
    }
    for x in &mut v {
        *x = &*x / &g;
    }
    v
}

/// A basis of the right nullspace of the matrix `rows` (each of width `cols`).
///
/// Elimination is fraction-free over integers; each basis vector is scaled to
/// primitive integers with positive leading entry, so the output is canonical
/// for a given row order.
pub fn nullspace(rows: &[Vec<Rat>], cols: usize) -> Vec<Vec<Rat>> {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .inspect(|r| assert_eq!(r.len(), cols))
        .map(|r| clear_row(r))
        .collect();
    let nrows = m.len();
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut prev = BigInt::from(1);
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(src) = (rank..nrows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, src);
        let pivot = m[rank][col].clone();
        for i in rank + 1..nrows {
            for j in col + 1..cols {
                let num = &m[i][j] * &pivot - &m[i][col] * &m[rank][j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "fraction-free division must be exact");
                m[i][j] = q;
            }
            m[i][col] = BigInt::zero();
        }
        prev = pivot;
        pivot_cols.push(col);
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    let free_cols: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    let mut basis = Vec::new();
    for &f in &free_cols {
        let mut x = vec![Rat::zero(); cols];
        x[f] = Rat::one();
        for (r, &pc) in pivot_cols.iter().enumerate().rev() {
            if pc > f {
                continue;
            }
            let mut acc = Rat::zero();
            for j in pc + 1..cols {
                if !x[j].is_zero() && !m[r][j].is_zero() {
                    acc += Rat::from(m[r][j].clone()) * &x[j];
                }
            }
            x[pc] = -(acc / Rat::from(m[r][pc].clone()));
        }
        let ints = clear_row(&x);
        let prim = primitive(ints);
        basis.push(prim.into_iter().map(Rat::from).collect());
    }
    basis
}

/// Incrementally maintained reduced row echelon span over the rationals.
///
/// Rows are stored as primitive integer vectors with positive leading entry
/// and fully back-eliminated, so residues are canonical representatives of
/// the quotient by the span.
#[derive(Debug, Clone, Default)]
pub struct RowReducer {
    /// Sorted by pivot column; each row's pivot entry is positive and the
    /// pivot column is zero in every other row.
    rows: Vec<(usize, Vec<BigInt>)>,
    width: usize,
}

impl RowReducer {
    pub fn new(width: usize) -> Self {
        RowReducer {
            rows: Vec::new(),
            width,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Canonical residue of `v` modulo the current span.
    pub fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.width);
        let mut out = v.to_vec();
        for (pc, row) in &self.rows {
            if out[*pc].is_zero() {
                continue;
            }
            let factor = &out[*pc] / Rat::from(row[*pc].clone());
            for (j, entry) in row.iter().enumerate() {
                if !entry.is_zero() {
                    out[j] = &out[j] - &(&factor * &Rat::from(entry.clone()));
                }
            }
        }
        out
    }

    /// True when `v` lies in the span.
    pub fn contains(&self, v: &[Rat]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Adds `v` to the span. Returns `true` when the rank grew.
    pub fn insert(&mut self, v: &[Rat]) -> bool {
        let reduced = self.reduce(v);
        let Some(pc) = reduced.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let new_row = primitive(clear_row(&reduced));
        // Eliminate the new pivot column from the existing rows.
        let mut updated: Vec<(usize, Vec<BigInt>)> = Vec::with_capacity(self.rows.len() + 1);
        for (opc, row) in &self.rows {
            if row[pc].is_zero() {
                updated.push((*opc, row.clone()));
                continue;
            }
            // row * new_pivot - new_row * row[pc], then re-primitivized.
            let mut combo: Vec<BigInt> = Vec::with_capacity(self.width);
            for j in 0..self.width {
                combo.push(&row[j] * &new_row[pc] - &new_row[j] * &row[pc]);
            }
            updated.push((*opc, primitive(combo)));
        }
        updated.push((pc, new_row));
        updated.sort_by_key(|(c, _)| *c);
        self.rows = updated;
        true
    }
}

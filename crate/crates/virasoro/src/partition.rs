//! Integer partitions indexing monomials of lowering operators.
//!
//! A partition `(k_1 >= k_2 >= ... >= k_r)` labels the ordered monomial
//! `d(-k_1) d(-k_2) ... d(-k_r)`; its size is the level of the monomial.

use std::cmp::Ordering;

/// A weakly decreasing sequence of positive integers.
///
/// The empty partition labels the identity monomial. Ordering is by size
/// first, then lexicographic on the parts, which makes map iteration over
/// partitions deterministic and level-graded.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// The empty partition.
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Builds a partition from parts in any order; zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Self {
        assert!(
            parts.iter().all(|&p| p > 0),
            "partition parts must be positive"
        );
        parts.sort_unstable_by(|x, y| y.cmp(x));
        Partition(parts)
    }

    /// The one-part partition `(k)`.
    pub fn single(k: u32) -> Self {
        assert!(k > 0);
        Partition(vec![k])
    }

    /// Sum of the parts.
    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Parts in weakly decreasing order.
    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Adds one part, keeping the order invariant.
    pub fn with_part(&self, k: u32) -> Partition {
        assert!(k > 0);
        let mut parts = self.0.clone();
        let pos = parts.partition_point(|&p| p >= k);
        parts.insert(pos, k);
        Partition(parts)
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All partitions of `n`, largest first part first.
///
/// For `n = 4` the order is `(4), (3,1), (2,2), (2,1,1), (1,1,1,1)`.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    descend(n, n, &mut current, &mut out);
    out
}

fn descend(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition(current.clone()));
        return;
    }
    let first = remaining.min(max_part);
    for part in (1..=first).rev() {
        current.push(part);
        descend(remaining - part, part, current, out);
        current.pop();
    }
}

/// The partition counting function `p(n)` by Euler's pentagonal recurrence.
///
/// Independent of the explicit enumeration in [`partitions_of`].
pub fn partition_count(n: u32) -> u64 {
    let n = n as i64;
    let mut table = vec![0i64; (n + 1) as usize];
    table[0] = 1;
    for m in 1..=n {
        let mut total = 0i64;
        let mut k = 1i64;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            let g2 = k * (3 * k + 1) / 2;
            if g1 > m && g2 > m {
                break;
            }
            let sign = if k % 2 == 0 { -1 } else { 1 };
            if g1 <= m {
                total += sign * table[(m - g1) as usize];
            }
            if g2 <= m {
                total += sign * table[(m - g2) as usize];
            }
            k += 1;
        }
        table[m as usize] = total;
    }
    table[n as usize] as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_sorts_and_rejects_zero() {
        let p = Partition::new(vec![1, 3, 2, 3]);
        assert_eq!(p.parts(), &[3, 3, 2, 1]);
        assert_eq!(p.size(), 9);
        assert_eq!(p.len(), 4);
    }

    #[test]
    #[should_panic]
    fn zero_parts_panic() {
        Partition::new(vec![2, 0]);
    }

    #[test]
    fn with_part_keeps_order() {
        let p = Partition::new(vec![3, 1]).with_part(2);
        assert_eq!(p.parts(), &[3, 2, 1]);
        let q = Partition::empty().with_part(5);
        assert_eq!(q.parts(), &[5]);
    }

    #[test]
    fn enumeration_order_level_four() {
        let parts = partitions_of(4);
        let shapes: Vec<&[u32]> = parts.iter().map(|p| p.parts()).collect();
        assert_eq!(
            shapes,
            vec![
                &[4][..],
                &[3, 1][..],
                &[2, 2][..],
                &[2, 1, 1][..],
                &[1, 1, 1, 1][..]
            ]
        );
    }

    #[test]
    fn enumeration_count_matches_recurrence() {
        for n in 0..=18 {
            assert_eq!(
                partitions_of(n).len() as u64,
                partition_count(n),
                "mismatch at n = {n}"
            );
        }
    }

    #[test]
    fn known_partition_counts() {
        let known = [1u64, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77];
        for (n, &v) in known.iter().enumerate() {
            assert_eq!(partition_count(n as u32), v);
        }
    }

    #[test]
    fn ordering_is_graded() {
        let small = Partition::new(vec![3]);
        let big = Partition::new(vec![1, 1, 1, 1]);
        assert!(small < big);
        let a = Partition::new(vec![2, 2]);
        let b = Partition::new(vec![3, 1]);
        assert!(a < b);
    }
}

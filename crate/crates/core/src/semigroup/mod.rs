//! Finite semigroups given by Cayley tables.

mod classify;
mod green;
mod order;

pub use classify::{BandCharacterizations, Classification};
pub use green::GreenRelations;
pub use order::{CompatibilityReport, LocalSubmonoid, NaturalOrder};

use thiserror::Error;

/// Element identifier: a dense index into the Cayley table.
pub type Elem = usize;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SemigroupError {
    #[error("table is not square: row {row} has {len} entries, expected {order}")]
    NotSquare { row: usize, len: usize, order: usize },
    #[error("empty table: a semigroup needs at least one element")]
    Empty,
    #[error("entry {value} at ({row},{col}) is out of range for order {order}")]
    NotClosed {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("associativity fails at ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: Elem, b: Elem, c: Elem },
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("semigroup is not regular: element {0} has no inverse")]
    NotRegular(Elem),
    #[error("element {0} is not idempotent")]
    NotIdempotent(Elem),
    #[error("internal theorem violation: {0}")]
    InternalTheoremViolation(String),
}

/// A finite semigroup on `0..order` with its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteSemigroup {
    order: usize,
    table: Vec<Elem>,
    labels: Option<Vec<String>>,
}

impl FiniteSemigroup {
    /// Validates a square table: closure and associativity by a full triple loop.
    pub fn new(rows: Vec<Vec<Elem>>) -> Result<Self, SemigroupError> {
        let order = rows.len();
        if order == 0 {
            return Err(SemigroupError::Empty);
        }
        let mut table = Vec::with_capacity(order * order);
        for (row, r) in rows.into_iter().enumerate() {
            if r.len() != order {
                return Err(SemigroupError::NotSquare {
                    row,
                    len: r.len(),
                    order,
                });
            }
            table.extend(r);
        }
        Self::from_flat(order, table)
    }

    pub fn from_flat(order: usize, table: Vec<Elem>) -> Result<Self, SemigroupError> {
        if order == 0 {
            return Err(SemigroupError::Empty);
        }
        assert_eq!(table.len(), order * order, "flat table has wrong length");
        if let Some(i) = table.iter().position(|&v| v >= order) {
            return Err(SemigroupError::NotClosed {
                row: i / order,
                col: i % order,
                value: table[i],
                order,
            });
        }
        let s = FiniteSemigroup {
            order,
            table,
            labels: None,
        };
        if let Some((a, b, c)) = s.associativity_witness() {
            return Err(SemigroupError::NotAssociative { a, b, c });
        }
        Ok(s)
    }

    /// Builds from a table already known to be associative and closed.
    pub(crate) fn from_flat_unchecked(order: usize, table: Vec<Elem>) -> Self {
        debug_assert_eq!(table.len(), order * order);
        FiniteSemigroup {
            order,
            table,
            labels: None,
        }
    }

    /// Builds from a binary operation on `0..order`, validating the result.
    pub fn from_fn(order: usize, op: impl Fn(Elem, Elem) -> Elem) -> Result<Self, SemigroupError> {
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                table.push(op(a, b));
            }
        }
        Self::from_flat(order, table)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, SemigroupError> {
        if labels.len() != self.order {
            return Err(SemigroupError::LabelCount {
                expected: self.order,
                got: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    fn associativity_witness(&self) -> Option<(Elem, Elem, Elem)> {
        for a in 0..self.order {
            for b in 0..self.order {
                let ab = self.mul(a, b);
                for c in 0..self.order {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.order + b]
    }

    pub fn flat_table(&self) -> &[Elem] {
        &self.table
    }

    pub fn rows(&self) -> Vec<Vec<Elem>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, x: Elem) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    /// Table equality, ignoring labels.
    pub fn same_table(&self, other: &FiniteSemigroup) -> bool {
        self.order == other.order && self.table == other.table
    }

    pub fn is_idempotent(&self, e: Elem) -> bool {
        self.mul(e, e) == e
    }

    /// `E(S)` in ascending order.
    pub fn idempotents(&self) -> Vec<Elem> {
        self.elements().filter(|&e| self.is_idempotent(e)).collect()
    }

    /// `V(s) = { t : sts = s, tst = t }` in ascending order.
    pub fn inverses_of(&self, s: Elem) -> Vec<Elem> {
        self.elements()
            .filter(|&t| self.mul(self.mul(s, t), s) == s && self.mul(self.mul(t, s), t) == t)
            .collect()
    }

    pub fn all_inverses(&self) -> Vec<Vec<Elem>> {
        self.elements().map(|s| self.inverses_of(s)).collect()
    }

    /// Some inverse of `s`, if `s` is regular.
    pub fn some_inverse(&self, s: Elem) -> Option<Elem> {
        self.elements()
            .find(|&t| self.mul(self.mul(s, t), s) == s && self.mul(self.mul(t, s), t) == t)
    }

    pub fn is_regular(&self) -> bool {
        self.elements().all(|s| self.some_inverse(s).is_some())
    }

    pub fn is_commutative(&self) -> bool {
        self.elements()
            .all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_monoid_identity(&self, e: Elem) -> bool {
        self.elements().all(|x| self.mul(e, x) == x && self.mul(x, e) == x)
    }

    /// The semigroup with multiplication `a * b := b a`.
    pub fn opposite(&self) -> FiniteSemigroup {
        let n = self.order;
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = self.mul(b, a);
            }
        }
        FiniteSemigroup {
            order: n,
            table,
            labels: self.labels.clone(),
        }
    }

    /// Direct product; the pair `(a, b)` has identifier `a * other.order() + b`.
    pub fn direct_product(&self, other: &FiniteSemigroup) -> FiniteSemigroup {
        let (n, m) = (self.order, other.order);
        let mut table = Vec::with_capacity(n * m * n * m);
        for a in 0..n {
            for b in 0..m {
                for c in 0..n {
                    for d in 0..m {
                        table.push(self.mul(a, c) * m + other.mul(b, d));
                    }
                }
            }
        }
        FiniteSemigroup::from_flat_unchecked(n * m, table)
    }

    /// Subsemigroup on a product-closed subset, renumbered by position.
    /// Returns `None` if the subset is not closed.
    pub fn subsemigroup(&self, subset: &[Elem]) -> Option<FiniteSemigroup> {
        let mut index = vec![usize::MAX; self.order];
        for (i, &x) in subset.iter().enumerate() {
            index[x] = i;
        }
        let k = subset.len();
        let mut table = Vec::with_capacity(k * k);
        for &a in subset {
            for &b in subset {
                let p = index[self.mul(a, b)];
                if p == usize::MAX {
                    return None;
                }
                table.push(p);
            }
        }
        (k > 0).then(|| FiniteSemigroup::from_flat_unchecked(k, table))
    }

    /// Index and period of the monogenic subsemigroup generated by `a`.
    pub fn index_period(&self, a: Elem) -> (usize, usize) {
        let mut seen = vec![usize::MAX; self.order];
        let mut x = a;
        let mut k = 1;
        loop {
            if seen[x] != usize::MAX {
                return (seen[x], k - seen[x]);
            }
            seen[x] = k;
            x = self.mul(x, a);
            k += 1;
        }
    }

    /// Checks that `map` is a homomorphism into `target`.
    pub fn is_homomorphism(&self, target: &FiniteSemigroup, map: &[Elem]) -> bool {
        self.homomorphism_witness(target, map).is_none()
    }

    pub fn homomorphism_witness(&self, target: &FiniteSemigroup, map: &[Elem]) -> Option<(Elem, Elem)> {
        if map.len() != self.order || map.iter().any(|&y| y >= target.order) {
            return Some((usize::MAX, usize::MAX));
        }
        for a in self.elements() {
            for b in self.elements() {
                if map[self.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn trivial() -> FiniteSemigroup {
        FiniteSemigroup::from_flat_unchecked(1, vec![0])
    }
}

/// Small named semigroups used throughout tests and fixtures.
pub mod examples {
    use super::FiniteSemigroup;

    /// Right zero semigroup: `xy = y`.
    pub fn right_zero(n: usize) -> FiniteSemigroup {
        FiniteSemigroup::from_fn(n, |_, b| b).unwrap()
    }

    /// Left zero semigroup: `xy = x`.
    pub fn left_zero(n: usize) -> FiniteSemigroup {
        FiniteSemigroup::from_fn(n, |a, _| a).unwrap()
    }

    /// Chain semilattice `0 < 1 < ... < n-1` under `min`.
    pub fn chain(n: usize) -> FiniteSemigroup {
        FiniteSemigroup::from_fn(n, |a, b| a.min(b)).unwrap()
    }

    /// Cyclic group of order `n`.
    pub fn cyclic_group(n: usize) -> FiniteSemigroup {
        FiniteSemigroup::from_fn(n, |a, b| (a + b) % n).unwrap()
    }

    /// Null semigroup: every product is `0`.
    pub fn null(n: usize) -> FiniteSemigroup {
        FiniteSemigroup::from_fn(n, |_, _| 0).unwrap()
    }

    /// The right Yamada band over the two-element chain: `(0,y0), (0,y1), (1,x0)`.
    pub fn y3() -> FiniteSemigroup {
        FiniteSemigroup::new(vec![vec![0, 1, 0], vec![0, 1, 0], vec![0, 1, 2]]).unwrap()
    }

    /// Symmetric inverse monoid on two points. Elements are partial maps
    /// `(image of 0, image of 1)` with `-` for undefined, ordered
    /// `--, 0-, 1-, -0, -1, 01, 10`; maps compose left to right.
    pub fn symmetric_inverse_2() -> FiniteSemigroup {
        let maps: [[Option<usize>; 2]; 7] = [
            [None, None],
            [Some(0), None],
            [Some(1), None],
            [None, Some(0)],
            [None, Some(1)],
            [Some(0), Some(1)],
            [Some(1), Some(0)],
        ];
        let compose = |a: usize, b: usize| {
            let m = [0, 1].map(|x| maps[a][x].and_then(|y| maps[b][y]));
            maps.iter().position(|&f| f == m).unwrap()
        };
        FiniteSemigroup::from_fn(7, compose)
            .unwrap()
            .with_labels(
                ["--", "0-", "1-", "-0", "-1", "01", "10"]
                    .iter()
                    .map(|s| s.to_string())
                    .collect(),
            )
            .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;

    #[test]
    fn validate_examples() {
        assert_eq!(FiniteSemigroup::new(vec![vec![0]]).unwrap().order(), 1);
        assert!(FiniteSemigroup::new(vec![vec![0, 1], vec![0, 1]]).is_ok());
        assert_eq!(
            FiniteSemigroup::new(vec![vec![0, 1], vec![1, 2]]),
            Err(SemigroupError::NotClosed {
                row: 1,
                col: 1,
                value: 2,
                order: 2
            })
        );
        assert!(matches!(
            FiniteSemigroup::new(vec![vec![1, 0], vec![0, 0]]),
            Err(SemigroupError::NotAssociative { .. })
        ));
        assert!(matches!(
            FiniteSemigroup::new(vec![vec![0, 1], vec![0]]),
            Err(SemigroupError::NotSquare { row: 1, .. })
        ));
        assert_eq!(FiniteSemigroup::new(vec![]), Err(SemigroupError::Empty));
    }

    #[test]
    fn idempotent_examples() {
        assert_eq!(right_zero(2).idempotents(), vec![0, 1]);
        assert_eq!(cyclic_group(2).idempotents(), vec![0]);
        // restrictions of the identity: --, 0-, -1, 01
        assert_eq!(symmetric_inverse_2().idempotents(), vec![0, 1, 4, 5]);
    }

    #[test]
    fn inverse_examples() {
        let rz = right_zero(2);
        assert_eq!(rz.inverses_of(0), vec![0, 1]);
        for e in rz.elements() {
            assert!(rz.inverses_of(e).contains(&e));
        }
        let sl = chain(2);
        assert_eq!(sl.inverses_of(0), vec![0]);
        assert_eq!(sl.inverses_of(1), vec![1]);
        let i2 = symmetric_inverse_2();
        // the partial bijection 0 -> 1 is inverted by 1 -> 0
        assert_eq!(i2.inverses_of(2), vec![3]);
        assert!(null(3).some_inverse(1).is_none());
    }

    #[test]
    fn opposite_and_product() {
        assert!(right_zero(3).opposite().same_table(&left_zero(3)));
        let p = chain(2).direct_product(&right_zero(2));
        assert_eq!(p.order(), 4);
        assert!(FiniteSemigroup::from_flat(4, p.flat_table().to_vec()).is_ok());
        // (1,1)(0,1) = (0,1)
        assert_eq!(p.mul(3, 1), 1);
    }

    #[test]
    fn index_period() {
        assert_eq!(cyclic_group(3).index_period(1), (1, 3));
        assert_eq!(null(2).index_period(1), (2, 1));
        assert_eq!(chain(2).index_period(1), (1, 1));
    }
}

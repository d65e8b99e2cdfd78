//! Equivalence relations on `0..n` in normalized class-array form.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; returns `true` if they were distinct.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    pub fn into_partition(mut self) -> Partition {
        let n = self.parent.len();
        let roots: Vec<usize> = (0..n).map(|x| self.find(x)).collect();
        Partition::from_labels(&roots)
    }
}

/// An equivalence relation on `0..carrier_size`.
///
/// Class identifiers are contiguous and ordered by least member, so two
/// partitions are equal as relations iff their `class_of` arrays are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    class_of: Vec<usize>,
    num_classes: usize,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartitionParseError {
    #[error("element {0} appears in more than one class")]
    Duplicate(usize),
    #[error("element {0} is missing from the class list")]
    Missing(usize),
    #[error("invalid element token {0:?}")]
    BadToken(String),
}

impl Partition {
    /// Normalizes arbitrary labels: elements with equal labels share a class.
    pub fn from_labels<T: PartialEq>(labels: &[T]) -> Self {
        let mut class_of = Vec::with_capacity(labels.len());
        let mut reps: Vec<usize> = Vec::new();
        for (i, l) in labels.iter().enumerate() {
            match reps.iter().position(|&r| labels[r] == *l) {
                Some(c) => class_of.push(c),
                None => {
                    class_of.push(reps.len());
                    reps.push(i);
                }
            }
        }
        Partition {
            num_classes: reps.len(),
            class_of,
        }
    }

    /// Like [`Partition::from_labels`] but hashes labels; use for large carriers.
    pub fn from_hashable_labels<T: std::hash::Hash + Eq>(labels: &[T]) -> Self {
        let mut seen = std::collections::HashMap::new();
        let mut class_of = Vec::with_capacity(labels.len());
        for l in labels {
            let next = seen.len();
            class_of.push(*seen.entry(l).or_insert(next));
        }
        Partition {
            num_classes: seen.len(),
            class_of,
        }
    }

    /// Builds the partition of a relation that is already known to be an equivalence.
    pub fn from_equivalence(n: usize, related: impl Fn(usize, usize) -> bool) -> Self {
        let mut class_of = vec![usize::MAX; n];
        let mut k = 0;
        for a in 0..n {
            if class_of[a] != usize::MAX {
                continue;
            }
            for (b, c) in class_of.iter_mut().enumerate().skip(a) {
                if *c == usize::MAX && related(a, b) {
                    *c = k;
                }
            }
            k += 1;
        }
        Partition {
            class_of,
            num_classes: k,
        }
    }

    pub fn equality(n: usize) -> Self {
        Partition {
            class_of: (0..n).collect(),
            num_classes: n,
        }
    }

    pub fn full(n: usize) -> Self {
        Partition {
            class_of: vec![0; n],
            num_classes: usize::from(n > 0),
        }
    }

    pub fn from_classes(n: usize, classes: &[Vec<usize>]) -> Result<Self, PartitionParseError> {
        let mut label = vec![usize::MAX; n];
        for (c, class) in classes.iter().enumerate() {
            for &x in class {
                if x >= n {
                    return Err(PartitionParseError::BadToken(x.to_string()));
                }
                if label[x] != usize::MAX {
                    return Err(PartitionParseError::Duplicate(x));
                }
                label[x] = c;
            }
        }
        if let Some(x) = label.iter().position(|&l| l == usize::MAX) {
            return Err(PartitionParseError::Missing(x));
        }
        Ok(Partition::from_labels(&label))
    }

    pub fn carrier_size(&self) -> usize {
        self.class_of.len()
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn class_array(&self) -> &[usize] {
        &self.class_of
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_classes];
        for (x, &c) in self.class_of.iter().enumerate() {
            out[c].push(x);
        }
        out
    }

    /// Least member of each class, indexed by class id.
    pub fn representatives(&self) -> Vec<usize> {
        let mut reps = vec![usize::MAX; self.num_classes];
        for (x, &c) in self.class_of.iter().enumerate() {
            if reps[c] == usize::MAX {
                reps[c] = x;
            }
        }
        reps
    }

    pub fn is_equality(&self) -> bool {
        self.num_classes == self.class_of.len()
    }

    pub fn is_full(&self) -> bool {
        self.num_classes <= 1
    }

    /// Intersection of the two relations.
    pub fn meet(&self, other: &Partition) -> Partition {
        assert_eq!(self.carrier_size(), other.carrier_size());
        let pairs: Vec<(usize, usize)> = self
            .class_of
            .iter()
            .zip(&other.class_of)
            .map(|(&a, &b)| (a, b))
            .collect();
        Partition::from_hashable_labels(&pairs)
    }

    /// Smallest equivalence containing both relations.
    pub fn join(&self, other: &Partition) -> Partition {
        assert_eq!(self.carrier_size(), other.carrier_size());
        let mut uf = UnionFind::new(self.carrier_size());
        for p in [self, other] {
            let reps = p.representatives();
            for (x, &c) in p.class_of.iter().enumerate() {
                uf.union(x, reps[c]);
            }
        }
        uf.into_partition()
    }

    /// `true` iff every class of `self` lies inside a class of `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        let reps = self.representatives();
        self.class_of
            .iter()
            .enumerate()
            .all(|(x, &c)| other.related(x, reps[c]))
    }

    /// Restriction to a subset, renumbered by position in `subset`.
    pub fn restrict_to(&self, subset: &[usize]) -> Partition {
        let labels: Vec<usize> = subset.iter().map(|&x| self.class_of[x]).collect();
        Partition::from_labels(&labels)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let classes = self.classes();
        for (i, class) in classes.iter().enumerate() {
            if i > 0 {
                write!(f, " | ")?;
            }
            let members: Vec<String> = class.iter().map(|x| x.to_string()).collect();
            write!(f, "{}", members.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = PartitionParseError;

    /// Parses the `"0 2 | 1 | 3 4"` class-list form. The carrier is `0..=max`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut classes = Vec::new();
        for chunk in s.split('|') {
            let mut class = Vec::new();
            for tok in chunk.split_whitespace() {
                let x: usize = tok
                    .parse()
                    .map_err(|_| PartitionParseError::BadToken(tok.to_string()))?;
                class.push(x);
            }
            if !class.is_empty() {
                classes.push(class);
            }
        }
        let n = classes.iter().flatten().map(|&x| x + 1).max().unwrap_or(0);
        Partition::from_classes(n, &classes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_normalize_by_least_member() {
        let p = Partition::from_labels(&[7, 3, 7, 1]);
        assert_eq!(p.class_array(), &[0, 1, 0, 2]);
        assert_eq!(p.to_string(), "0 2 | 1 | 3");
    }

    #[test]
    fn parse_class_list() {
        let p: Partition = "0 2 | 1 | 3 4".parse().unwrap();
        assert_eq!(p.carrier_size(), 5);
        assert_eq!(p.num_classes(), 3);
        assert!(p.related(3, 4));
        assert_eq!(p.to_string(), "0 2 | 1 | 3 4");
        assert_eq!(
            "0 1 | 1".parse::<Partition>(),
            Err(PartitionParseError::Duplicate(1))
        );
        assert_eq!(
            "0 | 2".parse::<Partition>(),
            Err(PartitionParseError::Missing(1))
        );
    }

    #[test]
    fn meet_join_refines() {
        let a: Partition = "0 1 | 2 3".parse().unwrap();
        let b: Partition = "0 | 1 2 | 3".parse().unwrap();
        assert!(a.meet(&b).is_equality());
        assert!(a.join(&b).is_full());
        assert!(a.meet(&b).refines(&a));
        assert!(!a.refines(&b));
        assert!(Partition::equality(4).refines(&a));
    }

    #[test]
    fn empty_carrier() {
        assert_eq!(Partition::full(0).num_classes(), 0);
        assert!(Partition::equality(0).is_full());
    }
}

use serde::{Deserialize, Serialize};

use super::{Elem, FiniteSemigroup};
use crate::Partition;

/// Green's relations as partitions of the carrier.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreenRelations {
    #[serde(with = "crate::format::partition_string")]
    pub l: Partition,
    #[serde(with = "crate::format::partition_string")]
    pub r: Partition,
    #[serde(with = "crate::format::partition_string")]
    pub h: Partition,
    #[serde(with = "crate::format::partition_string")]
    pub d: Partition,
    #[serde(with = "crate::format::partition_string")]
    pub j: Partition,
}

impl FiniteSemigroup {
    /// `S¹a` as a membership vector.
    pub fn principal_left_ideal(&self, a: Elem) -> Vec<bool> {
        let mut ideal = vec![false; self.order()];
        ideal[a] = true;
        for s in self.elements() {
            ideal[self.mul(s, a)] = true;
        }
        ideal
    }

    /// `aS¹` as a membership vector.
    pub fn principal_right_ideal(&self, a: Elem) -> Vec<bool> {
        let mut ideal = vec![false; self.order()];
        ideal[a] = true;
        for s in self.elements() {
            ideal[self.mul(a, s)] = true;
        }
        ideal
    }

    /// `S¹aS¹` as a membership vector.
    pub fn principal_ideal(&self, a: Elem) -> Vec<bool> {
        let mut ideal = self.principal_left_ideal(a);
        let left: Vec<Elem> = self.elements().filter(|&x| ideal[x]).collect();
        for x in left {
            for s in self.elements() {
                ideal[self.mul(x, s)] = true;
            }
        }
        ideal
    }

    pub fn green_l(&self) -> Partition {
        let ideals: Vec<Vec<bool>> = self.elements().map(|a| self.principal_left_ideal(a)).collect();
        Partition::from_hashable_labels(&ideals)
    }

    pub fn green_r(&self) -> Partition {
        let ideals: Vec<Vec<bool>> = self.elements().map(|a| self.principal_right_ideal(a)).collect();
        Partition::from_hashable_labels(&ideals)
    }

    pub fn green(&self) -> GreenRelations {
        let l = self.green_l();
        let r = self.green_r();
        let h = l.meet(&r);
        let d = l.join(&r);
        let ideals: Vec<Vec<bool>> = self.elements().map(|a| self.principal_ideal(a)).collect();
        let j = Partition::from_hashable_labels(&ideals);
        GreenRelations { l, r, h, d, j }
    }
}

#[cfg(test)]
mod tests {
    use crate::semigroup::examples::*;

    #[test]
    fn right_zero_green() {
        let g = right_zero(2).green();
        assert!(g.r.is_full());
        assert!(g.l.is_equality());
    }

    #[test]
    fn semilattice_green_is_equality() {
        let g = chain(2).green();
        for p in [&g.l, &g.r, &g.h, &g.d, &g.j] {
            assert!(p.is_equality());
        }
    }

    #[test]
    fn group_green_is_full() {
        let g = cyclic_group(2).green();
        for p in [&g.l, &g.r, &g.h, &g.d, &g.j] {
            assert!(p.is_full());
        }
    }

    #[test]
    fn i2_d_classes() {
        let s = symmetric_inverse_2();
        let g = s.green();
        // D-classes by rank: {empty}, {rank 1}, {rank 2}
        assert_eq!(g.d.num_classes(), 3);
        assert_eq!(g.d, g.j);
        assert!(g.h.refines(&g.l) && g.l.refines(&g.d) && g.d.refines(&g.j));
    }
}

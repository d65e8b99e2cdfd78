use serde::{Deserialize, Serialize};

use super::{Elem, FiniteSemigroup, SemigroupError};

/// The natural partial order `a ≤ b ⇔ a = eb = bf` for idempotents `e, f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaturalOrder {
    n: usize,
    leq: Vec<bool>,
}

impl NaturalOrder {
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.leq[a * self.n + b]
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn is_equality(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.leq(a, b) == (a == b)))
    }

    /// All strict pairs `a < b`.
    pub fn strict_pairs(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                if a != b && self.leq(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

/// `eSe` together with its embedding into `S`.
#[derive(Debug, Clone)]
pub struct LocalSubmonoid {
    pub semigroup: FiniteSemigroup,
    /// `embedding[i]` is the element of `S` carried by local element `i`.
    pub embedding: Vec<Elem>,
    /// Local identifier of `e`.
    pub identity: Elem,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompatibilityReport {
    pub right_compatible: bool,
    pub left_compatible: bool,
    pub compatible: bool,
    pub locally_l_unipotent: bool,
    pub locally_r_unipotent: bool,
    pub locally_inverse: bool,
}

impl FiniteSemigroup {
    pub fn natural_order(&self) -> Result<NaturalOrder, SemigroupError> {
        if let Some(s) = self.elements().find(|&s| self.some_inverse(s).is_none()) {
            return Err(SemigroupError::NotRegular(s));
        }
        let es = self.idempotents();
        let n = self.order();
        let mut leq = vec![false; n * n];
        for b in 0..n {
            for &e in &es {
                let a = self.mul(e, b);
                if es.iter().any(|&f| self.mul(b, f) == a) {
                    leq[a * n + b] = true;
                }
            }
        }
        Ok(NaturalOrder { n, leq })
    }

    pub fn local_submonoid(&self, e: Elem) -> Result<LocalSubmonoid, SemigroupError> {
        if !self.is_idempotent(e) {
            return Err(SemigroupError::NotIdempotent(e));
        }
        let mut carrier: Vec<Elem> = self
            .elements()
            .map(|s| self.mul(self.mul(e, s), e))
            .collect();
        carrier.sort_unstable();
        carrier.dedup();
        let semigroup = self
            .subsemigroup(&carrier)
            .expect("eSe is closed under multiplication");
        let identity = carrier.binary_search(&e).expect("e = eee lies in eSe");
        Ok(LocalSubmonoid {
            semigroup,
            embedding: carrier,
            identity,
        })
    }

    /// Compatibility of the natural order with multiplication, alongside the
    /// local unipotency properties it is equivalent to. A failed equivalence
    /// is reported as [`SemigroupError::InternalTheoremViolation`].
    pub fn order_compatibility_report(&self) -> Result<CompatibilityReport, SemigroupError> {
        let order = self.natural_order()?;
        let pairs = order.strict_pairs();
        let right_compatible = pairs.iter().all(|&(a, b)| {
            self.elements()
                .all(|c| order.leq(self.mul(a, c), self.mul(b, c)))
        });
        let left_compatible = pairs.iter().all(|&(a, b)| {
            self.elements()
                .all(|c| order.leq(self.mul(c, a), self.mul(c, b)))
        });

        let mut locally_l_unipotent = true;
        let mut locally_r_unipotent = true;
        let mut locally_inverse = true;
        for e in self.idempotents() {
            let local = self.local_submonoid(e)?.semigroup;
            locally_l_unipotent &= local.unipotent_wrt(&local.green_l());
            locally_r_unipotent &= local.unipotent_wrt(&local.green_r());
            locally_inverse &= local.classify().inverse;
        }
        let report = CompatibilityReport {
            right_compatible,
            left_compatible,
            compatible: right_compatible && left_compatible,
            locally_l_unipotent,
            locally_r_unipotent,
            locally_inverse,
        };
        if report.right_compatible != report.locally_l_unipotent {
            return Err(SemigroupError::InternalTheoremViolation(format!(
                "right compatibility ({}) disagrees with local L-unipotency ({})",
                report.right_compatible, report.locally_l_unipotent
            )));
        }
        if report.left_compatible != report.locally_r_unipotent {
            return Err(SemigroupError::InternalTheoremViolation(format!(
                "left compatibility ({}) disagrees with local R-unipotency ({})",
                report.left_compatible, report.locally_r_unipotent
            )));
        }
        if report.compatible != report.locally_inverse {
            return Err(SemigroupError::InternalTheoremViolation(format!(
                "compatibility ({}) disagrees with local inverseness ({})",
                report.compatible, report.locally_inverse
            )));
        }
        Ok(report)
    }
}

#[cfg(test)]
mod tests {
    use crate::semigroup::examples::*;
    use crate::semigroup::SemigroupError;

    #[test]
    fn chain_order() {
        let o = chain(2).natural_order().unwrap();
        assert!(o.leq(0, 1) && !o.leq(1, 0));
    }

    #[test]
    fn right_zero_order_is_equality() {
        assert!(right_zero(2).natural_order().unwrap().is_equality());
    }

    #[test]
    fn order_is_reflexive() {
        let s = symmetric_inverse_2();
        let o = s.natural_order().unwrap();
        assert!(s.elements().all(|a| o.leq(a, a)));
    }

    #[test]
    fn band_order_is_idempotent_order() {
        for s in [y3(), right_zero(3), chain(3), left_zero(2)] {
            let o = s.natural_order().unwrap();
            for e in s.elements() {
                for f in s.elements() {
                    let expected = s.mul(e, f) == e && s.mul(f, e) == e;
                    assert_eq!(o.leq(e, f), expected);
                }
            }
        }
    }

    #[test]
    fn natural_order_needs_regularity() {
        assert_eq!(null(2).natural_order(), Err(SemigroupError::NotRegular(1)));
    }

    #[test]
    fn local_submonoids() {
        let t = crate::FiniteSemigroup::trivial();
        let l = t.local_submonoid(0).unwrap();
        assert!(l.semigroup.same_table(&t));

        let l = right_zero(2).local_submonoid(0).unwrap();
        assert_eq!(l.embedding, vec![0]);
        assert_eq!(l.semigroup.order(), 1);

        let i2 = symmetric_inverse_2();
        let l = i2.local_submonoid(5).unwrap();
        assert!(l.semigroup.same_table(&i2));
        assert!(l.semigroup.is_monoid_identity(l.identity));

        assert_eq!(
            i2.local_submonoid(2).unwrap_err(),
            SemigroupError::NotIdempotent(2)
        );
    }

    #[test]
    fn compatibility_examples() {
        let r = chain(2).order_compatibility_report().unwrap();
        assert!(r.compatible && r.locally_inverse);
        let r = right_zero(2).order_compatibility_report().unwrap();
        assert!(r.compatible && r.right_compatible && r.left_compatible);
        assert!(symmetric_inverse_2()
            .order_compatibility_report()
            .unwrap()
            .compatible);
    }
}

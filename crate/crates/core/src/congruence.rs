//! Congruences: γ, λ, ρ, quotients, exhaustive enumeration and the
//! subdirect embedding into `S/ρ × S/λ`.

use std::collections::HashSet;

use thiserror::Error;

use crate::partition::{Partition, UnionFind};
use crate::semigroup::{Elem, FiniteSemigroup};

/// Default bound on the order accepted by [`all_congruences`].
pub const DEFAULT_CONGRUENCE_BOUND: usize = 8;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CongruenceError {
    #[error("semigroup is not orthodox")]
    NotOrthodox,
    #[error("semigroup is not a generalized inverse semigroup")]
    NotGeneralizedInverse,
    #[error("partition is not a congruence: {a} ~ {b} but the {side} translate by {c} is not")]
    NotACongruence {
        a: Elem,
        b: Elem,
        c: Elem,
        side: &'static str,
    },
    #[error("partition has carrier size {got}, semigroup has order {expected}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("order {order} exceeds the congruence enumeration bound {bound}")]
    OrderBoundExceeded { order: usize, bound: usize },
    #[error("internal theorem violation: {0}")]
    InternalTheoremViolation(String),
}

/// A partition verified to be compatible with multiplication on both sides.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Congruence {
    partition: Partition,
}

impl Congruence {
    pub fn new(s: &FiniteSemigroup, partition: Partition) -> Result<Self, CongruenceError> {
        if partition.carrier_size() != s.order() {
            return Err(CongruenceError::SizeMismatch {
                expected: s.order(),
                got: partition.carrier_size(),
            });
        }
        let reps = partition.representatives();
        for a in s.elements() {
            let b = reps[partition.class_of(a)];
            if a == b {
                continue;
            }
            for c in s.elements() {
                if !partition.related(s.mul(c, a), s.mul(c, b)) {
                    return Err(CongruenceError::NotACongruence { a, b, c, side: "left" });
                }
                if !partition.related(s.mul(a, c), s.mul(b, c)) {
                    return Err(CongruenceError::NotACongruence { a, b, c, side: "right" });
                }
            }
        }
        Ok(Congruence { partition })
    }

    pub fn equality(s: &FiniteSemigroup) -> Self {
        Congruence {
            partition: Partition::equality(s.order()),
        }
    }

    pub fn full(s: &FiniteSemigroup) -> Self {
        Congruence {
            partition: Partition::full(s.order()),
        }
    }

    /// Least congruence containing all `pairs`.
    pub fn generated_by(s: &FiniteSemigroup, pairs: &[(Elem, Elem)]) -> Self {
        let mut uf = UnionFind::new(s.order());
        let mut queue: Vec<(Elem, Elem)> = Vec::new();
        for &(a, b) in pairs {
            if uf.union(a, b) {
                queue.push((a, b));
            }
        }
        while let Some((a, b)) = queue.pop() {
            for c in s.elements() {
                for (x, y) in [(s.mul(c, a), s.mul(c, b)), (s.mul(a, c), s.mul(b, c))] {
                    if uf.union(x, y) {
                        queue.push((x, y));
                    }
                }
            }
        }
        Congruence {
            partition: uf.into_partition(),
        }
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn related(&self, a: Elem, b: Elem) -> bool {
        self.partition.related(a, b)
    }

    pub fn class_of(&self, a: Elem) -> usize {
        self.partition.class_of(a)
    }

    pub fn num_classes(&self) -> usize {
        self.partition.num_classes()
    }

    pub fn is_contained_in(&self, other: &Congruence) -> bool {
        self.partition.refines(&other.partition)
    }

    pub fn meet(&self, other: &Congruence) -> Congruence {
        Congruence {
            partition: self.partition.meet(&other.partition),
        }
    }
}

impl std::fmt::Display for Congruence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.partition.fmt(f)
    }
}

/// The quotient `S/c` with classes numbered by least member, and the projection.
pub fn quotient(s: &FiniteSemigroup, c: &Congruence) -> (FiniteSemigroup, Vec<usize>) {
    let p = c.partition();
    let reps = p.representatives();
    let k = p.num_classes();
    let mut table = Vec::with_capacity(k * k);
    for &a in &reps {
        for &b in &reps {
            table.push(p.class_of(s.mul(a, b)));
        }
    }
    (
        FiniteSemigroup::from_flat_unchecked(k, table),
        p.class_array().to_vec(),
    )
}

/// Checked quotient: verifies `partition` is a congruence first.
pub fn quotient_by_partition(
    s: &FiniteSemigroup,
    partition: Partition,
) -> Result<(FiniteSemigroup, Vec<usize>), CongruenceError> {
    let c = Congruence::new(s, partition)?;
    Ok(quotient(s, &c))
}

/// The relation `V(s) ∩ V(t) ≠ ∅` closed transitively, without validation.
pub(crate) fn gamma_partition(s: &FiniteSemigroup) -> Partition {
    let inv = s.all_inverses();
    let mut owner = vec![usize::MAX; s.order()];
    let mut uf = UnionFind::new(s.order());
    for (x, vx) in inv.iter().enumerate() {
        for &t in vx {
            if owner[t] == usize::MAX {
                owner[t] = x;
            } else {
                uf.union(owner[t], x);
            }
        }
    }
    uf.into_partition()
}

/// γ, the minimum inverse congruence on an orthodox semigroup.
pub fn gamma(s: &FiniteSemigroup) -> Result<Congruence, CongruenceError> {
    if !s.classify().orthodox {
        return Err(CongruenceError::NotOrthodox);
    }
    let p = gamma_partition(s);
    let inv = s.all_inverses();
    for class in p.classes() {
        if class.iter().any(|&x| inv[x] != inv[class[0]]) {
            return Err(CongruenceError::InternalTheoremViolation(format!(
                "V-sets differ inside the gamma class {class:?}"
            )));
        }
    }
    let c = Congruence::new(s, p)?;
    if !quotient(s, &c).0.classify().inverse {
        return Err(CongruenceError::InternalTheoremViolation(
            "quotient by gamma is not inverse".into(),
        ));
    }
    Ok(c)
}

/// λ = γ ∩ 𝓛 and ρ = γ ∩ 𝓡 on a generalized inverse semigroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaRho {
    pub gamma: Congruence,
    pub lambda: Congruence,
    pub rho: Congruence,
}

pub fn lambda_rho(s: &FiniteSemigroup) -> Result<LambdaRho, CongruenceError> {
    if !s.classify().generalized_inverse {
        return Err(CongruenceError::NotGeneralizedInverse);
    }
    let gamma = gamma(s)?;
    let lambda = Congruence::new(s, gamma.partition().meet(&s.green_l()))?;
    let rho = Congruence::new(s, gamma.partition().meet(&s.green_r()))?;
    if !quotient(s, &lambda).0.classify().right_generalized_inverse {
        return Err(CongruenceError::InternalTheoremViolation(
            "S/lambda is not right generalized inverse".into(),
        ));
    }
    if !quotient(s, &rho).0.classify().left_generalized_inverse {
        return Err(CongruenceError::InternalTheoremViolation(
            "S/rho is not left generalized inverse".into(),
        ));
    }
    if !lambda.meet(&rho).partition().is_equality() {
        return Err(CongruenceError::InternalTheoremViolation(
            "lambda and rho intersect nontrivially".into(),
        ));
    }
    Ok(LambdaRho { gamma, lambda, rho })
}

/// Every congruence on `s`, as joins of principal congruences.
pub fn all_congruences(s: &FiniteSemigroup, bound: usize) -> Result<Vec<Congruence>, CongruenceError> {
    if s.order() > bound {
        return Err(CongruenceError::OrderBoundExceeded {
            order: s.order(),
            bound,
        });
    }
    let n = s.order();
    let mut principal: Vec<Partition> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let p = Congruence::generated_by(s, &[(a, b)]).partition;
            if !principal.contains(&p) {
                principal.push(p);
            }
        }
    }
    let mut seen: HashSet<Partition> = HashSet::new();
    let mut out = vec![Partition::equality(n)];
    seen.insert(Partition::equality(n));
    let mut i = 0;
    while i < out.len() {
        let current = out[i].clone();
        for p in &principal {
            let j = current.join(p);
            if seen.insert(j.clone()) {
                out.push(j);
            }
        }
        i += 1;
    }
    out.sort();
    Ok(out
        .into_iter()
        .map(|partition| Congruence { partition })
        .collect())
}

/// Is `c` contained in every congruence whose quotient satisfies `predicate`?
pub fn is_minimum_with(
    s: &FiniteSemigroup,
    c: &Congruence,
    bound: usize,
    predicate: impl Fn(&FiniteSemigroup) -> bool,
) -> Result<bool, CongruenceError> {
    Ok(all_congruences(s, bound)?
        .iter()
        .filter(|sigma| predicate(&quotient(s, sigma).0))
        .all(|sigma| c.is_contained_in(sigma)))
}

/// An idempotent and a non-idempotent sharing a class, if any.
pub fn idempotent_purity_witness(s: &FiniteSemigroup, c: &Congruence) -> Option<(Elem, Elem)> {
    for class in c.partition().classes() {
        let idem = class.iter().copied().find(|&x| s.is_idempotent(x));
        let other = class.iter().copied().find(|&x| !s.is_idempotent(x));
        if let (Some(e), Some(x)) = (idem, other) {
            return Some((e, x));
        }
    }
    None
}

pub fn idempotent_pure_check(s: &FiniteSemigroup, c: &Congruence) -> bool {
    idempotent_purity_witness(s, c).is_none()
}

/// `s ↦ (ρ(s), λ(s))` into `S/ρ × S/λ`.
#[derive(Debug, Clone)]
pub struct SubdirectEmbedding {
    pub left_factor: FiniteSemigroup,
    pub right_factor: FiniteSemigroup,
    pub product: FiniteSemigroup,
    /// Image of each element; the pair `(i, j)` is `i * right_factor.order() + j`.
    pub map: Vec<usize>,
}

pub fn subdirect_embed(s: &FiniteSemigroup) -> Result<SubdirectEmbedding, CongruenceError> {
    let lr = lambda_rho(s)?;
    let (left_factor, rho_proj) = quotient(s, &lr.rho);
    let (right_factor, lambda_proj) = quotient(s, &lr.lambda);
    let product = left_factor.direct_product(&right_factor);
    let m = right_factor.order();
    let map: Vec<usize> = s
        .elements()
        .map(|x| rho_proj[x] * m + lambda_proj[x])
        .collect();

    let distinct: HashSet<usize> = map.iter().copied().collect();
    if distinct.len() != s.order() {
        return Err(CongruenceError::InternalTheoremViolation(
            "s -> (rho(s), lambda(s)) is not injective".into(),
        ));
    }
    if let Some((a, b)) = s.homomorphism_witness(&product, &map) {
        return Err(CongruenceError::InternalTheoremViolation(format!(
            "subdirect map is not multiplicative at ({a},{b})"
        )));
    }
    let left_hit: HashSet<usize> = map.iter().map(|&v| v / m).collect();
    let right_hit: HashSet<usize> = map.iter().map(|&v| v % m).collect();
    if left_hit.len() != left_factor.order() || right_hit.len() != m {
        return Err(CongruenceError::InternalTheoremViolation(
            "a coordinate projection is not surjective".into(),
        ));
    }
    Ok(SubdirectEmbedding {
        left_factor,
        right_factor,
        product,
        map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::examples::*;

    #[test]
    fn gamma_examples() {
        let i2 = symmetric_inverse_2();
        assert!(gamma(&i2).unwrap().partition().is_equality());

        let rz = right_zero(2);
        let g = gamma(&rz).unwrap();
        assert!(g.partition().is_full());
        assert_eq!(quotient(&rz, &g).0.order(), 1);

        let y = y3();
        let g = gamma(&y).unwrap();
        assert_eq!(g.to_string(), "0 1 | 2");
        assert!(crate::morphism::are_isomorphic(&quotient(&y, &g).0, &chain(2)));

        assert_eq!(gamma(&null(2)), Err(CongruenceError::NotOrthodox));
    }

    #[test]
    fn lambda_rho_examples() {
        let lr = lambda_rho(&symmetric_inverse_2()).unwrap();
        assert!(lr.lambda.partition().is_equality() && lr.rho.partition().is_equality());

        let lr = lambda_rho(&right_zero(2)).unwrap();
        assert!(lr.lambda.partition().is_equality());
        assert!(lr.rho.partition().is_full());

        let lr = lambda_rho(&left_zero(2)).unwrap();
        assert!(lr.lambda.partition().is_full());
        assert!(lr.rho.partition().is_equality());

        assert_eq!(
            lambda_rho(&null(3)),
            Err(CongruenceError::NotGeneralizedInverse)
        );
    }

    #[test]
    fn quotient_examples() {
        let i2 = symmetric_inverse_2();
        let (q, proj) = quotient(&i2, &Congruence::equality(&i2));
        assert!(q.same_table(&i2));
        assert_eq!(proj, (0..7).collect::<Vec<_>>());
        let (q, _) = quotient(&i2, &Congruence::full(&i2));
        assert_eq!(q.order(), 1);
    }

    #[test]
    fn non_congruence_is_rejected() {
        // merging 0 and 2 in the 3-chain separates their products with 1
        let s = chain(3);
        assert!(Congruence::new(&s, "0 2 | 1".parse().unwrap()).is_err());
        assert!(Congruence::new(&s, "0 1 | 2".parse().unwrap()).is_ok());
    }

    #[test]
    fn congruence_counts() {
        let b = DEFAULT_CONGRUENCE_BOUND;
        assert_eq!(all_congruences(&FiniteSemigroup::trivial(), b).unwrap().len(), 1);
        assert_eq!(all_congruences(&chain(2), b).unwrap().len(), 2);
        assert_eq!(all_congruences(&cyclic_group(2), b).unwrap().len(), 2);
        // every equivalence on a null semigroup is a congruence: Bell(4)
        assert_eq!(all_congruences(&null(4), b).unwrap().len(), 15);
        assert!(matches!(
            all_congruences(&null(9), b),
            Err(CongruenceError::OrderBoundExceeded { order: 9, bound: 8 })
        ));
    }

    #[test]
    fn minimality_examples() {
        let b = DEFAULT_CONGRUENCE_BOUND;
        let rz = right_zero(2);
        let g = gamma(&rz).unwrap();
        assert!(is_minimum_with(&rz, &g, b, |q| q.classify().inverse).unwrap());

        let y = y3();
        let lr = lambda_rho(&y).unwrap();
        assert!(is_minimum_with(&y, &lr.lambda, b, |q| q
            .classify()
            .right_generalized_inverse)
        .unwrap());

        let i2 = symmetric_inverse_2();
        assert!(is_minimum_with(&i2, &Congruence::equality(&i2), b, |q| q.classify().inverse).unwrap());
    }

    #[test]
    fn subdirect_examples() {
        let i2 = symmetric_inverse_2();
        let e = subdirect_embed(&i2).unwrap();
        assert_eq!(e.product.order(), 49);
        for s in i2.elements() {
            assert_eq!(e.map[s], s * 7 + s);
        }

        let e = subdirect_embed(&right_zero(2)).unwrap();
        assert_eq!(e.left_factor.order(), 1);
        assert!(e.right_factor.same_table(&right_zero(2)));

        let e = subdirect_embed(&y3()).unwrap();
        assert_eq!(e.right_factor.order(), 3);
        assert_eq!(e.left_factor.order(), 2);
    }

    #[test]
    fn idempotent_purity() {
        let y = y3();
        let lr = lambda_rho(&y).unwrap();
        assert!(idempotent_pure_check(&y, &lr.lambda));
        let i2 = symmetric_inverse_2();
        assert!(idempotent_pure_check(&i2, &lambda_rho(&i2).unwrap().lambda));
        // the full congruence on the 2-element group mixes nothing: single idempotent class
        let c2 = cyclic_group(2);
        assert_eq!(idempotent_purity_witness(&c2, &Congruence::full(&c2)), Some((0, 1)));
    }

    #[test]
    fn generated_congruence_is_a_congruence() {
        let s = symmetric_inverse_2();
        for a in s.elements() {
            for b in s.elements() {
                let c = Congruence::generated_by(&s, &[(a, b)]);
                assert!(Congruence::new(&s, c.partition().clone()).is_ok());
                assert!(c.related(a, b));
            }
        }
    }
}

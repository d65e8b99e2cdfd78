//! `M_ρ(X)`: partial functions on a finite set that respect an equivalence `ρ`.
//!
//! Functions are written on the right of their arguments, so `αβ` applies
//! `α` first: `(x)(αβ) = ((x)α)β`. Points of `X` are `0..n` internally and
//! printed 1-based.

use std::fmt;

use thiserror::Error;

use crate::morphism::find_embedding;
use crate::partition::{Partition, PartitionParseError};
use crate::semigroup::{Elem, FiniteSemigroup, SemigroupError};

/// Largest `|X|` built without an explicit bound.
pub const DEFAULT_SIZE_BOUND: usize = 4;

/// Largest carrier a domain bitset can hold.
const HARD_LIMIT: usize = 8;

#[derive(Debug, Error)]
pub enum MadhavanError {
    #[error("|X| = {size} exceeds the bound {bound}")]
    SizeBoundExceeded { size: usize, bound: usize },
    #[error("X must be non-empty")]
    EmptySet,
    #[error("bad partition: {0}")]
    Partition(String),
    #[error("semigroup is not right generalized inverse")]
    NotRightGeneralizedInverse,
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error("internal theorem violation: {0}")]
    InternalTheoremViolation(String),
}

impl From<PartitionParseError> for MadhavanError {
    fn from(e: PartitionParseError) -> Self {
        MadhavanError::Partition(e.to_string())
    }
}

/// An equivalence relation on `X = {0, …, n−1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhoRelation(Partition);

impl RhoRelation {
    pub fn new(p: Partition) -> Result<Self, MadhavanError> {
        if p.carrier_size() == 0 {
            return Err(MadhavanError::EmptySet);
        }
        Ok(RhoRelation(p))
    }

    pub fn equality(n: usize) -> Result<Self, MadhavanError> {
        Self::new(Partition::equality(n))
    }

    pub fn full(n: usize) -> Result<Self, MadhavanError> {
        Self::new(Partition::full(n))
    }

    /// Parses 1-based blocks such as `"1 2|3"` on `{1, …, size}`; points not
    /// mentioned are singletons.
    pub fn parse(size: usize, blocks: &str) -> Result<Self, MadhavanError> {
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut seen = vec![false; size];
        for chunk in blocks.split('|') {
            let mut class = Vec::new();
            for tok in chunk.split_whitespace() {
                let x: usize = tok
                    .parse()
                    .ok()
                    .filter(|&x| (1..=size).contains(&x))
                    .ok_or_else(|| MadhavanError::Partition(format!("{tok:?} is not a point of 1..={size}")))?;
                if std::mem::replace(&mut seen[x - 1], true) {
                    return Err(MadhavanError::Partition(format!("point {x} appears twice")));
                }
                class.push(x - 1);
            }
            if !class.is_empty() {
                classes.push(class);
            }
        }
        classes.extend((0..size).filter(|&x| !seen[x]).map(|x| vec![x]));
        Self::new(Partition::from_classes(size, &classes)?)
    }

    /// Every equivalence on an `n`-element set, in restricted-growth order.
    pub fn all(n: usize) -> Vec<RhoRelation> {
        fn grow(labels: &mut Vec<usize>, n: usize, out: &mut Vec<RhoRelation>) {
            if labels.len() == n {
                out.push(RhoRelation(Partition::from_labels(labels)));
                return;
            }
            let next = labels.iter().max().map_or(0, |&m| m + 1);
            for l in 0..=next {
                labels.push(l);
                grow(labels, n, out);
                labels.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            grow(&mut Vec::new(), n, &mut out);
        }
        out
    }

    pub fn size(&self) -> usize {
        self.0.carrier_size()
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.0.related(x, y)
    }

    pub fn partition(&self) -> &Partition {
        &self.0
    }
}

impl fmt::Display for RhoRelation {
    /// 1-based blocks, e.g. `1 2|3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .0
            .classes()
            .iter()
            .map(|c| c.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "{}", blocks.join("|"))
    }
}

/// A partial function on `0..n`: `domain` is a bitset and `images` lists
/// `(x)α` for the members of the domain in increasing order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartialFunction {
    pub domain: u32,
    pub images: Vec<usize>,
}

impl PartialFunction {
    pub fn from_values(values: &[Option<usize>]) -> Self {
        let mut domain = 0;
        let mut images = Vec::new();
        for (x, v) in values.iter().enumerate() {
            if let Some(y) = v {
                domain |= 1 << x;
                images.push(*y);
            }
        }
        PartialFunction { domain, images }
    }

    /// `(x)α` for every `x < n`.
    pub fn values(&self, n: usize) -> Vec<Option<usize>> {
        let mut it = self.images.iter();
        (0..n)
            .map(|x| (self.domain >> x & 1 == 1).then(|| *it.next().unwrap()))
            .collect()
    }

    pub fn in_domain(&self, x: usize) -> bool {
        self.domain >> x & 1 == 1
    }

    /// `αβ`: apply `self` first.
    pub fn then(&self, other: &PartialFunction, n: usize) -> PartialFunction {
        let b = other.values(n);
        let v: Vec<Option<usize>> = self.values(n).iter().map(|&y| y.and_then(|y| b[y])).collect();
        PartialFunction::from_values(&v)
    }

    /// Whitespace-free label: one symbol per point, `-` where undefined.
    pub fn label(&self, n: usize) -> String {
        let sep = if n > 9 { "," } else { "" };
        self.values(n)
            .iter()
            .map(|v| v.map_or("-".to_string(), |y| (y + 1).to_string()))
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// Readable form, e.g. `{1↦2, 3↦1}`.
    pub fn describe(&self, n: usize) -> String {
        let pairs: Vec<String> = self
            .values(n)
            .iter()
            .enumerate()
            .filter_map(|(x, v)| v.map(|y| format!("{}↦{}", x + 1, y + 1)))
            .collect();
        format!("{{{}}}", pairs.join(", "))
    }

    /// The three membership conditions of `M_ρ(X)`.
    pub fn respects(&self, rho: &RhoRelation) -> bool {
        let n = rho.size();
        let v = self.values(n);
        for x in 0..n {
            for y in 0..n {
                if rho.related(x, y) {
                    if v[x] != v[y] {
                        return false;
                    }
                } else if let (Some(a), Some(b)) = (v[x], v[y]) {
                    if rho.related(a, b) {
                        return false;
                    }
                }
            }
        }
        // the first condition already forces ρ-saturated domains
        true
    }
}

/// `M_ρ(X)` with its element decoding: element `i` is `elements[i]`.
#[derive(Debug, Clone)]
pub struct MRho {
    pub rho: RhoRelation,
    pub elements: Vec<PartialFunction>,
    pub semigroup: FiniteSemigroup,
}

impl MRho {
    pub fn size(&self) -> usize {
        self.rho.size()
    }

    pub fn index_of(&self, f: &PartialFunction) -> Option<Elem> {
        self.elements.binary_search(f).ok()
    }

    /// One line per element: `id label {x↦y, …}`.
    pub fn legend(&self) -> String {
        let n = self.size();
        self.elements
            .iter()
            .enumerate()
            .map(|(i, f)| format!("{i} {} {}\n", f.label(n), f.describe(n)))
            .collect()
    }
}

/// Builds `M_ρ(X)` for `|X| ≤ DEFAULT_SIZE_BOUND`.
pub fn build_m_rho(rho: &RhoRelation) -> Result<MRho, MadhavanError> {
    build_m_rho_bounded(rho, DEFAULT_SIZE_BOUND)
}

/// Enumerates every qualifying partial function, composes them, and checks
/// closure and that the result is right generalized inverse.
pub fn build_m_rho_bounded(rho: &RhoRelation, bound: usize) -> Result<MRho, MadhavanError> {
    let n = rho.size();
    if n > bound.min(HARD_LIMIT) {
        return Err(MadhavanError::SizeBoundExceeded {
            size: n,
            bound: bound.min(HARD_LIMIT),
        });
    }
    let mut elements = Vec::new();
    let mut values = vec![None; n];
    loop {
        let f = PartialFunction::from_values(&values);
        if f.respects(rho) {
            elements.push(f);
        }
        // odometer over {undefined, 0, …, n−1}^n
        let Some(i) = values.iter().position(|v| *v != Some(n - 1)) else {
            break;
        };
        values[i] = Some(values[i].map_or(0, |y| y + 1));
        values[..i].iter_mut().for_each(|v| *v = None);
    }
    elements.sort();

    let m = elements.len();
    let mut table = Vec::with_capacity(m * m);
    for a in &elements {
        for b in &elements {
            let ab = a.then(b, n);
            let Ok(i) = elements.binary_search(&ab) else {
                return Err(MadhavanError::InternalTheoremViolation(format!(
                    "{} then {} = {} leaves M_ρ(X)",
                    a.describe(n),
                    b.describe(n),
                    ab.describe(n)
                )));
            };
            table.push(i);
        }
    }
    let labels = elements.iter().map(|f| f.label(n)).collect();
    let semigroup = FiniteSemigroup::from_flat(m, table)?.with_labels(labels)?;
    if !semigroup.classify().right_generalized_inverse {
        return Err(MadhavanError::InternalTheoremViolation(format!(
            "M_ρ(X) for ρ = {rho} is not right generalized inverse"
        )));
    }
    Ok(MRho {
        rho: rho.clone(),
        elements,
        semigroup,
    })
}

/// Table idempotents coincide with `{α : x ρ (x)α on dom(α)}`.
pub fn idempotent_characterization_check(m: &MRho) -> bool {
    let n = m.size();
    m.elements.iter().enumerate().all(|(i, f)| {
        let by_rho = f
            .values(n)
            .iter()
            .enumerate()
            .all(|(x, v)| v.is_none_or(|y| m.rho.related(x, y)));
        by_rho == m.semigroup.is_idempotent(i)
    })
}

/// An embedding `S → M_ρ(X)` found by backtracking, verified injective and
/// multiplicative. `None` only says this particular `(X, ρ)` is too small.
pub fn embedding_search(s: &FiniteSemigroup, m: &MRho) -> Result<Option<Vec<Elem>>, MadhavanError> {
    if !s.classify().right_generalized_inverse {
        return Err(MadhavanError::NotRightGeneralizedInverse);
    }
    let t = &m.semigroup;
    if s.order() > t.order() || s.idempotents().len() > t.idempotents().len() {
        return Ok(None);
    }
    // E(S) must already embed in E(M)
    let es = s.subsemigroup(&s.idempotents()).expect("idempotents of an orthodox semigroup");
    let et = t.subsemigroup(&t.idempotents()).expect("idempotents of an orthodox semigroup");
    if find_embedding(&es, &et).is_none() {
        return Ok(None);
    }
    let Some(map) = find_embedding(s, t) else {
        return Ok(None);
    };
    let mut seen = vec![false; t.order()];
    if map.iter().any(|&i| std::mem::replace(&mut seen[i], true)) || !s.is_homomorphism(t, &map) {
        return Err(MadhavanError::InternalTheoremViolation("embedding search returned a non-embedding".into()));
    }
    Ok(Some(map))
}

/// The first `(X, ρ)` with `|X| ≤ max_size`, smallest `X` first, into which
/// `S` embeds.
pub fn embed_somewhere(s: &FiniteSemigroup, max_size: usize) -> Result<Option<(MRho, Vec<Elem>)>, MadhavanError> {
    for n in 1..=max_size {
        for rho in RhoRelation::all(n) {
            let m = build_m_rho_bounded(&rho, max_size)?;
            if let Some(map) = embedding_search(s, &m)? {
                return Ok(Some((m, map)));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphism::are_isomorphic;
    use crate::semigroup::examples::{chain, right_zero, symmetric_inverse_2};

    #[test]
    fn equality_on_two_points() {
        let m = build_m_rho(&RhoRelation::equality(2).unwrap()).unwrap();
        assert_eq!(m.semigroup.order(), 7);
        assert!(m.semigroup.classify().inverse);
        assert!(are_isomorphic(&m.semigroup, &symmetric_inverse_2()));
        assert!(idempotent_characterization_check(&m));
        let ids: Vec<String> = m.semigroup.idempotents().iter().map(|&e| m.elements[e].label(2)).collect();
        assert_eq!(ids, ["--", "1-", "-2", "12"]);
    }

    #[test]
    fn full_on_two_points() {
        let m = build_m_rho(&RhoRelation::full(2).unwrap()).unwrap();
        let labels: Vec<String> = m.elements.iter().map(|f| f.label(2)).collect();
        assert_eq!(labels, ["--", "11", "22"]);
        // c_i c_j = c_j, the empty map absorbs
        assert_eq!(m.semigroup.rows(), vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 1, 2]]);
        let c = m.semigroup.classify();
        assert!(c.band && c.right_normal);
        assert_eq!(m.semigroup.idempotents().len(), 3);
        assert!(idempotent_characterization_check(&m));
    }

    #[test]
    fn one_point() {
        let m = build_m_rho(&RhoRelation::equality(1).unwrap()).unwrap();
        assert_eq!(m.semigroup.order(), 2);
    }

    #[test]
    fn every_relation_up_to_three_points() {
        let counts: Vec<usize> = (1..=4).map(|n| RhoRelation::all(n).len()).collect();
        assert_eq!(counts, [1, 2, 5, 15]);
        for n in 1..=3 {
            for rho in RhoRelation::all(n) {
                let m = build_m_rho(&rho).unwrap();
                assert!(idempotent_characterization_check(&m), "{rho}");
            }
        }
    }

    #[test]
    fn size_bound() {
        let rho = RhoRelation::equality(5).unwrap();
        assert!(matches!(build_m_rho(&rho), Err(MadhavanError::SizeBoundExceeded { size: 5, bound: 4 })));
        assert!(RhoRelation::equality(0).is_err());
    }

    #[test]
    fn parse_blocks() {
        let rho = RhoRelation::parse(3, "1 2|3").unwrap();
        assert_eq!(rho.to_string(), "1 2|3");
        assert_eq!(RhoRelation::parse(3, "2 3").unwrap().to_string(), "1|2 3");
        assert!(RhoRelation::parse(2, "1 3").is_err());
        assert!(RhoRelation::parse(2, "1|1").is_err());
    }

    #[test]
    fn embeddings() {
        let full = build_m_rho(&RhoRelation::full(2).unwrap()).unwrap();
        let map = embedding_search(&right_zero(2), &full).unwrap().unwrap();
        let mut img = map.clone();
        img.sort();
        assert_eq!(img, [1, 2]);

        let eq = build_m_rho(&RhoRelation::equality(2).unwrap()).unwrap();
        assert!(embedding_search(&chain(2), &eq).unwrap().is_some());
        let map = embedding_search(&symmetric_inverse_2(), &eq).unwrap().unwrap();
        assert!(symmetric_inverse_2().is_homomorphism(&eq.semigroup, &map));

        // RZ2 has two idempotents that do not commute; M for equality is inverse
        assert!(embedding_search(&right_zero(2), &eq).unwrap().is_none());
        assert!(matches!(
            embedding_search(&crate::semigroup::examples::left_zero(2), &eq),
            Err(MadhavanError::NotRightGeneralizedInverse)
        ));
    }

    #[test]
    fn embed_in_smallest() {
        let (m, _) = embed_somewhere(&right_zero(3), 3).unwrap().unwrap();
        assert_eq!(m.size(), 3);
        assert!(m.rho.partition().is_full());
    }
}

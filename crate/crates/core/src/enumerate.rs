//! Exhaustive enumeration of small semigroups up to isomorphism.
//!
//! Tables are filled cell by cell in row-major order. Setting a cell touches
//! every associativity equation that reads it: an equation with both sides
//! known must agree, and one with a single known side forces the other cell. Isomorphism reduction uses the least relabeled table for order
//! ≤ 4 and invariant bucketing with an explicit isomorphism check above that.

use std::collections::HashMap;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::morphism::{are_isomorphic, canonical_table, invariant_key};
use crate::semigroup::{Classification, FiniteSemigroup};

/// Default largest order for unrestricted enumeration.
pub const DEFAULT_MAX_ORDER: usize = 5;
/// Default largest order when the class implies a band.
pub const DEFAULT_MAX_BAND_ORDER: usize = 6;

const UNSET: u8 = u8::MAX;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnumerationError {
    #[error("order {order} exceeds the enumeration bound {bound}")]
    OrderBoundExceeded { order: usize, bound: usize },
    #[error("order must be positive")]
    ZeroOrder,
    #[error("unknown semigroup class {0:?}")]
    UnknownClass(String),
}

/// Class predicates available as enumeration filters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SemigroupClass {
    All,
    Regular,
    Orthodox,
    Inverse,
    Band,
    NormalBand,
    LeftNormalBand,
    RightNormalBand,
    Semilattice,
    GeneralizedInverse,
    LeftGeneralizedInverse,
    RightGeneralizedInverse,
}

impl SemigroupClass {
    pub const ALL: [SemigroupClass; 12] = [
        SemigroupClass::All,
        SemigroupClass::Regular,
        SemigroupClass::Orthodox,
        SemigroupClass::Inverse,
        SemigroupClass::Band,
        SemigroupClass::NormalBand,
        SemigroupClass::LeftNormalBand,
        SemigroupClass::RightNormalBand,
        SemigroupClass::Semilattice,
        SemigroupClass::GeneralizedInverse,
        SemigroupClass::LeftGeneralizedInverse,
        SemigroupClass::RightGeneralizedInverse,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SemigroupClass::All => "all",
            SemigroupClass::Regular => "regular",
            SemigroupClass::Orthodox => "orthodox",
            SemigroupClass::Inverse => "inverse",
            SemigroupClass::Band => "band",
            SemigroupClass::NormalBand => "normal-band",
            SemigroupClass::LeftNormalBand => "left-normal-band",
            SemigroupClass::RightNormalBand => "right-normal-band",
            SemigroupClass::Semilattice => "semilattice",
            SemigroupClass::GeneralizedInverse => "generalized-inverse",
            SemigroupClass::LeftGeneralizedInverse => "left-generalized-inverse",
            SemigroupClass::RightGeneralizedInverse => "right-generalized-inverse",
        }
    }

    pub fn is_band_class(self) -> bool {
        matches!(
            self,
            SemigroupClass::Band
                | SemigroupClass::NormalBand
                | SemigroupClass::LeftNormalBand
                | SemigroupClass::RightNormalBand
                | SemigroupClass::Semilattice
        )
    }

    pub fn admits(self, c: &Classification) -> bool {
        match self {
            SemigroupClass::All => true,
            SemigroupClass::Regular => c.regular,
            SemigroupClass::Orthodox => c.orthodox,
            SemigroupClass::Inverse => c.inverse,
            SemigroupClass::Band => c.band,
            SemigroupClass::NormalBand => c.band && c.normal,
            SemigroupClass::LeftNormalBand => c.band && c.left_normal,
            SemigroupClass::RightNormalBand => c.band && c.right_normal,
            SemigroupClass::Semilattice => c.band && c.left_normal && c.right_normal,
            SemigroupClass::GeneralizedInverse => c.generalized_inverse,
            SemigroupClass::LeftGeneralizedInverse => c.left_generalized_inverse,
            SemigroupClass::RightGeneralizedInverse => c.right_generalized_inverse,
        }
    }
}

impl FromStr for SemigroupClass {
    type Err = EnumerationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.to_ascii_lowercase().replace('_', "-");
        let alias = match norm.as_str() {
            "gi" => "generalized-inverse",
            "left-gi" => "left-generalized-inverse",
            "right-gi" => "right-generalized-inverse",
            other => other,
        };
        SemigroupClass::ALL
            .into_iter()
            .find(|c| c.name() == alias)
            .ok_or_else(|| EnumerationError::UnknownClass(s.to_string()))
    }
}

/// Enumeration bounds; the band bound applies to band-implying classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationLimits {
    pub max_order: usize,
    pub max_band_order: usize,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits {
            max_order: DEFAULT_MAX_ORDER,
            max_band_order: DEFAULT_MAX_BAND_ORDER,
        }
    }
}

struct Filler<'f> {
    n: usize,
    table: Vec<u8>,
    trail: Vec<usize>,
    queue: Vec<(usize, u8)>,
    visit: &'f mut dyn FnMut(&[u8]),
}

impl Filler<'_> {
    #[inline]
    fn get(&self, a: usize, b: usize) -> u8 {
        self.table[a * self.n + b]
    }

    /// Both sides of `(xy)z = x(yz)` given as cells `(xy, z)` and `(x, yz)`;
    /// a defined side forces an undefined one.
    #[inline]
    fn equate(&mut self, l: (usize, usize), r: (usize, usize)) -> bool {
        let lv = self.get(l.0, l.1);
        let rv = self.get(r.0, r.1);
        match (lv == UNSET, rv == UNSET) {
            (false, false) => lv == rv,
            (true, false) => {
                self.queue.push((l.0 * self.n + l.1, rv));
                true
            }
            (false, true) => {
                self.queue.push((r.0 * self.n + r.1, lv));
                true
            }
            (true, true) => true,
        }
    }

    /// Sets a cell and propagates every forced product; `false` on conflict.
    /// Cells set here are recorded on the trail for [`Filler::undo`].
    fn assign(&mut self, cell: usize, v: u8) -> bool {
        let n = self.n;
        self.queue.clear();
        self.queue.push((cell, v));
        while let Some((c, v)) = self.queue.pop() {
            let cur = self.table[c];
            if cur != UNSET {
                if cur != v {
                    return false;
                }
                continue;
            }
            self.table[c] = v;
            self.trail.push(c);
            let (a, b) = (c / n, c % n);
            let v = v as usize;
            for z in 0..n {
                // (ab)z = a(bz)
                let bz = self.get(b, z);
                if bz != UNSET && !self.equate((v, z), (a, bz as usize)) {
                    return false;
                }
                // (za)b = z(ab)
                let za = self.get(z, a);
                if za != UNSET && !self.equate((za as usize, b), (z, v)) {
                    return false;
                }
            }
            for x in 0..n {
                for y in 0..n {
                    let xy = self.get(x, y) as usize;
                    // (xy)b = x(yb) with xy = a
                    if xy == a {
                        let yb = self.get(y, b);
                        if yb != UNSET && !self.equate((a, b), (x, yb as usize)) {
                            return false;
                        }
                    }
                    // (ax)y = a(xy) with xy = b
                    if xy == b {
                        let ax = self.get(a, x);
                        if ax != UNSET && !self.equate((ax as usize, y), (a, b)) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let c = self.trail.pop().unwrap();
            self.table[c] = UNSET;
        }
    }

    fn fill(&mut self) {
        let Some(cell) = self.table.iter().position(|&v| v == UNSET) else {
            (self.visit)(&self.table);
            return;
        };
        for v in 0..self.n as u8 {
            let mark = self.trail.len();
            if self.assign(cell, v) {
                self.fill();
            }
            self.undo(mark);
        }
    }
}

/// Visits every associative table on `0..n` (labeled, not reduced).
/// With `idempotent_diagonal`, only tables with `aa = a` are produced.
pub fn for_each_labeled(n: usize, idempotent_diagonal: bool, mut visit: impl FnMut(&[u8])) {
    if n == 0 {
        return;
    }
    let mut filler = Filler {
        n,
        table: vec![UNSET; n * n],
        trail: Vec::new(),
        queue: Vec::new(),
        visit: &mut visit,
    };
    if idempotent_diagonal {
        for a in 0..n {
            if !filler.assign(a * n + a, a as u8) {
                return;
            }
        }
    }
    filler.fill();
}

fn to_semigroup(n: usize, table: &[u8]) -> FiniteSemigroup {
    FiniteSemigroup::from_flat_unchecked(n, table.iter().map(|&v| v as usize).collect())
}

/// Collects representatives of isomorphism classes, in order of first appearance.
#[derive(Default)]
pub struct IsoReducer {
    canonical: HashMap<Vec<usize>, usize>,
    buckets: HashMap<Vec<crate::morphism::ElementSignature>, Vec<usize>>,
    members: Vec<FiniteSemigroup>,
}

impl IsoReducer {
    pub fn new() -> Self {
        IsoReducer::default()
    }

    /// Adds `s` unless an isomorphic copy is present; returns whether it was new.
    pub fn insert(&mut self, s: FiniteSemigroup) -> bool {
        if s.order() <= 4 {
            let key = canonical_table(&s);
            if self.canonical.contains_key(&key) {
                return false;
            }
            self.canonical.insert(key, self.members.len());
            self.members.push(s);
            return true;
        }
        let key = invariant_key(&s);
        let bucket = self.buckets.entry(key).or_default();
        if bucket.iter().any(|&i| are_isomorphic(&self.members[i], &s)) {
            return false;
        }
        bucket.push(self.members.len());
        self.members.push(s);
        true
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn into_members(self) -> Vec<FiniteSemigroup> {
        self.members
    }
}

/// All semigroups of order `n` in `class`, one per isomorphism class.
///
/// Orders up to `limits.max_order` enumerate every table and filter afterwards;
/// band classes may go up to `limits.max_band_order`, where orders beyond
/// `max_order` enumerate idempotent-diagonal tables only.
pub fn enumerate_semigroups(
    n: usize,
    class: SemigroupClass,
    limits: EnumerationLimits,
) -> Result<Vec<FiniteSemigroup>, EnumerationError> {
    if n == 0 {
        return Err(EnumerationError::ZeroOrder);
    }
    let bound = if class.is_band_class() {
        limits.max_band_order.max(limits.max_order)
    } else {
        limits.max_order
    };
    if n > bound {
        return Err(EnumerationError::OrderBoundExceeded { order: n, bound });
    }
    let diagonal_only = class.is_band_class() && n > limits.max_order;
    let mut reducer = IsoReducer::new();
    for_each_labeled(n, diagonal_only, |t| {
        let s = to_semigroup(n, t);
        if class == SemigroupClass::All || class.admits(&s.classify()) {
            reducer.insert(s);
        }
    });
    Ok(reducer.into_members())
}

/// All semigroups in `class` with order `1..=max`.
pub fn enumerate_up_to(
    max: usize,
    class: SemigroupClass,
    limits: EnumerationLimits,
) -> Result<Vec<FiniteSemigroup>, EnumerationError> {
    let mut out = Vec::new();
    for n in 1..=max {
        out.extend(enumerate_semigroups(n, class, limits)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(n: usize, class: SemigroupClass) -> usize {
        enumerate_semigroups(n, class, EnumerationLimits::default())
            .unwrap()
            .len()
    }

    #[test]
    fn labeled_counts() {
        // independently: 1 and 8 associative tables among 1 and 16 candidates
        let mut k = 0;
        for_each_labeled(1, false, |_| k += 1);
        assert_eq!(k, 1);
        k = 0;
        for_each_labeled(2, false, |_| k += 1);
        assert_eq!(k, 8);
    }

    #[test]
    fn small_orders_up_to_isomorphism() {
        assert_eq!(count(1, SemigroupClass::All), 1);
        assert_eq!(count(2, SemigroupClass::All), 5);
        assert_eq!(count(3, SemigroupClass::All), 24);
    }

    #[test]
    fn members_are_valid_and_pairwise_non_isomorphic() {
        let all = enumerate_semigroups(3, SemigroupClass::All, EnumerationLimits::default()).unwrap();
        for (i, a) in all.iter().enumerate() {
            assert!(FiniteSemigroup::from_flat(3, a.flat_table().to_vec()).is_ok());
            for b in &all[i + 1..] {
                assert!(!are_isomorphic(a, b));
            }
        }
    }

    #[test]
    fn band_filter_matches_idempotent_only_enumeration() {
        for n in 1..=4 {
            let filtered = count(n, SemigroupClass::Band);
            let mut reducer = IsoReducer::new();
            for_each_labeled(n, true, |t| {
                reducer.insert(to_semigroup(n, t));
            });
            assert_eq!(filtered, reducer.len(), "order {n}");
        }
    }

    #[test]
    fn bounds() {
        let limits = EnumerationLimits::default();
        assert_eq!(
            enumerate_semigroups(6, SemigroupClass::All, limits),
            Err(EnumerationError::OrderBoundExceeded { order: 6, bound: 5 })
        );
        assert_eq!(
            enumerate_semigroups(7, SemigroupClass::Band, limits),
            Err(EnumerationError::OrderBoundExceeded { order: 7, bound: 6 })
        );
        assert_eq!(
            enumerate_semigroups(0, SemigroupClass::All, limits),
            Err(EnumerationError::ZeroOrder)
        );
    }

    #[test]
    fn class_names_round_trip() {
        for c in SemigroupClass::ALL {
            assert_eq!(c.name().parse::<SemigroupClass>().unwrap(), c);
        }
        assert_eq!("right-gi".parse(), Ok(SemigroupClass::RightGeneralizedInverse));
        assert!("monoid".parse::<SemigroupClass>().is_err());
    }
}

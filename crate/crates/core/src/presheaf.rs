//! Presheaves of sets over finite meet semilattices and their right normal
//! bands.
//!
//! A presheaf lives on a carrier `0..m`; the support map assigns each element
//! its index in the base semilattice, and restrictions are stored in a dense
//! `m × k` table with `None` wherever `f ≰ p(x)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::semigroup::{Elem, FiniteSemigroup, SemigroupError};

#[derive(Debug, Error)]
pub enum PresheafError {
    #[error("meet table: {0}")]
    Semilattice(#[from] SemigroupError),
    #[error("meet is not commutative: {a}∧{b} ≠ {b}∧{a}")]
    MeetNotCommutative { a: usize, b: usize },
    #[error("meet is not idempotent at {0}")]
    MeetNotIdempotent(usize),
    #[error("index {index} is outside the base semilattice of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("element {elem} is listed in more than one fiber")]
    ElementInTwoFibers { elem: Elem },
    #[error("element {elem} belongs to no fiber")]
    ElementMissing { elem: Elem },
    #[error("restriction of {elem} to index {index} is missing")]
    MissingRestriction { elem: Elem, index: usize },
    #[error("restriction of {elem} to index {index} given but {index} is not below its support")]
    UnexpectedRestriction { elem: Elem, index: usize },
    #[error("restriction of {elem} to index {index} lands on {image}, outside that fiber")]
    RestrictionOutsideFiber { elem: Elem, index: usize, image: Elem },
    #[error("restriction key {0:?} is malformed or not a pair e > f")]
    BadRestrictionKey(String),
    #[error("restriction {key} has {got} images for a fiber of size {expected}")]
    RestrictionLength { key: String, expected: usize, got: usize },
    #[error("identity law fails at {elem}")]
    IdentityLawViolated { elem: Elem },
    #[error("composition law fails for {elem} along {e} ≥ {f} ≥ {g}")]
    CompositionLawViolated { e: usize, f: usize, g: usize, elem: Elem },
    #[error("not a right normal band")]
    NotRightNormalBand,
    #[error("map is not a homomorphism: fails at ({a}, {b})")]
    NotHomomorphism { a: Elem, b: Elem },
    #[error("map has length {got}, expected {expected}")]
    MapLength { expected: usize, got: usize },
    #[error("not a presheaf morphism: {0}")]
    NotAPresheafMorphism(String),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("internal theorem violation: {0}")]
    InternalTheoremViolation(String),
}

/// A finite meet semilattice given by its meet table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MeetSemilattice {
    order: usize,
    meet: Vec<usize>,
}

impl MeetSemilattice {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self, PresheafError> {
        Self::from_semigroup(&FiniteSemigroup::new(rows)?)
    }

    pub fn from_flat(order: usize, meet: Vec<usize>) -> Result<Self, PresheafError> {
        Self::from_semigroup(&FiniteSemigroup::from_flat(order, meet)?)
    }

    /// Accepts a commutative band.
    pub fn from_semigroup(s: &FiniteSemigroup) -> Result<Self, PresheafError> {
        for a in s.elements() {
            if s.mul(a, a) != a {
                return Err(PresheafError::MeetNotIdempotent(a));
            }
            for b in a + 1..s.order() {
                if s.mul(a, b) != s.mul(b, a) {
                    return Err(PresheafError::MeetNotCommutative { a, b });
                }
            }
        }
        Ok(MeetSemilattice {
            order: s.order(),
            meet: s.flat_table().to_vec(),
        })
    }

    /// The chain `0 < 1 < … < n−1`.
    pub fn chain(n: usize) -> Self {
        let meet = (0..n * n).map(|i| (i / n).min(i % n)).collect();
        MeetSemilattice { order: n, meet }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    #[inline]
    pub fn meet(&self, e: usize, f: usize) -> usize {
        self.meet[e * self.order + f]
    }

    /// `e ≤ f` iff `e ∧ f = e`.
    #[inline]
    pub fn leq(&self, e: usize, f: usize) -> bool {
        self.meet(e, f) == e
    }

    pub fn as_semigroup(&self) -> FiniteSemigroup {
        FiniteSemigroup::from_flat_unchecked(self.order, self.meet.clone())
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.meet.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    /// Pairs `(e, f)` with `f < e` and nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for e in self.elements() {
            for f in self.elements() {
                if f == e || !self.leq(f, e) {
                    continue;
                }
                let between = self
                    .elements()
                    .any(|g| g != e && g != f && self.leq(f, g) && self.leq(g, e));
                if !between {
                    out.push((e, f));
                }
            }
        }
        out
    }

    pub fn is_homomorphism_to(&self, other: &MeetSemilattice, map: &[usize]) -> bool {
        map.len() == self.order
            && map.iter().all(|&m| m < other.order)
            && self.elements().all(|a| {
                self.elements()
                    .all(|b| map[self.meet(a, b)] == other.meet(map[a], map[b]))
            })
    }
}

/// A presheaf of sets `X → E`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presheaf {
    base: MeetSemilattice,
    support: Vec<usize>,
    restrict: Vec<Option<Elem>>,
}

impl Presheaf {
    /// Validates a dense restriction table indexed by `x * k + f`.
    pub fn from_table(
        base: MeetSemilattice,
        support: Vec<usize>,
        restrict: Vec<Option<Elem>>,
    ) -> Result<Self, PresheafError> {
        let k = base.order();
        let m = support.len();
        if restrict.len() != m * k {
            return Err(PresheafError::MapLength {
                expected: m * k,
                got: restrict.len(),
            });
        }
        if let Some(&index) = support.iter().find(|&&e| e >= k) {
            return Err(PresheafError::IndexOutOfRange { index, order: k });
        }
        for x in 0..m {
            for f in 0..k {
                match (base.leq(f, support[x]), restrict[x * k + f]) {
                    (true, None) => return Err(PresheafError::MissingRestriction { elem: x, index: f }),
                    (false, Some(_)) => {
                        return Err(PresheafError::UnexpectedRestriction { elem: x, index: f })
                    }
                    (true, Some(image)) if image >= m || support[image] != f => {
                        return Err(PresheafError::RestrictionOutsideFiber { elem: x, index: f, image })
                    }
                    _ => {}
                }
            }
        }
        let p = Presheaf {
            base,
            support,
            restrict,
        };
        p.check_laws()?;
        Ok(p)
    }

    fn check_laws(&self) -> Result<(), PresheafError> {
        for x in self.elements() {
            let e = self.support[x];
            if self.restrict(x, e) != Some(x) {
                return Err(PresheafError::IdentityLawViolated { elem: x });
            }
            for f in self.base.elements().filter(|&f| self.base.leq(f, e)) {
                let xf = self.restrict(x, f).unwrap();
                for g in self.base.elements().filter(|&g| self.base.leq(g, f)) {
                    if self.restrict(xf, g) != self.restrict(x, g) {
                        return Err(PresheafError::CompositionLawViolated { e, f, g, elem: x });
                    }
                }
            }
        }
        Ok(())
    }

    /// Builds a presheaf from fibers and restriction maps for pairs `e > f`.
    ///
    /// `fibers[e]` lists the elements over `e`; together they must cover
    /// `0..m` exactly once. `restrictions[(e, f)]` gives the image of each
    /// member of `fibers[e]`, in the listed order. Covering pairs with a
    /// nonempty source fiber are required; other pairs are derived by
    /// composition, and any that are given are checked against it.
    pub fn from_restrictions(
        base: MeetSemilattice,
        fibers: &[Vec<Elem>],
        restrictions: &BTreeMap<(usize, usize), Vec<Elem>>,
    ) -> Result<Self, PresheafError> {
        let k = base.order();
        if fibers.len() != k {
            return Err(PresheafError::MapLength {
                expected: k,
                got: fibers.len(),
            });
        }
        let m: usize = fibers.iter().map(Vec::len).sum();
        let mut support = vec![usize::MAX; m];
        for (e, fiber) in fibers.iter().enumerate() {
            for &x in fiber {
                if x >= m {
                    return Err(PresheafError::ElementMissing { elem: m.min(x) });
                }
                if support[x] != usize::MAX {
                    return Err(PresheafError::ElementInTwoFibers { elem: x });
                }
                support[x] = e;
            }
        }
        if let Some(x) = support.iter().position(|&e| e == usize::MAX) {
            return Err(PresheafError::ElementMissing { elem: x });
        }

        let mut table = vec![None; m * k];
        for x in 0..m {
            table[x * k + support[x]] = Some(x);
        }
        for (&(e, f), images) in restrictions {
            let key = format!("{e}>{f}");
            if e >= k || f >= k || e == f || !base.leq(f, e) {
                return Err(PresheafError::BadRestrictionKey(key));
            }
            if images.len() != fibers[e].len() {
                return Err(PresheafError::RestrictionLength {
                    key,
                    expected: fibers[e].len(),
                    got: images.len(),
                });
            }
            for (&x, &y) in fibers[e].iter().zip(images) {
                if y >= m || support[y] != f {
                    return Err(PresheafError::RestrictionOutsideFiber { elem: x, index: f, image: y });
                }
                table[x * k + f] = Some(y);
            }
        }
        for (e, f) in base.covers() {
            if let Some(&x) = fibers[e].first() {
                if table[x * k + f].is_none() {
                    return Err(PresheafError::MissingRestriction { elem: x, index: f });
                }
            }
        }
        // Fill the remaining entries by stepping down one given restriction at
        // a time; lower targets are reached through the filled images.
        for x in 0..m {
            for f in 0..k {
                if table[x * k + f].is_none() && base.leq(f, support[x]) {
                    let y = compose_down(&base, &support, &mut table, x, f);
                    table[x * k + f] = y;
                }
            }
        }
        Presheaf::from_table(base, support, table)
    }

    pub fn base(&self) -> &MeetSemilattice {
        &self.base
    }

    pub fn carrier_size(&self) -> usize {
        self.support.len()
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.support.len()
    }

    #[inline]
    pub fn support(&self, x: Elem) -> usize {
        self.support[x]
    }

    pub fn support_map(&self) -> &[usize] {
        &self.support
    }

    /// `x|_f`, defined when `f ≤ p(x)`.
    #[inline]
    pub fn restrict(&self, x: Elem, f: usize) -> Option<Elem> {
        self.restrict[x * self.base.order() + f]
    }

    pub fn restriction_table(&self) -> &[Option<Elem>] {
        &self.restrict
    }

    pub fn fiber(&self, e: usize) -> Vec<Elem> {
        self.elements().filter(|&x| self.support[x] == e).collect()
    }

    pub fn fibers(&self) -> Vec<Vec<Elem>> {
        self.base.elements().map(|e| self.fiber(e)).collect()
    }

    pub fn has_global_support(&self) -> bool {
        let mut hit = vec![false; self.base.order()];
        for &e in &self.support {
            hit[e] = true;
        }
        hit.into_iter().all(|b| b)
    }

    /// `x ∘ y = y|_{p(x) ∧ p(y)}`.
    pub fn circ(&self, x: Elem, y: Elem) -> Elem {
        let f = self.base.meet(self.support[x], self.support[y]);
        self.restrict(y, f).expect("meet lies below p(y)")
    }

    /// The right normal band `(X, ∘)`.
    pub fn to_band(&self) -> Result<FiniteSemigroup, PresheafError> {
        let m = self.carrier_size();
        let table = (0..m * m).map(|i| self.circ(i / m, i % m)).collect();
        let b = FiniteSemigroup::from_flat(m, table).map_err(|e| {
            PresheafError::InternalTheoremViolation(format!("circle product: {e}"))
        })?;
        for e in b.elements() {
            if b.mul(e, e) != e {
                return Err(PresheafError::InternalTheoremViolation(format!(
                    "circle product is not idempotent at {e}"
                )));
            }
            for f in b.elements() {
                for g in b.elements() {
                    if b.mul(b.mul(e, f), g) != b.mul(b.mul(f, e), g) {
                        return Err(PresheafError::InternalTheoremViolation(format!(
                            "efg ≠ feg at ({e}, {f}, {g})"
                        )));
                    }
                }
            }
        }
        Ok(b)
    }

    /// The same presheaf over an isomorphic base, with `index_map[e]` the new
    /// name of index `e`.
    pub fn reindex(&self, base: MeetSemilattice, index_map: &[usize]) -> Result<Self, PresheafError> {
        let k = self.base.order();
        if base.order() != k || !is_bijection(index_map, k) || !self.base.is_homomorphism_to(&base, index_map) {
            return Err(PresheafError::NotAPresheafMorphism(
                "index map is not a semilattice isomorphism".into(),
            ));
        }
        let support = self.support.iter().map(|&e| index_map[e]).collect();
        let mut table = vec![None; self.restrict.len()];
        for x in self.elements() {
            for f in 0..k {
                table[x * k + index_map[f]] = self.restrict(x, f);
            }
        }
        Presheaf::from_table(base, support, table)
    }

    pub fn to_json(&self) -> PresheafJson {
        let k = self.base.order();
        let fibers = self.fibers();
        let restrictions = self
            .base
            .covers()
            .into_iter()
            .filter(|&(e, _)| !fibers[e].is_empty())
            .map(|(e, f)| {
                let images = fibers[e].iter().map(|&x| self.restrict[x * k + f].unwrap()).collect();
                (format!("{e}>{f}"), images)
            })
            .collect();
        PresheafJson {
            semilattice: SemilatticeJson {
                order: k,
                meet: self.base.rows(),
            },
            fibers,
            restrictions,
        }
    }
}

fn compose_down(
    base: &MeetSemilattice,
    support: &[usize],
    table: &mut [Option<Elem>],
    x: Elem,
    f: usize,
) -> Option<Elem> {
    let k = base.order();
    if let Some(y) = table[x * k + f] {
        return Some(y);
    }
    let e = support[x];
    // any known step e > g ≥ f; g is strictly below e so this terminates
    let g = base
        .elements()
        .find(|&g| g != e && base.leq(f, g) && base.leq(g, e) && table[x * k + g].is_some())?;
    let y = table[x * k + g].unwrap();
    let z = compose_down(base, support, table, y, f)?;
    table[x * k + f] = Some(z);
    Some(z)
}

fn is_bijection(map: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    map.len() == n
        && map.iter().all(|&v| v < n && !std::mem::replace(&mut seen[v], true))
}

/// JSON document form of a presheaf.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PresheafJson {
    pub semilattice: SemilatticeJson,
    pub fibers: Vec<Vec<Elem>>,
    /// Keys `"e>f"`; values list the image of each member of fiber `e`.
    #[serde(default)]
    pub restrictions: BTreeMap<String, Vec<Elem>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SemilatticeJson {
    pub order: usize,
    pub meet: Vec<Vec<usize>>,
}

impl PresheafJson {
    pub fn into_presheaf(self) -> Result<Presheaf, PresheafError> {
        if self.semilattice.meet.len() != self.semilattice.order {
            return Err(PresheafError::MapLength {
                expected: self.semilattice.order,
                got: self.semilattice.meet.len(),
            });
        }
        let base = MeetSemilattice::new(self.semilattice.meet)?;
        let mut restrictions = BTreeMap::new();
        for (key, images) in self.restrictions {
            let pair = key
                .split_once('>')
                .and_then(|(e, f)| Some((e.trim().parse().ok()?, f.trim().parse().ok()?)))
                .ok_or_else(|| PresheafError::BadRestrictionKey(key.clone()))?;
            restrictions.insert(pair, images);
        }
        Presheaf::from_restrictions(base, &self.fibers, &restrictions)
    }
}

pub fn parse_presheaf(text: &str) -> Result<Presheaf, PresheafError> {
    serde_json::from_str::<PresheafJson>(text)?.into_presheaf()
}

/// The presheaf of 𝓡-classes of a right normal band. Elements keep their
/// identifiers; index `i` is the `i`-th 𝓡-class ordered by least member, and
/// `x|_[f] = fx`.
pub fn band_to_presheaf(b: &FiniteSemigroup) -> Result<Presheaf, PresheafError> {
    let c = b.classify();
    if !(c.band && c.right_normal) {
        return Err(PresheafError::NotRightNormalBand);
    }
    let r = b.green_r();
    let reps = r.representatives();
    let k = r.num_classes();
    let meet = (0..k * k)
        .map(|i| r.class_of(b.mul(reps[i / k], reps[i % k])))
        .collect();
    let base = MeetSemilattice::from_flat(k, meet)
        .map_err(|e| PresheafError::InternalTheoremViolation(format!("B/R is not a semilattice: {e}")))?;
    let classes = r.classes();
    let mut table = vec![None; b.order() * k];
    for x in b.elements() {
        for f in 0..k {
            if !base.leq(f, r.class_of(x)) {
                continue;
            }
            let image = b.mul(reps[f], x);
            if let Some(&f2) = classes[f].iter().find(|&&f2| b.mul(f2, x) != image) {
                return Err(PresheafError::InternalTheoremViolation(format!(
                    "restriction of {x} depends on the representative: {}·{x} ≠ {f2}·{x}",
                    reps[f]
                )));
            }
            table[x * k + f] = Some(image);
        }
    }
    let support = b.elements().map(|x| r.class_of(x)).collect();
    Presheaf::from_table(base, support, table)
        .map_err(|e| PresheafError::InternalTheoremViolation(format!("band presheaf: {e}")))
}

/// A morphism of presheaves `(α, β)`: `β` a semilattice homomorphism,
/// `q α = β p` and `α(x|_f) = α(x)|_{β(f)}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresheafMorphism {
    pub element_map: Vec<Elem>,
    pub index_map: Vec<usize>,
}

impl PresheafMorphism {
    pub fn identity(p: &Presheaf) -> Self {
        PresheafMorphism {
            element_map: p.elements().collect(),
            index_map: p.base().elements().collect(),
        }
    }

    pub fn verify(&self, src: &Presheaf, tgt: &Presheaf) -> Result<(), PresheafError> {
        let bad = |m: String| Err(PresheafError::NotAPresheafMorphism(m));
        if self.element_map.len() != src.carrier_size()
            || self.element_map.iter().any(|&y| y >= tgt.carrier_size())
        {
            return bad("element map has the wrong shape".into());
        }
        if !src.base().is_homomorphism_to(tgt.base(), &self.index_map) {
            return bad("index map is not a semilattice homomorphism".into());
        }
        for x in src.elements() {
            let ax = self.element_map[x];
            if tgt.support(ax) != self.index_map[src.support(x)] {
                return bad(format!("support of the image of {x} is wrong"));
            }
            for f in src.base().elements() {
                if let Some(xf) = src.restrict(x, f) {
                    if tgt.restrict(ax, self.index_map[f]) != Some(self.element_map[xf]) {
                        return bad(format!("restriction of {x} to {f} is not preserved"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_isomorphism(&self, src: &Presheaf, tgt: &Presheaf) -> bool {
        src.carrier_size() == tgt.carrier_size()
            && src.base().order() == tgt.base().order()
            && is_bijection(&self.element_map, tgt.carrier_size())
            && is_bijection(&self.index_map, tgt.base().order())
            && self.verify(src, tgt).is_ok()
    }
}

/// Outcome of a round trip: the witness on success, a description otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RoundTrip<W> {
    Holds(W),
    Fails(String),
}

impl<W> RoundTrip<W> {
    pub fn holds(&self) -> bool {
        matches!(self, RoundTrip::Holds(_))
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            RoundTrip::Holds(w) => Some(w),
            RoundTrip::Fails(_) => None,
        }
    }
}

/// band → presheaf → band must return the identical table; the witness is
/// the identity on the carrier.
pub fn band_roundtrip(b: &FiniteSemigroup) -> Result<RoundTrip<Vec<Elem>>, PresheafError> {
    let back = band_to_presheaf(b)?.to_band()?;
    for x in b.elements() {
        for y in b.elements() {
            if back.mul(x, y) != b.mul(x, y) {
                return Ok(RoundTrip::Fails(format!(
                    "{x}∘{y} = {} but {x}·{y} = {}",
                    back.mul(x, y),
                    b.mul(x, y)
                )));
            }
        }
    }
    Ok(RoundTrip::Holds(b.elements().collect()))
}

/// presheaf → band → presheaf must return an isomorphic presheaf; the
/// witness is the identity on elements with `[x] ↦ p(x)` on indices.
pub fn presheaf_roundtrip(p: &Presheaf) -> Result<RoundTrip<PresheafMorphism>, PresheafError> {
    if !p.has_global_support() {
        let e = p.base().elements().find(|&e| p.fiber(e).is_empty()).unwrap();
        return Ok(RoundTrip::Fails(format!("fiber over {e} is empty")));
    }
    let q = band_to_presheaf(&p.to_band()?)?;
    let mut index_map = vec![usize::MAX; q.base().order()];
    for x in p.elements() {
        let i = q.support(x);
        if index_map[i] != usize::MAX && index_map[i] != p.support(x) {
            return Ok(RoundTrip::Fails(format!(
                "R-class {i} meets two fibers of the original presheaf"
            )));
        }
        index_map[i] = p.support(x);
    }
    let iso = PresheafMorphism {
        element_map: p.elements().collect(),
        index_map,
    };
    if iso.is_isomorphism(&q, p) {
        Ok(RoundTrip::Holds(iso))
    } else {
        Ok(RoundTrip::Fails(match iso.verify(&q, p) {
            Err(e) => e.to_string(),
            Ok(()) => "maps are not bijective".into(),
        }))
    }
}

/// The presheaf morphism induced by a homomorphism of right normal bands,
/// between the presheaves produced by [`band_to_presheaf`].
pub fn morphism_transport(
    b1: &FiniteSemigroup,
    b2: &FiniteSemigroup,
    h: &[Elem],
) -> Result<PresheafMorphism, PresheafError> {
    if h.len() != b1.order() || h.iter().any(|&y| y >= b2.order()) {
        return Err(PresheafError::MapLength {
            expected: b1.order(),
            got: h.len(),
        });
    }
    if let Some((a, b)) = b1.homomorphism_witness(b2, h) {
        return Err(PresheafError::NotHomomorphism { a, b });
    }
    let p1 = band_to_presheaf(b1)?;
    let p2 = band_to_presheaf(b2)?;
    let mut index_map = vec![usize::MAX; p1.base().order()];
    for x in b1.elements() {
        let (i, j) = (p1.support(x), p2.support(h[x]));
        if index_map[i] != usize::MAX && index_map[i] != j {
            return Err(PresheafError::InternalTheoremViolation(format!(
                "homomorphism does not preserve R at {x}"
            )));
        }
        index_map[i] = j;
    }
    let m = PresheafMorphism {
        element_map: h.to_vec(),
        index_map,
    };
    m.verify(&p1, &p2)
        .map_err(|e| PresheafError::InternalTheoremViolation(format!("transported pair: {e}")))?;
    Ok(m)
}

/// The order `x ≤ y` and compatibility `x ∼ y` on a presheaf, with meets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderCompat {
    pub leq: Vec<Vec<bool>>,
    pub compatible: Vec<Vec<bool>>,
    /// Greatest lower bound in `≤`, where it exists.
    pub meets: Vec<Vec<Option<Elem>>>,
}

/// Computes `≤` and `∼` from restrictions and checks them against the
/// characterizations by `∘`, and against the consequences for elements with
/// a common upper bound.
pub fn order_and_compat(p: &Presheaf) -> Result<OrderCompat, PresheafError> {
    let m = p.carrier_size();
    let e = p.base();
    let leq: Vec<Vec<bool>> = (0..m)
        .map(|x| {
            (0..m)
                .map(|y| e.leq(p.support(x), p.support(y)) && p.restrict(y, p.support(x)) == Some(x))
                .collect()
        })
        .collect();
    let meets: Vec<Vec<Option<Elem>>> = (0..m)
        .map(|x| {
            (0..m)
                .map(|y| {
                    let lower: Vec<Elem> = (0..m).filter(|&u| leq[u][x] && leq[u][y]).collect();
                    lower
                        .iter()
                        .copied()
                        .find(|&g| lower.iter().all(|&u| leq[u][g]))
                })
                .collect()
        })
        .collect();
    let compatible: Vec<Vec<bool>> = (0..m)
        .map(|x| {
            (0..m)
                .map(|y| {
                    meets[x][y]
                        .is_some_and(|g| p.support(g) == e.meet(p.support(x), p.support(y)))
                })
                .collect()
        })
        .collect();

    let fail = |msg: String| Err(PresheafError::InternalTheoremViolation(msg));
    for x in 0..m {
        for y in 0..m {
            if leq[x][y] != (p.circ(x, y) == x) {
                return fail(format!("x ≤ y disagrees with x = x∘y at ({x}, {y})"));
            }
            if compatible[x][y] != (p.circ(x, y) == p.circ(y, x)) {
                return fail(format!("x ∼ y disagrees with x∘y = y∘x at ({x}, {y})"));
            }
            if compatible[x][y] && e.leq(p.support(x), p.support(y)) && !leq[x][y] {
                return fail(format!("{x} ∼ {y} with p({x}) ≤ p({y}) but {x} ≰ {y}"));
            }
            for z in 0..m {
                if leq[x][z] && leq[y][z] {
                    if !compatible[x][y] {
                        return fail(format!("{x}, {y} ≤ {z} but {x} ≁ {y}"));
                    }
                    if e.leq(p.support(x), p.support(y)) && !leq[x][y] {
                        return fail(format!("{x}, {y} ≤ {z}, p({x}) ≤ p({y}) but {x} ≰ {y}"));
                    }
                }
            }
        }
    }
    Ok(OrderCompat {
        leq,
        compatible,
        meets,
    })
}

/// Small presheaves used in tests and fixtures.
pub mod examples {
    use super::*;

    /// Over the two-element chain `0 < 1`: `X_1 = {x0}`, `X_0 = {y0, y1}`,
    /// `x0|_0 = y0`, with `x0 = 0`, `y0 = 1`, `y1 = 2`.
    pub fn p3() -> Presheaf {
        let mut r = BTreeMap::new();
        r.insert((1, 0), vec![1]);
        Presheaf::from_restrictions(MeetSemilattice::chain(2), &[vec![1, 2], vec![0]], &r)
            .expect("valid presheaf")
    }

    /// One point over each index: the presheaf of the semilattice itself.
    pub fn points(base: &MeetSemilattice) -> Presheaf {
        let k = base.order();
        let mut table = vec![None; k * k];
        for e in 0..k {
            for f in 0..k {
                if base.leq(f, e) {
                    table[e * k + f] = Some(f);
                }
            }
        }
        Presheaf::from_table(base.clone(), (0..k).collect(), table).expect("valid presheaf")
    }
}

#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;
    use crate::morphism::are_isomorphic;
    use crate::semigroup::examples::{chain, right_zero, y3};

    #[test]
    fn p3_is_valid_with_global_support() {
        let p = p3();
        assert!(p.has_global_support());
        assert_eq!(p.fibers(), vec![vec![1, 2], vec![0]]);
        assert_eq!(p.restrict(0, 0), Some(1));
        assert_eq!(p.restrict(1, 1), None);
    }

    #[test]
    fn single_point() {
        let p = Presheaf::from_table(MeetSemilattice::chain(1), vec![0], vec![Some(0)]).unwrap();
        assert!(p.to_band().unwrap().same_table(&FiniteSemigroup::trivial()));
    }

    #[test]
    fn bogus_long_restriction_breaks_composition() {
        // chain 0 < 1 < 2 with one point per index, plus a two-point bottom fiber
        let mut r = BTreeMap::new();
        r.insert((2, 1), vec![1]);
        r.insert((1, 0), vec![2]);
        r.insert((2, 0), vec![3]);
        let err = Presheaf::from_restrictions(
            MeetSemilattice::chain(3),
            &[vec![2, 3], vec![1], vec![0]],
            &r,
        )
        .unwrap_err();
        assert!(matches!(
            err,
            PresheafError::CompositionLawViolated { e: 2, f: 1, g: 0, elem: 0 }
        ));
    }

    #[test]
    fn missing_cover_and_bad_images_are_rejected() {
        let base = MeetSemilattice::chain(2);
        let err = Presheaf::from_restrictions(base.clone(), &[vec![1], vec![0]], &BTreeMap::new())
            .unwrap_err();
        assert!(matches!(err, PresheafError::MissingRestriction { elem: 0, index: 0 }));
        let mut r = BTreeMap::new();
        r.insert((1, 0), vec![0]);
        let err = Presheaf::from_restrictions(base, &[vec![1], vec![0]], &r).unwrap_err();
        assert!(matches!(err, PresheafError::RestrictionOutsideFiber { .. }));
        let err = Presheaf::from_table(MeetSemilattice::chain(1), vec![0, 0], vec![Some(1), Some(1)])
            .unwrap_err();
        assert!(matches!(err, PresheafError::IdentityLawViolated { elem: 0 }));
    }

    #[test]
    fn semilattice_validation() {
        assert!(MeetSemilattice::new(vec![vec![0, 1], vec![0, 1]]).is_err());
        assert!(MeetSemilattice::new(vec![vec![1, 0], vec![0, 1]]).is_err());
        let c = MeetSemilattice::chain(3);
        assert_eq!(c.covers(), vec![(1, 0), (2, 1)]);
        assert!(c.leq(0, 2) && !c.leq(2, 1));
    }

    #[test]
    fn bands_from_presheaves() {
        // a single two-point fiber is the right zero semigroup
        let p = Presheaf::from_table(MeetSemilattice::chain(1), vec![0, 0], vec![Some(0), Some(1)])
            .unwrap();
        assert!(p.to_band().unwrap().same_table(&right_zero(2)));
        // P3 gives x0 = (1,x0), y0 = (0,y0), y1 = (0,y1) of Y3
        let b = p3().to_band().unwrap();
        assert_eq!(b.rows(), vec![vec![0, 1, 2], vec![1, 1, 2], vec![1, 1, 2]]);
        assert!(are_isomorphic(&b, &y3()));
        let sl = MeetSemilattice::chain(2);
        assert!(points(&sl).to_band().unwrap().same_table(&chain(2)));
    }

    #[test]
    fn presheaves_from_bands() {
        let p = band_to_presheaf(&right_zero(2)).unwrap();
        assert_eq!(p.base().order(), 1);
        assert_eq!(p.fibers(), vec![vec![0, 1]]);
        let p = band_to_presheaf(&chain(2)).unwrap();
        assert_eq!(p.fibers(), vec![vec![0], vec![1]]);
        assert!(matches!(
            band_to_presheaf(&crate::semigroup::examples::left_zero(2)),
            Err(PresheafError::NotRightNormalBand)
        ));
    }

    #[test]
    fn round_trips() {
        assert_eq!(band_roundtrip(&right_zero(2)).unwrap(), RoundTrip::Holds(vec![0, 1]));
        assert!(band_roundtrip(&y3()).unwrap().holds());
        let rt = presheaf_roundtrip(&p3()).unwrap();
        assert!(rt.holds());
        // band of P3 has R-classes {0} and {1, 2}, so class 0 sits over index 1
        assert_eq!(rt.witness().unwrap().index_map, vec![1, 0]);
        // nothing over the top index
        let empty = Presheaf::from_table(MeetSemilattice::chain(2), vec![0], vec![Some(0), None]).unwrap();
        assert!(!presheaf_roundtrip(&empty).unwrap().holds());
    }

    #[test]
    fn transported_morphisms() {
        let id = morphism_transport(&y3(), &y3(), &[0, 1, 2]).unwrap();
        assert_eq!(id, PresheafMorphism::identity(&band_to_presheaf(&y3()).unwrap()));
        let collapse = morphism_transport(&right_zero(2), &FiniteSemigroup::trivial(), &[0, 0]).unwrap();
        assert_eq!(collapse.index_map, vec![0]);
        // Y3 → SL2 sending y0, y1 to the bottom and x0 to the top
        let m = morphism_transport(&y3(), &chain(2), &[0, 0, 1]).unwrap();
        assert_eq!(m.index_map, vec![0, 1]);
        assert!(matches!(
            morphism_transport(&y3(), &chain(2), &[1, 0, 1]),
            Err(PresheafError::NotHomomorphism { .. })
        ));
    }

    #[test]
    fn order_and_compatibility_on_p3() {
        let oc = order_and_compat(&p3()).unwrap();
        // y0 is the restriction of x0
        assert!(oc.leq[1][0]);
        assert!(!oc.leq[2][0]);
        assert!(oc.compatible[2][2]);
        assert!(!oc.compatible[0][2]);
        assert_eq!(oc.meets[0][1], Some(1));
        assert_eq!(oc.meets[0][2], None);
    }

    #[test]
    fn json_round_trip() {
        let p = p3();
        let text = serde_json::to_string(&p.to_json()).unwrap();
        assert_eq!(parse_presheaf(&text).unwrap(), p);
        let doc = r#"{"semilattice": {"order": 2, "meet": [[0,0],[0,1]]},
                      "fibers": [[1,2],[0]], "restrictions": {"1>0": [1]}}"#;
        assert_eq!(parse_presheaf(doc).unwrap(), p);
        assert!(matches!(
            parse_presheaf(r#"{"semilattice": {"order": 1, "meet": [[0]]}, "fibers": [[0]], "restrictions": {"x": []}}"#),
            Err(PresheafError::BadRestrictionKey(_))
        ));
    }
}

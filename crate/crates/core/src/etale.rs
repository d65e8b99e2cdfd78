//! Étale actions of inverse semigroups, actions on presheaves, and free
//! étale sets.
//!
//! Supports are stored as element identifiers of the acting semigroup. A
//! presheaf over `E(S)` uses semilattice index `i` for the `i`-th idempotent
//! of `S` in increasing identifier order.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::format::SemigroupJson;
use crate::presheaf::{MeetSemilattice, Presheaf, PresheafError, PresheafJson, PresheafMorphism};
use crate::semigroup::{Elem, FiniteSemigroup, SemigroupError};

/// Largest carrier for which mediating morphisms are enumerated exhaustively.
pub const UNIQUENESS_BOUND: usize = 12;

#[derive(Debug, Error)]
pub enum EtaleError {
    #[error("semigroup is not inverse")]
    NotInverse,
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Presheaf(#[from] PresheafError),
    #[error("inverse table disagrees with the semigroup at {0}")]
    InverseMismatch(Elem),
    #[error("malformed action data: {0}")]
    Shape(String),
    #[error("support of {x} is not an idempotent")]
    SupportNotIdempotent { x: Elem },
    #[error("not an action: ({s}{t})·{x} ≠ {s}·({t}·{x})")]
    NotAnAction { s: Elem, t: Elem, x: Elem },
    #[error("(E1) fails at {x}: p(x)·x ≠ x")]
    E1Violated { x: Elem },
    #[error("(E2) fails at s = {s}, x = {x}: p(s·x) ≠ s p(x) s⁻¹")]
    E2Violated { s: Elem, x: Elem },
    #[error("({s}, {x}) {detail}")]
    DomainMismatch { s: Elem, x: Elem, detail: &'static str },
    #[error("{axiom} fails: {witness}")]
    AxiomViolation { axiom: &'static str, witness: String },
    #[error("presheaf is not over the semilattice of idempotents of the acting semigroup")]
    BaseMismatch,
    #[error("not a presheaf morphism: {0}")]
    NotAPresheafMorphism(String),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("internal theorem violation: {0}")]
    InternalTheoremViolation(String),
}

/// A finite semigroup verified to be inverse, with its inversion table.
/// Equality compares tables and ignores element labels.
#[derive(Debug, Clone)]
pub struct InverseSemigroup {
    base: FiniteSemigroup,
    inv: Vec<Elem>,
    idempotents: Vec<Elem>,
    idem_index: Vec<Option<usize>>,
    semilattice: MeetSemilattice,
}

impl InverseSemigroup {
    pub fn new(base: FiniteSemigroup) -> Result<Self, EtaleError> {
        if !base.classify().inverse {
            return Err(EtaleError::NotInverse);
        }
        let inv = base
            .all_inverses()
            .into_iter()
            .map(|v| v[0])
            .collect::<Vec<_>>();
        let idempotents = base.idempotents();
        let mut idem_index = vec![None; base.order()];
        for (i, &e) in idempotents.iter().enumerate() {
            idem_index[e] = Some(i);
        }
        let k = idempotents.len();
        let meet = (0..k * k)
            .map(|i| idem_index[base.mul(idempotents[i / k], idempotents[i % k])].unwrap())
            .collect();
        let semilattice = MeetSemilattice::from_flat(k, meet)?;
        Ok(InverseSemigroup {
            base,
            inv,
            idempotents,
            idem_index,
            semilattice,
        })
    }

    pub fn semigroup(&self) -> &FiniteSemigroup {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.base.order()
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        self.base.elements()
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.base.mul(a, b)
    }

    #[inline]
    pub fn inv(&self, s: Elem) -> Elem {
        self.inv[s]
    }

    pub fn inverse_table(&self) -> &[Elem] {
        &self.inv
    }

    /// `d(s) = s⁻¹s`.
    #[inline]
    pub fn d(&self, s: Elem) -> Elem {
        self.base.mul(self.inv[s], s)
    }

    /// `r(s) = ss⁻¹`.
    #[inline]
    pub fn r(&self, s: Elem) -> Elem {
        self.base.mul(s, self.inv[s])
    }

    pub fn idempotents(&self) -> &[Elem] {
        &self.idempotents
    }

    /// `E(S)` with index `i` standing for `idempotents()[i]`.
    pub fn semilattice(&self) -> &MeetSemilattice {
        &self.semilattice
    }

    /// Semilattice index of an idempotent.
    #[inline]
    pub fn index_of(&self, e: Elem) -> Option<usize> {
        self.idem_index[e]
    }

    /// The idempotent behind a semilattice index.
    #[inline]
    pub fn idempotent(&self, i: usize) -> Elem {
        self.idempotents[i]
    }

    pub fn opposite(&self) -> InverseSemigroup {
        InverseSemigroup::new(self.base.opposite()).expect("the opposite of an inverse semigroup is inverse")
    }
}

impl PartialEq for InverseSemigroup {
    fn eq(&self, other: &Self) -> bool {
        self.base.same_table(&other.base)
    }
}

impl Eq for InverseSemigroup {}

/// A left étale action `(S, X, p)` on the carrier `0..m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaleAction {
    actor: InverseSemigroup,
    support: Vec<Elem>,
    act: Vec<Elem>,
}

impl EtaleAction {
    /// Validates the action law, (E1) and (E2). `act[s * m + x] = s·x`.
    pub fn new(actor: InverseSemigroup, support: Vec<Elem>, act: Vec<Elem>) -> Result<Self, EtaleError> {
        let m = support.len();
        let n = actor.order();
        if act.len() != n * m || act.iter().any(|&y| y >= m) {
            return Err(EtaleError::Shape(format!(
                "action table must be {n} × {m} with entries below {m}"
            )));
        }
        if let Some(x) = (0..m).find(|&x| support[x] >= n || actor.index_of(support[x]).is_none()) {
            return Err(EtaleError::SupportNotIdempotent { x });
        }
        let a = EtaleAction { actor, support, act };
        a.check_axioms()?;
        Ok(a)
    }

    fn check_axioms(&self) -> Result<(), EtaleError> {
        let s_ = &self.actor;
        for x in self.elements() {
            for s in s_.elements() {
                for t in s_.elements() {
                    if self.act(s_.mul(s, t), x) != self.act(s, self.act(t, x)) {
                        return Err(EtaleError::NotAnAction { s, t, x });
                    }
                }
            }
            if self.act(self.support[x], x) != x {
                return Err(EtaleError::E1Violated { x });
            }
            for s in s_.elements() {
                let conj = s_.mul(s_.mul(s, self.support[x]), s_.inv(s));
                if self.support[self.act(s, x)] != conj {
                    return Err(EtaleError::E2Violated { s, x });
                }
            }
        }
        Ok(())
    }

    /// `S` acting on itself by left multiplication with `p(x) = r(x)`.
    pub fn left_translation(s: &InverseSemigroup) -> Self {
        let n = s.order();
        let act = (0..n * n).map(|i| s.mul(i / n, i % n)).collect();
        let support = s.elements().map(|x| s.r(x)).collect();
        EtaleAction::new(s.clone(), support, act).expect("left translation is étale")
    }

    /// The semilattice `E` acting on a presheaf by `e·x = x|_{e ∧ p(x)}`.
    pub fn from_presheaf(p: &Presheaf) -> Result<Self, EtaleError> {
        let e = InverseSemigroup::new(p.base().as_semigroup())?;
        let m = p.carrier_size();
        let k = e.order();
        let mut act = Vec::with_capacity(k * m);
        for f in 0..k {
            for x in p.elements() {
                let g = p.base().meet(f, p.support(x));
                act.push(p.restrict(x, g).unwrap());
            }
        }
        // a semilattice is its own set of idempotents, in identifier order
        let support = p.support_map().to_vec();
        EtaleAction::new(e, support, act)
    }

    pub fn actor(&self) -> &InverseSemigroup {
        &self.actor
    }

    pub fn carrier_size(&self) -> usize {
        self.support.len()
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.support.len()
    }

    #[inline]
    pub fn act(&self, s: Elem, x: Elem) -> Elem {
        self.act[s * self.support.len() + x]
    }

    pub fn act_table(&self) -> &[Elem] {
        &self.act
    }

    #[inline]
    pub fn support(&self, x: Elem) -> Elem {
        self.support[x]
    }

    pub fn support_map(&self) -> &[Elem] {
        &self.support
    }

    pub fn has_global_support(&self) -> bool {
        self.actor
            .idempotents()
            .iter()
            .all(|e| self.support.contains(e))
    }

    /// The underlying presheaf over `E(S)`: fibers `p⁻¹(e)`, `x|_f = f·x`.
    pub fn presheaf(&self) -> Result<Presheaf, EtaleError> {
        let s = &self.actor;
        let k = s.semilattice().order();
        let support: Vec<usize> = self.support.iter().map(|&e| s.index_of(e).unwrap()).collect();
        let mut table = vec![None; self.carrier_size() * k];
        for x in self.elements() {
            for f in 0..k {
                if s.semilattice().leq(f, support[x]) {
                    table[x * k + f] = Some(self.act(s.idempotent(f), x));
                }
            }
        }
        Presheaf::from_table(s.semilattice().clone(), support, table).map_err(|e| {
            EtaleError::InternalTheoremViolation(format!("underlying presheaf: {e}"))
        })
    }

    /// `q(φ(x)) = p(x)` and `φ(s·x) = s·φ(x)`.
    pub fn is_morphism_to(&self, tgt: &EtaleAction, phi: &[Elem]) -> bool {
        phi.len() == self.carrier_size()
            && phi.iter().all(|&y| y < tgt.carrier_size())
            && self.elements().all(|x| {
                tgt.support(phi[x]) == self.support(x)
                    && self
                        .actor
                        .elements()
                        .all(|s| phi[self.act(s, x)] == tgt.act(s, phi[x]))
            })
    }

    pub fn to_json(&self) -> ActionJson {
        let m = self.carrier_size();
        ActionJson {
            semigroup: SemigroupJson::from(self.actor.semigroup()),
            inverse_of: self.actor.inverse_table().to_vec(),
            support: self.support.clone(),
            act: self
                .act
                .chunks(m.max(1))
                .take(self.actor.order())
                .map(|row| row.iter().map(|&y| y as i64).collect())
                .collect(),
            presheaf: None,
        }
    }
}

/// `presheaf_of` as a free function.
pub fn presheaf_of(a: &EtaleAction) -> Result<Presheaf, EtaleError> {
    a.presheaf()
}

pub fn validate_etale(actor: InverseSemigroup, support: Vec<Elem>, act: Vec<Elem>) -> Result<EtaleAction, EtaleError> {
    EtaleAction::new(actor, support, act)
}

/// Every étale morphism `src → tgt` extending the pinned values, up to `limit`.
pub fn etale_morphisms(
    src: &EtaleAction,
    tgt: &EtaleAction,
    pinned: &[(Elem, Elem)],
    limit: usize,
) -> Vec<Vec<Elem>> {
    const UNSET: Elem = usize::MAX;
    fn assign(src: &EtaleAction, tgt: &EtaleAction, phi: &mut [Elem], x: Elem, y: Elem) -> bool {
        let mut queue = vec![(x, y)];
        while let Some((x, y)) = queue.pop() {
            if phi[x] != UNSET {
                if phi[x] != y {
                    return false;
                }
                continue;
            }
            if tgt.support(y) != src.support(x) {
                return false;
            }
            phi[x] = y;
            for s in src.actor().elements() {
                queue.push((src.act(s, x), tgt.act(s, y)));
            }
        }
        true
    }
    fn run(src: &EtaleAction, tgt: &EtaleAction, phi: Vec<Elem>, limit: usize, out: &mut Vec<Vec<Elem>>) {
        if out.len() >= limit {
            return;
        }
        let Some(x) = phi.iter().position(|&y| y == UNSET) else {
            out.push(phi);
            return;
        };
        for y in tgt.elements() {
            let mut next = phi.clone();
            if assign(src, tgt, &mut next, x, y) {
                run(src, tgt, next, limit, out);
            }
        }
    }
    if src.actor() != tgt.actor() {
        return Vec::new();
    }
    let mut phi = vec![UNSET; src.carrier_size()];
    for &(x, y) in pinned {
        if !assign(src, tgt, &mut phi, x, y) {
            return Vec::new();
        }
    }
    let mut out = Vec::new();
    run(src, tgt, phi, limit, &mut out);
    out
}

/// An action of `S` on a presheaf over `E(S)`, defined on
/// `S∗X = {(s, x) : d(s) = p(x)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresheafAction {
    actor: InverseSemigroup,
    presheaf: Presheaf,
    partial: Vec<Option<Elem>>,
}

impl PresheafAction {
    /// Validates the domain and (AP1)–(AP4). `partial[s * m + x]` is `s·x`.
    pub fn new(actor: InverseSemigroup, presheaf: Presheaf, partial: Vec<Option<Elem>>) -> Result<Self, EtaleError> {
        if presheaf.base() != actor.semilattice() {
            return Err(EtaleError::BaseMismatch);
        }
        let m = presheaf.carrier_size();
        if partial.len() != actor.order() * m || partial.iter().flatten().any(|&y| y >= m) {
            return Err(EtaleError::Shape(format!(
                "partial action table must be {} × {m} with entries below {m}",
                actor.order()
            )));
        }
        let pa = PresheafAction {
            actor,
            presheaf,
            partial,
        };
        for s in pa.actor.elements() {
            for x in pa.presheaf.elements() {
                match (pa.in_domain(s, x), pa.partial[s * m + x]) {
                    (true, None) => {
                        return Err(EtaleError::DomainMismatch { s, x, detail: "lies in S∗X but is undefined" })
                    }
                    (false, Some(_)) => {
                        return Err(EtaleError::DomainMismatch { s, x, detail: "is defined outside S∗X" })
                    }
                    _ => {}
                }
            }
        }
        pa.check_axioms()?;
        Ok(pa)
    }

    /// Support of `x` as an idempotent of `S`.
    #[inline]
    fn p(&self, x: Elem) -> Elem {
        self.actor.idempotent(self.presheaf.support(x))
    }

    #[inline]
    pub fn in_domain(&self, s: Elem, x: Elem) -> bool {
        self.actor.d(s) == self.p(x)
    }

    /// `s·x` for `(s, x) ∈ S∗X`.
    #[inline]
    pub fn act(&self, s: Elem, x: Elem) -> Option<Elem> {
        self.partial[s * self.presheaf.carrier_size() + x]
    }

    pub fn actor(&self) -> &InverseSemigroup {
        &self.actor
    }

    pub fn presheaf(&self) -> &Presheaf {
        &self.presheaf
    }

    fn check_axioms(&self) -> Result<(), EtaleError> {
        let s_ = &self.actor;
        let lat = s_.semilattice();
        let violation = |axiom, witness| Err(EtaleError::AxiomViolation { axiom, witness });
        for x in self.presheaf.elements() {
            let e = self.p(x);
            if self.act(e, x) != Some(x) {
                return violation("(AP1)", format!("{e}·{x} ≠ {x}"));
            }
            for s in s_.elements().filter(|&s| self.in_domain(s, x)) {
                let sx = self.act(s, x).unwrap();
                if self.p(sx) != s_.r(s) {
                    return violation("(AP2)", format!("p({s}·{x}) ≠ r({s})"));
                }
                // (AP3) with t = this s, for every s2 with d(s2) = r(s)
                for s2 in s_.elements().filter(|&s2| s_.d(s2) == s_.r(s)) {
                    let st = s_.mul(s2, s);
                    if self.in_domain(s2, sx) != self.in_domain(st, x) {
                        return violation("(AP3)", format!("domains differ for {s2}, {s}, {x}"));
                    }
                    if self.in_domain(s2, sx) && self.act(s2, sx) != self.act(st, x) {
                        return violation("(AP3)", format!("{s2}·({s}·{x}) ≠ ({s2}{s})·{x}"));
                    }
                }
                for fi in lat.elements().filter(|&fi| lat.leq(fi, self.presheaf.support(x))) {
                    let f = s_.idempotent(fi);
                    let sf = s_.mul(s, f);
                    let top = self.presheaf.restrict(sx, s_.index_of(s_.r(sf)).unwrap());
                    let xf = self.presheaf.restrict(x, fi).unwrap();
                    if top != self.act(sf, xf) {
                        return violation("(AP4)", format!("square fails for s = {s}, x = {x}, f = {f}"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Fibers, partial equivariance and restrictions are preserved.
    pub fn is_morphism_to(&self, tgt: &PresheafAction, phi: &[Elem]) -> bool {
        let (p, q) = (&self.presheaf, &tgt.presheaf);
        if phi.len() != p.carrier_size() || phi.iter().any(|&y| y >= q.carrier_size()) {
            return false;
        }
        let id = PresheafMorphism {
            element_map: phi.to_vec(),
            index_map: p.base().elements().collect(),
        };
        id.verify(p, q).is_ok()
            && p.elements().all(|x| {
                self.actor.elements().all(|s| match self.act(s, x) {
                    Some(sx) => tgt.act(s, phi[x]) == Some(phi[sx]),
                    None => true,
                })
            })
    }
}

/// Restricts an étale action to `S∗X` over its underlying presheaf.
pub fn etale_to_presheaf_action(a: &EtaleAction) -> Result<PresheafAction, EtaleError> {
    let presheaf = a.presheaf()?;
    let s_ = a.actor();
    let m = a.carrier_size();
    let mut partial = vec![None; s_.order() * m];
    for s in s_.elements() {
        for x in a.elements() {
            if s_.d(s) == a.support(x) {
                partial[s * m + x] = Some(a.act(s, x));
            }
        }
    }
    PresheafAction::new(s_.clone(), presheaf, partial)
}

/// Totalizes a presheaf action by `s·x = (s p(x))·(x|_{d(s)p(x)})`.
pub fn presheaf_action_to_etale(pa: &PresheafAction) -> Result<EtaleAction, EtaleError> {
    let s_ = pa.actor();
    let p = pa.presheaf();
    let m = p.carrier_size();
    let mut act = Vec::with_capacity(s_.order() * m);
    for s in s_.elements() {
        for x in p.elements() {
            let e = pa.p(x);
            let f = s_.mul(s_.d(s), e);
            let y = p.restrict(x, s_.index_of(f).unwrap()).unwrap();
            let image = pa.act(s_.mul(s, e), y).ok_or_else(|| {
                EtaleError::InternalTheoremViolation(format!("(s p(x), x|) not in S∗X for s = {s}, x = {x}"))
            })?;
            act.push(image);
        }
    }
    let support = p.elements().map(|x| pa.p(x)).collect();
    EtaleAction::new(s_.clone(), support, act)
        .map_err(|e| EtaleError::InternalTheoremViolation(format!("totalized action: {e}")))
}

/// The free étale set `S∗A` with its support `r(s, a) = r(s)` and the unit
/// `α(a) = (q(a), a)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeEtale {
    pub action: EtaleAction,
    /// Carrier element `i` is the pair `pairs[i] = (s, a)`, in lexicographic order.
    pub pairs: Vec<(Elem, Elem)>,
    pub unit: Vec<Elem>,
}

impl FreeEtale {
    pub fn index_of(&self, s: Elem, a: Elem) -> Option<Elem> {
        self.pairs.binary_search(&(s, a)).ok()
    }
}

/// `S∗A = {(s, a) : d(s) = q(a)}` with `s·(t, a) = (st, d(st)·a)`.
pub fn free_etale(s: &InverseSemigroup, a: &Presheaf) -> Result<FreeEtale, EtaleError> {
    if a.base() != s.semilattice() {
        return Err(EtaleError::BaseMismatch);
    }
    let q = |x: Elem| s.idempotent(a.support(x));
    let pairs: Vec<(Elem, Elem)> = s
        .elements()
        .flat_map(|t| a.elements().filter(move |&x| s.d(t) == q(x)).map(move |x| (t, x)))
        .collect();
    let find = |p: (Elem, Elem)| pairs.binary_search(&p).expect("pair lies in S∗A");
    let mut act = Vec::with_capacity(s.order() * pairs.len());
    for u in s.elements() {
        for &(t, x) in &pairs {
            let ut = s.mul(u, t);
            let y = a.restrict(x, s.index_of(s.d(ut)).unwrap()).ok_or_else(|| {
                EtaleError::InternalTheoremViolation(format!("d({u}{t}) ≰ q({x})"))
            })?;
            act.push(find((ut, y)));
        }
    }
    let support = pairs.iter().map(|&(t, _)| s.r(t)).collect();
    let unit = a.elements().map(|x| find((q(x), x))).collect();
    let action = EtaleAction::new(s.clone(), support, act)
        .map_err(|e| EtaleError::InternalTheoremViolation(format!("free étale set: {e}")))?;
    Ok(FreeEtale { action, pairs, unit })
}

/// Result of checking the universal property of `S∗A` against one target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniversalProperty {
    pub free: FreeEtale,
    /// `θ(s, a) = s·β(a)` on the carrier of `free`.
    pub theta: Vec<Elem>,
    /// Number of étale morphisms `φ` with `φα = β`; `None` above [`UNIQUENESS_BOUND`].
    pub mediating_count: Option<usize>,
}

/// Builds `θ(s, a) = s·β(a)`, checks it is an étale morphism with `θα = β`,
/// and for small carriers counts all mediating morphisms.
pub fn universal_property_check(
    s: &InverseSemigroup,
    a: &Presheaf,
    target: &EtaleAction,
    beta: &[Elem],
) -> Result<UniversalProperty, EtaleError> {
    if target.actor() != s {
        return Err(EtaleError::NotAPresheafMorphism("target has a different acting semigroup".into()));
    }
    let tp = target.presheaf()?;
    let bm = PresheafMorphism {
        element_map: beta.to_vec(),
        index_map: s.semilattice().elements().collect(),
    };
    if a.base() != s.semilattice() {
        return Err(EtaleError::BaseMismatch);
    }
    bm.verify(a, &tp)
        .map_err(|e| EtaleError::NotAPresheafMorphism(e.to_string()))?;
    let free = free_etale(s, a)?;
    let theta: Vec<Elem> = free.pairs.iter().map(|&(t, x)| target.act(t, beta[x])).collect();
    if !free.action.is_morphism_to(target, &theta) {
        return Err(EtaleError::InternalTheoremViolation("θ is not an étale morphism".into()));
    }
    if a.elements().any(|x| theta[free.unit[x]] != beta[x]) {
        return Err(EtaleError::InternalTheoremViolation("θα ≠ β".into()));
    }
    let mediating_count = (free.action.carrier_size() <= UNIQUENESS_BOUND
        && target.carrier_size() <= UNIQUENESS_BOUND)
        .then(|| {
            let pinned: Vec<(Elem, Elem)> = a.elements().map(|x| (free.unit[x], beta[x])).collect();
            etale_morphisms(&free.action, target, &pinned, usize::MAX).len()
        });
    Ok(UniversalProperty {
        free,
        theta,
        mediating_count,
    })
}

/// Action JSON. Partial actions mark pairs outside `S∗X` with `-1` and
/// carry their presheaf.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ActionJson {
    pub semigroup: SemigroupJson,
    pub inverse_of: Vec<Elem>,
    pub support: Vec<Elem>,
    pub act: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub presheaf: Option<PresheafJson>,
}

impl ActionJson {
    fn actor(&self) -> Result<InverseSemigroup, EtaleError> {
        let s = InverseSemigroup::new(
            self.semigroup
                .clone()
                .into_semigroup()
                .map_err(|e| EtaleError::Shape(e.to_string()))?,
        )?;
        if self.inverse_of.len() != s.order() {
            return Err(EtaleError::Shape("inverse_of has the wrong length".into()));
        }
        if let Some(x) = s.elements().find(|&x| self.inverse_of[x] != s.inv(x)) {
            return Err(EtaleError::InverseMismatch(x));
        }
        Ok(s)
    }

    fn flat_act(&self, n: usize) -> Result<Vec<Option<Elem>>, EtaleError> {
        let m = self.support.len();
        if self.act.len() != n || self.act.iter().any(|row| row.len() != m) {
            return Err(EtaleError::Shape(format!("act must be {n} × {m}")));
        }
        self.act
            .iter()
            .flatten()
            .map(|&v| match v {
                -1 => Ok(None),
                v if v >= 0 => Ok(Some(v as Elem)),
                v => Err(EtaleError::Shape(format!("bad action entry {v}"))),
            })
            .collect()
    }

    pub fn into_etale(self) -> Result<EtaleAction, EtaleError> {
        let s = self.actor()?;
        let act = self
            .flat_act(s.order())?
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| EtaleError::Shape("étale actions are total".into()))?;
        EtaleAction::new(s, self.support, act)
    }

    pub fn into_presheaf_action(self) -> Result<PresheafAction, EtaleError> {
        let s = self.actor()?;
        let partial = self.flat_act(s.order())?;
        let presheaf = self
            .presheaf
            .clone()
            .ok_or_else(|| EtaleError::Shape("partial actions need a presheaf".into()))?
            .into_presheaf()?;
        let expected: Vec<Elem> = presheaf.elements().map(|x| s.idempotent(presheaf.support(x))).collect();
        if expected != self.support {
            return Err(EtaleError::Shape("support disagrees with the presheaf".into()));
        }
        PresheafAction::new(s, presheaf, partial)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presheaf::examples::{p3, points};
    use crate::semigroup::examples::{chain, cyclic_group, symmetric_inverse_2};

    fn i2() -> InverseSemigroup {
        InverseSemigroup::new(symmetric_inverse_2()).unwrap()
    }

    fn sl2() -> InverseSemigroup {
        InverseSemigroup::new(chain(2)).unwrap()
    }

    #[test]
    fn inverse_semigroup_data() {
        let s = i2();
        assert_eq!(s.idempotents(), &[0, 1, 4, 5]);
        assert_eq!(s.inv(2), 3);
        assert_eq!(s.d(2), s.mul(3, 2));
        for x in s.elements() {
            assert_eq!(s.mul(s.mul(x, s.inv(x)), x), x);
        }
        assert!(matches!(
            InverseSemigroup::new(crate::semigroup::examples::right_zero(2)),
            Err(EtaleError::NotInverse)
        ));
    }

    #[test]
    fn translations_and_presheaf_actions_are_etale() {
        let a = EtaleAction::left_translation(&i2());
        assert!(a.has_global_support());
        let e = EtaleAction::from_presheaf(&p3()).unwrap();
        // 0 acts on x0 by restriction
        assert_eq!(e.act(0, 0), 1);
        assert_eq!(e.presheaf().unwrap(), p3());
    }

    #[test]
    fn broken_support_is_rejected() {
        // one point over the top, fixed by everything: p(0·x) = 1 but 0·1·0 = 0
        let err = EtaleAction::new(sl2(), vec![1], vec![0, 0]).unwrap_err();
        assert!(matches!(err, EtaleError::E2Violated { s: 0, x: 0 }), "{err:?}");
        // everything collapses onto x1, so p(x0)·x0 ≠ x0
        let err = EtaleAction::new(sl2(), vec![1, 0], vec![1, 1, 1, 1]).unwrap_err();
        assert!(matches!(err, EtaleError::E1Violated { x: 0 }), "{err:?}");
        let err = EtaleAction::new(sl2(), vec![0, 1], vec![0, 0, 1, 1]).unwrap_err();
        assert!(matches!(err, EtaleError::NotAnAction { .. }), "{err:?}");
    }

    #[test]
    fn underlying_presheaves() {
        let p = EtaleAction::left_translation(&sl2()).presheaf().unwrap();
        assert_eq!(p, points(sl2().semilattice()));
        let p = EtaleAction::left_translation(&i2()).presheaf().unwrap();
        assert_eq!(p.base().order(), 4);
        // the fiber over an idempotent e is its R-class
        for (i, &e) in i2().idempotents().iter().enumerate() {
            let fiber = p.fiber(i);
            assert!(fiber.iter().all(|&x| i2().r(x) == e));
        }
    }

    #[test]
    fn conversions_round_trip() {
        for a in [
            EtaleAction::from_presheaf(&p3()).unwrap(),
            EtaleAction::left_translation(&i2()),
            EtaleAction::left_translation(&InverseSemigroup::new(FiniteSemigroup::trivial()).unwrap()),
        ] {
            let pa = etale_to_presheaf_action(&a).unwrap();
            let back = presheaf_action_to_etale(&pa).unwrap();
            assert_eq!(back, a);
            assert_eq!(etale_to_presheaf_action(&back).unwrap(), pa);
        }
    }

    #[test]
    fn free_etale_sets() {
        let f = free_etale(&sl2(), &p3()).unwrap();
        assert_eq!(f.pairs, vec![(0, 1), (0, 2), (1, 0)]);
        let s = i2();
        let f = free_etale(&s, &points(s.semilattice())).unwrap();
        assert_eq!(f.pairs.len(), 7);
        let t = InverseSemigroup::new(FiniteSemigroup::trivial()).unwrap();
        assert_eq!(free_etale(&t, &points(t.semilattice())).unwrap().pairs.len(), 1);
        let g = InverseSemigroup::new(cyclic_group(2)).unwrap();
        assert!(matches!(free_etale(&g, &p3()), Err(EtaleError::BaseMismatch)));
    }

    #[test]
    fn unit_is_a_presheaf_morphism() {
        let f = free_etale(&sl2(), &p3()).unwrap();
        let unit = PresheafMorphism {
            element_map: f.unit.clone(),
            index_map: vec![0, 1],
        };
        unit.verify(&p3(), &f.action.presheaf().unwrap()).unwrap();
    }

    #[test]
    fn universal_property() {
        let s = sl2();
        let free = free_etale(&s, &p3()).unwrap();
        let u = universal_property_check(&s, &p3(), &free.action, &free.unit).unwrap();
        assert_eq!(u.theta, vec![0, 1, 2]);
        assert_eq!(u.mediating_count, Some(1));

        let target = EtaleAction::from_presheaf(&p3()).unwrap();
        let u = universal_property_check(&s, &p3(), &target, &[0, 1, 2]).unwrap();
        // (0, y0) ↦ y0, (0, y1) ↦ y1, (1, x0) ↦ x0
        assert_eq!(u.theta, vec![1, 2, 0]);
        assert_eq!(u.mediating_count, Some(1));

        assert!(matches!(
            universal_property_check(&s, &p3(), &target, &[0, 2, 1]),
            Err(EtaleError::NotAPresheafMorphism(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        let a = EtaleAction::left_translation(&i2());
        let text = serde_json::to_string(&a.to_json()).unwrap();
        let back = serde_json::from_str::<ActionJson>(&text).unwrap().into_etale().unwrap();
        assert_eq!(back, a);

        let pa = etale_to_presheaf_action(&EtaleAction::from_presheaf(&p3()).unwrap()).unwrap();
        let mut doc = EtaleAction::from_presheaf(&p3()).unwrap().to_json();
        for (s, row) in doc.act.iter_mut().enumerate() {
            for (x, v) in row.iter_mut().enumerate() {
                if pa.act(s, x).is_none() {
                    *v = -1;
                }
            }
        }
        doc.presheaf = Some(p3().to_json());
        assert_eq!(doc.into_presheaf_action().unwrap(), pa);
    }
}

//! Yamada semigroups `𝒴(X, T, Y)`, tensor products of S-sets, Morita
//! semigroups and the isomorphism `θ(x, s, y) = x r(s) ⊗ s y`.
//!
//! `X` is an ordinary presheaf over `E(T)` read on the left: `x·e` means the
//! restriction of `x` to `e ≤ p(x)`.

use thiserror::Error;

use crate::congruence::{lambda_rho, quotient, CongruenceError};
use crate::etale::{EtaleError, InverseSemigroup};
use crate::partition::{Partition, UnionFind};
use crate::presheaf::{Presheaf, PresheafError};
use crate::semigroup::{Elem, FiniteSemigroup};
use crate::yamada::{build_left_yamada, build_right_yamada, kappa_decompose, LeftYamada, RightYamada, YamadaError};

#[derive(Debug, Error)]
pub enum MoritaError {
    #[error("presheaf {0} is not over the semilattice of idempotents of T")]
    BaseMismatch(&'static str),
    #[error("presheaf {side} has an empty fiber over index {index}")]
    NoGlobalSupport { side: &'static str, index: usize },
    #[error("the two S-sets have different acting semigroups")]
    ActorMismatch,
    #[error("S-set is not on the {expected} side")]
    WrongSide { expected: &'static str },
    #[error("not an action at s = {s}, t = {t}, x = {x}")]
    NotAnAction { s: Elem, t: Elem, x: Elem },
    #[error("malformed data: {0}")]
    Shape(String),
    #[error("pairing is not bilinear at p = {p}, q = {q}, r = {r}")]
    NotBilinear { p: Elem, q: Elem, r: Elem },
    #[error("product depends on representatives of classes {a} and {b}")]
    IllDefinedProduct { a: usize, b: usize },
    #[error("semigroup is not generalized inverse")]
    NotGeneralizedInverse,
    #[error(transparent)]
    Yamada(#[from] YamadaError),
    #[error(transparent)]
    Congruence(#[from] CongruenceError),
    #[error(transparent)]
    Etale(#[from] EtaleError),
    #[error(transparent)]
    Presheaf(#[from] PresheafError),
    #[error("internal theorem violation: {0}")]
    InternalTheoremViolation(String),
}

fn violation<T>(msg: impl Into<String>) -> Result<T, MoritaError> {
    Err(MoritaError::InternalTheoremViolation(msg.into()))
}

/// `𝒴(X, T, Y)` on triples `(x, t, y)` with `p(x) = r(t)`, `q(y) = d(t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YamadaSemigroup {
    pub t: InverseSemigroup,
    pub x: Presheaf,
    pub y: Presheaf,
    /// Element `i` is `triples[i]`, in lexicographic order.
    pub triples: Vec<(Elem, Elem, Elem)>,
    pub semigroup: FiniteSemigroup,
}

impl YamadaSemigroup {
    pub fn index_of(&self, x: Elem, t: Elem, y: Elem) -> Option<Elem> {
        self.triples.binary_search(&(x, t, y)).ok()
    }

    fn p(&self, x: Elem) -> Elem {
        self.t.idempotent(self.x.support(x))
    }

    fn q(&self, y: Elem) -> Elem {
        self.t.idempotent(self.y.support(y))
    }
}

fn check_side(t: &InverseSemigroup, p: &Presheaf, side: &'static str) -> Result<(), MoritaError> {
    if p.base() != t.semilattice() {
        return Err(MoritaError::BaseMismatch(side));
    }
    if let Some(index) = p.base().elements().find(|&e| p.fiber(e).is_empty()) {
        return Err(MoritaError::NoGlobalSupport { side, index });
    }
    Ok(())
}

/// `(x, s, y)(u, t, v) = (x·r(st), st, d(st)·v)`, verified generalized inverse
/// with idempotents, inverses, γ, λ and ρ matching their coordinate forms.
pub fn build_yamada(t: &InverseSemigroup, x: &Presheaf, y: &Presheaf) -> Result<YamadaSemigroup, MoritaError> {
    check_side(t, x, "X")?;
    check_side(t, y, "Y")?;
    let mut triples = Vec::new();
    for a in x.elements() {
        for s in t.elements() {
            for b in y.elements() {
                if t.idempotent(x.support(a)) == t.r(s) && t.idempotent(y.support(b)) == t.d(s) {
                    triples.push((a, s, b));
                }
            }
        }
    }
    let m = triples.len();
    let mut table = Vec::with_capacity(m * m);
    for &(a, s, _) in &triples {
        for &(_, u, v) in &triples {
            let su = t.mul(s, u);
            let a2 = x.restrict(a, t.index_of(t.r(su)).unwrap());
            let v2 = y.restrict(v, t.index_of(t.d(su)).unwrap());
            let (Some(a2), Some(v2)) = (a2, v2) else {
                return violation(format!("restriction undefined in the product of ({a}, {s}, ·) and (·, {u}, {v})"));
            };
            table.push(triples.binary_search(&(a2, su, v2)).expect("product lands in 𝒴"));
        }
    }
    let semigroup = FiniteSemigroup::from_flat(m, table)
        .map_err(|e| MoritaError::InternalTheoremViolation(format!("𝒴 product: {e}")))?;
    let ys = YamadaSemigroup {
        t: t.clone(),
        x: x.clone(),
        y: y.clone(),
        triples,
        semigroup,
    };
    verify_yamada(&ys)?;
    Ok(ys)
}

fn verify_yamada(ys: &YamadaSemigroup) -> Result<(), MoritaError> {
    let (s, t) = (&ys.semigroup, &ys.t);
    if !s.classify().generalized_inverse {
        return violation("𝒴 is not generalized inverse");
    }
    for (i, &(a, u, b)) in ys.triples.iter().enumerate() {
        if s.is_idempotent(i) != t.index_of(u).is_some() {
            return violation(format!("idempotent status of ({a}, {u}, {b}) is wrong"));
        }
        let expected: Vec<Elem> = ys
            .triples
            .iter()
            .enumerate()
            .filter(|&(_, &(c, w, d))| w == t.inv(u) && ys.p(c) == t.d(u) && ys.q(d) == t.r(u))
            .map(|(j, _)| j)
            .collect();
        if s.inverses_of(i) != expected {
            return violation(format!("V(({a}, {u}, {b})) differs from its coordinate form"));
        }
    }
    let lr = lambda_rho(s)?;
    let middle: Vec<Elem> = ys.triples.iter().map(|&(_, u, _)| u).collect();
    let right: Vec<(Elem, Elem)> = ys.triples.iter().map(|&(_, u, b)| (u, b)).collect();
    let left: Vec<(Elem, Elem)> = ys.triples.iter().map(|&(a, u, _)| (a, u)).collect();
    if *lr.gamma.partition() != Partition::from_labels(&middle) {
        return violation("γ is not equality of middle coordinates");
    }
    if *lr.lambda.partition() != Partition::from_labels(&right) {
        return violation("λ is not equality of (t, y)");
    }
    if *lr.rho.partition() != Partition::from_labels(&left) {
        return violation("ρ is not equality of (x, t)");
    }
    Ok(())
}

/// `𝒴/λ` as the right Yamada semigroup on `(t, y)` and `𝒴/ρ` as the left one
/// on `(t, x)`, with the class bijections verified as isomorphisms.
#[derive(Debug, Clone)]
pub struct Projections {
    pub right: RightYamada,
    pub left: LeftYamada,
    /// λ-class of each triple ↦ element of `right.semigroup`.
    pub lambda_iso: Vec<Elem>,
    /// ρ-class of each triple ↦ element of `left.semigroup`.
    pub rho_iso: Vec<Elem>,
}

pub fn lambda_rho_projections(ys: &YamadaSemigroup) -> Result<Projections, MoritaError> {
    let right = build_right_yamada(&ys.t, &ys.y)?;
    let left = build_left_yamada(&ys.t, &ys.x)?;
    let lr = lambda_rho(&ys.semigroup)?;
    let (sr, lproj) = quotient(&ys.semigroup, &lr.lambda);
    let (sl, rproj) = quotient(&ys.semigroup, &lr.rho);
    let mut lambda_iso = vec![usize::MAX; sr.order()];
    let mut rho_iso = vec![usize::MAX; sl.order()];
    for (i, &(a, u, b)) in ys.triples.iter().enumerate() {
        lambda_iso[lproj[i]] = right.index_of(u, b).unwrap();
        rho_iso[rproj[i]] = left.pairs.binary_search(&(u, a)).unwrap();
    }
    let bijective = |map: &[Elem], n: usize| {
        let mut seen = vec![false; n];
        map.len() == n && map.iter().all(|&v| v < n && !std::mem::replace(&mut seen[v], true))
    };
    if !bijective(&lambda_iso, right.semigroup.order()) || !sr.is_homomorphism(&right.semigroup, &lambda_iso) {
        return violation("𝒴/λ is not isomorphic to the pairs (t, y)");
    }
    if !bijective(&rho_iso, left.semigroup.order()) || !sl.is_homomorphism(&left.semigroup, &rho_iso) {
        return violation("𝒴/ρ is not isomorphic to the pairs (x, t)");
    }
    Ok(Projections {
        right,
        left,
        lambda_iso,
        rho_iso,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A set with an action of a finite semigroup. `act(s, x)` is `s·x` on the
/// left side and `x·s` on the right side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SSet {
    side: Side,
    actor: FiniteSemigroup,
    size: usize,
    table: Vec<Elem>,
}

impl SSet {
    /// `table[s * size + x]`; checks `(st)·x = s·(t·x)` or `x·(st) = (x·s)·t`.
    pub fn new(side: Side, actor: FiniteSemigroup, size: usize, table: Vec<Elem>) -> Result<Self, MoritaError> {
        if table.len() != actor.order() * size || table.iter().any(|&v| v >= size) {
            return Err(MoritaError::Shape(format!(
                "action table must be {} × {size} with entries below {size}",
                actor.order()
            )));
        }
        let set = SSet {
            side,
            actor,
            size,
            table,
        };
        let a = &set.actor;
        for s in a.elements() {
            for t in a.elements() {
                for x in 0..size {
                    let ok = match side {
                        Side::Left => set.act(a.mul(s, t), x) == set.act(s, set.act(t, x)),
                        Side::Right => set.act(a.mul(s, t), x) == set.act(t, set.act(s, x)),
                    };
                    if !ok {
                        return Err(MoritaError::NotAnAction { s, t, x });
                    }
                }
            }
        }
        Ok(set)
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn actor(&self) -> &FiniteSemigroup {
        &self.actor
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn act(&self, s: Elem, x: Elem) -> Elem {
        self.table[s * self.size + x]
    }
}

/// `Q ⊗ P` as a partition of `Q × P`; the pair `(q, p)` is `q * |P| + p`.
/// Class `c` is represented by its lexicographically least pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tensor {
    pub q_size: usize,
    pub p_size: usize,
    pub classes: Partition,
}

impl Tensor {
    pub fn num_classes(&self) -> usize {
        self.classes.num_classes()
    }

    pub fn class_of(&self, q: Elem, p: Elem) -> usize {
        self.classes.class_of(q * self.p_size + p)
    }

    pub fn representative(&self, c: usize) -> (Elem, Elem) {
        let i = self.classes.representatives()[c];
        (i / self.p_size, i % self.p_size)
    }
}

/// Smallest equivalence on `Q × P` with `(q·s, p) ~ (q, s·p)`.
pub fn tensor(q: &SSet, p: &SSet) -> Result<Tensor, MoritaError> {
    if q.side != Side::Right {
        return Err(MoritaError::WrongSide { expected: "right" });
    }
    if p.side != Side::Left {
        return Err(MoritaError::WrongSide { expected: "left" });
    }
    if !q.actor.same_table(&p.actor) {
        return Err(MoritaError::ActorMismatch);
    }
    let mut uf = UnionFind::new(q.size * p.size);
    for s in q.actor.elements() {
        for a in 0..q.size {
            for b in 0..p.size {
                uf.union(q.act(s, a) * p.size + b, a * p.size + p.act(s, b));
            }
        }
    }
    Ok(Tensor {
        q_size: q.size,
        p_size: p.size,
        classes: uf.into_partition(),
    })
}

/// A triple `(q, s, p)` with `f(q·s, p) ≠ f(q, s·p)`, if any.
pub fn balanced_witness<Z: PartialEq>(q: &SSet, p: &SSet, f: impl Fn(Elem, Elem) -> Z) -> Option<(Elem, Elem, Elem)> {
    for s in q.actor.elements() {
        for a in 0..q.size {
            for b in 0..p.size {
                if f(q.act(s, a), b) != f(a, p.act(s, b)) {
                    return Some((a, s, b));
                }
            }
        }
    }
    None
}

pub fn balanced_check<Z: PartialEq>(q: &SSet, p: &SSet, f: impl Fn(Elem, Elem) -> Z) -> bool {
    balanced_witness(q, p, f).is_none()
}

/// The semigroup on `Q ⊗ P` with `(q ⊗ p)(q′ ⊗ p′) = q ⊗ ⟨p, q′⟩p′`, for a
/// bilinear `pairing[p * |Q| + q] = ⟨p, q⟩` into the acting semigroup.
pub fn morita_product(q: &SSet, p: &SSet, t: &Tensor, pairing: &[Elem]) -> Result<FiniteSemigroup, MoritaError> {
    let r = &q.actor;
    if pairing.len() != p.size * q.size || pairing.iter().any(|&v| v >= r.order()) {
        return Err(MoritaError::Shape("pairing has the wrong shape".into()));
    }
    let pair = |b: Elem, a: Elem| pairing[b * q.size + a];
    for s in r.elements() {
        for b in 0..p.size {
            for a in 0..q.size {
                if pair(p.act(s, b), a) != r.mul(s, pair(b, a)) || pair(b, q.act(s, a)) != r.mul(pair(b, a), s) {
                    return Err(MoritaError::NotBilinear { p: b, q: a, r: s });
                }
            }
        }
    }
    let k = t.num_classes();
    let members = t.classes.classes();
    let mut table = vec![usize::MAX; k * k];
    for (c1, m1) in members.iter().enumerate() {
        for (c2, m2) in members.iter().enumerate() {
            for &i in m1 {
                for &j in m2 {
                    let (a, b) = (i / t.p_size, i % t.p_size);
                    let (a2, b2) = (j / t.p_size, j % t.p_size);
                    let v = t.class_of(a, p.act(pair(b, a2), b2));
                    let cell = &mut table[c1 * k + c2];
                    if *cell != usize::MAX && *cell != v {
                        return Err(MoritaError::IllDefinedProduct { a: c1, b: c2 });
                    }
                    *cell = v;
                }
            }
        }
    }
    FiniteSemigroup::from_flat(k, table)
        .map_err(|e| MoritaError::InternalTheoremViolation(format!("Morita product: {e}")))
}

/// `S_L = 𝒴/ρ` and `S_R = 𝒴/λ` as T-sets, their tensor, the Morita
/// semigroup and `θ`.
#[derive(Debug, Clone)]
pub struct MoritaData {
    /// Right T-set on the pairs `(t, x)` of the left Yamada semigroup.
    pub s_l: SSet,
    /// Left T-set on the pairs `(t, y)` of the right Yamada semigroup.
    pub s_r: SSet,
    pub left: LeftYamada,
    pub right: RightYamada,
    pub tensor: Tensor,
    pub morita: FiniteSemigroup,
    /// `θ(x, s, y)` as a tensor class, indexed by triple.
    pub theta: Vec<usize>,
}

fn morita_sets(ys: &YamadaSemigroup) -> Result<(LeftYamada, RightYamada, SSet, SSet), MoritaError> {
    let t = &ys.t;
    let left = build_left_yamada(t, &ys.x)?;
    let right = build_right_yamada(t, &ys.y)?;
    let (ml, mr) = (left.pairs.len(), right.pairs.len());
    let mut lt = Vec::with_capacity(t.order() * ml);
    let mut rt = Vec::with_capacity(t.order() * mr);
    for s in t.elements() {
        // (x, u)·s = (x·r(us), us)
        for &(u, a) in &left.pairs {
            let us = t.mul(u, s);
            let a2 = ys.x.restrict(a, t.index_of(t.r(us)).unwrap()).unwrap();
            lt.push(left.pairs.binary_search(&(us, a2)).unwrap());
        }
        // s·(u, y) = (su, d(su)·y)
        for &(u, b) in &right.pairs {
            let su = t.mul(s, u);
            let b2 = ys.y.restrict(b, t.index_of(t.d(su)).unwrap()).unwrap();
            rt.push(right.index_of(su, b2).unwrap());
        }
    }
    let s_l = SSet::new(Side::Right, t.semigroup().clone(), ml, lt)?;
    let s_r = SSet::new(Side::Left, t.semigroup().clone(), mr, rt)?;
    Ok((left, right, s_l, s_r))
}

/// Normal form of `xu ⊗ sy`: `(x·r(us)) r(us) ⊗ us (d(us)·y)`, as a pair of
/// carrier elements of `S_L × S_R`.
pub fn normalize(ys: &YamadaSemigroup, data: &MoritaData, l: Elem, r: Elem) -> (Elem, Elem) {
    let t = &ys.t;
    let (u, a) = data.left.pairs[l];
    let (s, b) = data.right.pairs[r];
    let us = t.mul(u, s);
    let a2 = ys.x.restrict(a, t.index_of(t.r(us)).unwrap()).unwrap();
    let b2 = ys.y.restrict(b, t.index_of(t.d(us)).unwrap()).unwrap();
    (
        data.left.pairs.binary_search(&(t.r(us), a2)).unwrap(),
        data.right.index_of(us, b2).unwrap(),
    )
}

/// Builds `S_L ⊗ S_R` with the pairing `⟨sy, xt⟩ = st` and checks that
/// `θ(x, s, y) = x r(s) ⊗ s y` is an isomorphism onto it, that every pair
/// normalizes within its class, and that normalized pairs are distinct
/// classes exactly when they differ.
pub fn theta_iso_check(ys: &YamadaSemigroup) -> Result<MoritaData, MoritaError> {
    let t = &ys.t;
    let (left, right, s_l, s_r) = morita_sets(ys)?;
    let tens = tensor(&s_l, &s_r)?;
    let pairing: Vec<Elem> = right
        .pairs
        .iter()
        .flat_map(|&(s, _)| left.pairs.iter().map(move |&(u, _)| t.mul(s, u)))
        .collect();
    let morita = morita_product(&s_l, &s_r, &tens, &pairing)?;
    let theta: Vec<usize> = ys
        .triples
        .iter()
        .map(|&(a, s, b)| {
            let l = left.pairs.binary_search(&(t.r(s), a)).unwrap();
            tens.class_of(l, right.index_of(s, b).unwrap())
        })
        .collect();
    let data = MoritaData {
        s_l,
        s_r,
        left,
        right,
        tensor: tens,
        morita,
        theta,
    };

    if data.tensor.num_classes() != ys.triples.len() {
        return violation(format!(
            "tensor has {} classes but 𝒴 has {} elements",
            data.tensor.num_classes(),
            ys.triples.len()
        ));
    }
    let mut seen = vec![false; data.tensor.num_classes()];
    if data.theta.iter().any(|&c| std::mem::replace(&mut seen[c], true)) {
        return violation("θ is not injective");
    }
    if let Some((a, b)) = ys.semigroup.homomorphism_witness(&data.morita, &data.theta) {
        return violation(format!("θ is not multiplicative at ({a}, {b})"));
    }
    for l in 0..data.s_l.size() {
        for r in 0..data.s_r.size() {
            let (l2, r2) = normalize(ys, &data, l, r);
            if data.tensor.class_of(l, r) != data.tensor.class_of(l2, r2) {
                return violation(format!("normalizing ({l}, {r}) leaves its class"));
            }
            if normalize(ys, &data, l2, r2) != (l2, r2) {
                return violation(format!("normal form of ({l}, {r}) is not stable"));
            }
        }
    }
    Ok(data)
}

/// A generalized inverse semigroup `S` rebuilt as `𝒴(X, S/γ, Y)` with
/// `Y = E(S/λ)` and `X = E(S/ρ)`, and the isomorphism `S → 𝒴`.
#[derive(Debug, Clone)]
pub struct YamadaDecomposition {
    pub yamada: YamadaSemigroup,
    pub iso: Vec<Elem>,
}

pub fn yamada_decompose(s: &FiniteSemigroup) -> Result<YamadaDecomposition, MoritaError> {
    if !s.classify().generalized_inverse {
        return Err(MoritaError::NotGeneralizedInverse);
    }
    let lr = lambda_rho(s)?;
    let (tq, gproj) = quotient(s, &lr.gamma);
    let t = InverseSemigroup::new(tq)?;
    let (sr, lproj) = quotient(s, &lr.lambda);
    let (sl, rproj) = quotient(s, &lr.rho);
    let kr = kappa_decompose(&sr)?;
    let kl = kappa_decompose(&sl.opposite())?;

    // T ≅ (S/λ)/γ and T^op ≅ (S/ρ)^op/γ along the projections from S
    let mut to_r = vec![usize::MAX; t.order()];
    let mut to_l = vec![usize::MAX; t.order()];
    for u in s.elements() {
        for (map, v) in [(&mut to_r, kr.projection[lproj[u]]), (&mut to_l, kl.projection[rproj[u]])] {
            if map[gproj[u]] != usize::MAX && map[gproj[u]] != v {
                return violation(format!("γ-class of {u} splits in a one-sided quotient"));
            }
            map[gproj[u]] = v;
        }
    }
    if !t.semigroup().is_homomorphism(kr.quotient.semigroup(), &to_r)
        || !t.semigroup().opposite().is_homomorphism(kl.quotient.semigroup(), &to_l)
    {
        return violation("S/γ is not identified with the γ-quotients of S/λ and S/ρ");
    }
    let reindex = |p: &Presheaf, other: &InverseSemigroup, map: &[usize]| {
        let mut index_map = vec![usize::MAX; other.semilattice().order()];
        for i in t.semilattice().elements() {
            let e = t.idempotent(i);
            index_map[other.index_of(map[e]).unwrap()] = i;
        }
        p.reindex(t.semilattice().clone(), &index_map)
    };
    let y = reindex(&kr.presheaf, &kr.quotient, &to_r)?;
    let x = reindex(&kl.presheaf, &kl.quotient, &to_l)?;
    let yamada = build_yamada(&t, &x, &y)?;

    let mut iso = Vec::with_capacity(s.order());
    for u in s.elements() {
        let (_, b) = kr.yamada.pairs[kr.kappa[lproj[u]]];
        let (_, a) = kl.yamada.pairs[kl.kappa[rproj[u]]];
        let i = yamada.index_of(a, gproj[u], b).ok_or_else(|| {
            MoritaError::InternalTheoremViolation(format!("image of {u} is not a triple of 𝒴"))
        })?;
        iso.push(i);
    }
    let mut seen = vec![false; yamada.semigroup.order()];
    if yamada.semigroup.order() != s.order() || iso.iter().any(|&i| std::mem::replace(&mut seen[i], true)) {
        return violation("S → 𝒴 is not a bijection");
    }
    if let Some((a, b)) = s.homomorphism_witness(&yamada.semigroup, &iso) {
        return violation(format!("S → 𝒴 is not multiplicative at ({a}, {b})"));
    }
    Ok(YamadaDecomposition { yamada, iso })
}

/// Small Yamada inputs used in tests and fixtures.
pub mod examples {
    use std::collections::BTreeMap;

    use super::*;
    use crate::presheaf::examples::{p3, points};
    use crate::semigroup::examples::chain;

    pub fn sl2() -> InverseSemigroup {
        InverseSemigroup::new(chain(2)).expect("the two-element chain is inverse")
    }

    /// `T = SL2`, `X` with fibers `{a}` over the top and `{b, c}` below with
    /// `a|_0 = b`, and `Y = P3`: five elements.
    pub fn order_five() -> (InverseSemigroup, Presheaf, Presheaf) {
        let t = sl2();
        let mut r = BTreeMap::new();
        r.insert((1, 0), vec![1]);
        let x = Presheaf::from_restrictions(t.semilattice().clone(), &[vec![1, 2], vec![0]], &r)
            .expect("valid presheaf");
        (t, x, p3())
    }

    /// `T = SL2`, singleton fibers on the left and `Y = P3`.
    pub fn y3_flavored() -> (InverseSemigroup, Presheaf, Presheaf) {
        let t = sl2();
        let x = points(t.semilattice());
        (t, x, p3())
    }
}

#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;
    use crate::morphism::are_isomorphic;
    use crate::presheaf::examples::points;
    use crate::semigroup::examples::{chain, symmetric_inverse_2, y3};

    #[test]
    fn y3_flavored_build() {
        let (t, x, y) = y3_flavored();
        let ys = build_yamada(&t, &x, &y).unwrap();
        assert_eq!(ys.semigroup.order(), 3);
        assert!(are_isomorphic(&ys.semigroup, &y3()));
        let pr = lambda_rho_projections(&ys).unwrap();
        assert!(are_isomorphic(&pr.right.semigroup, &y3()));
        assert!(are_isomorphic(&pr.left.semigroup, &chain(2)));
    }

    #[test]
    fn singleton_fibers_on_both_sides() {
        let t = InverseSemigroup::new(symmetric_inverse_2()).unwrap();
        let pts = points(t.semilattice());
        let ys = build_yamada(&t, &pts, &pts).unwrap();
        assert!(are_isomorphic(&ys.semigroup, t.semigroup()));
        let pr = lambda_rho_projections(&ys).unwrap();
        assert!(are_isomorphic(&pr.right.semigroup, t.semigroup()));
        assert!(are_isomorphic(&pr.left.semigroup, t.semigroup()));
        let data = theta_iso_check(&ys).unwrap();
        assert_eq!(data.tensor.num_classes(), 7);
    }

    #[test]
    fn order_five_build() {
        let (t, x, y) = order_five();
        let ys = build_yamada(&t, &x, &y).unwrap();
        assert_eq!(ys.semigroup.order(), 5);
        let c = ys.semigroup.classify();
        assert!(c.band && c.generalized_inverse);
        let pr = lambda_rho_projections(&ys).unwrap();
        assert_eq!(pr.right.semigroup.order(), 3);
        assert_eq!(pr.left.semigroup.order(), 3);
        let data = theta_iso_check(&ys).unwrap();
        assert_eq!(data.morita.order(), 5);
    }

    #[test]
    fn wrong_inputs() {
        let t = InverseSemigroup::new(symmetric_inverse_2()).unwrap();
        let (_, x, y) = order_five();
        assert!(matches!(build_yamada(&t, &x, &y), Err(MoritaError::BaseMismatch("X"))));
    }

    #[test]
    fn trivial_tensor() {
        let one = FiniteSemigroup::trivial();
        let q = SSet::new(Side::Right, one.clone(), 1, vec![0]).unwrap();
        let p = SSet::new(Side::Left, one, 1, vec![0]).unwrap();
        let t = tensor(&q, &p).unwrap();
        assert_eq!(t.num_classes(), 1);
        let m = morita_product(&q, &p, &t, &[0]).unwrap();
        assert!(m.same_table(&FiniteSemigroup::trivial()));
        assert!(matches!(tensor(&p, &q), Err(MoritaError::WrongSide { .. })));
    }

    #[test]
    fn sl2_on_itself() {
        // classes of SL2 ⊗ SL2: (a·s, b) ~ (a, s·b); everything meets (0, 0)
        // except (1, 1)
        let s = chain(2);
        let table = s.flat_table().to_vec();
        let q = SSet::new(Side::Right, s.clone(), 2, table.clone()).unwrap();
        let p = SSet::new(Side::Left, s.clone(), 2, table).unwrap();
        let t = tensor(&q, &p).unwrap();
        assert_eq!(t.classes.to_string(), "0 1 2 | 3");
        assert!(balanced_check(&q, &p, |a, b| s.mul(a, b)));
        assert!(balanced_check(&q, &p, |_, _| 0));
        assert_eq!(balanced_witness(&q, &p, |a, _| a), Some((1, 0, 0)));
    }

    #[test]
    fn non_action_is_rejected() {
        // 0·x must equal 0·(1·x); here 1 swaps the points but 0 does not absorb
        let s = chain(2);
        assert!(matches!(
            SSet::new(Side::Left, s, 2, vec![0, 1, 1, 0]),
            Err(MoritaError::NotAnAction { .. })
        ));
    }

    #[test]
    fn non_bilinear_pairing() {
        let s = chain(2);
        let table = s.flat_table().to_vec();
        let q = SSet::new(Side::Right, s.clone(), 2, table.clone()).unwrap();
        let p = SSet::new(Side::Left, s, 2, table).unwrap();
        let t = tensor(&q, &p).unwrap();
        assert!(matches!(
            morita_product(&q, &p, &t, &[1, 1, 1, 1]),
            Err(MoritaError::NotBilinear { .. })
        ));
    }

    #[test]
    fn normal_forms() {
        let (t, x, y) = order_five();
        let ys = build_yamada(&t, &x, &y).unwrap();
        let data = theta_iso_check(&ys).unwrap();
        // a normalized pair (x r(s), s y) is fixed
        let l = data.left.pairs.binary_search(&(1, 0)).unwrap();
        let r = data.right.index_of(1, 0).unwrap();
        assert_eq!(normalize(&ys, &data, l, r), (l, r));
        // a·1 ⊗ 0·y0 rewrites to (a·0)·0 ⊗ 0·y0 = b·0 ⊗ 0·y0
        let r0 = data.right.index_of(0, 1).unwrap();
        let (l2, r2) = normalize(&ys, &data, l, r0);
        assert_eq!(data.left.pairs[l2], (0, 1));
        assert_eq!(r2, r0);
    }

    #[test]
    fn decomposing_generalized_inverse_semigroups() {
        for s in [y3(), symmetric_inverse_2(), chain(3), y3().opposite()] {
            let d = yamada_decompose(&s).unwrap();
            assert!(s.is_homomorphism(&d.yamada.semigroup, &d.iso));
            theta_iso_check(&d.yamada).unwrap();
        }
        assert!(matches!(
            yamada_decompose(&crate::semigroup::examples::null(2)),
            Err(MoritaError::NotGeneralizedInverse)
        ));
    }
}

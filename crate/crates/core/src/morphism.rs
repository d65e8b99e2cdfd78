//! Homomorphism search between finite semigroups.
//!
//! Backtracking assigns images element by element; every assignment forces
//! `φ(ab) = φ(a)φ(b)` for all already-assigned `b`, which is propagated
//! eagerly so contradictions surface early.

use crate::semigroup::{Elem, FiniteSemigroup};

const UNSET: usize = usize::MAX;

/// Per-element invariants preserved by isomorphisms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSignature {
    index: usize,
    period: usize,
    left_ideal: usize,
    right_ideal: usize,
    ideal: usize,
    left_fixers: usize,
    right_fixers: usize,
    square_roots: usize,
    centralizer: usize,
}

pub fn element_signatures(s: &FiniteSemigroup) -> Vec<ElementSignature> {
    let n = s.order();
    let mut roots = vec![0; n];
    for x in s.elements() {
        roots[s.mul(x, x)] += 1;
    }
    let count = |v: Vec<bool>| v.into_iter().filter(|&b| b).count();
    s.elements()
        .map(|a| {
            let (index, period) = s.index_period(a);
            ElementSignature {
                index,
                period,
                left_ideal: count(s.principal_left_ideal(a)),
                right_ideal: count(s.principal_right_ideal(a)),
                ideal: count(s.principal_ideal(a)),
                left_fixers: s.elements().filter(|&x| s.mul(x, a) == a).count(),
                right_fixers: s.elements().filter(|&x| s.mul(a, x) == a).count(),
                square_roots: roots[a],
                centralizer: s.elements().filter(|&x| s.mul(a, x) == s.mul(x, a)).count(),
            }
        })
        .collect()
}

/// Isomorphism-invariant key: the sorted multiset of element signatures.
pub fn invariant_key(s: &FiniteSemigroup) -> Vec<ElementSignature> {
    let mut sig = element_signatures(s);
    sig.sort_unstable();
    sig
}

#[derive(Clone)]
struct State {
    map: Vec<Elem>,
    used: Vec<bool>,
    assigned: Vec<Elem>,
}

struct Search<'a> {
    src: &'a FiniteSemigroup,
    tgt: &'a FiniteSemigroup,
    allowed: Vec<Vec<bool>>,
    injective: bool,
}

impl Search<'_> {
    fn assign(&self, st: &mut State, a: Elem, m: Elem) -> bool {
        let mut queue = vec![(a, m)];
        while let Some((x, y)) = queue.pop() {
            if st.map[x] != UNSET {
                if st.map[x] != y {
                    return false;
                }
                continue;
            }
            if !self.allowed[x][y] || (self.injective && st.used[y]) {
                return false;
            }
            st.map[x] = y;
            st.used[y] = true;
            st.assigned.push(x);
            for i in 0..st.assigned.len() {
                let z = st.assigned[i];
                let fz = st.map[z];
                queue.push((self.src.mul(x, z), self.tgt.mul(y, fz)));
                queue.push((self.src.mul(z, x), self.tgt.mul(fz, y)));
            }
        }
        true
    }

    fn run(&self, st: State, limit: usize, out: &mut Vec<Vec<Elem>>) {
        if out.len() >= limit {
            return;
        }
        let Some(a) = (0..self.src.order()).find(|&a| st.map[a] == UNSET) else {
            out.push(st.map);
            return;
        };
        for m in 0..self.tgt.order() {
            if !self.allowed[a][m] || (self.injective && st.used[m]) {
                continue;
            }
            let mut next = st.clone();
            if self.assign(&mut next, a, m) {
                self.run(next, limit, out);
                if out.len() >= limit {
                    return;
                }
            }
        }
    }
}

fn search(
    src: &FiniteSemigroup,
    tgt: &FiniteSemigroup,
    allowed: Vec<Vec<bool>>,
    injective: bool,
    limit: usize,
) -> Vec<Vec<Elem>> {
    let engine = Search {
        src,
        tgt,
        allowed,
        injective,
    };
    let st = State {
        map: vec![UNSET; src.order()],
        used: vec![false; tgt.order()],
        assigned: Vec::new(),
    };
    let mut out = Vec::new();
    engine.run(st, limit, &mut out);
    out
}

/// An isomorphism `a → b` as an image array, if one exists.
pub fn find_isomorphism(a: &FiniteSemigroup, b: &FiniteSemigroup) -> Option<Vec<Elem>> {
    if a.order() != b.order() {
        return None;
    }
    let sa = element_signatures(a);
    let sb = element_signatures(b);
    let mut ka = sa.clone();
    let mut kb = sb.clone();
    ka.sort_unstable();
    kb.sort_unstable();
    if ka != kb {
        return None;
    }
    let allowed = sa
        .iter()
        .map(|x| sb.iter().map(|y| x == y).collect())
        .collect();
    search(a, b, allowed, true, 1).pop()
}

pub fn are_isomorphic(a: &FiniteSemigroup, b: &FiniteSemigroup) -> bool {
    find_isomorphism(a, b).is_some()
}

/// Injective homomorphism `src → tgt`, pruned by monogenic type
/// (index and period are preserved by any embedding).
pub fn find_embedding(src: &FiniteSemigroup, tgt: &FiniteSemigroup) -> Option<Vec<Elem>> {
    if src.order() > tgt.order() || src.idempotents().len() > tgt.idempotents().len() {
        return None;
    }
    let ts: Vec<(usize, usize)> = tgt.elements().map(|m| tgt.index_period(m)).collect();
    let allowed = src
        .elements()
        .map(|a| {
            let ip = src.index_period(a);
            ts.iter().map(|&t| t == ip).collect()
        })
        .collect();
    search(src, tgt, allowed, true, 1).pop()
}

/// Every homomorphism `src → tgt`.
pub fn all_homomorphisms(src: &FiniteSemigroup, tgt: &FiniteSemigroup) -> Vec<Vec<Elem>> {
    let allowed = vec![vec![true; tgt.order()]; src.order()];
    search(src, tgt, allowed, false, usize::MAX)
}

/// Every automorphism of `s`.
pub fn automorphisms(s: &FiniteSemigroup) -> Vec<Vec<Elem>> {
    let sig = element_signatures(s);
    let allowed = sig
        .iter()
        .map(|x| sig.iter().map(|y| x == y).collect())
        .collect();
    search(s, s, allowed, true, usize::MAX)
}

/// Relabels `s` along the bijection `perm` (element `a` becomes `perm[a]`).
pub fn relabel(s: &FiniteSemigroup, perm: &[Elem]) -> FiniteSemigroup {
    let n = s.order();
    let mut table = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            table[perm[a] * n + perm[b]] = perm[s.mul(a, b)];
        }
    }
    FiniteSemigroup::from_flat_unchecked(n, table)
}

/// Lexicographically least table over all relabelings. Intended for order ≤ 6.
pub fn canonical_table(s: &FiniteSemigroup) -> Vec<Elem> {
    let n = s.order();
    let mut perm: Vec<Elem> = (0..n).collect();
    let mut best: Option<Vec<Elem>> = None;
    let mut table = vec![0; n * n];
    loop {
        for a in 0..n {
            for b in 0..n {
                table[perm[a] * n + perm[b]] = perm[s.mul(a, b)];
            }
        }
        if best.as_ref().is_none_or(|b| table < *b) {
            best = Some(table.clone());
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.unwrap()
}

pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::examples::*;

    #[test]
    fn isomorphism_between_relabelings() {
        let s = symmetric_inverse_2();
        let perm = vec![3, 0, 6, 1, 5, 2, 4];
        let t = relabel(&s, &perm);
        let iso = find_isomorphism(&s, &t).unwrap();
        assert!(s.is_homomorphism(&t, &iso));
        assert_eq!(canonical_table(&s), canonical_table(&t));
    }

    #[test]
    fn left_and_right_zero_are_not_isomorphic() {
        assert!(!are_isomorphic(&left_zero(2), &right_zero(2)));
        assert!(are_isomorphic(&left_zero(2), &right_zero(2).opposite()));
    }

    #[test]
    fn embeddings() {
        let e = find_embedding(&chain(2), &symmetric_inverse_2()).unwrap();
        assert!(chain(2).is_homomorphism(&symmetric_inverse_2(), &e));
        assert!(find_embedding(&cyclic_group(3), &symmetric_inverse_2()).is_none());
        assert!(find_embedding(&cyclic_group(2), &symmetric_inverse_2()).is_some());
    }

    #[test]
    fn counting_homomorphisms() {
        // maps from the trivial semigroup pick an idempotent
        assert_eq!(
            all_homomorphisms(&FiniteSemigroup::trivial(), &symmetric_inverse_2()).len(),
            4
        );
        // the symmetric group on two points has only the identity automorphism
        assert_eq!(automorphisms(&cyclic_group(2)).len(), 1);
        assert_eq!(automorphisms(&right_zero(3)).len(), 6);
    }

    #[test]
    fn permutations_cover_factorial() {
        let mut p = vec![0, 1, 2, 3];
        let mut k = 1;
        while next_permutation(&mut p) {
            k += 1;
        }
        assert_eq!(k, 24);
    }
}

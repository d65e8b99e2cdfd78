//! A second enumerator with no pruning, used as an oracle for small orders:
//! every `n^(n²)` table is tested for associativity and reduced by taking the
//! least table over all `n!` relabelings.

use std::collections::BTreeSet;

use gis_core::FiniteSemigroup;

/// Largest order the naive enumerator accepts (`3^9` tables).
pub const NAIVE_MAX_ORDER: usize = 3;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn associative(n: usize, t: &[usize]) -> bool {
    (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| t[t[a * n + b] * n + c] == t[a * n + t[b * n + c]])))
}

/// The lexicographically least table isomorphic to `t`.
pub fn naive_canonical(n: usize, t: &[usize], perms: &[Vec<usize>]) -> Vec<usize> {
    perms
        .iter()
        .map(|p| {
            // relabel x ↦ p[x]: new[p a][p b] = p[t[a][b]]
            let mut u = vec![0; n * n];
            for a in 0..n {
                for b in 0..n {
                    u[p[a] * n + p[b]] = p[t[a * n + b]];
                }
            }
            u
        })
        .min()
        .unwrap_or_default()
}

/// Canonical tables of all semigroups of order `n`, one per isomorphism class.
pub fn naive_enumerate(n: usize) -> BTreeSet<Vec<usize>> {
    assert!(n <= NAIVE_MAX_ORDER, "naive enumeration is limited to order {NAIVE_MAX_ORDER}");
    let perms = permutations(n);
    let mut out = BTreeSet::new();
    let cells = n * n;
    let mut t = vec![0; cells];
    loop {
        if associative(n, &t) {
            out.insert(naive_canonical(n, &t, &perms));
        }
        let Some(i) = t.iter().position(|&v| v + 1 < n) else {
            break;
        };
        t[i] += 1;
        t[..i].iter_mut().for_each(|v| *v = 0);
    }
    out
}

/// Canonical tables of the given semigroups under the same relabeling rule.
pub fn canonical_set(members: &[FiniteSemigroup], n: usize) -> BTreeSet<Vec<usize>> {
    let perms = permutations(n);
    members
        .iter()
        .map(|s| naive_canonical(n, s.flat_table(), &perms))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_two_by_hand() {
        // 16 tables, 8 associative, 5 up to swapping the two elements
        assert_eq!(naive_enumerate(1).len(), 1);
        assert_eq!(naive_enumerate(2).len(), 5);
        assert_eq!(permutations(3).len(), 6);
    }
}

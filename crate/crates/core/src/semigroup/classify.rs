use serde::{Deserialize, Serialize};

use super::{Elem, FiniteSemigroup};

/// Regularity and band-variety flags of a finite semigroup.
///
/// The band identities (`normal`, `left_normal`, ...) are evaluated over
/// `E(S)` only; `band` additionally requires every element to be idempotent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub regular: bool,
    pub orthodox: bool,
    pub inverse: bool,
    pub band: bool,
    /// `efgh = egfh`
    pub normal: bool,
    /// `efg = egf`
    pub left_normal: bool,
    /// `efg = feg`
    pub right_normal: bool,
    /// `efe = ef`
    pub left_regular: bool,
    /// `efe = fe`
    pub right_regular: bool,
    pub generalized_inverse: bool,
    pub left_generalized_inverse: bool,
    pub right_generalized_inverse: bool,
}

impl Classification {
    /// One-line description, most specific class last, e.g.
    /// `band: right normal, right regular; right generalized inverse`.
    pub fn summary(&self) -> String {
        let mut parts = Vec::new();
        if self.band {
            let mut flags = Vec::new();
            if self.normal && !self.left_normal && !self.right_normal {
                flags.push("normal");
            }
            if self.left_normal {
                flags.push("left normal");
            }
            if self.right_normal {
                flags.push("right normal");
            }
            if self.left_regular {
                flags.push("left regular");
            }
            if self.right_regular {
                flags.push("right regular");
            }
            if flags.is_empty() {
                parts.push("band".to_string());
            } else {
                parts.push(format!("band: {}", flags.join(", ")));
            }
        }
        let class = if self.inverse {
            "inverse"
        } else if self.right_generalized_inverse {
            "right generalized inverse"
        } else if self.left_generalized_inverse {
            "left generalized inverse"
        } else if self.generalized_inverse {
            "generalized inverse"
        } else if self.orthodox {
            "orthodox"
        } else if self.regular {
            "regular"
        } else {
            "not regular"
        };
        parts.push(class.to_string());
        parts.join("; ")
    }
}

/// Outcome of each band clause of the classical characterization list,
/// evaluated independently on a band. Every `*_holds` field must be true.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BandCharacterizations {
    pub l_unipotent: bool,
    pub r_unipotent: bool,
    pub l_is_equality: bool,
    pub r_is_equality: bool,
    pub locally_inverse: bool,
    /// L-unipotent ⇔ right regular ⇔ L equality, and γ = R on such bands.
    pub right_regular_clause_holds: bool,
    /// R-unipotent ⇔ left regular ⇔ R equality, and γ = L on such bands.
    pub left_regular_clause_holds: bool,
    /// locally inverse ⇔ normal
    pub normal_clause_holds: bool,
    /// right normal ⇔ normal ∧ L-unipotent
    pub right_normal_clause_holds: bool,
    /// left normal ⇔ normal ∧ R-unipotent
    pub left_normal_clause_holds: bool,
}

impl BandCharacterizations {
    pub fn all_hold(&self) -> bool {
        self.right_regular_clause_holds
            && self.left_regular_clause_holds
            && self.normal_clause_holds
            && self.right_normal_clause_holds
            && self.left_normal_clause_holds
    }
}

impl FiniteSemigroup {
    fn identity3(&self, es: &[Elem], lhs: impl Fn(Elem, Elem, Elem) -> Elem, rhs: impl Fn(Elem, Elem, Elem) -> Elem) -> bool {
        es.iter().all(|&e| {
            es.iter()
                .all(|&f| es.iter().all(|&g| lhs(e, f, g) == rhs(e, f, g)))
        })
    }

    pub fn classify(&self) -> Classification {
        let es = self.idempotents();
        let m = |a: Elem, b: Elem| self.mul(a, b);
        let m3 = |a, b, c| m(m(a, b), c);

        let regular = self.is_regular();
        let closed = es
            .iter()
            .all(|&e| es.iter().all(|&f| self.is_idempotent(m(e, f))));
        let orthodox = regular && closed;
        let inverse = regular && self.elements().all(|s| self.inverses_of(s).len() == 1);
        let band = es.len() == self.order;

        // efgh = egfh only needs the distinct pairs (fg, gf) with fg ≠ gf
        let mut swaps: Vec<(Elem, Elem)> = es
            .iter()
            .flat_map(|&f| es.iter().map(move |&g| (m(f, g), m(g, f))))
            .filter(|&(a, b)| a < b)
            .collect();
        swaps.sort_unstable();
        swaps.dedup();
        let normal = swaps.iter().all(|&(a, b)| {
            es.iter()
                .all(|&e| es.iter().all(|&h| m3(e, a, h) == m3(e, b, h)))
        });
        let left_normal = self.identity3(&es, m3, |e, f, g| m3(e, g, f));
        let right_normal = self.identity3(&es, m3, |e, f, g| m3(f, e, g));
        let left_regular = es
            .iter()
            .all(|&e| es.iter().all(|&f| m3(e, f, e) == m(e, f)));
        let right_regular = es
            .iter()
            .all(|&e| es.iter().all(|&f| m3(e, f, e) == m(f, e)));

        Classification {
            regular,
            orthodox,
            inverse,
            band,
            normal,
            left_normal,
            right_normal,
            left_regular,
            right_regular,
            generalized_inverse: orthodox && normal,
            left_generalized_inverse: orthodox && left_normal,
            right_generalized_inverse: orthodox && right_normal,
        }
    }

    /// Each idempotent's Green class under `classes` holds exactly one idempotent.
    pub(crate) fn unipotent_wrt(&self, classes: &crate::Partition) -> bool {
        let mut count = vec![0usize; classes.num_classes()];
        for e in self.idempotents() {
            count[classes.class_of(e)] += 1;
        }
        count.iter().all(|&c| c == 1)
    }

    /// Every local submonoid `eSe` is an inverse semigroup.
    pub fn is_locally_inverse(&self) -> bool {
        self.idempotents().into_iter().all(|e| {
            self.local_submonoid(e)
                .map(|l| l.semigroup.classify().inverse)
                .unwrap_or(false)
        })
    }

    /// Evaluates the band clauses of the normal-band characterization,
    /// each side computed independently. `None` if `self` is not a band.
    pub fn band_characterizations(&self) -> Option<BandCharacterizations> {
        let c = self.classify();
        if !c.band {
            return None;
        }
        let g = self.green();
        let gamma = crate::congruence::gamma_partition(self);
        let l_unipotent = self.unipotent_wrt(&g.l);
        let r_unipotent = self.unipotent_wrt(&g.r);
        let l_eq = g.l.is_equality();
        let r_eq = g.r.is_equality();
        let locally_inverse = self.is_locally_inverse();

        let rr = l_unipotent == c.right_regular
            && c.right_regular == l_eq
            && (!c.right_regular || gamma == g.r);
        let lr = r_unipotent == c.left_regular
            && c.left_regular == r_eq
            && (!c.left_regular || gamma == g.l);
        Some(BandCharacterizations {
            l_unipotent,
            r_unipotent,
            l_is_equality: l_eq,
            r_is_equality: r_eq,
            locally_inverse,
            right_regular_clause_holds: rr,
            left_regular_clause_holds: lr,
            normal_clause_holds: locally_inverse == c.normal,
            right_normal_clause_holds: c.right_normal == (c.normal && l_unipotent),
            left_normal_clause_holds: c.left_normal == (c.normal && r_unipotent),
        })
    }
}

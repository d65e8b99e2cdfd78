//! Worked examples on the shipped fixtures, through the public API only.

use std::collections::BTreeSet;

use gis_core::congruence::{gamma, lambda_rho, quotient, subdirect_embed, Congruence};
use gis_core::enumerate::{enumerate_semigroups, EnumerationLimits, SemigroupClass};
use gis_core::etale::{free_etale, EtaleAction, InverseSemigroup};
use gis_core::format::parse_sgp;
use gis_core::madhavan::{build_m_rho, embedding_search, RhoRelation};
use gis_core::morita::{build_yamada, examples, theta_iso_check};
use gis_core::morphism::{are_isomorphic, canonical_table};
use gis_core::presheaf::{band_to_presheaf, parse_presheaf, presheaf_roundtrip, Presheaf};
use gis_core::yamada::kappa_decompose;
use gis_core::FiniteSemigroup;

fn fixture(name: &str) -> FiniteSemigroup {
    let text = match name {
        "rz2" => include_str!("../../../fixtures/rz2.sgp"),
        "lz2" => include_str!("../../../fixtures/lz2.sgp"),
        "sl2" => include_str!("../../../fixtures/sl2.sgp"),
        "y3" => include_str!("../../../fixtures/y3.sgp"),
        "i2" => include_str!("../../../fixtures/i2.sgp"),
        "m_full2" => include_str!("../../../fixtures/m_full2.sgp"),
        _ => unreachable!("no fixture {name}"),
    };
    parse_sgp(text).unwrap()
}

fn p3() -> Presheaf {
    parse_presheaf(include_str!("../../../fixtures/p3.json")).unwrap()
}

#[test]
fn fixture_classifications() {
    let c = fixture("rz2").classify();
    assert_eq!(c.summary(), "band: right normal, right regular; right generalized inverse");
    let c = fixture("lz2").classify();
    assert!(c.band && c.left_normal && !c.right_normal);
    let c = fixture("i2").classify();
    assert!(c.inverse && c.generalized_inverse);
    assert_eq!(fixture("i2").idempotents().len(), 4);
    assert_eq!(fixture("y3").order(), 3);
    assert!(fixture("y3").classify().right_normal);
}

#[test]
fn green_relations_on_rz2_and_sl2() {
    let g = fixture("rz2").green();
    assert!(g.r.is_full() && g.l.is_equality());
    let g = fixture("sl2").green();
    assert!(g.l.is_equality() && g.r.is_equality() && g.h.is_equality() && g.d.is_equality() && g.j.is_equality());
}

#[test]
fn gamma_lambda_rho_on_small_fixtures() {
    let rz2 = fixture("rz2");
    assert!(gamma(&rz2).unwrap().partition().is_full());
    let lr = lambda_rho(&rz2).unwrap();
    assert!(lr.lambda.partition().is_equality() && lr.rho.partition().is_full());
    let lr = lambda_rho(&fixture("lz2")).unwrap();
    assert!(lr.lambda.partition().is_full() && lr.rho.partition().is_equality());

    let i2 = fixture("i2");
    assert!(gamma(&i2).unwrap().partition().is_equality());

    // Y3 modulo γ is the two-element chain
    let y3 = fixture("y3");
    let (q, _) = quotient(&y3, &gamma(&y3).unwrap());
    assert!(are_isomorphic(&q, &fixture("sl2")));

    // RZ2 sits inside trivial × RZ2
    let sub = subdirect_embed(&rz2).unwrap();
    assert_eq!(sub.left_factor.order(), 1);
    assert!(are_isomorphic(&sub.right_factor, &rz2));
    assert_eq!(sub.map.iter().collect::<BTreeSet<_>>().len(), 2);
}

#[test]
fn quotients_by_trivial_congruences() {
    let i2 = fixture("i2");
    let (q, _) = quotient(&i2, &Congruence::equality(&i2));
    assert!(are_isomorphic(&q, &i2));
    let (q, _) = quotient(&i2, &Congruence::full(&i2));
    assert_eq!(q.order(), 1);
}

#[test]
fn p3_gives_y3_and_back() {
    let p = p3();
    assert!(p.has_global_support());
    let band = p.to_band().unwrap();
    assert!(are_isomorphic(&band, &fixture("y3")));
    assert!(presheaf_roundtrip(&p).unwrap().holds());
    let back = band_to_presheaf(&fixture("y3")).unwrap();
    assert_eq!(back.carrier_size(), 3);
    let mut sizes: Vec<usize> = back.fibers().iter().map(Vec::len).collect();
    sizes.sort_unstable();
    assert_eq!(sizes, vec![1, 2]);
}

#[test]
fn free_etale_over_sl2_and_p3() {
    let t = InverseSemigroup::new(fixture("sl2")).unwrap();
    let free = free_etale(&t, &p3()).unwrap();
    assert_eq!(free.action.carrier_size(), 3);
}

#[test]
fn left_translation_of_i2_is_etale() {
    let t = InverseSemigroup::new(fixture("i2")).unwrap();
    let a = EtaleAction::left_translation(&t);
    let p = a.presheaf().unwrap();
    assert_eq!(p.base().order(), 4);
    assert_eq!(p.carrier_size(), 7);
}

#[test]
fn kappa_recovers_sl2_and_p3_from_y3() {
    let k = kappa_decompose(&fixture("y3")).unwrap();
    assert!(are_isomorphic(k.quotient.semigroup(), &fixture("sl2")));
    assert_eq!(k.presheaf.carrier_size(), 3);
    let k = kappa_decompose(&fixture("rz2")).unwrap();
    assert_eq!(k.quotient.order(), 1);
    assert_eq!(k.presheaf.carrier_size(), 2);
}

#[test]
fn order_five_yamada_band() {
    let (t, x, y) = examples::order_five();
    let ys = build_yamada(&t, &x, &y).unwrap();
    assert_eq!(ys.semigroup.order(), 5);
    assert!(ys.semigroup.classify().band && ys.semigroup.classify().generalized_inverse);
    let data = theta_iso_check(&ys).unwrap();
    assert_eq!(data.tensor.num_classes(), 5);
    assert_eq!(data.right.semigroup.order(), 3);
    assert_eq!(data.left.semigroup.order(), 3);
}

#[test]
fn madhavan_on_two_points() {
    let m = build_m_rho(&RhoRelation::equality(2).unwrap()).unwrap();
    assert!(are_isomorphic(&m.semigroup, &fixture("i2")));
    let m = build_m_rho(&RhoRelation::full(2).unwrap()).unwrap();
    assert!(are_isomorphic(&m.semigroup, &fixture("m_full2")));
    // RZ2 lands on the two constant maps
    let e = embedding_search(&fixture("rz2"), &m).unwrap().unwrap();
    assert!(fixture("rz2").is_homomorphism(&m.semigroup, &e));
}

/// Bands of order 3 by brute force over idempotent-diagonal tables.
#[test]
fn bands_of_order_three_match_a_filtered_search() {
    let n = 3;
    let mut found = BTreeSet::new();
    for code in 0..3usize.pow(6) {
        let mut t = [0usize; 9];
        let mut c = code;
        for a in 0..n {
            for b in 0..n {
                t[a * n + b] = if a == b {
                    a
                } else {
                    let v = c % n;
                    c /= n;
                    v
                };
            }
        }
        let assoc = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| t[t[a * n + b] * n + c] == t[a * n + t[b * n + c]])));
        if assoc {
            found.insert(canonical_table(&FiniteSemigroup::from_flat(n, t.to_vec()).unwrap()));
        }
    }
    let fast = enumerate_semigroups(n, SemigroupClass::Band, EnumerationLimits::default()).unwrap();
    let fast: BTreeSet<_> = fast.iter().map(canonical_table).collect();
    assert_eq!(fast, found);
}

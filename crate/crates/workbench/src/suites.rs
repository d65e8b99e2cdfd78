//! Property suites: each runs one family of structural checks over every
//! applicable member of a corpus.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde_json::{json, Value};

use gis_core::congruence::{
    idempotent_purity_witness, is_minimum_with, lambda_rho, quotient, subdirect_embed,
    DEFAULT_CONGRUENCE_BOUND,
};
use gis_core::enumerate::SemigroupClass;
use gis_core::etale::{
    etale_to_presheaf_action, free_etale, presheaf_action_to_etale, universal_property_check, EtaleAction,
    InverseSemigroup, UNIQUENESS_BOUND,
};
use gis_core::madhavan::{
    build_m_rho, embed_somewhere, idempotent_characterization_check, MRho, RhoRelation,
};
use gis_core::morita::{theta_iso_check, yamada_decompose};
use gis_core::morphism::are_isomorphic;
use gis_core::presheaf::examples::points;
use gis_core::presheaf::{band_roundtrip, band_to_presheaf, order_and_compat, presheaf_roundtrip, Presheaf, PresheafMorphism};
use gis_core::yamada::{build_right_yamada, etale_structure, free_roundtrip_check, kappa_decompose, l_cover_check};
use gis_core::{Elem, FiniteSemigroup, Partition};

use crate::corpus::{Corpus, CorpusEntry};
use crate::error::WorkbenchError;
use crate::fixtures;
use crate::report::RunReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Prop1_1,
    Prop1_2,
    Thm1_3,
    Thm2_1,
    Lemma2_2,
    Prop3_2,
    Prop3_3,
    Prop4_2,
    Thm4_5,
    Prop4_6,
    Thm5_1,
    Madhavan,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::Prop1_1,
        Suite::Prop1_2,
        Suite::Thm1_3,
        Suite::Thm2_1,
        Suite::Lemma2_2,
        Suite::Prop3_2,
        Suite::Prop3_3,
        Suite::Prop4_2,
        Suite::Thm4_5,
        Suite::Prop4_6,
        Suite::Thm5_1,
        Suite::Madhavan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Prop1_1 => "prop1.1",
            Suite::Prop1_2 => "prop1.2",
            Suite::Thm1_3 => "thm1.3",
            Suite::Thm2_1 => "thm2.1",
            Suite::Lemma2_2 => "lemma2.2",
            Suite::Prop3_2 => "prop3.2",
            Suite::Prop3_3 => "prop3.3",
            Suite::Prop4_2 => "prop4.2",
            Suite::Thm4_5 => "thm4.5",
            Suite::Prop4_6 => "prop4.6",
            Suite::Thm5_1 => "thm5.1",
            Suite::Madhavan => "madhavan",
        }
    }

    /// The class a corpus for this suite is enumerated from.
    pub fn class(self) -> SemigroupClass {
        match self {
            Suite::Prop1_1 => SemigroupClass::Regular,
            Suite::Prop1_2 | Suite::Thm1_3 | Suite::Thm5_1 => SemigroupClass::GeneralizedInverse,
            Suite::Thm2_1 | Suite::Lemma2_2 => SemigroupClass::RightNormalBand,
            Suite::Prop3_2
            | Suite::Prop3_3
            | Suite::Prop4_2
            | Suite::Thm4_5
            | Suite::Prop4_6
            | Suite::Madhavan => SemigroupClass::RightGeneralizedInverse,
        }
    }

    /// Default largest corpus order.
    pub fn default_order(self) -> usize {
        match self {
            Suite::Prop1_1 => 4,
            Suite::Madhavan => 3,
            _ => 5,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = WorkbenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| WorkbenchError::UnknownSuite(s.to_string()))
    }
}

/// Runs `suite` over every applicable member of `corpus`.
pub fn run_suite(suite: Suite, corpus: &Corpus) -> RunReport {
    let start = Instant::now();
    let mut report = RunReport::new(suite.name(), corpus.len());
    for entry in corpus.iter() {
        if suite.class().admits(&entry.classification) {
            run_member(suite, entry, &mut report);
        }
    }
    match suite {
        Suite::Thm5_1 => yamada_fixtures(&mut report),
        Suite::Madhavan => madhavan_builds(&mut report),
        _ => {}
    }
    report.elapsed_ms = start.elapsed().as_millis();
    report
}

fn run_member(suite: Suite, entry: &CorpusEntry, report: &mut RunReport) {
    let s = &entry.semigroup;
    let name = entry.name.as_str();
    match suite {
        Suite::Prop1_1 => prop1_1(name, s, report),
        Suite::Prop1_2 => prop1_2(name, s, report),
        Suite::Thm1_3 => report.record(name, "subdirect embedding", subdirect(s)),
        Suite::Thm2_1 => thm2_1(name, s, report),
        Suite::Lemma2_2 => report.record(name, "order and compatibility", lemma2_2(s)),
        Suite::Prop3_2 => prop3_2(name, s, report),
        Suite::Prop3_3 => prop3_3(name, s, report),
        Suite::Prop4_2 => prop4_2(name, s, report),
        Suite::Thm4_5 => thm4_5(name, s, report),
        Suite::Prop4_6 => report.record(name, "free étale round trip", prop4_6(s)),
        Suite::Thm5_1 => report.record(name, "θ isomorphism", thm5_1(s)),
        Suite::Madhavan => madhavan_embedding(name, s, report),
    }
}

fn err(e: impl fmt::Display) -> Value {
    Value::String(e.to_string())
}

fn ensure(ok: bool, witness: impl FnOnce() -> Value) -> Result<(), Value> {
    if ok {
        Ok(())
    } else {
        Err(witness())
    }
}

fn is_bijection(map: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    map.len() == n && map.iter().all(|&v| v < n && !std::mem::replace(&mut seen[v], true))
}

/// Compatibility of a partition with multiplication on both sides, checked
/// directly.
fn congruence_witness(s: &FiniteSemigroup, p: &Partition) -> Option<(Elem, Elem, Elem)> {
    for a in s.elements() {
        for b in s.elements().filter(|&b| p.related(a, b)) {
            for c in s.elements() {
                if !p.related(s.mul(a, c), s.mul(b, c)) || !p.related(s.mul(c, a), s.mul(c, b)) {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

fn prop1_1(name: &str, s: &FiniteSemigroup, report: &mut RunReport) {
    if let Some(b) = s.band_characterizations() {
        report.record(
            name,
            "band clauses",
            ensure(b.all_hold(), || serde_json::to_value(b).unwrap()),
        );
    }
    report.record(
        name,
        "order compatibility",
        s.order_compatibility_report().map(|_| ()).map_err(err),
    );
}

fn prop1_2(name: &str, s: &FiniteSemigroup, report: &mut RunReport) {
    let lr = match lambda_rho(s) {
        Ok(lr) => lr,
        Err(e) => return report.record(name, "λ and ρ", Err(err(e))),
    };
    for (label, c, right) in [("λ", &lr.lambda, true), ("ρ", &lr.rho, false)] {
        report.record(
            name,
            &format!("{label} is a congruence"),
            match congruence_witness(s, c.partition()) {
                None => Ok(()),
                Some((a, b, x)) => Err(json!({ "related": [a, b], "multiplier": x })),
            },
        );
        let q = quotient(s, c).0.classify();
        let one_sided = if right {
            q.right_generalized_inverse
        } else {
            q.left_generalized_inverse
        };
        report.record(
            name,
            &format!("quotient by {label} is one-sided generalized inverse"),
            ensure(one_sided, || serde_json::to_value(q).unwrap()),
        );
        let minimum = is_minimum_with(s, c, DEFAULT_CONGRUENCE_BOUND, |t| {
            let k = t.classify();
            if right {
                k.right_generalized_inverse
            } else {
                k.left_generalized_inverse
            }
        });
        report.record(
            name,
            &format!("{label} is minimum"),
            match minimum {
                Ok(true) => Ok(()),
                Ok(false) => Err(json!("a smaller congruence has a one-sided generalized inverse quotient")),
                Err(e) => Err(err(e)),
            },
        );
        report.record(
            name,
            &format!("{label} is idempotent pure"),
            match idempotent_purity_witness(s, c) {
                None => Ok(()),
                Some((e, x)) => Err(json!({ "idempotent": e, "other": x })),
            },
        );
        let green = if right { s.green_l() } else { s.green_r() };
        let es = s.idempotents();
        let agrees = es
            .iter()
            .all(|&e| es.iter().all(|&f| c.related(e, f) == green.related(e, f)));
        report.record(
            name,
            &format!("{label} restricted to E(S)"),
            ensure(agrees, || json!("differs from the Green relation on idempotents")),
        );
    }
    report.record(
        name,
        "λ ∧ ρ is equality",
        ensure(lr.lambda.meet(&lr.rho).partition().is_equality(), || json!(lr.lambda.meet(&lr.rho).partition().to_string())),
    );
}

fn subdirect(s: &FiniteSemigroup) -> Result<(), Value> {
    let e = subdirect_embed(s).map_err(err)?;
    let m = e.right_factor.order();
    let distinct: BTreeSet<usize> = e.map.iter().copied().collect();
    ensure(distinct.len() == s.order(), || json!("not injective"))?;
    ensure(s.is_homomorphism(&e.product, &e.map), || json!("not a homomorphism"))?;
    let left: BTreeSet<usize> = e.map.iter().map(|&v| v / m).collect();
    let right: BTreeSet<usize> = e.map.iter().map(|&v| v % m).collect();
    ensure(left.len() == e.left_factor.order() && right.len() == m, || json!("projection not surjective"))
}

fn thm2_1(name: &str, s: &FiniteSemigroup, report: &mut RunReport) {
    report.record(
        name,
        "band → presheaf → band",
        match band_roundtrip(s) {
            Ok(r) if r.holds() => Ok(()),
            Ok(r) => Err(json!(format!("{r:?}"))),
            Err(e) => Err(err(e)),
        },
    );
    report.record(
        name,
        "presheaf → band → presheaf",
        band_to_presheaf(s).map_err(err).and_then(|p| match presheaf_roundtrip(&p) {
            Ok(r) if r.holds() => Ok(()),
            Ok(r) => Err(json!(format!("{r:?}"))),
            Err(e) => Err(err(e)),
        }),
    );
}

fn lemma2_2(s: &FiniteSemigroup) -> Result<(), Value> {
    let p = band_to_presheaf(s).map_err(err)?;
    order_and_compat(&p).map(|_| ()).map_err(err)
}

/// Étale actions attached to `s`: left translation when `s` is inverse, its
/// own étale structure over `S/γ`, and the free étale set on `E(S)`.
fn corpus_actions(s: &FiniteSemigroup) -> Vec<(&'static str, Result<EtaleAction, Value>)> {
    let mut out = Vec::new();
    if let Ok(t) = InverseSemigroup::new(s.clone()) {
        out.push(("left translation", Ok(EtaleAction::left_translation(&t))));
    }
    out.push(("étale structure", etale_structure(s).map(|e| e.action).map_err(err)));
    out.push((
        "free on E(S)",
        kappa_decompose(s)
            .map_err(err)
            .and_then(|k| free_etale(&k.quotient, &k.presheaf).map(|f| f.action).map_err(err)),
    ));
    out
}

fn prop3_2(name: &str, s: &FiniteSemigroup, report: &mut RunReport) {
    for (label, action) in corpus_actions(s) {
        let check = format!("conversion round trips ({label})");
        let a = match action {
            Ok(a) => a,
            Err(w) => {
                report.record(name, &check, Err(w));
                continue;
            }
        };
        if a.carrier_size() > UNIQUENESS_BOUND {
            report.skip(name, &check, format!("carrier {} exceeds {UNIQUENESS_BOUND}", a.carrier_size()));
            continue;
        }
        let outcome = (|| {
            let pa = etale_to_presheaf_action(&a).map_err(err)?;
            let back = presheaf_action_to_etale(&pa).map_err(err)?;
            ensure(back == a, || json!("étale → presheaf action → étale changed the action"))?;
            let again = etale_to_presheaf_action(&back).map_err(err)?;
            ensure(again == pa, || json!("presheaf action → étale → presheaf action changed the action"))
        })();
        report.record(name, &check, outcome);
    }
}

/// (E1) `p(x)·x = x` and (E2) `p(s·x) = s p(x) s⁻¹`, checked directly.
fn etale_axioms(a: &EtaleAction) -> Result<(), Value> {
    let s = a.actor();
    for x in a.elements() {
        ensure(a.act(a.support(x), x) == x, || json!({ "E1": x }))?;
        for u in s.elements() {
            let expected = s.mul(s.mul(u, a.support(x)), s.inv(u));
            ensure(a.support(a.act(u, x)) == expected, || json!({ "E2": [u, x] }))?;
        }
    }
    Ok(())
}

/// Every presheaf morphism `src → tgt` over the identity on the base.
fn presheaf_maps(src: &Presheaf, tgt: &Presheaf) -> Vec<Vec<Elem>> {
    let fibers = tgt.fibers();
    let mut out = Vec::new();
    let mut map = Vec::with_capacity(src.carrier_size());
    fn go(src: &Presheaf, tgt: &Presheaf, fibers: &[Vec<Elem>], map: &mut Vec<Elem>, out: &mut Vec<Vec<Elem>>) {
        if map.len() == src.carrier_size() {
            let m = PresheafMorphism {
                element_map: map.clone(),
                index_map: src.base().elements().collect(),
            };
            if m.verify(src, tgt).is_ok() {
                out.push(map.clone());
            }
            return;
        }
        for &y in &fibers[src.support(map.len())] {
            map.push(y);
            go(src, tgt, fibers, map, out);
            map.pop();
        }
    }
    go(src, tgt, &fibers, &mut map, &mut out);
    out
}

fn prop3_3(name: &str, s: &FiniteSemigroup, report: &mut RunReport) {
    let mut instances: Vec<(&str, InverseSemigroup, Presheaf)> = Vec::new();
    if let Ok(t) = InverseSemigroup::new(s.clone()) {
        instances.push(("points", t.clone(), points(t.semilattice())));
    }
    match kappa_decompose(s) {
        Ok(k) => instances.push(("E(S)", k.quotient, k.presheaf)),
        Err(e) => return report.record(name, "free étale sets", Err(err(e))),
    }
    for (label, t, a) in instances {
        let free = match free_etale(&t, &a) {
            Ok(f) => f,
            Err(e) => {
                report.record(name, &format!("free étale set on {label}"), Err(err(e)));
                continue;
            }
        };
        report.record(name, &format!("E1 and E2 on S∗{label}"), etale_axioms(&free.action));

        let mut targets = vec![("S∗A", free.action.clone(), vec![free.unit.clone()])];
        let lt = EtaleAction::left_translation(&t);
        if let Ok(p) = lt.presheaf() {
            targets.push(("left translation", lt, presheaf_maps(&a, &p)));
        }
        for (tname, target, betas) in targets {
            let check = format!("universal property of S∗{label} into {tname}");
            if free.action.carrier_size() > UNIQUENESS_BOUND || target.carrier_size() > UNIQUENESS_BOUND {
                report.skip(name, &check, "carrier exceeds the uniqueness bound");
                continue;
            }
            let outcome = betas.iter().try_for_each(|beta| {
                let u = universal_property_check(&t, &a, &target, beta).map_err(err)?;
                ensure(u.mediating_count == Some(1), || json!({ "beta": beta, "mediating": u.mediating_count }))
            });
            report.record(name, &check, outcome);
        }
    }
}

fn prop4_2(name: &str, s: &FiniteSemigroup, report: &mut RunReport) {
    let es = match etale_structure(s) {
        Ok(es) => es,
        Err(e) => return report.record(name, "étale structure", Err(err(e))),
    };
    report.record(name, "étale structure", Ok(()));
    report.record(
        name,
        "S → S/γ is an 𝓛-cover",
        match l_cover_check(s, es.quotient.semigroup(), &es.projection) {
            Ok(true) => Ok(()),
            Ok(false) => Err(json!("not bijective on some 𝓛-class of an idempotent")),
            Err(e) => Err(err(e)),
        },
    );
    // S is free on E(S): the mediating morphism from S/γ ∗ E(S) is a bijection
    let outcome = kappa_decompose(s).map_err(err).and_then(|k| {
        let beta = s.idempotents();
        let u = universal_property_check(&k.quotient, &k.presheaf, &es.action, &beta).map_err(err)?;
        ensure(is_bijection(&u.theta, s.order()), || json!({ "theta": u.theta }))
    });
    report.record(name, "S is free on its idempotents", outcome);
}

fn thm4_5(name: &str, s: &FiniteSemigroup, report: &mut RunReport) {
    let k = match kappa_decompose(s) {
        Ok(k) => k,
        Err(e) => return report.record(name, "κ isomorphism", Err(err(e))),
    };
    report.record(
        name,
        "κ isomorphism",
        ensure(
            is_bijection(&k.kappa, k.yamada.semigroup.order()) && s.is_homomorphism(&k.yamada.semigroup, &k.kappa),
            || json!({ "kappa": k.kappa }),
        ),
    );
    let outcome = (|| {
        let y = build_right_yamada(&k.quotient, &k.presheaf).map_err(err)?;
        let k2 = kappa_decompose(&y.semigroup).map_err(err)?;
        ensure(are_isomorphic(k2.quotient.semigroup(), k.quotient.semigroup()), || json!("quotients differ"))?;
        let sizes = |p: &Presheaf| {
            let mut v: Vec<usize> = p.fibers().iter().map(Vec::len).collect();
            v.sort_unstable();
            v
        };
        ensure(sizes(&k2.presheaf) == sizes(&k.presheaf), || json!("fiber sizes differ"))
    })();
    report.record(name, "rebuilding recovers the inputs", outcome);
}

fn prop4_6(s: &FiniteSemigroup) -> Result<(), Value> {
    let k = kappa_decompose(s).map_err(err)?;
    match free_roundtrip_check(&k.quotient, &k.presheaf).map_err(err)? {
        r if r.holds() => Ok(()),
        r => Err(json!(format!("{r:?}"))),
    }
}

fn thm5_1(s: &FiniteSemigroup) -> Result<(), Value> {
    let d = yamada_decompose(s).map_err(err)?;
    let data = theta_iso_check(&d.yamada).map_err(err)?;
    ensure(data.tensor.num_classes() == d.yamada.semigroup.order(), || {
        json!({ "classes": data.tensor.num_classes(), "order": d.yamada.semigroup.order() })
    })
}

fn yamada_fixtures(report: &mut RunReport) {
    for (name, text) in fixtures::YAMADA {
        let subject = format!("fixture:{name}");
        let outcome = (|| {
            let (t, x, y) = fixtures::YamadaSpec::parse(text)
                .and_then(fixtures::YamadaSpec::into_parts)
                .map_err(err)?;
            let ys = gis_core::morita::build_yamada(&t, &x, &y).map_err(err)?;
            let data = theta_iso_check(&ys).map_err(err)?;
            ensure(data.tensor.num_classes() == ys.semigroup.order(), || json!("class count differs from |𝒴|"))
        })();
        report.record(&subject, "θ isomorphism", outcome);
    }
}

/// The symmetric inverse monoid on `n` points built from partial injections
/// as value vectors, independently of the `M_ρ(X)` construction.
pub fn partial_injections(n: usize) -> FiniteSemigroup {
    let mut maps: Vec<Vec<Option<usize>>> = vec![Vec::new()];
    for _ in 0..n {
        maps = maps
            .into_iter()
            .flat_map(|m| {
                std::iter::once(None)
                    .chain((0..n).map(Some))
                    .map(move |v| {
                        let mut m = m.clone();
                        m.push(v);
                        m
                    })
            })
            .collect();
    }
    maps.retain(|m| {
        let mut seen = vec![false; n];
        m.iter().flatten().all(|&y| !std::mem::replace(&mut seen[y], true))
    });
    let compose = |a: usize, b: usize| {
        let c: Vec<Option<usize>> = maps[a].iter().map(|v| v.and_then(|y| maps[b][y])).collect();
        maps.iter().position(|m| *m == c).unwrap()
    };
    FiniteSemigroup::from_fn(maps.len(), compose).expect("composition is associative")
}

fn check_build(m: &MRho) -> Result<(), Value> {
    let c = m.semigroup.classify();
    ensure(c.right_generalized_inverse, || json!("not right generalized inverse"))?;
    ensure(idempotent_characterization_check(m), || json!("idempotents differ from x ρ (x)α"))?;
    if m.rho.partition().is_equality() {
        let n = m.size();
        ensure(c.inverse && are_isomorphic(&m.semigroup, &partial_injections(n)), || {
            json!("not the symmetric inverse monoid")
        })?;
    }
    Ok(())
}

fn madhavan_builds(report: &mut RunReport) {
    for n in 1..=3 {
        for rho in RhoRelation::all(n) {
            let subject = format!("M_ρ({n}; {rho})");
            report.record(&subject, "build", build_m_rho(&rho).map_err(err).and_then(|m| check_build(&m)));
        }
    }
    let full = RhoRelation::full(2).expect("non-empty");
    let outcome = build_m_rho(&full).map_err(err).and_then(|m| {
        let c = m.semigroup.classify();
        ensure(m.semigroup.order() == 3 && c.band && c.right_normal, || json!(m.semigroup.rows()))
    });
    report.record("M_ρ(2; 1 2)", "order-3 right normal band", outcome);
}

fn madhavan_embedding(name: &str, s: &FiniteSemigroup, report: &mut RunReport) {
    let check = "embeds in some M_ρ(X) with |X| ≤ 3";
    match embed_somewhere(s, 3) {
        Ok(Some((m, map))) => report.record(
            name,
            check,
            ensure(
                s.is_homomorphism(&m.semigroup, &map) && map.iter().collect::<BTreeSet<_>>().len() == s.order(),
                || json!({ "map": map }),
            ),
        ),
        Ok(None) => report.skip(name, check, "no embedding found within the search bound"),
        Err(e) => report.record(name, check, Err(err(e))),
    }
}

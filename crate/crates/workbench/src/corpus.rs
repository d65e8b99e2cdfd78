//! Verification corpora: enumerated semigroups plus the shipped fixtures.

use serde::Serialize;

use gis_core::enumerate::{enumerate_semigroups, EnumerationLimits, SemigroupClass, DEFAULT_MAX_BAND_ORDER};
use gis_core::{Classification, FiniteSemigroup};

use crate::error::WorkbenchError;
use crate::fixtures;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Enumerated,
    Fixture,
    File,
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    /// `o4#17` for the 17th enumerated semigroup of order 4, the fixture
    /// name, or the file path.
    pub name: String,
    pub semigroup: FiniteSemigroup,
    pub classification: Classification,
    pub provenance: Provenance,
}

impl CorpusEntry {
    pub fn new(name: impl Into<String>, semigroup: FiniteSemigroup, provenance: Provenance) -> Self {
        CorpusEntry {
            name: name.into(),
            classification: semigroup.classify(),
            semigroup,
            provenance,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Corpus {
    pub members: Vec<CorpusEntry>,
}

impl Corpus {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &CorpusEntry> {
        self.members.iter()
    }

    /// Members admitted by `class` with order at most `max_order`.
    pub fn filter(&self, class: SemigroupClass, max_order: usize) -> Corpus {
        Corpus {
            members: self
                .members
                .iter()
                .filter(|m| m.semigroup.order() <= max_order && class.admits(&m.classification))
                .cloned()
                .collect(),
        }
    }

    pub fn push(&mut self, entry: CorpusEntry) {
        self.members.push(entry);
    }

    pub fn extend(&mut self, other: Corpus) {
        self.members.extend(other.members);
    }
}

/// Enumeration limits, with `GIS_MAX_ORDER` raising or lowering the cap.
pub fn limits_from_env() -> Result<EnumerationLimits, WorkbenchError> {
    match std::env::var("GIS_MAX_ORDER") {
        Ok(v) => {
            let n: usize = v
                .trim()
                .parse()
                .ok()
                .filter(|&n| n > 0)
                .ok_or_else(|| WorkbenchError::BadMaxOrder(v.clone()))?;
            Ok(EnumerationLimits {
                max_order: n,
                max_band_order: n.max(DEFAULT_MAX_BAND_ORDER),
            })
        }
        Err(_) => Ok(EnumerationLimits::default()),
    }
}

/// One representative per isomorphism class of each order `1..=max_order`
/// in `class`.
pub fn enumerate_corpus(
    max_order: usize,
    class: SemigroupClass,
    limits: EnumerationLimits,
) -> Result<Corpus, WorkbenchError> {
    let mut corpus = Corpus::default();
    for n in 1..=max_order {
        for (i, s) in enumerate_semigroups(n, class, limits)?.into_iter().enumerate() {
            corpus.push(CorpusEntry::new(format!("o{n}#{i}"), s, Provenance::Enumerated));
        }
    }
    Ok(corpus)
}

/// The shipped semigroup fixtures.
pub fn fixture_corpus() -> Corpus {
    Corpus {
        members: fixtures::SEMIGROUPS
            .iter()
            .map(|(name, _, _)| CorpusEntry::new(*name, fixtures::semigroup(name).unwrap(), Provenance::Fixture))
            .collect(),
    }
}

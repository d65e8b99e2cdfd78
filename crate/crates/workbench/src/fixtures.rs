//! The fixture files shipped under `fixtures/`, embedded at build time.

use serde::{Deserialize, Serialize};

use gis_core::etale::InverseSemigroup;
use gis_core::format::{parse_semigroup, SemigroupJson};
use gis_core::presheaf::{parse_presheaf, Presheaf, PresheafJson};
use gis_core::FiniteSemigroup;

use crate::error::WorkbenchError;

macro_rules! fixture {
    ($file:literal) => {
        include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/", $file))
    };
}

/// Semigroup fixtures as `(name, .sgp text, documented classification)`.
pub const SEMIGROUPS: [(&str, &str, &str); 6] = [
    ("rz2", fixture!("rz2.sgp"), "band: right normal, right regular; right generalized inverse"),
    ("lz2", fixture!("lz2.sgp"), "band: left normal, left regular; left generalized inverse"),
    ("sl2", fixture!("sl2.sgp"), "band: left normal, right normal, left regular, right regular; inverse"),
    ("y3", fixture!("y3.sgp"), "band: right normal, right regular; right generalized inverse"),
    ("i2", fixture!("i2.sgp"), "inverse"),
    ("m_full2", fixture!("m_full2.sgp"), "band: right normal, right regular; right generalized inverse"),
];

pub const P3: &str = fixture!("p3.json");

/// Yamada triples `(T, X, Y)` as `(name, JSON text)`.
pub const YAMADA: [(&str, &str); 3] = [
    ("yamada_order5", fixture!("yamada_order5.json")),
    ("yamada_y3", fixture!("yamada_y3.json")),
    ("yamada_i2", fixture!("yamada_i2.json")),
];

pub fn semigroup(name: &str) -> Option<FiniteSemigroup> {
    SEMIGROUPS
        .iter()
        .find(|(n, _, _)| *n == name)
        .map(|(_, text, _)| parse_semigroup(text).expect("shipped fixture parses"))
}

pub fn p3() -> Presheaf {
    parse_presheaf(P3).expect("shipped fixture parses")
}

/// JSON form of a Yamada triple: an inverse semigroup and two presheaves over
/// its idempotents, indexed in increasing element order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct YamadaSpec {
    #[serde(rename = "T")]
    pub t: SemigroupJson,
    #[serde(rename = "X")]
    pub x: PresheafJson,
    #[serde(rename = "Y")]
    pub y: PresheafJson,
}

impl YamadaSpec {
    pub fn parse(text: &str) -> Result<Self, WorkbenchError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn into_parts(self) -> Result<(InverseSemigroup, Presheaf, Presheaf), WorkbenchError> {
        let t = InverseSemigroup::new(self.t.into_semigroup()?)?;
        Ok((t, self.x.into_presheaf()?, self.y.into_presheaf()?))
    }

    pub fn from_parts(t: &InverseSemigroup, x: &Presheaf, y: &Presheaf) -> Self {
        YamadaSpec {
            t: SemigroupJson::from(t.semigroup()),
            x: x.to_json(),
            y: y.to_json(),
        }
    }
}

pub fn yamada(name: &str) -> Option<(InverseSemigroup, Presheaf, Presheaf)> {
    YAMADA
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| YamadaSpec::parse(text).and_then(YamadaSpec::into_parts).expect("shipped fixture parses"))
}

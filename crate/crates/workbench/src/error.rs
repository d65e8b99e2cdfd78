use thiserror::Error;

use gis_core::congruence::CongruenceError;
use gis_core::enumerate::EnumerationError;
use gis_core::etale::EtaleError;
use gis_core::format::FormatError;
use gis_core::madhavan::MadhavanError;
use gis_core::morita::MoritaError;
use gis_core::presheaf::PresheafError;
use gis_core::yamada::YamadaError;
use gis_core::SemigroupError;

#[derive(Debug, Error)]
pub enum WorkbenchError {
    #[error("{path}: {source}")]
    File {
        path: String,
        #[source]
        source: Box<WorkbenchError>,
    },
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("GIS_MAX_ORDER must be a positive integer, found {0:?}")]
    BadMaxOrder(String),
    #[error("malformed spec: {0}")]
    Spec(String),
    #[error("suite {suite} failed {failed} check(s)")]
    SuiteFailed { suite: String, failed: usize },
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Congruence(#[from] CongruenceError),
    #[error(transparent)]
    Presheaf(#[from] PresheafError),
    #[error(transparent)]
    Etale(#[from] EtaleError),
    #[error(transparent)]
    Yamada(#[from] YamadaError),
    #[error(transparent)]
    Morita(#[from] MoritaError),
    #[error(transparent)]
    Madhavan(#[from] MadhavanError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl WorkbenchError {
    pub fn in_file(self, path: &str) -> Self {
        WorkbenchError::File {
            path: path.to_string(),
            source: Box::new(self),
        }
    }

    /// Name of the innermost error variant, e.g. `NotGeneralizedInverse` for
    /// a congruence error wrapped in a Morita error.
    pub fn name(&self) -> String {
        if let WorkbenchError::File { source, .. } = self {
            return source.name();
        }
        innermost_variant(&format!("{self:?}"))
    }
}

fn innermost_variant(debug: &str) -> String {
    let mut rest = debug;
    loop {
        let end = rest
            .find(|c: char| !(c.is_alphanumeric() || c == '_'))
            .unwrap_or(rest.len());
        let (name, tail) = rest.split_at(end);
        match tail.strip_prefix('(') {
            Some(inner) if inner.starts_with(|c: char| c.is_ascii_uppercase()) => rest = inner,
            _ => return name.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn variant_names() {
        let e = WorkbenchError::Morita(MoritaError::Congruence(CongruenceError::NotGeneralizedInverse));
        assert_eq!(e.name(), "NotGeneralizedInverse");
        let e = WorkbenchError::Morita(MoritaError::NoGlobalSupport { side: "X", index: 0 });
        assert_eq!(e.name(), "NoGlobalSupport");
        assert_eq!(WorkbenchError::UnknownSuite("x".into()).in_file("a").name(), "UnknownSuite");
        assert_eq!(WorkbenchError::Spec("Bad".into()).name(), "Spec");
    }
}

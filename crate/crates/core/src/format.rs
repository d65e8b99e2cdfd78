//! Text and JSON formats.
//!
//! `.sgp` Cayley tables: the first non-comment line is the order `n`, the next
//! `n` lines are the rows (row `a` lists `a·0 … a·(n−1)`), `#` starts a
//! comment, and an optional final `labels:` line names the elements.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::semigroup::{FiniteSemigroup, SemigroupError};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

/// Parses the `.sgp` text format.
pub fn parse_sgp(text: &str) -> Result<FiniteSemigroup, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (first, header) = lines.next().ok_or_else(|| syntax(1, "missing order line"))?;
    let n: usize = header
        .parse()
        .map_err(|_| syntax(first, format!("expected the order, found {header:?}")))?;
    let mut rows = Vec::with_capacity(n);
    let mut last = first;
    for _ in 0..n {
        let (ln, row) = lines
            .next()
            .ok_or_else(|| syntax(last + 1, format!("expected {n} table rows")))?;
        last = ln;
        let entries = row
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| syntax(ln, format!("bad table entry {t:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if entries.len() != n {
            return Err(syntax(ln, format!("row has {} entries, expected {n}", entries.len())));
        }
        rows.push(entries);
    }
    let mut s = FiniteSemigroup::new(rows)?;
    if let Some((ln, rest)) = lines.next() {
        let names = rest
            .strip_prefix("labels:")
            .ok_or_else(|| syntax(ln, "unexpected content after the table"))?;
        let labels: Vec<String> = names.split_whitespace().map(str::to_string).collect();
        s = s.with_labels(labels).map_err(|e| syntax(ln, e.to_string()))?;
        if let Some((ln, _)) = lines.next() {
            return Err(syntax(ln, "unexpected content after labels"));
        }
    }
    Ok(s)
}

pub fn to_sgp(s: &FiniteSemigroup) -> String {
    let mut out = format!("{}\n", s.order());
    for row in s.rows() {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    if let Some(labels) = s.labels() {
        out.push_str("labels: ");
        out.push_str(&labels.join(" "));
        out.push('\n');
    }
    out
}

/// JSON form of a semigroup.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SemigroupJson {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl SemigroupJson {
    pub fn into_semigroup(self) -> Result<FiniteSemigroup, FormatError> {
        if self.table.len() != self.order {
            return Err(syntax(
                1,
                format!("order is {} but the table has {} rows", self.order, self.table.len()),
            ));
        }
        let s = FiniteSemigroup::new(self.table)?;
        Ok(match self.labels {
            Some(l) => s.with_labels(l)?,
            None => s,
        })
    }
}

impl From<&FiniteSemigroup> for SemigroupJson {
    fn from(s: &FiniteSemigroup) -> Self {
        SemigroupJson {
            order: s.order(),
            table: s.rows(),
            labels: s.labels().map(|l| l.to_vec()),
        }
    }
}

/// Accepts either the `.sgp` text format or the JSON document form.
pub fn parse_semigroup(text: &str) -> Result<FiniteSemigroup, FormatError> {
    if text.trim_start().starts_with('{') {
        serde_json::from_str::<SemigroupJson>(text)?.into_semigroup()
    } else {
        parse_sgp(text)
    }
}

/// Serde adapter storing a [`crate::Partition`] as its `"0 2 | 1"` class list.
pub mod partition_string {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::Partition;

    pub fn serialize<S: Serializer>(p: &Partition, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&p.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Partition, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sgp_with_comments_and_labels() {
        let text = "# right zero\n2\n0 1  # row 0\n0 1\nlabels: a b\n";
        let s = parse_sgp(text).unwrap();
        assert_eq!(s.order(), 2);
        assert_eq!(s.label(1), "b");
        assert_eq!(parse_sgp(&to_sgp(&s)).unwrap(), s);
    }

    #[test]
    fn sgp_errors_carry_line_numbers() {
        match parse_sgp("2\n0 1\n0 x\n") {
            Err(FormatError::Syntax { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        match parse_sgp("2\n0 1\n") {
            Err(FormatError::Syntax { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_sgp("2\n0 1\n1 2\n"),
            Err(FormatError::Semigroup(SemigroupError::NotClosed { .. }))
        ));
    }

    #[test]
    fn json_form() {
        let s = parse_semigroup(r#"{"order": 2, "table": [[0,0],[0,1]]}"#).unwrap();
        assert!(s.same_table(&crate::semigroup::examples::chain(2)));
        let back = serde_json::to_string(&SemigroupJson::from(&s)).unwrap();
        assert!(parse_semigroup(&back).unwrap().same_table(&s));
        assert!(parse_semigroup(r#"{"order": 3, "table": [[0]]}"#).is_err());
    }
}

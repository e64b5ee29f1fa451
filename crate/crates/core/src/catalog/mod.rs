//! Plain-text catalog of designs.
//!
//! ```text
//! # comment
//! mts 7 M7.1.1
//! 0 1 2
//! 0 3 1
//! ...
//! tts 10 T10.2 [(26)]
//! 1 2 3
//! ...
//! ```
//!
//! Each entry is a header `kind v label [ '[' extref ']' ]` followed by rows
//! of three decimal points. Comment lines start with `#`; blank lines are
//! ignored. Cyclic rows may be written in any rotation and are stored
//! minimum-first; unordered rows are stored sorted.

pub mod fixtures;
mod lint;

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::design::{
    canonical_rotation, Design, Kind, MendelsohnTripleSystem, Point, TwofoldTripleSystem,
    UnorderedTriple, ValidationReport,
};
use crate::error::{Error, Result};

pub use lint::{lint_catalog, lint_catalog_with_reference, LintFinding, Severity};

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CatalogEntry {
    pub kind: Kind,
    pub v: usize,
    pub label: String,
    /// Opaque reference to an external catalog, kept verbatim.
    pub extref: Option<String>,
    pub rows: Vec<[Point; 3]>,
}

impl CatalogEntry {
    pub fn from_design(d: &Design, label: impl Into<String>) -> Self {
        Self {
            kind: d.kind(),
            v: d.order(),
            label: label.into(),
            extref: None,
            rows: d.rows(),
        }
    }

    pub fn to_tts(&self) -> Result<TwofoldTripleSystem> {
        if self.kind != Kind::Tts {
            return Err(Error::Mismatch(format!("{} is not a tts entry", self.label)));
        }
        Ok(TwofoldTripleSystem::from_rows(self.v, &self.rows)?.with_label(&self.label))
    }

    pub fn to_mts(&self) -> Result<MendelsohnTripleSystem> {
        if self.kind != Kind::Mts {
            return Err(Error::Mismatch(format!("{} is not an mts entry", self.label)));
        }
        Ok(MendelsohnTripleSystem::from_rows(self.v, &self.rows)?.with_label(&self.label))
    }

    pub fn to_design(&self) -> Result<Design> {
        match self.kind {
            Kind::Tts => self.to_tts().map(Design::Tts),
            Kind::Mts => self.to_mts().map(Design::Mts),
        }
    }

    /// Builds the design and validates it. Malformed entries are an error;
    /// well-formed but invalid ones produce a report with `valid == false`.
    pub fn validate(&self) -> Result<ValidationReport> {
        Ok(self.to_design()?.validate())
    }
}

/// An ordered collection of entries with lookup by label.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn new(entries: Vec<CatalogEntry>) -> Result<Self> {
        let mut seen = HashSet::new();
        for e in &entries {
            if !seen.insert(e.label.as_str()) {
                return Err(Error::DuplicateLabel(e.label.clone()));
            }
        }
        Ok(Self { entries })
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(Self {
            entries: parse_catalog(text)?,
        })
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<CatalogEntry> {
        self.entries
    }

    pub fn get(&self, label: &str) -> Result<&CatalogEntry> {
        self.entries
            .iter()
            .find(|e| e.label == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn mts(&self, label: &str) -> Result<MendelsohnTripleSystem> {
        self.get(label)?.to_mts()
    }

    pub fn tts(&self, label: &str) -> Result<TwofoldTripleSystem> {
        self.get(label)?.to_tts()
    }

    /// Appends another catalog, rejecting label clashes.
    pub fn extend(&mut self, other: Catalog) -> Result<()> {
        let mut entries = std::mem::take(&mut self.entries);
        entries.extend(other.entries);
        *self = Catalog::new(entries)?;
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = &CatalogEntry> {
        self.entries.iter()
    }
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_header(line_no: usize, kind: Kind, rest: &str) -> Result<CatalogEntry> {
    let mut parts = rest.splitn(3, char::is_whitespace);
    let v = parts
        .next()
        .filter(|s| !s.is_empty())
        .ok_or_else(|| parse_error(line_no, "header is missing the order"))?;
    let v: usize = v
        .parse()
        .map_err(|_| parse_error(line_no, format!("order {v:?} is not a decimal integer")))?;
    let label = parts
        .next()
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .ok_or_else(|| parse_error(line_no, "header is missing the label"))?;
    let extref = match parts.next().map(str::trim).filter(|s| !s.is_empty()) {
        None => None,
        Some(s) => match s.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            Some(inner) => Some(inner.to_string()),
            None => {
                return Err(parse_error(
                    line_no,
                    format!("unexpected text {s:?} after label (external references go in brackets)"),
                ))
            }
        },
    };
    Ok(CatalogEntry {
        kind,
        v,
        label: label.to_string(),
        extref,
        rows: Vec::new(),
    })
}

fn parse_row(line_no: usize, kind: Kind, line: &str) -> Result<[Point; 3]> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != 3 {
        return Err(parse_error(
            line_no,
            format!("row has {} points, expected 3", fields.len()),
        ));
    }
    let mut p = [0 as Point; 3];
    for (slot, f) in p.iter_mut().zip(&fields) {
        *slot = f
            .parse()
            .map_err(|_| parse_error(line_no, format!("{f:?} is not a point index")))?;
    }
    let [a, b, c] = p;
    let row = match kind {
        Kind::Mts => canonical_rotation(a, b, c).map(|t| t.points()),
        Kind::Tts => UnorderedTriple::new(a, b, c).map(|t| t.points()),
    };
    row.map_err(|e| parse_error(line_no, e.to_string()))
}

/// Parses catalog text. Designs are not validated here.
pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>> {
    let mut entries: Vec<CatalogEntry> = Vec::new();
    let mut seen = HashSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (head, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let kind = match head {
            "tts" => Some(Kind::Tts),
            "mts" => Some(Kind::Mts),
            _ => None,
        };
        if let Some(kind) = kind {
            let entry = parse_header(line_no, kind, rest.trim())?;
            if !seen.insert(entry.label.clone()) {
                return Err(parse_error(line_no, format!("duplicate label {:?}", entry.label)));
            }
            entries.push(entry);
            continue;
        }
        let entry = entries
            .last_mut()
            .ok_or_else(|| parse_error(line_no, "row before any entry header"))?;
        let row = parse_row(line_no, entry.kind, line)?;
        entry.rows.push(row);
    }
    Ok(entries)
}

/// Deterministic text: entries and rows in order, single spaces, LF endings.
pub fn serialize_catalog(entries: &[CatalogEntry]) -> String {
    let mut out = String::new();
    for e in entries {
        let _ = write!(out, "{} {} {}", e.kind, e.v, e.label);
        if let Some(x) = &e.extref {
            let _ = write!(out, " [{x}]");
        }
        out.push('\n');
        for [a, b, c] in &e.rows {
            let _ = writeln!(out, "{a} {b} {c}");
        }
    }
    out
}

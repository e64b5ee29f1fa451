//! Transcribed listings and printed results, embedded at build time.
//!
//! The MTS listings are the source of truth. `tts_orientable.txt` holds the
//! underlying system of each `M<v>.<i>.1`; the damaged tables as they were
//! printed live in `tts_as_printed.txt` and are only meant for lint.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use super::Catalog;
use crate::error::{Error, Result};

pub const MTS_SMALL: &str = include_str!("../../fixtures/mts_small.txt");
pub const MTS7: &str = include_str!("../../fixtures/mts7.txt");
pub const MTS9: &str = include_str!("../../fixtures/mts9.txt");
pub const MTS10: &str = include_str!("../../fixtures/mts10.txt");
pub const TTS_ORIENTABLE: &str = include_str!("../../fixtures/tts_orientable.txt");
pub const TTS_AS_PRINTED: &str = include_str!("../../fixtures/tts_as_printed.txt");
const PRINTED_RESULTS: &str = include_str!("../../fixtures/printed_results.json");
const DELETION_TABLES: &str = include_str!("../../fixtures/deletion_tables.json");
const QUARANTINE: &str = include_str!("../../fixtures/quarantine.txt");

/// Catalog files that together make up the default fixture set.
pub const DEFAULT_FILES: [(&str, &str); 5] = [
    ("mts_small.txt", MTS_SMALL),
    ("mts7.txt", MTS7),
    ("mts9.txt", MTS9),
    ("mts10.txt", MTS10),
    ("tts_orientable.txt", TTS_ORIENTABLE),
];

fn parse_embedded(text: &str) -> Catalog {
    Catalog::parse(text).expect("embedded fixture catalog parses")
}

/// MTS fixtures of order `v` in listing order.
pub fn mts(v: usize) -> Catalog {
    match v {
        3 | 4 => {
            let all = parse_embedded(MTS_SMALL).into_entries();
            Catalog::new(all.into_iter().filter(|e| e.v == v).collect()).unwrap()
        }
        7 => parse_embedded(MTS7),
        9 => parse_embedded(MTS9),
        10 => parse_embedded(MTS10),
        _ => Catalog::default(),
    }
}

pub fn orientable_tts() -> Catalog {
    parse_embedded(TTS_ORIENTABLE)
}

pub fn tts_as_printed() -> Catalog {
    parse_embedded(TTS_AS_PRINTED)
}

/// Every file of the default fixture set, merged.
pub fn all() -> Catalog {
    let mut cat = Catalog::default();
    for (_, text) in DEFAULT_FILES {
        cat.extend(parse_embedded(text)).expect("fixture labels are unique");
    }
    cat
}

/// Loads every `*.txt` catalog in a directory, in file-name order.
pub fn load_dir(dir: &Path) -> Result<Catalog> {
    let io = |e: std::io::Error| Error::Invalid(format!("{}: {e}", dir.display()));
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .map_err(io)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "txt"))
        .collect();
    files.sort();
    let mut cat = Catalog::default();
    for f in files {
        let text = std::fs::read_to_string(&f).map_err(io)?;
        let part = Catalog::parse(&text).map_err(|e| match e {
            Error::Parse { line, message } => Error::Parse {
                line,
                message: format!("{}: {message}", f.display()),
            },
            other => other,
        })?;
        cat.extend(part)?;
    }
    Ok(cat)
}

/// Labels excluded from golden comparisons.
pub fn quarantine() -> Vec<String> {
    QUARANTINE
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(String::from)
        .collect()
}

/// One printed result line pair: the count of `ell`-good sequencings and,
/// when nonzero, the least one as a digit string.
#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
pub struct PrintedResult {
    pub label: String,
    pub ell: usize,
    pub count: u64,
    pub least: Option<String>,
}

pub fn printed_results() -> Vec<PrintedResult> {
    serde_json::from_str(PRINTED_RESULTS).expect("embedded results parse")
}

#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
pub struct PrintedDeletionRow {
    pub omitted: [u8; 3],
    pub count: u64,
    pub least: String,
}

/// Printed deletion tables at window length 4, keyed by design label.
pub fn deletion_tables() -> BTreeMap<String, Vec<PrintedDeletionRow>> {
    serde_json::from_str(DELETION_TABLES).expect("embedded deletion tables parse")
}

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::CatalogEntry;
use crate::design::{underlying_tts, validate_mts, Design, Kind, TwofoldTripleSystem, UnorderedTriple};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LintFinding {
    pub label: String,
    pub severity: Severity,
    pub description: String,
    /// Replacement block list, when one can be derived from a sibling MTS.
    pub repair: Option<Vec<UnorderedTriple>>,
}

impl fmt::Display for LintFinding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{}: {sev}: {}", self.label, self.description)
    }
}

/// Lints entries, resolving TTS/MTS siblings within the same list.
pub fn lint_catalog(entries: &[CatalogEntry]) -> Vec<LintFinding> {
    lint_catalog_with_reference(entries, &[])
}

/// Like [`lint_catalog`], but siblings may also come from `reference`.
/// Output order follows `entries`.
pub fn lint_catalog_with_reference(
    entries: &[CatalogEntry],
    reference: &[CatalogEntry],
) -> Vec<LintFinding> {
    entries
        .par_iter()
        .map(|e| lint_entry(e, entries, reference))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

fn finding(label: &str, severity: Severity, description: String) -> LintFinding {
    LintFinding {
        label: label.to_string(),
        severity,
        description,
        repair: None,
    }
}

fn lint_entry(
    entry: &CatalogEntry,
    entries: &[CatalogEntry],
    reference: &[CatalogEntry],
) -> Vec<LintFinding> {
    let design = match entry.to_design() {
        Ok(d) => d,
        Err(e) => return vec![finding(&entry.label, Severity::Error, e.to_string())],
    };
    let report = design.validate();
    let mut out: Vec<_> = report
        .violations
        .iter()
        .map(|v| finding(&entry.label, Severity::Error, v.to_string()))
        .collect();
    if let Design::Tts(t) = &design {
        if let Some(derived) = sibling_tts(entry, entries.iter().chain(reference)) {
            let severity = if report.valid {
                Severity::Warning
            } else {
                Severity::Error
            };
            out.extend(block_differences(&entry.label, t, &derived, severity));
        }
    }
    out
}

/// Underlying system of the first valid `M<v>.<i>.*` for a `T<v>.<i>` entry.
fn sibling_tts<'a>(
    entry: &CatalogEntry,
    candidates: impl Iterator<Item = &'a CatalogEntry>,
) -> Option<TwofoldTripleSystem> {
    let prefix = format!("M{}.", entry.label.strip_prefix('T')?);
    let mut siblings: Vec<&CatalogEntry> = candidates
        .filter(|c| c.kind == Kind::Mts && c.v == entry.v && c.label.starts_with(&prefix))
        .collect();
    siblings.sort_by(|a, b| a.label.cmp(&b.label));
    siblings.into_iter().find_map(|c| {
        let m = c.to_mts().ok()?;
        validate_mts(&m).valid.then(|| underlying_tts(&m).ok())?
    })
}

fn times(n: usize) -> String {
    if n == 1 {
        "1 time".into()
    } else {
        format!("{n} times")
    }
}

fn block_differences(
    label: &str,
    printed: &TwofoldTripleSystem,
    derived: &TwofoldTripleSystem,
    severity: Severity,
) -> Vec<LintFinding> {
    let have = printed.multiset();
    let want = derived.multiset();
    let mut diff: BTreeMap<UnorderedTriple, isize> = BTreeMap::new();
    for (b, n) in &have {
        *diff.entry(*b).or_default() += *n as isize;
    }
    for (b, n) in &want {
        *diff.entry(*b).or_default() -= *n as isize;
    }
    let repair = derived.blocks().to_vec();
    diff.into_iter()
        .filter(|(_, d)| *d != 0)
        .map(|(b, d)| {
            let description = if d > 0 {
                format!(
                    "extra block {b} (listed {}, derived system has {})",
                    times(have[&b]),
                    want.get(&b).copied().unwrap_or(0)
                )
            } else {
                format!(
                    "missing block {b} (listed {}, derived system has {})",
                    times(have.get(&b).copied().unwrap_or(0)),
                    want[&b]
                )
            };
            LintFinding {
                label: label.to_string(),
                severity,
                description,
                repair: Some(repair.clone()),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::fixtures;
    use crate::design::validate_tts;

    fn printed(label: &str) -> CatalogEntry {
        fixtures::tts_as_printed().get(label).unwrap().clone()
    }

    fn mts_reference() -> Vec<CatalogEntry> {
        [7, 9]
            .into_iter()
            .flat_map(|v| fixtures::mts(v).into_entries())
            .collect()
    }

    fn descriptions(f: &[LintFinding], word: &str) -> Vec<String> {
        f.iter()
            .filter(|x| x.description.starts_with(word))
            .map(|x| x.description.split(" (").next().unwrap().to_string())
            .collect()
    }

    #[test]
    fn t7_2_as_printed() {
        let f = lint_catalog_with_reference(&[printed("T7.2")], &mts_reference());
        assert!(f.iter().all(|x| x.severity == Severity::Error));
        assert!(f.iter().any(|x| x.description.starts_with("pair {1,3} covered 3 times")));
        assert!(f.iter().any(|x| x.description.starts_with("pair {0,1} covered 1 time,")));
        assert_eq!(descriptions(&f, "extra"), ["extra block {1,3,5}"]);
        assert_eq!(descriptions(&f, "missing"), ["missing block {0,1,2}"]);
        let repair = f.iter().find_map(|x| x.repair.clone()).unwrap();
        assert!(validate_tts(&TwofoldTripleSystem::new(7, repair).unwrap()).valid);
    }

    #[test]
    fn t9_1_as_printed() {
        let f = lint_catalog_with_reference(&[printed("T9.1")], &mts_reference());
        assert_eq!(descriptions(&f, "extra"), ["extra block {1,3,6}", "extra block {2,4,6}"]);
        assert_eq!(descriptions(&f, "missing"), ["missing block {0,1,2}", "missing block {0,1,6}"]);
    }

    #[test]
    fn valid_entries_have_no_findings() {
        let mut entries = fixtures::orientable_tts().into_entries();
        entries.truncate(19);
        assert!(lint_catalog_with_reference(&entries, &mts_reference()).is_empty());
        assert!(lint_catalog(fixtures::mts(9).entries()).is_empty());
    }

    #[test]
    fn valid_but_different_tts_is_a_warning() {
        // T7.1 relabelled is still a TTS(7) but no longer matches M7.1.1
        let t = fixtures::orientable_tts().tts("T7.1").unwrap();
        let moved = t.relabel(&[1, 0, 2, 3, 4, 5, 6]).unwrap();
        let mut e = CatalogEntry::from_design(&Design::Tts(moved), "T7.1");
        e.extref = None;
        let f = lint_catalog_with_reference(&[e], &mts_reference());
        assert!(!f.is_empty());
        assert!(f.iter().all(|x| x.severity == Severity::Warning));
    }

    #[test]
    fn malformed_entry_is_one_error() {
        let e = crate::catalog::parse_catalog("tts 3 T3.1\n0 1 2\n0 1 9\n").unwrap();
        let f = lint_catalog(&e);
        assert_eq!(f.len(), 1);
        assert!(f[0].description.contains("out of range"));
    }
}

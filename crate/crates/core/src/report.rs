//! Summary table rows: design counts per order and how many systems admit
//! an ℓ-good sequencing for ℓ = 3, 4, 5.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::fixtures;
use crate::design::{underlying_tts, MendelsohnTripleSystem};
use crate::error::Result;
use crate::gen::{check_order, pipeline};
use crate::iso::{converse_class_form, Canonical};
use crate::seq::{search, SearchMode, SearchReport};

pub const REPORT_ELLS: [usize; 3] = [3, 4, 5];

/// Order from which TTS enumeration counts as a long run.
pub const LONG_RUN_ORDER: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableOneRow {
    pub v: usize,
    /// Absent when the row was built from the catalog alone.
    pub nonisomorphic_tts: Option<usize>,
    pub orientable_tts: usize,
    /// Classes up to isomorphism and converse.
    pub nonisomorphic_mts: usize,
    /// Systems with an ℓ-good sequencing, for each ℓ in [`REPORT_ELLS`].
    pub good_counts: [usize; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DesignResult {
    pub label: String,
    /// False for a generated system that no catalog entry matches.
    pub matched: bool,
    pub results: Vec<SearchReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub row: TableOneRow,
    /// Number of MTS classes under isomorphism alone, when generated.
    pub strict_mts_count: Option<usize>,
    pub designs: Vec<DesignResult>,
    pub warnings: Vec<String>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ReportOptions {
    /// Start from the catalog instead of enumerating TTS(v).
    pub from_fixtures: bool,
    /// Allow TTS enumeration at order [`LONG_RUN_ORDER`].
    pub long_run: bool,
}

/// Builds the row for order `v`.
pub fn report(v: usize, opts: ReportOptions) -> Result<Report> {
    report_with_progress(v, opts, &mut |_| {})
}

pub fn report_with_progress(
    v: usize,
    opts: ReportOptions,
    progress: &mut dyn FnMut(&str),
) -> Result<Report> {
    check_order(v)?;
    let catalog = fixtures::mts(v);
    let reference: Vec<(String, MendelsohnTripleSystem)> = catalog
        .iter()
        .map(|e| Ok((e.label.clone(), e.to_mts()?.with_label(&e.label))))
        .collect::<Result<_>>()?;
    let generate = !opts.from_fixtures && (v < LONG_RUN_ORDER || opts.long_run);
    let mut warnings = Vec::new();
    let (tts_count, orientable, strict, designs) = if generate {
        progress(&format!("enumerating TTS({v})"));
        let p = pipeline(v)?;
        progress(&format!(
            "{} TTS, {} orientable, {} MTS",
            p.tts.len(),
            p.orientable_count(),
            p.mts.len()
        ));
        let index: HashMap<_, usize> = reference
            .iter()
            .enumerate()
            .map(|(i, (_, m))| (converse_class_form(m), i))
            .collect();
        let mut matched = Vec::new();
        let mut unmatched = Vec::new();
        for m in &p.mts {
            match index.get(&converse_class_form(m)) {
                Some(&i) => matched.push(i),
                None => unmatched.push(m.clone()),
            }
        }
        matched.sort_unstable();
        let mut designs: Vec<(String, bool, MendelsohnTripleSystem)> = matched
            .into_iter()
            .map(|i| (reference[i].0.clone(), true, reference[i].1.clone()))
            .collect();
        for (k, m) in unmatched.into_iter().enumerate() {
            let label = format!("M{v}.x{}", k + 1);
            warnings.push(format!("{label}: generated MTS({v}) matches no catalog entry"));
            designs.push((label.clone(), false, m.with_label(label)));
        }
        (Some(p.tts.len()), p.orientable_count(), Some(p.strict_mts_count), designs)
    } else {
        let mut tts = std::collections::HashSet::new();
        for (_, m) in &reference {
            tts.insert(underlying_tts(m)?.canonical_form());
        }
        let designs = reference.into_iter().map(|(l, m)| (l, true, m)).collect();
        (None, tts.len(), None, designs)
    };
    progress(&format!("searching {} MTS({v})", designs.len()));
    let designs: Vec<DesignResult> = designs
        .par_iter()
        .map(|(label, matched, m)| {
            let results = REPORT_ELLS
                .iter()
                .map(|&ell| {
                    let mut r = search(m, ell.min(v), SearchMode::Count)?;
                    r.ell = ell;
                    r.label = Some(label.clone());
                    Ok(r)
                })
                .collect::<Result<_>>()?;
            Ok(DesignResult {
                label: label.clone(),
                matched: *matched,
                results,
            })
        })
        .collect::<Result<_>>()?;
    let mut good_counts = [0; 3];
    for (i, g) in good_counts.iter_mut().enumerate() {
        *g = designs.iter().filter(|d| d.results[i].exists).count();
    }
    Ok(Report {
        row: TableOneRow {
            v,
            nonisomorphic_tts: tts_count,
            orientable_tts: orientable,
            nonisomorphic_mts: designs.len(),
            good_counts,
        },
        strict_mts_count: strict,
        designs,
        warnings,
    })
}

use std::collections::BTreeMap;

use serde::Serialize;

use crate::collatz::MapParams;

/// Outcome of one scan item against the statement being tested.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Confirmed,
    /// Only ever emitted with a replayable witness.
    Refuted,
    Unknown,
    /// The item falls outside the statement's hypothesis.
    NotApplicable,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub confirmed: usize,
    pub refuted: usize,
    pub unknown: usize,
    pub not_applicable: usize,
}

impl Counts {
    pub fn record(&mut self, v: Verdict) {
        match v {
            Verdict::Confirmed => self.confirmed += 1,
            Verdict::Refuted => self.refuted += 1,
            Verdict::Unknown => self.unknown += 1,
            Verdict::NotApplicable => self.not_applicable += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.confirmed + self.refuted + self.unknown + self.not_applicable
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub input: String,
    pub verdict: Verdict,
    pub evidence: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub scan: String,
    pub params: MapParams,
    pub sample: String,
    pub counts: Counts,
    pub witnesses: Vec<Witness>,
    pub summary: BTreeMap<String, String>,
}

impl ScanReport {
    /// Tallies `items` in order, keeping those selected by `keep` as
    /// witnesses. Refuted items are always kept.
    pub(crate) fn collect(
        scan: &str,
        params: MapParams,
        sample: String,
        items: Vec<Witness>,
        keep: impl Fn(&Witness) -> bool,
    ) -> Self {
        let mut counts = Counts::default();
        let mut witnesses = Vec::new();
        for item in items {
            counts.record(item.verdict);
            if item.verdict == Verdict::Refuted || keep(&item) {
                witnesses.push(item);
            }
        }
        ScanReport {
            scan: scan.to_string(),
            params,
            sample,
            counts,
            witnesses,
            summary: BTreeMap::new(),
        }
    }
}

pub(crate) fn evidence<const N: usize>(pairs: [(&str, String); N]) -> BTreeMap<String, String> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

//! Spectrum reports, verdicts and their text, JSON and SVG renderings.

use std::collections::BTreeMap;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::engine::{lemma_range, SearchBudget};
use crate::square::{LatinSquare, Triple};

pub const SCHEMA_VERSION: u32 = 1;

/// The JSON schema every report validates against.
pub const REPORT_SCHEMA: &str = include_str!("../schemas/spectrum_report.schema.json");

/// Outcome for one length of the admissible range.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum LengthStatus {
    Achieved { witness: Vec<Triple>, how: String },
    ProvenAbsent { reason: String },
    Forbidden { reason: String },
    Timeout,
}

impl LengthStatus {
    pub fn is_achieved(&self) -> bool {
        matches!(self, LengthStatus::Achieved { .. })
    }

    pub fn glyph(&self) -> char {
        match self {
            LengthStatus::Achieved { .. } => '●',
            LengthStatus::ProvenAbsent { .. } => '○',
            LengthStatus::Forbidden { .. } => '×',
            LengthStatus::Timeout => '?',
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            LengthStatus::Achieved { .. } => "achieved",
            LengthStatus::ProvenAbsent { .. } => "proven-absent",
            LengthStatus::Forbidden { .. } => "forbidden",
            LengthStatus::Timeout => "timeout",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthEntry {
    #[serde(flatten)]
    pub status: LengthStatus,
    pub nodes: u64,
    pub millis: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Verdict {
    Omniversal,
    NearOmniversal { mu: usize },
    Other { missing: Vec<usize> },
}

impl Verdict {
    pub fn label(&self) -> String {
        match self {
            Verdict::Omniversal => "omniversal".into(),
            Verdict::NearOmniversal { mu } => format!("near-omniversal (mu = {mu})"),
            Verdict::Other { missing } => format!("other (missing {missing:?})"),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Verdict::Omniversal => "omniversal",
            Verdict::NearOmniversal { .. } => "near-omniversal",
            Verdict::Other { .. } => "other",
        }
    }
}

/// Provenance of a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: Vec<String>,
    pub seed: Option<u64>,
    pub budget: SearchBudget,
    pub jobs: usize,
    pub version: String,
    pub input_hashes: Vec<String>,
    pub started_unix_ms: u64,
    pub ended_unix_ms: u64,
}

impl RunManifest {
    pub fn new(command: Vec<String>, budget: SearchBudget, jobs: usize) -> Self {
        let now = unix_ms();
        RunManifest {
            command,
            seed: None,
            budget,
            jobs,
            version: env!("CARGO_PKG_VERSION").to_string(),
            input_hashes: Vec::new(),
            started_unix_ms: now,
            ended_unix_ms: now,
        }
    }

    pub fn finish(&mut self) {
        self.ended_unix_ms = unix_ms();
    }
}

pub fn unix_ms() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_millis() as u64)
        .unwrap_or(0)
}

/// Per-length statuses over the admissible range plus the derived verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub schema_version: u32,
    pub square_hash: String,
    pub order: usize,
    pub range: [usize; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subject: Option<String>,
    pub lengths: BTreeMap<usize, LengthEntry>,
    pub verdict: Option<Verdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub manifest: Option<RunManifest>,
}

impl SpectrumReport {
    /// Builds a report and derives its verdict. Panics if `lengths` does not
    /// cover exactly the admissible range.
    pub fn new(l: &LatinSquare, lengths: BTreeMap<usize, LengthEntry>) -> Self {
        let n = l.order();
        let (lo, hi) = lemma_range(n);
        assert!(
            lengths.keys().copied().eq(lo..=hi),
            "statuses must cover exactly [{lo}, {hi}]"
        );
        let mut r = SpectrumReport {
            schema_version: SCHEMA_VERSION,
            square_hash: l.hash_hex(),
            order: n,
            range: [lo, hi],
            subject: None,
            lengths,
            verdict: None,
            manifest: None,
        };
        r.verdict = r.derive_verdict();
        r
    }

    pub fn with_subject(mut self, subject: impl Into<String>) -> Self {
        self.subject = Some(subject.into());
        self
    }

    fn derive_verdict(&self) -> Option<Verdict> {
        if self
            .lengths
            .values()
            .any(|e| e.status == LengthStatus::Timeout)
        {
            return None;
        }
        let missing: Vec<usize> = self
            .lengths
            .iter()
            .filter(|(_, e)| !e.status.is_achieved())
            .map(|(&l, _)| l)
            .collect();
        Some(match missing.as_slice() {
            [] => Verdict::Omniversal,
            [mu] => Verdict::NearOmniversal { mu: *mu },
            _ => Verdict::Other { missing },
        })
    }

    pub fn achieved(&self) -> Vec<usize> {
        self.lengths
            .iter()
            .filter(|(_, e)| e.status.is_achieved())
            .map(|(&l, _)| l)
            .collect()
    }

    pub fn missing(&self) -> Vec<usize> {
        self.lengths
            .iter()
            .filter(|(_, e)| !e.status.is_achieved())
            .map(|(&l, _)| l)
            .collect()
    }

    pub fn has_timeout(&self) -> bool {
        self.verdict.is_none()
    }

    pub fn status(&self, len: usize) -> Option<&LengthStatus> {
        self.lengths.get(&len).map(|e| &e.status)
    }

    pub fn total_nodes(&self) -> u64 {
        self.lengths.values().map(|e| e.nodes).sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Same report with timing and manifest fields cleared, for comparisons.
    pub fn without_timing(&self) -> Self {
        let mut r = self.clone();
        r.manifest = None;
        for e in r.lengths.values_mut() {
            e.millis = 0;
        }
        r
    }
}

/// One-line strip such as `4●5○6●`.
pub fn render_spectrum_strip(r: &SpectrumReport) -> String {
    r.lengths
        .iter()
        .map(|(l, e)| format!("{l}{}", e.status.glyph()))
        .collect()
}

pub const STRIP_LEGEND: &str = "● achieved  ○ proven absent  × forbidden by rule  ? timeout";

/// Plain rectangle strip, one cell per length.
pub fn render_spectrum_svg(r: &SpectrumReport) -> String {
    const CELL: usize = 36;
    let width = CELL * r.lengths.len().max(1);
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{h}\" viewBox=\"0 0 {width} {h}\">\n",
        h = CELL + 16
    );
    for (i, (len, e)) in r.lengths.iter().enumerate() {
        let fill = match e.status {
            LengthStatus::Achieved { .. } => "#2b6cb0",
            LengthStatus::ProvenAbsent { .. } => "#ffffff",
            LengthStatus::Forbidden { .. } => "#c53030",
            LengthStatus::Timeout => "#a0aec0",
        };
        let x = i * CELL;
        out.push_str(&format!(
            "  <rect x=\"{x}\" y=\"0\" width=\"{CELL}\" height=\"{CELL}\" fill=\"{fill}\" stroke=\"#000000\"/>\n  <text x=\"{tx}\" y=\"{ty}\" font-size=\"12\" text-anchor=\"middle\">{len}</text>\n",
            tx = x + CELL / 2,
            ty = CELL + 13
        ));
    }
    out.push_str("</svg>\n");
    out
}

/// Witness file contents shared by `witness` and `spectrum`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessFile {
    pub square_hash: String,
    pub length: usize,
    pub triples: Vec<Triple>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(status: LengthStatus) -> LengthEntry {
        LengthEntry {
            status,
            nodes: 1,
            millis: 0,
        }
    }

    fn z(n: usize) -> LatinSquare {
        LatinSquare::from_flat(n, (0..n * n).map(|i| (i / n + i % n) % n).collect()).unwrap()
    }

    #[test]
    fn verdicts() {
        let l = z(3);
        let ach = || LengthStatus::Achieved {
            witness: vec![],
            how: "test".into(),
        };
        let r = SpectrumReport::new(&l, BTreeMap::from([(2, entry(ach())), (3, entry(ach()))]));
        assert_eq!(r.verdict, Some(Verdict::Omniversal));
        let r = SpectrumReport::new(
            &l,
            BTreeMap::from([
                (2, entry(LengthStatus::ProvenAbsent { reason: "x".into() })),
                (3, entry(ach())),
            ]),
        );
        assert_eq!(r.verdict, Some(Verdict::NearOmniversal { mu: 2 }));
        let r = SpectrumReport::new(
            &l,
            BTreeMap::from([(2, entry(LengthStatus::Timeout)), (3, entry(ach()))]),
        );
        assert_eq!(r.verdict, None);
        assert_eq!(render_spectrum_strip(&r), "2?3●");
    }

    #[test]
    #[should_panic]
    fn range_must_be_exact() {
        SpectrumReport::new(&z(3), BTreeMap::new());
    }

    #[test]
    fn order_one_strip() {
        let l = z(1);
        let r = SpectrumReport::new(
            &l,
            BTreeMap::from([(
                1,
                entry(LengthStatus::Achieved {
                    witness: vec![Triple::new(0, 0, 0)],
                    how: "t".into(),
                }),
            )]),
        );
        assert_eq!(render_spectrum_strip(&r), "1●");
        assert!(render_spectrum_svg(&r).starts_with("<svg"));
    }

    #[test]
    fn json_round_trip() {
        let l = z(3);
        let r = SpectrumReport::new(
            &l,
            BTreeMap::from([
                (
                    2,
                    entry(LengthStatus::Forbidden {
                        reason: "nosmallingrp".into(),
                    }),
                ),
                (
                    3,
                    entry(LengthStatus::Achieved {
                        witness: vec![Triple::new(0, 0, 0)],
                        how: "direct-search".into(),
                    }),
                ),
            ]),
        );
        let text = r.to_json();
        assert!(text.contains("\"status\": \"forbidden\""));
        let back: SpectrumReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }
}

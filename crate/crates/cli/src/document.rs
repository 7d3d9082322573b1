//! JSON documents exchanged by the CLI.
//!
//! The input format is [`SystemDocument`]; everything else is output
//! only. Offsets are exact integer pairs, never decimal floats.

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use beatty_core::search::SearchReport;
use beatty_core::tg::{ApStructure, GapBoundReport, TgSequence};
use beatty_core::{
    BeattySpec, BeattySystem, BlockPartition, CoverCertificate, CoverFailure, Rational,
    ResidueBlock, SolutionCertificate,
};

/// One equal-numerator system: numerator `p` and a sequence list with
/// exact rational offsets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemDocument {
    pub p: i64,
    pub sequences: Vec<SequenceEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceEntry {
    pub q: i64,
    pub offset_num: i64,
    pub offset_den: i64,
}

impl SystemDocument {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).context("invalid system document")
    }

    /// Builds the system, naming the offending field on failure.
    pub fn build(&self) -> Result<BeattySystem> {
        if self.sequences.is_empty() {
            bail!("sequences: must not be empty");
        }
        let specs = self
            .sequences
            .iter()
            .enumerate()
            .map(|(i, entry)| {
                let beta = Rational::new(entry.offset_num, entry.offset_den)
                    .with_context(|| format!("sequences[{i}].offset_den"))?;
                BeattySpec::new(self.p, entry.q, beta)
                    .with_context(|| format!("sequences[{i}].q (with p = {})", self.p))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BeattySystem::new(specs)?)
    }

    /// Canonical document for a system: offsets reduced, metadata kept.
    pub fn from_system(system: &BeattySystem, name: Option<String>) -> Self {
        let p = system.specs()[0].p();
        let sequences = system
            .specs()
            .iter()
            .map(|s| SequenceEntry {
                q: s.q(),
                offset_num: s.beta().num(),
                offset_den: s.beta().den(),
            })
            .collect();
        SystemDocument {
            p,
            sequences,
            name,
            source: None,
        }
    }
}

/// Serializes any document as pretty JSON with a trailing newline.
pub fn render<T: Serialize>(doc: &T) -> String {
    let mut text = serde_json::to_string_pretty(doc).expect("documents serialize infallibly");
    text.push('\n');
    text
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FailureDocument {
    Density { sum: i64, p: i64 },
    Uncovered { residue: i64 },
    DoublyCovered { residue: i64, first: usize, second: usize },
}

impl From<&CoverFailure> for FailureDocument {
    fn from(failure: &CoverFailure) -> Self {
        match *failure {
            CoverFailure::Density { sum, p } => FailureDocument::Density { sum, p },
            CoverFailure::Uncovered { residue } => FailureDocument::Uncovered { residue },
            CoverFailure::DoublyCovered {
                residue,
                first,
                second,
            } => FailureDocument::DoublyCovered {
                residue,
                first,
                second,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowCheckDocument {
    pub window: i64,
    /// Every integer in `[-window, window]` lies in exactly one
    /// sequence, per direct floor enumeration.
    pub exactly_one: bool,
    /// The enumeration verdict matches the residue verdict.
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyDocument {
    pub ok: bool,
    pub p: i64,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<FailureDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub assignment: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window_check: Option<WindowCheckDocument>,
}

impl VerifyDocument {
    pub fn new(cert: &CoverCertificate, n: usize, window_check: Option<WindowCheckDocument>) -> Self {
        VerifyDocument {
            ok: cert.ok,
            p: cert.p,
            n,
            failure: cert.failure.as_ref().map(FailureDocument::from),
            assignment: cert.ok.then(|| {
                cert.assignment
                    .iter()
                    .map(|owner| owner.expect("ok certificates are total"))
                    .collect()
            }),
            window_check,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDocument {
    pub start: i64,
    pub diff: i64,
    pub len: i64,
    pub elements: Vec<i64>,
}

impl From<&ResidueBlock> for BlockDocument {
    fn from(block: &ResidueBlock) -> Self {
        BlockDocument {
            start: block.start,
            diff: block.diff,
            len: block.len,
            elements: block.sorted_elements(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionDocument {
    pub p: i64,
    pub normalized: bool,
    pub blocks: Vec<BlockDocument>,
}

impl From<&BlockPartition> for PartitionDocument {
    fn from(partition: &BlockPartition) -> Self {
        PartitionDocument {
            p: partition.p,
            normalized: partition.normalized,
            blocks: partition.blocks.iter().map(BlockDocument::from).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ApDocument {
    SingleAp { diff: i64 },
    TwoAps { diff: i64, lengths: (i64, i64) },
    Other,
}

impl From<&ApStructure> for ApDocument {
    fn from(ap: &ApStructure) -> Self {
        match *ap {
            ApStructure::SingleAp { diff } => ApDocument::SingleAp { diff },
            ApStructure::TwoAps { diff, lengths } => ApDocument::TwoAps { diff, lengths },
            ApStructure::Other => ApDocument::Other,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapSizeDocument {
    pub size: i64,
    pub count: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundDocument {
    pub q1: i64,
    pub gap_size_count: usize,
    pub lhs: i64,
    pub rhs: i64,
    pub satisfied: bool,
}

impl BoundDocument {
    pub fn new(q1: i64, report: &GapBoundReport) -> Self {
        BoundDocument {
            q1,
            gap_size_count: report.gap_size_count,
            lhs: report.lhs,
            rhs: report.rhs,
            satisfied: report.satisfied,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TgDocument {
    pub p: i64,
    pub a: i64,
    pub d: i64,
    pub q: i64,
    pub points: Vec<i64>,
    pub gaps: Vec<i64>,
    pub gap_sizes: Vec<GapSizeDocument>,
    pub smallest: i64,
    pub largest: i64,
    pub larger_count: i64,
    pub three_gap_ok: bool,
    pub ap: ApDocument,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<BoundDocument>,
}

impl TgDocument {
    pub fn new(tg: &TgSequence, bound: Option<BoundDocument>) -> Self {
        let profile = tg.gap_profile();
        TgDocument {
            p: tg.p(),
            a: tg.a(),
            d: tg.d(),
            q: tg.q(),
            points: tg.points().to_vec(),
            gaps: profile.gaps.clone(),
            gap_sizes: profile
                .size_counts
                .iter()
                .map(|(&size, &count)| GapSizeDocument { size, count })
                .collect(),
            smallest: profile.smallest,
            largest: profile.largest,
            larger_count: profile.larger_count,
            three_gap_ok: tg.satisfies_three_gap(),
            ap: ApDocument::from(&tg.classify_ap()),
            bound,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub p: i64,
    pub q_tuple: Vec<i64>,
    pub phases: Vec<i64>,
    pub blocks: Vec<BlockDocument>,
}

impl From<&SolutionCertificate> for CertificateDocument {
    fn from(cert: &SolutionCertificate) -> Self {
        CertificateDocument {
            p: cert.p,
            q_tuple: cert.q_tuple.clone(),
            phases: cert.phases.clone(),
            blocks: cert.blocks.iter().map(BlockDocument::from).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumeratorStatsDocument {
    pub p: i64,
    pub tuples: u64,
    pub certificates: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatsDocument {
    pub tuples_examined: u64,
    pub tuples_pruned: u64,
    pub cover_ops: u64,
    pub per_numerator: Vec<NumeratorStatsDocument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchDocument {
    pub n: u32,
    pub p_min: i64,
    pub p_max: i64,
    pub require_distinct: bool,
    pub complete: bool,
    /// What the scan does and does not establish.
    pub bound: String,
    pub certificates: Vec<CertificateDocument>,
    pub stats: StatsDocument,
}

impl From<&SearchReport> for SearchDocument {
    fn from(report: &SearchReport) -> Self {
        let bound = if report.complete {
            format!(
                "exhaustive for numerators p in [{}, {}]; nothing is claimed for p > {}",
                report.p_min, report.p_max, report.p_max
            )
        } else {
            "incomplete: the operation budget was exhausted; only a prefix of the scan order is covered".to_string()
        };
        SearchDocument {
            n: report.n,
            p_min: report.p_min,
            p_max: report.p_max,
            require_distinct: report.require_distinct,
            complete: report.complete,
            bound,
            certificates: report
                .certificates
                .iter()
                .map(CertificateDocument::from)
                .collect(),
            stats: StatsDocument {
                tuples_examined: report.tuples_examined,
                tuples_pruned: report.tuples_pruned,
                cover_ops: report.cover_ops,
                per_numerator: report
                    .per_numerator
                    .iter()
                    .map(|s| NumeratorStatsDocument {
                        p: s.p,
                        tuples: s.tuples_examined,
                        certificates: s.certificates,
                    })
                    .collect(),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn system_document_round_trip_is_canonical() {
        // unreduced offset and unordered fields normalize on the first
        // serialize; a second round trip is then a fixed point
        let text = r#"{"sequences":[{"q":4,"offset_num":2,"offset_den":4}],"p":7,"name":"x"}"#;
        let doc = SystemDocument::parse(text).unwrap();
        let system = doc.build().unwrap();
        let canonical = render(&SystemDocument::from_system(&system, doc.name.clone()));
        let reparsed = SystemDocument::parse(&canonical).unwrap();
        let again = render(&SystemDocument::from_system(
            &reparsed.build().unwrap(),
            reparsed.name.clone(),
        ));
        assert_eq!(canonical, again);
        assert!(canonical.contains("\"offset_num\": 1"));
        assert!(canonical.contains("\"offset_den\": 2"));
    }

    #[test]
    fn build_names_offending_field() {
        let doc = SystemDocument {
            p: 6,
            sequences: vec![
                SequenceEntry {
                    q: 5,
                    offset_num: 0,
                    offset_den: 1,
                },
                SequenceEntry {
                    q: 4,
                    offset_num: 0,
                    offset_den: 1,
                },
            ],
            name: None,
            source: None,
        };
        let err = format!("{:#}", doc.build().unwrap_err());
        assert!(err.contains("sequences[1].q"), "got: {err}");

        let doc = SystemDocument {
            p: 7,
            sequences: vec![SequenceEntry {
                q: 4,
                offset_num: 1,
                offset_den: 0,
            }],
            name: None,
            source: None,
        };
        let err = format!("{:#}", doc.build().unwrap_err());
        assert!(err.contains("sequences[0].offset_den"), "got: {err}");
    }

    #[test]
    fn failure_document_kinds() {
        let doc = FailureDocument::from(&CoverFailure::Density { sum: 9, p: 7 });
        assert!(render(&doc).contains("\"kind\": \"density\""));
        let doc = FailureDocument::from(&CoverFailure::DoublyCovered {
            residue: 0,
            first: 0,
            second: 1,
        });
        assert!(render(&doc).contains("\"kind\": \"doubly-covered\""));
    }
}

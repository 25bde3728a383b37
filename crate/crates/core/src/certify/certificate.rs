//! Certificate data and its canonical JSON form.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::CertifyError;
use crate::link_complex::{
    ColoringReport, CornerKind, CornerRef, CurvatureReport, LinkCycle, RelativeColoringReport, Sign,
};
use crate::log_model::{serialize_log, Log, LogClass, Move, ReducednessReport};
use crate::selection::ArcRef;

pub const SCHEMA_VERSION: u32 = 1;

/// Claims recorded by citation, keyed as in [`Verdict::citation`].
pub const CITATIONS: [(&str, &str); 5] = [
    (
        "coloring-test-dr",
        "A 2-complex with a zero/one angle structure that passes the coloring test is diagrammatically reducible, hence aspherical (Gersten; Sieradski).",
    ),
    (
        "bi-forest-nonpositive-immersion",
        "A standard 2-complex whose link is a bi-forest has non-positive immersion, so its fundamental group is locally indicable (Wise).",
    ),
    (
        "relative-coloring-test-va",
        "If (K(Γ), K(Γ₁)∨…∨K(Γₘ)) passes the relative coloring test with κ(d) ≤ 0 for all 2-cells and every K(Γᵢ) is vertex aspherical, then K(Γ) is vertex aspherical, hence aspherical.",
    ),
    (
        "reductions-homotopy",
        "Reductions of a LOF do not change the homotopy type of its 2-complex.",
    ),
    (
        "boundary-reduction-va",
        "A LOT complex that is vertex aspherical after boundary reductions is vertex aspherical.",
    ),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Lof,
    Relative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    True,
    False,
    HypothesisFailed,
    NonGeneric,
    NotApplicable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    /// Checked by this library on explicit witnesses.
    Witnessed,
    /// Follows from witnessed verdicts by a published theorem.
    ByCitation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub basis: Basis,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub citation: Option<String>,
}

impl Verdict {
    pub fn witnessed(holds: bool) -> Self {
        Verdict {
            status: if holds { Status::True } else { Status::False },
            basis: Basis::Witnessed,
            citation: None,
        }
    }

    pub fn cited(holds: bool, citation: &str) -> Self {
        Verdict {
            status: if holds { Status::True } else { Status::False },
            basis: Basis::ByCitation,
            citation: Some(citation.to_string()),
        }
    }

    pub fn with_status(status: Status, basis: Basis) -> Self {
        Verdict {
            status,
            basis,
            citation: None,
        }
    }

    pub fn is_true(&self) -> bool {
        self.status == Status::True
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputInfo {
    /// SHA-256 of the canonical text form, lowercase hex.
    pub digest: String,
    pub vertices: usize,
    pub edges: usize,
}

impl InputInfo {
    pub fn of(log: &Log) -> Self {
        InputInfo {
            digest: digest(log),
            vertices: log.vertex_count(),
            edges: log.edge_count(),
        }
    }
}

pub fn digest(log: &Log) -> String {
    Sha256::digest(serialize_log(log).as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    pub class: LogClass,
    pub reducedness: ReducednessReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubLotWitness {
    pub vertices: Vec<String>,
    pub edges: Vec<String>,
    /// The vertex of the sub-LOT that labels none of its edges.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary_vertex: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedCut {
    pub set: Vec<String>,
    pub delta: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypothesis {
    pub satisfied: bool,
    pub forest: bool,
    pub reduced: bool,
    pub injective: bool,
    pub sub_lots_boundary_reduced: bool,
    /// How sub-LOTs are read: connected subtrees with at least one edge
    /// whose labels lie in the subtree.
    pub sub_lot_scope: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub violating_sub_lot: Option<SubLotWitness>,
    /// `δ` of the violating sub-LOT's vertex set minus its boundary vertex.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sub_lot_cut: Option<NamedCut>,
    /// A minimum cut of the selection graph with `δ < 2`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub branching_cut: Option<NamedCut>,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionWitness {
    pub black: Vec<ArcRef>,
    pub white: Vec<ArcRef>,
}

/// The LOT pipeline run on one label-closed group of components.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupWitness {
    pub vertices: Vec<String>,
    pub edges: Vec<String>,
    /// Connecting edges added to make the group a tree.
    pub embedding: Vec<String>,
    pub root: String,
    pub branchings: Vec<Vec<ArcRef>>,
    pub partition: PartitionWitness,
    /// Reversed edges, including added ones.
    pub flips: Vec<String>,
}

/// Corners of a signed subgraph of the link, and a cycle if it has one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkSide {
    pub corners: Vec<CornerRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cycle: Option<LinkCycle>,
}

/// Both halves of a bi-forest check: `Λ(ε(X))` and `Λ(−ε(X))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LbfCheck {
    pub holds: bool,
    pub side: LinkSide,
    pub opposite: LinkSide,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AngleEntry {
    pub owner: String,
    pub kind: CornerKind,
    pub angle: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartWitness {
    pub vertices: Vec<String>,
    pub edges: Vec<String>,
    pub representative: String,
    /// Reduction moves applied before the recursive certification.
    pub reduction: Vec<Move>,
    pub certificate: Box<Certificate>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelativeWitness {
    pub parts: Vec<PartWitness>,
    /// Canonical text of the quotient LOF.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quotient: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quotient_certificate: Option<Box<Certificate>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub non_generic: Option<String>,
    /// Bi-forest check relative to the parts' links.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relative_lbf: Option<LbfCheck>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Witnesses {
    /// Moves applied to the input before certification.
    pub reduction: Vec<Move>,
    pub groups: Vec<GroupWitness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flips: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<BTreeMap<String, Sign>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub forests: Option<LbfCheck>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angles: Option<Vec<AngleEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curvature: Option<CurvatureReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coloring: Option<ColoringReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relative_coloring: Option<RelativeColoringReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relative: Option<RelativeWitness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema: u32,
    pub mode: Mode,
    pub input: InputInfo,
    pub flags: Flags,
    pub hypothesis: Hypothesis,
    pub witnesses: Witnesses,
    pub verdicts: BTreeMap<String, Verdict>,
    pub citations: BTreeMap<String, String>,
}

impl Certificate {
    pub fn verdict(&self, key: &str) -> Option<&Verdict> {
        self.verdicts.get(key)
    }

    /// True when the verdict exists and holds.
    pub fn holds(&self, key: &str) -> bool {
        self.verdict(key).is_some_and(Verdict::is_true)
    }

    /// Pretty JSON with object keys sorted.
    pub fn to_json(&self) -> String {
        // serde_json's default map is ordered, so going through Value sorts keys.
        let value = serde_json::to_value(self).expect("certificates serialize");
        let mut out = serde_json::to_string_pretty(&value).expect("values serialize");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Self, CertifyError> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| CertifyError::Json(e.to_string()))?;
        match value.get("schema").and_then(serde_json::Value::as_u64) {
            Some(v) if v == u64::from(SCHEMA_VERSION) => {}
            other => return Err(CertifyError::Schema(other)),
        }
        serde_json::from_value(value).map_err(|e| CertifyError::Json(e.to_string()))
    }
}

/// The citation table restricted to the keys used by `verdicts`.
pub(crate) fn citations_for(verdicts: &BTreeMap<String, Verdict>) -> BTreeMap<String, String> {
    CITATIONS
        .iter()
        .filter(|(key, _)| {
            verdicts
                .values()
                .any(|v| v.citation.as_deref() == Some(*key))
        })
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

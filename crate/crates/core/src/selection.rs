//! The selection graph Σ(Γ) and admissible black/white partitions of its arcs.
//!
//! Every edge `e` of Γ gives arcs `a(e) = s(e) → λ(e)` and `b(e) = t(e) → λ(e)`,
//! stored at indices `2·e` and `2·e + 1`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::link_complex::{quote, Corner, CornerKind, Sign};
use crate::log_model::{reorient_mask, Log};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SelectionError {
    #[error("expected {expected} arc colors, found {found}")]
    ColorCount { expected: usize, found: usize },
    #[error("a({0}) and b({0}) have the same color")]
    Inadmissible(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArcKind {
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    /// Index of the Γ-edge the arc comes from.
    pub owner: usize,
    pub kind: ArcKind,
}

/// `(owner id, kind)` reference to an arc, as used in certificates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ArcRef {
    pub owner: String,
    pub kind: ArcKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectionGraph {
    vertex_names: Vec<String>,
    edge_ids: Vec<String>,
    arcs: Vec<Arc>,
}

pub fn build_selection_graph(log: &Log) -> SelectionGraph {
    let mut arcs = Vec::with_capacity(2 * log.edge_count());
    for (owner, e) in log.edges().iter().enumerate() {
        arcs.push(Arc {
            from: e.source,
            to: e.label,
            owner,
            kind: ArcKind::A,
        });
        arcs.push(Arc {
            from: e.target,
            to: e.label,
            owner,
            kind: ArcKind::B,
        });
    }
    SelectionGraph {
        vertex_names: log.vertices().to_vec(),
        edge_ids: log.edges().iter().map(|e| e.id.clone()).collect(),
        arcs,
    }
}

impl SelectionGraph {
    /// A bare directed multigraph; arcs get owners `0..` and alternate kinds.
    pub fn from_arcs(node_count: usize, arcs: &[(usize, usize)]) -> Self {
        SelectionGraph {
            vertex_names: (0..node_count).map(|i| format!("v{i}")).collect(),
            edge_ids: (0..arcs.len().div_ceil(2))
                .map(|i| format!("k{i}"))
                .collect(),
            arcs: arcs
                .iter()
                .enumerate()
                .map(|(i, &(from, to))| Arc {
                    from,
                    to,
                    owner: i / 2,
                    kind: if i % 2 == 0 { ArcKind::A } else { ArcKind::B },
                })
                .collect(),
        }
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn node_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertex_names[v]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertex_names.iter().position(|v| v == name)
    }

    pub fn arc_ref(&self, arc: usize) -> ArcRef {
        let a = &self.arcs[arc];
        ArcRef {
            owner: self.edge_ids[a.owner].clone(),
            kind: a.kind,
        }
    }

    /// Index of the arc named by `r`.
    pub fn arc_index(&self, r: &ArcRef) -> Option<usize> {
        self.arcs
            .iter()
            .position(|a| self.edge_ids[a.owner] == r.owner && a.kind == r.kind)
    }

    /// `"a(e1)"` style label.
    pub fn arc_label(&self, arc: usize) -> String {
        let r = self.arc_ref(arc);
        let k = match r.kind {
            ArcKind::A => 'a',
            ArcKind::B => 'b',
        };
        format!("{k}({})", r.owner)
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.arcs.iter().filter(|a| a.to == v).count()
    }

    /// Graphviz rendering; with a partition, black arcs are drawn black and
    /// white arcs gray.
    pub fn to_dot(&self, partition: Option<&Partition2>) -> String {
        let mut out = String::from("digraph selection {\n");
        for v in &self.vertex_names {
            let _ = writeln!(out, "  {};", quote(v));
        }
        for (i, a) in self.arcs.iter().enumerate() {
            let color = match partition.map(|p| p.color(i)) {
                Some(Color::Black) => ", color=black",
                Some(Color::White) => ", color=gray",
                None => "",
            };
            let _ = writeln!(
                out,
                "  {} -> {} [label={}{}];",
                quote(&self.vertex_names[a.from]),
                quote(&self.vertex_names[a.to]),
                quote(&self.arc_label(i)),
                color
            );
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Black,
    White,
}

/// A color per arc, in arc order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition2 {
    colors: Vec<Color>,
}

impl Partition2 {
    pub fn new(colors: Vec<Color>) -> Self {
        Partition2 { colors }
    }

    /// Colors the given arcs black and the rest white.
    pub fn from_black(arc_count: usize, black: impl IntoIterator<Item = usize>) -> Self {
        let mut colors = vec![Color::White; arc_count];
        for a in black {
            colors[a] = Color::Black;
        }
        Partition2 { colors }
    }

    pub fn color(&self, arc: usize) -> Color {
        self.colors[arc]
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn arcs_of(&self, color: Color) -> Vec<usize> {
        (0..self.colors.len())
            .filter(|&i| self.colors[i] == color)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Admissibility {
    pub holds: bool,
    /// An edge whose two arcs share a color.
    pub witness: Option<String>,
}

pub fn is_admissible(
    sel: &SelectionGraph,
    p: &Partition2,
) -> Result<Admissibility, SelectionError> {
    if p.colors.len() != sel.arcs.len() {
        return Err(SelectionError::ColorCount {
            expected: sel.arcs.len(),
            found: p.colors.len(),
        });
    }
    let witness = (0..sel.edge_ids.len())
        .find(|&e| 2 * e + 1 < p.colors.len() && p.colors[2 * e] == p.colors[2 * e + 1])
        .map(|e| sel.edge_ids[e].clone());
    Ok(Admissibility {
        holds: witness.is_none(),
        witness,
    })
}

/// The reorientation in which every black arc is an a-arc: the edges whose
/// a-arc is white are reversed. Returns the log and the reversed edge ids.
pub fn reorientation_from_partition(
    log: &Log,
    p: &Partition2,
) -> Result<(Log, Vec<String>), SelectionError> {
    let sel = build_selection_graph(log);
    if let Some(e) = is_admissible(&sel, p)?.witness {
        return Err(SelectionError::Inadmissible(e));
    }
    let flip: Vec<bool> = (0..log.edge_count())
        .map(|e| p.colors[2 * e] == Color::White)
        .collect();
    let flips = log
        .edges()
        .iter()
        .zip(&flip)
        .filter(|(_, &f)| f)
        .map(|(e, _)| e.id.clone())
        .collect();
    Ok((reorient_mask(log, &flip), flips))
}

/// Arcs of Σ that are β-images of the corners of Λ^sign: the a-arcs for `+`
/// and the b-arcs for `−`.
pub fn beta_image(log: &Log, sign: Sign) -> Vec<usize> {
    let offset = usize::from(sign == Sign::Minus);
    (0..log.edge_count()).map(|e| 2 * e + offset).collect()
}

/// β on a single corner: the positive corner of `e` goes to `a(e)`, the
/// negative one to `b(e)`, mixed corners are not in the domain.
pub fn beta(corner: &Corner) -> Option<usize> {
    match corner.kind {
        CornerKind::Positive => Some(2 * corner.owner),
        CornerKind::Negative => Some(2 * corner.owner + 1),
        _ => None,
    }
}

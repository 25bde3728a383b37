//! The link of the one-vertex complex K(Γ), angle structures, curvature and
//! the (relative) coloring test.
//!
//! Link nodes are indexed `2·v` for `v⁺` and `2·v + 1` for `v⁻`. Corners are
//! stored in `(owner, kind)` order, so corner `4·e + k` belongs to edge `e`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Multigraph, Walk};
use crate::log_model::{Log, SubLog};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinkError {
    #[error("expected {expected} angles, found {found}")]
    AngleCount { expected: usize, found: usize },
    #[error("angle {value} at corner {index} is not 0 or 1")]
    InvalidAngle { index: usize, value: u8 },
    #[error("expected {expected} signs, found {found}")]
    SignCount { expected: usize, found: usize },
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("edge {0} belongs to more than one part")]
    PartsShareEdge(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn negate(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedVertex {
    pub vertex: usize,
    pub sign: Sign,
}

impl SignedVertex {
    pub fn plus(vertex: usize) -> Self {
        SignedVertex {
            vertex,
            sign: Sign::Plus,
        }
    }

    pub fn minus(vertex: usize) -> Self {
        SignedVertex {
            vertex,
            sign: Sign::Minus,
        }
    }

    pub fn node(self) -> usize {
        2 * self.vertex + usize::from(self.sign == Sign::Minus)
    }

    pub fn from_node(node: usize) -> Self {
        let sign = if node.is_multiple_of(2) {
            Sign::Plus
        } else {
            Sign::Minus
        };
        SignedVertex {
            vertex: node / 2,
            sign,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CornerKind {
    Positive,
    Negative,
    MixedSource,
    MixedTarget,
}

impl CornerKind {
    pub const ALL: [CornerKind; 4] = [
        CornerKind::Positive,
        CornerKind::Negative,
        CornerKind::MixedSource,
        CornerKind::MixedTarget,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CornerKind::Positive => "positive",
            CornerKind::Negative => "negative",
            CornerKind::MixedSource => "mixed_source",
            CornerKind::MixedTarget => "mixed_target",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Corner {
    /// Index of the owning edge, i.e. of the 2-cell.
    pub owner: usize,
    pub kind: CornerKind,
    pub ends: (SignedVertex, SignedVertex),
}

impl Corner {
    /// Endpoints as a sorted node pair.
    pub fn node_pair(&self) -> (usize, usize) {
        let (a, b) = (self.ends.0.node(), self.ends.1.node());
        (a.min(b), a.max(b))
    }
}

/// The four corners of the cell of an edge `s → t` labeled `l`.
pub fn corner_ends(
    source: usize,
    target: usize,
    label: usize,
    kind: CornerKind,
) -> (SignedVertex, SignedVertex) {
    use SignedVertex as S;
    match kind {
        CornerKind::Positive => (S::plus(source), S::plus(label)),
        CornerKind::Negative => (S::minus(label), S::minus(target)),
        CornerKind::MixedSource => (S::minus(source), S::plus(label)),
        CornerKind::MixedTarget => (S::minus(label), S::plus(target)),
    }
}

/// `(owner id, kind)` reference to a corner, as used in witnesses.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CornerRef {
    pub owner: String,
    pub kind: CornerKind,
}

/// A link cycle in readable form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkCycle {
    /// Signed vertices along the cycle, closing back at the first.
    pub nodes: Vec<String>,
    pub corners: Vec<CornerRef>,
    /// Sum of corner angles, when an angle assignment is in play.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub total_angle: Option<u32>,
}

/// A link graph, or a subgraph of one. Node and corner indices always refer
/// to the full link of the parent log.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkGraph {
    vertex_names: Vec<String>,
    edge_ids: Vec<String>,
    /// Present nodes, ascending.
    nodes: Vec<usize>,
    /// Present corners as `(corner index, corner)`, ascending by index.
    corners: Vec<(usize, Corner)>,
}

pub fn build_link(log: &Log) -> LinkGraph {
    let mut corners = Vec::with_capacity(4 * log.edge_count());
    for (owner, e) in log.edges().iter().enumerate() {
        for kind in CornerKind::ALL {
            let ends = corner_ends(e.source, e.target, e.label, kind);
            corners.push((corners.len(), Corner { owner, kind, ends }));
        }
    }
    LinkGraph {
        vertex_names: log.vertices().to_vec(),
        edge_ids: log.edges().iter().map(|e| e.id.clone()).collect(),
        nodes: (0..2 * log.vertex_count()).collect(),
        corners,
    }
}

impl LinkGraph {
    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    pub fn corners(&self) -> impl Iterator<Item = &Corner> {
        self.corners.iter().map(|(_, c)| c)
    }

    /// `(index, corner)` pairs of the present corners.
    pub fn indexed_corners(&self) -> &[(usize, Corner)] {
        &self.corners
    }

    pub fn corner_count(&self) -> usize {
        self.corners.len()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Size of the node index space, `2·|V|`.
    pub fn node_space(&self) -> usize {
        2 * self.vertex_names.len()
    }

    /// Size of the corner index space, `4·|E|`.
    pub fn corner_space(&self) -> usize {
        4 * self.edge_ids.len()
    }

    pub fn node_name(&self, node: usize) -> String {
        let sv = SignedVertex::from_node(node);
        format!("{}{}", self.vertex_names[sv.vertex], sv.sign.symbol())
    }

    pub fn corner_ref(&self, index: usize) -> CornerRef {
        CornerRef {
            owner: self.edge_ids[index / 4].clone(),
            kind: CornerKind::ALL[index % 4],
        }
    }

    /// Degree of a node; a loop counts twice.
    pub fn degree(&self, node: usize) -> usize {
        self.corners()
            .map(|c| {
                let (a, b) = c.node_pair();
                usize::from(a == node) + usize::from(b == node)
            })
            .sum()
    }

    /// Multigraph over the full node space whose edge `i` is the `i`-th
    /// present corner.
    pub fn to_multigraph(&self) -> Multigraph {
        let mut g = Multigraph::new(self.node_space());
        for (_, c) in &self.corners {
            let (a, b) = (c.ends.0.node(), c.ends.1.node());
            g.add_edge(a, b);
        }
        g
    }

    /// Readable form of a walk on [`to_multigraph`](Self::to_multigraph).
    pub fn describe_walk(&self, walk: &Walk, angles: Option<&AngleAssignment>) -> LinkCycle {
        let g = self.to_multigraph();
        let nodes = walk
            .nodes(&g)
            .into_iter()
            .map(|n| self.node_name(n))
            .collect();
        let corner_indices: Vec<usize> =
            walk.steps.iter().map(|s| self.corners[s.edge].0).collect();
        let total_angle =
            angles.map(|a| corner_indices.iter().map(|&i| u32::from(a.angle(i))).sum());
        LinkCycle {
            nodes,
            corners: corner_indices.iter().map(|&i| self.corner_ref(i)).collect(),
            total_angle,
        }
    }

    /// A simple cycle of this graph, if there is one.
    pub fn find_cycle(&self) -> Option<LinkCycle> {
        self.to_multigraph()
            .find_cycle()
            .map(|w| self.describe_walk(&w, None))
    }

    pub fn is_forest(&self) -> bool {
        self.to_multigraph().is_forest()
    }

    /// Graphviz rendering. Angle-0 corners are solid and angle-1 dashed.
    pub fn to_dot(&self, angles: Option<&AngleAssignment>) -> String {
        let mut out = String::from("graph link {\n");
        for &n in &self.nodes {
            let _ = writeln!(out, "  {};", quote(&self.node_name(n)));
        }
        for &(i, c) in &self.corners {
            let r = self.corner_ref(i);
            let style = match angles.map(|a| a.angle(i)) {
                Some(0) => ", style=solid",
                Some(_) => ", style=dashed",
                None => "",
            };
            let _ = writeln!(
                out,
                "  {} -- {} [label={}{}];",
                quote(&self.node_name(c.ends.0.node())),
                quote(&self.node_name(c.ends.1.node())),
                quote(&format!("{}:{}", r.owner, r.kind.name())),
                style
            );
        }
        out.push_str("}\n");
        out
    }
}

pub(crate) fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Full subgraph on `nodes`: keeps exactly the corners with both ends inside.
pub fn induced_subgraph(link: &LinkGraph, nodes: &BTreeSet<usize>) -> LinkGraph {
    LinkGraph {
        vertex_names: link.vertex_names.clone(),
        edge_ids: link.edge_ids.clone(),
        nodes: link
            .nodes
            .iter()
            .copied()
            .filter(|n| nodes.contains(n))
            .collect(),
        corners: link
            .corners
            .iter()
            .copied()
            .filter(|(_, c)| nodes.contains(&c.ends.0.node()) && nodes.contains(&c.ends.1.node()))
            .collect(),
    }
}

/// A sign per vertex of the log, in vertex order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignAssignment {
    signs: Vec<Sign>,
}

impl SignAssignment {
    pub fn new(signs: Vec<Sign>) -> Self {
        SignAssignment { signs }
    }

    pub fn constant(n: usize, sign: Sign) -> Self {
        SignAssignment {
            signs: vec![sign; n],
        }
    }

    /// Resolves a name-to-sign map against `log`; it must cover every vertex.
    pub fn from_names(log: &Log, map: &BTreeMap<String, Sign>) -> Result<Self, LinkError> {
        for name in map.keys() {
            if log.vertex_index(name).is_none() {
                return Err(LinkError::UnknownVertex(name.clone()));
            }
        }
        let signs = log
            .vertices()
            .iter()
            .map(|v| {
                map.get(v)
                    .copied()
                    .ok_or_else(|| LinkError::UnknownVertex(v.clone()))
            })
            .collect::<Result<_, _>>()?;
        Ok(SignAssignment { signs })
    }

    pub fn to_names(&self, log: &Log) -> BTreeMap<String, Sign> {
        log.vertices()
            .iter()
            .cloned()
            .zip(self.signs.iter().copied())
            .collect()
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn sign(&self, v: usize) -> Sign {
        self.signs[v]
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn negate(&self) -> Self {
        SignAssignment {
            signs: self.signs.iter().map(|s| s.negate()).collect(),
        }
    }

    /// The nodes `{x^ε(x)}`.
    pub fn nodes(&self) -> BTreeSet<usize> {
        self.signs
            .iter()
            .enumerate()
            .map(|(v, &sign)| SignedVertex { vertex: v, sign }.node())
            .collect()
    }
}

/// `Λ(x₁^ε₁, …, xₙ^εₙ)`.
pub fn sign_subgraph(link: &LinkGraph, eps: &SignAssignment) -> Result<LinkGraph, LinkError> {
    if eps.len() != link.vertex_names.len() {
        return Err(LinkError::SignCount {
            expected: link.vertex_names.len(),
            found: eps.len(),
        });
    }
    Ok(induced_subgraph(link, &eps.nodes()))
}

/// An angle in {0, 1} per corner, in corner order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AngleAssignment {
    angles: Vec<u8>,
}

impl AngleAssignment {
    pub fn new(angles: Vec<u8>) -> Result<Self, LinkError> {
        if let Some((index, &value)) = angles.iter().enumerate().find(|(_, &a)| a > 1) {
            return Err(LinkError::InvalidAngle { index, value });
        }
        Ok(AngleAssignment { angles })
    }

    pub fn constant(corners: usize, angle: u8) -> Result<Self, LinkError> {
        Self::new(vec![angle; corners])
    }

    pub fn angle(&self, corner: usize) -> u8 {
        self.angles[corner]
    }

    pub fn angles(&self) -> &[u8] {
        &self.angles
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    fn check(&self, log: &Log) -> Result<(), LinkError> {
        let expected = 4 * log.edge_count();
        if self.angles.len() != expected {
            return Err(LinkError::AngleCount {
                expected,
                found: self.angles.len(),
            });
        }
        Ok(())
    }

    /// Angle sum over the four corners of cell `e`.
    pub fn cell_sum(&self, e: usize) -> i64 {
        self.angles[4 * e..4 * e + 4]
            .iter()
            .map(|&a| i64::from(a))
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellCurvature {
    pub edge: String,
    pub curvature: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurvatureReport {
    /// κ(v) at the unique vertex.
    pub vertex: i64,
    /// κ(d) per 2-cell, in edge order.
    pub cells: Vec<CellCurvature>,
    /// χ(K) = 1 − |V| + |E|.
    pub euler_complex: i64,
    /// χ(lk) = #nodes − #corners.
    pub euler_link: i64,
}

impl CurvatureReport {
    pub fn gauss_bonnet_holds(&self) -> bool {
        2 * self.euler_complex == self.vertex + self.cells.iter().map(|c| c.curvature).sum::<i64>()
    }

    pub fn max_cell_curvature(&self) -> Option<i64> {
        self.cells.iter().map(|c| c.curvature).max()
    }
}

/// κ(v) = 2 − χ(lk) − Σω and κ(d) = Σ_d ω − (|∂d| − 2) with |∂d| = 4.
pub fn curvature(log: &Log, angles: &AngleAssignment) -> Result<CurvatureReport, LinkError> {
    angles.check(log)?;
    let n = log.vertex_count() as i64;
    let m = log.edge_count() as i64;
    let euler_link = 2 * n - 4 * m;
    let total: i64 = angles.angles.iter().map(|&a| i64::from(a)).sum();
    let cells = log
        .edges()
        .iter()
        .enumerate()
        .map(|(e, edge)| CellCurvature {
            edge: edge.id.clone(),
            curvature: angles.cell_sum(e) - 2,
        })
        .collect();
    Ok(CurvatureReport {
        vertex: 2 - euler_link - total,
        cells,
        euler_complex: 1 - n + m,
        euler_link,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleCheck {
    pub holds: bool,
    pub witness: Option<Walk>,
}

/// True iff `g` has no loop, parallel pair or longer cycle.
pub fn is_forest(g: &Multigraph) -> CycleCheck {
    let witness = g.find_cycle();
    CycleCheck {
        holds: witness.is_none(),
        witness,
    }
}

/// True iff every edge outside `sub` is a bridge of `g`. The witness is a
/// simple cycle through an offending edge.
pub fn is_relative_forest(g: &Multigraph, sub: &[bool]) -> CycleCheck {
    let bridges = g.bridges();
    let bad = (0..g.edges.len()).find(|&e| !sub[e] && !bridges[e]);
    let witness = bad.map(|e| {
        g.cycle_through(e, |_| true)
            .expect("a non-bridge lies on a cycle")
    });
    CycleCheck {
        holds: witness.is_none(),
        witness,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringReport {
    pub passed: bool,
    /// Cells with κ(d) > 0.
    pub positive_cells: Vec<String>,
    /// A simple cycle with total angle at most 1.
    pub light_cycle: Option<LinkCycle>,
}

/// Z-graph data: the full link as a multigraph plus its angle-0 corners.
struct ZGraph {
    link: LinkGraph,
    g: Multigraph,
    zero: Vec<bool>,
}

impl ZGraph {
    fn new(log: &Log, angles: &AngleAssignment) -> Result<ZGraph, LinkError> {
        angles.check(log)?;
        let link = build_link(log);
        let g = link.to_multigraph();
        let zero = angles.angles.iter().map(|&a| a == 0).collect();
        Ok(ZGraph { link, g, zero })
    }

    /// A corner of angle 1 closed up by a path of angle-0 corners.
    fn close_one(&self, c: usize) -> Option<Walk> {
        self.g.cycle_through(c, |e| self.zero[e])
    }
}

fn positive_cells(log: &Log, angles: &AngleAssignment, skip: &BTreeSet<usize>) -> Vec<String> {
    (0..log.edge_count())
        .filter(|e| !skip.contains(e) && angles.cell_sum(*e) > 2)
        .map(|e| log.edges()[e].id.clone())
        .collect()
}

/// Coloring test: κ(d) ≤ 0 for every cell, the angle-0 corners form a
/// forest Z, and every angle-1 corner joins two different components of Z.
pub fn verify_coloring_test(
    log: &Log,
    angles: &AngleAssignment,
) -> Result<ColoringReport, LinkError> {
    let z = ZGraph::new(log, angles)?;
    let positive_cells = positive_cells(log, angles, &BTreeSet::new());
    let walk = z.g.find_cycle_among(|e| z.zero[e]).or_else(|| {
        (0..z.g.edges.len())
            .filter(|&c| !z.zero[c])
            .find_map(|c| z.close_one(c))
    });
    let light_cycle = walk.map(|w| z.link.describe_walk(&w, Some(angles)));
    Ok(ColoringReport {
        passed: positive_cells.is_empty() && light_cycle.is_none(),
        positive_cells,
        light_cycle,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelativeColoringReport {
    pub passed: bool,
    /// Cells outside the parts with κ(d) > 0.
    pub positive_cells: Vec<String>,
    /// A simple cycle of total angle at most 1 that leaves the parts' link.
    pub escaping_cycle: Option<LinkCycle>,
}

/// Corner mask of the subcomplex spanned by the parts' edges.
fn part_corners(log: &Log, parts: &[SubLog]) -> Result<(BTreeSet<usize>, Vec<bool>), LinkError> {
    let mut owned = BTreeSet::new();
    for p in parts {
        for &e in &p.edges {
            if !owned.insert(e) {
                return Err(LinkError::PartsShareEdge(log.edges()[e].id.clone()));
            }
        }
    }
    let mask = (0..4 * log.edge_count())
        .map(|c| owned.contains(&(c / 4)))
        .collect();
    Ok((owned, mask))
}

/// Relative coloring test with respect to the subcomplex of the parts:
/// κ(d) ≤ 0 for cells outside it, and every simple cycle of total angle ≤ 1
/// lies in its link.
pub fn verify_relative_coloring_test(
    log: &Log,
    parts: &[SubLog],
    angles: &AngleAssignment,
) -> Result<RelativeColoringReport, LinkError> {
    let z = ZGraph::new(log, angles)?;
    let (owned, in_k) = part_corners(log, parts)?;
    let positive_cells = positive_cells(log, angles, &owned);

    let zero_bridges = z.g.bridges_among(|e| z.zero[e]);
    let k_zero = z.g.component_labels(|e| z.zero[e] && in_k[e]);
    let mut walk = None;
    for c in 0..z.g.edges.len() {
        if z.zero[c] {
            if !in_k[c] && !zero_bridges[c] {
                walk = z.g.cycle_through(c, |e| z.zero[e]);
            }
        } else if let Some(w) = z.close_one(c) {
            let (a, b) = z.g.edges[c];
            if !in_k[c] || k_zero[a] != k_zero[b] {
                walk = Some(w);
            }
        }
        if walk.is_some() {
            break;
        }
    }
    let escaping_cycle = walk.map(|w| z.link.describe_walk(&w, Some(angles)));
    Ok(RelativeColoringReport {
        passed: positive_cells.is_empty() && escaping_cycle.is_none(),
        positive_cells,
        escaping_cycle,
    })
}

/// Applies the transposition `v⁺ ↔ v⁻` to the ends of every corner.
pub fn transpose_signs(link: &LinkGraph, vertex: usize) -> LinkGraph {
    let swap = |sv: SignedVertex| {
        if sv.vertex == vertex {
            SignedVertex {
                vertex,
                sign: sv.sign.negate(),
            }
        } else {
            sv
        }
    };
    let mut out = link.clone();
    for (_, c) in out.corners.iter_mut() {
        c.ends = (swap(c.ends.0), swap(c.ends.1));
    }
    out
}

/// For each cell, a permutation of corner kinds carrying every corner of `a`
/// onto a corner of `b` with the same ends. `None` when the corner multisets
/// of some cell differ. Both graphs must be full links over the same edges.
pub fn corner_correspondence(a: &LinkGraph, b: &LinkGraph) -> Option<Vec<[CornerKind; 4]>> {
    if a.edge_ids != b.edge_ids
        || a.corners.len() != a.corner_space()
        || b.corners.len() != b.corner_space()
    {
        return None;
    }
    let perms = permutations4();
    (0..a.edge_ids.len())
        .map(|e| {
            let ca = &a.corners[4 * e..4 * e + 4];
            let cb = &b.corners[4 * e..4 * e + 4];
            perms
                .iter()
                .find(|p| (0..4).all(|k| ca[k].1.node_pair() == cb[p[k]].1.node_pair()))
                .map(|p| p.map(|k| CornerKind::ALL[k]))
        })
        .collect()
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in (0..4).filter(|&b| b != a) {
            for c in (0..4).filter(|&c| c != a && c != b) {
                out.push([a, b, c, 6 - a - b - c]);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::log_model::{block_reorient, reorient};
    use proptest::prelude::*;

    fn vee() -> Log {
        Log::new(
            &["x", "y", "z"],
            &[("e1", "x", "y", "z"), ("e2", "z", "y", "x")],
        )
        .unwrap()
    }

    fn vee_rho() -> Log {
        reorient(&vee(), &["e2"]).unwrap()
    }

    fn pairs(link: &LinkGraph) -> Vec<(String, String)> {
        link.corners()
            .map(|c| {
                (
                    link.node_name(c.ends.0.node()),
                    link.node_name(c.ends.1.node()),
                )
            })
            .collect()
    }

    #[test]
    fn four_corner_rule() {
        let log = Log::new(&["i", "j", "k"], &[("e", "i", "j", "k")]).unwrap();
        let link = build_link(&log);
        let expected = [("i+", "k+"), ("k-", "j-"), ("i-", "k+"), ("k-", "j+")];
        let got = pairs(&link);
        assert_eq!(got.len(), 4);
        for (g, e) in got.iter().zip(expected) {
            assert_eq!((g.0.as_str(), g.1.as_str()), e);
        }
        let triv = build_link(&Log::new(&["x"], &[]).unwrap());
        assert_eq!((triv.node_count(), triv.corner_count()), (2, 0));
    }

    #[test]
    fn vee_rho_link() {
        let link = build_link(&vee_rho());
        // e1: x -> y : z, e2: y -> z : x
        let expected = [
            ("x+", "z+"),
            ("z-", "y-"),
            ("x-", "z+"),
            ("z-", "y+"),
            ("y+", "x+"),
            ("x-", "z-"),
            ("y-", "x+"),
            ("x-", "z+"),
        ];
        let got = pairs(&link);
        for (g, e) in got.iter().zip(expected) {
            assert_eq!((g.0.as_str(), g.1.as_str()), e);
        }
        let plus = sign_subgraph(&link, &SignAssignment::constant(3, Sign::Plus)).unwrap();
        assert_eq!(plus.corner_count(), 2);
        assert!(plus.is_forest());
        assert!(induced_subgraph(&link, &BTreeSet::new()).corner_count() == 0);
        assert_eq!(induced_subgraph(&link, &(0..6).collect()), link);
    }

    #[test]
    fn vee_plus_has_parallel_pair() {
        let link = build_link(&vee());
        let plus = sign_subgraph(&link, &SignAssignment::constant(3, Sign::Plus)).unwrap();
        let cycle = plus.find_cycle().unwrap();
        assert_eq!(cycle.corners.len(), 2);
        assert!(cycle.corners.iter().all(|c| c.kind == CornerKind::Positive));
        let minus = sign_subgraph(&link, &SignAssignment::constant(3, Sign::Minus)).unwrap();
        assert!(minus.is_forest());
    }

    #[test]
    fn forest_and_relative_forest() {
        let mut loop_graph = Multigraph::new(1);
        loop_graph.add_edge(0, 0);
        let r = is_forest(&loop_graph);
        assert!(!r.holds);
        assert_eq!(r.witness.unwrap().edges(), vec![0]);

        let mut tri = Multigraph::new(3);
        tri.add_edge(0, 1);
        tri.add_edge(1, 2);
        tri.add_edge(2, 0);
        assert!(is_relative_forest(&tri, &[true, true, true]).holds);
        let r = is_relative_forest(&tri, &[true, false, false]);
        assert!(!r.holds);
        assert_eq!(r.witness.unwrap().steps.len(), 3);

        let mut path = Multigraph::new(3);
        path.add_edge(0, 1);
        path.add_edge(1, 2);
        assert!(is_relative_forest(&path, &[false, false]).holds);
    }

    fn bipartition(log: &Log, eps: &SignAssignment) -> AngleAssignment {
        let link = build_link(log);
        let side = |sv: SignedVertex| eps.sign(sv.vertex) == sv.sign;
        AngleAssignment::new(
            link.corners()
                .map(|c| u8::from(side(c.ends.0) != side(c.ends.1)))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn curvature_examples() {
        let rho = vee_rho();
        let angles = bipartition(&rho, &SignAssignment::constant(3, Sign::Plus));
        assert_eq!(angles.angles(), &[0, 0, 1, 1, 0, 0, 1, 1]);
        let r = curvature(&rho, &angles).unwrap();
        assert_eq!(r.vertex, 0);
        assert_eq!(r.euler_complex, 0);
        assert_eq!(r.euler_link, -2);
        assert!(r.cells.iter().all(|c| c.curvature == 0));
        assert!(r.gauss_bonnet_holds());

        let triv = Log::new(&["x"], &[]).unwrap();
        let r = curvature(&triv, &AngleAssignment::new(vec![]).unwrap()).unwrap();
        assert_eq!((r.vertex, r.euler_complex), (0, 0));

        let ones = AngleAssignment::constant(8, 1).unwrap();
        let r = curvature(&vee(), &ones).unwrap();
        assert_eq!(r.vertex, -4);
        assert!(r.cells.iter().all(|c| c.curvature == 2));
        assert!(r.gauss_bonnet_holds());

        assert_eq!(
            curvature(&vee(), &AngleAssignment::constant(3, 0).unwrap()),
            Err(LinkError::AngleCount {
                expected: 8,
                found: 3
            })
        );
        assert!(AngleAssignment::new(vec![2]).is_err());
    }

    #[test]
    fn coloring_test_examples() {
        let rho = vee_rho();
        let angles = bipartition(&rho, &SignAssignment::constant(3, Sign::Plus));
        assert!(verify_coloring_test(&rho, &angles).unwrap().passed);

        let zeros = AngleAssignment::constant(8, 0).unwrap();
        let r = verify_coloring_test(&vee(), &zeros).unwrap();
        assert!(!r.passed);
        assert!(r.positive_cells.is_empty());
        assert_eq!(r.light_cycle.unwrap().total_angle, Some(0));

        let triv = Log::new(&["x"], &[]).unwrap();
        assert!(
            verify_coloring_test(&triv, &AngleAssignment::new(vec![]).unwrap())
                .unwrap()
                .passed
        );
    }

    #[test]
    fn relative_coloring_test_examples() {
        let rho = vee_rho();
        let angles = bipartition(&rho, &SignAssignment::constant(3, Sign::Plus));
        let plain = verify_coloring_test(&rho, &angles).unwrap();
        let rel = verify_relative_coloring_test(&rho, &[], &angles).unwrap();
        assert_eq!(plain.passed, rel.passed);

        let whole = SubLog::from_edges(&vee(), &[0, 1]).unwrap();
        let zeros = AngleAssignment::constant(8, 0).unwrap();
        assert!(
            verify_relative_coloring_test(&vee(), std::slice::from_ref(&whole), &zeros)
                .unwrap()
                .passed
        );
        assert_eq!(
            verify_relative_coloring_test(&vee(), &[whole.clone(), whole], &zeros),
            Err(LinkError::PartsShareEdge("e1".into()))
        );
    }

    #[test]
    fn sign_swaps_on_vee() {
        let link = build_link(&vee());
        // x labels e2 only: the block reorientation at x is vee_rho.
        let swapped = transpose_signs(&link, 0);
        let target = build_link(&block_reorient(&vee(), &["x"]));
        let map = corner_correspondence(&swapped, &target).unwrap();
        use CornerKind::*;
        // e1 has x as source: positive and mixed_source trade places.
        assert_eq!(map[0], [MixedSource, Negative, Positive, MixedTarget]);
        // e2 is reversed and labeled x.
        assert_eq!(map[1], [MixedTarget, MixedSource, Negative, Positive]);
        // y labels nothing: its transposition is an automorphism.
        assert!(corner_correspondence(&transpose_signs(&link, 1), &link).is_some());
        // z is a label, so its transposition alone is not.
        assert!(corner_correspondence(&transpose_signs(&link, 2), &link).is_none());
    }

    #[test]
    fn dot_is_deterministic() {
        let link = build_link(&vee());
        let dot = link.to_dot(None);
        assert_eq!(dot.lines().filter(|l| l.contains("--")).count(), 8);
        assert!(dot.starts_with("graph link {\n  \"x+\";\n  \"x-\";\n"));
        let angles = AngleAssignment::constant(8, 1).unwrap();
        assert!(link
            .to_dot(Some(&angles))
            .contains("[label=\"e1:positive\", style=dashed]"));
    }

    fn arb_log() -> impl Strategy<Value = Log> {
        (1usize..6).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n, 0..n), 0..7).prop_map(move |edges| {
                let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
                let edges: Vec<(String, String, String, String)> = edges
                    .into_iter()
                    .enumerate()
                    .map(|(i, (s, t, l))| {
                        (
                            format!("k{i}"),
                            names[s].clone(),
                            names[t].clone(),
                            names[l].clone(),
                        )
                    })
                    .collect();
                Log::new(&names, &edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn degrees_follow_the_corner_rule(log in arb_log()) {
            let link = build_link(&log);
            prop_assert_eq!(link.corner_count(), 4 * log.edge_count());
            for v in 0..log.vertex_count() {
                let count = |f: &dyn Fn(&crate::log_model::Edge) -> bool| log.edges().iter().filter(|e| f(e)).count();
                let expected = count(&|e| e.source == v) + count(&|e| e.target == v) + 2 * count(&|e| e.label == v);
                prop_assert_eq!(link.degree(2 * v), expected);
                prop_assert_eq!(link.degree(2 * v + 1), expected);
            }
        }

        #[test]
        fn gauss_bonnet(log in arb_log(), bits in proptest::collection::vec(0u8..2, 28)) {
            let angles = AngleAssignment::new(bits[..4 * log.edge_count()].to_vec()).unwrap();
            prop_assert!(curvature(&log, &angles).unwrap().gauss_bonnet_holds());
        }

        #[test]
        fn block_reorientation_swaps_signs(log in arb_log(), j in 0usize..6) {
            let j = j % log.vertex_count();
            let name = log.vertex_name(j).to_string();
            let swapped = transpose_signs(&build_link(&log), j);
            let target = build_link(&block_reorient(&log, &[name]));
            prop_assert!(corner_correspondence(&swapped, &target).is_some());
        }
    }
}

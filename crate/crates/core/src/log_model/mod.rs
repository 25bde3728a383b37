//! Labeled oriented graphs and their graph-level predicates.
//!
//! A [`Log`] is a directed multigraph whose edges each carry a vertex as a
//! label. It encodes the presentation with one generator per vertex and one
//! relator `s(e) λ(e) = λ(e) t(e)` per edge.

mod reduce;
mod sublot;
mod text;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use reduce::{apply_move, reduce, Move, Reduction};
pub use sublot::{enumerate_sub_lots, quotient_lof, Quotient, SubLog};
pub use text::{parse_log, serialize_log, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogError {
    #[error("invalid vertex name {0:?}")]
    InvalidVertexName(String),
    #[error("invalid edge id {0:?}")]
    InvalidEdgeId(String),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(String),
    #[error("duplicate edge id {0}")]
    DuplicateEdge(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("unknown edge id {0}")]
    UnknownEdge(String),
    #[error("sub-LOG is invalid: {0}")]
    InvalidSubLog(String),
    #[error("parts {0} and {1} share vertex {2}")]
    PartsNotDisjoint(usize, usize, String),
    #[error("representative {rep} is not a vertex of part {part}")]
    RepOutsidePart { part: usize, rep: String },
    #[error("{parts} parts but {reps} representatives")]
    RepCountMismatch { parts: usize, reps: usize },
    #[error("move {0} does not apply")]
    MoveNotApplicable(String),
}

/// An edge of a [`Log`]; endpoints and label are vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: String,
    pub source: usize,
    pub target: usize,
    pub label: usize,
}

/// A labeled oriented graph. Vertices and edges keep declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Log {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

pub(crate) fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && !name.contains(|c: char| c.is_whitespace() || c == ':' || c == '#')
        && !name.contains("->")
}

impl Log {
    /// Builds a log from vertex names and `(id, source, target, label)` tuples.
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S, S, S)]) -> Result<Self, LogError> {
        let mut log = Log::default();
        for v in vertices {
            log.push_vertex(v.as_ref())?;
        }
        for (id, s, t, l) in edges {
            let idx = |n: &S| {
                log.vertex_index(n.as_ref())
                    .ok_or_else(|| LogError::UnknownVertex(n.as_ref().to_string()))
            };
            let (s, t, l) = (idx(s)?, idx(t)?, idx(l)?);
            log.push_edge(id.as_ref(), s, t, l)?;
        }
        Ok(log)
    }

    pub(crate) fn push_vertex(&mut self, name: &str) -> Result<usize, LogError> {
        if !valid_name(name) {
            return Err(LogError::InvalidVertexName(name.to_string()));
        }
        if self.vertex_index(name).is_some() {
            return Err(LogError::DuplicateVertex(name.to_string()));
        }
        self.vertices.push(name.to_string());
        Ok(self.vertices.len() - 1)
    }

    pub(crate) fn push_edge(
        &mut self,
        id: &str,
        source: usize,
        target: usize,
        label: usize,
    ) -> Result<usize, LogError> {
        if !valid_name(id) {
            return Err(LogError::InvalidEdgeId(id.to_string()));
        }
        if self.edge_index(id).is_some() {
            return Err(LogError::DuplicateEdge(id.to_string()));
        }
        let n = self.vertices.len();
        assert!(
            source < n && target < n && label < n,
            "vertex index out of range"
        );
        self.edges.push(Edge {
            id: id.to_string(),
            source,
            target,
            label,
        });
        Ok(self.edges.len() - 1)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    /// Number of edge ends at `v`; a loop counts twice.
    pub fn valency(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| usize::from(e.source == v) + usize::from(e.target == v))
            .sum()
    }

    pub fn is_label(&self, v: usize) -> bool {
        self.edges.iter().any(|e| e.label == v)
    }

    /// Human-readable `id: s -> t : l` form of an edge.
    pub fn describe_edge(&self, e: usize) -> String {
        let e = &self.edges[e];
        format!(
            "{}: {} -> {} : {}",
            e.id, self.vertices[e.source], self.vertices[e.target], self.vertices[e.label]
        )
    }

    /// The log restricted to the given vertices and edges, in parent order.
    ///
    /// Every endpoint and label of a kept edge must be a kept vertex.
    pub fn restrict(
        &self,
        vertices: &BTreeSet<usize>,
        edges: &BTreeSet<usize>,
    ) -> Result<Log, LogError> {
        let mut index = BTreeMap::new();
        let mut out = Log::default();
        for &v in vertices {
            index.insert(v, out.push_vertex(&self.vertices[v])?);
        }
        for &e in edges {
            let edge = &self.edges[e];
            let map = |v: usize| {
                index.get(&v).copied().ok_or_else(|| {
                    LogError::InvalidSubLog(format!("edge {} leaves the vertex set", edge.id))
                })
            };
            out.push_edge(
                &edge.id,
                map(edge.source)?,
                map(edge.target)?,
                map(edge.label)?,
            )?;
        }
        Ok(out)
    }

    /// Adds an edge to a copy of the log; used for embeddings.
    pub fn with_edge(
        &self,
        id: &str,
        source: usize,
        target: usize,
        label: usize,
    ) -> Result<Log, LogError> {
        let mut out = self.clone();
        out.push_edge(id, source, target, label)?;
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LogKind {
    GeneralLog,
    Lof,
    Lot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogClass {
    pub kind: LogKind,
    pub components: usize,
}

/// Union-find with path halving.
#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// Classifies the underlying undirected graph as a tree, forest, or neither.
///
/// The empty log is a forest with zero components.
pub fn classify(log: &Log) -> LogClass {
    let mut uf = UnionFind::new(log.vertex_count());
    let mut acyclic = true;
    for e in log.edges() {
        if !uf.union(e.source, e.target) {
            acyclic = false;
        }
    }
    let components = (0..log.vertex_count()).filter(|&v| uf.find(v) == v).count();
    let kind = match (acyclic, components) {
        (false, _) => LogKind::GeneralLog,
        (true, 1) => LogKind::Lot,
        (true, _) => LogKind::Lof,
    };
    LogClass { kind, components }
}

/// Vertex sets of the connected components, ordered by smallest vertex.
pub fn components(log: &Log) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(log.vertex_count());
    for e in log.edges() {
        uf.union(e.source, e.target);
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..log.vertex_count() {
        let r = uf.find(v);
        groups.entry(r).or_default().push(v);
    }
    groups.into_values().collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InteriorDefect {
    pub vertex: String,
    /// `"source"` when both edges start at the vertex, `"target"` otherwise.
    pub end: String,
    pub edges: (String, String),
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ReducednessReport {
    pub boundary_reduced: bool,
    /// Valency-1 vertices that are not labels.
    pub boundary_witnesses: Vec<String>,
    pub interior_reduced: bool,
    pub interior_witnesses: Vec<InteriorDefect>,
    pub compressed: bool,
    /// Edges whose label is one of their endpoints.
    pub compressed_witnesses: Vec<String>,
    pub injective: bool,
    /// Pairs of edges with the same label.
    pub injective_witnesses: Vec<(String, String)>,
}

impl ReducednessReport {
    pub fn reduced(&self) -> bool {
        self.boundary_reduced && self.interior_reduced && self.compressed
    }
}

pub(crate) fn boundary_defects(log: &Log) -> Vec<usize> {
    (0..log.vertex_count())
        .filter(|&v| log.valency(v) == 1 && !log.is_label(v))
        .collect()
}

pub fn reducedness_report(log: &Log) -> ReducednessReport {
    let name = |v: usize| log.vertex_name(v).to_string();
    let edges = log.edges();

    let boundary_witnesses: Vec<String> = boundary_defects(log).into_iter().map(name).collect();

    let mut interior_witnesses = Vec::new();
    let mut injective_witnesses = Vec::new();
    for (i, e) in edges.iter().enumerate() {
        for f in &edges[i + 1..] {
            if e.label != f.label {
                continue;
            }
            injective_witnesses.push((e.id.clone(), f.id.clone()));
            if e.source == f.source {
                interior_witnesses.push(InteriorDefect {
                    vertex: name(e.source),
                    end: "source".into(),
                    edges: (e.id.clone(), f.id.clone()),
                });
            }
            if e.target == f.target {
                interior_witnesses.push(InteriorDefect {
                    vertex: name(e.target),
                    end: "target".into(),
                    edges: (e.id.clone(), f.id.clone()),
                });
            }
        }
    }

    let compressed_witnesses: Vec<String> = edges
        .iter()
        .filter(|e| e.label == e.source || e.label == e.target)
        .map(|e| e.id.clone())
        .collect();

    ReducednessReport {
        boundary_reduced: boundary_witnesses.is_empty(),
        boundary_witnesses,
        interior_reduced: interior_witnesses.is_empty(),
        interior_witnesses,
        compressed: compressed_witnesses.is_empty(),
        compressed_witnesses,
        injective: injective_witnesses.is_empty(),
        injective_witnesses,
    }
}

/// Reverses exactly the edges named in `flips`.
pub fn reorient<S: AsRef<str>>(log: &Log, flips: &[S]) -> Result<Log, LogError> {
    let mut flip = vec![false; log.edge_count()];
    for id in flips {
        let e = log
            .edge_index(id.as_ref())
            .ok_or_else(|| LogError::UnknownEdge(id.as_ref().to_string()))?;
        flip[e] = true;
    }
    Ok(reorient_mask(log, &flip))
}

pub(crate) fn reorient_mask(log: &Log, flip: &[bool]) -> Log {
    let mut out = log.clone();
    for (e, &f) in out.edges.iter_mut().zip(flip) {
        if f {
            std::mem::swap(&mut e.source, &mut e.target);
        }
    }
    out
}

/// Reverses every edge whose label is in `labels`. Unknown names match nothing.
pub fn block_reorient<S: AsRef<str>>(log: &Log, labels: &[S]) -> Log {
    let set: BTreeSet<&str> = labels.iter().map(|s| s.as_ref()).collect();
    let flip: Vec<bool> = log
        .edges()
        .iter()
        .map(|e| set.contains(log.vertex_name(e.label)))
        .collect();
    reorient_mask(log, &flip)
}

/// Vertices that label no edge, in declaration order.
pub fn non_label_vertices(log: &Log) -> Vec<usize> {
    let labels: BTreeSet<usize> = log.edges().iter().map(|e| e.label).collect();
    (0..log.vertex_count())
        .filter(|v| !labels.contains(v))
        .collect()
}

//! Sub-LOTs and quotient LOFs.

use std::collections::{BTreeMap, BTreeSet};

use super::{Log, LogError};

/// A connected tree subgraph `(V₀, E₀)` of a parent log with `E₀ ≠ ∅`.
///
/// Indices refer to the parent. `is_lambda_closed` records whether every
/// label of `E₀` lies in `V₀`, which makes it a sub-LOT.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SubLog {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    pub is_tree: bool,
    pub is_lambda_closed: bool,
    pub is_boundary_reduced: bool,
}

impl SubLog {
    /// Builds and validates the sub-log spanned by `edges`.
    pub fn from_edges(log: &Log, edges: &[usize]) -> Result<SubLog, LogError> {
        if edges.is_empty() {
            return Err(LogError::InvalidSubLog("no edges".into()));
        }
        let edge_set: BTreeSet<usize> = edges.iter().copied().collect();
        if edge_set.iter().any(|&e| e >= log.edge_count()) {
            return Err(LogError::InvalidSubLog("edge index out of range".into()));
        }
        let vertex_set: BTreeSet<usize> = edge_set
            .iter()
            .flat_map(|&e| [log.edges()[e].source, log.edges()[e].target])
            .collect();
        Ok(Self::describe(log, &vertex_set, &edge_set))
    }

    /// Resolves edge ids against `log`.
    pub fn from_edge_ids<S: AsRef<str>>(log: &Log, ids: &[S]) -> Result<SubLog, LogError> {
        let edges = ids
            .iter()
            .map(|id| {
                log.edge_index(id.as_ref())
                    .ok_or_else(|| LogError::UnknownEdge(id.as_ref().into()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_edges(log, &edges)
    }

    fn describe(log: &Log, vertices: &BTreeSet<usize>, edges: &BTreeSet<usize>) -> SubLog {
        let mut uf = super::UnionFind::new(log.vertex_count());
        let mut acyclic = true;
        for &e in edges {
            let ed = &log.edges()[e];
            acyclic &= uf.union(ed.source, ed.target);
        }
        let roots: BTreeSet<usize> = vertices.iter().map(|&v| uf.find(v)).collect();
        let is_tree = acyclic && roots.len() == 1;
        let labels: BTreeSet<usize> = edges.iter().map(|&e| log.edges()[e].label).collect();
        let is_lambda_closed = labels.is_subset(vertices);
        let is_boundary_reduced = vertices.iter().all(|&v| {
            let valency: usize = edges
                .iter()
                .map(|&e| {
                    let ed = &log.edges()[e];
                    usize::from(ed.source == v) + usize::from(ed.target == v)
                })
                .sum();
            valency != 1 || labels.contains(&v)
        });
        SubLog {
            vertices: vertices.iter().copied().collect(),
            edges: edges.iter().copied().collect(),
            is_tree,
            is_lambda_closed,
            is_boundary_reduced,
        }
    }

    pub fn is_sub_lot(&self) -> bool {
        self.is_tree && self.is_lambda_closed
    }

    /// The unique vertex of a sub-LOT that labels none of its edges, when
    /// the labeling on it is injective.
    pub fn non_label_vertex(&self, log: &Log) -> Option<usize> {
        let labels: BTreeSet<usize> = self.edges.iter().map(|&e| log.edges()[e].label).collect();
        let mut free = self
            .vertices
            .iter()
            .copied()
            .filter(|v| !labels.contains(v));
        match (free.next(), free.next()) {
            (Some(v), None) => Some(v),
            _ => None,
        }
    }

    /// The sub-log as a standalone log.
    pub fn to_log(&self, log: &Log) -> Result<Log, LogError> {
        log.restrict(
            &self.vertices.iter().copied().collect(),
            &self.edges.iter().copied().collect(),
        )
    }

    pub fn vertex_names<'a>(&self, log: &'a Log) -> Vec<&'a str> {
        self.vertices.iter().map(|&v| log.vertex_name(v)).collect()
    }

    pub fn edge_ids<'a>(&self, log: &'a Log) -> Vec<&'a str> {
        self.edges
            .iter()
            .map(|&e| log.edges()[e].id.as_str())
            .collect()
    }
}

struct SubtreeSearch<'a> {
    log: &'a Log,
    /// Per vertex: `(edge, other endpoint)` for every non-loop incident edge.
    incidence: Vec<Vec<(usize, usize)>>,
    min_vertex: usize,
    max_size: usize,
    found: Vec<SubLog>,
}

impl SubtreeSearch<'_> {
    /// Reports the current tree and extends it by each candidate edge in turn,
    /// forbidding earlier candidates in later branches so that every subtree
    /// is produced exactly once.
    fn grow(
        &mut self,
        vertices: &mut BTreeSet<usize>,
        edges: &mut BTreeSet<usize>,
        candidates: &[(usize, usize)],
        forbidden: &mut BTreeSet<usize>,
    ) {
        if !edges.is_empty() {
            let labels_inside = edges
                .iter()
                .all(|&e| vertices.contains(&self.log.edges()[e].label));
            if labels_inside {
                self.found.push(SubLog::describe(self.log, vertices, edges));
            }
        }
        if vertices.len() >= self.max_size {
            return;
        }
        let mut added = Vec::new();
        for (i, &(edge, w)) in candidates.iter().enumerate() {
            if forbidden.contains(&edge) || vertices.contains(&w) {
                continue;
            }
            vertices.insert(w);
            edges.insert(edge);
            let mut next: Vec<(usize, usize)> = candidates[i + 1..]
                .iter()
                .copied()
                .filter(|&(f, x)| x != w && !forbidden.contains(&f))
                .collect();
            next.extend(self.incidence[w].iter().copied().filter(|&(f, x)| {
                x >= self.min_vertex && !vertices.contains(&x) && !forbidden.contains(&f)
            }));
            self.grow(vertices, edges, &next, forbidden);
            vertices.remove(&w);
            edges.remove(&edge);
            forbidden.insert(edge);
            added.push(edge);
        }
        for e in added {
            forbidden.remove(&e);
        }
    }
}

/// All connected tree subgraphs with at least one edge whose labels lie in
/// their own vertex set, with at most `max_size` vertices.
///
/// Sorted by vertex count, then vertex and edge indices.
pub fn enumerate_sub_lots(log: &Log, max_size: Option<usize>) -> Vec<SubLog> {
    let mut incidence = vec![Vec::new(); log.vertex_count()];
    for (i, e) in log.edges().iter().enumerate() {
        if e.source != e.target {
            incidence[e.source].push((i, e.target));
            incidence[e.target].push((i, e.source));
        }
    }
    let mut search = SubtreeSearch {
        log,
        incidence,
        min_vertex: 0,
        max_size: max_size.unwrap_or(usize::MAX),
        found: Vec::new(),
    };
    for root in 0..log.vertex_count() {
        search.min_vertex = root;
        let candidates: Vec<(usize, usize)> = search.incidence[root]
            .iter()
            .copied()
            .filter(|&(_, x)| x > root)
            .collect();
        let mut vertices = BTreeSet::from([root]);
        search.grow(
            &mut vertices,
            &mut BTreeSet::new(),
            &candidates,
            &mut BTreeSet::new(),
        );
    }
    let mut found = search.found;
    found.sort_by(|a, b| {
        (a.vertices.len(), &a.vertices, &a.edges).cmp(&(b.vertices.len(), &b.vertices, &b.edges))
    });
    found
}

/// A quotient LOF together with the collapse map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    pub log: Log,
    /// Parent vertex index to quotient vertex index.
    pub vertex_map: Vec<usize>,
    /// Quotient edge index to parent edge index.
    pub edge_origin: Vec<usize>,
}

impl Quotient {
    /// Parent label name to quotient label name, for every surviving edge.
    pub fn label_map(&self, parent: &Log) -> BTreeMap<String, String> {
        self.edge_origin
            .iter()
            .map(|&e| {
                let l = parent.edges()[e].label;
                (
                    parent.vertex_name(l).to_string(),
                    self.log.vertex_name(self.vertex_map[l]).to_string(),
                )
            })
            .collect()
    }
}

/// Collapses each part to its representative and relabels edges accordingly.
pub fn quotient_lof(log: &Log, parts: &[SubLog], reps: &[usize]) -> Result<Quotient, LogError> {
    if parts.len() != reps.len() {
        return Err(LogError::RepCountMismatch {
            parts: parts.len(),
            reps: reps.len(),
        });
    }
    let mut owner: BTreeMap<usize, usize> = BTreeMap::new();
    let mut collapsed_edges = BTreeSet::new();
    for (i, part) in parts.iter().enumerate() {
        let check = SubLog::from_edges(log, &part.edges)?;
        if !check.is_sub_lot() || check.vertices != part.vertices {
            return Err(LogError::InvalidSubLog(format!(
                "part {i} is not a sub-LOT"
            )));
        }
        for &v in &part.vertices {
            if let Some(&j) = owner.get(&v) {
                return Err(LogError::PartsNotDisjoint(
                    j,
                    i,
                    log.vertex_name(v).to_string(),
                ));
            }
            owner.insert(v, i);
        }
        if !part.vertices.contains(&reps[i]) {
            let rep = reps[i];
            let rep = if rep < log.vertex_count() {
                log.vertex_name(rep).to_string()
            } else {
                rep.to_string()
            };
            return Err(LogError::RepOutsidePart { part: i, rep });
        }
        collapsed_edges.extend(part.edges.iter().copied());
    }

    let image = |v: usize| owner.get(&v).map_or(v, |&i| reps[i]);
    let mut out = Log::default();
    let mut new_index = vec![usize::MAX; log.vertex_count()];
    for v in 0..log.vertex_count() {
        if image(v) == v {
            new_index[v] = out.push_vertex(log.vertex_name(v))?;
        }
    }
    let vertex_map: Vec<usize> = (0..log.vertex_count())
        .map(|v| new_index[image(v)])
        .collect();
    let mut edge_origin = Vec::new();
    for (i, e) in log.edges().iter().enumerate() {
        if collapsed_edges.contains(&i) {
            continue;
        }
        out.push_edge(
            &e.id,
            vertex_map[e.source],
            vertex_map[e.target],
            vertex_map[e.label],
        )?;
        edge_origin.push(i);
    }
    Ok(Quotient {
        log: out,
        vertex_map,
        edge_origin,
    })
}

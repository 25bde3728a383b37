//! Cycle enumeration and cycle classification.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::OracleError;
use crate::graph::{Multigraph, Step, Walk};

/// Default bound on the edge count for [`edge_subset_cycles`].
pub const DEFAULT_SUBSET_CAP: usize = 20;

/// A closed walk with its classification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleWitness {
    /// Nodes along the walk, closing back at the first.
    pub nodes: Vec<usize>,
    pub edges: Vec<usize>,
    pub walk: Walk,
    /// No repeated node or edge.
    pub simple: bool,
    /// No edge immediately followed by its reverse, cyclically.
    pub reduced: bool,
    /// No edge used in both directions.
    pub homology_reduced: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub total_angle: Option<u32>,
}

fn reverse(s: Step) -> Step {
    Step {
        edge: s.edge,
        forward: !s.forward,
    }
}

impl CycleWitness {
    pub fn classify(g: &Multigraph, walk: &Walk) -> CycleWitness {
        let nodes = walk.nodes(g);
        let edges = walk.edges();
        let steps = &walk.steps;
        let k = steps.len();
        let inner = &nodes[..nodes.len() - 1];
        let simple = (0..inner.len()).all(|i| !inner[i + 1..].contains(&inner[i]))
            && (0..k).all(|i| !edges[i + 1..].contains(&edges[i]));
        // A loop traversed once is its own reverse only when taken back.
        let reduced = (0..k).all(|i| steps[(i + 1) % k] != reverse(steps[i]) || k == 1);
        let homology_reduced = (0..k).all(|i| (0..k).all(|j| steps[j] != reverse(steps[i])));
        CycleWitness {
            nodes,
            edges,
            walk: walk.clone(),
            simple,
            reduced,
            homology_reduced,
            total_angle: None,
        }
    }

    /// Sum of `weights` over the walk's edges.
    pub fn with_weights(mut self, weights: &[u8]) -> Self {
        self.total_angle = Some(self.edges.iter().map(|&e| u32::from(weights[e])).sum());
        self
    }
}

/// Depth-first enumeration of simple cycles whose smallest node is `start`.
/// Returns false once `visit` asks to stop.
struct SimpleCycles<'a> {
    g: &'a Multigraph,
    adj: Vec<Vec<(usize, usize)>>,
    max_len: usize,
    weights: Option<(&'a [u8], u32)>,
}

impl SimpleCycles<'_> {
    fn run(&self, visit: &mut dyn FnMut(CycleWitness) -> bool) {
        for start in 0..self.g.node_count {
            // Loops first, each once.
            for (e, &(a, b)) in self.g.edges.iter().enumerate() {
                if a == start && b == start && self.fits(1, self.weight(e)) {
                    let w = Walk {
                        start,
                        steps: vec![Step {
                            edge: e,
                            forward: true,
                        }],
                    };
                    if !visit(self.witness(&w)) {
                        return;
                    }
                }
            }
            let mut on_path = vec![false; self.g.node_count];
            on_path[start] = true;
            let mut steps = Vec::new();
            if !self.extend(start, start, &mut on_path, &mut steps, 0, visit) {
                return;
            }
        }
    }

    fn weight(&self, e: usize) -> u32 {
        self.weights.map_or(0, |(w, _)| u32::from(w[e]))
    }

    fn fits(&self, len: usize, weight: u32) -> bool {
        len <= self.max_len && self.weights.is_none_or(|(_, bound)| weight <= bound)
    }

    fn witness(&self, w: &Walk) -> CycleWitness {
        let c = CycleWitness::classify(self.g, w);
        match self.weights {
            Some((weights, _)) => c.with_weights(weights),
            None => c,
        }
    }

    fn extend(
        &self,
        start: usize,
        at: usize,
        on_path: &mut [bool],
        steps: &mut Vec<Step>,
        weight: u32,
        visit: &mut dyn FnMut(CycleWitness) -> bool,
    ) -> bool {
        for &(e, next) in &self.adj[at] {
            let (a, _) = self.g.edges[e];
            if next == at {
                continue;
            }
            let step = Step {
                edge: e,
                forward: a == at,
            };
            let w = weight + self.weight(e);
            if !self.fits(steps.len() + 1, w) {
                continue;
            }
            if next == start {
                // Each cycle is met in both directions; keep the one whose
                // first edge has the smaller index.
                if steps.is_empty() || steps[0].edge == e || steps[0].edge > e {
                    continue;
                }
                steps.push(step);
                let keep_going = visit(self.witness(&Walk {
                    start,
                    steps: steps.clone(),
                }));
                steps.pop();
                if !keep_going {
                    return false;
                }
            } else if next > start && !on_path[next] {
                on_path[next] = true;
                steps.push(step);
                let keep_going = self.extend(start, next, on_path, steps, w, visit);
                steps.pop();
                on_path[next] = false;
                if !keep_going {
                    return false;
                }
            }
        }
        true
    }
}

fn searcher<'a>(
    g: &'a Multigraph,
    max_len: usize,
    weights: Option<(&'a [u8], u32)>,
) -> SimpleCycles<'a> {
    let mut adj = vec![Vec::new(); g.node_count];
    for (e, &(a, b)) in g.edges.iter().enumerate() {
        adj[a].push((e, b));
        if a != b {
            adj[b].push((e, a));
        }
    }
    SimpleCycles {
        g,
        adj,
        max_len,
        weights,
    }
}

/// Every simple cycle with at most `max_len` edges, including loops and
/// parallel pairs, once each up to rotation and reflection.
pub fn enumerate_simple_cycles(g: &Multigraph, max_len: usize) -> Vec<CycleWitness> {
    let mut out = Vec::new();
    searcher(g, max_len, None).run(&mut |c| {
        out.push(c);
        true
    });
    out
}

/// The first simple cycle in enumeration order.
pub fn find_simple_cycle(g: &Multigraph, max_len: usize) -> Option<CycleWitness> {
    let mut found = None;
    searcher(g, max_len, None).run(&mut |c| {
        found = Some(c);
        false
    });
    found
}

/// Simple cycles whose total weight is at most `max_total`.
pub fn light_simple_cycles(g: &Multigraph, weights: &[u8], max_total: u32) -> Vec<CycleWitness> {
    let mut out = Vec::new();
    searcher(g, g.edges.len(), Some((weights, max_total))).run(&mut |c| {
        out.push(c);
        true
    });
    out
}

/// The first simple cycle of total weight at most `max_total`.
pub fn find_light_simple_cycle(
    g: &Multigraph,
    weights: &[u8],
    max_total: u32,
) -> Option<CycleWitness> {
    let mut found = None;
    searcher(g, g.edges.len(), Some((weights, max_total))).run(&mut |c| {
        found = Some(c);
        false
    });
    found
}

/// Edge sets of simple cycles found by testing every edge subset: nonempty,
/// connected, every touched node of degree exactly 2 (a loop counts twice).
/// Sorted ascending.
pub fn edge_subset_cycles(g: &Multigraph, cap: usize) -> Result<Vec<Vec<usize>>, OracleError> {
    let m = g.edges.len();
    if m > cap {
        return Err(OracleError::CapExceeded { size: m, cap });
    }
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << m) {
        let chosen: Vec<usize> = (0..m).filter(|&e| mask >> e & 1 == 1).collect();
        let mut degree = vec![0usize; g.node_count];
        for &e in &chosen {
            let (a, b) = g.edges[e];
            degree[a] += 1;
            degree[b] += 1;
        }
        if degree.iter().any(|&d| d != 0 && d != 2) {
            continue;
        }
        // Connectivity by flooding over the chosen edges.
        let first = g.edges[chosen[0]].0;
        let mut seen = vec![false; g.node_count];
        seen[first] = true;
        let mut queue = VecDeque::from([first]);
        while let Some(v) = queue.pop_front() {
            for &e in &chosen {
                let (a, b) = g.edges[e];
                for (x, y) in [(a, b), (b, a)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        if (0..g.node_count).all(|v| degree[v] == 0 || seen[v]) {
            out.push(chosen);
        }
    }
    out.sort();
    Ok(out)
}

/// A homology-reduced closed walk of length at most `max_len` that uses an
/// edge outside `avoid`.
///
/// Such a walk exists iff some edge `e = uv` outside `avoid` has a path from
/// `v` back to `u` not using `e`: a walk that crosses `e` only one way must
/// return by another route, and conversely `e` plus the path is a simple
/// cycle, which is homology reduced. The shortest such path is found by
/// breadth-first search, so the length bound is exact.
pub fn homology_reduced_cycle_search(
    g: &Multigraph,
    avoid: &[bool],
    max_len: usize,
) -> Option<CycleWitness> {
    for (e, &(u, v)) in g.edges.iter().enumerate() {
        if avoid[e] {
            continue;
        }
        let walk = if u == v {
            Walk {
                start: u,
                steps: vec![Step {
                    edge: e,
                    forward: true,
                }],
            }
        } else {
            let mut prev: Vec<Option<(usize, usize)>> = vec![None; g.node_count];
            let mut seen = vec![false; g.node_count];
            seen[v] = true;
            let mut queue = VecDeque::from([v]);
            while let Some(x) = queue.pop_front() {
                for (f, &(a, b)) in g.edges.iter().enumerate() {
                    if f == e {
                        continue;
                    }
                    for (p, q) in [(a, b), (b, a)] {
                        if p == x && !seen[q] {
                            seen[q] = true;
                            prev[q] = Some((f, p));
                            queue.push_back(q);
                        }
                    }
                }
            }
            if !seen[u] {
                continue;
            }
            let mut back = Vec::new();
            let mut at = u;
            while at != v {
                let (f, p) = prev[at].expect("reached nodes have a predecessor");
                back.push(Step {
                    edge: f,
                    forward: g.edges[f].0 == p,
                });
                at = p;
            }
            back.reverse();
            let mut steps = vec![Step {
                edge: e,
                forward: true,
            }];
            steps.extend(back);
            Walk { start: u, steps }
        };
        if walk.steps.len() <= max_len {
            return Some(CycleWitness::classify(g, &walk));
        }
    }
    None
}

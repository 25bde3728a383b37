//! Undirected multigraphs with loops, as used for links.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::log_model::UnionFind;

/// An undirected multigraph. Loops and parallel edges are kept.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Multigraph {
    pub node_count: usize,
    pub edges: Vec<(usize, usize)>,
}

/// One traversal of an edge; `forward` means from `edges[edge].0` to `.1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub edge: usize,
    pub forward: bool,
}

/// A closed walk starting and ending at `start`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Walk {
    pub start: usize,
    pub steps: Vec<Step>,
}

impl Walk {
    /// Node sequence, closing back at `start`.
    pub fn nodes(&self, g: &Multigraph) -> Vec<usize> {
        let mut out = vec![self.start];
        for s in &self.steps {
            let (a, b) = g.edges[s.edge];
            out.push(if s.forward { b } else { a });
        }
        out
    }

    pub fn edges(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.edge).collect()
    }

    /// True when consecutive steps join up and the walk returns to its start.
    pub fn is_closed_walk(&self, g: &Multigraph) -> bool {
        let mut at = self.start;
        for s in &self.steps {
            let Some(&(a, b)) = g.edges.get(s.edge) else {
                return false;
            };
            let (from, to) = if s.forward { (a, b) } else { (b, a) };
            if from != at {
                return false;
            }
            at = to;
        }
        !self.steps.is_empty() && at == self.start
    }

    /// Builds the closed walk `edge` followed by `path` back to the start of `edge`.
    fn close(g: &Multigraph, edge: usize, from: usize, path: &[usize]) -> Walk {
        let (a, b) = g.edges[edge];
        let forward = a == from;
        let mut steps = vec![Step { edge, forward }];
        let mut at = if forward { b } else { a };
        for &e in path {
            let (a, b) = g.edges[e];
            let forward = a == at;
            at = if forward { b } else { a };
            steps.push(Step { edge: e, forward });
        }
        debug_assert_eq!(at, from);
        Walk { start: from, steps }
    }
}

impl Multigraph {
    pub fn new(node_count: usize) -> Self {
        Multigraph {
            node_count,
            edges: Vec::new(),
        }
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> usize {
        assert!(a < self.node_count && b < self.node_count);
        self.edges.push((a, b));
        self.edges.len() - 1
    }

    /// Per node: `(neighbour, edge)` pairs. A loop appears once.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.node_count];
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            adj[a].push((b, i));
            if a != b {
                adj[b].push((a, i));
            }
        }
        adj
    }

    /// Breadth-first path from `from` to `to` over edges accepted by `allowed`.
    /// Returns the edge sequence; empty when `from == to`.
    pub fn path_between(
        &self,
        from: usize,
        to: usize,
        allowed: impl Fn(usize) -> bool,
    ) -> Option<Vec<usize>> {
        let adj = self.adjacency();
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; self.node_count];
        let mut seen = vec![false; self.node_count];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            if u == to {
                break;
            }
            for &(w, e) in &adj[u] {
                if !seen[w] && allowed(e) {
                    seen[w] = true;
                    prev[w] = Some((u, e));
                    queue.push_back(w);
                }
            }
        }
        if !seen[to] {
            return None;
        }
        let mut path = Vec::new();
        let mut at = to;
        while let Some((p, e)) = prev[at] {
            path.push(e);
            at = p;
        }
        path.reverse();
        Some(path)
    }

    /// A simple cycle if one exists: a loop, a parallel pair, or a longer cycle.
    pub fn find_cycle(&self) -> Option<Walk> {
        self.find_cycle_among(|_| true)
    }

    /// As [`find_cycle`](Self::find_cycle) on the subgraph of accepted edges.
    pub fn find_cycle_among(&self, keep: impl Fn(usize) -> bool) -> Option<Walk> {
        let mut uf = UnionFind::new(self.node_count);
        let mut tree = vec![false; self.edges.len()];
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if !keep(i) {
                continue;
            }
            if a == b {
                return Some(Walk {
                    start: a,
                    steps: vec![Step {
                        edge: i,
                        forward: true,
                    }],
                });
            }
            if uf.union(a, b) {
                tree[i] = true;
            } else {
                let path = self
                    .path_between(b, a, |e| tree[e])
                    .expect("joined nodes are connected");
                return Some(Walk::close(self, i, a, &path));
            }
        }
        None
    }

    pub fn is_forest(&self) -> bool {
        self.find_cycle().is_none()
    }

    /// Marks every bridge; loops are never bridges.
    pub fn bridges(&self) -> Vec<bool> {
        self.bridges_among(|_| true)
    }

    /// Bridges of the subgraph of accepted edges (lowlink, iterative).
    pub fn bridges_among(&self, keep: impl Fn(usize) -> bool) -> Vec<bool> {
        let mut adj = vec![Vec::new(); self.node_count];
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if keep(i) && a != b {
                adj[a].push((b, i));
                adj[b].push((a, i));
            }
        }
        let mut is_bridge = vec![false; self.edges.len()];
        let mut disc = vec![usize::MAX; self.node_count];
        let mut low = vec![0usize; self.node_count];
        let mut time = 0;
        for root in 0..self.node_count {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = time;
            low[root] = time;
            time += 1;
            // (node, edge used to enter it, next adjacency position)
            let mut stack = vec![(root, usize::MAX, 0usize)];
            while let Some(&mut (u, via, ref mut pos)) = stack.last_mut() {
                if let Some(&(w, e)) = adj[u].get(*pos) {
                    *pos += 1;
                    if e == via {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        disc[w] = time;
                        low[w] = time;
                        time += 1;
                        stack.push((w, e, 0));
                    } else {
                        low[u] = low[u].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _, _)) = stack.last() {
                        low[p] = low[p].min(low[u]);
                        if low[u] > disc[p] {
                            is_bridge[via] = true;
                        }
                    }
                }
            }
        }
        is_bridge
    }

    /// A simple cycle through `edge` within the accepted edges, if `edge` is
    /// not a bridge there.
    pub fn cycle_through(&self, edge: usize, keep: impl Fn(usize) -> bool) -> Option<Walk> {
        let (a, b) = self.edges[edge];
        if a == b {
            return Some(Walk {
                start: a,
                steps: vec![Step {
                    edge,
                    forward: true,
                }],
            });
        }
        let path = self.path_between(b, a, |e| e != edge && keep(e))?;
        Some(Walk::close(self, edge, a, &path))
    }

    /// Closed walk made of `edge` and an accepted path back, if one exists.
    pub fn close_with_path(&self, edge: usize, keep: impl Fn(usize) -> bool) -> Option<Walk> {
        self.cycle_through(edge, keep)
    }

    /// Component label per node over the accepted edges.
    pub fn component_labels(&self, keep: impl Fn(usize) -> bool) -> Vec<usize> {
        let mut uf = UnionFind::new(self.node_count);
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if keep(i) {
                uf.union(a, b);
            }
        }
        (0..self.node_count).map(|v| uf.find(v)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Multigraph {
        let mut g = Multigraph::new(n);
        for &(a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    #[test]
    fn loops_and_parallel_pairs_are_cycles() {
        let g = graph(2, &[(0, 0)]);
        let c = g.find_cycle().unwrap();
        assert_eq!(c.edges(), vec![0]);
        assert!(c.is_closed_walk(&g));

        let g = graph(2, &[(0, 1), (1, 0)]);
        let c = g.find_cycle().unwrap();
        assert_eq!(c.edges(), vec![1, 0]);
        assert!(c.is_closed_walk(&g));

        assert!(graph(3, &[(0, 1), (1, 2)]).is_forest());
    }

    #[test]
    fn bridges_in_a_barbell() {
        // two triangles joined by edge 3
        let g = graph(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)]);
        let b = g.bridges();
        assert_eq!(b, vec![false, false, false, true, false, false, false]);
        let g = graph(2, &[(0, 1), (0, 1)]);
        assert_eq!(g.bridges(), vec![false, false]);
        let g = graph(2, &[(0, 1), (1, 1)]);
        assert_eq!(g.bridges(), vec![true, false]);
    }

    fn arb_graph() -> impl Strategy<Value = Multigraph> {
        (1usize..8).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n), 0..12).prop_map(move |e| graph(n, &e))
        })
    }

    proptest! {
        #[test]
        fn bridges_match_removal(g in arb_graph()) {
            let bridges = g.bridges();
            for e in 0..g.edges.len() {
                let before = g.component_labels(|_| true);
                let after = g.component_labels(|f| f != e);
                let (a, b) = g.edges[e];
                let splits = before[a] == before[b] && after[a] != after[b];
                prop_assert_eq!(bridges[e], splits);
            }
        }

        #[test]
        fn cycle_witness_is_simple_and_closed(g in arb_graph()) {
            if let Some(c) = g.find_cycle() {
                prop_assert!(c.is_closed_walk(&g));
                let nodes = c.nodes(&g);
                let mut inner = nodes[..nodes.len() - 1].to_vec();
                inner.sort_unstable();
                inner.dedup();
                prop_assert_eq!(inner.len(), c.steps.len());
            } else {
                prop_assert_eq!(g.edges.len() + g.component_labels(|_| true).iter().enumerate().filter(|(i, r)| i == *r).count(), g.node_count);
            }
        }
    }
}

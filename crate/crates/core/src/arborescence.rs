//! Disjoint branchings in a selection graph.
//!
//! A branching rooted at `r` is a spanning arborescence: every vertex other
//! than `r` has exactly one incoming arc and is reachable from `r`. Edmonds'
//! theorem says `k` arc-disjoint branchings exist iff every nonempty
//! `S ⊆ V ∖ {r}` is entered by at least `k` arcs.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::selection::SelectionGraph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Branching {
    pub root: usize,
    /// Arc indices, ascending.
    pub arcs: Vec<usize>,
}

/// A vertex set avoiding the root, entered by `delta` arcs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutWitness {
    /// Vertex indices, ascending.
    pub set: Vec<usize>,
    pub delta: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdmondsCheck {
    pub holds: bool,
    /// A minimum cut when the condition fails.
    pub cut: Option<CutWitness>,
}

/// Number of arcs entering `set` from outside.
pub fn in_cut(sel: &SelectionGraph, set: &[bool]) -> usize {
    sel.arcs()
        .iter()
        .filter(|a| set[a.to] && !set[a.from])
        .count()
}

/// Unit-capacity flow network over the arcs of a selection graph, with some
/// arcs optionally removed.
struct Flow<'a> {
    sel: &'a SelectionGraph,
    /// Per vertex: arc indices leaving it and entering it.
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
    alive: Vec<bool>,
}

impl<'a> Flow<'a> {
    fn new(sel: &'a SelectionGraph, alive: Vec<bool>) -> Self {
        let n = sel.node_count();
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for (i, a) in sel.arcs().iter().enumerate() {
            if a.from != a.to {
                out[a.from].push(i);
                inc[a.to].push(i);
            }
        }
        Flow {
            sel,
            out,
            inc,
            alive,
        }
    }

    /// Vertices reachable from `root` in the residual graph of `used`.
    fn residual_reach(
        &self,
        root: usize,
        used: &[bool],
    ) -> (Vec<bool>, Vec<Option<(usize, bool)>>) {
        let n = self.sel.node_count();
        let mut seen = vec![false; n];
        let mut prev = vec![None; n];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &i in &self.out[u] {
                let w = self.sel.arcs()[i].to;
                if self.alive[i] && !used[i] && !seen[w] {
                    seen[w] = true;
                    prev[w] = Some((i, true));
                    queue.push_back(w);
                }
            }
            for &i in &self.inc[u] {
                let w = self.sel.arcs()[i].from;
                if used[i] && !seen[w] {
                    seen[w] = true;
                    prev[w] = Some((i, false));
                    queue.push_back(w);
                }
            }
        }
        (seen, prev)
    }

    /// Max flow from `root` to `sink`, stopping at `cap`. Returns the value
    /// and the root side of a minimum cut when the value is below `cap`.
    fn max_flow(&self, root: usize, sink: usize, cap: usize) -> (usize, Option<Vec<bool>>) {
        let mut used = vec![false; self.sel.arcs().len()];
        let mut value = 0;
        while value < cap {
            let (seen, prev) = self.residual_reach(root, &used);
            if !seen[sink] {
                return (value, Some(seen));
            }
            let mut at = sink;
            while let Some((i, forward)) = prev[at] {
                used[i] = forward;
                let a = self.sel.arcs()[i];
                at = if forward { a.from } else { a.to };
            }
            value += 1;
        }
        (value, None)
    }

    /// Minimum cut of value below `k` over all sinks, ties to the first sink.
    fn weakest_cut(&self, root: usize, k: usize) -> Option<CutWitness> {
        let mut best: Option<CutWitness> = None;
        for sink in (0..self.sel.node_count()).filter(|&v| v != root) {
            if let (value, Some(reach)) = self.max_flow(root, sink, k) {
                if best.as_ref().is_none_or(|b| value < b.delta) {
                    let set = (0..reach.len()).filter(|&v| !reach[v]).collect();
                    best = Some(CutWitness { set, delta: value });
                }
            }
        }
        best
    }
}

/// Edmonds' condition `δ(S) ≥ n` for all nonempty `S ⊆ V ∖ {root}`, decided
/// by unit-capacity max-flow from the root to every other vertex.
pub fn edmonds_condition(sel: &SelectionGraph, root: usize, n: usize) -> EdmondsCheck {
    let flow = Flow::new(sel, vec![true; sel.arcs().len()]);
    let cut = flow.weakest_cut(root, n);
    EdmondsCheck {
        holds: cut.is_none(),
        cut,
    }
}

/// Breadth-first arborescence over the alive arcs, scanning arcs in index
/// order. `None` if some vertex is unreachable.
fn bfs_branching(sel: &SelectionGraph, root: usize, alive: &[bool]) -> Option<Branching> {
    let n = sel.node_count();
    let mut seen = vec![false; n];
    seen[root] = true;
    let mut arcs = Vec::new();
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for (i, a) in sel.arcs().iter().enumerate() {
            if alive[i] && a.from == u && !seen[a.to] {
                seen[a.to] = true;
                arcs.push(i);
                queue.push_back(a.to);
            }
        }
    }
    arcs.sort_unstable();
    seen.iter().all(|&s| s).then_some(Branching { root, arcs })
}

fn spans(sel: &SelectionGraph, root: usize, alive: &[bool]) -> bool {
    bfs_branching(sel, root, alive).is_some()
}

/// Two arc-disjoint branchings rooted at `root`, or a cut with `δ < 2`.
///
/// The first branching is grown one arc at a time, taking the first arc in
/// `(owner, kind)` order that leaves the current tree and whose removal still
/// leaves every vertex reachable from the root. The second is a
/// breadth-first branching on the arcs left over.
pub fn two_disjoint_branchings(
    sel: &SelectionGraph,
    root: usize,
) -> Result<(Branching, Branching), CutWitness> {
    let check = edmonds_condition(sel, root, 2);
    if let Some(cut) = check.cut {
        return Err(cut);
    }
    let n = sel.node_count();
    let mut alive = vec![true; sel.arcs().len()];
    let mut in_tree = vec![false; n];
    in_tree[root] = true;
    let mut first = Vec::new();
    for _ in 1..n {
        let next = (0..sel.arcs().len()).find(|&i| {
            let a = sel.arcs()[i];
            if !alive[i] || !in_tree[a.from] || in_tree[a.to] {
                return false;
            }
            alive[i] = false;
            let ok = spans(sel, root, &alive);
            alive[i] = true;
            ok
        });
        let i = next.expect("the greedy step always finds an arc when the cut condition holds");
        alive[i] = false;
        in_tree[sel.arcs()[i].to] = true;
        first.push(i);
    }
    first.sort_unstable();
    let second = bfs_branching(sel, root, &alive).expect("the remaining arcs still span");
    Ok((Branching { root, arcs: first }, second))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum BranchingViolation {
    UnknownArc {
        arc: usize,
    },
    ArcIntoRoot {
        arc: usize,
    },
    /// A vertex with two or more incoming arcs.
    ExtraArc {
        vertex: usize,
    },
    /// A vertex with no incoming arc.
    MissingArc {
        vertex: usize,
    },
    /// A vertex not reachable from the root, which then lies on a cycle.
    Unreachable {
        vertex: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchingCheck {
    pub holds: bool,
    pub violation: Option<BranchingViolation>,
}

pub fn verify_branching(sel: &SelectionGraph, b: &Branching) -> BranchingCheck {
    let violation = branching_violation(sel, b);
    BranchingCheck {
        holds: violation.is_none(),
        violation,
    }
}

fn branching_violation(sel: &SelectionGraph, b: &Branching) -> Option<BranchingViolation> {
    let n = sel.node_count();
    let mut indeg = vec![0usize; n];
    let mut alive = vec![false; sel.arcs().len()];
    for &i in &b.arcs {
        let Some(a) = sel.arcs().get(i) else {
            return Some(BranchingViolation::UnknownArc { arc: i });
        };
        if a.to == b.root {
            return Some(BranchingViolation::ArcIntoRoot { arc: i });
        }
        indeg[a.to] += 1;
        alive[i] = true;
    }
    if let Some(vertex) = (0..n).find(|&v| indeg[v] > 1) {
        return Some(BranchingViolation::ExtraArc { vertex });
    }
    if let Some(vertex) = (0..n).find(|&v| v != b.root && indeg[v] == 0) {
        return Some(BranchingViolation::MissingArc { vertex });
    }
    let mut seen = vec![false; n];
    seen[b.root] = true;
    let mut queue = VecDeque::from([b.root]);
    while let Some(u) = queue.pop_front() {
        for (i, a) in sel.arcs().iter().enumerate() {
            if alive[i] && a.from == u && !seen[a.to] {
                seen[a.to] = true;
                queue.push_back(a.to);
            }
        }
    }
    (0..n)
        .find(|&v| !seen[v])
        .map(|vertex| BranchingViolation::Unreachable { vertex })
}

//! Exhaustive searches over sign choices, branchings and vertex subsets.

use super::OracleError;
use crate::arborescence::Branching;
use crate::link_complex::{build_link, Sign, SignAssignment};
use crate::log_model::{Log, UnionFind};
use crate::selection::SelectionGraph;

pub const DEFAULT_LBF_CAP: usize = 16;
pub const DEFAULT_BRANCHING_CAP: usize = 20;
pub const DEFAULT_SUBGRAPH_CAP: usize = 16;

fn check_cap(size: usize, cap: usize) -> Result<(), OracleError> {
    if size > cap {
        return Err(OracleError::CapExceeded { size, cap });
    }
    Ok(())
}

/// Every ε for which Λ(ε(X)) and Λ(−ε(X)) are forests, in binary order with
/// bit `i` set meaning vertex `i` is negative.
///
/// Forests are recognized by union-find: a corner whose ends are already
/// joined closes a cycle.
pub fn exhaustive_lbf_search(log: &Log, cap: usize) -> Result<Vec<SignAssignment>, OracleError> {
    let n = log.vertex_count();
    check_cap(n, cap)?;
    let corners: Vec<(usize, usize)> = build_link(log)
        .corners()
        .map(|c| (c.ends.0.node(), c.ends.1.node()))
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << n) {
        let signs: Vec<Sign> = (0..n)
            .map(|v| {
                if mask >> v & 1 == 1 {
                    Sign::Minus
                } else {
                    Sign::Plus
                }
            })
            .collect();
        // Node 2v is v⁺ and 2v + 1 is v⁻; `side[node]` says which half it is in.
        let side = |node: usize| {
            let plus = node.is_multiple_of(2);
            plus == (signs[node / 2] == Sign::Plus)
        };
        let mut uf = UnionFind::new(2 * n);
        let acyclic = corners
            .iter()
            .all(|&(a, b)| side(a) != side(b) || uf.union(a, b));
        if acyclic {
            out.push(SignAssignment::new(signs));
        }
    }
    Ok(out)
}

/// All branchings rooted at `root`, as ascending arc lists in lexicographic
/// order. Each non-root vertex picks one incoming arc; a pick is kept when
/// every vertex is reached from the root.
pub fn all_branchings(
    sel: &SelectionGraph,
    root: usize,
    cap: usize,
) -> Result<Vec<Vec<usize>>, OracleError> {
    check_cap(sel.arcs().len(), cap)?;
    let n = sel.node_count();
    let incoming: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            (0..sel.arcs().len())
                .filter(|&i| sel.arcs()[i].to == v)
                .collect()
        })
        .collect();
    if sel.arcs().iter().any(|a| a.from >= n) || (0..n).any(|v| v != root && incoming[v].is_empty())
    {
        return Ok(Vec::new());
    }
    let others: Vec<usize> = (0..n).filter(|&v| v != root).collect();
    let mut choice = vec![0usize; others.len()];
    let mut out = Vec::new();
    loop {
        let parent: Vec<Option<usize>> = {
            let mut p = vec![None; n];
            for (k, &v) in others.iter().enumerate() {
                p[v] = Some(incoming[v][choice[k]]);
            }
            p
        };
        // Every vertex must reach the root by following parents without looping.
        let reaches = others.iter().all(|&v| {
            let mut at = v;
            for _ in 0..n {
                if at == root {
                    return true;
                }
                at = sel.arcs()[parent[at].expect("non-root vertices have a parent")].from;
            }
            at == root
        });
        if reaches {
            let mut arcs: Vec<usize> = parent.iter().flatten().copied().collect();
            arcs.sort_unstable();
            out.push(arcs);
        }
        // Odometer step.
        let mut k = 0;
        loop {
            if k == others.len() {
                out.sort();
                return Ok(out);
            }
            choice[k] += 1;
            if choice[k] < incoming[others[k]].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// Some pair of arc-disjoint branchings rooted at `root`, the first in
/// lexicographic order, or `None`.
pub fn exhaustive_branching_search(
    sel: &SelectionGraph,
    root: usize,
    cap: usize,
) -> Result<Option<(Branching, Branching)>, OracleError> {
    let all = all_branchings(sel, root, cap)?;
    for (i, a) in all.iter().enumerate() {
        for b in &all[i..] {
            if a.iter().all(|x| b.binary_search(x).is_err()) {
                return Ok(Some((
                    Branching {
                        root,
                        arcs: a.clone(),
                    },
                    Branching {
                        root,
                        arcs: b.clone(),
                    },
                )));
            }
        }
    }
    Ok(None)
}

/// A vertex set `U` of the selection graph spanning at least `2|U| − 1`
/// arcs, searched over all nonempty subsets.
pub fn dense_subgraph_search(
    sel: &SelectionGraph,
    cap: usize,
) -> Result<Option<Vec<usize>>, OracleError> {
    let n = sel.node_count();
    check_cap(n, cap)?;
    for mask in 1u64..(1u64 << n) {
        let inside = |v: usize| mask >> v & 1 == 1;
        let size = mask.count_ones() as usize;
        let arcs = sel
            .arcs()
            .iter()
            .filter(|a| inside(a.from) && inside(a.to))
            .count();
        if arcs + 1 >= 2 * size {
            return Ok(Some((0..n).filter(|&v| inside(v)).collect()));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arborescence::{two_disjoint_branchings, verify_branching};
    use crate::certify::lbf_check;
    use crate::log_model::fixtures::*;
    use crate::selection::build_selection_graph;

    #[test]
    fn lbf_search_examples() {
        let found = exhaustive_lbf_search(&vee(), DEFAULT_LBF_CAP).unwrap();
        let as_strings: Vec<String> = found
            .iter()
            .map(|e| e.signs().iter().map(|s| s.symbol()).collect())
            .collect();
        assert_eq!(as_strings, ["-++", "--+", "++-", "+--"]);
        assert_eq!(
            exhaustive_lbf_search(&triv(), DEFAULT_LBF_CAP)
                .unwrap()
                .len(),
            2
        );
        // x → y labeled x twice: both Λ(ε) halves see a parallel pair.
        let doubled =
            Log::new(&["x", "y"], &[("e1", "x", "y", "x"), ("e2", "x", "y", "x")]).unwrap();
        assert!(exhaustive_lbf_search(&doubled, DEFAULT_LBF_CAP)
            .unwrap()
            .is_empty());
        for eps in found {
            assert!(lbf_check(&vee(), &eps).unwrap().holds);
        }
    }

    #[test]
    fn lbf_search_is_capped() {
        assert_eq!(
            exhaustive_lbf_search(&sub(), 5),
            Err(OracleError::CapExceeded { size: 6, cap: 5 })
        );
    }

    #[test]
    fn branching_search_examples() {
        let vee = vee();
        let sel = build_selection_graph(&vee);
        let y = vee.vertex_index("y").unwrap();
        let (a, b) = exhaustive_branching_search(&sel, y, DEFAULT_BRANCHING_CAP)
            .unwrap()
            .unwrap();
        assert!(verify_branching(&sel, &a).holds && verify_branching(&sel, &b).holds);
        assert_eq!((a.arcs, b.arcs), (vec![0, 3], vec![1, 2]));

        let triv_sel = build_selection_graph(&triv());
        let (a, b) = exhaustive_branching_search(&triv_sel, 0, DEFAULT_BRANCHING_CAP)
            .unwrap()
            .unwrap();
        assert!(a.arcs.is_empty() && b.arcs.is_empty());

        let sub = sub();
        let sub_sel = build_selection_graph(&sub);
        let root = sub.vertex_index("x6").unwrap();
        assert!(
            exhaustive_branching_search(&sub_sel, root, DEFAULT_BRANCHING_CAP)
                .unwrap()
                .is_none()
        );
        assert!(two_disjoint_branchings(&sub_sel, root).is_err());
    }

    #[test]
    fn density_examples() {
        assert_eq!(
            dense_subgraph_search(&build_selection_graph(&vee()), DEFAULT_SUBGRAPH_CAP).unwrap(),
            None
        );
        // {x1, x2, x5} spans 5 arcs in the selection graph of the bad fixture.
        let sub = sub();
        let dense = dense_subgraph_search(&build_selection_graph(&sub), DEFAULT_SUBGRAPH_CAP)
            .unwrap()
            .unwrap();
        let names: Vec<&str> = dense.iter().map(|&v| sub.vertex_name(v)).collect();
        assert_eq!(names, ["x1", "x2", "x5"]);
    }
}

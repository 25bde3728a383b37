//! Reduction moves: compression, interior folds and boundary reductions.
//!
//! Moves are applied with priority compression > fold > boundary, each
//! scanning edges in declaration order. When two vertices are identified the
//! one declared first survives.

use serde::{Deserialize, Serialize};

use super::{boundary_defects, Edge, Log, LogError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum Move {
    /// Deletes `edge`, whose label is one of its endpoints, and identifies
    /// its endpoints (`merged` into `into`; equal for a loop).
    Compress {
        edge: String,
        merged: String,
        into: String,
    },
    /// Deletes `removed`, which shares its label and its `end` vertex with
    /// `kept`, and identifies the opposite endpoints.
    Fold {
        kept: String,
        removed: String,
        end: String,
        merged: String,
        into: String,
    },
    /// Deletes a valency-1 vertex that labels no edge, together with its edge.
    BoundaryReduce { vertex: String, edge: String },
}

impl std::fmt::Display for Move {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Move::Compress { edge, merged, into } => {
                write!(f, "compress {edge} ({merged} into {into})")
            }
            Move::Fold {
                kept,
                removed,
                end,
                merged,
                into,
            } => {
                write!(
                    f,
                    "fold {removed} onto {kept} at {end} ({merged} into {into})"
                )
            }
            Move::BoundaryReduce { vertex, edge } => {
                write!(f, "boundary-reduce {vertex} with {edge}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub log: Log,
    pub moves: Vec<Move>,
}

fn remove_edge(log: &mut Log, e: usize) {
    log.edges.remove(e);
}

/// Identifies `merged` with `into`, keeping the name of `into`.
fn merge(log: &mut Log, merged: usize, into: usize) {
    if merged == into {
        return;
    }
    let fix = |v: usize| {
        let v = if v == merged { into } else { v };
        if v > merged {
            v - 1
        } else {
            v
        }
    };
    for Edge {
        source,
        target,
        label,
        ..
    } in log.edges.iter_mut()
    {
        *source = fix(*source);
        *target = fix(*target);
        *label = fix(*label);
    }
    log.vertices.remove(merged);
}

fn remove_isolated_vertex(log: &mut Log, v: usize) {
    debug_assert!(log
        .edges
        .iter()
        .all(|e| e.source != v && e.target != v && e.label != v));
    for e in log.edges.iter_mut() {
        for x in [&mut e.source, &mut e.target, &mut e.label] {
            if *x > v {
                *x -= 1;
            }
        }
    }
    log.vertices.remove(v);
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    (a.max(b), a.min(b))
}

fn next_move(log: &Log) -> Option<Move> {
    let name = |v: usize| log.vertex_name(v).to_string();
    let edges = log.edges();

    if let Some(e) = edges
        .iter()
        .find(|e| e.label == e.source || e.label == e.target)
    {
        let (merged, into) = ordered(e.source, e.target);
        return Some(Move::Compress {
            edge: e.id.clone(),
            merged: name(merged),
            into: name(into),
        });
    }

    for (i, e) in edges.iter().enumerate() {
        for f in &edges[i + 1..] {
            if e.label != f.label {
                continue;
            }
            let fold = if e.source == f.source {
                Some(("source", e.target, f.target))
            } else if e.target == f.target {
                Some(("target", e.source, f.source))
            } else {
                None
            };
            if let Some((end, a, b)) = fold {
                let (merged, into) = ordered(a, b);
                return Some(Move::Fold {
                    kept: e.id.clone(),
                    removed: f.id.clone(),
                    end: end.into(),
                    merged: name(merged),
                    into: name(into),
                });
            }
        }
    }

    let defects = boundary_defects(log);
    for e in edges {
        for v in [e.source, e.target] {
            if defects.contains(&v) {
                return Some(Move::BoundaryReduce {
                    vertex: name(v),
                    edge: e.id.clone(),
                });
            }
        }
    }
    None
}

/// Applies a recorded move, checking that it is legal on `log`.
pub fn apply_move(log: &Log, mv: &Move) -> Result<Log, LogError> {
    let bad = || LogError::MoveNotApplicable(mv.to_string());
    let vertex = |n: &str| log.vertex_index(n).ok_or_else(bad);
    let edge = |id: &str| log.edge_index(id).ok_or_else(bad);
    let mut out = log.clone();
    match mv {
        Move::Compress {
            edge: id,
            merged,
            into,
        } => {
            let e = edge(id)?;
            let ed = &log.edges()[e];
            let (m, i) = (vertex(merged)?, vertex(into)?);
            let ends_match =
                (ed.source == m && ed.target == i) || (ed.source == i && ed.target == m);
            if !(ed.label == ed.source || ed.label == ed.target) || !ends_match {
                return Err(bad());
            }
            remove_edge(&mut out, e);
            merge(&mut out, m, i);
        }
        Move::Fold {
            kept,
            removed,
            end,
            merged,
            into,
        } => {
            let (k, r) = (edge(kept)?, edge(removed)?);
            let (ek, er) = (&log.edges()[k], &log.edges()[r]);
            let (m, i) = (vertex(merged)?, vertex(into)?);
            let (shared, others) = match end.as_str() {
                "source" => (ek.source == er.source, (ek.target, er.target)),
                "target" => (ek.target == er.target, (ek.source, er.source)),
                _ => return Err(bad()),
            };
            let pair_ok = others == (m, i) || others == (i, m);
            if k == r || ek.label != er.label || !shared || !pair_ok {
                return Err(bad());
            }
            remove_edge(&mut out, r);
            merge(&mut out, m, i);
        }
        Move::BoundaryReduce {
            vertex: v,
            edge: id,
        } => {
            let (v, e) = (vertex(v)?, edge(id)?);
            let ed = &log.edges()[e];
            if log.valency(v) != 1 || log.is_label(v) || (ed.source != v && ed.target != v) {
                return Err(bad());
            }
            remove_edge(&mut out, e);
            remove_isolated_vertex(&mut out, v);
        }
    }
    Ok(out)
}

/// Applies moves until the log is reduced. Every move lowers `|V| + |E|`.
pub fn reduce(log: &Log) -> Reduction {
    let mut current = log.clone();
    let mut moves = Vec::new();
    while let Some(mv) = next_move(&current) {
        current = apply_move(&current, &mv).expect("generated move applies");
        moves.push(mv);
    }
    Reduction {
        log: current,
        moves,
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::{classify, reducedness_report, LogKind};
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reduced_input_is_fixed() {
        let r = reduce(&vee());
        assert_eq!(r.log, vee());
        assert!(r.moves.is_empty());
    }

    #[test]
    fn compression_identifies_endpoints() {
        let r = reduce(&noncomp());
        assert_eq!(r.log, Log::new(&["x"], &[]).unwrap());
        assert_eq!(
            r.moves,
            vec![Move::Compress {
                edge: "e".into(),
                merged: "y".into(),
                into: "x".into()
            }]
        );
    }

    #[test]
    fn boundary_reduction_drops_leaf() {
        // vee plus a pendant non-label vertex w hanging off z.
        let log = Log::new(
            &["x", "y", "z", "w"],
            &[
                ("e1", "x", "y", "z"),
                ("e2", "z", "y", "x"),
                ("e3", "z", "w", "y"),
            ],
        )
        .unwrap();
        let r = reduce(&log);
        assert_eq!(r.log, vee());
        assert_eq!(
            r.moves,
            vec![Move::BoundaryReduce {
                vertex: "w".into(),
                edge: "e3".into()
            }]
        );
    }

    #[test]
    fn fold_merges_far_ends() {
        let log = Log::new(
            &["v", "a", "b", "w"],
            &[
                ("e", "v", "a", "w"),
                ("f", "v", "b", "w"),
                ("g", "a", "w", "v"),
            ],
        )
        .unwrap();
        let r = reduce(&log);
        assert!(
            matches!(&r.moves[0], Move::Fold { kept, removed, .. } if kept == "e" && removed == "f")
        );
        assert_eq!(classify(&r.log).kind, LogKind::Lot);
    }

    #[test]
    fn illegal_moves_are_rejected() {
        let mv = Move::BoundaryReduce {
            vertex: "y".into(),
            edge: "e1".into(),
        };
        assert!(apply_move(&vee(), &mv).is_err());
        let mv = Move::Compress {
            edge: "e1".into(),
            merged: "y".into(),
            into: "x".into(),
        };
        assert!(apply_move(&vee(), &mv).is_err());
    }

    fn arb_log() -> impl Strategy<Value = Log> {
        (1usize..7).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n, 0..n), 0..9).prop_map(move |edges| {
                let mut log = Log::default();
                for i in 0..n {
                    log.push_vertex(&format!("v{i}")).unwrap();
                }
                for (i, (s, t, l)) in edges.into_iter().enumerate() {
                    log.push_edge(&format!("k{i}"), s, t, l).unwrap();
                }
                log
            })
        })
    }

    fn arb_lof() -> impl Strategy<Value = Log> {
        (1usize..8).prop_flat_map(|n| {
            proptest::collection::vec(
                (
                    any::<bool>(),
                    any::<prop::sample::Index>(),
                    0..n,
                    any::<bool>(),
                ),
                n - 1,
            )
            .prop_map(move |spec| {
                let mut log = Log::default();
                for i in 0..n {
                    log.push_vertex(&format!("v{i}")).unwrap();
                }
                for (i, (keep, parent, label, flip)) in spec.into_iter().enumerate() {
                    if !keep {
                        continue;
                    }
                    let child = i + 1;
                    let p = parent.index(child);
                    let (s, t) = if flip { (child, p) } else { (p, child) };
                    log.push_edge(&format!("k{i}"), s, t, label).unwrap();
                }
                log
            })
        })
    }

    proptest! {
        #[test]
        fn reduce_reaches_reduced_fixed_point(log in arb_log()) {
            let r = reduce(&log);
            prop_assert!(reducedness_report(&r.log).reduced());
            prop_assert!(reduce(&r.log).moves.is_empty());
            let mut replay = log.clone();
            for mv in &r.moves {
                let before = replay.vertex_count() + replay.edge_count();
                replay = apply_move(&replay, mv).unwrap();
                prop_assert!(replay.vertex_count() + replay.edge_count() < before);
            }
            prop_assert_eq!(replay, r.log);
        }

        #[test]
        fn reduce_keeps_forests(log in arb_lof()) {
            let r = reduce(&log);
            prop_assert_ne!(classify(&r.log).kind, LogKind::GeneralLog);
        }
    }
}

//! Bi-forest checks, angle assignments and the certification pipelines.

mod certificate;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::arborescence::two_disjoint_branchings;
use crate::link_complex::{
    build_link, curvature, is_relative_forest, sign_subgraph, verify_coloring_test,
    verify_relative_coloring_test, AngleAssignment, LinkError, LinkGraph, Sign, SignAssignment,
};
use crate::log_model::{
    classify, components, enumerate_sub_lots, non_label_vertices, quotient_lof, reduce,
    reducedness_report, reorient, serialize_log, Log, LogError, LogKind, SubLog,
};
use crate::selection::{
    build_selection_graph, is_admissible, reorientation_from_partition, Color, Partition2,
};

use certificate::citations_for;
pub use certificate::{
    digest, AngleEntry, Basis, Certificate, Flags, GroupWitness, Hypothesis, InputInfo, LbfCheck,
    LinkSide, Mode, NamedCut, PartWitness, PartitionWitness, RelativeWitness, Status,
    SubLotWitness, Verdict, Witnesses, CITATIONS, SCHEMA_VERSION,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error(transparent)]
    Log(#[from] LogError),
    #[error(transparent)]
    Link(#[from] LinkError),
    #[error("part {0} is not a sub-LOT")]
    NotSubLot(usize),
    #[error("parts {0} and {1} share vertex {2}")]
    PartsOverlap(usize, usize, String),
    #[error("explicit parts need a reduced input; reduce it first")]
    PartsOnUnreducedInput,
    #[error("invalid certificate JSON: {0}")]
    Json(String),
    #[error("unsupported certificate schema {0:?}")]
    Schema(Option<u64>),
}

/// Verdict keys used in certificates.
pub mod keys {
    pub const STRONG_LBF: &str = "strong_lbf";
    pub const REORIENTED_STRONG_LBF: &str = "reoriented_strong_lbf";
    pub const LBF: &str = "lbf";
    pub const COLORING_TEST: &str = "coloring_test";
    pub const RELATIVE_LBF: &str = "relative_lbf";
    pub const RELATIVE_COLORING_TEST: &str = "relative_coloring_test";
    pub const DR: &str = "dr_claim";
    pub const ASPHERICAL: &str = "aspherical_claim";
    pub const LOCALLY_INDICABLE: &str = "locally_indicable_claim";
    pub const VA: &str = "va_claim";
}

const SUB_LOT_SCOPE: &str =
    "connected subtrees with at least one edge whose labels lie in the subtree";

fn side(link: &LinkGraph) -> LinkSide {
    LinkSide {
        corners: link
            .indexed_corners()
            .iter()
            .map(|(i, _)| link.corner_ref(*i))
            .collect(),
        cycle: link.find_cycle(),
    }
}

/// Λ⁺ and Λ⁻ are both forests.
pub fn strong_lbf_check(log: &Log) -> LbfCheck {
    lbf_check(
        log,
        &SignAssignment::constant(log.vertex_count(), Sign::Plus),
    )
    .expect("constant signs cover the log")
}

/// Λ(ε(X)) and Λ(−ε(X)) are both forests.
pub fn lbf_check(log: &Log, eps: &SignAssignment) -> Result<LbfCheck, LinkError> {
    let link = build_link(log);
    let side_ = side(&sign_subgraph(&link, eps)?);
    let opposite = side(&sign_subgraph(&link, &eps.negate())?);
    Ok(LbfCheck {
        holds: side_.cycle.is_none() && opposite.cycle.is_none(),
        side: side_,
        opposite,
    })
}

/// Λ(±ε(X)) is a forest relative to the corners of the parts' edges.
pub fn relative_lbf_check(
    log: &Log,
    parts: &[SubLog],
    eps: &SignAssignment,
) -> Result<LbfCheck, LinkError> {
    let owned: BTreeSet<usize> = parts.iter().flat_map(|p| p.edges.iter().copied()).collect();
    let link = build_link(log);
    let relative_side = |eps: &SignAssignment| -> Result<LinkSide, LinkError> {
        let sub = sign_subgraph(&link, eps)?;
        let g = sub.to_multigraph();
        let mask: Vec<bool> = sub
            .indexed_corners()
            .iter()
            .map(|(_, c)| owned.contains(&c.owner))
            .collect();
        let check = is_relative_forest(&g, &mask);
        Ok(LinkSide {
            corners: sub
                .indexed_corners()
                .iter()
                .map(|(i, _)| sub.corner_ref(*i))
                .collect(),
            cycle: check.witness.map(|w| sub.describe_walk(&w, None)),
        })
    };
    let side_ = relative_side(eps)?;
    let opposite = relative_side(&eps.negate())?;
    Ok(LbfCheck {
        holds: side_.cycle.is_none() && opposite.cycle.is_none(),
        side: side_,
        opposite,
    })
}

/// Angle 0 on corners with both ends in ε(X) or both in −ε(X), angle 1
/// elsewhere.
pub fn angles_from_bipartition(
    log: &Log,
    eps: &SignAssignment,
) -> Result<AngleAssignment, LinkError> {
    if eps.len() != log.vertex_count() {
        return Err(LinkError::SignCount {
            expected: log.vertex_count(),
            found: eps.len(),
        });
    }
    let link = build_link(log);
    let angles = link
        .corners()
        .map(|c| {
            let a = c.ends.0.sign == eps.sign(c.ends.0.vertex);
            let b = c.ends.1.sign == eps.sign(c.ends.1.vertex);
            u8::from(a != b)
        })
        .collect();
    AngleAssignment::new(angles)
}

fn angle_entries(log: &Log, angles: &AngleAssignment) -> Vec<AngleEntry> {
    let link = build_link(log);
    (0..angles.len())
        .map(|i| {
            let r = link.corner_ref(i);
            AngleEntry {
                owner: r.owner,
                kind: r.kind,
                angle: angles.angle(i),
            }
        })
        .collect()
}

fn vertex_names(log: &Log, vs: impl IntoIterator<Item = usize>) -> Vec<String> {
    vs.into_iter()
        .map(|v| log.vertex_name(v).to_string())
        .collect()
}

fn edge_ids(log: &Log, es: impl IntoIterator<Item = usize>) -> Vec<String> {
    es.into_iter().map(|e| log.edges()[e].id.clone()).collect()
}

fn boundary_vertex(log: &Log, sub: &SubLog) -> Option<usize> {
    sub.non_label_vertex(log)
}

/// Hypothesis report for the LOF pipeline.
fn hypothesis(log: &Log) -> Hypothesis {
    let class = classify(log);
    let report = reducedness_report(log);
    let forest = class.kind != LogKind::GeneralLog;
    let mut failures = Vec::new();
    if !forest {
        failures.push("not a forest".to_string());
    }
    if !report.reduced() {
        failures.push("not reduced".to_string());
    }
    if !report.injective {
        failures.push("not injective".to_string());
    }
    let mut violating = None;
    let mut sub_lot_cut = None;
    if forest {
        if let Some(bad) = enumerate_sub_lots(log, None)
            .into_iter()
            .find(|s| !s.is_boundary_reduced)
        {
            let x0 = boundary_vertex(log, &bad);
            let sel = build_selection_graph(log);
            let mut set = vec![false; log.vertex_count()];
            for &v in &bad.vertices {
                set[v] = Some(v) != x0;
            }
            sub_lot_cut = Some(NamedCut {
                set: vertex_names(log, (0..set.len()).filter(|&v| set[v])),
                delta: crate::arborescence::in_cut(&sel, &set),
            });
            violating = Some(SubLotWitness {
                vertices: vertex_names(log, bad.vertices.iter().copied()),
                edges: edge_ids(log, bad.edges.iter().copied()),
                boundary_vertex: x0.map(|v| log.vertex_name(v).to_string()),
            });
            failures
                .push("a sub-LOT is not boundary reduced; try the relative pipeline".to_string());
        }
    }
    let mut branching_cut = None;
    if class.kind == LogKind::Lot && report.injective {
        if let [root] = non_label_vertices(log)[..] {
            if let Err(cut) = two_disjoint_branchings(&build_selection_graph(log), root) {
                branching_cut = Some(NamedCut {
                    set: vertex_names(log, cut.set),
                    delta: cut.delta,
                });
            }
        }
    }
    Hypothesis {
        satisfied: failures.is_empty(),
        forest,
        reduced: report.reduced(),
        injective: report.injective,
        sub_lots_boundary_reduced: forest && violating.is_none(),
        sub_lot_scope: SUB_LOT_SCOPE.to_string(),
        violating_sub_lot: violating,
        sub_lot_cut,
        branching_cut,
        failures,
    }
}

/// Outcome of the LOT pipeline on one group: signs over the group's
/// vertices and the reversed edges of the group.
struct GroupOutcome {
    witness: GroupWitness,
    eps: Vec<Sign>,
    flipped: Vec<usize>,
}

/// Splits a LOF into the weak components of "a vertex of C labels an edge of
/// D". Each group is returned as vertex and edge index sets.
fn label_groups(log: &Log) -> Vec<(BTreeSet<usize>, BTreeSet<usize>)> {
    let comps = components(log);
    let mut comp_of = vec![0; log.vertex_count()];
    for (i, c) in comps.iter().enumerate() {
        for &v in c {
            comp_of[v] = i;
        }
    }
    let mut uf = crate::log_model::UnionFind::new(comps.len());
    for e in log.edges() {
        uf.union(comp_of[e.label], comp_of[e.source]);
    }
    let mut groups: BTreeMap<usize, (BTreeSet<usize>, BTreeSet<usize>)> = BTreeMap::new();
    for v in 0..log.vertex_count() {
        groups.entry(uf.find(comp_of[v])).or_default().0.insert(v);
    }
    for (i, e) in log.edges().iter().enumerate() {
        groups
            .entry(uf.find(comp_of[e.source]))
            .or_default()
            .1
            .insert(i);
    }
    groups.into_values().collect()
}

const EMBED_BUDGET: usize = 20_000;

fn fresh_edge_id(log: &Log, next: &mut usize) -> String {
    loop {
        *next += 1;
        let id = format!("_c{next}");
        if log.edge_index(&id).is_none() {
            return id;
        }
    }
}

/// All sub-LOTs of `log` are boundary reduced.
fn sub_lots_ok(log: &Log) -> bool {
    enumerate_sub_lots(log, None)
        .iter()
        .all(|s| s.is_boundary_reduced)
}

/// Adds connecting edges until the forest is a tree, keeping it reduced and
/// injective with boundary reduced sub-LOTs. Each new edge joins `x₁` in the
/// first component to `x₂` in another and is labeled by a vertex that labels
/// nothing yet. Pairs where `x₁` labels an edge of `x₂`'s component and
/// `x₂` one of `x₁`'s are tried first.
fn embed_in_lot(log: &Log) -> Option<(Log, Vec<usize>)> {
    let mut budget = EMBED_BUDGET;
    let mut next = 0;
    embed_step(log, &mut budget, &mut next).map(|out| {
        let added = (log.edge_count()..out.edge_count()).collect();
        (out, added)
    })
}

fn embed_step(log: &Log, budget: &mut usize, next: &mut usize) -> Option<Log> {
    let comps = components(log);
    if comps.len() == 1 {
        let report = reducedness_report(log);
        return (report.reduced() && report.injective).then(|| log.clone());
    }
    let first: BTreeSet<usize> = comps[0].iter().copied().collect();
    let labels_into = |x: usize, comp: &BTreeSet<usize>| {
        log.edges()
            .iter()
            .any(|e| e.label == x && comp.contains(&e.source))
    };
    let free = non_label_vertices(log);
    let mut candidates = Vec::new();
    for other in &comps[1..] {
        let other: BTreeSet<usize> = other.iter().copied().collect();
        for &x1 in &first {
            for &x2 in &other {
                let preferred = labels_into(x1, &other) && labels_into(x2, &first);
                candidates.push((!preferred, x1, x2));
            }
        }
    }
    candidates.sort();
    for (_, x1, x2) in candidates {
        for &y in &free {
            if y == x1 || y == x2 {
                continue;
            }
            if *budget == 0 {
                return None;
            }
            *budget -= 1;
            let id = fresh_edge_id(log, next);
            let grown = log.with_edge(&id, x1, x2, y).ok()?;
            if !sub_lots_ok(&grown) {
                continue;
            }
            if let Some(done) = embed_step(&grown, budget, next) {
                return Some(done);
            }
        }
    }
    None
}

/// The LOT pipeline on a reduced injective LOT.
fn certify_lot(lot: &Log) -> Result<(GroupWitness, Vec<Sign>, Vec<usize>), String> {
    let root = match non_label_vertices(lot)[..] {
        [r] => r,
        ref other => {
            return Err(format!(
                "expected one non-label vertex, found {}",
                other.len()
            ))
        }
    };
    let sel = build_selection_graph(lot);
    let (b1, b2) = two_disjoint_branchings(&sel, root).map_err(|cut| {
        format!(
            "selection graph cut {:?} has δ = {}",
            vertex_names(lot, cut.set),
            cut.delta
        )
    })?;
    let black = if b2.arcs.contains(&0) { &b2 } else { &b1 };
    let partition = Partition2::from_black(sel.arcs().len(), black.arcs.iter().copied());
    if let Some(e) = is_admissible(&sel, &partition)
        .map_err(|e| e.to_string())?
        .witness
    {
        return Err(format!("branching partition is not admissible at {e}"));
    }
    let (rho, flips) = reorientation_from_partition(lot, &partition).map_err(|e| e.to_string())?;
    if !strong_lbf_check(&rho).holds {
        return Err("the selected reorientation lacks the strong lbf property".to_string());
    }
    let flipped: Vec<usize> = flips
        .iter()
        .map(|id| lot.edge_index(id).expect("flip ids come from the log"))
        .collect();
    let mut eps = vec![Sign::Plus; lot.vertex_count()];
    for &e in &flipped {
        eps[lot.edges()[e].label] = Sign::Minus;
    }
    let refs = |arcs: &[usize]| arcs.iter().map(|&a| sel.arc_ref(a)).collect::<Vec<_>>();
    let witness = GroupWitness {
        vertices: lot.vertices().to_vec(),
        edges: edge_ids(lot, 0..lot.edge_count()),
        embedding: Vec::new(),
        root: lot.vertex_name(root).to_string(),
        branchings: vec![refs(&b1.arcs), refs(&b2.arcs)],
        partition: PartitionWitness {
            black: refs(&partition.arcs_of(Color::Black)),
            white: refs(&partition.arcs_of(Color::White)),
        },
        flips,
    };
    Ok((witness, eps, flipped))
}

/// Runs the LOT pipeline on one label group, embedding it first when it has
/// several components. Indices in the outcome refer to `log`.
fn certify_group(
    log: &Log,
    vertices: &BTreeSet<usize>,
    edges: &BTreeSet<usize>,
) -> Result<GroupOutcome, String> {
    let sub = log.restrict(vertices, edges).map_err(|e| e.to_string())?;
    let (lot, added) = if classify(&sub).components > 1 {
        embed_in_lot(&sub).ok_or_else(|| "no connecting edges keep the hypotheses".to_string())?
    } else {
        (sub.clone(), Vec::new())
    };
    let (mut witness, sub_eps, sub_flipped) = certify_lot(&lot)?;
    witness.vertices = sub.vertices().to_vec();
    witness.edges = edge_ids(&sub, 0..sub.edge_count());
    witness.embedding = added.iter().map(|&e| lot.describe_edge(e)).collect();
    let vs: Vec<usize> = vertices.iter().copied().collect();
    let es: Vec<usize> = edges.iter().copied().collect();
    let mut eps = vec![Sign::Plus; log.vertex_count()];
    for (i, &v) in vs.iter().enumerate() {
        eps[v] = sub_eps[i];
    }
    let flipped = sub_flipped
        .into_iter()
        .filter(|&e| e < es.len())
        .map(|e| es[e])
        .collect();
    Ok(GroupOutcome {
        witness,
        eps,
        flipped,
    })
}

fn base_certificate(mode: Mode, log: &Log, hypothesis: Hypothesis) -> Certificate {
    Certificate {
        schema: SCHEMA_VERSION,
        mode,
        input: InputInfo::of(log),
        flags: Flags {
            class: classify(log),
            reducedness: reducedness_report(log),
        },
        hypothesis,
        witnesses: Witnesses::default(),
        verdicts: BTreeMap::new(),
        citations: BTreeMap::new(),
    }
}

fn finish(mut cert: Certificate) -> Certificate {
    cert.citations.extend(citations_for(&cert.verdicts));
    cert
}

/// Records a citation that supports a verdict indirectly.
fn cite(cert: &mut Certificate, key: &str) {
    if let Some((k, text)) = CITATIONS.iter().find(|(k, _)| *k == key) {
        cert.citations.insert(k.to_string(), text.to_string());
    }
}

fn set(cert: &mut Certificate, key: &str, v: Verdict) {
    cert.verdicts.insert(key.to_string(), v);
}

/// The LOF pipeline: hypotheses, disjoint branchings, reorientation, an lbf
/// witness, angles and the coloring test, then the cited claims.
pub fn certify_lof(log: &Log) -> Certificate {
    let hyp = hypothesis(log);
    let satisfied = hyp.satisfied;
    let mut cert = base_certificate(Mode::Lof, log, hyp);
    if satisfied || cert.hypothesis.forest {
        set(
            &mut cert,
            keys::STRONG_LBF,
            Verdict::witnessed(strong_lbf_check(log).holds),
        );
    }
    if !satisfied {
        for key in [
            keys::LBF,
            keys::COLORING_TEST,
            keys::DR,
            keys::ASPHERICAL,
            keys::LOCALLY_INDICABLE,
        ] {
            set(
                &mut cert,
                key,
                Verdict::with_status(Status::HypothesisFailed, Basis::Witnessed),
            );
        }
        return finish(cert);
    }

    let mut eps = vec![Sign::Plus; log.vertex_count()];
    let mut flipped = Vec::new();
    for (vertices, edges) in label_groups(log) {
        match certify_group(log, &vertices, &edges) {
            Ok(outcome) => {
                for &v in &vertices {
                    eps[v] = outcome.eps[v];
                }
                flipped.extend(outcome.flipped);
                cert.witnesses.groups.push(outcome.witness);
            }
            Err(reason) => {
                cert.witnesses.failure = Some(reason);
                for key in [
                    keys::LBF,
                    keys::COLORING_TEST,
                    keys::DR,
                    keys::ASPHERICAL,
                    keys::LOCALLY_INDICABLE,
                ] {
                    set(&mut cert, key, Verdict::witnessed(false));
                }
                return finish(cert);
            }
        }
    }
    flipped.sort_unstable();
    let flips = edge_ids(log, flipped);
    let rho = reorient(log, &flips).expect("flip ids come from the log");
    set(
        &mut cert,
        keys::REORIENTED_STRONG_LBF,
        Verdict::witnessed(strong_lbf_check(&rho).holds),
    );

    let eps = SignAssignment::new(eps);
    let lbf = lbf_check(log, &eps).expect("one sign per vertex");
    let angles = angles_from_bipartition(log, &eps).expect("one sign per vertex");
    let coloring = verify_coloring_test(log, &angles).expect("angles cover every corner");
    let curv = curvature(log, &angles).expect("angles cover every corner");
    let coloring_ok = coloring.passed && curv.max_cell_curvature().is_none_or(|k| k <= 0);

    set(&mut cert, keys::LBF, Verdict::witnessed(lbf.holds));
    set(
        &mut cert,
        keys::COLORING_TEST,
        Verdict::witnessed(coloring_ok),
    );
    set(
        &mut cert,
        keys::DR,
        Verdict::cited(coloring_ok, "coloring-test-dr"),
    );
    set(
        &mut cert,
        keys::ASPHERICAL,
        Verdict::cited(coloring_ok, "coloring-test-dr"),
    );
    set(
        &mut cert,
        keys::LOCALLY_INDICABLE,
        Verdict::cited(lbf.holds, "bi-forest-nonpositive-immersion"),
    );

    let w = &mut cert.witnesses;
    w.flips = Some(flips);
    w.epsilon = Some(eps.to_names(log));
    w.forests = Some(lbf);
    w.angles = Some(angle_entries(log, &angles));
    w.curvature = Some(curv);
    w.coloring = Some(coloring);
    finish(cert)
}

/// Inclusion-maximal sub-LOTs other than the whole log.
pub fn maximal_proper_sub_lots(log: &Log) -> Vec<SubLog> {
    let all: Vec<SubLog> = enumerate_sub_lots(log, None)
        .into_iter()
        .filter(|s| s.edges.len() < log.edge_count())
        .collect();
    let contains = |big: &SubLog, small: &SubLog| {
        big.edges.len() > small.edges.len()
            && small
                .edges
                .iter()
                .all(|e| big.edges.binary_search(e).is_ok())
    };
    all.iter()
        .filter(|s| !all.iter().any(|t| contains(t, s)))
        .cloned()
        .collect()
}

fn first_overlap(log: &Log, parts: &[SubLog]) -> Option<(usize, usize, String)> {
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            if let Some(v) = parts[i]
                .vertices
                .iter()
                .find(|v| parts[j].vertices.binary_search(v).is_ok())
            {
                return Some((i, j, log.vertex_name(*v).to_string()));
            }
        }
    }
    None
}

fn non_generic(mut cert: Certificate, reason: String) -> Certificate {
    for key in [
        keys::RELATIVE_LBF,
        keys::RELATIVE_COLORING_TEST,
        keys::ASPHERICAL,
        keys::VA,
    ] {
        set(
            &mut cert,
            key,
            Verdict::with_status(Status::NonGeneric, Basis::Witnessed),
        );
    }
    let relative = cert
        .witnesses
        .relative
        .get_or_insert_with(|| RelativeWitness {
            parts: Vec::new(),
            quotient: None,
            quotient_certificate: None,
            non_generic: None,
            relative_lbf: None,
        });
    relative.non_generic = Some(format!("non-generic: ad hoc analysis required ({reason})"));
    finish(cert)
}

/// The relative pipeline: collapse the parts (by default the maximal proper
/// sub-LOTs), certify the quotient, lift its lbf witness, and check the
/// relative coloring test. Parts are certified recursively after boundary
/// reduction.
pub fn certify_relative(log: &Log, parts: Option<&[SubLog]>) -> Result<Certificate, CertifyError> {
    let input = InputInfo::of(log);
    let reduction = reduce(log);
    if parts.is_some() && !reduction.moves.is_empty() {
        return Err(CertifyError::PartsOnUnreducedInput);
    }
    let work = reduction.log;
    let report = reducedness_report(&work);
    let class = classify(&work);
    let mut failures = Vec::new();
    if class.kind == LogKind::GeneralLog {
        failures.push("not a forest".to_string());
    }
    if !report.injective {
        failures.push("not injective after reduction".to_string());
    }
    let hyp = Hypothesis {
        satisfied: failures.is_empty(),
        forest: class.kind != LogKind::GeneralLog,
        reduced: report.reduced(),
        injective: report.injective,
        sub_lots_boundary_reduced: class.kind != LogKind::GeneralLog
            && enumerate_sub_lots(&work, None)
                .iter()
                .all(|s| s.is_boundary_reduced),
        sub_lot_scope: SUB_LOT_SCOPE.to_string(),
        violating_sub_lot: None,
        sub_lot_cut: None,
        branching_cut: None,
        failures,
    };
    let mut cert = base_certificate(Mode::Relative, &work, hyp);
    cert.input = input;
    cert.witnesses.reduction = reduction.moves.clone();
    if !cert.hypothesis.satisfied {
        for key in [
            keys::RELATIVE_LBF,
            keys::RELATIVE_COLORING_TEST,
            keys::ASPHERICAL,
            keys::VA,
        ] {
            set(
                &mut cert,
                key,
                Verdict::with_status(Status::HypothesisFailed, Basis::Witnessed),
            );
        }
        return Ok(finish(cert));
    }

    let parts: Vec<SubLog> = match parts {
        Some(given) => {
            for (i, p) in given.iter().enumerate() {
                let check = SubLog::from_edges(&work, &p.edges)?;
                if !check.is_sub_lot() {
                    return Err(CertifyError::NotSubLot(i));
                }
            }
            if let Some((i, j, v)) = first_overlap(&work, given) {
                return Err(CertifyError::PartsOverlap(i, j, v));
            }
            given
                .iter()
                .map(|p| SubLog::from_edges(&work, &p.edges))
                .collect::<Result<_, _>>()?
        }
        None => {
            let maximal = maximal_proper_sub_lots(&work);
            if let Some((i, j, v)) = first_overlap(&work, &maximal) {
                let names = |p: &SubLog| edge_ids(&work, p.edges.iter().copied()).join(",");
                let reason = format!(
                    "maximal sub-LOTs {{{}}} and {{{}}} share {v}",
                    names(&maximal[i]),
                    names(&maximal[j])
                );
                return Ok(non_generic(cert, reason));
            }
            maximal
        }
    };

    let reps: Vec<usize> = parts.iter().map(|p| p.vertices[0]).collect();
    let quotient = quotient_lof(&work, &parts, &reps)?;
    let q_cert = certify_lof(&quotient.log);
    let mut relative = RelativeWitness {
        parts: Vec::new(),
        quotient: Some(serialize_log(&quotient.log)),
        quotient_certificate: None,
        non_generic: None,
        relative_lbf: None,
    };
    let q_eps = match (&q_cert.witnesses.epsilon, q_cert.holds(keys::LBF)) {
        (Some(eps), true) => eps.clone(),
        _ => {
            let reason = if q_cert.hypothesis.satisfied {
                "the quotient LOF has no lbf witness".to_string()
            } else {
                format!(
                    "the quotient LOF fails: {}",
                    q_cert.hypothesis.failures.join("; ")
                )
            };
            relative.quotient_certificate = Some(Box::new(q_cert));
            cert.witnesses.relative = Some(relative);
            return Ok(non_generic(cert, reason));
        }
    };
    let eps = SignAssignment::new(
        (0..work.vertex_count())
            .map(|v| q_eps[quotient.log.vertex_name(quotient.vertex_map[v])])
            .collect(),
    );
    relative.quotient_certificate = Some(Box::new(q_cert));

    let rel_lbf = relative_lbf_check(&work, &parts, &eps)?;
    let angles = angles_from_bipartition(&work, &eps)?;
    let rel_coloring = verify_relative_coloring_test(&work, &parts, &angles)?;
    let curv = curvature(&work, &angles)?;
    let all_cells_ok = curv.max_cell_curvature().is_none_or(|k| k <= 0);
    let rel_ok = rel_coloring.passed && all_cells_ok;

    let mut parts_va = true;
    for (p, &rep) in parts.iter().zip(&reps) {
        let part_log = p.to_log(&work)?;
        let part_reduction = reduce(&part_log);
        let sub_cert = certify_relative(&part_reduction.log, None)?;
        parts_va &= sub_cert.holds(keys::VA);
        relative.parts.push(PartWitness {
            vertices: vertex_names(&work, p.vertices.iter().copied()),
            edges: edge_ids(&work, p.edges.iter().copied()),
            representative: work.vertex_name(rep).to_string(),
            reduction: part_reduction.moves,
            certificate: Box::new(sub_cert),
        });
    }
    let va = rel_ok && parts_va;

    set(
        &mut cert,
        keys::RELATIVE_LBF,
        Verdict::witnessed(rel_lbf.holds),
    );
    set(
        &mut cert,
        keys::RELATIVE_COLORING_TEST,
        Verdict::witnessed(rel_ok),
    );
    set(
        &mut cert,
        keys::VA,
        Verdict::cited(va, "relative-coloring-test-va"),
    );
    let aspherical_citation = if cert.witnesses.reduction.is_empty() {
        "relative-coloring-test-va"
    } else {
        "reductions-homotopy"
    };
    set(
        &mut cert,
        keys::ASPHERICAL,
        Verdict::cited(va, aspherical_citation),
    );
    if !parts.is_empty() {
        cite(&mut cert, "boundary-reduction-va");
    }

    relative.relative_lbf = Some(rel_lbf);
    let w = &mut cert.witnesses;
    w.epsilon = Some(eps.to_names(&work));
    w.angles = Some(angle_entries(&work, &angles));
    w.curvature = Some(curv);
    w.relative_coloring = Some(rel_coloring);
    w.relative = Some(relative);
    Ok(finish(cert))
}

#[cfg(test)]
mod tests;

use super::*;
use crate::link_complex::CornerKind;
use crate::log_model::fixtures::*;
use crate::log_model::{parse_log, reorient};
use crate::oracle::{exhaustive_lbf_search, random_reduced_injective_lot, DEFAULT_LBF_CAP};
use proptest::prelude::*;

fn signs(text: &str) -> SignAssignment {
    SignAssignment::new(
        text.chars()
            .map(|c| if c == '+' { Sign::Plus } else { Sign::Minus })
            .collect(),
    )
}

fn status(cert: &Certificate, key: &str) -> Status {
    cert.verdict(key)
        .unwrap_or_else(|| panic!("missing verdict {key}"))
        .status
}

#[test]
fn strong_lbf_examples() {
    assert!(strong_lbf_check(&vee_rho()).holds);
    assert!(strong_lbf_check(&triv()).holds);
    let check = strong_lbf_check(&vee());
    assert!(!check.holds);
    let cycle = check
        .side
        .cycle
        .expect("Λ⁺ of the unreoriented tree has a cycle");
    assert_eq!(cycle.corners.len(), 2);
    assert!(cycle.nodes.contains(&"x+".to_string()) && cycle.nodes.contains(&"z+".to_string()));
    assert!(check.opposite.cycle.is_none());
}

#[test]
fn lbf_examples() {
    assert!(!lbf_check(&vee(), &signs("+++")).unwrap().holds);
    // Witnesses found by the exhaustive search.
    for eps in ["-++", "--+", "++-", "+--"] {
        assert!(lbf_check(&vee(), &signs(eps)).unwrap().holds, "{eps}");
    }
    assert!(!lbf_check(&vee(), &signs("+-+")).unwrap().holds);
    assert!(lbf_check(&triv(), &signs("-")).unwrap().holds);
    assert!(lbf_check(&vee(), &signs("++")).is_err());
}

#[test]
fn bipartition_angles() {
    let angles = angles_from_bipartition(&vee_rho(), &signs("+++")).unwrap();
    assert_eq!(angles.angles(), [0, 0, 1, 1, 0, 0, 1, 1]);
    let report = curvature(&vee_rho(), &angles).unwrap();
    assert_eq!(report.vertex, 0);
    assert_eq!(report.euler_complex, 0);
    assert!(report.cells.iter().all(|c| c.curvature == 0));
    assert!(angles_from_bipartition(&triv(), &signs("+"))
        .unwrap()
        .is_empty());
}

#[test]
fn vee_certificate() {
    let cert = certify_lof(&vee());
    for key in [keys::LBF, keys::COLORING_TEST, keys::REORIENTED_STRONG_LBF] {
        assert_eq!(status(&cert, key), Status::True, "{key}");
        assert_eq!(cert.verdict(key).unwrap().basis, Basis::Witnessed);
    }
    for key in [keys::DR, keys::ASPHERICAL, keys::LOCALLY_INDICABLE] {
        assert_eq!(status(&cert, key), Status::True, "{key}");
        assert_eq!(cert.verdict(key).unwrap().basis, Basis::ByCitation);
    }
    assert_eq!(status(&cert, keys::STRONG_LBF), Status::False);
    assert_eq!(
        cert.witnesses.flips.as_deref(),
        Some(&["e2".to_string()][..])
    );
    let eps = cert.witnesses.epsilon.as_ref().unwrap();
    assert_eq!(eps.values().map(|s| s.symbol()).collect::<String>(), "-++");
    let group = &cert.witnesses.groups[0];
    assert_eq!(group.root, "y");
    assert!(group.embedding.is_empty());
    assert_eq!(cert.citations.len(), 2);
}

#[test]
fn trivial_certificate() {
    let cert = certify_lof(&triv());
    assert!(cert.holds(keys::DR) && cert.holds(keys::LBF));
    assert!(cert.witnesses.angles.as_ref().unwrap().is_empty());
    // No 2-cells and χ(K) = 0, so all curvature sits at the vertex and is 0.
    assert_eq!(cert.witnesses.curvature.as_ref().unwrap().vertex, 0);
}

#[test]
fn bad_sub_lot_fails_the_hypothesis() {
    let cert = certify_lof(&sub());
    assert!(!cert.hypothesis.satisfied);
    let bad = cert.hypothesis.violating_sub_lot.as_ref().unwrap();
    assert_eq!(bad.edges, ["e1", "e2", "e4"]);
    assert_eq!(bad.boundary_vertex.as_deref(), Some("x4"));
    let cut = cert.hypothesis.sub_lot_cut.as_ref().unwrap();
    assert_eq!(
        (cut.set.clone(), cut.delta),
        (vec!["x1".to_string(), "x2".into(), "x5".into()], 1)
    );
    assert_eq!(cert.hypothesis.branching_cut.as_ref().unwrap().delta, 1);
    for key in [keys::LBF, keys::COLORING_TEST, keys::DR] {
        assert_eq!(status(&cert, key), Status::HypothesisFailed);
    }
}

#[test]
fn relative_on_bad_sub_lot() {
    let log = sub();
    let cert = certify_relative(&log, None).unwrap();
    assert!(cert.holds(keys::RELATIVE_COLORING_TEST) && cert.holds(keys::RELATIVE_LBF));
    assert!(cert.holds(keys::VA) && cert.holds(keys::ASPHERICAL));
    let rel = cert.witnesses.relative.as_ref().unwrap();
    assert_eq!(rel.parts.len(), 1);
    assert_eq!(rel.parts[0].vertices, ["x1", "x2", "x4", "x5"]);
    assert_eq!(rel.parts[0].representative, "x1");
    assert_eq!(rel.parts[0].reduction.len(), 1);
    assert!(rel.parts[0].certificate.holds(keys::VA));
    let quotient = parse_log(rel.quotient.as_deref().unwrap()).unwrap();
    assert_eq!(quotient.vertices(), ["x1", "x3", "x6"]);
    let edges: Vec<String> = (0..quotient.edge_count())
        .map(|e| quotient.describe_edge(e))
        .collect();
    assert_eq!(edges, ["e3: x6 -> x3 : x1", "e5: x6 -> x1 : x3"]);
    let curvature = cert.witnesses.curvature.as_ref().unwrap();
    for cell in &curvature.cells {
        assert!(cell.curvature <= 0);
        if ["e1", "e2", "e4"].contains(&cell.edge.as_str()) {
            assert_eq!(cell.curvature, 0, "{}", cell.edge);
        }
    }
}

#[test]
fn relative_without_proper_sub_lots_matches_lof() {
    let lof = certify_lof(&vee());
    let rel = certify_relative(&vee(), None).unwrap();
    assert!(rel.witnesses.relative.as_ref().unwrap().parts.is_empty());
    assert_eq!(rel.witnesses.epsilon, lof.witnesses.epsilon);
    assert_eq!(rel.witnesses.angles, lof.witnesses.angles);
    assert!(rel.holds(keys::RELATIVE_COLORING_TEST) && lof.holds(keys::COLORING_TEST));
}

#[test]
fn relative_reduces_first() {
    let cert = certify_relative(&noncomp(), None).unwrap();
    assert!(!cert.witnesses.reduction.is_empty());
    assert_eq!(
        cert.verdict(keys::ASPHERICAL).unwrap().citation.as_deref(),
        Some("reductions-homotopy")
    );
    assert!(cert.holds(keys::ASPHERICAL));
    assert_eq!(cert.input, InputInfo::of(&noncomp()));
}

#[test]
fn explicit_parts_are_validated() {
    let log = sub();
    let part = SubLog::from_edge_ids(&log, &["e1", "e2", "e4"]).unwrap();
    let cert = certify_relative(&log, Some(std::slice::from_ref(&part))).unwrap();
    assert!(cert.holds(keys::RELATIVE_COLORING_TEST));
    let not_closed = SubLog::from_edge_ids(&log, &["e3"]).unwrap();
    assert_eq!(
        certify_relative(&log, Some(&[not_closed])),
        Err(CertifyError::NotSubLot(0))
    );
    let inner = SubLog::from_edge_ids(&log, &["e1", "e2"]).unwrap();
    assert!(inner.is_sub_lot());
    assert!(matches!(
        certify_relative(&log, Some(&[part, inner])),
        Err(CertifyError::PartsOverlap(0, 1, _))
    ));
    assert_eq!(
        certify_relative(&noncomp(), Some(&[])),
        Err(CertifyError::PartsOnUnreducedInput)
    );
}

#[test]
fn non_generic_when_maximal_sub_lots_overlap() {
    // {e1, e2} and {e3, e4} are sub-LOTs sharing x1 and covering the whole tree.
    let log = parse_log(
        "vertices: x1 x2 x3 x4 x5\n\
         edge e1: x1 -> x3 : x4\n\
         edge e2: x1 -> x4 : x3\n\
         edge e3: x1 -> x2 : x5\n\
         edge e4: x5 -> x2 : x1\n",
    )
    .unwrap();
    assert_eq!(maximal_proper_sub_lots(&log).len(), 2);
    let cert = certify_relative(&log, None).unwrap();
    assert_eq!(
        status(&cert, keys::RELATIVE_COLORING_TEST),
        Status::NonGeneric
    );
    assert!(cert
        .witnesses
        .relative
        .unwrap()
        .non_generic
        .unwrap()
        .starts_with("non-generic: ad hoc analysis required"));
}

fn two_vee() -> Log {
    parse_log(
        "vertices: x y z u v w\n\
         edge e1: x -> y : z\n\
         edge e2: z -> y : x\n\
         edge f1: u -> v : w\n\
         edge f2: w -> v : u\n",
    )
    .unwrap()
}

#[test]
fn wedge_is_certified_per_group() {
    let log = two_vee();
    let cert = certify_lof(&log);
    assert!(cert.holds(keys::DR));
    assert_eq!(cert.witnesses.groups.len(), 2);
    assert!(cert.witnesses.groups.iter().all(|g| g.embedding.is_empty()));
    // Same witness as the two halves on their own.
    let left = certify_lof(&vee());
    let right = certify_lof(
        &parse_log("vertices: u v w\nedge f1: u -> v : w\nedge f2: w -> v : u\n").unwrap(),
    );
    let mut joined = left.witnesses.epsilon.clone().unwrap();
    joined.extend(right.witnesses.epsilon.clone().unwrap());
    assert_eq!(cert.witnesses.epsilon.as_ref(), Some(&joined));
    assert_eq!(
        cert.holds(keys::LBF),
        left.holds(keys::LBF) && right.holds(keys::LBF)
    );
}

#[test]
fn linked_components_are_embedded() {
    // Two components that label each other's edges.
    let log = parse_log(
        "vertices: a b c d e f\n\
         edge e1: a -> b : d\n\
         edge e2: c -> b : f\n\
         edge e3: d -> e : a\n\
         edge e4: f -> e : c\n",
    )
    .unwrap();
    let cert = certify_lof(&log);
    assert!(cert.hypothesis.satisfied, "{:?}", cert.hypothesis.failures);
    assert_eq!(cert.witnesses.groups.len(), 1);
    assert_eq!(cert.witnesses.groups[0].embedding.len(), 1);
    assert!(cert.holds(keys::LBF) && cert.holds(keys::COLORING_TEST));
    let flips = cert.witnesses.flips.as_ref().unwrap();
    assert!(flips.iter().all(|f| log.edge_index(f).is_some()));
}

#[test]
fn json_round_trip() {
    for cert in [
        certify_lof(&vee()),
        certify_lof(&sub()),
        certify_relative(&sub(), None).unwrap(),
    ] {
        let text = cert.to_json();
        assert_eq!(Certificate::from_json(&text).unwrap(), cert);
    }
    assert_eq!(certify_lof(&vee()).to_json(), certify_lof(&vee()).to_json());
    let wrong = certify_lof(&vee())
        .to_json()
        .replace("\"schema\": 1", "\"schema\": 2");
    assert_eq!(
        Certificate::from_json(&wrong),
        Err(CertifyError::Schema(Some(2)))
    );
    assert!(matches!(
        Certificate::from_json("{"),
        Err(CertifyError::Json(_))
    ));
}

#[test]
fn digest_tracks_the_canonical_text() {
    let a = certify_lof(&vee());
    let b = certify_lof(&parse_log(&serialize_log(&vee())).unwrap());
    assert_eq!(a.input.digest, b.input.digest);
    assert_eq!(a.input.digest.len(), 64);
    assert_ne!(a.input.digest, certify_lof(&vee_rho()).input.digest);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lbf_found_iff_oracle_finds_one((n, seed) in (3usize..9, any::<u64>())) {
        let g = random_reduced_injective_lot(n, seed).unwrap();
        let cert = certify_lof(&g.log);
        prop_assert_eq!(cert.hypothesis.satisfied, g.all_sub_lots_boundary_reduced);
        if cert.hypothesis.satisfied {
            let found = exhaustive_lbf_search(&g.log, DEFAULT_LBF_CAP).unwrap();
            prop_assert!(!found.is_empty());
            prop_assert!(cert.holds(keys::LBF));
            // The reorientation chosen from the branchings has strong lbf.
            let rho = reorient(&g.log, cert.witnesses.flips.as_ref().unwrap()).unwrap();
            prop_assert!(strong_lbf_check(&rho).holds);
            let eps = SignAssignment::from_names(&g.log, cert.witnesses.epsilon.as_ref().unwrap()).unwrap();
            prop_assert!(found.contains(&eps));
        }
    }

    #[test]
    fn coloring_keeps_two_zero_corners_per_cell((n, seed) in (3usize..9, any::<u64>())) {
        let g = random_reduced_injective_lot(n, seed).unwrap();
        let cert = certify_lof(&g.log);
        if cert.holds(keys::COLORING_TEST) {
            let angles = cert.witnesses.angles.as_ref().unwrap();
            for cell in angles.chunks(4) {
                prop_assert!(cell.iter().filter(|a| a.angle == 0).count() >= 2);
            }
        }
    }

    #[test]
    fn constant_signs_put_mixed_corners_at_one((n, seed, minus) in (3usize..9, any::<u64>(), any::<bool>())) {
        let log = random_reduced_injective_lot(n, seed).unwrap().log;
        let sign = if minus { Sign::Minus } else { Sign::Plus };
        let angles = angles_from_bipartition(&log, &SignAssignment::constant(n, sign)).unwrap();
        for (i, &a) in angles.angles().iter().enumerate() {
            let mixed = matches!(CornerKind::ALL[i % 4], CornerKind::MixedSource | CornerKind::MixedTarget);
            prop_assert_eq!(a == 1, mixed);
        }
    }

    #[test]
    fn lbf_existence_is_reorientation_invariant((n, seed) in (3usize..8, any::<u64>()), flips in proptest::collection::vec(any::<bool>(), 8)) {
        let log = random_reduced_injective_lot(n, seed).unwrap().log;
        let ids: Vec<String> = log.edges().iter().zip(&flips).filter(|(_, f)| **f).map(|(e, _)| e.id.clone()).collect();
        let rho = reorient(&log, &ids).unwrap();
        prop_assert_eq!(
            exhaustive_lbf_search(&log, DEFAULT_LBF_CAP).unwrap().is_empty(),
            exhaustive_lbf_search(&rho, DEFAULT_LBF_CAP).unwrap().is_empty()
        );
    }

    #[test]
    fn relative_cells_in_parts_are_flat((n, seed) in (6usize..10, any::<u64>())) {
        let log = random_reduced_injective_lot(n, seed).unwrap().log;
        let cert = certify_relative(&log, None).unwrap();
        if cert.holds(keys::RELATIVE_COLORING_TEST) {
            let rel = cert.witnesses.relative.as_ref().unwrap();
            let in_parts: Vec<&String> = rel.parts.iter().flat_map(|p| &p.edges).collect();
            for cell in &cert.witnesses.curvature.as_ref().unwrap().cells {
                prop_assert!(cell.curvature <= 0);
                if in_parts.contains(&&cell.edge) {
                    prop_assert_eq!(cell.curvature, 0);
                }
            }
        }
    }
}

use std::fs;
use std::io::Write as _;
use std::path::Path;

use lot_core::arborescence::two_disjoint_branchings;
use lot_core::certify::{
    angles_from_bipartition, certify_lof, certify_relative, digest, keys, Certificate, Status,
};
use lot_core::link_complex::{
    build_link, sign_subgraph, verify_coloring_test, Sign, SignAssignment,
};
use lot_core::log_model::{
    classify, non_label_vertices, parse_log, reduce as reduce_log, reducedness_report,
    serialize_log, Log, LogKind, SubLog,
};
use lot_core::oracle::{
    exhaustive_branching_search, exhaustive_lbf_search, find_simple_cycle, light_simple_cycles,
    random_reduced_injective_lot, DEFAULT_BRANCHING_CAP, DEFAULT_LBF_CAP,
};
use lot_core::selection::{build_selection_graph, Partition2};
use serde::Serialize;

use crate::exit;

const CAP_VAR: &str = "LOT_ORACLE_CAP";

fn load(path: &Path) -> Result<Log, u8> {
    let text = fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        exit::BAD_INPUT
    })?;
    parse_log(&text).map_err(|e| {
        eprintln!("error: {}:{e}", path.display());
        exit::BAD_INPUT
    })
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), u8> {
    match path {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(p) if p == Path::new("-") => {
            print!("{text}");
            Ok(())
        }
        Some(p) => fs::write(p, text).map_err(|e| {
            eprintln!("error: cannot write {}: {e}", p.display());
            exit::PROPERTY_FAILED
        }),
    }
}

fn code(result: Result<u8, u8>) -> u8 {
    result.unwrap_or_else(|c| c)
}

#[derive(Serialize)]
struct ValidationReport {
    class: lot_core::log_model::LogClass,
    reducedness: lot_core::log_model::ReducednessReport,
    reduced_injective_lof: bool,
}

pub fn validate(path: &Path, json: bool) -> u8 {
    code((|| {
        let log = load(path)?;
        let class = classify(&log);
        let report = reducedness_report(&log);
        let ok = class.kind != LogKind::GeneralLog && report.reduced() && report.injective;
        if json {
            let value = ValidationReport {
                class,
                reducedness: report,
                reduced_injective_lof: ok,
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&value).expect("reports serialize")
            );
        } else {
            let kind = match class.kind {
                LogKind::GeneralLog => "general LOG",
                LogKind::Lof => "LOF",
                LogKind::Lot => "LOT",
            };
            println!("class: {kind} ({} components)", class.components);
            let list = |v: &[String]| v.join(", ");
            let line = |name: &str, holds: bool, witnesses: String| {
                if holds {
                    println!("{name}: yes");
                } else {
                    println!("{name}: no ({witnesses})");
                }
            };
            line(
                "boundary reduced",
                report.boundary_reduced,
                list(&report.boundary_witnesses),
            );
            let folds: Vec<String> = report
                .interior_witnesses
                .iter()
                .map(|d| format!("{} and {} at {} {}", d.edges.0, d.edges.1, d.end, d.vertex))
                .collect();
            line("interior reduced", report.interior_reduced, list(&folds));
            line(
                "compressed",
                report.compressed,
                list(&report.compressed_witnesses),
            );
            let pairs: Vec<String> = report
                .injective_witnesses
                .iter()
                .map(|(a, b)| format!("{a}/{b}"))
                .collect();
            line("injective", report.injective, list(&pairs));
        }
        Ok(if ok { exit::OK } else { exit::PROPERTY_FAILED })
    })())
}

pub fn reduce(path: &Path, output: Option<&Path>) -> u8 {
    code((|| {
        let log = load(path)?;
        let reduction = reduce_log(&log);
        let mut text = String::new();
        for mv in &reduction.moves {
            text.push_str(&format!("# {mv}\n"));
        }
        text.push_str(&serialize_log(&reduction.log));
        write_out(output, &text)?;
        Ok(exit::OK)
    })())
}

fn parse_parts(log: &Log, specs: &[String]) -> Result<Vec<SubLog>, u8> {
    specs
        .iter()
        .map(|spec| {
            let ids: Vec<&str> = spec
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .collect();
            SubLog::from_edge_ids(log, &ids).map_err(|e| {
                eprintln!("error: part {spec}: {e}");
                exit::BAD_INPUT
            })
        })
        .collect()
}

fn summary(cert: &Certificate) -> String {
    let mut out = String::new();
    if !cert.hypothesis.satisfied {
        out.push_str(&format!(
            "hypothesis: failed ({})\n",
            cert.hypothesis.failures.join("; ")
        ));
        if let Some(bad) = &cert.hypothesis.violating_sub_lot {
            out.push_str(&format!(
                "  sub-LOT {{{}}} on {{{}}} has boundary vertex {}\n",
                bad.edges.join(", "),
                bad.vertices.join(", "),
                bad.boundary_vertex.as_deref().unwrap_or("?")
            ));
        }
        if let Some(cut) = &cert.hypothesis.sub_lot_cut {
            out.push_str(&format!(
                "  cut {{{}}} with delta = {}\n",
                cut.set.join(", "),
                cut.delta
            ));
        }
    }
    if let Some(reason) = cert
        .witnesses
        .relative
        .as_ref()
        .and_then(|r| r.non_generic.as_ref())
    {
        out.push_str(&format!("{reason}\n"));
    }
    if let Some(reason) = &cert.witnesses.failure {
        out.push_str(&format!("pipeline failure: {reason}\n"));
    }
    for (key, v) in &cert.verdicts {
        let status = serde_json::to_value(v.status).expect("statuses serialize");
        let basis = serde_json::to_value(v.basis).expect("bases serialize");
        let status = status.as_str().unwrap_or_default();
        match &v.citation {
            Some(c) => out.push_str(&format!(
                "{key}: {status} ({} {c})\n",
                basis.as_str().unwrap_or_default()
            )),
            None => out.push_str(&format!(
                "{key}: {status} ({})\n",
                basis.as_str().unwrap_or_default()
            )),
        }
    }
    out
}

/// Link and selection graph renderings for the log the certificate is about.
fn write_dots(log: &Log, cert: &Certificate, dir: &Path) -> Result<(), u8> {
    fs::create_dir_all(dir).map_err(|e| {
        eprintln!("error: cannot create {}: {e}", dir.display());
        exit::PROPERTY_FAILED
    })?;
    let angles = cert
        .witnesses
        .epsilon
        .as_ref()
        .and_then(|eps| SignAssignment::from_names(log, eps).ok())
        .and_then(|eps| angles_from_bipartition(log, &eps).ok());
    let link = build_link(log).to_dot(angles.as_ref());
    let sel = build_selection_graph(log);
    let partition = match &cert.witnesses.groups[..] {
        [group] if group.embedding.is_empty() => {
            let black: Option<Vec<usize>> = group
                .partition
                .black
                .iter()
                .map(|r| sel.arc_index(r))
                .collect();
            black.map(|b| Partition2::from_black(sel.arcs().len(), b))
        }
        _ => None,
    };
    let selection = sel.to_dot(partition.as_ref());
    write_out(Some(&dir.join("link.dot")), &link)?;
    write_out(Some(&dir.join("selection.dot")), &selection)
}

pub fn certify(
    path: &Path,
    relative: bool,
    parts: &[String],
    json: Option<&Path>,
    dot: Option<&Path>,
) -> u8 {
    code((|| {
        let log = load(path)?;
        let (cert, subject) = if relative {
            let parts = if parts.is_empty() {
                None
            } else {
                Some(parse_parts(&log, parts)?)
            };
            match certify_relative(&log, parts.as_deref()) {
                Ok(cert) => (cert, reduce_log(&log).log),
                Err(e) => {
                    eprintln!("error: {e}");
                    return Err(exit::HYPOTHESIS_FAILED);
                }
            }
        } else {
            (certify_lof(&log), log)
        };
        match json {
            Some(p) => write_out(Some(p), &cert.to_json())?,
            None => print!("{}", summary(&cert)),
        }
        if json.is_some_and(|p| p != Path::new("-")) {
            print!("{}", summary(&cert));
        }
        if let Some(dir) = dot {
            write_dots(&subject, &cert, dir)?;
        }
        let top = if relative {
            keys::RELATIVE_COLORING_TEST
        } else {
            keys::DR
        };
        let status = cert.verdict(top).map(|v| v.status);
        Ok(match status {
            Some(Status::True) => exit::OK,
            Some(Status::HypothesisFailed | Status::NonGeneric) => exit::HYPOTHESIS_FAILED,
            _ => exit::PROPERTY_FAILED,
        })
    })())
}

pub fn export(path: &Path, link: bool, dot: Option<&Path>) -> u8 {
    code((|| {
        let log = load(path)?;
        let text = if link {
            build_link(&log).to_dot(None)
        } else {
            build_selection_graph(&log).to_dot(None)
        };
        write_out(dot, &text)?;
        Ok(exit::OK)
    })())
}

#[derive(Serialize)]
struct ManifestEntry {
    file: String,
    seed: u64,
    digest: String,
    all_sub_lots_boundary_reduced: bool,
    reduced: bool,
    injective: bool,
}

#[derive(Serialize)]
struct Manifest {
    n: usize,
    count: usize,
    seed: u64,
    instances: Vec<ManifestEntry>,
}

pub fn generate(n: usize, count: usize, seed: u64, out: &Path) -> u8 {
    code((|| {
        fs::create_dir_all(out).map_err(|e| {
            eprintln!("error: cannot create {}: {e}", out.display());
            exit::PROPERTY_FAILED
        })?;
        let width = count.saturating_sub(1).to_string().len().max(4);
        let mut instances = Vec::with_capacity(count);
        for i in 0..count {
            let instance_seed = seed.wrapping_add(i as u64);
            let generated = random_reduced_injective_lot(n, instance_seed).map_err(|e| {
                eprintln!("error: {e}");
                exit::BAD_INPUT
            })?;
            let file = format!("lot_{i:0width$}.log");
            write_out(Some(&out.join(&file)), &serialize_log(&generated.log))?;
            let report = reducedness_report(&generated.log);
            instances.push(ManifestEntry {
                file,
                seed: instance_seed,
                digest: digest(&generated.log),
                all_sub_lots_boundary_reduced: generated.all_sub_lots_boundary_reduced,
                reduced: report.reduced(),
                injective: report.injective,
            });
        }
        let manifest = Manifest {
            n,
            count,
            seed,
            instances,
        };
        let mut text = serde_json::to_string_pretty(&manifest).expect("manifests serialize");
        text.push('\n');
        write_out(Some(&out.join("manifest.json")), &text)?;
        println!("{count} instance(s) written to {}", out.display());
        Ok(exit::OK)
    })())
}

fn oracle_cap(cli: Option<usize>) -> Result<Option<usize>, u8> {
    if cli.is_some() {
        return Ok(cli);
    }
    match std::env::var(CAP_VAR) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&c| c > 0)
            .map(Some)
            .ok_or_else(|| {
                eprintln!("error: {CAP_VAR} must be a positive integer, got {v:?}");
                exit::BAD_INPUT
            }),
        Err(_) => Ok(None),
    }
}

struct Checks {
    disagreements: usize,
    out: String,
}

impl Checks {
    fn record(&mut self, name: &str, production: bool, oracle: Option<bool>) {
        match oracle {
            Some(o) if o == production => self
                .out
                .push_str(&format!("agree: {name} = {production}\n")),
            Some(o) => {
                self.disagreements += 1;
                self.out.push_str(&format!(
                    "DISAGREE: {name}: production {production}, oracle {o}\n"
                ));
            }
            None => self
                .out
                .push_str(&format!("skipped: {name} (over the oracle cap)\n")),
        }
    }
}

pub fn oracle_check(path: &Path, cap: Option<usize>) -> u8 {
    code((|| {
        let log = load(path)?;
        let cap = oracle_cap(cap)?;
        let lbf_cap = cap.unwrap_or(DEFAULT_LBF_CAP);
        let branching_cap = cap.unwrap_or(DEFAULT_BRANCHING_CAP);
        let mut checks = Checks {
            disagreements: 0,
            out: String::new(),
        };

        let link = build_link(&log);
        for (name, sign) in [
            ("link+ is a forest", Sign::Plus),
            ("link- is a forest", Sign::Minus),
        ] {
            let sub = sign_subgraph(&link, &SignAssignment::constant(log.vertex_count(), sign))
                .expect("constant signs cover the log");
            let g = sub.to_multigraph();
            checks.record(
                name,
                g.is_forest(),
                Some(find_simple_cycle(&g, usize::MAX).is_none()),
            );
        }

        let cert = certify_lof(&log);
        if cert.hypothesis.satisfied {
            let found = exhaustive_lbf_search(&log, lbf_cap)
                .ok()
                .map(|f| !f.is_empty());
            checks.record("lbf witness exists", cert.holds(keys::LBF), found);
        }
        if let Some(eps) = cert
            .witnesses
            .epsilon
            .as_ref()
            .and_then(|e| SignAssignment::from_names(&log, e).ok())
        {
            let angles = angles_from_bipartition(&log, &eps).expect("one sign per vertex");
            let report = verify_coloring_test(&log, &angles).expect("angles cover every corner");
            let g = link.to_multigraph();
            let light = light_simple_cycles(&g, angles.angles(), 1);
            let cells_ok = (0..log.edge_count()).all(|e| angles.cell_sum(e) <= 2);
            checks.record(
                "coloring test",
                report.passed,
                Some(light.is_empty() && cells_ok),
            );
        }
        if classify(&log).kind == LogKind::Lot {
            if let [root] = non_label_vertices(&log)[..] {
                let sel = build_selection_graph(&log);
                let found = exhaustive_branching_search(&sel, root, branching_cap)
                    .ok()
                    .map(|p| p.is_some());
                checks.record(
                    "two disjoint branchings",
                    two_disjoint_branchings(&sel, root).is_ok(),
                    found,
                );
            }
        }
        print!("{}", checks.out);
        let _ = std::io::stdout().flush();
        Ok(if checks.disagreements == 0 {
            exit::OK
        } else {
            exit::PROPERTY_FAILED
        })
    })())
}

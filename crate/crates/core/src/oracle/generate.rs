//! Seeded random LOGs, LOFs and reduced injective LOTs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::OracleError;
use crate::log_model::{enumerate_sub_lots, reduce, reducedness_report, Log};

/// Attempts per call before giving up on the rejection sampler.
const MAX_ATTEMPTS: usize = 10_000;

/// A generated LOT together with its hypothesis flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratedLot {
    pub log: Log,
    /// Whether every sub-LOT is boundary reduced, by exhaustive enumeration.
    pub all_sub_lots_boundary_reduced: bool,
}

fn names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

fn empty_log(n: usize) -> Log {
    let mut log = Log::default();
    for name in names(n) {
        log.push_vertex(&name).expect("generated names are valid");
    }
    log
}

/// Edges of a uniform random labeled tree on `n` vertices, via a Prüfer sequence.
pub(crate) fn random_tree(n: usize, rng: &mut impl Rng) -> Vec<(usize, usize)> {
    if n < 2 {
        return Vec::new();
    }
    if n == 2 {
        return vec![(0, 1)];
    }
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &c in &code {
        degree[c] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &c in &code {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf remains");
        edges.push((leaf, c));
        degree[leaf] -= 1;
        degree[c] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// One attempt: random tree, orientations, root and edge-to-label bijection.
fn attempt(n: usize, rng: &mut impl Rng) -> Option<Log> {
    let tree = random_tree(n, rng);
    let root = rng.gen_range(0..n);
    let mut degree = vec![0usize; n];
    for &(a, b) in &tree {
        degree[a] += 1;
        degree[b] += 1;
    }
    // A valency-1 non-label vertex would be a boundary defect.
    if degree[root] == 1 {
        return None;
    }
    let mut labels: Vec<usize> = (0..n).filter(|&v| v != root).collect();
    labels.shuffle(rng);
    let mut log = empty_log(n);
    for (i, (&(a, b), &l)) in tree.iter().zip(&labels).enumerate() {
        if l == a || l == b {
            return None;
        }
        let (s, t) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
        log.push_edge(&format!("e{}", i + 1), s, t, l)
            .expect("fresh id");
    }
    Some(log)
}

/// A reduced injective LOT on `n ≥ 3` vertices named `x1..xn`, deterministic in `seed`.
pub fn random_reduced_injective_lot(n: usize, seed: u64) -> Result<GeneratedLot, OracleError> {
    if n < 3 {
        return Err(OracleError::TooSmall { n, min: 3 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let Some(log) = attempt(n, &mut rng) else {
            continue;
        };
        debug_assert!(reducedness_report(&log).reduced());
        debug_assert!(reduce(&log).moves.is_empty());
        let all_sub_lots_boundary_reduced = enumerate_sub_lots(&log, None)
            .iter()
            .all(|s| s.is_boundary_reduced);
        return Ok(GeneratedLot {
            log,
            all_sub_lots_boundary_reduced,
        });
    }
    Err(OracleError::GeneratorExhausted {
        attempts: MAX_ATTEMPTS,
    })
}

/// An arbitrary LOG with `n` vertices and `m` edges; loops and repeated labels allowed.
pub fn random_log(n: usize, m: usize, seed: u64) -> Log {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut log = empty_log(n.max(1));
    let n = log.vertex_count();
    for i in 0..m {
        let (s, t, l) = (
            rng.gen_range(0..n),
            rng.gen_range(0..n),
            rng.gen_range(0..n),
        );
        log.push_edge(&format!("e{}", i + 1), s, t, l)
            .expect("fresh id");
    }
    log
}

/// A random LOF on `n` vertices: a random tree with each edge kept with
/// probability 3/4, random orientations and arbitrary labels.
pub fn random_lof(n: usize, seed: u64) -> Log {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = n.max(1);
    let mut log = empty_log(n);
    let mut k = 0;
    for (a, b) in random_tree(n, &mut rng) {
        if !rng.gen_bool(0.75) {
            continue;
        }
        let (s, t) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
        k += 1;
        log.push_edge(&format!("e{k}"), s, t, rng.gen_range(0..n))
            .expect("fresh id");
    }
    log
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::log_model::{classify, non_label_vertices, LogKind};

    #[test]
    fn three_vertices_give_the_path_shape() {
        for seed in 0..20 {
            let g = random_reduced_injective_lot(3, seed).unwrap();
            let log = &g.log;
            assert_eq!(log.edge_count(), 2);
            let root = non_label_vertices(log);
            assert_eq!(root.len(), 1);
            // The root is the middle vertex and each edge is labeled by the far leaf.
            assert_eq!(log.valency(root[0]), 2);
            for e in log.edges() {
                assert!(![e.source, e.target].contains(&e.label));
            }
            assert!(g.all_sub_lots_boundary_reduced);
        }
    }

    #[test]
    fn generator_is_deterministic() {
        for seed in [0, 7, 11] {
            assert_eq!(
                random_reduced_injective_lot(9, seed).unwrap(),
                random_reduced_injective_lot(9, seed).unwrap()
            );
            assert_eq!(random_log(5, 6, seed), random_log(5, 6, seed));
            assert_eq!(random_lof(8, seed), random_lof(8, seed));
        }
    }

    #[test]
    fn generated_lots_are_reduced_and_injective() {
        for seed in 0..50 {
            let g = random_reduced_injective_lot(3 + (seed as usize % 8), seed).unwrap();
            let r = reducedness_report(&g.log);
            assert!(r.reduced() && r.injective);
            assert_eq!(classify(&g.log).kind, LogKind::Lot);
        }
    }

    #[test]
    fn lofs_are_forests() {
        for seed in 0..50 {
            assert_ne!(classify(&random_lof(10, seed)).kind, LogKind::GeneralLog);
        }
    }

    #[test]
    fn small_n_is_rejected() {
        assert!(random_reduced_injective_lot(2, 0).is_err());
    }
}

//! Flip-graph search checked against a plain single-source BFS over
//! `Triangulation` values (no bitmask codes, no bidirectional search).

use std::collections::{HashMap, VecDeque};

use flipdist::model::{triangulation_to_tree, Triangulation};
use flipdist::search::{
    diameter, enumerate_triangulations, exact_distance, heuristic, rotation_distance,
    upper_bound_path, DiameterMode, SearchOptions,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn oracle_distances(source: &Triangulation) -> HashMap<Triangulation, usize> {
    let mut dist = HashMap::from([(source.clone(), 0)]);
    let mut queue = VecDeque::from([source.clone()]);
    while let Some(t) = queue.pop_front() {
        let d = dist[&t];
        for &diag in t.diagonals() {
            let next = t.flip(diag).unwrap();
            if !dist.contains_key(&next) {
                dist.insert(next.clone(), d + 1);
                queue.push_back(next);
            }
        }
    }
    dist
}

fn oracle_diameter(n: usize) -> usize {
    enumerate_triangulations(n)
        .unwrap()
        .map(|t| oracle_distances(&t).into_values().max().unwrap())
        .max()
        .unwrap()
}

fn fixture() -> Vec<(usize, usize)> {
    include_str!("fixtures/diameters.csv")
        .lines()
        .skip(1)
        .map(|l| {
            let (n, d) = l.split_once(',').unwrap();
            (n.parse().unwrap(), d.parse().unwrap())
        })
        .collect()
}

#[test]
fn pentagon_flip_graph_is_a_five_cycle() {
    let all: Vec<_> = enumerate_triangulations(3).unwrap().collect();
    assert_eq!(all.len(), 5);
    let opts = SearchOptions::default();
    for a in &all {
        let mut by_distance = [0usize; 3];
        for b in &all {
            by_distance[exact_distance(a, b, &opts).unwrap().0] += 1;
        }
        assert_eq!(by_distance, [1, 2, 2]);
    }
}

#[test]
fn exact_distance_matches_oracle_up_to_n6() {
    let opts = SearchOptions::default();
    for n in 1..=6 {
        let all: Vec<_> = enumerate_triangulations(n).unwrap().collect();
        for a in &all {
            let truth = oracle_distances(a);
            for b in &all {
                let (d, path) = exact_distance(a, b, &opts).unwrap();
                assert_eq!(d, truth[b], "{a} -> {b}");
                assert_eq!(path.end().unwrap(), *b);
                assert!(heuristic(a, b) <= d);
                let ub = upper_bound_path(a, b).unwrap();
                assert_eq!(ub.end().unwrap(), *b);
                assert!(d <= ub.len() && ub.len() <= 2 * n - 2);
            }
        }
    }
}

#[test]
fn decomposition_agrees_with_plain_search() {
    let plain = SearchOptions::default();
    let split = SearchOptions {
        decompose: true,
        ..SearchOptions::default()
    };
    for n in 2..=7 {
        let all: Vec<_> = enumerate_triangulations(n).unwrap().collect();
        for a in all.iter().step_by(3) {
            for b in all.iter().step_by(5) {
                let (d, _) = exact_distance(a, b, &plain).unwrap();
                let (e, path) = exact_distance(a, b, &split).unwrap();
                assert_eq!(d, e);
                assert_eq!(path.end().unwrap(), *b);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let all: Vec<_> = enumerate_triangulations(8).unwrap().collect();
    for _ in 0..60 {
        let a = &all[rng.gen_range(0..all.len())];
        let b = &all[rng.gen_range(0..all.len())];
        assert_eq!(
            exact_distance(a, b, &plain).unwrap().0,
            exact_distance(a, b, &split).unwrap().0
        );
    }
}

#[test]
fn metric_axioms_on_random_triples() {
    let opts = SearchOptions::default();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let pools: Vec<Vec<Triangulation>> = (1..=9)
        .map(|n| enumerate_triangulations(n).unwrap().collect())
        .collect();
    for _ in 0..1000 {
        let pool = &pools[rng.gen_range(0..pools.len())];
        let [a, b, c] = [0; 3].map(|_| &pool[rng.gen_range(0..pool.len())]);
        let ab = exact_distance(a, b, &opts).unwrap().0;
        let ba = exact_distance(b, a, &opts).unwrap().0;
        let bc = exact_distance(b, c, &opts).unwrap().0;
        let ac = exact_distance(a, c, &opts).unwrap().0;
        assert_eq!(ab, ba);
        assert_eq!(ab == 0, a == b);
        assert!(ac <= ab + bc);
    }
}

#[test]
fn rotation_distance_equals_flip_distance() {
    let opts = SearchOptions::default();
    let all: Vec<_> = enumerate_triangulations(5).unwrap().collect();
    for a in all.iter().step_by(2) {
        for b in all.iter().step_by(3) {
            let ta = triangulation_to_tree(a);
            let tb = triangulation_to_tree(b);
            assert_eq!(
                rotation_distance(&ta, &tb, &opts).unwrap().0,
                exact_distance(a, b, &opts).unwrap().0
            );
        }
    }
}

#[test]
fn diameter_matches_fixture() {
    let table = fixture();
    assert_eq!(table.first().unwrap().0, 2);
    assert_eq!(table.last().unwrap().0, 8);
    let mut prev = 0;
    for (n, expected) in table {
        let report = diameter(n, DiameterMode::Exhaustive).unwrap();
        assert_eq!(report.value, expected, "n={n}");
        assert!(report.value >= prev);
        prev = report.value;
        let (a, b) = &report.witness;
        let (d, _) = exact_distance(a, b, &SearchOptions::default()).unwrap();
        assert_eq!(d, expected);
    }
}

#[test]
fn fixture_agrees_with_oracle_for_small_n() {
    for (n, expected) in fixture().into_iter().filter(|&(n, _)| n <= 6) {
        assert_eq!(oracle_diameter(n), expected);
    }
}

/// Regenerates `fixtures/diameters.csv` from the oracle alone.
#[test]
#[ignore]
fn regenerate_diameter_fixture() {
    let mut out = String::from("n,diameter\n");
    for n in 2..=8 {
        out.push_str(&format!("{n},{}\n", oracle_diameter(n)));
    }
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/diameters.csv");
    std::fs::write(path, out).unwrap();
}

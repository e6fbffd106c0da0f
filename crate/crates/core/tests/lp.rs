//! LP duality, certificate soundness and complementary slackness, checked
//! with boundary columns rebuilt here from the four-term face formula.

use flipdist::lp::{
    boundary, chain_of, dual_optimal_weights, int, primal_lower_bound, verify_certificate,
    LpOptions, LpStatus, Rational,
};
use flipdist::model::{OrientedTetrahedron, OrientedTriangle, Triangulation};
use flipdist::search::{enumerate_triangulations, exact_distance, SearchOptions};
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `boundary(t) . w` from the literal expansion `(ijl)+(jkl)+(kil)+(kji)`.
fn column_dot(t: &OrientedTetrahedron, w: &flipdist::lp::WeightFunction) -> Rational {
    let [i, j, k, l] = t.vertices();
    let s: Rational = [(i, j, l), (j, k, l), (k, i, l), (k, j, i)]
        .into_iter()
        .map(|(a, b, c)| w.eval_cycle(a, b, c))
        .sum();
    if t.sign() == flipdist::model::Sign::Pos {
        s
    } else {
        -s
    }
}

fn check_pair(a: &Triangulation, b: &Triangulation, exact: usize) {
    let opts = LpOptions::default();
    let r = primal_lower_bound(a, b, &opts).unwrap();
    assert_eq!(r.status, LpStatus::Optimal);
    let m = r.optimum.clone().unwrap();
    // Dual objective equals the primal optimum exactly.
    let target = &chain_of(b) - &chain_of(a);
    assert_eq!(r.dual.pair(&target), m);
    // Primal feasibility and objective.
    let mut image = flipdist::lp::Chain::new();
    let mut total = Rational::zero();
    for (t, x) in &r.primal {
        assert!(*x > Rational::zero());
        for (k, c) in boundary(*t).iter() {
            image.add_term(OrientedTriangle::from_canonical(k, flipdist::model::Sign::Pos), &(c * x));
        }
        total += x;
    }
    assert_eq!(image, target);
    assert_eq!(total, m);
    // Complementary slackness: every used column is tight.
    for t in r.primal.keys() {
        assert_eq!(column_dot(t, &r.dual), int(1));
    }
    // Dual feasibility through the independent verifier.
    assert_eq!(verify_certificate(&r.dual, a, b).unwrap(), m);
    assert!(m <= int(exact as i64));
}

#[test]
fn duality_on_all_pairs_up_to_n5() {
    let search = SearchOptions::default();
    for n in 1..=5 {
        let all: Vec<_> = enumerate_triangulations(n).unwrap().collect();
        for a in &all {
            for b in &all {
                check_pair(a, b, exact_distance(a, b, &search).unwrap().0);
            }
        }
    }
}

#[test]
fn duality_on_random_pairs_up_to_n8() {
    let search = SearchOptions::default();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let n = rng.gen_range(6..=8);
        let all: Vec<_> = enumerate_triangulations(n).unwrap().collect();
        let a = &all[rng.gen_range(0..all.len())];
        let b = &all[rng.gen_range(0..all.len())];
        check_pair(a, b, exact_distance(a, b, &search).unwrap().0);
    }
}

#[test]
fn dual_weights_match_primal() {
    let a = Triangulation::from_pairs(3, &[(1, 4), (1, 3)]).unwrap();
    let b = Triangulation::from_pairs(3, &[(0, 2), (2, 4)]).unwrap();
    let p = primal_lower_bound(&a, &b, &LpOptions::default()).unwrap();
    let d = dual_optimal_weights(&a, &b, &LpOptions::default()).unwrap();
    assert_eq!(p.optimum, d.optimum);
    assert_eq!(p.optimum, Some(int(2)));
}

#[test]
fn chain_difference_has_zero_sum() {
    for n in 1..=6 {
        let all: Vec<_> = enumerate_triangulations(n).unwrap().collect();
        for a in all.iter().step_by(3) {
            for b in all.iter().step_by(4) {
                assert!((&chain_of(a) - &chain_of(b)).coefficient_sum().is_zero());
            }
        }
    }
}

#[test]
fn lp_cap_is_enforced() {
    let a = Triangulation::fan(13, 0).unwrap();
    assert!(primal_lower_bound(&a, &a, &LpOptions::default()).is_err());
}

proptest! {
    #[test]
    fn weights_are_antisymmetric(values in proptest::collection::vec((0usize..8, 0usize..8, 0usize..8, -4i64..5), 1..20),
                                 probe in (0usize..8, 0usize..8, 0usize..8)) {
        let mut w = flipdist::lp::WeightFunction::zero(6);
        for (a, b, c, v) in values {
            if let Some(t) = OrientedTriangle::try_new(a, b, c) {
                w.set(t, int(v));
            }
        }
        let (i, j, k) = probe;
        if let Some(t) = OrientedTriangle::try_new(i, j, k) {
            prop_assert_eq!(w.eval_cycle(i, j, k), -w.eval_cycle(i, k, j));
            prop_assert_eq!(w.eval(t), w.eval_cycle(j, k, i));
        }
    }

    #[test]
    fn certificate_text_round_trips(values in proptest::collection::vec((0usize..7, 0usize..7, 0usize..7, -9i64..10, 1i64..9), 0..30)) {
        let mut w = flipdist::lp::WeightFunction::zero(5);
        for (a, b, c, p, q) in values {
            if let Some(t) = OrientedTriangle::try_new(a, b, c) {
                w.set(t, flipdist::lp::frac(p, q));
            }
        }
        let text = w.to_certificate();
        prop_assert_eq!(flipdist::lp::WeightFunction::parse_certificate(&text).unwrap(), w);
    }
}

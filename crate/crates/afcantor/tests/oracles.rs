mod common;

use std::collections::BTreeSet;

use afcantor::amalgam::{is_representable, minimal_generators};
use afcantor::bratteli::{check_cantor, BratteliDiagram, CheckOptions, Condition, NodeRef};
use afcantor::fdalg::{alg, compose, matrix_absorb, validate_morphism, Matrix, Morphism, Nat};
use afcantor::fraisse::{
    absorb_search, build_fraisse, enumerate_arrows, enumerate_objects, Absorb,
    CategorySpec, Schedule,
};
use afcantor::k0::{check_universal_presentation, extract_k0};
use common::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn matrices(ms: &[Morphism]) -> BTreeSet<(Vec<Nat>, Matrix)> {
    ms.iter().map(|m| (m.cod.dims().to_vec(), m.mult.clone())).collect()
}

#[test]
fn arrow_enumeration_matches_brute_force() {
    for (spec, bound) in [
        (CategorySpec::explicit(&[1, 2, 3]), 2),
        (CategorySpec::explicit(&[2, 4]), 3),
        (CategorySpec::explicit(&[1, 2, 3]).unital(), 2),
    ] {
        for a in [alg(&[1]), alg(&[2]), alg(&[2, 1]), alg(&[1, 1])] {
            let fast = enumerate_arrows(&spec, &a, bound).unwrap();
            let mut slow = Vec::new();
            for b in enumerate_objects(&spec, bound).unwrap() {
                for m in all_morphisms(&a, &b) {
                    let unital_ok = !spec.unital || validate_morphism(&m).unwrap().unital;
                    if unital_ok && has_left_inverse(&m) {
                        slow.push(m);
                    }
                }
            }
            assert_eq!(fast.len(), matrices(&fast).len(), "duplicates from {a}");
            assert_eq!(matrices(&fast), matrices(&slow), "arrows from {a}, unital {}", spec.unital);
        }
    }
}

#[test]
fn representability_matches_knapsack() {
    let gens_list: [&[Nat]; 5] = [&[2, 3], &[6, 10, 15], &[4], &[3, 5, 7], &[5, 8]];
    for gens in gens_list {
        for k in 1..=60 {
            assert_eq!(is_representable(k, gens), brute_representable(k, gens), "{k} over {gens:?}");
        }
    }
}

#[test]
fn generator_examples() {
    assert_eq!(minimal_generators(&[2, 3, 5]).unwrap(), vec![2, 3]);
    assert_eq!(minimal_generators(&[6, 10, 15]).unwrap(), vec![6, 10, 15]);
    assert_eq!(minimal_generators(&[7]).unwrap(), vec![7]);
    assert_eq!(brute_min_generators(&[2, 3, 5]), vec![2, 3]);
}

#[test]
fn matrix_absorb_matches_scalar_scan() {
    let d = alg(&[1, 1]);
    for g in 1..=3 {
        for h in 0..=3 {
            let k = g + 2 * h;
            let gamma = Morphism::new(d.clone(), alg(&[k]), vec![vec![g, h]]).unwrap();
            for p in 1..=6 {
                for q in 0..=6 {
                    let l = p + q;
                    let phi = Morphism::new(d.clone(), alg(&[l]), vec![vec![p, q]]).unwrap();
                    let c = (1..=l).find(|&c| c * g == p && c * h == q && c * k <= l);
                    let got = matrix_absorb(&gamma, &phi).unwrap();
                    assert_eq!(got.as_ref().map(|m| m.mult[0][0]), c, "γ=({g},{h}) φ=({p},{q})");
                    if let Some(delta) = got {
                        assert_eq!(compose(&delta, &gamma).unwrap(), phi);
                    }
                }
            }
        }
    }
}

fn brute_absorb(d: &BratteliDiagram, n: usize, gamma: &Morphism) -> Option<usize> {
    (n..d.depth()).find(|&m| {
        let phi = d.connecting(n, m).unwrap();
        all_morphisms(&gamma.cod, d.level(m))
            .iter()
            .any(|delta| has_left_inverse(delta) && compose(delta, gamma).unwrap() == phi)
    })
}

#[test]
fn absorb_search_finds_least_level() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut found = 0;
    for _ in 0..60 {
        let d = random_diagram(&mut rng, 4, 3, 2, true);
        let n = 0;
        let gamma = random_ep(&mut rng, d.level(n), 3, 3, false).fwd;
        let expect = brute_absorb(&d, n, &gamma);
        match absorb_search(&d, n, &gamma, n, d.depth() - 1).unwrap() {
            Absorb::Found { level, delta } => {
                found += 1;
                assert_eq!(Some(level), expect, "{d:?} {gamma:?}");
                assert!(validate_morphism(&delta).unwrap().left_invertible);
                assert_eq!(compose(&delta, &gamma).unwrap(), d.connecting(n, level).unwrap());
            }
            other => assert_eq!(expect, None, "{other:?} for {gamma:?} in {d:?}"),
        }
    }
    assert!(found > 5);
}

#[test]
fn composition_keeps_left_invertibility() {
    let algs = sorted_algebras(3, 2);
    for a in &algs {
        for b in &algs {
            let ab: Vec<_> = all_morphisms(a, b).into_iter().filter(has_left_inverse).collect();
            for c in &algs {
                for g in all_morphisms(b, c).into_iter().filter(has_left_inverse) {
                    for f in &ab {
                        assert!(validate_morphism(&compose(&g, f).unwrap()).unwrap().left_invertible);
                    }
                }
            }
        }
    }
}

fn brute_paths(d: &BratteliDiagram, a: NodeRef, b: NodeRef) -> Nat {
    if a.level == b.level {
        return Nat::from(a == b);
    }
    let step = d.step(a.level);
    (0..step.cod.len())
        .map(|j| step.mult[j][a.summand] * brute_paths(d, NodeRef::new(a.level + 1, j), b))
        .sum()
}

#[test]
fn path_counts_match_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..30 {
        let d = random_diagram(&mut rng, 4, 4, 3, false);
        for a in d.nodes().collect::<Vec<_>>() {
            for b in d.nodes().filter(|b| b.level >= a.level).collect::<Vec<_>>() {
                assert_eq!(d.path_count(a, b).unwrap(), brute_paths(&d, a, b));
            }
        }
    }
}

#[test]
fn small_engine_run_has_each_dimension() {
    let (d, _) = build_fraisse(&CategorySpec::all_dims(4), 120, Schedule::default()).unwrap();
    let r = check_cantor(
        &d,
        &CheckOptions {
            universe: Some(vec![1, 2, 3, 4]),
            source_levels: Some(2),
            ..Default::default()
        },
    )
    .unwrap();
    assert_eq!(r.count(Condition::D3, false), 0);
    assert_eq!(r.count(Condition::D3, true), 4);
}

#[test]
fn one_two_three_presentation() {
    let (d, _) = build_fraisse(&CategorySpec::explicit(&[1, 2, 3]), 120, Schedule::default()).unwrap();
    let opts = CheckOptions {
        universe: Some(vec![1, 2, 3]),
        source_levels: Some(2),
        ..Default::default()
    };
    let r = check_universal_presentation(&extract_k0(&d), d.depth(), &opts).unwrap();
    assert!(r.all_hold(), "{:?}", r.conditions);
}

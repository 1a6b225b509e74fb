//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`). The process fails if any
//! criterion fails, except those listed in `KNOWN_OPEN`, which are reported
//! but do not fail the run.

mod common;

use std::time::{Duration, Instant};

use afcantor::amalgam::{identities, minimal_generators, proper_amalgamate};
use afcantor::bratteli::{cantorize, check_cantor, tensor, BratteliDiagram, CheckOptions, Condition, Instance};
use afcantor::fdalg::{alg, compose, mor, validate_morphism, Nat};
use afcantor::fraisse::{
    absorb_search, build_fraisse, intertwine, supernatural, universal_surjection_witness, verify_intertwining,
    verify_section, Absorb, CategorySpec, Intertwining, Schedule, Section,
};
use afcantor::k0::{check_universal_presentation, extract_k0, translate};
use common::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const EP_CASES: usize = 1000;
const EP_LIMIT: Duration = Duration::from_secs(5);
const LEFT_INVERSE_LIMIT: Duration = Duration::from_secs(60);
const PREFIX_LIMIT: Duration = Duration::from_secs(120);
const GENERATORS_LIMIT: Duration = Duration::from_secs(30);

/// The all-dimensions prefix: initial cap 6, default schedule.
const PREFIX_CAP: Nat = 6;
const PREFIX_STEPS: usize = 300;
const PREFIX_SOURCE_LEVELS: usize = 3;

/// The {2,3,5,11} run whose tensor square is checked.
const TENSOR_STEPS: usize = 20;
const TENSOR_LEAD: usize = 0;
const TENSOR_DEPTH: usize = 12;

const INTERTWINE_STEPS: usize = 200;
const INTERTWINE_LINKS: usize = 6;

const SURJECT_CASES: usize = 20;
const UHF_STEPS: usize = 60;

/// Criteria that fail at this scale; see the README.
const KNOWN_OPEN: &[u32] = &[8];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn prefix() -> BratteliDiagram {
    build_fraisse(&CategorySpec::all_dims(PREFIX_CAP), PREFIX_STEPS, Schedule::default())
        .unwrap()
        .0
}

fn prefix_options() -> CheckOptions {
    CheckOptions {
        universe: Some((1..=6).collect()),
        source_levels: Some(PREFIX_SOURCE_LEVELS),
        ..Default::default()
    }
}

fn amalgamation_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let t = Instant::now();
    let mut bad = 0;
    let mut unital_cases = 0;
    for case in 0..EP_CASES {
        let unital = case % 2 == 1;
        let d = random_algebra(&mut rng, 8, 3);
        let ep1 = random_ep(&mut rng, &d, 8, 4, unital);
        let ep2 = random_ep(&mut rng, &d, 8, 4, unital);
        let am = proper_amalgamate(&ep1, &ep2, unital).unwrap();
        let mut ok = identities(&ep1, &ep2, &am).unwrap().iter().all(|i| i.holds);
        ok &= am.left.is_valid().unwrap() && am.right.is_valid().unwrap();
        if unital {
            unital_cases += 1;
            ok &= validate_morphism(&am.left.fwd).unwrap().unital && validate_morphism(&am.right.fwd).unwrap().unital;
        }
        bad += usize::from(!ok);
    }
    let el = t.elapsed();
    outcome(
        bad == 0 && el < EP_LIMIT,
        format!("{EP_CASES} pairs ({unital_cases} unital), {bad} failures, {el:.2?}"),
    )
}

fn left_invertibility_oracle() -> Outcome {
    let t = Instant::now();
    let algs = sorted_algebras(5, 3);
    let (mut total, mut bad) = (0usize, 0usize);
    for a in &algs {
        for b in &algs {
            for m in all_morphisms(a, b) {
                total += 1;
                if validate_morphism(&m).unwrap().left_invertible != has_left_inverse(&m) {
                    bad += 1;
                }
            }
        }
    }
    let el = t.elapsed();
    outcome(
        bad == 0 && el < LEFT_INVERSE_LIMIT,
        format!("{total} morphisms, {bad} disagreements, {el:.2?}"),
    )
}

fn engine_log_replay() -> Outcome {
    let (d, log) = build_fraisse(&CategorySpec::all_dims(6), 40, Schedule::default()).unwrap();
    let top = d.depth() - 1;
    let exact = log
        .records
        .iter()
        .filter(|r| {
            let q = &r.request;
            match absorb_search(&d, q.stage, &q.arrow, q.stage, top).unwrap() {
                Absorb::Found { level, delta } => {
                    level <= r.level
                        && compose(&delta, &q.arrow).unwrap() == d.connecting(q.stage, level).unwrap()
                        && compose(&r.delta, &q.arrow).unwrap() == d.connecting(q.stage, r.level).unwrap()
                }
                _ => false,
            }
        })
        .count();
    outcome(
        exact == log.records.len() && exact > 0,
        format!("{exact}/{} records replay exactly", log.records.len()),
    )
}

fn binary_certified() -> Outcome {
    let d = BratteliDiagram::binary(8);
    let r = check_cantor(&d, &CheckOptions::default()).unwrap();
    let open: usize = [Condition::D0, Condition::D1, Condition::D2]
        .iter()
        .map(|&c| r.count(c, false))
        .sum();
    outcome(
        r.is_certified() && open == 0,
        format!("{:?}, {} witnessed, {open} open", r.verdict, r.witnessed.len()),
    )
}

fn universal_prefix() -> Outcome {
    let t = Instant::now();
    let d = prefix();
    let r = check_cantor(&d, &prefix_options()).unwrap();
    let el = t.elapsed();
    let open: Vec<usize> = [Condition::D1, Condition::D2, Condition::D3]
        .iter()
        .map(|&c| r.count(c, false))
        .collect();
    outcome(
        open.iter().all(|&n| n == 0) && r.count(Condition::D3, true) == 6 && el < PREFIX_LIMIT,
        format!(
            "depth {}, open D1/D2/D3 = {open:?}, witnessed D2 {}, {el:.2?}",
            d.depth(),
            r.count(Condition::D2, true)
        ),
    )
}

fn tensor_counterexample() -> Outcome {
    let (d, _) = build_fraisse(&CategorySpec::explicit(&[2, 3, 5, 11]), TENSOR_STEPS, Schedule { lead: TENSOR_LEAD })
        .unwrap();
    let sq = tensor(&d, &d).unwrap().truncate(TENSOR_DEPTH);
    let opts = CheckOptions {
        max_subset: Some(1),
        ..Default::default()
    };
    let r = check_cantor(&sq, &opts).unwrap();
    let hits = r
        .unwitnessed
        .iter()
        .filter(|i| {
            matches!(i, Instance::D2 { level, sources, mult, target }
                if sources.len() == 1 && mult[0] == 1 && *target == 22 && sq.level(*level).dim(sources[0]) == 15)
        })
        .count();
    outcome(
        sq.depth() == TENSOR_DEPTH && hits > 0 && !r.is_certified(),
        format!("depth {}, {hits} open instances (15, x=1, 22)", sq.depth()),
    )
}

fn uniqueness_intertwining() -> Outcome {
    let spec = CategorySpec::explicit(&[1, 2]);
    let (a, _) = build_fraisse(&spec, INTERTWINE_STEPS, Schedule { lead: 2 }).unwrap();
    let (b, _) = build_fraisse(&spec, INTERTWINE_STEPS, Schedule { lead: 0 }).unwrap();
    let top = a.depth().min(b.depth()) - 1;
    match intertwine(&a, &b, INTERTWINE_LINKS, top).unwrap() {
        Intertwining::Found { links } => {
            let ok = verify_intertwining(&a, &b, &links).unwrap();
            outcome(
                a != b && ok && links.len() >= 4,
                format!("{} links, triangles exact: {ok}, runs differ: {}", links.len(), a != b),
            )
        }
        other => outcome(false, format!("{other:?}")),
    }
}

fn universality_witness() -> Outcome {
    let u = prefix();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut complete = 0;
    let mut reasons = Vec::new();
    for _ in 0..SURJECT_CASES {
        let d = random_diagram(&mut rng, 3, 4, 2, true);
        let w = universal_surjection_witness(&u, &d, 3, u.depth() - 1).unwrap();
        let verified = match &w.section {
            Section::Found { rounds } => verify_section(&u, &w.cover, rounds).unwrap(),
            _ => false,
        };
        if w.is_complete() && verified {
            complete += 1;
        } else {
            reasons.push(match &w.section {
                Section::Found { .. } => "found".to_string(),
                Section::Exhausted { rounds } => format!("exhausted@{}", rounds.len()),
                Section::Absent { dim, .. } => format!("absent dim {dim}"),
            });
        }
    }
    reasons.sort();
    reasons.dedup();
    // [1] -> [2] -> [6], multiplicities 2 and 3
    let d = BratteliDiagram::new(
        vec![alg(&[1]), alg(&[2]), alg(&[6])],
        vec![mor(&[1], &[2], &[&[2]]), mor(&[2], &[6], &[&[3]])],
    )
    .unwrap();
    let w = universal_surjection_witness(&u, &d, 3, u.depth() - 1).unwrap();
    let multiplying = match &w.section {
        Section::Found { rounds } => w.is_complete() && verify_section(&u, &w.cover, rounds).unwrap(),
        _ => false,
    };
    outcome(
        complete == SURJECT_CASES && multiplying,
        format!(
            "{complete}/{SURJECT_CASES} random diagrams complete (failures: {}); multiplying diagram complete: {multiplying}",
            reasons.join(", ")
        ),
    )
}

fn cantorization() -> Outcome {
    let (small, _) = build_fraisse(&CategorySpec::explicit(&[1]), 10, Schedule::default()).unwrap();
    let candidates = [
        ("binary(4)", BratteliDiagram::binary(4)),
        ("{1} run", small),
        ("binary(3)", BratteliDiagram::binary(3)),
    ];
    let mut checked = 0;
    let mut bad = Vec::new();
    for (name, d) in &candidates {
        if !check_cantor(d, &CheckOptions::default()).unwrap().is_certified() {
            continue;
        }
        checked += 1;
        let c = cantorize(d).unwrap();
        if !check_cantor(&c, &CheckOptions::default()).unwrap().is_certified() {
            bad.push(*name);
        }
    }
    outcome(
        checked > 0 && bad.is_empty(),
        format!("{checked} passing diagrams cantorized, failures {bad:?}"),
    )
}

fn weakly_initial_oracle() -> Outcome {
    let t = Instant::now();
    let (mut total, mut bad) = (0usize, 0usize);
    for mask in 1u32..(1 << 12) {
        if mask.count_ones() > 5 {
            continue;
        }
        let set: Vec<Nat> = (0..12).filter(|i| mask >> i & 1 == 1).map(|i| i as Nat + 1).collect();
        total += 1;
        if minimal_generators(&set).unwrap() != brute_min_generators(&set) {
            bad += 1;
        }
    }
    let el = t.elapsed();
    outcome(
        bad == 0 && el < GENERATORS_LIMIT,
        format!("{total} sets, {bad} disagreements, {el:.2?}"),
    )
}

fn uhf_exponents() -> Outcome {
    let (d, _) = build_fraisse(&CategorySpec::all_dims(6).uhf(), UHF_STEPS, Schedule::default()).unwrap();
    let table = supernatural(&d, 13);
    let exp = |p: Nat| table.iter().find(|e| e.prime == p).map_or(0, |e| e.exponent);
    let shown: Vec<String> = [2, 3, 5, 7, 11, 13].iter().map(|&p| format!("{p}^{}", exp(p))).collect();
    outcome(
        [2, 3, 5, 7, 11, 13].iter().all(|&p| exp(p) >= 3),
        shown.join(" "),
    )
}

fn k0_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut bad = 0;
    for i in 0..200 {
        let d = random_diagram(&mut rng, 2 + i % 4, 6, 3, false);
        if translate(&extract_k0(&d)).ok().as_ref() != Some(&d) {
            bad += 1;
        }
    }
    let u = prefix();
    let r = check_universal_presentation(&extract_k0(&u), u.depth(), &prefix_options()).unwrap();
    let shown: Vec<String> = r
        .conditions
        .iter()
        .map(|c| format!("{}={}/{}", c.condition, c.witnessed, c.witnessed + c.unwitnessed))
        .collect();
    outcome(
        bad == 0 && r.conditions.len() == 3 && r.all_hold(),
        format!("200 round trips, {bad} mismatches; {}", shown.join(" ")),
    )
}

fn main() {
    let criteria: Vec<(u32, &str, fn() -> Outcome)> = vec![
        (1, "amalgamation soundness", amalgamation_soundness),
        (2, "left-invertibility oracle", left_invertibility_oracle),
        (3, "engine log replay", engine_log_replay),
        (4, "binary diagram certified", binary_certified),
        (5, "universal diagram prefix", universal_prefix),
        (6, "tensor square counterexample", tensor_counterexample),
        (7, "intertwining of two runs", uniqueness_intertwining),
        (8, "universal surjection witness", universality_witness),
        (9, "cantorization", cantorization),
        (10, "weakly initial oracle", weakly_initial_oracle),
        (11, "UHF exponents", uhf_exponents),
        (12, "K0 round trip and conditions", k0_round_trip),
    ];
    let filter: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut unexpected = 0;
    for (n, name, f) in criteria {
        if !filter.is_empty() && !filter.contains(&n) {
            continue;
        }
        let o = f();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        let known = if !o.pass && KNOWN_OPEN.contains(&n) { " (known open)" } else { "" };
        println!("{tag} {n:>2} {name}: {}{known}", o.detail);
        if !o.pass && !KNOWN_OPEN.contains(&n) {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        eprintln!("{unexpected} criteria failed");
        std::process::exit(1);
    }
}

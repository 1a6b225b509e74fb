//! Brute-force oracles and random generators shared by the test targets.
#![allow(dead_code)]

use afcantor::bratteli::BratteliDiagram;
use afcantor::fdalg::{row_weight, validate_morphism, EpPair, FdAlgebra, Matrix, Morphism, Nat};
use rand::seq::SliceRandom;
use rand::Rng;

/// Rows `x ≥ 0` over `dims` with `Σ x_i·dims_i ≤ cap`.
pub fn rows_within(dims: &[Nat], cap: Nat) -> Vec<Vec<Nat>> {
    let mut out = vec![vec![]];
    for &d in dims {
        let mut next = Vec::new();
        for r in &out {
            let used: Nat = r.iter().zip(dims).map(|(x, d)| x * d).sum();
            let mut x = 0;
            while used + x * d <= cap {
                let mut r2 = r.clone();
                r2.push(x);
                next.push(r2);
                x += 1;
            }
        }
        out = next;
    }
    out
}

/// Whether some homomorphism `π: cod → dom` has `π ∘ φ = id`, by trying every
/// capacity-respecting row of `π`. Rows of `π` are independent, so each one
/// is searched on its own.
pub fn has_left_inverse(phi: &Morphism) -> bool {
    let (a, b) = (&phi.dom, &phi.cod);
    (0..a.len()).all(|i| {
        rows_within(b.dims(), a.dim(i)).iter().any(|p| {
            (0..a.len()).all(|c| {
                let v: Nat = (0..b.len()).map(|j| p[j] * phi.mult[j][c]).sum();
                v == Nat::from(c == i)
            })
        })
    })
}

/// Every homomorphism `a → b`.
pub fn all_morphisms(a: &FdAlgebra, b: &FdAlgebra) -> Vec<Morphism> {
    let choices: Vec<_> = b.dims().iter().map(|&k| rows_within(a.dims(), k)).collect();
    let mut out = vec![Matrix::new()];
    for c in &choices {
        out = out
            .into_iter()
            .flat_map(|m| {
                c.iter().map(move |r| {
                    let mut m2 = m.clone();
                    m2.push(r.clone());
                    m2
                })
            })
            .collect();
    }
    out.into_iter()
        .map(|m| Morphism::new(a.clone(), b.clone(), m).unwrap())
        .collect()
}

/// Nondecreasing tuples with entries in `1..=max_dim`, up to `max_len` long.
pub fn sorted_algebras(max_dim: Nat, max_len: usize) -> Vec<FdAlgebra> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<Nat>> = vec![vec![]];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|v| {
                let lo = v.last().copied().unwrap_or(1);
                (lo..=max_dim).map(move |k| {
                    let mut w = v.clone();
                    w.push(k);
                    w
                })
            })
            .collect();
        out.extend(layer.iter().map(|v| FdAlgebra::new(v.clone()).unwrap()));
    }
    out
}

/// `k` is a sum of elements of `gens`, by trying every coefficient vector.
pub fn brute_representable(k: Nat, gens: &[Nat]) -> bool {
    fn go(k: Nat, gens: &[Nat]) -> bool {
        match gens.split_first() {
            None => k == 0,
            Some((&g, rest)) => (0..=k / g).any(|c| go(k - c * g, rest)),
        }
    }
    go(k, gens)
}

/// The smallest subset of `set` from which every element is a sum, by trying
/// all subsets. Panics if two different subsets of that size work.
pub fn brute_min_generators(set: &[Nat]) -> Vec<Nat> {
    let mut s = set.to_vec();
    s.sort_unstable();
    s.dedup();
    let mut best: Option<Vec<Nat>> = None;
    for mask in 1u32..(1 << s.len()) {
        let g: Vec<Nat> = (0..s.len()).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect();
        if !s.iter().all(|&k| brute_representable(k, &g)) {
            continue;
        }
        match &best {
            Some(b) if b.len() < g.len() => {}
            Some(b) if b.len() == g.len() => panic!("two minimal generating sets {b:?} {g:?}"),
            _ => best = Some(g),
        }
    }
    best.expect("the set generates itself")
}

/// A random left-invertible EP-pair out of `d`: the summands of `d` placed at
/// shuffled positions, plus extra summands with random rows. Unital pairs
/// size each extra summand to its row.
pub fn random_ep(rng: &mut impl Rng, d: &FdAlgebra, max_dim: Nat, max_len: usize, unital: bool) -> EpPair {
    let mut rows: Vec<(Nat, Vec<Nat>)> = (0..d.len())
        .map(|i| {
            let mut r = vec![0; d.len()];
            r[i] = 1;
            (d.dim(i), r)
        })
        .collect();
    let extras = rng.gen_range(0..=max_len - d.len());
    for _ in 0..extras {
        let row: Vec<Nat> = (0..d.len()).map(|_| rng.gen_range(0..=2)).collect();
        let w = row_weight(&row, d.dims()).unwrap();
        let k = if unital { w } else { rng.gen_range(w.max(1)..=max_dim.max(w.max(1))) };
        if k == 0 || k > max_dim {
            continue;
        }
        rows.push((k, row));
    }
    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.shuffle(rng);
    let cod = FdAlgebra::new(order.iter().map(|&j| rows[j].0).collect()).unwrap();
    let fwd = Morphism::new(d.clone(), cod.clone(), order.iter().map(|&j| rows[j].1.clone()).collect()).unwrap();
    // back picks the shuffled position of each summand of d
    let back_rows: Matrix = (0..d.len())
        .map(|i| {
            let pos = order.iter().position(|&j| j == i).unwrap();
            let mut r = vec![0; cod.len()];
            r[pos] = 1;
            r
        })
        .collect();
    let back = Morphism::new(cod, d.clone(), back_rows).unwrap();
    EpPair { fwd, back }
}

pub fn random_algebra(rng: &mut impl Rng, max_dim: Nat, max_len: usize) -> FdAlgebra {
    let n = rng.gen_range(1..=max_len);
    FdAlgebra::new((0..n).map(|_| rng.gen_range(1..=max_dim)).collect()).unwrap()
}

/// A random diagram whose steps are homomorphisms; with `embedding` every
/// step is also injective.
pub fn random_diagram(rng: &mut impl Rng, depth: usize, max_dim: Nat, max_len: usize, embedding: bool) -> BratteliDiagram {
    loop {
        let levels: Vec<FdAlgebra> = (0..depth).map(|_| random_algebra(rng, max_dim, max_len)).collect();
        let mats: Vec<Matrix> = (0..depth - 1)
            .map(|n| {
                levels[n + 1]
                    .dims()
                    .iter()
                    .map(|&k| {
                        let opts = rows_within(levels[n].dims(), k);
                        opts[rng.gen_range(0..opts.len())].clone()
                    })
                    .collect()
            })
            .collect();
        let d = BratteliDiagram::from_matrices(levels, mats).unwrap();
        if !embedding || d.steps().iter().all(|s| validate_morphism(s).unwrap().embedding) {
            return d;
        }
    }
}

/// A random diagram whose steps are all left-invertible.
pub fn random_ep_diagram(rng: &mut impl Rng, depth: usize, max_dim: Nat, max_len: usize) -> BratteliDiagram {
    let mut d = BratteliDiagram::single(random_algebra(rng, max_dim, max_len));
    for _ in 1..depth {
        let top = d.level(d.depth() - 1).clone();
        let step = random_ep(rng, &top, max_dim, top.len() + max_len, false).fwd;
        d.push_level(step.cod.clone(), step).unwrap();
    }
    d
}

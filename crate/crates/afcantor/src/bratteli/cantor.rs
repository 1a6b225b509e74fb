//! Certificate search for the Cantor property on a finite prefix.
//!
//! * D0: every step has a left inverse.
//! * D1: every node reaches two distinct nodes of its own dimension at some
//!   later level.
//! * D2: for a level `n`, sources `S`, multiplicities `x ≥ 1` on `S` and a
//!   dimension `ℓ ≥ Σ x_s·dim_s` (equality in the unital case), some node of
//!   dimension `ℓ` at a level `m ≥ n` receives exactly `x_s` paths from each
//!   `s ∈ S`. Paths from nodes outside `S` are not constrained.
//! * D3: every dimension of the universe occurs.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{BratteliDiagram, NodeRef};
use crate::error::Result;
use crate::fdalg::{mat_mul, validate_morphism, Morphism, Nat};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOptions {
    /// Dimensions that must occur (D3). `None` skips D3.
    pub universe: Option<Vec<Nat>>,
    pub unital: bool,
    /// D1 and D2 sources are taken from levels below this bound, and never
    /// from the last level. `None` means every level but the last.
    pub source_levels: Option<usize>,
    /// Largest source set tried for D2. `None` means no bound beyond the
    /// dimension budget.
    pub max_subset: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Condition {
    D0,
    D1,
    D2,
    D3,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "condition")]
pub enum Instance {
    D0 { step: usize },
    D1 { node: NodeRef },
    D2 {
        level: usize,
        sources: Vec<usize>,
        mult: Vec<Nat>,
        target: Nat,
    },
    D3 { dim: Nat },
}

impl Instance {
    pub fn condition(&self) -> Condition {
        match self {
            Instance::D0 { .. } => Condition::D0,
            Instance::D1 { .. } => Condition::D1,
            Instance::D2 { .. } => Condition::D2,
            Instance::D3 { .. } => Condition::D3,
        }
    }
}

impl std::fmt::Display for Instance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Instance::D0 { step } => write!(f, "D0 step {step}"),
            Instance::D1 { node } => write!(f, "D1 node {node}"),
            Instance::D2 {
                level,
                sources,
                mult,
                target,
            } => {
                write!(f, "D2 level {level} sources")?;
                for (s, x) in sources.iter().zip(mult) {
                    write!(f, " {s}x{x}")?;
                }
                write!(f, " target {target}")
            }
            Instance::D3 { dim } => write!(f, "D3 dim {dim}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Witness {
    /// Unit row chosen for each summand of the step's domain.
    Section { sigma: Vec<usize> },
    Pair { first: NodeRef, second: NodeRef },
    Node { node: NodeRef },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    CertifiedAtDepth,
    ViolationsOpen,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CantorReport {
    pub verdict: Verdict,
    pub depth: usize,
    pub unital: bool,
    pub notes: Vec<String>,
    pub witnessed: Vec<(Instance, Witness)>,
    pub unwitnessed: Vec<Instance>,
}

impl CantorReport {
    pub fn count(&self, c: Condition, witnessed: bool) -> usize {
        if witnessed {
            self.witnessed.iter().filter(|(i, _)| i.condition() == c).count()
        } else {
            self.unwitnessed.iter().filter(|i| i.condition() == c).count()
        }
    }

    pub fn is_certified(&self) -> bool {
        self.verdict == Verdict::CertifiedAtDepth
    }
}

pub fn check_cantor(d: &BratteliDiagram, opts: &CheckOptions) -> Result<CantorReport> {
    let mut witnessed = Vec::new();
    let mut unwitnessed = Vec::new();
    let mut record = |inst: Instance, w: Option<Witness>| match w {
        Some(w) => witnessed.push((inst, w)),
        None => unwitnessed.push(inst),
    };

    for (n, s) in d.steps().iter().enumerate() {
        let w = if validate_morphism(s)?.homomorphism {
            s.sigma().map(|sigma| Witness::Section { sigma })
        } else {
            None
        };
        record(Instance::D0 { step: n }, w);
    }

    let src_end = opts
        .source_levels
        .unwrap_or(usize::MAX)
        .min(d.depth().saturating_sub(1));

    for n in 0..src_end {
        for s in 0..d.level(n).len() {
            let v = NodeRef::new(n, s);
            record(Instance::D1 { node: v }, d1_witness(d, v));
        }
    }

    let dims = d.dim_set();
    for n in 0..src_end {
        d2_level(d, n, &dims, opts, &mut record)?;
    }

    if let Some(u) = &opts.universe {
        let mut u = u.clone();
        u.sort_unstable();
        u.dedup();
        for k in u {
            let w = d.nodes().find(|&v| d.dim(v) == k).map(|node| Witness::Node { node });
            record(Instance::D3 { dim: k }, w);
        }
    }

    let mut notes = Vec::new();
    if opts.unital {
        notes.push("unital: D2 targets use equality; D1 is checked as in the non-unital case".into());
    }
    if src_end < d.depth().saturating_sub(1) {
        notes.push(format!("D1 and D2 sources limited to levels below {src_end}"));
    }
    if let Some(k) = opts.max_subset {
        notes.push(format!("D2 source sets limited to {k} nodes"));
    }
    Ok(CantorReport {
        verdict: if unwitnessed.is_empty() {
            Verdict::CertifiedAtDepth
        } else {
            Verdict::ViolationsOpen
        },
        depth: d.depth(),
        unital: opts.unital,
        notes,
        witnessed,
        unwitnessed,
    })
}

fn d1_witness(d: &BratteliDiagram, v: NodeRef) -> Option<Witness> {
    let want = d.dim(v);
    let mut reach: Vec<bool> = (0..d.level(v.level).len()).map(|s| s == v.summand).collect();
    for m in v.level + 1..d.depth() {
        let step = &d.step(m - 1).mult;
        reach = step
            .iter()
            .map(|row| row.iter().zip(&reach).any(|(&x, &r)| r && x != 0))
            .collect();
        let mut hits = (0..reach.len()).filter(|&t| reach[t] && d.level(m).dim(t) == want);
        if let (Some(a), Some(b)) = (hits.next(), hits.next()) {
            return Some(Witness::Pair {
                first: NodeRef::new(m, a),
                second: NodeRef::new(m, b),
            });
        }
    }
    None
}

/// Nodes at levels `≥ n` with their path counts from level `n`, by dimension.
fn rows_from(d: &BratteliDiagram, n: usize) -> Result<HashMap<Nat, Vec<(NodeRef, Vec<Nat>)>>> {
    let mut by_dim: HashMap<Nat, Vec<(NodeRef, Vec<Nat>)>> = HashMap::new();
    let ln = d.level(n).len();
    let mut p = Morphism::identity(d.level(n)).mult;
    for m in n..d.depth() {
        if m > n {
            p = mat_mul(&d.step(m - 1).mult, &p, d.level(m - 1).len(), ln)?;
        }
        for (t, row) in p.iter().enumerate() {
            by_dim
                .entry(d.level(m).dim(t))
                .or_default()
                .push((NodeRef::new(m, t), row.clone()));
        }
    }
    Ok(by_dim)
}

fn d2_level(
    d: &BratteliDiagram,
    n: usize,
    dims: &[Nat],
    opts: &CheckOptions,
    record: &mut impl FnMut(Instance, Option<Witness>),
) -> Result<()> {
    let a = d.level(n).dims().to_vec();
    if a.is_empty() {
        return Ok(());
    }
    let max_l = *dims.last().unwrap_or(&0);
    let max_subset = opts.max_subset.unwrap_or(usize::MAX);
    let by_dim = rows_from(d, n)?;

    let mut sources = Vec::new();
    let mut mult = Vec::new();
    // depth-first over sources in index order, each with x ≥ 1
    fn walk(
        start: usize,
        weight: Nat,
        a: &[Nat],
        max_l: Nat,
        max_subset: usize,
        sources: &mut Vec<usize>,
        mult: &mut Vec<Nat>,
        visit: &mut dyn FnMut(&[usize], &[Nat], Nat),
    ) {
        if sources.len() == max_subset {
            return;
        }
        for s in start..a.len() {
            let mut x: Nat = 1;
            while let Some(w) = a[s].checked_mul(x).and_then(|t| t.checked_add(weight)) {
                if w > max_l {
                    break;
                }
                sources.push(s);
                mult.push(x);
                visit(sources, mult, w);
                walk(s + 1, w, a, max_l, max_subset, sources, mult, visit);
                sources.pop();
                mult.pop();
                x += 1;
            }
        }
    }

    let mut visit = |srcs: &[usize], xs: &[Nat], w: Nat| {
        for &l in dims.iter().filter(|&&l| if opts.unital { l == w } else { l >= w }) {
            let hit = by_dim.get(&l).and_then(|nodes| {
                nodes
                    .iter()
                    .find(|(_, row)| srcs.iter().zip(xs).all(|(&s, &x)| row[s] == x))
                    .map(|(v, _)| *v)
            });
            record(
                Instance::D2 {
                    level: n,
                    sources: srcs.to_vec(),
                    mult: xs.to_vec(),
                    target: l,
                },
                hit.map(|node| Witness::Node { node }),
            );
        }
    };
    walk(0, 0, &a, max_l, max_subset, &mut sources, &mut mult, &mut visit);
    Ok(())
}

/// Re-check a witness against the diagram from scratch.
pub fn verify_witness(d: &BratteliDiagram, inst: &Instance, w: &Witness, unital: bool) -> Result<bool> {
    Ok(match (inst, w) {
        (Instance::D0 { step }, Witness::Section { sigma }) => {
            let s = d.step(*step);
            validate_morphism(s)?.homomorphism
                && sigma.len() == s.dom.len()
                && sigma.iter().enumerate().all(|(i, &j)| {
                    s.cod.dim(j) == s.dom.dim(i)
                        && s.mult[j].iter().enumerate().all(|(k, &x)| x == Nat::from(k == i))
                })
                && {
                    let mut u = sigma.clone();
                    u.sort_unstable();
                    u.dedup();
                    u.len() == sigma.len()
                }
        }
        (Instance::D1 { node }, Witness::Pair { first, second }) => {
            first != second
                && first.level == second.level
                && first.level > node.level
                && d.dim(*first) == d.dim(*node)
                && d.dim(*second) == d.dim(*node)
                && d.path_count(*node, *first)? > 0
                && d.path_count(*node, *second)? > 0
        }
        (
            Instance::D2 {
                level,
                sources,
                mult,
                target,
            },
            Witness::Node { node },
        ) => {
            let a = d.level(*level);
            let w = sources
                .iter()
                .zip(mult)
                .try_fold(0 as Nat, |acc, (&s, &x)| a.dim(s).checked_mul(x).and_then(|t| acc.checked_add(t)))
                .unwrap_or(Nat::MAX);
            let budget = if unital { w == *target } else { w <= *target };
            budget
                && node.level >= *level
                && d.dim(*node) == *target
                && mult.iter().all(|&x| x >= 1)
                && sources.iter().zip(mult).try_fold(true, |ok, (&s, &x)| {
                    Ok::<_, crate::Error>(ok && d.path_count(NodeRef::new(*level, s), *node)? == x)
                })?
        }
        (Instance::D3 { dim }, Witness::Node { node }) => d.contains(*node) && d.dim(*node) == *dim,
        _ => false,
    })
}

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{BratteliDiagram, NodeRef};
use crate::error::{malformed, Result};
use crate::fdalg::{FdAlgebra, Matrix};

/// A set of nodes, meant to be directed and hereditary.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IdealSet {
    nodes: BTreeSet<NodeRef>,
}

impl IdealSet {
    pub fn from_nodes(nodes: impl IntoIterator<Item = NodeRef>) -> Self {
        IdealSet {
            nodes: nodes.into_iter().collect(),
        }
    }

    pub fn contains(&self, v: NodeRef) -> bool {
        self.nodes.contains(&v)
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeRef> + '_ {
        self.nodes.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    fn check_in(&self, d: &BratteliDiagram) -> Result<()> {
        match self.nodes.iter().find(|v| !d.contains(**v)) {
            Some(v) => Err(malformed(format!("node {v} is not in the diagram"))),
            None => Ok(()),
        }
    }
}

fn successors(d: &BratteliDiagram, v: NodeRef) -> impl Iterator<Item = NodeRef> + '_ {
    let rows: &[Vec<_>] = if v.level + 1 < d.depth() {
        &d.step(v.level).mult
    } else {
        &[]
    };
    rows.iter()
        .enumerate()
        .filter(move |(_, r)| r[v.summand] != 0)
        .map(move |(t, _)| NodeRef::new(v.level + 1, t))
}

/// Least superset of `seed` that is closed downward along edges and contains
/// every non-final node whose successors all lie in it.
pub fn ideal_closure(d: &BratteliDiagram, seed: &IdealSet) -> Result<IdealSet> {
    seed.check_in(d)?;
    let mut j = seed.clone();
    let last = d.depth() - 1;
    loop {
        let mut changed = false;
        for n in 0..d.depth() {
            for s in 0..d.level(n).len() {
                let v = NodeRef::new(n, s);
                if j.contains(v) {
                    let succ: Vec<_> = successors(d, v).collect();
                    for t in succ {
                        changed |= j.nodes.insert(t);
                    }
                }
            }
        }
        for n in (0..last).rev() {
            for s in 0..d.level(n).len() {
                let v = NodeRef::new(n, s);
                if j.contains(v) {
                    continue;
                }
                let mut succ = successors(d, v).peekable();
                if succ.peek().is_some() && succ.all(|t| j.contains(t)) {
                    j.nodes.insert(v);
                    changed = true;
                }
            }
        }
        if !changed {
            return Ok(j);
        }
    }
}

fn induced(d: &BratteliDiagram, keep: impl Fn(NodeRef) -> bool) -> Result<BratteliDiagram> {
    let kept: Vec<Vec<usize>> = (0..d.depth())
        .map(|n| (0..d.level(n).len()).filter(|&s| keep(NodeRef::new(n, s))).collect())
        .collect();
    let levels = kept
        .iter()
        .enumerate()
        .map(|(n, ks)| FdAlgebra::new(ks.iter().map(|&s| d.level(n).dim(s)).collect()))
        .collect::<Result<Vec<_>>>()?;
    let mats: Vec<Matrix> = (0..d.depth() - 1)
        .map(|n| {
            kept[n + 1]
                .iter()
                .map(|&t| kept[n].iter().map(|&s| d.step(n).mult[t][s]).collect())
                .collect()
        })
        .collect();
    BratteliDiagram::from_matrices(levels, mats)
}

/// The diagram of the ideal: only nodes of `j`.
pub fn restrict(d: &BratteliDiagram, j: &IdealSet) -> Result<BratteliDiagram> {
    j.check_in(d)?;
    induced(d, |v| j.contains(v))
}

/// The diagram of the quotient: only nodes outside `j`. Levels may become
/// the zero algebra.
pub fn quotient(d: &BratteliDiagram, j: &IdealSet) -> Result<BratteliDiagram> {
    j.check_in(d)?;
    induced(d, |v| !j.contains(v))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Essential {
    /// Every node above the last level reaches the ideal within the prefix.
    YesAtDepth,
    /// Some node's forward paths all end before the last level without
    /// meeting the ideal.
    No,
    /// Some node above the last level has not reached the ideal by the last
    /// level.
    Inconclusive,
}

pub fn is_essential(d: &BratteliDiagram, j: &IdealSet) -> Result<Essential> {
    j.check_in(d)?;
    let last = d.depth() - 1;
    let mut reach: Vec<Vec<bool>> = vec![Vec::new(); d.depth()];
    let mut alive: Vec<Vec<bool>> = vec![Vec::new(); d.depth()];
    for n in (0..d.depth()).rev() {
        for s in 0..d.level(n).len() {
            let v = NodeRef::new(n, s);
            let (mut r, mut a) = (j.contains(v), n == last);
            for t in successors(d, v) {
                r |= reach[n + 1][t.summand];
                a |= alive[n + 1][t.summand];
            }
            reach[n].push(r);
            alive[n].push(a);
        }
    }
    let mut verdict = Essential::YesAtDepth;
    for n in 0..last {
        for s in 0..d.level(n).len() {
            if !reach[n][s] {
                if !alive[n][s] {
                    return Ok(Essential::No);
                }
                verdict = Essential::Inconclusive;
            }
        }
    }
    Ok(verdict)
}

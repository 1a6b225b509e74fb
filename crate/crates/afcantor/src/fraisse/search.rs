//! Absorption of arrows into a diagram, intertwining of two diagrams, and the
//! EP-sections that build surjections out of a universal diagram.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::amalgam::{joint_embed, proper_amalgamate};
use crate::bratteli::{is_essential, quotient, split_cover, BratteliDiagram, Essential, IdealSet};
use crate::error::{malformed, Error, Result};
use crate::fdalg::{
    canonical_left_inverse, compose, mat_mul, matrix_absorb, validate_morphism, EpPair, FdAlgebra,
    Morphism, Nat,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum Absorb {
    /// `δ: F → A_level` with `δ ∘ γ = φ_n^level`.
    Found { level: usize, delta: Morphism },
    /// No witness up to the level bound.
    Exhausted { max_level: usize },
    /// A summand of `F` has a dimension that no level carries.
    DimIncompatible { dim: Nat },
}

impl Absorb {
    pub fn found(self) -> Option<(usize, Morphism)> {
        match self {
            Absorb::Found { level, delta } => Some((level, delta)),
            _ => None,
        }
    }
}

/// Least `m ≥ n` (and `≥ min_level`) with a left-invertible `δ` such that
/// `δ ∘ γ = φ_n^m`. Rows of `δ` that are unit rows are matched to summands of
/// `F` in index order; every other row reads `φ` back through the section of
/// `γ`. For single-summand arrows without a left inverse the matrix form of
/// absorption is used level by level.
pub fn absorb_search(
    d: &BratteliDiagram,
    n: usize,
    gamma: &Morphism,
    min_level: usize,
    max_level: usize,
) -> Result<Absorb> {
    if n >= d.depth() || gamma.dom != *d.level(n) {
        return Err(Error::DomainMismatch(format!(
            "arrow starts at {}, level {n} is not that",
            gamma.dom
        )));
    }
    let flags = validate_morphism(gamma)?;
    if !flags.homomorphism {
        return Err(malformed("arrow to absorb is not a homomorphism"));
    }
    let dims = d.dim_set();
    if let Some(&k) = gamma.cod.dims().iter().find(|k| dims.binary_search(k).is_err()) {
        return Ok(Absorb::DimIncompatible { dim: k });
    }
    let top = max_level.min(d.depth() - 1);
    let sigma = gamma.sigma();
    let simple = gamma.cod.len() == 1 && d.levels()[n..].iter().all(|a| a.len() == 1);
    if sigma.is_none() && !simple {
        return Err(Error::NotLeftInvertible(format!(
            "{} -> {} has no left inverse",
            gamma.dom, gamma.cod
        )));
    }
    let ln = d.level(n).len();
    let mut p = Morphism::identity(d.level(n)).mult;
    for m in n..=top {
        if m > n {
            p = mat_mul(&d.step(m - 1).mult, &p, d.level(m - 1).len(), ln)?;
        }
        if m < min_level {
            continue;
        }
        let phi = Morphism::new(d.level(n).clone(), d.level(m).clone(), p.clone())?;
        let delta = match &sigma {
            Some(sg) => match_rows(gamma, sg, &phi)?,
            None => matrix_absorb(gamma, &phi)?,
        };
        if let Some(delta) = delta {
            return Ok(Absorb::Found { level: m, delta });
        }
    }
    Ok(Absorb::Exhausted { max_level: top })
}

/// The canonical `δ` at one level, if any.
fn match_rows(gamma: &Morphism, sg: &[usize], phi: &Morphism) -> Result<Option<Morphism>> {
    let f = &gamma.cod;
    let a = &phi.cod;
    // rows j of A_m able to carry summand e as a unit row
    let mut by_key: HashMap<(Nat, &[Nat]), Vec<usize>> = HashMap::new();
    for (j, row) in phi.mult.iter().enumerate() {
        by_key.entry((a.dim(j), row.as_slice())).or_default().push(j);
    }
    let cands: Vec<&[usize]> = (0..f.len())
        .map(|e| {
            by_key
                .get(&(f.dim(e), gamma.mult[e].as_slice()))
                .map(|v| v.as_slice())
                .unwrap_or(&[])
        })
        .collect();
    let mut owner: Vec<Option<usize>> = vec![None; a.len()];
    for e in 0..f.len() {
        let mut seen = vec![false; a.len()];
        if !augment(e, &cands, &mut owner, &mut seen) {
            return Ok(None);
        }
    }
    let mut delta = vec![vec![0 as Nat; f.len()]; a.len()];
    for (j, row) in delta.iter_mut().enumerate() {
        match owner[j] {
            Some(e) => row[e] = 1,
            None => {
                for (i, &x) in phi.mult[j].iter().enumerate() {
                    row[sg[i]] = x;
                }
            }
        }
    }
    let delta = Morphism::new(f.clone(), a.clone(), delta)?;
    // the projection rows respect capacity because φ does; check anyway
    if !validate_morphism(&delta)?.left_invertible || compose(&delta, gamma)? != *phi {
        return Ok(None);
    }
    Ok(Some(delta))
}

fn augment(e: usize, cands: &[&[usize]], owner: &mut [Option<usize>], seen: &mut [bool]) -> bool {
    if let Some(&j) = cands[e].iter().find(|&&j| owner[j].is_none()) {
        owner[j] = Some(e);
        return true;
    }
    for &j in cands[e] {
        if seen[j] {
            continue;
        }
        seen[j] = true;
        if owner[j].is_none() || augment(owner[j].unwrap(), cands, owner, seen) {
            owner[j] = Some(e);
            return true;
        }
    }
    false
}

/// The first level `m ≥ min_level` of `d` holding every summand of `a`, with
/// the arrow that sends each summand to the first unused equal-sized summand
/// and leaves other rows empty.
pub fn first_embedding(
    a: &FdAlgebra,
    d: &BratteliDiagram,
    min_level: usize,
    max_level: usize,
) -> Result<Absorb> {
    let dims = d.dim_set();
    if let Some(&k) = a.dims().iter().find(|k| dims.binary_search(k).is_err()) {
        return Ok(Absorb::DimIncompatible { dim: k });
    }
    let top = max_level.min(d.depth() - 1);
    for m in min_level..=top {
        let b = d.level(m);
        let mut used = vec![false; b.len()];
        let mut mult = vec![vec![0 as Nat; a.len()]; b.len()];
        let ok = (0..a.len()).all(|i| {
            match (0..b.len()).find(|&j| !used[j] && b.dim(j) == a.dim(i)) {
                Some(j) => {
                    used[j] = true;
                    mult[j][i] = 1;
                    true
                }
                None => false,
            }
        });
        if ok {
            return Ok(Absorb::Found {
                level: m,
                delta: Morphism::new(a.clone(), b.clone(), mult)?,
            });
        }
    }
    Ok(Absorb::Exhausted { max_level: top })
}

/// One arrow of an intertwining chain: `from` level of one diagram to `to`
/// level of the other.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Link {
    pub from: usize,
    pub to: usize,
    pub map: Morphism,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum Intertwining {
    /// Links alternate `A → B`, `B → A`, …, starting with `A`.
    Found { links: Vec<Link> },
    /// The chain stopped early: no witness within the level bound.
    Exhausted { links: Vec<Link> },
    /// A needed dimension never occurs on the other side.
    Absent { dim: Nat, links: Vec<Link> },
}

/// Alternate absorption between two diagrams until `rounds` links exist.
/// Each triangle commutes exactly and levels strictly increase on both sides.
pub fn intertwine(
    da: &BratteliDiagram,
    db: &BratteliDiagram,
    rounds: usize,
    max_level: usize,
) -> Result<Intertwining> {
    let start = (0..da.depth()).find(|&n| !da.level(n).is_zero()).unwrap_or(0);
    let mut links: Vec<Link> = Vec::new();
    let first = if da.level(start) == db.level(start) {
        Absorb::Found {
            level: start,
            delta: Morphism::identity(da.level(start)),
        }
    } else {
        first_embedding(da.level(start), db, 0, max_level)?
    };
    match first {
        Absorb::Found { level, delta } => links.push(Link {
            from: start,
            to: level,
            map: delta,
        }),
        Absorb::DimIncompatible { dim } => return Ok(Intertwining::Absent { dim, links }),
        Absorb::Exhausted { .. } => return Ok(Intertwining::Exhausted { links }),
    }
    while links.len() < rounds {
        let last = links.last().unwrap();
        // the next link goes out of the diagram the last one landed in
        let (target, prev_to) = if links.len() % 2 == 1 { (da, last.from) } else { (db, last.from) };
        let res = absorb_search(target, prev_to, &last.map, prev_to + 1, max_level)?;
        match res {
            Absorb::Found { level, delta } => links.push(Link {
                from: last.to,
                to: level,
                map: delta,
            }),
            Absorb::DimIncompatible { dim } => return Ok(Intertwining::Absent { dim, links }),
            Absorb::Exhausted { .. } => return Ok(Intertwining::Exhausted { links }),
        }
    }
    Ok(Intertwining::Found { links })
}

/// Check that consecutive links compose to connecting maps.
pub fn verify_intertwining(da: &BratteliDiagram, db: &BratteliDiagram, links: &[Link]) -> Result<bool> {
    for (k, pair) in links.windows(2).enumerate() {
        let (f, g) = (&pair[0], &pair[1]);
        // f: X_{f.from} → Y_{f.to}; g: Y_{g.from} → X_{g.to}
        let x = if k % 2 == 0 { da } else { db };
        if g.from != f.to || g.to <= f.from {
            return Ok(false);
        }
        if compose(&g.map, &f.map)? != x.connecting(f.from, g.to)? {
            return Ok(false);
        }
    }
    Ok(links.iter().all(|l| {
        validate_morphism(&l.map).map(|fl| fl.left_invertible).unwrap_or(false)
    }))
}

/// One round of an EP-section: `α: B_i → U_level`, `β: U_level → B_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionRound {
    pub level: usize,
    pub alpha: Morphism,
    pub beta: Morphism,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum Section {
    Found { rounds: Vec<SectionRound> },
    /// Absorption failed in the round after the listed ones.
    Exhausted { rounds: Vec<SectionRound> },
    Absent { dim: Nat, rounds: Vec<SectionRound> },
}

/// EP-pairs `(α_i, β_i)` from the levels of `b` into `u` such that
/// `φ α_i = α_{i+1} ψ_i`, `ψ_i β_i = β_{i+1} φ` and `β_i α_i = id`. Each round
/// amalgamates the previous pair with the next step of `b` and absorbs the
/// result into `u`.
pub fn ep_section(
    u: &BratteliDiagram,
    b: &BratteliDiagram,
    rounds: usize,
    max_level: usize,
) -> Result<Section> {
    let mut out: Vec<SectionRound> = Vec::new();
    let rounds = rounds.min(b.depth());
    if rounds == 0 {
        return Ok(Section::Found { rounds: out });
    }
    // round 0: joint embedding with U_0, absorbed at stage 0
    let (_, e_u, e_b) = joint_embed(u.level(0), b.level(0));
    let first = absorb_search(u, 0, &e_u.fwd, 0, max_level)?;
    let (level, delta) = match first {
        Absorb::Found { level, delta } => (level, delta),
        Absorb::DimIncompatible { dim } => return Ok(Section::Absent { dim, rounds: out }),
        Absorb::Exhausted { .. } => return Ok(Section::Exhausted { rounds: out }),
    };
    let lam = canonical_left_inverse(&delta)?.back;
    out.push(SectionRound {
        level,
        alpha: compose(&delta, &e_b.fwd)?,
        beta: compose(&e_b.back, &lam)?,
    });
    for i in 0..rounds - 1 {
        let prev = out.last().unwrap().clone();
        let ep1 = EpPair {
            fwd: prev.alpha.clone(),
            back: prev.beta.clone(),
        };
        let ep2 = canonical_left_inverse(b.step(i))?;
        let am = proper_amalgamate(&ep1, &ep2, false)?;
        let res = absorb_search(u, prev.level, &am.left.fwd, prev.level + 1, max_level)?;
        let (level, delta) = match res {
            Absorb::Found { level, delta } => (level, delta),
            Absorb::DimIncompatible { dim } => return Ok(Section::Absent { dim, rounds: out }),
            Absorb::Exhausted { .. } => return Ok(Section::Exhausted { rounds: out }),
        };
        let lam = canonical_left_inverse(&delta)?.back;
        out.push(SectionRound {
            level,
            alpha: compose(&delta, &am.right.fwd)?,
            beta: compose(&am.right.back, &lam)?,
        });
    }
    Ok(Section::Found { rounds: out })
}

/// Check the three identities of every round.
pub fn verify_section(u: &BratteliDiagram, b: &BratteliDiagram, rounds: &[SectionRound]) -> Result<bool> {
    for (i, r) in rounds.iter().enumerate() {
        if !compose(&r.beta, &r.alpha)?.is_identity() {
            return Ok(false);
        }
        if let Some(next) = rounds.get(i + 1) {
            let phi = u.connecting(r.level, next.level)?;
            let psi = b.step(i);
            if compose(&phi, &r.alpha)? != compose(&next.alpha, psi)? {
                return Ok(false);
            }
            if compose(psi, &r.beta)? != compose(&next.beta, &phi)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Evidence that `d`'s limit is a quotient of `u`'s: the split cover, its
/// ideal, and an EP-section of the cover into `u`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurjectionWitness {
    pub cover: BratteliDiagram,
    pub ideal: IdealSet,
    pub essential: Essential,
    pub quotient_matches: bool,
    pub section: Section,
}

impl SurjectionWitness {
    pub fn is_complete(&self) -> bool {
        self.essential == Essential::YesAtDepth
            && self.quotient_matches
            && matches!(&self.section, Section::Found { rounds } if rounds.len() == self.cover.depth())
    }
}

pub fn universal_surjection_witness(
    u: &BratteliDiagram,
    d: &BratteliDiagram,
    rounds: usize,
    max_level: usize,
) -> Result<SurjectionWitness> {
    let (cover, ideal) = split_cover(d)?;
    let essential = is_essential(&cover, &ideal)?;
    let quotient_matches = quotient(&cover, &ideal)? == *d;
    let section = ep_section(u, &cover, rounds, max_level)?;
    Ok(SurjectionWitness {
        cover,
        ideal,
        essential,
        quotient_matches,
        section,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fdalg::{alg, mor};

    #[test]
    fn absorb_in_binary() {
        let d = BratteliDiagram::binary(4);
        // [1] → [1,1] diagonal is absorbed one level down
        let g = mor(&[1], &[1, 1], &[&[1], &[1]]);
        let (m, delta) = absorb_search(&d, 0, &g, 0, 3).unwrap().found().unwrap();
        assert_eq!(m, 1);
        assert!(delta.is_identity());
        // a 2-dimensional summand never shows up
        let g = mor(&[1], &[1, 2], &[&[1], &[1]]);
        assert_eq!(absorb_search(&d, 0, &g, 0, 3).unwrap(), Absorb::DimIncompatible { dim: 2 });
    }

    #[test]
    fn intertwine_equal_diagrams() {
        let d = BratteliDiagram::binary(6);
        let r = intertwine(&d, &d, 4, 5).unwrap();
        let Intertwining::Found { links } = r else { panic!("{r:?}") };
        assert!(links[0].map.is_identity());
        assert!(verify_intertwining(&d, &d, &links).unwrap());
    }

    #[test]
    fn intertwine_disjoint_dims() {
        let a = BratteliDiagram::stationary(&alg(&[2]), &vec![vec![1]], 3).unwrap();
        let b = BratteliDiagram::stationary(&alg(&[3]), &vec![vec![1]], 3).unwrap();
        assert!(matches!(intertwine(&a, &b, 4, 2).unwrap(), Intertwining::Absent { dim: 2, .. }));
    }

    #[test]
    fn section_into_itself() {
        // a universal diagram starts at the zero algebra
        let bin = BratteliDiagram::binary(4);
        let mut levels = vec![FdAlgebra::zero()];
        levels.extend(bin.levels().iter().cloned());
        let mut mats = vec![vec![vec![]]];
        mats.extend(bin.steps().iter().map(|s| s.mult.clone()));
        let d = BratteliDiagram::from_matrices(levels, mats).unwrap();
        let b = bin.truncate(3);
        let Section::Found { rounds } = ep_section(&d, &b, 3, 3).unwrap() else { panic!() };
        assert_eq!(rounds.len(), 3);
        assert!(verify_section(&d, &b, &rounds).unwrap());
    }
}

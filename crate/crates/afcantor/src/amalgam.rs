//! Joint embedding, proper amalgamation of EP-pairs, and the weakly initial
//! object of a dimension set.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fdalg::{
    compose, direct_sum, validate_morphism, EpPair, FdAlgebra, Matrix, Morphism, Nat,
};

/// `a ⊕ b` with its coordinate EP-pairs.
pub fn joint_embed(a: &FdAlgebra, b: &FdAlgebra) -> (FdAlgebra, EpPair, EpPair) {
    let c = direct_sum(a, b);
    let (na, nb) = (a.len(), b.len());
    let inc = |offset: usize, n: usize, dom: &FdAlgebra| {
        let mut fwd = vec![vec![0 as Nat; n]; na + nb];
        let mut back = vec![vec![0 as Nat; na + nb]; n];
        for i in 0..n {
            fwd[offset + i][i] = 1;
            back[i][offset + i] = 1;
        }
        EpPair {
            fwd: Morphism {
                dom: dom.clone(),
                cod: c.clone(),
                mult: fwd,
            },
            back: Morphism {
                dom: c.clone(),
                cod: dom.clone(),
                mult: back,
            },
        }
    };
    let ea = inc(0, na, a);
    let eb = inc(na, nb, b);
    (c, ea, eb)
}

/// Result of amalgamating `(φ, π): D → E` with `(ψ, θ): D → F` over
/// `G = D ⊕ E₁ ⊕ F₁`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Amalgam {
    pub g: FdAlgebra,
    /// `(φ', π'): E → G`
    pub left: EpPair,
    /// `(ψ', θ'): F → G`
    pub right: EpPair,
}

/// Where each `D` summand sits in the codomain, read off the left inverse.
fn selector(ep: &EpPair) -> Result<Vec<usize>> {
    if !ep.is_valid()? {
        return Err(Error::NotLeftInvertible(format!(
            "not an EP-pair: {} -> {}",
            ep.dom(),
            ep.cod()
        )));
    }
    // a valid left inverse has exactly one 1 per row
    Ok(ep
        .back
        .mult
        .iter()
        .map(|row| row.iter().position(|&x| x == 1).expect("unit row"))
        .collect())
}

pub fn proper_amalgamate(ep1: &EpPair, ep2: &EpPair, unital: bool) -> Result<Amalgam> {
    if ep1.dom() != ep2.dom() {
        return Err(Error::DomainMismatch(format!(
            "{} vs {}",
            ep1.dom(),
            ep2.dom()
        )));
    }
    let sel_e = selector(ep1)?;
    let sel_f = selector(ep2)?;
    if unital
        && !(validate_morphism(&ep1.fwd)?.unital && validate_morphism(&ep2.fwd)?.unital)
    {
        return Err(Error::NotUnital);
    }
    let d = ep1.dom();
    let (e, f) = (ep1.cod(), ep2.cod());
    let rest = |sel: &[usize], n: usize| -> Vec<usize> {
        (0..n).filter(|j| !sel.contains(j)).collect()
    };
    let e1 = rest(&sel_e, e.len());
    let f1 = rest(&sel_f, f.len());

    let mut gdims: Vec<Nat> = d.dims().to_vec();
    gdims.extend(e1.iter().map(|&j| e.dim(j)));
    gdims.extend(f1.iter().map(|&j| f.dim(j)));
    let g = FdAlgebra::new(gdims)?;
    let (nd, ne1) = (d.len(), e1.len());

    // x ∘ back, restricted to the given rows of x
    let through = |x: &Matrix, rows: &[usize], back: &Morphism| -> Result<Matrix> {
        rows.iter()
            .map(|&r| {
                let mut out = vec![0 as Nat; back.dom.len()];
                for (k, &m) in x[r].iter().enumerate() {
                    for (c, &b) in back.mult[k].iter().enumerate() {
                        if m != 0 && b != 0 {
                            let t = m.checked_mul(b).ok_or(Error::Overflow("amalgamation"))?;
                            out[c] = out[c].checked_add(t).ok_or(Error::Overflow("amalgamation"))?;
                        }
                    }
                }
                Ok(out)
            })
            .collect()
    };

    // one leg: D-rows select, own-rest rows are the identity, other-rest rows
    // go through the other side's left inverse
    let leg = |n_own: usize,
               sel_own: &[usize],
               own_rest: &[usize],
               cross: Matrix,
               own_first: bool|
     -> Matrix {
        let mut m = Vec::with_capacity(g.len());
        for &s in sel_own {
            let mut r = vec![0 as Nat; n_own];
            r[s] = 1;
            m.push(r);
        }
        let ident: Matrix = own_rest
            .iter()
            .map(|&s| {
                let mut r = vec![0 as Nat; n_own];
                r[s] = 1;
                r
            })
            .collect();
        if own_first {
            m.extend(ident);
            m.extend(cross);
        } else {
            m.extend(cross);
            m.extend(ident);
        }
        m
    };

    let phi_p = leg(e.len(), &sel_e, &e1, through(&ep2.fwd.mult, &f1, &ep1.back)?, true);
    let psi_p = leg(f.len(), &sel_f, &f1, through(&ep1.fwd.mult, &e1, &ep2.back)?, false);

    // π' keeps the D block (as the selected summands of E) and E₁
    let proj = |n_own: usize, sel_own: &[usize], own_rest: &[usize], offset: usize| -> Matrix {
        let mut m = vec![vec![0 as Nat; g.len()]; n_own];
        for (k, &s) in sel_own.iter().enumerate() {
            m[s][k] = 1;
        }
        for (k, &s) in own_rest.iter().enumerate() {
            m[s][offset + k] = 1;
        }
        m
    };
    let pi_p = proj(e.len(), &sel_e, &e1, nd);
    let theta_p = proj(f.len(), &sel_f, &f1, nd + ne1);

    Ok(Amalgam {
        left: EpPair {
            fwd: Morphism::new(e.clone(), g.clone(), phi_p)?,
            back: Morphism::new(g.clone(), e.clone(), pi_p)?,
        },
        right: EpPair {
            fwd: Morphism::new(f.clone(), g.clone(), psi_p)?,
            back: Morphism::new(g.clone(), f.clone(), theta_p)?,
        },
        g,
    })
}

/// The elements of `set` that are not sums of smaller elements of `set`,
/// ascending. Every member of `set` is a nonnegative combination of them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Identity {
    pub name: String,
    pub holds: bool,
}

/// `φ'∘φ = ψ'∘ψ`, `π∘π' = θ∘θ'`, `θ'∘φ' = ψ∘π` and `π'∘ψ' = φ∘θ`.
pub fn identities(ep1: &EpPair, ep2: &EpPair, am: &Amalgam) -> Result<Vec<Identity>> {
    let checks = [
        ("phi'.phi = psi'.psi", compose(&am.left.fwd, &ep1.fwd)?, compose(&am.right.fwd, &ep2.fwd)?),
        ("pi.pi' = theta.theta'", compose(&ep1.back, &am.left.back)?, compose(&ep2.back, &am.right.back)?),
        ("theta'.phi' = psi.pi", compose(&am.right.back, &am.left.fwd)?, compose(&ep2.fwd, &ep1.back)?),
        ("pi'.psi' = phi.theta", compose(&am.left.back, &am.right.fwd)?, compose(&ep1.fwd, &ep2.back)?),
    ];
    Ok(checks
        .into_iter()
        .map(|(name, l, r)| Identity {
            name: name.to_string(),
            holds: l == r,
        })
        .collect())
}

pub fn minimal_generators(set: &[Nat]) -> Result<Vec<Nat>> {
    let mut s: Vec<Nat> = set.to_vec();
    s.sort_unstable();
    s.dedup();
    let Some(&max) = s.last() else {
        return Err(Error::EmptyUniverse);
    };
    if s[0] == 0 {
        return Err(crate::error::malformed("dimension 0 in universe"));
    }
    let max = usize::try_from(max).map_err(|_| Error::Overflow("weakly_initial"))?;
    // reach[v]: v is a sum of generators chosen so far
    let mut reach = vec![false; max + 1];
    reach[0] = true;
    let mut gens = Vec::new();
    for &x in &s {
        let x = x as usize;
        if reach[x] {
            continue;
        }
        gens.push(x as Nat);
        for v in x..=max {
            if reach[v - x] {
                reach[v] = true;
            }
        }
    }
    Ok(gens)
}

/// `⊕` of the minimal generators: every object over `set` receives a unital
/// map from it.
pub fn weakly_initial(set: &[Nat]) -> Result<FdAlgebra> {
    FdAlgebra::new(minimal_generators(set)?)
}

/// Whether `k` is a nonnegative combination of `gens`.
pub fn is_representable(k: Nat, gens: &[Nat]) -> bool {
    let Ok(k) = usize::try_from(k) else {
        return false;
    };
    let mut reach = vec![false; k + 1];
    reach[0] = true;
    for v in 1..=k {
        reach[v] = gens
            .iter()
            .any(|&g| g as usize <= v && g > 0 && reach[v - g as usize]);
    }
    reach[k]
}

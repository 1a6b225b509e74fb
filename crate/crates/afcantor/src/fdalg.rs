//! Finite-dimensional C*-algebras as lists of matrix sizes, and the
//! multiplicity matrices of *-homomorphisms between them.

use serde::{Deserialize, Serialize};
use std::collections::HashMap;

use crate::error::{malformed, Error, Result};

/// Dimensions, multiplicities and path counts.
pub type Nat = u128;
pub type Matrix = Vec<Vec<Nat>>;

/// `M_{n_1} ⊕ … ⊕ M_{n_k}` stored as `[n_1, …, n_k]`. The empty list is the
/// zero algebra.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Nat>", into = "Vec<Nat>")]
pub struct FdAlgebra {
    dims: Vec<Nat>,
}

impl TryFrom<Vec<Nat>> for FdAlgebra {
    type Error = Error;
    fn try_from(dims: Vec<Nat>) -> Result<Self> {
        FdAlgebra::new(dims)
    }
}

impl From<FdAlgebra> for Vec<Nat> {
    fn from(a: FdAlgebra) -> Self {
        a.dims
    }
}

impl FdAlgebra {
    pub fn new(dims: Vec<Nat>) -> Result<Self> {
        if let Some(p) = dims.iter().position(|&d| d == 0) {
            return Err(malformed(format!("summand {p} has dimension 0")));
        }
        Ok(FdAlgebra { dims })
    }

    pub fn zero() -> Self {
        FdAlgebra { dims: Vec::new() }
    }

    pub fn dims(&self) -> &[Nat] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dim(&self, i: usize) -> Nat {
        self.dims[i]
    }

    /// Summands sorted in descending order.
    pub fn canonicalize(&self) -> FdAlgebra {
        let mut dims = self.dims.clone();
        dims.sort_unstable_by(|a, b| b.cmp(a));
        FdAlgebra { dims }
    }

    pub fn is_isomorphic(&self, other: &FdAlgebra) -> bool {
        self.canonicalize() == other.canonicalize()
    }

    /// Total matrix size, the trace of the unit.
    pub fn size(&self) -> Result<Nat> {
        self.dims
            .iter()
            .try_fold(0 as Nat, |acc, &d| acc.checked_add(d))
            .ok_or(Error::Overflow("algebra size"))
    }
}

impl std::fmt::Display for FdAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, d) in self.dims.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "]")
    }
}

/// A *-homomorphism up to unitary equivalence. `mult[j][i]` is the number of
/// times summand `i` of `dom` sits inside summand `j` of `cod`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawMorphism")]
pub struct Morphism {
    pub dom: FdAlgebra,
    pub cod: FdAlgebra,
    pub mult: Matrix,
}

#[derive(Deserialize)]
struct RawMorphism {
    dom: FdAlgebra,
    cod: FdAlgebra,
    mult: Matrix,
}

impl TryFrom<RawMorphism> for Morphism {
    type Error = Error;
    fn try_from(r: RawMorphism) -> Result<Self> {
        Morphism::new(r.dom, r.cod, r.mult)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    pub homomorphism: bool,
    pub unital: bool,
    pub embedding: bool,
    pub left_invertible: bool,
}

/// An embedding together with a left inverse: `back ∘ fwd = id`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpPair {
    pub fwd: Morphism,
    pub back: Morphism,
}

fn check_shape(dom: &FdAlgebra, cod: &FdAlgebra, mult: &Matrix) -> Result<()> {
    if mult.len() != cod.len() {
        return Err(malformed(format!(
            "matrix has {} rows, codomain has {} summands",
            mult.len(),
            cod.len()
        )));
    }
    for (j, row) in mult.iter().enumerate() {
        if row.len() != dom.len() {
            return Err(malformed(format!(
                "row {j} has {} entries, domain has {} summands",
                row.len(),
                dom.len()
            )));
        }
    }
    Ok(())
}

/// `Σ_i row[i]·dims[i]`, checked.
pub fn row_weight(row: &[Nat], dims: &[Nat]) -> Result<Nat> {
    let mut s: Nat = 0;
    for (&x, &d) in row.iter().zip(dims) {
        let t = x.checked_mul(d).ok_or(Error::Overflow("row weight"))?;
        s = s.checked_add(t).ok_or(Error::Overflow("row weight"))?;
    }
    Ok(s)
}

/// Checked product `a·b` of dense matrices.
pub fn mat_mul(a: &Matrix, b: &Matrix, inner: usize, cols: usize) -> Result<Matrix> {
    let mut out = vec![vec![0 as Nat; cols]; a.len()];
    for (r, arow) in a.iter().enumerate() {
        for (k, &x) in arow.iter().enumerate().take(inner) {
            if x == 0 {
                continue;
            }
            for (c, &y) in b[k].iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let t = x.checked_mul(y).ok_or(Error::Overflow("matrix product"))?;
                out[r][c] = out[r][c]
                    .checked_add(t)
                    .ok_or(Error::Overflow("matrix product"))?;
            }
        }
    }
    Ok(out)
}

impl Morphism {
    pub fn new(dom: FdAlgebra, cod: FdAlgebra, mult: Matrix) -> Result<Self> {
        check_shape(&dom, &cod, &mult)?;
        Ok(Morphism { dom, cod, mult })
    }

    pub fn identity(a: &FdAlgebra) -> Self {
        let n = a.len();
        let mult = (0..n)
            .map(|j| (0..n).map(|i| Nat::from(i == j)).collect())
            .collect();
        Morphism {
            dom: a.clone(),
            cod: a.clone(),
            mult,
        }
    }

    /// The unique map out of (or into) the zero algebra.
    pub fn zero(dom: &FdAlgebra, cod: &FdAlgebra) -> Self {
        Morphism {
            dom: dom.clone(),
            cod: cod.clone(),
            mult: vec![vec![0; dom.len()]; cod.len()],
        }
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod && *self == Morphism::identity(&self.dom)
    }

    /// For each domain summand, the first codomain row that is a unit row for
    /// it with equal dimension. `None` if some summand has no such row.
    pub fn sigma(&self) -> Option<Vec<usize>> {
        (0..self.dom.len())
            .map(|i| {
                (0..self.cod.len()).find(|&j| {
                    self.cod.dim(j) == self.dom.dim(i)
                        && self.mult[j]
                            .iter()
                            .enumerate()
                            .all(|(k, &x)| x == Nat::from(k == i))
                })
            })
            .collect()
    }
}

pub fn validate_morphism(m: &Morphism) -> Result<Flags> {
    check_shape(&m.dom, &m.cod, &m.mult)?;
    let mut homomorphism = true;
    let mut unital = true;
    for (j, row) in m.mult.iter().enumerate() {
        let w = row_weight(row, m.dom.dims())?;
        if w > m.cod.dim(j) {
            homomorphism = false;
        }
        if w != m.cod.dim(j) {
            unital = false;
        }
    }
    let injective = (0..m.dom.len()).all(|i| m.mult.iter().any(|row| row[i] != 0));
    let left_invertible = homomorphism && m.sigma().is_some();
    Ok(Flags {
        homomorphism,
        unital: homomorphism && unital,
        embedding: homomorphism && injective,
        left_invertible,
    })
}

/// `g ∘ f`.
pub fn compose(g: &Morphism, f: &Morphism) -> Result<Morphism> {
    if g.dom != f.cod {
        return Err(Error::DomainMismatch(format!(
            "cannot compose: {} is not {}",
            g.dom, f.cod
        )));
    }
    let mult = mat_mul(&g.mult, &f.mult, g.dom.len(), f.dom.len())?;
    Ok(Morphism {
        dom: f.dom.clone(),
        cod: g.cod.clone(),
        mult,
    })
}

pub fn direct_sum(a: &FdAlgebra, b: &FdAlgebra) -> FdAlgebra {
    let mut dims = a.dims.clone();
    dims.extend_from_slice(&b.dims);
    FdAlgebra { dims }
}

/// Block-diagonal sum `f ⊕ g`.
pub fn direct_sum_mor(f: &Morphism, g: &Morphism) -> Morphism {
    let (fd, gd) = (f.dom.len(), g.dom.len());
    let mut mult = Vec::with_capacity(f.cod.len() + g.cod.len());
    for row in &f.mult {
        let mut r = row.clone();
        r.resize(fd + gd, 0);
        mult.push(r);
    }
    for row in &g.mult {
        let mut r = vec![0; fd];
        r.extend_from_slice(row);
        mult.push(r);
    }
    Morphism {
        dom: direct_sum(&f.dom, &g.dom),
        cod: direct_sum(&f.cod, &g.cod),
        mult,
    }
}

/// The left inverse that reads each domain summand off its first unit row.
pub fn canonical_left_inverse(m: &Morphism) -> Result<EpPair> {
    let flags = validate_morphism(m)?;
    let sigma = match m.sigma() {
        Some(s) if flags.homomorphism => s,
        _ => {
            return Err(Error::NotLeftInvertible(format!(
                "{} -> {}",
                m.dom, m.cod
            )))
        }
    };
    let mut back = vec![vec![0 as Nat; m.cod.len()]; m.dom.len()];
    for (i, &j) in sigma.iter().enumerate() {
        back[i][j] = 1;
    }
    Ok(EpPair {
        fwd: m.clone(),
        back: Morphism {
            dom: m.cod.clone(),
            cod: m.dom.clone(),
            mult: back,
        },
    })
}

impl EpPair {
    pub fn identity(a: &FdAlgebra) -> Self {
        EpPair {
            fwd: Morphism::identity(a),
            back: Morphism::identity(a),
        }
    }

    pub fn dom(&self) -> &FdAlgebra {
        &self.fwd.dom
    }

    pub fn cod(&self) -> &FdAlgebra {
        &self.fwd.cod
    }

    /// `back ∘ fwd = id` and `back` is a homomorphism.
    pub fn is_valid(&self) -> Result<bool> {
        if self.back.dom != self.fwd.cod || self.back.cod != self.fwd.dom {
            return Ok(false);
        }
        let f = validate_morphism(&self.fwd)?;
        let b = validate_morphism(&self.back)?;
        Ok(f.homomorphism && b.homomorphism && compose(&self.back, &self.fwd)?.is_identity())
    }
}

/// Given `γ: D → M_k` and `φ: D → M_ℓ`, find `δ: M_k → M_ℓ` with `δ∘γ = φ`.
pub fn matrix_absorb(gamma: &Morphism, phi: &Morphism) -> Result<Option<Morphism>> {
    if gamma.dom != phi.dom {
        return Err(Error::DomainMismatch(format!(
            "{} vs {}",
            gamma.dom, phi.dom
        )));
    }
    if gamma.cod.len() != 1 || phi.cod.len() != 1 {
        return Err(malformed("matrix_absorb needs single-summand codomains"));
    }
    check_shape(&gamma.dom, &gamma.cod, &gamma.mult)?;
    check_shape(&phi.dom, &phi.cod, &phi.mult)?;
    let (k, l) = (gamma.cod.dim(0), phi.cod.dim(0));
    let (g, p) = (&gamma.mult[0], &phi.mult[0]);
    // c is forced by any column where γ is nonzero; with γ = 0 every c fits
    // and the least one is taken.
    let c = match g.iter().position(|&x| x != 0) {
        Some(i) => {
            if p[i] % g[i] != 0 {
                return Ok(None);
            }
            p[i] / g[i]
        }
        None => 1,
    };
    if c == 0 {
        return Ok(None);
    }
    let fits = g
        .iter()
        .zip(p)
        .all(|(&gi, &pi)| gi.checked_mul(c) == Some(pi));
    let cap = c.checked_mul(k).ok_or(Error::Overflow("matrix_absorb"))?;
    if !fits || cap > l {
        return Ok(None);
    }
    Ok(Some(Morphism {
        dom: gamma.cod.clone(),
        cod: phi.cod.clone(),
        mult: vec![vec![c]],
    }))
}

/// Multiset containment of summands.
pub fn is_retract(a: &FdAlgebra, b: &FdAlgebra) -> bool {
    let mut have: HashMap<Nat, usize> = HashMap::new();
    for &d in b.dims() {
        *have.entry(d).or_default() += 1;
    }
    a.dims().iter().all(|d| match have.get_mut(d) {
        Some(n) if *n > 0 => {
            *n -= 1;
            true
        }
        _ => false,
    })
}

/// `ℂ ⊕ A`.
pub fn unitize(a: &FdAlgebra) -> FdAlgebra {
    let mut dims = vec![1];
    dims.extend_from_slice(a.dims());
    FdAlgebra { dims }
}

/// Shorthand for tests and examples: panics on a zero entry.
pub fn alg(dims: &[Nat]) -> FdAlgebra {
    FdAlgebra::new(dims.to_vec()).expect("positive dimensions")
}

/// Shorthand for tests and examples: panics on a shape mismatch.
pub fn mor(dom: &[Nat], cod: &[Nat], mult: &[&[Nat]]) -> Morphism {
    Morphism::new(
        alg(dom),
        alg(cod),
        mult.iter().map(|r| r.to_vec()).collect(),
    )
    .expect("well-shaped morphism")
}

//! Bratteli diagrams: sequences of finite-dimensional algebras joined by
//! embeddings, and the constructions on them.

mod cantor;
mod dot;
mod ideal;

pub use cantor::{
    check_cantor, verify_witness, CantorReport, CheckOptions, Condition, Instance, Verdict, Witness,
};
pub use dot::to_dot;
pub use ideal::{ideal_closure, is_essential, quotient, restrict, Essential, IdealSet};

use serde::{Deserialize, Serialize};

use crate::error::{malformed, Error, Result};
use crate::fdalg::{validate_morphism, FdAlgebra, Matrix, Morphism, Nat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NodeRef {
    pub level: usize,
    pub summand: usize,
}

impl NodeRef {
    pub fn new(level: usize, summand: usize) -> Self {
        NodeRef { level, summand }
    }
}

/// `level:summand`
impl std::str::FromStr for NodeRef {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || malformed(format!("node {s:?} is not level:summand"));
        let (l, t) = s.trim().split_once(':').ok_or_else(bad)?;
        Ok(NodeRef::new(l.parse().map_err(|_| bad())?, t.parse().map_err(|_| bad())?))
    }
}

impl std::fmt::Display for NodeRef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.level, self.summand)
    }
}

/// Levels `A_0, A_1, …` and steps `A_n → A_{n+1}`. On disk the steps are
/// stored as bare multiplicity matrices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawDiagram", into = "RawDiagram")]
pub struct BratteliDiagram {
    levels: Vec<FdAlgebra>,
    steps: Vec<Morphism>,
}

#[derive(Serialize, Deserialize)]
struct RawDiagram {
    levels: Vec<FdAlgebra>,
    steps: Vec<Matrix>,
}

impl TryFrom<RawDiagram> for BratteliDiagram {
    type Error = Error;
    fn try_from(r: RawDiagram) -> Result<Self> {
        BratteliDiagram::from_matrices(r.levels, r.steps)
    }
}

impl From<BratteliDiagram> for RawDiagram {
    fn from(d: BratteliDiagram) -> Self {
        RawDiagram {
            levels: d.levels,
            steps: d.steps.into_iter().map(|s| s.mult).collect(),
        }
    }
}

impl BratteliDiagram {
    /// Checks that consecutive steps match and each is a homomorphism.
    pub fn new(levels: Vec<FdAlgebra>, steps: Vec<Morphism>) -> Result<Self> {
        if levels.is_empty() {
            return Err(malformed("diagram has no levels"));
        }
        if steps.len() + 1 != levels.len() {
            return Err(malformed(format!(
                "{} levels need {} steps, got {}",
                levels.len(),
                levels.len() - 1,
                steps.len()
            )));
        }
        for (n, s) in steps.iter().enumerate() {
            if s.dom != levels[n] || s.cod != levels[n + 1] {
                return Err(malformed(format!("step {n} does not join levels {n} and {}", n + 1)));
            }
            if !validate_morphism(s)?.homomorphism {
                return Err(malformed(format!("step {n} exceeds a summand's capacity")));
            }
        }
        Ok(BratteliDiagram { levels, steps })
    }

    pub fn from_matrices(levels: Vec<FdAlgebra>, mats: Vec<Matrix>) -> Result<Self> {
        if mats.len() + 1 != levels.len() {
            return Err(malformed(format!(
                "{} levels need {} steps, got {}",
                levels.len(),
                levels.len().saturating_sub(1),
                mats.len()
            )));
        }
        let steps = mats
            .into_iter()
            .enumerate()
            .map(|(n, m)| Morphism::new(levels[n].clone(), levels[n + 1].clone(), m))
            .collect::<Result<Vec<_>>>()?;
        BratteliDiagram::new(levels, steps)
    }

    /// A single level with no steps.
    pub fn single(a: FdAlgebra) -> Self {
        BratteliDiagram {
            levels: vec![a],
            steps: Vec::new(),
        }
    }

    /// The binary diagram: level `n` has `2^n` one-dimensional summands and
    /// summand `i` feeds `2i` and `2i+1`.
    pub fn binary(depth: usize) -> Self {
        let one = BratteliDiagram::single(FdAlgebra::new(vec![1]).unwrap());
        let mut d = one.clone();
        for _ in 1..depth {
            d.push_level(FdAlgebra::new(vec![1]).unwrap(), Morphism::identity(&d.levels[0]))
                .unwrap();
        }
        cantorize(&d).expect("identity steps are left-invertible")
    }

    /// A constant diagram `a → a → …` with the same matrix at every step.
    pub fn stationary(a: &FdAlgebra, mult: &Matrix, depth: usize) -> Result<Self> {
        let step = Morphism::new(a.clone(), a.clone(), mult.clone())?;
        BratteliDiagram::new(vec![a.clone(); depth], vec![step; depth.saturating_sub(1)])
    }

    pub fn levels(&self) -> &[FdAlgebra] {
        &self.levels
    }

    pub fn steps(&self) -> &[Morphism] {
        &self.steps
    }

    pub fn level(&self, n: usize) -> &FdAlgebra {
        &self.levels[n]
    }

    pub fn step(&self, n: usize) -> &Morphism {
        &self.steps[n]
    }

    /// Number of levels.
    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn dim(&self, v: NodeRef) -> Nat {
        self.levels[v.level].dim(v.summand)
    }

    pub fn push_level(&mut self, a: FdAlgebra, step: Morphism) -> Result<()> {
        if step.dom != *self.levels.last().unwrap() || step.cod != a {
            return Err(malformed("new step does not fit the last level"));
        }
        if !validate_morphism(&step)?.homomorphism {
            return Err(malformed("new step exceeds a summand's capacity"));
        }
        self.levels.push(a);
        self.steps.push(step);
        Ok(())
    }

    /// The first `depth` levels.
    pub fn truncate(&self, depth: usize) -> BratteliDiagram {
        let depth = depth.clamp(1, self.depth());
        BratteliDiagram {
            levels: self.levels[..depth].to_vec(),
            steps: self.steps[..depth - 1].to_vec(),
        }
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeRef> + '_ {
        self.levels
            .iter()
            .enumerate()
            .flat_map(|(n, a)| (0..a.len()).map(move |s| NodeRef::new(n, s)))
    }

    pub fn contains(&self, v: NodeRef) -> bool {
        v.level < self.depth() && v.summand < self.levels[v.level].len()
    }

    /// `φ_n^m`, rows indexed by level `m`, columns by level `n`.
    pub fn path_matrix(&self, n: usize, m: usize) -> Result<Matrix> {
        if n > m || m >= self.depth() {
            return Err(malformed(format!("no path matrix from level {n} to {m}")));
        }
        let mut p = Morphism::identity(&self.levels[n]).mult;
        for k in n..m {
            p = crate::fdalg::mat_mul(&self.steps[k].mult, &p, self.levels[k].len(), self.levels[n].len())?;
        }
        Ok(p)
    }

    /// `φ_n^m` as a morphism.
    pub fn connecting(&self, n: usize, m: usize) -> Result<Morphism> {
        Morphism::new(
            self.levels[n].clone(),
            self.levels[m].clone(),
            self.path_matrix(n, m)?,
        )
    }

    /// Number of paths from `a` down to `b`.
    pub fn path_count(&self, a: NodeRef, b: NodeRef) -> Result<Nat> {
        if !self.contains(a) || !self.contains(b) {
            return Err(malformed(format!("node {a} or {b} is not in the diagram")));
        }
        if b.level < a.level {
            return Ok(0);
        }
        // propagate the single column of `a`
        let mut col: Vec<Nat> = (0..self.levels[a.level].len())
            .map(|s| Nat::from(s == a.summand))
            .collect();
        for k in a.level..b.level {
            col = self.steps[k]
                .mult
                .iter()
                .map(|row| {
                    row.iter().zip(&col).try_fold(0 as Nat, |acc, (&x, &y)| {
                        x.checked_mul(y)
                            .and_then(|t| acc.checked_add(t))
                            .ok_or(Error::Overflow("path count"))
                    })
                })
                .collect::<Result<_>>()?;
        }
        Ok(col[b.summand])
    }

    /// Dimensions occurring anywhere, ascending.
    pub fn dim_set(&self) -> Vec<Nat> {
        let mut v: Vec<Nat> = self.levels.iter().flat_map(|a| a.dims().iter().copied()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// Node-wise tensor product, truncated to the shorter diagram. Node `(i, j)`
/// sits at index `i·|B_n| + j`.
pub fn tensor(d1: &BratteliDiagram, d2: &BratteliDiagram) -> Result<BratteliDiagram> {
    let depth = d1.depth().min(d2.depth());
    let levels = (0..depth)
        .map(|n| {
            let dims = d1.levels[n]
                .dims()
                .iter()
                .flat_map(|&a| d2.levels[n].dims().iter().map(move |&b| a.checked_mul(b)))
                .collect::<Option<Vec<_>>>()
                .ok_or(Error::Overflow("tensor dimension"))?;
            FdAlgebra::new(dims)
        })
        .collect::<Result<Vec<_>>>()?;
    let mats = (0..depth - 1)
        .map(|n| {
            let (a, b) = (&d1.steps[n].mult, &d2.steps[n].mult);
            let mut out = Vec::with_capacity(levels[n + 1].len());
            for ra in a {
                for rb in b {
                    let row = ra
                        .iter()
                        .flat_map(|&x| rb.iter().map(move |&y| x.checked_mul(y)))
                        .collect::<Option<Vec<_>>>()
                        .ok_or(Error::Overflow("tensor multiplicity"))?;
                    out.push(row);
                }
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    BratteliDiagram::from_matrices(levels, mats)
}

/// `d ⊗ C(2^ℕ)`: level `n` holds `2^n` copies of `A_n`, and copy `c` feeds
/// copies `2c` and `2c+1`.
pub fn cantorize(d: &BratteliDiagram) -> Result<BratteliDiagram> {
    for (n, s) in d.steps.iter().enumerate() {
        if !validate_morphism(s)?.left_invertible {
            return Err(Error::NotLeftInvertible(format!("step {n}")));
        }
    }
    let copies = |n: usize| -> Result<usize> {
        u32::try_from(n)
            .ok()
            .and_then(|n| 1usize.checked_shl(n))
            .ok_or(Error::Overflow("cantorize copies"))
    };
    let mut levels = Vec::with_capacity(d.depth());
    for (n, a) in d.levels.iter().enumerate() {
        let c = copies(n)?;
        let mut dims = Vec::with_capacity(c * a.len());
        for _ in 0..c {
            dims.extend_from_slice(a.dims());
        }
        levels.push(FdAlgebra::new(dims)?);
    }
    let mut mats = Vec::with_capacity(d.steps.len());
    for (n, s) in d.steps.iter().enumerate() {
        let (ln, lm) = (d.levels[n].len(), d.levels[n + 1].len());
        let c = copies(n)?;
        let mut m = vec![vec![0 as Nat; c * ln]; 2 * c * lm];
        for src in 0..c {
            for dst in [2 * src, 2 * src + 1] {
                for j in 0..lm {
                    for i in 0..ln {
                        m[dst * lm + j][src * ln + i] = s.mult[j][i];
                    }
                }
            }
        }
        mats.push(m);
    }
    BratteliDiagram::from_matrices(levels, mats)
}

/// The split cover `d'` with level `n` equal to `A_n ⊕ A_{n-1} ⊕ … ⊕ A_0`,
/// and the ideal of all non-top blocks. `d'` has left-invertible steps and
/// its quotient by the ideal is `d`.
pub fn split_cover(d: &BratteliDiagram) -> Result<(BratteliDiagram, IdealSet)> {
    let depth = d.depth();
    // offsets[n][k]: start of block A_{n-k} inside level n
    let mut levels = Vec::with_capacity(depth);
    let mut offsets: Vec<Vec<usize>> = Vec::with_capacity(depth);
    for n in 0..depth {
        let mut dims = Vec::new();
        let mut off = Vec::new();
        for k in 0..=n {
            off.push(dims.len());
            dims.extend_from_slice(d.levels[n - k].dims());
        }
        levels.push(FdAlgebra::new(dims)?);
        offsets.push(off);
    }
    let mut mats = Vec::with_capacity(depth.saturating_sub(1));
    for n in 0..depth.saturating_sub(1) {
        let mut m = vec![vec![0 as Nat; levels[n].len()]; levels[n + 1].len()];
        let s = &d.steps[n].mult;
        for (j, row) in s.iter().enumerate() {
            for (i, &x) in row.iter().enumerate() {
                m[j][i] = x;
            }
        }
        // block A_{n-k} at level n moves to slot k+1 at level n+1
        for k in 0..=n {
            for i in 0..d.levels[n - k].len() {
                m[offsets[n + 1][k + 1] + i][offsets[n][k] + i] = 1;
            }
        }
        mats.push(m);
    }
    let cover = BratteliDiagram::from_matrices(levels, mats)?;
    let ideal = IdealSet::from_nodes(
        (0..depth).flat_map(|n| {
            let top = d.levels[n].len();
            let total = cover.levels[n].len();
            (top..total).map(move |s| NodeRef::new(n, s))
        }),
    );
    Ok((cover, ideal))
}

pub fn read_diagram(text: &str) -> Result<BratteliDiagram> {
    Ok(serde_json::from_str(text)?)
}

pub fn write_diagram(d: &BratteliDiagram) -> String {
    crate::io::to_json(d)
}

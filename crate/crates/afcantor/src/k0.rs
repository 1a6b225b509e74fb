//! Scaled dimension groups presented as limits of `ℤ^{r_n}` with positive
//! matrices, and the translation back to Bratteli diagrams.

use serde::{Deserialize, Serialize};

use crate::bratteli::{check_cantor, BratteliDiagram, CantorReport, CheckOptions, Condition};
use crate::error::{malformed, Error, Result};
use crate::fdalg::{row_weight, FdAlgebra, Matrix, Nat};

/// Ranks `r_n`, units `ū_n` and positive maps `α_n: ℤ^{r_n} → ℤ^{r_{n+1}}`
/// (rows indexed by the target).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPresentation")]
pub struct DimensionGroupPresentation {
    pub ranks: Vec<usize>,
    pub units: Vec<Vec<Nat>>,
    pub matrices: Vec<Matrix>,
}

#[derive(Deserialize)]
struct RawPresentation {
    ranks: Vec<usize>,
    units: Vec<Vec<Nat>>,
    matrices: Vec<Matrix>,
}

impl TryFrom<RawPresentation> for DimensionGroupPresentation {
    type Error = Error;

    fn try_from(r: RawPresentation) -> Result<Self> {
        DimensionGroupPresentation::new(r.ranks, r.units, r.matrices)
    }
}

impl DimensionGroupPresentation {
    /// Shapes are checked here; capacity only in [`translate`].
    pub fn new(ranks: Vec<usize>, units: Vec<Vec<Nat>>, matrices: Vec<Matrix>) -> Result<Self> {
        if ranks.is_empty() {
            return Err(malformed("presentation has no levels"));
        }
        if units.len() != ranks.len() || matrices.len() + 1 != ranks.len() {
            return Err(malformed(format!(
                "{} ranks need {} units and {} matrices, got {} and {}",
                ranks.len(),
                ranks.len(),
                ranks.len() - 1,
                units.len(),
                matrices.len()
            )));
        }
        for (n, (u, &r)) in units.iter().zip(&ranks).enumerate() {
            if u.len() != r {
                return Err(malformed(format!("unit {n} has length {}, rank is {r}", u.len())));
            }
            if u.contains(&0) {
                return Err(malformed(format!("unit {n} has a zero entry")));
            }
        }
        for (n, a) in matrices.iter().enumerate() {
            if a.len() != ranks[n + 1] || a.iter().any(|row| row.len() != ranks[n]) {
                return Err(malformed(format!(
                    "matrix {n} must be {}x{}",
                    ranks[n + 1],
                    ranks[n]
                )));
            }
        }
        Ok(DimensionGroupPresentation {
            ranks,
            units,
            matrices,
        })
    }

    pub fn depth(&self) -> usize {
        self.ranks.len()
    }

    /// Every `α_n` maps `ū_n` exactly onto `ū_{n+1}` within the prefix.
    pub fn order_unit_in_prefix(&self) -> bool {
        self.matrices.iter().enumerate().all(|(n, a)| {
            a.iter()
                .zip(&self.units[n + 1])
                .all(|(row, &u)| row_weight(row, &self.units[n]).ok() == Some(u))
        })
    }
}

pub fn extract_k0(d: &BratteliDiagram) -> DimensionGroupPresentation {
    DimensionGroupPresentation {
        ranks: d.levels().iter().map(FdAlgebra::len).collect(),
        units: d.levels().iter().map(|a| a.dims().to_vec()).collect(),
        matrices: d.steps().iter().map(|s| s.mult.clone()).collect(),
    }
}

/// The diagram with levels `ū_n` and steps `α_n`. Fails with the first row
/// where `α_n(ū_n)` exceeds `ū_{n+1}`.
pub fn translate(p: &DimensionGroupPresentation) -> Result<BratteliDiagram> {
    for (n, a) in p.matrices.iter().enumerate() {
        for (row, (r, &cap)) in a.iter().zip(&p.units[n + 1]).enumerate() {
            if row_weight(r, &p.units[n])? > cap {
                return Err(Error::Capacity { level: n, row });
            }
        }
    }
    let levels = p
        .units
        .iter()
        .map(|u| FdAlgebra::new(u.clone()))
        .collect::<Result<Vec<_>>>()?;
    BratteliDiagram::from_matrices(levels, p.matrices.clone())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupElement {
    pub level: usize,
    pub coords: Vec<i128>,
}

impl GroupElement {
    pub fn new(p: &DimensionGroupPresentation, level: usize, coords: Vec<i128>) -> Result<Self> {
        if level >= p.depth() {
            return Err(malformed(format!("level {level} is past depth {}", p.depth())));
        }
        if coords.len() != p.ranks[level] {
            return Err(malformed(format!(
                "element has {} coordinates, rank at level {level} is {}",
                coords.len(),
                p.ranks[level]
            )));
        }
        Ok(GroupElement { level, coords })
    }
}

fn apply(a: &Matrix, v: &[i128]) -> Result<Vec<i128>> {
    a.iter()
        .map(|row| {
            row.iter().zip(v).try_fold(0i128, |acc, (&x, &y)| {
                i128::try_from(x)
                    .ok()
                    .and_then(|x| x.checked_mul(y))
                    .and_then(|t| acc.checked_add(t))
                    .ok_or(Error::Overflow("push"))
            })
        })
        .collect()
}

/// `α_g.level^m (g)`.
pub fn push(p: &DimensionGroupPresentation, g: &GroupElement, m: usize) -> Result<GroupElement> {
    GroupElement::new(p, g.level, g.coords.clone())?;
    if m < g.level || m >= p.depth() {
        return Err(malformed(format!(
            "cannot push from level {} to level {m} (depth {})",
            g.level,
            p.depth()
        )));
    }
    let mut v = g.coords.clone();
    for a in &p.matrices[g.level..m] {
        v = apply(a, &v)?;
    }
    Ok(GroupElement { level: m, coords: v })
}

/// Answers that only become definite somewhere in the infinite tail are
/// never given as "no".
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "answer", rename_all = "kebab-case")]
pub enum Answer {
    Yes { level: usize },
    Inconclusive,
}

fn scan(
    p: &DimensionGroupPresentation,
    g: &GroupElement,
    depth: usize,
    ok: impl Fn(usize, &[i128]) -> bool,
) -> Result<Answer> {
    let mut cur = push(p, g, g.level)?;
    let last = depth.min(p.depth()).max(g.level + 1) - 1;
    loop {
        if ok(cur.level, &cur.coords) {
            return Ok(Answer::Yes { level: cur.level });
        }
        if cur.level >= last {
            return Ok(Answer::Inconclusive);
        }
        cur = push(p, &cur, cur.level + 1)?;
    }
}

/// Some push of `g` within the first `depth` levels is `≥ 0`.
pub fn is_positive(p: &DimensionGroupPresentation, g: &GroupElement, depth: usize) -> Result<Answer> {
    scan(p, g, depth, |_, v| v.iter().all(|&x| x >= 0))
}

/// Some push of `g` within the first `depth` levels lies in `[0, ū_m]`.
pub fn in_scale(p: &DimensionGroupPresentation, g: &GroupElement, depth: usize) -> Result<Answer> {
    scan(p, g, depth, |m, v| {
        v.iter()
            .zip(&p.units[m])
            .all(|(&x, &u)| x >= 0 && (x as u128) <= u)
    })
}

/// One condition of the universal presentation and the diagram condition
/// that decides it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionStatus {
    pub condition: String,
    pub counterpart: Condition,
    pub witnessed: usize,
    pub unwitnessed: usize,
}

impl ConditionStatus {
    pub fn holds(&self) -> bool {
        self.unwitnessed == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniversalReport {
    pub depth: usize,
    #[serde(rename = "order-unit-in-prefix")]
    pub order_unit_in_prefix: bool,
    pub conditions: Vec<ConditionStatus>,
    pub cantor: CantorReport,
}

impl UniversalReport {
    pub fn all_hold(&self) -> bool {
        self.conditions.iter().all(ConditionStatus::holds)
    }
}

/// Check conditions (1) duplicated units, (2) prescribed multiples of units
/// and (3) every unit value of `opts.universe` on the first `depth` levels.
/// (3) is left out when no universe is given.
pub fn check_universal_presentation(
    p: &DimensionGroupPresentation,
    depth: usize,
    opts: &CheckOptions,
) -> Result<UniversalReport> {
    let d = translate(p)?;
    let d = d.truncate(depth.clamp(1, d.depth()));
    let cantor = check_cantor(&d, opts)?;
    let mut pairs = vec![("(1)", Condition::D1), ("(2)", Condition::D2)];
    if opts.universe.is_some() {
        pairs.push(("(3)", Condition::D3));
    }
    let conditions = pairs
        .into_iter()
        .map(|(name, c)| ConditionStatus {
            condition: name.to_string(),
            counterpart: c,
            witnessed: cantor.count(c, true),
            unwitnessed: cantor.count(c, false),
        })
        .collect();
    Ok(UniversalReport {
        depth: d.depth(),
        order_unit_in_prefix: extract_k0(&d).order_unit_in_prefix(),
        conditions,
        cantor,
    })
}

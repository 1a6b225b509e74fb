//! A Fraïssé engine over categories of finite-dimensional algebras with
//! left-invertible embeddings, and searches against its output.
//!
//! The engine keeps a queue of buckets `(stage, b)`. Bucket `(n, b)` holds the
//! arrows `A_n → A_n ⊕ M_k` that add one summand of the `b`-th dimension `k`
//! (identity on `A_n`, any admissible row for the new summand). Buckets are
//! visited in increasing `key = b + max(0, n − lead)`, stages ascending within
//! a key, so every bucket is reached after finitely many steps. A popped
//! request already absorbed somewhere in the prefix is logged with that
//! witness; otherwise it is amalgamated with the current top level.
//!
//! In simple-matrix mode objects are single matrix algebras, requests are
//! `M_a → M_{ca}`, and every other step instead multiplies the top level by
//! the allowed prime of least exponent so far.

mod search;

pub use search::{
    absorb_search, ep_section, first_embedding, intertwine, universal_surjection_witness,
    verify_intertwining, verify_section, Absorb, Intertwining, Link, Section, SectionRound,
    SurjectionWitness,
};

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::amalgam::{proper_amalgamate, weakly_initial};
use crate::bratteli::BratteliDiagram;
use crate::error::{malformed, Error, Result};
use crate::fdalg::{
    canonical_left_inverse, validate_morphism, FdAlgebra, Matrix, Morphism, Nat,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Universe {
    Explicit(Vec<Nat>),
    /// Every dimension up to a cap that grows with the step count.
    All(AllDims),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AllDims {
    #[serde(rename = "all")]
    All,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategorySpec {
    pub universe: Universe,
    /// Initial cap for the all-dimensions universe; `cap + ⌊t/4⌋` after `t`
    /// steps.
    #[serde(default)]
    pub cap: Option<Nat>,
    #[serde(default)]
    pub unital: bool,
    #[serde(default)]
    pub simple_matrix_mode: bool,
}

impl CategorySpec {
    pub fn explicit(dims: &[Nat]) -> Self {
        CategorySpec {
            universe: Universe::Explicit(dims.to_vec()),
            cap: None,
            unital: false,
            simple_matrix_mode: false,
        }
    }

    pub fn all_dims(cap: Nat) -> Self {
        CategorySpec {
            universe: Universe::All(AllDims::All),
            cap: Some(cap),
            unital: false,
            simple_matrix_mode: false,
        }
    }

    pub fn unital(mut self) -> Self {
        self.unital = true;
        self
    }

    /// Single matrix algebras and unital maps.
    pub fn uhf(mut self) -> Self {
        self.simple_matrix_mode = true;
        self.unital = true;
        self
    }

    pub fn validate(&self) -> Result<()> {
        match &self.universe {
            Universe::Explicit(v) if v.is_empty() => Err(Error::EmptyUniverse),
            Universe::Explicit(v) if v.contains(&0) => Err(malformed("dimension 0 in universe")),
            Universe::All(_) if self.cap.unwrap_or(1) == 0 => Err(malformed("cap must be positive")),
            _ => Ok(()),
        }
    }

    /// Cap on dimensions after `steps` steps.
    pub fn cap_at(&self, steps: usize) -> Nat {
        match &self.universe {
            Universe::Explicit(v) => v.iter().copied().max().unwrap_or(0),
            Universe::All(_) => self.cap.unwrap_or(1) + (steps / 4) as Nat,
        }
    }

    /// Sorted dimensions allowed after `steps` steps.
    pub fn dims_at(&self, steps: usize) -> Vec<Nat> {
        match &self.universe {
            Universe::Explicit(v) => {
                let mut v = v.clone();
                v.sort_unstable();
                v.dedup();
                v
            }
            Universe::All(_) => (1..=self.cap_at(steps)).collect(),
        }
    }
}

/// Nonzero objects with at most `size_bound` summands, canonical (descending)
/// form, ordered by summand count and then lexicographically. In
/// simple-matrix mode the objects are the single algebras `M_k`.
pub fn enumerate_objects(spec: &CategorySpec, size_bound: usize) -> Result<Vec<FdAlgebra>> {
    spec.validate()?;
    let mut dims = spec.dims_at(0);
    if spec.simple_matrix_mode {
        return dims.into_iter().map(|k| FdAlgebra::new(vec![k])).collect();
    }
    dims.reverse();
    let mut out = Vec::new();
    for len in 1..=size_bound {
        let mut cur = Vec::new();
        multisets(&dims, len, 0, &mut cur, &mut out)?;
    }
    Ok(out)
}

fn multisets(dims: &[Nat], len: usize, from: usize, cur: &mut Vec<Nat>, out: &mut Vec<FdAlgebra>) -> Result<()> {
    if cur.len() == len {
        out.push(FdAlgebra::new(cur.clone())?);
        return Ok(());
    }
    // descending entries: dims is descending, so index never decreases
    for i in from..dims.len() {
        cur.push(dims[i]);
        multisets(dims, len, i, cur, out)?;
        cur.pop();
    }
    Ok(())
}

/// Rows `x` over `a` with `Σ x_i·a_i ≤ k` (or `= k`), lexicographic.
pub fn rows_into(a: &FdAlgebra, k: Nat, exact: bool) -> Result<Vec<Vec<Nat>>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(a.len());
    fn go(a: &[Nat], k: Nat, exact: bool, used: Nat, cur: &mut Vec<Nat>, out: &mut Vec<Vec<Nat>>) {
        if cur.len() == a.len() {
            if !exact || used == k {
                out.push(cur.clone());
            }
            return;
        }
        let d = a[cur.len()];
        let mut x: Nat = 0;
        while used + x * d <= k {
            cur.push(x);
            go(a, k, exact, used + x * d, cur, out);
            cur.pop();
            x += 1;
        }
    }
    a.size()?;
    go(a.dims(), k, exact, 0, &mut cur, &mut out);
    Ok(out)
}

/// All arrows of the category from `a` into objects of at most `size_bound`
/// summands, one per multiplicity matrix, ordered by codomain and then by
/// matrix.
pub fn enumerate_arrows(spec: &CategorySpec, a: &FdAlgebra, size_bound: usize) -> Result<Vec<Morphism>> {
    let mut out = Vec::new();
    for cod in enumerate_objects(spec, size_bound)? {
        if spec.simple_matrix_mode {
            if a.len() == 1 && cod.dim(0) % a.dim(0) == 0 {
                out.push(Morphism::new(a.clone(), cod.clone(), vec![vec![cod.dim(0) / a.dim(0)]])?);
            }
            continue;
        }
        let choices = cod
            .dims()
            .iter()
            .map(|&k| rows_into(a, k, spec.unital))
            .collect::<Result<Vec<_>>>()?;
        if choices.iter().any(|c| c.is_empty()) {
            continue;
        }
        let mut idx = vec![0usize; cod.len()];
        'odometer: loop {
            let mult: Matrix = idx.iter().zip(&choices).map(|(&i, c)| c[i].clone()).collect();
            let m = Morphism::new(a.clone(), cod.clone(), mult)?;
            if validate_morphism(&m)?.left_invertible {
                out.push(m);
            }
            // last row fastest
            let mut p = cod.len();
            loop {
                if p == 0 {
                    break 'odometer;
                }
                p -= 1;
                idx[p] += 1;
                if idx[p] < choices[p].len() {
                    break;
                }
                idx[p] = 0;
            }
        }
    }
    Ok(out)
}

/// Order of bucket visits; see the module docs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Schedule {
    pub lead: usize,
}

impl Default for Schedule {
    fn default() -> Self {
        Schedule { lead: 2 }
    }
}

impl Schedule {
    pub fn key(&self, stage: usize, b: usize) -> usize {
        b + stage.saturating_sub(self.lead)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Request {
    pub stage: usize,
    pub bucket: usize,
    pub arrow: Morphism,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogRecord {
    pub step: usize,
    pub request: Request,
    /// Level where the request is absorbed.
    pub level: usize,
    pub delta: Morphism,
    /// Whether the step added a level by amalgamation.
    pub amalgamated: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineLog {
    pub records: Vec<LogRecord>,
}

/// A generation run: category, step budget and schedule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunSpec {
    #[serde(flatten)]
    pub category: CategorySpec,
    pub steps: usize,
    #[serde(default)]
    pub schedule: Schedule,
}

/// Run the engine for `steps` steps.
pub fn build_fraisse(spec: &CategorySpec, steps: usize, schedule: Schedule) -> Result<(BratteliDiagram, EngineLog)> {
    spec.validate()?;
    let mut e = Engine::new(spec, schedule)?;
    for _ in 0..steps {
        if !e.step()? {
            break;
        }
    }
    Ok((e.diagram, e.log))
}

struct Engine<'a> {
    spec: &'a CategorySpec,
    schedule: Schedule,
    diagram: BratteliDiagram,
    log: EngineLog,
    steps: usize,
    key: usize,
    next_stage: usize,
    deferred: Vec<(usize, usize)>,
    current: VecDeque<Request>,
    /// prime exponents of the top level, simple-matrix mode only
    exps: BTreeMap<Nat, u32>,
}

/// Buckets visited without finding a request before the engine gives up.
const IDLE_LIMIT: usize = 100_000;

impl<'a> Engine<'a> {
    fn new(spec: &'a CategorySpec, schedule: Schedule) -> Result<Self> {
        let start = if spec.simple_matrix_mode {
            let g = match &spec.universe {
                Universe::All(_) => 1,
                Universe::Explicit(v) => *v.iter().min().ok_or(Error::EmptyUniverse)?,
            };
            FdAlgebra::new(vec![g])?
        } else if spec.unital {
            weakly_initial(&spec.dims_at(0))?
        } else {
            FdAlgebra::zero()
        };
        let mut exps = BTreeMap::new();
        if spec.simple_matrix_mode {
            add_factors(&mut exps, start.dim(0));
        }
        Ok(Engine {
            spec,
            schedule,
            diagram: BratteliDiagram::single(start),
            log: EngineLog::default(),
            steps: 0,
            key: 1,
            next_stage: 0,
            deferred: Vec::new(),
            current: VecDeque::new(),
            exps,
        })
    }

    fn top(&self) -> usize {
        self.diagram.depth() - 1
    }

    /// Dimension of bucket `b` (1-based), if allowed now.
    fn bucket_dim(&self, b: usize) -> Option<Nat> {
        if self.spec.simple_matrix_mode {
            // multipliers 2, 3, … (explicit: the listed ones above 1)
            let mults: Vec<Nat> = self.spec.dims_at(self.steps).into_iter().filter(|&c| c >= 2).collect();
            return mults.get(b - 1).copied();
        }
        self.spec.dims_at(self.steps).get(b - 1).copied()
    }

    fn bucket_ready(&self, n: usize, b: usize) -> bool {
        n <= self.top() && self.bucket_dim(b).is_some()
    }

    /// Explicit universes never grow, so a missing bucket dimension stays
    /// missing.
    fn bucket_dead(&self, b: usize) -> bool {
        matches!(self.spec.universe, Universe::Explicit(_)) && self.bucket_dim(b).is_none()
    }

    fn open_bucket(&mut self, n: usize, b: usize) -> Result<()> {
        let k = self.bucket_dim(b).expect("ready bucket");
        let a = self.diagram.level(n).clone();
        if self.spec.simple_matrix_mode {
            let cod = FdAlgebra::new(vec![a.dim(0).checked_mul(k).ok_or(Error::Overflow("request"))?])?;
            self.current.push_back(Request {
                stage: n,
                bucket: b,
                arrow: Morphism::new(a, cod, vec![vec![k]])?,
            });
            return Ok(());
        }
        let mut dims = a.dims().to_vec();
        dims.push(k);
        let cod = FdAlgebra::new(dims)?;
        for row in rows_into(&a, k, self.spec.unital)? {
            let mut mult = Morphism::identity(&a).mult;
            mult.push(row);
            self.current.push_back(Request {
                stage: n,
                bucket: b,
                arrow: Morphism::new(a.clone(), cod.clone(), mult)?,
            });
        }
        Ok(())
    }

    /// Fill `current` from the bucket queue. False if nothing is left.
    fn refill(&mut self) -> Result<bool> {
        let mut idle = 0;
        while self.current.is_empty() {
            if let Some(pos) = self.deferred.iter().position(|&(n, b)| self.bucket_ready(n, b)) {
                let (n, b) = self.deferred.remove(pos);
                self.open_bucket(n, b)?;
                continue;
            }
            idle += 1;
            if idle > IDLE_LIMIT {
                return Ok(false);
            }
            // next bucket of the current key
            let lead = self.schedule.lead;
            let n = self.next_stage;
            if n >= self.key + lead {
                self.key += 1;
                self.next_stage = 0;
                continue;
            }
            self.next_stage += 1;
            let b = self.key - n.saturating_sub(lead);
            debug_assert_eq!(self.schedule.key(n, b), self.key);
            if self.bucket_ready(n, b) {
                self.open_bucket(n, b)?;
            } else if !self.bucket_dead(b) {
                self.deferred.push((n, b));
            }
        }
        Ok(true)
    }

    fn step(&mut self) -> Result<bool> {
        if self.spec.simple_matrix_mode && self.steps % 2 == 1 {
            self.top_request()?;
            self.steps += 1;
            return Ok(true);
        }
        if !self.refill()? {
            return Ok(false);
        }
        let req = self.current.pop_front().unwrap();
        self.absorb(req)?;
        self.steps += 1;
        Ok(true)
    }

    /// Raise the least exponent among the primes allowed as multipliers.
    fn top_request(&mut self) -> Result<()> {
        let p = self
            .spec
            .dims_at(self.steps)
            .into_iter()
            .filter(|&c| is_prime(c))
            .min_by_key(|&c| (self.exps.get(&c).copied().unwrap_or(0), c))
            .unwrap_or(2);
        let t = self.top();
        let a = self.diagram.level(t).clone();
        let cod = FdAlgebra::new(vec![a.dim(0).checked_mul(p).ok_or(Error::Overflow("request"))?])?;
        let req = Request {
            stage: t,
            bucket: 0,
            arrow: Morphism::new(a, cod, vec![vec![p]])?,
        };
        self.absorb(req)
    }

    fn absorb(&mut self, req: Request) -> Result<()> {
        let t = self.top();
        let n = req.stage;
        if let Absorb::Found { level, delta } = absorb_search(&self.diagram, n, &req.arrow, n, t)? {
            self.log.records.push(LogRecord {
                step: self.steps,
                request: req,
                level,
                delta,
                amalgamated: false,
            });
            return Ok(());
        }
        let (g, step, delta) = if self.spec.simple_matrix_mode {
            self.pushout(&req)?
        } else {
            let phi = self.diagram.connecting(n, t)?;
            let ep1 = canonical_left_inverse(&phi)?;
            let ep2 = canonical_left_inverse(&req.arrow)?;
            let am = proper_amalgamate(&ep1, &ep2, self.spec.unital)?;
            (am.g, am.left.fwd, am.right.fwd)
        };
        self.diagram.push_level(g, step)?;
        // log the witness a replay will find; the amalgam's is the fallback
        let delta = match absorb_search(&self.diagram, n, &req.arrow, t + 1, t + 1)? {
            Absorb::Found { delta, .. } => delta,
            _ => delta,
        };
        self.log.records.push(LogRecord {
            step: self.steps,
            request: req,
            level: t + 1,
            delta,
            amalgamated: true,
        });
        Ok(())
    }

    /// `M_{a_t} ← M_{a_n} → M_{c·a_n}` completed by `M_{a_n·lcm(e, c)}`.
    fn pushout(&mut self, req: &Request) -> Result<(FdAlgebra, Morphism, Morphism)> {
        let t = self.top();
        let an = self.diagram.level(req.stage).dim(0);
        let at = self.diagram.level(t).dim(0);
        let c = req.arrow.mult[0][0];
        let e = at / an;
        let l = lcm(e, c).ok_or(Error::Overflow("pushout"))?;
        let g = FdAlgebra::new(vec![an.checked_mul(l).ok_or(Error::Overflow("pushout"))?])?;
        add_factors(&mut self.exps, l / e);
        let step = Morphism::new(self.diagram.level(t).clone(), g.clone(), vec![vec![l / e]])?;
        let delta = Morphism::new(req.arrow.cod.clone(), g.clone(), vec![vec![l / c]])?;
        Ok((g, step, delta))
    }
}

fn gcd(mut a: Nat, mut b: Nat) -> Nat {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: Nat, b: Nat) -> Option<Nat> {
    (a / gcd(a, b)).checked_mul(b)
}

fn is_prime(p: Nat) -> bool {
    p >= 2 && (2..p).take_while(|q| q * q <= p).all(|q| p % q != 0)
}

fn add_factors(exps: &mut BTreeMap<Nat, u32>, mut x: Nat) {
    let mut p: Nat = 2;
    while p * p <= x {
        while x % p == 0 {
            *exps.entry(p).or_default() += 1;
            x /= p;
        }
        p += 1;
    }
    if x > 1 {
        *exps.entry(x).or_default() += 1;
    }
}

/// Exponent of each prime `≤ prime_bound` in the largest power dividing some
/// level dimension, and whether the last level raised it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeExponent {
    pub prime: Nat,
    pub exponent: u32,
    pub growing: bool,
}

pub fn supernatural(d: &BratteliDiagram, prime_bound: Nat) -> Vec<PrimeExponent> {
    let val = |mut x: Nat, p: Nat| {
        let mut e = 0;
        while x % p == 0 {
            x /= p;
            e += 1;
        }
        e
    };
    let best = |levels: &[FdAlgebra], p: Nat| {
        levels
            .iter()
            .flat_map(|a| a.dims().iter().map(move |&k| val(k, p)))
            .max()
            .unwrap_or(0)
    };
    let levels = d.levels();
    (2..=prime_bound)
        .filter(|&p| is_prime(p))
        .filter_map(|p| {
            let e = best(levels, p);
            (e > 0).then(|| PrimeExponent {
                prime: p,
                exponent: e,
                growing: best(&levels[..levels.len() - 1], p) < e,
            })
        })
        .collect()
}

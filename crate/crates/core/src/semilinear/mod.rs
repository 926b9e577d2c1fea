//! Linear and semilinear subsets of ℕ^k.
//!
//! A [`LinearSet`] is `base + ⟨p₁, …, p_N⟩ = { base + Σ λᵢ·pᵢ : λ ∈ ℕ^N }` and a
//! [`SemilinearSet`] is a finite union of them. Membership is decided
//! exactly by a bounded depth-first search over λ: because normalised
//! periods are never zero, every λᵢ is bounded by the target vector.

mod map;
mod render;

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use map::{induced_map_of_homomorphism, LinearMap, WordHomomorphism};
pub use render::ParikhImage;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemilinearError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("coordinate overflow")]
    Overflow,
    #[error("letter `{0}` is not in the target alphabet")]
    UnknownLetter(String),
    #[error("matrix rows have different lengths")]
    RaggedMatrix,
    #[error("malformed semilinear set: {0}")]
    Malformed(String),
}

fn check_dim(expected: usize, found: usize) -> Result<(), SemilinearError> {
    if expected == found {
        Ok(())
    } else {
        Err(SemilinearError::DimensionMismatch { expected, found })
    }
}

/// A vector in ℕ^k.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NVector(Vec<u64>);

impl NVector {
    pub fn new(coords: Vec<u64>) -> Self {
        NVector(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        NVector(vec![0; dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = vec![0; dim];
        v[i] = 1;
        NVector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<u64> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Sum of coordinates (saturating).
    pub fn coord_sum(&self) -> u64 {
        self.0.iter().fold(0u64, |acc, &x| acc.saturating_add(x))
    }

    pub fn checked_add(&self, other: &NVector) -> Result<NVector, SemilinearError> {
        self.add_scaled(other, 1)
    }

    /// `self + k·other`.
    pub fn add_scaled(&self, other: &NVector, k: u64) -> Result<NVector, SemilinearError> {
        check_dim(self.dim(), other.dim())?;
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| {
                b.checked_mul(k)
                    .and_then(|kb| a.checked_add(kb))
                    .ok_or(SemilinearError::Overflow)
            })
            .collect::<Result<_, _>>()
            .map(NVector)
    }

    /// Parses `[n1,n2,...]`.
    pub fn parse(text: &str) -> Option<NVector> {
        let inner = text.trim().strip_prefix('[')?.strip_suffix(']')?.trim();
        if inner.is_empty() {
            return Some(NVector(Vec::new()));
        }
        inner
            .split(',')
            .map(|s| s.trim().parse().ok())
            .collect::<Option<Vec<u64>>>()
            .map(NVector)
    }
}

impl From<Vec<u64>> for NVector {
    fn from(v: Vec<u64>) -> Self {
        NVector(v)
    }
}

impl fmt::Display for NVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::parikh::write_vector(f, &self.0)
    }
}

/// `base + ⟨periods⟩`, kept in normalised form: no zero period and no
/// duplicate periods. Periods keep their first-occurrence order, which is
/// the order of membership witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearSet {
    base: NVector,
    periods: Vec<NVector>,
}

impl LinearSet {
    pub fn new(base: NVector, periods: Vec<NVector>) -> Result<Self, SemilinearError> {
        for p in &periods {
            check_dim(base.dim(), p.dim())?;
        }
        let mut seen = BTreeSet::new();
        let periods = periods
            .into_iter()
            .filter(|p| !p.is_zero() && seen.insert(p.clone()))
            .collect();
        Ok(LinearSet { base, periods })
    }

    pub fn singleton(base: NVector) -> Self {
        LinearSet {
            base,
            periods: Vec::new(),
        }
    }

    pub fn base(&self) -> &NVector {
        &self.base
    }

    pub fn periods(&self) -> &[NVector] {
        &self.periods
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    /// Decides `v ∈ self`; on success returns λ with
    /// `base + Σ λᵢ·periods[i] = v`.
    pub fn member(&self, v: &NVector) -> Result<Option<Vec<u64>>, SemilinearError> {
        check_dim(self.dim(), v.dim())?;
        let mut residual = Vec::with_capacity(v.dim());
        for (&x, &b) in v.0.iter().zip(&self.base.0) {
            match x.checked_sub(b) {
                Some(r) => residual.push(r),
                None => return Ok(None),
            }
        }
        let n = self.periods.len();
        // support[i][j]: some period at index ≥ i is positive in coordinate j
        let mut support = vec![vec![false; v.dim()]; n + 1];
        for i in (0..n).rev() {
            let (now, later) = support.split_at_mut(i + 1);
            for (j, s) in now[i].iter_mut().enumerate() {
                *s = later[0][j] || self.periods[i].0[j] > 0;
            }
        }
        let mut lambda = vec![0; n];
        let mut failed = HashSet::new();
        if search(
            &self.periods,
            &support,
            &mut residual,
            0,
            &mut lambda,
            &mut failed,
        ) {
            Ok(Some(lambda))
        } else {
            Ok(None)
        }
    }

    fn members_up_to(&self, max_sum: u64, out: &mut BTreeSet<NVector>) {
        let base_sum = self.base.coord_sum();
        if base_sum > max_sum {
            return;
        }
        let mut current = self.base.clone();
        enumerate(&self.periods, 0, max_sum - base_sum, &mut current, out);
    }

    fn image(&self, m: &LinearMap) -> Result<LinearSet, SemilinearError> {
        let base = m.apply(&self.base)?;
        let periods = self
            .periods
            .iter()
            .map(|p| m.apply(p))
            .collect::<Result<_, _>>()?;
        LinearSet::new(base, periods)
    }

    /// Sufficient test for `self ⊆ other`: every period of `self` lies in
    /// the monoid of `other` and the base of `self` lies in `other`.
    fn contained_in(&self, other: &LinearSet) -> bool {
        // cheap necessary conditions first: other's base is below ours and
        // everything we can add stays inside the support of other's periods
        let reach: Vec<bool> = (0..self.dim())
            .map(|j| other.periods.iter().any(|p| p.0[j] > 0))
            .collect();
        let fits = |v: &NVector| v.0.iter().zip(&reach).all(|(&x, &r)| x == 0 || r);
        let Some(gap) = self
            .base
            .0
            .iter()
            .zip(&other.base.0)
            .map(|(&a, &b)| a.checked_sub(b))
            .collect::<Option<Vec<u64>>>()
        else {
            return false;
        };
        if !fits(&NVector(gap)) || !self.periods.iter().all(fits) {
            return false;
        }
        let cone = LinearSet {
            base: NVector::zeros(self.dim()),
            periods: other.periods.clone(),
        };
        matches!(other.member(&self.base), Ok(Some(_)))
            && self
                .periods
                .iter()
                .all(|p| other.periods.contains(p) || matches!(cone.member(p), Ok(Some(_))))
    }
}

fn search(
    periods: &[NVector],
    support: &[Vec<bool>],
    residual: &mut [u64],
    i: usize,
    lambda: &mut [u64],
    failed: &mut HashSet<(usize, Vec<u64>)>,
) -> bool {
    if residual.iter().zip(&support[i]).any(|(&r, &s)| r > 0 && !s) {
        return false;
    }
    if i == periods.len() {
        return true;
    }
    if failed.contains(&(i, residual.to_vec())) {
        return false;
    }
    let p = &periods[i].0;
    let bound = p
        .iter()
        .zip(residual.iter())
        .filter(|(&pj, _)| pj > 0)
        .map(|(&pj, &rj)| rj / pj)
        .min()
        .expect("normalised periods are non-zero");
    for k in (0..=bound).rev() {
        for (r, &pj) in residual.iter_mut().zip(p) {
            *r -= k * pj;
        }
        lambda[i] = k;
        let found = search(periods, support, residual, i + 1, lambda, failed);
        for (r, &pj) in residual.iter_mut().zip(p) {
            *r += k * pj;
        }
        if found {
            return true;
        }
    }
    lambda[i] = 0;
    failed.insert((i, residual.to_vec()));
    false
}

fn enumerate(
    periods: &[NVector],
    i: usize,
    budget: u64,
    current: &mut NVector,
    out: &mut BTreeSet<NVector>,
) {
    if i == periods.len() {
        out.insert(current.clone());
        return;
    }
    let cost = periods[i].coord_sum();
    let mut k = 0;
    loop {
        enumerate(periods, i + 1, budget - k * cost, current, out);
        if (k + 1) * cost > budget {
            break;
        }
        k += 1;
        for (c, &pj) in current.0.iter_mut().zip(&periods[i].0) {
            *c += pj;
        }
    }
    for (c, &pj) in current.0.iter_mut().zip(&periods[i].0) {
        *c -= k * pj;
    }
}

/// Result of a successful semilinear membership query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub component: usize,
    pub lambda: Vec<u64>,
}

/// A finite union of linear sets of one dimension. The empty union is the
/// empty set. Components are kept sorted and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SemilinearSet {
    dim: usize,
    components: Vec<LinearSet>,
}

impl SemilinearSet {
    pub fn empty(dim: usize) -> Self {
        SemilinearSet {
            dim,
            components: Vec::new(),
        }
    }

    pub fn new(dim: usize, components: Vec<LinearSet>) -> Result<Self, SemilinearError> {
        for c in &components {
            check_dim(dim, c.dim())?;
        }
        let components: BTreeSet<LinearSet> = components.into_iter().collect();
        Ok(SemilinearSet {
            dim,
            components: components.into_iter().collect(),
        })
    }

    pub fn from_linear(set: LinearSet) -> Self {
        SemilinearSet {
            dim: set.dim(),
            components: vec![set],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> &[LinearSet] {
        &self.components
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Finds the first component containing `v`.
    pub fn member(&self, v: &NVector) -> Result<Option<Witness>, SemilinearError> {
        check_dim(self.dim, v.dim())?;
        for (component, c) in self.components.iter().enumerate() {
            if let Some(lambda) = c.member(v)? {
                return Ok(Some(Witness { component, lambda }));
            }
        }
        Ok(None)
    }

    pub fn contains(&self, v: &NVector) -> Result<bool, SemilinearError> {
        Ok(self.member(v)?.is_some())
    }

    /// All members with coordinate sum ≤ `max_coord_sum`.
    pub fn enumerate_members(&self, max_coord_sum: u64) -> BTreeSet<NVector> {
        let mut out = BTreeSet::new();
        for c in &self.components {
            c.members_up_to(max_coord_sum, &mut out);
        }
        out
    }

    pub fn union(&self, other: &SemilinearSet) -> Result<SemilinearSet, SemilinearError> {
        check_dim(self.dim, other.dim)?;
        let comps = self
            .components
            .iter()
            .chain(&other.components)
            .cloned()
            .collect();
        SemilinearSet::new(self.dim, comps)
    }

    /// Image under a linear map, component by component.
    pub fn image(&self, m: &LinearMap) -> Result<SemilinearSet, SemilinearError> {
        check_dim(m.cols(), self.dim)?;
        let comps = self
            .components
            .iter()
            .map(|c| c.image(m))
            .collect::<Result<_, _>>()?;
        SemilinearSet::new(m.rows(), comps)
    }

    /// Exact rewrites that shrink the representation without changing the
    /// set:
    ///
    /// * `b + ⟨S⟩` and `(b + p) + ⟨S ∪ {p}⟩` merge into `b + ⟨S ∪ {p}⟩`;
    /// * a component provably contained in another is dropped.
    ///
    /// The result is not guaranteed minimal.
    pub fn simplify(&self) -> SemilinearSet {
        let mut comps: Vec<LinearSet> = self.components.clone();
        loop {
            let mut merged = None;
            'outer: for (i, small) in comps.iter().enumerate() {
                for (j, big) in comps.iter().enumerate() {
                    if i == j || big.periods.len() != small.periods.len() + 1 {
                        continue;
                    }
                    let Some(extra) = big.periods.iter().find(|p| !small.periods.contains(p))
                    else {
                        continue;
                    };
                    let covers = small.periods.iter().all(|p| big.periods.contains(p));
                    if covers && small.base.checked_add(extra).ok().as_ref() == Some(&big.base) {
                        merged = Some((i, j));
                        break 'outer;
                    }
                }
            }
            let Some((i, j)) = merged else { break };
            let periods = comps[j].periods.clone();
            comps[i].periods = periods;
            comps.remove(j);
        }
        let mut kept: Vec<LinearSet> = Vec::new();
        // larger period sets first so they absorb smaller ones
        comps.sort_by(|a, b| b.periods.len().cmp(&a.periods.len()).then(a.cmp(b)));
        for c in comps {
            if !kept.iter().any(|k| c.contained_in(k)) {
                kept.retain(|k| !k.contained_in(&c));
                kept.push(c);
            }
        }
        SemilinearSet::new(self.dim, kept).expect("dimensions unchanged")
    }
}

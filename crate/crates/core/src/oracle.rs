//! Bounded brute-force realizability search, used to cross-validate the
//! planners and the checkers on small instances.
//!
//! The search keys on contribution vectors rather than manifolds: one
//! operation of dimension `d` contributes `1` at degrees `n − d` and `n`
//! and a palindromic middle determined by the summand multiset, so many
//! manifolds are interchangeable. A witness manifold is kept per vector.
//! Since every operation adds exactly one rank at the top degree, a plan
//! for a free target must use exactly `rank G_n` operations, which makes
//! exhaustion feasible at desk scale.

use serde::{Deserialize, Serialize};

use crate::bubbling::{contribution, BaseModel, Plan};
use crate::error::{Error, Result};
use crate::manifolds::GeneratingManifold;
use crate::planner::TargetSequence;

/// Enumeration caps for the exhaustive search. Desk-scale defaults:
/// `max_n = 4`, `max_copies = 4` (summand multiplicity cap per sphere
/// product in one operation), `max_total_rank = 8`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBounds {
    pub max_n: usize,
    pub max_copies: usize,
    pub max_total_rank: usize,
}

impl Default for SearchBounds {
    fn default() -> Self {
        Self {
            max_n: 4,
            max_copies: 4,
            max_total_rank: 8,
        }
    }
}

impl SearchBounds {
    pub fn validate(&self) -> Result<()> {
        if self.max_n == 0 || self.max_copies == 0 || self.max_total_rank == 0 {
            return Err(Error::BoundsExceeded(
                "all search bounds must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// A contribution vector with one witness manifold realizing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContributionVector {
    pub ranks: Vec<usize>,
    pub witness: GeneratingManifold,
}

fn vector_for(witness: GeneratingManifold, n: usize) -> Result<ContributionVector> {
    let ranks = contribution(&witness, n)?.ranks();
    Ok(ContributionVector { ranks, witness })
}

/// All contribution vectors of catalog manifolds of dimension `d` inside
/// an `n`-dimensional target, within the bounds. Enumeration order is
/// deterministic: the plain sphere (or point) first, then connected sums
/// by ascending summand-multiplicity tuples; vectors with an entry above
/// `max_total_rank` are dropped.
pub fn enumerate_contribution_vectors(
    n: usize,
    d: usize,
    bounds: &SearchBounds,
) -> Result<Vec<ContributionVector>> {
    bounds.validate()?;
    if d >= n {
        return Err(Error::NoCodimension { dim: d, n });
    }
    let mut out = Vec::new();
    if d == 0 {
        out.push(vector_for(GeneratingManifold::point(), n)?);
        return Ok(out);
    }
    out.push(vector_for(GeneratingManifold::sphere(d)?, n)?);
    if d < 2 {
        return Ok(out);
    }
    // Multiplicity tuples over the pair types (1, d−1), (2, d−2), …,
    // (⌊d/2⌋, ⌈d/2⌉), each between 0 and max_copies, skipping all-zero.
    let pair_types: Vec<(usize, usize)> = (1..=d / 2).map(|a| (a, d - a)).collect();
    let mut counts = vec![0usize; pair_types.len()];
    loop {
        // Increment the tuple in ascending (little-endian) order.
        let mut pos = 0;
        loop {
            if pos == counts.len() {
                return Ok(out);
            }
            counts[pos] += 1;
            if counts[pos] <= bounds.max_copies {
                break;
            }
            counts[pos] = 0;
            pos += 1;
        }
        let mut summands = Vec::new();
        for (count, &(a, b)) in counts.iter().zip(&pair_types) {
            for _ in 0..*count {
                summands.push((a, b));
            }
        }
        let witness = GeneratingManifold::connected_sum(d, summands)?;
        let vector = vector_for(witness, n)?;
        if vector.ranks.iter().all(|&r| r <= bounds.max_total_rank) {
            out.push(vector);
        }
    }
}

/// Result of an exhaustive search: a verified plan, or the statement that
/// no plan exists within the bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Realized(Plan),
    InfeasibleWithinBounds,
}

impl SearchOutcome {
    pub fn realized(&self) -> bool {
        matches!(self, SearchOutcome::Realized(_))
    }

    pub fn plan(&self) -> Option<&Plan> {
        match self {
            SearchOutcome::Realized(plan) => Some(plan),
            SearchOutcome::InfeasibleWithinBounds => None,
        }
    }
}

/// Exhaustive multiset search over contribution vectors with exactly
/// `rank G_n` operations. Returns the first plan in enumeration order or
/// a proof-of-exhaustion verdict within the bounds.
pub fn search_realization(target: &TargetSequence, bounds: &SearchBounds) -> Result<SearchOutcome> {
    bounds.validate()?;
    let torsion = target.groups().torsion_degrees();
    if !torsion.is_empty() {
        return Err(Error::UnsupportedTorsion { degrees: torsion });
    }
    let n = target.n();
    if n > bounds.max_n {
        return Err(Error::BoundsExceeded(format!(
            "target dimension {n} exceeds max_n {}",
            bounds.max_n
        )));
    }
    let ranks = target.ranks();
    let total: usize = ranks.iter().sum();
    if total > bounds.max_total_rank {
        return Err(Error::BoundsExceeded(format!(
            "total rank {total} exceeds max_total_rank {}",
            bounds.max_total_rank
        )));
    }

    let mut candidates = Vec::new();
    for d in 0..n {
        candidates.extend(enumerate_contribution_vectors(n, d, bounds)?);
    }

    let mut residual = ranks;
    let operations = residual[n];
    let mut chosen: Vec<usize> = Vec::with_capacity(operations);
    if dfs(&candidates, &mut residual, operations, 0, &mut chosen) {
        let ops = chosen
            .iter()
            .map(|&i| candidates[i].witness.clone())
            .collect();
        let plan = Plan::new(n, BaseModel::Ball, ops)?;
        debug_assert!(crate::planner::verify_plan(&plan, target).unwrap_or(false));
        Ok(SearchOutcome::Realized(plan))
    } else {
        Ok(SearchOutcome::InfeasibleWithinBounds)
    }
}

/// Depth-first multiset choice with nondecreasing candidate index; every
/// candidate carries one unit at the top degree, so the residual there
/// always equals the number of operations still to place.
fn dfs(
    candidates: &[ContributionVector],
    residual: &mut Vec<usize>,
    remaining: usize,
    start: usize,
    chosen: &mut Vec<usize>,
) -> bool {
    if remaining == 0 {
        return residual.iter().all(|&r| r == 0);
    }
    for idx in start..candidates.len() {
        let vector = &candidates[idx].ranks;
        if vector.iter().zip(residual.iter()).any(|(v, r)| v > r) {
            continue;
        }
        for (slot, v) in residual.iter_mut().zip(vector.iter()) {
            *slot -= v;
        }
        chosen.push(idx);
        if dfs(candidates, residual, remaining - 1, idx, chosen) {
            return true;
        }
        chosen.pop();
        for (slot, v) in residual.iter_mut().zip(vector.iter()) {
            *slot += v;
        }
    }
    false
}

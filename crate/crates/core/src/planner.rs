//! Realizability of target homology-increment sequences and construction
//! of verified surgery plans.
//!
//! A target assigns a finitely generated abelian group `G_j` to every
//! degree `0..=n`. The checkers decide named criteria:
//!
//! - `necessary` — conditions every realizable sequence satisfies
//!   (`G_0` trivial, the top pair free, effective-minimum rank bound);
//! - `thm1` — ranks strictly increase from the effective minimum to `n`;
//! - `remark1` — weakened staircase condition: strict increase on the
//!   upper half plus a mirrored difference bound on the lower half;
//! - `prop3` — middle ranks fit in the top-degree budget
//!   (`Σ_{k=1}^{n−1} rank G_k ≤ rank G_n`).
//!
//! The planners build explicit operation lists: `plan_prop3` spends the
//! budget on spheres and points; `plan_peel` clears the lower half of the
//! residual with one round of codimension-`j_0` connected sums and
//! recurses. Every produced plan is replayed through the update engine and
//! compared against the target — runtime verification is authoritative.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::abelian::GradedGroup;
use crate::bubbling::{delta_of_plan, BaseModel, Plan};
use crate::error::{Error, Result};
use crate::manifolds::GeneratingManifold;

/// A desired homology-increment sequence `{G_j}_{j=0}^{n}` over a target
/// of positive dimension `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetSequence {
    groups: GradedGroup,
}

impl TargetSequence {
    pub fn new(groups: GradedGroup) -> Result<Self> {
        if groups.top_degree() == 0 {
            return Err(Error::ZeroTargetDimension);
        }
        Ok(Self { groups })
    }

    /// Free target with the given ranks (degree 0 upward).
    pub fn from_ranks(ranks: &[usize]) -> Result<Self> {
        Self::new(GradedGroup::from_ranks(ranks)?)
    }

    pub fn n(&self) -> usize {
        self.groups.top_degree()
    }

    pub fn groups(&self) -> &GradedGroup {
        &self.groups
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.groups.ranks()
    }

    pub fn is_zero(&self) -> bool {
        self.groups.is_zero()
    }

    fn require_free(&self) -> Result<()> {
        let degrees = self.groups.torsion_degrees();
        if degrees.is_empty() {
            Ok(())
        } else {
            Err(Error::UnsupportedTorsion { degrees })
        }
    }
}

impl Serialize for TargetSequence {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        self.groups.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for TargetSequence {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let groups = GradedGroup::deserialize(de)?;
        TargetSequence::new(groups).map_err(D::Error::custom)
    }
}

/// Smallest degree with a nontrivial group; `None` when all are trivial.
pub fn effective_minimum(target: &TargetSequence) -> Option<usize> {
    target.groups.groups().iter().position(|g| !g.is_zero())
}

/// Necessary conditions on a realizable sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NecessaryCondition {
    /// `G_0` must be trivial.
    DegreeZeroTrivial,
    /// `G_{n−1}` and `G_n` must be free.
    TopPairFree,
    /// `G_n` must be nontrivial when any `G_j` is.
    TopDegreeNontrivial,
    /// `rank G_{j_0} ≤ rank G_n` at the effective minimum `j_0`.
    EffectiveMinimumRankBound,
    /// `G_{j_0}` must be free.
    EffectiveMinimumFree,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NecessaryViolation {
    pub condition: NecessaryCondition,
    pub degrees: Vec<usize>,
}

/// Check all necessary conditions; an empty list means pass.
pub fn check_necessary(target: &TargetSequence) -> Vec<NecessaryViolation> {
    let n = target.n();
    let groups = target.groups.groups();
    let mut violations = Vec::new();
    if !groups[0].is_zero() {
        violations.push(NecessaryViolation {
            condition: NecessaryCondition::DegreeZeroTrivial,
            degrees: vec![0],
        });
    }
    let torsion_top: Vec<usize> = [n - 1, n]
        .iter()
        .copied()
        .filter(|&j| !groups[j].is_free())
        .collect();
    if !torsion_top.is_empty() {
        violations.push(NecessaryViolation {
            condition: NecessaryCondition::TopPairFree,
            degrees: torsion_top,
        });
    }
    if let Some(j0) = effective_minimum(target) {
        if groups[n].is_zero() {
            violations.push(NecessaryViolation {
                condition: NecessaryCondition::TopDegreeNontrivial,
                degrees: vec![n],
            });
        }
        if groups[j0].rank() > groups[n].rank() {
            violations.push(NecessaryViolation {
                condition: NecessaryCondition::EffectiveMinimumRankBound,
                degrees: vec![j0, n],
            });
        }
        if !groups[j0].is_free() {
            violations.push(NecessaryViolation {
                condition: NecessaryCondition::EffectiveMinimumFree,
                degrees: vec![j0],
            });
        }
    }
    violations
}

/// True iff the ranks strictly increase from the effective minimum
/// through degree `n` (vacuously true when all groups are trivial).
pub fn check_thm1(target: &TargetSequence) -> Result<bool> {
    target.require_free()?;
    let Some(j0) = effective_minimum(target) else {
        return Ok(true);
    };
    let ranks = target.ranks();
    Ok((j0..target.n()).all(|j| ranks[j + 1] > ranks[j]))
}

/// Weakened staircase condition.
///
/// With `j_0` the effective minimum and `g = n − j_0`: the ranks must
/// strictly increase from `j_0 + (g−1)/2` (odd `g`) or `j_0 + g/2 − 1`
/// (even `g`) through `n`, and every lower-half degree `j` must satisfy
/// either `rank G_{j+1} ≥ rank G_j` or the mirrored strict bound
/// `rank G_j − rank G_{j+1} < rank G_{n−(j−j_0)} − rank G_{n−(j−j_0+1)}`.
pub fn check_remark1(target: &TargetSequence) -> Result<bool> {
    target.require_free()?;
    let Some(j0) = effective_minimum(target) else {
        return Ok(true);
    };
    let n = target.n();
    let ranks = target.ranks();
    let gap = n - j0;
    let upper_start = if gap % 2 == 1 {
        j0 + (gap - 1) / 2
    } else {
        // gap = 0 puts the start one below j_0 = n, which is still a
        // valid degree since n >= 1.
        (j0 + gap / 2).saturating_sub(1)
    };
    for j in upper_start..n {
        if ranks[j + 1] <= ranks[j] {
            return Ok(false);
        }
    }
    for j in j0..upper_start {
        if ranks[j + 1] >= ranks[j] {
            continue;
        }
        let drop = ranks[j] - ranks[j + 1];
        let mirror_hi = n - (j - j0);
        let mirror_lo = n - (j - j0 + 1);
        // Mirror degrees sit inside the verified strictly increasing
        // region, so this difference is positive.
        let mirror_diff = ranks[mirror_hi] - ranks[mirror_lo];
        if drop >= mirror_diff {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff `G_0` is trivial and the middle ranks fit the top budget:
/// `Σ_{k=1}^{n−1} rank G_k ≤ rank G_n`.
pub fn check_prop3(target: &TargetSequence) -> Result<bool> {
    target.require_free()?;
    let ranks = target.ranks();
    let n = target.n();
    if ranks[0] > 0 {
        return Ok(false);
    }
    let middle: usize = ranks[1..n].iter().sum();
    Ok(middle <= ranks[n])
}

/// Spheres-and-points constructor: `rank G_j` copies of `S^{n−j}` for
/// `1 ≤ j ≤ n−1`, then `rank G_n − Σ rank G_k` points.
pub fn plan_prop3(target: &TargetSequence) -> Result<Plan> {
    if !check_prop3(target)? {
        return Err(Error::StrategyNotApplicable {
            strategy: "prop3",
            reason: "middle ranks exceed the top-degree budget or degree 0 is nontrivial".into(),
        });
    }
    let n = target.n();
    let ranks = target.ranks();
    let mut operations = Vec::new();
    for j in 1..n {
        for _ in 0..ranks[j] {
            operations.push(GeneratingManifold::sphere(n - j)?);
        }
    }
    let middle: usize = ranks[1..n].iter().sum();
    for _ in 0..ranks[n] - middle {
        operations.push(GeneratingManifold::point());
    }
    Plan::new(n, BaseModel::Ball, operations)
}

fn peel_subtract(residual: &mut [usize], degree: usize, amount: usize, round: usize) -> Result<()> {
    residual[degree] = residual[degree]
        .checked_sub(amount)
        .ok_or(Error::PeelFailed { degree, round })?;
    Ok(())
}

/// Peeling constructor.
///
/// Each round reads the effective minimum `j_0` of the residual ranks and
/// spends all `m = t_{j_0}` forced operations of dimension `d = n − j_0`:
/// one connected sum packing `t_j` copies of `S^{j−j_0} × S^{n−j}` for
/// every degree strictly between `j_0` and the midpoint `(n+j_0)/2`
/// (plus `⌊t_mid/2⌋` copies of the square product when `n+j_0` is even),
/// and `m − 1` plain `d`-spheres. Subtracting their contributions zeroes
/// the residual up to the midpoint, so the effective minimum strictly
/// grows and the recursion terminates; once it reaches `n` the remaining
/// rank is spent on points. A residual going negative aborts with the
/// offending degree and round — that certifies only that this strategy
/// failed, not that the target is unrealizable.
pub fn plan_peel(target: &TargetSequence) -> Result<Plan> {
    target.require_free()?;
    let n = target.n();
    let mut residual = target.ranks();
    if residual[0] > 0 {
        return Err(Error::StrategyNotApplicable {
            strategy: "peel",
            reason: "degree-0 group must be trivial".into(),
        });
    }
    let mut operations = Vec::new();
    let mut round = 0;
    while let Some(j0) = residual.iter().position(|&r| r > 0) {
        round += 1;
        if j0 == n {
            for _ in 0..residual[n] {
                operations.push(GeneratingManifold::point());
            }
            residual[n] = 0;
            break;
        }
        let d = n - j0;
        let m = residual[j0];
        let mut summands = Vec::new();
        // Last degree strictly below the midpoint (n + j0) / 2.
        let below_mid = (n + j0 - 1) / 2;
        for j in j0 + 1..=below_mid {
            for _ in 0..residual[j] {
                summands.push((j - j0, n - j));
            }
        }
        if (n + j0).is_multiple_of(2) {
            let mid = (n + j0) / 2;
            for _ in 0..residual[mid] / 2 {
                summands.push((mid - j0, n - mid));
            }
        }
        let lead = if summands.is_empty() {
            GeneratingManifold::sphere(d)?
        } else {
            GeneratingManifold::connected_sum(d, summands)?
        };
        let lead_contribution = crate::bubbling::contribution(&lead, n)?;
        for (degree, rank) in lead_contribution.ranks().into_iter().enumerate() {
            if rank > 0 {
                peel_subtract(&mut residual, degree, rank, round)?;
            }
        }
        operations.push(lead);
        for _ in 1..m {
            peel_subtract(&mut residual, j0, 1, round)?;
            peel_subtract(&mut residual, n, 1, round)?;
            operations.push(GeneratingManifold::sphere(d)?);
        }
    }
    Plan::new(n, BaseModel::Ball, operations)
}

/// True iff the plan's homology increment equals the target degreewise
/// (exact integer equality in canonical form).
pub fn verify_plan(plan: &Plan, target: &TargetSequence) -> Result<bool> {
    if plan.n() != target.n() {
        return Err(Error::DegreeMismatch {
            expected: target.n(),
            actual: plan.n(),
        });
    }
    Ok(delta_of_plan(plan)? == target.groups)
}

// ---------------------------------------------------------------------------
// Rank sequences induced by functions
// ---------------------------------------------------------------------------

mod rational_json {
    use super::*;

    pub fn to_string(r: &BigRational) -> String {
        r.to_string()
    }

    pub fn parse(s: &str) -> Result<BigRational> {
        s.parse::<BigRational>()
            .map_err(|e| Error::InvalidFunctionSpec(format!("bad rational `{s}`: {e}")))
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    pub enum RationalIn {
        Text(String),
        Number(serde_json::Number),
    }

    impl RationalIn {
        pub fn into_rational(self) -> Result<BigRational> {
            match self {
                RationalIn::Text(s) => parse(&s),
                RationalIn::Number(n) => parse(&n.to_string()),
            }
        }
    }
}

/// An exactly evaluable rank-generating function `c`.
///
/// Polynomials take rational coefficients in ascending degree and must be
/// nonconstant; exponential `a^x` and logarithm `log_a(x)` take a rational
/// base `a > 1`; `samples` lists `c(0), c(1), …` explicitly. Evaluation is
/// exact: no floating point is involved, so floors at near-integer values
/// are always right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctionSpec {
    Polynomial { coeffs: Vec<BigRational> },
    Exponential { base: BigRational },
    Logarithm { base: BigRational },
    Samples { values: Vec<BigRational> },
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum FunctionSpecRepr {
    Polynomial {
        coeffs: Vec<rational_json::RationalIn>,
    },
    Exponential {
        base: rational_json::RationalIn,
    },
    Logarithm {
        base: rational_json::RationalIn,
    },
    Samples {
        values: Vec<rational_json::RationalIn>,
    },
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum FunctionSpecOut {
    Polynomial { coeffs: Vec<String> },
    Exponential { base: String },
    Logarithm { base: String },
    Samples { values: Vec<String> },
}

impl Serialize for FunctionSpec {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let out = match self {
            FunctionSpec::Polynomial { coeffs } => FunctionSpecOut::Polynomial {
                coeffs: coeffs.iter().map(rational_json::to_string).collect(),
            },
            FunctionSpec::Exponential { base } => FunctionSpecOut::Exponential {
                base: rational_json::to_string(base),
            },
            FunctionSpec::Logarithm { base } => FunctionSpecOut::Logarithm {
                base: rational_json::to_string(base),
            },
            FunctionSpec::Samples { values } => FunctionSpecOut::Samples {
                values: values.iter().map(rational_json::to_string).collect(),
            },
        };
        out.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for FunctionSpec {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let repr = FunctionSpecRepr::deserialize(de)?;
        let collect = |items: Vec<rational_json::RationalIn>| -> Result<Vec<BigRational>> {
            items.into_iter().map(|r| r.into_rational()).collect()
        };
        let spec = match repr {
            FunctionSpecRepr::Polynomial { coeffs } => FunctionSpec::Polynomial {
                coeffs: collect(coeffs).map_err(D::Error::custom)?,
            },
            FunctionSpecRepr::Exponential { base } => FunctionSpec::Exponential {
                base: base.into_rational().map_err(D::Error::custom)?,
            },
            FunctionSpecRepr::Logarithm { base } => FunctionSpec::Logarithm {
                base: base.into_rational().map_err(D::Error::custom)?,
            },
            FunctionSpecRepr::Samples { values } => FunctionSpec::Samples {
                values: collect(values).map_err(D::Error::custom)?,
            },
        };
        spec.validate().map_err(D::Error::custom)?;
        Ok(spec)
    }
}

impl FunctionSpec {
    /// Polynomial from integer coefficients, ascending degree.
    pub fn polynomial_from_integers(coeffs: &[i64]) -> Result<Self> {
        let spec = FunctionSpec::Polynomial {
            coeffs: coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn exponential_with_integer_base(base: i64) -> Result<Self> {
        let spec = FunctionSpec::Exponential {
            base: BigRational::from_integer(BigInt::from(base)),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn logarithm_with_integer_base(base: i64) -> Result<Self> {
        let spec = FunctionSpec::Logarithm {
            base: BigRational::from_integer(BigInt::from(base)),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            FunctionSpec::Polynomial { coeffs } => {
                let degree = coeffs.iter().rposition(|c| !c.is_zero());
                match degree {
                    Some(d) if d >= 1 => Ok(()),
                    _ => Err(Error::InvalidFunctionSpec(
                        "polynomial must be nonconstant".into(),
                    )),
                }
            }
            FunctionSpec::Exponential { base } | FunctionSpec::Logarithm { base } => {
                if *base > BigRational::one() {
                    Ok(())
                } else {
                    Err(Error::InvalidFunctionSpec(
                        "exponential/logarithm base must be greater than 1".into(),
                    ))
                }
            }
            FunctionSpec::Samples { .. } => Ok(()),
        }
    }

    /// Exact `⌊c(j)⌋` for integer `j ≥ 1`.
    fn eval_floor(&self, j: usize) -> Result<BigInt> {
        match self {
            FunctionSpec::Polynomial { coeffs } => {
                let x = BigRational::from_integer(BigInt::from(j));
                let mut acc = BigRational::zero();
                for c in coeffs.iter().rev() {
                    acc = acc * &x + c;
                }
                Ok(acc.floor().to_integer())
            }
            FunctionSpec::Exponential { base } => {
                let mut acc = BigRational::one();
                for _ in 0..j {
                    acc *= base;
                }
                Ok(acc.floor().to_integer())
            }
            FunctionSpec::Logarithm { base } => {
                // floor(log_base j) = max k with base^k <= j, exact by
                // rational comparison; j >= 1 keeps it nonnegative.
                let x = BigRational::from_integer(BigInt::from(j));
                let mut k: usize = 0;
                let mut acc = base.clone();
                while acc <= x {
                    acc *= base;
                    k += 1;
                }
                Ok(BigInt::from(k))
            }
            FunctionSpec::Samples { values } => values
                .get(j)
                .map(|v| v.floor().to_integer())
                .ok_or_else(|| {
                    Error::InvalidFunctionSpec(format!(
                        "samples list has {} values but c({j}) was requested",
                        values.len()
                    ))
                }),
        }
    }
}

/// Build the free target with `r_0 = 0` and `r_j = max(⌊c(j)⌋, 0)` for
/// `1 ≤ j ≤ n` (`r_j = 0` wherever `c(j) < 0`).
pub fn sequence_from_function(spec: &FunctionSpec, n: usize) -> Result<TargetSequence> {
    spec.validate()?;
    if n == 0 {
        return Err(Error::ZeroTargetDimension);
    }
    let mut ranks = vec![0usize; n + 1];
    for (j, slot) in ranks.iter_mut().enumerate().skip(1) {
        let floor = spec.eval_floor(j)?;
        if floor.is_negative() {
            continue;
        }
        *slot = floor.to_usize().ok_or(Error::RankOverflow(floor))?;
    }
    TargetSequence::from_ranks(&ranks)
}

/// Peel failure certificate: the degree whose residual went negative and
/// the round in which it happened.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeelFailure {
    pub degree: usize,
    pub round: usize,
}

/// One row of a [`find_min_n`] verdict table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinNRow {
    pub n: usize,
    pub checks: CheckTrace,
    pub realized: bool,
    pub verified: bool,
    pub operations: Option<usize>,
    pub failure: Option<PeelFailure>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinNReport {
    pub min_feasible_n: Option<usize>,
    pub rows: Vec<MinNRow>,
}

/// Smallest `n ≤ n_max` whose induced sequence peels successfully, along
/// with the per-`n` verdict table for `n = 1..=n_max`.
pub fn find_min_n(spec: &FunctionSpec, n_max: usize) -> Result<MinNReport> {
    spec.validate()?;
    if n_max == 0 {
        return Err(Error::ZeroTargetDimension);
    }
    let mut rows = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let target = sequence_from_function(spec, n)?;
        let checks = run_checks(&target);
        let row = match plan_peel(&target) {
            Ok(plan) => {
                let verified = verify_plan(&plan, &target)?;
                MinNRow {
                    n,
                    checks,
                    realized: true,
                    verified,
                    operations: Some(plan.operations().len()),
                    failure: None,
                }
            }
            Err(Error::PeelFailed { degree, round }) => MinNRow {
                n,
                checks,
                realized: false,
                verified: false,
                operations: None,
                failure: Some(PeelFailure { degree, round }),
            },
            Err(other) => return Err(other),
        };
        rows.push(row);
    }
    let min_feasible_n = rows.iter().find(|r| r.realized && r.verified).map(|r| r.n);
    Ok(MinNReport {
        min_feasible_n,
        rows,
    })
}

// ---------------------------------------------------------------------------
// Feasibility reports
// ---------------------------------------------------------------------------

/// Outcomes of the named checkers on one target.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckTrace {
    pub thm1: bool,
    pub remark1: bool,
    pub prop3: bool,
    pub necessary: bool,
}

/// Run all checkers, mapping torsion errors to `false`.
pub fn run_checks(target: &TargetSequence) -> CheckTrace {
    CheckTrace {
        thm1: check_thm1(target).unwrap_or(false),
        remark1: check_remark1(target).unwrap_or(false),
        prop3: check_prop3(target).unwrap_or(false),
        necessary: check_necessary(target).is_empty(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Realized,
    PeelFailed,
    NecessaryViolated,
    UnsupportedTorsion,
}

/// The evidence behind a verdict: which strategy produced the attached
/// plan, or which condition blocked the target at which degrees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Realized {
        strategy: String,
        note: Option<String>,
    },
    NecessaryViolated {
        violations: Vec<NecessaryViolation>,
    },
    UnsupportedTorsion {
        degrees: Vec<usize>,
    },
    PeelFailed {
        failure: PeelFailure,
    },
}

/// Verdict plus certificate for one target. A `REALIZED` report always
/// carries a plan that was replayed and matched the target exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeasibilityReport {
    pub verdict: Verdict,
    pub certificate: Certificate,
    pub plan: Option<Plan>,
    pub checks: CheckTrace,
}

impl FeasibilityReport {
    pub fn realized(&self) -> bool {
        self.verdict == Verdict::Realized
    }
}

/// Decide a target: necessary-condition violations first, then torsion,
/// then the planners (`prop3` when its budget condition holds, otherwise
/// peeling). Every emitted plan is verified by replay before the verdict
/// is returned.
pub fn decide(target: &TargetSequence) -> FeasibilityReport {
    let checks = run_checks(target);
    let violations = check_necessary(target);
    if !violations.is_empty() {
        return FeasibilityReport {
            verdict: Verdict::NecessaryViolated,
            certificate: Certificate::NecessaryViolated { violations },
            plan: None,
            checks,
        };
    }
    let torsion = target.groups.torsion_degrees();
    if !torsion.is_empty() {
        return FeasibilityReport {
            verdict: Verdict::UnsupportedTorsion,
            certificate: Certificate::UnsupportedTorsion { degrees: torsion },
            plan: None,
            checks,
        };
    }
    if target.is_zero() {
        let plan = Plan::new(target.n(), BaseModel::Ball, Vec::new())
            .expect("empty plan over a positive-dimensional target");
        debug_assert!(verify_plan(&plan, target).unwrap_or(false));
        return FeasibilityReport {
            verdict: Verdict::Realized,
            certificate: Certificate::Realized {
                strategy: "empty".into(),
                note: Some("all-zero target is realized by the empty iteration".into()),
            },
            plan: Some(plan),
            checks,
        };
    }
    let planned = if checks.prop3 {
        plan_prop3(target).map(|p| (p, "prop3"))
    } else {
        plan_peel(target).map(|p| (p, "peel"))
    };
    match planned {
        Ok((plan, strategy)) => {
            let verified = verify_plan(&plan, target).expect("plan built for this target");
            assert!(verified, "constructed plan failed replay verification");
            FeasibilityReport {
                verdict: Verdict::Realized,
                certificate: Certificate::Realized {
                    strategy: strategy.into(),
                    note: None,
                },
                plan: Some(plan),
                checks,
            }
        }
        Err(Error::PeelFailed { degree, round }) => FeasibilityReport {
            verdict: Verdict::PeelFailed,
            certificate: Certificate::PeelFailed {
                failure: PeelFailure { degree, round },
            },
            plan: None,
            checks,
        },
        Err(err) => unreachable!("planner preconditions were established: {err}"),
    }
}

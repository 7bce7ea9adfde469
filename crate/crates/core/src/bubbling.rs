//! The surgery update engine: base Reeb-space homology models and the
//! effect of bubbling operations on them.
//!
//! An operation along a generating manifold `S` inside an `n`-dimensional
//! target adds the homology of `S` shifted up by `n − dim S`, degree by
//! degree. The top homology of `S` is a single `Z` (closed connected
//! orientable), so every operation adds exactly one rank at degree `n`.
//! Iterating operations therefore sums their contributions, independently
//! of order and of the base model.

use serde::{Deserialize, Serialize};

use crate::abelian::{graded_sum_shift, FgAbelianGroup, GradedGroup};
use crate::error::{Error, Result};
use crate::manifolds::GeneratingManifold;

/// A Reeb space represented only by its graded homology, with a free-text
/// provenance label. Degree 0 is free of rank at least 1 (the source
/// manifold is connected).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReebModel {
    n: usize,
    label: String,
    homology: GradedGroup,
}

impl ReebModel {
    pub fn new(label: impl Into<String>, homology: GradedGroup) -> Result<Self> {
        let n = homology.top_degree();
        if n == 0 {
            return Err(Error::ZeroTargetDimension);
        }
        let h0 = homology.degree(0);
        if h0.rank() < 1 || !h0.is_free() {
            return Err(Error::BadBaseModel);
        }
        Ok(Self {
            n,
            label: label.into(),
            homology,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn homology(&self) -> &GradedGroup {
        &self.homology
    }
}

/// Reeb space of the standard projection of the unit sphere: a
/// contractible `n`-disc, so only `H_0 = Z`.
pub fn base_special_generic_ball(n: usize) -> Result<ReebModel> {
    if n == 0 {
        return Err(Error::ZeroTargetDimension);
    }
    let mut homology = GradedGroup::zero(n);
    homology.set_degree(0, FgAbelianGroup::free(1));
    ReebModel::new(format!("special generic ball (n={n})"), homology)
}

/// Bouquet of `l` copies of the `n`-sphere: `H_0 = Z`, `H_n = Z^l`.
pub fn base_bouquet(n: usize, l: usize) -> Result<ReebModel> {
    if n == 0 {
        return Err(Error::ZeroTargetDimension);
    }
    let mut homology = GradedGroup::zero(n);
    homology.set_degree(0, FgAbelianGroup::free(1));
    homology.set_degree(n, homology.degree(n).direct_sum(&FgAbelianGroup::free(l)));
    ReebModel::new(format!("bouquet of {l} copies of S^{n}"), homology)
}

/// The graded homology increment of one bubbling operation along `S`
/// inside an `n`-dimensional target: `H_*(S)` shifted up by `n − dim S`.
///
/// `S` needs positive codimension, so `dim S ≤ n − 1`; in particular the
/// degree-`n` entry is exactly `Z`.
pub fn contribution(s: &GeneratingManifold, n: usize) -> Result<GradedGroup> {
    if n == 0 {
        return Err(Error::ZeroTargetDimension);
    }
    s.validate()?;
    let dim = s.dim();
    if dim >= n {
        return Err(Error::NoCodimension { dim, n });
    }
    let manifold_homology = GradedGroup::from_groups(s.homology())?;
    graded_sum_shift(&GradedGroup::zero(n), &manifold_homology, n - dim)
}

/// Apply one bubbling operation: degreewise direct sum of the model's
/// homology with the operation's contribution.
pub fn apply_operation(w: &ReebModel, s: &GeneratingManifold) -> Result<ReebModel> {
    let delta = contribution(s, w.n())?;
    let homology = w.homology().direct_sum(&delta)?;
    ReebModel::new(w.label().to_string(), homology)
}

/// Base Reeb model of a plan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum BaseModel {
    Ball,
    Bouquet { l: usize },
    Custom { homology: GradedGroup },
}

/// A base Reeb model plus an ordered list of bubbling operations, each
/// given by its generating manifold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Plan {
    n: usize,
    base: BaseModel,
    operations: Vec<GeneratingManifold>,
}

impl Plan {
    pub fn new(n: usize, base: BaseModel, operations: Vec<GeneratingManifold>) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroTargetDimension);
        }
        if let BaseModel::Custom { homology } = &base {
            let model = ReebModel::new("custom", homology.clone())?;
            if model.n() != n {
                return Err(Error::DegreeMismatch {
                    expected: n,
                    actual: model.n(),
                });
            }
        }
        for (index, op) in operations.iter().enumerate() {
            let check = op.validate().and_then(|()| {
                if op.dim() >= n {
                    Err(Error::NoCodimension { dim: op.dim(), n })
                } else {
                    Ok(())
                }
            });
            if let Err(source) = check {
                return Err(Error::OperationRejected {
                    index,
                    source: Box::new(source),
                });
            }
        }
        Ok(Self {
            n,
            base,
            operations,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn base(&self) -> &BaseModel {
        &self.base
    }

    pub fn operations(&self) -> &[GeneratingManifold] {
        &self.operations
    }

    /// Resolve the base descriptor into a Reeb model.
    pub fn base_model(&self) -> Result<ReebModel> {
        match &self.base {
            BaseModel::Ball => base_special_generic_ball(self.n),
            BaseModel::Bouquet { l } => base_bouquet(self.n, *l),
            BaseModel::Custom { homology } => ReebModel::new("custom base", homology.clone()),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct PlanRepr {
    n: usize,
    base: BaseModel,
    operations: Vec<GeneratingManifold>,
}

impl Serialize for Plan {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        PlanRepr {
            n: self.n,
            base: self.base.clone(),
            operations: self.operations.clone(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Plan {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let repr = PlanRepr::deserialize(de)?;
        Plan::new(repr.n, repr.base, repr.operations).map_err(serde::de::Error::custom)
    }
}

/// Fold all operations of a plan over its base model. The first failing
/// operation is reported by index.
pub fn apply_plan(plan: &Plan) -> Result<ReebModel> {
    let mut model = plan.base_model()?;
    for (index, op) in plan.operations().iter().enumerate() {
        model = apply_operation(&model, op).map_err(|source| Error::OperationRejected {
            index,
            source: Box::new(source),
        })?;
    }
    let ops = plan.operations().len();
    let label = if ops == 0 {
        model.label().to_string()
    } else {
        format!("{} + {} bubbling operation(s)", model.label(), ops)
    };
    ReebModel::new(label, model.homology().clone())
}

/// The total homology increment of a plan: the degreewise direct sum of
/// all operation contributions, independent of the base.
pub fn delta_of_plan(plan: &Plan) -> Result<GradedGroup> {
    let mut delta = GradedGroup::zero(plan.n());
    for (index, op) in plan.operations().iter().enumerate() {
        let c = contribution(op, plan.n()).map_err(|source| Error::OperationRejected {
            index,
            source: Box::new(source),
        })?;
        delta = delta.direct_sum(&c)?;
    }
    Ok(delta)
}

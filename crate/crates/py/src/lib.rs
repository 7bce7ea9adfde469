//! Python bindings for the bubbling calculus.
//!
//! Exposes the main value types (`Group`, `Manifold`, `Target`, `Plan`,
//! `Report`) and the planner/oracle entry points. All arithmetic stays in
//! Rust; Python sees plain ints (arbitrary precision both ways).

use num_bigint::{BigInt, BigUint};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use reeb_core::bubbling::{apply_plan, delta_of_plan};
use reeb_core::error::Error as CoreError;
use reeb_core::manifolds::GeneratingManifold;
use reeb_core::oracle;
use reeb_core::planner;
use reeb_core::snf::{smith_normal_form as snf, IntMatrix};
use reeb_core::{FgAbelianGroup, FunctionSpec, SearchBounds, TargetSequence};

fn core_err(err: CoreError) -> PyErr {
    match err {
        CoreError::UnsupportedTorsion { .. }
        | CoreError::StrategyNotApplicable { .. }
        | CoreError::PeelFailed { .. } => PyRuntimeError::new_err(err.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn json_err(err: serde_json::Error) -> PyErr {
    PyValueError::new_err(format!("malformed JSON: {err}"))
}

/// A finitely generated abelian group in invariant-factor form.
#[pyclass(frozen, eq)]
#[derive(PartialEq)]
struct Group {
    inner: FgAbelianGroup,
}

#[pymethods]
impl Group {
    #[new]
    #[pyo3(signature = (rank, torsion=None))]
    fn new(rank: usize, torsion: Option<Vec<BigUint>>) -> PyResult<Self> {
        let inner = FgAbelianGroup::new(rank, torsion.unwrap_or_default()).map_err(core_err)?;
        Ok(Self { inner })
    }

    #[staticmethod]
    fn zero() -> Self {
        Self {
            inner: FgAbelianGroup::zero(),
        }
    }

    #[staticmethod]
    fn free(rank: usize) -> Self {
        Self {
            inner: FgAbelianGroup::free(rank),
        }
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    /// Invariant factors d_1 | d_2 | … as Python ints.
    #[getter]
    fn torsion(&self) -> Vec<BigUint> {
        self.inner.torsion().to_vec()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn is_free(&self) -> bool {
        self.inner.is_free()
    }

    fn direct_sum(&self, other: &Group) -> Group {
        Group {
            inner: self.inner.direct_sum(&other.inner),
        }
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(json_err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Group> {
        Ok(Group {
            inner: serde_json::from_str(text).map_err(json_err)?,
        })
    }

    fn __repr__(&self) -> String {
        format!("Group({})", self.inner)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
}

/// A generating manifold: point, sphere, or connected sum of sphere
/// products.
#[pyclass(frozen, eq)]
#[derive(PartialEq)]
struct Manifold {
    inner: GeneratingManifold,
}

#[pymethods]
impl Manifold {
    #[staticmethod]
    fn point() -> Self {
        Self {
            inner: GeneratingManifold::point(),
        }
    }

    #[staticmethod]
    fn sphere(dim: usize) -> PyResult<Self> {
        Ok(Self {
            inner: GeneratingManifold::sphere(dim).map_err(core_err)?,
        })
    }

    /// Connected sum of sphere products S^a x S^b given as (a, b) pairs;
    /// every pair must sum to `dim`.
    #[staticmethod]
    fn connected_sum(dim: usize, summands: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(Self {
            inner: GeneratingManifold::connected_sum(dim, summands).map_err(core_err)?,
        })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn betti(&self) -> Vec<usize> {
        self.inner.betti()
    }

    fn homology(&self) -> Vec<Group> {
        self.inner
            .homology()
            .into_iter()
            .map(|inner| Group { inner })
            .collect()
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(json_err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Manifold> {
        Ok(Manifold {
            inner: serde_json::from_str(text).map_err(json_err)?,
        })
    }

    fn __repr__(&self) -> String {
        format!("Manifold({})", self.inner)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
}

/// A target homology-increment sequence over degrees 0..=n.
#[pyclass(frozen, eq)]
#[derive(PartialEq)]
struct Target {
    inner: TargetSequence,
}

#[pymethods]
impl Target {
    /// Free target with the given ranks, degree 0 first. Targets with
    /// torsion are built through `from_json`.
    #[new]
    fn new(ranks: Vec<usize>) -> PyResult<Self> {
        Ok(Self {
            inner: TargetSequence::from_ranks(&ranks).map_err(core_err)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn ranks(&self) -> Vec<usize> {
        self.inner.ranks()
    }

    fn groups(&self) -> Vec<Group> {
        self.inner
            .groups()
            .groups()
            .iter()
            .map(|g| Group { inner: g.clone() })
            .collect()
    }

    fn effective_minimum(&self) -> Option<usize> {
        planner::effective_minimum(&self.inner)
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(json_err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Target> {
        Ok(Target {
            inner: serde_json::from_str(text).map_err(json_err)?,
        })
    }

    fn __repr__(&self) -> String {
        format!(
            "Target(n={}, groups={})",
            self.inner.n(),
            self.inner.groups()
        )
    }
}

/// An ordered list of bubbling operations over a base Reeb model.
#[pyclass(frozen, eq)]
#[derive(PartialEq)]
struct Plan {
    inner: reeb_core::Plan,
}

#[pymethods]
impl Plan {
    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn operations(&self) -> Vec<Manifold> {
        self.inner
            .operations()
            .iter()
            .map(|m| Manifold { inner: m.clone() })
            .collect()
    }

    fn __len__(&self) -> usize {
        self.inner.operations().len()
    }

    /// The homology increment of the plan, degree by degree.
    fn delta(&self) -> PyResult<Vec<Group>> {
        let delta = delta_of_plan(&self.inner).map_err(core_err)?;
        Ok(delta
            .groups()
            .iter()
            .map(|g| Group { inner: g.clone() })
            .collect())
    }

    /// Replay the plan over its base and return the resulting homology.
    fn apply(&self) -> PyResult<Vec<Group>> {
        let model = apply_plan(&self.inner).map_err(core_err)?;
        Ok(model
            .homology()
            .groups()
            .iter()
            .map(|g| Group { inner: g.clone() })
            .collect())
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(json_err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Plan> {
        Ok(Plan {
            inner: serde_json::from_str(text).map_err(json_err)?,
        })
    }

    fn __repr__(&self) -> String {
        let ops: Vec<String> = self
            .inner
            .operations()
            .iter()
            .map(|m| m.to_string())
            .collect();
        format!(
            "Plan(n={}, operations=[{}])",
            self.inner.n(),
            ops.join(", ")
        )
    }
}

/// Feasibility verdict plus certificate for one target.
#[pyclass(frozen)]
struct Report {
    inner: planner::FeasibilityReport,
}

#[pymethods]
impl Report {
    #[getter]
    fn verdict(&self) -> &'static str {
        match self.inner.verdict {
            planner::Verdict::Realized => "REALIZED",
            planner::Verdict::PeelFailed => "PEEL_FAILED",
            planner::Verdict::NecessaryViolated => "NECESSARY_VIOLATED",
            planner::Verdict::UnsupportedTorsion => "UNSUPPORTED_TORSION",
        }
    }

    #[getter]
    fn realized(&self) -> bool {
        self.inner.realized()
    }

    #[getter]
    fn plan(&self) -> Option<Plan> {
        self.inner.plan.clone().map(|inner| Plan { inner })
    }

    fn checks<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let d = PyDict::new(py);
        d.set_item("thm1", self.inner.checks.thm1)?;
        d.set_item("remark1", self.inner.checks.remark1)?;
        d.set_item("prop3", self.inner.checks.prop3)?;
        d.set_item("necessary", self.inner.checks.necessary)?;
        Ok(d)
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(json_err)
    }

    fn __repr__(&self) -> String {
        format!("Report(verdict={})", self.verdict())
    }
}

/// Decide a target: run all checkers and try the planners, verifying any
/// produced plan by replay.
#[pyfunction]
fn check(target: &Target) -> Report {
    Report {
        inner: planner::decide(&target.inner),
    }
}

#[pyfunction]
fn check_thm1(target: &Target) -> PyResult<bool> {
    planner::check_thm1(&target.inner).map_err(core_err)
}

#[pyfunction]
fn check_remark1(target: &Target) -> PyResult<bool> {
    planner::check_remark1(&target.inner).map_err(core_err)
}

#[pyfunction]
fn check_prop3(target: &Target) -> PyResult<bool> {
    planner::check_prop3(&target.inner).map_err(core_err)
}

#[pyfunction]
fn check_necessary(target: &Target) -> bool {
    planner::check_necessary(&target.inner).is_empty()
}

#[pyfunction]
fn plan_peel(target: &Target) -> PyResult<Plan> {
    Ok(Plan {
        inner: planner::plan_peel(&target.inner).map_err(core_err)?,
    })
}

#[pyfunction]
fn plan_prop3(target: &Target) -> PyResult<Plan> {
    Ok(Plan {
        inner: planner::plan_prop3(&target.inner).map_err(core_err)?,
    })
}

#[pyfunction]
fn verify_plan(plan: &Plan, target: &Target) -> PyResult<bool> {
    planner::verify_plan(&plan.inner, &target.inner).map_err(core_err)
}

/// Build the target induced by a function spec (JSON text) at dimension n.
#[pyfunction]
fn sequence_from_function(spec_json: &str, n: usize) -> PyResult<Target> {
    let spec: FunctionSpec = serde_json::from_str(spec_json).map_err(json_err)?;
    Ok(Target {
        inner: planner::sequence_from_function(&spec, n).map_err(core_err)?,
    })
}

/// Scan n = 1..=n_max; returns (smallest feasible n or None, verdict-table
/// JSON).
#[pyfunction]
fn find_min_n(spec_json: &str, n_max: usize) -> PyResult<(Option<usize>, String)> {
    let spec: FunctionSpec = serde_json::from_str(spec_json).map_err(json_err)?;
    let report = planner::find_min_n(&spec, n_max).map_err(core_err)?;
    let table = serde_json::to_string(&report).map_err(json_err)?;
    Ok((report.min_feasible_n, table))
}

/// Exhaustive bounded search; returns the found plan or None when the
/// target is infeasible within the bounds.
#[pyfunction]
#[pyo3(signature = (target, max_n=4, max_copies=4, max_total_rank=8))]
fn search_realization(
    target: &Target,
    max_n: usize,
    max_copies: usize,
    max_total_rank: usize,
) -> PyResult<Option<Plan>> {
    let bounds = SearchBounds {
        max_n,
        max_copies,
        max_total_rank,
    };
    let outcome = oracle::search_realization(&target.inner, &bounds).map_err(core_err)?;
    Ok(outcome.plan().cloned().map(|inner| Plan { inner }))
}

/// Smith normal form of an integer matrix given as a list of rows;
/// returns (invariant factors, rank).
#[pyfunction]
fn smith_normal_form(rows: Vec<Vec<BigInt>>) -> PyResult<(Vec<BigUint>, usize)> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != ncols) {
        return Err(PyValueError::new_err(
            "matrix rows must all have the same length",
        ));
    }
    let entries: Vec<BigInt> = rows.into_iter().flatten().collect();
    let matrix = IntMatrix::new(nrows, ncols, entries).map_err(core_err)?;
    let result = snf(&matrix);
    Ok((result.diagonal, result.rank))
}

#[pymodule]
fn reeb_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<Group>()?;
    m.add_class::<Manifold>()?;
    m.add_class::<Target>()?;
    m.add_class::<Plan>()?;
    m.add_class::<Report>()?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(check_thm1, m)?)?;
    m.add_function(wrap_pyfunction!(check_remark1, m)?)?;
    m.add_function(wrap_pyfunction!(check_prop3, m)?)?;
    m.add_function(wrap_pyfunction!(check_necessary, m)?)?;
    m.add_function(wrap_pyfunction!(plan_peel, m)?)?;
    m.add_function(wrap_pyfunction!(plan_prop3, m)?)?;
    m.add_function(wrap_pyfunction!(verify_plan, m)?)?;
    m.add_function(wrap_pyfunction!(sequence_from_function, m)?)?;
    m.add_function(wrap_pyfunction!(find_min_n, m)?)?;
    m.add_function(wrap_pyfunction!(search_realization, m)?)?;
    m.add_function(wrap_pyfunction!(smith_normal_form, m)?)?;
    Ok(())
}

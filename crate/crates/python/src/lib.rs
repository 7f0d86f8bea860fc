//! Python bindings: formulas, the provers of every system, proof checking
//! and the game semantics.

use colkit::bruteforce::ProofStrategy;
use colkit::games::{self, catalogue, GameTree, Interpretation, Player};
use colkit::{Formula, SystemId};
use colkit_cli::{read_proof, solve, AnyProof, Budget};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn value_error(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(
    name = "Formula",
    module = "colkit",
    frozen,
    eq,
    hash,
    skip_from_py_object
)]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PyFormula {
    inner: Formula,
}

/// A formula given as a `Formula` or as source text.
fn formula_arg(obj: &Bound<'_, PyAny>) -> PyResult<Formula> {
    if let Ok(f) = obj.extract::<PyRef<'_, PyFormula>>() {
        return Ok(f.inner.clone());
    }
    let src: String = obj.extract()?;
    colkit::parse(&src).map_err(value_error)
}

fn system_arg(name: &str) -> PyResult<SystemId> {
    name.parse().map_err(value_error)
}

#[pymethods]
impl PyFormula {
    #[new]
    fn new(src: &str) -> PyResult<PyFormula> {
        colkit::parse(src)
            .map(|inner| PyFormula { inner })
            .map_err(value_error)
    }

    fn ascii(&self) -> String {
        self.inner.ascii()
    }

    fn unicode(&self) -> String {
        self.inner.unicode()
    }

    fn normalize(&self) -> PyFormula {
        PyFormula {
            inner: self.inner.normalize(),
        }
    }

    fn atoms(&self) -> Vec<String> {
        self.inner
            .atoms()
            .iter()
            .map(|a| a.name().to_string())
            .collect()
    }

    fn recurrence_complexity(&self) -> usize {
        self.inner.recurrence_complexity()
    }

    fn is_tautology(&self) -> PyResult<bool> {
        colkit::formula::is_tautology(&self.inner).map_err(value_error)
    }

    fn __str__(&self) -> String {
        self.inner.unicode()
    }

    fn __repr__(&self) -> String {
        format!("Formula({:?})", self.inner.ascii())
    }
}

#[pyclass(name = "Proof", module = "colkit", frozen)]
pub struct PyProof {
    inner: AnyProof,
}

#[pymethods]
impl PyProof {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<PyProof> {
        read_proof(text)
            .map(|inner| PyProof { inner })
            .map_err(value_error)
    }

    #[getter]
    fn system(&self) -> &'static str {
        match &self.inner {
            AnyProof::Bf(p) => p.system.name(),
            AnyProof::Cl5(p) => p.system.name(),
            AnyProof::Cl15(_) => SystemId::Cl15.name(),
        }
    }

    /// Rule names, one per step.
    fn rules(&self) -> Vec<String> {
        let v = self.inner.to_value();
        v["steps"]
            .as_array()
            .map(|steps| {
                steps
                    .iter()
                    .map(|s| match &s["rule"] {
                        serde_json::Value::String(r) => r.clone(),
                        r => r["name"].as_str().unwrap_or("?").to_string(),
                    })
                    .collect()
            })
            .unwrap_or_default()
    }

    /// Raises `ValueError` naming the first rejected step.
    fn check(&self) -> PyResult<()> {
        self.inner
            .check()
            .map_err(|(step, reason)| value_error(format!("step {step}: {reason}")))
    }

    fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.inner.to_value()).expect("serializable")
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("<Proof {} with {} steps>", self.system(), self.inner.len())
    }
}

#[pyclass(name = "Game", module = "colkit", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq)]
pub struct PyGame {
    inner: GameTree,
}

#[pymethods]
impl PyGame {
    /// Who wins if nobody moves: `"T"` or `"B"`.
    #[getter]
    fn winner(&self) -> &'static str {
        self.inner.winner().symbol()
    }

    #[getter]
    fn depth(&self) -> usize {
        self.inner.depth()
    }

    fn negate(&self) -> PyGame {
        PyGame {
            inner: self.inner.negate(),
        }
    }

    fn is_static(&self) -> PyResult<bool> {
        games::is_static(&self.inner, games::DEFAULT_STATIC_BOUND).map_err(value_error)
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }
}

/// Reads `{"p": True, "P": "question"}`: booleans or `"T"`/`"B"` for
/// elementary atoms, catalogue names for general ones.
fn interpretation_arg(d: &Bound<'_, PyDict>) -> PyResult<Interpretation> {
    let mut obj = serde_json::Map::new();
    for (k, v) in d.iter() {
        let name: String = k.extract()?;
        let value = match v.extract::<bool>() {
            Ok(b) => (if b { "T" } else { "B" }).to_string(),
            Err(_) => v.extract::<String>()?,
        };
        obj.insert(name, serde_json::Value::String(value));
    }
    Interpretation::from_json(&serde_json::Value::Object(obj), &catalogue::named())
        .map_err(value_error)
}

fn budget(
    max_nodes: Option<u64>,
    contraction_budget: Option<u64>,
    mode: Option<&str>,
) -> PyResult<Budget> {
    let mode = mode
        .map(|m| serde_json::from_value(serde_json::Value::String(m.to_string())))
        .transpose()
        .map_err(|_| value_error("mode must be cl15c, bounded or depth_limited"))?;
    Ok(Budget {
        max_nodes,
        contraction_budget,
        mode,
        ..Budget::default()
    })
}

#[pyfunction]
fn parse(src: &str) -> PyResult<PyFormula> {
    PyFormula::new(src)
}

/// The verdict (`"provable"`, `"unprovable"` or `"resource-exhausted"`)
/// and the proof when there is one.
#[pyfunction]
#[pyo3(signature = (formula, system = "cl1", *, max_nodes = None, contraction_budget = None, mode = None))]
fn prove(
    py: Python<'_>,
    formula: &Bound<'_, PyAny>,
    system: &str,
    max_nodes: Option<u64>,
    contraction_budget: Option<u64>,
    mode: Option<&str>,
) -> PyResult<(String, Option<Py<PyProof>>)> {
    let f = formula_arg(formula)?;
    let s = solve(
        &f,
        system_arg(system)?,
        &budget(max_nodes, contraction_budget, mode)?,
        true,
    )
    .map_err(value_error)?;
    let proof = s
        .proof
        .map(|inner| Py::new(py, PyProof { inner }))
        .transpose()?;
    Ok((s.answer.name().to_string(), proof))
}

#[pyfunction]
#[pyo3(signature = (formula, system = "cl1", *, max_nodes = None, contraction_budget = None, mode = None))]
fn decide(
    formula: &Bound<'_, PyAny>,
    system: &str,
    max_nodes: Option<u64>,
    contraction_budget: Option<u64>,
    mode: Option<&str>,
) -> PyResult<String> {
    let f = formula_arg(formula)?;
    let s = solve(
        &f,
        system_arg(system)?,
        &budget(max_nodes, contraction_budget, mode)?,
        false,
    )
    .map_err(value_error)?;
    Ok(s.answer.name().to_string())
}

#[pyfunction]
fn interpret(formula: &Bound<'_, PyAny>, interpretation: &Bound<'_, PyDict>) -> PyResult<PyGame> {
    let f = formula_arg(formula)?;
    let itp = interpretation_arg(interpretation)?;
    games::interpret(&f, &itp)
        .map(|inner| PyGame { inner })
        .map_err(value_error)
}

/// Whether the strategy read off a CL1/CL2 proof wins the game of
/// `formula` under `interpretation` against every environment.
#[pyfunction]
fn strategy_wins(proof: &PyProof, interpretation: &Bound<'_, PyDict>) -> PyResult<bool> {
    let AnyProof::Bf(p) = &proof.inner else {
        return Err(value_error("strategies come from CL1 or CL2 proofs"));
    };
    let g =
        games::interpret(&p.target, &interpretation_arg(interpretation)?).map_err(value_error)?;
    Ok(games::verify_strategy(&g, &ProofStrategy::new(p.clone())).is_ok())
}

/// Names of the catalogue games usable in interpretations.
#[pyfunction]
fn catalogue_games() -> Vec<String> {
    catalogue::named().into_keys().collect()
}

#[pyfunction]
fn systems() -> Vec<&'static str> {
    SystemId::ALL.iter().map(|s| s.name()).collect()
}

#[pymodule]
#[pyo3(name = "colkit")]
fn colkit_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyFormula>()?;
    m.add_class::<PyProof>()?;
    m.add_class::<PyGame>()?;
    m.add_function(wrap_pyfunction!(parse, m)?)?;
    m.add_function(wrap_pyfunction!(prove, m)?)?;
    m.add_function(wrap_pyfunction!(decide, m)?)?;
    m.add_function(wrap_pyfunction!(interpret, m)?)?;
    m.add_function(wrap_pyfunction!(strategy_wins, m)?)?;
    m.add_function(wrap_pyfunction!(catalogue_games, m)?)?;
    m.add_function(wrap_pyfunction!(systems, m)?)?;
    m.add("MACHINE", Player::Machine.symbol())?;
    m.add("ENVIRONMENT", Player::Env.symbol())?;
    Ok(())
}

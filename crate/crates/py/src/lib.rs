//! Python access to the closures, error terms and scenario runner.

use mixbgk_core::closures::{aap_aux, bbgsp_aux, collision_frequencies, gs_aux};
use mixbgk_core::discrepancy::{aap_bbgsp_terms, aap_gs_terms, ErrorTerms};
use mixbgk_core::io::to_json;
use mixbgk_core::scenarios::{self, Overrides};
use mixbgk_core::{MixtureParams, Model, UnitSystem};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: mixbgk_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn params(masses: Vec<f64>, lam: Vec<Vec<f64>>, model: &str) -> PyResult<MixtureParams> {
    let model: Model = model.parse().map_err(err)?;
    MixtureParams::new(masses, lam, UnitSystem::Abstract, model, 1.0, 1.0).map_err(err)
}

fn check_len(l: usize, fields: &[&[f64]]) -> PyResult<()> {
    if fields.iter().any(|f| f.len() != l) {
        return Err(PyValueError::new_err(format!("expected {l} values per field")));
    }
    Ok(())
}

/// Names of the built-in scenarios.
#[pyfunction]
fn list_scenarios() -> Vec<&'static str> {
    scenarios::builtin_names()
}

/// TOML source of a built-in scenario.
#[pyfunction]
fn scenario_toml(name: &str) -> PyResult<&'static str> {
    scenarios::builtin_source(name).map_err(err)
}

/// Auxiliary velocities and temperatures of a model in one cell.
///
/// Returns `(u, T)`; for BBGSP both are flattened row-major L×L matrices.
#[pyfunction]
#[pyo3(signature = (model, masses, lam, n, u, t))]
fn auxiliary(model: &str, masses: Vec<f64>, lam: Vec<Vec<f64>>, n: Vec<f64>, u: Vec<f64>, t: Vec<f64>) -> PyResult<(Vec<f64>, Vec<f64>)> {
    let p = params(masses, lam, model)?;
    check_len(p.species(), &[&n, &u, &t])?;
    match p.model {
        Model::Aap => aap_aux(&n, &u, &t, &p).map(|a| (a.u, a.t)).map_err(err),
        Model::Gs => {
            let (nu_s, _) = collision_frequencies(&n, &p);
            gs_aux(&n, &u, &t, &nu_s, &p).map(|a| (vec![a.u], vec![a.t])).map_err(err)
        }
        Model::Bbgsp => bbgsp_aux(&u, &t, &p).map(|a| (a.u, a.t)).map_err(err),
    }
}

/// Leading-order error terms of AAP against `other` ("bbgsp" or "gs"),
/// from their definitions and from the closed forms.
#[pyfunction]
fn error_terms<'py>(py: Python<'py>, other: &str, masses: Vec<f64>, lam: Vec<Vec<f64>>, n: Vec<f64>, u: Vec<f64>, t: Vec<f64>) -> PyResult<Bound<'py, PyDict>> {
    let p = params(masses, lam, "aap")?;
    check_len(p.species(), &[&n, &u, &t])?;
    let ErrorTerms { e_u_def, e_u_closed, e_t_def, e_t_closed } = match other.parse().map_err(err)? {
        Model::Bbgsp => aap_bbgsp_terms(&n, &u, &t, &p),
        Model::Gs => aap_gs_terms(&n, &u, &t, &p).0,
        Model::Aap => return Err(PyValueError::new_err("compare AAP against bbgsp or gs")),
    };
    let d = PyDict::new(py);
    d.set_item("e_u_def", e_u_def)?;
    d.set_item("e_u_closed", e_u_closed)?;
    d.set_item("e_t_def", e_t_def)?;
    d.set_item("e_t_closed", e_t_closed)?;
    Ok(d)
}

/// Run a scenario and return its summary as JSON. Writes files only when
/// `out` is given.
#[pyfunction]
#[pyo3(signature = (scenario, eps=None, kappa=None, models=None, nx=None, nv=None, t_end=None, out=None))]
#[allow(clippy::too_many_arguments)]
fn run_scenario(
    py: Python<'_>,
    scenario: &str,
    eps: Option<Vec<f64>>,
    kappa: Option<f64>,
    models: Option<Vec<String>>,
    nx: Option<usize>,
    nv: Option<usize>,
    t_end: Option<f64>,
    out: Option<std::path::PathBuf>,
) -> PyResult<String> {
    let mut cfg = scenarios::load(scenario).map_err(err)?;
    let models = models.map(|ms| ms.iter().map(|m| m.parse()).collect::<Result<Vec<Model>, _>>()).transpose().map_err(err)?;
    cfg.apply_overrides(&Overrides { eps, kappa, models, nx, nv, t_end, ..Default::default() }).map_err(err)?;
    let report = py.detach(|| scenarios::run_scenario(&cfg)).map_err(err)?;
    if let Some(dir) = out {
        mixbgk_core::io::write_report(&cfg, &report, &dir).map_err(err)?;
    }
    to_json(&report.summary).map_err(err)
}

#[pymodule]
#[pyo3(name = "mixbgk")]
fn mixbgk_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(list_scenarios, m)?)?;
    m.add_function(wrap_pyfunction!(scenario_toml, m)?)?;
    m.add_function(wrap_pyfunction!(auxiliary, m)?)?;
    m.add_function(wrap_pyfunction!(error_terms, m)?)?;
    m.add_function(wrap_pyfunction!(run_scenario, m)?)?;
    Ok(())
}

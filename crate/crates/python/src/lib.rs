//! Python bindings for the graphene Casimir–Polder force library.
//!
//! Separations are in μm, energies in eV, temperatures in K, polarizabilities
//! in cm³ and forces in N, as on the command line.

use graphene_casimir::cli::{parse_substrate, Figure, Metadata};
use graphene_casimir::force::{
    self, CrossoverQuantity, CrossoverQuery, ForceResult, NumericsConfig,
};
use graphene_casimir::graphene;
use graphene_casimir::materials::{self, Permittivity};
use graphene_casimir::{constants, Error, GrapheneParams, Scenario, SubstrateModel};

use clap::ValueEnum;
use pyo3::create_exception;
use pyo3::exceptions::{PyOSError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

create_exception!(graphene_casimir, NumericalError, PyRuntimeError);
create_exception!(graphene_casimir, NoStraddleError, NumericalError);

fn to_py(err: Error) -> PyErr {
    match err {
        Error::NoStraddle { .. } => NoStraddleError::new_err(err.to_string()),
        Error::Quadrature(_) | Error::Truncation { .. } => NumericalError::new_err(err.to_string()),
        Error::Io { .. } => PyOSError::new_err(err.to_string()),
        _ => PyValueError::new_err(err.to_string()),
    }
}

fn scenario(a_um: f64, temp_k: f64, alpha0_cm3: f64) -> PyResult<Scenario> {
    Scenario::from_um(a_um, temp_k, alpha0_cm3).map_err(to_py)
}

fn sheet(delta_ev: f64, mu_ev: f64, vf_ratio: f64) -> PyResult<GrapheneParams> {
    GrapheneParams::with_vf_ratio(delta_ev, mu_ev, vf_ratio).map_err(to_py)
}

fn substrate(arg: &str) -> PyResult<SubstrateModel> {
    parse_substrate(arg)
        .map_err(PyValueError::new_err)?
        .load()
        .map_err(to_py)
}

fn numerics(rel_tol: f64) -> PyResult<NumericsConfig> {
    let cfg = NumericsConfig {
        rel_tol,
        ..NumericsConfig::default()
    };
    cfg.validate().map_err(to_py)?;
    Ok(cfg)
}

/// Force with its Matsubara breakdown.
#[pyclass(name = "ForceResult", frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
struct PyForceResult {
    total: f64,
    l0_term: f64,
    tail_l_ge_1: f64,
    l_max_used: usize,
    quad_error_estimate: f64,
    mode: String,
}

#[pymethods]
impl PyForceResult {
    fn __repr__(&self) -> String {
        format!(
            "ForceResult(total={:e}, l0_term={:e}, tail_l_ge_1={:e}, l_max_used={}, mode='{}')",
            self.total, self.l0_term, self.tail_l_ge_1, self.l_max_used, self.mode
        )
    }

    fn __float__(&self) -> f64 {
        self.total
    }
}

impl From<ForceResult> for PyForceResult {
    fn from(f: ForceResult) -> Self {
        Self {
            total: f.total,
            l0_term: f.l0_term,
            tail_l_ge_1: f.tail_l_ge_1,
            l_max_used: f.l_max_used,
            quad_error_estimate: f.quad_error_estimate,
            mode: f.mode.as_str().to_string(),
        }
    }
}

/// Casimir–Polder force in N.
///
/// mode: "full" (all Matsubara terms), "l0" (zero-frequency term),
/// "asymptotic" (large-separation closed form) or "classical" (ideal metal).
/// substrate: "sio2", "vacuum", "ideal-metal" or "table:PATH".
#[pyfunction]
#[pyo3(signature = (a_um, delta_ev=0.0, mu_ev=0.0, *, temp_k=300.0, substrate="sio2", mode="l0",
    alpha0_cm3=1.0, vf_ratio=constants::DEFAULT_VF_RATIO, bare=false, rel_tol=1e-8))]
#[allow(clippy::too_many_arguments)]
fn casimir_force(
    py: Python<'_>,
    a_um: f64,
    delta_ev: f64,
    mu_ev: f64,
    temp_k: f64,
    substrate: &str,
    mode: &str,
    alpha0_cm3: f64,
    vf_ratio: f64,
    bare: bool,
    rel_tol: f64,
) -> PyResult<PyForceResult> {
    let s = scenario(a_um, temp_k, alpha0_cm3)?;
    let g = if bare {
        None
    } else {
        Some(sheet(delta_ev, mu_ev, vf_ratio)?)
    };
    let sub = self::substrate(substrate)?;
    let cfg = numerics(rel_tol)?;
    let result = py.detach(|| match mode {
        "full" => force::force_full(&s, g.as_ref(), &sub, &cfg),
        "l0" => force::force_l0(&s, g.as_ref(), &sub, &cfg),
        "asymptotic" => g
            .as_ref()
            .map(|g| force::force_asymptotic(&s, g))
            .ok_or_else(|| {
                Error::InvalidParameter("asymptotic mode needs a graphene sheet".into())
            }),
        "classical" => {
            let f = force::force_ideal_metal_classical(&s);
            Ok(ForceResult {
                total: f,
                l0_term: f,
                tail_l_ge_1: 0.0,
                l_max_used: 0,
                quad_error_estimate: 0.0,
                mode: force::ForceMode::IdealMetal,
            })
        }
        other => Err(Error::InvalidParameter(format!(
            "unknown mode '{other}' (expected full, l0, asymptotic or classical)"
        ))),
    });
    result.map(Into::into).map_err(to_py)
}

/// −(3/4)k_BTα₀/a⁴ in N.
#[pyfunction]
#[pyo3(signature = (a_um, *, temp_k=300.0, alpha0_cm3=1.0))]
fn ideal_metal_force(a_um: f64, temp_k: f64, alpha0_cm3: f64) -> PyResult<f64> {
    Ok(force::force_ideal_metal_classical(&scenario(
        a_um, temp_k, alpha0_cm3,
    )?))
}

/// (F_sub,0 − F₀^IM)/F₀^IM for the coated (or, with bare=True, uncoated) substrate.
#[pyfunction]
#[pyo3(signature = (a_um, delta_ev=0.0, mu_ev=0.0, *, temp_k=300.0, substrate="sio2", bare=false))]
fn delta_vs_ideal(
    a_um: f64,
    delta_ev: f64,
    mu_ev: f64,
    temp_k: f64,
    substrate: &str,
    bare: bool,
) -> PyResult<f64> {
    let s = scenario(a_um, temp_k, 1.0)?;
    let g = if bare {
        None
    } else {
        Some(sheet(delta_ev, mu_ev, constants::DEFAULT_VF_RATIO)?)
    };
    force::delta_vs_ideal(
        &s,
        g.as_ref(),
        &self::substrate(substrate)?,
        &NumericsConfig::default(),
    )
    .map_err(to_py)
}

/// F_sub,0 / F_as, the zero-frequency force over its large-separation form.
#[pyfunction]
#[pyo3(signature = (a_um, delta_ev=0.0, mu_ev=0.0, *, temp_k=300.0, substrate="sio2"))]
fn asymptotic_ratio(
    a_um: f64,
    delta_ev: f64,
    mu_ev: f64,
    temp_k: f64,
    substrate: &str,
) -> PyResult<f64> {
    let s = scenario(a_um, temp_k, 1.0)?;
    let g = sheet(delta_ev, mu_ev, constants::DEFAULT_VF_RATIO)?;
    let dev = force::asymptotic_deviation(
        &s,
        &g,
        &self::substrate(substrate)?,
        &NumericsConfig::default(),
    )
    .map_err(to_py)?;
    Ok(1.0 + dev)
}

/// Separation in μm where a relative difference falls through `threshold`.
///
/// quantity: "delta-vs-ideal", "asym-vs-numeric" or "l0-vs-full".
/// Raises NoStraddleError when the bracket does not contain a crossing.
#[pyfunction]
#[pyo3(signature = (delta_ev, mu_ev, *, quantity="delta-vs-ideal", threshold=0.01, a_low_um=5.6,
    a_high_um=2000.0, temp_k=300.0, substrate="sio2"))]
#[allow(clippy::too_many_arguments)]
fn find_crossover(
    py: Python<'_>,
    delta_ev: f64,
    mu_ev: f64,
    quantity: &str,
    threshold: f64,
    a_low_um: f64,
    a_high_um: f64,
    temp_k: f64,
    substrate: &str,
) -> PyResult<f64> {
    let quantity = match quantity {
        "delta-vs-ideal" => CrossoverQuantity::DeltaVsIdeal,
        "asym-vs-numeric" => CrossoverQuantity::AsymptoticVsNumeric,
        "l0-vs-full" => CrossoverQuantity::L0VsFull,
        other => return Err(PyValueError::new_err(format!("unknown quantity '{other}'"))),
    };
    let query = CrossoverQuery::new(
        quantity,
        threshold,
        (constants::um_to_m(a_low_um), constants::um_to_m(a_high_um)),
    )
    .map_err(to_py)?;
    let template = scenario(a_low_um, temp_k, 1.0)?;
    let g = sheet(delta_ev, mu_ev, constants::DEFAULT_VF_RATIO)?;
    let sub = self::substrate(substrate)?;
    let cfg = NumericsConfig::default();
    py.detach(|| force::find_crossover(&query, &template, Some(&g), &sub, &cfg))
        .map(constants::m_to_um)
        .map_err(to_py)
}

/// Dimensionless Π̃₀₀ at Matsubara index l and y ≥ ζₗ.
#[pyfunction]
#[pyo3(signature = (l, y, a_um, delta_ev=0.0, mu_ev=0.0, *, temp_k=300.0))]
fn pi00(l: usize, y: f64, a_um: f64, delta_ev: f64, mu_ev: f64, temp_k: f64) -> PyResult<f64> {
    let s = scenario(a_um, temp_k, 1.0)?;
    let g = sheet(delta_ev, mu_ev, constants::DEFAULT_VF_RATIO)?;
    graphene::pi00(l, y, &s, &g, &NumericsConfig::default().quad()).map_err(to_py)
}

/// Dimensionless Π̃ (the combination entering the TE coefficient).
#[pyfunction]
#[pyo3(signature = (l, y, a_um, delta_ev=0.0, mu_ev=0.0, *, temp_k=300.0))]
fn pi_te(l: usize, y: f64, a_um: f64, delta_ev: f64, mu_ev: f64, temp_k: f64) -> PyResult<f64> {
    let s = scenario(a_um, temp_k, 1.0)?;
    let g = sheet(delta_ev, mu_ev, constants::DEFAULT_VF_RATIO)?;
    graphene::pi_te(l, y, &s, &g, &NumericsConfig::default().quad()).map_err(to_py)
}

/// Large-separation closed form of Π̃₀₀ at l = 0, y = 1.
#[pyfunction]
#[pyo3(signature = (a_um, delta_ev=0.0, mu_ev=0.0, *, temp_k=300.0))]
fn pi00_asymptotic(a_um: f64, delta_ev: f64, mu_ev: f64, temp_k: f64) -> PyResult<f64> {
    let s = scenario(a_um, temp_k, 1.0)?;
    Ok(graphene::pi00_asymptotic(
        &s,
        &sheet(delta_ev, mu_ev, constants::DEFAULT_VF_RATIO)?,
    ))
}

/// ε(iξₗ) of a substrate; infinity for the ideal metal.
#[pyfunction]
#[pyo3(signature = (l, a_um, *, substrate="sio2", temp_k=300.0))]
fn permittivity(l: usize, a_um: f64, substrate: &str, temp_k: f64) -> PyResult<f64> {
    let s = scenario(a_um, temp_k, 1.0)?;
    Ok(
        match materials::permittivity(&self::substrate(substrate)?, l, &s) {
            Permittivity::Finite(e) => e,
            Permittivity::IdealMetal => f64::INFINITY,
        },
    )
}

/// CSV text of a preset figure ("fig1a" … "fig6b").
#[pyfunction]
#[pyo3(signature = (name, count=60))]
fn figure_csv(py: Python<'_>, name: &str, count: usize) -> PyResult<String> {
    let fig = Figure::from_str(name, false).map_err(PyValueError::new_err)?;
    let meta = Metadata::new(&format!("figure {name} --count {count}"));
    let table = py
        .detach(|| fig.table(&meta, count, &NumericsConfig::default()))
        .map_err(to_py)?;
    String::from_utf8(table.to_bytes()).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

#[pymodule]
#[pyo3(name = "graphene_casimir")]
fn extension(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add("NumericalError", m.py().get_type::<NumericalError>())?;
    m.add("NoStraddleError", m.py().get_type::<NoStraddleError>())?;
    m.add_class::<PyForceResult>()?;
    m.add_function(wrap_pyfunction!(casimir_force, m)?)?;
    m.add_function(wrap_pyfunction!(ideal_metal_force, m)?)?;
    m.add_function(wrap_pyfunction!(delta_vs_ideal, m)?)?;
    m.add_function(wrap_pyfunction!(asymptotic_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(find_crossover, m)?)?;
    m.add_function(wrap_pyfunction!(pi00, m)?)?;
    m.add_function(wrap_pyfunction!(pi_te, m)?)?;
    m.add_function(wrap_pyfunction!(pi00_asymptotic, m)?)?;
    m.add_function(wrap_pyfunction!(permittivity, m)?)?;
    m.add_function(wrap_pyfunction!(figure_csv, m)?)?;
    Ok(())
}

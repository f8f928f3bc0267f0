//! Python bindings. Exact probabilities come back as `fractions.Fraction`.

use std::collections::BTreeMap;

use pa_lcd::analysis::region::{Q, RegionOutcome};
use pa_lcd::analysis::{
    named_systems, power_law_exponent_offset, region_union_max_alpha, DegreeHistogram,
    DegreeMode, RegionSystem,
};
use pa_lcd::oracles::{self, DkQuery, ExactProb};
use pa_lcd::rng::stream;
use pa_lcd::{Error, LcdGraph, Pairing, ProcessParams, Variant};
use pyo3::exceptions::{PyOSError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Io(e) => PyOSError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn fraction<'py>(py: Python<'py>, q: &Q) -> PyResult<Bound<'py, PyAny>> {
    let cls = py.import("fractions")?.getattr("Fraction")?;
    cls.call1((q.numer().clone(), q.denom().clone()))
}

fn prob<'py>(py: Python<'py>, p: &ExactProb) -> PyResult<Bound<'py, PyAny>> {
    match p {
        ExactProb::Exact(q) => fraction(py, q),
        ExactProb::Log(x) => Ok(x.exp().into_pyobject(py)?.into_any()),
    }
}

fn parse_mode(mode: &str) -> PyResult<DegreeMode> {
    mode.parse().map_err(to_py)
}

/// A multigraph with vertices `0..n`. Edges point from the newer vertex to
/// the older one; loops are allowed.
#[pyclass(name = "Graph", module = "pa_lcd", frozen)]
struct PyGraph {
    inner: LcdGraph,
    m: usize,
}

#[pymethods]
impl PyGraph {
    #[getter]
    fn n_vertices(&self) -> usize {
        self.inner.n_vertices()
    }

    #[getter]
    fn m(&self) -> usize {
        self.m
    }

    fn edges(&self) -> Vec<(u32, u32)> {
        self.inner.edges().to_vec()
    }

    fn in_degrees(&self) -> Vec<u32> {
        self.inner.in_degrees().to_vec()
    }

    fn out_degrees(&self) -> Vec<u32> {
        self.inner.out_degrees().to_vec()
    }

    fn total_degrees(&self) -> Vec<u32> {
        self.inner.total_degrees()
    }

    /// Degree to vertex count; `mode` is "in" or "total".
    #[pyo3(signature = (mode = "in"))]
    fn degree_histogram(&self, mode: &str) -> PyResult<BTreeMap<u64, u64>> {
        Ok(pa_lcd::analysis::degree_histogram(&self.inner, self.m, parse_mode(mode)?).counts)
    }

    /// Sum of the total degrees of the first `k` vertices.
    fn degree_prefix_sum(&self, k: usize) -> PyResult<u64> {
        pa_lcd::degree_prefix_sum(&self.inner, k).map_err(to_py)
    }

    fn __len__(&self) -> usize {
        self.inner.n_vertices()
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(n_vertices={}, edges={}, m={})",
            self.inner.n_vertices(),
            self.inner.edge_count(),
            self.m
        )
    }
}

/// Generates replicate `replicate` of `G_m^(n)` under `seed`.
#[pyfunction]
#[pyo3(signature = (n, m = 1, variant = "sequential", seed = 0, replicate = 0))]
fn generate(n: usize, m: usize, variant: &str, seed: u64, replicate: u64) -> PyResult<PyGraph> {
    let variant: Variant = variant.parse().map_err(to_py)?;
    let params = ProcessParams::new(n, m, variant, seed).map_err(to_py)?;
    let inner = pa_lcd::generate(&params, replicate).map_err(to_py)?;
    Ok(PyGraph { inner, m })
}

/// All n-pairings as lists of 1-based `(left, right)` pairs.
#[pyfunction]
fn enumerate_pairings(n: usize) -> PyResult<Vec<Vec<(u32, u32)>>> {
    Ok(pa_lcd::enumerate_pairings(n)
        .map_err(to_py)?
        .iter()
        .map(Pairing::pairs)
        .collect())
}

#[pyfunction]
#[pyo3(signature = (n, seed = 0))]
fn sample_pairing(n: usize, seed: u64) -> PyResult<Vec<(u32, u32)>> {
    Ok(pa_lcd::sample_pairing(n, &mut stream(seed, 0)).map_err(to_py)?.pairs())
}

#[pyfunction]
fn pairing_to_graph(pairs: Vec<(u32, u32)>) -> PyResult<PyGraph> {
    let p = Pairing::from_pairs(&pairs).map_err(to_py)?;
    Ok(PyGraph {
        inner: pa_lcd::pairing_to_graph(&p),
        m: 1,
    })
}

/// `Pr[D_k = 2k + s]`: a `Fraction` when exact, otherwise a float.
#[pyfunction]
fn prob_dk(py: Python<'_>, n: u64, k: u64, s: u64) -> PyResult<Bound<'_, PyAny>> {
    let q = DkQuery::new(n, k, s).map_err(to_py)?;
    prob(py, &oracles::prob_dk(q))
}

/// `ln Pr[D_k = 2k + s]`.
#[pyfunction]
fn log_prob_dk(n: u64, k: u64, s: u64) -> PyResult<f64> {
    Ok(oracles::prob_dk(DkQuery::new(n, k, s).map_err(to_py)?).ln())
}

#[pyfunction]
fn count_ns(py: Python<'_>, n: u64, k: u64, s: u64) -> PyResult<Bound<'_, PyAny>> {
    let c = oracles::count_ns(DkQuery::new(n, k, s).map_err(to_py)?);
    Ok(c.into_pyobject(py)?.into_any())
}

#[pyfunction]
fn ratio_f(py: Python<'_>, n: u64, k: u64, s: u64) -> PyResult<Bound<'_, PyAny>> {
    fraction(py, &oracles::ratio_f(n, k, s).map_err(to_py)?)
}

#[pyfunction]
fn mode_s01(n: u64, k: u64) -> PyResult<u64> {
    oracles::mode_s01(n, k).map_err(to_py)
}

#[pyfunction]
fn mode_s02(n: u64, k: u64) -> PyResult<i64> {
    oracles::mode_s02(n, k).map_err(to_py)
}

#[pyfunction]
fn tail_bound(n: u64, l: u64) -> f64 {
    oracles::tail_bound(n, l)
}

/// The closed form for `Pr[d_{k+1} = d + 1 | D_k = 2k + s]`, or with
/// `counted=True` the exact pairing-count ratio.
#[pyfunction]
#[pyo3(signature = (n, k, s, d, counted = false))]
fn cond_prob_degree(
    py: Python<'_>,
    n: u64,
    k: u64,
    s: u64,
    d: u64,
    counted: bool,
) -> PyResult<Bound<'_, PyAny>> {
    if counted {
        fraction(py, &oracles::cond_prob_degree_from_counts(n, k, s, d).map_err(to_py)?)
    } else {
        prob(py, &oracles::cond_prob_degree(n, k, s, d).map_err(to_py)?)
    }
}

#[pyfunction]
#[pyo3(signature = (n, d, m = 1))]
fn expected_count(n: u64, d: u64, m: u64) -> f64 {
    oracles::expected_count(n, m, d)
}

#[pyfunction]
fn lemma2_approx(n: u64, k: u64, d: u64) -> f64 {
    oracles::lemma2_approx(n, k, d)
}

/// Returns `(gamma, std_error, bins)` for a `{degree: count}` histogram.
#[pyfunction]
#[pyo3(signature = (counts, d_lo, d_hi, offset = 0.0))]
fn power_law_exponent(
    counts: BTreeMap<u64, u64>,
    d_lo: u64,
    d_hi: u64,
    offset: f64,
) -> PyResult<(f64, f64, usize)> {
    let h = DegreeHistogram::from_counts(DegreeMode::InDegree, counts, 1);
    let fit = power_law_exponent_offset(&h, d_lo, d_hi, offset).map_err(to_py)?;
    Ok((fit.gamma, fit.std_error, fit.bins))
}

/// Mean and standard deviation of the degree-`d` fraction over replicates.
#[pyfunction]
#[pyo3(signature = (n, d, m = 1, mode = "in", replicates = 10, seed = 0, variant = "sequential"))]
fn empirical_fraction(
    n: usize,
    d: u64,
    m: usize,
    mode: &str,
    replicates: usize,
    seed: u64,
    variant: &str,
) -> PyResult<(f64, f64)> {
    let variant: Variant = variant.parse().map_err(to_py)?;
    let params = ProcessParams::new(n, m, variant, seed).map_err(to_py)?;
    let est = pa_lcd::analysis::empirical_fraction(&params, d, parse_mode(mode)?, replicates)
        .map_err(to_py)?;
    Ok((est.mean, est.std))
}

/// Supremum of alpha over a named system or a list of "a b cmp c" lines.
/// Returns `None` when infeasible or unbounded.
#[pyfunction]
#[pyo3(signature = (system = None, inequalities = None))]
fn region_max_alpha<'py>(
    py: Python<'py>,
    system: Option<&str>,
    inequalities: Option<Vec<String>>,
) -> PyResult<Option<Bound<'py, PyDict>>> {
    let systems = match (system, inequalities) {
        (Some(name), None) => named_systems(name).map_err(to_py)?,
        (None, Some(lines)) => {
            vec![RegionSystem::parse("custom", &lines.join("\n")).map_err(to_py)?]
        }
        _ => return Err(PyValueError::new_err("give exactly one of system or inequalities")),
    };
    let union = region_union_max_alpha(&systems);
    let (Some(sup), Some(best)) = (union.sup_alpha(), union.best_solution()) else {
        return Ok(None);
    };
    let out = PyDict::new(py);
    out.set_item("sup_alpha", fraction(py, sup)?)?;
    out.set_item("attained", union.attained())?;
    out.set_item(
        "face_beta",
        (fraction(py, &best.face_beta.0)?, fraction(py, &best.face_beta.1)?),
    )?;
    let mut vertices = Vec::new();
    for o in &union.outcomes {
        if let RegionOutcome::Feasible(s) = o {
            for (x, y) in &s.vertices {
                vertices.push((s.label.clone(), fraction(py, x)?, fraction(py, y)?));
            }
        }
    }
    out.set_item("vertices", vertices)?;
    Ok(Some(out))
}

#[pymodule]
#[pyo3(name = "pa_lcd")]
fn pa_lcd_native(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_pairings, m)?)?;
    m.add_function(wrap_pyfunction!(sample_pairing, m)?)?;
    m.add_function(wrap_pyfunction!(pairing_to_graph, m)?)?;
    m.add_function(wrap_pyfunction!(prob_dk, m)?)?;
    m.add_function(wrap_pyfunction!(log_prob_dk, m)?)?;
    m.add_function(wrap_pyfunction!(count_ns, m)?)?;
    m.add_function(wrap_pyfunction!(ratio_f, m)?)?;
    m.add_function(wrap_pyfunction!(mode_s01, m)?)?;
    m.add_function(wrap_pyfunction!(mode_s02, m)?)?;
    m.add_function(wrap_pyfunction!(tail_bound, m)?)?;
    m.add_function(wrap_pyfunction!(cond_prob_degree, m)?)?;
    m.add_function(wrap_pyfunction!(expected_count, m)?)?;
    m.add_function(wrap_pyfunction!(lemma2_approx, m)?)?;
    m.add_function(wrap_pyfunction!(power_law_exponent, m)?)?;
    m.add_function(wrap_pyfunction!(empirical_fraction, m)?)?;
    m.add_function(wrap_pyfunction!(region_max_alpha, m)?)?;
    Ok(())
}

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use pyo3::exceptions::{PyOSError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use sfc_core::analysis::{self, DimredConfig, DimredCurve};
use sfc_core::cells::{self, AlignmentVariant, NodeBudget};
use sfc_core::realmap::{self, parse_rational, RationalPoint};
use sfc_core::recurrence::{self, LatticePoint, SignedPoint};

fn err(e: sfc_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_rational(obj: &Bound<'_, PyAny>) -> PyResult<BigRational> {
    parse_rational(&obj.str()?.to_cow()?).map_err(err)
}

fn to_fraction<'py>(py: Python<'py>, r: &BigRational) -> PyResult<Bound<'py, PyAny>> {
    let fraction = py.import("fractions")?.getattr("Fraction")?;
    fraction.call1((r.numer().clone(), r.denom().clone()))
}

fn point_to_fractions<'py>(py: Python<'py>, p: &RationalPoint) -> PyResult<Vec<Bound<'py, PyAny>>> {
    p.coords().iter().map(|c| to_fraction(py, c)).collect()
}

fn point_from(objs: &[Bound<'_, PyAny>]) -> PyResult<RationalPoint> {
    Ok(RationalPoint::new(objs.iter().map(to_rational).collect::<PyResult<_>>()?))
}

/// A validated cell path with its orientation tables and alignment variant.
#[pyclass(name = "Cell", module = "sfc", frozen)]
struct PyCell {
    inner: cells::Cell,
}

fn parse_variant(variant: Option<&str>, class: cells::CellClass) -> PyResult<AlignmentVariant> {
    match variant {
        Some(v) => v.parse().map_err(err),
        None => Ok(AlignmentVariant::natural(class)),
    }
}

fn build(path: cells::PathSequence, variant: Option<&str>) -> PyResult<PyCell> {
    let class = cells::validate_path(&path).map_err(|e| err(e.into()))?;
    let variant = parse_variant(variant, class)?;
    Ok(PyCell { inner: cells::Cell::build(path, variant).map_err(err)? })
}

#[pymethods]
impl PyCell {
    /// Serpentine cell of the given rank and side.
    #[new]
    #[pyo3(signature = (rank, side, variant=None))]
    fn new(rank: usize, side: u32, variant: Option<&str>) -> PyResult<Self> {
        build(cells::make_serpentine_path_with_budget(rank, side, NodeBudget::from_env()).map_err(err)?, variant)
    }

    /// Cell from the text of a cell file.
    #[staticmethod]
    #[pyo3(signature = (text, variant=None))]
    fn from_text(text: &str, variant: Option<&str>) -> PyResult<Self> {
        build(cells::parse_cell_file_with_budget(text, NodeBudget::from_env()).map_err(err)?, variant)
    }

    #[staticmethod]
    #[pyo3(signature = (path, variant=None))]
    fn from_file(path: std::path::PathBuf, variant: Option<&str>) -> PyResult<Self> {
        let text = std::fs::read_to_string(&path).map_err(|e| PyOSError::new_err(format!("{}: {e}", path.display())))?;
        Self::from_text(&text, variant)
    }

    #[staticmethod]
    fn meander() -> Self {
        PyCell { inner: sfc_core::bundled::meander() }
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    #[getter]
    fn side(&self) -> u32 {
        self.inner.side()
    }

    #[getter]
    fn variant(&self) -> &'static str {
        self.inner.variant().name()
    }

    #[getter]
    fn is_diagonal(&self) -> bool {
        self.inner.class().is_diagonal()
    }

    #[getter]
    fn sigma(&self) -> Vec<usize> {
        self.inner.sigma().to_vec()
    }

    fn nodes(&self) -> Vec<Vec<u32>> {
        self.inner.path().nodes().map(|n| n.to_vec()).collect()
    }

    fn to_text(&self) -> String {
        cells::render_cell_file(self.inner.path())
    }

    fn encode(&self, u: BigUint) -> Vec<BigUint> {
        recurrence::encode(&u, &self.inner).into_coords()
    }

    fn decode(&self, coords: Vec<BigUint>) -> PyResult<BigUint> {
        recurrence::decode(&LatticePoint::new(coords), &self.inner).map_err(err)
    }

    fn encode_centered(&self, u: BigInt) -> PyResult<Vec<BigInt>> {
        Ok(recurrence::encode_centered(&u, &self.inner).map_err(err)?.into_coords())
    }

    fn decode_centered(&self, coords: Vec<BigInt>) -> PyResult<BigInt> {
        recurrence::decode_centered(&SignedPoint::new(coords), &self.inner).map_err(err)
    }

    /// `F` at resolution `n`; `y` is anything whose `str` is `p/q`, such as a Fraction.
    fn unit_forward<'py>(&self, py: Python<'py>, y: &Bound<'py, PyAny>, n: u64) -> PyResult<Vec<Bound<'py, PyAny>>> {
        let p = realmap::unit_forward(&to_rational(y)?, n, &self.inner).map_err(err)?;
        point_to_fractions(py, &p)
    }

    fn unit_inverse<'py>(&self, py: Python<'py>, point: Vec<Bound<'py, PyAny>>, n: u64) -> PyResult<Bound<'py, PyAny>> {
        let y = realmap::unit_inverse(&point_from(&point)?, n, &self.inner).map_err(err)?;
        to_fraction(py, &y)
    }

    fn mid_forward<'py>(&self, py: Python<'py>, y: &Bound<'py, PyAny>, depth: u64) -> PyResult<Vec<Bound<'py, PyAny>>> {
        let p = realmap::mid_forward(&to_rational(y)?, depth, &self.inner).map_err(err)?;
        point_to_fractions(py, &p)
    }

    fn mid_inverse<'py>(&self, py: Python<'py>, point: Vec<Bound<'py, PyAny>>, depth: u64) -> PyResult<Bound<'py, PyAny>> {
        let y = realmap::mid_inverse(&point_from(&point)?, depth, &self.inner).map_err(err)?;
        to_fraction(py, &y)
    }

    /// Per-axis edge counts over the first `s^(d*levels)` nodes.
    #[pyo3(signature = (levels, closing=false))]
    fn edge_tally(&self, levels: u64, closing: bool) -> PyResult<Vec<u64>> {
        Ok(analysis::edge_tally(&self.inner, levels, closing, NodeBudget::from_env()).map_err(err)?.counts)
    }

    /// One `{length: count}` dict per axis.
    fn run_histogram<'py>(&self, py: Python<'py>, levels: u64) -> PyResult<Vec<Bound<'py, PyDict>>> {
        let h = analysis::run_histogram(&self.inner, levels, NodeBudget::from_env()).map_err(err)?;
        h.per_axis
            .iter()
            .map(|runs| {
                let d = PyDict::new(py);
                for (len, count) in runs {
                    d.set_item(len, count)?;
                }
                Ok(d)
            })
            .collect()
    }

    fn is_continuous(&self, max_points: u64) -> bool {
        cells::verify_recurrence_compatibility(&self.inner, max_points).is_continuous()
    }

    fn __repr__(&self) -> String {
        format!("Cell(rank={}, side={}, variant='{}')", self.inner.rank(), self.inner.side(), self.inner.variant())
    }
}

#[pyfunction]
fn z_encode(u: BigUint, rank: usize) -> PyResult<Vec<BigUint>> {
    Ok(analysis::z_encode(&u, rank).map_err(err)?.into_coords())
}

#[pyfunction]
fn z_decode(coords: Vec<BigUint>) -> BigUint {
    analysis::z_decode(&LatticePoint::new(coords))
}

/// Mean displacement per gap for a cell, or for the bit-interleaving curve of
/// rank `zcurve_rank`. Returns `(means, slope)`.
#[pyfunction]
#[pyo3(signature = (cell=None, zcurve_rank=None, max_gap=100, samples=4096, seed=analysis::DEFAULT_SEED, domain_levels=None))]
fn dimred_profile(
    py: Python<'_>,
    cell: Option<&PyCell>,
    zcurve_rank: Option<usize>,
    max_gap: u64,
    samples: u64,
    seed: u64,
    domain_levels: Option<u64>,
) -> PyResult<(Vec<f64>, Option<f64>)> {
    let curve = match (cell, zcurve_rank) {
        (Some(c), None) => DimredCurve::Cell(&c.inner),
        (None, Some(rank)) => DimredCurve::ZCurve { rank },
        _ => return Err(PyValueError::new_err("give exactly one of cell and zcurve_rank")),
    };
    let config = DimredConfig { max_gap, samples, domain_levels, seed };
    let series = py.detach(|| analysis::dimred_profile(curve, &config)).map_err(err)?;
    Ok((series.means(), analysis::loglog_slope(&series).ok()))
}

#[pymodule]
fn sfc(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCell>()?;
    m.add_function(wrap_pyfunction!(z_encode, m)?)?;
    m.add_function(wrap_pyfunction!(z_decode, m)?)?;
    m.add_function(wrap_pyfunction!(dimred_profile, m)?)?;
    Ok(())
}

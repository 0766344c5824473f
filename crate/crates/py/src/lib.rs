//! Python bindings for ttg-core.
//!
//! Subsets and points cross the boundary as the same text literals the
//! command line uses (`{a,b}`, `[0,w)u{w^2}`, `all`).

use std::fmt::Display;

use pyo3::basic::CompareOp;
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

use ttg_core::dimfn::{self, DimensionKind};
use ttg_core::ltg::{self, FiltrationOptions, SupportDatum};
use ttg_core::stone::{self, BooleanPresentation};

create_exception!(
    ttg,
    TtgError,
    PyException,
    "Raised for every ttg-core error."
);

fn py_err(e: impl Display) -> PyErr {
    TtgError::new_err(e.to_string())
}

fn kind_of(kind: Option<&str>, space: &ttg_core::Space) -> PyResult<DimensionKind> {
    match kind {
        Some(k) => k.parse().map_err(py_err),
        None => Ok(match space {
            ttg_core::Space::Finite(_) => DimensionKind::Krull,
            _ => DimensionKind::CbRank,
        }),
    }
}

/// An ordinal below ω^ω, written like `w^2*3+w+4`.
#[pyclass(name = "Ordinal", frozen, from_py_object)]
#[derive(Clone)]
struct PyOrdinal(ttg_core::Ordinal);

#[pymethods]
impl PyOrdinal {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(PyOrdinal).map_err(py_err)
    }

    #[staticmethod]
    fn nat(n: u64) -> Self {
        PyOrdinal(ttg_core::Ordinal::nat(n))
    }

    #[staticmethod]
    fn omega() -> Self {
        PyOrdinal(ttg_core::Ordinal::omega())
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn is_successor(&self) -> bool {
        self.0.is_successor()
    }

    fn is_limit(&self) -> bool {
        self.0.is_limit()
    }

    fn succ(&self) -> PyResult<Self> {
        self.0.succ().map(PyOrdinal).map_err(py_err)
    }

    fn pred(&self) -> Option<Self> {
        self.0.pred().map(PyOrdinal)
    }

    /// `[(exponent, coefficient), ...]` in decreasing exponent order.
    fn terms(&self) -> Vec<(u32, u64)> {
        self.0.terms().to_vec()
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        self.0.try_add(&other.0).map(PyOrdinal).map_err(py_err)
    }

    fn __richcmp__(&self, other: &Self, op: CompareOp) -> bool {
        op.matches(self.0.cmp(&other.0))
    }

    fn __hash__(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.0.hash(&mut h);
        h.finish()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Ordinal('{}')", self.0)
    }
}

/// A finite T0 space, an ordinal interval `[0, top]`, or the Cantor marker.
#[pyclass(name = "Space", frozen, from_py_object)]
#[derive(Clone)]
struct PySpace(ttg_core::Space);

impl PySpace {
    fn subset(&self, lit: &str) -> PyResult<ttg_core::SubsetHandle> {
        self.0.parse_subset(lit).map_err(py_err)
    }

    fn fmt(&self, s: &ttg_core::SubsetHandle) -> String {
        self.0.format_subset(s)
    }
}

#[pymethods]
impl PySpace {
    /// Parses the space file format (`finite n` / `ordinal a` / `cantor`).
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        ttg_core::Space::from_text(text)
            .map(PySpace)
            .map_err(py_err)
    }

    /// Points by name and `(x, y)` pairs meaning `y` lies in the closure of `x`.
    #[staticmethod]
    fn finite(names: Vec<String>, specialisations: Vec<(String, String)>) -> PyResult<Self> {
        let index = |n: &str| {
            names
                .iter()
                .position(|m| m == n)
                .ok_or_else(|| py_err(format!("unknown point `{n}`")))
        };
        let rel = specialisations
            .iter()
            .map(|(a, b)| Ok((index(a)?, index(b)?)))
            .collect::<PyResult<Vec<_>>>()?;
        ttg_core::FiniteSpace::new(names.clone(), &rel)
            .map(|f| PySpace(ttg_core::Space::Finite(f)))
            .map_err(py_err)
    }

    #[staticmethod]
    fn ordinal(top: &str) -> PyResult<Self> {
        let top = top.parse().map_err(py_err)?;
        ttg_core::Space::ordinal(top).map(PySpace).map_err(py_err)
    }

    #[staticmethod]
    fn cantor() -> Self {
        PySpace(ttg_core::Space::Cantor)
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.0.kind_name()
    }

    /// Point names of a finite space.
    fn points(&self) -> PyResult<Vec<String>> {
        match &self.0 {
            ttg_core::Space::Finite(f) => Ok(f.names().to_vec()),
            _ => Err(py_err("only finite spaces list their points")),
        }
    }

    fn is_constructible(&self) -> bool {
        self.0.constructible_check()
    }

    fn closure(&self, subset: &str) -> PyResult<String> {
        let c = self.0.closure(&self.subset(subset)?).map_err(py_err)?;
        Ok(self.fmt(&c))
    }

    fn is_open(&self, subset: &str) -> PyResult<bool> {
        self.0.is_open(&self.subset(subset)?).map_err(py_err)
    }

    fn is_closed(&self, subset: &str) -> PyResult<bool> {
        self.0.is_closed(&self.subset(subset)?).map_err(py_err)
    }

    fn is_thomason(&self, subset: &str) -> PyResult<bool> {
        self.0.is_thomason(&self.subset(subset)?).map_err(py_err)
    }

    fn is_proconstructible(&self, subset: &str) -> PyResult<bool> {
        self.0
            .is_proconstructible(&self.subset(subset)?)
            .map_err(py_err)
    }

    /// `(V, W)` Thomason with `V ∖ W = {point}`.
    fn visibility_witness(&self, point: &str) -> PyResult<(String, String)> {
        let x = self.0.parse_point(point).map_err(py_err)?;
        let w = self.0.visibility_witness(&x).map_err(py_err)?;
        Ok((self.fmt(&w.outer), self.fmt(&w.inner)))
    }

    /// The closed subspace on `subset`, as a space in its own right.
    fn subspace(&self, subset: &str) -> PyResult<Self> {
        let view = self.0.subspace(&self.subset(subset)?).map_err(py_err)?;
        Ok(PySpace(view.into_space()))
    }

    /// `kind` is `"krull"` or `"cbrank"`; defaults to krull on finite spaces.
    #[pyo3(signature = (kind=None))]
    fn dimension(&self, kind: Option<&str>) -> PyResult<PyAssignment> {
        let kind = kind_of(kind, &self.0)?;
        let a = kind.compute(&self.0).map_err(py_err)?;
        Ok(PyAssignment(a))
    }

    fn __repr__(&self) -> String {
        match &self.0 {
            ttg_core::Space::Finite(f) => format!("Space(finite, {} points)", f.len()),
            ttg_core::Space::Ordinal(o) => format!("Space(ordinal {})", o.carrier()),
            ttg_core::Space::Cantor => "Space(cantor)".into(),
        }
    }
}

/// A dimension function, stored as its level sets.
#[pyclass(name = "DimensionAssignment", frozen)]
struct PyAssignment(dimfn::DimensionAssignment);

#[pymethods]
impl PyAssignment {
    fn space_dim(&self) -> PyOrdinal {
        PyOrdinal(self.0.space_dim())
    }

    fn value(&self, point: &str) -> PyResult<PyOrdinal> {
        let x = self.0.space().parse_point(point).map_err(py_err)?;
        self.0
            .value(&x)
            .cloned()
            .map(PyOrdinal)
            .ok_or_else(|| py_err(format!("{point} has no value")))
    }

    /// `[(value, subset literal), ...]` in increasing order of value.
    fn strata(&self) -> Vec<(PyOrdinal, String)> {
        self.0
            .strata()
            .iter()
            .map(|(v, s)| (PyOrdinal(v.clone()), self.0.space().format_subset(s)))
            .collect()
    }

    /// List of `(axiom, witness)` violations; empty when all axioms hold.
    fn validate(&self) -> Vec<(String, String)> {
        dimfn::validate(&self.0)
            .violations
            .into_iter()
            .map(|v| (v.axiom.to_string(), v.witness))
            .collect()
    }

    fn within_bound(&self) -> bool {
        dimfn::bound_check(&self.0)
    }

    fn render(&self) -> String {
        self.0.render()
    }
}

/// `(passes, report)` for the slice compatibility check.
#[pyfunction]
#[pyo3(signature = (space, kind=None))]
fn check_compatibility(space: &PySpace, kind: Option<&str>) -> PyResult<(bool, String)> {
    let kind = kind_of(kind, &space.0)?;
    let report = dimfn::check_compatibility(&space.0, kind).map_err(py_err)?;
    Ok((report.passes(), report.render(&space.0)))
}

/// Filtration stages as `(value, kind, delta, cumulative)` tuples.
#[pyfunction]
#[pyo3(signature = (space, supp="all", kind=None, compact=false))]
fn filtration(
    space: &PySpace,
    supp: &str,
    kind: Option<&str>,
    compact: bool,
) -> PyResult<Vec<(PyOrdinal, String, String, String)>> {
    let kind = kind_of(kind, &space.0)?;
    let datum = SupportDatum::new(space.0.clone(), space.subset(supp)?).map_err(py_err)?;
    let trace = ltg::filtration(&datum, kind, FiltrationOptions { compact }).map_err(py_err)?;
    Ok(trace
        .stages
        .iter()
        .map(|s| {
            (
                PyOrdinal(s.value.clone()),
                s.kind.to_string(),
                space.fmt(&s.delta),
                space.fmt(&s.cumulative),
            )
        })
        .collect())
}

/// `supp ∩ {x}` computed through a visibility witness.
#[pyfunction]
fn gamma_point(space: &PySpace, supp: &str, point: &str) -> PyResult<String> {
    let datum = SupportDatum::new(space.0.clone(), space.subset(supp)?).map_err(py_err)?;
    let x = space.0.parse_point(point).map_err(py_err)?;
    let g = datum.gamma_point(&x).map_err(py_err)?;
    Ok(space.fmt(g.supp()))
}

#[pyfunction]
fn thomason_ideals(space: &PySpace) -> PyResult<Vec<String>> {
    let ttg_core::Space::Finite(f) = &space.0 else {
        return Err(py_err("Unsupported: enumeration needs a finite space"));
    };
    let ideals = ltg::thomason_ideals(f).map_err(py_err)?;
    Ok(ideals.iter().map(|s| space.fmt(s)).collect())
}

/// Presentation literals: `fields:<k>`, `interval:<ordinal>`, `atomless`.
#[pyfunction]
fn is_semi_artinian(presentation: &str) -> PyResult<bool> {
    let p: BooleanPresentation = presentation.parse().map_err(py_err)?;
    Ok(stone::is_semi_artinian(&p))
}

#[pyfunction]
fn spec_of(presentation: &str) -> PyResult<PySpace> {
    let p: BooleanPresentation = presentation.parse().map_err(py_err)?;
    stone::spec_of(&p).map(PySpace).map_err(py_err)
}

/// `(passes, report)` for the subset/subcategory round trip on `fields:<k>`.
#[pyfunction]
fn stone_roundtrip(presentation: &str) -> PyResult<(bool, String)> {
    let p: BooleanPresentation = presentation.parse().map_err(py_err)?;
    let report = stone::roundtrip_check(&p).map_err(py_err)?;
    Ok((report.passes(), report.render()))
}

#[pymodule]
fn ttg(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("TtgError", m.py().get_type::<TtgError>())?;
    m.add_class::<PyOrdinal>()?;
    m.add_class::<PySpace>()?;
    m.add_class::<PyAssignment>()?;
    m.add_function(wrap_pyfunction!(check_compatibility, m)?)?;
    m.add_function(wrap_pyfunction!(filtration, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_point, m)?)?;
    m.add_function(wrap_pyfunction!(thomason_ideals, m)?)?;
    m.add_function(wrap_pyfunction!(is_semi_artinian, m)?)?;
    m.add_function(wrap_pyfunction!(spec_of, m)?)?;
    m.add_function(wrap_pyfunction!(stone_roundtrip, m)?)?;
    Ok(())
}

//! Python bindings for the multiport rigidity library.
//!
//! Exposes the labeled vector space algebra and the netlist-level
//! analyses. Exact rationals cross the boundary as strings (`p/q` or
//! integers); analysis results come back as JSON strings with the same
//! schema as the command-line interface.

use std::collections::{BTreeMap, BTreeSet};

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use rigidport::colspace;
use rigidport::multiport::solve::{PortAssignment, PortVar};
use rigidport::netlist::Netlist;
use rigidport::ratio::{format_q, parse_q};
use rigidport::report;
use rigidport::Label;

fn value_err(msg: impl ToString) -> PyErr {
    PyValueError::new_err(msg.to_string())
}

fn parse_labels(names: &[String]) -> PyResult<Vec<Label>> {
    names.iter().map(|n| n.parse::<Label>().map_err(value_err)).collect()
}

fn parse_label_set(names: &[String]) -> PyResult<BTreeSet<Label>> {
    Ok(parse_labels(names)?.into_iter().collect())
}

/// A vector space over the rationals with labeled columns, stored in a
/// canonical reduced row echelon form.
#[pyclass(frozen, skip_from_py_object)]
struct VectorSpace {
    inner: colspace::VectorSpace,
}

#[pymethods]
impl VectorSpace {
    /// Build from column labels and rows of rational strings.
    #[new]
    fn new(labels: Vec<String>, rows: Vec<Vec<String>>) -> PyResult<Self> {
        let labels = parse_labels(&labels)?;
        let rows = rows
            .iter()
            .map(|row| row.iter().map(|t| parse_q(t)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(value_err)?;
        let inner = colspace::VectorSpace::from_rows(&labels, rows).map_err(value_err)?;
        Ok(VectorSpace { inner })
    }

    /// The full space on the given columns.
    #[staticmethod]
    fn full(labels: Vec<String>) -> PyResult<Self> {
        Ok(VectorSpace { inner: colspace::VectorSpace::full(parse_labels(&labels)?) })
    }

    /// The zero space on the given columns.
    #[staticmethod]
    fn zero(labels: Vec<String>) -> PyResult<Self> {
        Ok(VectorSpace { inner: colspace::VectorSpace::zero(parse_labels(&labels)?) })
    }

    /// Parse the `labels:` text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(VectorSpace { inner: colspace::VectorSpace::parse_text(text).map_err(value_err)? })
    }

    fn rank(&self) -> usize {
        self.inner.rank()
    }

    fn columns(&self) -> Vec<String> {
        self.inner.columns().iter().map(|l| l.to_string()).collect()
    }

    fn basis(&self) -> Vec<Vec<String>> {
        self.inner.basis().iter().map(|row| row.iter().map(format_q).collect()).collect()
    }

    fn restrict(&self, labels: Vec<String>) -> PyResult<Self> {
        let keep = parse_label_set(&labels)?;
        Ok(VectorSpace { inner: self.inner.restrict(&keep).map_err(value_err)? })
    }

    fn contract(&self, labels: Vec<String>) -> PyResult<Self> {
        let keep = parse_label_set(&labels)?;
        Ok(VectorSpace { inner: self.inner.contract(&keep).map_err(value_err)? })
    }

    fn orthocomplement(&self) -> Self {
        VectorSpace { inner: self.inner.orthocomplement() }
    }

    fn sum(&self, other: &VectorSpace) -> Self {
        VectorSpace { inner: self.inner.sum(&other.inner) }
    }

    fn intersect(&self, other: &VectorSpace) -> Self {
        VectorSpace { inner: self.inner.intersect(&other.inner) }
    }

    /// Matched composition through the shared columns.
    fn matched(&self, other: &VectorSpace) -> Self {
        VectorSpace { inner: self.inner.matched(&other.inner) }
    }

    /// Skewed composition through the shared columns.
    fn skewed(&self, other: &VectorSpace) -> Self {
        VectorSpace { inner: self.inner.skewed(&other.inner) }
    }

    fn is_independent(&self, labels: Vec<String>) -> PyResult<bool> {
        let cols = parse_label_set(&labels)?;
        self.inner.is_independent(&cols).map_err(value_err)
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    fn __repr__(&self) -> String {
        format!("VectorSpace(columns={:?}, rank={})", self.columns(), self.rank())
    }

    fn __eq__(&self, other: &VectorSpace) -> bool {
        self.inner == other.inner
    }
}

/// A multiport parsed from netlist text.
#[pyclass(frozen)]
struct Multiport {
    netlist: Netlist,
    inner: rigidport::Multiport,
}

#[pymethods]
impl Multiport {
    #[new]
    fn new(netlist_text: &str) -> PyResult<Self> {
        let netlist = Netlist::parse(netlist_text).map_err(value_err)?;
        let inner = netlist.multiport().map_err(value_err)?;
        Ok(Multiport { netlist, inner })
    }

    fn ports(&self) -> Vec<String> {
        self.inner.ports().iter().map(|l| l.to_string()).collect()
    }

    /// Re-emit the netlist with all defaults materialized.
    fn emit(&self) -> String {
        self.netlist.emit()
    }

    fn necessity(&self) -> bool {
        self.inner.necessity_check().pass
    }

    fn sufficiency(&self) -> bool {
        self.inner.sufficiency_check().pass
    }

    /// Full rigidity report as a JSON string.
    fn rigidity(&self) -> String {
        report::rigidity_report(&self.netlist, &self.inner).to_string()
    }

    /// Hybrid representation as a JSON string.
    fn hybrid(&self) -> PyResult<String> {
        report::hybrid_report(&self.netlist, &self.inner)
            .map(|v| v.to_string())
            .map_err(value_err)
    }

    /// Port behaviour as a JSON string.
    fn behaviour(&self) -> String {
        report::behaviour_report(&self.netlist, &self.inner.port_behaviour()).to_string()
    }

    /// Exact solve; assignments map `"p.v"` or `"p.i"` to rational
    /// strings.
    fn solve(&self, assignments: BTreeMap<String, String>) -> PyResult<String> {
        let mut assignment = PortAssignment::new();
        for (key, value) in assignments {
            let (port, kind) = key
                .rsplit_once('.')
                .ok_or_else(|| value_err(format!("assignment key `{key}` needs .v or .i")))?;
            let label: Label = port.parse().map_err(value_err)?;
            let value = parse_q(&value).map_err(value_err)?;
            let var = match kind {
                "v" => PortVar::Voltage(value),
                "i" => PortVar::Current(value),
                other => return Err(value_err(format!("unknown port variable `{other}`"))),
            };
            assignment.insert(label, var);
        }
        let solution = self.inner.solve(&assignment).map_err(value_err)?;
        Ok(report::solve_report(&self.netlist, &solution).to_string())
    }

    /// Port minimization report as a JSON string.
    fn minports(&self) -> PyResult<String> {
        report::minports_report(&self.netlist, &self.inner)
            .map(|v| v.to_string())
            .map_err(value_err)
    }

    /// Column independence report as a JSON string.
    fn independence(&self, ports: Vec<String>) -> PyResult<String> {
        let chosen = parse_label_set(&ports)?;
        report::independence_report(&self.netlist, &self.inner, &chosen)
            .map(|v| v.to_string())
            .map_err(value_err)
    }

    /// Maximally distant spanning forests of the netlist graph.
    fn matroid_union(&self) -> String {
        report::matroid_union_report(&self.netlist).to_string()
    }

    fn __repr__(&self) -> String {
        format!(
            "Multiport(edges={}, ports={})",
            self.inner.graph().edges().len(),
            self.inner.ports().len()
        )
    }
}

#[pymodule]
fn _rigidport(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<VectorSpace>()?;
    m.add_class::<Multiport>()?;
    Ok(())
}

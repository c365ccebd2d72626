//! Exact network solve.
//!
//! The assembled system is square of size 2·|edges|: one fundamental
//! circuit row per cotree edge (KVL on the voltage copies), one
//! fundamental cutset row per tree edge (KCL on the current copies), one
//! row per device equation and one row per port assignment.

use std::collections::BTreeMap;

use num::{One, Zero};
use thiserror::Error;

use crate::colspace::{LinearOutcome, VectorSpace};
use crate::label::Label;
use crate::ratio::Q;

use super::{DeviceSpec, Multiport};

/// Fixing one of voltage or current at a port.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PortVar {
    Voltage(Q),
    Current(Q),
}

pub type PortAssignment = BTreeMap<Label, PortVar>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("port `{0}` has no assignment")]
    MissingAssignment(Label),
    #[error("assignment names `{0}`, which is not a port")]
    NotAPort(Label),
}

/// Outcome of the exact solve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    /// Values for every voltage (primed) and current (double-primed)
    /// variable.
    Unique(BTreeMap<Label, Q>),
    /// A particular solution plus the homogeneous kernel.
    Underdetermined { particular: BTreeMap<Label, Q>, kernel: VectorSpace },
    /// `certificate · rows = 0` with `certificate · rhs ≠ 0`, over the
    /// assembled rows in order: circuits, cutsets, devices, assignments.
    Inconsistent { certificate: Vec<Q> },
}

impl Solution {
    pub fn unique(&self) -> Option<&BTreeMap<Label, Q>> {
        match self {
            Solution::Unique(m) => Some(m),
            _ => None,
        }
    }
}

pub fn solve(network: &Multiport, assignment: &PortAssignment) -> Result<Solution, SolveError> {
    for p in assignment.keys() {
        if !network.ports().contains(p) {
            return Err(SolveError::NotAPort(p.clone()));
        }
    }
    for p in network.ports() {
        if !assignment.contains_key(p) {
            return Err(SolveError::MissingAssignment(p.clone()));
        }
    }

    let graph = network.graph();
    let mut labels: Vec<Label> = Vec::new();
    for e in graph.edge_labels() {
        labels.push(e.primed());
        labels.push(e.doubled());
    }
    labels.sort();
    let index: BTreeMap<&Label, usize> = labels.iter().enumerate().map(|(i, l)| (l, i)).collect();
    let width = labels.len();

    let mut rows: Vec<Vec<Q>> = Vec::new();
    let mut rhs: Vec<Q> = Vec::new();

    // KVL: voltages are orthogonal to every circuit vector.
    let circuits = graph.kcl_space();
    for row in circuits.basis() {
        let mut out = vec![Q::zero(); width];
        for (l, x) in circuits.columns().iter().zip(row) {
            out[index[&l.primed()]] = x.clone();
        }
        rows.push(out);
        rhs.push(Q::zero());
    }
    // KCL: currents are orthogonal to every cutset vector.
    let cutsets = graph.kvl_space();
    for row in cutsets.basis() {
        let mut out = vec![Q::zero(); width];
        for (l, x) in cutsets.columns().iter().zip(row) {
            out[index[&l.doubled()]] = x.clone();
        }
        rows.push(out);
        rhs.push(Q::zero());
    }
    // Device rows.
    for d in network.devices() {
        for (entries, b) in device_rows(d) {
            let mut out = vec![Q::zero(); width];
            for (l, x) in entries {
                out[index[&l]] = x;
            }
            rows.push(out);
            rhs.push(b);
        }
    }
    // Port assignment rows.
    for (p, v) in assignment {
        let mut out = vec![Q::zero(); width];
        let b = match v {
            PortVar::Voltage(x) => {
                out[index[&p.primed()]] = Q::one();
                x.clone()
            }
            PortVar::Current(x) => {
                out[index[&p.doubled()]] = Q::one();
                x.clone()
            }
        };
        rows.push(out);
        rhs.push(b);
    }

    match crate::colspace::solve_rows(&rows, &rhs) {
        LinearOutcome::Inconsistent { combination } => {
            Ok(Solution::Inconsistent { certificate: combination })
        }
        LinearOutcome::Solvable { particular, kernel } => {
            let values: BTreeMap<Label, Q> =
                labels.iter().cloned().zip(particular).collect();
            if kernel.is_empty() {
                Ok(Solution::Unique(values))
            } else {
                let kernel = VectorSpace::from_rows(&labels, kernel).expect("labels unique");
                Ok(Solution::Underdetermined { particular: values, kernel })
            }
        }
    }
}

/// The constraint rows of one device, as (column, coefficient) lists with
/// right-hand sides.
pub(super) fn device_rows(device: &DeviceSpec) -> Vec<(Vec<(Label, Q)>, Q)> {
    match device {
        DeviceSpec::Resistor { edge, ohms } => {
            vec![(vec![(edge.primed(), Q::one()), (edge.doubled(), -ohms.clone())], Q::zero())]
        }
        DeviceSpec::VSource { edge, volts } => {
            vec![(vec![(edge.primed(), Q::one())], volts.clone())]
        }
        DeviceSpec::ISource { edge, amps } => {
            vec![(vec![(edge.doubled(), Q::one())], amps.clone())]
        }
        DeviceSpec::Ccvs { control, output, transresistance } => vec![
            (vec![(control.primed(), Q::one())], Q::zero()),
            (
                vec![(output.primed(), Q::one()), (control.doubled(), -transresistance.clone())],
                Q::zero(),
            ),
        ],
        DeviceSpec::Vccs { control, output, transconductance } => vec![
            (vec![(control.doubled(), Q::one())], Q::zero()),
            (
                vec![(output.doubled(), Q::one()), (control.primed(), -transconductance.clone())],
                Q::zero(),
            ),
        ],
        DeviceSpec::Cccs { control, output, gain } => vec![
            (vec![(control.primed(), Q::one())], Q::zero()),
            (vec![(output.doubled(), Q::one()), (control.doubled(), -gain.clone())], Q::zero()),
        ],
        DeviceSpec::Vcvs { control, output, gain } => vec![
            (vec![(control.doubled(), Q::one())], Q::zero()),
            (vec![(output.primed(), Q::one()), (control.primed(), -gain.clone())], Q::zero()),
        ],
    }
}

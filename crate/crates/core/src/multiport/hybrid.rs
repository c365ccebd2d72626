//! Hybrid representation of the port behaviour.
//!
//! For a multiport passing the sufficiency conditions, a forest containing
//! the voltage-like branches and avoiding the current-like branches splits
//! the ports into tree ports P₁ (voltage driven) and cotree ports P₂
//! (current driven), and `P₁' ∪ P₂"` is a column base of the behaviour
//! translate. The blocks are filled by per-port unit excitations with
//! sources zeroed, the offsets by one solve with the sources active.

use std::collections::BTreeSet;

use num::{One, Zero};
use thiserror::Error;

use crate::colspace::AffineSpace;
use crate::graph::ForestError;
use crate::label::Label;
use crate::ratio::Q;

use super::solve::{solve, PortAssignment, PortVar, SolveError};
use super::{Multiport, TopoCheck};

#[derive(Debug, Clone)]
pub struct HybridRep {
    /// P₁: ports in the forest; their voltages are independent variables.
    pub voltage_ports: Vec<Label>,
    /// P₂: cotree ports; their currents are independent variables.
    pub current_ports: Vec<Label>,
    /// i_{P₁"} response to v_{P₁'}.
    pub g11: Vec<Vec<Q>>,
    /// i_{P₁"} response to i_{P₂"}.
    pub h12: Vec<Vec<Q>>,
    /// v_{P₂'} response to v_{P₁'}.
    pub h21: Vec<Vec<Q>>,
    /// v_{P₂'} response to i_{P₂"}.
    pub r22: Vec<Vec<Q>>,
    /// Source offsets of i_{P₁"}.
    pub s1: Vec<Q>,
    /// Source offsets of v_{P₂'}.
    pub s2: Vec<Q>,
    /// The reconstructed behaviour, verified against the direct
    /// computation.
    pub behaviour: AffineSpace,
}

#[derive(Debug, Error)]
pub enum HybridError {
    #[error("sufficiency conditions fail: {0:?}")]
    Sufficiency(TopoCheck),
    #[error("forest construction failed: {0}")]
    Forest(#[from] ForestError),
    #[error("solve failed: {0}")]
    Solve(#[from] SolveError),
}

pub fn hybrid_rep(network: &Multiport) -> Result<HybridRep, HybridError> {
    let sufficiency = network.sufficiency_check();
    if !sufficiency.pass {
        return Err(HybridError::Sufficiency(sufficiency));
    }
    let roles = network.roles();
    // Prefer internal edges when growing the forest so that as many ports
    // as possible fall into the cotree (current-driven) block.
    let prefer: Vec<Label> = roles.resistors.iter().cloned().collect();
    let forest = network.graph().constrained_forest(
        &roles.voltage_like(),
        &roles.current_like(),
        &prefer,
    )?;
    let voltage_ports: Vec<Label> =
        network.ports().iter().filter(|p| forest.contains(p)).cloned().collect();
    let current_ports: Vec<Label> =
        network.ports().iter().filter(|p| !forest.contains(p)).cloned().collect();

    let zeroed = network.homogeneous();
    let n1 = voltage_ports.len();
    let n2 = current_ports.len();
    let mut g11 = vec![vec![Q::zero(); n1]; n1];
    let mut h12 = vec![vec![Q::zero(); n2]; n1];
    let mut h21 = vec![vec![Q::zero(); n1]; n2];
    let mut r22 = vec![vec![Q::zero(); n2]; n2];

    let unit_assignment = |active: &Label, voltage: bool| -> PortAssignment {
        let mut assignment = PortAssignment::new();
        for p in &voltage_ports {
            let x = if voltage && p == active { Q::one() } else { Q::zero() };
            assignment.insert(p.clone(), PortVar::Voltage(x));
        }
        for p in &current_ports {
            let x = if !voltage && p == active { Q::one() } else { Q::zero() };
            assignment.insert(p.clone(), PortVar::Current(x));
        }
        assignment
    };
    let read_response = |values: &std::collections::BTreeMap<Label, Q>| -> (Vec<Q>, Vec<Q>) {
        let top: Vec<Q> = voltage_ports.iter().map(|p| values[&p.doubled()].clone()).collect();
        let bottom: Vec<Q> = current_ports.iter().map(|p| values[&p.primed()].clone()).collect();
        (top, bottom)
    };

    for (j, p) in voltage_ports.iter().enumerate() {
        let solution = solve(&zeroed, &unit_assignment(p, true))?;
        let values = solution.unique().expect("sufficient multiports solve uniquely");
        let (top, bottom) = read_response(values);
        for (i, x) in top.into_iter().enumerate() {
            g11[i][j] = x;
        }
        for (i, x) in bottom.into_iter().enumerate() {
            h21[i][j] = x;
        }
    }
    for (j, p) in current_ports.iter().enumerate() {
        let solution = solve(&zeroed, &unit_assignment(p, false))?;
        let values = solution.unique().expect("sufficient multiports solve uniquely");
        let (top, bottom) = read_response(values);
        for (i, x) in top.into_iter().enumerate() {
            h12[i][j] = x;
        }
        for (i, x) in bottom.into_iter().enumerate() {
            r22[i][j] = x;
        }
    }
    // Offsets: sources active, all independent port variables zero.
    let zero_everything = {
        let mut assignment = PortAssignment::new();
        for p in &voltage_ports {
            assignment.insert(p.clone(), PortVar::Voltage(Q::zero()));
        }
        for p in &current_ports {
            assignment.insert(p.clone(), PortVar::Current(Q::zero()));
        }
        assignment
    };
    let solution = solve(network, &zero_everything)?;
    let values = solution.unique().expect("sufficient multiports solve uniquely");
    let (s1, s2) = read_response(values);

    let behaviour = reconstruct(&voltage_ports, &current_ports, &g11, &h12, &h21, &r22, &s1, &s2);
    assert_eq!(
        Some(&behaviour),
        network.port_behaviour().as_ref(),
        "hybrid reconstruction must equal the port behaviour"
    );
    Ok(HybridRep { voltage_ports, current_ports, g11, h12, h21, r22, s1, s2, behaviour })
}

impl HybridRep {
    /// The hybrid column base `P₁' ∪ P₂"` of the behaviour translate.
    pub fn column_base(&self) -> BTreeSet<Label> {
        self.voltage_ports
            .iter()
            .map(Label::primed)
            .chain(self.current_ports.iter().map(Label::doubled))
            .collect()
    }
}

#[allow(clippy::too_many_arguments)]
fn reconstruct(
    voltage_ports: &[Label],
    current_ports: &[Label],
    g11: &[Vec<Q>],
    h12: &[Vec<Q>],
    h21: &[Vec<Q>],
    r22: &[Vec<Q>],
    s1: &[Q],
    s2: &[Q],
) -> AffineSpace {
    let mut labels: Vec<Label> = Vec::new();
    for p in voltage_ports.iter().chain(current_ports) {
        labels.push(p.primed());
        labels.push(p.doubled());
    }
    let index: std::collections::BTreeMap<&Label, usize> =
        labels.iter().enumerate().map(|(i, l)| (l, i)).collect();
    let width = labels.len();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (i, p) in voltage_ports.iter().enumerate() {
        let mut row = vec![Q::zero(); width];
        row[index[&p.doubled()]] = Q::one();
        for (j, x) in g11[i].iter().enumerate() {
            row[index[&voltage_ports[j].primed()]] = -x.clone();
        }
        for (j, x) in h12[i].iter().enumerate() {
            row[index[&current_ports[j].doubled()]] = -x.clone();
        }
        rows.push(row);
        rhs.push(s1[i].clone());
    }
    for (i, p) in current_ports.iter().enumerate() {
        let mut row = vec![Q::zero(); width];
        row[index[&p.primed()]] = Q::one();
        for (j, x) in h21[i].iter().enumerate() {
            row[index[&voltage_ports[j].primed()]] = -x.clone();
        }
        for (j, x) in r22[i].iter().enumerate() {
            row[index[&current_ports[j].doubled()]] = -x.clone();
        }
        rows.push(row);
        rhs.push(s2[i].clone());
    }
    AffineSpace::solution_set(&labels, rows, rhs).expect("hybrid rows have an identity block")
}

//! Electrical multiports: device characteristics, rigidity tests, exact
//! solve, port behaviour and hybrid representations.
//!
//! A multiport is a graph together with a set of port edges and one device
//! per internal edge. Devices are resistors, independent sources and the
//! four controlled-source kinds. Note the control/output pairing: a CCVS
//! pins the control voltage to zero and drives `v_out = r·i_ctl`; a VCCS
//! pins the control current and drives `i_out = g·v_ctl`; a CCCS pairs a
//! current control with a current output (`i_out = α·i_ctl`) and a VCVS a
//! voltage control with a voltage output (`v_out = β·v_ctl`).
//!
//! Voltage variables live on primed column copies, currents on
//! double-primed copies.

pub mod dirac;
pub mod hybrid;
pub mod solve;


pub use dirac::{dirac_check, dirac_witness, gyrator, ideal_transformer, purslow2_check, Purslow2Report};
pub use hybrid::{hybrid_rep, HybridError, HybridRep};
pub use solve::{solve, PortAssignment, Solution};

use std::collections::{BTreeMap, BTreeSet};

use num::Zero;
use thiserror::Error;

use crate::colspace::{affine_matched, AffineSpace, VectorSpace};
use crate::graph::Graph;
use crate::label::Label;
use crate::matroid::{matroid_pair_rigid, Matroid};
use crate::ratio::Q;
use crate::rigidity::{pair_rigid_spaces, RigidVerdict};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("edge `{0}` carries more than one device role")]
    DoubleCovered(Label),
    #[error("internal edge `{0}` has no device")]
    Uncovered(Label),
    #[error("device references unknown edge `{0}`")]
    UnknownEdge(Label),
    #[error("device placed on port edge `{0}`")]
    DeviceOnPort(Label),
    #[error("controlled source has identical control and output edge `{0}`")]
    SelfControlled(Label),
    #[error("port label `{0}` is not an edge")]
    UnknownPort(Label),
    #[error("label `{0}` used by both multiports in a connection")]
    LabelCollision(Label),
    #[error("resistor on `{0}` must be nonzero")]
    ZeroResistance(Label),
}

/// One device on one or two internal edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DeviceSpec {
    Resistor { edge: Label, ohms: Q },
    VSource { edge: Label, volts: Q },
    ISource { edge: Label, amps: Q },
    /// v_ctl = 0, v_out = r·i_ctl
    Ccvs { control: Label, output: Label, transresistance: Q },
    /// i_ctl = 0, i_out = g·v_ctl
    Vccs { control: Label, output: Label, transconductance: Q },
    /// v_ctl = 0, i_out = α·i_ctl
    Cccs { control: Label, output: Label, gain: Q },
    /// i_ctl = 0, v_out = β·v_ctl
    Vcvs { control: Label, output: Label, gain: Q },
}

impl DeviceSpec {
    /// The edges this device covers.
    pub fn edges(&self) -> Vec<&Label> {
        match self {
            DeviceSpec::Resistor { edge, .. }
            | DeviceSpec::VSource { edge, .. }
            | DeviceSpec::ISource { edge, .. } => vec![edge],
            DeviceSpec::Ccvs { control, output, .. }
            | DeviceSpec::Vccs { control, output, .. }
            | DeviceSpec::Cccs { control, output, .. }
            | DeviceSpec::Vcvs { control, output, .. } => vec![control, output],
        }
    }

    /// The same device with source values set to zero.
    pub fn zeroed(&self) -> DeviceSpec {
        match self {
            DeviceSpec::VSource { edge, .. } => {
                DeviceSpec::VSource { edge: edge.clone(), volts: Q::zero() }
            }
            DeviceSpec::ISource { edge, .. } => {
                DeviceSpec::ISource { edge: edge.clone(), amps: Q::zero() }
            }
            other => other.clone(),
        }
    }
}

/// The derived role partition of the internal edges: E, J, R and the
/// control/output classes Y₁ (current controls), Y₂ (voltage controls),
/// Z₁ (controlled voltage outputs), Z₂ (controlled current outputs).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Roles {
    pub resistors: BTreeSet<Label>,
    pub vsources: BTreeSet<Label>,
    pub isources: BTreeSet<Label>,
    pub current_controls: BTreeSet<Label>,
    pub voltage_controls: BTreeSet<Label>,
    pub controlled_voltages: BTreeSet<Label>,
    pub controlled_currents: BTreeSet<Label>,
}

impl Roles {
    pub fn from_devices(devices: &[DeviceSpec]) -> Result<Roles, ModelError> {
        let mut roles = Roles::default();
        let mut covered = BTreeSet::new();
        let mut cover = |l: &Label| -> Result<(), ModelError> {
            if !covered.insert(l.clone()) {
                return Err(ModelError::DoubleCovered(l.clone()));
            }
            Ok(())
        };
        for d in devices {
            match d {
                DeviceSpec::Resistor { edge, ohms } => {
                    if ohms.is_zero() {
                        return Err(ModelError::ZeroResistance(edge.clone()));
                    }
                    cover(edge)?;
                    roles.resistors.insert(edge.clone());
                }
                DeviceSpec::VSource { edge, .. } => {
                    cover(edge)?;
                    roles.vsources.insert(edge.clone());
                }
                DeviceSpec::ISource { edge, .. } => {
                    cover(edge)?;
                    roles.isources.insert(edge.clone());
                }
                DeviceSpec::Ccvs { control, output, .. }
                | DeviceSpec::Cccs { control, output, .. } => {
                    if control == output {
                        return Err(ModelError::SelfControlled(control.clone()));
                    }
                    cover(control)?;
                    cover(output)?;
                    roles.current_controls.insert(control.clone());
                    if matches!(d, DeviceSpec::Ccvs { .. }) {
                        roles.controlled_voltages.insert(output.clone());
                    } else {
                        roles.controlled_currents.insert(output.clone());
                    }
                }
                DeviceSpec::Vccs { control, output, .. }
                | DeviceSpec::Vcvs { control, output, .. } => {
                    if control == output {
                        return Err(ModelError::SelfControlled(control.clone()));
                    }
                    cover(control)?;
                    cover(output)?;
                    roles.voltage_controls.insert(control.clone());
                    if matches!(d, DeviceSpec::Vcvs { .. }) {
                        roles.controlled_voltages.insert(output.clone());
                    } else {
                        roles.controlled_currents.insert(output.clone());
                    }
                }
            }
        }
        Ok(roles)
    }

    /// Z₁ ∪ Y₁ ∪ E: branches with predetermined voltages.
    pub fn voltage_like(&self) -> BTreeSet<Label> {
        self.controlled_voltages
            .union(&self.current_controls)
            .chain(&self.vsources)
            .cloned()
            .collect()
    }

    /// Z₂ ∪ Y₂ ∪ J: branches with predetermined currents.
    pub fn current_like(&self) -> BTreeSet<Label> {
        self.controlled_currents
            .union(&self.voltage_controls)
            .chain(&self.isources)
            .cloned()
            .collect()
    }

    pub fn covered(&self) -> BTreeSet<Label> {
        [
            &self.resistors,
            &self.vsources,
            &self.isources,
            &self.current_controls,
            &self.voltage_controls,
            &self.controlled_voltages,
            &self.controlled_currents,
        ]
        .into_iter()
        .flatten()
        .cloned()
        .collect()
    }
}

/// A graph with port edges and a device on every internal edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multiport {
    graph: Graph,
    ports: BTreeSet<Label>,
    devices: Vec<DeviceSpec>,
    roles: Roles,
}

impl Multiport {
    pub fn new(
        graph: Graph,
        ports: BTreeSet<Label>,
        devices: Vec<DeviceSpec>,
    ) -> Result<Multiport, ModelError> {
        let edges = graph.edge_labels();
        for p in &ports {
            if !edges.contains(p) {
                return Err(ModelError::UnknownPort(p.clone()));
            }
        }
        let roles = Roles::from_devices(&devices)?;
        let covered = roles.covered();
        for l in &covered {
            if !edges.contains(l) {
                return Err(ModelError::UnknownEdge(l.clone()));
            }
            if ports.contains(l) {
                return Err(ModelError::DeviceOnPort(l.clone()));
            }
        }
        for l in &edges {
            if !ports.contains(l) && !covered.contains(l) {
                return Err(ModelError::Uncovered(l.clone()));
            }
        }
        Ok(Multiport { graph, ports, devices, roles })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn ports(&self) -> &BTreeSet<Label> {
        &self.ports
    }

    pub fn devices(&self) -> &[DeviceSpec] {
        &self.devices
    }

    pub fn roles(&self) -> &Roles {
        &self.roles
    }

    /// Internal (device-carrying) edges.
    pub fn internal_edges(&self) -> BTreeSet<Label> {
        self.graph.edge_labels().difference(&self.ports).cloned().collect()
    }

    /// The multiport with all source values set to zero.
    pub fn homogeneous(&self) -> Multiport {
        Multiport {
            graph: self.graph.clone(),
            ports: self.ports.clone(),
            devices: self.devices.iter().map(DeviceSpec::zeroed).collect(),
            roles: self.roles.clone(),
        }
    }

    /// The topological solution space `(V^v)_{S'P'} ⊕ (V^i)_{S"P"}`.
    pub fn topo_space(&self) -> VectorSpace {
        let kvl = self.graph.kvl_space().relabel(Label::primed).expect("priming is injective");
        let kcl = self.graph.kcl_space().relabel(Label::doubled).expect("doubling is injective");
        kvl.direct_sum(&kcl).expect("copies are disjoint")
    }

    /// The affine device characteristic on `S' ∪ S"`.
    pub fn device_space(&self) -> AffineSpace {
        device_space(&self.devices)
    }

    /// Exact rigidity: the pair of the topological space and the device
    /// translate.
    pub fn is_rigid_exact(&self) -> RigidVerdict {
        pair_rigid_spaces(&self.topo_space(), self.device_space().translate())
    }

    /// The port behaviour `[topo ∩ devices] ∘ P'P"`, void when the network
    /// is inconsistent.
    pub fn port_behaviour(&self) -> Option<AffineSpace> {
        affine_matched(&AffineSpace::from_space(self.topo_space()), &self.device_space())
    }

    /// Necessary topological conditions for rigidity: controlling-current
    /// branches with voltage sources must be loop free, controlling-voltage
    /// branches with current sources cutset free.
    pub fn necessity_check(&self) -> TopoCheck {
        let loops: BTreeSet<Label> = self
            .roles
            .current_controls
            .union(&self.roles.vsources)
            .cloned()
            .collect();
        let cuts: BTreeSet<Label> =
            self.roles.voltage_controls.union(&self.roles.isources).cloned().collect();
        self.topo_check(&loops, &cuts)
    }

    /// Sufficient topological conditions: the voltage-like branches are
    /// loop free and the current-like branches cutset free.
    pub fn sufficiency_check(&self) -> TopoCheck {
        self.topo_check(&self.roles.voltage_like(), &self.roles.current_like())
    }

    fn topo_check(&self, loop_set: &BTreeSet<Label>, cut_set: &BTreeSet<Label>) -> TopoCheck {
        let loop_witness = self.graph.cycle_within(loop_set);
        let cutset_witness = self.graph.cutset_within(cut_set);
        TopoCheck { pass: loop_witness.is_none() && cutset_witness.is_none(), loop_witness, cutset_witness }
    }

    /// The topology matroid `M(V¹) = Graphic(G)' ⊕ Cographic(G)"`.
    pub fn topology_matroid(&self) -> Matroid {
        let primed = relabel_graph(&self.graph, Label::primed);
        let doubled = relabel_graph(&self.graph, Label::doubled);
        Matroid::graphic(&primed)
            .direct_sum(&Matroid::cographic(&doubled))
            .expect("copies are disjoint")
    }

    /// The device matroid `M(V²) = Free ⊕ Zero ⊕ pair-partition`, which
    /// never inspects parameter values: it models them as generic symbols.
    pub fn device_matroid(&self) -> Matroid {
        let r = &self.roles;
        let mut free: BTreeSet<Label> = BTreeSet::new();
        free.extend(r.vsources.iter().map(Label::doubled));
        free.extend(r.isources.iter().map(Label::primed));
        free.extend(r.controlled_voltages.iter().map(Label::doubled));
        free.extend(r.controlled_currents.iter().map(Label::primed));
        let mut zero: BTreeSet<Label> = BTreeSet::new();
        zero.extend(r.vsources.iter().map(Label::primed));
        zero.extend(r.isources.iter().map(Label::doubled));
        zero.extend(r.current_controls.iter().map(Label::primed));
        zero.extend(r.voltage_controls.iter().map(Label::doubled));
        let mut blocks: Vec<(BTreeSet<Label>, usize)> = Vec::new();
        for e in &r.resistors {
            blocks.push(([e.primed(), e.doubled()].into(), 1));
        }
        for d in &self.devices {
            match d {
                DeviceSpec::Ccvs { control, output, .. } => {
                    blocks.push(([control.doubled(), output.primed()].into(), 1));
                }
                DeviceSpec::Vccs { control, output, .. } => {
                    blocks.push(([control.primed(), output.doubled()].into(), 1));
                }
                DeviceSpec::Cccs { control, output, .. } => {
                    blocks.push(([control.doubled(), output.doubled()].into(), 1));
                }
                DeviceSpec::Vcvs { control, output, .. } => {
                    blocks.push(([control.primed(), output.primed()].into(), 1));
                }
                _ => {}
            }
        }
        Matroid::free(free)
            .direct_sum(&Matroid::zero(zero))
            .expect("role classes are disjoint")
            .direct_sum(&Matroid::partition(blocks).expect("pair blocks are disjoint"))
            .expect("role classes are disjoint")
    }

    /// Matroidal rigidity under the genericity assumption: parameters are
    /// treated as independent symbols, never inspected. Valid only when
    /// the instance satisfies the reduction hypotheses, which are the
    /// loop/cutset conditions checked first.
    pub fn matroidal_rigidity(&self) -> MatroidalRigidity {
        // Necessity part of the hypotheses: rigidity fails outright.
        let necessity = self.necessity_check();
        if !necessity.pass {
            return MatroidalRigidity::NotRigid { witness: necessity };
        }
        // Remaining reduction hypotheses: the free device variables must be
        // forced to zero by the topology (contraction condition), i.e.
        // voltage-source-like branches loop free and current-source-like
        // branches cutset free, this time with the outputs instead of the
        // controls.
        let loops: BTreeSet<Label> = self
            .roles
            .controlled_voltages
            .union(&self.roles.vsources)
            .cloned()
            .collect();
        let cuts: BTreeSet<Label> = self
            .roles
            .controlled_currents
            .union(&self.roles.isources)
            .cloned()
            .collect();
        let reduction = self.topo_check(&loops, &cuts);
        if !reduction.pass {
            return MatroidalRigidity::HypothesisFailed { witness: reduction };
        }
        let verdict = matroid_pair_rigid(&self.topology_matroid(), &self.device_matroid());
        match verdict.witness {
            Some((topology_base, device_base)) if verdict.rigid => {
                MatroidalRigidity::Rigid { topology_base, device_base }
            }
            _ => MatroidalRigidity::NotRigidGenerically {
                full_sum_holds: verdict.full_sum_holds,
                zero_intersection_holds: verdict.zero_intersection_holds,
            },
        }
    }

    /// Exact network solve; see [`solve`].
    pub fn solve(&self, assignment: &PortAssignment) -> Result<Solution, solve::SolveError> {
        solve(self, assignment)
    }

    /// Hybrid representation of the port behaviour; see [`hybrid_rep`].
    pub fn hybrid_rep(&self) -> Result<HybridRep, HybridError> {
        hybrid_rep(self)
    }

    /// View as a generalized multiport (topological space plus device
    /// characteristic).
    pub fn generalized(&self) -> GeneralizedMultiport {
        GeneralizedMultiport { space: self.topo_space(), device: self.device_space() }
    }
}

/// Result of a loop/cutset topological check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopoCheck {
    pub pass: bool,
    /// A cycle inside the checked loop set, if any.
    pub loop_witness: Option<Vec<Label>>,
    /// A cut covered by the checked cutset set, if any.
    pub cutset_witness: Option<BTreeSet<Label>>,
}

/// Verdict of the matroid-union rigidity test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatroidalRigidity {
    /// Disjoint bases of the topology and device matroids covering all
    /// device columns.
    Rigid { topology_base: BTreeSet<Label>, device_base: BTreeSet<Label> },
    /// A necessary condition fails; the multiport is not rigid.
    NotRigid { witness: TopoCheck },
    /// The reduction hypotheses of the matroidal test fail; the generic
    /// verdict does not apply to this instance.
    HypothesisFailed { witness: TopoCheck },
    /// Hypotheses hold but no disjoint-base cover exists: not rigid for
    /// generic parameters.
    NotRigidGenerically { full_sum_holds: bool, zero_intersection_holds: bool },
}

impl MatroidalRigidity {
    pub fn is_rigid(&self) -> bool {
        matches!(self, MatroidalRigidity::Rigid { .. })
    }
}

/// Stack the device equations into an affine space on `S' ∪ S"`.
pub fn device_space(devices: &[DeviceSpec]) -> AffineSpace {
    let roles = Roles::from_devices(devices).expect("validated devices");
    let edges = roles.covered();
    let mut labels: Vec<Label> = Vec::with_capacity(2 * edges.len());
    labels.extend(edges.iter().map(Label::primed));
    labels.extend(edges.iter().map(Label::doubled));
    let index: BTreeMap<&Label, usize> = labels.iter().enumerate().map(|(i, l)| (l, i)).collect();
    let mut rows: Vec<Vec<Q>> = Vec::new();
    let mut rhs: Vec<Q> = Vec::new();
    for d in devices {
        for (entries, b) in solve::device_rows(d) {
            let mut row = vec![Q::zero(); labels.len()];
            for (l, x) in entries {
                row[index[&l]] = x;
            }
            rows.push(row);
            rhs.push(b);
        }
    }
    AffineSpace::solution_set(&labels, rows, rhs)
        .expect("device equations have an identity block and are consistent")
}

fn relabel_graph(graph: &Graph, map: impl Fn(&Label) -> Label) -> Graph {
    Graph::new(
        graph
            .edges()
            .iter()
            .map(|e| (map(&e.label), e.tail.clone(), e.head.clone()))
            .collect(),
    )
    .expect("injective relabeling keeps labels unique")
}

/// A generalized multiport: a vector space of topological constraints plus
/// an affine device characteristic on a subset of its columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralizedMultiport {
    pub space: VectorSpace,
    pub device: AffineSpace,
}

impl GeneralizedMultiport {
    pub fn new(space: VectorSpace, device: AffineSpace) -> GeneralizedMultiport {
        GeneralizedMultiport { space, device }
    }

    pub fn is_rigid(&self) -> RigidVerdict {
        pair_rigid_spaces(&self.space, self.device.translate())
    }

    pub fn behaviour(&self) -> Option<AffineSpace> {
        affine_matched(&AffineSpace::from_space(self.space.clone()), &self.device)
    }

    /// The homogeneous version: device sources zeroed.
    pub fn homogeneous(&self) -> GeneralizedMultiport {
        GeneralizedMultiport {
            space: self.space.clone(),
            device: AffineSpace::from_space(self.device.translate().clone()),
        }
    }

    /// The dual generalized multiport `(V⊥, (translate)⊥)`.
    pub fn dual(&self) -> GeneralizedMultiport {
        GeneralizedMultiport {
            space: self.space.orthocomplement(),
            device: AffineSpace::from_space(self.device.translate().orthocomplement()),
        }
    }
}

/// Connect two multiports through an affine coupling on their port copies.
/// The composite is the generalized multiport with the direct sums of the
/// topological spaces and of the device characteristics.
pub fn connect(
    n1: &Multiport,
    n2: &Multiport,
    coupling: &AffineSpace,
) -> Result<GeneralizedMultiport, ModelError> {
    let cols1: BTreeSet<Label> = n1.topo_space().column_set();
    let cols2: BTreeSet<Label> = n2.topo_space().column_set();
    if let Some(l) = cols1.intersection(&cols2).next() {
        return Err(ModelError::LabelCollision(l.clone()));
    }
    let space = n1.topo_space().direct_sum(&n2.topo_space()).expect("checked disjoint");
    let device = n1
        .device_space()
        .direct_sum(&n2.device_space())
        .and_then(|d| d.direct_sum(coupling))
        .map_err(|_| {
            ModelError::LabelCollision(
                coupling.columns().first().cloned().unwrap_or_else(|| Label::plain("?")),
            )
        })?;
    Ok(GeneralizedMultiport { space, device })
}

/// Rigidity of a connection, decided recursively: both parts rigid and the
/// pair (behaviour translates, coupling translate) rigid. Asserted to
/// agree with the direct test on the composite.
#[derive(Debug, Clone)]
pub struct ConnectReport {
    pub composite: RigidVerdict,
    pub n1: RigidVerdict,
    pub n2: RigidVerdict,
    pub ports_vs_coupling: RigidVerdict,
}

pub fn connect_rigidity(
    n1: &Multiport,
    n2: &Multiport,
    coupling: &AffineSpace,
) -> Result<ConnectReport, ModelError> {
    let composite = connect(n1, n2, coupling)?.is_rigid();
    let v1 = n1.is_rigid_exact();
    let v2 = n2.is_rigid_exact();
    let beh1 = n1.topo_space().matched(n1.device_space().translate());
    let beh2 = n2.topo_space().matched(n2.device_space().translate());
    let ports_vs_coupling = pair_rigid_spaces(
        &beh1.direct_sum(&beh2).expect("disjoint ports"),
        coupling.translate(),
    );
    let recursive = v1.rigid && v2.rigid && ports_vs_coupling.rigid;
    assert_eq!(composite.rigid, recursive, "recursive connection rigidity disagrees");
    Ok(ConnectReport { composite, n1: v1, n2: v2, ports_vs_coupling })
}

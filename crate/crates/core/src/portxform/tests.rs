use std::collections::BTreeSet;

use super::*;
use crate::multiport::DeviceSpec;
use crate::ratio::q;

fn lab(n: &str) -> Label {
    Label::plain(n)
}

fn set(names: &[&str]) -> BTreeSet<Label> {
    names.iter().map(|n| lab(n)).collect()
}

fn space(labels: &[&str], rows: &[&[i64]]) -> VectorSpace {
    let labels: Vec<Label> = labels.iter().map(|n| lab(n)).collect();
    let rows = rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
    VectorSpace::from_rows(&labels, rows).unwrap()
}

fn graph(edges: &[(&str, &str, &str)]) -> Graph {
    Graph::new(
        edges.iter().map(|(l, t, h)| (lab(l), t.to_string(), h.to_string())).collect(),
    )
    .unwrap()
}

/// Source and resistor chain with three redundant parallel ports.
fn redundant_port_multiport() -> Multiport {
    Multiport::new(
        graph(&[
            ("e", "1", "2"),
            ("p1", "1", "3"),
            ("p2", "1", "3"),
            ("p3", "3", "1"),
            ("r", "2", "3"),
        ]),
        set(&["p1", "p2", "p3"]),
        vec![
            DeviceSpec::VSource { edge: lab("e"), volts: q(6) },
            DeviceSpec::Resistor { edge: lab("r"), ohms: q(5) },
        ],
    )
    .unwrap()
}

#[test]
fn visible_minor_form_trivial_cases() {
    let t = set(&["t1", "t2"]);
    let full = VectorSpace::full(set(&["t1", "t2", "r1"]));
    let form = visible_minor_form(&full, &t).unwrap();
    assert!(form.b2t.is_empty(), "full space has no middle rows");
    assert!(form.check_against(&full));

    let line = space(&["t", "r"], &[&[1, 1]]);
    let form = visible_minor_form(&line, &set(&["t"])).unwrap();
    assert!(form.b1t.is_empty());
    assert_eq!(form.b2t, vec![vec![q(1)]]);
    assert_eq!(form.b2r, vec![vec![q(1)]]);
    assert!(form.b3r.is_empty());
    assert!(form.check_against(&line));
}

#[test]
fn visible_minor_form_identities_on_mixed_instance() {
    let v = space(
        &["t1", "t2", "t3", "r1", "r2", "r3"],
        &[
            &[1, 0, 0, 0, 0, 0],
            &[0, 1, 0, 1, 2, 0],
            &[0, 0, 1, 0, 1, 1],
            &[0, 0, 0, 0, 3, 1],
        ],
    );
    let form = visible_minor_form(&v, &set(&["t1", "t2", "t3"])).unwrap();
    assert!(form.check_against(&v));
    let t = set(&["t1", "t2", "t3"]);
    assert_eq!(
        form.b2t.len(),
        v.restrict(&t).unwrap().rank() - v.contract(&t).unwrap().rank()
    );
}

#[test]
fn port_reduce_matrix_bounds() {
    // Already minimal: the single port column stays.
    let v = space(&["t", "r"], &[&[1, 1]]);
    let reduced = port_reduce_matrix(&v, &set(&["t"])).unwrap();
    assert_eq!(reduced.columns().len(), 2);

    // Fully decoupled: all port columns vanish.
    let v = VectorSpace::full(set(&["t1"])).direct_sum(&VectorSpace::full(set(&["r1", "r2"]))).unwrap();
    let reduced = port_reduce_matrix(&v, &set(&["t1"])).unwrap();
    assert_eq!(reduced.column_set(), set(&["t1"]));

    // Duplicated port column: one of the two is dropped.
    let v = space(&["t", "r1", "r2"], &[&[1, 1, 1]]);
    let reduced = port_reduce_matrix(&v, &set(&["t"])).unwrap();
    assert_eq!(reduced.columns().len(), 2);
}

#[test]
fn graph_minimization_reaches_lower_bound() {
    let n = redundant_port_multiport();
    let internal = n.internal_edges();
    let data = graph_port_minimize(n.graph(), &internal).unwrap();
    let v = n.graph().kvl_space();
    let bound = v.restrict(&internal).unwrap().rank() - v.contract(&internal).unwrap().rank();
    assert_eq!(data.new_ports.len(), bound);
    assert_eq!(bound, 1);
    assert!(data.preserves_internal_minors());

    // A multiport whose single port is already node-to-datum minimal.
    let tight = graph(&[("p", "1", "2"), ("r", "1", "2")]);
    let data = graph_port_minimize(&tight, &set(&["r"])).unwrap();
    assert_eq!(data.new_ports.len(), 1);

    // Two parallel ports collapse to one.
    let dup = graph(&[("p1", "1", "2"), ("p2", "1", "2"), ("r", "1", "2")]);
    let data = graph_port_minimize(&dup, &set(&["r"])).unwrap();
    assert_eq!(data.new_ports.len(), 1);
    assert!(data.preserves_internal_minors());
}

#[test]
fn internal_model_cases() {
    let v = space(&["a", "b1", "b2"], &[&[1, 1, 0], &[0, 1, 1]]);
    let b = set(&["b1", "b2"]);
    let full = AffineSpace::from_space(VectorSpace::full(b.clone()));
    let model = internal_model(&v, &full).unwrap().unwrap();
    assert_eq!(model, AffineSpace::from_space(v.restrict(&b).unwrap()));

    let cross = AffineSpace::from_space(v.contract(&b).unwrap());
    let model = internal_model(&v, &cross).unwrap().unwrap();
    assert_eq!(model, AffineSpace::from_space(v.contract(&b).unwrap()));
}

#[test]
fn minimized_multiport_has_the_same_internal_model() {
    let n = redundant_port_multiport();
    let (minimized, _) = minimize_multiport(&n).unwrap();
    let device = n.device_space();
    let a = internal_model(&n.topo_space(), &device).unwrap().unwrap();
    let b = internal_model(&minimized.topo_space(), &device).unwrap().unwrap();
    assert_eq!(a, b);
}

#[test]
fn port_transformation_checks() {
    let v_sp = space(&["s", "p"], &[&[1, 1]]);
    // A relabeled copy is a port transformation.
    let v_sq = space(&["s", "q"], &[&[1, 1]]);
    assert!(is_port_transformation(&v_sp, &v_sq, &set(&["s"])).unwrap());
    // Same restriction, different contraction: not one.
    let v_bad = VectorSpace::full(set(&["s", "q"]));
    assert!(!is_port_transformation(&v_sp, &v_bad, &set(&["s"])).unwrap());
    // Overlapping port labels are handled through detached copies.
    assert!(is_port_transformation(&v_sp, &v_sp, &set(&["s"])).unwrap());
}

#[test]
fn graph_minimization_is_port_transformation() {
    let n = redundant_port_multiport();
    let internal = n.internal_edges();
    let data = graph_port_minimize(n.graph(), &internal).unwrap();
    assert!(is_port_transformation(
        &data.original.kvl_space(),
        &data.minimized.kvl_space(),
        &internal
    )
    .unwrap());
}

#[test]
fn matrix_and_graph_minimizers_agree_as_port_transformations() {
    let n = redundant_port_multiport();
    let internal = n.internal_edges();
    let v = n.graph().kvl_space();
    let by_matrix = port_reduce_matrix(&v, &internal).unwrap();
    let data = graph_port_minimize(n.graph(), &internal).unwrap();
    let by_graph = data.minimized.kvl_space();
    assert_eq!(
        by_matrix.column_set().len(),
        by_graph.column_set().len(),
        "both reach the same minimal port count"
    );
    assert!(is_port_transformation(&by_matrix, &by_graph, &internal).unwrap());
}

#[test]
fn lift_behaviour_identity_when_no_reduction() {
    // One port, already minimal: lifting is the identity.
    let n = Multiport::new(
        graph(&[("p", "1", "2"), ("r", "1", "2")]),
        set(&["p"]),
        vec![DeviceSpec::Resistor { edge: lab("r"), ohms: q(2) }],
    )
    .unwrap();
    let (minimized, data) = minimize_multiport(&n).unwrap();
    assert_eq!(data.new_ports, set(&["p"]));
    let lifted = lift_behaviour(&minimized.port_behaviour().unwrap(), &data).unwrap();
    assert_eq!(lifted, n.port_behaviour().unwrap());
}

#[test]
fn lift_behaviour_matches_direct_computation() {
    let n = redundant_port_multiport();
    let (minimized, data) = minimize_multiport(&n).unwrap();
    assert_eq!(minimized.ports().len(), 1);
    let lifted = lift_behaviour(&minimized.port_behaviour().unwrap(), &data).unwrap();
    assert_eq!(lifted, n.port_behaviour().unwrap());
}

#[test]
fn independence_report_matches_brute_force() {
    let n = redundant_port_multiport();
    let behaviour = n.port_behaviour().unwrap();
    let v = behaviour.translate();
    let primed_all: BTreeSet<Label> = n.ports().iter().map(Label::primed).collect();
    let doubled_all: BTreeSet<Label> = n.ports().iter().map(Label::doubled).collect();
    for subset in [set(&[]), set(&["p1"]), set(&["p1", "p2"]), set(&["p1", "p3"]), set(&["p1", "p2", "p3"])] {
        let report = test_port_independence(&n, &subset).unwrap();
        let primed: BTreeSet<Label> = subset.iter().map(Label::primed).collect();
        let doubled: BTreeSet<Label> = subset.iter().map(Label::doubled).collect();
        assert_eq!(
            report.primed_in_restriction,
            v.is_independent(&primed).unwrap(),
            "restriction/primed for {subset:?}"
        );
        assert_eq!(
            report.primed_in_contraction,
            v.contract(&primed_all).unwrap().is_independent(&primed).unwrap(),
            "contraction/primed for {subset:?}"
        );
        assert_eq!(
            report.doubled_in_restriction,
            v.is_independent(&doubled).unwrap(),
            "restriction/doubled for {subset:?}"
        );
        assert_eq!(
            report.doubled_in_contraction,
            v.contract(&doubled_all).unwrap().is_independent(&doubled).unwrap(),
            "contraction/doubled for {subset:?}"
        );
    }
}

#[test]
fn independence_of_empty_set_is_trivially_true() {
    let n = redundant_port_multiport();
    let report = test_port_independence(&n, &BTreeSet::new()).unwrap();
    assert!(report.primed_in_restriction);
    assert!(report.primed_in_contraction);
    assert!(report.doubled_in_restriction);
    assert!(report.doubled_in_contraction);
}

#[test]
fn parallel_ports_are_dependent_in_restriction() {
    let n = redundant_port_multiport();
    let report = test_port_independence(&n, &set(&["p1", "p2"])).unwrap();
    assert!(!report.primed_in_restriction, "two parallel ports form a loop");
    assert!(!report.primed_in_contraction);
}

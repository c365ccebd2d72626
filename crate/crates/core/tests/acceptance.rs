//! Acceptance suite: one test per criterion, each printing a PASS line
//! with the number of cases exercised (run with `--nocapture` to see
//! them). All checks are exact; no tolerances anywhere.

use std::collections::BTreeSet;

use num::Zero;
use rand::prelude::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rigidport::colspace::{affine_matched, AffineSpace, VectorSpace};
use rigidport::graph::Graph;
use rigidport::matroid::{union_max_distant, Matroid};
use rigidport::multiport::solve::{PortAssignment, PortVar, Solution};
use rigidport::multiport::{
    device_space, dirac_check, gyrator, ideal_transformer, purslow2_check, DeviceSpec,
    GeneralizedMultiport, MatroidalRigidity, Multiport,
};
use rigidport::netlist::Netlist;
use rigidport::portxform::{
    graph_port_minimize, is_port_transformation, lift_behaviour, minimize_multiport,
    port_reduce_matrix,
};
use rigidport::ratio::{q, qr, Q};
use rigidport::rigidity::{
    derived_rigidity_split, family_rigid, family_rigid_recursive, pair_rigid_spaces,
};
use rigidport::{AssocFamily, Label};

fn lab(n: &str) -> Label {
    Label::plain(n)
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn rand_q(r: &mut ChaCha8Rng) -> Q {
    qr(r.random_range(-3..=3), r.random_range(1..=2))
}

fn random_space(r: &mut ChaCha8Rng, labels: &[Label], max_rows: usize) -> VectorSpace {
    let rows = (0..r.random_range(0..=max_rows))
        .map(|_| (0..labels.len()).map(|_| rand_q(r)).collect())
        .collect();
    VectorSpace::from_rows(labels, rows).expect("well-formed rows")
}

/// Disjoint groups of fresh labels.
fn label_group(prefix: &str, count: usize) -> Vec<Label> {
    (0..count).map(|i| lab(&format!("{prefix}{i}"))).collect()
}

/// A random multigraph on up to `max_v` vertices with `edges` edges.
fn random_graph(r: &mut ChaCha8Rng, max_v: usize, edges: usize, prefix: &str) -> Graph {
    let n_v = r.random_range(2..=max_v);
    let mut list = Vec::new();
    for i in 0..edges {
        let tail = format!("v{}", r.random_range(0..n_v));
        let head = format!("v{}", r.random_range(0..n_v));
        list.push((lab(&format!("{prefix}{i}")), tail, head));
    }
    Graph::new(list).expect("unique labels")
}

/// A random connected graph built from an explicit spanning tree plus
/// extra chords; returns the graph with its tree and cotree edge labels.
fn random_tree_graph(
    r: &mut ChaCha8Rng,
    n_v: usize,
    extra: usize,
) -> (Graph, Vec<Label>, Vec<Label>) {
    let mut list = Vec::new();
    let mut tree = Vec::new();
    for v in 1..n_v {
        let parent = r.random_range(0..v);
        let label = lab(&format!("t{v}"));
        tree.push(label.clone());
        list.push((label, format!("v{parent}"), format!("v{v}")));
    }
    let mut cotree = Vec::new();
    for i in 0..extra {
        let a = r.random_range(0..n_v);
        let mut b = r.random_range(0..n_v);
        if a == b {
            b = (b + 1) % n_v;
        }
        let label = lab(&format!("c{i}"));
        cotree.push(label.clone());
        list.push((label, format!("v{a}"), format!("v{b}")));
    }
    (Graph::new(list).expect("unique labels"), tree, cotree)
}

struct SpacePair {
    v_sp: VectorSpace,
    v_pq: VectorSpace,
    s: BTreeSet<Label>,
    p: BTreeSet<Label>,
    q: BTreeSet<Label>,
}

fn random_pair(r: &mut ChaCha8Rng) -> SpacePair {
    let ns = r.random_range(1..=3);
    let np = r.random_range(1..=3);
    let nq = r.random_range(1..=2);
    let s = label_group("s", ns);
    let p = label_group("p", np);
    let qq = label_group("q", nq);
    let sp: Vec<Label> = s.iter().chain(&p).cloned().collect();
    let pq: Vec<Label> = p.iter().chain(&qq).cloned().collect();
    SpacePair {
        v_sp: random_space(r, &sp, 4),
        v_pq: random_space(r, &pq, 4),
        s: s.into_iter().collect(),
        p: p.into_iter().collect(),
        q: qq.into_iter().collect(),
    }
}

#[test]
fn criterion_01_implicit_duality_vector() {
    let mut r = rng(101);
    let cases = 220;
    for _ in 0..cases {
        let pair = random_pair(&mut r);
        let lhs = pair.v_sp.matched(&pair.v_pq).orthocomplement();
        let rhs = pair.v_sp.orthocomplement().skewed(&pair.v_pq.orthocomplement());
        assert_eq!(lhs, rhs, "implicit duality failed");
    }
    println!("[criterion 01] PASS implicit duality on {cases} random space pairs");
}

/// All bases of a matroid on a small ground set, by subset enumeration.
fn enumerate_bases(m: &Matroid) -> Vec<BTreeSet<Label>> {
    let ground: Vec<Label> = m.ground().iter().cloned().collect();
    assert!(ground.len() <= 16);
    let rank = m.full_rank();
    let mut bases = Vec::new();
    for mask in 0u32..(1 << ground.len()) {
        if mask.count_ones() as usize != rank {
            continue;
        }
        let subset: BTreeSet<Label> = ground
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, l)| l.clone())
            .collect();
        if m.is_independent(&subset) {
            bases.push(subset);
        }
    }
    bases
}

/// Union-matroid rank of a subset by brute force over base pairs.
fn brute_union_rank_on(
    bases1: &[BTreeSet<Label>],
    bases2: &[BTreeSet<Label>],
    subset: &BTreeSet<Label>,
) -> usize {
    let mut best = 0;
    for b1 in bases1 {
        for b2 in bases2 {
            let covered = b1.union(b2).filter(|l| subset.contains(l)).count();
            best = best.max(covered);
        }
    }
    best
}

#[test]
fn criterion_02_rank_formulas() {
    // Vector version of the four-term linking rank formula.
    let mut r = rng(202);
    let vector_cases = 220;
    for _ in 0..vector_cases {
        let pair = random_pair(&mut r);
        let lhs = pair.v_sp.matched(&pair.v_pq).rank();
        let rhs = pair.v_sp.contract(&pair.s).unwrap().rank()
            + pair.v_pq.contract(&pair.q).unwrap().rank()
            + pair
                .v_sp
                .restrict(&pair.p)
                .unwrap()
                .intersect(&pair.v_pq.restrict(&pair.p).unwrap())
                .rank()
            - pair
                .v_sp
                .contract(&pair.p)
                .unwrap()
                .intersect(&pair.v_pq.contract(&pair.p).unwrap())
                .rank();
        assert_eq!(lhs, rhs, "vector rank formula failed");
    }

    // Matroid version on graphic instances, against brute-force base
    // enumeration.
    let matroid_cases = 60;
    for i in 0..matroid_cases {
        let e1 = r.random_range(2..=4usize);
        let e2 = r.random_range(2..=4usize);
        let g1 = random_graph(&mut r, 3, e1, "p");
        let g2 = random_graph(&mut r, 3, e2, &if i % 2 == 0 { "p" } else { "q" }.to_string());
        let m1 = Matroid::graphic(&g1);
        let m2 = Matroid::graphic(&g2);
        let shared: BTreeSet<Label> = m1.ground().intersection(m2.ground()).cloned().collect();
        let sq: BTreeSet<Label> = m1
            .ground()
            .union(m2.ground())
            .filter(|l| !shared.contains(*l))
            .cloned()
            .collect();
        let bases1 = enumerate_bases(&m1);
        let bases2 = enumerate_bases(&m2);
        let all: BTreeSet<Label> = m1.ground().union(m2.ground()).cloned().collect();
        // Linking rank via brute force: r((M1 v M2) x SQ).
        let brute =
            brute_union_rank_on(&bases1, &bases2, &all) - brute_union_rank_on(&bases1, &bases2, &shared);
        let linking = m1.linking(&m2);
        assert_eq!(linking.full_rank(), brute, "linking rank disagrees with brute force");
        let s: BTreeSet<Label> = m1.ground().difference(&shared).cloned().collect();
        let qs: BTreeSet<Label> = m2.ground().difference(&shared).cloned().collect();
        let rhs = m1.contract(&s).unwrap().full_rank() + m2.contract(&qs).unwrap().full_rank()
            + m1.restrict(&shared)
                .unwrap()
                .intersection(&m2.restrict(&shared).unwrap())
                .full_rank()
            - m1.contract(&shared)
                .unwrap()
                .intersection(&m2.contract(&shared).unwrap())
                .full_rank();
        assert_eq!(linking.full_rank(), rhs, "matroid four-term formula failed");
        let _ = sq;
    }
    println!(
        "[criterion 02] PASS rank formulas on {vector_cases} vector pairs and {matroid_cases} graphic matroid pairs"
    );
}

#[test]
fn criterion_03_tellegen_and_minor_correspondence() {
    let mut r = rng(303);
    let cases = 110;
    for i in 0..cases {
        let edges = r.random_range(1..=10usize);
        let g = random_graph(&mut r, 5, edges, "e");
        let kvl = g.kvl_space();
        let kcl = g.kcl_space();
        assert_eq!(kcl, kvl.orthocomplement(), "Tellegen failed on case {i}");

        // Random disjoint delete and contract sets.
        let labels: Vec<Label> = g.edge_labels().into_iter().collect();
        let mut delete = BTreeSet::new();
        let mut contract = BTreeSet::new();
        for l in &labels {
            match r.random_range(0..4) {
                0 => {
                    delete.insert(l.clone());
                }
                1 => {
                    contract.insert(l.clone());
                }
                _ => {}
            }
        }
        let minor = g.minor(&delete, &contract).unwrap();
        let after_delete: BTreeSet<Label> =
            g.edge_labels().difference(&delete).cloned().collect();
        let keep: BTreeSet<Label> = after_delete.difference(&contract).cloned().collect();
        assert_eq!(
            minor.kvl_space(),
            kvl.restrict(&after_delete).unwrap().contract(&keep).unwrap(),
            "voltage minor correspondence failed"
        );
        let after_contract: BTreeSet<Label> =
            g.edge_labels().difference(&contract).cloned().collect();
        assert_eq!(
            minor.kcl_space(),
            kcl.restrict(&after_contract).unwrap().contract(&keep).unwrap(),
            "current minor correspondence failed"
        );
    }
    println!("[criterion 03] PASS Tellegen and minor correspondence on {cases} random multigraphs");
}

#[test]
fn criterion_04_matroid_union_vs_brute_force() {
    let mut r = rng(404);
    let cases = 130;
    for i in 0..cases {
        let e1 = r.random_range(1..=7usize);
        let e2 = r.random_range(1..=7usize);
        // Overlapping label pools so the grounds intersect often.
        let g1 = random_graph(&mut r, 4, e1, "e");
        let g2 = random_graph(&mut r, 4, e2, if i % 3 == 0 { "e" } else { "f" });
        let m1 = Matroid::graphic(&g1);
        let m2 = Matroid::graphic(&g2);
        let brute = {
            let mut best = 0;
            for b1 in enumerate_bases(&m1) {
                for b2 in enumerate_bases(&m2) {
                    best = best.max(b1.union(&b2).count());
                }
            }
            best
        };
        assert_eq!(m1.union(&m2).full_rank(), brute, "union rank failed on case {i}");
        let (b1, b2) = union_max_distant(&m1, &m2);
        assert_eq!(b1.union(&b2).count(), brute, "maximally distant bases miss the optimum");
        assert!(m1.is_independent(&b1) && b1.len() == m1.full_rank());
        assert!(m2.is_independent(&b2) && b2.len() == m2.full_rank());
    }
    println!("[criterion 04] PASS matroid union equals brute force on {cases} graphic pairs");
}

#[test]
fn criterion_05_rigidity_equivalences() {
    let mut r = rng(505);
    // Derived split equivalence (asserted inside the call).
    let split_cases = 210;
    for _ in 0..split_cases {
        let w = label_group("w", r.random_range(1..=2));
        let t = label_group("t", r.random_range(1..=2));
        let v = label_group("v", r.random_range(1..=2));
        let wtv: Vec<Label> = w.iter().chain(&t).chain(&v).cloned().collect();
        let v_wtv = random_space(&mut r, &wtv, 4);
        let v_t = random_space(&mut r, &t, 2);
        let v_v = random_space(&mut r, &v, 2);
        derived_rigidity_split(&v_wtv, &v_t, &v_v).unwrap();
    }
    // Pair rigid iff dual pair rigid.
    let dual_cases = 210;
    for _ in 0..dual_cases {
        let pair = random_pair(&mut r);
        let primal = pair_rigid_spaces(&pair.v_sp, &pair.v_pq);
        let dual =
            pair_rigid_spaces(&pair.v_sp.orthocomplement(), &pair.v_pq.orthocomplement());
        assert_eq!(primal.rigid, dual.rigid, "dual pair rigidity diverged");
    }
    // Recursive family verdict equals the direct one on random associative
    // families with a connected family graph.
    let family_cases = 110;
    let mut used_partitions = 0usize;
    for _ in 0..family_cases {
        let members = r.random_range(3..=5usize);
        // Chain-shaped sharing keeps the family graph connected; each
        // member also gets private columns.
        let mut spaces = Vec::new();
        for i in 0..members {
            let mut cols = label_group(&format!("m{i}x"), r.random_range(1..=2));
            if i > 0 {
                cols.push(lab(&format!("share{}", i - 1)));
            }
            if i + 1 < members {
                cols.push(lab(&format!("share{i}")));
            }
            spaces.push(random_space(&mut r, &cols, 3));
        }
        let family = AssocFamily::of_spaces(spaces).unwrap();
        let direct = family_rigid(&family);
        // A random contiguous partition.
        let mut partition: Vec<Vec<usize>> = Vec::new();
        let mut block = Vec::new();
        for i in 0..members {
            block.push(i);
            if r.random_range(0..2) == 0 || i == members - 1 {
                partition.push(std::mem::take(&mut block));
            }
        }
        used_partitions += partition.len();
        let recursive = family_rigid_recursive(&family, &partition);
        assert!(!recursive.used_fallback, "chain families are connected");
        assert_eq!(recursive.rigid, direct.rigid, "recursive family verdict diverged");
    }
    println!(
        "[criterion 05] PASS rigidity equivalences: {split_cases} splits, {dual_cases} dual pairs, {family_cases} families ({used_partitions} blocks)"
    );
}

/// A random multiport passing the sufficiency conditions by construction:
/// voltage-like branches on a spanning tree, current-like branches on the
/// cotree, parameters distinct primes.
fn random_sufficient_multiport(r: &mut ChaCha8Rng) -> Multiport {
    loop {
        let n_v = r.random_range(3..=5usize);
        let extra = r.random_range(1..=4usize);
        let (graph, tree, cotree) = random_tree_graph(r, n_v, extra);

        #[derive(Clone, Copy, PartialEq)]
        enum Slot {
            Source,
            Resistor,
            Port,
            Output,
            Control,
        }
        let assign = |r: &mut ChaCha8Rng, edges: &[Label]| -> Vec<(Label, Slot)> {
            edges
                .iter()
                .map(|e| {
                    let slot = *[
                        Slot::Source,
                        Slot::Resistor,
                        Slot::Resistor,
                        Slot::Port,
                        Slot::Output,
                        Slot::Control,
                    ]
                    .choose(r)
                    .unwrap();
                    (e.clone(), slot)
                })
                .collect()
        };
        let tree_slots = assign(r, &tree);
        let cotree_slots = assign(r, &cotree);

        let mut primes = rigidport::ratio::primes(32).into_iter();
        let mut next_prime = || Q::from(num::BigInt::from(primes.next().unwrap()));

        let mut devices: Vec<DeviceSpec> = Vec::new();
        let mut ports: BTreeSet<Label> = BTreeSet::new();
        let mut outputs: Vec<(Label, bool)> = Vec::new(); // (edge, in_tree)
        let mut controls: Vec<(Label, bool)> = Vec::new();
        for (edge, slot) in tree_slots.iter().chain(&cotree_slots) {
            let in_tree = tree.contains(edge);
            match slot {
                Slot::Source if in_tree => {
                    devices.push(DeviceSpec::VSource { edge: edge.clone(), volts: rand_q(r) })
                }
                Slot::Source => {
                    devices.push(DeviceSpec::ISource { edge: edge.clone(), amps: rand_q(r) })
                }
                Slot::Resistor => {
                    devices.push(DeviceSpec::Resistor { edge: edge.clone(), ohms: next_prime() })
                }
                Slot::Port => {
                    ports.insert(edge.clone());
                }
                Slot::Output => outputs.push((edge.clone(), in_tree)),
                Slot::Control => controls.push((edge.clone(), in_tree)),
            }
        }
        // Pair outputs with controls; excess becomes resistors.
        let pairs = outputs.len().min(controls.len());
        for i in 0..pairs {
            let (out, out_tree) = outputs[i].clone();
            let (ctl, ctl_tree) = controls[i].clone();
            let value = next_prime();
            devices.push(match (ctl_tree, out_tree) {
                (true, true) => {
                    DeviceSpec::Ccvs { control: ctl, output: out, transresistance: value }
                }
                (true, false) => DeviceSpec::Cccs { control: ctl, output: out, gain: value },
                (false, true) => DeviceSpec::Vcvs { control: ctl, output: out, gain: value },
                (false, false) => {
                    DeviceSpec::Vccs { control: ctl, output: out, transconductance: value }
                }
            });
        }
        for (edge, _) in outputs.into_iter().skip(pairs) {
            devices.push(DeviceSpec::Resistor { edge, ohms: next_prime() });
        }
        for (edge, _) in controls.into_iter().skip(pairs) {
            devices.push(DeviceSpec::Resistor { edge, ohms: next_prime() });
        }
        if ports.is_empty() {
            continue;
        }
        let n = Multiport::new(graph, ports, devices).expect("constructed to be valid");
        if n.sufficiency_check().pass {
            return n;
        }
    }
}

/// Replace source values with fresh random ones.
fn with_random_sources(n: &Multiport, r: &mut ChaCha8Rng) -> Multiport {
    let devices = n
        .devices()
        .iter()
        .map(|d| match d {
            DeviceSpec::VSource { edge, .. } => {
                DeviceSpec::VSource { edge: edge.clone(), volts: rand_q(r) }
            }
            DeviceSpec::ISource { edge, .. } => {
                DeviceSpec::ISource { edge: edge.clone(), amps: rand_q(r) }
            }
            other => other.clone(),
        })
        .collect();
    Multiport::new(n.graph().clone(), n.ports().clone(), devices).expect("same structure")
}

#[test]
fn criterion_06_circuit_rigidity_end_to_end() {
    let mut r = rng(606);
    let cases = 50;
    let mut solves = 0usize;
    for _ in 0..cases {
        let n = random_sufficient_multiport(&mut r);
        // (c) Hybrid reconstruction equals the behaviour (asserted inside).
        let h = n.hybrid_rep().expect("sufficient multiports have hybrid representations");
        // (b) Behaviour translate rank equals the port count.
        let behaviour = n.port_behaviour().expect("rigid multiports are consistent");
        assert_eq!(behaviour.rank(), n.ports().len(), "behaviour rank != |P|");
        // (a) Unique solve for 10 random source vectors.
        for _ in 0..10 {
            let varied = with_random_sources(&n, &mut r);
            let mut assignment = PortAssignment::new();
            for p in &h.voltage_ports {
                assignment.insert(p.clone(), PortVar::Voltage(rand_q(&mut r)));
            }
            for p in &h.current_ports {
                assignment.insert(p.clone(), PortVar::Current(rand_q(&mut r)));
            }
            match varied.solve(&assignment).expect("valid assignment") {
                Solution::Unique(_) => solves += 1,
                other => panic!("expected unique solution, got {other:?}"),
            }
        }
        // (d) Matroidal rigidity with a covering disjoint-base witness.
        match n.matroidal_rigidity() {
            MatroidalRigidity::Rigid { topology_base, device_base } => {
                assert!(topology_base.is_disjoint(&device_base));
                let device_cols: BTreeSet<Label> = n
                    .internal_edges()
                    .iter()
                    .flat_map(|e| [e.primed(), e.doubled()])
                    .collect();
                assert!(
                    device_cols.iter().all(|l| topology_base.contains(l) || device_base.contains(l)),
                    "witness does not cover the device columns"
                );
            }
            other => panic!("sufficient multiport not matroid-rigid: {other:?}"),
        }
    }
    println!(
        "[criterion 06] PASS end-to-end rigidity on {cases} generated multiports ({solves} unique solves)"
    );
}

#[test]
fn criterion_07_necessity_violations_break_solvability() {
    // Parallel voltage sources: loop of E edges. The witness directs the
    // breaking source assignment.
    let parallel = Multiport::new(
        Graph::new(vec![
            (lab("e1"), "1".into(), "2".into()),
            (lab("e2"), "1".into(), "2".into()),
        ])
        .unwrap(),
        BTreeSet::new(),
        vec![
            DeviceSpec::VSource { edge: lab("e1"), volts: q(0) },
            DeviceSpec::VSource { edge: lab("e2"), volts: q(0) },
        ],
    )
    .unwrap();
    let check = parallel.necessity_check();
    assert!(!check.pass);
    let cycle = check.loop_witness.expect("loop witness");
    // Assign 1 to the first source edge in the witness loop, 0 elsewhere.
    let broken = Multiport::new(
        parallel.graph().clone(),
        BTreeSet::new(),
        vec![
            DeviceSpec::VSource { edge: lab("e1"), volts: q(if cycle.contains(&lab("e1")) { 1 } else { 0 }) },
            DeviceSpec::VSource { edge: lab("e2"), volts: q(0) },
        ],
    )
    .unwrap();
    match broken.solve(&PortAssignment::new()).unwrap() {
        Solution::Inconsistent { .. } => {}
        other => panic!("expected inconsistency, got {other:?}"),
    }
    // And with equal sources the deficiency shows as non-uniqueness.
    match parallel.solve(&PortAssignment::new()).unwrap() {
        Solution::Underdetermined { .. } => {}
        other => panic!("expected underdetermined, got {other:?}"),
    }

    // A current source covering a cutset.
    let isource = Multiport::new(
        Graph::new(vec![
            (lab("j"), "1".into(), "2".into()),
            (lab("r"), "2".into(), "3".into()),
        ])
        .unwrap(),
        BTreeSet::new(),
        vec![
            DeviceSpec::ISource { edge: lab("j"), amps: q(0) },
            DeviceSpec::Resistor { edge: lab("r"), ohms: q(2) },
        ],
    )
    .unwrap();
    let check = isource.necessity_check();
    assert!(!check.pass);
    let cut = check.cutset_witness.expect("cutset witness");
    assert!(cut.contains(&lab("j")));
    let broken = Multiport::new(
        isource.graph().clone(),
        BTreeSet::new(),
        vec![
            DeviceSpec::ISource { edge: lab("j"), amps: q(1) },
            DeviceSpec::Resistor { edge: lab("r"), ohms: q(2) },
        ],
    )
    .unwrap();
    match broken.solve(&PortAssignment::new()).unwrap() {
        Solution::Inconsistent { .. } => {}
        other => panic!("expected inconsistency, got {other:?}"),
    }
    println!("[criterion 07] PASS necessity violations yield inconsistent or underdetermined solves");
}

#[test]
fn criterion_08_non_necessity_witness() {
    // The control/output-parallel CCVS: sufficiency fails, yet the network
    // has the unique all-zero solution.
    let n = Multiport::new(
        Graph::new(vec![
            (lab("c"), "1".into(), "2".into()),
            (lab("z"), "1".into(), "2".into()),
        ])
        .unwrap(),
        BTreeSet::new(),
        vec![DeviceSpec::Ccvs { control: lab("c"), output: lab("z"), transresistance: q(5) }],
    )
    .unwrap();
    assert!(!n.sufficiency_check().pass, "the fixture must fail sufficiency");
    match n.solve(&PortAssignment::new()).unwrap() {
        Solution::Unique(values) => {
            assert!(values.values().all(Zero::is_zero), "solution must be all-zero")
        }
        other => panic!("expected the unique zero solution, got {other:?}"),
    }
    println!("[criterion 08] PASS sufficiency is not necessary: parallel CCVS solves uniquely");
}

/// A resistor network with one source and deliberately redundant ports.
fn random_redundant_port_multiport(r: &mut ChaCha8Rng) -> Multiport {
    let n_v = r.random_range(3..=4usize);
    let extra = r.random_range(0..=2);
    let (graph0, tree, cotree) = random_tree_graph(r, n_v, extra);
    let mut list: Vec<(Label, String, String)> = graph0
        .edges()
        .iter()
        .map(|e| (e.label.clone(), e.tail.clone(), e.head.clone()))
        .collect();
    // Redundant ports: several edges across a small set of vertex pairs.
    let n_ports = r.random_range(2..=4usize);
    let mut ports = BTreeSet::new();
    for i in 0..n_ports {
        let a = r.random_range(0..n_v.min(2) + 1);
        let b = (a + 1 + r.random_range(0..2)) % n_v;
        if a == b {
            continue;
        }
        let label = lab(&format!("p{i}"));
        ports.insert(label.clone());
        list.push((label, format!("v{a}"), format!("v{b}")));
    }
    if ports.is_empty() {
        let label = lab("p0");
        ports.insert(label.clone());
        list.push((label, "v0".into(), "v1".into()));
    }
    let mut primes = rigidport::ratio::primes(16).into_iter();
    let mut devices: Vec<DeviceSpec> = Vec::new();
    for (i, t) in tree.iter().enumerate() {
        if i == 0 {
            devices.push(DeviceSpec::VSource { edge: t.clone(), volts: rand_q(r) });
        } else {
            devices.push(DeviceSpec::Resistor {
                edge: t.clone(),
                ohms: Q::from(num::BigInt::from(primes.next().unwrap())),
            });
        }
    }
    for c in &cotree {
        devices.push(DeviceSpec::Resistor {
            edge: c.clone(),
            ohms: Q::from(num::BigInt::from(primes.next().unwrap())),
        });
    }
    Multiport::new(Graph::new(list).unwrap(), ports, devices).unwrap()
}

#[test]
fn criterion_09_port_minimization() {
    let mut r = rng(909);
    let cases = 50;
    let mut reduced_total = 0usize;
    for i in 0..cases {
        let n = random_redundant_port_multiport(&mut r);
        let internal = n.internal_edges();
        let v = n.graph().kvl_space();
        let bound =
            v.restrict(&internal).unwrap().rank() - v.contract(&internal).unwrap().rank();

        // Graph algorithm: bound attained, minors preserved.
        let data = graph_port_minimize(n.graph(), &internal).unwrap();
        assert_eq!(data.new_ports.len(), bound, "lower bound missed on case {i}");
        assert!(data.preserves_internal_minors(), "minor preservation failed on case {i}");
        reduced_total += n.ports().len() - data.new_ports.len();

        // Lift of the minimized behaviour equals the direct behaviour.
        let (minimized, data) = minimize_multiport(&n).unwrap();
        let direct = n.port_behaviour().expect("consistent fixture");
        let lifted =
            lift_behaviour(&minimized.port_behaviour().expect("consistent"), &data).unwrap();
        assert_eq!(lifted, direct, "behaviour lift mismatch on case {i}");

        // Matrix algorithm agrees with the graph algorithm as a port
        // transformation.
        let by_matrix = port_reduce_matrix(&v, &internal).unwrap();
        let by_graph = data.minimized.kvl_space();
        assert_eq!(
            by_matrix.columns().len(),
            by_graph.columns().len(),
            "minimal port counts differ on case {i}"
        );
        assert!(
            is_port_transformation(&by_matrix, &by_graph, &internal).unwrap(),
            "matrix and graph minimizers disagree on case {i}"
        );
    }
    println!(
        "[criterion 09] PASS port minimization on {cases} fixtures ({reduced_total} redundant ports removed)"
    );
}

#[test]
fn criterion_10_dirac() {
    let mut r = rng(1010);
    // Topological spaces are Dirac for every graph.
    let graph_cases = 40;
    for _ in 0..graph_cases {
        let edges = r.random_range(1..=8usize);
        let g = random_graph(&mut r, 4, edges, "e");
        let n = Multiport::new(g.clone(), g.edge_labels(), vec![]).unwrap();
        assert!(dirac_check(&n.topo_space()), "topological space not Dirac");
    }

    // Matched composition with Dirac devices stays Dirac, and the
    // purslow2 sufficiency conditions imply rigidity of the assembled
    // generalized multiport.
    let mut fixtures = 0usize;
    for k in [q(2), q(3), qr(5, 2)] {
        for transformer in [false, true] {
            let g = Graph::new(vec![
                (lab("e"), "1".into(), "2".into()),
                (lab("p"), "1".into(), "3".into()),
                (lab("r"), "2".into(), "3".into()),
                (lab("s1"), "3".into(), "4".into()),
                (lab("s2"), "4".into(), "1".into()),
            ])
            .unwrap();
            let all_ports = g.edge_labels();
            let open = Multiport::new(g, all_ports, vec![]).unwrap();
            let d = if transformer {
                ideal_transformer(&lab("s1"), &lab("s2"), &k)
            } else {
                gyrator(&lab("s1"), &lab("s2"), &k)
            };
            assert!(dirac_check(&d));
            let v1 = open.topo_space().matched(&d);
            assert!(dirac_check(&v1), "composition lost the Dirac property");
            let devices = vec![
                DeviceSpec::VSource { edge: lab("e"), volts: q(6) },
                DeviceSpec::Resistor { edge: lab("r"), ohms: q(13) },
            ];
            let report = purslow2_check(&v1, &devices).unwrap();
            assert!(report.necessity);
            if report.sufficient {
                let assembled = GeneralizedMultiport::new(v1, device_space(&devices));
                assert!(assembled.is_rigid().rigid, "sufficient fixture not rigid");
                fixtures += 1;
            }
        }
    }
    assert!(fixtures >= 4, "expected most Dirac fixtures to pass sufficiency");
    println!(
        "[criterion 10] PASS Dirac checks on {graph_cases} graphs and {fixtures} gyrator/transformer fixtures"
    );
}

#[test]
fn criterion_11_report_determinism() {
    let dir = std::path::PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    let mut checked = 0usize;
    for entry in std::fs::read_dir(&dir).expect("fixtures directory") {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("net") {
            continue;
        }
        let text = std::fs::read_to_string(&path).unwrap();
        let render = |text: &str| -> String {
            let netlist = Netlist::parse(text).unwrap();
            let n = netlist.multiport().unwrap();
            let report = rigidport::report::rigidity_report(&netlist, &n);
            serde_json::to_string_pretty(&report).unwrap()
        };
        assert_eq!(render(&text), render(&text), "nondeterministic report for {path:?}");
        // Round-trip through emit keeps the model identical.
        let netlist = Netlist::parse(&text).unwrap();
        let reparsed = Netlist::parse(&netlist.emit()).unwrap();
        assert_eq!(netlist.devices, reparsed.devices);
        assert_eq!(netlist.ports, reparsed.ports);
        checked += 1;
    }
    assert!(checked >= 8, "expected the shipped fixture set");
    println!("[criterion 11] PASS deterministic reports for {checked} fixture netlists");
}

/// Cross-check of the behaviour against direct solves: points produced by
/// the exact solver lie in the behaviour space (supports criterion 6).
#[test]
fn behaviour_agrees_with_direct_solve_points() {
    let mut r = rng(42);
    for _ in 0..10 {
        let n = random_sufficient_multiport(&mut r);
        let h = n.hybrid_rep().unwrap();
        let behaviour = n.port_behaviour().unwrap();
        let mut assignment = PortAssignment::new();
        for p in &h.voltage_ports {
            assignment.insert(p.clone(), PortVar::Voltage(rand_q(&mut r)));
        }
        for p in &h.current_ports {
            assignment.insert(p.clone(), PortVar::Current(rand_q(&mut r)));
        }
        let values = match n.solve(&assignment).unwrap() {
            Solution::Unique(v) => v,
            other => panic!("{other:?}"),
        };
        let point: Vec<Q> = behaviour
            .columns()
            .iter()
            .map(|l| values[l].clone())
            .collect();
        assert!(behaviour.contains(&point), "solve point escapes the behaviour");
    }
    // Affine composition agrees with a hand solve on a divider driven
    // through its port.
    let n = Multiport::new(
        Graph::new(vec![
            (lab("p"), "1".into(), "3".into()),
            (lab("r1"), "1".into(), "2".into()),
            (lab("r2"), "2".into(), "3".into()),
        ])
        .unwrap(),
        [lab("p")].into(),
        vec![
            DeviceSpec::Resistor { edge: lab("r1"), ohms: q(1) },
            DeviceSpec::Resistor { edge: lab("r2"), ohms: q(2) },
        ],
    )
    .unwrap();
    let behaviour = affine_matched(
        &AffineSpace::from_space(n.topo_space()),
        &n.device_space(),
    )
    .unwrap();
    assert_eq!(behaviour, n.port_behaviour().unwrap());
}

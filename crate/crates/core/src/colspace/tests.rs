use std::collections::BTreeSet;

use num::Zero;

use super::*;
use crate::label::Label;
use crate::ratio::q;

fn l(name: &str) -> Label {
    Label::plain(name)
}

fn set(names: &[&str]) -> BTreeSet<Label> {
    names.iter().map(|n| n.parse().unwrap()).collect()
}

fn space(labels: &[&str], rows: &[&[i64]]) -> VectorSpace {
    let labels: Vec<Label> = labels.iter().map(|n| n.parse().unwrap()).collect();
    let rows = rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
    VectorSpace::from_rows(&labels, rows).unwrap()
}

/// KVL space of the triangle 1 --e1--> 2 --e2--> 3 <--e3-- 1,
/// via node potentials: v_e = φ(tail) − φ(head).
fn triangle_kvl() -> VectorSpace {
    space(
        &["e1", "e2", "e3"],
        &[&[1, 0, 1], &[-1, 1, 0], &[0, -1, -1]],
    )
}

#[test]
fn from_rows_collapses_dependent_rows() {
    let v = space(&["a", "b"], &[&[1, 1], &[2, 2]]);
    assert_eq!(v.rank(), 1);
    assert_eq!(v.basis(), &[vec![q(1), q(1)]]);
}

#[test]
fn from_rows_empty_gives_zero_space() {
    let v = VectorSpace::from_rows(&[l("a")], vec![]).unwrap();
    assert_eq!(v, VectorSpace::zero([l("a")]));
    assert_eq!(v.rank(), 0);
}

#[test]
fn from_rows_hand_elimination() {
    let v = space(&["a", "b", "c"], &[&[1, 0, 1], &[0, 1, 1], &[1, 1, 2]]);
    assert_eq!(v.rank(), 2);
    assert_eq!(v.basis(), &[vec![q(1), q(0), q(1)], vec![q(0), q(1), q(1)]]);
}

#[test]
fn from_rows_rejects_bad_input() {
    assert!(matches!(
        VectorSpace::from_rows(&[l("a"), l("b")], vec![vec![q(1)]]),
        Err(ColError::WidthMismatch { .. })
    ));
    assert!(matches!(
        VectorSpace::from_rows(&[l("a"), l("a")], vec![]),
        Err(ColError::DuplicateLabel(_))
    ));
}

#[test]
fn canonical_form_ignores_input_column_order() {
    let a = VectorSpace::from_rows(&[l("b"), l("a")], vec![vec![q(2), q(1)]]).unwrap();
    let b = VectorSpace::from_rows(&[l("a"), l("b")], vec![vec![q(1), q(2)]]).unwrap();
    assert_eq!(a, b);
}

#[test]
fn rank_examples() {
    assert_eq!(VectorSpace::full([l("a"), l("b")]).rank(), 2);
    assert_eq!(VectorSpace::zero([l("a"), l("b")]).rank(), 0);
    assert_eq!(space(&["a", "b"], &[&[1, 1]]).rank(), 1);
}

#[test]
fn restrict_examples() {
    let diag = space(&["a", "b"], &[&[1, 1]]);
    assert_eq!(diag.restrict(&set(&["a"])).unwrap(), VectorSpace::full([l("a")]));
    assert_eq!(diag.restrict(&diag.column_set()).unwrap(), diag);
    let tri = triangle_kvl();
    assert_eq!(tri.rank(), 2);
    assert_eq!(
        tri.restrict(&set(&["e1", "e2"])).unwrap(),
        VectorSpace::full([l("e1"), l("e2")])
    );
    assert!(matches!(diag.restrict(&set(&["z"])), Err(ColError::UnknownColumn(_))));
}

#[test]
fn contract_examples() {
    let diag = space(&["a", "b"], &[&[1, 1]]);
    assert_eq!(diag.contract(&set(&["a"])).unwrap(), VectorSpace::zero([l("a")]));
    assert_eq!(diag.contract(&diag.column_set()).unwrap(), diag);
    let tri = triangle_kvl();
    let contracted = tri.contract(&set(&["e1", "e2"])).unwrap();
    assert_eq!(contracted, space(&["e1", "e2"], &[&[1, -1]]));
}

#[test]
fn orthocomplement_examples() {
    let full = VectorSpace::full([l("a"), l("b")]);
    assert_eq!(full.orthocomplement(), VectorSpace::zero([l("a"), l("b")]));
    assert_eq!(space(&["a", "b"], &[&[1, 1]]).orthocomplement(), space(&["a", "b"], &[&[1, -1]]));
}

#[test]
fn orthocomplement_of_standard_form_swaps_blocks() {
    // (I | K) and (-Kᵀ | I) represent complementary orthogonal spaces.
    let v = space(&["a", "b", "x", "y"], &[&[1, 0, 2, 3], &[0, 1, 4, 5]]);
    let w = space(&["a", "b", "x", "y"], &[&[-2, -4, 1, 0], &[-3, -5, 0, 1]]);
    assert_eq!(v.orthocomplement(), w);
    assert_eq!(v.orthocomplement().orthocomplement(), v);
    assert_eq!(v.rank() + w.rank(), 4);
}

#[test]
fn sum_and_intersect_examples() {
    let v2 = space(&["b", "c"], &[&[1, 2]]);
    let padded = VectorSpace::from_rows(
        &[l("a"), l("b"), l("c")],
        vec![vec![q(0), q(1), q(2)]],
    )
    .unwrap();
    assert_eq!(VectorSpace::zero([l("a")]).sum(&v2), padded);

    let v_on_a = space(&["a", "b"], &[&[1, 3]]);
    assert_eq!(VectorSpace::full([l("a"), l("b")]).intersect(&v_on_a), v_on_a);

    let e1 = space(&["a", "b"], &[&[1, 0]]);
    let e2 = space(&["a", "b"], &[&[0, 1]]);
    assert_eq!(e1.sum(&e2), VectorSpace::full([l("a"), l("b")]));
    assert_eq!(e1.intersect(&e2), VectorSpace::zero([l("a"), l("b")]));
}

#[test]
fn matched_with_full_and_zero_ports() {
    let v = space(&["s", "p"], &[&[1, 2]]);
    assert_eq!(v.matched(&VectorSpace::full([l("p")])), v.restrict(&set(&["s"])).unwrap());
    assert_eq!(v.matched(&VectorSpace::zero([l("p")])), v.contract(&set(&["s"])).unwrap());
}

#[test]
fn matched_rank_formula_on_fixed_instance() {
    let v_sp = space(&["s1", "s2", "p1", "p2"], &[&[1, 0, 1, 0], &[0, 1, 0, 1]]);
    let v_pq = space(&["p1", "p2", "q1"], &[&[1, 1, 0], &[0, 1, 2]]);
    let shared = set(&["p1", "p2"]);
    let lhs = v_sp.matched(&v_pq).rank();
    let s_only = set(&["s1", "s2"]);
    let q_only = set(&["q1"]);
    let rhs = v_sp.contract(&s_only).unwrap().rank()
        + v_pq.contract(&q_only).unwrap().rank()
        + v_sp
            .restrict(&shared)
            .unwrap()
            .intersect(&v_pq.restrict(&shared).unwrap())
            .rank()
        - v_sp
            .contract(&shared)
            .unwrap()
            .intersect(&v_pq.contract(&shared).unwrap())
            .rank();
    assert_eq!(lhs, rhs);
}

#[test]
fn affine_matched_of_homogeneous_spaces_is_matched_of_translates() {
    let v_sp = space(&["s", "p"], &[&[1, 1]]);
    let v_pq = space(&["p", "q"], &[&[1, -1]]);
    let out = affine_matched(&AffineSpace::from_space(v_sp.clone()), &AffineSpace::from_space(v_pq.clone()))
        .unwrap();
    assert!(out.offset().iter().all(Zero::is_zero));
    assert_eq!(out.translate(), &v_sp.matched(&v_pq));
}

#[test]
fn affine_matched_void_on_incompatible_offsets() {
    // A_SP: offset 1 on p, translate F_s ⊕ 0_p; A_P: the origin on p.
    // Offsets are given in sorted column order, here [p, s].
    let translate = space(&["s", "p"], &[&[1, 0]]);
    let a_sp = AffineSpace::new(vec![q(1), q(0)], translate);
    let a_p = AffineSpace::singleton(&[l("p")], vec![q(0)]).unwrap();
    assert_eq!(affine_matched(&a_sp, &a_p), None);
}

#[test]
fn affine_offset_is_canonicalized() {
    // Offsets differing by a translate member collapse to one value.
    let translate = space(&["a", "b"], &[&[1, 1]]);
    let x = AffineSpace::new(vec![q(2), q(3)], translate.clone());
    let y = AffineSpace::new(vec![q(0), q(1)], translate.clone());
    assert_eq!(x, y);
    assert!(x.offset()[0].is_zero());
    assert!(x.contains(&[q(2), q(3)]));
    let z = AffineSpace::new(vec![q(0), q(2)], translate);
    assert_ne!(x, z);
}

#[test]
fn independence_and_base_extension() {
    let full = VectorSpace::full([l("a"), l("b"), l("c")]);
    assert!(full.is_independent(&set(&["a", "b", "c"])).unwrap());

    let diag = space(&["a", "b"], &[&[1, 1]]);
    assert!(!diag.is_independent(&set(&["a", "b"])).unwrap());
    assert!(diag.is_independent(&set(&["a"])).unwrap());

    let tri = triangle_kvl();
    let base = tri.base_extension(&set(&["e1"]), &set(&["e2"])).unwrap();
    assert_eq!(base, set(&["e1", "e3"]));
}

#[test]
fn base_extension_error_witnesses() {
    let tri = triangle_kvl();
    // All three edges form a circuit.
    let err = tri.base_extension(&set(&["e1", "e2", "e3"]), &BTreeSet::new()).unwrap_err();
    assert_eq!(err, ColError::DependentInclude(set(&["e1", "e2", "e3"])));
    // Avoiding two edges of the triangle leaves no 2-edge base.
    let err = tri.base_extension(&BTreeSet::new(), &set(&["e1", "e2"])).unwrap_err();
    match err {
        ColError::AvoidCoversCocircuit(support) => {
            assert!(support.is_subset(&set(&["e1", "e2"])));
            assert!(!support.is_empty());
        }
        other => panic!("unexpected error {other:?}"),
    }
}

#[test]
fn implicit_inverse_degenerate_and_failing_cases() {
    let v_sp = space(&["s", "p"], &[&[1, 2]]);
    let v_s = v_sp.restrict(&set(&["s"])).unwrap();
    let report = implicit_inverse_check(&v_sp, &v_s);
    assert!(report.exists);
    assert!(report.candidate.is_some());

    let zero = VectorSpace::zero([l("s"), l("p")]);
    let full = VectorSpace::full([l("s"), l("q")]);
    let report = implicit_inverse_check(&zero, &full);
    assert!(!report.exists);
    assert!(!report.restriction_ok);
}

#[test]
fn implicit_inverse_round_trip_recovers_operand() {
    // Build V_PQ between the minors of V_SP so the inversion is unique.
    let v_sp = space(
        &["s1", "s2", "p1", "p2"],
        &[&[1, 0, 1, 1], &[0, 1, 1, -1]],
    );
    let p = set(&["p1", "p2"]);
    let v_pq = {
        let upper = v_sp.restrict(&p).unwrap(); // V_SP ∘ P = F here
        let w = space(&["p1", "p2", "q1"], &[&[1, 1, 1]]);
        let within = w.intersect(&upper.direct_sum(&VectorSpace::full([l("q1")])).unwrap());
        let lower = v_sp.contract(&p).unwrap().direct_sum(&VectorSpace::zero([l("q1")])).unwrap();
        within.sum(&lower)
    };
    let v_sq = v_sp.matched(&v_pq);
    let report = implicit_inverse_check(&v_sp, &v_sq);
    assert!(report.exists);
    assert_eq!(report.candidate.unwrap(), v_pq);
}

#[test]
fn solution_set_and_singleton() {
    // x + y = 3 over {x, y}.
    let labels = [l("x"), l("y")];
    let a = AffineSpace::solution_set(&labels, vec![vec![q(1), q(1)]], vec![q(3)]).unwrap();
    assert_eq!(a.rank(), 1);
    assert!(a.contains(&[q(1), q(2)]));
    assert!(!a.contains(&[q(1), q(1)]));
    // Inconsistent system.
    assert!(AffineSpace::solution_set(
        &labels,
        vec![vec![q(1), q(1)], vec![q(1), q(1)]],
        vec![q(0), q(1)]
    )
    .is_none());
}

#[test]
fn assoc_family_rejects_oversharing() {
    let a = AffineSpace::from_space(space(&["x", "y"], &[&[1, 1]]));
    let b = AffineSpace::from_space(space(&["x", "z"], &[&[1, 1]]));
    let c = AffineSpace::from_space(space(&["x", "w"], &[&[1, 1]]));
    assert!(AssocFamily::new(vec![a.clone(), b.clone()]).is_ok());
    assert_eq!(
        AssocFamily::new(vec![a, b, c]).unwrap_err(),
        FamilyError::OverSharedLabel(l("x"))
    );
}

#[test]
fn assoc_family_accepts_paper_incidence_structure() {
    // Column ownership pattern with sets {e1,e3,e5,e7}, {e3,e5,e7}, {e9},
    // {e2,e4,e6,e8}, {e2,e4,e8} and an empty set: every column in at most
    // two sets.
    let groups: Vec<Vec<&str>> = vec![
        vec!["e1", "e3", "e5", "e7"],
        vec!["e3", "e5", "e7"],
        vec!["e9"],
        vec!["e2", "e4", "e6", "e8"],
        vec!["e2", "e4", "e8"],
        vec![],
    ];
    let members: Vec<AffineSpace> = groups
        .iter()
        .map(|g| AffineSpace::from_space(VectorSpace::full(g.iter().map(|n| l(n)))))
        .collect();
    assert!(AssocFamily::new(members).is_ok());
}

#[test]
fn family_matched_agrees_with_pairwise() {
    let a = space(&["x", "y"], &[&[1, 2]]);
    let b = space(&["y", "z"], &[&[1, 1]]);
    let fam = AssocFamily::of_spaces(vec![a.clone(), b.clone()]).unwrap();
    assert_eq!(fam.matched().unwrap().translate(), &a.matched(&b));
    assert_eq!(fam.skewed().unwrap().translate(), &a.skewed(&b));
}

#[test]
fn text_round_trip() {
    let v = space(&["a", "b", "c"], &[&[1, 0, 1], &[0, 1, 1]]);
    assert_eq!(VectorSpace::parse_text(&v.to_text()).unwrap(), v);
    let with_fractions = VectorSpace::from_rows(
        &[l("a"), l("b")],
        vec![vec![crate::ratio::qr(1, 2), q(1)]],
    )
    .unwrap();
    assert_eq!(VectorSpace::parse_text(&with_fractions.to_text()).unwrap(), with_fractions);
}

#[test]
fn dual_exchange_on_minor_fixed_instance() {
    let v = space(&["a", "b", "p"], &[&[1, 1, 0], &[0, 1, 1]]);
    let p = set(&["p"]);
    let s = set(&["a", "b"]);
    assert_eq!(v.orthocomplement().restrict(&p).unwrap(), v.contract(&p).unwrap().orthocomplement());
    assert_eq!(v.orthocomplement().contract(&s).unwrap(), v.restrict(&s).unwrap().orthocomplement());
}

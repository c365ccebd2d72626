//! Port transformation and minimization.
//!
//! Two multiports are port transformations of each other when their
//! solution spaces agree on the internal columns, both under restriction
//! and under contraction. The minimal number of ports achieving a given
//! internal view is `r(V∘S) − r(V×S)`; the matrix algorithm reaches the
//! bound for arbitrary spaces and the graph algorithm for graphic ones,
//! and the behaviour of the original multiport can be recovered exactly
//! from the behaviour of the minimized one.

use std::collections::BTreeSet;

use num::{One, Zero};
use thiserror::Error;

use crate::colspace::{AffineSpace, ColError, VectorSpace};
use crate::graph::{Forest, Graph};
use crate::label::Label;
use crate::multiport::{Multiport, ModelError};
use crate::ratio::Q;

#[derive(Debug, Error)]
pub enum PortXformError {
    #[error(transparent)]
    Columns(#[from] ColError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("the behaviour of the minimized multiport is void")]
    VoidBehaviour,
    #[error("`{0}` is not a port")]
    NotAPort(Label),
}

/// A representative matrix of `V_TR` arranged so that all four minors to
/// `T` and `R` are visible: the top rows span `V×T`, top plus middle span
/// `V∘T` on the T side, the bottom rows span `V×R`, and middle plus bottom
/// span `V∘R` on the R side.
#[derive(Debug, Clone)]
pub struct VisibleMinorForm {
    pub t_columns: Vec<Label>,
    pub r_columns: Vec<Label>,
    /// Rows spanning `V×T` (T entries; the R part is zero).
    pub b1t: Vec<Vec<Q>>,
    /// Middle rows, T part.
    pub b2t: Vec<Vec<Q>>,
    /// Middle rows, R part.
    pub b2r: Vec<Vec<Q>>,
    /// Rows spanning `V×R` (R entries; the T part is zero).
    pub b3r: Vec<Vec<Q>>,
}

/// Build the visible-minor representative matrix of `V` with respect to
/// the column split `T` / rest.
pub fn visible_minor_form(space: &VectorSpace, t: &BTreeSet<Label>) -> Result<VisibleMinorForm, ColError> {
    let r: BTreeSet<Label> = space.column_set().difference(t).cloned().collect();
    let t_columns: Vec<Label> = t.iter().cloned().collect();
    let r_columns: Vec<Label> = r.iter().cloned().collect();
    let t_idx: Vec<usize> = indices_of(space, &t_columns);
    let r_idx: Vec<usize> = indices_of(space, &r_columns);

    let cross_t = space.contract(t)?;
    let b1t: Vec<Vec<Q>> = cross_t.basis().to_vec();
    let cross_r = space.contract(&r)?;
    let b3r: Vec<Vec<Q>> = cross_r.basis().to_vec();
    let on_t = space.restrict(t)?;

    // Extend the V×T rows to a basis of V∘T by T-projections of the
    // canonical basis rows of V, keeping the chosen full-width rows.
    let mut span_rows: Vec<Vec<Q>> = b1t.clone();
    let mut b2t = Vec::new();
    let mut b2r = Vec::new();
    for row in space.basis() {
        if span_rows.len() == on_t.rank() {
            break;
        }
        let t_part: Vec<Q> = t_idx.iter().map(|&i| row[i].clone()).collect();
        span_rows.push(t_part.clone());
        if rank_of_rows(&span_rows) == span_rows.len() {
            b2t.push(t_part);
            b2r.push(r_idx.iter().map(|&i| row[i].clone()).collect());
        } else {
            span_rows.pop();
        }
    }

    let form = VisibleMinorForm { t_columns, r_columns, b1t, b2t, b2r, b3r };
    debug_assert_eq!(form.b2t.len(), on_t.rank() - cross_t.rank());
    debug_assert!(form.check_against(space));
    Ok(form)
}

impl VisibleMinorForm {
    /// Verify the four span identities against the original space.
    pub fn check_against(&self, space: &VectorSpace) -> bool {
        let t: BTreeSet<Label> = self.t_columns.iter().cloned().collect();
        let r: BTreeSet<Label> = self.r_columns.iter().cloned().collect();
        let stack = |a: &[Vec<Q>], b: &[Vec<Q>]| -> Vec<Vec<Q>> {
            a.iter().chain(b).cloned().collect()
        };
        let on_t = VectorSpace::from_rows(&self.t_columns, stack(&self.b1t, &self.b2t)).unwrap();
        let on_r = VectorSpace::from_rows(&self.r_columns, stack(&self.b2r, &self.b3r)).unwrap();
        let x_t = VectorSpace::from_rows(&self.t_columns, self.b1t.clone()).unwrap();
        let x_r = VectorSpace::from_rows(&self.r_columns, self.b3r.clone()).unwrap();
        x_t == space.contract(&t).unwrap()
            && x_r == space.contract(&r).unwrap()
            && on_t == space.restrict(&t).unwrap()
            && on_r == space.restrict(&r).unwrap()
    }
}

/// Minimize the port columns of `V_TR` with respect to the internal
/// columns `T`: the result lives on `T ∪ R̃` with
/// `|R̃| = r(V∘T) − r(V×T)` and has the same minors to `T`.
pub fn port_reduce_matrix(space: &VectorSpace, t: &BTreeSet<Label>) -> Result<VectorSpace, ColError> {
    let form = visible_minor_form(space, t)?;
    // A maximal independent subset of the middle block's R columns, by
    // label order.
    let middle = VectorSpace::from_rows(&form.r_columns, form.b2r.clone())?;
    let keep = middle.base_extension(&BTreeSet::new(), &BTreeSet::new())?;
    let keep_idx: Vec<usize> = form
        .r_columns
        .iter()
        .enumerate()
        .filter(|(_, l)| keep.contains(l))
        .map(|(i, _)| i)
        .collect();

    let mut labels = form.t_columns.clone();
    labels.extend(keep.iter().cloned());
    let mut rows = Vec::new();
    for row in &form.b1t {
        let mut out = row.clone();
        out.extend(std::iter::repeat_n(Q::zero(), keep.len()));
        rows.push(out);
    }
    for (t_part, r_part) in form.b2t.iter().zip(&form.b2r) {
        let mut out = t_part.clone();
        out.extend(keep_idx.iter().map(|&i| r_part[i].clone()));
        rows.push(out);
    }
    let reduced = VectorSpace::from_rows(&labels, rows)?;
    assert_eq!(reduced.restrict(t)?, space.restrict(t)?);
    assert_eq!(reduced.contract(t)?, space.contract(t)?);
    assert_eq!(keep.len(), space.restrict(t)?.rank() - space.contract(t)?.rank());
    Ok(reduced)
}

/// All data produced by the graph port-minimization algorithm.
#[derive(Debug, Clone)]
pub struct GraphMinimization {
    pub original: Graph,
    pub minimized: Graph,
    pub internal: BTreeSet<Label>,
    pub ports: BTreeSet<Label>,
    /// Forest of `G ∘ S`.
    pub t1: BTreeSet<Label>,
    /// Port edges completing `t1` to a forest of `G` (a forest of `G×P`).
    pub t2: BTreeSet<Label>,
    /// Forest of `G ∘ P` containing `t2`.
    pub t2_hat: BTreeSet<Label>,
    /// The minimized port set `P̃ = t̂₂ − t₂`.
    pub new_ports: BTreeSet<Label>,
}

/// Minimize the ports of `G_SP` with respect to the internal edges `S`,
/// optionally steering the forest choices: `prefer_in_t` edges are pulled
/// into the spanning forest of `G` first, `prefer_in_t2hat` into the
/// forest of `G∘P` first.
pub fn graph_port_minimize_with(
    graph: &Graph,
    internal: &BTreeSet<Label>,
    prefer_in_t: &[Label],
    prefer_in_t2hat: &[Label],
) -> Result<GraphMinimization, PortXformError> {
    let ports: BTreeSet<Label> = graph.edge_labels().difference(internal).cloned().collect();
    // t1: a maximal forest of G∘S.
    let only_internal = graph.minor(&ports, &BTreeSet::new()).expect("ports are edges");
    let t1: BTreeSet<Label> = only_internal.max_forest().edges().clone();
    // Grow t1 into a forest of G; the new edges t2 are all ports.
    let t = graph
        .constrained_forest(&t1, &BTreeSet::new(), prefer_in_t)
        .expect("a forest of a subgraph extends");
    let t2: BTreeSet<Label> = t.edges().difference(&t1).cloned().collect();
    debug_assert!(t2.iter().all(|l| ports.contains(l)));
    // Grow t2 into a forest of G∘P.
    let only_ports = graph.minor(internal, &BTreeSet::new()).expect("internal are edges");
    let t2_hat: BTreeSet<Label> = only_ports
        .constrained_forest(&t2, &BTreeSet::new(), prefer_in_t2hat)
        .expect("t2 is a forest of G∘P")
        .edges()
        .clone();
    let new_ports: BTreeSet<Label> = t2_hat.difference(&t2).cloned().collect();
    let delete: BTreeSet<Label> = ports.difference(&t2_hat).cloned().collect();
    let minimized = graph.minor(&delete, &t2).expect("disjoint edge sets");
    Ok(GraphMinimization {
        original: graph.clone(),
        minimized,
        internal: internal.clone(),
        ports,
        t1,
        t2,
        t2_hat,
        new_ports,
    })
}

/// Minimize with the default label-order forest choices.
pub fn graph_port_minimize(
    graph: &Graph,
    internal: &BTreeSet<Label>,
) -> Result<GraphMinimization, PortXformError> {
    graph_port_minimize_with(graph, internal, &[], &[])
}

impl GraphMinimization {
    /// Space-preservation identities on the internal columns.
    pub fn preserves_internal_minors(&self) -> bool {
        let v = self.original.kvl_space();
        let w = self.minimized.kvl_space();
        v.restrict(&self.internal).unwrap() == w.restrict(&self.internal).unwrap()
            && v.contract(&self.internal).unwrap() == w.contract(&self.internal).unwrap()
    }

    /// The minimized multiport with the same devices.
    pub fn minimized_multiport(&self, devices: Vec<crate::multiport::DeviceSpec>) -> Result<Multiport, ModelError> {
        Multiport::new(self.minimized.clone(), self.new_ports.clone(), devices)
    }
}

/// Minimize the ports of a multiport; returns the minimized multiport and
/// the minimization data needed to lift its behaviour back.
pub fn minimize_multiport(n: &Multiport) -> Result<(Multiport, GraphMinimization), PortXformError> {
    let data = graph_port_minimize(n.graph(), &n.internal_edges())?;
    let minimized = data.minimized_multiport(n.devices().to_vec())?;
    Ok((minimized, data))
}

/// The internal model `(K_B ∩ V_AB ∘ B) + V_AB × B` of a generalized
/// multiport: the part of the device characteristic recoverable from the
/// ports. `None` when the intersection is empty.
pub fn internal_model(v_ab: &VectorSpace, k_b: &AffineSpace) -> Result<Option<AffineSpace>, ColError> {
    let b = k_b.column_set();
    let on_b = v_ab.restrict(&b)?;
    let in_b = v_ab.contract(&b)?;
    Ok(k_b.intersect_space(&on_b).map(|a| a.plus_space(&in_b)))
}

/// Are `V_SP` and `V_SQ` port transformations of each other with respect
/// to the internal columns `S`? When they are, the linking space
/// `V_PQ := V_SP ↔ V_SQ` is constructed and the round trip
/// `V_SP ↔ V_PQ = V_SQ` verified (with the overlap of P and Q relabeled to
/// detached copies first).
pub fn is_port_transformation(
    v_sp: &VectorSpace,
    v_sq: &VectorSpace,
    s: &BTreeSet<Label>,
) -> Result<bool, ColError> {
    let same = v_sp.restrict(s)? == v_sq.restrict(s)? && v_sp.contract(s)? == v_sq.contract(s)?;
    if same {
        let p: BTreeSet<Label> = v_sp.column_set().difference(s).cloned().collect();
        let relabeled = v_sq.relabel(|l| if p.contains(l) { l.tilde() } else { l.clone() })?;
        let v_pq = v_sp.matched(&relabeled);
        assert_eq!(v_sp.matched(&v_pq), relabeled, "port transformation round trip failed");
    }
    Ok(same)
}

/// The block matrices of the behaviour lift, extracted from fundamental
/// cutset and circuit matrices of `G×P` and `G∘P` with the orthogonality
/// relations enforced.
struct LiftBlocks {
    t2: Vec<Label>,
    ptilde: Vec<Label>,
    outside: Vec<Label>,
    /// K_{t₂P̃}
    k_t2_pt: Vec<Vec<Q>>,
    /// K_{t₂(P−t̂₂)}
    k_t2_out: Vec<Vec<Q>>,
    /// K_{P̃(P−t̂₂)} = −M_{(P−t̂₂)P̃}ᵀ
    k_pt_out: Vec<Vec<Q>>,
    /// M_{P̃t₂} = −K_{t₂P̃}ᵀ
    m_pt_t2: Vec<Vec<Q>>,
    /// M_{(P−t̂₂)t₂}
    m_out_t2: Vec<Vec<Q>>,
    /// M_{(P−t̂₂)P̃}
    m_out_pt: Vec<Vec<Q>>,
}

fn lift_blocks(data: &GraphMinimization) -> LiftBlocks {
    let t2: Vec<Label> = data.t2.iter().cloned().collect();
    let ptilde: Vec<Label> = data.new_ports.iter().cloned().collect();
    let outside: Vec<Label> = data.ports.difference(&data.t2_hat).cloned().collect();

    // Fundamental cutsets of G×P with respect to the forest t₂.
    let contracted = data
        .original
        .minor(&BTreeSet::new(), &data.internal)
        .expect("internal edges exist");
    let t2_forest = forest_of(&data.t2);
    let mut k_t2_pt = Vec::new();
    let mut k_t2_out = Vec::new();
    for branch in &t2 {
        let row = contracted.fundamental_cutset(&t2_forest, branch);
        k_t2_pt.push(ptilde.iter().map(|l| row.get(l).cloned().unwrap_or_else(Q::zero)).collect());
        k_t2_out.push(outside.iter().map(|l| row.get(l).cloned().unwrap_or_else(Q::zero)).collect());
    }
    // Fundamental circuits of G∘P with respect to the forest t̂₂.
    let deleted = data
        .original
        .minor(&data.internal, &BTreeSet::new())
        .expect("internal edges exist");
    let t2_hat_forest = forest_of(&data.t2_hat);
    let mut m_out_t2 = Vec::new();
    let mut m_out_pt = Vec::new();
    for chord in &outside {
        let row = deleted.fundamental_circuit(&t2_hat_forest, chord);
        m_out_t2.push(t2.iter().map(|l| row.get(l).cloned().unwrap_or_else(Q::zero)).collect());
        m_out_pt.push(ptilde.iter().map(|l| row.get(l).cloned().unwrap_or_else(Q::zero)).collect());
    }
    let m_pt_t2 = negated_transpose(&k_t2_pt, ptilde.len());
    let k_pt_out = negated_transpose(&m_out_pt, ptilde.len());
    LiftBlocks { t2, ptilde, outside, k_t2_pt, k_t2_out, k_pt_out, m_pt_t2, m_out_t2, m_out_pt }
}

fn negated_transpose(m: &[Vec<Q>], cols: usize) -> Vec<Vec<Q>> {
    (0..cols)
        .map(|j| m.iter().map(|row| -row[j].clone()).collect())
        .collect()
}

fn forest_of(edges: &BTreeSet<Label>) -> Forest {
    Forest::from_edges(edges.clone())
}

/// JSON view of the block matrices used by the behaviour lift, with exact
/// rational entries.
pub fn lift_blocks_json(data: &GraphMinimization) -> serde_json::Value {
    let b = lift_blocks(data);
    let labels = |ls: &[Label]| -> Vec<String> { ls.iter().map(Label::to_string).collect() };
    let matrix = |m: &[Vec<Q>]| -> Vec<Vec<String>> {
        m.iter().map(|row| row.iter().map(crate::ratio::format_q).collect()).collect()
    };
    serde_json::json!({
        "t2": labels(&b.t2),
        "new_ports": labels(&b.ptilde),
        "deleted_ports": labels(&b.outside),
        "k_t2_new": matrix(&b.k_t2_pt),
        "k_t2_deleted": matrix(&b.k_t2_out),
        "k_new_deleted": matrix(&b.k_pt_out),
        "m_new_t2": matrix(&b.m_pt_t2),
        "m_deleted_t2": matrix(&b.m_out_t2),
        "m_deleted_new": matrix(&b.m_out_pt),
    })
}

/// Lift the behaviour of the minimized multiport back to the original
/// ports.
pub fn lift_behaviour(
    minimized_behaviour: &AffineSpace,
    data: &GraphMinimization,
) -> Result<AffineSpace, PortXformError> {
    let blocks = lift_blocks(data);
    let LiftBlocks { t2, ptilde, outside, .. } = &blocks;

    // Column layout: t₂' | P̃' | (P−t̂₂)' | t₂" | P̃" | (P−t̂₂)".
    let mut labels: Vec<Label> = Vec::new();
    labels.extend(t2.iter().map(Label::primed));
    labels.extend(ptilde.iter().map(Label::primed));
    labels.extend(outside.iter().map(Label::primed));
    labels.extend(t2.iter().map(Label::doubled));
    labels.extend(ptilde.iter().map(Label::doubled));
    labels.extend(outside.iter().map(Label::doubled));
    let n_t2 = t2.len();
    let n_pt = ptilde.len();
    let n_out = outside.len();
    let width = 2 * (n_t2 + n_pt + n_out);

    // Split a behaviour vector on P̃'P̃" into its primed and doubled parts.
    let split = |row: &[Q]| -> (Vec<Q>, Vec<Q>) {
        let cols = minimized_behaviour.columns();
        let mut primed = vec![Q::zero(); n_pt];
        let mut doubled = vec![Q::zero(); n_pt];
        for (l, x) in cols.iter().zip(row) {
            let plain = l.undecorated();
            let pos = ptilde.iter().position(|p| *p == plain).expect("minimized port column");
            match l.decoration() {
                crate::label::Decoration::Prime => primed[pos] = x.clone(),
                _ => doubled[pos] = x.clone(),
            }
        }
        (primed, doubled)
    };

    let expand = |q_part: &[Q], b_part: &[Q]| -> Vec<Q> {
        let mut out = vec![Q::zero(); width];
        // Primed side: 0 on t₂', q on P̃', q·K_{P̃(P−t̂₂)} on (P−t̂₂)'.
        for (j, x) in q_part.iter().enumerate() {
            out[n_t2 + j] = x.clone();
        }
        for c in 0..n_out {
            let mut acc = Q::zero();
            for (j, x) in q_part.iter().enumerate() {
                acc += x * &blocks.k_pt_out[j][c];
            }
            out[n_t2 + n_pt + c] = acc;
        }
        // Doubled side: b·M_{P̃t₂} on t₂", b on P̃", 0 outside.
        let base = n_t2 + n_pt + n_out;
        for c in 0..n_t2 {
            let mut acc = Q::zero();
            for (j, x) in b_part.iter().enumerate() {
                acc += x * &blocks.m_pt_t2[j][c];
            }
            out[base + c] = acc;
        }
        for (j, x) in b_part.iter().enumerate() {
            out[base + n_t2 + j] = x.clone();
        }
        out
    };

    let mut rows: Vec<Vec<Q>> = Vec::new();
    for row in minimized_behaviour.translate().basis() {
        let (q_part, b_part) = split(row);
        rows.push(expand(&q_part, &b_part));
    }
    // Rows of V×P on the primed side.
    for (i, _t) in t2.iter().enumerate() {
        let mut out = vec![Q::zero(); width];
        out[i] = Q::one();
        for (j, x) in blocks.k_t2_pt[i].iter().enumerate() {
            out[n_t2 + j] = x.clone();
        }
        for (j, x) in blocks.k_t2_out[i].iter().enumerate() {
            out[n_t2 + n_pt + j] = x.clone();
        }
        rows.push(out);
    }
    // Rows of V⊥×P on the doubled side.
    let base = n_t2 + n_pt + n_out;
    for (i, _c) in outside.iter().enumerate() {
        let mut out = vec![Q::zero(); width];
        for (j, x) in blocks.m_out_t2[i].iter().enumerate() {
            out[base + j] = x.clone();
        }
        for (j, x) in blocks.m_out_pt[i].iter().enumerate() {
            out[base + n_t2 + j] = x.clone();
        }
        out[base + n_t2 + n_pt + i] = Q::one();
        rows.push(out);
    }

    let translate = VectorSpace::from_rows(&labels, rows)?;
    let (alpha, beta) = split(minimized_behaviour.offset());
    let offset_unsorted = expand(&alpha, &beta);
    // Re-sort the offset into the canonical column order.
    let mut pairs: Vec<(Label, Q)> = labels.iter().cloned().zip(offset_unsorted).collect();
    pairs.sort_by(|a, b| a.0.cmp(&b.0));
    let offset: Vec<Q> = pairs.into_iter().map(|(_, x)| x).collect();
    Ok(AffineSpace::new(offset, translate))
}

/// Independence of the chosen port columns in the four minors of the
/// behaviour translate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PortIndependence {
    /// P₁' independent in `V_{P'P"} ∘ P'`.
    pub primed_in_restriction: bool,
    /// P₁' independent in `V_{P'P"} × P'`.
    pub primed_in_contraction: bool,
    /// P₁" independent in `V_{P'P"} ∘ P"`.
    pub doubled_in_restriction: bool,
    /// P₁" independent in `V_{P'P"} × P"`.
    pub doubled_in_contraction: bool,
}

/// Test independence of `P₁` columns of the multiport behaviour using the
/// minimized behaviour, with the forest choices that keep the overlap of
/// `P₁` with the minimized ports as small as possible.
pub fn test_port_independence(
    n: &Multiport,
    p1: &BTreeSet<Label>,
) -> Result<PortIndependence, PortXformError> {
    for l in p1 {
        if !n.ports().contains(l) {
            return Err(PortXformError::NotAPort(l.clone()));
        }
    }
    let internal = n.internal_edges();
    let graph = n.graph();
    let p1_list: Vec<Label> = p1.iter().cloned().collect();

    // Primed side: quick necessity, then the minimized-behaviour check.
    let (primed_in_restriction, primed_in_contraction) = if !graph.is_loop_free(p1) {
        (false, false)
    } else {
        // Pull P₁ into the spanning forest (maximizing t₂ ∩ P₁) and into
        // t̂₂ first, so P₁ ⊆ t̂₂ and |P₁ ∩ P̃| is minimal.
        let data = graph_port_minimize_with(graph, &internal, &p1_list, &p1_list)?;
        debug_assert!(p1.is_subset(&data.t2_hat));
        let minimized = data.minimized_multiport(n.devices().to_vec())?;
        let behaviour = minimized.port_behaviour().ok_or(PortXformError::VoidBehaviour)?;
        let v = behaviour.translate();
        let inside: BTreeSet<Label> =
            p1.intersection(&data.new_ports).map(Label::primed).collect();
        let primed_cols: BTreeSet<Label> = data.new_ports.iter().map(Label::primed).collect();
        (
            v.is_independent(&inside)?,
            v.contract(&primed_cols)?.is_independent(&inside)?,
        )
    };

    // Doubled side: keep P₁ out of the forests as far as possible. Since
    // P₁ is cutset free, growing with the other port edges preferred
    // keeps t₂ disjoint from P₁ and minimizes |P₁ ∩ P̃|.
    let (doubled_in_restriction, doubled_in_contraction) = if !graph.is_cutset_free(p1) {
        (false, false)
    } else {
        let ports: BTreeSet<Label> = graph.edge_labels().difference(&internal).cloned().collect();
        let others: Vec<Label> = ports.difference(p1).cloned().collect();
        let data = graph_port_minimize_with(graph, &internal, &others, &others)?;
        debug_assert!(p1.is_disjoint(&data.t2));
        let minimized = data.minimized_multiport(n.devices().to_vec())?;
        let behaviour = minimized.port_behaviour().ok_or(PortXformError::VoidBehaviour)?;
        let v = behaviour.translate();
        let inside: BTreeSet<Label> =
            p1.intersection(&data.new_ports).map(Label::doubled).collect();
        let doubled_cols: BTreeSet<Label> = data.new_ports.iter().map(Label::doubled).collect();
        (
            v.is_independent(&inside)?,
            v.contract(&doubled_cols)?.is_independent(&inside)?,
        )
    };

    Ok(PortIndependence {
        primed_in_restriction,
        primed_in_contraction,
        doubled_in_restriction,
        doubled_in_contraction,
    })
}

fn indices_of(space: &VectorSpace, labels: &[Label]) -> Vec<usize> {
    labels
        .iter()
        .map(|l| space.columns().binary_search(l).expect("label is a column"))
        .collect()
}

fn rank_of_rows(rows: &[Vec<Q>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let labels: Vec<Label> = (0..rows[0].len())
        .map(|i| Label::plain(format!("c{i:04}")))
        .collect();
    VectorSpace::from_rows(&labels, rows.to_vec()).expect("positional labels").rank()
}

#[cfg(test)]
mod tests;

//! Directed multigraphs and their Kirchhoff spaces.
//!
//! Self-loops and parallel edges are allowed and graphs may be
//! disconnected; "tree" always means a maximal loop-free edge set. The
//! voltage space is generated by node-potential (incidence) rows with the
//! sign convention that an edge contributes +1 at its tail and −1 at its
//! head; the current space is generated independently by fundamental
//! circuits and checked against the orthocomplement.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num::One;
use thiserror::Error;

use crate::colspace::VectorSpace;
use crate::label::Label;
use crate::ratio::Q;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub label: Label,
    pub tail: String,
    pub head: String,
}

/// A directed multigraph with uniquely labeled edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: BTreeSet<String>,
    edges: Vec<Edge>,
}

/// A maximal (or partial) loop-free edge set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Forest {
    edges: BTreeSet<Label>,
}

impl Forest {
    /// Wrap an edge set known to be loop free in its graph.
    pub fn from_edges(edges: BTreeSet<Label>) -> Forest {
        Forest { edges }
    }

    pub fn edges(&self) -> &BTreeSet<Label> {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, label: &Label) -> bool {
        self.edges.contains(label)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("duplicate edge label `{0}`")]
    DuplicateEdge(Label),
    #[error("unknown edge label `{0}`")]
    UnknownEdge(Label),
    #[error("delete and contract sets overlap at `{0}`")]
    MinorOverlap(Label),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ForestError {
    #[error("required edges contain a loop: {0:?}")]
    LoopInInclude(Vec<Label>),
    #[error("avoided edges cover a cutset: {0:?}")]
    CutsetInAvoid(BTreeSet<Label>),
}

struct UnionFind {
    parent: BTreeMap<String, String>,
}

impl UnionFind {
    fn new(vertices: &BTreeSet<String>) -> Self {
        UnionFind { parent: vertices.iter().map(|v| (v.clone(), v.clone())).collect() }
    }

    fn find(&mut self, v: &str) -> String {
        let p = self.parent[v].clone();
        if p == v {
            return p;
        }
        let root = self.find(&p);
        self.parent.insert(v.to_string(), root.clone());
        root
    }

    /// Returns false when both ends were already connected.
    fn union(&mut self, a: &str, b: &str) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return false;
        }
        // Deterministic representative: the smaller name wins.
        if ra < rb {
            self.parent.insert(rb, ra);
        } else {
            self.parent.insert(ra, rb);
        }
        true
    }
}

impl Graph {
    pub fn new(edges: Vec<(Label, String, String)>) -> Result<Self, GraphError> {
        let mut seen = BTreeSet::new();
        let mut vertices = BTreeSet::new();
        let mut list = Vec::with_capacity(edges.len());
        for (label, tail, head) in edges {
            if !seen.insert(label.clone()) {
                return Err(GraphError::DuplicateEdge(label));
            }
            vertices.insert(tail.clone());
            vertices.insert(head.clone());
            list.push(Edge { label, tail, head });
        }
        list.sort_by(|a, b| a.label.cmp(&b.label));
        Ok(Graph { vertices, edges: list })
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_labels(&self) -> BTreeSet<Label> {
        self.edges.iter().map(|e| e.label.clone()).collect()
    }

    pub fn vertices(&self) -> &BTreeSet<String> {
        &self.vertices
    }

    pub fn edge(&self, label: &Label) -> Result<&Edge, GraphError> {
        self.edges
            .iter()
            .find(|e| &e.label == label)
            .ok_or_else(|| GraphError::UnknownEdge(label.clone()))
    }

    /// Size of every maximal forest.
    pub fn forest_size(&self) -> usize {
        let mut uf = UnionFind::new(&self.vertices);
        self.edges.iter().filter(|e| uf.union(&e.tail, &e.head)).count()
    }

    /// Size of a maximal forest using only the given edges.
    pub fn forest_size_within(&self, subset: &BTreeSet<Label>) -> usize {
        let mut uf = UnionFind::new(&self.vertices);
        self.edges
            .iter()
            .filter(|e| subset.contains(&e.label))
            .filter(|e| uf.union(&e.tail, &e.head))
            .count()
    }

    /// The voltage (KVL) solution space on the edge labels.
    pub fn kvl_space(&self) -> VectorSpace {
        let labels: Vec<Label> = self.edges.iter().map(|e| e.label.clone()).collect();
        let mut rows = Vec::with_capacity(self.vertices.len());
        for v in &self.vertices {
            let row: Vec<Q> = self
                .edges
                .iter()
                .map(|e| {
                    let mut x = Q::default();
                    if e.tail == *v {
                        x += Q::one();
                    }
                    if e.head == *v {
                        x -= Q::one();
                    }
                    x
                })
                .collect();
            rows.push(row);
        }
        VectorSpace::from_rows(&labels, rows).expect("edge labels are unique")
    }

    /// The current (KCL) solution space, generated by fundamental circuits
    /// of the deterministic maximal forest and checked against Tellegen's
    /// identity.
    pub fn kcl_space(&self) -> VectorSpace {
        let forest = self.max_forest();
        let labels: Vec<Label> = self.edges.iter().map(|e| e.label.clone()).collect();
        let index: BTreeMap<&Label, usize> =
            labels.iter().enumerate().map(|(i, l)| (l, i)).collect();
        let mut rows = Vec::new();
        for chord in &self.edges {
            if forest.contains(&chord.label) {
                continue;
            }
            let mut row = vec![Q::default(); labels.len()];
            row[index[&chord.label]] = Q::one();
            // Close the circuit through the forest path head -> tail.
            for (edge, forward) in self.forest_path(&forest, &chord.head, &chord.tail) {
                row[index[&edge.label]] = if forward { Q::one() } else { -Q::one() };
            }
            rows.push(row);
        }
        let space = VectorSpace::from_rows(&labels, rows).expect("edge labels are unique");
        assert_eq!(space, self.kvl_space().orthocomplement(), "Tellegen identity violated");
        space
    }

    /// Path in `forest` from `from` to `to` as (edge, traversed forward?) pairs.
    fn forest_path<'a>(&'a self, forest: &Forest, from: &str, to: &str) -> Vec<(&'a Edge, bool)> {
        if from == to {
            return Vec::new();
        }
        let mut adjacency: BTreeMap<&str, Vec<&Edge>> = BTreeMap::new();
        for e in &self.edges {
            if forest.contains(&e.label) {
                adjacency.entry(&e.tail).or_default().push(e);
                adjacency.entry(&e.head).or_default().push(e);
            }
        }
        let mut pred: BTreeMap<&str, (&Edge, bool)> = BTreeMap::new();
        let mut queue = VecDeque::from([from]);
        let mut seen: BTreeSet<&str> = BTreeSet::from([from]);
        'bfs: while let Some(v) = queue.pop_front() {
            for e in adjacency.get(v).into_iter().flatten() {
                let (next, forward) = if e.tail == v { (&e.head, true) } else { (&e.tail, false) };
                if seen.insert(next) {
                    pred.insert(next, (e, forward));
                    if next == to {
                        break 'bfs;
                    }
                    queue.push_back(next);
                }
            }
        }
        let mut path = Vec::new();
        let mut cur = to;
        while cur != from {
            let (e, forward) = pred[cur];
            path.push((e, forward));
            cur = if forward { &e.tail } else { &e.head };
        }
        path.reverse();
        path
    }

    /// The fundamental circuit of a chord with respect to a forest, as a
    /// signed edge vector: +1 on the chord, ±1 on the forest path closing
    /// it, oriented along the chord.
    pub fn fundamental_circuit(&self, forest: &Forest, chord: &Label) -> BTreeMap<Label, Q> {
        let e = self.edge(chord).expect("chord is an edge");
        let mut row = BTreeMap::from([(chord.clone(), Q::one())]);
        for (edge, forward) in self.forest_path(forest, &e.head, &e.tail) {
            row.insert(edge.label.clone(), if forward { Q::one() } else { -Q::one() });
        }
        row
    }

    /// The fundamental cutset of a forest branch, as a signed edge vector:
    /// +1 on edges leaving the branch-tail side, −1 on edges entering it.
    pub fn fundamental_cutset(&self, forest: &Forest, branch: &Label) -> BTreeMap<Label, Q> {
        let b = self.edge(branch).expect("branch is an edge");
        // Vertices on the tail side of the cut induced by removing the
        // branch from the forest.
        let mut reduced = forest.clone();
        reduced.edges.remove(branch);
        let mut side: BTreeSet<&str> = BTreeSet::from([b.tail.as_str()]);
        let mut grew = true;
        while grew {
            grew = false;
            for e in &self.edges {
                if reduced.contains(&e.label) {
                    let t = side.contains(e.tail.as_str());
                    let h = side.contains(e.head.as_str());
                    if t != h {
                        side.insert(if t { e.head.as_str() } else { e.tail.as_str() });
                        grew = true;
                    }
                }
            }
        }
        let mut row = BTreeMap::new();
        for e in &self.edges {
            let t = side.contains(e.tail.as_str());
            let h = side.contains(e.head.as_str());
            if t && !h {
                row.insert(e.label.clone(), Q::one());
            } else if h && !t {
                row.insert(e.label.clone(), -Q::one());
            }
        }
        row
    }

    /// Deterministic maximal forest grown in label order.
    pub fn max_forest(&self) -> Forest {
        let mut uf = UnionFind::new(&self.vertices);
        let edges = self
            .edges
            .iter()
            .filter(|e| uf.union(&e.tail, &e.head))
            .map(|e| e.label.clone())
            .collect();
        Forest { edges }
    }

    /// Delete one edge set and contract another.
    pub fn minor(&self, delete: &BTreeSet<Label>, contract: &BTreeSet<Label>) -> Result<Graph, GraphError> {
        if let Some(l) = delete.intersection(contract).next() {
            return Err(GraphError::MinorOverlap(l.clone()));
        }
        let known = self.edge_labels();
        for l in delete.iter().chain(contract) {
            if !known.contains(l) {
                return Err(GraphError::UnknownEdge(l.clone()));
            }
        }
        let mut uf = UnionFind::new(&self.vertices);
        for e in &self.edges {
            if contract.contains(&e.label) {
                uf.union(&e.tail, &e.head);
            }
        }
        let mut edges = Vec::new();
        let mut vertices = BTreeSet::new();
        for e in &self.edges {
            if delete.contains(&e.label) || contract.contains(&e.label) {
                continue;
            }
            let tail = uf.find(&e.tail);
            let head = uf.find(&e.head);
            vertices.insert(tail.clone());
            vertices.insert(head.clone());
            edges.push(Edge { label: e.label.clone(), tail, head });
        }
        Ok(Graph { vertices, edges })
    }

    /// Maximal forest containing `must_include`, avoiding `must_avoid`,
    /// grown by `prefer` order and then label order.
    pub fn constrained_forest(
        &self,
        must_include: &BTreeSet<Label>,
        must_avoid: &BTreeSet<Label>,
        prefer: &[Label],
    ) -> Result<Forest, ForestError> {
        let mut uf = UnionFind::new(&self.vertices);
        let mut chosen = Forest { edges: BTreeSet::new() };
        for label in must_include {
            let e = self.edge(label).expect("include edges must exist");
            if !uf.union(&e.tail, &e.head) {
                let mut cycle: Vec<Label> = self
                    .forest_path(&chosen, &e.head, &e.tail)
                    .into_iter()
                    .map(|(edge, _)| edge.label.clone())
                    .collect();
                cycle.insert(0, label.clone());
                return Err(ForestError::LoopInInclude(cycle));
            }
            chosen.edges.insert(label.clone());
        }
        let mut order: Vec<&Label> = prefer
            .iter()
            .filter(|l| !must_include.contains(l) && !must_avoid.contains(l))
            .collect();
        let preferred: BTreeSet<&Label> = prefer.iter().collect();
        order.extend(
            self.edges
                .iter()
                .map(|e| &e.label)
                .filter(|l| !must_include.contains(l) && !must_avoid.contains(l) && !preferred.contains(l)),
        );
        for label in order {
            let e = self.edge(label).expect("iterating own edges");
            if uf.union(&e.tail, &e.head) {
                chosen.edges.insert(label.clone());
            }
        }
        if chosen.len() < self.forest_size() {
            return Err(ForestError::CutsetInAvoid(self.cut_witness(must_avoid)));
        }
        Ok(chosen)
    }

    /// A cut consisting of `avoid` edges that separates two vertex sets
    /// connected in the full graph.
    fn cut_witness(&self, avoid: &BTreeSet<Label>) -> BTreeSet<Label> {
        let mut without = UnionFind::new(&self.vertices);
        for e in &self.edges {
            if !avoid.contains(&e.label) {
                without.union(&e.tail, &e.head);
            }
        }
        let mut full = UnionFind::new(&self.vertices);
        for e in &self.edges {
            full.union(&e.tail, &e.head);
        }
        // Find a component of G - avoid strictly inside a component of G.
        for e in &self.edges {
            if !avoid.contains(&e.label) {
                continue;
            }
            if without.find(&e.tail) != without.find(&e.head) {
                let side = without.find(&e.tail);
                return self
                    .edges
                    .iter()
                    .filter(|f| avoid.contains(&f.label))
                    .filter(|f| (without.find(&f.tail) == side) != (without.find(&f.head) == side))
                    .map(|f| f.label.clone())
                    .collect();
            }
        }
        avoid.clone()
    }

    /// Does `subset` extend to a maximal forest (contain no loop)?
    pub fn is_loop_free(&self, subset: &BTreeSet<Label>) -> bool {
        let mut uf = UnionFind::new(&self.vertices);
        for e in &self.edges {
            if subset.contains(&e.label) && !uf.union(&e.tail, &e.head) {
                return false;
            }
        }
        true
    }

    /// Does the complement of `subset` contain a maximal forest?
    pub fn is_cutset_free(&self, subset: &BTreeSet<Label>) -> bool {
        let mut uf = UnionFind::new(&self.vertices);
        let kept = self
            .edges
            .iter()
            .filter(|e| !subset.contains(&e.label))
            .filter(|e| uf.union(&e.tail, &e.head))
            .count();
        kept == self.forest_size()
    }

    /// A cycle inside `subset`, when one exists.
    pub fn cycle_within(&self, subset: &BTreeSet<Label>) -> Option<Vec<Label>> {
        let mut uf = UnionFind::new(&self.vertices);
        let mut partial = Forest { edges: BTreeSet::new() };
        for e in &self.edges {
            if !subset.contains(&e.label) {
                continue;
            }
            if !uf.union(&e.tail, &e.head) {
                let mut cycle: Vec<Label> = self
                    .forest_path(&partial, &e.head, &e.tail)
                    .into_iter()
                    .map(|(edge, _)| edge.label.clone())
                    .collect();
                cycle.insert(0, e.label.clone());
                return Some(cycle);
            }
            partial.edges.insert(e.label.clone());
        }
        None
    }

    /// A cut of `subset` edges witnessing that `subset` covers a cutset,
    /// when it does.
    pub fn cutset_within(&self, subset: &BTreeSet<Label>) -> Option<BTreeSet<Label>> {
        if self.is_cutset_free(subset) {
            None
        } else {
            Some(self.cut_witness(subset))
        }
    }
}

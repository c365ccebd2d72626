//! Independence-oracle matroids and the matroid union algorithm.
//!
//! A [`Matroid`] is a shared handle to a rank oracle. Concrete instances
//! cover free, zero, graphic, cographic, linear, and partition matroids;
//! duals, minors, direct sums, unions and linkings are derived oracles
//! that reduce their rank queries to the base matroids. The union rank is
//! computed by Edmonds-style augmenting paths over the exchange digraph,
//! with BFS and label-order tie-breaking, so every answer is
//! deterministic. Complexity is O(r·|S|·oracle) queries per union base.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::colspace::VectorSpace;
use crate::graph::Graph;
use crate::label::Label;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatroidError {
    #[error("element `{0}` is outside the ground set")]
    OutsideGround(Label),
    #[error("partition blocks must cover every ground element exactly once; `{0}` repeats")]
    BadPartition(Label),
    #[error("ground sets must be disjoint but share `{0}`")]
    NotDisjoint(Label),
    #[error("label `{0}` occurs in more than two ground sets")]
    OverSharedLabel(Label),
}

trait Oracle: fmt::Debug + Send + Sync {
    fn ground(&self) -> &BTreeSet<Label>;
    fn rank(&self, subset: &BTreeSet<Label>) -> usize;
}

/// A matroid given by its rank oracle. Cheap to clone and share.
#[derive(Clone, Debug)]
pub struct Matroid {
    inner: Arc<dyn Oracle>,
}

impl Matroid {
    pub fn ground(&self) -> &BTreeSet<Label> {
        self.inner.ground()
    }

    /// Rank of a subset of the ground set.
    pub fn rank(&self, subset: &BTreeSet<Label>) -> usize {
        for l in subset {
            assert!(self.ground().contains(l), "element `{l}` outside ground set");
        }
        self.inner.rank(subset)
    }

    pub fn full_rank(&self) -> usize {
        self.inner.rank(self.ground())
    }

    pub fn is_independent(&self, subset: &BTreeSet<Label>) -> bool {
        self.rank(subset) == subset.len()
    }

    /// Greedy base in label order.
    pub fn base(&self) -> BTreeSet<Label> {
        self.base_through(&BTreeSet::new())
    }

    /// Greedy base taking `priority` elements first.
    pub fn base_through(&self, priority: &BTreeSet<Label>) -> BTreeSet<Label> {
        let mut base = BTreeSet::new();
        let rest: Vec<&Label> = self.ground().iter().filter(|l| !priority.contains(l)).collect();
        for l in priority.iter().chain(rest) {
            base.insert(l.clone());
            if !self.is_independent(&base) {
                base.remove(l);
            }
        }
        base
    }

    /// Extend an independent set to a base, greedily by label order.
    pub fn extend_to_base(&self, independent: &BTreeSet<Label>) -> BTreeSet<Label> {
        debug_assert!(self.is_independent(independent));
        let mut base = independent.clone();
        let target = self.full_rank();
        for l in self.ground() {
            if base.len() == target {
                break;
            }
            if base.contains(l) {
                continue;
            }
            base.insert(l.clone());
            if !self.is_independent(&base) {
                base.remove(l);
            }
        }
        base
    }

    pub fn free(ground: impl IntoIterator<Item = Label>) -> Matroid {
        Matroid { inner: Arc::new(FreeOracle { ground: ground.into_iter().collect() }) }
    }

    pub fn zero(ground: impl IntoIterator<Item = Label>) -> Matroid {
        Matroid { inner: Arc::new(ZeroOracle { ground: ground.into_iter().collect() }) }
    }

    /// Independent sets are the forests of the graph.
    pub fn graphic(graph: &Graph) -> Matroid {
        Matroid { inner: Arc::new(GraphicOracle::new(graph.clone())) }
    }

    /// Dual of the graphic matroid.
    pub fn cographic(graph: &Graph) -> Matroid {
        Matroid::graphic(graph).dual()
    }

    /// Independence is column independence in the space.
    pub fn linear(space: &VectorSpace) -> Matroid {
        Matroid {
            inner: Arc::new(LinearOracle { ground: space.column_set(), space: space.clone() }),
        }
    }

    /// Partition matroid: blocks must partition the ground set; a set is
    /// independent when it meets every block within its cap.
    pub fn partition(blocks: Vec<(BTreeSet<Label>, usize)>) -> Result<Matroid, MatroidError> {
        let mut ground = BTreeSet::new();
        for (block, _) in &blocks {
            for l in block {
                if !ground.insert(l.clone()) {
                    return Err(MatroidError::BadPartition(l.clone()));
                }
            }
        }
        Ok(Matroid { inner: Arc::new(PartitionOracle { ground, blocks }) })
    }

    pub fn dual(&self) -> Matroid {
        Matroid { inner: Arc::new(DualOracle { base: self.clone() }) }
    }

    /// Delete one set of elements and contract another.
    pub fn minor(
        &self,
        deleted: &BTreeSet<Label>,
        contracted: &BTreeSet<Label>,
    ) -> Result<Matroid, MatroidError> {
        if let Some(l) = deleted.intersection(contracted).next() {
            return Err(MatroidError::NotDisjoint(l.clone()));
        }
        for l in deleted.iter().chain(contracted) {
            if !self.ground().contains(l) {
                return Err(MatroidError::OutsideGround(l.clone()));
            }
        }
        let ground: BTreeSet<Label> = self
            .ground()
            .iter()
            .filter(|l| !deleted.contains(l) && !contracted.contains(l))
            .cloned()
            .collect();
        Ok(Matroid {
            inner: Arc::new(MinorOracle {
                ground,
                base: self.clone(),
                contracted: contracted.clone(),
            }),
        })
    }

    /// Restriction `M ∘ T`.
    pub fn restrict(&self, keep: &BTreeSet<Label>) -> Result<Matroid, MatroidError> {
        let drop: BTreeSet<Label> = self.ground().difference(keep).cloned().collect();
        self.minor(&drop, &BTreeSet::new())
    }

    /// Contraction `M × T`.
    pub fn contract(&self, keep: &BTreeSet<Label>) -> Result<Matroid, MatroidError> {
        let drop: BTreeSet<Label> = self.ground().difference(keep).cloned().collect();
        self.minor(&BTreeSet::new(), &drop)
    }

    pub fn direct_sum(&self, other: &Matroid) -> Result<Matroid, MatroidError> {
        if let Some(l) = self.ground().intersection(other.ground()).next() {
            return Err(MatroidError::NotDisjoint(l.clone()));
        }
        let ground = self.ground().union(other.ground()).cloned().collect();
        Ok(Matroid {
            inner: Arc::new(DirectSumOracle { ground, left: self.clone(), right: other.clone() }),
        })
    }

    /// Union `M₁ ∨ M₂`; ground mismatches are padded with zero matroids.
    pub fn union(&self, other: &Matroid) -> Matroid {
        Matroid::union_of(vec![self.clone(), other.clone()])
    }

    /// n-ary union.
    pub fn union_of(parts: Vec<Matroid>) -> Matroid {
        let ground = parts.iter().flat_map(|m| m.ground().iter().cloned()).collect();
        Matroid {
            inner: Arc::new(UnionOracle { ground, parts, cache: Mutex::new(BTreeMap::new()) }),
        }
    }

    /// Intersection `M₁ ∧ M₂ := (M₁* ∨ M₂*)*`; the dualization supplies the
    /// full-matroid padding.
    pub fn intersection(&self, other: &Matroid) -> Matroid {
        self.dual().union(&other.dual()).dual()
    }

    /// Linking `M_SP ↔ M_PQ := (M_SP ∨ M_PQ) × (S ∪ Q)`.
    pub fn linking(&self, other: &Matroid) -> Matroid {
        let shared: BTreeSet<Label> =
            self.ground().intersection(other.ground()).cloned().collect();
        self.union(other).minor(&BTreeSet::new(), &shared).expect("shared ⊆ union ground")
    }

    /// `r(M) + r(M*) = |ground|`.
    pub fn dual_rank_identity_check(&self) -> bool {
        self.full_rank() + self.dual().full_rank() == self.ground().len()
    }
}

#[derive(Debug)]
struct FreeOracle {
    ground: BTreeSet<Label>,
}

impl Oracle for FreeOracle {
    fn ground(&self) -> &BTreeSet<Label> {
        &self.ground
    }
    fn rank(&self, subset: &BTreeSet<Label>) -> usize {
        subset.len()
    }
}

#[derive(Debug)]
struct ZeroOracle {
    ground: BTreeSet<Label>,
}

impl Oracle for ZeroOracle {
    fn ground(&self) -> &BTreeSet<Label> {
        &self.ground
    }
    fn rank(&self, _subset: &BTreeSet<Label>) -> usize {
        0
    }
}

#[derive(Debug)]
struct GraphicOracle {
    ground: BTreeSet<Label>,
    graph: Graph,
}

impl GraphicOracle {
    fn new(graph: Graph) -> Self {
        GraphicOracle { ground: graph.edge_labels(), graph }
    }
}

impl Oracle for GraphicOracle {
    fn ground(&self) -> &BTreeSet<Label> {
        &self.ground
    }
    fn rank(&self, subset: &BTreeSet<Label>) -> usize {
        self.graph.forest_size_within(subset)
    }
}

#[derive(Debug)]
struct LinearOracle {
    ground: BTreeSet<Label>,
    space: VectorSpace,
}

impl Oracle for LinearOracle {
    fn ground(&self) -> &BTreeSet<Label> {
        &self.ground
    }
    fn rank(&self, subset: &BTreeSet<Label>) -> usize {
        // Column rank of the chosen columns equals r(V ∘ subset).
        self.space.restrict(subset).expect("subset of columns").rank()
    }
}

#[derive(Debug)]
struct PartitionOracle {
    ground: BTreeSet<Label>,
    blocks: Vec<(BTreeSet<Label>, usize)>,
}

impl Oracle for PartitionOracle {
    fn ground(&self) -> &BTreeSet<Label> {
        &self.ground
    }
    fn rank(&self, subset: &BTreeSet<Label>) -> usize {
        self.blocks
            .iter()
            .map(|(block, cap)| block.intersection(subset).count().min(*cap))
            .sum()
    }
}

#[derive(Debug)]
struct DualOracle {
    base: Matroid,
}

impl Oracle for DualOracle {
    fn ground(&self) -> &BTreeSet<Label> {
        self.base.ground()
    }
    fn rank(&self, subset: &BTreeSet<Label>) -> usize {
        let complement: BTreeSet<Label> = self.ground().difference(subset).cloned().collect();
        subset.len() + self.base.rank(&complement) - self.base.full_rank()
    }
}

#[derive(Debug)]
struct MinorOracle {
    ground: BTreeSet<Label>,
    base: Matroid,
    contracted: BTreeSet<Label>,
}

impl Oracle for MinorOracle {
    fn ground(&self) -> &BTreeSet<Label> {
        &self.ground
    }
    fn rank(&self, subset: &BTreeSet<Label>) -> usize {
        let with: BTreeSet<Label> = subset.union(&self.contracted).cloned().collect();
        self.base.rank(&with) - self.base.rank(&self.contracted)
    }
}

#[derive(Debug)]
struct DirectSumOracle {
    ground: BTreeSet<Label>,
    left: Matroid,
    right: Matroid,
}

impl Oracle for DirectSumOracle {
    fn ground(&self) -> &BTreeSet<Label> {
        &self.ground
    }
    fn rank(&self, subset: &BTreeSet<Label>) -> usize {
        let l: BTreeSet<Label> = subset.intersection(self.left.ground()).cloned().collect();
        let r: BTreeSet<Label> = subset.intersection(self.right.ground()).cloned().collect();
        self.left.rank(&l) + self.right.rank(&r)
    }
}

struct UnionOracle {
    ground: BTreeSet<Label>,
    parts: Vec<Matroid>,
    cache: Mutex<BTreeMap<Vec<Label>, usize>>,
}

impl fmt::Debug for UnionOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("UnionOracle").field("parts", &self.parts).finish()
    }
}

impl Oracle for UnionOracle {
    fn ground(&self) -> &BTreeSet<Label> {
        &self.ground
    }
    fn rank(&self, subset: &BTreeSet<Label>) -> usize {
        let key: Vec<Label> = subset.iter().cloned().collect();
        if let Some(&r) = self.cache.lock().unwrap().get(&key) {
            return r;
        }
        let (parts, _) = partition_into_independent(&self.parts, &key);
        let r = parts.iter().map(BTreeSet::len).sum();
        self.cache.lock().unwrap().insert(key, r);
        r
    }
}

/// Partition `items` into sets independent in the respective matroids,
/// covering as many items as possible. Items outside a matroid's ground
/// set are never assigned to it, which realizes the zero-matroid padding
/// of the extended union. Returns the per-matroid parts and the uncovered
/// items. Items are attempted in the given order, so listing a priority
/// set first yields a union base maximizing its intersection with that set.
pub fn partition_into_independent(
    matroids: &[Matroid],
    items: &[Label],
) -> (Vec<BTreeSet<Label>>, BTreeSet<Label>) {
    let mut parts: Vec<BTreeSet<Label>> = vec![BTreeSet::new(); matroids.len()];
    let mut uncovered = BTreeSet::new();
    for item in items {
        if !augment(matroids, &mut parts, item) {
            uncovered.insert(item.clone());
        }
    }
    (parts, uncovered)
}

/// Grow the coverage by `item`, displacing assigned elements along a
/// shortest exchange path when necessary.
fn augment(matroids: &[Matroid], parts: &mut [BTreeSet<Label>], item: &Label) -> bool {
    // pred[x] = None for the root, Some((i, y)) when y displaces x from part i.
    let mut pred: BTreeMap<Label, Option<(usize, Label)>> = BTreeMap::new();
    pred.insert(item.clone(), None);
    let mut queue = VecDeque::from([item.clone()]);

    let assignment: BTreeMap<Label, usize> = parts
        .iter()
        .enumerate()
        .flat_map(|(i, part)| part.iter().map(move |l| (l.clone(), i)))
        .collect();

    while let Some(current) = queue.pop_front() {
        let home = assignment.get(&current).copied();
        for (i, m) in matroids.iter().enumerate() {
            if Some(i) == home || !m.ground().contains(&current) {
                continue;
            }
            let mut trial = parts[i].clone();
            trial.insert(current.clone());
            if m.is_independent(&trial) {
                // Direct insertion ends the augmenting path.
                parts[i].insert(current.clone());
                let mut walk = current.clone();
                while let Some((from_part, by)) = pred[&walk].clone() {
                    parts[from_part].remove(&walk);
                    parts[from_part].insert(by.clone());
                    walk = by;
                }
                debug_assert!(parts
                    .iter()
                    .zip(matroids)
                    .all(|(part, m)| m.is_independent(part)));
                return true;
            }
            let members: Vec<Label> = parts[i].iter().cloned().collect();
            for x in members {
                if pred.contains_key(&x) {
                    continue;
                }
                let mut swap = parts[i].clone();
                swap.remove(&x);
                swap.insert(current.clone());
                if m.is_independent(&swap) {
                    pred.insert(x.clone(), Some((i, current.clone())));
                    queue.push_back(x);
                }
            }
        }
    }
    false
}

/// A pair of maximally distant bases: `|b₁ ∪ b₂| = r(M₁ ∨ M₂)`.
pub fn union_max_distant(m1: &Matroid, m2: &Matroid) -> (BTreeSet<Label>, BTreeSet<Label>) {
    let items: Vec<Label> = m1.ground().union(m2.ground()).cloned().collect();
    let (parts, _) = partition_into_independent(&[m1.clone(), m2.clone()], &items);
    let b1 = m1.extend_to_base(&parts[0]);
    let b2 = m2.extend_to_base(&parts[1]);
    (b1, b2)
}

/// A base of `M₁ ∨ M₂` maximizing its intersection with `priority`,
/// together with the independent parts that witness it.
pub fn union_base_through(
    m1: &Matroid,
    m2: &Matroid,
    priority: &BTreeSet<Label>,
) -> (BTreeSet<Label>, (BTreeSet<Label>, BTreeSet<Label>)) {
    let mut items: Vec<Label> = priority.iter().cloned().collect();
    items.extend(
        m1.ground().union(m2.ground()).filter(|l| !priority.contains(*l)).cloned(),
    );
    let (parts, _) = partition_into_independent(&[m1.clone(), m2.clone()], &items);
    let base = parts[0].union(&parts[1]).cloned().collect();
    (base, (parts[0].clone(), parts[1].clone()))
}

/// Verdict of the matroid pair rigidity test.
#[derive(Debug, Clone)]
pub struct MatroidRigidVerdict {
    pub rigid: bool,
    /// `(M_AB ∨ M_BC) ∘ B = F_B`: the union base covers the shared set.
    pub full_sum_holds: bool,
    /// `r(M_AB ∨ M_BC) = r(M_AB) + r(M_BC)`.
    pub zero_intersection_holds: bool,
    /// Disjoint bases covering the shared set, when rigid.
    pub witness: Option<(BTreeSet<Label>, BTreeSet<Label>)>,
}

/// Rigidity of a matroid pair: there exist disjoint bases of the two
/// matroids whose union covers the shared ground elements. An empty shared
/// set is rigid by convention.
pub fn matroid_pair_rigid(m_ab: &Matroid, m_bc: &Matroid) -> MatroidRigidVerdict {
    let shared: BTreeSet<Label> =
        m_ab.ground().intersection(m_bc.ground()).cloned().collect();
    let (base, (b1, b2)) = union_base_through(m_ab, m_bc, &shared);
    let full_sum_holds = shared.iter().all(|l| base.contains(l));
    let zero_intersection_holds = base.len() == m_ab.full_rank() + m_bc.full_rank();
    let rigid = full_sum_holds && zero_intersection_holds;
    let witness = rigid.then(|| (b1, b2));
    MatroidRigidVerdict { rigid, full_sum_holds, zero_intersection_holds, witness }
}

fn check_associative(matroids: &[Matroid]) -> Result<(), MatroidError> {
    let mut counts: BTreeMap<&Label, usize> = BTreeMap::new();
    for m in matroids {
        for l in m.ground() {
            *counts.entry(l).or_default() += 1;
        }
    }
    if let Some((l, _)) = counts.into_iter().find(|(_, c)| *c > 2) {
        return Err(MatroidError::OverSharedLabel(l.clone()));
    }
    Ok(())
}

/// n-ary linking `↔(H) = (⋁ᵢ M_Yᵢ) × Z` where `Z` is the set of elements
/// owned by exactly one member. Requires an associative family.
pub fn family_linking(matroids: &[Matroid]) -> Result<Matroid, MatroidError> {
    check_associative(matroids)?;
    let mut counts: BTreeMap<Label, usize> = BTreeMap::new();
    for m in matroids {
        for l in m.ground() {
            *counts.entry(l.clone()).or_default() += 1;
        }
    }
    let shared: BTreeSet<Label> =
        counts.into_iter().filter(|(_, c)| *c == 2).map(|(l, _)| l).collect();
    Matroid::union_of(matroids.to_vec()).minor(&BTreeSet::new(), &shared)
}

/// Verdict of the matroid family rigidity test: primal and dual union-rank
/// additivity.
#[derive(Debug, Clone)]
pub struct FamilyVerdict {
    pub rigid: bool,
    pub primal_holds: bool,
    pub dual_holds: bool,
}

pub fn matroid_family_rigid(matroids: &[Matroid]) -> Result<FamilyVerdict, MatroidError> {
    check_associative(matroids)?;
    let primal = Matroid::union_of(matroids.to_vec()).full_rank()
        == matroids.iter().map(Matroid::full_rank).sum::<usize>();
    let duals: Vec<Matroid> = matroids.iter().map(Matroid::dual).collect();
    let dual = Matroid::union_of(duals.clone()).full_rank()
        == duals.iter().map(Matroid::full_rank).sum::<usize>();
    Ok(FamilyVerdict { rigid: primal && dual, primal_holds: primal, dual_holds: dual })
}

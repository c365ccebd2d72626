//! Exact linear algebra on vector and affine spaces with labeled columns.
//!
//! A [`VectorSpace`] is a subspace of ℚ^X for a finite labeled column set X,
//! stored as the reduced row echelon form of any spanning set, with columns
//! sorted by label. RREF with label-ordered pivot selection is a canonical
//! form, so two values are equal as sets of vectors iff they are equal as
//! Rust values.
//!
//! Minor operations (restriction `∘`, contraction `×`), duality, extended
//! sum and intersection, and the matched/skewed compositions that connect
//! spaces through shared columns all live here, together with their affine
//! counterparts.

mod rref;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num::{One, Zero};
use thiserror::Error;

use crate::label::Label;
use crate::ratio::{format_q, parse_q, Q};

pub use rref::LinearOutcome;

/// Solve `rows · x = rhs` exactly, over positional columns.
pub fn solve_rows(rows: &[Vec<Q>], rhs: &[Q]) -> LinearOutcome {
    rref::solve_system(rows, rhs)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColError {
    #[error("row {row} has {got} entries, expected {expected}")]
    WidthMismatch { row: usize, expected: usize, got: usize },
    #[error("duplicate column label `{0}`")]
    DuplicateLabel(Label),
    #[error("label `{0}` is not a column of the space")]
    UnknownColumn(Label),
    #[error("column sets must be disjoint but share `{0}`")]
    NotDisjoint(Label),
    #[error("include and avoid sets overlap at `{0}`")]
    IncludeAvoidOverlap(Label),
    #[error("include set is dependent; a circuit is {0:?}")]
    DependentInclude(BTreeSet<Label>),
    #[error("avoid set covers a cocircuit; a space vector supported on {0:?} witnesses it")]
    AvoidCoversCocircuit(BTreeSet<Label>),
    #[error("relabeling is not injective at `{0}`")]
    RelabelCollision(Label),
    #[error("parse error: {0}")]
    Parse(String),
}

/// A vector space over ℚ on a labeled column set, in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VectorSpace {
    columns: Vec<Label>,
    basis: Vec<Vec<Q>>,
}

impl VectorSpace {
    /// Row space of `rows` over the given columns, canonicalized.
    pub fn from_rows(labels: &[Label], rows: Vec<Vec<Q>>) -> Result<Self, ColError> {
        let mut order: Vec<usize> = (0..labels.len()).collect();
        order.sort_by(|&i, &j| labels[i].cmp(&labels[j]));
        let columns: Vec<Label> = order.iter().map(|&i| labels[i].clone()).collect();
        for pair in columns.windows(2) {
            if pair[0] == pair[1] {
                return Err(ColError::DuplicateLabel(pair[0].clone()));
            }
        }
        let mut permuted = Vec::with_capacity(rows.len());
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != labels.len() {
                return Err(ColError::WidthMismatch { row: r, expected: labels.len(), got: row.len() });
            }
            permuted.push(order.iter().map(|&i| row[i].clone()).collect());
        }
        let (basis, _) = rref::rref(permuted);
        Ok(VectorSpace { columns, basis })
    }

    /// The zero space 0_S.
    pub fn zero(labels: impl IntoIterator<Item = Label>) -> Self {
        let columns: BTreeSet<Label> = labels.into_iter().collect();
        VectorSpace { columns: columns.into_iter().collect(), basis: Vec::new() }
    }

    /// The full space F_S.
    pub fn full(labels: impl IntoIterator<Item = Label>) -> Self {
        let columns: Vec<Label> = labels.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let n = columns.len();
        let basis = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
            .collect();
        VectorSpace { columns, basis }
    }

    /// Span of a single vector.
    pub fn span_of(labels: &[Label], row: Vec<Q>) -> Result<Self, ColError> {
        VectorSpace::from_rows(labels, vec![row])
    }

    pub fn columns(&self) -> &[Label] {
        &self.columns
    }

    pub fn column_set(&self) -> BTreeSet<Label> {
        self.columns.iter().cloned().collect()
    }

    pub fn basis(&self) -> &[Vec<Q>] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero_space(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full_space(&self) -> bool {
        self.basis.len() == self.columns.len()
    }

    fn col_index(&self, label: &Label) -> Result<usize, ColError> {
        self.columns.binary_search(label).map_err(|_| ColError::UnknownColumn(label.clone()))
    }

    fn pivot_columns(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|row| row.iter().position(|x| !x.is_zero()).expect("no zero rows in canonical basis"))
            .collect()
    }

    /// Membership test for a vector given on this space's columns.
    pub fn contains(&self, vector: &[Q]) -> bool {
        assert_eq!(vector.len(), self.columns.len());
        let mut rows = self.basis.clone();
        rows.push(vector.to_vec());
        rref::rank_of(&rows) == self.rank()
    }

    /// Is `other` a subspace of `self`? Requires identical column sets.
    pub fn contains_space(&self, other: &VectorSpace) -> bool {
        assert_eq!(self.columns, other.columns, "subspace test needs identical columns");
        other.basis.iter().all(|row| self.contains(row))
    }

    /// Restriction `V ∘ T`: drop all coordinates outside `T`.
    pub fn restrict(&self, keep: &BTreeSet<Label>) -> Result<VectorSpace, ColError> {
        let indices = self.subset_indices(keep)?;
        let rows = self.basis.iter().map(|row| indices.iter().map(|&i| row[i].clone()).collect()).collect();
        let (basis, _) = rref::rref(rows);
        Ok(VectorSpace { columns: keep.iter().cloned().collect(), basis })
    }

    /// Contraction `V × T`: members that vanish outside `T`, then restricted.
    pub fn contract(&self, keep: &BTreeSet<Label>) -> Result<VectorSpace, ColError> {
        let keep_idx = self.subset_indices(keep)?;
        let drop_idx: Vec<usize> =
            (0..self.columns.len()).filter(|i| !keep.contains(&self.columns[*i])).collect();
        // Re-eliminate with the dropped columns leading; rows whose leading
        // part is zero are exactly the members supported inside `keep`.
        let rearranged: Vec<Vec<Q>> = self
            .basis
            .iter()
            .map(|row| drop_idx.iter().chain(&keep_idx).map(|&i| row[i].clone()).collect())
            .collect();
        let (reduced, _) = rref::rref(rearranged);
        let split = drop_idx.len();
        let rows: Vec<Vec<Q>> = reduced
            .into_iter()
            .filter(|row| row[..split].iter().all(Zero::is_zero))
            .map(|row| row[split..].to_vec())
            .collect();
        let (basis, _) = rref::rref(rows);
        Ok(VectorSpace { columns: keep.iter().cloned().collect(), basis })
    }

    /// The orthogonal complement under the standard dot product.
    pub fn orthocomplement(&self) -> VectorSpace {
        let kernel = rref::kernel_basis(&self.basis, self.columns.len());
        let (basis, _) = rref::rref(kernel);
        VectorSpace { columns: self.columns.clone(), basis }
    }

    /// Extended sum: spaces on different column sets are padded with zeros.
    pub fn sum(&self, other: &VectorSpace) -> VectorSpace {
        let columns: Vec<Label> = self
            .column_set()
            .union(&other.column_set())
            .cloned()
            .collect();
        let mut rows = Vec::with_capacity(self.basis.len() + other.basis.len());
        rows.extend(pad_rows(&self.columns, &self.basis, &columns));
        rows.extend(pad_rows(&other.columns, &other.basis, &columns));
        let (basis, _) = rref::rref(rows);
        VectorSpace { columns, basis }
    }

    /// Extended intersection: spaces are padded with full spaces on the
    /// columns they lack, then intersected by the Zassenhaus construction.
    pub fn intersect(&self, other: &VectorSpace) -> VectorSpace {
        let columns: Vec<Label> = self
            .column_set()
            .union(&other.column_set())
            .cloned()
            .collect();
        let a = pad_full(self, &columns);
        let b = pad_full(other, &columns);
        let n = columns.len();
        let mut block = Vec::with_capacity(a.len() + b.len());
        for row in &a {
            let mut wide = row.clone();
            wide.extend(row.iter().cloned());
            block.push(wide);
        }
        for row in &b {
            let mut wide = row.clone();
            wide.extend(std::iter::repeat_n(Q::zero(), n));
            block.push(wide);
        }
        let (reduced, _) = rref::rref(block);
        let rows: Vec<Vec<Q>> = reduced
            .into_iter()
            .filter(|row| row[..n].iter().all(Zero::is_zero))
            .map(|row| row[n..].to_vec())
            .collect();
        let (basis, _) = rref::rref(rows);
        VectorSpace { columns, basis }
    }

    /// Direct sum of spaces on disjoint column sets.
    pub fn direct_sum(&self, other: &VectorSpace) -> Result<VectorSpace, ColError> {
        if let Some(l) = self.column_set().intersection(&other.column_set()).next() {
            return Err(ColError::NotDisjoint(l.clone()));
        }
        Ok(self.sum(other))
    }

    /// Negate the coordinates on `cols`; the paper's `K_{X(-Y)}`.
    pub fn negate_on(&self, cols: &BTreeSet<Label>) -> Result<VectorSpace, ColError> {
        let indices = self.subset_indices(cols)?;
        let mut rows = self.basis.clone();
        for row in &mut rows {
            for &i in &indices {
                row[i] = -row[i].clone();
            }
        }
        let (basis, _) = rref::rref(rows);
        Ok(VectorSpace { columns: self.columns.clone(), basis })
    }

    /// Apply an injective label map to all columns.
    pub fn relabel(&self, map: impl Fn(&Label) -> Label) -> Result<VectorSpace, ColError> {
        let labels: Vec<Label> = self.columns.iter().map(|l| map(l)).collect();
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.clone()) {
                return Err(ColError::RelabelCollision(l.clone()));
            }
        }
        VectorSpace::from_rows(&labels, self.basis.clone())
    }

    /// Matched composition `V ↔ W` through the shared columns.
    pub fn matched(&self, other: &VectorSpace) -> VectorSpace {
        let shared: BTreeSet<Label> = self
            .column_set()
            .intersection(&other.column_set())
            .cloned()
            .collect();
        let negated = other.negate_on(&shared).expect("shared columns exist in other");
        let total = self.sum(&negated);
        let outer: BTreeSet<Label> = total
            .column_set()
            .difference(&shared)
            .cloned()
            .collect();
        total.contract(&outer).expect("outer columns are columns of the sum")
    }

    /// Skewed composition `V ⇌ W`: as matched but without the sign flip.
    pub fn skewed(&self, other: &VectorSpace) -> VectorSpace {
        let shared: BTreeSet<Label> = self
            .column_set()
            .intersection(&other.column_set())
            .cloned()
            .collect();
        let total = self.sum(other);
        let outer: BTreeSet<Label> = total
            .column_set()
            .difference(&shared)
            .cloned()
            .collect();
        total.contract(&outer).expect("outer columns are columns of the sum")
    }

    /// Are the given columns linearly independent in any representative
    /// matrix of the space?
    pub fn is_independent(&self, cols: &BTreeSet<Label>) -> Result<bool, ColError> {
        let indices = self.subset_indices(cols)?;
        let sub: Vec<Vec<Q>> =
            self.basis.iter().map(|row| indices.iter().map(|&i| row[i].clone()).collect()).collect();
        Ok(rref::rank_of(&sub) == cols.len())
    }

    /// Deterministic column base containing `include` and avoiding `avoid`,
    /// grown greedily by label order.
    pub fn base_extension(
        &self,
        include: &BTreeSet<Label>,
        avoid: &BTreeSet<Label>,
    ) -> Result<BTreeSet<Label>, ColError> {
        if let Some(l) = include.intersection(avoid).next() {
            return Err(ColError::IncludeAvoidOverlap(l.clone()));
        }
        let mut base: BTreeSet<Label> = BTreeSet::new();
        for l in include {
            base.insert(l.clone());
            if !self.is_independent(&base)? {
                return Err(ColError::DependentInclude(self.circuit_through(&base, l)));
            }
        }
        for l in &self.columns {
            if base.len() == self.rank() {
                break;
            }
            if base.contains(l) || avoid.contains(l) {
                continue;
            }
            base.insert(l.clone());
            if !self.is_independent(&base).expect("columns of self") {
                base.remove(l);
            }
        }
        if base.len() < self.rank() {
            let inside = self.contract(avoid).expect("avoid filtered to columns below");
            let witness = inside
                .basis
                .first()
                .map(|row| {
                    inside
                        .columns
                        .iter()
                        .zip(row)
                        .filter(|(_, x)| !x.is_zero())
                        .map(|(l, _)| l.clone())
                        .collect()
                })
                .unwrap_or_else(|| avoid.clone());
            return Err(ColError::AvoidCoversCocircuit(witness));
        }
        Ok(base)
    }

    /// Minimal dependent subset of `dependent_set` through `last_added`.
    fn circuit_through(&self, dependent_set: &BTreeSet<Label>, last_added: &Label) -> BTreeSet<Label> {
        let cols: Vec<&Label> = dependent_set.iter().collect();
        let indices: Vec<usize> = cols.iter().map(|l| self.col_index(l).expect("subset")).collect();
        let sub: Vec<Vec<Q>> =
            self.basis.iter().map(|row| indices.iter().map(|&i| row[i].clone()).collect()).collect();
        let kernel = rref::kernel_basis(&sub, cols.len());
        let last_pos = cols.iter().position(|l| *l == last_added).expect("member");
        let dependence = kernel
            .iter()
            .find(|v| !v[last_pos].is_zero())
            .or_else(|| kernel.first())
            .expect("dependent set has a kernel vector");
        cols.iter()
            .zip(dependence)
            .filter(|(_, x)| !x.is_zero())
            .map(|(l, _)| (*l).clone())
            .collect()
    }

    fn subset_indices(&self, cols: &BTreeSet<Label>) -> Result<Vec<usize>, ColError> {
        cols.iter().map(|l| self.col_index(l)).collect()
    }

    /// Plain-text form: a `labels:` line followed by one row per line.
    pub fn to_text(&self) -> String {
        let mut out = String::from("labels:");
        for l in &self.columns {
            out.push(' ');
            out.push_str(&l.to_string());
        }
        out.push('\n');
        for row in &self.basis {
            let rendered: Vec<String> = row.iter().map(format_q).collect();
            out.push_str(&rendered.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<VectorSpace, ColError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| ColError::Parse("empty input".into()))?;
        let header = header
            .trim()
            .strip_prefix("labels:")
            .ok_or_else(|| ColError::Parse("first line must start with `labels:`".into()))?;
        let labels: Vec<Label> = header
            .split_whitespace()
            .map(|t| t.parse::<Label>().map_err(ColError::Parse))
            .collect::<Result<_, _>>()?;
        let mut rows = Vec::new();
        for line in lines {
            let row: Vec<Q> = line
                .split_whitespace()
                .map(|t| parse_q(t).map_err(ColError::Parse))
                .collect::<Result<_, _>>()?;
            rows.push(row);
        }
        VectorSpace::from_rows(&labels, rows)
    }

    /// JSON export of labels and basis, rationals as `p/q` strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "labels": self.columns.iter().map(Label::to_string).collect::<Vec<_>>(),
            "basis": self
                .basis
                .iter()
                .map(|row| row.iter().map(format_q).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for VectorSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// Result of testing the implicit-inversion conditions for
/// `V_SP ↔ V_PQ = V_SQ` with `V_PQ` unknown.
#[derive(Debug, Clone)]
pub struct ImplicitInverse {
    pub exists: bool,
    /// `V_SP ∘ S ⊇ V_SQ ∘ S`
    pub restriction_ok: bool,
    /// `V_SP × S ⊆ V_SQ × S`
    pub contraction_ok: bool,
    /// `V_SP ↔ V_SQ` when both conditions hold; verified to satisfy the
    /// original equation before being returned.
    pub candidate: Option<VectorSpace>,
}

/// Check the solvability conditions for `V_SP ↔ X = V_SQ` and produce the
/// canonical solution when they hold.
pub fn implicit_inverse_check(v_sp: &VectorSpace, v_sq: &VectorSpace) -> ImplicitInverse {
    let shared: BTreeSet<Label> =
        v_sp.column_set().intersection(&v_sq.column_set()).cloned().collect();
    let sp_restrict = v_sp.restrict(&shared).expect("shared ⊆ columns");
    let sq_restrict = v_sq.restrict(&shared).expect("shared ⊆ columns");
    let sp_contract = v_sp.contract(&shared).expect("shared ⊆ columns");
    let sq_contract = v_sq.contract(&shared).expect("shared ⊆ columns");
    let restriction_ok = sp_restrict.contains_space(&sq_restrict);
    let contraction_ok = sq_contract.contains_space(&sp_contract);
    if restriction_ok && contraction_ok {
        let candidate = v_sp.matched(v_sq);
        let check = v_sp.matched(&candidate);
        assert_eq!(check, *v_sq, "implicit inverse candidate failed verification");
        ImplicitInverse { exists: true, restriction_ok, contraction_ok, candidate: Some(candidate) }
    } else {
        ImplicitInverse { exists: false, restriction_ok, contraction_ok, candidate: None }
    }
}

fn pad_rows(from_cols: &[Label], rows: &[Vec<Q>], to_cols: &[Label]) -> Vec<Vec<Q>> {
    let map: BTreeMap<&Label, usize> = to_cols.iter().enumerate().map(|(i, l)| (l, i)).collect();
    rows.iter()
        .map(|row| {
            let mut out = vec![Q::zero(); to_cols.len()];
            for (l, x) in from_cols.iter().zip(row) {
                out[map[l]] = x.clone();
            }
            out
        })
        .collect()
}

/// Basis of `V ⊕ F_extra` on `to_cols ⊇ columns(V)`.
fn pad_full(space: &VectorSpace, to_cols: &[Label]) -> Vec<Vec<Q>> {
    let mut rows = pad_rows(&space.columns, &space.basis, to_cols);
    let own: BTreeSet<&Label> = space.columns.iter().collect();
    for (i, l) in to_cols.iter().enumerate() {
        if !own.contains(l) {
            let mut unit = vec![Q::zero(); to_cols.len()];
            unit[i] = Q::one();
            rows.push(unit);
        }
    }
    rows
}

/// An affine space `offset + translate` with a canonical offset: the unique
/// member whose coordinates vanish on the translate's pivot columns.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineSpace {
    offset: Vec<Q>,
    translate: VectorSpace,
}

impl AffineSpace {
    pub fn new(offset: Vec<Q>, translate: VectorSpace) -> Self {
        assert_eq!(offset.len(), translate.columns.len());
        let mut off = offset;
        for (row, pivot) in translate.basis.iter().zip(translate.pivot_columns()) {
            if !off[pivot].is_zero() {
                let factor = off[pivot].clone();
                for (o, r) in off.iter_mut().zip(row) {
                    let delta = &factor * r;
                    *o = &*o - delta;
                }
            }
        }
        AffineSpace { offset: off, translate }
    }

    /// The space itself viewed as an affine space through the origin.
    pub fn from_space(translate: VectorSpace) -> Self {
        let offset = vec![Q::zero(); translate.columns.len()];
        AffineSpace { offset, translate }
    }

    /// A single point.
    pub fn singleton(labels: &[Label], values: Vec<Q>) -> Result<Self, ColError> {
        let space = VectorSpace::zero(labels.iter().cloned());
        let mut order: Vec<usize> = (0..labels.len()).collect();
        order.sort_by(|&i, &j| labels[i].cmp(&labels[j]));
        if values.len() != labels.len() {
            return Err(ColError::WidthMismatch { row: 0, expected: labels.len(), got: values.len() });
        }
        let offset = order.into_iter().map(|i| values[i].clone()).collect();
        Ok(AffineSpace::new(offset, space))
    }

    /// The solution set of `rows · x = rhs`, or `None` when inconsistent.
    pub fn solution_set(labels: &[Label], rows: Vec<Vec<Q>>, rhs: Vec<Q>) -> Option<AffineSpace> {
        let sorted = VectorSpace::from_rows(labels, rows.clone()).expect("well-formed system");
        // Re-permute the raw rows to the sorted column order.
        let mut order: Vec<usize> = (0..labels.len()).collect();
        order.sort_by(|&i, &j| labels[i].cmp(&labels[j]));
        let permuted: Vec<Vec<Q>> =
            rows.iter().map(|row| order.iter().map(|&i| row[i].clone()).collect()).collect();
        match rref::solve_system(&permuted, &rhs) {
            LinearOutcome::Inconsistent { .. } => None,
            LinearOutcome::Solvable { particular, kernel } => {
                let translate = VectorSpace { columns: sorted.columns.clone(), basis: rref::rref(kernel).0 };
                Some(AffineSpace::new(particular, translate))
            }
        }
    }

    pub fn columns(&self) -> &[Label] {
        &self.translate.columns
    }

    pub fn column_set(&self) -> BTreeSet<Label> {
        self.translate.column_set()
    }

    pub fn offset(&self) -> &[Q] {
        &self.offset
    }

    pub fn translate(&self) -> &VectorSpace {
        &self.translate
    }

    pub fn rank(&self) -> usize {
        self.translate.rank()
    }

    pub fn is_singleton(&self) -> bool {
        self.translate.is_zero_space()
    }

    pub fn contains(&self, vector: &[Q]) -> bool {
        let diff: Vec<Q> = vector.iter().zip(&self.offset).map(|(a, b)| a - b).collect();
        self.translate.contains(&diff)
    }

    /// Restriction of the affine set to `keep`.
    pub fn restrict(&self, keep: &BTreeSet<Label>) -> Result<AffineSpace, ColError> {
        let indices = self.translate.subset_indices(keep)?;
        let offset = indices.iter().map(|&i| self.offset[i].clone()).collect();
        Ok(AffineSpace::new(offset, self.translate.restrict(keep)?))
    }

    /// Contraction: members that vanish outside `keep`, or `None` if there
    /// are none.
    pub fn contract(&self, keep: &BTreeSet<Label>) -> Result<Option<AffineSpace>, ColError> {
        let keep_idx = self.translate.subset_indices(keep)?;
        let drop_idx: Vec<usize> = (0..self.translate.columns.len())
            .filter(|i| !keep.contains(&self.translate.columns[*i]))
            .collect();
        // Solve for a member with zero coordinates on the dropped columns.
        let a: Vec<Vec<Q>> = drop_idx
            .iter()
            .map(|&i| self.translate.basis.iter().map(|row| row[i].clone()).collect())
            .collect();
        let b: Vec<Q> = drop_idx.iter().map(|&i| -self.offset[i].clone()).collect();
        let member = match rref::solve_system(&a, &b) {
            LinearOutcome::Inconsistent { .. } => return Ok(None),
            LinearOutcome::Solvable { particular, .. } => {
                combine(&self.offset, &particular, &self.translate.basis)
            }
        };
        let offset = keep_idx.iter().map(|&i| member[i].clone()).collect();
        Ok(Some(AffineSpace::new(offset, self.translate.contract(keep)?)))
    }

    /// Intersection with a vector space on the same columns.
    pub fn intersect_space(&self, space: &VectorSpace) -> Option<AffineSpace> {
        assert_eq!(self.columns(), space.columns());
        let normals = space.orthocomplement();
        // offset + λᵀB ⊥ every normal row.
        let a: Vec<Vec<Q>> = normals
            .basis
            .iter()
            .map(|n| self.translate.basis.iter().map(|row| dot(row, n)).collect())
            .collect();
        let b: Vec<Q> = normals.basis.iter().map(|n| -dot(&self.offset, n)).collect();
        match rref::solve_system(&a, &b) {
            LinearOutcome::Inconsistent { .. } => None,
            LinearOutcome::Solvable { particular, .. } => {
                let member = combine(&self.offset, &particular, &self.translate.basis);
                Some(AffineSpace::new(member, self.translate.intersect(space)))
            }
        }
    }

    /// Minkowski sum with a vector space on the same columns.
    pub fn plus_space(&self, space: &VectorSpace) -> AffineSpace {
        assert_eq!(self.columns(), space.columns());
        AffineSpace::new(self.offset.clone(), self.translate.sum(space))
    }

    /// Direct sum of affine spaces on disjoint columns.
    pub fn direct_sum(&self, other: &AffineSpace) -> Result<AffineSpace, ColError> {
        let translate = self.translate.direct_sum(&other.translate)?;
        let mut values: BTreeMap<&Label, &Q> =
            self.columns().iter().zip(&self.offset).collect();
        values.extend(other.columns().iter().zip(&other.offset));
        let offset = translate.columns.iter().map(|l| values[l].clone()).collect();
        Ok(AffineSpace::new(offset, translate))
    }

    pub fn negate_on(&self, cols: &BTreeSet<Label>) -> Result<AffineSpace, ColError> {
        let indices = self.translate.subset_indices(cols)?;
        let mut offset = self.offset.clone();
        for &i in &indices {
            offset[i] = -offset[i].clone();
        }
        Ok(AffineSpace::new(offset, self.translate.negate_on(cols)?))
    }

    pub fn relabel(&self, map: impl Fn(&Label) -> Label) -> Result<AffineSpace, ColError> {
        let translate = self.translate.relabel(&map)?;
        let mut pairs: Vec<(Label, Q)> = self
            .columns()
            .iter()
            .zip(&self.offset)
            .map(|(l, x)| (map(l), x.clone()))
            .collect();
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        let offset = pairs.into_iter().map(|(_, x)| x).collect();
        Ok(AffineSpace::new(offset, translate))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "labels": self.columns().iter().map(Label::to_string).collect::<Vec<_>>(),
            "offset": self.offset.iter().map(format_q).collect::<Vec<_>>(),
            "basis": self
                .translate
                .basis
                .iter()
                .map(|row| row.iter().map(format_q).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}

/// Matched composition of affine spaces; `None` is the void result, which
/// happens exactly when the offsets disagree on the shared columns modulo
/// the sum of the two restricted translates.
pub fn affine_matched(a1: &AffineSpace, a2: &AffineSpace) -> Option<AffineSpace> {
    compose_affine(a1, a2, true)
}

/// Skewed composition of affine spaces.
pub fn affine_skewed(a1: &AffineSpace, a2: &AffineSpace) -> Option<AffineSpace> {
    compose_affine(a1, a2, false)
}

fn compose_affine(a1: &AffineSpace, a2: &AffineSpace, matched: bool) -> Option<AffineSpace> {
    let shared: BTreeSet<Label> =
        a1.column_set().intersection(&a2.column_set()).cloned().collect();
    let a2 = if matched { a2.clone() } else { a2.negate_on(&shared).expect("shared ⊆ columns") };
    let idx1 = a1.translate.subset_indices(&shared).expect("shared ⊆ columns");
    let idx2 = a2.translate.subset_indices(&shared).expect("shared ⊆ columns");
    // Find members m1 ∈ A1, m2 ∈ A2 with m1 = m2 on the shared columns:
    // λᵀ B1|shared − σᵀ B2|shared = (offset2 − offset1)|shared.
    let r1 = a1.translate.basis.len();
    let r2 = a2.translate.basis.len();
    let a: Vec<Vec<Q>> = idx1
        .iter()
        .zip(&idx2)
        .map(|(&i1, &i2)| {
            let mut row: Vec<Q> = a1.translate.basis.iter().map(|b| b[i1].clone()).collect();
            row.extend(a2.translate.basis.iter().map(|b| -b[i2].clone()));
            row
        })
        .collect();
    let b: Vec<Q> = idx1
        .iter()
        .zip(&idx2)
        .map(|(&i1, &i2)| &a2.offset[i2] - &a1.offset[i1])
        .collect();
    let coeffs = match rref::solve_system(&a, &b) {
        LinearOutcome::Inconsistent { .. } => return None,
        LinearOutcome::Solvable { particular, .. } => particular,
    };
    let m1 = combine(&a1.offset, &coeffs[..r1], &a1.translate.basis);
    let m2 = combine(&a2.offset, &coeffs[r1..r1 + r2], &a2.translate.basis);
    let translate = a1.translate.matched(&a2.translate);
    let mut values: BTreeMap<&Label, Q> = BTreeMap::new();
    for (l, x) in a1.columns().iter().zip(&m1) {
        values.insert(l, x.clone());
    }
    for (l, x) in a2.columns().iter().zip(&m2) {
        values.insert(l, x.clone());
    }
    let offset = translate.columns.iter().map(|l| values[l].clone()).collect();
    Some(AffineSpace::new(offset, translate))
}

fn combine(base: &[Q], coeffs: &[Q], rows: &[Vec<Q>]) -> Vec<Q> {
    let mut out = base.to_vec();
    for (c, row) in coeffs.iter().zip(rows) {
        if !c.is_zero() {
            for (o, r) in out.iter_mut().zip(row) {
                let delta = c * r;
                *o = &*o + delta;
            }
        }
    }
    out
}

pub(crate) fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// A family of affine spaces in which no label occurs in more than two
/// members, so n-ary matched and skewed composition are well defined and
/// independent of bracketing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssocFamily {
    members: Vec<AffineSpace>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("label `{0}` occurs in more than two members")]
    OverSharedLabel(Label),
}

impl AssocFamily {
    pub fn new(members: Vec<AffineSpace>) -> Result<Self, FamilyError> {
        let mut counts: BTreeMap<Label, usize> = BTreeMap::new();
        for m in &members {
            for l in m.columns() {
                *counts.entry(l.clone()).or_default() += 1;
            }
        }
        if let Some((l, _)) = counts.into_iter().find(|(_, c)| *c > 2) {
            return Err(FamilyError::OverSharedLabel(l));
        }
        Ok(AssocFamily { members })
    }

    pub fn of_spaces(spaces: Vec<VectorSpace>) -> Result<Self, FamilyError> {
        AssocFamily::new(spaces.into_iter().map(AffineSpace::from_space).collect())
    }

    pub fn members(&self) -> &[AffineSpace] {
        &self.members
    }

    pub fn translates(&self) -> Vec<VectorSpace> {
        self.members.iter().map(|m| m.translate().clone()).collect()
    }

    /// Labels that occur in exactly one member.
    pub fn outer_labels(&self) -> BTreeSet<Label> {
        let mut counts: BTreeMap<Label, usize> = BTreeMap::new();
        for m in &self.members {
            for l in m.columns() {
                *counts.entry(l.clone()).or_default() += 1;
            }
        }
        counts.into_iter().filter(|(_, c)| *c == 1).map(|(l, _)| l).collect()
    }

    /// n-ary matched composition `↔(H)` by left fold; associativity of the
    /// family makes the fold order irrelevant.
    pub fn matched(&self) -> Option<AffineSpace> {
        let mut iter = self.members.iter();
        let first = iter.next()?.clone();
        iter.try_fold(first, |acc, next| affine_matched(&acc, next))
    }

    /// n-ary skewed composition `⇌(H)`, computed as `↔` of the family with
    /// later-shared columns negated member by member.
    pub fn skewed(&self) -> Option<AffineSpace> {
        self.hat().matched()
    }

    /// The companion family with each member negated on the columns it
    /// shares with later members.
    pub fn hat(&self) -> AssocFamily {
        let mut seen_later: Vec<BTreeSet<Label>> = vec![BTreeSet::new(); self.members.len()];
        for i in 0..self.members.len() {
            let later: BTreeSet<Label> = self.members[i + 1..]
                .iter()
                .flat_map(|m| m.columns().iter().cloned())
                .collect();
            seen_later[i] = self.members[i]
                .column_set()
                .intersection(&later)
                .cloned()
                .collect();
        }
        let members = self
            .members
            .iter()
            .zip(&seen_later)
            .map(|(m, negate)| m.negate_on(negate).expect("own columns"))
            .collect();
        AssocFamily { members }
    }
}

#[cfg(test)]
mod tests;

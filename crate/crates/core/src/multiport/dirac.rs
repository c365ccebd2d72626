//! Dirac device characteristics (gyrators, ideal transformers, graph
//! topology spaces) and the column-independence sufficiency test for
//! generalized multiports built on them.

use std::collections::BTreeSet;

use num::{One, Zero};
use thiserror::Error;

use crate::colspace::VectorSpace;
use crate::label::{Decoration, Label};
use crate::ratio::Q;

use super::{DeviceSpec, Roles};

/// Is the space equal to its own orthocomplement after swapping the primed
/// and double-primed copies?
pub fn dirac_check(space: &VectorSpace) -> bool {
    let closed_under_swap = space
        .columns()
        .iter()
        .all(|l| {
            matches!(l.decoration(), Decoration::Prime | Decoration::DoublePrime)
                && space.column_set().contains(&l.swapped())
        });
    if !closed_under_swap {
        return false;
    }
    let swapped = space.relabel(Label::swapped).expect("swap is injective");
    swapped == space.orthocomplement()
}

/// A violating vector when the Dirac condition fails: a member of the
/// swapped space outside the orthocomplement, or vice versa.
pub fn dirac_witness(space: &VectorSpace) -> Option<(Vec<Label>, Vec<Q>)> {
    if dirac_check(space) {
        return None;
    }
    let labels: Vec<Label> = space.columns().to_vec();
    let ortho = space.orthocomplement();
    match space.relabel(Label::swapped) {
        Ok(swapped) if swapped.columns() == space.columns() => {
            for row in swapped.basis() {
                if !ortho.contains(row) {
                    return Some((labels, row.to_vec()));
                }
            }
            for row in ortho.basis() {
                if !swapped.contains(row) {
                    return Some((labels, row.to_vec()));
                }
            }
            None
        }
        // Columns are not paired copies; report the first basis vector.
        _ => space.basis().first().map(|row| (labels, row.to_vec())),
    }
}

/// The gyrator characteristic on two edges: `v₁ = −k·i₂`, `v₂ = k·i₁`.
pub fn gyrator(e1: &Label, e2: &Label, k: &Q) -> VectorSpace {
    let labels = [e1.primed(), e2.primed(), e1.doubled(), e2.doubled()];
    let rows = vec![
        vec![Q::zero(), k.clone(), Q::one(), Q::zero()],
        vec![-k.clone(), Q::zero(), Q::zero(), Q::one()],
    ];
    VectorSpace::from_rows(&labels, rows).expect("distinct edge labels")
}

/// The ideal transformer characteristic: `v₁ = n·v₂`, `i₂ = −n·i₁`.
pub fn ideal_transformer(e1: &Label, e2: &Label, n: &Q) -> VectorSpace {
    let labels = [e1.primed(), e2.primed(), e1.doubled(), e2.doubled()];
    let rows = vec![
        vec![n.clone(), Q::one(), Q::zero(), Q::zero()],
        vec![Q::zero(), Q::zero(), Q::one(), -n.clone()],
    ];
    VectorSpace::from_rows(&labels, rows).expect("distinct edge labels")
}

#[derive(Debug, Error)]
pub enum DiracError {
    #[error("the space is not Dirac")]
    NotDirac { witness: Option<(Vec<Label>, Vec<Q>)> },
}

/// Column-independence report for a generalized multiport `(V¹, A_{S'S"})`
/// with a Dirac topological space V¹.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Purslow2Report {
    /// `Y₁' ∪ E'` and `Y₂" ∪ J"` independent in V¹ (necessary for
    /// rigidity).
    pub necessity: bool,
    /// `Z₁' ∪ Y₁' ∪ E'` extends to a column base of `V¹ ∘ S'P'` and
    /// `Z₂" ∪ Y₂" ∪ J"` is independent in `V¹ × S"P"`.
    pub condition_a: bool,
    /// The primed/double-primed mirror of condition (a).
    pub condition_b: bool,
    /// Either sufficiency condition holds; the generalized multiport is
    /// then rigid.
    pub sufficient: bool,
}

/// Check the topological sufficiency conditions for a Dirac-backed
/// generalized multiport whose device characteristic is built from the
/// given devices.
pub fn purslow2_check(
    v1: &VectorSpace,
    devices: &[DeviceSpec],
) -> Result<Purslow2Report, DiracError> {
    if !dirac_check(v1) {
        return Err(DiracError::NotDirac { witness: dirac_witness(v1) });
    }
    let roles = Roles::from_devices(devices).expect("validated devices");
    let primed: BTreeSet<Label> = v1
        .columns()
        .iter()
        .filter(|l| l.decoration() == Decoration::Prime)
        .cloned()
        .collect();
    let doubled: BTreeSet<Label> = v1
        .columns()
        .iter()
        .filter(|l| l.decoration() == Decoration::DoublePrime)
        .cloned()
        .collect();

    let necessity_primed: BTreeSet<Label> = roles
        .current_controls
        .union(&roles.vsources)
        .map(Label::primed)
        .collect();
    let necessity_doubled: BTreeSet<Label> = roles
        .voltage_controls
        .union(&roles.isources)
        .map(Label::doubled)
        .collect();
    let necessity = v1.is_independent(&necessity_primed).expect("device columns in v1")
        && v1.is_independent(&necessity_doubled).expect("device columns in v1");

    let voltage_like_primed: BTreeSet<Label> =
        roles.voltage_like().iter().map(Label::primed).collect();
    let current_like_doubled: BTreeSet<Label> =
        roles.current_like().iter().map(Label::doubled).collect();
    let on_primed = v1.restrict(&primed).expect("own columns");
    let on_doubled = v1.restrict(&doubled).expect("own columns");
    let in_primed = v1.contract(&primed).expect("own columns");
    let in_doubled = v1.contract(&doubled).expect("own columns");

    let condition_a = on_primed.is_independent(&voltage_like_primed).expect("subset")
        && in_doubled.is_independent(&current_like_doubled).expect("subset");
    let condition_b = on_doubled.is_independent(&current_like_doubled).expect("subset")
        && in_primed.is_independent(&voltage_like_primed).expect("subset");

    Ok(Purslow2Report {
        necessity,
        condition_a,
        condition_b,
        sufficient: condition_a || condition_b,
    })
}

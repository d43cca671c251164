use serde::Serialize;

use super::{ElementSubset, FiniteGroup};
use crate::error::{Error, Result};

/// `⟨S⟩`: the smallest superset of `S` closed under multiplication.
///
/// In a finite group this is the generated subgroup, since every element
/// has a positive power equal to its inverse.
pub fn closure(group: &FiniteGroup, set: &ElementSubset) -> ElementSubset {
    let mut mask = set.mask(group.order());
    let mut queue: Vec<usize> = set.members().to_vec();
    while let Some(x) = queue.pop() {
        for s in set.iter() {
            let y = group.mul(x, s);
            if !mask[y] {
                mask[y] = true;
                queue.push(y);
            }
        }
    }
    ElementSubset::from_mask(&mask)
}

/// `N_G(S) = {g : g^-1 S g = S}`.
pub fn normalizer(group: &FiniteGroup, set: &ElementSubset) -> ElementSubset {
    let mask = set.mask(group.order());
    let members: Vec<usize> = group
        .elements()
        .filter(|&g| set.iter().all(|s| mask[group.conjugate(s, g)]))
        .collect();
    // g^-1 S g ⊆ S with |g^-1 S g| = |S| is equality.
    ElementSubset::from_sorted(members)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DoubleCosetDecomposition {
    pub left: ElementSubset,
    pub right: ElementSubset,
    /// Smallest element index of each coset, ascending.
    pub representatives: Vec<usize>,
    pub cosets: Vec<ElementSubset>,
}

impl DoubleCosetDecomposition {
    /// Position of the coset containing `g`.
    pub fn coset_of(&self, g: usize) -> usize {
        self.cosets
            .iter()
            .position(|c| c.contains(g))
            .expect("double cosets partition the group")
    }

    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }
}

/// Partition of `G` into double cosets `A s B`.
pub fn double_cosets(
    group: &FiniteGroup,
    left: &ElementSubset,
    right: &ElementSubset,
) -> Result<DoubleCosetDecomposition> {
    for (side, sub) in [("left", left), ("right", right)] {
        if !sub.is_subgroup(group) {
            return Err(Error::InvalidParameter(format!(
                "{side} set {} is not a subgroup",
                sub.display(group)
            )));
        }
    }
    let n = group.order();
    let mut assigned = vec![false; n];
    let mut representatives = Vec::new();
    let mut cosets = Vec::new();
    for s in 0..n {
        if assigned[s] {
            continue;
        }
        let mut mask = vec![false; n];
        for a in left.iter() {
            let as_ = group.mul(a, s);
            for b in right.iter() {
                mask[group.mul(as_, b)] = true;
            }
        }
        for (x, &m) in mask.iter().enumerate() {
            if m {
                assigned[x] = true;
            }
        }
        representatives.push(s);
        cosets.push(ElementSubset::from_mask(&mask));
    }
    Ok(DoubleCosetDecomposition {
        left: left.clone(),
        right: right.clone(),
        representatives,
        cosets,
    })
}

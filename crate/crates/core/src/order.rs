//! Irreducible connected parts and the connectivity order.
//!
//! A nonempty connected set is irreducible when the other connected sets do
//! not generate it. The irreducible parts ordered by inclusion form the
//! generic graph of the space. Its height `h` is the size of a longest chain;
//! the height as an ordinal is `h + 1` (the chains of sizes `0..=h`), and the
//! connectivity order is the number of chain sizes `α` with `α + 2 ≤ h + 1`,
//! i.e. `max(h - 1, 0)`. Every order computed here is a finite ordinal.

use std::sync::Arc;

use crate::error::Result;
use crate::foliation::Foliation;
use crate::space::{generated_contains, ConnectivitySpace};
use crate::subset::{GroundSet, Subset};

/// Irreducible parts of a materialized structure.
///
/// `kappa` must be sorted canonically (by cardinality first). A connected set
/// with at least two points is reducible iff the irreducible parts strictly
/// inside it chain together to cover it; parts of equal size cannot help, so
/// one pass in cardinality order suffices.
pub(crate) fn irreducible_parts_of(kappa: &[Subset]) -> Vec<Subset> {
    let mut kept: Vec<Subset> = Vec::new();
    for &k in kappa {
        match k.len() {
            0 => {}
            1 => kept.push(k),
            _ => {
                if !generated_contains(&kept, false, k) {
                    kept.push(k);
                }
            }
        }
    }
    kept
}

/// Irreducible connected parts ordered by inclusion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericGraph {
    ground: Arc<GroundSet>,
    elements: Vec<Subset>,
}

impl GenericGraph {
    /// Builds a poset from arbitrary sets ordered by inclusion.
    pub fn from_elements(ground: Arc<GroundSet>, mut elements: Vec<Subset>) -> Self {
        crate::subset::normalize_family(&mut elements);
        GenericGraph { ground, elements }
    }

    pub fn ground(&self) -> &Arc<GroundSet> {
        &self.ground
    }

    /// Elements in canonical order.
    pub fn elements(&self) -> &[Subset] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Cover relation: pairs `(i, j)` with `elements[i] ⊊ elements[j]` and
    /// nothing in between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let e = &self.elements;
        let below = |i: usize, j: usize| i != j && e[i].is_subset_of(e[j]);
        let mut out = Vec::new();
        for j in 0..e.len() {
            for i in 0..e.len() {
                if below(i, j) && !(0..e.len()).any(|m| below(i, m) && below(m, j)) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Size of a longest chain.
    pub fn height(&self) -> usize {
        poset_height(&self.elements)
    }
}

/// Size of a longest chain of sets under strict inclusion.
///
/// Dynamic programming over the inclusion DAG; a strict subset has smaller
/// cardinality, so cardinality order is a topological order.
pub fn poset_height(elements: &[Subset]) -> usize {
    let mut sorted = elements.to_vec();
    sorted.sort_by_key(|s| s.len());
    let mut longest = vec![1usize; sorted.len()];
    for j in 0..sorted.len() {
        for i in 0..j {
            if sorted[i] != sorted[j] && sorted[i].is_subset_of(sorted[j]) {
                longest[j] = longest[j].max(longest[i] + 1);
            }
        }
    }
    longest.into_iter().max().unwrap_or(0)
}

/// Generic graph of a space. Requires n ≤ 16.
pub fn irreducibles(space: &ConnectivitySpace) -> Result<GenericGraph> {
    let kappa = space.connected_sets()?;
    Ok(GenericGraph {
        ground: space.ground().clone(),
        elements: irreducible_parts_of(&kappa),
    })
}

/// Connectivity order of a space, `max(h - 1, 0)` for generic-graph height
/// `h`. Requires n ≤ 16.
pub fn connectivity_order(space: &ConnectivitySpace) -> Result<usize> {
    Ok(irreducibles(space)?.height().saturating_sub(1))
}

/// Connectivity order of the induced leaf space. Requires at most 16 leaves.
pub fn foliation_order(z: &Foliation) -> Result<usize> {
    let leaf_space = z.induced_leaf_space()?.materialize()?;
    connectivity_order(&leaf_space)
}

//! Definition-level reference implementations.
//!
//! Everything here works on explicitly materialized structures and follows
//! the definitions literally: closures are fixpoints of "union two members
//! sharing a point", irreducibility is non-membership in the closure of the
//! other members, chains are searched exhaustively. These routines back the
//! property suites and the CLI's `--oracle` cross-check; they are guarded to
//! small carriers and make no attempt at speed.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::space::{is_morphism, ConnectivitySpace, SetMap};
use crate::subset::{normalize_family, GroundSet, Subset, MATERIALIZE_LIMIT};

/// Largest carrier accepted by the irreducibility and order oracles.
pub const DEFINITION_LIMIT: usize = 10;

/// Largest hom-set scan `enumerate_morphisms` performs.
pub const MORPHISM_BUDGET: u64 = 1_000_000;

/// Largest carrier for which every structure is enumerated.
pub const ENUMERATION_LIMIT: usize = 4;

/// A connectivity structure listed in extenso.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaterializedStructure {
    ground: Arc<GroundSet>,
    kappa: Vec<Subset>,
}

impl MaterializedStructure {
    pub fn ground(&self) -> &Arc<GroundSet> {
        &self.ground
    }

    /// Connected sets, canonically sorted, `∅` first.
    pub fn kappa(&self) -> &[Subset] {
        &self.kappa
    }

    pub fn contains(&self, a: Subset) -> bool {
        self.kappa.binary_search(&a).is_ok()
    }

    pub fn is_integral(&self) -> bool {
        (0..self.ground.len()).all(|i| self.contains(Subset::singleton(i)))
    }

    /// Same structure as a space generated by its own members.
    pub fn to_space(&self) -> ConnectivitySpace {
        ConnectivitySpace::generated(self.ground.clone(), self.kappa.iter().copied(), false)
            .expect("members fit the carrier")
    }

    /// Maximal nonempty connected subsets of `a`.
    pub fn components(&self, a: Subset) -> Vec<Subset> {
        let inside: Vec<Subset> = self
            .kappa
            .iter()
            .copied()
            .filter(|k| !k.is_empty() && k.is_subset_of(a))
            .collect();
        let mut out: Vec<Subset> = inside
            .iter()
            .copied()
            .filter(|&k| !inside.iter().any(|&m| m != k && k.is_subset_of(m)))
            .collect();
        normalize_family(&mut out);
        out
    }
}

fn guard(n: usize, limit: usize, what: &'static str) -> Result<()> {
    if n > limit {
        Err(Error::SizeGuard {
            what,
            limit,
            actual: n,
        })
    } else {
        Ok(())
    }
}

/// Least family containing `∅`, the generators, the singletons when
/// `integral`, and closed under the union of two members sharing a point.
pub fn closure(
    generators: &[Subset],
    integral: bool,
    ground: &Arc<GroundSet>,
) -> Result<MaterializedStructure> {
    guard(ground.len(), MATERIALIZE_LIMIT, "oracle closure carrier")?;
    let mut members: Vec<u64> = Vec::new();
    let mut seen: HashSet<u64> = HashSet::new();
    let mut push = |bits: u64, members: &mut Vec<u64>| {
        if seen.insert(bits) {
            members.push(bits);
        }
    };
    push(0, &mut members);
    for &g in generators {
        ground.check(g)?;
        push(g.bits(), &mut members);
    }
    if integral {
        for i in 0..ground.len() {
            push(1 << i, &mut members);
        }
    }
    // Each member is joined with every earlier one once; later arrivals
    // are joined when their turn comes, so all pairs are eventually seen.
    let mut i = 0;
    while i < members.len() {
        let a = members[i];
        for j in 0..i {
            let b = members[j];
            if a & b != 0 {
                push(a | b, &mut members);
            }
        }
        i += 1;
    }
    let mut kappa: Vec<Subset> = members.into_iter().map(Subset::from_bits).collect();
    normalize_family(&mut kappa);
    Ok(MaterializedStructure {
        ground: ground.clone(),
        kappa,
    })
}

/// Membership in `closure(generators, integral, ground)`.
pub fn closure_membership(
    generators: &[Subset],
    integral: bool,
    ground: &Arc<GroundSet>,
    a: Subset,
) -> Result<bool> {
    ground.check(a)?;
    Ok(closure(generators, integral, ground)?.contains(a))
}

/// Materializes a space by querying membership on every subset.
pub fn materialize(space: &ConnectivitySpace) -> Result<MaterializedStructure> {
    Ok(MaterializedStructure {
        ground: space.ground().clone(),
        kappa: space.connected_sets()?,
    })
}

/// Closure of a space's own generating family.
pub fn closure_of_space(space: &ConnectivitySpace) -> Result<MaterializedStructure> {
    closure(&space.generators()?, space.is_integral(), space.ground())
}

/// Morphism check over every connected set of `x`.
pub fn is_morphism_by_definition(
    f: &SetMap,
    x: &ConnectivitySpace,
    y: &ConnectivitySpace,
) -> Result<bool> {
    let kx = closure_of_space(x)?;
    let ky = closure_of_space(y)?;
    Ok(kx.kappa().iter().all(|&a| ky.contains(f.image(a))))
}

/// Every connective morphism `x → y`, images in lexicographic order.
pub fn enumerate_morphisms(x: &ConnectivitySpace, y: &ConnectivitySpace) -> Result<Vec<SetMap>> {
    let maps = all_maps(x.ground(), y.ground())?;
    let mut out = Vec::new();
    for f in maps {
        if is_morphism(&f, x, y)? {
            out.push(f);
        }
    }
    Ok(out)
}

/// Every set map between two carriers, images in lexicographic order.
pub fn all_maps(source: &Arc<GroundSet>, target: &Arc<GroundSet>) -> Result<Vec<SetMap>> {
    let (n, m) = (source.len() as u32, target.len() as u64);
    let count = m.checked_pow(n).filter(|&c| c <= MORPHISM_BUDGET);
    let Some(count) = count else {
        return Err(Error::SizeGuard {
            what: "hom-set scan",
            limit: MORPHISM_BUDGET as usize,
            actual: usize::MAX,
        });
    };
    let mut out = Vec::with_capacity(count as usize);
    let mut images = vec![0usize; n as usize];
    for _ in 0..count {
        out.push(SetMap::new(source.clone(), target.clone(), images.clone())?);
        for slot in images.iter_mut().rev() {
            *slot += 1;
            if *slot < m as usize {
                break;
            }
            *slot = 0;
        }
    }
    Ok(out)
}

/// Nonempty connected sets not generated (non-integrally) by the others.
pub fn irreducibles_by_definition(space: &ConnectivitySpace) -> Result<Vec<Subset>> {
    guard(space.len(), DEFINITION_LIMIT, "oracle irreducibility carrier")?;
    let kappa = closure_of_space(space)?;
    let mut out = Vec::new();
    for &k in kappa.kappa() {
        if k.is_empty() {
            continue;
        }
        let others: Vec<Subset> = kappa.kappa().iter().copied().filter(|&m| m != k).collect();
        if !closure(&others, false, space.ground())?.contains(k) {
            out.push(k);
        }
    }
    Ok(out)
}

/// Connectivity order from the definition: longest chain `h` of irreducible
/// parts found by exhaustive search, then `max(h - 1, 0)`.
pub fn order_by_definition(space: &ConnectivitySpace) -> Result<usize> {
    let parts = irreducibles_by_definition(space)?;
    let mut memo = HashMap::new();
    let h = parts
        .iter()
        .map(|&p| longest_chain_from(p, &parts, &mut memo))
        .max()
        .unwrap_or(0);
    Ok(h.saturating_sub(1))
}

fn longest_chain_from(bottom: Subset, parts: &[Subset], memo: &mut HashMap<Subset, usize>) -> usize {
    if let Some(&h) = memo.get(&bottom) {
        return h;
    }
    let h = 1 + parts
        .iter()
        .filter(|&&p| p != bottom && bottom.is_subset_of(p))
        .map(|&p| longest_chain_from(p, parts, memo))
        .max()
        .unwrap_or(0);
    memo.insert(bottom, h);
    h
}

/// Every generator family on `n ≤ 4` points, paired with its integral flag.
///
/// Integral families range over sets of at least two points; non-integral
/// ones additionally choose which singletons to list.
pub fn generator_families(n: usize) -> Result<Vec<(Vec<Subset>, bool)>> {
    guard(n, ENUMERATION_LIMIT, "structure enumeration carrier")?;
    let full = Subset::full(n);
    let big: Vec<Subset> = full.subsets().filter(|s| s.len() >= 2).collect();
    let mut out = Vec::new();
    for pick in 0u64..(1 << big.len()) {
        let chosen: Vec<Subset> = Subset::from_bits(pick).iter().map(|i| big[i]).collect();
        out.push((chosen.clone(), true));
        for singles in full.subsets() {
            let mut gens = chosen.clone();
            gens.extend(singles.iter().map(Subset::singleton));
            out.push((gens, false));
        }
    }
    Ok(out)
}

/// Every connectivity structure on `n ≤ 4` points, deduplicated, in a stable
/// order.
pub fn enumerate_structures(
    ground: &Arc<GroundSet>,
    integral_only: bool,
) -> Result<Vec<MaterializedStructure>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (gens, integral) in generator_families(ground.len())? {
        if integral_only && !integral {
            continue;
        }
        let s = closure(&gens, integral, ground)?;
        if seen.insert(s.kappa.clone()) {
            out.push(s);
        }
    }
    Ok(out)
}

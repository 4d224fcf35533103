//! Connective representations.
//!
//! A representation `ρ: X ⇝ Y` sends each point of `X` to a nonempty subset
//! of `Y` such that the union of the images of any connected set of `X` is
//! connected in `Y`; equivalently it is a connective morphism from `X` into
//! the power space `P*(Y)`. With the unit `ε(x) = {x}` and the union
//! multiplication these arrows form the Kleisli category of a monad on
//! connectivity spaces.
//!
//! When the object is integral, images of points are connected and a
//! representation is a morphism into the integral power space; no separate
//! type is needed for that case.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::space::{is_morphism, require_same_carrier, Connectedness, ConnectivitySpace, SetMap, StructureRelation};
use crate::subset::{GroundSet, Subset};

/// Largest object on which `is_clear` quantifies over every subset.
pub const CLEAR_LIMIT: usize = 20;

/// Largest carrier whose power space may be materialized.
pub const POWER_LIMIT: usize = 4;

#[derive(Clone)]
pub struct Representation {
    object: ConnectivitySpace,
    space: ConnectivitySpace,
    images: Vec<Subset>,
}

impl Representation {
    /// Checks that every image is nonempty and that the union of the images
    /// of each generator of the object (and of each singleton, when the
    /// object is integral) is connected in `space`. This suffices: unions of
    /// overlapping sets have overlapping image unions.
    pub fn new(object: ConnectivitySpace, space: ConnectivitySpace, images: Vec<Subset>) -> Result<Self> {
        if images.len() != object.len() {
            return Err(Error::InvalidRepresentation(format!(
                "{} images for {} object points",
                images.len(),
                object.len()
            )));
        }
        for (x, &img) in images.iter().enumerate() {
            space.ground().check(img)?;
            if img.is_empty() {
                return Err(Error::InvalidRepresentation(format!(
                    "empty image for point `{}`",
                    object.ground().label(x)
                )));
            }
        }
        let rep = Representation {
            object,
            space,
            images,
        };
        for g in rep.object.generating_family()? {
            if !rep.space.contains_unchecked(rep.union_image(g)) {
                return Err(Error::InvalidRepresentation(format!(
                    "connected set {} has non-connected image {}",
                    rep.object.ground().format_subset(g),
                    rep.space.ground().format_subset(rep.union_image(g))
                )));
            }
        }
        Ok(rep)
    }

    /// The unit `ε_X: x ↦ {x}`.
    pub fn unit(x: &ConnectivitySpace) -> Self {
        Representation {
            object: x.clone(),
            space: x.clone(),
            images: (0..x.len()).map(Subset::singleton).collect(),
        }
    }

    pub fn object(&self) -> &ConnectivitySpace {
        &self.object
    }

    pub fn space(&self) -> &ConnectivitySpace {
        &self.space
    }

    pub fn images(&self) -> &[Subset] {
        &self.images
    }

    pub fn image(&self, point: usize) -> Subset {
        self.images[point]
    }

    /// `⋃_{x ∈ a} ρ(x)`.
    pub fn union_image(&self, a: Subset) -> Subset {
        a.iter().fold(Subset::EMPTY, |acc, x| acc.union(self.images[x]))
    }

    /// Images pairwise disjoint.
    pub fn is_distinct(&self) -> bool {
        let mut seen = Subset::EMPTY;
        for &img in &self.images {
            if img.meets(seen) {
                return false;
            }
            seen = seen.union(img);
        }
        true
    }

    /// Non-connected sets have non-connected image unions. Quantifies over
    /// every subset of the object, so the object is capped at 20 points.
    pub fn is_clear(&self) -> Result<bool> {
        if self.object.len() > CLEAR_LIMIT {
            return Err(Error::SizeGuard {
                what: "clarity check object",
                limit: CLEAR_LIMIT,
                actual: self.object.len(),
            });
        }
        Ok(self.object.ground().full().subsets().all(|a| {
            self.object.contains_unchecked(a) || !self.space.contains_unchecked(self.union_image(a))
        }))
    }

    /// Pairs `(p, q)` with `{p}` and `{q}` connected and `q ∈ ρ(p)`.
    pub fn points(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for p in 0..self.object.len() {
            if !self.object.contains_unchecked(Subset::singleton(p)) {
                continue;
            }
            for q in self.images[p].iter() {
                if self.space.contains_unchecked(Subset::singleton(q)) {
                    out.push((p, q));
                }
            }
        }
        out
    }
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ob = self.object.ground();
        let sp = self.space.ground();
        f.debug_map()
            .entries(
                self.images
                    .iter()
                    .enumerate()
                    .map(|(x, &img)| (ob.label(x), sp.format_subset(img))),
            )
            .finish()
    }
}

/// Whether a family of nonempty subsets is connected in `P*(space)`, i.e.
/// whether its union is connected.
pub fn pstar_membership(space: &ConnectivitySpace, family: &[Subset]) -> Result<bool> {
    let mut union = Subset::EMPTY;
    for &member in family {
        space.ground().check(member)?;
        if member.is_empty() {
            return Err(Error::Precondition("power-space members must be nonempty".into()));
        }
        union = union.union(member);
    }
    Ok(space.contains_unchecked(union))
}

struct PowerRule {
    base: ConnectivitySpace,
    members: Vec<Subset>,
}

impl Connectedness for PowerRule {
    fn is_connected(&self, family: Subset) -> bool {
        let union = family
            .iter()
            .fold(Subset::EMPTY, |acc, i| acc.union(self.members[i]));
        self.base.contains_unchecked(union)
    }

    fn name(&self) -> &'static str {
        "power space"
    }
}

/// `P*(x)` materialized: one point per nonempty subset of `x` (canonical
/// order), returned with the subset each point stands for. Requires n ≤ 4.
pub fn power_space(x: &ConnectivitySpace) -> Result<(ConnectivitySpace, Vec<Subset>)> {
    if x.len() > POWER_LIMIT {
        return Err(Error::SizeGuard {
            what: "power space base",
            limit: POWER_LIMIT,
            actual: x.len(),
        });
    }
    let mut members: Vec<Subset> = x.ground().full().subsets().filter(|s| !s.is_empty()).collect();
    members.sort_unstable();
    let ground = GroundSet::new(members.iter().map(|&m| x.ground().subset_label(m)))?.shared();
    let space = ConnectivitySpace::delegated(
        ground,
        PowerRule {
            base: x.clone(),
            members: members.clone(),
        },
    );
    Ok((space, members))
}

/// Kleisli composite `τ ⊙ ρ: x ↦ ⋃_{y ∈ ρ(x)} τ(y)`.
///
/// The space of `rho` and the object of `tau` must be the same space.
pub fn kleisli_compose(tau: &Representation, rho: &Representation) -> Result<Representation> {
    require_same_carrier(rho.space.ground(), tau.object.ground(), "kleisli middle carrier")?;
    if rho.space.compare(&tau.object)? != StructureRelation::Equal {
        return Err(Error::Precondition(
            "space of the inner representation differs from the object of the outer one".into(),
        ));
    }
    let images = rho.images.iter().map(|&img| tau.union_image(img)).collect();
    Representation::new(rho.object.clone(), tau.space.clone(), images)
}

/// A morphism of representations `(α, β): ρ → ρ'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepMorphism {
    pub alpha: SetMap,
    pub beta: SetMap,
}

impl RepMorphism {
    pub fn identity(rho: &Representation) -> Self {
        RepMorphism {
            alpha: SetMap::identity(rho.object.ground().clone()),
            beta: SetMap::identity(rho.space.ground().clone()),
        }
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &RepMorphism) -> Result<RepMorphism> {
        Ok(RepMorphism {
            alpha: self.alpha.then(&next.alpha)?,
            beta: self.beta.then(&next.beta)?,
        })
    }
}

/// Checks `α: ob(ρ) → ob(ρ')` and `β: sp(ρ) → sp(ρ')` are connective and
/// `β(ρ(a)) ⊆ ρ'(α(a))` for every point `a`.
pub fn validate_rep_morphism(
    alpha: SetMap,
    beta: SetMap,
    rho: &Representation,
    rho2: &Representation,
) -> Result<RepMorphism> {
    if !is_morphism(&alpha, &rho.object, &rho2.object)? {
        return Err(Error::InvalidRepMorphism("α is not connective".into()));
    }
    if !is_morphism(&beta, &rho.space, &rho2.space)? {
        return Err(Error::InvalidRepMorphism("β is not connective".into()));
    }
    if let Some(a) = first_inclusion_failure(&alpha, &beta, rho, rho2) {
        return Err(Error::InvalidRepMorphism(format!(
            "β(ρ({0})) is not inside ρ'(α({0}))",
            rho.object.ground().label(a)
        )));
    }
    Ok(RepMorphism { alpha, beta })
}

/// First point `a` with `β(ρ(a)) ⊄ ρ'(α(a))`.
pub(crate) fn first_inclusion_failure(
    alpha: &SetMap,
    beta: &SetMap,
    rho: &Representation,
    rho2: &Representation,
) -> Option<usize> {
    (0..rho.object.len())
        .find(|&a| !beta.image(rho.images[a]).is_subset_of(rho2.images[alpha.apply(a)]))
}

/// Whether `(α, β)` is a morphism `ρ → ρ'`, without error detail.
pub fn is_rep_morphism(
    alpha: &SetMap,
    beta: &SetMap,
    rho: &Representation,
    rho2: &Representation,
) -> Result<bool> {
    Ok(first_inclusion_failure(alpha, beta, rho, rho2).is_none()
        && is_morphism(alpha, &rho.object, &rho2.object)?
        && is_morphism(beta, &rho.space, &rho2.space)?)
}

fn fresh_label(base: &str, suffix: &str, taken: &mut HashSet<String>) -> String {
    let mut label = format!("{base}{suffix}");
    while taken.contains(&label) {
        label.push('\'');
    }
    taken.insert(label.clone());
    label
}

/// A clear and distinct representation of `x` in an integral space.
///
/// Connected points get one copy, non-connected points two; each point is
/// represented by its copies, and the space is the integral structure
/// generated by the copy sets of the generators of `x` and of its connected
/// points. Two copies of a non-connected point are only joined through a
/// generator, which is what keeps the representation clear.
pub fn canonical_representation(x: &ConnectivitySpace) -> Result<Representation> {
    if x.len() > CLEAR_LIMIT {
        return Err(Error::SizeGuard {
            what: "canonical representation object",
            limit: CLEAR_LIMIT,
            actual: x.len(),
        });
    }
    let mut taken: HashSet<String> = x.ground().labels().iter().cloned().collect();
    let mut labels = Vec::new();
    let mut images = Vec::with_capacity(x.len());
    for p in 0..x.len() {
        let label = x.ground().label(p);
        if x.contains_unchecked(Subset::singleton(p)) {
            images.push(Subset::singleton(labels.len()));
            labels.push(label.to_owned());
        } else {
            images.push(Subset::from_indices([labels.len(), labels.len() + 1]));
            labels.push(fresh_label(label, ".0", &mut taken));
            labels.push(fresh_label(label, ".1", &mut taken));
        }
    }
    let ground = GroundSet::new(labels)?.shared();
    let copies = |a: Subset| a.iter().fold(Subset::EMPTY, |acc, p| acc.union(images[p]));
    let generators: Vec<Subset> = x.generating_family()?.into_iter().map(copies).collect();
    let space = ConnectivitySpace::generated(ground, generators, true)?;
    let rep = Representation::new(x.clone(), space, images)?;
    if !rep.is_distinct() || !rep.is_clear()? {
        return Err(Error::InvalidRepresentation(
            "canonical construction failed its clarity/distinctness check".into(),
        ));
    }
    Ok(rep)
}

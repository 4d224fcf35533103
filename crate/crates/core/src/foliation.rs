//! Connective foliations.
//!
//! A foliation is one carrier with two structures: the internal one, whose
//! nonempty components are the leaves, and the external one. The induced leaf
//! space has the leaves as points, a set of leaves being connected when its
//! union is externally connected. `r_down` turns a foliation into the
//! representation of its leaf space by the leaves themselves; `phi` goes the
//! other way, and on regular foliations and clear distinct representations
//! with integral objects `r_down` is left adjoint to `phi(IDENTITY, IDENTITY)`.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::oracle::{all_maps, MORPHISM_BUDGET};
use crate::representation::{is_rep_morphism, validate_rep_morphism, RepMorphism, Representation, CLEAR_LIMIT};
use crate::space::{
    is_morphism, merge_blocks, require_same_carrier, Connectedness, ConnectivitySpace, SetMap,
};
use crate::subset::{GroundSet, Subset};

/// A carrier with an internal and an external connectivity structure.
#[derive(Clone)]
pub struct Foliation {
    internal: ConnectivitySpace,
    external: ConnectivitySpace,
}

impl Foliation {
    pub fn new(internal: ConnectivitySpace, external: ConnectivitySpace) -> Result<Self> {
        if require_same_carrier(internal.ground(), external.ground(), "foliation").is_err() {
            return Err(Error::InvalidFoliation(format!(
                "internal points {:?} differ from external points {:?}",
                internal.ground(),
                external.ground()
            )));
        }
        Ok(Foliation { internal, external })
    }

    pub fn ground(&self) -> &Arc<GroundSet> {
        self.internal.ground()
    }

    pub fn internal(&self) -> &ConnectivitySpace {
        &self.internal
    }

    pub fn external(&self) -> &ConnectivitySpace {
        &self.external
    }

    /// Every internally connected set is externally connected.
    pub fn is_regular(&self) -> Result<bool> {
        self.internal.is_finer_or_equal(&self.external)
    }

    /// Nonempty components of the internal structure, sorted canonically.
    pub fn leaves(&self) -> Result<Vec<Subset>> {
        self.internal.components(self.ground().full())
    }

    /// Union of the leaves.
    pub fn domain(&self) -> Result<Subset> {
        self.internal.present_part(self.ground().full())
    }

    pub fn induced_leaf_space(&self) -> Result<LeafSpace> {
        let leaves = self.leaves()?;
        let mut taken = HashSet::new();
        let labels: Vec<String> = leaves
            .iter()
            .map(|&f| {
                let mut label = self.ground().subset_label(f);
                while !taken.insert(label.clone()) {
                    label.push('\'');
                }
                label
            })
            .collect();
        Ok(LeafSpace {
            ground: GroundSet::new(labels)?.shared(),
            leaves,
            external: self.external.clone(),
        })
    }
}

impl fmt::Debug for Foliation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Foliation")
            .field("internal", &self.internal)
            .field("external", &self.external)
            .finish()
    }
}

/// Leaves of a foliation as points; a set of leaves is connected iff its
/// union is externally connected.
#[derive(Clone, Debug)]
pub struct LeafSpace {
    ground: Arc<GroundSet>,
    leaves: Vec<Subset>,
    external: ConnectivitySpace,
}

impl LeafSpace {
    /// Point labels, one per leaf (`{a,b}` style).
    pub fn ground(&self) -> &Arc<GroundSet> {
        &self.ground
    }

    pub fn leaves(&self) -> &[Subset] {
        &self.leaves
    }

    /// Union of the leaves indexed by `set`.
    pub fn union_of(&self, set: Subset) -> Subset {
        set.iter()
            .fold(Subset::EMPTY, |acc, i| acc.union(self.leaves[i]))
    }

    /// The leaf space as a delegated connectivity space.
    pub fn space(&self) -> ConnectivitySpace {
        ConnectivitySpace::delegated(
            self.ground.clone(),
            LeafRule {
                leaves: self.leaves.clone(),
                external: self.external.clone(),
            },
        )
    }

    /// The leaf space with explicit generators. At most 16 leaves.
    pub fn materialize(&self) -> Result<ConnectivitySpace> {
        self.space().to_generated()
    }
}

struct LeafRule {
    leaves: Vec<Subset>,
    external: ConnectivitySpace,
}

impl Connectedness for LeafRule {
    fn is_connected(&self, set: Subset) -> bool {
        let union = set
            .iter()
            .fold(Subset::EMPTY, |acc, i| acc.union(self.leaves[i]));
        self.external.contains_unchecked(union)
    }

    fn name(&self) -> &'static str {
        "induced leaf space"
    }
}

pub fn leaves(z: &Foliation) -> Result<Vec<Subset>> {
    z.leaves()
}

pub fn domain_of(z: &Foliation) -> Result<Subset> {
    z.domain()
}

pub fn induced_leaf_space(z: &Foliation) -> Result<LeafSpace> {
    z.induced_leaf_space()
}

/// Connective for both the internal and the external structures.
pub fn is_foliation_morphism(f: &SetMap, z: &Foliation, z2: &Foliation) -> Result<bool> {
    Ok(is_morphism(f, &z.internal, &z2.internal)? && is_morphism(f, &z.external, &z2.external)?)
}

/// A foliation morphism whose direct image of each leaf is a whole leaf.
pub fn is_strict(f: &SetMap, z: &Foliation, z2: &Foliation) -> Result<bool> {
    if !is_foliation_morphism(f, z, z2)? {
        return Ok(false);
    }
    let targets: HashSet<Subset> = z2.leaves()?.into_iter().collect();
    Ok(z.leaves()?.into_iter().all(|leaf| targets.contains(&f.image(leaf))))
}

/// Representation of the induced leaf space in the external space, each
/// leaf standing for itself. Always clear and distinct; re-checked when the
/// leaf count allows.
pub fn r_down(z: &Foliation) -> Result<Representation> {
    let leaf_space = z.induced_leaf_space()?;
    let rep = Representation::new(
        leaf_space.space(),
        z.external.clone(),
        leaf_space.leaves.clone(),
    )?;
    if rep.object().len() <= CLEAR_LIMIT && !(rep.is_distinct() && rep.is_clear()?) {
        return Err(Error::InvalidRepresentation(
            "leaf representation failed its clarity/distinctness check".into(),
        ));
    }
    Ok(rep)
}

/// Image of a foliation morphism: leaves go to the leaf containing their
/// image, and the carrier map is kept as is.
pub fn r_down_on_morphism(f: &SetMap, z: &Foliation, z2: &Foliation) -> Result<RepMorphism> {
    if !is_foliation_morphism(f, z, z2)? {
        return Err(Error::Precondition("map is not a foliation morphism".into()));
    }
    let source = r_down(z)?;
    let target = r_down(z2)?;
    let target_leaves = target.images();
    let mut alpha = Vec::with_capacity(source.images().len());
    for &leaf in source.images() {
        let image = f.image(leaf);
        let containing = target_leaves
            .iter()
            .position(|&l| image.is_subset_of(l))
            .ok_or_else(|| Error::Precondition("leaf image lies in no leaf".into()))?;
        alpha.push(containing);
    }
    let alpha = SetMap::new(
        source.object().ground().clone(),
        target.object().ground().clone(),
        alpha,
    )?;
    let beta = SetMap::new(
        source.space().ground().clone(),
        target.space().ground().clone(),
        f.images().to_vec(),
    )?;
    validate_rep_morphism(alpha, beta, &source, &target)
}

/// Functorial structures, ordered `Desintegrated ⊑ Identity ⊑ Coarse`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FunctorialStructure {
    /// Only the empty set is connected.
    Desintegrated,
    /// The structure of the space itself.
    Identity,
    /// Every subset is connected.
    Coarse,
}

impl FunctorialStructure {
    pub fn code(self) -> char {
        match self {
            FunctorialStructure::Desintegrated => 'd',
            FunctorialStructure::Identity => 'k',
            FunctorialStructure::Coarse => 'g',
        }
    }

    pub fn from_code(code: &str) -> Option<Self> {
        match code {
            "d" => Some(FunctorialStructure::Desintegrated),
            "k" => Some(FunctorialStructure::Identity),
            "g" => Some(FunctorialStructure::Coarse),
            _ => None,
        }
    }
}

/// Internal structure of `phi`: generated (without singletons) by, for each
/// image `T = ρ(a)`, the subsets of `T` that are connected for the structure
/// chosen for `a`.
struct PhiRule {
    space: ConnectivitySpace,
    sources: Vec<(Subset, FunctorialStructure)>,
}

impl PhiRule {
    /// Overlap blocks of the generators lying inside `a`. Per source, the
    /// generators inside `a` chain into: nothing, the components of `a ∩ T`,
    /// or `a ∩ T` itself.
    fn blocks(&self, a: Subset) -> Vec<Subset> {
        let mut blocks = Vec::new();
        for &(t, gamma) in &self.sources {
            let trace = a.intersection(t);
            if trace.is_empty() {
                continue;
            }
            match gamma {
                FunctorialStructure::Desintegrated => {}
                FunctorialStructure::Identity => blocks.extend(
                    self.space
                        .components_unchecked(trace)
                        .expect("phi space has explicit generators"),
                ),
                FunctorialStructure::Coarse => blocks.push(trace),
            }
        }
        merge_blocks(blocks)
    }
}

impl Connectedness for PhiRule {
    fn is_connected(&self, a: Subset) -> bool {
        let blocks = self.blocks(a);
        a.is_empty() || blocks == [a]
    }

    fn components(&self, a: Subset) -> Result<Option<Vec<Subset>>> {
        Ok(Some(self.blocks(a)))
    }

    fn name(&self) -> &'static str {
        "phi internal structure"
    }
}

/// Foliation on the space of `rho`: external structure of the space,
/// internal structure generated inside each image, using `gamma1` for images
/// of connected points and `gamma0` for the others.
pub fn phi(
    gamma0: FunctorialStructure,
    gamma1: FunctorialStructure,
    rho: &Representation,
) -> Result<Foliation> {
    if gamma0 > gamma1 {
        return Err(Error::Precondition(format!(
            "functorial structures out of order: {gamma0:?} is coarser than {gamma1:?}"
        )));
    }
    let sources: Vec<(Subset, FunctorialStructure)> = (0..rho.object().len())
        .map(|a| {
            let gamma = if rho.object().contains_unchecked(Subset::singleton(a)) {
                gamma1
            } else {
                gamma0
            };
            (rho.image(a), gamma)
        })
        .collect();
    let space = if rho.space().is_delegated()
        && sources.iter().any(|&(_, g)| g == FunctorialStructure::Identity)
    {
        rho.space().to_generated()?
    } else {
        rho.space().clone()
    };
    let internal = ConnectivitySpace::delegated(
        rho.space().ground().clone(),
        PhiRule { space, sources },
    );
    Foliation::new(internal, rho.space().clone())
}

/// `phi(Identity, Identity, rho)`.
pub fn phi_kappa(rho: &Representation) -> Result<Foliation> {
    phi(FunctorialStructure::Identity, FunctorialStructure::Identity, rho)
}

/// Outcome of an exhaustive check of the hom-set bijection between
/// `Hom(r_down(z), ρ)` and `Hom(z, phi_kappa(ρ))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjunctionReport {
    /// Size of `Hom(r_down(z), ρ)`.
    pub representation_homs: usize,
    /// Size of `Hom(z, phi_kappa(ρ))`.
    pub foliation_homs: usize,
    /// Every `(α, β)` projects to a foliation morphism `β`.
    pub projection_lands: bool,
    /// No two representation morphisms share their `β`.
    pub beta_determines_alpha: bool,
    /// Every foliation morphism lifts to exactly one representation
    /// morphism, the one built from "`α(F)` is the point whose image holds
    /// `β(F)`".
    pub unique_lift: bool,
    /// Projection is a bijection between the two hom-sets.
    pub bijection: bool,
    /// The representation morphisms as `(α images, β images)`, in
    /// enumeration order.
    pub witnesses: Vec<(Vec<usize>, Vec<usize>)>,
    pub failures: Vec<String>,
}

impl AdjunctionReport {
    pub fn holds(&self) -> bool {
        self.projection_lands && self.beta_determines_alpha && self.unique_lift && self.bijection
    }
}

/// Enumerates both hom-sets and checks the adjunction bijection.
///
/// Requires `z` regular and `rho` clear, distinct, with an integral object.
pub fn check_adjunction(z: &Foliation, rho: &Representation) -> Result<AdjunctionReport> {
    if !z.is_regular()? {
        return Err(Error::Precondition("foliation is not regular".into()));
    }
    if !rho.object().is_integral() {
        return Err(Error::Precondition("representation object is not integral".into()));
    }
    if !rho.is_distinct() {
        return Err(Error::Precondition("representation is not distinct".into()));
    }
    if !rho.is_clear()? {
        return Err(Error::Precondition("representation is not clear".into()));
    }

    let down = r_down(z)?;
    let target_phi = phi_kappa(rho)?;
    let betas = all_maps(z.ground(), rho.space().ground())?;
    let alphas = all_maps(down.object().ground(), rho.object().ground())?;
    let work = (betas.len() as u64).saturating_mul(alphas.len() as u64);
    if work > MORPHISM_BUDGET {
        return Err(Error::SizeGuard {
            what: "adjunction hom-set scan",
            limit: MORPHISM_BUDGET as usize,
            actual: usize::try_from(work).unwrap_or(usize::MAX),
        });
    }

    let mut failures = Vec::new();
    let mut rep_homs: Vec<(SetMap, SetMap)> = Vec::new();
    for beta in &betas {
        for alpha in &alphas {
            if is_rep_morphism(alpha, beta, &down, rho)? {
                rep_homs.push((alpha.clone(), beta.clone()));
            }
        }
    }
    let mut fol_homs: Vec<SetMap> = Vec::new();
    for beta in &betas {
        if is_foliation_morphism(beta, z, &target_phi)? {
            fol_homs.push(beta.clone());
        }
    }

    let fol_set: HashSet<&[usize]> = fol_homs.iter().map(SetMap::images).collect();
    let mut projection_lands = true;
    for (_, beta) in &rep_homs {
        if !fol_set.contains(beta.images()) {
            projection_lands = false;
            failures.push(format!("β = {beta:?} is not a foliation morphism"));
        }
    }

    let mut seen_betas: HashSet<&[usize]> = HashSet::new();
    let mut beta_determines_alpha = true;
    for (_, beta) in &rep_homs {
        if !seen_betas.insert(beta.images()) {
            beta_determines_alpha = false;
            failures.push(format!("β = {beta:?} carries two α"));
        }
    }

    let mut unique_lift = true;
    for beta in &fol_homs {
        let lifted = lift(beta, &down, rho);
        let matching: Vec<&SetMap> = rep_homs
            .iter()
            .filter(|(_, b)| b.images() == beta.images())
            .map(|(a, _)| a)
            .collect();
        let ok = match (&lifted, matching.as_slice()) {
            (Some(alpha), [only]) => alpha.images() == only.images(),
            _ => false,
        };
        if !ok {
            unique_lift = false;
            failures.push(format!(
                "β = {beta:?} lifts to {:?}, enumerated lifts {}",
                lifted,
                matching.len()
            ));
        }
    }

    let bijection = rep_homs.len() == fol_homs.len()
        && seen_betas.len() == rep_homs.len()
        && seen_betas == fol_set;
    if !bijection {
        failures.push(format!(
            "{} representation morphisms, {} foliation morphisms",
            rep_homs.len(),
            fol_homs.len()
        ));
    }

    Ok(AdjunctionReport {
        representation_homs: rep_homs.len(),
        foliation_homs: fol_homs.len(),
        projection_lands,
        beta_determines_alpha,
        unique_lift,
        bijection,
        witnesses: rep_homs
            .iter()
            .map(|(a, b)| (a.images().to_vec(), b.images().to_vec()))
            .collect(),
        failures,
    })
}

/// The `α` determined by `β`: each leaf goes to the unique point whose image
/// contains the leaf's image. `None` when that point does not exist or the
/// pair is not a representation morphism.
fn lift(beta: &SetMap, down: &Representation, rho: &Representation) -> Option<SetMap> {
    let mut images = Vec::with_capacity(down.images().len());
    for &leaf in down.images() {
        let target = beta.image(leaf);
        let mut holders = rho
            .images()
            .iter()
            .enumerate()
            .filter(|(_, &img)| target.is_subset_of(img))
            .map(|(a, _)| a);
        let a = holders.next()?;
        if holders.next().is_some() {
            return None;
        }
        images.push(a);
    }
    let alpha = SetMap::new(down.object().ground().clone(), rho.object().ground().clone(), images).ok()?;
    is_rep_morphism(&alpha, beta, down, rho)
        .ok()?
        .then_some(alpha)
}

/// `ρ` together with the representation of the leaves of its coarse
/// foliation and the two mutually inverse morphisms between them.
#[derive(Debug, Clone)]
pub struct CoarseLeafIso {
    pub down: Representation,
    pub forward: RepMorphism,
    pub backward: RepMorphism,
}

/// For clear distinct `rho`, `(a ↦ ρ(a), id)` is an isomorphism from `rho`
/// onto `r_down(phi(Coarse, Coarse, rho))`.
pub fn iso_rho_down_g(rho: &Representation) -> Result<CoarseLeafIso> {
    if !rho.is_distinct() {
        return Err(Error::Precondition("representation is not distinct".into()));
    }
    if !rho.is_clear()? {
        return Err(Error::Precondition("representation is not clear".into()));
    }
    let coarse = FunctorialStructure::Coarse;
    let down = r_down(&phi(coarse, coarse, rho)?)?;
    let mut forward_images = Vec::with_capacity(rho.images().len());
    for &img in rho.images() {
        let leaf = down
            .images()
            .iter()
            .position(|&l| l == img)
            .ok_or_else(|| Error::Precondition("an image is not a leaf".into()))?;
        forward_images.push(leaf);
    }
    let alpha = SetMap::new(
        rho.object().ground().clone(),
        down.object().ground().clone(),
        forward_images,
    )?;
    let alpha_back = alpha.inverse()?;
    let id = SetMap::identity(rho.space().ground().clone());
    let forward = validate_rep_morphism(alpha, id.clone(), rho, &down)?;
    let backward = validate_rep_morphism(alpha_back, id, &down, rho)?;
    if forward.then(&backward)? != RepMorphism::identity(rho)
        || backward.then(&forward)? != RepMorphism::identity(&down)
    {
        return Err(Error::InvalidRepMorphism("composites are not identities".into()));
    }
    Ok(CoarseLeafIso {
        down,
        forward,
        backward,
    })
}

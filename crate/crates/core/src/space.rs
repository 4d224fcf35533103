//! Connectivity spaces.
//!
//! A space is a ground set together with a rule deciding which subsets are
//! connected. Most spaces carry an explicit generator family and decide
//! membership in the generated structure directly; derived spaces (induced
//! subspaces, meets, device structures, leaf spaces) delegate to a
//! [`Connectedness`] rule and only materialize generators on request.

use std::borrow::Cow;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::order;
use crate::subset::{normalize_family, GroundSet, Subset, MATERIALIZE_LIMIT};

/// A membership rule for a delegated connectivity structure.
///
/// Implementations must describe a genuine connectivity structure: the empty
/// set is connected, and the union of connected sets sharing a point is
/// connected.
pub trait Connectedness: Send + Sync {
    fn is_connected(&self, a: Subset) -> bool;

    /// Components of `a`, when the rule has a route cheaper than
    /// materialization. `Ok(None)` falls back to materialized generators.
    fn components(&self, _a: Subset) -> Result<Option<Vec<Subset>>> {
        Ok(None)
    }

    fn name(&self) -> &'static str;
}

#[derive(Clone)]
enum Kind {
    Generated {
        generators: Arc<[Subset]>,
        integral: bool,
    },
    Delegated(Arc<Delegated>),
}

struct Delegated {
    rule: Box<dyn Connectedness>,
    integral: bool,
    materialized: OnceLock<Result<Vec<Subset>>>,
}

/// A finite connectivity space.
#[derive(Clone)]
pub struct ConnectivitySpace {
    ground: Arc<GroundSet>,
    kind: Kind,
}

/// Outcome of comparing two structures on one carrier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StructureRelation {
    Equal,
    /// Every connected set of the left structure is connected in the right one.
    Finer,
    Coarser,
    Incomparable,
}

impl StructureRelation {
    pub fn as_str(self) -> &'static str {
        match self {
            StructureRelation::Equal => "EQUAL",
            StructureRelation::Finer => "FINER",
            StructureRelation::Coarser => "COARSER",
            StructureRelation::Incomparable => "INCOMPARABLE",
        }
    }

    /// True for `Equal` and `Finer`.
    pub fn is_at_most(self) -> bool {
        matches!(self, StructureRelation::Equal | StructureRelation::Finer)
    }
}

impl fmt::Display for StructureRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Witness that a structure cannot come from any topology: `a` and `b` are
/// connected, `a ∪ {point}` and `b ∪ {point}` are not, yet `a ∪ b ∪ {point}` is.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ObstructionWitness {
    pub a: Subset,
    pub b: Subset,
    pub point: usize,
}

pub(crate) fn same_carrier(a: &Arc<GroundSet>, b: &Arc<GroundSet>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

pub(crate) fn require_same_carrier(
    a: &Arc<GroundSet>,
    b: &Arc<GroundSet>,
    context: &str,
) -> Result<()> {
    if same_carrier(a, b) {
        Ok(())
    } else {
        Err(Error::CarrierMismatch(format!(
            "{context}: {a:?} is not {b:?}"
        )))
    }
}

/// Union-find over the (at most 64) indices of a subset.
struct DisjointSet {
    parent: [u8; 64],
}

impl DisjointSet {
    fn new() -> Self {
        let mut parent = [0u8; 64];
        for (i, p) in parent.iter_mut().enumerate() {
            *p = i as u8;
        }
        DisjointSet { parent }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let grand = self.parent[self.parent[x] as usize];
            self.parent[x] = grand;
            x = grand as usize;
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo as u8;
        }
    }

    /// Merges every point of `block` into one class.
    fn merge_block(&mut self, block: Subset) {
        let mut points = block.iter();
        if let Some(first) = points.next() {
            for p in points {
                self.union(first, p);
            }
        }
    }

    fn classes(&mut self, covered: Subset) -> Vec<Subset> {
        let mut by_root = [0u64; 64];
        for p in covered.iter() {
            let r = self.find(p);
            by_root[r] |= 1 << p;
        }
        let mut out: Vec<Subset> = by_root
            .iter()
            .filter(|&&bits| bits != 0)
            .map(|&bits| Subset::from_bits(bits))
            .collect();
        normalize_family(&mut out);
        out
    }
}

/// Overlap blocks of a family of blocks lying inside one query set.
///
/// Returns the classes of the "share a point" closure restricted to the
/// covered points, sorted canonically.
pub(crate) fn merge_blocks<I: IntoIterator<Item = Subset>>(blocks: I) -> Vec<Subset> {
    let mut dsu = DisjointSet::new();
    let mut covered = Subset::EMPTY;
    for block in blocks {
        dsu.merge_block(block);
        covered = covered.union(block);
    }
    dsu.classes(covered)
}

/// Membership in the structure generated by `generators` (plus singletons
/// when `integral`): the generators inside `a` must cover `a` and chain
/// together through shared points.
pub(crate) fn generated_contains(generators: &[Subset], integral: bool, a: Subset) -> bool {
    match a.len() {
        0 => true,
        1 => integral || generators.contains(&a),
        _ => {
            let mut dsu = DisjointSet::new();
            let mut covered = Subset::EMPTY;
            for &g in generators {
                if g.is_subset_of(a) {
                    dsu.merge_block(g);
                    covered = covered.union(g);
                }
            }
            if covered != a {
                return false;
            }
            let root = dsu.find(a.first().unwrap_or(0));
            a.iter().all(|p| dsu.find(p) == root)
        }
    }
}

pub(crate) fn generated_components(generators: &[Subset], integral: bool, a: Subset) -> Vec<Subset> {
    let singletons = if integral { a } else { Subset::EMPTY };
    merge_blocks(
        generators
            .iter()
            .copied()
            .filter(|g| g.is_subset_of(a))
            .chain(singletons.iter().map(Subset::singleton)),
    )
}

impl ConnectivitySpace {
    /// Structure generated by `generators`, integral or not.
    ///
    /// Generators are deduplicated, the empty set is dropped, and singleton
    /// generators are dropped when the space is integral. A non-integral
    /// family listing every singleton (vacuously so on an empty carrier) is
    /// normalized to an integral space.
    pub fn generated<I>(ground: Arc<GroundSet>, generators: I, integral: bool) -> Result<Self>
    where
        I: IntoIterator<Item = Subset>,
    {
        let mut gens = Vec::new();
        for g in generators {
            ground.check(g)?;
            if !g.is_empty() {
                gens.push(g);
            }
        }
        normalize_family(&mut gens);
        let singleton_count = gens.iter().take_while(|g| g.len() == 1).count();
        let integral = integral || singleton_count == ground.len();
        if integral {
            gens.drain(..singleton_count);
        }
        Ok(ConnectivitySpace {
            ground,
            kind: Kind::Generated {
                generators: gens.into(),
                integral,
            },
        })
    }

    /// Space whose membership is decided by `rule`.
    pub fn delegated<R: Connectedness + 'static>(ground: Arc<GroundSet>, rule: R) -> Self {
        let integral = (0..ground.len()).all(|i| rule.is_connected(Subset::singleton(i)));
        ConnectivitySpace {
            ground,
            kind: Kind::Delegated(Arc::new(Delegated {
                rule: Box::new(rule),
                integral,
                materialized: OnceLock::new(),
            })),
        }
    }

    /// Only the empty set (and, when integral, singletons) is connected.
    pub fn discrete(ground: Arc<GroundSet>, integral: bool) -> Self {
        ConnectivitySpace {
            ground,
            kind: Kind::Generated {
                generators: Arc::from([]),
                integral,
            },
        }
    }

    /// Every subset is connected.
    pub fn coarse(ground: Arc<GroundSet>) -> Self {
        let n = ground.len();
        let pairs: Vec<Subset> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| Subset::from_indices([i, j])))
            .collect();
        Self::generated(ground, pairs, true).expect("pairs fit the carrier")
    }

    /// Brunnian space on `ground`: singletons and the full set are connected.
    pub fn brunnian(ground: Arc<GroundSet>) -> Self {
        let full = ground.full();
        Self::generated(ground, [full], true).expect("full set fits the carrier")
    }

    pub fn ground(&self) -> &Arc<GroundSet> {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        match &self.kind {
            Kind::Generated { integral, .. } => *integral,
            Kind::Delegated(d) => d.integral,
        }
    }

    /// Whether membership is decided by a delegated rule.
    pub fn is_delegated(&self) -> bool {
        matches!(self.kind, Kind::Delegated(_))
    }

    /// A finite connectivity space admits a diffeology exactly when it is
    /// integral.
    pub fn is_diffeologizable(&self) -> bool {
        self.is_integral()
    }

    /// Generators of the structure (singletons omitted when integral).
    ///
    /// Delegated spaces materialize their irreducible connected parts, which
    /// requires a carrier of at most 16 points.
    pub fn generators(&self) -> Result<Cow<'_, [Subset]>> {
        match &self.kind {
            Kind::Generated { generators, .. } => Ok(Cow::Borrowed(generators)),
            Kind::Delegated(d) => d
                .materialized
                .get_or_init(|| self.materialize_generators(d))
                .as_ref()
                .map(|g| Cow::Borrowed(g.as_slice()))
                .map_err(Clone::clone),
        }
    }

    fn materialize_generators(&self, d: &Delegated) -> Result<Vec<Subset>> {
        let kappa = self.connected_sets_by(|a| d.rule.is_connected(a))?;
        let mut gens = order::irreducible_parts_of(&kappa);
        if d.integral {
            gens.retain(|g| g.len() > 1);
        }
        Ok(gens)
    }

    /// Generators plus every singleton when integral: a family whose
    /// generated structure is this one and which decides morphism and
    /// refinement checks.
    pub fn generating_family(&self) -> Result<Vec<Subset>> {
        let mut family = self.generators()?.into_owned();
        if self.is_integral() {
            family.extend((0..self.len()).map(Subset::singleton));
        }
        normalize_family(&mut family);
        Ok(family)
    }

    /// Membership without the carrier check.
    pub(crate) fn contains_unchecked(&self, a: Subset) -> bool {
        match &self.kind {
            Kind::Generated {
                generators,
                integral,
            } => generated_contains(generators, *integral, a),
            Kind::Delegated(d) => a.is_empty() || d.rule.is_connected(a),
        }
    }

    /// Whether `a` is connected.
    pub fn is_connected(&self, a: Subset) -> Result<bool> {
        self.ground.check(a)?;
        Ok(self.contains_unchecked(a))
    }

    pub(crate) fn components_unchecked(&self, a: Subset) -> Result<Vec<Subset>> {
        match &self.kind {
            Kind::Generated {
                generators,
                integral,
            } => Ok(generated_components(generators, *integral, a)),
            Kind::Delegated(d) => match d.rule.components(a)? {
                Some(c) => Ok(c),
                None => Ok(generated_components(
                    &self.generators()?,
                    d.integral,
                    a,
                )),
            },
        }
    }

    /// Maximal nonempty connected subsets of `a`, sorted canonically.
    pub fn components(&self, a: Subset) -> Result<Vec<Subset>> {
        self.ground.check(a)?;
        self.components_unchecked(a)
    }

    /// Points of `a` lying in some nonempty connected subset of `a`.
    pub fn present_part(&self, a: Subset) -> Result<Subset> {
        Ok(self
            .components(a)?
            .into_iter()
            .fold(Subset::EMPTY, Subset::union))
    }

    /// Subspace on `a`: its connected sets are the connected sets of `self`
    /// contained in `a`. Points keep their labels, reindexed in order.
    pub fn induced(&self, a: Subset) -> Result<ConnectivitySpace> {
        self.ground.check(a)?;
        let embed: Vec<usize> = a.iter().collect();
        let ground = GroundSet::new(embed.iter().map(|&i| self.ground.label(i).to_owned()))?;
        Ok(ConnectivitySpace::delegated(
            ground.shared(),
            Induced {
                parent: self.clone(),
                embed,
            },
        ))
    }

    /// Every connected set, sorted canonically. Requires n ≤ 16.
    pub fn connected_sets(&self) -> Result<Vec<Subset>> {
        self.connected_sets_by(|a| self.contains_unchecked(a))
    }

    fn connected_sets_by(&self, connected: impl Fn(Subset) -> bool) -> Result<Vec<Subset>> {
        guard_materialize(self.len(), "materialized structure")?;
        let mut kappa: Vec<Subset> = self
            .ground
            .full()
            .subsets()
            .filter(|&a| a.is_empty() || connected(a))
            .collect();
        normalize_family(&mut kappa);
        Ok(kappa)
    }

    /// Refinement relation between two structures on one carrier.
    pub fn compare(&self, other: &ConnectivitySpace) -> Result<StructureRelation> {
        require_same_carrier(&self.ground, &other.ground, "compare")?;
        let below = self.is_finer_or_equal(other)?;
        let above = other.is_finer_or_equal(self)?;
        Ok(match (below, above) {
            (true, true) => StructureRelation::Equal,
            (true, false) => StructureRelation::Finer,
            (false, true) => StructureRelation::Coarser,
            (false, false) => StructureRelation::Incomparable,
        })
    }

    /// Every connected set of `self` is connected in `other`.
    pub(crate) fn is_finer_or_equal(&self, other: &ConnectivitySpace) -> Result<bool> {
        Ok(self
            .generating_family()?
            .into_iter()
            .all(|g| other.contains_unchecked(g)))
    }

    /// Least structure containing both; integral when either is.
    pub fn join(&self, other: &ConnectivitySpace) -> Result<ConnectivitySpace> {
        require_same_carrier(&self.ground, &other.ground, "join")?;
        let gens: Vec<Subset> = self
            .generators()?
            .iter()
            .chain(other.generators()?.iter())
            .copied()
            .collect();
        ConnectivitySpace::generated(
            self.ground.clone(),
            gens,
            self.is_integral() || other.is_integral(),
        )
    }

    /// Structure whose connected sets are the common connected sets.
    pub fn meet(&self, other: &ConnectivitySpace) -> Result<ConnectivitySpace> {
        require_same_carrier(&self.ground, &other.ground, "meet")?;
        Ok(ConnectivitySpace::delegated(
            self.ground.clone(),
            Meet(self.clone(), other.clone()),
        ))
    }

    /// Same membership, explicit generators. Requires n ≤ 16 for delegated
    /// spaces.
    pub fn to_generated(&self) -> Result<ConnectivitySpace> {
        match &self.kind {
            Kind::Generated { .. } => Ok(self.clone()),
            Kind::Delegated(d) => ConnectivitySpace::generated(
                self.ground.clone(),
                self.generators()?.iter().copied(),
                d.integral,
            ),
        }
    }

    /// Same structure on a relabelled carrier of the same size.
    pub fn with_ground(&self, ground: Arc<GroundSet>) -> Result<ConnectivitySpace> {
        if ground.len() != self.len() {
            return Err(Error::CarrierMismatch(format!(
                "cannot relabel {} points with {} labels",
                self.len(),
                ground.len()
            )));
        }
        Ok(ConnectivitySpace {
            ground,
            kind: self.kind.clone(),
        })
    }

    /// First witness (in canonical order of `a`, `b`, then point) showing the
    /// structure is not that of a topological space. `None` only means no
    /// witness of this shape exists. Requires n ≤ 16.
    pub fn topological_obstruction_witness(&self) -> Result<Option<ObstructionWitness>> {
        let kappa = self.connected_sets()?;
        let nonempty: Vec<Subset> = kappa.into_iter().filter(|k| !k.is_empty()).collect();
        let full = self.ground.full();
        // Points x outside k with k ∪ {x} not connected.
        let bad: Vec<Subset> = nonempty
            .iter()
            .map(|&k| {
                full.difference(k)
                    .iter()
                    .filter(|&x| !self.contains_unchecked(k.with(x)))
                    .collect()
            })
            .collect();
        for (i, &a) in nonempty.iter().enumerate() {
            if bad[i].is_empty() {
                continue;
            }
            for (j, &b) in nonempty.iter().enumerate() {
                let candidates = bad[i].intersection(bad[j]).difference(a.union(b));
                for x in candidates.iter() {
                    if self.contains_unchecked(a.union(b).with(x)) {
                        return Ok(Some(ObstructionWitness { a, b, point: x }));
                    }
                }
            }
        }
        Ok(None)
    }
}

impl fmt::Debug for ConnectivitySpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = f.debug_struct("ConnectivitySpace");
        s.field("ground", &self.ground);
        match &self.kind {
            Kind::Generated {
                generators,
                integral,
            } => s
                .field("integral", integral)
                .field("generators", generators),
            Kind::Delegated(d) => s
                .field("integral", &d.integral)
                .field("rule", &d.rule.name()),
        };
        s.finish()
    }
}

pub(crate) fn guard_materialize(n: usize, what: &'static str) -> Result<()> {
    if n > MATERIALIZE_LIMIT {
        Err(Error::SizeGuard {
            what,
            limit: MATERIALIZE_LIMIT,
            actual: n,
        })
    } else {
        Ok(())
    }
}

struct Induced {
    parent: ConnectivitySpace,
    embed: Vec<usize>,
}

impl Induced {
    fn lift(&self, a: Subset) -> Subset {
        a.iter().map(|i| self.embed[i]).collect()
    }

    fn lower(&self, a: Subset) -> Subset {
        self.embed
            .iter()
            .enumerate()
            .filter(|(_, &p)| a.contains(p))
            .map(|(i, _)| i)
            .collect()
    }
}

impl Connectedness for Induced {
    fn is_connected(&self, a: Subset) -> bool {
        self.parent.contains_unchecked(self.lift(a))
    }

    fn components(&self, a: Subset) -> Result<Option<Vec<Subset>>> {
        let mut comps: Vec<Subset> = self
            .parent
            .components_unchecked(self.lift(a))?
            .into_iter()
            .map(|c| self.lower(c))
            .collect();
        normalize_family(&mut comps);
        Ok(Some(comps))
    }

    fn name(&self) -> &'static str {
        "induced"
    }
}

struct Meet(ConnectivitySpace, ConnectivitySpace);

impl Connectedness for Meet {
    fn is_connected(&self, a: Subset) -> bool {
        self.0.contains_unchecked(a) && self.1.contains_unchecked(a)
    }

    fn name(&self) -> &'static str {
        "meet"
    }
}

/// A map between ground sets, given by the image index of each source point.
#[derive(Clone, PartialEq, Eq)]
pub struct SetMap {
    source: Arc<GroundSet>,
    target: Arc<GroundSet>,
    images: Vec<usize>,
}

impl SetMap {
    pub fn new(source: Arc<GroundSet>, target: Arc<GroundSet>, images: Vec<usize>) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::InvalidMap(format!(
                "{} images for {} source points",
                images.len(),
                source.len()
            )));
        }
        if let Some(&bad) = images.iter().find(|&&i| i >= target.len()) {
            return Err(Error::InvalidMap(format!(
                "image index {bad} outside a target of {} points",
                target.len()
            )));
        }
        Ok(SetMap {
            source,
            target,
            images,
        })
    }

    pub fn identity(ground: Arc<GroundSet>) -> Self {
        let images = (0..ground.len()).collect();
        SetMap {
            source: ground.clone(),
            target: ground,
            images,
        }
    }

    pub fn source(&self) -> &Arc<GroundSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GroundSet> {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    /// Direct image of a subset.
    pub fn image(&self, a: Subset) -> Subset {
        a.iter().map(|i| self.images[i]).collect()
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &SetMap) -> Result<SetMap> {
        require_same_carrier(&self.target, &then.source, "map composition")?;
        Ok(SetMap {
            source: self.source.clone(),
            target: then.target.clone(),
            images: self.images.iter().map(|&i| then.images[i]).collect(),
        })
    }

    pub fn is_bijective(&self) -> bool {
        self.source.len() == self.target.len() && {
            let img: Subset = self.images.iter().copied().collect();
            img.len() == self.images.len()
        }
    }

    /// Inverse of a bijection.
    pub fn inverse(&self) -> Result<SetMap> {
        if !self.is_bijective() {
            return Err(Error::InvalidMap("map is not bijective".into()));
        }
        let mut images = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Ok(SetMap {
            source: self.target.clone(),
            target: self.source.clone(),
            images,
        })
    }
}

impl fmt::Debug for SetMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(
                self.images
                    .iter()
                    .enumerate()
                    .map(|(i, &j)| (self.source.label(i), self.target.label(j))),
            )
            .finish()
    }
}

/// Whether `f` sends every connected set of `x` to a connected set of `y`.
///
/// Checked on the generating family of `x` only: the direct image of a union
/// of overlapping sets is a union of overlapping images.
pub fn is_morphism(f: &SetMap, x: &ConnectivitySpace, y: &ConnectivitySpace) -> Result<bool> {
    require_same_carrier(f.source(), x.ground(), "morphism source")?;
    require_same_carrier(f.target(), y.ground(), "morphism target")?;
    Ok(x
        .generating_family()?
        .into_iter()
        .all(|g| y.contains_unchecked(f.image(g))))
}

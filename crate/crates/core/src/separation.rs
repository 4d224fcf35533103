//! Separation devices and the structures they define.
//!
//! A device is a family of unordered pairs `{S, T}` of disjoint nonempty
//! subsets. A set `A` is separated when some pair covers it and `A` meets
//! both sides; the sets that are not separated form an integral
//! connectivity structure, and every integral structure arises this way.

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::space::{guard_materialize, require_same_carrier, Connectedness, ConnectivitySpace, SetMap};
use crate::subset::{normalize_family, GroundSet, Subset};

/// Largest group `PermutationGroup::elements` will enumerate.
pub const GROUP_LIMIT: usize = 100_000;

/// Largest device `device_of_structure` will build.
pub const DEVICE_PAIR_LIMIT: usize = 5_000_000;

/// Family of unordered pairs of disjoint nonempty subsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationDevice {
    ground: Arc<GroundSet>,
    pairs: Vec<(Subset, Subset)>,
}

fn normalize_pair(s: Subset, t: Subset) -> (Subset, Subset) {
    if s <= t {
        (s, t)
    } else {
        (t, s)
    }
}

fn separates(pair: (Subset, Subset), a: Subset) -> bool {
    let (s, t) = pair;
    a.is_subset_of(s.union(t)) && a.meets(s) && a.meets(t)
}

impl SeparationDevice {
    pub fn new<I>(ground: Arc<GroundSet>, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Subset, Subset)>,
    {
        let mut out = Vec::new();
        for (s, t) in pairs {
            ground.check(s)?;
            ground.check(t)?;
            if s.is_empty() || t.is_empty() {
                return Err(Error::InvalidDevice(format!(
                    "pair {} | {} has an empty side",
                    ground.format_subset(s),
                    ground.format_subset(t)
                )));
            }
            if s.meets(t) {
                return Err(Error::InvalidDevice(format!(
                    "pair {} | {} is not disjoint",
                    ground.format_subset(s),
                    ground.format_subset(t)
                )));
            }
            out.push(normalize_pair(s, t));
        }
        out.sort_unstable();
        out.dedup();
        Ok(SeparationDevice { ground, pairs: out })
    }

    pub fn ground(&self) -> &Arc<GroundSet> {
        &self.ground
    }

    /// Pairs `(S, T)` with `S` before `T` canonically, sorted.
    pub fn pairs(&self) -> &[(Subset, Subset)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Whether some pair covers `a` while `a` meets both of its sides.
    pub fn separated(&self, a: Subset) -> Result<bool> {
        self.ground.check(a)?;
        Ok(self.pairs.iter().any(|&p| separates(p, a)))
    }

    /// Integral space of the sets this device does not separate.
    pub fn structure(&self) -> ConnectivitySpace {
        ConnectivitySpace::delegated(
            self.ground.clone(),
            DeviceRule {
                pairs: self.pairs.clone(),
            },
        )
    }
}

struct DeviceRule {
    pairs: Vec<(Subset, Subset)>,
}

impl Connectedness for DeviceRule {
    fn is_connected(&self, a: Subset) -> bool {
        !self.pairs.iter().any(|&p| separates(p, a))
    }

    fn name(&self) -> &'static str {
        "separation device"
    }
}

/// Integral space of the sets `device` does not separate.
pub fn structure_of_device(device: &SeparationDevice) -> ConnectivitySpace {
    device.structure()
}

/// The full device of an integral space: every pair `{A, B}` of disjoint
/// nonempty sets such that each component of `A ∪ B` lies in `A` or in `B`.
///
/// Enumerated per union `U = A ∪ B`: the admissible splits are exactly the
/// two-colourings of the components of `U` using both colours. Requires
/// n ≤ 16.
pub fn device_of_structure(space: &ConnectivitySpace) -> Result<SeparationDevice> {
    if !space.is_integral() {
        return Err(Error::NotIntegral);
    }
    guard_materialize(space.len(), "device carrier")?;
    let mut pairs = Vec::new();
    for union in space.ground().full().subsets() {
        if union.len() < 2 {
            continue;
        }
        let comps = space.components(union)?;
        if comps.len() < 2 {
            continue;
        }
        // The first component always goes to the first side.
        let rest = comps.len() - 1;
        for colouring in 0u64..(1 << rest) - 1 {
            let mut a = comps[0];
            for (i, &c) in comps[1..].iter().enumerate() {
                if colouring >> i & 1 == 1 {
                    a = a.union(c);
                }
            }
            pairs.push(normalize_pair(a, union.difference(a)));
            if pairs.len() > DEVICE_PAIR_LIMIT {
                return Err(Error::SizeGuard {
                    what: "separation device pairs",
                    limit: DEVICE_PAIR_LIMIT,
                    actual: pairs.len(),
                });
            }
        }
    }
    pairs.sort_unstable();
    Ok(SeparationDevice {
        ground: space.ground().clone(),
        pairs,
    })
}

/// A permutation group given by generators.
#[derive(Debug, Clone)]
pub struct PermutationGroup {
    ground: Arc<GroundSet>,
    generators: Vec<SetMap>,
}

impl PermutationGroup {
    pub fn new(ground: Arc<GroundSet>, generators: Vec<SetMap>) -> Result<Self> {
        for g in &generators {
            require_same_carrier(g.source(), &ground, "permutation source")?;
            require_same_carrier(g.target(), &ground, "permutation target")?;
            if !g.is_bijective() {
                return Err(Error::InvalidPermutation(format!("{g:?} is not bijective")));
            }
        }
        Ok(PermutationGroup { ground, generators })
    }

    pub fn trivial(ground: Arc<GroundSet>) -> Self {
        PermutationGroup {
            ground,
            generators: Vec::new(),
        }
    }

    /// Symmetric group, generated by a transposition and a full cycle.
    pub fn symmetric(ground: Arc<GroundSet>) -> Self {
        let n = ground.len();
        let mut generators = Vec::new();
        if n >= 2 {
            let mut swap: Vec<usize> = (0..n).collect();
            swap.swap(0, 1);
            let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
            for images in [swap, cycle] {
                generators.push(SetMap::new(ground.clone(), ground.clone(), images).expect("valid permutation"));
            }
        }
        PermutationGroup { ground, generators }
    }

    pub fn ground(&self) -> &Arc<GroundSet> {
        &self.ground
    }

    pub fn generators(&self) -> &[SetMap] {
        &self.generators
    }

    /// All group elements, identity first, by breadth-first closure.
    pub fn elements(&self) -> Result<Vec<SetMap>> {
        let identity = SetMap::identity(self.ground.clone());
        let mut seen: HashSet<Vec<usize>> = HashSet::from([identity.images().to_vec()]);
        let mut out = vec![identity.clone()];
        let mut queue = VecDeque::from([identity]);
        while let Some(element) = queue.pop_front() {
            for g in &self.generators {
                let next = element.then(g)?;
                if seen.insert(next.images().to_vec()) {
                    if out.len() >= GROUP_LIMIT {
                        return Err(Error::SizeGuard {
                            what: "permutation group",
                            limit: GROUP_LIMIT,
                            actual: out.len() + 1,
                        });
                    }
                    out.push(next.clone());
                    queue.push_back(next);
                }
            }
        }
        Ok(out)
    }
}

/// Device of every image `{φ(S), φ(T)}` of a pair under the group.
///
/// `A` is separated by the result iff `φ(A)` is separated by `device` for
/// some `φ` in the group.
pub fn orbit_device(group: &PermutationGroup, device: &SeparationDevice) -> Result<SeparationDevice> {
    require_same_carrier(group.ground(), device.ground(), "orbit device")?;
    let elements = group.elements()?;
    let pairs = elements.iter().flat_map(|phi| {
        device
            .pairs()
            .iter()
            .map(move |&(s, t)| (phi.image(s), phi.image(t)))
    });
    SeparationDevice::new(device.ground().clone(), pairs.collect::<Vec<_>>())
}

/// A topology on a finite carrier, listed by its open sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteTopology {
    ground: Arc<GroundSet>,
    opens: Vec<Subset>,
}

impl FiniteTopology {
    /// Validates closure under pairwise union and intersection; `∅` and the
    /// carrier are added implicitly.
    pub fn new<I>(ground: Arc<GroundSet>, opens: I) -> Result<Self>
    where
        I: IntoIterator<Item = Subset>,
    {
        let mut list = vec![Subset::EMPTY, ground.full()];
        for o in opens {
            ground.check(o)?;
            list.push(o);
        }
        normalize_family(&mut list);
        let set: HashSet<Subset> = list.iter().copied().collect();
        for &a in &list {
            for &b in &list {
                for (op, c) in [("union", a.union(b)), ("intersection", a.intersection(b))] {
                    if !set.contains(&c) {
                        return Err(Error::InvalidTopology(format!(
                            "{op} of {} and {} is not open",
                            ground.format_subset(a),
                            ground.format_subset(b)
                        )));
                    }
                }
            }
        }
        Ok(FiniteTopology { ground, opens: list })
    }

    /// Smallest topology containing the given sets.
    pub fn close<I>(ground: Arc<GroundSet>, opens: I) -> Result<Self>
    where
        I: IntoIterator<Item = Subset>,
    {
        let mut list = vec![Subset::EMPTY, ground.full()];
        let mut set: HashSet<Subset> = list.iter().copied().collect();
        for o in opens {
            ground.check(o)?;
            if set.insert(o) {
                list.push(o);
            }
        }
        let mut i = 0;
        while i < list.len() {
            let a = list[i];
            for j in 0..i {
                let b = list[j];
                for c in [a.union(b), a.intersection(b)] {
                    if set.insert(c) {
                        list.push(c);
                    }
                }
            }
            i += 1;
        }
        normalize_family(&mut list);
        Ok(FiniteTopology { ground, opens: list })
    }

    pub fn discrete(ground: Arc<GroundSet>) -> Self {
        let opens = ground.full().subsets().collect::<Vec<_>>();
        Self::new(ground, opens).expect("power set is a topology")
    }

    pub fn indiscrete(ground: Arc<GroundSet>) -> Self {
        Self::new(ground, []).expect("trivial topology")
    }

    pub fn ground(&self) -> &Arc<GroundSet> {
        &self.ground
    }

    /// Open sets, canonically sorted, including `∅` and the carrier.
    pub fn opens(&self) -> &[Subset] {
        &self.opens
    }

    /// Device of all pairs of disjoint nonempty open sets.
    pub fn open_pair_device(&self) -> SeparationDevice {
        let nonempty: Vec<Subset> = self.opens.iter().copied().filter(|o| !o.is_empty()).collect();
        let pairs = nonempty.iter().enumerate().flat_map(|(i, &s)| {
            nonempty[i + 1..]
                .iter()
                .filter(move |&&t| !s.meets(t))
                .map(move |&t| (s, t))
        });
        SeparationDevice::new(self.ground.clone(), pairs.collect::<Vec<_>>())
            .expect("open pairs are disjoint and nonempty")
    }
}

struct TopologicalRule {
    opens: Vec<Subset>,
}

impl Connectedness for TopologicalRule {
    /// `a` is connected unless two disjoint nonempty relative opens cover it.
    fn is_connected(&self, a: Subset) -> bool {
        let traces: HashSet<Subset> = self.opens.iter().map(|o| o.intersection(a)).collect();
        !traces
            .iter()
            .any(|&t| !t.is_empty() && t != a && traces.contains(&a.difference(t)))
    }

    fn name(&self) -> &'static str {
        "topological connectedness"
    }
}

/// Classical connectedness of subspaces of a finite topology.
pub fn u_t(top: &FiniteTopology) -> ConnectivitySpace {
    ConnectivitySpace::delegated(
        top.ground.clone(),
        TopologicalRule {
            opens: top.opens.clone(),
        },
    )
}

/// Structure of the device of disjoint nonempty open pairs.
pub fn v_t(top: &FiniteTopology) -> ConnectivitySpace {
    top.open_pair_device().structure()
}

//! Finite connectivity spaces.
//!
//! A connectivity structure on a finite carrier is a family of "connected"
//! subsets containing the empty set and closed under unions of members that
//! share a point. This crate decides membership in generated structures
//! without enumerating them, and builds on that:
//!
//! - [`space`]: spaces, components, subspaces, morphisms, the structure lattice;
//! - [`separation`]: separation devices, permutation-group orbits, finite
//!   topologies and their two connectivity functors;
//! - [`representation`]: connective representations and their Kleisli monad;
//! - [`foliation`]: foliations, leaf spaces, and the adjunction between
//!   foliations and representations;
//! - [`order`]: irreducible parts, generic graphs and the connectivity order;
//! - [`oracle`]: brute-force reference implementations for small carriers.
//!
//! Subsets are single `u64` words, so carriers hold at most 64 points, and
//! anything that materializes a structure is limited to 16 points.

pub mod error;
pub mod foliation;
pub mod oracle;
pub mod order;
pub mod representation;
pub mod separation;
pub mod space;
pub mod subset;

pub use error::{Error, Result};
pub use foliation::{
    check_adjunction, iso_rho_down_g, phi, phi_kappa, r_down, r_down_on_morphism, AdjunctionReport,
    CoarseLeafIso, Foliation, FunctorialStructure, LeafSpace,
};
pub use order::{connectivity_order, foliation_order, irreducibles, poset_height, GenericGraph};
pub use representation::{
    canonical_representation, kleisli_compose, pstar_membership, validate_rep_morphism, RepMorphism,
    Representation,
};
pub use separation::{
    device_of_structure, orbit_device, structure_of_device, u_t, v_t, FiniteTopology,
    PermutationGroup, SeparationDevice,
};
pub use space::{
    is_morphism, Connectedness, ConnectivitySpace, ObstructionWitness, SetMap, StructureRelation,
};
pub use subset::{GroundSet, Subset, MATERIALIZE_LIMIT, MAX_POINTS};

//! Blocking sets for simple Hamiltonian paths on convex point sets.
//!
//! Vertices 0..n are placed clockwise in convex position; every chord and side
//! of the polygon is an edge. A simple Hamiltonian path (SHP) visits every
//! vertex with pairwise non-crossing edges. For odd n = 2m-1 the minimum size
//! of an edge set meeting every SHP is m, and the minimum sets fall into two
//! parameterized families (Class A and Class B). This crate makes that
//! characterization executable: it generates family members, verifies blocking
//! by exhaustive search, classifies arbitrary candidate sets, produces
//! constructive avoiding witnesses for non-blockers, and cross-checks the
//! parametric families against brute-force enumeration at small orders.

pub mod blocker_families;
pub mod cyclic_geometry;
mod error;
pub mod exhaustive_search;
pub mod ham_paths;
pub mod proof_witnesses;
mod support;

pub use blocker_families::{
    AltDescriptionA, BlockerDescriptor, ClassAParams, ClassBParams, ClassificationResult,
};
pub use cyclic_geometry::{Edge, EdgeSet};
pub use error::{DescriptorViolation, Error};
pub use ham_paths::Path;

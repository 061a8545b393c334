//! Finite inverse semigroups and their transitive representations by
//! one-to-one partial maps.
//!
//! An inverse semigroup is noble when it is isomorphic to a transitive
//! inverse semigroup of partial bijections. [`engine::decide_nobility`]
//! decides this by searching for an infinitesimal closed inverse
//! subsemigroup and acting on its cosets; [`oracle`] checks the answers by
//! brute force.

pub mod catalog;
pub mod element_set;
pub mod engine;
pub mod error;
pub mod filters;
pub mod io;
pub mod oracle;
pub mod partial;
pub mod table;

pub use element_set::ElementSet;
pub use engine::{decide_nobility, EngineConfig, FilterFamily, NobilityCertificate, Representation, Verdict};
pub use error::{Error, Result};
pub use filters::Filter;
pub use partial::{ConcreteFamily, PartialBijection};
pub use table::{validate_inverse_semigroup, Element, SemigroupTable};

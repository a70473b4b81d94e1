//! Construction and verification of finite p-groups given by
//! power-commutator presentations: collection, enumerated-group algorithms,
//! cyclic extensions by automorphisms, character-degree computation and
//! property checks for power and automorphism identities.

pub mod catalog;
pub mod degrees;
pub mod error;
pub mod extension;
pub mod group;
pub mod pc;
pub mod theorems;

pub use error::{Error, Result};
pub use group::{ClassData, ConcreteGroup, Fingerprint, Quotient, Subgroup};
pub use pc::{Element, PcPresentation, PresentationBuilder, Word};

//! Enumerated p-groups and the subgroup machinery built on them.

mod classes;
mod concrete;
mod invariants;
mod quotient;
mod subgroup;

pub use classes::{ClassData, ConjugacyClass};
pub use concrete::{ConcreteGroup, FULL_TABLE_LIMIT};
pub use invariants::Fingerprint;
pub use quotient::Quotient;
pub use subgroup::Subgroup;

//! Power-commutator presentations of finite p-groups and normal-form
//! arithmetic by collection.
//!
//! A presentation fixes a polycyclic sequence `g_0, ..., g_{m-1}` with
//! relative orders all equal to `p`. Every element has a unique normal form
//! `g_0^{e_0} ... g_{m-1}^{e_{m-1}}` with `0 <= e_i < p`, stored as an
//! [`Element`].

mod collect;
mod consistency;
mod format;
mod presentation;

pub use consistency::{ConsistencyFailure, ConsistencyOptions, ConsistencyReport, FailureKind};
pub use format::{PresentationFile, WordFile};
pub use presentation::{PcPresentation, PresentationBuilder, DEFAULT_STEP_LIMIT};
pub(crate) use presentation::is_prime;

use serde::{Deserialize, Serialize};

/// A word in the polycyclic generators: `(generator index, exponent)` pairs,
/// read left to right.
pub type Word = Vec<(usize, i64)>;

/// A group element in normal form: one exponent in `[0, p)` per generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Element(Vec<u32>);

impl Element {
    pub fn identity(rank: usize) -> Self {
        Element(vec![0; rank])
    }

    /// The `i`-th polycyclic generator.
    pub fn generator(rank: usize, i: usize) -> Self {
        let mut e = vec![0; rank];
        e[i] = 1;
        Element(e)
    }

    /// Wraps an exponent vector, checking that every entry is reduced mod `p`.
    pub fn from_exponents(prime: u32, exps: Vec<u32>) -> crate::Result<Self> {
        if let Some(&bad) = exps.iter().find(|&&e| e >= prime) {
            return Err(crate::Error::InvalidParameter(format!(
                "exponent {bad} is not reduced mod {prime}"
            )));
        }
        Ok(Element(exps))
    }

    pub(crate) fn from_raw(exps: Vec<u32>) -> Self {
        Element(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// The normal form read back as a word.
    pub fn to_word(&self) -> Word {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| (i, e as i64))
            .collect()
    }
}

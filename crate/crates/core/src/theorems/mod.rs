//! Property checks for a power identity in metabelian groups, an expansion of
//! automorphism powers in small class, and the order bound on center-fixing
//! automorphisms of extraspecial groups of exponent `p`.

mod automorphism;
mod power;
mod symplectic;

pub use automorphism::{lemma41_check, lemma41_suite, AutomorphismIdentity, AutomorphismReport, CorollaryCheck, MAX_CLASS};
pub use power::{lemma32_campaign, lemma32_check, PowerCounterexample, PowerIdentity, PowerReport};
pub use symplectic::{
    sample_symplectic_automorphism, sp_order, theorem33_campaign, CampaignReport, Matrix, SampleSummary, SymplecticSample,
    SymplecticSampler,
};

/// `C(n, k)`, zero for `k > n`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

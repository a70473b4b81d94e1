use serde::Serialize;

use super::binomial;
use crate::extension::Extension;
use crate::group::ConcreteGroup;
use crate::{Error, Result};

/// Largest nilpotence class for which the expansion below is complete.
pub const MAX_CLASS: usize = 5;

/// The expansion of `g^(alpha^n)` inside `P = G ⋊ <t>`, where `alpha` acts
/// as conjugation by `t` and `[g, alpha] = g^-1 g^t`:
///
/// `g [g,α]^C(n,1) [g,α,α]^C(n,2) [g,α,α,α]^C(n,3) [g,α,α,α,α]^C(n,4)
///  [[g,α,α],[g,α]]^C(n,3)`.
pub struct AutomorphismIdentity<'p> {
    p: &'p ConcreteGroup,
    t: u32,
}

impl<'p> AutomorphismIdentity<'p> {
    /// Fails with `ClassTooLarge` when `P` has class above [`MAX_CLASS`].
    pub fn new(p: &'p ConcreteGroup, t: u32) -> Result<Self> {
        let class = p.nilpotence_class();
        if class > MAX_CLASS {
            return Err(Error::ClassTooLarge(class));
        }
        Ok(AutomorphismIdentity { p, t })
    }

    /// `g^(t^n)`.
    pub fn direct(&self, g: u32, n: u64) -> u32 {
        let mut x = g;
        for _ in 0..n {
            x = self.p.conj(x, self.t);
        }
        x
    }

    /// With `u1 = [g,α]` and `u2 = [g,α,α]`, the mixed term is `[u2, u1]`,
    /// or `[u1, u2]` when `swapped`.
    fn expansion_with(&self, g: u32, n: u64, swapped: bool) -> u32 {
        let p = self.p;
        let mut u = [g, 0, 0, 0, 0];
        for k in 1..5 {
            u[k] = p.comm(u[k - 1], self.t);
        }
        let mut acc = g;
        for (k, &uk) in u.iter().enumerate().skip(1) {
            acc = p.mul(acc, p.pow(uk, binomial(n, k as u64) as i64));
        }
        let mixed = if swapped { p.comm(u[1], u[2]) } else { p.comm(u[2], u[1]) };
        p.mul(acc, p.pow(mixed, binomial(n, 3) as i64))
    }

    pub fn expansion(&self, g: u32, n: u64) -> u32 {
        self.expansion_with(g, n, false)
    }

    pub fn literal(&self, g: u32, n: u64) -> bool {
        self.direct(g, n) == self.expansion(g, n)
    }

    /// The same expansion with the mixed term `[[g,α],[g,α,α]]`.
    pub fn swapped(&self, g: u32, n: u64) -> bool {
        self.direct(g, n) == self.expansion_with(g, n, true)
    }
}

pub fn lemma41_check(p: &ConcreteGroup, t: u32, g: u32, n: u64) -> Result<bool> {
    Ok(AutomorphismIdentity::new(p, t)?.literal(g, n))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorollaryCheck {
    /// exponent of `[G, alpha] = <g^-1 g^alpha : g in G>`
    pub commutator_exponent: u64,
    pub alpha_order: u64,
    /// `[G, alpha]` has exponent `p`, `p >= 5` and `alpha != 1`
    pub applies: bool,
    /// `o(alpha) = p`, or vacuous when not applicable
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AutomorphismReport {
    pub class: usize,
    pub checked: usize,
    /// `(generator index in P, n)` pairs where the expansion fails
    pub failures: Vec<(u32, u64)>,
    /// failures of the variant with the swapped mixed term
    pub swapped_failures: Vec<(u32, u64)>,
    pub corollary: CorollaryCheck,
}

impl AutomorphismReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty() && self.corollary.holds
    }
}

/// Every base generator and every `1 <= n <= 2p`, plus the corollary on the
/// order of `alpha`.
pub fn lemma41_suite(ext: &Extension) -> Result<AutomorphismReport> {
    let pg = &ext.group;
    let t = ext.top();
    let id = AutomorphismIdentity::new(pg, t)?;
    let prime = pg.prime() as u64;
    let mut rep = AutomorphismReport {
        class: pg.nilpotence_class(),
        checked: 0,
        failures: Vec::new(),
        swapped_failures: Vec::new(),
        corollary: corollary(ext),
    };
    for &g in ext.base_generators() {
        for n in 1..=2 * prime {
            rep.checked += 1;
            if !id.literal(g, n) {
                rep.failures.push((g, n));
            }
            if !id.swapped(g, n) {
                rep.swapped_failures.push((g, n));
            }
        }
    }
    Ok(rep)
}

fn corollary(ext: &Extension) -> CorollaryCheck {
    let pg = &ext.group;
    let t = ext.top();
    let prime = pg.prime() as u64;
    let base = pg.subgroup_closure(ext.base_generators());
    let seeds: Vec<u32> = base.members().iter().map(|&g| pg.comm(g, t)).collect();
    let ga = pg.subgroup_closure(&seeds);
    let exponent = pg.subgroup_exponent(&ga);
    // order of alpha: least k with t^k central in P and acting trivially on G
    let mut alpha_order = 1u64;
    let mut tk = t;
    while !ext.base_generators().iter().all(|&g| pg.conj(g, tk) == g) {
        tk = pg.mul(tk, t);
        alpha_order += 1;
    }
    let applies = exponent == prime && prime >= 5 && !ga.is_trivial();
    CorollaryCheck {
        commutator_exponent: exponent,
        alpha_order,
        applies,
        holds: !applies || alpha_order == prime,
    }
}

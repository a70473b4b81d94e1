use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::binomial;
use crate::group::ConcreteGroup;
use crate::{Error, Result};

/// The power identity for groups with abelian derived subgroup, in two
/// readings.
///
/// The literal reading is
/// `(gh)^n = g^n h^n [g,h]^C(n,2) [g,h,h]^C(n,3) ... [g,h,...,h]^C(n,n)`
/// with left-normed commutators. The corrected reading swaps the roles
/// inside the commutators,
/// `(gh)^n = g^n h^n [h,g]^C(n,2) [h,g,g]^C(n,3) ...`,
/// which holds whenever `h` lies in an abelian normal subgroup.
pub struct PowerIdentity<'g> {
    g: &'g ConcreteGroup,
}

impl<'g> PowerIdentity<'g> {
    /// Fails with `NonMetabelianInput` unless `G'` is abelian.
    pub fn new(g: &'g ConcreteGroup) -> Result<Self> {
        let d = g.derived_subgroup();
        let gens = d.generators();
        for (i, &a) in gens.iter().enumerate() {
            for &b in &gens[..i] {
                if g.mul(a, b) != g.mul(b, a) {
                    return Err(Error::NonMetabelianInput);
                }
            }
        }
        Ok(PowerIdentity { g })
    }

    pub fn power(&self, x: u32, y: u32, n: u64) -> u32 {
        self.g.pow(self.g.mul(x, y), n as i64)
    }

    /// `x^n y^n prod_{k=2..n} [x, y, ..., y]^C(n,k)`, `k - 1` copies of `y`.
    pub fn expansion(&self, x: u32, y: u32, n: u64) -> u32 {
        let g = self.g;
        let mut acc = g.mul(g.pow(x, n as i64), g.pow(y, n as i64));
        let mut c = x;
        for k in 2..=n {
            c = g.comm(c, y);
            if c == 0 {
                break;
            }
            acc = g.mul(acc, g.pow(c, binomial(n, k) as i64));
        }
        acc
    }

    pub fn literal(&self, x: u32, y: u32, n: u64) -> bool {
        self.power(x, y, n) == self.expansion(x, y, n)
    }

    /// `x^n y^n prod_{k=2..n} [y, x, ..., x]^C(n,k)` against `(xy)^n`.
    pub fn corrected(&self, x: u32, y: u32, n: u64) -> bool {
        let g = self.g;
        let mut acc = g.mul(g.pow(x, n as i64), g.pow(y, n as i64));
        let mut c = y;
        for k in 2..=n {
            c = g.comm(c, x);
            if c == 0 {
                break;
            }
            acc = g.mul(acc, g.pow(c, binomial(n, k) as i64));
        }
        acc == self.power(x, y, n)
    }
}

/// Checks the literal identity for one triple. `n` must lie in `1..=2p`.
pub fn lemma32_check(g: &ConcreteGroup, x: u32, y: u32, n: u64) -> Result<bool> {
    check_range(g, n)?;
    Ok(PowerIdentity::new(g)?.literal(x, y, n))
}

fn check_range(g: &ConcreteGroup, n: u64) -> Result<()> {
    if n == 0 || n > 2 * g.prime() as u64 {
        return Err(Error::InvalidParameter(format!("n = {n} outside 1..=2p")));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerCounterexample {
    pub g: u32,
    pub h: u32,
    pub n: u64,
    /// `(gh)^n`
    pub power: u32,
    /// the literal right-hand side
    pub expansion: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerReport {
    pub order: u64,
    pub trials: usize,
    pub seed: u64,
    pub literal_violations: usize,
    /// violations restricted to `n <= 2`, where only the class-2 term acts
    pub literal_violations_small_n: usize,
    pub corrected_violations: usize,
    /// corrected violations with `h` in the abelian subgroup `G'`
    pub corrected_violations_h_in_derived: usize,
    pub first_counterexample: Option<PowerCounterexample>,
}

impl PowerReport {
    pub fn holds(&self) -> bool {
        self.literal_violations == 0
    }
}

/// Evaluates both readings on `trials` uniform triples `(g, h, n)` with
/// `1 <= n <= 2p`, plus as many triples with `h` drawn from `G'`.
pub fn lemma32_campaign(g: &ConcreteGroup, trials: usize, seed: u64) -> Result<PowerReport> {
    let id = PowerIdentity::new(g)?;
    let derived = g.derived_subgroup();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let order = g.order() as u32;
    let nmax = 2 * g.prime() as u64;
    let mut rep = PowerReport {
        order: g.order() as u64,
        trials,
        seed,
        literal_violations: 0,
        literal_violations_small_n: 0,
        corrected_violations: 0,
        corrected_violations_h_in_derived: 0,
        first_counterexample: None,
    };
    for _ in 0..trials {
        let x = rng.random_range(0..order);
        let y = rng.random_range(0..order);
        let n = rng.random_range(1..=nmax);
        let power = id.power(x, y, n);
        let expansion = id.expansion(x, y, n);
        if power != expansion {
            rep.literal_violations += 1;
            if n <= 2 {
                rep.literal_violations_small_n += 1;
            }
            if rep.first_counterexample.is_none() {
                rep.first_counterexample = Some(PowerCounterexample {
                    g: x,
                    h: y,
                    n,
                    power,
                    expansion,
                });
            }
        }
        if !id.corrected(x, y, n) {
            rep.corrected_violations += 1;
        }
        let d = derived.members()[rng.random_range(0..derived.order())];
        if !id.corrected(x, d, n) {
            rep.corrected_violations_h_in_derived += 1;
        }
    }
    Ok(rep)
}

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::extraspecial_exp_p;
use crate::extension::{compose_indexed, map_order, GeneratorMap, MapState, ORDER_CAP};
use crate::group::ConcreteGroup;
use crate::pc::{Element, PcPresentation};
use crate::{Error, Result};

/// Column-major square matrix over `F_p`: `m[k]` is the image of basis vector `k`.
pub type Matrix = Vec<Vec<u64>>;

const LIFT_RETRIES: usize = 8;

/// A center-fixing automorphism of the extraspecial group of exponent `p` on
/// `x1..xn, y1..yn, c`, with its action on `G/Z = F_p^(2n)`.
#[derive(Clone, Debug)]
pub struct SymplecticSample {
    pub seed: u64,
    /// number of transvections in the word
    pub word_length: usize,
    /// preserves `<v, w> = sum v_xi w_yi - v_yi w_xi`
    pub matrix: Matrix,
    pub map: GeneratorMap,
    pub matrix_order: u64,
    pub order: u64,
    pub p_part: u64,
}

impl SymplecticSample {
    pub fn summary(&self) -> SampleSummary {
        SampleSummary {
            seed: self.seed,
            word_length: self.word_length,
            matrix_order: self.matrix_order,
            order: self.order,
            p_part: self.p_part,
            map: self.map.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleSummary {
    pub seed: u64,
    pub word_length: usize,
    pub matrix_order: u64,
    pub order: u64,
    pub p_part: u64,
    pub map: String,
}

/// Reusable sampling context for one `(p, n)`.
pub struct SymplecticSampler {
    p: u64,
    n: usize,
    pres: Arc<PcPresentation>,
    group: ConcreteGroup,
    /// prime factorization of `|Sp(2n, p)|`
    sp_factors: Vec<(u64, u32)>,
    sp_order: u64,
}

impl SymplecticSampler {
    /// Needs an odd prime `p` and `n >= 1`.
    pub fn new(p: u32, n: usize) -> Result<Self> {
        if p < 3 || !crate::pc::is_prime(p as u64) {
            return Err(Error::InadmissiblePrime(p as u64, "symplectic sampling needs an odd prime"));
        }
        let pres = Arc::new(extraspecial_exp_p(p, n)?);
        let group = ConcreteGroup::from_arc(pres.clone())?;
        let sp_order = sp_order(p as u64, n)?;
        Ok(SymplecticSampler {
            p: p as u64,
            n,
            pres,
            group,
            sp_factors: factorize(sp_order),
            sp_order,
        })
    }

    pub fn presentation(&self) -> &Arc<PcPresentation> {
        &self.pres
    }

    pub fn group(&self) -> &ConcreteGroup {
        &self.group
    }

    pub fn sp_order(&self) -> u64 {
        self.sp_order
    }

    /// `<v, w>` with `[g, h] = c^<v, w>` for `g, h` over `v, w`.
    pub fn form(&self, v: &[u64], w: &[u64]) -> u64 {
        let (n, p) = (self.n, self.p);
        let mut s = 0u64;
        for i in 0..n {
            s += v[i] * w[n + i] % p;
            s += (p - v[n + i] * w[i] % p) % p;
        }
        s % p
    }

    pub fn preserves_form(&self, m: &Matrix) -> bool {
        let d = 2 * self.n;
        (0..d).all(|i| (0..d).all(|j| self.form(&m[i], &m[j]) == self.form(&unit(d, i), &unit(d, j))))
    }

    /// Random transvection word of length 5 to 30, lifted and twisted.
    pub fn sample(&self, seed: u64) -> Result<SymplecticSample> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let len = rng.random_range(5..=30);
        self.sample_from(seed, len, &mut rng)
    }

    /// As [`Self::sample`] with a fixed word length; length 0 leaves only the
    /// inner and central twist.
    pub fn sample_with_length(&self, seed: u64, word_length: usize) -> Result<SymplecticSample> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.sample_from(seed, word_length, &mut rng)
    }

    fn sample_from(&self, seed: u64, word_length: usize, rng: &mut ChaCha8Rng) -> Result<SymplecticSample> {
        for _ in 0..LIFT_RETRIES {
            let m = self.transvection_word(word_length, rng);
            let map = self.lift(&m, rng)?;
            let mut map = map;
            if !map.validate(&self.group).is_empty() || map.state() != MapState::Automorphism {
                continue;
            }
            return self.analyze(seed, word_length, map);
        }
        Err(Error::RetryExhausted(LIFT_RETRIES))
    }

    fn transvection_word(&self, len: usize, rng: &mut ChaCha8Rng) -> Matrix {
        let d = 2 * self.n;
        let mut m: Matrix = (0..d).map(|k| unit(d, k)).collect();
        for _ in 0..len {
            let u: Vec<u64> = loop {
                let u: Vec<u64> = (0..d).map(|_| rng.random_range(0..self.p)).collect();
                if u.iter().any(|&x| x != 0) {
                    break u;
                }
            };
            let lambda = rng.random_range(1..self.p);
            for col in m.iter_mut() {
                let s = lambda * self.form(col, &u) % self.p;
                for (x, &ui) in col.iter_mut().zip(&u) {
                    *x = (*x + s * ui) % self.p;
                }
            }
        }
        m
    }

    /// Images with zero central part, then a random central automorphism
    /// `g -> g c^f(g)` and a random inner automorphism.
    fn lift(&self, m: &Matrix, rng: &mut ChaCha8Rng) -> Result<GeneratorMap> {
        let pres = &*self.pres;
        let d = 2 * self.n;
        let c = pres.generator(d);
        let r = pres.random_element(rng);
        let mut images = Vec::with_capacity(d + 1);
        for col in m {
            let mut exps: Vec<u32> = col.iter().map(|&x| x as u32).collect();
            exps.push(0);
            let e = Element::from_exponents(self.p as u32, exps)?;
            let f = rng.random_range(0..self.p) as i64;
            let twisted = pres.mul(&e, &pres.pow(&c, f));
            images.push(pres.conj(&twisted, &r));
        }
        images.push(c);
        GeneratorMap::new(self.pres.clone(), images)
    }

    /// Action of `map` on `G/Z`.
    pub fn induced_matrix(&self, map: &GeneratorMap) -> Matrix {
        let d = 2 * self.n;
        map.images()[..d]
            .iter()
            .map(|e| e.exponents()[..d].iter().map(|&x| x as u64).collect())
            .collect()
    }

    /// Validates `map` and computes its order by the matrix method.
    pub fn analyze(&self, seed: u64, word_length: usize, mut map: GeneratorMap) -> Result<SymplecticSample> {
        let violations = map.validate(&self.group);
        if !violations.is_empty() || map.state() != MapState::Automorphism {
            return Err(Error::NotAutomorphism(map.to_string()));
        }
        let d = 2 * self.n;
        if map.images()[d] != self.pres.generator(d) {
            return Err(Error::NotAutomorphism("the map moves the center".into()));
        }
        let matrix = self.induced_matrix(&map);
        let matrix_order = self.matrix_order(&matrix);
        let images = map.indexed(&self.group);
        let order = if is_identity(&self.group, &map_power(&self.group, &images, matrix_order)) {
            matrix_order
        } else {
            // alpha^o_mat is central, so of order p
            if !is_identity(&self.group, &map_power(&self.group, &images, matrix_order * self.p)) {
                return Err(Error::StrategyDisagreement(
                    "power of the map acting trivially on G/Z has order above p".into(),
                ));
            }
            matrix_order * self.p
        };
        Ok(SymplecticSample {
            seed,
            word_length,
            matrix,
            map,
            matrix_order,
            order,
            p_part: p_part(order, self.p),
        })
    }

    /// Order in `GL(2n, p)`, by stripping prime factors from `|Sp(2n, p)|`.
    pub fn matrix_order(&self, m: &Matrix) -> u64 {
        let mut o = self.sp_order;
        for &(q, e) in &self.sp_factors {
            for _ in 0..e {
                if mat_is_identity(&mat_pow(m, o / q, self.p)) {
                    o /= q;
                } else {
                    break;
                }
            }
        }
        o
    }

    /// Order of the map by repeated composition.
    pub fn direct_order(&self, map: &GeneratorMap) -> Result<u64> {
        map_order(&self.group, &map.indexed(&self.group), ORDER_CAP)
    }

    /// For `p = 3, n = 2`: the order-9 automorphism `x1 -> y2`,
    /// `y1 -> x2^2 y1^2`, `x2 -> x1 y1 y2`, `y2 -> x1^2 y2^2`.
    pub fn order9_witness(&self) -> Result<GeneratorMap> {
        if self.p != 3 || self.n != 2 {
            return Err(Error::InvalidParameter("the witness lives on 3^5".into()));
        }
        // generator order x1, x2, y1, y2, c
        GeneratorMap::parse(self.pres.clone(), &["y2", "x1 y1 y2", "x2^2 y1^2", "x1^2 y2^2", "c"])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CampaignReport {
    pub p: u64,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    /// `p > 2n`: every p-part must be at most `p`
    pub bound_applies: bool,
    /// p-part -> number of samples, witness excluded
    pub distribution: BTreeMap<u64, usize>,
    /// seeds of samples with p-part above `p` while the bound applies
    pub violations: Vec<u64>,
    pub witness: Option<SampleSummary>,
    /// sorted by trial index
    pub samples: Vec<SampleSummary>,
}

impl CampaignReport {
    pub fn holds(&self) -> bool {
        let bound = !self.bound_applies || self.violations.is_empty();
        let witness = match (self.p, self.n) {
            (3, 2) => self.witness.as_ref().is_some_and(|w| w.p_part == 9),
            _ => true,
        };
        bound && witness
    }

    pub fn max_p_part(&self) -> u64 {
        self.samples.iter().map(|s| s.p_part).max().unwrap_or(1)
    }
}

pub fn sample_symplectic_automorphism(p: u32, n: usize, seed: u64) -> Result<SymplecticSample> {
    SymplecticSampler::new(p, n)?.sample(seed)
}

/// Runs `trials` independent samples; at `p = 3, n = 2` the order-9 witness
/// is added as a designated sample.
pub fn theorem33_campaign(p: u32, n: usize, trials: usize, seed: u64) -> Result<CampaignReport> {
    if trials == 0 {
        return Err(Error::InvalidParameter("a campaign needs at least one trial".into()));
    }
    let sampler = SymplecticSampler::new(p, n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seeds: Vec<u64> = (0..trials).map(|_| rng.random()).collect();
    let samples = seeds
        .par_iter()
        .map(|&s| sampler.sample(s).map(|x| x.summary()))
        .collect::<Result<Vec<_>>>()?;
    let witness = if p == 3 && n == 2 {
        Some(sampler.analyze(seed, 0, sampler.order9_witness()?)?.summary())
    } else {
        None
    };
    let pp = p as u64;
    let bound_applies = pp > 2 * n as u64;
    let mut distribution = BTreeMap::new();
    let mut violations = Vec::new();
    for s in &samples {
        *distribution.entry(s.p_part).or_insert(0) += 1;
        if bound_applies && s.p_part > pp {
            violations.push(s.seed);
        }
    }
    Ok(CampaignReport {
        p: pp,
        n,
        trials,
        seed,
        bound_applies,
        distribution,
        violations,
        witness,
        samples,
    })
}

/// `|Sp(2n, p)| = p^(n^2) prod_{i=1..n} (p^(2i) - 1)`.
pub fn sp_order(p: u64, n: usize) -> Result<u64> {
    let too_large = || Error::TooLarge {
        order: u64::MAX,
        bound: u64::MAX,
    };
    let mut o = p.checked_pow((n * n) as u32).ok_or_else(too_large)?;
    for i in 1..=n as u32 {
        let f = p.checked_pow(2 * i).ok_or_else(too_large)? - 1;
        o = o.checked_mul(f).ok_or_else(too_large)?;
    }
    Ok(o)
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut q = 2u64;
    while q * q <= n {
        if n.is_multiple_of(q) {
            let mut e = 0;
            while n.is_multiple_of(q) {
                n /= q;
                e += 1;
            }
            out.push((q, e));
        }
        q += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn p_part(mut x: u64, p: u64) -> u64 {
    let mut r = 1;
    while x.is_multiple_of(p) {
        x /= p;
        r *= p;
    }
    r
}

fn unit(d: usize, k: usize) -> Vec<u64> {
    let mut v = vec![0; d];
    v[k] = 1;
    v
}

fn mat_mul(a: &Matrix, b: &Matrix, p: u64) -> Matrix {
    // (a b) e_k = a (b e_k)
    b.iter()
        .map(|col| {
            let mut out = vec![0u64; a.len()];
            for (j, &x) in col.iter().enumerate() {
                if x != 0 {
                    for (o, &y) in out.iter_mut().zip(&a[j]) {
                        *o = (*o + x * y) % p;
                    }
                }
            }
            out
        })
        .collect()
}

fn mat_pow(m: &Matrix, mut k: u64, p: u64) -> Matrix {
    let d = m.len();
    let mut acc: Matrix = (0..d).map(|i| unit(d, i)).collect();
    let mut sq = m.clone();
    while k > 0 {
        if k & 1 == 1 {
            acc = mat_mul(&acc, &sq, p);
        }
        k >>= 1;
        if k > 0 {
            sq = mat_mul(&sq, &sq, p);
        }
    }
    acc
}

fn mat_is_identity(m: &Matrix) -> bool {
    m.iter()
        .enumerate()
        .all(|(k, col)| col.iter().enumerate().all(|(i, &x)| x == (i == k) as u64))
}

fn map_power(g: &ConcreteGroup, images: &[u32], mut k: u64) -> Vec<u32> {
    let mut acc = g.generators().to_vec();
    let mut sq = images.to_vec();
    while k > 0 {
        if k & 1 == 1 {
            acc = compose_indexed(g, &acc, &sq);
        }
        k >>= 1;
        if k > 0 {
            sq = compose_indexed(g, &sq, &sq);
        }
    }
    acc
}

fn is_identity(g: &ConcreteGroup, images: &[u32]) -> bool {
    images == g.generators()
}

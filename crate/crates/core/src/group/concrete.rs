use std::sync::Arc;

use crate::pc::{Element, PcPresentation, Word};
use crate::{Error, Result};

/// Full multiplication tables are kept for groups at most this large.
pub const FULL_TABLE_LIMIT: usize = 4096;

/// A finite p-group enumerated as indices `0..order`.
///
/// Every element carries a *code*: a base-`p` number whose digits `d_i`
/// (most significant first) express the element as
/// `g_0^{d_0} ... g_{r-1}^{d_{r-1}}` in the group's generator list.
/// For groups built from a presentation the code is the index itself
/// (mixed-radix encoding of the normal form). Quotients keep the parent's
/// generator list, and an element's code is that of its minimal coset
/// representative.
///
/// Multiplication walks the letters of the right operand through a
/// right-multiplication table `x -> x * g_i`.
#[derive(Clone)]
pub struct ConcreteGroup {
    prime: u32,
    rank: usize,
    order: usize,
    rmul: Vec<u32>,
    inv: Vec<u32>,
    // digits of each element's code, `rank` bytes per element
    digits: Vec<u8>,
    gens: Vec<u32>,
    table: Option<Vec<u32>>,
    pres: Option<Arc<PcPresentation>>,
}

impl std::fmt::Debug for ConcreteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ConcreteGroup")
            .field("prime", &self.prime)
            .field("rank", &self.rank)
            .field("order", &self.order)
            .finish()
    }
}

impl ConcreteGroup {
    /// Enumerates the group defined by a presentation.
    ///
    /// The right-multiplication table is filled one generator column at a
    /// time from the last generator upwards. For column `k` the tail
    /// subgroup `S_k = <g_{k+1}, ...>` occupies the index prefix
    /// `0..p^{m-1-k}`, and conjugation by `g_k` on it is tabulated first;
    /// then `u g_k^{e} v * g_k = (u g_k^{e+1}) v^{g_k}` needs only columns
    /// above `k`.
    pub fn from_presentation(pres: &PcPresentation) -> Result<Self> {
        Self::build(Arc::new(pres.clone()))
    }

    pub fn from_arc(pres: Arc<PcPresentation>) -> Result<Self> {
        Self::build(pres)
    }

    fn build(pres: Arc<PcPresentation>) -> Result<Self> {
        let p = pres.prime();
        if p > u8::MAX as u32 {
            return Err(Error::InadmissiblePrime(p as u64, "enumeration supports p < 256"));
        }
        let m = pres.rank();
        let order = pres.order();
        if order > u32::MAX as u64 / 2 {
            return Err(Error::TooLarge {
                order,
                bound: u32::MAX as u64 / 2,
            });
        }
        let order = order as usize;
        let place: Vec<usize> = (0..m).map(|i| (p as usize).pow((m - 1 - i) as u32)).collect();

        let mut digits = vec![0u8; order * m];
        for x in 0..order {
            let mut c = x;
            for i in (0..m).rev() {
                digits[x * m + i] = (c % p as usize) as u8;
                c /= p as usize;
            }
        }

        let mut g = ConcreteGroup {
            prime: p,
            rank: m,
            order,
            rmul: vec![u32::MAX; order * m],
            inv: Vec::new(),
            digits,
            gens: (0..m).map(|i| place[i] as u32).collect(),
            table: None,
            pres: Some(pres.clone()),
        };

        // inverse of each generator, as an index; filled together with columns
        let mut inv_gen = vec![0u32; m];
        for k in (0..m).rev() {
            let sub = place[k]; // |S_k|
            // word evaluation inside S_k, columns > k only
            let eval = |g: &ConcreteGroup, start: u32, w: &Word, inv_gen: &[u32]| -> u32 {
                let mut acc = start;
                for &(l, e) in w {
                    debug_assert!(l > k);
                    if e > 0 {
                        for _ in 0..e {
                            acc = g.rmul[acc as usize * m + l];
                        }
                    } else {
                        for _ in 0..(-e) {
                            acc = g.mul(acc, inv_gen[l]);
                        }
                    }
                }
                acc
            };
            let power = eval(&g, 0, pres.power_word(k), &inv_gen);
            // g_l^{g_k} for l > k
            let mut conj_gen = vec![0u32; m];
            for l in k + 1..m {
                conj_gen[l] = eval(&g, place[l] as u32, pres.commutator_word(l, k), &inv_gen);
            }
            // conjugation by g_k on S_k, by peeling the last letter
            let mut conj = vec![0u32; sub];
            for v in 1..sub {
                let row = &g.digits[v * m..(v + 1) * m];
                let l = (k + 1..m).rev().find(|&l| row[l] != 0).unwrap();
                let prev = v - place[l];
                conj[v] = g.mul(conj[prev], conj_gen[l]);
            }
            for x in 0..order {
                let q = x / sub;
                let v = x % sub;
                let dk = g.digits[x * m + k] as u32;
                let base = if dk + 1 < p {
                    (q + 1) * sub
                } else {
                    (q - (p as usize - 1)) * sub + power as usize
                };
                let r = g.mul(base as u32, conj[v]);
                g.rmul[x * m + k] = r;
            }
            // g_k^{-1} = g_k^{o-1}
            let gk = place[k] as u32;
            let mut acc = gk;
            let mut prev = 0u32;
            while acc != 0 {
                prev = acc;
                acc = g.mul(acc, gk);
            }
            inv_gen[k] = prev;
        }

        // x = g_f * x'' with f the first nonzero letter: x^-1 = x''^-1 g_f^-1
        let mut inv = vec![0u32; order];
        for x in 1..order {
            let row = &g.digits[x * m..(x + 1) * m];
            let f = row.iter().position(|&d| d != 0).unwrap();
            let rest = x - place[f];
            inv[x] = g.mul(inv[rest], inv_gen[f]);
        }
        g.inv = inv;
        if order <= FULL_TABLE_LIMIT {
            g.fill_table();
        }
        Ok(g)
    }

    fn fill_table(&mut self) {
        let n = self.order;
        let mut t = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                t[a * n + b] = self.walk(a as u32, b as u32);
            }
        }
        self.table = Some(t);
    }

    /// Assembles a group from raw tables; used by quotients.
    pub(crate) fn from_parts(
        prime: u32,
        rank: usize,
        rmul: Vec<u32>,
        inv: Vec<u32>,
        digits: Vec<u8>,
        gens: Vec<u32>,
    ) -> Self {
        let order = inv.len();
        let mut g = ConcreteGroup {
            prime,
            rank,
            order,
            rmul,
            inv,
            digits,
            gens,
            table: None,
            pres: None,
        };
        if order <= FULL_TABLE_LIMIT {
            g.fill_table();
        }
        g
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    /// Length of the generator list.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> u32 {
        0
    }

    /// Indices of the generators `g_0, ..., g_{r-1}` (possibly repeated, or
    /// the identity, in quotients).
    pub fn generators(&self) -> &[u32] {
        &self.gens
    }

    pub fn presentation(&self) -> Option<&PcPresentation> {
        self.pres.as_deref()
    }

    /// Code digits of `x`.
    pub fn letters(&self, x: u32) -> &[u8] {
        let m = self.rank;
        &self.digits[x as usize * m..(x as usize + 1) * m]
    }

    #[inline]
    pub fn rmul_gen(&self, x: u32, i: usize) -> u32 {
        self.rmul[x as usize * self.rank + i]
    }

    #[inline]
    fn walk(&self, a: u32, b: u32) -> u32 {
        let m = self.rank;
        let mut acc = a as usize;
        let d = &self.digits[b as usize * m..(b as usize + 1) * m];
        for (i, &e) in d.iter().enumerate() {
            for _ in 0..e {
                acc = self.rmul[acc * m + i] as usize;
            }
        }
        acc as u32
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.table {
            Some(t) => t[a as usize * self.order + b as usize],
            None => self.walk(a, b),
        }
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    pub fn pow(&self, a: u32, n: i64) -> u32 {
        let base = if n < 0 { self.inv(a) } else { a };
        let mut k = n.unsigned_abs();
        let (mut acc, mut sq) = (0u32, base);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            k >>= 1;
            if k > 0 {
                sq = self.mul(sq, sq);
            }
        }
        acc
    }

    /// `[a, b] = a^-1 b^-1 a b`
    #[inline]
    pub fn comm(&self, a: u32, b: u32) -> u32 {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inv(ba), ab)
    }

    /// `a^b = b^-1 a b`
    #[inline]
    pub fn conj(&self, a: u32, b: u32) -> u32 {
        self.mul(self.mul(self.inv(b), a), b)
    }

    pub fn element_order(&self, x: u32) -> u64 {
        let p = self.prime as i64;
        let mut order = 1u64;
        let mut y = x;
        while y != 0 {
            y = self.pow(y, p);
            order *= self.prime as u64;
        }
        order
    }

    /// Normal form of an index; only for groups built from a presentation.
    pub fn element(&self, x: u32) -> Element {
        assert!(self.pres.is_some(), "element() needs a presentation-backed group");
        Element::from_raw(self.letters(x).iter().map(|&d| d as u32).collect())
    }

    /// Index of a normal form; only for groups built from a presentation.
    pub fn index_of(&self, e: &Element) -> u32 {
        assert!(self.pres.is_some(), "index_of() needs a presentation-backed group");
        e.exponents()
            .iter()
            .fold(0u64, |acc, &d| acc * self.prime as u64 + d as u64) as u32
    }

    /// Evaluates a word in the group's generators.
    pub fn evaluate(&self, w: &Word) -> u32 {
        let mut acc = 0u32;
        for &(g, e) in w {
            let s = if e < 0 { self.inv(self.gens[g]) } else { self.gens[g] };
            for _ in 0..e.unsigned_abs() {
                acc = self.mul(acc, s);
            }
        }
        acc
    }

    /// Evaluates `g_0^{d_0} ... ` for the code digits of `x`, with each
    /// generator replaced by `images[i]`.
    pub fn apply_images(&self, x: u32, images: &[u32]) -> u32 {
        let mut acc = 0u32;
        for (i, &d) in self.letters(x).iter().enumerate() {
            for _ in 0..d {
                acc = self.mul(acc, images[i]);
            }
        }
        acc
    }

    pub fn is_abelian(&self) -> bool {
        self.gens
            .iter()
            .enumerate()
            .all(|(i, &a)| self.gens[..i].iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }
}

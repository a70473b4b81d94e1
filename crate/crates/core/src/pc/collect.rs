//! Collection from the left.
//!
//! To multiply a normal form `u g_i^{e_i} v` (with `v` in later generators)
//! by `g_i`, the tail `v` is cut off, `g_i` is absorbed into the prefix and
//! the conjugated tail `v^{g_i}` is multiplied back on generator by
//! generator. Conjugates `g_j^{g_i}` are precomputed normal forms in
//! generators `> i`, so the recursion only ever descends to later
//! generators.

use std::cell::Cell;

use super::presentation::NormalForms;
use super::{Element, PcPresentation, Word};
use crate::{Error, Result};

pub(super) struct Engine<'a> {
    p: u32,
    m: usize,
    nf: &'a NormalForms,
    steps: Cell<u64>,
    limit: u64,
}

impl<'a> Engine<'a> {
    pub(super) fn new(p: u32, m: usize, nf: &'a NormalForms, limit: u64) -> Self {
        Engine {
            p,
            m,
            nf,
            steps: Cell::new(0),
            limit,
        }
    }

    fn tick(&self) -> Result<()> {
        let s = self.steps.get() + 1;
        self.steps.set(s);
        if s > self.limit {
            Err(Error::CollectionLimit(self.limit))
        } else {
            Ok(())
        }
    }

    /// `e <- e * g_i^t` for `0 < t < p`.
    fn mul_gen_pow(&self, e: &mut [u32], i: usize, t: u32) -> Result<()> {
        if e[i + 1..].iter().all(|&x| x == 0) {
            self.tick()?;
            let s = e[i] + t;
            if s < self.p {
                e[i] = s;
            } else {
                e[i] = s - self.p;
                e[i + 1..].copy_from_slice(&self.nf.power[i].exponents()[i + 1..]);
            }
            return Ok(());
        }
        for _ in 0..t {
            self.mul_gen(e, i)?;
        }
        Ok(())
    }

    /// `e <- e * g_i`.
    fn mul_gen(&self, e: &mut [u32], i: usize) -> Result<()> {
        self.tick()?;
        let tail_start = i + 1;
        let has_tail = e[tail_start..].iter().any(|&x| x != 0);
        let tail: Vec<u32> = if has_tail {
            let t = e[tail_start..].to_vec();
            e[tail_start..].fill(0);
            t
        } else {
            Vec::new()
        };
        if e[i] + 1 < self.p {
            e[i] += 1;
        } else {
            e[i] = 0;
            e[tail_start..].copy_from_slice(&self.nf.power[i].exponents()[tail_start..]);
        }
        for (off, &t) in tail.iter().enumerate() {
            if t == 0 {
                continue;
            }
            let j = tail_start + off;
            let c = self.nf.conj[i * self.m + j].exponents();
            for _ in 0..t {
                self.mul_elem(e, c)?;
            }
        }
        Ok(())
    }

    /// `e <- e * h` for a normal form `h`.
    pub(super) fn mul_elem(&self, e: &mut [u32], h: &[u32]) -> Result<()> {
        // Disjoint supports with h entirely to the right concatenate directly.
        let last_e = e.iter().rposition(|&x| x != 0);
        let first_h = match h.iter().position(|&x| x != 0) {
            Some(f) => f,
            None => return Ok(()),
        };
        if last_e.is_none_or(|l| l < first_h) {
            for (a, &b) in e[first_h..].iter_mut().zip(&h[first_h..]) {
                *a = b;
            }
            return Ok(());
        }
        for (j, &t) in h.iter().enumerate() {
            if t != 0 {
                self.mul_gen_pow(e, j, t)?;
            }
        }
        Ok(())
    }

    pub(super) fn inverse(&self, g: &Element) -> Result<Element> {
        let mut acc = vec![0u32; self.m];
        for j in (0..self.m).rev() {
            for _ in 0..g.exponents()[j] {
                self.mul_elem(&mut acc, self.nf.inv_gen[j].exponents())?;
            }
        }
        Ok(Element::from_raw(acc))
    }

    pub(super) fn collect_into(&self, e: &mut [u32], word: &Word) -> Result<()> {
        for &(g, x) in word {
            if g >= self.m {
                return Err(Error::GeneratorOutOfRange(g, self.m));
            }
            if x > 0 {
                let mut left = x as u64;
                while left > 0 {
                    let t = left.min(self.p as u64 - 1) as u32;
                    self.mul_gen_pow(e, g, t)?;
                    left -= t as u64;
                }
            } else {
                for _ in 0..x.unsigned_abs() {
                    self.mul_elem(e, self.nf.inv_gen[g].exponents())?;
                }
            }
        }
        Ok(())
    }

    pub(super) fn collect_word(&self, word: &Word) -> Result<Element> {
        let mut e = vec![0u32; self.m];
        self.collect_into(&mut e, word)?;
        Ok(Element::from_raw(e))
    }

    pub(super) fn steps(&self) -> u64 {
        self.steps.get()
    }
}

impl PcPresentation {
    /// Normal form of a word. Fails only when the rewrite budget runs out.
    pub fn collect(&self, word: &Word) -> Result<Element> {
        self.engine().collect_word(word)
    }

    /// Normal form of a word together with the number of rewrite steps used.
    pub fn collect_counted(&self, word: &Word) -> Result<(Element, u64)> {
        let eng = self.engine();
        let e = eng.collect_word(word)?;
        Ok((e, eng.steps()))
    }

    pub fn try_mul(&self, g: &Element, h: &Element) -> Result<Element> {
        let mut e = g.exponents().to_vec();
        self.engine().mul_elem(&mut e, h.exponents())?;
        Ok(Element::from_raw(e))
    }

    /// Product in normal form.
    ///
    /// Panics if collection exceeds the step limit, which cannot happen for
    /// presentations accepted by the builder at the sizes this crate targets.
    pub fn mul(&self, g: &Element, h: &Element) -> Element {
        self.try_mul(g, h).expect("collection step limit exceeded")
    }

    pub fn inv(&self, g: &Element) -> Element {
        self.engine()
            .inverse(g)
            .expect("collection step limit exceeded")
    }

    /// `g^n` for any integer `n`.
    pub fn pow(&self, g: &Element, n: i64) -> Element {
        let base = if n < 0 { self.inv(g) } else { g.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = self.identity();
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            k >>= 1;
            if k > 0 {
                sq = self.mul(&sq, &sq);
            }
        }
        acc
    }

    /// `[g, h] = g^-1 h^-1 g h`.
    pub fn comm(&self, g: &Element, h: &Element) -> Element {
        let gh = self.mul(g, h);
        let hg = self.mul(h, g);
        self.mul(&self.inv(&hg), &gh)
    }

    /// `g^h = h^-1 g h`.
    pub fn conj(&self, g: &Element, h: &Element) -> Element {
        self.mul(&self.inv(h), &self.mul(g, h))
    }

    /// Evaluates a word by mapping each generator to an element, with
    /// negative exponents taken as inverses.
    pub fn evaluate(&self, word: &Word, images: &[Element]) -> Element {
        let mut acc = self.identity();
        for &(g, x) in word {
            let base = if x < 0 { self.inv(&images[g]) } else { images[g].clone() };
            for _ in 0..x.unsigned_abs() {
                acc = self.mul(&acc, &base);
            }
        }
        acc
    }

    /// Order of an element (a power of `p`).
    pub fn element_order(&self, g: &Element) -> u64 {
        let mut order = 1u64;
        let mut x = g.clone();
        while !x.is_identity() {
            x = self.pow(&x, self.prime() as i64);
            order *= self.prime() as u64;
        }
        order
    }
}

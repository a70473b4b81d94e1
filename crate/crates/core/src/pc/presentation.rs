use std::fmt;

use super::collect::Engine;
use super::{Element, Word};
use crate::{Error, Result};

/// Rewrite-step budget for a single collection.
pub const DEFAULT_STEP_LIMIT: u64 = 10_000_000;

/// A power-commutator presentation with relative orders `p`.
///
/// Relations are stored as words:
/// - `g_i^p = powers[i]`, a word in `g_{i+1}, ..., g_{m-1}`;
/// - `[g_j, g_i] = commutator(j, i)` for `i < j`, a word in `g_{i+1}, ...`.
///
/// Absent relations are trivial. Words only ever mention generators later
/// than the smaller index of the relation, which is what makes collection
/// terminate.
#[derive(Clone)]
pub struct PcPresentation {
    prime: u32,
    names: Vec<String>,
    powers: Vec<Word>,
    // flat m*m, entry j*m + i holds [g_j, g_i] for i < j
    commutators: Vec<Word>,
    pub(super) nf: NormalForms,
    pub(super) step_limit: u64,
}

/// Collected normal forms of the defining data, filled bottom-up.
#[derive(Clone, Debug)]
pub(super) struct NormalForms {
    /// g_i^p
    pub power: Vec<Element>,
    /// flat m*m, entry i*m + j holds g_j^{g_i} = g_j [g_j, g_i] for i < j
    pub conj: Vec<Element>,
    /// g_i^{-1}
    pub inv_gen: Vec<Element>,
}

impl PartialEq for PcPresentation {
    fn eq(&self, other: &Self) -> bool {
        self.prime == other.prime
            && self.names == other.names
            && self.powers == other.powers
            && self.commutators == other.commutators
    }
}

impl Eq for PcPresentation {}

impl fmt::Debug for PcPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = f.debug_struct("PcPresentation");
        s.field("prime", &self.prime).field("names", &self.names);
        let rels: Vec<String> = self.relation_strings();
        s.field("relations", &rels).finish()
    }
}

impl PcPresentation {
    pub fn builder<S: Into<String>>(prime: u32, names: impl IntoIterator<Item = S>) -> PresentationBuilder {
        PresentationBuilder::new(prime, names)
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// `p^rank`, as a u64.
    pub fn order(&self) -> u64 {
        (self.prime as u64).pow(self.rank() as u32)
    }

    pub fn generator_index(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn power_word(&self, i: usize) -> &Word {
        &self.powers[i]
    }

    /// The word for `[g_j, g_i]`; requires `i < j`.
    pub fn commutator_word(&self, j: usize, i: usize) -> &Word {
        assert!(i < j, "commutator words are stored for i < j");
        &self.commutators[j * self.rank() + i]
    }

    pub fn identity(&self) -> Element {
        Element::identity(self.rank())
    }

    pub fn generator(&self, i: usize) -> Element {
        Element::generator(self.rank(), i)
    }

    /// All generators as elements.
    pub fn generators(&self) -> Vec<Element> {
        (0..self.rank()).map(|i| self.generator(i)).collect()
    }

    /// Replaces the per-collection rewrite budget.
    pub fn with_step_limit(mut self, limit: u64) -> Self {
        self.step_limit = limit;
        self
    }

    /// Parses a word written with generator names, e.g. `"a b^-1 c^2"`.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        parse_word(&self.names, text)
    }

    /// Renders a normal form as `a^2 b c^4`; the identity renders as `1`.
    pub fn display(&self, g: &Element) -> String {
        display_word(&self.names, &g.to_word())
    }

    fn relation_strings(&self) -> Vec<String> {
        let m = self.rank();
        let mut out = Vec::new();
        for i in 0..m {
            if !self.powers[i].is_empty() {
                out.push(format!(
                    "{}^{} = {}",
                    self.names[i],
                    self.prime,
                    display_word(&self.names, &self.powers[i])
                ));
            }
        }
        for j in 0..m {
            for i in 0..j {
                let w = &self.commutators[j * m + i];
                if !w.is_empty() {
                    out.push(format!(
                        "[{}, {}] = {}",
                        self.names[j],
                        self.names[i],
                        display_word(&self.names, w)
                    ));
                }
            }
        }
        out
    }

    pub(super) fn engine(&self) -> Engine<'_> {
        Engine::new(self.prime, self.rank(), &self.nf, self.step_limit)
    }
}

pub(crate) fn display_word(names: &[String], w: &Word) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    w.iter()
        .map(|&(g, e)| {
            if e == 1 {
                names[g].clone()
            } else {
                format!("{}^{}", names[g], e)
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

pub(crate) fn parse_word(names: &[String], text: &str) -> Result<Word> {
    let mut word = Word::new();
    for token in text.split(|c: char| c.is_whitespace() || c == '*' || c == '.') {
        if token.is_empty() || token == "1" {
            continue;
        }
        let (name, exp) = match token.split_once('^') {
            Some((n, e)) => {
                let e: i64 = e
                    .parse()
                    .map_err(|_| Error::Format(format!("bad exponent in {token:?}")))?;
                (n, e)
            }
            None => (token, 1),
        };
        let g = names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        if exp != 0 {
            word.push((g, exp));
        }
    }
    Ok(word)
}

/// Incremental construction of a [`PcPresentation`].
#[derive(Clone, Debug)]
pub struct PresentationBuilder {
    prime: u32,
    names: Vec<String>,
    powers: Vec<Word>,
    commutators: Vec<Word>,
    errors: Vec<String>,
}

impl PresentationBuilder {
    pub fn new<S: Into<String>>(prime: u32, names: impl IntoIterator<Item = S>) -> Self {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let m = names.len();
        PresentationBuilder {
            prime,
            names,
            powers: vec![Word::new(); m],
            commutators: vec![Word::new(); m * m],
            errors: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    /// Index of a generator by name. Panics on unknown names; builder input
    /// is program text, not user data.
    pub fn idx(&self, name: &str) -> usize {
        self.names
            .iter()
            .position(|n| n == name)
            .unwrap_or_else(|| panic!("unknown generator {name:?}"))
    }

    /// Sets `g_i^p = word`.
    pub fn power(mut self, i: usize, word: Word) -> Self {
        if i >= self.rank() {
            self.errors.push(format!("power relation for generator {i} out of range"));
        } else {
            self.powers[i] = word;
        }
        self
    }

    /// Sets `[g_j, g_i] = word`; requires `i < j`.
    pub fn commutator(mut self, j: usize, i: usize, word: Word) -> Self {
        let m = self.rank();
        if i >= j || j >= m {
            self.errors
                .push(format!("commutator pair ({j}, {i}) must satisfy i < j < rank"));
        } else {
            self.commutators[j * m + i] = word;
        }
        self
    }

    /// Sets a relation by names: `[g, h] = word` for any distinct `g`, `h`
    /// provided `g` is the later generator.
    pub fn named_commutator(self, later: &str, earlier: &str, word: &[(&str, i64)]) -> Self {
        let (j, i) = (self.idx(later), self.idx(earlier));
        let w = word.iter().map(|&(n, e)| (self.idx(n), e)).collect();
        self.commutator(j, i, w)
    }

    pub fn named_power(self, g: &str, word: &[(&str, i64)]) -> Self {
        let i = self.idx(g);
        let w = word.iter().map(|&(n, e)| (self.idx(n), e)).collect();
        self.power(i, w)
    }

    pub fn build(self) -> Result<PcPresentation> {
        let PresentationBuilder {
            prime,
            names,
            powers,
            commutators,
            errors,
        } = self;
        if let Some(e) = errors.into_iter().next() {
            return Err(Error::MalformedPresentation(e));
        }
        if prime < 3 || !is_prime(prime as u64) {
            return Err(Error::InadmissiblePrime(prime as u64, "presentations need an odd prime"));
        }
        if prime > u16::MAX as u32 {
            return Err(Error::InadmissiblePrime(prime as u64, "prime too large"));
        }
        let m = names.len();
        for (k, n) in names.iter().enumerate() {
            if n.is_empty() || n.contains(|c: char| c.is_whitespace() || c == ',' || c == '^') {
                return Err(Error::MalformedPresentation(format!("bad generator name {n:?}")));
            }
            if names[..k].contains(n) {
                return Err(Error::MalformedPresentation(format!("duplicate generator name {n:?}")));
            }
        }
        let check_word = |w: &Word, floor: usize, what: &str| -> Result<()> {
            for &(g, e) in w {
                if g >= m {
                    return Err(Error::GeneratorOutOfRange(g, m));
                }
                if g <= floor {
                    return Err(Error::MalformedPresentation(format!(
                        "{what} mentions {} which is not later than {}",
                        names[g], names[floor]
                    )));
                }
                if e == 0 || e.unsigned_abs() >= prime as u64 {
                    return Err(Error::MalformedPresentation(format!(
                        "{what} has exponent {e} outside (-p, p) \\ {{0}}"
                    )));
                }
            }
            Ok(())
        };
        for (i, w) in powers.iter().enumerate() {
            check_word(w, i, &format!("power relation of {}", names[i]))?;
        }
        for j in 0..m {
            for i in 0..j {
                check_word(
                    &commutators[j * m + i],
                    i,
                    &format!("commutator [{}, {}]", names[j], names[i]),
                )?;
            }
        }
        let nf = NormalForms {
            power: vec![Element::identity(m); m],
            conj: vec![Element::identity(m); m * m],
            inv_gen: vec![Element::identity(m); m],
        };
        let mut pres = PcPresentation {
            prime,
            names,
            powers,
            commutators,
            nf,
            step_limit: DEFAULT_STEP_LIMIT,
        };
        pres.fill_normal_forms()?;
        Ok(pres)
    }
}

impl PcPresentation {
    /// Collects the relation words from the last generator upwards; each
    /// level only needs data for strictly later generators.
    fn fill_normal_forms(&mut self) -> Result<()> {
        let m = self.rank();
        let p = self.prime;
        for i in (0..m).rev() {
            let power = self.engine().collect_word(&self.powers[i])?;
            self.nf.power[i] = power;

            let power_inv = self.engine().inverse(&self.nf.power[i])?;
            let mut inv = vec![0u32; m];
            inv[i] = p - 1;
            self.engine().mul_elem(&mut inv, power_inv.exponents())?;
            self.nf.inv_gen[i] = Element::from_raw(inv);

            for j in i + 1..m {
                let mut w = vec![(j, 1i64)];
                w.extend_from_slice(&self.commutators[j * m + i]);
                let c = self.engine().collect_word(&w)?;
                self.nf.conj[i * m + j] = c;
            }
        }
        Ok(())
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

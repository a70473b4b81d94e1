use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::group::ConcreteGroup;
use crate::pc::{Element, PcPresentation, Word};
use crate::{Error, Result};

/// How far a [`GeneratorMap`] has been validated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MapState {
    Unchecked,
    Homomorphism,
    Automorphism,
}

/// A defining relation that the images fail to satisfy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub relation: Relation,
    /// The relation's left side evaluated on the images.
    pub lhs: Element,
    /// The image of the relation's right side.
    pub rhs: Element,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    /// `[g_j, g_i]` with `i < j`, stored as `(i, j)`.
    Commutator(usize, usize),
    /// `g_i^p`.
    Power(usize),
}

impl Relation {
    pub fn describe(&self, names: &[String]) -> String {
        match *self {
            Relation::Commutator(i, j) => format!("[{}, {}]", names[j], names[i]),
            Relation::Power(i) => format!("{}^p", names[i]),
        }
    }
}

/// A candidate endomorphism of a presented group, given by the images of the
/// polycyclic generators.
#[derive(Clone, Debug)]
pub struct GeneratorMap {
    base: Arc<PcPresentation>,
    images: Vec<Element>,
    state: MapState,
}

impl PartialEq for GeneratorMap {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images
    }
}

impl GeneratorMap {
    pub fn new(base: Arc<PcPresentation>, images: Vec<Element>) -> Result<Self> {
        if images.len() != base.rank() {
            return Err(Error::InvalidParameter(format!(
                "expected {} images, got {}",
                base.rank(),
                images.len()
            )));
        }
        for e in &images {
            if e.rank() != base.rank() || e.exponents().iter().any(|&x| x >= base.prime()) {
                return Err(Error::InvalidParameter(format!(
                    "image {:?} is not a normal form of the base group",
                    e.exponents()
                )));
            }
        }
        Ok(GeneratorMap {
            base,
            images,
            state: MapState::Unchecked,
        })
    }

    /// Images given as words, collected to normal form.
    pub fn from_words(base: Arc<PcPresentation>, words: &[Word]) -> Result<Self> {
        let images = words.iter().map(|w| base.collect(w)).collect::<Result<Vec<_>>>()?;
        Self::new(base, images)
    }

    /// Images given as text words such as `"a b^-1"`.
    pub fn parse(base: Arc<PcPresentation>, texts: &[&str]) -> Result<Self> {
        let words = texts
            .iter()
            .map(|t| base.parse_word(t))
            .collect::<Result<Vec<_>>>()?;
        Self::from_words(base, &words)
    }

    pub fn identity(base: Arc<PcPresentation>) -> Self {
        let images = base.generators();
        GeneratorMap {
            base,
            images,
            state: MapState::Automorphism,
        }
    }

    pub(crate) fn from_indexed(base: Arc<PcPresentation>, g: &ConcreteGroup, images: &[u32]) -> Self {
        GeneratorMap {
            base,
            images: images.iter().map(|&x| g.element(x)).collect(),
            state: MapState::Unchecked,
        }
    }

    pub(crate) fn with_state(mut self, state: MapState) -> Self {
        self.state = state;
        self
    }

    pub fn base(&self) -> &Arc<PcPresentation> {
        &self.base
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn state(&self) -> MapState {
        self.state
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, e)| *e == self.base.generator(i))
    }

    /// Image of an arbitrary element.
    pub fn apply(&self, x: &Element) -> Element {
        self.base.evaluate(&x.to_word(), &self.images)
    }

    /// Images as indices of an enumeration of the base group.
    pub fn indexed(&self, g: &ConcreteGroup) -> Vec<u32> {
        self.images.iter().map(|e| g.index_of(e)).collect()
    }

    /// Every relation `[g_j, g_i] = w` and `g_i^p = w` of the base, checked on
    /// the images by collection. Empty iff the map is a homomorphism.
    pub fn check_relations(&self) -> Vec<Violation> {
        let pres = &*self.base;
        let m = pres.rank();
        let mut out = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                let lhs = pres.comm(&self.images[j], &self.images[i]);
                let rhs = pres.evaluate(pres.commutator_word(j, i), &self.images);
                if lhs != rhs {
                    out.push(Violation {
                        relation: Relation::Commutator(i, j),
                        lhs,
                        rhs,
                    });
                }
            }
        }
        for i in 0..m {
            let lhs = pres.pow(&self.images[i], pres.prime() as i64);
            let rhs = pres.evaluate(pres.power_word(i), &self.images);
            if lhs != rhs {
                out.push(Violation {
                    relation: Relation::Power(i),
                    lhs,
                    rhs,
                });
            }
        }
        out
    }

    /// Whether the images generate `g`, the enumeration of the base group.
    pub fn check_surjective(&self, g: &ConcreteGroup) -> bool {
        g.subgroup_closure(&self.indexed(g)).order() == g.order()
    }

    /// Runs both checks and records the resulting state.
    pub fn validate(&mut self, g: &ConcreteGroup) -> Vec<Violation> {
        let v = self.check_relations();
        self.state = if !v.is_empty() {
            MapState::Unchecked
        } else if self.check_surjective(g) {
            MapState::Automorphism
        } else {
            MapState::Homomorphism
        };
        v
    }

    /// `x -> other(self(x))`.
    pub fn then(&self, other: &GeneratorMap) -> GeneratorMap {
        let images = self.images.iter().map(|e| other.apply(e)).collect();
        GeneratorMap {
            base: self.base.clone(),
            images,
            state: meet(self.state, other.state),
        }
    }

    /// `k`-fold composite.
    pub fn power(&self, k: u64) -> GeneratorMap {
        let mut acc = GeneratorMap::identity(self.base.clone());
        let mut sq = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.then(&sq);
            }
            k >>= 1;
            if k > 0 {
                sq = sq.then(&sq);
            }
        }
        acc.state = self.state;
        acc
    }

    /// Least `k >= 1` with `alpha^k = 1`, by repeated composition.
    pub fn automorphism_order(&self, g: &ConcreteGroup) -> Result<u64> {
        if self.state != MapState::Automorphism {
            return Err(Error::NotAutomorphism(
                "order requested for a map not validated as an automorphism".into(),
            ));
        }
        map_order(g, &self.indexed(g), ORDER_CAP)
    }

    pub fn display(&self) -> String {
        self.to_string()
    }
}

fn meet(a: MapState, b: MapState) -> MapState {
    use MapState::*;
    match (a, b) {
        (Automorphism, Automorphism) => Automorphism,
        (Unchecked, _) | (_, Unchecked) => Unchecked,
        _ => Homomorphism,
    }
}

impl fmt::Display for GeneratorMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.base.names();
        for (i, e) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{} -> {}", names[i], self.base.display(e))?;
        }
        Ok(())
    }
}

/// Composition cap for [`map_order`].
pub const ORDER_CAP: u64 = 1_000_000;

/// Evaluates a word on index images.
pub(crate) fn eval_indexed(g: &ConcreteGroup, w: &Word, images: &[u32]) -> u32 {
    let mut acc = 0u32;
    for &(l, e) in w {
        let s = if e < 0 { g.inv(images[l]) } else { images[l] };
        for _ in 0..e.unsigned_abs() {
            acc = g.mul(acc, s);
        }
    }
    acc
}

/// The defining relations of a presentation, in checking order.
#[derive(Clone, Debug)]
pub(crate) struct Relations {
    commutators: Vec<(usize, usize, Word)>,
    powers: Vec<(usize, Word)>,
    prime: i64,
}

impl Relations {
    pub(crate) fn of(pres: &PcPresentation) -> Self {
        let m = pres.rank();
        let mut commutators = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                commutators.push((i, j, pres.commutator_word(j, i).clone()));
            }
        }
        Relations {
            commutators,
            powers: (0..m).map(|i| (i, pres.power_word(i).clone())).collect(),
            prime: pres.prime() as i64,
        }
    }

    /// Fail-fast form of [`GeneratorMap::check_relations`] on indices.
    pub(crate) fn hold(&self, g: &ConcreteGroup, images: &[u32]) -> bool {
        self.first_violation(g, images).is_none()
    }

    pub(crate) fn first_violation(&self, g: &ConcreteGroup, images: &[u32]) -> Option<(Relation, u32, u32)> {
        for (i, j, w) in &self.commutators {
            let lhs = g.comm(images[*j], images[*i]);
            let rhs = eval_indexed(g, w, images);
            if lhs != rhs {
                return Some((Relation::Commutator(*i, *j), lhs, rhs));
            }
        }
        for (i, w) in &self.powers {
            let lhs = g.pow(images[*i], self.prime);
            let rhs = eval_indexed(g, w, images);
            if lhs != rhs {
                return Some((Relation::Power(*i), lhs, rhs));
            }
        }
        None
    }
}

/// Order of the endomorphism with index images `images`, by composition.
/// Assumes the map is an automorphism.
pub(crate) fn map_order(g: &ConcreteGroup, images: &[u32], cap: u64) -> Result<u64> {
    let gens = g.generators();
    let mut cur = images.to_vec();
    let mut k = 1u64;
    while cur.as_slice() != gens {
        if k >= cap {
            return Err(Error::OrderTooLarge(cap));
        }
        cur = cur.iter().map(|&x| g.apply_images(x, images)).collect();
        k += 1;
    }
    Ok(k)
}

/// Composite `x -> b(a(x))` on index images.
pub(crate) fn compose_indexed(g: &ConcreteGroup, a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().map(|&x| g.apply_images(x, b)).collect()
}

use std::fmt;
use std::sync::Arc;

use super::GeneratorMap;
use crate::group::ConcreteGroup;
use crate::pc::{PcPresentation, Word};
use crate::{Error, Result};

/// Image shape of one generator: `prefix * f_1^{n_{k_1}} f_2^{n_{k_2}} ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TemplateImage {
    pub prefix: Word,
    /// `(generator, parameter index)` pairs, applied left to right.
    pub factors: Vec<(usize, usize)>,
}

impl TemplateImage {
    pub fn fixed(prefix: Word) -> Self {
        TemplateImage {
            prefix,
            factors: Vec::new(),
        }
    }
}

/// A family of candidate maps with parameters `n_1, ..., n_k` in `[0, p)`.
#[derive(Clone, Debug)]
pub struct MapTemplate {
    base: Arc<PcPresentation>,
    images: Vec<TemplateImage>,
    params: usize,
}

impl MapTemplate {
    pub fn new(base: Arc<PcPresentation>, images: Vec<TemplateImage>) -> Result<Self> {
        if images.len() != base.rank() {
            return Err(Error::InvalidParameter(format!(
                "template has {} images for {} generators",
                images.len(),
                base.rank()
            )));
        }
        let mut params = 0;
        for im in &images {
            for &(g, k) in &im.factors {
                if g >= base.rank() {
                    return Err(Error::GeneratorOutOfRange(g, base.rank()));
                }
                params = params.max(k + 1);
            }
            for &(g, _) in &im.prefix {
                if g >= base.rank() {
                    return Err(Error::GeneratorOutOfRange(g, base.rank()));
                }
            }
        }
        Ok(MapTemplate { base, images, params })
    }

    /// The shape `g -> g f_1^{n_a} f_2^{n_b} f_3^{n_c}` for each listed
    /// generator, with parameters numbered consecutively; unlisted
    /// generators are fixed.
    pub fn commutator_shape(base: Arc<PcPresentation>, moving: &[(&str, &[&str])]) -> Result<Self> {
        let mut images: Vec<TemplateImage> = (0..base.rank())
            .map(|i| TemplateImage::fixed(vec![(i, 1)]))
            .collect();
        let mut k = 0;
        for &(g, factors) in moving {
            let i = base.generator_index(g)?;
            let mut fs = Vec::new();
            for f in factors {
                fs.push((base.generator_index(f)?, k));
                k += 1;
            }
            images[i].factors = fs;
        }
        Self::new(base, images)
    }

    pub fn base(&self) -> &Arc<PcPresentation> {
        &self.base
    }

    pub fn parameter_count(&self) -> usize {
        self.params
    }

    pub fn images(&self) -> &[TemplateImage] {
        &self.images
    }

    /// `p^k`.
    pub fn tuple_count(&self) -> u64 {
        (self.base.prime() as u64).pow(self.params as u32)
    }

    fn check_tuple(&self, tuple: &[u32]) -> Result<()> {
        if tuple.len() != self.params {
            return Err(Error::InvalidParameter(format!(
                "tuple has {} entries, template needs {}",
                tuple.len(),
                self.params
            )));
        }
        if let Some(&bad) = tuple.iter().find(|&&n| n >= self.base.prime()) {
            return Err(Error::InvalidParameter(format!(
                "parameter {bad} is not reduced mod {}",
                self.base.prime()
            )));
        }
        Ok(())
    }

    pub fn instantiate(&self, tuple: &[u32]) -> Result<GeneratorMap> {
        self.check_tuple(tuple)?;
        let words: Vec<Word> = self
            .images
            .iter()
            .map(|im| {
                let mut w = im.prefix.clone();
                w.extend(
                    im.factors
                        .iter()
                        .filter(|&&(_, k)| tuple[k] != 0)
                        .map(|&(g, k)| (g, tuple[k] as i64)),
                );
                w
            })
            .collect();
        GeneratorMap::from_words(self.base.clone(), &words)
    }

    /// Index images of the instance for `tuple`, evaluated in `g`.
    pub fn instantiate_indexed(&self, g: &ConcreteGroup, tuple: &[u32]) -> Vec<u32> {
        let mut out = Vec::new();
        self.instantiate_indexed_into(&IndexedTemplate::new(self, g), g, tuple, &mut out);
        out
    }

    pub(crate) fn instantiate_indexed_into(
        &self,
        t: &IndexedTemplate,
        g: &ConcreteGroup,
        tuple: &[u32],
        out: &mut Vec<u32>,
    ) {
        out.clear();
        for (i, im) in self.images.iter().enumerate() {
            let mut acc = t.prefixes[i];
            for &(f, k) in &im.factors {
                acc = g.mul(acc, t.powers[f][tuple[k] as usize]);
            }
            out.push(acc);
        }
    }
}

/// Precomputed prefixes and generator powers for fast instantiation.
pub(crate) struct IndexedTemplate {
    prefixes: Vec<u32>,
    powers: Vec<Vec<u32>>,
}

impl IndexedTemplate {
    pub(crate) fn new(t: &MapTemplate, g: &ConcreteGroup) -> Self {
        let p = g.prime() as i64;
        let prefixes = t
            .images
            .iter()
            .map(|im| super::map::eval_indexed(g, &im.prefix, g.generators()))
            .collect();
        let powers = g
            .generators()
            .iter()
            .map(|&x| (0..p).map(|e| g.pow(x, e)).collect())
            .collect();
        IndexedTemplate { prefixes, powers }
    }
}

impl fmt::Display for MapTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.base.names();
        for (i, im) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{} -> ", names[i])?;
            let mut parts: Vec<String> = im
                .prefix
                .iter()
                .map(|&(g, e)| {
                    if e == 1 {
                        names[g].clone()
                    } else {
                        format!("{}^{}", names[g], e)
                    }
                })
                .collect();
            parts.extend(im.factors.iter().map(|&(g, k)| format!("{}^n{}", names[g], k + 1)));
            if parts.is_empty() {
                parts.push("1".into());
            }
            f.write_str(&parts.join(" "))?;
        }
        Ok(())
    }
}

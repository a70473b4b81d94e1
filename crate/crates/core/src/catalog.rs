//! Named base groups, their distinguished automorphisms or map templates,
//! and the invariants each construction is expected to produce.
//!
//! Generator orders are chosen so every relation word mentions only later
//! generators. Commutators follow `[g, h] = g^-1 h^-1 g h`, so a relation
//! `[a, b] = c` with `a` before `b` is stored as `[b, a] = c^-1`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::extension::{GeneratorMap, MapTemplate};
use crate::pc::{PcPresentation, PresentationBuilder};
use crate::{Error, Result};

/// Which base group the literal and corrected readings of the order-9
/// construction use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NoritzschVariant {
    /// `a^3 = 1`: extraspecial of exponent 3
    Exponent3,
    /// `a^3 = c`: extraspecial of exponent 9
    Literal,
}

impl std::str::FromStr for NoritzschVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exponent3" => Ok(NoritzschVariant::Exponent3),
            "literal" => Ok(NoritzschVariant::Literal),
            other => Err(Error::InvalidParameter(format!("unknown variant {other:?}"))),
        }
    }
}

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    /// stated with the construction
    Stated,
    /// follows from the construction by a short computation
    Derived,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expect<T> {
    pub value: T,
    pub basis: Basis,
}

fn stated<T>(value: T) -> Option<Expect<T>> {
    Some(Expect {
        value,
        basis: Basis::Stated,
    })
}

fn derived<T>(value: T) -> Option<Expect<T>> {
    Some(Expect {
        value,
        basis: Basis::Derived,
    })
}

/// Expected invariants of a base group and its extension. Unset fields are
/// not asserted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub base_order: Option<Expect<u64>>,
    pub base_exponent: Option<Expect<u64>>,
    pub base_derived_orders: Option<Expect<Vec<u64>>>,
    pub base_class: Option<Expect<usize>>,
    /// whether the distinguished map is an automorphism
    pub alpha_valid: Option<Expect<bool>>,
    pub alpha_order: Option<Expect<u64>>,
    pub extension_order: Option<Expect<u64>>,
    pub extension_dl: Option<Expect<usize>>,
    pub extension_derived_orders: Option<Expect<Vec<u64>>>,
    pub extension_lcs_orders: Option<Expect<Vec<u64>>>,
    pub extension_cd: Option<Expect<Vec<u64>>>,
    /// `(degree, count)` of the characters with `P''` outside the kernel
    pub top_layer: Option<Expect<(u64, u64)>>,
}

/// A name-addressable construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub summary: &'static str,
    /// the only admissible prime, if fixed
    pub fixed_prime: Option<u32>,
    pub min_prime: u32,
    /// takes a size parameter `n`
    pub sized: bool,
    pub min_n: usize,
    /// extension top is determined by a template tuple
    pub templated: bool,
    pub parameters: usize,
}

impl CatalogEntry {
    pub fn admits(&self, p: u32) -> bool {
        match self.fixed_prime {
            Some(q) => p == q,
            None => p >= self.min_prime && crate::pc::is_prime(p as u64),
        }
    }
}

pub const ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        name: "huppert21",
        summary: "extraspecial p^(2n+1) of exponent p, unipotent automorphism of order p",
        fixed_prime: None,
        min_prime: 5,
        sized: true,
        min_n: 3,
        templated: false,
        parameters: 0,
    },
    CatalogEntry {
        name: "huppert22",
        summary: "extraspecial p^5 of exponent p, automorphism of order p",
        fixed_prime: None,
        min_prime: 5,
        sized: false,
        min_n: 0,
        templated: false,
        parameters: 0,
    },
    CatalogEntry {
        name: "noritzsch",
        summary: "extraspecial 3^5 with an automorphism of order 9",
        fixed_prime: Some(3),
        min_prime: 3,
        sized: false,
        min_n: 0,
        templated: false,
        parameters: 0,
    },
    CatalogEntry {
        name: "ex51",
        summary: "extraspecial p^5 of exponent p^2 with a 9-parameter map family",
        fixed_prime: None,
        min_prime: 5,
        sized: false,
        min_n: 0,
        templated: true,
        parameters: 9,
    },
    CatalogEntry {
        name: "ex52",
        summary: "class-3 group of order p^5 and exponent p with a 9-parameter map family",
        fixed_prime: None,
        min_prime: 5,
        sized: false,
        min_n: 0,
        templated: true,
        parameters: 9,
    },
];

pub fn lookup(name: &str) -> Result<&'static CatalogEntry> {
    ENTRIES
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownEntry(name.to_string()))
}

/// Default valid tuples for the templated entries.
pub const EX51_TUPLE: [u32; 9] = [0, 1, 1, 0, 0, 1, 4, 0, 0];
pub const EX52_TUPLE: [u32; 9] = [0, 0, 1, 1, 0, 0, 1, 1, 0];

fn require_prime(p: u32, min: u32) -> Result<()> {
    if p < min || !crate::pc::is_prime(p as u64) {
        return Err(Error::InadmissiblePrime(p as u64, "this construction needs a prime p > 3"));
    }
    Ok(())
}

/// Extraspecial group of order `p^(2n+1)` and exponent `p` on
/// `x1..xn, y1..yn, c` with `[x_i, y_i] = c`.
pub fn build_extraspecial_exp_p(p: u32, n: usize) -> Result<PcPresentation> {
    require_prime(p, 5)?;
    extraspecial_exp_p(p, n)
}

pub(crate) fn extraspecial_exp_p(p: u32, n: usize) -> Result<PcPresentation> {
    if n == 0 {
        return Err(Error::InvalidParameter("extraspecial groups need n >= 1".into()));
    }
    let mut names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    names.extend((1..=n).map(|i| format!("y{i}")));
    names.push("c".into());
    let c = 2 * n;
    let mut b = PresentationBuilder::new(p, names);
    for i in 0..n {
        b = b.commutator(n + i, i, vec![(c, -1)]);
    }
    b.build()
}

/// `a, b, x, y, c` with `[a, b] = [x, y] = c` and `a^p = c` when
/// `a_power_central`, else exponent `p`.
fn abxyc(p: u32, a_power_central: bool) -> Result<PcPresentation> {
    let mut b = PresentationBuilder::new(p, ["a", "b", "x", "y", "c"])
        .named_commutator("b", "a", &[("c", -1)])
        .named_commutator("y", "x", &[("c", -1)]);
    if a_power_central {
        b = b.named_power("a", &[("c", 1)]);
    }
    b.build()
}

/// Extraspecial `p^5` of exponent `p` on `a, b, x, y, c`.
pub fn build_extraspecial_p5(p: u32) -> Result<PcPresentation> {
    require_prime(p, 5)?;
    abxyc(p, false)
}

/// Extraspecial `p^5` of exponent `p^2`: `[a, b] = [x, y] = c`, `a^p = c`.
pub fn build_extraspecial_exp_p2(p: u32) -> Result<PcPresentation> {
    require_prime(p, 5)?;
    abxyc(p, true)
}

/// `[a, b] = c`, `[a, y] = b`, `[x, y] = c`, exponent `p`, on the order
/// `a, x, y, b, c`.
pub fn build_ex52_base(p: u32) -> Result<PcPresentation> {
    require_prime(p, 5)?;
    ex52_base(p)
}

pub(crate) fn ex52_base(p: u32) -> Result<PcPresentation> {
    PresentationBuilder::new(p, ["a", "x", "y", "b", "c"])
        .named_commutator("b", "a", &[("c", -1)])
        .named_commutator("y", "a", &[("b", -1)])
        .named_commutator("y", "x", &[("c", -1)])
        .build()
}

pub fn build_noritzsch_base(variant: NoritzschVariant) -> Result<PcPresentation> {
    abxyc(3, variant == NoritzschVariant::Literal)
}

/// The order-`p` automorphism of the extraspecial group on `x1..yn, c`:
/// `x2 -> x1 x2`, `x3 -> x2 x3`, `y1 -> y1 y2^-1 y3`, `y2 -> y2 y3^-1`, all
/// other generators fixed. Needs `n >= 3`.
pub fn huppert21_alpha(base: Arc<PcPresentation>) -> Result<GeneratorMap> {
    let n = (base.rank() - 1) / 2;
    if n < 3 {
        return Err(Error::InvalidParameter(format!("the map needs n >= 3, got {n}")));
    }
    let mut images: Vec<String> = base.names().to_vec();
    images[1] = "x1 x2".into();
    images[2] = "x2 x3".into();
    images[n] = "y1 y2^-1 y3".into();
    images[n + 1] = "y2 y3^-1".into();
    let texts: Vec<&str> = images.iter().map(String::as_str).collect();
    GeneratorMap::parse(base, &texts)
}

/// `a -> a`, `b -> b y^-1`, `x -> a x`, `y -> a^-1 x^-1 y`, `c -> c`.
pub fn huppert22_alpha(base: Arc<PcPresentation>) -> Result<GeneratorMap> {
    GeneratorMap::parse(base, &["a", "b y^-1", "a x", "a^-1 x^-1 y", "c"])
}

/// `a -> y`, `b -> x^2 b^2`, `x -> a b y`, `y -> a^2 y^2`, `c -> c`.
pub fn noritzsch_alpha(base: Arc<PcPresentation>) -> Result<GeneratorMap> {
    GeneratorMap::parse(base, &["y", "x^2 b^2", "a b y", "a^2 y^2", "c"])
}

/// `a -> a b^n1 x^n2 y^n3`, `b -> b`, `x -> x b^n4 x^n5 y^n6`,
/// `y -> y b^n7 x^n8 y^n9`, `c -> c`; used for both templated entries.
pub fn abxy_template(base: Arc<PcPresentation>) -> Result<MapTemplate> {
    let f: &[&str] = &["b", "x", "y"];
    MapTemplate::commutator_shape(base, &[("a", f), ("x", f), ("y", f)])
}

/// The distinguished map of an entry, or its parameterized family.
#[derive(Clone, Debug)]
pub enum EntryMap {
    Map(GeneratorMap),
    Template(MapTemplate),
}

/// The map attached to the entry `name`, on a base built for that entry.
pub fn entry_map(name: &str, base: Arc<PcPresentation>) -> Result<EntryMap> {
    match lookup(name)?.name {
        "huppert21" => huppert21_alpha(base).map(EntryMap::Map),
        "huppert22" => huppert22_alpha(base).map(EntryMap::Map),
        "noritzsch" => noritzsch_alpha(base).map(EntryMap::Map),
        _ => abxy_template(base).map(EntryMap::Template),
    }
}

/// Parameters of a catalog build.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuildRequest {
    pub name: String,
    pub prime: Option<u32>,
    pub n: Option<usize>,
    pub variant: Option<NoritzschVariant>,
    pub tuple: Option<Vec<u32>>,
}

impl BuildRequest {
    pub fn new(name: &str) -> Self {
        BuildRequest {
            name: name.to_string(),
            prime: None,
            n: None,
            variant: None,
            tuple: None,
        }
    }

    pub fn prime(mut self, p: u32) -> Self {
        self.prime = Some(p);
        self
    }

    pub fn n(mut self, n: usize) -> Self {
        self.n = Some(n);
        self
    }

    pub fn variant(mut self, v: NoritzschVariant) -> Self {
        self.variant = Some(v);
        self
    }

    pub fn tuple(mut self, t: Vec<u32>) -> Self {
        self.tuple = Some(t);
        self
    }
}

/// A resolved catalog construction.
#[derive(Clone, Debug)]
pub struct Built {
    pub entry: &'static CatalogEntry,
    pub prime: u32,
    pub n: Option<usize>,
    pub variant: Option<NoritzschVariant>,
    pub tuple: Option<Vec<u32>>,
    pub base: Arc<PcPresentation>,
    /// the distinguished map, or the template instance for `tuple`
    pub alpha: GeneratorMap,
    pub template: Option<MapTemplate>,
    /// order of the top cyclic group
    pub top_order: u64,
    pub expected: Expected,
}

pub fn build(req: &BuildRequest) -> Result<Built> {
    let entry = lookup(&req.name)?;
    let p = match (entry.fixed_prime, req.prime) {
        (Some(q), None) => q,
        (_, Some(p)) => p,
        (None, None) => 5,
    };
    if !entry.admits(p) {
        return Err(Error::InadmissiblePrime(p as u64, "prime not admissible for this entry"));
    }
    let pp = p as u64;
    let mut n_out = None;
    let mut variant_out = None;
    let mut tuple_out = None;
    let mut template = None;
    let mut top_order = pp;
    let mut ex = Expected::default();
    let (base, alpha) = match entry.name {
        "huppert21" => {
            let n = req.n.unwrap_or(3);
            if n < entry.min_n {
                return Err(Error::InvalidParameter(format!("huppert21 needs n >= 3, got {n}")));
            }
            n_out = Some(n);
            let base = Arc::new(build_extraspecial_exp_p(p, n)?);
            let e = 2 * n as u32 + 1;
            ex.base_order = stated(pp.pow(e));
            ex.base_exponent = stated(pp);
            ex.base_derived_orders = derived(vec![pp.pow(e), pp, 1]);
            ex.base_class = derived(2);
            ex.alpha_valid = stated(true);
            ex.alpha_order = stated(pp);
            ex.extension_order = derived(pp.pow(e + 1));
            ex.extension_dl = stated(3);
            // P' = <c, x1, x2, y2, y3>; P'' = <c>
            ex.extension_derived_orders = derived(vec![pp.pow(e + 1), pp.pow(5), pp, 1]);
            ex.extension_cd = stated(vec![1, pp, pp.pow(n as u32)]);
            ex.top_layer = stated((pp.pow(n as u32), pp * (pp - 1)));
            let alpha = huppert21_alpha(base.clone())?;
            (base, alpha)
        }
        "huppert22" => {
            let base = Arc::new(build_extraspecial_p5(p)?);
            ex.base_order = stated(pp.pow(5));
            ex.base_exponent = stated(pp);
            ex.base_derived_orders = derived(vec![pp.pow(5), pp, 1]);
            ex.base_class = derived(2);
            ex.alpha_valid = stated(true);
            ex.alpha_order = stated(pp);
            ex.extension_order = stated(pp.pow(6));
            ex.extension_dl = stated(3);
            ex.extension_cd = stated(vec![1, pp, pp * pp]);
            let alpha = huppert22_alpha(base.clone())?;
            (base, alpha)
        }
        "noritzsch" => {
            let v = req.variant.unwrap_or(NoritzschVariant::Exponent3);
            variant_out = Some(v);
            let base = Arc::new(build_noritzsch_base(v)?);
            top_order = 9;
            ex.base_order = stated(243);
            ex.base_derived_orders = derived(vec![243, 3, 1]);
            ex.base_class = derived(2);
            match v {
                NoritzschVariant::Exponent3 => {
                    ex.base_exponent = stated(3);
                    ex.alpha_valid = stated(true);
                    ex.alpha_order = stated(9);
                    ex.extension_order = stated(2187);
                    ex.extension_dl = stated(3);
                    ex.extension_cd = stated(vec![1, 3, 9]);
                    ex.top_layer = stated((9, 18));
                }
                NoritzschVariant::Literal => {
                    ex.base_exponent = derived(9);
                    // a of order 9 maps to y of order 3
                    ex.alpha_valid = derived(false);
                }
            }
            let alpha = noritzsch_alpha(base.clone())?;
            (base, alpha)
        }
        "ex51" | "ex52" => {
            let is51 = entry.name == "ex51";
            let base = Arc::new(if is51 {
                build_extraspecial_exp_p2(p)?
            } else {
                build_ex52_base(p)?
            });
            let t = abxy_template(base.clone())?;
            let default = if is51 { EX51_TUPLE } else { EX52_TUPLE };
            let tuple = req.tuple.clone().unwrap_or_else(|| default.to_vec());
            let alpha = t.instantiate(&tuple)?;
            tuple_out = Some(tuple);
            template = Some(t);
            ex.base_order = stated(pp.pow(5));
            if is51 {
                ex.base_exponent = stated(pp * pp);
                ex.base_derived_orders = derived(vec![pp.pow(5), pp, 1]);
                ex.base_class = derived(2);
            } else {
                ex.base_exponent = stated(pp);
                ex.base_derived_orders = derived(vec![pp.pow(5), pp * pp, 1]);
                ex.base_class = derived(3);
            }
            if req.tuple.as_deref().is_none_or(|t| t == default) {
                ex.alpha_valid = derived(true);
                ex.alpha_order = stated(pp);
                ex.extension_order = stated(pp.pow(6));
                ex.extension_dl = stated(3);
                ex.extension_lcs_orders =
                    stated(vec![pp.pow(6), pp.pow(4), pp.pow(3), pp * pp, pp, 1]);
                ex.extension_cd = stated(vec![1, pp, pp * pp]);
                if is51 {
                    ex.extension_derived_orders = stated(vec![pp.pow(6), pp.pow(4), pp, 1]);
                }
            }
            (base, alpha)
        }
        _ => unreachable!("entry table and builder disagree"),
    };
    Ok(Built {
        entry,
        prime: p,
        n: n_out,
        variant: variant_out,
        tuple: tuple_out,
        base,
        alpha,
        template,
        top_order,
        expected: ex,
    })
}

/// The catalog presentations checked for consistency at prime `p`.
pub fn presentations_at(p: u32) -> Result<BTreeMap<String, PcPresentation>> {
    let mut out = BTreeMap::new();
    if p == 3 {
        out.insert("noritzsch-exponent3".into(), build_noritzsch_base(NoritzschVariant::Exponent3)?);
        out.insert("noritzsch-literal".into(), build_noritzsch_base(NoritzschVariant::Literal)?);
        return Ok(out);
    }
    out.insert("huppert21".into(), build_extraspecial_exp_p(p, 3)?);
    out.insert("huppert22".into(), build_extraspecial_p5(p)?);
    out.insert("ex51".into(), build_extraspecial_exp_p2(p)?);
    out.insert("ex52".into(), build_ex52_base(p)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes_rejected() {
        assert!(matches!(build_extraspecial_p5(3), Err(Error::InadmissiblePrime(3, _))));
        assert!(build_extraspecial_exp_p2(2).is_err());
        assert!(build(&BuildRequest::new("huppert22").prime(3)).is_err());
        assert!(build(&BuildRequest::new("noritzsch").prime(5)).is_err());
        assert!(matches!(lookup("nope"), Err(Error::UnknownEntry(_))));
    }

    #[test]
    fn orders() {
        assert_eq!(build_extraspecial_exp_p(5, 3).unwrap().order(), 5u64.pow(7));
        assert_eq!(build_ex52_base(7).unwrap().order(), 16807);
        assert_eq!(build_noritzsch_base(NoritzschVariant::Literal).unwrap().order(), 243);
    }

    #[test]
    fn huppert21_images() {
        let base = Arc::new(build_extraspecial_exp_p(5, 4).unwrap());
        let a = huppert21_alpha(base.clone()).unwrap();
        let shown = a.to_string();
        assert!(shown.contains("x2 -> x1 x2"), "{shown}");
        assert!(shown.contains("y2 -> y2 y3^4"), "{shown}");
        assert!(shown.contains("x4 -> x4"), "{shown}");
        assert!(huppert21_alpha(Arc::new(build_extraspecial_exp_p(5, 2).unwrap())).is_err());
    }
}

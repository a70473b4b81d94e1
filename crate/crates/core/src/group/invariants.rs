use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{ClassData, ConcreteGroup};

/// Isomorphism invariants used to group duplicate extensions. Equal
/// fingerprints are necessary for isomorphism, not sufficient.
///
/// Fields are declared in key order; multisets are `[value, count]` pairs
/// sorted by value, so the JSON form is canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fingerprint {
    pub abelian_invariants: Vec<u64>,
    pub center_order: u64,
    pub class_sizes: Vec<(u64, u64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Vec<(u64, u64)>>,
    pub derived_orders: Vec<u64>,
    pub exponent: u64,
    pub lcs_orders: Vec<u64>,
    pub order: u64,
}

impl Fingerprint {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("fingerprint serializes")
    }
}

impl ConcreteGroup {
    /// `x -> x^p` for every element.
    pub fn power_map(&self) -> Vec<u32> {
        let p = self.prime() as i64;
        (0..self.order() as u32).map(|x| self.pow(x, p)).collect()
    }

    /// Orders of all elements.
    pub fn element_orders(&self) -> Vec<u64> {
        let pm = self.power_map();
        let p = self.prime() as u64;
        (0..self.order())
            .map(|x| {
                let mut y = x as u32;
                let mut o = 1u64;
                while y != 0 {
                    y = pm[y as usize];
                    o *= p;
                }
                o
            })
            .collect()
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> u64 {
        self.element_orders().into_iter().max().unwrap_or(1)
    }

    /// Invariant factors of `G/G'`, ascending.
    pub fn abelianization_type(&self) -> Vec<u64> {
        let d = self.derived_subgroup();
        let q = self.quotient(&d).expect("derived subgroup is normal");
        abelian_type(&q.group)
    }

    pub fn fingerprint(&self) -> Fingerprint {
        self.fingerprint_with(&self.conjugacy_classes(), None)
    }

    pub fn fingerprint_with(&self, classes: &ClassData, degrees: Option<&BTreeMap<u64, u64>>) -> Fingerprint {
        let mut sizes: BTreeMap<u64, u64> = BTreeMap::new();
        for c in &classes.classes {
            *sizes.entry(c.size() as u64).or_default() += 1;
        }
        Fingerprint {
            abelian_invariants: self.abelianization_type(),
            center_order: self.center().order() as u64,
            class_sizes: sizes.into_iter().collect(),
            degrees: degrees.map(|d| d.iter().map(|(&k, &v)| (k, v)).collect()),
            derived_orders: self.derived_series().iter().map(|s| s.order() as u64).collect(),
            exponent: self.exponent(),
            lcs_orders: self
                .lower_central_series()
                .iter()
                .map(|s| s.order() as u64)
                .collect(),
            order: self.order() as u64,
        }
    }
}

/// Invariant factors of an abelian p-group, from the sizes of its
/// `p^k`-torsion layers.
pub(crate) fn abelian_type(a: &ConcreteGroup) -> Vec<u64> {
    let p = a.prime() as u64;
    let orders = a.element_orders();
    let max = orders.iter().copied().max().unwrap_or(1);
    // log_p |{x : x^{p^k} = 1}|
    let mut layer = Vec::new();
    let mut pk = 1u64;
    loop {
        let count = orders.iter().filter(|&&o| o <= pk).count() as u64;
        layer.push(log_p(count, p));
        if pk >= max {
            break;
        }
        pk *= p;
    }
    let mut factors = Vec::new();
    for k in 1..layer.len() {
        // invariant factors of order >= p^k
        let at_least = layer[k] - layer[k - 1];
        let next = if k + 1 < layer.len() {
            layer[k + 1] - layer[k]
        } else {
            0
        };
        for _ in 0..(at_least - next) {
            factors.push(p.pow(k as u32));
        }
    }
    factors.sort_unstable();
    factors
}

pub(crate) fn log_p(mut n: u64, p: u64) -> u32 {
    let mut k = 0;
    while n > 1 {
        debug_assert_eq!(n % p, 0);
        n /= p;
        k += 1;
    }
    k
}

//! Irreducible character degrees of finite p-groups.
//!
//! Three independent strategies are provided. The counting strategies use
//! only `|G|`, the number of classes and the number of linear characters
//! (and, for [`degrees_layered`], the same data for a quotient). The
//! eigenvector strategy diagonalizes the class algebra over a prime field.

mod diophantine;
mod eigen;
mod field;
mod layered;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::group::{ClassData, ConcreteGroup};
use crate::{Error, Result};

pub use diophantine::degrees_diophantine;
pub use eigen::{degrees_eigenvector, EigenOptions, DEFAULT_EIGEN_BOUND};
pub use layered::{central_layer, degrees_layered};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Diophantine,
    Layered,
    Eigenvector,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Exact,
    Underdetermined,
    Inconclusive,
}

/// The data a strategy derived its answer from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Certificate {
    Diophantine {
        order: u64,
        linear_count: u64,
        class_count: u64,
        max_degree: u64,
        /// all nonnegative solutions found, at most [`MAX_LISTED_SOLUTIONS`]
        solutions: Vec<BTreeMap<u64, u64>>,
        solution_count: u64,
    },
    Layered {
        layer_order: u64,
        class_count: u64,
        quotient_class_count: u64,
        remaining_count: u64,
        remaining_square_sum: u64,
        remaining_degree: Option<u64>,
        quotient: Box<DegreeReport>,
    },
    Eigenvector {
        modulus: u64,
        exponent: u64,
        seed: u64,
        rounds: usize,
        split_linear: bool,
        class_count: u64,
        /// `chi(1)^2 mod l` for each character found by splitting
        square_residues: Vec<u64>,
    },
}

pub const MAX_LISTED_SOLUTIONS: usize = 16;

/// A multiset of degrees with the strategy and evidence behind it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub degrees: BTreeMap<u64, u64>,
    pub strategy: Strategy,
    pub status: Status,
    pub certificate: Certificate,
}

impl DegreeReport {
    pub fn is_exact(&self) -> bool {
        self.status == Status::Exact
    }

    /// Distinct degrees, ascending.
    pub fn degree_set(&self) -> Vec<u64> {
        self.degrees.keys().copied().collect()
    }

    pub fn multiplicity(&self, d: u64) -> u64 {
        self.degrees.get(&d).copied().unwrap_or(0)
    }

    pub fn character_count(&self) -> u64 {
        self.degrees.values().sum()
    }

    /// `sum mult(d) d^2`.
    pub fn square_sum(&self) -> u64 {
        self.degrees.iter().map(|(&d, &m)| d * d * m).sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

/// Counting inputs shared by the strategies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GroupCounts {
    pub order: u64,
    pub linear_count: u64,
    pub class_count: u64,
    pub center_order: u64,
}

impl GroupCounts {
    pub fn of(g: &ConcreteGroup, classes: &ClassData) -> Self {
        GroupCounts {
            order: g.order() as u64,
            linear_count: (g.order() / g.derived_subgroup().order()) as u64,
            class_count: classes.len() as u64,
            center_order: classes.classes.iter().filter(|c| c.size() == 1).count() as u64,
        }
    }

    /// Largest `p^e` with `p^{2e} <= |G : Z(G)|`.
    pub fn max_degree(&self, p: u64) -> u64 {
        let index = self.order / self.center_order;
        let mut d = 1u64;
        while d * d * p * p <= index {
            d *= p;
        }
        d
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StrategyChoice {
    /// every applicable strategy, cross-checked
    Auto,
    /// diophantine, then layered; never the eigenvector method
    Counting,
    Diophantine,
    Layered,
    Eigenvector,
}

impl std::str::FromStr for StrategyChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "auto" => StrategyChoice::Auto,
            "counting" => StrategyChoice::Counting,
            "dio" | "diophantine" => StrategyChoice::Diophantine,
            "layered" => StrategyChoice::Layered,
            "eigen" | "eigenvector" => StrategyChoice::Eigenvector,
            other => return Err(Error::InvalidParameter(format!("unknown degree strategy {other:?}"))),
        })
    }
}

#[derive(Clone, Debug)]
pub struct DegreeOptions {
    pub strategy: StrategyChoice,
    pub eigen: EigenOptions,
}

impl Default for DegreeOptions {
    fn default() -> Self {
        DegreeOptions {
            strategy: StrategyChoice::Auto,
            eigen: EigenOptions::default(),
        }
    }
}

impl DegreeOptions {
    pub fn with_strategy(strategy: StrategyChoice) -> Self {
        DegreeOptions {
            strategy,
            ..Default::default()
        }
    }
}

pub fn character_degrees(g: &ConcreteGroup, opts: &DegreeOptions) -> Result<DegreeReport> {
    character_degrees_with(g, &g.conjugacy_classes(), opts)
}

/// Strategy dispatcher. Under `Auto` every applicable strategy runs, exact
/// answers must agree, and the first exact one (in the order diophantine,
/// layered, eigenvector) is returned.
pub fn character_degrees_with(g: &ConcreteGroup, classes: &ClassData, opts: &DegreeOptions) -> Result<DegreeReport> {
    let counts = GroupCounts::of(g, classes);
    let dio = || {
        degrees_diophantine(
            counts.order,
            counts.linear_count,
            counts.class_count,
            counts.max_degree(g.prime() as u64),
        )
    };
    let layered = || -> Result<DegreeReport> {
        match central_layer(g) {
            Some(n) => degrees_layered(g, &n),
            None => Err(Error::InvalidLayer("no central subgroup of order p inside G'".into())),
        }
    };
    match opts.strategy {
        StrategyChoice::Diophantine => dio(),
        StrategyChoice::Layered => layered(),
        StrategyChoice::Eigenvector => degrees_eigenvector(g, classes, &opts.eigen),
        StrategyChoice::Counting => {
            let d = dio()?;
            if d.is_exact() {
                return Ok(d);
            }
            match layered() {
                Ok(l) if l.is_exact() => Ok(l),
                _ => Ok(d),
            }
        }
        StrategyChoice::Auto => {
            let mut reports = Vec::new();
            let mut errors = Vec::new();
            match dio() {
                Ok(r) => reports.push(r),
                Err(e) => errors.push(e),
            }
            if !reports.iter().any(|r| r.is_exact()) {
                match layered() {
                    Ok(r) => reports.push(r),
                    Err(e) => errors.push(e),
                }
            }
            if g.order() as u64 <= opts.eigen.bound {
                match degrees_eigenvector(g, classes, &opts.eigen) {
                    Ok(r) => reports.push(r),
                    Err(e) => errors.push(e),
                }
            }
            let exact: Vec<&DegreeReport> = reports.iter().filter(|r| r.is_exact()).collect();
            if let Some(first) = exact.first() {
                for other in &exact[1..] {
                    if other.degrees != first.degrees {
                        return Err(Error::StrategyDisagreement(format!(
                            "{:?} gives {:?} but {:?} gives {:?}",
                            first.strategy, first.degrees, other.strategy, other.degrees
                        )));
                    }
                }
                return Ok((*first).clone());
            }
            if let Some(best) = reports.into_iter().min_by_key(|r| r.status) {
                return Ok(best);
            }
            Err(errors.into_iter().next().unwrap_or(Error::Infeasible))
        }
    }
}

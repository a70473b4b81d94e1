use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{Element, PcPresentation};
use crate::Result;

#[derive(Clone, Debug)]
pub struct ConsistencyOptions {
    /// Random associativity triples to test.
    pub random_triples: usize,
    pub seed: u64,
    /// Normal forms are all re-collected when the group is at most this large;
    /// otherwise a random sample of the same size is used.
    pub enumeration_limit: u64,
}

impl Default for ConsistencyOptions {
    fn default() -> Self {
        ConsistencyOptions {
            random_triples: 1000,
            seed: 0x5eed,
            enumeration_limit: 1 << 20,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureKind {
    NormalForm,
    GeneratorAssociativity,
    RandomAssociativity,
    PowerRelation,
    CommutatorRelation,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConsistencyFailure {
    pub kind: FailureKind,
    pub description: String,
    /// The offending triple for associativity failures.
    pub triple: Option<[Element; 3]>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConsistencyReport {
    pub passed: bool,
    pub order: u64,
    pub normal_forms_checked: u64,
    pub generator_triples_checked: u64,
    pub random_triples_checked: u64,
    pub relations_checked: u64,
    pub failure: Option<ConsistencyFailure>,
}

impl PcPresentation {
    /// Checks that the presentation defines a group of order `p^rank`.
    pub fn consistency_check(&self) -> Result<ConsistencyReport> {
        self.consistency_check_with(&ConsistencyOptions::default())
    }

    pub fn consistency_check_with(&self, opts: &ConsistencyOptions) -> Result<ConsistencyReport> {
        let mut report = ConsistencyReport {
            passed: false,
            order: self.order(),
            normal_forms_checked: 0,
            generator_triples_checked: 0,
            random_triples_checked: 0,
            relations_checked: 0,
            failure: None,
        };
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let p = self.prime();
        let m = self.rank();

        // (i) every exponent vector is a fixed point of collection
        let fixed_point = |e: &Element| -> Result<bool> { Ok(self.collect(&e.to_word())? == *e) };
        if self.order() <= opts.enumeration_limit {
            let mut exps = vec![0u32; m];
            loop {
                let e = Element::from_raw(exps.clone());
                if !fixed_point(&e)? {
                    report.failure = Some(ConsistencyFailure {
                        kind: FailureKind::NormalForm,
                        description: format!("{} does not collect to itself", self.display(&e)),
                        triple: None,
                    });
                    return Ok(report);
                }
                report.normal_forms_checked += 1;
                if !odometer(&mut exps, p) {
                    break;
                }
            }
        } else {
            for _ in 0..opts.enumeration_limit.min(100_000) {
                let e = self.random_element(&mut rng);
                if !fixed_point(&e)? {
                    report.failure = Some(ConsistencyFailure {
                        kind: FailureKind::NormalForm,
                        description: format!("{} does not collect to itself", self.display(&e)),
                        triple: None,
                    });
                    return Ok(report);
                }
                report.normal_forms_checked += 1;
            }
        }

        // (ii) associativity on generator triples, including the overlaps that
        // involve power relations
        let gens = self.generators();
        let powm1: Vec<Element> = gens.iter().map(|g| self.pow(g, p as i64 - 1)).collect();
        let mut triples: Vec<[Element; 3]> = Vec::new();
        for k in 0..m {
            for j in 0..k {
                for i in 0..j {
                    triples.push([gens[k].clone(), gens[j].clone(), gens[i].clone()]);
                }
            }
        }
        for j in 0..m {
            for i in 0..j {
                triples.push([powm1[j].clone(), gens[j].clone(), gens[i].clone()]);
                triples.push([gens[j].clone(), powm1[i].clone(), gens[i].clone()]);
            }
            triples.push([powm1[j].clone(), gens[j].clone(), gens[j].clone()]);
        }
        for t in triples {
            report.generator_triples_checked += 1;
            if let Some(f) = self.associativity_failure(&t, FailureKind::GeneratorAssociativity)? {
                report.failure = Some(f);
                return Ok(report);
            }
        }
        for _ in 0..opts.random_triples {
            let t = [
                self.random_element(&mut rng),
                self.random_element(&mut rng),
                self.random_element(&mut rng),
            ];
            report.random_triples_checked += 1;
            if let Some(f) = self.associativity_failure(&t, FailureKind::RandomAssociativity)? {
                report.failure = Some(f);
                return Ok(report);
            }
        }

        // (iii) defining relations evaluate correctly
        for i in 0..m {
            report.relations_checked += 1;
            let lhs = self.pow(&gens[i], p as i64);
            let rhs = self.collect(self.power_word(i))?;
            if lhs != rhs {
                report.failure = Some(ConsistencyFailure {
                    kind: FailureKind::PowerRelation,
                    description: format!(
                        "{}^{} = {} but relation says {}",
                        self.names()[i],
                        p,
                        self.display(&lhs),
                        self.display(&rhs)
                    ),
                    triple: None,
                });
                return Ok(report);
            }
        }
        for j in 0..m {
            for i in 0..j {
                report.relations_checked += 1;
                let lhs = self.comm(&gens[j], &gens[i]);
                let rhs = self.collect(self.commutator_word(j, i))?;
                if lhs != rhs {
                    report.failure = Some(ConsistencyFailure {
                        kind: FailureKind::CommutatorRelation,
                        description: format!(
                            "[{}, {}] = {} but relation says {}",
                            self.names()[j],
                            self.names()[i],
                            self.display(&lhs),
                            self.display(&rhs)
                        ),
                        triple: None,
                    });
                    return Ok(report);
                }
            }
        }
        report.passed = true;
        Ok(report)
    }

    fn associativity_failure(
        &self,
        t: &[Element; 3],
        kind: FailureKind,
    ) -> Result<Option<ConsistencyFailure>> {
        let left = self.try_mul(&self.try_mul(&t[0], &t[1])?, &t[2])?;
        let right = self.try_mul(&t[0], &self.try_mul(&t[1], &t[2])?)?;
        if left == right {
            return Ok(None);
        }
        Ok(Some(ConsistencyFailure {
            kind,
            description: format!(
                "({} * {}) * {} = {} but {} * ({} * {}) = {}",
                self.display(&t[0]),
                self.display(&t[1]),
                self.display(&t[2]),
                self.display(&left),
                self.display(&t[0]),
                self.display(&t[1]),
                self.display(&t[2]),
                self.display(&right)
            ),
            triple: Some(t.clone()),
        }))
    }

    /// A uniformly random normal form.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Element {
        let p = self.prime();
        Element::from_raw((0..self.rank()).map(|_| rng.random_range(0..p)).collect())
    }
}

/// Advances a mixed-radix counter (last digit fastest); false on wrap-around.
pub(crate) fn odometer(exps: &mut [u32], p: u32) -> bool {
    for d in exps.iter_mut().rev() {
        *d += 1;
        if *d < p {
            return true;
        }
        *d = 0;
    }
    false
}

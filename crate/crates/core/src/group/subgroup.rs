use serde::Serialize;

use super::ConcreteGroup;

/// A subgroup stored as its sorted member indices plus the generating set
/// it was built from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Subgroup {
    members: Vec<u32>,
    gens: Vec<u32>,
}

impl Subgroup {
    pub fn trivial() -> Self {
        Subgroup {
            members: vec![0],
            gens: Vec::new(),
        }
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn generators(&self) -> &[u32] {
        &self.gens
    }

    pub fn contains(&self, x: u32) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    /// `self <= other` as sets.
    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn bitmap(&self, group_order: usize) -> Vec<bool> {
        let mut b = vec![false; group_order];
        for &x in &self.members {
            b[x as usize] = true;
        }
        b
    }
}

/// Incremental orbit closure. Generators are only kept when they enlarge
/// the subgroup, so the generating set stays irredundant.
struct Closure<'g> {
    g: &'g ConcreteGroup,
    member: Vec<bool>,
    members: Vec<u32>,
    gens: Vec<u32>,
}

impl<'g> Closure<'g> {
    fn new(g: &'g ConcreteGroup) -> Self {
        let mut member = vec![false; g.order()];
        member[0] = true;
        Closure {
            g,
            member,
            members: vec![0],
            gens: Vec::new(),
        }
    }

    fn add(&mut self, s: u32) -> bool {
        if self.member[s as usize] {
            return false;
        }
        self.gens.push(s);
        // <H, s>: right-multiply everything by all generators until closed
        let mut i = 0;
        while i < self.members.len() {
            let x = self.members[i];
            for &t in &self.gens {
                let y = self.g.mul(x, t);
                if !self.member[y as usize] {
                    self.member[y as usize] = true;
                    self.members.push(y);
                }
            }
            i += 1;
        }
        true
    }

    fn finish(mut self) -> Subgroup {
        self.members.sort_unstable();
        Subgroup {
            members: self.members,
            gens: self.gens,
        }
    }
}

impl ConcreteGroup {
    /// The whole group, generated by its generator list.
    pub fn whole(&self) -> Subgroup {
        Subgroup {
            members: (0..self.order() as u32).collect(),
            gens: self.generators().iter().copied().filter(|&g| g != 0).collect(),
        }
    }

    /// Smallest subgroup containing `gens`.
    pub fn subgroup_closure(&self, gens: &[u32]) -> Subgroup {
        let mut c = Closure::new(self);
        for &s in gens {
            c.add(s);
        }
        c.finish()
    }

    /// Normal closure of `seeds` under conjugation by `conjugators`.
    pub fn normal_closure(&self, seeds: &[u32], conjugators: &[u32]) -> Subgroup {
        let mut c = Closure::new(self);
        for &s in seeds {
            c.add(s);
        }
        let mut k = 0;
        while k < c.gens.len() {
            let h = c.gens[k];
            for &t in conjugators {
                let y = self.conj(h, t);
                c.add(y);
            }
            k += 1;
        }
        c.finish()
    }

    /// `[A, B]`: the normal closure in `<A, B>` of the commutators of the
    /// generators of `A` and `B`.
    pub fn commutator_subgroup(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut seeds = Vec::new();
        for &x in a.generators() {
            for &y in b.generators() {
                seeds.push(self.comm(x, y));
            }
        }
        let mut conjugators: Vec<u32> = a.generators().to_vec();
        conjugators.extend_from_slice(b.generators());
        conjugators.sort_unstable();
        conjugators.dedup();
        self.normal_closure(&seeds, &conjugators)
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        let w = self.whole();
        self.commutator_subgroup(&w, &w)
    }

    /// `G, G', G'', ...` down to the trivial group.
    pub fn derived_series(&self) -> Vec<Subgroup> {
        let mut series = vec![self.whole()];
        while !series.last().unwrap().is_trivial() {
            let h = series.last().unwrap();
            let next = self.commutator_subgroup(h, h);
            if next.order() == h.order() {
                // not solvable; cannot happen for p-groups
                break;
            }
            series.push(next);
        }
        series
    }

    pub fn derived_length(&self) -> usize {
        self.derived_series().len() - 1
    }

    /// `G = P_1, P_2 = [G, G], P_{i+1} = [P_i, G]`, ending with the trivial group.
    pub fn lower_central_series(&self) -> Vec<Subgroup> {
        let w = self.whole();
        let mut series = vec![w.clone()];
        while !series.last().unwrap().is_trivial() {
            let next = self.commutator_subgroup(series.last().unwrap(), &w);
            if next.order() == series.last().unwrap().order() {
                break;
            }
            series.push(next);
        }
        series
    }

    /// Index of the last nontrivial lower central term.
    pub fn nilpotence_class(&self) -> usize {
        self.lower_central_series().len() - 1
    }

    pub fn is_central(&self, x: u32) -> bool {
        self.generators()
            .iter()
            .all(|&g| self.mul(x, g) == self.mul(g, x))
    }

    pub fn center(&self) -> Subgroup {
        let members: Vec<u32> = (0..self.order() as u32).filter(|&x| self.is_central(x)).collect();
        let gens = self.subgroup_closure(&members).gens;
        Subgroup { members, gens }
    }

    /// Elements commuting with `x`, found by a full scan.
    pub fn centralizer(&self, x: u32) -> Subgroup {
        let members: Vec<u32> = (0..self.order() as u32)
            .filter(|&y| self.mul(x, y) == self.mul(y, x))
            .collect();
        let gens = self.subgroup_closure(&members).gens;
        Subgroup { members, gens }
    }

    /// Whether `h` is normalized by every generator of the group.
    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.non_normal_witness(h).is_none()
    }

    pub(crate) fn non_normal_witness(&self, h: &Subgroup) -> Option<(u32, usize)> {
        for &x in h.generators() {
            for (i, &g) in self.generators().iter().enumerate() {
                if !h.contains(self.conj(x, g)) {
                    return Some((x, i));
                }
            }
        }
        None
    }

    /// Maximum element order over the members of `h`.
    pub fn subgroup_exponent(&self, h: &Subgroup) -> u64 {
        h.members()
            .iter()
            .map(|&x| self.element_order(x))
            .max()
            .unwrap_or(1)
    }
}

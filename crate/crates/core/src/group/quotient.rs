use super::{ConcreteGroup, Subgroup};
use crate::{Error, Result};

/// `G/N` with the natural projection.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: ConcreteGroup,
    /// element of G -> coset index
    pub projection: Vec<u32>,
    /// coset index -> minimal member in G
    pub representatives: Vec<u32>,
}

impl Quotient {
    pub fn project(&self, x: u32) -> u32 {
        self.projection[x as usize]
    }

    /// Full preimage of a subgroup of the quotient.
    pub fn preimage(&self, parent: &ConcreteGroup, h: &Subgroup) -> Subgroup {
        let members: Vec<u32> = (0..parent.order() as u32)
            .filter(|&x| h.contains(self.projection[x as usize]))
            .collect();
        parent.subgroup_closure(&members)
    }
}

impl ConcreteGroup {
    /// Quotient by a normal subgroup. Cosets are numbered in order of their
    /// minimal members, which serve as representatives.
    pub fn quotient(&self, n: &Subgroup) -> Result<Quotient> {
        if let Some((element, generator)) = self.non_normal_witness(n) {
            return Err(Error::NonNormalSubgroup { element, generator });
        }
        const UNSEEN: u32 = u32::MAX;
        let mut projection = vec![UNSEEN; self.order()];
        let mut reps = Vec::with_capacity(self.order() / n.order());
        for x in 0..self.order() as u32 {
            if projection[x as usize] != UNSEEN {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(x);
            for &y in n.members() {
                projection[self.mul(x, y) as usize] = id;
            }
        }
        let r = self.rank();
        let q = reps.len();
        let mut rmul = vec![0u32; q * r];
        let mut inv = vec![0u32; q];
        let mut digits = vec![0u8; q * r];
        for (c, &x) in reps.iter().enumerate() {
            for i in 0..r {
                rmul[c * r + i] = projection[self.rmul_gen(x, i) as usize];
            }
            inv[c] = projection[self.inv(x) as usize];
            digits[c * r..(c + 1) * r].copy_from_slice(self.letters(x));
        }
        let gens = self
            .generators()
            .iter()
            .map(|&g| projection[g as usize])
            .collect();
        let group = ConcreteGroup::from_parts(self.prime(), r, rmul, inv, digits, gens);
        Ok(Quotient {
            group,
            projection,
            representatives: reps,
        })
    }
}

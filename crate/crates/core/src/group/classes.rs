use serde::Serialize;

use super::ConcreteGroup;

/// One conjugacy class; `members` is sorted and `representative` is its
/// minimal member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjugacyClass {
    pub representative: u32,
    pub members: Vec<u32>,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Conjugacy classes sorted by minimal member, plus the element -> class map.
#[derive(Clone, Debug)]
pub struct ClassData {
    pub classes: Vec<ConjugacyClass>,
    pub class_of: Vec<u32>,
}

impl ClassData {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.size()).collect()
    }
}

impl ConcreteGroup {
    /// Orbits under conjugation by the generators.
    pub fn conjugacy_classes(&self) -> ClassData {
        const UNSEEN: u32 = u32::MAX;
        let n = self.order();
        let mut class_of = vec![UNSEEN; n];
        let conjugators: Vec<(u32, u32)> = self
            .generators()
            .iter()
            .filter(|&&g| g != 0)
            .map(|&g| (self.inv(g), g))
            .collect();
        let mut classes = Vec::new();
        let mut stack = Vec::new();
        for x in 0..n as u32 {
            if class_of[x as usize] != UNSEEN {
                continue;
            }
            let id = classes.len() as u32;
            class_of[x as usize] = id;
            let mut members = vec![x];
            stack.push(x);
            while let Some(y) = stack.pop() {
                for &(gi, g) in &conjugators {
                    let z = self.mul(self.mul(gi, y), g);
                    if class_of[z as usize] == UNSEEN {
                        class_of[z as usize] = id;
                        members.push(z);
                        stack.push(z);
                    }
                }
            }
            members.sort_unstable();
            classes.push(ConjugacyClass {
                representative: x,
                members,
            });
        }
        ClassData { classes, class_of }
    }

    /// Number of conjugacy classes.
    pub fn class_count(&self) -> usize {
        self.conjugacy_classes().len()
    }
}

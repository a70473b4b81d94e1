use super::{GeneratorMap, MapState};
use crate::pc::{PcPresentation, PresentationBuilder, Word};
use crate::{Error, Result};

/// `G ⋊ <t>` where `t` acts by `alpha` and has order `top_order` (`p` or
/// `p^2`); `alpha_order` is the order of `alpha`.
///
/// The new generators come first, so `[g, t] = g^-1 alpha(g)` only involves
/// later generators. For `top_order = p^2` the top is `t1, t2` with
/// `t1^p = t2` and `t2` acting by `alpha^p`.
pub fn semidirect_cyclic(map: &GeneratorMap, top_order: u64, alpha_order: u64) -> Result<PcPresentation> {
    let g = map.base();
    let p = g.prime() as u64;
    if top_order != p && top_order != p * p {
        return Err(Error::InvalidTopOrder {
            top: top_order,
            order: alpha_order,
        });
    }
    if !top_order.is_multiple_of(alpha_order) {
        return Err(Error::InvalidTopOrder {
            top: top_order,
            order: alpha_order,
        });
    }
    if map.state() != MapState::Automorphism {
        return Err(Error::NotAutomorphism("semidirect product needs a validated automorphism".into()));
    }
    let m = g.rank();
    let tops: Vec<String> = if top_order == p {
        vec![fresh_name(g.names(), "t")]
    } else {
        vec![fresh_name(g.names(), "t1"), fresh_name(g.names(), "t2")]
    };
    let s = tops.len();
    let shift = |w: &Word| -> Word { w.iter().map(|&(i, e)| (i + s, e)).collect() };

    let mut names = tops.clone();
    names.extend(g.names().iter().cloned());
    let mut b = PresentationBuilder::new(g.prime(), names);
    for i in 0..m {
        b = b.power(i + s, shift(g.power_word(i)));
        for j in i + 1..m {
            b = b.commutator(j + s, i + s, shift(g.commutator_word(j, i)));
        }
    }
    let actions: Vec<GeneratorMap> = if s == 1 {
        vec![map.clone()]
    } else {
        b = b.power(0, vec![(1, 1)]);
        vec![map.clone(), map.power(p)]
    };
    for (k, act) in actions.iter().enumerate() {
        for i in 0..m {
            // [g_i, t] = g_i^-1 g_i^alpha
            let gi = g.generator(i);
            let c = g.mul(&g.inv(&gi), &act.images()[i]);
            b = b.commutator(i + s, k, shift(&c.to_word()));
        }
    }
    b.build()
}

fn fresh_name(taken: &[String], want: &str) -> String {
    let mut name = want.to_string();
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}

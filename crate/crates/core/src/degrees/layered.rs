use super::{character_degrees_with, Certificate, DegreeOptions, DegreeReport, GroupCounts, Status, Strategy, StrategyChoice};
use crate::group::{ConcreteGroup, Subgroup};
use crate::{Error, Result};

/// A central subgroup of order `p` inside `G'`: generated by a power of the
/// least nonidentity element of `Z(G) ∩ G'`. `None` for abelian groups.
pub fn central_layer(g: &ConcreteGroup) -> Option<Subgroup> {
    let d = g.derived_subgroup();
    let x = d.members().iter().copied().find(|&x| x != 0 && g.is_central(x))?;
    let o = g.element_order(x);
    let y = g.pow(x, (o / g.prime() as u64) as i64);
    Some(g.subgroup_closure(&[y]))
}

/// Degrees of `G` from those of `G/N` for a central `N` of order `p` in `G'`.
///
/// Characters with `N` outside the kernel number `k(G) - k(G/N)` and their
/// squared degrees sum to `|G| - |G/N|`. When the average is an even power
/// of `p` within the degree bound they are all taken to have that degree;
/// any other average leaves the split undetermined.
pub fn degrees_layered(g: &ConcreteGroup, n: &Subgroup) -> Result<DegreeReport> {
    let p = g.prime() as u64;
    if n.order() as u64 != p {
        return Err(Error::InvalidLayer(format!("layer has order {}, not p", n.order())));
    }
    if let Some(&x) = n.members().iter().find(|&&x| !g.is_central(x)) {
        return Err(Error::InvalidLayer(format!("element {x} of the layer is not central")));
    }
    let derived = g.derived_subgroup();
    if !n.is_subset(&derived) {
        return Err(Error::InvalidLayer("layer is not contained in G'".into()));
    }
    let classes = g.conjugacy_classes();
    let counts = GroupCounts::of(g, &classes);
    let q = g.quotient(n)?;
    let qclasses = q.group.conjugacy_classes();
    let quotient = character_degrees_with(&q.group, &qclasses, &DegreeOptions::with_strategy(StrategyChoice::Counting))?;

    let remaining_count = counts.class_count - qclasses.len() as u64;
    let remaining_square_sum = counts.order - q.group.order() as u64;
    let bound = counts.max_degree(p);
    let mut remaining_degree = None;
    if remaining_count > 0 && remaining_square_sum.is_multiple_of(remaining_count) {
        let avg = remaining_square_sum / remaining_count;
        let mut d = 1u64;
        while d * d < avg {
            d *= p;
        }
        if d * d == avg && d > 1 && d <= bound {
            remaining_degree = Some(d);
        }
    }
    let mut degrees = quotient.degrees.clone();
    let status = match remaining_degree {
        Some(d) if quotient.is_exact() => {
            *degrees.entry(d).or_default() += remaining_count;
            Status::Exact
        }
        Some(d) => {
            *degrees.entry(d).or_default() += remaining_count;
            Status::Inconclusive
        }
        None => Status::Inconclusive,
    };
    Ok(DegreeReport {
        degrees,
        strategy: Strategy::Layered,
        status,
        certificate: Certificate::Layered {
            layer_order: p,
            class_count: counts.class_count,
            quotient_class_count: qclasses.len() as u64,
            remaining_count,
            remaining_square_sum,
            remaining_degree,
            quotient: Box::new(quotient),
        },
    })
}

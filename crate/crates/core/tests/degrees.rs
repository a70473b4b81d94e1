//! Character degrees against closed forms and across strategies.

use std::collections::BTreeMap;

use pgroup_core::catalog::*;
use pgroup_core::degrees::*;
use pgroup_core::{ConcreteGroup, Error};

/// Extraspecial `p^(2n+1)`: `p^(2n)` linear characters and `p - 1` of
/// degree `p^n`.
fn extraspecial_degrees(p: u64, n: u32) -> BTreeMap<u64, u64> {
    BTreeMap::from([(1, p.pow(2 * n)), (p.pow(n), p - 1)])
}

fn extraspecials() -> Vec<(String, ConcreteGroup, u64, u32)> {
    let mut out = Vec::new();
    for v in [NoritzschVariant::Exponent3, NoritzschVariant::Literal] {
        let g = ConcreteGroup::from_presentation(&build_noritzsch_base(v).unwrap()).unwrap();
        out.push((format!("3^5 {v:?}"), g, 3, 2));
    }
    for (name, pres) in [
        ("5^5 exp 5", build_extraspecial_exp_p(5, 2).unwrap()),
        ("5^5 exp 25", build_extraspecial_exp_p2(5).unwrap()),
        ("7^3", build_extraspecial_exp_p(7, 1).unwrap()),
    ] {
        let p = pres.prime() as u64;
        let n = (pres.rank() as u32 - 1) / 2;
        out.push((name.into(), ConcreteGroup::from_presentation(&pres).unwrap(), p, n));
    }
    out
}

#[test]
fn every_strategy_matches_closed_form_on_extraspecials() {
    for (name, g, p, n) in extraspecials() {
        let want = extraspecial_degrees(p, n);
        let classes = g.conjugacy_classes();
        for s in [
            StrategyChoice::Diophantine,
            StrategyChoice::Layered,
            StrategyChoice::Eigenvector,
            StrategyChoice::Counting,
            StrategyChoice::Auto,
        ] {
            let r = character_degrees_with(&g, &classes, &DegreeOptions::with_strategy(s)).unwrap();
            assert!(r.is_exact(), "{name} {s:?}: {:?}", r.status);
            assert_eq!(r.degrees, want, "{name} {s:?}");
            assert_eq!(r.square_sum(), g.order() as u64);
        }
    }
}

#[test]
fn eigen_modes_agree_on_nonextraspecial_group() {
    let g = ConcreteGroup::from_presentation(&build_ex52_base(5).unwrap()).unwrap();
    let classes = g.conjugacy_classes();
    let full = degrees_eigenvector(
        &g,
        &classes,
        &EigenOptions {
            split_linear: false,
            ..Default::default()
        },
    )
    .unwrap();
    let split = degrees_eigenvector(&g, &classes, &EigenOptions::default()).unwrap();
    let reseeded = degrees_eigenvector(
        &g,
        &classes,
        &EigenOptions {
            seed: 99,
            ..Default::default()
        },
    )
    .unwrap();
    assert_eq!(full.degrees, split.degrees);
    assert_eq!(split.degrees, reseeded.degrees);
    assert_eq!(split.character_count(), classes.len() as u64);
    assert_eq!(split.square_sum(), 3125);
    let derived = g.derived_subgroup();
    assert_eq!(split.multiplicity(1), 3125 / derived.order() as u64);
    let counting = character_degrees_with(&g, &classes, &DegreeOptions::with_strategy(StrategyChoice::Counting)).unwrap();
    if counting.is_exact() {
        assert_eq!(counting.degrees, split.degrees);
    }
}

#[test]
fn report_accessors_and_json() {
    let r = degrees_diophantine(15625, 25, 145, 25).unwrap();
    assert!(r.is_exact());
    assert_eq!(r.degree_set(), vec![1, 5, 25]);
    assert_eq!(r.multiplicity(25), 21);
    assert_eq!(r.multiplicity(125), 0);
    let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(json["degrees"]["5"], 99);
    assert_eq!(json["certificate"]["kind"], "diophantine");
}

#[test]
fn strategy_errors() {
    assert!(matches!(degrees_diophantine(3125, 25, 30, 25), Err(Error::Infeasible)));
    assert!(matches!(degrees_diophantine(3125, 625, 7, 25), Err(Error::InvalidParameter(_))));
    let g = ConcreteGroup::from_presentation(&build_extraspecial_exp_p(5, 2).unwrap()).unwrap();
    let classes = g.conjugacy_classes();
    let small = EigenOptions {
        bound: 100,
        ..Default::default()
    };
    assert!(matches!(degrees_eigenvector(&g, &classes, &small), Err(Error::TooLarge { order: 3125, bound: 100 })));
    // a noncentral subgroup is not a valid layer
    let x1 = g.subgroup_closure(&[g.generators()[0]]);
    assert!(matches!(degrees_layered(&g, &x1), Err(Error::InvalidLayer(_))));
    assert!("nope".parse::<StrategyChoice>().is_err());
    assert_eq!("eigen".parse::<StrategyChoice>().unwrap(), StrategyChoice::Eigenvector);
}

#[test]
fn abelian_groups_are_all_linear() {
    let pres = pgroup_core::PresentationBuilder::new(5, ["a", "b", "c"]).build().unwrap();
    let g = ConcreteGroup::from_presentation(&pres).unwrap();
    let r = character_degrees(&g, &DegreeOptions::default()).unwrap();
    assert_eq!(r.degrees, BTreeMap::from([(1, 125)]));
}

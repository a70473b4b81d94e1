//! Power identities and automorphism-order checks.

use std::sync::{Arc, OnceLock};

use pgroup_core::catalog::*;
use pgroup_core::extension::*;
use pgroup_core::theorems::*;
use pgroup_core::{ConcreteGroup, Error, PresentationBuilder};
use proptest::prelude::*;

fn extension_of(name: &str) -> (Built, Extension) {
    let b = build(&BuildRequest::new(name)).unwrap();
    let g = ConcreteGroup::from_arc(b.base.clone()).unwrap();
    let opts = PipelineOptions {
        top_order: Some(b.top_order),
        degrees: DegreeMode::Skip,
        fingerprint: false,
        ..Default::default()
    };
    let ext = run_pipeline(&g, &b.alpha, &opts).unwrap().extension.unwrap();
    (b, ext)
}

#[test]
fn binomials() {
    assert_eq!(binomial(5, 2), 10);
    assert_eq!(binomial(10, 4), 210);
    assert_eq!(binomial(3, 5), 0);
    assert_eq!(binomial(14, 7), 3432);
}

#[test]
fn power_identity_small_cases() {
    let g = ConcreteGroup::from_presentation(&build_extraspecial_p5(5).unwrap()).unwrap();
    let [a, b] = [g.generators()[0], g.generators()[1]];
    let id = PowerIdentity::new(&g).unwrap();
    assert!(lemma32_check(&g, a, b, 1).unwrap());
    // in class 2, (ab)^2 = a^2 b^2 [b, a], not a^2 b^2 [a, b]
    let ab2 = g.pow(g.mul(a, b), 2);
    let a2b2 = g.mul(g.pow(a, 2), g.pow(b, 2));
    assert_eq!(ab2, g.mul(a2b2, g.comm(b, a)));
    assert_ne!(ab2, g.mul(a2b2, g.comm(a, b)));
    assert!(!lemma32_check(&g, a, b, 2).unwrap());
    assert!(id.corrected(a, b, 2));
    assert!(matches!(lemma32_check(&g, a, b, 0), Err(Error::InvalidParameter(_))));
    assert!(matches!(lemma32_check(&g, a, b, 11), Err(Error::InvalidParameter(_))));
}

#[test]
fn power_identity_rejects_nonmetabelian() {
    let (_, ext) = extension_of("huppert22");
    assert!(matches!(PowerIdentity::new(&ext.group), Err(Error::NonMetabelianInput)));
    assert!(matches!(lemma32_campaign(&ext.group, 10, 0), Err(Error::NonMetabelianInput)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// With `h` in the abelian normal subgroup `G'`, the corrected expansion
    /// is the binomial expansion of `sum_k h^(g^k)`.
    #[test]
    fn corrected_identity_with_h_in_derived(x in 0u32..3125, pick in 0usize..25, n in 1u64..=10) {
        static G: OnceLock<ConcreteGroup> = OnceLock::new();
        let g = G.get_or_init(|| ConcreteGroup::from_presentation(&build_ex52_base(5).unwrap()).unwrap());
        let d = g.derived_subgroup();
        let h = d.members()[pick % d.order()];
        prop_assert!(PowerIdentity::new(g).unwrap().corrected(x, h, n));
    }
}

#[test]
fn automorphism_expansion_small_n() {
    let (_, ext) = extension_of("ex51");
    let pg = &ext.group;
    let t = ext.top();
    for &g in ext.base_generators() {
        // n = 1: g^alpha = g [g, alpha]
        assert!(lemma41_check(pg, t, g, 1).unwrap());
        assert_eq!(pg.conj(g, t), pg.mul(g, pg.comm(g, t)));
        // n = p: every correction term vanishes and alpha^p fixes g
        let id = AutomorphismIdentity::new(pg, t).unwrap();
        assert_eq!(id.direct(g, 5), g);
        let mut u = g;
        for k in 1..5u64 {
            u = pg.comm(u, t);
            assert_eq!(pg.pow(u, binomial(5, k) as i64), 0);
        }
        assert!(id.literal(g, 5));
    }
}

#[test]
fn automorphism_expansion_against_direct_application() {
    let (b, ext) = extension_of("ex52");
    let pg = &ext.group;
    let id = AutomorphismIdentity::new(pg, ext.top()).unwrap();
    let a = b.base.generator_index("a").unwrap();
    let e = b.base.generator(a);
    let thrice = b.alpha.apply(&b.alpha.apply(&b.alpha.apply(&e)));
    // embed the base element after the top generator
    let mut v = vec![0];
    v.extend_from_slice(thrice.exponents());
    let embedded = pg.index_of(&pgroup_core::Element::from_exponents(5, v).unwrap());
    let ga = ext.base_generators()[a];
    assert_eq!(id.expansion(ga, 3), embedded);
    assert_eq!(id.direct(ga, 3), embedded);
}

#[test]
fn automorphism_suite_on_catalog_extensions() {
    for name in ["huppert22", "ex51", "ex52", "noritzsch"] {
        let (_, ext) = extension_of(name);
        let r = lemma41_suite(&ext).unwrap();
        assert!(r.failures.is_empty(), "{name}: {:?}", r.failures);
        assert!(r.corollary.holds, "{name}: {:?}", r.corollary);
        assert!(r.class <= MAX_CLASS);
    }
}

#[test]
fn class_six_is_rejected() {
    // maximal class: [g_i, t] = g_{i+1}, class 6 at p = 7
    let mut b = PresentationBuilder::new(7, ["t", "g1", "g2", "g3", "g4", "g5", "g6"]);
    for i in 1..6 {
        b = b.commutator(i, 0, vec![(i + 1, 1)]);
    }
    let g = ConcreteGroup::from_arc(Arc::new(b.build().unwrap())).unwrap();
    assert_eq!(g.nilpotence_class(), 6);
    assert!(matches!(lemma41_check(&g, g.generators()[0], g.generators()[1], 2), Err(Error::ClassTooLarge(6))));
}

#[test]
fn symplectic_samples_preserve_the_form() {
    let s = SymplecticSampler::new(5, 2).unwrap();
    assert_eq!(s.sp_order(), sp_order(5, 2).unwrap());
    for seed in 0..40 {
        let x = s.sample(seed).unwrap();
        assert!(s.preserves_form(&x.matrix), "seed {seed}");
        assert!((5..=30).contains(&x.word_length));
        assert!(x.p_part <= 5);
        assert_eq!(x.order % x.matrix_order, 0);
    }
    // only the inner and central twist
    for seed in 0..10 {
        let x = s.sample_with_length(seed, 0).unwrap();
        assert_eq!(x.matrix_order, 1);
        assert!(x.order == 1 || x.order == 5);
    }
}

#[test]
fn matrix_method_matches_composition_at_p3() {
    let s = SymplecticSampler::new(3, 2).unwrap();
    for seed in 100..120 {
        let x = s.sample(seed).unwrap();
        assert_eq!(x.order, s.direct_order(&x.map).unwrap(), "seed {seed}");
    }
}

#[test]
fn campaigns_are_reproducible() {
    let a = theorem33_campaign(5, 2, 30, 11).unwrap();
    let b = theorem33_campaign(5, 2, 30, 11).unwrap();
    assert_eq!(a, b);
    assert!(a.holds() && a.bound_applies);
    assert_eq!(a.distribution.values().sum::<usize>(), 30);
    let w = theorem33_campaign(3, 2, 5, 1).unwrap();
    assert!(!w.bound_applies);
    assert_eq!(w.witness.as_ref().unwrap().p_part, 9);
    assert!(theorem33_campaign(5, 2, 0, 1).is_err());
    assert!(SymplecticSampler::new(2, 2).is_err());
    assert!(sample_symplectic_automorphism(7, 1, 3).unwrap().p_part <= 7);
}

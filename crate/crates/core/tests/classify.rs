mod common;

use monoid_geom::classify::{classify_biact, classify_hom, Property, SearchLimits, Verdict};
use monoid_geom::closures::factorable_closure;
use monoid_geom::fixtures;
use monoid_geom::hom::all_monoid_homs;
use monoid_geom::tensor::hom_to_biact;
use monoid_geom::Side;

const SHARED: [Property; 7] = [
    Property::Pure,
    Property::Injection,
    Property::Spread,
    Property::Localic,
    Property::Surjection,
    Property::Hyperconnected,
    Property::TerminalConnected,
];

#[test]
fn biaction_criteria_agree_with_hom_criteria() {
    let limits = SearchLimits {
        congruence_order_cap: 4,
        ..SearchLimits::default()
    };
    let homs = fixtures::all_homs_up_to(4);
    assert!(homs.len() > 100);
    for phi in &homs {
        let h = classify_hom(phi);
        let b = classify_biact(&hom_to_biact(phi), &limits).unwrap();
        for p in SHARED {
            assert_ne!(b.value(p), Verdict::Undecided, "{phi}: {p}");
            assert_eq!(h.value(p), b.value(p), "{phi}: {p}");
        }
        assert!(b.is(Property::Essential));
        for p in [Property::Etale, Property::CompleteSpread, Property::Inclusion] {
            assert_eq!(h.value(p), b.value(p), "{phi}: {p}");
        }
        h.check_implications().unwrap();
        b.check_implications().unwrap();
    }
}

#[test]
fn monoid_homs_are_surjections() {
    let ms: Vec<_> = fixtures::all_monoids().into_iter().filter(|m| m.order() <= 4).collect();
    for m in &ms {
        for n in &ms {
            for phi in all_monoid_homs(m, n) {
                assert!(classify_hom(&phi).is(Property::Surjection), "{phi}");
            }
        }
    }
}

#[test]
fn opposite_swaps_right_and_left_properties() {
    let mut rng = common::rng(7);
    let mut homs = fixtures::all_homs_up_to(5);
    homs.extend((0..500).map(|_| common::random_hom(&mut rng, 5)));
    for phi in &homs {
        let h = classify_hom(phi);
        let o = classify_hom(&phi.opposite());
        assert_eq!(h.value(Property::TerminalConnected), o.value(Property::Pure), "{phi}");
        assert_eq!(h.value(Property::Etale), o.value(Property::CompleteSpread), "{phi}");
        assert_eq!(h.value(Property::Pure), o.value(Property::TerminalConnected), "{phi}");
        let image = phi.image();
        let n = phi.codomain();
        assert_eq!(
            factorable_closure(n, &image, Side::Right).closure,
            factorable_closure(&n.opposite(), &image, Side::Left).closure
        );
        h.check_implications().unwrap();
    }
}

#[test]
fn lc_etale_is_both_factorabilities() {
    let mut rng = common::rng(11);
    for _ in 0..200 {
        let phi = common::random_hom(&mut rng, 5);
        let h = classify_hom(&phi);
        assert_eq!(
            h.is(Property::LocallyConstantEtale),
            h.is(Property::Etale) && h.is(Property::CompleteSpread)
        );
    }
}

#[test]
fn localic_reduction_matches_sub_act_search() {
    // M is a retract of some sub-M-set of A iff of some cyclic one
    for phi in fixtures::all_homs_up_to(4) {
        let a = hom_to_biact(&phi);
        let right = a.right();
        let by_subacts = right
            .sub_acts(4096)
            .unwrap()
            .into_iter()
            .filter(|s| !s.is_empty())
            .any(|s| right.restrict(&s).unwrap().find_regular_retract().is_some());
        let r = classify_biact(&a, &SearchLimits::default()).unwrap();
        assert_eq!(r.is(Property::Localic), by_subacts, "{phi}");
    }
}

#[test]
fn inclusions_have_bijective_counits() {
    use monoid_geom::classify::{counit_is_bijective, free_right_action, enumerate_right_congruences};
    for phi in fixtures::all_homs_up_to(3) {
        let h = classify_hom(&phi);
        let a = hom_to_biact(&phi);
        let m = phi.domain();
        let free = free_right_action(m, 1);
        let all = enumerate_right_congruences(m, 1, 5)
            .unwrap()
            .iter()
            .all(|rho| counit_is_bijective(&a, &free.quotient(rho).unwrap(), 4096).unwrap());
        if h.is(Property::Inclusion) {
            assert!(all, "{phi}");
        }
    }
}

#[test]
fn pure_injection_need_not_be_an_inclusion() {
    // B2 → A2, 0 ↦ z: A2 is connected over B2 and retracts onto it, but the
    // counit on the regular B2-set has four classes
    let phi = monoid_geom::SemigroupHom::from_labels(fixtures::b2(), fixtures::a2(), [("1", "1"), ("0", "z")]).unwrap();
    let h = classify_hom(&phi);
    assert!(h.is(Property::Pure));
    assert!(h.is(Property::Injection));
    assert!(h.is(Property::Spread));
    assert!(!h.is(Property::Inclusion));
    let b = classify_biact(&hom_to_biact(&phi), &SearchLimits::default()).unwrap();
    assert!(!b.is(Property::Inclusion));
}

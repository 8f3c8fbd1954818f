use monoid_geom::classify::{classify_hom, Property};
use monoid_geom::factorize::collapse_slice;
use monoid_geom::fixtures;
use monoid_geom::galois::{classify_lc_etale, groupification, pullback_coset_action, subgroups};
use monoid_geom::hom::all_homs;
use monoid_geom::FiniteMonoid;

pub fn groups_up_to_six() -> Vec<FiniteMonoid> {
    let mut gs: Vec<FiniteMonoid> = (1..=6).map(FiniteMonoid::cyclic).collect();
    gs.push(fixtures::c2xc2());
    gs.push(FiniteMonoid::transformation_monoid("S3", 3, &[vec![1, 2, 0], vec![1, 0, 2]], 6).unwrap());
    gs
}

/// Number of homs ψ: π₁(N) → G with ψ∘η = φ, by scanning all maps.
fn factorizations(eta: &monoid_geom::SemigroupHom, phi: &monoid_geom::SemigroupHom) -> usize {
    let p = eta.codomain();
    let g = phi.codomain();
    let total = g.order().pow(p.order() as u32);
    (0..total)
        .filter(|&code| {
            let mut c = code;
            let psi: Vec<usize> = (0..p.order())
                .map(|_| {
                    let v = c % g.order();
                    c /= g.order();
                    v
                })
                .collect();
            let is_hom = p.elements().all(|a| p.elements().all(|b| psi[p.mul(a, b)] == g.mul(psi[a], psi[b])));
            is_hom && eta.domain().elements().all(|x| psi[eta.apply(x)] == phi.apply(x))
        })
        .count()
}

#[test]
fn groupification_is_universal() {
    let groups = groups_up_to_six();
    for n in fixtures::all_monoids().into_iter().filter(|m| m.order() <= 4) {
        let gp = groupification(&n);
        assert!(gp.group.is_group());
        assert!(gp.eta.is_surjective() && gp.eta.is_monoid_hom());
        for e in n.idempotents() {
            assert_eq!(gp.eta.apply(e), gp.group.identity());
        }
        for g in &groups {
            for phi in all_homs(&n, g) {
                for e in n.idempotents() {
                    assert_eq!(phi.apply(e), g.identity());
                }
                assert_eq!(factorizations(&gp.eta, &phi), 1, "{phi}");
            }
        }
    }
}

#[test]
fn groups_are_their_own_groupification() {
    for g in groups_up_to_six() {
        assert!(groupification(&g).group.is_isomorphic(&g));
    }
}

#[test]
fn classification_round_trip() {
    for n in [
        fixtures::c2(),
        fixtures::b2(),
        fixtures::a2(),
        fixtures::c3(),
        fixtures::ch3(),
        fixtures::c2xc2(),
        fixtures::c2_zero(),
        fixtures::c2xb2(),
    ] {
        let cl = classify_lc_etale(&n).unwrap();
        assert!(!cl.entries.is_empty());
        for entry in &cl.entries {
            assert!(entry.lc_etale_verified, "{}", entry.hom);
            assert!(classify_hom(&entry.hom).is(Property::LocallyConstantEtale));
            let x = pullback_coset_action(&cl.groupification, &entry.subgroup);
            assert!(x.is_locally_constant());
            let (m, _) = collapse_slice(&n, &x).expect("H is a strong generator");
            assert!(m.is_isomorphic(&entry.monoid), "{}", n.name());
        }
        // subgroups failing the translation condition give no lc-étale inclusion
        let g = &cl.groupification.group;
        for h in subgroups(g).unwrap() {
            if cl.entries.iter().all(|e| e.subgroup != h) {
                let pre: Vec<usize> = n.elements().filter(|&x| h.contains(&cl.groupification.eta.apply(x))).collect();
                let (_, incl) = n.submonoid("pre", &pre).unwrap();
                assert!(!classify_hom(&incl).is(Property::LocallyConstantEtale));
            }
        }
    }
}

#[test]
fn pullbacks_of_group_actions_are_locally_constant() {
    for n in fixtures::all_monoids() {
        let gp = groupification(&n);
        for h in subgroups(&gp.group).unwrap() {
            assert!(pullback_coset_action(&gp, &h).is_locally_constant());
        }
    }
}

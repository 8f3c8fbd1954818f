//! Acceptance run: each numbered criterion is checked in turn and reported on
//! one line as PASS or FAIL. The process exits nonzero if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use monoid_geom::classify::{classify_biact, classify_hom, Property, SearchLimits, Verdict};
use monoid_geom::closures::factorable_closure;
use monoid_geom::error::Error;
use monoid_geom::factorize::{collapse_slice, factor_tc_etale, factor_three};
use monoid_geom::fixtures;
use monoid_geom::galois::{classify_lc_etale, groupification, pullback_coset_action};
use monoid_geom::hom::{all_homs, all_monoid_homs};
use monoid_geom::presentation::{enumerate_presentation, Presentation};
use monoid_geom::tensor::{hom_to_biact, pushforward_terminal};
use monoid_geom::{FiniteMonoid, SemigroupHom, Side};
use rand::Rng;

fn timed<T>(limit: Duration, what: &str, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = f();
    let took = start.elapsed();
    assert!(took <= limit, "{what} took {took:?}, limit {limit:?}");
    out
}

fn criterion_1() -> String {
    let b2 = fixtures::b2();
    let zero = b2.index_of("0").unwrap();
    timed(Duration::from_millis(1), "closure of {0} in B2", || {
        assert!(factorable_closure(&b2, &[zero], Side::Right).is_everything());
    });
    assert!(classify_hom(&fixtures::iota_b()).is(Property::TerminalConnected));

    // right closures in the 3-chain 1 > e > 0 are upward closures
    let ch3 = fixtures::ch3();
    let rank = |x: usize| match ch3.label(x) {
        "1" => 2,
        "e" => 1,
        _ => 0,
    };
    timed(Duration::from_millis(1), "3-chain closures", || {
        for mask in 0..8u32 {
            let seed: Vec<usize> = ch3.elements().filter(|&x| mask >> x & 1 == 1).collect();
            let closure = factorable_closure(&ch3, &seed, Side::Right).closure;
            let least = seed.iter().map(|&x| rank(x)).min().unwrap_or(2);
            let upward: Vec<usize> = ch3.elements().filter(|&x| rank(x) >= least).collect();
            assert_eq!(closure, upward, "seed {seed:?}");
        }
    });

    timed(Duration::from_millis(10), "group inclusions", || {
        for phi in [fixtures::incl_c2(), fixtures::incl_c2_klein()] {
            let r = classify_hom(&phi);
            for p in [Property::Etale, Property::CompleteSpread, Property::LocallyConstantEtale] {
                assert!(r.is(p), "{phi}: {p}");
            }
        }
    });

    let ms: Vec<FiniteMonoid> = fixtures::all_monoids().into_iter().filter(|m| m.order() <= 4).collect();
    let mut count = 0;
    for m in &ms {
        for n in &ms {
            for phi in all_monoid_homs(m, n) {
                assert!(classify_hom(&phi).is(Property::Surjection), "{phi}");
                count += 1;
            }
        }
    }
    format!("examples reproduced; {count} monoid homs surjective")
}

fn criterion_2() -> String {
    let homs = fixtures::all_homs_up_to(5);
    assert!(homs.len() >= 200, "only {} homs", homs.len());
    for phi in &homs {
        let n = phi.codomain();
        let tensor_side = pushforward_terminal(phi).identified_with_e(n);
        let closure = factorable_closure(n, &phi.image(), Side::Right).closure;
        assert_eq!(tensor_side, closure, "{phi}");
    }
    format!("{} homs", homs.len())
}

fn criterion_3() -> String {
    let mut rng = common::rng(11);
    let mut homs = fixtures::all_homs_up_to(5);
    let fixed = homs.len();
    homs.extend((0..500).map(|_| common::random_hom(&mut rng, 5)));
    for phi in &homs {
        let op = phi.opposite();
        let (a, b) = (classify_hom(phi), classify_hom(&op));
        assert_eq!(a.value(Property::TerminalConnected), b.value(Property::Pure), "{phi}");
        assert_eq!(a.value(Property::Pure), b.value(Property::TerminalConnected), "{phi}");
        assert_eq!(a.value(Property::Etale), b.value(Property::CompleteSpread), "{phi}");
        assert_eq!(a.value(Property::CompleteSpread), b.value(Property::Etale), "{phi}");
        let n = phi.codomain();
        let right = factorable_closure(n, &phi.image(), Side::Right).closure;
        let left = factorable_closure(op.codomain(), &op.image(), Side::Left).closure;
        assert_eq!(right, left, "{phi}");
    }
    format!("{fixed} fixture homs and 500 random homs")
}

fn criterion_4() -> String {
    let mut homs = fixtures::all_homs_up_to(4);
    homs.extend(fixtures::named_homs().into_iter().map(|(_, h)| h));
    for phi in &homs {
        let f = factor_three(phi);
        assert_eq!(f.composite().as_slice(), phi.as_slice(), "{phi}");
        assert!(classify_hom(&f.pi).is(Property::Hyperconnected), "{phi}");
        assert!(classify_hom(&f.psi).is(Property::Localic), "{phi}");
        assert!(classify_hom(&f.iota).is(Property::Inclusion), "{phi}");
        let t = factor_tc_etale(phi);
        assert!(t.d_equals_ede(phi.codomain(), phi.image_of_identity()), "{phi}");
        assert!(classify_hom(&t.k).is(Property::TerminalConnected), "{phi}");
        assert!(classify_hom(&t.j1).is(Property::TerminalConnected), "{phi}");
    }
    format!("{} homs", homs.len())
}

fn criterion_5() -> String {
    let limits = SearchLimits {
        congruence_order_cap: 4,
        ..SearchLimits::default()
    };
    let homs = fixtures::all_homs_up_to(4);
    let mut compared = 0;
    for phi in &homs {
        let h = classify_hom(phi);
        let b = classify_biact(&hom_to_biact(phi), &limits).unwrap();
        for p in Property::ALL {
            if b.value(p) != Verdict::Undecided {
                assert_eq!(h.value(p), b.value(p), "{phi}: {p}");
                compared += 1;
            }
        }
    }
    format!("{} homs, {compared} verdicts compared", homs.len())
}

/// Number of homs ψ with ψ∘η = φ, scanning every map out of π₁(N).
fn factorizations(eta: &SemigroupHom, phi: &SemigroupHom) -> usize {
    let p = eta.codomain();
    let g = phi.codomain();
    (0..g.order().pow(p.order() as u32))
        .filter(|&code| {
            let psi: Vec<usize> = (0..p.order()).map(|i| code / g.order().pow(i as u32) % g.order()).collect();
            p.elements().all(|a| p.elements().all(|b| psi[p.mul(a, b)] == g.mul(psi[a], psi[b])))
                && eta.domain().elements().all(|x| psi[eta.apply(x)] == phi.apply(x))
        })
        .count()
}

fn criterion_6() -> String {
    let mut groups: Vec<FiniteMonoid> = (1..=6).map(FiniteMonoid::cyclic).collect();
    groups.push(fixtures::c2xc2());
    groups.push(FiniteMonoid::transformation_monoid("S3", 3, &[vec![1, 2, 0], vec![1, 0, 2]], 6).unwrap());
    let mut count = 0;
    timed(Duration::from_secs(10), "universality", || {
        for n in fixtures::all_monoids().into_iter().filter(|m| m.order() <= 4) {
            let gp = groupification(&n);
            for g in &groups {
                for phi in all_homs(&n, g) {
                    assert_eq!(factorizations(&gp.eta, &phi), 1, "{phi}");
                    count += 1;
                }
            }
        }
    });
    format!("{count} homs into groups of order ≤ 6")
}

fn criterion_7() -> String {
    let mut count = 0;
    for n in [
        fixtures::c2(),
        fixtures::b2(),
        fixtures::a2(),
        fixtures::c3(),
        fixtures::ch3(),
        fixtures::c2xc2(),
    ] {
        let cl = classify_lc_etale(&n).unwrap();
        for entry in &cl.entries {
            assert!(classify_hom(&entry.hom).is(Property::LocallyConstantEtale), "{}", entry.hom);
            let x = pullback_coset_action(&cl.groupification, &entry.subgroup);
            let (m, _) = collapse_slice(&n, &x).expect("cosets have a strong generator");
            assert!(m.is_isomorphic(&entry.monoid), "{}", n.name());
            count += 1;
        }
    }
    format!("{count} subgroups")
}

fn criterion_8() -> String {
    let mut rng = common::rng(8);
    let (mut lc, mut total) = (0, 0);
    while total < 120 {
        let degree = rng.gen_range(1..=8);
        let permutations = rng.gen_bool(0.5);
        let gens: Vec<Vec<usize>> = (0..rng.gen_range(1..=2))
            .map(|_| {
                if permutations {
                    let mut p: Vec<usize> = (0..degree).collect();
                    for i in (1..degree).rev() {
                        p.swap(i, rng.gen_range(0..=i));
                    }
                    p
                } else {
                    (0..degree).map(|_| rng.gen_range(0..degree)).collect()
                }
            })
            .collect();
        let Ok(m) = FiniteMonoid::transformation_monoid("R", degree, &gens, 60) else {
            continue;
        };
        let x = common::natural_action(&m, degree);
        let (_, projection) = x.category_of_elements();
        assert!(projection.is_discrete_fibration());
        assert_eq!(x.is_locally_constant(), projection.is_discrete_opfibration(), "{gens:?}");
        lc += x.is_locally_constant() as usize;
        total += 1;
    }
    format!("{total} random actions, {lc} locally constant")
}

fn criterion_9() -> String {
    let bicyclic = Presentation::new(&["u", "v"], &[("u v", "1")], 100);
    assert!(matches!(enumerate_presentation(&bicyclic), Err(Error::CapExceeded(100))));
    let r = classify_hom(&fixtures::iota_b());
    assert!(r.is(Property::Inclusion));
    assert!(r.is(Property::TerminalConnected));
    assert!(!r.is(Property::Surjection));
    "bicyclic exceeds the cap; ι_B is an inclusion, terminal-connected, not a surjection".into()
}

type Criterion = (&'static str, fn() -> String);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("worked examples", criterion_1),
        ("tensor and closure agree on ∗⊗en = ∗⊗e", criterion_2),
        ("opposite duality", criterion_3),
        ("factorization soundness", criterion_4),
        ("biaction and hom classifications agree", criterion_5),
        ("groupification universality", criterion_6),
        ("locally constant étale round trip", criterion_7),
        ("locally constant ⟺ discrete bifibration", criterion_8),
        ("negative detection", criterion_9),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check));
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}; {took:.2?})", i + 1),
            Err(e) => {
                failed += 1;
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("criterion {}: FAIL  {name}: {msg}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! Small named monoids, homomorphisms and actions used in examples and tests.

use crate::actions::{BiAction, LeftAction, RightAction};
use crate::hom::{all_homs, SemigroupHom};
use crate::monoid::FiniteMonoid;

fn labels(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn build(name: &str, ls: &[&str], mul: impl Fn(usize, usize) -> usize) -> FiniteMonoid {
    FiniteMonoid::from_fn(name, labels(ls), 0, mul).expect("fixture table is a monoid")
}

/// The trivial monoid.
pub fn t1() -> FiniteMonoid {
    build("T1", &["1"], |_, _| 0)
}

pub fn c2() -> FiniteMonoid {
    build("C2", &["1", "g"], |a, b| (a + b) % 2)
}

pub fn c3() -> FiniteMonoid {
    FiniteMonoid::cyclic(3)
}

pub fn c4() -> FiniteMonoid {
    FiniteMonoid::cyclic(4)
}

/// {1, 0} under multiplication (the multiplicative monoid of ℤ/2).
pub fn b2() -> FiniteMonoid {
    build("B2", &["1", "0"], |a, b| a.max(b))
}

/// {1, a, z} with a·a = z and z absorbing.
pub fn a2() -> FiniteMonoid {
    build("A2", &["1", "a", "z"], |a, b| match (a, b) {
        (0, x) | (x, 0) => x,
        _ => 2,
    })
}

/// The chain 1 > e > 0 with the minimum as product.
pub fn ch3() -> FiniteMonoid {
    build("CH3", &["1", "e", "0"], |a, b| a.max(b))
}

/// {1, a, b} with xy = x for x, y ∈ {a, b}.
pub fn l3() -> FiniteMonoid {
    build("L3", &["1", "a", "b"], |a, b| if a == 0 { b } else { a })
}

/// {1, a, b} with xy = y for x, y ∈ {a, b}.
pub fn r3() -> FiniteMonoid {
    build("R3", &["1", "a", "b"], |a, b| if b == 0 { a } else { b })
}

/// C2 with an adjoined zero.
pub fn c2_zero() -> FiniteMonoid {
    build("C2^0", &["1", "g", "0"], |a, b| if a == 2 || b == 2 { 2 } else { (a + b) % 2 })
}

/// C4 with an adjoined zero.
pub fn c4_zero() -> FiniteMonoid {
    build("C4^0", &["1", "g", "g2", "g3", "0"], |a, b| if a == 4 || b == 4 { 4 } else { (a + b) % 4 })
}

/// The Klein four-group.
pub fn c2xc2() -> FiniteMonoid {
    build("C2xC2", &["1", "a", "b", "ab"], |a, b| a ^ b)
}

/// C2 × B2.
pub fn c2xb2() -> FiniteMonoid {
    // index = 2·(B2 part) + (C2 part)
    build("C2xB2", &["1", "g", "0", "g0"], |a, b| 2 * ((a / 2).max(b / 2)) + (a % 2 + b % 2) % 2)
}

/// All maps on {0, 1} under composition, acting on the right; labels list
/// the images of 0 and 1.
pub fn t2() -> FiniteMonoid {
    let maps = [[0usize, 1], [1, 0], [0, 0], [1, 1]];
    let index = |f: [usize; 2]| maps.iter().position(|g| *g == f).expect("closed");
    build("T2", &["01", "10", "00", "11"], |a, b| {
        let (f, g) = (maps[a], maps[b]);
        index([g[f[0]], g[f[1]]])
    })
}

/// Every fixture monoid, smallest first.
pub fn all_monoids() -> Vec<FiniteMonoid> {
    vec![
        t1(),
        c2(),
        b2(),
        c3(),
        a2(),
        ch3(),
        l3(),
        r3(),
        c2_zero(),
        c4(),
        c2xc2(),
        c2xb2(),
        t2(),
        c4_zero(),
    ]
}

pub fn monoid_by_name(name: &str) -> Option<FiniteMonoid> {
    all_monoids().into_iter().find(|m| m.name() == name)
}

fn hom(domain: FiniteMonoid, codomain: FiniteMonoid, pairs: &[(&str, &str)]) -> SemigroupHom {
    SemigroupHom::from_labels(domain, codomain, pairs.iter().copied()).expect("fixture hom is multiplicative")
}

/// The trivial subgroup {1} ⊆ C2.
pub fn incl_c2() -> SemigroupHom {
    hom(t1(), c2(), &[("1", "1")])
}

/// C2 ⊆ C2 × C2 as the first factor.
pub fn incl_c2_klein() -> SemigroupHom {
    hom(c2(), c2xc2(), &[("1", "1"), ("g", "a")])
}

/// A2 → B2 collapsing a and z to 0.
pub fn q_a() -> SemigroupHom {
    hom(a2(), b2(), &[("1", "1"), ("a", "0"), ("z", "0")])
}

/// The point 1 ↦ 0 of B2.
pub fn iota_b() -> SemigroupHom {
    hom(t1(), b2(), &[("1", "0")])
}

/// B2 → CH3 with 1 ↦ 1 and 0 ↦ 0.
pub fn psi_b() -> SemigroupHom {
    hom(b2(), ch3(), &[("1", "1"), ("0", "0")])
}

/// The unit T1 → B2.
pub fn unit_b() -> SemigroupHom {
    hom(t1(), b2(), &[("1", "1")])
}

/// Named homs, with the names used for fixture files.
pub fn named_homs() -> Vec<(&'static str, SemigroupHom)> {
    vec![
        ("incl_C2", incl_c2()),
        ("incl_C2_C2xC2", incl_c2_klein()),
        ("qA", q_a()),
        ("iotaB", iota_b()),
        ("psiB", psi_b()),
        ("unitB", unit_b()),
    ]
}

/// Every semigroup hom between fixture monoids of order at most `k`.
pub fn all_homs_up_to(k: usize) -> Vec<SemigroupHom> {
    let ms: Vec<FiniteMonoid> = all_monoids().into_iter().filter(|m| m.order() <= k).collect();
    let mut out = Vec::new();
    for m in &ms {
        for n in &ms {
            out.extend(all_homs(m, n));
        }
    }
    out
}

/// Left C2-set on two points swapped by g, with trivial right T1-action:
/// the biaction of the trivial subgroup inclusion.
pub fn c2_two_points() -> BiAction {
    let c2 = c2();
    BiAction::from_actions(
        LeftAction::from_fn(c2.clone(), labels(&["p", "q"]), |n, x| (n + x) % 2).expect("left action"),
        RightAction::constant(&t1(), labels(&["p", "q"])),
    )
    .expect("biaction")
}

/// (B2, T1)-biaction on {0, 1} from the unit T1 → B2: N·1 = B2 with the
/// trivial right action. It has two right components and no strong
/// generator for the left action.
pub fn b2_unit_biaction() -> BiAction {
    let b2 = b2();
    BiAction::from_actions(LeftAction::regular(&b2), RightAction::constant(&t1(), b2.labels().to_vec()))
        .expect("biaction")
}

#![allow(dead_code)]

use monoid_geom::actions::RightAction;
use monoid_geom::hom::all_homs;
use monoid_geom::{FiniteMonoid, SemigroupHom};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A monoid of transformations of at most four points generated by one or
/// two random maps, retried until its order is at most `max_order`.
pub fn random_monoid(rng: &mut impl Rng, max_order: usize) -> FiniteMonoid {
    loop {
        let degree = rng.gen_range(1..=4);
        let gens: Vec<Vec<usize>> = (0..rng.gen_range(1..=2))
            .map(|_| (0..degree).map(|_| rng.gen_range(0..degree)).collect())
            .collect();
        if let Ok(m) = FiniteMonoid::transformation_monoid("R", degree, &gens, max_order) {
            return m;
        }
    }
}

/// A random semigroup hom between random monoids of order ≤ `max_order`.
pub fn random_hom(rng: &mut impl Rng, max_order: usize) -> SemigroupHom {
    let m = random_monoid(rng, max_order);
    let n = random_monoid(rng, max_order);
    let homs = all_homs(&m, &n);
    homs.choose(rng).expect("the constant hom to an idempotent exists").clone()
}

/// The natural right action of a transformation monoid on its points;
/// element labels spell out the maps.
pub fn natural_action(m: &FiniteMonoid, degree: usize) -> RightAction {
    let points = (0..degree).map(|x| x.to_string()).collect();
    RightAction::from_fn(m.clone(), points, |x, k| {
        m.label(k).chars().nth(x).unwrap().to_digit(10).unwrap() as usize
    })
    .unwrap()
}

//! Tensor products of actions over a monoid.
//!
//! X ⊗_N A is the quotient of X × A by the equivalence generated by
//! (x·n, a) ∼ (x, n·a). Pairs are encoded as `x * |A| + a`.

use crate::actions::{BiAction, LeftAction, RightAction};
use crate::dsu::{Dsu, Partition};
use crate::error::{Error, Result};
use crate::hom::SemigroupHom;
use crate::monoid::FiniteMonoid;

/// Largest product carrier the tensor will materialize.
pub const PRODUCT_CAP: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorResult {
    left_size: usize,
    right_size: usize,
    /// Classes of X × A.
    pub classes: Partition,
    /// Least pair `(x, a)` of each class.
    pub class_reps: Vec<(usize, usize)>,
    /// `x⊗a` for the representative of each class.
    pub labels: Vec<String>,
    /// The right action induced on the classes when A carries one.
    pub induced_action: Option<RightAction>,
}

impl TensorResult {
    pub fn pairing(&self, x: usize, a: usize) -> usize {
        self.classes.class_of(x * self.right_size + a)
    }

    pub fn num_classes(&self) -> usize {
        self.classes.num_classes()
    }

    pub fn left_size(&self) -> usize {
        self.left_size
    }

    pub fn right_size(&self) -> usize {
        self.right_size
    }
}

fn same_monoid(a: &FiniteMonoid, b: &FiniteMonoid, what: &str) -> Result<()> {
    if a.table_rows() == b.table_rows() {
        Ok(())
    } else {
        Err(Error::MonoidMismatch(format!("{what}: {} vs {}", a.name(), b.name())))
    }
}

/// Classes of `0..xs × 0..as_` under (x·n, a) ∼ (x, n·a).
fn tensor_partition(
    xs: usize,
    as_: usize,
    middle: &FiniteMonoid,
    right: impl Fn(usize, usize) -> usize,
    left: impl Fn(usize, usize) -> usize,
) -> Result<Partition> {
    let total = xs * as_;
    if total > PRODUCT_CAP {
        return Err(Error::SizeCap {
            what: "tensor product carrier".into(),
            limit: PRODUCT_CAP,
            actual: total,
        });
    }
    let mut dsu = Dsu::new(total);
    for x in 0..xs {
        for n in middle.elements() {
            let xn = right(x, n);
            for a in 0..as_ {
                dsu.union(xn * as_ + a, x * as_ + left(n, a));
            }
        }
    }
    Ok(dsu.into_partition())
}

fn reps_and_labels(p: &Partition, as_: usize, xl: &[String], al: &[String]) -> (Vec<(usize, usize)>, Vec<String>) {
    let reps: Vec<(usize, usize)> = p.representatives().into_iter().map(|r| (r / as_, r % as_)).collect();
    let labels = reps.iter().map(|&(x, a)| format!("{}⊗{}", xl[x], al[a])).collect();
    (reps, labels)
}

/// X ⊗_N A for a right N-set X and a left N-set A.
pub fn tensor(x: &RightAction, a: &LeftAction) -> Result<TensorResult> {
    same_monoid(x.monoid(), a.monoid(), "tensor over different monoids")?;
    let p = tensor_partition(x.size(), a.size(), x.monoid(), |u, n| x.act(u, n), |n, v| a.act(n, v))?;
    let (class_reps, labels) = reps_and_labels(&p, a.size(), x.underlying_set(), a.underlying_set());
    Ok(TensorResult {
        left_size: x.size(),
        right_size: a.size(),
        classes: p,
        class_reps,
        labels,
        induced_action: None,
    })
}

/// X ⊗_N A for an (N, M)-biaction A, with the induced right M-action.
pub fn tensor_biact(x: &RightAction, a: &BiAction) -> Result<TensorResult> {
    let mut t = tensor(x, a.left())?;
    let m = a.right_monoid().clone();
    let act = RightAction::from_fn(m, t.labels.clone(), |c, mm| {
        let (u, v) = t.class_reps[c];
        t.pairing(u, a.act_right(v, mm))
    })?;
    t.induced_action = Some(act);
    Ok(t)
}

/// A ⊗_L B for an (N, L)-biaction A and an (L, M)-biaction B.
pub fn compose_biacts(a: &BiAction, b: &BiAction) -> Result<BiAction> {
    same_monoid(a.right_monoid(), b.left_monoid(), "composing biactions")?;
    let t = tensor(a.right(), b.left())?;
    let left = LeftAction::from_fn(a.left_monoid().clone(), t.labels.clone(), |n, c| {
        let (u, v) = t.class_reps[c];
        t.pairing(a.act_left(n, u), v)
    })?;
    let right = RightAction::from_fn(b.right_monoid().clone(), t.labels.clone(), |c, m| {
        let (u, v) = t.class_reps[c];
        t.pairing(u, b.act_right(v, m))
    })?;
    BiAction::from_actions(left, right)
}

/// The (N, M)-biaction Nφ(1): left N by multiplication, right M through φ.
pub fn hom_to_biact(phi: &SemigroupHom) -> BiAction {
    let n = phi.codomain();
    let e = phi.image_of_identity();
    let carrier: Vec<usize> = n.elements().filter(|&x| n.mul(x, e) == x).collect();
    biact_on(n, n, phi.domain(), &carrier, |y, x| n.mul(y, x), |x, m| n.mul(x, phi.apply(m)))
}

/// The (M, N)-biaction φ(1)N: left M through φ, right N by multiplication.
pub fn hom_to_left_biact(phi: &SemigroupHom) -> BiAction {
    let n = phi.codomain();
    let e = phi.image_of_identity();
    let carrier: Vec<usize> = n.elements().filter(|&x| n.mul(e, x) == x).collect();
    biact_on(n, phi.domain(), n, &carrier, |m, x| n.mul(phi.apply(m), x), |x, y| n.mul(x, y))
}

/// Biaction on a subset `carrier` of `ambient` closed under both actions.
fn biact_on(
    ambient: &FiniteMonoid,
    left_monoid: &FiniteMonoid,
    right_monoid: &FiniteMonoid,
    carrier: &[usize],
    left: impl Fn(usize, usize) -> usize,
    right: impl Fn(usize, usize) -> usize,
) -> BiAction {
    let labels: Vec<String> = carrier.iter().map(|&x| ambient.label(x).to_string()).collect();
    let pos = |y: usize| carrier.binary_search(&y).expect("carrier is closed");
    let l = LeftAction::from_fn(left_monoid.clone(), labels.clone(), |n, i| pos(left(n, carrier[i])))
        .expect("left multiplication is an action");
    let r = RightAction::from_fn(right_monoid.clone(), labels, |i, m| pos(right(carrier[i], m)))
        .expect("right multiplication is an action");
    BiAction::from_actions(l, r).expect("multiplication is associative")
}

/// f_!(1) = 1 ⊗_M φ(1)N as a right N-set, together with the class of each
/// element `e·n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PushforwardTerminal {
    pub action: RightAction,
    /// The elements of eN, in increasing order.
    pub carrier: Vec<usize>,
    /// Class of each element of `carrier`.
    pub class_of: Vec<usize>,
    e: usize,
}

impl PushforwardTerminal {
    /// Class of `e·n`.
    pub fn class_of_en(&self, n: &FiniteMonoid, x: usize) -> usize {
        let en = n.mul(self.e, x);
        let i = self.carrier.iter().position(|&c| c == en).expect("en ∈ eN");
        self.class_of[i]
    }

    /// {n : ∗⊗en = ∗⊗e}.
    pub fn identified_with_e(&self, n: &FiniteMonoid) -> Vec<usize> {
        let base = self.class_of_en(n, n.identity());
        n.elements().filter(|&x| self.class_of_en(n, x) == base).collect()
    }
}

/// f_!(1) for the essential morphism induced by φ.
pub fn pushforward_terminal(phi: &SemigroupHom) -> PushforwardTerminal {
    let n = phi.codomain();
    let e = phi.image_of_identity();
    let biact = hom_to_left_biact(phi);
    let carrier: Vec<usize> = n.elements().filter(|&x| n.mul(e, x) == x).collect();
    let t = tensor_biact(&RightAction::terminal(phi.domain()), &biact).expect("small tensor");
    let class_of = (0..carrier.len()).map(|i| t.pairing(0, i)).collect();
    let action = t.induced_action.expect("biaction induces an action");
    PushforwardTerminal {
        action,
        carrier,
        class_of,
        e,
    }
}

/// Ne ⊗_M 1 as a left N-set, computed as f_!(1) for φ^op.
pub fn pullback_terminal_dual(phi: &SemigroupHom) -> PushforwardTerminal {
    pushforward_terminal(&phi.opposite())
}

/// The left N-set Ne ⊗_M 1.
pub fn pullback_terminal_dual_action(phi: &SemigroupHom) -> LeftAction {
    LeftAction::from_opposite(pullback_terminal_dual(phi).action)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::hom::all_homs;

    #[test]
    fn unit_law_for_regular_action() {
        for n in fixtures::all_monoids() {
            let x = RightAction::regular(&n)
                .coproduct(&RightAction::terminal(&n))
                .unwrap();
            let t = tensor_biact(&x, &BiAction::regular(&n)).unwrap();
            let induced = t.induced_action.unwrap();
            // (x, n) ↦ x·n is a bijection onto X commuting with the action
            let to_x: Vec<usize> = t.class_reps.iter().map(|&(u, v)| x.act(u, v)).collect();
            assert_eq!(induced.size(), x.size(), "{}", n.name());
            assert!(x.is_isomorphic(&induced));
            let mut sorted = to_x.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), x.size());
        }
    }

    #[test]
    fn tensor_examples() {
        let t1 = fixtures::t1();
        let c2_as_t1 = LeftAction::constant(&t1, vec!["1".into(), "g".into()]);
        assert_eq!(tensor(&RightAction::terminal(&t1), &c2_as_t1).unwrap().num_classes(), 2);
        // eN = {0} for the point 1 ↦ 0 of B2, as a left T1-set
        let en = hom_to_left_biact(&fixtures::iota_b());
        assert_eq!(en.size(), 1);
        assert_eq!(tensor(&RightAction::terminal(&t1), en.left()).unwrap().num_classes(), 1);
    }

    #[test]
    fn hom_to_biact_examples() {
        let id = SemigroupHom::identity(&fixtures::b2());
        assert!(hom_to_biact(&id).is_isomorphic(&BiAction::regular(&fixtures::b2())));
        let b = hom_to_biact(&fixtures::iota_b());
        assert_eq!(b.underlying_set(), &["0".to_string()][..]);
        let c = hom_to_biact(&fixtures::incl_c2());
        assert_eq!(c.size(), 2);
        assert_eq!(c.right().components().num_classes(), 2);
        for phi in fixtures::all_homs_up_to(4) {
            assert!(hom_to_biact(&phi).left().is_flat().holds(), "{phi}");
        }
    }

    #[test]
    fn pushforward_examples() {
        let id = SemigroupHom::identity(&fixtures::a2());
        assert_eq!(pushforward_terminal(&id).action.size(), 1);
        assert_eq!(pushforward_terminal(&fixtures::iota_b()).action.size(), 1);
        let p = pushforward_terminal(&fixtures::incl_c2());
        assert_eq!(p.action.size(), 2);
        assert!(p.action.is_isomorphic(&RightAction::regular(&fixtures::c2())));
    }

    #[test]
    fn pullback_dual_examples() {
        let id = SemigroupHom::identity(&fixtures::b2());
        assert_eq!(pullback_terminal_dual_action(&id).size(), 1);
        let y = pullback_terminal_dual_action(&fixtures::incl_c2());
        assert!(y.is_isomorphic(&LeftAction::regular(&fixtures::c2())));
        assert_eq!(pullback_terminal_dual_action(&fixtures::psi_b()).size(), 1);
    }

    #[test]
    fn composition_matches_hom_composition() {
        let ms: Vec<_> = fixtures::all_monoids().into_iter().filter(|m| m.order() <= 3).collect();
        for a in &ms {
            for b in &ms {
                for c in &ms {
                    for f in all_homs(a, b) {
                        for g in all_homs(b, c) {
                            let gf = f.then(&g).unwrap();
                            let composed = compose_biacts(&hom_to_biact(&g), &hom_to_biact(&f)).unwrap();
                            assert!(composed.is_isomorphic(&hom_to_biact(&gf)), "{f} then {g}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn composition_with_regular_is_unital() {
        for phi in fixtures::all_homs_up_to(3) {
            let a = hom_to_biact(&phi);
            let left = compose_biacts(&BiAction::regular(phi.codomain()), &a).unwrap();
            let right = compose_biacts(&a, &BiAction::regular(phi.domain())).unwrap();
            assert!(left.is_isomorphic(&a) && right.is_isomorphic(&a), "{phi}");
        }
    }
}

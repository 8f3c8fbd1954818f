//! Explicit factorizations of the morphism PSh(M) → PSh(N) induced by a
//! semigroup homomorphism or a flat biaction.

use serde_json::{json, Value};

use crate::actions::{BiAction, LeftAction, RightAction};
use crate::category::{completion_object, FiniteCategory, FunctorData};
use crate::closures::factorable_closure_with;
use crate::congruence::{quotient_by_congruence, Congruence};
use crate::error::{Error, Result};
use crate::hom::SemigroupHom;
use crate::monoid::{FiniteMonoid, Side};
use crate::tensor::{compose_biacts, hom_to_biact, pushforward_terminal};

/// φ = iota ∘ psi ∘ pi through M/∼ and eNe.
#[derive(Clone, Debug)]
pub struct ThreePartFactorization {
    /// M → M/∼, a quotient by the kernel congruence.
    pub pi: SemigroupHom,
    /// M/∼ → eNe, an injective monoid hom.
    pub psi: SemigroupHom,
    /// eNe → N, the corner inclusion.
    pub iota: SemigroupHom,
}

impl ThreePartFactorization {
    /// (surjection, inclusion) parts: (psi ∘ pi, iota).
    pub fn surjection_inclusion(&self) -> (SemigroupHom, SemigroupHom) {
        (self.pi.then(&self.psi).expect("parts compose"), self.iota.clone())
    }

    /// (hyperconnected, localic) parts: (pi, iota ∘ psi).
    pub fn hyperconnected_localic(&self) -> (SemigroupHom, SemigroupHom) {
        (self.pi.clone(), self.psi.then(&self.iota).expect("parts compose"))
    }

    pub fn composite(&self) -> SemigroupHom {
        self.pi.then(&self.psi).and_then(|h| h.then(&self.iota)).expect("parts compose")
    }

    pub fn to_json(&self) -> Value {
        json!({
            "pi": hom_json(&self.pi),
            "psi": hom_json(&self.psi),
            "iota": hom_json(&self.iota),
        })
    }
}

pub fn factor_three(phi: &SemigroupHom) -> ThreePartFactorization {
    let m = phi.domain();
    let n = phi.codomain();
    let e = phi.image_of_identity();
    let kernel = Congruence::kernel(phi);
    let (q, pi) = quotient_by_congruence(m, &kernel).expect("kernels are two-sided");
    let (corner, iota) = n.corner(e).expect("φ(1) is idempotent");
    let reps = kernel.partition().representatives();
    let map = q
        .elements()
        .map(|c| {
            let y = phi.apply(reps[c]);
            iota.as_slice().iter().position(|&z| z == y).expect("φ(M) ⊆ eNe")
        })
        .collect();
    let psi = SemigroupHom::new(q, corner, map).expect("induced map is multiplicative");
    ThreePartFactorization { pi, psi, iota }
}

/// The chain M → D → E → N of the (terminal-connected, étale)
/// factorization, the slice object f_!(1) and its elements category over
/// the idempotent completion Ň.
#[derive(Clone, Debug)]
pub struct TcEtaleFactorization {
    /// Right-factorable closure of φ(M) in eNe.
    pub d: FiniteMonoid,
    /// Right-factorable closure of φ(M) in N.
    pub e: FiniteMonoid,
    /// D and E as sets of elements of N.
    pub d_elements: Vec<usize>,
    pub e_elements: Vec<usize>,
    /// M → D.
    pub k: SemigroupHom,
    /// D → E, the inclusion (a semigroup hom sending 1 to φ(1)).
    pub j1: SemigroupHom,
    /// E → N, the inclusion.
    pub tau: SemigroupHom,
    /// f_!(1) = 1 ⊗_M φ(1)N.
    pub slice_object: RightAction,
    /// ∫_Ň f_!(1) and its projection to Ň.
    pub elements_category: FiniteCategory,
    pub projection: FunctorData,
    /// The objects (e̲, ∗⊗e) and (1̲, ∗⊗e).
    pub corner_object: usize,
    pub unit_object: usize,
    /// When some object of the elements category has every object as a
    /// retract: its endomorphism monoid and the hom to N read off the
    /// projection.
    pub slice_as_monoid: Option<(FiniteMonoid, SemigroupHom)>,
}

impl TcEtaleFactorization {
    pub fn d_equals_ede(&self, n: &FiniteMonoid, idem: usize) -> bool {
        let mut ede: Vec<usize> = self.e_elements.iter().map(|&x| n.mul(n.mul(idem, x), idem)).collect();
        ede.sort_unstable();
        ede.dedup();
        ede == self.d_elements
    }

    pub fn to_json(&self) -> Value {
        json!({
            "D": monoid_json(&self.d),
            "E": monoid_json(&self.e),
            "k": hom_json(&self.k),
            "j1": hom_json(&self.j1),
            "tau": hom_json(&self.tau),
            "slice_object": action_json(&self.slice_object),
            "elements_category": {
                "objects": self.elements_category.objects(),
                "arrows": self.elements_category.num_arrows(),
                "corner_object": self.elements_category.object(self.corner_object),
                "unit_object": self.elements_category.object(self.unit_object),
            },
            "slice_as_monoid": self.slice_as_monoid.as_ref().map(|(m, h)| json!({
                "monoid": monoid_json(m),
                "hom": hom_json(h),
            })),
        })
    }
}

pub fn factor_tc_etale(phi: &SemigroupHom) -> TcEtaleFactorization {
    let n = phi.codomain();
    let idem = phi.image_of_identity();
    let (corner, incl) = n.corner(idem).expect("φ(1) is idempotent");
    let in_corner = |x: usize| incl.as_slice().iter().position(|&y| y == x).expect("φ(M) ⊆ eNe");
    let image_in_corner: Vec<usize> = phi.image().into_iter().map(in_corner).collect();

    let d_closure = factorable_closure_with(&corner, &image_in_corner, Side::Right, false).closure;
    let d_elements: Vec<usize> = d_closure.iter().map(|&c| incl.apply(c)).collect();
    let e_elements = factorable_closure_with(n, &phi.image(), Side::Right, false).closure;

    let (d, d_incl) = n
        .subsemigroup_with_identity(format!("<{}>>{}", n.name(), corner.name()), &d_elements, idem)
        .expect("closure is a submonoid of eNe");
    let (e, tau) = n
        .submonoid(format!("<{}>>", n.name()), &e_elements)
        .expect("closure is a submonoid of N");
    let pos_in = |xs: &[usize], y: usize| xs.iter().position(|&z| z == y).expect("element of the closure");
    let k = SemigroupHom::new(
        phi.domain().clone(),
        d.clone(),
        phi.as_slice().iter().map(|&y| pos_in(d_incl.as_slice(), y)).collect(),
    )
    .expect("k is a corestriction of φ");
    let j1 = SemigroupHom::new(
        d.clone(),
        e.clone(),
        d_incl.as_slice().iter().map(|&y| pos_in(tau.as_slice(), y)).collect(),
    )
    .expect("D ⊆ E");

    let pushed = pushforward_terminal(phi);
    let slice_object = pushed.action.clone();
    let (presheaf, members) = slice_object.extend_to_completion();
    let (elements_category, projection) = presheaf.category_of_elements();
    let class_e = pushed.class_of_en(n, n.identity());
    let object_at = |obj: usize| {
        let offset: usize = members[..obj].iter().map(|m| m.len()).sum();
        offset + members[obj].iter().position(|&x| x == class_e).expect("∗⊗e is fixed by e")
    };
    let corner_object = object_at(completion_object(n, idem));
    let unit_object = object_at(completion_object(n, n.identity()));

    let slice_as_monoid = elements_category.find_collapsing_object().map(|col| {
        let (completion, _) = crate::category::idempotent_completion(n);
        let ends: Vec<usize> = elements_category
            .hom(col.object, col.object)
            .to_vec();
        let map = ends
            .iter()
            .map(|&f| completion.arrow(elements_category.arrow(f).tag).tag)
            .collect();
        let monoid = col.monoid.clone();
        let chi = SemigroupHom::new(monoid.clone(), n.clone(), map).expect("projection is functorial");
        (monoid, chi)
    });

    TcEtaleFactorization {
        d,
        e,
        d_elements,
        e_elements,
        k,
        j1,
        tau,
        slice_object,
        elements_category,
        projection,
        corner_object,
        unit_object,
        slice_as_monoid,
    }
}

/// The intermediate topos of a (pure, complete spread) factorization when it
/// is PSh(B) for a submonoid B ⊆ N.
#[derive(Clone, Debug)]
pub struct IntermediateMonoid {
    pub monoid: FiniteMonoid,
    /// The complete-spread part B → N.
    pub inclusion: SemigroupHom,
    /// The pure part as a (B, M)-biaction, when factoring a biaction.
    pub component: Option<BiAction>,
}

/// Left-closure chain of the hom case, in the orientation of φ.
#[derive(Clone, Debug)]
pub struct LeftClosureChain {
    /// Left-factorable closure of φ(M) in eNe and in N.
    pub d: FiniteMonoid,
    pub e: FiniteMonoid,
    pub k: SemigroupHom,
    pub j1: SemigroupHom,
    pub tau: SemigroupHom,
}

#[derive(Clone, Debug)]
pub struct PureCsFactorization {
    /// A ⊗_M 1 with its left N-action.
    pub components_object: LeftAction,
    /// ∫^N (A ⊗_M 1), over Ň in the hom case and over N otherwise.
    pub cos_elements_category: FiniteCategory,
    pub closures: Option<LeftClosureChain>,
    pub intermediate_as_monoid: Option<IntermediateMonoid>,
}

impl PureCsFactorization {
    pub fn to_json(&self) -> Value {
        let c = &self.components_object;
        json!({
            "components_object": {
                "monoid": c.monoid().name(),
                "carrier": c.underlying_set(),
                "action": c.monoid().elements().map(|n| (0..c.size()).map(|x| c.label(c.act(n, x)).to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            },
            "cos_elements_category": {
                "objects": self.cos_elements_category.objects(),
                "arrows": self.cos_elements_category.num_arrows(),
            },
            "closures": self.closures.as_ref().map(|ch| json!({
                "D": monoid_json(&ch.d),
                "E": monoid_json(&ch.e),
                "k": hom_json(&ch.k),
                "j1": hom_json(&ch.j1),
                "tau": hom_json(&ch.tau),
            })),
            "intermediate_as_monoid": self.intermediate_as_monoid.as_ref().map(|im| json!({
                "monoid": monoid_json(&im.monoid),
                "inclusion": hom_json(&im.inclusion),
                "component": im.component.as_ref().map(|b| b.underlying_set().to_vec()),
            })),
        })
    }
}

/// The (pure, complete spread) factorization of the morphism induced by φ,
/// obtained from the (terminal-connected, étale) factorization of φ^op.
pub fn factor_pure_cs_hom(phi: &SemigroupHom) -> PureCsFactorization {
    let dual = factor_tc_etale(&phi.opposite());
    let back = |h: &SemigroupHom| h.opposite();
    let closures = LeftClosureChain {
        d: dual.d.opposite(),
        e: dual.e.opposite(),
        k: back(&dual.k),
        j1: back(&dual.j1),
        tau: back(&dual.tau),
    };
    let intermediate_as_monoid = dual.slice_as_monoid.as_ref().map(|(m, chi)| IntermediateMonoid {
        monoid: m.opposite(),
        inclusion: back(chi),
        component: None,
    });
    PureCsFactorization {
        components_object: LeftAction::from_opposite(dual.slice_object.clone()),
        cos_elements_category: dual.elements_category.opposite(),
        closures: Some(closures),
        intermediate_as_monoid,
    }
}

/// The (pure, complete spread) factorization of the morphism induced by a
/// flat biaction, with the intermediate monoid when a strong generator of
/// A ⊗_M 1 exists.
pub fn factor_pure_cs_biact(a: &BiAction) -> Result<PureCsFactorization> {
    if let crate::actions::Flatness::Fails(why) = a.left().is_flat() {
        return Err(Error::NotFlat(format!("{why:?}")));
    }
    let n = a.left_monoid();
    let comps = a.right().components();
    let reps = comps.representatives();
    let labels: Vec<String> = comps
        .classes()
        .iter()
        .map(|c| format!("[{}]", c.iter().map(|&x| a.label(x)).collect::<Vec<_>>().join(",")))
        .collect();
    let components_object =
        LeftAction::from_fn(n.clone(), labels, |k, c| comps.class_of(a.act_left(k, reps[c])))?;
    let (cos_elements_category, _) = components_object.category_of_coelements();

    let intermediate_as_monoid = match components_object.strong_generators().first() {
        None => None,
        Some(&c) => {
            let stab = components_object.stabilizer(c);
            let (b, inclusion) = n.submonoid(format!("{}_{}", n.name(), components_object.label(c)), &stab)?;
            let members: Vec<usize> = (0..a.size()).filter(|&x| comps.class_of(x) == c).collect();
            let left = LeftAction::from_fn(b.clone(), members.iter().map(|&x| a.label(x).to_string()).collect(), |k, i| {
                let y = a.act_left(inclusion.apply(k), members[i]);
                members.binary_search(&y).expect("B preserves the component")
            })?;
            let right = a.right().restrict(&members)?;
            let component = BiAction::from_actions(left, right)?;
            Some(IntermediateMonoid {
                monoid: b,
                inclusion,
                component: Some(component),
            })
        }
    };
    Ok(PureCsFactorization {
        components_object,
        cos_elements_category,
        closures: None,
        intermediate_as_monoid,
    })
}

/// Whether N ⊗_B A′ recovers A.
pub fn recomposes(a: &BiAction, im: &IntermediateMonoid) -> Result<bool> {
    let Some(component) = &im.component else {
        return Ok(false);
    };
    let outer = hom_to_biact(&im.inclusion);
    Ok(compose_biacts(&outer, component)?.is_isomorphic(a))
}

/// For a strong generator x of X (least index), the stabilizer N_x with its
/// inclusion into N.
pub fn collapse_slice(n: &FiniteMonoid, x: &RightAction) -> Option<(FiniteMonoid, SemigroupHom)> {
    let &g = x.strong_generators().first()?;
    let stab = x.stabilizer(g);
    let name = if stab.len() == n.order() {
        n.name().to_string()
    } else {
        format!("{}_{}", n.name(), x.label(g))
    };
    Some(n.submonoid(name, &stab).expect("stabilizers are submonoids"))
}

/// Dual of [`collapse_slice`] for left N-sets.
pub fn collapse_cos_slice(n: &FiniteMonoid, y: &LeftAction) -> Option<(FiniteMonoid, SemigroupHom)> {
    let &g = y.strong_generators().first()?;
    let stab = y.stabilizer(g);
    let name = if stab.len() == n.order() {
        n.name().to_string()
    } else {
        format!("{}^{}", n.name(), y.label(g))
    };
    Some(n.submonoid(name, &stab).expect("stabilizers are submonoids"))
}

pub(crate) fn monoid_json(m: &FiniteMonoid) -> Value {
    json!({
        "name": m.name(),
        "elements": m.labels(),
        "identity": m.label(m.identity()),
        "table": m.elements().map(|a| m.elements().map(|b| m.label(m.mul(a, b)).to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

pub(crate) fn hom_json(h: &SemigroupHom) -> Value {
    let map: serde_json::Map<String, Value> = h
        .label_pairs()
        .into_iter()
        .map(|(x, y)| (x, Value::String(y)))
        .collect();
    json!({
        "domain": h.domain().name(),
        "codomain": h.codomain().name(),
        "map": map,
    })
}

pub(crate) fn action_json(x: &RightAction) -> Value {
    let m = x.monoid();
    let action: serde_json::Map<String, Value> = (0..x.size())
        .map(|p| {
            let row: serde_json::Map<String, Value> = m
                .elements()
                .map(|k| (m.label(k).to_string(), Value::String(x.label(x.act(p, k)).to_string())))
                .collect();
            (x.label(p).to_string(), Value::Object(row))
        })
        .collect();
    json!({"monoid": m.name(), "side": "right", "carrier": x.underlying_set(), "action": action})
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{classify_hom, Property};
    use crate::fixtures;

    #[test]
    fn three_part_of_q_a() {
        let f = factor_three(&fixtures::q_a());
        assert_eq!(f.pi.codomain().order(), 2);
        assert!(f.psi.is_injective() && f.psi.is_surjective());
        assert_eq!(f.iota.as_slice(), &[0, 1]);
        assert_eq!(f.composite().as_slice(), fixtures::q_a().as_slice());
    }

    #[test]
    fn three_part_of_iota_b() {
        let f = factor_three(&fixtures::iota_b());
        assert_eq!(f.pi.codomain().order(), 1);
        assert_eq!(f.psi.codomain().order(), 1);
        assert_eq!(f.iota.as_slice(), &[1]);
        assert!(classify_hom(&f.iota).is(Property::Inclusion));
    }

    #[test]
    fn tc_etale_of_incl_c2() {
        let f = factor_tc_etale(&fixtures::incl_c2());
        assert_eq!(f.d.order(), 1);
        assert_eq!(f.e.order(), 1);
        assert!(f.slice_object.is_isomorphic(&RightAction::regular(&fixtures::c2())));
        let (m, chi) = f.slice_as_monoid.unwrap();
        assert_eq!(m.order(), 1);
        assert!(classify_hom(&chi).is(Property::Etale));
    }

    #[test]
    fn tc_etale_of_iota_b() {
        let f = factor_tc_etale(&fixtures::iota_b());
        assert_eq!(f.e.order(), 2);
        assert_eq!(f.slice_object.size(), 1);
        assert!(f.d_equals_ede(&fixtures::b2(), 1));
        let (m, chi) = f.slice_as_monoid.unwrap();
        assert!(m.is_isomorphic(&fixtures::b2()));
        assert!(chi.is_monoid_hom());
    }

    #[test]
    fn pure_cs_of_psi_b() {
        let f = factor_pure_cs_hom(&fixtures::psi_b());
        let ch = f.closures.unwrap();
        assert_eq!(ch.e.order(), 3);
        assert_eq!(f.components_object.size(), 1);
    }

    #[test]
    fn pure_cs_biaction_of_incl_c2() {
        let a = hom_to_biact(&fixtures::incl_c2());
        let f = factor_pure_cs_biact(&a).unwrap();
        assert_eq!(f.components_object.size(), 2);
        let im = f.intermediate_as_monoid.unwrap();
        assert_eq!(im.monoid.order(), 1);
        assert!(recomposes(&a, &im).unwrap());
    }

    #[test]
    fn pure_cs_biaction_without_strong_generator() {
        let a = fixtures::b2_unit_biaction();
        let f = factor_pure_cs_biact(&a).unwrap();
        assert_eq!(f.components_object.size(), 2);
        assert!(f.intermediate_as_monoid.is_none());
    }

    #[test]
    fn collapse_examples() {
        let c2 = fixtures::c2();
        let (m, h) = collapse_slice(&c2, &RightAction::regular(&c2)).unwrap();
        assert_eq!(m.order(), 1);
        assert_eq!(h.as_slice(), fixtures::incl_c2().as_slice());
        let b2 = fixtures::b2();
        assert!(collapse_slice(&b2, &RightAction::regular(&b2)).is_none());
        assert!(collapse_cos_slice(&b2, &LeftAction::regular(&b2)).is_none());
        let (m, _) = collapse_slice(&b2, &RightAction::terminal(&b2)).unwrap();
        assert_eq!(m.order(), 2);
        let (m, _) = collapse_cos_slice(&c2, &LeftAction::regular(&c2)).unwrap();
        assert_eq!(m.order(), 1);
    }
}

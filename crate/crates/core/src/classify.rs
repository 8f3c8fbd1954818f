//! Deciding properties of the geometric morphism PSh(M) → PSh(N) induced by
//! a semigroup homomorphism M → N or by a flat (N, M)-biaction.

use std::collections::{BTreeSet, HashSet};
use std::time::Instant;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use serde_json::{json, Value};

use crate::actions::{BiAction, LeftAction, RightAction};
use crate::category::lift_hom_to_completion;
use crate::closures::factorable_closure_with;
use crate::dsu::{saturate_from, Dsu, Partition};
use crate::equivariant::MapSearch;
use crate::actions::Acts;
use crate::error::{Error, Result};
use crate::hom::SemigroupHom;
use crate::monoid::{FiniteMonoid, Side};
use crate::tensor::{hom_to_biact, tensor, tensor_biact};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    Surjection,
    Inclusion,
    Injection,
    Hyperconnected,
    Localic,
    TerminalConnected,
    Etale,
    Pure,
    CompleteSpread,
    Spread,
    LocallyConstantEtale,
    Dominant,
    Essential,
}

impl Property {
    pub const ALL: [Property; 13] = [
        Property::Surjection,
        Property::Inclusion,
        Property::Injection,
        Property::Hyperconnected,
        Property::Localic,
        Property::TerminalConnected,
        Property::Etale,
        Property::Pure,
        Property::CompleteSpread,
        Property::Spread,
        Property::LocallyConstantEtale,
        Property::Dominant,
        Property::Essential,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Surjection => "surjection",
            Property::Inclusion => "inclusion",
            Property::Injection => "injection",
            Property::Hyperconnected => "hyperconnected",
            Property::Localic => "localic",
            Property::TerminalConnected => "terminal_connected",
            Property::Etale => "etale",
            Property::Pure => "pure",
            Property::CompleteSpread => "complete_spread",
            Property::Spread => "spread",
            Property::LocallyConstantEtale => "locally_constant_etale",
            Property::Dominant => "dominant",
            Property::Essential => "essential",
        }
    }
}

impl std::fmt::Display for Property {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    /// The search needed to decide exceeded a configured bound.
    Undecided,
}

impl Verdict {
    pub fn as_bool(self) -> Option<bool> {
        match self {
            Verdict::Yes => Some(true),
            Verdict::No => Some(false),
            Verdict::Undecided => None,
        }
    }
}

impl From<bool> for Verdict {
    fn from(b: bool) -> Self {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Verdict::Yes => s.serialize_bool(true),
            Verdict::No => s.serialize_bool(false),
            Verdict::Undecided => s.serialize_str("undecided"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Entry {
    pub value: Verdict,
    pub method: String,
    pub certificate: Value,
}

impl Entry {
    fn new(value: impl Into<Verdict>, method: &str, certificate: Value) -> Entry {
        Entry {
            value: value.into(),
            method: method.to_string(),
            certificate,
        }
    }
}

/// Every property of one morphism, each with the criterion used and a
/// witness or counterexample.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassificationReport {
    pub source: String,
    entries: Vec<Entry>,
}

impl ClassificationReport {
    fn from_entries(source: String, mut build: impl FnMut(Property) -> Entry) -> Self {
        ClassificationReport {
            source,
            entries: Property::ALL.iter().map(|&p| build(p)).collect(),
        }
    }

    pub fn entry(&self, p: Property) -> &Entry {
        &self.entries[p as usize]
    }

    pub fn value(&self, p: Property) -> Verdict {
        self.entries[p as usize].value
    }

    /// The decided value; panics on undecided.
    pub fn is(&self, p: Property) -> bool {
        self.value(p)
            .as_bool()
            .unwrap_or_else(|| panic!("{p} is undecided"))
    }

    pub fn undecided(&self) -> Vec<Property> {
        Property::ALL
            .iter()
            .copied()
            .filter(|&p| self.value(p) == Verdict::Undecided)
            .collect()
    }

    /// Implications that hold between the properties; returns the first
    /// violated one among decided values.
    pub fn check_implications(&self) -> std::result::Result<(), String> {
        use Property::*;
        let v = |p| self.value(p).as_bool();
        let implies = |a: Property, b: Property| -> std::result::Result<(), String> {
            match (v(a), v(b)) {
                (Some(true), Some(false)) => Err(format!("{a} holds but {b} fails")),
                _ => Ok(()),
            }
        };
        implies(Hyperconnected, Surjection)?;
        implies(Inclusion, Injection)?;
        implies(Injection, Spread)?;
        implies(Spread, Localic)?;
        implies(Etale, Surjection)?;
        implies(Etale, Essential)?;
        implies(CompleteSpread, Essential)?;
        implies(LocallyConstantEtale, Etale)?;
        implies(LocallyConstantEtale, CompleteSpread)?;
        if let (Some(a), Some(b), Some(c)) = (v(Etale), v(CompleteSpread), v(LocallyConstantEtale)) {
            if (a && b) != c {
                return Err("locally constant étale differs from étale ∧ complete spread".into());
            }
        }
        if v(Dominant) != Some(true) {
            return Err("dominance must hold".into());
        }
        Ok(())
    }
}

impl Serialize for ClassificationReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Props<'a>(&'a [Entry]);
        impl Serialize for Props<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut map = s.serialize_map(Some(self.0.len()))?;
                for (p, e) in Property::ALL.iter().zip(self.0) {
                    map.serialize_entry(p.name(), e)?;
                }
                map.end()
            }
        }
        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry("source", &self.source)?;
        map.serialize_entry("properties", &Props(&self.entries))?;
        map.end()
    }
}

impl std::fmt::Display for ClassificationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "{}", self.source)?;
        for (p, e) in Property::ALL.iter().zip(&self.entries) {
            let v = match e.value {
                Verdict::Yes => "yes",
                Verdict::No => "no",
                Verdict::Undecided => "undecided",
            };
            writeln!(f, "  {:<24}{:<11}{}", p.name(), v, e.method)?;
        }
        Ok(())
    }
}

fn labels(m: &FiniteMonoid, xs: &[usize]) -> Vec<String> {
    m.labels_of(xs)
}

/// Whether φ's restriction ψ: M → eNe satisfies the étale conditions
/// (`side = Right`) or the complete-spread conditions (`side = Left`),
/// together with the corner condition.
struct CornerConditions {
    morita: bool,
    injective: bool,
    factorable: bool,
    translates: bool,
    certificate: Value,
}

impl CornerConditions {
    fn holds(&self) -> bool {
        self.morita && self.injective && self.factorable && self.translates
    }

    fn compute(phi: &SemigroupHom, side: Side) -> CornerConditions {
        let n = phi.codomain();
        let e = phi.image_of_identity();
        let morita = n.is_morita_corner(e).expect("φ(1) is idempotent");
        let (corner, incl) = n.corner(e).expect("φ(1) is idempotent");
        let to_corner = |x: usize| incl.as_slice().iter().position(|&y| y == x).expect("φ(M) ⊆ eNe");
        let image: Vec<usize> = {
            let s: BTreeSet<usize> = phi.as_slice().iter().map(|&x| to_corner(x)).collect();
            s.into_iter().collect()
        };
        let injective = phi.is_injective();
        let closure = factorable_closure_with(&corner, &image, side, false).closure;
        let factorable = closure == image;
        let units = corner.invertibles(side);
        let mut failing_translate = None;
        for x in corner.elements() {
            let ok = units.iter().any(|&u| {
                let p = match side {
                    Side::Right => corner.mul(x, u),
                    Side::Left => corner.mul(u, x),
                };
                image.binary_search(&p).is_ok()
            });
            if !ok {
                failing_translate = Some(x);
                break;
            }
        }
        let translates = failing_translate.is_none();
        let certificate = json!({
            "corner": labels(&corner, &corner.elements().collect::<Vec<_>>()),
            "corner_is_morita": morita.holds,
            "morita_failing_idempotent": morita.failing.map(|d| n.label(d).to_string()),
            "injective": injective,
            "image": labels(&corner, &image),
            "factorable_closure": labels(&corner, &closure),
            "units": labels(&corner, &units),
            "untranslatable": failing_translate.map(|x| corner.label(x).to_string()),
        });
        CornerConditions {
            morita: morita.holds,
            injective,
            factorable,
            translates,
            certificate,
        }
    }
}

/// Decides every property for the essential morphism induced by φ.
pub fn classify_hom(phi: &SemigroupHom) -> ClassificationReport {
    let n = phi.codomain();
    let m = phi.domain();
    let e = phi.image_of_identity();
    let lifted = lift_hom_to_completion(phi);
    let fp = lifted.properties();
    let tgt = lifted.target();
    let src = lifted.source();
    let functor_cert = json!({
        "full": fp.full,
        "faithful": fp.faithful,
        "essentially_surjective_up_to_retracts": fp.ess_surj_retracts,
        "not_full": fp.not_full.map(|(a, b, g)| json!({
            "from": src.object(a), "to": src.object(b), "missing": tgt.arrow(g).label,
        })),
        "not_faithful": fp.not_faithful.map(|(f1, f2)| json!([src.arrow(f1).label, src.arrow(f2).label])),
        "uncovered_object": fp.not_covered.map(|d| tgt.object(d).to_string()),
    });

    let morita = n.is_morita_corner(e).expect("φ(1) is idempotent");
    let surjection = phi.is_monoid_hom() || morita.holds;
    debug_assert_eq!(surjection, fp.ess_surj_retracts);
    let surj_cert = json!({
        "monoid_hom": phi.is_monoid_hom(),
        "e": n.label(e),
        "retracts": morita.witnesses.iter().map(|w| json!({
            "d": n.label(w.d), "r": n.label(w.r), "s": n.label(w.s),
        })).collect::<Vec<_>>(),
        "failing_idempotent": morita.failing.map(|d| n.label(d).to_string()),
    });

    let image = phi.image();
    let right = factorable_closure_with(n, &image, Side::Right, false);
    let left = factorable_closure_with(n, &image, Side::Left, false);
    let closure_cert = |c: &[usize]| {
        let missing: Vec<usize> = n.elements().filter(|x| c.binary_search(x).is_err()).collect();
        json!({"image": labels(n, &image), "closure": labels(n, c), "missing": labels(n, &missing)})
    };

    let etale = CornerConditions::compute(phi, Side::Right);
    let cs = CornerConditions::compute(phi, Side::Left);
    let a = hom_to_biact(phi);
    let regular_retract = a.right().find_regular_retract();
    let spread_witness = component_retract(a.right());
    let spread_cert = json!({
        "component_retract": retract_json(&a, m, spread_witness.as_ref()),
        "injective_and_left_factorable_in_corner": cs.injective && cs.factorable,
    });
    let injection_cert = retract_json(&a, m, regular_retract.as_ref().map(|r| (r.point, r.retraction.clone())).as_ref());

    let source = format!("{phi}");
    ClassificationReport::from_entries(source, |p| match p {
        Property::Surjection => Entry::new(surjection, "monoid hom or Morita corner", surj_cert.clone()),
        Property::Inclusion => Entry::new(fp.full && fp.faithful, "lifted functor full and faithful", functor_cert.clone()),
        Property::Injection => Entry::new(
            regular_retract.is_some(),
            "M is a retract of Nφ(1) as right M-set",
            injection_cert.clone(),
        ),
        Property::Hyperconnected => Entry::new(
            fp.full && fp.ess_surj_retracts,
            "lifted functor full and essentially surjective up to retracts",
            functor_cert.clone(),
        ),
        Property::Localic => Entry::new(fp.faithful, "lifted functor faithful", functor_cert.clone()),
        Property::TerminalConnected => Entry::new(
            right.is_everything(),
            "right-factorable closure of the image is N",
            closure_cert(&right.closure),
        ),
        Property::Pure => Entry::new(left.is_everything(), "left-factorable closure of the image is N", closure_cert(&left.closure)),
        Property::Etale => Entry::new(
            etale.holds(),
            "Morita corner, injective, right-factorable in eNe, right-unit translates",
            etale.certificate.clone(),
        ),
        Property::CompleteSpread => Entry::new(
            cs.holds(),
            "Morita corner, injective, left-factorable in eNe, left-unit translates",
            cs.certificate.clone(),
        ),
        Property::Spread => Entry::new(
            spread_witness.is_some(),
            "M is a retract of a component of Nφ(1)",
            spread_cert.clone(),
        ),
        Property::LocallyConstantEtale => Entry::new(
            etale.holds() && cs.holds(),
            "étale and complete spread",
            json!({"etale": etale.holds(), "complete_spread": cs.holds()}),
        ),
        Property::Dominant => Entry::new(true, "always", Value::Null),
        Property::Essential => Entry::new(true, "induced by a semigroup homomorphism", json!({"e": n.label(e)})),
    })
}

/// Bounds for the exponential searches of [`classify_biact`].
#[derive(Clone, Debug)]
pub struct SearchLimits {
    /// Largest |N| for which right congruences are enumerated.
    pub congruence_order_cap: usize,
    /// Largest number of sub-acts enumerated.
    pub sub_act_cap: usize,
    pub deadline: Option<Instant>,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            congruence_order_cap: 5,
            sub_act_cap: 4096,
            deadline: None,
        }
    }
}

impl SearchLimits {
    fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }
}

/// The free right N-set on `k` generators: `k` copies of N, element
/// `(i, n)` encoded as `i * |N| + n`.
pub fn free_right_action(n: &FiniteMonoid, k: usize) -> RightAction {
    let order = n.order();
    let labels = (0..k * order)
        .map(|p| {
            if k == 1 {
                n.label(p).to_string()
            } else {
                format!("{}_{}", n.label(p % order), p / order + 1)
            }
        })
        .collect();
    RightAction::from_fn(n.clone(), labels, |p, x| (p / order) * order + n.mul(p % order, x))
        .expect("free action")
}

/// All right congruences on the free N-set on `generators` generators,
/// sorted. Each is a partition of the carrier of [`free_right_action`].
pub fn enumerate_right_congruences(n: &FiniteMonoid, generators: usize, cap: usize) -> Result<Vec<Partition>> {
    enumerate_right_congruences_until(n, generators, cap, None)
}

fn enumerate_right_congruences_until(
    n: &FiniteMonoid,
    generators: usize,
    cap: usize,
    deadline: Option<Instant>,
) -> Result<Vec<Partition>> {
    if n.order() > cap {
        return Err(Error::SizeCap {
            what: "right congruence enumeration (monoid order)".into(),
            limit: cap,
            actual: n.order(),
        });
    }
    let free = free_right_action(n, generators);
    let ops = free.operators();
    let size = free.size();
    let mut seen: HashSet<Partition> = HashSet::new();
    let start = Partition::discrete(size);
    seen.insert(start.clone());
    let mut queue = vec![start];
    let mut i = 0;
    while i < queue.len() {
        if deadline.is_some_and(|d| Instant::now() >= d) {
            return Err(Error::SizeCap {
                what: "right congruence enumeration (deadline)".into(),
                limit: queue.len(),
                actual: queue.len() + 1,
            });
        }
        let current = queue[i].clone();
        i += 1;
        let reps = current.representatives();
        for a in 0..reps.len() {
            for b in a + 1..reps.len() {
                let mut dsu = Dsu::new(size);
                for x in 0..size {
                    dsu.union(x, reps[current.class_of(x)]);
                }
                let next = saturate_from(dsu, &[(reps[a], reps[b])], &ops);
                if seen.insert(next.clone()) {
                    queue.push(next);
                }
            }
        }
    }
    queue.sort();
    Ok(queue)
}

/// Decides every property for the morphism induced by a flat biaction.
pub fn classify_biact(a: &BiAction, limits: &SearchLimits) -> Result<ClassificationReport> {
    let flat = a.left().is_flat();
    if let crate::actions::Flatness::Fails(why) = flat {
        return Err(Error::NotFlat(format!("{why:?}")));
    }
    let n = a.left_monoid();
    let m = a.right_monoid();
    let right = a.right();

    // pure, injection, spread, localic
    let comps = right.components();
    let pure = comps.num_classes() == 1;
    let pure_cert = json!({"components": comps.classes().iter().map(|c| c.iter().map(|&x| a.label(x)).collect::<Vec<_>>()).collect::<Vec<_>>()});

    let retract = right.find_regular_retract();
    let injection_cert = retract_json(a, m, retract.as_ref().map(|r| (r.point, r.retraction.clone())).as_ref());
    let spread_witness = component_retract(right);
    let spread_cert = retract_json(a, m, spread_witness.as_ref());

    // any retract of M onto a sub-act Y restricts to the cyclic sub-act of
    // s(1), on which the orbit map is a bijection
    let free_point = (0..a.size()).find(|&x| {
        let orbit = right.orbit_map(x);
        orbit.iter().collect::<HashSet<_>>().len() == orbit.len()
    });
    let localic_cert = json!({"point_with_free_orbit": free_point.map(|x| a.label(x).to_string())});

    // essential: A ≅ Nφ(1) for a recovered φ
    let recovered = recover_hom(a)?;
    let essential_cert = match &recovered {
        Some((phi, iso)) => json!({
            "e": n.label(phi.image_of_identity()),
            "hom": phi.label_pairs(),
            "iso": iso.iter().map(|&x| a.label(x)).collect::<Vec<_>>(),
        }),
        None => json!({"recovered_hom": null}),
    };
    let hom_report = recovered.as_ref().map(|(phi, _)| classify_hom(phi));

    // surjection, hyperconnected, terminal-connected
    let within_cap = n.order() <= limits.congruence_order_cap && !limits.expired();
    let (surjection, surj_method, surj_cert) = if within_cap {
        match surjection_check(a, limits) {
            Ok((v, c)) => (Verdict::from(v), "x⊗a = y⊗a for all a forces x = y on 2-generated N-sets", c),
            Err(e) if e.is_cap() => (Verdict::Undecided, "search bound exceeded", json!({"reason": e.to_string()})),
            Err(e) => return Err(e),
        }
    } else {
        fallback(&hom_report, Property::Surjection, limits, n)
    };
    let (hyper, hyper_method, hyper_cert) = match surjection {
        Verdict::No => (Verdict::No, "not a surjection", Value::Null),
        Verdict::Undecided => match &hom_report {
            Some(h) => (h.value(Property::Hyperconnected), "via the recovered homomorphism", h.entry(Property::Hyperconnected).certificate.clone()),
            None => (Verdict::Undecided, "surjection undecided", Value::Null),
        },
        Verdict::Yes => match sub_acts_are_ideal_images(a, limits) {
            Ok((v, c)) => (Verdict::from(v), "every sub-M-set of A is I·A for a right ideal I", c),
            Err(e) if e.is_cap() => (Verdict::Undecided, "search bound exceeded", json!({"reason": e.to_string()})),
            Err(e) => return Err(e),
        },
    };
    let (tc, tc_method, tc_cert) = if within_cap {
        match terminal_connected_check(a, limits) {
            Ok((v, c)) => (Verdict::from(v), "fixed points of X⊗A come from fixed points of X for principal X", c),
            Err(e) if e.is_cap() => (Verdict::Undecided, "search bound exceeded", json!({"reason": e.to_string()})),
            Err(e) => return Err(e),
        }
    } else {
        fallback(&hom_report, Property::TerminalConnected, limits, n)
    };

    let (inclusion, incl_method, incl_cert) = if retract.is_none() {
        (Verdict::No, "not an injection", Value::Null)
    } else if let Some(h) = &hom_report {
        (h.value(Property::Inclusion), "via the recovered homomorphism", h.entry(Property::Inclusion).certificate.clone())
    } else {
        match counit_counterexample(a, limits) {
            Ok(Some(c)) => (Verdict::No, "counit Hom_M(A, X) ⊗_N A → X not bijective", c),
            Ok(None) => (
                Verdict::Undecided,
                "counit bijective on every principal M-set; no complete criterion",
                Value::Null,
            ),
            Err(e) if e.is_cap() => (Verdict::Undecided, "search bound exceeded", json!({"reason": e.to_string()})),
            Err(e) => return Err(e),
        }
    };

    let from_hom = |p: Property| -> (Verdict, &'static str, Value) {
        match &hom_report {
            Some(h) => (h.value(p), "via the recovered homomorphism", h.entry(p).certificate.clone()),
            None => (Verdict::No, "not essential", Value::Null),
        }
    };
    let (etale, etale_method, etale_cert) = from_hom(Property::Etale);
    let (cs, cs_method, cs_cert) = from_hom(Property::CompleteSpread);
    let lc = match (etale, cs) {
        (Verdict::Yes, Verdict::Yes) => Verdict::Yes,
        (Verdict::Undecided, _) | (_, Verdict::Undecided) => Verdict::Undecided,
        _ => Verdict::No,
    };

    let source = format!(
        "biaction of ({}, {}) on {{{}}}",
        n.name(),
        m.name(),
        a.underlying_set().join(", ")
    );
    Ok(ClassificationReport::from_entries(source, |p| match p {
        Property::Surjection => Entry::new(surjection, surj_method, surj_cert.clone()),
        Property::Inclusion => Entry::new(inclusion, incl_method, incl_cert.clone()),
        Property::Injection => Entry::new(retract.is_some(), "M is a retract of A", injection_cert.clone()),
        Property::Hyperconnected => Entry::new(hyper, hyper_method, hyper_cert.clone()),
        Property::Localic => Entry::new(free_point.is_some(), "M is a retract of a sub-M-set of A", localic_cert.clone()),
        Property::TerminalConnected => Entry::new(tc, tc_method, tc_cert.clone()),
        Property::Etale => Entry::new(etale, etale_method, etale_cert.clone()),
        Property::Pure => Entry::new(pure, "A is connected as a right M-set", pure_cert.clone()),
        Property::CompleteSpread => Entry::new(cs, cs_method, cs_cert.clone()),
        Property::Spread => Entry::new(spread_witness.is_some(), "M is a retract of a component of A", spread_cert.clone()),
        Property::LocallyConstantEtale => Entry::new(lc, "étale and complete spread", json!({"etale": etale, "complete_spread": cs})),
        Property::Dominant => Entry::new(true, "always", Value::Null),
        Property::Essential => Entry::new(recovered.is_some(), "A ≅ Ne for an idempotent e", essential_cert.clone()),
    }))
}

fn retract_json(a: &BiAction, m: &FiniteMonoid, w: Option<&(usize, Vec<usize>)>) -> Value {
    match w {
        Some((p, r)) => json!({"point": a.label(*p), "retraction": r.iter().map(|&x| m.label(x)).collect::<Vec<_>>()}),
        None => Value::Null,
    }
}

/// A point of some component of `x` with a regular retract onto that
/// component, and the retraction on the component's elements (in
/// increasing order).
fn component_retract(x: &RightAction) -> Option<(usize, Vec<usize>)> {
    x.components().classes().into_iter().find_map(|comp| {
        let sub = x.restrict(&comp).expect("components are closed");
        sub.find_regular_retract().map(|r| (comp[r.point], r.retraction))
    })
}

/// Hom_M(A, X) as a right N-set, with the maps listed as vectors.
pub fn direct_image(a: &BiAction, x: &RightAction, cap: usize) -> Result<(RightAction, Vec<Vec<usize>>)> {
    let source = a.right().op_set();
    let target = x.op_set();
    let search = MapSearch::new(&source, &target);
    let mut maps = Vec::new();
    let mut over = false;
    search.for_each(|g| {
        if maps.len() >= cap {
            over = true;
            return std::ops::ControlFlow::Break(());
        }
        maps.push(g.to_vec());
        std::ops::ControlFlow::Continue(())
    });
    if over {
        return Err(Error::SizeCap {
            what: "direct image".into(),
            limit: cap,
            actual: cap + 1,
        });
    }
    let index: std::collections::HashMap<Vec<usize>, usize> =
        maps.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
    let n = a.left_monoid();
    let labels = (0..maps.len())
        .map(|i| format!("[{}]", maps[i].iter().map(|&y| x.label(y)).collect::<Vec<_>>().join(",")))
        .collect();
    let action = RightAction::from_fn(n.clone(), labels, |i, k| {
        let moved: Vec<usize> = (0..a.size()).map(|v| maps[i][a.act_left(k, v)]).collect();
        index[&moved]
    })?;
    Ok((action, maps))
}

/// Whether the counit f^*f_*X → X is a bijection.
pub fn counit_is_bijective(a: &BiAction, x: &RightAction, cap: usize) -> Result<bool> {
    let (hom, maps) = direct_image(a, x, cap)?;
    let t = tensor(&hom, a.left())?;
    let mut image = vec![None; t.num_classes()];
    for (i, g) in maps.iter().enumerate() {
        for (v, &gv) in g.iter().enumerate() {
            let c = t.pairing(i, v);
            match image[c] {
                None => image[c] = Some(gv),
                Some(y) if y != gv => unreachable!("counit is well defined"),
                _ => {}
            }
        }
    }
    let values: HashSet<usize> = image.iter().flatten().copied().collect();
    Ok(t.num_classes() == x.size() && values.len() == x.size())
}

/// A principal right M-set on which the counit of f is not bijective.
fn counit_counterexample(a: &BiAction, limits: &SearchLimits) -> Result<Option<Value>> {
    let m = a.right_monoid();
    let free = free_right_action(m, 1);
    for rho in enumerate_right_congruences_until(m, 1, limits.congruence_order_cap, limits.deadline)? {
        let x = free.quotient(&rho)?;
        if !counit_is_bijective(a, &x, limits.sub_act_cap)? {
            return Ok(Some(json!({
                "congruence": rho.classes().iter().map(|c| c.iter().map(|&p| free.label(p)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            })));
        }
    }
    Ok(None)
}

fn fallback(
    hom_report: &Option<ClassificationReport>,
    p: Property,
    limits: &SearchLimits,
    n: &FiniteMonoid,
) -> (Verdict, &'static str, Value) {
    match hom_report {
        Some(h) => (h.value(p), "via the recovered homomorphism", h.entry(p).certificate.clone()),
        None => (
            Verdict::Undecided,
            "right congruence enumeration beyond bound",
            json!({"order": n.order(), "cap": limits.congruence_order_cap, "deadline_passed": limits.expired()}),
        ),
    }
}

/// Finds an idempotent e and an isomorphism of left N-sets ι: Ne → A, and
/// the hom φ: M → N with ι(x)·m = ι(x·φ(m)). Returns φ and ι (as images of
/// the elements of Ne in increasing order).
pub fn recover_hom(a: &BiAction) -> Result<Option<(SemigroupHom, Vec<usize>)>> {
    let n = a.left_monoid();
    let m = a.right_monoid();
    let target = a.left().op_set();
    for e in n.idempotents() {
        let ne: Vec<usize> = n.elements().filter(|&x| n.mul(x, e) == x).collect();
        if ne.len() != a.size() {
            continue;
        }
        let pos = |y: usize| ne.binary_search(&y).expect("Ne is a left ideal");
        let left = LeftAction::from_fn(n.clone(), n.labels_of(&ne), |x, i| pos(n.mul(x, ne[i])))?;
        let Some(iota) = MapSearch::new(&left.op_set(), &target).injective(true).first() else {
            continue;
        };
        let mut inverse = vec![0; a.size()];
        for (i, &x) in iota.iter().enumerate() {
            inverse[x] = i;
        }
        let e_pt = iota[pos(e)];
        let map: Vec<usize> = m.elements().map(|k| ne[inverse[a.act_right(e_pt, k)]]).collect();
        let phi = SemigroupHom::new(m.clone(), n.clone(), map)?;
        let rebuilt = hom_to_biact(&phi);
        debug_assert!(rebuilt.op_set().is_equivariant(&a.op_set(), &iota));
        if !rebuilt.op_set().is_equivariant(&a.op_set(), &iota) {
            return Err(Error::ActionAxiom("recovered hom does not reproduce the biaction".into()));
        }
        return Ok(Some((phi, iota)));
    }
    Ok(None)
}

fn surjection_check(a: &BiAction, limits: &SearchLimits) -> Result<(bool, Value)> {
    let n = a.left_monoid();
    let free = free_right_action(n, 2);
    let order = n.order();
    let (x, y) = (n.identity(), order + n.identity());
    for rho in enumerate_right_congruences_until(n, 2, limits.congruence_order_cap, limits.deadline)? {
        if rho.same(x, y) {
            continue;
        }
        let quotient = free.quotient(&rho)?;
        let t = tensor(&quotient, a.left())?;
        let (cx, cy) = (rho.class_of(x), rho.class_of(y));
        if (0..a.size()).all(|v| t.pairing(cx, v) == t.pairing(cy, v)) {
            return Ok((
                false,
                json!({
                    "congruence": rho.classes().iter().map(|c| c.iter().map(|&p| free.label(p)).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    "x": free.label(x),
                    "y": free.label(y),
                }),
            ));
        }
    }
    Ok((true, Value::Null))
}

fn sub_acts_are_ideal_images(a: &BiAction, limits: &SearchLimits) -> Result<(bool, Value)> {
    let n = a.left_monoid();
    let right = a.right();
    // images of right ideals I are the unions of the sets n·A
    let generators: Vec<Vec<usize>> = n
        .elements()
        .map(|x| {
            let s: BTreeSet<usize> = (0..a.size()).map(|v| a.act_left(x, v)).collect();
            s.into_iter().collect()
        })
        .collect();
    let mut images: HashSet<Vec<usize>> = HashSet::new();
    images.insert(Vec::new());
    let mut frontier = vec![Vec::new()];
    while let Some(cur) = frontier.pop() {
        for g in &generators {
            let u: BTreeSet<usize> = cur.iter().chain(g).copied().collect();
            let u: Vec<usize> = u.into_iter().collect();
            if images.insert(u.clone()) {
                if images.len() > limits.sub_act_cap {
                    return Err(Error::SizeCap {
                        what: "ideal images".into(),
                        limit: limits.sub_act_cap,
                        actual: images.len(),
                    });
                }
                frontier.push(u);
            }
        }
    }
    for sub in right.sub_acts(limits.sub_act_cap)? {
        if !images.contains(&sub) {
            return Ok((false, json!({"sub_act": sub.iter().map(|&x| a.label(x)).collect::<Vec<_>>()})));
        }
    }
    Ok((true, Value::Null))
}

fn terminal_connected_check(a: &BiAction, limits: &SearchLimits) -> Result<(bool, Value)> {
    let n = a.left_monoid();
    let free = free_right_action(n, 1);
    for rho in enumerate_right_congruences_until(n, 1, limits.congruence_order_cap, limits.deadline)? {
        let x = free.quotient(&rho)?;
        let t = tensor_biact(&x, a)?;
        let induced = t.induced_action.as_ref().expect("biaction tensor");
        let fixed: BTreeSet<usize> = induced.fixed_points().into_iter().collect();
        let from_fixed: BTreeSet<usize> = x
            .fixed_points()
            .into_iter()
            .flat_map(|p| (0..a.size()).map(move |v| (p, v)))
            .map(|(p, v)| t.pairing(p, v))
            .collect();
        if fixed != from_fixed {
            return Ok((
                false,
                json!({
                    "congruence": rho.classes().iter().map(|c| c.iter().map(|&p| free.label(p)).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    "fixed_points": fixed.iter().map(|&c| t.labels[c].clone()).collect::<Vec<_>>(),
                    "from_fixed_points": from_fixed.iter().map(|&c| t.labels[c].clone()).collect::<Vec<_>>(),
                }),
            ));
        }
    }
    Ok((true, Value::Null))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn congruence_counts() {
        assert_eq!(enumerate_right_congruences(&fixtures::t1(), 1, 5).unwrap().len(), 1);
        assert_eq!(enumerate_right_congruences(&fixtures::c2(), 1, 5).unwrap().len(), 2);
        assert_eq!(enumerate_right_congruences(&fixtures::b2(), 1, 5).unwrap().len(), 2);
        assert!(enumerate_right_congruences(&fixtures::c4_zero(), 1, 4).unwrap_err().is_cap());
    }

    #[test]
    fn incl_c2_report() {
        let r = classify_hom(&fixtures::incl_c2());
        for (p, v) in [
            (Property::Etale, true),
            (Property::CompleteSpread, true),
            (Property::LocallyConstantEtale, true),
            (Property::TerminalConnected, false),
            (Property::Pure, false),
            (Property::Localic, true),
            (Property::Inclusion, false),
            (Property::Surjection, true),
        ] {
            assert_eq!(r.is(p), v, "{p}");
        }
        r.check_implications().unwrap();
    }

    #[test]
    fn q_a_report() {
        let r = classify_hom(&fixtures::q_a());
        assert!(r.is(Property::Hyperconnected));
        assert!(r.is(Property::Surjection));
        assert!(!r.is(Property::Localic));
        assert!(!r.is(Property::Etale));
    }

    #[test]
    fn iota_b_report() {
        let r = classify_hom(&fixtures::iota_b());
        assert!(r.is(Property::TerminalConnected));
        assert!(!r.is(Property::Surjection));
        assert!(r.is(Property::Inclusion));
        assert!(!r.is(Property::Etale));
    }

    #[test]
    fn identity_biaction_report() {
        let r = classify_biact(&BiAction::regular(&fixtures::b2()), &SearchLimits::default()).unwrap();
        for p in [
            Property::Pure,
            Property::Injection,
            Property::Surjection,
            Property::Hyperconnected,
            Property::Localic,
            Property::TerminalConnected,
            Property::Essential,
        ] {
            assert!(r.is(p), "{p}");
        }
    }

    #[test]
    fn incl_c2_biaction_report() {
        let a = hom_to_biact(&fixtures::incl_c2());
        let r = classify_biact(&a, &SearchLimits::default()).unwrap();
        assert!(!r.is(Property::Pure));
        assert!(r.is(Property::Injection));
        assert!(r.is(Property::Etale));
    }

    #[test]
    fn regular_b2_over_trivial_right_monoid() {
        // B2 as (B2, T1)-biaction: the unit T1 → B2
        let a = fixtures::b2_unit_biaction();
        let r = classify_biact(&a, &SearchLimits::default()).unwrap();
        let h = classify_hom(&fixtures::unit_b());
        assert_eq!(r.value(Property::TerminalConnected), h.value(Property::TerminalConnected));
        assert!(!r.is(Property::TerminalConnected));
    }

    #[test]
    fn non_flat_is_rejected() {
        let c2 = fixtures::c2();
        let a = BiAction::from_actions(LeftAction::terminal(&c2), RightAction::terminal(&fixtures::t1())).unwrap();
        assert!(matches!(classify_biact(&a, &SearchLimits::default()), Err(Error::NotFlat(_))));
    }

    #[test]
    fn beyond_cap_is_undecided_or_from_hom() {
        let limits = SearchLimits {
            congruence_order_cap: 1,
            ..SearchLimits::default()
        };
        let a = hom_to_biact(&fixtures::q_a());
        let r = classify_biact(&a, &limits).unwrap();
        assert!(r.undecided().is_empty());
        assert_eq!(r.entry(Property::Surjection).method, "via the recovered homomorphism");
    }

    #[test]
    fn report_json_has_stable_order() {
        let r = classify_hom(&fixtures::incl_c2());
        let s = serde_json::to_string(&r).unwrap();
        let mut last = 0;
        for p in Property::ALL {
            let i = s.find(&format!("\"{}\"", p.name())).unwrap();
            assert!(i > last);
            last = i;
        }
    }
}

//! Groupification and the classification of locally constant étale
//! morphisms over PSh(N).

use std::collections::{BTreeSet, HashSet};

use serde_json::{json, Value};

use crate::actions::RightAction;
use crate::classify::{classify_hom, Property};
use crate::congruence::{congruence_closure, quotient_by_congruence, Sidedness};
use crate::error::{Error, Result};
use crate::factorize::hom_json;
use crate::hom::SemigroupHom;
use crate::monoid::{FiniteMonoid, Side};

/// Largest group whose subgroups are enumerated.
pub const SUBGROUP_CAP: usize = 24;

#[derive(Clone, Debug)]
pub struct Groupification {
    pub group: FiniteMonoid,
    /// N → group, a surjective monoid hom.
    pub eta: SemigroupHom,
}

/// The universal group receiving a monoid hom from N. For finite N this is
/// the quotient by the congruence generated by (e, 1) for every idempotent
/// e: some power of every element is idempotent, so in the quotient every
/// element has a power equal to 1 and is invertible.
pub fn groupification(n: &FiniteMonoid) -> Groupification {
    let pairs: Vec<(usize, usize)> = n.idempotents().into_iter().map(|e| (e, n.identity())).collect();
    let sigma = congruence_closure(n, &pairs, Sidedness::TwoSided);
    let (q, eta) = quotient_by_congruence(n, &sigma).expect("two-sided");
    let name = format!("π₁({})", n.name());
    let group = q.with_name(name);
    let eta = eta.with_monoids(n.clone(), group.clone()).expect("renaming keeps the table");
    debug_assert!(group.is_group());
    Groupification { group, eta }
}

/// Every subgroup of `g`, as sorted element lists ordered by size then
/// elements.
pub fn subgroups(g: &FiniteMonoid) -> Result<Vec<Vec<usize>>> {
    if !g.is_group() {
        return Err(Error::NotAGroup(g.name().to_string()));
    }
    if g.order() > SUBGROUP_CAP {
        return Err(Error::SizeCap {
            what: "subgroup enumeration".into(),
            limit: SUBGROUP_CAP,
            actual: g.order(),
        });
    }
    let generated = |gens: &[usize]| -> Vec<usize> {
        let mut set: BTreeSet<usize> = BTreeSet::from([g.identity()]);
        let mut frontier: Vec<usize> = vec![g.identity()];
        while let Some(x) = frontier.pop() {
            for &s in gens {
                let y = g.mul(x, s);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set.into_iter().collect()
    };
    let trivial = generated(&[]);
    let mut seen: HashSet<Vec<usize>> = HashSet::from([trivial.clone()]);
    let mut out = vec![trivial];
    let mut i = 0;
    while i < out.len() {
        let h = out[i].clone();
        i += 1;
        for x in g.elements() {
            if h.binary_search(&x).is_ok() {
                continue;
            }
            let mut gens = h.clone();
            gens.push(x);
            let k = generated(&gens);
            if seen.insert(k.clone()) {
                out.push(k);
            }
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct LcEtaleEntry {
    /// H ⊆ π₁(N).
    pub subgroup: Vec<usize>,
    /// η⁻¹(H) with its inclusion into N.
    pub monoid: FiniteMonoid,
    pub hom: SemigroupHom,
    /// For each y ∈ π₁(N), a unit u of N with y·η(u) ∈ H.
    pub witnesses: Vec<(usize, usize)>,
    /// Whether classify_hom reports the inclusion as locally constant étale.
    pub lc_etale_verified: bool,
}

#[derive(Clone, Debug)]
pub struct LcEtaleClassification {
    pub groupification: Groupification,
    pub entries: Vec<LcEtaleEntry>,
}

impl LcEtaleClassification {
    pub fn to_json(&self) -> Value {
        let g = &self.groupification.group;
        json!({
            "groupification": {
                "group": crate::factorize::monoid_json(g),
                "eta": hom_json(&self.groupification.eta),
            },
            "entries": self.entries.iter().map(|e| json!({
                "subgroup": g.labels_of(&e.subgroup),
                "monoid": e.monoid.labels(),
                "hom": hom_json(&e.hom),
                "lc_etale_verified": e.lc_etale_verified,
            })).collect::<Vec<_>>(),
        })
    }
}

/// The locally constant étale morphisms into PSh(N), one per subgroup H of
/// π₁(N) such that every y has some unit u with y·η(u) ∈ H; each is induced
/// by the inclusion η⁻¹(H) ⊆ N.
pub fn classify_lc_etale(n: &FiniteMonoid) -> Result<LcEtaleClassification> {
    let gp = groupification(n);
    let g = &gp.group;
    let units = n.invertibles(Side::Right);
    let mut entries = Vec::new();
    for h in subgroups(g)? {
        let mut witnesses = Vec::new();
        let ok = g.elements().all(|y| {
            match units.iter().find(|&&u| h.binary_search(&g.mul(y, gp.eta.apply(u))).is_ok()) {
                Some(&u) => {
                    witnesses.push((y, u));
                    true
                }
                None => false,
            }
        });
        if !ok {
            continue;
        }
        let preimage: Vec<usize> = n.elements().filter(|&x| h.binary_search(&gp.eta.apply(x)).is_ok()).collect();
        let name = if preimage.len() == n.order() {
            n.name().to_string()
        } else {
            format!("η⁻¹({})", g.labels_of(&h).join(","))
        };
        let (monoid, hom) = n.submonoid(name, &preimage)?;
        let lc_etale_verified = classify_hom(&hom).is(Property::LocallyConstantEtale);
        entries.push(LcEtaleEntry {
            subgroup: h,
            monoid,
            hom,
            witnesses,
            lc_etale_verified,
        });
    }
    Ok(LcEtaleClassification {
        groupification: gp,
        entries,
    })
}

/// The coset space H\G, cosets ordered by least element with H first.
pub fn right_cosets(g: &FiniteMonoid, h: &[usize]) -> Vec<Vec<usize>> {
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    let mut seen = vec![false; g.order()];
    let mut starts: Vec<usize> = vec![g.identity()];
    starts.extend(g.elements());
    for y in starts {
        if seen[y] {
            continue;
        }
        let mut c: Vec<usize> = h.iter().map(|&x| g.mul(x, y)).collect();
        c.sort_unstable();
        c.dedup();
        for &z in &c {
            seen[z] = true;
        }
        cosets.push(c);
    }
    cosets
}

/// H\π₁(N) as a right N-set through η.
pub fn pullback_coset_action(gp: &Groupification, h: &[usize]) -> RightAction {
    let g = &gp.group;
    let cosets = right_cosets(g, h);
    let class: Vec<usize> = {
        let mut class = vec![0; g.order()];
        for (i, c) in cosets.iter().enumerate() {
            for &z in c {
                class[z] = i;
            }
        }
        class
    };
    let labels = cosets
        .iter()
        .map(|c| format!("H{}", g.label(c[0])))
        .collect();
    let n = gp.eta.domain();
    RightAction::from_fn(n.clone(), labels, |i, x| class[g.mul(cosets[i][0], gp.eta.apply(x))])
        .expect("cosets carry a right action")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn groupification_examples() {
        let c2 = groupification(&fixtures::c2());
        assert!(c2.group.is_isomorphic(&fixtures::c2()));
        assert_eq!(groupification(&fixtures::b2()).group.order(), 1);
        assert_eq!(groupification(&fixtures::a2()).group.order(), 1);
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(subgroups(&fixtures::t1()).unwrap().len(), 1);
        assert_eq!(subgroups(&fixtures::c2()).unwrap(), vec![vec![0], vec![0, 1]]);
        assert_eq!(subgroups(&fixtures::c2xc2()).unwrap().len(), 5);
        assert!(matches!(subgroups(&fixtures::b2()), Err(Error::NotAGroup(_))));
    }

    #[test]
    fn lc_etale_examples() {
        let c2 = classify_lc_etale(&fixtures::c2()).unwrap();
        assert_eq!(c2.entries.len(), 2);
        assert_eq!(c2.entries[0].monoid.order(), 1);
        let b2 = classify_lc_etale(&fixtures::b2()).unwrap();
        assert_eq!(b2.entries.len(), 1);
        assert_eq!(b2.entries[0].monoid.order(), 2);
        let a2 = classify_lc_etale(&fixtures::a2()).unwrap();
        assert_eq!(a2.entries.len(), 1);
        assert!(c2.entries.iter().chain(&b2.entries).all(|e| e.lc_etale_verified));
    }
}

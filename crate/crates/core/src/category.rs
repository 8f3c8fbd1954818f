//! Finite categories given by explicit arrow tables, functors between them,
//! presheaves, idempotent completions and categories of elements.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::hom::SemigroupHom;
use crate::monoid::FiniteMonoid;

const NONE: u32 = u32::MAX;

/// An arrow `source → target`. `tag` records what the arrow is built from
/// (a monoid element, an arrow of a base category); arrows of a category are
/// determined by `(source, target, tag)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
    pub tag: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    name: String,
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    identities: Vec<usize>,
    /// `compose[g * n + f] = g∘f` when `f.target == g.source`.
    compose: Vec<u32>,
    homs: Vec<Vec<usize>>,
}

impl FiniteCategory {
    /// Builds a category whose arrows are identified by `(source, target, tag)`
    /// and composed by composing tags: `g∘f` is the arrow
    /// `(f.source, g.target, compose_tags(g.tag, f.tag))`.
    pub fn from_tagged(
        name: impl Into<String>,
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        identities: Vec<usize>,
        compose_tags: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let mut index: HashMap<(usize, usize, usize), usize> = HashMap::new();
        for (i, a) in arrows.iter().enumerate() {
            if index.insert((a.source, a.target, a.tag), i).is_some() {
                return Err(Error::CategoryAxiom(format!(
                    "arrow `{}` listed twice",
                    a.label
                )));
            }
        }
        Self::new(name, objects, arrows, identities, |g, f, arrows: &[Arrow]| {
            let (g, f) = (&arrows[g], &arrows[f]);
            let tag = compose_tags(g.tag, f.tag);
            index.get(&(f.source, g.target, tag)).copied().ok_or_else(|| {
                Error::CategoryAxiom(format!("composite of `{}` and `{}` is not an arrow", g.label, f.label))
            })
        })
    }

    /// Builds a category from a composition function `(g, f) ↦ g∘f`, which is
    /// only called on composable pairs. Identities and associativity are
    /// checked.
    pub fn new(
        name: impl Into<String>,
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        identities: Vec<usize>,
        compose: impl Fn(usize, usize, &[Arrow]) -> Result<usize>,
    ) -> Result<Self> {
        let nobj = objects.len();
        let n = arrows.len();
        if identities.len() != nobj {
            return Err(Error::CategoryAxiom("one identity per object required".into()));
        }
        let mut homs = vec![Vec::new(); nobj * nobj];
        for (i, a) in arrows.iter().enumerate() {
            if a.source >= nobj || a.target >= nobj {
                return Err(Error::CategoryAxiom(format!("arrow `{}` has an unknown endpoint", a.label)));
            }
            let hom: &mut Vec<usize> = &mut homs[a.source * nobj + a.target];
            if hom.iter().any(|&j| arrows[j].label == a.label) {
                return Err(Error::CategoryAxiom(format!("duplicate arrow label `{}`", a.label)));
            }
            hom.push(i);
        }
        for (o, &id) in identities.iter().enumerate() {
            if id >= n || arrows[id].source != o || arrows[id].target != o {
                return Err(Error::CategoryAxiom(format!("identity of `{}` is not an endo-arrow", objects[o])));
            }
        }
        let mut table = vec![NONE; n * n];
        for f in 0..n {
            let mid = arrows[f].target;
            for g in 0..n {
                if arrows[g].source == mid {
                    let h = compose(g, f, &arrows)?;
                    if arrows[h].source != arrows[f].source || arrows[h].target != arrows[g].target {
                        return Err(Error::CategoryAxiom(format!(
                            "`{}`∘`{}` has the wrong type",
                            arrows[g].label, arrows[f].label
                        )));
                    }
                    table[g * n + f] = h as u32;
                }
            }
        }
        let cat = FiniteCategory {
            name: name.into(),
            objects,
            arrows,
            identities,
            compose: table,
            homs,
        };
        cat.check_axioms()?;
        Ok(cat)
    }

    fn check_axioms(&self) -> Result<()> {
        for f in 0..self.arrows.len() {
            let a = &self.arrows[f];
            if self.comp(self.identities[a.target], f) != f || self.comp(f, self.identities[a.source]) != f {
                return Err(Error::CategoryAxiom(format!("identities are not neutral on `{}`", a.label)));
            }
        }
        let nobj = self.objects.len();
        for f in 0..self.arrows.len() {
            let b = self.arrows[f].target;
            for c in 0..nobj {
                for &g in &self.homs[b * nobj + c] {
                    let gf = self.comp(g, f);
                    for d in 0..nobj {
                        for &h in &self.homs[c * nobj + d] {
                            if self.comp(h, gf) != self.comp(self.comp(h, g), f) {
                                return Err(Error::CategoryAxiom(format!(
                                    "composition of `{}`, `{}`, `{}` is not associative",
                                    self.arrows[h].label, self.arrows[g].label, self.arrows[f].label
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// A monoid as a one-object category; arrow tags are elements.
    pub fn one_object(m: &FiniteMonoid) -> FiniteCategory {
        let arrows = m
            .elements()
            .map(|x| Arrow {
                label: m.label(x).to_string(),
                source: 0,
                target: 0,
                tag: x,
            })
            .collect();
        FiniteCategory::from_tagged(m.name(), vec!["*".into()], arrows, vec![m.identity()], |g, f| m.mul(g, f))
            .expect("a monoid is a one-object category")
    }

    /// Objects with identity arrows only.
    pub fn discrete(objects: Vec<String>) -> FiniteCategory {
        let arrows = (0..objects.len())
            .map(|o| Arrow {
                label: format!("id_{}", objects[o]),
                source: o,
                target: o,
                tag: o,
            })
            .collect();
        let ids = (0..objects.len()).collect();
        FiniteCategory::from_tagged("discrete", objects, arrows, ids, |g, _| g)
            .expect("discrete category is valid")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn object(&self, o: usize) -> &str {
        &self.objects[o]
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn arrow(&self, f: usize) -> &Arrow {
        &self.arrows[f]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn identity(&self, o: usize) -> usize {
        self.identities[o]
    }

    /// Arrows `a → b`.
    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        &self.homs[a * self.objects.len() + b]
    }

    /// `g∘f`, if `f.target == g.source`.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        let h = self.compose[g * self.arrows.len() + f];
        (h != NONE).then_some(h as usize)
    }

    #[inline]
    fn comp(&self, g: usize, f: usize) -> usize {
        self.compose[g * self.arrows.len() + f] as usize
    }

    pub fn opposite(&self) -> FiniteCategory {
        let n = self.arrows.len();
        let arrows: Vec<Arrow> = self
            .arrows
            .iter()
            .map(|a| Arrow {
                label: a.label.clone(),
                source: a.target,
                target: a.source,
                tag: a.tag,
            })
            .collect();
        let mut compose = vec![NONE; n * n];
        for g in 0..n {
            for f in 0..n {
                // g ∘op f = f ∘ g
                compose[g * n + f] = self.compose[f * n + g];
            }
        }
        let nobj = self.objects.len();
        let mut homs = vec![Vec::new(); nobj * nobj];
        for (i, a) in arrows.iter().enumerate() {
            homs[a.source * nobj + a.target].push(i);
        }
        FiniteCategory {
            name: format!("{}^op", self.name),
            objects: self.objects.clone(),
            arrows,
            identities: self.identities.clone(),
            compose,
            homs,
        }
    }

    /// Endomorphisms of `c` as a monoid.
    pub fn endomorphism_monoid(&self, c: usize) -> FiniteMonoid {
        let ends = self.hom(c, c).to_vec();
        let pos: HashMap<usize, usize> = ends.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let labels = ends.iter().map(|&f| self.arrows[f].label.clone()).collect();
        let id = pos[&self.identities[c]];
        FiniteMonoid::from_fn(format!("End({})", self.objects[c]), labels, id, |g, f| {
            pos[&self.comp(ends[g], ends[f])]
        })
        .expect("endomorphisms form a monoid")
    }

    /// `r: a → d`, `s: d → a` with `r∘s = id_d`.
    pub fn retraction(&self, a: usize, d: usize) -> Option<(usize, usize)> {
        let id = self.identities[d];
        for &r in self.hom(a, d) {
            for &s in self.hom(d, a) {
                if self.comp(r, s) == id {
                    return Some((r, s));
                }
            }
        }
        None
    }

    /// Decides whether every idempotent arrow splits. On failure the
    /// unsplit idempotent is returned.
    pub fn is_idempotent_complete(&self) -> (bool, Option<usize>) {
        for (u, a) in self.arrows.iter().enumerate() {
            if a.source != a.target || self.comp(u, u) != u {
                continue;
            }
            let o = a.source;
            let split = (0..self.objects.len()).any(|b| {
                self.hom(o, b).iter().any(|&r| {
                    self.hom(b, o)
                        .iter()
                        .any(|&s| self.comp(r, s) == self.identities[b] && self.comp(s, r) == u)
                })
            });
            if !split {
                return (false, Some(u));
            }
        }
        (true, None)
    }

    /// An object of which every object is a retract, with its endomorphism
    /// monoid. Objects are tried in order.
    pub fn find_collapsing_object(&self) -> Option<CollapsingObject> {
        'outer: for c in 0..self.objects.len() {
            let mut retractions = Vec::new();
            for d in 0..self.objects.len() {
                match self.retraction(c, d) {
                    Some((r, s)) => retractions.push((d, r, s)),
                    None => continue 'outer,
                }
            }
            return Some(CollapsingObject {
                object: c,
                monoid: self.endomorphism_monoid(c),
                retractions,
            });
        }
        None
    }
}

/// Object `object` of which every object `d` is a retract via `(d, r, s)`.
#[derive(Clone, Debug)]
pub struct CollapsingObject {
    pub object: usize,
    pub monoid: FiniteMonoid,
    pub retractions: Vec<(usize, usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorData {
    source: FiniteCategory,
    target: FiniteCategory,
    object_map: Vec<usize>,
    arrow_map: Vec<usize>,
}

impl FunctorData {
    pub fn new(
        source: FiniteCategory,
        target: FiniteCategory,
        object_map: Vec<usize>,
        arrow_map: Vec<usize>,
    ) -> Result<Self> {
        if object_map.len() != source.num_objects() || arrow_map.len() != source.num_arrows() {
            return Err(Error::FunctorLaw("maps do not cover the source".into()));
        }
        for (f, a) in source.arrows.iter().enumerate() {
            let fa = arrow_map[f];
            if fa >= target.num_arrows() {
                return Err(Error::FunctorLaw(format!("image of `{}` out of range", a.label)));
            }
            let t = &target.arrows[fa];
            if t.source != object_map[a.source] || t.target != object_map[a.target] {
                return Err(Error::FunctorLaw(format!("image of `{}` has the wrong type", a.label)));
            }
        }
        for o in 0..source.num_objects() {
            if arrow_map[source.identities[o]] != target.identities[object_map[o]] {
                return Err(Error::FunctorLaw(format!("identity of `{}` not preserved", source.objects[o])));
            }
        }
        for f in 0..source.num_arrows() {
            for g in 0..source.num_arrows() {
                if let Some(gf) = source.compose(g, f) {
                    if target.compose(arrow_map[g], arrow_map[f]) != Some(arrow_map[gf]) {
                        return Err(Error::FunctorLaw(format!(
                            "composite `{}`∘`{}` not preserved",
                            source.arrows[g].label, source.arrows[f].label
                        )));
                    }
                }
            }
        }
        Ok(FunctorData {
            source,
            target,
            object_map,
            arrow_map,
        })
    }

    pub fn identity(c: &FiniteCategory) -> FunctorData {
        FunctorData {
            source: c.clone(),
            target: c.clone(),
            object_map: (0..c.num_objects()).collect(),
            arrow_map: (0..c.num_arrows()).collect(),
        }
    }

    pub fn source(&self) -> &FiniteCategory {
        &self.source
    }

    /// The same maps between the opposite categories.
    pub fn opposite(&self) -> FunctorData {
        FunctorData {
            source: self.source.opposite(),
            target: self.target.opposite(),
            object_map: self.object_map.clone(),
            arrow_map: self.arrow_map.clone(),
        }
    }

    pub fn target(&self) -> &FiniteCategory {
        &self.target
    }

    pub fn object_map(&self) -> &[usize] {
        &self.object_map
    }

    pub fn arrow_map(&self) -> &[usize] {
        &self.arrow_map
    }

    /// Full, faithful, and essentially surjective up to retracts, with
    /// witnesses.
    pub fn properties(&self) -> FunctorProperties {
        let src = &self.source;
        let tgt = &self.target;
        let mut props = FunctorProperties {
            full: true,
            faithful: true,
            ess_surj_retracts: true,
            not_full: None,
            not_faithful: None,
            retracts: Vec::new(),
            not_covered: None,
        };
        'pairs: for a in 0..src.num_objects() {
            for b in 0..src.num_objects() {
                let images: Vec<usize> = src.hom(a, b).iter().map(|&f| self.arrow_map[f]).collect();
                if props.faithful {
                    for i in 0..images.len() {
                        if let Some(j) = (i + 1..images.len()).find(|&j| images[j] == images[i]) {
                            props.faithful = false;
                            props.not_faithful = Some((src.hom(a, b)[i], src.hom(a, b)[j]));
                            break;
                        }
                    }
                }
                if props.full {
                    let (fa, fb) = (self.object_map[a], self.object_map[b]);
                    if let Some(&missing) = tgt.hom(fa, fb).iter().find(|g| !images.contains(g)) {
                        props.full = false;
                        props.not_full = Some((a, b, missing));
                    }
                }
                if !props.full && !props.faithful {
                    break 'pairs;
                }
            }
        }
        for d in 0..tgt.num_objects() {
            let found = (0..src.num_objects()).find_map(|c| {
                tgt.retraction(self.object_map[c], d).map(|(r, s)| (d, c, r, s))
            });
            match found {
                Some(w) => props.retracts.push(w),
                None => {
                    props.ess_surj_retracts = false;
                    props.not_covered = Some(d);
                    break;
                }
            }
        }
        props
    }

    /// Every arrow `f: a → P(y)` of the base lifts to exactly one arrow with
    /// target `y`.
    pub fn is_discrete_fibration(&self) -> bool {
        self.unique_lifts(false)
    }

    /// Every arrow `f: P(x) → b` of the base lifts to exactly one arrow with
    /// source `x`.
    pub fn is_discrete_opfibration(&self) -> bool {
        self.unique_lifts(true)
    }

    fn unique_lifts(&self, from_source: bool) -> bool {
        let base = &self.target;
        let total = &self.source;
        for y in 0..total.num_objects() {
            let py = self.object_map[y];
            for (f, fa) in base.arrows.iter().enumerate() {
                let anchored = if from_source { fa.source } else { fa.target };
                if anchored != py {
                    continue;
                }
                let lifts = total
                    .arrows
                    .iter()
                    .enumerate()
                    .filter(|(g, ga)| {
                        let end = if from_source { ga.source } else { ga.target };
                        end == y && self.arrow_map[*g] == f
                    })
                    .count();
                if lifts != 1 {
                    return false;
                }
            }
        }
        true
    }
}

/// Outcome of [`FunctorData::properties`]. Witnesses: `not_full = (a, b, g)`
/// with `g: F(a) → F(b)` not in the image; `not_faithful = (f1, f2)` parallel
/// arrows with equal images; `retracts` lists `(d, c, r, s)` with
/// `r: F(c) → d`, `s: d → F(c)`, `r∘s = id`; `not_covered` a target object
/// that is no retract of any image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorProperties {
    pub full: bool,
    pub faithful: bool,
    pub ess_surj_retracts: bool,
    pub not_full: Option<(usize, usize, usize)>,
    pub not_faithful: Option<(usize, usize)>,
    pub retracts: Vec<(usize, usize, usize, usize)>,
    pub not_covered: Option<usize>,
}

/// The idempotent completion M̌: objects are the idempotents of M (in
/// increasing order), arrows `e̲ → d̲` are the `m` with `me = m = dm`, with
/// the embedding of M as the full subcategory on 1̲.
pub fn idempotent_completion(m: &FiniteMonoid) -> (FiniteCategory, FunctorData) {
    let idem = m.idempotents();
    let objects = idem.iter().map(|&e| m.label(e).to_string()).collect();
    let mut arrows = Vec::new();
    for (i, &e) in idem.iter().enumerate() {
        for (j, &d) in idem.iter().enumerate() {
            for x in m.elements() {
                if m.mul(x, e) == x && m.mul(d, x) == x {
                    arrows.push(Arrow {
                        label: m.label(x).to_string(),
                        source: i,
                        target: j,
                        tag: x,
                    });
                }
            }
        }
    }
    let identities = idem
        .iter()
        .enumerate()
        .map(|(i, &e)| {
            arrows
                .iter()
                .position(|a| a.source == i && a.target == i && a.tag == e)
                .expect("e is an endomorphism of e̲")
        })
        .collect();
    let cat = FiniteCategory::from_tagged(format!("{}^", m.name()), objects, arrows, identities, |g, f| m.mul(g, f))
        .expect("idempotent completion is a category");
    let one = idem.iter().position(|&e| e == m.identity()).expect("1 is idempotent");
    let base = FiniteCategory::one_object(m);
    let arrow_map = m
        .elements()
        .map(|x| completion_arrow(&cat, one, one, x))
        .collect();
    let emb = FunctorData::new(base, cat.clone(), vec![one], arrow_map).expect("embedding is a functor");
    (cat, emb)
}

/// Index of the arrow `x: a → b` in an idempotent completion.
pub fn completion_arrow(cat: &FiniteCategory, a: usize, b: usize, x: usize) -> usize {
    *cat.hom(a, b)
        .iter()
        .find(|&&f| cat.arrow(f).tag == x)
        .expect("element is an arrow of the completion")
}

/// Object index of the idempotent `e` in an idempotent completion of `m`.
pub fn completion_object(m: &FiniteMonoid, e: usize) -> usize {
    m.idempotents()
        .iter()
        .position(|&d| d == e)
        .expect("object of the completion is an idempotent")
}

/// φ̌: M̌ → Ň, sending e̲ to φ(e)‾ and m to φ(m).
pub fn lift_hom_to_completion(phi: &SemigroupHom) -> FunctorData {
    let (src, _) = idempotent_completion(phi.domain());
    let (tgt, _) = idempotent_completion(phi.codomain());
    let n = phi.codomain();
    let m_idem = phi.domain().idempotents();
    let object_map: Vec<usize> = m_idem
        .iter()
        .map(|&e| completion_object(n, phi.apply(e)))
        .collect();
    let arrow_map = src
        .arrows()
        .iter()
        .map(|a| completion_arrow(&tgt, object_map[a.source], object_map[a.target], phi.apply(a.tag)))
        .collect();
    FunctorData::new(src, tgt, object_map, arrow_map).expect("φ̌ is a functor")
}

/// A presheaf on a finite category: a set per object and, for each arrow
/// `f: a → b`, a map `X(f): X(b) → X(a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presheaf {
    category: FiniteCategory,
    sets: Vec<Vec<String>>,
    maps: Vec<Vec<usize>>,
}

impl Presheaf {
    pub fn new(category: FiniteCategory, sets: Vec<Vec<String>>, maps: Vec<Vec<usize>>) -> Result<Self> {
        if sets.len() != category.num_objects() || maps.len() != category.num_arrows() {
            return Err(Error::FunctorLaw("presheaf data does not match the category".into()));
        }
        for (f, a) in category.arrows().iter().enumerate() {
            let m = &maps[f];
            if m.len() != sets[a.target].len() || m.iter().any(|&x| x >= sets[a.source].len()) {
                return Err(Error::FunctorLaw(format!("X({}) has the wrong type", a.label)));
            }
        }
        for o in 0..category.num_objects() {
            let id = &maps[category.identity(o)];
            if id.iter().enumerate().any(|(i, &x)| i != x) {
                return Err(Error::FunctorLaw(format!("X(id_{}) is not the identity", category.object(o))));
            }
        }
        for f in 0..category.num_arrows() {
            for g in 0..category.num_arrows() {
                if let Some(gf) = category.compose(g, f) {
                    // X(g∘f) = X(f)∘X(g)
                    let ok = maps[gf].iter().enumerate().all(|(z, &x)| maps[f][maps[g][z]] == x);
                    if !ok {
                        return Err(Error::FunctorLaw(format!(
                            "X({}∘{}) ≠ X({})∘X({})",
                            category.arrow(g).label,
                            category.arrow(f).label,
                            category.arrow(f).label,
                            category.arrow(g).label
                        )));
                    }
                }
            }
        }
        Ok(Presheaf { category, sets, maps })
    }

    pub fn category(&self) -> &FiniteCategory {
        &self.category
    }

    pub fn set(&self, o: usize) -> &[String] {
        &self.sets[o]
    }

    /// `X(f)(y)` for `f: a → b`, `y ∈ X(b)`.
    pub fn restrict(&self, f: usize, y: usize) -> usize {
        self.maps[f][y]
    }

    /// ∫_C X: objects `(a, x)` with `x ∈ X(a)`, arrows `f: (a, x) → (b, y)`
    /// whenever `X(f)(y) = x`; with its projection to C.
    pub fn category_of_elements(&self) -> (FiniteCategory, FunctorData) {
        let c = &self.category;
        let mut offset = Vec::with_capacity(c.num_objects());
        let mut objects = Vec::new();
        let mut object_map = Vec::new();
        for o in 0..c.num_objects() {
            offset.push(objects.len());
            for x in &self.sets[o] {
                objects.push(if c.num_objects() == 1 {
                    x.clone()
                } else {
                    format!("({},{})", c.object(o), x)
                });
                object_map.push(o);
            }
        }
        let mut arrows = Vec::new();
        for (f, a) in c.arrows().iter().enumerate() {
            for y in 0..self.sets[a.target].len() {
                let x = self.maps[f][y];
                arrows.push(Arrow {
                    label: a.label.clone(),
                    source: offset[a.source] + x,
                    target: offset[a.target] + y,
                    tag: f,
                });
            }
        }
        let identities = (0..objects.len())
            .map(|p| {
                let o = object_map[p];
                let id = c.identity(o);
                arrows
                    .iter()
                    .position(|a| a.source == p && a.tag == id)
                    .expect("identity lifts")
            })
            .collect();
        let arrow_map: Vec<usize> = arrows.iter().map(|a| a.tag).collect();
        let total = FiniteCategory::from_tagged(
            format!("el({})", c.name()),
            objects,
            arrows,
            identities,
            |g, f| c.compose(g, f).expect("composable in the base"),
        )
        .expect("category of elements is a category");
        let proj = FunctorData::new(total.clone(), c.clone(), object_map, arrow_map).expect("projection is a functor");
        (total, proj)
    }
}

//! Finite right actions, left actions and biactions of finite monoids.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::category::{idempotent_completion, FiniteCategory, FunctorData, Presheaf};
use crate::dsu::{saturate, Dsu, Partition};
use crate::equivariant::{isomorphism, MapSearch, OpSet};
use crate::error::{Error, Result};
use crate::hom::SemigroupHom;
use crate::monoid::FiniteMonoid;

/// Something with a carrier acted on by one or two monoids.
pub trait Acts {
    fn size(&self) -> usize;
    fn carrier(&self) -> &[String];
    /// One operator per acting element, in a fixed order determined by the
    /// acting monoid(s).
    fn op_set(&self) -> OpSet;
}

fn check_labels(labels: &[String]) -> Result<()> {
    let mut seen = HashSet::new();
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

/// A right action `x·m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RightAction {
    monoid: FiniteMonoid,
    labels: Vec<String>,
    /// `table[x * |M| + m] = x·m`
    table: Vec<usize>,
}

impl RightAction {
    /// `table[x][m] = x·m`. Checks `x·1 = x` and `x·(mn) = (x·m)·n`.
    pub fn new(monoid: FiniteMonoid, labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        check_labels(&labels)?;
        let k = monoid.order();
        if table.len() != labels.len() || table.iter().any(|r| r.len() != k) {
            return Err(Error::MalformedTable(format!("action table must be {}×{k}", labels.len())));
        }
        if table.iter().flatten().any(|&y| y >= labels.len()) {
            return Err(Error::MalformedTable("action value out of range".into()));
        }
        let act = RightAction {
            monoid,
            labels,
            table: table.into_iter().flatten().collect(),
        };
        act.check_axioms()?;
        Ok(act)
    }

    pub fn from_fn(monoid: FiniteMonoid, labels: Vec<String>, act: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let table = (0..labels.len())
            .map(|x| monoid.elements().map(|m| act(x, m)).collect())
            .collect();
        Self::new(monoid, labels, table)
    }

    fn check_axioms(&self) -> Result<()> {
        let m = &self.monoid;
        for x in 0..self.size() {
            if self.act(x, m.identity()) != x {
                return Err(Error::ActionAxiom(format!("{}·1 ≠ {}", self.labels[x], self.labels[x])));
            }
            for a in m.elements() {
                for b in m.elements() {
                    if self.act(x, m.mul(a, b)) != self.act(self.act(x, a), b) {
                        return Err(Error::ActionAxiom(format!(
                            "{x}·({a}{b}) ≠ ({x}·{a})·{b}",
                            x = self.labels[x],
                            a = m.label(a),
                            b = m.label(b)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// M acting on itself by right multiplication.
    pub fn regular(m: &FiniteMonoid) -> RightAction {
        RightAction::from_fn(m.clone(), m.labels().to_vec(), |x, a| m.mul(x, a)).expect("regular action")
    }

    /// Trivial action on the given set (Δ).
    pub fn constant(m: &FiniteMonoid, labels: Vec<String>) -> RightAction {
        RightAction::from_fn(m.clone(), labels, |x, _| x).expect("constant action")
    }

    pub fn terminal(m: &FiniteMonoid) -> RightAction {
        RightAction::constant(m, vec!["*".into()])
    }

    pub fn monoid(&self) -> &FiniteMonoid {
        &self.monoid
    }

    #[inline]
    pub fn act(&self, x: usize, m: usize) -> usize {
        self.table[x * self.monoid.order() + m]
    }

    /// The underlying set (U).
    pub fn underlying_set(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.size())
            .map(|x| self.monoid.elements().map(|m| self.act(x, m)).collect())
            .collect()
    }

    pub fn with_labels(&self, labels: Vec<String>) -> Result<RightAction> {
        RightAction::new(self.monoid.clone(), labels, self.table_rows())
    }

    /// Fix_M(X) = {x : x·m = x for all m}.
    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.size())
            .filter(|&x| self.monoid.elements().all(|m| self.act(x, m) == x))
            .collect()
    }

    /// Connected components: the equivalence generated by x ∼ x·m.
    pub fn components(&self) -> Partition {
        let mut dsu = Dsu::new(self.size());
        for x in 0..self.size() {
            for m in self.monoid.elements() {
                dsu.union(x, self.act(x, m));
            }
        }
        dsu.into_partition()
    }

    /// x ↦ x·m for each m.
    pub fn operators(&self) -> Vec<Vec<usize>> {
        self.monoid
            .elements()
            .map(|m| (0..self.size()).map(|x| self.act(x, m)).collect())
            .collect()
    }

    /// The orbit map m ↦ a·m.
    pub fn orbit_map(&self, a: usize) -> Vec<usize> {
        self.monoid.elements().map(|m| self.act(a, m)).collect()
    }

    /// The cyclic sub-act a·M, sorted.
    pub fn cyclic_subact(&self, a: usize) -> Vec<usize> {
        let s: BTreeSet<usize> = self.orbit_map(a).into_iter().collect();
        s.into_iter().collect()
    }

    /// Stabilizer {m : x·m = x}.
    pub fn stabilizer(&self, x: usize) -> Vec<usize> {
        self.monoid.elements().filter(|&m| self.act(x, m) == x).collect()
    }

    pub fn is_closed(&self, subset: &[usize]) -> bool {
        let s: HashSet<usize> = subset.iter().copied().collect();
        subset
            .iter()
            .all(|&x| self.monoid.elements().all(|m| s.contains(&self.act(x, m))))
    }

    /// The sub-act on a closed subset, keeping labels; elements are in the
    /// order given.
    pub fn restrict(&self, subset: &[usize]) -> Result<RightAction> {
        let pos: HashMap<usize, usize> = subset.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut table = Vec::with_capacity(subset.len());
        for &x in subset {
            let mut row = Vec::with_capacity(self.monoid.order());
            for m in self.monoid.elements() {
                let y = self.act(x, m);
                row.push(*pos.get(&y).ok_or_else(|| {
                    Error::ActionAxiom(format!("subset not closed: {}·{} = {}", self.labels[x], self.monoid.label(m), self.labels[y]))
                })?);
            }
            table.push(row);
        }
        let labels = subset.iter().map(|&x| self.labels[x].clone()).collect();
        RightAction::new(self.monoid.clone(), labels, table)
    }

    /// All closed subsets (including ∅ and X), as sorted element lists in
    /// breadth-first order of unions of cyclic sub-acts.
    pub fn sub_acts(&self, cap: usize) -> Result<Vec<Vec<usize>>> {
        let mut cyclic: Vec<Vec<usize>> = (0..self.size()).map(|a| self.cyclic_subact(a)).collect();
        cyclic.sort();
        cyclic.dedup();
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut out = vec![Vec::new()];
        seen.insert(Vec::new());
        let mut i = 0;
        while i < out.len() {
            let current = out[i].clone();
            i += 1;
            for c in &cyclic {
                if c.iter().all(|x| current.binary_search(x).is_ok()) {
                    continue;
                }
                let union: BTreeSet<usize> = current.iter().chain(c).copied().collect();
                let union: Vec<usize> = union.into_iter().collect();
                if seen.insert(union.clone()) {
                    if out.len() >= cap {
                        return Err(Error::SizeCap {
                            what: "sub-act enumeration".into(),
                            limit: cap,
                            actual: out.len() + 1,
                        });
                    }
                    out.push(union);
                }
            }
        }
        Ok(out)
    }

    /// An element `a` with injective orbit map, an equivariant retraction
    /// `r: X → M` with `r(a) = 1`, so `r ∘ (m ↦ a·m) = id_M`.
    pub fn find_regular_retract(&self) -> Option<RegularRetract> {
        let regular = RightAction::regular(&self.monoid);
        let (src, tgt) = (self.op_set(), regular.op_set());
        for a in 0..self.size() {
            let orbit = self.orbit_map(a);
            let distinct: HashSet<usize> = orbit.iter().copied().collect();
            if distinct.len() != orbit.len() {
                continue;
            }
            if let Some(r) = MapSearch::new(&src, &tgt).fix(a, self.monoid.identity()).first() {
                return Some(RegularRetract {
                    point: a,
                    section: orbit,
                    retraction: r,
                });
            }
        }
        None
    }

    /// {x : for every y there is a right-invertible u with y·u = x}.
    pub fn strong_generators(&self) -> Vec<usize> {
        let units = self.monoid.invertibles(crate::monoid::Side::Right);
        (0..self.size())
            .filter(|&x| (0..self.size()).all(|y| units.iter().any(|&u| self.act(y, u) == x)))
            .collect()
    }

    /// Every element acts bijectively.
    pub fn is_locally_constant(&self) -> bool {
        self.monoid.elements().all(|m| {
            let image: HashSet<usize> = (0..self.size()).map(|x| self.act(x, m)).collect();
            image.len() == self.size()
        })
    }

    /// X as a presheaf on the one-object category M.
    pub fn as_presheaf(&self) -> Presheaf {
        Presheaf::new(FiniteCategory::one_object(&self.monoid), vec![self.labels.clone()], self.operators())
            .expect("right action is a presheaf")
    }

    /// ∫_M X: objects the elements, arrows `n: x → y` when `y·n = x`, with
    /// the projection to M.
    pub fn category_of_elements(&self) -> (FiniteCategory, FunctorData) {
        self.as_presheaf().category_of_elements()
    }

    /// The presheaf on the idempotent completion extending X:
    /// X(e̲) = {x : x·e = x}, and `m: e̲ → d̲` acts by `y ↦ y·m`. Also returns
    /// the members of each X(e̲) as elements of X.
    pub fn extend_to_completion(&self) -> (Presheaf, Vec<Vec<usize>>) {
        let m = &self.monoid;
        let (cat, _) = idempotent_completion(m);
        let members: Vec<Vec<usize>> = m
            .idempotents()
            .iter()
            .map(|&e| (0..self.size()).filter(|&x| self.act(x, e) == x).collect())
            .collect();
        let sets = members
            .iter()
            .map(|xs| xs.iter().map(|&x| self.labels[x].clone()).collect())
            .collect();
        let maps = cat
            .arrows()
            .iter()
            .map(|a| {
                let pos: HashMap<usize, usize> = members[a.source].iter().enumerate().map(|(i, &x)| (x, i)).collect();
                members[a.target].iter().map(|&y| pos[&self.act(y, a.tag)]).collect()
            })
            .collect();
        let p = Presheaf::new(cat, sets, maps).expect("extension is a presheaf");
        (p, members)
    }

    /// Least equivalence containing `pairs` compatible with the action.
    pub fn congruence_closure(&self, pairs: &[(usize, usize)]) -> Partition {
        saturate(self.size(), pairs, &self.operators())
    }

    /// Quotient by a compatible partition, classes labelled by their least
    /// element.
    pub fn quotient(&self, p: &Partition) -> Result<RightAction> {
        let reps = p.representatives();
        for x in 0..self.size() {
            for m in self.monoid.elements() {
                let y = reps[p.class_of(x)];
                if !p.same(self.act(x, m), self.act(y, m)) {
                    return Err(Error::ActionAxiom(format!(
                        "partition is not compatible at {}·{}",
                        self.labels[x],
                        self.monoid.label(m)
                    )));
                }
            }
        }
        let labels = reps.iter().map(|&r| self.labels[r].clone()).collect();
        RightAction::from_fn(self.monoid.clone(), labels, |c, m| p.class_of(self.act(reps[c], m)))
    }

    /// Disjoint union; labels are suffixed when they clash.
    pub fn coproduct(&self, other: &RightAction) -> Result<RightAction> {
        if self.monoid.table_rows() != other.monoid.table_rows() {
            return Err(Error::MonoidMismatch("coproduct of actions of different monoids".into()));
        }
        let clash = other.labels.iter().any(|l| self.labels.contains(l));
        let mut labels = self.labels.clone();
        for l in &other.labels {
            labels.push(if clash { format!("{l}'") } else { l.clone() });
        }
        let n = self.size();
        RightAction::from_fn(self.monoid.clone(), labels, |x, m| {
            if x < n {
                self.act(x, m)
            } else {
                n + other.act(x - n, m)
            }
        })
    }

    /// Restriction along a monoid homomorphism φ: K → M: x·k = x·φ(k).
    pub fn restrict_along(&self, phi: &SemigroupHom) -> Result<RightAction> {
        if phi.codomain().table_rows() != self.monoid.table_rows() {
            return Err(Error::MonoidMismatch("hom codomain is not the acting monoid".into()));
        }
        RightAction::from_fn(phi.domain().clone(), self.labels.clone(), |x, k| self.act(x, phi.apply(k)))
    }

    /// For a locally constant X, the isomorphism ∐_{x ∈ X} M → X × M over the
    /// regular object, (x, n) ↦ (x·n, n); the coproduct is U(X) × M with
    /// U(X) carrying the trivial action. Pairs are encoded as `x * |M| + n`. None if X is not locally
    /// constant.
    pub fn trivialize_over_regular(&self) -> Option<Vec<usize>> {
        let k = self.monoid.order();
        let map: Vec<usize> = (0..self.size() * k).map(|p| self.act(p / k, p % k) * k + p % k).collect();
        let distinct: HashSet<usize> = map.iter().copied().collect();
        if distinct.len() != map.len() {
            return None;
        }
        let product = self.product_with_regular(false);
        let trivial = self.product_with_regular(true);
        debug_assert!(trivial.is_equivariant(&product, &map));
        Some(map)
    }

    /// X × M (or U(X) × M when `trivial`), as operators on pairs.
    pub fn product_with_regular(&self, trivial: bool) -> OpSet {
        let k = self.monoid.order();
        let ops = self
            .monoid
            .elements()
            .map(|m| {
                (0..self.size() * k)
                    .map(|p| {
                        let (x, n) = (p / k, p % k);
                        let x2 = if trivial { x } else { self.act(x, m) };
                        x2 * k + self.monoid.mul(n, m)
                    })
                    .collect()
            })
            .collect();
        OpSet::new(self.size() * k, ops)
    }

    pub fn is_isomorphic(&self, other: &RightAction) -> bool {
        self.isomorphism(other).is_some()
    }

    pub fn isomorphism(&self, other: &RightAction) -> Option<Vec<usize>> {
        if self.monoid.table_rows() != other.monoid.table_rows() {
            return None;
        }
        isomorphism(&self.op_set(), &other.op_set())
    }

    /// Equivariant maps from the one-point action; these are the fixed points.
    pub fn global_points(&self) -> Vec<usize> {
        let one = RightAction::terminal(&self.monoid);
        MapSearch::new(&one.op_set(), &self.op_set())
            .all()
            .into_iter()
            .map(|f| f[0])
            .collect()
    }
}

impl Acts for RightAction {
    fn size(&self) -> usize {
        self.labels.len()
    }

    fn carrier(&self) -> &[String] {
        &self.labels
    }

    fn op_set(&self) -> OpSet {
        OpSet::new(self.size(), self.operators())
    }
}

impl RightAction {
    pub fn size(&self) -> usize {
        self.labels.len()
    }
}

/// `section` is the orbit map of `point`, `retraction` an equivariant map to
/// the regular action with `retraction ∘ section = id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularRetract {
    pub point: usize,
    pub section: Vec<usize>,
    pub retraction: Vec<usize>,
}

/// A left action `n·x`, stored as a right action of the opposite monoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftAction {
    monoid: FiniteMonoid,
    inner: RightAction,
}

impl LeftAction {
    /// `table[x][n] = n·x`. Checks `1·x = x` and `(mn)·x = m·(n·x)`.
    pub fn new(monoid: FiniteMonoid, labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let inner = RightAction::new(monoid.opposite(), labels, table).map_err(|e| match e {
            Error::ActionAxiom(msg) => Error::ActionAxiom(format!("as a left action: {msg}")),
            other => other,
        })?;
        Ok(LeftAction { monoid, inner })
    }

    pub fn from_fn(monoid: FiniteMonoid, labels: Vec<String>, act: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let table = (0..labels.len())
            .map(|x| monoid.elements().map(|n| act(n, x)).collect())
            .collect();
        Self::new(monoid, labels, table)
    }

    /// The right action of N^op with the same table.
    pub fn from_opposite(inner: RightAction) -> LeftAction {
        LeftAction {
            monoid: inner.monoid().opposite(),
            inner,
        }
    }

    /// N acting on itself by left multiplication.
    pub fn regular(n: &FiniteMonoid) -> LeftAction {
        LeftAction::from_fn(n.clone(), n.labels().to_vec(), |a, x| n.mul(a, x)).expect("regular action")
    }

    pub fn constant(n: &FiniteMonoid, labels: Vec<String>) -> LeftAction {
        LeftAction::from_fn(n.clone(), labels, |_, x| x).expect("constant action")
    }

    pub fn terminal(n: &FiniteMonoid) -> LeftAction {
        LeftAction::constant(n, vec!["*".into()])
    }

    pub fn monoid(&self) -> &FiniteMonoid {
        &self.monoid
    }

    /// The same data as a right action of N^op.
    pub fn as_right_of_opposite(&self) -> &RightAction {
        &self.inner
    }

    #[inline]
    pub fn act(&self, n: usize, x: usize) -> usize {
        self.inner.act(x, n)
    }

    pub fn size(&self) -> usize {
        self.inner.size()
    }

    pub fn label(&self, x: usize) -> &str {
        self.inner.label(x)
    }

    pub fn underlying_set(&self) -> &[String] {
        self.inner.underlying_set()
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.inner.index_of(label)
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.inner.table_rows()
    }

    pub fn operators(&self) -> Vec<Vec<usize>> {
        self.inner.operators()
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        self.inner.fixed_points()
    }

    pub fn components(&self) -> Partition {
        self.inner.components()
    }

    /// {y : for every x there is a left-invertible v with v·x = y}.
    pub fn strong_generators(&self) -> Vec<usize> {
        self.inner.strong_generators()
    }

    pub fn stabilizer(&self, y: usize) -> Vec<usize> {
        self.inner.stabilizer(y)
    }

    pub fn is_locally_constant(&self) -> bool {
        self.inner.is_locally_constant()
    }

    pub fn quotient(&self, p: &Partition) -> Result<LeftAction> {
        Ok(LeftAction::from_opposite(self.inner.quotient(p)?))
    }

    pub fn restrict(&self, subset: &[usize]) -> Result<LeftAction> {
        Ok(LeftAction::from_opposite(self.inner.restrict(subset)?))
    }

    /// ∫^N Y = (∫_{N^op} Y)^op with its projection.
    pub fn category_of_coelements(&self) -> (FiniteCategory, FunctorData) {
        let (cat, proj) = self.inner.category_of_elements();
        (cat.opposite(), proj.opposite())
    }

    /// The three flatness conditions, with a counterexample on failure.
    pub fn is_flat(&self) -> Flatness {
        let n = &self.monoid;
        let size = self.size();
        if size == 0 {
            return Flatness::Fails(FlatnessFailure::Empty);
        }
        for b in 0..size {
            for b2 in b..size {
                let dominated = (0..size).any(|a| {
                    n.elements().any(|x| self.act(x, a) == b) && n.elements().any(|y| self.act(y, a) == b2)
                });
                if !dominated {
                    return Flatness::Fails(FlatnessFailure::NotDominated { b, b2 });
                }
            }
        }
        for c in 0..size {
            for x in n.elements() {
                for y in n.elements() {
                    if x == y || self.act(x, c) != self.act(y, c) {
                        continue;
                    }
                    let refined = (0..size).any(|d| {
                        n.elements()
                            .any(|p| self.act(p, d) == c && n.mul(x, p) == n.mul(y, p))
                    });
                    if !refined {
                        return Flatness::Fails(FlatnessFailure::NotEqualized { c, n: x, n2: y });
                    }
                }
            }
        }
        Flatness::Flat
    }

    pub fn is_isomorphic(&self, other: &LeftAction) -> bool {
        self.monoid.table_rows() == other.monoid.table_rows() && self.inner.is_isomorphic(&other.inner)
    }
}

impl Acts for LeftAction {
    fn size(&self) -> usize {
        self.inner.size()
    }

    fn carrier(&self) -> &[String] {
        self.inner.underlying_set()
    }

    fn op_set(&self) -> OpSet {
        self.inner.op_set()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Flatness {
    Flat,
    Fails(FlatnessFailure),
}

impl Flatness {
    pub fn holds(&self) -> bool {
        matches!(self, Flatness::Flat)
    }
}

/// Which flatness condition fails, with the offending elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlatnessFailure {
    Empty,
    /// no a, n, n′ with n·a = b and n′·a = b2
    NotDominated { b: usize, b2: usize },
    /// n·c = n2·c but no d, p with p·d = c and np = n2·p
    NotEqualized { c: usize, n: usize, n2: usize },
}

/// Compatible left N- and right M-actions on one carrier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiAction {
    left: LeftAction,
    right: RightAction,
}

impl BiAction {
    /// `left_table[x][n] = n·x`, `right_table[x][m] = x·m`.
    pub fn new(
        left_monoid: FiniteMonoid,
        right_monoid: FiniteMonoid,
        labels: Vec<String>,
        left_table: Vec<Vec<usize>>,
        right_table: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let left = LeftAction::new(left_monoid, labels.clone(), left_table)?;
        let right = RightAction::new(right_monoid, labels, right_table)?;
        Self::from_actions(left, right)
    }

    pub fn from_actions(left: LeftAction, right: RightAction) -> Result<Self> {
        if left.underlying_set() != right.underlying_set() {
            return Err(Error::ActionAxiom("left and right carriers differ".into()));
        }
        for x in 0..left.size() {
            for n in left.monoid().elements() {
                for m in right.monoid().elements() {
                    if right.act(left.act(n, x), m) != left.act(n, right.act(x, m)) {
                        return Err(Error::ActionAxiom(format!(
                            "({n}·{x})·{m} ≠ {n}·({x}·{m})",
                            n = left.monoid().label(n),
                            x = left.label(x),
                            m = right.monoid().label(m)
                        )));
                    }
                }
            }
        }
        Ok(BiAction { left, right })
    }

    /// N acting on itself on both sides.
    pub fn regular(n: &FiniteMonoid) -> BiAction {
        BiAction::from_actions(LeftAction::regular(n), RightAction::regular(n)).expect("regular biaction")
    }

    pub fn left_monoid(&self) -> &FiniteMonoid {
        self.left.monoid()
    }

    pub fn right_monoid(&self) -> &FiniteMonoid {
        self.right.monoid()
    }

    pub fn left(&self) -> &LeftAction {
        &self.left
    }

    pub fn right(&self) -> &RightAction {
        &self.right
    }

    pub fn size(&self) -> usize {
        self.right.size()
    }

    pub fn label(&self, x: usize) -> &str {
        self.right.label(x)
    }

    pub fn underlying_set(&self) -> &[String] {
        self.right.underlying_set()
    }

    pub fn act_left(&self, n: usize, x: usize) -> usize {
        self.left.act(n, x)
    }

    pub fn act_right(&self, x: usize, m: usize) -> usize {
        self.right.act(x, m)
    }

    /// The (M^op, N^op)-biaction with the sides swapped.
    pub fn opposite(&self) -> BiAction {
        BiAction {
            left: LeftAction::from_opposite(self.right.clone()),
            right: self.left.as_right_of_opposite().clone(),
        }
    }

    /// Sub-biaction on a subset closed under both actions.
    pub fn restrict(&self, subset: &[usize]) -> Result<BiAction> {
        BiAction::from_actions(self.left.restrict(subset)?, self.right.restrict(subset)?)
    }

    pub fn is_isomorphic(&self, other: &BiAction) -> bool {
        self.isomorphism(other).is_some()
    }

    pub fn isomorphism(&self, other: &BiAction) -> Option<Vec<usize>> {
        if self.left_monoid().table_rows() != other.left_monoid().table_rows()
            || self.right_monoid().table_rows() != other.right_monoid().table_rows()
        {
            return None;
        }
        isomorphism(&self.op_set(), &other.op_set())
    }
}

impl Acts for BiAction {
    fn size(&self) -> usize {
        self.right.size()
    }

    fn carrier(&self) -> &[String] {
        self.right.underlying_set()
    }

    fn op_set(&self) -> OpSet {
        let mut ops = self.left.operators();
        ops.extend(self.right.operators());
        OpSet::new(self.size(), ops)
    }
}

/// Checked equivariant map between two actions of the same kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantMap {
    pub map: Vec<usize>,
}

impl EquivariantMap {
    pub fn new<A: Acts>(source: &A, target: &A, map: Vec<usize>) -> Result<Self> {
        if source.op_set().is_equivariant(&target.op_set(), &map) {
            Ok(EquivariantMap { map })
        } else {
            Err(Error::ActionAxiom("map does not commute with the action".into()))
        }
    }

    pub fn is_injective(&self) -> bool {
        let s: HashSet<usize> = self.map.iter().copied().collect();
        s.len() == self.map.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn labels(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn fixed_point_examples() {
        assert!(RightAction::regular(&fixtures::c2()).fixed_points().is_empty());
        let c = RightAction::constant(&fixtures::c2(), labels(&["p", "q"]));
        assert_eq!(c.fixed_points(), vec![0, 1]);
        let b2 = RightAction::regular(&fixtures::b2());
        assert_eq!(b2.fixed_points(), vec![1]);
        assert_eq!(b2.global_points(), b2.fixed_points());
    }

    #[test]
    fn component_examples() {
        assert_eq!(RightAction::regular(&fixtures::c2()).components().num_classes(), 1);
        let b2 = RightAction::regular(&fixtures::b2());
        assert_eq!(b2.coproduct(&b2).unwrap().components().num_classes(), 2);
        let t = RightAction::constant(&fixtures::t1(), labels(&["p", "q"]));
        assert_eq!(t.components().num_classes(), 2);
    }

    #[test]
    fn constant_and_underlying() {
        let t = RightAction::constant(&fixtures::c2(), labels(&["p"]));
        assert_eq!(t.fixed_points(), vec![0]);
        assert_eq!(RightAction::regular(&fixtures::b2()).underlying_set(), &labels(&["1", "0"])[..]);
        assert_eq!(RightAction::constant(&fixtures::a2(), vec![]).size(), 0);
    }

    #[test]
    fn flatness_examples() {
        for m in fixtures::all_monoids() {
            assert!(LeftAction::regular(&m).is_flat().holds(), "{}", m.name());
        }
        let c2 = fixtures::c2();
        assert_eq!(
            LeftAction::terminal(&c2).is_flat(),
            Flatness::Fails(FlatnessFailure::NotEqualized { c: 0, n: 0, n2: 1 })
        );
        assert!(LeftAction::terminal(&fixtures::b2()).is_flat().holds());
    }

    #[test]
    fn sub_act_examples() {
        assert_eq!(RightAction::regular(&fixtures::c2()).sub_acts(100).unwrap(), vec![vec![], vec![0, 1]]);
        let mut s = RightAction::regular(&fixtures::b2()).sub_acts(100).unwrap();
        s.sort();
        assert_eq!(s, vec![vec![], vec![0, 1], vec![1]]);
        let c = RightAction::constant(&fixtures::b2(), labels(&["p", "q"]));
        assert_eq!(c.sub_acts(100).unwrap().len(), 4);
        assert!(c.sub_acts(3).unwrap_err().is_cap());
    }

    #[test]
    fn regular_retract_examples() {
        let b2 = fixtures::b2();
        let reg = RightAction::regular(&b2);
        let r = reg.find_regular_retract().unwrap();
        assert_eq!(r.point, 0);
        assert_eq!(r.retraction, vec![0, 1]);
        let pt = RightAction::terminal(&fixtures::c2());
        assert!(pt.find_regular_retract().is_none());
        let x = reg.coproduct(&RightAction::terminal(&b2)).unwrap();
        let r = x.find_regular_retract().unwrap();
        assert_eq!(r.retraction[2], 1, "the point retracts onto 0");
    }

    #[test]
    fn strong_generator_examples() {
        let c3 = RightAction::regular(&fixtures::c3());
        assert_eq!(c3.strong_generators(), vec![0, 1, 2]);
        assert!(RightAction::regular(&fixtures::b2()).strong_generators().is_empty());
        assert_eq!(RightAction::terminal(&fixtures::a2()).strong_generators(), vec![0]);
    }

    #[test]
    fn local_constancy_examples() {
        assert!(RightAction::regular(&fixtures::c3()).is_locally_constant());
        assert!(!RightAction::regular(&fixtures::b2()).is_locally_constant());
        assert!(RightAction::constant(&fixtures::b2(), labels(&["p", "q"])).is_locally_constant());
    }

    #[test]
    fn elements_of_terminal_is_the_monoid() {
        let a2 = fixtures::a2();
        let (cat, proj) = RightAction::terminal(&a2).category_of_elements();
        assert_eq!(cat.num_objects(), 1);
        assert!(cat.endomorphism_monoid(0).is_isomorphic(&a2));
        assert!(proj.is_discrete_fibration());
    }

    #[test]
    fn elements_of_regular_b2() {
        let (cat, proj) = RightAction::regular(&fixtures::b2()).category_of_elements();
        // arrows n: x → y with y·n = x; (0, 0, 1): 1·0 = 0
        assert_eq!(cat.num_arrows(), 4);
        let from0to1 = cat.hom(1, 0);
        assert_eq!(from0to1.len(), 1);
        assert_eq!(cat.arrow(from0to1[0]).label, "0");
        assert!(proj.is_discrete_fibration());
        assert!(!proj.is_discrete_opfibration());
    }

    #[test]
    fn completion_elements_are_idempotent_complete() {
        for m in fixtures::all_monoids() {
            let x = RightAction::regular(&m);
            let (p, _) = x.extend_to_completion();
            let (cat, proj) = p.category_of_elements();
            assert!(cat.is_idempotent_complete().0, "{}", m.name());
            assert!(proj.is_discrete_fibration());
        }
    }

    #[test]
    fn biaction_compatibility_is_checked() {
        let c2 = fixtures::c2();
        // left C2 swaps, right C2 trivial on two points: compatible
        BiAction::new(
            c2.clone(),
            c2.clone(),
            labels(&["p", "q"]),
            vec![vec![0, 1], vec![1, 0]],
            vec![vec![0, 0], vec![1, 1]],
        )
        .unwrap();
        let b2 = fixtures::b2();
        // left B2 collapses to p, right B2 collapses to q: (0·q)·0 = q but 0·(q·0) = p
        let err = BiAction::new(
            b2.clone(),
            b2,
            labels(&["p", "q"]),
            vec![vec![0, 0], vec![1, 0]],
            vec![vec![0, 1], vec![1, 1]],
        )
        .unwrap_err();
        assert!(matches!(err, Error::ActionAxiom(_)));
    }

    #[test]
    fn trivialization_of_group_action() {
        let x = RightAction::regular(&fixtures::c3());
        let psi = x.trivialize_over_regular().unwrap();
        assert!(x.product_with_regular(true).is_equivariant(&x.product_with_regular(false), &psi));
        assert!(RightAction::regular(&fixtures::b2()).trivialize_over_regular().is_none());
    }
}

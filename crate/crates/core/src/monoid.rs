//! Finite monoids given by Cayley tables.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hom::SemigroupHom;

/// Which side an invertibility, factorability or action condition refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Right,
    Left,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Right => Side::Left,
            Side::Left => Side::Right,
        }
    }
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::Right => f.write_str("right"),
            Side::Left => f.write_str("left"),
        }
    }
}

impl std::str::FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "right" => Ok(Side::Right),
            "left" => Ok(Side::Left),
            other => Err(Error::Parse {
                position: 0,
                expected: format!("`right` or `left`, found `{other}`"),
            }),
        }
    }
}

/// A finite monoid. Elements are the indices `0..order()`; labels are only
/// used for input and output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMonoid {
    name: String,
    labels: Vec<String>,
    identity: usize,
    table: Vec<usize>,
}

impl FiniteMonoid {
    /// Builds a monoid from an index table, checking closure, identity and
    /// associativity.
    pub fn from_table(
        name: impl Into<String>,
        labels: Vec<String>,
        identity: usize,
        table: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::MalformedTable("a monoid has at least one element".into()));
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        if identity >= n {
            return Err(Error::MalformedTable(format!("identity index {identity} out of range")));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::MalformedTable(format!("table must be {n}×{n}")));
        }
        let mut flat = Vec::with_capacity(n * n);
        for row in &table {
            for &v in row {
                if v >= n {
                    return Err(Error::MalformedTable(format!("product index {v} out of range")));
                }
                flat.push(v);
            }
        }
        let m = FiniteMonoid {
            name: name.into(),
            labels,
            identity,
            table: flat,
        };
        m.check_axioms()?;
        Ok(m)
    }

    /// Builds a monoid from a labelled table (`raw_table[i][j]` is the label of
    /// `labels[i]·labels[j]`).
    pub fn validate(
        name: impl Into<String>,
        labels: Vec<String>,
        identity: &str,
        raw_table: &[Vec<String>],
    ) -> Result<Self> {
        let index: HashMap<&str, usize> =
            labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let id = *index
            .get(identity)
            .ok_or_else(|| Error::UnknownLabel(identity.to_string()))?;
        let mut table = Vec::with_capacity(raw_table.len());
        for row in raw_table {
            let mut r = Vec::with_capacity(row.len());
            for l in row {
                r.push(*index.get(l.as_str()).ok_or_else(|| Error::UnknownLabel(l.clone()))?);
            }
            table.push(r);
        }
        Self::from_table(name, labels, id, table)
    }

    /// Closure of a multiplication function on `0..n`; used by the
    /// constructors below, which produce associative tables by construction
    /// but are still checked.
    pub fn from_fn(
        name: impl Into<String>,
        labels: Vec<String>,
        identity: usize,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let n = labels.len();
        let table = (0..n).map(|a| (0..n).map(|b| mul(a, b)).collect()).collect();
        Self::from_table(name, labels, identity, table)
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.order();
        let e = self.identity;
        for x in 0..n {
            if self.mul(e, x) != x || self.mul(x, e) != x {
                return Err(Error::BadIdentity {
                    element: self.labels[e].clone(),
                });
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::NonAssociative {
                            a: self.labels[a].clone(),
                            b: self.labels[b].clone(),
                            c: self.labels[c].clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.labels.len() + b]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Labels of a set of elements, for certificates and reports.
    pub fn labels_of<'a>(&self, xs: impl IntoIterator<Item = &'a usize>) -> Vec<String> {
        xs.into_iter().map(|&x| self.labels[x].clone()).collect()
    }

    /// Row-major table of indices.
    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        (0..n).map(|a| (0..n).map(|b| self.mul(a, b)).collect()).collect()
    }

    /// Product of a word of elements (the identity for the empty word).
    pub fn product(&self, word: &[usize]) -> usize {
        word.iter().fold(self.identity, |acc, &x| self.mul(acc, x))
    }

    /// Same elements, transposed table.
    pub fn opposite(&self) -> FiniteMonoid {
        let n = self.order();
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = self.mul(b, a);
            }
        }
        let name = match self.name.strip_suffix("^op") {
            Some(base) => base.to_string(),
            None => format!("{}^op", self.name),
        };
        FiniteMonoid {
            name,
            labels: self.labels.clone(),
            identity: self.identity,
            table,
        }
    }

    pub fn is_commutative(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// `side = Right` gives the right-invertible elements {u : ∃v, uv = 1};
    /// `side = Left` gives {v : ∃u, uv = 1}.
    pub fn invertibles(&self, side: Side) -> Vec<usize> {
        let one = self.identity;
        let out: Vec<usize> = self
            .elements()
            .filter(|&x| {
                self.elements().any(|y| match side {
                    Side::Right => self.mul(x, y) == one,
                    Side::Left => self.mul(y, x) == one,
                })
            })
            .collect();
        // In a finite monoid a one-sided inverse is two-sided.
        debug_assert_eq!(out, self.units_two_sided());
        out
    }

    fn units_two_sided(&self) -> Vec<usize> {
        let one = self.identity;
        self.elements()
            .filter(|&x| {
                self.elements()
                    .any(|y| self.mul(x, y) == one && self.mul(y, x) == one)
            })
            .collect()
    }

    /// Group of units.
    pub fn units(&self) -> Vec<usize> {
        self.invertibles(Side::Right)
    }

    pub fn idempotents(&self) -> Vec<usize> {
        self.elements().filter(|&x| self.mul(x, x) == x).collect()
    }

    pub fn is_idempotent(&self, x: usize) -> bool {
        self.mul(x, x) == x
    }

    pub fn is_group(&self) -> bool {
        self.units().len() == self.order()
    }

    /// Inverse of a unit.
    pub fn inverse(&self, x: usize) -> Option<usize> {
        self.elements()
            .find(|&y| self.mul(x, y) == self.identity && self.mul(y, x) == self.identity)
    }

    /// The submonoid on `elements` with identity `identity` (which need not be
    /// the identity of `self`), together with its inclusion.
    pub fn subsemigroup_with_identity(
        &self,
        name: impl Into<String>,
        elements: &[usize],
        identity: usize,
    ) -> Result<(FiniteMonoid, SemigroupHom)> {
        let mut elems: Vec<usize> = elements.to_vec();
        elems.sort_unstable();
        elems.dedup();
        let pos: HashMap<usize, usize> = elems.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let id = *pos.get(&identity).ok_or_else(|| {
            Error::MalformedTable(format!("{} is not in the subset", self.label(identity)))
        })?;
        let mut table = Vec::with_capacity(elems.len());
        for &a in &elems {
            let mut row = Vec::with_capacity(elems.len());
            for &b in &elems {
                let ab = self.mul(a, b);
                row.push(*pos.get(&ab).ok_or_else(|| {
                    Error::MalformedTable(format!(
                        "subset not closed: {}·{} = {}",
                        self.label(a),
                        self.label(b),
                        self.label(ab)
                    ))
                })?);
            }
            table.push(row);
        }
        let labels = elems.iter().map(|&x| self.labels[x].clone()).collect();
        let sub = FiniteMonoid::from_table(name, labels, id, table)?;
        let incl = SemigroupHom::new(sub.clone(), self.clone(), elems)?;
        Ok((sub, incl))
    }

    /// Submonoid (sharing the identity) on a closed subset.
    pub fn submonoid(&self, name: impl Into<String>, elements: &[usize]) -> Result<(FiniteMonoid, SemigroupHom)> {
        self.subsemigroup_with_identity(name, elements, self.identity)
    }

    /// The corner eNe with identity e, and its inclusion into `self`.
    pub fn corner(&self, e: usize) -> Result<(FiniteMonoid, SemigroupHom)> {
        if !self.is_idempotent(e) {
            return Err(Error::NotIdempotent(self.label(e).to_string()));
        }
        let elems: BTreeSet<usize> = self
            .elements()
            .map(|n| self.mul(self.mul(e, n), e))
            .collect();
        let elems: Vec<usize> = elems.into_iter().collect();
        let name = if e == self.identity {
            self.name.clone()
        } else {
            format!("{}{}{}", self.label(e), self.name, self.label(e))
        };
        self.subsemigroup_with_identity(name, &elems, e)
    }

    /// Decides whether the corner inclusion eNe ⊆ N induces an equivalence of
    /// presheaf toposes: every idempotent d must be a retract of e in the
    /// idempotent completion, i.e. there are r: e → d and s: d → e with
    /// r·s = d.
    pub fn is_morita_corner(&self, e: usize) -> Result<MoritaCertificate> {
        if !self.is_idempotent(e) {
            return Err(Error::NotIdempotent(self.label(e).to_string()));
        }
        let mut witnesses = Vec::new();
        for d in self.idempotents() {
            match self.retract_witness(e, d) {
                Some((r, s)) => witnesses.push(RetractWitness { d, r, s }),
                None => {
                    return Ok(MoritaCertificate {
                        holds: false,
                        witnesses,
                        failing: Some(d),
                    })
                }
            }
        }
        Ok(MoritaCertificate {
            holds: true,
            witnesses,
            failing: None,
        })
    }

    /// r: e̲ → d̲ and s: d̲ → e̲ in the idempotent completion with r∘s = id_d̲.
    pub(crate) fn retract_witness(&self, e: usize, d: usize) -> Option<(usize, usize)> {
        for r in self.elements() {
            if self.mul(r, e) != r || self.mul(d, r) != r {
                continue;
            }
            for s in self.elements() {
                if self.mul(s, d) == s && self.mul(e, s) == s && self.mul(r, s) == d {
                    return Some((r, s));
                }
            }
        }
        None
    }

    /// Cyclic group of order n, elements `1, g, g2, ...`.
    pub fn cyclic(n: usize) -> FiniteMonoid {
        assert!(n >= 1);
        let labels = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "g".to_string(),
                k => format!("g{k}"),
            })
            .collect();
        FiniteMonoid::from_fn(format!("C{n}"), labels, 0, |a, b| (a + b) % n)
            .expect("cyclic group table is valid")
    }

    /// Direct product, elements labelled `(a,b)` in lexicographic order.
    pub fn direct_product(&self, other: &FiniteMonoid) -> FiniteMonoid {
        let m = other.order();
        let labels = self
            .elements()
            .flat_map(|a| other.elements().map(move |b| (a, b)))
            .map(|(a, b)| format!("({},{})", self.label(a), other.label(b)))
            .collect();
        let id = self.identity * m + other.identity;
        FiniteMonoid::from_fn(format!("{}x{}", self.name, other.name), labels, id, |x, y| {
            let (a1, b1) = (x / m, x % m);
            let (a2, b2) = (y / m, y % m);
            self.mul(a1, a2) * m + other.mul(b1, b2)
        })
        .expect("product of monoids is a monoid")
    }

    /// The monoid of maps on `0..degree` generated by `generators` under
    /// composition, acting on the right (x·(fg) = (x·f)·g). Elements are in
    /// breadth-first order from the identity.
    pub fn transformation_monoid(
        name: impl Into<String>,
        degree: usize,
        generators: &[Vec<usize>],
        cap: usize,
    ) -> Result<FiniteMonoid> {
        let id: Vec<usize> = (0..degree).collect();
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        index.insert(id, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in generators {
                let composed: Vec<usize> = elems[i].iter().map(|&x| g[x]).collect();
                if !index.contains_key(&composed) {
                    if elems.len() >= cap {
                        return Err(Error::CapExceeded(cap));
                    }
                    index.insert(composed.clone(), elems.len());
                    elems.push(composed.clone());
                    queue.push_back(elems.len() - 1);
                }
            }
        }
        let labels = elems
            .iter()
            .map(|f| f.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(""))
            .collect();
        let n = elems.len();
        let mut table = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                let ab: Vec<usize> = elems[a].iter().map(|&x| elems[b][x]).collect();
                table[a][b] = index[&ab];
            }
        }
        FiniteMonoid::from_table(name, labels, 0, table)
    }

    /// A relabelled copy (labels are presentation-only).
    pub fn relabel(&self, labels: Vec<String>) -> Result<FiniteMonoid> {
        FiniteMonoid::from_table(self.name.clone(), labels, self.identity, self.table_rows())
    }

    /// Brute-force search for an isomorphism `self → other`, returned as the
    /// image of each element.
    pub fn isomorphism(&self, other: &FiniteMonoid) -> Option<Vec<usize>> {
        let n = self.order();
        if n != other.order()
            || self.idempotents().len() != other.idempotents().len()
            || self.units().len() != other.units().len()
        {
            return None;
        }
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        map[self.identity] = other.identity;
        used[other.identity] = true;
        let order: Vec<usize> = self.elements().filter(|&x| x != self.identity).collect();
        if self.iso_extend(other, &order, 0, &mut map, &mut used) {
            Some(map)
        } else {
            None
        }
    }

    fn iso_extend(
        &self,
        other: &FiniteMonoid,
        order: &[usize],
        k: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let x = order[k];
        for y in other.elements() {
            if used[y] {
                continue;
            }
            map[x] = y;
            used[y] = true;
            let consistent = self.elements().all(|a| {
                if map[a] == usize::MAX {
                    return true;
                }
                [(a, x), (x, a)].iter().all(|&(p, q)| {
                    let pq = self.mul(p, q);
                    map[pq] == usize::MAX || map[pq] == other.mul(map[p], map[q])
                })
            });
            if consistent && self.iso_extend(other, order, k + 1, map, used) {
                return true;
            }
            map[x] = usize::MAX;
            used[y] = false;
        }
        false
    }

    pub fn is_isomorphic(&self, other: &FiniteMonoid) -> bool {
        self.isomorphism(other).is_some()
    }
}

impl std::fmt::Display for FiniteMonoid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "{} (order {})", self.name, self.order())?;
        let w = self.labels.iter().map(|l| l.chars().count()).max().unwrap_or(1);
        write!(f, "{:>w$} |", "·")?;
        for l in &self.labels {
            write!(f, " {l:>w$}")?;
        }
        writeln!(f)?;
        for a in self.elements() {
            write!(f, "{:>w$} |", self.labels[a])?;
            for b in self.elements() {
                write!(f, " {:>w$}", self.labels[self.mul(a, b)])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Witness that d̲ is a retract of e̲: r: e̲ → d̲, s: d̲ → e̲, rs = d.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RetractWitness {
    pub d: usize,
    pub r: usize,
    pub s: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoritaCertificate {
    pub holds: bool,
    pub witnesses: Vec<RetractWitness>,
    pub failing: Option<usize>,
}

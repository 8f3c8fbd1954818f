//! Semigroup homomorphisms between finite monoids.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::monoid::FiniteMonoid;

/// A multiplication-preserving map `domain → codomain`. The identity need not
/// be preserved; its image `e = φ(1)` is always idempotent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupHom {
    domain: FiniteMonoid,
    codomain: FiniteMonoid,
    map: Vec<usize>,
}

impl SemigroupHom {
    pub fn new(domain: FiniteMonoid, codomain: FiniteMonoid, map: Vec<usize>) -> Result<Self> {
        if map.len() != domain.order() {
            return Err(Error::MalformedTable(format!(
                "map has {} entries for a domain of order {}",
                map.len(),
                domain.order()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&y| y >= codomain.order()) {
            return Err(Error::MalformedTable(format!("image index {bad} out of range")));
        }
        for x in domain.elements() {
            for y in domain.elements() {
                if map[domain.mul(x, y)] != codomain.mul(map[x], map[y]) {
                    return Err(Error::NotMultiplicative {
                        x: domain.label(x).to_string(),
                        y: domain.label(y).to_string(),
                    });
                }
            }
        }
        Ok(SemigroupHom {
            domain,
            codomain,
            map,
        })
    }

    /// Builds a hom from `(domain label, codomain label)` pairs covering the domain.
    pub fn from_labels<'a>(
        domain: FiniteMonoid,
        codomain: FiniteMonoid,
        pairs: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Self> {
        let mut map = vec![usize::MAX; domain.order()];
        for (x, y) in pairs {
            let i = domain.index_of(x)?;
            if map[i] != usize::MAX {
                return Err(Error::DuplicateLabel(x.to_string()));
            }
            map[i] = codomain.index_of(y)?;
        }
        if let Some(i) = map.iter().position(|&y| y == usize::MAX) {
            return Err(Error::MalformedTable(format!(
                "no image given for `{}`",
                domain.label(i)
            )));
        }
        Self::new(domain, codomain, map)
    }

    pub fn identity(m: &FiniteMonoid) -> Self {
        SemigroupHom {
            domain: m.clone(),
            codomain: m.clone(),
            map: m.elements().collect(),
        }
    }

    pub fn domain(&self) -> &FiniteMonoid {
        &self.domain
    }

    pub fn codomain(&self) -> &FiniteMonoid {
        &self.codomain
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    /// `e = φ(1)`.
    pub fn image_of_identity(&self) -> usize {
        self.map[self.domain.identity()]
    }

    pub fn is_monoid_hom(&self) -> bool {
        self.image_of_identity() == self.codomain.identity()
    }

    pub fn is_injective(&self) -> bool {
        self.image().len() == self.domain.order()
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() == self.codomain.order()
    }

    /// φ(M) as a sorted set of codomain elements.
    pub fn image(&self) -> Vec<usize> {
        let s: BTreeSet<usize> = self.map.iter().copied().collect();
        s.into_iter().collect()
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &SemigroupHom) -> Result<SemigroupHom> {
        if self.codomain.table_rows() != next.domain.table_rows() {
            return Err(Error::MonoidMismatch(format!(
                "cannot compose {} → {} with {} → {}",
                self.domain.name(),
                self.codomain.name(),
                next.domain.name(),
                next.codomain.name()
            )));
        }
        Ok(SemigroupHom {
            domain: self.domain.clone(),
            codomain: next.codomain.clone(),
            map: self.map.iter().map(|&y| next.map[y]).collect(),
        })
    }

    /// φ^op: M^op → N^op, the same map.
    pub fn opposite(&self) -> SemigroupHom {
        SemigroupHom {
            domain: self.domain.opposite(),
            codomain: self.codomain.opposite(),
            map: self.map.clone(),
        }
    }

    /// `(domain label, codomain label)` pairs in domain order.
    pub fn label_pairs(&self) -> Vec<(String, String)> {
        self.domain
            .elements()
            .map(|x| {
                (
                    self.domain.label(x).to_string(),
                    self.codomain.label(self.map[x]).to_string(),
                )
            })
            .collect()
    }

    /// Same map, with domain and codomain renamed or relabelled copies of
    /// the originals (tables must agree).
    pub fn with_monoids(&self, domain: FiniteMonoid, codomain: FiniteMonoid) -> Result<SemigroupHom> {
        SemigroupHom::new(domain, codomain, self.map.clone())
    }
}

impl std::fmt::Display for SemigroupHom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} → {}:", self.domain.name(), self.codomain.name())?;
        for (x, y) in self.label_pairs() {
            write!(f, " {x}↦{y}")?;
        }
        Ok(())
    }
}

/// Every semigroup homomorphism `m → n`, in lexicographic order of the map.
pub fn all_homs(m: &FiniteMonoid, n: &FiniteMonoid) -> Vec<SemigroupHom> {
    let mut out = Vec::new();
    let mut map = vec![usize::MAX; m.order()];
    extend_hom(m, n, 0, &mut map, &mut out);
    out
}

/// Every monoid homomorphism `m → n`.
pub fn all_monoid_homs(m: &FiniteMonoid, n: &FiniteMonoid) -> Vec<SemigroupHom> {
    all_homs(m, n).into_iter().filter(|h| h.is_monoid_hom()).collect()
}

fn extend_hom(
    m: &FiniteMonoid,
    n: &FiniteMonoid,
    k: usize,
    map: &mut Vec<usize>,
    out: &mut Vec<SemigroupHom>,
) {
    if k == m.order() {
        out.push(SemigroupHom {
            domain: m.clone(),
            codomain: n.clone(),
            map: map.clone(),
        });
        return;
    }
    for y in n.elements() {
        map[k] = y;
        // every product among assigned elements that involves k for the first time
        let ok = (0..=k).all(|p| {
            (0..=k).all(|q| {
                let pq = m.mul(p, q);
                pq > k || (p < k && q < k && pq < k) || map[pq] == n.mul(map[p], map[q])
            })
        });
        if ok {
            extend_hom(m, n, k + 1, map, out);
        }
    }
    map[k] = usize::MAX;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn non_multiplicative_map_is_rejected() {
        // C2 → C2 sending everything to g
        let c2 = fixtures::c2();
        let err = SemigroupHom::new(c2.clone(), c2, vec![1, 1]).unwrap_err();
        assert!(matches!(err, Error::NotMultiplicative { .. }));
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let ms = fixtures::all_monoids();
        for m in ms.iter().filter(|m| m.order() <= 3) {
            for n in ms.iter().filter(|n| n.order() <= 4) {
                let fast = all_homs(m, n);
                let mut brute = Vec::new();
                let k = m.order();
                let total = n.order().pow(k as u32);
                for code in 0..total {
                    let mut c = code;
                    let map: Vec<usize> = (0..k)
                        .map(|_| {
                            let v = c % n.order();
                            c /= n.order();
                            v
                        })
                        .collect();
                    if let Ok(h) = SemigroupHom::new(m.clone(), n.clone(), map) {
                        brute.push(h.as_slice().to_vec());
                    }
                }
                brute.sort();
                let fast: Vec<Vec<usize>> = fast.iter().map(|h| h.as_slice().to_vec()).collect();
                assert_eq!(fast, brute, "{} → {}", m.name(), n.name());
            }
        }
    }

    #[test]
    fn image_of_identity_is_idempotent() {
        for h in fixtures::all_homs_up_to(4) {
            assert!(h.codomain().is_idempotent(h.image_of_identity()));
        }
    }
}

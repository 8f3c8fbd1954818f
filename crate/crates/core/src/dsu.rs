//! Disjoint-set union and congruence saturation over unary operators.
//!
//! Every congruence in this crate (one- or two-sided on a monoid, action
//! congruences on an M-set, the identifications of a tensor product) is the
//! least equivalence containing some generating pairs and closed under a
//! family of unary maps on the carrier. [`saturate`] computes exactly that.

use std::collections::VecDeque;

/// Union-find with path halving. Roots are always the least element of their
/// class so that representatives are reproducible.
#[derive(Clone, Debug)]
pub struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; returns false if they were already merged.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    /// Class index of every element, classes numbered by first occurrence.
    pub fn into_partition(mut self) -> Partition {
        let n = self.len();
        let mut class_of = vec![usize::MAX; n];
        let mut root_class = vec![usize::MAX; n];
        let mut next = 0;
        for (x, class) in class_of.iter_mut().enumerate() {
            let r = self.find(x);
            if root_class[r] == usize::MAX {
                root_class[r] = next;
                next += 1;
            }
            *class = root_class[r];
        }
        Partition {
            class_of,
            num_classes: next,
        }
    }
}

/// A partition of `0..n`, classes numbered in order of their least element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    class_of: Vec<usize>,
    num_classes: usize,
}

impl Partition {
    pub fn discrete(n: usize) -> Self {
        Partition {
            class_of: (0..n).collect(),
            num_classes: n,
        }
    }

    /// Builds a partition from arbitrary class tags, renumbering canonically.
    pub fn from_tags(tags: &[usize]) -> Self {
        let mut dsu = Dsu::new(tags.len());
        let mut first: std::collections::HashMap<usize, usize> = Default::default();
        for (x, &t) in tags.iter().enumerate() {
            match first.get(&t) {
                Some(&y) => {
                    dsu.union(x, y);
                }
                None => {
                    first.insert(t, x);
                }
            }
        }
        dsu.into_partition()
    }

    pub fn len(&self) -> usize {
        self.class_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class_of.is_empty()
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn same(&self, x: usize, y: usize) -> bool {
        self.class_of[x] == self.class_of[y]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.class_of
    }

    /// Members of each class, in increasing order.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_classes];
        for (x, &c) in self.class_of.iter().enumerate() {
            out[c].push(x);
        }
        out
    }

    /// Least element of each class.
    pub fn representatives(&self) -> Vec<usize> {
        let mut reps = vec![usize::MAX; self.num_classes];
        for (x, &c) in self.class_of.iter().enumerate() {
            if reps[c] == usize::MAX {
                reps[c] = x;
            }
        }
        reps
    }

    /// True if every class of `self` lies inside a class of `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        let mut image = vec![usize::MAX; self.num_classes];
        for x in 0..self.len() {
            let c = self.class_of[x];
            let d = other.class_of[x];
            if image[c] == usize::MAX {
                image[c] = d;
            } else if image[c] != d {
                return false;
            }
        }
        true
    }
}

/// Least equivalence on `0..n` containing `pairs` and closed under every map
/// in `ops` (x ~ y implies op(x) ~ op(y)).
///
/// Each successful union of (a, b) enqueues (op(a), op(b)) for every op.
/// Unions that were skipped are implied by earlier ones, whose images were
/// already enqueued, so the result is closed.
pub fn saturate(n: usize, pairs: &[(usize, usize)], ops: &[Vec<usize>]) -> Partition {
    saturate_from(Dsu::new(n), pairs, ops)
}

/// Like [`saturate`] but starting from an existing equivalence that is
/// already closed under `ops`.
pub fn saturate_from(mut dsu: Dsu, pairs: &[(usize, usize)], ops: &[Vec<usize>]) -> Partition {
    let mut queue: VecDeque<(usize, usize)> = pairs.iter().copied().collect();
    while let Some((a, b)) = queue.pop_front() {
        if dsu.union(a, b) {
            for op in ops {
                queue.push_back((op[a], op[b]));
            }
        }
    }
    dsu.into_partition()
}

/// Rebuilds a union-find whose classes are those of `p`.
pub fn dsu_of(p: &Partition) -> Dsu {
    let mut dsu = Dsu::new(p.len());
    let reps = p.representatives();
    for x in 0..p.len() {
        dsu.union(x, reps[p.class_of(x)]);
    }
    dsu
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_pairs_give_discrete() {
        let p = saturate(4, &[], &[]);
        assert_eq!(p, Partition::discrete(4));
    }

    #[test]
    fn saturation_follows_operators() {
        // successor mod 4: merging 0 and 2 forces 1 ~ 3
        let succ = vec![1, 2, 3, 0];
        let p = saturate(4, &[(0, 2)], &[succ]);
        assert_eq!(p.num_classes(), 2);
        assert!(p.same(1, 3));
        assert!(!p.same(0, 1));
    }

    #[test]
    fn from_tags_is_canonical() {
        let p = Partition::from_tags(&[7, 3, 7, 9]);
        assert_eq!(p.as_slice(), &[0, 1, 0, 2]);
        assert_eq!(p.representatives(), vec![0, 1, 3]);
    }
}

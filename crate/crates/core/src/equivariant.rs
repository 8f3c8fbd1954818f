//! Backtracking search for maps commuting with families of unary operators.
//!
//! Actions of every kind (right, left, bi) are presented to the search as an
//! [`OpSet`]: a carrier `0..size` and one map per acting element. A map
//! `f: A → B` is equivariant when `f(op_i(x)) = op_i(f(x))` for every `i`.
//! Assigning `f(x)` forces `f` on the whole orbit of `x`, which the search
//! propagates before branching again.

use std::ops::ControlFlow;

/// A carrier with a list of operators, indexed compatibly between the
/// source and target of a search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpSet {
    pub size: usize,
    pub ops: Vec<Vec<usize>>,
}

impl OpSet {
    pub fn new(size: usize, ops: Vec<Vec<usize>>) -> Self {
        debug_assert!(ops.iter().all(|op| op.len() == size));
        OpSet { size, ops }
    }

    pub fn is_equivariant(&self, target: &OpSet, map: &[usize]) -> bool {
        map.len() == self.size
            && self.ops.len() == target.ops.len()
            && map.iter().all(|&y| y < target.size)
            && self
                .ops
                .iter()
                .zip(&target.ops)
                .all(|(a, b)| (0..self.size).all(|x| map[a[x]] == b[map[x]]))
    }
}

/// Search configuration for equivariant maps `source → target`.
pub struct MapSearch<'a> {
    source: &'a OpSet,
    target: &'a OpSet,
    injective: bool,
    fixed: Vec<(usize, usize)>,
}

impl<'a> MapSearch<'a> {
    pub fn new(source: &'a OpSet, target: &'a OpSet) -> Self {
        assert_eq!(source.ops.len(), target.ops.len(), "operator families differ");
        MapSearch {
            source,
            target,
            injective: false,
            fixed: Vec::new(),
        }
    }

    pub fn injective(mut self, yes: bool) -> Self {
        self.injective = yes;
        self
    }

    /// Requires `f(x) = y`.
    pub fn fix(mut self, x: usize, y: usize) -> Self {
        self.fixed.push((x, y));
        self
    }

    /// Calls `visit` on every solution until it breaks.
    pub fn for_each(&self, mut visit: impl FnMut(&[usize]) -> ControlFlow<()>) {
        let mut st = State {
            map: vec![usize::MAX; self.source.size],
            used: vec![0; self.target.size],
            trail: Vec::new(),
        };
        if self.injective && self.source.size > self.target.size {
            return;
        }
        for &(x, y) in &self.fixed {
            if !self.assign(&mut st, x, y) {
                return;
            }
        }
        let _ = self.branch(&mut st, 0, &mut visit);
    }

    pub fn first(&self) -> Option<Vec<usize>> {
        let mut out = None;
        self.for_each(|m| {
            out = Some(m.to_vec());
            ControlFlow::Break(())
        });
        out
    }

    pub fn all(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        self.for_each(|m| {
            out.push(m.to_vec());
            ControlFlow::Continue(())
        });
        out
    }

    pub fn count(&self) -> usize {
        let mut n = 0;
        self.for_each(|_| {
            n += 1;
            ControlFlow::Continue(())
        });
        n
    }

    fn branch(
        &self,
        st: &mut State,
        from: usize,
        visit: &mut impl FnMut(&[usize]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let Some(x) = (from..self.source.size).find(|&x| st.map[x] == usize::MAX) else {
            return visit(&st.map);
        };
        for y in 0..self.target.size {
            if self.injective && st.used[y] > 0 {
                continue;
            }
            let mark = st.trail.len();
            if self.assign(st, x, y) {
                self.branch(st, x + 1, visit)?;
            }
            st.undo(mark);
        }
        ControlFlow::Continue(())
    }

    /// Sets `f(x) = y` and propagates along every operator. Returns false on
    /// conflict; the trail is left for the caller to undo.
    fn assign(&self, st: &mut State, x: usize, y: usize) -> bool {
        if !st.set(x, y, self.injective) {
            return false;
        }
        let mut stack = vec![x];
        while let Some(a) = stack.pop() {
            let fa = st.map[a];
            for (op_s, op_t) in self.source.ops.iter().zip(&self.target.ops) {
                let (b, fb) = (op_s[a], op_t[fa]);
                match st.map[b] {
                    v if v == usize::MAX => {
                        if !st.set(b, fb, self.injective) {
                            return false;
                        }
                        stack.push(b);
                    }
                    v if v != fb => return false,
                    _ => {}
                }
            }
        }
        true
    }
}

struct State {
    map: Vec<usize>,
    used: Vec<u32>,
    trail: Vec<usize>,
}

impl State {
    fn set(&mut self, x: usize, y: usize, injective: bool) -> bool {
        if self.map[x] != usize::MAX {
            return self.map[x] == y;
        }
        if injective && self.used[y] > 0 {
            return false;
        }
        self.map[x] = y;
        self.used[y] += 1;
        self.trail.push(x);
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let x = self.trail.pop().expect("trail is non-empty");
            self.used[self.map[x]] -= 1;
            self.map[x] = usize::MAX;
        }
    }
}

/// An equivariant bijection, if one exists.
pub fn isomorphism(a: &OpSet, b: &OpSet) -> Option<Vec<usize>> {
    if a.size != b.size || a.ops.len() != b.ops.len() {
        return None;
    }
    MapSearch::new(a, b).injective(true).first()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(a: &OpSet, b: &OpSet, injective: bool) -> usize {
        let total = b.size.pow(a.size as u32);
        (0..total)
            .filter(|&code| {
                let mut c = code;
                let map: Vec<usize> = (0..a.size)
                    .map(|_| {
                        let v = c % b.size;
                        c /= b.size;
                        v
                    })
                    .collect();
                let inj = {
                    let mut s = map.clone();
                    s.sort();
                    s.dedup();
                    s.len() == map.len()
                };
                a.is_equivariant(b, &map) && (!injective || inj)
            })
            .count()
    }

    #[test]
    fn counts_match_brute_force() {
        // cyclic shift on 4 points and on 2 points, plus a collapse
        let a = OpSet::new(4, vec![vec![1, 2, 3, 0], vec![0, 0, 2, 2]]);
        let b = OpSet::new(2, vec![vec![1, 0], vec![0, 0]]);
        let c = OpSet::new(4, vec![vec![1, 2, 3, 0], vec![0, 0, 2, 2]]);
        for (s, t) in [(&a, &b), (&b, &a), (&a, &c), (&b, &b)] {
            for inj in [false, true] {
                assert_eq!(MapSearch::new(s, t).injective(inj).count(), brute(s, t, inj));
            }
        }
    }

    #[test]
    fn fixed_values_are_respected() {
        let a = OpSet::new(3, vec![vec![1, 2, 0]]);
        let maps = MapSearch::new(&a, &a).fix(0, 2).all();
        assert_eq!(maps, vec![vec![2, 0, 1]]);
    }
}

//! Right- and left-factorable submonoid closures.
//!
//! A submonoid S ⊆ M is right-factorable if x ∈ S and xy ∈ S imply y ∈ S,
//! and left-factorable if y ∈ S and xy ∈ S imply x ∈ S.

use serde::Serialize;

use crate::monoid::{FiniteMonoid, Side};

/// Why an element entered the closure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum Rule {
    Seed,
    Identity,
    /// element = x·y with x, y already present
    Product { x: usize, y: usize },
    /// element = y where x and x·y are present
    RightFactor { x: usize, xy: usize },
    /// element = x where y and x·y are present
    LeftFactor { xy: usize, y: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub element: usize,
    pub rule: Rule,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorableClosureResult {
    pub monoid: FiniteMonoid,
    pub seed: Vec<usize>,
    pub side: Side,
    /// Sorted.
    pub closure: Vec<usize>,
    /// Additions in order, when requested.
    pub trace: Option<Vec<TraceStep>>,
}

impl FactorableClosureResult {
    pub fn contains(&self, x: usize) -> bool {
        self.closure.binary_search(&x).is_ok()
    }

    pub fn is_everything(&self) -> bool {
        self.closure.len() == self.monoid.order()
    }
}

/// Smallest submonoid containing `seed` that is factorable on `side`, with a
/// derivation trace.
pub fn factorable_closure(m: &FiniteMonoid, seed: &[usize], side: Side) -> FactorableClosureResult {
    factorable_closure_with(m, seed, side, true)
}

/// As [`factorable_closure`], keeping the trace only if `trace` is set.
pub fn factorable_closure_with(m: &FiniteMonoid, seed: &[usize], side: Side, trace: bool) -> FactorableClosureResult {
    let (closure, steps) = match side {
        Side::Right => right_closure(m, seed, trace),
        Side::Left => {
            let (c, steps) = right_closure(&m.opposite(), seed, trace);
            let steps = steps.map(|s| s.into_iter().map(mirror).collect());
            (c, steps)
        }
    };
    let mut seed: Vec<usize> = seed.to_vec();
    seed.sort_unstable();
    seed.dedup();
    FactorableClosureResult {
        monoid: m.clone(),
        seed,
        side,
        closure,
        trace: steps,
    }
}

/// True iff the closure of `seed` is all of `m`.
pub fn closure_equals_all(m: &FiniteMonoid, seed: &[usize], side: Side) -> bool {
    factorable_closure_with(m, seed, side, false).is_everything()
}

/// A step in the closure over M^op read back in M: x·_op y = y·x.
fn mirror(step: TraceStep) -> TraceStep {
    let rule = match step.rule {
        Rule::Product { x, y } => Rule::Product { x: y, y: x },
        // y entered because x and y·x are in S: a left factor of y·x
        Rule::RightFactor { x, xy } => Rule::LeftFactor { xy, y: x },
        other => other,
    };
    TraceStep { element: step.element, rule }
}

fn right_closure(m: &FiniteMonoid, seed: &[usize], keep_trace: bool) -> (Vec<usize>, Option<Vec<TraceStep>>) {
    let n = m.order();
    let mut member = vec![false; n];
    let mut members: Vec<usize> = Vec::new();
    let mut trace = Vec::new();
    let mut queue = std::collections::VecDeque::new();
    let mut add = |z: usize, rule: Rule, member: &mut Vec<bool>, members: &mut Vec<usize>, queue: &mut std::collections::VecDeque<usize>| {
        if !member[z] {
            member[z] = true;
            members.push(z);
            queue.push_back(z);
            if keep_trace {
                trace.push(TraceStep { element: z, rule });
            }
        }
    };
    let mut sorted_seed = seed.to_vec();
    sorted_seed.sort_unstable();
    sorted_seed.dedup();
    for &t in &sorted_seed {
        add(t, Rule::Seed, &mut member, &mut members, &mut queue);
    }
    add(m.identity(), Rule::Identity, &mut member, &mut members, &mut queue);

    while let Some(z) = queue.pop_front() {
        // products with everything present so far
        let snapshot = members.clone();
        for &s in &snapshot {
            add(m.mul(z, s), Rule::Product { x: z, y: s }, &mut member, &mut members, &mut queue);
            add(m.mul(s, z), Rule::Product { x: s, y: z }, &mut member, &mut members, &mut queue);
        }
        // z as the left factor: z·y present ⟹ y
        for y in m.elements() {
            if member[m.mul(z, y)] {
                add(y, Rule::RightFactor { x: z, xy: m.mul(z, y) }, &mut member, &mut members, &mut queue);
            }
        }
        // z as the product: x present and x·y = z ⟹ y
        for x in 0..n {
            if !member[x] {
                continue;
            }
            for y in m.elements() {
                if m.mul(x, y) == z {
                    add(y, Rule::RightFactor { x, xy: z }, &mut member, &mut members, &mut queue);
                }
            }
        }
    }
    members.sort_unstable();
    (members, keep_trace.then_some(trace))
}

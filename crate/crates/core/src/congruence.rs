//! Congruences on finite monoids and the quotients they define.

use serde::Serialize;

use crate::dsu::{saturate, Partition};
use crate::error::{Error, Result};
use crate::hom::SemigroupHom;
use crate::monoid::FiniteMonoid;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sidedness {
    /// x ∼ y ⟹ zx ∼ zy
    Left,
    /// x ∼ y ⟹ xz ∼ yz
    Right,
    TwoSided,
}

/// An equivalence on the elements of a monoid, compatible with
/// multiplication on the stated side(s).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Congruence {
    partition: Partition,
    sidedness: Sidedness,
}

impl Congruence {
    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn sidedness(&self) -> Sidedness {
        self.sidedness
    }

    pub fn same(&self, x: usize, y: usize) -> bool {
        self.partition.same(x, y)
    }

    pub fn num_classes(&self) -> usize {
        self.partition.num_classes()
    }

    /// Wraps a partition after checking compatibility.
    pub fn from_partition(m: &FiniteMonoid, partition: Partition, sidedness: Sidedness) -> Result<Self> {
        if partition.len() != m.order() {
            return Err(Error::MalformedTable("partition size differs from monoid order".into()));
        }
        for x in m.elements() {
            for y in m.elements().filter(|&y| y > x && partition.same(x, y)) {
                for z in m.elements() {
                    let right = partition.same(m.mul(x, z), m.mul(y, z));
                    let left = partition.same(m.mul(z, x), m.mul(z, y));
                    let ok = match sidedness {
                        Sidedness::Right => right,
                        Sidedness::Left => left,
                        Sidedness::TwoSided => right && left,
                    };
                    if !ok {
                        return Err(Error::WrongSidedness(format!(
                            "{} ∼ {} is not preserved by multiplication with {}",
                            m.label(x),
                            m.label(y),
                            m.label(z)
                        )));
                    }
                }
            }
        }
        Ok(Congruence {
            partition,
            sidedness,
        })
    }

    /// m ∼ m′ ⟺ φ(m) = φ(m′).
    pub fn kernel(phi: &SemigroupHom) -> Congruence {
        Congruence {
            partition: Partition::from_tags(phi.as_slice()),
            sidedness: Sidedness::TwoSided,
        }
    }
}

/// Multiplication operators for the given side: `x ↦ x·z` for right
/// compatibility, `x ↦ z·x` for left.
pub(crate) fn multiplication_ops(m: &FiniteMonoid, sidedness: Sidedness) -> Vec<Vec<usize>> {
    let right = || m.elements().map(|z| m.elements().map(|x| m.mul(x, z)).collect::<Vec<_>>());
    let left = || m.elements().map(|z| m.elements().map(|x| m.mul(z, x)).collect::<Vec<_>>());
    match sidedness {
        Sidedness::Right => right().collect(),
        Sidedness::Left => left().collect(),
        Sidedness::TwoSided => right().chain(left()).collect(),
    }
}

/// Least congruence of the given sidedness containing `pairs`.
pub fn congruence_closure(m: &FiniteMonoid, pairs: &[(usize, usize)], sidedness: Sidedness) -> Congruence {
    let ops = multiplication_ops(m, sidedness);
    Congruence {
        partition: saturate(m.order(), pairs, &ops),
        sidedness,
    }
}

/// The quotient monoid and the projection onto it. Classes are labelled by
/// their least element.
pub fn quotient_by_congruence(m: &FiniteMonoid, sigma: &Congruence) -> Result<(FiniteMonoid, SemigroupHom)> {
    if sigma.sidedness != Sidedness::TwoSided {
        return Err(Error::WrongSidedness(format!(
            "quotient monoid needs a two-sided congruence, got {:?}",
            sigma.sidedness
        )));
    }
    let p = &sigma.partition;
    let reps = p.representatives();
    let labels = reps.iter().map(|&r| m.label(r).to_string()).collect();
    let name = if p.num_classes() == m.order() {
        m.name().to_string()
    } else {
        format!("{}/~", m.name())
    };
    let q = FiniteMonoid::from_fn(name, labels, p.class_of(m.identity()), |a, b| {
        p.class_of(m.mul(reps[a], reps[b]))
    })?;
    let proj = SemigroupHom::new(m.clone(), q.clone(), p.as_slice().to_vec())?;
    Ok((q, proj))
}

//! Conjugacy classes, `K`-classes for `K = Q, R`, and the count of
//! conjugacy classes of cyclic subgroups.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::subgroup::{cyclic_subgroups, Subgroup};
use super::{ElementSet, FiniteGroup};
use crate::arith::numtheory::units_mod;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClassSet {
    /// Classes sorted by least element; each class sorted.
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    /// Number of classes `X` with `X = X^-1`.
    pub real_closed_count: usize,
}

impl ConjugacyClassSet {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FieldTag {
    Rational,
    Real,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KClassSet {
    pub field_tag: FieldTag,
    pub classes: Vec<Vec<usize>>,
}

fn partition_by(n: usize, mut orbit: impl FnMut(usize) -> Vec<usize>) -> (Vec<Vec<usize>>, Vec<usize>) {
    let mut class_of = vec![usize::MAX; n];
    let mut classes = Vec::new();
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let mut cls = orbit(x);
        cls.sort_unstable();
        cls.dedup();
        for &y in &cls {
            class_of[y] = classes.len();
        }
        classes.push(cls);
    }
    (classes, class_of)
}

pub fn conjugacy_classes(g: &FiniteGroup) -> ConjugacyClassSet {
    let (classes, class_of) = partition_by(g.order(), |x| g.elements().map(|t| g.conj(x, t)).collect());
    let real_closed_count = classes
        .iter()
        .filter(|c| class_of[g.inv(c[0])] == class_of[c[0]])
        .count();
    ConjugacyClassSet {
        classes,
        class_of,
        real_closed_count,
    }
}

pub fn k_classes(g: &FiniteGroup, tag: FieldTag) -> KClassSet {
    let cc = conjugacy_classes(g);
    let exponent = g.exponent() as u64;
    let powers: Vec<i64> = match tag {
        FieldTag::Real => vec![1, -1],
        FieldTag::Rational => units_mod(exponent).into_iter().map(|r| r as i64).collect(),
    };
    let (classes, _) = partition_by(g.order(), |x| {
        let mut out = Vec::new();
        for &r in &powers {
            out.extend_from_slice(&cc.classes[cc.class_of[g.pow(x, r)]]);
        }
        out
    });
    KClassSet {
        field_tag: tag,
        classes,
    }
}

/// Conjugacy classes of cyclic subgroups, each as its list of members.
pub fn cyclic_subgroup_classes(g: &FiniteGroup) -> Vec<Vec<Subgroup>> {
    let cyclic = cyclic_subgroups(g);
    let mut seen: HashSet<ElementSet> = HashSet::new();
    let mut out = Vec::new();
    for c in &cyclic {
        if seen.contains(c.set()) {
            continue;
        }
        let mut orbit: Vec<Subgroup> = Vec::new();
        for t in g.elements() {
            let d = c.conjugate(g, t);
            if seen.insert(d.set().clone()) {
                orbit.push(d);
            }
        }
        orbit.sort();
        out.push(orbit);
    }
    out
}

/// The number `d` of conjugacy classes of cyclic subgroups.
pub fn cyclic_subgroup_class_count(g: &FiniteGroup) -> usize {
    cyclic_subgroup_classes(g).len()
}

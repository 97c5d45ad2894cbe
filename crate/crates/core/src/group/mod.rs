//! Finite groups stored as validated multiplication tables.
//!
//! Every group in the crate, whatever its origin, ends up as a
//! [`FiniteGroup`]: elements are the indices `0..order`, kept in construction
//! order, and all set-valued results are reported sorted by index.

pub mod catalog;
pub mod classes;
pub mod iso;
pub mod perm;
pub mod subgroup;

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::numtheory::lcm;
use crate::error::{Error, Result};

pub use catalog::{catalog, catalog_names, catalog_with};
pub use classes::{
    conjugacy_classes, cyclic_subgroup_class_count, k_classes, ConjugacyClassSet, FieldTag,
    KClassSet,
};
pub use iso::{find_epimorphisms_onto_d8, find_isomorphism, is_isomorphic, D8Labeling};
pub use perm::{build_from_permutations, Permutation, PermutationInput};
pub use subgroup::{
    center, centralizer_of_element_set, commutator_subgroup, minimal_normal_subgroups_of_quotient,
    normal_subgroups, normalizer, quotient, subgroups, Quotient, Subgroup,
};

/// Tunable bounds for group construction and enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupOptions {
    /// Largest group a permutation closure or catalog product may produce.
    pub max_order: usize,
    /// Largest group whose full subgroup lattice is enumerated.
    pub subgroup_bound: usize,
    /// Associativity is checked on all triples up to this order and on a
    /// seeded random sample above it.
    pub assoc_exhaustive_bound: usize,
    pub seed: u64,
}

impl Default for GroupOptions {
    fn default() -> Self {
        Self {
            max_order: 512,
            subgroup_bound: 64,
            assoc_exhaustive_bound: 128,
            seed: 0,
        }
    }
}

const ASSOC_SAMPLES: usize = 200_000;

/// Fixed-size bitset over the elements of a group.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet {
    words: Vec<u64>,
    len: usize,
}

impl ElementSet {
    pub fn empty(universe: usize) -> Self {
        Self {
            words: vec![0; universe.div_ceil(64)],
            len: 0,
        }
    }

    pub fn from_iter(universe: usize, items: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(universe);
        for i in items {
            s.insert(i);
        }
        s
    }

    pub fn insert(&mut self, i: usize) -> bool {
        let (w, b) = (i / 64, i % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        if fresh {
            self.words[w] |= 1 << b;
            self.len += 1;
        }
        fresh
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let words: Vec<u64> = self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect();
        let len = words.iter().map(|w| w.count_ones() as usize).sum();
        Self { words, len }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &bits)| {
            (0..64).filter(move |b| bits & (1 << b) != 0).map(move |b| w * 64 + b)
        })
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A finite group given by its complete multiplication table.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
    element_orders: Vec<usize>,
    labels: Option<Vec<String>>,
}

/// Serialized table input: `{"order": n, "table": [[...]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableInput {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
}

/// A group given either by its table or by permutation generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupInput {
    Table(TableInput),
    Permutations(PermutationInput),
}

impl GroupInput {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))
    }

    pub fn build(&self, opts: &GroupOptions) -> Result<FiniteGroup> {
        match self {
            GroupInput::Table(t) => {
                if t.order > opts.max_order {
                    return Err(Error::OrderBoundExceeded {
                        what: "table input",
                        order: t.order,
                        bound: opts.max_order,
                    });
                }
                build_from_table_with(t.order, t.table.clone(), opts)
            }
            GroupInput::Permutations(p) => p.build(opts),
        }
    }
}

/// Validates `table` as a group and returns it.
pub fn build_from_table(order: usize, table: Vec<Vec<usize>>) -> Result<FiniteGroup> {
    build_from_table_with(order, table, &GroupOptions::default())
}

pub fn build_from_table_with(
    order: usize,
    table: Vec<Vec<usize>>,
    opts: &GroupOptions,
) -> Result<FiniteGroup> {
    if order == 0 || table.len() != order || table.iter().any(|r| r.len() != order) {
        return Err(Error::DimensionMismatch {
            order,
            rows: table.len(),
        });
    }
    for (row, r) in table.iter().enumerate() {
        if let Some((col, &value)) = r.iter().enumerate().find(|(_, &v)| v >= order) {
            return Err(Error::EntryOutOfRange { row, col, value });
        }
    }
    check_latin(&table)?;
    let flat: Vec<usize> = table.into_iter().flatten().collect();
    let at = |i: usize, j: usize| flat[i * order + j];

    let identity = (0..order)
        .find(|&e| (0..order).all(|i| at(e, i) == i && at(i, e) == i))
        .ok_or(Error::NoIdentity)?;

    check_associative(order, &flat, opts)?;

    let inverse: Vec<usize> = (0..order)
        .map(|i| {
            (0..order)
                .find(|&j| at(i, j) == identity)
                .expect("latin square row contains the identity")
        })
        .collect();
    let element_orders = (0..order)
        .map(|g| {
            let mut x = g;
            let mut k = 1;
            while x != identity {
                x = at(x, g);
                k += 1;
            }
            k
        })
        .collect();
    Ok(FiniteGroup {
        order,
        table: flat,
        identity,
        inverse,
        element_orders,
        labels: None,
    })
}

fn check_latin(table: &[Vec<usize>]) -> Result<()> {
    let n = table.len();
    let mut seen = vec![usize::MAX; n];
    for (i, row) in table.iter().enumerate() {
        for &v in row {
            if seen[v] == i {
                return Err(Error::NotLatinSquare {
                    axis: "row",
                    index: i,
                    element: v,
                });
            }
            seen[v] = i;
        }
    }
    seen.iter_mut().for_each(|s| *s = usize::MAX);
    for j in 0..n {
        for row in table {
            let v = row[j];
            if seen[v] == j {
                return Err(Error::NotLatinSquare {
                    axis: "column",
                    index: j,
                    element: v,
                });
            }
            seen[v] = j;
        }
    }
    Ok(())
}

fn check_associative(n: usize, t: &[usize], opts: &GroupOptions) -> Result<()> {
    let assoc = |a: usize, b: usize, c: usize| t[t[a * n + b] * n + c] == t[a * n + t[b * n + c]];
    if n <= opts.assoc_exhaustive_bound {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if !assoc(a, b, c) {
                        return Err(Error::NotAssociative { a, b, c });
                    }
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        for _ in 0..ASSOC_SAMPLES {
            let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            if !assoc(a, b, c) {
                return Err(Error::NotAssociative { a, b, c });
            }
        }
    }
    Ok(())
}

impl FiniteGroup {
    /// Attaches display labels; panics if the count is wrong.
    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.order, "one label per element");
        self.labels = Some(labels);
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn inverses(&self) -> &[usize] {
        &self.inverse
    }

    pub fn element_order(&self, g: usize) -> usize {
        self.element_orders[g]
    }

    /// `g^k` for any integer `k`.
    pub fn pow(&self, g: usize, k: i64) -> usize {
        let n = self.element_orders[g] as i64;
        let e = k.rem_euclid(n);
        let mut x = self.identity;
        for _ in 0..e {
            x = self.mul(x, g);
        }
        x
    }

    /// `g^-1 x g`.
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inverse[g], x), g)
    }

    /// `(a, b) = a^-1 b^-1 a b`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inverse[a], self.inverse[b]), self.mul(a, b))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn exponent(&self) -> usize {
        self.element_orders.iter().fold(1, |acc, &o| lcm(acc as u64, o as u64) as usize)
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None if i == self.identity => "1".to_string(),
            None => format!("g{i}"),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Index of the element carrying `label`, if labels are present.
    pub fn find_label(&self, label: &str) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn to_input(&self) -> TableInput {
        TableInput {
            order: self.order,
            table: self.table_rows(),
        }
    }

    /// Re-checks the table invariants (identity, inverses, associativity).
    pub fn verify(&self) -> bool {
        let n = self.order;
        (0..n).all(|i| self.mul(self.identity, i) == i && self.mul(i, self.identity) == i)
            && (0..n).all(|i| self.mul(i, self.inverse[i]) == self.identity)
            && check_associative(n, &self.table, &GroupOptions::default()).is_ok()
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order {})", self.order)
    }
}

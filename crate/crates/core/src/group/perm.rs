//! Permutation groups: closure of a generating set into a table.
//!
//! Products compose left to right: `(p * q)(x) = q(p(x))`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{build_from_table_with, FiniteGroup, GroupOptions};
use crate::error::{Error, Result};

/// A permutation of `0..degree` stored by images.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(pub Vec<usize>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self((0..degree).collect())
    }

    /// Builds a permutation from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Option<Self> {
        let mut img: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= degree || touched[x] {
                    return None;
                }
                touched[x] = true;
                img[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Some(Self(img))
    }

    /// `self` then `other`.
    pub fn then(&self, other: &Self) -> Self {
        Self(self.0.iter().map(|&x| other.0[x]).collect())
    }

    pub fn is_valid(&self) -> bool {
        let mut seen = vec![false; self.0.len()];
        self.0.iter().all(|&x| x < seen.len() && !std::mem::replace(&mut seen[x], true))
    }

    /// Cycle notation on 1-based points, `()` for the identity.
    pub fn cycle_string(&self) -> String {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.0[start] == start {
                continue;
            }
            out.push('(');
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    out.push(',');
                }
                out.push_str(&(x + 1).to_string());
                first = false;
                x = self.0[x];
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

/// Serialized permutation input: `{"degree": d, "generators": [cycles...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermutationInput {
    pub degree: usize,
    pub generators: Vec<Vec<Vec<usize>>>,
}

impl PermutationInput {
    pub fn build(&self, opts: &GroupOptions) -> Result<FiniteGroup> {
        let gens = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, c)| {
                Permutation::from_cycles(self.degree, c).ok_or(Error::NotAPermutation {
                    index: i,
                    degree: self.degree,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        build_from_permutations_with(self.degree, &gens, opts)
    }
}

pub fn build_from_permutations(degree: usize, generators: &[Permutation]) -> Result<FiniteGroup> {
    build_from_permutations_with(degree, generators, &GroupOptions::default())
}

/// Enumerates the closure, orders elements lexicographically by image
/// vector and builds the table. Labels are cycle strings.
pub fn build_from_permutations_with(
    degree: usize,
    generators: &[Permutation],
    opts: &GroupOptions,
) -> Result<FiniteGroup> {
    for (index, p) in generators.iter().enumerate() {
        if p.0.len() != degree || !p.is_valid() {
            return Err(Error::NotAPermutation { index, degree });
        }
    }
    let elems = closure(degree, generators, opts.max_order)?;
    let index: HashMap<&Permutation, usize> = elems.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let table: Vec<Vec<usize>> = elems
        .iter()
        .map(|p| elems.iter().map(|q| index[&p.then(q)]).collect())
        .collect();
    let labels = elems.iter().map(Permutation::cycle_string).collect();
    Ok(build_from_table_with(elems.len(), table, opts)?.with_labels(labels))
}

fn closure(degree: usize, gens: &[Permutation], max_order: usize) -> Result<Vec<Permutation>> {
    let mut seen: std::collections::HashSet<Permutation> = std::collections::HashSet::new();
    let id = Permutation::identity(degree);
    seen.insert(id.clone());
    let mut list = vec![id];
    let mut i = 0;
    while i < list.len() {
        for g in gens {
            let y = list[i].then(g);
            if seen.insert(y.clone()) {
                if list.len() == max_order {
                    return Err(Error::ClosureTooLarge { max_order });
                }
                list.push(y);
            }
        }
        i += 1;
    }
    list.sort();
    Ok(list)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{catalog, is_isomorphic};

    fn cyc(degree: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(degree, &cycles.iter().map(|c| c.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn closures() {
        let c2 = build_from_permutations(2, &[cyc(2, &[&[0, 1]])]).unwrap();
        assert_eq!(c2.order(), 2);
        let d8 = build_from_permutations(4, &[cyc(4, &[&[0, 1, 2, 3]]), cyc(4, &[&[0, 2]])]).unwrap();
        assert_eq!(d8.order(), 8);
        assert!(is_isomorphic(&d8, &catalog("D8").unwrap()).unwrap());
        let s3 = build_from_permutations(3, &[cyc(3, &[&[0, 1]]), cyc(3, &[&[0, 1, 2]])]).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert_eq!(s3.label(s3.identity()), "()");
        assert_eq!(s3.identity(), 0);
    }

    #[test]
    fn closure_bound() {
        let gens = [cyc(6, &[&[0, 1]]), cyc(6, &[&[0, 1, 2, 3, 4, 5]])];
        assert_eq!(
            build_from_permutations(6, &gens).unwrap_err(),
            Error::ClosureTooLarge { max_order: 512 }
        );
    }

    #[test]
    fn rejects_bad_cycles() {
        let input = PermutationInput {
            degree: 3,
            generators: vec![vec![vec![0, 3]]],
        };
        assert!(matches!(
            input.build(&GroupOptions::default()),
            Err(Error::NotAPermutation { index: 0, degree: 3 })
        ));
    }
}

//! Isomorphism testing for small groups by backtracking over images of a
//! generating set, and epimorphisms onto `D8`.

use super::subgroup::{normal_subgroups, quotient, Quotient, Subgroup};
use super::{catalog, FiniteGroup};
use crate::error::{Error, Result};

/// Largest order accepted by [`find_isomorphism`].
pub const ISO_BOUND: usize = 16;

fn small_generating_set(g: &FiniteGroup) -> Vec<usize> {
    let mut by_order: Vec<usize> = g.elements().collect();
    by_order.sort_by_key(|&x| (std::cmp::Reverse(g.element_order(x)), x));
    let mut gens = Vec::new();
    let mut sub = Subgroup::trivial(g);
    for x in by_order {
        if sub.order() == g.order() {
            break;
        }
        if !sub.contains(x) {
            gens.push(x);
            sub = Subgroup::generated(g, &gens);
        }
    }
    gens
}

/// Extends generator images to a map on all of `g`, or `None` if the
/// assignment is not a well-defined homomorphism.
fn extend(g: &FiniteGroup, h: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; g.order()];
    map[g.identity()] = h.identity();
    let mut queue = vec![g.identity()];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        for (&s, &t) in gens.iter().zip(images) {
            let y = g.mul(x, s);
            let img = h.mul(map[x], t);
            if map[y] == usize::MAX {
                map[y] = img;
                queue.push(y);
            } else if map[y] != img {
                return None;
            }
        }
        i += 1;
    }
    Some(map)
}

/// An isomorphism `g -> h` as an element map, if one exists.
pub fn find_isomorphism(g: &FiniteGroup, h: &FiniteGroup) -> Result<Option<Vec<usize>>> {
    for grp in [g, h] {
        if grp.order() > ISO_BOUND {
            return Err(Error::OrderBoundExceeded {
                what: "isomorphism test",
                order: grp.order(),
                bound: ISO_BOUND,
            });
        }
    }
    if g.order() != h.order() {
        return Ok(None);
    }
    let mut og: Vec<usize> = g.elements().map(|x| g.element_order(x)).collect();
    let mut oh: Vec<usize> = h.elements().map(|x| h.element_order(x)).collect();
    og.sort_unstable();
    oh.sort_unstable();
    if og != oh {
        return Ok(None);
    }
    let gens = small_generating_set(g);
    let mut images = Vec::with_capacity(gens.len());
    Ok(search(g, h, &gens, &mut images))
}

fn search(g: &FiniteGroup, h: &FiniteGroup, gens: &[usize], images: &mut Vec<usize>) -> Option<Vec<usize>> {
    if images.len() == gens.len() {
        let map = extend(g, h, gens, images)?;
        let mut hit = vec![false; h.order()];
        for &y in &map {
            if y == usize::MAX || std::mem::replace(&mut hit[y], true) {
                return None;
            }
        }
        return Some(map);
    }
    let want = g.element_order(gens[images.len()]);
    for t in h.elements().filter(|&t| h.element_order(t) == want) {
        images.push(t);
        if let Some(m) = search(g, h, gens, images) {
            return Some(m);
        }
        images.pop();
    }
    None
}

pub fn is_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> Result<bool> {
    Ok(find_isomorphism(g, h)?.is_some())
}

/// A normal subgroup `K` with `G/K` isomorphic to `D8`, with the coset of
/// each `D8` element made explicit.
#[derive(Debug, Clone)]
pub struct D8Labeling {
    pub kernel: Subgroup,
    pub quotient: Quotient,
    /// `coset_of[d]` is the coset index in `quotient` assigned to element
    /// `d` of the catalog `D8`.
    pub coset_of: Vec<usize>,
    d8: FiniteGroup,
}

impl D8Labeling {
    /// Elements of `G` mapping to the `D8` element labelled `label`.
    pub fn preimage(&self, label: &str) -> Vec<usize> {
        let d = self.d8.find_label(label).expect("valid D8 label");
        let c = self.coset_of[d];
        self.quotient
            .projection
            .iter()
            .enumerate()
            .filter(|&(_, &p)| p == c)
            .map(|(x, _)| x)
            .collect()
    }
}

pub fn find_epimorphisms_onto_d8(g: &FiniteGroup) -> Result<Vec<D8Labeling>> {
    let d8 = catalog("D8")?;
    let mut out = Vec::new();
    if g.order() % 8 != 0 {
        return Ok(out);
    }
    for k in normal_subgroups(g)? {
        if g.order() / k.order() != 8 {
            continue;
        }
        let q = quotient(g, &k)?;
        if let Some(map) = find_isomorphism(&d8, &q.group)? {
            out.push(D8Labeling {
                kernel: k,
                quotient: q,
                coset_of: map,
                d8: d8.clone(),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog;

    #[test]
    fn distinguishes_groups_of_order_eight() {
        let names = ["C8", "C2xC4", "E8", "D8", "Q8"];
        for (i, a) in names.iter().enumerate() {
            for (j, b) in names.iter().enumerate() {
                let iso = is_isomorphic(&catalog(a).unwrap(), &catalog(b).unwrap()).unwrap();
                assert_eq!(iso, i == j, "{a} vs {b}");
            }
        }
        assert!(is_isomorphic(&catalog("D6").unwrap(), &catalog("S3").unwrap()).unwrap());
        assert!(is_isomorphic(&catalog("D4").unwrap(), &catalog("C2xC2").unwrap()).unwrap());
        assert!(find_isomorphism(&catalog("C32").unwrap(), &catalog("C32").unwrap()).is_err());
    }

    #[test]
    fn d8_quotients() {
        let d8 = catalog("D8").unwrap();
        let e = find_epimorphisms_onto_d8(&d8).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].kernel.order(), 1);
        assert!(!find_epimorphisms_onto_d8(&catalog("Q16").unwrap()).unwrap().is_empty());
        assert!(find_epimorphisms_onto_d8(&catalog("C16").unwrap()).unwrap().is_empty());
        assert!(find_epimorphisms_onto_d8(&catalog("Q8").unwrap()).unwrap().is_empty());
    }
}

//! Subgroups, the subgroup lattice, normal structure and quotients.

use std::cmp::Ordering;
use std::collections::HashSet;

use super::{ElementSet, FiniteGroup, GroupOptions};
use crate::error::{Error, Result};

/// A subgroup, stored as its sorted member list plus a bitset and a small
/// generating set.
#[derive(Clone, Debug)]
pub struct Subgroup {
    members: Vec<usize>,
    set: ElementSet,
    gens: Vec<usize>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.set == other.set
    }
}

impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.set.hash(state);
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.members.len(), &self.members).cmp(&(other.members.len(), &other.members))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Subgroup {
    /// The subgroup generated by `gens`. Redundant generators are dropped.
    pub fn generated(g: &FiniteGroup, gens: &[usize]) -> Self {
        let mut set = ElementSet::from_iter(g.order(), [g.identity()]);
        let mut members = vec![g.identity()];
        let mut kept = Vec::new();
        for &x in gens {
            if set.contains(x) {
                continue;
            }
            kept.push(x);
            // extend the closure: multiply everything found so far by all kept generators
            let mut i = 0;
            // restart the sweep so old elements meet the new generator
            while i < members.len() {
                let m = members[i];
                for &s in &kept {
                    let y = g.mul(m, s);
                    if set.insert(y) {
                        members.push(y);
                    }
                }
                i += 1;
            }
        }
        members.sort_unstable();
        Self {
            members,
            set,
            gens: kept,
        }
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        Self::generated(g, &[])
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Self::generated(g, &g.elements().collect::<Vec<_>>())
    }

    pub fn cyclic(g: &FiniteGroup, x: usize) -> Self {
        Self::generated(g, &[x])
    }

    /// Validates an explicit member list.
    pub fn from_members(g: &FiniteGroup, members: &[usize]) -> Result<Self> {
        if members.iter().any(|&m| m >= g.order()) {
            return Err(Error::NotASubgroup);
        }
        let set = ElementSet::from_iter(g.order(), members.iter().copied());
        if !set.contains(g.identity()) || g.order() % set.len() != 0 {
            return Err(Error::NotASubgroup);
        }
        for a in set.iter() {
            if !set.contains(g.inv(a)) || set.iter().any(|b| !set.contains(g.mul(a, b))) {
                return Err(Error::NotASubgroup);
            }
        }
        let sub = Self::generated(g, &set.iter().collect::<Vec<_>>());
        debug_assert_eq!(sub.set, set);
        Ok(sub)
    }

    fn from_set(g: &FiniteGroup, set: ElementSet) -> Self {
        Self::generated(g, &set.iter().collect::<Vec<_>>())
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn set(&self) -> &ElementSet {
        &self.set
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn contains(&self, x: usize) -> bool {
        self.set.contains(x)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.set.is_subset(&other.set)
    }

    pub fn intersect(&self, g: &FiniteGroup, other: &Subgroup) -> Subgroup {
        Self::from_set(g, self.set.intersection(&other.set))
    }

    pub fn join(&self, g: &FiniteGroup, other: &Subgroup) -> Subgroup {
        let mut gens = self.gens.clone();
        gens.extend_from_slice(&other.gens);
        Self::generated(g, &gens)
    }

    /// Whether `self` is normal in `ambient` (which must contain it).
    pub fn is_normal_in(&self, g: &FiniteGroup, ambient: &Subgroup) -> bool {
        ambient
            .gens
            .iter()
            .all(|&t| self.gens.iter().all(|&s| self.contains(g.conj(s, t))))
    }

    pub fn is_normal(&self, g: &FiniteGroup) -> bool {
        self.is_normal_in(g, &Subgroup::whole(g))
    }

    /// `x^-1 S x`.
    pub fn conjugate(&self, g: &FiniteGroup, x: usize) -> Subgroup {
        let gens: Vec<usize> = self.gens.iter().map(|&s| g.conj(s, x)).collect();
        Self::generated(g, &gens)
    }

    pub fn is_cyclic(&self, g: &FiniteGroup) -> bool {
        self.members.iter().any(|&x| g.element_order(x) == self.order())
    }

    pub fn is_abelian(&self, g: &FiniteGroup) -> bool {
        self.gens
            .iter()
            .all(|&a| self.gens.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
    }

    /// Right cosets `S x` of `self` in `ambient`, each as the least element
    /// of the coset, listed in increasing order.
    pub fn right_transversal(&self, g: &FiniteGroup, ambient: &Subgroup) -> Vec<usize> {
        let mut seen = ElementSet::empty(g.order());
        let mut reps = Vec::new();
        for &x in &ambient.members {
            if seen.contains(x) {
                continue;
            }
            reps.push(x);
            for &s in &self.members {
                seen.insert(g.mul(s, x));
            }
        }
        reps
    }
}

/// Normal closure of `set` inside `ambient`, i.e. the least subgroup of
/// `ambient` containing `set` and normalised by `ambient`.
pub fn normal_closure_in(g: &FiniteGroup, ambient: &Subgroup, set: &[usize]) -> Subgroup {
    let mut current = Subgroup::generated(g, set);
    loop {
        let extra: Vec<usize> = current
            .gens
            .iter()
            .flat_map(|&s| ambient.gens.iter().map(move |&t| (s, t)))
            .map(|(s, t)| g.conj(s, t))
            .filter(|&y| !current.contains(y))
            .collect();
        if extra.is_empty() {
            return current;
        }
        let mut gens = current.gens.clone();
        gens.extend(extra);
        current = Subgroup::generated(g, &gens);
    }
}

pub fn normal_closure(g: &FiniteGroup, set: &[usize]) -> Subgroup {
    normal_closure_in(g, &Subgroup::whole(g), set)
}

fn check_bound(g: &FiniteGroup, bound: usize, what: &'static str) -> Result<()> {
    if g.order() > bound {
        return Err(Error::OrderBoundExceeded {
            what,
            order: g.order(),
            bound,
        });
    }
    Ok(())
}

/// Distinct cyclic subgroups, sorted.
pub fn cyclic_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for x in g.elements() {
        let c = Subgroup::cyclic(g, x);
        if seen.insert(c.set.clone()) {
            out.push(c);
        }
    }
    out.sort();
    out
}

/// All subgroups of `g`, sorted by order then member list.
pub fn subgroups(g: &FiniteGroup) -> Result<Vec<Subgroup>> {
    subgroups_with(g, &GroupOptions::default())
}

pub fn subgroups_with(g: &FiniteGroup, opts: &GroupOptions) -> Result<Vec<Subgroup>> {
    check_bound(g, opts.subgroup_bound, "subgroup enumeration")?;
    let cyclic = cyclic_subgroups(g);
    let mut seen: HashSet<ElementSet> = cyclic.iter().map(|c| c.set.clone()).collect();
    let mut all = cyclic.clone();
    let mut frontier = cyclic.clone();
    while let Some(s) = frontier.pop() {
        for c in &cyclic {
            if c.is_subgroup_of(&s) {
                continue;
            }
            let j = s.join(g, c);
            if seen.insert(j.set.clone()) {
                all.push(j.clone());
                frontier.push(j);
            }
        }
    }
    all.sort();
    Ok(all)
}

pub fn normal_subgroups(g: &FiniteGroup) -> Result<Vec<Subgroup>> {
    Ok(subgroups(g)?.into_iter().filter(|s| s.is_normal(g)).collect())
}

/// `N_G(S)`.
pub fn normalizer(g: &FiniteGroup, s: &Subgroup) -> Subgroup {
    normalizer_in(g, &Subgroup::whole(g), s)
}

pub fn normalizer_in(g: &FiniteGroup, ambient: &Subgroup, s: &Subgroup) -> Subgroup {
    let members: Vec<usize> = ambient
        .members
        .iter()
        .copied()
        .filter(|&x| s.gens.iter().all(|&y| s.contains(g.conj(y, x))))
        .collect();
    Subgroup::generated(g, &members)
}

/// Elements commuting with every element of `set`.
pub fn centralizer_of_element_set(g: &FiniteGroup, set: &[usize]) -> Subgroup {
    let members: Vec<usize> = g
        .elements()
        .filter(|&x| set.iter().all(|&y| g.mul(x, y) == g.mul(y, x)))
        .collect();
    Subgroup::generated(g, &members)
}

pub fn center(g: &FiniteGroup) -> Subgroup {
    let whole = Subgroup::whole(g);
    centralizer_of_element_set(g, whole.generators())
}

pub fn commutator_subgroup(g: &FiniteGroup) -> Subgroup {
    let whole = Subgroup::whole(g);
    let comms: Vec<usize> = whole
        .gens
        .iter()
        .flat_map(|&a| whole.gens.iter().map(move |&b| (a, b)))
        .map(|(a, b)| g.commutator(a, b))
        .collect();
    // the normal closure of commutators of generators is the derived subgroup
    normal_closure(g, &comms)
}

/// Upper central series `1 = Z_0 < Z_1 < ...`, up to the hypercentre.
pub fn upper_central_series(g: &FiniteGroup) -> Vec<Subgroup> {
    let whole = Subgroup::whole(g);
    let mut series = vec![Subgroup::trivial(g)];
    loop {
        let z = series.last().expect("non-empty");
        let next: Vec<usize> = g
            .elements()
            .filter(|&x| whole.gens.iter().all(|&y| z.contains(g.commutator(x, y))))
            .collect();
        let next = Subgroup::generated(g, &next);
        if next.order() == z.order() {
            return series;
        }
        series.push(next);
    }
}

pub fn is_nilpotent(g: &FiniteGroup) -> bool {
    upper_central_series(g).last().map(Subgroup::order) == Some(g.order())
}

/// Subgroups `D` with `K < D <= H`, `D` normal in `H` and `D/K` minimal
/// normal in `H/K`. Requires `K` normal in `H`.
pub fn minimal_normal_over(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Vec<Subgroup> {
    let mut candidates: Vec<Subgroup> = Vec::new();
    let mut seen = HashSet::new();
    for &x in h.members() {
        if k.contains(x) {
            continue;
        }
        let mut set = k.gens.clone();
        set.push(x);
        let d = normal_closure_in(g, h, &set);
        if seen.insert(d.set.clone()) {
            candidates.push(d);
        }
    }
    let mut minimal: Vec<Subgroup> = candidates
        .iter()
        .filter(|d| {
            !candidates
                .iter()
                .any(|e| e.order() < d.order() && e.is_subgroup_of(d))
        })
        .cloned()
        .collect();
    minimal.sort();
    minimal
}

/// The subgroups `D` of `G` with `N < D`, `D` normal and `D/N` minimal
/// normal in `G/N`.
pub fn minimal_normal_subgroups_of_quotient(g: &FiniteGroup, n: &Subgroup) -> Result<Vec<Subgroup>> {
    if !n.is_normal(g) {
        return Err(Error::NotNormal);
    }
    Ok(minimal_normal_over(g, &Subgroup::whole(g), n))
}

/// A quotient group together with the projection and coset representatives.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: FiniteGroup,
    /// `projection[x]` is the coset index of `x`.
    pub projection: Vec<usize>,
    /// Least element of each coset.
    pub representatives: Vec<usize>,
}

pub fn quotient(g: &FiniteGroup, n: &Subgroup) -> Result<Quotient> {
    if !n.is_normal(g) {
        return Err(Error::NotNormal);
    }
    quotient_of(g, &Subgroup::whole(g), n)
}

/// `H/K` for `K` normal in `H`, as a standalone group.
pub fn quotient_of(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Result<Quotient> {
    if !k.is_subgroup_of(h) || !k.is_normal_in(g, h) {
        return Err(Error::NotNormalInH);
    }
    let reps = k.right_transversal(g, h);
    let mut projection = vec![usize::MAX; g.order()];
    for (i, &r) in reps.iter().enumerate() {
        for &x in k.members() {
            projection[g.mul(x, r)] = i;
        }
    }
    let table: Vec<Vec<usize>> = reps
        .iter()
        .map(|&a| reps.iter().map(|&b| projection[g.mul(a, b)]).collect())
        .collect();
    let labels = reps.iter().map(|&r| g.label(r)).collect();
    let group = super::build_from_table(reps.len(), table)
        .map_err(|e| Error::Invariant(format!("quotient table invalid: {e}")))?
        .with_labels(labels);
    Ok(Quotient {
        group,
        projection,
        representatives: reps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog;

    fn orders(subs: &[Subgroup]) -> Vec<usize> {
        subs.iter().map(Subgroup::order).collect()
    }

    #[test]
    fn lattices_of_small_groups() {
        let c4 = catalog("C4").unwrap();
        assert_eq!(orders(&subgroups(&c4).unwrap()), vec![1, 2, 4]);
        let q8 = catalog("Q8").unwrap();
        let s = subgroups(&q8).unwrap();
        assert_eq!(s.len(), 6);
        assert_eq!(normal_subgroups(&q8).unwrap().len(), 6);
        let s3 = catalog("S3").unwrap();
        assert_eq!(subgroups(&s3).unwrap().len(), 6);
        assert_eq!(normal_subgroups(&s3).unwrap().len(), 3);
        let d8 = catalog("D8").unwrap();
        assert_eq!(subgroups(&d8).unwrap().len(), 10);
    }

    #[test]
    fn centre_normalizer_commutator() {
        let q8 = catalog("Q8").unwrap();
        let z = center(&q8);
        let a2 = q8.find_label("a^2").unwrap();
        let mut expect = vec![q8.identity(), a2];
        expect.sort();
        assert_eq!(z.members(), expect.as_slice());
        let d8 = catalog("D8").unwrap();
        let b = d8.find_label("b").unwrap();
        let nb = normalizer(&d8, &Subgroup::cyclic(&d8, b));
        let mut expect: Vec<usize> = ["1", "b", "a^2", "a^2b"]
            .iter()
            .map(|l| d8.find_label(l).unwrap())
            .collect();
        expect.sort();
        assert_eq!(nb.members(), expect.as_slice());
        assert_eq!(commutator_subgroup(&catalog("C2xC4").unwrap()).order(), 1);
        assert_eq!(commutator_subgroup(&catalog("S4").unwrap()).order(), 12);
    }

    #[test]
    fn quotients_and_minimal_normals() {
        let d8 = catalog("D8").unwrap();
        let a2 = d8.find_label("a^2").unwrap();
        let q = quotient(&d8, &Subgroup::cyclic(&d8, a2)).unwrap();
        assert_eq!(q.group.order(), 4);
        assert!(q.group.is_abelian());
        assert_eq!(q.group.exponent(), 2);
        for x in d8.elements() {
            for y in d8.elements() {
                assert_eq!(q.projection[d8.mul(x, y)], q.group.mul(q.projection[x], q.projection[y]));
            }
        }
        let b = d8.find_label("b").unwrap();
        assert_eq!(quotient(&d8, &Subgroup::cyclic(&d8, b)).unwrap_err(), Error::NotNormal);

        let c4 = catalog("C4").unwrap();
        let m = minimal_normal_subgroups_of_quotient(&c4, &Subgroup::trivial(&c4)).unwrap();
        assert_eq!(orders(&m), vec![2]);
        assert!(minimal_normal_subgroups_of_quotient(&c4, &Subgroup::whole(&c4))
            .unwrap()
            .is_empty());
        let v4 = catalog("C2xC2").unwrap();
        let m = minimal_normal_subgroups_of_quotient(&v4, &Subgroup::trivial(&v4)).unwrap();
        assert_eq!(orders(&m), vec![2, 2, 2]);
    }

    #[test]
    fn from_members_rejects_non_subgroups() {
        let s3 = catalog("S3").unwrap();
        let non: Vec<usize> = vec![s3.identity(), (0..6).find(|&x| s3.element_order(x) == 3).unwrap()];
        assert_eq!(Subgroup::from_members(&s3, &non).unwrap_err(), Error::NotASubgroup);
    }

    #[test]
    fn nilpotency() {
        assert!(is_nilpotent(&catalog("Q16").unwrap()));
        assert!(!is_nilpotent(&catalog("S3").unwrap()));
    }
}

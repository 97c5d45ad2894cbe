//! Simple components of `QG` as symbolic crossed products.
//!
//! A strong Shoda pair `(H, K)` with `N = N_G(K)` gives the component
//! `M_n(Q(zeta_h) * N/H)` with `n = [G:N]` and `h = [H:K]`. The action of
//! `yH` is `zeta_h -> zeta_h^i` where `y x y^-1 = x^i` modulo `K`, and the
//! twisting is read off from `u_a u_b = x^j u_ab` modulo `K` for a fixed set
//! of coset representatives `u_a`.

pub mod classify;
pub mod predicates;

use std::sync::Arc;

use serde::Serialize;

use crate::arith::numtheory::euler_phi;
use crate::error::{Error, Result};
use crate::group::subgroup::{cyclic_subgroups, normalizer};
use crate::group::{cyclic_subgroup_class_count, subgroups, FiniteGroup, Subgroup};
use crate::idempotents::{is_strong_shoda_pair, pci_strongly_monomial, PciSet};
use crate::ring::idempotent_record;

pub use classify::{classify_component, ComponentClassification, ComponentKind, Exceptional, FieldDesc};
pub use predicates::{
    has_exceptional, hfa, higman_finite_units, is_hamiltonian, virtually_free_by_free,
    virtually_free_product_abelian, TriState,
};

/// Action of one coset `yH` of `N/H`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ActionEntry {
    /// The representative `u_a` used for this coset.
    pub representative: usize,
    pub label: String,
    /// `i` with `u_a x u_a^-1 = x^i (mod K)`.
    pub residue: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleComponentDescriptor {
    pub h_subgroup: Subgroup,
    pub k_subgroup: Subgroup,
    /// `[G : N]`.
    pub n: usize,
    /// `[H : K]`.
    pub h: usize,
    /// `|N/H|`.
    pub quotient_order: usize,
    /// The chosen generator `x` of `H/K`.
    pub generator: usize,
    /// One entry per coset of `H` in `N`, the trivial coset first.
    pub action: Vec<ActionEntry>,
    /// `twisting[a][b] = j` with `u_a u_b = x^j u_ab (mod K)`.
    pub twisting: Vec<Vec<u64>>,
    /// Image of the action in `(Z/h)^x`, sorted; its fixed field is the
    /// centre.
    pub center_fixing: Vec<u64>,
    pub center_degree: usize,
    pub dimension: usize,
    /// The stabiliser of the idempotent is trivial.
    pub faithful: bool,
    /// Representatives were taken from a complement of `H/K` in `N/K`.
    pub complement_transversal: bool,
}

impl SimpleComponentDescriptor {
    pub fn twisting_is_trivial(&self) -> bool {
        self.twisting.iter().flatten().all(|&j| j == 0)
    }

    pub fn action_is_faithful(&self) -> bool {
        self.center_fixing.len() == self.quotient_order
    }
}

/// Index `j` in `0..h` with `w = x^j (mod K)`.
fn exponent_mod_k(g: &FiniteGroup, k: &Subgroup, x: usize, h: usize, w: usize) -> Option<u64> {
    let mut p = g.identity();
    for j in 0..h {
        if k.contains(g.mul(w, g.inv(p))) {
            return Some(j as u64);
        }
        p = g.mul(p, x);
    }
    None
}

/// A subgroup `C` with `K <= C <= N`, `C H = N` and `C ∩ H = K`.
fn find_complement(g: &FiniteGroup, n: &Subgroup, h: &Subgroup, k: &Subgroup) -> Result<Option<Subgroup>> {
    let target = k.order() * (n.order() / h.order());
    if target == k.order() {
        return Ok(Some(k.clone()));
    }
    Ok(subgroups(g)?.into_iter().find(|c| {
        c.order() == target
            && k.is_subgroup_of(c)
            && c.is_subgroup_of(n)
            && c.members().iter().filter(|&&y| h.contains(y)).count() == k.order()
    }))
}

/// Descriptor of the component attached to a strong Shoda pair.
pub fn component_from_pair(g: &Arc<FiniteGroup>, h: &Subgroup, k: &Subgroup) -> Result<SimpleComponentDescriptor> {
    let rec = is_strong_shoda_pair(g, h, k);
    let not_strong = || Error::NotStrongPair {
        h: format!("{:?}", h.members()),
        k: format!("{:?}", k.members()),
    };
    if !rec.is_strong() {
        return Err(not_strong());
    }
    let n = normalizer(g, k);
    if rec.centralizer_of_epsilon.as_ref() != Some(&n) {
        return Err(Error::Invariant("Cen_G(epsilon(H,K)) differs from N_G(K)".into()));
    }
    let hk = h.order() / k.order();
    let x = h
        .members()
        .iter()
        .copied()
        .find(|&y| exponent_orders_to(g, k, y) == hk)
        .ok_or_else(not_strong)?;

    let coset_least = h.right_transversal(g, &n);
    let complement = find_complement(g, &n, h, k)?;
    let mut reps: Vec<usize> = coset_least
        .iter()
        .map(|&t| {
            if h.contains(t) {
                return g.identity();
            }
            match &complement {
                Some(c) => *c
                    .members()
                    .iter()
                    .find(|&&y| h.contains(g.mul(y, g.inv(t))))
                    .expect("a complement meets every coset"),
                None => t,
            }
        })
        .collect();
    // trivial coset first
    let first = reps.iter().position(|&r| r == g.identity()).expect("H coset present");
    reps.swap(0, first);
    let q = reps.len();
    let coset_of = |y: usize| -> usize {
        reps.iter()
            .position(|&r| h.contains(g.mul(y, g.inv(r))))
            .expect("every element of N lies in some coset")
    };

    let action: Vec<ActionEntry> = reps
        .iter()
        .map(|&r| {
            let conj = g.mul(g.mul(r, x), g.inv(r));
            let residue = exponent_mod_k(g, k, x, hk, conj).expect("H/K is normal in N/K");
            ActionEntry {
                representative: r,
                label: g.label(r),
                residue,
            }
        })
        .collect();

    let mut twisting = vec![vec![0u64; q]; q];
    for a in 0..q {
        for b in 0..q {
            let prod = g.mul(reps[a], reps[b]);
            let c = coset_of(prod);
            let w = g.mul(prod, g.inv(reps[c]));
            twisting[a][b] = exponent_mod_k(g, k, x, hk, w).expect("u_a u_b u_ab^-1 lies in H");
        }
    }

    // cocycle identity f(a,b) + f(ab,c) = i_a f(b,c) + f(a,bc) (mod h)
    let hm = hk as u64;
    for a in 0..q {
        for b in 0..q {
            let ab = coset_of(g.mul(reps[a], reps[b]));
            for c in 0..q {
                let bc = coset_of(g.mul(reps[b], reps[c]));
                let lhs = (twisting[a][b] + twisting[ab][c]) % hm.max(1);
                let rhs = (action[a].residue * twisting[b][c] + twisting[a][bc]) % hm.max(1);
                if lhs != rhs {
                    return Err(Error::Invariant(format!("twisting fails the cocycle identity at ({a},{b},{c})")));
                }
            }
        }
    }

    let mut center_fixing: Vec<u64> = action.iter().map(|e| e.residue % hm.max(1)).collect();
    if hm == 1 {
        center_fixing = vec![0];
    }
    center_fixing.sort_unstable();
    center_fixing.dedup();
    if center_fixing.len() != q {
        return Err(Error::Invariant("action of N/H is not injective".into()));
    }
    let phi = euler_phi(hk as u64) as usize;
    let index = g.order() / n.order();
    let e = rec.e_idem.as_ref().expect("strong pairs carry e");
    let faithful = idempotent_record(e)?.stabilizer.order() == 1;
    Ok(SimpleComponentDescriptor {
        h_subgroup: h.clone(),
        k_subgroup: k.clone(),
        n: index,
        h: hk,
        quotient_order: q,
        generator: x,
        action,
        twisting,
        center_degree: phi / q,
        center_fixing,
        dimension: index * index * q * phi,
        faithful,
        complement_transversal: complement.is_some(),
    })
}

/// Order of `yK` in `G/K`-style arithmetic inside `N_G(K)`.
fn exponent_orders_to(g: &FiniteGroup, k: &Subgroup, y: usize) -> usize {
    let mut p = y;
    let mut t = 1;
    while !k.contains(p) {
        p = g.mul(p, y);
        t += 1;
    }
    t
}

/// `k_d` for abelian `G`: the number of cyclic subgroups of order `d`, for
/// each `d` that occurs, sorted by `d`. `QG` is then `prod Q(zeta_d)^{k_d}`.
pub fn perlis_walker(g: &FiniteGroup) -> Result<Vec<(u64, usize)>> {
    if !g.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let mut counts: std::collections::BTreeMap<u64, usize> = std::collections::BTreeMap::new();
    for c in cyclic_subgroups(g) {
        *counts.entry(c.order() as u64).or_default() += 1;
    }
    let out: Vec<(u64, usize)> = counts.into_iter().collect();
    let total: u64 = out.iter().map(|&(d, k)| k as u64 * euler_phi(d)).sum();
    if total != g.order() as u64 {
        return Err(Error::Invariant("Perlis-Walker dimensions do not sum to |G|".into()));
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct Component {
    /// The primitive central idempotent `e` with `QGe` this component.
    pub idempotent: crate::ring::RatElement,
    pub descriptor: SimpleComponentDescriptor,
    pub classification: ComponentClassification,
}

/// One classified component per primitive central idempotent, sorted by
/// `(dimension, kind, name)`.
pub fn decomposition_report(g: &Arc<FiniteGroup>) -> Result<Vec<Component>> {
    let pci = pci_strongly_monomial(g)?;
    decomposition_from(g, &pci)
}

pub fn decomposition_from(g: &Arc<FiniteGroup>, pci: &PciSet) -> Result<Vec<Component>> {
    let expected = cyclic_subgroup_class_count(g);
    if !pci.certified_strongly_monomial {
        return Err(Error::IncompletePci {
            found: pci.idempotents.len(),
            expected,
        });
    }
    let mut comps = pci
        .provenance
        .iter()
        .zip(&pci.idempotents)
        .map(|(p, e)| {
            let (h, k) = p.pair(g);
            let descriptor = component_from_pair(g, &h, &k)?;
            let classification = classify_component(&descriptor);
            Ok(Component {
                idempotent: e.clone(),
                descriptor,
                classification,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let dim: usize = comps.iter().map(|c| c.descriptor.dimension).sum();
    if dim != g.order() {
        return Err(Error::Invariant(format!("component dimensions sum to {dim}, not {}", g.order())));
    }
    comps.sort_by(|a, b| {
        (a.descriptor.dimension, a.classification.kind.rank(), &a.classification.name).cmp(&(
            b.descriptor.dimension,
            b.classification.kind.rank(),
            &b.classification.name,
        ))
    });
    Ok(comps)
}

/// Component names with multiplicities, in report order.
pub fn decomposition_multiset(comps: &[Component]) -> Vec<(usize, String)> {
    let mut out: Vec<(usize, String)> = Vec::new();
    for c in comps {
        match out.last_mut() {
            Some((m, name)) if *name == c.classification.name => *m += 1,
            _ => out.push((1, c.classification.name.clone())),
        }
    }
    out
}

/// Text form such as `4Q + M2(Q)`.
pub fn decomposition_string(comps: &[Component]) -> String {
    decomposition_multiset(comps)
        .into_iter()
        .map(|(m, name)| if m == 1 { name } else { format!("{m}{name}") })
        .collect::<Vec<_>>()
        .join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog;

    fn grp(name: &str) -> Arc<FiniteGroup> {
        Arc::new(catalog(name).unwrap())
    }

    fn cyc(g: &FiniteGroup, label: &str) -> Subgroup {
        Subgroup::cyclic(g, g.find_label(label).unwrap())
    }

    #[test]
    fn d8_and_q8_big_components() {
        let d8 = grp("D8");
        let c = component_from_pair(&d8, &cyc(&d8, "a"), &Subgroup::trivial(&d8)).unwrap();
        assert_eq!((c.n, c.h, c.quotient_order), (1, 4, 2));
        assert_eq!(c.action[1].residue, 3);
        assert!(c.twisting_is_trivial());
        assert_eq!(c.dimension, 4);
        assert!(c.faithful);

        let q8 = grp("Q8");
        let c = component_from_pair(&q8, &cyc(&q8, "a"), &Subgroup::trivial(&q8)).unwrap();
        assert_eq!((c.n, c.h, c.quotient_order), (1, 4, 2));
        assert_eq!(c.action[1].residue, 3);
        assert_eq!(c.twisting[1][1], 2);
        assert!(!c.complement_transversal);
    }

    #[test]
    fn abelian_field_component() {
        let c6 = grp("C6");
        let c = component_from_pair(&c6, &Subgroup::whole(&c6), &Subgroup::trivial(&c6)).unwrap();
        assert_eq!((c.n, c.h, c.quotient_order, c.dimension), (1, 6, 1, 2));
        assert!(c.action.len() == 1 && c.twisting == vec![vec![0]]);
    }

    #[test]
    fn perlis_walker_examples() {
        assert_eq!(perlis_walker(&grp("C5")).unwrap(), vec![(1, 1), (5, 1)]);
        assert_eq!(perlis_walker(&grp("C4")).unwrap(), vec![(1, 1), (2, 1), (4, 1)]);
        assert_eq!(perlis_walker(&grp("C2xC2")).unwrap(), vec![(1, 1), (2, 3)]);
        assert!(perlis_walker(&grp("S3")).is_err());
    }

    #[test]
    fn small_decompositions() {
        assert_eq!(decomposition_string(&decomposition_report(&grp("C2")).unwrap()), "2Q");
        assert_eq!(decomposition_string(&decomposition_report(&grp("S3")).unwrap()), "2Q + M2(Q)");
        assert_eq!(decomposition_string(&decomposition_report(&grp("C4")).unwrap()), "2Q + Q(i)");
        assert_eq!(
            decomposition_string(&decomposition_report(&grp("Q16")).unwrap()),
            "4Q + M2(Q) + H(Q(sqrt(2)))"
        );
    }
}

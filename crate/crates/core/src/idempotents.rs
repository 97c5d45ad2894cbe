//! Primitive central idempotents of `QG` from (strong) Shoda pairs.
//!
//! For `K` normal in `H`, `epsilon(H, K)` is `H^` when `H = K` and otherwise
//! the product of `K^ - D^` over the minimal normal subgroups `D/K` of
//! `H/K`. For a strong Shoda pair, `e(G, H, K)` sums the conjugates of
//! `epsilon(H, K)` over a right transversal of its centraliser, which is
//! `N_G(K)`.

use std::collections::HashSet;
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::numtheory::prime_divisors;
use crate::error::{Error, Result};
use crate::group::subgroup::{minimal_normal_over, normalizer};
use crate::group::{cyclic_subgroup_class_count, subgroups, ElementSet, FiniteGroup, Subgroup};
use crate::ring::{group_sum_hat, RatElement};

/// Verdicts for the Shoda conditions (S1-S3) and the strong ones (SS1-SS3).
#[derive(Debug, Clone)]
pub struct ShodaPairRecord {
    pub h: Subgroup,
    pub k: Subgroup,
    pub s1: bool,
    pub s2: bool,
    pub s3: bool,
    pub ss1: bool,
    pub ss2: bool,
    pub ss3: bool,
    /// `epsilon(H, K)`, present whenever `K` is normal in `H`.
    pub epsilon: Option<RatElement>,
    /// `e(G, H, K)`, present for strong pairs.
    pub e_idem: Option<RatElement>,
    pub centralizer_of_epsilon: Option<Subgroup>,
}

impl ShodaPairRecord {
    pub fn is_shoda(&self) -> bool {
        self.s1 && self.s2 && self.s3
    }

    pub fn is_strong(&self) -> bool {
        self.ss1 && self.ss2 && self.ss3
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    /// `epsilon(G, N)` with `G/N` cyclic.
    AbelianEpsilon { n: Subgroup },
    StrongShoda { h: Subgroup, k: Subgroup },
}

impl Provenance {
    /// The pair `(H, K)` the idempotent comes from; for the abelian
    /// construction this is `(G, N)`.
    pub fn pair(&self, g: &FiniteGroup) -> (Subgroup, Subgroup) {
        match self {
            Provenance::AbelianEpsilon { n } => (Subgroup::whole(g), n.clone()),
            Provenance::StrongShoda { h, k } => (h.clone(), k.clone()),
        }
    }
}

#[derive(Debug, Clone)]
pub struct PciSet {
    pub idempotents: Vec<RatElement>,
    pub provenance: Vec<Provenance>,
    /// Orthogonal, central and summing to 1.
    pub complete: bool,
    /// `complete` and the count equals the number `d` of conjugacy classes
    /// of cyclic subgroups.
    pub certified_strongly_monomial: bool,
}

fn check_normal_in(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Result<()> {
    if !k.is_subgroup_of(h) || !k.is_normal_in(g, h) {
        return Err(Error::NotNormalInH);
    }
    Ok(())
}

/// `epsilon(H, K)` in `QG`.
pub fn epsilon(g: &Arc<FiniteGroup>, h: &Subgroup, k: &Subgroup) -> Result<RatElement> {
    check_normal_in(g, h, k)?;
    let minimal = minimal_normal_over(g, h, k);
    Ok(epsilon_from(g, h, k, &minimal))
}

fn epsilon_from(g: &Arc<FiniteGroup>, h: &Subgroup, k: &Subgroup, minimal: &[Subgroup]) -> RatElement {
    if h == k {
        return group_sum_hat(g, h);
    }
    let k_hat = group_sum_hat(g, k);
    minimal
        .iter()
        .fold(RatElement::one(g), |acc, d| &acc * &(&k_hat - &group_sum_hat(g, d)))
}

/// Element of `H` generating `H/K`, least index first, if `H/K` is cyclic.
fn cyclic_generator(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Option<usize> {
    let index = h.order() / k.order();
    h.members().iter().copied().find(|&x| {
        prime_divisors(index as u64)
            .into_iter()
            .all(|p| !k.contains(g.pow(x, (index as u64 / p) as i64)))
    })
}

/// Minimal normal subgroups of a cyclic `H/K` generated by `x K`.
fn cyclic_minimal(g: &FiniteGroup, k: &Subgroup, x: usize, index: usize) -> Vec<Subgroup> {
    let mut out: Vec<Subgroup> = prime_divisors(index as u64)
        .into_iter()
        .map(|p| {
            let mut gens = k.generators().to_vec();
            gens.push(g.pow(x, (index as u64 / p) as i64));
            Subgroup::generated(g, &gens)
        })
        .collect();
    out.sort();
    out
}

/// Fills the Shoda conditions (S1-S3); the strong conditions are evaluated
/// as well so one record answers both questions.
pub fn is_shoda_pair(g: &Arc<FiniteGroup>, h: &Subgroup, k: &Subgroup) -> ShodaPairRecord {
    shoda_record(g, h, k)
}

pub fn is_strong_shoda_pair(g: &Arc<FiniteGroup>, h: &Subgroup, k: &Subgroup) -> ShodaPairRecord {
    shoda_record(g, h, k)
}

fn shoda_record(g: &Arc<FiniteGroup>, h: &Subgroup, k: &Subgroup) -> ShodaPairRecord {
    let s1 = k.is_subgroup_of(h) && k.is_normal_in(g, h);
    let gen = if s1 { cyclic_generator(g, h, k) } else { None };
    let s2 = gen.is_some();
    let s3 = s1
        && g.elements().filter(|&x| !h.contains(x)).all(|x| {
            h.members().iter().any(|&y| {
                let c = g.commutator(y, x);
                h.contains(c) && !k.contains(c)
            })
        });

    let n = normalizer(g, k);
    let ss1 = s1 && h.is_subgroup_of(&n) && h.is_normal_in(g, &n);
    let ss2 = ss1 && gen.is_some_and(|x| maximal_abelian_in_quotient(g, h, k, &n, x));
    let epsilon = s1.then(|| epsilon(g, h, k).expect("K is normal in H"));
    let ss3 = ss2 && orthogonal_outside(g, epsilon.as_ref().expect("present when s1"), &n);

    let centralizer_of_epsilon = epsilon.as_ref().map(|e| centralizer_of(g, e));
    let e_idem = if ss1 && ss2 && ss3 {
        let cen = centralizer_of_epsilon.as_ref().expect("present with epsilon");
        debug_assert_eq!(cen, &n, "Cen_G(epsilon) must equal N_G(K) for strong pairs");
        Some(sum_over_transversal(g, epsilon.as_ref().expect("present"), &cen.right_transversal(g, &Subgroup::whole(g))))
    } else {
        None
    };
    ShodaPairRecord {
        h: h.clone(),
        k: k.clone(),
        s1,
        s2,
        s3,
        ss1,
        ss2,
        ss3,
        epsilon,
        e_idem,
        centralizer_of_epsilon,
    }
}

/// With `H/K` cyclic generated by `x K`: `H/K` is maximal abelian in
/// `N/K` iff no element of `N` outside `H` commutes with `x` modulo `K`.
fn maximal_abelian_in_quotient(g: &FiniteGroup, h: &Subgroup, k: &Subgroup, n: &Subgroup, x: usize) -> bool {
    n.members()
        .iter()
        .filter(|&&y| !h.contains(y))
        .all(|&y| !k.contains(g.commutator(x, y)))
}

/// `epsilon * epsilon^g = 0` for all `g` outside `N`; one representative
/// per right coset of `N` suffices because `N` centralises `epsilon`.
fn orthogonal_outside(g: &Arc<FiniteGroup>, eps: &RatElement, n: &Subgroup) -> bool {
    n.right_transversal(g, &Subgroup::whole(g))
        .into_iter()
        .filter(|&t| !n.contains(t))
        .all(|t| (eps * &eps.conjugate_by(t)).is_zero())
}

fn centralizer_of(g: &Arc<FiniteGroup>, e: &RatElement) -> Subgroup {
    let members: Vec<usize> = g.elements().filter(|&x| e.conjugate_by(x) == *e).collect();
    Subgroup::generated(g, &members)
}

fn sum_over_transversal(g: &Arc<FiniteGroup>, eps: &RatElement, transversal: &[usize]) -> RatElement {
    transversal
        .iter()
        .fold(RatElement::zero(g), |acc, &t| &acc + &eps.conjugate_by(t))
}

/// Random right transversal of `n` in `G` from a seeded generator.
fn random_transversal(g: &FiniteGroup, n: &Subgroup, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    n.right_transversal(g, &Subgroup::whole(g))
        .into_iter()
        .map(|t| g.mul(n.members()[rng.gen_range(0..n.order())], t))
        .collect()
}

/// `e(G, H, K)`, checked to be a central idempotent and independent of the
/// transversal.
pub fn e_from_pair(g: &Arc<FiniteGroup>, h: &Subgroup, k: &Subgroup) -> Result<RatElement> {
    let rec = shoda_record(g, h, k);
    let e = rec.e_idem.ok_or_else(|| Error::NotStrongPair {
        h: format!("{:?}", h.members()),
        k: format!("{:?}", k.members()),
    })?;
    let eps = rec.epsilon.expect("strong pairs carry epsilon");
    let n = rec.centralizer_of_epsilon.expect("strong pairs carry the centraliser");
    let other = sum_over_transversal(g, &eps, &random_transversal(g, &n, 0x5eed));
    if other != e || !e.is_central() || !e.is_idempotent() {
        return Err(Error::Invariant("e(G,H,K) failed verification".into()));
    }
    Ok(e)
}

/// Checks orthogonality, centrality and the sum, filling the flags.
fn finish(g: &Arc<FiniteGroup>, idempotents: Vec<RatElement>, provenance: Vec<Provenance>) -> PciSet {
    let orthogonal = idempotents.iter().enumerate().all(|(i, a)| {
        idempotents[i + 1..].iter().all(|b| (a * b).is_zero() && (b * a).is_zero())
    });
    let central = idempotents.iter().all(|e| e.is_central() && e.is_idempotent());
    let sum = idempotents.iter().fold(RatElement::zero(g), |acc, e| &acc + e);
    let complete = orthogonal && central && sum.is_one();
    let certified = complete && idempotents.len() == cyclic_subgroup_class_count(g);
    PciSet {
        idempotents,
        provenance,
        complete,
        certified_strongly_monomial: certified,
    }
}

/// For abelian `G`: `epsilon(G, N)` over all `N` with `G/N` cyclic.
pub fn pci_abelian(g: &Arc<FiniteGroup>) -> Result<PciSet> {
    if !g.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let whole = Subgroup::whole(g);
    let mut ids = Vec::new();
    let mut prov = Vec::new();
    for n in subgroups(g)? {
        if cyclic_generator(g, &whole, &n).is_some() {
            ids.push(epsilon(g, &whole, &n)?);
            prov.push(Provenance::AbelianEpsilon { n });
        }
    }
    let count = ids.len();
    let mut set = finish(g, ids, prov);
    set.complete &= set.idempotents.len() == count;
    Ok(set)
}

/// Subgroups up to conjugacy, keeping the least member of each class.
fn conjugacy_representatives(g: &FiniteGroup, subs: &[Subgroup]) -> Vec<Subgroup> {
    let mut seen: HashSet<ElementSet> = HashSet::new();
    let mut reps = Vec::new();
    for s in subs {
        if seen.contains(s.set()) {
            continue;
        }
        for t in g.elements() {
            seen.insert(s.conjugate(g, t).set().clone());
        }
        reps.push(s.clone());
    }
    reps
}

/// Candidate pairs passing SS1 and SS2, with `K` up to conjugacy, sorted by
/// `(|H|, |K|, members)`.
fn strong_candidates(g: &FiniteGroup, subs: &[Subgroup]) -> Vec<(Subgroup, Subgroup, usize, Subgroup)> {
    let mut out = Vec::new();
    for k in conjugacy_representatives(g, subs) {
        let n = normalizer(g, &k);
        for h in subs {
            if h.order() % k.order() != 0 || !k.is_subgroup_of(h) || !h.is_subgroup_of(&n) {
                continue;
            }
            if !h.is_normal_in(g, &n) {
                continue;
            }
            let Some(x) = cyclic_generator(g, h, &k) else { continue };
            if maximal_abelian_in_quotient(g, h, &k, &n, x) {
                out.push((h.clone(), k.clone(), x, n.clone()));
            }
        }
    }
    out.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
    out
}

/// Primitive central idempotents from strong Shoda pairs. Stops once `d`
/// distinct idempotents are found; returns a partial set flagged incomplete
/// when the group is not strongly monomial.
pub fn pci_strongly_monomial(g: &Arc<FiniteGroup>) -> Result<PciSet> {
    let subs = subgroups(g)?;
    let d = cyclic_subgroup_class_count(g);
    let whole = Subgroup::whole(g);
    let mut ids: Vec<RatElement> = Vec::new();
    let mut prov = Vec::new();
    for (h, k, x, n) in strong_candidates(g, &subs) {
        if ids.len() == d {
            break;
        }
        let minimal = cyclic_minimal(g, &k, x, h.order() / k.order());
        let eps = epsilon_from(g, &h, &k, &minimal);
        if !orthogonal_outside(g, &eps, &n) {
            continue;
        }
        let e = sum_over_transversal(g, &eps, &n.right_transversal(g, &whole));
        if !ids.contains(&e) {
            ids.push(e);
            prov.push(Provenance::StrongShoda { h, k });
        }
    }
    Ok(finish(g, ids, prov))
}

/// Sum of a list of idempotents; `1` exactly when a PCI set is complete.
pub fn idempotent_sum(g: &Arc<FiniteGroup>, ids: &[RatElement]) -> RatElement {
    ids.iter().fold(RatElement::zero(g), |acc, e| &acc + e)
}

/// Whether `e` is nonzero and a rational in `(0, 1)` at the identity.
pub fn trace_in_unit_interval(e: &RatElement) -> bool {
    let t = e.trace();
    t > Zero::zero() && t < One::one()
}

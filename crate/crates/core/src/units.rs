//! Units of `ZG` with certified inverses: Bass, alternating, bicyclic and
//! generalized bicyclic units, the trace certificate for free pairs, and
//! the Jespers-Parmenter obstruction.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use crate::arith::numtheory::{gcd, mod_inverse, mod_pow, multiplicative_order};
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::group::subgroup::normalizer;
use crate::group::{find_epimorphisms_onto_d8, FiniteGroup, Subgroup};
use crate::ring::{group_sum_tilde, idempotent_record, IntElement, RatElement};
use crate::wedderburn::{Component, ComponentKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum UnitKind {
    Trivial,
    Bass { g: usize, k: u64, m: u32 },
    Alternating { g: usize, k: u64, m: u32 },
    /// `b(h, g~) = 1 + (1 - g) h g~`.
    BicyclicLeft { h: usize, g: usize },
    /// `b(g~, h) = 1 + g~ h (1 - g)`.
    BicyclicRight { g: usize, h: usize },
    /// `1 + n_e^2 (1 - e) x e` (left) or `1 + n_e^2 e x (1 - e)` (right).
    GenBicyclic { x: usize, side: Side, e: String },
    /// A unit of `Z<g>` averaged along a subnormal series.
    CentralAveraged { g: usize, base: Box<UnitKind> },
}

/// A unit `u` of `ZG` together with `u^-1`. Units are stored normalised:
/// the original unit is `sign * u`.
#[derive(Debug, Clone, PartialEq)]
pub struct CertifiedUnit {
    pub u: IntElement,
    pub u_inv: IntElement,
    pub kind: UnitKind,
    pub sign: i8,
    pub normalized: bool,
}

impl CertifiedUnit {
    /// Checks `u u_inv = u_inv u = 1` and normalises the augmentation.
    pub fn new(u: IntElement, u_inv: IntElement, kind: UnitKind) -> Result<Self> {
        let one = IntElement::one(u.group());
        if u.try_mul(&u_inv)? != one || u_inv.try_mul(&u)? != one {
            return Err(Error::NotAUnit);
        }
        let aug = u.augmentation();
        let (u, u_inv, sign) = if aug == -BigInt::one() {
            (-u, -u_inv, -1)
        } else {
            (u, u_inv, 1)
        };
        Ok(CertifiedUnit {
            normalized: u.augmentation().is_one(),
            u,
            u_inv,
            kind,
            sign,
        })
    }

    /// `u` is `±g` for a group element `g`.
    pub fn is_trivial(&self) -> bool {
        let t = self.u.terms();
        t.len() == 1 && t.values().all(|c| c.abs().is_one())
    }

    pub fn verify(&self) -> bool {
        let one = IntElement::one(self.u.group());
        self.u.try_mul(&self.u_inv).ok().as_ref() == Some(&one) && self.u_inv.try_mul(&self.u).ok().as_ref() == Some(&one)
    }
}

/// `1 + x + ... + x^(k-1)` for a ring element `x`.
fn geometric(x: &IntElement, k: u64) -> IntElement {
    let mut out = IntElement::zero(x.group());
    let mut p = IntElement::one(x.group());
    for _ in 0..k {
        out = &out + &p;
        p = &p * x;
    }
    out
}

/// `u_{k,m}(x) = (1 + ... + x^(k-1))^m + (1 - k^m)/n (1 + ... + x^(n-1))`
/// for `x` with `x^n = 1`.
fn bass_formula(x: &IntElement, n: u64, k: u64, m: u32) -> IntElement {
    let km = BigInt::from(k).pow(m);
    let c = (BigInt::one() - &km) / BigInt::from(n);
    &geometric(x, k).pow(m) + &geometric(x, n).scalar_mul(&c)
}

fn check_bass_params(n: u64, k: u64, m: u32) -> Result<u64> {
    if gcd(k, n) != 1 {
        return Err(Error::BadParameters(format!("gcd({k}, {n}) != 1")));
    }
    if mod_pow(k, m as u64, n) != 1 % n {
        return Err(Error::BadParameters(format!("{k}^{m} is not 1 mod {n}")));
    }
    Ok(k % n)
}

/// `u_{k,m}(x)` with inverse `u_{l,m}(x^k)`, `kl = 1 mod n`, for `x` of
/// multiplicative order dividing `n`. `k` is reduced modulo `n`.
fn bass_on(x: &IntElement, n: u64, k: u64, m: u32, kind: UnitKind) -> Result<CertifiedUnit> {
    let k = check_bass_params(n, k, m)?;
    let one = IntElement::one(x.group());
    if n <= 1 || k == 1 {
        return CertifiedUnit::new(one.clone(), one, kind);
    }
    let l = mod_inverse(k, n).expect("k is a unit mod n");
    let u = bass_formula(x, n, k, m);
    let u_inv = bass_formula(&x.pow(k as u32), n, l, m);
    CertifiedUnit::new(u, u_inv, kind)
}

/// The Bass unit `u_{k,m}(g)`.
pub fn bass_unit(group: &Arc<FiniteGroup>, g: usize, k: u64, m: u32) -> Result<CertifiedUnit> {
    let n = group.element_order(g) as u64;
    bass_on(&IntElement::element(group, g), n, k, m, UnitKind::Bass { g, k: k % n.max(1), m })
}

/// `u_{k,m}(g)` is torsion iff `k = ±1 mod |g|`.
pub fn bass_is_torsion(group: &FiniteGroup, g: usize, k: u64) -> Result<bool> {
    let n = group.element_order(g) as u64;
    if gcd(k, n) != 1 {
        return Err(Error::BadParameters(format!("gcd({k}, {n}) != 1")));
    }
    let r = k % n;
    Ok(n <= 2 || r == 1 || r == n - 1)
}

/// The Bass unit evaluated at `-g`, for `g` of odd order; `k, m` are taken
/// modulo `2|g|`.
pub fn alternating_unit(group: &Arc<FiniteGroup>, g: usize, k: u64, m: u32) -> Result<CertifiedUnit> {
    let n = group.element_order(g);
    if n % 2 == 0 {
        return Err(Error::EvenOrder(n));
    }
    let x = -IntElement::element(group, g);
    let n2 = 2 * n as u64;
    bass_on(&x, n2, k, m, UnitKind::Alternating { g, k: k % n2, m })
}

fn tilde(group: &Arc<FiniteGroup>, g: usize) -> IntElement {
    group_sum_tilde(group, &Subgroup::cyclic(group, g))
}

fn one_minus(group: &Arc<FiniteGroup>, g: usize) -> IntElement {
    &IntElement::one(group) - &IntElement::element(group, g)
}

/// `b(h, g~) = 1 + (1 - g) h g~`; trivial iff `h` normalises `<g>`.
pub fn bicyclic_left(group: &Arc<FiniteGroup>, h: usize, g: usize) -> Result<CertifiedUnit> {
    let a = (&one_minus(group, g) * &IntElement::element(group, h)) * tilde(group, g);
    unipotent(group, a, UnitKind::BicyclicLeft { h, g })
}

/// `b(g~, h) = 1 + g~ h (1 - g)`.
pub fn bicyclic_right(group: &Arc<FiniteGroup>, g: usize, h: usize) -> Result<CertifiedUnit> {
    let a = (&tilde(group, g) * &IntElement::element(group, h)) * one_minus(group, g);
    unipotent(group, a, UnitKind::BicyclicRight { g, h })
}

/// `1 + a` with inverse `1 - a` for `a^2 = 0`.
fn unipotent(group: &Arc<FiniteGroup>, a: IntElement, kind: UnitKind) -> Result<CertifiedUnit> {
    if !(&a * &a).is_zero() {
        return Err(Error::NotSquareZero);
    }
    let one = IntElement::one(group);
    CertifiedUnit::new(&one + &a, &one - &a, kind)
}

/// Whether `b(h, g~)` is trivial, decided group-theoretically.
pub fn bicyclic_is_trivial(group: &FiniteGroup, h: usize, g: usize) -> bool {
    normalizer(group, &Subgroup::cyclic(group, g)).contains(h)
}

/// `1 + n_e^2 (1 - e) x e` (left) or `1 + n_e^2 e x (1 - e)` (right).
pub fn generalized_bicyclic(e: &RatElement, x: usize, side: Side) -> Result<CertifiedUnit> {
    let rec = idempotent_record(e)?;
    let group = e.group().clone();
    let one = RatElement::one(&group);
    let xe = RatElement::element(&group, x);
    let not_e = &one - e;
    let core = match side {
        Side::Left => &(&not_e * &xe) * e,
        Side::Right => &(e * &xe) * &not_e,
    };
    let n2 = Rational::from_integer(&rec.n_e * &rec.n_e);
    let a = core.scale(&n2).to_integer()?;
    unipotent(
        &group,
        a,
        UnitKind::GenBicyclic {
            x,
            side,
            e: e.to_string(),
        },
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct FreePairCertificate {
    pub a: IntElement,
    pub b: IntElement,
    pub trace_value: Rational,
    pub threshold: Rational,
}

/// For `a^2 = b^2 = 0` with `|T(ab)| >= 2 T(1) = 2`, `<1 + a, 1 + b>` is free
/// of rank 2.
pub fn free_pair_certificate(a: &IntElement, b: &IntElement) -> Result<FreePairCertificate> {
    if !(a * a).is_zero() || !(b * b).is_zero() {
        return Err(Error::NotSquareZero);
    }
    let trace_value = Rational::from_integer((a * b).trace());
    let threshold = Rational::from_integer(BigInt::from(2));
    if trace_value.abs() < threshold {
        return Err(Error::TraceBelowThreshold {
            value: trace_value.to_string(),
            threshold: threshold.to_string(),
        });
    }
    Ok(FreePairCertificate {
        a: a.clone(),
        b: b.clone(),
        trace_value,
        threshold,
    })
}

/// `u = b(g, h~)` and `u*` generate a free group of rank 2 when `u` is
/// nontrivial; the certificate has `T(a a*) = 2|h|`.
pub fn marciniak_sehgal_pair(
    group: &Arc<FiniteGroup>,
    g: usize,
    h: usize,
) -> Result<(CertifiedUnit, CertifiedUnit, FreePairCertificate)> {
    let u = bicyclic_left(group, g, h)?;
    if u.u.is_one() {
        return Err(Error::TrivialBicyclic);
    }
    let one = IntElement::one(group);
    let a = &u.u - &one;
    let b = a.star();
    let cert = free_pair_certificate(&a, &b)?;
    let expected = Rational::from_integer(BigInt::from(2 * group.element_order(h)));
    if cert.trace_value != expected {
        return Err(Error::Invariant(format!(
            "T(a a*) = {} but 2|h| = {expected}",
            cert.trace_value
        )));
    }
    let star = CertifiedUnit::new(u.u.star(), u.u_inv.star(), u.kind.clone())?;
    Ok((u, star, cert))
}

/// Bass units `u_{k, ord(k)}(g)` for `1 < k < |g|`, and all nontrivial
/// bicyclic units of both types, deduplicated, in canonical order.
pub fn jespers_leal_generators(group: &Arc<FiniteGroup>) -> Result<Vec<CertifiedUnit>> {
    let mut out: Vec<CertifiedUnit> = Vec::new();
    let mut push = |u: CertifiedUnit| {
        if !u.u.is_one() && !out.iter().any(|v| v.u == u.u) {
            out.push(u);
        }
    };
    for g in group.elements() {
        let n = group.element_order(g) as u64;
        for k in 2..n {
            if gcd(k, n) != 1 {
                continue;
            }
            let m = multiplicative_order(k, n).expect("k is a unit") as u32;
            push(bass_unit(group, g, k, m)?);
        }
    }
    for g in group.elements() {
        for h in group.elements() {
            if !bicyclic_is_trivial(group, h, g) {
                push(bicyclic_left(group, h, g)?);
                push(bicyclic_right(group, g, h)?);
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ObstructionStatus {
    Applies,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionWitness {
    /// Kernel of the epimorphism onto `D8`.
    pub kernel: Vec<usize>,
    /// Reflections of `D8` without a preimage of order 2.
    pub lacking: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JespersParmenter {
    pub status: ObstructionStatus,
    pub is_2_group: bool,
    pub epimorphisms_checked: usize,
    pub witness: Option<ObstructionWitness>,
}

/// For a 2-group `G` mapping onto `D8` such that at least two of
/// `b, ab, a^2b, a^3b` have no preimage of order 2, Bass and bicyclic units
/// do not generate a subgroup of finite index.
///
/// One epimorphism per kernel is examined: automorphisms of `D8` permute
/// the four reflections, so the count does not depend on the choice.
pub fn jespers_parmenter_obstruction(group: &FiniteGroup) -> Result<JespersParmenter> {
    let is_2_group = group.order().is_power_of_two();
    let mut res = JespersParmenter {
        status: ObstructionStatus::NotApplicable,
        is_2_group,
        epimorphisms_checked: 0,
        witness: None,
    };
    if !is_2_group {
        return Ok(res);
    }
    for lab in find_epimorphisms_onto_d8(group)? {
        res.epimorphisms_checked += 1;
        let lacking: Vec<String> = ["b", "ab", "a^2b", "a^3b"]
            .into_iter()
            .filter(|r| !lab.preimage(r).iter().any(|&x| group.element_order(x) == 2))
            .map(str::to_string)
            .collect();
        if lacking.len() >= 2 && res.witness.is_none() {
            res.status = ObstructionStatus::Applies;
            res.witness = Some(ObstructionWitness {
                kernel: lab.kernel.members().to_vec(),
                lacking,
            });
        }
    }
    Ok(res)
}

/// The first `g` (by index) with `g^ e` an idempotent different from `0`
/// and `e` and not central. Requires a noncommutative component.
pub fn find_noncentral_idempotent(group: &Arc<FiniteGroup>, comp: &Component) -> Result<Option<(usize, RatElement)>> {
    if matches!(comp.classification.kind, ComponentKind::Field { .. }) {
        return Err(Error::Precondition("component is commutative".into()));
    }
    let e = &comp.idempotent;
    for g in group.elements() {
        let hat = crate::ring::group_sum_hat(group, &Subgroup::cyclic(group, g));
        let f = &hat * e;
        if !f.is_zero() && f != *e && !f.is_central() {
            return Ok(Some((g, f)));
        }
    }
    Ok(None)
}

/// Largest absolute coefficient, for reports.
pub fn height(u: &IntElement) -> u64 {
    u.max_abs_coeff().to_u64().unwrap_or(u64::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog;
    use crate::wedderburn::decomposition_report;

    fn grp(name: &str) -> Arc<FiniteGroup> {
        Arc::new(catalog(name).unwrap())
    }

    fn el(g: &Arc<FiniteGroup>, terms: &[(&str, i64)]) -> IntElement {
        IntElement::from_terms(g, terms.iter().map(|&(l, c)| (g.find_label(l).unwrap(), BigInt::from(c))))
    }

    #[test]
    fn bass_examples() {
        let c8 = grp("C8");
        let a = c8.find_label("a").unwrap();
        let u = bass_unit(&c8, a, 3, 2).unwrap();
        assert_eq!(u.u, el(&c8, &[("a", 1), ("a^2", 2), ("a^3", 1), ("a^5", -1), ("a^6", -1), ("a^7", -1)]));
        assert!(u.normalized && u.sign == 1);
        let inv2 = bass_unit(&c8, a, 7, 2).unwrap();
        assert_eq!(inv2.u, el(&c8, &[("a^6", 1)]));
        let prod = &bass_unit(&c8, a, 3, 2).unwrap().u * &bass_unit(&c8, a, 3, 2).unwrap().u;
        assert_eq!(prod, bass_unit(&c8, a, 3, 4).unwrap().u);
        assert_eq!(bass_unit(&c8, a, 11, 2).unwrap().u, u.u);
        assert!(bass_unit(&c8, a, 2, 2).is_err());
        assert!(bass_unit(&c8, a, 3, 1).is_err());
        assert!(!bass_is_torsion(&c8, a, 3).unwrap());
        let c5 = grp("C5");
        assert!(bass_is_torsion(&c5, c5.find_label("a").unwrap(), 4).unwrap());
    }

    #[test]
    fn alternating_examples() {
        let c3 = grp("C3");
        let a = c3.find_label("a").unwrap();
        assert!(alternating_unit(&c3, a, 5, 2).unwrap().verify());
        let c5 = grp("C5");
        assert!(alternating_unit(&c5, c5.find_label("a").unwrap(), 3, 4).unwrap().verify());
        assert!(matches!(alternating_unit(&grp("C4"), 1, 3, 2), Err(Error::EvenOrder(4))));
        let triv = alternating_unit(&c3, c3.identity(), 1, 1).unwrap();
        assert!(triv.u.is_one());
    }

    #[test]
    fn bicyclic_d8() {
        let d8 = grp("D8");
        let (a, b) = (d8.find_label("a").unwrap(), d8.find_label("b").unwrap());
        let u = bicyclic_left(&d8, a, b).unwrap();
        assert!(!u.u.is_one());
        assert!(!bicyclic_is_trivial(&d8, a, b));
        for g in d8.elements() {
            for h in d8.elements() {
                let u = bicyclic_left(&d8, h, g).unwrap();
                assert_eq!(u.u.is_one(), bicyclic_is_trivial(&d8, h, g));
            }
        }
        let (_, _, cert) = marciniak_sehgal_pair(&d8, a, b).unwrap();
        assert_eq!(cert.trace_value, Rational::from_integer(BigInt::from(4)));
        assert!(matches!(marciniak_sehgal_pair(&d8, a, a), Err(Error::TrivialBicyclic)));
    }

    #[test]
    fn free_pair_rejects_zero() {
        let d8 = grp("D8");
        let z = IntElement::zero(&d8);
        assert!(matches!(free_pair_certificate(&z, &z), Err(Error::TraceBelowThreshold { .. })));
    }

    #[test]
    fn generalized_bicyclic_cases() {
        let d8 = grp("D8");
        let (a, b, a2) = (d8.find_label("a").unwrap(), d8.find_label("b").unwrap(), d8.find_label("a^2").unwrap());
        let central = (&RatElement::one(&d8) - &RatElement::element(&d8, a2)).scale(&Rational::new(1.into(), 2.into()));
        assert!(generalized_bicyclic(&central, b, Side::Left).unwrap().u.is_one());
        let bhat = crate::ring::group_sum_hat(&d8, &Subgroup::cyclic(&d8, b));
        let u = generalized_bicyclic(&bhat, a, Side::Left).unwrap();
        assert!(!u.u.is_one());
        assert!(generalized_bicyclic(&bhat, a, Side::Right).unwrap().verify());
    }

    #[test]
    fn jespers_leal_small() {
        let q8 = grp("Q8");
        assert!(jespers_leal_generators(&q8).unwrap().iter().all(CertifiedUnit::is_trivial));
        let d8 = grp("D8");
        let gens = jespers_leal_generators(&d8).unwrap();
        let left = gens.iter().filter(|u| matches!(u.kind, UnitKind::BicyclicLeft { .. })).count();
        assert_eq!(left, 4);
    }

    #[test]
    fn jespers_parmenter_examples() {
        assert_eq!(jespers_parmenter_obstruction(&grp("Q16")).unwrap().status, ObstructionStatus::Applies);
        assert_eq!(jespers_parmenter_obstruction(&grp("SD16")).unwrap().status, ObstructionStatus::Applies);
        assert_eq!(jespers_parmenter_obstruction(&grp("D8")).unwrap().status, ObstructionStatus::NotApplicable);
    }

    #[test]
    fn noncentral_idempotents() {
        for (name, found) in [("D8", true), ("Q8", false)] {
            let g = grp(name);
            let comps = decomposition_report(&g).unwrap();
            let big = comps.last().unwrap();
            assert_eq!(find_noncentral_idempotent(&g, big).unwrap().is_some(), found, "{name}");
            assert!(find_noncentral_idempotent(&g, &comps[0]).is_err());
        }
    }
}

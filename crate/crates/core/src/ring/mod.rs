//! Group ring elements `sum r_g g` over `Z`, `Q` or `Q(zeta_n)`.
//!
//! Conjugation follows `alpha^g = g^-1 alpha g`. Fallible methods return
//! [`Result`]; the operator impls panic on mismatched rings and are meant
//! for code that has already checked compatibility.

pub mod idempotent;
pub mod order;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::group::{quotient, FiniteGroup, Quotient, Subgroup};

pub use idempotent::{idempotent_record, IdempotentRecord};
pub use order::{element_order_bruteforce, InfiniteWitness, OrderResult};

/// Coefficient ring of a group ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingTag {
    Int,
    Rat,
    Cyc(u64),
}

impl fmt::Display for RingTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingTag::Int => write!(f, "INT"),
            RingTag::Rat => write!(f, "RAT"),
            RingTag::Cyc(n) => write!(f, "CYC({n})"),
        }
    }
}

impl FromStr for RingTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "INT" => Ok(RingTag::Int),
            "RAT" => Ok(RingTag::Rat),
            _ => s
                .strip_prefix("CYC(")
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|n| n.parse().ok())
                .filter(|&n| n >= 1)
                .map(RingTag::Cyc)
                .ok_or_else(|| Error::InvalidInput(format!("unknown ring tag {s:?}"))),
        }
    }
}

/// Operations a coefficient type needs. Implemented for `BigInt`,
/// [`Rational`] and [`Cyclotomic`].
pub trait Coefficient: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero_for(tag: RingTag) -> Self;
    fn from_i64(tag: RingTag, n: i64) -> Self;
    fn accepts(tag: RingTag) -> bool;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn parse_exact(tag: RingTag, s: &str) -> Result<Self>;

    fn one_for(tag: RingTag) -> Self {
        Self::from_i64(tag, 1)
    }
}

impl Coefficient for BigInt {
    fn zero_for(_: RingTag) -> Self {
        BigInt::zero()
    }
    fn from_i64(_: RingTag, n: i64) -> Self {
        BigInt::from(n)
    }
    fn accepts(tag: RingTag) -> bool {
        tag == RingTag::Int
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn parse_exact(_: RingTag, s: &str) -> Result<Self> {
        s.parse().map_err(|_| Error::InvalidInput(format!("bad integer {s:?}")))
    }
}

impl Coefficient for Rational {
    fn zero_for(_: RingTag) -> Self {
        Rational::zero()
    }
    fn from_i64(_: RingTag, n: i64) -> Self {
        Rational::from_integer(n.into())
    }
    fn accepts(tag: RingTag) -> bool {
        tag == RingTag::Rat
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn parse_exact(_: RingTag, s: &str) -> Result<Self> {
        s.parse().map_err(|_| Error::InvalidInput(format!("bad rational {s:?}")))
    }
}

impl Coefficient for Cyclotomic {
    fn zero_for(tag: RingTag) -> Self {
        match tag {
            RingTag::Cyc(n) => Cyclotomic::zero(n),
            _ => Cyclotomic::zero(1),
        }
    }
    fn from_i64(tag: RingTag, k: i64) -> Self {
        match tag {
            RingTag::Cyc(n) => Cyclotomic::from_integer(n, k),
            _ => Cyclotomic::from_integer(1, k),
        }
    }
    fn accepts(tag: RingTag) -> bool {
        matches!(tag, RingTag::Cyc(_))
    }
    fn is_zero(&self) -> bool {
        Cyclotomic::is_zero(self)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self.try_add(o).expect("cyclotomic conductor mismatch")
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self.try_mul(o).expect("cyclotomic conductor mismatch")
    }
    fn neg_ref(&self) -> Self {
        -self.clone()
    }
    /// Accepts the power-basis list form `[c0; c1; ...]`.
    fn parse_exact(tag: RingTag, s: &str) -> Result<Self> {
        let RingTag::Cyc(n) = tag else {
            return Err(Error::RingMismatch);
        };
        let body = s
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::InvalidInput(format!("bad cyclotomic {s:?}")))?;
        let coeffs = body
            .split(';')
            .map(|c| Rational::parse_exact(RingTag::Rat, c.trim()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Cyclotomic::from_power_coeffs(n, coeffs))
    }
}

/// An element of `RG`, sparse, never storing zero coefficients.
#[derive(Clone)]
pub struct GroupRingElement<C: Coefficient> {
    group: Arc<FiniteGroup>,
    tag: RingTag,
    terms: BTreeMap<usize, C>,
}

pub type IntElement = GroupRingElement<BigInt>;
pub type RatElement = GroupRingElement<Rational>;
pub type CycElement = GroupRingElement<Cyclotomic>;

impl<C: Coefficient> PartialEq for GroupRingElement<C> {
    fn eq(&self, other: &Self) -> bool {
        self.tag == other.tag && same_group(&self.group, &other.group) && self.terms == other.terms
    }
}

fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl<C: Coefficient> GroupRingElement<C> {
    fn default_tag() -> RingTag {
        [RingTag::Int, RingTag::Rat]
            .into_iter()
            .find(|&t| C::accepts(t))
            .expect("cyclotomic elements need an explicit tag")
    }

    /// Zero over the natural ring for `C` (`Z` or `Q`).
    pub fn zero(group: &Arc<FiniteGroup>) -> Self {
        Self::zero_in(group, Self::default_tag())
    }

    pub fn zero_in(group: &Arc<FiniteGroup>, tag: RingTag) -> Self {
        assert!(C::accepts(tag), "coefficient type does not match ring tag {tag}");
        Self {
            group: Arc::clone(group),
            tag,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(group: &Arc<FiniteGroup>) -> Self {
        Self::element(group, group.identity())
    }

    pub fn one_in(group: &Arc<FiniteGroup>, tag: RingTag) -> Self {
        Self::from_terms_in(group, tag, [(group.identity(), C::one_for(tag))])
    }

    /// The basis element `g`.
    pub fn element(group: &Arc<FiniteGroup>, g: usize) -> Self {
        let tag = Self::default_tag();
        Self::from_terms_in(group, tag, [(g, C::one_for(tag))])
    }

    pub fn from_terms(group: &Arc<FiniteGroup>, terms: impl IntoIterator<Item = (usize, C)>) -> Self {
        Self::from_terms_in(group, Self::default_tag(), terms)
    }

    /// Sums the given terms; repeated elements accumulate.
    pub fn from_terms_in(
        group: &Arc<FiniteGroup>,
        tag: RingTag,
        terms: impl IntoIterator<Item = (usize, C)>,
    ) -> Self {
        let mut out = Self::zero_in(group, tag);
        for (g, c) in terms {
            assert!(g < group.order(), "element index out of range");
            out.add_term(g, &c);
        }
        out
    }

    /// `c * 1`.
    pub fn scalar(group: &Arc<FiniteGroup>, tag: RingTag, c: C) -> Self {
        Self::from_terms_in(group, tag, [(group.identity(), c)])
    }

    fn add_term(&mut self, g: usize, c: &C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&g) {
            Some(v) => {
                *v = v.add_ref(c);
                if v.is_zero() {
                    self.terms.remove(&g);
                }
            }
            None => {
                self.terms.insert(g, c.clone());
            }
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn tag(&self) -> RingTag {
        self.tag
    }

    pub fn terms(&self) -> &BTreeMap<usize, C> {
        &self.terms
    }

    pub fn support(&self) -> Vec<usize> {
        self.terms.keys().copied().collect()
    }

    pub fn coeff(&self, g: usize) -> C {
        self.terms.get(&g).cloned().unwrap_or_else(|| C::zero_for(self.tag))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one_in(&self.group, self.tag)
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.tag != other.tag || !same_group(&self.group, &other.group) {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (&g, c) in &other.terms {
            out.add_term(g, c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg_elem())
    }

    pub fn neg_elem(&self) -> Self {
        Self {
            group: Arc::clone(&self.group),
            tag: self.tag,
            terms: self.terms.iter().map(|(&g, c)| (g, c.neg_ref())).collect(),
        }
    }

    /// Convolution product, accumulated densely over the group.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let g = &self.group;
        let mut acc: Vec<Option<C>> = vec![None; g.order()];
        for (&x, a) in &self.terms {
            for (&y, b) in &other.terms {
                let p = a.mul_ref(b);
                let slot = &mut acc[g.mul(x, y)];
                *slot = Some(match slot.take() {
                    Some(v) => v.add_ref(&p),
                    None => p,
                });
            }
        }
        let terms = acc
            .into_iter()
            .enumerate()
            .filter_map(|(i, c)| c.filter(|c| !c.is_zero()).map(|c| (i, c)))
            .collect();
        Ok(Self {
            group: Arc::clone(g),
            tag: self.tag,
            terms,
        })
    }

    pub fn scalar_mul(&self, c: &C) -> Self {
        Self {
            group: Arc::clone(&self.group),
            tag: self.tag,
            terms: self
                .terms
                .iter()
                .map(|(&g, v)| (g, v.mul_ref(c)))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }

    /// Left multiplication by the basis element `g`.
    pub fn left_mul_element(&self, g: usize) -> Self {
        let grp = &self.group;
        Self {
            group: Arc::clone(grp),
            tag: self.tag,
            terms: self.terms.iter().map(|(&x, c)| (grp.mul(g, x), c.clone())).collect(),
        }
    }

    /// Right multiplication by the basis element `g`.
    pub fn right_mul_element(&self, g: usize) -> Self {
        let grp = &self.group;
        Self {
            group: Arc::clone(grp),
            tag: self.tag,
            terms: self.terms.iter().map(|(&x, c)| (grp.mul(x, g), c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one_in(&self.group, self.tag);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// `g^-1 alpha g`.
    pub fn conjugate_by(&self, g: usize) -> Self {
        let grp = &self.group;
        Self {
            group: Arc::clone(grp),
            tag: self.tag,
            terms: self.terms.iter().map(|(&x, c)| (grp.conj(x, g), c.clone())).collect(),
        }
    }

    /// The classical involution `sum r_g g^-1`.
    pub fn star(&self) -> Self {
        let grp = &self.group;
        Self {
            group: Arc::clone(grp),
            tag: self.tag,
            terms: self.terms.iter().map(|(&x, c)| (grp.inv(x), c.clone())).collect(),
        }
    }

    pub fn augmentation(&self) -> C {
        self.terms
            .values()
            .fold(C::zero_for(self.tag), |acc, c| acc.add_ref(c))
    }

    /// The coefficient of the identity.
    pub fn trace(&self) -> C {
        self.coeff(self.group.identity())
    }

    /// Image under `RG -> R(G/N)`.
    pub fn relative_augmentation(&self, n: &Subgroup) -> Result<(Quotient, GroupRingElement<C>)> {
        let q = quotient(&self.group, n)?;
        let qg = Arc::new(q.group.clone());
        let img = GroupRingElement::from_terms_in(
            &qg,
            self.tag,
            self.terms.iter().map(|(&x, c)| (q.projection[x], c.clone())),
        );
        Ok((q, img))
    }

    /// Commutes with every group element (checked on generators).
    pub fn is_central(&self) -> bool {
        let whole = Subgroup::whole(&self.group);
        whole.generators().iter().all(|&g| self.conjugate_by(g) == *self)
    }

    pub fn is_idempotent(&self) -> bool {
        &(self * self) == self
    }

    pub fn map_coeffs<D: Coefficient>(&self, tag: RingTag, f: impl Fn(&C) -> D) -> GroupRingElement<D> {
        GroupRingElement::from_terms_in(&self.group, tag, self.terms.iter().map(|(&g, c)| (g, f(c))))
    }

    /// Same element viewed in another group ring over `group` (e.g. after
    /// identifying a subgroup ring inside the ambient ring).
    pub fn with_group(&self, group: &Arc<FiniteGroup>) -> Self {
        assert!(same_group(&self.group, group), "different groups");
        Self {
            group: Arc::clone(group),
            tag: self.tag,
            terms: self.terms.clone(),
        }
    }

    pub fn to_serial(&self) -> SerialElement {
        SerialElement {
            ring: self.tag.to_string(),
            terms: self
                .terms
                .iter()
                .map(|(&g, c)| (g, serial_coeff(c, self.tag)))
                .collect(),
        }
    }

    pub fn from_serial(group: &Arc<FiniteGroup>, s: &SerialElement) -> Result<Self> {
        let tag: RingTag = s.ring.parse()?;
        if !C::accepts(tag) {
            return Err(Error::RingMismatch);
        }
        let terms = s
            .terms
            .iter()
            .map(|(g, c)| {
                if *g >= group.order() {
                    return Err(Error::InvalidInput(format!("element index {g} out of range")));
                }
                Ok((*g, C::parse_exact(tag, c)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_terms_in(group, tag, terms))
    }
}

fn serial_coeff<C: Coefficient>(c: &C, tag: RingTag) -> String {
    match tag {
        RingTag::Cyc(_) => {
            // power-basis list, parsed back by Cyclotomic::parse_exact
            let any: &dyn std::any::Any = c;
            let z = any.downcast_ref::<Cyclotomic>().expect("cyclotomic coefficient");
            let parts: Vec<String> = z.coeffs().iter().map(|q| q.to_string()).collect();
            format!("[{}]", parts.join(";"))
        }
        _ => c.to_string(),
    }
}

/// Wire form: `{"ring": "RAT", "terms": [[index, "coeff"], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SerialElement {
    pub ring: String,
    pub terms: Vec<(usize, String)>,
}

impl GroupRingElement<BigInt> {
    pub fn to_rational(&self) -> GroupRingElement<Rational> {
        self.map_coeffs(RingTag::Rat, |c| Rational::from_integer(c.clone()))
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.terms.values().map(Signed::abs).max().unwrap_or_default()
    }
}

impl GroupRingElement<Rational> {
    /// Integral version, or `NotIntegral` if some coefficient is not.
    pub fn to_integer(&self) -> Result<GroupRingElement<BigInt>> {
        if let Some(c) = self.terms.values().find(|c| !c.is_integer()) {
            return Err(Error::NotIntegral(c.to_string()));
        }
        Ok(self.map_coeffs(RingTag::Int, |c| c.to_integer()))
    }

    /// `Q`-linear combination with a rational scalar.
    pub fn scale(&self, q: &Rational) -> Self {
        self.scalar_mul(q)
    }

    pub fn is_rational_one(&self) -> bool {
        self.terms.len() == 1 && self.trace().is_one()
    }
}

/// `N~ = sum of the elements of N`, over `Z`.
pub fn group_sum_tilde(group: &Arc<FiniteGroup>, n: &Subgroup) -> IntElement {
    IntElement::from_terms(group, n.members().iter().map(|&x| (x, BigInt::one())))
}

/// `N^ = N~ / |N|`, over `Q`.
pub fn group_sum_hat(group: &Arc<FiniteGroup>, n: &Subgroup) -> RatElement {
    let c = Rational::new(BigInt::one(), BigInt::from(n.order()));
    RatElement::from_terms(group, n.members().iter().map(|&x| (x, c.clone())))
}

impl<C: Coefficient> fmt::Debug for GroupRingElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<C: Coefficient> fmt::Display for GroupRingElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&g, c)| format!("({c})*{}", self.group.label(g)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $via:ident) => {
        impl<C: Coefficient> $tr for &GroupRingElement<C> {
            type Output = GroupRingElement<C>;
            fn $m(self, rhs: Self) -> GroupRingElement<C> {
                self.$via(rhs).expect("group ring operands do not match")
            }
        }
        impl<C: Coefficient> $tr for GroupRingElement<C> {
            type Output = GroupRingElement<C>;
            fn $m(self, rhs: Self) -> GroupRingElement<C> {
                self.$via(&rhs).expect("group ring operands do not match")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl<C: Coefficient> Neg for &GroupRingElement<C> {
    type Output = GroupRingElement<C>;
    fn neg(self) -> GroupRingElement<C> {
        self.neg_elem()
    }
}

impl<C: Coefficient> Neg for GroupRingElement<C> {
    type Output = GroupRingElement<C>;
    fn neg(self) -> GroupRingElement<C> {
        self.neg_elem()
    }
}

//! Central units of `ZG`.
//!
//! `Z(U(ZG)) = ±Z(G) x F` with `F` free abelian of rank `(c + c')/2 - d`,
//! where `c` counts conjugacy classes, `c'` the classes closed under
//! inversion and `d` the conjugacy classes of cyclic subgroups. Bass units
//! on `g` are pushed into the centre by multiplying conjugates along a
//! subnormal series from `<g>` to `G`.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::numtheory::{euler_phi, gcd, multiplicative_order, units_mod};
use crate::error::{Error, Result};
use crate::group::subgroup::{cyclic_subgroups, is_nilpotent, normal_closure_in, upper_central_series};
use crate::group::{conjugacy_classes, cyclic_subgroup_class_count, FiniteGroup, Subgroup};
use crate::ring::IntElement;
use crate::units::{bass_unit, CertifiedUnit, UnitKind};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankBreakdown {
    pub c: usize,
    pub c_prime: usize,
    pub d: usize,
    pub rank: usize,
    pub abelian_formula_rank: Option<usize>,
    /// `(c + c')/2`, the number of simple components of `RG`.
    pub r_real: usize,
    /// `d`, the number of simple components of `QG`.
    pub r_rational: usize,
}

/// Rank of the free part of `Z(U(ZG))`.
pub fn central_rank(g: &FiniteGroup) -> Result<RankBreakdown> {
    let classes = conjugacy_classes(g);
    let c = classes.class_count();
    let c_prime = classes.real_closed_count;
    let d = cyclic_subgroup_class_count(g);
    let r_real = (c + c_prime) / 2;
    if (c + c_prime) % 2 != 0 || r_real < d {
        return Err(Error::Invariant(format!("inconsistent class counts c={c}, c'={c_prime}, d={d}")));
    }
    let rank = r_real - d;
    let abelian_formula_rank = if g.is_abelian() {
        let (sum, closed) = abelian_rank_formulas(g);
        if sum != closed || sum != rank {
            return Err(Error::Invariant(format!(
                "abelian rank formulas disagree: {sum}, {closed}, {rank}"
            )));
        }
        Some(sum)
    } else {
        None
    };
    Ok(RankBreakdown {
        c,
        c_prime,
        d,
        rank,
        abelian_formula_rank,
        r_real,
        r_rational: d,
    })
}

/// `sum_{d > 2} k_d (phi(d)/2 - 1)` and `(n + 1 + k_2 - 2c)/2`, with `k_d`
/// the number of cyclic subgroups of order `d` and `c` their total.
fn abelian_rank_formulas(g: &FiniteGroup) -> (usize, usize) {
    let cyc = cyclic_subgroups(g);
    let sum: usize = cyc
        .iter()
        .filter(|s| s.order() > 2)
        .map(|s| euler_phi(s.order() as u64) as usize / 2 - 1)
        .sum();
    let k2 = cyc.iter().filter(|s| s.order() == 2).count();
    let closed = (g.order() + 1 + k2 - 2 * cyc.len()) / 2;
    (sum, closed)
}

/// Every `g` is conjugate to `g^m` or `g^-m` for each `m` coprime to the
/// exponent. Checked against `rank == 0`.
pub fn is_cut(g: &FiniteGroup) -> bool {
    let classes = conjugacy_classes(g);
    let e = g.exponent() as u64;
    let cut = classes.classes.iter().all(|cl| {
        let x = cl[0];
        units_mod(e).into_iter().all(|m| {
            let y = g.pow(x, m as i64);
            classes.class_of[y] == classes.class_of[x] || classes.class_of[g.inv(y)] == classes.class_of[x]
        })
    });
    let rank = central_rank(g).expect("class counts are consistent").rank;
    assert_eq!(cut, rank == 0, "cut criterion disagrees with the central unit rank");
    cut
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubnormalSeries {
    /// `N_0 = <g>`, each normal in the next, ending at `G`.
    pub chain: Vec<Subgroup>,
    /// `transversals[i]`: right transversal of `N_i` in `N_{i+1}`.
    pub transversals: Vec<Vec<usize>>,
}

impl SubnormalSeries {
    fn from_chain(g: &FiniteGroup, mut chain: Vec<Subgroup>) -> Result<Self> {
        chain.dedup();
        for w in chain.windows(2) {
            if !w[0].is_subgroup_of(&w[1]) || !w[0].is_normal_in(g, &w[1]) {
                return Err(Error::InvalidSeries("a term is not normal in the next".into()));
            }
        }
        if chain.last().map(Subgroup::order) != Some(g.order()) {
            return Err(Error::InvalidSeries("series does not reach G".into()));
        }
        let transversals = chain.windows(2).map(|w| w[0].right_transversal(g, &w[1])).collect();
        Ok(SubnormalSeries { chain, transversals })
    }
}

/// A subnormal series from `<x>` to `G`: `<Z_i, x>` along the upper central
/// series when `G` is nilpotent, otherwise iterated normal closures from the
/// top. `None` when `<x>` is not subnormal.
pub fn subnormal_series(g: &FiniteGroup, x: usize) -> Option<SubnormalSeries> {
    let base = Subgroup::cyclic(g, x);
    let chain = if is_nilpotent(g) {
        upper_central_series(g)
            .iter()
            .map(|z| {
                let mut gens = z.generators().to_vec();
                gens.push(x);
                Subgroup::generated(g, &gens)
            })
            .collect()
    } else {
        let mut down = vec![Subgroup::whole(g)];
        loop {
            let top = down.last().expect("nonempty");
            if *top == base {
                break;
            }
            let next = normal_closure_in(g, top, &[x]);
            if next == *top {
                return None;
            }
            down.push(next);
        }
        down.reverse();
        down
    };
    SubnormalSeries::from_chain(g, chain).ok()
}

fn average_once(u: &IntElement, transversal: &[usize]) -> IntElement {
    transversal
        .iter()
        .fold(IntElement::one(u.group()), |acc, &h| &acc * &u.conjugate_by(h))
}

fn random_transversal(g: &FiniteGroup, lower: &Subgroup, reps: &[usize], rng: &mut ChaCha8Rng) -> Vec<usize> {
    reps.iter()
        .map(|&t| g.mul(lower.members()[rng.gen_range(0..lower.order())], t))
        .collect()
}

/// Default seed for the second transversal in [`central_averaged_unit`].
pub const AVERAGING_SEED: u64 = 0x00c3_47a1;

/// `c_m(u)` where `c_i(u) = prod_{h in T_i} c_{i-1}(u)^h`. The result is
/// checked to be central and to agree with a second, randomly chosen set
/// of transversals.
pub fn central_averaged_unit(unit: &CertifiedUnit, x: usize, series: &SubnormalSeries) -> Result<CertifiedUnit> {
    central_averaged_unit_seeded(unit, x, series, AVERAGING_SEED)
}

pub fn central_averaged_unit_seeded(
    unit: &CertifiedUnit,
    x: usize,
    series: &SubnormalSeries,
    seed: u64,
) -> Result<CertifiedUnit> {
    let g = unit.u.group().clone();
    if series.chain.first() != Some(&Subgroup::cyclic(&g, x)) {
        return Err(Error::InvalidSeries("series does not start at <g>".into()));
    }
    if !unit.u.support().iter().all(|&y| series.chain[0].contains(y)) {
        return Err(Error::Precondition("unit does not lie in Z<g>".into()));
    }
    let mut u = unit.u.clone();
    let mut u_inv = unit.u_inv.clone();
    for t in &series.transversals {
        u = average_once(&u, t);
        u_inv = average_once(&u_inv, t);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut alt = unit.u.clone();
    for (i, t) in series.transversals.iter().enumerate() {
        let rt = random_transversal(&g, &series.chain[i], t, &mut rng);
        alt = average_once(&alt, &rt);
    }
    if alt != u {
        return Err(Error::Invariant("averaged unit depends on the transversal".into()));
    }
    if !u.is_central() {
        return Err(Error::Invariant("averaged unit is not central".into()));
    }
    let kind = UnitKind::CentralAveraged {
        g: x,
        base: Box::new(unit.kind.clone()),
    };
    CertifiedUnit::new(u, u_inv, kind)
}

#[derive(Debug, Clone)]
pub struct CentralGenerators {
    pub units: Vec<CertifiedUnit>,
    pub rank: usize,
    /// `units.len() >= rank`; no finite index claim is made.
    pub count_at_least_rank: bool,
}

/// Every cyclic subgroup whose order does not divide 4 or 6 is subnormal.
pub fn central_eligible(g: &FiniteGroup) -> bool {
    cyclic_subgroups(g).iter().all(|c| {
        let n = c.order();
        let x = *c.members().iter().find(|&&y| g.element_order(y) == n).expect("cyclic");
        4 % n == 0 || 6 % n == 0 || subnormal_series(g, x).is_some()
    })
}

/// Averaged Bass units `c(u_{k, ord(k)}(g))` for every `g` whose order does
/// not divide 4 or 6 and every `1 < k < |g|` coprime to `|g|`,
/// deduplicated.
pub fn central_generators(g: &Arc<FiniteGroup>) -> Result<CentralGenerators> {
    central_generators_seeded(g, AVERAGING_SEED)
}

pub fn central_generators_seeded(g: &Arc<FiniteGroup>, seed: u64) -> Result<CentralGenerators> {
    if !central_eligible(g) {
        return Err(Error::NotEligible { order: g.order() });
    }
    let rank = central_rank(g)?.rank;
    let mut units: Vec<CertifiedUnit> = Vec::new();
    for x in g.elements() {
        let n = g.element_order(x) as u64;
        if 4 % n == 0 || 6 % n == 0 {
            continue;
        }
        let series = subnormal_series(g, x).ok_or(Error::NotEligible { order: g.order() })?;
        for k in 2..n {
            if gcd(k, n) != 1 {
                continue;
            }
            let m = multiplicative_order(k, n).expect("unit") as u32;
            let c = central_averaged_unit_seeded(&bass_unit(g, x, k, m)?, x, &series, seed)?;
            if !c.u.is_one() && !units.iter().any(|v| v.u == c.u) {
                units.push(c);
            }
        }
    }
    Ok(CentralGenerators {
        count_at_least_rank: units.len() >= rank,
        units,
        rank,
    })
}

//! Structure predicates on `U(ZG)` read off from the group or from the
//! Wedderburn components.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::classify::{ComponentKind, Exceptional, FieldKind, SplitStatus};
use super::{decomposition_report, Component};
use crate::central::is_cut;
use crate::error::Result;
use crate::group::subgroup::cyclic_subgroups;
use crate::group::{catalog, is_isomorphic, FiniteGroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TriState {
    True,
    False,
    Unknown,
}

impl TriState {
    pub fn and(self, other: TriState) -> TriState {
        match (self, other) {
            (TriState::False, _) | (_, TriState::False) => TriState::False,
            (TriState::True, TriState::True) => TriState::True,
            _ => TriState::Unknown,
        }
    }

    pub fn not(self) -> TriState {
        match self {
            TriState::True => TriState::False,
            TriState::False => TriState::True,
            TriState::Unknown => TriState::Unknown,
        }
    }
}

impl From<bool> for TriState {
    fn from(b: bool) -> Self {
        if b {
            TriState::True
        } else {
            TriState::False
        }
    }
}

impl fmt::Display for TriState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TriState::True => "TRUE",
            TriState::False => "FALSE",
            TriState::Unknown => "UNKNOWN",
        })
    }
}

/// Nonabelian with every subgroup normal.
pub fn is_hamiltonian(g: &FiniteGroup) -> bool {
    !g.is_abelian() && cyclic_subgroups(g).iter().all(|c| c.is_normal(g))
}

/// `Q8 x C2^n`: a Hamiltonian 2-group.
fn is_q8_times_elementary(g: &FiniteGroup) -> bool {
    g.order().is_power_of_two() && is_hamiltonian(g)
}

/// `U(ZG)` is finite iff `G` is abelian of exponent dividing 4 or 6, or
/// `G = Q8 x E` with `E` elementary abelian 2-group.
pub fn higman_finite_units(g: &FiniteGroup) -> bool {
    if g.is_abelian() {
        let e = g.exponent();
        return 4 % e == 0 || 6 % e == 0;
    }
    is_q8_times_elementary(g)
}

/// `U(ZG)` virtually a free product of abelian groups: `G` abelian,
/// `Q8 x C2^n`, or one of `D6, D8, Q12, P16`.
pub fn virtually_free_product_abelian(g: &FiniteGroup) -> Result<bool> {
    if g.is_abelian() || is_q8_times_elementary(g) {
        return Ok(true);
    }
    for name in ["D6", "D8", "Q12", "P16"] {
        let h = catalog(name)?;
        if h.order() == g.order() && is_isomorphic(g, &h)? {
            return Ok(true);
        }
    }
    Ok(false)
}

fn free_by_free_component(c: &Component) -> TriState {
    match &c.classification.kind {
        ComponentKind::Field { .. } => TriState::True,
        ComponentKind::MatrixOverField { n: 2, field } => TriState::from(matches!(
            field.kind,
            FieldKind::Rational | FieldKind::Quadratic { m: -1 | -2 | -3 }
        )),
        ComponentKind::MatrixOverField { .. } => TriState::False,
        ComponentKind::Quaternion { n: 1, status: SplitStatus::Division, .. } => {
            TriState::from(c.classification.totally_definite_quaternion == Some(true))
        }
        ComponentKind::Quaternion { status: SplitStatus::Unresolved, .. } => TriState::Unknown,
        ComponentKind::Quaternion { .. } => TriState::False,
        ComponentKind::CrossedUnresolved => TriState::Unknown,
    }
}

/// `U(ZG)` virtually a direct product of free-by-free groups: every
/// component is a field, a totally definite quaternion algebra, or `M2(K)`
/// with `K` one of `Q, Q(i), Q(sqrt(-2)), Q(sqrt(-3))`.
pub fn virtually_free_by_free(g: &Arc<FiniteGroup>) -> Result<TriState> {
    Ok(free_by_free_state(&decomposition_report(g)?))
}

pub fn free_by_free_state(comps: &[Component]) -> TriState {
    comps.iter().map(free_by_free_component).fold(TriState::True, TriState::and)
}

pub fn exceptional_state(comps: &[Component]) -> TriState {
    comps.iter().fold(TriState::False, |acc, c| match (acc, c.classification.exceptional) {
        (TriState::True, _) | (_, Exceptional::Type1 | Exceptional::Type2) => TriState::True,
        (_, Exceptional::Unknown) => TriState::Unknown,
        (acc, Exceptional::No) => acc,
    })
}

pub fn has_exceptional(g: &Arc<FiniteGroup>) -> Result<TriState> {
    Ok(exceptional_state(&decomposition_report(g)?))
}

/// Cut and without exceptional components.
pub fn hfa(g: &Arc<FiniteGroup>) -> Result<TriState> {
    Ok(TriState::from(is_cut(g)).and(has_exceptional(g)?.not()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(name: &str) -> Arc<FiniteGroup> {
        Arc::new(catalog(name).unwrap())
    }

    #[test]
    fn higman_list() {
        for (name, want) in [
            ("Q8xC2", true),
            ("Q8", true),
            ("C4xC2", true),
            ("C6", true),
            ("C5", false),
            ("C8", false),
            ("D8", false),
            ("Q16", false),
            ("C12", false),
        ] {
            assert_eq!(higman_finite_units(&grp(name)), want, "{name}");
        }
    }

    #[test]
    fn free_product_list() {
        for (name, want) in [("D8", true), ("D6", true), ("Q12", true), ("P16", true), ("Q8xC2", true), ("C7", true), ("Q16", false), ("S4", false)] {
            assert_eq!(virtually_free_product_abelian(&grp(name)).unwrap(), want, "{name}");
        }
    }

    #[test]
    fn hfa_and_exceptional() {
        assert_eq!(has_exceptional(&grp("D8")).unwrap(), TriState::True);
        assert_eq!(has_exceptional(&grp("Q8")).unwrap(), TriState::False);
        assert_eq!(hfa(&grp("D8")).unwrap(), TriState::False);
        assert_eq!(hfa(&grp("Q8")).unwrap(), TriState::True);
        assert_eq!(hfa(&grp("C5")).unwrap(), TriState::False);
        assert_eq!(virtually_free_by_free(&grp("D8")).unwrap(), TriState::True);
        assert_eq!(virtually_free_by_free(&grp("Q16")).unwrap(), TriState::True);
    }
}

//! Shape of a component `M_n(Q(zeta_h) * N/H)`: field, matrix ring over a
//! field, quaternion algebra, or unresolved crossed product.

use serde::Serialize;

use super::SimpleComponentDescriptor;
use crate::arith::hilbert::{ramified_places, square_class};
use crate::arith::numtheory::{euler_phi, is_squarefree, kronecker, units_mod};
use crate::arith::{rat, Cyclotomic, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FieldKind {
    Rational,
    /// `Q(sqrt(m))`, `m` squarefree.
    Quadratic { m: i64 },
    Cyclotomic { conductor: u64 },
    /// Maximal real subfield of `Q(zeta_conductor)`.
    RealCyclotomic { conductor: u64 },
    /// Fixed field of `fixing` inside `Q(zeta_conductor)`.
    Subfield { conductor: u64, fixing: Vec<u64> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldDesc {
    pub kind: FieldKind,
    pub degree: usize,
}

impl FieldDesc {
    pub fn rational() -> Self {
        FieldDesc {
            kind: FieldKind::Rational,
            degree: 1,
        }
    }

    /// The fixed field of `fixing <= (Z/h)^x` in `Q(zeta_h)`.
    pub fn fixed_field(h: u64, fixing: &[u64]) -> Self {
        let degree = (euler_phi(h) as usize) / fixing.len().max(1);
        let kind = if degree == 1 {
            FieldKind::Rational
        } else if degree == 2 {
            FieldKind::Quadratic {
                m: quadratic_subfield(h, fixing).expect("a degree 2 subfield of Q(zeta_h) is quadratic"),
            }
        } else if fixing.len() == 1 {
            FieldKind::Cyclotomic {
                conductor: minimal_conductor(h),
            }
        } else if fixing.len() == 2 && fixing.contains(&(h - 1)) {
            FieldKind::RealCyclotomic {
                conductor: minimal_conductor(h),
            }
        } else {
            FieldKind::Subfield {
                conductor: h,
                fixing: fixing.to_vec(),
            }
        };
        FieldDesc { kind, degree }
    }

    pub fn is_rational(&self) -> bool {
        self.kind == FieldKind::Rational
    }

    pub fn is_imaginary_quadratic(&self) -> bool {
        matches!(self.kind, FieldKind::Quadratic { m } if m < 0)
    }

    pub fn is_totally_real(&self) -> bool {
        match &self.kind {
            FieldKind::Rational | FieldKind::RealCyclotomic { .. } => true,
            FieldKind::Quadratic { m } => *m > 0,
            FieldKind::Cyclotomic { .. } => false,
            FieldKind::Subfield { conductor, fixing } => fixing.contains(&(conductor - 1)),
        }
    }

    pub fn name(&self) -> String {
        match &self.kind {
            FieldKind::Rational => "Q".into(),
            FieldKind::Quadratic { m: -1 } => "Q(i)".into(),
            FieldKind::Quadratic { m } => format!("Q(sqrt({m}))"),
            FieldKind::Cyclotomic { conductor } => format!("Q(zeta_{conductor})"),
            FieldKind::RealCyclotomic { conductor } => format!("Q(zeta_{conductor})+"),
            FieldKind::Subfield { conductor, fixing } => {
                let f: Vec<String> = fixing.iter().map(u64::to_string).collect();
                format!("Q(zeta_{conductor})^<{}>", f.join(","))
            }
        }
    }
}

/// `Q(zeta_h) = Q(zeta_{h/2})` when `h = 2 mod 4`.
fn minimal_conductor(h: u64) -> u64 {
    if h % 4 == 2 {
        h / 2
    } else {
        h
    }
}

fn is_fundamental_discriminant(d: i64) -> bool {
    if d == 1 || d == 0 {
        return false;
    }
    let r = d.rem_euclid(4);
    if r == 1 {
        return is_squarefree(d.unsigned_abs());
    }
    if r == 0 {
        let m = d / 4;
        return matches!(m.rem_euclid(4), 2 | 3) && is_squarefree(m.unsigned_abs());
    }
    false
}

/// Squarefree `m` with `Q(sqrt(m))` the fixed field of the index-2 subgroup
/// `fixing`: the fundamental discriminant `D | h` whose Kronecker character
/// has kernel `fixing`.
fn quadratic_subfield(h: u64, fixing: &[u64]) -> Option<i64> {
    let h = h as i64;
    let units = units_mod(h as u64);
    for abs in 3..=h {
        if h % abs != 0 {
            continue;
        }
        for d in [-abs, abs] {
            if !is_fundamental_discriminant(d) {
                continue;
            }
            let kernel: Vec<u64> = units.iter().copied().filter(|&r| kronecker(d, r) == 1).collect();
            if kernel == fixing {
                return Some(if d % 4 == 0 { d / 4 } else { d });
            }
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SplitStatus {
    Split,
    Division,
    Unresolved,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ComponentKind {
    Field {
        conductor: u64,
        fixing: Vec<u64>,
        field: FieldDesc,
    },
    MatrixOverField {
        n: usize,
        field: FieldDesc,
    },
    /// `M_n((a, b / center))`.
    Quaternion {
        a: String,
        b: String,
        center: FieldDesc,
        n: usize,
        status: SplitStatus,
    },
    CrossedUnresolved,
}

impl ComponentKind {
    /// Sort key: fields, then division algebras, then matrix rings.
    pub fn rank(&self) -> u8 {
        match self {
            ComponentKind::Field { .. } => 0,
            ComponentKind::Quaternion { n: 1, status: SplitStatus::Division, .. } => 1,
            ComponentKind::MatrixOverField { .. } | ComponentKind::Quaternion { .. } => 2,
            ComponentKind::CrossedUnresolved => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Exceptional {
    No,
    Type1,
    Type2,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentClassification {
    pub kind: ComponentKind,
    pub exceptional: Exceptional,
    pub totally_definite_quaternion: Option<bool>,
    pub name: String,
}

fn matrix_name(n: usize, inner: String) -> String {
    if n == 1 {
        inner
    } else {
        format!("M{n}({inner})")
    }
}

fn matrix_exceptional(n: usize, field: &FieldDesc) -> Exceptional {
    if n == 2 && (field.is_rational() || field.is_imaginary_quadratic()) {
        Exceptional::Type2
    } else {
        Exceptional::No
    }
}

fn matrix(n: usize, field: FieldDesc) -> ComponentClassification {
    let exceptional = matrix_exceptional(n, &field);
    ComponentClassification {
        name: matrix_name(n, field.name()),
        kind: ComponentKind::MatrixOverField { n, field },
        exceptional,
        totally_definite_quaternion: None,
    }
}

fn squarefree_part(q: &Rational) -> i64 {
    square_class(q) as i64
}

/// Rational quaternion algebra `(a, b / Q)`, named `H(Q)` when it is
/// ramified exactly at `{2, oo}`.
fn rational_quaternion(a: Rational, b: Rational, n: usize) -> ComponentClassification {
    let ramified = ramified_places(&a, &b);
    if ramified.is_empty() {
        return matrix(2 * n, FieldDesc::rational());
    }
    let (sa, sb) = {
        let (x, y) = (squarefree_part(&a), squarefree_part(&b));
        if (x.abs(), x) <= (y.abs(), y) {
            (x, y)
        } else {
            (y, x)
        }
    };
    let definite = ramified.contains(&0);
    let inner = if ramified == [0, 2] {
        "H(Q)".to_string()
    } else {
        format!("({sa},{sb}/Q)")
    };
    let exceptional = match n {
        1 if definite => Exceptional::No,
        1 => Exceptional::Type1,
        2 if definite => Exceptional::Type2,
        _ => Exceptional::No,
    };
    ComponentClassification {
        name: matrix_name(n, inner),
        kind: ComponentKind::Quaternion {
            a: sa.to_string(),
            b: sb.to_string(),
            center: FieldDesc::rational(),
            n,
            status: SplitStatus::Division,
        },
        exceptional,
        totally_definite_quaternion: Some(definite),
    }
}

/// `Q(zeta_h) * C2` with `u zeta u^-1 = zeta^-1` and `u^2 = -1`, which is
/// `((zeta - zeta^-1)^2, -1 / Q(zeta_h)+)`: totally definite, hence division.
fn conjugation_quaternion(d: &SimpleComponentDescriptor) -> ComponentClassification {
    let h = d.h as u64;
    let center = FieldDesc::fixed_field(h, &d.center_fixing);
    let z = Cyclotomic::root_of_unity(h, 1);
    let diff = z.try_sub(&z.complex_conjugate()).expect("same conductor");
    let delta = diff.try_mul(&diff).expect("same conductor");
    if center.is_rational() {
        let a = delta.as_rational().expect("delta lies in the centre");
        return rational_quaternion(a, rat(-1), d.n);
    }
    // (delta, -1) = (-1, -1) when -delta is a square in the centre
    let inner = match (delta.as_rational(), &center.kind) {
        (Some(ref q), FieldKind::Quadratic { m }) if [1, *m].contains(&squarefree_part(&-q.clone())) => {
            format!("H({})", center.name())
        }
        _ => format!("({},-1/{})", delta, center.name()),
    };
    let a = match delta.as_rational() {
        Some(q) => q.to_string(),
        None => delta.to_string(),
    };
    ComponentClassification {
        name: matrix_name(d.n, inner),
        kind: ComponentKind::Quaternion {
            a,
            b: "-1".into(),
            center,
            n: d.n,
            status: SplitStatus::Division,
        },
        exceptional: Exceptional::No,
        totally_definite_quaternion: Some(true),
    }
}

pub fn classify_component(d: &SimpleComponentDescriptor) -> ComponentClassification {
    let h = d.h as u64;
    let center = FieldDesc::fixed_field(h, &d.center_fixing);
    if d.quotient_order == 1 {
        if d.n == 1 {
            return ComponentClassification {
                name: center.name(),
                kind: ComponentKind::Field {
                    conductor: h,
                    fixing: d.center_fixing.clone(),
                    field: center,
                },
                exceptional: Exceptional::No,
                totally_definite_quaternion: None,
            };
        }
        return matrix(d.n, center);
    }
    if d.twisting_is_trivial() && d.action_is_faithful() {
        return matrix(d.n * d.quotient_order, center);
    }
    if d.quotient_order == 2 && d.action[1].residue == h - 1 && d.twisting[1][1] == h / 2 {
        return conjugation_quaternion(d);
    }
    ComponentClassification {
        name: matrix_name(d.n, format!("Q(zeta_{h})*C{}", d.quotient_order)),
        kind: ComponentKind::CrossedUnresolved,
        // M_n(D) with n >= 3 is never exceptional
        exceptional: if d.n >= 3 { Exceptional::No } else { Exceptional::Unknown },
        totally_definite_quaternion: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_subfields_by_discriminant() {
        assert_eq!(FieldDesc::fixed_field(4, &[1]).name(), "Q(i)");
        assert_eq!(FieldDesc::fixed_field(3, &[1]).name(), "Q(sqrt(-3))");
        assert_eq!(FieldDesc::fixed_field(6, &[1]).name(), "Q(sqrt(-3))");
        assert_eq!(FieldDesc::fixed_field(8, &[1, 7]).name(), "Q(sqrt(2))");
        assert_eq!(FieldDesc::fixed_field(8, &[1, 3]).name(), "Q(sqrt(-2))");
        assert_eq!(FieldDesc::fixed_field(8, &[1, 5]).name(), "Q(i)");
        assert_eq!(FieldDesc::fixed_field(5, &[1, 4]).name(), "Q(sqrt(5))");
        assert_eq!(FieldDesc::fixed_field(12, &[1, 11]).name(), "Q(sqrt(3))");
        assert_eq!(FieldDesc::fixed_field(8, &[1]).name(), "Q(zeta_8)");
        assert_eq!(FieldDesc::fixed_field(10, &[1]).name(), "Q(zeta_5)");
        assert_eq!(FieldDesc::fixed_field(2, &[1]).name(), "Q");
    }

    #[test]
    fn rational_quaternion_names() {
        assert_eq!(rational_quaternion(rat(-1), rat(-1), 1).name, "H(Q)");
        let c = rational_quaternion(rat(-3), rat(-1), 1);
        assert_eq!(c.name, "(-1,-3/Q)");
        assert_eq!(c.totally_definite_quaternion, Some(true));
        assert_eq!(c.exceptional, Exceptional::No);
        assert_eq!(rational_quaternion(rat(-1), rat(-1), 2).exceptional, Exceptional::Type2);
        assert_eq!(rational_quaternion(rat(1), rat(-1), 1).name, "M2(Q)");
        assert_eq!(rational_quaternion(rat(3), rat(-1), 1).exceptional, Exceptional::Type1);
    }
}

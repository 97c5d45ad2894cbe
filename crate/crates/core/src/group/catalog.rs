//! Named groups.
//!
//! Grammar: factors `C{n}`, `D{n}` (dihedral of order `n`, `n` even and at
//! least 4), `Q{4m}` (dicyclic of order `4m`, `m >= 2`), `S{n}`, `A{n}`,
//! `E{2^k}` (elementary abelian), `SD{2^k}` (semidihedral, order at least
//! 16) and `P16`, joined by `x` for direct products. Presentations used:
//!
//! * `D{2m}`: `a^m = b^2 = 1, ba = a^-1 b`
//! * `Q{4m}`: `a^2m = 1, b^2 = a^m, ba = a^-1 b`
//! * `SD{2m}`: `a^m = b^2 = 1, ba = a^(m/2 - 1) b`
//! * `P16`: `a^4 = b^4 = 1, b a b^-1 = a^-1`, equivalently `aba^-1b^-1 = a^2`

use super::perm::{build_from_permutations_with, Permutation};
use super::{build_from_table_with, FiniteGroup, GroupOptions};
use crate::error::{Error, Result};

pub fn catalog(name: &str) -> Result<FiniteGroup> {
    catalog_with(name, &GroupOptions::default())
}

pub fn catalog_with(name: &str, opts: &GroupOptions) -> Result<FiniteGroup> {
    let specs = name
        .split('x')
        .map(|f| parse_factor(f).ok_or_else(|| Error::UnknownName(name.to_string())))
        .collect::<Result<Vec<_>>>()?;
    let order = specs.iter().try_fold(1usize, |acc, s| acc.checked_mul(s.order()));
    match order {
        Some(o) if o <= opts.max_order => {}
        _ => {
            return Err(Error::OrderBoundExceeded {
                what: "catalog group",
                order: order.unwrap_or(usize::MAX),
                bound: opts.max_order,
            })
        }
    }
    let factors = specs
        .iter()
        .map(|s| s.build(opts))
        .collect::<Result<Vec<_>>>()?;
    if factors.len() == 1 {
        return Ok(factors.into_iter().next().expect("one factor"));
    }
    direct_product(&factors, opts)
}

#[derive(Debug, Clone, Copy)]
enum Factor {
    Cyclic(usize),
    Dihedral(usize),
    Dicyclic(usize),
    Symmetric(usize),
    Alternating(usize),
    Elementary(u32),
    SemiDihedral(usize),
    P16,
}

fn parse_factor(s: &str) -> Option<Factor> {
    if s == "P16" {
        return Some(Factor::P16);
    }
    if let Some(digits) = s.strip_prefix("SD") {
        let n: usize = digits.parse().ok().filter(|_| !digits.starts_with('0'))?;
        return (n >= 16 && n.is_power_of_two()).then_some(Factor::SemiDihedral(n));
    }
    let (head, digits) = s.split_at(1.min(s.len()));
    if digits.is_empty() || digits.starts_with('0') || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let n: usize = digits.parse().ok()?;
    match head {
        "C" => Some(Factor::Cyclic(n)),
        "D" if n >= 4 && n % 2 == 0 => Some(Factor::Dihedral(n)),
        "Q" if n >= 8 && n % 4 == 0 => Some(Factor::Dicyclic(n)),
        "S" => Some(Factor::Symmetric(n)),
        "A" => Some(Factor::Alternating(n)),
        "E" if n.is_power_of_two() && n >= 2 => Some(Factor::Elementary(n.trailing_zeros())),
        _ => None,
    }
}

fn factorial(n: usize) -> Option<usize> {
    (1..=n).try_fold(1usize, |acc, k| acc.checked_mul(k))
}

impl Factor {
    fn order(&self) -> usize {
        match *self {
            Factor::Cyclic(n) | Factor::Dihedral(n) | Factor::Dicyclic(n) | Factor::SemiDihedral(n) => n,
            Factor::Symmetric(n) => factorial(n).unwrap_or(usize::MAX),
            Factor::Alternating(n) => factorial(n).map_or(usize::MAX, |f| (f / 2).max(1)),
            Factor::Elementary(k) => 1 << k,
            Factor::P16 => 16,
        }
    }

    fn build(&self, opts: &GroupOptions) -> Result<FiniteGroup> {
        match *self {
            Factor::Cyclic(n) => from_rule(n, |i| power_label("a", i), |i, j| (i + j) % n, opts),
            Factor::Dihedral(n) => metacyclic(n / 2, 2, n / 2 - 1, 0, opts),
            Factor::Dicyclic(n) => metacyclic(n / 2, 2, n / 2 - 1, n / 4, opts),
            Factor::SemiDihedral(n) => metacyclic(n / 2, 2, n / 4 - 1, 0, opts),
            Factor::P16 => metacyclic(4, 4, 3, 0, opts),
            Factor::Elementary(k) => {
                let label = |i: usize| {
                    if i == 0 {
                        return "1".to_string();
                    }
                    (0..k as usize)
                        .filter(|b| i >> b & 1 == 1)
                        .map(|b| format!("e{}", b + 1))
                        .collect::<String>()
                };
                from_rule(1 << k, label, |i, j| i ^ j, opts)
            }
            Factor::Symmetric(n) => {
                let mut gens = Vec::new();
                if n >= 2 {
                    gens.push(Permutation::from_cycles(n, &[vec![0, 1]]).expect("valid"));
                }
                if n >= 3 {
                    gens.push(Permutation::from_cycles(n, &[(0..n).collect()]).expect("valid"));
                }
                build_from_permutations_with(n.max(1), &gens, opts)
            }
            Factor::Alternating(n) => {
                let gens: Vec<Permutation> = (2..n)
                    .map(|k| Permutation::from_cycles(n, &[vec![0, 1, k]]).expect("valid"))
                    .collect();
                build_from_permutations_with(n.max(1), &gens, opts)
            }
        }
    }
}

fn power_label(base: &str, e: usize) -> String {
    match e {
        0 => "1".to_string(),
        1 => base.to_string(),
        _ => format!("{base}^{e}"),
    }
}

fn from_rule(
    n: usize,
    label: impl Fn(usize) -> String,
    mul: impl Fn(usize, usize) -> usize,
    opts: &GroupOptions,
) -> Result<FiniteGroup> {
    let table = (0..n).map(|i| (0..n).map(|j| mul(i, j)).collect()).collect();
    Ok(build_from_table_with(n, table, opts)?.with_labels((0..n).map(label).collect()))
}

/// `<a, b | a^m = 1, b^s = a^t, b a b^-1 = a^r>` with elements `a^i b^j`
/// indexed `i + m j`. Requires `r^2 = 1 (mod m)` when `s = 2`, and `r = -1`
/// in general, which covers every family in the grammar.
fn metacyclic(m: usize, s: usize, r: usize, t: usize, opts: &GroupOptions) -> Result<FiniteGroup> {
    let label = |idx: usize| {
        let (i, j) = (idx % m, idx / m);
        match (i, j) {
            (0, 0) => "1".to_string(),
            (_, 0) => power_label("a", i),
            (0, _) => power_label("b", j),
            _ => format!("{}{}", power_label("a", i), power_label("b", j)),
        }
    };
    let mul = |x: usize, y: usize| {
        let (i, j) = (x % m, x / m);
        let (k, l) = (y % m, y / m);
        // b^j a^k = a^(k r^j) b^j
        let twisted = if j % 2 == 1 { k * r % m } else { k };
        let mut a = (i + twisted) % m;
        let mut b = j + l;
        if b >= s {
            b -= s;
            a = (a + t) % m;
        }
        a + m * b
    };
    from_rule(m * s, label, mul, opts)
}

/// Direct product with mixed-radix indexing, first factor most significant.
pub fn direct_product(factors: &[FiniteGroup], opts: &GroupOptions) -> Result<FiniteGroup> {
    let sizes: Vec<usize> = factors.iter().map(FiniteGroup::order).collect();
    let n: usize = sizes.iter().product();
    let split = |mut x: usize| {
        let mut parts = vec![0; sizes.len()];
        for (p, &s) in parts.iter_mut().zip(&sizes).rev() {
            *p = x % s;
            x /= s;
        }
        parts
    };
    let join = |parts: &[usize]| parts.iter().zip(&sizes).fold(0, |acc, (&p, &s)| acc * s + p);
    let table = (0..n)
        .map(|x| {
            let px = split(x);
            (0..n)
                .map(|y| {
                    let py = split(y);
                    let prod: Vec<usize> = factors
                        .iter()
                        .enumerate()
                        .map(|(f, g)| g.mul(px[f], py[f]))
                        .collect();
                    join(&prod)
                })
                .collect()
        })
        .collect();
    let labels = (0..n)
        .map(|x| {
            let parts: Vec<String> = split(x)
                .iter()
                .enumerate()
                .map(|(f, &p)| factors[f].label(p))
                .collect();
            format!("({})", parts.join(","))
        })
        .collect();
    Ok(build_from_table_with(n, table, opts)?.with_labels(labels))
}

/// Invariant-factor lists `d1 | d2 | ... ` with product `n`, all `d_i > 1`.
fn abelian_invariants(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, min: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 1 {
            out.push(acc.clone());
            return;
        }
        for d in min.max(2)..=n {
            if n % d != 0 || acc.last().is_some_and(|&p| d % p != 0) {
                continue;
            }
            // remaining factors must be multiples of d
            let rest = n / d;
            if rest != 1 && rest % d != 0 {
                continue;
            }
            acc.push(d);
            rec(rest, d, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, 2, &mut Vec::new(), &mut out);
    out
}

/// Names of all abelian groups of order `<= n`, one per isomorphism type.
pub fn abelian_names(max: usize) -> Vec<String> {
    let mut out = vec!["C1".to_string()];
    for n in 2..=max {
        for inv in abelian_invariants(n) {
            out.push(inv.iter().map(|d| format!("C{d}")).collect::<Vec<_>>().join("x"));
        }
    }
    out
}

const NONABELIAN: &[&str] = &[
    "S3", "D6", "D8", "Q8", "D10", "D12", "Q12", "A4", "D14", "D16", "Q16", "SD16", "P16", "C2xD8",
    "C2xQ8", "D18", "C3xS3", "D20", "Q20", "D22", "D24", "Q24", "S4", "C2xA4", "C3xQ8",
    "C2xQ12", "C2xD12", "C4xS3", "C3xD8", "D26", "D28", "Q28", "D30", "C3xD10", "C5xS3", "D32",
    "Q32", "C2xQ16", "C2xD16", "C4xD8", "C4xQ8", "C2xC2xD8", "C2xC2xQ8", "C2xP16", "S3xS3",
    "A5", "S5", "C2xS4", "C2xC2xC2xQ8",
];

/// The built-in corpus: every abelian group of order at most 32 plus a list
/// of nonabelian groups, sorted by order then name.
pub fn catalog_names() -> Vec<String> {
    let mut names: Vec<(usize, String)> = abelian_names(32)
        .into_iter()
        .chain(NONABELIAN.iter().map(|s| s.to_string()))
        .map(|n| {
            let order = n
                .split('x')
                .map(|f| parse_factor(f).expect("catalog entry parses").order())
                .product();
            (order, n)
        })
        .collect();
    names.sort();
    names.into_iter().map(|(_, n)| n).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::classes::conjugacy_classes;

    fn el(g: &FiniteGroup, l: &str) -> usize {
        g.find_label(l).unwrap_or_else(|| panic!("no label {l}"))
    }

    #[test]
    fn dihedral_relations() {
        let d8 = catalog("D8").unwrap();
        let (a, b) = (el(&d8, "a"), el(&d8, "b"));
        assert_eq!(d8.element_order(a), 4);
        assert_eq!(d8.element_order(b), 2);
        assert_eq!(d8.mul(b, a), d8.mul(d8.pow(a, 3), b));
    }

    #[test]
    fn dicyclic_relations() {
        let q12 = catalog("Q12").unwrap();
        let (a, b) = (el(&q12, "a"), el(&q12, "b"));
        assert_eq!(q12.element_order(a), 6);
        assert_eq!(q12.pow(b, 2), q12.pow(a, 3));
        assert_eq!(q12.mul(b, a), q12.mul(q12.pow(a, 5), b));
        let q8 = catalog("Q8").unwrap();
        assert_eq!((0..8).filter(|&x| q8.element_order(x) == 2).count(), 1);
    }

    #[test]
    fn p16_relations() {
        let p = catalog("P16").unwrap();
        let (a, b) = (el(&p, "a"), el(&p, "b"));
        assert_eq!(p.element_order(a), 4);
        assert_eq!(p.element_order(b), 4);
        let lhs = p.mul(p.mul(a, b), p.mul(p.inv(a), p.inv(b)));
        assert_eq!(lhs, p.pow(a, 2));
        assert_eq!(conjugacy_classes(&p).class_count(), 10);
    }

    #[test]
    fn names_and_errors() {
        assert_eq!(catalog("C5").unwrap().order(), 5);
        assert_eq!(catalog("S4").unwrap().order(), 24);
        assert_eq!(catalog("A4").unwrap().order(), 12);
        assert_eq!(catalog("E8").unwrap().exponent(), 2);
        assert_eq!(catalog("Q8xC2").unwrap().order(), 16);
        assert!(matches!(catalog("D7"), Err(Error::UnknownName(_))));
        assert!(matches!(catalog("Z3"), Err(Error::UnknownName(_))));
        assert!(matches!(catalog("C"), Err(Error::UnknownName(_))));
        assert!(matches!(catalog("S7"), Err(Error::OrderBoundExceeded { .. })));
        assert!(matches!(catalog("C32xC32"), Err(Error::OrderBoundExceeded { .. })));
    }

    #[test]
    fn abelian_type_counts() {
        // number of abelian groups of order n for n = 1..=32
        let expected = [
            1, 1, 1, 2, 1, 1, 1, 3, 2, 1, 1, 2, 1, 1, 1, 5, 1, 2, 1, 2, 1, 1, 1, 3, 2, 1, 3, 2, 1,
            1, 1, 7,
        ];
        for (n, &e) in (1..=32).zip(expected.iter()) {
            let count = if n == 1 { 1 } else { abelian_invariants(n).len() };
            assert_eq!(count, e, "order {n}");
        }
        assert!(catalog_names().iter().all(|n| !n.is_empty()));
    }
}

//! Local Hilbert symbols over `Q` and the splitting test for rational
//! quaternion algebras `(a, b / Q)`.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::numtheory::{factorize, jacobi};
use super::Rational;

/// Centre of a quaternion algebra: `Q`, or a quadratic field `Q(sqrt(d))`
/// given by its squarefree `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CenterTag {
    Rational,
    Quadratic(i64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuaternionParams {
    pub a: Rational,
    pub b: Rational,
    pub center: CenterTag,
}

impl QuaternionParams {
    pub fn new(a: Rational, b: Rational, center: CenterTag) -> Self {
        assert!(!a.is_zero() && !b.is_zero(), "quaternion parameters must be nonzero");
        Self { a, b, center }
    }
}

/// Squarefree integer in the same square class as a nonzero rational.
pub(crate) fn square_class(q: &Rational) -> i128 {
    let n: BigInt = q.numer() * q.denom();
    let sign: i128 = if n.is_negative() { -1 } else { 1 };
    let abs = n.abs().to_u64().expect("quaternion parameter too large");
    sign * factorize(abs)
        .into_iter()
        .filter(|&(_, e)| e % 2 == 1)
        .map(|(p, _)| p as i128)
        .product::<i128>()
}

fn split_p(mut x: i128, p: i128) -> (u32, i128) {
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    (v, x)
}

/// The Hilbert symbol `(a, b)_p` for a prime `p`, or the real place when
/// `p == 0`.
pub fn hilbert_symbol(a: &Rational, b: &Rational, p: u64) -> i8 {
    assert!(!a.is_zero() && !b.is_zero(), "hilbert symbol of zero");
    let (a, b) = (square_class(a), square_class(b));
    if p == 0 {
        return if a < 0 && b < 0 { -1 } else { 1 };
    }
    let pi = p as i128;
    let (alpha, u) = split_p(a, pi);
    let (beta, v) = split_p(b, pi);
    if p == 2 {
        let eps = |x: i128| (((x - 1) / 2).rem_euclid(2)) as u32;
        let omega = |x: i128| (((x * x - 1) / 8).rem_euclid(2)) as u32;
        let e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u);
        return if e % 2 == 0 { 1 } else { -1 };
    }
    let legendre = |x: i128| jacobi(x.rem_euclid(pi) as i64, p);
    let mut s: i8 = if (alpha * beta) % 2 == 1 && p % 4 == 3 { -1 } else { 1 };
    if beta % 2 == 1 {
        s *= legendre(u);
    }
    if alpha % 2 == 1 {
        s *= legendre(v);
    }
    s
}

/// Places where `(a, b)` can be ramified: the real place (as 0), 2, and the
/// odd primes dividing `ab`.
pub fn relevant_places(a: &Rational, b: &Rational) -> Vec<u64> {
    let prod = (square_class(a) * square_class(b)).unsigned_abs() as u64;
    let mut places = vec![0, 2];
    places.extend(factorize(prod).into_iter().map(|(p, _)| p).filter(|&p| p != 2));
    places
}

/// Places where `(a, b / Q)` ramifies, with the real place as 0. Two
/// rational quaternion algebras are isomorphic iff these sets agree.
pub fn ramified_places(a: &Rational, b: &Rational) -> Vec<u64> {
    relevant_places(a, b).into_iter().filter(|&p| hilbert_symbol(a, b, p) == -1).collect()
}

/// `(a, b / Q)` is a matrix ring iff `u^2 = a v^2 + b w^2` has a nonzero
/// rational solution iff every local symbol is `+1`.
pub fn quaternion_splits_over_rationals(a: &Rational, b: &Rational) -> bool {
    relevant_places(a, b).into_iter().all(|p| hilbert_symbol(a, b, p) == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, rat};

    #[test]
    fn classical_examples() {
        assert!(!quaternion_splits_over_rationals(&rat(-1), &rat(-1)));
        assert!(!quaternion_splits_over_rationals(&rat(-1), &rat(-3)));
        assert!(quaternion_splits_over_rationals(&rat(-7), &rat(1)));
        assert!(quaternion_splits_over_rationals(&rat(-1), &rat(2)));
        assert!(quaternion_splits_over_rationals(&rat(1), &rat(-1)));
        assert!(quaternion_splits_over_rationals(&frac(3, 4), &rat(-1)) == quaternion_splits_over_rationals(&rat(3), &rat(-1)));
        assert_eq!(hilbert_symbol(&rat(-1), &rat(-3), 3), -1);
        assert_eq!(hilbert_symbol(&rat(-1), &rat(-1), 2), -1);
    }

    #[test]
    fn split_iff_norm_form_isotropic_small_search() {
        // brute force search for u^2 = a v^2 + b w^2 with small integers
        for a in [-5i64, -3, -2, -1, 2, 3, 5, 6, 7] {
            for b in [-7i64, -5, -3, -2, -1, 2, 3, 5] {
                let found = (-25i64..=25).any(|v| {
                    (-25i64..=25).any(|w| {
                        if v == 0 && w == 0 {
                            return false;
                        }
                        let rhs = a * v * v + b * w * w;
                        rhs >= 0 && {
                            let r = num_integer::Roots::sqrt(&rhs);
                            r * r == rhs
                        }
                    })
                });
                let splits = quaternion_splits_over_rationals(&rat(a), &rat(b));
                if found {
                    assert!(splits, "({a},{b}) has a solution but reported division");
                }
                if !splits {
                    assert!(!found);
                }
            }
        }
    }
}

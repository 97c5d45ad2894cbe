//! Exact arithmetic in cyclotomic fields `Q(zeta_n)`.
//!
//! Elements are stored in the power basis `1, z, ..., z^(phi(n)-1)` and kept
//! reduced modulo the `n`-th cyclotomic polynomial, so equality is plain
//! coefficient equality. The conductor is whatever the caller chose; values
//! of conductor 1 (plain rationals) are lifted silently when combined with a
//! value of larger conductor, any other conductor mismatch is an error.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::numtheory::{divisors, euler_phi, gcd};
use crate::error::{Error, Result};

/// Integer polynomial as coefficient vector, lowest degree first.
pub type IntPoly = Vec<i64>;

fn poly_div_exact(num: &[i64], den: &[i64]) -> IntPoly {
    // den is monic
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

/// The `n`-th cyclotomic polynomial, monic of degree `phi(n)`.
pub fn cyclotomic_polynomial(n: u64) -> IntPoly {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in divisors(n) {
        if d < n {
            num = poly_div_exact(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn modulus(n: u64) -> Arc<IntPoly> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<IntPoly>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("cyclotomic cache poisoned");
    guard
        .entry(n)
        .or_insert_with(|| Arc::new(cyclotomic_polynomial(n)))
        .clone()
}

/// An element of `Q(zeta_n)`.
#[derive(Clone)]
pub struct Cyclotomic {
    conductor: u64,
    coeffs: Vec<BigRational>,
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        match (self.as_rational(), other.as_rational()) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Cyclotomic {}

impl Cyclotomic {
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn zero(n: u64) -> Self {
        Self {
            conductor: n,
            coeffs: vec![BigRational::zero(); euler_phi(n) as usize],
        }
    }

    pub fn from_rational(n: u64, q: BigRational) -> Self {
        let mut z = Self::zero(n);
        z.coeffs[0] = q;
        z
    }

    pub fn from_integer(n: u64, k: i64) -> Self {
        Self::from_rational(n, BigRational::from_integer(BigInt::from(k)))
    }

    /// Builds an element from coefficients in the power basis, reducing if
    /// the vector is longer than `phi(n)`.
    pub fn from_power_coeffs(n: u64, coeffs: Vec<BigRational>) -> Self {
        let phi = euler_phi(n) as usize;
        let mut p = coeffs;
        reduce(&mut p, &modulus(n));
        p.resize(phi, BigRational::zero());
        Self {
            conductor: n,
            coeffs: p,
        }
    }

    /// `zeta_n^k`.
    pub fn root_of_unity(n: u64, k: i64) -> Self {
        let e = k.rem_euclid(n as i64) as usize;
        let mut p = vec![BigRational::zero(); e + 1];
        p[e] = BigRational::one();
        Self::from_power_coeffs(n, p)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs.iter().skip(1).all(Zero::is_zero) {
            Some(self.coeffs.first().cloned().unwrap_or_else(BigRational::zero))
        } else {
            None
        }
    }

    /// Re-expresses `self` in `Q(zeta_m)` where `n | m`.
    pub fn lift(&self, m: u64) -> Result<Self> {
        if m == self.conductor {
            return Ok(self.clone());
        }
        if m % self.conductor != 0 {
            return Err(Error::ConductorMismatch(self.conductor, m));
        }
        let step = (m / self.conductor) as usize;
        let mut p = vec![BigRational::zero(); step * self.coeffs.len().max(1)];
        for (i, c) in self.coeffs.iter().enumerate() {
            p[i * step] = c.clone();
        }
        Ok(Self::from_power_coeffs(m, p))
    }

    fn align(&self, other: &Self) -> Result<(Self, Self)> {
        if self.conductor == other.conductor {
            return Ok((self.clone(), other.clone()));
        }
        if self.conductor == 1 {
            return Ok((self.lift(other.conductor)?, other.clone()));
        }
        if other.conductor == 1 {
            return Ok((self.clone(), other.lift(self.conductor)?));
        }
        Err(Error::ConductorMismatch(self.conductor, other.conductor))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.align(other)?;
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        Ok(Self {
            conductor: a.conductor,
            coeffs,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other.clone())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.align(other)?;
        let phi = a.coeffs.len();
        let mut p = vec![BigRational::zero(); 2 * phi];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    p[i + j] += x * y;
                }
            }
        }
        Ok(Self::from_power_coeffs(a.conductor, p))
    }

    /// Multiplicative inverse, by solving the linear system of
    /// multiplication-by-`self` in the power basis.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.conductor;
        let phi = self.coeffs.len();
        // column j = self * z^j
        let cols: Vec<Cyclotomic> = (0..phi)
            .map(|j| self.try_mul(&Self::root_of_unity(n, j as i64)))
            .collect::<Result<_>>()?;
        // augmented matrix rows: sum_j cols[j][i] x_j = delta_{i0}
        let mut m: Vec<Vec<BigRational>> = (0..phi)
            .map(|i| {
                let mut row: Vec<BigRational> = cols.iter().map(|c| c.coeffs[i].clone()).collect();
                row.push(if i == 0 { BigRational::one() } else { BigRational::zero() });
                row
            })
            .collect();
        let x = solve_in_place(&mut m).ok_or(Error::DivisionByZero)?;
        Ok(Self {
            conductor: n,
            coeffs: x,
        })
    }

    /// The automorphism `zeta_n -> zeta_n^r`.
    pub fn galois_apply(&self, r: i64) -> Result<Self> {
        let n = self.conductor;
        let rr = r.rem_euclid(n as i64) as u64;
        if gcd(rr, n) != 1 && n != 1 {
            return Err(Error::BadGaloisIndex { r, n });
        }
        let mut p = vec![BigRational::zero(); n as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let e = (i as u64 * rr % n) as usize;
                p[e] += c;
            }
        }
        Ok(Self::from_power_coeffs(n, p))
    }

    pub fn complex_conjugate(&self) -> Self {
        self.galois_apply(-1).expect("-1 is always a unit")
    }

    pub fn to_exact_string(&self) -> String {
        self.to_string()
    }
}

fn reduce(p: &mut Vec<BigRational>, m: &IntPoly) {
    let d = m.len() - 1;
    while p.len() > d {
        let c = p.pop().expect("non-empty");
        if c.is_zero() {
            continue;
        }
        let top = p.len(); // index of popped term
        for (j, &mj) in m.iter().enumerate().take(d) {
            if mj != 0 {
                p[top - d + j] -= &c * BigRational::from_integer(BigInt::from(mj));
            }
        }
    }
}

/// Gauss-Jordan on an augmented square system; `None` if singular.
pub(crate) fn solve_in_place(m: &mut [Vec<BigRational>]) -> Option<Vec<BigRational>> {
    let n = m.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for v in m[col].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=n {
                    let delta = &f * &m[col][c];
                    m[r][c] -= delta;
                }
            }
        }
    }
    Some(m.iter().map(|row| row[n].clone()).collect())
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Self) -> Self {
        self.try_add(&rhs).expect("cyclotomic conductor mismatch")
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Self) -> Self {
        self.try_sub(&rhs).expect("cyclotomic conductor mismatch")
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Self) -> Self {
        self.try_mul(&rhs).expect("cyclotomic conductor mismatch")
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Self {
        Self {
            conductor: self.conductor,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Zero for Cyclotomic {
    fn zero() -> Self {
        Cyclotomic::zero(1)
    }
    fn is_zero(&self) -> bool {
        Cyclotomic::is_zero(self)
    }
}

impl One for Cyclotomic {
    fn one() -> Self {
        Cyclotomic::from_integer(1, 1)
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic({}; {})", self.conductor, self)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let z = match i {
                0 => String::new(),
                1 => format!("z{}", self.conductor),
                _ => format!("z{}^{}", self.conductor, i),
            };
            if i == 0 {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{z}")?;
            } else {
                write!(f, "{abs}*{z}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Serialized form: conductor plus power-basis coefficients as exact strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicRepr {
    pub conductor: u64,
    pub coeffs: Vec<String>,
}

impl From<&Cyclotomic> for CyclotomicRepr {
    fn from(z: &Cyclotomic) -> Self {
        Self {
            conductor: z.conductor,
            coeffs: z.coeffs.iter().map(|c| c.to_string()).collect(),
        }
    }
}

/// The cyclotomic unit `eta_k(zeta_n) = (1 - zeta_n^k) / (1 - zeta_n)` and its
/// inverse `eta_l(zeta_n^k)` with `kl = 1 (mod n)`.
pub fn cyclotomic_unit(n: u64, k: u64) -> Result<(Cyclotomic, Cyclotomic)> {
    if n < 2 {
        return Err(Error::BadIndex(format!("conductor {n} must exceed 1")));
    }
    let k = k % n;
    if gcd(k, n) != 1 {
        return Err(Error::BadIndex(format!("{k} is not a unit modulo {n}")));
    }
    let l = super::numtheory::mod_inverse(k, n).expect("k is a unit");
    let geometric = |step: u64, terms: u64| {
        let mut p = vec![BigRational::zero(); n as usize];
        for i in 0..terms {
            p[(i * step % n) as usize] += BigRational::one();
        }
        Cyclotomic::from_power_coeffs(n, p)
    };
    let eta = geometric(1, k);
    let inv = geometric(k, l);
    if eta.try_mul(&inv)? != Cyclotomic::from_integer(n, 1) {
        return Err(Error::Invariant(format!("eta_{k}(z{n}) inverse failed")));
    }
    Ok((eta, inv))
}

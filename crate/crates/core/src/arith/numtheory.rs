//! Small-integer number theory used throughout: totients, divisors,
//! multiplicative orders and quadratic residue symbols.

use num_integer::Integer;

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Prime factorisation by trial division, as `(prime, exponent)` pairs in
/// increasing prime order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).take_while(|d| d * d <= n).filter(|d| n % d == 0).collect();
    let upper: Vec<u64> = out.iter().rev().map(|d| n / d).filter(|q| q * q != n).collect();
    out.extend(upper);
    out
}

/// Units of `Z/n`, in increasing order. For `n = 1` this is `[0]`.
pub fn units_mod(n: u64) -> Vec<u64> {
    if n == 1 {
        return vec![0];
    }
    (1..n).filter(|&r| gcd(r, n) == 1).collect()
}

pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut result: u128 = 1;
    let mut b = (base % m) as u128;
    let m = m as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    result as u64
}

/// Least `m >= 1` with `k^m = 1 (mod n)`, or `None` when `gcd(k, n) != 1`.
pub fn multiplicative_order(k: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(1);
    }
    if gcd(k % n, n) != 1 {
        return None;
    }
    let mut acc = k % n;
    let mut m = 1;
    while acc != 1 {
        acc = acc * (k % n) % n;
        m += 1;
    }
    Some(m)
}

/// Inverse of `k` modulo `n`.
pub fn mod_inverse(k: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(0);
    }
    let e = (k as i128).extended_gcd(&(n as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(n as i128) as u64)
}

pub fn is_squarefree(n: u64) -> bool {
    factorize(n).iter().all(|&(_, e)| e == 1)
}

/// Jacobi symbol `(a / n)` for odd positive `n`.
pub fn jacobi(a: i64, n: u64) -> i8 {
    assert!(n % 2 == 1, "jacobi symbol needs an odd modulus");
    let mut a = a.rem_euclid(n as i64) as u64;
    let mut n = n;
    let mut sign = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// Kronecker symbol `(d / r)` for a discriminant `d` (`d = 0, 1 mod 4`) and
/// `r > 0` coprime to `d`.
pub fn kronecker(d: i64, r: u64) -> i8 {
    let mut r = r;
    let mut sign = 1i8;
    while r % 2 == 0 {
        r /= 2;
        // (d/2) = 0 if d even, 1 if d = ±1 mod 8, -1 if d = ±3 mod 8
        match d.rem_euclid(8) {
            1 | 7 => {}
            3 | 5 => sign = -sign,
            _ => return 0,
        }
    }
    if r == 1 {
        sign
    } else {
        sign * jacobi(d, r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totient_and_divisors() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(16), 8);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(16), vec![1, 2, 4, 8, 16]);
        assert_eq!(divisors(1), vec![1]);
    }

    #[test]
    fn orders_and_inverses() {
        assert_eq!(multiplicative_order(3, 8), Some(2));
        assert_eq!(multiplicative_order(2, 5), Some(4));
        assert_eq!(multiplicative_order(2, 4), None);
        assert_eq!(mod_inverse(3, 8), Some(3));
        assert_eq!(mod_inverse(2, 5), Some(3));
    }

    #[test]
    fn jacobi_matches_euler_criterion() {
        for p in [3u64, 5, 7, 11, 13, 17, 19, 23] {
            for a in 1..p {
                let euler = mod_pow(a, (p - 1) / 2, p);
                let expected = if euler == 1 { 1 } else { -1 };
                assert_eq!(jacobi(a as i64, p), expected, "({a}/{p})");
            }
        }
        assert_eq!(jacobi(-1, 3), -1);
        assert_eq!(jacobi(-1, 5), 1);
    }

    #[test]
    fn kronecker_minus_four_is_the_mod_four_character() {
        for r in [1u64, 3, 5, 7, 9, 11] {
            let expected = if r % 4 == 1 { 1 } else { -1 };
            assert_eq!(kronecker(-4, r), expected);
        }
        // (8/r) = 1 iff r = ±1 mod 8
        for r in [1u64, 3, 5, 7] {
            let expected = if r == 1 || r == 7 { 1 } else { -1 };
            assert_eq!(kronecker(8, r), expected);
        }
    }
}

//! Small-integer number theory used by the table builders and the cyclotomic
//! kernel.

use alloc::vec::Vec;

use num_bigint::BigInt;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Prime factorisation as `(p, k)` pairs with `p` ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut k = 0;
            while n % p == 0 {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).first() == Some(&(n, 1))
}

/// Returns `(p, r)` with `q = p^r` when `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    match factorize(q).as_slice() {
        [(p, r)] => Some((*p, *r)),
        _ => None,
    }
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n).into_iter().fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let (mut old_r, mut r) = (a.rem_euclid(m), m);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(m))
}

/// Multiplicative order of the residue `e` in the additive group `Z/m`,
/// i.e. the order of `ζ_m^e`.
pub fn additive_order(e: u64, m: u64) -> u64 {
    m / gcd(e % m, m)
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, k| acc * BigInt::from(k))
}

pub fn pow_u64(base: u64, exp: u32) -> u64 {
    base.checked_pow(exp).expect("integer power overflows u64")
}

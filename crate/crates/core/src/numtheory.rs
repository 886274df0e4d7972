//! Small exact number-theory helpers: Möbius function, divisors, factoring,
//! binomials and logarithms of big integers.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Prime factorization of a machine integer by trial division.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
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

pub fn is_prime_u64(n: u64) -> bool {
    n >= 2 && factor_u64(n) == vec![(n, 1)]
}

pub fn mobius(n: u64) -> i64 {
    assert!(n >= 1, "mobius of zero");
    let f = factor_u64(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// All positive divisors, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factor_u64(n) {
        let len = out.len();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    factor_u64(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Multiplicative order of `a` modulo `m` (requires gcd(a, m) = 1).
pub fn multiplicative_order(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(1);
    }
    if gcd_u64(a % m, m) != 1 {
        return None;
    }
    let mut x = a % m;
    let mut k = 1;
    while x != 1 {
        x = x * (a % m) % m;
        k += 1;
    }
    Some(k)
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Natural logarithm of a positive big integer, evaluated in f64.
pub fn ln_big(x: &BigUint) -> f64 {
    assert!(!x.is_zero(), "ln of zero");
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().map(f64::ln).unwrap_or(f64::INFINITY);
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap_or(1.0);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

fn mul_mod(a: &BigUint, b: &BigUint, m: &BigUint) -> BigUint {
    (a * b) % m
}

/// Deterministic Miller–Rabin on the first twenty prime bases. Exact below
/// 3.3e24 and overwhelmingly reliable beyond.
pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    const BASES: [u32; 20] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71];
    for &b in BASES.iter() {
        let b = BigUint::from(b);
        if *n == b {
            return true;
        }
        if (n % &b).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let mut d = n_minus_1.clone();
    let mut s = 0;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'outer: for &b in BASES.iter() {
        let mut x = BigUint::from(b).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(&x, &x, n);
            if x == n_minus_1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Largest trial divisor used by [`factor_big`].
pub const TRIAL_DIVISION_BOUND: u64 = 1_000_000;

/// Factor a big integer by trial division plus a primality test on the
/// cofactor. Fails when a composite cofactor without small factors remains.
pub fn factor_big(n: &BigUint) -> Result<Vec<(BigUint, u32)>> {
    if n.is_zero() {
        return Err(Error::invalid("cannot factor zero"));
    }
    let mut rest = n.clone();
    let mut out = Vec::new();
    let mut p = 2u64;
    while p <= TRIAL_DIVISION_BOUND {
        let bp = BigUint::from(p);
        if &bp * &bp > rest {
            break;
        }
        if (&rest % &bp).is_zero() {
            let mut e = 0;
            while (&rest % &bp).is_zero() {
                rest /= &bp;
                e += 1;
            }
            out.push((bp, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > BigUint::one() {
        let small = BigUint::from(p);
        if &small * &small > rest || is_probable_prime(&rest) {
            out.push((rest, 1));
        } else {
            return Err(Error::budget(
                format!("factoring a cofactor of {} bits", rest.bits()),
                TRIAL_DIVISION_BOUND,
            ));
        }
    }
    Ok(out)
}

/// All divisors of a big integer, ascending. `limit` bounds the number of
/// divisors produced.
pub fn divisors_big(n: &BigUint, limit: u64) -> Result<Vec<BigUint>> {
    let f = factor_big(n)?;
    let count: u128 = f.iter().map(|&(_, e)| e as u128 + 1).product();
    if count > limit as u128 {
        return Err(Error::budget("divisor enumeration", limit));
    }
    let mut out = vec![BigUint::one()];
    for (p, e) in f {
        let len = out.len();
        let mut pk = BigUint::one();
        for _ in 0..e {
            pk *= &p;
            for i in 0..len {
                let d = &out[i] * &pk;
                out.push(d);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Number of set partitions of an `n`-element set.
pub fn bell(n: usize) -> BigUint {
    let mut row = vec![BigUint::one()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(row.last().cloned().unwrap_or_else(BigUint::one));
        for x in &row {
            let v = next.last().unwrap() + x;
            next.push(v);
        }
        row = next;
    }
    row[0].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mobius_values() {
        let got: Vec<i64> = (1..=12).map(mobius).collect();
        assert_eq!(got, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        let big = divisors_big(&BigUint::from(36u32), 100).unwrap();
        let small: Vec<BigUint> = divisors(36).into_iter().map(BigUint::from).collect();
        assert_eq!(big, small);
    }

    #[test]
    fn bell_numbers() {
        let got: Vec<u64> = (0..7).map(|n| bell(n).to_u64().unwrap()).collect();
        assert_eq!(got, vec![1, 1, 2, 5, 15, 52, 203]);
    }

    #[test]
    fn binomials_and_logs() {
        assert_eq!(binomial(8, 4), BigUint::from(70u32));
        assert_eq!(binomial(3, 5), BigUint::zero());
        let x = BigUint::from(3u32).pow(2000);
        assert!((ln_big(&x) - 2000.0 * 3f64.ln()).abs() < 1e-6);
    }

    #[test]
    fn primality() {
        assert!(is_probable_prime(&BigUint::from(1_000_000_007u64)));
        assert!(!is_probable_prime(&BigUint::from(1_000_000_007u64 * 3)));
        let f = factor_big(&BigUint::from(6u32).pow(20)).unwrap();
        assert_eq!(f, vec![(BigUint::from(2u32), 20), (BigUint::from(3u32), 20)]);
    }

    #[test]
    fn orders() {
        assert_eq!(multiplicative_order(5, 4), Some(1));
        assert_eq!(multiplicative_order(2, 7), Some(3));
        assert_eq!(totient(12), 4);
    }
}

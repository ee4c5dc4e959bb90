//! Prime generation, deterministic primality, trial-division factorization,
//! and the von Mangoldt weight.

use serde::{Deserialize, Serialize};

const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; the fixed base set decides every n < 2^64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in MR_BASES {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in MR_BASES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn floor_sqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r > 0 && r.checked_mul(r).is_none_or(|rr| rr > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|rr| rr <= n) {
        r += 1;
    }
    r
}

fn simple_sieve(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; n as usize + 1];
    let mut out = Vec::new();
    for i in 2..=n as usize {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n as usize {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// All primes <= n in ascending order, by a segmented sieve: a base table of
/// primes up to sqrt(n) plus one fixed-size window, so working memory beyond
/// the output stays O(sqrt n + segment).
pub fn primes_up_to(n: u64) -> Vec<u64> {
    const SEGMENT: u64 = 1 << 16;
    if n < 2 {
        return Vec::new();
    }
    let root = floor_sqrt(n);
    let base = simple_sieve(root);
    let mut out = base.clone();
    let mut window = vec![false; SEGMENT as usize];
    let mut low = root + 1;
    while low <= n {
        let high = n.min(low + SEGMENT - 1);
        let len = (high - low + 1) as usize;
        window[..len].fill(false);
        for &p in &base {
            let mut j = low.div_ceil(p) * p;
            while j <= high {
                window[(j - low) as usize] = true;
                j += p;
            }
        }
        for (i, &hit) in window[..len].iter().enumerate() {
            if !hit {
                out.push(low + i as u64);
            }
        }
        low = high + 1;
    }
    out
}

/// Prime factorization with strictly ascending prime factors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    /// (prime, exponent) pairs; exponents are >= 1.
    pub pairs: Vec<(u64, u32)>,
}

impl Factorization {
    /// The factored integer, recomputed from the pairs.
    pub fn value(&self) -> u64 {
        self.pairs
            .iter()
            .fold(1u64, |acc, &(p, k)| acc * p.pow(k))
    }

    /// All positive divisors, sorted ascending.
    pub fn divisors(&self) -> Vec<u64> {
        let mut out = vec![1u64];
        for &(p, k) in &self.pairs {
            let prev = out.clone();
            let mut pe = 1u64;
            for _ in 0..k {
                pe *= p;
                out.extend(prev.iter().map(|d| d * pe));
            }
        }
        out.sort_unstable();
        out
    }
}

/// Trial-division factorization of n >= 1 (empty for n = 1).
pub fn factorize(mut n: u64) -> Factorization {
    assert!(n >= 1, "factorization is defined for n >= 1");
    let mut pairs = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut k = 0u32;
            while n.is_multiple_of(d) {
                n /= d;
                k += 1;
            }
            pairs.push((d, k));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        pairs.push((n, 1));
    }
    Factorization { pairs }
}

/// The von Mangoldt weight Λ(n), carrying the prime-power decomposition it is
/// supported on so callers can branch on the base prime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Lambda {
    /// n = base^exponent with base prime; the weight is ln(base).
    PrimePower { base: u64, exponent: u32, value: f64 },
    /// n = 1 or n has at least two distinct prime factors; the weight is 0.
    Zero,
}

impl Lambda {
    pub fn value(self) -> f64 {
        match self {
            Lambda::PrimePower { value, .. } => value,
            Lambda::Zero => 0.0,
        }
    }
}

/// Λ(n) for n >= 1.
pub fn von_mangoldt(n: u64) -> Lambda {
    assert!(n >= 1, "the von Mangoldt weight is defined for n >= 1");
    let f = factorize(n);
    match f.pairs.as_slice() {
        &[(base, exponent)] => Lambda::PrimePower {
            base,
            exponent,
            value: (base as f64).ln(),
        },
        _ => Lambda::Zero,
    }
}

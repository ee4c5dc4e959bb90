//! Arbitrary-precision reference implementations: naive square-and-multiply
//! exponentiation and the definitional Fermat quotient. These share no code
//! with the Montgomery fast path — they are the cross-check oracle, and the
//! fallback for p beyond the fast path's [3, 2^32) window.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// base^exp mod modulus by plain binary square-and-multiply with remainder
/// reductions. modulus must be nonzero.
pub fn modexp(base: &BigUint, exp: u64, modulus: &BigUint) -> BigUint {
    assert!(!modulus.is_zero(), "modulus must be nonzero");
    let mut result = BigUint::one() % modulus;
    let mut b = base % modulus;
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result = &result * &b % modulus;
        }
        b = &b * &b % modulus;
        e >>= 1;
    }
    result
}

/// The Fermat quotient q_p(u) = ((u^(p-1) - 1)/p) mod p straight from the
/// definition, for any odd prime p that fits in a u64 (p² is handled in
/// arbitrary precision). Multiples of p give 0 by convention. The caller is
/// responsible for p being prime.
pub fn fermat_quotient(p: u64, u: u64) -> u64 {
    if u.is_multiple_of(p) {
        return 0;
    }
    let pb = BigUint::from(p);
    let p2 = &pb * &pb;
    let x = modexp(&BigUint::from(u), p - 1, &p2);
    // gcd(u, p) = 1 forces u^(p-1) = 1 mod p, so x - 1 is divisible by p.
    let q = (x - BigUint::one()) / &pb % &pb;
    q.to_u64().expect("quotient is below p, which fits u64")
}

/// Whether q_p(u) = 0, straight from the definition.
pub fn is_vanishing(p: u64, u: u64) -> bool {
    fermat_quotient(p, u) == 0
}

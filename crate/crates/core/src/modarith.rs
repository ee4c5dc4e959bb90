//! Arithmetic mod p² for odd primes p < 2^32 (so p² fits one machine word):
//! Montgomery representation with radix R = 2^64, u128 intermediates, and
//! fixed-window exponentiation.

use crate::error::{Error, Result};
use crate::primes::is_prime;

/// Validated odd prime p with the precomputed Montgomery constants for
/// arithmetic mod p².
#[derive(Debug, Clone)]
pub struct PrimeContext {
    /// The odd prime p, 3 <= p < 2^32.
    pub p: u64,
    /// p², the working modulus.
    pub p_squared: u64,
    /// R mod p², the Montgomery image of 1.
    one: u64,
    /// R² mod p², used to enter Montgomery form.
    r_squared: u64,
    /// -(p²)^(-1) mod 2^64.
    neg_inv: u64,
}

/// Checks that p is an odd prime in [3, 2^32) and precomputes the constants.
pub fn make_context(p: u64) -> Result<PrimeContext> {
    if !(3..1u64 << 32).contains(&p) {
        return Err(Error::OutOfRange(p));
    }
    if !is_prime(p) {
        return Err(Error::CompositeInput(p));
    }
    let p_squared = p * p;
    // Newton iteration on the 2-adic inverse doubles the correct low bits each
    // round; six rounds reach 64 from the 1-bit inverse of an odd number.
    let mut inv: u64 = 1;
    for _ in 0..6 {
        inv = inv.wrapping_mul(2u64.wrapping_sub(p_squared.wrapping_mul(inv)));
    }
    debug_assert_eq!(p_squared.wrapping_mul(inv), 1);
    let one = ((1u128 << 64) % p_squared as u128) as u64;
    let r_squared = ((one as u128 * one as u128) % p_squared as u128) as u64;
    Ok(PrimeContext {
        p,
        p_squared,
        one,
        r_squared,
        neg_inv: inv.wrapping_neg(),
    })
}

impl PrimeContext {
    /// REDC: t/R mod p² for t < p²·R. The low 64 bits of t and m·p² cancel
    /// exactly, so only their carry survives; the high halves sum below 2p²,
    /// which a single conditional subtraction reduces. Correct for every
    /// p < 2^32, including p² >= 2^63 where a naive u128 sum could overflow.
    #[inline]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.neg_inv);
        let mn = m as u128 * self.p_squared as u128;
        let carry = (t as u64 != 0) as u128;
        let sum = (t >> 64) + (mn >> 64) + carry;
        if sum >= self.p_squared as u128 {
            (sum - self.p_squared as u128) as u64
        } else {
            sum as u64
        }
    }

    #[inline]
    fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    #[inline]
    fn to_mont(&self, x: u64) -> u64 {
        self.mul(x % self.p_squared, self.r_squared)
    }

    #[inline]
    fn mont_to_plain(&self, x: u64) -> u64 {
        self.redc(x as u128)
    }
}

/// base^exp mod p² by left-to-right fixed-window exponentiation (window width
/// 4) in Montgomery form. The base is reduced mod p² first; exp = 0 gives 1.
pub fn modexp_p2(ctx: &PrimeContext, base: u64, exp: u64) -> u64 {
    let mut table = [ctx.one; 16];
    table[1] = ctx.to_mont(base);
    for i in 2..16 {
        table[i] = ctx.mul(table[i - 1], table[1]);
    }
    let bits = 64 - exp.leading_zeros();
    let windows = bits.div_ceil(4);
    let mut acc = ctx.one;
    for w in (0..windows).rev() {
        for _ in 0..4 {
            acc = ctx.mul(acc, acc);
        }
        let nibble = ((exp >> (4 * w)) & 0xf) as usize;
        if nibble != 0 {
            acc = ctx.mul(acc, table[nibble]);
        }
    }
    ctx.mont_to_plain(acc)
}

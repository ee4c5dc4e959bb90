//! Fermat quotients and their vanishing sets.
//!
//! q_p(u) = ((u^(p-1) - 1)/p) mod p for gcd(u, p) = 1, and 0 for multiples of
//! p by convention. The quotient of a coprime u vanishes exactly when the
//! class of u mod p² lies in the subgroup of p-th power residues of (Z/p²)^*,
//! i.e. when u^(p-1) = 1 mod p² — the fast membership test used throughout.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modarith::{modexp_p2, PrimeContext};
use crate::primes::{is_prime, primes_up_to, von_mangoldt, Lambda};

/// Which vanishing statistic a report describes: the full set of vanishing
/// arguments (Q), its prime members (R), or the count of integers landing in
/// the power-residue subgroup (T).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SetKind {
    Q,
    R,
    T,
}

/// A single Fermat quotient evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientValue {
    pub p: u64,
    pub u: u64,
    /// q_p(u), in [0, p).
    pub value: u64,
}

/// An enumerated or counted vanishing set up to a limit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingReport {
    pub p: u64,
    /// Upper end of the window: N for Q/R, K for T.
    pub limit: u64,
    pub kind: SetKind,
    /// Sorted members; left empty for T, where only the count is kept.
    pub members: Vec<u64>,
    pub cardinality: u64,
    /// Whether convention members are counted: multiples of p for Q, the
    /// prime p itself for R. Always false for T, which counts coprime classes
    /// only.
    pub includes_multiples_of_p: bool,
}

/// q_p(u); 0 for multiples of p by convention.
pub fn fermat_quotient(ctx: &PrimeContext, u: u64) -> QuotientValue {
    let value = if u.is_multiple_of(ctx.p) {
        0
    } else {
        let x = modexp_p2(ctx, u, ctx.p - 1);
        // x = 1 mod p by Fermat's little theorem, so the division is exact.
        debug_assert_eq!(x % ctx.p, 1 % ctx.p);
        (x - 1) / ctx.p
    };
    QuotientValue { p: ctx.p, u, value }
}

/// Whether q_p(u) = 0, via the power-residue characterization: true when
/// p | u (convention) or u^(p-1) = 1 mod p². Cross-checked against
/// `fermat_quotient` in the tests rather than implemented through it.
pub fn is_vanishing(ctx: &PrimeContext, u: u64) -> bool {
    u.is_multiple_of(ctx.p) || modexp_p2(ctx, u, ctx.p - 1) == 1
}

/// The smallest u >= 1 with q_p(u) != 0. Only primes need testing: quotients
/// add over products of residues coprime to p, so if every prime below a bound
/// vanished, every integer below it would too. The search stops at p², after
/// which the quotient values have all repeated (SearchExhausted then — not
/// expected for any actual prime).
pub fn smallest_nonvanishing(ctx: &PrimeContext) -> Result<u64> {
    let limit = ctx.p_squared;
    let mut u = 2;
    while u <= limit {
        if is_prime(u) && !is_vanishing(ctx, u) {
            return Ok(u);
        }
        u += 1;
    }
    Err(Error::SearchExhausted { p: ctx.p, limit })
}

/// The set Q of n in [1, N] with q_p(n) = 0, accelerated: one exponentiation
/// per prime <= N, extended to composites by additivity of q_p over products
/// coprime to p (via a smallest-prime-factor table, so O(N) memory — meant
/// for desk-scale N). `include_multiples_of_p` controls whether the
/// convention members (all multiples of p) are counted.
pub fn enumerate_q_with(
    ctx: &PrimeContext,
    n: u64,
    include_multiples_of_p: bool,
    brute: bool,
) -> VanishingReport {
    if brute {
        return enumerate_q_brute(ctx, n, include_multiples_of_p);
    }
    assert!(
        n < u32::MAX as u64,
        "set enumeration allocates O(N) tables and is meant for desk-scale N"
    );
    let mut members = Vec::new();
    if n >= 1 {
        members.push(1);
    }
    if n >= 2 {
        let len = (n + 1) as usize;
        let mut spf = vec![0u32; len];
        let mut i = 2usize;
        while i < len {
            if spf[i] == 0 {
                let mut j = i;
                while j < len {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
            i += 1;
        }
        let mut q = vec![0u32; len];
        for i in 2..len {
            let iu = i as u64;
            let s = spf[i] as u64;
            if iu.is_multiple_of(ctx.p) {
                // Convention: the quotient of every multiple of p vanishes.
                q[i] = 0;
                if include_multiples_of_p {
                    members.push(iu);
                }
                continue;
            }
            let value = if iu == s {
                fermat_quotient(ctx, iu).value as u32
            } else {
                // i = s * (i/s) with both parts coprime to p.
                ((q[s as usize] as u64 + q[(iu / s) as usize] as u64) % ctx.p) as u32
            };
            q[i] = value;
            if value == 0 {
                members.push(iu);
            }
        }
    }
    let cardinality = members.len() as u64;
    VanishingReport {
        p: ctx.p,
        limit: n,
        kind: SetKind::Q,
        members,
        cardinality,
        includes_multiples_of_p: include_multiples_of_p,
    }
}

/// Definitional O(N) enumeration of Q: one quotient evaluation per candidate.
fn enumerate_q_brute(ctx: &PrimeContext, n: u64, include_multiples_of_p: bool) -> VanishingReport {
    let members: Vec<u64> = (1..=n)
        .filter(|&u| {
            if u % ctx.p == 0 {
                include_multiples_of_p
            } else {
                fermat_quotient(ctx, u).value == 0
            }
        })
        .collect();
    let cardinality = members.len() as u64;
    VanishingReport {
        p: ctx.p,
        limit: n,
        kind: SetKind::Q,
        members,
        cardinality,
        includes_multiples_of_p: include_multiples_of_p,
    }
}

/// Q with the paper-side defaults: convention members included, fast path.
pub fn enumerate_q(ctx: &PrimeContext, n: u64) -> VanishingReport {
    enumerate_q_with(ctx, n, true, false)
}

/// The primes l <= N with q_p(l) = 0. The prime p itself is a member by the
/// multiples-of-p convention when `include_p` is set and p <= N.
pub fn enumerate_r_with(
    ctx: &PrimeContext,
    n: u64,
    include_p: bool,
    brute: bool,
) -> VanishingReport {
    let members: Vec<u64> = primes_up_to(n)
        .into_iter()
        .filter(|&l| {
            if l == ctx.p {
                include_p
            } else if brute {
                fermat_quotient(ctx, l).value == 0
            } else {
                is_vanishing(ctx, l)
            }
        })
        .collect();
    let cardinality = members.len() as u64;
    VanishingReport {
        p: ctx.p,
        limit: n,
        kind: SetKind::R,
        members,
        cardinality,
        includes_multiples_of_p: include_p,
    }
}

/// R with the paper-side defaults.
pub fn enumerate_r(ctx: &PrimeContext, n: u64) -> VanishingReport {
    enumerate_r_with(ctx, n, true, false)
}

/// The p-th power residues in (Z/p²)^*, ascending — exactly the classes of
/// coprime integers with vanishing quotient. They are {k^p mod p² : 1 <= k <=
/// p-1}, pairwise distinct because k^p = k'^p mod p² forces k = k' mod p; so
/// there are p-1 of them.
pub fn power_residues(ctx: &PrimeContext) -> Vec<u64> {
    let mut residues: Vec<u64> = (1..ctx.p).map(|k| modexp_p2(ctx, k, ctx.p)).collect();
    residues.sort_unstable();
    debug_assert!(residues.windows(2).all(|w| w[0] < w[1]));
    residues
}

/// Count of w in [1, K] with gcd(w, p) = 1 and w^(p-1) = 1 mod p². Membership
/// depends only on w mod p², so the count is one full subgroup (p-1 classes)
/// per complete block of p² integers plus a binary search over the remainder.
pub fn count_power_residues(ctx: &PrimeContext, k: u64) -> u64 {
    let residues = power_residues(ctx);
    let blocks = k / ctx.p_squared;
    let rest = k % ctx.p_squared;
    blocks * (ctx.p - 1) + residues.partition_point(|&g| g <= rest) as u64
}

/// `count_power_residues` packaged as a report (kind T keeps the count only).
pub fn count_report(ctx: &PrimeContext, k: u64) -> VanishingReport {
    VanishingReport {
        p: ctx.p,
        limit: k,
        kind: SetKind::T,
        members: Vec::new(),
        cardinality: count_power_residues(ctx, k),
        includes_multiples_of_p: false,
    }
}

/// Prime powers l^j <= limit with vanishing quotient, as (value, base,
/// exponent) ascending in value — the support of the Ihara-type sums.
///
/// Requires limit <= p. Then j <= log2(limit) < p, so for l != p the quotient
/// q_p(l^j) = j·q_p(l) mod p vanishes exactly when q_p(l) does; one membership
/// test per prime suffices. The only prime power divisible by p in range is p
/// itself (p² > limit), a member by convention when `include_p` is set. The
/// `brute` route instead tests every n <= limit straight from the definitions.
pub(crate) fn vanishing_prime_powers(
    ctx: &PrimeContext,
    limit: u64,
    include_p: bool,
    brute: bool,
) -> Vec<(u64, u64, u32)> {
    assert!(limit <= ctx.p, "prime-power enumeration expects a cutoff <= p");
    if brute {
        let mut terms = Vec::new();
        for n in 2..=limit {
            if let Lambda::PrimePower { base, exponent, .. } = von_mangoldt(n) {
                let member = if n % ctx.p == 0 {
                    include_p
                } else {
                    fermat_quotient(ctx, n).value == 0
                };
                if member {
                    terms.push((n, base, exponent));
                }
            }
        }
        return terms;
    }
    let mut terms = Vec::new();
    for l in primes_up_to(limit) {
        if l == ctx.p {
            if include_p {
                terms.push((l, l, 1));
            }
            continue;
        }
        if is_vanishing(ctx, l) {
            let mut value = l;
            let mut exponent = 1;
            loop {
                terms.push((value, l, exponent));
                match value.checked_mul(l) {
                    Some(next) if next <= limit => {
                        value = next;
                        exponent += 1;
                    }
                    _ => break,
                }
            }
        }
    }
    terms.sort_unstable();
    terms
}

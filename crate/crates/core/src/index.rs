//! The logarithm of the index of the degree-p subfield inside the p²-th
//! cyclotomic field's unit structure: log I_p = Σ α_p(n) Λ(n) over the
//! vanishing set up to p, where α_p(n) is an integer weight bounded by p²/2n.

use serde::{Deserialize, Serialize};

use crate::bounds::INDEX_COEFFICIENT;
use crate::fermatq::vanishing_prime_powers;
use crate::ihara::ihara_full_with;
use crate::modarith::PrimeContext;
use crate::util::KahanSum;

/// One weighted contribution α_p(n)·Λ(n).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IndexTerm {
    pub n: u64,
    /// α_p(n).
    pub weight: u64,
    /// Λ(n).
    pub lambda: f64,
}

/// log I_p next to its comparison levels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexReport {
    pub p: u64,
    /// Σ α_p(n) Λ(n) over the vanishing set up to p.
    pub log_index: f64,
    /// (p²/2)·S_p, the level implied by α_p(n) <= p²/2n termwise.
    pub half_p2_sp: f64,
    /// (463/504) p² ln ln p.
    pub unconditional_bound_main: f64,
    /// p² ln ln p.
    pub conditional_reference: f64,
    pub include_p_term: bool,
    /// Contributing prime powers, ascending in n.
    pub terms: Vec<IndexTerm>,
}

/// α_p(n) = ⌊p/n⌋(p - n/2 - ⌊p/n⌋n/2), an integer: with q = ⌊p/n⌋ and
/// r = p mod n it equals q·r + n·q(q-1)/2. Zero at n = p and for n > p.
pub fn index_weight(p: u64, n: u64) -> u64 {
    assert!(n >= 1, "the weight is defined for n >= 1");
    let q = (p / n) as u128;
    let r = (p % n) as u128;
    let value = q * r + n as u128 * q * q.saturating_sub(1) / 2;
    debug_assert!(value <= (p as u128 * p as u128) / 2);
    value as u64
}

/// The full report for p.
pub fn log_index(ctx: &PrimeContext) -> IndexReport {
    log_index_with(ctx, true, false)
}

/// `log_index` with explicit convention and evaluation-path choices.
pub fn log_index_with(ctx: &PrimeContext, include_p_term: bool, brute: bool) -> IndexReport {
    let sources = vanishing_prime_powers(ctx, ctx.p, include_p_term, brute);
    let mut acc = KahanSum::default();
    let mut terms = Vec::with_capacity(sources.len());
    for &(n, base, _) in &sources {
        let weight = index_weight(ctx.p, n);
        let lambda = (base as f64).ln();
        acc.add(weight as f64 * lambda);
        terms.push(IndexTerm { n, weight, lambda });
    }
    let s_p = ihara_full_with(ctx, include_p_term, brute).s_p_full;
    let p = ctx.p as f64;
    let p2 = p * p;
    let lnln_p = p.ln().ln();
    IndexReport {
        p: ctx.p,
        log_index: acc.value(),
        half_p2_sp: p2 / 2.0 * s_p,
        unconditional_bound_main: INDEX_COEFFICIENT * p2 * lnln_p,
        conditional_reference: p2 * lnln_p,
        include_p_term,
        terms,
    }
}
